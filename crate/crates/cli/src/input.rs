//! Text formats for points, curves, exponent lists and forms. Error
//! positions are 1-based character columns, as in the core parser.

use apolar_binary::BinaryForm;
use apolar_core::rational::parse_q;
use apolar_core::{Error, Poly, ProjPoint, Result, Q};
use apolar_cubics::TernaryCubic;
use apolar_curves::RationalCurve;
use apolar_products::{FormFactor, HF_VARS};

/// Splits `text` on `sep`, yielding each piece with its byte offset.
fn pieces(text: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in text.char_indices() {
        if c == sep {
            out.push((start, &text[start..i]));
            start = i + c.len_utf8();
        }
    }
    out.push((start, &text[start..]));
    out
}

fn column(text: &str, byte: usize) -> usize {
    text[..byte].chars().count()
}

pub fn rational(text: &str) -> Result<Q> {
    rational_at(text, 0)
}

fn rational_at(text: &str, offset: usize) -> Result<Q> {
    let lead = text.len() - text.trim_start().len();
    parse_q(text.trim()).ok_or_else(|| Error::Parse {
        pos: offset + column(text, lead) + 1,
        msg: format!("expected a rational number, found {:?}", text.trim()),
    })
}

fn vector_at(text: &str, offset: usize) -> Result<Vec<Q>> {
    pieces(text, ',').into_iter().map(|(at, s)| rational_at(s, offset + column(text, at))).collect()
}

/// "a,b,c" as a vector of rationals.
pub fn vector(text: &str) -> Result<Vec<Q>> {
    vector_at(text, 0)
}

pub fn point(text: &str) -> Result<ProjPoint> {
    ProjPoint::new(vector(text)?)
}

/// "a,b;c,d;..." as a list of points of one common length.
pub fn points(text: &str) -> Result<Vec<ProjPoint>> {
    let pts = pieces(text, ';')
        .into_iter()
        .map(|(at, s)| ProjPoint::new(vector_at(s, column(text, at))?))
        .collect::<Result<Vec<_>>>()?;
    if pts.windows(2).any(|w| w[0].coords().len() != w[1].coords().len()) {
        return Err(Error::pre("points of different lengths"));
    }
    Ok(pts)
}

/// "u,v,w,..." as unsigned integers.
pub fn naturals(text: &str, count: usize) -> Result<Vec<u32>> {
    let out = pieces(text, ',')
        .into_iter()
        .map(|(at, s)| {
            s.trim().parse::<u32>().map_err(|_| Error::Parse {
                pos: column(text, at) + 1,
                msg: format!("expected a non-negative integer, found {:?}", s.trim()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if out.len() != count {
        return Err(Error::pre(format!("expected {count} integers, found {}", out.len())));
    }
    Ok(out)
}

/// A binary form in x, y or a ternary cubic in x, y, z, chosen by the
/// variables that appear.
pub fn form(text: &str) -> Result<FormFactor> {
    let p = Poly::parse(text)?;
    let names: Vec<&str> = p.vars().iter().map(String::as_str).collect();
    if names.iter().all(|v| ["x", "y"].contains(v)) {
        Ok(FormFactor::Binary(BinaryForm::parse(text)?))
    } else if names.iter().all(|v| ["x", "y", "z"].contains(v)) {
        Ok(FormFactor::Cubic(TernaryCubic::parse(text)?))
    } else {
        Err(Error::pre(format!("variables {names:?}: use x, y for binary forms and x, y, z for cubics")))
    }
}

/// Curves are given as forms in s, t separated by ';', as a JSON list of
/// coefficient vectors, as `rnc:D` or as `monomial:D:E0,E1,...`.
pub fn curve(text: &str) -> Result<RationalCurve> {
    let t = text.trim();
    if t.starts_with('[') {
        return serde_json::from_str(t).map_err(|e| Error::Parse { pos: e.column(), msg: e.to_string() });
    }
    if let Some(d) = t.strip_prefix("rnc:") {
        let d = naturals(d, 1)?[0] as usize;
        if d == 0 {
            return Err(Error::pre("the normal curve needs degree at least 1"));
        }
        return Ok(RationalCurve::rational_normal(d));
    }
    if let Some(rest) = t.strip_prefix("monomial:") {
        let (d, exps) = rest
            .split_once(':')
            .ok_or_else(|| Error::Parse { pos: 10, msg: "expected monomial:D:E0,E1,...".into() })?;
        let d = naturals(d, 1)?[0] as usize;
        let exps: Vec<usize> = pieces(exps, ',')
            .into_iter()
            .map(|(_, s)| {
                s.trim().parse::<usize>().map_err(|_| Error::Parse { pos: 1, msg: format!("bad exponent {s:?}") })
            })
            .collect::<Result<_>>()?;
        return RationalCurve::monomial(d, &exps);
    }
    let polys = pieces(text, ';')
        .into_iter()
        .map(|(at, s)| {
            Poly::parse_in(s, &["s", "t"]).map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse { pos: pos + column(text, at), msg },
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let d = polys.iter().filter_map(Poly::total_degree).max().ok_or_else(|| Error::pre("every form is zero"))?;
    let forms = polys.iter().map(|p| p.to_binary_coeffs(d)).collect::<Result<Vec<_>>>()?;
    RationalCurve::new(forms)
}

/// Monomial generators in x1, y1, x2, y2 separated by ','.
pub fn monomial_generators(text: &str) -> Result<Vec<[u32; 4]>> {
    pieces(text, ',')
        .into_iter()
        .map(|(at, s)| {
            let p = Poly::parse_in(s, &HF_VARS).map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse { pos: pos + column(text, at), msg },
                other => other,
            })?;
            let terms = p.sorted_terms();
            match terms.as_slice() {
                [(e, _)] => Ok([e[0], e[1], e[2], e[3]]),
                _ => Err(Error::pre(format!("generator {:?} is not a single monomial", s.trim()))),
            }
        })
        .collect()
}
