use crate::args::{Command, DecomposeKind, Global};
use crate::cert::{monomial_exponents, Certificate, HfQuery};
use crate::input;
use crate::Report;
use apolar_binary::{binary_rank, submult_square_bounded, BinaryForm};
use apolar_core::rational::{fmt_q_short as fmt_q, random_q};
use apolar_core::{Attestation, Error, Poly, ProjPoint, Result, StructuredDecomposition};
use apolar_cubics::{classify, submult_square_cubic, TernaryCubic};
use apolar_curves::{
    multiplicity_gap, project_curve, rnc_secant_determinant, trisecants_through, HypersurfacePoly, Param,
    RationalCurve, SecantParams,
};
use apolar_products::{
    bigraded_hf, binary_power_sum, certify_window, default_kron_bound, hf_row_sum, kron_flattening_bound,
    monomial_product_bound, product_decomposition, BigradedIdeal, Flattening, FormFactor, LowerBound, LowerMethod,
};
use apolar_secant::{
    multidrop_product_identity, multisecant_plane_decomposition, nonproduct_decomposition, power_decomposition_on_line,
    rank2_product_decision, DropFactor, Membership, Rank2Verdict, SecantPair, VarietyPoint,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

/// What a command produced before it is wrapped into a report.
pub struct Output {
    pub summary: Vec<String>,
    pub result: Value,
    pub certificates: Vec<Certificate>,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// The positional input, or the contents of `--file`.
fn main_input(positional: Option<String>, g: &Global, what: &str) -> Result<String> {
    match (positional, &g.file) {
        (Some(p), None) => Ok(p),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| Error::pre(format!("cannot read {path}: {e}"))),
        (Some(_), Some(_)) => Err(Error::pre("give the input either inline or with --file, not both")),
        (None, None) => Err(Error::pre(format!("missing {what}"))),
    }
}

pub fn dispatch(cmd: Command, g: &Global) -> Result<Output> {
    match cmd {
        Command::Rank { expr, binary, cubic } => {
            if let Some(b) = binary {
                rank_binary(&BinaryForm::parse(&b)?)
            } else if let Some(c) = cubic {
                rank_cubic(&TernaryCubic::parse(&c)?)
            } else {
                match input::form(&main_input(expr, g, "a form")?)? {
                    FormFactor::Binary(f) => rank_binary(&f),
                    FormFactor::Cubic(f) => rank_cubic(&f),
                }
            }
        }
        Command::ClassifyCubic { expr } => rank_cubic(&TernaryCubic::parse(&main_input(expr, g, "a cubic")?)?),
        Command::Submult { expr } => submult(&input::form(&main_input(expr, g, "a form")?)?, g),
        Command::Decompose { kind } => decompose(kind),
        Command::Trisecant { curve, t1 } => trisecant(&input::curve(&main_input(curve, g, "a curve")?)?, &t1, g),
        Command::Multidrop { poly, point, rnc, param } => multidrop(poly, point, rnc, param, g),
        Command::Project { curve, center, witnesses } => {
            let curve = input::curve(&main_input(curve, g, "a curve")?)?;
            project(curve, input::point(&center)?, witnesses.as_deref().map(input::points).transpose()?)
        }
        Command::Bound { monomial, kron, flattening, hf, at, row } => bound(monomial, kron, flattening, hf, at, row),
        Command::Certify { expr } => certify(&input::form(&main_input(expr, g, "a form")?)?, g),
        Command::Verify { path } => {
            let text = match (path, g.file.clone()) {
                (Some(p), _) | (None, Some(p)) => {
                    std::fs::read_to_string(&p).map_err(|e| Error::pre(format!("cannot read {p}: {e}")))?
                }
                (None, None) => return Err(Error::pre("missing a certificate file")),
            };
            verify(&text)
        }
    }
}

fn rank_binary(f: &BinaryForm) -> Result<Output> {
    let report = binary_rank(f);
    let mut summary = vec![format!("{f}: border rank {}, rank {}", report.border_rank, report.rank)];
    let mut certificates = vec![Certificate::BinaryRank { form: f.clone(), report: report.clone() }];
    // a Waring decomposition exists in rational points only when the
    // apolar generator of least degree splits over Q
    if report.rank == report.border_rank {
        if let Ok(d) = binary_power_sum(f) {
            summary.push(format!("power sum with {} terms", d.term_count));
            certificates.push(Certificate::Decomposition { decomposition: d });
        }
    }
    Ok(Output { summary, result: to_value(&report), certificates })
}

fn rank_cubic(f: &TernaryCubic) -> Result<Output> {
    let class = classify(f)?;
    let ev = &class.evidence;
    let mut summary = vec![format!(
        "{f}: {} (normal form {}), border rank {}, rank {}",
        class.tag.name(),
        class.tag.normal_form(),
        class.border_rank,
        class.rank
    )];
    let koszul = ev.koszul_rank.map_or("not computed".to_string(), |k| k.to_string());
    summary.push(format!("cat1 rank {}, Koszul rank {koszul}", ev.cat1_rank));
    Ok(Output {
        summary,
        result: to_value(&class),
        certificates: vec![Certificate::CubicClass { cubic: f.clone(), class }],
    })
}

fn submult(f: &FormFactor, g: &Global) -> Result<Output> {
    let (d, rank) = match f {
        FormFactor::Binary(b) => (submult_square_bounded(b, g.height_bound)?, binary_rank(b).rank),
        FormFactor::Cubic(c) => (submult_square_cubic(c)?, classify(c)?.rank),
    };
    let summary = vec![format!("({f})⊗({f}): {} terms, rank squared is {}", d.term_count, rank * rank)];
    let result = json!({ "form": f.to_string(), "rank": rank, "term_count": d.term_count });
    Ok(Output { summary, result, certificates: vec![Certificate::Decomposition { decomposition: d }] })
}

fn asserted(points: Vec<ProjPoint>) -> Vec<VarietyPoint> {
    points.into_iter().map(VarietyPoint::asserted).collect()
}

fn decomposition_output(d: StructuredDecomposition, head: String) -> Output {
    let summary = vec![format!("{head}: {} terms, residual zero", d.term_count)];
    let result = json!({ "target": d.target, "term_count": d.term_count, "bound": d.bound });
    Output { summary, result, certificates: vec![Certificate::Decomposition { decomposition: d }] }
}

fn exactly<const N: usize>(v: Vec<VarietyPoint>, flag: &str) -> Result<[VarietyPoint; N]> {
    let n = v.len();
    v.try_into().map_err(|_| Error::pre(format!("{flag} needs {N} points, found {n}")))
}

fn decompose(kind: DecomposeKind) -> Result<Output> {
    match kind {
        DecomposeKind::Line { points, at, power } => {
            let p = input::point(&at)?;
            let d = power_decomposition_on_line(&asserted(input::points(&points)?), &p, power)?;
            Ok(decomposition_output(d, format!("{p}^⊗{power}")))
        }
        DecomposeKind::Plane { points, extra, at } => {
            let p = input::point(&at)?;
            let w = VarietyPoint::asserted(input::point(&extra)?);
            let z = asserted(input::points(&points)?);
            let d = multisecant_plane_decomposition(&z, &w, &p)?;
            Ok(decomposition_output(d, format!("{p}^⊗{}", z.len())))
        }
        DecomposeKind::Multidrop { z, q, z2, q2 } => {
            let first = drop_factor(&z, &q)?;
            let second = drop_factor(z2.as_deref().unwrap_or(&z), q2.as_deref().unwrap_or(&q))?;
            let identity = multidrop_product_identity(&first, &second)?;
            let summary = vec![format!(
                "p1⊗p2 in {} terms of border rank, border rank at most {} against {} from the factors",
                identity.decomposition.summands.len(),
                identity.bound,
                identity.product_bound
            )];
            let result = json!({ "bound": identity.bound, "product_bound": identity.product_bound, "provenance": identity.provenance });
            Ok(Output { summary, result, certificates: vec![Certificate::Multidrop { first, second, identity }] })
        }
        DecomposeKind::Nonproduct { a, b } => {
            let a: [VarietyPoint; 3] = exactly(asserted(input::points(&a)?), "--a")?;
            let b: [VarietyPoint; 2] = exactly(asserted(input::points(&b)?), "--b")?;
            let result = nonproduct_decomposition([&a[0], &a[1], &a[2]], [&b[0], &b[1]])?;
            let summary = vec![format!(
                "{} terms, not a product of decompositions of the factors: {}",
                result.decomposition.term_count, result.non_product
            )];
            let value = json!({ "term_count": result.decomposition.term_count, "non_product": result.non_product });
            Ok(Output { summary, result: value, certificates: vec![Certificate::NonProduct { a, b, result }] })
        }
        DecomposeKind::Rank2 { first, second, third } => {
            let pair = |text: &str, flag: &str| -> Result<SecantPair> {
                let pts = input::points(text)?;
                let [a1, a2, p]: [ProjPoint; 3] =
                    pts.try_into().map_err(|_| Error::pre(format!("{flag} needs three points: a1;a2;p")))?;
                Ok(SecantPair { a1: VarietyPoint::asserted(a1), a2: VarietyPoint::asserted(a2), p })
            };
            let (first, second) = (pair(&first, "--first")?, pair(&second, "--second")?);
            let third: Option<[VarietyPoint; 2]> =
                third.map(|t| input::points(&t).and_then(|p| exactly(asserted(p), "--third"))).transpose()?;
            let verdict = rank2_product_decision(&first, &second, third.as_ref().map(|[a, b]| (a, b)))?;
            let summary = vec![match &verdict {
                Rank2Verdict::Rank3Certified { cross_ratio, .. } => {
                    format!("rank 3 certified, common cross-ratio {}", fmt_q(cross_ratio))
                }
                Rank2Verdict::NoCertificate { reason, .. } => format!("no certificate: {reason}"),
            }];
            Ok(Output {
                summary,
                result: to_value(&verdict),
                certificates: vec![Certificate::Rank2 { first, second, third, verdict }],
            })
        }
    }
}

/// A drop factor from binary forms: z a power, q0 of border rank r.
fn drop_factor(z: &str, q0: &str) -> Result<DropFactor> {
    let zf = BinaryForm::parse(z)?;
    let qf = BinaryForm::parse(q0)?;
    if zf.degree() != qf.degree() {
        return Err(Error::pre("z and q0 must have the same degree"));
    }
    if binary_rank(&zf).rank != 1 {
        return Err(Error::pre(format!("z = {zf} is not a power of a linear form")));
    }
    let r = binary_rank(&qf).border_rank;
    let shifted = BinaryForm::new(qf.coeffs().iter().zip(zf.coeffs()).map(|(a, b)| a + b).collect())?;
    let rs = binary_rank(&shifted).border_rank;
    if rs > r {
        return Err(Error::pre(format!("q0 + z has border rank {rs}, more than {r}")));
    }
    let point = ProjPoint::new(zf.coeffs().to_vec())?;
    Ok(DropFactor {
        z: VarietyPoint { point, membership: Membership::NormalForm { note: format!("{zf} is a power") } },
        q0: qf.coeffs().to_vec(),
        r,
        attestation: Attestation::BinaryForm,
    })
}

fn params_text(p: &SecantParams) -> String {
    match p {
        SecantParams::Rational { t2, t3 } => format!("t2 = {t2}, t3 = {t3}"),
        SecantParams::Quadratic { s1, s2, .. } => format!("t2, t3 roots of u^2 - ({}) u + ({})", fmt_q(s1), fmt_q(s2)),
    }
}

fn trisecant(curve: &RationalCurve, t1: &[String], g: &Global) -> Result<Output> {
    let params = if t1.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
        let h = i64::try_from(g.height_bound).unwrap_or(i64::MAX);
        (0..g.trials).map(|_| random_q(&mut rng, h)).collect()
    } else {
        t1.iter().map(|s| input::rational(s)).collect::<Result<Vec<_>>>()?
    };
    let mut summary = vec![format!("degree {} curve in P^{}", curve.degree(), curve.ambient())];
    let mut reports = Vec::new();
    let mut certificates = Vec::new();
    for t in &params {
        let report = trisecants_through(curve, t)?;
        let mut line = format!("t1 = {}: {} verified line(s)", fmt_q(t), report.lines.len());
        if report.certified_empty() {
            line.push_str(", none exist (constant eliminant)");
        }
        if !report.unresolved.is_empty() {
            line.push_str(&format!(", {} eliminant factor(s) without rational data", report.unresolved.len()));
        }
        summary.push(line);
        for l in &report.lines {
            summary.push(format!("  line {} {}: {}", l.line[0], l.line[1], params_text(&l.params)));
        }
        reports.push(report.clone());
        certificates.push(Certificate::Trisecants { curve: curve.clone(), report });
    }
    Ok(Output { summary, result: to_value(&reports), certificates })
}

fn multidrop(
    poly: Option<String>,
    point: Option<String>,
    rnc: Option<usize>,
    param: Option<String>,
    g: &Global,
) -> Result<Output> {
    let (f, z) = if let Some(k) = rnc {
        let f = rnc_secant_determinant(k)?;
        let z = match (point, param) {
            (Some(p), _) => input::point(&p)?,
            (None, Some(t)) => RationalCurve::rational_normal(2 * k).eval(&Param::Finite(input::rational(&t)?)).point,
            (None, None) => return Err(Error::pre("give --point or --param")),
        };
        (f, z)
    } else {
        let text = main_input(poly, g, "a polynomial or --rnc")?;
        let p = Poly::parse(&text)?;
        let role = format!("hypersurface {p} in variables {}", p.vars().join(", "));
        let z = input::point(&point.ok_or_else(|| Error::pre("give --point"))?)?;
        (HypersurfacePoly::new(p, role)?, z)
    };
    let report = multiplicity_gap(&f, &z, g.trials, g.seed)?;
    let mut summary = vec![format!(
        "degree {}, multiplicity {} at {z}, gap {} ({})",
        report.degree,
        report.multiplicity,
        report.gap,
        report.note()
    )];
    summary.push(match &report.multidrop {
        Some(t) => format!("multidrop line: {} further points", t.further_points),
        None => "no sampled line meets the hypersurface in two further points".into(),
    });
    Ok(Output {
        summary,
        result: to_value(&report),
        certificates: vec![Certificate::Multiplicity { hypersurface: f, point: z, report }],
    })
}

fn project(curve: RationalCurve, center: ProjPoint, witnesses: Option<Vec<ProjPoint>>) -> Result<Output> {
    let projection = project_curve(&curve, &center, witnesses.as_deref())?;
    let c = &projection.curve;
    let mut summary = vec![format!(
        "image: degree {} in P^{}, {}",
        c.degree(),
        c.ambient(),
        if projection.nondegenerate { "spanning" } else { "degenerate" }
    )];
    if let Some(s) = &projection.span {
        summary.push(format!("{} witness images of rank {}", s.images.len(), s.rank));
    }
    Ok(Output {
        summary,
        result: to_value(&projection),
        certificates: vec![Certificate::Projection { curve, center, witnesses, projection }],
    })
}

fn flattening(text: &str) -> Result<Flattening> {
    if text.eq_ignore_ascii_case("koszul") {
        return Ok(Flattening::Koszul);
    }
    Ok(Flattening::Catalecticant(input::naturals(text, 1)?[0] as usize))
}

fn bound(
    monomial: Option<String>,
    kron: Option<Vec<String>>,
    flat: Option<Vec<String>>,
    hf: Option<String>,
    at: Option<String>,
    row: Option<u32>,
) -> Result<Output> {
    if let Some(m) = monomial {
        let e = input::naturals(&m, 4)?;
        let exponents = [e[0], e[1], e[2], e[3]];
        let b = monomial_product_bound(e[0], e[1], e[2], e[3]);
        let mut summary = vec![format!("monomial bound {} (Hilbert function route {})", b.value, b.hf_value)];
        summary.extend(b.notes.iter().cloned());
        return Ok(Output {
            summary,
            result: to_value(&b),
            certificates: vec![Certificate::MonomialBound { exponents, bound: b }],
        });
    }
    if let Some(k) = kron {
        let f = input::form(&k[0])?;
        let g = input::form(&k[1])?;
        let b = match flat {
            Some(c) => kron_flattening_bound(&f, flattening(&c[0])?, &g, flattening(&c[1])?)?,
            None => default_kron_bound(&f, &g)?,
        };
        let summary = vec![format!(
            "({f})⊗({g}): Kronecker rank {} over {} gives border rank at least {}",
            b.kron_rank, b.normalizer, b.bound
        )];
        return Ok(Output {
            summary,
            result: to_value(&b),
            certificates: vec![Certificate::KronBound { factors: [f, g], bound: b }],
        });
    }
    if let Some(h) = hf {
        let ideal = BigradedIdeal::new(input::monomial_generators(&h)?);
        let (query, value) = match (at, row) {
            (Some(a), None) => {
                let ij = input::naturals(&a, 2)?;
                (HfQuery::At { i: ij[0], j: ij[1] }, bigraded_hf(&ideal, (ij[0], ij[1])))
            }
            (None, Some(j)) => (HfQuery::RowSum { j }, hf_row_sum(&ideal, j)?),
            _ => return Err(Error::pre("give --at i,j or --row j")),
        };
        let summary = vec![match query {
            HfQuery::At { i, j } => format!("HF({i}, {j}) = {value}"),
            HfQuery::RowSum { j } => format!("sum over i of HF(i, {j}) = {value}"),
        }];
        let result = json!({ "query": query, "value": value });
        return Ok(Output {
            summary,
            result,
            certificates: vec![Certificate::HilbertFunction { ideal, query, value }],
        });
    }
    Err(Error::pre("give one of --monomial, --kron or --hf"))
}

fn certify(f: &FormFactor, g: &Global) -> Result<Output> {
    let kron = default_kron_bound(f, f)?;
    let mut lower = LowerBound {
        value: kron.bound,
        method: LowerMethod::Flattening,
        provenance: format!("Kronecker square of the {:?} flattening", kron.flattenings[0]),
    };
    let mut monomial = None;
    let mut annotations = Vec::new();
    let upper = match f {
        FormFactor::Binary(b) => {
            if let Some((x, y)) = monomial_exponents(b) {
                let m = monomial_product_bound(x, y, x, y);
                if m.value > lower.value {
                    lower = LowerBound {
                        value: m.value,
                        method: LowerMethod::BigradedHf,
                        provenance: "bigraded Hilbert function of the apolar ideal".into(),
                    };
                }
                if (x.min(y), x.max(y)) == (1, 2) {
                    annotations.push("known value from the literature: rank 8 (not recomputed)".into());
                }
                monomial = Some(m);
            }
            let r = binary_rank(b);
            if r.rank == r.border_rank {
                binary_power_sum(b).and_then(|d| product_decomposition(&d, &d)).ok()
            } else {
                submult_square_bounded(b, g.height_bound).ok()
            }
        }
        FormFactor::Cubic(c) => {
            let class = classify(c)?;
            if class.rank > class.border_rank {
                submult_square_cubic(c).ok()
            } else {
                None
            }
        }
    };
    let window = certify_window(format!("({f})⊗({f})"), Some(lower), upper, annotations)?;
    let mut summary = vec![match (&window.lower, &window.upper) {
        (Some(l), Some(u)) if window.closed => format!("{}: rank = {}", window.target, l.value.max(u.value)),
        (Some(l), Some(u)) => format!("{}: {} <= rank <= {}", window.target, l.value, u.value),
        (Some(l), None) => format!("{}: rank >= {}, no decomposition constructed", window.target, l.value),
        _ => format!("{}: no bounds", window.target),
    }];
    summary.extend(window.annotations.iter().cloned());
    let result = to_value(&window);
    Ok(Output { summary, result, certificates: vec![Certificate::Window { form: f.clone(), kron, monomial, window }] })
}

/// The echoed arguments minus `--out`, so a replay never writes files.
fn replay_args(command: &[String]) -> Vec<String> {
    let mut out = vec!["apolar".to_string()];
    let mut it = command.iter();
    while let Some(a) = it.next() {
        if a == "--out" {
            it.next();
        } else if !a.starts_with("--out=") {
            out.push(a.clone());
        }
    }
    out
}

/// Runs the echoed command again and compares config, payload and
/// certificates exactly.
fn replay(r: &Report) -> Result<()> {
    if r.command.iter().any(|a| a == "verify") {
        return Err(Error::pre("a verify report cannot be replayed"));
    }
    let again = crate::run(replay_args(&r.command));
    let Some(fresh) = again.report else {
        return Err(Error::Inconsistent(format!("replay failed: {}", again.stderr.trim())));
    };
    if fresh.config != r.config {
        return Err(Error::Inconsistent("replayed config differs".into()));
    }
    if fresh.result != r.result {
        return Err(Error::Inconsistent("replayed result payload differs".into()));
    }
    if fresh.certificates != r.certificates {
        return Err(Error::Inconsistent("replayed certificates differ".into()));
    }
    Ok(())
}

/// Accepts a report, a single certificate or a list of certificates.
fn verify(text: &str) -> Result<Output> {
    let mut summary = Vec::new();
    let certs: Vec<Certificate> = if let Ok(r) = serde_json::from_str::<Report>(text) {
        replay(&r)?;
        summary.push(format!("replay of {:?}: identical", r.command.join(" ")));
        r.certificates
    } else if let Ok(c) = serde_json::from_str::<Certificate>(text) {
        vec![c]
    } else {
        serde_json::from_str::<Vec<Certificate>>(text)
            .map_err(|e| Error::Parse { pos: e.column(), msg: format!("line {}: {e}", e.line()) })?
    };
    if certs.is_empty() {
        return Err(Error::pre("the file holds no certificates"));
    }
    let mut checked = Vec::new();
    for (i, c) in certs.iter().enumerate() {
        c.verify().map_err(|e| match e {
            Error::Inconsistent(m) => Error::Inconsistent(format!("certificate {i} ({}): {m}", c.kind())),
            other => Error::Inconsistent(format!("certificate {i} ({}) cannot be recomputed: {other}", c.kind())),
        })?;
        summary.push(format!("certificate {i} ({}): pass", c.kind()));
        checked.push(c.kind());
    }
    Ok(Output { summary, result: json!({ "verified": checked }), certificates: Vec::new() })
}
