//! Rational curves given by binary forms, evaluation and projection.

use apolar_core::matrix::rank_of;
use apolar_core::rational::serde_q;
use apolar_core::{exact_solve, Error, Matrix, ProjPoint, Result, UPoly, Q};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A parameter value on the projective line: t = s'/s with s = 1, or the
/// point at infinity (s = 0).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Param {
    Finite(#[serde(with = "serde_q")] Q),
    Infinity,
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Finite(t) => write!(f, "{t}"),
            Param::Infinity => write!(f, "inf"),
        }
    }
}

/// The image of P^1 under N+1 binary forms of a common degree d.
///
/// Form `i` is stored by its coefficients on s^d, s^(d-1) t, ..., t^d.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCurve", into = "RawCurve")]
pub struct RationalCurve {
    forms: Vec<Vec<Q>>,
}

#[derive(Serialize, Deserialize)]
struct RawCurve(#[serde(with = "serde_q::mat")] Vec<Vec<Q>>);

impl TryFrom<RawCurve> for RationalCurve {
    type Error = Error;
    fn try_from(r: RawCurve) -> Result<Self> {
        RationalCurve::new(r.0)
    }
}

impl From<RationalCurve> for RawCurve {
    fn from(c: RationalCurve) -> Self {
        RawCurve(c.forms)
    }
}

/// A curve point together with the parameter that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub point: ProjPoint,
    pub param: Param,
}

impl RationalCurve {
    /// Rejects forms of unequal degree, the zero map and forms with a
    /// common factor.
    pub fn new(forms: Vec<Vec<Q>>) -> Result<Self> {
        let Some(len) = forms.first().map(Vec::len) else {
            return Err(Error::pre("a curve needs at least one form"));
        };
        if len == 0 || forms.iter().any(|f| f.len() != len) {
            return Err(Error::pre("all forms must share one degree"));
        }
        if forms.len() < 2 {
            return Err(Error::pre("a curve needs an ambient space of dimension at least 1"));
        }
        let c = RationalCurve { forms };
        if c.forms.iter().all(|f| f.iter().all(Zero::is_zero)) {
            return Err(Error::pre("the zero map is not a curve"));
        }
        if c.forms.iter().all(|f| f[len - 1].is_zero()) {
            return Err(Error::pre("the forms share the factor s"));
        }
        let g = c.affine().into_iter().fold(UPoly::zero(), |g, f| g.gcd(&f));
        if !g.is_constant() {
            return Err(Error::pre("the forms share a common factor"));
        }
        Ok(c)
    }

    pub fn from_i64(forms: &[&[i64]]) -> Result<Self> {
        Self::new(forms.iter().map(|f| f.iter().map(|&x| apolar_core::q(x)).collect()).collect())
    }

    /// The rational normal curve of degree d in P^d.
    pub fn rational_normal(d: usize) -> Self {
        Self::monomial(d, &(0..=d).collect::<Vec<_>>()).expect("normal curve")
    }

    /// The curve (s^(d-e_0) t^(e_0), ..., s^(d-e_N) t^(e_N)).
    pub fn monomial(d: usize, exps: &[usize]) -> Result<Self> {
        let forms = exps
            .iter()
            .map(|&e| {
                if e > d {
                    return Err(Error::pre("exponent exceeds the degree"));
                }
                let mut f = vec![Q::zero(); d + 1];
                f[e] = apolar_core::q(1);
                Ok(f)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(forms)
    }

    pub fn forms(&self) -> &[Vec<Q>] {
        &self.forms
    }

    pub fn degree(&self) -> usize {
        self.forms[0].len() - 1
    }

    /// Ambient projective dimension N.
    pub fn ambient(&self) -> usize {
        self.forms.len() - 1
    }

    /// The coefficient matrix spans all of P^N.
    pub fn nondegenerate(&self) -> bool {
        rank_of(&self.forms) == self.forms.len()
    }

    /// Each form in the chart s = 1, as a polynomial in t.
    pub fn affine(&self) -> Vec<UPoly> {
        self.forms.iter().map(|f| UPoly::new(f.clone())).collect()
    }

    pub fn eval_vec(&self, t: &Param) -> Vec<Q> {
        match t {
            Param::Finite(t) => self.affine().iter().map(|f| f.eval(t)).collect(),
            Param::Infinity => self.forms.iter().map(|f| f[f.len() - 1].clone()).collect(),
        }
    }

    /// Exact evaluation. Without a common factor the image is never zero.
    pub fn eval(&self, t: &Param) -> CurvePoint {
        let point = ProjPoint::new(self.eval_vec(t)).expect("forms have no common zero");
        CurvePoint { point, param: t.clone() }
    }

    /// Parameters (over C) whose image is `w`: the gcd of the 2x2 minors
    /// in the chart s = 1, plus a flag for t = infinity.
    pub fn preimage_of(&self, w: &ProjPoint) -> Result<(UPoly, bool)> {
        let wc = w.coords();
        if wc.len() != self.forms.len() {
            return Err(Error::pre("point and curve live in different spaces"));
        }
        let f = self.affine();
        let mut g = UPoly::zero();
        for i in 0..wc.len() {
            for j in i + 1..wc.len() {
                let m = f[i].scale(&wc[j]).sub(&f[j].scale(&wc[i]));
                g = g.gcd(&m);
            }
        }
        let at_inf = rank_of(&[self.eval_vec(&Param::Infinity), wc.to_vec()]) == 1;
        Ok((g, at_inf))
    }

    pub fn contains(&self, w: &ProjPoint) -> Result<bool> {
        let (g, at_inf) = self.preimage_of(w)?;
        Ok(at_inf || g.is_zero() || !g.is_constant())
    }
}

/// The Castelnuovo count of trisecants through a general point of a
/// space curve of degree d and genus g. Negative values are returned as
/// computed; they only say that no trisecants are expected.
pub fn expected_trisecants(d: i64, g: i64) -> i64 {
    (d - 2) * (d - 3) * (d - 4) / 6 - g * (d - 4)
}

/// The projection of a curve from a point, with optional span data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Projection {
    pub curve: RationalCurve,
    /// Index of the coordinate eliminated by the projection.
    pub pivot: usize,
    pub nondegenerate: bool,
    pub span: Option<SpanCertificate>,
}

/// Images of points whose span contained the center.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanCertificate {
    pub sources: Vec<ProjPoint>,
    /// The center as a combination of the sources.
    #[serde(with = "serde_q::vec")]
    pub combination: Vec<Q>,
    pub images: Vec<ProjPoint>,
    /// Rank of the images; s points give an (s-2)-plane when this is s-1.
    pub rank: usize,
}

/// x -> (x_i - w_i x_k / w_k)_{i != k}, where k is the first nonzero
/// coordinate of w. This is coordinate deletion when w is a coordinate point.
fn project_vec(x: &[Q], w: &[Q], k: usize) -> Vec<Q> {
    let yw = &x[k] / &w[k];
    (0..x.len()).filter(|&i| i != k).map(|i| &x[i] - &w[i] * &yw).collect()
}

/// Projects `gamma` from `w`. With `witnesses` y_1..y_s whose span holds w,
/// also certifies the rank of their images.
pub fn project_curve(gamma: &RationalCurve, w: &ProjPoint, witnesses: Option<&[ProjPoint]>) -> Result<Projection> {
    if gamma.contains(w)? {
        return Err(Error::pre(format!("the center {w} lies on the curve")));
    }
    let wc = w.coords();
    let k = wc.iter().position(|x| !x.is_zero()).expect("projective point");
    let d = gamma.degree();
    let forms: Vec<Vec<Q>> =
        (0..=d).map(|j| project_vec(&gamma.forms.iter().map(|f| f[j].clone()).collect::<Vec<_>>(), wc, k)).collect();
    // transpose back to one row per form
    let forms: Vec<Vec<Q>> = (0..wc.len() - 1).map(|i| forms.iter().map(|c| c[i].clone()).collect()).collect();
    let curve = RationalCurve::new(forms).map_err(|e| Error::pre(format!("projected curve is degenerate: {e}")))?;
    let nondegenerate = curve.nondegenerate();
    if gamma.nondegenerate() && !nondegenerate {
        return Err(Error::Inconsistent("projection of a spanning curve stopped spanning".into()));
    }
    let span = witnesses.map(|ys| span_certificate(ys, w, k)).transpose()?;
    Ok(Projection { curve, pivot: k, nondegenerate, span })
}

fn span_certificate(ys: &[ProjPoint], w: &ProjPoint, k: usize) -> Result<SpanCertificate> {
    if ys.iter().any(|y| y.coords().len() != w.coords().len()) {
        return Err(Error::pre("witness points live in a different space"));
    }
    let a = Matrix::from_cols(&ys.iter().map(|y| y.coords().to_vec()).collect::<Vec<_>>());
    let combination = exact_solve(&a, w.coords())
        .particular()
        .cloned()
        .ok_or_else(|| Error::pre("the center is not in the span of the witnesses"))?;
    let images = ys
        .iter()
        .map(|y| ProjPoint::new(project_vec(y.coords(), w.coords(), k)))
        .collect::<Result<Vec<_>>>()
        .map_err(|_| Error::pre("a witness coincides with the center"))?;
    let rank = rank_of(&images.iter().map(|p| p.coords().to_vec()).collect::<Vec<_>>());
    Ok(SpanCertificate { sources: ys.to_vec(), combination, images, rank })
}

#[cfg(test)]
mod tests {
    use super::*;
    use apolar_core::{q, qf};

    #[test]
    fn evaluation() {
        let c = RationalCurve::rational_normal(3);
        assert_eq!(c.eval(&Param::Finite(q(1))).point, ProjPoint::from_i64(&[1, 1, 1, 1]));
        assert_eq!(c.eval(&Param::Infinity).point, ProjPoint::from_i64(&[0, 0, 0, 1]));
        let c4 = RationalCurve::rational_normal(4);
        let p = c4.eval(&Param::Finite(qf(1, 2))).point;
        assert_eq!(p.coords(), &[q(1), qf(1, 2), qf(1, 4), qf(1, 8), qf(1, 16)]);
    }

    #[test]
    fn castelnuovo_count() {
        assert_eq!(expected_trisecants(4, 0), 0);
        assert_eq!(expected_trisecants(5, 0), 1);
        assert_eq!(expected_trisecants(6, 1), 2);
        assert_eq!(expected_trisecants(3, 0), 0);
    }

    #[test]
    fn rejects_common_factors() {
        assert!(RationalCurve::from_i64(&[&[1, 1, 0], &[0, 1, 1]]).is_err());
        assert!(RationalCurve::from_i64(&[&[1, 0], &[2, 0]]).is_err());
        assert!(RationalCurve::from_i64(&[&[1, 0, 0], &[0, 0, 1]]).is_ok());
    }
}
