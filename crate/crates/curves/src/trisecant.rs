//! Trisecant lines of space curves through a chosen curve point.
//!
//! Points g(t1), g(t2), g(t3) are collinear exactly when the matrix of
//! divided differences [g(t1); g[t1,t2]; g[t1,t2,t3]] has rank at most 2.
//! Its maximal minors are the plain minors divided by the Vandermonde
//! factors, and they are symmetric in t2, t3, so the system is solved for
//! s1 = t2 + t3 and s2 = t2 t3. Each solution gives the quadratic
//! u^2 - s1 u + s2, and reducing the parametrization modulo it yields two
//! rational points spanning the line through g(t2) and g(t3). Collinearity
//! with g(t1) is then a rational rank check even when t2, t3 are not
//! rational.

use crate::curve::{Param, RationalCurve};
use apolar_core::matrix::rank_of;
use apolar_core::rational::serde_q;
use apolar_core::upoly::resultant_y;
use apolar_core::{q, Error, Poly, ProjPoint, Result, UPoly, Q};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Largest curve degree accepted by the search.
pub const DEFAULT_MAX_TRISECANT_DEGREE: usize = 6;

/// The two further intersection parameters of a trisecant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SecantParams {
    /// Both parameters rational (possibly equal, or infinite).
    Rational { t2: Param, t3: Param },
    /// Roots of u^2 - s1 u + s2, irreducible over Q.
    Quadratic {
        #[serde(with = "serde_q")]
        s1: Q,
        #[serde(with = "serde_q")]
        s2: Q,
        #[serde(with = "serde_q")]
        discriminant: Q,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trisecant {
    /// Two rational points spanning the line.
    pub line: [ProjPoint; 2],
    pub params: SecantParams,
    /// False when two of the three parameters coincide (a tangent line).
    pub reduced: bool,
    /// Result of the independent rank check on g(t1) and the spanning pair.
    pub verified: bool,
}

/// An eliminant root that is not rational: isolated by sign changes but not
/// resolved to a line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnresolvedRoot {
    #[serde(with = "serde_q::vec")]
    pub eliminant: Vec<Q>,
    #[serde(with = "serde_q::mat")]
    pub real_intervals: Vec<Vec<Q>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrisecantReport {
    #[serde(with = "serde_q")]
    pub t1: Q,
    pub base: ProjPoint,
    /// Eliminant in s1, coefficients from the constant term up. A nonzero
    /// constant certifies that no line through the base meets the curve at
    /// two further finite parameters.
    #[serde(with = "serde_q::vec")]
    pub eliminant: Vec<Q>,
    /// Gcd of the minors for lines through the base and g(inf).
    #[serde(with = "serde_q::vec")]
    pub infinity_eliminant: Vec<Q>,
    pub lines: Vec<Trisecant>,
    pub unresolved: Vec<UnresolvedRoot>,
    /// Candidate solutions discarded by the rank check.
    pub rejected: usize,
}

impl TrisecantReport {
    /// Both eliminants are nonzero constants.
    pub fn certified_empty(&self) -> bool {
        let constant = |c: &[Q]| c.len() == 1 && !c[0].is_zero();
        constant(&self.eliminant) && constant(&self.infinity_eliminant) && self.lines.is_empty()
    }

    pub fn reduced_lines(&self) -> impl Iterator<Item = &Trisecant> {
        self.lines.iter().filter(|l| l.reduced)
    }
}

const VARS: [&str; 2] = ["t2", "t3"];

fn upoly_in(p: &UPoly, var: usize) -> Poly {
    let mut out = Poly::zero(&VARS);
    for (k, c) in p.coeffs().iter().enumerate() {
        let mut e = vec![0u32; 2];
        e[var] = k as u32;
        out.add_term(e, c.clone());
    }
    out
}

/// (f(t3) - f(t2)) / (t3 - t2), checked by multiplying back.
fn divided_difference(f: &Poly) -> Result<Poly> {
    let swap = |p: &Poly| {
        let mut out = Poly::zero(&VARS);
        for (e, c) in p.terms() {
            out.add_term(vec![e[1], e[0]], c.clone());
        }
        out
    };
    let num = swap(f).sub(f);
    let mut quo = Poly::zero(&VARS);
    for (e, c) in f.terms() {
        if e[1] != 0 {
            return Err(Error::Inconsistent("divided difference of a bivariate row".into()));
        }
        // (t3^k - t2^k) / (t3 - t2) = sum_{i+j=k-1} t2^i t3^j
        for i in 0..e[0] {
            quo.add_term(vec![i, e[0] - 1 - i], c.clone());
        }
    }
    let den = Poly::var(&VARS, 1).sub(&Poly::var(&VARS, 0));
    if !quo.mul(&den).sub(&num).is_zero() {
        return Err(Error::Inconsistent("inexact divided difference".into()));
    }
    Ok(quo)
}

fn det3(m: &[[Poly; 3]; 3]) -> Poly {
    let minor = |a: &Poly, b: &Poly, c: &Poly, d: &Poly| a.mul(d).sub(&b.mul(c));
    m[0][0]
        .mul(&minor(&m[1][1], &m[1][2], &m[2][1], &m[2][2]))
        .sub(&m[0][1].mul(&minor(&m[1][0], &m[1][2], &m[2][0], &m[2][2])))
        .add(&m[0][2].mul(&minor(&m[1][0], &m[1][1], &m[2][0], &m[2][1])))
}

/// Rewrites a symmetric polynomial in t2, t3 as a polynomial in s1, s2.
fn symmetric_reduce(p: &Poly) -> Result<Poly> {
    let sv = ["s1", "s2"];
    let e1 = Poly::var(&VARS, 0).add(&Poly::var(&VARS, 1));
    let e2 = Poly::var(&VARS, 0).mul(&Poly::var(&VARS, 1));
    let mut rest = p.clone();
    let mut out = Poly::zero(&sv);
    while let Some((e, c)) = rest.terms().max_by(|a, b| a.0.cmp(b.0)).map(|(e, c)| (e.clone(), c.clone())) {
        let (a, b) = (e[0], e[1]);
        if a < b {
            return Err(Error::Inconsistent("collinearity minor is not symmetric".into()));
        }
        out.add_term(vec![a - b, b], c.clone());
        rest = rest.sub(&e1.pow(a - b).mul(&e2.pow(b)).scale(&c));
    }
    Ok(out)
}

/// The four maximal minors of [g(t1); g[t1,t2]; g[t1,t2,t3]].
fn collinearity_minors(gamma: &RationalCurve, t1: &Q) -> Result<Vec<Poly>> {
    let f = gamma.affine();
    let r0: Vec<Poly> = f.iter().map(|g| Poly::constant(&VARS, g.eval(t1))).collect();
    let r1u: Vec<UPoly> = f
        .iter()
        .map(|g| g.sub(&UPoly::constant(g.eval(t1))).div_exact(&UPoly::linear_root(t1)))
        .collect::<Result<_>>()?;
    let r1: Vec<Poly> = r1u.iter().map(|g| upoly_in(g, 0)).collect();
    let r2: Vec<Poly> = r1.iter().map(divided_difference).collect::<Result<_>>()?;
    let rows = [r0, r1, r2];
    let mut out = Vec::new();
    for skip in (0..4).rev() {
        let cols: Vec<usize> = (0..4).filter(|&c| c != skip).collect();
        let m: [[Poly; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| rows[i][cols[j]].clone()));
        out.push(det3(&m));
    }
    Ok(out)
}

/// Gcd of the univariate polynomials, ignoring zeros.
fn gcd_all<'a>(ps: impl IntoIterator<Item = &'a UPoly>) -> UPoly {
    ps.into_iter().fold(UPoly::zero(), |g, p| g.gcd(p))
}

/// Eliminates s2 from the symmetric system, returning a univariate
/// polynomial in s1 vanishing at every solution.
fn eliminate(sys: &[Poly]) -> Result<UPoly> {
    let ys: Vec<_> = sys.iter().filter(|p| !p.is_zero()).map(|p| p.to_ypoly(0, 1)).collect();
    let mut parts = Vec::new();
    for (i, a) in ys.iter().enumerate() {
        let da = apolar_core::upoly::ypoly_degree(a).unwrap_or(0);
        if da == 0 {
            parts.push(a[0].clone());
            continue;
        }
        for b in &ys[i + 1..] {
            let db = apolar_core::upoly::ypoly_degree(b).unwrap_or(0);
            let r = resultant_y(a, b, db);
            if !r.is_zero() {
                parts.push(r);
            }
        }
    }
    let g = gcd_all(&parts);
    if g.is_zero() {
        return Err(Error::inconclusive("the collinearity system has a positive-dimensional solution set"));
    }
    Ok(g.monic())
}

/// Reduces each coordinate modulo m(u) = u^2 - s1 u + s2: g(u) = A + B u.
fn reduce_mod_quadratic(gamma: &RationalCurve, s1: &Q, s2: &Q) -> (Vec<Q>, Vec<Q>) {
    let m = UPoly::new(vec![s2.clone(), -s1.clone(), Q::one()]);
    gamma
        .affine()
        .iter()
        .map(|g| {
            let r = g.divrem(&m).1;
            (r.coeff(0), r.coeff(1))
        })
        .unzip()
}

fn check_line(base: &[Q], a: Vec<Q>, b: Vec<Q>) -> Option<[ProjPoint; 2]> {
    if rank_of(&[a.clone(), b.clone()]) != 2 || rank_of(&[base.to_vec(), a.clone(), b.clone()]) != 2 {
        return None;
    }
    Some([ProjPoint::new(a).ok()?, ProjPoint::new(b).ok()?])
}

fn quadratic_line(gamma: &RationalCurve, t1: &Q, base: &[Q], s1: &Q, s2: &Q) -> Option<Trisecant> {
    let (a, b) = reduce_mod_quadratic(gamma, s1, s2);
    let line = check_line(base, a, b)?;
    let disc = s1 * s1 - q(4) * s2;
    let m = UPoly::new(vec![s2.clone(), -s1.clone(), Q::one()]);
    let roots = m.rational_roots();
    let (params, reduced) = if disc.is_zero() {
        let r = s1 / q(2);
        (SecantParams::Rational { t2: Param::Finite(r.clone()), t3: Param::Finite(r) }, false)
    } else if roots.len() == 2 {
        let through_base = roots.contains(t1);
        (
            SecantParams::Rational { t2: Param::Finite(roots[0].clone()), t3: Param::Finite(roots[1].clone()) },
            !through_base,
        )
    } else {
        (SecantParams::Quadratic { s1: s1.clone(), s2: s2.clone(), discriminant: disc }, true)
    };
    Some(Trisecant { line, params, reduced, verified: true })
}

fn unresolved(p: &UPoly) -> UnresolvedRoot {
    UnresolvedRoot {
        eliminant: p.coeffs().to_vec(),
        real_intervals: p.isolate_real_roots().into_iter().map(|(a, b)| vec![a, b]).collect(),
    }
}

/// Removes the rational roots from the squarefree part of `p`.
fn irrational_part(p: &UPoly, roots: &[Q]) -> UPoly {
    roots.iter().fold(p.squarefree_part(), |acc, r| acc.div_exact(&UPoly::linear_root(r)).unwrap_or(acc))
}

/// All trisecant lines of a space curve through g(t1), with the default
/// degree cap.
pub fn trisecants_through(gamma: &RationalCurve, t1: &Q) -> Result<TrisecantReport> {
    trisecants_through_capped(gamma, t1, DEFAULT_MAX_TRISECANT_DEGREE)
}

pub fn trisecants_through_capped(gamma: &RationalCurve, t1: &Q, max_degree: usize) -> Result<TrisecantReport> {
    if gamma.ambient() != 3 {
        return Err(Error::pre("trisecant search needs a curve in P^3"));
    }
    if gamma.degree() > max_degree {
        return Err(Error::pre(format!("curve degree {} exceeds the cap {max_degree}", gamma.degree())));
    }
    if !gamma.nondegenerate() {
        return Err(Error::pre("the curve lies in a plane"));
    }
    let base = gamma.eval_vec(&Param::Finite(t1.clone()));
    let tangent: Vec<Q> = gamma.affine().iter().map(|g| g.derivative().eval(t1)).collect();
    if rank_of(&[base.clone(), tangent]) < 2 {
        return Err(Error::pre(format!("the curve is singular at t = {t1}")));
    }

    let minors = collinearity_minors(gamma, t1)?;
    let sym: Vec<Poly> = minors.iter().map(symmetric_reduce).collect::<Result<_>>()?;
    let elim = eliminate(&sym)?;
    let mut lines = Vec::new();
    let mut unresolved_roots = Vec::new();
    let mut rejected = 0;

    let s1_roots = elim.rational_roots();
    for s1 in &s1_roots {
        let fibre: Vec<UPoly> = sym
            .iter()
            .map(|p| {
                let mut out = vec![Q::zero(); p.degree_in(1).unwrap_or(0) as usize + 1];
                for (e, c) in p.terms() {
                    out[e[1] as usize] += c * num_traits::pow(s1.clone(), e[0] as usize);
                }
                UPoly::new(out)
            })
            .collect();
        let g = gcd_all(&fibre);
        if g.is_zero() {
            return Err(Error::inconclusive(format!("a whole family of lines at s1 = {s1}")));
        }
        let s2_roots = g.rational_roots();
        for s2 in &s2_roots {
            match quadratic_line(gamma, t1, &base, s1, s2) {
                Some(l) => lines.push(l),
                None => rejected += 1,
            }
        }
        let rest = irrational_part(&g, &s2_roots);
        if !rest.is_constant() {
            unresolved_roots.push(unresolved(&rest));
        }
    }
    let rest = irrational_part(&elim, &s1_roots);
    if !rest.is_constant() {
        unresolved_roots.push(unresolved(&rest));
    }

    // lines through g(t1) and g(inf)
    let inf = gamma.eval_vec(&Param::Infinity);
    let diff: Vec<UPoly> = gamma
        .affine()
        .iter()
        .map(|g| g.sub(&UPoly::constant(g.eval(t1))).div_exact(&UPoly::linear_root(t1)))
        .collect::<Result<_>>()?;
    let mut inf_minors = Vec::new();
    for skip in (0..4).rev() {
        let cols: Vec<usize> = (0..4).filter(|&c| c != skip).collect();
        let m: [[Poly; 3]; 3] = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let c = cols[j];
                let u = match i {
                    0 => UPoly::constant(base[c].clone()),
                    1 => UPoly::constant(inf[c].clone()),
                    _ => diff[c].clone(),
                };
                upoly_in(&u, 0)
            })
        });
        inf_minors.push(det3(&m).to_ypoly(0, 1)[0].clone());
    }
    let inf_elim = gcd_all(&inf_minors);
    if inf_elim.is_zero() {
        return Err(Error::inconclusive("every chord through the base meets g(inf)"));
    }
    let inf_elim = inf_elim.monic();
    let inf_roots = inf_elim.rational_roots();
    for t3 in &inf_roots {
        let p3 = gamma.eval_vec(&Param::Finite(t3.clone()));
        let pair = if t3 == t1 {
            let tangent: Vec<Q> = gamma.affine().iter().map(|g| g.derivative().eval(t1)).collect();
            check_line(&base, inf.clone(), tangent)
        } else {
            check_line(&base, inf.clone(), p3)
        };
        match pair {
            Some(line) => lines.push(Trisecant {
                line,
                params: SecantParams::Rational { t2: Param::Infinity, t3: Param::Finite(t3.clone()) },
                reduced: t3 != t1,
                verified: true,
            }),
            None => rejected += 1,
        }
    }
    let rest = irrational_part(&inf_elim, &inf_roots);
    if !rest.is_constant() {
        unresolved_roots.push(unresolved(&rest));
    }

    Ok(TrisecantReport {
        t1: t1.clone(),
        base: ProjPoint::new(base).expect("curve point"),
        eliminant: elim.coeffs().to_vec(),
        infinity_eliminant: inf_elim.coeffs().to_vec(),
        lines,
        unresolved: unresolved_roots,
        rejected,
    })
}

/// Independent check of a reported line: g(t1) and both spanning points
/// have rank 2, and each rational parameter maps onto the line.
pub fn verify_trisecant(gamma: &RationalCurve, t1: &Q, line: &Trisecant) -> bool {
    let base = gamma.eval_vec(&Param::Finite(t1.clone()));
    let [a, b] = &line.line;
    let span = vec![a.coords().to_vec(), b.coords().to_vec()];
    if rank_of(&span) != 2 || rank_of(&[span[0].clone(), span[1].clone(), base]) != 2 {
        return false;
    }
    let on_line = |t: &Param| rank_of(&[span[0].clone(), span[1].clone(), gamma.eval_vec(t)]) == 2;
    match &line.params {
        SecantParams::Rational { t2, t3 } => on_line(t2) && on_line(t3),
        SecantParams::Quadratic { s1, s2, discriminant } => {
            if discriminant != &(s1 * s1 - q(4) * s2) || discriminant.is_zero() {
                return false;
            }
            let (a, b) = reduce_mod_quadratic(gamma, s1, s2);
            // the reduced pair spans the same line
            rank_of(&[span[0].clone(), span[1].clone(), a]) == 2 && rank_of(&[span[0].clone(), span[1].clone(), b]) == 2
        }
    }
}

/// Whether a quadratic parameter pair is real (positive discriminant).
pub fn is_real_pair(params: &SecantParams) -> bool {
    match params {
        SecantParams::Rational { .. } => true,
        SecantParams::Quadratic { discriminant, .. } => discriminant.is_positive(),
    }
}
