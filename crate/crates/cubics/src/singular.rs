use crate::cubic::{TernaryCubic, VARS};
use apolar_core::matrix::Matrix;
use apolar_core::rational::{normalize_first, primitive_integer};
use apolar_core::upoly::{exact_eliminant, UPoly, YPoly};
use apolar_core::{q, Poly, ProjPoint, Q};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::cmp::Reverse;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularReport {
    pub singular: bool,
    /// A rational singular point of smallest height, when one exists.
    pub witness: Option<ProjPoint>,
    /// Number of coordinate systems tried; the first is the given one.
    pub attempts: usize,
    pub seed: u64,
    /// Eliminant of the gradient in the affine chart z = 1 of the final
    /// coordinate system.
    #[serde(with = "apolar_core::rational::serde_q::vec")]
    pub eliminant: Vec<Q>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LinearFactor {
    None,
    Rational {
        #[serde(with = "apolar_core::rational::serde_q::vec")]
        form: Vec<Q>,
    },
    /// Factors exist over the complex numbers but none is rational. The
    /// eliminant is in the parameter a of the lines z' + a x' + b y' of the
    /// adapted coordinates.
    Irrational {
        #[serde(with = "apolar_core::rational::serde_q::vec")]
        eliminant: Vec<Q>,
    },
}

impl LinearFactor {
    pub fn exists(&self) -> bool {
        !matches!(self, LinearFactor::None)
    }
}

/// Integer points of the projective plane by |a| + |b| + |c|, first nonzero
/// coordinate positive, lexicographically decreasing within a height.
pub fn plane_points_by_height(max_height: i64) -> impl Iterator<Item = [i64; 3]> {
    (1..=max_height).flat_map(|h| {
        let mut pts = Vec::new();
        for a in (-h..=h).rev() {
            let rest = h - a.abs();
            for b in (-rest..=rest).rev() {
                let c = rest - b.abs();
                let cs: &[i64] = if c == 0 { &[0] } else { &[c, -c] };
                for &c in cs {
                    let first = [a, b, c].into_iter().find(|x| *x != 0).unwrap_or(0);
                    if first > 0 && gcd(gcd(a, b), c) == 1 {
                        pts.push([a, b, c]);
                    }
                }
            }
        }
        pts
    })
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn qvec(p: [i64; 3]) -> Vec<Q> {
    p.iter().map(|&x| q(x)).collect()
}

fn point_key(p: &[Q]) -> (BigInt, Reverse<Vec<BigInt>>) {
    let ints = primitive_integer(p);
    let h = ints.iter().fold(BigInt::zero(), |a, x| a + x.abs());
    (h, Reverse(ints))
}

/// Sort rational points by height, larger coordinates first within a height.
pub(crate) fn sort_points(pts: &mut Vec<Vec<Q>>) {
    for p in pts.iter_mut() {
        *p = normalize_first(p);
    }
    pts.sort_by_key(|p| point_key(p));
    pts.dedup();
}

fn gradient_vanishes(f: &TernaryCubic, p: &[Q]) -> bool {
    f.gradient().iter().all(|g| g.eval(p).is_zero())
}

/// Univariate restriction of a two-variable polynomial with `var` fixed.
fn fix(p: &Poly, var: usize, value: &Q) -> UPoly {
    let other = 1 - var;
    let mut c: Vec<Q> = Vec::new();
    for (e, v) in p.terms() {
        let k = e[other] as usize;
        if c.len() <= k {
            c.resize(k + 1, Q::zero());
        }
        c[k] += v * num_traits::pow(value.clone(), e[var] as usize);
    }
    UPoly::new(c)
}

fn gcd_all(ps: &[UPoly]) -> UPoly {
    ps.iter().fold(UPoly::zero(), |g, p| g.gcd(p))
}

/// Decide whether the gradient of f has a common nonzero complex zero.
pub fn is_singular(f: &TernaryCubic) -> SingularReport {
    is_singular_seeded(f, 0)
}

pub fn is_singular_seeded(f: &TernaryCubic, seed: u64) -> SingularReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0;
    loop {
        attempts += 1;
        let m = if attempts == 1 { Matrix::identity(3) } else { crate::cubic::random_gl3(&mut rng, 5) };
        let fm = f.change_vars(&m).expect("invertible change keeps f nonzero");
        let grad = fm.gradient();
        // A = G0 + s1 G1 + s2 G2 with a y^2 term so the eliminant is exact
        let y2 = [0u32, 2, 0];
        let Some(a) = (0..20).find_map(|_| {
            let s1 = q(rng.gen_range(-5..=5));
            let s2 = q(rng.gen_range(-5..=5));
            let a = grad[0].add(&grad[1].scale(&s1)).add(&grad[2].scale(&s2));
            (!a.coefficient(&y2).is_zero()).then_some(a)
        }) else {
            continue;
        };
        let system = [a, grad[1].clone(), grad[2].clone()];

        let mut found: Vec<Vec<Q>> = Vec::new();
        let mut singular = false;
        // the line z = 0: the point (1:0:0) and the chart y = 1
        let at_infinity: Vec<Poly> = system.iter().map(|g| g.set_zero(2)).collect();
        if at_infinity.iter().all(|g| g.coefficient(&[2, 0]).is_zero()) {
            singular = true;
            found.push(vec![q(1), q(0), q(0)]);
        }
        let g_inf = gcd_all(&at_infinity.iter().map(|g| fix(g, 1, &Q::one())).collect::<Vec<_>>());
        if g_inf.is_zero() || !g_inf.is_constant() {
            singular = true;
            for x0 in g_inf.rational_roots() {
                found.push(vec![x0, q(1), q(0)]);
            }
        }
        // the chart z = 1, eliminating y
        let aff: Vec<Poly> = system.iter().map(|g| g.dehomogenize(2)).collect();
        let ys: Vec<YPoly> = aff.iter().map(|g| g.to_ypoly(0, 1)).collect();
        let e = exact_eliminant(&ys[0], &ys[1..]).expect("y^2 coefficient is a nonzero constant");
        if e.is_zero() || !e.is_constant() {
            singular = true;
            for x0 in e.rational_roots() {
                let g = gcd_all(&aff.iter().map(|p| fix(p, 0, &x0)).collect::<Vec<_>>());
                for y0 in g.rational_roots() {
                    found.push(vec![x0.clone(), y0, q(1)]);
                }
            }
        }
        let mut pts: Vec<Vec<Q>> =
            found.into_iter().map(|p| m.mul_vec(&p)).filter(|p| gradient_vanishes(f, p)).collect();
        if singular && pts.is_empty() && e.is_zero() {
            // a curve of singular points: look for a small rational one
            pts = plane_points_by_height(8).map(qvec).filter(|p| gradient_vanishes(f, p)).take(1).collect();
        }
        sort_points(&mut pts);
        return SingularReport {
            singular,
            witness: pts.into_iter().next().map(|p| ProjPoint::new(p).expect("nonzero point")),
            attempts,
            seed,
            eliminant: e.coeffs().to_vec(),
        };
    }
}

/// A linear form dividing f over the complex numbers, if any.
pub fn linear_factor(f: &TernaryCubic) -> LinearFactor {
    // move a point off the curve to (0:0:1) so that every factor line has
    // a nonzero z'-coefficient and can be written z' + a x' + b y'
    let c = plane_points_by_height(i64::MAX)
        .map(qvec)
        .find(|p| !f.eval(p).is_zero())
        .expect("a nonzero cubic does not vanish everywhere");
    let m = complete_basis(&c);
    let fm = f.change_vars(&m).expect("invertible");
    let names = ["a", "b", "x", "y"];
    let var = |i| Poly::var(&names, i);
    let z = var(0).mul(&var(2)).add(&var(1).mul(&var(3))).neg();
    let sub = fm.to_poly().compose(&[var(2), var(3), z]);
    // P_j = coefficient of x^(3-j) y^j, a polynomial in (a, b)
    let ab = ["a", "b"];
    let mut coeffs: Vec<Poly> = vec![Poly::zero(&ab); 4];
    for (e, v) in sub.terms() {
        coeffs[e[3] as usize].add_term(vec![e[0], e[1]], v.clone());
    }
    let ys: Vec<YPoly> = coeffs.iter().map(|p| p.to_ypoly(0, 1)).collect();
    let e = exact_eliminant(&ys[3], &ys[..3]).expect("b^3 coefficient is -f'(0,0,1)");
    if e.is_constant() && !e.is_zero() {
        return LinearFactor::None;
    }
    assert!(!e.is_zero(), "a nonzero cubic has finitely many linear factors");
    let mt_inv = m.transpose().inverse().expect("invertible");
    let mut lines: Vec<Vec<Q>> = Vec::new();
    for a0 in e.rational_roots() {
        let g = gcd_all(&coeffs.iter().map(|p| fix(p, 0, &a0)).collect::<Vec<_>>());
        for b0 in g.rational_roots() {
            let l = mt_inv.mul_vec(&[a0.clone(), b0, q(1)]);
            debug_assert!(divides(&l, f));
            lines.push(l);
        }
    }
    sort_points(&mut lines);
    match lines.into_iter().next() {
        Some(form) => LinearFactor::Rational { form },
        None => LinearFactor::Irrational { eliminant: e.coeffs().to_vec() },
    }
}

/// Rational common zeros of two ternary forms without a common component,
/// in height order.
pub fn common_rational_points(a: &Poly, b: &Poly) -> Vec<Vec<Q>> {
    let deg = a.total_degree().unwrap_or(0);
    // move a point off {a = 0} to (0:1:0) so a has a constant y^deg term
    let c = plane_points_by_height(i64::MAX)
        .map(qvec)
        .find(|p| !a.eval(p).is_zero())
        .expect("a nonzero form does not vanish everywhere");
    let m0 = complete_basis(&c);
    let m = Matrix::from_cols(&[m0.col(0), m0.col(2), m0.col(1)]);
    let (am, bm) = (a.linear_change(&m), b.linear_change(&m));
    debug_assert!(!am.coefficient(&[0, deg, 0]).is_zero());
    let mut found: Vec<Vec<Q>> = Vec::new();
    // chart z = 1
    let (aa, ba) = (am.dehomogenize(2), bm.dehomogenize(2));
    if let Ok(e) = exact_eliminant(&aa.to_ypoly(0, 1), &[ba.to_ypoly(0, 1)]) {
        if !e.is_zero() {
            for x0 in e.rational_roots() {
                let g = fix(&aa, 0, &x0).gcd(&fix(&ba, 0, &x0));
                for y0 in g.rational_roots() {
                    found.push(vec![x0.clone(), y0, q(1)]);
                }
            }
        }
    }
    // line z = 0: (1:0:0) and the chart y = 1
    let (a0, b0) = (am.set_zero(2), bm.set_zero(2));
    let g = fix(&a0, 1, &Q::one()).gcd(&fix(&b0, 1, &Q::one()));
    if !g.is_zero() {
        for x0 in g.rational_roots() {
            found.push(vec![x0, q(1), q(0)]);
        }
    }
    if am.eval(&qvec([1, 0, 0])).is_zero() && bm.eval(&qvec([1, 0, 0])).is_zero() {
        found.push(qvec([1, 0, 0]));
    }
    let mut pts: Vec<Vec<Q>> = found.into_iter().map(|p| m.mul_vec(&p)).collect();
    sort_points(&mut pts);
    pts
}

/// Hessian determinant of a ternary form.
pub fn hessian(p: &Poly) -> Poly {
    let h: Vec<Vec<Poly>> = (0..3).map(|i| (0..3).map(|j| p.derivative(i).derivative(j)).collect()).collect();
    let term = |a: usize, b: usize, c: usize| h[0][a].mul(&h[1][b]).mul(&h[2][c]);
    term(0, 1, 2).add(&term(1, 2, 0)).add(&term(2, 0, 1)).sub(&term(2, 1, 0)).sub(&term(0, 2, 1)).sub(&term(1, 0, 2))
}

/// Rational smooth inflection points of a reduced cubic with no linear
/// component.
pub fn rational_flexes(f: &TernaryCubic) -> Vec<Vec<Q>> {
    let p = f.to_poly();
    common_rational_points(&p, &hessian(&p)).into_iter().filter(|x| !gradient_vanishes(f, x)).collect()
}

/// Columns: two standard basis vectors and `c`, chosen to be invertible.
pub(crate) fn complete_basis(c: &[Q]) -> Matrix {
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let mut cols = vec![vec![Q::zero(); 3], vec![Q::zero(); 3], c.to_vec()];
        cols[0][i] = Q::one();
        cols[1][j] = Q::one();
        let m = Matrix::from_cols(&cols);
        if !m.det().is_zero() {
            return m;
        }
    }
    unreachable!("a nonzero vector completes to a basis")
}

/// Coordinates N with l(N p) = p_z: columns span the kernel of l, then a
/// vector on which l is 1.
pub(crate) fn adapted_to_line(l: &[Q]) -> Matrix {
    let k = l.iter().position(|x| !x.is_zero()).expect("nonzero linear form");
    let mut cols: Vec<Vec<Q>> = Vec::new();
    for j in (0..3).filter(|&j| j != k) {
        let mut v = vec![Q::zero(); 3];
        v[j] = Q::one();
        v[k] = -&l[j] / &l[k];
        cols.push(v);
    }
    let mut w = vec![Q::zero(); 3];
    w[k] = Q::one() / &l[k];
    cols.push(w);
    Matrix::from_cols(&cols)
}

/// f / l, expressed in the adapted coordinates of [`adapted_to_line`].
pub(crate) fn quotient_conic(f: &TernaryCubic, l: &[Q]) -> Option<Poly> {
    let p = f.to_poly().linear_change(&adapted_to_line(l));
    let mut out = Poly::zero(&VARS);
    for (e, v) in p.terms() {
        if e[2] == 0 {
            return None;
        }
        out.add_term(vec![e[0], e[1], e[2] - 1], v.clone());
    }
    Some(out)
}

pub(crate) fn divides(l: &[Q], f: &TernaryCubic) -> bool {
    quotient_conic(f, l).is_some()
}

/// Determinant of the symmetric matrix of a ternary quadratic form.
pub(crate) fn conic_det(c: &Poly) -> Q {
    let mut g = Matrix::zeros(3, 3);
    for (e, v) in c.terms() {
        let idx: Vec<usize> = (0..3).flat_map(|i| std::iter::repeat_n(i, e[i] as usize)).collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            g.set(i, i, v.clone());
        } else {
            let half = v / q(2);
            g.set(i, j, half.clone());
            g.set(j, i, half);
        }
    }
    g.det()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubic(s: &str) -> TernaryCubic {
        TernaryCubic::parse(s).unwrap()
    }

    #[test]
    fn plane_point_order() {
        let v: Vec<_> = plane_points_by_height(2).collect();
        assert_eq!(&v[..3], &[[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(v.len(), 9);
        assert_eq!(v[3], [1, 1, 0]);
    }

    #[test]
    fn singularity_examples() {
        assert!(!is_singular(&cubic("x^3+y^3+z^3")).singular);
        let r = is_singular(&cubic("x^3+y^2*z"));
        assert!(r.singular);
        assert_eq!(r.witness, Some(ProjPoint::from_i64(&[0, 0, 1])));
        let r = is_singular(&cubic("x*y*z"));
        assert_eq!(r.witness, Some(ProjPoint::from_i64(&[1, 0, 0])));
        // nodal cubic: node at (0:0:1)
        let r = is_singular(&cubic("x^2*(x-z)+y^2*z"));
        assert_eq!(r.witness, Some(ProjPoint::from_i64(&[0, 0, 1])));
    }

    #[test]
    fn linear_factor_examples() {
        assert_eq!(linear_factor(&cubic("z*(x^2+y*z)")), LinearFactor::Rational { form: vec![q(0), q(0), q(1)] });
        assert_eq!(linear_factor(&cubic("x^3+y^3+z^3")), LinearFactor::None);
        assert_eq!(linear_factor(&cubic("x^2*y")), LinearFactor::Rational { form: vec![q(1), q(0), q(0)] });
        assert_eq!(
            linear_factor(&cubic("x^3+y^3+z^3-3*x*y*z")),
            LinearFactor::Rational { form: vec![q(1), q(1), q(1)] }
        );
        assert!(matches!(linear_factor(&cubic("x^3-2*y^3+x*y*z")), LinearFactor::None));
    }

    #[test]
    fn irrational_factors() {
        // three conjugate lines through (0:0:1)
        assert!(matches!(linear_factor(&cubic("x^3-2*y^3")), LinearFactor::Irrational { .. }));
        // only z is rational; x +- sqrt(2) y are not
        assert_eq!(linear_factor(&cubic("(x^2-2*y^2)*z")), LinearFactor::Rational { form: vec![q(0), q(0), q(1)] });
        assert_eq!(
            linear_factor(&cubic("(x-y)*(x^2+x*y+2*y^2)")),
            LinearFactor::Rational { form: vec![q(1), q(-1), q(0)] }
        );
    }

    #[test]
    fn flexes_of_the_cusp() {
        // the only flex of x^3 + y^2 z is (0:1:0), with tangent z = 0
        assert_eq!(rational_flexes(&cubic("x^3+y^2*z")), vec![qvec([0, 1, 0])]);
        // Fermat cubic: the three rational flexes on x + y = 0 etc.
        let fl = rational_flexes(&cubic("x^3+y^3+z^3"));
        assert_eq!(fl.len(), 3);
        assert!(fl.contains(&qvec([1, -1, 0])));
    }

    #[test]
    fn conic_quotient() {
        let f = cubic("x^3+y^3+z^3-3*x*y*z");
        let c = quotient_conic(&f, &[q(1), q(1), q(1)]).unwrap();
        assert!(conic_det(&c).is_zero());
        let f = cubic("z*(x^2+y^2+z^2)");
        let c = quotient_conic(&f, &[q(0), q(0), q(1)]).unwrap();
        assert!(!conic_det(&c).is_zero());
    }
}
