//! Dense univariate polynomials over Q, plus elimination helpers for
//! polynomials whose coefficients are themselves univariate.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::{lcm_denominators, q, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Coefficients from the constant term up; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    c: Vec<Q>,
}

impl UPoly {
    pub fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| q(x)).collect())
    }

    pub fn zero() -> Self {
        UPoly { c: vec![] }
    }

    pub fn constant(x: Q) -> Self {
        Self::new(vec![x])
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Self::new(vec![Q::zero(), Q::one()])
    }

    /// `t - a`.
    pub fn linear_root(a: &Q) -> Self {
        Self::new(vec![-a.clone(), Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.c.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> Q {
        self.c.last().cloned().unwrap_or_else(Q::zero)
    }

    /// Multiplicity of the root 0 (lowest nonzero index).
    pub fn order_at_zero(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn scale(&self, k: &Q) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        UPoly { c: self.c.iter().map(|x| x * k).collect() }
    }

    pub fn neg(&self) -> Self {
        UPoly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Q::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Q::zero(); k];
        c.extend(self.c.iter().cloned());
        UPoly { c }
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.c.iter().enumerate().skip(1).map(|(i, x)| x * q(i as i64)).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.c.len() - 1;
        let lc = d.lc();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quo = vec![Q::zero(); r.len() - dd];
        for k in (0..quo.len()).rev() {
            let coef = &r[k + dd] / &lc;
            if !coef.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    if !b.is_zero() {
                        r[k + j] -= &coef * b;
                    }
                }
            }
            quo[k] = coef;
        }
        r.truncate(dd);
        (Self::new(quo), Self::new(r))
    }

    /// Division known to be exact.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (quo, r) = self.divrem(d);
        if r.is_zero() {
            Ok(quo)
        } else {
            Err(Error::Inconsistent("polynomial division left a remainder".into()))
        }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lc = self.lc();
        self.scale(&(Q::one() / lc))
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.primitive_rational();
        }
        a.monic()
    }

    /// Rational multiple with coprime integer coefficients and positive
    /// leading coefficient. Keeps Euclid's remainders small.
    pub fn primitive_rational(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let ints = self.integer_coeffs();
        UPoly::new(ints.into_iter().map(Q::from_integer).collect())
    }

    /// Coprime integer coefficients, positive leading coefficient.
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        let l = lcm_denominators(&self.c);
        let ints: Vec<BigInt> = self.c.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            return ints;
        }
        let sign = if ints.last().is_some_and(|x| x.is_negative()) { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|x| x / &g * &sign).collect()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).is_constant()
    }

    /// p / gcd(p, p'), monic.
    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// Sturm chain with positive rescaling at every step.
    fn sturm_chain(&self) -> Vec<UPoly> {
        let mut chain = vec![self.primitive_rational(), self.derivative().primitive_rational()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[n - 2].divrem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            let r = r.neg();
            let lc = r.lc().abs();
            chain.push(r.scale(&(Q::one() / lc)));
        }
        chain
    }

    fn sign_changes(chain: &[UPoly], x: &Q) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for p in chain {
            let s = p.eval(x).cmp(&Q::zero());
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Cauchy bound: every real root lies strictly inside (-B, B).
    pub fn root_bound(&self) -> Q {
        let lc = self.lc().abs();
        let m = self.c[..self.c.len() - 1].iter().map(|x| x.abs() / &lc).max().unwrap_or_else(Q::zero);
        m + Q::one()
    }

    /// Disjoint half-open intervals (a, b], each holding exactly one real
    /// root of the squarefree part, in increasing order.
    pub fn isolate_real_roots(&self) -> Vec<(Q, Q)> {
        if self.is_constant() {
            return vec![];
        }
        let p = self.squarefree_part();
        let chain = p.sturm_chain();
        let b = p.root_bound();
        let mut out = Vec::new();
        let mut stack = vec![(-b.clone(), b)];
        while let Some((lo, hi)) = stack.pop() {
            let n = Self::sign_changes(&chain, &lo) - Self::sign_changes(&chain, &hi);
            match n {
                0 => {}
                1 => out.push((lo, hi)),
                _ => {
                    let mid = (&lo + &hi) / q(2);
                    stack.push((mid.clone(), hi));
                    stack.push((lo, mid));
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Shrink an isolating interval (a, b] of the squarefree part until its
    /// width is below `width`.
    pub fn refine_root(&self, iv: (Q, Q), width: &Q) -> (Q, Q) {
        let p = self.squarefree_part();
        let chain = p.sturm_chain();
        let (mut lo, mut hi) = iv;
        while &(&hi - &lo) >= width {
            let mid = (&lo + &hi) / q(2);
            let left = Self::sign_changes(&chain, &lo) - Self::sign_changes(&chain, &mid);
            if left == 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (lo, hi)
    }

    /// All distinct rational roots, increasing.
    ///
    /// A root p/q of the primitive integer form has q | a_n, and distinct
    /// such fractions are more than 1/a_n^2 apart, so the simplest fraction in
    /// a narrow isolating interval is the only candidate there.
    pub fn rational_roots(&self) -> Vec<Q> {
        if self.is_constant() {
            return vec![];
        }
        let mut out = Vec::new();
        let mut p = self.clone();
        if p.order_at_zero().unwrap_or(0) > 0 {
            out.push(Q::zero());
            let k = p.order_at_zero().unwrap();
            p = UPoly::new(p.c[k..].to_vec());
        }
        let sf = p.squarefree_part();
        if sf.is_constant() {
            return out;
        }
        let ints = sf.integer_coeffs();
        let an = ints.last().unwrap().abs();
        let width = Q::new(BigInt::one(), &an * &an * BigInt::from(2));
        for iv in sf.isolate_real_roots() {
            if sf.eval(&iv.1).is_zero() {
                out.push(iv.1.clone());
                continue;
            }
            let (lo, hi) = sf.refine_root(iv, &width);
            if sf.eval(&hi).is_zero() {
                out.push(hi);
                continue;
            }
            let cand = simplest_between(&lo, &hi);
            if sf.eval(&cand).is_zero() {
                out.push(cand);
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Lagrange interpolation through (x_i, y_i).
    pub fn interpolate(xs: &[Q], ys: &[Q]) -> Self {
        let mut acc = Self::zero();
        for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
            if yi.is_zero() {
                continue;
            }
            let mut basis = Self::one();
            let mut denom = Q::one();
            for (j, xj) in xs.iter().enumerate() {
                if i != j {
                    basis = basis.mul(&Self::linear_root(xj));
                    denom *= xi - xj;
                }
            }
            acc = acc.add(&basis.scale(&(yi / denom)));
        }
        acc
    }
}

/// Fraction with the smallest denominator in the closed interval [lo, hi].
pub fn simplest_between(lo: &Q, hi: &Q) -> Q {
    assert!(lo <= hi);
    if lo.is_positive() {
        let c = lo.ceil();
        if &c <= hi {
            return c;
        }
        let fl = lo.floor();
        let inner = simplest_between(&(Q::one() / (hi - &fl)), &(Q::one() / (lo - &fl)));
        fl + Q::one() / inner
    } else if hi.is_negative() {
        -simplest_between(&-hi, &-lo)
    } else {
        Q::zero()
    }
}

/// Determinant of the Sylvester matrix of `p` and `q`, coefficients ordered
/// from the top degree down.
pub fn univariate_resultant(p: &UPoly, q: &UPoly) -> Result<Q> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::pre("resultant of a zero polynomial"));
    }
    let m = p.degree().unwrap();
    let n = q.degree().unwrap();
    if m + n == 0 {
        return Ok(Q::one());
    }
    let size = m + n;
    let mut s = Matrix::zeros(size, size);
    for i in 0..n {
        for (k, a) in p.c.iter().rev().enumerate() {
            s.set(i, i + k, a.clone());
        }
    }
    for i in 0..m {
        for (k, b) in q.c.iter().rev().enumerate() {
            s.set(n + i, i + k, b.clone());
        }
    }
    Ok(s.det())
}

/// Determinant of a square matrix over Q[x] by fraction-free elimination.
pub fn det_poly_matrix(mut a: Vec<Vec<UPoly>>) -> UPoly {
    let n = a.len();
    if n == 0 {
        return UPoly::one();
    }
    let mut prev = UPoly::one();
    let mut sign = false;
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return UPoly::zero();
        };
        if p != c {
            a.swap(p, c);
            sign = !sign;
        }
        let (top, bottom) = a.split_at_mut(c + 1);
        let piv = &top[c];
        for row in bottom.iter_mut() {
            for j in c + 1..n {
                let num = piv[c].mul(&row[j]).sub(&row[c].mul(&piv[j]));
                row[j] = num.div_exact(&prev).expect("Bareiss division over Q[x] is exact");
            }
            row[c] = UPoly::zero();
        }
        prev = top[c][c].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

/// A polynomial in an eliminated variable `y` with coefficients in Q[x]:
/// entry `i` is the coefficient of `y^i`.
pub type YPoly = Vec<UPoly>;

pub fn ypoly_degree(p: &YPoly) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Res_y(p, q) as an element of Q[x], with `q` read at formal degree
/// `q_formal` (its top coefficients may vanish).
pub fn resultant_y(p: &YPoly, q: &YPoly, q_formal: usize) -> UPoly {
    let Some(m) = ypoly_degree(p) else {
        return UPoly::zero();
    };
    let n = q_formal;
    if m + n == 0 {
        return UPoly::one();
    }
    let size = m + n;
    let mut s = vec![vec![UPoly::zero(); size]; size];
    for i in 0..n {
        for k in 0..=m {
            s[i][i + k] = p[m - k].clone();
        }
    }
    for i in 0..m {
        for k in 0..=n {
            s[n + i][i + k] = q.get(n - k).cloned().unwrap_or_default();
        }
    }
    det_poly_matrix(s)
}

/// Eliminant of the system {a = 0, b_0 = 0, ..., b_k = 0} projected to x.
///
/// Requires the leading coefficient of `a` in y to be a nonzero constant.
/// Then Res_y(a, sum u^i b_i) = lc(a)^n prod_j (sum u^i b_i)(x, y_j), which
/// vanishes identically in u at x0 exactly when some root y_j of a(x0, y)
/// is a common root of every b_i. The gcd of the u-coefficients is therefore
/// an exact eliminant: no spurious roots.
pub fn exact_eliminant(a: &YPoly, bs: &[YPoly]) -> Result<UPoly> {
    let m = ypoly_degree(a).ok_or_else(|| Error::pre("eliminant of a zero polynomial"))?;
    if !a[m].is_constant() {
        return Err(Error::pre("leading coefficient in the eliminated variable is not constant"));
    }
    if bs.is_empty() {
        return Ok(UPoly::zero());
    }
    let formal = bs.iter().filter_map(ypoly_degree).max().unwrap_or(0);
    let du = m * (bs.len() - 1);
    let us: Vec<Q> = (0..=du as i64).map(q).collect();
    let vals: Vec<UPoly> = us
        .iter()
        .map(|u| {
            let mut comb: YPoly = vec![UPoly::zero(); formal + 1];
            let mut pw = Q::one();
            for b in bs {
                for (i, c) in b.iter().enumerate() {
                    comb[i] = comb[i].add(&c.scale(&pw));
                }
                pw *= u;
            }
            resultant_y(a, &comb, formal)
        })
        .collect();
    // u-coefficients: solve the Vandermonde system once, then combine.
    let vand = Matrix::from_rows(
        &us.iter().map(|u| (0..=du).map(|k| num_traits::pow(u.clone(), k)).collect()).collect::<Vec<_>>(),
    );
    let inv = vand.inverse().expect("distinct nodes");
    let mut g = UPoly::zero();
    for k in 0..=du {
        let mut coef = UPoly::zero();
        for (j, v) in vals.iter().enumerate() {
            let w = inv.get(k, j);
            if !w.is_zero() {
                coef = coef.add(&v.scale(w));
            }
        }
        g = g.gcd(&coef);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    #[test]
    fn resultant_examples() {
        let r = univariate_resultant(&UPoly::from_i64(&[-2, 1]), &UPoly::from_i64(&[-3, 1])).unwrap();
        assert_eq!(r, q(-1));
        let r = univariate_resultant(&UPoly::from_i64(&[-1, 0, 1]), &UPoly::from_i64(&[-1, 1])).unwrap();
        assert_eq!(r, q(0));
        let r = univariate_resultant(&UPoly::from_i64(&[0, 0, 1]), &UPoly::from_i64(&[-1, 1])).unwrap();
        assert_eq!(r, q(1));
        assert!(univariate_resultant(&UPoly::zero(), &UPoly::one()).is_err());
    }

    #[test]
    fn squarefree_examples() {
        let t2 = UPoly::from_i64(&[0, 0, 1]);
        assert!(!t2.is_squarefree());
        assert_eq!(t2.squarefree_part(), UPoly::t());
        assert!(UPoly::from_i64(&[0, -1, 0, 1]).is_squarefree());
    }

    #[test]
    fn rational_root_search() {
        // (2t - 3)(t + 5)(t^2 + 1)(3t)^2
        let p = UPoly::from_i64(&[-3, 2])
            .mul(&UPoly::from_i64(&[5, 1]))
            .mul(&UPoly::from_i64(&[1, 0, 1]))
            .mul(&UPoly::from_i64(&[0, 3]).pow(2));
        assert_eq!(p.rational_roots(), vec![q(-5), q(0), qf(3, 2)]);
        assert!(UPoly::from_i64(&[-2, 0, 1]).rational_roots().is_empty());
        assert_eq!(UPoly::from_i64(&[-2, 0, 1]).isolate_real_roots().len(), 2);
    }

    #[test]
    fn simplest_fraction() {
        assert_eq!(simplest_between(&qf(3, 10), &qf(4, 10)), qf(1, 3));
        assert_eq!(simplest_between(&qf(-4, 10), &qf(-3, 10)), qf(-1, 3));
        assert_eq!(simplest_between(&qf(-1, 10), &qf(4, 10)), q(0));
    }

    #[test]
    fn eliminant_detects_common_roots_only() {
        // a = y^2 - x, b = y - 1: common root needs x = 1.
        let a: YPoly = vec![UPoly::from_i64(&[0, -1]), UPoly::zero(), UPoly::one()];
        let b: YPoly = vec![UPoly::from_i64(&[-1]), UPoly::one()];
        let c: YPoly = vec![UPoly::from_i64(&[-1, 1])];
        let e = exact_eliminant(&a, &[b.clone(), c]).unwrap();
        assert_eq!(e, UPoly::from_i64(&[-1, 1]));
        // b and y + 1 share no root with a for the same x.
        let d: YPoly = vec![UPoly::one(), UPoly::one()];
        let e = exact_eliminant(&a, &[b, d]).unwrap();
        assert!(e.is_constant() && !e.is_zero());
    }
}
