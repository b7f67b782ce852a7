//! Multivariate polynomials over Q keyed by exponent vectors.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::point::LineParam;
use crate::rational::Q;
use crate::upoly::{UPoly, YPoly};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Grading {
    Single,
    /// The first `split` variables have degree (1,0), the rest (0,1).
    Bigraded {
        split: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    vars: Vec<String>,
    grading: Grading,
    terms: BTreeMap<Vec<u32>, Q>,
}

impl Poly {
    pub fn zero(vars: &[&str]) -> Self {
        Self::zero_owned(vars.iter().map(|s| s.to_string()).collect())
    }

    pub fn zero_owned(vars: Vec<String>) -> Self {
        Poly { vars, grading: Grading::Single, terms: BTreeMap::new() }
    }

    pub fn with_grading(mut self, g: Grading) -> Self {
        self.grading = g;
        self
    }

    pub fn constant(vars: &[&str], c: Q) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn var(vars: &[&str], i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, Q::one())
    }

    pub fn monomial(vars: &[&str], exps: Vec<u32>, c: Q) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(exps, c);
        p
    }

    /// Same variables and grading, no terms.
    pub fn zero_like(&self) -> Self {
        Poly { vars: self.vars.clone(), grading: self.grading, terms: BTreeMap::new() }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Q {
        self.terms.get(exps).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Add `c * monomial`, dropping the entry if it cancels.
    pub fn add_term(&mut self, exps: Vec<u32>, c: Q) {
        assert_eq!(exps.len(), self.vars.len(), "exponent vector length");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_compat(&self, o: &Self) {
        assert_eq!(self.vars, o.vars, "polynomials over different variables");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_compat(o);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, k: &Q) -> Self {
        let mut out = self.zero_like();
        if k.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect();
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check_compat(o);
        let mut out = self.zero_like();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one_like(self);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    fn one_like(p: &Self) -> Self {
        let mut out = p.zero_like();
        out.add_term(vec![0; p.nvars()], Q::one());
        out
    }

    /// Largest total degree; the zero polynomial has none.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    fn degree_vector(&self, e: &[u32]) -> (u32, u32) {
        match self.grading {
            Grading::Single => (e.iter().sum(), 0),
            Grading::Bigraded { split } => (e[..split].iter().sum(), e[split..].iter().sum()),
        }
    }

    /// The common (multi)degree of all terms, if there is one. For the
    /// single grading the second entry is 0.
    pub fn homogeneous_degree(&self) -> Option<(u32, u32)> {
        let mut it = self.terms.keys().map(|e| self.degree_vector(e));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.add_term(e2, c * Q::from_integer(e[i].into()));
            }
        }
        out
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        assert_eq!(x.len(), self.nvars(), "point dimension");
        let mut s = Q::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    m *= num_traits::pow(xi.clone(), k as usize);
                }
            }
            s += m;
        }
        s
    }

    /// Substitute polynomial `subs[i]` for variable `i`. The result lives in
    /// the variables of the substitutes.
    pub fn compose(&self, subs: &[Poly]) -> Poly {
        assert_eq!(subs.len(), self.nvars(), "one substitute per variable");
        let target = subs.first().map(|p| p.zero_like()).expect("at least one variable");
        let mut cache: Vec<Vec<Poly>> = subs.iter().map(|s| vec![Self::one_like(s)]).collect();
        let mut out = target;
        for (e, c) in &self.terms {
            let mut m = Self::one_like(&out).scale(c);
            for (i, &k) in e.iter().enumerate() {
                while cache[i].len() <= k as usize {
                    let next = cache[i].last().unwrap().mul(&subs[i]);
                    cache[i].push(next);
                }
                if k > 0 {
                    m = m.mul(&cache[i][k as usize]);
                }
            }
            out = out.add(&m);
        }
        out
    }

    /// F(M x): variable i becomes sum_j M[i][j] x_j.
    pub fn linear_change(&self, m: &Matrix) -> Poly {
        let n = self.nvars();
        assert!(m.rows == n && m.cols == n, "change of variables must be square");
        let subs: Vec<Poly> = (0..n)
            .map(|i| {
                let mut p = self.zero_like();
                for j in 0..n {
                    let mut e = vec![0; n];
                    e[j] = 1;
                    p.add_term(e, m.get(i, j).clone());
                }
                p
            })
            .collect();
        self.compose(&subs).with_grading(self.grading)
    }

    /// View a one-variable polynomial as a [`UPoly`].
    pub fn to_upoly(&self) -> Result<UPoly> {
        if self.nvars() != 1 {
            return Err(Error::pre("expected a polynomial in one variable"));
        }
        let d = self.total_degree().unwrap_or(0) as usize;
        let mut c = vec![Q::zero(); d + 1];
        for (e, v) in &self.terms {
            c[e[0] as usize] = v.clone();
        }
        Ok(UPoly::new(c))
    }

    pub fn from_upoly(var: &str, p: &UPoly) -> Poly {
        let mut out = Poly::zero(&[var]);
        for (i, c) in p.coeffs().iter().enumerate() {
            out.add_term(vec![i as u32], c.clone());
        }
        out
    }

    /// Coefficients of a binary form of degree `d` in the basis
    /// x^d, x^(d-1) y, ..., y^d.
    pub fn to_binary_coeffs(&self, d: u32) -> Result<Vec<Q>> {
        if self.nvars() != 2 {
            return Err(Error::pre("expected a form in two variables"));
        }
        let mut c = vec![Q::zero(); d as usize + 1];
        for (e, v) in &self.terms {
            if e[0] + e[1] != d {
                return Err(Error::pre(format!("not homogeneous of degree {d}")));
            }
            c[e[1] as usize] = v.clone();
        }
        Ok(c)
    }

    pub fn from_binary_coeffs(vars: &[&str], c: &[Q]) -> Poly {
        let d = c.len() as u32 - 1;
        let mut out = Poly::zero(vars);
        for (i, v) in c.iter().enumerate() {
            out.add_term(vec![d - i as u32, i as u32], v.clone());
        }
        out
    }

    /// A two-variable polynomial as a polynomial in variable `y` whose
    /// coefficients are univariate in variable `x`.
    pub fn to_ypoly(&self, x: usize, y: usize) -> YPoly {
        assert_eq!(self.nvars(), 2, "expected two variables");
        let dy = self.degree_in(y).unwrap_or(0) as usize;
        let mut rows: Vec<Vec<Q>> = vec![Vec::new(); dy + 1];
        for (e, c) in &self.terms {
            let (i, k) = (e[y] as usize, e[x] as usize);
            if rows[i].len() <= k {
                rows[i].resize(k + 1, Q::zero());
            }
            rows[i][k] = c.clone();
        }
        rows.into_iter().map(UPoly::new).collect()
    }

    /// Drop variable `i`, keeping only terms free of it (i.e. set it to 0).
    pub fn set_zero(&self, i: usize) -> Poly {
        let vars: Vec<String> = self.vars.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.clone()).collect();
        let mut out = Poly::zero_owned(vars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                let mut e2 = e.clone();
                e2.remove(i);
                out.add_term(e2, c.clone());
            }
        }
        out
    }

    /// Set variable `i` to 1 and drop it.
    pub fn dehomogenize(&self, i: usize) -> Poly {
        let vars: Vec<String> = self.vars.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.clone()).collect();
        let mut out = Poly::zero_owned(vars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2.remove(i);
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Terms sorted in canonical graded-lex order (higher degree first,
    /// then lexicographically larger exponent vectors first).
    pub fn sorted_terms(&self) -> Vec<(&Vec<u32>, &Q)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        v
    }

    pub fn parse(text: &str) -> Result<Poly> {
        crate::parse::parse_poly(text, None)
    }

    pub fn parse_in(text: &str, vars: &[&str]) -> Result<Poly> {
        crate::parse::parse_poly(text, Some(vars))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::print_poly(self))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeReport {
    pub squarefree: bool,
    pub squarefree_part: Poly,
}

/// Squarefree test for a univariate polynomial or a binary form.
///
/// A binary form is squarefree iff its dehomogenization is and the
/// variable set to 1 divides it at most once; this is the gcd-with-both-
/// partials criterion in affine form.
pub fn squarefree_test(p: &Poly) -> Result<SquarefreeReport> {
    if p.is_zero() {
        return Err(Error::pre("squarefree test of the zero polynomial"));
    }
    match p.nvars() {
        1 => {
            let u = p.to_upoly()?;
            let part = u.squarefree_part();
            Ok(SquarefreeReport {
                squarefree: u.is_squarefree(),
                squarefree_part: Poly::from_upoly(&p.vars()[0], &part),
            })
        }
        2 => {
            let (d, _) = p
                .homogeneous_degree()
                .filter(|_| p.grading() == Grading::Single)
                .ok_or_else(|| Error::pre("binary input must be homogeneous"))?;
            let c = p.to_binary_coeffs(d)?;
            let (sf, part) = binary_squarefree(&c);
            let names: Vec<&str> = p.vars().iter().map(|s| s.as_str()).collect();
            Ok(SquarefreeReport { squarefree: sf, squarefree_part: Poly::from_binary_coeffs(&names, &part) })
        }
        _ => Err(Error::pre("squarefree test needs one or two variables")),
    }
}

/// Squarefree test on binary-form coefficients (x^d, ..., y^d), returning
/// the squarefree part in the same basis.
pub fn binary_squarefree(c: &[Q]) -> (bool, Vec<Q>) {
    let d = c.len() - 1;
    // multiplicity of the factor y
    let my = c.iter().position(|x| !x.is_zero()).expect("nonzero form");
    // f(x, 1) = sum c_i x^(d-i)
    let aff = UPoly::new((0..=d).map(|k| c[d - k].clone()).collect());
    let sf_aff = aff.is_squarefree();
    let part_aff = aff.squarefree_part();
    let ypow = usize::from(my > 0);
    let deg = part_aff.degree().unwrap_or(0) + ypow;
    // homogenize: x^k -> x^k y^(deg-k)
    let mut out = vec![Q::zero(); deg + 1];
    for (k, v) in part_aff.coeffs().iter().enumerate() {
        out[deg - k] = v.clone();
    }
    (sf_aff && my <= 1, out)
}

/// F(base + t * direction), as a polynomial in `t`.
pub fn restrict_to_line(f: &Poly, line: &LineParam) -> Result<Poly> {
    Ok(Poly::from_upoly("t", &restrict_to_line_upoly(f, line)?))
}

pub fn restrict_to_line_upoly(f: &Poly, line: &LineParam) -> Result<UPoly> {
    if !f.is_homogeneous() {
        return Err(Error::pre("restriction needs a homogeneous polynomial"));
    }
    let b = line.base.coords();
    let v = line.direction.coords();
    if b.len() != f.nvars() {
        return Err(Error::pre("line and polynomial live in different spaces"));
    }
    let subs: Vec<UPoly> = b.iter().zip(v).map(|(bi, vi)| UPoly::new(vec![bi.clone(), vi.clone()])).collect();
    let mut powers: Vec<Vec<UPoly>> = subs.iter().map(|_| vec![UPoly::one()]).collect();
    let mut out = UPoly::zero();
    for (e, c) in f.terms() {
        let mut m = UPoly::constant(c.clone());
        for (i, &k) in e.iter().enumerate() {
            while powers[i].len() <= k as usize {
                let next = powers[i].last().unwrap().mul(&subs[i]);
                powers[i].push(next);
            }
            if k > 0 {
                m = m.mul(&powers[i][k as usize]);
            }
        }
        out = out.add(&m);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::ProjPoint;
    use crate::rational::q;

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn squarefree_examples() {
        let r = squarefree_test(&p("t^2")).unwrap();
        assert!(!r.squarefree);
        assert_eq!(r.squarefree_part, p("t"));
        assert!(squarefree_test(&p("t^3-t")).unwrap().squarefree);
        assert!(squarefree_test(&Poly::parse_in("s^3+t^3", &["s", "t"]).unwrap()).unwrap().squarefree);
        let r = squarefree_test(&p("x*y^2")).unwrap();
        assert!(!r.squarefree);
        assert_eq!(r.squarefree_part, p("x*y"));
        assert!(squarefree_test(&Poly::zero(&["t"])).is_err());
    }

    #[test]
    fn restriction_examples() {
        let line = LineParam::new(ProjPoint::from_i64(&[0, 1]), ProjPoint::from_i64(&[1, 0])).unwrap();
        assert_eq!(restrict_to_line(&Poly::parse_in("x", &["x", "y"]).unwrap(), &line).unwrap(), p("t"));
        let conic = Poly::parse_in("b^2-a*c", &["a", "b", "c"]).unwrap();
        let line = LineParam::new(ProjPoint::from_i64(&[1, 0, 0]), ProjPoint::from_i64(&[0, 0, 1])).unwrap();
        assert_eq!(restrict_to_line(&conic, &line).unwrap(), p("-t"));
        // the line a = b = 0 lies on the conic
        let line = LineParam::new(ProjPoint::from_i64(&[0, 0, 1]), ProjPoint::from_i64(&[1, 0, 0])).unwrap();
        let inside = Poly::parse_in("b^2-a*b", &["a", "b", "c"]).unwrap();
        assert!(restrict_to_line(&inside, &line).unwrap().is_zero());
    }

    #[test]
    fn change_of_variables() {
        let f = p("x^2-y");
        let m = Matrix::from_i64(&[&[1, 1], &[0, 2]]);
        // x -> x + y, y -> 2y
        assert_eq!(f.linear_change(&m), p("x^2+2*x*y+y^2-2*y"));
        assert_eq!(f.eval(&[q(3), q(2)]), q(7));
    }
}
