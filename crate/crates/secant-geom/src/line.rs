use crate::witness::{in_line, line_coords, proportional, VarietyPoint};
use apolar_core::decomp::{power_coeffs, BoundKind, StructuredDecomposition, Summand};
use apolar_core::matrix::{exact_solve, kron_vec, Matrix, Solution};
use apolar_core::{Error, ProjPoint, Result, Q};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

fn det2(u: &[Q; 2], v: &[Q; 2]) -> Q {
    &u[0] * &v[1] - &u[1] * &v[0]
}

/// Cross-ratio [a1, p][a2, a3] / ([a1, a3][a2, p]) of four points on a
/// line, where [u, v] is the determinant in any pair of line coordinates.
pub fn cross_ratio(a1: &[Q], a2: &[Q], a3: &[Q], p: &[Q]) -> Result<Q> {
    if proportional(a1, a2) {
        return Err(Error::pre("the first two points coincide"));
    }
    let e1 = [Q::one(), Q::zero()];
    let e2 = [Q::zero(), Q::one()];
    let c3 = line_coords(a1, a2, a3)?;
    let cp = line_coords(a1, a2, p)?;
    let den = det2(&e1, &c3) * det2(&e2, &cp);
    if den.is_zero() {
        return Err(Error::pre("cross-ratio undefined: a3 = a1 or p = a2"));
    }
    Ok(det2(&e1, &cp) * det2(&e2, &c3) / den)
}

fn tensor_power(v: &[Q], r: usize) -> Vec<Q> {
    (0..r).fold(vec![Q::one()], |acc, _| kron_vec(&acc, v))
}

/// `p^(x)r = sum c_i z_i^(x)r` for r + 1 distinct points z_i on a line
/// through p.
pub fn power_decomposition_on_line(
    points: &[VarietyPoint],
    p: &ProjPoint,
    r: usize,
) -> Result<StructuredDecomposition> {
    if r == 0 {
        return Err(Error::pre("tensor power must be at least 1"));
    }
    if points.len() != r + 1 {
        return Err(Error::pre(format!("need exactly {} points on the line, got {}", r + 1, points.len())));
    }
    for (i, a) in points.iter().enumerate() {
        if a.coords().len() != p.coords().len() {
            return Err(Error::pre("points live in different spaces"));
        }
        if a.point == *p {
            return Err(Error::pre(format!("p equals the point {}", a.point)));
        }
        for b in &points[..i] {
            if a.point == b.point {
                return Err(Error::pre(format!("repeated point {}", a.point)));
            }
        }
    }
    let (u, v) = (points[0].coords(), points[1].coords());
    for a in points.iter().map(VarietyPoint::coords).chain([p.coords()]) {
        if !in_line(u, v, a) {
            return Err(Error::pre("points are not collinear"));
        }
    }
    // solve in Sym^r of the line, coordinates s^(r-k) t^k
    let cols: Vec<Vec<Q>> = points
        .iter()
        .map(|a| line_coords(u, v, a.coords()).map(|st| power_coeffs(&st, r as u32)))
        .collect::<Result<_>>()?;
    let rhs = power_coeffs(&line_coords(u, v, p.coords())?, r as u32);
    let Solution::Unique(c) = exact_solve(&Matrix::from_cols(&cols), &rhs) else {
        return Err(Error::Inconsistent("power system on the line is singular".into()));
    };
    let summands = c.into_iter().zip(points).map(|(ci, a)| Summand::new(ci, vec![a.leaf(); r])).collect();
    StructuredDecomposition::build(
        format!("{p}^⊗{r}"),
        vec![p.coords().len(); r],
        tensor_power(p.coords(), r),
        BoundKind::Rank,
        summands,
        vec![format!("{} points on a line through p", r + 1)],
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Rank2Verdict {
    /// Equal cross-ratios: the projectivity a_j -> b_j sends p1 to p2 and
    /// p1 (x) p2 has rank 3.
    Rank3Certified {
        #[serde(with = "apolar_core::rational::serde_q")]
        cross_ratio: Q,
        decomposition: StructuredDecomposition,
    },
    /// Nothing certified. Rank 4 would need the absence of any suitable
    /// multisecant pair, which these data cannot show.
    NoCertificate {
        #[serde(with = "apolar_core::rational::serde_q::opt")]
        cross_ratio_a: Option<Q>,
        #[serde(with = "apolar_core::rational::serde_q::opt")]
        cross_ratio_b: Option<Q>,
        reason: String,
    },
}

/// Two secant lines with their points of the variety and a point on each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecantPair {
    pub a1: VarietyPoint,
    pub a2: VarietyPoint,
    pub p: ProjPoint,
}

impl SecantPair {
    fn validate(&self, which: &str) -> Result<()> {
        let (a1, a2, p) = (self.a1.coords(), self.a2.coords(), self.p.coords());
        if proportional(a1, a2) {
            return Err(Error::pre(format!("{which}: the two points coincide")));
        }
        if !in_line(a1, a2, p) {
            return Err(Error::pre(format!("{which}: p is not on the secant line")));
        }
        if self.p == self.a1.point || self.p == self.a2.point {
            return Err(Error::pre(format!("{which}: p is a point of the variety, so its rank is 1")));
        }
        Ok(())
    }
}

/// Decide whether p1 (x) p2 has rank 3 using third points a3, b3 of the
/// variety on the two lines.
pub fn rank2_product_decision(
    first: &SecantPair,
    second: &SecantPair,
    witnesses: Option<(&VarietyPoint, &VarietyPoint)>,
) -> Result<Rank2Verdict> {
    first.validate("first line")?;
    second.validate("second line")?;
    let Some((a3, b3)) = witnesses else {
        return Ok(Rank2Verdict::NoCertificate {
            cross_ratio_a: None,
            cross_ratio_b: None,
            reason: "no third points supplied".into(),
        });
    };
    for (pair, w, which) in [(first, a3, "a3"), (second, b3, "b3")] {
        if !in_line(pair.a1.coords(), pair.a2.coords(), w.coords()) {
            return Err(Error::pre(format!("{which} is not on its line")));
        }
        if w.point == pair.a1.point || w.point == pair.a2.point {
            return Err(Error::pre(format!("{which} repeats a point of the line")));
        }
    }
    let ca = cross_ratio(first.a1.coords(), first.a2.coords(), a3.coords(), first.p.coords())?;
    let cb = cross_ratio(second.a1.coords(), second.a2.coords(), b3.coords(), second.p.coords())?;
    if ca != cb {
        return Ok(Rank2Verdict::NoCertificate {
            cross_ratio_a: Some(ca),
            cross_ratio_b: Some(cb),
            reason: "cross-ratios differ, so these triples do not carry p1 to p2".into(),
        });
    }
    let pairs = [(&first.a1, &second.a1), (&first.a2, &second.a2), (a3, b3)];
    let cols: Vec<Vec<Q>> = pairs.iter().map(|(a, b)| kron_vec(a.coords(), b.coords())).collect();
    let target = kron_vec(first.p.coords(), second.p.coords());
    let Solution::Unique(c) = exact_solve(&Matrix::from_cols(&cols), &target) else {
        return Err(Error::Inconsistent("equal cross-ratios but p1 (x) p2 is not in the span".into()));
    };
    let summands = c.into_iter().zip(pairs).map(|(ci, (a, b))| Summand::new(ci, vec![a.leaf(), b.leaf()])).collect();
    let decomposition = StructuredDecomposition::build(
        format!("{}⊗{}", first.p, second.p),
        vec![first.p.coords().len(), second.p.coords().len()],
        target,
        BoundKind::Rank,
        summands,
        vec![format!("equal cross-ratio {}", apolar_core::rational::fmt_q(&ca))],
    )?;
    Ok(Rank2Verdict::Rank3Certified { cross_ratio: ca, decomposition })
}
