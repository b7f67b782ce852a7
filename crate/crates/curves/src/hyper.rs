//! Secant hypersurfaces and their multiplicity along sampled lines.

use apolar_core::rational::{random_q, serde_q};
use apolar_core::upoly::UPoly;
use apolar_core::{poly::restrict_to_line_upoly, Error, Grading, LineParam, Poly, ProjPoint, Result, Q};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Bound on numerators and denominators of sampled line directions.
pub const DIRECTION_HEIGHT: i64 = 100;

/// A homogeneous polynomial with a short description of what it cuts out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawHypersurface", into = "RawHypersurface")]
pub struct HypersurfacePoly {
    poly: Poly,
    degree: u32,
    pub role: String,
}

#[derive(Serialize, Deserialize)]
struct RawHypersurface {
    vars: Vec<String>,
    poly: String,
    role: String,
}

impl TryFrom<RawHypersurface> for HypersurfacePoly {
    type Error = Error;
    fn try_from(r: RawHypersurface) -> Result<Self> {
        let vars: Vec<&str> = r.vars.iter().map(String::as_str).collect();
        HypersurfacePoly::new(Poly::parse_in(&r.poly, &vars)?, r.role)
    }
}

impl From<HypersurfacePoly> for RawHypersurface {
    fn from(h: HypersurfacePoly) -> Self {
        RawHypersurface { vars: h.poly.vars().to_vec(), poly: h.poly.to_string(), role: h.role }
    }
}

impl HypersurfacePoly {
    pub fn new(poly: Poly, role: impl Into<String>) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::pre("the zero polynomial defines no hypersurface"));
        }
        if poly.grading() != Grading::Single || !poly.is_homogeneous() {
            return Err(Error::pre("a hypersurface needs a homogeneous polynomial"));
        }
        let hi = poly.total_degree().expect("nonzero");
        if hi == 0 {
            return Err(Error::pre("a nonzero constant defines no hypersurface"));
        }
        Ok(HypersurfacePoly { poly, degree: hi, role: role.into() })
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }
}

fn det_poly(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = m[0][0].zero_like();
    for j in 0..n {
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = m[0][j].mul(&det_poly(&minor));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// The (k+1) x (k+1) Hankel determinant det(a_{i+j}) on P^{2k}.
pub fn rnc_secant_determinant(k: usize) -> Result<HypersurfacePoly> {
    if !(1..=3).contains(&k) {
        return Err(Error::pre(format!("k = {k} is outside the supported range 1..=3")));
    }
    let names: Vec<String> = (0..=2 * k).map(|i| format!("a{i}")).collect();
    let vars: Vec<&str> = names.iter().map(String::as_str).collect();
    let m: Vec<Vec<Poly>> = (0..=k).map(|i| (0..=k).map(|j| Poly::var(&vars, i + j)).collect()).collect();
    HypersurfacePoly::new(det_poly(&m), format!("secant variety of {k}-chords of the degree-{} normal curve", 2 * k))
}

/// One sampled line z + t v.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineTrial {
    #[serde(with = "serde_q::vec")]
    pub direction: Vec<Q>,
    /// Vanishing order at t = 0; None when the line lies in the hypersurface.
    pub order: Option<usize>,
    /// Distinct further intersections, counting t = infinity.
    pub further_points: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityReport {
    pub degree: u32,
    /// Minimum vanishing order over the sampled lines.
    pub multiplicity: usize,
    pub gap: i64,
    pub multidrop: Option<LineTrial>,
    pub seed: u64,
    pub trials: Vec<LineTrial>,
    /// Running minimum after each trial; never increases.
    pub estimates: Vec<usize>,
}

impl MultiplicityReport {
    pub fn note(&self) -> String {
        format!("estimate from {} lines, monotone non-increasing in the number of lines", self.trials.len())
    }
}

/// Restricts `f` to `trials` seeded random lines through `z` and reads the
/// vanishing order at `z` and the number of further intersection points.
pub fn multiplicity_gap(f: &HypersurfacePoly, z: &ProjPoint, trials: usize, seed: u64) -> Result<MultiplicityReport> {
    let zc = z.coords();
    if zc.len() != f.poly.nvars() {
        return Err(Error::pre("point and hypersurface live in different spaces"));
    }
    if !f.poly.eval(zc).is_zero() {
        return Err(Error::pre(format!("the point {z} is not on the hypersurface")));
    }
    if trials == 0 {
        return Err(Error::pre("at least one trial is needed"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut log = Vec::with_capacity(trials);
    let mut estimates = Vec::with_capacity(trials);
    let mut best: Option<usize> = None;
    let mut multidrop = None;
    while log.len() < trials {
        let v: Vec<Q> = (0..zc.len()).map(|_| random_q(&mut rng, DIRECTION_HEIGHT)).collect();
        let Ok(dir) = ProjPoint::new(v.clone()) else { continue };
        let Ok(line) = LineParam::new(z.clone(), dir) else { continue };
        let g = restrict_to_line_upoly(&f.poly, &line)?;
        let trial = if g.is_zero() {
            LineTrial { direction: line.direction.coords().to_vec(), order: None, further_points: 0 }
        } else {
            let k = g.order_at_zero().expect("nonzero");
            let rest = UPoly::new(g.coeffs()[k..].to_vec());
            let finite = rest.squarefree_part().degree().unwrap_or(0);
            let at_inf = usize::from(g.degree().unwrap_or(0) < f.degree as usize);
            LineTrial { direction: line.direction.coords().to_vec(), order: Some(k), further_points: finite + at_inf }
        };
        if let Some(k) = trial.order {
            best = Some(best.map_or(k, |b| b.min(k)));
            if trial.further_points >= 2 && multidrop.is_none() {
                multidrop = Some(trial.clone());
            }
        }
        log.push(trial);
        estimates.push(best.unwrap_or(usize::MAX));
    }
    let Some(m) = best else {
        return Err(Error::inconclusive("every sampled line lies in the hypersurface"));
    };
    Ok(MultiplicityReport {
        degree: f.degree,
        multiplicity: m,
        gap: f.degree as i64 - m as i64,
        multidrop,
        seed,
        trials: log,
        estimates,
    })
}
