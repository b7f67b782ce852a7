//! Hilbert functions of bigraded monomial ideals in k[x1, y1; x2, y2] and
//! the lower bound they give for products of binary monomials.

use apolar_core::{Error, Result};
use serde::{Deserialize, Serialize};

/// Variable order: x1, y1 (bidegree (1,0)), x2, y2 (bidegree (0,1)).
pub const HF_VARS: [&str; 4] = ["x1", "y1", "x2", "y2"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigradedIdeal {
    pub generators: Vec<[u32; 4]>,
}

impl BigradedIdeal {
    pub fn new(generators: Vec<[u32; 4]>) -> Self {
        BigradedIdeal { generators }
    }

    /// The apolar ideal (x1^(a1+1), y1^(b1+1), x2^(a2+1), y2^(b2+1)) of
    /// x1^a1 y1^b1 (x) x2^a2 y2^b2.
    pub fn of_monomial_product(a1: u32, b1: u32, a2: u32, b2: u32) -> Self {
        Self::new(vec![[a1 + 1, 0, 0, 0], [0, b1 + 1, 0, 0], [0, 0, a2 + 1, 0], [0, 0, 0, b2 + 1]])
    }

    pub fn contains(&self, e: [u32; 4]) -> bool {
        self.generators.iter().any(|g| g.iter().zip(&e).all(|(a, b)| a <= b))
    }

    /// The colon ideal I : v for the variable with index `v`.
    pub fn colon_variable(&self, v: usize) -> Self {
        let generators = self
            .generators
            .iter()
            .map(|g| {
                let mut g = *g;
                g[v] = g[v].saturating_sub(1);
                g
            })
            .collect();
        Self::new(generators)
    }

    pub fn add_variable(&self, v: usize) -> Self {
        let mut gens = self.generators.clone();
        let mut e = [0; 4];
        e[v] = 1;
        gens.push(e);
        Self::new(gens)
    }

    /// Largest k with HF(k, j) possibly nonzero, when the first factor is
    /// Artinian (pure powers of x1 and y1 among the generators).
    fn first_factor_bound(&self) -> Option<u32> {
        let px = self.generators.iter().filter(|g| g[1] == 0 && g[2] == 0 && g[3] == 0).map(|g| g[0]).min()?;
        let py = self.generators.iter().filter(|g| g[0] == 0 && g[2] == 0 && g[3] == 0).map(|g| g[1]).min()?;
        Some((px + py).saturating_sub(2))
    }
}

/// Number of monomials of bidegree (i, j) outside the ideal.
pub fn bigraded_hf(ideal: &BigradedIdeal, (i, j): (u32, u32)) -> usize {
    let mut n = 0;
    for p in 0..=i {
        for r in 0..=j {
            if !ideal.contains([p, i - p, r, j - r]) {
                n += 1;
            }
        }
    }
    n
}

/// sum over k >= 0 of HF(k, j); needs the first factor to be Artinian.
pub fn hf_row_sum(ideal: &BigradedIdeal, j: u32) -> Result<usize> {
    let top = ideal
        .first_factor_bound()
        .ok_or_else(|| Error::pre("the row sum is infinite unless x1 and y1 have pure powers in the ideal"))?;
    Ok((0..=top).map(|k| bigraded_hf(ideal, (k, j))).sum())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialBound {
    /// Exponents after normalization to a_i <= b_i.
    pub exponents: [u32; 4],
    pub value: usize,
    /// The same value recomputed from Hilbert function row sums.
    pub hf_value: usize,
    pub notes: Vec<String>,
}

/// max{(a1+1)(b2+1), (a2+1)(b1+1)}, a lower bound on the rank of
/// x^a1 y^b1 (x) x^a2 y^b2 when both a_i >= 1. Exponents with a_i > b_i are
/// swapped, which amounts to exchanging x and y in that factor. If some
/// a_i = 0 that factor is a power and the exact rank is returned instead.
pub fn monomial_product_bound(a1: u32, b1: u32, a2: u32, b2: u32) -> MonomialBound {
    let mut notes = Vec::new();
    let (a1, b1) = if a1 > b1 {
        notes.push("swapped x and y in the first factor".to_string());
        (b1, a1)
    } else {
        (a1, b1)
    };
    let (a2, b2) = if a2 > b2 {
        notes.push("swapped x and y in the second factor".to_string());
        (b2, a2)
    } else {
        (a2, b2)
    };
    let value = if a1 == 0 || a2 == 0 {
        // a power factor: ranks multiply, and the closed form overshoots
        notes.push("a factor is a power; the value is the product of the factor ranks".to_string());
        (monomial_rank(a1, b1) * monomial_rank(a2, b2)) as usize
    } else {
        ((a1 + 1) * (b2 + 1)).max((a2 + 1) * (b1 + 1)) as usize
    };
    MonomialBound { exponents: [a1, b1, a2, b2], value, hf_value: hf_monomial_bound(a1, b1, a2, b2), notes }
}

fn monomial_rank(a: u32, b: u32) -> u32 {
    if a == 0 {
        1
    } else {
        b + 1
    }
}

/// (x1, y1^(b1+1), x2^(a2+1), y2^(b2+1)): the ideal whose row sums drive
/// the bound. It equals (I : x1) + (x1) when a1 >= 1.
pub fn reduction_ideal(b1: u32, a2: u32, b2: u32) -> BigradedIdeal {
    BigradedIdeal::new(vec![[1, 0, 0, 0], [0, b1 + 1, 0, 0], [0, 0, a2 + 1, 0], [0, 0, 0, b2 + 1]])
}

/// Row sum at j = a2 of J = (I : x1) + (x1), and the same with the factors
/// exchanged; the larger of the two.
pub fn hf_monomial_bound(a1: u32, b1: u32, a2: u32, b2: u32) -> usize {
    let one = |a1, b1, a2, b2| {
        let j = BigradedIdeal::of_monomial_product(a1, b1, a2, b2).colon_variable(0).add_variable(0);
        hf_row_sum(&j, a2).expect("Artinian")
    };
    one(a1, b1, a2, b2).max(one(a2, b2, a1, b1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(monomial_product_bound(1, 2, 1, 2).value, 6);
        assert_eq!(monomial_product_bound(1, 1, 1, 1).value, 4);
        assert_eq!(monomial_product_bound(2, 2, 2, 2).value, 9);
        let m = monomial_product_bound(2, 1, 1, 2);
        assert_eq!(m.exponents, [1, 2, 1, 2]);
        assert_eq!(m.notes.len(), 1);
    }

    #[test]
    fn hilbert_function() {
        let i = BigradedIdeal::new(vec![[1, 0, 0, 0], [0, 3, 0, 0], [0, 0, 2, 0], [0, 0, 0, 3]]);
        assert_eq!(hf_row_sum(&i, 1).unwrap(), 6);
        assert_eq!(bigraded_hf(&i, (0, 0)), 1);
        assert_eq!(bigraded_hf(&i, (5, 9)), 0);
        assert!(hf_row_sum(&BigradedIdeal::new(vec![[1, 0, 0, 0]]), 0).is_err());
    }
}
