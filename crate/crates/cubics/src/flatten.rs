use crate::cubic::TernaryCubic;
use apolar_core::decomp::monomials;
use apolar_core::matrix::Matrix;
use apolar_core::Q;

/// The map V* -> Sym^2 V; column a is the partial derivative in variable a,
/// rows in the basis x^2, xy, xz, y^2, yz, z^2.
pub fn cat1(f: &TernaryCubic) -> Matrix {
    let basis = monomials(3, 2);
    let cols: Vec<Vec<Q>> = f.gradient().iter().map(|g| basis.iter().map(|e| g.coefficient(e)).collect()).collect();
    Matrix::from_cols(&cols)
}

fn wedge_index(i: usize, j: usize) -> Option<(usize, bool)> {
    // basis e0^e1, e0^e2, e1^e2; the flag is true when the sign flips
    match (i.min(j), i.max(j)) {
        _ if i == j => None,
        (0, 1) => Some((0, i > j)),
        (0, 2) => Some((1, i > j)),
        (1, 2) => Some((2, i > j)),
        _ => unreachable!(),
    }
}

/// Koszul flattening V (x) V* -> Lambda^2 V (x) V.
///
/// Column `3i + a` is the image of e_i (x) d_a: first e_i (x) (d_a f), then
/// e_i (x) x_p x_q -> (e_i ^ e_p) (x) e_q + (e_i ^ e_q) (x) e_p. Row
/// `3w + b` is the basis vector (wedge w) (x) e_b with wedges ordered
/// e0^e1, e0^e2, e1^e2.
pub fn koszul_flattening(f: &TernaryCubic) -> Matrix {
    let mut m = Matrix::zeros(9, 9);
    let grad = f.gradient();
    for i in 0..3 {
        for (a, g) in grad.iter().enumerate() {
            for (e, c) in g.terms() {
                // e has total degree 2: split into the variables p <= q
                let mut vars = Vec::new();
                for (k, &n) in e.iter().enumerate() {
                    for _ in 0..n {
                        vars.push(k);
                    }
                }
                let (p, qv) = (vars[0], vars[1]);
                for (s, t) in [(p, qv), (qv, p)] {
                    if let Some((w, flip)) = wedge_index(i, s) {
                        let row = 3 * w + t;
                        let col = 3 * i + a;
                        let delta = if flip { -c.clone() } else { c.clone() };
                        let cur = m.get(row, col).clone();
                        m.set(row, col, cur + delta);
                    }
                }
            }
        }
    }
    m
}

pub fn koszul_rank(f: &TernaryCubic) -> usize {
    koszul_flattening(f).rank()
}

pub fn cat1_rank(f: &TernaryCubic) -> usize {
    cat1(f).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use apolar_core::q;

    fn cubic(s: &str) -> TernaryCubic {
        TernaryCubic::parse(s).unwrap()
    }

    #[test]
    fn catalecticant_ranks() {
        assert_eq!(cat1_rank(&cubic("x^3")), 1);
        let m = cat1(&cubic("x^2*y"));
        // d/dx = 2xy, d/dy = x^2, d/dz = 0
        assert_eq!(m.col(0), vec![q(0), q(2), q(0), q(0), q(0), q(0)]);
        assert_eq!(m.col(1), vec![q(1), q(0), q(0), q(0), q(0), q(0)]);
        assert_eq!(m.rank(), 2);
        assert_eq!(cat1_rank(&cubic("x^3+y^3+z^3")), 3);
    }

    #[test]
    fn koszul_ranks() {
        assert_eq!(koszul_rank(&cubic("x^3")), 2);
        assert_eq!(koszul_rank(&cubic("x^3+y^3+z^3")), 6);
        assert_eq!(koszul_rank(&cubic("x*y*z")), 8);
        assert_eq!(koszul_rank(&cubic("x*y*(x+y)")), 4);
        assert_eq!(koszul_rank(&cubic("x^2*y")), 4);
    }
}
