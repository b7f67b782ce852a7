use crate::classify::{classify, CubicTag};
use crate::cubic::TernaryCubic;
use crate::flatten::{cat1_rank, koszul_rank};
use crate::singular::{complete_basis, is_singular, plane_points_by_height, qvec, rational_flexes};
use apolar_binary::{submult_square, BinaryForm, SQUARE_IDENTITY_NOTE};
use apolar_core::decomp::{power_coeffs, Attestation, BoundKind, Factor, Leaf, StructuredDecomposition, Summand};
use apolar_core::matrix::{exact_kernel, kron_vec, Matrix};
use apolar_core::rational::{fmt_q, nonzero_by_height, normalize_first};
use apolar_core::{q, qf, Error, Result, Q};
use num_traits::Zero;

/// Height bounds for the line and scalar searches of the shift construction.
const LINE_HEIGHT: i64 = 4;
const SHIFT_COUNT: usize = 12;

/// Decomposition of `f (x) f` with fewer than `rank(f)^2` terms, for the
/// cubic classes where rank exceeds border rank.
pub fn submult_square_cubic(f: &TernaryCubic) -> Result<StructuredDecomposition> {
    let class = classify(f)?;
    match class.tag {
        CubicTag::Cuspidal if f == &cusp() => cusp_normal_form(),
        CubicTag::Cuspidal => shift_square(f, 3, &flex_tangents(f), |g| {
            cat1_rank(g) == 3 && koszul_rank(g) <= 7 && !is_singular(g).singular
        }),
        CubicTag::ConicTangent => shift_square(f, 4, &[], |g| koszul_rank(g) == 8),
        CubicTag::DoubleLineLine => {
            let g = class.evidence.binary_reduction.clone().expect("non-concise cubics carry their reduction");
            let lin = reduction_lines(f)?;
            embed_binary(&submult_square(&g)?, &lin, &format!("({f})⊗({f})"))
        }
        tag => Err(Error::pre(format!(
            "multiplicative class {tag}: rank equals border rank, so the square has rank exactly rank^2"
        ))),
    }
}

fn cusp() -> TernaryCubic {
    TernaryCubic::parse("x^3+y^2*z").expect("normal form")
}

fn cube_leaf(l: &[Q]) -> Factor {
    Factor::leaf(
        format!("({})^3", linear_label(l)),
        power_coeffs(l, 3),
        1,
        Attestation::Power { base: l.to_vec(), exponent: 3 },
    )
}

fn linear_label(l: &[Q]) -> String {
    linear_poly(l).to_string()
}

/// x^3 (x) x^3, the two cross terms with y^2 z written as three cubes, and
/// the binary construction for (z y^2) (x) (z y^2): 1 + 3 + 3 + 8 terms.
fn cusp_normal_form() -> Result<StructuredDecomposition> {
    let f = cusp();
    let x3 = || cube_leaf(&qvec([1, 0, 0]));
    let y2z = TernaryCubic::parse("y^2*z")?;
    let three = StructuredDecomposition::build(
        "y^2*z",
        vec![10],
        y2z.coeffs().to_vec(),
        BoundKind::Rank,
        vec![
            Summand::new(qf(1, 6), vec![cube_leaf(&qvec([0, 1, 1]))]),
            Summand::new(qf(1, 6), vec![cube_leaf(&qvec([0, -1, 1]))]),
            Summand::new(qf(-1, 3), vec![cube_leaf(&qvec([0, 0, 1]))]),
        ],
        vec!["6 y^2 z = (y+z)^3 + (z-y)^3 - 2 z^3".into()],
    )?;
    // y^2 z is the binary form X Y^2 in (X, Y) = (z, y)
    let lin = Matrix::from_cols(&[qvec([0, 0, 1]), qvec([0, 1, 0])]);
    let binary = submult_square(&BinaryForm::parse("x*y^2")?)?;
    let square = embed_binary(&binary, &lin, "(y^2*z)⊗(y^2*z)")?;
    StructuredDecomposition::build(
        format!("({f})⊗({f})"),
        vec![10, 10],
        kron_vec(f.coeffs(), f.coeffs()),
        BoundKind::Rank,
        vec![
            Summand::new(q(1), vec![x3(), x3()]),
            Summand::new(q(1), vec![x3(), Factor::Nested(Box::new(three.clone()))]),
            Summand::new(q(1), vec![Factor::Nested(Box::new(three)), x3()]),
            Summand::new(q(1), vec![Factor::Nested(Box::new(square))]),
        ],
        vec!["(x^3 + y^2 z)(x)(x^3 + y^2 z) expanded in four blocks".into()],
    )
}

/// f (x) f = q0 (x) q0 + 2 q1 (x) (e l^3) + 2 (e l^3) (x) q1 with
/// q0 = f - 2e l^3 and q1 = f - e l^3 both of rank `r`, searching l and e.
fn shift_square(
    f: &TernaryCubic,
    r: usize,
    preferred: &[Vec<Q>],
    good: impl Fn(&TernaryCubic) -> bool,
) -> Result<StructuredDecomposition> {
    let first = [[0, 1, 0], [1, 0, 0], [0, 0, 1]];
    let searched =
        first.into_iter().chain(plane_points_by_height(LINE_HEIGHT).filter(|p| !first.contains(p))).map(qvec);
    for l in preferred.iter().cloned().chain(searched) {
        let cube = TernaryCubic::cube(&l);
        for eps in nonzero_by_height(u64::MAX).take(SHIFT_COUNT) {
            let (Ok(q1), Ok(q0)) = (f.sub_scaled(&eps, &cube), f.sub_scaled(&(&eps * q(2)), &cube)) else {
                continue;
            };
            if !good(&q1) || !good(&q0) {
                continue;
            }
            debug_assert_eq!(classify(&q0).map(|c| c.rank).ok(), Some(r));
            let leaf = |name: &str, g: &TernaryCubic| {
                Factor::leaf(format!("{name} = {g}"), g.coeffs().to_vec(), r, Attestation::TernaryCubic)
            };
            let two_eps = &eps * q(2);
            let summands = vec![
                Summand::new(q(1), vec![leaf("q0", &q0), leaf("q0", &q0)]),
                Summand::new(two_eps.clone(), vec![leaf("q1", &q1), cube_leaf(&l)]),
                Summand::new(two_eps, vec![cube_leaf(&l), leaf("q1", &q1)]),
            ];
            let note = format!("{SQUARE_IDENTITY_NOTE}; l = {}, e = {}", linear_label(&l), fmt_q(&eps));
            return StructuredDecomposition::build(
                format!("({f})⊗({f})"),
                vec![10, 10],
                kron_vec(f.coeffs(), f.coeffs()),
                BoundKind::Rank,
                summands,
                vec![note],
            );
        }
    }
    Err(Error::inconclusive(format!(
        "no line of height <= {LINE_HEIGHT} and shift among the first {SHIFT_COUNT} rationals gives rank-{r} neighbours"
    )))
}

/// Tangent lines at the rational flexes. For a cuspidal cubic the flex is
/// unique and f - e l^3 is smooth of border rank 3 for every e != 0.
fn flex_tangents(f: &TernaryCubic) -> Vec<Vec<Q>> {
    let grad = f.gradient();
    rational_flexes(f)
        .into_iter()
        .map(|p| normalize_first(&grad.iter().map(|g| g.eval(&p)).collect::<Vec<_>>()))
        .collect()
}

/// Linear forms (L0, L1) with f = g(L0, L1) for the binary reduction g.
fn reduction_lines(f: &TernaryCubic) -> Result<Matrix> {
    let kernel = exact_kernel(&crate::flatten::cat1(f));
    let m = complete_basis(&kernel[0]);
    let inv = m.inverse().expect("invertible");
    Ok(Matrix::from_cols(&[inv.row(0), inv.row(1)]))
}

/// Image of a binary-cubic decomposition under s -> L0, t -> L1, where the
/// columns of `lin` are the ternary linear forms L0 and L1.
pub(crate) fn embed_binary(
    dec: &StructuredDecomposition,
    lin: &Matrix,
    target: &str,
) -> Result<StructuredDecomposition> {
    let l0 = lin.col(0);
    let l1 = lin.col(1);
    // column j: coefficients of L0^(3-j) L1^j
    let cols: Vec<Vec<Q>> = (0..4)
        .map(|j| {
            let p0 = linear_poly(&l0).pow(3 - j as u32);
            let p1 = linear_poly(&l1).pow(j as u32);
            let prod = p0.mul(&p1);
            apolar_core::decomp::monomials(3, 3).iter().map(|e| prod.coefficient(e)).collect()
        })
        .collect();
    let e = Matrix::from_cols(&cols);
    let mut out = embed_rec(dec, &e, lin)?;
    out.target = target.to_string();
    out.check()?;
    Ok(out)
}

fn linear_poly(l: &[Q]) -> apolar_core::Poly {
    let mut p = apolar_core::Poly::zero(&crate::cubic::VARS);
    for (i, c) in l.iter().enumerate() {
        let mut e = vec![0; 3];
        e[i] = 1;
        p.add_term(e, c.clone());
    }
    p
}

fn embed_rec(dec: &StructuredDecomposition, e: &Matrix, lin: &Matrix) -> Result<StructuredDecomposition> {
    if dec.dims.iter().any(|&d| d != 4) {
        return Err(Error::pre("only binary cubic decompositions embed into ternary cubics"));
    }
    let mut big = Matrix::identity(1);
    for _ in &dec.dims {
        big = big.kron(e);
    }
    let summands = dec
        .summands
        .iter()
        .map(|s| {
            let factors = s
                .factors
                .iter()
                .map(|f| match f {
                    Factor::Nested(d) => embed_rec(d, e, lin).map(|d| Factor::Nested(Box::new(d))),
                    Factor::Leaf(l) => Ok(Factor::Leaf(embed_leaf(l, e, lin))),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Summand::new(s.coeff.clone(), factors))
        })
        .collect::<Result<Vec<_>>>()?;
    StructuredDecomposition::build(
        dec.target.clone(),
        vec![10; dec.dims.len()],
        big.mul_vec(&dec.target_coords),
        dec.bound,
        summands,
        dec.notes.clone(),
    )
}

fn embed_leaf(l: &Leaf, e: &Matrix, lin: &Matrix) -> Leaf {
    let coords = e.mul_vec(&l.coords);
    let attestation = match &l.attestation {
        Attestation::Power { base, exponent } => Attestation::Power { base: lin.mul_vec(base), exponent: *exponent },
        Attestation::BinaryForm => Attestation::TernaryCubic,
        other => other.clone(),
    };
    let label = TernaryCubic::new(coords.clone()).map(|c| c.to_string()).unwrap_or_else(|_| l.label.clone());
    debug_assert!(coords.iter().any(|x| !x.is_zero()));
    Leaf { label, coords, rank: l.rank, attestation }
}
