//! Rational scalars and their text/serde forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical text form, always `p/q` with `q > 0`.
pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Short form used in polynomial printing: integers lose the `/1`.
pub fn fmt_q_short(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        fmt_q(x)
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

/// max(|p|, q) for p/q in lowest terms.
pub fn height(x: &Q) -> BigInt {
    let n = x.numer().abs();
    let d = x.denom().clone();
    if n > d {
        n
    } else {
        d
    }
}

/// Nonzero rationals in order of increasing height, positive before
/// negative, smaller denominators first: 1, -1, 2, -2, 1/2, -1/2, 3, ...
pub fn nonzero_by_height(max_height: u64) -> impl Iterator<Item = Q> {
    (1..=i64::try_from(max_height).unwrap_or(i64::MAX)).flat_map(|h| {
        let mut out = Vec::new();
        for d in 1..=h {
            let ns: Vec<i64> = if d == h { (1..h).collect() } else { vec![h] };
            for n in ns {
                if n.gcd(&d) == 1 {
                    out.push(qf(n, d));
                    out.push(qf(-n, d));
                }
            }
        }
        if h == 1 {
            out = vec![q(1), q(-1)];
        }
        out
    })
}

/// Uniform-ish random rational with |numerator| <= bound and
/// 1 <= denominator <= bound.
pub fn random_q<R: Rng>(rng: &mut R, bound: i64) -> Q {
    let n = rng.gen_range(-bound..=bound);
    let d = rng.gen_range(1..=bound);
    qf(n, d)
}

pub fn random_nonzero_q<R: Rng>(rng: &mut R, bound: i64) -> Q {
    loop {
        let x = random_q(rng, bound);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn random_int<R: Rng>(rng: &mut R, bound: i64) -> Q {
    q(rng.gen_range(-bound..=bound))
}

pub fn lcm_denominators<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scale a vector so its first nonzero entry is 1. Zero vectors pass through.
pub fn normalize_first(v: &[Q]) -> Vec<Q> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let lead = lead.clone();
            v.iter().map(|x| x / &lead).collect()
        }
        None => v.to_vec(),
    }
}

/// Scale a vector to coprime integers with positive leading entry.
pub fn primitive_integer(v: &[Q]) -> Vec<BigInt> {
    let l = lcm_denominators(v);
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter().map(|x| x / &g * &sign).collect()
}

/// Serde adapters writing every rational as a `"p/q"` string.
pub mod serde_q {
    use super::{fmt_q, parse_q, Q};
    use serde::{Deserialize, Deserializer, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        S(String),
        I(i64),
    }

    fn from_repr<E: serde::de::Error>(r: Repr) -> Result<Q, E> {
        match r {
            Repr::S(s) => parse_q(&s).ok_or_else(|| E::custom(format!("bad rational {s:?}"))),
            Repr::I(i) => Ok(super::q(i)),
        }
    }

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        from_repr(Repr::deserialize(d)?)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(xs.len()))?;
            for x in xs {
                seq.serialize_element(&fmt_q(x))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
            let raw = Vec::<Repr>::deserialize(d)?;
            raw.into_iter().map(from_repr).collect()
        }
    }

    pub mod mat {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(rows: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(rows.len()))?;
            for r in rows {
                let strs: Vec<String> = r.iter().map(fmt_q).collect();
                seq.serialize_element(&strs)?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Q>>, D::Error> {
            let raw = Vec::<Vec<Repr>>::deserialize(d)?;
            raw.into_iter().map(|r| r.into_iter().map(from_repr).collect()).collect()
        }
    }

    pub mod opt {
        use super::*;

        pub fn serialize<S: Serializer>(x: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
            match x {
                Some(x) => s.serialize_some(&fmt_q(x)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Q>, D::Error> {
            match Option::<Repr>::deserialize(d)? {
                Some(r) => from_repr(r).map(Some),
                None => Ok(None),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_forms() {
        assert_eq!(fmt_q(&qf(6, -4)), "-3/2");
        assert_eq!(fmt_q(&q(5)), "5/1");
        assert_eq!(fmt_q_short(&q(5)), "5");
        assert_eq!(parse_q(" -3/2 "), Some(qf(-3, 2)));
        assert_eq!(parse_q("7"), Some(q(7)));
        assert_eq!(parse_q("1/0"), None);
    }

    #[test]
    fn height_order_prefix() {
        let first: Vec<Q> = nonzero_by_height(3).take(10).collect();
        let want = vec![q(1), q(-1), q(2), q(-2), qf(1, 2), qf(-1, 2), q(3), q(-3), qf(3, 2), qf(-3, 2)];
        assert_eq!(first, want);
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![qf(-1, 2), qf(1, 3), q(0)];
        let p = primitive_integer(&v);
        assert_eq!(p, vec![BigInt::from(3), BigInt::from(-2), BigInt::from(0)]);
    }
}
