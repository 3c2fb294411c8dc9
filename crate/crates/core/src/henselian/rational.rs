//! n-th powers in ℚ^×.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{GwError, Result};

fn nonzero(q: &BigRational) -> Result<()> {
    if q.is_zero() {
        Err(GwError::ZeroElement("0 has no power class".into()))
    } else {
        Ok(())
    }
}

fn exponent(n: u64) -> Result<u32> {
    match u32::try_from(n) {
        Ok(0) => Err(GwError::InvalidArgument("n must be positive".into())),
        Ok(e) => Ok(e),
        Err(_) => Err(GwError::InvalidArgument(format!("n = {n} is too large"))),
    }
}

fn exact_root(m: &BigUint, n: u32) -> Option<BigUint> {
    let r = m.nth_root(n);
    (num_traits::pow(r.clone(), n as usize) == *m).then_some(r)
}

/// The rational n-th root of `q`, positive for even `n` and of the sign of
/// `q` for odd `n`; `None` when `q` is not an n-th power.
pub fn nth_root_rational(q: &BigRational, n: u64) -> Result<Option<BigRational>> {
    nonzero(q)?;
    let e = exponent(n)?;
    if q.is_negative() && e % 2 == 0 {
        return Ok(None);
    }
    let num = q.numer().magnitude();
    let den = q.denom().magnitude();
    let (Some(a), Some(b)) = (exact_root(num, e), exact_root(den, e)) else {
        return Ok(None);
    };
    let sign = if q.is_negative() {
        Sign::Minus
    } else {
        Sign::Plus
    };
    Ok(Some(BigRational::new(
        BigInt::from_biguint(sign, a),
        BigInt::from(b),
    )))
}

/// Whether `q ∈ (ℚ^×)^n`.
pub fn is_nth_power_rational(q: &BigRational, n: u64) -> Result<bool> {
    Ok(nth_root_rational(q, n)?.is_some())
}

/// Prime factorization by trial division.
pub fn factor_biguint(m: &BigUint) -> Vec<(BigUint, u32)> {
    let mut m = m.clone();
    let mut out = Vec::new();
    let mut p = BigUint::from(2u32);
    while &p * &p <= m {
        let mut e = 0;
        loop {
            let (q, r) = m.div_rem(&p);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += if p == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    if m > BigUint::one() {
        out.push((m, 1));
    }
    out
}

/// Canonical representative of the class of `q` in ℚ^×/(ℚ^×)^n: the
/// integer `±∏ p^(e_p mod n)` with every exponent in `[0, n)`. For odd `n`
/// the sign is dropped (−1 is an n-th power); for even `n` it is kept.
pub fn power_free_form(q: &BigRational, n: u64) -> Result<BigInt> {
    nonzero(q)?;
    exponent(n)?;
    let mut exps: Vec<(BigUint, i64)> = Vec::new();
    for (p, e) in factor_biguint(q.numer().magnitude()) {
        exps.push((p, e as i64));
    }
    for (p, e) in factor_biguint(q.denom().magnitude()) {
        exps.push((p, -(e as i64)));
    }
    let n_i = n as i64;
    let mut out = BigInt::one();
    for (p, e) in exps {
        let r = e.rem_euclid(n_i);
        out *= num_traits::pow(BigInt::from(p), r.to_usize().unwrap());
    }
    if q.is_negative() && n.is_multiple_of(2) {
        out = -out;
    }
    Ok(out)
}

/// Whether `a / b` is an n-th power.
pub fn equivalent(a: &BigRational, b: &BigRational, n: u64) -> Result<bool> {
    nonzero(a)?;
    nonzero(b)?;
    is_nth_power_rational(&(a / b), n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_powers() {
        assert!(is_nth_power_rational(&q(4, 1), 2).unwrap());
        assert!(!is_nth_power_rational(&q(2, 1), 2).unwrap());
        assert!(is_nth_power_rational(&q(-8, 1), 3).unwrap());
        assert!(!is_nth_power_rational(&q(-4, 1), 2).unwrap());
        assert!(is_nth_power_rational(&q(16, 81), 4).unwrap());
        assert!(is_nth_power_rational(&q(7, 3), 1).unwrap());
        assert!(is_nth_power_rational(&q(0, 1), 2).is_err());
        assert_eq!(nth_root_rational(&q(-27, 8), 3).unwrap(), Some(q(-3, 2)));
        assert_eq!(nth_root_rational(&q(9, 4), 2).unwrap(), Some(q(3, 2)));
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(power_free_form(&q(1, 6), 3).unwrap(), BigInt::from(36));
        assert_eq!(power_free_form(&q(1, 8), 2).unwrap(), BigInt::from(2));
        assert_eq!(power_free_form(&q(-12, 1), 2).unwrap(), BigInt::from(-3));
        assert_eq!(power_free_form(&q(-24, 1), 3).unwrap(), BigInt::from(3));
        assert_eq!(power_free_form(&q(50, 9), 2).unwrap(), BigInt::from(2));
        assert_eq!(power_free_form(&q(4, 1), 4).unwrap(), BigInt::from(4));
    }

    #[test]
    fn decision_agrees_with_factorization() {
        for n in 1..=5u64 {
            for a in -60i64..=60 {
                for b in 1i64..=12 {
                    if a == 0 {
                        continue;
                    }
                    let x = q(a, b);
                    let by_factors = power_free_form(&x, n).unwrap().is_one();
                    assert_eq!(is_nth_power_rational(&x, n).unwrap(), by_factors, "{x} {n}");
                }
            }
        }
    }
}
