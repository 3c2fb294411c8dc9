//! Truncated Laurent series over an exact field.
//!
//! A nonzero series stores its valuation and a run of known coefficients
//! starting there; the run length is its relative precision. The zero
//! series stores only the exponent below which it is known to vanish.
//! Arithmetic keeps exactly the precision the inputs justify.

use std::fmt;
use std::ops::Neg;

use num_traits::Num;

use crate::error::{GwError, Result};

/// Exact field scalars usable as coefficients.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Num + Neg<Output = Self> {}

impl<T> Scalar for T where T: Clone + PartialEq + fmt::Debug + fmt::Display + Num + Neg<Output = T> {}

/// `n · 1` in the scalar field.
pub fn scalar_from_u64<T: Scalar>(mut n: u64) -> T {
    let mut acc = T::zero();
    let mut power = T::one();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc + power.clone();
        }
        power = power.clone() + power;
        n >>= 1;
    }
    acc
}

#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries<T> {
    /// Valuation when `coeffs` is non-empty, otherwise the absolute precision of zero.
    start: i64,
    coeffs: Vec<T>,
}

impl<T: Scalar> LaurentSeries<T> {
    /// Zero, known modulo `t^abs_precision`.
    pub fn zero(abs_precision: i64) -> Self {
        LaurentSeries {
            start: abs_precision,
            coeffs: Vec::new(),
        }
    }

    /// Coefficients of `t^start, t^(start+1), …`; leading zeros are dropped
    /// (they stay known, so the absolute precision is unchanged).
    pub fn from_coeffs(start: i64, coeffs: Vec<T>) -> Self {
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => LaurentSeries::zero(start + coeffs.len() as i64),
            Some(k) => LaurentSeries {
                start: start + k as i64,
                coeffs: coeffs.into_iter().skip(k).collect(),
            },
        }
    }

    /// Sum of the given terms, known to `precision` terms past its valuation.
    /// Terms beyond that are dropped.
    pub fn from_terms(terms: &[(i64, T)], precision: usize) -> Self {
        let nonzero: Vec<&(i64, T)> = terms.iter().filter(|(_, c)| !c.is_zero()).collect();
        let Some(v) = nonzero.iter().map(|(e, _)| *e).min() else {
            return LaurentSeries::zero(precision as i64);
        };
        let mut coeffs = vec![T::zero(); precision];
        for (e, c) in nonzero {
            let k = (e - v) as usize;
            if k < precision {
                coeffs[k] = coeffs[k].clone() + c.clone();
            }
        }
        LaurentSeries::from_coeffs(v, coeffs)
    }

    /// `c · t^e` with `precision` known terms.
    pub fn monomial(c: T, e: i64, precision: usize) -> Self {
        LaurentSeries::from_terms(&[(e, c)], precision)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn valuation(&self) -> Result<i64> {
        if self.is_zero() {
            Err(GwError::ZeroElement(
                "the zero series has no valuation".into(),
            ))
        } else {
            Ok(self.start)
        }
    }

    /// Leading coefficient, the residue of `x · t^(-v(x))`.
    pub fn unit_residue(&self) -> Result<T> {
        self.coeffs
            .first()
            .cloned()
            .ok_or_else(|| GwError::ZeroElement("the zero series has no residue".into()))
    }

    /// Number of known terms from the valuation on (0 for zero).
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    /// Exponent from which coefficients are unknown.
    pub fn absolute_precision(&self) -> i64 {
        self.start + self.coeffs.len() as i64
    }

    /// Known coefficient of `t^e`, `None` past the precision.
    pub fn coefficient(&self, e: i64) -> Option<T> {
        if e >= self.absolute_precision() {
            None
        } else if e < self.start {
            Some(T::zero())
        } else {
            Some(self.coeffs[(e - self.start) as usize].clone())
        }
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coeffs
    }

    /// Equal on every jointly known coefficient.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let end = self.absolute_precision().min(other.absolute_precision());
        let lo = self.start.min(other.start);
        (lo..end).all(|e| self.coefficient(e) == other.coefficient(e))
    }

    /// Keeps at most `precision` known terms.
    pub fn truncate(&self, precision: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentSeries {
            start: self.start,
            coeffs: self.coeffs.iter().take(precision).cloned().collect(),
        }
    }

    /// Treats the known terms as exact and extends with zeros to `precision` terms.
    pub fn padded(&self, precision: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < precision {
            coeffs.resize(precision, T::zero());
        }
        LaurentSeries {
            start: self.start,
            coeffs,
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            start: self.start + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return LaurentSeries::zero(self.absolute_precision());
        }
        LaurentSeries {
            start: self.start,
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let end = self.absolute_precision().min(other.absolute_precision());
        let lo = self.start.min(other.start).min(end);
        let coeffs = (lo..end)
            .map(|e| self.coefficient(e).unwrap() + other.coefficient(e).unwrap())
            .collect();
        LaurentSeries::from_coeffs(lo, coeffs)
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            start: self.start,
            coeffs: self.coeffs.iter().map(|x| -x.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return LaurentSeries::zero(self.start + other.start);
        }
        let len = self.coeffs.len().min(other.coeffs.len());
        let coeffs = (0..len)
            .map(|k| {
                (0..=k).fold(T::zero(), |acc, i| {
                    acc + self.coeffs[i].clone() * other.coeffs[k - i].clone()
                })
            })
            .collect();
        LaurentSeries::from_coeffs(self.start + other.start, coeffs)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(GwError::ZeroElement("cannot invert zero".into()));
        }
        let a = &self.coeffs;
        let a0_inv = T::one() / a[0].clone();
        let mut b: Vec<T> = Vec::with_capacity(a.len());
        b.push(a0_inv.clone());
        for k in 1..a.len() {
            let s = (1..=k).fold(T::zero(), |acc, i| acc + a[i].clone() * b[k - i].clone());
            b.push(-(s * a0_inv.clone()));
        }
        Ok(LaurentSeries {
            start: -self.start,
            coeffs: b,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let prec = self.precision();
        let mut base = self.clone();
        let mut acc = LaurentSeries::from_coeffs(0, {
            let mut c = vec![T::zero(); prec.max(1)];
            c[0] = T::one();
            c
        });
        if self.is_zero() {
            return if e == 0 {
                acc
            } else {
                LaurentSeries::zero(self.start * e as i64)
            };
        }
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Newton iteration `y ← y − (yⁿ − u)/(n·yⁿ⁻¹)` for a unit `u` whose
    /// constant term is `start^n`, doubling the precision each step.
    /// Returns `y` with `v(y) = 0`, `y₀ = start` and `yⁿ ≡ u` on
    /// `min(prec, precision(u))` terms.
    pub fn newton_nth_root(&self, n: u64, start: T, prec: usize) -> Result<Self> {
        if self.valuation()? != 0 {
            return Err(GwError::HenselPrecondition(format!(
                "valuation {} is not 0",
                self.start
            )));
        }
        if n == 0 {
            return Err(GwError::InvalidArgument("n must be positive".into()));
        }
        let residue = self.coeffs[0].clone();
        let lifted = LaurentSeries::from_coeffs(0, vec![start.clone()]).pow(n);
        if lifted.coeffs.first() != Some(&residue) {
            return Err(GwError::HenselPrecondition(
                "start is not an n-th root of the residue".into(),
            ));
        }
        let target = prec.min(self.precision()).max(1);
        let n_scalar: T = scalar_from_u64(n);
        let mut y = LaurentSeries::from_coeffs(0, vec![start]);
        let mut p = 1;
        while p < target {
            let p2 = (2 * p).min(target);
            let yp = y.padded(p2);
            let up = self.truncate(p2);
            let y_n1 = yp.pow(n - 1);
            let residual = y_n1.mul(&yp).sub(&up);
            let correction = residual.div(&y_n1.scale(&n_scalar))?;
            y = yp.sub(&correction).padded(p2).truncate(p2);
            p = p2;
        }
        Ok(y.padded(target).truncate(target))
    }
}

impl<T: Scalar> fmt::Display for LaurentSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.start + k as i64;
            let text = c.to_string();
            let (negative, magnitude) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let mono = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            if mono.is_empty() {
                f.write_str(&magnitude)?;
            } else if magnitude == "1" {
                f.write_str(&mono)?;
            } else {
                write!(f, "{magnitude}*{mono}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.absolute_precision())
    }
}
