//! Exact rational scalars and their `"num/den"` text form.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};

use crate::error::{Error, Result};

/// The coefficient field used throughout the workbench.
pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Renders `q` as `"num/den"` in lowest terms (integers get denominator 1).
pub fn format_rat(q: &Rat) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational literal: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Non-authoritative decimal rendering with `digits` fractional digits (truncated toward zero).
pub fn decimal(q: &Rat, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (q.numer().abs() * &scale) / q.denom();
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    let sign = if Signed::is_negative(q) { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = digits)
    }
}

/// Field operations that may fail on overflow.
///
/// The linear-programming and elimination kernels are written against this
/// trait so they can run on machine-word rationals first and rerun on
/// arbitrary precision only when a word overflows.
pub trait Field: Clone + PartialEq + PartialOrd + std::fmt::Debug + Send + Sync {
    fn nil() -> Self;
    fn unit() -> Self;
    fn from_rat(q: &Rat) -> Option<Self>;
    fn to_rat(&self) -> Rat;
    fn is_nil(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn is_pos(&self) -> bool;
    fn plus(&self, o: &Self) -> Option<Self>;
    fn minus(&self, o: &Self) -> Option<Self>;
    fn times(&self, o: &Self) -> Option<Self>;
    fn over(&self, o: &Self) -> Option<Self>;
    fn negated(&self) -> Self;
}

impl Field for Rat {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn from_rat(q: &Rat) -> Option<Self> {
        Some(q.clone())
    }
    fn to_rat(&self) -> Rat {
        self.clone()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn is_pos(&self) -> bool {
        Signed::is_positive(self)
    }
    fn plus(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn minus(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn times(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn over(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
    fn negated(&self) -> Self {
        -self
    }
}

/// Word-sized rational with overflow detection.
pub type SmallRat = Ratio<i128>;

impl Field for SmallRat {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn from_rat(q: &Rat) -> Option<Self> {
        let n: i128 = q.numer().try_into().ok()?;
        let d: i128 = q.denom().try_into().ok()?;
        // Keep headroom so that products of two entries cannot reach i128::MIN.
        if n.unsigned_abs() > (1u128 << 100) || d > (1i128 << 100) {
            return None;
        }
        Some(Ratio::new_raw(n, d))
    }
    fn to_rat(&self) -> Rat {
        Rat::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_neg(&self) -> bool {
        *self.numer() < 0
    }
    fn is_pos(&self) -> bool {
        *self.numer() > 0
    }
    fn plus(&self, o: &Self) -> Option<Self> {
        self.checked_add(o)
    }
    fn minus(&self, o: &Self) -> Option<Self> {
        self.checked_sub(o)
    }
    fn times(&self, o: &Self) -> Option<Self> {
        self.checked_mul(o)
    }
    fn over(&self, o: &Self) -> Option<Self> {
        if Zero::is_zero(o) {
            return None;
        }
        self.checked_div(o)
    }
    fn negated(&self) -> Self {
        -*self
    }
}
