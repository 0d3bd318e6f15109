//! Exact rationals and a signed log-domain scalar.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactScalar(BigRational);

impl ExactScalar {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, Error> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self(BigRational::new(num.into(), den)))
    }

    pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Self::new(num, den).expect("zero denominator")
    }

    pub fn int(v: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(v.into()))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self(r)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn signum(&self) -> i8 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, Error> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Self, Error> {
        Self::one().checked_div(self)
    }

    pub fn pow(&self, e: u32) -> Self {
        Self(num_traits::pow(self.0.clone(), e as usize))
    }

    pub fn to_f64(&self) -> f64 {
        exact_to_float(self).value
    }

    /// Natural log of |x| as a [`LogScalar`].
    pub fn to_log(&self) -> LogScalar {
        LogScalar::from_ratio(self.numer(), self.denom())
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for ExactScalar {
    fn from(v: i64) -> Self {
        Self::int(v)
    }
}

impl From<BigInt> for ExactScalar {
    fn from(v: BigInt) -> Self {
        Self::int(v)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar(self.0.$m(rhs.0))
            }
        }
        impl<'a> $tr<&'a ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: &'a ExactScalar) -> ExactScalar {
                ExactScalar((&self.0).$m(&rhs.0))
            }
        }
        impl<'a> $tr<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: &'a ExactScalar) -> ExactScalar {
                ExactScalar(self.0.$m(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        self.0 += &rhs.0;
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-self.0)
    }
}

/// Result of rounding an exact value to `f64`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FloatView {
    pub value: f64,
    /// Magnitude exceeded `f64::MAX`; `value` is ±infinity.
    pub overflow: bool,
    /// Nonzero magnitude rounded to zero.
    pub underflow: bool,
}

/// Nearest `f64` (round half to even), with overflow and underflow flags.
pub fn exact_to_float(x: &ExactScalar) -> FloatView {
    let neg = x.signum() < 0;
    let mag = ratio_to_f64(x.numer().magnitude(), x.denom().magnitude());
    let value = if neg { -mag.value } else { mag.value };
    FloatView { value, ..mag }
}

fn ratio_to_f64(num: &num_bigint::BigUint, den: &num_bigint::BigUint) -> FloatView {
    let view = |value, overflow, underflow| FloatView { value, overflow, underflow };
    if num.is_zero() {
        return view(0.0, false, false);
    }
    // exact binary exponent E with 2^E <= num/den < 2^(E+1)
    let e = num.bits() as i64 - den.bits() as i64;
    let at_least = if e >= 0 { *num >= (den << e as usize) } else { (num << (-e) as usize) >= *den };
    let exp = if at_least { e } else { e - 1 };
    // 53 significant bits, fewer in the subnormal range
    let precision: i64 = if exp < -1022 { exp + 1075 } else { 53 };
    if precision < 0 {
        return view(0.0, false, true);
    }
    let shift = precision + 1 - exp;
    let (n, d) =
        if shift >= 0 { (num << shift as usize, den.clone()) } else { (num.clone(), den << (-shift) as usize) };
    let (mut q, r) = n.div_rem(&d);
    // q has precision+2 bits; drop the extra ones with rounding
    let extra = q.bits() as i64 - precision.max(0);
    let mut scale = -shift;
    if extra > 0 {
        let extra = extra as usize;
        let mask = (num_bigint::BigUint::one() << extra) - 1u32;
        let low = &q & &mask;
        q >>= extra;
        scale += extra as i64;
        let half = num_bigint::BigUint::one() << (extra - 1);
        let round_up = match low.cmp(&half) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => !r.is_zero() || q.is_odd(),
        };
        if round_up {
            q += 1u32;
        }
    }
    let mant = q.to_u64().unwrap_or(0) as f64;
    if mant == 0.0 {
        return view(0.0, false, true);
    }
    if scale > 1100 {
        return view(f64::INFINITY, true, false);
    }
    let v = libm::ldexp(mant, scale as i32);
    if v.is_infinite() {
        view(v, true, false)
    } else {
        view(v, false, v == 0.0)
    }
}

/// Signed value stored as sign and natural log of magnitude.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogScalar {
    pub sign: i8,
    pub log_magnitude: f64,
}

impl LogScalar {
    pub const ZERO: LogScalar = LogScalar { sign: 0, log_magnitude: f64::NEG_INFINITY };
    pub const ONE: LogScalar = LogScalar { sign: 1, log_magnitude: 0.0 };

    pub fn from_f64(v: f64) -> Self {
        if v == 0.0 {
            Self::ZERO
        } else {
            LogScalar { sign: if v < 0.0 { -1 } else { 1 }, log_magnitude: libm::log(v.abs()) }
        }
    }

    pub fn from_ln(sign: i8, log_magnitude: f64) -> Self {
        if sign == 0 {
            Self::ZERO
        } else {
            LogScalar { sign, log_magnitude }
        }
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        Self::from_ratio(v, &BigInt::one())
    }

    pub fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        if num.is_zero() {
            return Self::ZERO;
        }
        let sign = if (num.sign() == Sign::Minus) != (den.sign() == Sign::Minus) { -1 } else { 1 };
        LogScalar { sign, log_magnitude: ln_biguint(num.magnitude()) - ln_biguint(den.magnitude()) }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn checked_div(self, o: LogScalar) -> Result<LogScalar, Error> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_ln(self.sign * o.sign, self.log_magnitude - o.log_magnitude))
    }

    pub fn log10(&self) -> f64 {
        self.log_magnitude / core::f64::consts::LN_10
    }

    pub fn to_f64(&self) -> f64 {
        match self.sign {
            0 => 0.0,
            s => s as f64 * libm::exp(self.log_magnitude),
        }
    }

    /// Magnitude ordering; values of mixed sign are ordered by sign first.
    pub fn cmp_value(&self, o: &LogScalar) -> Ordering {
        match self.sign.cmp(&o.sign) {
            Ordering::Equal => match self.sign {
                0 => Ordering::Equal,
                1 => self.log_magnitude.total_cmp(&o.log_magnitude),
                _ => o.log_magnitude.total_cmp(&self.log_magnitude),
            },
            ord => ord,
        }
    }
}

impl Mul for LogScalar {
    type Output = LogScalar;
    fn mul(self, o: LogScalar) -> LogScalar {
        Self::from_ln(self.sign * o.sign, self.log_magnitude + o.log_magnitude)
    }
}

impl Add for LogScalar {
    type Output = LogScalar;
    fn add(self, o: LogScalar) -> LogScalar {
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        let (hi, lo) = if self.log_magnitude >= o.log_magnitude { (self, o) } else { (o, self) };
        let diff = lo.log_magnitude - hi.log_magnitude;
        if hi.sign == lo.sign {
            Self::from_ln(hi.sign, hi.log_magnitude + libm::log1p(libm::exp(diff)))
        } else if diff == 0.0 {
            Self::ZERO
        } else {
            Self::from_ln(hi.sign, hi.log_magnitude + libm::log1p(-libm::exp(diff)))
        }
    }
}

impl Neg for LogScalar {
    type Output = LogScalar;
    fn neg(self) -> LogScalar {
        Self::from_ln(-self.sign, self.log_magnitude)
    }
}

/// Sum of same-sign log values with a single shift.
pub fn log_sum(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    let s: f64 = terms.iter().map(|t| libm::exp(t - max)).sum();
    max + libm::log(s)
}

/// Natural log of a nonnegative big integer (−∞ for zero).
pub fn ln_biguint(v: &num_bigint::BigUint) -> f64 {
    if v.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = v.bits();
    if bits <= 1000 {
        return libm::log(v.to_f64().unwrap_or(f64::INFINITY));
    }
    let shift = bits - 64;
    let top = (v >> shift as usize).to_f64().unwrap_or(0.0);
    libm::log(top) + shift as f64 * core::f64::consts::LN_2
}

/// `log10(num/den)`.
pub fn log_ratio(num: LogScalar, den: LogScalar) -> Result<f64, Error> {
    let q = num.checked_div(den)?;
    if q.sign < 0 {
        return Err(Error::InvalidParameter(String::from("log of a negative ratio")));
    }
    Ok(q.log10())
}
