//! Fixed-point fractions modulo one.
//!
//! A [`HighPrecisionFraction`] stores `mantissa / 2^bits` with
//! `0 <= mantissa < 2^bits`. Addition, multiplication by integers and
//! reduction mod 1 are exact, so torus orbits computed with these values carry
//! no rounding error beyond the one made when a seed is materialized.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest precision ever used; requests below it are raised.
pub const MIN_PRECISION_BITS: u32 = 64;

/// Working precision of the fixed-point cosine.
const COS_WORK_BITS: u32 = 160;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HighPrecisionFraction {
    mantissa: BigUint,
    bits: u32,
}

impl HighPrecisionFraction {
    pub fn zero(bits: u32) -> Self {
        Self { mantissa: BigUint::zero(), bits: bits.max(MIN_PRECISION_BITS) }
    }

    /// `mantissa / 2^bits`, reduced mod 1.
    pub fn from_mantissa(mantissa: BigUint, bits: u32) -> Self {
        let bits = bits.max(MIN_PRECISION_BITS);
        let mask = (BigUint::one() << bits) - 1u32;
        Self { mantissa: mantissa & mask, bits }
    }

    fn from_signed(numerator: BigInt, bits: u32) -> Self {
        let modulus = BigInt::one() << bits;
        let reduced = numerator.mod_floor(&modulus);
        Self { mantissa: reduced.to_biguint().expect("mod_floor is non-negative"), bits }
    }

    /// Fractional part of a double. Exact whenever `bits` covers the binary
    /// expansion of `x` (always true for `bits >= 1074`); otherwise rounded down.
    pub fn from_f64(x: f64, bits: u32) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::InvalidParameter(format!("non-finite seed value {x}")));
        }
        let bits = bits.max(MIN_PRECISION_BITS);
        let raw = x.to_bits();
        let negative = raw >> 63 == 1;
        let biased = ((raw >> 52) & 0x7ff) as i64;
        let frac = raw & ((1u64 << 52) - 1);
        let (mant, exp) = if biased == 0 { (frac, -1074) } else { (frac | (1u64 << 52), biased - 1075) };
        let mut m = BigInt::from(mant);
        let shift = exp + bits as i64;
        let mut inexact = false;
        if shift >= 0 {
            m <<= shift as usize;
        } else {
            let dropped = (-shift) as u64;
            inexact = m.trailing_zeros().is_some_and(|tz| tz < dropped);
            m >>= dropped as usize;
        }
        if negative {
            // Floor, not truncation toward zero.
            m = -m - i32::from(inexact);
        }
        Ok(Self::from_signed(m, bits))
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn mantissa(&self) -> &BigUint {
        &self.mantissa
    }

    /// Same value at a higher precision (zero-extension). Lower requests are ignored.
    pub fn raised(&self, bits: u32) -> Self {
        if bits <= self.bits {
            return self.clone();
        }
        Self { mantissa: &self.mantissa << (bits - self.bits), bits }
    }

    /// Drops low-order bits.
    pub fn truncated(&self, bits: u32) -> Self {
        let bits = bits.max(MIN_PRECISION_BITS);
        if bits >= self.bits {
            return self.clone();
        }
        Self { mantissa: &self.mantissa >> (self.bits - bits), bits }
    }

    /// Sum mod 1 at the larger of the two precisions.
    pub fn add(&self, other: &Self) -> Self {
        let bits = self.bits.max(other.bits);
        let sum = self.raised(bits).mantissa + other.raised(bits).mantissa;
        Self::from_mantissa(sum, bits)
    }

    /// `k · self` mod 1.
    pub fn mul_int(&self, k: &BigInt) -> Self {
        let product = k * BigInt::from_biguint(Sign::Plus, self.mantissa.clone());
        Self::from_signed(product, self.bits)
    }

    /// Nearest double (may round up to 1.0 when the value is within half an
    /// ulp of one).
    pub fn to_f64(&self) -> f64 {
        if self.bits > 64 {
            let top = (&self.mantissa >> (self.bits - 64)).to_u64().unwrap_or(0);
            top as f64 * 2f64.powi(-64)
        } else {
            self.mantissa.to_f64().unwrap_or(0.0) * 2f64.powi(-(self.bits as i32))
        }
    }

    /// `cos(2π · value)`, evaluated in fixed point and rounded once.
    pub fn cos_2pi(&self) -> f64 {
        let work = COS_WORK_BITS;
        let mut t =
            if self.bits >= work { &self.mantissa >> (self.bits - work) } else { &self.mantissa << (work - self.bits) };
        let one = BigUint::one() << work;
        let half = &one >> 1u32;
        let quarter = &one >> 2u32;
        let eighth = &one >> 3u32;

        if t > half {
            t = &one - &t;
        }
        let mut negate = false;
        if t > quarter {
            t = &half - &t;
            negate = true;
        }
        // t now lies in [0, 1/4]; fold once more so the Taylor argument stays below π/4.
        let value = if t > eighth { fixed_sin(&angle(&(&quarter - &t)), work) } else { fixed_cos(&angle(&t), work) };
        let v = value.to_f64().unwrap_or(0.0) * 2f64.powi(-(work as i32));
        if negate {
            -v
        } else {
            v
        }
    }
}

impl fmt::Debug for HighPrecisionFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HighPrecisionFraction({:.17} @ {} bits)", self.to_f64(), self.bits)
    }
}

/// `2π t`, keeping the fixed-point scale of `t`.
fn angle(t: &BigUint) -> BigInt {
    let two_pi = two_pi_fixed();
    // two_pi carries PI_BITS fractional bits.
    let product = two_pi * t;
    BigInt::from_biguint(Sign::Plus, product >> PI_BITS)
}

fn fixed_cos(x: &BigInt, work: u32) -> BigInt {
    let one = BigInt::one() << work;
    let x2 = (x * x) >> work;
    let mut sum = one.clone();
    let mut term = one;
    let mut k: u64 = 1;
    loop {
        term = ((term * &x2) >> work) / BigInt::from((2 * k - 1) * (2 * k));
        if term.is_zero() {
            break;
        }
        if k % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
        k += 1;
    }
    sum
}

fn fixed_sin(x: &BigInt, work: u32) -> BigInt {
    let x2 = (x * x) >> work;
    let mut sum = x.clone();
    let mut term = x.clone();
    let mut k: u64 = 1;
    loop {
        term = ((term * &x2) >> work) / BigInt::from((2 * k) * (2 * k + 1));
        if term.is_zero() {
            break;
        }
        if k % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
        k += 1;
    }
    sum
}

const PI_BITS: u32 = 256;

/// `2π · 2^PI_BITS`, from Machin's formula with 32 guard bits.
fn two_pi_fixed() -> &'static BigUint {
    static CELL: OnceLock<BigUint> = OnceLock::new();
    CELL.get_or_init(|| {
        let guard = 32;
        let p = PI_BITS + guard;
        let pi = atan_inv(5, p) * 16u32 - atan_inv(239, p) * 4u32;
        let pi = pi.to_biguint().expect("π is positive");
        (pi << 1u32) >> guard
    })
}

/// `atan(1/k) · 2^bits`.
fn atan_inv(k: u32, bits: u32) -> BigInt {
    let one = BigInt::one() << bits;
    let k2 = BigInt::from(k) * BigInt::from(k);
    let mut power = one / BigInt::from(k);
    let mut sum = BigInt::zero();
    let mut n: u32 = 0;
    loop {
        let term = &power / BigInt::from(2 * n + 1);
        if term.is_zero() {
            break;
        }
        if n % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &k2;
        n += 1;
    }
    sum
}

/// Exact description of a real number `(a + b·√c) / d`, materialized mod 1
/// at any requested precision.
///
/// Covers every seed the built-in models use: `1/√2 = √2/2`, `1/√3 = √3/3`,
/// the inverse golden mean `(√5 - 1)/2`, halves of those, and rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSurd")]
pub struct QuadraticSurd {
    pub a: i64,
    pub b: i64,
    pub c: u64,
    pub d: u64,
}

#[derive(Deserialize)]
struct RawSurd {
    a: i64,
    b: i64,
    c: u64,
    d: u64,
}

impl TryFrom<RawSurd> for QuadraticSurd {
    type Error = Error;

    fn try_from(r: RawSurd) -> Result<Self> {
        Self::new(r.a, r.b, r.c, r.d)
    }
}

impl QuadraticSurd {
    pub fn new(a: i64, b: i64, c: u64, d: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParameter("surd denominator must be positive".into()));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn rational(num: i64, den: u64) -> Result<Self> {
        Self::new(num, 0, 0, den)
    }

    /// `1/√n`.
    pub fn inv_sqrt(n: u64) -> Self {
        Self { a: 0, b: 1, c: n, d: n }
    }

    /// `(√5 - 1)/2`.
    pub fn inverse_golden_mean() -> Self {
        Self { a: -1, b: 1, c: 5, d: 2 }
    }

    /// Same number divided by `k`.
    pub fn divided_by(self, k: u64) -> Self {
        Self { d: self.d * k, ..self }
    }

    pub fn approx(&self) -> f64 {
        (self.a as f64 + self.b as f64 * (self.c as f64).sqrt()) / self.d as f64
    }

    /// Value mod 1 at `bits` precision, within one unit in the last place.
    pub fn to_fraction(&self, bits: u32) -> HighPrecisionFraction {
        let bits = bits.max(MIN_PRECISION_BITS);
        let guard = 8;
        let p = bits + guard;
        let root = (BigUint::from(self.c) << (2 * p)).sqrt();
        let numerator = (BigInt::from(self.a) << p) + BigInt::from(self.b) * BigInt::from_biguint(Sign::Plus, root);
        let scaled = numerator.div_floor(&BigInt::from(self.d));
        let scaled = scaled.div_floor(&(BigInt::one() << guard));
        HighPrecisionFraction::from_signed(scaled, bits)
    }
}

/// A torus coordinate as given in a model description: a surd object
/// `{"a", "b", "c", "d"}` or a plain number.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SeedValue {
    Surd(QuadraticSurd),
    /// Binary value of a double, taken exactly.
    Float(f64),
}

impl SeedValue {
    pub fn to_fraction(&self, bits: u32) -> Result<HighPrecisionFraction> {
        match self {
            SeedValue::Surd(s) => Ok(s.to_fraction(bits)),
            SeedValue::Float(x) => HighPrecisionFraction::from_f64(*x, bits),
        }
    }

    pub fn approx(&self) -> f64 {
        match self {
            SeedValue::Surd(s) => s.approx(),
            SeedValue::Float(x) => *x,
        }
    }
}

impl From<QuadraticSurd> for SeedValue {
    fn from(s: QuadraticSurd) -> Self {
        SeedValue::Surd(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Reference values from mpmath at 60 significant digits.
    const COS_2PI_FRAC_SQRT2: f64 = -0.858_216_185_668_817_691_661_895_692_567_673_9;
    const COS_2PI_INV_SQRT3: f64 = -0.884_205_460_940_946_142_925_949_847_102_942_4;
    const COS_2PI_GOLDEN: f64 = -0.737_368_878_078_319_901_518_240_381_367_410_7;

    #[test]
    fn seed_values_parse_from_numbers_and_surds() {
        let seed: SeedValue = serde_json::from_str("0.25").unwrap();
        assert_eq!(seed, SeedValue::Float(0.25));
        let seed: SeedValue = serde_json::from_str(r#"{"a":-1,"b":1,"c":5,"d":2}"#).unwrap();
        assert_eq!(seed, SeedValue::Surd(QuadraticSurd::inverse_golden_mean()));
        assert_eq!(serde_json::from_str::<SeedValue>(&serde_json::to_string(&seed).unwrap()).unwrap(), seed);
        assert!(serde_json::from_str::<SeedValue>(r#"{"a":1,"b":1,"c":2,"d":0}"#).is_err());
    }

    #[test]
    fn cosine_matches_reference_values() {
        let sqrt2 = QuadraticSurd::new(0, 1, 2, 1).unwrap().to_fraction(256);
        assert!((sqrt2.cos_2pi() - COS_2PI_FRAC_SQRT2).abs() < 3e-16);
        let inv3 = QuadraticSurd::inv_sqrt(3).to_fraction(256);
        assert!((inv3.cos_2pi() - COS_2PI_INV_SQRT3).abs() < 3e-16);
        let golden = QuadraticSurd::inverse_golden_mean().to_fraction(128);
        assert!((golden.cos_2pi() - COS_2PI_GOLDEN).abs() < 3e-16);
    }

    #[test]
    fn cosine_at_dyadic_points() {
        let at = |x: f64| HighPrecisionFraction::from_f64(x, 128).unwrap().cos_2pi();
        assert_eq!(at(0.0), 1.0);
        assert!((at(0.5) + 1.0).abs() < 1e-16);
        assert!(at(0.25).abs() < 1e-16);
        assert!(at(0.75).abs() < 1e-16);
        assert!((at(0.125) - std::f64::consts::FRAC_1_SQRT_2).abs() < 2e-16);
        assert!((at(0.875) - std::f64::consts::FRAC_1_SQRT_2).abs() < 2e-16);
        assert!((at(0.375) + std::f64::consts::FRAC_1_SQRT_2).abs() < 2e-16);
    }

    #[test]
    fn from_f64_is_exact_and_reduces() {
        let f = HighPrecisionFraction::from_f64(-0.25, 64).unwrap();
        assert_eq!(f.to_f64(), 0.75);
        let g = HighPrecisionFraction::from_f64(3.5, 64).unwrap();
        assert_eq!(g.to_f64(), 0.5);
        let tiny = HighPrecisionFraction::from_f64(-1e-300, 64).unwrap();
        assert_eq!(tiny.mantissa(), &((BigUint::one() << 64u32) - 1u32));
        assert!(HighPrecisionFraction::from_f64(f64::NAN, 64).is_err());
    }

    #[test]
    fn precision_is_never_below_minimum() {
        assert_eq!(HighPrecisionFraction::zero(8).bits(), MIN_PRECISION_BITS);
        assert_eq!(QuadraticSurd::inv_sqrt(2).to_fraction(1).bits(), MIN_PRECISION_BITS);
    }

    #[test]
    fn surd_materialization_is_consistent_across_precisions() {
        for s in [
            QuadraticSurd::inv_sqrt(2),
            QuadraticSurd::inv_sqrt(3),
            QuadraticSurd::inverse_golden_mean(),
            QuadraticSurd::new(3, -7, 11, 5).unwrap(),
        ] {
            let lo = s.to_fraction(128);
            let hi = s.to_fraction(512).truncated(128);
            let diff = if lo.mantissa() > hi.mantissa() {
                lo.mantissa() - hi.mantissa()
            } else {
                hi.mantissa() - lo.mantissa()
            };
            assert!(diff <= BigUint::one(), "{s:?}");
            let expected = s.approx().rem_euclid(1.0);
            assert!((lo.to_f64() - expected).abs() < 1e-14, "{s:?}");
        }
    }

    #[test]
    fn rational_surds_are_exact() {
        let third = QuadraticSurd::rational(1, 3).unwrap().to_fraction(64);
        let three_thirds = third.mul_int(&BigInt::from(3));
        // 3 · floor(2^64 / 3) = 2^64 - 1, one unit short of 1.
        assert_eq!(three_thirds.mantissa(), &((BigUint::one() << 64u32) - 1u32));
        assert!(QuadraticSurd::rational(1, 0).is_err());
    }

    proptest! {
        #[test]
        fn add_and_mul_are_exact_mod_one(a in any::<u64>(), b in any::<u64>(), k in -1000i64..1000) {
            let x = HighPrecisionFraction::from_mantissa(BigUint::from(a), 64);
            let y = HighPrecisionFraction::from_mantissa(BigUint::from(b), 64);
            let sum = x.add(&y);
            prop_assert_eq!(sum.mantissa().to_u64().unwrap(), a.wrapping_add(b));
            let prod = x.mul_int(&BigInt::from(k));
            prop_assert_eq!(prod.mantissa().to_u64().unwrap(), a.wrapping_mul(k as u64));
        }

        #[test]
        fn raising_preserves_value(a in any::<u64>(), extra in 0u32..200) {
            let x = HighPrecisionFraction::from_mantissa(BigUint::from(a), 64);
            let raised = x.raised(64 + extra);
            prop_assert_eq!(raised.truncated(64), x.clone());
            prop_assert_eq!(raised.to_f64(), x.to_f64());
        }

        #[test]
        fn cosine_agrees_with_libm(x in 0.0f64..1.0) {
            let f = HighPrecisionFraction::from_f64(x, 1100).unwrap();
            let expected = (2.0 * std::f64::consts::PI * x).cos();
            // libm's own argument 2πx carries a rounding error of about 2^-51.
            prop_assert!((f.cos_2pi() - expected).abs() < 4e-15);
        }
    }
}
