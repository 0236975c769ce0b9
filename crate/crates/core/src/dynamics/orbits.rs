//! Closed-form orbits of the cat map and the skew shift on the 2-torus.
//!
//! `*_iterate(p, n)` returns `T^n p`; `*_orbit(p, len)` returns
//! `T^0 p, ..., T^{len-1} p`. Inputs below the working precision are
//! zero-extended, which keeps their value but cannot add digits a seed never
//! had: materialize irrational seeds at the working precision first.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Result;

use super::fraction::HighPrecisionFraction;
use super::PrecisionPolicy;

/// Point of `T² = (ℝ/ℤ)²`; both coordinates share one precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusPoint {
    pub x: HighPrecisionFraction,
    pub y: HighPrecisionFraction,
}

impl TorusPoint {
    pub fn new(x: HighPrecisionFraction, y: HighPrecisionFraction) -> Self {
        let bits = x.bits().max(y.bits());
        Self { x: x.raised(bits), y: y.raised(bits) }
    }

    pub fn bits(&self) -> u32 {
        self.x.bits()
    }

    pub fn raised(&self, bits: u32) -> Self {
        Self { x: self.x.raised(bits), y: self.y.raised(bits) }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

/// `F_n` with `F_0 = 0`, `F_1 = 1`, extended by `F_{-1} = 1`.
pub fn fibonacci_number(n: i64) -> BigInt {
    if n < 0 {
        // F_{-n} = (-1)^{n+1} F_n.
        let f = fibonacci_number(-n);
        return if n % 2 == 0 { -f } else { f };
    }
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// One application of `(x, y) ↦ (2x + y, x + y)`.
pub fn cat_map_step(p: &TorusPoint) -> TorusPoint {
    let two = BigInt::from(2);
    TorusPoint { x: p.x.mul_int(&two).add(&p.y), y: p.x.add(&p.y) }
}

fn cat_map_closed_form(p: &TorusPoint, f_prev: &BigInt, f_mid: &BigInt, f_next: &BigInt) -> TorusPoint {
    TorusPoint { x: p.x.mul_int(f_next).add(&p.y.mul_int(f_mid)), y: p.x.mul_int(f_mid).add(&p.y.mul_int(f_prev)) }
}

/// Working precision for `T_cat^n`: the policy default, the caller's own
/// precision, and `bitlen(F_{2n+1}) + 64`, whichever is largest.
fn cat_map_working_bits(p: &TorusPoint, n: u64, policy: &PrecisionPolicy) -> Result<u32> {
    let bits = policy.cat_map_bits(n)?;
    let needed = fibonacci_number(2 * n as i64 + 1).bits() + 64;
    policy.resolve(needed.max(bits as u64).max(p.bits() as u64))
}

/// `T_cat^n(x, y) = (F_{2n+1}x + F_{2n}y, F_{2n}x + F_{2n-1}y)` mod 1.
pub fn cat_map_iterate(p: &TorusPoint, n: u64, policy: &PrecisionPolicy) -> Result<TorusPoint> {
    let bits = cat_map_working_bits(p, n, policy)?;
    let p = p.raised(bits);
    let m = n as i64;
    Ok(cat_map_closed_form(&p, &fibonacci_number(2 * m - 1), &fibonacci_number(2 * m), &fibonacci_number(2 * m + 1)))
}

/// `T_cat^k p` for `k = 0..len`, all at the precision required by the last iterate.
pub fn cat_map_orbit(p: &TorusPoint, len: usize, policy: &PrecisionPolicy) -> Result<Vec<TorusPoint>> {
    if len == 0 {
        return Ok(Vec::new());
    }
    let bits = cat_map_working_bits(p, len as u64 - 1, policy)?;
    let p = p.raised(bits);
    // (F_{2k-1}, F_{2k}, F_{2k+1}) starting at k = 0.
    let (mut f_prev, mut f_mid, mut f_next) = (BigInt::one(), BigInt::zero(), BigInt::one());
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(cat_map_closed_form(&p, &f_prev, &f_mid, &f_next));
        let f_next2 = &f_mid + &f_next;
        let f_next3 = &f_next + &f_next2;
        f_prev = f_next;
        f_mid = f_next2;
        f_next = f_next3;
    }
    Ok(out)
}

/// The cat map iterated step by step in double precision. Each step
/// amplifies rounding error by up to `φ² ≈ 2.618`.
pub fn cat_map_orbit_f64(x: f64, y: f64, len: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(len);
    let (mut x, mut y) = (x.rem_euclid(1.0), y.rem_euclid(1.0));
    for _ in 0..len {
        out.push((x, y));
        let nx = (2.0 * x + y).rem_euclid(1.0);
        let ny = (x + y).rem_euclid(1.0);
        x = nx;
        y = ny;
    }
    out
}

/// One application of `(x, y) ↦ (x + γ, x + y)`.
pub fn skew_shift_step(gamma: &HighPrecisionFraction, p: &TorusPoint) -> TorusPoint {
    TorusPoint::new(p.x.add(gamma), p.x.add(&p.y))
}

fn skew_shift_closed_form(gamma: &HighPrecisionFraction, p: &TorusPoint, n: u64) -> TorusPoint {
    let n_big = BigInt::from(n);
    let triangular = BigInt::from(n) * BigInt::from(n.saturating_sub(1)) / 2;
    TorusPoint { x: p.x.add(&gamma.mul_int(&n_big)), y: p.y.add(&p.x.mul_int(&n_big)).add(&gamma.mul_int(&triangular)) }
}

fn skew_working_bits(gamma: &HighPrecisionFraction, p: &TorusPoint, n: u64, policy: &PrecisionPolicy) -> Result<u32> {
    let bits = policy.skew_shift_bits(n)?;
    policy.resolve((bits.max(p.bits()).max(gamma.bits())) as u64)
}

/// `T^n(x, y) = (x + nγ, y + nx + n(n-1)γ/2)` mod 1.
pub fn skew_shift_iterate(
    gamma: &HighPrecisionFraction,
    p: &TorusPoint,
    n: u64,
    policy: &PrecisionPolicy,
) -> Result<TorusPoint> {
    let bits = skew_working_bits(gamma, p, n, policy)?;
    Ok(skew_shift_closed_form(&gamma.raised(bits), &p.raised(bits), n))
}

/// `T^k p` for `k = 0..len`.
pub fn skew_shift_orbit(
    gamma: &HighPrecisionFraction,
    p: &TorusPoint,
    len: usize,
    policy: &PrecisionPolicy,
) -> Result<Vec<TorusPoint>> {
    if len == 0 {
        return Ok(Vec::new());
    }
    let bits = skew_working_bits(gamma, p, len as u64 - 1, policy)?;
    let gamma = gamma.raised(bits);
    let p = p.raised(bits);
    Ok((0..len as u64).map(|k| skew_shift_closed_form(&gamma, &p, k)).collect())
}

impl From<(HighPrecisionFraction, HighPrecisionFraction)> for TorusPoint {
    fn from((x, y): (HighPrecisionFraction, HighPrecisionFraction)) -> Self {
        Self::new(x, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::fraction::QuadraticSurd;
    use crate::error::Error;
    use proptest::prelude::*;

    // mpmath at 50 digits: one step of (2x + y, x + y) from (1/√2, 1/√3).
    const STEP_X: f64 = 0.991_563_831_562_720_813;
    const STEP_Y: f64 = 0.284_457_050_376_173_289;
    // frac(√2).
    const FRAC_SQRT2: f64 = 0.414_213_562_373_095_048_8;

    fn seed(bits: u32) -> TorusPoint {
        TorusPoint::new(QuadraticSurd::inv_sqrt(2).to_fraction(bits), QuadraticSurd::inv_sqrt(3).to_fraction(bits))
    }

    #[test]
    fn fibonacci_numbers() {
        let f: Vec<i64> = (-1..=10).map(|n| fibonacci_number(n).try_into().unwrap()).collect();
        assert_eq!(f, vec![1, 0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55]);
        assert_eq!(fibonacci_number(-2), BigInt::from(-1));
    }

    #[test]
    fn cat_map_one_step_matches_reference() {
        let policy = PrecisionPolicy::default();
        let p = cat_map_iterate(&seed(256), 1, &policy).unwrap();
        let (x, y) = p.to_f64();
        assert!((x - STEP_X).abs() < 1e-15);
        assert!((y - STEP_Y).abs() < 1e-15);
    }

    #[test]
    fn cat_map_trivial_cases() {
        let policy = PrecisionPolicy::default();
        let origin = TorusPoint::new(HighPrecisionFraction::zero(64), HighPrecisionFraction::zero(64));
        for n in [0, 1, 7, 150] {
            let q = cat_map_iterate(&origin, n, &policy).unwrap();
            assert_eq!(q.to_f64(), (0.0, 0.0));
        }
        let s = seed(256);
        let q = cat_map_iterate(&s, 0, &policy).unwrap();
        assert_eq!(q, s.raised(q.bits()));
    }

    #[test]
    fn cat_map_auto_raises_and_caps() {
        let low = seed(64);
        let q = cat_map_iterate(&low, 100, &PrecisionPolicy::default()).unwrap();
        assert!(q.bits() as u64 >= fibonacci_number(201).bits() + 64);
        let tight = PrecisionPolicy { request_bits: None, cap_bits: 128 };
        assert!(matches!(cat_map_iterate(&low, 100, &tight), Err(Error::PrecisionCap { .. })));
    }

    #[test]
    fn cat_map_closed_form_equals_iteration() {
        let policy = PrecisionPolicy::default();
        let orbit = cat_map_orbit(&seed(512), 60, &policy).unwrap();
        let bits = orbit[0].bits();
        let mut p = seed(512).raised(bits);
        for (k, q) in orbit.iter().enumerate() {
            assert_eq!(q, &p, "k = {k}");
            assert_eq!(q, &cat_map_iterate(&seed(512), k as u64, &policy.with_request(Some(bits))).unwrap());
            p = cat_map_step(&p);
        }
    }

    #[test]
    fn double_precision_cat_map_loses_the_orbit() {
        let policy = PrecisionPolicy::default();
        let exact = cat_map_orbit(&seed(1024), 80, &policy).unwrap();
        let float = cat_map_orbit_f64(std::f64::consts::FRAC_1_SQRT_2, 1.0 / 3f64.sqrt(), 80);
        let err = |k: usize| {
            let d = (exact[k].y.to_f64() - float[k].1).abs();
            d.min(1.0 - d)
        };
        assert!(err(5) < 1e-10);
        assert!((40..80).map(err).fold(0.0, f64::max) > 0.1);
    }

    #[test]
    fn skew_shift_half_gamma_seed() {
        let policy = PrecisionPolicy::default();
        let gamma = QuadraticSurd::inv_sqrt(2).to_fraction(256);
        let start = TorusPoint::new(
            QuadraticSurd::inv_sqrt(2).divided_by(2).to_fraction(256),
            HighPrecisionFraction::zero(256),
        );
        let two = skew_shift_iterate(&gamma, &start, 2, &policy).unwrap();
        assert!((two.y.to_f64() - FRAC_SQRT2).abs() < 1e-16);
        let orbit = skew_shift_orbit(&gamma, &start, 50, &policy).unwrap();
        let half_gamma = QuadraticSurd::inv_sqrt(2).divided_by(2).to_fraction(orbit[0].bits());
        for (n, q) in orbit.iter().enumerate() {
            let expected = half_gamma.mul_int(&BigInt::from(n * n));
            let d = (q.y.to_f64() - expected.to_f64()).abs();
            assert!(d.min(1.0 - d) < 1e-15, "n = {n}");
        }
    }

    #[test]
    fn skew_shift_with_zero_gamma_is_a_shear() {
        let policy = PrecisionPolicy::default();
        let gamma = HighPrecisionFraction::zero(128);
        let p = seed(256);
        let q = skew_shift_iterate(&gamma, &p, 5, &policy).unwrap();
        assert_eq!(q.x, p.x.raised(q.bits()));
        assert_eq!(q.y, p.y.add(&p.x.mul_int(&BigInt::from(5))).raised(q.bits()));
    }

    #[test]
    fn skew_orbit_respects_minimum_precision() {
        let gamma = HighPrecisionFraction::from_f64(0.25, 64).unwrap();
        let p = TorusPoint::new(HighPrecisionFraction::zero(64), HighPrecisionFraction::zero(64));
        let orbit = skew_shift_orbit(&gamma, &p, 3, &PrecisionPolicy::default()).unwrap();
        assert!(orbit.iter().all(|q| q.bits() >= 128));
    }

    proptest! {
        #[test]
        fn skew_closed_form_equals_iteration(g in any::<u64>(), x in any::<u64>(), y in any::<u64>(), n in 0u64..40) {
            use num_bigint::BigUint;
            let policy = PrecisionPolicy::default();
            let gamma = HighPrecisionFraction::from_mantissa(BigUint::from(g), 128);
            let p = TorusPoint::new(
                HighPrecisionFraction::from_mantissa(BigUint::from(x), 128),
                HighPrecisionFraction::from_mantissa(BigUint::from(y), 128),
            );
            let closed = skew_shift_iterate(&gamma, &p, n, &policy).unwrap();
            let bits = closed.bits();
            let g2 = gamma.raised(bits);
            let mut q = p.raised(bits);
            for _ in 0..n {
                q = skew_shift_step(&g2, &q);
            }
            prop_assert_eq!(closed, q);
        }

        #[test]
        fn cat_closed_form_equals_iteration_random(x in any::<u64>(), y in any::<u64>(), n in 0u64..30) {
            use num_bigint::BigUint;
            let policy = PrecisionPolicy::default();
            let p = TorusPoint::new(
                HighPrecisionFraction::from_mantissa(BigUint::from(x), 64),
                HighPrecisionFraction::from_mantissa(BigUint::from(y), 64),
            );
            let closed = cat_map_iterate(&p, n, &policy).unwrap();
            let mut q = p.raised(closed.bits());
            for _ in 0..n {
                q = cat_map_step(&q);
            }
            prop_assert_eq!(closed, q);
        }
    }
}
