//! Closed real intervals and the interval-number distance used to score
//! observations against anchors.
//!
//! The squared distance integrates the squared gap between the two
//! intervals' parametrised points over `x ∈ [-1/2, 1/2]`:
//!
//! ```text
//! D²(A, B) = ∫ ([mid(A) + x·w(A)] − [mid(B) + x·w(B)])² dx
//!          = (mid(A) − mid(B))² + (w(A) − w(B))² / 12
//! ```
//!
//! [`DistanceVariant::Coupled`] is that closed form. [`DistanceVariant::Printed`]
//! adds the widths instead of subtracting them; it is not a metric (an
//! interval is at positive distance from itself) but it is kept selectable
//! because some reference figures were computed with it.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A closed interval `[lo, hi]`. A degenerate interval stands for a crisp value.
#[derive(Debug, Clone, PartialEq)]
pub struct Interval<T> {
    lo: T,
    hi: T,
}

impl<T: Scalar> Interval<T> {
    /// Builds `[lo, hi]`, rejecting `lo > hi`. Bounds are never swapped.
    pub fn new(lo: T, hi: T) -> Result<Self> {
        let (lo_f, hi_f) = (lo.to_real(), hi.to_real());
        if lo_f.is_nan() || hi_f.is_nan() {
            return Err(Error::NonFiniteBound);
        }
        if lo > hi {
            return Err(Error::InvalidInterval { lo: lo_f, hi: hi_f });
        }
        Ok(Self { lo, hi })
    }

    /// A crisp observation `[value, value]`.
    pub fn point(value: T) -> Self {
        Self {
            lo: value.clone(),
            hi: value,
        }
    }

    pub fn lo(&self) -> &T {
        &self.lo
    }

    pub fn hi(&self) -> &T {
        &self.hi
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> T {
        (self.lo.clone() + self.hi.clone()) / T::from_int(2)
    }

    pub fn width(&self) -> T {
        self.hi.clone() - self.lo.clone()
    }

    /// Both endpoints moved by `offset`.
    pub fn shifted(&self, offset: T) -> Self {
        Self {
            lo: self.lo.clone() + offset.clone(),
            hi: self.hi.clone() + offset,
        }
    }

    pub fn distance_sq(&self, other: &Self, variant: DistanceVariant) -> T {
        distance_sq(self, other, variant)
    }

    pub fn similarity(&self, other: &Self, variant: DistanceVariant) -> T {
        similarity(self, other, variant)
    }
}

impl<T: Scalar> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// How the width term of the squared distance combines the two widths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DistanceVariant {
    /// `(w(A) − w(B))² / 12`: the exact value of the defining integral.
    #[default]
    Coupled,
    /// `(w(A) + w(B))² / 12`.
    Printed,
}

impl DistanceVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            DistanceVariant::Coupled => "coupled",
            DistanceVariant::Printed => "printed",
        }
    }
}

impl fmt::Display for DistanceVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DistanceVariant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "coupled" => Ok(DistanceVariant::Coupled),
            "printed" => Ok(DistanceVariant::Printed),
            other => Err(format!(
                "unknown distance variant `{other}` (expected `coupled` or `printed`)"
            )),
        }
    }
}

pub fn midpoint<T: Scalar>(a: &Interval<T>) -> T {
    a.midpoint()
}

pub fn width<T: Scalar>(a: &Interval<T>) -> T {
    a.width()
}

/// Squared interval distance under the chosen variant. Symmetric and non-negative.
pub fn distance_sq<T: Scalar>(a: &Interval<T>, b: &Interval<T>, variant: DistanceVariant) -> T {
    let mid_gap = a.midpoint() - b.midpoint();
    let width_term = match variant {
        DistanceVariant::Coupled => a.width() - b.width(),
        DistanceVariant::Printed => a.width() + b.width(),
    };
    mid_gap.clone() * mid_gap + width_term.clone() * width_term / T::from_int(12)
}

/// `1 / (1 + D²)`, in `(0, 1]`.
pub fn similarity<T: Scalar>(a: &Interval<T>, b: &Interval<T>, variant: DistanceVariant) -> T {
    T::one() / (T::one() + distance_sq(a, b, variant))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use proptest::prelude::*;

    fn iv(lo: f64, hi: f64) -> Interval<f64> {
        Interval::new(lo, hi).unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn ivq(lo: i64, hi: i64) -> Interval<Rational> {
        Interval::new(q(lo), q(hi)).unwrap()
    }

    /// Midpoint-rule quadrature of the defining integral.
    fn integral_distance_sq(a: &Interval<f64>, b: &Interval<f64>) -> f64 {
        let n = 20_000;
        let h = 1.0 / n as f64;
        (0..n)
            .map(|k| {
                let x = -0.5 + (k as f64 + 0.5) * h;
                let pa = a.midpoint() + x * a.width();
                let pb = b.midpoint() + x * b.width();
                (pa - pb).powi(2) * h
            })
            .sum()
    }

    #[test]
    fn midpoint_and_width() {
        assert_eq!(iv(3.0, 6.0).midpoint(), 4.5);
        assert_eq!(iv(7.0, 7.0).midpoint(), 7.0);
        assert_eq!(iv(135.0, 165.0).midpoint(), 150.0);
        assert_eq!(iv(3.0, 6.0).width(), 3.0);
        assert_eq!(iv(7.0, 7.0).width(), 0.0);
        assert_eq!(iv(101.0, 150.0).width(), 49.0);
    }

    #[test]
    fn rejects_reversed_bounds() {
        assert_eq!(
            Interval::new(150.0, 101.0),
            Err(Error::InvalidInterval {
                lo: 150.0,
                hi: 101.0
            })
        );
        assert_eq!(Interval::new(f64::NAN, 1.0), Err(Error::NonFiniteBound));
    }

    #[test]
    fn printed_variant_worked_example_is_exact() {
        let c = ivq(3, 6);
        let d_a = distance_sq(&c, &ivq(0, 5), DistanceVariant::Printed);
        let d_b = distance_sq(&c, &ivq(5, 10), DistanceVariant::Printed);
        assert_eq!(d_a, Rational::new(28.into(), 3.into()));
        assert_eq!(d_b, Rational::new(43.into(), 3.into()));
        assert_eq!(
            similarity(&c, &ivq(0, 5), DistanceVariant::Printed),
            Rational::new(3.into(), 31.into())
        );
        assert_eq!(
            similarity(&c, &ivq(5, 10), DistanceVariant::Printed),
            Rational::new(3.into(), 46.into())
        );
    }

    #[test]
    fn coupled_variant_matches_printed_distances() {
        let obs = iv(165.0, 180.0);
        let d = distance_sq(&obs, &iv(185.0, 215.0), DistanceVariant::Coupled);
        assert!((d - 775.0).abs() < 1e-9);
        assert!((d.sqrt() - 27.8388).abs() < 1e-4);

        let d = distance_sq(&obs, &iv(101.0, 150.0), DistanceVariant::Coupled);
        assert!((d - 2_305.333_333_333_333).abs() < 1e-9);
        assert!((d.sqrt() - 48.0139).abs() < 1e-4);

        let s = similarity(&obs, &iv(151.0, 200.0), DistanceVariant::Coupled);
        assert!((s - 0.009404).abs() < 1e-6);
    }

    /// Only the shifted `[101,150]` anchor under the coupled form gives 48.0139.
    #[test]
    fn low_anchor_candidates_resolve_uniquely() {
        let obs = iv(165.0, 180.0);
        let mut matches = Vec::new();
        for lo in [100.0, 101.0] {
            for variant in [DistanceVariant::Coupled, DistanceVariant::Printed] {
                let d = distance_sq(&obs, &iv(lo, 150.0), variant).sqrt();
                if (d - 48.0139).abs() < 5e-5 {
                    matches.push((lo, variant));
                }
            }
        }
        assert_eq!(matches, vec![(101.0, DistanceVariant::Coupled)]);
    }

    #[test]
    fn degenerate_intervals_reduce_to_squared_difference() {
        for variant in [DistanceVariant::Coupled, DistanceVariant::Printed] {
            assert_eq!(distance_sq(&iv(3.0, 3.0), &iv(7.0, 7.0), variant), 16.0);
        }
    }

    #[test]
    fn self_similarity_is_one_under_coupled() {
        let a = iv(12.5, 40.0);
        assert_eq!(similarity(&a, &a, DistanceVariant::Coupled), 1.0);
    }

    #[test]
    fn coupled_matches_quadrature_of_integral() {
        let pairs = [
            (iv(165.0, 180.0), iv(101.0, 150.0)),
            (iv(3.0, 6.0), iv(0.0, 5.0)),
            (iv(-2.0, 9.0), iv(4.0, 4.0)),
        ];
        for (a, b) in pairs {
            let exact = distance_sq(&a, &b, DistanceVariant::Coupled);
            let quad = integral_distance_sq(&a, &b);
            assert!(
                (exact - quad).abs() < 1e-6 * (1.0 + exact),
                "{a} {b}: {exact} vs {quad}"
            );
        }
    }

    #[test]
    fn variant_parsing() {
        assert_eq!(
            "Printed".parse::<DistanceVariant>(),
            Ok(DistanceVariant::Printed)
        );
        assert_eq!(
            "coupled".parse::<DistanceVariant>(),
            Ok(DistanceVariant::Coupled)
        );
        assert!("euclid".parse::<DistanceVariant>().is_err());
        assert_eq!(DistanceVariant::default(), DistanceVariant::Coupled);
    }

    fn arb_interval() -> impl Strategy<Value = Interval<f64>> {
        (-1000.0..1000.0f64, 0.0..200.0f64).prop_map(|(lo, w)| iv(lo, lo + w))
    }

    fn arb_variant() -> impl Strategy<Value = DistanceVariant> {
        prop_oneof![
            Just(DistanceVariant::Coupled),
            Just(DistanceVariant::Printed)
        ]
    }

    proptest! {
        #[test]
        fn symmetric_and_non_negative(a in arb_interval(), b in arb_interval(), v in arb_variant()) {
            let ab = distance_sq(&a, &b, v);
            prop_assert!(ab >= 0.0);
            prop_assert_eq!(ab, distance_sq(&b, &a, v));
        }

        #[test]
        fn identity_holds_only_for_coupled(a in arb_interval()) {
            prop_assert_eq!(distance_sq(&a, &a, DistanceVariant::Coupled), 0.0);
            let printed = distance_sq(&a, &a, DistanceVariant::Printed);
            let expected = a.width() * a.width() * 4.0 / 12.0;
            prop_assert!((printed - expected).abs() <= 1e-9 * (1.0 + expected));
            if a.width() > 0.0 {
                prop_assert!(printed > 0.0);
            }
        }

        #[test]
        fn translation_invariant(a in arb_interval(), b in arb_interval(), c in -500i32..500, v in arb_variant()) {
            // Integer endpoints keep the check exact.
            let a = ivq(a.lo().round() as i64, a.hi().round() as i64);
            let b = ivq(b.lo().round() as i64, b.hi().round() as i64);
            let shift = q(c as i64);
            prop_assert_eq!(
                distance_sq(&a.shifted(shift.clone()), &b.shifted(shift), v),
                distance_sq(&a, &b, v)
            );
        }

        #[test]
        fn similarity_in_unit_interval_and_monotone(a in arb_interval(), b in arb_interval(), c in arb_interval(), v in arb_variant()) {
            let (dab, dac) = (distance_sq(&a, &b, v), distance_sq(&a, &c, v));
            let (sab, sac) = (similarity(&a, &b, v), similarity(&a, &c, v));
            prop_assert!(sab > 0.0 && sab <= 1.0);
            if dab < dac {
                prop_assert!(sab >= sac);
            }
        }

        #[test]
        fn similarity_strictly_decreasing_in_exact_arithmetic(x in 0i64..50, gap in 1i64..50, v in arb_variant()) {
            let origin = Interval::point(q(0));
            let near = similarity(&origin, &Interval::point(q(x)), v);
            let far = similarity(&origin, &Interval::point(q(x + gap)), v);
            prop_assert!(near > far);
        }

        #[test]
        fn point_intervals_reduce_exactly(x in -1000i64..1000, y in -1000i64..1000, v in arb_variant()) {
            let d = distance_sq(&Interval::point(q(x)), &Interval::point(q(y)), v);
            prop_assert_eq!(d, q((x - y) * (x - y)));
        }
    }
}
