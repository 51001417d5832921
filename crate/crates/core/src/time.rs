//! Evolution times, kept exact when they are rational multiples of pi.
//!
//! Gate times like `7pi/4` and checkpoint sums like `59pi/4` are stored as
//! integer fractions and only converted to floating point when a walk is
//! actually evolved, so composing schedules never accumulates rounding error.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Sub};

use num_rational::Ratio;

/// A nonnegative (for durations) or general (for phase angles) time value.
#[derive(Debug, Clone, Copy)]
pub enum Time {
    /// An exact rational multiple of pi: `PiRational(r)` is `r * pi`.
    PiRational(Ratio<i64>),
    /// An arbitrary time in radians.
    Real(f64),
}

impl Time {
    pub const ZERO: Time = Time::PiRational(Ratio::new_raw(0, 1));

    /// `p * pi / q`.
    pub fn pi_frac(p: i64, q: i64) -> Time {
        Time::PiRational(Ratio::new(p, q))
    }

    pub fn real(t: f64) -> Time {
        Time::Real(t)
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Time::PiRational(r) => (*r.numer() as f64) / (*r.denom() as f64) * PI,
            Time::Real(t) => t,
        }
    }

    pub fn is_zero(self) -> bool {
        match self {
            Time::PiRational(r) => *r.numer() == 0,
            Time::Real(t) => t == 0.0,
        }
    }

    pub fn is_negative(self) -> bool {
        match self {
            Time::PiRational(r) => *r.numer() < 0,
            Time::Real(t) => t < 0.0,
        }
    }

    /// Reduce an angle into `[0, 2pi)`, staying exact for rational inputs.
    pub fn normalize_angle(self) -> Time {
        match self {
            Time::PiRational(r) => {
                let two = Ratio::new(2, 1);
                let mut r = r % two;
                if r < Ratio::new(0, 1) {
                    r += two;
                }
                Time::PiRational(r)
            }
            Time::Real(t) => {
                let t = t.rem_euclid(2.0 * PI);
                Time::Real(t)
            }
        }
    }
}

impl Add for Time {
    type Output = Time;
    fn add(self, rhs: Time) -> Time {
        match (self, rhs) {
            (Time::PiRational(a), Time::PiRational(b)) => Time::PiRational(a + b),
            (a, b) => Time::Real(a.as_f64() + b.as_f64()),
        }
    }
}

impl Sub for Time {
    type Output = Time;
    fn sub(self, rhs: Time) -> Time {
        match (self, rhs) {
            (Time::PiRational(a), Time::PiRational(b)) => Time::PiRational(a - b),
            (a, b) => Time::Real(a.as_f64() - b.as_f64()),
        }
    }
}

impl PartialEq for Time {
    /// Rational-vs-rational compares exactly; anything else compares the
    /// floating-point values, so `Real(0.0)` equals the rational zero.
    fn eq(&self, other: &Time) -> bool {
        match (self, other) {
            (Time::PiRational(a), Time::PiRational(b)) => a == b,
            (a, b) => a.as_f64() == b.as_f64(),
        }
    }
}

impl PartialOrd for Time {
    fn partial_cmp(&self, other: &Time) -> Option<Ordering> {
        match (self, other) {
            (Time::PiRational(a), Time::PiRational(b)) => a.partial_cmp(b),
            (a, b) => a.as_f64().partial_cmp(&b.as_f64()),
        }
    }
}

impl fmt::Display for Time {
    /// `0`, `2pi`, `7pi/4`, or a plain decimal.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Time::PiRational(r) => {
                let (p, q) = (*r.numer(), *r.denom());
                if p == 0 {
                    write!(f, "0")
                } else if q == 1 {
                    write!(f, "{p}pi")
                } else {
                    write!(f, "{p}pi/{q}")
                }
            }
            // 17 significant digits: enough to reparse the exact f64.
            Time::Real(t) => write!(f, "{t:.16e}"),
        }
    }
}

/// Parse a duration token: `<p>pi/<q>`, `<p>pi`, `pi`, or a decimal.
pub fn parse_time(token: &str) -> Option<Time> {
    if let Some(idx) = token.find("pi") {
        let (num, rest) = token.split_at(idx);
        let rest = &rest[2..];
        let p: i64 = if num.is_empty() {
            1
        } else if num == "-" {
            -1
        } else {
            num.parse().ok()?
        };
        let q: i64 = if rest.is_empty() {
            1
        } else {
            let rest = rest.strip_prefix('/')?;
            rest.parse().ok()?
        };
        if q == 0 {
            return None;
        }
        Some(Time::pi_frac(p, q))
    } else {
        let t: f64 = token.parse().ok()?;
        if t.is_finite() {
            Some(Time::Real(t))
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sums_stay_exact() {
        // 13pi/4 + 2pi + 13pi/4 = 17pi/2
        let t = Time::pi_frac(13, 4) + Time::pi_frac(2, 1) + Time::pi_frac(13, 4);
        assert_eq!(t, Time::pi_frac(17, 2));
    }

    #[test]
    fn display_forms() {
        assert_eq!(Time::pi_frac(7, 4).to_string(), "7pi/4");
        assert_eq!(Time::pi_frac(2, 1).to_string(), "2pi");
        assert_eq!(Time::ZERO.to_string(), "0");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["7pi/4", "2pi", "0", "3pi/2", "pi", "-1pi/2"] {
            let t = parse_time(s).unwrap();
            let back = parse_time(&t.to_string()).unwrap();
            assert_eq!(t, back);
        }
        assert_eq!(parse_time("1.5").unwrap().as_f64(), 1.5);
        assert!(parse_time("pi/0").is_none());
        assert!(parse_time("abc").is_none());
    }

    #[test]
    fn angle_normalization() {
        assert_eq!(Time::pi_frac(9, 2).normalize_angle(), Time::pi_frac(1, 2));
        assert_eq!(Time::pi_frac(-1, 2).normalize_angle(), Time::pi_frac(3, 2));
    }
}
