//! Numbers carried as `mant * exp(log_scale)`.
//!
//! Integrands on semi-infinite intervals are sampled out to |y| ~ 1e250, where
//! individual power factors overflow while their product stays moderate. All
//! evaluation paths that can reach such arguments return a [`Scaled`] and only
//! collapse it to an `f64` at the end.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub mant: f64,
    pub log_scale: f64,
}

/// Largest log-magnitude that still fits in an f64.
pub const LN_MAX: f64 = 709.782_712_893_384;

impl Scaled {
    pub const ZERO: Scaled = Scaled { mant: 0.0, log_scale: 0.0 };
    pub const ONE: Scaled = Scaled { mant: 1.0, log_scale: 0.0 };

    pub fn new(mant: f64, log_scale: f64) -> Self {
        Scaled { mant, log_scale }
    }

    pub fn from_f64(v: f64) -> Self {
        Scaled { mant: v, log_scale: 0.0 }
    }

    /// `sign * exp(ln_abs)`.
    pub fn from_log(sign: f64, ln_abs: f64) -> Self {
        Scaled { mant: sign, log_scale: ln_abs }
    }

    pub fn is_zero(self) -> bool {
        self.mant == 0.0
    }

    /// Natural log of the magnitude; `-inf` for zero.
    pub fn ln_abs(self) -> f64 {
        if self.mant == 0.0 {
            f64::NEG_INFINITY
        } else {
            self.mant.abs().ln() + self.log_scale
        }
    }

    pub fn signum(self) -> f64 {
        if self.mant == 0.0 {
            0.0
        } else {
            self.mant.signum()
        }
    }

    /// Collapse to f64; overflows to ±inf and underflows to 0.
    pub fn value(self) -> f64 {
        if self.mant == 0.0 {
            return 0.0;
        }
        if self.log_scale == 0.0 {
            return self.mant;
        }
        self.mant.signum() * self.ln_abs().exp()
    }

    /// Collapse to f64, reporting overflow instead of returning inf.
    pub fn try_value(self) -> Result<f64> {
        let l = self.ln_abs();
        if l > LN_MAX {
            return Err(Error::Overflow(l));
        }
        Ok(self.value())
    }

    pub fn mul_f64(self, v: f64) -> Self {
        Scaled { mant: self.mant * v, log_scale: self.log_scale }
    }

    /// Multiply by `exp(dl)`.
    pub fn shift(self, dl: f64) -> Self {
        Scaled { mant: self.mant, log_scale: self.log_scale + dl }
    }

    /// Fold the mantissa magnitude into the scale so `|mant|` is 1 (or 0).
    pub fn normalized(self) -> Self {
        if self.mant == 0.0 || !self.mant.is_finite() {
            return self;
        }
        Scaled { mant: self.mant.signum(), log_scale: self.ln_abs() }
    }

    /// Weighted sum of values sharing no common scale.
    pub fn linear_combination(terms: &[(f64, Scaled)]) -> Self {
        let l = terms
            .iter()
            .filter(|(w, s)| *w != 0.0 && !s.is_zero())
            .map(|(_, s)| s.ln_abs())
            .fold(f64::NEG_INFINITY, f64::max);
        if l == f64::NEG_INFINITY {
            return Scaled::ZERO;
        }
        let mant = terms
            .iter()
            .filter(|(w, s)| *w != 0.0 && !s.is_zero())
            .map(|(w, s)| w * s.signum() * (s.ln_abs() - l).exp())
            .sum();
        Scaled { mant, log_scale: l }
    }
}

impl std::ops::Mul for Scaled {
    type Output = Scaled;

    fn mul(self, o: Scaled) -> Self {
        Scaled { mant: self.mant * o.mant, log_scale: self.log_scale + o.log_scale }
    }
}

impl std::ops::Add for Scaled {
    type Output = Scaled;

    fn add(self, o: Scaled) -> Self {
        if self.mant == 0.0 {
            return o;
        }
        if o.mant == 0.0 {
            return self;
        }
        let a = self.normalized();
        let b = o.normalized();
        let l = a.log_scale.max(b.log_scale);
        Scaled { mant: a.mant * (a.log_scale - l).exp() + b.mant * (b.log_scale - l).exp(), log_scale: l }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_across_scales() {
        let a = Scaled::from_log(1.0, 800.0);
        let b = Scaled::from_log(-1.0, 800.0 + 2f64.ln());
        let s = a + b;
        assert!((s.ln_abs() - 800.0).abs() < 1e-12);
        assert_eq!(s.signum(), -1.0);
        assert!(s.try_value().is_err());
    }

    #[test]
    fn value_roundtrip() {
        let s = Scaled::new(3.0, 2.0);
        assert!((s.value() - 3.0 * 2f64.exp()).abs() < 1e-12);
        assert_eq!(Scaled::ZERO.value(), 0.0);
        assert_eq!(Scaled::new(0.0, 1e6).value(), 0.0);
    }
}
