//! Sign-tracked log-space accumulation.
//!
//! The closed-form intercept-probability sums mix terms whose magnitudes are
//! products of powers and factorials with shape parameters up to ~64·4, far
//! outside f64 range, while the signed total is order one. Every term is
//! therefore carried as `(sign, ln|term|)` and folded into a running
//! accumulator; the exponential is taken once at the end.

/// Running sum of signed terms represented in log space.
#[derive(Debug, Clone, Copy)]
pub struct SignedLogSum {
    sign: f64,
    ln_abs: f64,
}

impl SignedLogSum {
    pub fn zero() -> Self {
        Self { sign: 0.0, ln_abs: f64::NEG_INFINITY }
    }

    /// Fold in one term `sign · exp(ln_abs)`.
    pub fn add(&mut self, sign: f64, ln_abs: f64) {
        if ln_abs == f64::NEG_INFINITY || sign == 0.0 {
            return;
        }
        if self.sign == 0.0 {
            self.sign = sign;
            self.ln_abs = ln_abs;
            return;
        }
        // keep the larger magnitude as the base
        let (base_sign, base_ln, other_sign, other_ln) = if self.ln_abs >= ln_abs {
            (self.sign, self.ln_abs, sign, ln_abs)
        } else {
            (sign, ln_abs, self.sign, self.ln_abs)
        };
        let factor = base_sign * other_sign * (other_ln - base_ln).exp();
        let scaled = 1.0 + factor; // in [0, 2] for same signs, may vanish for opposite
        if scaled == 0.0 {
            *self = Self::zero();
        } else {
            self.sign = base_sign * scaled.signum();
            self.ln_abs = base_ln + scaled.abs().ln();
        }
    }

    pub fn sign(&self) -> f64 {
        self.sign
    }

    pub fn ln_abs(&self) -> f64 {
        self.ln_abs
    }

    /// Collapse to a plain double (may under/overflow, by design).
    pub fn value(&self) -> f64 {
        self.sign * self.ln_abs.exp()
    }

    /// `1 - sum`, evaluated with `expm1` so that totals very close to one
    /// still resolve tiny differences.
    pub fn one_minus(&self) -> f64 {
        if self.sign == 0.0 {
            1.0
        } else if self.sign > 0.0 {
            -self.ln_abs.exp_m1()
        } else {
            1.0 + self.ln_abs.exp()
        }
    }
}
