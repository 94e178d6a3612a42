//! Log-factorials, associated Laguerre polynomials and log-domain assembly of
//! the `sqrt(m!/k!) theta^|m-k| exp(-theta^2/2) L` amplitudes that appear in
//! every displaced-number-state closed form.

use std::sync::RwLock;

use crate::error::{Error, Result};

static LN_FACTORIALS: RwLock<Vec<f64>> = RwLock::new(Vec::new());

/// `ln(n!)`, summed cumulatively into a shared table that grows on demand.
pub fn log_factorial(n: usize) -> f64 {
    {
        let table = LN_FACTORIALS.read().unwrap_or_else(|e| e.into_inner());
        if let Some(&v) = table.get(n) {
            return v;
        }
    }
    let mut table = LN_FACTORIALS.write().unwrap_or_else(|e| e.into_inner());
    if table.is_empty() {
        table.push(0.0);
    }
    while table.len() <= n {
        let j = table.len();
        let next = table[j - 1] + (j as f64).ln();
        table.push(next);
    }
    table[n]
}

// Rescale the recurrence when the running value leaves [1e-150, 1e150].
const RESCALE: f64 = 1e150;

/// `L_k^s(x)` as `(ln|L|, sign)`; `sign` is 0 when the value is exactly zero.
///
/// Upward three-term recurrence in `k`:
/// `(j+1) L_{j+1} = (2j + 1 + s - x) L_j - (j + s) L_{j-1}`,
/// rescaled on the fly so that large orders do not overflow.
pub fn laguerre_ln(k: usize, s: usize, x: f64) -> Result<(f64, f64)> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "Laguerre argument must be finite and nonnegative, got {x}"
        )));
    }
    let sf = s as f64;
    let mut prev = 1.0;
    let mut log_scale = 0.0;
    if k == 0 {
        return Ok((0.0, 1.0));
    }
    let mut cur = 1.0 + sf - x;
    for j in 1..k {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + sf - x) * cur - (jf + sf) * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            prev /= RESCALE;
            cur /= RESCALE;
            log_scale += RESCALE.ln();
        }
    }
    if cur == 0.0 {
        return Ok((f64::NEG_INFINITY, 0.0));
    }
    Ok((cur.abs().ln() + log_scale, cur.signum()))
}

/// Associated Laguerre polynomial `L_k^s(x)` for `x >= 0`.
pub fn assoc_laguerre(k: usize, s: usize, x: f64) -> Result<f64> {
    let (ln_abs, sign) = laguerre_ln(k, s, x)?;
    Ok(sign * ln_abs.exp())
}

/// A real number stored as `sign * exp(log_magnitude)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogAmplitude {
    pub log_magnitude: f64,
    pub sign: f64,
}

impl LogAmplitude {
    pub const ZERO: LogAmplitude = LogAmplitude {
        log_magnitude: f64::NEG_INFINITY,
        sign: 1.0,
    };

    pub fn value(self) -> f64 {
        if self.log_magnitude == f64::NEG_INFINITY {
            0.0
        } else {
            self.sign * self.log_magnitude.exp()
        }
    }
}

/// `sqrt(min!/max!) theta^|m-k| exp(-theta^2/2) L_min^{|m-k|}(theta^2)` in log
/// form, with the sign of the Laguerre factor carried separately.
///
/// `theta = 0` is resolved to the Kronecker delta before any logarithm is
/// taken.
pub fn log_amplitude_prefactor(m: usize, k: usize, theta: f64) -> Result<LogAmplitude> {
    if !(theta >= 0.0) || !theta.is_finite() {
        return Err(Error::Domain(format!(
            "theta must be finite and nonnegative, got {theta}"
        )));
    }
    let (lo, hi) = if m <= k { (m, k) } else { (k, m) };
    let s = hi - lo;
    if theta == 0.0 {
        return Ok(if s == 0 {
            LogAmplitude {
                log_magnitude: 0.0,
                sign: 1.0,
            }
        } else {
            LogAmplitude::ZERO
        });
    }
    let x = theta * theta;
    let (ln_l, sign) = laguerre_ln(lo, s, x)?;
    if sign == 0.0 {
        return Ok(LogAmplitude::ZERO);
    }
    let log_magnitude =
        0.5 * (log_factorial(lo) - log_factorial(hi)) + s as f64 * theta.ln() - 0.5 * x + ln_l;
    Ok(LogAmplitude {
        log_magnitude,
        sign,
    })
}

/// `exp(-x/2) L_k(x)`, the diagonal displaced-number-state element.
pub fn damped_laguerre(k: usize, x: f64) -> Result<f64> {
    let (ln_l, sign) = laguerre_ln(k, 0, x)?;
    if sign == 0.0 {
        return Ok(0.0);
    }
    Ok(sign * (ln_l - 0.5 * x).exp())
}
