//! Failure of the quasiregular Harnack constant when the image boundary has
//! an isolated point.
//!
//! `f(z) = exp((z+1)/(z-1))` maps the unit disk onto the punctured disk.
//! Along `x_p = th(p/2)` the ratio `|f(x_p)/f(x_{p+1})| = exp(e^{p+1} - e^p)`
//! is unbounded, while the constant bound obtained through
//! `rho(x_p, x_{p+1}) = 1` stays fixed.

use serde::Serialize;

use crate::domains::Point;
use crate::error::{require_open, Error, Result};
use crate::harnack::DistortionParams;
use crate::metrics::rho_ball;
use crate::specfun::sphere_surface_area;
use crate::verify::VerificationRecord;

/// One row of the comparison, in log space.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CounterexampleRow {
    pub p: usize,
    /// `log |f(x_p) / f(x_{p+1})| = e^{p+1} - e^p`.
    pub log_lhs: f64,
    pub log_rhs: f64,
    /// Hyperbolic distance of `x_p` and `x_{p+1}`, when both are
    /// representable as interior points.
    pub rho: Option<f64>,
    pub pass: bool,
}

impl CounterexampleRow {
    /// `exp(log_rhs)`.
    pub fn rhs(&self) -> f64 {
        self.log_rhs.exp()
    }

    pub fn record(&self) -> VerificationRecord {
        VerificationRecord::check(vec![("p".into(), self.p as f64)], self.log_lhs, self.log_rhs, 0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub rows: Vec<CounterexampleRow>,
    /// First `p` at which the bound fails.
    pub p0: Option<usize>,
}

/// Tabulates both sides for `p = 1..=p_max`.
pub fn counterexample_remark(p_max: usize, s: f64, params: &DistortionParams) -> Result<Counterexample> {
    if p_max == 0 {
        return Err(Error::InvalidParameter("p_max must be at least 1".into()));
    }
    require_open("s", s, 0.0, 1.0, "0 < s < 1")?;
    let n = params.n();
    let omega = sphere_surface_area(n)?;
    // the right-hand side is evaluated at rho(x_p, x_{p+1}) = 1
    let rho_sub = 1.0f64;
    let l = (s / (2.0 * rho_sub).exp_m1()).ln();
    let log_rhs = params.a() * params.k_i() / params.c_n() * omega * l.powi(1 - n as i32);

    let rows: Vec<CounterexampleRow> = (1..=p_max)
        .map(|p| {
            let pf = p as f64;
            let log_lhs = pf.exp() * std::f64::consts::E - pf.exp();
            let (a, b) = ((0.5 * pf).tanh(), (0.5 * (pf + 1.0)).tanh());
            let rho = if b < 1.0 {
                rho_ball(&Point::from([a, 0.0]), &Point::from([b, 0.0])).ok()
            } else {
                None
            };
            CounterexampleRow {
                p,
                log_lhs,
                log_rhs,
                rho,
                pass: log_lhs <= log_rhs,
            }
        })
        .collect();
    let p0 = rows.iter().find(|r| !r.pass).map(|r| r.p);
    Ok(Counterexample { rows, p0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{E, PI};

    #[test]
    fn default_table() {
        let params = DistortionParams::new(1.0, 2).unwrap();
        let c = counterexample_remark(6, 0.5, &params).unwrap();
        assert_eq!(c.rows.len(), 6);
        assert_abs_diff_eq!(c.rows[0].log_lhs, E * E - E, epsilon = 1e-13);
        assert_abs_diff_eq!(c.rows[0].log_lhs, 4.6708, epsilon = 1e-4);
        // 2 pi / log(0.5 / (e^2 - 1))
        let expected = 2.0 * PI / (0.5 / (E * E - 1.0)).ln();
        assert_abs_diff_eq!(c.rows[0].log_rhs, expected, epsilon = 1e-13);
        assert!(c.p0.unwrap() <= 3);
        assert!(c.rows.iter().skip(c.p0.unwrap() - 1).all(|r| !r.pass));
        let gaps: Vec<f64> = c.rows.iter().map(|r| r.log_lhs - r.log_rhs).collect();
        assert!(gaps.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn consecutive_points_are_one_apart() {
        let params = DistortionParams::new(1.0, 2).unwrap();
        let c = counterexample_remark(5, 0.5, &params).unwrap();
        for r in &c.rows {
            assert_abs_diff_eq!(r.rho.unwrap(), 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn large_p_stays_finite_in_log_space() {
        let params = DistortionParams::new(1.0, 2).unwrap();
        let c = counterexample_remark(40, 0.5, &params).unwrap();
        let last = c.rows.last().unwrap();
        assert!(last.log_lhs.is_finite() && last.log_lhs > 700.0);
        assert!(last.rho.is_none());
        assert!(!last.record().pass);
    }

    #[test]
    fn errors() {
        let params = DistortionParams::new(1.0, 2).unwrap();
        assert!(counterexample_remark(0, 0.5, &params).is_err());
        assert!(counterexample_remark(3, 1.0, &params).is_err());
    }
}
