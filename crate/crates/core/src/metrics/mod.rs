//! Hyperbolic, distance-ratio and quasihyperbolic metrics.
//!
//! The hyperbolic metric `rho` uses the normalisation with curvature `-1`:
//! `sh^2(rho_B(x, y) / 2) = |x - y|^2 / ((1 - |x|^2)(1 - |y|^2))` on the
//! unit ball and `ch rho_H(x, y) = 1 + |x - y|^2 / (2 x_n y_n)` on the
//! half-space.

mod quasihyperbolic;

use rayon::prelude::*;

use crate::domains::{Domain, DomainKind, Point};
use crate::error::{Error, Result};

pub use quasihyperbolic::{quasihyperbolic, GeodesicPath, QuasihyperbolicOptions, QuasihyperbolicResult, SolverDiagnostics};

fn same_dim(x: &Point, y: &Point) -> Result<()> {
    if x.dim() == y.dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: x.dim(), got: y.dim() })
    }
}

/// Hyperbolic distance in the unit ball `B^n`.
pub fn rho_ball(x: &Point, y: &Point) -> Result<f64> {
    same_dim(x, y)?;
    let ball = Domain::unit_ball(x.dim().max(2))?;
    let dx = ball.dist_to_boundary(x)?;
    let dy = ball.dist_to_boundary(y)?;
    // 1 - |x|^2 = d (2 - d) is exact near the sphere
    let denom = dx * (2.0 - dx) * dy * (2.0 - dy);
    let d2 = x.dist(y).powi(2);
    Ok(2.0 * (d2 / denom).sqrt().asinh())
}

/// Hyperbolic distance in the upper half-space `H^n`, evaluated as
/// `2 arsh(|x - y| / (2 sqrt(x_n y_n)))`, which equals
/// `arch(1 + |x - y|^2 / (2 x_n y_n))` without the cancellation near `x = y`.
pub fn rho_halfspace(x: &Point, y: &Point) -> Result<f64> {
    same_dim(x, y)?;
    let h = Domain::half_space(x.dim().max(2))?;
    let dx = h.dist_to_boundary(x)?;
    let dy = h.dist_to_boundary(y)?;
    Ok(2.0 * (x.dist(y) / (2.0 * (dx * dy).sqrt())).asinh())
}

/// Hyperbolic distance for the two domains that carry one.
pub fn rho(domain: &Domain, x: &Point, y: &Point) -> Result<f64> {
    check_points(domain, x, y)?;
    match domain.kind() {
        DomainKind::UnitBall => rho_ball(x, y),
        DomainKind::HalfSpace => rho_halfspace(x, y),
        _ => Err(Error::Unsupported(format!("no closed-form hyperbolic metric on {domain}"))),
    }
}

fn check_points(domain: &Domain, x: &Point, y: &Point) -> Result<(f64, f64)> {
    Ok((domain.dist_to_boundary(x)?, domain.dist_to_boundary(y)?))
}

/// Distance-ratio metric `j_G(x, y) = log(1 + |x - y| / min(d(x), d(y)))`.
pub fn j_metric(domain: &Domain, x: &Point, y: &Point) -> Result<f64> {
    let (dx, dy) = check_points(domain, x, y)?;
    Ok((x.dist(y) / dx.min(dy)).ln_1p())
}

/// Lower bound `k_G(x, y) >= |log(d(x) / d(y))|`.
pub fn k_lower_bound_logratio(domain: &Domain, x: &Point, y: &Point) -> Result<f64> {
    let (dx, dy) = check_points(domain, x, y)?;
    Ok((dx / dy).ln().abs())
}

/// Lower bound `k_G(x, y) >= log(1 + |x - y| / d(x))`. Not symmetric.
pub fn k_lower_bound_log1p(domain: &Domain, x: &Point, y: &Point) -> Result<f64> {
    let (dx, _) = check_points(domain, x, y)?;
    Ok((x.dist(y) / dx).ln_1p())
}

/// Outcome of an empirical uniformity sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformityReport {
    /// `max k_G / j_G` over the checked pairs, `0` when nothing was checked.
    pub max_ratio: f64,
    pub checked: usize,
    /// Pairs with `x = y`.
    pub skipped: usize,
}

/// Empirical uniformity constant `max k_G(x, y) / j_G(x, y)` over the given
/// pairs, using the numerical quasihyperbolic distance.
pub fn uniformity_ratio_pairs(domain: &Domain, pairs: &[(Point, Point)], opts: &QuasihyperbolicOptions) -> Result<UniformityReport> {
    let ratios: Vec<Option<f64>> = pairs
        .par_iter()
        .map(|(x, y)| {
            if x == y {
                return Ok(None);
            }
            let k = quasihyperbolic(domain, x, y, opts)?.value;
            let j = j_metric(domain, x, y)?;
            Ok(Some(k / j))
        })
        .collect::<Result<_>>()?;
    let checked: Vec<f64> = ratios.iter().flatten().copied().collect();
    Ok(UniformityReport {
        max_ratio: checked.iter().copied().fold(0.0, f64::max),
        checked: checked.len(),
        skipped: ratios.len() - checked.len(),
    })
}

/// Seeded variant of [`uniformity_ratio_pairs`] over `pairs` sampled pairs.
pub fn uniformity_ratio(domain: &Domain, pairs: usize, seed: u64, margin: f64, opts: &QuasihyperbolicOptions) -> Result<UniformityReport> {
    let pts = domain.sample_interior(2 * pairs, seed, margin)?;
    let pairs: Vec<(Point, Point)> = pts.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect();
    uniformity_ratio_pairs(domain, &pairs, opts)
}
