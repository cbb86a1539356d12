//! Seeded inequality sweeps for the Schwarz-type bounds.

use std::f64::consts::PI;

use rayon::prelude::*;

use super::poisson::{ComplexHarmonic, HarmonicDiskFunction, TrigPolynomial, DEFAULT_NODES};
use super::{
    centering_coefficient, chen_gradient_bound, heinz_bound, interval_gradient_bound, kv_gradient_bound, schwarz_center_bound, DiskSpec,
    IntervalRange, IntervalVariant,
};
use crate::error::{Error, Result};
use crate::sampling::{in_disk, stream};
use crate::verify::VerificationRecord;

/// Keeps sample points apart from the generator of the sampled function.
const POINT_STREAM_SALT: u64 = 0xbb67_ae85_84ca_a73b;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions {
    pub samples: usize,
    pub seed: u64,
    /// Absolute slack added to the reported quadrature error.
    pub slack: f64,
    /// Samples satisfy `|z - a| <= max_radius * R`.
    pub max_radius: f64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            samples: 1000,
            seed: 0,
            slack: 1e-8,
            max_radius: 0.95,
        }
    }
}

impl SweepOptions {
    fn points(&self, disk: &DiskSpec) -> Result<Vec<[f64; 2]>> {
        if !(self.max_radius > 0.0 && self.max_radius < 1.0) {
            return Err(Error::OutOfDomain {
                name: "max_radius",
                value: self.max_radius,
                expected: "0 < max_radius < 1",
            });
        }
        let a = disk.center();
        Ok((0..self.samples as u64)
            .map(|i| {
                let w = in_disk(&mut stream(self.seed ^ POINT_STREAM_SALT, i), self.max_radius * disk.radius());
                [a[0] + w[0], a[1] + w[1]]
            })
            .collect())
    }
}

fn inputs(z: [f64; 2]) -> Vec<(String, f64)> {
    vec![("z_re".into(), z[0]), ("z_im".into(), z[1])]
}

fn relative_abs(disk: &DiskSpec, z: [f64; 2]) -> f64 {
    (z[0] - disk.center()[0]).hypot(z[1] - disk.center()[1])
}

fn sweep<T: Send>(points: &[[f64; 2]], f: impl Fn([f64; 2]) -> Result<T> + Sync) -> Result<Vec<T>> {
    points.par_iter().map(|z| f(*z)).collect()
}

/// `|u(z) - c(|z-a|) u(a)| <= (2M/pi) arctan(2R|z-a| / (R^2 - |z-a|^2))`.
pub fn schwarz_deviation_at(f: &HarmonicDiskFunction, z: [f64; 2], slack: f64) -> Result<VerificationRecord> {
    let disk = f.disk();
    let r = relative_abs(disk, z);
    let u = f.eval(z)?;
    let center = f.mean_value();
    let c = centering_coefficient(disk, r)?;
    let lhs = (u.value - c * center.value).abs();
    let rhs = schwarz_center_bound(disk, r)?;
    Ok(VerificationRecord::check(inputs(z), lhs, rhs, slack + u.error + c * center.error))
}

/// Schwarz-lemma sweep for a function bounded by `M` on its disk.
pub fn schwarz_deviation_check(f: &HarmonicDiskFunction, opts: &SweepOptions) -> Result<Vec<VerificationRecord>> {
    let m = f.disk().bound();
    let sup = f.boundary_sup();
    if sup > m * (1.0 + 1e-12) {
        return Err(Error::InvalidInput(format!("boundary values reach {sup}, above the bound M = {m}")));
    }
    sweep(&opts.points(f.disk())?, |z| schwarz_deviation_at(f, z, opts.slack))
}

/// `|f(z)| <= (4/pi) arctan(|z - a|/R)`.
pub fn heinz_at(f: &ComplexHarmonic, z: [f64; 2], slack: f64) -> Result<VerificationRecord> {
    let disk = f.disk();
    let (v, err) = f.eval(z)?;
    let rhs = heinz_bound(relative_abs(disk, z) / disk.radius())?;
    Ok(VerificationRecord::check(inputs(z), v.norm(), rhs, slack + err))
}

/// Heinz sweep for `f` into the unit disk with `f(a) = 0`.
pub fn heinz_check(f: &ComplexHarmonic, opts: &SweepOptions) -> Result<Vec<VerificationRecord>> {
    let sup = f.boundary_sup()?;
    if sup > 1.0 {
        return Err(Error::InvalidInput(format!("|f| reaches {sup} on the boundary")));
    }
    let (c, _) = f.eval(f.disk().center())?;
    if c.norm() > 1e-9 {
        return Err(Error::InvalidInput(format!("f(a) = {c} must vanish")));
    }
    sweep(&opts.points(f.disk())?, |z| heinz_at(f, z, opts.slack))
}

/// The two comparisons of a gradient sweep at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientRecords {
    /// `|grad u| <=` the cosine (Chen-type) bound.
    pub cosine: VerificationRecord,
    /// Cosine bound `<=` quadratic (Kalaj–Vuorinen-type) bound.
    pub quadratic: VerificationRecord,
}

/// Gradient bounds for `u` into `range` at `z`.
pub fn interval_gradient_at(u: &HarmonicDiskFunction, range: &IntervalRange, z: [f64; 2], slack: f64) -> Result<GradientRecords> {
    let disk = u.disk();
    let r = disk.radius();
    let rw = relative_abs(disk, z) / r;
    let v = u.eval(z)?;
    let g = u.gradient(z)?;
    let cos = interval_gradient_bound(range, v.value, rw, IntervalVariant::Cosine)? / r;
    let quad = interval_gradient_bound(range, v.value, rw, IntervalVariant::Quadratic)? / r;
    // both bounds are Lipschitz in u with constant 2/(1 - |w|^2)
    let value_err = 2.0 / ((1.0 - rw) * (1.0 + rw) * r) * v.error;
    Ok(GradientRecords {
        cosine: VerificationRecord::check(inputs(z), g.norm(), cos, slack + g.error + value_err),
        quadratic: VerificationRecord::check(inputs(z), cos, quad, slack),
    })
}

/// `|grad u| <= chen <= kv` for `u` into `(-1, 1)`, scaled to the disk.
pub fn gradient_bounds_at(u: &HarmonicDiskFunction, z: [f64; 2], slack: f64) -> Result<GradientRecords> {
    let disk = u.disk();
    let r = disk.radius();
    let rw = relative_abs(disk, z) / r;
    let v = u.eval(z)?;
    let g = u.gradient(z)?;
    let chen = chen_gradient_bound(v.value, rw)? / r;
    let kv = kv_gradient_bound(v.value, rw)? / r;
    let value_err = 2.0 / ((1.0 - rw) * (1.0 + rw) * r) * v.error;
    Ok(GradientRecords {
        cosine: VerificationRecord::check(inputs(z), g.norm(), chen, slack + g.error + value_err),
        quadratic: VerificationRecord::check(inputs(z), chen, kv, slack),
    })
}

fn check_range(u: &HarmonicDiskFunction, lo: f64, hi: f64) -> Result<()> {
    let (a, b) = u.boundary_range();
    // non-constant data in [lo, hi] maps the open disk into (lo, hi)
    let interior = a > lo && b < hi;
    if a >= lo && b <= hi && (a < b || interior) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("boundary values span [{a}, {b}], not inside [{lo}, {hi}]")))
    }
}

/// Gradient sweep for real harmonic `u` into `(-1, 1)`.
pub fn gradient_check(u: &HarmonicDiskFunction, opts: &SweepOptions) -> Result<Vec<GradientRecords>> {
    check_range(u, -1.0, 1.0)?;
    sweep(&opts.points(u.disk())?, |z| gradient_bounds_at(u, z, opts.slack))
}

/// Gradient sweep for real harmonic `u` into `range`.
pub fn interval_gradient_check(u: &HarmonicDiskFunction, range: &IntervalRange, opts: &SweepOptions) -> Result<Vec<GradientRecords>> {
    check_range(u, range.alpha(), range.beta())?;
    sweep(&opts.points(u.disk())?, |z| interval_gradient_at(u, range, z, opts.slack))
}

/// `|f_z| + |f_zbar| <= (4/pi) / (R (1 - |w|^2))` with `w = (z - a)/R`.
pub fn colonna_at(f: &ComplexHarmonic, z: [f64; 2], slack: f64) -> Result<VerificationRecord> {
    let disk = f.disk();
    let r = disk.radius();
    let rw = relative_abs(disk, z) / r;
    let (fz, fzb, err) = f.wirtinger(z)?;
    let rhs = 4.0 / PI / ((1.0 - rw) * (1.0 + rw) * r);
    Ok(VerificationRecord::check(inputs(z), fz.norm() + fzb.norm(), rhs, slack + err))
}

/// Schwarz–Pick sweep for complex harmonic `f` into the unit disk.
pub fn colonna_check(f: &ComplexHarmonic, opts: &SweepOptions) -> Result<Vec<VerificationRecord>> {
    let sup = f.boundary_sup()?;
    if sup > 1.0 {
        return Err(Error::InvalidInput(format!("|f| reaches {sup} on the boundary")));
    }
    sweep(&opts.points(f.disk())?, |z| colonna_at(f, z, opts.slack))
}

/// Random trigonometric boundary data of degree `degree` with sup norm
/// `0.99 M`.
pub fn random_bounded(disk: DiskSpec, degree: usize, seed: u64) -> Result<HarmonicDiskFunction> {
    let p = TrigPolynomial::random(&mut stream(seed, 0), degree, 0.99 * disk.bound(), false);
    p.harmonic(disk, DEFAULT_NODES)
}

/// Random harmonic function with boundary values in the middle 99% of `range`.
pub fn random_into_interval(disk: DiskSpec, range: &IntervalRange, degree: usize, seed: u64) -> Result<HarmonicDiskFunction> {
    let p = TrigPolynomial::random(&mut stream(seed, 0), degree, 0.99, false);
    let (m, h) = (range.midpoint(), 0.5 * range.width());
    HarmonicDiskFunction::from_boundary(disk, move |t| m + h * p.value(t), DEFAULT_NODES)
}

/// Random complex harmonic function with `|f| <= 0.99` on the boundary,
/// optionally with `f(a) = 0`.
pub fn random_complex(disk: DiskSpec, degree: usize, seed: u64, zero_mean: bool) -> Result<ComplexHarmonic> {
    let mut rng = stream(seed, 0);
    let p = TrigPolynomial::random(&mut rng, degree, 1.0, zero_mean);
    let q = TrigPolynomial::random(&mut rng, degree, 1.0, zero_mean);
    let grid = 8192;
    let sup = (0..grid)
        .map(|j| {
            let t = 2.0 * PI * j as f64 / grid as f64;
            p.value(t).hypot(q.value(t))
        })
        .fold(0.0, f64::max);
    let c = 0.99 / sup;
    ComplexHarmonic::new(p.scaled(c).harmonic(disk, DEFAULT_NODES)?, q.scaled(c).harmonic(disk, DEFAULT_NODES)?)
}
