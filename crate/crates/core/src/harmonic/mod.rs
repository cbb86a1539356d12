//! Harmonic functions on planar disks and Schwarz-type bounds for them.
//!
//! Functions are represented either in closed form or as Poisson integrals
//! of boundary data, evaluated by the trapezoidal rule with automatic node
//! doubling. Complex-valued harmonic functions are pairs of real ones.

mod checks;
mod poisson;

use std::f64::consts::{FRAC_2_PI, PI};

use serde::Serialize;

use crate::error::{Error, Result};

pub use checks::{
    colonna_at, colonna_check, gradient_bounds_at, gradient_check, heinz_at, heinz_check, interval_gradient_at, interval_gradient_check,
    random_bounded, random_complex, random_into_interval, schwarz_deviation_at, schwarz_deviation_check, GradientRecords, SweepOptions,
};
pub use poisson::{
    BoundaryData, ClosedForm, ComplexHarmonic, Evaluation, GradientEvaluation, HarmonicDiskFunction, Representation, TrigPolynomial,
    DEFAULT_NODES, MAX_NODES, QUADRATURE_TOL,
};

/// Disk `B(a, R)` together with a sup-norm bound `M`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiskSpec {
    center: [f64; 2],
    radius: f64,
    bound: f64,
}

impl DiskSpec {
    pub fn new(center: [f64; 2], radius: f64, bound: f64) -> Result<Self> {
        if !(center[0].is_finite() && center[1].is_finite()) {
            return Err(Error::NonFinite(center.to_vec()));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::OutOfDomain {
                name: "R",
                value: radius,
                expected: "R > 0",
            });
        }
        if !(bound > 0.0 && bound.is_finite()) {
            return Err(Error::OutOfDomain {
                name: "M",
                value: bound,
                expected: "M > 0",
            });
        }
        Ok(Self { center, radius, bound })
    }

    /// The unit disk with `M = 1`.
    pub fn unit() -> Self {
        Self {
            center: [0.0, 0.0],
            radius: 1.0,
            bound: 1.0,
        }
    }

    pub fn center(&self) -> [f64; 2] {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }
}

/// Open interval `(alpha, beta)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntervalRange {
    alpha: f64,
    beta: f64,
}

impl IntervalRange {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha < beta && alpha.is_finite() && beta.is_finite()) {
            return Err(Error::InvalidParameter(format!("interval needs alpha < beta, got ({alpha}, {beta})")));
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.alpha + self.beta)
    }

    pub fn width(&self) -> f64 {
        self.beta - self.alpha
    }

    /// `(2/(beta-alpha)) (u - (alpha+beta)/2)`, mapping the interval onto `(-1, 1)`.
    pub fn normalize(&self, u: f64) -> f64 {
        2.0 * (u - self.midpoint()) / self.width()
    }
}

fn check_unit_abs(z_abs: f64) -> Result<()> {
    if (0.0..1.0).contains(&z_abs) {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            name: "|z|",
            value: z_abs,
            expected: "0 <= |z| < 1",
        })
    }
}

fn check_open_unit(u: f64) -> Result<()> {
    if u > -1.0 && u < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            name: "u",
            value: u,
            expected: "-1 < u < 1",
        })
    }
}

fn check_in_disk(disk: &DiskSpec, z_abs: f64) -> Result<()> {
    if z_abs >= 0.0 && z_abs < disk.radius {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            name: "|z|",
            value: z_abs,
            expected: "0 <= |z| < R",
        })
    }
}

/// `(4/pi) arctan|z|`.
pub fn heinz_bound(z_abs: f64) -> Result<f64> {
    check_unit_abs(z_abs)?;
    Ok(2.0 * FRAC_2_PI * z_abs.atan())
}

/// `(2M/pi) arctan(2R|z| / (R^2 - |z|^2))`.
pub fn schwarz_center_bound(disk: &DiskSpec, z_abs: f64) -> Result<f64> {
    check_in_disk(disk, z_abs)?;
    let r = disk.radius;
    Ok(disk.bound * FRAC_2_PI * (2.0 * r * z_abs / ((r - z_abs) * (r + z_abs))).atan())
}

/// `(R^2 - |z|^2) / (R^2 + |z|^2)`, the weight of `u(a)` in the deviation.
pub fn centering_coefficient(disk: &DiskSpec, z_abs: f64) -> Result<f64> {
    check_in_disk(disk, z_abs)?;
    let r = disk.radius;
    Ok((r - z_abs) * (r + z_abs) / (r * r + z_abs * z_abs))
}

/// `(4/pi) (1 - u^2) / (1 - |z|^2)`.
pub fn kv_gradient_bound(u_val: f64, z_abs: f64) -> Result<f64> {
    check_open_unit(u_val)?;
    check_unit_abs(z_abs)?;
    Ok(4.0 / PI * (1.0 - u_val) * (1.0 + u_val) / ((1.0 - z_abs) * (1.0 + z_abs)))
}

/// `(4/pi) cos(pi u / 2) / (1 - |z|^2)`.
pub fn chen_gradient_bound(u_val: f64, z_abs: f64) -> Result<f64> {
    check_open_unit(u_val)?;
    check_unit_abs(z_abs)?;
    Ok(4.0 / PI * (0.5 * PI * u_val).cos() / ((1.0 - z_abs) * (1.0 + z_abs)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IntervalVariant {
    /// `(2(beta-alpha)/pi) (1 - 4|u - m|^2/(beta-alpha)^2) / (1 - |z|^2)`.
    Quadratic,
    /// `(2(beta-alpha)/pi) cos(pi (u - m)/(beta-alpha)) / (1 - |z|^2)`.
    Cosine,
}

/// Gradient bound for harmonic `u` into `(alpha, beta)`, with `m` the midpoint.
pub fn interval_gradient_bound(range: &IntervalRange, u_val: f64, z_abs: f64, variant: IntervalVariant) -> Result<f64> {
    if !(u_val > range.alpha && u_val < range.beta) {
        return Err(Error::OutOfDomain {
            name: "u",
            value: u_val,
            expected: "alpha < u < beta",
        });
    }
    check_unit_abs(z_abs)?;
    let w = range.width();
    let dev = u_val - range.midpoint();
    let shape = match variant {
        IntervalVariant::Quadratic => 1.0 - 4.0 * dev * dev / (w * w),
        IntervalVariant::Cosine => (PI * dev / w).cos(),
    };
    Ok(2.0 * w / PI * shape / ((1.0 - z_abs) * (1.0 + z_abs)))
}

/// `u_0(z) = -(2M/pi) arg((R - z)/(R + z))` for `z` relative to the
/// center of `disk`.
pub fn extremal_u0(disk: &DiskSpec, z: [f64; 2]) -> Result<f64> {
    let f = HarmonicDiskFunction::extremal_u0(*disk);
    Ok(f.eval([disk.center[0] + z[0], disk.center[1] + z[1]])?.value)
}

/// `ell(z) = (alpha+beta)/2 + ((beta-alpha)/pi) arctan(2y/(1-x^2-y^2))` on
/// the unit disk.
pub fn extremal_ell(range: &IntervalRange, z: [f64; 2]) -> Result<f64> {
    Ok(HarmonicDiskFunction::extremal_ell(DiskSpec::unit(), *range).eval(z)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn heinz_examples() {
        assert_eq!(heinz_bound(0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(heinz_bound(0.5).unwrap(), 0.590_334_470_601_733_3, epsilon = 1e-14);
        assert!((heinz_bound(1.0 - 1e-12).unwrap() - 1.0).abs() < 1e-11);
        assert!(heinz_bound(1.0).is_err());
    }

    #[test]
    fn schwarz_center_examples() {
        let d = DiskSpec::unit();
        assert_eq!(schwarz_center_bound(&d, 0.0).unwrap(), 0.0);
        let v = schwarz_center_bound(&d, 0.5).unwrap();
        assert_abs_diff_eq!(v, 2.0 / PI * (4.0f64 / 3.0).atan(), epsilon = 1e-15);
        assert_abs_diff_eq!(v, heinz_bound(0.5).unwrap(), epsilon = 1e-15);
        let big = DiskSpec::new([1.0, 1.0], 2.0, 3.0).unwrap();
        assert!((schwarz_center_bound(&big, 2.0 - 1e-12).unwrap() - 3.0).abs() < 1e-9);
        assert!(schwarz_center_bound(&big, 2.0).is_err());
        assert_abs_diff_eq!(centering_coefficient(&big, 1.0).unwrap(), 0.6, epsilon = 1e-15);
        assert_eq!(centering_coefficient(&big, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn constant_function_deviation() {
        // f = M gives LHS = M (1 - c) = 2 M r^2/(R^2 + r^2)
        let d = DiskSpec::new([0.0, 0.0], 1.5, 2.0).unwrap();
        for i in 0..100 {
            let r = 1.5 * i as f64 / 100.0;
            let lhs = d.bound() * (1.0 - centering_coefficient(&d, r).unwrap());
            assert_abs_diff_eq!(lhs, 2.0 * 2.0 * r * r / (2.25 + r * r), epsilon = 1e-14);
            assert!(lhs <= schwarz_center_bound(&d, r).unwrap() + 1e-15);
        }
    }

    #[test]
    fn gradient_bound_examples() {
        assert_abs_diff_eq!(kv_gradient_bound(0.0, 0.0).unwrap(), 4.0 / PI, epsilon = 1e-15);
        assert_abs_diff_eq!(kv_gradient_bound(0.5, 0.5).unwrap(), 4.0 / PI, epsilon = 1e-15);
        assert!(kv_gradient_bound(1.0 - 1e-9, 0.0).unwrap() < 1e-8);
        assert_abs_diff_eq!(chen_gradient_bound(0.0, 0.0).unwrap(), 4.0 / PI, epsilon = 1e-15);
        assert_abs_diff_eq!(chen_gradient_bound(0.5, 0.0).unwrap(), 4.0 / PI * (PI / 4.0).cos(), epsilon = 1e-15);
        assert_abs_diff_eq!(chen_gradient_bound(0.5, 0.0).unwrap(), 0.9003, epsilon = 1e-4);
        assert!(kv_gradient_bound(1.0, 0.0).is_err());
        assert!(chen_gradient_bound(0.0, 1.0).is_err());
        for i in 1..100 {
            for j in 0..100 {
                let u = -1.0 + 2.0 * i as f64 / 100.0;
                let z = j as f64 / 100.0;
                assert!(chen_gradient_bound(u, z).unwrap() <= kv_gradient_bound(u, z).unwrap() + 1e-15);
            }
        }
    }

    #[test]
    fn interval_bounds() {
        let unit = IntervalRange::new(-1.0, 1.0).unwrap();
        let other = IntervalRange::new(0.0, 3.0).unwrap();
        for i in 1..50 {
            for j in 0..50 {
                let z = 0.98 * j as f64 / 50.0;
                let u = -1.0 + 2.0 * i as f64 / 50.0;
                assert_abs_diff_eq!(
                    interval_gradient_bound(&unit, u, z, IntervalVariant::Quadratic).unwrap(),
                    kv_gradient_bound(u, z).unwrap(),
                    epsilon = 1e-12
                );
                assert_abs_diff_eq!(
                    interval_gradient_bound(&unit, u, z, IntervalVariant::Cosine).unwrap(),
                    chen_gradient_bound(u, z).unwrap(),
                    epsilon = 1e-12
                );
                let v = 3.0 * i as f64 / 50.0;
                assert!(
                    interval_gradient_bound(&other, v, z, IntervalVariant::Cosine).unwrap()
                        <= interval_gradient_bound(&other, v, z, IntervalVariant::Quadratic).unwrap() + 1e-14
                );
            }
        }
        for variant in [IntervalVariant::Quadratic, IntervalVariant::Cosine] {
            assert_abs_diff_eq!(interval_gradient_bound(&other, 1.5, 0.0, variant).unwrap(), 6.0 / PI, epsilon = 1e-15);
        }
        assert!(interval_gradient_bound(&other, 3.0, 0.0, IntervalVariant::Cosine).is_err());
        assert!(IntervalRange::new(1.0, 1.0).is_err());
    }

    #[test]
    fn affine_reduction() {
        let range = IntervalRange::new(-0.5, 2.5).unwrap();
        let half = 0.5 * range.width();
        for i in 1..40 {
            for j in 0..40 {
                let u = range.alpha() + range.width() * i as f64 / 40.0;
                let z = 0.95 * j as f64 / 40.0;
                let v = range.normalize(u);
                let q = interval_gradient_bound(&range, u, z, IntervalVariant::Quadratic).unwrap();
                let c = interval_gradient_bound(&range, u, z, IntervalVariant::Cosine).unwrap();
                assert_abs_diff_eq!(q, half * kv_gradient_bound(v, z).unwrap(), epsilon = 1e-12);
                assert_abs_diff_eq!(c, half * chen_gradient_bound(v, z).unwrap(), epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn extremal_values() {
        let d = DiskSpec::new([0.0, 0.0], 2.0, 1.5).unwrap();
        assert_eq!(extremal_u0(&d, [0.0, 0.0]).unwrap(), 0.0);
        assert_abs_diff_eq!(extremal_u0(&d, [0.7, 0.0]).unwrap(), 0.0, epsilon = 1e-15);
        for i in 1..20 {
            let r = 2.0 * i as f64 / 20.0;
            assert_abs_diff_eq!(extremal_u0(&d, [0.0, r]).unwrap(), schwarz_center_bound(&d, r).unwrap(), epsilon = 1e-14);
        }
        assert!(extremal_u0(&d, [2.0, 0.0]).is_err());

        let range = IntervalRange::new(1.0, 4.0).unwrap();
        assert_eq!(extremal_ell(&range, [0.0, 0.0]).unwrap(), 2.5);
        assert!(extremal_ell(&range, [0.0, 1.0 - 1e-12]).unwrap() > 4.0 - 1e-6);
        for z in [[0.3, 0.4], [-0.9, 0.1], [0.2, -0.97]] {
            let v = extremal_ell(&range, z).unwrap();
            assert!(v > 1.0 && v < 4.0);
        }
        assert!(extremal_ell(&range, [1.0, 0.0]).is_err());
    }
}
