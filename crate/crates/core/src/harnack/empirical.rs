//! Empirical Harnack constants and positive harmonic test functions.

use std::f64::consts::PI;

use rand::Rng;
use rayon::prelude::*;

use crate::domains::{Domain, DomainKind, Point};
use crate::error::{require_open, Error, Result};
use crate::sampling::{stream, unit_vector};

/// Offset separating the per-center streams from the center sampler.
const CENTER_STREAM_SALT: u64 = 0x6a09_e667_f3bc_c909;

/// Positive harmonic function on `B^n` or `H^n`: a non-negative combination
/// of Poisson kernels, a constant and (on `H^n`) the height `x_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct PoissonMixture {
    half_space: bool,
    dim: usize,
    constant: f64,
    height: f64,
    poles: Vec<(f64, Vec<f64>)>,
}

impl PoissonMixture {
    /// Mixture on `domain` with the given constant term, coefficient of
    /// `x_n` (half-space only) and weighted boundary poles.
    pub fn new(domain: &Domain, constant: f64, height: f64, poles: Vec<(f64, Vec<f64>)>) -> Result<Self> {
        let half_space = match domain.kind() {
            DomainKind::UnitBall => false,
            DomainKind::HalfSpace => true,
            _ => return Err(Error::Unsupported(format!("Poisson mixtures live on the unit ball or half-space, not {domain}"))),
        };
        let dim = domain.dim();
        if constant < 0.0 || height < 0.0 || poles.iter().any(|(w, _)| *w < 0.0) {
            return Err(Error::InvalidParameter("mixture weights must be non-negative".into()));
        }
        if constant == 0.0 && height == 0.0 && poles.iter().all(|(w, _)| *w == 0.0) {
            return Err(Error::InvalidParameter("mixture must have a positive weight".into()));
        }
        for (_, p) in &poles {
            if p.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: p.len() });
            }
            let on_boundary = if half_space {
                p[dim - 1] == 0.0
            } else {
                (crate::domains::norm(p) - 1.0).abs() < 1e-12
            };
            if !on_boundary {
                return Err(Error::InvalidParameter(format!("pole {p:?} is not a boundary point")));
            }
        }
        if !half_space && height != 0.0 {
            return Err(Error::InvalidParameter("the height term only exists on the half-space".into()));
        }
        Ok(Self {
            half_space,
            dim,
            constant,
            height,
            poles,
        })
    }

    /// Random mixture of `terms` kernels, seeded.
    ///
    /// Ball poles are uniform on the sphere; half-space poles have horizontal
    /// coordinates uniform in `[-2, 2]`.
    pub fn random(domain: &Domain, terms: usize, seed: u64) -> Result<Self> {
        let mut rng = stream(seed, 0);
        let n = domain.dim();
        let half_space = matches!(domain.kind(), DomainKind::HalfSpace);
        let poles = (0..terms)
            .map(|_| {
                let w = rng.random_range(0.1..1.0);
                let p = if half_space {
                    let mut p: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
                    p[n - 1] = 0.0;
                    p
                } else {
                    unit_vector(&mut rng, n)
                };
                (w, p)
            })
            .collect();
        let constant = rng.random_range(0.0..0.5);
        let height = if half_space { rng.random_range(0.0..0.5) } else { 0.0 };
        Self::new(domain, constant, height, poles)
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let n = self.dim as i32;
        let numer = if self.half_space {
            x[self.dim - 1]
        } else {
            1.0 - x.iter().map(|c| c * c).sum::<f64>()
        };
        let kernels: f64 = self
            .poles
            .iter()
            .map(|(w, p)| w * numer / crate::domains::dist(x, p).powi(n))
            .sum();
        self.constant + self.height * x[self.dim - 1] + kernels
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// How the closed balls `B(x, s d(x))` are probed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarnackSampling {
    pub centers: usize,
    /// Points per closed ball, stratified in the radius.
    pub ball_samples: usize,
    /// Points on the bounding sphere of each ball.
    pub sphere_samples: usize,
    pub seed: u64,
    /// Centers keep at least this relative distance from the boundary.
    pub margin: f64,
}

impl Default for HarnackSampling {
    fn default() -> Self {
        Self {
            centers: 20,
            ball_samples: 200,
            sphere_samples: 64,
            seed: 0,
            margin: 0.05,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalHarnack {
    /// Largest observed `max u / min u` over the sampled balls.
    pub value: f64,
    pub worst_center: Point,
    /// Ratio observed at each center, in sampling order.
    pub ratios: Vec<f64>,
}

/// Lower estimate of the best Harnack constant `C(s)` of `u` in `domain`,
/// from the closed balls `B(x, s d(x))` around seeded random centers.
pub fn empirical_harnack_constant<F>(u: F, domain: &Domain, s: f64, sampling: &HarnackSampling) -> Result<EmpiricalHarnack>
where
    F: Fn(&Point) -> f64 + Sync,
{
    require_open("s", s, 0.0, 1.0, "0 < s < 1")?;
    if sampling.centers == 0 {
        return Err(Error::InvalidParameter("at least one center is required".into()));
    }
    let centers = domain.sample_interior(sampling.centers, sampling.seed, sampling.margin)?;
    let ratios: Vec<f64> = centers
        .par_iter()
        .enumerate()
        .map(|(i, x)| ball_ratio(&u, domain, x, s, sampling, i as u64))
        .collect::<Result<_>>()?;
    let (worst, value) = ratios
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, r)| if r > acc.1 { (i, r) } else { acc });
    Ok(EmpiricalHarnack {
        value,
        worst_center: centers[worst].clone(),
        ratios,
    })
}

fn ball_ratio<F>(u: &F, domain: &Domain, x: &Point, s: f64, sampling: &HarnackSampling, index: u64) -> Result<f64>
where
    F: Fn(&Point) -> f64 + Sync,
{
    let n = x.dim();
    let radius = s * domain.dist_to_boundary(x)?;
    let mut rng = stream(sampling.seed ^ CENTER_STREAM_SALT, index);
    let offset = |dir: &[f64], rad: f64| -> Result<Point> { Point::new(x.coords().iter().zip(dir).map(|(c, d)| c + rad * d).collect()) };

    let mut pts = vec![x.clone()];
    let m = sampling.ball_samples;
    for j in 0..m {
        let u01: f64 = rng.random();
        let rad = radius * ((j as f64 + u01) / m as f64).powf(1.0 / n as f64);
        pts.push(offset(&unit_vector(&mut rng, n), rad)?);
    }
    let phase: f64 = rng.random();
    for j in 0..sampling.sphere_samples {
        let dir = if n == 2 {
            let t = 2.0 * PI * (j as f64 + phase) / sampling.sphere_samples as f64;
            vec![t.cos(), t.sin()]
        } else {
            unit_vector(&mut rng, n)
        };
        pts.push(offset(&dir, radius)?);
    }

    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for p in &pts {
        let v = u(p);
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::NonPositiveCandidate {
                point: p.coords().to_vec(),
                value: v,
            });
        }
        lo = lo.min(v);
        hi = hi.max(v);
    }
    Ok(hi / lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harnack::{harnack_constant_ball, harnack_constant_power_distance};

    #[test]
    fn constant_function_has_ratio_one() {
        let b = Domain::unit_ball(2).unwrap();
        let e = empirical_harnack_constant(|_: &Point| 1.0, &b, 0.5, &HarnackSampling::default()).unwrap();
        assert_eq!(e.value, 1.0);
        assert_eq!(e.ratios.len(), 20);
    }

    #[test]
    fn poisson_kernel_respects_ball_constant() {
        let b = Domain::unit_ball(2).unwrap();
        let k = PoissonMixture::new(&b, 0.0, 0.0, vec![(1.0, vec![1.0, 0.0])]).unwrap();
        let e = empirical_harnack_constant(|p: &Point| k.eval(p.coords()), &b, 0.5, &HarnackSampling::default()).unwrap();
        assert!(e.value > 1.0 && e.value <= 12.0, "{}", e.value);
    }

    #[test]
    fn mixtures_respect_ball_constant_in_higher_dimension() {
        let b = Domain::unit_ball(3).unwrap();
        let c = harnack_constant_ball(0.6, 3).unwrap();
        for seed in 0..4 {
            let u = PoissonMixture::random(&b, 3, seed).unwrap();
            let sampling = HarnackSampling { seed, ..HarnackSampling::default() };
            let e = empirical_harnack_constant(|p: &Point| u.eval(p.coords()), &b, 0.6, &sampling).unwrap();
            assert!(e.value <= c);
        }
    }

    #[test]
    fn slit_plane_argument() {
        let g = Domain::slit_plane().with_sampling_box(crate::SamplingBox::new(vec![-2.0, -2.0], vec![2.0, 2.0]).unwrap()).unwrap();
        let arg = |p: &Point| {
            let t = p.coords()[1].atan2(p.coords()[0]);
            if t <= 0.0 {
                t + 2.0 * PI
            } else {
                t
            }
        };
        let e = empirical_harnack_constant(arg, &g, 0.5, &HarnackSampling::default()).unwrap();
        assert!(e.value <= (4.0 + PI) / (4.0 - PI));
    }

    #[test]
    fn power_of_distance() {
        let h = Domain::half_space(2).unwrap().with_sampling_box(crate::SamplingBox::new(vec![-1.0, 0.0], vec![1.0, 2.0]).unwrap()).unwrap();
        for beta in [-1.5, 0.5, 2.0] {
            let u = |p: &Point| 3.0 * p.last().powf(beta);
            let e = empirical_harnack_constant(u, &h, 0.5, &HarnackSampling::default()).unwrap();
            // attained at the top and bottom of each disk
            let c = harnack_constant_power_distance(0.5, beta).unwrap();
            assert!(e.value <= c * (1.0 + 1e-12));
            assert!(e.value >= 0.95 * c);
        }
    }

    #[test]
    fn non_positive_candidates_are_rejected() {
        let b = Domain::unit_ball(2).unwrap();
        let r = empirical_harnack_constant(|p: &Point| p.coords()[0], &b, 0.5, &HarnackSampling::default());
        assert!(matches!(r, Err(Error::NonPositiveCandidate { .. })));
    }

    #[test]
    fn mixture_validation() {
        let b = Domain::unit_ball(2).unwrap();
        assert!(PoissonMixture::new(&b, 0.0, 0.0, vec![(1.0, vec![0.5, 0.0])]).is_err());
        assert!(PoissonMixture::new(&b, -1.0, 0.0, vec![]).is_err());
        assert!(PoissonMixture::new(&b, 0.0, 0.0, vec![]).is_err());
        assert!(PoissonMixture::new(&b, 1.0, 1.0, vec![]).is_err());
        assert!(PoissonMixture::new(&Domain::slit_plane(), 1.0, 0.0, vec![]).is_err());
        let h = Domain::half_space(3).unwrap();
        assert!(PoissonMixture::new(&h, 0.0, 1.0, vec![]).is_ok());
        assert!(PoissonMixture::new(&h, 0.0, 0.0, vec![(1.0, vec![0.0, 0.0, 1.0])]).is_err());
    }

    #[test]
    fn mixtures_are_harmonic() {
        for (d, x) in [
            (Domain::unit_ball(2).unwrap(), vec![0.2, -0.3]),
            (Domain::unit_ball(3).unwrap(), vec![0.1, 0.2, -0.3]),
            (Domain::half_space(3).unwrap(), vec![0.3, -0.2, 0.7]),
        ] {
            let u = PoissonMixture::random(&d, 4, 9).unwrap();
            let h = 1e-3;
            let mut lap = -2.0 * x.len() as f64 * u.eval(&x);
            for k in 0..x.len() {
                let mut a = x.clone();
                a[k] += h;
                let mut b = x.clone();
                b[k] -= h;
                lap += u.eval(&a) + u.eval(&b);
            }
            assert!((lap / (h * h)).abs() < 1e-3, "{}", lap / (h * h));
        }
    }
}
