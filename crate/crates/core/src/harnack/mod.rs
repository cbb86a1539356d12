//! Harnack constants, the Harnack metric on `B^n` and `H^n`, and bound
//! calculators for quasiregular and quasiconformal mappings.

mod counterexample;
mod empirical;

use std::f64::consts::LN_2;

use crate::domains::{Domain, DomainKind, Point};
use crate::error::{require_open, Error, Result};
use crate::metrics::{rho_ball, rho_halfspace};
use crate::specfun::{c_of_k, sphere_surface_area};

pub use counterexample::{counterexample_remark, Counterexample, CounterexampleRow};
pub use empirical::{empirical_harnack_constant, EmpiricalHarnack, HarnackSampling, PoissonMixture};

/// The pair `(s, C(s))` of a Harnack inequality in dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarnackParams {
    s: f64,
    c: f64,
    n: usize,
}

impl HarnackParams {
    pub fn new(s: f64, c: f64, n: usize) -> Result<Self> {
        check_s(s)?;
        check_c(c)?;
        check_n(n)?;
        Ok(Self { s, c, n })
    }

    /// Parameters with the ball constant `C(s, n)`.
    pub fn ball(s: f64, n: usize) -> Result<Self> {
        Self::new(s, harnack_constant_ball(s, n)?, n)
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// Distortion data of a quasiregular mapping together with the two
/// externally defined constants `c_n` and `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistortionParams {
    k: f64,
    k_i: f64,
    a: f64,
    c_n: f64,
    b: f64,
    n: usize,
    alpha: f64,
}

impl DistortionParams {
    /// `K`-quasiregular data in dimension `n`; `K_I`, `A`, `c_n` and `b`
    /// default to one.
    pub fn new(k: f64, n: usize) -> Result<Self> {
        check_at_least_one("K", k)?;
        check_n(n)?;
        Ok(Self {
            k,
            k_i: 1.0,
            a: 1.0,
            c_n: 1.0,
            b: 1.0,
            n,
            alpha: k.powf(1.0 / (1.0 - n as f64)),
        })
    }

    pub fn with_inner_dilatation(mut self, k_i: f64) -> Result<Self> {
        check_at_least_one("K_I", k_i)?;
        self.k_i = k_i;
        Ok(self)
    }

    pub fn with_uniformity(mut self, a: f64) -> Result<Self> {
        check_at_least_one("A", a)?;
        self.a = a;
        Ok(self)
    }

    pub fn with_c_n(mut self, c_n: f64) -> Result<Self> {
        check_positive("c_n", c_n)?;
        self.c_n = c_n;
        Ok(self)
    }

    pub fn with_b(mut self, b: f64) -> Result<Self> {
        check_positive("b", b)?;
        self.b = b;
        Ok(self)
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn k_i(&self) -> f64 {
        self.k_i
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn c_n(&self) -> f64 {
        self.c_n
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `K^{1/(1-n)}`.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

fn check_s(s: f64) -> Result<()> {
    require_open("s", s, 0.0, 1.0, "0 < s < 1")
}

fn check_c(c: f64) -> Result<()> {
    check_at_least_one("C", c)
}

fn check_n(n: usize) -> Result<()> {
    if n >= 2 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("dimension must be at least 2, got {n}")))
    }
}

fn check_at_least_one(name: &'static str, v: f64) -> Result<()> {
    if v >= 1.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            name,
            value: v,
            expected: ">= 1",
        })
    }
}

fn check_positive(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            name,
            value: v,
            expected: "> 0",
        })
    }
}

fn check_distance(name: &'static str, v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            name,
            value: v,
            expected: ">= 0",
        })
    }
}

/// `log((1+s)/(1-s))`.
fn log_ratio(s: f64) -> f64 {
    2.0 * s.atanh()
}

/// Harnack constant `C(s, n) = (1/(1-s^2)) ((1+s)/(1-s))^n` of positive
/// harmonic functions on balls.
pub fn harnack_constant_ball(s: f64, n: usize) -> Result<f64> {
    check_s(s)?;
    check_n(n)?;
    Ok((n as f64 * log_ratio(s) - (-s * s).ln_1p()).exp())
}

/// Constant `((1+s)/(1-s))^{|beta|}` for `u = alpha d(x)^beta`.
pub fn harnack_constant_power_distance(s: f64, beta: f64) -> Result<f64> {
    check_s(s)?;
    if beta == 0.0 || !beta.is_finite() {
        return Err(Error::OutOfDomain {
            name: "beta",
            value: beta,
            expected: "beta != 0",
        });
    }
    Ok((beta.abs() * log_ratio(s)).exp())
}

/// Harnack metric in closed form: `2 rho` on the unit ball, `rho` on the
/// half-space.
pub fn harnack_metric(domain: &Domain, x: &Point, y: &Point) -> Result<f64> {
    domain.dist_to_boundary(x)?;
    domain.dist_to_boundary(y)?;
    match domain.kind() {
        DomainKind::UnitBall => Ok(2.0 * rho_ball(x, y)?),
        DomainKind::HalfSpace => rho_halfspace(x, y),
        _ => Err(Error::Unsupported(format!("no closed form for the Harnack metric of {domain}"))),
    }
}

/// Growth bound `C^{1+t}` with `t = log((1+r)/(1-r)) / log((1+s)/(1-s))`
/// and `r = th(rho/2)`.
pub fn growth_bound_ball(s: f64, c: f64, rho: f64) -> Result<f64> {
    Ok(log_growth_bound_ball(s, c, rho)?.exp())
}

/// Logarithm of [`growth_bound_ball`].
pub fn log_growth_bound_ball(s: f64, c: f64, rho: f64) -> Result<f64> {
    check_s(s)?;
    check_c(c)?;
    check_distance("rho", rho)?;
    // log((1+r)/(1-r)) = 2 artanh(th(rho/2)) = rho
    let t = rho / log_ratio(s);
    Ok((1.0 + t) * c.ln())
}

/// Constant of the comparison `u(x) <= C u(y)` for `y` on the sphere
/// `S(x, s(1-|x|))`; it coincides with [`harnack_constant_ball`].
pub fn sphere_harnack_bound(s: f64, n: usize) -> Result<f64> {
    harnack_constant_ball(s, n)
}

/// Side condition `s < exp(rho(x, y)) - 1` accompanying
/// [`sphere_harnack_bound`].
pub fn sphere_side_condition(s: f64, rho: f64) -> bool {
    s < rho.exp_m1()
}

/// Logarithm of the quasiregular Harnack constant
/// `(A K_I / c_n) omega_{n-1} (log(s d_x / |x - y|))^{1-n}`.
pub fn log_qr_harnack_constant(params: &DistortionParams, s: f64, d_x: f64, separation: f64) -> Result<f64> {
    check_s(s)?;
    check_positive("d_x", d_x)?;
    if !(separation > 0.0 && separation < s * d_x) {
        return Err(Error::OutsideValidityRange(format!(
            "separation {separation} must lie in (0, s d_x) = (0, {})",
            s * d_x
        )));
    }
    let n = params.n;
    let omega = sphere_surface_area(n)?;
    let l = (s * d_x / separation).ln();
    Ok(params.a * params.k_i / params.c_n * omega * l.powi(1 - n as i32))
}

/// Quasiregular Harnack constant; see [`log_qr_harnack_constant`].
pub fn qr_harnack_constant(params: &DistortionParams, s: f64, d_x: f64, separation: f64) -> Result<f64> {
    Ok(log_qr_harnack_constant(params, s, d_x, separation)?.exp())
}

/// `2K (h/2 + log 4)`.
pub fn qr_ball_metric_bound(k: f64, h: f64) -> Result<f64> {
    check_at_least_one("K", k)?;
    check_distance("h", h)?;
    Ok(2.0 * k * (0.5 * h + 2.0 * LN_2))
}

/// `b max{h, 2^{1-alpha} h^alpha}` with `alpha = K^{1/(1-n)}`.
pub fn qc_ball_metric_bound(params: &DistortionParams, h: f64) -> Result<f64> {
    check_distance("h", h)?;
    let a = params.alpha;
    Ok(params.b * h.max(2f64.powf(1.0 - a) * h.powf(a)))
}

/// `K (h + log 4)`.
pub fn qr_halfspace_metric_bound(k: f64, h: f64) -> Result<f64> {
    check_at_least_one("K", k)?;
    check_distance("h", h)?;
    Ok(k * (h + 2.0 * LN_2))
}

/// `c(K) max{h, 2^{1-1/K} h^{1/K}}`.
pub fn qr_planar_metric_bound(k: f64, h: f64) -> Result<f64> {
    check_at_least_one("K", k)?;
    check_distance("h", h)?;
    let e = 1.0 / k;
    Ok(c_of_k(k)? * h.max(2f64.powf(1.0 - e) * h.powf(e)))
}

/// Which of the two Harnack-metric upper bounds to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HgVariant {
    /// `(1 + k_G / (2 log(1+s))) log C`, valid in every proper subdomain.
    General,
    /// `(1 + rho / log((1+s)/(1-s))) log C`, on the ball and half-space.
    BallHalfSpace,
}

/// Upper bound for the Harnack metric `h_G(x, y)` in terms of `k_G` or
/// `rho`, depending on the variant.
pub fn hg_upper_bound(s: f64, c: f64, k_or_rho: f64, variant: HgVariant) -> Result<f64> {
    check_s(s)?;
    check_c(c)?;
    check_distance("distance", k_or_rho)?;
    let scale = match variant {
        HgVariant::General => 2.0 * s.ln_1p(),
        HgVariant::BallHalfSpace => log_ratio(s),
    };
    Ok((1.0 + k_or_rho / scale) * c.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{E, PI};

    #[test]
    fn ball_constant() {
        assert_abs_diff_eq!(harnack_constant_ball(0.5, 2).unwrap(), 12.0, epsilon = 1e-12);
        assert!(harnack_constant_ball(1e-6, 2).unwrap() < 1.0 + 1e-4);
        assert!(harnack_constant_ball(0.5, 3).unwrap() > harnack_constant_ball(0.5, 2).unwrap());
        assert!(harnack_constant_ball(0.999_999, 2).unwrap() > 1e12);
        assert!(harnack_constant_ball(0.0, 2).is_err());
        assert!(harnack_constant_ball(1.0, 2).is_err());
        assert!(harnack_constant_ball(0.5, 1).is_err());
        for i in 1..20 {
            let s = i as f64 / 20.0;
            for n in 2..6 {
                assert_eq!(harnack_constant_ball(s, n).unwrap(), sphere_harnack_bound(s, n).unwrap());
            }
        }
    }

    #[test]
    fn power_distance_constant() {
        assert_abs_diff_eq!(harnack_constant_power_distance(0.5, 1.0).unwrap(), 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(harnack_constant_power_distance(0.5, -2.0).unwrap(), 9.0, epsilon = 1e-12);
        assert!((harnack_constant_power_distance(1e-9, 1.0).unwrap() - 1.0).abs() < 1e-8);
        assert!(harnack_constant_power_distance(0.5, 0.0).is_err());
    }

    #[test]
    fn metric_closed_forms() {
        let b = Domain::unit_ball(2).unwrap();
        let h = Domain::half_space(2).unwrap();
        let o = Point::from([0.0, 0.0]);
        assert_abs_diff_eq!(harnack_metric(&b, &o, &Point::from([0.5, 0.0])).unwrap(), 2.0 * 3f64.ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(
            harnack_metric(&h, &Point::from([0.0, 1.0]), &Point::from([0.0, E])).unwrap(),
            1.0,
            epsilon = 1e-14
        );
        assert_eq!(harnack_metric(&b, &o, &o).unwrap(), 0.0);
        let s = Domain::slit_plane();
        assert!(matches!(
            harnack_metric(&s, &Point::from([-1.0, 0.0]), &Point::from([-2.0, 0.0])),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn growth_bound_examples() {
        let s: f64 = 0.3;
        let c = 5.0;
        assert_abs_diff_eq!(growth_bound_ball(s, c, 2.0 * s.atanh()).unwrap(), c * c, epsilon = 1e-12);
        assert_abs_diff_eq!(growth_bound_ball(s, c, 0.0).unwrap(), c, epsilon = 1e-12);
        assert_abs_diff_eq!(growth_bound_ball(0.5, 12.0, 3f64.ln()).unwrap(), 144.0, epsilon = 1e-9);
        assert!(growth_bound_ball(0.5, 0.5, 1.0).is_err());
    }

    #[test]
    fn growth_bound_matches_tanh_form() {
        for &(s, c, rho) in &[(0.2f64, 3.0f64, 0.7f64), (0.6, 40.0, 2.5), (0.9, 2.0, 0.01)] {
            let r = (rho / 2.0f64).tanh();
            let t = ((1.0 + r) / (1.0 - r)).ln() / ((1.0 + s) / (1.0 - s)).ln();
            let direct = f64::powf(c, 1.0 + t);
            assert_abs_diff_eq!(growth_bound_ball(s, c, rho).unwrap() / direct, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn sphere_side_condition_holds_on_the_sphere() {
        let s = 0.4;
        for i in 0..50 {
            let r0 = 0.9 * i as f64 / 50.0;
            let x = Point::from([r0, 0.0]);
            let rad = s * (1.0 - r0);
            let t = i as f64 * 0.37;
            let y = Point::from([r0 + rad * t.cos(), rad * t.sin()]);
            let rho = rho_ball(&x, &y).unwrap();
            assert!(rho >= s.ln_1p() - 1e-12);
        }
        assert!(sphere_side_condition(0.5, 1.0));
        assert!(!sphere_side_condition(0.5, 0.1));
    }

    #[test]
    fn qr_constant() {
        let p = DistortionParams::new(1.0, 2).unwrap();
        let v = qr_harnack_constant(&p, 0.5, 1.0, 0.05).unwrap();
        // exp(2 pi / log 10)
        assert_abs_diff_eq!(v, (2.0 * PI / 10f64.ln()).exp(), epsilon = 1e-12);
        assert_abs_diff_eq!(v, 15.31, epsilon = 5e-3);
        // the exponent 1 - n = -1 makes the decay to 1 logarithmically slow
        let tiny = qr_harnack_constant(&p, 0.5, 1.0, 1e-8 * 0.5).unwrap();
        assert_abs_diff_eq!(tiny, (2.0 * PI / 1e8f64.ln()).exp(), epsilon = 1e-12);
        assert!(tiny < v);
        assert!(qr_harnack_constant(&p, 0.5, 1.0, 0.5 * (-700.0f64).exp()).unwrap() < 1.01);
        let p3 = DistortionParams::new(1.0, 3).unwrap();
        assert!(qr_harnack_constant(&p3, 0.5, 1.0, 0.5 * (-120.0f64).exp()).unwrap() < 1.01);
        assert!(qr_harnack_constant(&p, 0.5, 1.0, 0.1).unwrap() > v);
        assert!(matches!(qr_harnack_constant(&p, 0.5, 1.0, 0.5), Err(Error::OutsideValidityRange(_))));
        assert!(matches!(qr_harnack_constant(&p, 0.5, 1.0, 0.0), Err(Error::OutsideValidityRange(_))));
    }

    #[test]
    fn distortion_params() {
        let p = DistortionParams::new(1.0, 3).unwrap();
        assert_eq!(p.alpha(), 1.0);
        let q = DistortionParams::new(8.0, 4).unwrap();
        assert_abs_diff_eq!(q.alpha(), 0.5, epsilon = 1e-15);
        assert!(q.alpha() > 0.0 && q.alpha() < 1.0);
        assert!(DistortionParams::new(0.5, 2).is_err());
        assert!(p.with_c_n(0.0).is_err());
        assert!(p.with_b(-1.0).is_err());
        assert!(p.with_inner_dilatation(0.9).is_err());
        assert!(p.with_uniformity(0.9).is_err());
        assert_eq!(p.with_b(2.5).unwrap().b(), 2.5);
    }

    #[test]
    fn metric_bound_examples() {
        assert_abs_diff_eq!(qr_ball_metric_bound(1.0, 0.0).unwrap(), 2.0 * 4f64.ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(qr_ball_metric_bound(1.0, 2.0 * 3f64.ln()).unwrap(), 2.0 * 12f64.ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(qr_ball_metric_bound(2.0, 1.3).unwrap(), 2.0 * qr_ball_metric_bound(1.0, 1.3).unwrap(), epsilon = 1e-14);

        let id = DistortionParams::new(1.0, 2).unwrap();
        assert_abs_diff_eq!(qc_ball_metric_bound(&id, 0.7).unwrap(), 0.7, epsilon = 1e-15);
        let q = DistortionParams::new(4.0, 2).unwrap().with_b(1.5).unwrap();
        assert_abs_diff_eq!(qc_ball_metric_bound(&q, 2.0).unwrap(), 3.0, epsilon = 1e-14);
        let v = qc_ball_metric_bound(&DistortionParams::new(4.0, 2).unwrap(), 0.5).unwrap();
        assert_abs_diff_eq!(v, 2f64.powf(0.75) * 0.5f64.powf(0.25), epsilon = 1e-14);
        assert_abs_diff_eq!(v, 2f64.sqrt(), epsilon = 1e-14);

        assert_abs_diff_eq!(qr_halfspace_metric_bound(1.0, 0.0).unwrap(), 4f64.ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(qr_halfspace_metric_bound(2.0, 1.0).unwrap(), 2.0 * (1.0 + 4f64.ln()), epsilon = 1e-14);

        assert_abs_diff_eq!(qr_planar_metric_bound(1.0, 0.8).unwrap(), 0.8, epsilon = 1e-9);
        let c2 = c_of_k(2.0).unwrap();
        assert_abs_diff_eq!(qr_planar_metric_bound(3.0, 2.0).unwrap(), 2.0 * c_of_k(3.0).unwrap(), epsilon = 1e-12);
        assert_abs_diff_eq!(qr_planar_metric_bound(2.0, 0.5).unwrap(), c2, epsilon = 1e-12);
        assert!(qr_planar_metric_bound(0.5, 1.0).is_err());
        assert!(qr_halfspace_metric_bound(1.0, -1.0).is_err());
    }

    #[test]
    fn bounds_are_monotone_in_distance() {
        let q = DistortionParams::new(3.0, 3).unwrap();
        let grid: Vec<f64> = (0..200).map(|i| i as f64 * 0.05).collect();
        let fs: Vec<Box<dyn Fn(f64) -> f64>> = vec![
            Box::new(|h| qr_ball_metric_bound(2.0, h).unwrap()),
            Box::new(move |h| qc_ball_metric_bound(&q, h).unwrap()),
            Box::new(|h| qr_halfspace_metric_bound(2.0, h).unwrap()),
            Box::new(|h| qr_planar_metric_bound(2.0, h).unwrap()),
            Box::new(|h| growth_bound_ball(0.5, 12.0, h).unwrap()),
            Box::new(|h| hg_upper_bound(0.5, 12.0, h, HgVariant::General).unwrap()),
            Box::new(|h| hg_upper_bound(0.5, 12.0, h, HgVariant::BallHalfSpace).unwrap()),
        ];
        for f in &fs {
            assert!(grid.windows(2).all(|w| f(w[1]) > f(w[0])));
        }
    }

    #[test]
    fn hg_bound_examples() {
        assert_abs_diff_eq!(hg_upper_bound(0.3, 7.0, 0.0, HgVariant::General).unwrap(), 7f64.ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(
            hg_upper_bound(0.5, 12.0, 3f64.ln(), HgVariant::BallHalfSpace).unwrap(),
            2.0 * 12f64.ln(),
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            hg_upper_bound(0.5, 12.0, 1.0, HgVariant::General).unwrap(),
            (1.0 + 1.0 / (2.0 * 1.5f64.ln())) * 12f64.ln(),
            epsilon = 1e-14
        );
        assert!(hg_upper_bound(1.5, 12.0, 1.0, HgVariant::General).is_err());
    }

    #[test]
    fn ball_self_consistency_on_a_grid() {
        let b = Domain::unit_ball(2).unwrap();
        let pts = b.sample_interior(200, 11, 0.01).unwrap();
        for pair in pts.chunks(2) {
            let rho = rho_ball(&pair[0], &pair[1]).unwrap();
            let h = harnack_metric(&b, &pair[0], &pair[1]).unwrap();
            for i in 1..10 {
                let s = i as f64 / 10.0;
                let c = harnack_constant_ball(s, 2).unwrap();
                assert!(h <= hg_upper_bound(s, c, rho, HgVariant::BallHalfSpace).unwrap() + 1e-12);
            }
        }
    }
}
