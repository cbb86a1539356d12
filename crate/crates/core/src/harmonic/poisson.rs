//! Harmonic functions on disks: closed forms and Poisson integrals of
//! boundary data.

use std::f64::consts::PI;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use rand::Rng;

use super::{DiskSpec, IntervalRange};
use crate::error::{Error, Result};

/// Default number of quadrature nodes.
pub const DEFAULT_NODES: usize = 1024;
/// Successive quadrature values must agree to this before doubling stops.
pub const QUADRATURE_TOL: f64 = 1e-10;
/// Upper limit on the number of nodes.
pub const MAX_NODES: usize = 1 << 20;

const SUP_GRID: usize = 8192;

/// A value together with an estimate of its quadrature error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradientEvaluation {
    pub value: [f64; 2],
    pub error: f64,
}

impl GradientEvaluation {
    pub fn norm(&self) -> f64 {
        self.value[0].hypot(self.value[1])
    }
}

/// Real boundary values `g(theta) = u(a + R e^{i theta})` sampled on nested
/// uniform grids.
#[derive(Clone)]
pub struct BoundaryData {
    g: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    base: usize,
    // g at the nodes added by each refinement level, filled on first use
    levels: Arc<Vec<OnceLock<Vec<f64>>>>,
}

impl fmt::Debug for BoundaryData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundaryData").field("nodes", &self.base).finish_non_exhaustive()
    }
}

impl BoundaryData {
    /// Boundary data with `nodes` initial quadrature nodes, a power of two
    /// no smaller than 64.
    pub fn new<G>(g: G, nodes: usize) -> Result<Self>
    where
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if nodes < 64 || !nodes.is_power_of_two() || nodes > MAX_NODES {
            return Err(Error::InvalidParameter(format!(
                "quadrature nodes must be a power of two in [64, {MAX_NODES}], got {nodes}"
            )));
        }
        let depth = (MAX_NODES / nodes).trailing_zeros() as usize + 1;
        Ok(Self {
            g: Arc::new(g),
            base: nodes,
            levels: Arc::new((0..depth).map(|_| OnceLock::new()).collect()),
        })
    }

    pub fn nodes(&self) -> usize {
        self.base
    }

    pub fn value(&self, theta: f64) -> f64 {
        (self.g)(theta)
    }

    /// Angles of the nodes introduced at `level`.
    fn level_angles(&self, level: usize) -> impl Iterator<Item = f64> {
        let (count, step, first) = if level == 0 {
            (self.base, 2.0 * PI / self.base as f64, 0.0)
        } else {
            let total = self.base << level;
            let step = 2.0 * PI / total as f64;
            (total / 2, 2.0 * step, step)
        };
        (0..count).map(move |j| first + j as f64 * step - PI)
    }

    fn level_values(&self, level: usize) -> &[f64] {
        self.levels[level].get_or_init(|| self.level_angles(level).map(|t| (self.g)(t)).collect())
    }

    /// Trapezoidal mean of `g(theta) k(theta)` over the circle, doubling the
    /// node count until successive values agree.
    fn integrate<const D: usize>(&self, kernel: impl Fn(f64) -> [f64; D]) -> ([f64; D], f64) {
        let mut sum = [0.0; D];
        let mut count = 0usize;
        let mut prev = [f64::NAN; D];
        let mut diff = f64::INFINITY;
        for level in 0..self.levels.len() {
            for (t, g) in self.level_angles(level).zip(self.level_values(level)) {
                let k = kernel(t);
                for d in 0..D {
                    sum[d] += g * k[d];
                }
                count += 1;
            }
            let cur = sum.map(|s| s / count as f64);
            if level > 0 {
                diff = (0..D).map(|d| (cur[d] - prev[d]).abs()).fold(0.0, f64::max);
                if diff <= QUADRATURE_TOL {
                    return (cur, diff);
                }
            }
            prev = cur;
        }
        (prev, diff)
    }

    /// Trapezoidal mean with exactly `nodes` nodes and no refinement.
    fn integrate_fixed(&self, nodes: usize, kernel: impl Fn(f64) -> f64) -> f64 {
        let step = 2.0 * PI / nodes as f64;
        (0..nodes)
            .map(|j| {
                let t = j as f64 * step - PI;
                (self.g)(t) * kernel(t)
            })
            .sum::<f64>()
            / nodes as f64
    }

    fn sup(&self) -> f64 {
        (0..SUP_GRID)
            .map(|j| (self.g)(2.0 * PI * j as f64 / SUP_GRID as f64 - PI).abs())
            .fold(0.0, f64::max)
    }
}

/// Harmonic functions with a closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedForm {
    Constant(f64),
    /// `u(z) = z_axis`, the real (`0`) or imaginary (`1`) part.
    Coordinate(usize),
    /// `u_0(a + w) = (2M/pi) arctan(2R Im w / (R^2 - |w|^2))`.
    ExtremalU0,
    /// `ell((z - a)/R)` for `ell(x, y) = (alpha+beta)/2 + ((beta-alpha)/pi) arctan(2y / (1 - x^2 - y^2))`.
    ExtremalEll(IntervalRange),
    /// Poisson kernel `(R^2 - |w|^2) / |w - R e^{i phi}|^2` with pole angle `phi`.
    PoissonKernel(f64),
}

#[derive(Debug, Clone)]
pub enum Representation {
    BoundaryData(BoundaryData),
    ClosedForm(ClosedForm),
}

/// Real harmonic function on a disk.
#[derive(Debug, Clone)]
pub struct HarmonicDiskFunction {
    disk: DiskSpec,
    repr: Representation,
}

/// `arctan(2R y / (R^2 - |w|^2))` and its gradient in `w = (x, y)`.
fn atan_form(w: [f64; 2], r: f64) -> (f64, [f64; 2]) {
    let [x, y] = w;
    let d = r * r - x * x - y * y;
    let q = 2.0 * r * y / d;
    let dq = [4.0 * r * x * y / (d * d), 2.0 * r * (r * r - x * x + y * y) / (d * d)];
    let s = 1.0 / (1.0 + q * q);
    (q.atan(), [dq[0] * s, dq[1] * s])
}

impl HarmonicDiskFunction {
    pub fn closed(disk: DiskSpec, form: ClosedForm) -> Result<Self> {
        if let ClosedForm::Coordinate(axis) = form {
            if axis > 1 {
                return Err(Error::InvalidParameter(format!("coordinate axis must be 0 or 1, got {axis}")));
            }
        }
        Ok(Self {
            disk,
            repr: Representation::ClosedForm(form),
        })
    }

    pub fn constant(disk: DiskSpec, c: f64) -> Self {
        Self {
            disk,
            repr: Representation::ClosedForm(ClosedForm::Constant(c)),
        }
    }

    pub fn extremal_u0(disk: DiskSpec) -> Self {
        Self {
            disk,
            repr: Representation::ClosedForm(ClosedForm::ExtremalU0),
        }
    }

    pub fn extremal_ell(disk: DiskSpec, range: IntervalRange) -> Self {
        Self {
            disk,
            repr: Representation::ClosedForm(ClosedForm::ExtremalEll(range)),
        }
    }

    /// Poisson integral of `g` over the boundary circle of `disk`, with
    /// `nodes` initial quadrature nodes.
    pub fn from_boundary<G>(disk: DiskSpec, g: G, nodes: usize) -> Result<Self>
    where
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Ok(Self {
            disk,
            repr: Representation::BoundaryData(BoundaryData::new(g, nodes)?),
        })
    }

    pub fn disk(&self) -> &DiskSpec {
        &self.disk
    }

    pub fn representation(&self) -> &Representation {
        &self.repr
    }

    fn relative(&self, z: [f64; 2]) -> Result<[f64; 2]> {
        if !(z[0].is_finite() && z[1].is_finite()) {
            return Err(Error::NonFinite(z.to_vec()));
        }
        let w = [z[0] - self.disk.center()[0], z[1] - self.disk.center()[1]];
        if w[0].hypot(w[1]) >= self.disk.radius() {
            return Err(Error::ExteriorPoint(z.to_vec()));
        }
        Ok(w)
    }

    /// `u(z)` at an absolute point `z` of the disk.
    pub fn eval(&self, z: [f64; 2]) -> Result<Evaluation> {
        let w = self.relative(z)?;
        let r = self.disk.radius();
        let exact = |value| Ok(Evaluation { value, error: 0.0 });
        match &self.repr {
            Representation::ClosedForm(form) => match *form {
                ClosedForm::Constant(c) => exact(c),
                ClosedForm::Coordinate(axis) => exact(z[axis]),
                ClosedForm::ExtremalU0 => exact(2.0 * self.disk.bound() / PI * atan_form(w, r).0),
                ClosedForm::ExtremalEll(range) => {
                    let (a, _) = atan_form([w[0] / r, w[1] / r], 1.0);
                    exact(range.midpoint() + range.width() / PI * a)
                }
                ClosedForm::PoissonKernel(phi) => exact(poisson_kernel(w, r, phi)),
            },
            Representation::BoundaryData(data) => {
                let ([v], error) = data.integrate(|t| [poisson_kernel(w, r, t)]);
                Ok(Evaluation { value: v, error })
            }
        }
    }

    /// `u(a + r e^{it})`.
    pub fn poisson_eval(&self, radius: f64, t: f64) -> Result<Evaluation> {
        if !(radius >= 0.0 && radius < self.disk.radius()) {
            return Err(Error::OutOfDomain {
                name: "r",
                value: radius,
                expected: "0 <= r < R",
            });
        }
        let a = self.disk.center();
        self.eval([a[0] + radius * t.cos(), a[1] + radius * t.sin()])
    }

    /// Boundary-data evaluation with exactly `nodes` trapezoid nodes.
    ///
    /// Closed forms ignore `nodes` and evaluate exactly.
    pub fn poisson_eval_fixed(&self, radius: f64, t: f64, nodes: usize) -> Result<f64> {
        if nodes < 4 || !nodes.is_power_of_two() {
            return Err(Error::InvalidParameter(format!("node count must be a power of two >= 4, got {nodes}")));
        }
        match &self.repr {
            Representation::ClosedForm(_) => Ok(self.poisson_eval(radius, t)?.value),
            Representation::BoundaryData(data) => {
                if !(radius >= 0.0 && radius < self.disk.radius()) {
                    return Err(Error::OutOfDomain {
                        name: "r",
                        value: radius,
                        expected: "0 <= r < R",
                    });
                }
                let w = [radius * t.cos(), radius * t.sin()];
                Ok(data.integrate_fixed(nodes, |th| poisson_kernel(w, self.disk.radius(), th)))
            }
        }
    }

    /// `u(a)`: the quadrature mean of the boundary values, or the closed form
    /// at the center.
    pub fn mean_value(&self) -> Evaluation {
        match &self.repr {
            Representation::BoundaryData(data) => {
                let ([v], error) = data.integrate(|_| [1.0]);
                Evaluation { value: v, error }
            }
            Representation::ClosedForm(_) => self.eval(self.disk.center()).expect("the center is interior"),
        }
    }

    /// Gradient `(du/dx, du/dy)` at an absolute point `z`.
    pub fn gradient(&self, z: [f64; 2]) -> Result<GradientEvaluation> {
        let w = self.relative(z)?;
        let r = self.disk.radius();
        let exact = |value| Ok(GradientEvaluation { value, error: 0.0 });
        match &self.repr {
            Representation::ClosedForm(form) => match *form {
                ClosedForm::Constant(_) => exact([0.0, 0.0]),
                ClosedForm::Coordinate(0) => exact([1.0, 0.0]),
                ClosedForm::Coordinate(_) => exact([0.0, 1.0]),
                ClosedForm::ExtremalU0 => {
                    let (_, g) = atan_form(w, r);
                    let c = 2.0 * self.disk.bound() / PI;
                    exact([c * g[0], c * g[1]])
                }
                ClosedForm::ExtremalEll(range) => {
                    let (_, g) = atan_form([w[0] / r, w[1] / r], 1.0);
                    let c = range.width() / (PI * r);
                    exact([c * g[0], c * g[1]])
                }
                ClosedForm::PoissonKernel(phi) => exact(poisson_kernel_gradient(w, r, phi)),
            },
            Representation::BoundaryData(data) => {
                let (value, error) = data.integrate(|t| poisson_kernel_gradient(w, r, t));
                Ok(GradientEvaluation { value, error })
            }
        }
    }

    /// Central finite-difference gradient with step `h`.
    pub fn gradient_fd(&self, z: [f64; 2], h: f64) -> Result<[f64; 2]> {
        let f = |dx: f64, dy: f64| self.eval([z[0] + dx, z[1] + dy]).map(|e| e.value);
        Ok([(f(h, 0.0)? - f(-h, 0.0)?) / (2.0 * h), (f(0.0, h)? - f(0.0, -h)?) / (2.0 * h)])
    }

    /// Five-point discrete Laplacian with step `h`.
    pub fn laplacian_fd(&self, z: [f64; 2], h: f64) -> Result<f64> {
        let f = |dx: f64, dy: f64| self.eval([z[0] + dx, z[1] + dy]).map(|e| e.value);
        Ok((f(h, 0.0)? + f(-h, 0.0)? + f(0.0, h)? + f(0.0, -h)? - 4.0 * f(0.0, 0.0)?) / (h * h))
    }

    /// `u(a + R e^{it})`: the data itself, or the closed form just inside the
    /// circle.
    pub fn boundary_value(&self, t: f64) -> Result<f64> {
        match &self.repr {
            Representation::BoundaryData(data) => Ok(data.value(t)),
            Representation::ClosedForm(ClosedForm::PoissonKernel(_)) => Ok(f64::INFINITY),
            Representation::ClosedForm(_) => {
                let (a, r) = (self.disk.center(), self.disk.radius() * (1.0 - 1e-12));
                Ok(self.eval([a[0] + r * t.cos(), a[1] + r * t.sin()])?.value)
            }
        }
    }

    /// Supremum of `|u|` on the closed disk: exact for closed forms, sampled
    /// on a fine boundary grid for boundary data.
    pub fn boundary_sup(&self) -> f64 {
        let a = self.disk.center();
        match &self.repr {
            Representation::ClosedForm(form) => match *form {
                ClosedForm::Constant(c) => c.abs(),
                ClosedForm::Coordinate(axis) => a[axis].abs() + self.disk.radius(),
                ClosedForm::ExtremalU0 => self.disk.bound(),
                ClosedForm::ExtremalEll(range) => range.alpha().abs().max(range.beta().abs()),
                ClosedForm::PoissonKernel(_) => f64::INFINITY,
            },
            Representation::BoundaryData(data) => data.sup(),
        }
    }

    /// Infimum and supremum of `u` over the circle, same conventions as
    /// [`boundary_sup`](Self::boundary_sup).
    pub fn boundary_range(&self) -> (f64, f64) {
        let a = self.disk.center();
        match &self.repr {
            Representation::ClosedForm(form) => match *form {
                ClosedForm::Constant(c) => (c, c),
                ClosedForm::Coordinate(axis) => (a[axis] - self.disk.radius(), a[axis] + self.disk.radius()),
                ClosedForm::ExtremalU0 => (-self.disk.bound(), self.disk.bound()),
                ClosedForm::ExtremalEll(range) => (range.alpha(), range.beta()),
                ClosedForm::PoissonKernel(_) => (0.0, f64::INFINITY),
            },
            Representation::BoundaryData(data) => (0..SUP_GRID)
                .map(|j| data.value(2.0 * PI * j as f64 / SUP_GRID as f64 - PI))
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v))),
        }
    }
}

fn poisson_kernel(w: [f64; 2], r: f64, theta: f64) -> f64 {
    let d = [w[0] - r * theta.cos(), w[1] - r * theta.sin()];
    (r * r - w[0] * w[0] - w[1] * w[1]) / (d[0] * d[0] + d[1] * d[1])
}

fn poisson_kernel_gradient(w: [f64; 2], r: f64, theta: f64) -> [f64; 2] {
    let d = [w[0] - r * theta.cos(), w[1] - r * theta.sin()];
    let d2 = d[0] * d[0] + d[1] * d[1];
    let num = r * r - w[0] * w[0] - w[1] * w[1];
    let inv = 1.0 / (d2 * d2);
    [
        (-2.0 * w[0] * d2 - 2.0 * num * d[0]) * inv,
        (-2.0 * w[1] * d2 - 2.0 * num * d[1]) * inv,
    ]
}

/// Complex harmonic function `f = u + iv` stored as its two real parts.
#[derive(Debug, Clone)]
pub struct ComplexHarmonic {
    re: HarmonicDiskFunction,
    im: HarmonicDiskFunction,
}

impl ComplexHarmonic {
    pub fn new(re: HarmonicDiskFunction, im: HarmonicDiskFunction) -> Result<Self> {
        if re.disk != im.disk {
            return Err(Error::InvalidInput("real and imaginary parts live on different disks".into()));
        }
        Ok(Self { re, im })
    }

    /// `f(z) = z`.
    pub fn identity(disk: DiskSpec) -> Self {
        Self {
            re: HarmonicDiskFunction::closed(disk, ClosedForm::Coordinate(0)).expect("valid axis"),
            im: HarmonicDiskFunction::closed(disk, ClosedForm::Coordinate(1)).expect("valid axis"),
        }
    }

    /// A real harmonic function viewed as complex-valued.
    pub fn real(u: HarmonicDiskFunction) -> Self {
        let im = HarmonicDiskFunction::constant(u.disk, 0.0);
        Self { re: u, im }
    }

    pub fn re(&self) -> &HarmonicDiskFunction {
        &self.re
    }

    pub fn im(&self) -> &HarmonicDiskFunction {
        &self.im
    }

    pub fn disk(&self) -> &DiskSpec {
        &self.re.disk
    }

    pub fn eval(&self, z: [f64; 2]) -> Result<(Complex64, f64)> {
        let (u, v) = (self.re.eval(z)?, self.im.eval(z)?);
        Ok((Complex64::new(u.value, v.value), u.error + v.error))
    }

    /// Wirtinger derivatives `(df/dz, df/dzbar)` and the quadrature error.
    pub fn wirtinger(&self, z: [f64; 2]) -> Result<(Complex64, Complex64, f64)> {
        let (gu, gv) = (self.re.gradient(z)?, self.im.gradient(z)?);
        let fx = Complex64::new(gu.value[0], gv.value[0]);
        let fy = Complex64::new(gu.value[1], gv.value[1]);
        let i = Complex64::i();
        Ok(((fx - i * fy) * 0.5, (fx + i * fy) * 0.5, gu.error + gv.error))
    }

    /// Supremum of `|f|` on a fine boundary grid.
    pub fn boundary_sup(&self) -> Result<f64> {
        (0..SUP_GRID)
            .map(|j| {
                let t = 2.0 * PI * j as f64 / SUP_GRID as f64 - PI;
                Ok(self.re.boundary_value(t)?.hypot(self.im.boundary_value(t)?))
            })
            .try_fold(0.0f64, |m, v: Result<f64>| Ok(m.max(v?)))
    }
}

/// Real trigonometric polynomial `a_0 + sum_k (a_k cos k t + b_k sin k t)`,
/// whose harmonic extension to the unit disk is known in closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPolynomial {
    a: Vec<f64>,
    b: Vec<f64>,
}

impl TrigPolynomial {
    /// Coefficients `a_0..a_d` and `b_1..b_d`.
    pub fn new(a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        if a.is_empty() || b.len() + 1 != a.len() {
            return Err(Error::InvalidParameter("expected a_0..a_d and b_1..b_d".into()));
        }
        Ok(Self { a, b })
    }

    /// Random polynomial of the given degree with `|a_k|, |b_k| <= 1/k`,
    /// rescaled so that its sampled supremum equals `sup`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, degree: usize, sup: f64, zero_mean: bool) -> Self {
        let a0 = if zero_mean { 0.0 } else { rng.random_range(-1.0..1.0) };
        let mut a = vec![a0];
        let mut b = Vec::with_capacity(degree);
        for k in 1..=degree {
            a.push(rng.random_range(-1.0..1.0) / k as f64);
            b.push(rng.random_range(-1.0..1.0) / k as f64);
        }
        let p = Self { a, b };
        let m = (0..SUP_GRID)
            .map(|j| p.value(2.0 * PI * j as f64 / SUP_GRID as f64).abs())
            .fold(0.0, f64::max);
        p.scaled(if m > 0.0 { sup / m } else { 0.0 })
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            a: self.a.iter().map(|v| v * c).collect(),
            b: self.b.iter().map(|v| v * c).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.b.len()
    }

    pub fn mean(&self) -> f64 {
        self.a[0]
    }

    pub fn value(&self, t: f64) -> f64 {
        self.a[0]
            + self
                .b
                .iter()
                .enumerate()
                .map(|(i, b)| {
                    let k = (i + 1) as f64;
                    self.a[i + 1] * (k * t).cos() + b * (k * t).sin()
                })
                .sum::<f64>()
    }

    /// `Re F(w)` with `F(w) = a_0 + sum (a_k - i b_k) w^k`, the harmonic
    /// extension evaluated at `w` in the unit disk.
    pub fn extension(&self, w: [f64; 2]) -> f64 {
        let w = Complex64::new(w[0], w[1]);
        let mut pow = Complex64::new(1.0, 0.0);
        let mut f = Complex64::new(self.a[0], 0.0);
        for (i, b) in self.b.iter().enumerate() {
            pow *= w;
            f += Complex64::new(self.a[i + 1], -b) * pow;
        }
        f.re
    }

    /// Gradient of [`extension`](Self::extension): `(Re F', -Im F')`.
    pub fn extension_gradient(&self, w: [f64; 2]) -> [f64; 2] {
        let w = Complex64::new(w[0], w[1]);
        let mut pow = Complex64::new(1.0, 0.0);
        let mut df = Complex64::new(0.0, 0.0);
        for (i, b) in self.b.iter().enumerate() {
            let k = (i + 1) as f64;
            df += Complex64::new(self.a[i + 1], -b) * pow * k;
            pow *= w;
        }
        [df.re, -df.im]
    }

    /// The Poisson integral of this polynomial on `disk`.
    pub fn harmonic(&self, disk: DiskSpec, nodes: usize) -> Result<HarmonicDiskFunction> {
        let p = self.clone();
        HarmonicDiskFunction::from_boundary(disk, move |t| p.value(t), nodes)
    }
}
