//! Domains of `R^n` with exact boundary-distance oracles.
//!
//! Boundary points are never interior: every distance query on a boundary
//! or exterior point fails with [`Error::ExteriorPoint`].

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::sampling;

/// A point of `R^n` with finite coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidParameter("a point needs at least one coordinate".into()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite(coords));
        }
        Ok(Self { coords })
    }

    pub fn origin(n: usize) -> Self {
        Self { coords: vec![0.0; n] }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn norm(&self) -> f64 {
        norm(&self.coords)
    }

    pub fn dist(&self, other: &Point) -> f64 {
        dist(&self.coords, &other.coords)
    }

    /// Last coordinate `x_n`.
    pub fn last(&self) -> f64 {
        self.coords[self.coords.len() - 1]
    }
}

impl<const N: usize> From<[f64; N]> for Point {
    fn from(c: [f64; N]) -> Self {
        Point::new(c.to_vec()).expect("point literal must have finite coordinates")
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = Error;
    fn try_from(c: Vec<f64>) -> Result<Self> {
        Point::new(c)
    }
}

impl FromStr for Point {
    type Err = Error;
    /// Parses a comma separated coordinate list such as `0.5,0`.
    fn from_str(s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::InvalidInput(format!("bad point {s:?}: {e}")))?;
        Point::new(coords)
    }
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q) * (p - q)).sum::<f64>().sqrt()
}

/// Euclidean distance from `p` to the segment `[a, b]`.
pub(crate) fn point_segment_dist(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let ab: Vec<f64> = a.iter().zip(b).map(|(x, y)| y - x).collect();
    let len2: f64 = ab.iter().map(|c| c * c).sum();
    if len2 == 0.0 {
        return dist(p, a);
    }
    let t = (p.iter().zip(a).zip(&ab).map(|((pi, ai), di)| (pi - ai) * di).sum::<f64>() / len2).clamp(0.0, 1.0);
    let proj: Vec<f64> = a.iter().zip(&ab).map(|(ai, di)| ai + t * di).collect();
    dist(p, &proj)
}

/// Axis-aligned box used when sampling unbounded domains.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingBox {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl SamplingBox {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::InvalidParameter("sampling box bounds must have equal, non-zero length".into()));
        }
        if lo.iter().zip(&hi).any(|(l, h)| !(l.is_finite() && h.is_finite() && l < h)) {
            return Err(Error::InvalidParameter(format!("degenerate sampling box {lo:?}..{hi:?}")));
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    /// Longest side; the local scale used for sampling margins.
    pub fn max_side(&self) -> f64 {
        self.lo.iter().zip(&self.hi).map(|(l, h)| h - l).fold(0.0, f64::max)
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.iter().zip(self.lo.iter().zip(&self.hi)).all(|(c, (l, h))| *c >= *l && *c <= *h)
    }
}

type DistFn = dyn Fn(&[f64]) -> f64 + Send + Sync;
type ContainsFn = dyn Fn(&[f64]) -> bool + Send + Sync;

/// A domain described only by a boundary-distance oracle and a membership
/// predicate.
#[derive(Clone)]
pub struct GenericDomain {
    label: String,
    dist: Arc<DistFn>,
    contains: Arc<ContainsFn>,
}

impl fmt::Debug for GenericDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GenericDomain").field("label", &self.label).finish_non_exhaustive()
    }
}

#[derive(Debug, Clone)]
pub enum DomainKind {
    /// `B^n`, the open unit ball.
    UnitBall,
    /// `H^n = { x : x_n > 0 }`.
    HalfSpace,
    /// Planar disk `B^2(center, radius)`.
    Disk { center: [f64; 2], radius: f64 },
    /// `R^2 \ {0}`.
    PuncturedPlane,
    /// `R^2 \ { (t, 0) : t >= 0 }`.
    SlitPlane,
    Generic(GenericDomain),
}

/// A proper subdomain of `R^n`.
#[derive(Debug, Clone)]
pub struct Domain {
    kind: DomainKind,
    dim: usize,
    sampling_box: Option<SamplingBox>,
}

impl Domain {
    pub fn unit_ball(n: usize) -> Result<Self> {
        Self::with_dim(DomainKind::UnitBall, n)
    }

    pub fn half_space(n: usize) -> Result<Self> {
        Self::with_dim(DomainKind::HalfSpace, n)
    }

    pub fn disk(center: [f64; 2], radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) || center.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter(format!("disk needs a finite centre and radius > 0, got {center:?}, {radius}")));
        }
        Self::with_dim(DomainKind::Disk { center, radius }, 2)
    }

    pub fn punctured_plane() -> Self {
        Self {
            kind: DomainKind::PuncturedPlane,
            dim: 2,
            sampling_box: None,
        }
    }

    pub fn slit_plane() -> Self {
        Self {
            kind: DomainKind::SlitPlane,
            dim: 2,
            sampling_box: None,
        }
    }

    /// Domain given by a distance oracle and a membership predicate.
    ///
    /// The oracle is trusted: it must return `inf |x - w|` over boundary
    /// points `w` for every interior `x`.
    pub fn generic<D, C>(label: impl Into<String>, dim: usize, dist: D, contains: C) -> Result<Self>
    where
        D: Fn(&[f64]) -> f64 + Send + Sync + 'static,
        C: Fn(&[f64]) -> bool + Send + Sync + 'static,
    {
        Self::with_dim(
            DomainKind::Generic(GenericDomain {
                label: label.into(),
                dist: Arc::new(dist),
                contains: Arc::new(contains),
            }),
            dim,
        )
    }

    fn with_dim(kind: DomainKind, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("domain dimension must be at least 2, got {n}")));
        }
        Ok(Self {
            kind,
            dim: n,
            sampling_box: None,
        })
    }

    pub fn with_sampling_box(mut self, b: SamplingBox) -> Result<Self> {
        if b.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: b.dim() });
        }
        self.sampling_box = Some(b);
        Ok(self)
    }

    pub fn kind(&self) -> &DomainKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sampling_box(&self) -> Option<&SamplingBox> {
        self.sampling_box.as_ref()
    }

    pub fn is_bounded(&self) -> bool {
        matches!(self.kind, DomainKind::UnitBall | DomainKind::Disk { .. })
    }

    fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() == self.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim, got: x.len() })
        }
    }

    /// Distance to the boundary, or `0` on the boundary and outside.
    pub(crate) fn raw_distance(&self, x: &[f64]) -> f64 {
        match &self.kind {
            DomainKind::UnitBall => (1.0 - norm(x)).max(0.0),
            DomainKind::HalfSpace => x[x.len() - 1].max(0.0),
            DomainKind::Disk { center, radius } => (radius - dist(x, center)).max(0.0),
            DomainKind::PuncturedPlane => norm(x),
            DomainKind::SlitPlane => {
                if x[0] <= 0.0 {
                    norm(x)
                } else {
                    x[1].abs()
                }
            }
            DomainKind::Generic(g) => {
                if (g.contains)(x) {
                    (g.dist)(x).max(0.0)
                } else {
                    0.0
                }
            }
        }
    }

    pub(crate) fn raw_contains(&self, x: &[f64]) -> bool {
        match &self.kind {
            DomainKind::Generic(g) => (g.contains)(x) && (g.dist)(x) > 0.0,
            _ => self.raw_distance(x) > 0.0,
        }
    }

    /// `d_G(x) = inf { |x - w| : w in boundary }` for an interior point `x`.
    pub fn dist_to_boundary(&self, x: &Point) -> Result<f64> {
        self.check_dim(x.coords())?;
        if !self.raw_contains(x.coords()) {
            return Err(Error::ExteriorPoint(x.coords().to_vec()));
        }
        Ok(self.raw_distance(x.coords()))
    }

    pub fn contains(&self, x: &Point) -> Result<bool> {
        self.check_dim(x.coords())?;
        Ok(self.raw_contains(x.coords()))
    }

    /// Smallest boundary distance along the segment `[a, b]`; zero if the
    /// segment meets the boundary.
    pub(crate) fn segment_clearance(&self, a: &[f64], b: &[f64]) -> f64 {
        let da = self.raw_distance(a);
        let db = self.raw_distance(b);
        if da <= 0.0 || db <= 0.0 {
            return 0.0;
        }
        match &self.kind {
            // concave or affine distance functions attain their minimum at an endpoint
            DomainKind::UnitBall | DomainKind::HalfSpace | DomainKind::Disk { .. } => da.min(db),
            DomainKind::PuncturedPlane => point_segment_dist(&[0.0, 0.0], a, b),
            DomainKind::SlitPlane => {
                if segment_meets_slit(a, b) {
                    0.0
                } else {
                    let to_origin = point_segment_dist(&[0.0, 0.0], a, b);
                    to_origin.min(da).min(db)
                }
            }
            DomainKind::Generic(_) => {
                const PROBES: usize = 64;
                let mut m = da.min(db);
                for i in 1..PROBES {
                    let t = i as f64 / PROBES as f64;
                    let p: Vec<f64> = a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect();
                    if !self.raw_contains(&p) {
                        return 0.0;
                    }
                    m = m.min(self.raw_distance(&p));
                }
                m
            }
        }
    }

    /// Per-axis hard limits of the domain, used to clip computational grids.
    pub(crate) fn axis_limits(&self) -> Vec<(f64, f64)> {
        let mut lim = vec![(f64::NEG_INFINITY, f64::INFINITY); self.dim];
        match &self.kind {
            DomainKind::UnitBall => lim.iter_mut().for_each(|l| *l = (-1.0, 1.0)),
            DomainKind::HalfSpace => lim[self.dim - 1].0 = 0.0,
            DomainKind::Disk { center, radius } => {
                lim[0] = (center[0] - radius, center[0] + radius);
                lim[1] = (center[1] - radius, center[1] + radius);
            }
            _ => {}
        }
        lim
    }

    /// Scale against which sampling margins are measured.
    fn local_scale(&self) -> Result<f64> {
        match &self.kind {
            DomainKind::UnitBall => Ok(1.0),
            DomainKind::Disk { radius, .. } => Ok(*radius),
            _ => self.sampling_box.as_ref().map(SamplingBox::max_side).ok_or(Error::MissingSamplingBox),
        }
    }

    /// Deterministic interior sample with `d_G(x) >= margin * scale`, where the
    /// scale is the radius for balls and disks and the longest side of the
    /// sampling box otherwise.
    pub fn sample_interior(&self, count: usize, seed: u64, margin: f64) -> Result<Vec<Point>> {
        if count == 0 {
            return Err(Error::InvalidParameter("sample count must be at least 1".into()));
        }
        if !(margin > 0.0 && margin < 1.0) {
            return Err(Error::OutOfDomain {
                name: "margin",
                value: margin,
                expected: "0 < margin < 1",
            });
        }
        let scale = self.local_scale()?;
        let min_dist = margin * scale;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(count);
        match &self.kind {
            DomainKind::UnitBall => {
                let c = vec![0.0; self.dim];
                while out.len() < count {
                    out.push(Point { coords: sampling::in_ball(&mut rng, &c, 1.0 - margin) });
                }
            }
            DomainKind::Disk { center, radius } => {
                while out.len() < count {
                    let p = sampling::in_ball(&mut rng, center, radius * (1.0 - margin));
                    out.push(Point { coords: p });
                }
            }
            _ => {
                let b = self.sampling_box.as_ref().ok_or(Error::MissingSamplingBox)?;
                let max_attempts = 10_000 + 1_000 * count;
                let mut attempts = 0;
                while out.len() < count {
                    if attempts >= max_attempts {
                        return Err(Error::EmptySampleRegion { attempts });
                    }
                    attempts += 1;
                    let p: Vec<f64> = b.lo.iter().zip(&b.hi).map(|(l, h)| rng.random_range(*l..*h)).collect();
                    if self.raw_contains(&p) && self.raw_distance(&p) >= min_dist {
                        out.push(Point { coords: p });
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Does the closed segment `[a, b]` meet the ray `{ (t, 0) : t >= 0 }`?
fn segment_meets_slit(a: &[f64], b: &[f64]) -> bool {
    let (a1, a2, b1, b2) = (a[0], a[1], b[0], b[1]);
    if a2 == 0.0 && b2 == 0.0 {
        return a1.max(b1) >= 0.0;
    }
    if a2 * b2 > 0.0 {
        return false;
    }
    let t = a2 / (a2 - b2);
    a1 + t * (b1 - a1) >= 0.0
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            DomainKind::UnitBall => write!(f, "ball:n={}", self.dim)?,
            DomainKind::HalfSpace => write!(f, "halfspace:n={}", self.dim)?,
            DomainKind::Disk { center, radius } => write!(f, "disk:a={},{};R={}", center[0], center[1], radius)?,
            DomainKind::PuncturedPlane => write!(f, "punctured-plane")?,
            DomainKind::SlitPlane => write!(f, "slit-plane")?,
            DomainKind::Generic(g) => write!(f, "generic:{}", g.label)?,
        }
        if let Some(b) = &self.sampling_box {
            let sep = if matches!(self.kind, DomainKind::PuncturedPlane | DomainKind::SlitPlane) { ':' } else { ';' };
            let sides: Vec<String> = b.lo.iter().zip(&b.hi).map(|(l, h)| format!("{l}:{h}")).collect();
            write!(f, "{sep}box={}", sides.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for Domain {
    type Err = Error;

    /// Parses `ball:n=2`, `halfspace:n=3`, `disk:a=0,0;R=2`,
    /// `punctured-plane` and `slit-plane`, each optionally followed by a
    /// sampling box such as `;box=-1:1,0:2`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::DomainParse {
            literal: s.to_string(),
            reason: reason.to_string(),
        };
        let (name, rest) = match s.split_once(':') {
            Some((n, r)) => (n.trim(), r.trim()),
            None => (s.trim(), ""),
        };
        let mut params: Vec<(&str, &str)> = Vec::new();
        for part in rest.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            params.push((k.trim(), v.trim()));
        }
        let get = |key: &str| params.iter().find(|(k, _)| *k == key).map(|(_, v)| *v);
        for (k, _) in &params {
            let allowed: &[&str] = match name {
                "ball" | "halfspace" => &["n", "box"],
                "disk" => &["a", "R", "box"],
                _ => &["box"],
            };
            if !allowed.contains(k) {
                return Err(bad(&format!("unknown parameter {k:?}")));
            }
        }
        let dim = || -> Result<usize> {
            get("n")
                .ok_or_else(|| bad("missing n"))?
                .parse::<usize>()
                .map_err(|_| bad("n must be an integer"))
        };
        let domain = match name {
            "ball" => Domain::unit_ball(dim()?)?,
            "halfspace" => Domain::half_space(dim()?)?,
            "disk" => {
                let a: Point = get("a").ok_or_else(|| bad("missing a"))?.parse()?;
                if a.dim() != 2 {
                    return Err(bad("disk centre must be planar"));
                }
                let r: f64 = get("R").ok_or_else(|| bad("missing R"))?.parse().map_err(|_| bad("R must be a number"))?;
                Domain::disk([a.coords[0], a.coords[1]], r)?
            }
            "punctured-plane" => Domain::punctured_plane(),
            "slit-plane" => Domain::slit_plane(),
            _ => return Err(bad("unknown domain kind")),
        };
        match get("box") {
            Some(spec) => {
                let mut lo = Vec::new();
                let mut hi = Vec::new();
                for side in spec.split(',') {
                    let (l, h) = side.split_once(':').ok_or_else(|| bad("box sides are lo:hi"))?;
                    lo.push(l.trim().parse::<f64>().map_err(|_| bad("box bound must be a number"))?);
                    hi.push(h.trim().parse::<f64>().map_err(|_| bad("box bound must be a number"))?);
                }
                domain.with_sampling_box(SamplingBox::new(lo, hi)?)
            }
            None => Ok(domain),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_center_distance() {
        let b = Domain::unit_ball(2).unwrap();
        assert_eq!(b.dist_to_boundary(&Point::from([0.0, 0.0])).unwrap(), 1.0);
    }

    #[test]
    fn half_space_distance_is_last_coordinate() {
        let h = Domain::half_space(2).unwrap();
        assert_eq!(h.dist_to_boundary(&Point::from([3.0, 0.25])).unwrap(), 0.25);
    }

    #[test]
    fn slit_plane_distance_matches_brute_force() {
        let g = Domain::slit_plane();
        let brute = |x: [f64; 2]| {
            (0..=200_000)
                .map(|i| i as f64 * 1e-4)
                .map(|t| ((x[0] - t).powi(2) + x[1].powi(2)).sqrt())
                .fold(f64::INFINITY, f64::min)
        };
        for x in [[-1.0, 0.0], [2.0, 0.5], [0.5, -0.25], [-3.0, 1.5], [1e-3, 2.0]] {
            let d = g.dist_to_boundary(&Point::from(x)).unwrap();
            assert!((d - brute(x)).abs() < 1e-4, "{x:?}: {d} vs {}", brute(x));
        }
        assert_eq!(g.dist_to_boundary(&Point::from([-1.0, 0.0])).unwrap(), 1.0);
    }

    #[test]
    fn membership() {
        let b = Domain::unit_ball(2).unwrap();
        assert!(b.contains(&Point::from([0.5, 0.0])).unwrap());
        assert!(!b.contains(&Point::from([1.0, 0.0])).unwrap());
        let s = Domain::slit_plane();
        assert!(!s.contains(&Point::from([2.0, 0.0])).unwrap());
        assert!(!s.contains(&Point::from([0.0, 0.0])).unwrap());
        assert!(s.contains(&Point::from([-2.0, 0.0])).unwrap());
        let p = Domain::punctured_plane();
        assert!(!p.contains(&Point::from([0.0, 0.0])).unwrap());
        assert!(p.contains(&Point::from([0.0, 1e-9])).unwrap());
    }

    #[test]
    fn errors() {
        let b = Domain::unit_ball(2).unwrap();
        assert!(matches!(
            b.dist_to_boundary(&Point::from([0.0, 0.0, 0.0])),
            Err(Error::DimensionMismatch { expected: 2, got: 3 })
        ));
        assert!(matches!(b.dist_to_boundary(&Point::from([1.0, 0.0])), Err(Error::ExteriorPoint(_))));
        assert!(matches!(b.contains(&Point::from([1.0])), Err(Error::DimensionMismatch { .. })));
        assert!(Domain::unit_ball(1).is_err());
        assert!(Point::new(vec![f64::NAN]).is_err());
    }

    #[test]
    fn sampling_is_deterministic_and_respects_margin() {
        let b = Domain::unit_ball(2).unwrap();
        let p = b.sample_interior(3, 7, 0.01).unwrap();
        assert_eq!(p.len(), 3);
        assert!(p.iter().all(|x| x.norm() < 0.99));
        assert_eq!(p, b.sample_interior(3, 7, 0.01).unwrap());
        assert_ne!(p, b.sample_interior(3, 8, 0.01).unwrap());
    }

    #[test]
    fn unbounded_sampling_needs_a_box() {
        let h = Domain::half_space(2).unwrap();
        assert_eq!(h.sample_interior(3, 1, 0.01), Err(Error::MissingSamplingBox));
        let h = h.with_sampling_box(SamplingBox::new(vec![-1.0, 0.0], vec![1.0, 2.0]).unwrap()).unwrap();
        let pts = h.sample_interior(50, 1, 0.05).unwrap();
        assert!(pts.iter().all(|x| x.last() >= 0.1));
    }

    #[test]
    fn empty_region_is_reported() {
        let s = Domain::slit_plane()
            .with_sampling_box(SamplingBox::new(vec![1.0, -1e-6], vec![2.0, 1e-6]).unwrap())
            .unwrap();
        assert!(matches!(s.sample_interior(1, 0, 0.5), Err(Error::EmptySampleRegion { .. })));
    }

    #[test]
    fn generic_wrapper_agrees_with_closed_forms() {
        let named = Domain::slit_plane();
        let inner = named.clone();
        let inner2 = named.clone();
        let g = Domain::generic(
            "slit",
            2,
            move |x| inner.raw_distance(x),
            move |x| inner2.raw_contains(x),
        )
        .unwrap()
        .with_sampling_box(SamplingBox::new(vec![-2.0, -2.0], vec![2.0, 2.0]).unwrap())
        .unwrap();
        for p in g.sample_interior(200, 3, 0.01).unwrap() {
            let a = g.dist_to_boundary(&p).unwrap();
            let b = named.dist_to_boundary(&p).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn segment_clearance_detects_slit_crossing() {
        let s = Domain::slit_plane();
        assert_eq!(s.segment_clearance(&[1.0, 0.5], &[1.0, -0.5]), 0.0);
        let c = s.segment_clearance(&[-1.0, 0.5], &[-1.0, -0.5]);
        assert!((c - 1.0).abs() < 1e-15);
        let p = Domain::punctured_plane();
        assert!((p.segment_clearance(&[-1.0, 0.5], &[1.0, 0.5]) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn literals_round_trip() {
        for lit in ["ball:n=2", "halfspace:n=3", "disk:a=0,0;R=2", "punctured-plane", "slit-plane", "halfspace:n=2;box=-1:1,0:2"] {
            let d: Domain = lit.parse().unwrap();
            assert_eq!(d.to_string(), lit);
        }
        let d: Domain = "slit-plane:box=-2:2,-2:2".parse().unwrap();
        assert_eq!(d.to_string(), "slit-plane:box=-2:2,-2:2");
        assert!("ball".parse::<Domain>().is_err());
        assert!("cube:n=2".parse::<Domain>().is_err());
        assert!("disk:a=0,0".parse::<Domain>().is_err());
        assert!("ball:n=2;R=3".parse::<Domain>().is_err());
    }

    #[test]
    fn contains_iff_positive_distance() {
        let domains = [
            Domain::unit_ball(2).unwrap(),
            Domain::half_space(2).unwrap(),
            Domain::disk([0.5, -0.5], 2.0).unwrap(),
            Domain::punctured_plane(),
            Domain::slit_plane(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in &domains {
            for _ in 0..500 {
                let p = Point::from([rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)]);
                let inside = d.contains(&p).unwrap();
                assert_eq!(inside, d.raw_distance(p.coords()) > 0.0);
                assert_eq!(inside, d.dist_to_boundary(&p).is_ok());
            }
        }
    }
}
