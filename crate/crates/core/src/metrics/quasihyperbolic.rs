//! Numerical quasihyperbolic distance.
//!
//! `k_G(x, y)` is approximated from above in three stages:
//!
//! 1. a square grid is laid over a padded bounding box of `{x, y}`; nodes
//!    closer than half a cell to the boundary are dropped, and each node is
//!    joined to its 16 nearest lattice neighbours whenever the joining
//!    segment keeps half a cell away from the boundary;
//! 2. edges are weighted on demand by a three-point Simpson estimate of the
//!    integral of `1/d_G`, and the cheapest path from `x` to `y` is found by
//!    A* with `j_G` as the heuristic;
//! 3. the path is thinned to a few vertices and relaxed vertex by vertex,
//!    with a golden-section search along the perpendicular of the
//!    neighbouring chord, until a sweep gains less than the tolerance; the
//!    polyline is then subdivided and relaxed again until it has about
//!    `resolution / 4` segments.
//!
//! The final length is integrated adaptively. Every value returned is the
//! length of an admissible polyline, so it is an upper bound for the true
//! distance. Problems in `B^n` and `H^n` with
//! `n >= 3` are reduced to the plane that contains every geodesic through the
//! two points.

use petgraph::algo::astar;
use petgraph::graph::{NodeIndex, UnGraph};
use petgraph::visit::EdgeRef;
use serde::Serialize;

use crate::domains::{self, Domain, DomainKind, Point};
use crate::error::{Error, Result};
use crate::quadrature::adaptive_simpson;

/// Lattice steps joining a node to its 16 nearest neighbours, one per
/// undirected pair.
const STENCIL: [(i64, i64); 8] = [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2), (2, -1), (1, -2)];

const GOLDEN_ITERS: usize = 30;

/// Vertices kept when the graph path is thinned.
const COARSE_SEGMENTS: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct QuasihyperbolicOptions {
    /// Cells along the longer side of the computational box.
    pub resolution: usize,
    /// Padding added on every side of the bounding box of `{x, y}`, as a
    /// fraction of its longer side.
    pub padding: f64,
    /// How many times the padding may double when no path exists.
    pub max_box_growth: usize,
    pub refine_sweeps: usize,
    /// Stop refining once a sweep shortens the path by less than this.
    pub refine_tol: f64,
    /// Absolute tolerance of each segment integral.
    pub quad_tol: f64,
}

impl Default for QuasihyperbolicOptions {
    fn default() -> Self {
        Self {
            resolution: 128,
            padding: 0.5,
            max_box_growth: 4,
            refine_sweeps: 30,
            refine_tol: 1e-6,
            quad_tol: 1e-9,
        }
    }
}

impl QuasihyperbolicOptions {
    pub fn with_resolution(resolution: usize) -> Self {
        Self {
            resolution,
            ..Self::default()
        }
    }
}

/// Polyline through interior points together with its quasihyperbolic length.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicPath {
    pub vertices: Vec<Point>,
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverDiagnostics {
    pub resolution: usize,
    pub cell_size: f64,
    pub grid_nodes: usize,
    pub grid_edges: usize,
    /// Estimated length of the shortest graph path before refinement.
    pub graph_length: f64,
    pub refine_sweeps: usize,
    pub box_lo: [f64; 2],
    pub box_hi: [f64; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuasihyperbolicResult {
    pub value: f64,
    pub path: GeodesicPath,
    pub diagnostics: SolverDiagnostics,
}

/// Isometric embedding of the plane of computation into `R^n`.
enum Embedding {
    Identity,
    Plane { origin: Vec<f64>, e1: Vec<f64>, e2: Vec<f64> },
}

impl Embedding {
    fn lift(&self, q: [f64; 2]) -> Vec<f64> {
        match self {
            Embedding::Identity => q.to_vec(),
            Embedding::Plane { origin, e1, e2 } => origin.iter().zip(e1.iter().zip(e2)).map(|(o, (a, b))| o + q[0] * a + q[1] * b).collect(),
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

fn unit(v: &[f64]) -> Option<Vec<f64>> {
    let n = domains::norm(v);
    (n > 1e-14).then(|| v.iter().map(|c| c / n).collect())
}

/// Reduces the problem to a planar one: returns the planar domain, the
/// images of `x` and `y`, and the embedding that maps results back.
fn reduce(domain: &Domain, x: &Point, y: &Point) -> Result<(Domain, [f64; 2], [f64; 2], Embedding)> {
    let n = domain.dim();
    if n == 2 {
        let (a, b) = (x.coords(), y.coords());
        return Ok((domain.clone(), [a[0], a[1]], [b[0], b[1]], Embedding::Identity));
    }
    match domain.kind() {
        DomainKind::UnitBall => {
            // geodesics through x and y stay in the plane spanned by 0, x and y
            let (a, b) = (x.coords(), y.coords());
            let e1 = unit(a).or_else(|| unit(b)).unwrap_or_else(|| {
                let mut e = vec![0.0; n];
                e[0] = 1.0;
                e
            });
            let proj = dot(b, &e1);
            let rest: Vec<f64> = b.iter().zip(&e1).map(|(bi, ei)| bi - proj * ei).collect();
            let e2 = unit(&rest).unwrap_or_else(|| vec![0.0; n]);
            let xa = [dot(a, &e1), dot(a, &e2)];
            let ya = [dot(b, &e1), dot(b, &e2)];
            Ok((Domain::unit_ball(2)?, xa, ya, Embedding::Plane { origin: vec![0.0; n], e1, e2 }))
        }
        DomainKind::HalfSpace => {
            // geodesics lie in the vertical plane through x and y
            let (a, b) = (x.coords(), y.coords());
            let mut origin = a.to_vec();
            origin[n - 1] = 0.0;
            let mut horiz: Vec<f64> = a.iter().zip(b).map(|(p, q)| q - p).collect();
            horiz[n - 1] = 0.0;
            let offset = domains::norm(&horiz);
            let e1 = unit(&horiz).unwrap_or_else(|| {
                let mut e = vec![0.0; n];
                e[0] = 1.0;
                e
            });
            let mut e2 = vec![0.0; n];
            e2[n - 1] = 1.0;
            Ok((Domain::half_space(2)?, [0.0, a[n - 1]], [offset, b[n - 1]], Embedding::Plane { origin, e1, e2 }))
        }
        _ => Err(Error::Unsupported(format!(
            "quasihyperbolic distance in dimension {n} is only available for the unit ball and the half-space"
        ))),
    }
}

/// Numerical quasihyperbolic distance `k_G(x, y)` with an approximating
/// geodesic polyline.
pub fn quasihyperbolic(domain: &Domain, x: &Point, y: &Point, opts: &QuasihyperbolicOptions) -> Result<QuasihyperbolicResult> {
    domain.dist_to_boundary(x)?;
    domain.dist_to_boundary(y)?;
    if opts.resolution < 2 {
        return Err(Error::InvalidParameter(format!("resolution must be at least 2, got {}", opts.resolution)));
    }
    if x == y {
        return Ok(QuasihyperbolicResult {
            value: 0.0,
            path: GeodesicPath {
                vertices: vec![x.clone()],
                length: 0.0,
            },
            diagnostics: SolverDiagnostics {
                resolution: opts.resolution,
                cell_size: 0.0,
                grid_nodes: 0,
                grid_edges: 0,
                graph_length: 0.0,
                refine_sweeps: 0,
                box_lo: [0.0; 2],
                box_hi: [0.0; 2],
            },
        });
    }
    let (plane_domain, xa, ya, embedding) = reduce(domain, x, y)?;
    let plane = Plane {
        domain: &plane_domain,
        quad_tol: opts.quad_tol,
    };
    let mut padding = opts.padding;
    let mut attempt = 0;
    let (mut verts, mut diag) = loop {
        match plane.graph_path(xa, ya, padding, opts.resolution) {
            Ok(found) => break found,
            Err(Error::NoPath { .. }) if attempt < opts.max_box_growth => {
                attempt += 1;
                padding *= 2.0;
            }
            Err(e) => return Err(e),
        }
    };
    let target = COARSE_SEGMENTS.max(opts.resolution / 4);
    verts = plane.thin(&verts, COARSE_SEGMENTS);
    loop {
        diag.refine_sweeps += plane.refine(&mut verts, opts.refine_sweeps, opts.refine_tol);
        if verts.len() > target {
            break;
        }
        verts = subdivide(&verts);
    }
    let length = plane.path_length(&verts);
    let vertices = verts
        .iter()
        .map(|q| Point::new(embedding.lift(*q)))
        .collect::<Result<Vec<_>>>()?;
    Ok(QuasihyperbolicResult {
        value: length,
        path: GeodesicPath { vertices, length },
        diagnostics: diag,
    })
}

/// Inserts the midpoint of every segment; sub-segments of admissible
/// segments stay admissible.
fn subdivide(verts: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut out = Vec::with_capacity(2 * verts.len());
    for w in verts.windows(2) {
        out.push(w[0]);
        out.push(lerp(w[0], w[1], 0.5));
    }
    out.push(verts[verts.len() - 1]);
    out
}

struct Plane<'a> {
    domain: &'a Domain,
    quad_tol: f64,
}

fn lerp(a: [f64; 2], b: [f64; 2], t: f64) -> [f64; 2] {
    [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]
}

fn dist2(a: [f64; 2], b: [f64; 2]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

impl Plane<'_> {
    fn d(&self, p: [f64; 2]) -> f64 {
        self.domain.raw_distance(&p)
    }

    fn clearance(&self, a: [f64; 2], b: [f64; 2]) -> f64 {
        self.domain.segment_clearance(&a, &b)
    }

    /// Quasihyperbolic length of the straight segment `[a, b]`.
    fn segment(&self, a: [f64; 2], b: [f64; 2]) -> f64 {
        let len = dist2(a, b);
        if len == 0.0 {
            return 0.0;
        }
        let f = |t: f64| {
            let d = self.d(lerp(a, b, t));
            if d > 0.0 {
                1.0 / d
            } else {
                f64::INFINITY
            }
        };
        len * adaptive_simpson(&f, 0.0, 1.0, self.quad_tol / len)
    }

    /// Three-point Simpson estimate of [`segment`](Self::segment), used for
    /// graph edges.
    fn segment_estimate(&self, a: [f64; 2], b: [f64; 2]) -> f64 {
        let inv = |p: [f64; 2]| 1.0 / self.d(p);
        dist2(a, b) * (inv(a) + 4.0 * inv(lerp(a, b, 0.5)) + inv(b)) / 6.0
    }

    /// About `segments` evenly spaced vertices of `verts`, keeping extra ones
    /// wherever a shortcut would leave the domain.
    fn thin(&self, verts: &[[f64; 2]], segments: usize) -> Vec<[f64; 2]> {
        let last = verts.len() - 1;
        if last <= segments {
            return verts.to_vec();
        }
        let mut keep: Vec<usize> = (0..=segments).map(|k| k * last / segments).collect();
        keep.dedup();
        let mut out = vec![verts[0]];
        let mut stack: Vec<(usize, usize)> = keep.windows(2).rev().map(|w| (w[0], w[1])).collect();
        while let Some((i, j)) = stack.pop() {
            if j > i + 1 && self.clearance(verts[i], verts[j]) <= 0.0 {
                let m = (i + j) / 2;
                stack.push((m, j));
                stack.push((i, m));
            } else {
                out.push(verts[j]);
            }
        }
        out
    }

    fn path_length(&self, verts: &[[f64; 2]]) -> f64 {
        verts.windows(2).map(|w| self.segment(w[0], w[1])).sum()
    }

    fn graph_path(&self, x: [f64; 2], y: [f64; 2], padding: f64, resolution: usize) -> Result<(Vec<[f64; 2]>, SolverDiagnostics)> {
        let span = (x[0] - y[0]).abs().max((x[1] - y[1]).abs());
        let pad = padding * span;
        let limits = self.domain.axis_limits();
        let mut lo = [0.0; 2];
        let mut hi = [0.0; 2];
        for k in 0..2 {
            lo[k] = (x[k].min(y[k]) - pad).max(limits[k].0);
            hi[k] = (x[k].max(y[k]) + pad).min(limits[k].1);
        }
        let h = (hi[0] - lo[0]).max(hi[1] - lo[1]) / resolution as f64;
        let nx = ((hi[0] - lo[0]) / h).ceil() as usize + 1;
        let ny = ((hi[1] - lo[1]) / h).ceil() as usize + 1;
        let pos = |i: usize, j: usize| [lo[0] + i as f64 * h, lo[1] + j as f64 * h];
        let half = 0.5 * h;

        let mut graph: UnGraph<[f64; 2], f64> = UnGraph::with_capacity(nx * ny + 2, 8 * nx * ny);
        let mut ids: Vec<Option<NodeIndex>> = vec![None; nx * ny];
        for j in 0..ny {
            for i in 0..nx {
                let p = pos(i, j);
                if self.domain.raw_contains(&p) && self.d(p) > half {
                    ids[j * nx + i] = Some(graph.add_node(p));
                }
            }
        }
        let grid_nodes = graph.node_count();

        let mut candidates: Vec<(usize, usize)> = Vec::new();
        for j in 0..ny {
            for i in 0..nx {
                if ids[j * nx + i].is_none() {
                    continue;
                }
                for (di, dj) in STENCIL {
                    let (ni, nj) = (i as i64 + di, j as i64 + dj);
                    if ni < 0 || nj < 0 || ni >= nx as i64 || nj >= ny as i64 {
                        continue;
                    }
                    let other = nj as usize * nx + ni as usize;
                    if ids[other].is_some() {
                        candidates.push((j * nx + i, other));
                    }
                }
            }
        }
        // lattice edges are weighted lazily; a NaN weight marks "not yet known"
        for &(a, b) in &candidates {
            graph.add_edge(ids[a].unwrap(), ids[b].unwrap(), f64::NAN);
        }

        let sx = graph.add_node(x);
        let sy = graph.add_node(y);
        for (node, p) in [(sx, x), (sy, y)] {
            let mut radius = 2.0 * h;
            loop {
                let mut linked = false;
                let (ci, cj) = (((p[0] - lo[0]) / h).round() as i64, ((p[1] - lo[1]) / h).round() as i64);
                let reach = (radius / h).ceil() as i64 + 1;
                for j in (cj - reach).max(0)..=(cj + reach).min(ny as i64 - 1) {
                    for i in (ci - reach).max(0)..=(ci + reach).min(nx as i64 - 1) {
                        let Some(id) = ids[j as usize * nx + i as usize] else { continue };
                        let q = pos(i as usize, j as usize);
                        if dist2(p, q) <= radius && self.clearance(p, q) > 0.0 {
                            graph.add_edge(node, id, self.segment_estimate(p, q));
                            linked = true;
                        }
                    }
                }
                if linked || radius > 16.0 * h {
                    break;
                }
                radius *= 2.0;
            }
        }
        if self.clearance(x, y) > 0.0 {
            graph.add_edge(sx, sy, self.segment_estimate(x, y));
        }

        // j_G is a lower bound for k_G, which makes it an admissible heuristic
        let d_y = self.d(y);
        let heuristic = |n: NodeIndex| {
            let p = graph[n];
            (dist2(p, y) / self.d(p).min(d_y)).ln_1p()
        };
        let edge_cost = |e: petgraph::graph::EdgeReference<'_, f64>| {
            if !e.weight().is_nan() {
                return *e.weight();
            }
            let (pa, pb) = (graph[e.source()], graph[e.target()]);
            if self.clearance(pa, pb) > half {
                self.segment_estimate(pa, pb)
            } else {
                f64::INFINITY
            }
        };
        let (cost, route) = astar(&graph, sx, |n| n == sy, edge_cost, heuristic)
            .filter(|(c, _)| c.is_finite())
            .ok_or(Error::NoPath { resolution })?;
        let mut verts: Vec<[f64; 2]> = route.iter().map(|n| graph[*n]).collect();
        verts.dedup();
        let diag = SolverDiagnostics {
            resolution,
            cell_size: h,
            grid_nodes,
            grid_edges: candidates.len(),
            graph_length: cost,
            refine_sweeps: 0,
            box_lo: lo,
            box_hi: hi,
        };
        Ok((verts, diag))
    }

    /// Cost of routing `a -> p -> b`, or infinity if `p` is not admissible.
    fn detour(&self, a: [f64; 2], p: [f64; 2], b: [f64; 2]) -> f64 {
        if !self.domain.raw_contains(&p) || self.clearance(a, p) <= 0.0 || self.clearance(p, b) <= 0.0 {
            return f64::INFINITY;
        }
        self.segment(a, p) + self.segment(p, b)
    }

    /// Relaxes interior vertices; returns the number of sweeps performed.
    fn refine(&self, verts: &mut [[f64; 2]], max_sweeps: usize, tol: f64) -> usize {
        let m = verts.len();
        if m < 3 {
            return 0;
        }
        let mut seg: Vec<f64> = verts.windows(2).map(|w| self.segment(w[0], w[1])).collect();
        let mut total: f64 = seg.iter().sum();
        let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
        for sweep in 0..max_sweeps {
            for i in 1..m - 1 {
                let (a, c, b) = (verts[i - 1], verts[i], verts[i + 1]);
                let chord = [b[0] - a[0], b[1] - a[1]];
                let len = (chord[0] * chord[0] + chord[1] * chord[1]).sqrt();
                if len == 0.0 {
                    continue;
                }
                let normal = [-chord[1] / len, chord[0] / len];
                let at = |t: f64| [c[0] + t * normal[0], c[1] + t * normal[1]];
                let cost = |t: f64| self.detour(a, at(t), b);
                let current = seg[i - 1] + seg[i];
                let (mut lo, mut hi) = (-0.5 * len, 0.5 * len);
                let mut t1 = hi - inv_phi * (hi - lo);
                let mut t2 = lo + inv_phi * (hi - lo);
                let mut f1 = cost(t1);
                let mut f2 = cost(t2);
                for _ in 0..GOLDEN_ITERS {
                    if f1 < f2 {
                        hi = t2;
                        t2 = t1;
                        f2 = f1;
                        t1 = hi - inv_phi * (hi - lo);
                        f1 = cost(t1);
                    } else {
                        lo = t1;
                        t1 = t2;
                        f1 = f2;
                        t2 = lo + inv_phi * (hi - lo);
                        f2 = cost(t2);
                    }
                }
                let (t_best, f_best) = if f1 < f2 { (t1, f1) } else { (t2, f2) };
                if f_best < current {
                    let p = at(t_best);
                    verts[i] = p;
                    seg[i - 1] = self.segment(a, p);
                    seg[i] = self.segment(p, b);
                }
            }
            let updated: f64 = seg.iter().sum();
            let gain = total - updated;
            total = updated;
            if gain < tol {
                return sweep + 1;
            }
        }
        max_sweeps
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{k_lower_bound_log1p, k_lower_bound_logratio, rho_ball, rho_halfspace};

    fn p(c: [f64; 2]) -> Point {
        Point::from(c)
    }

    #[test]
    fn half_plane_matches_hyperbolic_distance() {
        let h = Domain::half_space(2).unwrap();
        let (x, y) = (p([0.0, 1.0]), p([1.0, 1.0]));
        let k = quasihyperbolic(&h, &x, &y, &QuasihyperbolicOptions::default()).unwrap();
        let exact = rho_halfspace(&x, &y).unwrap();
        assert!(k.value >= exact - 1e-9);
        assert!((k.value - exact) / exact < 0.01, "{} vs {exact}", k.value);
    }

    #[test]
    fn radial_ball_case() {
        let b = Domain::unit_ball(2).unwrap();
        let k = quasihyperbolic(&b, &p([0.0, 0.0]), &p([0.5, 0.0]), &QuasihyperbolicOptions::default()).unwrap();
        assert!((k.value - 2f64.ln()).abs() / 2f64.ln() < 0.01, "{}", k.value);
    }

    #[test]
    fn coincident_points() {
        let b = Domain::unit_ball(2).unwrap();
        let x = p([0.2, -0.3]);
        let k = quasihyperbolic(&b, &x, &x, &QuasihyperbolicOptions::default()).unwrap();
        assert_eq!(k.value, 0.0);
        assert_eq!(k.path.vertices, vec![x]);
    }

    #[test]
    fn exterior_points_are_rejected() {
        let b = Domain::unit_ball(2).unwrap();
        let r = quasihyperbolic(&b, &p([1.5, 0.0]), &p([0.0, 0.0]), &QuasihyperbolicOptions::default());
        assert!(matches!(r, Err(Error::ExteriorPoint(_))));
    }

    #[test]
    fn path_invariants() {
        let s = Domain::slit_plane();
        let (x, y) = (p([1.0, 0.3]), p([1.0, -0.3]));
        let k = quasihyperbolic(&s, &x, &y, &QuasihyperbolicOptions::default()).unwrap();
        let v = &k.path.vertices;
        assert_eq!(v.first(), Some(&x));
        assert_eq!(v.last(), Some(&y));
        assert!(v.windows(2).all(|w| w[0] != w[1]));
        assert!(v.iter().all(|q| s.contains(q).unwrap()));
        let plane = Plane { domain: &s, quad_tol: 1e-9 };
        let q: Vec<[f64; 2]> = v.iter().map(|q| [q.coords()[0], q.coords()[1]]).collect();
        assert!((plane.path_length(&q) - k.path.length).abs() < 1e-9);
        // the path must go around the origin, never across the slit
        assert!(q.windows(2).all(|w| s.segment_clearance(&w[0], &w[1]) > 0.0));
        assert!(q.iter().any(|c| c[0] < 0.0));
        assert!(k.value >= k_lower_bound_log1p(&s, &x, &y).unwrap());
        assert!(k.value >= k_lower_bound_logratio(&s, &x, &y).unwrap());
    }

    #[test]
    fn higher_dimensional_reduction() {
        let b3 = Domain::unit_ball(3).unwrap();
        let b2 = Domain::unit_ball(2).unwrap();
        let opts = QuasihyperbolicOptions::default();
        let (x3, y3) = (Point::from([0.3, 0.1, -0.2]), Point::from([-0.1, 0.4, 0.2]));
        let k3 = quasihyperbolic(&b3, &x3, &y3, &opts).unwrap();
        // same configuration embedded in the plane: |x|, |y| and the angle agree
        let (nx, ny) = (x3.norm(), y3.norm());
        let cos = (0.3 * -0.1 + 0.1 * 0.4 + -0.2 * 0.2) / (nx * ny);
        let x2 = p([nx, 0.0]);
        let y2 = p([ny * cos, ny * (1.0 - cos * cos).sqrt()]);
        let k2 = quasihyperbolic(&b2, &x2, &y2, &opts).unwrap();
        assert!((k3.value - k2.value).abs() < 1e-9);
        assert!(k3.path.vertices.iter().all(|v| v.dim() == 3 && v.norm() < 1.0));
        assert!(k3.value <= rho_ball(&x3, &y3).unwrap() * 1.01);

        let h3 = Domain::half_space(3).unwrap();
        let (u, v) = (Point::from([0.0, 0.0, 1.0]), Point::from([0.6, 0.8, 1.0]));
        let k = quasihyperbolic(&h3, &u, &v, &opts).unwrap();
        let exact = rho_halfspace(&u, &v).unwrap();
        assert!((k.value - exact).abs() / exact < 0.01);

        let s3 = Domain::generic("cube", 3, |_| 1.0, |_| true).unwrap();
        assert!(matches!(quasihyperbolic(&s3, &u, &v, &opts), Err(Error::Unsupported(_))));
    }

    #[test]
    fn punctured_plane_goes_around_the_puncture() {
        let g = Domain::punctured_plane();
        let (x, y) = (p([1.0, 0.0]), p([-1.0, 0.0]));
        let k = quasihyperbolic(&g, &x, &y, &QuasihyperbolicOptions::default()).unwrap();
        // the unit half-circle has quasihyperbolic length pi; log-spirals do no better here
        assert!(k.value <= std::f64::consts::PI * 1.01);
        assert!(k.value >= std::f64::consts::PI * 0.99);
    }
}
