//! Seeded random streams shared by the sweeps.
//!
//! Every sweep derives an independent ChaCha stream per sample index, so a
//! sweep produces the same records regardless of how the work is split
//! across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Generator for the sample at `index` of a sweep seeded with `seed`.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniformly distributed unit vector in `R^n`.
pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return v.into_iter().map(|c| c / norm).collect();
        }
    }
}

/// Uniform point in the open ball of radius `radius` centred at `center`.
pub fn in_ball<R: Rng + ?Sized>(rng: &mut R, center: &[f64], radius: f64) -> Vec<f64> {
    let n = center.len();
    let dir = unit_vector(rng, n);
    let u: f64 = rng.random();
    let rad = radius * u.powf(1.0 / n as f64);
    center.iter().zip(&dir).map(|(c, d)| c + rad * d).collect()
}

/// Uniform point in the planar disk `|z| < radius`, returned as `[x, y]`.
pub fn in_disk<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> [f64; 2] {
    let t = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
    let u: f64 = rng.random();
    let r = radius * u.sqrt();
    [r * t.cos(), r * t.sin()]
}
