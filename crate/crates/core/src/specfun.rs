//! Special functions of quasiconformal distortion theory.
//!
//! All routines work with the modulus `r` of the complete elliptic integral
//! (not the parameter `m = r^2`) and with the complementary modulus
//! `r' = sqrt(1 - r^2)`.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};

const AGM_REL_TOL: f64 = 1e-15;
const AGM_MAX_ITER: usize = 64;

/// Arithmetic-geometric mean of two non-negative numbers.
pub fn agm(a: f64, b: f64) -> f64 {
    let (mut a, mut b) = (a, b);
    for _ in 0..AGM_MAX_ITER {
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        if (an - bn).abs() <= AGM_REL_TOL * an {
            return 0.5 * (an + bn);
        }
        a = an;
        b = bn;
    }
    a
}

/// `sqrt(1 - r^2)` without cancellation near `r = 1`.
fn complement(r: f64) -> f64 {
    ((1.0 - r) * (1.0 + r)).sqrt()
}

/// Complete elliptic integral of the first kind,
/// `K(r) = (pi/2) F(1/2, 1/2; 1; r^2) = pi / (2 AGM(1, r'))`.
pub fn elliptic_k(r: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::OutOfDomain {
            name: "r",
            value: r,
            expected: "0 <= r < 1",
        });
    }
    if r == 0.0 {
        return Ok(FRAC_PI_2);
    }
    Ok(PI / (2.0 * agm(1.0, complement(r))))
}

/// `mu(r) = (pi/2) K(r') / K(r)`, the modulus of the Grötzsch ring.
///
/// Evaluated as `(pi/2) AGM(1, r') / AGM(1, r)`, which stays accurate at
/// both ends of `(0, 1)`.
pub fn mu(r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::OutOfDomain {
            name: "r",
            value: r,
            expected: "0 < r < 1",
        });
    }
    Ok(mu_unchecked(r, complement(r)))
}

fn mu_unchecked(r: f64, r_comp: f64) -> f64 {
    FRAC_PI_2 * agm(1.0, r_comp) / agm(1.0, r)
}

/// Solves `mu(r) = y` for `r` in `(0, 1/sqrt 2]`, bisecting in `log r`.
fn solve_small(y: f64) -> f64 {
    // mu(r) ~ log(4/r) as r -> 0
    let mut lo = (4.0f64.ln() - y - 2.0).max(f64::MIN_POSITIVE.ln());
    let mut hi = std::f64::consts::FRAC_1_SQRT_2.ln();
    while mu_unchecked(lo.exp(), complement(lo.exp())) < y && lo > f64::MIN_POSITIVE.ln() {
        lo = (lo - 10.0).max(f64::MIN_POSITIVE.ln());
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let r = mid.exp();
        if mu_unchecked(r, complement(r)) > y {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    (0.5 * (lo + hi)).exp()
}

/// Inverse of [`mu`]: the unique `r` in `(0, 1)` with `mu(r) = y`.
///
/// Uses the functional equation `mu(r) mu(r') = pi^2 / 4` to map `y < pi/2`
/// onto the small-modulus branch, then bisects in `log r`.
pub fn mu_inverse(y: f64) -> Result<f64> {
    if !(y > 0.0 && y.is_finite()) {
        return Err(Error::OutOfDomain {
            name: "y",
            value: y,
            expected: "y > 0",
        });
    }
    if y >= FRAC_PI_2 {
        Ok(solve_small(y))
    } else {
        let r_comp = solve_small(PI * PI / (4.0 * y));
        // r rounds to 1 once r' < 1e-8; keep the result inside (0, 1)
        Ok(complement(r_comp).min(1.0 - f64::EPSILON / 2.0))
    }
}

/// Hersch–Pfluger distortion function `phi_K(r) = mu^{-1}(mu(r) / K)`,
/// with `phi_K(0) = 0` and `phi_K(1) = 1`.
pub fn phi_k(k: f64, r: f64) -> Result<f64> {
    if !(k >= 1.0 && k.is_finite()) {
        return Err(Error::OutOfDomain {
            name: "K",
            value: k,
            expected: "K >= 1",
        });
    }
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::OutOfDomain {
            name: "r",
            value: r,
            expected: "0 <= r <= 1",
        });
    }
    if r < 1e-12 {
        return Ok(0.0);
    }
    if r > 1.0 - 1e-12 {
        return Ok(1.0);
    }
    if k == 1.0 {
        return Ok(r);
    }
    mu_inverse(mu(r)? / k)
}

/// `c(K) = 2 artanh(phi_K(tanh(1/2)))`; `c(1) = 1`.
pub fn c_of_k(k: f64) -> Result<f64> {
    let phi = phi_k(k, 0.5f64.tanh())?;
    Ok(2.0 * phi.atanh())
}

/// `Gamma(n/2)` for a positive integer `n`, by exact recursion from
/// `Gamma(1) = 1` and `Gamma(1/2) = sqrt(pi)`.
fn gamma_half_integer(n: usize) -> f64 {
    let (mut x, mut g) = if n.is_multiple_of(2) { (1.0, 1.0) } else { (0.5, PI.sqrt()) };
    let target = n as f64 / 2.0;
    while x < target {
        g *= x;
        x += 1.0;
    }
    g
}

/// Surface area `omega_{n-1} = 2 pi^{n/2} / Gamma(n/2)` of the unit sphere `S^{n-1}`.
pub fn sphere_surface_area(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("sphere surface area needs n >= 2, got {n}")));
    }
    Ok(2.0 * PI.powf(n as f64 / 2.0) / gamma_half_integer(n))
}
