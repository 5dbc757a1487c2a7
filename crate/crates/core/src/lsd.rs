//! Limiting spectral laws: the Marčenko–Pastur law `F_gamma`, the
//! semicircle law `G`, and their images under affine maps `x -> a x + b`.
//!
//! Distribution functions are right-continuous. For `gamma > 1` the
//! Marčenko–Pastur law carries an atom of mass `1 - 1/gamma` at the origin
//! (at `b` after the affine map), which `law_cdf` includes for `x >= b`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::adaptive_simpson;

/// Absolute tolerance of the Marčenko–Pastur CDF quadrature.
pub const CDF_QUAD_TOL: f64 = 1e-9;
/// Bracket width at which quantile bisection stops.
pub const QUANTILE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum BaseLaw {
    Semicircle,
    MarcenkoPastur { gamma: f64 },
}

/// Law of `scale * W + shift` for `W` following `base`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LawModel {
    pub base: BaseLaw,
    pub scale: f64,
    pub shift: f64,
}

impl LawModel {
    pub fn new(base: BaseLaw, scale: f64, shift: f64) -> Result<Self> {
        if let BaseLaw::MarcenkoPastur { gamma } = base {
            if !(gamma > 0.0 && gamma.is_finite()) {
                return Err(Error::Parameter(format!(
                    "MP ratio must be positive, got {gamma}"
                )));
            }
        }
        if scale == 0.0 || !scale.is_finite() || !shift.is_finite() {
            return Err(Error::Parameter(format!(
                "affine map needs finite nonzero scale, got scale={scale}, shift={shift}"
            )));
        }
        Ok(Self { base, scale, shift })
    }

    pub fn semicircle() -> Self {
        Self {
            base: BaseLaw::Semicircle,
            scale: 1.0,
            shift: 0.0,
        }
    }

    pub fn marcenko_pastur(gamma: f64) -> Result<Self> {
        Self::new(BaseLaw::MarcenkoPastur { gamma }, 1.0, 0.0)
    }

    pub fn with_affine(self, scale: f64, shift: f64) -> Result<Self> {
        Self::new(self.base, scale, shift)
    }

    /// Atom `(location, mass)` if the law has one.
    pub fn atom(&self) -> Option<(f64, f64)> {
        base_atom(&self.base).map(|m| (self.shift, m))
    }

    /// Closed interval containing the support.
    pub fn support(&self) -> (f64, f64) {
        let (lo, hi) = base_support(&self.base);
        let (u, v) = (self.scale * lo + self.shift, self.scale * hi + self.shift);
        (u.min(v), u.max(v))
    }

    /// Density of the absolutely continuous part.
    pub fn density(&self, x: f64) -> f64 {
        base_density(&self.base, (x - self.shift) / self.scale) / self.scale.abs()
    }

    pub fn cdf(&self, x: f64) -> f64 {
        law_cdf(self, x)
    }
}

impl fmt::Display for LawModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self.base {
            BaseLaw::Semicircle => "semicircle".to_string(),
            BaseLaw::MarcenkoPastur { gamma } => format!("MP({gamma})"),
        };
        if self.scale == 1.0 && self.shift == 0.0 {
            write!(f, "{base}")
        } else {
            write!(f, "{}*{base}{:+}", self.scale, self.shift)
        }
    }
}

fn mp_edges(gamma: f64) -> (f64, f64) {
    let r = gamma.sqrt();
    ((1.0 - r).powi(2), (1.0 + r).powi(2))
}

fn base_atom(base: &BaseLaw) -> Option<f64> {
    match *base {
        BaseLaw::MarcenkoPastur { gamma } if gamma > 1.0 => Some(1.0 - 1.0 / gamma),
        _ => None,
    }
}

fn base_support(base: &BaseLaw) -> (f64, f64) {
    match *base {
        BaseLaw::Semicircle => (-2.0, 2.0),
        BaseLaw::MarcenkoPastur { gamma } => {
            let (a, b) = mp_edges(gamma);
            if gamma > 1.0 {
                (0.0, b)
            } else {
                (a, b)
            }
        }
    }
}

fn base_density(base: &BaseLaw, x: f64) -> f64 {
    match *base {
        BaseLaw::Semicircle => semicircle_density(x),
        BaseLaw::MarcenkoPastur { gamma } => mp_density(gamma, x),
    }
}

/// Density of the absolutely continuous part of `F_gamma`.
pub fn mp_density(gamma: f64, x: f64) -> f64 {
    let (a, b) = mp_edges(gamma);
    if x <= 0.0 || x < a || x > b {
        return 0.0;
    }
    ((b - x) * (x - a)).max(0.0).sqrt() / (2.0 * PI * x * gamma)
}

pub fn semicircle_density(x: f64) -> f64 {
    if x.abs() >= 2.0 {
        0.0
    } else {
        (4.0 - x * x).sqrt() / (2.0 * PI)
    }
}

fn semicircle_cdf(x: f64) -> f64 {
    if x <= -2.0 {
        0.0
    } else if x >= 2.0 {
        1.0
    } else {
        0.5 + x * (4.0 - x * x).sqrt() / (4.0 * PI) + (x / 2.0).asin() / PI
    }
}

/// Continuous part of `F_gamma` integrated over `[a, min(x, b)]`, in the
/// variable `theta` with `x = a + (b - a) sin^2 theta`, which removes the
/// square-root behaviour at both edges.
fn mp_continuous_cdf(gamma: f64, x: f64) -> f64 {
    let (a, b) = mp_edges(gamma);
    if x <= a {
        return 0.0;
    }
    let upper = if x >= b {
        FRAC_PI_2
    } else {
        ((x - a) / (b - a)).sqrt().asin()
    };
    adaptive_simpson(
        &|t: f64| mp_theta_integrand(gamma, a, b, t),
        0.0,
        upper,
        CDF_QUAD_TOL,
    )
}

fn mp_theta_integrand(gamma: f64, a: f64, b: f64, theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    let w = b - a;
    if a == 0.0 {
        // gamma = 1: the 1/x factor cancels the sin^2 term exactly
        return w * c * c / (PI * gamma);
    }
    w * w * s * s * c * c / (PI * gamma * (a + w * s * s))
}

/// Mass of the absolutely continuous part, by quadrature over the support.
pub fn mp_continuous_mass(gamma: f64) -> f64 {
    mp_continuous_cdf(gamma, f64::INFINITY)
}

fn base_cdf(base: &BaseLaw, x: f64) -> f64 {
    match *base {
        BaseLaw::Semicircle => semicircle_cdf(x),
        BaseLaw::MarcenkoPastur { gamma } => {
            let atom = if x >= 0.0 {
                base_atom(base).unwrap_or(0.0)
            } else {
                0.0
            };
            (atom + mp_continuous_cdf(gamma, x)).min(1.0)
        }
    }
}

/// `P(W < x)`.
fn base_cdf_left(base: &BaseLaw, x: f64) -> f64 {
    let at = if x == 0.0 {
        base_atom(base).unwrap_or(0.0)
    } else {
        0.0
    };
    (base_cdf(base, x) - at).max(0.0)
}

/// Right-continuous distribution function of `model`.
pub fn law_cdf(model: &LawModel, x: f64) -> f64 {
    let w = (x - model.shift) / model.scale;
    if model.scale > 0.0 {
        base_cdf(&model.base, w)
    } else {
        1.0 - base_cdf_left(&model.base, w)
    }
}

/// Left limit `P(X < x)` of the distribution function of `model`.
pub fn law_cdf_left(model: &LawModel, x: f64) -> f64 {
    let w = (x - model.shift) / model.scale;
    if model.scale > 0.0 {
        base_cdf_left(&model.base, w)
    } else {
        1.0 - base_cdf(&model.base, w)
    }
}

/// Generalized inverse `inf { x : F(x) >= q }`.
pub fn law_quantile(model: &LawModel, q: f64) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::Domain(format!(
            "quantile level must lie in (0,1), got {q}"
        )));
    }
    if let Some((loc, _)) = model.atom() {
        if law_cdf_left(model, loc) < q && q <= law_cdf(model, loc) {
            return Ok(loc);
        }
    }
    let (mut lo, mut hi) = model.support();
    while hi - lo > QUANTILE_TOL {
        let mid = 0.5 * (lo + hi);
        if law_cdf(model, mid) >= q {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The root of `c2 s^2 + c1 s + c0 = 0` with positive imaginary part.
fn upper_root(c2: Complex64, c1: Complex64, c0: Complex64) -> Complex64 {
    let mut disc = (c1 * c1 - 4.0 * c2 * c0).sqrt();
    // pick the sign that avoids cancellation, then use Vieta for the other root
    if (c1.conj() * disc).re < 0.0 {
        disc = -disc;
    }
    let q = -0.5 * (c1 + disc);
    let r1 = q / c2;
    let r2 = c0 / q;
    if r1.im >= r2.im {
        r1
    } else {
        r2
    }
}

fn base_stieltjes(base: &BaseLaw, z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    match *base {
        // s^2 + z s + 1 = 0
        BaseLaw::Semicircle => upper_root(one, z, one),
        // gamma z s^2 + (z + gamma - 1) s + 1 = 0
        BaseLaw::MarcenkoPastur { gamma } => upper_root(gamma * z, z + (gamma - 1.0), one),
    }
}

/// Stieltjes transform `s(z) = int (x - z)^-1 dF(x)` for `Im z > 0`.
pub fn stieltjes(model: &LawModel, z: Complex64) -> Result<Complex64> {
    if !(z.im > 0.0) {
        return Err(Error::Domain(format!(
            "Stieltjes transform needs Im z > 0, got {z}"
        )));
    }
    let w = (z - model.shift) / model.scale;
    // a negative scale maps the upper half-plane to the lower one; use s(conj w) = conj s(w)
    let s = if w.im > 0.0 {
        base_stieltjes(&model.base, w)
    } else {
        base_stieltjes(&model.base, w.conj()).conj()
    };
    Ok(s / model.scale)
}

/// Number of grid points used by [`mp_to_semicircle_residual`].
pub const RESIDUAL_GRID: usize = 512;

/// Sup-distance on a grid over `[-2.5, 2.5]` between the CDF of
/// `gamma^-1/2 (eta - 1)`, `eta ~ F_gamma`, and the semicircle CDF.
pub fn mp_to_semicircle_residual(gamma: f64) -> Result<f64> {
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(Error::Domain(format!(
            "residual needs 0 < gamma <= 1, got {gamma}"
        )));
    }
    let r = gamma.sqrt();
    let model = LawModel::marcenko_pastur(gamma)?.with_affine(1.0 / r, -1.0 / r)?;
    let step = 5.0 / (RESIDUAL_GRID - 1) as f64;
    Ok((0..RESIDUAL_GRID)
        .map(|k| {
            let x = -2.5 + step * k as f64;
            (law_cdf(&model, x) - semicircle_cdf(x)).abs()
        })
        .fold(0.0, f64::max))
}
