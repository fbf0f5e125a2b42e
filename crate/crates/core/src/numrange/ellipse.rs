//! Elliptical discs in the complex plane.
//!
//! Every convex range this crate produces in closed form is a (possibly
//! degenerate) filled ellipse: a disc, a segment, or a point. The type keeps
//! the geometric data (center, semi-axes, axis angle) and exposes the support
//! function `h(θ) = sup { Re(e^{−iθ} z) : z ∈ E }`, which is how regions are
//! compared throughout the crate.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::linalg::C64;

/// Semi-minor axes below `1e-12·max(1, semi_major)` are treated as exactly
/// degenerate: membership then means distance-to-segment, since the
/// normalized quadratic form blows up.
const DEGENERACY_REL: f64 = 1e-12;

/// Filled ellipse `{ center + e^{iφ}(x + iy) : (x/a)² + (y/b)² ≤ 1 }`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipse {
    center: C64,
    semi_major: f64,
    semi_minor: f64,
    angle: f64,
}

impl Ellipse {
    /// Normalizing constructor: orders the axes, clamps tiny negative axis
    /// values from upstream roundoff to zero, and wraps the angle into [0, π)
    /// (an ellipse is invariant under φ → φ + π).
    pub fn new(center: C64, semi_major: f64, semi_minor: f64, angle: f64) -> Self {
        assert!(
            center.re.is_finite()
                && center.im.is_finite()
                && semi_major.is_finite()
                && semi_minor.is_finite()
                && angle.is_finite(),
            "ellipse parameters must be finite"
        );
        let mut a = semi_major.max(0.0);
        let mut b = semi_minor.max(0.0);
        let mut phi = angle;
        if b > a {
            std::mem::swap(&mut a, &mut b);
            phi += std::f64::consts::FRAC_PI_2;
        }
        let pi = std::f64::consts::PI;
        phi = phi.rem_euclid(pi);
        if phi >= pi {
            phi -= pi;
        }
        // A circle's axis angle is arbitrary; pin it for stable comparisons.
        if (a - b).abs() <= DEGENERACY_REL * a.max(1.0) {
            phi = 0.0;
        }
        Self {
            center,
            semi_major: a,
            semi_minor: b,
            angle: phi,
        }
    }

    pub fn point(center: C64) -> Self {
        Self::new(center, 0.0, 0.0, 0.0)
    }

    pub fn disc(center: C64, radius: f64) -> Self {
        Self::new(center, radius, radius, 0.0)
    }

    pub fn segment(center: C64, half_length: f64, angle: f64) -> Self {
        Self::new(center, half_length, 0.0, angle)
    }

    pub fn center(&self) -> C64 {
        self.center
    }

    pub fn semi_major(&self) -> f64 {
        self.semi_major
    }

    pub fn semi_minor(&self) -> f64 {
        self.semi_minor
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn is_degenerate(&self) -> bool {
        self.semi_minor <= DEGENERACY_REL * self.semi_major.max(1.0)
    }

    /// Focal points (coincident for a disc).
    pub fn foci(&self) -> (C64, C64) {
        let f = (self.semi_major * self.semi_major - self.semi_minor * self.semi_minor)
            .max(0.0)
            .sqrt();
        let dir = Complex64::from_polar(f, self.angle);
        (self.center + dir, self.center - dir)
    }

    /// Support function `h(θ) = Re(e^{−iθ}c) + √(a²cos²(θ−φ) + b²sin²(θ−φ))`.
    pub fn support(&self, theta: f64) -> f64 {
        self.support_dir(theta.cos(), theta.sin())
    }

    #[inline]
    fn support_dir(&self, ct: f64, st: f64) -> f64 {
        let (ca, sa) = (self.angle.cos(), self.angle.sin());
        let cd = ct * ca + st * sa;
        let sd = st * ca - ct * sa;
        self.center.re * ct
            + self.center.im * st
            + (self.semi_major * self.semi_major * cd * cd
                + self.semi_minor * self.semi_minor * sd * sd)
                .sqrt()
    }

    /// Streams `(k, h(θ_k))` over a precomputed grid; the per-ellipse
    /// trigonometry is hoisted so region sweeps touching millions of ellipses
    /// stay cheap.
    pub fn support_scan(&self, grid: &AngleGrid, mut sink: impl FnMut(usize, f64)) {
        let (ca, sa) = (self.angle.cos(), self.angle.sin());
        let (cre, cim) = (self.center.re, self.center.im);
        let a2 = self.semi_major * self.semi_major;
        let b2 = self.semi_minor * self.semi_minor;
        for k in 0..grid.len() {
            let (ct, st) = (grid.cos(k), grid.sin(k));
            let cd = ct * ca + st * sa;
            let sd = st * ca - ct * sa;
            let h = cre * ct + cim * st + (a2 * cd * cd + b2 * sd * sd).sqrt();
            sink(k, h);
        }
    }

    pub fn support_table(&self, grid: &AngleGrid) -> Vec<f64> {
        let mut out = vec![0.0; grid.len()];
        self.support_scan(grid, |k, h| out[k] = h);
        out
    }

    /// Membership with tolerance: for nondegenerate ellipses the normalized
    /// quadratic `(x/a)² + (y/b)² ≤ 1 + tol`; for segments and points the
    /// Euclidean distance `≤ tol`.
    pub fn contains(&self, z: C64, tol: f64) -> bool {
        let w = (z - self.center) * Complex64::from_polar(1.0, -self.angle);
        if self.is_degenerate() {
            let overshoot = (w.re.abs() - self.semi_major).max(0.0);
            return (overshoot * overshoot + w.im * w.im).sqrt() <= tol;
        }
        let x = w.re / self.semi_major;
        let y = w.im / self.semi_minor;
        x * x + y * y <= 1.0 + tol
    }

    /// Euclidean distance from `z` to the ellipse (0 inside).
    ///
    /// Computed as `max_θ [Re(e^{−iθ}(z − c)) − h₀(θ)]`, the support-function
    /// form of the distance to a convex set: a coarse scan brackets the
    /// maximizer, golden-section refines it.
    pub fn outward_distance(&self, z: C64) -> f64 {
        if self.contains(z, 0.0) {
            return 0.0;
        }
        let w = z - self.center;
        let gap = |theta: f64| {
            let (ct, st) = (theta.cos(), theta.sin());
            let centered = Ellipse {
                center: C64::ZERO,
                ..*self
            };
            w.re * ct + w.im * st - centered.support_dir(ct, st)
        };
        // The maximizer sits near arg(w); scan one period to be safe.
        let coarse = 128;
        let mut best_k = 0;
        let mut best = f64::NEG_INFINITY;
        for k in 0..coarse {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / coarse as f64;
            let v = gap(theta);
            if v > best {
                best = v;
                best_k = k;
            }
        }
        let step = 2.0 * std::f64::consts::PI / coarse as f64;
        let center_theta = best_k as f64 * step;
        golden_max(&gap, center_theta - step, center_theta + step)
            .max(best)
            .max(0.0)
    }

    /// Parametric boundary point `c + e^{iφ}(a·cos t + i·b·sin t)`.
    pub fn boundary_point(&self, t: f64) -> C64 {
        let local = C64::new(self.semi_major * t.cos(), self.semi_minor * t.sin());
        self.center + local * Complex64::from_polar(1.0, self.angle)
    }

    pub fn boundary_polyline(&self, count: usize) -> Vec<C64> {
        (0..count)
            .map(|k| self.boundary_point(2.0 * std::f64::consts::PI * k as f64 / count as f64))
            .collect()
    }

    /// Image under multiplication by `w`: axes scale by `|w|`, the axis angle
    /// rotates by `arg w`.
    pub fn scaled(&self, w: C64) -> Ellipse {
        let r = w.norm();
        if r == 0.0 {
            return Ellipse::point(C64::ZERO);
        }
        Ellipse::new(
            self.center * w,
            self.semi_major * r,
            self.semi_minor * r,
            self.angle + w.arg(),
        )
    }

    pub fn translated(&self, d: C64) -> Ellipse {
        Ellipse::new(
            self.center + d,
            self.semi_major,
            self.semi_minor,
            self.angle,
        )
    }
}

/// Golden-section maximization on a bracket; tolerances here are far below
/// every tolerance the crate reports, so the scan error dominates.
pub(crate) fn golden_max(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..80 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    f1.max(f2)
}

/// Uniform grid of directions `θ_k = 2πk/count` with cached trigonometry.
#[derive(Debug, Clone)]
pub struct AngleGrid {
    thetas: Vec<f64>,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl AngleGrid {
    pub fn new(count: usize) -> Self {
        assert!(count >= 4, "angle grids need at least 4 directions");
        let thetas: Vec<f64> = (0..count)
            .map(|k| 2.0 * std::f64::consts::PI * k as f64 / count as f64)
            .collect();
        let cos = thetas.iter().map(|t| t.cos()).collect();
        let sin = thetas.iter().map(|t| t.sin()).collect();
        Self { thetas, cos, sin }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    #[inline]
    pub fn theta(&self, k: usize) -> f64 {
        self.thetas[k]
    }

    #[inline]
    pub fn cos(&self, k: usize) -> f64 {
        self.cos[k]
    }

    #[inline]
    pub fn sin(&self, k: usize) -> f64 {
        self.sin[k]
    }
}

/// Wire form: `{"center":[re,im],"semi_major":a,"semi_minor":b,"angle":φ}`.
#[derive(Serialize, Deserialize)]
struct EllipseRepr {
    center: [f64; 2],
    semi_major: f64,
    semi_minor: f64,
    angle: f64,
}

impl Serialize for Ellipse {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        EllipseRepr {
            center: [self.center.re, self.center.im],
            semi_major: self.semi_major,
            semi_minor: self.semi_minor,
            angle: self.angle,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Ellipse {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = EllipseRepr::deserialize(deserializer)?;
        if !(repr.semi_major.is_finite() && repr.semi_minor.is_finite()) {
            return Err(D::Error::custom("ellipse axes must be finite"));
        }
        if repr.semi_major < 0.0 || repr.semi_minor < 0.0 {
            return Err(D::Error::custom("ellipse axes must be nonnegative"));
        }
        Ok(Ellipse::new(
            C64::new(repr.center[0], repr.center[1]),
            repr.semi_major,
            repr.semi_minor,
            repr.angle,
        ))
    }
}
