//! Least-squares conic fitting under the normalization `A + C = 1`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Default Sampson-RMS tolerance for calling a fit an ellipse.
pub const DEFAULT_ELLIPSE_TOL: f64 = 1e-6;

/// `A·x² + B·xy + C·y² + D·x + E·y + F = 0`
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Conic {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

impl Conic {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.a * x * x + self.b * x * y + self.c * y * y + self.d * x + self.e * y + self.f
    }

    pub fn gradient(&self, x: f64, y: f64) -> (f64, f64) {
        (
            2.0 * self.a * x + self.b * y + self.d,
            self.b * x + 2.0 * self.c * y + self.e,
        )
    }

    /// First-order geometric distance `|Q(x,y)| / |∇Q(x,y)|`.
    pub fn sampson_distance(&self, x: f64, y: f64) -> f64 {
        let (gx, gy) = self.gradient(x, y);
        self.eval(x, y).abs() / gx.hypot(gy)
    }

    pub fn discriminant(&self) -> f64 {
        self.b * self.b - 4.0 * self.a * self.c
    }

    pub fn as_array(&self) -> [f64; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.f]
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EllipseFit {
    pub conic: Conic,
    /// `B² − 4AC`; negative for an ellipse.
    pub discriminant: f64,
    /// Root-mean-square Sampson distance over the fitted points.
    pub rms_residual: f64,
}

impl EllipseFit {
    pub fn is_ellipse_type(&self) -> bool {
        self.discriminant < 0.0
    }

    /// Ellipse-type conic whose residual is within `tol`.
    pub fn is_ellipse(&self, tol: f64) -> bool {
        self.is_ellipse_type() && self.rms_residual < tol
    }
}

/// Fits a conic through `points` with `C = 1 − A`, solving the linear system
/// `A(x² − y²) + Bxy + Dx + Ey + F = −y²` in the least-squares sense.
pub fn ellipse_fit(points: &[(f64, f64)]) -> Result<EllipseFit> {
    if points.len() < 6 {
        return Err(Error::DegenerateConfiguration(format!(
            "need at least 6 points, got {}",
            points.len()
        )));
    }
    let rows = points.len();
    let design = DMatrix::from_fn(rows, 5, |i, j| {
        let (x, y) = points[i];
        match j {
            0 => x * x - y * y,
            1 => x * y,
            2 => x,
            3 => y,
            _ => 1.0,
        }
    });
    let rhs = DVector::from_fn(rows, |i, _| -points[i].1 * points[i].1);

    let svd = design.svd(true, true);
    let sv = &svd.singular_values;
    let max_sv = sv.max();
    let min_sv = sv.min();
    if !(max_sv > 0.0) || min_sv <= max_sv * 1e-12 {
        return Err(Error::DegenerateConfiguration(
            "design matrix is rank deficient (points collinear or repeated)".to_string(),
        ));
    }
    let sol = svd
        .solve(&rhs, max_sv * 1e-14)
        .map_err(|e| Error::DegenerateConfiguration(e.to_string()))?;

    let conic = Conic {
        a: sol[0],
        b: sol[1],
        c: 1.0 - sol[0],
        d: sol[2],
        e: sol[3],
        f: sol[4],
    };
    let sum_sq: f64 = points
        .iter()
        .map(|&(x, y)| conic.sampson_distance(x, y).powi(2))
        .sum();
    Ok(EllipseFit {
        conic,
        discriminant: conic.discriminant(),
        rms_residual: (sum_sq / rows as f64).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn exact_ellipse() {
        // x²/4 + y² = 1
        let pts: Vec<(f64, f64)> = (0..8)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / 8.0 + 0.1;
                (2.0 * t.cos(), t.sin())
            })
            .collect();
        let fit = ellipse_fit(&pts).unwrap();
        assert!(fit.discriminant < 0.0);
        assert!(fit.rms_residual < 1e-12, "{}", fit.rms_residual);
        // normalized form of x² + 4y² − 4 = 0 is 0.2x² + 0.8y² − 0.8 = 0
        assert!((fit.conic.a - 0.2).abs() < 1e-12);
        assert!((fit.conic.f + 0.8).abs() < 1e-12);
        assert!(fit.is_ellipse(DEFAULT_ELLIPSE_TOL));
    }

    #[test]
    fn shifted_rotated_ellipse() {
        let (cx, cy, rot) = (0.3, -1.2, 0.7f64);
        let pts: Vec<(f64, f64)> = (0..20)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / 20.0;
                let (u, v) = (3.0 * t.cos(), 0.5 * t.sin());
                (
                    cx + u * rot.cos() - v * rot.sin(),
                    cy + u * rot.sin() + v * rot.cos(),
                )
            })
            .collect();
        let fit = ellipse_fit(&pts).unwrap();
        assert!(fit.is_ellipse_type());
        assert!(fit.rms_residual < 1e-10);
    }

    #[test]
    fn noisy_points_have_residual() {
        let pts: Vec<(f64, f64)> = (0..12)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / 12.0;
                let r = if k % 2 == 0 { 1.05 } else { 0.95 };
                (r * t.cos(), r * t.sin())
            })
            .collect();
        let fit = ellipse_fit(&pts).unwrap();
        assert!(fit.rms_residual > 1e-3);
        assert!(!fit.is_ellipse(DEFAULT_ELLIPSE_TOL));
    }

    #[test]
    fn degenerate_inputs() {
        let line: Vec<(f64, f64)> = (0..10).map(|k| (k as f64, 2.0 * k as f64 + 1.0)).collect();
        assert!(matches!(
            ellipse_fit(&line),
            Err(Error::DegenerateConfiguration(_))
        ));
        let few = [(0.0, 1.0), (1.0, 0.0), (-1.0, 0.0), (0.0, -1.0), (0.5, 0.5)];
        assert!(matches!(
            ellipse_fit(&few),
            Err(Error::DegenerateConfiguration(_))
        ));
    }
}
