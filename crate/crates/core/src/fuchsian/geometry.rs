//! Möbius action and generalized circles in the upper half-plane.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Below this modulus the denominator of a Möbius map is treated as a pole.
const POLE_GUARD: f64 = 1e-300;

/// `(a z + b)/(c z + d)` for real entries `[a, b, c, d]`.
pub fn mobius(m: &[f64; 4], z: Complex64) -> Result<Complex64> {
    let [a, b, c, d] = *m;
    let den = z * c + d;
    if den.norm() < POLE_GUARD {
        return Err(Error::Numeric(format!("Möbius pole at z = {z}")));
    }
    Ok((z * a + b) / den)
}

/// Isometric circle `|c z + d| = 1` of a real matrix: center `−d/c`, radius `1/|c|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IsometricCircle {
    pub center: f64,
    pub radius: f64,
}

pub fn isometric_circle(m: &[f64; 4]) -> Result<IsometricCircle> {
    let [_, _, c, d] = *m;
    if c == 0.0 {
        return Err(Error::NoCircle);
    }
    Ok(IsometricCircle {
        center: -d / c,
        radius: 1.0 / c.abs(),
    })
}

/// A circle or a straight line in ℂ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GenCircle {
    Circle {
        center: Complex64,
        radius: f64,
    },
    /// Line through `point` with unit `direction`.
    Line {
        point: Complex64,
        direction: Complex64,
    },
}

impl GenCircle {
    /// Circle through three points, or the line through them when collinear.
    pub fn through(p: Complex64, q: Complex64, r: Complex64) -> GenCircle {
        let b = q - p;
        let c = r - p;
        let cross = b.re * c.im - b.im * c.re;
        let scale = b.norm() * c.norm();
        if cross.abs() <= 1e-12 * scale {
            let far = if b.norm() >= c.norm() { b } else { c };
            return GenCircle::Line {
                point: p,
                direction: far / far.norm(),
            };
        }
        let b2 = b.norm_sqr();
        let c2 = c.norm_sqr();
        let ux = (c.im * b2 - b.im * c2) / (2.0 * cross);
        let uy = (b.re * c2 - c.re * b2) / (2.0 * cross);
        let off = Complex64::new(ux, uy);
        GenCircle::Circle {
            center: p + off,
            radius: off.norm(),
        }
    }

    /// Euclidean distance from `z` to the curve.
    pub fn distance(&self, z: Complex64) -> f64 {
        match *self {
            GenCircle::Circle { center, radius } => ((z - center).norm() - radius).abs(),
            GenCircle::Line { point, direction } => {
                let w = z - point;
                (w.re * direction.im - w.im * direction.re).abs()
            }
        }
    }
}

/// Image of a curve under a Möbius map, from three mapped sample points.
///
/// `samples` must be three distinct points of the curve away from the pole.
pub fn image_of(m: &[f64; 4], samples: [Complex64; 3]) -> Result<GenCircle> {
    let [p, q, r] = samples;
    Ok(GenCircle::through(
        mobius(m, p)?,
        mobius(m, q)?,
        mobius(m, r)?,
    ))
}

/// Hyperbolic distance in the upper half-plane.
pub fn hyperbolic_distance(z: Complex64, w: Complex64) -> f64 {
    (1.0 + (z - w).norm_sqr() / (2.0 * z.im * w.im)).acosh()
}

#[cfg(test)]
mod tests {
    use super::*;

    const G3: [f64; 4] = [0.0, 1.0, -1.0, 0.0];

    #[test]
    fn g3_maps_2i_to_half_i() {
        let w = mobius(&G3, Complex64::new(0.0, 2.0)).unwrap();
        assert!((w - Complex64::new(0.0, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn pole_is_reported() {
        assert!(matches!(
            mobius(&G3, Complex64::new(0.0, 0.0)),
            Err(Error::Numeric(_))
        ));
    }

    #[test]
    fn unit_circle_for_g3() {
        let c = isometric_circle(&G3).unwrap();
        assert_eq!(
            c,
            IsometricCircle {
                center: 0.0,
                radius: 1.0
            }
        );
        assert_eq!(
            isometric_circle(&[2.0, 0.0, 0.0, 0.5]),
            Err(Error::NoCircle)
        );
    }

    #[test]
    fn circumcircle_and_line() {
        let c = GenCircle::through(
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(-1.0, 0.0),
        );
        match c {
            GenCircle::Circle { center, radius } => {
                assert!(center.norm() < 1e-12);
                assert!((radius - 1.0).abs() < 1e-12);
            }
            _ => panic!("expected a circle"),
        }
        let l = GenCircle::through(
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 1.0),
            Complex64::new(2.0, 2.0),
        );
        assert!(matches!(l, GenCircle::Line { .. }));
        assert!((l.distance(Complex64::new(1.0, 0.0)) - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn hyperbolic_distance_on_imaginary_axis() {
        let d = hyperbolic_distance(Complex64::new(0.0, 1.0), Complex64::new(0.0, 2.0f64.exp()));
        assert!((d - 2.0).abs() < 1e-12);
    }
}
