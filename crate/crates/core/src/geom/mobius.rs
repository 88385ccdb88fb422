use serde::{Deserialize, Serialize};

use super::ExtPoint;
use crate::{Error, Result, C64};

/// `z ↦ (a z + b) / (c z + d)` with nonzero determinant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mobius {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl Mobius {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det.norm() > 1e-300) || !det.is_finite() {
            return Err(Error::invalid("Möbius map with vanishing determinant"));
        }
        Ok(Mobius { a, b, c, d })
    }

    pub fn identity() -> Self {
        Mobius::affine(C64::new(1.0, 0.0), C64::new(0.0, 0.0))
    }

    pub fn affine(scale: C64, shift: C64) -> Self {
        Mobius {
            a: scale,
            b: shift,
            c: C64::new(0.0, 0.0),
            d: C64::new(1.0, 0.0),
        }
    }

    /// `z ↦ 1 / (z − z0)`.
    pub fn inversion_about(z0: C64) -> Self {
        Mobius {
            a: C64::new(0.0, 0.0),
            b: C64::new(1.0, 0.0),
            c: C64::new(1.0, 0.0),
            d: -z0,
        }
    }

    pub fn rotation(turns: f64) -> Self {
        Mobius::affine(super::cis(turns), C64::new(0.0, 0.0))
    }

    pub fn det(&self) -> C64 {
        self.a * self.d - self.b * self.c
    }

    pub fn is_affine(&self) -> bool {
        self.c == C64::new(0.0, 0.0)
    }

    pub fn eval(&self, z: C64) -> C64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    pub fn eval_ext(&self, p: ExtPoint) -> ExtPoint {
        match p {
            ExtPoint::Finite(z) => {
                let den = self.c * z + self.d;
                if den.norm() == 0.0 {
                    ExtPoint::Infinity
                } else {
                    ExtPoint::Finite((self.a * z + self.b) / den)
                }
            }
            ExtPoint::Infinity => {
                if self.c.norm() == 0.0 {
                    ExtPoint::Infinity
                } else {
                    ExtPoint::Finite(self.a / self.c)
                }
            }
        }
    }

    pub fn derivative(&self, z: C64) -> C64 {
        let den = self.c * z + self.d;
        self.det() / (den * den)
    }

    pub fn second_derivative(&self, z: C64) -> C64 {
        let den = self.c * z + self.d;
        -2.0 * self.c * self.det() / (den * den * den)
    }

    pub fn inverse(&self) -> Self {
        Mobius {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Mobius) -> Self {
        Mobius {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    /// Image of `p` together with the derivative in local coordinates
    /// (`z − p` at finite points, `1/z` at infinity).
    pub fn jet(&self, p: ExtPoint) -> (ExtPoint, C64) {
        let det = self.det();
        let q = self.eval_ext(p);
        let d = match (p, q) {
            (ExtPoint::Finite(z), ExtPoint::Finite(_)) => self.derivative(z),
            (ExtPoint::Finite(_), ExtPoint::Infinity) => -self.c * self.c / det,
            (ExtPoint::Infinity, ExtPoint::Finite(_)) => -det / (self.c * self.c),
            (ExtPoint::Infinity, ExtPoint::Infinity) => self.d / self.a,
        };
        (q, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn inverse_and_compose_round_trip() {
        let m = Mobius::new(c(1.0, 2.0), c(0.5, 0.0), c(0.3, -0.1), c(2.0, 1.0)).unwrap();
        let z = c(0.2, -0.7);
        let back = m.inverse().eval(m.eval(z));
        assert!((back - z).norm() < 1e-14);
        let id = m.compose(&m.inverse());
        assert!((id.eval(z) - z).norm() < 1e-14);
    }

    #[test]
    fn jets_through_infinity() {
        // z ↦ 1/(z − 2): pole at 2, local coordinate 1/w = z − 2 so derivative 1.
        let m = Mobius::inversion_about(c(2.0, 0.0));
        let (q, d) = m.jet(ExtPoint::Finite(c(2.0, 0.0)));
        assert!(q.is_infinite());
        assert!((d - c(1.0, 0.0)).norm() < 1e-15);
        // ∞ ↦ 0 with u = 1/z: w = u/(1 − 2u), derivative 1.
        let (q, d) = m.jet(ExtPoint::Infinity);
        assert_eq!(q, ExtPoint::Finite(c(0.0, 0.0)));
        assert!((d - c(1.0, 0.0)).norm() < 1e-15);
        // affine z ↦ 3z fixes ∞ with local derivative 1/3.
        let (q, d) = Mobius::affine(c(3.0, 0.0), c(1.0, 0.0)).jet(ExtPoint::Infinity);
        assert!(q.is_infinite());
        assert!((d - c(1.0 / 3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn singular_map_rejected() {
        assert!(Mobius::new(c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)).is_err());
    }
}
