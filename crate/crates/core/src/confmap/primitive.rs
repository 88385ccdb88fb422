use std::f64::consts::PI;

use serde::Serialize;

use crate::geom::{ExtPoint, Mobius};
use crate::zhukovskii::{zhukovskii, zhukovskii_inverse_exterior};
use crate::{Error, Result, C64};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

fn domain(msg: impl Into<String>) -> Error {
    Error::Domain {
        index: 0,
        message: msg.into(),
    }
}

/// Closed-form maps belonging to one of the explicit families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FamilyMap {
    /// `ζ ↦ ζ + t/ζ` on the exterior disk, `|t| < 1`.
    Stretch { t: C64 },
    /// `ζ ↦ ζ + a ζ²` on the unit disk, `|a| < 1/2`.
    Quadratic { a: C64 },
    /// `ξ ↦ k(ξ − log ξ + iπ) + tip − k` with `k = h/π`: the upper half-plane
    /// onto the upper half-plane minus the horizontal ray `{x + ih : x ≥ tip}`.
    Channel { h: f64, tip: f64 },
}

/// One elementary conformal map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Primitive {
    Mobius(Mobius),
    Affine { scale: C64, shift: C64 },
    /// Principal branch of `z^α` on the plane slit along the negative axis.
    Power { alpha: f64 },
    /// `ζ ↦ ζ + 1/ζ`, inverted on the exterior branch.
    Joukowski,
    /// Exterior branch of the inverse of `ζ + 1/ζ`.
    JoukowskiExteriorInverse,
    Family(FamilyMap),
    /// `z ↦ i √((z − z1)/(z − z0))`.
    ZipInit { z0: C64, z1: C64 },
    /// Zips the geodesic from 0 to the point with `a = Re c/|c|²` and
    /// `b = |c|²/Im c` down to 0.
    ZipStage { a: f64, b: f64 },
    /// `z ↦ σ (z / (1 − z/x0))²`; `x0 = None` stands for `x0 = ∞`.
    ZipFinal { x0: Option<f64>, sigma: f64 },
}

/// Serializable name and coefficient list of a primitive.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrimitiveDescriptor {
    pub name: &'static str,
    pub inverse: bool,
    pub coeffs: Vec<f64>,
}

fn channel_eval(h: f64, tip: f64, xi: C64) -> Result<C64> {
    // Boundary values approached from the upper half-plane.
    let xi = C64::new(xi.re, xi.im.max(0.0));
    if xi.norm() == 0.0 {
        return Err(domain("channel map evaluated at its logarithmic pole"));
    }
    let k = h / PI;
    Ok(k * (xi - xi.ln() + C64::new(0.0, PI)) + (tip - k))
}

fn channel_inverse(h: f64, tip: f64, v: C64) -> Result<C64> {
    let k = h / PI;
    let scale = 1.0 + v.norm() + k + tip.abs();
    let resid = |xi: C64| -> C64 { k * (xi - xi.ln() + C64::new(0.0, PI)) + (tip - k) - v };
    let w = (v - tip) / k;
    let mut far = w + 1.0 - C64::new(0.0, PI);
    for _ in 0..8 {
        let cand = w + 1.0 - C64::new(0.0, PI) + far.ln();
        if !cand.is_finite() || cand.im <= 0.0 {
            break;
        }
        far = cand;
    }
    let channel = (C64::new(0.0, PI) - w - 1.0).exp();
    let mut near = (2.0 * (v - C64::new(tip, h)) / k).sqrt();
    if near.im < 0.0 {
        near = -near;
    }
    let near = ONE + near;
    let mut starts = [far, channel, near];
    starts.sort_by(|a, b| resid(*a).norm().total_cmp(&resid(*b).norm()));
    for start in starts {
        let mut xi = start;
        if !(xi.im > 0.0) || !xi.is_finite() {
            xi = C64::new(xi.re, xi.im.abs().max(1e-300));
        }
        for _ in 0..100 {
            let r = resid(xi);
            if r.norm() < 1e-15 * scale {
                break;
            }
            let d = k * (ONE - ONE / xi);
            let mut step = r / d;
            let mut next = xi - step;
            let mut tries = 0;
            while (next.im < 0.0 || resid(next).norm() > r.norm()) && tries < 40 {
                step *= 0.5;
                next = xi - step;
                tries += 1;
            }
            if (next - xi).norm() <= 1e-16 * xi.norm() {
                xi = next;
                break;
            }
            xi = next;
        }
        if resid(xi).norm() < 1e-11 * scale && xi.im >= -1e-12 * xi.norm() {
            return Ok(xi);
        }
    }
    Err(Error::numeric("channel map inverse did not converge"))
}

impl Primitive {
    pub fn descriptor(&self, inverse: bool) -> PrimitiveDescriptor {
        let cs = |zs: &[C64]| zs.iter().flat_map(|z| [z.re, z.im]).collect::<Vec<f64>>();
        let (name, coeffs) = match self {
            Primitive::Mobius(m) => ("mobius", cs(&[m.a, m.b, m.c, m.d])),
            Primitive::Affine { scale, shift } => ("affine", cs(&[*scale, *shift])),
            Primitive::Power { alpha } => ("power", vec![*alpha]),
            Primitive::Joukowski => ("joukowski", vec![]),
            Primitive::JoukowskiExteriorInverse => ("joukowski_exterior_inverse", vec![]),
            Primitive::Family(FamilyMap::Stretch { t }) => ("stretch", cs(&[*t])),
            Primitive::Family(FamilyMap::Quadratic { a }) => ("quadratic", cs(&[*a])),
            Primitive::Family(FamilyMap::Channel { h, tip }) => ("channel", vec![*h, *tip]),
            Primitive::ZipInit { z0, z1 } => ("zip_init", cs(&[*z0, *z1])),
            Primitive::ZipStage { a, b } => ("zip_stage", vec![*a, *b]),
            Primitive::ZipFinal { x0, sigma } => {
                ("zip_final", vec![x0.unwrap_or(f64::INFINITY), *sigma])
            }
        };
        PrimitiveDescriptor {
            name,
            inverse,
            coeffs,
        }
    }

    /// Image of a point.
    pub fn forward(&self, p: ExtPoint) -> Result<ExtPoint> {
        Ok(self.forward_jet(p)?.0)
    }

    pub fn backward(&self, p: ExtPoint) -> Result<ExtPoint> {
        Ok(self.backward_jet(p)?.0)
    }

    /// Image and derivative in local coordinates (`1/z` at infinity).
    pub fn forward_jet(&self, p: ExtPoint) -> Result<(ExtPoint, C64)> {
        use ExtPoint::{Finite, Infinity};
        match (*self, p) {
            (Primitive::Mobius(m), _) => Ok(m.jet(p)),
            (Primitive::Affine { scale, shift }, Finite(z)) => Ok((Finite(scale * z + shift), scale)),
            (Primitive::Affine { scale, .. }, Infinity) => Ok((Infinity, ONE / scale)),
            (Primitive::Power { alpha }, Finite(z)) => {
                if z.norm() == 0.0 || (z.im == 0.0 && z.re < 0.0) {
                    return Err(domain("power map on its branch cut"));
                }
                let w = z.powf(alpha);
                Ok((Finite(w), alpha * w / z))
            }
            (Primitive::Joukowski, Finite(z)) => {
                if z.norm() == 0.0 {
                    return Ok((Infinity, ONE));
                }
                Ok((Finite(zhukovskii(z)?), ONE - ONE / (z * z)))
            }
            (Primitive::Joukowski, Infinity) => Ok((Infinity, ONE)),
            (Primitive::JoukowskiExteriorInverse, Finite(w)) => {
                let z = zhukovskii_inverse_exterior(w)?;
                let d = ONE - ONE / (z * z);
                if d.norm() == 0.0 {
                    return Ok((Finite(z), C64::new(f64::INFINITY, 0.0)));
                }
                Ok((Finite(z), ONE / d))
            }
            (Primitive::JoukowskiExteriorInverse, Infinity) => Ok((Infinity, ONE)),
            (Primitive::Family(FamilyMap::Stretch { t }), Finite(z)) => {
                if z.norm() == 0.0 {
                    return Err(domain("stretch map at 0"));
                }
                Ok((Finite(z + t / z), ONE - t / (z * z)))
            }
            (Primitive::Family(FamilyMap::Stretch { .. }), Infinity) => Ok((Infinity, ONE)),
            (Primitive::Family(FamilyMap::Quadratic { a }), Finite(z)) => {
                Ok((Finite(z + a * z * z), ONE + 2.0 * a * z))
            }
            (Primitive::Family(FamilyMap::Channel { h, tip }), Finite(xi)) => {
                let w = channel_eval(h, tip, xi)?;
                Ok((Finite(w), (h / PI) * (ONE - ONE / xi)))
            }
            (Primitive::ZipInit { z0, z1 }, Finite(z)) => {
                if (z - z0).norm() == 0.0 {
                    return Ok((Infinity, ZERO));
                }
                let q = (z - z1) / (z - z0);
                let w = I * q.sqrt();
                let dq = (z1 - z0) / ((z - z0) * (z - z0));
                let d = if w.norm() == 0.0 { ZERO } else { -dq / (2.0 * w) };
                Ok((Finite(w), d))
            }
            (Primitive::ZipInit { .. }, Infinity) => Ok((Finite(I), ZERO)),
            (Primitive::ZipStage { a, b }, Finite(z)) => {
                let den = ONE - a * z;
                if den.norm() == 0.0 {
                    return Ok((Infinity, ZERO));
                }
                let t = z / den;
                if t.norm() == 0.0 {
                    return Ok((Finite(C64::new(0.0, b)), ZERO));
                }
                let w = t * (ONE + (b / t) * (b / t)).sqrt();
                let d = if w.norm() == 0.0 {
                    ZERO
                } else {
                    (t / w) / (den * den)
                };
                Ok((Finite(w), d))
            }
            (Primitive::ZipStage { a, b }, Infinity) => {
                if a == 0.0 {
                    return Ok((Infinity, ONE));
                }
                let t = -1.0 / a;
                Ok((Finite(C64::new(t * (1.0 + (b / t) * (b / t)).sqrt(), 0.0)), ZERO))
            }
            (Primitive::ZipFinal { x0, sigma }, Finite(z)) => {
                let den = match x0 {
                    Some(x) => ONE - z / x,
                    None => ONE,
                };
                if den.norm() == 0.0 {
                    return Ok((Infinity, ZERO));
                }
                let u = z / den;
                Ok((Finite(sigma * u * u), 2.0 * sigma * u / (den * den)))
            }
            (Primitive::ZipFinal { x0, sigma }, Infinity) => match x0 {
                Some(x) => Ok((Finite(C64::new(sigma * x * x, 0.0)), ZERO)),
                None => Ok((Infinity, ZERO)),
            },
            (Primitive::Power { .. }, Infinity)
            | (Primitive::Family(FamilyMap::Quadratic { .. }), Infinity)
            | (Primitive::Family(FamilyMap::Channel { .. }), Infinity) => {
                Err(domain("primitive evaluated at infinity"))
            }
        }
    }

    /// Preimage and derivative of the inverse in local coordinates.
    pub fn backward_jet(&self, p: ExtPoint) -> Result<(ExtPoint, C64)> {
        use ExtPoint::{Finite, Infinity};
        match (*self, p) {
            (Primitive::Mobius(m), _) => Ok(m.inverse().jet(p)),
            (Primitive::Affine { scale, shift }, Finite(w)) => {
                Ok((Finite((w - shift) / scale), ONE / scale))
            }
            (Primitive::Affine { scale, .. }, Infinity) => Ok((Infinity, scale)),
            (Primitive::Power { alpha }, Finite(w)) => {
                if w.norm() == 0.0 {
                    return Err(domain("inverse power map at 0"));
                }
                let z = w.powf(1.0 / alpha);
                if (z.arg() * alpha).abs() > PI {
                    return Err(domain("inverse power map outside the image sector"));
                }
                Ok((Finite(z), z / (alpha * w)))
            }
            (Primitive::Joukowski, _) => Primitive::JoukowskiExteriorInverse.forward_jet(p),
            (Primitive::JoukowskiExteriorInverse, _) => Primitive::Joukowski.forward_jet(p),
            (Primitive::Family(FamilyMap::Stretch { t }), Finite(w)) => {
                let s = (w * w - 4.0 * t).sqrt();
                let (r1, r2) = ((w + s) / 2.0, (w - s) / 2.0);
                let z = if r1.norm() >= r2.norm() { r1 } else { r2 };
                let d = ONE - t / (z * z);
                if d.norm() == 0.0 {
                    return Ok((Finite(z), C64::new(f64::INFINITY, 0.0)));
                }
                Ok((Finite(z), ONE / d))
            }
            (Primitive::Family(FamilyMap::Stretch { .. }), Infinity) => Ok((Infinity, ONE)),
            (Primitive::Family(FamilyMap::Quadratic { a }), Finite(w)) => {
                let z = 2.0 * w / (ONE + (ONE + 4.0 * a * w).sqrt());
                let d = ONE + 2.0 * a * z;
                if d.norm() == 0.0 {
                    return Ok((Finite(z), C64::new(f64::INFINITY, 0.0)));
                }
                Ok((Finite(z), ONE / d))
            }
            (Primitive::Family(FamilyMap::Channel { h, tip }), Finite(v)) => {
                let xi = channel_inverse(h, tip, v)?;
                let d = (h / PI) * (ONE - ONE / xi);
                Ok((Finite(xi), if d.norm() == 0.0 { ZERO } else { ONE / d }))
            }
            (Primitive::ZipInit { z0, z1 }, Finite(w)) => {
                let s = -I * w;
                let s2 = s * s;
                let den = ONE - s2;
                if den.norm() == 0.0 {
                    return Ok((Infinity, ZERO));
                }
                let z = (z1 - z0 * s2) / den;
                let dz_ds = 2.0 * s * (z1 - z0) / (den * den);
                Ok((Finite(z), -I * dz_ds))
            }
            (Primitive::ZipInit { z0, .. }, Infinity) => Ok((Finite(z0), ZERO)),
            (Primitive::ZipStage { a, b }, Finite(w)) => {
                let u = if w.im <= 0.0 {
                    // Boundary values: force the upper side.
                    let x = w.re;
                    if x.abs() < b {
                        C64::new(0.0, (b * b - x * x).sqrt())
                    } else {
                        C64::new(x.signum() * (x * x - b * b).sqrt(), 0.0)
                    }
                } else {
                    (w - b).sqrt() * (w + b).sqrt()
                };
                let den = ONE + a * u;
                if den.norm() == 0.0 {
                    return Ok((Infinity, ZERO));
                }
                let z = u / den;
                let du_dw = if u.norm() == 0.0 { ZERO } else { w / u };
                Ok((Finite(z), du_dw / (den * den)))
            }
            (Primitive::ZipStage { a, .. }, Infinity) => {
                if a == 0.0 {
                    Ok((Infinity, ONE))
                } else {
                    Ok((Finite(C64::new(1.0 / a, 0.0)), ZERO))
                }
            }
            (Primitive::ZipFinal { x0, sigma }, Finite(w)) => {
                let w = C64::new(w.re, if w.im <= 0.0 { 0.0 } else { w.im });
                let u = if sigma > 0.0 { w.sqrt() } else { -(-w).sqrt() };
                let du_dw = if u.norm() == 0.0 {
                    ZERO
                } else {
                    ONE / (2.0 * sigma * u)
                };
                match x0 {
                    None => Ok((Finite(u), du_dw)),
                    Some(x) => {
                        let den = ONE + u / x;
                        if den.norm() == 0.0 {
                            return Ok((Infinity, ZERO));
                        }
                        Ok((Finite(u / den), du_dw / (den * den)))
                    }
                }
            }
            (Primitive::ZipFinal { x0, .. }, Infinity) => match x0 {
                Some(x) => Ok((Finite(C64::new(x, 0.0)), ZERO)),
                None => Ok((Infinity, ZERO)),
            },
            (Primitive::Power { .. }, Infinity)
            | (Primitive::Family(FamilyMap::Quadratic { .. }), Infinity)
            | (Primitive::Family(FamilyMap::Channel { .. }), Infinity) => {
                Err(domain("inverse primitive evaluated at infinity"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn fin(p: ExtPoint) -> C64 {
        p.finite().unwrap()
    }

    #[test]
    fn channel_round_trip_and_boundary() {
        let (h, tip) = (0.3, -0.7);
        let p = Primitive::Family(FamilyMap::Channel { h, tip });
        for xi in [c(1.0, 1.0), c(0.01, 0.02), c(50.0, 3.0), c(-3.0, 0.2), c(1.0, 1e-4)] {
            let v = fin(p.forward(xi.into()).unwrap());
            let back = fin(p.backward(v.into()).unwrap());
            assert!((back - xi).norm() < 1e-9 * (1.0 + xi.norm()), "{xi} -> {v} -> {back}");
        }
        // ξ = 1 lands on the tip, positive reals on the ray, negative reals on ℝ.
        let tipv = fin(p.forward(c(1.0, 0.0).into()).unwrap());
        assert!((tipv - c(tip, h)).norm() < 1e-14);
        let on_ray = fin(p.forward(c(0.2, 0.0).into()).unwrap());
        assert!((on_ray.im - h).abs() < 1e-14 && on_ray.re > tip);
        let on_axis = fin(p.forward(c(-2.0, -0.0).into()).unwrap());
        assert!(on_axis.im.abs() < 1e-14);
    }

    #[test]
    fn zip_stage_sends_its_point_to_zero() {
        let cpt = c(0.3, 0.8);
        let (a, b) = (cpt.re / cpt.norm_sqr(), cpt.norm_sqr() / cpt.im);
        let p = Primitive::ZipStage { a, b };
        assert!(fin(p.forward(cpt.into()).unwrap()).norm() < 1e-7);
        let z = c(-0.4, 0.6);
        let w = fin(p.forward(z.into()).unwrap());
        assert!(w.im > 0.0);
        assert!((fin(p.backward(w.into()).unwrap()) - z).norm() < 1e-13);
    }

    #[test]
    fn derivatives_match_differences() {
        let prims = [
            Primitive::Joukowski,
            Primitive::JoukowskiExteriorInverse,
            Primitive::Family(FamilyMap::Stretch { t: c(0.3, 0.2) }),
            Primitive::Family(FamilyMap::Quadratic { a: c(0.1, -0.05) }),
            Primitive::Family(FamilyMap::Channel { h: 0.4, tip: 0.1 }),
            Primitive::ZipInit {
                z0: c(1.0, 0.0),
                z1: c(0.0, 1.0),
            },
            Primitive::ZipStage { a: 0.4, b: 1.3 },
            Primitive::ZipFinal {
                x0: Some(-2.0),
                sigma: 1.0,
            },
            Primitive::Power { alpha: 0.7 },
        ];
        let z = c(0.6, 1.1);
        let h = 1e-6;
        for p in prims {
            let (_, d) = p.forward_jet(z.into()).unwrap();
            let num = (fin(p.forward((z + h).into()).unwrap()) - fin(p.forward((z - h).into()).unwrap()))
                / (2.0 * h);
            assert!((d - num).norm() < 1e-6 * (1.0 + d.norm()), "{p:?}");
            let w = fin(p.forward(z.into()).unwrap());
            let (back, db) = p.backward_jet(w.into()).unwrap();
            assert!((fin(back) - z).norm() < 1e-10, "{p:?}");
            assert!((db * d - 1.0).norm() < 1e-9, "{p:?}");
        }
    }
}
