use serde::Serialize;

use super::primitive::{Primitive, PrimitiveDescriptor};
use crate::geom::ExtPoint;
use crate::{Error, Result, C64};

/// Coarse domain/range tags used to check that chains fit together.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    Disk,
    Exterior,
    UpperHalfPlane,
    /// Some subset of the sphere with no further structure recorded.
    Plane,
}

impl Region {
    fn fits(self, next: Region) -> bool {
        self == next || self == Region::Plane || next == Region::Plane
    }
}

/// A primitive applied forwards or backwards.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Step {
    pub prim: Primitive,
    pub inverse: bool,
}

impl Step {
    pub fn forward(prim: Primitive) -> Self {
        Step {
            prim,
            inverse: false,
        }
    }

    pub fn backward(prim: Primitive) -> Self {
        Step { prim, inverse: true }
    }

    fn jet(&self, p: ExtPoint) -> Result<(ExtPoint, C64)> {
        if self.inverse {
            self.prim.backward_jet(p)
        } else {
            self.prim.forward_jet(p)
        }
    }

    fn flipped(&self) -> Step {
        Step {
            prim: self.prim,
            inverse: !self.inverse,
        }
    }
}

/// Composition of primitives, applied first to last.
#[derive(Debug, Clone, PartialEq)]
pub struct ConformalMap {
    steps: Vec<Step>,
    domain: Region,
    range: Region,
}

impl ConformalMap {
    pub fn identity(region: Region) -> Self {
        ConformalMap {
            steps: Vec::new(),
            domain: region,
            range: region,
        }
    }

    pub fn new(domain: Region, range: Region, steps: Vec<Step>) -> Self {
        ConformalMap {
            steps,
            domain,
            range,
        }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn domain(&self) -> Region {
        self.domain
    }

    pub fn range(&self) -> Region {
        self.range
    }

    /// Appends a step whose image region is `range`.
    pub fn then(mut self, step: Step, range: Region) -> Self {
        self.steps.push(step);
        self.range = range;
        self
    }

    /// `next ∘ self`.
    pub fn then_map(mut self, next: &ConformalMap) -> Result<Self> {
        if !self.range.fits(next.domain) {
            return Err(Error::invalid(format!(
                "cannot compose a map onto {:?} with a map from {:?}",
                self.range, next.domain
            )));
        }
        self.steps.extend_from_slice(&next.steps);
        self.range = next.range;
        Ok(self)
    }

    pub fn inverted(&self) -> ConformalMap {
        ConformalMap {
            steps: self.steps.iter().rev().map(Step::flipped).collect(),
            domain: self.range,
            range: self.domain,
        }
    }

    /// Image and derivative in local coordinates (`1/z` at infinity).
    pub fn jet(&self, p: ExtPoint) -> Result<(ExtPoint, C64)> {
        let mut q = p;
        let mut d = C64::new(1.0, 0.0);
        for (i, s) in self.steps.iter().enumerate() {
            let (next, ds) = s.jet(q).map_err(|e| e.at_index(i))?;
            q = next;
            d *= ds;
        }
        Ok((q, d))
    }

    pub fn eval_ext(&self, p: ExtPoint) -> Result<ExtPoint> {
        let mut q = p;
        for (i, s) in self.steps.iter().enumerate() {
            q = s.jet(q).map_err(|e| e.at_index(i))?.0;
        }
        Ok(q)
    }

    pub fn eval(&self, z: C64) -> Result<C64> {
        self.eval_ext(z.into())?.finite().ok_or_else(|| Error::Domain {
            index: self.steps.len().saturating_sub(1),
            message: "image is the point at infinity".into(),
        })
    }

    pub fn derivative(&self, z: C64) -> Result<C64> {
        match self.jet(z.into())? {
            (ExtPoint::Finite(_), d) => Ok(d),
            (ExtPoint::Infinity, _) => Err(Error::Domain {
                index: self.steps.len().saturating_sub(1),
                message: "derivative requested at a pole".into(),
            }),
        }
    }

    pub fn inverse_ext(&self, p: ExtPoint) -> Result<ExtPoint> {
        let mut q = p;
        for (i, s) in self.steps.iter().enumerate().rev() {
            q = s.flipped().jet(q).map_err(|e| e.at_index(i))?.0;
        }
        Ok(q)
    }

    pub fn descriptors(&self) -> Vec<PrimitiveDescriptor> {
        self.steps
            .iter()
            .map(|s| s.prim.descriptor(s.inverse))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::confmap::FamilyMap;
    use crate::geom::Mobius;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn eval_examples() {
        let id = ConformalMap::identity(Region::Plane);
        assert_eq!(id.eval(c(0.3, 0.1)).unwrap(), c(0.3, 0.1));
        let j = ConformalMap::identity(Region::Exterior).then(Step::forward(Primitive::Joukowski), Region::Plane);
        assert!(j.eval(c(0.0, 1.0)).unwrap().norm() < 1e-16);
        let aff = ConformalMap::identity(Region::Plane).then(
            Step::forward(Primitive::Affine {
                scale: c(2.0, 0.0),
                shift: c(1.0, 0.0),
            }),
            Region::Plane,
        );
        assert_eq!(aff.eval(c(1.0, 0.0)).unwrap(), c(3.0, 0.0));
    }

    #[test]
    fn jets_compose_through_infinity() {
        // ζ ↦ 3 + 2(ζ + 0.25/ζ): g(ζ)/ζ → 2 at infinity, so the local derivative is 1/2.
        let m = ConformalMap::identity(Region::Exterior)
            .then(
                Step::forward(Primitive::Family(FamilyMap::Stretch { t: c(0.25, 0.0) })),
                Region::Plane,
            )
            .then(
                Step::forward(Primitive::Affine {
                    scale: c(2.0, 0.0),
                    shift: c(3.0, 0.0),
                }),
                Region::Plane,
            );
        let (q, d) = m.jet(ExtPoint::Infinity).unwrap();
        assert!(q.is_infinite());
        assert!((d - 0.5).norm() < 1e-15);
        // Passing through a finite point and back out to infinity.
        let inv = Mobius::inversion_about(c(0.0, 0.0));
        let m2 = ConformalMap::identity(Region::Exterior)
            .then(Step::forward(Primitive::Mobius(inv)), Region::Disk)
            .then(Step::backward(Primitive::Mobius(inv)), Region::Exterior);
        let (q, d) = m2.jet(ExtPoint::Infinity).unwrap();
        assert!(q.is_infinite());
        assert!((d - 1.0).norm() < 1e-15);
    }

    #[test]
    fn mismatched_regions_rejected() {
        let a = ConformalMap::identity(Region::Disk);
        let b = ConformalMap::identity(Region::UpperHalfPlane);
        assert!(a.then_map(&b).is_err());
    }

    #[test]
    fn domain_error_carries_index() {
        let m = ConformalMap::identity(Region::Plane)
            .then(
                Step::forward(Primitive::Affine {
                    scale: c(1.0, 0.0),
                    shift: c(-2.0, 0.0),
                }),
                Region::Plane,
            )
            .then(Step::forward(Primitive::JoukowskiExteriorInverse), Region::Exterior);
        match m.eval(c(2.5, 0.0)) {
            Err(Error::Branch(_)) => {}
            other => panic!("unexpected {other:?}"),
        }
        let p = ConformalMap::identity(Region::Plane)
            .then(Step::forward(Primitive::Power { alpha: 0.5 }), Region::Plane);
        match p.eval(c(-1.0, 0.0)) {
            Err(Error::Domain { index: 0, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }
}
