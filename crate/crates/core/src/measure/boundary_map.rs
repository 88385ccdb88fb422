use crate::confmap::RiemannMap;
use crate::geom::Side;
use crate::{Result, C64};

/// A boundary point, with the slit side it is approached from when it lies
/// on a two-sided slit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    pub point: C64,
    pub side: Option<Side>,
}

impl BoundaryPoint {
    pub fn new(point: C64, side: Option<Side>) -> Self {
        BoundaryPoint { point, side }
    }
}

impl From<C64> for BoundaryPoint {
    fn from(point: C64) -> Self {
        BoundaryPoint { point, side: None }
    }
}

/// A map between disk boundaries.
pub trait BoundaryMap: Send + Sync {
    fn apply(&self, p: BoundaryPoint) -> Result<BoundaryPoint>;
}

/// A boundary map given by a closure.
#[derive(Debug, Clone, Copy)]
pub struct FnMap<F>(pub F);

impl<F> BoundaryMap for FnMap<F>
where
    F: Fn(BoundaryPoint) -> Result<BoundaryPoint> + Send + Sync,
{
    fn apply(&self, p: BoundaryPoint) -> Result<BoundaryPoint> {
        (self.0)(p)
    }
}

impl<M: BoundaryMap + ?Sized> BoundaryMap for &M {
    fn apply(&self, p: BoundaryPoint) -> Result<BoundaryPoint> {
        (**self).apply(p)
    }
}

impl<M: BoundaryMap + ?Sized> BoundaryMap for Box<M> {
    fn apply(&self, p: BoundaryPoint) -> Result<BoundaryPoint> {
        (**self).apply(p)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Identity;

impl BoundaryMap for Identity {
    fn apply(&self, p: BoundaryPoint) -> Result<BoundaryPoint> {
        Ok(p)
    }
}

/// A plane map restricted to the boundary; slit sides are carried over.
#[derive(Debug, Clone, Copy)]
pub struct PointMap<F>(pub F);

impl<F> BoundaryMap for PointMap<F>
where
    F: Fn(C64) -> C64 + Send + Sync,
{
    fn apply(&self, p: BoundaryPoint) -> Result<BoundaryPoint> {
        Ok(BoundaryPoint {
            point: (self.0)(p.point),
            side: p.side,
        })
    }
}

/// `then ∘ first`.
#[derive(Debug, Clone, Copy)]
pub struct Composed<A, B> {
    pub first: A,
    pub then: B,
}

pub fn compose<A: BoundaryMap, B: BoundaryMap>(then: B, first: A) -> Composed<A, B> {
    Composed { first, then }
}

impl<A: BoundaryMap, B: BoundaryMap> BoundaryMap for Composed<A, B> {
    fn apply(&self, p: BoundaryPoint) -> Result<BoundaryPoint> {
        self.then.apply(self.first.apply(p)?)
    }
}

/// `g̃ ∘ R ∘ g⁻¹` on boundaries, with `R` the rotation by `shift` turns.
#[derive(Debug, Clone)]
pub struct ConformalTransfer {
    pub from: RiemannMap,
    pub to: RiemannMap,
    pub shift: f64,
}

impl ConformalTransfer {
    pub fn new(from: RiemannMap, to: RiemannMap) -> Self {
        ConformalTransfer { from, to, shift: 0.0 }
    }
}

impl BoundaryMap for ConformalTransfer {
    fn apply(&self, p: BoundaryPoint) -> Result<BoundaryPoint> {
        let a = self.from.angle_of(p.point, p.side)?;
        let b = self.to.boundary_sample(a + self.shift)?;
        Ok(BoundaryPoint {
            point: b.point,
            side: b.tag.side(),
        })
    }
}
