use std::fmt::Write as _;
use std::sync::Arc;

use super::boundary_map::{BoundaryMap, BoundaryPoint};
use crate::confmap::AccessTag;
use crate::exec::Exec;
use crate::geom::{PointedDisk, Side};
use crate::{Error, Result, C64};

/// A weighted boundary point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub point: C64,
    pub side: Option<Side>,
    pub weight: f64,
    /// Arclength from the boundary origin; both sides of a slit share it.
    pub param: f64,
    pub tag: AccessTag,
}

/// Finitely many weighted boundary points, sorted along the boundary.
///
/// The cumulative table runs along the point-set arclength of the
/// boundary, starting at its first point (the marked point for builtin
/// domains).
#[derive(Debug, Clone)]
pub struct DiscreteMeasure {
    atoms: Vec<Atom>,
    cumulative: Vec<f64>,
    domain: Arc<PointedDisk>,
    pub warnings: Vec<String>,
}

impl DiscreteMeasure {
    /// Places atoms on the boundary of `domain`, snapping each to its nearest
    /// boundary point. Tags are taken as given unless `Unknown`, in which
    /// case the geometric tag of the location is used.
    pub fn new(
        domain: Arc<PointedDisk>,
        atoms: impl IntoIterator<Item = (BoundaryPoint, f64, AccessTag)>,
    ) -> Result<Self> {
        let boundary = &domain.boundary;
        let tol = domain.match_tolerance();
        let mut out = Vec::new();
        for (i, (p, weight, tag)) in atoms.into_iter().enumerate() {
            if !(weight >= 0.0) || !weight.is_finite() {
                return Err(Error::invalid(format!("atom {i} has weight {weight}")));
            }
            let n = boundary.nearest_on_side(p.point, p.side);
            if n.distance > 10.0 * tol {
                return Err(Error::Domain {
                    index: i,
                    message: format!("atom {} lies {:.3e} off the boundary", p.point, n.distance),
                });
            }
            let two_sided = boundary.is_two_sided(n.piece, n.point, tol);
            let side = if two_sided {
                boundary.pieces()[n.piece].slit.map(|t| t.side)
            } else {
                None
            };
            let tag = match (tag, side) {
                (AccessTag::Unknown, Some(s)) => AccessTag::bi(s),
                (AccessTag::Unknown, None) => AccessTag::Uni,
                (t, _) => t,
            };
            out.push(Atom {
                point: n.point,
                side,
                weight,
                param: boundary.param(n.piece, n.s),
                tag,
            });
        }
        Ok(Self::from_atoms(domain, out))
    }

    fn from_atoms(domain: Arc<PointedDisk>, mut atoms: Vec<Atom>) -> Self {
        atoms.sort_by(|a, b| a.param.total_cmp(&b.param));
        let mut acc = 0.0;
        let cumulative = atoms
            .iter()
            .map(|a| {
                acc += a.weight;
                acc
            })
            .collect();
        DiscreteMeasure {
            atoms,
            cumulative,
            domain,
            warnings: Vec::new(),
        }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn cumulative(&self) -> &[f64] {
        &self.cumulative
    }

    pub fn domain(&self) -> &PointedDisk {
        &self.domain
    }

    pub fn domain_arc(&self) -> Arc<PointedDisk> {
        self.domain.clone()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.cumulative.last().copied().unwrap_or(0.0)
    }

    /// Mass of the atoms with parameter at most `x`.
    pub fn cdf(&self, x: f64) -> f64 {
        let k = self.atoms.partition_point(|a| a.param <= x);
        if k == 0 {
            0.0
        } else {
            self.cumulative[k - 1]
        }
    }

    pub fn mass_where(&self, pred: impl Fn(&Atom) -> bool) -> f64 {
        self.atoms.iter().filter(|a| pred(a)).map(|a| a.weight).sum()
    }

    /// The part of the measure on atoms satisfying `pred`.
    pub fn restrict(&self, pred: impl Fn(&Atom) -> bool) -> DiscreteMeasure {
        Self::from_atoms(
            self.domain.clone(),
            self.atoms.iter().filter(|a| pred(a)).copied().collect(),
        )
    }

    /// CSV rows `param,point_re,point_im,weight,cumulative,tag`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("param,point_re,point_im,weight,cumulative,tag\n");
        for (a, c) in self.atoms.iter().zip(&self.cumulative) {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{}",
                fmt17(a.param),
                fmt17(a.point.re),
                fmt17(a.point.im),
                fmt17(a.weight),
                fmt17(*c),
                a.tag.as_str()
            );
        }
        s
    }
}

/// A float with 17 significant digits.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Kolmogorov–Smirnov distance between the cumulative tables, ignoring
/// roundoff-level differences in atom location.
pub fn measure_distance(mu: &DiscreteMeasure, nu: &DiscreteMeasure) -> Result<f64> {
    if !Arc::ptr_eq(&mu.domain, &nu.domain) && mu.domain.boundary != nu.domain.boundary {
        return Err(Error::Mismatch("measures live on different boundaries".into()));
    }
    let (a, b) = (&mu.atoms, &nu.atoms);
    // Locations closer than this are treated as the same point.
    let slack = 1e-12 * mu.domain.boundary.total_param().max(1.0);
    let (mut i, mut j) = (0, 0);
    let (mut fa, mut fb) = (0.0, 0.0);
    let mut sup: f64 = 0.0;
    while i < a.len() || j < b.len() {
        let x = match (a.get(i), b.get(j)) {
            (Some(p), Some(q)) => p.param.min(q.param),
            (Some(p), None) => p.param,
            (None, Some(q)) => q.param,
            (None, None) => unreachable!(),
        } + slack;
        while i < a.len() && a[i].param <= x {
            fa = mu.cumulative[i];
            i += 1;
        }
        while j < b.len() && b[j].param <= x {
            fb = nu.cumulative[j];
            j += 1;
        }
        sup = sup.max((fa - fb).abs());
    }
    Ok(sup)
}

/// Moves every atom by `phi` onto the boundary of `target`, keeping weights.
pub fn pushforward(
    mu: &DiscreteMeasure,
    phi: &dyn BoundaryMap,
    target: Arc<PointedDisk>,
) -> Result<DiscreteMeasure> {
    pushforward_with(mu, phi, target, Exec::default())
}

pub fn pushforward_with(
    mu: &DiscreteMeasure,
    phi: &dyn BoundaryMap,
    target: Arc<PointedDisk>,
    exec: Exec,
) -> Result<DiscreteMeasure> {
    let moved = exec.map(&mu.atoms, |a| {
        phi.apply(BoundaryPoint::new(a.point, a.side))
            .map(|p| (p, a.weight, AccessTag::Unknown))
    });
    let mut atoms = Vec::with_capacity(moved.len());
    for (k, m) in moved.into_iter().enumerate() {
        atoms.push(m.map_err(|e| Error::at_index(e, k))?);
    }
    let mut out = DiscreteMeasure::new(target, atoms)?;
    out.warnings = mu.warnings.clone();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::DomainSpec;
    use crate::measure::{Identity, PointMap};

    fn uniform(n: usize, shift: f64) -> DiscreteMeasure {
        let disk = Arc::new(DomainSpec::UnitDisk.disk(None, None).unwrap());
        let atoms = (0..n).map(|k| {
            let a = (k as f64 + 0.5) / n as f64 + shift;
            (BoundaryPoint::from(crate::geom::cis(a)), 1.0 / n as f64, AccessTag::Unknown)
        });
        DiscreteMeasure::new(disk, atoms).unwrap()
    }

    #[test]
    fn distance_of_rotated_uniform_measures() {
        let mu = uniform(1000, 0.0);
        assert_eq!(measure_distance(&mu, &mu).unwrap(), 0.0);
        let nu = DiscreteMeasure::new(
            mu.domain_arc(),
            mu.atoms()
                .iter()
                .map(|a| (BoundaryPoint::from(a.point * crate::geom::cis(0.25)), a.weight, a.tag)),
        )
        .unwrap();
        let point_mass = DiscreteMeasure::new(
            mu.domain_arc(),
            [(BoundaryPoint::from(crate::geom::cis(0.25)), 1.0, AccessTag::Uni)],
        )
        .unwrap();
        let shifted = DiscreteMeasure::new(
            mu.domain_arc(),
            [(BoundaryPoint::from(crate::geom::cis(0.5)), 1.0, AccessTag::Uni)],
        )
        .unwrap();
        // A rotated uniform measure is again uniform on the circle.
        assert!(measure_distance(&mu, &nu).unwrap() < 2e-3);
        assert!((measure_distance(&point_mass, &shifted).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cdf_shift_of_an_arc_measure() {
        let n = 1000;
        let disk = Arc::new(DomainSpec::UnitDisk.disk(None, None).unwrap());
        let arc = |shift: f64| {
            DiscreteMeasure::new(
                disk.clone(),
                (0..n).map(|k| {
                    let a = 0.5 * (k as f64 + 0.5) / n as f64 + shift;
                    (BoundaryPoint::from(crate::geom::cis(a)), 1.0 / n as f64, AccessTag::Uni)
                }),
            )
            .unwrap()
        };
        let d = measure_distance(&arc(0.0), &arc(0.25)).unwrap();
        assert!((d - 0.5).abs() < 2e-3, "{d}");
    }

    #[test]
    fn pushforward_identity_and_composition() {
        let mu = uniform(64, 0.0);
        let same = pushforward(&mu, &Identity, mu.domain_arc()).unwrap();
        assert_eq!(measure_distance(&mu, &same).unwrap(), 0.0);
        let r1 = PointMap(|z: C64| z * crate::geom::cis(0.1));
        let r2 = PointMap(|z: C64| z * crate::geom::cis(0.3));
        let two = pushforward(&pushforward(&mu, &r1, mu.domain_arc()).unwrap(), &r2, mu.domain_arc()).unwrap();
        let one = pushforward(&mu, &crate::measure::compose(r2, r1), mu.domain_arc()).unwrap();
        for (a, b) in one.atoms().iter().zip(two.atoms()) {
            assert!((a.point - b.point).norm() < 1e-12);
            assert!((a.weight - b.weight).abs() < 1e-12);
        }
        assert!((one.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn csv_header_and_rows() {
        let csv = uniform(8, 0.0).to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("param,point_re,point_im,weight,cumulative,tag"));
        assert_eq!(lines.count(), 8);
    }
}
