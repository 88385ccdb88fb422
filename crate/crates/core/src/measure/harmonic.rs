use super::boundary_map::BoundaryPoint;
use super::discrete::DiscreteMeasure;
use crate::confmap::{boundary_correspondence_with, AccessTag, BoundaryCorrespondence, RiemannMap};
use crate::exec::Exec;
use crate::{Error, Result, C64};

/// Harmonic measure `g∗m`: `n` equal angle cells pushed through the
/// boundary correspondence at their midpoints.
pub fn harmonic_measure(g: &RiemannMap, n: usize) -> Result<DiscreteMeasure> {
    harmonic_measure_with(g, n, Exec::default())
}

pub fn harmonic_measure_with(g: &RiemannMap, n: usize, exec: Exec) -> Result<DiscreteMeasure> {
    if n < 8 {
        return Err(Error::invalid("harmonic measure needs at least 8 cells"));
    }
    let g = g.pre_rotated(0.5 / n as f64);
    let corr = boundary_correspondence_with(&g, n, exec)?;
    measure_from_correspondence(&corr)
}

/// Pushforward of the equal-cell measure on the correspondence angles.
/// Mass of non-convergent cells goes to the nearest convergent one.
fn measure_from_correspondence(c: &BoundaryCorrespondence) -> Result<DiscreteMeasure> {
    let n = c.samples.len();
    let good: Vec<usize> = (0..n).filter(|&k| c.samples[k].converged).collect();
    if good.is_empty() {
        return Err(Error::numeric("no boundary sample converged"));
    }
    let mut weight = vec![0.0; n];
    for k in 0..n {
        let target = if c.samples[k].converged {
            k
        } else {
            *good
                .iter()
                .min_by_key(|&&j| {
                    let d = (j as i64 - k as i64).rem_euclid(n as i64);
                    d.min(n as i64 - d)
                })
                .expect("nonempty")
        };
        weight[target] += 1.0 / n as f64;
    }
    let atoms = good.iter().map(|&k| {
        let s = &c.samples[k];
        (BoundaryPoint::new(s.point, s.tag.side()), weight[k], s.tag)
    });
    let mut mu = DiscreteMeasure::new(c.map.target_arc(), atoms)?;
    let bad = n - good.len();
    if bad * 100 > n {
        mu.warnings.push(format!(
            "{bad} of {n} boundary cells did not converge; their mass was reassigned"
        ));
    }
    Ok(mu)
}

/// `ω = α + β⁻ + β⁺` by access tag.
#[derive(Debug, Clone)]
pub struct MeasureDecomposition {
    pub alpha: DiscreteMeasure,
    pub beta_minus: DiscreteMeasure,
    pub beta_plus: DiscreteMeasure,
    pub marked: C64,
}

/// Splits a measure on the boundary of `c`'s target by the access tags of
/// its atoms. The `±` labels follow the traversal from the marked point
/// `s = g(1)`: the side met first is `−`.
pub fn decompose(mu: &DiscreteMeasure, c: &BoundaryCorrespondence, s: C64) -> Result<MeasureDecomposition> {
    let disk = c.map.target();
    if disk.boundary != mu.domain().boundary {
        return Err(Error::Mismatch("measure and correspondence live on different boundaries".into()));
    }
    if c.samples.iter().all(|x| x.tag == AccessTag::Unknown) {
        return Err(Error::precondition("correspondence carries no access tags"));
    }
    let g1 = c.map.boundary_sample(0.0)?;
    if g1.tag != AccessTag::Uni || (g1.point - s).norm() > disk.match_tolerance() {
        return Err(Error::precondition(format!(
            "marked point {s} is not the uniaccessible image g(1) = {}",
            g1.point
        )));
    }
    if (disk.boundary.start_point() - s).norm() > disk.match_tolerance() {
        return Err(Error::precondition("boundary parameterization does not start at the marked point"));
    }
    let decomposition = MeasureDecomposition {
        alpha: mu.restrict(|a| a.tag == AccessTag::Uni || a.tag == AccessTag::Unknown),
        beta_minus: mu.restrict(|a| a.tag == AccessTag::BiMinus),
        beta_plus: mu.restrict(|a| a.tag == AccessTag::BiPlus),
        marked: s,
    };
    let sum = decomposition.alpha.total() + decomposition.beta_minus.total() + decomposition.beta_plus.total();
    debug_assert!((sum - mu.total()).abs() < 1e-12);
    Ok(decomposition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{radial_slit_for_mass, DomainSpec};
    use crate::confmap::boundary_correspondence;

    #[test]
    fn exterior_disk_quarter_arc() {
        let (_, g) = DomainSpec::DiskExterior.build(0).unwrap();
        let mu = harmonic_measure(&g, 400).unwrap();
        let q = mu.mass_where(|a| a.point.re > 0.0 && a.point.im > 0.0);
        assert!((q - 0.25).abs() < 1e-12);
        assert!((mu.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ellipse_arc_mass_is_angle_length() {
        let t = C64::new(0.5, 0.0);
        let (_, g) = DomainSpec::JoukowskiExterior { t }.build(0).unwrap();
        let mu = harmonic_measure(&g, 1000).unwrap();
        // The image of angles [0, 1/8] is the arc between z(1) and z(e^{iπ/4}).
        let end = g.eval(crate::geom::cis(0.125)).unwrap();
        let m = mu.mass_where(|a| a.point.im >= 0.0 && a.point.re >= end.re - 1e-12);
        assert!((m - 0.125).abs() < 1e-12, "{m}");
    }

    #[test]
    fn symmetric_slit_sides_carry_equal_mass() {
        let p = radial_slit_for_mass(0.3).unwrap();
        let spec = DomainSpec::RadialSlitExterior { p_tilde: p };
        let (_, g) = spec.build(0).unwrap();
        let mu = harmonic_measure(&g, 2000).unwrap();
        let c = boundary_correspondence(&g, 64).unwrap();
        let d = decompose(&mu, &c, C64::new(p, 0.0)).unwrap();
        let (bm, bp) = (d.beta_minus.total(), d.beta_plus.total());
        assert!((bm - bp).abs() < 1e-3, "{bm} {bp}");
        assert!((bm + bp - 0.3).abs() < 2e-3);
    }

    #[test]
    fn jordan_domain_has_no_beta() {
        let (_, g) = DomainSpec::JoukowskiExterior { t: C64::new(0.2, 0.1) }.build(0).unwrap();
        let mu = harmonic_measure(&g, 256).unwrap();
        let c = boundary_correspondence(&g, 64).unwrap();
        let s = g.boundary_sample(0.0).unwrap().point;
        let d = decompose(&mu, &c, s).unwrap();
        assert_eq!(d.beta_minus.total() + d.beta_plus.total(), 0.0);
        assert!((d.alpha.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn minus_side_precedes_plus_side_in_angle() {
        let spec = DomainSpec::ArcSlitExterior { delta: 0.25, epsilon: 0.05 };
        let (_, g) = spec.build(0).unwrap();
        for k in 1..200 {
            let a = k as f64 / 200.0;
            let b = g.boundary_sample(a).unwrap();
            match b.tag {
                AccessTag::BiMinus => assert!(a < 0.5, "{a}"),
                AccessTag::BiPlus => assert!(a > 0.5, "{a}"),
                _ => {}
            }
        }
    }
}
