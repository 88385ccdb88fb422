//! Scene files: the domain or motion to analyze and per-scene defaults.

use std::sync::Arc;

use confdisk::builtin::DomainSpec;
use confdisk::confmap::RiemannMap;
use confdisk::geom::{ExtPoint, PointedDisk};
use confdisk::motion::{Motion, MotionFamily};
use confdisk::C64;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Inf {
    #[serde(rename = "inf")]
    Inf,
}

/// `"inf"` or a finite point `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CenterSpec {
    Infinity(Inf),
    Finite(C64),
}

impl CenterSpec {
    pub fn ext(self) -> ExtPoint {
        match self {
            CenterSpec::Infinity(_) => ExtPoint::Infinity,
            CenterSpec::Finite(z) => ExtPoint::Finite(z),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    /// Motion parameter for single-parameter commands.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<C64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_grid: Option<Vec<C64>>,
    /// Walk-on-spheres sample count.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    /// Circle radii for the harmonicity scan.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radii: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<DomainSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<CenterSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marked_point: Option<C64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub motion: Option<MotionFamily>,
    #[serde(default)]
    pub options: SceneOptions,
}

fn invalid(msg: impl std::fmt::Display) -> CliError {
    CliError::Scene(msg.to_string())
}

fn check_t(t: C64, what: &str) -> Result<(), CliError> {
    if !(t.norm() < 1.0) {
        return Err(invalid(format!("{what} {t} is not inside the unit disk")));
    }
    Ok(())
}

impl SceneSpec {
    pub fn parse(text: &str) -> Result<SceneSpec, CliError> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(invalid)?;
        // Unit variants of a tagged enum accept stray keys, so check them here.
        if let Some(d) = value.get("domain").and_then(|d| d.as_object()) {
            if let Some(k) = d.keys().find(|k| k.as_str() != "kind") {
                if matches!(d["kind"].as_str(), Some("unit_disk" | "disk_exterior")) {
                    return Err(invalid(format!("unknown field `{k}` for {}", d["kind"])));
                }
            }
        }
        let scene: SceneSpec = serde_json::from_value(value).map_err(invalid)?;
        scene.validate()?;
        Ok(scene)
    }

    /// Range checks that need no numerics beyond building the boundary.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.domain.is_none() && self.motion.is_none() {
            return Err(invalid("scene needs a domain or a motion"));
        }
        if self.domain.is_none() && (self.center.is_some() || self.marked_point.is_some()) {
            return Err(invalid("center and marked_point need a domain"));
        }
        if let Some(d) = &self.domain {
            d.disk(self.center.map(CenterSpec::ext), self.marked_point)
                .map_err(invalid)?;
        }
        if let Some(m) = &self.motion {
            m.validate().map_err(invalid)?;
        }
        let o = &self.options;
        if let Some(t) = o.t {
            check_t(t, "t")?;
        }
        for &t in o.t_grid.iter().flatten() {
            check_t(t, "t-grid point")?;
        }
        if let Some(radii) = &o.radii {
            if radii.iter().any(|r| !(*r > 0.0 && *r < 1.0)) {
                return Err(invalid("harmonicity radii must lie in (0, 1)"));
            }
        }
        if o.n == Some(0) || o.samples == Some(0) {
            return Err(invalid("n and samples must be positive"));
        }
        if let Some(tol) = o.tol {
            if !(tol > 0.0) {
                return Err(invalid("tol must be positive"));
            }
        }
        Ok(())
    }

    pub fn motion(&self) -> Result<&MotionFamily, CliError> {
        self.motion
            .as_ref()
            .ok_or_else(|| invalid("this command needs a motion in the scene"))
    }

    /// The explicit domain, else the moved disk of the motion at `t`.
    pub fn riemann_map(&self, t: C64, n: usize) -> Result<(Arc<PointedDisk>, RiemannMap), CliError> {
        match (&self.domain, &self.motion) {
            (Some(d), _) => {
                let disk = d.disk(self.center.map(CenterSpec::ext), self.marked_point)?;
                let g = d.riemann_map(&disk, n)?;
                Ok((g.target_arc(), g))
            }
            (None, Some(m)) => {
                let g = m.moved(t, n)?;
                Ok((g.target_arc(), g))
            }
            (None, None) => Err(invalid("scene needs a domain or a motion")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{
            "domain": {"kind": "segment_exterior", "a": [-2, 0], "b": [2, 0]},
            "center": "inf",
            "marked_point": [2, 0],
            "options": {"n": 256, "t_grid": [[0, 0], [0.5, 0.1]]}
        }"#;
        let a = SceneSpec::parse(text).unwrap();
        assert_eq!(a.center, Some(CenterSpec::Infinity(Inf::Inf)));
        let b = SceneSpec::parse(&serde_json::to_string(&a).unwrap()).unwrap();
        assert_eq!(a, b);
        let c: SceneSpec = serde_json::from_str(r#"{"domain": {"kind": "unit_disk"}, "center": [0.5, 0]}"#).unwrap();
        assert_eq!(c.center, Some(CenterSpec::Finite(C64::new(0.5, 0.0))));
    }

    #[test]
    fn rejections() {
        for text in [
            r#"{"domain": {"kind": "unit_disk"}, "colour": 1}"#,
            r#"{"domain": {"kind": "unit_disk", "r": 2}}"#,
            r#"{"domain": {"kind": "unit_disk"}, "options": {"t": [1.2, 0]}}"#,
            r#"{"domain": {"kind": "radial_slit_exterior", "p_tilde": 0.5}}"#,
            r#"{"domain": {"kind": "unit_disk"}, "center": [3, 0]}"#,
            r#"{"motion": {"kind": "trivial_chain", "model": "disk", "shape": [[0.9, 0]]}}"#,
            r#"{"options": {}}"#,
        ] {
            assert!(matches!(SceneSpec::parse(text), Err(CliError::Scene(_))), "{text}");
        }
    }
}
