use std::f64::consts::TAU;

use crate::{Error, Result, C64};

/// Trapezoidal Poisson integral of equispaced samples `f(e^{2πik/n})` at `z ∈ 𝔻`.
pub fn poisson_extend(samples: &[C64], z: C64) -> Result<C64> {
    if !(z.norm() < 1.0) {
        return Err(Error::Domain {
            index: 0,
            message: format!("Poisson extension needs |z| < 1, got {z}"),
        });
    }
    if samples.is_empty() {
        return Err(Error::invalid("no boundary samples"));
    }
    let n = samples.len();
    let r2 = z.norm_sqr();
    let mut acc = C64::new(0.0, 0.0);
    for (k, f) in samples.iter().enumerate() {
        let e = C64::from_polar(1.0, TAU * k as f64 / n as f64);
        acc += f * ((1.0 - r2) / (e - z).norm_sqr());
    }
    Ok(acc / n as f64)
}

pub fn poisson_extend_real(samples: &[f64], z: C64) -> Result<f64> {
    let c: Vec<C64> = samples.iter().map(|&x| C64::new(x, 0.0)).collect();
    Ok(poisson_extend(&c, z)?.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sampled(n: usize, f: impl Fn(f64) -> f64) -> Vec<f64> {
        (0..n).map(|k| f(TAU * k as f64 / n as f64)).collect()
    }

    #[test]
    fn reproduces_low_degree_harmonics() {
        let one = sampled(64, |_| 1.0);
        assert!((poisson_extend_real(&one, C64::new(0.3, 0.2)).unwrap() - 1.0).abs() < 1e-14);
        let cos1 = sampled(64, f64::cos);
        assert!((poisson_extend_real(&cos1, C64::new(0.5, 0.0)).unwrap() - 0.5).abs() < 1e-12);
        let cos2 = sampled(64, |s| (2.0 * s).cos());
        assert!((poisson_extend_real(&cos2, C64::new(0.5, 0.0)).unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn rejects_points_off_the_disk() {
        assert!(poisson_extend_real(&[1.0; 8], C64::new(1.0, 0.0)).is_err());
    }
}
