//! Distances between nonnegative power spectra sampled on a common uniform
//! grid of `M` points. Integrals over `[0, 1)` use the rectangle rule, so
//! every distance is an average over the grid.

use alloc::vec::Vec;
#[allow(unused_imports)] // inherent when a dependency links std
use num_traits::Float;

use crate::{Error, Result};

/// Relative floor used by the Itakura-Saito distances when none is given.
pub const DEFAULT_FLOOR_RATIO: f64 = 1e-12;

/// Power values on the uniform grid `m/M`, `m = 0..M`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSpectrumGrid {
    values: Vec<f64>,
}

impl PowerSpectrumGrid {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        if let Some(index) = values.iter().position(|&v| v < 0.0) {
            return Err(Error::NegativeCoefficient { index, value: values[index] });
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn frequency(&self, m: usize) -> f64 {
        m as f64 / self.values.len() as f64
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.values.iter().map(|v| v * c).collect())
    }

    /// `DEFAULT_FLOOR_RATIO · max(values)`, or the smallest positive normal
    /// number for an all-zero spectrum.
    pub fn default_floor(&self) -> f64 {
        (DEFAULT_FLOOR_RATIO * self.max()).max(f64::MIN_POSITIVE)
    }
}

fn check_grids(s1: &PowerSpectrumGrid, s2: &PowerSpectrumGrid) -> Result<()> {
    if s1.len() == s2.len() {
        Ok(())
    } else {
        Err(Error::GridMismatch(s1.len(), s2.len()))
    }
}

fn check_floor(floor: f64) -> Result<()> {
    if floor > 0.0 && floor.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid("floor", "must be positive and finite"))
    }
}

/// `(1/M) Σ |s1 - s2|`
pub fn dist_l1(s1: &PowerSpectrumGrid, s2: &PowerSpectrumGrid) -> Result<f64> {
    check_grids(s1, s2)?;
    let sum: f64 = s1.values.iter().zip(&s2.values).map(|(a, b)| (a - b).abs()).sum();
    Ok(sum / s1.len() as f64)
}

/// `sqrt((1/M) Σ (s1 - s2)²)`
pub fn dist_l2(s1: &PowerSpectrumGrid, s2: &PowerSpectrumGrid) -> Result<f64> {
    check_grids(s1, s2)?;
    let sum: f64 = s1.values.iter().zip(&s2.values).map(|(a, b)| (a - b).powi(2)).sum();
    Ok((sum / s1.len() as f64).sqrt())
}

/// `(1/M) Σ (r - log r - 1)` with `r = max(s1, floor) / max(s2, floor)`.
pub fn dist_isd(s1: &PowerSpectrumGrid, s2: &PowerSpectrumGrid, floor: f64) -> Result<f64> {
    check_grids(s1, s2)?;
    check_floor(floor)?;
    let sum: f64 = s1
        .values
        .iter()
        .zip(&s2.values)
        .map(|(a, b)| {
            let r = a.max(floor) / b.max(floor);
            r - r.ln() - 1.0
        })
        .sum();
    Ok((sum / s1.len() as f64).max(0.0))
}

/// `dist_isd(s1, s2) + dist_isd(s2, s1)`, not halved.
pub fn dist_sis(s1: &PowerSpectrumGrid, s2: &PowerSpectrumGrid, floor: f64) -> Result<f64> {
    Ok(dist_isd(s1, s2, floor)? + dist_isd(s2, s1, floor)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Distance {
    L1,
    L2,
    Isd,
    Sis,
}

impl Distance {
    pub const ALL: [Distance; 4] = [Distance::L1, Distance::L2, Distance::Isd, Distance::Sis];

    pub fn name(self) -> &'static str {
        match self {
            Distance::L1 => "L1",
            Distance::L2 => "L2",
            Distance::Isd => "ISD",
            Distance::Sis => "SIS",
        }
    }

    /// Distance of `estimate` from `truth`; the IS floor defaults to
    /// `truth.default_floor()`.
    pub fn eval(self, estimate: &PowerSpectrumGrid, truth: &PowerSpectrumGrid, floor: Option<f64>) -> Result<f64> {
        let floor = floor.unwrap_or_else(|| truth.default_floor());
        match self {
            Distance::L1 => dist_l1(estimate, truth),
            Distance::L2 => dist_l2(estimate, truth),
            Distance::Isd => dist_isd(estimate, truth, floor),
            Distance::Sis => dist_sis(estimate, truth, floor),
        }
    }
}

/// Total variation `Σ |s[m+1] - s[m]|` around the circle, the discrete
/// `∫|dS/dν|`.
pub fn roughness(s: &PowerSpectrumGrid) -> f64 {
    let v = &s.values;
    let m = v.len();
    (0..m).map(|k| (v[(k + 1) % m] - v[k]).abs()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn g(v: Vec<f64>) -> PowerSpectrumGrid {
        PowerSpectrumGrid::new(v).unwrap()
    }

    #[test]
    fn worked_values() {
        let two = g(vec![2.0; 8]);
        let one = g(vec![1.0; 8]);
        let three = g(vec![3.0; 8]);
        assert_eq!(dist_l1(&two, &one).unwrap(), 1.0);
        assert_eq!(dist_l2(&three, &one).unwrap(), 2.0);
        assert_relative_eq!(dist_sis(&two, &one, 1e-12).unwrap(), 0.5, max_relative = 1e-14);
        let e = g(vec![core::f64::consts::E; 8]);
        assert_relative_eq!(dist_isd(&e, &one, 1e-12).unwrap(), core::f64::consts::E - 2.0, max_relative = 1e-14);
        assert_relative_eq!(dist_isd(&e, &one, 1e-12).unwrap(), 0.71828, max_relative = 1e-5);
        assert_eq!(dist_l1(&one, &one).unwrap(), 0.0);
        assert_eq!(dist_sis(&one, &one, 1e-12).unwrap(), 0.0);
    }

    #[test]
    fn errors() {
        assert_eq!(dist_l1(&g(vec![1.0; 2]), &g(vec![1.0; 3])), Err(Error::GridMismatch(2, 3)));
        assert!(dist_isd(&g(vec![1.0]), &g(vec![1.0]), 0.0).is_err());
        assert!(PowerSpectrumGrid::new(vec![-1.0]).is_err());
    }

    #[test]
    fn isd_is_asymmetric() {
        let a = g(vec![1.0, 4.0]);
        let b = g(vec![2.0, 1.0]);
        assert!((dist_isd(&a, &b, 1e-12).unwrap() - dist_isd(&b, &a, 1e-12).unwrap()).abs() > 1e-3);
    }

    #[test]
    fn floor_handles_zeros() {
        let truth = g(vec![0.0, 1.0, 4.0]);
        let est = g(vec![0.5, 1.0, 4.0]);
        let d = Distance::Isd.eval(&est, &truth, None).unwrap();
        assert!(d.is_finite() && d > 0.0);
    }

    #[test]
    fn roughness_of_constant_is_zero() {
        assert_eq!(roughness(&g(vec![3.0; 5])), 0.0);
        assert_eq!(roughness(&g(vec![0.0, 1.0, 0.0, 1.0])), 4.0);
    }

    fn spectrum() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(0.01f64..100.0, 16)
    }

    proptest! {
        #[test]
        fn nonnegative_and_zero_on_diagonal(a in spectrum(), b in spectrum()) {
            let (a, b) = (g(a), g(b));
            for d in Distance::ALL {
                prop_assert!(d.eval(&a, &b, Some(1e-12)).unwrap() >= 0.0);
                prop_assert_eq!(d.eval(&a, &a, Some(1e-12)).unwrap(), 0.0);
            }
            prop_assert_eq!(dist_sis(&a, &b, 1e-12).unwrap(), dist_sis(&b, &a, 1e-12).unwrap());
        }

        #[test]
        fn triangle_inequality(a in spectrum(), b in spectrum(), c in spectrum()) {
            let (a, b, c) = (g(a), g(b), g(c));
            let ab = dist_l1(&a, &b).unwrap();
            let bc = dist_l1(&b, &c).unwrap();
            let ac = dist_l1(&a, &c).unwrap();
            prop_assert!(ac <= ab + bc + 1e-12);
            let ab = dist_l2(&a, &b).unwrap();
            let bc = dist_l2(&b, &c).unwrap();
            let ac = dist_l2(&a, &c).unwrap();
            prop_assert!(ac <= ab + bc + 1e-12);
        }

        #[test]
        fn homogeneity(a in spectrum(), b in spectrum(), c in 0.1f64..10.0) {
            let (sa, sb) = (g(a.clone()).scaled(c).unwrap(), g(b.clone()).scaled(c).unwrap());
            let (a, b) = (g(a), g(b));
            let l1 = dist_l1(&a, &b).unwrap();
            prop_assert!((dist_l1(&sa, &sb).unwrap() - c * l1).abs() <= 1e-12 * (1.0 + c * l1));
            let l2 = dist_l2(&a, &b).unwrap();
            prop_assert!((dist_l2(&sa, &sb).unwrap() - c * l2).abs() <= 1e-12 * (1.0 + c * l2));
        }

        #[test]
        fn isd_scale_identity(a in spectrum(), c in 0.1f64..10.0) {
            let s = g(a);
            let d = dist_isd(&s.scaled(c).unwrap(), &s, 1e-300).unwrap();
            prop_assert!((d - (c - c.ln() - 1.0)).abs() < 1e-12);
        }
    }
}
