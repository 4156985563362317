use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

/// A fully tuned location score function, evaluated at the residual `r = x - mu`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "psi", rename_all = "snake_case")]
pub enum PsiKind {
    /// Tukey's bisquare with cutoff `c` (same units as the data).
    Bisquare { c: f64 },
    /// Score from the gamma divergence under a normal model:
    /// `r * [N(0, sigma) density at r]^gamma`.
    Gamma { gamma: f64, sigma: f64 },
    /// Normal-location score `psi(r) = r`; its root is the sample mean.
    MleNormal,
}

impl PsiKind {
    pub fn psi(&self, r: f64) -> f64 {
        match *self {
            PsiKind::Bisquare { c } => {
                if r.abs() <= c {
                    let u = r / c;
                    let t = 1.0 - u * u;
                    r * t * t
                } else {
                    0.0
                }
            }
            PsiKind::Gamma { .. } => r * self.weight(r),
            PsiKind::MleNormal => r,
        }
    }

    /// `psi(r) / r`, continued to its limit at `r = 0`.
    pub fn weight(&self, r: f64) -> f64 {
        match *self {
            PsiKind::Bisquare { c } => {
                if r.abs() <= c {
                    let u = r / c;
                    let t = 1.0 - u * u;
                    t * t
                } else {
                    0.0
                }
            }
            PsiKind::Gamma { gamma, sigma } => {
                let var = sigma * sigma;
                (2.0 * PI * var).powf(-0.5 * gamma) * (-gamma * r * r / (2.0 * var)).exp()
            }
            PsiKind::MleNormal => 1.0,
        }
    }
}

pub fn psi(kind: &PsiKind, r: f64) -> f64 {
    kind.psi(r)
}

pub fn weight(kind: &PsiKind, r: f64) -> f64 {
    kind.weight(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisquare_values() {
        let k = PsiKind::Bisquare { c: 1.0 };
        assert_eq!(k.psi(1.0), 0.0);
        assert_eq!(k.psi(-1.0), 0.0);
        assert!((k.psi(0.5) - 0.28125).abs() < 1e-15);
        assert_eq!(k.psi(1.5), 0.0);
        assert_eq!(k.weight(0.0), 1.0);
        assert_eq!(k.weight(1.0 + 1e-12), 0.0);
        assert_eq!(k.weight(-7.0), 0.0);
        // continuity at the cutoff
        let c = 2.3;
        let k = PsiKind::Bisquare { c };
        assert!(k.psi(c - 1e-9).abs() < 1e-15);
    }

    #[test]
    fn gamma_values() {
        let k = PsiKind::Gamma {
            gamma: 0.5,
            sigma: 1.0,
        };
        assert_eq!(k.psi(0.0), 0.0);
        let w0 = (2.0 * PI).powf(-0.25);
        assert!((k.weight(0.0) - w0).abs() < 1e-15);
        assert!((k.weight(0.0) - 0.6316).abs() < 1e-4);
        // hand evaluation at r = 2: [phi(2)]^0.5 * 2
        let dens = (-2.0f64).exp() / (2.0 * PI).sqrt();
        assert!((k.psi(2.0) - 2.0 * dens.sqrt()).abs() < 1e-15);
        assert!(k.psi(40.0).abs() < 1e-100);
    }

    #[test]
    fn mle_is_identity() {
        for r in [-3.0, 0.0, 0.25, 1e6] {
            assert_eq!(PsiKind::MleNormal.psi(r), r);
            assert_eq!(PsiKind::MleNormal.weight(r), 1.0);
        }
    }
}
