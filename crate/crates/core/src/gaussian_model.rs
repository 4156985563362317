//! Homodyne statistics of coherent, Gaussian shift and contaminated states.
//!
//! Nothing here touches Fock space. A Gaussian shift state with centre `z`
//! and thermal dispersion `kappa` produces, under a homodyne measurement at
//! angle `phi`, a normal outcome with mean `Re(z e^{-i phi})` and standard
//! deviation `sqrt(kappa^2 + 1/4)`. A contaminated model is a convex mixture
//! of the ideal coherent law and an outlier law, so every quantity in this
//! module is a closed-form mixture of normals.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Variance of the vacuum quadrature noise.
pub const VACUUM_VARIANCE: f64 = 0.25;

/// A point in phase space, `re + i im`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexAmplitude {
    pub re: f64,
    pub im: f64,
}

impl ComplexAmplitude {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !re.is_finite() {
            return Err(Error::Domain {
                name: "re",
                value: re,
                requirement: "finite",
            });
        }
        if !im.is_finite() {
            return Err(Error::Domain {
                name: "im",
                value: im,
                requirement: "finite",
            });
        }
        Ok(Self { re, im })
    }

    pub fn norm(&self) -> f64 {
        self.re.hypot(self.im)
    }

    /// `atan(im / re)`, the phase convention used by the estimators.
    pub fn phase(&self) -> f64 {
        (self.im / self.re).atan()
    }

    pub fn scale(self, a: f64) -> Self {
        Self {
            re: a * self.re,
            im: a * self.im,
        }
    }
}

impl std::ops::Add for ComplexAmplitude {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl std::fmt::Display for ComplexAmplitude {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.im.is_sign_negative() {
            write!(f, "{}-{}i", self.re, -self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// A normal law `N(mean, sd)` with `sd` the standard deviation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalLaw {
    pub mean: f64,
    pub sd: f64,
}

impl NormalLaw {
    pub fn pdf(&self, x: f64) -> f64 {
        let z = (x - self.mean) / self.sd;
        (-0.5 * z * z).exp() / (self.sd * (2.0 * PI).sqrt())
    }

    pub fn cdf(&self, x: f64) -> f64 {
        0.5 * libm::erfc(-(x - self.mean) / (self.sd * std::f64::consts::SQRT_2))
    }
}

/// Thermal state of dispersion `kappa` displaced to `center`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianShiftState {
    pub center: ComplexAmplitude,
    pub kappa: f64,
}

impl GaussianShiftState {
    pub fn new(center: ComplexAmplitude, kappa: f64) -> Result<Self> {
        check_kappa(kappa)?;
        Ok(Self { center, kappa })
    }

    pub fn coherent(center: ComplexAmplitude) -> Self {
        Self { center, kappa: 0.0 }
    }

    pub fn homodyne_law(&self, phi: f64) -> NormalLaw {
        NormalLaw {
            mean: homodyne_mean(self.center, phi),
            sd: homodyne_sigma(self.kappa),
        }
    }
}

/// Which outlier states contaminate the preparation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OutlierSpec {
    /// One fixed Gaussian shift state.
    Single { z0: ComplexAmplitude, kappa0: f64 },
    /// Shift states whose centres are drawn from independent normals
    /// `Re z ~ N(mu1, sigma1)`, `Im z ~ N(mu2, sigma2)`.
    Distributed {
        mu1: f64,
        sigma1: f64,
        mu2: f64,
        sigma2: f64,
        kappa0: f64,
    },
}

impl OutlierSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            OutlierSpec::Single { z0, kappa0 } => {
                ComplexAmplitude::new(z0.re, z0.im)?;
                check_kappa(kappa0)
            }
            OutlierSpec::Distributed {
                mu1,
                sigma1,
                mu2,
                sigma2,
                kappa0,
            } => {
                ComplexAmplitude::new(mu1, mu2)?;
                for (name, value) in [("sigma1", sigma1), ("sigma2", sigma2)] {
                    if !(value > 0.0 && value.is_finite()) {
                        return Err(Error::Domain {
                            name,
                            value,
                            requirement: "> 0",
                        });
                    }
                }
                check_kappa(kappa0)
            }
        }
    }

    /// Homodyne outcome law of a single outlier preparation.
    ///
    /// For the distributed case the centre is integrated out analytically:
    /// the projection `Re z cos phi + Im z sin phi` is normal, so the
    /// outcome is normal with the variances added.
    pub fn homodyne_law(&self, phi: f64) -> NormalLaw {
        match *self {
            OutlierSpec::Single { z0, kappa0 } => GaussianShiftState {
                center: z0,
                kappa: kappa0,
            }
            .homodyne_law(phi),
            OutlierSpec::Distributed {
                mu1,
                sigma1,
                mu2,
                sigma2,
                kappa0,
            } => {
                let (s, c) = phi.sin_cos();
                let var = sigma1 * sigma1 * c * c
                    + sigma2 * sigma2 * s * s
                    + kappa0 * kappa0
                    + VACUUM_VARIANCE;
                NormalLaw {
                    mean: mu1 * c + mu2 * s,
                    sd: var.sqrt(),
                }
            }
        }
    }
}

/// `(1 - epsilon) |alpha><alpha| + epsilon * outliers`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContaminatedModel {
    pub alpha: ComplexAmplitude,
    pub epsilon: f64,
    pub outliers: OutlierSpec,
}

impl ContaminatedModel {
    pub fn new(alpha: ComplexAmplitude, epsilon: f64, outliers: OutlierSpec) -> Result<Self> {
        let model = Self {
            alpha,
            epsilon,
            outliers,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<()> {
        ComplexAmplitude::new(self.alpha.re, self.alpha.im)?;
        if !(0.0..1.0).contains(&self.epsilon) {
            return Err(Error::Domain {
                name: "epsilon",
                value: self.epsilon,
                requirement: "0 <= epsilon < 1",
            });
        }
        self.outliers.validate()
    }

    pub fn ideal_law(&self, phi: f64) -> NormalLaw {
        GaussianShiftState::coherent(self.alpha).homodyne_law(phi)
    }

    pub fn outlier_law(&self, phi: f64) -> NormalLaw {
        self.outliers.homodyne_law(phi)
    }

    pub fn pdf(&self, phi: f64, x: f64) -> f64 {
        (1.0 - self.epsilon) * self.ideal_law(phi).pdf(x)
            + self.epsilon * self.outlier_law(phi).pdf(x)
    }

    pub fn cdf(&self, phi: f64, x: f64) -> f64 {
        (1.0 - self.epsilon) * self.ideal_law(phi).cdf(x)
            + self.epsilon * self.outlier_law(phi).cdf(x)
    }

    /// Expected homodyne outcome at `phi`.
    pub fn mean(&self, phi: f64) -> f64 {
        (1.0 - self.epsilon) * self.ideal_law(phi).mean + self.epsilon * self.outlier_law(phi).mean
    }
}

fn check_kappa(kappa: f64) -> Result<()> {
    if kappa >= 0.0 && kappa.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            name: "kappa",
            value: kappa,
            requirement: ">= 0",
        })
    }
}

/// Thermal dispersion for inverse temperature `beta`: `2 kappa^2 = 1 / (e^beta - 1)`.
pub fn kappa_from_beta(beta: f64) -> Result<f64> {
    if !(beta > 0.0) {
        return Err(Error::Domain {
            name: "beta",
            value: beta,
            requirement: "> 0",
        });
    }
    Ok((0.5 / beta.exp_m1()).sqrt())
}

/// Inverse of [`kappa_from_beta`].
pub fn beta_from_kappa(kappa: f64) -> Result<f64> {
    if !(kappa > 0.0) {
        return Err(Error::Domain {
            name: "kappa",
            value: kappa,
            requirement: "> 0",
        });
    }
    Ok((0.5 / (kappa * kappa)).ln_1p())
}

/// `Re(z e^{-i phi})`.
pub fn homodyne_mean(z: ComplexAmplitude, phi: f64) -> f64 {
    let (s, c) = phi.sin_cos();
    z.re * c + z.im * s
}

/// Outcome standard deviation of a shift state with dispersion `kappa`.
pub fn homodyne_sigma(kappa: f64) -> f64 {
    (kappa * kappa + VACUUM_VARIANCE).sqrt()
}

pub fn contaminated_pdf(model: &ContaminatedModel, phi: f64, x: f64) -> f64 {
    model.pdf(phi, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn amp(re: f64, im: f64) -> ComplexAmplitude {
        ComplexAmplitude::new(re, im).unwrap()
    }

    fn trapezoid(f: impl Fn(f64) -> f64, lo: f64, hi: f64, steps: usize) -> f64 {
        let h = (hi - lo) / steps as f64;
        let inner: f64 = (1..steps).map(|k| f(lo + k as f64 * h)).sum();
        h * (0.5 * f(lo) + inner + 0.5 * f(hi))
    }

    fn models() -> Vec<ContaminatedModel> {
        vec![
            ContaminatedModel::new(
                amp(10.0, 4.0),
                0.01,
                OutlierSpec::Single {
                    z0: amp(15.0, 15.0),
                    kappa0: 0.1,
                },
            )
            .unwrap(),
            ContaminatedModel::new(
                amp(10.0, -4.0),
                0.3,
                OutlierSpec::Distributed {
                    mu1: 0.1,
                    sigma1: 0.1,
                    mu2: 0.1,
                    sigma2: 0.1,
                    kappa0: 0.1,
                },
            )
            .unwrap(),
            ContaminatedModel::new(
                amp(1.0, 2.0),
                0.5,
                OutlierSpec::Single {
                    z0: amp(-3.0, 20.0),
                    kappa0: 2.0,
                },
            )
            .unwrap(),
        ]
    }

    #[test]
    fn beta_kappa_examples() {
        assert!(kappa_from_beta(50.0).unwrap() < 1e-10);
        assert!((kappa_from_beta(2f64.ln()).unwrap() - 0.5f64.sqrt()).abs() < 1e-14);
        assert!((beta_from_kappa(0.5f64.sqrt()).unwrap() - 2f64.ln()).abs() < 1e-14);
        assert!((beta_from_kappa(0.1).unwrap() - 51f64.ln()).abs() < 1e-12);
        for b in [0.1, 1.0, 10.0] {
            let back = beta_from_kappa(kappa_from_beta(b).unwrap()).unwrap();
            assert!((back - b).abs() < 1e-12, "{b} -> {back}");
        }
    }

    #[test]
    fn beta_kappa_domain_errors() {
        assert!(matches!(kappa_from_beta(0.0), Err(Error::Domain { .. })));
        assert!(matches!(kappa_from_beta(-1.0), Err(Error::Domain { .. })));
        assert!(matches!(beta_from_kappa(0.0), Err(Error::Domain { .. })));
        assert!(matches!(beta_from_kappa(f64::NAN), Err(Error::Domain { .. })));
    }

    #[test]
    fn kappa_strictly_decreasing_in_beta() {
        let betas: Vec<f64> = (1..200).map(|k| k as f64 * 0.25).collect();
        let kappas: Vec<f64> = betas.iter().map(|&b| kappa_from_beta(b).unwrap()).collect();
        assert!(kappas.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn homodyne_mean_examples() {
        assert_eq!(homodyne_mean(amp(10.0, 4.0), 0.0), 10.0);
        assert!((homodyne_mean(amp(10.0, 4.0), FRAC_PI_2) - 4.0).abs() < 1e-14);
        assert!((homodyne_mean(amp(1.0, 1.0), PI / 4.0) - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn homodyne_sigma_examples() {
        assert_eq!(homodyne_sigma(0.0), 0.5);
        assert!((homodyne_sigma(0.1) - 0.26f64.sqrt()).abs() < 1e-15);
        assert!((homodyne_sigma(0.1) - 0.50990).abs() < 1e-5);
        assert!(homodyne_sigma(0.3) < homodyne_sigma(0.31));
    }

    #[test]
    fn rejects_bad_models() {
        let out = OutlierSpec::Single {
            z0: amp(0.0, 0.0),
            kappa0: 0.1,
        };
        assert!(ContaminatedModel::new(amp(1.0, 0.0), 1.0, out).is_err());
        assert!(ContaminatedModel::new(amp(1.0, 0.0), -0.1, out).is_err());
        assert!(ComplexAmplitude::new(f64::INFINITY, 0.0).is_err());
        let bad = OutlierSpec::Distributed {
            mu1: 0.0,
            sigma1: 0.0,
            mu2: 0.0,
            sigma2: 1.0,
            kappa0: 0.0,
        };
        assert!(ContaminatedModel::new(amp(1.0, 0.0), 0.1, bad).is_err());
        let neg_kappa = OutlierSpec::Single {
            z0: amp(0.0, 0.0),
            kappa0: -0.5,
        };
        assert!(ContaminatedModel::new(amp(1.0, 0.0), 0.1, neg_kappa).is_err());
    }

    #[test]
    fn zero_epsilon_is_the_coherent_density() {
        let mut model = models()[0];
        model.epsilon = 0.0;
        let coherent = NormalLaw { mean: 10.0, sd: 0.5 };
        for k in 0..200 {
            let x = 8.0 + k as f64 * 0.02;
            assert_eq!(model.pdf(0.0, x), coherent.pdf(x));
        }
    }

    #[test]
    fn mixture_mean_single_outlier() {
        let model = models()[0];
        assert!((model.mean(0.0) - 10.05).abs() < 1e-12);
        // first moment by quadrature
        let m = trapezoid(|x| x * model.pdf(0.0, x), -50.0, 1100.0, 1_150_000);
        assert!((m - 10.05).abs() < 1e-6, "{m}");
    }

    #[test]
    fn densities_integrate_to_one() {
        for model in models() {
            for phi in [0.0, FRAC_PI_2, 0.3, 2.0, -1.0] {
                let total = trapezoid(|x| model.pdf(phi, x), -50.0, 1100.0, 1_150_000);
                assert!((total - 1.0).abs() < 1e-6, "phi={phi} total={total}");
            }
        }
    }

    #[test]
    fn narrow_distributed_matches_single() {
        let single = ContaminatedModel::new(
            amp(10.0, 4.0),
            0.2,
            OutlierSpec::Single {
                z0: amp(12.0, -3.0),
                kappa0: 0.4,
            },
        )
        .unwrap();
        let mut dist = single;
        dist.outliers = OutlierSpec::Distributed {
            mu1: 12.0,
            sigma1: 1e-8,
            mu2: -3.0,
            sigma2: 1e-8,
            kappa0: 0.4,
        };
        for phi in [0.0, FRAC_PI_2, 1.1] {
            for k in 0..1000 {
                let x = -10.0 + k as f64 * 0.03;
                assert!((single.pdf(phi, x) - dist.pdf(phi, x)).abs() < 1e-5);
            }
        }
    }

    #[test]
    fn cdf_is_consistent_with_pdf() {
        for model in models() {
            let a = model.cdf(0.0, 9.0);
            let b = model.cdf(0.0, 11.0);
            let integral = trapezoid(|x| model.pdf(0.0, x), 9.0, 11.0, 200_000);
            assert!((b - a - integral).abs() < 1e-9);
        }
    }

    #[test]
    fn homodyne_mean_is_linear() {
        let z1 = amp(1.5, -2.0);
        let z2 = amp(-0.3, 7.0);
        for phi in [0.0, 0.7, FRAC_PI_2, 3.0] {
            let lhs = homodyne_mean(z1.scale(2.5) + z2, phi);
            let rhs = 2.5 * homodyne_mean(z1, phi) + homodyne_mean(z2, phi);
            assert!((lhs - rhs).abs() < 1e-12);
        }
    }
}
