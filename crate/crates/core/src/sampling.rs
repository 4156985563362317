//! Seeded generation of homodyne datasets.
//!
//! Every random quantity is drawn from a [`SimRng`] built by [`rng_for`].
//! Replication `r` of an experiment with base seed `s` uses seed `s + r`;
//! dataset generation reads stream 0 of that seed and outlier replacement
//! reads stream 1, so the two never share random numbers.

use std::f64::consts::FRAC_PI_2;
use std::io::{Read, Write};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian_model::{ContaminatedModel, NormalLaw};

pub type SimRng = ChaCha8Rng;

pub const DATASET_STREAM: u64 = 0;
pub const REPLACEMENT_STREAM: u64 = 1;

/// Deterministic generator for `seed` on the given stream.
pub fn rng_for(seed: u64, stream: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Ideal,
    Outlier,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementRecord {
    pub phi: f64,
    pub x: f64,
    /// Which mixture branch produced `x`. Estimators never look at it.
    pub source: Option<Source>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub records: Vec<MeasurementRecord>,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum PhiRule {
    /// Fair coin per shot between 0 and pi/2.
    #[default]
    BernoulliHalf,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub n: usize,
    pub model: ContaminatedModel,
    pub phi_rule: PhiRule,
}

impl ScenarioConfig {
    pub fn new(n: usize, model: ContaminatedModel) -> Result<Self> {
        let config = Self {
            n,
            model,
            phi_rule: PhiRule::BernoulliHalf,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidConfig("sample size n must be at least 1".into()));
        }
        self.model.validate()
    }
}

fn sample_normal<R: Rng + ?Sized>(law: NormalLaw, rng: &mut R) -> f64 {
    // sd > 0 for every law the model can produce
    Normal::new(law.mean, law.sd)
        .expect("finite mean and positive sd")
        .sample(rng)
}

pub fn draw_measurement<R: Rng + ?Sized>(
    model: &ContaminatedModel,
    phi: f64,
    rng: &mut R,
) -> MeasurementRecord {
    let outlier = rng.random::<f64>() < model.epsilon;
    let (law, source) = if outlier {
        (model.outlier_law(phi), Source::Outlier)
    } else {
        (model.ideal_law(phi), Source::Ideal)
    };
    MeasurementRecord {
        phi,
        x: sample_normal(law, rng),
        source: Some(source),
    }
}

pub fn generate_dataset(config: &ScenarioConfig, seed: u64) -> Result<Dataset> {
    config.validate()?;
    let mut rng = rng_for(seed, DATASET_STREAM);
    let records = (0..config.n)
        .map(|_| {
            let phi = match config.phi_rule {
                PhiRule::BernoulliHalf => {
                    if rng.random::<bool>() {
                        FRAC_PI_2
                    } else {
                        0.0
                    }
                }
            };
            draw_measurement(&config.model, phi, &mut rng)
        })
        .collect();
    Ok(Dataset { records, seed })
}

/// A random order in which records get overwritten, with the artificial
/// values drawn up front. Applying the plan with increasing `m` yields
/// nested replacement sets, which is what a breakdown sweep needs.
#[derive(Debug, Clone)]
pub struct ReplacementPlan {
    order: Vec<usize>,
    values: Vec<f64>,
}

impl ReplacementPlan {
    pub fn draw<R: Rng + ?Sized>(
        n: usize,
        max_m: usize,
        mean: f64,
        sd: f64,
        rng: &mut R,
    ) -> Result<Self> {
        if max_m > n {
            return Err(Error::InvalidArgument(format!(
                "cannot replace {max_m} of {n} records"
            )));
        }
        let law = Normal::new(mean, sd).map_err(|e| {
            Error::InvalidArgument(format!("replacement law N({mean}, {sd}): {e}"))
        })?;
        let mut indices: Vec<usize> = (0..n).collect();
        let (chosen, _) = indices.partial_shuffle(rng, max_m);
        let order = chosen.to_vec();
        let values = (0..max_m).map(|_| law.sample(rng)).collect();
        Ok(Self { order, values })
    }

    pub fn max_m(&self) -> usize {
        self.order.len()
    }

    pub fn apply(&self, dataset: &Dataset, m: usize) -> Result<Dataset> {
        if m > self.order.len() {
            return Err(Error::InvalidArgument(format!(
                "plan holds {} replacements, {m} requested",
                self.order.len()
            )));
        }
        let mut out = dataset.clone();
        for (&i, &x) in self.order[..m].iter().zip(&self.values) {
            let record = out
                .records
                .get_mut(i)
                .ok_or_else(|| Error::InvalidArgument("plan does not fit dataset".into()))?;
            record.x = x;
            record.source = Some(Source::Outlier);
        }
        Ok(out)
    }
}

/// Overwrite the outcomes of `m` uniformly chosen records with draws from
/// `N(replacement_mean, replacement_sd)`. Angles are kept.
pub fn replace_with_outliers<R: Rng + ?Sized>(
    dataset: &Dataset,
    m: usize,
    replacement_mean: f64,
    replacement_sd: f64,
    rng: &mut R,
) -> Result<Dataset> {
    let plan = ReplacementPlan::draw(
        dataset.records.len(),
        m,
        replacement_mean,
        replacement_sd,
        rng,
    )?;
    plan.apply(dataset, m)
}

const ANGLE_TOL: f64 = 1e-12;

pub fn split_by_phase(dataset: &Dataset) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut at_zero = Vec::with_capacity(dataset.records.len() / 2 + 1);
    let mut at_half_pi = Vec::with_capacity(dataset.records.len() / 2 + 1);
    for r in &dataset.records {
        if r.phi.abs() <= ANGLE_TOL {
            at_zero.push(r.x);
        } else if (r.phi - FRAC_PI_2).abs() <= ANGLE_TOL {
            at_half_pi.push(r.x);
        } else {
            return Err(Error::UnsupportedAngle(r.phi));
        }
    }
    Ok((at_zero, at_half_pi))
}

impl Dataset {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn outlier_count(&self) -> usize {
        self.records
            .iter()
            .filter(|r| r.source == Some(Source::Outlier))
            .count()
    }

    /// CSV with header `phi,x,source`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        for r in &self.records {
            w.serialize(r)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads `phi,x[,source]`. The seed is not part of the file.
    pub fn read_csv<R: Read>(reader: R, seed: u64) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers()?.clone();
        for required in ["phi", "x"] {
            if !headers.iter().any(|h| h == required) {
                return Err(Error::InvalidArgument(format!(
                    "dataset CSV is missing the `{required}` column"
                )));
            }
        }
        let records = rdr
            .deserialize()
            .collect::<std::result::Result<Vec<MeasurementRecord>, _>>()?;
        Ok(Self { records, seed })
    }
}
