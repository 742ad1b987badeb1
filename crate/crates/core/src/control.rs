//! Logits transforms: soft-constrained decoding, vocabulary restriction and
//! composition of transforms.
//!
//! Every transform is pure. It reads a logits slice and returns a fresh
//! vector, so one partition can serve any number of concurrent decoders.

use std::fmt::Debug;
use std::sync::Arc;

use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vocab::{TokenCategory, VocabPartition};

/// Scalar type accepted by the logits transforms.
pub trait Scalar: Float + Debug + Send + Sync + 'static {}

impl<T: Float + Debug + Send + Sync + 'static> Scalar for T {}

/// Number of tokens already generated in the current response, counted from
/// zero. Prompt tokens are not counted.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DecodeStep(pub usize);

impl DecodeStep {
    pub fn next(self) -> Self {
        DecodeStep(self.0 + 1)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScdMode {
    /// Scale target logits by alpha and distractor logits by beta.
    #[default]
    Multiplicative,
    /// Add a bonus to target logits and subtract a penalty from distractor
    /// logits. Monotone regardless of logit sign.
    Additive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct ScdConfig<T> {
    pub alpha: T,
    pub beta: T,
    pub t_start: usize,
    #[serde(default)]
    pub mode: ScdMode,
    #[serde(default = "zero")]
    pub additive_bonus: T,
    #[serde(default = "zero")]
    pub additive_penalty: T,
}

fn zero<T: Scalar>() -> T {
    T::zero()
}

fn lit<T: Scalar>(v: f64) -> T {
    T::from(v).expect("literal representable in every float type")
}

impl<T: Scalar> Default for ScdConfig<T> {
    /// alpha = 1.1, beta = 0.9, warm-up of 5 steps, multiplicative.
    fn default() -> Self {
        ScdConfig {
            alpha: lit(1.1),
            beta: lit(0.9),
            t_start: 5,
            mode: ScdMode::Multiplicative,
            additive_bonus: T::zero(),
            additive_penalty: T::zero(),
        }
    }
}

impl<T: Scalar> ScdConfig<T> {
    /// Profile tuned for the bundled bigram model, whose log-probabilities
    /// are all negative. Scaling negative logits by alpha > 1 would push
    /// target tokens down, so this profile shifts instead of scaling.
    pub fn mock_demo() -> Self {
        ScdConfig {
            mode: ScdMode::Additive,
            additive_bonus: lit(4.0),
            additive_penalty: lit(4.0),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.alpha.is_nan() || self.alpha <= T::one() {
            return Err(Error::InvalidConfig(format!("alpha must exceed 1, got {:?}", self.alpha)));
        }
        if !(self.beta > T::zero() && self.beta < T::one()) {
            return Err(Error::InvalidConfig(format!("beta must lie in (0, 1), got {:?}", self.beta)));
        }
        let finite_non_negative = |v: T| v.is_finite() && v >= T::zero();
        if !finite_non_negative(self.additive_bonus) || !finite_non_negative(self.additive_penalty) {
            return Err(Error::InvalidConfig(
                "additive bonus and penalty must be finite and non-negative".into(),
            ));
        }
        Ok(())
    }

    pub fn is_active(&self, step: DecodeStep) -> bool {
        step.0 >= self.t_start
    }
}

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::Dimension { expected, actual })
    }
}

/// Soft-constrained adjustment of one step's logits. Identity before
/// `cfg.t_start`; neutral entries are never touched.
pub fn apply_scd<T: Scalar>(
    logits: &[T],
    partition: &VocabPartition,
    step: DecodeStep,
    cfg: &ScdConfig<T>,
) -> Result<Vec<T>> {
    check_len(partition.size(), logits.len())?;
    if !cfg.is_active(step) {
        return Ok(logits.to_vec());
    }
    let cats = partition.categories();
    let out = match cfg.mode {
        ScdMode::Multiplicative => logits
            .iter()
            .zip(cats)
            .map(|(&z, cat)| match cat {
                TokenCategory::Target => cfg.alpha * z,
                TokenCategory::Neutral => z,
                TokenCategory::Distractor => cfg.beta * z,
            })
            .collect(),
        ScdMode::Additive => logits
            .iter()
            .zip(cats)
            .map(|(&z, cat)| match cat {
                TokenCategory::Target => z + cfg.additive_bonus,
                TokenCategory::Neutral => z,
                TokenCategory::Distractor => z - cfg.additive_penalty,
            })
            .collect(),
    };
    Ok(out)
}

/// Hard restriction: distractor logits become negative infinity, target and
/// neutral logits pass through unchanged.
pub fn apply_vrd<T: Scalar>(logits: &[T], partition: &VocabPartition) -> Result<Vec<T>> {
    check_len(partition.size(), logits.len())?;
    let counts = partition.counts();
    if counts.target + counts.neutral == 0 {
        return Err(Error::ExhaustedVocabulary);
    }
    Ok(logits
        .iter()
        .zip(partition.categories())
        .map(|(&z, cat)| match cat {
            TokenCategory::Distractor => T::neg_infinity(),
            _ => z,
        })
        .collect())
}

/// A per-step logits transform usable inside any decoding loop.
pub trait LogitsTransform<T: Scalar>: Send + Sync {
    fn apply(&self, logits: &[T], step: DecodeStep) -> Result<Vec<T>>;
}

impl<T: Scalar, F> LogitsTransform<T> for F
where
    F: Fn(&[T], DecodeStep) -> Result<Vec<T>> + Send + Sync,
{
    fn apply(&self, logits: &[T], step: DecodeStep) -> Result<Vec<T>> {
        self(logits, step)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Identity;

impl<T: Scalar> LogitsTransform<T> for Identity {
    fn apply(&self, logits: &[T], _step: DecodeStep) -> Result<Vec<T>> {
        Ok(logits.to_vec())
    }
}

#[derive(Debug, Clone)]
pub struct Scd<T> {
    partition: Arc<VocabPartition>,
    config: ScdConfig<T>,
}

impl<T: Scalar> Scd<T> {
    pub fn new(partition: Arc<VocabPartition>, config: ScdConfig<T>) -> Result<Self> {
        config.validate()?;
        Ok(Scd { partition, config })
    }

    pub fn config(&self) -> &ScdConfig<T> {
        &self.config
    }
}

impl<T: Scalar> LogitsTransform<T> for Scd<T> {
    fn apply(&self, logits: &[T], step: DecodeStep) -> Result<Vec<T>> {
        apply_scd(logits, &self.partition, step, &self.config)
    }
}

#[derive(Debug, Clone)]
pub struct Vrd {
    partition: Arc<VocabPartition>,
}

impl Vrd {
    pub fn new(partition: Arc<VocabPartition>) -> Self {
        Vrd { partition }
    }
}

impl<T: Scalar> LogitsTransform<T> for Vrd {
    fn apply(&self, logits: &[T], _step: DecodeStep) -> Result<Vec<T>> {
        apply_vrd(logits, &self.partition)
    }
}

/// Left-to-right composition. An empty chain is the identity.
pub struct Chain<T> {
    transforms: Vec<Box<dyn LogitsTransform<T>>>,
}

impl<T: Scalar> Chain<T> {
    pub fn new(transforms: Vec<Box<dyn LogitsTransform<T>>>) -> Self {
        Chain { transforms }
    }

    pub fn empty() -> Self {
        Chain { transforms: Vec::new() }
    }

    pub fn then(mut self, t: impl LogitsTransform<T> + 'static) -> Self {
        self.transforms.push(Box::new(t));
        self
    }

    pub fn len(&self) -> usize {
        self.transforms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transforms.is_empty()
    }
}

impl<T: Scalar> LogitsTransform<T> for Chain<T> {
    fn apply(&self, logits: &[T], step: DecodeStep) -> Result<Vec<T>> {
        let mut current = logits.to_vec();
        for t in &self.transforms {
            current = t.apply(&current, step)?;
        }
        Ok(current)
    }
}

/// Numerically stable softmax. Negative infinity maps to exactly zero.
pub fn softmax<T: Scalar>(logits: &[T]) -> Vec<T> {
    let max = logits.iter().copied().fold(T::neg_infinity(), T::max);
    if max == T::neg_infinity() {
        return vec![T::zero(); logits.len()];
    }
    let exps: Vec<T> = logits.iter().map(|&z| (z - max).exp()).collect();
    let sum = exps.iter().fold(T::zero(), |a, &b| a + b);
    exps.into_iter().map(|e| e / sum).collect()
}
