//! Experiment configuration and the generation grid.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::control::{Identity, LogitsTransform, Scd, ScdConfig, Vrd};
use crate::error::{Error, Result};
use crate::harness::dataset::{bundled_dataset, fill_exemplars, load_dataset, MultilingualSample};
use crate::harness::prompt::{compose_prompt, PromptTemplates};
use crate::harness::translate::{MockTranslator, TranslatorContract};
use crate::language::LanguageId;
use crate::metrics::score;
use crate::mock_lm::{decode, AttractorBias, DecodeParams, MultilingualLm};
use crate::record::{GenerationRecord, Method};
use crate::vocab::VocabPartition;

fn all_languages() -> Vec<LanguageId> {
    LanguageId::ALL.to_vec()
}

fn all_methods() -> Vec<Method> {
    Method::ALL.to_vec()
}

fn default_icl_k() -> usize {
    4
}

fn default_runs() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Dataset JSONL; the bundled dataset when absent.
    #[serde(default)]
    pub dataset: Option<PathBuf>,
    #[serde(default = "all_languages")]
    pub targets: Vec<LanguageId>,
    #[serde(default = "all_languages")]
    pub contexts: Vec<LanguageId>,
    #[serde(default = "all_methods")]
    pub methods: Vec<Method>,
    #[serde(default = "default_icl_k")]
    pub icl_k: usize,
    #[serde(default = "ScdConfig::mock_demo")]
    pub scd: ScdConfig<f64>,
    #[serde(default)]
    pub decode: DecodeParams,
    #[serde(default)]
    pub lambda: AttractorBias,
    /// Generations per (target, context, method) cell, cycling through the
    /// samples; one per sample when absent.
    #[serde(default)]
    pub n: Option<usize>,
    /// Repetitions with seeds `seed`, `seed + 1`, ...
    #[serde(default = "default_runs")]
    pub runs: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            dataset: None,
            targets: all_languages(),
            contexts: all_languages(),
            methods: all_methods(),
            icl_k: default_icl_k(),
            scd: ScdConfig::mock_demo(),
            decode: DecodeParams::default(),
            lambda: AttractorBias::default(),
            n: None,
            runs: default_runs(),
        }
    }
}

fn has_duplicates<T: PartialEq>(items: &[T]) -> bool {
    items.iter().enumerate().any(|(i, x)| items[..i].contains(x))
}

impl ExperimentConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        for (name, empty, dup) in [
            ("targets", self.targets.is_empty(), has_duplicates(&self.targets)),
            ("contexts", self.contexts.is_empty(), has_duplicates(&self.contexts)),
            ("methods", self.methods.is_empty(), has_duplicates(&self.methods)),
        ] {
            if empty {
                problems.push(format!("`{name}` is empty"));
            }
            if dup {
                problems.push(format!("`{name}` repeats an entry"));
            }
        }
        if self.runs == 0 {
            problems.push("`runs` must be positive".to_owned());
        }
        if self.n == Some(0) {
            problems.push("`n` must be positive".to_owned());
        }
        for r in [self.scd.validate(), self.decode.validate()] {
            if let Err(e) = r {
                problems.push(e.to_string());
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidConfig(problems.join("; ")))
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for one generation. Methods share it, so every method sees the same
/// random stream for a given sample and language pair.
pub fn item_seed(run_seed: u64, item: usize, target: LanguageId, context: LanguageId) -> u64 {
    let lang = |l: LanguageId| LanguageId::ALL.iter().position(|&x| x == l).unwrap_or(0) as u64;
    [item as u64, lang(target), lang(context)]
        .into_iter()
        .fold(splitmix64(run_seed), |h, v| splitmix64(h ^ v))
}

/// One generation plus whether the translator covered it (Translate only).
#[derive(Debug, Clone, PartialEq)]
pub struct Generation {
    pub record: GenerationRecord,
    pub translation_covered: Option<bool>,
}

/// Everything a run needs, loaded once.
pub struct Experiment {
    config: ExperimentConfig,
    samples: Vec<MultilingualSample>,
    lm: MultilingualLm,
    templates: PromptTemplates,
    translator: Box<dyn TranslatorContract>,
    partitions: Vec<(LanguageId, Arc<VocabPartition>)>,
}

impl Experiment {
    /// Loads the configured dataset and trains the bundled mock model.
    pub fn new(config: ExperimentConfig) -> Result<Self> {
        let samples = match &config.dataset {
            Some(p) => load_dataset(p)?,
            None => bundled_dataset(),
        };
        Self::with_parts(
            config,
            samples,
            MultilingualLm::bundled(),
            PromptTemplates::bundled(),
            Box::new(MockTranslator::bundled()),
        )
    }

    pub fn with_parts(
        config: ExperimentConfig,
        mut samples: Vec<MultilingualSample>,
        lm: MultilingualLm,
        templates: PromptTemplates,
        translator: Box<dyn TranslatorContract>,
    ) -> Result<Self> {
        config.validate()?;
        if samples.is_empty() {
            return Err(Error::EmptyInput("dataset"));
        }
        for &t in &config.targets {
            fill_exemplars(&mut samples, t, config.icl_k)?;
        }
        let partitions = config
            .targets
            .iter()
            .map(|&t| (t, Arc::new(lm.vocab().partition(t))))
            .collect();
        Ok(Experiment {
            config,
            samples,
            lm,
            templates,
            translator,
            partitions,
        })
    }

    pub fn config(&self) -> &ExperimentConfig {
        &self.config
    }

    pub fn samples(&self) -> &[MultilingualSample] {
        &self.samples
    }

    pub fn lm(&self) -> &MultilingualLm {
        &self.lm
    }

    fn partition(&self, target: LanguageId) -> Arc<VocabPartition> {
        let (_, p) = self.partitions.iter().find(|(t, _)| *t == target).expect("partition per target");
        Arc::clone(p)
    }

    fn transform(&self, method: Method, target: LanguageId) -> Result<Box<dyn LogitsTransform<f64>>> {
        Ok(match method {
            Method::None | Method::Pli | Method::Translate => Box::new(Identity),
            Method::Scd => Box::new(Scd::new(self.partition(target), self.config.scd)?),
            Method::Vrd => Box::new(Vrd::new(self.partition(target))),
        })
    }

    /// One generation for item `item` of the cell.
    pub fn generate(
        &self,
        item: usize,
        target: LanguageId,
        context: LanguageId,
        method: Method,
        seed: u64,
    ) -> Result<Generation> {
        let sample = &self.samples[item % self.samples.len()];
        let prompt = compose_prompt(&self.templates, sample, target, context, self.config.icl_k, method)?;
        let ids = self.lm.vocab().encode(&prompt);
        let params = DecodeParams { seed, ..self.config.decode };
        let model = self.lm.with_bias(self.config.lambda);
        let out = decode(&model, &ids, self.transform(method, target)?.as_ref(), &params)?;
        let mut text = self.lm.vocab().decode(&out.tokens);
        let mut covered = None;
        if method == Method::Translate {
            let source = crate::detect::detect_language(&text).language.unwrap_or(target);
            let t = self.translator.translate(&text, source, target);
            text = t.text;
            covered = Some(t.covered);
        }
        let mut record = GenerationRecord::new(&sample.id, target, context, method, text, out.token_count);
        record.scores = Some(score(&record.text, sample.answer.get(target), target)?);
        Ok(Generation {
            record,
            translation_covered: covered,
        })
    }

    /// The full grid: runs, then items, targets, contexts and methods in
    /// configuration order.
    pub fn run_detailed(&self) -> Result<Vec<Generation>> {
        let c = &self.config;
        let n = c.n.unwrap_or(self.samples.len());
        let mut out = Vec::with_capacity(c.runs * n * c.targets.len() * c.contexts.len() * c.methods.len());
        for run in 0..c.runs {
            let run_seed = c.decode.seed.wrapping_add(run as u64);
            for item in 0..n {
                for &target in &c.targets {
                    for &context in &c.contexts {
                        let seed = item_seed(run_seed, item, target, context);
                        for &method in &c.methods {
                            out.push(self.generate(item, target, context, method, seed)?);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn run(&self) -> Result<Vec<GenerationRecord>> {
        Ok(self.run_detailed()?.into_iter().map(|g| g.record).collect())
    }
}

/// Loads, runs and returns the records for `config`.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<GenerationRecord>> {
    Experiment::new(config.clone())?.run()
}
