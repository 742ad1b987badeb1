//! Dataset loading, prompt composition, the method grid on the mock model,
//! and report aggregation.

pub mod dataset;
pub mod experiment;
pub mod prompt;
pub mod report;
pub mod translate;

pub use dataset::{bundled_dataset, load_dataset, parse_dataset, Aligned, DriftType, Exemplar, MultilingualSample};
pub use experiment::{item_seed, run_experiment, Experiment, ExperimentConfig, Generation};
pub use prompt::{compose_prompt, PromptTemplate, PromptTemplates};
pub use report::{
    aggregate_drift_types, attach_scores, emit_report, evaluate, read_report, EvalReport, EvalRow,
};
pub use translate::{MockTranslator, TranslatorContract, Translation};
