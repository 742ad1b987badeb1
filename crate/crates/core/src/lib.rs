//! Decoding-time target-language control.
//!
//! The crate partitions a subword vocabulary into target, neutral and
//! distractor tokens by Unicode script, then biases or masks logits during
//! decoding so generation stays in the requested language. Around that core
//! it provides language-consistency and BLEU/ROUGE scoring, a seeded bigram
//! model with a tunable pull toward English, and an experiment harness that
//! runs the whole grid and writes CSV reports.
//!
//! Logits transforms are generic over any [`num_traits::Float`]; the aliases
//! below fix the common choices.

pub mod byte_level;
pub mod consistency;
pub mod control;
pub mod detect;
pub mod error;
pub mod harness;
pub mod language;
pub mod metrics;
pub mod mock_lm;
pub mod record;
pub mod vocab;

pub use consistency::{fallback_matrix, language_consistency, length_bin_report, BinStats, LengthBin};
pub use control::{
    apply_scd, apply_vrd, softmax, Chain, DecodeStep, Identity, LogitsTransform, Scalar, Scd, ScdConfig,
    ScdMode, Vrd,
};
pub use detect::{detect_language, DetectedLanguage};
pub use error::{Error, Result};
pub use language::{classify_scalar, LanguageId, ScriptCategory};
pub use metrics::{bleu_avg, rouge_avg, tokenize_for_metric, MetricScore};
pub use mock_lm::{decode, train_bigram, AttractorBias, BigramModel, DecodeParams, MultilingualLm, Strategy};
pub use record::{GenerationRecord, Method};
pub use vocab::{classify_token, partition_vocabulary, TokenCategory, VocabEntry, VocabPartition};

/// Raw logits for one step in double precision.
pub type Logits = Vec<f64>;
/// Raw logits for one step in single precision.
pub type Logits32 = Vec<f32>;

pub type ScdConfigF64 = ScdConfig<f64>;
pub type ScdConfigF32 = ScdConfig<f32>;
pub type ScdF64 = Scd<f64>;
pub type ScdF32 = Scd<f32>;
pub type ChainF64 = Chain<f64>;
pub type ChainF32 = Chain<f32>;
