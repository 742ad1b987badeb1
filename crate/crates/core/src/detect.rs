//! Script-majority language detection.

use serde::{Deserialize, Serialize};

use crate::language::{classify_scalar, LanguageId, ScriptCategory};

/// Share of letters the dominant script must reach.
pub const DOMINANCE_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectedLanguage {
    /// `None` means Unknown.
    pub language: Option<LanguageId>,
    pub dominant_ratio: f64,
    pub letter_count: usize,
}

impl DetectedLanguage {
    pub fn is(&self, lang: LanguageId) -> bool {
        self.language == Some(lang)
    }
}

const LETTER_SCRIPTS: [ScriptCategory; 5] = [
    ScriptCategory::Latin,
    ScriptCategory::Han,
    ScriptCategory::Arabic,
    ScriptCategory::Cyrillic,
    ScriptCategory::OtherLetter,
];

/// Counts letters per script and returns the owner of the majority script.
///
/// Unknown when there are no letters, when the top script is shared by a
/// tie, when it is below the threshold, or when it belongs to none of the
/// four languages.
pub fn detect_language(text: &str) -> DetectedLanguage {
    let mut counts = [0usize; LETTER_SCRIPTS.len()];
    for ch in text.chars() {
        if let Some(i) = LETTER_SCRIPTS.iter().position(|&s| s == classify_scalar(ch)) {
            counts[i] += 1;
        }
    }
    let letter_count: usize = counts.iter().sum();
    if letter_count == 0 {
        return DetectedLanguage {
            language: None,
            dominant_ratio: 0.0,
            letter_count,
        };
    }
    let top = *counts.iter().max().unwrap_or(&0);
    let dominant_ratio = top as f64 / letter_count as f64;
    let mut leaders = counts.iter().enumerate().filter(|(_, &c)| c == top);
    let leader = leaders.next().map(|(i, _)| LETTER_SCRIPTS[i]);
    let tied = leaders.next().is_some();
    let language = match leader {
        Some(script) if !tied && dominant_ratio >= DOMINANCE_THRESHOLD => LanguageId::owning(script),
        _ => None,
    };
    DetectedLanguage {
        language,
        dominant_ratio,
        letter_count,
    }
}
