//! Translate-then-score support: a pluggable translator and a dictionary
//! based mock.

use std::collections::HashMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::language::{classify_scalar, LanguageId, ScriptCategory};
use crate::mock_lm::{detokenize, lm_tokenize};

const BUNDLED_LEXICON: &str = include_str!("../../data/lexicon.tsv");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Translation {
    pub text: String,
    /// True when the input has at least one word and every word was found
    /// in the dictionary.
    pub covered: bool,
}

pub trait TranslatorContract: Send + Sync {
    fn translate(&self, text: &str, source: LanguageId, target: LanguageId) -> Translation;
}

/// Phrase-table translator over lower-cased [`lm_tokenize`] tokens.
///
/// Input is segmented by greedy longest match against the phrases of every
/// language, whatever `source` says, since mock generations mix languages
/// freely. Unmatched tokens pass through unchanged.
#[derive(Debug, Clone)]
pub struct MockTranslator {
    rows: Vec<[Vec<String>; 4]>,
    index: HashMap<Vec<String>, usize>,
    longest: usize,
}

fn column(lang: LanguageId) -> usize {
    LanguageId::ALL.iter().position(|&l| l == lang).expect("all languages listed")
}

/// Tokens that carry no language evidence and need no translation.
fn is_inert(tok: &str) -> bool {
    tok.chars().all(|c| classify_scalar(c) == ScriptCategory::NonLetter)
}

impl MockTranslator {
    /// Tab-separated rows `en zh ar ru`; lines starting with `#` are comments.
    pub fn parse(tsv: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut problems = Vec::new();
        for (n, line) in tsv.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let cells: Vec<&str> = line.split('\t').collect();
            if cells.len() != 4 || cells.iter().any(|c| c.trim().is_empty()) {
                problems.push(format!("line {}: expected 4 non-empty columns", n + 1));
                continue;
            }
            rows.push(std::array::from_fn(|i| lm_tokenize(cells[i])));
        }
        if !problems.is_empty() {
            return Err(Error::Schema(problems));
        }
        let mut index = HashMap::new();
        let mut longest = 0;
        for (i, row) in rows.iter().enumerate() {
            for phrase in row {
                longest = longest.max(phrase.len());
                index.entry(phrase.clone()).or_insert(i);
            }
        }
        Ok(MockTranslator { rows, index, longest })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Self::parse(&std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?)
    }

    pub fn bundled() -> Self {
        Self::parse(BUNDLED_LEXICON).expect("bundled lexicon is valid")
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Translated tokens plus whether some token was matched and every token
    /// with letters was.
    fn translate_tokens(&self, tokens: &[String], target: LanguageId) -> (Vec<String>, bool) {
        let col = column(target);
        let mut out = Vec::new();
        let mut covered = true;
        let mut matched_any = false;
        let mut i = 0;
        while i < tokens.len() {
            let max = self.longest.min(tokens.len() - i);
            let hit = (1..=max).rev().find_map(|len| self.index.get(&tokens[i..i + len]).map(|&row| (row, len)));
            match hit {
                Some((row, len)) => {
                    out.extend(self.rows[row][col].iter().cloned());
                    matched_any |= !tokens[i..i + len].iter().all(|t| is_inert(t));
                    i += len;
                }
                None => {
                    covered &= is_inert(&tokens[i]);
                    out.push(tokens[i].clone());
                    i += 1;
                }
            }
        }
        (out, covered && matched_any)
    }

    /// Whether `text` has words and every one is a dictionary phrase in some
    /// language.
    pub fn covers(&self, text: &str) -> bool {
        self.translate_tokens(&lm_tokenize(text), LanguageId::En).1
    }
}

impl TranslatorContract for MockTranslator {
    fn translate(&self, text: &str, _source: LanguageId, target: LanguageId) -> Translation {
        let (tokens, covered) = self.translate_tokens(&lm_tokenize(text), target);
        Translation {
            text: detokenize(&tokens),
            covered,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::detect_language;
    use LanguageId::*;

    #[test]
    fn sentence_round_trip() {
        let tr = MockTranslator::bundled();
        let zh = tr.translate("The museum was built in 1906.", En, Zh);
        assert_eq!(zh.text, "这博物馆建于在1906。");
        assert!(zh.covered);
        let ru = tr.translate("博物馆在巴黎。", Zh, Ru);
        assert_eq!(ru.text, "музей в париж.");
        assert!(detect_language(&ru.text).is(Ru));
    }

    #[test]
    fn mixed_input_is_unified() {
        let tr = MockTranslator::bundled();
        let t = tr.translate("答案是 moscow и музей", Zh, Ar);
        assert!(t.covered);
        assert!(detect_language(&t.text).is(Ar));
    }

    #[test]
    fn unknown_words_pass_through() {
        let tr = MockTranslator::bundled();
        let t = tr.translate("the zeppelin", En, Zh);
        assert!(!t.covered);
        assert!(t.text.contains("zeppelin"));
        assert!(tr.covers("paris 1999 !"));
        assert!(!tr.covers("繁"));
        assert!(!tr.covers(""));
        assert!(!tr.covers("。"));
    }

    #[test]
    fn malformed_lexicon() {
        assert!(matches!(MockTranslator::parse("a\tb\tc\n"), Err(Error::Schema(_))));
    }
}
