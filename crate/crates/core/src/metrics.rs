//! Averaged BLEU-1/2/3 and ROUGE-1/2/L with per-language tokenization.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::language::{classify_scalar, is_mark, LanguageId, ScriptCategory};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricTokenization {
    /// One token per Han character; runs of other letters and digits stay whole.
    CharacterLevel,
    /// Letter/digit runs; punctuation dropped.
    UnicodeWordLevel,
}

impl MetricTokenization {
    pub fn for_language(lang: LanguageId) -> Self {
        match lang {
            LanguageId::Zh => MetricTokenization::CharacterLevel,
            _ => MetricTokenization::UnicodeWordLevel,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricComponents {
    pub bleu1: f64,
    pub bleu2: f64,
    pub bleu3: f64,
    pub rouge1: f64,
    pub rouge2: f64,
    pub rouge_l: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricScore {
    pub bleu_avg: f64,
    pub rouge_avg: f64,
    pub components: MetricComponents,
}

impl MetricScore {
    pub fn from_components(bleu: [f64; 3], rouge: [f64; 3]) -> Self {
        MetricScore {
            bleu_avg: mean3(bleu),
            rouge_avg: mean3(rouge),
            components: MetricComponents {
                bleu1: bleu[0],
                bleu2: bleu[1],
                bleu3: bleu[2],
                rouge1: rouge[0],
                rouge2: rouge[1],
                rouge_l: rouge[2],
            },
        }
    }
}

fn mean3(v: [f64; 3]) -> f64 {
    (v[0] + v[1] + v[2]) / 3.0
}

fn is_word_char(ch: char) -> bool {
    ch.is_alphanumeric() || is_mark(ch)
}

pub fn tokenize_for_metric(text: &str, language: LanguageId) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut run = String::new();
    let flush = |run: &mut String, tokens: &mut Vec<String>| {
        if !run.is_empty() {
            tokens.push(std::mem::take(run));
        }
    };
    for ch in text.chars() {
        if classify_scalar(ch) == ScriptCategory::Han {
            flush(&mut run, &mut tokens);
            tokens.push(ch.to_string());
        } else if is_word_char(ch) {
            run.push(ch);
        } else {
            flush(&mut run, &mut tokens);
        }
    }
    flush(&mut run, &mut tokens);
    if language == LanguageId::En {
        for t in &mut tokens {
            *t = t.to_lowercase();
        }
    }
    tokens
}

fn ngram_counts<T: Eq + std::hash::Hash>(tokens: &[T], n: usize) -> HashMap<&[T], usize> {
    let mut counts = HashMap::new();
    if tokens.len() >= n {
        for w in tokens.windows(n) {
            *counts.entry(w).or_insert(0) += 1;
        }
    }
    counts
}

/// Clipped n-gram overlap and the number of candidate / reference n-grams.
fn overlap<T: Eq + std::hash::Hash>(candidate: &[T], reference: &[T], n: usize) -> (usize, usize, usize) {
    let cand = ngram_counts(candidate, n);
    let refs = ngram_counts(reference, n);
    let matched = cand
        .iter()
        .map(|(g, &c)| c.min(refs.get(g).copied().unwrap_or(0)))
        .sum();
    let total = |len: usize| (len + 1).saturating_sub(n);
    (matched, total(candidate.len()), total(reference.len()))
}

/// BLEU-1, BLEU-2 and BLEU-3 over token sequences.
///
/// Modified precision with clipping, a brevity penalty when the candidate is
/// shorter than the reference, and add-one smoothing of zero-match orders
/// two and three.
pub fn bleu_components<T: Eq + std::hash::Hash>(candidate: &[T], reference: &[T]) -> [f64; 3] {
    if candidate.is_empty() {
        return [0.0; 3];
    }
    let mut log_p = [0.0f64; 3];
    for n in 1..=3 {
        let (m, c, _) = overlap(candidate, reference, n);
        let p = if n == 1 {
            m as f64 / c as f64
        } else if m == 0 {
            1.0 / (c as f64 + 1.0)
        } else {
            m as f64 / c as f64
        };
        log_p[n - 1] = p.ln();
    }
    if log_p[0] == f64::NEG_INFINITY {
        return [0.0; 3];
    }
    let (c, r) = (candidate.len() as f64, reference.len() as f64);
    let bp = if c < r { (1.0 - r / c).exp() } else { 1.0 };
    let mut out = [0.0; 3];
    let mut acc = 0.0;
    for n in 0..3 {
        acc += log_p[n];
        out[n] = bp * (acc / (n + 1) as f64).exp();
    }
    out
}

fn f1(matched: usize, cand: usize, reference: usize) -> f64 {
    if matched == 0 {
        return 0.0;
    }
    let p = matched as f64 / cand as f64;
    let r = matched as f64 / reference as f64;
    2.0 * p * r / (p + r)
}

pub fn lcs_len<T: Eq>(a: &[T], b: &[T]) -> usize {
    let mut prev = vec![0usize; b.len() + 1];
    let mut cur = vec![0usize; b.len() + 1];
    for x in a {
        for (j, y) in b.iter().enumerate() {
            cur[j + 1] = if x == y { prev[j] + 1 } else { prev[j + 1].max(cur[j]) };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// ROUGE-1, ROUGE-2 and ROUGE-L F1 over token sequences.
///
/// When the reference has no n-grams of some order (a one-token reference
/// for ROUGE-2) that order scores 1 for an exact match and 0 otherwise.
pub fn rouge_components<T: Eq + std::hash::Hash>(candidate: &[T], reference: &[T]) -> [f64; 3] {
    let rouge_n = |n: usize| {
        let (m, c, r) = overlap(candidate, reference, n);
        if r == 0 {
            f64::from(u8::from(candidate == reference))
        } else {
            f1(m, c, r)
        }
    };
    let lcs = lcs_len(candidate, reference);
    [rouge_n(1), rouge_n(2), f1(lcs, candidate.len(), reference.len())]
}

fn tokenize_pair(candidate: &str, reference: &str, language: LanguageId) -> Result<(Vec<String>, Vec<String>)> {
    let reference = tokenize_for_metric(reference, language);
    if reference.is_empty() {
        return Err(Error::EmptyReference);
    }
    Ok((tokenize_for_metric(candidate, language), reference))
}

/// BLEU-1/2/3 and their mean.
pub fn bleu_avg(candidate: &str, reference: &str, language: LanguageId) -> Result<(f64, [f64; 3])> {
    let (c, r) = tokenize_pair(candidate, reference, language)?;
    let comps = bleu_components(&c, &r);
    Ok((mean3(comps), comps))
}

/// ROUGE-1/2/L and their mean.
pub fn rouge_avg(candidate: &str, reference: &str, language: LanguageId) -> Result<(f64, [f64; 3])> {
    let (c, r) = tokenize_pair(candidate, reference, language)?;
    let comps = rouge_components(&c, &r);
    Ok((mean3(comps), comps))
}

/// Both metric families for one candidate/reference pair.
pub fn score(candidate: &str, reference: &str, language: LanguageId) -> Result<MetricScore> {
    let (c, r) = tokenize_pair(candidate, reference, language)?;
    Ok(MetricScore::from_components(bleu_components(&c, &r), rouge_components(&c, &r)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use LanguageId::*;

    fn toks(s: &str) -> Vec<&str> {
        s.split_whitespace().collect()
    }

    #[test]
    fn tokenization_examples() {
        assert_eq!(tokenize_for_metric("北京很大", Zh), ["北", "京", "很", "大"]);
        assert_eq!(tokenize_for_metric("The Answer", En), ["the", "answer"]);
        assert_eq!(tokenize_for_metric("Это тест.", Ru), ["Это", "тест"]);
        assert_eq!(tokenize_for_metric("答案是 Beijing，1998年。", Zh), ["答", "案", "是", "Beijing", "1998", "年"]);
        assert_eq!(tokenize_for_metric("مَتحف جميل.", Ar), ["مَتحف", "جميل"]);
        assert!(tokenize_for_metric(" ,.! ", En).is_empty());
    }

    #[test]
    fn identical_scores_one() {
        let (b, bc) = bleu_avg("the big museum is in paris", "the big museum is in paris", En).unwrap();
        assert_eq!(bc, [1.0; 3]);
        assert_eq!(b, 1.0);
        let (r, rc) = rouge_avg("北京很大", "北京很大", Zh).unwrap();
        assert_eq!(rc, [1.0; 3]);
        assert_eq!(r, 1.0);
        // Too short for higher orders.
        assert_eq!(score("paris", "paris", En).unwrap().bleu_avg, 1.0);
        assert_eq!(score("paris", "paris", En).unwrap().rouge_avg, 1.0);
    }

    #[test]
    fn disjoint_scores_zero() {
        let s = score("alpha beta gamma", "delta epsilon zeta", En).unwrap();
        assert_eq!([s.components.bleu1, s.components.bleu2, s.components.bleu3], [0.0; 3]);
        assert_eq!(s.bleu_avg, 0.0);
        assert_eq!([s.components.rouge1, s.components.rouge2, s.components.rouge_l], [0.0; 3]);
    }

    #[test]
    fn empty_reference() {
        assert!(matches!(score("a", "...", En), Err(Error::EmptyReference)));
        assert!(matches!(bleu_avg("a", "", Zh), Err(Error::EmptyReference)));
        let s = score("", "paris", En).unwrap();
        assert_eq!(s.bleu_avg, 0.0);
        assert_eq!(s.rouge_avg, 0.0);
    }

    #[test]
    fn abcd_against_abxd() {
        // Hand tally: unigrams 3/4; bigrams {ab} 1/3; trigrams none, smoothed 1/(2+1).
        let got = bleu_components(&toks("a b c d"), &toks("a b x d"));
        let p = [0.75f64, 1.0 / 3.0, 1.0 / 3.0];
        let want = [p[0], (p[0] * p[1]).sqrt(), (p[0] * p[1] * p[2]).cbrt()];
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-12, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn brevity_penalty() {
        let got = bleu_components(&toks("a b"), &toks("a b c d"));
        let bp = (1.0f64 - 2.0).exp();
        assert!((got[0] - bp).abs() < 1e-12);
        assert!((got[1] - bp).abs() < 1e-12);
    }

    #[test]
    fn clipping() {
        let got = bleu_components(&toks("the the the the"), &toks("the cat"));
        assert!(got[0] > 0.0);
        assert!((got[0] - 0.25).abs() < 1e-12);
    }

    #[test]
    fn rouge_l_permutation() {
        let r = rouge_components(&toks("a c b"), &toks("a b c"));
        assert_eq!(lcs_len(&toks("a c b"), &toks("a b c")), 2);
        assert!((r[2] - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(r[0], 1.0);
        assert_eq!(r[1], 0.0);
    }

    #[test]
    fn averages_are_means() {
        let s = score("the old museum is in rome", "the famous museum is in paris", En).unwrap();
        let c = s.components;
        assert!((s.bleu_avg - (c.bleu1 + c.bleu2 + c.bleu3) / 3.0).abs() < 1e-12);
        assert!((s.rouge_avg - (c.rouge1 + c.rouge2 + c.rouge_l) / 3.0).abs() < 1e-12);
    }
}
