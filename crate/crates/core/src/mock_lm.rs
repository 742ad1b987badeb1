//! Seeded bigram language model over four aligned corpora, with an
//! adjustable pull toward English, and a decoding loop that accepts any
//! [`LogitsTransform`].

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use rand_chacha::rand_core::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::control::{softmax, DecodeStep, LogitsTransform};
use crate::error::{Error, Result};
use crate::language::{classify_scalar, is_mark, LanguageId, ScriptCategory};
use crate::vocab::{partition_vocabulary, VocabEntry, VocabPartition};

pub const BOS: &str = "<s>";
pub const EOS: &str = "</s>";
pub const BOS_ID: usize = 0;
pub const EOS_ID: usize = 1;

const BUNDLED: [(LanguageId, &str); 4] = [
    (LanguageId::En, include_str!("../data/corpus/en.txt")),
    (LanguageId::Zh, include_str!("../data/corpus/zh.txt")),
    (LanguageId::Ar, include_str!("../data/corpus/ar.txt")),
    (LanguageId::Ru, include_str!("../data/corpus/ru.txt")),
];

fn is_word_char(ch: char) -> bool {
    (ch.is_alphanumeric() && classify_scalar(ch) != ScriptCategory::Han) || is_mark(ch)
}

/// Lower-cased tokens: Han characters one by one, letter/digit runs whole,
/// every other non-space character on its own.
pub fn lm_tokenize(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut run = String::new();
    for ch in text.chars().flat_map(char::to_lowercase) {
        if is_word_char(ch) {
            run.push(ch);
            continue;
        }
        if !run.is_empty() {
            out.push(std::mem::take(&mut run));
        }
        if !ch.is_whitespace() {
            out.push(ch.to_string());
        }
    }
    if !run.is_empty() {
        out.push(run);
    }
    out
}

fn is_han(token: &str) -> bool {
    token.chars().next().is_some_and(|c| classify_scalar(c) == ScriptCategory::Han)
}

fn is_punct(token: &str) -> bool {
    token.chars().all(|c| !is_word_char(c) && classify_scalar(c) != ScriptCategory::Han)
}

/// Token inventory of the mock model. Ids 0 and 1 are `<s>` and `</s>`.
#[derive(Debug, Clone)]
pub struct MockVocab {
    tokens: Vec<String>,
    index: HashMap<String, usize>,
}

impl MockVocab {
    fn new() -> Self {
        let mut v = MockVocab {
            tokens: Vec::new(),
            index: HashMap::new(),
        };
        v.intern(BOS);
        v.intern(EOS);
        v
    }

    fn intern(&mut self, tok: &str) -> usize {
        if let Some(&id) = self.index.get(tok) {
            return id;
        }
        let id = self.tokens.len();
        self.tokens.push(tok.to_owned());
        self.index.insert(tok.to_owned(), id);
        id
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn id(&self, token: &str) -> Option<usize> {
        self.index.get(token).copied()
    }

    pub fn token(&self, id: usize) -> Option<&str> {
        self.tokens.get(id).map(String::as_str)
    }

    pub fn entries(&self) -> Vec<VocabEntry> {
        self.tokens
            .iter()
            .enumerate()
            .map(|(id, t)| {
                if id == BOS_ID || id == EOS_ID {
                    VocabEntry::special(id, t.clone())
                } else {
                    VocabEntry::text(id, t.clone())
                }
            })
            .collect()
    }

    pub fn partition(&self, target: LanguageId) -> VocabPartition {
        partition_vocabulary(&self.entries(), target).expect("mock vocabulary ids are dense")
    }

    /// Ids of the in-vocabulary tokens of `text`; unknown tokens are skipped.
    pub fn encode(&self, text: &str) -> Vec<usize> {
        lm_tokenize(text).iter().filter_map(|t| self.id(t)).collect()
    }

    /// Surface text of `ids`, joined as by [`detokenize`]. Special tokens are
    /// dropped.
    pub fn decode(&self, ids: &[usize]) -> String {
        let toks: Vec<&str> = ids
            .iter()
            .filter(|&&id| id != BOS_ID && id != EOS_ID)
            .filter_map(|&id| self.token(id))
            .collect();
        detokenize(&toks)
    }
}

/// Joins tokens with spaces between words, none around Han characters or
/// before punctuation.
pub fn detokenize<S: AsRef<str>>(tokens: &[S]) -> String {
    let mut out = String::new();
    let mut prev_han = true;
    for tok in tokens {
        let tok = tok.as_ref();
        let han = is_han(tok);
        if !out.is_empty() && !han && !prev_han && !is_punct(tok) {
            out.push(' ');
        }
        out.push_str(tok);
        prev_han = han;
    }
    out
}

#[derive(Debug, Clone, Default)]
struct Row {
    total: u64,
    next: BTreeMap<usize, u64>,
}

/// Add-k smoothed bigram model. Rows never observed as a predecessor fall
/// back to the add-k smoothed successor unigram distribution.
#[derive(Debug, Clone)]
pub struct BigramModel {
    vocab_size: usize,
    rows: Vec<Row>,
    unigram: Vec<u64>,
    unigram_total: u64,
    smoothing_k: f64,
}

/// Counts bigrams over id sequences and smooths them with `k`.
pub fn train_bigram(corpus: &[Vec<usize>], vocab_size: usize, smoothing_k: f64) -> Result<BigramModel> {
    if corpus.iter().all(|s| s.len() < 2) {
        return Err(Error::EmptyInput("corpus"));
    }
    if !(smoothing_k > 0.0 && smoothing_k.is_finite()) {
        return Err(Error::InvalidConfig(format!("smoothing_k must be positive, got {smoothing_k}")));
    }
    let mut rows = vec![Row::default(); vocab_size];
    let mut unigram = vec![0u64; vocab_size];
    for seq in corpus {
        if let Some(&bad) = seq.iter().find(|&&id| id >= vocab_size) {
            return Err(Error::UnknownToken(bad));
        }
        for w in seq.windows(2) {
            let row = &mut rows[w[0]];
            row.total += 1;
            *row.next.entry(w[1]).or_insert(0) += 1;
            unigram[w[1]] += 1;
        }
    }
    let unigram_total = unigram.iter().sum();
    Ok(BigramModel {
        vocab_size,
        rows,
        unigram,
        unigram_total,
        smoothing_k,
    })
}

impl BigramModel {
    pub fn vocab_size(&self) -> usize {
        self.vocab_size
    }

    pub fn smoothing_k(&self) -> f64 {
        self.smoothing_k
    }

    pub fn count(&self, prev: usize, next: usize) -> u64 {
        self.rows
            .get(prev)
            .and_then(|r| r.next.get(&next))
            .copied()
            .unwrap_or(0)
    }

    /// P(next | prev) for every next id.
    pub fn distribution(&self, prev: usize) -> Result<Vec<f64>> {
        let row = self.rows.get(prev).ok_or(Error::UnknownToken(prev))?;
        let k = self.smoothing_k;
        let v = self.vocab_size as f64;
        if row.total == 0 {
            let denom = self.unigram_total as f64 + k * v;
            return Ok(self.unigram.iter().map(|&c| (c as f64 + k) / denom).collect());
        }
        let denom = row.total as f64 + k * v;
        let mut dist = vec![k / denom; self.vocab_size];
        for (&id, &c) in &row.next {
            dist[id] = (c as f64 + k) / denom;
        }
        Ok(dist)
    }
}

/// Anything that yields next-token logits from the previous token.
pub trait NextTokenModel {
    fn vocab_size(&self) -> usize;
    fn next_logits(&self, prev: usize) -> Result<Vec<f64>>;
}

impl NextTokenModel for BigramModel {
    fn vocab_size(&self) -> usize {
        self.vocab_size
    }

    fn next_logits(&self, prev: usize) -> Result<Vec<f64>> {
        Ok(self.distribution(prev)?.into_iter().map(f64::ln).collect())
    }
}

/// Weight of the English-conditional distribution mixed into every step.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AttractorBias(f64);

impl AttractorBias {
    pub fn new(lambda: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&lambda) {
            Ok(AttractorBias(lambda))
        } else {
            Err(Error::InvalidConfig(format!("lambda must lie in [0, 1], got {lambda}")))
        }
    }

    pub fn lambda(self) -> f64 {
        self.0
    }
}

/// The full multilingual bigram model plus its English-only counterpart.
#[derive(Debug, Clone)]
pub struct MultilingualLm {
    vocab: MockVocab,
    full: BigramModel,
    english: BigramModel,
}

pub const DEFAULT_SMOOTHING: f64 = 0.01;

impl MultilingualLm {
    /// Trains on the four bundled corpora.
    pub fn bundled() -> Self {
        Self::from_corpora(&BUNDLED, DEFAULT_SMOOTHING).expect("bundled corpora are valid")
    }

    /// Trains on one text per language, one document per line. The
    /// vocabulary is assigned in first-seen order across the given corpora.
    pub fn from_corpora<S: AsRef<str>>(corpora: &[(LanguageId, S)], smoothing_k: f64) -> Result<Self> {
        let mut vocab = MockVocab::new();
        let mut all = Vec::new();
        let mut english = Vec::new();
        for (lang, text) in corpora {
            for line in text.as_ref().lines().filter(|l| !l.trim().is_empty()) {
                let mut seq = vec![BOS_ID];
                seq.extend(lm_tokenize(line).iter().map(|t| vocab.intern(t)));
                seq.push(EOS_ID);
                if *lang == LanguageId::En {
                    english.push(seq.clone());
                }
                all.push(seq);
            }
        }
        if english.is_empty() {
            return Err(Error::EmptyInput("English corpus"));
        }
        let v = vocab.len();
        Ok(MultilingualLm {
            full: train_bigram(&all, v, smoothing_k)?,
            english: train_bigram(&english, v, smoothing_k)?,
            vocab,
        })
    }

    /// Reads `<dir>/{en,zh,ar,ru}.txt`.
    pub fn from_dir(dir: impl AsRef<Path>, smoothing_k: f64) -> Result<Self> {
        let dir = dir.as_ref();
        let corpora = LanguageId::ALL
            .into_iter()
            .map(|l| {
                let path = dir.join(format!("{}.txt", l.key()));
                std::fs::read_to_string(&path)
                    .map(|t| (l, t))
                    .map_err(|e| Error::io(path, e))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_corpora(&corpora, smoothing_k)
    }

    pub fn vocab(&self) -> &MockVocab {
        &self.vocab
    }

    pub fn full(&self) -> &BigramModel {
        &self.full
    }

    pub fn english(&self) -> &BigramModel {
        &self.english
    }

    /// `log((1 - lambda) P(.|prev) + lambda P_en(.|prev))`.
    pub fn next_logits(&self, prev: usize, bias: AttractorBias) -> Result<Vec<f64>> {
        let p = self.full.distribution(prev)?;
        let q = self.english.distribution(prev)?;
        let l = bias.lambda();
        Ok(p.iter().zip(&q).map(|(a, b)| ((1.0 - l) * a + l * b).ln()).collect())
    }

    pub fn with_bias(&self, bias: AttractorBias) -> Attracted<'_> {
        Attracted { lm: self, bias }
    }
}

/// A [`MultilingualLm`] bound to a fixed attractor weight.
#[derive(Debug, Clone, Copy)]
pub struct Attracted<'a> {
    lm: &'a MultilingualLm,
    bias: AttractorBias,
}

impl NextTokenModel for Attracted<'_> {
    fn vocab_size(&self) -> usize {
        self.lm.vocab.len()
    }

    fn next_logits(&self, prev: usize) -> Result<Vec<f64>> {
        self.lm.next_logits(prev, self.bias)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Greedy,
    #[default]
    Temperature,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecodeParams {
    #[serde(default)]
    pub strategy: Strategy,
    #[serde(default = "default_temperature")]
    pub temperature: f64,
    #[serde(default = "default_max_tokens")]
    pub max_tokens: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_eos")]
    pub eos_id: usize,
}

fn default_temperature() -> f64 {
    1.0
}

fn default_max_tokens() -> usize {
    48
}

fn default_eos() -> usize {
    EOS_ID
}

impl Default for DecodeParams {
    fn default() -> Self {
        DecodeParams {
            strategy: Strategy::Temperature,
            temperature: default_temperature(),
            max_tokens: default_max_tokens(),
            seed: 0,
            eos_id: EOS_ID,
        }
    }
}

impl DecodeParams {
    pub fn validate(&self) -> Result<()> {
        if self.max_tokens == 0 {
            return Err(Error::InvalidConfig("max_tokens must be positive".into()));
        }
        if self.strategy == Strategy::Temperature && !(self.temperature > 0.0 && self.temperature.is_finite()) {
            return Err(Error::InvalidConfig(format!("temperature must be positive, got {}", self.temperature)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoded {
    /// Generated ids, excluding the end-of-sequence token.
    pub tokens: Vec<usize>,
    pub token_count: usize,
}

fn argmax(logits: &[f64]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &z) in logits.iter().enumerate() {
        if z == f64::NEG_INFINITY || z.is_nan() {
            continue;
        }
        if best.is_none_or(|(_, b)| z > b) {
            best = Some((i, z));
        }
    }
    best.map(|(i, _)| i)
}

fn unit_f64(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn sample(logits: &[f64], temperature: f64, rng: &mut ChaCha8Rng) -> Option<usize> {
    let scaled: Vec<f64> = logits.iter().map(|&z| z / temperature).collect();
    let probs = softmax(&scaled);
    let total: f64 = probs.iter().sum();
    if total.is_nan() || total <= 0.0 {
        return None;
    }
    let u = unit_f64(rng) * total;
    let mut acc = 0.0;
    let mut last = None;
    for (i, &p) in probs.iter().enumerate() {
        if p <= 0.0 {
            continue;
        }
        acc += p;
        last = Some(i);
        if u < acc {
            return Some(i);
        }
    }
    last
}

/// Generates from the last prompt token until `eos_id` or `max_tokens`.
///
/// The transform sees the step index of the token being produced. Sampling
/// uses ChaCha8 seeded from `params.seed`, so runs are reproducible across
/// platforms.
pub fn decode<M: NextTokenModel + ?Sized>(
    model: &M,
    prompt: &[usize],
    transform: &dyn LogitsTransform<f64>,
    params: &DecodeParams,
) -> Result<Decoded> {
    params.validate()?;
    let mut prev = *prompt.last().ok_or(Error::EmptyInput("prompt"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut tokens = Vec::new();
    let mut step = DecodeStep(0);
    while tokens.len() < params.max_tokens {
        let logits = transform.apply(&model.next_logits(prev)?, step)?;
        let next = match params.strategy {
            Strategy::Greedy => argmax(&logits),
            Strategy::Temperature => sample(&logits, params.temperature, &mut rng),
        }
        .ok_or(Error::ExhaustedVocabulary)?;
        if next == params.eos_id {
            break;
        }
        tokens.push(next);
        prev = next;
        step = step.next();
    }
    Ok(Decoded {
        token_count: tokens.len(),
        tokens,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::control::{Identity, Vrd};
    use crate::vocab::TokenCategory;
    use std::sync::Arc;

    #[test]
    fn tokenizer() {
        assert_eq!(lm_tokenize("The answer is Paris."), ["the", "answer", "is", "paris", "."]);
        assert_eq!(lm_tokenize("答案是巴黎。"), ["答", "案", "是", "巴", "黎", "。"]);
        assert_eq!(lm_tokenize("建于1906年"), ["建", "于", "1906", "年"]);
        assert_eq!(lm_tokenize("أين ميدان؟"), ["أين", "ميدان", "؟"]);
    }

    #[test]
    fn k_to_zero_limits() {
        let k = 1e-12;
        let m = train_bigram(&[vec![1, 2], vec![1, 2]], 4, k).unwrap();
        assert!((m.distribution(1).unwrap()[2] - 1.0).abs() < 1e-9);
        let m = train_bigram(&[vec![1, 2], vec![1, 3]], 4, k).unwrap();
        let d = m.distribution(1).unwrap();
        assert!((d[2] - 0.5).abs() < 1e-9);
        assert!((d[3] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn add_one_table() {
        // Corpus 0 1 2 0 1 over three types. Row 0: {1: 2}; row 1: {2: 1};
        // row 2: {0: 1}. Successor unigram: {0: 1, 1: 2, 2: 1}.
        let m = train_bigram(&[vec![0, 1, 2, 0, 1]], 3, 1.0).unwrap();
        assert_eq!(m.distribution(0).unwrap(), [1.0 / 5.0, 3.0 / 5.0, 1.0 / 5.0]);
        assert_eq!(m.distribution(1).unwrap(), [1.0 / 4.0, 1.0 / 4.0, 2.0 / 4.0]);
        assert_eq!(m.distribution(2).unwrap(), [2.0 / 4.0, 1.0 / 4.0, 1.0 / 4.0]);
        assert_eq!(m.count(0, 1), 2);
    }

    #[test]
    fn unseen_row_backs_off_to_unigram() {
        let m = train_bigram(&[vec![0, 1, 1]], 3, 1.0).unwrap();
        // Row 2 never observed; successor unigram is {1: 2}.
        assert_eq!(m.distribution(2).unwrap(), [1.0 / 5.0, 3.0 / 5.0, 1.0 / 5.0]);
    }

    #[test]
    fn training_errors() {
        assert!(matches!(train_bigram(&[], 3, 1.0), Err(Error::EmptyInput(_))));
        assert!(matches!(train_bigram(&[vec![0]], 3, 1.0), Err(Error::EmptyInput(_))));
        assert!(matches!(train_bigram(&[vec![0, 5]], 3, 1.0), Err(Error::UnknownToken(5))));
        assert!(train_bigram(&[vec![0, 1]], 3, 0.0).is_err());
        let m = train_bigram(&[vec![0, 1]], 3, 1.0).unwrap();
        assert!(matches!(m.distribution(9), Err(Error::UnknownToken(9))));
    }

    fn toy() -> MultilingualLm {
        MultilingualLm::from_corpora(
            &[(LanguageId::En, "a b\nb a"), (LanguageId::Zh, "中 文")],
            0.5,
        )
        .unwrap()
    }

    #[test]
    fn mixture_endpoints_and_midpoint() {
        let lm = toy();
        assert_eq!(lm.vocab().len(), 6);
        let prev = lm.vocab().id("中").unwrap();
        let p = lm.full().distribution(prev).unwrap();
        let q = lm.english().distribution(prev).unwrap();
        let l0 = lm.next_logits(prev, AttractorBias::new(0.0).unwrap()).unwrap();
        let l1 = lm.next_logits(prev, AttractorBias::new(1.0).unwrap()).unwrap();
        let lh = lm.next_logits(prev, AttractorBias::new(0.5).unwrap()).unwrap();
        for i in 0..6 {
            assert_eq!(l0[i], p[i].ln());
            assert_eq!(l1[i], q[i].ln());
            assert!((lh[i] - (0.5 * p[i] + 0.5 * q[i]).ln()).abs() < 1e-15);
        }
        // Hand mixture: full row 中 -> {文: 1} over 6 types with k = 0.5 is
        // 1.5/4 for 文 and 0.5/4 elsewhere; English never sees 中 so it backs
        // off to its successor unigram {a: 2, b: 2, </s>: 2} over 6 + 3.
        let want: [f64; 6] = [0.5 / 9.0, 2.5 / 9.0, 2.5 / 9.0, 2.5 / 9.0, 0.5 / 9.0, 0.5 / 9.0];
        let ids = [BOS_ID, EOS_ID, lm.vocab().id("a").unwrap(), lm.vocab().id("b").unwrap(), prev, lm.vocab().id("文").unwrap()];
        let pfull: [f64; 6] = [0.5 / 4.0, 0.5 / 4.0, 0.5 / 4.0, 0.5 / 4.0, 0.5 / 4.0, 1.5 / 4.0];
        for (j, &id) in ids.iter().enumerate() {
            assert!((lh[id] - (0.5 * pfull[j] + 0.5 * want[j]).ln()).abs() < 1e-12);
        }
        assert!(AttractorBias::new(1.5).is_err());
    }

    #[test]
    fn bundled_rows_normalize() {
        let lm = MultilingualLm::bundled();
        for lambda in [0.0, 0.3, 1.0] {
            let bias = AttractorBias::new(lambda).unwrap();
            for prev in (0..lm.vocab().len()).step_by(37) {
                let s: f64 = lm.next_logits(prev, bias).unwrap().iter().map(|z| z.exp()).sum();
                assert!((s - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn greedy_is_unique_argmax() {
        let lm = toy();
        let zhong = lm.vocab().id("中").unwrap();
        let params = DecodeParams {
            strategy: Strategy::Greedy,
            max_tokens: 4,
            ..DecodeParams::default()
        };
        // 中 -> 文 and 文 -> </s> are the only observed successors.
        let out = decode(lm.full(), &[zhong], &Identity, &params).unwrap();
        assert_eq!(out.tokens, [lm.vocab().id("文").unwrap()]);
        assert_eq!(out.token_count, 1);
        assert!(matches!(decode(lm.full(), &[], &Identity, &params), Err(Error::EmptyInput(_))));
    }

    #[test]
    fn seeded_sampling_is_reproducible() {
        let lm = MultilingualLm::bundled();
        let model = lm.with_bias(AttractorBias::new(0.5).unwrap());
        let prompt = lm.vocab().encode("答案是");
        let params = DecodeParams { seed: 42, ..DecodeParams::default() };
        let a = decode(&model, &prompt, &Identity, &params).unwrap();
        let b = decode(&model, &prompt, &Identity, &params).unwrap();
        assert_eq!(a, b);
        let c = decode(&model, &prompt, &Identity, &DecodeParams { seed: 43, ..params }).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn vrd_decode_emits_no_distractors() {
        let lm = MultilingualLm::bundled();
        let model = lm.with_bias(AttractorBias::new(0.75).unwrap());
        let partition = Arc::new(lm.vocab().partition(LanguageId::Zh));
        let vrd = Vrd::new(partition.clone());
        let prompt = lm.vocab().encode("答案是");
        for seed in 0..20 {
            let params = DecodeParams { seed, ..DecodeParams::default() };
            let out = decode(&model, &prompt, &vrd, &params).unwrap();
            assert!(out.tokens.iter().all(|&t| partition.category_of(t) != Some(TokenCategory::Distractor)));
            let greedy = DecodeParams { strategy: Strategy::Greedy, ..params };
            let out = decode(&model, &prompt, &vrd, &greedy).unwrap();
            assert!(out.tokens.iter().all(|&t| partition.category_of(t) != Some(TokenCategory::Distractor)));
        }
    }

    #[test]
    fn detokenize() {
        let lm = MultilingualLm::bundled();
        let v = lm.vocab();
        assert_eq!(v.decode(&v.encode("The answer is Paris.")), "the answer is paris.");
        assert_eq!(v.decode(&v.encode("答案是巴黎。")), "答案是巴黎。");
        let year = (1100..2020).map(|y| y.to_string()).find(|y| v.id(y).is_some()).unwrap();
        let text = format!("广场建于{year}年。");
        assert_eq!(v.decode(&v.encode(&text)), text);
    }

    #[test]
    fn params_validation() {
        assert!(DecodeParams { max_tokens: 0, ..Default::default() }.validate().is_err());
        assert!(DecodeParams { temperature: 0.0, ..Default::default() }.validate().is_err());
        let greedy = DecodeParams { strategy: Strategy::Greedy, temperature: 0.0, ..Default::default() };
        assert!(greedy.validate().is_ok());
    }
}
