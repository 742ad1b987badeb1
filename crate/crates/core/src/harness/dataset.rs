//! The multilingual QA dataset: one JSON object per line with aligned
//! query, answer and context passages in all four languages.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::language::LanguageId;

const BUNDLED_DATASET: &str = include_str!("../../data/dataset/samples.jsonl");

/// One string per language.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Aligned {
    pub en: String,
    pub zh: String,
    pub ar: String,
    pub ru: String,
}

impl Aligned {
    pub fn get(&self, lang: LanguageId) -> &str {
        match lang {
            LanguageId::En => &self.en,
            LanguageId::Zh => &self.zh,
            LanguageId::Ar => &self.ar,
            LanguageId::Ru => &self.ru,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exemplar {
    pub q: String,
    pub a: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DriftType {
    A,
    B,
    C,
    D,
}

impl DriftType {
    pub const ALL: [DriftType; 4] = [DriftType::A, DriftType::B, DriftType::C, DriftType::D];
}

impl fmt::Display for DriftType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultilingualSample {
    pub id: String,
    pub query: Aligned,
    pub answer: Aligned,
    pub contexts: Vec<Aligned>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub exemplars: BTreeMap<LanguageId, Vec<Exemplar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub drift_type: Option<DriftType>,
}

impl MultilingualSample {
    pub fn exemplars_in(&self, lang: LanguageId) -> &[Exemplar] {
        self.exemplars.get(&lang).map_or(&[], Vec::as_slice)
    }
}

fn check_aligned(v: Option<&Value>, field: &str, problems: &mut Vec<String>) {
    let Some(obj) = v.and_then(Value::as_object) else {
        problems.push(format!("missing `{field}`"));
        return;
    };
    for lang in LanguageId::ALL {
        match obj.get(lang.key()) {
            Some(Value::String(_)) => {}
            Some(_) => problems.push(format!("`{field}.{}` is not a string", lang.key())),
            None => problems.push(format!("missing `{field}.{}`", lang.key())),
        }
    }
}

/// Every schema problem on one parsed line, as `field` descriptions.
fn check_line(v: &Value) -> Vec<String> {
    let mut problems = Vec::new();
    if !v.get("id").is_some_and(Value::is_string) {
        problems.push("missing `id`".to_owned());
    }
    check_aligned(v.get("query"), "query", &mut problems);
    check_aligned(v.get("answer"), "answer", &mut problems);
    match v.get("contexts").and_then(Value::as_array) {
        None => problems.push("missing `contexts`".to_owned()),
        Some(ctx) => {
            for (i, c) in ctx.iter().enumerate() {
                check_aligned(Some(c), &format!("contexts[{i}]"), &mut problems);
            }
        }
    }
    if let Some(ex) = v.get("exemplars").filter(|e| !e.is_null()) {
        match ex.as_object() {
            None => problems.push("`exemplars` is not an object".to_owned()),
            Some(map) => {
                for (key, list) in map {
                    if key.parse::<LanguageId>().is_err() {
                        problems.push(format!("unknown language `exemplars.{key}`"));
                    }
                    let ok = list.as_array().is_some_and(|items| {
                        items
                            .iter()
                            .all(|it| it.get("q").is_some_and(Value::is_string) && it.get("a").is_some_and(Value::is_string))
                    });
                    if !ok {
                        problems.push(format!("`exemplars.{key}` must be a list of {{q, a}} strings"));
                    }
                }
            }
        }
    }
    if let Some(d) = v.get("drift_type").filter(|d| !d.is_null()) {
        if !matches!(d.as_str(), Some("A" | "B" | "C" | "D")) {
            problems.push(format!("`drift_type` must be one of A, B, C, D, got {d}"));
        }
    }
    problems
}

/// Parses and validates dataset JSONL. All problems across all lines are
/// collected into a single [`Error::Schema`].
pub fn parse_dataset(text: &str) -> Result<Vec<MultilingualSample>> {
    let mut samples = Vec::new();
    let mut problems = Vec::new();
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let value: Value = match serde_json::from_str(line) {
            Ok(v) => v,
            Err(e) => {
                problems.push(format!("line {}: {e}", n + 1));
                continue;
            }
        };
        let found = check_line(&value);
        if !found.is_empty() {
            problems.extend(found.into_iter().map(|p| format!("line {}: {p}", n + 1)));
            continue;
        }
        match serde_json::from_value(value) {
            Ok(s) => samples.push(s),
            Err(e) => problems.push(format!("line {}: {e}", n + 1)),
        }
    }
    if !problems.is_empty() {
        return Err(Error::Schema(problems));
    }
    if samples.is_empty() {
        return Err(Error::EmptyInput("dataset"));
    }
    Ok(samples)
}

pub fn load_dataset(path: impl AsRef<Path>) -> Result<Vec<MultilingualSample>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_dataset(&text)
}

/// The 20-sample dataset shipped with the crate.
pub fn bundled_dataset() -> Vec<MultilingualSample> {
    parse_dataset(BUNDLED_DATASET).expect("bundled dataset is valid")
}

/// Tops up every sample's exemplar pool in `lang` to `k` entries using the
/// query/answer pairs of the other samples, taken round-robin in id order
/// starting after the sample itself.
pub fn fill_exemplars(samples: &mut [MultilingualSample], lang: LanguageId, k: usize) -> Result<()> {
    let mut order: Vec<usize> = (0..samples.len()).collect();
    order.sort_by(|&a, &b| samples[a].id.cmp(&samples[b].id));
    let donors: Vec<Exemplar> = order
        .iter()
        .map(|&i| Exemplar {
            q: samples[i].query.get(lang).to_owned(),
            a: samples[i].answer.get(lang).to_owned(),
        })
        .collect();
    for (pos, &i) in order.iter().enumerate() {
        let have = samples[i].exemplars_in(lang).len();
        if have >= k {
            continue;
        }
        let extra: Vec<Exemplar> = (1..order.len())
            .map(|step| donors[(pos + step) % order.len()].clone())
            .take(k - have)
            .collect();
        if have + extra.len() < k {
            return Err(Error::MissingField(format!(
                "sample `{}` needs {k} exemplars in {lang}, only {} available",
                samples[i].id,
                have + extra.len()
            )));
        }
        samples[i].exemplars.entry(lang).or_default().extend(extra);
    }
    Ok(())
}
