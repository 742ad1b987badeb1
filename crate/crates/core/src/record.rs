//! Generation records and their JSONL representation.

use std::fmt;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::detect::{detect_language, DetectedLanguage};
use crate::error::{Error, Result};
use crate::language::{classify_scalar, LanguageId, ScriptCategory};
use crate::metrics::MetricScore;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    None,
    Pli,
    Scd,
    Vrd,
    Translate,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::None, Method::Pli, Method::Scd, Method::Vrd, Method::Translate];

    pub fn name(self) -> &'static str {
        match self {
            Method::None => "none",
            Method::Pli => "pli",
            Method::Scd => "scd",
            Method::Vrd => "vrd",
            Method::Translate => "translate",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidConfig(format!("unknown method `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationRecord {
    pub sample_id: String,
    pub target_language: LanguageId,
    pub context_language: LanguageId,
    pub method: Method,
    pub text: String,
    pub token_count: usize,
    pub detected: DetectedLanguage,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scores: Option<MetricScore>,
}

/// A records line as accepted on input: `detected` and `token_count` may be
/// omitted by external generators.
#[derive(Debug, Deserialize)]
struct RecordLine {
    sample_id: String,
    target_language: LanguageId,
    context_language: LanguageId,
    method: Method,
    text: String,
    #[serde(default)]
    token_count: Option<usize>,
    #[serde(default)]
    detected: Option<DetectedLanguage>,
    #[serde(default)]
    scores: Option<MetricScore>,
}

impl GenerationRecord {
    pub fn new(
        sample_id: impl Into<String>,
        target_language: LanguageId,
        context_language: LanguageId,
        method: Method,
        text: impl Into<String>,
        token_count: usize,
    ) -> Self {
        let text = text.into();
        GenerationRecord {
            sample_id: sample_id.into(),
            target_language,
            context_language,
            method,
            detected: detect_language(&text),
            text,
            token_count,
            scores: None,
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.detected.is(self.target_language)
    }
}

impl From<RecordLine> for GenerationRecord {
    fn from(line: RecordLine) -> Self {
        GenerationRecord {
            token_count: line.token_count.unwrap_or_else(|| approx_token_count(&line.text)),
            detected: line.detected.unwrap_or_else(|| detect_language(&line.text)),
            sample_id: line.sample_id,
            target_language: line.target_language,
            context_language: line.context_language,
            method: line.method,
            text: line.text,
            scores: line.scores,
        }
    }
}

/// Token estimate for text without a decoder count: whitespace-separated
/// words, with each Han character counted on its own.
pub fn approx_token_count(text: &str) -> usize {
    text.split_whitespace()
        .map(|word| {
            let han = word.chars().filter(|&c| classify_scalar(c) == ScriptCategory::Han).count();
            let rest = word
                .split(|c: char| classify_scalar(c) == ScriptCategory::Han)
                .filter(|s| !s.is_empty())
                .count();
            han + rest
        })
        .sum()
}

pub fn parse_records(text: &str) -> Result<Vec<GenerationRecord>> {
    let mut out = Vec::new();
    let mut problems = Vec::new();
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<RecordLine>(line) {
            Ok(r) => out.push(r.into()),
            Err(e) => problems.push(format!("line {}: {e}", n + 1)),
        }
    }
    if problems.is_empty() {
        Ok(out)
    } else {
        Err(Error::Schema(problems))
    }
}

pub fn read_records(path: impl AsRef<Path>) -> Result<Vec<GenerationRecord>> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut text = String::new();
    for line in BufReader::new(file).lines() {
        text.push_str(&line.map_err(|e| Error::io(path, e))?);
        text.push('\n');
    }
    parse_records(&text)
}

pub fn records_to_jsonl(records: &[GenerationRecord]) -> Result<String> {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r)?);
        out.push('\n');
    }
    Ok(out)
}

/// Writes the whole file or nothing: output goes to a sibling temp file that
/// is renamed into place.
pub fn write_records(path: impl AsRef<Path>, records: &[GenerationRecord]) -> Result<()> {
    let path = path.as_ref();
    let body = records_to_jsonl(records)?;
    write_atomic(path, body.as_bytes())
}

pub(crate) fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    let tmp = std::path::PathBuf::from(tmp);
    let mut f = std::fs::File::create(&tmp).map_err(|e| Error::io(&tmp, e))?;
    f.write_all(bytes).map_err(|e| Error::io(&tmp, e))?;
    f.sync_all().map_err(|e| Error::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn method_names() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
            assert_eq!(serde_json::to_string(&m).unwrap(), format!("\"{}\"", m.name()));
        }
        assert!("beam".parse::<Method>().is_err());
    }

    #[test]
    fn token_estimate() {
        assert_eq!(approx_token_count("the answer is paris."), 4);
        assert_eq!(approx_token_count("答案是巴黎。"), 5 + 1);
        assert_eq!(approx_token_count("答案 Beijing 北京"), 5);
        assert_eq!(approx_token_count(""), 0);
    }

    #[test]
    fn external_lines_get_detection_and_counts() {
        let line = r#"{"sample_id":"x","target_language":"ZH","context_language":"EN","method":"none","text":"答案是巴黎 ok"}"#;
        let recs = parse_records(line).unwrap();
        assert_eq!(recs[0].token_count, 6);
        assert_eq!(recs[0].detected.language, Some(LanguageId::Zh));
        assert!(recs[0].is_consistent());
    }

    #[test]
    fn bad_lines_are_all_reported() {
        let text = "{}\n\n{\"sample_id\": 3}\n";
        let Err(Error::Schema(p)) = parse_records(text) else {
            panic!()
        };
        assert_eq!(p.len(), 2);
        assert!(p[0].starts_with("line 1"));
        assert!(p[1].starts_with("line 3"));
    }

    #[test]
    fn jsonl_round_trip() {
        let recs = vec![
            GenerationRecord::new("a", LanguageId::Ar, LanguageId::Ru, Method::Scd, "متحف", 1),
            GenerationRecord::new("b", LanguageId::En, LanguageId::Zh, Method::Vrd, "", 0),
        ];
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.jsonl");
        write_records(&path, &recs).unwrap();
        assert_eq!(read_records(&path).unwrap(), recs);
        assert!(!dir.path().join("r.jsonl.partial").exists());
    }
}
