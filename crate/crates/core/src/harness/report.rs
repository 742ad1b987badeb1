//! Aggregation of scored records into report rows, and CSV output.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::consistency::{fallback_share, BinStats};
use crate::error::{Error, Result};
use crate::harness::dataset::{DriftType, MultilingualSample};
use crate::language::LanguageId;
use crate::metrics::score;
use crate::record::{write_atomic, GenerationRecord, Method};

pub const REPORT_HEADER: [&str; 9] =
    ["target", "context", "method", "n", "rouge", "bleu", "lc", "fallback_to_en", "mean_token_count"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRow {
    pub target: LanguageId,
    pub context: LanguageId,
    pub method: Method,
    pub n: usize,
    pub rouge: f64,
    pub bleu: f64,
    pub lc: f64,
    /// Share of inconsistent outputs detected as English; absent when every
    /// output was consistent.
    pub fallback_to_en: Option<f64>,
    pub mean_token_count: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub rows: Vec<EvalRow>,
}

fn sort_key(t: LanguageId, c: LanguageId, m: Method) -> (&'static str, &'static str, &'static str) {
    (t.code(), c.code(), m.name())
}

fn index_samples(samples: &[MultilingualSample]) -> HashMap<&str, &MultilingualSample> {
    samples.iter().map(|s| (s.id.as_str(), s)).collect()
}

/// Fills in missing metric scores against each record's reference answer in
/// its target language.
pub fn attach_scores(records: &mut [GenerationRecord], samples: &[MultilingualSample]) -> Result<()> {
    let by_id = index_samples(samples);
    for r in records.iter_mut() {
        let sample = by_id
            .get(r.sample_id.as_str())
            .ok_or_else(|| Error::UnknownSample(r.sample_id.clone()))?;
        if r.scores.is_none() {
            r.scores = Some(score(&r.text, sample.answer.get(r.target_language), r.target_language)?);
        }
    }
    Ok(())
}

/// One row per (target, context, method) present in `records`, sorted by
/// the codes of those three fields.
pub fn evaluate(records: &[GenerationRecord], samples: &[MultilingualSample]) -> Result<EvalReport> {
    if records.is_empty() {
        return Err(Error::EmptyInput("records"));
    }
    let mut scored = records.to_vec();
    attach_scores(&mut scored, samples)?;
    let mut cells: BTreeMap<_, Vec<&GenerationRecord>> = BTreeMap::new();
    for r in &scored {
        cells
            .entry(sort_key(r.target_language, r.context_language, r.method))
            .or_default()
            .push(r);
    }
    let rows = cells
        .into_values()
        .map(|rs| {
            let n = rs.len() as f64;
            let mean = |f: &dyn Fn(&GenerationRecord) -> f64| rs.iter().map(|r| f(r)).sum::<f64>() / n;
            let first = rs[0];
            EvalRow {
                target: first.target_language,
                context: first.context_language,
                method: first.method,
                n: rs.len(),
                rouge: mean(&|r| r.scores.map_or(0.0, |s| s.rouge_avg)),
                bleu: mean(&|r| r.scores.map_or(0.0, |s| s.bleu_avg)),
                lc: mean(&|r| f64::from(u8::from(r.is_consistent()))),
                fallback_to_en: fallback_share(rs.iter().copied()),
                mean_token_count: mean(&|r| r.token_count as f64),
            }
        })
        .collect();
    Ok(EvalReport { rows })
}

fn fmt4(v: f64) -> String {
    format!("{v:.4}")
}

fn to_csv<const N: usize>(header: [&str; N], rows: impl IntoIterator<Item = [String; N]>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Format(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Format(e.to_string()))
}

pub fn report_to_csv(report: &EvalReport) -> Result<String> {
    let mut rows = report.rows.clone();
    rows.sort_by_key(|r| sort_key(r.target, r.context, r.method));
    to_csv(
        REPORT_HEADER,
        rows.iter().map(|r| {
            [
                r.target.code().to_owned(),
                r.context.code().to_owned(),
                r.method.name().to_owned(),
                r.n.to_string(),
                fmt4(r.rouge),
                fmt4(r.bleu),
                fmt4(r.lc),
                r.fallback_to_en.map(fmt4).unwrap_or_default(),
                fmt4(r.mean_token_count),
            ]
        }),
    )
}

/// Writes the report CSV: reals with four decimals, rows in stable order,
/// an empty `fallback_to_en` cell where the share is undefined.
pub fn emit_report(report: &EvalReport, path: impl AsRef<Path>) -> Result<()> {
    if report.rows.is_empty() {
        return Err(Error::EmptyInput("report"));
    }
    write_atomic(path.as_ref(), report_to_csv(report)?.as_bytes())
}

fn field<T: std::str::FromStr>(rec: &csv::StringRecord, i: usize, line: u64) -> Result<T> {
    let raw = rec.get(i).unwrap_or_default();
    raw.parse()
        .map_err(|_| Error::Format(format!("line {line}: bad `{}` value `{raw}`", REPORT_HEADER[i])))
}

pub fn parse_report(text: &str) -> Result<EvalReport> {
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    if rd.headers()?.iter().ne(REPORT_HEADER) {
        return Err(Error::Format("unexpected report header".into()));
    }
    let mut rows = Vec::new();
    for rec in rd.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        let fallback = match rec.get(7) {
            Some("") | None => None,
            Some(_) => Some(field(&rec, 7, line)?),
        };
        rows.push(EvalRow {
            target: field(&rec, 0, line)?,
            context: field(&rec, 1, line)?,
            method: field(&rec, 2, line)?,
            n: field(&rec, 3, line)?,
            rouge: field(&rec, 4, line)?,
            bleu: field(&rec, 5, line)?,
            lc: field(&rec, 6, line)?,
            fallback_to_en: fallback,
            mean_token_count: field(&rec, 8, line)?,
        });
    }
    Ok(EvalReport { rows })
}

pub fn read_report(path: impl AsRef<Path>) -> Result<EvalReport> {
    let path = path.as_ref();
    parse_report(&std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?)
}

pub fn matrix_to_csv(matrix: &BTreeMap<(LanguageId, LanguageId), f64>) -> Result<String> {
    let mut cells: Vec<_> = matrix.iter().collect();
    cells.sort_by_key(|((t, c), _)| (t.code(), c.code()));
    to_csv(
        ["target", "context", "fallback_to_en"],
        cells.into_iter().map(|((t, c), v)| [t.code().to_owned(), c.code().to_owned(), fmt4(*v)]),
    )
}

pub fn bins_to_csv(bins: &[BinStats]) -> Result<String> {
    let opt = |v: Option<f64>| v.map(fmt4).unwrap_or_default();
    to_csv(
        ["bin", "n", "rouge", "lc", "sample_proportion"],
        bins.iter().map(|b| {
            [
                b.bin.label().to_owned(),
                b.n.to_string(),
                opt(b.rouge),
                opt(b.lc),
                format!("{:.6}", b.sample_proportion),
            ]
        }),
    )
}

/// Writes any CSV body produced above to `path` in one step.
pub fn write_csv(path: impl AsRef<Path>, body: &str) -> Result<()> {
    write_atomic(path.as_ref(), body.as_bytes())
}

pub type DriftDistribution = BTreeMap<DriftType, f64>;

/// Distribution of externally annotated drift types over the inconsistent
/// records of each (target, context) cell. Cells with no annotated
/// inconsistent record are omitted; records for unknown samples are ignored.
pub fn aggregate_drift_types(
    samples: &[MultilingualSample],
    records: &[GenerationRecord],
) -> BTreeMap<(LanguageId, LanguageId), DriftDistribution> {
    let by_id = index_samples(samples);
    let mut tallies: BTreeMap<(LanguageId, LanguageId), BTreeMap<DriftType, usize>> = BTreeMap::new();
    for r in records.iter().filter(|r| !r.is_consistent()) {
        let Some(kind) = by_id.get(r.sample_id.as_str()).and_then(|s| s.drift_type) else {
            continue;
        };
        *tallies
            .entry((r.target_language, r.context_language))
            .or_default()
            .entry(kind)
            .or_default() += 1;
    }
    tallies
        .into_iter()
        .map(|(cell, counts)| {
            let total: usize = counts.values().sum();
            let dist = DriftType::ALL
                .into_iter()
                .map(|d| (d, counts.get(&d).copied().unwrap_or(0) as f64 / total as f64))
                .collect();
            (cell, dist)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::dataset::bundled_dataset;
    use LanguageId::*;

    fn rec(id: &str, t: LanguageId, c: LanguageId, m: Method, text: &str) -> GenerationRecord {
        GenerationRecord::new(id, t, c, m, text, 3)
    }

    #[test]
    fn perfect_row() {
        let ds = bundled_dataset();
        let recs: Vec<_> = ds[..4]
            .iter()
            .map(|s| rec(&s.id, Zh, En, Method::Scd, &s.answer.zh))
            .collect();
        let rep = evaluate(&recs, &ds).unwrap();
        assert_eq!(rep.rows.len(), 1);
        let row = &rep.rows[0];
        assert_eq!((row.n, row.rouge, row.bleu, row.lc), (4, 1.0, 1.0, 1.0));
        assert_eq!(row.fallback_to_en, None);
        assert_eq!(row.mean_token_count, 3.0);
    }

    #[test]
    fn unknown_sample() {
        let ds = bundled_dataset();
        let r = evaluate(&[rec("nope", En, En, Method::None, "x")], &ds);
        assert!(matches!(r, Err(Error::UnknownSample(id)) if id == "nope"));
    }

    #[test]
    fn one_row_two_lines_and_round_trip() {
        let ds = bundled_dataset();
        let recs = [
            rec(&ds[0].id, Ru, Zh, Method::None, "the museum"),
            rec(&ds[1].id, Ru, Zh, Method::None, "музей"),
        ];
        let rep = evaluate(&recs, &ds).unwrap();
        let csv = report_to_csv(&rep).unwrap();
        assert_eq!(csv.lines().count(), 2);
        assert_eq!(csv.lines().next().unwrap(), REPORT_HEADER.join(","));
        let back = parse_report(&csv).unwrap();
        let (a, b) = (&rep.rows[0], &back.rows[0]);
        assert_eq!((a.target, a.context, a.method, a.n), (b.target, b.context, b.method, b.n));
        for (x, y) in [(a.rouge, b.rouge), (a.bleu, b.bleu), (a.lc, b.lc), (a.mean_token_count, b.mean_token_count)] {
            assert!((x - y).abs() <= 5e-5);
        }
        assert_eq!(b.fallback_to_en, Some(1.0));
    }

    #[test]
    fn rows_sorted_by_codes() {
        let ds = bundled_dataset();
        let id = &ds[0].id;
        let recs = [
            rec(id, Zh, En, Method::Vrd, "x"),
            rec(id, Ar, Ru, Method::Scd, "x"),
            rec(id, Ar, Ru, Method::None, "x"),
            rec(id, En, Zh, Method::Pli, "x"),
        ];
        let rep = evaluate(&recs, &ds).unwrap();
        let keys: Vec<_> = rep.rows.iter().map(|r| sort_key(r.target, r.context, r.method)).collect();
        assert_eq!(keys, [("AR", "RU", "none"), ("AR", "RU", "scd"), ("EN", "ZH", "pli"), ("ZH", "EN", "vrd")]);
    }

    #[test]
    fn empty_report_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let r = emit_report(&EvalReport { rows: vec![] }, dir.path().join("r.csv"));
        assert!(matches!(r, Err(Error::EmptyInput(_))));
    }

    #[test]
    fn drift_distribution() {
        let mut ds = bundled_dataset();
        for (s, d) in ds.iter_mut().zip([DriftType::A, DriftType::A, DriftType::B, DriftType::C]) {
            s.drift_type = Some(d);
        }
        let recs: Vec<_> = ds[..4]
            .iter()
            .map(|s| rec(&s.id, Zh, En, Method::None, "english text"))
            .chain([rec(&ds[4].id, Zh, En, Method::None, "english")])
            .collect();
        let got = aggregate_drift_types(&ds, &recs);
        let cell = &got[&(Zh, En)];
        assert_eq!(cell[&DriftType::A], 0.5);
        assert_eq!(cell[&DriftType::B], 0.25);
        assert_eq!(cell[&DriftType::C], 0.25);
        assert_eq!(cell[&DriftType::D], 0.0);
        assert!(aggregate_drift_types(&ds, &[]).is_empty());
    }
}
