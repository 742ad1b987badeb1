//! Language consistency, fallback-to-English shares and length-bin analysis.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::language::LanguageId;
use crate::record::GenerationRecord;

/// Fraction of records whose detected language equals their target.
/// Unknown detections count as inconsistent.
pub fn language_consistency(records: &[GenerationRecord]) -> Result<f64> {
    if records.is_empty() {
        return Err(Error::EmptyInput("records"));
    }
    let hits = records.iter().filter(|r| r.is_consistent()).count();
    Ok(hits as f64 / records.len() as f64)
}

/// Among inconsistent records, the share detected as English.
/// `None` when no record in the slice is inconsistent.
pub fn fallback_share<'a>(records: impl IntoIterator<Item = &'a GenerationRecord>) -> Option<f64> {
    let (mut inconsistent, mut english) = (0usize, 0usize);
    for r in records {
        if !r.is_consistent() {
            inconsistent += 1;
            english += usize::from(r.detected.is(LanguageId::En));
        }
    }
    (inconsistent > 0).then(|| english as f64 / inconsistent as f64)
}

/// Fallback share per (target, context) cell. Cells without inconsistent
/// outputs are absent.
pub fn fallback_matrix(records: &[GenerationRecord]) -> BTreeMap<(LanguageId, LanguageId), f64> {
    let mut cells: BTreeMap<(LanguageId, LanguageId), Vec<&GenerationRecord>> = BTreeMap::new();
    for r in records {
        cells.entry((r.target_language, r.context_language)).or_default().push(r);
    }
    cells
        .into_iter()
        .filter_map(|(key, rs)| fallback_share(rs).map(|v| (key, v)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum LengthBin {
    Under50,
    From50To100,
    From100To150,
    From150To200,
    Over200,
}

impl LengthBin {
    pub const ALL: [LengthBin; 5] = [
        LengthBin::Under50,
        LengthBin::From50To100,
        LengthBin::From100To150,
        LengthBin::From150To200,
        LengthBin::Over200,
    ];

    /// Half-open boundaries: [0,50) [50,100) [100,150) [150,200) [200,inf).
    pub fn of(token_count: usize) -> Self {
        match token_count {
            0..=49 => LengthBin::Under50,
            50..=99 => LengthBin::From50To100,
            100..=149 => LengthBin::From100To150,
            150..=199 => LengthBin::From150To200,
            _ => LengthBin::Over200,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            LengthBin::Under50 => "<50",
            LengthBin::From50To100 => "50-100",
            LengthBin::From100To150 => "100-150",
            LengthBin::From150To200 => "150-200",
            LengthBin::Over200 => ">200",
        }
    }
}

impl fmt::Display for LengthBin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BinStats {
    pub bin: LengthBin,
    pub n: usize,
    /// `None` for an empty bin.
    pub rouge: Option<f64>,
    pub lc: Option<f64>,
    pub sample_proportion: f64,
}

/// Mean ROUGE, LC and share of records for each of the five length bins.
/// Every record must carry scores.
pub fn length_bin_report(records: &[GenerationRecord]) -> Result<Vec<BinStats>> {
    if records.is_empty() {
        return Err(Error::EmptyInput("records"));
    }
    let mut groups: BTreeMap<LengthBin, Vec<&GenerationRecord>> = BTreeMap::new();
    for r in records {
        if r.scores.is_none() {
            return Err(Error::MissingField(format!("scores on record for sample `{}`", r.sample_id)));
        }
        groups.entry(LengthBin::of(r.token_count)).or_default().push(r);
    }
    let total = records.len() as f64;
    Ok(LengthBin::ALL
        .into_iter()
        .map(|bin| {
            let rs = groups.get(&bin).map(Vec::as_slice).unwrap_or(&[]);
            let n = rs.len();
            let mean = |f: &dyn Fn(&GenerationRecord) -> f64| {
                (n > 0).then(|| rs.iter().map(|r| f(r)).sum::<f64>() / n as f64)
            };
            BinStats {
                bin,
                n,
                rouge: mean(&|r| r.scores.as_ref().map_or(0.0, |s| s.rouge_avg)),
                lc: mean(&|r| f64::from(u8::from(r.is_consistent()))),
                sample_proportion: n as f64 / total,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::MetricScore;
    use crate::record::Method;
    use LanguageId::*;

    fn rec(target: LanguageId, context: LanguageId, text: &str) -> GenerationRecord {
        GenerationRecord::new("s", target, context, Method::None, text, 0)
    }

    fn with_len(n: usize, rouge: f64, text: &str) -> GenerationRecord {
        let mut r = GenerationRecord::new("s", Zh, En, Method::Scd, text, n);
        r.scores = Some(MetricScore::from_components([0.0; 3], [rouge; 3]));
        r
    }

    #[test]
    fn lc_examples() {
        let mut recs: Vec<_> = (0..7).map(|_| rec(Zh, En, "北京")).collect();
        recs.extend((0..3).map(|_| rec(Zh, En, "beijing")));
        assert!((language_consistency(&recs).unwrap() - 0.7).abs() < 1e-15);
        assert_eq!(language_consistency(&recs[..7]).unwrap(), 1.0);
        assert_eq!(language_consistency(&recs[7..]).unwrap(), 0.0);
        assert!(matches!(language_consistency(&[]), Err(Error::EmptyInput(_))));
        // Unknown counts against consistency.
        assert_eq!(language_consistency(&[rec(Zh, En, "123")]).unwrap(), 0.0);
    }

    #[test]
    fn fallback_examples() {
        let recs = vec![
            rec(Zh, Ar, "paris"),
            rec(Zh, Ar, "london"),
            rec(Zh, Ar, "москва"),
            rec(Zh, Ar, "rome"),
            rec(Zh, Ar, "北京"),
            rec(Ru, En, "москва"),
        ];
        let m = fallback_matrix(&recs);
        assert_eq!(m.get(&(Zh, Ar)), Some(&0.75));
        assert_eq!(m.get(&(Ru, En)), None);
        assert_eq!(m.len(), 1);
    }

    #[test]
    fn bin_boundaries() {
        assert_eq!(LengthBin::of(0), LengthBin::Under50);
        assert_eq!(LengthBin::of(49), LengthBin::Under50);
        assert_eq!(LengthBin::of(50), LengthBin::From50To100);
        assert_eq!(LengthBin::of(99), LengthBin::From50To100);
        assert_eq!(LengthBin::of(100), LengthBin::From100To150);
        assert_eq!(LengthBin::of(150), LengthBin::From150To200);
        assert_eq!(LengthBin::of(199), LengthBin::From150To200);
        assert_eq!(LengthBin::of(200), LengthBin::Over200);
        assert_eq!(LengthBin::of(usize::MAX), LengthBin::Over200);
    }

    #[test]
    fn single_bin_report() {
        let recs = vec![with_len(60, 0.5, "北京"), with_len(70, 0.25, "paris")];
        let report = length_bin_report(&recs).unwrap();
        assert_eq!(report.len(), 5);
        let b = &report[1];
        assert_eq!(b.sample_proportion, 1.0);
        assert_eq!(b.rouge, Some(0.375));
        assert_eq!(b.lc, Some(0.5));
        for (i, other) in report.iter().enumerate().filter(|(i, _)| *i != 1) {
            assert_eq!(other.sample_proportion, 0.0, "bin {i}");
            assert_eq!(other.rouge, None);
        }
    }

    #[test]
    fn bin_report_requires_scores() {
        let r = GenerationRecord::new("s", Zh, En, Method::Scd, "北京", 3);
        assert!(matches!(length_bin_report(&[r]), Err(Error::MissingField(_))));
        assert!(matches!(length_bin_report(&[]), Err(Error::EmptyInput(_))));
    }

    #[test]
    fn histogram_matches_tally() {
        // 100 records with lengths 0, 3, 6, ..., 297.
        let recs: Vec<_> = (0..100).map(|i| with_len(i * 3, 0.0, "x")).collect();
        let report = length_bin_report(&recs).unwrap();
        let mut tally = [0usize; 5];
        for i in 0..100 {
            let len = i * 3;
            let b = if len < 50 { 0 } else if len < 100 { 1 } else if len < 150 { 2 } else if len < 200 { 3 } else { 4 };
            tally[b] += 1;
        }
        for (stats, want) in report.iter().zip(tally) {
            assert_eq!(stats.n, want);
            assert!((stats.sample_proportion - want as f64 / 100.0).abs() < 1e-15);
        }
        let sum: f64 = report.iter().map(|b| b.sample_proportion).sum();
        assert!((sum - 1.0).abs() < 1e-9);
    }
}
