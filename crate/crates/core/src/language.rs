//! Languages in scope and the Unicode script table that identifies them.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use unicode_general_category::{get_general_category, GeneralCategory};

use crate::error::Error;

const SCRIPT_RANGES: &str = include_str!("../data/script_ranges.tsv");

/// One of the four languages under study. Each owns exactly one script.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LanguageId {
    #[serde(rename = "EN", alias = "en")]
    En,
    #[serde(rename = "ZH", alias = "zh")]
    Zh,
    #[serde(rename = "AR", alias = "ar")]
    Ar,
    #[serde(rename = "RU", alias = "ru")]
    Ru,
}

impl LanguageId {
    pub const ALL: [LanguageId; 4] = [LanguageId::En, LanguageId::Zh, LanguageId::Ar, LanguageId::Ru];

    /// The script whose letters count as evidence for this language.
    pub fn script(self) -> ScriptCategory {
        match self {
            LanguageId::En => ScriptCategory::Latin,
            LanguageId::Zh => ScriptCategory::Han,
            LanguageId::Ar => ScriptCategory::Arabic,
            LanguageId::Ru => ScriptCategory::Cyrillic,
        }
    }

    pub fn script_set(self) -> &'static [ScriptCategory] {
        match self {
            LanguageId::En => &[ScriptCategory::Latin],
            LanguageId::Zh => &[ScriptCategory::Han],
            LanguageId::Ar => &[ScriptCategory::Arabic],
            LanguageId::Ru => &[ScriptCategory::Cyrillic],
        }
    }

    /// Inverse of [`LanguageId::script`]; `None` for OtherLetter and NonLetter.
    pub fn owning(script: ScriptCategory) -> Option<LanguageId> {
        LanguageId::ALL.into_iter().find(|l| l.script_set().contains(&script))
    }

    pub fn code(self) -> &'static str {
        match self {
            LanguageId::En => "EN",
            LanguageId::Zh => "ZH",
            LanguageId::Ar => "AR",
            LanguageId::Ru => "RU",
        }
    }

    /// Lower-case key used by the dataset format.
    pub fn key(self) -> &'static str {
        match self {
            LanguageId::En => "en",
            LanguageId::Zh => "zh",
            LanguageId::Ar => "ar",
            LanguageId::Ru => "ru",
        }
    }
}

impl fmt::Display for LanguageId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for LanguageId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "EN" => Ok(LanguageId::En),
            "ZH" => Ok(LanguageId::Zh),
            "AR" => Ok(LanguageId::Ar),
            "RU" => Ok(LanguageId::Ru),
            _ => Err(Error::InvalidConfig(format!("unknown language `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ScriptCategory {
    Latin,
    Han,
    Arabic,
    Cyrillic,
    OtherLetter,
    NonLetter,
}

impl ScriptCategory {
    pub fn is_letter(self) -> bool {
        self != ScriptCategory::NonLetter
    }
}

impl FromStr for ScriptCategory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "Latin" => ScriptCategory::Latin,
            "Han" => ScriptCategory::Han,
            "Arabic" => ScriptCategory::Arabic,
            "Cyrillic" => ScriptCategory::Cyrillic,
            "OtherLetter" => ScriptCategory::OtherLetter,
            "NonLetter" => ScriptCategory::NonLetter,
            _ => return Err(Error::Format(format!("unknown script category `{s}`"))),
        })
    }
}

#[derive(Debug, Clone, Copy)]
struct ScriptRange {
    start: u32,
    end: u32,
    category: ScriptCategory,
}

fn parse_ranges(src: &str) -> Result<Vec<ScriptRange>, Error> {
    let mut ranges = Vec::new();
    for (n, line) in src.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut cols = line.split('\t');
        let (Some(start), Some(end), Some(cat)) = (cols.next(), cols.next(), cols.next()) else {
            return Err(Error::Format(format!("script table line {}: expected 3 columns", n + 1)));
        };
        let hex = |s: &str| {
            u32::from_str_radix(s, 16)
                .map_err(|e| Error::Format(format!("script table line {}: {e}", n + 1)))
        };
        ranges.push(ScriptRange {
            start: hex(start)?,
            end: hex(end)?,
            category: cat.parse()?,
        });
    }
    ranges.sort_by_key(|r| r.start);
    if ranges.windows(2).any(|w| w[0].end >= w[1].start) {
        return Err(Error::Format("script table ranges overlap".into()));
    }
    Ok(ranges)
}

fn table() -> &'static [ScriptRange] {
    static TABLE: OnceLock<Vec<ScriptRange>> = OnceLock::new();
    TABLE.get_or_init(|| parse_ranges(SCRIPT_RANGES).expect("bundled script table is well formed"))
}

fn is_letter(ch: char) -> bool {
    matches!(
        get_general_category(ch),
        GeneralCategory::UppercaseLetter
            | GeneralCategory::LowercaseLetter
            | GeneralCategory::TitlecaseLetter
            | GeneralCategory::ModifierLetter
            | GeneralCategory::OtherLetter
    )
}

pub(crate) fn is_mark(ch: char) -> bool {
    matches!(
        get_general_category(ch),
        GeneralCategory::NonspacingMark | GeneralCategory::SpacingMark | GeneralCategory::EnclosingMark
    )
}

/// Script category of a single scalar. Total over all of Unicode.
pub fn classify_scalar(ch: char) -> ScriptCategory {
    if !is_letter(ch) {
        return ScriptCategory::NonLetter;
    }
    let cp = ch as u32;
    let ranges = table();
    let idx = ranges.partition_point(|r| r.start <= cp);
    match idx.checked_sub(1).map(|i| ranges[i]) {
        Some(r) if cp <= r.end => r.category,
        _ => ScriptCategory::OtherLetter,
    }
}
