//! Target / Neutral / Distractor partition of a subword vocabulary.

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::byte_level::demap_byte_level;
use crate::error::{Error, Result};
use crate::language::{classify_scalar, LanguageId, ScriptCategory};

/// Token text after demapping. Byte-level tokens that do not decode to
/// complete UTF-8 keep their raw bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Surface {
    Text(String),
    Bytes(Vec<u8>),
}

impl Surface {
    pub fn as_text(&self) -> Option<&str> {
        match self {
            Surface::Text(s) => Some(s),
            Surface::Bytes(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VocabEntry {
    pub id: usize,
    pub surface: Surface,
    pub is_special: bool,
}

impl VocabEntry {
    pub fn text(id: usize, surface: impl Into<String>) -> Self {
        VocabEntry {
            id,
            surface: Surface::Text(surface.into()),
            is_special: false,
        }
    }

    pub fn special(id: usize, surface: impl Into<String>) -> Self {
        VocabEntry {
            id,
            surface: Surface::Text(surface.into()),
            is_special: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TokenCategory {
    Target,
    Neutral,
    Distractor,
}

impl TokenCategory {
    pub fn code(self) -> u8 {
        match self {
            TokenCategory::Target => 0,
            TokenCategory::Neutral => 1,
            TokenCategory::Distractor => 2,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(TokenCategory::Target),
            1 => Some(TokenCategory::Neutral),
            2 => Some(TokenCategory::Distractor),
            _ => None,
        }
    }
}

/// The vocabulary file as stored on disk.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VocabularyFile {
    #[serde(default)]
    pub byte_level: bool,
    #[serde(default)]
    pub special_tokens: Option<Vec<String>>,
    pub tokens: Vec<RawToken>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawToken {
    pub id: usize,
    pub surface: String,
}

#[derive(Debug, Clone, Default)]
pub struct VocabOptions {
    /// Forces byte-level demapping even when the file does not declare it.
    pub byte_level: bool,
    /// Overrides the file's special-token list.
    pub special_tokens: Option<Vec<String>>,
}

const BOUNDARY_MARKERS: [char; 3] = ['\u{2581}', '\u{0120}', '\u{010A}'];

/// `<...>` or `[...]` spanning the whole surface.
fn looks_special(surface: &str) -> bool {
    let wrapped = |open: char, close: char| {
        surface.len() > 2 && surface.starts_with(open) && surface.ends_with(close)
    };
    wrapped('<', '>') || wrapped('[', ']')
}

fn strip_markers(surface: &str) -> &str {
    let s = surface.trim_start_matches(BOUNDARY_MARKERS);
    s.strip_prefix("##").unwrap_or(s)
}

impl VocabularyFile {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Demaps surfaces and marks special tokens. Entries come back sorted by id.
    pub fn into_entries(self, opts: &VocabOptions) -> Result<Vec<VocabEntry>> {
        let byte_level = self.byte_level || opts.byte_level;
        let declared = opts.special_tokens.clone().or(self.special_tokens);
        let specials: Option<HashSet<String>> = declared.map(|v| v.into_iter().collect());
        let mut entries = self
            .tokens
            .into_iter()
            .map(|tok| {
                let is_special = match &specials {
                    Some(set) => set.contains(&tok.surface),
                    None => looks_special(&tok.surface),
                };
                let surface = if is_special {
                    Surface::Text(tok.surface)
                } else if byte_level {
                    demap_byte_level(&tok.surface)?
                } else {
                    Surface::Text(strip_markers(&tok.surface).to_owned())
                };
                Ok(VocabEntry {
                    id: tok.id,
                    surface,
                    is_special,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        entries.sort_by_key(|e| e.id);
        Ok(entries)
    }
}

/// Category of one vocabulary entry relative to `target`.
pub fn classify_token(entry: &VocabEntry, target: LanguageId) -> TokenCategory {
    if entry.is_special {
        return TokenCategory::Neutral;
    }
    let Some(text) = entry.surface.as_text() else {
        return TokenCategory::Neutral;
    };
    let targets = target.script_set();
    let mut any_letter = false;
    for ch in text.chars() {
        let script = classify_scalar(ch);
        if script == ScriptCategory::NonLetter {
            continue;
        }
        if !targets.contains(&script) {
            return TokenCategory::Distractor;
        }
        any_letter = true;
    }
    if any_letter {
        TokenCategory::Target
    } else {
        TokenCategory::Neutral
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryCounts {
    pub target: usize,
    pub neutral: usize,
    pub distractor: usize,
}

impl CategoryCounts {
    pub fn total(&self) -> usize {
        self.target + self.neutral + self.distractor
    }

    fn bump(&mut self, cat: TokenCategory) {
        match cat {
            TokenCategory::Target => self.target += 1,
            TokenCategory::Neutral => self.neutral += 1,
            TokenCategory::Distractor => self.distractor += 1,
        }
    }
}

/// Total map from token id to [`TokenCategory`] for one target language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VocabPartition {
    target: LanguageId,
    categories: Vec<TokenCategory>,
    counts: CategoryCounts,
}

impl VocabPartition {
    /// Builds a partition from explicit categories, indexed by token id.
    pub fn from_categories(target: LanguageId, categories: Vec<TokenCategory>) -> Self {
        let mut counts = CategoryCounts::default();
        categories.iter().for_each(|&c| counts.bump(c));
        VocabPartition {
            target,
            categories,
            counts,
        }
    }

    pub fn target_language(&self) -> LanguageId {
        self.target
    }

    pub fn size(&self) -> usize {
        self.categories.len()
    }

    pub fn category_of(&self, id: usize) -> Option<TokenCategory> {
        self.categories.get(id).copied()
    }

    pub fn categories(&self) -> &[TokenCategory] {
        &self.categories
    }

    pub fn counts(&self) -> CategoryCounts {
        self.counts
    }

    pub fn to_file(&self) -> PartitionFile {
        PartitionFile {
            target_language: self.target,
            size: self.size(),
            categories: self.categories.iter().map(|c| c.code()).collect(),
            counts: self.counts,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.to_file())?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json()?).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let file: PartitionFile = serde_json::from_str(&text)?;
        file.try_into()
    }
}

/// On-disk partition: categories are 0 = Target, 1 = Neutral, 2 = Distractor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionFile {
    pub target_language: LanguageId,
    pub size: usize,
    pub categories: Vec<u8>,
    pub counts: CategoryCounts,
}

impl TryFrom<PartitionFile> for VocabPartition {
    type Error = Error;

    fn try_from(file: PartitionFile) -> Result<Self> {
        if file.categories.len() != file.size {
            return Err(Error::Schema(vec![format!(
                "size is {} but {} categories are listed",
                file.size,
                file.categories.len()
            )]));
        }
        let categories = file
            .categories
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                TokenCategory::from_code(c)
                    .ok_or_else(|| Error::Schema(vec![format!("category {c} at id {i} is not 0, 1 or 2")]))
            })
            .collect::<Result<Vec<_>>>()?;
        let partition = VocabPartition::from_categories(file.target_language, categories);
        if partition.counts != file.counts {
            return Err(Error::Schema(vec!["counts disagree with categories".into()]));
        }
        Ok(partition)
    }
}

fn check_ids(vocab: &[VocabEntry]) -> Result<Vec<usize>> {
    let mut slot = vec![usize::MAX; vocab.len()];
    let mut problems = Vec::new();
    for (pos, entry) in vocab.iter().enumerate() {
        match slot.get_mut(entry.id) {
            None => problems.push(format!("id {} is outside [0, {})", entry.id, vocab.len())),
            Some(s) if *s != usize::MAX => problems.push(format!("duplicate id {}", entry.id)),
            Some(s) => *s = pos,
        }
    }
    problems.extend(
        slot.iter()
            .enumerate()
            .filter(|(_, &p)| p == usize::MAX)
            .map(|(id, _)| format!("missing id {id}")),
    );
    if problems.is_empty() {
        Ok(slot)
    } else {
        Err(Error::Schema(problems))
    }
}

/// Classifies every entry. Ids must form exactly `[0, vocab.len())`.
pub fn partition_vocabulary(vocab: &[VocabEntry], target: LanguageId) -> Result<VocabPartition> {
    if vocab.is_empty() {
        return Err(Error::EmptyInput("vocabulary"));
    }
    let order = check_ids(vocab)?;
    let categories = order
        .into_iter()
        .map(|pos| classify_token(&vocab[pos], target))
        .collect();
    Ok(VocabPartition::from_categories(target, categories))
}
