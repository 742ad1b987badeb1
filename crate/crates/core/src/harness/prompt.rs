//! Prompt templates and composition.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harness::dataset::MultilingualSample;
use crate::language::LanguageId;
use crate::record::Method;

const BUNDLED_TEMPLATES: &str = include_str!("../../data/prompt_templates.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptTemplate {
    pub instruction: String,
    pub language_directive: String,
    pub context_label: String,
    pub question_label: String,
    pub answer_label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PromptTemplates(BTreeMap<LanguageId, PromptTemplate>);

impl PromptTemplates {
    pub fn parse(json: &str) -> Result<Self> {
        let map: BTreeMap<LanguageId, PromptTemplate> = serde_json::from_str(json)?;
        let missing: Vec<String> = LanguageId::ALL
            .into_iter()
            .filter(|l| !map.contains_key(l))
            .map(|l| format!("no template for `{}`", l.key()))
            .collect();
        if !missing.is_empty() {
            return Err(Error::Schema(missing));
        }
        Ok(PromptTemplates(map))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Self::parse(&std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?)
    }

    pub fn bundled() -> Self {
        Self::parse(BUNDLED_TEMPLATES).expect("bundled templates are valid")
    }

    pub fn get(&self, lang: LanguageId) -> &PromptTemplate {
        &self.0[&lang]
    }
}

fn colon(lang: LanguageId) -> &'static str {
    if lang == LanguageId::Zh {
        "："
    } else {
        ": "
    }
}

/// Builds the prompt text.
///
/// Layout, one item per line: the target-language instruction, the
/// output-language directive (PLI only), `icl_k` exemplar question/answer
/// pairs, the sample's contexts in `context`, the query, and finally the bare
/// answer label. Only the context lines depend on `context`.
pub fn compose_prompt(
    templates: &PromptTemplates,
    sample: &MultilingualSample,
    target: LanguageId,
    context: LanguageId,
    icl_k: usize,
    method: Method,
) -> Result<String> {
    let t = templates.get(target);
    let sep = colon(target);
    let pool = sample.exemplars_in(target);
    if pool.len() < icl_k {
        return Err(Error::MissingField(format!(
            "sample `{}` has {} exemplars in {target}, {icl_k} requested",
            sample.id,
            pool.len()
        )));
    }
    let mut lines = vec![t.instruction.clone()];
    if method == Method::Pli {
        lines.push(t.language_directive.clone());
    }
    for ex in &pool[..icl_k] {
        lines.push(format!("{}{sep}{}", t.question_label, ex.q));
        lines.push(format!("{}{sep}{}", t.answer_label, ex.a));
    }
    for c in &sample.contexts {
        lines.push(format!("{}{sep}{}", t.context_label, c.get(context)));
    }
    lines.push(format!("{}{sep}{}", t.question_label, sample.query.get(target)));
    lines.push(format!("{}{}", t.answer_label, sep.trim_end()));
    Ok(lines.join("\n"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::dataset::bundled_dataset;
    use LanguageId::*;

    #[test]
    fn field_selection() {
        let ds = bundled_dataset();
        let s = &ds[0];
        let p = compose_prompt(&PromptTemplates::bundled(), s, Zh, En, 0, Method::None).unwrap();
        for c in &s.contexts {
            assert!(p.contains(&c.en));
            assert!(!p.contains(&c.zh));
        }
        assert!(p.contains(&s.query.zh));
        assert!(p.ends_with("答案："));
    }

    #[test]
    fn pli_adds_one_line() {
        let ds = bundled_dataset();
        let tp = PromptTemplates::bundled();
        for lang in LanguageId::ALL {
            let plain = compose_prompt(&tp, &ds[3], lang, Ar, 2, Method::None).unwrap();
            let pli = compose_prompt(&tp, &ds[3], lang, Ar, 2, Method::Pli).unwrap();
            let mut lines: Vec<&str> = pli.lines().collect();
            assert_eq!(lines.remove(1), tp.get(lang).language_directive);
            assert_eq!(lines.join("\n"), plain);
        }
    }

    #[test]
    fn monolingual_with_four_exemplars() {
        let ds = bundled_dataset();
        let p = compose_prompt(&PromptTemplates::bundled(), &ds[5], En, En, 4, Method::None).unwrap();
        assert_eq!(p.lines().filter(|l| l.starts_with("Answer: ")).count(), 4);
        assert_eq!(p.lines().count(), 1 + 8 + ds[5].contexts.len() + 2);
    }

    #[test]
    fn too_few_exemplars() {
        let ds = bundled_dataset();
        let r = compose_prompt(&PromptTemplates::bundled(), &ds[0], Ru, Ru, 9, Method::None);
        assert!(matches!(r, Err(Error::MissingField(_))));
    }

    #[test]
    fn incomplete_template_file() {
        assert!(matches!(PromptTemplates::parse("{}"), Err(Error::Schema(p)) if p.len() == 4));
    }
}
