//! Reading and writing trained models in either serialization.

use std::path::Path;

use cuephrase_core::baselines::BaselineModel;
use cuephrase_core::Model;

use crate::error::{read_file, Result};
use crate::rules_text::{parse_ruleset, write_ruleset};
use crate::tree_text::{parse_tree, write_tree};

const MANUAL_PROSODIC: &str = "manual-prosodic";
const MANUAL_TEXTUAL: &str = "manual-textual";

/// Trees and rulesets in their text forms; the hand-built models by name;
/// the default-class baseline as a ruleset with no rules.
pub fn write_model_text(m: &Model) -> String {
    match m {
        Model::Tree(t) => write_tree(t),
        Model::Rules(r) => write_ruleset(r),
        Model::Baseline(BaselineModel::ManualProsodic) => format!("{MANUAL_PROSODIC}\n"),
        Model::Baseline(BaselineModel::ManualTextual) => format!("{MANUAL_TEXTUAL}\n"),
        Model::Baseline(BaselineModel::DefaultClass(c)) => format!("default is on {}\n", c.name()),
    }
}

/// Tells the formats apart by their lines: rulesets end with a
/// `default is on` line, anything else is a tree.
pub fn parse_model_text(text: &str) -> Result<Model> {
    let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
    match lines.as_slice() {
        [MANUAL_PROSODIC] => return Ok(Model::Baseline(BaselineModel::ManualProsodic)),
        [MANUAL_TEXTUAL] => return Ok(Model::Baseline(BaselineModel::ManualTextual)),
        _ => {}
    }
    if lines.iter().any(|l| l.starts_with("default is on ")) {
        let rs = parse_ruleset(text)?;
        if rs.rules.is_empty() {
            return Ok(Model::Baseline(BaselineModel::DefaultClass(rs.default_class)));
        }
        return Ok(Model::Rules(rs));
    }
    Ok(Model::Tree(parse_tree(text)?))
}

pub fn model_to_json(m: &Model) -> String {
    let mut s = serde_json::to_string_pretty(m).expect("models always serialize");
    s.push('\n');
    s
}

pub fn model_from_json(text: &str) -> Result<Model> {
    Ok(serde_json::from_str(text)?)
}

/// Loads `.json` files as structured models and anything else as text.
pub fn read_model(path: &Path) -> Result<Model> {
    let text = read_file(path)?;
    let parsed = if path.extension().is_some_and(|e| e == "json") {
        model_from_json(&text)
    } else {
        parse_model_text(&text)
    };
    parsed.map_err(|e| e.in_file(path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use cuephrase_core::corpus::fixtures::position_ruleset;
    use cuephrase_core::ClassLabel;

    #[test]
    fn text_kinds() {
        for m in [
            Model::Rules(position_ruleset()),
            Model::Baseline(BaselineModel::ManualProsodic),
            Model::Baseline(BaselineModel::ManualTextual),
            Model::Baseline(BaselineModel::DefaultClass(ClassLabel::Sentential)),
        ] {
            assert_eq!(parse_model_text(&write_model_text(&m)).unwrap(), m);
        }
        assert!(matches!(parse_model_text("discourse\n").unwrap(), Model::Tree(_)));
    }

    #[test]
    fn json_round_trip() {
        let m = Model::Rules(position_ruleset());
        assert_eq!(model_from_json(&model_to_json(&m)).unwrap(), m);
    }
}
