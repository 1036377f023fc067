//! Tables of error estimates, one section per learner.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use cuephrase_core::eval::ErrorEstimate;

use crate::plan::{Mode, Subset};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    /// Feature-set name, or the learner name for models that use fixed
    /// features.
    pub name: String,
    /// One estimate per report subset, in the report's subset order.
    pub estimates: Vec<ErrorEstimate>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Section {
    pub learner: String,
    pub mode: Option<Mode>,
    pub rows: Vec<Row>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    /// Human-readable description of the design, printed first.
    pub title: String,
    pub subsets: Vec<Subset>,
    pub sections: Vec<Section>,
}

/// `24.6 ± 3.0`: percentages with one decimal.
pub fn format_estimate(e: &ErrorEstimate) -> String {
    format!("{:.1} ± {:.1}", e.rate * 100.0, e.margin * 100.0)
}

pub fn format_report(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {}", r.title);
    for s in &r.sections {
        out.push('\n');
        match s.mode {
            Some(m) => {
                let _ = writeln!(out, "## {} ({})", s.learner, m.name());
            }
            None => {
                let _ = writeln!(out, "## {}", s.learner);
            }
        }
        out.push_str("feature-set");
        for sub in &r.subsets {
            out.push('\t');
            out.push_str(sub.name());
        }
        out.push('\n');
        for row in &s.rows {
            out.push_str(&row.name);
            for e in &row.estimates {
                out.push('\t');
                out.push_str(&format_estimate(e));
            }
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use cuephrase_core::eval::holdout_ci;

    #[test]
    fn row_layout() {
        let r = Report {
            title: "t".into(),
            subsets: vec![Subset::Classifiable, Subset::NonConjuncts],
            sections: vec![Section {
                learner: "default".into(),
                mode: Some(Mode::ThreeClass),
                rows: vec![Row {
                    name: "default".into(),
                    estimates: vec![holdout_ci(0.388, 878).unwrap(), holdout_ci(0.408, 495).unwrap()],
                }],
            }],
        };
        assert_eq!(
            format_report(&r),
            "# t\n\n## default (3-class)\nfeature-set\tclassifiable\tnon_conjuncts\ndefault\t38.8 ± 3.3\t40.8 ± 4.4\n"
        );
    }
}
