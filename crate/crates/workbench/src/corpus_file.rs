//! Tab-delimited corpus files.
//!
//! One header row of feature codes plus `JUDGE1`/`JUDGE2` (or a single
//! `Class` column), then one example per row. `?` is an ambivalent judge,
//! `NA` a missing textual value, and `t`/`f` are accepted for booleans.
//! Starred columns are optional; when present they must agree with the
//! value derived from their source column.

use std::fmt::Write as _;
use std::path::Path;

use cuephrase_core::corpus::{derive_class, ClassLabel, Dataset, Example, Feature, FeatureMask, Features, JudgeLabel, PartOfSpeech, Value};

use crate::error::{read_file, Result, WorkbenchError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Column {
    Feature(Feature),
    Judge1,
    Judge2,
    Class,
}

impl Column {
    fn parse(s: &str) -> Option<Column> {
        match s {
            "JUDGE1" => Some(Column::Judge1),
            "JUDGE2" => Some(Column::Judge2),
            "Class" | "CLASS" => Some(Column::Class),
            _ => Feature::from_code(s).map(Column::Feature),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Column::Feature(f) => f.code(),
            Column::Judge1 => "JUDGE1",
            Column::Judge2 => "JUDGE2",
            Column::Class => "Class",
        }
    }
}

/// A parsed row before labels are resolved.
struct Row {
    line: usize,
    features: Features,
    judges: (Option<JudgeLabel>, Option<JudgeLabel>),
    class: Option<ClassLabel>,
}

struct Parsed {
    columns: Vec<Column>,
    available: FeatureMask,
    rows: Vec<Row>,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
}

fn parse_header(line: usize, header: &str) -> Result<(Vec<Column>, FeatureMask)> {
    let mut columns: Vec<Column> = Vec::new();
    for name in header.split('\t') {
        let name = name.trim();
        let col = Column::parse(name)
            .ok_or_else(|| WorkbenchError::parse(line, Some(name), "unknown header code"))?;
        if columns.contains(&col) {
            return Err(WorkbenchError::parse(line, Some(name), "duplicate column"));
        }
        columns.push(col);
    }
    let raw: FeatureMask = columns
        .iter()
        .filter_map(|c| match c {
            Column::Feature(f) => Some(*f),
            _ => None,
        })
        .collect();
    for f in raw.iter().filter(|f| f.is_derived()) {
        if !raw.contains(f.source()) {
            return Err(WorkbenchError::parse(
                line,
                Some(f.code()),
                format!("derived column needs its source column {}", f.source().code()),
            ));
        }
    }
    let available = Feature::ALL
        .iter()
        .copied()
        .filter(|f| raw.contains(f.source()))
        .collect();
    Ok((columns, available))
}

fn parse_cell(feature: Feature, cell: &str) -> Option<Value> {
    if feature.is_numeric() {
        cell.parse::<u32>().ok().map(Value::Num)
    } else {
        feature.parse_symbol(cell).map(Value::Sym)
    }
}

fn parse_text(text: &str) -> Result<Parsed> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| WorkbenchError::parse(1, None, "missing header row"))?;
    let (columns, available) = parse_header(hline, header)?;
    let mut rows = Vec::new();
    for (line, text) in lines {
        let cells: Vec<&str> = text.split('\t').map(str::trim).collect();
        if cells.len() != columns.len() {
            return Err(WorkbenchError::parse(
                line,
                None,
                format!("expected {} fields, found {}", columns.len(), cells.len()),
            ));
        }
        let mut row = Row {
            line,
            features: Features::default(),
            judges: (None, None),
            class: None,
        };
        let mut derived = Vec::new();
        for (&col, &cell) in columns.iter().zip(&cells) {
            let bad = || WorkbenchError::parse(line, Some(col.name()), format!("invalid value {cell:?}"));
            match col {
                Column::Feature(f) => {
                    let v = parse_cell(f, cell).ok_or_else(bad)?;
                    if f.is_derived() {
                        derived.push((f, v));
                    } else {
                        row.features.set_value(f, v).map_err(|_| bad())?;
                    }
                }
                Column::Judge1 => row.judges.0 = Some(JudgeLabel::parse(cell).ok_or_else(bad)?),
                Column::Judge2 => row.judges.1 = Some(JudgeLabel::parse(cell).ok_or_else(bad)?),
                Column::Class => row.class = Some(ClassLabel::parse(cell).ok_or_else(bad)?),
            }
        }
        for (f, v) in derived {
            if row.features.value(f) != Some(v) {
                return Err(WorkbenchError::parse(
                    line,
                    Some(f.code()),
                    format!(
                        "does not match the value derived from {}",
                        f.source().code()
                    ),
                ));
            }
        }
        if let Err(v) = row.features.validate() {
            let col = match v {
                cuephrase_core::corpus::Violation::ZeroInteger(f)
                | cuephrase_core::corpus::Violation::PositionExceedsLength(f)
                | cuephrase_core::corpus::Violation::PartialNa(f) => f.code(),
                cuephrase_core::corpus::Violation::OnlyInLongPhrase => Feature::Composition.code(),
            };
            return Err(WorkbenchError::parse(line, Some(col), v.to_string()));
        }
        rows.push(row);
    }
    Ok(Parsed {
        columns,
        available,
        rows,
    })
}

/// Parses a labeled corpus. Derived features are filled in, row order is
/// kept, and every error names the line and column.
pub fn parse_corpus(text: &str, provenance: &str) -> Result<Dataset> {
    let parsed = parse_text(text)?;
    let has = |c| parsed.columns.contains(&c);
    let judged = has(Column::Judge1) && has(Column::Judge2);
    if !judged && !has(Column::Class) {
        return Err(WorkbenchError::parse(
            1,
            None,
            "labeled corpus needs JUDGE1 and JUDGE2 columns or a Class column",
        ));
    }
    let mut examples = Vec::with_capacity(parsed.rows.len());
    for row in parsed.rows {
        let e = match (row.judges, row.class) {
            ((Some(j1), Some(j2)), class) => {
                if class.is_some_and(|c| c != derive_class(j1, j2)) {
                    return Err(WorkbenchError::parse(
                        row.line,
                        Some("Class"),
                        "class disagrees with the judges",
                    ));
                }
                Example::new(row.features, j1, j2)
            }
            (_, Some(class)) => Example::with_class(row.features, class),
            _ => unreachable!("header checked"),
        };
        examples.push(e);
    }
    Ok(Dataset::with_available(examples, parsed.available, provenance))
}

/// Parses feature rows for prediction. Label columns are allowed and
/// ignored.
pub fn parse_features(text: &str) -> Result<(Vec<Features>, FeatureMask)> {
    let parsed = parse_text(text)?;
    Ok((
        parsed.rows.into_iter().map(|r| r.features).collect(),
        parsed.available,
    ))
}

pub fn read_corpus(path: &Path) -> Result<Dataset> {
    let text = read_file(path)?;
    parse_corpus(&text, &path.display().to_string()).map_err(|e| e.in_file(path))
}

pub fn read_features(path: &Path) -> Result<(Vec<Features>, FeatureMask)> {
    let text = read_file(path)?;
    parse_features(&text).map_err(|e| e.in_file(path))
}

fn cell(feature: Feature, v: Value) -> String {
    match v {
        Value::Num(n) => n.to_string(),
        Value::Sym(s) if feature == Feature::PartOfSpeech => PartOfSpeech::from_index(s)
            .expect("valid symbol")
            .corpus_token()
            .to_string(),
        Value::Sym(s) => feature.symbol_name(s).expect("valid symbol").to_string(),
    }
}

/// Writes every available column, starred ones included, then both judges.
pub fn write_corpus(d: &Dataset) -> String {
    let features: Vec<Feature> = d.available.iter().collect();
    let mut out = String::new();
    for f in &features {
        out.push_str(f.code());
        out.push('\t');
    }
    out.push_str("JUDGE1\tJUDGE2\n");
    for e in d {
        for &f in &features {
            let v = e.value(f).expect("available feature has a value");
            out.push_str(&cell(f, v));
            out.push('\t');
        }
        let _ = writeln!(out, "{}\t{}", e.judge1.name(), e.judge2.name());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use cuephrase_core::corpus::fixtures::{annotated_first, annotated_second};
    use cuephrase_core::corpus::{AbstractAccent, Flag};

    const ANNOTATED: &str = "P-L\tP-P\tI-L\tI-P\tI-C\tA\tA*\tC-P\tC-S\tO-P\tO-P*\tO-S\tO-S*\tPOS\tT\tJUDGE1\tJUDGE2
9\t1\t1\t1\tonly\tH*+L\tcomplex\tf\tt\tpar.\tt\tf\tf\tadv.\tnow\tD\tD
9\t2\t8\t1\tother\tH*\tH*\tt\tf\tf\tf\tf\tf\tadv.\tnow\tS\tS
";

    #[test]
    fn example_rows_parse() {
        let d = parse_corpus(ANNOTATED, "annotated").unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.examples[0], annotated_first());
        assert_eq!(d.examples[1], annotated_second());
        assert_eq!(d.examples[0].features.accent_star(), Some(AbstractAccent::Complex));
        assert_eq!(d.examples[0].features.preceding_orthography_star(), Some(Flag::True));
        assert_eq!(d.examples[0].class(), ClassLabel::Discourse);
        assert_eq!(d.examples[1].class(), ClassLabel::Sentential);
        assert_eq!(d.available, FeatureMask::all());
    }

    #[test]
    fn round_trip() {
        let d = parse_corpus(ANNOTATED, "x").unwrap();
        let text = write_corpus(&d);
        assert_eq!(parse_corpus(&text, "x").unwrap(), d);
        assert_eq!(write_corpus(&parse_corpus(&text, "x").unwrap()), text);
    }

    fn err_at(text: &str) -> (usize, Option<String>, String) {
        match parse_corpus(text, "x").unwrap_err() {
            WorkbenchError::Parse { at, message } => (at.line, at.column, message),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn position_beyond_length() {
        let (line, col, msg) = err_at("I-L\tI-P\tJUDGE1\tJUDGE2\n1\t1\tD\tD\n2\t5\tS\tS\n");
        assert_eq!((line, col.as_deref()), (3, Some("I-P")));
        assert!(msg.contains("position exceeds length"), "{msg}");
    }

    #[test]
    fn rejects_bad_values_and_headers() {
        let (line, col, _) = err_at("A\tJUDGE1\tJUDGE2\nH*\tD\tX\n");
        assert_eq!((line, col.as_deref()), (2, Some("JUDGE2")));
        let (_, col, _) = err_at("O-S\tClass\nparagraph\tdisc.\n");
        assert_eq!(col.as_deref(), Some("O-S"));
        let (line, col, _) = err_at("A\tXX\n");
        assert_eq!((line, col.as_deref()), (1, Some("XX")));
        let (_, col, _) = err_at("A\tA*\tClass\nH*\tcomplex\tdisc.\n");
        assert_eq!(col.as_deref(), Some("A*"));
        let (_, col, msg) = err_at("O-P\tPOS\tClass\nNA\tadv.\tdisc.\n");
        assert_eq!(col.as_deref(), Some("POS"));
        assert!(msg.contains("NA"), "{msg}");
        let (line, _, _) = err_at("A\tClass\nH*\n");
        assert_eq!(line, 2);
    }

    #[test]
    fn unlabeled_rows() {
        let (rows, mask) = parse_features("O-P\nf\ncomma\n").unwrap();
        assert_eq!(rows.len(), 2);
        assert!(mask.contains(Feature::AbstractPrecedingOrthography));
        assert!(parse_corpus("O-P\nf\n", "x").is_err());
    }
}
