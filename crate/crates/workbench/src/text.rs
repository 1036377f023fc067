//! Pieces shared by the tree and rule text formats.

use cuephrase_core::corpus::{ClassLabel, Feature, Value};

use crate::error::{Result, WorkbenchError};

/// Feature by code (`P-P`) or by its long description
/// (`position in intonational phrase`).
pub(crate) fn feature_named(s: &str) -> Option<Feature> {
    let s = s.trim();
    Feature::from_code(s).or_else(|| {
        Feature::ALL
            .iter()
            .copied()
            .find(|f| f.description().eq_ignore_ascii_case(s))
    })
}

pub(crate) fn parse_feature(line: usize, s: &str) -> Result<Feature> {
    feature_named(s).ok_or_else(|| WorkbenchError::parse(line, None, format!("unknown feature {:?}", s.trim())))
}

pub(crate) fn parse_value(line: usize, feature: Feature, s: &str) -> Result<Value> {
    let s = s.trim();
    let v = if feature.is_numeric() {
        s.parse().ok().map(Value::Num)
    } else {
        feature.parse_symbol(s).map(Value::Sym)
    };
    v.ok_or_else(|| {
        WorkbenchError::parse(line, None, format!("{s:?} is not a value of {}", feature.code()))
    })
}

pub(crate) fn parse_class(line: usize, s: &str) -> Result<ClassLabel> {
    ClassLabel::parse(s.trim())
        .ok_or_else(|| WorkbenchError::parse(line, None, format!("unknown class {:?}", s.trim())))
}

pub(crate) fn value_text(feature: Feature, v: Value) -> String {
    match v {
        Value::Num(n) => n.to_string(),
        Value::Sym(s) => feature.symbol_name(s).unwrap_or("?").to_string(),
    }
}

/// Nonblank lines with their 1-based number and leading-space count.
pub(crate) fn indented_lines(text: &str) -> Vec<(usize, usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.is_empty())
        .map(|(n, l)| {
            let body = l.trim_start_matches(' ');
            (n, l.len() - body.len(), body)
        })
        .collect()
}

/// Splits `<lhs> <op> <rhs>` at the earliest of `ops`, each of which is
/// matched with a space on both sides.
pub(crate) fn split_op<'a>(s: &'a str, ops: &[&'a str]) -> Option<(&'a str, &'a str, &'a str)> {
    ops.iter()
        .filter_map(|op| {
            let pat = format!(" {op} ");
            s.find(&pat).map(|i| (i, *op, pat.len()))
        })
        .min_by_key(|&(i, _, _)| i)
        .map(|(i, op, n)| (&s[..i], op, &s[i + n..]))
}
