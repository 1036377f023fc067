//! One-rule-per-line text for rulesets.
//!
//! ```text
//! if (A = deaccented) ∧ (T = say) then discourse
//! if T = finally then discourse
//! default is on sentential
//! ```
//!
//! A lone test is unparenthesised. Two numeric tests bounding the same
//! feature print as an interval, `(7 ≥ P-P ≥ 4)`, or as `P-P = 4` when the
//! bounds meet. Rules are written most accurate first, which is the order
//! in which they are consulted; read back, the file order decides. The
//! parser also takes `>=`, `<=`, `!=`, `^`, long feature names, and
//! `lo ≤ f ≤ hi`.

use cuephrase_core::corpus::{Feature, Value};
use cuephrase_core::rules::{ConflictStrategy, Op, Rule, RuleSet, Test};

use crate::error::{Result, WorkbenchError};
use crate::text::{parse_class, parse_feature, parse_value, split_op, value_text};

enum Item {
    Single(Test),
    Interval(Feature, u32, u32),
}

fn items(tests: &[Test]) -> Vec<Item> {
    let mut used = vec![false; tests.len()];
    let mut out = Vec::new();
    for i in 0..tests.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let t = tests[i];
        let partner = match t.op {
            Op::Ge => Op::Le,
            Op::Le => Op::Ge,
            _ => {
                out.push(Item::Single(t));
                continue;
            }
        };
        let j = (i + 1..tests.len()).find(|&j| !used[j] && tests[j].feature == t.feature && tests[j].op == partner);
        match j {
            Some(j) => {
                used[j] = true;
                let (lo, hi) = if t.op == Op::Ge { (t, tests[j]) } else { (tests[j], t) };
                let n = |v: Value| v.as_num().expect("numeric test");
                out.push(Item::Interval(t.feature, n(lo.value), n(hi.value)));
            }
            None => out.push(Item::Single(t)),
        }
    }
    out
}

fn item_text(item: &Item) -> String {
    match *item {
        Item::Single(t) => format!("{} {} {}", t.feature.code(), t.op.symbol(), value_text(t.feature, t.value)),
        Item::Interval(f, lo, hi) if lo == hi => format!("{} = {lo}", f.code()),
        Item::Interval(f, lo, hi) => format!("{hi} ≥ {} ≥ {lo}", f.code()),
    }
}

pub fn write_rule(rule: &Rule) -> String {
    let items = items(&rule.tests);
    let cond = match items.len() {
        0 => "true".to_string(),
        1 => item_text(&items[0]),
        _ => items
            .iter()
            .map(|i| format!("({})", item_text(i)))
            .collect::<Vec<_>>()
            .join(" ∧ "),
    };
    format!("if {cond} then {}", rule.class.name())
}

pub fn write_ruleset(rs: &RuleSet) -> String {
    let ordered = match rs.strategy {
        ConflictStrategy::MostAccurate => rs.sorted_by_accuracy(),
        ConflictStrategy::First => rs.clone(),
    };
    let mut out = String::new();
    for r in &ordered.rules {
        out.push_str(&write_rule(r));
        out.push('\n');
    }
    out.push_str("default is on ");
    out.push_str(rs.default_class.name());
    out.push('\n');
    out
}

const OPS: [&str; 7] = ["≥", ">=", "≤", "<=", "≠", "!=", "="];

fn op_of(s: &str) -> Op {
    match s {
        "≥" | ">=" => Op::Ge,
        "≤" | "<=" => Op::Le,
        "≠" | "!=" => Op::Neq,
        _ => Op::Eq,
    }
}

fn make(line: usize, feature: Feature, op: Op, value: Value) -> Result<Test> {
    Test::new(feature, op, value).map_err(|e| WorkbenchError::parse(line, None, e.to_string()))
}

fn parse_item(line: usize, s: &str) -> Result<Vec<Test>> {
    let s = s.trim();
    let s = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(s)
        .trim();
    let (lhs, op, rhs) = split_op(s, &OPS)
        .ok_or_else(|| WorkbenchError::parse(line, None, format!("no test in {s:?}")))?;
    if let Some((mid, op2, rhs2)) = split_op(rhs, &OPS) {
        let feature = parse_feature(line, mid)?;
        let (a, b) = (parse_value(line, feature, lhs)?, parse_value(line, feature, rhs2)?);
        let (lo, hi) = match (op_of(op), op_of(op2)) {
            (Op::Ge, Op::Ge) => (b, a),
            (Op::Le, Op::Le) => (a, b),
            _ => return Err(WorkbenchError::parse(line, None, format!("bad interval {s:?}"))),
        };
        return Ok(vec![make(line, feature, Op::Ge, lo)?, make(line, feature, Op::Le, hi)?]);
    }
    let feature = parse_feature(line, lhs)?;
    let value = parse_value(line, feature, rhs)?;
    match op_of(op) {
        Op::Eq if feature.is_numeric() => Ok(vec![
            make(line, feature, Op::Ge, value)?,
            make(line, feature, Op::Le, value)?,
        ]),
        o => Ok(vec![make(line, feature, o, value)?]),
    }
}

pub fn parse_rule(line: usize, s: &str) -> Result<Rule> {
    let rest = s
        .trim()
        .strip_prefix("if ")
        .ok_or_else(|| WorkbenchError::parse(line, None, "expected if"))?;
    let (cond, class) = rest
        .rsplit_once(" then ")
        .ok_or_else(|| WorkbenchError::parse(line, None, "expected then"))?;
    let class = parse_class(line, class)?;
    let mut tests = Vec::new();
    if cond.trim() != "true" {
        for part in cond.split(['∧', '^']) {
            tests.extend(parse_item(line, part)?);
        }
    }
    Ok(Rule::new(tests, class))
}

/// Parses the text form. Rules keep file order and carry no accuracy, so
/// the first matching rule fires.
pub fn parse_ruleset(text: &str) -> Result<RuleSet> {
    let mut rules = Vec::new();
    let mut default = None;
    for (i, l) in text.lines().enumerate() {
        let line = i + 1;
        let l = l.trim();
        if l.is_empty() {
            continue;
        }
        if default.is_some() {
            return Err(WorkbenchError::parse(line, None, "text after the default line"));
        }
        if let Some(c) = l.strip_prefix("default is on ") {
            default = Some(parse_class(line, c)?);
        } else {
            rules.push(parse_rule(line, l)?);
        }
    }
    let default = default.ok_or_else(|| {
        WorkbenchError::parse(text.lines().count().max(1), None, "missing default is on line")
    })?;
    Ok(RuleSet::new(rules, default))
}
