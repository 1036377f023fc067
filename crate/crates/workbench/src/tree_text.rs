//! Indented if/elseif text for decision trees.
//!
//! ```text
//! if P-P <= 1 then discourse
//! elseif P-P > 1 then
//!   if I-L <= 1 then discourse
//!   elseif I-L > 1 then sentential
//! ```
//!
//! Each sibling branch is one line; a line ending in `then` opens a subtree
//! indented two more spaces. Symbolic branches read `f = v`, or
//! `f in {v, w}` for grouped values. A tree that is a single leaf is written
//! as the bare class name. The parser also takes the long feature names
//! and `≤`.

use cuephrase_core::corpus::{Feature, FeatureMask, Value};
use cuephrase_core::dtree::{Branch, DecisionTree, TreeNode};

use crate::error::{Result, WorkbenchError};
use crate::text::{indented_lines, parse_class, parse_feature, parse_value, split_op, value_text};

pub fn write_tree(tree: &DecisionTree) -> String {
    let mut out = String::new();
    match &tree.root {
        TreeNode::Leaf { class, .. } => {
            out.push_str(class.name());
            out.push('\n');
        }
        node => write_node(node, 0, &mut out),
    }
    out
}

fn write_line(out: &mut String, depth: usize, first: bool, cond: &str, child: &TreeNode) {
    out.push_str(&"  ".repeat(depth));
    out.push_str(if first { "if " } else { "elseif " });
    out.push_str(cond);
    out.push_str(" then");
    match child {
        TreeNode::Leaf { class, .. } => {
            out.push(' ');
            out.push_str(class.name());
            out.push('\n');
        }
        sub => {
            out.push('\n');
            write_node(sub, depth + 1, out);
        }
    }
}

fn write_node(node: &TreeNode, depth: usize, out: &mut String) {
    match node {
        TreeNode::Leaf { .. } => unreachable!("leaves are written by their parent"),
        TreeNode::Symbolic { feature, branches } => {
            for (i, b) in branches.iter().enumerate() {
                let names: Vec<String> = b
                    .values
                    .iter()
                    .map(|&v| value_text(*feature, Value::Sym(v)))
                    .collect();
                let cond = if names.len() == 1 {
                    format!("{} = {}", feature.code(), names[0])
                } else {
                    format!("{} in {{{}}}", feature.code(), names.join(", "))
                };
                write_line(out, depth, i == 0, &cond, &b.node);
            }
        }
        TreeNode::Threshold {
            feature,
            threshold,
            le,
            gt,
            gt_first,
        } => {
            let le_line = (format!("{} <= {threshold}", feature.code()), &**le);
            let gt_line = (format!("{} > {threshold}", feature.code()), &**gt);
            let order = if *gt_first { [gt_line, le_line] } else { [le_line, gt_line] };
            for (i, (cond, child)) in order.iter().enumerate() {
                write_line(out, depth, i == 0, cond, child);
            }
        }
    }
}

enum Cond {
    Le(u32),
    Gt(u32),
    In(Vec<u8>),
}

fn parse_cond(line: usize, s: &str) -> Result<(Feature, Cond)> {
    // Long feature names may contain " in ", so the set form is matched
    // together with its brace.
    let (lhs, op, rhs) = split_op(s, &["<=", "≤", ">", "="])
        .or_else(|| s.find(" in {").map(|i| (&s[..i], "in", &s[i + 4..])))
        .ok_or_else(|| WorkbenchError::parse(line, None, format!("no test in {s:?}")))?;
    let feature = parse_feature(line, lhs)?;
    let num = |rhs: &str| match parse_value(line, feature, rhs)? {
        Value::Num(n) => Ok(n),
        Value::Sym(_) => Err(WorkbenchError::parse(line, None, format!("{} is not numeric", feature.code()))),
    };
    let sym = |rhs: &str| match parse_value(line, feature, rhs)? {
        Value::Sym(s) => Ok(s),
        Value::Num(_) => Err(WorkbenchError::parse(line, None, format!("{} is numeric", feature.code()))),
    };
    let cond = match op {
        "<=" | "≤" => Cond::Le(num(rhs)?),
        ">" => Cond::Gt(num(rhs)?),
        "=" => Cond::In(vec![sym(rhs)?]),
        _ => {
            let inner = rhs
                .trim()
                .strip_prefix('{')
                .and_then(|r| r.strip_suffix('}'))
                .ok_or_else(|| WorkbenchError::parse(line, None, "expected {..} after in"))?;
            Cond::In(inner.split(',').map(sym).collect::<Result<_>>()?)
        }
    };
    Ok((feature, cond))
}

struct Parser<'a> {
    lines: Vec<(usize, usize, &'a str)>,
    pos: usize,
}

impl Parser<'_> {
    fn node(&mut self, depth: usize) -> Result<TreeNode> {
        let mut arms: Vec<(usize, Feature, Cond, TreeNode)> = Vec::new();
        while let Some(&(line, indent, body)) = self.lines.get(self.pos) {
            if indent != depth * 2 {
                if indent > depth * 2 || arms.is_empty() {
                    return Err(WorkbenchError::parse(line, None, "unexpected indentation"));
                }
                break;
            }
            let rest = if arms.is_empty() {
                body.strip_prefix("if ")
                    .ok_or_else(|| WorkbenchError::parse(line, None, "expected if"))?
            } else {
                match body.strip_prefix("elseif ") {
                    Some(r) => r,
                    None => break,
                }
            };
            self.pos += 1;
            let (cond, child) = if let Some(c) = rest.strip_suffix(" then") {
                (c, self.node(depth + 1)?)
            } else {
                let (c, class) = rest
                    .rsplit_once(" then ")
                    .ok_or_else(|| WorkbenchError::parse(line, None, "expected then"))?;
                (c, TreeNode::leaf(parse_class(line, class)?))
            };
            let (feature, cond) = parse_cond(line, cond)?;
            arms.push((line, feature, cond, child));
        }
        let Some(&(first_line, feature, ..)) = arms.first() else {
            let line = self.lines.get(self.pos).map_or(0, |l| l.0);
            return Err(WorkbenchError::parse(line, None, "expected a subtree"));
        };
        if let Some(a) = arms.iter().find(|a| a.1 != feature) {
            return Err(WorkbenchError::parse(a.0, None, "sibling branches test different features"));
        }
        if feature.is_numeric() {
            let err = || WorkbenchError::parse(first_line, None, "a numeric test needs one <= and one > branch on the same threshold");
            let mut it = arms.into_iter();
            let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
                return Err(err());
            };
            let (gt_first, t, le, gt) = match (a.2, b.2) {
                (Cond::Le(x), Cond::Gt(y)) if x == y => (false, x, a.3, b.3),
                (Cond::Gt(x), Cond::Le(y)) if x == y => (true, x, b.3, a.3),
                _ => return Err(err()),
            };
            Ok(TreeNode::Threshold {
                feature,
                threshold: t,
                le: Box::new(le),
                gt: Box::new(gt),
                gt_first,
            })
        } else {
            let mut seen = Vec::new();
            let mut branches = Vec::new();
            for (line, _, cond, node) in arms {
                let Cond::In(values) = cond else {
                    return Err(WorkbenchError::parse(line, None, "symbolic features take = or in"));
                };
                if values.iter().any(|v| seen.contains(v)) {
                    return Err(WorkbenchError::parse(line, None, "value routed to two branches"));
                }
                seen.extend(values.iter().copied());
                branches.push(Branch { values, node });
            }
            Ok(TreeNode::Symbolic { feature, branches })
        }
    }
}

/// Parses the text form. Leaf supports are zero and the tree's feature set
/// is the set of features it tests.
pub fn parse_tree(text: &str) -> Result<DecisionTree> {
    let lines = indented_lines(text);
    let Some(&(line, indent, body)) = lines.first() else {
        return Err(WorkbenchError::parse(1, None, "empty tree"));
    };
    if indent != 0 {
        return Err(WorkbenchError::parse(line, None, "unexpected indentation"));
    }
    if !body.starts_with("if ") {
        if lines.len() > 1 {
            return Err(WorkbenchError::parse(lines[1].0, None, "text after a leaf tree"));
        }
        return Ok(DecisionTree::new(TreeNode::leaf(parse_class(line, body)?), FeatureMask::EMPTY));
    }
    let mut p = Parser { lines, pos: 0 };
    let root = p.node(0)?;
    if let Some(&(line, ..)) = p.lines.get(p.pos) {
        return Err(WorkbenchError::parse(line, None, "text after the end of the tree"));
    }
    let features = root.tested_features();
    Ok(DecisionTree::new(root, features))
}
