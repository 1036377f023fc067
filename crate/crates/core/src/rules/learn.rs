//! Rule growing, pruning and the covering loop.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Op, Rule, RuleConfig, RuleSet, Test};
use crate::corpus::{ClassLabel, Dataset, FeatureMask};
use crate::math::{log2, TIE_EPS};
use crate::model::Classifier;
use crate::table::{decode, Table};
use crate::{Error, Result};

/// A test on a table column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct ColTest {
    col: usize,
    op: Op,
    value: u32,
}

impl ColTest {
    fn holds(&self, t: &Table, row: usize) -> bool {
        self.op.holds(t.cols[self.col][row], self.value)
    }

    fn to_test(self, t: &Table) -> Test {
        let feature = t.features[self.col];
        Test {
            feature,
            op: self.op,
            value: decode(feature, self.value),
        }
    }
}

fn covers(t: &Table, tests: &[ColTest], row: usize) -> bool {
    tests.iter().all(|c| c.holds(t, row))
}

fn covered(t: &Table, tests: &[ColTest], rows: &[usize]) -> Vec<usize> {
    rows.iter().copied().filter(|&r| covers(t, tests, r)).collect()
}

/// Laplace-corrected accuracy of a rule that fires on `covered` examples,
/// `correct` of them of its class, in a problem with `classes` classes.
pub fn laplace(correct: usize, covered: usize, classes: usize) -> f64 {
    (correct as f64 + 1.0) / (covered as f64 + classes as f64)
}

fn foil_gain(p: usize, n: usize, big_p: usize, big_n: usize) -> f64 {
    if p == 0 {
        return f64::NEG_INFINITY;
    }
    let (p, n, bp, bn) = (p as f64, n as f64, big_p as f64, big_n as f64);
    p * (log2(p / (p + n)) - log2(bp / (bp + bn)))
}

/// Scans every test on the examples still covered and returns the one
/// with the largest FOIL gain. Ties go to the earlier feature, then the op
/// order `=`, `≠`, `≤`, `≥`, then the smaller value.
fn best_test(t: &Table, pos: &[usize], neg: &[usize]) -> Option<(ColTest, f64)> {
    let (bp, bn) = (pos.len(), neg.len());
    let mut best: Option<(ColTest, f64)> = None;
    let mut consider = |c: ColTest, p: usize, n: usize| {
        let g = foil_gain(p, n, bp, bn);
        if g > TIE_EPS && best.map_or(true, |(_, bg)| g > bg + TIE_EPS) {
            best = Some((c, g));
        }
    };
    for (col, &feature) in t.features.iter().enumerate() {
        let values = &t.cols[col];
        if feature.is_numeric() {
            let mut seen: Vec<u32> = pos.iter().chain(neg).map(|&r| values[r]).collect();
            seen.sort_unstable();
            seen.dedup();
            for op in [Op::Le, Op::Ge] {
                for &v in &seen {
                    let p = pos.iter().filter(|&&r| op.holds(values[r], v)).count();
                    let n = neg.iter().filter(|&&r| op.holds(values[r], v)).count();
                    consider(ColTest { col, op, value: v }, p, n);
                }
            }
        } else {
            let size = feature.domain_size();
            let mut pc = vec![0usize; size];
            let mut nc = vec![0usize; size];
            for &r in pos {
                pc[values[r] as usize] += 1;
            }
            for &r in neg {
                nc[values[r] as usize] += 1;
            }
            for op in [Op::Eq, Op::Neq] {
                for v in 0..size {
                    let (p, n) = match op {
                        Op::Eq => (pc[v], nc[v]),
                        _ => (bp - pc[v], bn - nc[v]),
                    };
                    consider(ColTest { col, op, value: v as u32 }, p, n);
                }
            }
        }
    }
    best
}

fn grow_rows(t: &Table, pos: &[usize], neg: &[usize]) -> Vec<ColTest> {
    let mut tests = Vec::new();
    let mut p = pos.to_vec();
    let mut n = neg.to_vec();
    while !n.is_empty() {
        let Some((c, _)) = best_test(t, &p, &n) else {
            break;
        };
        tests.push(c);
        p.retain(|&r| c.holds(t, r));
        n.retain(|&r| c.holds(t, r));
    }
    tests
}

fn laplace_on(t: &Table, tests: &[ColTest], class: ClassLabel, rows: &[usize], k: usize) -> f64 {
    let cov = covered(t, tests, rows);
    let correct = cov.iter().filter(|&&r| t.classes[r] == class).count();
    laplace(correct, cov.len(), k)
}

/// Drops trailing tests while the prune-set Laplace accuracy does not go
/// down. At least one test is kept; `positives` guards against a rule that
/// no longer fires on any example of its class.
fn prune_rows(
    t: &Table,
    mut tests: Vec<ColTest>,
    class: ClassLabel,
    prune: &[usize],
    positives: &[usize],
    classes: usize,
) -> Vec<ColTest> {
    if prune.is_empty() {
        return tests;
    }
    while tests.len() > 1 {
        let shorter = &tests[..tests.len() - 1];
        let keep = laplace_on(t, shorter, class, prune, classes)
            >= laplace_on(t, &tests, class, prune, classes) - TIE_EPS;
        if keep && positives.iter().any(|&r| covers(t, shorter, r)) {
            tests.pop();
        } else {
            break;
        }
    }
    tests
}

fn class_count(d: &Dataset) -> usize {
    d.class_counts().nonzero_classes().max(2)
}

/// Grows one rule for `class` from `pos` against `neg`, adding the test
/// with the highest FOIL gain until no negative is covered or no test has
/// positive gain.
pub fn grow_rule(
    pos: &Dataset,
    neg: &Dataset,
    features: FeatureMask,
    class: ClassLabel,
) -> Result<Rule> {
    if pos.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let both = Dataset::with_available(
        pos.iter().chain(neg.iter()).copied().collect(),
        pos.available & neg.available,
        "",
    );
    let t = Table::new(&both, features)?;
    let p: Vec<usize> = (0..pos.len()).collect();
    let n: Vec<usize> = (pos.len()..t.len()).collect();
    let tests = grow_rows(&t, &p, &n);
    Ok(Rule::new(tests.iter().map(|c| c.to_test(&t)).collect(), class))
}

/// Prunes `rule` against `prune`, keeping it firing on at least one
/// example of its class in `grow` or `prune`. An empty prune set leaves
/// the rule unchanged.
pub fn prune_rule(rule: &Rule, grow: &Dataset, prune: &Dataset) -> Result<Rule> {
    let all = Dataset::with_available(
        grow.iter().chain(prune.iter()).copied().collect(),
        grow.available & prune.available,
        "",
    );
    let mask: FeatureMask = rule.tests.iter().map(|t| t.feature).collect();
    let t = Table::new(&all, mask)?;
    let col = |f| t.features.iter().position(|&g| g == f).unwrap();
    let tests: Vec<ColTest> = rule
        .tests
        .iter()
        .map(|x| ColTest {
            col: col(x.feature),
            op: x.op,
            value: crate::table::encode(x.value),
        })
        .collect();
    let prune_rows_idx: Vec<usize> = (grow.len()..t.len()).collect();
    let positives: Vec<usize> = (0..t.len()).filter(|&r| t.classes[r] == rule.class).collect();
    let kept = prune_rows(&t, tests, rule.class, &prune_rows_idx, &positives, class_count(&all));
    let mut out = rule.clone();
    out.tests.truncate(kept.len());
    Ok(out)
}

/// Shuffles and splits 2:1.
fn split_two_to_one(rows: &[usize], rng: &mut ChaCha8Rng) -> (Vec<usize>, Vec<usize>) {
    let mut v = rows.to_vec();
    v.shuffle(rng);
    let cut = (2 * v.len()).div_ceil(3);
    let prune = v.split_off(cut);
    (v, prune)
}

struct Learned {
    rules: Vec<(Vec<ColTest>, ClassLabel)>,
    default_class: ClassLabel,
}

fn learn_orientation(
    t: &Table,
    targets: &[ClassLabel],
    default_class: ClassLabel,
    classes: usize,
    seed: u64,
) -> Learned {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut remaining: Vec<usize> = (0..t.len()).collect();
    let mut rules = Vec::new();
    for &class in targets {
        loop {
            let (pos, neg): (Vec<usize>, Vec<usize>) =
                remaining.iter().partition(|&&r| t.classes[r] == class);
            if pos.is_empty() {
                break;
            }
            let (pos_grow, pos_prune) = split_two_to_one(&pos, &mut rng);
            let (neg_grow, neg_prune) = split_two_to_one(&neg, &mut rng);
            let grown = grow_rows(t, &pos_grow, &neg_grow);
            let mut prune_set = pos_prune;
            prune_set.extend(neg_prune);
            let tests = prune_rows(t, grown, class, &prune_set, &pos, classes);

            let mut judged = covered(t, &tests, &prune_set);
            if judged.is_empty() {
                judged = covered(t, &tests, &remaining);
            }
            let wrong = judged.iter().filter(|&&r| t.classes[r] != class).count();
            if judged.is_empty() || 2 * wrong > judged.len() {
                break;
            }
            if !pos.iter().any(|&r| covers(t, &tests, r)) {
                break;
            }
            remaining.retain(|&r| !covers(t, &tests, r));
            rules.push((tests, class));
        }
    }
    Learned {
        rules,
        default_class,
    }
}

fn finish(t: &Table, learned: Learned, classes: usize, cfg: &RuleConfig) -> RuleSet {
    let all: Vec<usize> = (0..t.len()).collect();
    let rules = learned
        .rules
        .into_iter()
        .map(|(tests, class)| {
            let cov = covered(t, &tests, &all);
            let correct = cov.iter().filter(|&&r| t.classes[r] == class).count();
            Rule {
                tests: tests.iter().map(|c| c.to_test(t)).collect(),
                class,
                accuracy: Some(laplace(correct, cov.len(), classes)),
                coverage: cov.len(),
            }
        })
        .collect();
    RuleSet {
        rules,
        default_class: learned.default_class,
        strategy: cfg.strategy,
    }
}

fn training_errors(rs: &RuleSet, d: &Dataset) -> Result<usize> {
    let mut e = 0;
    for ex in d {
        if rs.predict(ex)? != ex.class() {
            e += 1;
        }
    }
    Ok(e)
}

fn mean_accuracy(rs: &RuleSet) -> f64 {
    if rs.rules.is_empty() {
        return 0.0;
    }
    rs.rules.iter().filter_map(|r| r.accuracy).sum::<f64>() / rs.rules.len() as f64
}

/// Learns an ordered rule list for `d` over `features`.
///
/// Classes are covered from least to most frequent and the most frequent
/// becomes the default. With exactly two classes both choices of default
/// are learned and the list with fewer training errors is kept; ties go to
/// fewer rules, then fewer tests, then higher mean rule accuracy.
pub fn learn_ruleset(
    d: &Dataset,
    features: FeatureMask,
    seed: u64,
    cfg: &RuleConfig,
) -> Result<RuleSet> {
    if d.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let t = Table::new(d, features)?;
    let counts = d.class_counts();
    let majority = counts.majority().expect("nonempty");
    let classes = class_count(d);
    let mut present: Vec<ClassLabel> = ClassLabel::ALL
        .iter()
        .copied()
        .filter(|&c| counts.get(c) > 0 && c != majority)
        .collect();
    present.sort_by_key(|&c| counts.get(c));

    let build = |targets: &[ClassLabel], default_class| {
        finish(&t, learn_orientation(&t, targets, default_class, classes, seed), classes, cfg)
    };
    match present.as_slice() {
        [] => Ok(RuleSet {
            rules: Vec::new(),
            default_class: majority,
            strategy: cfg.strategy,
        }),
        &[minority] => {
            let a = build(&[minority], majority);
            let b = build(&[majority], minority);
            let key = |rs: &RuleSet| -> Result<(usize, usize, usize)> {
                Ok((training_errors(rs, d)?, rs.rules.len(), rs.total_tests()))
            };
            let (ka, kb) = (key(&a)?, key(&b)?);
            let pick_b = kb < ka || (kb == ka && mean_accuracy(&b) > mean_accuracy(&a) + TIE_EPS);
            Ok(if pick_b { b } else { a })
        }
        targets => Ok(build(targets, majority)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::fixtures::annotated_second;
    use crate::corpus::{Example, Feature, Value};

    fn pp_data(n_per: usize) -> Dataset {
        let mut rows = Vec::new();
        for pp in 1..=5u32 {
            for _ in 0..n_per {
                let mut f = annotated_second().features;
                f.phrase_position = Some(pp);
                let c = if pp >= 2 {
                    ClassLabel::Sentential
                } else {
                    ClassLabel::Discourse
                };
                rows.push(Example::with_class(f, c));
            }
        }
        Dataset::new(rows, "pp")
    }

    #[test]
    fn laplace_values() {
        assert_eq!(laplace(0, 0, 2), 0.5);
        assert_eq!(laplace(9, 10, 2), 10.0 / 12.0);
    }

    #[test]
    fn position_rule_defaults_to_discourse() {
        let d = pp_data(6);
        let rs = learn_ruleset(
            &d,
            FeatureMask::single(Feature::PhrasePosition),
            1,
            &RuleConfig::default(),
        )
        .unwrap();
        assert_eq!(rs.default_class, ClassLabel::Discourse);
        assert_eq!(rs.rules.len(), 1);
        assert_eq!(
            rs.rules[0].tests,
            vec![Test {
                feature: Feature::PhrasePosition,
                op: Op::Ge,
                value: Value::Num(2)
            }]
        );
        assert_eq!(rs.rules[0].class, ClassLabel::Sentential);
    }

    #[test]
    fn single_class_gives_empty_list() {
        let d = pp_data(3).filter(|e| e.class() == ClassLabel::Sentential);
        let rs = learn_ruleset(&d, FeatureMask::all(), 0, &RuleConfig::default()).unwrap();
        assert!(rs.rules.is_empty());
        assert_eq!(rs.default_class, ClassLabel::Sentential);
    }

    #[test]
    fn grow_with_no_negatives_is_empty() {
        let d = pp_data(2);
        let pos = d.filter(|e| e.class() == ClassLabel::Sentential);
        let none = d.filter(|_| false);
        let r = grow_rule(&pos, &none, FeatureMask::all(), ClassLabel::Sentential).unwrap();
        assert!(r.tests.is_empty());
        assert!(grow_rule(&none, &pos, FeatureMask::all(), ClassLabel::Sentential).is_err());
    }

    #[test]
    fn prune_with_empty_set_is_identity() {
        let d = pp_data(2);
        let pos = d.filter(|e| e.class() == ClassLabel::Sentential);
        let neg = d.filter(|e| e.class() == ClassLabel::Discourse);
        let r = grow_rule(&pos, &neg, FeatureMask::all(), ClassLabel::Sentential).unwrap();
        let none = d.filter(|_| false);
        assert_eq!(prune_rule(&r, &d, &none).unwrap(), r);
    }
}
