//! A direct, unoptimized restatement of the split-selection rule and of
//! tree growth, for checking `best_split` and `grow_tree` on small random
//! datasets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cuephrase_core::corpus::{ClassCounts, Example, Features};
use cuephrase_core::dtree::{best_split, grow_tree, Branch, SplitTest, TreeConfig, TreeNode};
use cuephrase_core::{ClassLabel, Dataset, Feature, FeatureMask, Value};

const EPS: f64 = 1e-9;

fn random_dataset(rng: &mut ChaCha8Rng) -> (Dataset, FeatureMask) {
    let n_features = rng.gen_range(1..=4);
    let mut mask = FeatureMask::EMPTY;
    while mask.len() < n_features {
        mask.insert(Feature::ALL[rng.gen_range(0..Feature::ALL.len())]);
    }
    let rows = rng.gen_range(2..=50);
    let n_classes = rng.gen_range(2..=3);
    let max_num = rng.gen_range(2..=8);
    let mut examples = Vec::new();
    for _ in 0..rows {
        let mut f = Features::default();
        for feat in mask.iter() {
            let src = feat.source();
            let v = if src.is_numeric() {
                Value::Num(rng.gen_range(1..=max_num))
            } else {
                // Small effective domains make ties and empty branches common.
                let k = src.domain_size().min(rng.gen_range(2..=5));
                Value::Sym(rng.gen_range(0..k) as u8)
            };
            if f.value(src).is_none() {
                f.set_value(src, v).unwrap();
            }
        }
        let class = ClassLabel::ALL[rng.gen_range(0..n_classes)];
        examples.push(Example::with_class(f, class));
    }
    (Dataset::new(examples, "random"), mask)
}

fn h(c: &[f64]) -> f64 {
    let n: f64 = c.iter().sum();
    c.iter().filter(|&&x| x > 0.0).map(|&x| -(x / n) * (x / n).log2()).sum()
}

#[derive(Debug, Clone)]
struct Scored {
    feature: Feature,
    threshold: Option<u32>,
    gain: f64,
    ratio: f64,
}

fn counts_of(rows: &[&Example]) -> [f64; 3] {
    let mut c = [0.0; 3];
    for e in rows {
        c[e.class() as usize] += 1.0;
    }
    c
}

/// Every admissible-by-size test with its gain and gain ratio.
fn enumerate(rows: &[&Example], mask: FeatureMask, min_cases: usize) -> Vec<Scored> {
    let parent = counts_of(rows);
    let n = rows.len() as f64;
    let mut out = Vec::new();
    for feature in mask.iter() {
        let mut partitions: Vec<(Option<u32>, Vec<Vec<&Example>>)> = Vec::new();
        if feature.is_numeric() {
            let mut vals: Vec<u32> =
                rows.iter().map(|e| e.value(feature).unwrap().as_num().unwrap()).collect();
            vals.sort();
            vals.dedup();
            for &t in &vals {
                let le: Vec<_> = rows.iter().copied().filter(|e| e.value(feature).unwrap().as_num().unwrap() <= t).collect();
                let gt: Vec<_> = rows.iter().copied().filter(|e| e.value(feature).unwrap().as_num().unwrap() > t).collect();
                partitions.push((Some(t), vec![le, gt]));
            }
        } else {
            let parts = (0..feature.domain_size())
                .map(|v| {
                    rows.iter()
                        .copied()
                        .filter(|e| e.value(feature) == Some(Value::Sym(v as u8)))
                        .collect()
                })
                .collect();
            partitions.push((None, parts));
        }
        for (threshold, parts) in partitions {
            if parts.iter().filter(|p| p.len() >= min_cases).count() < 2 {
                continue;
            }
            let mut rest = 0.0;
            let mut split = 0.0;
            for p in &parts {
                if p.is_empty() {
                    continue;
                }
                let w = p.len() as f64 / n;
                rest += w * h(&counts_of(p));
                split -= w * w.log2();
            }
            let gain = (h(&parent) - rest).max(0.0);
            out.push(Scored { feature, threshold, gain, ratio: gain / split });
        }
    }
    out
}

fn oracle(rows: &[&Example], mask: FeatureMask, min_cases: usize) -> Option<Scored> {
    let all = enumerate(rows, mask, min_cases);
    let positive: Vec<_> = all.into_iter().filter(|s| s.gain > EPS).collect();
    if positive.is_empty() {
        return None;
    }
    let mean = positive.iter().map(|s| s.gain).sum::<f64>() / positive.len() as f64;
    let admitted: Vec<_> = positive.into_iter().filter(|s| s.gain >= mean - EPS).collect();
    let top = admitted.iter().map(|s| s.ratio).fold(f64::MIN, f64::max);
    let near_top: Vec<_> = admitted.into_iter().filter(|s| s.ratio >= top - EPS).collect();
    let top_gain = near_top.iter().map(|s| s.gain).fold(f64::MIN, f64::max);
    near_top.into_iter().find(|s| s.gain >= top_gain - EPS)
}

fn same(c: &Option<cuephrase_core::dtree::Candidate>, o: &Option<Scored>) -> bool {
    match (c, o) {
        (None, None) => true,
        (Some(c), Some(o)) => {
            let threshold = match &c.test {
                SplitTest::Threshold { threshold, .. } => Some(*threshold),
                SplitTest::Symbolic { .. } => None,
            };
            c.test.feature() == o.feature
                && threshold == o.threshold
                && (c.gain_ratio - o.ratio).abs() < 1e-9
        }
        _ => false,
    }
}

fn majority(rows: &[&Example]) -> ClassLabel {
    let c = ClassCounts::from_classes(rows.iter().map(|e| e.class()));
    c.majority().unwrap()
}

fn reference_grow(rows: &[&Example], mask: FeatureMask, min_cases: usize) -> TreeNode {
    let support = ClassCounts::from_classes(rows.iter().map(|e| e.class()));
    let class = majority(rows);
    let leaf = TreeNode::Leaf { class, support };
    if support.is_pure() || rows.len() < 2 * min_cases {
        return leaf;
    }
    let Some(best) = oracle(rows, mask, min_cases) else {
        return leaf;
    };
    let sub = |keep: &dyn Fn(&Example) -> bool| {
        let part: Vec<&Example> = rows.iter().copied().filter(|e| keep(e)).collect();
        if part.is_empty() {
            TreeNode::leaf(class)
        } else {
            reference_grow(&part, mask, min_cases)
        }
    };
    let f = best.feature;
    match best.threshold {
        Some(t) => TreeNode::Threshold {
            feature: f,
            threshold: t,
            le: Box::new(sub(&|e| e.value(f).unwrap().as_num().unwrap() <= t)),
            gt: Box::new(sub(&|e| e.value(f).unwrap().as_num().unwrap() > t)),
            gt_first: false,
        },
        None => TreeNode::Symbolic {
            feature: f,
            branches: (0..f.domain_size() as u8)
                .map(|v| Branch {
                    values: vec![v],
                    node: sub(&|e| e.value(f) == Some(Value::Sym(v))),
                })
                .collect(),
        },
    }
}

/// Compares `best_split` with the oracle on `cases` random datasets.
/// Returns how many of them had a split at all.
pub fn check_best_split(cases: usize, seed: u64) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = 0;
    for case in 0..cases {
        let (d, mask) = random_dataset(&mut rng);
        let min_cases = rng.gen_range(1..=3);
        let cfg = TreeConfig { min_cases, ..TreeConfig::default() };
        let got = best_split(&d, mask, &cfg).map_err(|e| format!("case {case}: {e}"))?;
        let rows: Vec<&Example> = d.iter().collect();
        let want = oracle(&rows, mask, min_cases);
        if !same(&got, &want) {
            return Err(format!("case {case}: got {got:?}, oracle {want:?}"));
        }
        found += usize::from(got.is_some());
    }
    Ok(found)
}

/// Compares `grow_tree` with the reference grower on `cases` random
/// datasets.
pub fn check_grow(cases: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..cases {
        let (d, mask) = random_dataset(&mut rng);
        let min_cases = rng.gen_range(1..=3);
        let cfg = TreeConfig { min_cases, ..TreeConfig::default() };
        let got = grow_tree(&d, mask, &cfg).map_err(|e| format!("case {case}: {e}"))?;
        let rows: Vec<&Example> = d.iter().collect();
        if got.root != reference_grow(&rows, mask, min_cases) {
            return Err(format!("case {case}: trees differ"));
        }
        if got.root.support().total() != d.len() {
            return Err(format!("case {case}: leaf supports do not add up"));
        }
    }
    Ok(())
}
