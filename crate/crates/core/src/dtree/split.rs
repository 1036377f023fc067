//! Entropy, gain ratio and test selection.

use alloc::vec;
use alloc::vec::Vec;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use super::TreeConfig;
use crate::corpus::{ClassCounts, Dataset, Feature, FeatureMask};
use crate::math::{log2, TIE_EPS};
use crate::table::Table;
use crate::{Error, Result};

/// Class entropy in bits.
pub fn entropy(counts: &ClassCounts) -> Result<f64> {
    if counts.total() == 0 {
        return Err(Error::ZeroCounts);
    }
    Ok(entropy_of(counts))
}

pub(crate) fn entropy_of(counts: &ClassCounts) -> f64 {
    let n = counts.total() as f64;
    if n == 0.0 {
        return 0.0;
    }
    let mut h = 0.0;
    for c in counts.as_array() {
        if c > 0 {
            let p = c as f64 / n;
            h -= p * log2(p);
        }
    }
    h
}

/// Parent entropy minus the size-weighted entropy of the parts.
pub fn info_gain(parent: &ClassCounts, parts: &[ClassCounts]) -> f64 {
    let n = parent.total() as f64;
    let mut rest = 0.0;
    for p in parts {
        rest += p.total() as f64 / n * entropy_of(p);
    }
    let g = entropy_of(parent) - rest;
    // Rounding can leave a tiny negative gain for useless splits.
    if g < 0.0 {
        0.0
    } else {
        g
    }
}

/// Entropy of the partition sizes themselves.
pub fn split_info(parts: &[ClassCounts]) -> f64 {
    let n: usize = parts.iter().map(ClassCounts::total).sum();
    let n = n as f64;
    let mut s = 0.0;
    for p in parts {
        let k = p.total();
        if k > 0 {
            let w = k as f64 / n;
            s -= w * log2(w);
        }
    }
    s
}

/// Information gain divided by split information. Fails when fewer than
/// two parts are nonempty, since the split information is then zero.
pub fn gain_ratio(parts: &[ClassCounts]) -> Result<f64> {
    if parts.iter().filter(|p| p.total() > 0).count() < 2 {
        return Err(Error::DegenerateSplit);
    }
    let mut parent = ClassCounts::default();
    for p in parts {
        parent.merge(p);
    }
    Ok(info_gain(&parent, parts) / split_info(parts))
}

/// A test a tree node can apply.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub enum SplitTest {
    /// One branch per group of symbol indices. Without grouping every group
    /// is a single value and all domain values appear in domain order.
    Symbolic { feature: Feature, groups: Vec<Vec<u8>> },
    /// `<= threshold` versus `> threshold`.
    Threshold { feature: Feature, threshold: u32 },
}

impl SplitTest {
    pub fn feature(&self) -> Feature {
        match self {
            SplitTest::Symbolic { feature, .. } | SplitTest::Threshold { feature, .. } => *feature,
        }
    }

    fn threshold(&self) -> Option<u32> {
        match self {
            SplitTest::Threshold { threshold, .. } => Some(*threshold),
            SplitTest::Symbolic { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub test: SplitTest,
    pub gain: f64,
    pub gain_ratio: f64,
}

impl Candidate {
    /// True if `self` should replace `other` as the incumbent: higher gain
    /// ratio, then higher gain, then earlier feature, then lower threshold.
    pub fn beats(&self, other: &Candidate) -> bool {
        if self.gain_ratio > other.gain_ratio + TIE_EPS {
            return true;
        }
        if self.gain_ratio < other.gain_ratio - TIE_EPS {
            return false;
        }
        if self.gain > other.gain + TIE_EPS {
            return true;
        }
        if self.gain < other.gain - TIE_EPS {
            return false;
        }
        let (fa, fb) = (self.test.feature(), other.test.feature());
        if fa != fb {
            return fa < fb;
        }
        match (self.test.threshold(), other.test.threshold()) {
            (Some(a), Some(b)) => a < b,
            _ => false,
        }
    }
}

/// At least two branches must receive `min_cases` examples.
fn enough_cases(parts: &[ClassCounts], min_cases: usize) -> bool {
    parts.iter().filter(|p| p.total() >= min_cases).count() >= 2
}

fn scored(test: SplitTest, parent: &ClassCounts, parts: &[ClassCounts]) -> Option<Candidate> {
    let gain = info_gain(parent, parts);
    let ratio = gain_ratio(parts).ok()?;
    Some(Candidate {
        test,
        gain,
        gain_ratio: ratio,
    })
}

fn group_counts(by_value: &[ClassCounts], groups: &[Vec<u8>]) -> Vec<ClassCounts> {
    groups
        .iter()
        .map(|g| {
            let mut c = ClassCounts::default();
            for &v in g {
                c.merge(&by_value[v as usize]);
            }
            c
        })
        .collect()
}

/// Greedily merges pairs of observed values while the gain ratio strictly
/// improves, then puts the unobserved values into the largest group.
pub(crate) fn group_values(by_value: &[ClassCounts]) -> Option<Vec<Vec<u8>>> {
    let mut groups: Vec<Vec<u8>> = (0..by_value.len() as u8)
        .filter(|&v| by_value[v as usize].total() > 0)
        .map(|v| vec![v])
        .collect();
    if groups.len() < 2 {
        return None;
    }
    let mut current = gain_ratio(&group_counts(by_value, &groups)).ok()?;
    while groups.len() > 2 {
        let mut best: Option<(usize, usize, f64)> = None;
        for i in 0..groups.len() {
            for j in i + 1..groups.len() {
                let mut trial = groups.clone();
                let moved = trial.remove(j);
                trial[i].extend(moved);
                let Ok(r) = gain_ratio(&group_counts(by_value, &trial)) else {
                    continue;
                };
                if best.map_or(true, |(_, _, b)| r > b + TIE_EPS) {
                    best = Some((i, j, r));
                }
            }
        }
        match best {
            Some((i, j, r)) if r > current + TIE_EPS => {
                let moved = groups.remove(j);
                groups[i].extend(moved);
                groups[i].sort_unstable();
                current = r;
            }
            _ => break,
        }
    }
    let sizes: Vec<usize> = group_counts(by_value, &groups)
        .iter()
        .map(ClassCounts::total)
        .collect();
    let mut largest = 0;
    for (i, &s) in sizes.iter().enumerate() {
        if s > sizes[largest] {
            largest = i;
        }
    }
    for v in 0..by_value.len() as u8 {
        if by_value[v as usize].total() == 0 {
            groups[largest].push(v);
        }
    }
    groups[largest].sort_unstable();
    Some(groups)
}

/// Every candidate test on `rows` that sends at least `min_cases` examples
/// down two branches, in feature order and then ascending threshold.
pub(crate) fn candidates(t: &Table, rows: &[usize], cfg: &TreeConfig) -> Vec<Candidate> {
    let parent = t.counts(rows);
    let mut out = Vec::new();
    for (j, &feature) in t.features.iter().enumerate() {
        let col = &t.cols[j];
        if feature.is_numeric() {
            let mut vals: Vec<(u32, usize)> = rows.iter().map(|&i| (col[i], i)).collect();
            vals.sort_unstable();
            let mut le = ClassCounts::default();
            let mut k = 0;
            while k < vals.len() {
                let v = vals[k].0;
                while k < vals.len() && vals[k].0 == v {
                    le.add(t.classes[vals[k].1]);
                    k += 1;
                }
                if k == vals.len() {
                    break;
                }
                let gt = ClassCounts {
                    discourse: parent.discourse - le.discourse,
                    sentential: parent.sentential - le.sentential,
                    unknown: parent.unknown - le.unknown,
                };
                let parts = [le, gt];
                if enough_cases(&parts, cfg.min_cases) {
                    let test = SplitTest::Threshold {
                        feature,
                        threshold: v,
                    };
                    out.extend(scored(test, &parent, &parts));
                }
            }
        } else {
            let mut by_value = vec![ClassCounts::default(); feature.domain_size()];
            for &i in rows {
                by_value[col[i] as usize].add(t.classes[i]);
            }
            let groups = if cfg.grouping {
                match group_values(&by_value) {
                    Some(g) => g,
                    None => continue,
                }
            } else {
                (0..by_value.len() as u8).map(|v| vec![v]).collect()
            };
            let parts = group_counts(&by_value, &groups);
            if enough_cases(&parts, cfg.min_cases) {
                out.extend(scored(SplitTest::Symbolic { feature, groups }, &parent, &parts));
            }
        }
    }
    out
}

/// Keeps the positive-gain candidates whose gain reaches the mean over
/// positive-gain candidates, then returns the best of those.
pub(crate) fn select(cands: Vec<Candidate>) -> Option<Candidate> {
    let positive: Vec<Candidate> = cands.into_iter().filter(|c| c.gain > TIE_EPS).collect();
    if positive.is_empty() {
        return None;
    }
    let mean = positive.iter().map(|c| c.gain).sum::<f64>() / positive.len() as f64;
    let mut best: Option<Candidate> = None;
    for c in positive {
        if c.gain < mean - TIE_EPS {
            continue;
        }
        if best.as_ref().map_or(true, |b| c.beats(b)) {
            best = Some(c);
        }
    }
    best
}

pub(crate) fn best_split_rows(t: &Table, rows: &[usize], cfg: &TreeConfig) -> Option<Candidate> {
    select(candidates(t, rows, cfg))
}

/// The test a tree would install at a node holding all of `d`, or `None`
/// when no admissible test has positive gain.
pub fn best_split(d: &Dataset, features: FeatureMask, cfg: &TreeConfig) -> Result<Option<Candidate>> {
    if d.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let t = Table::new(d, features)?;
    let rows: Vec<usize> = (0..t.len()).collect();
    Ok(best_split_rows(&t, &rows, cfg))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cc(discourse: usize, sentential: usize) -> ClassCounts {
        ClassCounts {
            discourse,
            sentential,
            unknown: 0,
        }
    }

    #[test]
    fn entropy_values() {
        assert_eq!(entropy(&cc(1, 1)).unwrap(), 1.0);
        assert_eq!(entropy(&cc(4, 0)).unwrap(), 0.0);
        // -(1/4)log2(1/4) - (3/4)log2(3/4) = 0.5 + 0.311278
        assert!((entropy(&cc(1, 3)).unwrap() - 0.811278).abs() < 1e-6);
        assert_eq!(entropy(&cc(0, 0)), Err(Error::ZeroCounts));
    }

    #[test]
    fn gain_ratio_values() {
        assert!((gain_ratio(&[cc(2, 0), cc(0, 2)]).unwrap() - 1.0).abs() < 1e-12);
        // gain = 0.811278 - 0.5 * 1.0; split info = 1.0
        assert!((gain_ratio(&[cc(1, 1), cc(0, 2)]).unwrap() - 0.311278).abs() < 1e-6);
        assert_eq!(gain_ratio(&[cc(0, 2), cc(0, 2)]).unwrap(), 0.0);
        assert_eq!(gain_ratio(&[cc(2, 2), cc(0, 0)]), Err(Error::DegenerateSplit));
    }

    #[test]
    fn grouping_merges_values_with_the_same_class() {
        // Three values all discourse, one sentential: best grouping is two
        // branches.
        let by_value = [cc(3, 0), cc(3, 0), cc(0, 3), cc(3, 0), cc(0, 0)];
        let groups = group_values(&by_value).unwrap();
        assert_eq!(groups, vec![vec![0, 1, 3, 4], vec![2]]);
    }
}
