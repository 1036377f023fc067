//! Feature masks, named feature sets and the built-in experiment matrices.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::ops::{BitAnd, BitOr};

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use super::schema::Feature;
use crate::{Error, Result};

/// A set of feature codes. Iterates in canonical order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(from = "Vec<Feature>", into = "Vec<Feature>"))]
pub struct FeatureMask(u16);

impl FeatureMask {
    pub const EMPTY: FeatureMask = FeatureMask(0);

    pub const fn single(f: Feature) -> Self {
        FeatureMask(1 << f as u16)
    }

    pub const fn of(features: &[Feature]) -> Self {
        let mut bits = 0u16;
        let mut i = 0;
        while i < features.len() {
            bits |= 1 << features[i] as u16;
            i += 1;
        }
        FeatureMask(bits)
    }

    pub fn all() -> Self {
        FeatureMask::of(&Feature::ALL)
    }

    pub fn contains(self, f: Feature) -> bool {
        self.0 & (1 << f as u16) != 0
    }

    pub fn insert(&mut self, f: Feature) {
        self.0 |= 1 << f as u16;
    }

    pub fn remove(&mut self, f: Feature) {
        self.0 &= !(1 << f as u16);
    }

    pub fn with(mut self, f: Feature) -> Self {
        self.insert(f);
        self
    }

    pub fn without(mut self, f: Feature) -> Self {
        self.remove(f);
        self
    }

    pub fn is_subset(self, other: FeatureMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Feature> {
        Feature::ALL.into_iter().filter(move |&f| self.contains(f))
    }

    /// Comma-separated codes, e.g. `P-P,I-P`.
    pub fn codes(self) -> String {
        self.iter().map(Feature::code).collect::<Vec<_>>().join(",")
    }
}

impl BitAnd for FeatureMask {
    type Output = FeatureMask;
    fn bitand(self, rhs: Self) -> Self {
        FeatureMask(self.0 & rhs.0)
    }
}

impl BitOr for FeatureMask {
    type Output = FeatureMask;
    fn bitor(self, rhs: Self) -> Self {
        FeatureMask(self.0 | rhs.0)
    }
}

impl FromIterator<Feature> for FeatureMask {
    fn from_iter<I: IntoIterator<Item = Feature>>(iter: I) -> Self {
        let mut m = FeatureMask::EMPTY;
        for f in iter {
            m.insert(f);
        }
        m
    }
}

impl From<Vec<Feature>> for FeatureMask {
    fn from(v: Vec<Feature>) -> Self {
        v.into_iter().collect()
    }
}

impl From<FeatureMask> for Vec<Feature> {
    fn from(m: FeatureMask) -> Self {
        m.iter().collect()
    }
}

/// A named feature subset. Tokenized sets are exactly those containing T.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct FeatureSetSpec {
    pub name: String,
    pub features: FeatureMask,
}

impl FeatureSetSpec {
    pub fn new(name: impl Into<String>, features: FeatureMask) -> Self {
        FeatureSetSpec {
            name: name.into(),
            features,
        }
    }

    pub fn tokenized(&self) -> bool {
        self.features.contains(Feature::Token)
    }

    /// The `+` variant: T added and the name suffixed.
    pub fn with_token(&self) -> Self {
        if self.tokenized() {
            return self.clone();
        }
        FeatureSetSpec::new(format!("{}+", self.name), self.features.with(Feature::Token))
    }

    /// Looks up a built-in set by name (`prosody`, `A*`, `speech-text+`, ...)
    /// or parses a comma-separated code list such as `P-P,I-P`.
    pub fn resolve(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (base, plus) = match spec.strip_suffix('+') {
            Some(b) if !b.is_empty() => (b, true),
            _ => (spec, false),
        };
        let found = single_sets()
            .into_iter()
            .chain(multiple_sets())
            .find(|s| s.name == base);
        if let Some(s) = found {
            return Ok(if plus { s.with_token() } else { s });
        }
        let mut mask = FeatureMask::EMPTY;
        for code in spec.split(',') {
            let code = code.trim();
            let f = Feature::from_code(code)
                .ok_or_else(|| Error::UnknownFeatureSet(spec.to_string()))?;
            mask.insert(f);
        }
        Ok(FeatureSetSpec::new(spec, mask))
    }
}

use Feature::*;

const MULTIPLE: [(&str, FeatureMask); 13] = [
    (
        "prosody",
        FeatureMask::of(&[
            PhraseLength,
            PhrasePosition,
            IntermediateLength,
            IntermediatePosition,
            Composition,
            Accent,
            AbstractAccent,
        ]),
    ),
    (
        "hl93features",
        FeatureMask::of(&[IntermediatePosition, Composition, Accent, AbstractAccent]),
    ),
    (
        "phrasing",
        FeatureMask::of(&[
            PhraseLength,
            PhrasePosition,
            IntermediateLength,
            IntermediatePosition,
            Composition,
        ]),
    ),
    ("length", FeatureMask::of(&[PhraseLength, IntermediateLength])),
    ("position", FeatureMask::of(&[PhrasePosition, IntermediatePosition])),
    ("intonational", FeatureMask::of(&[PhraseLength, PhrasePosition])),
    (
        "intermediate",
        FeatureMask::of(&[IntermediateLength, IntermediatePosition, Composition]),
    ),
    (
        "text",
        FeatureMask::of(&[
            PrecedingCue,
            SucceedingCue,
            PrecedingOrthography,
            AbstractPrecedingOrthography,
            SucceedingOrthography,
            AbstractSucceedingOrthography,
            PartOfSpeech,
        ]),
    ),
    ("adjacency", FeatureMask::of(&[PrecedingCue, SucceedingCue])),
    (
        "orthography",
        FeatureMask::of(&[
            PrecedingOrthography,
            AbstractPrecedingOrthography,
            SucceedingOrthography,
            AbstractSucceedingOrthography,
        ]),
    ),
    (
        "preceding",
        FeatureMask::of(&[PrecedingCue, PrecedingOrthography, AbstractPrecedingOrthography]),
    ),
    (
        "succeeding",
        FeatureMask::of(&[
            SucceedingCue,
            SucceedingOrthography,
            AbstractSucceedingOrthography,
        ]),
    ),
    ("speech-text", FeatureMask::of(&Feature::NON_LEXICAL)),
];

/// The 14 one-feature sets, named by their code.
pub fn single_sets() -> Vec<FeatureSetSpec> {
    Feature::NON_LEXICAL
        .iter()
        .map(|&f| FeatureSetSpec::new(f.code(), FeatureMask::single(f)))
        .collect()
}

/// The 13 linguistically motivated multiple-feature sets.
pub fn multiple_sets() -> Vec<FeatureSetSpec> {
    MULTIPLE
        .iter()
        .map(|&(name, mask)| FeatureSetSpec::new(name, mask))
        .collect()
}

/// Which of the four experiment designs a feature matrix is for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "u8", into = "u8"))]
pub enum ExperimentSet {
    /// Held-out replication with prosodic features only.
    One,
    /// Cross-validated, all 27 untokenized sets.
    Two,
    /// Cross-validated, the 27 tokenized sets.
    Three,
    /// All examples including `unknown`: sets two and three together.
    Four,
}

impl TryFrom<u8> for ExperimentSet {
    type Error = Error;
    fn try_from(n: u8) -> Result<Self> {
        match n {
            1 => Ok(ExperimentSet::One),
            2 => Ok(ExperimentSet::Two),
            3 => Ok(ExperimentSet::Three),
            4 => Ok(ExperimentSet::Four),
            _ => Err(Error::InvalidArgument(format!("experiment set must be 1-4, got {n}"))),
        }
    }
}

impl From<ExperimentSet> for u8 {
    fn from(s: ExperimentSet) -> u8 {
        s as u8 + 1
    }
}

/// Report order: prosodic singles, prosodic multiples, textual singles,
/// textual multiples, then `speech-text`.
fn untokenized_matrix() -> Vec<FeatureSetSpec> {
    let singles = single_sets();
    let multiples = multiple_sets();
    let (pro_s, txt_s): (Vec<_>, Vec<_>) = singles
        .into_iter()
        .partition(|s| s.features.iter().all(Feature::is_prosodic));
    let mut out = pro_s;
    out.extend(multiples[..7].iter().cloned());
    out.extend(txt_s);
    out.extend(multiples[7..].iter().cloned());
    out
}

/// Feature sets evaluated by one experiment design.
///
/// Set one has no phrase-length coding, so P-L and I-L are dropped from
/// every prosodic set and sets left empty (`length`, and the two length
/// singles) are omitted.
pub fn builtin_feature_sets(set: ExperimentSet) -> Vec<FeatureSetSpec> {
    match set {
        ExperimentSet::One => {
            let lengths = FeatureMask::of(&[PhraseLength, IntermediateLength]);
            untokenized_matrix()
                .into_iter()
                .filter(|s| s.features.iter().all(Feature::is_prosodic))
                .filter_map(|s| {
                    let features = FeatureMask(s.features.0 & !lengths.0);
                    (!features.is_empty()).then(|| FeatureSetSpec::new(s.name, features))
                })
                .collect()
        }
        ExperimentSet::Two => untokenized_matrix(),
        ExperimentSet::Three => untokenized_matrix().iter().map(FeatureSetSpec::with_token).collect(),
        ExperimentSet::Four => {
            let mut v = untokenized_matrix();
            v.extend(builtin_feature_sets(ExperimentSet::Three));
            v
        }
    }
}
