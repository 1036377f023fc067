use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use super::feature_set::{FeatureMask, FeatureSetSpec};
use super::schema::*;
use crate::{Error, Result};

/// Raw feature values of one cue-phrase occurrence. A `None` field means the
/// column was not coded in the source. The starred features are never
/// stored: they are always computed from their source column.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Features {
    pub phrase_length: Option<u32>,
    pub phrase_position: Option<u32>,
    pub intermediate_length: Option<u32>,
    pub intermediate_position: Option<u32>,
    pub composition: Option<Composition>,
    pub accent: Option<Accent>,
    pub preceding_cue: Option<Flag>,
    pub succeeding_cue: Option<Flag>,
    pub preceding_orthography: Option<PrecedingOrthography>,
    pub succeeding_orthography: Option<SucceedingOrthography>,
    pub part_of_speech: Option<PartOfSpeech>,
    pub token: Option<CueToken>,
}

/// A broken record-level invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// Lengths and positions count words from 1.
    ZeroInteger(Feature),
    /// P-P > P-L or I-P > I-L; carries the position feature.
    PositionExceedsLength(Feature),
    /// I-C = only with I-L other than 1.
    OnlyInLongPhrase,
    /// Some but not all textual features are NA; carries the first
    /// feature whose NA status disagrees with O-P.
    PartialNa(Feature),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroInteger(feat) => write!(f, "{} must be at least 1", feat.code()),
            Violation::PositionExceedsLength(feat) => {
                write!(f, "position exceeds length ({})", feat.code())
            }
            Violation::OnlyInLongPhrase => f.write_str("I-C = only requires I-L = 1"),
            Violation::PartialNa(feat) => write!(
                f,
                "NA-consistency violation: {} disagrees with O-P about NA",
                feat.code()
            ),
        }
    }
}

impl Features {
    pub fn accent_star(&self) -> Option<AbstractAccent> {
        self.accent.map(derive_abstract_accent)
    }

    pub fn preceding_orthography_star(&self) -> Option<Flag> {
        self.preceding_orthography.map(derive_abstract_orthography)
    }

    pub fn succeeding_orthography_star(&self) -> Option<Flag> {
        self.succeeding_orthography.map(derive_abstract_orthography)
    }

    pub fn value(&self, feature: Feature) -> Option<Value> {
        let sym = |i: u8| Some(Value::Sym(i));
        match feature {
            Feature::PhraseLength => self.phrase_length.map(Value::Num),
            Feature::PhrasePosition => self.phrase_position.map(Value::Num),
            Feature::IntermediateLength => self.intermediate_length.map(Value::Num),
            Feature::IntermediatePosition => self.intermediate_position.map(Value::Num),
            Feature::Composition => self.composition.and_then(|v| sym(v.index())),
            Feature::Accent => self.accent.and_then(|v| sym(v.index())),
            Feature::AbstractAccent => self.accent_star().and_then(|v| sym(v.index())),
            Feature::PrecedingCue => self.preceding_cue.and_then(|v| sym(v.index())),
            Feature::SucceedingCue => self.succeeding_cue.and_then(|v| sym(v.index())),
            Feature::PrecedingOrthography => {
                self.preceding_orthography.and_then(|v| sym(v.index()))
            }
            Feature::AbstractPrecedingOrthography => {
                self.preceding_orthography_star().and_then(|v| sym(v.index()))
            }
            Feature::SucceedingOrthography => {
                self.succeeding_orthography.and_then(|v| sym(v.index()))
            }
            Feature::AbstractSucceedingOrthography => {
                self.succeeding_orthography_star().and_then(|v| sym(v.index()))
            }
            Feature::PartOfSpeech => self.part_of_speech.and_then(|v| sym(v.index())),
            Feature::Token => self.token.and_then(|v| sym(v.index())),
        }
    }

    /// Sets a raw feature from a learner-level value. Derived features and
    /// values of the wrong kind or out of domain are rejected.
    pub fn set_value(&mut self, feature: Feature, value: Value) -> Result<()> {
        let bad = || Error::InvalidArgument(alloc::format!("bad value {value:?} for {feature}"));
        match (feature, value) {
            (Feature::PhraseLength, Value::Num(n)) => self.phrase_length = Some(n),
            (Feature::PhrasePosition, Value::Num(n)) => self.phrase_position = Some(n),
            (Feature::IntermediateLength, Value::Num(n)) => self.intermediate_length = Some(n),
            (Feature::IntermediatePosition, Value::Num(n)) => {
                self.intermediate_position = Some(n)
            }
            (Feature::Composition, Value::Sym(s)) => {
                self.composition = Some(Composition::from_index(s).ok_or_else(bad)?)
            }
            (Feature::Accent, Value::Sym(s)) => {
                self.accent = Some(Accent::from_index(s).ok_or_else(bad)?)
            }
            (Feature::PrecedingCue, Value::Sym(s)) => {
                self.preceding_cue = Some(Flag::from_index(s).ok_or_else(bad)?)
            }
            (Feature::SucceedingCue, Value::Sym(s)) => {
                self.succeeding_cue = Some(Flag::from_index(s).ok_or_else(bad)?)
            }
            (Feature::PrecedingOrthography, Value::Sym(s)) => {
                self.preceding_orthography =
                    Some(PrecedingOrthography::from_index(s).ok_or_else(bad)?)
            }
            (Feature::SucceedingOrthography, Value::Sym(s)) => {
                self.succeeding_orthography =
                    Some(SucceedingOrthography::from_index(s).ok_or_else(bad)?)
            }
            (Feature::PartOfSpeech, Value::Sym(s)) => {
                self.part_of_speech = Some(PartOfSpeech::from_index(s).ok_or_else(bad)?)
            }
            (Feature::Token, Value::Sym(s)) => {
                self.token = Some(CueToken::from_index(s).ok_or_else(bad)?)
            }
            _ => return Err(bad()),
        }
        Ok(())
    }

    /// Features with a value in this record (derived ones included).
    pub fn present(&self) -> FeatureMask {
        Feature::ALL
            .iter()
            .copied()
            .filter(|&f| self.value(f).is_some())
            .collect()
    }

    fn textual_na(&self) -> [(Feature, Option<bool>); 5] {
        [
            (
                Feature::PrecedingOrthography,
                self.preceding_orthography.map(|v| v == PrecedingOrthography::Na),
            ),
            (Feature::PrecedingCue, self.preceding_cue.map(|v| v == Flag::Na)),
            (Feature::SucceedingCue, self.succeeding_cue.map(|v| v == Flag::Na)),
            (
                Feature::SucceedingOrthography,
                self.succeeding_orthography.map(|v| v == SucceedingOrthography::Na),
            ),
            (Feature::PartOfSpeech, self.part_of_speech.map(|v| v == PartOfSpeech::Na)),
        ]
    }

    /// Checks the record-level invariants over whichever columns are present.
    pub fn validate(&self) -> core::result::Result<(), Violation> {
        for (f, v) in [
            (Feature::PhraseLength, self.phrase_length),
            (Feature::PhrasePosition, self.phrase_position),
            (Feature::IntermediateLength, self.intermediate_length),
            (Feature::IntermediatePosition, self.intermediate_position),
        ] {
            if v == Some(0) {
                return Err(Violation::ZeroInteger(f));
            }
        }
        if let (Some(p), Some(l)) = (self.phrase_position, self.phrase_length) {
            if p > l {
                return Err(Violation::PositionExceedsLength(Feature::PhrasePosition));
            }
        }
        if let (Some(p), Some(l)) = (self.intermediate_position, self.intermediate_length) {
            if p > l {
                return Err(Violation::PositionExceedsLength(Feature::IntermediatePosition));
            }
        }
        if self.composition == Some(Composition::Only)
            && self.intermediate_length.is_some_and(|l| l != 1)
        {
            return Err(Violation::OnlyInLongPhrase);
        }
        let flags = self.textual_na();
        let mut reference: Option<bool> = None;
        for (f, na) in flags {
            if let Some(na) = na {
                match reference {
                    None => reference = Some(na),
                    Some(r) if r != na => return Err(Violation::PartialNa(f)),
                    _ => {}
                }
            }
        }
        Ok(())
    }
}

/// One cue-phrase occurrence with both judges' calls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Example {
    pub features: Features,
    pub judge1: JudgeLabel,
    pub judge2: JudgeLabel,
}

impl Example {
    pub fn new(features: Features, judge1: JudgeLabel, judge2: JudgeLabel) -> Self {
        Example {
            features,
            judge1,
            judge2,
        }
    }

    /// An example whose judges agree on `class` (both `?` for unknown).
    pub fn with_class(features: Features, class: ClassLabel) -> Self {
        let j = match class {
            ClassLabel::Discourse => JudgeLabel::D,
            ClassLabel::Sentential => JudgeLabel::S,
            ClassLabel::Unknown => JudgeLabel::Amb,
        };
        Example::new(features, j, j)
    }

    pub fn class(&self) -> ClassLabel {
        derive_class(self.judge1, self.judge2)
    }

    pub fn value(&self, feature: Feature) -> Option<Value> {
        self.features.value(feature)
    }
}

/// Per-class tallies indexed by [`ClassLabel`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct ClassCounts {
    pub discourse: usize,
    pub sentential: usize,
    pub unknown: usize,
}

impl ClassCounts {
    /// Majority ties resolve toward sentential, then discourse.
    const TIE_ORDER: [ClassLabel; 3] = [
        ClassLabel::Sentential,
        ClassLabel::Discourse,
        ClassLabel::Unknown,
    ];

    pub fn from_classes<I: IntoIterator<Item = ClassLabel>>(classes: I) -> Self {
        let mut c = ClassCounts::default();
        for class in classes {
            c.add(class);
        }
        c
    }

    pub fn add(&mut self, class: ClassLabel) {
        *self.get_mut(class) += 1;
    }

    pub fn get(&self, class: ClassLabel) -> usize {
        match class {
            ClassLabel::Discourse => self.discourse,
            ClassLabel::Sentential => self.sentential,
            ClassLabel::Unknown => self.unknown,
        }
    }

    pub fn get_mut(&mut self, class: ClassLabel) -> &mut usize {
        match class {
            ClassLabel::Discourse => &mut self.discourse,
            ClassLabel::Sentential => &mut self.sentential,
            ClassLabel::Unknown => &mut self.unknown,
        }
    }

    pub fn total(&self) -> usize {
        self.discourse + self.sentential + self.unknown
    }

    pub fn as_array(&self) -> [usize; 3] {
        [self.discourse, self.sentential, self.unknown]
    }

    pub fn merge(&mut self, other: &ClassCounts) {
        self.discourse += other.discourse;
        self.sentential += other.sentential;
        self.unknown += other.unknown;
    }

    /// Most frequent class; `None` when empty.
    pub fn majority(&self) -> Option<ClassLabel> {
        if self.total() == 0 {
            return None;
        }
        let mut best = Self::TIE_ORDER[0];
        for &c in &Self::TIE_ORDER[1..] {
            if self.get(c) > self.get(best) {
                best = c;
            }
        }
        Some(best)
    }

    /// Examples not in the majority class.
    pub fn errors(&self) -> usize {
        self.majority().map_or(0, |m| self.total() - self.get(m))
    }

    pub fn is_pure(&self) -> bool {
        self.nonzero_classes() <= 1
    }

    pub fn nonzero_classes(&self) -> usize {
        self.as_array().iter().filter(|&&n| n > 0).count()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorpusStats {
    pub classes: ClassCounts,
    pub tokens: BTreeMap<CueToken, usize>,
    /// Examples without a token column.
    pub untokenized: usize,
}

/// A sequence of examples plus the features learners may look at.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Dataset {
    pub examples: Vec<Example>,
    /// Features learners and reports use.
    pub active: FeatureSetSpec,
    /// Features every example has a value for.
    pub available: FeatureMask,
    pub provenance: String,
}

impl Dataset {
    /// Builds a dataset whose available (and active) features are those
    /// present in every example.
    pub fn new(examples: Vec<Example>, provenance: impl Into<String>) -> Self {
        let available = examples
            .iter()
            .map(|e| e.features.present())
            .reduce(|a, b| a & b)
            .unwrap_or_default();
        Dataset {
            examples,
            active: FeatureSetSpec::new("all", available),
            available,
            provenance: provenance.into(),
        }
    }

    /// Same as [`Dataset::new`] but with an explicit column set, for corpora
    /// that may be empty.
    pub fn with_available(
        examples: Vec<Example>,
        available: FeatureMask,
        provenance: impl Into<String>,
    ) -> Self {
        Dataset {
            examples,
            active: FeatureSetSpec::new("all", available),
            available,
            provenance: provenance.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Example> {
        self.examples.iter()
    }

    fn derive_with(&self, examples: Vec<Example>) -> Dataset {
        Dataset {
            examples,
            active: self.active.clone(),
            available: self.available,
            provenance: self.provenance.clone(),
        }
    }

    /// Restricts the active features to `spec`. Class labels and row order
    /// are untouched.
    pub fn project(&self, spec: &FeatureSetSpec) -> Result<Dataset> {
        if let Some(missing) = spec.features.iter().find(|&f| !self.available.contains(f)) {
            return Err(Error::FeatureUnavailable(missing));
        }
        Ok(Dataset {
            examples: self.examples.clone(),
            active: spec.clone(),
            available: self.available,
            provenance: self.provenance.clone(),
        })
    }

    /// Active feature values of every example, with its class.
    pub fn rows(&self) -> impl Iterator<Item = (Vec<Value>, ClassLabel)> + '_ {
        self.examples.iter().map(move |e| {
            let vals = self
                .active
                .features
                .iter()
                .filter_map(|f| e.value(f))
                .collect();
            (vals, e.class())
        })
    }

    /// Keeps examples whose judges agreed on discourse or sentential.
    pub fn filter_classifiable(&self) -> Dataset {
        self.filter(|e| e.class() != ClassLabel::Unknown)
    }

    /// Drops `and`, `or` and `but`. Untokenized examples are kept.
    pub fn filter_non_conjuncts(&self) -> Dataset {
        self.filter(|e| !e.features.token.is_some_and(CueToken::is_conjunct))
    }

    pub fn filter<P: FnMut(&Example) -> bool>(&self, mut keep: P) -> Dataset {
        self.derive_with(self.examples.iter().filter(|e| keep(e)).copied().collect())
    }

    /// Examples at the given indices, in the given order.
    pub fn select(&self, indices: &[usize]) -> Dataset {
        self.derive_with(indices.iter().map(|&i| self.examples[i]).collect())
    }

    pub fn class_counts(&self) -> ClassCounts {
        ClassCounts::from_classes(self.examples.iter().map(Example::class))
    }

    pub fn stats(&self) -> CorpusStats {
        let mut stats = CorpusStats {
            classes: self.class_counts(),
            ..CorpusStats::default()
        };
        for e in &self.examples {
            match e.features.token {
                Some(t) => *stats.tokens.entry(t).or_insert(0) += 1,
                None => stats.untokenized += 1,
            }
        }
        stats
    }
}

impl<'a> IntoIterator for &'a Dataset {
    type Item = &'a Example;
    type IntoIter = core::slice::Iter<'a, Example>;
    fn into_iter(self) -> Self::IntoIter {
        self.examples.iter()
    }
}
