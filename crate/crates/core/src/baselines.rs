//! The hand-built prosodic and textual classifiers and the default-class
//! baseline.

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::corpus::{AbstractAccent, ClassLabel, Composition, Dataset, Feature, Features, Flag};
use crate::model::Classifier;
use crate::{Error, Result};

/// A prediction plus whether it came from a case the hand-built model
/// does not cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Prediction {
    pub class: ClassLabel,
    pub gap: bool,
}

impl Prediction {
    fn covered(class: ClassLabel) -> Self {
        Prediction { class, gap: false }
    }
}

/// Intermediate-phrase composition, then position, then accent.
///
/// A cue phrase alone in its intermediate phrase (I-C = only or only cue
/// phrases) is discourse. Otherwise a phrase-initial cue phrase is
/// discourse when deaccented or L* and sentential when H* or complex; a
/// non-initial one is sentential. An ambiguous accent in initial position
/// is not covered; it is called sentential and flagged.
pub fn manual_prosodic(f: &Features) -> Result<Prediction> {
    let composition = f
        .composition
        .ok_or(Error::MissingValue(Feature::Composition))?;
    if composition != Composition::Other {
        return Ok(Prediction::covered(ClassLabel::Discourse));
    }
    let position = f
        .intermediate_position
        .ok_or(Error::MissingValue(Feature::IntermediatePosition))?;
    if position > 1 {
        return Ok(Prediction::covered(ClassLabel::Sentential));
    }
    let accent = f.accent_star().ok_or(Error::MissingValue(Feature::Accent))?;
    Ok(match accent {
        AbstractAccent::Deaccented | AbstractAccent::Lstar => {
            Prediction::covered(ClassLabel::Discourse)
        }
        AbstractAccent::Hstar | AbstractAccent::Complex => {
            Prediction::covered(ClassLabel::Sentential)
        }
        AbstractAccent::Ambiguous => Prediction {
            class: ClassLabel::Sentential,
            gap: true,
        },
    })
}

/// Preceding orthography: any punctuation or paragraph break means
/// discourse, none means sentential. Untranscribed (NA) examples are
/// called discourse.
pub fn manual_textual(f: &Features) -> Result<Prediction> {
    let op = f
        .preceding_orthography_star()
        .ok_or(Error::MissingValue(Feature::PrecedingOrthography))?;
    Ok(match op {
        Flag::True => Prediction::covered(ClassLabel::Discourse),
        Flag::False => Prediction::covered(ClassLabel::Sentential),
        Flag::Na => Prediction {
            class: ClassLabel::Discourse,
            gap: false,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ManualProsodic;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ManualTextual;

impl Classifier for ManualProsodic {
    fn classify(&self, f: &Features) -> Result<ClassLabel> {
        manual_prosodic(f).map(|p| p.class)
    }
}

impl Classifier for ManualTextual {
    fn classify(&self, f: &Features) -> Result<ClassLabel> {
        manual_textual(f).map(|p| p.class)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "baseline", content = "class", rename_all = "kebab-case"))]
pub enum BaselineModel {
    ManualProsodic,
    ManualTextual,
    DefaultClass(ClassLabel),
}

impl BaselineModel {
    pub fn predict_verbose(&self, f: &Features) -> Result<Prediction> {
        match self {
            BaselineModel::ManualProsodic => manual_prosodic(f),
            BaselineModel::ManualTextual => manual_textual(f),
            BaselineModel::DefaultClass(c) => Ok(Prediction::covered(*c)),
        }
    }
}

impl Classifier for BaselineModel {
    fn classify(&self, f: &Features) -> Result<ClassLabel> {
        self.predict_verbose(f).map(|p| p.class)
    }
}

/// Most frequent class in `d`, ties going to sentential.
pub fn fit_default_class(d: &Dataset) -> Result<BaselineModel> {
    d.class_counts()
        .majority()
        .map(BaselineModel::DefaultClass)
        .ok_or(Error::EmptyDataset)
}
