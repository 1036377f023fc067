//! Feature schema, corpus model, feature-set algebra and synthetic data.

mod example;
mod feature_set;
pub mod fixtures;
mod schema;
mod synth;

pub use example::{ClassCounts, CorpusStats, Dataset, Example, Features, Violation};
pub use feature_set::{
    builtin_feature_sets, multiple_sets, single_sets, ExperimentSet, FeatureMask, FeatureSetSpec,
};
pub use schema::{
    derive_abstract_accent, derive_abstract_orthography, derive_class, AbstractAccent, Accent,
    ClassLabel, Composition, CueToken, Feature, FeatureKind, Flag, JudgeLabel, Orthography,
    PartOfSpeech, PrecedingOrthography, SucceedingOrthography, Value,
};
pub use synth::{disagreement, generate_synthetic, sample_features, SyntheticConfig};
