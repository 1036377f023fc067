//! Seeded synthetic corpora labeled by an arbitrary classifier.

use alloc::format;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::schema::*;
use super::{ClassCounts, Dataset, Example, Features};
use crate::model::Classifier;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticConfig {
    pub n: usize,
    /// Probability of replacing the labeler's class with a different one.
    pub noise: f64,
    pub seed: u64,
    /// Largest phrase length drawn (lengths are uniform on 1..=max_length).
    pub max_length: u32,
    /// Probability that an example is untranscribed (all textual features NA).
    pub untranscribed: f64,
}

impl SyntheticConfig {
    pub fn new(n: usize, noise: f64, seed: u64) -> Self {
        SyntheticConfig {
            n,
            noise,
            seed,
            max_length: 15,
            untranscribed: 0.04,
        }
    }
}

fn pick<T: Copy, R: Rng>(rng: &mut R, values: &[T]) -> T {
    *values.choose(rng).expect("nonempty domain")
}

/// Draws one feature vector uniformly over the declared domains, subject to
/// the record invariants: positions never exceed lengths, I-C = only forces a
/// one-word intermediate phrase, and untranscribed rows are NA throughout.
pub fn sample_features<R: Rng>(rng: &mut R, max_length: u32, untranscribed: f64) -> Features {
    let phrase_length = rng.gen_range(1..=max_length);
    let phrase_position = rng.gen_range(1..=phrase_length);
    let composition = pick(rng, Composition::ALL);
    let intermediate_length = if composition == Composition::Only {
        1
    } else {
        rng.gen_range(1..=max_length)
    };
    let intermediate_position = rng.gen_range(1..=intermediate_length);
    let accent = pick(rng, Accent::ALL);

    let transcribed = !rng.gen_bool(untranscribed);
    let (pc, sc, po, so, pos) = if transcribed {
        let flags = [Flag::True, Flag::False];
        (
            pick(rng, &flags),
            pick(rng, &flags),
            pick(rng, &PrecedingOrthography::ALL[..5]),
            pick(rng, &SucceedingOrthography::ALL[..4]),
            pick(rng, &PartOfSpeech::ALL[..11]),
        )
    } else {
        (
            Flag::Na,
            Flag::Na,
            PrecedingOrthography::Na,
            SucceedingOrthography::Na,
            PartOfSpeech::Na,
        )
    };

    Features {
        phrase_length: Some(phrase_length),
        phrase_position: Some(phrase_position),
        intermediate_length: Some(intermediate_length),
        intermediate_position: Some(intermediate_position),
        composition: Some(composition),
        accent: Some(accent),
        preceding_cue: Some(pc),
        succeeding_cue: Some(sc),
        preceding_orthography: Some(po),
        succeeding_orthography: Some(so),
        part_of_speech: Some(pos),
        token: Some(pick(rng, CueToken::ALL)),
    }
}

/// A different class: the other primary class, or a uniform pick of the two
/// primary classes when the labeler said `unknown`.
fn flip<R: Rng>(rng: &mut R, class: ClassLabel) -> ClassLabel {
    match class {
        ClassLabel::Discourse => ClassLabel::Sentential,
        ClassLabel::Sentential => ClassLabel::Discourse,
        ClassLabel::Unknown => pick(rng, &[ClassLabel::Discourse, ClassLabel::Sentential]),
    }
}

/// Samples `cfg.n` feature vectors, labels each with `labeler`, and flips
/// each label with probability `cfg.noise`. Deterministic in `cfg.seed`.
pub fn generate_synthetic<C: Classifier + ?Sized>(
    labeler: &C,
    cfg: &SyntheticConfig,
) -> Result<Dataset> {
    if !(0.0..=1.0).contains(&cfg.noise) {
        return Err(Error::InvalidArgument(format!(
            "noise must be in [0, 1], got {}",
            cfg.noise
        )));
    }
    if !(0.0..=1.0).contains(&cfg.untranscribed) || cfg.max_length == 0 {
        return Err(Error::InvalidArgument(format!("bad synthetic config {cfg:?}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut examples = Vec::with_capacity(cfg.n);
    for _ in 0..cfg.n {
        let features = sample_features(&mut rng, cfg.max_length, cfg.untranscribed);
        let mut class = labeler.classify(&features)?;
        if rng.gen_bool(cfg.noise) {
            class = flip(&mut rng, class);
        }
        examples.push(Example::with_class(features, class));
    }
    Ok(Dataset::with_available(
        examples,
        super::FeatureMask::all(),
        format!("synthetic n={} noise={} seed={}", cfg.n, cfg.noise, cfg.seed),
    ))
}

/// Examples whose label differs from the labeler's output, and the
/// labeler's class tallies.
pub fn disagreement<C: Classifier + ?Sized>(labeler: &C, d: &Dataset) -> Result<(usize, ClassCounts)> {
    let mut flipped = 0;
    let mut counts = ClassCounts::default();
    for e in d {
        let c = labeler.classify(&e.features)?;
        counts.add(c);
        if c != e.class() {
            flipped += 1;
        }
    }
    Ok((flipped, counts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::ManualProsodic;
    use crate::eval::error_rate;

    #[test]
    fn noise_free_output_matches_labeler() {
        let d = generate_synthetic(&ManualProsodic, &SyntheticConfig::new(500, 0.0, 3)).unwrap();
        assert_eq!(error_rate(&ManualProsodic, &d).unwrap(), 0.0);
        for e in &d {
            assert_eq!(e.features.validate(), Ok(()));
        }
    }

    #[test]
    fn same_seed_same_dataset() {
        let cfg = SyntheticConfig::new(200, 0.2, 99);
        let a = generate_synthetic(&ManualProsodic, &cfg).unwrap();
        let b = generate_synthetic(&ManualProsodic, &cfg).unwrap();
        assert_eq!(a, b);
        let c = generate_synthetic(&ManualProsodic, &SyntheticConfig::new(200, 0.2, 100)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn flipped_fraction_is_near_noise() {
        // Binomial(1000, 0.1): sd = sqrt(0.1 * 0.9 / 1000) = 0.0095, so 0.03
        // is a 3.2-sigma band.
        let d = generate_synthetic(&ManualProsodic, &SyntheticConfig::new(1000, 0.1, 2024)).unwrap();
        let (flipped, _) = disagreement(&ManualProsodic, &d).unwrap();
        let frac = flipped as f64 / 1000.0;
        assert!((frac - 0.1).abs() <= 0.03, "flipped fraction {frac}");
    }

    #[test]
    fn rejects_bad_noise() {
        assert!(generate_synthetic(&ManualProsodic, &SyntheticConfig::new(1, 1.5, 0)).is_err());
    }
}
