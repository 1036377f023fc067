use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cuephrase_core::baselines::ManualProsodic;
use cuephrase_core::corpus::{
    derive_abstract_accent, derive_abstract_orthography, generate_synthetic, sample_features,
    AbstractAccent, Accent, ClassLabel, Example, Flag, PrecedingOrthography, SyntheticConfig,
};
use cuephrase_core::dtree::{grow_tree, prune_tree, TreeConfig};
use cuephrase_core::eval::{
    cross_validate_with, cv_ci, fold_error, holdout_ci, partition_folds, significant, Comparison,
    CvOptions, ErrorEstimate, Method,
};
use cuephrase_core::{Dataset, FeatureMask, FeatureSetSpec, LearnerSpec};

fn random_corpus(seed: u64, n: usize) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let classes = [ClassLabel::Discourse, ClassLabel::Sentential, ClassLabel::Unknown];
    let examples = (0..n)
        .map(|i| {
            let f = sample_features(&mut rng, 6, 0.1);
            Example::with_class(f, classes[(seed as usize + i * 7) % 3])
        })
        .collect();
    Dataset::with_available(examples, FeatureMask::all(), "random")
}

fn estimate() -> impl Strategy<Value = ErrorEstimate> {
    (0.0..=1.0f64, 0.0..0.5f64).prop_map(|(rate, margin)| ErrorEstimate {
        rate,
        margin,
        method: Method::HoldoutNormal,
        n: None,
        fold_errors: Vec::new(),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn leaf_supports_cover_the_data(seed in any::<u64>(), n in 1usize..120, min_cases in 1usize..4) {
        let d = random_corpus(seed, n);
        let cfg = TreeConfig { min_cases, ..TreeConfig::default() };
        let mask = FeatureSetSpec::resolve("speech-text").unwrap().features;
        let grown = grow_tree(&d, mask, &cfg).unwrap();
        prop_assert_eq!(grown.root.support().total(), d.len());
        let pruned = prune_tree(&grown, &cfg);
        prop_assert_eq!(pruned.root.support(), grown.root.support());
    }

    #[test]
    fn pruning_only_shrinks(seed in any::<u64>(), noise in 0.0..0.4f64) {
        let d = generate_synthetic(&ManualProsodic, &SyntheticConfig::new(150, noise, seed)).unwrap();
        let cfg = TreeConfig::default();
        let mask = FeatureSetSpec::resolve("prosody").unwrap().features;
        let grown = grow_tree(&d, mask, &cfg).unwrap();
        let pruned = prune_tree(&grown, &cfg);
        prop_assert!(pruned.size() <= grown.size());
        prop_assert!(pruned.root.leaf_count() <= grown.root.leaf_count());
        prop_assert!(pruned.training_errors() >= grown.training_errors());
        // Pruning an already pruned tree changes nothing.
        prop_assert_eq!(prune_tree(&pruned, &cfg), pruned);
    }

    #[test]
    fn subset_filters_commute(seed in any::<u64>(), n in 0usize..80) {
        let d = random_corpus(seed, n);
        prop_assert_eq!(
            d.filter_classifiable().filter_non_conjuncts(),
            d.filter_non_conjuncts().filter_classifiable()
        );
        let stats = d.stats();
        prop_assert_eq!(stats.classes.total(), d.len());
        prop_assert_eq!(stats.tokens.values().sum::<usize>() + stats.untokenized, d.len());
    }

    #[test]
    fn significance_is_antisymmetric(a in estimate(), b in estimate()) {
        let ab = significant(&a, &b);
        let ba = significant(&b, &a);
        let mirrored = match ab {
            Comparison::FirstBetter => Comparison::SecondBetter,
            Comparison::SecondBetter => Comparison::FirstBetter,
            Comparison::Neither => Comparison::Neither,
        };
        prop_assert_eq!(ba, mirrored);
    }

    #[test]
    fn intervals_are_symmetric_and_nonnegative(errs in proptest::collection::vec(0.0..=1.0f64, 2..15), r in 0.0..=1.0f64, n in 1usize..2000) {
        let cv = cv_ci(&errs).unwrap();
        let mean = errs.iter().sum::<f64>() / errs.len() as f64;
        prop_assert!((cv.rate - mean).abs() < 1e-12);
        prop_assert!(cv.margin >= 0.0);
        prop_assert!((cv.upper() - cv.rate - (cv.rate - cv.lower())).abs() < 1e-12);
        prop_assert!(holdout_ci(r, n).unwrap().margin >= 0.0);
    }

    #[test]
    fn folds_partition_and_balance(n in 2usize..1200, k in 2usize..12, seed in any::<u64>()) {
        prop_assume!(n >= k);
        let f = partition_folds(n, k, seed).unwrap();
        let mut seen = vec![0u8; n];
        for fold in 0..k {
            for i in f.test_indices(fold) {
                seen[i] += 1;
            }
            prop_assert_eq!(f.train_indices(fold).len() + f.test_indices(fold).len(), n);
        }
        prop_assert!(seen.iter().all(|&c| c == 1));
        let sizes = f.sizes();
        prop_assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
        prop_assert_eq!(&partition_folds(n, k, seed).unwrap(), &f);
    }

    #[test]
    fn derived_features_follow_their_sources(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = sample_features(&mut rng, 15, 0.2);
        prop_assert!(f.validate().is_ok());
        let a = f.accent.unwrap();
        let bitonal = matches!(a, Accent::LstarH | Accent::LHstar | Accent::HstarL | Accent::HLstar);
        prop_assert_eq!(f.accent_star() == Some(AbstractAccent::Complex), bitonal);
        prop_assert_eq!(f.accent_star(), Some(derive_abstract_accent(a)));
        let op = f.preceding_orthography.unwrap();
        let punct = matches!(
            op,
            PrecedingOrthography::Comma | PrecedingOrthography::Dash
                | PrecedingOrthography::Period | PrecedingOrthography::Paragraph
        );
        prop_assert_eq!(f.preceding_orthography_star() == Some(Flag::True), punct);
        prop_assert_eq!(f.succeeding_orthography_star(), f.succeeding_orthography.map(derive_abstract_orthography));
    }
}

#[test]
fn fold_order_does_not_matter() {
    let d = generate_synthetic(&ManualProsodic, &SyntheticConfig::new(300, 0.1, 42)).unwrap();
    let d = d.project(&FeatureSetSpec::resolve("prosody").unwrap()).unwrap();
    let opts = CvOptions::new(10, 42);
    for learner in [LearnerSpec::parse("dtree").unwrap(), LearnerSpec::parse("rules").unwrap()] {
        let forward = cross_validate_with(&d, &opts, |folds| {
            (0..10).map(|f| fold_error(&learner, &d, folds, f, &opts)).collect()
        })
        .unwrap();
        let backward = cross_validate_with(&d, &opts, |folds| {
            let mut errs: Vec<f64> = (0..10)
                .rev()
                .map(|f| fold_error(&learner, &d, folds, f, &opts).unwrap())
                .collect();
            errs.reverse();
            Ok(errs)
        })
        .unwrap();
        assert_eq!(forward, backward);
    }
}
