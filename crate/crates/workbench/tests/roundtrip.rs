use cuephrase::corpus_file::{parse_corpus, write_corpus};
use cuephrase::model_io::{model_from_json, model_to_json, parse_model_text, write_model_text};
use cuephrase_core::baselines::ManualProsodic;
use cuephrase_core::corpus::{generate_synthetic, Feature, FeatureMask, SyntheticConfig};
use cuephrase_core::{Classifier, Dataset, LearnerSpec};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn corpus_text_round_trips(seed in any::<u64>(), n in 1usize..60, mask in any::<u16>()) {
        let d = generate_synthetic(&ManualProsodic, &SyntheticConfig::new(n, 0.2, seed)).unwrap();
        let keep: FeatureMask = Feature::ALL
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .flat_map(|(_, &f)| [f, f.source()])
            .collect();
        let d = Dataset::with_available(d.examples, keep, "subset");
        let text = write_corpus(&d);
        let back = parse_corpus(&text, "round trip").unwrap();
        // Reading fills in derived columns, so the normal form is reached
        // after one pass and is stable from then on.
        let normal = write_corpus(&back);
        prop_assert_eq!(write_corpus(&parse_corpus(&normal, "again").unwrap()), normal.clone());
        prop_assert_eq!(back.len(), d.len());
        prop_assert!(keep.is_subset(back.available));
        for (a, b) in back.iter().zip(&d) {
            prop_assert_eq!(a.class(), b.class());
            prop_assert_eq!((a.judge1, a.judge2), (b.judge1, b.judge2));
            for f in keep.iter() {
                prop_assert_eq!(a.value(f), b.value(f));
            }
        }
    }

    #[test]
    fn learned_models_keep_their_predictions(seed in any::<u64>(), rules in any::<bool>()) {
        let d = generate_synthetic(&ManualProsodic, &SyntheticConfig::new(150, 0.15, seed)).unwrap();
        let learner = LearnerSpec::parse(if rules { "rules" } else { "dtree" }).unwrap();
        let model = learner.fit(&d, seed).unwrap();
        let text = write_model_text(&model);
        let parsed = parse_model_text(&text).unwrap();
        prop_assert_eq!(write_model_text(&parsed), text.clone());
        let json = model_from_json(&model_to_json(&model)).unwrap();
        for e in &d {
            let want = model.predict(e).unwrap();
            prop_assert_eq!(parsed.predict(e).unwrap(), want);
            prop_assert_eq!(json.predict(e).unwrap(), want);
        }
    }
}
