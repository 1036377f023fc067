//! Small hand-coded examples and planted models shared by tests.

use super::schema::*;
use super::Example;
use super::Features;
use super::Value;

// The two occurrences of "now" in "(Now) (now that we have all been
// welcomed here)", coded with every feature.

/// First "now": alone in its intermediate phrase, H*+L, after a paragraph
/// break; discourse.
pub fn annotated_first() -> Example {
    Example::new(
        Features {
            phrase_length: Some(9),
            phrase_position: Some(1),
            intermediate_length: Some(1),
            intermediate_position: Some(1),
            composition: Some(Composition::Only),
            accent: Some(Accent::HstarL),
            preceding_cue: Some(Flag::False),
            succeeding_cue: Some(Flag::True),
            preceding_orthography: Some(PrecedingOrthography::Paragraph),
            succeeding_orthography: Some(SucceedingOrthography::False),
            part_of_speech: Some(PartOfSpeech::Adverb),
            token: Some(CueToken::Now),
        },
        JudgeLabel::D,
        JudgeLabel::D,
    )
}

/// Second "now": first of eight words in its intermediate phrase, H*;
/// sentential.
pub fn annotated_second() -> Example {
    Example::new(
        Features {
            phrase_length: Some(9),
            phrase_position: Some(2),
            intermediate_length: Some(8),
            intermediate_position: Some(1),
            composition: Some(Composition::Other),
            accent: Some(Accent::Hstar),
            preceding_cue: Some(Flag::True),
            succeeding_cue: Some(Flag::False),
            preceding_orthography: Some(PrecedingOrthography::False),
            succeeding_orthography: Some(SucceedingOrthography::False),
            part_of_speech: Some(PartOfSpeech::Adverb),
            token: Some(CueToken::Now),
        },
        JudgeLabel::S,
        JudgeLabel::S,
    )
}

/// `if P-P ≥ 2 then sentential`, default discourse.
pub fn position_ruleset() -> crate::rules::RuleSet {
    use crate::rules::{Op, Rule, RuleSet, Test};
    let t = Test::new(Feature::PhrasePosition, Op::Ge, Value::Num(2)).expect("valid test");
    RuleSet::new(
        alloc::vec![Rule::new(alloc::vec![t], ClassLabel::Sentential)],
        ClassLabel::Discourse,
    )
}

/// `unknown` exactly when the accent is ambiguous; otherwise the position
/// rule of [`position_ruleset`].
pub fn ambiguous_unknown_ruleset() -> crate::rules::RuleSet {
    use crate::rules::{ConflictStrategy, Op, Rule, Test};
    let amb = Test::new(Feature::Accent, Op::Eq, Value::Sym(Accent::Ambiguous.index()))
        .expect("valid test");
    let mut rs = position_ruleset();
    rs.rules.insert(0, Rule::new(alloc::vec![amb], ClassLabel::Unknown));
    rs.strategy = ConflictStrategy::First;
    rs
}

/// Every valid combination of the prosodic features with lengths up to
/// `max_length`: positions within lengths, and I-C = only only with a
/// one-word intermediate phrase. Textual features and the token are unset.
pub fn prosodic_domain(max_length: u32) -> alloc::vec::Vec<Features> {
    let mut out = alloc::vec::Vec::new();
    for pl in 1..=max_length {
        for pp in 1..=pl {
            for &ic in Composition::ALL {
                let il_max = if ic == Composition::Only { 1 } else { max_length };
                for il in 1..=il_max {
                    for ip in 1..=il {
                        for &a in Accent::ALL {
                            out.push(Features {
                                phrase_length: Some(pl),
                                phrase_position: Some(pp),
                                intermediate_length: Some(il),
                                intermediate_position: Some(ip),
                                composition: Some(ic),
                                accent: Some(a),
                                ..Features::default()
                            });
                        }
                    }
                }
            }
        }
    }
    out
}
