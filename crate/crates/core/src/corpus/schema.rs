//! Feature codes and their value domains.

use core::fmt;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

/// Declares a closed symbolic domain. The first string is the display name
/// used in models and reports; any further strings are accepted spellings
/// when reading corpus files.
macro_rules! symbolic_enum {
    (
        $(#[$meta:meta])*
        pub enum $name:ident {
            $( $(#[$vmeta:meta])* $variant:ident => $display:literal $(| $alias:literal)* ),+ $(,)?
        }
    ) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        #[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
        pub enum $name {
            $( $(#[$vmeta])* $variant ),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];
            pub const NAMES: &'static [&'static str] = &[$($display),+];

            pub fn name(self) -> &'static str {
                Self::NAMES[self as usize]
            }

            pub fn index(self) -> u8 {
                self as u8
            }

            pub fn from_index(i: u8) -> Option<Self> {
                Self::ALL.get(i as usize).copied()
            }

            /// Accepts the display name or any corpus alias.
            pub fn parse(s: &str) -> Option<Self> {
                match s {
                    $( $display $(| $alias)* => Some($name::$variant), )+
                    _ => None,
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }
    };
}

symbolic_enum! {
    /// Composition of the intermediate phrase (I-C).
    pub enum Composition {
        Only => "only",
        OnlyCuePhrases => "only cue phrases" | "only_cue_phrases" | "only-cue-phrases",
        Other => "other",
    }
}

symbolic_enum! {
    /// Pitch accent on the cue phrase (A).
    pub enum Accent {
        Hstar => "H*",
        Lstar => "L*",
        LstarH => "L*+H",
        LHstar => "L+H*",
        HstarL => "H*+L",
        HLstar => "H+L*",
        Deaccented => "deaccented" | "deacc.",
        Ambiguous => "ambiguous" | "amb.",
    }
}

symbolic_enum! {
    /// Abstracted accent (A*): the bitonal accents collapse to `complex`.
    pub enum AbstractAccent {
        Hstar => "H*",
        Lstar => "L*",
        Complex => "complex",
        Deaccented => "deaccented" | "deacc.",
        Ambiguous => "ambiguous" | "amb.",
    }
}

symbolic_enum! {
    /// Three-valued flag used by C-P, C-S, O-P* and O-S*.
    pub enum Flag {
        True => "true" | "t",
        False => "false" | "f",
        Na => "NA",
    }
}

symbolic_enum! {
    /// Orthography immediately before the cue phrase (O-P).
    pub enum PrecedingOrthography {
        Comma => "comma",
        Dash => "dash",
        Period => "period",
        Paragraph => "paragraph" | "par.",
        False => "false" | "f",
        Na => "NA",
    }
}

symbolic_enum! {
    /// Orthography immediately after the cue phrase (O-S). No paragraph value.
    pub enum SucceedingOrthography {
        Comma => "comma",
        Dash => "dash",
        Period => "period",
        False => "false" | "f",
        Na => "NA",
    }
}

symbolic_enum! {
    /// Tagger output restricted to the tags actually assigned to cue phrases.
    pub enum PartOfSpeech {
        Article => "article" | "art.",
        CoordinatingConjunction => "coordinating conjunction" | "coord.",
        CardinalNumeral => "cardinal numeral" | "card.",
        SubordinatingConjunction => "subordinating conjunction" | "subord.",
        Preposition => "preposition" | "prep.",
        Adjective => "adjective" | "adj.",
        Noun => "singular or mass noun" | "noun",
        ProperNoun => "singular proper noun" | "propn.",
        Intensifier => "intensifier" | "intens.",
        Adverb => "adverb" | "adv.",
        Verb => "verb base form" | "verb",
        Na => "NA",
    }
}

symbolic_enum! {
    /// The cue phrase itself (T).
    pub enum CueToken {
        Actually => "actually",
        Also => "also",
        Although => "although",
        And => "and",
        Basically => "basically",
        Because => "because",
        But => "but",
        Essentially => "essentially",
        Except => "except",
        Finally => "finally",
        First => "first",
        Further => "further",
        Generally => "generally",
        However => "however",
        Indeed => "indeed",
        Like => "like",
        Look => "look",
        Next => "next",
        No => "no",
        Now => "now",
        Ok => "ok",
        Or => "or",
        Otherwise => "otherwise",
        Right => "right",
        Say => "say",
        Second => "second",
        See => "see",
        Similarly => "similarly",
        Since => "since",
        So => "so",
        Then => "then",
        Therefore => "therefore",
        Well => "well",
        Yes => "yes",
    }
}

impl CueToken {
    /// `and`, `or` and `but`.
    pub fn is_conjunct(self) -> bool {
        matches!(self, CueToken::And | CueToken::Or | CueToken::But)
    }
}

impl PartOfSpeech {
    /// Short spelling written to corpus files.
    pub fn corpus_token(self) -> &'static str {
        match self {
            PartOfSpeech::Article => "art.",
            PartOfSpeech::CoordinatingConjunction => "coord.",
            PartOfSpeech::CardinalNumeral => "card.",
            PartOfSpeech::SubordinatingConjunction => "subord.",
            PartOfSpeech::Preposition => "prep.",
            PartOfSpeech::Adjective => "adj.",
            PartOfSpeech::Noun => "noun",
            PartOfSpeech::ProperNoun => "propn.",
            PartOfSpeech::Intensifier => "intens.",
            PartOfSpeech::Adverb => "adv.",
            PartOfSpeech::Verb => "verb",
            PartOfSpeech::Na => "NA",
        }
    }
}

symbolic_enum! {
    /// One judge's call on a cue phrase. `?` in corpus files.
    pub enum JudgeLabel {
        D => "D",
        S => "S",
        Amb => "?",
    }
}

symbolic_enum! {
    /// Class learned and predicted by every model.
    pub enum ClassLabel {
        Discourse => "discourse" | "disc.",
        Sentential => "sentential" | "sent.",
        Unknown => "unknown",
    }
}

/// Maps the two judges' calls to a class: agreement on D or S gives that
/// class, every other pair (including double `?`) is `unknown`.
pub fn derive_class(j1: JudgeLabel, j2: JudgeLabel) -> ClassLabel {
    match (j1, j2) {
        (JudgeLabel::D, JudgeLabel::D) => ClassLabel::Discourse,
        (JudgeLabel::S, JudgeLabel::S) => ClassLabel::Sentential,
        _ => ClassLabel::Unknown,
    }
}

pub fn derive_abstract_accent(a: Accent) -> AbstractAccent {
    match a {
        Accent::Hstar => AbstractAccent::Hstar,
        Accent::Lstar => AbstractAccent::Lstar,
        Accent::LstarH | Accent::LHstar | Accent::HstarL | Accent::HLstar => {
            AbstractAccent::Complex
        }
        Accent::Deaccented => AbstractAccent::Deaccented,
        Accent::Ambiguous => AbstractAccent::Ambiguous,
    }
}

/// Either orthography feature, so one derivation serves O-P* and O-S*.
pub trait Orthography: Copy {
    fn abstracted(self) -> Flag;
}

impl Orthography for PrecedingOrthography {
    fn abstracted(self) -> Flag {
        match self {
            PrecedingOrthography::Comma
            | PrecedingOrthography::Dash
            | PrecedingOrthography::Period
            | PrecedingOrthography::Paragraph => Flag::True,
            PrecedingOrthography::False => Flag::False,
            PrecedingOrthography::Na => Flag::Na,
        }
    }
}

impl Orthography for SucceedingOrthography {
    fn abstracted(self) -> Flag {
        match self {
            SucceedingOrthography::Comma
            | SucceedingOrthography::Dash
            | SucceedingOrthography::Period => Flag::True,
            SucceedingOrthography::False => Flag::False,
            SucceedingOrthography::Na => Flag::Na,
        }
    }
}

pub fn derive_abstract_orthography<O: Orthography>(o: O) -> Flag {
    o.abstracted()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeatureKind {
    Numeric,
    Symbolic,
}

/// The fifteen feature codes in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub enum Feature {
    #[cfg_attr(feature = "serde", serde(rename = "P-L"))]
    PhraseLength,
    #[cfg_attr(feature = "serde", serde(rename = "P-P"))]
    PhrasePosition,
    #[cfg_attr(feature = "serde", serde(rename = "I-L"))]
    IntermediateLength,
    #[cfg_attr(feature = "serde", serde(rename = "I-P"))]
    IntermediatePosition,
    #[cfg_attr(feature = "serde", serde(rename = "I-C"))]
    Composition,
    #[cfg_attr(feature = "serde", serde(rename = "A"))]
    Accent,
    #[cfg_attr(feature = "serde", serde(rename = "A*"))]
    AbstractAccent,
    #[cfg_attr(feature = "serde", serde(rename = "C-P"))]
    PrecedingCue,
    #[cfg_attr(feature = "serde", serde(rename = "C-S"))]
    SucceedingCue,
    #[cfg_attr(feature = "serde", serde(rename = "O-P"))]
    PrecedingOrthography,
    #[cfg_attr(feature = "serde", serde(rename = "O-P*"))]
    AbstractPrecedingOrthography,
    #[cfg_attr(feature = "serde", serde(rename = "O-S"))]
    SucceedingOrthography,
    #[cfg_attr(feature = "serde", serde(rename = "O-S*"))]
    AbstractSucceedingOrthography,
    #[cfg_attr(feature = "serde", serde(rename = "POS"))]
    PartOfSpeech,
    #[cfg_attr(feature = "serde", serde(rename = "T"))]
    Token,
}

impl Feature {
    pub const ALL: [Feature; 15] = [
        Feature::PhraseLength,
        Feature::PhrasePosition,
        Feature::IntermediateLength,
        Feature::IntermediatePosition,
        Feature::Composition,
        Feature::Accent,
        Feature::AbstractAccent,
        Feature::PrecedingCue,
        Feature::SucceedingCue,
        Feature::PrecedingOrthography,
        Feature::AbstractPrecedingOrthography,
        Feature::SucceedingOrthography,
        Feature::AbstractSucceedingOrthography,
        Feature::PartOfSpeech,
        Feature::Token,
    ];

    /// The fourteen prosodic and textual features, without the token.
    pub const NON_LEXICAL: [Feature; 14] = {
        let mut out = [Feature::PhraseLength; 14];
        let mut i = 0;
        while i < 14 {
            out[i] = Feature::ALL[i];
            i += 1;
        }
        out
    };

    pub fn code(self) -> &'static str {
        match self {
            Feature::PhraseLength => "P-L",
            Feature::PhrasePosition => "P-P",
            Feature::IntermediateLength => "I-L",
            Feature::IntermediatePosition => "I-P",
            Feature::Composition => "I-C",
            Feature::Accent => "A",
            Feature::AbstractAccent => "A*",
            Feature::PrecedingCue => "C-P",
            Feature::SucceedingCue => "C-S",
            Feature::PrecedingOrthography => "O-P",
            Feature::AbstractPrecedingOrthography => "O-P*",
            Feature::SucceedingOrthography => "O-S",
            Feature::AbstractSucceedingOrthography => "O-S*",
            Feature::PartOfSpeech => "POS",
            Feature::Token => "T",
        }
    }

    pub fn from_code(code: &str) -> Option<Feature> {
        Feature::ALL.iter().copied().find(|f| f.code() == code)
    }

    pub fn description(self) -> &'static str {
        match self {
            Feature::PhraseLength => "length of intonational phrase",
            Feature::PhrasePosition => "position in intonational phrase",
            Feature::IntermediateLength => "length of intermediate phrase",
            Feature::IntermediatePosition => "position in intermediate phrase",
            Feature::Composition => "composition of intermediate phrase",
            Feature::Accent => "accent",
            Feature::AbstractAccent => "accent*",
            Feature::PrecedingCue => "preceding cue phrase",
            Feature::SucceedingCue => "succeeding cue phrase",
            Feature::PrecedingOrthography => "preceding orthography",
            Feature::AbstractPrecedingOrthography => "preceding orthography*",
            Feature::SucceedingOrthography => "succeeding orthography",
            Feature::AbstractSucceedingOrthography => "succeeding orthography*",
            Feature::PartOfSpeech => "part-of-speech",
            Feature::Token => "token",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn kind(self) -> FeatureKind {
        match self {
            Feature::PhraseLength
            | Feature::PhrasePosition
            | Feature::IntermediateLength
            | Feature::IntermediatePosition => FeatureKind::Numeric,
            _ => FeatureKind::Symbolic,
        }
    }

    pub fn is_numeric(self) -> bool {
        self.kind() == FeatureKind::Numeric
    }

    pub fn is_prosodic(self) -> bool {
        self.index() <= Feature::AbstractAccent.index()
    }

    pub fn is_textual(self) -> bool {
        (Feature::PrecedingCue.index()..=Feature::PartOfSpeech.index()).contains(&self.index())
    }

    /// A*, O-P* and O-S* are computed from another column.
    pub fn is_derived(self) -> bool {
        self.source() != self
    }

    /// The raw column a feature's value comes from.
    pub fn source(self) -> Feature {
        match self {
            Feature::AbstractAccent => Feature::Accent,
            Feature::AbstractPrecedingOrthography => Feature::PrecedingOrthography,
            Feature::AbstractSucceedingOrthography => Feature::SucceedingOrthography,
            f => f,
        }
    }

    /// Display names of a symbolic feature's values, in symbol-index order.
    /// Empty for numeric features.
    pub fn domain(self) -> &'static [&'static str] {
        match self {
            Feature::Composition => Composition::NAMES,
            Feature::Accent => Accent::NAMES,
            Feature::AbstractAccent => AbstractAccent::NAMES,
            Feature::PrecedingCue
            | Feature::SucceedingCue
            | Feature::AbstractPrecedingOrthography
            | Feature::AbstractSucceedingOrthography => Flag::NAMES,
            Feature::PrecedingOrthography => PrecedingOrthography::NAMES,
            Feature::SucceedingOrthography => SucceedingOrthography::NAMES,
            Feature::PartOfSpeech => PartOfSpeech::NAMES,
            Feature::Token => CueToken::NAMES,
            _ => &[],
        }
    }

    pub fn domain_size(self) -> usize {
        self.domain().len()
    }

    /// Parses a symbol by display name or corpus alias.
    pub fn parse_symbol(self, s: &str) -> Option<u8> {
        match self {
            Feature::Composition => Composition::parse(s).map(|v| v.index()),
            Feature::Accent => Accent::parse(s).map(|v| v.index()),
            Feature::AbstractAccent => AbstractAccent::parse(s).map(|v| v.index()),
            Feature::PrecedingCue
            | Feature::SucceedingCue
            | Feature::AbstractPrecedingOrthography
            | Feature::AbstractSucceedingOrthography => Flag::parse(s).map(|v| v.index()),
            Feature::PrecedingOrthography => PrecedingOrthography::parse(s).map(|v| v.index()),
            Feature::SucceedingOrthography => SucceedingOrthography::parse(s).map(|v| v.index()),
            Feature::PartOfSpeech => PartOfSpeech::parse(s).map(|v| v.index()),
            Feature::Token => CueToken::parse(s).map(|v| v.index()),
            _ => None,
        }
    }

    pub fn symbol_name(self, symbol: u8) -> Option<&'static str> {
        self.domain().get(symbol as usize).copied()
    }
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// A feature value as seen by the learners: an integer for the four
/// length/position features, a symbol index into [`Feature::domain`]
/// otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(untagged))]
pub enum Value {
    Num(u32),
    Sym(u8),
}

impl Value {
    pub fn as_num(self) -> Option<u32> {
        match self {
            Value::Num(n) => Some(n),
            Value::Sym(_) => None,
        }
    }

    pub fn as_sym(self) -> Option<u8> {
        match self {
            Value::Sym(s) => Some(s),
            Value::Num(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn judge_grid_has_two_classifiable_cells() {
        let mut classifiable = 0;
        for &a in JudgeLabel::ALL {
            for &b in JudgeLabel::ALL {
                if derive_class(a, b) != ClassLabel::Unknown {
                    classifiable += 1;
                }
            }
        }
        assert_eq!(classifiable, 2);
        assert_eq!(derive_class(JudgeLabel::D, JudgeLabel::D), ClassLabel::Discourse);
        assert_eq!(derive_class(JudgeLabel::Amb, JudgeLabel::S), ClassLabel::Unknown);
        assert_eq!(derive_class(JudgeLabel::S, JudgeLabel::D), ClassLabel::Unknown);
        assert_eq!(derive_class(JudgeLabel::S, JudgeLabel::S), ClassLabel::Sentential);
    }

    #[test]
    fn only_bitonal_accents_are_complex() {
        for &a in Accent::ALL {
            let bitonal = a.name().contains('+');
            assert_eq!(derive_abstract_accent(a) == AbstractAccent::Complex, bitonal, "{a}");
        }
        assert_eq!(derive_abstract_accent(Accent::LHstar), AbstractAccent::Complex);
        assert_eq!(derive_abstract_accent(Accent::Hstar), AbstractAccent::Hstar);
        assert_eq!(derive_abstract_accent(Accent::Ambiguous), AbstractAccent::Ambiguous);
    }

    #[test]
    fn orthography_abstraction() {
        assert_eq!(derive_abstract_orthography(PrecedingOrthography::Paragraph), Flag::True);
        assert_eq!(derive_abstract_orthography(PrecedingOrthography::False), Flag::False);
        assert_eq!(derive_abstract_orthography(PrecedingOrthography::Na), Flag::Na);
        assert_eq!(derive_abstract_orthography(SucceedingOrthography::Dash), Flag::True);
        for &o in PrecedingOrthography::ALL {
            let punct = !matches!(o, PrecedingOrthography::False | PrecedingOrthography::Na);
            assert_eq!(o.abstracted() == Flag::True, punct);
        }
    }

    #[test]
    fn token_list_has_34_members_and_three_conjuncts() {
        assert_eq!(CueToken::ALL.len(), 34);
        let conj: alloc::vec::Vec<_> = CueToken::ALL.iter().filter(|t| t.is_conjunct()).collect();
        assert_eq!(conj, [&CueToken::And, &CueToken::But, &CueToken::Or]);
    }

    #[test]
    fn succeeding_orthography_has_no_paragraph() {
        assert!(SucceedingOrthography::parse("paragraph").is_none());
        assert!(SucceedingOrthography::parse("par.").is_none());
        assert_eq!(PrecedingOrthography::parse("par."), Some(PrecedingOrthography::Paragraph));
    }

    #[test]
    fn feature_codes_round_trip() {
        for f in Feature::ALL {
            assert_eq!(Feature::from_code(f.code()), Some(f));
            assert_eq!(f.is_numeric(), f.domain().is_empty());
        }
        assert_eq!(Feature::NON_LEXICAL.len(), 14);
        assert!(!Feature::NON_LEXICAL.contains(&Feature::Token));
        assert_eq!(Feature::from_code("Q"), None);
    }

    #[test]
    fn symbol_aliases_parse() {
        assert_eq!(
            Feature::PartOfSpeech.parse_symbol("adv."),
            Some(PartOfSpeech::Adverb.index())
        );
        assert_eq!(Feature::PrecedingCue.parse_symbol("t"), Some(Flag::True.index()));
        assert_eq!(Feature::Accent.parse_symbol("H*+L"), Some(Accent::HstarL.index()));
        assert_eq!(Feature::Accent.parse_symbol("H*+H"), None);
    }
}
