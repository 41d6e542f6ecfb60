//! The ordered premise/pattern rules that separate sentences from fragments.
//!
//! | rule | premise | pattern (whole tag sequence) |
//! |------|---------|------------------------------|
//! | 1 | contains `MD` | `.* MD RB? VB .*` |
//! | 2 | contains `WDT\|WP\|WRB` | `[^WDT WP WRB]* (VBP\|VBZ\|VBD) .*` |
//! | 3 | contains `IN` | `[^IN]* (VBP\|VBZ\|VBD) .*` |
//! | 4 | always | `.* (VBP\|VBZ\|VBD) .*` |
//!
//! The first rule whose premise holds decides; later rules are not tried.

use super::{PennTag, TaggedCaption};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SentenceVerdict {
    pub is_sentence: bool,
    /// The rule that accepted the sequence, or 0 when it was rejected.
    pub rule_fired: u8,
}

impl SentenceVerdict {
    const REJECTED: SentenceVerdict = SentenceVerdict {
        is_sentence: false,
        rule_fired: 0,
    };
}

/// Index of the rule whose premise selects `tags`.
pub(crate) fn selected_rule(tags: &[PennTag]) -> u8 {
    if tags.contains(&PennTag::Md) {
        1
    } else if tags.iter().any(|t| t.is_wh()) {
        2
    } else if tags.contains(&PennTag::In) {
        3
    } else {
        4
    }
}

/// A modal directly followed by a base-form verb, with at most one adverb between.
fn modal_then_base_verb(tags: &[PennTag]) -> bool {
    tags.iter().enumerate().any(|(i, t)| {
        *t == PennTag::Md
            && match (tags.get(i + 1), tags.get(i + 2)) {
                (Some(PennTag::Vb), _) => true,
                (Some(adv), Some(PennTag::Vb)) => adv.is_adverb(),
                _ => false,
            }
    })
}

/// An inflected verb occurs before the first tag matching `blocker`.
fn inflected_before(tags: &[PennTag], blocker: impl Fn(PennTag) -> bool) -> bool {
    tags.iter().take_while(|t| !blocker(**t)).any(|t| t.is_inflected_verb())
}

pub(crate) fn pattern_matches(rule: u8, tags: &[PennTag]) -> bool {
    match rule {
        1 => modal_then_base_verb(tags),
        2 => inflected_before(tags, PennTag::is_wh),
        3 => inflected_before(tags, |t| t == PennTag::In),
        _ => tags.iter().any(|t| t.is_inflected_verb()),
    }
}

/// Applies the rule table to the whole tag sequence.
pub fn classify_sentence(tc: &TaggedCaption) -> SentenceVerdict {
    classify_tags(tc.tags())
}

fn classify_tags(tags: &[PennTag]) -> SentenceVerdict {
    let rule = selected_rule(tags);
    if pattern_matches(rule, tags) {
        SentenceVerdict {
            is_sentence: true,
            rule_fired: rule,
        }
    } else {
        SentenceVerdict::REJECTED
    }
}

/// Splits at sentence-final punctuation and requires every non-empty segment
/// to be a sentence. The reported rule is the one that accepted the last segment.
pub fn classify_caption(tc: &TaggedCaption) -> SentenceVerdict {
    let mut verdict = SentenceVerdict::REJECTED;
    for segment in tc.tags().split_inclusive(|t| *t == PennTag::Period) {
        if segment.iter().all(|t| t.is_punctuation()) {
            continue;
        }
        verdict = classify_tags(segment);
        if !verdict.is_sentence {
            return SentenceVerdict::REJECTED;
        }
    }
    verdict
}
