//! Tokenization and normalization shared by the pair builder and the metrics.

use unicode_general_category::{get_general_category, GeneralCategory};

/// Punctuation: every Unicode `P*` character plus a few quote-like symbols
/// that editors use interchangeably with real quotes.
pub fn is_punctuation(c: char) -> bool {
    use GeneralCategory::*;
    matches!(
        get_general_category(c),
        ConnectorPunctuation
            | DashPunctuation
            | OpenPunctuation
            | ClosePunctuation
            | InitialPunctuation
            | FinalPunctuation
            | OtherPunctuation
    ) || matches!(c, '´' | '`' | '’' | '‘' | '“' | '”')
}

fn is_token_char(c: char) -> bool {
    use GeneralCategory::*;
    c.is_alphanumeric() || matches!(get_general_category(c), NonspacingMark | SpacingMark | EnclosingMark)
}

/// Lowercased word tokens. Whitespace, punctuation and symbols separate
/// tokens and are dropped; numerals are kept.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !is_token_char(c))
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
        .collect()
}

/// Near-duplicate key: lowercase, punctuation removed, whitespace collapsed.
pub fn near_dup_key(text: &str) -> String {
    let stripped: String = text
        .chars()
        .filter(|c| !is_punctuation(*c))
        .collect::<String>()
        .to_lowercase();
    stripped.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Whitespace-delimited word count.
pub fn word_count(text: &str) -> usize {
    text.split_whitespace().count()
}
