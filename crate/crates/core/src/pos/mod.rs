//! Part-of-speech tagging and the rule-based sentence classifier.

mod lexicon;
mod rules;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use lexicon::BuiltinTagger;
pub use rules::{classify_caption, classify_sentence, SentenceVerdict};

macro_rules! penn_tags {
    ($($variant:ident => $text:literal),* $(,)?) => {
        /// Penn Treebank tag, including the punctuation tags.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum PennTag {
            $($variant),*
        }

        impl PennTag {
            pub fn as_str(self) -> &'static str {
                match self {
                    $(PennTag::$variant => $text),*
                }
            }
        }

        impl FromStr for PennTag {
            type Err = TagError;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($text => Ok(PennTag::$variant),)*
                    "(" => Ok(PennTag::Lrb),
                    ")" => Ok(PennTag::Rrb),
                    other => Err(TagError::UnknownTag(other.to_owned())),
                }
            }
        }
    };
}

penn_tags! {
    Cc => "CC", Cd => "CD", Dt => "DT", Ex => "EX", Fw => "FW", In => "IN",
    Jj => "JJ", Jjr => "JJR", Jjs => "JJS", Ls => "LS", Md => "MD",
    Nn => "NN", Nns => "NNS", Nnp => "NNP", Nnps => "NNPS", Pdt => "PDT",
    Pos => "POS", Prp => "PRP", PrpS => "PRP$", Rb => "RB", Rbr => "RBR",
    Rbs => "RBS", Rp => "RP", Sym => "SYM", To => "TO", Uh => "UH",
    Vb => "VB", Vbd => "VBD", Vbg => "VBG", Vbn => "VBN", Vbp => "VBP",
    Vbz => "VBZ", Wdt => "WDT", Wp => "WP", WpS => "WP$", Wrb => "WRB",
    Period => ".", Comma => ",", Colon => ":", OpenQuote => "``",
    CloseQuote => "''", Lrb => "-LRB-", Rrb => "-RRB-", Hash => "#",
    Dollar => "$", Hyph => "HYPH",
}

impl fmt::Display for PennTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl PennTag {
    pub fn is_verb(self) -> bool {
        use PennTag::*;
        matches!(self, Vb | Vbd | Vbg | Vbn | Vbp | Vbz | Md)
    }

    /// VBP, VBZ or VBD.
    pub fn is_inflected_verb(self) -> bool {
        matches!(self, PennTag::Vbp | PennTag::Vbz | PennTag::Vbd)
    }

    pub fn is_adverb(self) -> bool {
        matches!(self, PennTag::Rb | PennTag::Rbr | PennTag::Rbs)
    }

    pub fn is_wh(self) -> bool {
        matches!(self, PennTag::Wdt | PennTag::Wp | PennTag::Wrb)
    }

    pub fn is_noun(self) -> bool {
        use PennTag::*;
        matches!(self, Nn | Nns | Nnp | Nnps)
    }

    pub fn is_punctuation(self) -> bool {
        use PennTag::*;
        matches!(
            self,
            Period | Comma | Colon | OpenQuote | CloseQuote | Lrb | Rrb | Hash | Dollar | Hyph | Sym
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TagSource {
    BuiltinTagger,
    External,
}

/// Tokens with one tag each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedCaption {
    tokens: Vec<String>,
    tags: Vec<PennTag>,
    source: TagSource,
}

impl TaggedCaption {
    pub fn new(tokens: Vec<String>, tags: Vec<PennTag>, source: TagSource) -> Result<Self, TagError> {
        if tokens.len() != tags.len() {
            return Err(TagError::TagCountMismatch {
                tokens: tokens.len(),
                tags: tags.len(),
            });
        }
        Ok(TaggedCaption { tokens, tags, source })
    }

    /// Builds a caption from tags alone, with placeholder tokens.
    pub fn from_tags(tags: &[PennTag]) -> Self {
        TaggedCaption {
            tokens: tags.iter().map(|t| t.as_str().to_owned()).collect(),
            tags: tags.to_vec(),
            source: TagSource::External,
        }
    }

    /// Parses whitespace-separated `token_TAG` items. The tag is the text
    /// after the last underscore.
    pub fn parse_pretagged(line: &str) -> Result<Self, TagError> {
        let mut tokens = Vec::new();
        let mut tags = Vec::new();
        for item in line.split_whitespace() {
            let Some((token, tag)) = item.rsplit_once('_') else {
                return Err(TagError::TagCountMismatch {
                    tokens: tokens.len() + 1,
                    tags: tags.len(),
                });
            };
            if token.is_empty() {
                return Err(TagError::TagCountMismatch {
                    tokens: tokens.len(),
                    tags: tags.len() + 1,
                });
            }
            tokens.push(token.to_owned());
            tags.push(tag.parse()?);
        }
        if tokens.is_empty() {
            return Err(TagError::EmptyCaption);
        }
        TaggedCaption::new(tokens, tags, TagSource::External)
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn tags(&self) -> &[PennTag] {
        &self.tags
    }

    pub fn source(&self) -> TagSource {
        self.source
    }

    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }

    /// Renders as `token_TAG token_TAG ...`.
    pub fn to_pretagged(&self) -> String {
        self.tokens
            .iter()
            .zip(&self.tags)
            .map(|(tok, tag)| format!("{tok}_{tag}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TagError {
    #[error("caption is empty")]
    EmptyCaption,
    #[error("{tokens} tokens but {tags} tags")]
    TagCountMismatch { tokens: usize, tags: usize },
    #[error("unknown Penn Treebank tag {0:?}")]
    UnknownTag(String),
}

/// Anything that turns caption text into a tagged token sequence.
pub trait Tagger: Send + Sync {
    fn tag(&self, caption: &str) -> Result<TaggedCaption, TagError>;
}

/// Treats the caption text itself as `token_TAG` input.
#[derive(Debug, Clone, Copy, Default)]
pub struct PretaggedInput;

impl Tagger for PretaggedInput {
    fn tag(&self, caption: &str) -> Result<TaggedCaption, TagError> {
        TaggedCaption::parse_pretagged(caption)
    }
}

/// True iff any tag is a verb form or a modal.
pub fn has_verb(tc: &TaggedCaption) -> bool {
    tc.tags.iter().any(|t| t.is_verb())
}
