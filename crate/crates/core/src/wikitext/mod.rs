//! Image references, captions and alternative texts from page Wikitext.
//!
//! Two sources are mined: the inline extended image syntax
//! (`[[File:Name|options|caption]]`) and the `image<N>` / `caption<N>` keys
//! of infobox templates.

mod clean;
mod infobox;
mod scan;
mod uri;

use std::ops::AddAssign;
use std::sync::LazyLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::dump::WikiPage;

pub use clean::clean_caption;
pub use infobox::{extract_infobox_images, InfoboxImage};
pub use uri::{normalize_image_uri, MediaAliases, UriError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Origin {
    #[serde(rename = "inline")]
    InlineSyntax,
    #[serde(rename = "infobox")]
    Infobox,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaptionType {
    #[serde(rename = "regular")]
    Regular,
    #[serde(rename = "alt")]
    AltText,
}

impl CaptionType {
    pub const ALL: [CaptionType; 2] = [CaptionType::Regular, CaptionType::AltText];
}

/// One occurrence of an image on a page. Serializes to the reference JSONL
/// record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageReference {
    #[serde(rename = "image")]
    pub image_uri: String,
    #[serde(rename = "page")]
    pub page_title: String,
    pub page_id: u64,
    #[serde(rename = "rev_id")]
    pub revision_id: u64,
    pub caption: Option<String>,
    #[serde(rename = "alt")]
    pub alt_text: Option<String>,
    pub origin: Origin,
}

impl ImageReference {
    pub fn text(&self, kind: CaptionType) -> Option<&str> {
        match kind {
            CaptionType::Regular => self.caption.as_deref(),
            CaptionType::AltText => self.alt_text.as_deref(),
        }
    }
}

/// Constructs that were recognized but could not be turned into a reference.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub unclosed_links: u64,
    pub bad_targets: u64,
}

impl AddAssign for Diagnostics {
    fn add_assign(&mut self, rhs: Self) {
        self.unclosed_links += rhs.unclosed_links;
        self.bad_targets += rhs.bad_targets;
    }
}

static SIZE: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^(?:\d+)?(?:x\d+)?\s*px$").unwrap());

const FORMAT_WORDS: &[&str] = &["thumb", "thumbnail", "frame", "framed", "frameless", "border"];
const ALIGN_WORDS: &[&str] = &[
    "left",
    "right",
    "center",
    "centre",
    "none",
    "baseline",
    "middle",
    "sub",
    "super",
    "text-top",
    "text-bottom",
    "top",
    "bottom",
];
const KEYED_OPTIONS: &[&str] = &[
    "link",
    "alt",
    "page",
    "class",
    "lang",
    "upright",
    "thumb",
    "thumbnail",
    "thumbtime",
    "start",
    "end",
    "border",
];

/// True when an inline image parameter is an option rather than a caption.
fn is_image_option(param: &str) -> bool {
    let p = param.trim();
    let lower = p.to_lowercase();
    if FORMAT_WORDS.contains(&lower.as_str()) || ALIGN_WORDS.contains(&lower.as_str()) {
        return true;
    }
    if lower == "upright" || lower.starts_with("upright ") || SIZE.is_match(&lower) {
        return true;
    }
    match lower.split_once('=') {
        Some((key, _)) => KEYED_OPTIONS.contains(&key.trim()),
        None => false,
    }
}

fn non_empty(text: String) -> Option<String> {
    (!text.is_empty()).then_some(text)
}

/// Extracts image references from one page.
#[derive(Debug, Clone, Default)]
pub struct Extractor {
    aliases: MediaAliases,
}

impl Extractor {
    pub fn new(aliases: MediaAliases) -> Self {
        Extractor { aliases }
    }

    /// References in document order: inline constructs first, then infobox slots.
    pub fn extract(&self, page: &WikiPage, diag: &mut Diagnostics) -> Vec<ImageReference> {
        let text = scan::strip_comments(&page.wikitext);
        let make = |image_uri: String, caption: Option<String>, alt: Option<String>, origin| ImageReference {
            image_uri,
            page_title: page.title.clone(),
            page_id: page.page_id,
            revision_id: page.revision_id,
            caption,
            alt_text: alt,
            origin,
        };
        let mut refs = Vec::new();

        let mut from = 0;
        while let Some(rel) = text[from..].find("[[") {
            let at = from + rel;
            from = at + 2;
            let head = &text[at + 2..];
            let target_end = head.find(['|', ']']).unwrap_or(head.len());
            let target = &head[..target_end];
            if target.trim_start().starts_with(':') || self.aliases.split(target).is_none() {
                continue;
            }
            let Some(end) = scan::matching_close(&text, at) else {
                diag.unclosed_links += 1;
                continue;
            };
            let parts = scan::split_top_level(&text[at + 2..end - 2], b'|');
            let Ok(uri) = self.aliases.normalize(parts[0]) else {
                diag.bad_targets += 1;
                continue;
            };
            let mut caption = None;
            let mut alt = None;
            for param in &parts[1..] {
                let alt_value = param
                    .split_once('=')
                    .filter(|(key, _)| key.trim().eq_ignore_ascii_case("alt"));
                if let Some((_, value)) = alt_value {
                    alt = Some(value);
                } else if !is_image_option(param) {
                    caption = Some(*param);
                }
            }
            refs.push(make(
                uri,
                caption.map(clean_caption).and_then(non_empty),
                alt.map(clean_caption).and_then(non_empty),
                Origin::InlineSyntax,
            ));
        }

        for slot in extract_infobox_images(&text) {
            let value = slot.image.trim();
            if value.starts_with("[[") || value.starts_with("{{") {
                // Link syntax is picked up by the inline scan; templates are not resolvable.
                continue;
            }
            let normalized = match self.aliases.split(value) {
                Some(_) => self.aliases.normalize(value),
                None => self.aliases.normalize(&format!("File:{value}")),
            };
            let Ok(uri) = normalized else {
                diag.bad_targets += 1;
                continue;
            };
            refs.push(make(
                uri,
                slot.caption.as_deref().map(clean_caption).and_then(non_empty),
                slot.alt.as_deref().map(clean_caption).and_then(non_empty),
                Origin::Infobox,
            ));
        }
        refs
    }
}

/// Extracts references with the default `File`/`Image` prefixes.
pub fn extract_image_refs(page: &WikiPage) -> Vec<ImageReference> {
    Extractor::default().extract(page, &mut Diagnostics::default())
}
