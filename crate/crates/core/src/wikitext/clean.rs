//! Markup removal for captions and alternative texts.

use std::sync::LazyLock;

use regex::Regex;

use super::scan::{find_ci, matching_close, split_top_level, strip_comments};

static REF_PAIRED: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"(?is)<ref(?:\s[^>]*)?>.*?</ref\s*>").unwrap());
static REF_SELF: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"(?i)<ref\b[^>]*/>").unwrap());
static BREAK: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"(?i)<br\s*/?>").unwrap());
static TAG: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"</?[A-Za-z][^<>]*>").unwrap());
static EXT_LINK: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"\[(?:https?:)?//[^\s\]]*(?:\s+([^\]]*))?\]").unwrap());
static QUOTES: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"''+").unwrap());
static ENTITY: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"&(nbsp|ndash|mdash|amp|quot|apos|#[0-9]+|#[xX][0-9a-fA-F]+);").unwrap());

const MAX_PASSES: usize = 32;

/// Strips Wikitext markup from a caption.
///
/// Links keep their label (`[[a|b]]` becomes `b`, `[[a]]` becomes `a`),
/// templates, references and comments are dropped, HTML tags are removed
/// with their inner text kept, and all whitespace runs (line breaks
/// included) collapse to one space. The result is a fixpoint: cleaning it
/// again changes nothing.
pub fn clean_caption(raw: &str) -> String {
    let mut current = clean_pass(raw);
    for _ in 0..MAX_PASSES {
        let next = clean_pass(&current);
        if next == current {
            break;
        }
        current = next;
    }
    current
}

fn clean_pass(raw: &str) -> String {
    let text = strip_comments(raw);
    let text = REF_SELF.replace_all(&text, "");
    let text = REF_PAIRED.replace_all(&text, "");
    let text = drop_unclosed_ref(&text);
    let text = drop_templates(&text);
    let text = unwrap_links(&text);
    let text = EXT_LINK.replace_all(&text, "$1");
    let text = BREAK.replace_all(&text, " ");
    let text = TAG.replace_all(&text, "");
    let text = ENTITY.replace_all(&text, |c: &regex::Captures<'_>| decode_entity(&c[1]));
    let text = QUOTES.replace_all(&text, "");
    let text = drop_stray_markers(&text);
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn drop_unclosed_ref(text: &str) -> String {
    match find_ci(text, "<ref") {
        Some(at) if text[at + 4..].starts_with(['>', ' ', '\t', '\n']) => text[..at].to_owned(),
        _ => text.to_owned(),
    }
}

fn decode_entity(name: &str) -> String {
    match name {
        "nbsp" => " ".into(),
        "ndash" => "\u{2013}".into(),
        "mdash" => "\u{2014}".into(),
        "amp" => "&".into(),
        "quot" => "\"".into(),
        "apos" => "'".into(),
        _ => {
            let num = &name[1..];
            let code = match num.strip_prefix(['x', 'X']) {
                Some(hex) => u32::from_str_radix(hex, 16).ok(),
                None => num.parse::<u32>().ok(),
            };
            code.and_then(char::from_u32)
                .filter(|c| *c != '\0')
                .map(|c| c.to_string())
                .unwrap_or_default()
        }
    }
}

/// Removes balanced `{{...}}` spans including anything nested inside.
fn drop_templates(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut i = 0;
    while let Some(rel) = text[i..].find("{{") {
        let at = i + rel;
        out.push_str(&text[i..at]);
        match matching_close(text, at) {
            Some(end) => i = end,
            None => {
                // Unbalanced opener; drop the marker and keep scanning.
                i = at + 2;
            }
        }
    }
    out.push_str(&text[i..]);
    out
}

/// Replaces every balanced `[[...]]` with its visible text.
fn unwrap_links(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut i = 0;
    while let Some(rel) = text[i..].find("[[") {
        let at = i + rel;
        out.push_str(&text[i..at]);
        match matching_close(text, at) {
            Some(end) => {
                out.push_str(&link_label(&text[at + 2..end - 2]));
                i = end;
            }
            None => i = at + 2,
        }
    }
    out.push_str(&text[i..]);
    out
}

fn link_label(inner: &str) -> String {
    let parts = split_top_level(inner, b'|');
    let target = parts[0].trim();
    let bare = target.trim_start_matches(':').trim();
    if parts.len() == 1 {
        if target.starts_with(':') {
            return unwrap_links(bare);
        }
        if bare.to_lowercase().starts_with("category:") {
            return String::new();
        }
        return unwrap_links(bare);
    }
    let label = parts[parts.len() - 1];
    if label.trim().is_empty() && parts.len() == 2 {
        // Pipe trick: `[[a|]]` renders as `a`.
        return unwrap_links(bare);
    }
    unwrap_links(label)
}

fn drop_stray_markers(text: &str) -> String {
    let mut s = text.to_owned();
    loop {
        let next = s
            .replace("[[", "")
            .replace("]]", "")
            .replace("{{", "")
            .replace("}}", "");
        if next == s {
            return s;
        }
        s = next;
    }
}
