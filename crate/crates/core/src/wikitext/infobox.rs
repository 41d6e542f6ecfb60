//! Image slots of `{{Infobox ...}}` templates.

use std::collections::BTreeMap;

use super::scan::{matching_close, split_top_level};

/// One `image<N>` slot with the raw values of its `caption<N>` and `alt<N>` keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfoboxImage {
    pub image: String,
    pub caption: Option<String>,
    pub alt: Option<String>,
    /// The digits after `image`, or 0 when there are none.
    pub counter: u32,
}

/// Parses `key` as `<base><digits?>`, returning the counter.
fn keyed(key: &str, base: &str) -> Option<u32> {
    let rest = key.strip_prefix(base)?;
    if rest.is_empty() {
        return Some(0);
    }
    if rest.bytes().all(|b| b.is_ascii_digit()) {
        return rest.parse().ok();
    }
    None
}

#[derive(Default)]
struct Slot {
    order: usize,
    image: Option<String>,
    caption: Option<String>,
    alt: Option<String>,
}

/// Scans every template whose name starts with `Infobox` for `image<N>` keys.
///
/// Values are returned raw (not cleaned). A template without a closing `}}`
/// is read to the end of the text.
pub fn extract_infobox_images(wikitext: &str) -> Vec<InfoboxImage> {
    let mut out = Vec::new();
    let mut from = 0;
    while let Some(rel) = wikitext[from..].find("{{") {
        let at = from + rel;
        from = at + 2;
        let head = &wikitext[at + 2..];
        let name_end = head.find(['|', '}']).unwrap_or(head.len());
        if !head[..name_end].trim().to_lowercase().starts_with("infobox") {
            continue;
        }
        let body = match matching_close(wikitext, at) {
            Some(end) => &wikitext[at + 2..end - 2],
            None => head,
        };
        out.extend(scan_body(body));
    }
    out
}

fn scan_body(body: &str) -> Vec<InfoboxImage> {
    let mut slots: BTreeMap<u32, Slot> = BTreeMap::new();
    let mut next_order = 0;
    for param in split_top_level(body, b'|').into_iter().skip(1) {
        let Some((key, value)) = param.split_once('=') else {
            continue;
        };
        let key = key.trim();
        let value = value.trim().to_owned();
        let (counter, field) = if let Some(n) = keyed(key, "image") {
            (n, 0)
        } else if let Some(n) = keyed(key, "caption") {
            (n, 1)
        } else if let Some(n) = keyed(key, "alt") {
            (n, 2)
        } else {
            continue;
        };
        let slot = slots.entry(counter).or_default();
        match field {
            0 => {
                slot.image = Some(value);
                slot.order = next_order;
                next_order += 1;
            }
            1 => slot.caption = Some(value),
            _ => slot.alt = Some(value),
        }
    }
    let mut found: Vec<(usize, InfoboxImage)> = slots
        .into_iter()
        .filter_map(|(counter, slot)| {
            let image = slot.image.filter(|v| !v.is_empty())?;
            Some((
                slot.order,
                InfoboxImage {
                    image,
                    caption: slot.caption.filter(|v| !v.is_empty()),
                    alt: slot.alt.filter(|v| !v.is_empty()),
                    counter,
                },
            ))
        })
        .collect();
    found.sort_by_key(|(order, img)| (*order, img.counter));
    found.into_iter().map(|(_, img)| img).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counters_pair_captions() {
        let text = "{{Infobox building\n| name = X\n| image1 = A.jpg\n| caption1 = First one\n| image2 = B.jpg\n}}";
        let found = extract_infobox_images(text);
        assert_eq!(
            found,
            vec![
                InfoboxImage {
                    image: "A.jpg".into(),
                    caption: Some("First one".into()),
                    alt: None,
                    counter: 1
                },
                InfoboxImage {
                    image: "B.jpg".into(),
                    caption: None,
                    alt: None,
                    counter: 2
                },
            ]
        );
    }

    #[test]
    fn no_infobox() {
        assert!(extract_infobox_images("{{Citation needed}} plain [[File:X.jpg]]").is_empty());
        assert!(extract_infobox_images("").is_empty());
    }

    #[test]
    fn nested_template_in_caption() {
        let text = "{{ infobox person | image = Y.png | caption = A cat {{circa|1900}} sits. | alt = Grey cat }}";
        let found = extract_infobox_images(text);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].caption.as_deref(), Some("A cat {{circa|1900}} sits."));
        assert_eq!(found[0].alt.as_deref(), Some("Grey cat"));
        assert_eq!(found[0].counter, 0);
    }

    #[test]
    fn other_templates_and_keys_ignored() {
        let text = "{{Taxobox | image = T.jpg}} {{Infobox x | image_size = 200 | imagex = Q.jpg | image = }}";
        assert!(extract_infobox_images(text).is_empty());
    }

    #[test]
    fn unbalanced_reads_to_end() {
        let text = "{{Infobox river | image = R.jpg | caption = The river flows";
        let found = extract_infobox_images(text);
        assert_eq!(found[0].caption.as_deref(), Some("The river flows"));
    }
}
