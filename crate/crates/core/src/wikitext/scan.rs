//! Bracket matching over `[[ ]]` and `{{ }}` markup.
//!
//! All markers are ASCII, so byte offsets returned here are always valid
//! `str` slice boundaries.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Open {
    Link,
    Template,
}

/// Given `text[start..]` beginning with `[[` or `{{`, returns the byte offset
/// just past the matching closer. Closers that do not match the innermost
/// open construct are treated as plain text.
pub(crate) fn matching_close(text: &str, start: usize) -> Option<usize> {
    let bytes = text.as_bytes();
    let mut stack: Vec<Open> = Vec::new();
    let mut i = start;
    while i + 1 < bytes.len() {
        let pair = (bytes[i], bytes[i + 1]);
        match pair {
            (b'[', b'[') => {
                stack.push(Open::Link);
                i += 2;
            }
            (b'{', b'{') => {
                stack.push(Open::Template);
                i += 2;
            }
            (b']', b']') if stack.last() == Some(&Open::Link) => {
                stack.pop();
                i += 2;
                if stack.is_empty() {
                    return Some(i);
                }
            }
            (b'}', b'}') if stack.last() == Some(&Open::Template) => {
                stack.pop();
                i += 2;
                if stack.is_empty() {
                    return Some(i);
                }
            }
            _ => i += 1,
        }
        if stack.is_empty() {
            // `start` did not point at an opener.
            return None;
        }
    }
    None
}

/// Splits on `sep` occurrences that are not nested inside links or templates.
pub(crate) fn split_top_level(text: &str, sep: u8) -> Vec<&str> {
    let bytes = text.as_bytes();
    let mut parts = Vec::new();
    let mut stack: Vec<Open> = Vec::new();
    let mut last = 0;
    let mut i = 0;
    while i < bytes.len() {
        if i + 1 < bytes.len() {
            match (bytes[i], bytes[i + 1]) {
                (b'[', b'[') => {
                    stack.push(Open::Link);
                    i += 2;
                    continue;
                }
                (b'{', b'{') => {
                    stack.push(Open::Template);
                    i += 2;
                    continue;
                }
                (b']', b']') if stack.last() == Some(&Open::Link) => {
                    stack.pop();
                    i += 2;
                    continue;
                }
                (b'}', b'}') if stack.last() == Some(&Open::Template) => {
                    stack.pop();
                    i += 2;
                    continue;
                }
                _ => {}
            }
        }
        if bytes[i] == sep && stack.is_empty() {
            parts.push(&text[last..i]);
            last = i + 1;
        }
        i += 1;
    }
    parts.push(&text[last..]);
    parts
}

/// Removes `<!-- ... -->` comments and `<nowiki>...</nowiki>` spans. An
/// unterminated comment runs to the end of the text.
pub(crate) fn strip_comments(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut rest = text;
    loop {
        let comment = rest.find("<!--");
        let nowiki = find_ci(rest, "<nowiki>");
        let (at, close, close_len) = match (comment, nowiki) {
            (Some(c), Some(n)) if n < c => (n, find_ci(&rest[n..], "</nowiki>"), "</nowiki>".len()),
            (Some(c), _) => (c, rest[c..].find("-->"), 3),
            (None, Some(n)) => (n, find_ci(&rest[n..], "</nowiki>"), "</nowiki>".len()),
            (None, None) => break,
        };
        out.push_str(&rest[..at]);
        match close {
            Some(end) => rest = &rest[at + end + close_len..],
            None => return out,
        }
    }
    out.push_str(rest);
    out
}

/// ASCII-case-insensitive substring search.
pub(crate) fn find_ci(haystack: &str, needle: &str) -> Option<usize> {
    let h = haystack.as_bytes();
    let n = needle.as_bytes();
    if n.is_empty() || h.len() < n.len() {
        return None;
    }
    (0..=h.len() - n.len()).find(|&i| h[i..i + n.len()].eq_ignore_ascii_case(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_matching() {
        let t = "[[File:X.jpg|thumb|A [[dog]] {{lang|en|x}}]] tail";
        let end = matching_close(t, 0).unwrap();
        assert_eq!(&t[end..], " tail");
        assert_eq!(matching_close("[[open", 0), None);
        assert_eq!(matching_close("{{a|[[b]]}}", 0), Some(11));
    }

    #[test]
    fn split_respects_nesting() {
        let parts = split_top_level("File:X|thumb|A [[b|c]] {{d|e}}", b'|');
        assert_eq!(parts, ["File:X", "thumb", "A [[b|c]] {{d|e}}"]);
    }

    #[test]
    fn comments() {
        assert_eq!(strip_comments("a<!-- x -->b<nowiki>[[c]]</nowiki>d"), "abd");
        assert_eq!(strip_comments("a<!-- never closed"), "a");
    }
}
