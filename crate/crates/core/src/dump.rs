//! Streaming reader for MediaWiki XML export dumps.
//!
//! Pages are produced one at a time from any [`BufRead`] source; memory use is
//! bounded by the largest single revision text, never by the dump size.
//! Decompression is the caller's job.

use std::borrow::Cow;
use std::collections::BTreeSet;
use std::io::{self, BufRead};

use quick_xml::events::{BytesRef, BytesStart, Event};
use quick_xml::Reader;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Oldest export schema version this reader has been checked against.
const MIN_SCHEMA: (u32, u32) = (0, 10);

/// One revision of one page.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WikiPage {
    pub title: String,
    pub namespace: i64,
    pub page_id: u64,
    pub revision_id: u64,
    pub wikitext: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DumpMode {
    /// One page per `<page>` element: the last `<revision>` in document order.
    #[default]
    #[serde(rename = "latest")]
    LatestOnly,
    /// One page per `<revision>` element.
    #[serde(rename = "all")]
    AllRevisions,
}

impl std::str::FromStr for DumpMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "latest" => Ok(DumpMode::LatestOnly),
            "all" => Ok(DumpMode::AllRevisions),
            other => Err(format!("unknown dump mode {other:?} (expected latest or all)")),
        }
    }
}

#[derive(Debug, Error)]
pub enum DumpError {
    #[error("malformed XML at byte {position}: {message}")]
    MalformedXml { position: u64, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DumpStats {
    pub pages: u64,
    pub revisions: u64,
}

/// Which text node is currently being captured.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Capture {
    None,
    Title,
    Namespace,
    PageId,
    RevisionId,
    Text,
}

#[derive(Default)]
struct PageState {
    title: String,
    ns: String,
    id: String,
    namespace: Option<i64>,
    page_id: Option<u64>,
    selected: bool,
}

#[derive(Default)]
struct RevisionState {
    id: String,
    text: String,
}

/// Lazy iterator over the pages of a dump. Created by [`stream_pages`].
pub struct PageStream<R: BufRead> {
    reader: Reader<R>,
    buf: Vec<u8>,
    mode: DumpMode,
    namespaces: Option<BTreeSet<i64>>,
    stack: Vec<String>,
    capture: Capture,
    page: Option<PageState>,
    revision: Option<RevisionState>,
    latest: Option<(u64, String)>,
    pages_seen: u64,
    schema_warning: Option<String>,
    peak_buffer: usize,
    done: bool,
}

/// Streams the pages of `source` whose namespace is in `namespaces`.
///
/// An empty `namespaces` set selects every namespace.
pub fn stream_pages<R, I>(source: R, mode: DumpMode, namespaces: I) -> PageStream<R>
where
    R: BufRead,
    I: IntoIterator<Item = i64>,
{
    let namespaces: BTreeSet<i64> = namespaces.into_iter().collect();
    let mut reader = Reader::from_reader(source);
    let config = reader.config_mut();
    config.check_end_names = true;
    config.expand_empty_elements = false;
    PageStream {
        reader,
        buf: Vec::with_capacity(8 * 1024),
        mode,
        namespaces: (!namespaces.is_empty()).then_some(namespaces),
        stack: Vec::new(),
        capture: Capture::None,
        page: None,
        revision: None,
        latest: None,
        pages_seen: 0,
        schema_warning: None,
        peak_buffer: 0,
        done: false,
    }
}

/// Counts `<page>` elements and yielded revisions over all namespaces.
pub fn count_dump_stats<R: BufRead>(source: R, mode: DumpMode) -> Result<DumpStats, DumpError> {
    let mut stream = stream_pages(source, mode, []);
    let mut revisions = 0;
    for page in stream.by_ref() {
        page?;
        revisions += 1;
    }
    Ok(DumpStats {
        pages: stream.pages_seen(),
        revisions,
    })
}

impl<R: BufRead> PageStream<R> {
    /// Number of `<page>` elements opened so far, selected or not.
    pub fn pages_seen(&self) -> u64 {
        self.pages_seen
    }

    /// Set when the root element declares a schema older than 0.10 or none.
    pub fn schema_warning(&self) -> Option<&str> {
        self.schema_warning.as_deref()
    }

    /// Largest amount of buffered text observed so far, in bytes.
    pub fn peak_buffer_bytes(&self) -> usize {
        self.peak_buffer
    }

    fn malformed(&self, message: impl Into<String>) -> DumpError {
        DumpError::MalformedXml {
            position: self.reader.buffer_position(),
            message: message.into(),
        }
    }

    fn parent(&self) -> Option<&str> {
        self.stack.len().checked_sub(2).map(|i| self.stack[i].as_str())
    }

    fn capture_target(&mut self) -> Option<&mut String> {
        match self.capture {
            Capture::None => None,
            Capture::Title => self.page.as_mut().map(|p| &mut p.title),
            Capture::Namespace => self.page.as_mut().map(|p| &mut p.ns),
            Capture::PageId => self.page.as_mut().map(|p| &mut p.id),
            Capture::RevisionId => self.revision.as_mut().map(|r| &mut r.id),
            Capture::Text => self.revision.as_mut().map(|r| &mut r.text),
        }
    }

    fn on_start(&mut self, name: &str, elem: &BytesStart<'_>) -> Result<(), DumpError> {
        self.stack.push(name.to_owned());
        let parent = self.parent().map(str::to_owned);
        match (name, parent.as_deref()) {
            ("mediawiki", None) => self.check_schema(elem),
            ("page", _) => {
                if self.page.is_some() {
                    return Err(self.malformed("nested <page>"));
                }
                self.pages_seen += 1;
                self.page = Some(PageState::default());
                self.latest = None;
            }
            ("title", Some("page")) => self.capture = Capture::Title,
            ("ns", Some("page")) => self.capture = Capture::Namespace,
            ("id", Some("page")) => self.capture = Capture::PageId,
            ("revision", Some("page")) => {
                self.resolve_page_header()?;
                self.revision = Some(RevisionState::default());
            }
            ("id", Some("revision")) => self.capture = Capture::RevisionId,
            ("text", Some("revision")) if self.page.as_ref().is_some_and(|p| p.selected) => {
                self.capture = Capture::Text;
            }
            _ => {}
        }
        Ok(())
    }

    fn check_schema(&mut self, elem: &BytesStart<'_>) {
        let version = elem
            .attributes()
            .flatten()
            .find(|a| a.key.as_ref() == "version")
            .map(|a| a.value.into_owned());
        let parsed = version.as_deref().and_then(|v| {
            let (major, minor) = v.split_once('.')?;
            Some((major.trim().parse::<u32>().ok()?, minor.trim().parse::<u32>().ok()?))
        });
        match parsed {
            Some(v) if v >= MIN_SCHEMA => {}
            _ => {
                let msg = format!(
                    "export schema version {} is older than 0.10 or unreadable",
                    version.as_deref().unwrap_or("<missing>")
                );
                log::warn!("{msg}");
                self.schema_warning = Some(msg);
            }
        }
    }

    /// Parses `<ns>` and `<id>` of the current page once the first revision starts.
    fn resolve_page_header(&mut self) -> Result<(), DumpError> {
        let Some(page) = self.page.as_ref() else {
            return Err(self.malformed("<revision> outside <page>"));
        };
        if page.page_id.is_some() {
            return Ok(());
        }
        let ns = page.ns.trim();
        let namespace = if ns.is_empty() {
            0
        } else {
            ns.parse::<i64>()
                .ok()
                .filter(|n| *n >= 0)
                .ok_or_else(|| self.malformed(format!("bad namespace {ns:?}")))?
        };
        let id = page.id.trim();
        let page_id = id
            .parse::<u64>()
            .map_err(|_| self.malformed(format!("bad page id {id:?}")))?;
        if page.title.is_empty() {
            return Err(self.malformed("page without title"));
        }
        let selected = self.namespaces.as_ref().is_none_or(|set| set.contains(&namespace));
        let page = self.page.as_mut().expect("checked above");
        page.namespace = Some(namespace);
        page.page_id = Some(page_id);
        page.selected = selected;
        Ok(())
    }

    fn on_end(&mut self) -> Result<Option<WikiPage>, DumpError> {
        let name = self.stack.pop().unwrap_or_default();
        self.capture = Capture::None;
        match name.as_str() {
            "revision" if self.page.is_some() => {
                let Some(rev) = self.revision.take() else {
                    return Ok(None);
                };
                if !self.page.as_ref().is_some_and(|p| p.selected) {
                    return Ok(None);
                }
                let id = rev.id.trim();
                let rev_id = id
                    .parse::<u64>()
                    .map_err(|_| self.malformed(format!("bad revision id {id:?}")))?;
                match self.mode {
                    DumpMode::AllRevisions => return Ok(Some(self.make_page(rev_id, rev.text))),
                    DumpMode::LatestOnly => self.latest = Some((rev_id, rev.text)),
                }
            }
            "page" => {
                let latest = self.latest.take();
                let out = match (self.mode, latest) {
                    (DumpMode::LatestOnly, Some((rev_id, text))) => Some(self.make_page(rev_id, text)),
                    _ => None,
                };
                self.page = None;
                return Ok(out);
            }
            _ => {}
        }
        Ok(None)
    }

    fn make_page(&self, revision_id: u64, wikitext: String) -> WikiPage {
        let page = self.page.as_ref().expect("revision inside page");
        WikiPage {
            title: page.title.clone(),
            namespace: page.namespace.unwrap_or(0),
            page_id: page.page_id.unwrap_or(0),
            revision_id,
            wikitext,
        }
    }

    fn track_peak(&mut self) {
        let text = self.revision.as_ref().map_or(0, |r| r.text.capacity());
        let latest = self.latest.as_ref().map_or(0, |(_, t)| t.capacity());
        self.peak_buffer = self.peak_buffer.max(self.buf.capacity() + text + latest);
    }

    fn next_page(&mut self) -> Result<Option<WikiPage>, DumpError> {
        loop {
            self.buf.clear();
            let event = match self.reader.read_event_into(&mut self.buf) {
                Ok(ev) => ev.into_owned(),
                Err(e) => {
                    return Err(DumpError::MalformedXml {
                        position: self.reader.error_position(),
                        message: e.to_string(),
                    })
                }
            };
            self.track_peak();
            match event {
                Event::Start(elem) => {
                    let name = elem.name().as_ref().to_owned();
                    self.on_start(&name, &elem)?;
                }
                Event::Empty(elem) => {
                    let name = elem.name().as_ref().to_owned();
                    self.on_start(&name, &elem)?;
                    if let Some(page) = self.on_end()? {
                        return Ok(Some(page));
                    }
                }
                Event::End(_) => {
                    if let Some(page) = self.on_end()? {
                        return Ok(Some(page));
                    }
                }
                Event::Text(text) => {
                    if let Some(target) = self.capture_target() {
                        target.push_str(&text);
                    }
                }
                Event::CData(data) => {
                    if let Some(target) = self.capture_target() {
                        target.push_str(&data);
                    }
                }
                Event::GeneralRef(r) => {
                    if let Some(target) = self.capture_target() {
                        target.push_str(&decode_reference(&r));
                    }
                }
                Event::Eof => {
                    if let Some(open) = self.stack.last() {
                        return Err(self.malformed(format!("unexpected end of input inside <{open}>")));
                    }
                    return Ok(None);
                }
                _ => {}
            }
        }
    }
}

impl<R: BufRead> Iterator for PageStream<R> {
    type Item = Result<WikiPage, DumpError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        match self.next_page() {
            Ok(Some(page)) => Some(Ok(page)),
            Ok(None) => {
                self.done = true;
                None
            }
            Err(e) => {
                self.done = true;
                Some(Err(e))
            }
        }
    }
}

/// Decodes the five predefined entities and numeric character references;
/// any other reference is kept verbatim.
fn decode_reference(r: &BytesRef<'_>) -> Cow<'static, str> {
    let name: &str = r;
    let fixed = match name {
        "lt" => "<",
        "gt" => ">",
        "amp" => "&",
        "quot" => "\"",
        "apos" => "'",
        _ => {
            if let Ok(Some(c)) = r.resolve_char_ref() {
                return Cow::Owned(c.to_string());
            }
            return Cow::Owned(format!("&{name};"));
        }
    };
    Cow::Borrowed(fixed)
}
