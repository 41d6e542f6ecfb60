//! Shared fixtures: a 20-page dump built from a declarative description, an
//! independent brute-force reimplementation of the filter table over that
//! description, and a lazily generated large dump.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::io::Read;

pub mod oracle;

/// One image occurrence in a revision.
#[derive(Clone, Debug)]
pub struct Ref {
    /// Target as written in the markup.
    pub target: &'static str,
    /// Canonical URI the extractor must produce.
    pub uri: &'static str,
    pub options: &'static [&'static str],
    pub caption: Option<&'static str>,
    pub alt: Option<&'static str>,
    pub infobox: bool,
}

const fn inline(target: &'static str, uri: &'static str, caption: Option<&'static str>) -> Ref {
    Ref {
        target,
        uri,
        options: &["thumb"],
        caption,
        alt: None,
        infobox: false,
    }
}

const fn infobox(target: &'static str, uri: &'static str, caption: Option<&'static str>) -> Ref {
    Ref {
        target,
        uri,
        options: &[],
        caption,
        alt: None,
        infobox: true,
    }
}

const fn icon() -> Ref {
    Ref {
        target: "File:Icon.svg",
        uri: "File:Icon.svg",
        options: &["20px"],
        caption: None,
        alt: None,
        infobox: false,
    }
}

impl Ref {
    const fn alt(mut self, alt: &'static str) -> Ref {
        self.alt = Some(alt);
        self
    }

    const fn options(mut self, options: &'static [&'static str]) -> Ref {
        self.options = options;
        self
    }
}

#[derive(Clone, Debug)]
pub struct Page {
    pub title: &'static str,
    pub ns: i64,
    pub id: u64,
    /// Oldest first; each revision lists its references.
    pub revisions: Vec<Vec<Ref>>,
}

const BRIDGE: &str = "The old bridge crosses the river Wear.";
const BRIDGE_LOWER: &str = "the old bridge crosses the river Wear";
const BRIDGE_SEEN: &str = "The old stone bridge seen from the north bank";
const BRIDGE_OVER: &str = "The old stone bridge over the river Wear";
const FLAG_SQUARE: &str = "Soldiers carry the flag through the town square.";
const CASTLE_HILL: &str = "The castle stands on a hill above the town.";
const CASTLE_WALLS: &str = "Visitors walk along the walls of the castle.";
const CASTLE_RESTORED: &str = "The castle was restored by the council in 1990.";
const CASTLE_ALT: &str = "A stone castle stands on a green hill";
const KITE: &str = "A red kite flies over the valley at dawn.";
const KITE_FLIGHT: &str = "Red kite in flight over a field of wheat";
const HARBOUR_VIEW: &str = "A view of the harbour from the lighthouse at noon";
const BOATS: &str = "Fishing boats leave the harbour before sunrise each morning.";
const BOATS_BANG: &str = "Fishing boats leave the harbour before sunrise each morning!";
const LIGHTHOUSE: &str = "The lighthouse guides ships into the narrow harbour.";
const LIGHTHOUSE_ALT: &str = "A white tower stands on the rocky coast";
const VILLAGE_FOOT: &str = "The village lies at the foot of the hills.";
const VILLAGE_GREEN: &str = "Children play football on the village green.";
const MAP: &str = "Map showing the location of the village in the county";
const PORTRAIT: &str = "Portrait of the composer painted by an unknown artist";
const SYMPHONIES: &str = "The composer wrote most of his symphonies in Vienna.";
const SYMPHONIES_OLD: &str = "The composer wrote his symphonies in Vienna.";
const CATHEDRAL_BUILT: &str = "The cathedral was built in the twelfth century.";
const CHOIR: &str = "A choir sings in the nave of the cathedral.";
const RUBBLE: &str = "Soldiers clearing rubble after the earthquake in the city";
const PAINTING: &str = "A painting of the harbour hangs in the museum.";
const LONELY: &str = "An old man feeds the ducks beside the pond.";

/// `(caption, is sentence under the rules with correct tags, has a verb)`.
pub const LABELS: &[(&str, bool, bool)] = &[
    (BRIDGE, true, true),
    (BRIDGE_LOWER, true, true),
    (BRIDGE_SEEN, false, true),
    (BRIDGE_OVER, false, false),
    (FLAG_SQUARE, true, true),
    (CASTLE_HILL, true, true),
    (CASTLE_WALLS, true, true),
    (CASTLE_RESTORED, true, true),
    (CASTLE_ALT, true, true),
    (KITE, true, true),
    (KITE_FLIGHT, false, false),
    (HARBOUR_VIEW, false, false),
    (BOATS, true, true),
    (BOATS_BANG, true, true),
    (LIGHTHOUSE, true, true),
    (LIGHTHOUSE_ALT, true, true),
    (VILLAGE_FOOT, true, true),
    (VILLAGE_GREEN, true, true),
    (MAP, false, true),
    (PORTRAIT, false, true),
    (SYMPHONIES, true, true),
    (SYMPHONIES_OLD, true, true),
    (CATHEDRAL_BUILT, true, true),
    (CHOIR, true, true),
    (RUBBLE, false, true),
    (PAINTING, false, true),
    (LONELY, true, true),
];

pub fn label(caption: &str) -> (bool, bool) {
    LABELS
        .iter()
        .find(|(c, _, _)| *c == caption)
        .map(|(_, s, v)| (*s, *v))
        .unwrap_or((false, false))
}

pub fn pages() -> Vec<Page> {
    let bridge = |c| inline("File:Old_bridge.jpg", "File:Old bridge.jpg", Some(c));
    let castle = |c| inline("File:Castle.jpg", "File:Castle.jpg", Some(c));
    let page = |id: u64, title: &'static str, refs: Vec<Ref>| Page {
        title,
        ns: 0,
        id,
        revisions: vec![refs],
    };
    vec![
        page(
            1,
            "Old Bridge",
            vec![bridge(BRIDGE), castle(CASTLE_HILL).alt(CASTLE_ALT)],
        ),
        page(
            2,
            "River Wear",
            vec![
                inline("File:Old bridge.jpg", "File:Old bridge.jpg", Some(BRIDGE_LOWER)).options(&["thumb", "upright"]),
                inline("File:Kite.jpg", "File:Kite.jpg", Some(KITE)),
            ],
        ),
        page(
            3,
            "Durham",
            vec![
                inline("Image:Old_bridge.jpg", "File:Old bridge.jpg", Some(BRIDGE_SEEN)).options(&["left", "200px"]),
                infobox("Cathedral.jpg", "File:Cathedral.jpg", Some(CATHEDRAL_BUILT)),
            ],
        ),
        page(
            4,
            "Stone bridges",
            vec![
                bridge(BRIDGE_OVER),
                inline("File:Castle.jpg", "File:Castle.jpg", Some("Castle at night")).options(&[]),
            ],
        ),
        page(
            5,
            "Town square",
            vec![
                bridge(FLAG_SQUARE),
                inline("File:Flag.jpg", "File:Flag.jpg", Some("Brazilian flag")),
            ],
        ),
        page(
            6,
            "Castle",
            vec![infobox("Castle.jpg", "File:Castle.jpg", Some(CASTLE_WALLS)).alt(CASTLE_ALT)],
        ),
        Page {
            title: "Castle history",
            ns: 0,
            id: 7,
            revisions: vec![vec![castle(CASTLE_RESTORED)], vec![castle(CASTLE_RESTORED)]],
        },
        page(
            8,
            "Birds of prey",
            vec![
                inline("File:Kite.jpg", "File:Kite.jpg", Some(KITE_FLIGHT)),
                inline("File:kite.jpg", "File:Kite.jpg", Some(KITE)),
            ],
        ),
        page(
            9,
            "Harbour",
            vec![
                inline("File:Harbour.jpg", "File:Harbour.jpg", Some(HARBOUR_VIEW)),
                inline("File:Lighthouse.jpg", "File:Lighthouse.jpg", Some(LIGHTHOUSE)),
            ],
        ),
        page(
            10,
            "Fishing",
            vec![inline("File:Harbour.jpg", "File:Harbour.jpg", Some(BOATS))],
        ),
        page(
            11,
            "Lighthouses",
            vec![inline("File:Lighthouse.jpg", "File:Lighthouse.jpg", Some(LIGHTHOUSE)).alt(LIGHTHOUSE_ALT)],
        ),
        page(
            12,
            "Village",
            vec![
                inline("File:Village.jpg", "File:Village.jpg", Some(VILLAGE_FOOT)),
                inline("File:Map.jpg", "File:Map.jpg", Some(MAP)),
                inline("File:Village_aerial.jpg", "File:Village aerial.jpg", Some(VILLAGE_FOOT)),
            ],
        ),
        page(
            13,
            "Village green",
            vec![
                inline("File:Village.jpg", "File:Village.jpg", Some(VILLAGE_GREEN)),
                inline("File:Map.jpg", "File:Map.jpg", Some(MAP)),
                inline(
                    "File:Village aerial.jpg",
                    "File:Village aerial.jpg",
                    Some(VILLAGE_GREEN),
                ),
            ],
        ),
        page(
            14,
            "Composer",
            vec![infobox("File:Composer.jpg", "File:Composer.jpg", Some(PORTRAIT))],
        ),
        Page {
            title: "Symphonies",
            ns: 0,
            id: 15,
            revisions: vec![
                vec![inline("File:Composer.jpg", "File:Composer.jpg", Some(SYMPHONIES_OLD))],
                vec![inline("File:Composer.jpg", "File:Composer.jpg", Some(SYMPHONIES))],
            ],
        },
        page(
            16,
            "Cathedral",
            vec![
                inline("File:Cathedral.jpg", "File:Cathedral.jpg", Some(CHOIR)),
                icon(),
                icon(),
                icon(),
            ],
        ),
        page(
            17,
            "Earthquake",
            vec![
                inline("File:Rubble.jpg", "File:Rubble.jpg", Some(RUBBLE)),
                icon(),
                icon(),
                icon(),
            ],
        ),
        page(
            18,
            "Museum",
            vec![
                inline("File:Painting.jpg", "File:Painting.jpg", Some(PAINTING)),
                icon(),
                icon(),
                icon(),
                inline("File:Harbour.jpg", "File:Harbour.jpg", Some(BOATS_BANG)),
            ],
        ),
        Page {
            title: "Talk:Castle",
            ns: 1,
            id: 19,
            revisions: vec![vec![castle(CASTLE_HILL), icon()]],
        },
        page(
            20,
            "Flags",
            vec![
                inline("File:Flag.jpg", "File:Flag.jpg", Some("The national flag of Brazil")),
                icon(),
                icon(),
                inline("File:Lonely.jpg", "File:Lonely.jpg", Some(LONELY)),
            ],
        ),
    ]
}

fn render_revision(refs: &[Ref]) -> String {
    let mut text = String::from("Intro text with a [[link]] and a {{cite|x}}.\n");
    for r in refs.iter().filter(|r| !r.infobox) {
        let mut parts = vec![r.target.to_owned()];
        parts.extend(r.options.iter().map(|o| o.to_string()));
        if let Some(alt) = r.alt {
            parts.push(format!("alt={alt}"));
        }
        if let Some(c) = r.caption {
            parts.push(c.to_owned());
        }
        text.push_str(&format!("[[{}]]\nMore prose.\n", parts.join("|")));
    }
    let boxed: Vec<&Ref> = refs.iter().filter(|r| r.infobox).collect();
    if !boxed.is_empty() {
        text.push_str("{{Infobox place\n| name = X\n");
        for (i, r) in boxed.iter().enumerate() {
            let n = if i == 0 { String::new() } else { (i + 1).to_string() };
            text.push_str(&format!("| image{n} = {}\n", r.target));
            if let Some(c) = r.caption {
                text.push_str(&format!("| caption{n} = {c}\n"));
            }
            if let Some(a) = r.alt {
                text.push_str(&format!("| alt{n} = {a}\n"));
            }
        }
        text.push_str("}}\n");
    }
    text
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn dump_xml(pages: &[Page]) -> String {
    let mut xml = String::from(
        "<mediawiki xmlns=\"http://www.mediawiki.org/xml/export-0.11/\" version=\"0.11\">\n<siteinfo><sitename>Test</sitename></siteinfo>\n",
    );
    for p in pages {
        xml.push_str(&format!(
            "<page>\n<title>{}</title>\n<ns>{}</ns>\n<id>{}</id>\n",
            escape(p.title),
            p.ns,
            p.id
        ));
        for (k, rev) in p.revisions.iter().enumerate() {
            let rev_id = p.id * 100 + k as u64;
            xml.push_str(&format!(
                "<revision><id>{rev_id}</id><contributor><username>U</username><id>9</id></contributor><text xml:space=\"preserve\">{}</text></revision>\n",
                escape(&render_revision(rev))
            ));
        }
        xml.push_str("</page>\n");
    }
    xml.push_str("</mediawiki>\n");
    xml
}

/// Expected reference as the oracle sees it.
#[derive(Clone, Debug)]
pub struct OracleRef {
    pub key: usize,
    pub page_id: u64,
    pub rev_id: u64,
    pub uri: String,
    pub caption: Option<String>,
    pub alt: Option<String>,
}

/// References in the namespace-0 pages; the last revision only, or every
/// revision where a page contributes each distinct reference as many times as
/// its most generous revision shows it.
pub fn oracle_refs(pages: &[Page], all_revisions: bool) -> Vec<OracleRef> {
    let mut out = Vec::new();
    for p in pages.iter().filter(|p| p.ns == 0) {
        let mut quota: BTreeMap<(&str, Option<&str>, Option<&str>), usize> = BTreeMap::new();
        let revs: Vec<(usize, &Vec<Ref>)> = if all_revisions {
            p.revisions.iter().enumerate().collect()
        } else {
            vec![(p.revisions.len() - 1, p.revisions.last().unwrap())]
        };
        for (k, rev) in revs {
            let mut here: BTreeMap<(&str, Option<&str>, Option<&str>), usize> = BTreeMap::new();
            for r in rev {
                let key = (r.uri, r.caption, r.alt);
                *here.entry(key).or_default() += 1;
                let extra = here[&key].saturating_sub(quota.get(&key).copied().unwrap_or(0));
                if all_revisions && extra == 0 {
                    continue;
                }
                out.push(OracleRef {
                    key: out.len(),
                    page_id: p.id,
                    rev_id: p.id * 100 + k as u64,
                    uri: r.uri.to_owned(),
                    caption: r.caption.map(str::to_owned),
                    alt: r.alt.map(str::to_owned),
                });
            }
            for (key, n) in here {
                let q = quota.entry(key).or_default();
                *q = (*q).max(n);
            }
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Counts {
    pub images: u64,
    pub ge2: u64,
    pub ge5: u64,
    pub references: u64,
    pub captions: u64,
    pub candidates: u64,
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum OracleTier {
    Gold,
    Silver,
    Bronze,
}

/// (ref key, kind 0 regular / 1 alt, text)
type Cap = (usize, u8, String);

pub fn norm(s: &str) -> String {
    let kept: String = s.chars().filter(|c| c.is_alphanumeric() || c.is_whitespace()).collect();
    kept.to_lowercase().split_whitespace().collect::<Vec<_>>().join(" ")
}

fn choose2(k: u64) -> u64 {
    if k < 2 {
        0
    } else {
        k * (k - 1) / 2
    }
}

/// Recomputes rows 0..=9 by direct enumeration.
pub fn oracle_report(pages: &[Page], tier: OracleTier) -> (Vec<Counts>, BTreeSet<(u8, String, String)>) {
    let all = tier == OracleTier::Bronze;
    let (min, max, per_page) = match tier {
        OracleTier::Bronze => (2usize, 180usize, Some(18usize)),
        _ => (2, 10, None),
    };
    let refs = oracle_refs(pages, all);
    // image -> list of (ref, captions alive)
    let mut images: BTreeMap<String, Vec<(OracleRef, Vec<Cap>)>> = BTreeMap::new();
    for r in &refs {
        let mut caps = Vec::new();
        if let Some(c) = &r.caption {
            caps.push((r.key, 0u8, c.clone()));
        }
        if let Some(a) = &r.alt {
            caps.push((r.key, 1u8, a.clone()));
        }
        images.entry(r.uri.clone()).or_default().push((r.clone(), caps));
    }
    let bounded = |list: &Vec<(OracleRef, Vec<Cap>)>| -> usize {
        match per_page {
            None => list.len(),
            Some(cap) => {
                let mut by_page: BTreeMap<u64, usize> = BTreeMap::new();
                for (r, _) in list {
                    *by_page.entry(r.page_id).or_insert(0) += 1;
                }
                by_page.values().map(|n| (*n).min(cap)).sum()
            }
        }
    };
    let count = |images: &BTreeMap<String, Vec<(OracleRef, Vec<Cap>)>>| -> Counts {
        let mut c = Counts {
            images: 0,
            ge2: 0,
            ge5: 0,
            references: 0,
            captions: 0,
            candidates: 0,
        };
        for list in images.values().filter(|l| !l.is_empty()) {
            let n = list.len() as u64;
            c.images += 1;
            c.ge2 += (n >= 2) as u64;
            c.ge5 += (n >= 5) as u64;
            c.references += n;
            let caps: Vec<&Cap> = list.iter().flat_map(|(_, caps)| caps).collect();
            c.captions += caps.len() as u64;
            for kind in [0u8, 1] {
                c.candidates += choose2(caps.iter().filter(|cap| cap.1 == kind).count() as u64);
            }
        }
        c
    };
    let mut rows = vec![count(&images)];

    images.retain(|_, l| bounded(l) >= min);
    rows.push(count(&images));
    images.retain(|_, l| bounded(l) <= max);
    rows.push(count(&images));

    let prune = |images: &mut BTreeMap<String, Vec<(OracleRef, Vec<Cap>)>>| {
        for l in images.values_mut() {
            l.retain(|(_, caps)| !caps.is_empty());
        }
        images.retain(|_, l| !l.is_empty());
    };
    prune(&mut images);
    rows.push(count(&images));

    for l in images.values_mut() {
        for (_, caps) in l.iter_mut() {
            caps.retain(|c| c.2.split_whitespace().count() >= 6);
        }
    }
    prune(&mut images);
    rows.push(count(&images));

    for l in images.values_mut() {
        for (_, caps) in l.iter_mut() {
            caps.retain(|c| {
                let (sentence, verb) = label(&c.2);
                if tier == OracleTier::Gold {
                    sentence
                } else {
                    verb
                }
            });
        }
    }
    prune(&mut images);
    rows.push(count(&images));

    images.retain(|_, l| bounded(l) >= min);
    rows.push(count(&images));

    // Pairs: (image, kind, (text, page, rev, key) of a, same of b)
    type Side = (String, u64, u64, usize);
    let mut pairs: Vec<(String, u8, Side, Side)> = Vec::new();
    for (image, list) in &images {
        let caps: Vec<(Cap, u64, u64)> = list
            .iter()
            .flat_map(|(r, caps)| caps.iter().map(move |c| (c.clone(), r.page_id, r.rev_id)))
            .collect();
        for i in 0..caps.len() {
            for j in i + 1..caps.len() {
                let ((ka, kinda, ta), pa, ra) = &caps[i];
                let ((kb, kindb, tb), pb, rb) = &caps[j];
                if kinda != kindb {
                    continue;
                }
                let x: Side = (ta.clone(), *pa, *ra, *ka);
                let y: Side = (tb.clone(), *pb, *rb, *kb);
                let (a, b) = if (x.0.as_str(), x.1, x.2) <= (y.0.as_str(), y.1, y.2) {
                    (x, y)
                } else {
                    (y, x)
                };
                pairs.push((image.clone(), *kinda, a, b));
            }
        }
    }
    pairs.sort_by(|p, q| (&p.0, p.1, &p.2, &p.3).cmp(&(&q.0, q.1, &q.2, &q.3)));

    let pair_counts = |pairs: &[(String, u8, Side, Side)]| -> Counts {
        let mut per_image: BTreeMap<&str, BTreeSet<usize>> = BTreeMap::new();
        let mut caps = BTreeSet::new();
        for (img, kind, a, b) in pairs {
            per_image.entry(img).or_default().extend([a.3, b.3]);
            caps.insert((a.3, *kind));
            caps.insert((b.3, *kind));
        }
        Counts {
            images: per_image.len() as u64,
            ge2: per_image.values().filter(|s| s.len() >= 2).count() as u64,
            ge5: per_image.values().filter(|s| s.len() >= 5).count() as u64,
            references: per_image.values().map(|s| s.len() as u64).sum(),
            captions: caps.len() as u64,
            candidates: pairs.len() as u64,
        }
    };

    let mut seen = BTreeSet::new();
    pairs.retain(|(_, kind, a, b)| seen.insert((*kind, a.0.clone(), b.0.clone())));
    rows.push(pair_counts(&pairs));

    pairs.retain(|(_, _, a, b)| a.0 != b.0);
    rows.push(pair_counts(&pairs));

    pairs.retain(|(_, _, a, b)| norm(&a.0) != norm(&b.0));
    let mut seen = BTreeSet::new();
    pairs.retain(|(_, kind, a, b)| {
        let (x, y) = (norm(&a.0), norm(&b.0));
        seen.insert((*kind, x.clone().min(y.clone()), x.max(y)))
    });
    rows.push(pair_counts(&pairs));

    let keys = pairs
        .iter()
        .map(|(_, kind, a, b)| {
            let (x, y) = (norm(&a.0), norm(&b.0));
            (*kind, x.clone().min(y.clone()), x.max(y))
        })
        .collect();
    (rows, keys)
}

/// A dump of `pages` generated pages, produced on demand.
pub struct SyntheticDump {
    pages: usize,
    next: usize,
    chunk: Vec<u8>,
    pos: usize,
    finished: bool,
}

impl SyntheticDump {
    pub fn new(pages: usize) -> Self {
        let header = "<mediawiki version=\"0.11\">\n<siteinfo><sitename>S</sitename></siteinfo>\n";
        SyntheticDump {
            pages,
            next: 0,
            chunk: header.as_bytes().to_vec(),
            pos: 0,
            finished: false,
        }
    }

    /// Page `i` has `1 + i % 3` revisions.
    pub fn revisions_of(i: usize) -> usize {
        1 + i % 3
    }

    fn refill(&mut self) {
        self.chunk.clear();
        self.pos = 0;
        if self.next == self.pages {
            if !self.finished {
                self.chunk.extend_from_slice(b"</mediawiki>\n");
                self.finished = true;
            }
            return;
        }
        let i = self.next;
        self.next += 1;
        let mut page = format!("<page><title>Page {i}</title><ns>0</ns><id>{}</id>", i + 1);
        for r in 0..Self::revisions_of(i) {
            page.push_str(&format!(
                "<revision><id>{}</id><text>[[File:Img{}.jpg|thumb|Revision {r} of page {i} shows a picture.]] {}</text></revision>",
                (i + 1) * 10 + r,
                i % 50,
                "filler ".repeat(20)
            ));
        }
        page.push_str("</page>\n");
        self.chunk.extend_from_slice(page.as_bytes());
    }
}

impl Read for SyntheticDump {
    fn read(&mut self, buf: &mut [u8]) -> std::io::Result<usize> {
        if self.pos == self.chunk.len() {
            self.refill();
            if self.chunk.is_empty() {
                return Ok(0);
            }
        }
        let n = buf.len().min(self.chunk.len() - self.pos);
        buf[..n].copy_from_slice(&self.chunk[self.pos..self.pos + n]);
        self.pos += n;
        Ok(n)
    }
}

/// `(a, b, near-duplicates)`.
pub const NEAR_DUP_CASES: [(&str, &str, bool); 30] = [
    ("The old bridge.", "the old bridge", true),
    ("The old bridge", "THE OLD BRIDGE", true),
    ("The  old\tbridge", "The old bridge", true),
    ("  The old bridge  ", "The old bridge", true),
    ("The old, bridge!", "The old bridge", true),
    ("The old-bridge", "The oldbridge", true),
    ("\"The old bridge\"", "The old bridge", true),
    ("(The old bridge)", "The old bridge", true),
    ("The old bridge...", "The old bridge?", true),
    ("Château de Blois", "château de blois", true),
    ("ÉCOLE normale", "école Normale", true),
    ("St. Paul's Cathedral", "St Pauls Cathedral", true),
    ("A view; the harbour", "a view the harbour", true),
    ("Map: village\ncounty", "map village county", true),
    ("Born 1901 – died 1950", "Born 1901 died 1950", true),
    ("The old bridge", "The new bridge", false),
    ("The old bridge", "The old bridges", false),
    ("The old bridge", "The bridge old", false),
    ("The old bridge", "The old bridge in 1990", false),
    ("The old bridge", "Theold bridge", false),
    ("Bridge 1", "Bridge 2", false),
    ("Château", "Chateau", false),
    ("A dog", "A dig", false),
    ("Soldiers clearing rubble", "Troops clearing rubble", false),
    ("1,000 people", "1000 people", true),
    ("1 000 people", "1000 people", false),
    ("A cat", "A cat cat", false),
    ("naïve art", "naive art", false),
    ("Straße", "Strasse", false),
    ("The old bridge", "The old bridge", true),
];
