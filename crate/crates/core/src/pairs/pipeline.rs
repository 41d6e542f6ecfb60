use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::BufRead;

use rayon::prelude::*;
use thiserror::Error;

use super::{
    build_pairs, caption_passes, divergent_captions, filter_by_ref_count, significant_diff, unique_candidates,
    CandidatePair, CaptionCluster, CaptionFilter, CaptionRecord, ClusterRef, FilterReport, FilterRow, TierConfig,
};
use crate::dump::{stream_pages, DumpError, DumpMode};
use crate::pos::Tagger;
use crate::wikitext::{CaptionType, Diagnostics, Extractor, ImageReference};

#[derive(Debug, Clone, Default)]
pub struct PipelineOutput {
    pub references: Vec<ImageReference>,
    pub pairs: Vec<CandidatePair>,
    pub report: FilterReport,
    pub diagnostics: Diagnostics,
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("dump ingest failed: {source}")]
    Ingest {
        source: DumpError,
        /// Report over the references read before the failure.
        partial: Box<FilterReport>,
    },
}

/// Page, URI, caption and alt text.
type RefKey<'a> = (u64, &'a str, &'a Option<String>, &'a Option<String>);

/// Groups references by image URI, in URI order. With
/// [`DumpMode::AllRevisions`], a reference repeated unchanged in a later
/// revision of the same page is kept once; a page that shows the same
/// reference `k` times in one revision contributes `k`.
pub fn cluster_references(refs: &[ImageReference], config: &TierConfig) -> Vec<CaptionCluster> {
    let all = config.dump_mode == DumpMode::AllRevisions;
    let mut kept: HashMap<RefKey, usize> = HashMap::new();
    let mut in_revision: HashMap<RefKey, usize> = HashMap::new();
    let mut revision = None;
    let mut clusters: BTreeMap<&str, Vec<ClusterRef>> = BTreeMap::new();
    for (id, r) in refs.iter().enumerate() {
        if all {
            if revision != Some((r.page_id, r.revision_id)) {
                revision = Some((r.page_id, r.revision_id));
                in_revision.clear();
            }
            let key = (r.page_id, r.image_uri.as_str(), &r.caption, &r.alt_text);
            let nth = in_revision.entry(key).or_default();
            *nth += 1;
            let max = kept.entry(key).or_default();
            if *nth <= *max {
                continue;
            }
            *max = *nth;
        }
        let records = CaptionType::ALL
            .iter()
            .filter_map(|&kind| {
                let text = r.text(kind)?.trim();
                (!text.is_empty()).then(|| CaptionRecord::new(text, kind, r, id))
            })
            .collect();
        clusters.entry(&r.image_uri).or_default().push(ClusterRef {
            id,
            page_id: r.page_id,
            records,
        });
    }
    clusters
        .into_iter()
        .map(|(uri, refs)| CaptionCluster {
            image_uri: uri.to_owned(),
            refs,
        })
        .collect()
}

fn cluster_row(step: u8, filter: String, clusters: &[CaptionCluster]) -> FilterRow {
    let live = clusters.iter().filter(|c| !c.refs.is_empty());
    let mut row = FilterRow {
        step,
        filter,
        images: 0,
        images_refs_ge2: 0,
        images_refs_ge5: 0,
        references: 0,
        captions: 0,
        candidates: 0,
    };
    for c in live {
        let n = c.refs.len() as u64;
        row.images += 1;
        row.images_refs_ge2 += u64::from(n >= 2);
        row.images_refs_ge5 += u64::from(n >= 5);
        row.references += n;
        row.captions += c.records().count() as u64;
        row.candidates += c.candidate_count();
    }
    row
}

fn pair_row(step: u8, filter: &str, pairs: &[CandidatePair]) -> FilterRow {
    let mut refs_per_image: BTreeMap<&str, HashSet<usize>> = BTreeMap::new();
    let mut captions = HashSet::new();
    for p in pairs {
        let refs = refs_per_image.entry(&p.image_uri).or_default();
        for r in [&p.a, &p.b] {
            refs.insert(r.ref_id);
            captions.insert((r.ref_id, r.kind));
        }
    }
    FilterRow {
        step,
        filter: filter.to_owned(),
        images: refs_per_image.len() as u64,
        images_refs_ge2: refs_per_image.values().filter(|s| s.len() >= 2).count() as u64,
        images_refs_ge5: refs_per_image.values().filter(|s| s.len() >= 5).count() as u64,
        references: refs_per_image.values().map(|s| s.len() as u64).sum(),
        captions: captions.len() as u64,
        candidates: pairs.len() as u64,
    }
}

fn retain_records(clusters: &mut Vec<CaptionCluster>, keep: impl Fn(&CaptionRecord) -> bool + Sync) {
    clusters.par_iter_mut().for_each(|c| {
        for r in &mut c.refs {
            r.records.retain(|rec| keep(rec));
        }
    });
    drop_empty_refs(clusters);
}

fn drop_empty_refs(clusters: &mut Vec<CaptionCluster>) {
    for c in clusters.iter_mut() {
        c.refs.retain(|r| !r.records.is_empty());
    }
    clusters.retain(|c| !c.refs.is_empty());
}

/// Runs filter rows 0 to 9 over extracted references.
pub fn run_filters(refs: &[ImageReference], config: &TierConfig, tagger: &dyn Tagger) -> PipelineOutput {
    let per_page = config.max_refs_per_page;
    let mut rows = Vec::with_capacity(10);

    let clusters = cluster_references(refs, config);
    rows.push(cluster_row(0, "No filter".into(), &clusters));

    let clusters = filter_by_ref_count(clusters, config.min_refs, usize::MAX, per_page);
    rows.push(cluster_row(1, format!("References >= {}", config.min_refs), &clusters));

    let mut clusters = filter_by_ref_count(clusters, 0, config.max_refs, per_page);
    rows.push(cluster_row(2, format!("References <= {}", config.max_refs), &clusters));

    drop_empty_refs(&mut clusters);
    rows.push(cluster_row(3, "Has caption".into(), &clusters));

    retain_records(&mut clusters, |r| r.word_count >= config.min_words);
    rows.push(cluster_row(
        4,
        format!("Caption words >= {}", config.min_words),
        &clusters,
    ));

    retain_records(&mut clusters, |r| caption_passes(r, config.caption_filter, tagger));
    let label = match config.caption_filter {
        CaptionFilter::SentenceRules => "Caption is sentence",
        CaptionFilter::VerbOnly => "Caption has verb",
    };
    rows.push(cluster_row(5, label.into(), &clusters));

    let clusters = filter_by_ref_count(clusters, config.min_refs, usize::MAX, per_page);
    rows.push(cluster_row(6, format!("References >= {}", config.min_refs), &clusters));

    let pairs: Vec<CandidatePair> = clusters.iter().flat_map(|c| build_pairs(c, config.tier)).collect();
    let pairs = unique_candidates(pairs);
    rows.push(pair_row(7, "Unique candidates", &pairs));
    let pairs = divergent_captions(pairs);
    rows.push(pair_row(8, "Divergent captions", &pairs));
    let pairs = significant_diff(pairs);
    rows.push(pair_row(9, "Significant caption diff", &pairs));

    PipelineOutput {
        references: Vec::new(),
        pairs,
        report: FilterReport { rows },
        diagnostics: Diagnostics::default(),
    }
}

/// Streams the dump in the tier's mode, extracts references and runs the filters.
pub fn run_pipeline<R: BufRead>(
    source: R,
    config: &TierConfig,
    namespaces: &[i64],
    tagger: &dyn Tagger,
) -> Result<PipelineOutput, PipelineError> {
    let extractor = Extractor::default();
    let mut diagnostics = Diagnostics::default();
    let mut references = Vec::new();
    for page in stream_pages(source, config.dump_mode, namespaces.iter().copied()) {
        match page {
            Ok(page) => references.extend(extractor.extract(&page, &mut diagnostics)),
            Err(source) => {
                let partial = run_filters(&references, config, tagger).report;
                return Err(PipelineError::Ingest {
                    source,
                    partial: Box::new(partial),
                });
            }
        }
    }
    let mut out = run_filters(&references, config, tagger);
    out.references = references;
    out.diagnostics = diagnostics;
    Ok(out)
}
