//! Report files: statistics CSV, score JSONL and SVG characteristic maps.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, BufRead};
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::{
    characteristic_map, corpus_stats, pearson, threshold_subset, CharacteristicMap, CorpusReport, ScoreVector, METRICS,
};
use crate::Scalar;

/// One human judgment on 5-point scales (1 to 5).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rating {
    pub pair_id: u64,
    pub sem_level: u8,
    pub syn_level: u8,
}

/// Reads `pair_id,sem_level,syn_level` lines; a non-numeric first line is a header.
pub fn read_ratings<R: BufRead>(source: R) -> io::Result<Vec<Rating>> {
    let bad =
        |line: usize, msg: &str| io::Error::new(io::ErrorKind::InvalidData, format!("ratings line {line}: {msg}"));
    let mut out = Vec::new();
    for (i, line) in source.lines().enumerate() {
        let line = line?;
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if line.trim().is_empty() || (i == 0 && fields[0].parse::<u64>().is_err()) {
            continue;
        }
        let [id, sem, syn] = fields[..] else {
            return Err(bad(i + 1, "expected 3 fields"));
        };
        let level = |s: &str| s.parse::<u8>().ok().filter(|l| (1..=5).contains(l));
        out.push(Rating {
            pair_id: id.parse().map_err(|_| bad(i + 1, "bad pair id"))?,
            sem_level: level(sem).ok_or_else(|| bad(i + 1, "sem level must be 1 to 5"))?,
            syn_level: level(syn).ok_or_else(|| bad(i + 1, "syn level must be 1 to 5"))?,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportFiles {
    pub stats_csv: PathBuf,
    pub scores_jsonl: PathBuf,
    pub map_svg: PathBuf,
    pub ratings_svg: Option<PathBuf>,
    pub correlations_csv: Option<PathBuf>,
}

fn stats_header() -> String {
    let mut h = String::from("subset,n,pct,len_mu,len_sigma");
    for m in METRICS {
        write!(h, ",{m}_mu,{m}_sigma").unwrap();
    }
    h
}

fn stats_line<F: Scalar>(label: &str, r: &CorpusReport<F>) -> String {
    let mut line = format!(
        "{label},{},{:.4},{:.4},{:.4}",
        r.n, r.pct_over_threshold, r.length.mean, r.length.std
    );
    for (_, m) in &r.metrics {
        match m {
            Some(m) => write!(line, ",{:.4},{:.4}", m.mean, m.std).unwrap(),
            None => line.push_str(",,"),
        }
    }
    line
}

/// Writes the heatmap as dependency-free SVG.
pub fn map_svg(map: &CharacteristicMap, title: &str) -> String {
    const CELL: usize = 60;
    const LEFT: usize = 70;
    const TOP: usize = 40;
    let size = 5 * CELL;
    let max = map.grid.iter().flatten().copied().max().unwrap_or(0);
    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" font-family="sans-serif" font-size="12">"#,
        LEFT + size + 20,
        TOP + size + 50
    )
    .unwrap();
    writeln!(
        svg,
        r#"<text x="{}" y="20" text-anchor="middle" font-size="14">{title}</text>"#,
        LEFT + size / 2
    )
    .unwrap();
    // Semantic level grows to the right, syntactic level grows upward.
    for (syn, row) in map.grid.iter().enumerate() {
        for (sem, &count) in row.iter().enumerate() {
            let x = LEFT + sem * CELL;
            let y = TOP + (4 - syn) * CELL;
            let shade = (count * 255).checked_div(max).unwrap_or(0) as u8;
            let fill = format!("#{:02x}{:02x}ff", 255 - shade, 255 - shade);
            writeln!(
                svg,
                r##"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{fill}" stroke="#888"/><text x="{}" y="{}" text-anchor="middle">{count}</text>"##,
                x + CELL / 2,
                y + CELL / 2 + 4
            )
            .unwrap();
        }
    }
    for i in 0..5 {
        writeln!(
            svg,
            r#"<text x="{}" y="{}" text-anchor="middle">{i}</text>"#,
            LEFT + i * CELL + CELL / 2,
            TOP + size + 16
        )
        .unwrap();
        writeln!(
            svg,
            r#"<text x="{}" y="{}" text-anchor="end">{i}</text>"#,
            LEFT - 8,
            TOP + (4 - i) * CELL + CELL / 2 + 4
        )
        .unwrap();
    }
    writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">semantic level</text>"#,
        LEFT + size / 2,
        TOP + size + 36
    )
    .unwrap();
    writeln!(
        svg,
        r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">syntactic level</text>"#,
        TOP + size / 2,
        TOP + size / 2
    )
    .unwrap();
    svg.push_str("</svg>\n");
    svg
}

fn jsonl<T: Serialize>(items: &[T]) -> String {
    let mut out = String::new();
    for item in items {
        out.push_str(&serde_json::to_string(item).expect("score serializes"));
        out.push('\n');
    }
    out
}

fn correlations<F: Scalar>(scores: &[ScoreVector<F>], ratings: &[Rating]) -> String {
    let mut out = String::from("metric,judgment,n,pearson\n");
    let by_id: std::collections::HashMap<u64, &ScoreVector<F>> = scores.iter().map(|s| (s.pair_id, s)).collect();
    for metric in METRICS {
        for (judgment, pick) in [("sem_level", 0), ("syn_level", 1)] {
            let (xs, ys): (Vec<F>, Vec<F>) = ratings
                .iter()
                .filter_map(|r| {
                    let v = by_id.get(&r.pair_id)?.metric(metric)?;
                    let level = if pick == 0 { r.sem_level } else { r.syn_level };
                    Some((v, F::from_count(level as usize)))
                })
                .unzip();
            let r = pearson(&xs, &ys).map(|r| format!("{r:.4}")).unwrap_or_default();
            writeln!(out, "{metric},{judgment},{},{r}", xs.len()).unwrap();
        }
    }
    out
}

/// Writes `stats.csv`, `scores.jsonl` and `characteristic_map.svg` into
/// `out_dir`, plus `ratings_map.svg` and `correlations.csv` when ratings are
/// given. Output depends only on the inputs.
pub fn render_reports<F: Scalar + Serialize>(
    scores: &[ScoreVector<F>],
    tau: F,
    ratings: Option<&[Rating]>,
    out_dir: &Path,
) -> io::Result<ReportFiles> {
    fs::create_dir_all(out_dir)?;
    let mut sorted = scores.to_vec();
    sorted.sort_by_key(|s| s.pair_id);

    let mut csv = stats_header();
    csv.push('\n');
    if let Ok(all) = corpus_stats(&sorted, tau) {
        csv.push_str(&stats_line("all", &all));
        csv.push('\n');
    }
    let subset = threshold_subset(&sorted, tau);
    if let Ok(over) = corpus_stats(&subset.kept, tau) {
        csv.push_str(&stats_line(&format!("st>{tau}"), &over));
        csv.push('\n');
    }

    let files = ReportFiles {
        stats_csv: out_dir.join("stats.csv"),
        scores_jsonl: out_dir.join("scores.jsonl"),
        map_svg: out_dir.join("characteristic_map.svg"),
        ratings_svg: ratings.map(|_| out_dir.join("ratings_map.svg")),
        correlations_csv: ratings.map(|_| out_dir.join("correlations.csv")),
    };
    fs::write(&files.stats_csv, csv)?;
    fs::write(&files.scores_jsonl, jsonl(&sorted))?;
    fs::write(
        &files.map_svg,
        map_svg(&characteristic_map(&sorted), "Automatic scores"),
    )?;
    if let (Some(ratings), Some(svg), Some(corr)) = (ratings, &files.ratings_svg, &files.correlations_csv) {
        let map = CharacteristicMap::from_levels(
            ratings
                .iter()
                .map(|r| (r.syn_level as usize - 1, r.sem_level as usize - 1)),
        );
        fs::write(svg, map_svg(&map, "Human judgments"))?;
        fs::write(corr, correlations(&sorted, ratings))?;
    }
    Ok(files)
}
