//! Per-step counts of the filtering pipeline.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

/// Remaining counts after one filter step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FilterRow {
    pub step: u8,
    pub filter: String,
    pub images: u64,
    pub images_refs_ge2: u64,
    pub images_refs_ge5: u64,
    pub references: u64,
    pub captions: u64,
    pub candidates: u64,
}

impl FilterRow {
    /// Average number of references per remaining image.
    pub fn mu_img(&self) -> f64 {
        if self.images == 0 {
            0.0
        } else {
            self.references as f64 / self.images as f64
        }
    }
}

/// Rows 0 to 9 of the filtering table.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FilterReport {
    pub rows: Vec<FilterRow>,
}

pub(crate) const HEADER: &str = "step,filter,images,images_delta,images_delta_pct,images_refs_ge2,images_refs_ge5,\
references,references_delta,references_delta_pct,mu_img,captions,captions_delta,captions_delta_pct,\
candidates,candidates_delta,candidates_delta_pct";

fn delta(prev: Option<u64>, cur: u64) -> (String, String) {
    match prev {
        None => (String::new(), String::new()),
        Some(p) => {
            let d = cur as i64 - p as i64;
            let pct = if p == 0 { 0.0 } else { 100.0 * d as f64 / p as f64 };
            (d.to_string(), format!("{pct:.1}"))
        }
    }
}

impl FilterReport {
    pub fn row(&self, step: u8) -> Option<&FilterRow> {
        self.rows.iter().find(|r| r.step == step)
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{HEADER}")?;
        let mut prev: Option<&FilterRow> = None;
        for row in &self.rows {
            let (di, pi) = delta(prev.map(|p| p.images), row.images);
            let (dr, pr) = delta(prev.map(|p| p.references), row.references);
            let (dc, pc) = delta(prev.map(|p| p.captions), row.captions);
            let (dk, pk) = delta(prev.map(|p| p.candidates), row.candidates);
            writeln!(
                out,
                "{},{},{},{di},{pi},{},{},{},{dr},{pr},{:.2},{},{dc},{pc},{},{dk},{pk}",
                row.step,
                row.filter,
                row.images,
                row.images_refs_ge2,
                row.images_refs_ge5,
                row.references,
                row.mu_img(),
                row.captions,
                row.candidates,
            )?;
            prev = Some(row);
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV is UTF-8")
    }
}
