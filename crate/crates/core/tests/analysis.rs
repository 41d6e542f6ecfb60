use std::fs;

use capara::analysis::{
    calibrate_threshold, corpus_stats, precision_recall_at, read_ratings, render_reports, threshold_subset, ScoreVector,
};

fn sv(id: u64, syn: f64, sem: Option<f64>, st: Option<f64>) -> ScoreVector<f64> {
    ScoreVector {
        pair_id: id,
        rouge1: syn,
        rouge_l: syn,
        bleu: syn,
        syn_avg: syn,
        wms: sem,
        bert_f: sem,
        st,
        sem_avg: sem,
        delta: sem.map(|s| s - syn),
        len_a: 4 + id as usize,
        len_b: 6,
    }
}

#[test]
fn calibration_matches_dense_sweep() {
    let labeled = [
        (0.95, true),
        (0.91, true),
        (0.84, false),
        (0.82, true),
        (0.60, false),
        (0.40, false),
    ];
    let best = calibrate_threshold(&labeled).unwrap();
    // every threshold on a fine grid does no better
    for k in 0..=1000 {
        let tau = k as f64 / 1000.0;
        assert!(precision_recall_at(&labeled, tau).f1 <= best.f1 + 1e-12, "tau {tau}");
    }
    // tp 3 fp 1 at 0.82: P 3/4, R 1, F1 6/7
    assert_eq!(best.threshold, 0.82);
    assert!((best.f1 - 6.0 / 7.0).abs() < 1e-12);
}

#[test]
fn subset_and_stats_by_hand() {
    let scores = [
        sv(0, 0.2, Some(0.8), Some(0.9)),
        sv(1, 0.4, Some(0.6), Some(0.8)),
        sv(2, 0.6, Some(0.5), Some(0.7)),
        sv(3, 0.8, None, None),
    ];
    let sub = threshold_subset(&scores, 0.8);
    assert_eq!(sub.kept.len(), 1);
    assert_eq!(sub.unscored, 1);
    assert!((sub.fraction - 1.0 / 3.0).abs() < 1e-12);

    let r = corpus_stats(&scores, 0.8).unwrap();
    assert_eq!(r.n, 4);
    let syn = r.metric("syn_avg").unwrap();
    assert!((syn.mean - 0.5).abs() < 1e-12);
    // population sigma of 0.2 0.4 0.6 0.8
    assert!((syn.std - 0.05f64.sqrt()).abs() < 1e-12);
    let delta = r.metric("delta").unwrap();
    assert!((delta.mean - (0.6 + 0.2 - 0.1) / 3.0).abs() < 1e-12);
    // mean lengths (4+6)/2 .. (7+6)/2
    assert!((r.length.mean - 5.75).abs() < 1e-12);
}

#[test]
fn reports_are_deterministic_and_order_free() {
    let scores: Vec<ScoreVector<f64>> = (0..12)
        .map(|i| {
            sv(
                i,
                i as f64 / 12.0,
                Some(1.0 - i as f64 / 24.0),
                Some(0.5 + i as f64 / 30.0),
            )
        })
        .collect();
    let mut shuffled = scores.clone();
    shuffled.reverse();
    let ratings = read_ratings("pair_id,sem_level,syn_level\n0,5,1\n1,4,2\n2,4,2\n3,3,3\n".as_bytes()).unwrap();
    let (d1, d2) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let f1 = render_reports(&scores, 0.8, Some(&ratings), d1.path()).unwrap();
    let f2 = render_reports(&shuffled, 0.8, Some(&ratings), d2.path()).unwrap();
    for name in [
        "stats.csv",
        "scores.jsonl",
        "characteristic_map.svg",
        "ratings_map.svg",
        "correlations.csv",
    ] {
        assert_eq!(
            fs::read(d1.path().join(name)).unwrap(),
            fs::read(d2.path().join(name)).unwrap(),
            "{name}"
        );
    }
    let stats = fs::read_to_string(&f1.stats_csv).unwrap();
    assert_eq!(stats.lines().count(), 3);
    assert!(stats.lines().nth(2).unwrap().starts_with("st>0.8,"));
    let first: serde_json::Value =
        serde_json::from_str(fs::read_to_string(&f1.scores_jsonl).unwrap().lines().next().unwrap()).unwrap();
    assert_eq!(first["pair_id"], 0);
    assert!(first.get("rougeL").is_some());
    let corr = fs::read_to_string(f2.correlations_csv.unwrap()).unwrap();
    assert!(corr.lines().any(|l| l.starts_with("syn_avg,syn_level,4,")));
}
