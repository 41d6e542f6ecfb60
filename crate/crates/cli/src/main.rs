//! `capara`: mine caption paraphrase candidates from a MediaWiki dump and score them.

mod config;

use std::collections::HashMap;
use std::fs::{self, File};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use capara::analysis::{read_ratings, render_reports, ScoreVector};
use capara::embedding::{load_word_vectors, ClientOptions, EmbeddingClient, EmbeddingSource, Op};
use capara::pairs::{run_filters, PairLine};
use capara::pos::{classify_caption, has_verb, BuiltinTagger, PretaggedInput, TagError, TaggedCaption};
use capara::score::Scorer;
use capara::wikitext::{Diagnostics, Extractor, MediaAliases};
use capara::{stream_pages, DumpMode, ImageReference, Tagger, Tier, TierConfig, WordVectors};
use clap::{Args, CommandFactory, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use config::FileConfig;

#[derive(Parser, Debug)]
#[command(
    name = "capara",
    about = "Mine and score paraphrase candidates from reused image captions",
    disable_version_flag = true
)]
struct Cli {
    /// Flat TOML file with defaults for any flag.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads for parsing and scoring.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Print the version, and the embedding service banner when one is configured.
    #[arg(long)]
    version: bool,
    #[command(flatten)]
    service: ServiceArgs,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Debug, Clone, Default)]
struct ServiceArgs {
    /// Embedding service at `host:port`.
    #[arg(long, global = true)]
    sidecar: Option<String>,
    /// Embedding service started as a child process (run through `sh -c`).
    #[arg(long, global = true)]
    sidecar_cmd: Option<String>,
    /// Per-request timeout in seconds.
    #[arg(long, global = true)]
    timeout_secs: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dump to image references (refs.jsonl).
    Mine(MineArgs),
    /// References to candidate pairs (pairs.jsonl) and the filter table (filter_report.csv).
    Filter(FilterArgs),
    /// Classify captions, one per line, as sentences or fragments.
    Classify(ClassifyArgs),
    /// Pairs to per-pair scores (scores.jsonl).
    Score(ScoreArgs),
    /// Scores to statistics, characteristic maps and correlations.
    Report(ReportArgs),
    /// mine, filter, score and report in sequence.
    All(AllArgs),
}

#[derive(Args, Debug, Clone, Default)]
struct MineArgs {
    /// MediaWiki XML export, uncompressed; `-` reads standard input.
    #[arg(long)]
    dump: Option<PathBuf>,
    /// `latest` or `all` revisions.
    #[arg(long)]
    mode: Option<String>,
    /// Namespaces to keep, comma separated. Default 0.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    ns: Option<Vec<i64>>,
    /// Extra localized names for the File namespace.
    #[arg(long = "alias")]
    aliases: Vec<String>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default)]
struct FilterArgs {
    /// References JSONL written by `mine`.
    #[arg(long)]
    refs: Option<PathBuf>,
    /// gold, silver or bronze.
    #[arg(long)]
    tier: Option<String>,
    /// Overrides the tier's dump mode (`latest` or `all`).
    #[arg(long)]
    mode: Option<String>,
    /// Tab-separated `caption<TAB>token_TAG ...` lines used instead of the builtin tagger.
    #[arg(long)]
    tags: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default)]
struct ClassifyArgs {
    /// One caption per line; `-` or absent reads standard input.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Input lines are already `token_TAG` sequences.
    #[arg(long)]
    pretagged: bool,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default)]
struct ScoreArgs {
    /// Pairs JSONL written by `filter`.
    #[arg(long)]
    pairs: Option<PathBuf>,
    /// Word-vector text file for Word Mover similarity.
    #[arg(long)]
    vectors: Option<PathBuf>,
    /// Skip the embedding-service scores.
    #[arg(long)]
    no_semantic: bool,
    /// Baseline rescaling for greedy token matching.
    #[arg(long)]
    baseline: Option<f64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default)]
struct ReportArgs {
    /// Scores JSONL written by `score`.
    #[arg(long)]
    scores: Option<PathBuf>,
    /// Sentence-score threshold for the subset statistics. Default 0.8.
    #[arg(long)]
    threshold: Option<f64>,
    /// Human judgments, `pair_id,sem_level,syn_level` with levels 1 to 5.
    #[arg(long)]
    ratings: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default)]
struct AllArgs {
    /// MediaWiki XML export, uncompressed; `-` reads standard input.
    #[arg(long)]
    dump: Option<PathBuf>,
    /// gold, silver or bronze.
    #[arg(long)]
    tier: Option<String>,
    /// Overrides the tier's dump mode.
    #[arg(long)]
    mode: Option<String>,
    /// Namespaces to keep, comma separated. Default 0.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    ns: Option<Vec<i64>>,
    /// Extra localized names for the File namespace.
    #[arg(long = "alias")]
    aliases: Vec<String>,
    /// Tab-separated `caption<TAB>token_TAG ...` lines used instead of the builtin tagger.
    #[arg(long)]
    tags: Option<PathBuf>,
    /// Word-vector text file for Word Mover similarity.
    #[arg(long)]
    vectors: Option<PathBuf>,
    /// Skip the embedding-service scores.
    #[arg(long)]
    no_semantic: bool,
    /// Baseline rescaling for greedy token matching.
    #[arg(long)]
    baseline: Option<f64>,
    /// Sentence-score threshold for the subset statistics. Default 0.8.
    #[arg(long)]
    threshold: Option<f64>,
    /// Human judgments, `pair_id,sem_level,syn_level` with levels 1 to 5.
    #[arg(long)]
    ratings: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Input(String),
    Runtime(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Input(_) => 2,
            Failure::Runtime(_) => 3,
        }
    }
}

type Result<T> = std::result::Result<T, Failure>;

fn input_err(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure::Input(format!("{}: {e}", path.display()))
}

fn runtime_err(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure::Runtime(format!("{}: {e}", path.display()))
}

fn required<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| Failure::Usage(format!("missing required --{flag}")))
}

fn parse_mode(s: &str) -> Result<DumpMode> {
    s.parse().map_err(Failure::Usage)
}

fn tier_config(tier: &str, mode: Option<&str>) -> Result<TierConfig> {
    let tier: Tier = tier
        .parse()
        .map_err(|e: capara::pairs::ConfigError| Failure::Usage(e.to_string()))?;
    let mut config = TierConfig::preset(tier);
    if let Some(mode) = mode {
        config.dump_mode = parse_mode(mode)?;
    }
    Ok(config)
}

fn open_input(path: &Path) -> Result<Box<dyn BufRead>> {
    if path.as_os_str() == "-" {
        return Ok(Box::new(BufReader::new(io::stdin())));
    }
    let file = File::open(path).map_err(|e| input_err(path, e))?;
    Ok(Box::new(BufReader::with_capacity(1 << 16, file)))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| runtime_err(dir, e))?;
    }
    Ok(BufWriter::new(File::create(path).map_err(|e| runtime_err(path, e))?))
}

fn write_jsonl<T: Serialize>(path: &Path, items: impl IntoIterator<Item = T>) -> Result<()> {
    let mut out = create(path)?;
    for item in items {
        serde_json::to_writer(&mut out, &item).map_err(|e| runtime_err(path, e))?;
        out.write_all(b"\n").map_err(|e| runtime_err(path, e))?;
    }
    out.flush().map_err(|e| runtime_err(path, e))
}

fn read_jsonl<T: serde::de::DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let mut items = Vec::new();
    for (i, line) in open_input(path)?.lines().enumerate() {
        let line = line.map_err(|e| input_err(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        items.push(serde_json::from_str(&line).map_err(|e| input_err(path, format!("line {}: {e}", i + 1)))?);
    }
    Ok(items)
}

/// Captions with supplied tags; anything else goes to the builtin tagger.
struct TagTable {
    known: HashMap<String, TaggedCaption>,
    fallback: BuiltinTagger,
}

impl TagTable {
    fn load(path: &Path) -> Result<Self> {
        let mut known = HashMap::new();
        for (i, line) in open_input(path)?.lines().enumerate() {
            let line = line.map_err(|e| input_err(path, e))?;
            let Some((caption, tagged)) = line.split_once('\t') else {
                continue;
            };
            let tagged =
                TaggedCaption::parse_pretagged(tagged).map_err(|e| input_err(path, format!("line {}: {e}", i + 1)))?;
            known.insert(caption.trim().to_owned(), tagged);
        }
        Ok(TagTable {
            known,
            fallback: BuiltinTagger::new(),
        })
    }
}

impl Tagger for TagTable {
    fn tag(&self, caption: &str) -> std::result::Result<TaggedCaption, TagError> {
        match self.known.get(caption.trim()) {
            Some(t) => Ok(t.clone()),
            None => self.fallback.tag(caption),
        }
    }
}

/// Pages per parallel extraction batch.
const BATCH: usize = 256;

fn mine(dump: &Path, mode: DumpMode, ns: &[i64], aliases: &[String], out: &Path) -> Result<()> {
    let extractor = Extractor::new(MediaAliases::default().with(aliases));
    let mut stream = stream_pages(open_input(dump)?, mode, ns.iter().copied());
    let path = out.join("refs.jsonl");
    let mut writer = create(&path)?;
    let mut diagnostics = Diagnostics::default();
    let (mut revisions, mut references) = (0u64, 0u64);
    let mut batch = Vec::with_capacity(BATCH);
    loop {
        let next = stream.next();
        let flush = next.is_none() || batch.len() == BATCH;
        if flush && !batch.is_empty() {
            let extracted: Vec<(Vec<ImageReference>, Diagnostics)> = batch
                .par_iter()
                .map(|page| {
                    let mut d = Diagnostics::default();
                    (extractor.extract(page, &mut d), d)
                })
                .collect();
            for (refs, d) in extracted {
                diagnostics += d;
                references += refs.len() as u64;
                for r in refs {
                    serde_json::to_writer(&mut writer, &r).map_err(|e| runtime_err(&path, e))?;
                    writer.write_all(b"\n").map_err(|e| runtime_err(&path, e))?;
                }
            }
            batch.clear();
        }
        match next {
            None => break,
            Some(Ok(page)) => {
                revisions += 1;
                batch.push(page);
            }
            Some(Err(e)) => return Err(input_err(dump, e)),
        }
    }
    writer.flush().map_err(|e| runtime_err(&path, e))?;
    if let Some(w) = stream.schema_warning() {
        log::warn!("{w}");
    }
    log::info!(
        "{} pages, {revisions} revisions, {references} references, {} unclosed links, {} bad targets",
        stream.pages_seen(),
        diagnostics.unclosed_links,
        diagnostics.bad_targets
    );
    Ok(())
}

fn filter(refs_path: &Path, config: &TierConfig, tags: Option<&Path>, out: &Path) -> Result<()> {
    config.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    let refs: Vec<ImageReference> = read_jsonl(refs_path)?;
    let tagger: Box<dyn Tagger> = match tags {
        Some(path) => Box::new(TagTable::load(path)?),
        None => Box::new(BuiltinTagger::new()),
    };
    let result = run_filters(&refs, config, tagger.as_ref());
    write_jsonl(&out.join("pairs.jsonl"), result.pairs.iter().map(PairLine::from))?;
    let report_path = out.join("filter_report.csv");
    let mut w = create(&report_path)?;
    result
        .report
        .write_csv(&mut w)
        .and_then(|_| w.flush())
        .map_err(|e| runtime_err(&report_path, e))?;
    log::info!(
        "{} tier: {} references, {} pairs",
        config.tier,
        refs.len(),
        result.pairs.len()
    );
    Ok(())
}

#[derive(Serialize)]
struct Verdict<'a> {
    caption: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    tags: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    is_sentence: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rule: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    has_verb: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn classify(args: &ClassifyArgs) -> Result<()> {
    let input = open_input(args.input.as_deref().unwrap_or(Path::new("-")))?;
    let tagger: Box<dyn Tagger> = if args.pretagged {
        Box::new(PretaggedInput)
    } else {
        Box::new(BuiltinTagger::new())
    };
    let mut out: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(create(path)?),
        None => Box::new(BufWriter::new(io::stdout())),
    };
    for line in input.lines() {
        let line = line.map_err(|e| Failure::Input(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let verdict = match tagger.tag(&line) {
            Ok(tagged) => {
                let v = classify_caption(&tagged);
                Verdict {
                    caption: &line,
                    tags: Some(tagged.to_pretagged()),
                    is_sentence: Some(v.is_sentence),
                    rule: Some(v.rule_fired),
                    has_verb: Some(has_verb(&tagged)),
                    error: None,
                }
            }
            Err(e) => Verdict {
                caption: &line,
                tags: None,
                is_sentence: None,
                rule: None,
                has_verb: None,
                error: Some(e.to_string()),
            },
        };
        serde_json::to_writer(&mut out, &verdict).map_err(|e| Failure::Runtime(e.to_string()))?;
        out.write_all(b"\n").map_err(|e| Failure::Runtime(e.to_string()))?;
    }
    out.flush().map_err(|e| Failure::Runtime(e.to_string()))
}

fn connect(service: &ServiceArgs) -> Result<Option<EmbeddingClient>> {
    let options = ClientOptions {
        timeout: Duration::from_secs(service.timeout_secs.unwrap_or(30)),
        ..ClientOptions::default()
    };
    let client = match (&service.sidecar, &service.sidecar_cmd) {
        (Some(addr), _) => EmbeddingClient::connect_tcp(addr.as_str(), options)
            .map_err(|e| Failure::Runtime(format!("embedding service {addr}: {e}")))?,
        (None, Some(cmd)) => EmbeddingClient::spawn("sh", &["-c".to_owned(), cmd.clone()], options)
            .map_err(|e| Failure::Runtime(format!("embedding service `{cmd}`: {e}")))?,
        (None, None) => return Ok(None),
    };
    Ok(Some(client))
}

struct ScoreSettings {
    vectors: Option<PathBuf>,
    no_semantic: bool,
    baseline: f64,
}

fn score(pairs_path: &Path, settings: &ScoreSettings, service: &ServiceArgs, out: &Path) -> Result<()> {
    let pairs: Vec<PairLine> = read_jsonl(pairs_path)?;
    let vectors: Option<WordVectors> = match &settings.vectors {
        Some(path) => {
            let file = load_word_vectors(path).map_err(|e| input_err(path, e))?;
            if file.duplicates > 0 {
                log::warn!("{}: {} duplicate words, first kept", path.display(), file.duplicates);
            }
            Some(file.table)
        }
        None => None,
    };
    let client = if settings.no_semantic {
        None
    } else {
        let client = connect(service)?;
        if client.is_none() {
            return Err(Failure::Usage(
                "no embedding service configured: pass --sidecar or --sidecar-cmd, or --no-semantic".into(),
            ));
        }
        client
    };
    if vectors.is_none() {
        log::warn!("no --vectors given; wms will be empty");
    }
    let scorer = Scorer {
        vectors: vectors.as_ref(),
        embeddings: client.as_ref().map(|c| c as &dyn EmbeddingSource),
        baseline: settings.baseline,
    };
    let run = scorer.score(&pairs).map_err(|e| Failure::Runtime(e.to_string()))?;
    if !run.unscored.is_empty() {
        log::warn!("{} pairs could not be scored: {:?}", run.unscored.len(), run.unscored);
    }
    if let Some(banner) = client.as_ref().and_then(|c| c.banner()) {
        log::info!("embedding service: {banner}");
    }
    write_jsonl(&out.join("scores.jsonl"), &run.scores)
}

fn report(scores_path: &Path, tau: f64, ratings: Option<&Path>, out: &Path) -> Result<()> {
    if !(0.0..=1.0).contains(&tau) {
        return Err(Failure::Usage(format!("--threshold {tau} is outside [0, 1]")));
    }
    let scores: Vec<ScoreVector<f64>> = read_jsonl(scores_path)?;
    let ratings = match ratings {
        Some(path) => Some(read_ratings(open_input(path)?).map_err(|e| input_err(path, e))?),
        None => None,
    };
    render_reports(&scores, tau, ratings.as_deref(), out).map_err(|e| runtime_err(out, e))?;
    Ok(())
}

fn print_version(service: &ServiceArgs) -> Result<()> {
    println!("capara {}", env!("CARGO_PKG_VERSION"));
    if let Some(client) = connect(service)? {
        // a one-text request gives the service a chance to announce itself
        let probe = client.fetch(Op::Sentence, vec!["version probe".into()]);
        match (client.banner(), probe) {
            (Some(banner), _) => println!("embedding service: {banner}"),
            (None, Ok(r)) => println!("embedding service: connected, dim {}, no banner", r.dim),
            (None, Err(e)) => println!("embedding service: {e}"),
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path).map_err(Failure::Input)?,
        None => FileConfig::default(),
    };
    let service = ServiceArgs {
        sidecar: cli.service.sidecar.clone().or(file.sidecar.clone()),
        sidecar_cmd: cli.service.sidecar_cmd.clone().or(file.sidecar_cmd.clone()),
        timeout_secs: cli.service.timeout_secs.or(file.timeout_secs),
    };
    if let Some(jobs) = cli.jobs.or(file.jobs) {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| Failure::Runtime(e.to_string()))?;
    }
    if cli.version {
        return print_version(&service);
    }
    let Some(command) = cli.command else {
        return Err(Failure::Usage("no subcommand given".into()));
    };
    let out_dir = |out: Option<PathBuf>| out.or(file.out.clone()).unwrap_or_else(|| PathBuf::from("."));
    let aliases = |flags: Vec<String>| {
        if flags.is_empty() {
            file.aliases.clone().unwrap_or_default()
        } else {
            flags
        }
    };
    let ns = |flags: Option<Vec<i64>>| flags.or(file.ns.clone()).unwrap_or_else(|| vec![0]);
    match command {
        Command::Mine(a) => {
            let dump = required(a.dump.or(file.dump.clone()), "dump")?;
            let mode = parse_mode(a.mode.as_deref().or(file.mode.as_deref()).unwrap_or("latest"))?;
            mine(&dump, mode, &ns(a.ns), &aliases(a.aliases), &out_dir(a.out))
        }
        Command::Filter(a) => {
            let refs = required(a.refs, "refs")?;
            let tier = required(a.tier.or(file.tier.clone()), "tier")?;
            let config = tier_config(&tier, a.mode.as_deref().or(file.mode.as_deref()))?;
            filter(&refs, &config, a.tags.or(file.tags.clone()).as_deref(), &out_dir(a.out))
        }
        Command::Classify(a) => classify(&a),
        Command::Score(a) => {
            let pairs = required(a.pairs, "pairs")?;
            let settings = ScoreSettings {
                vectors: a.vectors.or(file.vectors.clone()),
                no_semantic: a.no_semantic || file.no_semantic.unwrap_or(false),
                baseline: a.baseline.or(file.baseline).unwrap_or(0.0),
            };
            score(&pairs, &settings, &service, &out_dir(a.out))
        }
        Command::Report(a) => {
            let scores = required(a.scores, "scores")?;
            let tau = a.threshold.or(file.threshold).unwrap_or(0.8);
            report(
                &scores,
                tau,
                a.ratings.or(file.ratings.clone()).as_deref(),
                &out_dir(a.out),
            )
        }
        Command::All(a) => {
            let dump = required(a.dump.or(file.dump.clone()), "dump")?;
            let tier = required(a.tier.or(file.tier.clone()), "tier")?;
            let config = tier_config(&tier, a.mode.as_deref().or(file.mode.as_deref()))?;
            let out = out_dir(a.out);
            mine(&dump, config.dump_mode, &ns(a.ns), &aliases(a.aliases), &out)?;
            filter(
                &out.join("refs.jsonl"),
                &config,
                a.tags.or(file.tags.clone()).as_deref(),
                &out,
            )?;
            let settings = ScoreSettings {
                vectors: a.vectors.or(file.vectors.clone()),
                no_semantic: a.no_semantic || file.no_semantic.unwrap_or(false),
                baseline: a.baseline.or(file.baseline).unwrap_or(0.0),
            };
            score(&out.join("pairs.jsonl"), &settings, &service, &out)?;
            let tau = a.threshold.or(file.threshold).unwrap_or(0.8);
            report(
                &out.join("scores.jsonl"),
                tau,
                a.ratings.or(file.ratings.clone()).as_deref(),
                &out.join("report"),
            )
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Usage(msg) => {
                    eprintln!("error: {msg}\n");
                    let _ = Cli::command().write_long_help(&mut io::stderr());
                }
                Failure::Input(msg) => eprintln!("input error: {msg}"),
                Failure::Runtime(msg) => eprintln!("error: {msg}"),
            }
            ExitCode::from(failure.code())
        }
    }
}
