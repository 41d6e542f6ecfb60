//! Word-vector files and the line-delimited embedding service protocol.
//!
//! Wire format, one JSON object per line in each direction:
//!
//! ```text
//! -> {"id":1,"op":"sentence","texts":["a dog","a cat"]}
//! <- {"id":1,"dim":3,"vectors":[[0.1,0.2,0.3],[0.3,0.2,0.1]]}
//! -> {"id":2,"op":"tokens","texts":["a dog"]}
//! <- {"id":2,"dim":2,"vectors":[[{"token":"a","vector":[0,1]},{"token":"dog","vector":[1,0]}]]}
//! <- {"id":3,"error":"model not loaded"}
//! ```
//!
//! A service may also send `{"banner":"<model and revision>"}` at any time;
//! the latest banner is kept for reports.
//!
//! Responses may arrive in any order; they are paired with requests by id.

use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::net::{TcpStream, ToSocketAddrs};
use std::path::Path;
use std::process::{Child, ChildStdin, Command, Stdio};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::mpsc::{self, RecvTimeoutError, Sender};
use std::sync::{Arc, Condvar, Mutex};
use std::thread;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::semantic::WordVectorTable;
use crate::Scalar;

#[derive(Debug, Error)]
pub enum VectorFileError {
    #[error("line {line}: {message}")]
    FormatError { line: usize, message: String },
    #[error("line {line}: expected {expected} components, found {found}")]
    DimensionMismatch { line: usize, expected: usize, found: usize },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// A loaded vector file.
#[derive(Debug, Clone)]
pub struct VectorFile<F> {
    pub table: WordVectorTable<F>,
    /// Words that appeared more than once; the first occurrence is kept.
    pub duplicates: usize,
}

fn format_error(line: usize, message: impl Into<String>) -> VectorFileError {
    VectorFileError::FormatError {
        line,
        message: message.into(),
    }
}

/// Reads the text format: a `<count> <dim>` header, then `word v1 .. vdim` per line.
pub fn read_word_vectors<F: Scalar, R: BufRead>(source: R) -> Result<VectorFile<F>, VectorFileError> {
    let mut lines = source.lines();
    let header = lines.next().transpose()?.ok_or_else(|| format_error(1, "empty file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [count, dim] = fields[..] else {
        return Err(format_error(1, "header must be `<count> <dim>`"));
    };
    let count: usize = count.parse().map_err(|_| format_error(1, "bad word count"))?;
    let dim: usize = dim.parse().map_err(|_| format_error(1, "bad dimension"))?;
    if dim == 0 {
        return Err(format_error(1, "dimension must be at least 1"));
    }

    let mut table = WordVectorTable::new(dim);
    let mut duplicates = 0;
    let mut seen = 0;
    for (i, line) in lines.enumerate() {
        let line_no = i + 2;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        seen += 1;
        if seen > count {
            return Err(format_error(line_no, format!("more than the declared {count} words")));
        }
        let mut parts = line.split_whitespace();
        let word = parts.next().expect("non-empty line has a field");
        let vector = parts
            .map(|p| {
                p.parse::<f64>()
                    .ok()
                    .and_then(F::from_f64)
                    .ok_or_else(|| format_error(line_no, format!("bad number {p:?}")))
            })
            .collect::<Result<Vec<F>, _>>()?;
        if vector.len() != dim {
            return Err(VectorFileError::DimensionMismatch {
                line: line_no,
                expected: dim,
                found: vector.len(),
            });
        }
        if !table.insert(word, vector).expect("dimension checked") {
            duplicates += 1;
        }
    }
    if seen < count {
        return Err(format_error(
            seen + 2,
            format!("header declares {count} words, found {seen}"),
        ));
    }
    if duplicates > 0 {
        log::warn!("{duplicates} duplicate words in vector file; kept first occurrences");
    }
    Ok(VectorFile { table, duplicates })
}

pub fn load_word_vectors<F: Scalar>(path: impl AsRef<Path>) -> Result<VectorFile<F>, VectorFileError> {
    read_word_vectors(BufReader::new(File::open(path)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    Sentence,
    Tokens,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingRequest {
    pub id: u64,
    pub op: Op,
    pub texts: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TokenVector {
    pub token: String,
    pub vector: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Vectors {
    Sentence(Vec<Vec<f64>>),
    Tokens(Vec<Vec<TokenVector>>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingResponse {
    pub id: u64,
    pub dim: usize,
    pub vectors: Vectors,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EmbeddingError {
    #[error("request {id} timed out after {after:?}")]
    Timeout { id: u64, after: Duration },
    #[error("protocol error: {0}")]
    ProtocolError(String),
    #[error("service error: {0}")]
    ServiceError(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<io::Error> for EmbeddingError {
    fn from(e: io::Error) -> Self {
        EmbeddingError::Io(e.to_string())
    }
}

fn protocol(msg: impl Into<String>) -> EmbeddingError {
    EmbeddingError::ProtocolError(msg.into())
}

/// Decodes a response line for a request with `op` over `count` texts.
pub fn decode_response(value: Value, op: Op, count: usize) -> Result<EmbeddingResponse, EmbeddingError> {
    let id = value
        .get("id")
        .and_then(Value::as_u64)
        .ok_or_else(|| protocol("missing id"))?;
    if let Some(err) = value.get("error") {
        let message = err.as_str().map_or_else(|| err.to_string(), str::to_owned);
        return Err(EmbeddingError::ServiceError(message));
    }
    let dim = value
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| protocol(format!("response {id} has no dim")))? as usize;
    let raw = value
        .get("vectors")
        .cloned()
        .ok_or_else(|| protocol(format!("response {id} has no vectors")))?;
    let check = |v: &[f64]| {
        if v.len() == dim {
            Ok(())
        } else {
            Err(protocol(format!(
                "response {id}: vector of length {} but dim {dim}",
                v.len()
            )))
        }
    };
    let vectors = match op {
        Op::Sentence => {
            let vs: Vec<Vec<f64>> = serde_json::from_value(raw).map_err(|e| protocol(format!("response {id}: {e}")))?;
            vs.iter().try_for_each(|v| check(v))?;
            if vs.len() != count {
                return Err(protocol(format!(
                    "response {id}: {} vectors for {count} texts",
                    vs.len()
                )));
            }
            Vectors::Sentence(vs)
        }
        Op::Tokens => {
            let vs: Vec<Vec<TokenVector>> =
                serde_json::from_value(raw).map_err(|e| protocol(format!("response {id}: {e}")))?;
            vs.iter().flatten().try_for_each(|t| check(&t.vector))?;
            if vs.len() != count {
                return Err(protocol(format!(
                    "response {id}: {} token lists for {count} texts",
                    vs.len()
                )));
            }
            Vectors::Tokens(vs)
        }
    };
    Ok(EmbeddingResponse { id, dim, vectors })
}

/// Anything that can embed sentences and tokens.
pub trait EmbeddingSource: Send + Sync {
    /// One vector per text, in order.
    fn sentence_vectors(&self, texts: &[String]) -> Result<Vec<Vec<f64>>, EmbeddingError>;
    /// One token list per text, in order.
    fn token_vectors(&self, texts: &[String]) -> Result<Vec<Vec<TokenVector>>, EmbeddingError>;
    /// Model identification, when the source reports one.
    fn banner(&self) -> Option<String> {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClientOptions {
    pub timeout: Duration,
    pub batch_size: usize,
    pub max_in_flight: usize,
}

impl Default for ClientOptions {
    fn default() -> Self {
        ClientOptions {
            timeout: Duration::from_secs(30),
            batch_size: 64,
            max_in_flight: 4,
        }
    }
}

type Reply = Result<Value, EmbeddingError>;

#[derive(Default)]
struct Pending {
    waiting: HashMap<u64, Sender<Reply>>,
    closed: Option<EmbeddingError>,
}

struct Shared {
    pending: Mutex<Pending>,
    banner: Mutex<Option<String>>,
}

impl Shared {
    fn fail_all(&self, err: EmbeddingError) {
        let mut p = self.pending.lock().expect("pending lock");
        for (_, tx) in p.waiting.drain() {
            let _ = tx.send(Err(err.clone()));
        }
        p.closed.get_or_insert(err);
    }
}

/// Counting semaphore bounding requests in flight.
struct Slots {
    free: Mutex<usize>,
    cv: Condvar,
}

struct SlotGuard<'a>(&'a Slots);

impl Slots {
    fn acquire(&self) -> SlotGuard<'_> {
        let mut free = self.free.lock().expect("slot lock");
        while *free == 0 {
            free = self.cv.wait(free).expect("slot lock");
        }
        *free -= 1;
        SlotGuard(self)
    }
}

impl Drop for SlotGuard<'_> {
    fn drop(&mut self) {
        *self.0.free.lock().expect("slot lock") += 1;
        self.0.cv.notify_one();
    }
}

/// Multiplexes requests from many threads over one service connection.
pub struct EmbeddingClient {
    shared: Arc<Shared>,
    writer: Mutex<Box<dyn Write + Send>>,
    next_id: AtomicU64,
    slots: Slots,
    options: ClientOptions,
    child: Option<Mutex<Child>>,
    reader_done: Arc<AtomicBool>,
}

impl EmbeddingClient {
    /// Wraps an already connected byte stream pair.
    pub fn from_streams<R, W>(reader: R, writer: W, options: ClientOptions) -> Self
    where
        R: BufRead + Send + 'static,
        W: Write + Send + 'static,
    {
        let shared = Arc::new(Shared {
            pending: Mutex::new(Pending::default()),
            banner: Mutex::new(None),
        });
        let reader_done = Arc::new(AtomicBool::new(false));
        {
            let shared = Arc::clone(&shared);
            let done = Arc::clone(&reader_done);
            thread::Builder::new()
                .name("embedding-reader".into())
                .spawn(move || {
                    read_loop(reader, &shared);
                    done.store(true, Ordering::SeqCst);
                })
                .expect("spawn reader thread");
        }
        EmbeddingClient {
            shared,
            writer: Mutex::new(Box::new(writer)),
            next_id: AtomicU64::new(1),
            slots: Slots {
                free: Mutex::new(options.max_in_flight.max(1)),
                cv: Condvar::new(),
            },
            options,
            child: None,
            reader_done,
        }
    }

    pub fn connect_tcp(addr: impl ToSocketAddrs, options: ClientOptions) -> io::Result<Self> {
        let stream = TcpStream::connect(addr)?;
        stream.set_nodelay(true)?;
        let reader = BufReader::new(stream.try_clone()?);
        Ok(Self::from_streams(reader, BufWriter::new(stream), options))
    }

    /// Spawns `program` and speaks the protocol over its standard streams.
    pub fn spawn(program: &str, args: &[String], options: ClientOptions) -> io::Result<Self> {
        let mut child = Command::new(program)
            .args(args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::inherit())
            .spawn()?;
        let stdin: ChildStdin = child.stdin.take().expect("piped stdin");
        let stdout = child.stdout.take().expect("piped stdout");
        let mut client = Self::from_streams(BufReader::new(stdout), BufWriter::new(stdin), options);
        client.child = Some(Mutex::new(child));
        Ok(client)
    }

    pub fn options(&self) -> ClientOptions {
        self.options
    }

    pub fn set_banner(&self, banner: impl Into<String>) {
        *self.shared.banner.lock().expect("banner lock") = Some(banner.into());
    }

    /// Sends one request and waits for its response.
    pub fn fetch(&self, op: Op, texts: Vec<String>) -> Result<EmbeddingResponse, EmbeddingError> {
        let _slot = self.slots.acquire();
        let id = self.next_id.fetch_add(1, Ordering::Relaxed);
        let count = texts.len();
        let request = EmbeddingRequest { id, op, texts };
        let (tx, rx) = mpsc::channel();
        {
            let mut p = self.shared.pending.lock().expect("pending lock");
            if let Some(err) = &p.closed {
                return Err(err.clone());
            }
            p.waiting.insert(id, tx);
        }
        let line = serde_json::to_string(&request).expect("request serializes");
        let written = {
            let mut w = self.writer.lock().expect("writer lock");
            w.write_all(line.as_bytes())
                .and_then(|_| w.write_all(b"\n"))
                .and_then(|_| w.flush())
        };
        if let Err(e) = written {
            self.shared.pending.lock().expect("pending lock").waiting.remove(&id);
            return Err(e.into());
        }
        match rx.recv_timeout(self.options.timeout) {
            Ok(reply) => decode_response(reply?, op, count),
            Err(RecvTimeoutError::Timeout) => {
                self.shared.pending.lock().expect("pending lock").waiting.remove(&id);
                Err(EmbeddingError::Timeout {
                    id,
                    after: self.options.timeout,
                })
            }
            Err(RecvTimeoutError::Disconnected) => Err(protocol("connection closed")),
        }
    }

    fn batched<T>(
        &self,
        op: Op,
        texts: &[String],
        take: impl Fn(Vectors) -> Option<Vec<T>>,
    ) -> Result<Vec<T>, EmbeddingError> {
        let mut out = Vec::with_capacity(texts.len());
        for batch in texts.chunks(self.options.batch_size.max(1)) {
            let response = self.fetch(op, batch.to_vec())?;
            out.extend(take(response.vectors).ok_or_else(|| protocol("response kind does not match request"))?);
        }
        Ok(out)
    }

    pub fn is_connected(&self) -> bool {
        !self.reader_done.load(Ordering::SeqCst)
    }
}

impl EmbeddingSource for EmbeddingClient {
    fn sentence_vectors(&self, texts: &[String]) -> Result<Vec<Vec<f64>>, EmbeddingError> {
        self.batched(Op::Sentence, texts, |v| match v {
            Vectors::Sentence(vs) => Some(vs),
            Vectors::Tokens(_) => None,
        })
    }

    fn token_vectors(&self, texts: &[String]) -> Result<Vec<Vec<TokenVector>>, EmbeddingError> {
        self.batched(Op::Tokens, texts, |v| match v {
            Vectors::Tokens(vs) => Some(vs),
            Vectors::Sentence(_) => None,
        })
    }

    fn banner(&self) -> Option<String> {
        self.shared.banner.lock().expect("banner lock").clone()
    }
}

impl Drop for EmbeddingClient {
    fn drop(&mut self) {
        if let Some(child) = &self.child {
            let mut child = child.lock().expect("child lock");
            let _ = child.kill();
            let _ = child.wait();
        }
    }
}

fn read_loop<R: BufRead>(reader: R, shared: &Shared) {
    for line in reader.lines() {
        let line = match line {
            Ok(l) => l,
            Err(e) => {
                shared.fail_all(e.into());
                return;
            }
        };
        if line.trim().is_empty() {
            continue;
        }
        let value: Value = match serde_json::from_str(&line) {
            Ok(v) => v,
            Err(e) => {
                // Without an id the line cannot be routed; the stream is no longer trusted.
                shared.fail_all(protocol(format!("malformed response line: {e}")));
                return;
            }
        };
        let Some(id) = value.get("id").and_then(Value::as_u64) else {
            if let Some(banner) = value.get("banner").and_then(Value::as_str) {
                *shared.banner.lock().expect("banner lock") = Some(banner.to_owned());
                continue;
            }
            shared.fail_all(protocol("response without id"));
            return;
        };
        let tx = shared.pending.lock().expect("pending lock").waiting.remove(&id);
        match tx {
            Some(tx) => {
                let _ = tx.send(Ok(value));
            }
            None => log::warn!("response for unknown or expired request {id}"),
        }
    }
    shared.fail_all(protocol("connection closed"));
}
