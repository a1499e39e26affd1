//! Append-only proof-of-disposal (POD) token ledger.
//!
//! Every mutation appends one [`LedgerEntry`]. Entries form a hash chain:
//! `entry_digest = SHA-256(canonical {kind, payload, prev_digest})`, with
//! the first entry chained to 64 zeros. The canonical form is compact JSON
//! with lexicographically sorted keys, which is also exactly how each entry
//! is written as one line of the log, so [`parse_log`] rejects any line that
//! is not byte-for-byte canonical.
//!
//! Tokens expire lazily: the first transfer or valuation that finds a token
//! at zero value appends an `Expire` entry.

mod schedule;

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::pricing::{Cents, TokenQuote};

pub use schedule::{ScheduleError, ScheduleKind, ValueSchedule};

pub const GENESIS_DIGEST: &str =
    "0000000000000000000000000000000000000000000000000000000000000000";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LedgerError {
    #[error("object `{0}` already has a disposal proof")]
    DuplicateDisposal(String),
    #[error("quote for `{object_id}` expired at {valid_until}, disposal at {disposed_at}")]
    ExpiredQuote {
        object_id: String,
        valid_until: i64,
        disposed_at: i64,
    },
    #[error("schedule value {schedule} does not match quoted value {quote}")]
    ValueMismatch { quote: Cents, schedule: Cents },
    #[error("proof is for `{proof}` but quote is for `{quote}`")]
    ObjectMismatch { proof: String, quote: String },
    #[error("`{party}` does not hold token `{token_id}`")]
    NotHolder { token_id: String, party: String },
    #[error("token `{0}` has expired")]
    ExpiredToken(String),
    #[error("unknown token `{0}`")]
    UnknownToken(String),
    #[error("time {at} is before token `{token_id}` was issued")]
    BeforeIssuance { token_id: String, at: i64 },
    #[error("{0}")]
    InvalidSchedule(#[from] ScheduleError),
    #[error("digest chain broken at entry {0}")]
    ChainBroken(u64),
    #[error("invalid entry {0}")]
    InvalidEntry(u64),
    #[error("ledger io: {0}")]
    Io(String),
}

impl LedgerError {
    /// Variant name, e.g. `ChainBroken`.
    pub fn name(&self) -> &'static str {
        match self {
            Self::DuplicateDisposal(_) => "DuplicateDisposal",
            Self::ExpiredQuote { .. } => "ExpiredQuote",
            Self::ValueMismatch { .. } => "ValueMismatch",
            Self::ObjectMismatch { .. } => "ObjectMismatch",
            Self::NotHolder { .. } => "NotHolder",
            Self::ExpiredToken(_) => "ExpiredToken",
            Self::UnknownToken(_) => "UnknownToken",
            Self::BeforeIssuance { .. } => "BeforeIssuance",
            Self::InvalidSchedule(_) => "InvalidSchedule",
            Self::ChainBroken(_) => "ChainBroken",
            Self::InvalidEntry(_) => "InvalidEntry",
            Self::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for LedgerError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DisposalProof {
    pub object_id: String,
    pub remover_id: String,
    /// Unix seconds.
    pub disposed_at: i64,
    /// Opaque evidence reference, typically a hex digest.
    pub evidence_digest: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub token_id: String,
    pub proof: DisposalProof,
    pub schedule: ValueSchedule,
    pub holder: String,
    pub expired: bool,
}

impl Token {
    pub fn issued_at(&self) -> i64 {
        self.proof.disposed_at
    }

    pub fn value_at(&self, at: i64) -> Cents {
        self.schedule.value_at(at - self.issued_at())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EntryKind {
    Issue,
    Transfer,
    Expire,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IssueRecord {
    pub token_id: String,
    pub proof: DisposalProof,
    pub quote: TokenQuote,
    pub schedule: ValueSchedule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransferRecord {
    pub token_id: String,
    pub from: String,
    pub to: String,
    pub at: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpireRecord {
    pub token_id: String,
    pub at: i64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EntryPayload {
    Issue(IssueRecord),
    Transfer(TransferRecord),
    Expire(ExpireRecord),
}

impl EntryPayload {
    pub fn kind(&self) -> EntryKind {
        match self {
            Self::Issue(_) => EntryKind::Issue,
            Self::Transfer(_) => EntryKind::Transfer,
            Self::Expire(_) => EntryKind::Expire,
        }
    }

    fn to_value(&self) -> Value {
        match self {
            Self::Issue(r) => serde_json::to_value(r),
            Self::Transfer(r) => serde_json::to_value(r),
            Self::Expire(r) => serde_json::to_value(r),
        }
        .expect("payload serialises")
    }

    fn from_value(kind: EntryKind, value: Value) -> Result<Self, serde_json::Error> {
        Ok(match kind {
            EntryKind::Issue => Self::Issue(serde_json::from_value(value)?),
            EntryKind::Transfer => Self::Transfer(serde_json::from_value(value)?),
            EntryKind::Expire => Self::Expire(serde_json::from_value(value)?),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LedgerEntry {
    pub seq: u64,
    pub payload: EntryPayload,
    pub prev_digest: String,
    pub entry_digest: String,
}

impl LedgerEntry {
    pub fn kind(&self) -> EntryKind {
        self.payload.kind()
    }

    /// Digest this entry should carry given its contents.
    pub fn expected_digest(&self) -> String {
        chain_digest(&self.prev_digest, &self.payload)
    }

    /// One canonical JSON line, without the trailing newline.
    pub fn to_line(&self) -> String {
        json!({
            "seq": self.seq,
            "kind": self.kind(),
            "payload": self.payload.to_value(),
            "prev_digest": self.prev_digest,
            "entry_digest": self.entry_digest,
        })
        .to_string()
    }
}

fn chain_digest(prev_digest: &str, payload: &EntryPayload) -> String {
    let canonical = json!({
        "kind": payload.kind(),
        "payload": payload.to_value(),
        "prev_digest": prev_digest,
    })
    .to_string();
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    seq: u64,
    kind: EntryKind,
    payload: Value,
    prev_digest: String,
    entry_digest: String,
}

/// Splits a log into entries. Each line must be canonical and newline
/// terminated; chain integrity is checked by [`replay`].
pub fn parse_log(bytes: &[u8]) -> Result<Vec<LedgerEntry>, LedgerError> {
    let mut entries = Vec::new();
    let mut rest = bytes;
    while !rest.is_empty() {
        let seq = entries.len() as u64 + 1;
        let invalid = || LedgerError::InvalidEntry(seq);
        let end = rest.iter().position(|&b| b == b'\n').ok_or_else(invalid)?;
        let line = std::str::from_utf8(&rest[..end]).map_err(|_| invalid())?;
        rest = &rest[end + 1..];
        let raw: RawEntry = serde_json::from_str(line).map_err(|_| invalid())?;
        let payload = EntryPayload::from_value(raw.kind, raw.payload).map_err(|_| invalid())?;
        let entry = LedgerEntry {
            seq: raw.seq,
            payload,
            prev_digest: raw.prev_digest,
            entry_digest: raw.entry_digest,
        };
        if entry.to_line() != line {
            return Err(invalid());
        }
        entries.push(entry);
    }
    Ok(entries)
}

/// Rebuilds ledger state from a log, verifying sequence numbers and the
/// digest chain before applying each entry.
pub fn replay(entries: &[LedgerEntry]) -> Result<Ledger, LedgerError> {
    let mut ledger = Ledger::new();
    for entry in entries {
        let seq = ledger.entries.len() as u64 + 1;
        if entry.seq != seq {
            return Err(LedgerError::InvalidEntry(seq));
        }
        if entry.prev_digest != ledger.head_digest() || entry.entry_digest != entry.expected_digest()
        {
            return Err(LedgerError::ChainBroken(seq));
        }
        ledger
            .check(&entry.payload)
            .map_err(|_| LedgerError::InvalidEntry(seq))?;
        ledger.apply(entry.payload.clone());
        ledger.entries.push(entry.clone());
    }
    Ok(ledger)
}

#[derive(Debug)]
struct LogSink {
    path: PathBuf,
    file: File,
}

/// Token ledger state plus its log. Optionally mirrored to a file, in which
/// case every entry is written and synced before the operation returns.
#[derive(Debug, Default)]
pub struct Ledger {
    entries: Vec<LedgerEntry>,
    tokens: BTreeMap<String, Token>,
    disposed: BTreeSet<String>,
    sink: Option<LogSink>,
}

impl PartialEq for Ledger {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries && self.tokens == other.tokens
    }
}

impl Ledger {
    pub fn new() -> Self {
        Self::default()
    }

    /// Opens (or creates) a file-backed ledger, replaying any existing log.
    pub fn open(path: impl AsRef<Path>) -> Result<Self, LedgerError> {
        let path = path.as_ref();
        let mut ledger = match std::fs::read(path) {
            Ok(bytes) => replay(&parse_log(&bytes)?)?,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ledger::new(),
            Err(e) => return Err(e.into()),
        };
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        ledger.sink = Some(LogSink {
            path: path.to_owned(),
            file,
        });
        Ok(ledger)
    }

    pub fn from_log(bytes: &[u8]) -> Result<Self, LedgerError> {
        replay(&parse_log(bytes)?)
    }

    pub fn path(&self) -> Option<&Path> {
        self.sink.as_ref().map(|s| s.path.as_path())
    }

    pub fn entries(&self) -> &[LedgerEntry] {
        &self.entries
    }

    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.tokens.values()
    }

    pub fn token(&self, token_id: &str) -> Option<&Token> {
        self.tokens.get(token_id)
    }

    /// token id → current holder.
    pub fn holders(&self) -> BTreeMap<&str, &str> {
        self.tokens
            .iter()
            .map(|(id, t)| (id.as_str(), t.holder.as_str()))
            .collect()
    }

    pub fn head_digest(&self) -> &str {
        self.entries
            .last()
            .map_or(GENESIS_DIGEST, |e| e.entry_digest.as_str())
    }

    /// JSON-lines log, one canonical entry per line.
    pub fn export(&self) -> String {
        self.entries
            .iter()
            .map(|e| e.to_line() + "\n")
            .collect()
    }

    /// Sum of all unexpired token values at `at`.
    pub fn outstanding_value(&self, at: i64) -> Cents {
        Cents(
            self.tokens
                .values()
                .filter(|t| !t.expired && at >= t.issued_at())
                .map(|t| t.value_at(at).0)
                .sum(),
        )
    }

    pub fn token_id_for(object_id: &str) -> String {
        format!("pod-{object_id}")
    }

    /// Issues a token to the remover named in `proof`.
    pub fn issue(
        &mut self,
        proof: DisposalProof,
        quote: TokenQuote,
        schedule: ValueSchedule,
    ) -> Result<String, LedgerError> {
        let record = IssueRecord {
            token_id: Self::token_id_for(&proof.object_id),
            proof,
            quote,
            schedule,
        };
        let token_id = record.token_id.clone();
        self.commit(EntryPayload::Issue(record))?;
        Ok(token_id)
    }

    /// Moves a token between parties. A token found at zero value is marked
    /// expired (appending an `Expire` entry) and the transfer is refused.
    pub fn transfer(
        &mut self,
        token_id: &str,
        from: &str,
        to: &str,
        at: i64,
    ) -> Result<u64, LedgerError> {
        let token = self.live_token(token_id, at)?;
        if token.holder != from {
            return Err(LedgerError::NotHolder {
                token_id: token_id.to_owned(),
                party: from.to_owned(),
            });
        }
        self.expire_if_worthless(token_id, at)?;
        self.commit(EntryPayload::Transfer(TransferRecord {
            token_id: token_id.to_owned(),
            from: from.to_owned(),
            to: to.to_owned(),
            at,
        }))
    }

    /// Value of a token at `at`, recording expiry if it has reached zero.
    pub fn value(&mut self, token_id: &str, at: i64) -> Result<Cents, LedgerError> {
        let token = self
            .tokens
            .get(token_id)
            .ok_or_else(|| LedgerError::UnknownToken(token_id.to_owned()))?;
        if token.expired {
            return Ok(Cents::ZERO);
        }
        if at < token.issued_at() {
            return Err(LedgerError::BeforeIssuance {
                token_id: token_id.to_owned(),
                at,
            });
        }
        let value = token.value_at(at);
        if value == Cents::ZERO {
            self.record_expiry(token_id, at)?;
        }
        Ok(value)
    }

    /// Records expiry for every live token worth nothing at `at`, in token
    /// id order. Returns the expired ids.
    pub fn expire_due(&mut self, at: i64) -> Result<Vec<String>, LedgerError> {
        let due: Vec<String> = self
            .tokens
            .values()
            .filter(|t| !t.expired && at >= t.issued_at() && t.value_at(at) == Cents::ZERO)
            .map(|t| t.token_id.clone())
            .collect();
        for id in &due {
            self.record_expiry(id, at)?;
        }
        Ok(due)
    }

    fn live_token(&self, token_id: &str, at: i64) -> Result<&Token, LedgerError> {
        let token = self
            .tokens
            .get(token_id)
            .ok_or_else(|| LedgerError::UnknownToken(token_id.to_owned()))?;
        if token.expired {
            return Err(LedgerError::ExpiredToken(token_id.to_owned()));
        }
        if at < token.issued_at() {
            return Err(LedgerError::BeforeIssuance {
                token_id: token_id.to_owned(),
                at,
            });
        }
        Ok(token)
    }

    fn expire_if_worthless(&mut self, token_id: &str, at: i64) -> Result<(), LedgerError> {
        if self.tokens[token_id].value_at(at) == Cents::ZERO {
            self.record_expiry(token_id, at)?;
            return Err(LedgerError::ExpiredToken(token_id.to_owned()));
        }
        Ok(())
    }

    fn record_expiry(&mut self, token_id: &str, at: i64) -> Result<u64, LedgerError> {
        self.commit(EntryPayload::Expire(ExpireRecord {
            token_id: token_id.to_owned(),
            at,
        }))
    }

    /// Business rules an entry must satisfy against the current state.
    fn check(&self, payload: &EntryPayload) -> Result<(), LedgerError> {
        match payload {
            EntryPayload::Issue(r) => {
                let (proof, quote) = (&r.proof, &r.quote);
                r.schedule.validate()?;
                if self.disposed.contains(&proof.object_id) || self.tokens.contains_key(&r.token_id)
                {
                    return Err(LedgerError::DuplicateDisposal(proof.object_id.clone()));
                }
                if r.token_id != Self::token_id_for(&proof.object_id) {
                    return Err(LedgerError::ObjectMismatch {
                        proof: proof.object_id.clone(),
                        quote: r.token_id.clone(),
                    });
                }
                if proof.object_id != quote.object_id {
                    return Err(LedgerError::ObjectMismatch {
                        proof: proof.object_id.clone(),
                        quote: quote.object_id.clone(),
                    });
                }
                if proof.disposed_at > quote.valid_until {
                    return Err(LedgerError::ExpiredQuote {
                        object_id: proof.object_id.clone(),
                        valid_until: quote.valid_until,
                        disposed_at: proof.disposed_at,
                    });
                }
                if r.schedule.initial_value != quote.initial_value {
                    return Err(LedgerError::ValueMismatch {
                        quote: quote.initial_value,
                        schedule: r.schedule.initial_value,
                    });
                }
                Ok(())
            }
            EntryPayload::Transfer(r) => {
                let token = self.live_token(&r.token_id, r.at)?;
                if token.holder != r.from {
                    return Err(LedgerError::NotHolder {
                        token_id: r.token_id.clone(),
                        party: r.from.clone(),
                    });
                }
                if token.value_at(r.at) == Cents::ZERO {
                    return Err(LedgerError::ExpiredToken(r.token_id.clone()));
                }
                Ok(())
            }
            EntryPayload::Expire(r) => {
                let token = self.live_token(&r.token_id, r.at)?;
                if token.value_at(r.at) != Cents::ZERO {
                    return Err(LedgerError::InvalidEntry(self.entries.len() as u64 + 1));
                }
                Ok(())
            }
        }
    }

    fn apply(&mut self, payload: EntryPayload) {
        match payload {
            EntryPayload::Issue(r) => {
                self.disposed.insert(r.proof.object_id.clone());
                self.tokens.insert(
                    r.token_id.clone(),
                    Token {
                        token_id: r.token_id,
                        holder: r.proof.remover_id.clone(),
                        proof: r.proof,
                        schedule: r.schedule,
                        expired: false,
                    },
                );
            }
            EntryPayload::Transfer(r) => {
                if let Some(t) = self.tokens.get_mut(&r.token_id) {
                    t.holder = r.to;
                }
            }
            EntryPayload::Expire(r) => {
                if let Some(t) = self.tokens.get_mut(&r.token_id) {
                    t.expired = true;
                }
            }
        }
    }

    /// Validates, persists, then applies one entry.
    fn commit(&mut self, payload: EntryPayload) -> Result<u64, LedgerError> {
        self.check(&payload)?;
        let prev_digest = self.head_digest().to_owned();
        let entry = LedgerEntry {
            seq: self.entries.len() as u64 + 1,
            entry_digest: chain_digest(&prev_digest, &payload),
            prev_digest,
            payload: payload.clone(),
        };
        if let Some(sink) = &mut self.sink {
            sink.file.write_all((entry.to_line() + "\n").as_bytes())?;
            sink.file.flush()?;
            sink.file.sync_data()?;
        }
        let seq = entry.seq;
        self.apply(payload);
        self.entries.push(entry);
        Ok(seq)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pricing::PricingPolicy;
    use crate::time::{QUOTE_VALIDITY, SECONDS_PER_YEAR as Y};

    fn quote(object: &str, value: i64, at: i64) -> TokenQuote {
        TokenQuote {
            object_id: object.into(),
            initial_value: Cents(value),
            lifetime: 4 * Y,
            quoted_at: at,
            valid_until: at + QUOTE_VALIDITY,
            policy: PricingPolicy::Division,
        }
    }

    fn proof(object: &str, remover: &str, at: i64) -> DisposalProof {
        DisposalProof {
            object_id: object.into(),
            remover_id: remover.into(),
            disposed_at: at,
            evidence_digest: "ab".repeat(32),
        }
    }

    fn issued() -> (Ledger, String) {
        let mut l = Ledger::new();
        let id = l
            .issue(
                proof("A", "B", 100),
                quote("A", 10_000, 0),
                ValueSchedule::rot(Cents(10_000), 4 * Y, Y).unwrap(),
            )
            .unwrap();
        (l, id)
    }

    #[test]
    fn issue_gives_token_to_remover() {
        let (l, id) = issued();
        assert_eq!(id, "pod-A");
        assert_eq!(l.token(&id).unwrap().holder, "B");
        assert_eq!(l.entries().len(), 1);
        assert_eq!(l.entries()[0].prev_digest, GENESIS_DIGEST);
    }

    #[test]
    fn issue_rejections() {
        let (mut l, _) = issued();
        let rot = ValueSchedule::rot(Cents(10_000), 4 * Y, Y).unwrap();
        assert_eq!(
            l.issue(proof("A", "C", 100), quote("A", 10_000, 0), rot.clone()),
            Err(LedgerError::DuplicateDisposal("A".into()))
        );
        let late = proof("X", "C", QUOTE_VALIDITY + 1);
        assert!(matches!(
            l.issue(late, quote("X", 10_000, 0), rot.clone()),
            Err(LedgerError::ExpiredQuote { .. })
        ));
        assert!(matches!(
            l.issue(proof("X", "C", 5), quote("X", 9_999, 0), rot.clone()),
            Err(LedgerError::ValueMismatch { .. })
        ));
        assert!(matches!(
            l.issue(proof("X", "C", 5), quote("Y", 10_000, 0), rot),
            Err(LedgerError::ObjectMismatch { .. })
        ));
        assert_eq!(l.entries().len(), 1);
    }

    #[test]
    fn transfer_rules() {
        let (mut l, id) = issued();
        assert_eq!(l.transfer(&id, "B", "C", 200).unwrap(), 2);
        assert_eq!(l.token(&id).unwrap().holder, "C");
        assert!(matches!(
            l.transfer(&id, "B", "D", 300),
            Err(LedgerError::NotHolder { .. })
        ));
        assert_eq!(
            l.transfer(&id, "C", "D", 100 + 4 * Y),
            Err(LedgerError::ExpiredToken(id.clone()))
        );
        assert_eq!(l.entries().last().unwrap().kind(), EntryKind::Expire);
        assert_eq!(
            l.transfer(&id, "C", "D", 300),
            Err(LedgerError::ExpiredToken(id.clone()))
        );
        assert!(matches!(
            l.transfer("pod-Q", "C", "D", 300),
            Err(LedgerError::UnknownToken(_))
        ));
    }

    #[test]
    fn value_and_lazy_expiry() {
        let (mut l, id) = issued();
        assert_eq!(l.value(&id, 100).unwrap(), Cents(10_000));
        assert_eq!(l.value(&id, 100 + 2 * Y).unwrap(), Cents(5_000));
        assert_eq!(l.entries().len(), 1);
        assert_eq!(l.value(&id, 100 + 4 * Y).unwrap(), Cents::ZERO);
        assert_eq!(l.entries().len(), 2);
        assert_eq!(l.value(&id, 100 + 5 * Y).unwrap(), Cents::ZERO);
        assert_eq!(l.entries().len(), 2);
        assert!(matches!(l.value(&id, 0), Ok(Cents::ZERO)));
    }

    #[test]
    fn replay_matches_live_state() {
        let (mut l, id) = issued();
        l.transfer(&id, "B", "C", 200).unwrap();
        l.expire_due(100 + 4 * Y).unwrap();
        let log = l.export();
        let back = Ledger::from_log(log.as_bytes()).unwrap();
        assert_eq!(back, l);
        assert_eq!(back.export(), log);
        assert_eq!(Ledger::from_log(b"").unwrap(), Ledger::new());
    }

    #[test]
    fn altered_digest_breaks_chain() {
        let (mut l, id) = issued();
        l.transfer(&id, "B", "C", 200).unwrap();
        l.transfer(&id, "C", "D", 300).unwrap();
        let mut entries = l.entries().to_vec();
        entries[2].entry_digest = "f".repeat(64);
        assert_eq!(replay(&entries), Err(LedgerError::ChainBroken(3)));
        let mut entries = l.entries().to_vec();
        if let EntryPayload::Transfer(t) = &mut entries[1].payload {
            t.to = "Mallory".into();
        }
        assert_eq!(replay(&entries), Err(LedgerError::ChainBroken(2)));
    }

    #[test]
    fn non_canonical_lines_rejected() {
        let (l, _) = issued();
        let log = l.export();
        let spaced = log.replacen("{\"", "{ \"", 1);
        assert_eq!(parse_log(spaced.as_bytes()), Err(LedgerError::InvalidEntry(1)));
        let unterminated = log.trim_end();
        assert_eq!(
            parse_log(unterminated.as_bytes()),
            Err(LedgerError::InvalidEntry(1))
        );
    }

    #[test]
    fn file_backed_ledger_persists() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pod.jsonl");
        let id = {
            let mut l = Ledger::open(&path).unwrap();
            l.issue(
                proof("A", "B", 100),
                quote("A", 10_000, 0),
                ValueSchedule::rot(Cents(10_000), 4 * Y, Y).unwrap(),
            )
            .unwrap()
        };
        let mut l = Ledger::open(&path).unwrap();
        assert_eq!(l.token(&id).unwrap().holder, "B");
        l.transfer(&id, "B", "C", 200).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, l.export());
        assert_eq!(text.lines().count(), 2);
    }

    #[test]
    fn error_names() {
        assert_eq!(LedgerError::ChainBroken(3).name(), "ChainBroken");
        assert_eq!(LedgerError::ExpiredToken("x".into()).name(), "ExpiredToken");
    }
}
