//! The acceptance battery: sixteen checks over the diagram categories, the
//! auxiliary monoids and the identity engine, each producing one report
//! entry.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

mod checks;
pub mod gen;
pub mod oracles;

pub const REPORT_SCHEMA: &str = "report_v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub detail: String,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub seed: u64,
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Config {
    pub seed: u64,
    /// Substring matched against check ids and anchors; others are skipped.
    pub filter: Option<String>,
    /// Also run the slow tiers.
    pub extended: bool,
}

/// State handed to a check: its own random stream.
pub struct Ctx {
    pub rng: ChaCha8Rng,
    pub extended: bool,
}

pub type Outcome = Result<String, String>;

pub struct Criterion {
    pub id: &'static str,
    pub anchor: &'static str,
    run: fn(&mut Ctx) -> Outcome,
}

pub fn criteria() -> &'static [Criterion] {
    checks::ALL
}

impl Criterion {
    pub fn matches(&self, filter: &str) -> bool {
        let f = filter.to_lowercase();
        self.id.to_lowercase().contains(&f) || self.anchor.to_lowercase().contains(&f)
    }

    pub fn run(&self, config: &Config) -> Entry {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(checks::ALL.iter().position(|c| c.id == self.id).unwrap_or(0) as u64);
        let mut ctx = Ctx { rng, extended: config.extended };
        let start = Instant::now();
        let outcome = (self.run)(&mut ctx);
        let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
        let (status, detail) = match outcome {
            Ok(d) => (Status::Pass, d),
            Err(d) => (Status::Fail, d),
        };
        Entry { id: self.id.to_string(), anchor: self.anchor.to_string(), status, detail, elapsed_ms }
    }

    fn skipped(&self) -> Entry {
        Entry {
            id: self.id.to_string(),
            anchor: self.anchor.to_string(),
            status: Status::Skipped,
            detail: "filtered out".to_string(),
            elapsed_ms: 0.0,
        }
    }
}

/// Runs every check (those rejected by the filter become `Skipped`).
pub fn run_suite(config: &Config) -> Report {
    run_suite_with(config, |_| {})
}

/// As [`run_suite`], calling `progress` after each entry.
pub fn run_suite_with(config: &Config, mut progress: impl FnMut(&Entry)) -> Report {
    let mut entries = Vec::new();
    for c in criteria() {
        let entry = match &config.filter {
            Some(f) if !c.matches(f) => c.skipped(),
            _ => c.run(config),
        };
        progress(&entry);
        entries.push(entry);
    }
    entries.sort_by(|a, b| a.id.cmp(&b.id));
    Report { schema: REPORT_SCHEMA, seed: config.seed, entries }
}

impl Entry {
    /// `PASS C01 partition axioms (12.3 ms): detail`.
    pub fn line(&self) -> String {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        format!("{tag} {} {} ({:.1} ms): {}", self.id, self.anchor, self.elapsed_ms, self.detail)
    }
}
