//! The lemma-verification suites. Each suite runs every one of its claims
//! on every applicable corpus frame (or generated sample) and produces one
//! record per claim instance; `verify` drives them by name.
//!
//! Every suite also owns one seeded law-violating mutation of its inputs,
//! used by the sensitivity harness to confirm that the suite can actually
//! fail.

mod attach;
mod cb;
mod conl;
mod em;
mod filters;
mod finite;
mod homs;
mod nucleus;
mod rline;

use crate::corpus::{generate_corpus, nondistributive_rejects, CorpusFrame, CorpusSpec};
use plf_core::frame::PosetSpec;
use crate::report::{Recorder, SuiteReport};
use plf_core::frame::{FiniteFrame, FrameHom};
use plf_core::order::{completely_below, is_completely_regular, CoverStructure, RelationTable};
use rand::rngs::StdRng;
use rand::SeedableRng;
use std::sync::Arc;
use std::time::Instant;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub max_poset_size: usize,
    /// When set, the suite corrupts its inputs with this mutation seed; a
    /// healthy suite must then fail.
    pub mutation: Option<u64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0xC0FFEE, max_poset_size: 5, mutation: None }
    }
}

/// Per-frame precomputed context shared by the suites.
pub struct FrameCtx {
    pub name: String,
    pub frame: Arc<FiniteFrame>,
    pub cov: CoverStructure,
    pub cb: RelationTable,
    pub is_cr: bool,
}

impl FrameCtx {
    pub fn of(c: &CorpusFrame) -> Self {
        FrameCtx {
            name: c.name.clone(),
            frame: c.frame.clone(),
            cov: CoverStructure::of(&c.frame),
            cb: completely_below(&c.frame),
            is_cr: is_completely_regular(&c.frame),
        }
    }
}

pub struct SuiteInput {
    pub frames: Vec<FrameCtx>,
    /// Cover specs that must fail lattice/distributivity validation.
    pub rejects: Vec<(&'static str, PosetSpec)>,
    pub rng: StdRng,
    pub mutation: Option<u64>,
    pub rec: Recorder,
}

impl SuiteInput {
    fn new(cfg: &SuiteConfig) -> Self {
        let spec = CorpusSpec {
            max_poset_size: cfg.max_poset_size,
            include_nondistributive_rejects: true,
        };
        let corpus = generate_corpus(&spec);
        SuiteInput {
            frames: corpus.iter().map(FrameCtx::of).collect(),
            rejects: if spec.include_nondistributive_rejects {
                nondistributive_rejects()
            } else {
                Vec::new()
            },
            rng: StdRng::seed_from_u64(cfg.seed),
            mutation: cfg.mutation,
            rec: Recorder::new(),
        }
    }
}

/// A small deterministic pool of frame homs between small corpus frames,
/// enumerated exhaustively per pair and capped.
pub fn hom_pool(frames: &[FrameCtx], max_size: usize, per_pair: usize, cap: usize) -> Vec<FrameHom> {
    let mut pool = Vec::new();
    for src in frames.iter().filter(|c| c.frame.size() <= max_size) {
        for dst in frames.iter().filter(|c| c.frame.size() <= max_size) {
            if pool.len() >= cap {
                return pool;
            }
            if let Some(homs) = plf_core::frame::all_homs(&src.frame, &dst.frame, 4000) {
                // Spread the picks across the enumeration.
                let step = (homs.len() / per_pair).max(1);
                pool.extend(homs.into_iter().step_by(step).take(per_pair));
            }
        }
    }
    pool
}

/// Picks one eligible subject index for the seeded mutation; `None` when
/// mutations are off or nothing is eligible.
pub fn pick_among(mutation: Option<u64>, eligible: &[usize]) -> Option<usize> {
    use rand::Rng;
    match (mutation, eligible.is_empty()) {
        (Some(seed), false) => {
            let mut rng = StdRng::seed_from_u64(seed);
            Some(eligible[rng.gen_range(0..eligible.len())])
        }
        _ => None,
    }
}

type SuiteFn = fn(&mut SuiteInput);

pub const SUITE_NAMES: &[&str] = &[
    "frame-laws",
    "lemma1",
    "lemma2",
    "lemma3",
    "lemma4",
    "lemma5",
    "lemma8",
    "lemma9",
    "lemma10",
    "lemma11",
    "lemma13",
    "lemma14",
    "lemma17",
    "lemma18",
    "lemma20",
    "lemma22",
    "lemma23",
    "lemma33",
    "lemma35",
    "prop3",
    "prop13-23",
    "prop11-14",
    "cor2",
    "nucleus-engine",
    "cb-crossval",
    "em-factor",
    "em-class",
    "reflection",
    "rline",
    "attach",
    "filters",
];

fn suite_fn(name: &str) -> Option<SuiteFn> {
    Some(match name {
        "frame-laws" => finite::frame_laws,
        "lemma1" => finite::lemma1,
        "lemma2" => finite::lemma2,
        "lemma3" => homs::lemma3,
        "lemma4" => finite::lemma4,
        "lemma5" => homs::lemma5,
        "lemma8" => homs::lemma8,
        "lemma9" => homs::lemma9,
        "lemma10" => conl::lemma10,
        "lemma11" => conl::lemma11,
        "lemma13" => finite::lemma13,
        "lemma14" => homs::lemma14,
        "lemma17" => nucleus::lemma17,
        "lemma18" => homs::lemma18,
        "lemma20" => finite::lemma20,
        "lemma22" => filters::lemma22,
        "lemma23" => filters::lemma23,
        "lemma33" => finite::lemma33,
        "lemma35" => finite::lemma35,
        "prop3" => finite::prop3,
        "prop13-23" => finite::prop13_23,
        "prop11-14" => finite::prop11_14,
        "cor2" => finite::cor2,
        "nucleus-engine" => nucleus::nucleus_engine,
        "cb-crossval" => cb::cb_crossval,
        "em-factor" => em::em_factor,
        "em-class" => em::em_class,
        "reflection" => em::reflection,
        "rline" => rline::rline,
        "attach" => attach::attach,
        "filters" => filters::filters,
        _ => return None,
    })
}

#[derive(Debug)]
pub struct UnknownSuite(pub String);

impl std::fmt::Display for UnknownSuite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "unknown suite `{}`", self.0)
    }
}

impl std::error::Error for UnknownSuite {}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport, UnknownSuite> {
    let f = suite_fn(name).ok_or_else(|| UnknownSuite(name.to_string()))?;
    let started = Instant::now();
    let mut input = SuiteInput::new(cfg);
    f(&mut input);
    Ok(input.rec.into_report(name, cfg.seed, started.elapsed().as_millis()))
}

pub fn run_all(cfg: &SuiteConfig) -> Vec<SuiteReport> {
    SUITE_NAMES.iter().map(|n| run_suite(n, cfg).expect("registered")).collect()
}
