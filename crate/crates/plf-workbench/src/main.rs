//! The workbench CLI: analysis and reflection printers for frame files,
//! congruence tables, filter reports, nucleus tables, interval evaluation,
//! point attachment, suite verification, and DOT emission.

use anyhow::{anyhow, bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use plf_core::attach::{lw_join, lw_max, lw_meet, AttachmentSpec, LwElement};
use plf_core::congruence::{closed_cong, dense_cong, enumerate_congruences, open_cong};
use plf_core::em::{
    fat_reflection, in_e_class, in_m_class, is_skinny, pointless_part, spatial_part, SourceOfHoms,
};
use plf_core::filter::{enumerate_round_filters, spatial_support, ExtFilter};
use plf_core::frame::{Elem, FiniteFrame};
use plf_core::nucleus::{nucleus_from_filter, pi_nucleus, sigma_nucleus, Nucleus};
use plf_core::order::{center, completely_below, is_completely_regular, CoverStructure};
use plf_core::rline::{
    io_completely_below, io_fill, io_heyting, io_is_punctured, io_join, io_meet,
    io_pseudocomplement, parse_interval_open, prop16_check, Q,
};
use plf_workbench::report::SuiteReport;
use plf_workbench::suites::{run_all, run_suite, SuiteConfig, SUITE_NAMES};
use plf_workbench::{json, mutation_caught, resolve_seed};
use std::collections::BTreeSet;
use std::path::PathBuf;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "plf", about = "pointless-frames workbench", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print atoms, maxima, punctured set, center, and the regularity flag
    /// of a frame file.
    Analyze {
        #[arg(long)]
        frame: PathBuf,
        /// Also emit the rather-below and completely-below tables as JSON
        /// adjacency lists.
        #[arg(long)]
        relations: bool,
    },
    /// Print σ/π quotients, classification of the reflectors and of any
    /// supplied homs, τ and the fat flag.
    Reflect {
        #[arg(long)]
        frame: PathBuf,
        /// Hom files to classify (skinny / 𝔈 / 𝔐), repeatable.
        #[arg(long = "hom")]
        homs: Vec<PathBuf>,
    },
    /// Print the open/closed/dense congruence tables; optionally enumerate
    /// the whole congruence lattice (small frames) as DOT.
    Assembly {
        #[arg(long)]
        frame: PathBuf,
        #[arg(long)]
        enumerate: bool,
    },
    /// Print the filters of maximal elements and, on request, every round
    /// filter (small frames).
    Filters {
        #[arg(long)]
        frame: Option<PathBuf>,
        #[arg(long)]
        enumerate_round: bool,
        /// An interval point filter, addressed as point:<rational>.
        #[arg(long)]
        point: Option<String>,
        /// Elements to test against the point filter: membership, round
        /// witness, and a regularity challenge.
        #[arg(long)]
        challenge: Option<String>,
    },
    /// Print the operator table, kernel, and fixed points of a nucleus.
    Nucleus {
        #[arg(long)]
        frame: PathBuf,
        /// sigma | pi | filter:<element-index>
        #[arg(long)]
        kind: String,
    },
    /// Evaluate expressions on the rational interval carrier.
    Rline {
        #[command(subcommand)]
        op: RlineOp,
    },
    /// Operate on the point-attachment frame at the given rationals.
    Attach {
        /// Comma-separated rationals, e.g. 0,1,5/2.
        #[arg(long)]
        points: String,
        #[arg(long, value_enum)]
        op: AttachOp,
        /// Elements as flags|body separated by `;`, e.g. "0,1|(0,1)u(2,3);|(5,6)".
        #[arg(long, default_value = "")]
        args: String,
    },
    /// Run verification suites.
    Verify {
        /// Suite id or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 5)]
        max_poset_size: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Run the seeded mutation-sensitivity harness instead of the
        /// plain suites.
        #[arg(long)]
        mutation: bool,
        /// Emit the reports as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Emit DOT for a frame, its congruence lattice, or the
    /// completely-below overlay.
    Dot {
        #[arg(long)]
        frame: PathBuf,
        #[arg(long, value_enum, default_value_t = DotKind::Hasse)]
        kind: DotKind,
    },
}

#[derive(Subcommand)]
enum RlineOp {
    /// Join and meet of two elements.
    Eval { a: String, b: String },
    /// The puncturing fill.
    Fill { a: String },
    /// Pseudocomplement.
    Star { a: String },
    /// Heyting implication a → b.
    Imp { a: String, b: String },
    /// The completely-below decision a ≪ b.
    Cb { a: String, b: String },
    /// Generator-relation report at rationals p, q.
    Prop16 { p: String, q: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum AttachOp {
    Meet,
    Join,
    Max,
}

#[derive(Clone, Copy, ValueEnum)]
enum DotKind {
    Hasse,
    Assembly,
    Cb,
}

fn elem_list(els: &[Elem]) -> String {
    let v: Vec<String> = els.iter().map(|e| format!("{e}")).collect();
    format!("{{{}}}", v.join(", "))
}

fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    Ok(if let Some((n, d)) = t.split_once('/') {
        let d: i64 = d.trim().parse()?;
        if d == 0 {
            bail!("zero denominator in `{t}`");
        }
        Q::new(n.trim().parse()?, d)
    } else {
        Q::from_integer(t.parse()?)
    })
}

fn parse_lw_element(spec: &AttachmentSpec, s: &str) -> Result<LwElement> {
    let (flags, body) = s
        .split_once('|')
        .ok_or_else(|| anyhow!("element syntax is flags|body, e.g. 0,1|(0,1)"))?;
    let flag_set: BTreeSet<usize> = flags
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()?;
    let body = parse_interval_open(body.trim()).map_err(|e| anyhow!("{e}"))?;
    LwElement::new(spec, flag_set, body).map_err(|e| anyhow!("{e}"))
}

fn print_nucleus_table(f: &Arc<FiniteFrame>, nu: &Nucleus) {
    println!("operator:");
    for a in f.elements() {
        println!("  {a} -> {}", nu.at(a));
    }
    let kernel: Vec<Elem> = nu.kernel().into_iter().collect();
    let fix: Vec<Elem> = nu.fix_set().into_iter().collect();
    println!("kernel: {}", elem_list(&kernel));
    println!("fix:    {}", elem_list(&fix));
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze { frame, relations } => {
            let f = json::load_frame(&frame)?;
            let cov = CoverStructure::of(&f);
            println!("size: {}", f.size());
            println!("bottom: {}, top: {}", f.bottom(), f.top());
            println!("atoms: {}", elem_list(&cov.atoms));
            println!("maxima: {}", elem_list(&cov.maxima));
            let punctured: Vec<Elem> =
                f.elements().filter(|&a| !cov.successors_of(a).is_empty()).collect();
            println!("punctured: {}", elem_list(&punctured));
            println!("center: {}", elem_list(&center(&f)));
            println!("completely regular: {}", is_completely_regular(&f));
            if relations {
                let rb = plf_core::order::rather_below(&f);
                let cb = completely_below(&f);
                println!("{}", serde_json::to_string(&json::relation_to_json(&rb))?);
                println!("{}", serde_json::to_string(&json::relation_to_json(&cb))?);
            }
        }
        Command::Reflect { frame, homs } => {
            let f = json::load_frame(&frame)?;
            let cov = CoverStructure::of(&f);
            let s = spatial_part(&f, &cov);
            let p = pointless_part(&f, &cov);
            println!("sigma quotient: {} elements", s.quotient.size());
            for a in f.elements() {
                println!("  sigma {a} -> {}", s.map.at(a));
            }
            println!("pi quotient: {} elements", p.quotient.size());
            let skinny = is_skinny(&s.map);
            println!(
                "sigma map: skinny={}, in-E={}, in-M={}",
                skinny.verdict(),
                in_e_class(&s.map),
                in_m_class(&SourceOfHoms::new(f.clone(), vec![s.map.clone()]).expect("one arm"))
            );
            let fr = fat_reflection(&f, &cov);
            println!("tau injective: {}", fr.injective);
            println!("fat: {}", fr.fat);
            for path in homs {
                let m = json::load_hom(&path)?;
                let sk = is_skinny(&m);
                let in_m = in_m_class(
                    &SourceOfHoms::new(m.source().clone(), vec![m.clone()]).expect("one arm"),
                );
                println!(
                    "{}: skinny={}, in-E={}, in-M={}",
                    path.display(),
                    sk.verdict(),
                    m.is_surjective() && in_e_class(&m),
                    in_m
                );
            }
        }
        Command::Assembly { frame, enumerate } => {
            let f = json::load_frame(&frame)?;
            for a in f.elements() {
                let phi = open_cong(&f, a);
                let psi = closed_cong(&f, a);
                println!(
                    "phi({a}): {} classes; psi({a}): {} classes",
                    phi.class_count(),
                    psi.class_count()
                );
            }
            println!("dense: {} classes", dense_cong(&f).class_count());
            if enumerate {
                match enumerate_congruences(&f, 12) {
                    Some(all) => {
                        println!("congruences: {}", all.len());
                        print!("{}", plf_workbench::dot::congruence_lattice_dot(&all));
                    }
                    None => bail!("frame too large for full enumeration (limit 12)"),
                }
            }
        }
        Command::Filters { frame, enumerate_round, point, challenge } => {
            if let Some(spec) = point {
                let q = spec
                    .strip_prefix("point:")
                    .ok_or_else(|| anyhow!("point filters are addressed as point:<rational>"))?;
                let y = plf_core::rline::PointFilter::new(parse_q(q)?);
                if let Some(ch) = challenge {
                    let v = parse_interval_open(&ch).map_err(|e| anyhow!("{e}"))?;
                    println!("member: {}", y.contains(&v));
                    if let Some(w) = y.round_witness(&v) {
                        println!("round witness: {w}");
                    }
                    match y.regularity_witness(&v) {
                        Ok(b) => println!("regularity witness: {b} (b* = {})", io_pseudocomplement(&b)),
                        Err(e) => println!("regularity witness: none ({e})"),
                    }
                } else {
                    println!("point filter at {}", y.base);
                }
                return Ok(());
            }
            let f = json::load_frame(&frame.ok_or_else(|| anyhow!("--frame or --point required"))?)?;
            let cov = CoverStructure::of(&f);
            let fam = spatial_support(&f, &cov);
            for (a, x) in &fam.filters {
                let members: Vec<Elem> = x.members().iter().copied().collect();
                println!("x_{a}: {}", elem_list(&members));
            }
            for ((i, j), w) in &fam.independence {
                match w {
                    Some((b1, b2)) => println!("independence ({i},{j}): {b1} ∧ {b2} = ⊥"),
                    None => println!("independence ({i},{j}): no disjoint members"),
                }
            }
            if enumerate_round {
                let rounds = enumerate_round_filters(&f, 8)
                    .ok_or_else(|| anyhow!("frame too large for filter enumeration (limit 8)"))?;
                println!("round filters: {}", rounds.len());
                for x in rounds {
                    let members: Vec<Elem> = x.members().iter().copied().collect();
                    println!("  {}", elem_list(&members));
                }
            }
        }
        Command::Nucleus { frame, kind } => {
            let f = json::load_frame(&frame)?;
            let cov = CoverStructure::of(&f);
            match kind.as_str() {
                "sigma" => print_nucleus_table(&f, &sigma_nucleus(&f, &cov)),
                "pi" => {
                    let (nu, steps) = pi_nucleus(&f, &cov);
                    println!("iteration steps: {steps}");
                    print_nucleus_table(&f, &nu);
                }
                other => {
                    let spec = other
                        .strip_prefix("filter:")
                        .ok_or_else(|| anyhow!("kind must be sigma, pi, or filter:<element>"))?;
                    let idx: usize = spec.parse()?;
                    if idx >= f.size() {
                        bail!("element index {idx} out of range");
                    }
                    let filt = ExtFilter::principal(f.clone(), Elem(idx));
                    print_nucleus_table(&f, &nucleus_from_filter(&f, &filt));
                }
            }
        }
        Command::Rline { op } => match op {
            RlineOp::Eval { a, b } => {
                let u = parse_interval_open(&a).map_err(|e| anyhow!("{e}"))?;
                let v = parse_interval_open(&b).map_err(|e| anyhow!("{e}"))?;
                println!("join: {}", io_join(&u, &v));
                println!("meet: {}", io_meet(&u, &v));
            }
            RlineOp::Fill { a } => {
                let u = parse_interval_open(&a).map_err(|e| anyhow!("{e}"))?;
                println!("punctured: {}", io_is_punctured(&u));
                println!("fill: {}", io_fill(&u));
            }
            RlineOp::Star { a } => {
                let u = parse_interval_open(&a).map_err(|e| anyhow!("{e}"))?;
                println!("{}", io_pseudocomplement(&u));
            }
            RlineOp::Imp { a, b } => {
                let u = parse_interval_open(&a).map_err(|e| anyhow!("{e}"))?;
                let v = parse_interval_open(&b).map_err(|e| anyhow!("{e}"))?;
                println!("{}", io_heyting(&u, &v));
            }
            RlineOp::Cb { a, b } => {
                let u = parse_interval_open(&a).map_err(|e| anyhow!("{e}"))?;
                let v = parse_interval_open(&b).map_err(|e| anyhow!("{e}"))?;
                println!("{}", io_completely_below(&u, &v));
            }
            RlineOp::Prop16 { p, q } => {
                let report = prop16_check(parse_q(&p)?, parse_q(&q)?, 8);
                println!("join is top: {}", report.rel1_join_is_top);
                println!("meet is bottom: {}", report.rel2_meet_is_bottom);
                println!(
                    "sup evidence (monotone, strictly below): right=({}, {}), left=({}, {})",
                    report.rel3_right_monotone,
                    report.rel3_right_strictly_below,
                    report.rel3_left_monotone,
                    report.rel3_left_strictly_below
                );
                println!(
                    "global evidence: meet-down=({}, {}), join-up=({}, {}); limits asserted: {}",
                    report.rel4_meet_monotone_down,
                    report.rel4_meet_never_bottom,
                    report.rel4_join_monotone_up,
                    report.rel4_join_never_top,
                    report.limit_semantics_asserted
                );
            }
        },
        Command::Attach { points, op, args } => {
            let pts: Vec<Q> = points.split(',').map(parse_q).collect::<Result<_>>()?;
            let spec = AttachmentSpec::new(pts).map_err(|e| anyhow!("{e}"))?;
            match op {
                AttachOp::Max => {
                    for m in lw_max(&spec) {
                        println!("{}", serde_json::to_string(&json::lw_element_to_json(&m))?);
                    }
                }
                AttachOp::Meet | AttachOp::Join => {
                    let elems: Vec<LwElement> = args
                        .split(';')
                        .filter(|s| !s.trim().is_empty())
                        .map(|s| parse_lw_element(&spec, s))
                        .collect::<Result<_>>()?;
                    if elems.is_empty() {
                        bail!("--args must supply at least one element");
                    }
                    let result = match op {
                        AttachOp::Meet => {
                            let mut acc = elems[0].clone();
                            for e in &elems[1..] {
                                acc = lw_meet(&spec, &acc, e).map_err(|e| anyhow!("{e}"))?;
                            }
                            acc
                        }
                        _ => lw_join(&spec, &elems).map_err(|e| anyhow!("{e}"))?,
                    };
                    println!("{}", serde_json::to_string(&json::lw_element_to_json(&result))?);
                }
            }
        }
        Command::Verify { suite, max_poset_size, seed, mutation, json: as_json } => {
            let seed = resolve_seed(seed);
            if mutation {
                let names: Vec<&str> = if suite == "all" {
                    SUITE_NAMES.to_vec()
                } else {
                    vec![SUITE_NAMES
                        .iter()
                        .find(|n| **n == suite)
                        .ok_or_else(|| anyhow!("unknown suite `{suite}`"))?]
                };
                let mut all_caught = true;
                for name in names {
                    let caught = mutation_caught(name, seed, max_poset_size);
                    println!("mutation {name}: {}", if caught { "caught" } else { "MISSED" });
                    all_caught &= caught;
                }
                if !all_caught {
                    std::process::exit(1);
                }
                return Ok(());
            }
            let cfg = SuiteConfig { seed, max_poset_size, mutation: None };
            let reports: Vec<SuiteReport> = if suite == "all" {
                run_all(&cfg)
            } else {
                vec![run_suite(&suite, &cfg).map_err(|e| anyhow!("{e}"))?]
            };
            let mut ok = true;
            if as_json {
                println!("{}", serde_json::to_string_pretty(&reports)?);
                ok = reports.iter().all(|r| r.passed());
            } else {
                for r in &reports {
                    print!("{r}");
                    ok &= r.passed();
                }
            }
            if !ok {
                std::process::exit(1);
            }
        }
        Command::Dot { frame, kind } => {
            let f = json::load_frame(&frame)?;
            match kind {
                DotKind::Hasse => print!("{}", plf_workbench::dot::frame_dot(&f)),
                DotKind::Cb => print!(
                    "{}",
                    plf_workbench::dot::frame_with_relation_dot(&f, &completely_below(&f))
                ),
                DotKind::Assembly => {
                    let all = enumerate_congruences(&f, 12)
                        .ok_or_else(|| anyhow!("frame too large for enumeration (limit 12)"))?;
                    print!("{}", plf_workbench::dot::congruence_lattice_dot(&all));
                }
            }
        }
    }
    Ok(())
}
