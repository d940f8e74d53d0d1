//! `syndetic` — classify subsets of finite semigroups, factor piecewise
//! syndetic sets, check eventually periodic subsets of the naturals, and run
//! the theorem-verification sweeps.
//!
//! Exit codes: 0 all good, 1 a sweep found a counterexample, 2 usage or
//! input error (bad literals, invalid Cayley tables, violated hypotheses).

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use syndetic_cli::{
    build_universe, checks, load_semigroup, parse_set_literal, parse_usize_list, run_sweep,
    Format, SweepSpec,
};
use syndetic_core::{
    factorial_example_window, is_piecewise_syndetic, is_syndetic, is_thick, EventuallyPeriodicSet,
    FilterKernel, RelativeContext, SizeVerdict, SubsetMask,
};

#[derive(Parser)]
#[command(
    name = "syndetic",
    version,
    about = "Executable finite models of syndetic, thick, and piecewise syndetic sets"
)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true, env = "SYNDETIC_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a subset of a finite semigroup under every size notion.
    Classify {
        /// Cayley table file (.json, or whitespace text rows).
        file: PathBuf,
        /// The subset, as comma-separated elements ("" for the empty set).
        #[arg(long)]
        set: String,
        /// Generator of the principal filter F (comma-separated elements);
        /// adds the relative verdicts.
        #[arg(long)]
        filter: Option<String>,
        /// Generator of the principal target filter G (defaults to the
        /// --filter generator).
        #[arg(long, requires = "filter")]
        target: Option<String>,
    },
    /// Factor a piecewise (relatively) syndetic set into a relatively
    /// syndetic part and a thick part.
    Decompose {
        /// Cayley table file (.json, or whitespace text rows).
        file: PathBuf,
        /// The subset, as comma-separated elements.
        #[arg(long)]
        set: String,
        /// Generator of the principal filter F; defaults to the whole
        /// semigroup (the absolute case). Must be closed under the product.
        #[arg(long)]
        filter: Option<String>,
    },
    /// Run the theorem-verification sweeps.
    Verify(VerifyArgs),
    /// Check eventually periodic subsets of the naturals.
    Nat {
        #[command(subcommand)]
        cmd: NatCmd,
    },
    /// List the theorem identifiers `verify --theorems` accepts.
    Theorems,
}

#[derive(Args)]
struct VerifyArgs {
    /// Semigroup orders to sweep, comma-separated.
    #[arg(long, default_value = "1,2,3,4", env = "SYNDETIC_ORDERS", value_parser = parse_orders)]
    orders: OrderList,
    /// Theorem identifiers to check, comma-separated, or "all".
    #[arg(long, default_value = "all", env = "SYNDETIC_THEOREMS", value_parser = parse_theorems)]
    theorems: TheoremList,
    /// Root seed; fixed seed means byte-identical report.
    #[arg(long, default_value_t = SweepSpec::default().seed, env = "SYNDETIC_SEED")]
    seed: u64,
    /// Orders up to this are enumerated exhaustively (max 4).
    #[arg(long, default_value_t = 4, env = "SYNDETIC_MAX_EXHAUSTIVE_ORDER")]
    max_exhaustive_order: usize,
    /// Random Cayley tables per order above the exhaustive range.
    #[arg(long, default_value_t = 40, env = "SYNDETIC_RANDOM_SAMPLES")]
    random_samples: usize,
    /// Randomized cases per stack-algebra check.
    #[arg(long, default_value_t = 16_000, env = "SYNDETIC_STACK_CASES")]
    stack_cases: usize,
    /// Seeded eventually periodic sets per arithmetic check.
    #[arg(long, default_value_t = 200, env = "SYNDETIC_EP_SETS")]
    ep_sets: usize,
    /// Window bound for the factorial refutation.
    #[arg(long, default_value_t = 100_000, env = "SYNDETIC_FACTORIAL_BOUND")]
    factorial_bound: usize,
    /// Largest translate used by the factorial refutation.
    #[arg(long, default_value_t = 10)]
    factorial_shift: usize,
    /// Number of forward translates used by the factorial refutation.
    #[arg(long, default_value_t = 100)]
    factorial_translates: usize,
    /// Extra Cayley-table file to sweep (repeatable).
    #[arg(long = "semigroup")]
    semigroup: Vec<PathBuf>,
}

#[derive(Subcommand)]
enum NatCmd {
    /// Classify an eventually periodic set.
    Classify(EpArgs),
    /// Find an arithmetic progression of the given length inside the set.
    FindAp {
        #[command(flatten)]
        set: EpArgs,
        /// Progression length ℓ; the witness has ℓ+1 terms.
        #[arg(long, default_value_t = 6)]
        len: usize,
    },
    /// Refute piecewise syndeticity of the factorial-block set at bounds.
    FactorialFalsify {
        /// Window bound.
        #[arg(long = "N", default_value_t = 100_000)]
        bound: usize,
        /// Largest translate h.
        #[arg(long, default_value_t = 10)]
        k: usize,
        /// Number of forward translates x.
        #[arg(long, default_value_t = 100)]
        m: usize,
    },
}

#[derive(Args)]
struct EpArgs {
    /// Period of the tail.
    #[arg(long)]
    p: usize,
    /// Where the periodic tail starts.
    #[arg(long = "T", default_value_t = 0)]
    threshold: usize,
    /// Residues mod p in the tail, comma-separated.
    #[arg(long = "R", default_value = "")]
    residues: String,
    /// Prefix members below the threshold, comma-separated.
    #[arg(long, default_value = "")]
    prefix: String,
}

impl EpArgs {
    fn build(&self) -> anyhow::Result<EventuallyPeriodicSet> {
        let residues = parse_usize_list(&self.residues)?;
        let prefix = parse_usize_list(&self.prefix)?;
        EventuallyPeriodicSet::new(self.p, self.threshold, residues, prefix)
            .map_err(|e| anyhow::anyhow!("{e}"))
    }
}

#[derive(Clone)]
struct OrderList(Vec<usize>);

fn parse_orders(s: &str) -> Result<OrderList, String> {
    let mut orders = Vec::new();
    for part in s.split(',') {
        let o: usize = part
            .trim()
            .parse()
            .map_err(|_| format!("bad order `{part}`"))?;
        if o == 0 || o > syndetic_cli::MAX_SWEEP_ORDER {
            return Err(format!(
                "order {o} is outside the supported range 1..={}",
                syndetic_cli::MAX_SWEEP_ORDER
            ));
        }
        orders.push(o);
    }
    if orders.is_empty() {
        return Err("at least one order is required".into());
    }
    orders.sort_unstable();
    orders.dedup();
    Ok(OrderList(orders))
}

#[derive(Clone)]
struct TheoremList(Vec<String>);

fn parse_theorems(s: &str) -> Result<TheoremList, String> {
    if s.trim() == "all" {
        return Ok(TheoremList(checks::all_ids()));
    }
    let mut ids = Vec::new();
    for part in s.split(',') {
        let id = part.trim();
        if !checks::is_known(id) {
            return Err(format!(
                "unknown theorem identifier `{id}`; run `syndetic theorems` for the list"
            ));
        }
        ids.push(id.to_string());
    }
    ids.sort();
    ids.dedup();
    Ok(TheoremList(ids))
}

fn main() {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // May fail if a pool already exists (e.g. under a test harness);
        // falling back to the existing pool is fine.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let format = Format::from(cli.format);
    let code = match run(cli.cmd, format) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    std::process::exit(code);
}

fn run(cmd: Cmd, format: Format) -> anyhow::Result<i32> {
    match cmd {
        Cmd::Classify {
            file,
            set,
            filter,
            target,
        } => cmd_classify(&file, &set, filter.as_deref(), target.as_deref(), format),
        Cmd::Decompose { file, set, filter } => {
            cmd_decompose(&file, &set, filter.as_deref(), format)
        }
        Cmd::Verify(args) => cmd_verify(args, format),
        Cmd::Nat { cmd } => cmd_nat(cmd, format),
        Cmd::Theorems => {
            for c in checks::registry() {
                println!("{:<28}  {}", c.id, c.statement);
            }
            Ok(0)
        }
    }
}

fn fmt_mask(m: SubsetMask) -> String {
    let elems: Vec<String> = m.iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", elems.join(", "))
}

fn fmt_verdict_line(label: &str, v: &SizeVerdict) -> String {
    match &v.witness {
        Some(w) => format!(
            "{label}: {}  witness={}",
            v.value,
            serde_json::to_string(w).expect("witness json")
        ),
        None => format!("{label}: {}", v.value),
    }
}

fn cmd_classify(
    file: &Path,
    set: &str,
    filter: Option<&str>,
    target: Option<&str>,
    format: Format,
) -> anyhow::Result<i32> {
    let s = load_semigroup(file)?;
    let n = s.order();
    let a = parse_set_literal(n, set)?;

    let syn = is_syndetic(&s, a);
    let thick = is_thick(&s, a);
    let pw = is_piecewise_syndetic(&s, a).map_err(|e| anyhow::anyhow!("{e}"))?;

    let mut relative = None;
    if let Some(v0_lit) = filter {
        let v0 = parse_set_literal(n, v0_lit)?;
        let w0 = match target {
            Some(t) => Some(parse_set_literal(n, t)?),
            None => None,
        };
        let f = FilterKernel::new(n, v0).map_err(|e| anyhow::anyhow!("--filter: {e}"))?;
        let g = match w0 {
            Some(w) => Some(FilterKernel::new(n, w).map_err(|e| anyhow::anyhow!("--target: {e}"))?),
            None => None,
        };
        let rc = RelativeContext::new(&s, f, g).map_err(|e| anyhow::anyhow!("{e}"))?;
        let rel_syn = rc.is_rel_syndetic(a).map_err(|e| anyhow::anyhow!("{e}"))?;
        let rel_thick = rc.is_rel_thick(a).map_err(|e| anyhow::anyhow!("{e}"))?;
        let rel_pw = rc.is_pw_rel_syndetic(a).map_err(|e| anyhow::anyhow!("{e}"))?;
        let idem = if rc.closure_is_subsemigroup() {
            Some(
                rc.is_pw_rel_syndetic_idem(a)
                    .map_err(|e| anyhow::anyhow!("{e}"))?,
            )
        } else {
            None
        };
        relative = Some((v0, rc.g().generator(), rel_syn, rel_thick, rel_pw, idem));
    }

    match format {
        Format::Json => {
            let rel_json = relative.as_ref().map(|(v0, w0, rs, rt, rp, idem)| {
                json!({
                    "filter_generator": v0,
                    "target_generator": w0,
                    "rel_syndetic": rs,
                    "rel_thick": rt,
                    "pw_rel_syndetic": rp,
                    "pw_rel_syndetic_idem": idem,
                })
            });
            let doc = json!({
                "file": file.display().to_string(),
                "order": n,
                "set": a,
                "syndetic": syn,
                "thick": thick,
                "piecewise_syndetic": pw,
                "relative": rel_json,
            });
            println!("{doc}");
        }
        Format::Text => {
            println!("semigroup: {} (order {n})", file.display());
            println!("set: {}", fmt_mask(a));
            println!("{}", fmt_verdict_line("syndetic", &syn));
            println!("{}", fmt_verdict_line("thick", &thick));
            println!("{}", fmt_verdict_line("piecewise syndetic", &pw));
            if let Some((v0, w0, rs, rt, rp, idem)) = &relative {
                println!("filter generator: {}", fmt_mask(*v0));
                println!("target generator: {}", fmt_mask(*w0));
                println!("{}", fmt_verdict_line("relatively syndetic", rs));
                println!("{}", fmt_verdict_line("relatively thick", rt));
                println!("{}", fmt_verdict_line("piecewise relatively syndetic", rp));
                if let Some(iv) = idem {
                    println!(
                        "{}",
                        fmt_verdict_line("piecewise relatively syndetic (idempotent route)", iv)
                    );
                }
            }
        }
    }
    Ok(0)
}

fn cmd_decompose(
    file: &Path,
    set: &str,
    filter: Option<&str>,
    format: Format,
) -> anyhow::Result<i32> {
    let s = load_semigroup(file)?;
    let n = s.order();
    let a = parse_set_literal(n, set)?;
    let v0 = match filter {
        Some(lit) => parse_set_literal(n, lit)?,
        None => s.full_mask(),
    };
    let f = FilterKernel::new(n, v0).map_err(|e| anyhow::anyhow!("--filter: {e}"))?;
    let rc = RelativeContext::new(&s, f, None).map_err(|e| anyhow::anyhow!("{e}"))?;
    let d = rc.decompose_pw(a).map_err(|e| anyhow::anyhow!("{e}"))?;

    // Re-verify every clause through the public deciders, so the printed
    // status is independent of the construction.
    let b_rel_syndetic = rc
        .is_rel_syndetic(d.syndetic_part)
        .map_err(|e| anyhow::anyhow!("{e}"))?
        .value;
    let c_thick = is_thick(&s, d.thick_part).value;
    let c_rel_thick = rc
        .is_rel_thick(d.thick_part)
        .map_err(|e| anyhow::anyhow!("{e}"))?
        .value;
    let meet_is_a = d.syndetic_part.intersection(d.thick_part) == a;
    let all = b_rel_syndetic && c_thick && c_rel_thick && meet_is_a;

    match format {
        Format::Json => {
            let doc = json!({
                "file": file.display().to_string(),
                "order": n,
                "set": a,
                "filter_generator": v0,
                "decomposition": d,
                "verified": {
                    "syndetic_part_rel_syndetic": b_rel_syndetic,
                    "thick_part_thick": c_thick,
                    "thick_part_rel_thick": c_rel_thick,
                    "parts_meet_in_set": meet_is_a,
                },
            });
            println!("{doc}");
        }
        Format::Text => {
            println!("semigroup: {} (order {n})", file.display());
            println!("set: {}", fmt_mask(a));
            println!("filter generator: {}", fmt_mask(v0));
            println!("B (syndetic part) = {}", fmt_mask(d.syndetic_part));
            println!("C (thick part) = {}", fmt_mask(d.thick_part));
            println!("e (idempotent) = {}", d.idempotent);
            println!("B relatively syndetic: {}", verified_str(b_rel_syndetic));
            println!("C thick: {}", verified_str(c_thick));
            println!("C relatively thick: {}", verified_str(c_rel_thick));
            println!("B ∩ C = A: {}", verified_str(meet_is_a));
        }
    }
    // A failed re-verification is a counterexample to the construction.
    Ok(if all { 0 } else { 1 })
}

fn verified_str(ok: bool) -> &'static str {
    if ok {
        "verified"
    } else {
        "FAILED"
    }
}

fn cmd_verify(args: VerifyArgs, format: Format) -> anyhow::Result<i32> {
    let spec = SweepSpec {
        orders: args.orders.0,
        max_exhaustive_order: args.max_exhaustive_order,
        random_samples: args.random_samples,
        seed: args.seed,
        theorems: args.theorems.0,
        stack_cases: args.stack_cases,
        ep_sets: args.ep_sets,
        factorial_bound: args.factorial_bound,
        factorial_shift: args.factorial_shift,
        factorial_translates: args.factorial_translates,
        semigroup_files: args
            .semigroup
            .iter()
            .map(|p| p.display().to_string())
            .collect(),
    };
    spec.validate().map_err(|e| anyhow::anyhow!(e))?;
    let started = Instant::now();
    let universe = build_universe(&spec)?;
    let report = run_sweep(&spec, &universe);
    print!("{}", report.render(format));
    // Timing is wall-clock noise; keep it away from the deterministic report.
    eprintln!(
        "swept {} case(s) in {:.2?}",
        report.cases(),
        started.elapsed()
    );
    Ok(if report.failures() > 0 { 1 } else { 0 })
}

fn cmd_nat(cmd: NatCmd, format: Format) -> anyhow::Result<i32> {
    match cmd {
        NatCmd::Classify(args) => {
            let e = args.build()?;
            let c = e.classify().map_err(|err| anyhow::anyhow!("{err}"))?;
            match format {
                Format::Json => {
                    println!("{}", json!({"set": e, "classification": c}));
                }
                Format::Text => {
                    println!("set: {}", serde_json::to_string(&e)?);
                    println!("syndetic: {}", c.syndetic);
                    println!("thick: {}", c.thick);
                    println!("piecewise syndetic: {}", c.piecewise_syndetic);
                    println!("window bound: {}", c.window_bound);
                    println!("tail longest absence: {}", c.tail_longest_absence);
                    println!("tail longest run: {}", c.tail_longest_run);
                }
            }
            Ok(0)
        }
        NatCmd::FindAp { set, len } => {
            let e = set.build()?;
            let (a, d) = e.find_ap(len).map_err(|err| anyhow::anyhow!("{err}"))?;
            let terms: Vec<usize> = (0..=len).map(|k| a + k * d).collect();
            match format {
                Format::Json => {
                    println!("{}", json!({"set": e, "len": len, "a": a, "d": d, "terms": terms}));
                }
                Format::Text => {
                    println!("a = {a}, d = {d}");
                    let rendered: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
                    println!("terms: {}", rendered.join(", "));
                }
            }
            Ok(0)
        }
        NatCmd::FactorialFalsify { bound, k, m } => {
            let w = factorial_example_window(bound).map_err(|e| anyhow::anyhow!("{e}"))?;
            let refuted = w
                .pws_window_falsify(k, m)
                .map_err(|e| anyhow::anyhow!("{e}"))?;
            match format {
                Format::Json => {
                    println!(
                        "{}",
                        json!({"N": bound, "k": k, "m": m, "members": w.len(), "refuted": refuted})
                    );
                }
                Format::Text => {
                    println!("refuted up to (k={k}, m={m}, N={bound}): {refuted}");
                }
            }
            Ok(0)
        }
    }
}
