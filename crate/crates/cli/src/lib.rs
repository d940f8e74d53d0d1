//! Sweep orchestration and reporting for the `syndetic` binary.
//!
//! The mathematics lives in `syndetic_core`; this crate turns it into a
//! reproducible report machine. A [`SweepSpec`] says what to enumerate,
//! [`build_universe`] materializes the semigroup instances once, the check
//! registry in [`checks`] supplies one runner per theorem identifier, and
//! [`run_sweep`] fans the runners out and renders a sorted report.
//!
//! Determinism contract: the report on stdout is a pure function of the spec
//! (including the seed). Anything wall-clock dependent goes to stderr, every
//! random draw comes from a ChaCha stream derived from `seed ^ hash(check)`,
//! and records are sorted before emission so worker scheduling cannot leak
//! into the output.

pub mod checks;

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use syndetic_core::{catalog_up_to, enumerate_semigroups, random_semigroup, Semigroup, SubsetMask};

/// Largest semigroup order the sweep driver accepts. Orders above the
/// exhaustive range are sampled; orders above this are refused outright
/// because the per-instance sweeps stop being desk-scale.
pub const MAX_SWEEP_ORDER: usize = 6;

/// Hard ceiling for exhaustive enumeration, mirrored from the core crate.
pub const MAX_EXHAUSTIVE_ORDER: usize = 4;

/// Counterexamples kept per (theorem, class) record; failures beyond this
/// are counted but not dumped.
pub const MAX_COUNTEREXAMPLES: usize = 5;

/// What a `verify` run should enumerate and check.
#[derive(Debug, Clone, Serialize)]
pub struct SweepSpec {
    /// Semigroup orders to cover, ascending, deduplicated.
    pub orders: Vec<usize>,
    /// Orders up to this are enumerated exhaustively (deduped catalog);
    /// larger ones are sampled. At most [`MAX_EXHAUSTIVE_ORDER`].
    pub max_exhaustive_order: usize,
    /// Random tables drawn per sampled order.
    pub random_samples: usize,
    /// Root seed for every random draw in the sweep.
    pub seed: u64,
    /// Resolved check identifiers to run, sorted.
    pub theorems: Vec<String>,
    /// Randomized cases per stack-algebra check.
    pub stack_cases: usize,
    /// Seeded eventually periodic sets per arithmetic check.
    pub ep_sets: usize,
    /// Window bound for the factorial refutation.
    pub factorial_bound: usize,
    /// Largest translate `h` used by the factorial refutation.
    pub factorial_shift: usize,
    /// Number of forward translates `x` used by the factorial refutation.
    pub factorial_translates: usize,
    /// Extra user-supplied Cayley tables, checked alongside the catalog.
    pub semigroup_files: Vec<String>,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            orders: vec![1, 2, 3, 4],
            max_exhaustive_order: 4,
            random_samples: 40,
            seed: 0x5EED_CA7A_106E,
            theorems: checks::all_ids(),
            stack_cases: 16_000,
            ep_sets: 200,
            factorial_bound: 100_000,
            factorial_shift: 10,
            factorial_translates: 100,
            semigroup_files: Vec::new(),
        }
    }
}

impl SweepSpec {
    /// Validate the bounds the CLI promises. Returns a usage-style error
    /// message; callers map it to exit code 2.
    pub fn validate(&self) -> Result<(), String> {
        if self.orders.is_empty() {
            return Err("at least one order is required".into());
        }
        for &o in &self.orders {
            if o == 0 || o > MAX_SWEEP_ORDER {
                return Err(format!(
                    "order {o} is outside the supported range 1..={MAX_SWEEP_ORDER}"
                ));
            }
        }
        if self.max_exhaustive_order == 0 || self.max_exhaustive_order > MAX_EXHAUSTIVE_ORDER {
            return Err(format!(
                "max exhaustive order must be in 1..={MAX_EXHAUSTIVE_ORDER}, got {}",
                self.max_exhaustive_order
            ));
        }
        if self.theorems.is_empty() {
            return Err("at least one theorem identifier is required".into());
        }
        for t in &self.theorems {
            if !checks::is_known(t) {
                return Err(format!(
                    "unknown theorem identifier `{t}`; run `syndetic theorems` for the list"
                ));
            }
        }
        if self.factorial_shift == 0 || self.factorial_translates == 0 {
            return Err("factorial shift and translate count must be at least 1".into());
        }
        if self.factorial_shift + self.factorial_translates >= self.factorial_bound {
            return Err(format!(
                "factorial window bound {} must exceed shift {} plus translates {}",
                self.factorial_bound, self.factorial_shift, self.factorial_translates
            ));
        }
        Ok(())
    }
}

/// One semigroup the sweep will exercise, tagged with its origin class.
#[derive(Debug, Clone)]
pub struct SemigroupInstance {
    pub semigroup: Semigroup,
    /// "catalog", "random", or "file".
    pub class: &'static str,
    /// Reproduction handle, e.g. `catalog/order3/17` or a file path.
    pub name: String,
}

/// Everything instance-shaped a sweep runs against, materialized up front so
/// input problems surface before any check starts.
#[derive(Debug, Clone, Default)]
pub struct Universe {
    pub instances: Vec<SemigroupInstance>,
}

impl Universe {
    /// Instances grouped by class, classes in fixed report order, empty
    /// classes omitted.
    pub fn by_class(&self) -> Vec<(&'static str, Vec<&SemigroupInstance>)> {
        let mut out = Vec::new();
        for class in ["catalog", "random", "file"] {
            let group: Vec<&SemigroupInstance> = self
                .instances
                .iter()
                .filter(|i| i.class == class)
                .collect();
            if !group.is_empty() {
                out.push((class, group));
            }
        }
        out
    }
}

/// Build the instance universe for a spec: exhaustive deduped catalogs for
/// small orders, seeded random tables above `max_exhaustive_order`, and any
/// user-supplied files (validated here, before any sweep runs).
pub fn build_universe(spec: &SweepSpec) -> anyhow::Result<Universe> {
    let mut orders = spec.orders.clone();
    orders.sort_unstable();
    orders.dedup();

    let mut instances = Vec::new();
    for &o in &orders {
        if o <= spec.max_exhaustive_order {
            for (i, s) in enumerate_semigroups(o, true)?.enumerate() {
                instances.push(SemigroupInstance {
                    semigroup: s,
                    class: "catalog",
                    name: format!("catalog/order{o}/{i}"),
                });
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(
                spec.seed ^ fnv1a(&format!("universe/order{o}")),
            );
            for i in 0..spec.random_samples {
                let s = random_semigroup(o, &mut rng)?;
                instances.push(SemigroupInstance {
                    semigroup: s,
                    class: "random",
                    name: format!("random/order{o}/{i}"),
                });
            }
        }
    }
    for path in &spec.semigroup_files {
        let s = load_semigroup(Path::new(path))?;
        if s.order() > MAX_SWEEP_ORDER {
            anyhow::bail!(
                "{path}: order {} exceeds the sweep limit {MAX_SWEEP_ORDER}",
                s.order()
            );
        }
        instances.push(SemigroupInstance {
            semigroup: s,
            class: "file",
            name: path.clone(),
        });
    }
    Ok(Universe { instances })
}

/// Load a Cayley table from disk: `.json` files use the JSON schema, anything
/// else the whitespace/line text format. Validation (range + associativity)
/// happens inside the core parsers.
pub fn load_semigroup(path: &Path) -> anyhow::Result<Semigroup> {
    let raw = fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
    let parsed = if path.extension().is_some_and(|e| e == "json") {
        Semigroup::from_json_str(&raw)
    } else {
        Semigroup::from_text_str(&raw)
    };
    parsed.map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))
}

/// 64-bit FNV-1a, used to give every check its own seed lane. Stable across
/// platforms and runs, which is all we need.
pub fn fnv1a(s: &str) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for b in s.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// splitmix64 finalizer for mixing an index into a seed lane.
pub fn mix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Per-check view of the sweep, handed to every runner.
pub struct Ctx<'a> {
    pub spec: &'a SweepSpec,
    pub universe: &'a Universe,
    pub check_id: &'static str,
}

impl Ctx<'_> {
    /// Deterministic RNG lane for `(check, salt, index)`. Independent of
    /// worker scheduling and of which other checks are selected.
    pub fn rng(&self, salt: &str, index: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(
            self.spec.seed ^ fnv1a(self.check_id) ^ fnv1a(salt) ^ mix(index),
        )
    }
}

/// Running pass/fail totals for one (theorem, class) cell.
#[derive(Debug, Default, Clone)]
pub struct Tally {
    pub cases: u64,
    pub failures: u64,
    pub counterexamples: Vec<Value>,
}

impl Tally {
    /// Record one case; on failure, lazily build the reproduction payload.
    pub fn case(&mut self, ok: bool, payload: impl FnOnce() -> Value) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.counterexamples.push(payload());
            }
        }
    }

    pub fn merge(&mut self, other: Tally) {
        self.cases += other.cases;
        self.failures += other.failures;
        for c in other.counterexamples {
            if self.counterexamples.len() >= MAX_COUNTEREXAMPLES {
                break;
            }
            self.counterexamples.push(c);
        }
    }
}

/// One report line: totals for a theorem over one instance class.
#[derive(Debug, Clone, Serialize)]
pub struct ClassRecord {
    pub theorem: String,
    pub class: String,
    pub cases: u64,
    pub failures: u64,
    pub counterexamples: Vec<Value>,
}

impl ClassRecord {
    pub fn from_tally(theorem: &str, class: &str, t: Tally) -> Self {
        ClassRecord {
            theorem: theorem.to_string(),
            class: class.to_string(),
            cases: t.cases,
            failures: t.failures,
            counterexamples: t.counterexamples,
        }
    }
}

/// A finished sweep: header echoing the spec, followed by sorted records.
#[derive(Debug, Clone)]
pub struct Report {
    pub header: Value,
    pub records: Vec<ClassRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl Report {
    pub fn failures(&self) -> u64 {
        self.records.iter().map(|r| r.failures).sum()
    }

    pub fn cases(&self) -> u64 {
        self.records.iter().map(|r| r.cases).sum()
    }

    /// Render to a string; stdout gets exactly this, so it must be a pure
    /// function of spec + seed.
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut out = String::new();
                let _ = writeln!(out, "{}", self.header);
                for r in &self.records {
                    let _ = writeln!(out, "{}", serde_json::to_string(r).expect("record json"));
                }
                out
            }
            Format::Text => {
                let mut out = String::new();
                let _ = writeln!(
                    out,
                    "syndetic {} verification sweep",
                    env!("CARGO_PKG_VERSION")
                );
                let _ = writeln!(out, "spec: {}", self.header);
                let _ = writeln!(out);
                let width = self
                    .records
                    .iter()
                    .map(|r| r.theorem.len())
                    .max()
                    .unwrap_or(7)
                    .max(7);
                let _ = writeln!(
                    out,
                    "{:<width$}  {:<10}  {:>12}  {:>8}",
                    "theorem", "class", "cases", "failures"
                );
                for r in &self.records {
                    let _ = writeln!(
                        out,
                        "{:<width$}  {:<10}  {:>12}  {:>8}",
                        r.theorem, r.class, r.cases, r.failures
                    );
                }
                let _ = writeln!(out);
                let _ = writeln!(
                    out,
                    "total: {} record(s), {} case(s), {} failure(s)",
                    self.records.len(),
                    self.cases(),
                    self.failures()
                );
                for r in &self.records {
                    for c in &r.counterexamples {
                        let _ = writeln!(out, "counterexample {}/{}: {}", r.theorem, r.class, c);
                    }
                }
                out
            }
        }
    }
}

/// Run every selected check against the universe. Checks fan out over the
/// rayon pool; each one is internally deterministic, and the final record
/// list is sorted by (theorem, class), so concurrency never reaches stdout.
pub fn run_sweep(spec: &SweepSpec, universe: &Universe) -> Report {
    let selected: Vec<&checks::Check> = checks::registry()
        .iter()
        .filter(|c| spec.theorems.iter().any(|t| t == c.id))
        .collect();
    let mut records: Vec<ClassRecord> = selected
        .par_iter()
        .flat_map_iter(|check| {
            let ctx = Ctx {
                spec,
                universe,
                check_id: check.id,
            };
            (check.run)(&ctx)
        })
        .collect();
    records.sort_by(|a, b| (&a.theorem, &a.class).cmp(&(&b.theorem, &b.class)));
    let header = json!({
        "tool": "syndetic",
        "version": env!("CARGO_PKG_VERSION"),
        "seed": spec.seed,
        "orders": spec.orders,
        "max_exhaustive_order": spec.max_exhaustive_order,
        "random_samples": spec.random_samples,
        "theorems": spec.theorems,
        "instances": universe.instances.len(),
    });
    Report { header, records }
}

/// Parse a set literal like `"0,4"` (or `""` for the empty set) into a mask
/// over `0..width`.
pub fn parse_set_literal(width: usize, literal: &str) -> anyhow::Result<SubsetMask> {
    let trimmed = literal.trim();
    if trimmed.is_empty() {
        return Ok(SubsetMask::empty(width));
    }
    let mut elems = Vec::new();
    for part in trimmed.split(',') {
        let part = part.trim();
        let e: usize = part
            .parse()
            .map_err(|_| anyhow::anyhow!("bad set element `{part}` in `{literal}`"))?;
        elems.push(e);
    }
    SubsetMask::from_elems(width, elems)
        .map_err(|e| anyhow::anyhow!("set literal `{literal}`: {e}"))
}

/// Parse a comma-separated list of natural numbers (`"0,1"`).
pub fn parse_usize_list(literal: &str) -> anyhow::Result<Vec<usize>> {
    let trimmed = literal.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| anyhow::anyhow!("bad number `{p}` in `{literal}`"))
        })
        .collect()
}

/// The default catalog used by documentation examples; handy for tests.
pub fn default_catalog() -> Vec<Semigroup> {
    catalog_up_to(MAX_EXHAUSTIVE_ORDER).expect("catalog enumeration")
}

/// Draw a uniformly random nonempty subset of `0..n`.
pub fn random_nonempty_mask<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SubsetMask {
    let full = ((1u64 << n) - 1) as u32;
    loop {
        let bits = rng.gen::<u32>() & full;
        if bits != 0 {
            return SubsetMask::from_bits(n, bits);
        }
    }
}

/// Draw any subset of `0..n`, empty allowed.
pub fn random_mask<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SubsetMask {
    let full = ((1u64 << n) - 1) as u32;
    SubsetMask::from_bits(n, rng.gen::<u32>() & full)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_literals_parse_and_validate() {
        assert!(parse_set_literal(4, "").unwrap().is_empty());
        let m = parse_set_literal(4, " 0, 2 ").unwrap();
        assert_eq!(m.to_vec(), vec![0, 2]);
        assert!(parse_set_literal(4, "0,9").is_err());
        assert!(parse_set_literal(4, "zero").is_err());
        assert_eq!(parse_usize_list("3, 1").unwrap(), vec![3, 1]);
        assert!(parse_usize_list("1,x").is_err());
    }

    #[test]
    fn tally_caps_counterexamples_and_merges() {
        let mut t = Tally::default();
        for i in 0..10 {
            t.case(false, || serde_json::json!({ "i": i }));
        }
        t.case(true, || unreachable!("payloads are lazy on passes"));
        assert_eq!(t.cases, 11);
        assert_eq!(t.failures, 10);
        assert_eq!(t.counterexamples.len(), MAX_COUNTEREXAMPLES);

        let mut other = Tally::default();
        other.case(false, || serde_json::json!({"more": true}));
        t.merge(other);
        assert_eq!(t.cases, 12);
        assert_eq!(t.failures, 11);
        assert_eq!(t.counterexamples.len(), MAX_COUNTEREXAMPLES);
    }

    #[test]
    fn spec_validation_rejects_bad_input() {
        assert!(SweepSpec::default().validate().is_ok());
        let broken = [
            SweepSpec { orders: vec![], ..SweepSpec::default() },
            SweepSpec { orders: vec![7], ..SweepSpec::default() },
            SweepSpec { max_exhaustive_order: 5, ..SweepSpec::default() },
            SweepSpec { theorems: vec!["nope".into()], ..SweepSpec::default() },
            SweepSpec { theorems: vec![], ..SweepSpec::default() },
            SweepSpec { factorial_shift: 0, ..SweepSpec::default() },
            SweepSpec { factorial_bound: 50, ..SweepSpec::default() },
        ];
        for s in broken {
            assert!(s.validate().is_err(), "{s:?}");
        }
    }

    #[test]
    fn universe_classes_follow_the_exhaustive_boundary() {
        let spec = SweepSpec {
            orders: vec![1, 2, 5],
            max_exhaustive_order: 2,
            random_samples: 3,
            theorems: vec!["kernel-structure".into()],
            ..SweepSpec::default()
        };
        let u = build_universe(&spec).unwrap();
        let catalog = u.instances.iter().filter(|i| i.class == "catalog").count();
        let random = u.instances.iter().filter(|i| i.class == "random").count();
        assert_eq!(catalog, 1 + 5);
        assert_eq!(random, 3);
        let by = u.by_class();
        assert_eq!(by[0].0, "catalog");
        assert_eq!(by[1].0, "random");
    }

    #[test]
    fn rng_lanes_are_stable_and_independent() {
        use rand::RngCore;
        let spec = SweepSpec::default();
        let universe = Universe { instances: vec![] };
        let ctx = Ctx { spec: &spec, universe: &universe, check_id: "size-duality" };
        let a1 = ctx.rng("salt", 0).next_u64();
        let a2 = ctx.rng("salt", 0).next_u64();
        let b = ctx.rng("salt", 1).next_u64();
        let c = ctx.rng("other", 0).next_u64();
        assert_eq!(a1, a2);
        assert_ne!(a1, b);
        assert_ne!(a1, c);
    }

    #[test]
    fn reports_render_both_formats() {
        let record = ClassRecord {
            theorem: "size-duality".into(),
            class: "catalog".into(),
            cases: 3,
            failures: 1,
            counterexamples: vec![serde_json::json!({"a": [0]})],
        };
        let report = Report {
            header: serde_json::json!({"tool": "syndetic"}),
            records: vec![record],
        };
        let json = report.render(Format::Json);
        let mut lines = json.lines();
        assert!(lines.next().unwrap().contains("\"tool\""));
        let rec: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
        assert_eq!(rec["failures"], 1);

        let text = report.render(Format::Text);
        assert!(text.contains("verification sweep"));
        assert!(text.contains("size-duality"));
        assert!(text.contains("counterexample size-duality/catalog"));
        assert_eq!(report.failures(), 1);
        assert_eq!(report.cases(), 3);
    }
}
