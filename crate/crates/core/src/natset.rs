//! Size notions on (ℕ, +) for two executable set families.
//!
//! `EventuallyPeriodicSet` describes a subset of ℕ = {1, 2, …} by a finite
//! prefix and a repeating residue pattern; syndetic / thick / piecewise
//! syndetic all have closed forms in terms of the residue set, and
//! `classify` cross-checks each closed form against an independent scan of
//! a finite window, refusing to answer if the two disagree.
//!
//! `WindowSet` is a bounded bitmap view of an arbitrary subset of ℕ. It can
//! never *prove* a set piecewise syndetic, but it can refute specific
//! shift-and-run parameters: `pws_window_falsify(k, m)` reports that no
//! union of translates `⋃_{i≤k} (A − i)` contains `m + 1` consecutive
//! integers inside the window. Checking translate sets `{0, …, k}` loses no
//! generality, because any finite translate family with maximum `k` is
//! contained in that interval's union.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A subset of ℕ = {1, 2, …} that is exactly periodic from `threshold` on:
/// `n ∈ A ⟺ n ∈ prefix` for `n < threshold`, and `n mod period ∈ residues`
/// otherwise.
/// The wire format uses the short field names `p`/`T`/`R`/`prefix`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawEventuallyPeriodic")]
pub struct EventuallyPeriodicSet {
    #[serde(rename = "p")]
    period: usize,
    #[serde(rename = "T")]
    threshold: usize,
    #[serde(rename = "R")]
    residues: Vec<usize>,
    prefix: Vec<usize>,
}

/// Unvalidated mirror; deserialization funnels through `new` so that raw
/// JSON cannot smuggle in out-of-range residues or an unsorted prefix.
#[derive(Deserialize)]
struct RawEventuallyPeriodic {
    #[serde(rename = "p")]
    period: usize,
    #[serde(default, rename = "T")]
    threshold: usize,
    #[serde(default, rename = "R")]
    residues: Vec<usize>,
    #[serde(default)]
    prefix: Vec<usize>,
}

impl TryFrom<RawEventuallyPeriodic> for EventuallyPeriodicSet {
    type Error = Error;

    fn try_from(raw: RawEventuallyPeriodic) -> Result<Self> {
        EventuallyPeriodicSet::new(raw.period, raw.threshold, raw.residues, raw.prefix)
    }
}

/// Verdicts for one eventually periodic set, with the window evidence the
/// closed forms were checked against.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpClassification {
    pub syndetic: bool,
    pub thick: bool,
    pub piecewise_syndetic: bool,
    /// Upper end of the scanned window.
    pub window_bound: usize,
    /// Longest run of consecutive non-members in the periodic tail.
    pub tail_longest_absence: usize,
    /// Longest run of consecutive members in the periodic tail.
    pub tail_longest_run: usize,
}

impl EventuallyPeriodicSet {
    pub fn new(
        period: usize,
        threshold: usize,
        residues: impl IntoIterator<Item = usize>,
        prefix: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        if period == 0 {
            return Err(Error::InvalidConstruction(
                "period must be at least 1".into(),
            ));
        }
        let mut residues: Vec<usize> = residues.into_iter().collect();
        residues.sort_unstable();
        residues.dedup();
        if let Some(&r) = residues.iter().find(|&&r| r >= period) {
            return Err(Error::InvalidConstruction(format!(
                "residue {r} is outside [0, {period})"
            )));
        }
        let mut prefix: Vec<usize> = prefix.into_iter().collect();
        prefix.sort_unstable();
        prefix.dedup();
        if let Some(&m) = prefix.iter().find(|&&m| m == 0 || m >= threshold) {
            return Err(Error::InvalidConstruction(format!(
                "prefix element {m} is outside [1, {threshold})"
            )));
        }
        Ok(EventuallyPeriodicSet {
            period,
            threshold,
            residues,
            prefix,
        })
    }

    /// Purely periodic set `{n ≥ 1 : n mod period ∈ residues}`.
    pub fn periodic(period: usize, residues: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::new(period, 0, residues, [])
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    pub fn residues(&self) -> &[usize] {
        &self.residues
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    pub fn contains(&self, n: usize) -> bool {
        if n == 0 {
            return false;
        }
        if n < self.threshold {
            self.prefix.binary_search(&n).is_ok()
        } else {
            self.residues.binary_search(&(n % self.period)).is_ok()
        }
    }

    /// Complement within ℕ; same period and threshold.
    pub fn complement(&self) -> Self {
        let residues = (0..self.period)
            .filter(|r| self.residues.binary_search(r).is_err())
            .collect();
        let prefix = (1..self.threshold.max(1))
            .filter(|m| self.prefix.binary_search(m).is_err())
            .collect();
        EventuallyPeriodicSet {
            period: self.period,
            threshold: self.threshold,
            residues,
            prefix,
        }
    }

    /// The window used by `classify`: the periodic tail must remain long
    /// after the threshold, so the bound grows past `threshold` rather than
    /// taking a maximum with it (a maximum degenerates once the threshold
    /// dominates, leaving no tail to scan).
    pub fn scan_bound(&self) -> usize {
        self.threshold + 10 * self.period * self.period
    }

    pub fn window(&self, bound: usize) -> Result<WindowSet> {
        WindowSet::from_fn(bound, |n| self.contains(n))
    }

    /// Decide all three notions by residue-set closed forms, then re-derive
    /// each verdict from the window bitmap alone and demand agreement.
    ///
    /// * syndetic ⟺ `residues ≠ ∅` (gaps never exceed `period`);
    /// * thick ⟺ `residues` is all of `[0, period)` (a missing residue
    ///   caps every run below `period`);
    /// * piecewise syndetic ⟺ syndetic: translating an eventually periodic
    ///   set by a bounded amount cannot manufacture long runs its residues
    ///   do not already provide.
    pub fn classify(&self) -> Result<EpClassification> {
        let syndetic = !self.residues.is_empty();
        let thick = self.residues.len() == self.period;
        let piecewise = syndetic;

        let bound = self.scan_bound();
        let window = self.window(bound)?;
        let tail_lo = self.threshold.max(1);
        let absence = window.longest_absence_in(tail_lo, bound)?;
        let run = window.longest_run_in(tail_lo, bound)?;

        let scan_syndetic = absence < self.period;
        let scan_thick = run >= self.period;
        // independent route for the piecewise verdict: translate by up to
        // `period` and look for a run of length `period` in the union
        let union = window.shifted_union(self.period)?;
        let scan_piecewise =
            union.longest_run_in(tail_lo, bound - self.period)? >= self.period;

        if syndetic != scan_syndetic || thick != scan_thick || piecewise != scan_piecewise {
            return Err(Error::InternalInvariantViolation(format!(
                "closed forms and window scans disagree: closed ({syndetic}, {thick}, {piecewise}) vs scan ({scan_syndetic}, {scan_thick}, {scan_piecewise}) for period {} residues {:?}",
                self.period, self.residues
            )));
        }
        Ok(EpClassification {
            syndetic,
            thick,
            piecewise_syndetic: piecewise,
            window_bound: bound,
            tail_longest_absence: absence,
            tail_longest_run: run,
        })
    }

    /// An arithmetic progression `a, a+d, …, a+len·d` (that is, `len + 1`
    /// terms) inside the set: `a` is the least member of the periodic tail
    /// and `d` the period. Every term is re-checked through `contains`
    /// before returning. Errors unless the set is piecewise syndetic.
    pub fn find_ap(&self, len: usize) -> Result<(usize, usize)> {
        if self.residues.is_empty() {
            return Err(Error::PreconditionViolation(
                "the set is not piecewise syndetic: its periodic tail is empty".into(),
            ));
        }
        let lo = self.threshold.max(1);
        let a = (lo..lo + self.period)
            .find(|&n| self.contains(n))
            .expect("a nonempty residue set meets every period-length window");
        for k in 0..=len {
            let term = a + k * self.period;
            if !self.contains(term) {
                return Err(Error::InternalInvariantViolation(format!(
                    "progression term {term} = {a} + {k}·{} fell outside the set",
                    self.period
                )));
            }
        }
        Ok((a, self.period))
    }
}

/// Bounded bitmap view of a subset of ℕ; positions run 1 through `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowSet {
    bound: usize,
    words: Vec<u64>,
}

impl WindowSet {
    pub fn new(bound: usize) -> Result<Self> {
        if bound == 0 {
            return Err(Error::InvalidConstruction(
                "window bound must be at least 1".into(),
            ));
        }
        Ok(WindowSet {
            bound,
            words: vec![0; bound / 64 + 1],
        })
    }

    pub fn from_fn(bound: usize, f: impl Fn(usize) -> bool) -> Result<Self> {
        let mut w = WindowSet::new(bound)?;
        for n in 1..=bound {
            if f(n) {
                w.insert(n);
            }
        }
        Ok(w)
    }

    pub fn from_members(bound: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut w = WindowSet::new(bound)?;
        for n in members {
            if n == 0 || n > bound {
                return Err(Error::InvalidConstruction(format!(
                    "member {n} is outside [1, {bound}]"
                )));
            }
            w.insert(n);
        }
        Ok(w)
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn insert(&mut self, n: usize) {
        debug_assert!(n >= 1 && n <= self.bound);
        self.words[n / 64] |= 1 << (n % 64);
    }

    pub fn contains(&self, n: usize) -> bool {
        n >= 1 && n <= self.bound && self.words[n / 64] >> (n % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn members(&self) -> Vec<usize> {
        (1..=self.bound).filter(|&n| self.contains(n)).collect()
    }

    /// `{x : x + i ∈ self for some 0 ≤ i ≤ k}` — the union of the first
    /// `k + 1` translates, reliable for `x ≤ bound − k`.
    pub fn shifted_union(&self, k: usize) -> Result<WindowSet> {
        if k >= self.bound {
            return Err(Error::BoundExceeded {
                what: "translate distance inside window",
                requested: k,
                limit: self.bound,
            });
        }
        let mut acc = self.clone();
        for i in 1..=k {
            acc.or_assign_shifted(self, i);
        }
        Ok(acc)
    }

    /// `{x : x + j ∈ self for all 0 ≤ j ≤ m}` — starts of runs of `m + 1`
    /// consecutive members, reliable for `x ≤ bound − m`.
    pub fn run_core(&self, m: usize) -> Result<WindowSet> {
        if m >= self.bound {
            return Err(Error::BoundExceeded {
                what: "run length inside window",
                requested: m,
                limit: self.bound,
            });
        }
        let mut acc = self.clone();
        for j in 1..=m {
            acc.and_assign_shifted(self, j);
        }
        Ok(acc)
    }

    fn or_assign_shifted(&mut self, other: &WindowSet, shift: usize) {
        let (whole, rem) = (shift / 64, shift % 64);
        for w in 0..self.words.len() {
            self.words[w] |= shifted_word(&other.words, w, whole, rem);
        }
    }

    fn and_assign_shifted(&mut self, other: &WindowSet, shift: usize) {
        let (whole, rem) = (shift / 64, shift % 64);
        for w in 0..self.words.len() {
            self.words[w] &= shifted_word(&other.words, w, whole, rem);
        }
    }

    /// Longest run of consecutive members within `[lo, hi]`.
    pub fn longest_run_in(&self, lo: usize, hi: usize) -> Result<usize> {
        self.check_range(lo, hi)?;
        let (mut best, mut cur) = (0usize, 0usize);
        for n in lo..=hi {
            if self.contains(n) {
                cur += 1;
                best = best.max(cur);
            } else {
                cur = 0;
            }
        }
        Ok(best)
    }

    /// Longest run of consecutive non-members within `[lo, hi]`.
    pub fn longest_absence_in(&self, lo: usize, hi: usize) -> Result<usize> {
        self.check_range(lo, hi)?;
        let (mut best, mut cur) = (0usize, 0usize);
        for n in lo..=hi {
            if self.contains(n) {
                cur = 0;
            } else {
                cur += 1;
                best = best.max(cur);
            }
        }
        Ok(best)
    }

    fn check_range(&self, lo: usize, hi: usize) -> Result<()> {
        if lo == 0 || hi > self.bound || lo > hi {
            return Err(Error::InvalidConstruction(format!(
                "scan range [{lo}, {hi}] is not inside [1, {}]",
                self.bound
            )));
        }
        Ok(())
    }

    /// Refute piecewise syndeticity at specific parameters: return `true`
    /// when for **every** translate distance `k ≤ max_shift`, the union
    /// `⋃_{i≤k} (A − i)` contains no `run_len + 1` consecutive integers
    /// whose witnesses all land inside the window. `false` means the window
    /// exhibits such a run for some `k` — no refutation at these parameters.
    pub fn pws_window_falsify(&self, max_shift: usize, run_len: usize) -> Result<bool> {
        if max_shift + run_len >= self.bound {
            return Err(Error::BoundExceeded {
                what: "shift plus run length inside window",
                requested: max_shift + run_len,
                limit: self.bound,
            });
        }
        for k in 0..=max_shift {
            let union = self.shifted_union(k)?;
            let starts = union.run_core(run_len)?;
            // only starts with every witness x + j + i ≤ bound count
            let reliable_hi = self.bound - run_len - k;
            if (1..=reliable_hi).any(|x| starts.contains(x)) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn shifted_word(words: &[u64], w: usize, whole: usize, rem: usize) -> u64 {
    let lo = words.get(w + whole).copied().unwrap_or(0);
    if rem == 0 {
        lo
    } else {
        let hi = words.get(w + whole + 1).copied().unwrap_or(0);
        lo >> rem | hi << (64 - rem)
    }
}

/// The block set `⋃_{n≥1} {n! + k·n : 0 ≤ k ≤ n}`, truncated to a window.
/// It contains arbitrarily long arithmetic progressions (block `n` is one
/// of length `n`) yet is not piecewise syndetic; the window falsifier
/// supplies finite evidence for specific parameters.
pub fn factorial_example_window(bound: usize) -> Result<WindowSet> {
    let mut w = WindowSet::new(bound)?;
    let mut fact: u128 = 1;
    let mut n: u128 = 1;
    while fact <= bound as u128 {
        fact *= n;
        for k in 0..=n {
            let v = fact + k * n;
            if v <= bound as u128 {
                w.insert(v as usize);
            }
        }
        n += 1;
    }
    Ok(w)
}
