//! Finite semigroups as validated Cayley tables.
//!
//! Elements are the indices `0..n`. `table[a][b]` is the product `a*b`, and
//! association is checked once at construction; everything downstream may
//! assume it. `h⁻¹A` here always means the preimage under left
//! multiplication by `h`, i.e. `{x : h*x ∈ A}`.

use crate::error::{Error, Result};
use crate::mask::{SubsetMask, MAX_WIDTH};
use serde::{Deserialize, Serialize};
use std::fmt;

pub const MAX_ORDER: usize = MAX_WIDTH;

/// Ground-set sizes up to which `kernel` certifies minimality of each left
/// ideal by scanning every proper subset (beyond this, the principal-ideal
/// characterization alone is used).
pub const SUBSET_SCAN_BOUND: usize = 8;

/// Default cap for the exhaustive subsemigroup listing.
pub const SUBSEMIGROUP_BOUND: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Semigroup {
    order: usize,
    /// Row-major Cayley table: `table[a * order + b] = a*b`.
    table: Vec<u8>,
    labels: Option<Vec<String>>,
}

/// Structure report for the minimal (two-sided) ideal and its idempotents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    /// All minimal left ideals, sorted by least member.
    pub minimal_left_ideals: Vec<SubsetMask>,
    /// Union of the minimal left ideals; equals the least two-sided ideal.
    pub kernel: SubsetMask,
    /// All idempotents of the semigroup.
    pub idempotents: SubsetMask,
    /// Idempotents lying in the kernel; nonempty in every finite semigroup.
    pub minimal_idempotents: SubsetMask,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedKind {
    /// `(Z_n, +)`
    CyclicAdd,
    /// `(Z_n, *)`
    CyclicMul,
    /// `x*y = x`
    LeftZero,
    /// `x*y = y`
    RightZero,
}

impl Semigroup {
    /// Validate a Cayley table: every entry in range, associativity holds.
    /// The first failing triple in lexicographic `(a,b,c)` order is reported.
    pub fn validate(table: Vec<Vec<usize>>) -> Result<Self> {
        Self::validate_with_labels(table, None)
    }

    pub fn validate_with_labels(
        table: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidConstruction(
                "a semigroup needs at least one element".into(),
            ));
        }
        if n > MAX_ORDER {
            return Err(Error::BoundExceeded {
                what: "semigroup order",
                requested: n,
                limit: MAX_ORDER,
            });
        }
        let mut flat = vec![0u8; n * n];
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidConstruction(format!(
                    "row {a} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (b, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::OutOfRangeEntry {
                        row: a,
                        col: b,
                        value: v,
                        order: n,
                    });
                }
                flat[a * n + b] = v as u8;
            }
        }
        if let Some(ls) = &labels {
            if ls.len() != n {
                return Err(Error::InvalidConstruction(format!(
                    "{} labels for {n} elements",
                    ls.len()
                )));
            }
        }
        let s = Semigroup {
            order: n,
            table: flat,
            labels,
        };
        s.check_associativity()?;
        Ok(s)
    }

    pub(crate) fn from_flat_unchecked(order: usize, table: Vec<u8>) -> Self {
        debug_assert_eq!(table.len(), order * order);
        Semigroup {
            order,
            table,
            labels: None,
        }
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    let left = self.mul(ab, c);
                    let right = self.mul(a, self.mul(b, c));
                    if left != right {
                        return Err(Error::AssociativityFailure {
                            a,
                            b,
                            c,
                            left,
                            right,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn make_named(kind: NamedKind, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidConstruction(
                "named semigroups need n >= 1".into(),
            ));
        }
        if n > MAX_ORDER {
            return Err(Error::BoundExceeded {
                what: "semigroup order",
                requested: n,
                limit: MAX_ORDER,
            });
        }
        let f: fn(usize, usize, usize) -> usize = match kind {
            NamedKind::CyclicAdd => |a, b, n| (a + b) % n,
            NamedKind::CyclicMul => |a, b, n| (a * b) % n,
            NamedKind::LeftZero => |a, _b, _n| a,
            NamedKind::RightZero => |_a, b, _n| b,
        };
        let mut table = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = f(a, b, n) as u8;
            }
        }
        let s = Semigroup {
            order: n,
            table,
            labels: None,
        };
        debug_assert!(s.check_associativity().is_ok());
        Ok(s)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn empty_mask(&self) -> SubsetMask {
        SubsetMask::empty(self.order)
    }

    pub fn full_mask(&self) -> SubsetMask {
        SubsetMask::full(self.order)
    }

    /// `{x : h*x ∈ a}` — preimage of `a` under left multiplication by `h`.
    pub fn preimage_translate(&self, h: usize, a: SubsetMask) -> SubsetMask {
        debug_assert_eq!(a.width(), self.order);
        let mut out = self.empty_mask();
        for x in 0..self.order {
            if a.contains(self.mul(h, x)) {
                out.insert(x);
            }
        }
        out
    }

    /// `{x*y : x ∈ a, y ∈ b}`
    pub fn product_set(&self, a: SubsetMask, b: SubsetMask) -> SubsetMask {
        let mut out = self.empty_mask();
        for x in a.iter() {
            for y in b.iter() {
                out.insert(self.mul(x, y));
            }
        }
        out
    }

    /// Left ideal: nonempty and `S*L ⊆ L`.
    pub fn is_left_ideal(&self, l: SubsetMask) -> bool {
        !l.is_empty()
            && l.iter()
                .all(|a| (0..self.order).all(|s| l.contains(self.mul(s, a))))
    }

    /// Right ideal: nonempty and `L*S ⊆ L`.
    pub fn is_right_ideal(&self, l: SubsetMask) -> bool {
        !l.is_empty()
            && l.iter()
                .all(|a| (0..self.order).all(|s| l.contains(self.mul(a, s))))
    }

    pub fn is_ideal(&self, l: SubsetMask) -> bool {
        self.is_left_ideal(l) && self.is_right_ideal(l)
    }

    /// Principal left ideal `{a} ∪ S*a`.
    pub fn principal_left_ideal(&self, a: usize) -> SubsetMask {
        let mut out = SubsetMask::singleton(self.order, a);
        for s in 0..self.order {
            out.insert(self.mul(s, a));
        }
        out
    }

    /// All minimal left ideals, sorted by least member. `S` itself counts
    /// when it has no proper left ideal (e.g. any group).
    pub fn minimal_left_ideals(&self) -> Vec<SubsetMask> {
        let mut principals: Vec<SubsetMask> =
            (0..self.order).map(|a| self.principal_left_ideal(a)).collect();
        principals.sort();
        principals.dedup();
        let mut minimal: Vec<SubsetMask> = principals
            .iter()
            .copied()
            .filter(|&l| {
                principals
                    .iter()
                    .all(|&m| !(m.is_subset(l) && m != l))
            })
            .collect();
        minimal.sort_by_key(|l| (l.min_elem(), l.bits()));
        minimal
    }

    pub fn idempotents(&self) -> SubsetMask {
        let mut out = self.empty_mask();
        for x in 0..self.order {
            if self.mul(x, x) == x {
                out.insert(x);
            }
        }
        out
    }

    /// Minimal-ideal structure. Every clause of the report is re-verified
    /// before returning; failures surface as `InternalInvariantViolation`
    /// since they would mean a broken implementation, not a bad input.
    pub fn kernel(&self) -> Result<KernelReport> {
        let minimal_left_ideals = self.minimal_left_ideals();
        let iiv = |msg: String| Error::InternalInvariantViolation(msg);

        for &l in &minimal_left_ideals {
            if !self.is_left_ideal(l) {
                return Err(iiv(format!("{l} reported minimal but is not a left ideal")));
            }
            // A minimal left ideal is the principal ideal of each of its members.
            for a in l.iter() {
                if self.principal_left_ideal(a) != l {
                    return Err(iiv(format!(
                        "minimal left ideal {l} is not principal at {a}"
                    )));
                }
            }
            // At small orders, certify minimality against every proper subset.
            if self.order <= SUBSET_SCAN_BOUND {
                for sub in l.subsets() {
                    if !sub.is_empty() && sub != l && self.is_left_ideal(sub) {
                        return Err(iiv(format!(
                            "{sub} is a proper sub-left-ideal of reported-minimal {l}"
                        )));
                    }
                }
            }
        }

        let mut kernel = self.empty_mask();
        for &l in &minimal_left_ideals {
            kernel = kernel.union(l);
        }
        if !self.is_ideal(kernel) {
            return Err(iiv(format!(
                "union of minimal left ideals {kernel} is not two-sided"
            )));
        }

        let idempotents = self.idempotents();
        let minimal_idempotents = idempotents.intersection(kernel);
        if minimal_idempotents.is_empty() {
            return Err(iiv("kernel contains no idempotent".into()));
        }
        for &l in &minimal_left_ideals {
            if l.intersection(idempotents).is_empty() {
                return Err(iiv(format!("minimal left ideal {l} has no idempotent")));
            }
        }

        Ok(KernelReport {
            minimal_left_ideals,
            kernel,
            idempotents,
            minimal_idempotents,
        })
    }

    /// All nonempty product-closed subsets, ascending by mask value.
    pub fn subsemigroups(&self) -> Result<Vec<SubsetMask>> {
        self.subsemigroups_bounded(SUBSEMIGROUP_BOUND)
    }

    pub fn subsemigroups_bounded(&self, bound: usize) -> Result<Vec<SubsetMask>> {
        if self.order > bound {
            return Err(Error::BoundExceeded {
                what: "subsemigroup enumeration order",
                requested: self.order,
                limit: bound,
            });
        }
        let mut out = Vec::new();
        for bits in 1u32..(1u32 << self.order) {
            let v = SubsetMask::from_bits(self.order, bits);
            if self.is_closed(v) {
                out.push(v);
            }
        }
        Ok(out)
    }

    pub fn is_closed(&self, v: SubsetMask) -> bool {
        v.iter()
            .all(|a| v.iter().all(|b| v.contains(self.mul(a, b))))
    }

    /// Restrict to a product-closed subset. Returns the restricted semigroup
    /// together with the map from its indices back to elements of `self`.
    pub fn restrict(&self, v: SubsetMask) -> Result<(Semigroup, Vec<usize>)> {
        if v.is_empty() {
            return Err(Error::HypothesisViolation(
                "cannot restrict to the empty set".into(),
            ));
        }
        if !self.is_closed(v) {
            return Err(Error::HypothesisViolation(format!(
                "{v} is not closed under the product"
            )));
        }
        let elems: Vec<usize> = v.iter().collect();
        let k = elems.len();
        let index_of = |e: usize| elems.iter().position(|&x| x == e).unwrap();
        let mut table = vec![0u8; k * k];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                table[i * k + j] = index_of(self.mul(a, b)) as u8;
            }
        }
        let sub = Semigroup {
            order: k,
            table,
            labels: None,
        };
        debug_assert!(sub.check_associativity().is_ok());
        Ok((sub, elems))
    }

    // --- on-disk formats -------------------------------------------------

    /// JSON: `{"n": 3, "table": [[..], ..], "labels": [..]?}`
    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: CayleyJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("cayley json: {e}")))?;
        if raw.table.len() != raw.n {
            return Err(Error::Parse(format!(
                "cayley json: n = {} but table has {} rows",
                raw.n,
                raw.table.len()
            )));
        }
        Self::validate_with_labels(raw.table, raw.labels)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&CayleyJson {
            n: self.order,
            table: self.table_rows(),
            labels: self.labels.clone(),
        })
        .expect("cayley serialization cannot fail")
    }

    /// Plain text: first line `n`, then `n` lines of `n` whitespace-separated
    /// entries.
    pub fn from_text_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, first) = lines
            .next()
            .ok_or_else(|| Error::Parse("cayley text: empty input".into()))?;
        let n: usize = first
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("cayley text: bad order line {first:?}")))?;
        let mut table = Vec::with_capacity(n);
        for _ in 0..n {
            let (lineno, line) = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("cayley text: expected {n} table rows")))?;
            let row: std::result::Result<Vec<usize>, _> =
                line.split_whitespace().map(str::parse).collect();
            let row = row.map_err(|_| {
                Error::Parse(format!("cayley text: line {}: non-numeric entry", lineno + 1))
            })?;
            if row.len() != n {
                return Err(Error::Parse(format!(
                    "cayley text: line {}: {} entries, expected {n}",
                    lineno + 1,
                    row.len()
                )));
            }
            table.push(row);
        }
        Self::validate(table)
    }
}

#[derive(Serialize, Deserialize)]
struct CayleyJson {
    n: usize,
    table: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl fmt::Debug for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Semigroup(n={}, table={:?})", self.order, self.table_rows())
    }
}

#[cfg(test)]
mod test {
    use super::*;

    fn z4_add() -> Semigroup {
        Semigroup::make_named(NamedKind::CyclicAdd, 4).unwrap()
    }

    fn z6_mul() -> Semigroup {
        Semigroup::make_named(NamedKind::CyclicMul, 6).unwrap()
    }

    fn mask(n: usize, elems: &[usize]) -> SubsetMask {
        SubsetMask::from_elems(n, elems.iter().copied()).unwrap()
    }

    #[test]
    fn validates_cyclic_group_and_left_zero() {
        assert!(Semigroup::validate(vec![
            vec![0, 1, 2, 3],
            vec![1, 2, 3, 0],
            vec![2, 3, 0, 1],
            vec![3, 0, 1, 2],
        ])
        .is_ok());
        assert!(Semigroup::validate(vec![vec![0, 0], vec![1, 1]]).is_ok());
    }

    /// Oracle: brute-check all 8 triples of the 2x2 table [[0,1],[0,0]] by
    /// hand. (1*0)*1 = 0*1 = 1 while 1*(0*1) = 1*1 = 0, and no triple before
    /// (1,0,1) in lexicographic order fails.
    #[test]
    fn reports_first_violating_triple_in_lex_order() {
        let err = Semigroup::validate(vec![vec![0, 1], vec![0, 0]]).unwrap_err();
        assert_eq!(
            err,
            Error::AssociativityFailure {
                a: 1,
                b: 0,
                c: 1,
                left: 1,
                right: 0
            }
        );
    }

    #[test]
    fn rejects_out_of_range_entry() {
        let err = Semigroup::validate(vec![vec![0, 2], vec![0, 0]]).unwrap_err();
        assert_eq!(
            err,
            Error::OutOfRangeEntry {
                row: 0,
                col: 1,
                value: 2,
                order: 2
            }
        );
    }

    #[test]
    fn preimage_translate_is_left_multiplication_preimage() {
        let s = z4_add();
        let a = mask(4, &[0, 2]);
        assert_eq!(s.preimage_translate(1, a), mask(4, &[1, 3]));
        // empty set has empty preimages
        assert!(s.preimage_translate(2, s.empty_mask()).is_empty());
    }

    #[test]
    fn ideal_predicates_on_z6_and_right_zero() {
        let s = z6_mul();
        let zero = mask(6, &[0]);
        assert!(s.is_left_ideal(zero) && s.is_right_ideal(zero) && s.is_ideal(zero));
        assert!(!s.is_left_ideal(s.empty_mask()));

        let rz = Semigroup::make_named(NamedKind::RightZero, 3).unwrap();
        let one = mask(3, &[1]);
        assert!(rz.is_left_ideal(one));
        assert!(!rz.is_right_ideal(one));
    }

    #[test]
    fn minimal_left_ideals_of_reference_semigroups() {
        let rz = Semigroup::make_named(NamedKind::RightZero, 3).unwrap();
        assert_eq!(
            rz.minimal_left_ideals(),
            vec![mask(3, &[0]), mask(3, &[1]), mask(3, &[2])]
        );

        assert_eq!(z6_mul().minimal_left_ideals(), vec![mask(6, &[0])]);

        // a group has no proper left ideal; S itself is the minimal one
        assert_eq!(z4_add().minimal_left_ideals(), vec![SubsetMask::full(4)]);
    }

    #[test]
    fn kernel_reports_for_reference_semigroups() {
        let k = z6_mul().kernel().unwrap();
        assert_eq!(k.kernel, mask(6, &[0]));
        assert_eq!(k.idempotents, mask(6, &[0, 1, 3, 4]));
        assert_eq!(k.minimal_idempotents, mask(6, &[0]));

        let k = z4_add().kernel().unwrap();
        assert_eq!(k.kernel, SubsetMask::full(4));
        assert_eq!(k.minimal_idempotents, mask(4, &[0]));

        let lz = Semigroup::make_named(NamedKind::LeftZero, 3).unwrap();
        let k = lz.kernel().unwrap();
        assert_eq!(k.minimal_left_ideals, vec![SubsetMask::full(3)]);
        assert_eq!(k.kernel, SubsetMask::full(3));
        assert_eq!(k.minimal_idempotents, SubsetMask::full(3));
    }

    #[test]
    fn subsemigroup_listing_is_ascending_and_complete() {
        let subs = z4_add().subsemigroups().unwrap();
        assert_eq!(subs, vec![mask(4, &[0]), mask(4, &[0, 2]), SubsetMask::full(4)]);

        let expected: Vec<SubsetMask> = vec![
            mask(6, &[0]),
            mask(6, &[1]),
            mask(6, &[0, 1]),
            mask(6, &[0, 2, 4]),
            mask(6, &[0, 3]),
            mask(6, &[1, 5]),
        ];
        let subs = z6_mul().subsemigroups().unwrap();
        for v in expected {
            assert!(subs.contains(&v), "{v} missing from subsemigroup list");
        }
        let mut sorted = subs.clone();
        sorted.sort();
        assert_eq!(subs, sorted, "listing must ascend by mask value");

        // left-zero: every nonempty subset is closed
        let lz = Semigroup::make_named(NamedKind::LeftZero, 2).unwrap();
        assert_eq!(lz.subsemigroups().unwrap().len(), 3);

        let big = Semigroup::make_named(NamedKind::LeftZero, 9).unwrap();
        assert!(matches!(
            big.subsemigroups(),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn restriction_keeps_products() {
        let s = z6_mul();
        let (sub, elems) = s.restrict(mask(6, &[0, 3])).unwrap();
        assert_eq!(elems, vec![0, 3]);
        assert_eq!(sub.mul(1, 1), 1); // 3*3 = 9 mod 6 = 3
        assert_eq!(sub.mul(0, 1), 0);
        assert!(s.restrict(mask(6, &[2, 3])).is_err()); // 2*3 = 0 escapes
    }

    #[test]
    fn json_and_text_round_trip() {
        let s = z6_mul();
        let round = Semigroup::from_json_str(&s.to_json_string()).unwrap();
        assert_eq!(s, round);

        let text = "3\n0 0 0\n0 1 2\n0 2 1\n";
        let t = Semigroup::from_text_str(text).unwrap();
        assert_eq!(t.order(), 3);
        assert_eq!(t.mul(2, 2), 1);

        assert!(Semigroup::from_text_str("2\n0 1\n0\n").is_err());
        assert!(Semigroup::from_json_str("{\"n\": 2, \"table\": [[0,1],[0,0]]}").is_err());
    }
}
