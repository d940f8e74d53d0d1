//! Upward-closed families of subsets ("stacks") in canonical antichain form.
//!
//! A stack is stored as the antichain of its inclusion-minimal members,
//! sorted ascending by mask value; two stacks are equal iff their canonical
//! forms are. The empty antichain is the empty family, and the antichain
//! `[∅]` is the family of *all* subsets — both arise naturally as meshes and
//! are legal stacks, though not legal filters.
//!
//! The mesh (dual) `F* = {A : Aᶜ ∉ F}` is computed exactly as the up-closure
//! of the minimal transversals of the antichain, with no ground-set size
//! limit; the `2^n` membership sweep exists independently as a cross-check
//! for the test suites. Products are genuinely sweep-based and therefore
//! bounded.

use crate::error::{Error, Result};
use crate::mask::SubsetMask;
use crate::semigroup::Semigroup;
use serde::Serialize;
use std::fmt;

/// Ground-set bound for `2^n` membership sweeps (products, sweep-based
/// cross-checks). Closed forms are unbounded.
pub const SWEEP_BOUND: usize = 16;

#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Stack {
    #[serde(rename = "n")]
    ground_size: usize,
    #[serde(rename = "antichain")]
    minimal: Vec<SubsetMask>,
}

/// Keep only inclusion-minimal masks, sorted ascending by value.
fn minimalize(mut sets: Vec<SubsetMask>) -> Vec<SubsetMask> {
    sets.sort();
    sets.dedup();
    let keep: Vec<SubsetMask> = sets
        .iter()
        .copied()
        .filter(|&m| !sets.iter().any(|&o| o != m && o.is_subset(m)))
        .collect();
    keep
}

impl Stack {
    /// The family with no members at all.
    pub fn empty_family(ground_size: usize) -> Self {
        Stack {
            ground_size,
            minimal: Vec::new(),
        }
    }

    /// The family of all subsets (minimal member ∅).
    pub fn all_subsets(ground_size: usize) -> Self {
        Stack {
            ground_size,
            minimal: vec![SubsetMask::empty(ground_size)],
        }
    }

    /// Upward closure of a family of nonempty generator sets.
    pub fn up_closure(ground_size: usize, generators: &[SubsetMask]) -> Result<Self> {
        for g in generators {
            if g.width() != ground_size {
                return Err(Error::WidthMismatch {
                    expected: ground_size,
                    got: g.width(),
                });
            }
            if g.is_empty() {
                return Err(Error::EmptyGenerator);
            }
        }
        Ok(Stack {
            ground_size,
            minimal: minimalize(generators.to_vec()),
        })
    }

    /// Canonicalize an arbitrary (possibly empty, possibly ∅-containing)
    /// antichain source. Internal: public constructors go through
    /// `up_closure` so user-supplied generators stay validated.
    pub(crate) fn from_minimal_sets(ground_size: usize, sets: Vec<SubsetMask>) -> Self {
        Stack {
            ground_size,
            minimal: minimalize(sets),
        }
    }

    /// Rebuild a stack from a membership predicate by sweeping all `2^n`
    /// subsets. In an upward-closed family a member is minimal exactly when
    /// no single-element deletion stays a member.
    pub fn from_membership(ground_size: usize, is_member: impl Fn(SubsetMask) -> bool) -> Self {
        assert!(ground_size <= SWEEP_BOUND, "membership sweep out of bounds");
        let member: Vec<bool> = SubsetMask::all_subsets(ground_size).map(&is_member).collect();
        let mut minimal = Vec::new();
        for (bits, &m) in member.iter().enumerate() {
            if !m {
                continue;
            }
            let mask = SubsetMask::from_bits(ground_size, bits as u32);
            if mask
                .iter()
                .all(|e| !member[(bits as u32 & !(1u32 << e)) as usize])
            {
                minimal.push(mask);
            }
        }
        Stack {
            ground_size,
            minimal,
        }
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    /// The canonical antichain, ascending by mask value.
    pub fn antichain(&self) -> &[SubsetMask] {
        &self.minimal
    }

    pub fn member(&self, a: SubsetMask) -> bool {
        debug_assert_eq!(a.width(), self.ground_size);
        self.minimal.iter().any(|m| m.is_subset(a))
    }

    /// Membership containment: every member of `self` is a member of `other`.
    pub fn is_subfamily_of(&self, other: &Stack) -> bool {
        self.minimal.iter().all(|&m| other.member(m))
    }

    /// Family union: members of either. Antichain is the minimalized merge.
    pub fn union(&self, other: &Stack) -> Stack {
        debug_assert_eq!(self.ground_size, other.ground_size);
        let mut sets = self.minimal.clone();
        sets.extend_from_slice(&other.minimal);
        Stack::from_minimal_sets(self.ground_size, sets)
    }

    /// Family intersection: members of both. `A ⊇ m_i` and `A ⊇ n_j` iff
    /// `A ⊇ m_i ∪ n_j`, so pairwise unions generate it.
    pub fn intersection(&self, other: &Stack) -> Stack {
        debug_assert_eq!(self.ground_size, other.ground_size);
        let mut sets = Vec::with_capacity(self.minimal.len() * other.minimal.len());
        for &m in &self.minimal {
            for &n in &other.minimal {
                sets.push(m.union(n));
            }
        }
        Stack::from_minimal_sets(self.ground_size, sets)
    }

    /// The mesh `F* = {A : Aᶜ ∉ F}`: exactly the sets meeting every minimal
    /// member, i.e. the up-closure of the minimal transversals of the
    /// antichain. Exact at any ground size; total on all stacks.
    pub fn mesh(&self) -> Stack {
        let mut transversals = Vec::new();
        let mut partial = SubsetMask::empty(self.ground_size);
        collect_transversals(&self.minimal, &mut partial, &mut transversals);
        Stack::from_minimal_sets(self.ground_size, transversals)
    }

    /// `2^n`-sweep mesh, used by the suites to cross-check the closed form.
    pub fn mesh_by_sweep(&self) -> Result<Stack> {
        if self.ground_size > SWEEP_BOUND {
            return Err(Error::BoundExceeded {
                what: "mesh sweep ground size",
                requested: self.ground_size,
                limit: SWEEP_BOUND,
            });
        }
        Ok(Stack::from_membership(self.ground_size, |a| {
            !self.member(a.complement())
        }))
    }

    /// Stack product `F·G = {A : {x : x⁻¹A ∈ G} ∈ F}` over the semigroup
    /// `s`, computed by sweeping all `2^n` candidate sets.
    pub fn product(&self, other: &Stack, s: &Semigroup) -> Result<Stack> {
        self.product_bounded(other, s, SWEEP_BOUND)
    }

    pub fn product_bounded(&self, other: &Stack, s: &Semigroup, bound: usize) -> Result<Stack> {
        let n = self.ground_size;
        if n != other.ground_size {
            return Err(Error::WidthMismatch {
                expected: n,
                got: other.ground_size,
            });
        }
        if n != s.order() {
            return Err(Error::WidthMismatch {
                expected: n,
                got: s.order(),
            });
        }
        if n > bound {
            return Err(Error::BoundExceeded {
                what: "stack product ground size",
                requested: n,
                limit: bound,
            });
        }
        Ok(Stack::from_membership(n, |a| {
            self.member(translation_set(a, other, s))
        }))
    }
}

/// `{x : x⁻¹A ∈ G}` — the set of points whose translate-preimage of `A` is
/// a member of `G`.
pub fn translation_set(a: SubsetMask, g: &Stack, s: &Semigroup) -> SubsetMask {
    let mut out = SubsetMask::empty(s.order());
    for x in 0..s.order() {
        if g.member(s.preimage_translate(x, a)) {
            out.insert(x);
        }
    }
    out
}

/// Closed form of `translation_set` when `G` is the ultrafilter at `y`:
/// `x⁻¹A ∋ y ⟺ x*y ∈ A`.
pub fn translation_set_point(a: SubsetMask, y: usize, s: &Semigroup) -> SubsetMask {
    let mut out = SubsetMask::empty(s.order());
    for x in 0..s.order() {
        if a.contains(s.mul(x, y)) {
            out.insert(x);
        }
    }
    out
}

fn collect_transversals(
    antichain: &[SubsetMask],
    partial: &mut SubsetMask,
    out: &mut Vec<SubsetMask>,
) {
    match antichain.iter().find(|m| m.intersection(*partial).is_empty()) {
        None => out.push(*partial),
        Some(unhit) => {
            if unhit.is_empty() {
                // ∅ can never be hit: no transversal extends this branch
                return;
            }
            for e in unhit.iter() {
                partial.insert(e);
                collect_transversals(antichain, partial, out);
                partial.remove(e);
            }
        }
    }
}

impl fmt::Debug for Stack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Stack(n={}, min=[", self.ground_size)?;
        for (i, m) in self.minimal.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod test {
    use super::*;
    use crate::semigroup::NamedKind;

    fn mask(n: usize, elems: &[usize]) -> SubsetMask {
        SubsetMask::from_elems(n, elems.iter().copied()).unwrap()
    }

    #[test]
    fn up_closure_canonicalizes() {
        let f = Stack::up_closure(3, &[mask(3, &[0, 1]), mask(3, &[0]), mask(3, &[2])]).unwrap();
        assert_eq!(f.antichain(), &[mask(3, &[0]), mask(3, &[2])]);
        assert_eq!(
            Stack::up_closure(3, &[SubsetMask::empty(3)]),
            Err(Error::EmptyGenerator)
        );
    }

    #[test]
    fn membership_is_superset_of_some_minimal_set() {
        let f = Stack::up_closure(4, &[mask(4, &[0, 1]), mask(4, &[2])]).unwrap();
        assert!(f.member(mask(4, &[0, 1, 3])));
        assert!(f.member(mask(4, &[2])));
        assert!(!f.member(mask(4, &[0, 3])));
        assert!(!f.member(SubsetMask::empty(4)));
        // degenerate families
        assert!(Stack::all_subsets(4).member(SubsetMask::empty(4)));
        assert!(!Stack::empty_family(4).member(SubsetMask::full(4)));
    }

    #[test]
    fn mesh_closed_form_matches_sweep_on_handpicked_families() {
        let cases = vec![
            Stack::up_closure(3, &[mask(3, &[0, 1])]).unwrap(),
            Stack::up_closure(3, &[mask(3, &[0]), mask(3, &[1, 2])]).unwrap(),
            Stack::up_closure(4, &[mask(4, &[0, 1]), mask(4, &[2, 3])]).unwrap(),
            Stack::empty_family(3),
            Stack::all_subsets(3),
        ];
        for f in cases {
            assert_eq!(f.mesh(), f.mesh_by_sweep().unwrap(), "mesh mismatch for {f:?}");
        }
        // filter {A ⊇ {0,1}}: mesh = sets meeting {0,1}
        let f = Stack::up_closure(3, &[mask(3, &[0, 1])]).unwrap();
        assert_eq!(f.mesh().antichain(), &[mask(3, &[0]), mask(3, &[1])]);
    }

    #[test]
    fn mesh_swaps_degenerate_families() {
        assert_eq!(Stack::empty_family(5).mesh(), Stack::all_subsets(5));
        assert_eq!(Stack::all_subsets(5).mesh(), Stack::empty_family(5));
    }

    #[test]
    fn product_of_principal_families_is_principal_at_the_product_set() {
        // (Z6, *): up({1,5}) · up({2}) = up({2,4})
        let s = Semigroup::make_named(NamedKind::CyclicMul, 6).unwrap();
        let f = Stack::up_closure(6, &[mask(6, &[1, 5])]).unwrap();
        let g = Stack::up_closure(6, &[mask(6, &[2])]).unwrap();
        let fg = f.product(&g, &s).unwrap();
        assert_eq!(fg.antichain(), &[mask(6, &[2, 4])]);
    }

    #[test]
    fn translation_set_generic_and_point_routes_agree() {
        let s = Semigroup::make_named(NamedKind::CyclicAdd, 4).unwrap();
        let a = mask(4, &[0, 2]);
        let g = Stack::up_closure(4, &[mask(4, &[1])]).unwrap();
        let generic = translation_set(a, &g, &s);
        let point = translation_set_point(a, 1, &s);
        assert_eq!(generic, point);
        assert_eq!(point, mask(4, &[1, 3]));
    }

    #[test]
    fn union_and_intersection_are_memberwise() {
        let f = Stack::up_closure(3, &[mask(3, &[0])]).unwrap();
        let g = Stack::up_closure(3, &[mask(3, &[1])]).unwrap();
        let u = f.union(&g);
        let i = f.intersection(&g);
        for a in SubsetMask::all_subsets(3) {
            assert_eq!(u.member(a), f.member(a) || g.member(a));
            assert_eq!(i.member(a), f.member(a) && g.member(a));
        }
        assert_eq!(i.antichain(), &[mask(3, &[0, 1])]);
    }

    #[test]
    fn serializes_to_antichain_json() {
        let f = Stack::up_closure(3, &[mask(3, &[0, 2])]).unwrap();
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            "{\"n\":3,\"antichain\":[[0,2]]}"
        );
    }
}
