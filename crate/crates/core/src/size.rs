//! Absolute notions of size in a finite semigroup.
//!
//! * syndetic: finitely many translate-preimages of `A` cover `S`; on a
//!   finite semigroup, `⋃_{h∈S} h⁻¹A = S`.
//! * thick: every finite family of translate-preimages has a common point;
//!   finitely, `⋂_{h∈S} h⁻¹A ≠ ∅`.
//! * piecewise syndetic: some finite union of translate-preimages is thick.
//!
//! The piecewise-syndetic decision runs two independent routes — the
//! definitional window check and the kernel-intersection characterization —
//! and refuses to answer if they disagree. Positive verdicts carry a witness
//! that `verify_witness` re-checks from scratch without consulting the
//! decision procedure.

use crate::error::{Error, Result};
use crate::mask::SubsetMask;
use crate::semigroup::Semigroup;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Notion {
    Syndetic,
    Thick,
    PiecewiseSyndetic,
    RelSyndetic,
    RelThick,
    PwRelSyndetic,
    PwRelSyndeticIdem,
}

/// Re-checkable evidence for a positive verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `H` with `⋃_{h∈H} h⁻¹A = S`; the least such set as a bitmask value,
    /// hence also inclusion-minimal.
    SyndeticCover { h: SubsetMask },
    /// `x` with `h·x ∈ A` for every `h ∈ S`; the least such element.
    ThickPoint { x: usize },
    /// `H` and a common point `x` of all translates of `⋃_{h∈H} h⁻¹A`.
    PiecewiseSyndetic { h: SubsetMask, x: usize },
    /// For each `y` in the target generator, the least `h` with `h·y ∈ A`.
    RelSyndeticAssignment { pairs: Vec<(usize, usize)> },
    /// `x` in the target generator with `V₀·x ⊆ A`.
    RelThickPoint { x: usize },
    /// The least `r ∈ V₀` certifying the piecewise condition.
    PwRelSyndetic { r: usize },
    /// A minimal idempotent of the restricted semigroup whose translation
    /// set is relatively syndetic.
    PwRelIdempotent { e: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SizeVerdict {
    pub notion: Notion,
    pub value: bool,
    pub witness: Option<Witness>,
    /// True when every computed route agreed (trivially true for
    /// single-route notions). A verdict is never returned otherwise.
    pub paths_agreed: bool,
}

impl SizeVerdict {
    pub(crate) fn new(notion: Notion, value: bool, witness: Option<Witness>) -> Self {
        debug_assert_eq!(value, witness.is_some());
        SizeVerdict {
            notion,
            value,
            witness,
            paths_agreed: true,
        }
    }
}

/// Union of all translate-preimages of `a`.
pub(crate) fn preimage_union(s: &Semigroup, h_set: SubsetMask, a: SubsetMask) -> SubsetMask {
    let mut u = s.empty_mask();
    for h in h_set.iter() {
        u = u.union(s.preimage_translate(h, a));
    }
    u
}

/// Intersection of translate-preimages of `a` over `h_set` (full ground set
/// when `h_set` is everything).
pub(crate) fn preimage_intersection(s: &Semigroup, h_set: SubsetMask, a: SubsetMask) -> SubsetMask {
    let mut t = s.full_mask();
    for h in h_set.iter() {
        t = t.intersection(s.preimage_translate(h, a));
    }
    t
}

/// Least set (by bitmask value) within `universe` satisfying a monotone
/// predicate, assuming `pred(universe)` holds. Decides membership from the
/// highest element down: drop an element whenever the rest still suffices.
/// For monotone predicates the result is both value-least and
/// inclusion-minimal.
pub(crate) fn lex_least_monotone(
    universe: SubsetMask,
    pred: impl Fn(SubsetMask) -> bool,
) -> SubsetMask {
    debug_assert!(pred(universe));
    let mut keep = universe;
    let mut elems: Vec<usize> = universe.iter().collect();
    elems.reverse();
    for e in elems {
        let without = keep.without(e);
        if pred(without) {
            keep = without;
        }
    }
    keep
}

pub fn is_syndetic(s: &Semigroup, a: SubsetMask) -> SizeVerdict {
    let full = s.full_mask();
    let value = preimage_union(s, full, a) == full;
    let witness = value.then(|| {
        let h = lex_least_monotone(full, |hs| preimage_union(s, hs, a) == full);
        Witness::SyndeticCover { h }
    });
    SizeVerdict::new(Notion::Syndetic, value, witness)
}

pub fn is_thick(s: &Semigroup, a: SubsetMask) -> SizeVerdict {
    let t = preimage_intersection(s, s.full_mask(), a);
    let witness = t.min_elem().map(|x| Witness::ThickPoint { x });
    SizeVerdict::new(Notion::Thick, !t.is_empty(), witness)
}

/// Both routes, compared:
/// 1. definitional — some `H` makes `⋃_{h∈H} h⁻¹A` thick; by monotonicity
///    in `H` it suffices to try `H = S`;
/// 2. structural — `A` meets the kernel of `S`.
pub fn is_piecewise_syndetic(s: &Semigroup, a: SubsetMask) -> Result<SizeVerdict> {
    let full = s.full_mask();
    let whole_union = preimage_union(s, full, a);
    let definitional = !preimage_intersection(s, full, whole_union).is_empty();

    let kernel = s.kernel()?;
    let structural = !a.intersection(kernel.kernel).is_empty();

    if definitional != structural {
        return Err(Error::InternalInvariantViolation(format!(
            "piecewise-syndetic routes disagree on A={a}: definitional={definitional}, kernel-meet={structural}"
        )));
    }

    let witness = definitional.then(|| {
        let h = lex_least_monotone(full, |hs| {
            !preimage_intersection(s, full, preimage_union(s, hs, a)).is_empty()
        });
        let x = preimage_intersection(s, full, preimage_union(s, h, a))
            .min_elem()
            .expect("witness intersection nonempty by construction");
        Witness::PiecewiseSyndetic { h, x }
    });
    Ok(SizeVerdict::new(
        Notion::PiecewiseSyndetic,
        definitional,
        witness,
    ))
}

/// Duality health check for one set:
/// * `A` thick ⟺ complement of `A` not syndetic,
/// * `A` syndetic ⟺ complement of `A` not thick,
/// * and if `A` is both syndetic and thick it must be nonempty (the
///   syndetic/thick intersection property applied to the pair `(A, A)`).
pub fn remark_du_check(s: &Semigroup, a: SubsetMask) -> bool {
    let c = a.complement();
    let syn_a = is_syndetic(s, a).value;
    let thick_a = is_thick(s, a).value;
    let syn_c = is_syndetic(s, c).value;
    let thick_c = is_thick(s, c).value;
    let duality = (thick_a == !syn_c) && (syn_a == !thick_c);
    let meet = !(syn_a && thick_a) || !a.is_empty();
    duality && meet
}

/// Re-check a positive absolute verdict from its witness alone. Returns
/// false for negative verdicts (nothing to verify) and for any witness that
/// does not certify the claim.
pub fn verify_witness(s: &Semigroup, a: SubsetMask, verdict: &SizeVerdict) -> bool {
    match (&verdict.notion, &verdict.witness) {
        (Notion::Syndetic, Some(Witness::SyndeticCover { h })) => {
            preimage_union(s, *h, a) == s.full_mask()
        }
        (Notion::Thick, Some(Witness::ThickPoint { x })) => {
            (0..s.order()).all(|h| a.contains(s.mul(h, *x)))
        }
        (Notion::PiecewiseSyndetic, Some(Witness::PiecewiseSyndetic { h, x })) => {
            let u = preimage_union(s, *h, a);
            (0..s.order()).all(|y| u.contains(s.mul(y, *x)))
        }
        _ => false,
    }
}

#[cfg(test)]
mod test {
    use super::*;
    use crate::semigroup::NamedKind;

    fn mask(n: usize, elems: &[usize]) -> SubsetMask {
        SubsetMask::from_elems(n, elems.iter().copied()).unwrap()
    }

    fn z4_add() -> Semigroup {
        Semigroup::make_named(NamedKind::CyclicAdd, 4).unwrap()
    }

    fn z6_mul() -> Semigroup {
        Semigroup::make_named(NamedKind::CyclicMul, 6).unwrap()
    }

    #[test]
    fn in_a_group_every_nonempty_set_is_syndetic() {
        let s = z4_add();
        for a in SubsetMask::all_subsets(4) {
            let v = is_syndetic(&s, a);
            assert_eq!(v.value, !a.is_empty());
            if v.value {
                assert!(verify_witness(&s, a, &v));
            }
        }
    }

    #[test]
    fn syndetic_witness_is_least_cover() {
        // 0⁻¹{0} = S in (Z6,*), so H = {0} covers and is value-least.
        let s = z6_mul();
        let v = is_syndetic(&s, mask(6, &[0]));
        assert!(v.value);
        assert_eq!(v.witness, Some(Witness::SyndeticCover { h: mask(6, &[0]) }));
    }

    #[test]
    fn thick_examples_and_witness_position() {
        let s = z6_mul();
        let v = is_thick(&s, mask(6, &[0, 4]));
        assert!(v.value);
        assert_eq!(v.witness, Some(Witness::ThickPoint { x: 0 }));
        assert!(verify_witness(&s, mask(6, &[0, 4]), &v));

        let s = z4_add();
        assert!(!is_thick(&s, mask(4, &[0, 2])).value);
        assert!(is_thick(&s, SubsetMask::full(4)).value);
    }

    #[test]
    fn piecewise_syndetic_routes_agree_on_reference_cases() {
        let s = z6_mul();
        let yes = is_piecewise_syndetic(&s, mask(6, &[0, 4])).unwrap();
        assert!(yes.value && yes.paths_agreed);
        assert!(verify_witness(&s, mask(6, &[0, 4]), &yes));
        let no = is_piecewise_syndetic(&s, mask(6, &[3])).unwrap();
        assert!(!no.value);
        assert_eq!(no.witness, None);
    }

    #[test]
    fn empty_and_full_sets_classify_uniformly() {
        for s in [z4_add(), z6_mul()] {
            let n = s.order();
            let empty = SubsetMask::empty(n);
            let full = SubsetMask::full(n);
            assert!(!is_syndetic(&s, empty).value);
            assert!(!is_thick(&s, empty).value);
            assert!(!is_piecewise_syndetic(&s, empty).unwrap().value);
            assert!(is_syndetic(&s, full).value);
            assert!(is_thick(&s, full).value);
            assert!(is_piecewise_syndetic(&s, full).unwrap().value);
        }
    }

    #[test]
    fn duality_check_passes_across_small_sweeps() {
        for s in [z4_add(), z6_mul()] {
            for bits in 0..(1u32 << s.order()) {
                let a = SubsetMask::from_bits(s.order(), bits);
                assert!(remark_du_check(&s, a));
            }
        }
    }

    #[test]
    fn verdicts_serialize_with_notion_and_paths() {
        let s = z6_mul();
        let v = is_syndetic(&s, mask(6, &[0]));
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["notion"], "syndetic");
        assert_eq!(json["value"], true);
        assert_eq!(json["paths_agreed"], true);
        assert_eq!(json["witness"]["kind"], "syndetic_cover");
        assert_eq!(json["witness"]["h"], serde_json::json!([0]));
    }
}
