//! The relative size notions exactly as defined — quantifying over every
//! filter member with a finite selection allowed per member — with no
//! appeal to the generator-collapse arguments the decision routes rely on.
//!
//! These walk `4^n`-ish search spaces and exist purely as cross-checking
//! oracles for the reduced implementations in [`crate::relative`]; keep
//! them away from anything performance-sensitive.

use crate::mask::SubsetMask;
use crate::semigroup::Semigroup;

/// Every member of the filter generated by `v0`: all supersets.
pub fn filter_members(v0: SubsetMask) -> Vec<SubsetMask> {
    v0.complement().subsets().map(|t| v0.union(t)).collect()
}

fn punion(s: &Semigroup, hs: SubsetMask, a: SubsetMask) -> SubsetMask {
    hs.iter()
        .fold(s.empty_mask(), |u, h| u.union(s.preimage_translate(h, a)))
}

fn pinter(s: &Semigroup, hs: SubsetMask, a: SubsetMask) -> SubsetMask {
    hs.iter()
        .fold(s.full_mask(), |t, h| t.intersection(s.preimage_translate(h, a)))
}

/// `∀V ∃ finite H ⊆ V: ⋃_{h∈H} h⁻¹A` is a member of the target filter.
pub fn rel_syndetic(s: &Semigroup, v0: SubsetMask, w0: SubsetMask, a: SubsetMask) -> bool {
    filter_members(v0)
        .into_iter()
        .all(|v| v.subsets().any(|h| w0.is_subset(punion(s, h, a))))
}

/// `∃V ∀ finite H ⊆ V: ⋂_{h∈H} h⁻¹A` meets every member of the target
/// filter (equivalently, meets its generator).
pub fn rel_thick(s: &Semigroup, v0: SubsetMask, w0: SubsetMask, a: SubsetMask) -> bool {
    filter_members(v0)
        .into_iter()
        .any(|v| v.subsets().all(|h| !pinter(s, h, a).intersection(w0).is_empty()))
}

/// The piecewise notion as defined: a choice, for each member `V`, of a
/// finite `H_V ⊆ V` and a member `W_V`, such that
/// `{(x⁻¹⋃_{h∈H_V} h⁻¹A) ∩ V : V member, x ∈ W_V}` has the finite
/// intersection property. The family is finite, so that means a common
/// point `w`; the per-member choices are independent once `w` is fixed.
pub fn piecewise(s: &Semigroup, v0: SubsetMask, a: SubsetMask) -> bool {
    let vs = filter_members(v0);
    (0..s.order()).any(|w| {
        vs.iter().all(|&v| {
            v.contains(w)
                && v.subsets().any(|h| {
                    let u = punion(s, h, a);
                    vs.iter()
                        .any(|&wv| wv.iter().all(|x| u.contains(s.mul(x, w))))
                })
        })
    })
}
