//! Filters on a finite ground set.
//!
//! Every filter on a finite set is principal, so a filter is stored as its
//! least member `v0` (the kernel of the filter, i.e. the intersection of all
//! members). The closure of a filter — the set of points every member
//! contains, which plays the role of the closure of the filter in the space
//! of ultrafilters — is exactly `v0`, and the ultrafilters themselves are
//! the point filters.

use crate::error::{Error, Result};
use crate::mask::SubsetMask;
use crate::semigroup::Semigroup;
use crate::stack::{Stack, SWEEP_BOUND};
use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FilterKernel {
    #[serde(rename = "n")]
    ground_size: usize,
    #[serde(rename = "v0")]
    v0: SubsetMask,
}

impl FilterKernel {
    pub fn new(ground_size: usize, v0: SubsetMask) -> Result<Self> {
        if v0.width() != ground_size {
            return Err(Error::WidthMismatch {
                expected: ground_size,
                got: v0.width(),
            });
        }
        if v0.is_empty() {
            return Err(Error::EmptyGenerator);
        }
        Ok(FilterKernel { ground_size, v0 })
    }

    /// The ultrafilter at a point.
    pub fn point(ground_size: usize, x: usize) -> Result<Self> {
        if x >= ground_size {
            return Err(Error::WidthMismatch {
                expected: ground_size,
                got: x + 1,
            });
        }
        Ok(FilterKernel {
            ground_size,
            v0: SubsetMask::singleton(ground_size, x),
        })
    }

    /// The improper-free filter `{S}` generated by the whole ground set;
    /// relative notions over it coincide with the absolute ones.
    pub fn full(ground_size: usize) -> Self {
        FilterKernel {
            ground_size,
            v0: SubsetMask::full(ground_size),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    /// The least member; generates the filter by upward closure.
    pub fn generator(&self) -> SubsetMask {
        self.v0
    }

    pub fn member(&self, a: SubsetMask) -> bool {
        self.v0.is_subset(a)
    }

    /// The points every member contains. For a principal filter this is its
    /// generator — the finite shadow of the closure in ultrafilter space.
    pub fn closure(&self) -> SubsetMask {
        self.v0
    }

    pub fn as_stack(&self) -> Stack {
        Stack::from_minimal_sets(self.ground_size, vec![self.v0])
    }

    /// Mesh closed form: `A ∈ F*` iff `A` meets `v0`, so the mesh is the
    /// up-closure of the singletons of `v0`.
    pub fn mesh(&self) -> Stack {
        Stack::from_minimal_sets(
            self.ground_size,
            self.v0
                .iter()
                .map(|x| SubsetMask::singleton(self.ground_size, x))
                .collect(),
        )
    }

    /// Filter product `F·G = {A : {x : x⁻¹A ∈ G} ∈ F}`, which for principal
    /// filters is the filter generated by the product set `v0·w0`. The
    /// closed form is cross-checked against the definitional `2^n` sweep
    /// whenever the ground set is small enough to sweep.
    pub fn product(&self, other: &FilterKernel, s: &Semigroup) -> Result<FilterKernel> {
        if self.ground_size != other.ground_size {
            return Err(Error::WidthMismatch {
                expected: self.ground_size,
                got: other.ground_size,
            });
        }
        if self.ground_size != s.order() {
            return Err(Error::WidthMismatch {
                expected: self.ground_size,
                got: s.order(),
            });
        }
        let closed = FilterKernel::new(self.ground_size, s.product_set(self.v0, other.v0))?;
        if self.ground_size <= SWEEP_BOUND {
            let swept = self.as_stack().product(&other.as_stack(), s)?;
            if swept != closed.as_stack() {
                return Err(Error::InternalInvariantViolation(format!(
                    "filter product closed form {:?} disagrees with sweep {:?}",
                    closed.as_stack(),
                    swept
                )));
            }
        }
        Ok(closed)
    }
}

impl fmt::Debug for FilterKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FilterKernel(n={}, v0={})", self.ground_size, self.v0)
    }
}

/// An ultrafilter on a finite ground set: the filter of all sets containing
/// one designated point.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct PointUltrafilter {
    #[serde(rename = "n")]
    ground_size: usize,
    point: usize,
}

impl PointUltrafilter {
    pub fn new(ground_size: usize, point: usize) -> Result<Self> {
        if point >= ground_size {
            return Err(Error::WidthMismatch {
                expected: ground_size,
                got: point + 1,
            });
        }
        Ok(PointUltrafilter { ground_size, point })
    }

    pub fn point(&self) -> usize {
        self.point
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn filter(&self) -> FilterKernel {
        FilterKernel::point(self.ground_size, self.point).expect("validated at construction")
    }

    pub fn stack(&self) -> Stack {
        self.filter().as_stack()
    }

    pub fn member(&self, a: SubsetMask) -> bool {
        a.contains(self.point)
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
    fn construction_validates() {
        assert!(FilterKernel::new(3, SubsetMask::empty(3)).is_err());
        assert!(FilterKernel::new(3, mask(4, &[0])).is_err());
        assert!(FilterKernel::point(3, 3).is_err());
        assert_eq!(
            FilterKernel::point(3, 2).unwrap().generator(),
            mask(3, &[2])
        );
    }

    #[test]
    fn membership_and_closure_are_generator_based() {
        let f = FilterKernel::new(4, mask(4, &[1, 2])).unwrap();
        assert!(f.member(mask(4, &[1, 2, 3])));
        assert!(!f.member(mask(4, &[1])));
        assert_eq!(f.closure(), mask(4, &[1, 2]));
        for a in SubsetMask::all_subsets(4) {
            assert_eq!(f.member(a), f.as_stack().member(a));
        }
    }

    #[test]
    fn mesh_closed_form_matches_stack_mesh() {
        for v0 in [mask(3, &[0, 1]), mask(3, &[2]), SubsetMask::full(3)] {
            let f = FilterKernel::new(3, v0).unwrap();
            assert_eq!(f.mesh(), f.as_stack().mesh());
        }
        let f = FilterKernel::full(3);
        assert_eq!(
            f.mesh().antichain(),
            &[mask(3, &[0]), mask(3, &[1]), mask(3, &[2])]
        );
    }

    #[test]
    fn product_follows_the_product_set() {
        let s = Semigroup::make_named(NamedKind::CyclicMul, 6).unwrap();
        let f = FilterKernel::new(6, mask(6, &[1, 5])).unwrap();
        let g = FilterKernel::new(6, mask(6, &[2])).unwrap();
        assert_eq!(f.product(&g, &s).unwrap().generator(), mask(6, &[2, 4]));

        // points multiply to points
        let p = FilterKernel::point(6, 2).unwrap();
        let q = FilterKernel::point(6, 5).unwrap();
        assert_eq!(
            p.product(&q, &s).unwrap().generator(),
            mask(6, &[(2 * 5) % 6])
        );
    }

    #[test]
    fn point_ultrafilter_views_agree() {
        let p = PointUltrafilter::new(5, 3).unwrap();
        assert_eq!(p.filter().generator(), mask(5, &[3]));
        for a in SubsetMask::all_subsets(5) {
            assert_eq!(p.member(a), p.stack().member(a));
        }
    }
}
