//! Fixed-width subsets of a ground set `{0, .., n-1}`, packed into a `u32`.
//!
//! Every mask carries its ground-set width so that complement and "full set"
//! are well defined; mixing widths is a programming error and panics. The raw
//! bit value doubles as the canonical ordering key used everywhere a
//! deterministic set order is promised (antichains, witness minimality,
//! subsemigroup listings).

use crate::error::{Error, Result};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::fmt;

pub const MAX_WIDTH: usize = 32;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask {
    bits: u32,
    width: u8,
}

impl SubsetMask {
    pub fn empty(width: usize) -> Self {
        assert!(width <= MAX_WIDTH, "ground set too large for SubsetMask");
        SubsetMask {
            bits: 0,
            width: width as u8,
        }
    }

    pub fn full(width: usize) -> Self {
        assert!(width <= MAX_WIDTH);
        let bits = if width == 32 {
            u32::MAX
        } else {
            (1u32 << width) - 1
        };
        SubsetMask {
            bits,
            width: width as u8,
        }
    }

    pub fn singleton(width: usize, elem: usize) -> Self {
        let mut m = Self::empty(width);
        m.insert(elem);
        m
    }

    /// Build from element indices; rejects out-of-range elements.
    pub fn from_elems<I: IntoIterator<Item = usize>>(width: usize, elems: I) -> Result<Self> {
        let mut m = Self::empty(width);
        for e in elems {
            if e >= width {
                return Err(Error::WidthMismatch {
                    expected: width,
                    got: e + 1,
                });
            }
            m.insert(e);
        }
        Ok(m)
    }

    pub fn from_bits(width: usize, bits: u32) -> Self {
        let m = Self::full(width);
        assert_eq!(bits & !m.bits, 0, "bits outside width");
        SubsetMask {
            bits,
            width: width as u8,
        }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width as usize
    }

    /// Raw bit value; the canonical ordering key for sets of equal width.
    #[inline]
    pub fn bits(&self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn contains(&self, e: usize) -> bool {
        e < self.width() && self.bits & (1 << e) != 0
    }

    #[inline]
    pub fn insert(&mut self, e: usize) {
        assert!(e < self.width(), "element out of range");
        self.bits |= 1 << e;
    }

    #[inline]
    pub fn remove(&mut self, e: usize) {
        assert!(e < self.width());
        self.bits &= !(1 << e);
    }

    pub fn with(mut self, e: usize) -> Self {
        self.insert(e);
        self
    }

    pub fn without(mut self, e: usize) -> Self {
        self.remove(e);
        self
    }

    #[inline]
    fn check(&self, other: &Self) {
        assert_eq!(self.width, other.width, "mask width mismatch");
    }

    pub fn union(&self, other: Self) -> Self {
        self.check(&other);
        SubsetMask {
            bits: self.bits | other.bits,
            width: self.width,
        }
    }

    pub fn intersection(&self, other: Self) -> Self {
        self.check(&other);
        SubsetMask {
            bits: self.bits & other.bits,
            width: self.width,
        }
    }

    pub fn minus(&self, other: Self) -> Self {
        self.check(&other);
        SubsetMask {
            bits: self.bits & !other.bits,
            width: self.width,
        }
    }

    /// Complement within the ground set (closed at this width).
    pub fn complement(&self) -> Self {
        SubsetMask {
            bits: Self::full(self.width()).bits & !self.bits,
            width: self.width,
        }
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn is_full(&self) -> bool {
        self.bits == Self::full(self.width()).bits
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_subset(&self, other: Self) -> bool {
        self.check(&other);
        self.bits & !other.bits == 0
    }

    pub fn min_elem(&self) -> Option<usize> {
        if self.bits == 0 {
            None
        } else {
            Some(self.bits.trailing_zeros() as usize)
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let width = self.width();
        (0..width).filter(move |&e| self.bits & (1 << e) != 0)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of the ground set, ascending by bit value.
    pub fn all_subsets(width: usize) -> impl Iterator<Item = SubsetMask> {
        assert!(width <= 16, "exhaustive subset sweep limited to width 16");
        (0u32..(1u32 << width)).map(move |bits| SubsetMask {
            bits,
            width: width as u8,
        })
    }

    /// All subsets of `self`, ascending by bit value (includes the empty set
    /// and `self`). Uses the carry-propagation submask walk.
    pub fn subsets(&self) -> impl Iterator<Item = SubsetMask> {
        let m = self.bits;
        let width = self.width;
        let mut cur = Some(0u32);
        std::iter::from_fn(move || {
            let bits = cur?;
            cur = if bits == m {
                None
            } else {
                Some(bits.wrapping_sub(m) & m)
            };
            Some(SubsetMask { bits, width })
        })
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Serialized as the sorted element list, matching the on-disk set format.
impl Serialize for SubsetMask {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for e in self.iter() {
            seq.serialize_element(&e)?;
        }
        seq.end()
    }
}
