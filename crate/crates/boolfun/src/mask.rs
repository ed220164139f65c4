//! Coordinate subsets and hypercube points as bitmasks.
//!
//! Both types share one encoding: bit `i` refers to coordinate `i`. For a
//! [`Point`], a set bit means the coordinate takes the value -1 and a clear
//! bit means +1, so truth-table index 0 is the all-(+1) point.

use crate::error::{Error, Result};
use crate::num::Scalar;
use std::fmt;
use std::str::FromStr;

/// A subset of coordinates `{0, .., n-1}` stored as a bitmask.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CoordSet(u64);

impl CoordSet {
    pub const EMPTY: CoordSet = CoordSet(0);

    pub fn new(bits: u64) -> Self {
        CoordSet(bits)
    }

    /// All coordinates below `n`.
    pub fn full(n: usize) -> Self {
        assert!(n <= 64, "coordinate sets hold at most 64 coordinates");
        if n == 64 {
            CoordSet(u64::MAX)
        } else {
            CoordSet((1u64 << n) - 1)
        }
    }

    pub fn single(coord: usize) -> Self {
        assert!(coord < 64);
        CoordSet(1u64 << coord)
    }

    pub fn from_coords<I: IntoIterator<Item = usize>>(coords: I) -> Self {
        let mut bits = 0u64;
        for c in coords {
            assert!(c < 64);
            bits |= 1u64 << c;
        }
        CoordSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, coord: usize) -> bool {
        coord < 64 && self.0 >> coord & 1 == 1
    }

    pub fn with(self, coord: usize) -> Self {
        assert!(coord < 64);
        CoordSet(self.0 | 1u64 << coord)
    }

    pub fn without(self, coord: usize) -> Self {
        assert!(coord < 64);
        CoordSet(self.0 & !(1u64 << coord))
    }

    pub fn union(self, other: Self) -> Self {
        CoordSet(self.0 | other.0)
    }

    pub fn intersect(self, other: Self) -> Self {
        CoordSet(self.0 & other.0)
    }

    pub fn minus(self, other: Self) -> Self {
        CoordSet(self.0 & !other.0)
    }

    pub fn complement(self, n: usize) -> Self {
        Self::full(n).minus(self)
    }

    /// Number of coordinates in the set.
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint_from(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// True when every coordinate is below `n`.
    pub fn fits(self, n: usize) -> bool {
        self.is_subset_of(Self::full(n.min(64)))
    }

    /// Coordinates in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// Spreads the low `len()` bits of `bits` over the members: bit j of
    /// `bits` lands on the j-th smallest coordinate.
    pub fn scatter(self, bits: u64) -> u64 {
        let mut out = 0u64;
        for (j, c) in self.iter().enumerate() {
            if bits >> j & 1 == 1 {
                out |= 1 << c;
            }
        }
        out
    }

    /// All subsets of this set, in descending mask order, ending with the
    /// empty set. Yields `2^len` masks.
    pub fn submasks(self) -> impl Iterator<Item = CoordSet> {
        let m = self.0;
        let mut cur = m;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = cur;
            if cur == 0 {
                done = true;
            } else {
                cur = (cur - 1) & m;
            }
            Some(CoordSet(out))
        })
    }

    pub(crate) fn check_fits(self, n: usize, what: &'static str) -> Result<()> {
        if self.fits(n) {
            Ok(())
        } else {
            Err(Error::Restriction(format!(
                "{what} mask {self} has coordinates at or above n = {n}"
            )))
        }
    }
}

impl fmt::Display for CoordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.0)
    }
}

impl fmt::Debug for CoordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoordSet({:#x})", self.0)
    }
}

impl FromStr for CoordSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s.strip_prefix("0x").unwrap_or(s);
        u64::from_str_radix(digits, 16)
            .map(CoordSet)
            .map_err(|e| Error::Parse(format!("bad coordinate mask {s:?}: {e}")))
    }
}

/// A point of `{-1, +1}^n`, stored as its truth-table index.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Default)]
pub struct Point(u64);

impl Point {
    pub fn new(index: u64) -> Self {
        Point(index)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// True when coordinate `coord` is -1.
    pub fn is_negative(self, coord: usize) -> bool {
        self.0 >> coord & 1 == 1
    }

    /// The value of coordinate `coord`, as +1 or -1.
    pub fn sign<F: Scalar>(self, coord: usize) -> F {
        if self.is_negative(coord) {
            -F::one()
        } else {
            F::one()
        }
    }

    pub fn flip(self, coord: usize) -> Self {
        Point(self.0 ^ (1u64 << coord))
    }

    pub fn flip_set(self, set: CoordSet) -> Self {
        Point(self.0 ^ set.bits())
    }

    /// Coordinates where this point is -1.
    pub fn negatives(self) -> CoordSet {
        CoordSet(self.0)
    }

    /// True when the character chi_S is -1 at this point.
    pub fn chi_negative(self, s: CoordSet) -> bool {
        (self.0 & s.bits()).count_ones() & 1 == 1
    }

    pub(crate) fn check_fits(self, n: usize) -> Result<()> {
        if n >= 64 || self.0 < 1u64 << n {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "point index {:#x} out of range for arity {n}",
                self.0
            )))
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Point({:#x})", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn submask_count_is_two_to_len() {
        let m = CoordSet::new(0b10110);
        assert_eq!(m.submasks().count(), 1 << m.len());
        assert!(m.submasks().all(|s| s.is_subset_of(m)));
    }

    #[test]
    fn iter_ascending() {
        let m = CoordSet::from_coords([5, 1, 9]);
        assert_eq!(m.iter().collect::<Vec<_>>(), vec![1, 5, 9]);
    }

    #[test]
    fn scatter_places_bits_on_members() {
        let m = CoordSet::from_coords([5, 1, 9]);
        assert_eq!(m.scatter(0b000), 0);
        assert_eq!(m.scatter(0b001), 1 << 1);
        assert_eq!(m.scatter(0b110), 1 << 5 | 1 << 9);
        assert_eq!(m.scatter(0b111), 1 << 1 | 1 << 5 | 1 << 9);
    }

    #[test]
    fn chi_sign_matches_parity() {
        let x = Point::new(0b101);
        assert!(!x.chi_negative(CoordSet::new(0b101))); // two negatives in S
        assert!(x.chi_negative(CoordSet::new(0b001)));
    }

    #[test]
    fn full_and_complement() {
        let s = CoordSet::from_coords([0, 2]);
        assert_eq!(s.complement(3), CoordSet::single(1));
        assert_eq!(CoordSet::full(3).bits(), 0b111);
    }

    #[test]
    fn mask_hex_roundtrip() {
        let s = CoordSet::new(0x1a5);
        let text = s.to_string();
        assert_eq!(text.parse::<CoordSet>().unwrap(), s);
        assert_eq!("0x1a5".parse::<CoordSet>().unwrap(), s);
    }
}
