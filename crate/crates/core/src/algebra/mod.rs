//! Exact arithmetic in the scalar division ring `K` and its center `Z`.
//!
//! Every kernel in this crate is generic over [`DivisionRing`]. A ring value
//! is a cheap-to-clone *context* (field modulus, tables); elements are plain
//! values interpreted through that context.

mod domain;
mod finite;
mod quaternion;

use std::fmt;
use std::hash::Hash;

use crate::error::Result;

pub use domain::{arith, ArithOp, Scalar, ScalarDomain, ScalarPayload};
pub use finite::{FiniteField, Fq};
pub use quaternion::{Quaternion, RationalQuaternions};


/// Whether a listing enumerates a set completely or only samples it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Coverage {
    Exhaustive,
    Sample,
}

/// An ordered sequence of items together with its [`Coverage`].
///
/// A `Sample` listing is never authoritative for membership; callers that
/// need exact answers must use the membership predicates instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Listing<T> {
    pub items: Vec<T>,
    pub coverage: Coverage,
}

impl<T> Listing<T> {
    pub fn exhaustive(items: Vec<T>) -> Self {
        Self { items, coverage: Coverage::Exhaustive }
    }

    pub fn sample(items: Vec<T>) -> Self {
        Self { items, coverage: Coverage::Sample }
    }

    pub fn is_exhaustive(&self) -> bool {
        self.coverage == Coverage::Exhaustive
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn map<U>(self, f: impl FnMut(T) -> U) -> Listing<U> {
        Listing { items: self.items.into_iter().map(f).collect(), coverage: self.coverage }
    }
}

/// Outcome of checking a property over a listing: whether it held on every
/// checked case, how many cases were checked, and whether they were all of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub checked: usize,
    pub coverage: Coverage,
}

impl Verdict {
    pub fn new(holds: bool, checked: usize, coverage: Coverage) -> Self {
        Self { holds, checked, coverage }
    }

    /// Checks `pred` on every item of `listing`, stopping at the first failure.
    pub fn over<T, E>(listing: &Listing<T>, mut pred: impl FnMut(&T) -> std::result::Result<bool, E>) -> std::result::Result<Self, E> {
        let mut checked = 0;
        for item in &listing.items {
            checked += 1;
            if !pred(item)? {
                return Ok(Self::new(false, checked, listing.coverage));
            }
        }
        Ok(Self::new(true, checked, listing.coverage))
    }

    /// Conjunction; the result is exhaustive only if both parts are.
    pub fn and(self, other: Self) -> Self {
        let coverage = if self.coverage == Coverage::Exhaustive && other.coverage == Coverage::Exhaustive {
            Coverage::Exhaustive
        } else {
            Coverage::Sample
        };
        Self::new(self.holds && other.holds, self.checked + other.checked, coverage)
    }

    /// A proof when exhaustive, evidence otherwise.
    pub fn is_proof(&self) -> bool {
        self.holds && self.coverage == Coverage::Exhaustive
    }
}

/// A (not necessarily commutative) field together with the data needed to
/// work over its center.
pub trait DivisionRing: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + Eq + Ord + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Two-sided inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Image of an integer under `Z -> K`.
    #[allow(clippy::wrong_self_convention)]
    fn from_int(&self, n: i64) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// `a * b^-1`.
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// True iff `a` commutes with every element.
    fn is_central(&self, a: &Self::Elem) -> bool;

    fn characteristic(&self) -> u64;

    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;

    fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    /// `dim_Z K`.
    fn center_degree(&self) -> usize;

    /// A `Z`-basis of `K` (each entry of the result of [`Self::center_coords`]
    /// multiplies the corresponding basis element).
    fn center_basis(&self) -> Vec<Self::Elem>;

    /// Coordinates of `a` over [`Self::center_basis`]; every coordinate is central.
    fn center_coords(&self, a: &Self::Elem) -> Vec<Self::Elem>;

    /// Central elements used to build `Z`-combinations: all of `Z` when it is
    /// finite, otherwise a fixed sample.
    fn center_elements(&self) -> Listing<Self::Elem>;

    /// All elements in canonical order for finite rings; a deterministic
    /// sample (seeded) otherwise.
    fn scalars(&self, seed: u64) -> Listing<Self::Elem>;

    /// The configuration string this ring parses from.
    fn spec(&self) -> String;

    fn format_elem(&self, a: &Self::Elem) -> String;
    fn elem_to_json(&self, a: &Self::Elem) -> serde_json::Value;
    fn elem_from_json(&self, v: &serde_json::Value) -> Result<Self::Elem>;
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn check_axioms_exhaustive<R: DivisionRing>(ring: &R) {
        let els = ring.scalars(0);
        assert!(els.is_exhaustive());
        let xs = &els.items;
        for a in xs {
            for b in xs {
                assert_eq!(ring.add(a, b), ring.add(b, a));
                for c in xs {
                    assert_eq!(ring.mul(a, &ring.mul(b, c)), ring.mul(&ring.mul(a, b), c));
                    assert_eq!(ring.add(a, &ring.add(b, c)), ring.add(&ring.add(a, b), c));
                    assert_eq!(
                        ring.mul(a, &ring.add(b, c)),
                        ring.add(&ring.mul(a, b), &ring.mul(a, c))
                    );
                    assert_eq!(
                        ring.mul(&ring.add(a, b), c),
                        ring.add(&ring.mul(a, c), &ring.mul(b, c))
                    );
                }
            }
            if !ring.is_zero(a) {
                let ai = ring.inv(a).unwrap();
                assert!(ring.is_one(&ring.mul(a, &ai)));
                assert!(ring.is_one(&ring.mul(&ai, a)));
            } else {
                assert!(ring.inv(a).is_none());
            }
            assert!(ring.is_zero(&ring.add(a, &ring.neg(a))));
        }
    }

    #[test]
    fn finite_fields_satisfy_axioms() {
        for spec in ["gf(2)", "gf(3)", "gf(5)", "gf(2^2; modulus=[1,1,1])", "gf(3^2; modulus=[1,0,1])"] {
            let ScalarDomain::Finite(f) = ScalarDomain::parse(spec).unwrap() else { panic!() };
            check_axioms_exhaustive(&f);
        }
    }

    #[test]
    fn centrality_matches_commutation() {
        let q = RationalQuaternions;
        let sample = q.scalars(3);
        for a in &sample.items {
            let commutes = sample.items.iter().all(|s| q.mul(a, s) == q.mul(s, a));
            assert_eq!(commutes, q.is_central(a), "{a}");
        }
        let f = FiniteField::extension(2, &[1, 1, 1]).unwrap();
        for a in f.scalars(0).items {
            assert!(f.is_central(&a));
        }
    }

    #[test]
    fn center_coords_reassemble() {
        let q = RationalQuaternions;
        let basis = q.center_basis();
        for a in q.scalars(9).items {
            let coords = q.center_coords(&a);
            assert!(coords.iter().all(|c| q.is_central(c)));
            let back = coords
                .iter()
                .zip(&basis)
                .fold(q.zero(), |acc, (c, e)| q.add(&acc, &q.mul(c, e)));
            assert_eq!(back, a);
        }
    }
}
