use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DivisionRing, Listing};
use crate::error::{Error, Result};

/// Size of the seeded pseudorandom batch appended to the `{-1,0,1}^4` grid.
const RANDOM_BATCH: usize = 32;

/// `re + i·i + j·j + k·k` with exact rational components.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quaternion {
    pub re: BigRational,
    pub i: BigRational,
    pub j: BigRational,
    pub k: BigRational,
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Quaternion {
    pub fn new(re: BigRational, i: BigRational, j: BigRational, k: BigRational) -> Self {
        Self { re, i, j, k }
    }

    pub fn from_ints(re: i64, i: i64, j: i64, k: i64) -> Self {
        Self::new(int(re), int(i), int(j), int(k))
    }

    pub fn rational(r: BigRational) -> Self {
        Self::new(r, int(0), int(0), int(0))
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0, 0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0, 0, 0)
    }

    pub fn unit_i() -> Self {
        Self::from_ints(0, 1, 0, 0)
    }

    pub fn unit_j() -> Self {
        Self::from_ints(0, 0, 1, 0)
    }

    pub fn unit_k() -> Self {
        Self::from_ints(0, 0, 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.i.is_zero() && self.j.is_zero() && self.k.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.i.is_zero() && self.j.is_zero() && self.k.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.i, -&self.j, -&self.k)
    }

    /// Reduced norm `a² + b² + c² + d²`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.i * &self.i + &self.j * &self.j + &self.k * &self.k
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conj();
        Some(Self::new(&c.re / &n, &c.i / &n, &c.j / &n, &c.k / &n))
    }

    pub fn components(&self) -> [&BigRational; 4] {
        [&self.re, &self.i, &self.j, &self.k]
    }
}

impl Add for &Quaternion {
    type Output = Quaternion;
    fn add(self, o: &Quaternion) -> Quaternion {
        Quaternion::new(&self.re + &o.re, &self.i + &o.i, &self.j + &o.j, &self.k + &o.k)
    }
}

impl Sub for &Quaternion {
    type Output = Quaternion;
    fn sub(self, o: &Quaternion) -> Quaternion {
        Quaternion::new(&self.re - &o.re, &self.i - &o.i, &self.j - &o.j, &self.k - &o.k)
    }
}

impl Neg for &Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-&self.re, -&self.i, -&self.j, -&self.k)
    }
}

impl Mul for &Quaternion {
    type Output = Quaternion;
    fn mul(self, o: &Quaternion) -> Quaternion {
        let (a1, b1, c1, d1) = (&self.re, &self.i, &self.j, &self.k);
        let (a2, b2, c2, d2) = (&o.re, &o.i, &o.j, &o.k);
        Quaternion::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (c, unit) in self.components().into_iter().zip(["", "i", "j", "k"]) {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if !out.is_empty() || neg {
                out.push(if neg { '-' } else { '+' });
            }
            if !(mag.is_one() && !unit.is_empty()) {
                out.push_str(&mag.to_string());
            }
            out.push_str(unit);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The rational Hamilton quaternions `(-1,-1)_Q`, center `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RationalQuaternions;

fn parse_rational(v: &serde_json::Value) -> Result<BigRational> {
    if let Some(n) = v.as_i64() {
        return Ok(int(n));
    }
    let s = v
        .as_str()
        .ok_or_else(|| Error::InvalidScalar(format!("expected rational, got {v}")))?;
    let bad = || Error::InvalidScalar(format!("cannot parse rational `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

impl DivisionRing for RationalQuaternions {
    type Elem = Quaternion;

    fn zero(&self) -> Quaternion {
        Quaternion::zero()
    }

    fn one(&self) -> Quaternion {
        Quaternion::one()
    }

    fn add(&self, a: &Quaternion, b: &Quaternion) -> Quaternion {
        a + b
    }

    fn neg(&self, a: &Quaternion) -> Quaternion {
        -a
    }

    fn sub(&self, a: &Quaternion, b: &Quaternion) -> Quaternion {
        a - b
    }

    fn mul(&self, a: &Quaternion, b: &Quaternion) -> Quaternion {
        a * b
    }

    fn inv(&self, a: &Quaternion) -> Option<Quaternion> {
        a.inverse()
    }

    fn from_int(&self, n: i64) -> Quaternion {
        Quaternion::from_ints(n, 0, 0, 0)
    }

    fn is_zero(&self, a: &Quaternion) -> bool {
        a.is_zero()
    }

    fn is_central(&self, a: &Quaternion) -> bool {
        a.is_real()
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn order(&self) -> Option<u64> {
        None
    }

    fn center_degree(&self) -> usize {
        4
    }

    fn center_basis(&self) -> Vec<Quaternion> {
        vec![Quaternion::one(), Quaternion::unit_i(), Quaternion::unit_j(), Quaternion::unit_k()]
    }

    fn center_coords(&self, a: &Quaternion) -> Vec<Quaternion> {
        a.components().into_iter().map(|c| Quaternion::rational(c.clone())).collect()
    }

    fn center_elements(&self) -> Listing<Quaternion> {
        Listing::sample((-1..=1).map(|n| self.from_int(n)).collect())
    }

    /// The 81 quaternions with components in `{-1,0,1}` (lexicographic), then a
    /// seeded batch with small rational components.
    fn scalars(&self, seed: u64) -> Listing<Quaternion> {
        let mut items = Vec::with_capacity(81 + RANDOM_BATCH);
        for a in -1..=1 {
            for b in -1..=1 {
                for c in -1..=1 {
                    for d in -1..=1 {
                        items.push(Quaternion::from_ints(a, b, c, d));
                    }
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let comp = |rng: &mut ChaCha8Rng| {
            BigRational::new(BigInt::from(rng.gen_range(-4i64..=4)), BigInt::from(rng.gen_range(1i64..=3)))
        };
        // distinct draws only, so the listing never repeats an element
        let mut seen: std::collections::BTreeSet<Quaternion> = items.iter().cloned().collect();
        while items.len() < 81 + RANDOM_BATCH {
            let x = Quaternion::new(comp(&mut rng), comp(&mut rng), comp(&mut rng), comp(&mut rng));
            if seen.insert(x.clone()) {
                items.push(x);
            }
        }
        Listing::sample(items)
    }

    fn spec(&self) -> String {
        "quat(Q)".into()
    }

    fn format_elem(&self, a: &Quaternion) -> String {
        a.to_string()
    }

    fn elem_to_json(&self, a: &Quaternion) -> serde_json::Value {
        serde_json::Value::Array(a.components().into_iter().map(|c| c.to_string().into()).collect())
    }

    fn elem_from_json(&self, v: &serde_json::Value) -> Result<Quaternion> {
        match v {
            serde_json::Value::Array(xs) if xs.len() == 4 => Ok(Quaternion::new(
                parse_rational(&xs[0])?,
                parse_rational(&xs[1])?,
                parse_rational(&xs[2])?,
                parse_rational(&xs[3])?,
            )),
            other => Ok(Quaternion::rational(parse_rational(other).map_err(|_| {
                Error::InvalidScalar(format!("expected [re,i,j,k] or a rational, got {other}"))
            })?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn defining_relations() {
        let (i, j, k) = (Quaternion::unit_i(), Quaternion::unit_j(), Quaternion::unit_k());
        assert_eq!(&i * &j, k);
        assert_eq!(&j * &i, -&k);
        assert_eq!(&i * &i, Quaternion::from_ints(-1, 0, 0, 0));
        assert_eq!(&j * &j, Quaternion::from_ints(-1, 0, 0, 0));
        assert_eq!(i.inverse().unwrap(), -&i);
    }

    #[test]
    fn centrality() {
        let q = RationalQuaternions;
        let three_halves = Quaternion::rational(BigRational::new(3.into(), 2.into()));
        assert!(q.is_central(&three_halves));
        assert!(!q.is_central(&Quaternion::unit_i()));
    }

    #[test]
    fn sample_grid_first() {
        let s = RationalQuaternions.scalars(0);
        assert!(!s.is_exhaustive());
        assert_eq!(s.items.len(), 81 + RANDOM_BATCH);
        assert_eq!(s.items[0], Quaternion::from_ints(-1, -1, -1, -1));
        assert_eq!(s.items[40], Quaternion::zero());
        assert_eq!(s.items[80], Quaternion::from_ints(1, 1, 1, 1));
        assert_eq!(RationalQuaternions.scalars(0), RationalQuaternions.scalars(0));
    }

    #[test]
    fn json_round_trip_and_display() {
        let q = RationalQuaternions;
        let a = Quaternion::new(BigRational::new(1.into(), 2.into()), int(-1), int(0), int(3));
        assert_eq!(a.to_string(), "1/2-i+3k");
        assert_eq!(q.elem_from_json(&q.elem_to_json(&a)).unwrap(), a);
        assert_eq!(q.elem_from_json(&serde_json::json!(2)).unwrap(), q.from_int(2));
        assert!(q.elem_from_json(&serde_json::json!("1/0")).is_err());
    }

    fn arb_q() -> impl Strategy<Value = Quaternion> {
        let c = (-6i64..=6, 1i64..=4).prop_map(|(n, d)| BigRational::new(n.into(), d.into()));
        (c.clone(), c.clone(), c.clone(), c).prop_map(|(a, b, c, d)| Quaternion::new(a, b, c, d))
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(a in arb_q(), b in arb_q()) {
            prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
        }

        #[test]
        fn ring_axioms(a in arb_q(), b in arb_q(), c in arb_q()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            if let Some(ai) = a.inverse() {
                prop_assert_eq!(&a * &ai, Quaternion::one());
                prop_assert_eq!(&ai * &a, Quaternion::one());
            }
        }
    }
}
