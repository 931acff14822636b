use std::fmt;
use std::sync::Arc;

use super::{DivisionRing, Listing};
use crate::error::{Error, Result};

/// Tables are built for fields up to this order.
const TABLE_LIMIT: u32 = 256;
/// Largest supported field order.
const ORDER_LIMIT: u64 = 1 << 24;

/// An element of GF(p^k), encoded as the integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
/// of its residue polynomial `c_0 + c_1 x + ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fq(pub u32);

/// GF(p^k) given by an explicit monic irreducible modulus.
#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<Inner>,
}

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, `modulus[i]` is the coefficient of `x^i`, length `k + 1`.
    modulus: Vec<u32>,
    mul_table: Option<Vec<u32>>,
    inv_table: Option<Vec<u32>>,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p).
fn poly_rem(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = a.pop().unwrap() % p;
        if lead != 0 {
            let shift = a.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                let t = lead * c % p;
                a[shift + i] = (a[shift + i] + p - t) % p;
            }
        }
    }
    a
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                div.push(c % p);
                c /= p;
            }
            div.push(1);
            if poly_rem(modulus.to_vec(), &div, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidFieldSpec(format!("gf({p})"), "p is not prime".into()));
        }
        Self::build(p, vec![0, 1])
    }

    /// GF(p^k) with residue arithmetic modulo `modulus = [c_0, ..., c_k]`.
    ///
    /// The modulus is scaled to be monic and must be irreducible over GF(p).
    pub fn extension(p: u32, modulus: &[i64]) -> Result<Self> {
        let spec = format!("gf({p}^{}; modulus={modulus:?})", modulus.len().saturating_sub(1));
        if !is_prime(p) {
            return Err(Error::InvalidFieldSpec(spec, "p is not prime".into()));
        }
        let pm = p as i64;
        let mut m: Vec<u64> = modulus.iter().map(|&c| c.rem_euclid(pm) as u64).collect();
        while m.last() == Some(&0) {
            m.pop();
        }
        if m.len() != modulus.len() || m.len() < 2 {
            return Err(Error::InvalidFieldSpec(spec, "leading coefficient vanishes mod p or degree < 1".into()));
        }
        let lead_inv = pow_mod(*m.last().unwrap(), p as u64 - 2, p as u64);
        for c in m.iter_mut() {
            *c = *c * lead_inv % p as u64;
        }
        if !is_irreducible(&m, p as u64) {
            return Err(Error::InvalidFieldSpec(spec, "modulus is reducible".into()));
        }
        Self::build(p, m.into_iter().map(|c| c as u32).collect())
    }

    fn build(p: u32, modulus: Vec<u32>) -> Result<Self> {
        let k = (modulus.len() - 1) as u32;
        let q64 = (p as u64).checked_pow(k).filter(|&q| q <= ORDER_LIMIT).ok_or_else(|| {
            Error::InvalidFieldSpec(format!("gf({p}^{k})"), format!("order exceeds {ORDER_LIMIT}"))
        })?;
        let q = q64 as u32;
        let mut inner = Inner { p, k, q, modulus, mul_table: None, inv_table: None };
        if q <= TABLE_LIMIT {
            let mut mt = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    mt[(a * q + b) as usize] = inner.mul_slow(a, b);
                }
            }
            let mut it = vec![0u32; q as usize];
            for a in 1..q {
                it[a as usize] = (1..q).find(|&b| mt[(a * q + b) as usize] == 1).unwrap();
            }
            inner.mul_table = Some(mt);
            inner.inv_table = Some(it);
        }
        Ok(Self { inner: Arc::new(inner) })
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.k
    }

    pub fn q(&self) -> u32 {
        self.inner.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    /// Residue-polynomial coefficients `c_0..c_{k-1}` of an element.
    pub fn coeffs(&self, a: Fq) -> Vec<u32> {
        self.inner.digits(a.0)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fq> {
        if coeffs.len() > self.inner.k as usize || coeffs.iter().any(|&c| c >= self.inner.p) {
            return Err(Error::InvalidScalar(format!("{coeffs:?} is not a reduced residue")));
        }
        Ok(Fq(self.inner.undigits(coeffs)))
    }
}

impl Inner {
    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            out.push(a % self.p);
            a /= self.p;
        }
        out
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; da.len() + db.len() - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let m: Vec<u64> = self.modulus.iter().map(|&c| c as u64).collect();
        let r = poly_rem(prod, &m, p);
        let d: Vec<u32> = r.into_iter().map(|c| c as u32).collect();
        self.undigits(&d)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.mul_table {
            Some(t) => t[(a * self.q + b) as usize],
            None if self.k == 1 => ((a as u64 * b as u64) % self.p as u64) as u32,
            None => self.mul_slow(a, b),
        }
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let da = self.digits(a);
        let db = self.digits(b);
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.undigits(&s)
    }

    fn neg(&self, a: u32) -> u32 {
        let d: Vec<u32> = self.digits(a).into_iter().map(|x| (self.p - x) % self.p).collect();
        self.undigits(&d)
    }

    fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        if let Some(t) = &self.inv_table {
            return Some(t[a as usize]);
        }
        // a^(q-2) by square and multiply
        let mut e = self.q - 2;
        let mut base = a;
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        Some(r)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec())
    }
}

impl DivisionRing for FiniteField {
    type Elem = Fq;

    fn zero(&self) -> Fq {
        Fq(0)
    }

    fn one(&self) -> Fq {
        Fq(1)
    }

    fn add(&self, a: &Fq, b: &Fq) -> Fq {
        Fq(self.inner.add(a.0, b.0))
    }

    fn neg(&self, a: &Fq) -> Fq {
        Fq(self.inner.neg(a.0))
    }

    fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        Fq(self.inner.mul(a.0, b.0))
    }

    fn inv(&self, a: &Fq) -> Option<Fq> {
        self.inner.inv(a.0).map(Fq)
    }

    fn from_int(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.inner.p as i64) as u32)
    }

    fn is_central(&self, _a: &Fq) -> bool {
        true
    }

    fn characteristic(&self) -> u64 {
        self.inner.p as u64
    }

    fn order(&self) -> Option<u64> {
        Some(self.inner.q as u64)
    }

    fn center_degree(&self) -> usize {
        1
    }

    fn center_basis(&self) -> Vec<Fq> {
        vec![Fq(1)]
    }

    fn center_coords(&self, a: &Fq) -> Vec<Fq> {
        vec![*a]
    }

    fn center_elements(&self) -> Listing<Fq> {
        self.scalars(0)
    }

    fn scalars(&self, _seed: u64) -> Listing<Fq> {
        Listing::exhaustive((0..self.inner.q).map(Fq).collect())
    }

    fn spec(&self) -> String {
        if self.inner.k == 1 {
            format!("gf({})", self.inner.p)
        } else {
            let m: Vec<String> = self.inner.modulus.iter().map(|c| c.to_string()).collect();
            format!("gf({}^{}; modulus=[{}])", self.inner.p, self.inner.k, m.join(","))
        }
    }

    fn format_elem(&self, a: &Fq) -> String {
        if self.inner.k == 1 {
            return a.0.to_string();
        }
        let d = self.inner.digits(a.0);
        let terms: Vec<String> = d
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
                match i {
                    0 => coef,
                    1 => format!("{coef}x"),
                    _ => format!("{coef}x^{i}"),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    fn elem_to_json(&self, a: &Fq) -> serde_json::Value {
        serde_json::Value::from(a.0)
    }

    fn elem_from_json(&self, v: &serde_json::Value) -> Result<Fq> {
        let n = v
            .as_u64()
            .ok_or_else(|| Error::InvalidScalar(format!("expected a residue code, got {v}")))?;
        if n >= self.inner.q as u64 {
            return Err(Error::InvalidScalar(format!("{n} is not below q={}", self.inner.q)));
        }
        Ok(Fq(n as u32))
    }
}
