//! Runtime-selected scalar domains.
//!
//! Grammar accepted by [`ScalarDomain::parse`]:
//!
//! ```text
//! gf(p)
//! gf(p^k; modulus=[c_0,...,c_k])
//! quat(Q)
//! ```

use std::fmt;

use super::{DivisionRing, FiniteField, Fq, Quaternion, RationalQuaternions};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum ScalarDomain {
    Finite(FiniteField),
    Quaternion(RationalQuaternions),
}

impl ScalarDomain {
    pub fn parse(spec: &str) -> Result<Self> {
        let compact: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |why: &str| Error::InvalidFieldSpec(spec.to_string(), why.to_string());
        if compact == "quat(Q)" {
            return Ok(Self::Quaternion(RationalQuaternions));
        }
        let body = compact
            .strip_prefix("gf(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| bad("expected gf(p), gf(p^k; modulus=[...]) or quat(Q)"))?;
        let (head, modulus) = match body.split_once(';') {
            Some((h, rest)) => {
                let list = rest
                    .strip_prefix("modulus=[")
                    .and_then(|s| s.strip_suffix(']'))
                    .ok_or_else(|| bad("expected `modulus=[c_0,...,c_k]`"))?;
                let coeffs = list
                    .split(',')
                    .map(|c| c.parse::<i64>().map_err(|_| bad("modulus coefficients must be integers")))
                    .collect::<Result<Vec<_>>>()?;
                (h, Some(coeffs))
            }
            None => (body, None),
        };
        let (p, k) = match head.split_once('^') {
            Some((p, k)) => (p, k.parse::<u32>().map_err(|_| bad("bad exponent"))?),
            None => (head, 1),
        };
        let p: u32 = p.parse().map_err(|_| bad("bad characteristic"))?;
        let field = match (k, modulus) {
            (1, None) => FiniteField::prime(p)?,
            (_, None) => return Err(bad("extension fields need an explicit modulus")),
            (k, Some(m)) => {
                if m.len() != k as usize + 1 {
                    return Err(bad("modulus must have k+1 coefficients"));
                }
                FiniteField::extension(p, &m)?
            }
        };
        Ok(Self::Finite(field))
    }

    pub fn spec(&self) -> String {
        match self {
            Self::Finite(f) => f.spec(),
            Self::Quaternion(q) => q.spec(),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Self::Finite(f) => f.characteristic(),
            Self::Quaternion(q) => q.characteristic(),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Self::Finite(_))
    }

    /// Human-readable description of the center `Z`.
    pub fn center_descriptor(&self) -> String {
        match self {
            Self::Finite(f) => format!("Z = K = {}", f.spec()),
            Self::Quaternion(_) => "Z = Q (rational subfield)".into(),
        }
    }
}

impl fmt::Display for ScalarDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec())
    }
}

#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarPayload {
    Finite(Fq),
    Quaternion(Quaternion),
}

/// A scalar tagged with its domain, for dynamically typed callers.
#[derive(Debug, Clone, PartialEq)]
pub struct Scalar {
    pub domain: ScalarDomain,
    pub payload: ScalarPayload,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

fn apply<R: DivisionRing>(ring: &R, a: &R::Elem, b: &R::Elem, op: ArithOp) -> Result<R::Elem> {
    Ok(match op {
        ArithOp::Add => ring.add(a, b),
        ArithOp::Sub => ring.sub(a, b),
        ArithOp::Mul => ring.mul(a, b),
        ArithOp::Div => ring.div(a, b).ok_or(Error::DivisionByZero)?,
    })
}

impl Scalar {
    pub fn finite(field: &FiniteField, a: Fq) -> Self {
        Self { domain: ScalarDomain::Finite(field.clone()), payload: ScalarPayload::Finite(a) }
    }

    pub fn quaternion(a: Quaternion) -> Self {
        Self { domain: ScalarDomain::Quaternion(RationalQuaternions), payload: ScalarPayload::Quaternion(a) }
    }

    pub fn is_central(&self) -> bool {
        match &self.payload {
            ScalarPayload::Finite(_) => true,
            ScalarPayload::Quaternion(q) => RationalQuaternions.is_central(q),
        }
    }
}

/// Exact `a op b`; `Div` computes `a * b^-1`.
pub fn arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
    if a.domain != b.domain {
        return Err(Error::DomainMismatch);
    }
    let payload = match (&a.domain, &a.payload, &b.payload) {
        (ScalarDomain::Finite(f), ScalarPayload::Finite(x), ScalarPayload::Finite(y)) => {
            ScalarPayload::Finite(apply(f, x, y, op)?)
        }
        (ScalarDomain::Quaternion(q), ScalarPayload::Quaternion(x), ScalarPayload::Quaternion(y)) => {
            ScalarPayload::Quaternion(apply(q, x, y, op)?)
        }
        _ => return Err(Error::DomainMismatch),
    };
    Ok(Scalar { domain: a.domain.clone(), payload })
}
