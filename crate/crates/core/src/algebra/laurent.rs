//! Sparse Laurent polynomials in one variable `q` with arbitrary-precision integer
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of `Z[q, q^-1]`.
///
/// Terms are kept in a map ordered by exponent and never store a zero
/// coefficient, so structural equality is mathematical equality.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^exp`.
    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// `1 + q + ... + q^(n-1)`.
    pub fn q_integer(n: u32) -> Self {
        Self::from_terms((0..i64::from(n)).map(|e| (e, 1)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(BigInt::is_one)
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Iterates `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// True if every exponent is nonnegative, i.e. the value lies in `Z[q]`.
    pub fn is_polynomial(&self) -> bool {
        self.min_exponent().is_none_or(|e| e >= 0)
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// The single constant term if the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Sum of the coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Evaluates at an integer point; `None` if a negative power is taken at a
    /// non-unit.
    pub fn eval(&self, q: i64) -> Option<BigInt> {
        let base = BigInt::from(q);
        let mut acc = BigInt::zero();
        for (&e, c) in &self.terms {
            let v = if e >= 0 {
                num_traits::pow(base.clone(), e.to_usize()?)
            } else {
                match q {
                    1 => BigInt::one(),
                    -1 => num_traits::pow(base.clone(), e.unsigned_abs().to_usize()?),
                    _ => return None,
                }
            };
            acc += c * v;
        }
        Some(acc)
    }

    /// The substitution `q -> q^-1`.
    pub fn invert_variable(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Multiplication by the unit `q^k`.
    pub fn shift(&self, k: i64) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (&e, c) in &self.terms {
            terms.insert(e.checked_add(k).ok_or(Error::ExponentOverflow)?, c.clone());
        }
        Ok(Self { terms })
    }

    /// `q^k` as a polynomial.
    pub fn q_pow(k: i64) -> Self {
        Self::monomial(1, k)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                let e = a.checked_add(b).ok_or(Error::ExponentOverflow)?;
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    /// Exact division by a nonzero integer.
    pub fn div_exact_int(&self, c: &BigInt) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::InexactDivision("division by zero".into()));
        }
        let mut terms = BTreeMap::new();
        for (&e, x) in &self.terms {
            let (quot, rem) = x.div_rem(c);
            if !rem.is_zero() {
                return Err(Error::InexactDivision(format!("{self} is not divisible by {c}")));
            }
            terms.insert(e, quot);
        }
        Ok(Self { terms })
    }

    /// Exact division by an arbitrary nonzero Laurent polynomial.
    ///
    /// Long division from the top degree; fails if any step needs a
    /// non-integral coefficient or a remainder is left over.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (Some(dmin), Some(dmax)) = (divisor.min_exponent(), divisor.max_exponent()) else {
            return Err(Error::InexactDivision("division by zero".into()));
        };
        let Some(amin) = self.min_exponent() else {
            return Ok(Self::zero());
        };
        let lead = divisor.terms[&dmax].clone();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        // Every quotient exponent is at least amin - dmin.
        let floor = amin - dmin;
        while let Some(rmax) = rem.max_exponent() {
            let e = rmax - dmax;
            if e < floor {
                return Err(Error::InexactDivision(format!("{self} is not divisible by {divisor}")));
            }
            let (c, r) = rem.terms[&rmax].div_rem(&lead);
            if !r.is_zero() {
                return Err(Error::InexactDivision(format!("{self} is not divisible by {divisor}")));
            }
            let step = Self::monomial(c, e);
            rem = &rem - &(&step * divisor);
            quot += &step;
        }
        Ok(quot)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        Self::constant(1)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, -c);
        }
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    /// Panics on exponent overflow; use [`LaurentPoly::checked_mul`] to recover.
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("exponent overflow")
    }
}

impl Mul<&LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        &self * rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        Self {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, c: &BigInt, e: i64) -> fmt::Result {
    let var = match e {
        0 => String::new(),
        1 => "q".to_string(),
        _ => format!("q^{e}"),
    };
    if e == 0 {
        write!(f, "{c}")
    } else if c.is_one() {
        write!(f, "{var}")
    } else {
        write!(f, "{c}*{var}")
    }
}

/// Canonical text form: increasing exponents, e.g. `3*q^-1 + 1 + 2*q^2`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write_monomial(f, &c.abs(), e)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Parses the canonical text form (and small variations such as `q^2 - 1`).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed Laurent polynomial `{s}`"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut out = Self::zero();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ => (1, rest),
            };
            // A term ends at the next + or - that is not an exponent sign.
            let bytes = body.as_bytes();
            let mut end = bytes.len();
            for i in 1..bytes.len() {
                if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                    end = i;
                    break;
                }
            }
            let term = &body[..end];
            rest = &body[end..];
            let (coef, var) = match term.split_once('*') {
                Some((c, v)) => (c.parse::<BigInt>().map_err(|_| bad())?, Some(v)),
                None if term.starts_with('q') => (BigInt::one(), Some(term)),
                None => (term.parse::<BigInt>().map_err(|_| bad())?, None),
            };
            let exp = match var {
                None => 0,
                Some("q") => 1,
                Some(v) => v
                    .strip_prefix("q^")
                    .and_then(|x| x.parse::<i64>().ok())
                    .ok_or_else(bad)?,
            };
            out.add_term(exp, coef * sign);
        }
        Ok(out)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            match c.to_i64() {
                Some(v) => map.serialize_entry(&e.to_string(), &v)?,
                None => map.serialize_entry(&e.to_string(), &c.to_string())?,
            }
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct PolyVisitor;
        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = LaurentPoly;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an object mapping exponent strings to integer coefficients")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> std::result::Result<Self::Value, A::Error> {
                let mut p = LaurentPoly::zero();
                while let Some((k, v)) = access.next_entry::<String, serde_json::Value>()? {
                    let e: i64 = k.parse().map_err(de::Error::custom)?;
                    let c: BigInt = match v {
                        serde_json::Value::Number(n) => n.to_string().parse().map_err(de::Error::custom)?,
                        serde_json::Value::String(s) => s.parse().map_err(de::Error::custom)?,
                        _ => return Err(de::Error::custom("coefficient must be an integer")),
                    };
                    p.add_term(e, c);
                }
                Ok(p)
            }
        }
        deserializer.deserialize_map(PolyVisitor)
    }
}
