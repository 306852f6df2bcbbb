//! Finite fields GF(p^e).
//!
//! Elements are stored as their canonical integer encoding: the element
//! `c_0 + c_1 a + ... + c_{e-1} a^{e-1}` (with `a` the residue class of `z`
//! modulo the defining polynomial) is the integer `c_0 + c_1 p + ... +
//! c_{e-1} p^{e-1}`. The encoding of the zero element is `0`, the prime
//! subfield occupies `0..p`, and enumeration order is the integer order.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Upper bound on the number of field elements unless overridden.
pub const DEFAULT_MAX_FIELD_SIZE: u64 = 1 << 20;

/// Fields with at most this many elements get precomputed multiplication
/// and inversion tables when they are proper extensions.
const TABLE_LIMIT: u32 = 256;

/// Raw element handle. Only meaningful together with the [`Field`] it came
/// from; arithmetic goes through the field's methods.
#[derive(
    Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// The canonical integer encoding of the element.
    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    mul: Vec<u32>,
    inv: Vec<u32>,
}

struct Inner {
    p: u32,
    e: u32,
    q: u32,
    /// Monic defining polynomial over GF(p), low-to-high, length `e + 1`.
    /// Empty for prime fields.
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

/// A finite field GF(p^e). Cheap to clone; clones share one description.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// The prime field GF(p).
    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1, None)
    }

    /// GF(p^e) under the default size limit. With `modulus == None` and
    /// `e > 1` the lexicographically least monic irreducible polynomial of
    /// degree `e` is used (compared by its integer encoding).
    pub fn new(p: u64, e: u32, modulus: Option<&[u64]>) -> Result<Field> {
        Field::with_limit(p, e, modulus, DEFAULT_MAX_FIELD_SIZE)
    }

    pub fn with_limit(p: u64, e: u32, modulus: Option<&[u64]>, limit: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::InvalidExtensionDegree(e));
        }
        let size = (p as u128).checked_pow(e).unwrap_or(u128::MAX);
        if size > limit as u128 || size > u32::MAX as u128 {
            return Err(Error::FieldTooLarge {
                size: size.min(u64::MAX as u128) as u64,
                limit,
            });
        }
        let p32 = p as u32;
        if e == 1 {
            if let Some(m) = modulus {
                // A degree-one modulus is harmless but must still be valid.
                let m = trim(m, p);
                if m.len() != 2 || m[1] == 0 {
                    return Err(Error::InvalidModulus(
                        "a prime field takes a linear modulus or none".into(),
                    ));
                }
            }
            return Ok(Field(Arc::new(Inner {
                p: p32,
                e,
                q: p32,
                modulus: Vec::new(),
                tables: None,
            })));
        }

        let base = Field::prime(p)?;
        let modulus = match modulus {
            Some(m) => {
                let m = trim(m, p);
                if m.len() != e as usize + 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected degree {e}, got degree {}",
                        m.len() as i64 - 1
                    )));
                }
                if m[e as usize] != 1 {
                    return Err(Error::InvalidModulus("modulus must be monic".into()));
                }
                let poly = Poly::from_values(&base, &m);
                if !poly.is_irreducible()? {
                    return Err(Error::InvalidModulus(format!(
                        "{poly} is reducible over GF({p})"
                    )));
                }
                m
            }
            None => least_irreducible(&base, e)?,
        };

        let mut inner = Inner {
            p: p32,
            e,
            q: size as u32,
            modulus,
            tables: None,
        };
        if inner.q <= TABLE_LIMIT {
            let q = inner.q as usize;
            let mut mul = vec![0u32; q * q];
            for a in 0..q {
                for b in 0..q {
                    mul[a * q + b] = inner.mul_slow(a as u32, b as u32);
                }
            }
            let mut inv = vec![0u32; q];
            for a in 1..q {
                inv[a] = (1..q as u32)
                    .find(|&b| mul[a * q + b as usize] == 1)
                    .expect("every nonzero element of a field is invertible");
            }
            inner.tables = Some(Tables { mul, inv });
        }
        Ok(Field(Arc::new(inner)))
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.e
    }

    /// Number of elements q = p^e.
    #[inline]
    pub fn size(&self) -> u32 {
        self.0.q
    }

    #[inline]
    pub fn is_prime_field(&self) -> bool {
        self.0.e == 1
    }

    /// Monic defining polynomial (low-to-high coefficients), `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u32]> {
        if self.0.e == 1 {
            None
        } else {
            Some(&self.0.modulus)
        }
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    #[inline]
    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// Element with the given canonical encoding.
    pub fn elem(&self, value: u64) -> Result<Elem> {
        if value >= self.0.q as u64 {
            return Err(Error::InvalidArgument(format!(
                "{value} is not an element encoding of {self}"
            )));
        }
        Ok(Elem(value as u32))
    }

    /// Image of an integer in the prime subfield.
    #[inline]
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// Element from its coefficient vector over GF(p) (length at most e).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Elem> {
        if coeffs.len() > self.0.e as usize || coeffs.iter().any(|&c| c >= self.0.p as u64) {
            return Err(Error::InvalidArgument(format!(
                "{coeffs:?} is not a reduced coefficient vector of {self}"
            )));
        }
        let mut v = 0u32;
        for &c in coeffs.iter().rev() {
            v = v * self.0.p + c as u32;
        }
        Ok(Elem(v))
    }

    /// Coefficient vector of an element over GF(p), always of length e.
    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.0.e as usize);
        let mut v = a.0;
        for _ in 0..self.0.e {
            out.push(v % self.0.p);
            v /= self.0.p;
        }
        out
    }

    /// All elements in encoding order, zero first.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.0.q).map(Elem)
    }

    /// Nonzero elements in encoding order.
    pub fn units(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.0.q).map(Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.0.p;
        if self.0.e == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= p { s - p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let (mut out, mut place) = (0u32, 1u32);
        while x > 0 || y > 0 {
            let d = (x % p + y % p) % p;
            out += d * place;
            place *= p;
            x /= p;
            y /= p;
        }
        Elem(out)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.0.p;
        if self.0.e == 1 {
            return Elem(if a.0 == 0 { 0 } else { p - a.0 });
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        while x > 0 {
            let d = x % p;
            out += ((p - d) % p) * place;
            place *= p;
            x /= p;
        }
        Elem(out)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if self.0.e == 1 {
            return Elem(((a.0 as u64 * b.0 as u64) % self.0.p as u64) as u32);
        }
        if let Some(t) = &self.0.tables {
            return Elem(t.mul[(a.0 * self.0.q + b.0) as usize]);
        }
        Elem(self.0.mul_slow(a.0, b.0))
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        if self.0.e == 1 {
            return Ok(Elem(inv_mod(a.0 as i64, self.0.p as i64) as u32));
        }
        if let Some(t) = &self.0.tables {
            return Ok(Elem(t.inv[a.0 as usize]));
        }
        Ok(self.pow(a, self.0.q as u64 - 2))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, mut k: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Wraps a raw element into a field-tagged value.
    pub fn wrap(&self, a: Elem) -> FieldElem {
        FieldElem {
            field: self.clone(),
            elem: a,
        }
    }

    /// Stable identity used to compare fields cheaply.
    #[inline]
    pub fn same(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self == other
    }

    /// The `p^e` notation accepted by [`Field::from_str`].
    pub fn notation(&self) -> String {
        if self.0.e == 1 {
            format!("{}", self.0.p)
        } else {
            format!("{}^{}", self.0.p, self.0.e)
        }
    }
}

impl Inner {
    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let (p, e) = (self.p as u64, self.e as usize);
        let digits = |mut v: u32| {
            let mut d = vec![0u64; e];
            for x in d.iter_mut() {
                *x = (v % self.p) as u64;
                v /= self.p;
            }
            d
        };
        let (da, db) = (digits(a), digits(b));
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // Reduce using the monic modulus: z^e = -(m_0 + ... + m_{e-1} z^{e-1}).
        for k in (e..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..e {
                let m = self.modulus[i] as u64;
                prod[k - e + i] = (prod[k - e + i] + (p - c) * m) % p;
            }
        }
        prod[..e].iter().rev().fold(0u64, |acc, &d| acc * p + d) as u32
    }
}

fn inv_mod(a: i64, m: i64) -> i64 {
    let (mut old_r, mut r) = (a, m);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    old_s.rem_euclid(m)
}

fn trim(m: &[u64], p: u64) -> Vec<u32> {
    let mut v: Vec<u32> = m.iter().map(|&c| (c % p) as u32).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn least_irreducible(base: &Field, e: u32) -> Result<Vec<u32>> {
    let p = base.characteristic() as u64;
    let count = p.pow(e);
    for code in 0..count {
        let mut coeffs = Vec::with_capacity(e as usize + 1);
        let mut v = code;
        for _ in 0..e {
            coeffs.push((v % p) as u32);
            v /= p;
        }
        coeffs.push(1);
        let poly = Poly::from_values(base, &coeffs);
        if poly.is_irreducible()? {
            return Ok(coeffs);
        }
    }
    Err(Error::Internal(format!(
        "no irreducible polynomial of degree {e} over GF({p})"
    )))
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.e == other.0.e && self.0.modulus == other.0.modulus
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.e == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.e)
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Parses `"p"` or `"p^e"`. A bare number is always read as the prime
    /// itself, so `"4"` is rejected rather than interpreted as GF(2^2).
    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        let (p, e) = match s.split_once('^') {
            Some((p, e)) => (p.trim(), e.trim()),
            None => (s, "1"),
        };
        let p: u64 = p
            .parse()
            .map_err(|_| Error::Parse(format!("bad characteristic in field spec {s:?}")))?;
        let e: u32 = e
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent in field spec {s:?}")))?;
        Field::new(p, e, None)
    }
}

/// A field element that remembers its field; arithmetic is checked.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElem {
    field: Field,
    elem: Elem,
}

impl FieldElem {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn elem(&self) -> Elem {
        self.elem
    }

    /// Coefficients over GF(p), length exactly e.
    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.elem)
    }

    pub fn is_zero(&self) -> bool {
        self.elem.is_zero()
    }

    fn check(&self, other: &FieldElem) -> Result<()> {
        if self.field.same(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &FieldElem) -> Result<FieldElem> {
        self.check(other)?;
        Ok(self.field.wrap(self.field.add(self.elem, other.elem)))
    }

    pub fn sub(&self, other: &FieldElem) -> Result<FieldElem> {
        self.check(other)?;
        Ok(self.field.wrap(self.field.sub(self.elem, other.elem)))
    }

    pub fn mul(&self, other: &FieldElem) -> Result<FieldElem> {
        self.check(other)?;
        Ok(self.field.wrap(self.field.mul(self.elem, other.elem)))
    }

    pub fn neg(&self) -> FieldElem {
        self.field.wrap(self.field.neg(self.elem))
    }

    pub fn inv(&self) -> Result<FieldElem> {
        Ok(self.field.wrap(self.field.inv(self.elem)?))
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.field, self.elem)
    }
}

/// Evaluates a polynomial with coefficients in the prime field GF(p) at a
/// point of an extension GF(p^k), embedding coefficients as constants.
pub fn extension_eval(poly: &Poly, point: &FieldElem) -> Result<FieldElem> {
    let base = poly.field();
    if !base.is_prime_field() {
        return Err(Error::NotPrimeField);
    }
    let ext = point.field();
    if ext.characteristic() != base.characteristic() {
        return Err(Error::FieldMismatch);
    }
    let mut acc = Elem::ZERO;
    for &c in poly.coeffs().iter().rev() {
        // Prime-subfield elements share their encoding across extensions.
        acc = ext.add(ext.mul(acc, point.elem()), Elem(c.0));
    }
    Ok(ext.wrap(acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction() {
        let f2 = Field::new(2, 1, None).unwrap();
        assert_eq!(f2.size(), 2);
        let f4 = Field::new(2, 2, Some(&[1, 1, 1])).unwrap();
        assert_eq!(f4.size(), 4);
        assert_eq!(Field::new(4, 1, None).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(
            Field::new(2, 2, Some(&[1, 0, 1])),
            Err(Error::InvalidModulus(_))
        ));
        assert!(matches!(
            Field::new(2, 2, Some(&[1, 1])),
            Err(Error::InvalidModulus(_))
        ));
        assert!(matches!(
            Field::new(2, 0, None),
            Err(Error::InvalidExtensionDegree(0))
        ));
        assert!(matches!(
            Field::new(2, 21, None),
            Err(Error::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn canonical_modulus_is_least_irreducible() {
        assert_eq!(
            Field::new(2, 2, None).unwrap().modulus(),
            Some(&[1, 1, 1][..])
        );
        assert_eq!(
            Field::new(2, 3, None).unwrap().modulus(),
            Some(&[1, 1, 0, 1][..])
        );
        // z^2 + 1 is irreducible over GF(3) and has the smallest encoding.
        assert_eq!(
            Field::new(3, 2, None).unwrap().modulus(),
            Some(&[1, 0, 1][..])
        );
    }

    #[test]
    fn small_arithmetic() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(f2.add(Elem(1), Elem(1)), Elem(0));

        let f4 = Field::new(2, 2, None).unwrap();
        let a = f4.from_coeffs(&[0, 1]).unwrap();
        let a_plus_1 = f4.from_coeffs(&[1, 1]).unwrap();
        assert_eq!(f4.mul(a, a), a_plus_1);

        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.inv(Elem(2)).unwrap(), Elem(3));
        assert_eq!(f5.inv(Elem(0)), Err(Error::ZeroInverse));
    }

    #[test]
    fn mixed_fields_rejected() {
        let f2 = Field::prime(2).unwrap();
        let f3 = Field::prime(3).unwrap();
        let a = f2.wrap(Elem(1));
        let b = f3.wrap(Elem(1));
        assert_eq!(a.add(&b), Err(Error::FieldMismatch));
        assert_eq!(a.mul(&b), Err(Error::FieldMismatch));
        assert!(f2.wrap(Elem(0)).inv().is_err());
    }

    #[test]
    fn enumeration() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(f2.elements().collect::<Vec<_>>(), vec![Elem(0), Elem(1)]);
        let f3 = Field::prime(3).unwrap();
        assert_eq!(
            f3.elements().map(Elem::value).collect::<Vec<_>>(),
            vec![0, 1, 2]
        );
        let f4 = Field::new(2, 2, None).unwrap();
        let all: std::collections::BTreeSet<_> = f4.elements().collect();
        assert_eq!(all.len(), 4);
        assert_eq!(f4.elements().next(), Some(Elem::ZERO));
    }

    #[test]
    fn parse_notation() {
        assert_eq!("2".parse::<Field>().unwrap().size(), 2);
        assert_eq!("2^2".parse::<Field>().unwrap().size(), 4);
        assert_eq!(" 3 ^ 2 ".parse::<Field>().unwrap().size(), 9);
        assert_eq!("4".parse::<Field>().unwrap_err(), Error::NotPrime(4));
        assert!(matches!("x".parse::<Field>(), Err(Error::Parse(_))));
        assert_eq!("2^3".parse::<Field>().unwrap().notation(), "2^3");
    }

    #[test]
    fn table_and_slow_paths_agree() {
        // GF(2^9) has 512 elements and skips the tables.
        let big = Field::new(2, 9, None).unwrap();
        let small = Field::new(2, 3, None).unwrap();
        for f in [&big, &small] {
            for a in f.units().step_by(7) {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
            }
        }
    }

    #[test]
    fn extension_evaluation() {
        let f2 = Field::prime(2).unwrap();
        let f4 = Field::new(2, 2, None).unwrap();
        let a = f4.wrap(f4.from_coeffs(&[0, 1]).unwrap());
        let g = Poly::from_values(&f2, &[1, 1, 1]);
        assert!(extension_eval(&g, &a).unwrap().is_zero());

        let z = Poly::from_values(&f2, &[0, 1]);
        assert_eq!(
            extension_eval(&z, &f2.wrap(Elem(1))).unwrap().elem(),
            Elem(1)
        );
        let z2p1 = Poly::from_values(&f2, &[1, 0, 1]);
        assert!(extension_eval(&z2p1, &f2.wrap(Elem(1))).unwrap().is_zero());

        let f3 = Field::prime(3).unwrap();
        assert_eq!(
            extension_eval(&z, &f3.wrap(Elem(1))).unwrap_err(),
            Error::FieldMismatch
        );
        let over_f4 = Poly::from_values(&f4, &[1, 1]);
        assert_eq!(
            extension_eval(&over_f4, &a).unwrap_err(),
            Error::NotPrimeField
        );
    }
}
