//! Univariate polynomials over a finite field.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::Matrix;

/// A polynomial in `z`; `coeffs[i]` is the coefficient of `z^i`. The last
/// stored coefficient is never zero, so the zero polynomial has no
/// coefficients and [`Poly::degree`] returns `None` for it.
#[derive(Clone)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn zero(field: &Field) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, Elem::ONE)
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::from_elems(field, vec![c])
    }

    /// The polynomial `z`.
    pub fn z(field: &Field) -> Poly {
        Poly::monomial(field, Elem::ONE, 1)
    }

    /// `c * z^k`.
    pub fn monomial(field: &Field, c: Elem, k: usize) -> Poly {
        let mut coeffs = vec![Elem::ZERO; k + 1];
        coeffs[k] = c;
        Poly::from_elems(field, coeffs)
    }

    pub fn from_elems(field: &Field, coeffs: Vec<Elem>) -> Poly {
        let mut p = Poly {
            field: field.clone(),
            coeffs,
        };
        p.normalize();
        p
    }

    /// Builds a polynomial from element encodings, low degree first.
    ///
    /// Panics if a value is not an element of `field`; use
    /// [`Poly::try_from_values`] for untrusted input.
    pub fn from_values(field: &Field, values: &[u32]) -> Poly {
        Poly::try_from_values(field, values).expect("coefficient outside the field")
    }

    pub fn try_from_values(field: &Field, values: &[u32]) -> Result<Poly> {
        let coeffs = values
            .iter()
            .map(|&v| field.elem(v as u64))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_elems(field, coeffs))
    }

    /// Builds a polynomial from integers mapped into the prime subfield.
    pub fn from_ints(field: &Field, values: &[i64]) -> Poly {
        Poly::from_elems(field, values.iter().map(|&v| field.from_int(v)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of `z^i` (zero beyond the degree).
    #[inline]
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    /// Degree, or `None` for the zero polynomial.
    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to `-1`; handy for comparisons.
    #[inline]
    pub fn deg_i(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Elem::ONE
    }

    /// True for nonzero constants.
    #[inline]
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&Elem::ONE)
    }

    pub fn leading_coeff(&self) -> Option<Elem> {
        self.coeffs.last().copied()
    }

    fn assert_same_field(&self, other: &Poly) {
        assert!(
            self.field.same(&other.field),
            "polynomials over different fields: {} and {}",
            self.field,
            other.field
        );
    }

    pub fn scale(&self, c: Elem) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        Poly {
            field: f.clone(),
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Elem::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// `self - c * z^k * other`, in place.
    pub(crate) fn sub_scaled_shift(&mut self, other: &Poly, c: Elem, k: usize) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let f = self.field.clone();
        let need = other.coeffs.len() + k;
        if self.coeffs.len() < need {
            self.coeffs.resize(need, Elem::ZERO);
        }
        for (i, &b) in other.coeffs.iter().enumerate() {
            let t = f.mul(b, c);
            self.coeffs[i + k] = f.sub(self.coeffs[i + k], t);
        }
        self.normalize();
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Division with remainder: `self = q * divisor + r`, `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.assert_same_field(divisor);
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let lead_inv = f.inv(divisor.coeffs[db])?;
        let mut rem = self.clone();
        let Some(da) = rem.degree() else {
            return Ok((Poly::zero(f), rem));
        };
        if da < db {
            return Ok((Poly::zero(f), rem));
        }
        let mut quot = vec![Elem::ZERO; da - db + 1];
        while let Some(dr) = rem.degree() {
            if dr < db {
                break;
            }
            let c = f.mul(rem.coeffs[dr], lead_inv);
            quot[dr - db] = c;
            rem.sub_scaled_shift(divisor, c, dr - db);
        }
        Ok((Poly::from_elems(f, quot), rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Quotient of an exact division; errors if a remainder is left.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    /// Divides by the leading coefficient. The zero polynomial is returned
    /// unchanged.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if lc == Elem::ONE => self.clone(),
            Some(lc) => self.scale(self.field.inv(lc).expect("nonzero leading coefficient")),
        }
    }

    /// Monic greatest common divisor by Euclid's algorithm.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.assert_same_field(other);
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Irreducibility by trial division against every monic polynomial of
    /// degree `1..=deg/2`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let d = self.degree().ok_or(Error::ZeroPolynomial)?;
        if d == 0 {
            return Err(Error::ConstantPolynomial);
        }
        for k in 1..=d / 2 {
            for g in monic_polys(&self.field, k) {
                if self.rem(&g)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Coefficient encodings, low degree first.
    pub fn values(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.value()).collect()
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field.same(&other.field)
    }
}

impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coef = if *c == Elem::ONE && i > 0 {
                String::new()
            } else {
                c.value().to_string()
            };
            match i {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}z")?,
                _ => write!(f, "{coef}z^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        self.assert_same_field(rhs);
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), rhs.coeff(i))).collect();
        Poly::from_elems(f, coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self.assert_same_field(rhs);
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff(i), rhs.coeff(i))).collect();
        Poly::from_elems(f, coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        let f = &self.field;
        Poly {
            field: f.clone(),
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        self.assert_same_field(rhs);
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_elems(f, out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        -&self
    }
}

/// All monic polynomials of the given degree, ordered by the integer
/// encoding of their lower coefficients.
pub fn monic_polys(field: &Field, degree: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = field.size() as u64;
    let count = q.checked_pow(degree as u32).expect("enumeration too large");
    (0..count).map(move |code| {
        let mut coeffs = decode_base(code, q, degree);
        coeffs.push(Elem::ONE);
        Poly::from_elems(field, coeffs)
    })
}

/// All polynomials of degree `< bound` (including zero), `q^bound` of them.
pub fn polys_below(field: &Field, bound: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = field.size() as u64;
    let count = q.checked_pow(bound as u32).expect("enumeration too large");
    (0..count).map(move |code| Poly::from_elems(field, decode_base(code, q, bound)))
}

fn decode_base(mut code: u64, q: u64, len: usize) -> Vec<Elem> {
    let mut out = Vec::with_capacity(len + 1);
    for _ in 0..len {
        out.push(Elem((code % q) as u32));
        code /= q;
    }
    out
}

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of monic irreducible polynomials of degree `j` over a field with
/// `q` elements, by the Möbius sum `(1/j) * sum_{d | j} mu(d) q^(j/d)`.
pub fn count_monic_irreducibles(q: u64, j: u32) -> u128 {
    assert!(j >= 1, "degree must be positive");
    let mut total: i128 = 0;
    for d in 1..=j as u64 {
        if (j as u64).is_multiple_of(d) {
            total += mobius(d) as i128 * (q as i128).pow(j / d as u32);
        }
    }
    (total / j as i128) as u128
}

/// Every monic irreducible polynomial of degree `j`, by exhaustive search.
pub fn enumerate_monic_irreducibles(field: &Field, j: usize) -> Vec<Poly> {
    assert!(j >= 1, "degree must be positive");
    monic_polys(field, j)
        .filter(|p| p.is_irreducible().expect("non-constant"))
        .collect()
}

/// Uniformly random monic polynomial of the given degree.
pub fn random_monic<R: Rng + ?Sized>(field: &Field, degree: usize, rng: &mut R) -> Poly {
    let q = field.size();
    let mut coeffs: Vec<Elem> = (0..degree).map(|_| Elem(rng.gen_range(0..q))).collect();
    coeffs.push(Elem::ONE);
    Poly::from_elems(field, coeffs)
}

/// Uniformly random polynomial of degree `< bound` (zero included).
pub fn random_below<R: Rng + ?Sized>(field: &Field, bound: usize, rng: &mut R) -> Poly {
    let q = field.size();
    let coeffs = (0..bound).map(|_| Elem(rng.gen_range(0..q))).collect();
    Poly::from_elems(field, coeffs)
}

/// Sylvester matrix of `p` (degree m) and `q` (degree n), of size `m + n`.
/// The first `n` columns hold shifted copies of `p_0..p_m`, the last `m`
/// columns shifted copies of `q_0..q_n`, each column reading downwards from
/// the constant coefficient.
pub fn sylvester_matrix(p: &Poly, q: &Poly) -> Result<Matrix> {
    p.assert_same_field(q);
    let m = p.degree().ok_or(Error::ZeroPolynomial)?;
    let n = q.degree().ok_or(Error::ZeroPolynomial)?;
    let size = m + n;
    if size == 0 {
        return Err(Error::InvalidArgument(
            "Sylvester matrix of two constants is empty".into(),
        ));
    }
    let mut s = Matrix::zeros(p.field(), size, size);
    for col in 0..n {
        for (i, &c) in p.coeffs().iter().enumerate() {
            s.set(col + i, col, c);
        }
    }
    for col in 0..m {
        for (i, &c) in q.coeffs().iter().enumerate() {
            s.set(col + i, n + col, c);
        }
    }
    Ok(s)
}

/// Determinant of the Sylvester matrix.
pub fn resultant(p: &Poly, q: &Poly) -> Result<Elem> {
    Ok(sylvester_matrix(p, q)?.det())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn ring_arithmetic() {
        let f2 = gf(2);
        let zp1 = Poly::from_values(&f2, &[1, 1]);
        assert_eq!(&zp1 * &zp1, Poly::from_values(&f2, &[1, 0, 1]));
        assert_eq!(&zp1 + &Poly::zero(&f2), zp1);

        let f3 = gf(3);
        let (q, r) = Poly::from_values(&f3, &[1, 0, 1])
            .divmod(&Poly::from_values(&f3, &[1, 1]))
            .unwrap();
        assert_eq!(q, Poly::from_values(&f3, &[2, 1]));
        assert_eq!(r, Poly::from_values(&f3, &[2]));
        assert_eq!(
            zp1.divmod(&Poly::zero(&f2)).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn zero_degree_sentinel() {
        let f = gf(5);
        assert_eq!(Poly::zero(&f).degree(), None);
        assert_eq!(Poly::from_values(&f, &[0, 0, 0]).degree(), None);
        assert_eq!(Poly::one(&f).degree(), Some(0));
        assert_eq!(Poly::from_values(&f, &[1, 2, 0]).degree(), Some(1));
    }

    #[test]
    fn gcd_examples() {
        let f3 = gf(3);
        let g = Poly::from_ints(&f3, &[-1, 0, 1])
            .gcd(&Poly::from_ints(&f3, &[-1, 1]))
            .unwrap();
        assert_eq!(g, Poly::from_values(&f3, &[2, 1]));

        let z = Poly::z(&f3);
        let zp1 = Poly::from_values(&f3, &[1, 1]);
        assert!(z.gcd(&zp1).unwrap().is_one());

        let f2 = gf(2);
        let g = Poly::from_values(&f2, &[1, 0, 1])
            .gcd(&Poly::from_values(&f2, &[1, 1]))
            .unwrap();
        assert_eq!(g, Poly::from_values(&f2, &[1, 1]));

        // gcd(a, 0) = monic(a)
        let a = Poly::from_values(&f3, &[1, 2]);
        assert_eq!(a.gcd(&Poly::zero(&f3)).unwrap(), a.monic());
        assert_eq!(
            Poly::zero(&f3).gcd(&Poly::zero(&f3)).unwrap_err(),
            Error::ZeroPolynomial
        );
    }

    #[test]
    fn sylvester_layout() {
        let f2 = gf(2);
        let s = sylvester_matrix(&Poly::from_values(&f2, &[1, 1]), &Poly::z(&f2)).unwrap();
        assert_eq!(s, Matrix::from_values(&f2, 2, 2, &[1, 0, 1, 1]));
        assert_eq!(s.det(), Elem::ONE);

        let s = sylvester_matrix(&Poly::z(&f2), &Poly::z(&f2)).unwrap();
        assert_eq!(s, Matrix::from_values(&f2, 2, 2, &[0, 0, 1, 1]));
        assert!(s.det().is_zero());

        let f3 = gf(3);
        let p = Poly::from_values(&f3, &[1, 0, 1]);
        let q = Poly::from_values(&f3, &[1, 1]);
        let s = sylvester_matrix(&p, &q).unwrap();
        // one column of p, two shifted columns of q
        assert_eq!(
            s,
            Matrix::from_values(&f3, 3, 3, &[1, 1, 0, 0, 1, 1, 1, 0, 1])
        );
        assert!(!s.det().is_zero());

        assert!(sylvester_matrix(&Poly::zero(&f3), &q).is_err());
        assert!(sylvester_matrix(&Poly::one(&f3), &Poly::one(&f3)).is_err());
    }

    #[test]
    fn irreducibility() {
        let f2 = gf(2);
        assert!(Poly::from_values(&f2, &[1, 1, 1]).is_irreducible().unwrap());
        assert!(!Poly::from_values(&f2, &[1, 0, 1]).is_irreducible().unwrap());
        for p in [2, 3, 5] {
            assert!(Poly::z(&gf(p)).is_irreducible().unwrap());
        }
        assert_eq!(
            Poly::one(&f2).is_irreducible().unwrap_err(),
            Error::ConstantPolynomial
        );
    }

    #[test]
    fn irreducible_counts() {
        assert_eq!(count_monic_irreducibles(2, 1), 2);
        assert_eq!(count_monic_irreducibles(2, 2), 1);
        assert_eq!(count_monic_irreducibles(2, 3), 2);
        let f2 = gf(2);
        assert_eq!(
            enumerate_monic_irreducibles(&f2, 2),
            vec![Poly::from_values(&f2, &[1, 1, 1])]
        );
    }

    #[test]
    fn random_monic_behaviour() {
        let f2 = gf(2);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(random_monic(&f2, 0, &mut rng).is_one());

        let mut counts = [0usize; 4];
        let trials = 100_000;
        for _ in 0..trials {
            let p = random_monic(&f2, 2, &mut rng);
            assert_eq!(p.degree(), Some(2));
            counts[(p.coeff(0).value() + 2 * p.coeff(1).value()) as usize] += 1;
        }
        for c in counts {
            assert!((c as f64 / trials as f64 - 0.25).abs() < 0.01);
        }

        let mut a = ChaCha8Rng::seed_from_u64(99);
        let mut b = ChaCha8Rng::seed_from_u64(99);
        let f7 = gf(7);
        for _ in 0..50 {
            assert_eq!(random_monic(&f7, 3, &mut a), random_monic(&f7, 3, &mut b));
        }
    }

    #[test]
    fn extension_field_polys() {
        let f4 = Field::new(2, 2, None).unwrap();
        // z^2 + z + 1 splits over GF(4).
        let g = Poly::from_values(&f4, &[1, 1, 1]);
        assert!(!g.is_irreducible().unwrap());
        assert_eq!(count_monic_irreducibles(4, 2), 6);
        assert_eq!(enumerate_monic_irreducibles(&f4, 2).len(), 6);
    }
}
