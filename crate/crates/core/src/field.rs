//! Exact base fields.
//!
//! Everything in the crate is generic over [`Field`]. Elements are plain
//! values and all arithmetic goes through the field handle, so a prime field
//! whose characteristic is only known at runtime costs nothing extra.
//!
//! Implementations: [`PrimeField`] (F_p), [`Rationals`] (Q),
//! [`ExtensionField`] (F_{p^k}) and, in [`crate::poly`], the rational
//! function field k(λ) used for generic fibres of families.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + Ord + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` exactly for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn from_i64(&self, n: i64) -> Self::Elem;

    /// Fails when the denominator is not invertible in the field.
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem>;

    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;

    /// Number of elements, `None` for infinite fields.
    fn size(&self) -> Option<u64>;

    fn random_elem(&self, rng: &mut dyn RngCore) -> Self::Elem;

    fn format(&self, a: &Self::Elem) -> String;

    fn name(&self) -> String;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// `acc += a * b`
    fn add_mul_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let p = self.mul(a, b);
        *acc = self.add(acc, &p);
    }

    /// Every element, for finite fields.
    fn enumerate(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    /// A finite extension with at least `min_size` elements and the
    /// embedding into it; only small finite fields provide one.
    fn sampling_extension(&self, _min_size: u64) -> Option<(ExtensionField, Embedding<Self::Elem>)> {
        None
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

pub type Embedding<E> = std::sync::Arc<dyn Fn(&E) -> Vec<u64> + Send + Sync>;

/// Finite fields: element enumeration, a multiplicative generator and a
/// quadratic extension used to measure point-count growth.
pub trait FiniteField: Field {
    fn order(&self) -> u64;
    fn elements(&self) -> Vec<Self::Elem>;
    fn primitive_element(&self) -> Self::Elem;
    /// The degree-2 extension together with the embedding of `self` into it.
    fn quadratic_extension(&self) -> Option<(ExtensionField, Box<dyn Fn(&Self::Elem) -> Vec<u64> + Send + Sync>)>;
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field F_p with `p` below 2^31.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= (1 << 31) {
            return Err(Error::Field(format!("{p} is not a supported prime")));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn reduce_bigint(&self, n: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let r = n.mod_floor(&m);
        r.to_u64().expect("residue fits")
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(a, self.p - 2))
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn from_rational(&self, q: &BigRational) -> Result<u64> {
        let den = self.reduce_bigint(q.denom());
        if den == 0 {
            return Err(Error::Field(format!(
                "coefficient {q} has a denominator divisible by {}",
                self.p
            )));
        }
        let num = self.reduce_bigint(q.numer());
        Ok(self.mul(&num, &self.inv(&den).expect("nonzero")))
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn size(&self) -> Option<u64> {
        Some(self.p)
    }
    fn random_elem(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn name(&self) -> String {
        format!("F{}", self.p)
    }
    fn enumerate(&self) -> Option<Vec<u64>> {
        Some((0..self.p).collect())
    }
    fn sampling_extension(&self, min_size: u64) -> Option<(ExtensionField, Embedding<u64>)> {
        let mut k = 1usize;
        while self.p.checked_pow(k as u32)? < min_size {
            k += 1;
        }
        let ext = ExtensionField::new(self.p, k).ok()?;
        Some((
            ext,
            std::sync::Arc::new(move |a: &u64| {
                let mut v = vec![0; k];
                v[0] = *a;
                v
            }),
        ))
    }
}

impl FiniteField for PrimeField {
    fn order(&self) -> u64 {
        self.p
    }

    fn elements(&self) -> Vec<u64> {
        (0..self.p).collect()
    }

    fn primitive_element(&self) -> u64 {
        if self.p == 2 {
            return 1;
        }
        let order = self.p - 1;
        let factors = prime_factors(order);
        (2..self.p)
            .find(|g| factors.iter().all(|q| self.pow(g, order / q) != 1))
            .expect("F_p^* is cyclic")
    }

    fn quadratic_extension(
        &self,
    ) -> Option<(ExtensionField, Box<dyn Fn(&u64) -> Vec<u64> + Send + Sync>)> {
        let ext = ExtensionField::new(self.p, 2).ok()?;
        Some((ext, Box::new(|a: &u64| vec![*a, 0])))
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The field Q with arbitrary-precision coefficients.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_rational(&self, q: &BigRational) -> Result<BigRational> {
        Ok(q.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn size(&self) -> Option<u64> {
        None
    }
    fn random_elem(&self, rng: &mut dyn RngCore) -> BigRational {
        self.from_i64(rng.gen_range(-4..=4))
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn name(&self) -> String {
        "Q".to_string()
    }
}

/// F_{p^k} as F_p[t]/(m(t)) for the first monic irreducible `m` of degree k
/// in lexicographic order. Elements are coefficient vectors of length k.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtensionField {
    p: u64,
    degree: usize,
    /// monic modulus, low to high, length `degree + 1`
    modulus: Vec<u64>,
}

impl ExtensionField {
    pub fn new(p: u64, degree: usize) -> Result<Self> {
        let base = PrimeField::new(p)?;
        if degree == 0 || (p as f64).powi(degree as i32) > 1e7 {
            return Err(Error::Field(format!("unsupported extension F_{p}^{degree}")));
        }
        let modulus = first_irreducible(&base, degree);
        Ok(Self { p, degree, modulus })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn base(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    fn index_of(&self, a: &[u64]) -> u64 {
        a.iter().rev().fold(0, |acc, c| acc * self.p + c)
    }

    fn from_index(&self, mut n: u64) -> Vec<u64> {
        let mut v = vec![0; self.degree];
        for c in v.iter_mut() {
            *c = n % self.p;
            n /= self.p;
        }
        v
    }
}

fn first_irreducible(base: &PrimeField, degree: usize) -> Vec<u64> {
    let p = base.p;
    let count = p.pow(degree as u32);
    for idx in 0..count {
        let mut m: Vec<u64> = (0..degree).map(|i| (idx / p.pow(i as u32)) % p).collect();
        m.push(1);
        if is_irreducible(base, &m) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Trial division by every monic polynomial of degree at most half.
fn is_irreducible(base: &PrimeField, m: &[u64]) -> bool {
    let deg = m.len() - 1;
    if deg == 1 {
        return true;
    }
    let p = base.p;
    for d in 1..=deg / 2 {
        for idx in 0..p.pow(d as u32) {
            let mut f: Vec<u64> = (0..d).map(|i| (idx / p.pow(i as u32)) % p).collect();
            f.push(1);
            if poly_rem_fp(base, m, &f).iter().all(|c| *c == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_fp(base: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = base.inv(&b[db]).expect("monic");
    while r.len() > db {
        let top = *r.last().expect("nonempty");
        if top != 0 {
            let c = base.mul(&top, &lead_inv);
            let shift = r.len() - 1 - db;
            for (i, bc) in b.iter().enumerate() {
                let t = base.mul(&c, bc);
                r[shift + i] = base.sub(&r[shift + i], &t);
            }
        }
        r.pop();
    }
    r
}

impl Field for ExtensionField {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.degree]
    }
    fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.degree];
        v[0] = 1;
        v
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + self.p - y) % self.p).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let base = self.base();
        let mut prod = vec![0u64; 2 * self.degree - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let mut r = poly_rem_fp(&base, &prod, &self.modulus);
        r.resize(self.degree, 0);
        r
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| (self.p - x) % self.p).collect()
    }
    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if a.iter().all(|x| *x == 0) {
            return None;
        }
        let q = self.p.pow(self.degree as u32);
        Some(self.pow(a, q - 2))
    }
    fn from_i64(&self, n: i64) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = n.rem_euclid(self.p as i64) as u64;
        v
    }
    fn from_rational(&self, q: &BigRational) -> Result<Vec<u64>> {
        let c = self.base().from_rational(q)?;
        let mut v = self.zero();
        v[0] = c;
        Ok(v)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn size(&self) -> Option<u64> {
        Some(self.p.pow(self.degree as u32))
    }
    fn random_elem(&self, rng: &mut dyn RngCore) -> Vec<u64> {
        (0..self.degree).map(|_| rng.gen_range(0..self.p)).collect()
    }
    fn format(&self, a: &Vec<u64>) -> String {
        let terms: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}t"),
                _ => format!("{c}t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }
    fn name(&self) -> String {
        format!("F{}^{}", self.p, self.degree)
    }
    fn enumerate(&self) -> Option<Vec<Vec<u64>>> {
        Some(self.elements())
    }
}

impl FiniteField for ExtensionField {
    fn order(&self) -> u64 {
        self.p.pow(self.degree as u32)
    }

    fn elements(&self) -> Vec<Vec<u64>> {
        (0..self.order()).map(|n| self.from_index(n)).collect()
    }

    fn primitive_element(&self) -> Vec<u64> {
        let order = self.order() - 1;
        let factors = prime_factors(order);
        (1..self.order())
            .map(|n| self.from_index(n))
            .find(|g| factors.iter().all(|q| !self.is_one(&self.pow(g, order / q))))
            .expect("multiplicative group is cyclic")
    }

    fn quadratic_extension(
        &self,
    ) -> Option<(ExtensionField, Box<dyn Fn(&Vec<u64>) -> Vec<u64> + Send + Sync>)> {
        None
    }
}

impl ExtensionField {
    /// Stable integer label of an element (base-p digits).
    pub fn label(&self, a: &[u64]) -> u64 {
        self.index_of(a)
    }
}

/// Field named in an input file or on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = t
            .strip_prefix('F')
            .map(|d| d.trim_start_matches('_'))
            .ok_or_else(|| Error::Field(format!("unknown field `{t}` (expected Q or F<p>)")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Field(format!("unknown field `{t}` (expected Q or F<p>)")))?;
        PrimeField::new(p)?;
        Ok(FieldSpec::Prime(p))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// Parse a decimal or fraction literal such as `-3`, `2/5`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(BigRational::from_integer(n))
    }
}

pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else if q.is_negative() {
        format!("-{}/{}", q.numer().abs(), q.denom())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
