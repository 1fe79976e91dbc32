//! Univariate polynomials in the family parameter λ and the rational
//! function field k(λ).

use num_rational::BigRational;
use num_traits::Zero;
use rand::RngCore;

use crate::error::Result;
use crate::field::{format_rational, Field, Rationals};

/// Dense polynomial, coefficients from degree 0 upwards, never with a
/// trailing zero. The zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<E>(pub Vec<E>);

impl<E: Clone + PartialEq> Poly<E> {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.0
    }
}

impl<E: Clone + PartialEq> Poly<E> {
    pub fn constant<F: Field<Elem = E>>(f: &F, c: E) -> Self {
        Self::from_coeffs(f, vec![c])
    }

    pub fn lambda<F: Field<Elem = E>>(f: &F) -> Self {
        Poly(vec![f.zero(), f.one()])
    }

    pub fn from_coeffs<F: Field<Elem = E>>(f: &F, mut c: Vec<E>) -> Self {
        while c.last().is_some_and(|x| f.is_zero(x)) {
            c.pop();
        }
        Poly(c)
    }

    pub fn leading<F: Field<Elem = E>>(&self, f: &F) -> E {
        self.0.last().cloned().unwrap_or_else(|| f.zero())
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let z = f.zero();
        let c = (0..n)
            .map(|i| f.add(self.0.get(i).unwrap_or(&z), o.0.get(i).unwrap_or(&z)))
            .collect();
        Self::from_coeffs(f, c)
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        Poly(self.0.iter().map(|c| f.neg(c)).collect())
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        self.add(f, &o.neg(f))
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![f.zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                f.add_mul_assign(&mut c[i + j], a, b);
            }
        }
        Self::from_coeffs(f, c)
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, s: &E) -> Self {
        Self::from_coeffs(f, self.0.iter().map(|c| f.mul(c, s)).collect())
    }

    /// Quotient and remainder; `d` must be nonzero.
    pub fn div_rem<F: Field<Elem = E>>(&self, f: &F, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(&d.leading(f)).expect("nonzero leading coefficient");
        let mut r = self.0.clone();
        let mut q = vec![f.zero(); self.0.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let top = r.last().expect("nonempty").clone();
            let shift = r.len() - 1 - dd;
            if !f.is_zero(&top) {
                let c = f.mul(&top, &lead_inv);
                for (i, dc) in d.0.iter().enumerate() {
                    let t = f.mul(&c, dc);
                    r[shift + i] = f.sub(&r[shift + i], &t);
                }
                q[shift] = c;
            }
            r.pop();
        }
        (Self::from_coeffs(f, q), Self::from_coeffs(f, r))
    }

    pub fn monic<F: Field<Elem = E>>(&self, f: &F) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = f.inv(&self.leading(f)).expect("nonzero");
        self.scale(f, &inv)
    }

    pub fn gcd<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn eval<F: Field<Elem = E>>(&self, f: &F, x: &E) -> E {
        let mut acc = f.zero();
        for c in self.0.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    /// Multiplicity of λ = 0 as a root; `None` for the zero polynomial.
    pub fn valuation<F: Field<Elem = E>>(&self, f: &F) -> Option<usize> {
        self.0.iter().position(|c| !f.is_zero(c))
    }

    /// Divide by λ^k, which must divide `self`.
    pub fn shift_down(&self, k: usize) -> Self {
        Poly(self.0.iter().skip(k).cloned().collect())
    }

    /// p(λ + c)
    pub fn taylor_shift<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        let lin = Poly::from_coeffs(f, vec![c.clone(), f.one()]);
        let mut acc = Poly::zero();
        for coef in self.0.iter().rev() {
            acc = acc.mul(f, &lin).add(f, &Poly::constant(f, coef.clone()));
        }
        acc
    }

    pub fn format<F: Field<Elem = E>>(&self, f: &F, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.0.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let cs = f.format(c);
            let term = match i {
                0 => cs,
                _ => {
                    let mono = if i == 1 { var.to_string() } else { format!("{var}^{i}") };
                    if f.is_one(c) {
                        mono
                    } else {
                        format!("{cs}*{mono}")
                    }
                }
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

impl Poly<BigRational> {
    /// Coefficients of a rational polynomial mapped into `f`.
    pub fn map_into<F: Field>(&self, f: &F) -> Result<Poly<F::Elem>> {
        let c = self
            .0
            .iter()
            .map(|q| f.from_rational(q))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_coeffs(f, c))
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn constant_term(&self) -> BigRational {
        self.0.first().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn format_rational(&self, var: &str) -> String {
        let _ = format_rational;
        self.format(&Rationals, var)
    }
}

/// Reduced fraction num/den with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFn<E> {
    pub num: Poly<E>,
    pub den: Poly<E>,
}

/// The field k(λ) over a base field.
#[derive(Clone, Debug)]
pub struct RationalFunctions<F: Field> {
    base: F,
}

impl<F: Field> RationalFunctions<F> {
    pub fn new(base: F) -> Self {
        Self { base }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn from_poly(&self, p: Poly<F::Elem>) -> RatFn<F::Elem> {
        RatFn {
            num: p,
            den: Poly::constant(&self.base, self.base.one()),
        }
    }

    pub fn lambda(&self) -> RatFn<F::Elem> {
        self.from_poly(Poly::lambda(&self.base))
    }

    fn normalize(&self, num: Poly<F::Elem>, den: Poly<F::Elem>) -> RatFn<F::Elem> {
        let f = &self.base;
        if num.is_zero() {
            return self.zero();
        }
        let g = num.gcd(f, &den);
        let (n, _) = num.div_rem(f, &g);
        let (d, _) = den.div_rem(f, &g);
        let lc = f.inv(&d.leading(f)).expect("nonzero denominator");
        RatFn {
            num: n.scale(f, &lc),
            den: d.scale(f, &lc),
        }
    }
}

impl<F: Field> Field for RationalFunctions<F> {
    type Elem = RatFn<F::Elem>;

    fn zero(&self) -> Self::Elem {
        RatFn {
            num: Poly::zero(),
            den: Poly::constant(&self.base, self.base.one()),
        }
    }
    fn one(&self) -> Self::Elem {
        self.from_poly(Poly::constant(&self.base, self.base.one()))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.base;
        if a.den == b.den {
            return self.normalize(a.num.add(f, &b.num), a.den.clone());
        }
        let num = a.num.mul(f, &b.den).add(f, &b.num.mul(f, &a.den));
        self.normalize(num, a.den.mul(f, &b.den))
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.base;
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        self.normalize(a.num.mul(f, &b.num), a.den.mul(f, &b.den))
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        RatFn {
            num: a.num.neg(&self.base),
            den: a.den.clone(),
        }
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.num.is_zero() {
            None
        } else {
            Some(self.normalize(a.den.clone(), a.num.clone()))
        }
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.num.is_zero()
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_poly(Poly::constant(&self.base, self.base.from_i64(n)))
    }
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem> {
        Ok(self.from_poly(Poly::constant(&self.base, self.base.from_rational(q)?)))
    }
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn size(&self) -> Option<u64> {
        None
    }
    fn random_elem(&self, rng: &mut dyn RngCore) -> Self::Elem {
        self.from_poly(Poly::constant(&self.base, self.base.random_elem(rng)))
    }
    fn format(&self, a: &Self::Elem) -> String {
        let n = a.num.format(&self.base, "lambda");
        if a.den.degree() == Some(0) {
            n
        } else {
            format!("({n})/({})", a.den.format(&self.base, "lambda"))
        }
    }
    fn name(&self) -> String {
        format!("{}(lambda)", self.base.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn gcd_and_division() {
        let f = PrimeField::new(7).unwrap();
        // (x-1)(x-2) and (x-1)(x+3)
        let a = Poly::from_coeffs(&f, vec![2, 4, 1]);
        let b = Poly::from_coeffs(&f, vec![4, 2, 1]);
        let g = a.gcd(&f, &b);
        assert_eq!(g, Poly::from_coeffs(&f, vec![6, 1]));
        let (q, r) = a.div_rem(&f, &g);
        assert!(r.is_zero());
        assert_eq!(q.mul(&f, &g), a);
    }

    #[test]
    fn rational_functions_cancel() {
        let f = Rationals;
        let k = RationalFunctions::new(f);
        let lam = k.lambda();
        let x = k.mul(&lam, &k.inv(&lam).unwrap());
        assert!(k.is_one(&x));
        let two = k.from_i64(2);
        let s = k.sub(&k.add(&lam, &two), &lam);
        assert_eq!(s, two);
    }

    #[test]
    fn taylor_shift_matches_evaluation() {
        let f = PrimeField::new(11).unwrap();
        let p = Poly::from_coeffs(&f, vec![3, 0, 5, 1]);
        let shifted = p.taylor_shift(&f, &4);
        for x in 0..11 {
            assert_eq!(shifted.eval(&f, &x), p.eval(&f, &((x + 4) % 11)));
        }
    }
}
