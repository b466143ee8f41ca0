//! Small finite fields $\mathrm{GF}(p^m)$ with deterministic construction.
//!
//! Elements are polynomials over $\mathbb{Z}_p$ reduced modulo a monic
//! irreducible of degree $m$, stored by ascending powers.  Every element has
//! an *encoding* $\sum_i c_i p^i \in [0, p^m)$; the defining modulus is the
//! irreducible whose low-coefficient encoding is smallest, and the canonical
//! primitive element is the multiplicative generator of least encoding.  Both
//! choices make field construction reproducible across runs.

use crate::error::{Error, Result};

/// The field $\mathrm{GF}(p^m)$.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    degree: usize,
    /// Monic modulus, ascending coefficients, length `degree + 1`.
    modulus: Vec<u64>,
}

/// Field element: coefficient vector of length `degree`, ascending powers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

/// Decomposes `q` as `p^m` for prime `p`, if possible.
pub fn prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let mut p = 0;
    for cand in 2..=q {
        if cand * cand > q && p == 0 {
            p = q; // q itself is prime
            break;
        }
        if q % cand == 0 {
            p = cand;
            break;
        }
    }
    let mut m = 0;
    let mut t = q;
    while t > 1 {
        if t % p != 0 {
            return None;
        }
        t /= p;
        m += 1;
    }
    Some((p, m))
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

/// Remainder of `a` modulo the monic polynomial `m`, coefficients mod `p`.
fn poly_rem(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    let dm = m.len() - 1;
    while let Some(&lead) = a.last() {
        if lead == 0 {
            a.pop();
            continue;
        }
        if a.len() - 1 < dm {
            break;
        }
        let shift = a.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let v = (a[shift + i] + p * lead - (lead * c) % p) % p;
            a[shift + i] = v;
        }
        debug_assert_eq!(*a.last().unwrap(), 0);
        a.pop();
    }
    a
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x * y) % p;
        }
    }
    r
}

fn poly_from_encoding(mut enc: u64, p: u64) -> Vec<u64> {
    let mut c = Vec::new();
    while enc > 0 {
        c.push(enc % p);
        enc /= p;
    }
    c
}

/// Is the monic polynomial irreducible over GF(p)?  Trial division by every
/// monic polynomial of degree up to half the degree.
fn is_irreducible(m: &[u64], p: u64) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for enc in 0..count {
            let mut div = poly_from_encoding(enc, p);
            div.resize(d, 0);
            div.push(1);
            if poly_rem(m.to_vec(), &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    /// Constructs $\mathrm{GF}(q)$ for a prime power $q$.
    ///
    /// The modulus is the first irreducible monic polynomial in ascending
    /// encoding order of its sub-leading coefficients.
    pub fn new(q: u64) -> Result<Self> {
        let (p, degree) = prime_power(q)
            .ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))?;
        if q > 1 << 20 {
            return Err(Error::LimitExceeded(format!("field order {q} too large")));
        }
        for enc in 0..q {
            let mut modulus = poly_from_encoding(enc, p);
            modulus.resize(degree, 0);
            modulus.push(1);
            if is_irreducible(&modulus, p) {
                return Ok(FiniteField { p, degree, modulus });
            }
        }
        Err(Error::internal(format!("no irreducible polynomial found for {q}")))
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.degree as u32)
    }

    /// The defining modulus, ascending coefficients (monic).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![0; self.degree] }
    }

    pub fn one(&self) -> FieldElement {
        self.element_from_encoding(1).expect("1 < order")
    }

    pub fn is_zero(&self, e: &FieldElement) -> bool {
        e.coeffs.iter().all(|&c| c == 0)
    }

    pub fn encoding(&self, e: &FieldElement) -> u64 {
        let mut enc = 0;
        for &c in e.coeffs.iter().rev() {
            enc = enc * self.p + c;
        }
        enc
    }

    pub fn element_from_encoding(&self, enc: u64) -> Result<FieldElement> {
        if enc >= self.order() {
            return Err(Error::invalid(format!(
                "encoding {enc} out of range for field of order {}",
                self.order()
            )));
        }
        let mut coeffs = poly_from_encoding(enc, self.p);
        coeffs.resize(self.degree, 0);
        Ok(FieldElement { coeffs })
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(|e| self.element_from_encoding(e).expect("in range"))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let coeffs =
            a.coeffs.iter().map(|&x| if x == 0 { 0 } else { self.p - x }).collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let prod = poly_mul(&a.coeffs, &b.coeffs, self.p);
        let mut coeffs = poly_rem(prod, &self.modulus, self.p);
        coeffs.resize(self.degree, 0);
        FieldElement { coeffs }
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
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

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if self.is_zero(a) {
            return Err(Error::invalid("inverse of zero"));
        }
        Ok(self.pow(a, self.order() - 2))
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: &FieldElement) -> Result<u64> {
        if self.is_zero(a) {
            return Err(Error::invalid("zero has no multiplicative order"));
        }
        let n = self.order() - 1;
        let mut ord = n;
        for f in distinct_prime_factors(n) {
            while ord % f == 0 && self.pow(a, ord / f) == self.one() {
                ord /= f;
            }
        }
        Ok(ord)
    }

    /// The multiplicative generator of least encoding.
    pub fn primitive_element(&self) -> FieldElement {
        let n = self.order() - 1;
        let primes = distinct_prime_factors(n);
        for enc in 1..self.order() {
            let e = self.element_from_encoding(enc).expect("in range");
            if primes.iter().all(|&f| self.pow(&e, n / f) != self.one()) {
                return e;
            }
        }
        unreachable!("every finite field has a primitive element")
    }

    /// Trace to the subfield of order `q`:
    /// $\mathrm{Tr}(x) = x + x^q + x^{q^2}$.
    ///
    /// Requires the field degree to be exactly three times the subfield
    /// degree over the prime field, so that the extension has degree 3.
    pub fn trace_to_subfield(&self, q: u64, x: &FieldElement) -> Result<FieldElement> {
        let (p, m) = prime_power(q)
            .ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))?;
        if p != self.p || self.degree != 3 * m {
            return Err(Error::invalid(format!(
                "field of order {} is not a cubic extension of GF({q})",
                self.order()
            )));
        }
        let xq = self.pow(x, q);
        let xq2 = self.pow(&xq, q);
        Ok(self.add(&self.add(x, &xq), &xq2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(16), Some((2, 4)));
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert!(FiniteField::new(6).is_err());
    }

    #[test]
    fn gf8_construction_is_deterministic() {
        let f = FiniteField::new(8).unwrap();
        // x^3 + x + 1 is the first irreducible cubic over GF(2).
        assert_eq!(f.modulus(), &[1, 1, 0, 1]);
        // x (encoding 2) is the first generator; its order is 7.
        let g = f.primitive_element();
        assert_eq!(f.encoding(&g), 2);
        assert_eq!(f.multiplicative_order(&g).unwrap(), 7);
    }

    #[test]
    fn gf27_and_gf125_moduli() {
        let f27 = FiniteField::new(27).unwrap();
        assert_eq!(f27.modulus(), &[1, 2, 0, 1]); // x^3 + 2x + 1
        let f125 = FiniteField::new(125).unwrap();
        assert_eq!(f125.modulus(), &[1, 1, 0, 1]); // x^3 + x + 1
        assert_eq!(f125.encoding(&f125.primitive_element()), 9); // x + 4
    }

    #[test]
    fn gf64_modulus() {
        let f = FiniteField::new(64).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 0, 0, 0, 0, 1]); // x^6 + x + 1
        assert_eq!(f.encoding(&f.primitive_element()), 2);
    }

    #[test]
    fn field_axioms_gf125() {
        let f = FiniteField::new(125).unwrap();
        let a = f.element_from_encoding(37).unwrap();
        let b = f.element_from_encoding(101).unwrap();
        let c = f.element_from_encoding(64).unwrap();
        // Distributivity and associativity spot checks.
        assert_eq!(
            f.mul(&a, &f.add(&b, &c)),
            f.add(&f.mul(&a, &b), &f.mul(&a, &c))
        );
        assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        // Inverses over the whole field.
        for e in f.elements().skip(1) {
            assert_eq!(f.mul(&e, &f.inv(&e).unwrap()), f.one());
        }
    }

    #[test]
    fn trace_lands_in_subfield_and_is_additive() {
        for q in [2u64, 3, 4, 5, 7, 8] {
            let cube = q * q * q;
            let f = FiniteField::new(cube).unwrap();
            let elements: Vec<FieldElement> = f.elements().collect();
            for x in &elements {
                let t = f.trace_to_subfield(q, x).unwrap();
                // Frobenius-fixed: Tr(x)^q = Tr(x), i.e. the trace lies in GF(q).
                assert_eq!(f.pow(&t, q), t);
            }
            // Additivity on a deterministic sample of pairs.
            let step = (elements.len() / 17).max(1);
            for (i, x) in elements.iter().step_by(step).enumerate() {
                for y in elements.iter().skip(i % 3).step_by(step) {
                    let lhs = f.trace_to_subfield(q, &f.add(x, y)).unwrap();
                    let rhs = f.add(
                        &f.trace_to_subfield(q, x).unwrap(),
                        &f.trace_to_subfield(q, y).unwrap(),
                    );
                    assert_eq!(lhs, rhs);
                }
            }
            // GF(q)-linearity: scaling by subfield elements commutes with Tr.
            let subfield: Vec<FieldElement> = elements
                .iter()
                .filter(|e| f.pow(e, q) == **e)
                .cloned()
                .collect();
            assert_eq!(subfield.len(), q as usize);
            for c in &subfield {
                for x in elements.iter().step_by(step) {
                    let lhs = f.trace_to_subfield(q, &f.mul(c, x)).unwrap();
                    let rhs = f.mul(c, &f.trace_to_subfield(q, x).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn trace_requires_cubic_extension() {
        let f = FiniteField::new(16).unwrap();
        assert!(f.trace_to_subfield(2, &f.one()).is_err());
        assert!(f.trace_to_subfield(4, &f.one()).is_err());
    }

    #[test]
    fn gf8_trace_zero_exponents() {
        // Nonzero trace-zero elements of GF(8) are w^1, w^2, w^4.
        let f = FiniteField::new(8).unwrap();
        let w = f.primitive_element();
        let mut zeros = Vec::new();
        let mut cur = f.one();
        for i in 0..7 {
            if f.is_zero(&f.trace_to_subfield(2, &cur).unwrap()) {
                zeros.push(i);
            }
            cur = f.mul(&cur, &w);
        }
        assert_eq!(zeros, vec![1, 2, 4]);
    }
}
