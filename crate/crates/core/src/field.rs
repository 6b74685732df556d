//! Arithmetic in the Galois field GF(p^h).
//!
//! Elements are encoded as integers in `[0, q)`: the base-`p` digits of a code are
//! the coefficients of the polynomial representative, constant term least
//! significant. For `h = 1` the code is simply the residue mod `p`.
//!
//! Fields of order up to 2^16 carry dense log/antilog tables (plus Zech
//! logarithms for odd characteristic with `h > 1`), so multiplication, inversion
//! and addition are O(1) lookups. Larger fields fall back to direct polynomial
//! arithmetic on digit vectors.

use std::fmt;

use thiserror::Error;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

/// Fields up to this order get log/antilog tables.
pub const TABLE_ORDER_LIMIT: u32 = 1 << 16;

const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("field order {p}^{h} exceeds the supported maximum 2^20")]
    OrderTooLarge { p: u64, h: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("zero has no multiplicative inverse")]
    InvZero,
}

/// An element of a [`Field`], stored as its canonical integer code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone)]
enum Arith {
    Tables {
        /// `exp[i] = g^i`, stored twice over so that `log a + log b` never needs a reduction.
        exp: Vec<u32>,
        log: Vec<u32>,
        /// `zech[k] = log(1 + g^k)`, only for odd `p` with `h > 1`.
        zech: Vec<u32>,
    },
    Poly,
}

/// The finite field GF(q), q = p^h.
#[derive(Debug, Clone)]
pub struct Field {
    p: u32,
    h: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: FieldElement,
    arith: Arith,
}

impl Field {
    /// Builds GF(p^h). For `h > 1` the modulus is the first monic irreducible
    /// polynomial of degree `h` in ascending base-`p` order.
    pub fn new(p: u64, h: u32) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrimeCharacteristic(p));
        }
        if h == 0 {
            return Err(FieldError::DegreeZero);
        }
        let q = p
            .checked_pow(h)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(FieldError::OrderTooLarge { p, h })?;
        let (p, q) = (p as u32, q as u32);

        let modulus = if h == 1 {
            Vec::new()
        } else {
            first_irreducible(p, h as usize)
        };

        let mut field = Field {
            p,
            h,
            q,
            modulus,
            primitive: FieldElement::ONE,
            arith: Arith::Poly,
        };
        field.primitive = field.find_primitive();
        if q <= TABLE_ORDER_LIMIT {
            field.arith = field.build_tables();
        }
        Ok(field)
    }

    /// Builds the field of order `q`, which must be a prime power.
    pub fn with_order(q: u64) -> Result<Field, FieldError> {
        let (p, h) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        Field::new(p, h)
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.h
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, constant term first; empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The smallest code generating the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        self.primitive
    }

    pub fn has_tables(&self) -> bool {
        matches!(self.arith, Arith::Tables { .. })
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    /// Returns the element with the given code, if it is in range.
    pub fn element(&self, code: u32) -> Option<FieldElement> {
        (code < self.q).then_some(FieldElement(code))
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(a.0 < self.q && b.0 < self.q);
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if self.h == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= self.p { s - self.p } else { s });
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        match &self.arith {
            Arith::Tables { exp, log, zech } => {
                let n = self.q - 1;
                let (la, lb) = (log[a.0 as usize], log[b.0 as usize]);
                let d = if lb >= la { lb - la } else { lb + n - la };
                let z = zech[d as usize];
                if z == NO_LOG {
                    FieldElement::ZERO
                } else {
                    FieldElement(exp[(la + z) as usize])
                }
            }
            Arith::Poly => FieldElement(self.digit_add(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 || a.0 == 0 {
            return a;
        }
        if self.h == 1 {
            return FieldElement(self.p - a.0);
        }
        let mut out = 0u32;
        let mut scale = 1u32;
        let mut x = a.0;
        for _ in 0..self.h {
            let d = x % self.p;
            x /= self.p;
            out += ((self.p - d) % self.p) * scale;
            scale *= self.p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(a.0 < self.q && b.0 < self.q);
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        match &self.arith {
            Arith::Tables { exp, log, .. } => {
                FieldElement(exp[(log[a.0 as usize] + log[b.0 as usize]) as usize])
            }
            Arith::Poly => self.poly_mul(a, b),
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::InvZero);
        }
        Ok(self.inv_nonzero(a))
    }

    /// Inverse of a known-nonzero element.
    #[inline]
    pub(crate) fn inv_nonzero(&self, a: FieldElement) -> FieldElement {
        debug_assert!(a.0 != 0);
        match &self.arith {
            Arith::Tables { exp, log, .. } => {
                let n = self.q - 1;
                let l = log[a.0 as usize];
                FieldElement(exp[((n - l) % n) as usize])
            }
            Arith::Poly => self.pow(a, u64::from(self.q) - 2),
        }
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    #[cold]
    #[inline(never)]
    fn digit_add(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.h {
            let d = (a % self.p + b % self.p) % self.p;
            a /= self.p;
            b /= self.p;
            out += d * scale;
            scale *= self.p;
        }
        out
    }

    fn digits(&self, mut code: u32) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.h as usize);
        for _ in 0..self.h {
            d.push(code % self.p);
            code /= self.p;
        }
        d
    }

    #[cold]
    #[inline(never)]
    fn poly_mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.h == 1 {
            let prod = u64::from(a.0) * u64::from(b.0) % u64::from(self.p);
            return FieldElement(prod as u32);
        }
        let p = u64::from(self.p);
        let h = self.h as usize;
        let (da, db) = (self.digits(a.0), self.digits(b.0));
        let mut prod = vec![0u64; 2 * h - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u64::from(x) * u64::from(y)) % p;
            }
        }
        // x^h = -(m_0 + m_1 x + ... + m_{h-1} x^{h-1})
        for k in (h..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &m) in self.modulus[..h].iter().enumerate() {
                let t = c * u64::from(m) % p;
                prod[k - h + i] = (prod[k - h + i] + p - t) % p;
            }
        }
        let code = prod[..h]
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * p + d);
        FieldElement(code as u32)
    }

    fn find_primitive(&self) -> FieldElement {
        let n = u64::from(self.q) - 1;
        if n == 1 {
            return FieldElement::ONE;
        }
        let factors = prime_factors(n);
        (1..self.q)
            .map(FieldElement)
            .find(|&g| factors.iter().all(|&r| self.pow(g, n / r) != FieldElement::ONE))
            .expect("multiplicative group of a finite field is cyclic")
    }

    fn build_tables(&self) -> Arith {
        let n = (self.q - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![NO_LOG; self.q as usize];
        let mut x = FieldElement::ONE;
        for (i, e) in exp.iter_mut().enumerate().take(n.max(1)) {
            *e = x.0;
            log[x.0 as usize] = i as u32;
            x = self.poly_mul(x, self.primitive);
        }
        for i in n..exp.len() {
            exp[i] = exp[i - n.max(1)];
        }
        let zech = if self.p != 2 && self.h > 1 {
            (0..n)
                .map(|k| match self.digit_add(1, exp[k]) {
                    0 => NO_LOG,
                    s => log[s as usize],
                })
                .collect()
        } else {
            Vec::new()
        };
        Arith::Tables { exp, log, zech }
    }
}

pub fn is_prime(n: u64) -> bool {
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

/// Factors `q = p^h` with `p` prime, or returns `None`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..).find(|d| q.is_multiple_of(*d) || d * d > q).map(|d| if q.is_multiple_of(d) { d } else { q })?;
    let (mut rest, mut h) = (q, 0u32);
    while rest % p == 0 {
        rest /= p;
        h += 1;
    }
    (rest == 1).then_some((p, h))
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
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

/// Coefficient vector (constant first) of the monic polynomial of degree `deg`
/// whose lower coefficients spell `code` in base `p`.
fn monic_from_code(p: u32, deg: usize, mut code: u64) -> Vec<u32> {
    let mut c = Vec::with_capacity(deg + 1);
    for _ in 0..deg {
        c.push((code % u64::from(p)) as u32);
        code /= u64::from(p);
    }
    c.push(1);
    c
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p).
fn poly_rem(p: u32, a: &[u32], m: &[u32]) -> Vec<u32> {
    let p = u64::from(p);
    let dm = m.len() - 1;
    let mut r: Vec<u64> = a.iter().map(|&x| u64::from(x)).collect();
    while r.len() > dm {
        let c = r.pop().unwrap_or(0);
        if c == 0 {
            continue;
        }
        let off = r.len() - dm;
        for (i, &mi) in m[..dm].iter().enumerate() {
            r[off + i] = (r[off + i] + p * p - c * u64::from(mi)) % p;
        }
    }
    r.into_iter().map(|x| x as u32).collect()
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(p: u32, poly: &[u32]) -> bool {
    let deg = poly.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = u64::from(p).pow(d as u32);
        for code in 0..count {
            let divisor = monic_from_code(p, d, code);
            if poly_rem(p, poly, &divisor).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

fn first_irreducible(p: u32, h: usize) -> Vec<u32> {
    let count = u64::from(p).pow(h as u32);
    (0..count)
        .map(|code| monic_from_code(p, h, code))
        .find(|poly| is_irreducible(p, poly))
        .expect("an irreducible polynomial exists in every degree")
}
