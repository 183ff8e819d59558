//! Finite fields `F_{p^n}` with explicit moduli, viewed as extensions of a
//! chosen base `F_q`, `q = p^f`.
//!
//! Elements are stored by discrete logarithm with respect to a fixed
//! primitive element, so multiplication, powers and Frobenius are integer
//! arithmetic and addition is one Zech-logarithm lookup. The external
//! encoding of an element is its *code*: the coordinates over `F_p` in the
//! power basis `1, x, x^2, ...` of the modulus, read as a base-`p` integer
//! with the coefficient of `x^0` least significant.

mod arith;
mod embed;
pub mod poly;

use std::fmt;

pub use arith::{gcd, is_prime, pow_mod, pow_u128, prime_factors, prime_power};
pub use embed::Embedding;

use crate::error::{Error, Result};

/// Fields with more elements than this are refused unless a larger cap is requested.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 24;

const LOG_ZERO: u32 = u32::MAX;

/// A field element, meaningful only together with the [`FieldCtx`] that produced it.
///
/// The derived ordering is the logarithm order, which is deterministic but is
/// not the code order; use [`FieldCtx::code`] for canonical output ordering.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(LOG_ZERO);
    pub const ONE: Fe = Fe(0);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == LOG_ZERO
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "g^{}", self.0)
        }
    }
}

/// Construction options for [`FieldCtx::with_options`].
#[derive(Debug, Clone, Default)]
pub struct FieldOptions {
    /// Maximum field cardinality; `None` means [`DEFAULT_FIELD_CAP`].
    pub cap: Option<u64>,
    /// Monic modulus of degree `f*k` over `F_p`, coefficients low-to-high.
    pub modulus: Option<Vec<u32>>,
}

/// The field `F_{q^k}` with `q = p^f`, realised as `F_p[x]/(modulus)`.
pub struct FieldCtx {
    p: u32,
    f: u32,
    k: u32,
    q: u64,
    modulus: Vec<u32>,
    size: u32,
    order: u32,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    neg_one: Fe,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("f", &self.f)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// `F_{p^degree}` with the smallest irreducible modulus, viewed over `F_p`.
pub fn make_field(p: u64, degree: u32) -> Result<FieldCtx> {
    let p = u32::try_from(p).map_err(|_| Error::NotPrime(p))?;
    FieldCtx::new(p, 1, degree)
}

/// Multiplication on codes, used only while building the tables.
struct CodeArith {
    p: u64,
    n: usize,
    modulus: Vec<u64>,
}

impl CodeArith {
    fn digits(&self, mut c: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            out.push(c % self.p);
            c /= self.p;
        }
        out
    }

    fn code(&self, digits: &[u64]) -> u64 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        let prod = poly::mul(&self.digits(a), &self.digits(b), self.p);
        let mut r = poly::rem(&prod, &self.modulus, self.p);
        r.resize(self.n, 0);
        self.code(&r)
    }

    fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    fn add_one(&self, c: u64) -> u64 {
        if c % self.p == self.p - 1 {
            c - (self.p - 1)
        } else {
            c + 1
        }
    }
}

/// Repeated multiplication by a fixed element, linear over `F_p`.
enum Stepper {
    /// Multiplication by `x` in characteristic 2: shift and reduce.
    BinaryX { top: u64, low: u64 },
    /// Characteristic 2: XOR of byte-chunk tables of the multiplication map.
    BinaryTables(Vec<[u64; 256]>),
    /// Odd characteristic, multiplication by `x`: shift the digits and reduce.
    /// `shift[t][j]` is `-t * modulus[j] mod p`.
    DigitsX { p: u64, shift: Vec<Vec<u64>> },
    /// Odd characteristic: images of the basis vectors.
    Digits { p: u64, images: Vec<Vec<u64>> },
}

impl Stepper {
    fn new(ca: &CodeArith, g: u64) -> Stepper {
        let n = ca.n;
        if ca.p == 2 {
            if n >= 2 && g == 2 {
                let low = ca.code(&ca.modulus[..n]);
                return Stepper::BinaryX { top: 1 << n, low };
            }
            let images: Vec<u64> = (0..n).map(|j| ca.mul(g, 1 << j)).collect();
            let tables = images
                .chunks(8)
                .map(|chunk| {
                    let mut t = [0u64; 256];
                    for (b, slot) in t.iter_mut().enumerate() {
                        *slot = chunk
                            .iter()
                            .enumerate()
                            .filter(|(bit, _)| b >> bit & 1 == 1)
                            .fold(0, |acc, (_, &img)| acc ^ img);
                    }
                    t
                })
                .collect();
            return Stepper::BinaryTables(tables);
        }
        if n >= 2 && g == ca.p {
            let p = ca.p;
            let shift = (0..p)
                .map(|t| ca.modulus.iter().map(|&m| (p - t * m % p) % p).collect())
                .collect();
            return Stepper::DigitsX { p, shift };
        }
        let images = (0..n)
            .map(|j| ca.digits(ca.mul(g, ca.p.pow(j as u32))))
            .collect();
        Stepper::Digits { p: ca.p, images }
    }

    /// Advances `code` (and, in odd characteristic, its digit vector `digits`)
    /// by one multiplication.
    fn step(&self, code: u64, digits: &mut [u64], scratch: &mut [u64]) -> u64 {
        match self {
            Stepper::BinaryX { top, low } => {
                let s = code << 1;
                if s & top != 0 {
                    (s ^ top) ^ low
                } else {
                    s
                }
            }
            Stepper::BinaryTables(tables) => tables
                .iter()
                .enumerate()
                .fold(0, |acc, (t, table)| acc ^ table[(code >> (8 * t) & 0xff) as usize]),
            Stepper::DigitsX { p, shift } => {
                let n = digits.len();
                let row = &shift[digits[n - 1] as usize];
                for j in (1..n).rev() {
                    let v = digits[j - 1] + row[j];
                    digits[j] = if v >= *p { v - p } else { v };
                }
                digits[0] = row[0];
                digits.iter().rev().fold(0, |c, &d| c * p + d)
            }
            Stepper::Digits { p, images } => {
                scratch.iter_mut().for_each(|a| *a = 0);
                for (img, &cj) in images.iter().zip(digits.iter()) {
                    if cj != 0 {
                        for (a, &v) in scratch.iter_mut().zip(img) {
                            *a += cj * v;
                        }
                    }
                }
                for (d, a) in digits.iter_mut().zip(scratch.iter()) {
                    *d = a % p;
                }
                digits.iter().rev().fold(0, |c, &d| c * p + d)
            }
        }
    }
}

impl FieldCtx {
    pub fn new(p: u32, f: u32, k: u32) -> Result<Self> {
        Self::with_options(p, f, k, FieldOptions::default())
    }

    pub fn with_options(p: u32, f: u32, k: u32, opts: FieldOptions) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if f == 0 || k == 0 {
            return Err(Error::ZeroDegree);
        }
        let n = f.checked_mul(k).ok_or_else(|| Error::budget("field degree", u128::MAX, 0))?;
        let cap = opts.cap.unwrap_or(DEFAULT_FIELD_CAP).min(u32::MAX as u64 - 1);
        let size = pow_u128(p as u64, n);
        if size > cap as u128 {
            return Err(Error::budget(format!("field F_{p}^{n}"), size, cap as u128));
        }
        let pp = p as u64;
        let modulus: Vec<u64> = match opts.modulus {
            Some(m) => {
                if m.len() != n as usize + 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected {} coefficients, got {}",
                        n + 1,
                        m.len()
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidModulus("coefficient not reduced mod p".into()));
                }
                if m[n as usize] != 1 {
                    return Err(Error::InvalidModulus("not monic".into()));
                }
                let m: Vec<u64> = m.iter().map(|&c| c as u64).collect();
                if !poly::is_irreducible(&m, pp) {
                    return Err(Error::InvalidModulus("not irreducible".into()));
                }
                m
            }
            None => poly::smallest_irreducible(pp, n),
        };
        let size = size as u64;
        let order = size - 1;
        let ca = CodeArith { p: pp, n: n as usize, modulus: modulus.clone() };

        let factors = prime_factors(order);
        let is_primitive = |g: u64| factors.iter().all(|&r| ca.pow(g, order / r) != 1);
        let generator = if order == 1 {
            1
        } else if n >= 2 && is_primitive(pp) {
            pp
        } else {
            (2..size)
                .find(|&g| is_primitive(g))
                .ok_or_else(|| Error::Consistency("no primitive element".into()))?
        };

        let stepper = Stepper::new(&ca, generator);
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![LOG_ZERO; size as usize];
        let mut c = 1u64;
        let mut digits = ca.digits(1);
        let mut scratch = vec![0u64; n as usize];
        for e in 0..order {
            if log[c as usize] != LOG_ZERO {
                return Err(Error::Consistency("generator order below field order".into()));
            }
            log[c as usize] = e as u32;
            exp.push(c as u32);
            c = stepper.step(c, &mut digits, &mut scratch);
        }
        if c != 1 {
            return Err(Error::Consistency("generator powers do not close".into()));
        }
        let zech = exp.iter().map(|&c| log[ca.add_one(c as u64) as usize]).collect();
        let neg_one = if p == 2 { Fe::ONE } else { Fe((order / 2) as u32) };

        Ok(FieldCtx {
            p,
            f,
            k,
            q: pp.pow(f),
            modulus: modulus.iter().map(|&c| c as u32).collect(),
            size: size as u32,
            order: order as u32,
            generator: generator as u32,
            exp,
            log,
            zech,
            neg_one,
        })
    }

    /// Same characteristic, base degree, extension degree and modulus.
    pub fn same_field(&self, other: &FieldCtx) -> bool {
        self.p == other.p && self.f == other.f && self.k == other.k && self.modulus == other.modulus
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn f(&self) -> u32 {
        self.f
    }
    /// Degree over the base field `F_q`.
    pub fn k(&self) -> u32 {
        self.k
    }
    /// Degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.f * self.k
    }
    /// Base field size `q = p^f`.
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn size(&self) -> u64 {
        self.size as u64
    }
    /// Order of the unit group.
    pub fn order(&self) -> u64 {
        self.order as u64
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    /// Code of the primitive element used for logarithms.
    pub fn generator_code(&self) -> u32 {
        self.generator
    }

    #[inline]
    pub fn code(&self, x: Fe) -> u32 {
        if x.is_zero() {
            0
        } else {
            self.exp[x.0 as usize]
        }
    }

    /// Element with the given code. Panics if `code >= size`.
    #[inline]
    pub fn from_code(&self, code: u32) -> Fe {
        Fe(self.log[code as usize])
    }

    pub fn try_from_code(&self, code: u64) -> Result<Fe> {
        if code >= self.size as u64 {
            return Err(Error::OutOfRange(format!("code {code} in field of size {}", self.size)));
        }
        Ok(self.from_code(code as u32))
    }

    /// Coordinates over `F_p`, coefficient of `x^0` first.
    pub fn coords(&self, x: Fe) -> Vec<u32> {
        let mut c = self.code(x);
        (0..self.degree())
            .map(|_| {
                let d = c % self.p;
                c /= self.p;
                d
            })
            .collect()
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<Fe> {
        if coords.len() != self.degree() as usize || coords.iter().any(|&c| c >= self.p) {
            return Err(Error::Invalid(format!("bad coordinate vector {coords:?}")));
        }
        Ok(self.from_code(coords.iter().rev().fold(0, |acc, &d| acc * self.p + d)))
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Fe {
        let r = n.rem_euclid(self.p as i64) as u32;
        self.from_code(r)
    }

    /// The primitive element used for the logarithm tables.
    pub fn generator(&self) -> Fe {
        if self.order > 1 {
            Fe(1)
        } else {
            Fe::ONE
        }
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let diff = if b.0 >= a.0 { b.0 - a.0 } else { b.0 + self.order - a.0 };
        let z = self.zech[diff as usize];
        if z == LOG_ZERO {
            Fe::ZERO
        } else {
            Fe(((a.0 as u64 + z as u64) % self.order as u64) as u32)
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        self.mul(a, self.neg_one)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.is_zero() || b.is_zero() {
            return Fe::ZERO;
        }
        Fe(((a.0 as u64 + b.0 as u64) % self.order as u64) as u32)
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::ZeroInput("field inverse"));
        }
        Ok(Fe((self.order - a.0) % self.order))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    #[inline]
    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if a.is_zero() {
            return if e == 0 { Fe::ONE } else { Fe::ZERO };
        }
        let ord = self.order as u64;
        Fe(((a.0 as u64 * (e % ord)) % ord) as u32)
    }

    /// `a^e` for an exponent given modulo nothing; large exponents are reduced mod the unit order.
    pub fn pow_u128(&self, a: Fe, e: u128) -> Fe {
        if a.is_zero() {
            return if e == 0 { Fe::ONE } else { Fe::ZERO };
        }
        let reduced = (e % self.order as u128) as u64;
        if e > 0 && reduced == 0 {
            return Fe::ONE;
        }
        self.pow(a, reduced)
    }

    /// `a^e` for a signed exponent; fails on `0^e` with `e < 0`.
    pub fn pow_i64(&self, a: Fe, e: i64) -> Result<Fe> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(self.inv(a)?, e.unsigned_abs()))
        }
    }

    /// `x ↦ x^q`.
    #[inline]
    pub fn frobenius_q(&self, x: Fe) -> Fe {
        self.pow(x, self.q)
    }

    /// `x ↦ x^(q^t)`.
    pub fn frobenius_iter(&self, x: Fe, t: u32) -> Fe {
        if x.is_zero() {
            return x;
        }
        self.pow(x, pow_mod(self.q, t as u64, self.order as u64))
    }

    /// Norm to the base field: `x^(1 + q + ... + q^(k-1))`.
    pub fn norm_to_base(&self, x: Fe) -> Fe {
        self.pow(x, self.order as u64 / (self.q - 1))
    }

    /// `x^(1 + q + ... + q^(d-1))`, the norm `F_{q^d} -> F_q` evaluated in this field.
    pub fn norm_exponent(&self, d: u32) -> u128 {
        (0..d).map(|j| pow_u128(self.q, j)).sum()
    }

    pub fn in_base(&self, x: Fe) -> bool {
        self.frobenius_q(x) == x
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.size).map(move |c| self.from_code(c))
    }

    /// The subfield `F_{p^e}` (requires `e | degree`), zero first, then by logarithm.
    pub fn subfield_elements(&self, e: u32) -> Result<Vec<Fe>> {
        if e == 0 || !self.degree().is_multiple_of(e) {
            return Err(Error::ContextMismatch(format!(
                "F_{}^{e} is not a subfield of F_{}^{}",
                self.p,
                self.p,
                self.degree()
            )));
        }
        let sub_order = self.p.pow(e) as u64 - 1;
        let step = self.order as u64 / sub_order;
        let mut out = vec![Fe::ZERO];
        out.extend((0..sub_order).map(|j| Fe((j * step) as u32)));
        Ok(out)
    }

    /// `(-1)^n`.
    pub fn sign(&self, n: u64) -> Fe {
        if n.is_multiple_of(2) {
            Fe::ONE
        } else {
            self.neg_one
        }
    }

    /// Multiplicative order of a unit.
    pub fn unit_order(&self, x: Fe) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::ZeroInput("unit order"));
        }
        Ok(self.order as u64 / gcd(x.0 as u64, self.order as u64))
    }

    /// Raw discrete logarithm; `None` for zero.
    #[inline]
    pub fn log(&self, x: Fe) -> Option<u32> {
        (!x.is_zero()).then_some(x.0)
    }

    #[inline]
    pub fn from_log(&self, l: u64) -> Fe {
        Fe((l % self.order as u64) as u32)
    }
}
