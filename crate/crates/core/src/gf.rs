//! Construction of small finite fields `GF(p^m)` and fast element arithmetic
//! via discrete-log tables, plus the number-theoretic utilities used
//! throughout the crate.
//!
//! A field is realized deterministically: the modulus is the first monic
//! degree-`m` polynomial — ordered by the integer value of its non-leading
//! coefficient vector read base-`p` little-endian — that is irreducible and
//! whose root `x` generates the multiplicative group. For `m = 1` the modulus
//! is `x - g` with `g` the smallest primitive root mod `p`. Repeated builds
//! therefore yield bit-identical tables, and element codes are reproducible
//! across runs and machines.
//!
//! Elements are encoded as integers in `[0, p^m)`, read base-`p`
//! little-endian as the coefficient vector in the modulus basis, so code 0 is
//! the additive identity and code 1 the multiplicative identity. `-1` always
//! means the code `p - 1` embedded in the prime subfield.

use serde::Serialize;
use std::fmt;

/// Default cap on the field order: keeps both log/exp tables in memory.
pub const DEFAULT_ORDER_CAP: u64 = 1 << 22;

/// Hard ceiling regardless of configuration (table indices are `u32`).
const HARD_ORDER_CAP: u64 = 1 << 30;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GfError {
    /// `p` failed the primality check.
    NonPrime(u64),
    /// Extension degree must be at least 1.
    ZeroDegree,
    /// `p^m` exceeds the configured size cap.
    CapExceeded { order: u128, cap: u64 },
    /// An element code outside `[0, p^m)`.
    CodeOutOfRange { code: u64, order: u64 },
    /// Operation requires odd characteristic.
    EvenCharacteristic,
    /// Intermediate value does not fit the supported integer range.
    Overflow,
}

impl fmt::Display for GfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GfError::NonPrime(p) => write!(f, "{} is not prime", p),
            GfError::ZeroDegree => write!(f, "extension degree must be >= 1"),
            GfError::CapExceeded { order, cap } => {
                write!(f, "field order {} exceeds the size cap {}", order, cap)
            }
            GfError::CodeOutOfRange { code, order } => {
                write!(f, "element code {} out of range [0, {})", code, order)
            }
            GfError::EvenCharacteristic => write!(f, "operation requires odd characteristic"),
            GfError::Overflow => write!(f, "intermediate value exceeds the supported range"),
        }
    }
}

impl std::error::Error for GfError {}

/// An element of `GF(p^m)` in canonical integer encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct FieldElement(u64);

impl FieldElement {
    pub fn code(self) -> u64 {
        self.0
    }
}

/// 2-adic valuation, with a distinguished marker for `v2(0)`.
///
/// The derived ordering places `Infinite` above every finite valuation, so
/// comparisons like `v2(m) <= v2(k)` read off directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum V2 {
    Finite(u32),
    Infinite,
}

/// Largest `e` with `2^e | n`; `v2(0)` is infinite.
pub fn v2(n: u64) -> V2 {
    if n == 0 {
        V2::Infinite
    } else {
        V2::Finite(n.trailing_zeros())
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Modular inverse of `a` mod `n` via extended Euclid; `None` when
/// `gcd(a, n) != 1`.
pub fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (n as i128, (a % n) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(n as i128) as u64)
}

pub(crate) fn mod_mul(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub(crate) fn mod_pow(base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut base = base % n;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, n);
        }
        base = mod_mul(base, base, n);
        exp >>= 1;
    }
    acc
}

/// Trial-division primality; fine at desk scale.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d as u128 * d as u128 <= n as u128 {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `gcd(p^k + 1, p^m - 1)` in closed form:
///
/// * `p = 2`: `(2^gcd(2k,m) - 1) / (2^gcd(k,m) - 1)`,
/// * `v2(m) <= v2(k)`: `2`,
/// * `v2(m) > v2(k)`: `p^gcd(k,m) + 1`.
///
/// The closed form is asserted against the directly computed gcd on every
/// call.
pub fn gcd_pk1(p: u64, k: u32, m: u32) -> u64 {
    assert!(k >= 1 && m >= 1, "gcd_pk1 requires k, m >= 1");
    let value = if p == 2 {
        let g2 = gcd(2 * k as u64, m as u64);
        let g1 = gcd(k as u64, m as u64);
        ((1u128 << g2) - 1) as u64 / ((1u64 << g1) - 1)
    } else if v2(m as u64) <= v2(k as u64) {
        2
    } else {
        let g = gcd(k as u64, m as u64);
        let pg = (p as u128).pow(g as u32);
        u64::try_from(pg + 1).expect("p^gcd(k,m)+1 exceeds u64")
    };
    // gcd(a, n) = gcd(a mod n, n), so the direct check never overflows.
    let n = (p as u128).pow(m) - 1;
    let direct = if n == 1 {
        1
    } else {
        let n = u64::try_from(n).expect("p^m-1 exceeds u64");
        gcd((mod_pow(p, k as u64, n) + 1) % n, n)
    };
    assert_eq!(
        value, direct,
        "closed-form gcd(p^k+1, p^m-1) disagrees with Euclid for p={p} k={k} m={m}"
    );
    value
}

/// Serializable field realization, embedded in every report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldHeader {
    pub p: u64,
    pub m: u32,
    pub order: u64,
    /// Monic modulus, little-endian coefficients (length `m + 1`).
    pub modulus: Vec<u64>,
    /// Code of the primitive element the log/exp tables are built on.
    pub generator: u64,
}

/// A concrete realization of `GF(p^m)`: modulus, generator, and the mutually
/// inverse log/exp tables. Immutable after construction and safe to share
/// across threads; all operations are pure functions of their inputs.
#[derive(Debug, Clone)]
pub struct FieldSpec {
    p: u64,
    m: u32,
    order: u64,
    modulus: Vec<u64>,
    generator: u64,
    /// `log[x]` for nonzero `x`; `log[0]` is a sentinel.
    log: Vec<u32>,
    /// `exp[i] = generator^i` for `i` in `[0, p^m - 1)`.
    exp: Vec<u32>,
    /// `succ[x] = x + 1` (field addition), precomputed for hot loops.
    succ: Vec<u32>,
}

const LOG_ZERO: u32 = u32::MAX;

/// Builds `GF(p^m)` under the default size cap.
pub fn build_field(p: u64, m: u32) -> Result<FieldSpec, GfError> {
    build_field_with_cap(p, m, DEFAULT_ORDER_CAP)
}

/// Builds `GF(p^m)` with an explicit cap on `p^m`.
pub fn build_field_with_cap(p: u64, m: u32, cap: u64) -> Result<FieldSpec, GfError> {
    if m == 0 {
        return Err(GfError::ZeroDegree);
    }
    if !is_prime(p) {
        return Err(GfError::NonPrime(p));
    }
    let cap = cap.min(HARD_ORDER_CAP);
    let order_wide = (p as u128).pow(m);
    if order_wide > cap as u128 {
        return Err(GfError::CapExceeded {
            order: order_wide,
            cap,
        });
    }
    let order = order_wide as u64;

    let (modulus, exp) = if m == 1 {
        let g = smallest_primitive_root(p);
        let mut exp = Vec::with_capacity((order - 1) as usize);
        let mut cur = 1u64;
        for _ in 0..order - 1 {
            exp.push(cur as u32);
            cur = mod_mul(cur, g, p);
        }
        (vec![(p - g) % p, 1], exp)
    } else {
        build_extension_tables(p, m, order)
    };

    let mut log = vec![LOG_ZERO; order as usize];
    for (i, &x) in exp.iter().enumerate() {
        log[x as usize] = i as u32;
    }
    // GF(2) has the trivial multiplicative group; its generator is 1.
    let generator = exp[(1 % (order - 1)) as usize] as u64;

    let mut succ = Vec::with_capacity(order as usize);
    for x in 0..order {
        let low = x % p;
        succ.push((x - low + (low + 1) % p) as u32);
    }

    Ok(FieldSpec {
        p,
        m,
        order,
        modulus,
        generator,
        log,
        exp,
        succ,
    })
}

fn smallest_primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let n = p - 1;
    let factors = factorize(n);
    'outer: for g in 2..p {
        for (r, _) in &factors {
            if mod_pow(g, n / r, p) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("every prime has a primitive root");
}

/// Scans monic degree-`m` candidates in coefficient-value order and returns
/// the modulus plus the exp table of its root `x`.
fn build_extension_tables(p: u64, m: u32, order: u64) -> (Vec<u64>, Vec<u32>) {
    for value in 0..order {
        let mut modulus = digits(value, p, m as usize);
        modulus.push(1);
        if !poly_is_irreducible(&modulus, p) {
            continue;
        }
        if !root_is_primitive(&modulus, p, order) {
            continue;
        }
        let exp = exp_table_for(&modulus, p, m, order);
        return (modulus, exp);
    }
    // Primitive polynomials exist for every (p, m); not finding one is a bug.
    unreachable!("no primitive polynomial found for p={p}, m={m}");
}

fn digits(mut v: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0u64; len];
    for d in out.iter_mut() {
        *d = v % p;
        v /= p;
    }
    out
}

fn encode(coeffs: &[u64], p: u64) -> u64 {
    let mut out = 0u64;
    for &c in coeffs.iter().rev() {
        out = out * p + c;
    }
    out
}

fn poly_degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

/// Remainder of `a` mod `b` over GF(p); `b` must be nonzero.
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = poly_degree(b).expect("division by zero polynomial");
    let lead_inv = mod_inverse(b[db], p).expect("leading coefficient invertible");
    let mut r = a.to_vec();
    while let Some(dr) = poly_degree(&r) {
        if dr < db {
            break;
        }
        let coef = mod_mul(r[dr], lead_inv, p);
        let shift = dr - db;
        for i in 0..=db {
            let sub = mod_mul(coef, b[i], p);
            r[i + shift] = (r[i + shift] + p - sub) % p;
        }
    }
    r.truncate(poly_degree(&r).map_or(0, |d| d + 1));
    r
}

fn poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = poly_degree(f).unwrap_or(0);
    if deg == 0 {
        return false;
    }
    // A root in GF(p) gives a linear factor; for degree <= 3 that is the
    // whole test.
    if f[0] == 0 {
        return false;
    }
    for c in 0..p {
        let mut acc = 0u64;
        for &coef in f.iter().rev() {
            acc = (mod_mul(acc, c, p) + coef) % p;
        }
        if acc == 0 {
            return false;
        }
    }
    if deg <= 3 {
        return true;
    }
    // Trial division by monic polynomials of degree 2..=deg/2.
    for e in 2..=deg / 2 {
        let count = (p as u128).pow(e as u32);
        for v in 0..count {
            let mut div = digits(v as u64, p, e);
            div.push(1);
            if poly_rem(f, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + mod_mul(ai, bj, p)) % p;
        }
    }
    poly_rem(&prod, f, p)
}

fn poly_powmod(base: &[u64], mut exp: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut base = poly_rem(base, f, p);
    let mut acc = vec![1u64];
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_mulmod(&acc, &base, f, p);
        }
        base = poly_mulmod(&base, &base, f, p);
        exp >>= 1;
    }
    acc
}

/// Does the class of `x` have multiplicative order exactly `order - 1`?
fn root_is_primitive(f: &[u64], p: u64, order: u64) -> bool {
    let n = order - 1;
    let x = vec![0u64, 1];
    if poly_powmod(&x, n, f, p) != vec![1] {
        return false;
    }
    for (r, _) in factorize(n) {
        if poly_powmod(&x, n / r, f, p) == vec![1] {
            return false;
        }
    }
    true
}

fn exp_table_for(modulus: &[u64], p: u64, m: u32, order: u64) -> Vec<u32> {
    let m = m as usize;
    let mut exp = Vec::with_capacity((order - 1) as usize);
    let mut cur = vec![0u64; m];
    cur[0] = 1;
    for _ in 0..order - 1 {
        exp.push(encode(&cur, p) as u32);
        // Multiply by x: shift up, then reduce by the monic modulus.
        let carry = cur[m - 1];
        for i in (1..m).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if carry != 0 {
            for i in 0..m {
                let sub = mod_mul(carry, modulus[i], p);
                cur[i] = (cur[i] + p - sub) % p;
            }
        }
    }
    exp
}

impl FieldSpec {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// `p^m`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Monic modulus, little-endian coefficients.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn generator(&self) -> FieldElement {
        FieldElement(self.generator)
    }

    pub fn header(&self) -> FieldHeader {
        FieldHeader {
            p: self.p,
            m: self.m,
            order: self.order,
            modulus: self.modulus.clone(),
            generator: self.generator,
        }
    }

    /// Human-readable modulus, e.g. `x^2 + x + 2`.
    pub fn modulus_string(&self) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            };
            terms.push(t);
        }
        terms.join(" + ")
    }

    pub fn element(&self, code: u64) -> Result<FieldElement, GfError> {
        if code < self.order {
            Ok(FieldElement(code))
        } else {
            Err(GfError::CodeOutOfRange {
                code,
                order: self.order,
            })
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// `-1`, i.e. the code `p - 1` embedded in the prime subfield.
    pub fn minus_one(&self) -> FieldElement {
        FieldElement(self.p - 1)
    }

    /// Embeds the integer `n mod p` into the prime subfield.
    pub fn scalar(&self, n: u64) -> FieldElement {
        FieldElement(n % self.p)
    }

    /// Iterator over every element code.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(FieldElement)
    }

    #[inline]
    pub(crate) fn add_code(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        let mut mult = 1u64;
        while a != 0 || b != 0 {
            out += (a % self.p + b % self.p) % self.p * mult;
            a /= self.p;
            b /= self.p;
            mult *= self.p;
        }
        out
    }

    #[inline]
    pub(crate) fn sub_code(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        let mut mult = 1u64;
        while a != 0 || b != 0 {
            out += (self.p + a % self.p - b % self.p) % self.p * mult;
            a /= self.p;
            b /= self.p;
            mult *= self.p;
        }
        out
    }

    #[inline]
    pub(crate) fn neg_code(&self, a: u64) -> u64 {
        self.sub_code(0, a)
    }

    #[inline]
    pub(crate) fn mul_code(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.order - 1;
        let e = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % n;
        self.exp[e as usize] as u64
    }

    #[inline]
    pub(crate) fn pow_code(&self, x: u64, d: u64) -> u64 {
        if x == 0 {
            return if d == 0 { 1 } else { 0 };
        }
        let n = self.order - 1;
        let e = (d % n) * self.log[x as usize] as u64 % n;
        self.exp[e as usize] as u64
    }

    #[inline]
    pub(crate) fn succ_code(&self, x: u64) -> u64 {
        self.succ[x as usize] as u64
    }

    #[inline]
    pub(crate) fn log_code(&self, x: u64) -> u32 {
        self.log[x as usize]
    }

    #[inline]
    pub(crate) fn exp_code(&self, e: u64) -> u64 {
        self.exp[e as usize] as u64
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        FieldElement(self.add_code(x.0, y.0))
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        FieldElement(self.sub_code(x.0, y.0))
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        FieldElement(self.neg_code(x.0))
    }

    /// Product via the log/exp tables; 0 if either operand is 0.
    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        FieldElement(self.mul_code(x.0, y.0))
    }

    /// Multiplicative inverse; `None` for 0.
    pub fn inv(&self, x: FieldElement) -> Option<FieldElement> {
        if x.0 == 0 {
            return None;
        }
        let n = self.order - 1;
        let e = (n - self.log[x.0 as usize] as u64) % n;
        Some(FieldElement(self.exp[e as usize] as u64))
    }

    /// `x^d` with the exponent reduced mod `p^m - 1`; `0^0 = 1` by
    /// convention, `0^d = 0` for `d >= 1`.
    pub fn pow(&self, x: FieldElement, d: u64) -> FieldElement {
        FieldElement(self.pow_code(x.0, d))
    }

    /// Discrete log of a nonzero element w.r.t. the generator.
    pub fn log(&self, x: FieldElement) -> Option<u64> {
        if x.0 == 0 {
            None
        } else {
            Some(self.log[x.0 as usize] as u64)
        }
    }

    /// `generator^e`.
    pub fn generator_pow(&self, e: u64) -> FieldElement {
        let n = self.order - 1;
        FieldElement(self.exp[(e % n) as usize] as u64)
    }

    /// Quadratic character: 0 for 0, 1 for nonzero squares, -1 otherwise.
    /// Equals `x^((p^m - 1)/2)` mapped to `{1, -1}`. Odd `p` only.
    pub fn quadratic_character(&self, x: FieldElement) -> Result<i32, GfError> {
        if self.p == 2 {
            return Err(GfError::EvenCharacteristic);
        }
        if x.0 == 0 {
            return Ok(0);
        }
        Ok(if self.log[x.0 as usize] % 2 == 0 { 1 } else { -1 })
    }

    /// Absolute trace to the prime subfield: `x + x^p + ... + x^(p^(m-1))`.
    pub fn trace(&self, x: FieldElement) -> FieldElement {
        let mut acc = 0u64;
        let mut pw = 1u64;
        for _ in 0..self.m {
            acc = self.add_code(acc, self.pow_code(x.0, pw));
            pw *= self.p;
        }
        debug_assert!(acc < self.p, "trace lands in the prime subfield");
        FieldElement(acc)
    }

    /// Frobenius fixed-point test: is `x` in the subfield `GF(p^g)`?
    /// Meaningful when `g` divides `m`.
    pub fn in_subfield(&self, x: FieldElement, g: u32) -> bool {
        let pg = self.p.pow(g);
        self.pow_code(x.0, pg) == x.0
    }
}
