//! Exact arithmetic in the tower `F_p ⊆ F_q ⊆ F_{q^n} ⊆ F_{q^m}`.
//!
//! Every level is a prime field extension `F_p[x]/(f)`. Elements are stored by
//! their integer encoding: the coefficient vector of the residue polynomial read
//! as little-endian base-`p` digits. The integer order on encodings is the total
//! order used whenever a "smallest" element or polynomial is chosen.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fields with at most this many elements get log/antilog tables.
const TABLE_LIMIT: u64 = 1 << 20;

/// A field element, identified by its integer encoding.
///
/// The field it belongs to is carried by context (a [`GaloisField`] or a
/// [`FieldTower`] level); operations check membership where it matters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
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

/// Dense polynomials over `F_p` as little-endian coefficient vectors.
pub mod fp_poly {
    use super::*;

    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn degree(a: &[u32]) -> Option<usize> {
        a.iter().rposition(|&c| c != 0)
    }

    pub fn from_int(p: u32, mut v: u64) -> Vec<u32> {
        let mut out = Vec::new();
        while v > 0 {
            out.push((v % p as u64) as u32);
            v /= p as u64;
        }
        out
    }

    pub fn to_int(p: u32, a: &[u32]) -> u64 {
        a.iter().rev().fold(0u64, |acc, &c| acc * p as u64 + c as u64)
    }

    pub fn inv_mod_p(a: u32, p: u32) -> u32 {
        let mut result = 1u64;
        let mut base = a as u64 % p as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        result as u32
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let len = a.len().max(b.len());
        let out = (0..len)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
        let mut r = trim(a.to_vec());
        let df = degree(f).expect("nonzero modulus");
        let lead_inv = inv_mod_p(f[df], p) as u64;
        while let Some(dr) = degree(&r) {
            if dr < df {
                break;
            }
            let c = (r[dr] as u64 * lead_inv % p as u64) as u32;
            let shift = dr - df;
            for (i, &fc) in f.iter().enumerate().take(df + 1) {
                let t = (c as u64 * fc as u64 % p as u64) as u32;
                r[i + shift] = (r[i + shift] + p - t) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        rem(&prod, f, p)
    }

    pub fn pow_mod(a: &[u32], mut e: u64, f: &[u32], p: u32) -> Vec<u32> {
        let mut result = vec![1u32];
        let mut base = rem(a, f, p);
        while e > 0 {
            if e & 1 == 1 {
                result = mul_mod(&result, &base, f, p);
            }
            base = mul_mod(&base, &base, f, p);
            e >>= 1;
        }
        rem(&result, f, p)
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let Some(d) = degree(f) else { return false };
        if d == 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        let x = vec![0u32, 1];
        // x^(p^k) mod f for k = 1..=d
        let mut frob = vec![x.clone()];
        for _ in 0..d {
            let last = frob.last().unwrap();
            frob.push(pow_mod(last, p as u64, f, p));
        }
        if trim(sub(&frob[d], &x, p)) != Vec::<u32>::new() {
            return false;
        }
        for r in prime_factors(d as u64) {
            let h = sub(&frob[d / r as usize], &x, p);
            let g = gcd(f, &h, p);
            if degree(&g) != Some(0) {
                return false;
            }
        }
        true
    }

    /// Lexicographically smallest (by integer encoding) monic irreducible of degree `d`.
    pub fn smallest_irreducible(p: u32, d: usize) -> Vec<u32> {
        let lead = (p as u64).pow(d as u32);
        (lead..2 * lead)
            .map(|v| {
                let mut c = from_int(p, v - lead);
                c.resize(d, 0);
                c.push(1);
                c
            })
            .find(|c| is_irreducible(c, p))
            .expect("an irreducible polynomial exists in every degree")
    }
}

#[derive(Clone, Debug)]
struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// The field `F_p[x]/(modulus)`.
#[derive(Clone, Debug)]
pub struct GaloisField {
    p: u32,
    degree: usize,
    size: u64,
    modulus: Vec<u32>,
    modulus_bits: u64,
    tables: Option<LogTables>,
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for GaloisField {}

impl GaloisField {
    /// Builds `F_{p^degree}`; the default modulus is the smallest irreducible.
    pub fn new(p: u32, degree: usize, modulus: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if degree == 0 {
            return Err(Error::InvalidParameter("field degree must be positive".into()));
        }
        let size = (p as u64)
            .checked_pow(degree as u32)
            .filter(|&s| s <= 1 << 32)
            .ok_or(Error::FieldTooLarge { p, degree })?;
        let modulus = match modulus {
            None => fp_poly::smallest_irreducible(p, degree),
            Some(m) => {
                let m = fp_poly::trim(m);
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidParameter(format!(
                        "modulus coefficients must lie in 0..{p}"
                    )));
                }
                let found = fp_poly::degree(&m).unwrap_or(0);
                if found != degree {
                    return Err(Error::ModulusDegree { expected: degree, found });
                }
                if m[degree] != 1 {
                    return Err(Error::InvalidParameter("modulus must be monic".into()));
                }
                if !fp_poly::is_irreducible(&m, p) {
                    return Err(Error::ReducibleModulus { p, modulus: m });
                }
                m
            }
        };
        let modulus_bits = if p == 2 { fp_poly::to_int(2, &modulus) } else { 0 };
        let mut field = GaloisField { p, degree, size, modulus, modulus_bits, tables: None };
        if size <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    fn build_tables(&self) -> LogTables {
        let order = self.size - 1;
        let g = self.find_primitive_slow();
        let mut exp = Vec::with_capacity(2 * order as usize);
        let mut log = vec![0u32; self.size as usize];
        let mut x = Fe::ONE;
        for i in 0..order {
            exp.push(x.0);
            log[x.0 as usize] = i as u32;
            x = self.mul_slow(x, g);
        }
        let copy = exp.clone();
        exp.extend(copy);
        LogTables { exp, log }
    }

    fn find_primitive_slow(&self) -> Fe {
        let order = self.size - 1;
        let factors = prime_factors(order);
        (1..self.size as u32)
            .map(Fe)
            .find(|&g| factors.iter().all(|&r| self.pow_slow(g, order / r) != Fe::ONE))
            .expect("multiplicative group is cyclic")
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Integer encoding of the modulus.
    pub fn modulus_encoding(&self) -> u64 {
        fp_poly::to_int(self.p, &self.modulus)
    }

    pub fn contains(&self, x: Fe) -> bool {
        (x.0 as u64) < self.size
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> + Clone {
        (0..self.size).map(|v| Fe(v as u32))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fe> + Clone {
        (1..self.size).map(|v| Fe(v as u32))
    }

    /// The class of `x` in `F_p[x]/(f)`; the zero element when the degree is one.
    pub fn generator(&self) -> Fe {
        if self.degree == 1 {
            Fe(fp_poly::rem(&[0, 1], &self.modulus, self.p).first().copied().unwrap_or(0))
        } else {
            Fe(self.p)
        }
    }

    /// Base-`p` digits, little-endian, always `degree` long.
    pub fn digits(&self, x: Fe) -> Vec<u32> {
        let mut v = x.0 as u64;
        (0..self.degree)
            .map(|_| {
                let d = (v % self.p as u64) as u32;
                v /= self.p as u64;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Fe {
        Fe(fp_poly::to_int(self.p, digits) as u32)
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        let p = self.p as u64;
        let (mut x, mut y) = (a.0 as u64, b.0 as u64);
        let (mut out, mut w) = (0u64, 1u64);
        for _ in 0..self.degree {
            out += ((x % p + y % p) % p) * w;
            x /= p;
            y /= p;
            w *= p;
        }
        Fe(out as u32)
    }

    pub fn neg(&self, a: Fe) -> Fe {
        if self.p == 2 {
            return a;
        }
        let p = self.p as u64;
        let mut x = a.0 as u64;
        let (mut out, mut w) = (0u64, 1u64);
        for _ in 0..self.degree {
            out += ((p - x % p) % p) * w;
            x /= p;
            w *= p;
        }
        Fe(out as u32)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    /// `c · a` for an integer scalar `c`.
    pub fn scale(&self, c: u32, a: Fe) -> Fe {
        self.mul(Fe(c % self.p), a)
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.is_zero() || b.is_zero() {
            return Fe::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let i = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
                Fe(t.exp[i])
            }
            None => self.mul_slow(a, b),
        }
    }

    /// Schoolbook multiplication modulo the defining polynomial.
    pub fn mul_slow(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            let (x, y) = (a.0 as u64, b.0 as u64);
            let mut prod = 0u64;
            for i in 0..self.degree {
                if (y >> i) & 1 == 1 {
                    prod ^= x << i;
                }
            }
            for i in (self.degree..2 * self.degree).rev() {
                if (prod >> i) & 1 == 1 {
                    prod ^= self.modulus_bits << (i - self.degree);
                }
            }
            return Fe(prod as u32);
        }
        let r = fp_poly::mul_mod(&self.digits(a), &self.digits(b), &self.modulus, self.p);
        self.from_digits(&r)
    }

    fn pow_slow(&self, a: Fe, mut e: u64) -> Fe {
        let mut result = Fe::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul_slow(result, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        result
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.is_zero() {
            return Fe::ZERO;
        }
        let order = self.size - 1;
        let e = e % order;
        match &self.tables {
            Some(t) => {
                let l = t.log[a.0 as usize] as u128 * e as u128 % order as u128;
                Fe(t.exp[l as usize])
            }
            None => {
                let mut result = Fe::ONE;
                let mut base = a;
                let mut e = e;
                while e > 0 {
                    if e & 1 == 1 {
                        result = self.mul(result, base);
                    }
                    base = self.mul(base, base);
                    e >>= 1;
                }
                result
            }
        }
    }

    /// Power with an arbitrary-precision exponent.
    pub fn pow_big(&self, a: Fe, e: &BigUint) -> Fe {
        if e.is_zero() {
            return Fe::ONE;
        }
        if a.is_zero() {
            return Fe::ZERO;
        }
        let reduced = (e % BigUint::from(self.size - 1)).to_u64().expect("reduced exponent fits");
        if reduced == 0 {
            Fe::ONE
        } else {
            self.pow(a, reduced)
        }
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(match &self.tables {
            Some(t) => {
                let order = (self.size - 1) as usize;
                let l = t.log[a.0 as usize] as usize;
                Fe(t.exp[(order - l) % order])
            }
            None => self.pow(a, self.size - 2),
        })
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^(p^e)`.
    pub fn frob_p(&self, a: Fe, e: usize) -> Fe {
        let e = e % self.degree;
        let exp = BigUint::from(self.p).pow(e as u32);
        self.pow_big(a, &exp)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Fe) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let mut ord = self.size - 1;
        for r in prime_factors(self.size - 1) {
            while ord.is_multiple_of(r) && self.pow(a, ord / r) == Fe::ONE {
                ord /= r;
            }
        }
        Ok(ord)
    }

    /// Smallest element (by encoding) generating the multiplicative group.
    pub fn primitive_element(&self) -> Fe {
        match &self.tables {
            Some(t) => Fe(t.exp[1 % (self.size as usize - 1).max(1)]),
            None => self.find_primitive_slow(),
        }
    }

    /// Evaluates an `F_p` polynomial at `x` (Horner).
    pub fn eval_fp_poly(&self, coeffs: &[u32], x: Fe) -> Fe {
        coeffs
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| self.add(self.mul(acc, x), Fe(c % self.p)))
    }

    /// Smallest root (by encoding) of an `F_p` polynomial in this field.
    pub fn smallest_root(&self, coeffs: &[u32]) -> Option<Fe> {
        self.elements().find(|&x| self.eval_fp_poly(coeffs, x).is_zero())
    }
}

/// A level of the tower.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Level {
    /// `F_q`
    Base,
    /// `F_{q^n}`
    Sub,
    /// `F_{q^m}`
    Top,
}

impl Level {
    pub fn name(self) -> &'static str {
        match self {
            Level::Base => "F_q",
            Level::Sub => "F_q^n",
            Level::Top => "F_q^m",
        }
    }
}

/// A value together with the tower level it lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub level: Level,
    pub value: Fe,
}

/// Target subfield of a norm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormTarget {
    Fq,
    Fp,
}

/// Optional user-supplied moduli (little-endian `F_p` coefficient lists).
#[derive(Clone, Debug, Default)]
pub struct Moduli {
    pub base: Option<Vec<u32>>,
    pub sub: Option<Vec<u32>>,
    pub top: Option<Vec<u32>>,
}

/// The chain `F_p ⊆ F_q ⊆ F_{q^n} ⊆ F_{q^m}` with `q = p^ell`.
///
/// Immutable once built. The embedding of `F_{q^n}` into `F_{q^m}` exists only
/// when `n | m`; it sends the class of `x` to the smallest root of the
/// `F_{q^n}` modulus inside `F_{q^m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldTower {
    p: u32,
    ell: usize,
    n: usize,
    m: usize,
    q: u64,
    base: GaloisField,
    sub: GaloisField,
    top: GaloisField,
    base_in_sub: Vec<Fe>,
    base_in_top: Vec<Fe>,
    sub_in_top: Option<Vec<Fe>>,
}

impl FieldTower {
    pub fn new(p: u32, ell: usize, n: usize, m: usize) -> Result<Self> {
        Self::with_moduli(p, ell, n, m, Moduli::default())
    }

    pub fn with_moduli(p: u32, ell: usize, n: usize, m: usize, moduli: Moduli) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if ell == 0 || n == 0 || m == 0 {
            return Err(Error::InvalidParameter("ell, n and m must be positive".into()));
        }
        if n > m {
            return Err(Error::InvalidParameter(format!("n={n} exceeds m={m}")));
        }
        let top = GaloisField::new(p, ell * m, moduli.top)?;
        let sub = if n == m && moduli.sub.is_none() {
            top.clone()
        } else {
            GaloisField::new(p, ell * n, moduli.sub)?
        };
        let base = GaloisField::new(p, ell, moduli.base)?;
        let q = (p as u64).pow(ell as u32);

        let base_in_sub = basis_images(&base, &sub);
        let sub_in_top = if m.is_multiple_of(n) { Some(basis_images(&sub, &top)) } else { None };
        let base_in_top = match &sub_in_top {
            Some(images) => base_in_sub.iter().map(|&b| map_linear(&sub, &top, images, b)).collect(),
            None => basis_images(&base, &top),
        };
        Ok(FieldTower { p, ell, n, m, q, base, sub, top, base_in_sub, base_in_top, sub_in_top })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn base(&self) -> &GaloisField {
        &self.base
    }

    pub fn sub(&self) -> &GaloisField {
        &self.sub
    }

    pub fn top(&self) -> &GaloisField {
        &self.top
    }

    pub fn field(&self, level: Level) -> &GaloisField {
        match level {
            Level::Base => &self.base,
            Level::Sub => &self.sub,
            Level::Top => &self.top,
        }
    }

    pub fn has_embedding(&self) -> bool {
        self.sub_in_top.is_some()
    }

    /// Images in `F_{q^m}` of the polynomial basis `1, y, …, y^{ell·n−1}` of `F_{q^n}`.
    pub fn sub_basis_images(&self) -> Result<&[Fe]> {
        self.sub_in_top
            .as_deref()
            .ok_or(Error::NoEmbedding { n: self.n, m: self.m })
    }

    /// An `F_p`-basis of the embedded copy of `F_q` inside `F_{q^m}`.
    pub fn fq_basis(&self) -> &[Fe] {
        &self.base_in_top
    }

    /// Embeds an element of `F_{q^n}` into `F_{q^m}`.
    pub fn embed(&self, x: Fe) -> Result<Fe> {
        let images = self.sub_basis_images()?;
        if !self.sub.contains(x) {
            return Err(Error::LevelMismatch { level: Level::Sub.name(), value: x.0 });
        }
        Ok(map_linear(&self.sub, &self.top, images, x))
    }

    /// Embeds an element of `F_q` into `F_{q^m}`.
    pub fn embed_base(&self, x: Fe) -> Result<Fe> {
        if !self.base.contains(x) {
            return Err(Error::LevelMismatch { level: Level::Base.name(), value: x.0 });
        }
        Ok(map_linear(&self.base, &self.top, &self.base_in_top, x))
    }

    /// Embeds an element of `F_q` into `F_{q^n}`.
    pub fn embed_base_in_sub(&self, x: Fe) -> Result<Fe> {
        if !self.base.contains(x) {
            return Err(Error::LevelMismatch { level: Level::Base.name(), value: x.0 });
        }
        Ok(map_linear(&self.base, &self.sub, &self.base_in_sub, x))
    }

    /// Embeds a tagged element into the top field.
    pub fn lift(&self, x: FieldElement) -> Result<Fe> {
        match x.level {
            Level::Top => {
                if self.top.contains(x.value) {
                    Ok(x.value)
                } else {
                    Err(Error::LevelMismatch { level: Level::Top.name(), value: x.value.0 })
                }
            }
            Level::Sub => self.embed(x.value),
            Level::Base => self.embed_base(x.value),
        }
    }

    /// Every element of the embedded `F_q`, ascending by encoding in `F_q`.
    pub fn fq_elements(&self) -> Vec<Fe> {
        self.base.elements().map(|x| map_linear(&self.base, &self.top, &self.base_in_top, x)).collect()
    }

    /// Every element of the embedded `F_{q^n}`, ordered by encoding in `F_{q^n}`.
    pub fn sub_elements(&self) -> Result<Vec<Fe>> {
        let images = self.sub_basis_images()?;
        Ok(self.sub.elements().map(|x| map_linear(&self.sub, &self.top, images, x)).collect())
    }

    /// `q^e mod (|level| - 1)`, the exponent realising the `e`-th power of Frobenius.
    fn frobenius_exponent(&self, level: Level, e: usize) -> u64 {
        let order = self.field(level).size() - 1;
        if order == 0 {
            return 1;
        }
        let q = BigUint::from(self.q);
        let r = q.modpow(&BigUint::from(e), &BigUint::from(order));
        r.to_u64().unwrap()
    }

    /// `x^(q^s)` in `F_{q^m}`.
    pub fn frobenius(&self, x: Fe, s: usize) -> Fe {
        self.frobenius_at(Level::Top, x, s)
    }

    /// `x^(q^s)` at the given level; `s` is reduced modulo the level's degree over `F_q`.
    pub fn frobenius_at(&self, level: Level, x: Fe, s: usize) -> Fe {
        let field = self.field(level);
        let deg_q = field.degree() / self.ell;
        let s = s % deg_q;
        if s == 0 || x.is_zero() {
            return x;
        }
        let e = self.frobenius_exponent(level, s);
        if e == 0 {
            // q^s ≡ 0 mod (N-1) only when N-1 | q^s, i.e. N = 2.
            return x;
        }
        field.pow(x, e)
    }

    /// `N_{q^m/q}(x)` or `N_{q^m/p}(x)`, as an element of `F_{q^m}`.
    pub fn norm(&self, x: Fe, down_to: NormTarget) -> Fe {
        let exp = match down_to {
            NormTarget::Fq => {
                let q = BigUint::from(self.q);
                (q.pow(self.m as u32) - 1u32) / (q - 1u32)
            }
            NormTarget::Fp => {
                let p = BigUint::from(self.p);
                (p.pow((self.ell * self.m) as u32) - 1u32) / (p - 1u32)
            }
        };
        self.top.pow_big(x, &exp)
    }

    /// Whether `x^(q^d) = x`, i.e. `x ∈ F_{q^d}` (for `d | m`).
    pub fn in_subfield(&self, x: Fe, d: usize) -> bool {
        self.frobenius(x, d) == x
    }

    /// Maps an integer scalar of `F_p` into the top field.
    pub fn fp(&self, c: u32) -> Fe {
        Fe(c % self.p)
    }

    /// `-1` in the top field.
    pub fn minus_one(&self) -> Fe {
        self.top.neg(Fe::ONE)
    }
}

/// Images of `1, y, y^2, …` where `y` is sent to the smallest root of `src`'s modulus in `dst`.
fn basis_images(src: &GaloisField, dst: &GaloisField) -> Vec<Fe> {
    let root = dst
        .smallest_root(src.modulus())
        .expect("a subfield of matching degree always contains a root");
    let mut out = Vec::with_capacity(src.degree());
    let mut x = Fe::ONE;
    for _ in 0..src.degree() {
        out.push(x);
        x = dst.mul(x, root);
    }
    out
}

fn map_linear(src: &GaloisField, dst: &GaloisField, images: &[Fe], x: Fe) -> Fe {
    src.digits(x)
        .iter()
        .zip(images)
        .filter(|(d, _)| **d != 0)
        .fold(Fe::ZERO, |acc, (&d, &img)| dst.add(acc, dst.scale(d, img)))
}

/// `(base^e - 1) / (base - 1)` with exact big integers.
pub fn geometric_sum(base: u64, e: u32) -> BigUint {
    let b = BigUint::from(base);
    (b.pow(e) - BigUint::one()) / (BigUint::from(base) - BigUint::one())
}

/// `gcd(s, m) == 1`.
pub fn coprime(s: usize, m: usize) -> bool {
    s.gcd(&m) == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_irreducible(f: &[u32], p: u32) -> bool {
        let d = fp_poly::degree(f).unwrap();
        for dg in 1..=d / 2 {
            let lead = (p as u64).pow(dg as u32);
            for low in 0..lead {
                let mut g = fp_poly::from_int(p, low);
                g.resize(dg, 0);
                g.push(1);
                if fp_poly::rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn smallest_irreducible_degree_four_over_f2() {
        // monic degree-4 candidates with nonzero constant term, ascending
        let mut first = None;
        for low in (1..16u64).step_by(2) {
            let mut c = fp_poly::from_int(2, low);
            c.resize(4, 0);
            c.push(1);
            if brute_irreducible(&c, 2) {
                first = Some(c);
                break;
            }
        }
        assert_eq!(first.unwrap(), vec![1, 1, 0, 0, 1]);
        assert_eq!(fp_poly::smallest_irreducible(2, 4), vec![1, 1, 0, 0, 1]);
        let tower = FieldTower::new(2, 1, 4, 4).unwrap();
        assert_eq!(tower.top().modulus_encoding(), 0x13);
    }

    #[test]
    fn rabin_matches_trial_division() {
        for (p, d) in [(2u32, 1usize), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3)] {
            let lead = (p as u64).pow(d as u32);
            for low in 0..lead {
                let mut c = fp_poly::from_int(p, low);
                c.resize(d, 0);
                c.push(1);
                assert_eq!(fp_poly::is_irreducible(&c, p), brute_irreducible(&c, p), "{c:?} over F_{p}");
            }
        }
    }

    #[test]
    fn rejects_non_prime_characteristic() {
        assert_eq!(FieldTower::new(4, 1, 2, 2).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(GaloisField::new(6, 2, None), Err(Error::NotPrime(6))));
    }

    #[test]
    fn rejects_reducible_or_misshapen_modulus() {
        // x^4 + 1 = (x+1)^4 over F_2
        let err = GaloisField::new(2, 4, Some(vec![1, 0, 0, 0, 1])).unwrap_err();
        assert!(matches!(err, Error::ReducibleModulus { .. }));
        let err = GaloisField::new(2, 4, Some(vec![1, 1, 1])).unwrap_err();
        assert!(matches!(err, Error::ModulusDegree { expected: 4, found: 2 }));
    }

    #[test]
    fn no_embedding_when_n_does_not_divide_m() {
        let tower = FieldTower::new(2, 1, 3, 4).unwrap();
        assert!(!tower.has_embedding());
        assert_eq!(tower.embed(Fe::ONE), Err(Error::NoEmbedding { n: 3, m: 4 }));
    }

    #[test]
    fn table_and_schoolbook_multiplication_agree() {
        for (p, d) in [(2u32, 4usize), (2, 7), (3, 4), (5, 2), (7, 3)] {
            let f = GaloisField::new(p, d, None).unwrap();
            for a in f.elements().step_by(3) {
                for b in f.elements().step_by(5) {
                    assert_eq!(f.mul(a, b), f.mul_slow(a, b));
                }
            }
        }
    }

    #[test]
    fn field_axioms_f16() {
        let f = GaloisField::new(2, 4, None).unwrap();
        for x in f.elements() {
            assert_eq!(f.mul(Fe::ONE, x), x);
            if !x.is_zero() {
                assert_eq!(f.mul(x, f.inv(x).unwrap()), Fe::ONE);
            }
            assert_eq!(f.pow(x, 16), x);
        }
        assert_eq!(f.inv(Fe::ZERO), Err(Error::ZeroInverse));
    }

    #[test]
    fn generator_powers_multiply_to_one_in_f16() {
        let f = GaloisField::new(2, 4, None).unwrap();
        // brute-force order search
        let g = f
            .nonzero_elements()
            .find(|&g| {
                let mut x = g;
                let mut ord = 1;
                while x != Fe::ONE {
                    x = f.mul(x, g);
                    ord += 1;
                }
                ord == 15
            })
            .unwrap();
        assert_eq!(f.mul(f.pow(g, 5), f.pow(g, 10)), Fe::ONE);
        assert_eq!(f.order(g).unwrap(), 15);
    }

    #[test]
    fn odd_characteristic_axioms() {
        let f = GaloisField::new(3, 3, None).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
            for b in f.elements().step_by(4) {
                assert_eq!(f.sub(f.add(a, b), b), a);
                let c = Fe(7);
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            }
        }
    }

    #[test]
    fn big_exponent_power() {
        let f = GaloisField::new(2, 5, None).unwrap();
        let g = f.primitive_element();
        let e = BigUint::from(31u32).pow(9) + 3u32;
        assert_eq!(f.pow_big(g, &e), f.pow(g, 3));
        assert_eq!(f.pow_big(Fe::ZERO, &BigUint::zero()), Fe::ONE);
    }

    #[test]
    fn frobenius_basics_f16() {
        let t = FieldTower::new(2, 1, 4, 4).unwrap();
        let f = t.top();
        let g = f.generator();
        assert_eq!(t.frobenius(g, 1), f.mul(g, g));
        for x in f.elements() {
            assert_eq!(t.frobenius(x, 0), x);
            assert_eq!(t.frobenius(x, 4), x);
        }
        // orbit of a primitive element under x -> x^2 has size m
        let h = f.primitive_element();
        let orbit: std::collections::BTreeSet<Fe> = (0..4).map(|i| t.frobenius(h, i)).collect();
        assert_eq!(orbit.len(), 4);
    }

    #[test]
    fn norm_f16_to_f2_is_one() {
        let t = FieldTower::new(2, 1, 4, 4).unwrap();
        assert_eq!(t.norm(Fe::ONE, NormTarget::Fq), Fe::ONE);
        for x in t.top().nonzero_elements() {
            assert_eq!(t.norm(x, NormTarget::Fq), Fe::ONE);
        }
    }

    #[test]
    fn norm_f9_generator_generates_f3_star() {
        let t = FieldTower::new(3, 1, 2, 2).unwrap();
        let f = t.top();
        let g = f.primitive_element();
        let nm = t.norm(g, NormTarget::Fq);
        assert_eq!(nm, f.pow(g, 4));
        // lies in F_3 and has order 2
        assert_eq!(t.frobenius(nm, 1), nm);
        assert!(nm.0 < 3);
        assert_eq!(f.order(nm).unwrap(), 2);
    }

    #[test]
    fn embedding_image_is_the_subfield() {
        let t = FieldTower::new(2, 1, 3, 6).unwrap();
        let image: std::collections::BTreeSet<Fe> = t.sub_elements().unwrap().into_iter().collect();
        let fixed: std::collections::BTreeSet<Fe> =
            t.top().elements().filter(|&y| t.frobenius(y, 3) == y).collect();
        assert_eq!(image.len(), 8);
        assert_eq!(image, fixed);
        assert_eq!(t.embed(Fe::ZERO).unwrap(), Fe::ZERO);
        assert_eq!(t.embed(Fe::ONE).unwrap(), Fe::ONE);
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let t = FieldTower::new(2, 2, 2, 4).unwrap();
        let (s, f) = (t.sub(), t.top());
        for a in s.elements() {
            for b in s.elements() {
                let (ea, eb) = (t.embed(a).unwrap(), t.embed(b).unwrap());
                assert_eq!(t.embed(s.add(a, b)).unwrap(), f.add(ea, eb));
                assert_eq!(t.embed(s.mul(a, b)).unwrap(), f.mul(ea, eb));
            }
        }
    }

    #[test]
    fn embedded_generator_keeps_its_order() {
        let t = FieldTower::new(3, 1, 2, 4).unwrap();
        let g = t.sub().primitive_element();
        let eg = t.embed(g).unwrap();
        let order = 8u64;
        assert_eq!(t.top().pow(eg, order), Fe::ONE);
        for d in [1u64, 2, 4] {
            assert_ne!(t.top().pow(eg, d), Fe::ONE);
        }
        assert_eq!(t.frobenius(eg, 2), eg);
    }

    #[test]
    fn embedded_fq_is_fixed_by_frobenius() {
        let t = FieldTower::new(2, 2, 2, 2).unwrap();
        let fq = t.fq_elements();
        assert_eq!(fq.len(), 4);
        for x in fq {
            assert_eq!(t.frobenius(x, 1), x);
        }
    }

    #[test]
    fn construction_is_deterministic() {
        let a = FieldTower::new(3, 1, 2, 4).unwrap();
        let b = FieldTower::new(3, 1, 2, 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.sub_basis_images().unwrap(), b.sub_basis_images().unwrap());
    }
}
