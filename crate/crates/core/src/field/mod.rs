//! Exact arithmetic in GF(p^t).
//!
//! Fields are constructed deterministically from the shipped Conway moduli,
//! so the same (p, t) always yields the same multiplication table and the
//! subfield embeddings used by field reduction are compatible with each
//! other. Elements are dense integers in [0, q): the base-p digits of the
//! value are the polynomial coefficients, digit i belonging to x^i.
//!
//! Multiplication goes through precomputed log/antilog tables for q up to
//! 2^16 and falls back to direct polynomial arithmetic above that.

mod conway;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use conway::CONWAY_TABLE;

/// Orders above this cap are rejected by [`Field::new`].
pub const DEFAULT_ORDER_CAP: u64 = 1 << 20;

/// Log/antilog tables are built for orders up to this limit.
const TABLE_LIMIT: u64 = 1 << 16;

/// An element of GF(p^t), encoded as an integer in [0, q).
///
/// 0 encodes zero and 1 encodes one. All arithmetic lives on [`Field`].
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(pub u32);

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct FieldInner {
    p: u32,
    t: u32,
    q: u32,
    modulus: Vec<u32>,
    omega: FieldElement,
    /// exp[i] = omega^i for 0 <= i < q-1; empty above TABLE_LIMIT.
    exp: Vec<u32>,
    /// log[v] defined for v in [1, q); log[0] is unused.
    log: Vec<u32>,
}

/// A finite field GF(p^t) with a fixed primitive modulus.
///
/// Cloning is cheap; two fields compare equal iff they have the same
/// characteristic and degree (the modulus is determined by those).
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.t == other.0.t
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.t == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.t)
        }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// Construct GF(p^t) with the shipped Conway modulus, under the default
    /// order cap.
    pub fn new(p: u32, t: u32) -> Result<Field> {
        Field::with_cap(p, t, DEFAULT_ORDER_CAP)
    }

    pub fn with_cap(p: u32, t: u32, cap: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if t == 0 {
            return Err(Error::InvalidParameter("degree t must be positive".into()));
        }
        let order = (p as u64).checked_pow(t).filter(|&q| q <= cap);
        let q = match order {
            Some(q) => q as u32,
            None => return Err(Error::OrderCapExceeded { p, t, cap }),
        };
        let modulus: Vec<u32> = match conway::lookup(p, t) {
            Some(m) => m.to_vec(),
            None => return Err(Error::NoModulusEntry { p, t }),
        };

        // omega is the class of x: for t = 1 that reduces to -c0 mod p.
        let omega = if t > 1 {
            FieldElement(p)
        } else {
            FieldElement((p - modulus[0] % p) % p)
        };

        let mut inner = FieldInner {
            p,
            t,
            q,
            modulus,
            omega,
            exp: Vec::new(),
            log: Vec::new(),
        };

        if (q as u64) <= TABLE_LIMIT {
            let mut exp = Vec::with_capacity(q as usize - 1);
            let mut log = vec![0u32; q as usize];
            let mut acc = FieldElement::ONE;
            for i in 0..(q - 1) {
                exp.push(acc.0);
                assert!(
                    acc.0 != 0 && (i == 0 || acc.0 != 1),
                    "modulus for GF({p}^{t}) is not primitive"
                );
                log[acc.0 as usize] = i;
                acc = mul_direct(&inner, acc, omega);
            }
            assert_eq!(acc, FieldElement::ONE, "omega^(q-1) != 1 in GF({p}^{t})");
            inner.exp = exp;
            inner.log = log;
        }

        Ok(Field(Arc::new(inner)))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.t
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Modulus coefficients, ascending degree, length t+1, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// Fixed primitive element (the class of x).
    pub fn omega(&self) -> FieldElement {
        self.0.omega
    }

    pub fn element(&self, value: u32) -> Result<FieldElement> {
        if value < self.0.q {
            Ok(FieldElement(value))
        } else {
            Err(Error::ElementOutOfRange {
                value,
                q: self.0.q,
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.0.q).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.0.q).map(FieldElement)
    }

    /// Base-p digits of an element, ascending degree, length t.
    pub fn digits(&self, x: FieldElement) -> Vec<u32> {
        let mut v = x.0;
        let mut out = Vec::with_capacity(self.0.t as usize);
        for _ in 0..self.0.t {
            out.push(v % self.0.p);
            v /= self.0.p;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u32]) -> FieldElement {
        let mut v = 0u64;
        for &d in digits.iter().rev() {
            debug_assert!(d < self.0.p);
            v = v * self.0.p as u64 + d as u64;
        }
        FieldElement(v as u32)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let inner = &*self.0;
        debug_assert!(a.0 < inner.q && b.0 < inner.q);
        if inner.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let (mut av, mut bv) = (a.0, b.0);
        let mut out = 0u32;
        let mut shift = 1u32;
        for _ in 0..inner.t {
            out += ((av + bv) % inner.p) * shift;
            av /= inner.p;
            bv /= inner.p;
            shift *= inner.p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let inner = &*self.0;
        if inner.p == 2 {
            return a;
        }
        let mut av = a.0;
        let mut out = 0u32;
        let mut shift = 1u32;
        for _ in 0..inner.t {
            out += ((inner.p - av % inner.p) % inner.p) * shift;
            av /= inner.p;
            shift *= inner.p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let inner = &*self.0;
        debug_assert!(a.0 < inner.q && b.0 < inner.q);
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        if !inner.exp.is_empty() {
            let idx =
                (inner.log[a.0 as usize] as u64 + inner.log[b.0 as usize] as u64) % (inner.q as u64 - 1);
            FieldElement(inner.exp[idx as usize])
        } else {
            mul_direct(inner, a, b)
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: FieldElement) -> FieldElement {
        let inner = &*self.0;
        assert!(a.0 != 0, "inverse of zero in {self:?}");
        if !inner.exp.is_empty() {
            let idx = (inner.q as u64 - 1 - inner.log[a.0 as usize] as u64) % (inner.q as u64 - 1);
            FieldElement(inner.exp[idx as usize])
        } else {
            self.pow(a, inner.q as u64 - 2)
        }
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        let inner = &*self.0;
        if a.0 == 0 {
            return if e == 0 { FieldElement::ONE } else { FieldElement::ZERO };
        }
        if !inner.exp.is_empty() {
            let idx = (inner.log[a.0 as usize] as u128 * e as u128) % (inner.q as u128 - 1);
            return FieldElement(inner.exp[idx as usize]);
        }
        let mut result = FieldElement::ONE;
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

    /// omega^k, with k taken mod q-1.
    pub fn omega_pow(&self, k: u64) -> FieldElement {
        self.pow(self.0.omega, k % (self.0.q as u64 - 1))
    }

    /// Discrete log base omega; None for zero.
    pub fn log(&self, a: FieldElement) -> Option<u64> {
        let inner = &*self.0;
        if a.0 == 0 {
            return None;
        }
        if !inner.exp.is_empty() {
            return Some(inner.log[a.0 as usize] as u64);
        }
        let mut acc = FieldElement::ONE;
        for i in 0..(inner.q as u64 - 1) {
            if acc == a {
                return Some(i);
            }
            acc = self.mul(acc, inner.omega);
        }
        unreachable!("element not in the cyclic group of {self:?}")
    }

    /// The Frobenius power x^(p^s). s may be any integer; frobenius(x, t) = x.
    pub fn frobenius(&self, x: FieldElement, s: u32) -> FieldElement {
        let inner = &*self.0;
        if x.0 == 0 || x.0 == 1 {
            return x;
        }
        let s = s % inner.t;
        if s == 0 {
            return x;
        }
        if !inner.exp.is_empty() {
            let mut ps = 1u128;
            for _ in 0..s {
                ps = ps * inner.p as u128 % (inner.q as u128 - 1);
            }
            let idx = (inner.log[x.0 as usize] as u128 * ps) % (inner.q as u128 - 1);
            return FieldElement(inner.exp[idx as usize]);
        }
        let mut out = x;
        for _ in 0..s {
            out = self.pow(out, inner.p as u64);
        }
        out
    }
}

/// Schoolbook polynomial multiplication mod the modulus, in digit space.
fn mul_direct(inner: &FieldInner, a: FieldElement, b: FieldElement) -> FieldElement {
    let (p, t) = (inner.p as u64, inner.t as usize);
    let mut ad = [0u64; 24];
    let mut bd = [0u64; 24];
    let mut prod = [0u64; 48];
    let mut av = a.0 as u64;
    let mut bv = b.0 as u64;
    for i in 0..t {
        ad[i] = av % p;
        bd[i] = bv % p;
        av /= p;
        bv /= p;
    }
    for i in 0..t {
        if ad[i] == 0 {
            continue;
        }
        for j in 0..t {
            prod[i + j] += ad[i] * bd[j];
        }
    }
    // reduce mod the monic modulus
    for deg in (t..=(2 * t).saturating_sub(2)).rev() {
        let c = prod[deg] % p;
        prod[deg] = 0;
        if c != 0 {
            for k in 0..t {
                let m = inner.modulus[k] as u64;
                if m != 0 {
                    // coefficient at deg-t+k decreases by c*m
                    let idx = deg - t + k;
                    prod[idx] = (prod[idx] + p * p - (c * m) % p) % p;
                }
            }
        }
    }
    let mut out = 0u64;
    for i in (0..t).rev() {
        out = out * p + prod[i] % p;
    }
    FieldElement(out as u32)
}

/// An F-linear identification of K = GF(q^b) with F^b, where F = GF(q).
///
/// The basis is {omega_K^0, ..., omega_K^(b-1)} and the copy of F inside K is
/// the norm-compatible one determined by the Conway moduli, so `forward` is an
/// F-linear bijection sending 1 to the first standard basis vector.
pub struct ExtensionEmbedding {
    base: Field,
    ext: Field,
    degree: usize,
    emb_step: u64,
    /// (tb x tb) matrix over GF(p): ext digit column -> concatenated base digits.
    fwd: Vec<Vec<u32>>,
    /// Inverse of fwd.
    bwd: Vec<Vec<u32>>,
}

impl ExtensionEmbedding {
    /// Build the embedding of GF(q) into GF(q^b), both on Conway moduli.
    pub fn new(base: &Field, b: u32) -> Result<ExtensionEmbedding> {
        if b == 0 {
            return Err(Error::InvalidParameter("extension degree must be positive".into()));
        }
        let p = base.characteristic();
        let t = base.degree();
        let ext = Field::new(p, t * b)?;
        let qk = ext.order() as u64;
        let q = base.order() as u64;
        let emb_step = (qk - 1) / (q - 1);
        let dim = (t * b) as usize;

        // Columns of the map (lambda_0, ..., lambda_{b-1}) |-> sum emb(lambda_i) theta^i,
        // written over GF(p) digit coordinates.
        let mut cols: Vec<Vec<u32>> = Vec::with_capacity(dim);
        for i in 0..b as usize {
            let theta_i = ext.pow(ext.omega(), i as u64);
            for j in 0..t as usize {
                let unit = base.from_digits(
                    &(0..t as usize)
                        .map(|k| if k == j { 1 } else { 0 })
                        .collect::<Vec<_>>(),
                );
                let embedded = embed_via_log(base, &ext, emb_step, unit);
                let col_elt = ext.mul(embedded, theta_i);
                cols.push(ext.digits(col_elt));
            }
        }
        // bwd[r][c] = digit r of column c (maps lambda digits -> ext digits)
        let mut bwd = vec![vec![0u32; dim]; dim];
        for (c, col) in cols.iter().enumerate() {
            for (r, &d) in col.iter().enumerate() {
                bwd[r][c] = d;
            }
        }
        let fwd = invert_mod_p(&bwd, p).ok_or_else(|| {
            Error::InvariantViolation("extension basis is not linearly independent".into())
        })?;
        Ok(ExtensionEmbedding {
            base: base.clone(),
            ext,
            degree: b as usize,
            emb_step,
            fwd,
            bwd,
        })
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn ext(&self) -> &Field {
        &self.ext
    }

    /// b = [K : F].
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The multiplicative embedding of F into K.
    pub fn embed(&self, x: FieldElement) -> FieldElement {
        embed_via_log(&self.base, &self.ext, self.emb_step, x)
    }

    /// K-element -> length-b F-coordinate vector.
    pub fn forward(&self, y: FieldElement) -> Vec<FieldElement> {
        let digits = self.ext.digits(y);
        let out = mat_vec_mod_p(&self.fwd, &digits, self.base.characteristic());
        let t = self.base.degree() as usize;
        (0..self.degree)
            .map(|i| self.base.from_digits(&out[i * t..(i + 1) * t]))
            .collect()
    }

    /// Length-b F-coordinate vector -> K-element.
    pub fn inverse(&self, coords: &[FieldElement]) -> FieldElement {
        assert_eq!(coords.len(), self.degree);
        let t = self.base.degree() as usize;
        let mut digits = Vec::with_capacity(self.degree * t);
        for &c in coords {
            digits.extend(self.base.digits(c));
        }
        let out = mat_vec_mod_p(&self.bwd, &digits, self.base.characteristic());
        self.ext.from_digits(&out)
    }
}

fn embed_via_log(base: &Field, ext: &Field, emb_step: u64, x: FieldElement) -> FieldElement {
    if x.0 == 0 {
        return FieldElement::ZERO;
    }
    let k = base.log(x).expect("nonzero element");
    ext.pow(ext.omega(), (k % (base.order() as u64 - 1)) * emb_step)
}

fn mat_vec_mod_p(m: &[Vec<u32>], v: &[u32], p: u32) -> Vec<u32> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0u64, |acc, (&a, &b)| acc + a as u64 * b as u64)
                % p as u64
        })
        .map(|x| x as u32)
        .collect()
}

/// Invert a square matrix over GF(p) by Gauss-Jordan; None if singular.
fn invert_mod_p(m: &[Vec<u32>], p: u32) -> Option<Vec<Vec<u32>>> {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|&x| x as u64).collect()).collect();
    let mut inv: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect();
    let p = p as u64;
    let inv_mod = |x: u64| -> u64 {
        // p is prime and small
        let mut r = 1u64;
        let mut b = x % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_multiple_of(p))?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let scale = inv_mod(a[col][col]);
        for j in 0..n {
            a[col][j] = a[col][j] * scale % p;
            inv[col][j] = inv[col][j] * scale % p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_multiple_of(p) {
                let f = a[r][col] % p;
                for j in 0..n {
                    a[r][j] = (a[r][j] + p * p - f * a[col][j] % p) % p;
                    inv[r][j] = (inv[r][j] + p * p - f * inv[col][j] % p) % p;
                }
            }
        }
    }
    Some(inv
        .into_iter()
        .map(|row| row.into_iter().map(|x| (x % p) as u32).collect())
        .collect())
}
