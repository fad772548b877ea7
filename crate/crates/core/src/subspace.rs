//! Vectors and subspaces of F_q^n with unique canonical representatives.
//!
//! A subspace is stored as its reduced row echelon basis, flattened row-major.
//! Two subspaces are equal iff their RREF matrices are identical, which makes
//! the type hashable and totally ordered; the whole orbit machinery keys on
//! that. Enumeration of 1- and 2-dimensional subspaces is lexicographic by
//! the RREF matrix.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::Budget;

/// A subspace of F_q^n in canonical (RREF) form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    n: u16,
    d: u16,
    /// RREF basis rows, flattened row-major; length d*n.
    data: Vec<FieldElement>,
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "<")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", row.iter().map(|e| e.0).collect::<Vec<_>>())?;
        }
        write!(f, ">")
    }
}

impl Subspace {
    /// The zero subspace of F_q^n.
    pub fn zero(n: usize) -> Subspace {
        Subspace {
            n: n as u16,
            d: 0,
            data: Vec::new(),
        }
    }

    /// Canonicalise a spanning set. Rows must all have length n with entries
    /// in the given field.
    pub fn span(field: &Field, n: usize, vectors: &[Vec<FieldElement>]) -> Result<Subspace> {
        let mut rows = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.len() != n {
                return Err(Error::AmbientMismatch {
                    left: n,
                    right: v.len(),
                });
            }
            for &e in v {
                if e.0 >= field.order() {
                    return Err(Error::ElementOutOfRange {
                        value: e.0,
                        q: field.order(),
                    });
                }
            }
            rows.push(v.clone());
        }
        let rank = rref_in_place(field, &mut rows);
        rows.truncate(rank);
        Ok(Subspace::from_rref_rows(n, rows))
    }

    /// Assemble from rows already known to be in RREF.
    pub(crate) fn from_rref_rows(n: usize, rows: Vec<Vec<FieldElement>>) -> Subspace {
        let d = rows.len();
        let mut data = Vec::with_capacity(d * n);
        for row in rows {
            debug_assert_eq!(row.len(), n);
            data.extend(row);
        }
        Subspace {
            n: n as u16,
            d: d as u16,
            data,
        }
    }

    pub fn ambient(&self) -> usize {
        self.n as usize
    }

    pub fn dim(&self) -> usize {
        self.d as usize
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        let n = self.n as usize;
        &self.data[i * n..(i + 1) * n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[FieldElement]> {
        self.data.chunks_exact(self.n as usize)
    }

    pub fn basis(&self) -> Vec<Vec<FieldElement>> {
        self.rows().map(<[FieldElement]>::to_vec).collect()
    }

    /// Membership test for a single vector.
    pub fn contains_vector(&self, field: &Field, v: &[FieldElement]) -> bool {
        assert_eq!(v.len(), self.n as usize);
        let mut v = v.to_vec();
        for row in self.rows() {
            let pivot = row.iter().position(|e| !e.is_zero()).unwrap();
            if !v[pivot].is_zero() {
                let c = v[pivot];
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = field.sub(*x, field.mul(c, r));
                }
            }
        }
        v.iter().all(|e| e.is_zero())
    }

    /// U contains W as a subspace.
    pub fn contains(&self, field: &Field, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(other.rows().all(|r| self.contains_vector(field, r)))
    }

    pub fn sum(&self, field: &Field, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut rows: Vec<Vec<FieldElement>> = self.basis();
        rows.extend(other.basis());
        let rank = rref_in_place(field, &mut rows);
        rows.truncate(rank);
        Ok(Subspace::from_rref_rows(self.ambient(), rows))
    }

    /// Intersection via the left null space of the stacked basis.
    pub fn intersect(&self, field: &Field, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let n = self.ambient();
        let (d1, d2) = (self.dim(), other.dim());
        if d1 == 0 || d2 == 0 {
            return Ok(Subspace::zero(n));
        }
        // Rows of [self; other] augmented with an identity; after elimination
        // the zero rows' augmented parts span the left null space.
        let total = d1 + d2;
        let mut rows: Vec<Vec<FieldElement>> = Vec::with_capacity(total);
        for (i, row) in self.rows().chain(other.rows()).enumerate() {
            let mut r = row.to_vec();
            r.extend((0..total).map(|j| {
                if i == j {
                    FieldElement::ONE
                } else {
                    FieldElement::ZERO
                }
            }));
            rows.push(r);
        }
        gauss_forward(field, &mut rows, n);
        let mut members = Vec::new();
        for r in &rows {
            if r[..n].iter().all(|e| e.is_zero()) && !r[n..].iter().all(|e| e.is_zero()) {
                // combination sum a_i * self_i with a = r[n..n+d1]
                let mut v = vec![FieldElement::ZERO; n];
                for (i, &c) in r[n..n + d1].iter().enumerate() {
                    if !c.is_zero() {
                        for (x, &s) in v.iter_mut().zip(self.row(i)) {
                            *x = field.add(*x, field.mul(c, s));
                        }
                    }
                }
                members.push(v);
            }
        }
        Subspace::span(field, n, &members)
    }

    /// All q^d vectors of the subspace, including zero.
    pub fn vectors(&self, field: &Field) -> Vec<Vec<FieldElement>> {
        let n = self.ambient();
        let d = self.dim();
        let q = field.order() as u64;
        let count = q.pow(d as u32);
        let mut out = Vec::with_capacity(count as usize);
        let mut coeffs = vec![FieldElement::ZERO; d];
        loop {
            let mut v = vec![FieldElement::ZERO; n];
            for (i, &c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    for (x, &r) in v.iter_mut().zip(self.row(i)) {
                        *x = field.add(*x, field.mul(c, r));
                    }
                }
            }
            out.push(v);
            if !increment(field, &mut coeffs) {
                break;
            }
        }
        out
    }

    /// The canonical 1-subspaces contained in this subspace.
    pub fn one_subspaces(&self, field: &Field) -> Vec<Subspace> {
        let mut out: Vec<Subspace> = self
            .vectors(field)
            .into_iter()
            .filter(|v| v.iter().any(|e| !e.is_zero()))
            .map(|v| {
                let row = canonical_vector(field, &v);
                Subspace::from_rref_rows(self.ambient(), vec![row])
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// The canonical 2-subspaces contained in this subspace.
    pub fn two_subspaces(&self, field: &Field) -> Vec<Subspace> {
        let d = self.dim();
        let n = self.ambient();
        let mut out = Vec::new();
        if d < 2 {
            return out;
        }
        for_each_canonical_rref(field, d, 2, &mut |coeff_rows| {
            let rows: Vec<Vec<FieldElement>> = coeff_rows
                .iter()
                .map(|cr| {
                    let mut v = vec![FieldElement::ZERO; n];
                    for (i, &c) in cr.iter().enumerate() {
                        if !c.is_zero() {
                            for (x, &r) in v.iter_mut().zip(self.row(i)) {
                                *x = field.add(*x, field.mul(c, r));
                            }
                        }
                    }
                    v
                })
                .collect();
            let mut rows = rows;
            let rank = rref_in_place(field, &mut rows);
            debug_assert_eq!(rank, 2);
            rows.truncate(rank);
            out.push(Subspace::from_rref_rows(n, rows));
        });
        out.sort();
        out.dedup();
        out
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch {
                left: self.ambient(),
                right: other.ambient(),
            });
        }
        Ok(())
    }
}

/// Reduce rows in place to RREF and return the rank. Zero rows sink to the
/// bottom; pivot columns are strictly increasing with unit pivots and zeros
/// above and below.
pub fn rref_in_place(field: &Field, rows: &mut [Vec<FieldElement>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let n = rows[0].len();
    gauss_forward(field, rows, n);
    rows.iter().take_while(|r| r.iter().any(|e| !e.is_zero())).count()
}

/// The unique RREF of a matrix together with its rank. Rejects ragged input
/// and entries outside the field.
pub fn rref(field: &Field, matrix: &[Vec<FieldElement>]) -> Result<(Vec<Vec<FieldElement>>, usize)> {
    let n = matrix.first().map_or(0, Vec::len);
    for row in matrix {
        if row.len() != n {
            return Err(Error::AmbientMismatch {
                left: n,
                right: row.len(),
            });
        }
        for &e in row {
            if e.0 >= field.order() {
                return Err(Error::ElementOutOfRange {
                    value: e.0,
                    q: field.order(),
                });
            }
        }
    }
    let mut rows = matrix.to_vec();
    let rank = rref_in_place(field, &mut rows);
    Ok((rows, rank))
}

/// Gauss-Jordan over the first `width` columns only (rows may carry an
/// augmented tail).
fn gauss_forward(field: &Field, rows: &mut [Vec<FieldElement>], width: usize) {
    let m = rows.len();
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..m).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(rows[rank][col]);
        for e in rows[rank].iter_mut() {
            *e = field.mul(*e, inv);
        }
        for r in 0..m {
            if r != rank && !rows[r][col].is_zero() {
                let c = rows[r][col];
                let (head, tail) = rows.split_at_mut(rank.max(r));
                let (src, dst) = if r > rank {
                    (&head[rank], &mut tail[0])
                } else {
                    (&tail[0], &mut head[r])
                };
                for (x, &s) in dst.iter_mut().zip(src.iter()) {
                    *x = field.sub(*x, field.mul(c, s));
                }
            }
        }
        rank += 1;
        if rank == m {
            break;
        }
    }
}

/// Scale a nonzero vector so its first nonzero coordinate is one.
pub fn canonical_vector(field: &Field, v: &[FieldElement]) -> Vec<FieldElement> {
    let lead = v
        .iter()
        .find(|e| !e.is_zero())
        .expect("canonical_vector needs a nonzero vector");
    let inv = field.inv(*lead);
    v.iter().map(|&e| field.mul(inv, e)).collect()
}

fn increment(field: &Field, coeffs: &mut [FieldElement]) -> bool {
    let q = field.order();
    for c in coeffs.iter_mut() {
        if c.0 + 1 < q {
            c.0 += 1;
            return true;
        }
        c.0 = 0;
    }
    false
}

/// The Gaussian binomial coefficient: the number of d-subspaces of F_q^n.
pub fn gaussian_binomial(n: u32, d: u32, q: u64) -> u128 {
    assert!(d <= n);
    let mut acc: u128 = 1;
    for i in 1..=d {
        acc *= (q as u128).pow(n - d + i) - 1;
        acc /= (q as u128).pow(i) - 1;
    }
    acc
}

/// Visit every canonical d x n RREF matrix (d in {1, 2}), in unspecified
/// order, as coefficient row slices.
fn for_each_canonical_rref(
    field: &Field,
    n: usize,
    d: usize,
    visit: &mut dyn FnMut(&[Vec<FieldElement>]),
) {
    let q = field.order();
    match d {
        1 => {
            for pivot in 0..n {
                let free = n - pivot - 1;
                let mut tail = vec![FieldElement::ZERO; free];
                loop {
                    let mut row = vec![FieldElement::ZERO; n];
                    row[pivot] = FieldElement::ONE;
                    row[pivot + 1..].copy_from_slice(&tail);
                    visit(&[row]);
                    if free == 0 || !increment(field, &mut tail) {
                        break;
                    }
                }
            }
        }
        2 => {
            for p0 in 0..n {
                for p1 in p0 + 1..n {
                    // free positions: row0 has columns > p0 except p1; row1 columns > p1
                    let free0: Vec<usize> = (p0 + 1..n).filter(|&j| j != p1).collect();
                    let free1: Vec<usize> = (p1 + 1..n).collect();
                    let total = free0.len() + free1.len();
                    let mut vals = vec![FieldElement::ZERO; total];
                    loop {
                        let mut r0 = vec![FieldElement::ZERO; n];
                        let mut r1 = vec![FieldElement::ZERO; n];
                        r0[p0] = FieldElement::ONE;
                        r1[p1] = FieldElement::ONE;
                        for (k, &j) in free0.iter().enumerate() {
                            r0[j] = vals[k];
                        }
                        for (k, &j) in free1.iter().enumerate() {
                            r1[j] = vals[free0.len() + k];
                        }
                        visit(&[r0, r1]);
                        if total == 0 || !increment(field, &mut vals) {
                            break;
                        }
                    }
                }
            }
        }
        _ => {
            let _ = q;
            panic!("only 1- and 2-dimensional enumeration is supported")
        }
    }
}

/// All d-dimensional subspaces of F_q^n for d in {1, 2}, lexicographically
/// ordered by RREF matrix. Length equals the Gaussian binomial coefficient.
pub fn enumerate_subspaces(
    field: &Field,
    n: usize,
    d: usize,
    budget: &Budget,
) -> Result<Vec<Subspace>> {
    if d == 0 || d > 2 {
        return Err(Error::InvalidParameter(format!(
            "subspace enumeration covers dimensions 1 and 2, got {d}"
        )));
    }
    if d > n {
        return Err(Error::AmbientMismatch { left: n, right: d });
    }
    let count = gaussian_binomial(n as u32, d as u32, field.order() as u64);
    if count > budget.max_enumeration as u128 {
        return Err(Error::BudgetExceeded {
            count,
            budget: budget.max_enumeration as u128,
        });
    }
    let mut out = Vec::with_capacity(count as usize);
    for_each_canonical_rref(field, n, d, &mut |rows| {
        out.push(Subspace::from_rref_rows(n, rows.to_vec()));
    });
    debug_assert_eq!(out.len() as u128, count);
    out.sort();
    Ok(out)
}

/// Streaming variant of [`enumerate_subspaces`] for constructions that filter
/// inline; visit order is unspecified but the visited set is exactly the set
/// of canonical d-subspaces.
pub fn for_each_subspace(field: &Field, n: usize, d: usize, mut visit: impl FnMut(Subspace)) {
    for_each_canonical_rref(field, n, d, &mut |rows| {
        visit(Subspace::from_rref_rows(n, rows.to_vec()))
    });
}

// ---- packed keys ----
//
// Subspaces, vectors, flags and vertex pairs are packed into u128 keys for
// hashing during orbit enumeration. Packing is Horner evaluation base q of
// the row-major digit stream, prefixed with the dimension; for fixed (n, q)
// this is injective and its numeric order on equal-dimension subspaces agrees
// with the lexicographic order on RREF matrices.

pub fn subspace_key(field: &Field, s: &Subspace) -> u128 {
    let q = field.order() as u128;
    let mut acc = s.dim() as u128;
    for &e in &s.data {
        acc = acc
            .checked_mul(q)
            .and_then(|a| a.checked_add(e.0 as u128))
            .expect("packed subspace key exceeds 128 bits");
    }
    acc
}

pub fn subspace_from_key(field: &Field, n: usize, key: u128) -> Subspace {
    let q = field.order() as u128;
    let mut key = key;
    let mut digits: Vec<FieldElement> = Vec::new();
    // peel digits until the remaining prefix is the dimension
    loop {
        let d = (digits.len() / n) as u128;
        if key == d && digits.len().is_multiple_of(n) {
            break;
        }
        digits.push(FieldElement((key % q) as u32));
        key /= q;
        assert!(digits.len() <= 128 * n, "malformed subspace key");
    }
    digits.reverse();
    let d = digits.len() / n;
    Subspace {
        n: n as u16,
        d: d as u16,
        data: digits,
    }
}

/// Horner code of a raw vector (no dimension prefix).
pub fn vector_key(field: &Field, v: &[FieldElement]) -> u128 {
    let q = field.order() as u128;
    v.iter().fold(0u128, |acc, &e| acc * q + e.0 as u128)
}

pub fn vector_from_key(field: &Field, n: usize, key: u128) -> Vec<FieldElement> {
    let q = field.order() as u128;
    let mut key = key;
    let mut v = vec![FieldElement::ZERO; n];
    for i in (0..n).rev() {
        v[i] = FieldElement((key % q) as u32);
        key /= q;
    }
    debug_assert_eq!(key, 0);
    v
}

/// Dense index of a vector in [0, q^n), used for coverage bitsets.
pub fn vector_index(field: &Field, v: &[FieldElement]) -> usize {
    let q = field.order() as usize;
    v.iter().fold(0usize, |acc, &e| acc * q + e.0 as usize)
}

/// Index of a subspace in a sorted enumeration (as produced by
/// [`enumerate_subspaces`]); the index round-trips with plain slice access.
pub fn index_of(sorted: &[Subspace], s: &Subspace) -> Option<usize> {
    sorted.binary_search(s).ok()
}
