//! Semilinear maps, group specifications, and the catalog of transitive
//! linear groups used by the scans.
//!
//! A semilinear map is a pair (M, s): the action on a row vector x is
//! x -> sigma^s(x) * M, with the Frobenius sigma: x -> x^p applied
//! coordinatewise first and the matrix multiplying on the right. The
//! exponential right-action convention is used throughout: composition is
//! (M1, s1)(M2, s2) = (sigma^{s2}(M1) M2, s1 + s2), and s is stored modulo
//! the order of sigma on the coefficient field.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::field::{ExtensionEmbedding, Field, FieldElement};
use crate::subspace::{rref_in_place, Subspace};

pub type Matrix = Vec<Vec<FieldElement>>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SemilinearMap {
    /// n x n invertible matrix, acting on the right.
    pub matrix: Matrix,
    /// Frobenius exponent, modulo the degree of the coefficient field.
    pub frobenius: u32,
}

impl SemilinearMap {
    pub fn new(field: &Field, matrix: Matrix, frobenius: u32) -> SemilinearMap {
        SemilinearMap {
            matrix,
            frobenius: frobenius % field.degree(),
        }
    }

    pub fn identity(n: usize) -> SemilinearMap {
        SemilinearMap {
            matrix: identity_matrix(n),
            frobenius: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_identity(&self) -> bool {
        self.frobenius == 0
            && self.matrix.iter().enumerate().all(|(i, row)| {
                row.iter().enumerate().all(|(j, &e)| {
                    e == if i == j { FieldElement::ONE } else { FieldElement::ZERO }
                })
            })
    }

    /// x -> sigma^s(x) M.
    pub fn apply_vector(&self, field: &Field, v: &[FieldElement]) -> Vec<FieldElement> {
        let n = self.dim();
        debug_assert_eq!(v.len(), n);
        let mut out = vec![FieldElement::ZERO; n];
        for (i, &x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let xs = field.frobenius(x, self.frobenius);
            for (o, &m) in out.iter_mut().zip(&self.matrix[i]) {
                *o = field.add(*o, field.mul(xs, m));
            }
        }
        out
    }

    /// Image of a subspace, recanonicalised. Dimension is preserved.
    pub fn apply(&self, field: &Field, s: &Subspace) -> Subspace {
        let mut rows: Vec<Vec<FieldElement>> =
            s.rows().map(|r| self.apply_vector(field, r)).collect();
        let rank = rref_in_place(field, &mut rows);
        debug_assert_eq!(rank, s.dim());
        rows.truncate(rank);
        Subspace::from_rref_rows(s.ambient(), rows)
    }

    /// self followed by other.
    pub fn compose(&self, field: &Field, other: &SemilinearMap) -> SemilinearMap {
        let twisted = mat_frobenius(field, &self.matrix, other.frobenius);
        SemilinearMap {
            matrix: mat_mul(field, &twisted, &other.matrix),
            frobenius: (self.frobenius + other.frobenius) % field.degree(),
        }
    }

    /// Two-sided inverse.
    pub fn inverse(&self, field: &Field) -> SemilinearMap {
        let t = field.degree();
        let s_inv = (t - self.frobenius % t) % t;
        let m_inv = invert_matrix(field, &self.matrix).expect("semilinear map is invertible");
        SemilinearMap {
            matrix: mat_frobenius(field, &m_inv, s_inv),
            frobenius: s_inv,
        }
    }
}

/// Scalar map c * I (fixes every subspace).
pub fn scalar_map(n: usize, c: FieldElement) -> SemilinearMap {
    let mut m = identity_matrix(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = c;
    }
    SemilinearMap {
        matrix: m,
        frobenius: 0,
    }
}

pub fn identity_matrix(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { FieldElement::ONE } else { FieldElement::ZERO })
                .collect()
        })
        .collect()
}

pub fn mat_mul(field: &Field, a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b[0].len();
    let mut out = vec![vec![FieldElement::ZERO; m]; n];
    for i in 0..n {
        for (k, &aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for (j, &bkj) in b[k].iter().enumerate() {
                if !bkj.is_zero() {
                    out[i][j] = field.add(out[i][j], field.mul(aik, bkj));
                }
            }
        }
    }
    out
}

pub fn mat_frobenius(field: &Field, a: &Matrix, s: u32) -> Matrix {
    if s.is_multiple_of(field.degree()) {
        return a.clone();
    }
    a.iter()
        .map(|row| row.iter().map(|&e| field.frobenius(e, s)).collect())
        .collect()
}

pub fn mat_transpose(a: &Matrix) -> Matrix {
    let n = a.len();
    let m = a[0].len();
    (0..m).map(|j| (0..n).map(|i| a[i][j]).collect()).collect()
}

/// Gauss-Jordan inverse over the field; None if singular.
pub fn invert_matrix(field: &Field, m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut a = m.clone();
    let mut inv = identity_matrix(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let scale = field.inv(a[col][col]);
        for j in 0..n {
            a[col][j] = field.mul(a[col][j], scale);
            inv[col][j] = field.mul(inv[col][j], scale);
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for j in 0..n {
                    let s = field.mul(f, a[col][j]);
                    a[r][j] = field.sub(a[r][j], s);
                    let s = field.mul(f, inv[col][j]);
                    inv[r][j] = field.sub(inv[r][j], s);
                }
            }
        }
    }
    Some(inv)
}

/// A named group given by semilinear generators on F_q^n.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub name: String,
    pub field: Field,
    pub degree: usize,
    pub generators: Vec<SemilinearMap>,
    /// Known order, when cheap to state.
    pub order: Option<u64>,
}

impl GroupSpec {
    pub fn new(
        name: impl Into<String>,
        field: &Field,
        degree: usize,
        generators: Vec<SemilinearMap>,
    ) -> Result<GroupSpec> {
        let name = name.into();
        for (index, g) in generators.iter().enumerate() {
            if g.matrix.len() != degree || g.matrix.iter().any(|r| r.len() != degree) {
                return Err(Error::AmbientMismatch {
                    left: degree,
                    right: g.matrix.len(),
                });
            }
            for row in &g.matrix {
                for &e in row {
                    if e.0 >= field.order() {
                        return Err(Error::ElementOutOfRange {
                            value: e.0,
                            q: field.order(),
                        });
                    }
                }
            }
            if invert_matrix(field, &g.matrix).is_none() {
                return Err(Error::SingularGenerator { group: name, index });
            }
        }
        Ok(GroupSpec {
            name,
            field: field.clone(),
            degree,
            generators,
            order: None,
        })
    }

    pub fn with_order(mut self, order: u64) -> GroupSpec {
        self.order = Some(order);
        self
    }
}

// ---- element enumeration ----

fn element_key_width_ok(field: &Field, n: usize) -> bool {
    let digit_bits = 32 - (field.order() - 1).leading_zeros();
    (n * n) as u32 * digit_bits + 8 <= 127
}

fn element_key(field: &Field, g: &SemilinearMap) -> u128 {
    let q = field.order() as u128;
    let mut acc = g.frobenius as u128;
    for row in &g.matrix {
        for &e in row {
            acc = acc * q + e.0 as u128;
        }
    }
    acc
}

fn element_from_key(field: &Field, n: usize, key: u128) -> SemilinearMap {
    let q = field.order() as u128;
    let mut key = key;
    let mut digits = vec![FieldElement::ZERO; n * n];
    for i in (0..n * n).rev() {
        digits[i] = FieldElement((key % q) as u32);
        key /= q;
    }
    let matrix = digits.chunks(n).map(<[FieldElement]>::to_vec).collect();
    SemilinearMap {
        matrix,
        frobenius: key as u32,
    }
}

/// Breadth-first closure of the generators; calls the visitor once per
/// distinct element, in discovery order starting from the identity.
pub fn for_each_group_element(
    group: &GroupSpec,
    cap: usize,
    mut visit: impl FnMut(&SemilinearMap),
) -> Result<u64> {
    let field = &group.field;
    let n = group.degree;
    if !element_key_width_ok(field, n) {
        return Err(Error::InvalidParameter(format!(
            "group elements of GL_{n}({}) do not fit 128-bit keys",
            field.order()
        )));
    }
    let identity = SemilinearMap::identity(n);
    let mut seen: HashSet<u128> = HashSet::new();
    let mut queue: Vec<u128> = Vec::new();
    let k0 = element_key(field, &identity);
    seen.insert(k0);
    queue.push(k0);
    visit(&identity);
    let mut head = 0;
    while head < queue.len() {
        let g = element_from_key(field, n, queue[head]);
        head += 1;
        for gen in &group.generators {
            let h = g.compose(field, gen);
            let k = element_key(field, &h);
            if seen.insert(k) {
                if seen.len() > cap {
                    return Err(Error::GroupCapExceeded {
                        cap,
                        partial: seen.len(),
                    });
                }
                visit(&h);
                queue.push(k);
            }
        }
    }
    Ok(seen.len() as u64)
}

/// All distinct group elements, by BFS on (matrix, frobenius) pairs.
pub fn enumerate_group(group: &GroupSpec, cap: usize) -> Result<Vec<SemilinearMap>> {
    let mut out = Vec::new();
    for_each_group_element(group, cap, |g| out.push(g.clone()))?;
    Ok(out)
}

pub fn group_order(group: &GroupSpec, cap: usize) -> Result<u64> {
    for_each_group_element(group, cap, |_| {})
}

/// Greedily extract a small generating subset of an explicitly listed group.
pub fn minimal_generators(
    field: &Field,
    degree: usize,
    elements: &[SemilinearMap],
) -> Result<Vec<SemilinearMap>> {
    let total = elements.len();
    let mut gens: Vec<SemilinearMap> = Vec::new();
    let mut closure: HashSet<u128> = HashSet::new();
    closure.insert(element_key(field, &SemilinearMap::identity(degree)));
    for e in elements {
        if closure.contains(&element_key(field, e)) {
            continue;
        }
        gens.push(e.clone());
        let spec = GroupSpec::new("closure-probe", field, degree, gens.clone())?;
        closure.clear();
        for_each_group_element(&spec, total, |g| {
            closure.insert(element_key(field, g));
        })?;
        if closure.len() == total {
            break;
        }
    }
    Ok(gens)
}

// ---- symplectic structure and classical generators ----

/// Gram matrix of a nondegenerate alternating form on F_q^{2m}, in the basis
/// order e_1, ..., e_m, f_m, ..., f_1.
#[derive(Clone, Debug)]
pub struct SymplecticStructure {
    pub field: Field,
    pub gram: Matrix,
}

impl SymplecticStructure {
    /// The antidiagonal form with f(e_i, f_i) = 1 and all other basis
    /// pairings zero.
    pub fn standard(field: &Field, two_m: usize) -> Result<SymplecticStructure> {
        if two_m == 0 || !two_m.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "symplectic dimension must be even and positive, got {two_m}"
            )));
        }
        let m = two_m / 2;
        let mut gram = vec![vec![FieldElement::ZERO; two_m]; two_m];
        for i in 0..m {
            gram[i][two_m - 1 - i] = FieldElement::ONE;
            gram[two_m - 1 - i][i] = field.neg(FieldElement::ONE);
        }
        SymplecticStructure::new(field, gram)
    }

    #[allow(clippy::needless_range_loop)]
    pub fn new(field: &Field, gram: Matrix) -> Result<SymplecticStructure> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(Error::BadGramMatrix("matrix is not square".into()));
        }
        for i in 0..n {
            if !gram[i][i].is_zero() {
                return Err(Error::BadGramMatrix(format!("nonzero diagonal at {i}")));
            }
            for j in 0..n {
                if gram[i][j] != field.neg(gram[j][i]) {
                    return Err(Error::BadGramMatrix(format!(
                        "not antisymmetric at ({i},{j})"
                    )));
                }
            }
        }
        if invert_matrix(field, &gram).is_none() {
            return Err(Error::BadGramMatrix("degenerate form".into()));
        }
        Ok(SymplecticStructure {
            field: field.clone(),
            gram,
        })
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    /// f(u, v) = u J v^T.
    pub fn form(&self, u: &[FieldElement], v: &[FieldElement]) -> FieldElement {
        let field = &self.field;
        let mut acc = FieldElement::ZERO;
        for (i, &ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            let mut row = FieldElement::ZERO;
            for (j, &vj) in v.iter().enumerate() {
                if !vj.is_zero() {
                    row = field.add(row, field.mul(self.gram[i][j], vj));
                }
            }
            acc = field.add(acc, field.mul(ui, row));
        }
        acc
    }

    /// A 2-subspace is totally isotropic iff its two basis rows pair to zero.
    pub fn is_isotropic_edge(&self, s: &Subspace) -> bool {
        debug_assert_eq!(s.dim(), 2);
        self.form(s.row(0), s.row(1)).is_zero()
    }

    /// g preserves the form exactly: M J M^T = J.
    pub fn is_preserved_by(&self, g: &SemilinearMap) -> bool {
        let field = &self.field;
        let mjmt = mat_mul(
            field,
            &mat_mul(field, &g.matrix, &self.gram),
            &mat_transpose(&g.matrix),
        );
        mjmt == self.gram
    }
}

/// The symplectic transvection x -> x + lambda f(x, v) v.
pub fn symplectic_transvection(
    j: &SymplecticStructure,
    v: &[FieldElement],
    lambda: FieldElement,
) -> SemilinearMap {
    let field = &j.field;
    let n = j.dim();
    let mut m = identity_matrix(n);
    for i in 0..n {
        let mut e = vec![FieldElement::ZERO; n];
        e[i] = FieldElement::ONE;
        let c = field.mul(lambda, j.form(&e, v));
        if !c.is_zero() {
            for (x, &vk) in m[i].iter_mut().zip(v) {
                *x = field.add(*x, field.mul(c, vk));
            }
        }
    }
    SemilinearMap {
        matrix: m,
        frobenius: 0,
    }
}

/// Standard generators of SL_a(q): elementary transvections E_{i,i+1} and
/// E_{i+1,i} with parameters running over a GF(p)-basis of GF(q).
pub fn sl_generators(field: &Field, a: usize) -> Result<GroupSpec> {
    if a < 2 {
        return Err(Error::InvalidParameter(
            "SL needs dimension at least 2".into(),
        ));
    }
    let mut gens = Vec::new();
    for i in 0..a - 1 {
        for s in 0..field.degree() {
            let lambda = field.pow(field.omega(), s as u64);
            for &(r, c) in &[(i, i + 1), (i + 1, i)] {
                let mut m = identity_matrix(a);
                m[r][c] = lambda;
                gens.push(SemilinearMap {
                    matrix: m,
                    frobenius: 0,
                });
            }
        }
    }
    GroupSpec::new(format!("SL{}({})", a, field.order()), field, a, gens)
}

/// Generators of Sp_{2m}(q) preserving the given standard Gram matrix: the
/// long-root transvections on e_i and f_i together with the short-root
/// elements pairing consecutive hyperbolic planes. Every generator is
/// verified against J at construction.
pub fn sp_generators(field: &Field, two_m: usize, j: &SymplecticStructure) -> Result<GroupSpec> {
    if two_m < 2 || !two_m.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "Sp needs even dimension at least 2, got {two_m}"
        )));
    }
    if j.dim() != two_m {
        return Err(Error::AmbientMismatch {
            left: two_m,
            right: j.dim(),
        });
    }
    let standard = SymplecticStructure::standard(field, two_m)?;
    if j.gram != standard.gram {
        return Err(Error::BadGramMatrix(
            "generators are defined on the standard basis e_1..e_m, f_m..f_1".into(),
        ));
    }
    let m = two_m / 2;
    let pos_e = |i: usize| i - 1; // i in 1..=m
    let pos_f = |i: usize| two_m - i;
    let mut gens: Vec<SemilinearMap> = Vec::new();
    let lambdas: Vec<FieldElement> = (0..field.degree())
        .map(|s| field.pow(field.omega(), s as u64))
        .collect();
    for i in 1..=m {
        for &lambda in &lambdas {
            let mut ev = vec![FieldElement::ZERO; two_m];
            ev[pos_e(i)] = FieldElement::ONE;
            gens.push(symplectic_transvection(j, &ev, lambda));
            let mut fv = vec![FieldElement::ZERO; two_m];
            fv[pos_f(i)] = FieldElement::ONE;
            gens.push(symplectic_transvection(j, &fv, lambda));
        }
    }
    for i in 1..m {
        for &lambda in &lambdas {
            let mut a = identity_matrix(two_m);
            a[pos_e(i + 1)][pos_e(i)] = lambda;
            a[pos_f(i)][pos_f(i + 1)] = field.neg(lambda);
            gens.push(SemilinearMap {
                matrix: a,
                frobenius: 0,
            });
            let mut b = identity_matrix(two_m);
            b[pos_e(i)][pos_e(i + 1)] = lambda;
            b[pos_f(i + 1)][pos_f(i)] = field.neg(lambda);
            gens.push(SemilinearMap {
                matrix: b,
                frobenius: 0,
            });
        }
    }
    for g in &gens {
        if !j.is_preserved_by(g) {
            return Err(Error::InvariantViolation(
                "constructed Sp generator does not preserve the Gram matrix".into(),
            ));
        }
    }
    GroupSpec::new(format!("Sp{}({})", two_m, field.order()), field, two_m, gens)
}

// ---- one-dimensional semilinear groups in Foulser canonical form ----

/// Matrix (over the base field) of multiplication by c on the extension,
/// written in the basis 1, theta, ..., theta^{b-1}.
pub fn multiplication_matrix(emb: &ExtensionEmbedding, c: FieldElement) -> Matrix {
    let ext = emb.ext();
    let b = emb.degree();
    (0..b)
        .map(|i| {
            let theta_i = ext.pow(ext.omega(), i as u64);
            emb.forward(ext.mul(theta_i, c))
        })
        .collect()
}

/// Matrix (over the base field) of the linear part of alpha^s, where alpha is
/// the p-power Frobenius of the extension: theta^i -> theta^{i p^s}.
pub fn frobenius_part_matrix(emb: &ExtensionEmbedding, s: u32) -> Matrix {
    let ext = emb.ext();
    let b = emb.degree();
    (0..b)
        .map(|i| {
            let theta_i = ext.pow(ext.omega(), i as u64);
            emb.forward(ext.frobenius(theta_i, s))
        })
        .collect()
}

/// The subgroup of GammaL_1(q^n) in Foulser canonical form
/// <omega^d, alpha^s omega^e>, acting on GF(q^n) viewed as GF(q)^n via the
/// embedding. The three divisibility conditions are validated and violations
/// are reported by number.
pub fn gamma_l1_subgroup(emb: &ExtensionEmbedding, d: u64, e: u64, s: u64) -> Result<GroupSpec> {
    let ext = emb.ext();
    let base = emb.base();
    let n = emb.degree() as u64;
    let p = base.characteristic() as u64;
    let nt = ext.degree() as u64;
    let qn1 = ext.order() as u64 - 1;

    if d == 0 || !qn1.is_multiple_of(d) {
        return Err(Error::FoulserCondition {
            which: 1,
            detail: format!("need d > 0 and d | q^n - 1 = {qn1}, got d = {d}"),
        });
    }
    if s == 0 || !nt.is_multiple_of(s) {
        return Err(Error::FoulserCondition {
            which: 2,
            detail: format!("need s > 0 and s | nt = {nt}, got s = {s}"),
        });
    }
    let ps1 = p.pow(s as u32) - 1;
    debug_assert_eq!(qn1 % ps1, 0);
    let ratio = (qn1 / ps1) as u128;
    if e >= d || !(e as u128 * ratio).is_multiple_of(d as u128) {
        return Err(Error::FoulserCondition {
            which: 3,
            detail: format!("need 0 <= e < d and d | e(q^n-1)/(p^s-1) = e*{ratio}, got e = {e}"),
        });
    }

    let omega_d = ext.pow(ext.omega(), d);
    let omega_e = ext.pow(ext.omega(), e);
    let g1 = SemilinearMap {
        matrix: multiplication_matrix(emb, omega_d),
        frobenius: 0,
    };
    // alpha^s omega^e: Frobenius first, then multiplication, per the
    // exponential right-action convention.
    let g2 = SemilinearMap::new(
        base,
        mat_mul(
            base,
            &frobenius_part_matrix(emb, s as u32),
            &multiplication_matrix(emb, omega_e),
        ),
        s as u32,
    );
    let order = (qn1 / d) * (nt / s);
    let name = format!("GammaL1({}^{})[d={},e={},s={}]", base.order(), n, d, e, s);
    Ok(GroupSpec::new(name, base, n as usize, vec![g1, g2])?.with_order(order))
}

/// The full group GammaL_1(q^n) = <omega, alpha>.
pub fn gamma_l1_full(emb: &ExtensionEmbedding) -> Result<GroupSpec> {
    gamma_l1_subgroup(emb, 1, 0, 1)
}

// ---- field reduction ----

/// Blow up a K-semilinear map on K^a to an F-semilinear map on F^{ab},
/// where everything is coordinatised through the canonical tower
/// F^{ab} = E = GF(q^{ab}) >= K^a via the Conway-compatible embeddings.
/// Under this identification the K-scalar orbits are the Desarguesian
/// b-spread of [`crate::constructions::desarguesian_spread`] and the full
/// one-dimensional group on E in its canonical basis normalises every
/// blown-up group.
///
/// The blow-up is a group homomorphism: the image of a composition equals
/// the composition of the images.
pub fn field_reduction_map(emb: &ExtensionEmbedding, g: &SemilinearMap) -> Result<SemilinearMap> {
    let k = emb.ext();
    let base = emb.base();
    let a = g.dim();
    let b = emb.degree();
    let n = a * b;
    let k_to_e = ExtensionEmbedding::new(k, a as u32)?;
    let f_to_e = ExtensionEmbedding::new(base, (a * b) as u32)?;
    debug_assert_eq!(k_to_e.ext(), f_to_e.ext());
    let e_field = f_to_e.ext();
    let s = g.frobenius % k.degree();
    let mut matrix = Vec::with_capacity(n);
    for r in 0..n {
        // image of the r-th canonical basis vector of F^n = E
        let theta_r = e_field.pow(e_field.omega(), r as u64);
        let k_coords = k_to_e.forward(theta_r);
        let image = g.apply_vector(k, &k_coords);
        let back = k_to_e.inverse(&image);
        matrix.push(f_to_e.forward(back));
    }
    Ok(SemilinearMap::new(base, matrix, s))
}

/// Blow up every generator of a K-group to the base field.
pub fn field_reduced_group(
    emb: &ExtensionEmbedding,
    group: &GroupSpec,
    name: impl Into<String>,
) -> Result<GroupSpec> {
    let gens = group
        .generators
        .iter()
        .map(|g| field_reduction_map(emb, g))
        .collect::<Result<Vec<_>>>()?;
    GroupSpec::new(name, emb.base(), group.degree * emb.degree(), gens)
}

/// Generators of GammaL_a(q^b) on K^a: SL_a, a GL scalar, and the Frobenius.
pub fn gamma_l_generators(field: &Field, a: usize) -> Result<GroupSpec> {
    let mut gens = sl_generators(field, a)?.generators;
    if field.order() > 2 {
        let mut m = identity_matrix(a);
        m[0][0] = field.omega();
        gens.push(SemilinearMap {
            matrix: m,
            frobenius: 0,
        });
    }
    if field.degree() > 1 {
        gens.push(SemilinearMap {
            matrix: identity_matrix(a),
            frobenius: 1,
        });
    }
    GroupSpec::new(format!("GammaL{}({})", a, field.order()), field, a, gens)
}

/// GammaL_a(q^b) blown up to GF(q)^{ab}: the stabiliser of the Desarguesian
/// b-spread.
pub fn reduced_gamma_l(emb: &ExtensionEmbedding, a: usize) -> Result<GroupSpec> {
    let inner = gamma_l_generators(emb.ext(), a)?;
    let name = format!("GammaL{}({})~F{}", a, emb.ext().order(), emb.base().order());
    field_reduced_group(emb, &inner, name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspace::enumerate_subspaces;
    use crate::Budget;

    fn fe(vals: &[u32]) -> Vec<FieldElement> {
        vals.iter().map(|&v| FieldElement(v)).collect()
    }

    #[test]
    fn identity_and_scalars_fix_subspaces() {
        let f = Field::new(3, 1).unwrap();
        let b = Budget::default();
        let twos = enumerate_subspaces(&f, 3, 2, &b).unwrap();
        let id = SemilinearMap::identity(3);
        let sc = scalar_map(3, FieldElement(2));
        for s in &twos {
            assert_eq!(&id.apply(&f, s), s);
            assert_eq!(&sc.apply(&f, s), s);
        }
    }

    #[test]
    fn scalar_kernel_acts_trivially_exhaustively() {
        for (p, t, n) in [(2, 2, 3), (3, 2, 3), (2, 3, 2), (3, 1, 4), (2, 1, 4)] {
            let f = Field::new(p, t).unwrap();
            let b = Budget::default();
            for d in [1usize, 2] {
                if d > n {
                    continue;
                }
                let subs = enumerate_subspaces(&f, n, d, &b).unwrap();
                for c in f.nonzero_elements() {
                    let g = scalar_map(n, c);
                    for s in &subs {
                        assert_eq!(&g.apply(&f, s), s);
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_map_moves_a_line_of_gf4_squared() {
        let f = Field::new(2, 2).unwrap();
        let w = f.omega();
        let g = SemilinearMap::new(&f, identity_matrix(2), 1);
        let line = Subspace::span(&f, 2, &[vec![FieldElement::ONE, w]]).unwrap();
        let expect = Subspace::span(&f, 2, &[vec![FieldElement::ONE, f.mul(w, w)]]).unwrap();
        assert_eq!(g.apply(&f, &line), expect);
    }

    #[test]
    fn composition_is_associative_and_matches_pointwise_action() {
        // deterministic pseudo-random semilinear maps over GF(4)^3
        let f = Field::new(2, 2).unwrap();
        let n = 3;
        let state = std::cell::Cell::new(0xDEADBEEFu64);
        let rng = || {
            let mut s = state.get();
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            state.set(s);
            s
        };
        let random_map = || loop {
            let m: Matrix = (0..n)
                .map(|_| (0..n).map(|_| FieldElement((rng() % 4) as u32)).collect())
                .collect();
            if invert_matrix(&f, &m).is_some() {
                return SemilinearMap::new(&f, m, (rng() % 2) as u32);
            }
        };
        for _ in 0..1000 {
            let (g, h, k) = (random_map(), random_map(), random_map());
            let lhs = g.compose(&f, &h).compose(&f, &k);
            let rhs = g.compose(&f, &h.compose(&f, &k));
            assert_eq!(lhs, rhs);
            for _ in 0..5 {
                let v: Vec<FieldElement> =
                    (0..n).map(|_| FieldElement((rng() % 4) as u32)).collect();
                let via_compose = lhs.apply_vector(&f, &v);
                let stepwise = k.apply_vector(&f, &h.apply_vector(&f, &g.apply_vector(&f, &v)));
                assert_eq!(via_compose, stepwise, "right action composition");
                if v.iter().any(|e| !e.is_zero()) {
                    // the induced subspace action composes the same way
                    let s = Subspace::span(&f, n, std::slice::from_ref(&v)).unwrap();
                    let gh = g.compose(&f, &h);
                    assert_eq!(gh.apply(&f, &s), h.apply(&f, &g.apply(&f, &s)));
                }
            }
        }
    }

    #[test]
    fn inverses_are_two_sided() {
        let f = Field::new(2, 3).unwrap();
        let emb = ExtensionEmbedding::new(&f, 3).unwrap();
        let g = gamma_l1_full(&emb).unwrap();
        for gen in &g.generators {
            let inv = gen.inverse(&f);
            assert!(gen.compose(&f, &inv).is_identity());
            assert!(inv.compose(&f, gen).is_identity());
        }
    }

    #[test]
    fn gamma_l1_of_gf8_over_gf2_has_21_elements() {
        let f2 = Field::new(2, 1).unwrap();
        let emb = ExtensionEmbedding::new(&f2, 3).unwrap();
        let g = gamma_l1_full(&emb).unwrap();
        assert_eq!(g.order, Some(21));
        assert_eq!(group_order(&g, 1000).unwrap(), 21);
    }

    #[test]
    fn trivial_group_enumerates_to_one_element() {
        let f = Field::new(2, 1).unwrap();
        let g = GroupSpec::new("trivial", &f, 3, vec![SemilinearMap::identity(3)]).unwrap();
        assert_eq!(enumerate_group(&g, 10).unwrap().len(), 1);
    }

    #[test]
    fn singer_cycle_of_gf32_has_order_31() {
        let f2 = Field::new(2, 1).unwrap();
        let emb = ExtensionEmbedding::new(&f2, 5).unwrap();
        let g = gamma_l1_subgroup(&emb, 1, 0, 5).unwrap();
        assert_eq!(g.order, Some(31));
        assert_eq!(group_order(&g, 100).unwrap(), 31);
    }

    #[test]
    fn foulser_violations_name_the_condition() {
        let f2 = Field::new(2, 1).unwrap();
        let emb = ExtensionEmbedding::new(&f2, 5).unwrap();
        match gamma_l1_subgroup(&emb, 3, 0, 1) {
            Err(Error::FoulserCondition { which: 1, .. }) => {}
            other => panic!("expected condition 1, got {other:?}"),
        }
        match gamma_l1_subgroup(&emb, 1, 0, 2) {
            Err(Error::FoulserCondition { which: 2, .. }) => {}
            other => panic!("expected condition 2, got {other:?}"),
        }
        match gamma_l1_subgroup(&emb, 31, 5, 5) {
            Err(Error::FoulserCondition { which: 3, .. }) => {}
            other => panic!("expected condition 3, got {other:?}"),
        }
    }

    #[test]
    fn blow_up_of_gf4_scalar_has_multiplicative_order_three() {
        let f2 = Field::new(2, 1).unwrap();
        let emb = ExtensionEmbedding::new(&f2, 2).unwrap();
        let k = emb.ext().clone();
        let scalar = SemilinearMap {
            matrix: vec![vec![k.omega()]],
            frobenius: 0,
        };
        let m = field_reduction_map(&emb, &scalar).unwrap();
        assert_eq!(m.dim(), 2);
        let m2 = m.compose(&f2, &m);
        let m3 = m2.compose(&f2, &m);
        assert!(!m.is_identity() && !m2.is_identity());
        assert!(m3.is_identity());
    }

    #[test]
    fn blow_up_is_a_group_homomorphism() {
        let f2 = Field::new(2, 1).unwrap();
        let emb = ExtensionEmbedding::new(&f2, 2).unwrap();
        let k = emb.ext().clone();
        let inner = gamma_l_generators(&k, 2).unwrap();
        assert!(field_reduction_map(&emb, &SemilinearMap::identity(2))
            .unwrap()
            .is_identity());
        for g in &inner.generators {
            for h in &inner.generators {
                let lhs = field_reduction_map(&emb, &g.compose(&k, h)).unwrap();
                let rhs = field_reduction_map(&emb, g)
                    .unwrap()
                    .compose(&f2, &field_reduction_map(&emb, h).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn sp_generators_preserve_the_standard_form() {
        for (p, t, two_m) in [(2u32, 1u32, 4usize), (3, 1, 4), (2, 1, 6), (2, 2, 4)] {
            let f = Field::new(p, t).unwrap();
            let j = SymplecticStructure::standard(&f, two_m).unwrap();
            let g = sp_generators(&f, two_m, &j).unwrap();
            for gen in &g.generators {
                assert!(j.is_preserved_by(gen));
            }
        }
    }

    #[test]
    fn sp4_gf2_has_order_720_and_sp2_equals_sl2() {
        let f = Field::new(2, 1).unwrap();
        let j4 = SymplecticStructure::standard(&f, 4).unwrap();
        let sp4 = sp_generators(&f, 4, &j4).unwrap() ;
        // oracle: order formula q^(m^2) (q^2 - 1)(q^4 - 1) at q = 2, m = 2
        assert_eq!(group_order(&sp4, 10_000).unwrap(), 720);

        for q in [2u32, 3, 4] {
            let (p, t) = match q {
                4 => (2, 2),
                other => (other, 1),
            };
            let f = Field::new(p, t).unwrap();
            let j2 = SymplecticStructure::standard(&f, 2).unwrap();
            let sp2 = sp_generators(&f, 2, &j2).unwrap();
            let sl2 = sl_generators(&f, 2).unwrap();
            let o_sp = group_order(&sp2, 100_000).unwrap();
            let o_sl = group_order(&sl2, 100_000).unwrap();
            assert_eq!(o_sp, o_sl, "Sp2({q}) = SL2({q})");
            let expected = (q as u64) * ((q as u64).pow(2) - 1);
            assert_eq!(o_sp, expected);
        }
    }

    #[test]
    fn degenerate_gram_matrices_are_rejected() {
        let f = Field::new(2, 1).unwrap();
        let zero = vec![vec![FieldElement::ZERO; 4]; 4];
        assert!(matches!(
            SymplecticStructure::new(&f, zero),
            Err(Error::BadGramMatrix(_))
        ));
        let mut bad_diag = SymplecticStructure::standard(&f, 4).unwrap().gram;
        bad_diag[0][0] = FieldElement::ONE;
        assert!(matches!(
            SymplecticStructure::new(&f, bad_diag),
            Err(Error::BadGramMatrix(_))
        ));
    }

    #[test]
    fn minimal_generators_recover_a_small_group() {
        let f2 = Field::new(2, 1).unwrap();
        let emb = ExtensionEmbedding::new(&f2, 3).unwrap();
        let g = gamma_l1_full(&emb).unwrap();
        let elements = enumerate_group(&g, 100).unwrap();
        assert_eq!(elements.len(), 21);
        let gens = minimal_generators(&f2, 3, &elements).unwrap();
        assert!(gens.len() <= 3);
        let regen = GroupSpec::new("regen", &f2, 3, gens).unwrap();
        assert_eq!(group_order(&regen, 100).unwrap(), 21);
    }

    #[test]
    fn rejects_singular_generators() {
        let f = Field::new(2, 1).unwrap();
        let singular = SemilinearMap {
            matrix: vec![fe(&[1, 1]), fe(&[1, 1])],
            frobenius: 0,
        };
        assert!(matches!(
            GroupSpec::new("bad", &f, 2, vec![singular]),
            Err(Error::SingularGenerator { .. })
        ));
    }
}
