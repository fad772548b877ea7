//! The split 8-dimensional algebra in characteristic 2, its trace, the
//! induced symplectic form and the trilinear form cutting out the lines of
//! the symplectic generalised hexagon.
//!
//! The basis is x_1, ..., x_8 (indices 0..8 here) and the multiplication
//! table lists only the nonzero basis products; everything else is zero.
//! x_4 + x_5 is the two-sided multiplicative identity and the trace of
//! sum lambda_i x_i is lambda_4 + lambda_5. The 6-dimensional hexagon space
//! uses the basis (x_1, x_2, x_3, x_6, x_7, x_8); lifting a 6-vector into
//! the algebra sets lambda_4 = lambda_5 = 0. The triple product in
//! T(x, y, z) = Tr(xyz) is bracketed as (xy)z, which reproduces both of the
//! nonzero values T(x_1, x_6, x_7) = T(x_2, x_3, x_8) = 1.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::semilinear::{minimal_generators, GroupSpec, SemilinearMap, SymplecticStructure};
use crate::subspace::{for_each_subspace, gaussian_binomial, Subspace};
use crate::Budget;

/// Coefficients over GF(2^b), indexed by the basis x_1..x_8.
pub type AlgebraElement = [FieldElement; 8];

/// Nonzero basis products: MUL_TABLE[i][j] = Some(k) means x_{i+1} x_{j+1} =
/// x_{k+1}.
const MUL_TABLE: [[Option<usize>; 8]; 8] = {
    const N: Option<usize> = None;
    [
        [N, N, N, N, Some(0), Some(1), Some(2), Some(3)],
        [N, N, Some(0), Some(1), N, N, Some(4), Some(5)],
        [N, Some(0), N, Some(2), N, Some(4), N, Some(6)],
        [Some(0), N, N, Some(3), N, Some(5), Some(6), N],
        [N, Some(1), Some(2), N, Some(4), N, N, Some(7)],
        [Some(1), N, Some(3), N, Some(5), N, Some(7), N],
        [Some(2), Some(3), N, N, Some(6), Some(7), N, N],
        [Some(4), Some(5), Some(6), Some(7), N, N, N, N],
    ]
};

/// Positions of the hexagon-space basis (x_1, x_2, x_3, x_6, x_7, x_8)
/// inside the algebra basis.
const HEX_BASIS: [usize; 6] = [0, 1, 2, 5, 6, 7];

pub fn algebra_zero() -> AlgebraElement {
    [FieldElement::ZERO; 8]
}

/// Bilinear extension of the printed basis products.
pub fn algebra_multiply(field: &Field, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
    let mut out = algebra_zero();
    for (i, &xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, &yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            if let Some(k) = MUL_TABLE[i][j] {
                out[k] = field.add(out[k], field.mul(xi, yj));
            }
        }
    }
    out
}

/// Tr(sum lambda_i x_i) = lambda_4 + lambda_5.
pub fn trace8(field: &Field, x: &AlgebraElement) -> FieldElement {
    field.add(x[3], x[4])
}

/// The multiplicative identity x_4 + x_5.
pub fn algebra_identity() -> AlgebraElement {
    let mut e = algebra_zero();
    e[3] = FieldElement::ONE;
    e[4] = FieldElement::ONE;
    e
}

/// Lift a hexagon-space vector, taking the coset representative with
/// lambda_4 = lambda_5 = 0.
pub fn lift(v: &[FieldElement]) -> AlgebraElement {
    debug_assert_eq!(v.len(), 6);
    let mut out = algebra_zero();
    for (slot, &coeff) in HEX_BASIS.iter().zip(v) {
        out[*slot] = coeff;
    }
    out
}

/// The symplectic form f(u, v) = Tr(uv) on lifted representatives.
pub fn hex_symplectic_form(field: &Field, u: &[FieldElement], v: &[FieldElement]) -> FieldElement {
    trace8(field, &algebra_multiply(field, &lift(u), &lift(v)))
}

/// The trilinear form T(x, y, z) = Tr((xy)z) on lifted representatives.
pub fn trilinear_t(
    field: &Field,
    x: &[FieldElement],
    y: &[FieldElement],
    z: &[FieldElement],
) -> FieldElement {
    let xy = algebra_multiply(field, &lift(x), &lift(y));
    trace8(field, &algebra_multiply(field, &xy, &lift(z)))
}

/// Gram matrix of the hexagon symplectic form on the 6-dimensional basis.
/// It comes out as the standard antidiagonal form.
pub fn hexagon_gram(field: &Field) -> Result<SymplecticStructure> {
    let n = 6;
    let mut gram = vec![vec![FieldElement::ZERO; n]; n];
    for (i, row) in gram.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let mut u = vec![FieldElement::ZERO; n];
            let mut v = vec![FieldElement::ZERO; n];
            u[i] = FieldElement::ONE;
            v[j] = FieldElement::ONE;
            *entry = hex_symplectic_form(field, &u, &v);
        }
    }
    SymplecticStructure::new(field, gram)
}

/// The quadratic form Q with w w = Q(w) (x_4 + x_5) in the algebra, read
/// off the square of the lifted vector.
pub fn quadratic_form(field: &Field, v: &[FieldElement]) -> FieldElement {
    let l = lift(v);
    let sq = algebra_multiply(field, &l, &l);
    debug_assert_eq!(sq[3], sq[4]);
    debug_assert!(sq
        .iter()
        .enumerate()
        .all(|(i, e)| i == 3 || i == 4 || e.is_zero()));
    sq[3]
}

/// The unique lift of a hexagon-space vector that squares to zero in the
/// algebra: lift(v) + sqrt(Q(v)) (x_4 + x_5). Square roots exist and are
/// unique in characteristic 2.
pub fn null_lift(field: &Field, v: &[FieldElement]) -> AlgebraElement {
    let mut l = lift(v);
    let alpha = field.frobenius(quadratic_form(field, v), field.degree() - 1);
    l[3] = field.add(l[3], alpha);
    l[4] = field.add(l[4], alpha);
    l
}

/// Edge set of the symplectic generalised hexagon over GF(2^b): the
/// 2-spaces <u, v> with f(u, v) = 0 whose null lifts annihilate each other
/// in the algebra. On such spaces T vanishes identically (the converse
/// fails: T vanishing on the space alone admits every isotropic line).
/// Returned sorted.
pub fn hexagon_edges(field: &Field, budget: &Budget) -> Result<Vec<Subspace>> {
    if field.characteristic() != 2 {
        return Err(Error::InvalidParameter(
            "the hexagon algebra lives in characteristic 2".into(),
        ));
    }
    let count = gaussian_binomial(6, 2, field.order() as u64);
    if count > budget.max_enumeration as u128 {
        return Err(Error::BudgetExceeded {
            count,
            budget: budget.max_enumeration as u128,
        });
    }
    let zero = algebra_zero();
    let mut edges = Vec::new();
    for_each_subspace(field, 6, 2, |s| {
        let (u, v) = (s.row(0), s.row(1));
        if !hex_symplectic_form(field, u, v).is_zero() {
            return;
        }
        let (lu, lv) = (null_lift(field, u), null_lift(field, v));
        if algebra_multiply(field, &lu, &lv) == zero {
            edges.push(s);
        }
    });
    edges.sort();
    Ok(edges)
}

/// Filter an explicit element list down to the maps preserving the null
/// configuration of T: the hexagon line set. Pointwise invariance of T on
/// all basis triples is strictly smaller, because T is only well defined on
/// the quotient section where the pairings vanish; the stabiliser of the
/// edge set is the subgroup the hexagon geometry actually admits. Returns a
/// small regenerated generating set with the exact order attached.
pub fn stabiliser_of_trilinear_form(
    field: &Field,
    elements: &[SemilinearMap],
    budget: &Budget,
) -> Result<GroupSpec> {
    let edges = hexagon_edges(field, budget)?;
    let keys: std::collections::HashSet<u128> = edges
        .iter()
        .map(|e| crate::subspace::subspace_key(field, e))
        .collect();
    let survivors: Vec<SemilinearMap> = elements
        .iter()
        .filter(|g| preserves_edge_set(field, g, &edges, &keys))
        .cloned()
        .collect();
    let order = survivors.len() as u64;
    let gens = minimal_generators(field, 6, &survivors)?;
    Ok(GroupSpec::new("G2(2)", field, 6, gens)?.with_order(order))
}

pub(crate) fn preserves_edge_set(
    field: &Field,
    g: &SemilinearMap,
    edges: &[Subspace],
    keys: &std::collections::HashSet<u128>,
) -> bool {
    edges
        .iter()
        .all(|e| keys.contains(&crate::subspace::subspace_key(field, &g.apply(field, e))))
}

/// Does g preserve T pointwise on all 216 basis triples? This is strictly
/// stronger than preserving the hexagon: T moves by symplectic correction
/// terms under maps that change the quotient section.
pub fn preserves_trilinear(field: &Field, g: &SemilinearMap) -> bool {
    debug_assert_eq!(g.dim(), 6);
    if field.order() == 2 && g.frobenius == 0 {
        return preserves_trilinear_gf2(g);
    }
    let mut basis = Vec::with_capacity(6);
    for i in 0..6 {
        let mut e = vec![FieldElement::ZERO; 6];
        e[i] = FieldElement::ONE;
        basis.push(e);
    }
    let images: Vec<Vec<FieldElement>> = basis.iter().map(|e| g.apply_vector(field, e)).collect();
    for i in 0..6 {
        for j in 0..6 {
            for k in 0..6 {
                let expected = field.frobenius(
                    trilinear_t(field, &basis[i], &basis[j], &basis[k]),
                    g.frobenius,
                );
                if trilinear_t(field, &images[i], &images[j], &images[k]) != expected {
                    return false;
                }
            }
        }
    }
    true
}

/// Bit-sliced invariance check over GF(2): rows are 6-bit words, the tensor
/// T(e_a, e_b, e_c) is packed into one u64 per first index.
#[allow(clippy::needless_range_loop)]
fn preserves_trilinear_gf2(g: &SemilinearMap) -> bool {
    // tensor[a]: byte b holds the 6-bit mask of c with T(e_a, e_b, e_c) = 1
    static TENSOR: std::sync::OnceLock<[u64; 6]> = std::sync::OnceLock::new();
    let tensor = TENSOR.get_or_init(|| {
        let f2 = Field::new(2, 1).expect("GF(2)");
        let mut t = [0u64; 6];
        for (a, slot) in t.iter_mut().enumerate() {
            for b in 0..6 {
                let mut mask = 0u64;
                for c in 0..6 {
                    let mut ea = vec![FieldElement::ZERO; 6];
                    let mut eb = vec![FieldElement::ZERO; 6];
                    let mut ec = vec![FieldElement::ZERO; 6];
                    ea[a] = FieldElement::ONE;
                    eb[b] = FieldElement::ONE;
                    ec[c] = FieldElement::ONE;
                    if !trilinear_t(&f2, &ea, &eb, &ec).is_zero() {
                        mask |= 1 << c;
                    }
                }
                *slot |= mask << (8 * b);
            }
        }
        t
    });
    let row_word = |row: &[FieldElement]| -> u64 {
        row.iter()
            .enumerate()
            .fold(0u64, |acc, (j, &e)| acc | ((e.0 as u64) << j))
    };
    let words: Vec<u64> = g.matrix.iter().map(|r| row_word(r)).collect();
    let fold_tensor = |w: u64| -> u64 {
        let mut acc = 0u64;
        let mut w = w;
        while w != 0 {
            let a = w.trailing_zeros() as usize;
            acc ^= tensor[a];
            w &= w - 1;
        }
        acc
    };
    for i in 0..6 {
        let slab = fold_tensor(words[i]);
        for j in 0..6 {
            let mut mask = 0u64;
            let mut wj = words[j];
            while wj != 0 {
                let b = wj.trailing_zeros() as usize;
                mask ^= (slab >> (8 * b)) & 0x3F;
                wj &= wj - 1;
            }
            for k in 0..6 {
                let got = (mask & words[k]).count_ones() & 1;
                let expected = ((tensor[i] >> (8 * j + k)) & 1) as u32;
                if got != expected {
                    return false;
                }
            }
        }
    }
    true
}
