//! Generator-closure orbit enumeration on subspaces, flags, ordered vertex
//! pairs, and raw vectors.
//!
//! Points are packed into u128 keys (Horner evaluation base q of the
//! canonical digit stream, matching [`crate::subspace::subspace_key`]) and
//! the BFS runs entirely on keys. Over GF(2) the inner loop switches to a
//! bit-packed representation: a row is a machine word, applying a matrix is
//! a handful of XORs, and the echelon form of a 2-row matrix is computed
//! with word operations. Both paths produce identical key sets.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::semilinear::SemilinearMap;
use crate::subspace::{canonical_vector, rref_in_place, subspace_key, vector_key, Subspace};
use crate::Budget;

/// An orbit as a set of packed point keys.
#[derive(Clone, Debug)]
pub struct OrbitSet {
    keys: HashSet<u128>,
}

impl OrbitSet {
    pub fn size(&self) -> u64 {
        self.keys.len() as u64
    }

    pub fn contains(&self, key: u128) -> bool {
        self.keys.contains(&key)
    }

    pub fn min_key(&self) -> u128 {
        self.keys.iter().copied().min().expect("orbit is nonempty")
    }

    pub fn keys(&self) -> impl Iterator<Item = u128> + '_ {
        self.keys.iter().copied()
    }

    pub fn sorted_keys(&self) -> Vec<u128> {
        let mut v: Vec<u128> = self.keys.iter().copied().collect();
        v.sort_unstable();
        v
    }
}

fn bfs(
    seed: u128,
    max: usize,
    mut expand: impl FnMut(u128, &mut Vec<u128>),
) -> Result<OrbitSet> {
    let mut seen: HashSet<u128> = HashSet::new();
    let mut queue: Vec<u128> = Vec::new();
    seen.insert(seed);
    queue.push(seed);
    let mut head = 0;
    let mut scratch: Vec<u128> = Vec::new();
    while head < queue.len() {
        let k = queue[head];
        head += 1;
        scratch.clear();
        expand(k, &mut scratch);
        for &nk in &scratch {
            if seen.insert(nk) {
                if seen.len() > max {
                    return Err(Error::OrbitBudgetExceeded {
                        budget: max,
                        partial: seen.len(),
                    });
                }
                queue.push(nk);
            }
        }
    }
    Ok(OrbitSet { keys: seen })
}

fn ensure_width(field: &Field, digits: usize, prefix: u128) -> Result<()> {
    let q = field.order() as u128;
    let mut acc: u128 = prefix.max(1);
    for _ in 0..digits {
        acc = acc.checked_mul(q).ok_or_else(|| {
            Error::InvalidParameter("packed orbit keys exceed 128 bits".into())
        })?;
    }
    Ok(())
}

// ---- GF(2) bit-packed machinery ----

struct PackedGens {
    /// rows_by_bit[g][b] is row (n-1-b) of generator g: the row hit by word
    /// bit b.
    rows_by_bit: Vec<Vec<u64>>,
}

fn pack_gf2(field: &Field, n: usize, gens: &[SemilinearMap]) -> PackedGens {
    debug_assert_eq!(field.order(), 2);
    let pack_row = |row: &[FieldElement]| -> u64 {
        row.iter()
            .enumerate()
            .fold(0u64, |acc, (j, &e)| acc | ((e.0 as u64) << (n - 1 - j)))
    };
    let rows_by_bit = gens
        .iter()
        .map(|g| {
            (0..n)
                .map(|b| pack_row(&g.matrix[n - 1 - b]))
                .collect::<Vec<u64>>()
        })
        .collect();
    PackedGens { rows_by_bit }
}

impl PackedGens {
    #[inline]
    fn apply(&self, g: usize, w: u64) -> u64 {
        let rows = &self.rows_by_bit[g];
        let mut acc = 0u64;
        let mut w = w;
        while w != 0 {
            let b = w.trailing_zeros();
            acc ^= rows[b as usize];
            w &= w - 1;
        }
        acc
    }

    fn count(&self) -> usize {
        self.rows_by_bit.len()
    }
}

/// Echelonise two independent GF(2) rows: returns (top, bottom) with the
/// top pivot left of the bottom pivot and a zero above the bottom pivot.
#[inline]
fn rref2_gf2(a: u64, b: u64) -> (u64, u64) {
    let hb = |x: u64| 63 - x.leading_zeros();
    let (x, mut y) = (a, b);
    if hb(x) == hb(y) {
        y ^= x; // nonzero because the rows are independent
    }
    let (mut top, bot) = if hb(x) > hb(y) { (x, y) } else { (y, x) };
    if (top >> hb(bot)) & 1 == 1 {
        top ^= bot;
    }
    (top, bot)
}

// ---- generic digit helpers ----

fn digits_to_key(field: &Field, prefix: u128, digits: &[FieldElement]) -> u128 {
    let q = field.order() as u128;
    digits.iter().fold(prefix, |acc, &e| acc * q + e.0 as u128)
}

fn key_to_digits(field: &Field, key: u128, count: usize) -> (u128, Vec<FieldElement>) {
    let q = field.order() as u128;
    let mut key = key;
    let mut digits = vec![FieldElement::ZERO; count];
    for i in (0..count).rev() {
        digits[i] = FieldElement((key % q) as u32);
        key /= q;
    }
    (key, digits)
}

/// Orbit of a subspace of dimension 1 or 2 under the generated group. Keys
/// follow [`subspace_key`].
pub fn subspace_orbit(
    field: &Field,
    n: usize,
    gens: &[SemilinearMap],
    seed: &Subspace,
    budget: &Budget,
) -> Result<OrbitSet> {
    let d = seed.dim();
    assert!(d == 1 || d == 2, "orbit enumeration covers dimensions 1 and 2");
    ensure_width(field, d * n, d as u128)?;
    let seed_key = subspace_key(field, seed);
    if field.order() == 2 {
        let packed = pack_gf2(field, n, gens);
        let mask = (1u128 << n) - 1;
        if d == 1 {
            return bfs(seed_key, budget.max_orbit, |k, out| {
                let w = (k & mask) as u64;
                for g in 0..packed.count() {
                    let img = packed.apply(g, w);
                    out.push((1u128 << n) | img as u128);
                }
            });
        }
        return bfs(seed_key, budget.max_orbit, |k, out| {
            let r1 = (k & mask) as u64;
            let r0 = ((k >> n) & mask) as u64;
            for g in 0..packed.count() {
                let (a, b) = (packed.apply(g, r0), packed.apply(g, r1));
                let (top, bot) = rref2_gf2(a, b);
                out.push((2u128 << (2 * n)) | ((top as u128) << n) | bot as u128);
            }
        });
    }
    let gens = gens.to_vec();
    let field = field.clone();
    bfs(seed_key, budget.max_orbit, move |k, out| {
        let (_, digits) = key_to_digits(&field, k, d * n);
        for g in &gens {
            if d == 1 {
                let img = canonical_vector(&field, &g.apply_vector(&field, &digits));
                out.push(digits_to_key(&field, 1, &img));
            } else {
                let mut rows = vec![
                    g.apply_vector(&field, &digits[..n]),
                    g.apply_vector(&field, &digits[n..]),
                ];
                let rank = rref_in_place(&field, &mut rows);
                debug_assert_eq!(rank, 2);
                let mut key = 2u128;
                for row in &rows[..2] {
                    key = digits_to_key(&field, key, row);
                }
                out.push(key);
            }
        }
    })
}

/// Key of a flag (vertex row followed by the edge's RREF rows, no prefix).
pub fn flag_key(field: &Field, vertex: &Subspace, edge: &Subspace) -> u128 {
    let mut key = digits_to_key(field, 0, vertex.row(0));
    key = digits_to_key(field, key, edge.row(0));
    digits_to_key(field, key, edge.row(1))
}

/// Orbit of an incident (vertex, edge) pair.
pub fn flag_orbit(
    field: &Field,
    n: usize,
    gens: &[SemilinearMap],
    vertex: &Subspace,
    edge: &Subspace,
    budget: &Budget,
) -> Result<OrbitSet> {
    assert_eq!(vertex.dim(), 1);
    assert_eq!(edge.dim(), 2);
    ensure_width(field, 3 * n, 1)?;
    let seed = flag_key(field, vertex, edge);
    if field.order() == 2 {
        let packed = pack_gf2(field, n, gens);
        let mask = (1u128 << n) - 1;
        return bfs(seed, budget.max_orbit, |k, out| {
            let r1 = (k & mask) as u64;
            let r0 = ((k >> n) & mask) as u64;
            let v = ((k >> (2 * n)) & mask) as u64;
            for g in 0..packed.count() {
                let vi = packed.apply(g, v);
                let (top, bot) = rref2_gf2(packed.apply(g, r0), packed.apply(g, r1));
                out.push(((vi as u128) << (2 * n)) | ((top as u128) << n) | bot as u128);
            }
        });
    }
    let gens = gens.to_vec();
    let field = field.clone();
    bfs(seed, budget.max_orbit, move |k, out| {
        let (_, digits) = key_to_digits(&field, k, 3 * n);
        for g in &gens {
            let vi = canonical_vector(&field, &g.apply_vector(&field, &digits[..n]));
            let mut rows = vec![
                g.apply_vector(&field, &digits[n..2 * n]),
                g.apply_vector(&field, &digits[2 * n..]),
            ];
            let rank = rref_in_place(&field, &mut rows);
            debug_assert_eq!(rank, 2);
            let mut key = digits_to_key(&field, 0, &vi);
            key = digits_to_key(&field, key, &rows[0]);
            key = digits_to_key(&field, key, &rows[1]);
            out.push(key);
        }
    })
}

/// Key of an ordered pair of vertices (two canonical rows, no prefix).
pub fn pair_key(field: &Field, x: &Subspace, y: &Subspace) -> u128 {
    let key = digits_to_key(field, 0, x.row(0));
    digits_to_key(field, key, y.row(0))
}

/// Orbit of an ordered pair of distinct vertices.
pub fn pair_orbit(
    field: &Field,
    n: usize,
    gens: &[SemilinearMap],
    x: &Subspace,
    y: &Subspace,
    budget: &Budget,
) -> Result<OrbitSet> {
    assert_eq!(x.dim(), 1);
    assert_eq!(y.dim(), 1);
    ensure_width(field, 2 * n, 1)?;
    let seed = pair_key(field, x, y);
    if field.order() == 2 {
        let packed = pack_gf2(field, n, gens);
        let mask = (1u128 << n) - 1;
        return bfs(seed, budget.max_orbit, |k, out| {
            let b = (k & mask) as u64;
            let a = ((k >> n) & mask) as u64;
            for g in 0..packed.count() {
                let (ai, bi) = (packed.apply(g, a), packed.apply(g, b));
                out.push(((ai as u128) << n) | bi as u128);
            }
        });
    }
    let gens = gens.to_vec();
    let field = field.clone();
    bfs(seed, budget.max_orbit, move |k, out| {
        let (_, digits) = key_to_digits(&field, k, 2 * n);
        for g in &gens {
            let a = canonical_vector(&field, &g.apply_vector(&field, &digits[..n]));
            let b = canonical_vector(&field, &g.apply_vector(&field, &digits[n..]));
            let key = digits_to_key(&field, 0, &a);
            out.push(digits_to_key(&field, key, &b));
        }
    })
}

/// Orbit of a raw (non-normalised) vector; keys follow [`vector_key`].
pub fn vector_orbit(
    field: &Field,
    n: usize,
    gens: &[SemilinearMap],
    seed: &[FieldElement],
    budget: &Budget,
) -> Result<OrbitSet> {
    ensure_width(field, n, 1)?;
    let seed_key = vector_key(field, seed);
    let gens = gens.to_vec();
    let field = field.clone();
    bfs(seed_key, budget.max_orbit, move |k, out| {
        let (_, digits) = key_to_digits(&field, k, n);
        for g in &gens {
            let img = g.apply_vector(&field, &digits);
            out.push(digits_to_key(&field, 0, &img));
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semilinear::{
        gamma_l1_full, sp_generators, GroupSpec, SymplecticStructure,
    };
    use crate::subspace::enumerate_subspaces;
    use crate::field::ExtensionEmbedding;

    #[test]
    fn trivial_group_orbit_is_the_seed() {
        let f = Field::new(2, 1).unwrap();
        let g = GroupSpec::new("trivial", &f, 4, vec![SemilinearMap::identity(4)]).unwrap();
        let b = Budget::default();
        let seed = Subspace::span(&f, 4, &[vec![
            FieldElement::ONE,
            FieldElement::ZERO,
            FieldElement::ZERO,
            FieldElement::ZERO,
        ]])
        .unwrap();
        let orbit = subspace_orbit(&f, 4, &g.generators, &seed, &b).unwrap();
        assert_eq!(orbit.size(), 1);
        assert_eq!(orbit.min_key(), subspace_key(&f, &seed));
    }

    #[test]
    fn sp4_gf2_is_transitive_on_vertices() {
        let f = Field::new(2, 1).unwrap();
        let j = SymplecticStructure::standard(&f, 4).unwrap();
        let sp = sp_generators(&f, 4, &j).unwrap();
        let b = Budget::default();
        let ones = enumerate_subspaces(&f, 4, 1, &b).unwrap();
        let orbit = subspace_orbit(&f, 4, &sp.generators, &ones[0], &b).unwrap();
        assert_eq!(orbit.size(), 15);
    }

    #[test]
    fn gamma_l1_32_has_a_single_edge_orbit_of_155() {
        let f2 = Field::new(2, 1).unwrap();
        let emb = ExtensionEmbedding::new(&f2, 5).unwrap();
        let g = gamma_l1_full(&emb).unwrap();
        let b = Budget::default();
        let twos = enumerate_subspaces(&f2, 5, 2, &b).unwrap();
        assert_eq!(twos.len(), 155);
        let orbit = subspace_orbit(&f2, 5, &g.generators, &twos[0], &b).unwrap();
        assert_eq!(orbit.size(), 155);
    }

    #[test]
    fn orbits_partition_the_two_subspaces_of_gf2_4_under_sp4() {
        let f = Field::new(2, 1).unwrap();
        let j = SymplecticStructure::standard(&f, 4).unwrap();
        let sp = sp_generators(&f, 4, &j).unwrap();
        let b = Budget::default();
        let twos = enumerate_subspaces(&f, 4, 2, &b).unwrap();
        let orbits: Vec<OrbitSet> = twos
            .iter()
            .map(|s| subspace_orbit(&f, 4, &sp.generators, s, &b).unwrap())
            .collect();
        for (i, a) in orbits.iter().enumerate() {
            for bset in orbits.iter().skip(i + 1) {
                let same_min = a.min_key() == bset.min_key();
                let disjoint = a.keys().all(|k| !bset.contains(k));
                assert!(same_min && a.size() == bset.size() || disjoint);
            }
        }
        let mut sizes: Vec<u64> = orbits
            .iter()
            .map(|o| (o.min_key(), o.size()))
            .collect::<std::collections::BTreeMap<_, _>>()
            .into_values()
            .collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![15, 20]);
    }

    #[test]
    fn generic_and_bitpacked_paths_agree_over_gf2() {
        // force the generic path by cloning keys through the flag/pair
        // variants on a GF(2) instance and comparing against direct subspace
        // application of every generator word
        let f = Field::new(2, 1).unwrap();
        let j = SymplecticStructure::standard(&f, 4).unwrap();
        let sp = sp_generators(&f, 4, &j).unwrap();
        let b = Budget::default();
        let twos = enumerate_subspaces(&f, 4, 2, &b).unwrap();
        for seed in twos.iter().take(5) {
            let fast = subspace_orbit(&f, 4, &sp.generators, seed, &b).unwrap();
            // reference: naive closure using SemilinearMap::apply
            let mut seen = std::collections::HashSet::new();
            let mut queue = vec![seed.clone()];
            seen.insert(subspace_key(&f, seed));
            while let Some(s) = queue.pop() {
                for g in &sp.generators {
                    let img = g.apply(&f, &s);
                    if seen.insert(subspace_key(&f, &img)) {
                        queue.push(img);
                    }
                }
            }
            assert_eq!(fast.size() as usize, seen.len());
            for k in seen {
                assert!(fast.contains(k));
            }
        }
    }

    #[test]
    fn orbit_budget_overrun_reports_partial_size() {
        let f = Field::new(2, 1).unwrap();
        let j = SymplecticStructure::standard(&f, 4).unwrap();
        let sp = sp_generators(&f, 4, &j).unwrap();
        let tight = Budget {
            max_orbit: 5,
            ..Budget::default()
        };
        let b = Budget::default();
        let ones = enumerate_subspaces(&f, 4, 1, &b).unwrap();
        match subspace_orbit(&f, 4, &sp.generators, &ones[0], &tight) {
            Err(Error::OrbitBudgetExceeded { budget: 5, partial }) => assert!(partial > 5),
            other => panic!("expected orbit budget error, got {other:?}"),
        }
    }
}
