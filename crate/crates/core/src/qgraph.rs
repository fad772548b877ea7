//! The q-graph data model: vertices are the 1-subspaces of F_q^n, edges a
//! chosen set of 2-subspaces. Regularity, neighbourhoods, flags, the four
//! transitivity predicates (with orbit-size certificates), the classical
//! counterpart and its graph6 / edge-list exports all live here.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::orbit::{self, OrbitSet};
use crate::semilinear::{GroupSpec, SemilinearMap};
use crate::subspace::{
    enumerate_subspaces, gaussian_binomial, rref_in_place, subspace_key, vector_index, Subspace,
};
use crate::Budget;

/// An incident (vertex, edge) pair.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Flag {
    pub vertex: Subspace,
    pub edge: Subspace,
}

/// Whether edges through each vertex fill out all 2-subspaces of a fixed
/// (k+1)-space. `degree` is None when some vertex has no q-degree, with a
/// witness attached.
#[derive(Clone, Debug)]
pub struct RegularityReport {
    pub degree: Option<usize>,
    pub witness: Option<Subspace>,
}

/// Orbit-size certificate for a transitivity predicate.
#[derive(Clone, Copy, Debug)]
pub struct TransitivityCheck {
    pub transitive: bool,
    pub orbit_size: u64,
    pub total: u64,
}

/// All predicate results for one (graph, group) pair. The implication chain
/// symmetric => flag-transitive => edge-transitive (and, for k >= 1,
/// flag-transitive => vertex-transitive) is asserted on every evaluation.
#[derive(Clone, Debug)]
pub struct VerificationOutcome {
    pub regularity: RegularityReport,
    pub vertex: TransitivityCheck,
    pub edge: TransitivityCheck,
    pub flag: TransitivityCheck,
    pub symmetric: TransitivityCheck,
}

#[derive(Clone)]
pub struct QGraph {
    field: Field,
    n: usize,
    edges: Vec<Subspace>,
    edge_keys: HashSet<u128>,
}

impl std::fmt::Debug for QGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "QGraph({:?}^{}, {} edges)",
            self.field,
            self.n,
            self.edges.len()
        )
    }
}

impl QGraph {
    /// Build a q-graph from an edge list; edges are deduplicated and sorted.
    pub fn new(field: &Field, n: usize, edges: Vec<Subspace>) -> Result<QGraph> {
        let mut edges = edges;
        for e in &edges {
            if e.ambient() != n {
                return Err(Error::AmbientMismatch {
                    left: n,
                    right: e.ambient(),
                });
            }
            if e.dim() != 2 {
                return Err(Error::InvalidParameter(format!(
                    "edges must be 2-dimensional, got dimension {}",
                    e.dim()
                )));
            }
        }
        edges.sort();
        edges.dedup();
        let edge_keys = edges.iter().map(|e| subspace_key(field, e)).collect();
        Ok(QGraph {
            field: field.clone(),
            n,
            edges,
            edge_keys,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Subspace] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_edge(&self, e: &Subspace) -> bool {
        self.edge_keys.contains(&subspace_key(&self.field, e))
    }

    pub fn vertex_count(&self) -> u128 {
        gaussian_binomial(self.n as u32, 1, self.field.order() as u64)
    }

    pub fn vertices(&self, budget: &Budget) -> Result<Vec<Subspace>> {
        enumerate_subspaces(&self.field, self.n, 1, budget)
    }

    /// Each edge contributes exactly q + 1 flags.
    pub fn flag_count(&self) -> u128 {
        self.edges.len() as u128 * (self.field.order() as u128 + 1)
    }

    pub fn flags(&self) -> Vec<Flag> {
        let mut out = Vec::with_capacity(self.flag_count() as usize);
        for e in &self.edges {
            for v in e.one_subspaces(&self.field) {
                out.push(Flag {
                    vertex: v,
                    edge: e.clone(),
                });
            }
        }
        out.sort();
        out
    }

    /// vertex key -> indices of edges through it.
    fn incidence_index(&self) -> HashMap<u128, Vec<usize>> {
        let mut map: HashMap<u128, Vec<usize>> = HashMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            for v in e.one_subspaces(&self.field) {
                map.entry(subspace_key(&self.field, &v)).or_default().push(i);
            }
        }
        map
    }

    /// The closed neighbourhood of a vertex, as a sorted list of vectors:
    /// the union of all edges through X, or just the vectors of X when X is
    /// isolated.
    pub fn neighbourhood(&self, x: &Subspace) -> Vec<Vec<FieldElement>> {
        assert_eq!(x.dim(), 1);
        assert_eq!(x.ambient(), self.n);
        let xkey = subspace_key(&self.field, x);
        let mut vector_keys: HashSet<u128> = HashSet::new();
        let mut any = false;
        for e in &self.edges {
            if e.one_subspaces(&self.field)
                .iter()
                .any(|v| subspace_key(&self.field, v) == xkey)
            {
                any = true;
                for v in e.vectors(&self.field) {
                    vector_keys.insert(crate::subspace::vector_key(&self.field, &v));
                }
            }
        }
        if !any {
            for v in x.vectors(&self.field) {
                vector_keys.insert(crate::subspace::vector_key(&self.field, &v));
            }
        }
        let mut keys: Vec<u128> = vector_keys.into_iter().collect();
        keys.sort_unstable();
        keys.into_iter()
            .map(|k| crate::subspace::vector_from_key(&self.field, self.n, k))
            .collect()
    }

    /// q-degree regularity: every vertex's edges must be exactly the
    /// 2-subspaces through it of a (k+1)-dimensional neighbourhood, with a
    /// vertex-independent k.
    pub fn is_k_regular(&self, budget: &Budget) -> Result<RegularityReport> {
        let field = &self.field;
        let q = field.order() as u64;
        let vertices = self.vertices(budget)?;
        let incidence = self.incidence_index();
        let qn = q.checked_pow(self.n as u32).expect("ambient fits u64") as usize;
        let mut covered = vec![false; qn];
        let mut degree: Option<usize> = None;
        for x in &vertices {
            let xkey = subspace_key(field, x);
            let empty = Vec::new();
            let through = incidence.get(&xkey).unwrap_or(&empty);
            let k = if through.is_empty() {
                // isolated vertex: neighbourhood is the vector set of X
                0
            } else {
                // accumulate the vector set and its span
                let mut touched: Vec<usize> = Vec::new();
                let mut span_rows: Vec<Vec<FieldElement>> = Vec::new();
                let mut count = 0u64;
                for &ei in through {
                    let e = &self.edges[ei];
                    for v in e.vectors(field) {
                        let idx = vector_index(field, &v);
                        if !covered[idx] {
                            covered[idx] = true;
                            touched.push(idx);
                            count += 1;
                        }
                    }
                    for row in e.rows() {
                        span_rows.push(row.to_vec());
                    }
                }
                let rank = rref_in_place(field, &mut span_rows);
                for idx in touched {
                    covered[idx] = false;
                }
                // neighbourhood is a subspace iff it fills its span
                if count != q.pow(rank as u32) {
                    return Ok(RegularityReport {
                        degree: None,
                        witness: Some(x.clone()),
                    });
                }
                let k = rank - 1;
                // edges through X must be all 2-subspaces of N(X) through X
                let expected = (q.pow(k as u32) - 1) / (q - 1);
                if through.len() as u64 != expected {
                    return Ok(RegularityReport {
                        degree: None,
                        witness: Some(x.clone()),
                    });
                }
                k
            };
            match degree {
                None => degree = Some(k),
                Some(prev) if prev != k => {
                    return Ok(RegularityReport {
                        degree: None,
                        witness: Some(x.clone()),
                    });
                }
                _ => {}
            }
        }
        Ok(RegularityReport {
            degree,
            witness: None,
        })
    }

    /// True iff g maps the edge set onto itself.
    pub fn is_automorphism(&self, g: &SemilinearMap) -> bool {
        self.edges
            .iter()
            .all(|e| self.edge_keys.contains(&subspace_key(&self.field, &g.apply(&self.field, e))))
    }

    /// Verify every generator stabilises the edge set; names the violator.
    pub fn check_group(&self, group: &GroupSpec) -> Result<()> {
        for (index, g) in group.generators.iter().enumerate() {
            if !self.is_automorphism(g) {
                return Err(Error::NotAutomorphism {
                    group: group.name.clone(),
                    index,
                });
            }
        }
        Ok(())
    }

    /// Smallest canonical vertex: the 1-space spanned by (0, ..., 0, 1).
    fn seed_vertex(&self) -> Subspace {
        let mut row = vec![FieldElement::ZERO; self.n];
        row[self.n - 1] = FieldElement::ONE;
        Subspace::from_rref_rows(self.n, vec![row])
    }

    pub fn is_vertex_transitive(
        &self,
        group: &GroupSpec,
        budget: &Budget,
    ) -> Result<TransitivityCheck> {
        self.check_group(group)?;
        self.vertex_transitivity_unchecked(group, budget)
    }

    fn vertex_transitivity_unchecked(
        &self,
        group: &GroupSpec,
        budget: &Budget,
    ) -> Result<TransitivityCheck> {
        let seed = self.seed_vertex();
        let o = orbit::subspace_orbit(&self.field, self.n, &group.generators, &seed, budget)?;
        let total = self.vertex_count() as u64;
        Ok(TransitivityCheck {
            transitive: o.size() == total,
            orbit_size: o.size(),
            total,
        })
    }

    pub fn is_edge_transitive(
        &self,
        group: &GroupSpec,
        budget: &Budget,
    ) -> Result<TransitivityCheck> {
        self.check_group(group)?;
        if self.edges.is_empty() {
            return Ok(TransitivityCheck {
                transitive: true,
                orbit_size: 0,
                total: 0,
            });
        }
        let o = orbit::subspace_orbit(&self.field, self.n, &group.generators, &self.edges[0], budget)?;
        let total = self.edges.len() as u64;
        debug_assert!(o.keys().all(|k| self.edge_keys.contains(&k)));
        Ok(TransitivityCheck {
            transitive: o.size() == total,
            orbit_size: o.size(),
            total,
        })
    }

    pub fn is_flag_transitive(
        &self,
        group: &GroupSpec,
        budget: &Budget,
    ) -> Result<TransitivityCheck> {
        self.check_group(group)?;
        if self.edges.is_empty() {
            return Ok(TransitivityCheck {
                transitive: true,
                orbit_size: 0,
                total: 0,
            });
        }
        let edge = &self.edges[0];
        let vertex = &edge.one_subspaces(&self.field)[0];
        let o = orbit::flag_orbit(&self.field, self.n, &group.generators, vertex, edge, budget)?;
        let total = self.flag_count() as u64;
        Ok(TransitivityCheck {
            transitive: o.size() == total,
            orbit_size: o.size(),
            total,
        })
    }

    pub fn is_symmetric(&self, group: &GroupSpec, budget: &Budget) -> Result<TransitivityCheck> {
        self.check_group(group)?;
        if self.edges.is_empty() {
            return Ok(TransitivityCheck {
                transitive: true,
                orbit_size: 0,
                total: 0,
            });
        }
        let edge = &self.edges[0];
        let ones = edge.one_subspaces(&self.field);
        let o = orbit::pair_orbit(&self.field, self.n, &group.generators, &ones[0], &ones[1], budget)?;
        let q = self.field.order() as u64;
        let total = self.edges.len() as u64 * (q + 1) * q;
        Ok(TransitivityCheck {
            transitive: o.size() == total,
            orbit_size: o.size(),
            total,
        })
    }

    /// Run all predicates and assert the implication chain.
    pub fn verify(&self, group: &GroupSpec, budget: &Budget) -> Result<VerificationOutcome> {
        self.check_group(group)?;
        let regularity = self.is_k_regular(budget)?;
        let vertex = self.vertex_transitivity_unchecked(group, budget)?;
        let edge = self.is_edge_transitive(group, budget)?;
        let flag = self.is_flag_transitive(group, budget)?;
        let symmetric = self.is_symmetric(group, budget)?;
        if symmetric.transitive && !flag.transitive {
            return Err(Error::InvariantViolation(
                "symmetric must imply flag-transitive".into(),
            ));
        }
        if flag.transitive && !edge.transitive {
            return Err(Error::InvariantViolation(
                "flag-transitive must imply edge-transitive".into(),
            ));
        }
        if flag.transitive && regularity.degree.is_some_and(|k| k >= 1) && !vertex.transitive {
            return Err(Error::InvariantViolation(
                "flag-transitive and k >= 1 must imply vertex-transitive".into(),
            ));
        }
        Ok(VerificationOutcome {
            regularity,
            vertex,
            edge,
            flag,
            symmetric,
        })
    }

    /// Any pair of vertices lies in at most one edge.
    pub fn partial_linear_space_check(&self) -> bool {
        let mut seen: HashSet<(u128, u128)> = HashSet::new();
        for e in &self.edges {
            let ones = e.one_subspaces(&self.field);
            for (i, a) in ones.iter().enumerate() {
                for b in ones.iter().skip(i + 1) {
                    let pair = (subspace_key(&self.field, a), subspace_key(&self.field, b));
                    if !seen.insert(pair) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The ordinary graph on vertex indices, joining two indices when the
    /// span of the vertices is an edge. Each q-graph edge yields C(q+1, 2)
    /// classical edges.
    pub fn classical_counterpart(&self, budget: &Budget) -> Result<ClassicalGraph> {
        let vertices = self.vertices(budget)?;
        let index_of: HashMap<u128, u32> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (subspace_key(&self.field, v), i as u32))
            .collect();
        let mut edges: Vec<(u32, u32)> = Vec::new();
        for e in &self.edges {
            let ids: Vec<u32> = e
                .one_subspaces(&self.field)
                .iter()
                .map(|v| index_of[&subspace_key(&self.field, v)])
                .collect();
            for (i, &a) in ids.iter().enumerate() {
                for &b in ids.iter().skip(i + 1) {
                    edges.push((a.min(b), a.max(b)));
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(ClassicalGraph {
            vertex_count: vertices.len(),
            edges,
        })
    }

    /// The permutation a group element induces on the sorted vertex list.
    pub fn induced_vertex_permutation(
        &self,
        g: &SemilinearMap,
        vertices: &[Subspace],
    ) -> Vec<u32> {
        let index_of: HashMap<u128, u32> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (subspace_key(&self.field, v), i as u32))
            .collect();
        vertices
            .iter()
            .map(|v| index_of[&subspace_key(&self.field, &g.apply(&self.field, v))])
            .collect()
    }

    /// Orbit of a flag under the group, exposed for size experiments.
    pub fn flag_orbit_of(
        &self,
        group: &GroupSpec,
        vertex: &Subspace,
        edge: &Subspace,
        budget: &Budget,
    ) -> Result<OrbitSet> {
        orbit::flag_orbit(&self.field, self.n, &group.generators, vertex, edge, budget)
    }
}

/// A simple undirected graph on integer vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalGraph {
    pub vertex_count: usize,
    /// Sorted, deduplicated pairs (a, b) with a < b.
    pub edges: Vec<(u32, u32)>,
}

impl ClassicalGraph {
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.vertex_count];
        for &(a, b) in &self.edges {
            deg[a as usize] += 1;
            deg[b as usize] += 1;
        }
        deg
    }

    /// graph6 encoding: the size header followed by the upper triangle of
    /// the adjacency matrix in column order, six bits per character, each
    /// character offset by 63.
    pub fn to_graph6(&self) -> String {
        let n = self.vertex_count;
        let mut out = String::new();
        if n <= 62 {
            out.push(char::from_u32(n as u32 + 63).unwrap());
        } else if n <= 258_047 {
            out.push('~');
            let v = n as u32;
            for shift in [12, 6, 0] {
                out.push(char::from_u32(((v >> shift) & 63) + 63).unwrap());
            }
        } else {
            panic!("graph6 export supports at most 258047 vertices");
        }
        let adjacency: HashSet<(u32, u32)> = self.edges.iter().copied().collect();
        let mut bits: Vec<bool> = Vec::with_capacity(n * (n - 1) / 2);
        for j in 1..n {
            for i in 0..j {
                bits.push(adjacency.contains(&(i as u32, j as u32)));
            }
        }
        for chunk in bits.chunks(6) {
            let mut v = 0u32;
            for (i, &b) in chunk.iter().enumerate() {
                if b {
                    v |= 1 << (5 - i);
                }
            }
            out.push(char::from_u32(v + 63).unwrap());
        }
        out
    }

    /// Plain text edge list: one "u v" pair per line, 0-indexed, sorted.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for &(a, b) in &self.edges {
            out.push_str(&format!("{a} {b}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;
    use crate::semilinear::{sp_generators, SymplecticStructure};

    fn fe(vals: &[u32]) -> Vec<FieldElement> {
        vals.iter().map(|&v| FieldElement(v)).collect()
    }

    #[test]
    fn empty_graph_neighbourhood_is_the_vertex_itself() {
        let f = Field::new(2, 1).unwrap();
        let g = QGraph::new(&f, 3, Vec::new()).unwrap();
        let x = Subspace::span(&f, 3, &[fe(&[1, 0, 0])]).unwrap();
        let nb = g.neighbourhood(&x);
        assert_eq!(nb.len(), 2); // zero and the spanning vector
        let b = Budget::default();
        let reg = g.is_k_regular(&b).unwrap();
        assert_eq!(reg.degree, Some(0), "empty q-graph is 0-regular");
    }

    #[test]
    fn flag_counts_are_edges_times_q_plus_one() {
        let f = Field::new(2, 1).unwrap();
        let b = Budget::default();
        let g = constructions::complete_qgraph(&f, 3, &b).unwrap();
        assert_eq!(g.edge_count(), 7);
        assert_eq!(g.flag_count(), 21, "7 * 3 flags on the complete graph");
        assert_eq!(g.flags().len(), 21);
        for flag in g.flags() {
            assert!(flag.edge.contains(&f, &flag.vertex).unwrap());
        }
    }

    #[test]
    fn polar_space_gf2_4_has_subspace_neighbourhoods_of_size_8() {
        let f = Field::new(2, 1).unwrap();
        let b = Budget::default();
        let j = SymplecticStructure::standard(&f, 4).unwrap();
        let g = constructions::symplectic_polar_qgraph(&f, &j, &b).unwrap();
        assert_eq!(g.edge_count(), 15);
        for x in g.vertices(&b).unwrap() {
            assert_eq!(g.neighbourhood(&x).len(), 8, "k = n - 2 = 2 so |N(X)| = 2^3");
        }
        let reg = g.is_k_regular(&b).unwrap();
        assert_eq!(reg.degree, Some(2));
    }

    #[test]
    fn complete_graph_is_n_minus_1_regular() {
        let f = Field::new(2, 1).unwrap();
        let b = Budget::default();
        let g = constructions::complete_qgraph(&f, 4, &b).unwrap();
        assert_eq!(g.is_k_regular(&b).unwrap().degree, Some(3));
    }

    #[test]
    fn scalar_maps_and_identity_are_automorphisms() {
        let f = Field::new(3, 1).unwrap();
        let b = Budget::default();
        let j = SymplecticStructure::standard(&f, 4).unwrap();
        let g = constructions::symplectic_polar_qgraph(&f, &j, &b).unwrap();
        assert!(g.is_automorphism(&SemilinearMap::identity(4)));
        assert!(g.is_automorphism(&crate::semilinear::scalar_map(4, FieldElement(2))));
    }

    #[test]
    fn some_transvection_breaks_the_polar_space() {
        // scan elementary transvections of GL4(2) for one that moves an
        // isotropic line to a non-isotropic one
        let f = Field::new(2, 1).unwrap();
        let b = Budget::default();
        let j = SymplecticStructure::standard(&f, 4).unwrap();
        let g = constructions::symplectic_polar_qgraph(&f, &j, &b).unwrap();
        let mut found = false;
        for r in 0..4 {
            for c in 0..4 {
                if r == c {
                    continue;
                }
                let mut m = crate::semilinear::identity_matrix(4);
                m[r][c] = FieldElement::ONE;
                let map = SemilinearMap {
                    matrix: m,
                    frobenius: 0,
                };
                if !g.is_automorphism(&map) {
                    found = true;
                }
            }
        }
        assert!(found, "a GL4(2) transvection outside Sp4(2) moves the edge set");
    }

    #[test]
    fn sp4_verifies_fully_on_the_polar_space() {
        let f = Field::new(2, 1).unwrap();
        let b = Budget::default();
        let j = SymplecticStructure::standard(&f, 4).unwrap();
        let graph = constructions::symplectic_polar_qgraph(&f, &j, &b).unwrap();
        let sp = sp_generators(&f, 4, &j).unwrap();
        let outcome = graph.verify(&sp, &b).unwrap();
        assert_eq!(outcome.regularity.degree, Some(2));
        assert!(outcome.vertex.transitive);
        assert!(outcome.edge.transitive);
        assert!(outcome.flag.transitive);
        assert!(outcome.symmetric.transitive);
        assert_eq!(outcome.flag.orbit_size, 45);
    }

    #[test]
    fn check_group_names_the_violating_generator() {
        let f = Field::new(2, 1).unwrap();
        let b = Budget::default();
        let j = SymplecticStructure::standard(&f, 4).unwrap();
        let graph = constructions::symplectic_polar_qgraph(&f, &j, &b).unwrap();
        let mut m = crate::semilinear::identity_matrix(4);
        m[0][1] = FieldElement::ONE;
        let bad = GroupSpec::new(
            "gl-probe",
            &f,
            4,
            vec![SemilinearMap {
                matrix: m,
                frobenius: 0,
            }],
        )
        .unwrap();
        match graph.is_flag_transitive(&bad, &b) {
            Err(Error::NotAutomorphism { group, index: 0 }) => assert_eq!(group, "gl-probe"),
            other => panic!("expected automorphism failure, got {other:?}"),
        }
    }

    #[test]
    fn classical_counterpart_of_one_edge_is_a_triangle() {
        let f = Field::new(2, 1).unwrap();
        let b = Budget::default();
        let g = constructions::complete_qgraph(&f, 2, &b).unwrap();
        assert_eq!(g.edge_count(), 1);
        let c = g.classical_counterpart(&b).unwrap();
        assert_eq!(c.vertex_count, 3);
        assert_eq!(c.edges, vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(c.to_graph6(), "Bw", "K3 in graph6");
        assert_eq!(c.to_edge_list(), "0 1\n0 2\n1 2\n");
    }

    #[test]
    fn empty_graph_has_empty_counterpart() {
        let f = Field::new(3, 1).unwrap();
        let b = Budget::default();
        let g = constructions::empty_qgraph(&f, 3);
        let c = g.classical_counterpart(&b).unwrap();
        assert_eq!(c.vertex_count, 13);
        assert!(c.edges.is_empty());
    }

    #[test]
    fn polar_counterpart_has_45_edges() {
        let f = Field::new(2, 1).unwrap();
        let b = Budget::default();
        let j = SymplecticStructure::standard(&f, 4).unwrap();
        let g = constructions::symplectic_polar_qgraph(&f, &j, &b).unwrap();
        let c = g.classical_counterpart(&b).unwrap();
        assert_eq!(c.vertex_count, 15);
        assert_eq!(c.edges.len(), 45, "15 edges x C(3, 2)");
    }

    #[test]
    fn partial_linear_space_property_holds() {
        let f = Field::new(2, 1).unwrap();
        let b = Budget::default();
        for g in [
            constructions::complete_qgraph(&f, 4, &b).unwrap(),
            constructions::hexagon_qgraph(&Field::new(2, 1).unwrap(), &b).unwrap(),
        ] {
            assert!(g.partial_linear_space_check());
        }
    }

    #[test]
    fn regularity_is_invariant_under_relabelling() {
        let f = Field::new(2, 1).unwrap();
        let b = Budget::default();
        let j = SymplecticStructure::standard(&f, 4).unwrap();
        let graph = constructions::symplectic_polar_qgraph(&f, &j, &b).unwrap();
        let sp = sp_generators(&f, 4, &j).unwrap();
        let k0 = graph.is_k_regular(&b).unwrap().degree;
        for g in &sp.generators {
            let relabelled: Vec<Subspace> =
                graph.edges().iter().map(|e| g.apply(&f, e)).collect();
            let relabelled = QGraph::new(&f, 4, relabelled).unwrap();
            assert_eq!(relabelled.is_k_regular(&b).unwrap().degree, k0);
        }
    }

    #[test]
    fn graph6_header_for_63_vertices_uses_the_long_form() {
        let g = ClassicalGraph {
            vertex_count: 63,
            edges: vec![(0, 1)],
        };
        let s = g.to_graph6();
        assert!(s.starts_with('~'));
        // 63 = (0, 0, 63) in three 6-bit chars
        assert_eq!(&s[..4], "~??~");
    }
}
