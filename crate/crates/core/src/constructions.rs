//! Constructors for every q-graph family handled by the library: complete
//! and empty graphs, Desarguesian spreads with their partition, interior and
//! complement graphs, symplectic polar spaces, the symplectic generalised
//! hexagon, and field reduction of a graph over an extension field.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::field::{ExtensionEmbedding, Field, FieldElement};
use crate::octonion;
use crate::qgraph::QGraph;
use crate::semilinear::SymplecticStructure;
use crate::subspace::{
    enumerate_subspaces, for_each_subspace, gaussian_binomial, subspace_key, vector_index,
    Subspace,
};
use crate::Budget;

/// A t-spread: a set of t-subspaces covering every nonzero vector exactly
/// once. The partition property is verified at construction.
#[derive(Clone, Debug)]
pub struct Spread {
    pub field: Field,
    pub n: usize,
    pub t: usize,
    pub elements: Vec<Subspace>,
}

/// The complete q-graph: every 2-subspace is an edge.
pub fn complete_qgraph(field: &Field, n: usize, budget: &Budget) -> Result<QGraph> {
    let edges = enumerate_subspaces(field, n, 2, budget)?;
    QGraph::new(field, n, edges)
}

/// The empty q-graph.
pub fn empty_qgraph(field: &Field, n: usize) -> QGraph {
    QGraph::new(field, n, Vec::new()).expect("empty edge set is valid")
}

/// The Desarguesian t-spread of F_q^n: the orbits of the subfield
/// GF(q^t)^x on the nonzero vectors of E = GF(q^n), each together with
/// zero, written in the canonical basis of E over F_q. Every blown-up
/// GF(q^t)-linear group and the full one-dimensional semilinear group on E
/// stabilise this spread, because both respect the subfield lattice of E.
pub fn desarguesian_spread(field: &Field, n: usize, t: usize, budget: &Budget) -> Result<Spread> {
    if t == 0 || !n.is_multiple_of(t) {
        return Err(Error::InvalidParameter(format!(
            "spread dimension {t} must divide the ambient dimension {n}"
        )));
    }
    let emb = ExtensionEmbedding::new(field, n as u32)?;
    let e_field = emb.ext().clone();
    let qn = e_field.order() as u64;
    let count = (qn - 1) / ((field.order() as u64).pow(t as u32) - 1);
    if count > budget.max_enumeration as u64 {
        return Err(Error::BudgetExceeded {
            count: count as u128,
            budget: budget.max_enumeration as u128,
        });
    }
    // F-basis of the subfield K = GF(q^t) inside E: powers of the K-generator
    let step = (qn - 1) / ((field.order() as u64).pow(t as u32) - 1);
    let k_basis: Vec<FieldElement> = (0..t)
        .map(|j| e_field.pow(e_field.omega(), step * j as u64))
        .collect();
    let mut covered = vec![false; qn as usize];
    let mut elements = Vec::with_capacity(count as usize);
    for x in 1..qn {
        if covered[x as usize] {
            continue;
        }
        let xe = FieldElement(x as u32);
        let rows: Vec<Vec<FieldElement>> = k_basis
            .iter()
            .map(|&k| emb.forward(e_field.mul(k, xe)))
            .collect();
        let element = Subspace::span(field, n, &rows)?;
        if element.dim() != t {
            return Err(Error::InvariantViolation(
                "spread element has the wrong dimension".into(),
            ));
        }
        // mark the whole K-line through x as covered
        for v in element.vectors(field) {
            let back = emb.inverse(&v);
            covered[back.0 as usize] = true;
        }
        elements.push(element);
    }
    elements.sort();
    let spread = Spread {
        field: field.clone(),
        n,
        t,
        elements,
    };
    verify_partition(&spread)?;
    Ok(spread)
}

fn verify_partition(spread: &Spread) -> Result<()> {
    let field = &spread.field;
    let qn = (field.order() as u64).pow(spread.n as u32) as usize;
    let mut covered = vec![false; qn];
    let mut count = 0u64;
    for s in &spread.elements {
        for v in s.vectors(field) {
            if v.iter().all(|e| e.is_zero()) {
                continue;
            }
            let idx = vector_index(field, &v);
            if covered[idx] {
                return Err(Error::InvariantViolation(
                    "spread elements overlap on a nonzero vector".into(),
                ));
            }
            covered[idx] = true;
            count += 1;
        }
    }
    if count != qn as u64 - 1 {
        return Err(Error::InvariantViolation(
            "spread does not cover every nonzero vector".into(),
        ));
    }
    Ok(())
}

/// Edge set = the spread itself (t must be 2); a 1-regular graph.
pub fn spread_partition_qgraph(spread: &Spread) -> Result<QGraph> {
    if spread.t != 2 {
        return Err(Error::InvalidParameter(format!(
            "partition graph needs a 2-spread, got t = {}",
            spread.t
        )));
    }
    QGraph::new(&spread.field, spread.n, spread.elements.clone())
}

/// Edge set = all 2-subspaces contained in some spread element; equivalently
/// the 2-spaces meeting exactly one element nontrivially. (t - 1)-regular
/// with N(X) the element containing X.
pub fn spread_interior_qgraph(spread: &Spread) -> Result<QGraph> {
    if spread.t < 2 {
        return Err(Error::InvalidParameter(
            "interior graph needs spread elements of dimension at least 2".into(),
        ));
    }
    let mut edges = Vec::new();
    for s in &spread.elements {
        edges.extend(s.two_subspaces(&spread.field));
    }
    QGraph::new(&spread.field, spread.n, edges)
}

/// Edge set = the 2-subspaces meeting at least two spread elements, i.e. the
/// complement of the interior edges.
pub fn spread_complement_qgraph(spread: &Spread, budget: &Budget) -> Result<QGraph> {
    let interior: HashSet<u128> = spread_interior_qgraph(spread)?
        .edges()
        .iter()
        .map(|e| subspace_key(&spread.field, e))
        .collect();
    let all = enumerate_subspaces(&spread.field, spread.n, 2, budget)?;
    let edges = all
        .into_iter()
        .filter(|e| !interior.contains(&subspace_key(&spread.field, e)))
        .collect();
    QGraph::new(&spread.field, spread.n, edges)
}

/// Edge set = the totally isotropic 2-subspaces of the form.
pub fn symplectic_polar_qgraph(
    field: &Field,
    j: &SymplecticStructure,
    budget: &Budget,
) -> Result<QGraph> {
    let n = j.dim();
    let count = gaussian_binomial(n as u32, 2, field.order() as u64);
    if count > budget.max_enumeration as u128 {
        return Err(Error::BudgetExceeded {
            count,
            budget: budget.max_enumeration as u128,
        });
    }
    let mut edges = Vec::new();
    for_each_subspace(field, n, 2, |s| {
        if j.is_isotropic_edge(&s) {
            edges.push(s);
        }
    });
    QGraph::new(field, n, edges)
}

/// The symplectic generalised hexagon over GF(2^b).
pub fn hexagon_qgraph(field: &Field, budget: &Budget) -> Result<QGraph> {
    let edges = octonion::hexagon_edges(field, budget)?;
    QGraph::new(field, 6, edges)
}

/// Base-field coordinates of a K-vector under the canonical tower
/// identification K^a = E = F^{ab}.
pub fn reduce_vector(emb: &ExtensionEmbedding, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let k_to_e = ExtensionEmbedding::new(emb.ext(), v.len() as u32)?;
    let f_to_e = ExtensionEmbedding::new(emb.base(), (emb.degree() * v.len()) as u32)?;
    Ok(f_to_e.forward(k_to_e.inverse(v)))
}

/// Field reduction: vertices become all F-1-subspaces of the reduced space,
/// edges the F-2-subspaces contained in some K-edge of the input graph.
/// Coordinates go through the same canonical tower as
/// [`crate::semilinear::field_reduction_map`], so blown-up groups act on the
/// reduced graph.
pub fn field_reduce_qgraph(graph: &QGraph, emb: &ExtensionEmbedding) -> Result<QGraph> {
    if graph.field() != emb.ext() {
        return Err(Error::InvalidParameter(
            "graph is not defined over the extension field of the embedding".into(),
        ));
    }
    let base = emb.base().clone();
    let k = emb.ext().clone();
    let b = emb.degree();
    let a = graph.ambient();
    let n = a * b;
    let k_to_e = ExtensionEmbedding::new(&k, a as u32)?;
    let f_to_e = ExtensionEmbedding::new(&base, n as u32)?;
    let mut seen: HashSet<u128> = HashSet::new();
    let mut edges: Vec<Subspace> = Vec::new();
    for kedge in graph.edges() {
        // the K-edge as an F-subspace of dimension 2b
        let mut rows = Vec::with_capacity(2 * b);
        for krow in kedge.rows() {
            for j in 0..b {
                let theta_j = k.pow(k.omega(), j as u64);
                let scaled: Vec<FieldElement> =
                    krow.iter().map(|&c| k.mul(theta_j, c)).collect();
                rows.push(f_to_e.forward(k_to_e.inverse(&scaled)));
            }
        }
        let blown = Subspace::span(&base, n, &rows)?;
        debug_assert_eq!(blown.dim(), 2 * b);
        for sub in blown.two_subspaces(&base) {
            if seen.insert(subspace_key(&base, &sub)) {
                edges.push(sub);
            }
        }
    }
    QGraph::new(&base, n, edges)
}
