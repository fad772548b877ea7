//! Serialised report documents. JSON is the canonical machine format; the
//! table renderers are derived from the same data. Field order is fixed by
//! the struct definitions and no hash-ordered container feeds the output, so
//! identical inputs produce byte-identical documents.

use serde::Serialize;

use crate::field::Field;
use crate::qgraph::{ClassicalGraph, QGraph, TransitivityCheck, VerificationOutcome};
use crate::scan::{CrosscheckReport, ScanReport, SpreadPartitionRow};
use crate::semilinear::GroupSpec;
use crate::subspace::Subspace;

pub const SCHEMA_VERSION: u32 = 1;

pub fn tool_version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

/// Field serialisation: enough to reproduce the arithmetic bit-exactly.
#[derive(Clone, Debug, Serialize)]
pub struct FieldJson {
    pub p: u32,
    pub t: u32,
    pub modulus: Vec<u32>,
}

impl From<&Field> for FieldJson {
    fn from(f: &Field) -> FieldJson {
        FieldJson {
            p: f.characteristic(),
            t: f.degree(),
            modulus: f.modulus().to_vec(),
        }
    }
}

/// Subspaces serialise as row lists of integer-encoded field elements.
pub fn subspace_rows(s: &Subspace) -> Vec<Vec<u32>> {
    s.rows()
        .map(|r| r.iter().map(|e| e.0).collect())
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorJson {
    pub matrix: Vec<Vec<u32>>,
    pub frobenius: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupJson {
    pub name: String,
    pub generators: Vec<GeneratorJson>,
}

impl From<&GroupSpec> for GroupJson {
    fn from(g: &GroupSpec) -> GroupJson {
        GroupJson {
            name: g.name.clone(),
            generators: g
                .generators
                .iter()
                .map(|gen| GeneratorJson {
                    matrix: gen
                        .matrix
                        .iter()
                        .map(|row| row.iter().map(|e| e.0).collect())
                        .collect(),
                    frobenius: gen.frobenius,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QGraphDocument {
    pub schema_version: u32,
    pub tool_version: String,
    pub config: String,
    pub field: FieldJson,
    pub n: usize,
    pub edge_count: usize,
    pub edges: Vec<Vec<Vec<u32>>>,
}

impl QGraphDocument {
    pub fn from_graph(graph: &QGraph, config: impl Into<String>) -> QGraphDocument {
        QGraphDocument {
            schema_version: SCHEMA_VERSION,
            tool_version: tool_version().to_string(),
            config: config.into(),
            field: graph.field().into(),
            n: graph.ambient(),
            edge_count: graph.edge_count(),
            edges: graph.edges().iter().map(subspace_rows).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct TransitivityJson {
    pub holds: bool,
    pub orbit_size: u64,
    pub total: u64,
}

impl From<TransitivityCheck> for TransitivityJson {
    fn from(t: TransitivityCheck) -> TransitivityJson {
        TransitivityJson {
            holds: t.transitive,
            orbit_size: t.orbit_size,
            total: t.total,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyDocument {
    pub schema_version: u32,
    pub tool_version: String,
    pub config: String,
    pub field: FieldJson,
    pub n: usize,
    pub group: GroupJson,
    pub edge_count: usize,
    pub regular: Option<u64>,
    pub regularity_witness: Option<Vec<Vec<u32>>>,
    pub vertex_transitive: TransitivityJson,
    pub edge_transitive: TransitivityJson,
    pub flag_transitive: TransitivityJson,
    pub symmetric: TransitivityJson,
}

impl VerifyDocument {
    pub fn new(
        graph: &QGraph,
        group: &GroupSpec,
        outcome: &VerificationOutcome,
        config: impl Into<String>,
    ) -> VerifyDocument {
        VerifyDocument {
            schema_version: SCHEMA_VERSION,
            tool_version: tool_version().to_string(),
            config: config.into(),
            field: graph.field().into(),
            n: graph.ambient(),
            group: group.into(),
            edge_count: graph.edge_count(),
            regular: outcome.regularity.degree.map(|k| k as u64),
            regularity_witness: outcome.regularity.witness.as_ref().map(subspace_rows),
            vertex_transitive: outcome.vertex.into(),
            edge_transitive: outcome.edge.into(),
            flag_transitive: outcome.flag.into(),
            symmetric: outcome.symmetric.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitJson {
    pub size: u64,
    pub representative: Vec<Vec<u32>>,
    pub regular: Option<u64>,
    pub flag_transitive: Option<bool>,
    pub symmetric: Option<bool>,
    pub label: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanDocument {
    pub schema_version: u32,
    pub tool_version: String,
    pub config: String,
    pub field: FieldJson,
    pub n: usize,
    pub group_name: String,
    pub vertex_transitive: bool,
    pub vacuous: bool,
    pub total_two_subspaces: u64,
    pub orbits: Vec<OrbitJson>,
}

impl ScanDocument {
    pub fn from_report(report: &ScanReport, config: impl Into<String>) -> ScanDocument {
        ScanDocument {
            schema_version: SCHEMA_VERSION,
            tool_version: tool_version().to_string(),
            config: config.into(),
            field: (&report.field).into(),
            n: report.n,
            group_name: report.group_name.clone(),
            vertex_transitive: report.vertex_transitive,
            vacuous: report.vacuous,
            total_two_subspaces: report.total_two_subspaces,
            orbits: report
                .orbits
                .iter()
                .map(|o| OrbitJson {
                    size: o.size,
                    representative: subspace_rows(&o.representative),
                    regular: o.regular.map(|k| k as u64),
                    flag_transitive: o.flag_transitive,
                    symmetric: o.symmetric,
                    label: o.label.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckDocument {
    pub schema_version: u32,
    pub tool_version: String,
    pub config: String,
    pub novel_rows: u64,
    pub spread_partition_rows: Vec<SpreadPartitionRow>,
    pub scans: Vec<ScanDocument>,
}

impl CrosscheckDocument {
    pub fn from_report(report: &CrosscheckReport, config: impl Into<String>) -> CrosscheckDocument {
        CrosscheckDocument {
            schema_version: SCHEMA_VERSION,
            tool_version: tool_version().to_string(),
            config: config.into(),
            novel_rows: report.novel_rows,
            spread_partition_rows: report.spread_partition_rows.clone(),
            scans: report
                .scans
                .iter()
                .map(|(name, scan)| ScanDocument::from_report(scan, name.clone()))
                .collect(),
        }
    }
}

pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialisation");
    s.push('\n');
    s
}

/// graph6 or edge-list export of the classical counterpart.
pub fn classical_export(graph: &ClassicalGraph, graph6: bool) -> String {
    if graph6 {
        let mut s = graph.to_graph6();
        s.push('\n');
        s
    } else {
        graph.to_edge_list()
    }
}

// ---- human-readable tables, derived from the JSON documents ----

pub fn verify_table(doc: &VerifyDocument) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "graph GF({}^{})^{}  edges={}  group={}\n",
        doc.field.p, doc.field.t, doc.n, doc.edge_count, doc.group.name
    ));
    out.push_str(&format!(
        "regular: {}\n",
        doc.regular
            .map_or("no".to_string(), |k| format!("yes, k = {k}"))
    ));
    for (name, t) in [
        ("vertex-transitive", &doc.vertex_transitive),
        ("edge-transitive", &doc.edge_transitive),
        ("flag-transitive", &doc.flag_transitive),
        ("symmetric", &doc.symmetric),
    ] {
        out.push_str(&format!(
            "{name}: {} (orbit {} of {})\n",
            if t.holds { "yes" } else { "no" },
            t.orbit_size,
            t.total
        ));
    }
    out
}

pub fn scan_table(doc: &ScanDocument) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "scan of {} on GF({}^{})^{}  ({} two-subspaces{})\n",
        doc.group_name,
        doc.field.p,
        doc.field.t,
        doc.n,
        doc.total_two_subspaces,
        if doc.vacuous {
            ", vacuous: group is not vertex-transitive"
        } else {
            ""
        }
    ));
    out.push_str(&format!(
        "{:>10}  {:>8}  {:>6}  {:>10}  {}\n",
        "size", "regular", "flag", "symmetric", "label"
    ));
    for o in &doc.orbits {
        let fmt_opt = |v: Option<bool>| match v {
            Some(true) => "yes",
            Some(false) => "no",
            None => "-",
        };
        out.push_str(&format!(
            "{:>10}  {:>8}  {:>6}  {:>10}  {}\n",
            o.size,
            o.regular.map_or("-".to_string(), |k| k.to_string()),
            fmt_opt(o.flag_transitive),
            fmt_opt(o.symmetric),
            o.label
        ));
    }
    out
}

pub fn crosscheck_table(doc: &CrosscheckDocument) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "classification cross-check: {} scans, {} NOVEL rows\n",
        doc.scans.len(),
        doc.novel_rows
    ));
    for row in &doc.spread_partition_rows {
        out.push_str(&format!(
            "spread-partition: {} on GF({})^{}  flag-transitive={} symmetric={}\n",
            row.group, row.q, row.n, row.flag_transitive, row.symmetric
        ));
    }
    for scan in &doc.scans {
        out.push('\n');
        out.push_str(&scan_table(scan));
    }
    out
}
