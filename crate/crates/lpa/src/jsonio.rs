//! JSON serialization for graphs, ideals, and certificates.
//!
//! Emission is canonical: sorted vertex names, bundle order, pretty
//! two-space indentation, trailing newline. Parsing an emitted document
//! and emitting it again reproduces the bytes exactly.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::factor::{CertKind, FactorizationCert};
use crate::field::FieldSpec;
use crate::graph::{AdmissiblePair, Cycle, Graph, Mult, VSet};
use crate::ideal::IdealNF;
use crate::poly::{parse_poly, Poly};
use crate::{Error, Result};

/// Parse "Q" or "Fp:5" into a field description.
pub fn parse_field_spec(s: &str) -> Result<FieldSpec> {
    if s == "Q" {
        return Ok(FieldSpec::Q);
    }
    if let Some(p) = s.strip_prefix("Fp:") {
        let p: u64 = p
            .parse()
            .map_err(|_| Error::Parse(format!("bad field `{s}`: expected Q or Fp:<prime>")))?;
        return FieldSpec::fp(p);
    }
    Err(Error::Parse(format!(
        "bad field `{s}`: expected Q or Fp:<prime>"
    )))
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<EdgeJson>,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    id: Option<String>,
    src: String,
    dst: String,
    mult: MultJson,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum MultJson {
    Finite(u64),
    Word(String),
}

impl MultJson {
    fn to_mult(&self) -> Result<Mult> {
        match self {
            MultJson::Finite(n) => Ok(Mult::Finite(*n)),
            MultJson::Word(w) if w == "omega" => Ok(Mult::Omega),
            MultJson::Word(w) => Err(Error::Parse(format!(
                "bad multiplicity `{w}`: expected a positive integer or \"omega\""
            ))),
        }
    }

    fn of(m: Mult) -> MultJson {
        match m {
            Mult::Finite(n) => MultJson::Finite(n),
            Mult::Omega => MultJson::Word("omega".into()),
        }
    }
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string()) // serde_json reports line and column
}

fn render<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Parse a graph document. Edge ids are optional on input; missing ids
/// are synthesized (`e0`, `e1`, …) in edge order.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let j: GraphJson = serde_json::from_str(text).map_err(parse_err)?;
    let used: std::collections::BTreeSet<&String> =
        j.edges.iter().filter_map(|e| e.id.as_ref()).collect();
    let mut fresh = 0usize;
    let mut bundles = vec![];
    for e in &j.edges {
        let id = match &e.id {
            Some(id) => id.clone(),
            None => loop {
                let cand = format!("e{fresh}");
                fresh += 1;
                if !used.contains(&cand) {
                    break cand;
                }
            },
        };
        bundles.push((id, e.src.clone(), e.dst.clone(), e.mult.to_mult()?));
    }
    Graph::new(j.vertices.clone(), bundles)
}

/// Emit a graph in canonical form (ids always present).
pub fn emit_graph(g: &Graph) -> String {
    let j = GraphJson {
        vertices: g.vertex_names().map(str::to_owned).collect(),
        edges: g
            .bundles()
            .iter()
            .map(|b| EdgeJson {
                id: Some(b.id.clone()),
                src: g.vertex_name(b.src).to_owned(),
                dst: g.vertex_name(b.dst).to_owned(),
                mult: MultJson::of(b.mult),
            })
            .collect(),
    };
    render(&j)
}

#[derive(Serialize, Deserialize)]
struct IdealJson {
    #[serde(rename = "H")]
    h: Vec<String>,
    #[serde(rename = "S", default)]
    s: Vec<String>,
    #[serde(default)]
    cycles: Vec<CyclePartJson>,
    field: String,
}

#[derive(Serialize, Deserialize)]
struct CyclePartJson {
    cycle: Vec<String>,
    poly: String,
}

/// Polynomial text without the field suffix; the field is recorded
/// separately in the document.
fn poly_text(f: &Poly) -> String {
    let s = f.to_string();
    match s.split_once(" mod ") {
        Some((head, _)) => head.to_owned(),
        None => s,
    }
}

fn parse_cycle(g: &Graph, steps: &[String]) -> Result<Cycle> {
    if steps.iter().all(|s| s.contains('#')) && !steps.is_empty() {
        let mut edges = vec![];
        for s in steps {
            let (id, idx) = s.split_once('#').expect("checked");
            let idx: u64 = idx
                .parse()
                .map_err(|_| Error::Parse(format!("bad edge reference `{s}`")))?;
            edges.push((id.to_owned(), idx));
        }
        Cycle::from_edges(g, &edges)
    } else {
        let names: Vec<&str> = steps.iter().map(String::as_str).collect();
        Cycle::from_vertices(g, &names)
    }
}

/// Parse an ideal document against a graph. A field given on the command
/// line must agree with the document's field.
pub fn parse_ideal(
    text: &str,
    graph: &Arc<Graph>,
    field_override: Option<FieldSpec>,
) -> Result<IdealNF> {
    let j: IdealJson = serde_json::from_str(text).map_err(parse_err)?;
    let field = parse_field_spec(&j.field)?;
    if let Some(f) = field_override {
        if f != field {
            return Err(Error::FieldMismatch);
        }
    }
    let h = graph.vset_from_names(j.h.iter().map(String::as_str))?;
    let s = graph.vset_from_names(j.s.iter().map(String::as_str))?;
    let mut parts = vec![];
    for part in &j.cycles {
        let c = parse_cycle(graph, &part.cycle)?;
        let f = parse_poly(&part.poly, Some(field))?;
        parts.push((c, f));
    }
    IdealNF::make(graph.clone(), field, AdmissiblePair::new(h, s), parts)
}

fn ideal_json(i: &IdealNF) -> IdealJson {
    let g = i.graph();
    let (h, s, cycles) = if i.is_whole() {
        (g.all_vertices(), VSet::new(), vec![])
    } else {
        let pair = i.pair();
        let cycles = i
            .cyc()
            .iter()
            .map(|(c, f)| CyclePartJson {
                cycle: c
                    .edges()
                    .iter()
                    .map(|e| format!("{}#{}", e.bundle, e.index))
                    .collect(),
                poly: poly_text(f),
            })
            .collect();
        (pair.h.clone(), pair.s.clone(), cycles)
    };
    IdealJson {
        h: g.names_of(&h),
        s: g.names_of(&s),
        cycles,
        field: i.field().to_string(),
    }
}

/// Emit an ideal's normal form in canonical JSON (cycles as edge lists).
pub fn emit_ideal(i: &IdealNF) -> String {
    render(&ideal_json(i))
}

/// Emit a factorization certificate.
pub fn emit_cert(cert: &FactorizationCert) -> String {
    let v = json!({
        "target": serde_json::to_value(ideal_json(&cert.target)).expect("serializable"),
        "kind": match cert.kind { CertKind::Prime => "prime", CertKind::Semiprime => "semiprime" },
        "factors": cert
            .factors
            .iter()
            .map(|f| serde_json::to_value(ideal_json(f)).expect("serializable"))
            .collect::<Vec<_>>(),
        "verified": cert.verified,
    });
    render(&v)
}
