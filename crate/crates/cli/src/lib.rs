//! Graph documents, DOT rendering and report formatting behind the
//! `wedge-crystal` binary.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use wedge_crystal::bicrystal::{quotient_graph, sigma};
use wedge_crystal::crystal::{v_kl, v_spin};
use wedge_crystal::theorems::h_diamond;
use wedge_crystal::{AffineType, CrystalGraph, CrystalOps, DecompositionReport, Error, KacLabel, Result};

/// Edge colors by node index `i`, cycled for `i >= 12`.
pub const PALETTE: [&str; 12] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#999999", "#1b9e77", "#d95f02",
    "#7570b3", "#e7298a",
];

pub fn color_of(i: usize) -> &'static str {
    PALETTE[i % PALETTE.len()]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphHeader {
    #[serde(rename = "type")]
    pub affine_type: String,
    pub kac_label: String,
    pub n: usize,
    pub k: usize,
    pub l: Option<usize>,
    pub quotiented: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphVertex {
    pub id: u64,
    pub element: String,
    pub weight: Vec<i64>,
    /// `[eps, phi]` of the row crystal; matrix crystals only.
    pub sigma: Option<[i64; 2]>,
    /// The other member of the orbit in a quotient graph.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partner: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub src: u64,
    pub dst: u64,
    pub color: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub header: GraphHeader,
    pub vertices: Vec<GraphVertex>,
    pub edges: Vec<GraphEdge>,
}

/// The `l` attached to `k` when the index set has exactly one choice.
pub fn default_l(t: &AffineType, k: usize) -> Result<usize> {
    let ls: Vec<usize> = h_diamond(t)?.into_iter().filter(|p| p.0 == k).map(|p| p.1).collect();
    match ls.as_slice() {
        [l] => Ok(*l),
        [] => Err(Error::InvalidParameters(format!("no representative with k={k}"))),
        _ => Err(Error::InvalidParameters(format!("k={k} needs --l, one of {ls:?}"))),
    }
}

/// Component of `v_{k,l}` (or of `v_k` for spin types), optionally divided by
/// the involution `varsigma`.
pub fn graph_document(t: &AffineType, k: usize, l: Option<usize>, quotient: bool) -> Result<GraphDocument> {
    let ops = CrystalOps::new(*t);
    let n = t.n;
    let mut header = GraphHeader {
        affine_type: t.label.cli_name().to_string(),
        kac_label: t.label.kac_name().to_string(),
        n,
        k,
        l: None,
        quotiented: quotient,
    };
    let start = if t.is_matrix() {
        let l = match l {
            Some(l) => l,
            None if quotient => n.checked_sub(k).ok_or_else(|| Error::InvalidParameters(format!("k={k} > n")))?,
            None => default_l(t, k)?,
        };
        if !h_diamond(t)?.contains(&(k, l)) {
            return Err(Error::InvalidParameters(format!("(k,l)=({k},{l}) is not a representative index")));
        }
        header.l = Some(l);
        v_kl(n, k, l)?.id()
    } else {
        if l.is_some() {
            return Err(Error::InvalidParameters("spin types take no --l".into()));
        }
        if quotient {
            return Err(Error::WrongType(format!("--quotient needs A2odd, got {t}")));
        }
        if t.label != KacLabel::D1 && k != n {
            return Err(Error::InvalidParameters(format!("spin representative for {t} has k=n")));
        }
        v_spin(n, k)?.bits() as u64
    };
    let g = CrystalGraph::from_ids(&ops, &ops.component_ids(start));
    let sigma_of = |id: u64| {
        let m = ops.element(id).as_matrix()?;
        let s = sigma(&m);
        Some([s.eps, s.phi])
    };
    if !quotient {
        let vertices = g
            .vertices
            .iter()
            .zip(&g.weights)
            .map(|(v, w)| GraphVertex {
                id: v.id(),
                element: v.text(),
                weight: w.0.clone(),
                sigma: sigma_of(v.id()),
                partner: None,
            })
            .collect();
        let edges = g.edges.iter().map(|&(src, dst, color)| GraphEdge { src, dst, color }).collect();
        return Ok(GraphDocument { header, vertices, edges });
    }
    if header.l != Some(n - k) {
        return Err(Error::InvalidParameters("--quotient uses l = n-k".into()));
    }
    let q = quotient_graph(&g, k)?;
    let vertices = q
        .orbits
        .iter()
        .zip(&q.weights)
        .map(|((a, b), w)| GraphVertex {
            id: a.id(),
            element: a.text(),
            weight: w.0.clone(),
            sigma: sigma_of(a.id()),
            partner: Some(b.text()),
        })
        .collect();
    let edges = q.edges.iter().map(|&(src, dst, color)| GraphEdge { src, dst, color }).collect();
    Ok(GraphDocument { header, vertices, edges })
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn graph_name(h: &GraphHeader) -> String {
    let mut s = format!("{}_n{}_k{}", h.affine_type, h.n, h.k);
    if let Some(l) = h.l {
        let _ = write!(s, "_l{l}");
    }
    if h.quotiented {
        s.push_str("_quotient");
    }
    s
}

/// DOT text: boxes labelled by element text, edges labelled and colored by
/// `i`.
pub fn to_dot(doc: &GraphDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", graph_name(&doc.header));
    let _ = writeln!(out, "  label=\"{} n={}\";", dot_escape(&doc.header.kac_label), doc.header.n);
    out.push_str("  node [shape=box, fontname=\"monospace\"];\n");
    for v in &doc.vertices {
        let label = match &v.partner {
            Some(p) => format!("{} | {}", v.element, p),
            None => v.element.clone(),
        };
        let _ = writeln!(out, "  v{} [label=\"{}\"];", v.id, dot_escape(&label));
    }
    for e in &doc.edges {
        let c = color_of(e.color);
        let _ = writeln!(out, "  v{} -> v{} [label=\"{}\", color=\"{c}\", fontcolor=\"{c}\"];", e.src, e.dst, e.color);
    }
    out.push_str("}\n");
    out
}

pub fn to_json(doc: &GraphDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("graph documents serialize");
    s.push('\n');
    s
}

fn weight_text(w: &[i64]) -> String {
    let parts: Vec<String> = w.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

/// Plain-text table, one row per component.
pub fn decomposition_table(d: &DecompositionReport) -> String {
    let mut rows: Vec<[String; 5]> = vec![[
        "representative".into(),
        "element".into(),
        "size".into(),
        "weight".into(),
        "classical highest weights (size)".into(),
    ]];
    for c in &d.components {
        let branching: Vec<String> =
            c.branching.iter().map(|b| format!("{}[{}]", weight_text(&b.weight.0), b.size)).collect();
        rows.push([
            c.representative.clone(),
            c.element.clone(),
            c.size.to_string(),
            weight_text(&c.weight.0),
            branching.join(" "),
        ]);
    }
    let widths: Vec<usize> = (0..5).map(|j| rows.iter().map(|r| r[j].chars().count()).max().unwrap_or(0)).collect();
    let mut out = format!("{} ({}), n = {}, {} elements\n", d.kac_label, d.affine_type, d.n, d.ground_size);
    for (idx, r) in rows.iter().enumerate() {
        let cells: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
        if idx == 0 {
            let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
            out.push_str(&rule.join("  "));
            out.push('\n');
        }
    }
    for c in &d.components {
        if let Some((p, m)) = c.plus_minus {
            let _ = writeln!(out, "{}: phi split {p} + {m}", c.representative);
        }
    }
    if !d.unmatched.is_empty() {
        let _ = writeln!(out, "{} components without a representative", d.unmatched.len());
    }
    out
}
