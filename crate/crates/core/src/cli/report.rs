//! JSON and text rendering of command results.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{json, Value};

use crate::decomp::{weyl_label, DecompositionCertificate, FlagReport};
use crate::exactla::RatMatrix;
use crate::module::{FormalCharacter, Gen, TruncatedModule};
use crate::rat::Q;
use crate::rootdata::{root_datum, weight_json, CartanType, Weight};
use crate::suite::{summarize, ItemResult};
use crate::tensorblocks::BlockLabel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// `w . lambda` name of an integral weight, with `lambda` dominant integral
/// when the dot orbit has one; otherwise the coordinates.
pub fn dot_name(ty: CartanType, mu: &Weight) -> String {
    match super::dominant_and_word(ty, mu) {
        Ok((lambda, word)) if word.is_empty() => format!("{lambda}"),
        Ok((lambda, word)) => format!("{}.{lambda}", weyl_label(ty, &word)),
        Err(_) => mu.to_string(),
    }
}

fn gen_name(g: Gen) -> String {
    let side = |i: usize| ["a", "b"][i];
    match g {
        Gen::X(i) => format!("x_{}", side(i)),
        Gen::Y(i) => format!("y_{}", side(i)),
    }
}

fn matrix_json(a: &RatMatrix) -> Value {
    let rows: Vec<Vec<String>> = (0..a.rows()).map(|i| (0..a.cols()).map(|j| a.get(i, j).to_string()).collect()).collect();
    json!(rows)
}

pub(super) fn module_json(m: &TruncatedModule, evidence: bool) -> Value {
    let maxv: Vec<Value> =
        m.maximal_vector_table().iter().map(|(o, k)| json!([weight_json(&m.weight_of(o)), k])).collect();
    let mut v = json!({
        "module": m.descriptor(),
        "character": m.character(),
        "maximal_vectors": maxv,
    });
    if evidence {
        let mut acts = Vec::new();
        for g in m.gens() {
            for o in m.support() {
                let Some(a) = m.action(g, &o) else { continue };
                if a.rows() == 0 || a.cols() == 0 {
                    continue;
                }
                acts.push(json!({
                    "generator": gen_name(g),
                    "from": weight_json(&m.weight_of(&o)),
                    "matrix": matrix_json(&a),
                }));
            }
        }
        v.as_object_mut().expect("object").insert("actions".into(), json!(acts));
    }
    v
}

fn root_offset(ty: CartanType, top: &Weight, w: &Weight) -> String {
    let d = root_datum(ty);
    let r = d.to_root_coords(&(w - top));
    let parts: Vec<String> = r.iter().map(Q::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn character_text(out: &mut String, ty: CartanType, top: &Weight, c: &FormalCharacter) {
    let _ = writeln!(out, "  {:<14} {:<14} dim", "weight", "root offset");
    let d = root_datum(ty);
    let mut pairs = c.as_pairs();
    pairs.sort_by(|(a, _), (b, _)| d.height(&(top - a)).cmp(&d.height(&(top - b))).then(b.cmp(a)));
    for (w, k) in &pairs {
        let _ = writeln!(out, "  {:<14} {:<14} {k}", w.to_string(), root_offset(ty, top, w));
    }
}

pub(super) fn module_text(m: &TruncatedModule) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} with highest weight {} over {}, acting {}, depth {}",
        m.kind(),
        dot_name(m.ty(), m.top()),
        m.ty().name(),
        m.acting_tag(),
        m.depth()
    );
    let _ = writeln!(out, "character (total {}):", m.total_dim());
    character_text(&mut out, m.ty(), m.top(), &m.character());
    let _ = writeln!(out, "maximal vectors:");
    for (o, k) in m.maximal_vector_table() {
        let w = m.weight_of(&o);
        let _ = writeln!(out, "  {:<14} {:<16} {k}", w.to_string(), dot_name(m.ty(), &w));
    }
    out
}

pub(super) struct BlockRow {
    pub label: BlockLabel,
    pub character: FormalCharacter,
    pub flag: Option<FlagReport>,
}

pub(super) fn tensor_json(p: &TruncatedModule, rows: &[BlockRow], mechanism: &str, degrees: &[u32]) -> Value {
    let blocks: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "label": r.label,
                "character": r.character,
                "verma_flag": r.flag,
            })
        })
        .collect();
    json!({
        "module": p.descriptor(),
        "character": p.character(),
        "blocks": blocks,
        "mechanism": mechanism,
        "degrees_used": degrees,
    })
}

fn flag_text(ty: CartanType, f: &Option<FlagReport>) -> String {
    match f {
        None => "none on the window".into(),
        Some(f) if f.is_empty() => "{}".into(),
        Some(f) => {
            let parts: Vec<String> = f
                .multiplicities()
                .iter()
                .map(|(w, k)| {
                    let dn = dot_name(ty, w);
                    let name = if dn == w.to_string() { format!("M({w})") } else { format!("M({w} = {dn})") };
                    if *k == 1 {
                        name
                    } else {
                        format!("{k} {name}")
                    }
                })
                .collect();
            format!("{{{}}}", parts.join(", "))
        }
    }
}

pub(super) fn tensor_text(p: &TruncatedModule, rows: &[BlockRow]) -> String {
    let mut out = String::new();
    let ty = p.ty();
    let _ = writeln!(out, "{} over {}, depth {}, total dimension {}", p.construction(), ty.name(), p.depth(), p.total_dim());
    for r in rows {
        let _ = writeln!(out, "block {} linked to {}", r.label, dot_name(ty, &r.label.rep));
        let _ = writeln!(out, "  dimension {}", r.character.total());
        let _ = writeln!(out, "  Verma flag {}", flag_text(ty, &r.flag));
    }
    out
}

pub(super) fn certificate_text(name: &str, c: &DecompositionCertificate) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{name}, acting {}, depth {}: {}", c.acting, c.depth, if c.valid() { "valid" } else { "INVALID" });
    for s in &c.summands {
        let ind = s
            .indecomposability
            .as_ref()
            .map(|e| format!("{:?}, commutant dimension {}, margin {}", e.verdict, e.commutant_dim, e.margin))
            .unwrap_or_else(|| "no indecomposability evidence".into());
        let _ = writeln!(out, "  {:?} {}  dim {}  [{ind}]", s.kind, s.label, s.character.total());
    }
    for ch in &c.checks {
        let mark = if ch.passed { "ok  " } else { "FAIL" };
        let _ = writeln!(out, "  {mark} {}", ch.name);
        if !ch.passed && !ch.detail.is_empty() {
            let _ = writeln!(out, "       {}", ch.detail);
        }
    }
    out
}

pub(super) fn suite_text(results: &[ItemResult]) -> String {
    let mut out = String::new();
    for r in results {
        let mark = if r.outcome.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{mark} {:>8.3}s {}", r.elapsed.as_secs_f64(), r.name);
        if !r.outcome.passed {
            let _ = writeln!(out, "     {}", r.outcome.detail);
        }
    }
    for s in summarize(results) {
        let mark = if s.passed { "PASS" } else { "FAIL" };
        let budget = if s.within_budget { "" } else { " (over time budget)" };
        let _ = writeln!(out, "criterion {} {mark} {:>8.3}s {}{budget}", s.id, s.elapsed.as_secs_f64(), s.title);
    }
    out
}
