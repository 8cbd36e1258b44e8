//! JSON encodings of core values. Every command wraps its payload in an
//! envelope carrying a versioned `schema` key, e.g. `kauffman.mul/1`.
//!
//! Diagram points are written 1-based; a primed (bottom) point `i'` is `-i`.

use kauffman_core::diagrams::PlanarDiagram;
use kauffman_core::idempotents::{Certificate, Reason};
use kauffman_core::rewrite::{NormalizationTrace, RewriteStep};
use kauffman_core::structure::EggboxView;
use kauffman_core::words::{render_compact, ChiReport, Jnf};
use kauffman_core::KElement;
use serde_json::{json, Value};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

pub fn schema(command: &str) -> String {
    format!("kauffman.{command}/{SCHEMA_VERSION}")
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("missing or malformed field `{0}`")]
    Field(&'static str),
    #[error("point {0} is not a valid diagram point")]
    Point(i64),
    #[error(transparent)]
    Diagram(#[from] kauffman_core::diagrams::DiagramError),
}

fn field<'a>(v: &'a Value, name: &'static str) -> Result<&'a Value, FormatError> {
    v.get(name).ok_or(FormatError::Field(name))
}

fn uint(v: &Value, name: &'static str) -> Result<u64, FormatError> {
    field(v, name)?.as_u64().ok_or(FormatError::Field(name))
}

pub fn diagram_to_json(d: &PlanarDiagram) -> Value {
    let n = d.degree();
    let signed = |p: usize| -> i64 {
        if p > n {
            -((p - n) as i64)
        } else {
            p as i64
        }
    };
    let pairs: Vec<[i64; 2]> = d
        .pairs()
        .into_iter()
        .map(|(a, b)| [signed(a), signed(b)])
        .collect();
    json!({ "n": n, "pairs": pairs })
}

pub fn diagram_from_json(v: &Value) -> Result<PlanarDiagram, FormatError> {
    let n = uint(v, "n")? as usize;
    let raw = field(v, "pairs")?
        .as_array()
        .ok_or(FormatError::Field("pairs"))?;
    let point = |x: &Value| -> Result<usize, FormatError> {
        let p = x.as_i64().ok_or(FormatError::Field("pairs"))?;
        match p {
            1.. if p as usize <= n => Ok(p as usize),
            ..=-1 if p.unsigned_abs() as usize <= n => Ok(n + p.unsigned_abs() as usize),
            _ => Err(FormatError::Point(p)),
        }
    };
    let mut pairs = Vec::with_capacity(raw.len());
    for pair in raw {
        match pair.as_array().map(Vec::as_slice) {
            Some([a, b]) => pairs.push((point(a)?, point(b)?)),
            _ => return Err(FormatError::Field("pairs")),
        }
    }
    Ok(PlanarDiagram::from_pairs(n, &pairs)?)
}

pub fn kelement_to_json(e: &KElement) -> Value {
    json!({ "exp": e.exp, "diagram": diagram_to_json(&e.diagram) })
}

pub fn kelement_from_json(v: &Value) -> Result<KElement, FormatError> {
    Ok(KElement {
        exp: uint(v, "exp")?,
        diagram: diagram_from_json(field(v, "diagram")?)?,
    })
}

pub fn chi_to_json(c: &ChiReport) -> Value {
    json!({ "c_count": c.c_count, "blue": c.blue, "red": c.red, "chi": c.chi })
}

pub fn chi_from_json(v: &Value) -> Result<ChiReport, FormatError> {
    let report = ChiReport::from_counts(
        uint(v, "c_count")? as usize,
        uint(v, "blue")? as usize,
        uint(v, "red")? as usize,
    );
    match field(v, "chi")?.as_i64() {
        Some(chi) if chi == report.chi => Ok(report),
        _ => Err(FormatError::Field("chi")),
    }
}

/// `text` is canonical; `compact` folds singleton runs into inverse blocks.
pub fn jnf_to_json(j: &Jnf) -> Value {
    json!({
        "text": j.to_string(),
        "compact": render_compact(&j.to_word()),
        "ell": j.ell,
        "blocks": j.blocks.iter().map(|&(b, a)| [b, a]).collect::<Vec<_>>(),
    })
}

pub fn jnf_from_json(v: &Value) -> Result<Jnf, FormatError> {
    let blocks = field(v, "blocks")?
        .as_array()
        .ok_or(FormatError::Field("blocks"))?
        .iter()
        .map(|b| match b.as_array().map(Vec::as_slice) {
            Some([b, a]) => match (b.as_u64(), a.as_u64()) {
                (Some(b), Some(a)) => Ok((b as usize, a as usize)),
                _ => Err(FormatError::Field("blocks")),
            },
            _ => Err(FormatError::Field("blocks")),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Jnf {
        ell: uint(v, "ell")? as usize,
        blocks,
    })
}

pub fn step_to_json(s: &RewriteStep) -> Value {
    json!({
        "rule": s.rule,
        "position": s.position,
        "before": s.before.to_string(),
        "after": s.after.to_string(),
        "chi_before": s.chi_before,
        "chi_after": s.chi_after,
    })
}

pub fn trace_to_json(t: &NormalizationTrace) -> Value {
    json!({
        "input": t.input.to_string(),
        "steps": t.steps.iter().map(step_to_json).collect::<Vec<_>>(),
        "output": jnf_to_json(&t.output),
    })
}

pub fn certificate_to_json(c: &Certificate) -> Value {
    json!({
        "text": c.to_string(),
        "generators": c.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "word": c.word().to_string(),
    })
}

pub fn reason_name(r: Reason) -> &'static str {
    match r {
        Reason::Identity => "identity",
        Reason::Member => "member",
        Reason::ChiNegative => "chi_negative",
        Reason::ChiOdd => "chi_odd",
        Reason::PureScalar => "pure_scalar",
    }
}

pub fn eggbox_to_json(v: &EggboxView) -> Value {
    let label = |i: usize, j: usize| format!("h[{i},{j}]");
    json!({
        "class": v.which.to_string(),
        "n": v.n,
        "rows": v.rows,
        "cols": v.cols,
        "cells": v.rows.iter().map(|&i| v.cols.iter().map(|&j| label(i, j)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "idempotent": v.idempotent,
        "idempotent_count": v.idempotent_count(),
    })
}
