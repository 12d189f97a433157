//! JSON and LaTeX renderings of subspaces, dimension tables and polynomial conditions.

use opcohom::labeling::Signature;
use opcohom::linalg::scalar::{display_q, format_q, is_negative};
use opcohom::linalg::{Subspace, Q};
use opcohom::palg::op_end::Polynomial;
use serde_json::{json, Value};
use std::collections::BTreeMap;

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

pub fn subspace_json(s: &Subspace) -> Value {
    let n = s.ambient();
    json!({
        "ambient": n,
        "dim": s.dim(),
        "basis": s.basis().map(|v| v.to_dense(n).iter().map(format_q).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn signature_key(s: &Signature) -> String {
    format!("g{}_o{}_i{}", s.genus, s.outputs, s.inputs)
}

pub fn dims_json(dims: &BTreeMap<Signature, Vec<usize>>) -> Value {
    Value::Array(dims.iter().map(|(s, w)| json!({ "signature": s, "by_weight": w, "total": w.iter().sum::<usize>() })).collect())
}

fn latex_q(x: &Q) -> String {
    if x.is_integer() {
        display_q(x)
    } else {
        format!("\\tfrac{{{}}}{{{}}}", x.numer(), x.denom())
    }
}

/// One `e_i`-combination per basis vector, grouped by signature, inside `align*`.
pub fn subspaces_latex(title: &str, spaces: &BTreeMap<Signature, Subspace>) -> String {
    let mut rows = Vec::new();
    for (s, sub) in spaces {
        for v in sub.basis() {
            let mut terms = String::new();
            for (k, (i, c)) in v.entries().iter().enumerate() {
                let neg = is_negative(c);
                let mag = if neg { -c.clone() } else { c.clone() };
                let coef = if mag == Q::from_integer(1.into()) { String::new() } else { latex_q(&mag) };
                let sign = match (k, neg) {
                    (0, true) => "-",
                    (0, false) => "",
                    (_, true) => " - ",
                    (_, false) => " + ",
                };
                terms.push_str(&format!("{sign}{coef}e_{{{i}}}"));
            }
            rows.push(format!("  \\text{{{}}}\\colon\\ & {terms} = 0", signature_key(s).replace('_', "\\_")));
        }
    }
    let mut out = format!("% {title}\n\\begin{{align*}}\n");
    out.push_str(&rows.join(" \\\\\n"));
    if !rows.is_empty() {
        out.push('\n');
    }
    out.push_str("\\end{align*}\n");
    out
}

/// `2 c0^2 c1 - c3`, monomials in descending exponent order.
pub fn polynomial_text(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (e, c)) in p.terms.iter().rev().enumerate() {
        let neg = is_negative(c);
        let mag = if neg { -c.clone() } else { c.clone() };
        let mono: Vec<String> = e.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, &x)| if x == 1 { format!("c{i}") } else { format!("c{i}^{x}") }).collect();
        let coef = if mag == Q::from_integer(1.into()) && !mono.is_empty() { String::new() } else { display_q(&mag) };
        let sep = if coef.is_empty() || mono.is_empty() { "" } else { " " };
        let sign = match (k, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        out.push_str(&format!("{sign}{coef}{sep}{}", mono.join(" ")));
    }
    out
}
