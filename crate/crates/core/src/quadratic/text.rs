//! Text, JSON and LaTeX forms of algebra presentations.
//!
//! Relations are linear combinations of words, e.g. `x*y - 3 y*x` or `2/3 a*b + b*a`.
//! Generator names may contain any characters except whitespace and `+ - * /`.

use super::{word_count, AlgebraPresentation};
use crate::error::{Error, Result};
use crate::linalg::scalar::{display_q, is_negative, one, parse_q};
use crate::linalg::tensor::{flatten, unflatten};
use crate::linalg::{Label, SVec, Subspace, VectorSpace, Q};
use num_traits::{One, Signed};
use serde_json::{json, Value};
use std::collections::BTreeMap;

pub fn label_name(l: &Label) -> String {
    match l {
        Label::Atom(s) => s.clone(),
        Label::Dual(x) => format!("{}'", label_name(x)),
        Label::Tuple(xs) => format!("({})", xs.iter().map(label_name).collect::<Vec<_>>().join(".")),
    }
}

pub fn label_latex(l: &Label) -> String {
    match l {
        Label::Atom(s) => match s.find(|c: char| c.is_ascii_digit()) {
            Some(k) if k > 0 => format!("{}_{{{}}}", &s[..k], &s[k..]),
            _ => s.clone(),
        },
        Label::Dual(x) => format!("{}^{{*}}", label_latex(x)),
        Label::Tuple(xs) => format!("({})", xs.iter().map(label_latex).collect::<Vec<_>>().join(" \\otimes ")),
    }
}

#[derive(Debug, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Num(Q),
    Name(String),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    let special = |c: char| c.is_whitespace() || "+-*/".contains(c);
    while i < cs.len() {
        let c = cs[i];
        match c {
            _ if c.is_whitespace() => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            _ if c.is_ascii_digit() => {
                let start = i;
                while i < cs.len() && (cs[i].is_ascii_digit() || cs[i] == '/') {
                    i += 1;
                }
                let lit: String = cs[start..i].iter().collect();
                out.push(Tok::Num(parse_q(&lit).ok_or_else(|| Error::Parse(format!("bad coefficient {lit}")))?));
            }
            '/' => return Err(Error::Parse("unexpected '/'".into())),
            _ => {
                let start = i;
                while i < cs.len() && !special(cs[i]) {
                    i += 1;
                }
                out.push(Tok::Name(cs[start..i].iter().collect()));
            }
        }
    }
    Ok(out)
}

/// Parses a linear combination of words into `(word, coefficient)` pairs.
pub fn parse_combination(s: &str, names: &[String]) -> Result<Vec<(Vec<usize>, Q)>> {
    let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let toks = tokenize(s)?;
    let mut terms = Vec::new();
    let mut i = 0;
    while i < toks.len() {
        let mut coeff = one();
        let mut signed = false;
        while let Some(t @ (Tok::Plus | Tok::Minus)) = toks.get(i) {
            if *t == Tok::Minus {
                coeff = -coeff;
            }
            signed = true;
            i += 1;
        }
        if !signed && !terms.is_empty() {
            return Err(Error::Parse(format!("missing '+' or '-' between terms in `{s}`")));
        }
        if let Some(Tok::Num(c)) = toks.get(i) {
            coeff *= c;
            i += 1;
            if toks.get(i) == Some(&Tok::Star) {
                i += 1;
            }
        }
        let mut word = Vec::new();
        loop {
            match toks.get(i) {
                Some(Tok::Name(n)) => {
                    word.push(*index.get(n.as_str()).ok_or_else(|| Error::Parse(format!("unknown generator `{n}`")))?);
                    i += 1;
                }
                _ => return Err(Error::Parse(format!("expected a generator in `{s}`"))),
            }
            if toks.get(i) == Some(&Tok::Star) {
                i += 1;
            } else {
                break;
            }
        }
        terms.push((word, coeff));
    }
    if terms.is_empty() {
        return Err(Error::Parse("empty relation".into()));
    }
    Ok(terms)
}

fn combination_vector(d: usize, terms: &[(Vec<usize>, Q)]) -> Result<(usize, SVec)> {
    let n = terms[0].0.len();
    if terms.iter().any(|(w, _)| w.len() != n) {
        return Err(Error::InvalidInput("relation mixes word lengths".into()));
    }
    let dims = vec![d; n];
    Ok((n, SVec::from_pairs(terms.iter().map(|(w, c)| (flatten(&dims, w), c.clone())))))
}

/// Writes a vector of `V^{⊗n}` as a linear combination of words.
pub fn format_combination(v: &SVec, names: &[String], n: usize) -> String {
    format_terms(v, names.len(), n, &|w| w.iter().map(|&i| names[i].clone()).collect::<Vec<_>>().join("*"), " ")
}

fn format_terms(v: &SVec, d: usize, n: usize, word: &dyn Fn(&[usize]) -> String, sep: &str) -> String {
    let dims = vec![d; n];
    let mut out = String::new();
    for (k, (i, c)) in v.entries().iter().enumerate() {
        let neg = is_negative(c);
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        if !a.is_one() {
            out.push_str(&display_q(&a));
            out.push_str(sep);
        }
        out.push_str(&word(&unflatten(&dims, *i)));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl AlgebraPresentation {
    pub fn names(&self) -> Vec<String> {
        self.generators.labels.iter().map(label_name).collect()
    }

    /// `generators: x y`, `degree: 2`, then one `relation: …` line per relation; `#` starts a comment.
    pub fn parse(s: &str) -> Result<AlgebraPresentation> {
        let mut names: Option<Vec<String>> = None;
        let mut degree = None;
        let mut rels = Vec::new();
        for (ln, line) in s.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, val) = line.split_once(':').ok_or_else(|| Error::Parse(format!("line {}: expected `key: value`", ln + 1)))?;
            match key.trim() {
                "generators" => names = Some(val.split_whitespace().map(String::from).collect()),
                "degree" => degree = Some(val.trim().parse::<usize>().map_err(|e| Error::Parse(format!("line {}: {e}", ln + 1)))?),
                "relation" | "relations" => rels.extend(val.split(';').map(|r| r.trim().to_string()).filter(|r| !r.is_empty())),
                k => return Err(Error::Parse(format!("line {}: unknown key `{k}`", ln + 1))),
            }
        }
        let names = names.ok_or_else(|| Error::Parse("missing `generators:` line".into()))?;
        Self::from_parts(names, degree, &rels)
    }

    pub fn from_parts(names: Vec<String>, degree: Option<usize>, relations: &[String]) -> Result<AlgebraPresentation> {
        if names.is_empty() {
            return Err(Error::InvalidInput("no generators".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for n in &names {
            if n.starts_with(|c: char| c.is_ascii_digit()) || n.contains(|c: char| "+-*/".contains(c)) || !seen.insert(n) {
                return Err(Error::InvalidInput(format!("bad or repeated generator name `{n}`")));
            }
        }
        let d = names.len();
        let mut by_degree: BTreeMap<usize, Vec<SVec>> = BTreeMap::new();
        for r in relations {
            let (n, v) = combination_vector(d, &parse_combination(r, &names)?)?;
            by_degree.entry(n).or_default().push(v);
        }
        let degree = degree.or_else(|| by_degree.keys().next().copied()).unwrap_or(2);
        if by_degree.keys().any(|&n| n < degree) {
            return Err(Error::InvalidInput(format!("relation below the generating degree {degree}")));
        }
        let space = VectorSpace::new(names.into_iter().map(Label::Atom).collect());
        let main = Subspace::span(word_count(d, degree), by_degree.remove(&degree).unwrap_or_default());
        let mut out = AlgebraPresentation::new(space, degree, main)?;
        for (n, vs) in by_degree {
            out = out.with_extra(n, Subspace::span(word_count(d, n), vs))?;
        }
        Ok(out)
    }

    pub fn relation_strings(&self) -> Vec<String> {
        let names = self.names();
        let mut out: Vec<String> = self.relations.basis().map(|v| format_combination(v, &names, self.degree)).collect();
        for (n, r) in &self.extra {
            out.extend(r.basis().map(|v| format_combination(v, &names, *n)));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("generators: {}\ndegree: {}\n", self.names().join(" "), self.degree);
        for r in self.relation_strings() {
            s.push_str(&format!("relation: {r}\n"));
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({ "generators": self.names(), "degree": self.degree, "relations": self.relation_strings() })
    }

    pub fn from_json(v: &Value) -> Result<AlgebraPresentation> {
        let names: Vec<String> = serde_json::from_value(v.get("generators").cloned().unwrap_or(Value::Null))?;
        let degree = v.get("degree").and_then(Value::as_u64).map(|d| d as usize);
        let rels: Vec<String> = match v.get("relations") {
            Some(r) => serde_json::from_value(r.clone())?,
            None => Vec::new(),
        };
        Self::from_parts(names, degree, &rels)
    }

    /// One `align*` row per relation.
    pub fn to_latex(&self) -> String {
        let labels = &self.generators.labels;
        let word = |w: &[usize]| w.iter().map(|&i| label_latex(&labels[i])).collect::<Vec<_>>().join(" ");
        let d = self.dim();
        let mut rows: Vec<String> = self.relations.basis().map(|v| format_terms(v, d, self.degree, &word, " ")).collect();
        for (n, r) in &self.extra {
            rows.extend(r.basis().map(|v| format_terms(v, d, *n, &word, " ")));
        }
        let mut s = String::from("\\begin{align*}\n");
        for (k, r) in rows.iter().enumerate() {
            s.push_str(&format!("  {r} &= 0{}\n", if k + 1 < rows.len() { " \\\\" } else { "" }));
        }
        s.push_str("\\end{align*}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::q;
    use crate::quadratic::quantum_plane;

    #[test]
    fn parses_quantum_plane() {
        let a = AlgebraPresentation::parse("generators: x y\ndegree: 2\nrelation: x*y - 3 y*x\n").unwrap();
        assert_eq!(a, quantum_plane(q(3)));
    }

    #[test]
    fn text_and_json_round_trip() {
        let a = quantum_plane(q(5)).dual().unwrap();
        assert_eq!(AlgebraPresentation::parse(&a.to_text()).unwrap().relations, a.relations);
        assert_eq!(AlgebraPresentation::from_json(&a.to_json()).unwrap().relations, a.relations);
        let tensor = a.white_product(&quantum_plane(q(2))).unwrap();
        assert_eq!(AlgebraPresentation::parse(&tensor.to_text()).unwrap().relations, tensor.relations);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(AlgebraPresentation::parse("generators: x y\nrelation: x*z").is_err());
        assert!(AlgebraPresentation::parse("generators: x y\nrelation: x*y y*x").is_err());
        assert!(AlgebraPresentation::parse("degree: 2").is_err());
        assert!(AlgebraPresentation::parse("generators: x y\ndegree: 3\nrelation: x*y").is_err());
    }

    #[test]
    fn fractional_and_higher_degree_relations() {
        let a = AlgebraPresentation::parse("generators: a b\nrelation: a*b + 2/3 b*a\nrelation: a*a*a").unwrap();
        assert_eq!(a.degree, 2);
        assert_eq!(a.extra[&3].dim(), 1);
        assert_eq!(a.hilbert(3), vec![1, 2, 3, 3]);
    }
}
