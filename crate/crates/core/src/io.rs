//! JSON formats for contexts, word literals, weights and matrix families.
//!
//! Context:
//! ```json
//! {"vertices": [{"name": "a", "factor": "Z"},
//!               {"name": "B", "factor": {"artin": {"generators": ["s", "t"], "m": [[1, 3], [3, 1]]}}}],
//!  "edges": [["a", "B"]]}
//! ```
//! Word literal: `[["a", 2], ["B", "sts"], ["B", {"num": "s", "den": "t"}], ["a", -1]]`.

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::factors::{ArtinMonoid, CoxeterMatrix, FactorElement, FactorSpec};
use crate::graph::{CommutationGraph, NormalWord, Syllable, Vertex, VertexId, Word};
use crate::toeplitz::CMatrix;

const PRESETS: &[(&str, &str)] = &[
    ("free2", include_str!("../presets/free2.json")),
    ("path3", include_str!("../presets/path3.json")),
    ("square4", include_str!("../presets/square4.json")),
    ("b3", include_str!("../presets/b3.json")),
    ("b4", include_str!("../presets/b4.json")),
];

pub fn preset_names() -> Vec<&'static str> {
    PRESETS.iter().map(|(n, _)| *n).collect()
}

/// JSON text of a bundled context.
pub fn preset(name: &str) -> Option<&'static str> {
    let name = name.strip_suffix(".json").unwrap_or(name);
    PRESETS.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| parse_err(format!("{what} must be a string")))
}

/// Reads a Coxeter matrix from `{"generators": [...], "m": [[...]]}`.
/// Entries are integers; `null` or `"inf"` stands for ∞.
pub fn parse_artin(value: &Value) -> Result<ArtinMonoid> {
    let obj = value.as_object().ok_or_else(|| parse_err("artin factor must be an object"))?;
    let rows = obj.get("m").and_then(Value::as_array).ok_or_else(|| parse_err("artin factor needs an `m` matrix"))?;
    let entries = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| parse_err("Coxeter matrix rows must be arrays"))?
                .iter()
                .map(|e| match e {
                    Value::Null => Ok(None),
                    Value::String(s) if s == "inf" || s == "∞" => Ok(None),
                    Value::Number(n) => n
                        .as_u64()
                        .and_then(|n| u32::try_from(n).ok())
                        .map(Some)
                        .ok_or_else(|| parse_err(format!("bad Coxeter entry {n}"))),
                    other => Err(parse_err(format!("bad Coxeter entry {other}"))),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let matrix = CoxeterMatrix::new(entries)?;
    match obj.get("generators") {
        Some(g) => {
            let names = g
                .as_array()
                .ok_or_else(|| parse_err("`generators` must be an array"))?
                .iter()
                .map(|n| as_str(n, "generator name").map(str::to_string))
                .collect::<Result<Vec<_>>>()?;
            ArtinMonoid::new(names, matrix)
        }
        None => {
            let names = default_generator_names(matrix.rank());
            ArtinMonoid::new(names, matrix)
        }
    }
}

fn default_generator_names(rank: usize) -> Vec<String> {
    if rank <= 8 {
        ["s", "t", "u", "v", "w", "x", "y", "z"][..rank].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=rank).map(|i| format!("s{i}")).collect()
    }
}

pub fn artin_to_json(m: &ArtinMonoid) -> Value {
    let rows: Vec<Value> = m
        .matrix()
        .entries()
        .iter()
        .map(|row| Value::Array(row.iter().map(|e| e.map_or(Value::Null, |v| json!(v))).collect()))
        .collect();
    json!({"generators": m.generators(), "m": rows})
}

pub fn parse_context(text: &str) -> Result<CommutationGraph> {
    context_from_value(&parse_json(text)?)
}

pub fn context_from_value(value: &Value) -> Result<CommutationGraph> {
    let vertices = value
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("context needs a `vertices` array"))?;
    let mut out = Vec::with_capacity(vertices.len());
    for v in vertices {
        let name = as_str(v.get("name").ok_or_else(|| parse_err("vertex needs a `name`"))?, "vertex name")?;
        let factor = match v.get("factor") {
            None => FactorSpec::Integers,
            Some(Value::String(s)) if s == "Z" => FactorSpec::Integers,
            Some(Value::Object(o)) if o.contains_key("artin") => FactorSpec::artin(parse_artin(&o["artin"])?),
            Some(other) => return Err(parse_err(format!("unknown factor {other} at vertex `{name}`"))),
        };
        out.push(Vertex::new(name, factor));
    }
    let mut edges = Vec::new();
    if let Some(list) = value.get("edges") {
        for e in list.as_array().ok_or_else(|| parse_err("`edges` must be an array"))? {
            let pair = e.as_array().filter(|p| p.len() == 2).ok_or_else(|| parse_err("edge must be a pair"))?;
            let index = |v: &Value| -> Result<VertexId> {
                let n = as_str(v, "edge endpoint")?;
                out.iter().position(|x| x.name == n).ok_or_else(|| Error::UnknownVertex(n.to_string()))
            };
            edges.push((index(&pair[0])?, index(&pair[1])?));
        }
    }
    CommutationGraph::new(out, &edges)
}

pub fn context_to_json(graph: &CommutationGraph) -> Value {
    let vertices: Vec<Value> = graph
        .vertices()
        .iter()
        .map(|v| match &v.factor {
            FactorSpec::Integers => json!({"name": v.name, "factor": "Z"}),
            FactorSpec::Artin(m) => json!({"name": v.name, "factor": {"artin": artin_to_json(m)}}),
        })
        .collect();
    let edges: Vec<Value> = graph.edges().iter().map(|&(a, b)| json!([graph.name(a), graph.name(b)])).collect();
    json!({"vertices": vertices, "edges": edges})
}

fn vertex_of(graph: &CommutationGraph, v: &Value) -> Result<VertexId> {
    let name = as_str(v, "vertex name")?;
    graph.vertex_index(name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
}

fn parse_element(graph: &CommutationGraph, v: VertexId, value: &Value) -> Result<FactorElement> {
    match (graph.factor(v), value) {
        (FactorSpec::Integers, Value::Number(n)) => {
            n.as_i64().map(FactorElement::Int).ok_or_else(|| parse_err(format!("bad exponent {n}")))
        }
        (FactorSpec::Artin(m), Value::String(s)) => Ok(FactorElement::Artin(m.positive(&m.parse_word(s)?))),
        (FactorSpec::Artin(m), Value::Object(o)) => {
            let part = |key: &str| -> Result<_> {
                match o.get(key) {
                    None => Ok(crate::factors::ArtinWord::empty()),
                    Some(w) => m.parse_word(as_str(w, key)?),
                }
            };
            Ok(FactorElement::Artin(m.fraction(&part("num")?, &part("den")?)))
        }
        _ => Err(Error::FactorMismatch(graph.name(v).to_string())),
    }
}

/// Parses a word literal into an expression without reducing it.
/// Syllables that are trivial in their factor are rejected.
pub fn word_from_value(graph: &CommutationGraph, value: &Value) -> Result<Word> {
    let list = value.as_array().ok_or_else(|| parse_err("word literal must be an array of syllables"))?;
    let mut syllables = Vec::with_capacity(list.len());
    for s in list {
        let pair = s.as_array().filter(|p| p.len() == 2).ok_or_else(|| parse_err("syllable must be [vertex, element]"))?;
        let v = vertex_of(graph, &pair[0])?;
        let element = parse_element(graph, v, &pair[1])?;
        if graph.factor(v).is_identity(&element) {
            return Err(Error::TrivialSyllable(graph.name(v).to_string()));
        }
        syllables.push(Syllable::new(v, element));
    }
    Ok(Word::new(syllables))
}

pub fn parse_word_expr(graph: &CommutationGraph, text: &str) -> Result<Word> {
    word_from_value(graph, &parse_json(text)?)
}

/// Parses a word literal and reduces it to its canonical form.
pub fn parse_word(graph: &CommutationGraph, text: &str) -> Result<NormalWord> {
    graph.reduce(&parse_word_expr(graph, text)?)
}

fn element_to_json(graph: &CommutationGraph, v: VertexId, e: &FactorElement) -> Value {
    match (e, graph.factor(v)) {
        (FactorElement::Int(n), _) => json!(n),
        (FactorElement::Artin(f), FactorSpec::Artin(m)) if f.is_positive() => json!(m.render(f.num())),
        (FactorElement::Artin(f), FactorSpec::Artin(m)) => json!({"num": m.render(f.num()), "den": m.render(f.den())}),
        (FactorElement::Artin(_), FactorSpec::Integers) => unreachable!("validated syllable"),
    }
}

pub fn element_json(graph: &CommutationGraph, v: VertexId, e: &FactorElement) -> Value {
    element_to_json(graph, v, e)
}

pub fn word_to_json(graph: &CommutationGraph, x: &NormalWord) -> Value {
    Value::Array(
        x.syllables()
            .iter()
            .map(|s| json!([graph.name(s.vertex), element_to_json(graph, s.vertex, &s.element)]))
            .collect(),
    )
}

/// Weights as `{"a": 0.5, "B.s": 0.5}` keyed by generator (`vertex` for a
/// `ℤ` vertex, `vertex.letter` or a bare letter for an Artin vertex), or
/// as `[[literal, weight], ...]` for arbitrary positives.
pub fn parse_weights(graph: &CommutationGraph, text: &str) -> Result<Vec<(NormalWord, f64)>> {
    let value = parse_json(text)?;
    let weight = |w: &Value| w.as_f64().ok_or_else(|| parse_err(format!("weight {w} is not a number")));
    match &value {
        Value::Object(map) => map.iter().map(|(k, w)| Ok((generator_by_name(graph, k)?, weight(w)?))).collect(),
        Value::Array(list) => list
            .iter()
            .map(|pair| {
                let pair = pair.as_array().filter(|p| p.len() == 2).ok_or_else(|| parse_err("weight entry must be [word, weight]"))?;
                Ok((graph.reduce(&word_from_value(graph, &pair[0])?)?, weight(&pair[1])?))
            })
            .collect(),
        _ => Err(parse_err("weights must be an object or an array")),
    }
}

/// Resolves `a`, `B.s` or (when unambiguous) a bare letter `s` to a cone
/// generator.
pub fn generator_by_name(graph: &CommutationGraph, name: &str) -> Result<NormalWord> {
    if let Some(v) = graph.vertex_index(name) {
        if let FactorSpec::Integers = graph.factor(v) {
            return graph.syllable(v, FactorElement::Int(1));
        }
    }
    if let Some((vname, letter)) = name.split_once('.') {
        let v = graph.vertex_index(vname).ok_or_else(|| Error::UnknownVertex(vname.to_string()))?;
        if let FactorSpec::Artin(m) = graph.factor(v) {
            let s = m.generator_index(letter).ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            return graph.letter(v, s);
        }
    }
    let hits: Vec<(VertexId, u16)> = (0..graph.vertex_count())
        .filter_map(|v| match graph.factor(v) {
            FactorSpec::Artin(m) => m.generator_index(name).map(|s| (v, s)),
            FactorSpec::Integers => None,
        })
        .collect();
    match hits.as_slice() {
        [(v, s)] => graph.letter(*v, *s),
        _ => Err(Error::UnknownGenerator(name.to_string())),
    }
}

fn parse_matrix(value: &Value, dimension: usize, what: &str) -> Result<CMatrix> {
    let rows = value.as_array().ok_or_else(|| parse_err(format!("matrix for `{what}` must be an array of rows")))?;
    if rows.len() != dimension {
        return Err(Error::DimensionMismatch(format!("matrix for `{what}` has {} rows, expected {dimension}", rows.len())));
    }
    let mut m = CMatrix::zeros(dimension, dimension);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().filter(|r| r.len() == dimension).ok_or_else(|| {
            Error::DimensionMismatch(format!("row {i} of `{what}` must have {dimension} entries"))
        })?;
        for (j, e) in row.iter().enumerate() {
            m[(i, j)] = match e {
                Value::Number(n) => Complex64::new(n.as_f64().unwrap_or(f64::NAN), 0.0),
                Value::Array(p) if p.len() == 2 && p.iter().all(Value::is_number) => {
                    Complex64::new(p[0].as_f64().unwrap_or(f64::NAN), p[1].as_f64().unwrap_or(f64::NAN))
                }
                other => return Err(parse_err(format!("bad matrix entry {other} in `{what}`"))),
            };
        }
    }
    Ok(m)
}

/// Reads `{"dimension": d, "vertices": {"a": M, "B": {"s": M, "t": M}}}`
/// into per-vertex generator matrices. Entries are reals or `[re, im]`.
pub fn parse_family(graph: &CommutationGraph, text: &str) -> Result<Vec<Vec<CMatrix>>> {
    let value = parse_json(text)?;
    let dimension = value
        .get("dimension")
        .and_then(Value::as_u64)
        .filter(|&d| d > 0)
        .ok_or_else(|| parse_err("family needs a positive `dimension`"))? as usize;
    let empty = Map::new();
    let vertices = value.get("vertices").and_then(Value::as_object).unwrap_or(&empty);
    for key in vertices.keys() {
        if graph.vertex_index(key).is_none() {
            return Err(Error::UnknownVertex(key.clone()));
        }
    }
    (0..graph.vertex_count())
        .map(|v| {
            let name = graph.name(v);
            let entry = vertices.get(name).ok_or_else(|| parse_err(format!("family has no matrices for `{name}`")))?;
            match graph.factor(v) {
                FactorSpec::Integers => Ok(vec![parse_matrix(entry, dimension, name)?]),
                FactorSpec::Artin(m) => m
                    .generators()
                    .iter()
                    .map(|g| {
                        let label = format!("{name}.{g}");
                        let mat = entry.get(g).ok_or_else(|| parse_err(format!("family has no matrix for `{label}`")))?;
                        parse_matrix(mat, dimension, &label)
                    })
                    .collect(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_parse() {
        for name in preset_names() {
            let g = parse_context(preset(name).unwrap()).unwrap();
            let again = context_from_value(&context_to_json(&g)).unwrap();
            assert_eq!(g, again, "{name}");
        }
    }

    #[test]
    fn context_rejections() {
        let bad = [
            r#"{"vertices":[{"name":"a"}],"edges":[["a","a"]]}"#,
            r#"{"vertices":[{"name":"a"}],"edges":[["a","b"]]}"#,
            r#"{"vertices":[{"name":"v","factor":{"artin":{"m":[[1,null],[null,1]]}}}]}"#,
            r#"{"vertices":[{"name":"v","factor":{"artin":{"m":[[1,3,3],[3,1,3],[3,3,1]]}}}]}"#,
            r#"{"vertices":[{"name":"a","factor":"Q"}]}"#,
            "not json",
        ];
        for text in bad {
            assert!(parse_context(text).is_err(), "{text}");
        }
    }

    #[test]
    fn word_literals_round_trip() {
        let g = parse_context(
            r#"{"vertices":[{"name":"a","factor":"Z"},{"name":"v","factor":{"artin":{"generators":["s","t"],"m":[[1,4],[4,1]]}}}],"edges":[]}"#,
        )
        .unwrap();
        let text = r#"[["a",2],["v","sts"],["v",{"num":"s","den":"t"}],["a",-1]]"#;
        let x = parse_word(&g, text).unwrap();
        let back = word_to_json(&g, &x).to_string();
        assert_eq!(parse_word(&g, &back).unwrap(), x);
        assert_eq!(back, r#"[["a",2],["v",{"den":"t","num":"stss"}],["a",-1]]"#);
        assert_eq!(parse_word(&g, r#"[["a",0]]"#).unwrap_err(), Error::TrivialSyllable("a".into()));
        assert_eq!(parse_word(&g, r#"[["v",""]]"#).unwrap_err(), Error::TrivialSyllable("v".into()));
        assert!(matches!(parse_word(&g, r#"[["a","s"]]"#), Err(Error::FactorMismatch(_))));
        assert!(matches!(parse_word(&g, r#"[["q",1]]"#), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn weights_and_families() {
        let g = parse_context(preset("b3").unwrap()).unwrap();
        let w = parse_weights(&g, r#"{"s":0.5,"B3.t":0.5}"#).unwrap();
        assert_eq!(w.len(), 2);
        assert!(w.iter().all(|(x, _)| x.degree() == 1));
        let fam = parse_family(&g, r#"{"dimension":1,"vertices":{"B3":{"s":[[1]],"t":[[[0,1]]]}}}"#).unwrap();
        assert_eq!(fam[0][1][(0, 0)], Complex64::new(0.0, 1.0));
        assert!(parse_family(&g, r#"{"dimension":2,"vertices":{"B3":{"s":[[1]],"t":[[1]]}}}"#).is_err());
    }
}
