//! JSON encodings. Objects are written with sorted keys and floats with 17
//! significant digits so outputs diff cleanly.

use std::collections::BTreeMap;
use std::io;

use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::{json, Map, Value};

use crate::epmet::{Distance, FiniteEPMet};
use crate::error::{Error, Result};
use crate::fuzzy::{ClassicalFuzzySet, Level, LevelFunction};
use crate::graph::FuzzyGraph;
use crate::realization::{AdjunctionReport, RealizationResult};
use crate::simplicial::{ActionTables, TruncatedSimplicialFuzzySet};

/// `%.17g`-style rendering of a finite float.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let m = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{m}e{sign}{:02}", exp.abs());
    }
    let decimals = (16 - exp).max(0) as usize;
    strip_zeros(&format!("{:.*}", decimals, x)).to_owned()
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

struct Writer<'a> {
    pretty: PrettyFormatter<'a>,
}

impl Formatter for Writer<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        let mut s = format_float(value);
        if !s.contains(['.', 'e']) {
            s.push_str(".0");
        }
        w.write_all(s.as_bytes())
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.pretty.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.pretty.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.end_object_value(w)
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_string(v: &Value) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Writer { pretty: PrettyFormatter::new() });
    serde::Serialize::serialize(v, &mut ser).expect("writing to a Vec cannot fail");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
}

fn bad(what: impl Into<String>) -> Error {
    Error::Json(what.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing key `{key}`")))
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| bad(format!("{what} must be an object")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(format!("{what} must be an array")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| bad(format!("{what} must be a string")))
}

fn as_f64(v: &Value, what: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| bad(format!("{what} must be a number")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| bad(format!("{what} must be a non-negative integer")))
}

fn strings(v: &Value, what: &str) -> Result<Vec<String>> {
    as_array(v, what)?.iter().map(|x| as_str(x, what).map(str::to_owned)).collect()
}

/// Float as a JSON number; integral values are kept as floats.
fn num(x: f64) -> Value {
    Value::from(x)
}

pub fn fuzzy_set_to_json(x: &ClassicalFuzzySet) -> Value {
    let membership: Map<String, Value> = x.iter().map(|(l, m)| (l.to_owned(), num(m))).collect();
    json!({ "elements": x.elements().collect::<Vec<_>>(), "membership": membership })
}

pub fn fuzzy_set_from_json(v: &Value) -> Result<ClassicalFuzzySet> {
    let elements = strings(field(v, "elements")?, "elements")?;
    let membership = as_object(field(v, "membership")?, "membership")?;
    if membership.len() != elements.len() {
        return Err(bad("`membership` and `elements` list different labels"));
    }
    let pairs = elements
        .into_iter()
        .map(|e| {
            let m = membership.get(&e).ok_or_else(|| bad(format!("no membership for `{e}`")))?;
            Ok((e, as_f64(m, "membership")?))
        })
        .collect::<Result<Vec<_>>>()?;
    ClassicalFuzzySet::new(pairs)
}

pub fn level_function_to_json(s: &LevelFunction) -> Value {
    let levels: Vec<Value> = s.levels().iter().map(|l| json!({ "a": num(l.a), "set": l.set })).collect();
    json!({ "levels": levels })
}

pub fn level_function_from_json(v: &Value) -> Result<LevelFunction> {
    let levels = as_array(field(v, "levels")?, "levels")?
        .iter()
        .map(|l| Ok(Level { a: as_f64(field(l, "a")?, "a")?, set: strings(field(l, "set")?, "set")? }))
        .collect::<Result<Vec<_>>>()?;
    LevelFunction::new(levels)
}

fn tables_to_json(t: &ActionTables) -> Value {
    t.iter()
        .map(|((n, k), map)| {
            let inner: Map<String, Value> = map.iter().map(|(a, b)| (a.clone(), Value::from(b.as_str()))).collect();
            (format!("{n},{k}"), Value::Object(inner))
        })
        .collect::<Map<_, _>>()
        .into()
}

fn tables_from_json(v: &Value, what: &str) -> Result<ActionTables> {
    let mut out = ActionTables::new();
    for (key, table) in as_object(v, what)? {
        let parsed = key
            .split_once(',')
            .and_then(|(n, k)| Some((n.trim().parse().ok()?, k.trim().parse().ok()?)))
            .ok_or_else(|| bad(format!("{what} key `{key}` is not `n,i`")))?;
        let map = as_object(table, what)?
            .iter()
            .map(|(a, b)| Ok((a.clone(), as_str(b, what)?.to_owned())))
            .collect::<Result<BTreeMap<_, _>>>()?;
        out.insert(parsed, map);
    }
    Ok(out)
}

pub fn simplicial_to_json(s: &TruncatedSimplicialFuzzySet) -> Value {
    let dims: Vec<Value> = (0..=s.max_dim())
        .map(|n| {
            let elements: Map<String, Value> = s.set(n).iter().map(|(l, m)| (l.to_owned(), num(m))).collect();
            json!({ "n": n, "elements": elements })
        })
        .collect();
    json!({
        "max_dim": s.max_dim(),
        "dims": dims,
        "faces": tables_to_json(&s.face_tables()),
        "degeneracies": tables_to_json(&s.degeneracy_tables()),
    })
}

pub fn simplicial_from_json(v: &Value) -> Result<TruncatedSimplicialFuzzySet> {
    let max_dim = as_usize(field(v, "max_dim")?, "max_dim")?;
    let mut sets: Vec<Option<ClassicalFuzzySet>> = vec![None; max_dim + 1];
    for d in as_array(field(v, "dims")?, "dims")? {
        let n = as_usize(field(d, "n")?, "n")?;
        if n > max_dim {
            return Err(bad(format!("dimension {n} above max_dim {max_dim}")));
        }
        let elements = as_object(field(d, "elements")?, "elements")?
            .iter()
            .map(|(l, m)| Ok((l.clone(), as_f64(m, "membership")?)))
            .collect::<Result<Vec<_>>>()?;
        if sets[n].replace(ClassicalFuzzySet::new(elements)?).is_some() {
            return Err(bad(format!("dimension {n} listed twice")));
        }
    }
    let sets = sets
        .into_iter()
        .enumerate()
        .map(|(n, s)| s.ok_or_else(|| bad(format!("dimension {n} missing"))))
        .collect::<Result<Vec<_>>>()?;
    let faces = match v.get("faces") {
        Some(f) => tables_from_json(f, "faces")?,
        None => ActionTables::new(),
    };
    let degeneracies = match v.get("degeneracies") {
        Some(f) => tables_from_json(f, "degeneracies")?,
        None => ActionTables::new(),
    };
    TruncatedSimplicialFuzzySet::from_tables(max_dim, sets, &faces, &degeneracies)
}

fn distance_to_json(d: Distance) -> Value {
    match d {
        Distance::Finite(x) => num(x),
        Distance::Infinite => Value::from("inf"),
    }
}

fn distance_from_json(v: &Value) -> Result<Distance> {
    match v {
        Value::String(s) if s == "inf" => Ok(Distance::Infinite),
        Value::Number(_) => Ok(Distance::Finite(as_f64(v, "distance")?)),
        _ => Err(bad(format!("distance must be a number or \"inf\", got {v}"))),
    }
}

pub fn epmet_to_json(m: &FiniteEPMet) -> Value {
    let dist: Vec<Value> = m.rows().map(|r| Value::Array(r.iter().map(|&d| distance_to_json(d)).collect())).collect();
    json!({ "points": m.points(), "dist": dist })
}

pub fn epmet_from_json(v: &Value) -> Result<FiniteEPMet> {
    let points = strings(field(v, "points")?, "points")?;
    let dist = as_array(field(v, "dist")?, "dist")?
        .iter()
        .map(|row| as_array(row, "dist row")?.iter().map(distance_from_json).collect())
        .collect::<Result<Vec<Vec<Distance>>>>()?;
    FiniteEPMet::new(points, dist)
}

/// Realized space plus the `"n,s,i" → point` witness table.
pub fn realization_to_json(r: &RealizationResult, s: &TruncatedSimplicialFuzzySet) -> Value {
    let mut v = epmet_to_json(&r.space);
    let witness: Map<String, Value> = r.witness_table(s).into_iter().map(|(k, p)| (k, Value::from(p))).collect();
    v["witness"] = Value::Object(witness);
    v
}

pub fn graph_to_json(g: &FuzzyGraph) -> Value {
    let names = g.vertices();
    let edges: Vec<Value> = g.edges().map(|(u, v, w)| json!({ "u": names[u], "v": names[v], "w": num(w) })).collect();
    json!({ "vertices": names, "edges": edges })
}

pub fn graph_from_json(v: &Value) -> Result<FuzzyGraph> {
    let vertices = strings(field(v, "vertices")?, "vertices")?;
    let index = |x: &Value| -> Result<usize> {
        let l = as_str(x, "edge endpoint")?;
        vertices.iter().position(|v| v == l).ok_or_else(|| Error::UnknownLabel(l.to_owned()))
    };
    let edges = as_array(field(v, "edges")?, "edges")?
        .iter()
        .map(|e| Ok((index(field(e, "u")?)?, index(field(e, "v")?)?, as_f64(field(e, "w")?, "w")?)))
        .collect::<Result<Vec<_>>>()?;
    FuzzyGraph::new(vertices, edges)
}

pub fn adjunction_to_json(r: &AdjunctionReport) -> Value {
    json!({
        "bijection": r.bijection,
        "realization_maps": r.realization_maps,
        "simplicial_maps": r.simplicial_maps,
    })
}

/// Schema of a JSON document, told apart by its top-level keys.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Simplicial,
    EPMet,
    FuzzySet,
    LevelFunction,
    Graph,
}

pub fn detect(v: &Value) -> Result<Kind> {
    let has = |k: &str| v.get(k).is_some();
    if has("max_dim") {
        Ok(Kind::Simplicial)
    } else if has("points") {
        Ok(Kind::EPMet)
    } else if has("elements") {
        Ok(Kind::FuzzySet)
    } else if has("levels") {
        Ok(Kind::LevelFunction)
    } else if has("vertices") {
        Ok(Kind::Graph)
    } else {
        Err(bad("unrecognized document: expected one of max_dim, points, elements, levels, vertices"))
    }
}
