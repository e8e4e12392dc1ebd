//! Input documents: groups, fields, modules and formations as JSON.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{Elem, Field, FieldElem, FieldSpec};
use crate::formation::SaturatedFormation;
use crate::groups::{GroupTable, PermGroupSpec, Subgroup, GROUP_CAP};
use crate::linalg::{Mat, Subspace};
use crate::module::RepModule;

fn parse_err(at: impl Into<String>, msg: impl Into<String>) -> Error {
    Error::Parse {
        at: at.into(),
        msg: msg.into(),
    }
}

/// A generator as an image array (0-based) or in cycle notation (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GenInput {
    Images(Vec<usize>),
    Cycles(String),
}

/// Parses `"(1 2 3)(4 5)"` (1-based points) into an image array.
pub fn parse_cycles(s: &str, degree: usize) -> Result<Vec<usize>> {
    let mut img: Vec<usize> = (0..degree).collect();
    let mut seen = vec![false; degree];
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::InvalidPermutation(format!("expected '(' in {s:?}")))?;
        let close = body
            .find(')')
            .ok_or_else(|| Error::InvalidPermutation(format!("unclosed cycle in {s:?}")))?;
        let pts = body[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                let p: usize = t
                    .parse()
                    .map_err(|_| Error::InvalidPermutation(format!("bad point {t:?} in {s:?}")))?;
                if p == 0 || p > degree {
                    return Err(Error::InvalidPermutation(format!("point {p} outside 1..={degree}")));
                }
                Ok(p - 1)
            })
            .collect::<Result<Vec<usize>>>()?;
        for (i, &p) in pts.iter().enumerate() {
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidPermutation(format!("point {} repeated in {s:?}", p + 1)));
            }
            img[p] = pts[(i + 1) % pts.len()];
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(img)
}

/// Cycle notation of an image array, 1-based; `"()"` for the identity.
pub fn format_cycles(img: &[usize]) -> String {
    let mut seen = vec![false; img.len()];
    let mut out = String::new();
    for start in 0..img.len() {
        if seen[start] || img[start] == start {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cyc.push((x + 1).to_string());
            x = img[x];
        }
        out.push('(');
        out.push_str(&cyc.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

impl GenInput {
    pub fn resolve(&self, degree: usize) -> Result<Vec<usize>> {
        match self {
            GenInput::Images(v) => Ok(v.clone()),
            GenInput::Cycles(s) => parse_cycles(s, degree),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInput {
    pub degree: usize,
    pub generators: Vec<GenInput>,
}

/// A group given inline or by the name of a corpus group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupDoc {
    Named(String),
    Perms(GroupInput),
}

impl GroupDoc {
    pub fn spec(&self) -> Result<PermGroupSpec> {
        match self {
            GroupDoc::Named(n) => {
                crate::corpus::group_spec(n).ok_or_else(|| parse_err("group", format!("unknown group name {n:?}")))
            }
            GroupDoc::Perms(g) => {
                let generators = g
                    .generators
                    .iter()
                    .map(|x| x.resolve(g.degree))
                    .collect::<Result<Vec<_>>>()?;
                let spec = PermGroupSpec {
                    degree: g.degree,
                    generators,
                };
                spec.validate()?;
                Ok(spec)
            }
        }
    }

    pub fn build(&self) -> Result<GroupTable> {
        GroupTable::from_perms(&self.spec()?, GROUP_CAP)
    }
}

/// Module action: a named construction or one matrix per generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActionDoc {
    Named(String),
    Matrices(Vec<Vec<Vec<Value>>>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleDoc {
    #[serde(default)]
    pub field: Option<FieldSpec>,
    #[serde(default)]
    pub dim: Option<usize>,
    pub action: ActionDoc,
}

/// A field element: an integer code, or a coefficient array low degree first.
pub fn parse_elem(f: &Field, v: &Value, at: &str) -> Result<Elem> {
    match v {
        Value::Number(n) => {
            let x = n
                .as_u64()
                .filter(|&x| x < f.order() as u64)
                .ok_or_else(|| parse_err(at, format!("{n} is not an element of GF({})", f.order())))?;
            Ok(x as Elem)
        }
        Value::Array(cs) => {
            let coeffs = cs
                .iter()
                .map(|c| {
                    c.as_u64()
                        .map(|c| c as u32)
                        .ok_or_else(|| parse_err(at, "coefficient is not an integer"))
                })
                .collect::<Result<Vec<u32>>>()?;
            f.from_elem(&FieldElem { coeffs })
                .map_err(|e| parse_err(at, e.to_string()))
        }
        _ => Err(parse_err(at, "expected an integer or a coefficient array")),
    }
}

pub fn parse_matrix(f: &Field, rows: &[Vec<Value>], at: &str) -> Result<Mat> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut data = Vec::with_capacity(rows.len() * cols);
    for (i, r) in rows.iter().enumerate() {
        if r.len() != cols {
            return Err(parse_err(
                format!("{at}[{i}]"),
                format!("row has {} entries, expected {cols}", r.len()),
            ));
        }
        for (j, x) in r.iter().enumerate() {
            data.push(parse_elem(f, x, &format!("{at}[{i}][{j}]"))?);
        }
    }
    Mat::from_vec(rows.len(), cols, data)
}

impl ModuleDoc {
    pub fn build(&self, group: Arc<GroupTable>, field: Arc<Field>) -> Result<RepModule> {
        match &self.action {
            ActionDoc::Named(name) => {
                let m = match name.as_str() {
                    "permutation" => RepModule::permutation(group, field)?,
                    "trivial" => RepModule::trivial(group, field, self.dim.unwrap_or(1)),
                    "regular" => RepModule::regular(group, field),
                    other => return Err(parse_err("module.action", format!("unknown action {other:?}"))),
                };
                if let Some(d) = self.dim.filter(|&d| d != m.dim()) {
                    return Err(parse_err(
                        "module.dim",
                        format!("declared {d}, action has dimension {}", m.dim()),
                    ));
                }
                Ok(m)
            }
            ActionDoc::Matrices(ms) => {
                let mats = ms
                    .iter()
                    .enumerate()
                    .map(|(i, m)| parse_matrix(&field, m, &format!("module.action[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                let dim = self.dim.or_else(|| mats.first().map(Mat::rows)).unwrap_or(0);
                RepModule::from_gen_mats_dim(group, field, dim, mats)
            }
        }
    }
}

pub fn parse_formation(v: &Value) -> Result<SaturatedFormation> {
    let obj = v
        .as_object()
        .ok_or_else(|| parse_err("formation", "expected an object"))?;
    if obj.contains_key("local") || obj.contains_key("default") {
        serde_json::from_value(v.clone()).map_err(|e| parse_err("formation", e.to_string()))
    } else {
        let name = obj
            .get("name")
            .and_then(Value::as_str)
            .ok_or_else(|| parse_err("formation", "expected \"name\" or \"local\""))?;
        SaturatedFormation::by_name(name)
    }
}

/// A complete job document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JobDoc {
    pub group: GroupDoc,
    #[serde(default)]
    pub field: Option<FieldSpec>,
    #[serde(default)]
    pub module: Option<ModuleDoc>,
    #[serde(default)]
    pub formation: Option<Value>,
    #[serde(default)]
    pub normal: Option<Vec<GenInput>>,
}

pub fn parse_job(text: &str) -> Result<JobDoc> {
    serde_json::from_str(text).map_err(|e| parse_err(format!("line {} column {}", e.line(), e.column()), e.to_string()))
}

/// Parses `"gen;gen"` where each generator is in cycle notation or a JSON
/// image array.
pub fn parse_gen_list(s: &str, degree: usize) -> Result<Vec<Vec<usize>>> {
    s.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            if t.starts_with('[') {
                serde_json::from_str::<Vec<usize>>(t).map_err(|e| parse_err("--normal", e.to_string()))
            } else {
                parse_cycles(t, degree)
            }
        })
        .collect()
}

/// The subgroup of `g` generated by the given permutations.
pub fn subgroup_from_perms(g: &GroupTable, gens: &[Vec<usize>]) -> Result<Subgroup> {
    let idx = gens
        .iter()
        .map(|p| {
            g.find_perm(p)
                .ok_or_else(|| parse_err("normal", format!("{} is not in the group", format_cycles(p))))
        })
        .collect::<Result<Vec<usize>>>()?;
    Ok(g.subgroup_generated(&idx))
}

/// `--field p=2` or `--field p=2,k=2`.
pub fn parse_field_flag(s: &str) -> Result<FieldSpec> {
    let (mut p, mut k) = (None, 1u32);
    for part in s.split(',') {
        let (key, val) = part
            .split_once('=')
            .ok_or_else(|| parse_err("--field", format!("expected key=value in {part:?}")))?;
        let val: u32 = val
            .trim()
            .parse()
            .map_err(|_| parse_err("--field", format!("bad number {val:?}")))?;
        match key.trim() {
            "p" => p = Some(val),
            "k" => k = val,
            other => return Err(parse_err("--field", format!("unknown key {other:?}"))),
        }
    }
    let p = p.ok_or_else(|| parse_err("--field", "missing p"))?;
    FieldSpec::builtin(p, k)
}

pub fn elem_json(f: &Field, x: Elem) -> Value {
    f.display(x)
}

pub fn mat_json(f: &Field, m: &Mat) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|&x| elem_json(f, x)).collect()))
            .collect(),
    )
}

/// RREF basis rows of a subspace.
pub fn subspace_json(f: &Field, s: &Subspace) -> Value {
    mat_json(f, s.basis())
}
