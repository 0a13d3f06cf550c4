//! Model files: strict parsing, validation with named checks, and export.
//!
//! ```json
//! {"version": "hypercal/1", "kind": "lie_model", "name": "h3", "dim": 3,
//!  "brackets": [{"i": 0, "j": 1, "k": 2, "c": 1}]}
//! ```
//!
//! `lie_model` may add `structure` (`{"I", "J", "K"}`) and `metric`;
//! `affine_model` adds `I`, `rho` and `t`; `double_model` is a `lie_model`
//! with `split` and `projection`.

use std::path::Path;

use hypercal_core::affine::{validate_affine, AffineComplexModel};
use hypercal_core::builtin::{builtin, Builtin};
use hypercal_core::double::{build_double, DoubleModel};
use hypercal_core::lie::{ce_differential, nijenhuis, LieModel};
use hypercal_core::metric::HyperhermitianMetric;
use hypercal_core::quaternionic::QuaternionicStructure;
use hypercal_core::{Frame, FrameEndomorphism, FrameRef, Gaussian, Matrix, Scalar};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::json::{matrix_from_json, matrix_to_json, scalar_from_json, scalar_to_json};
use crate::report::{witness, Check, ModelId, VERSION};

#[derive(Clone, Debug, PartialEq)]
pub enum Model {
    Lie(LieModel),
    Affine(AffineComplexModel),
    Double(DoubleModel),
}

impl Model {
    pub fn kind(&self) -> &'static str {
        match self {
            Model::Lie(_) => "lie_model",
            Model::Affine(_) => "affine_model",
            Model::Double(_) => "double_model",
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Model::Lie(m) => m.name(),
            Model::Affine(a) => a.name(),
            Model::Double(d) => d.model.name(),
        }
    }

    /// The Lie model carrying forms: the model itself, the base of an
    /// affine model, or the double.
    pub fn algebra(&self) -> &LieModel {
        match self {
            Model::Lie(m) => m,
            Model::Affine(a) => &a.base,
            Model::Double(d) => &d.model,
        }
    }

    /// The Lie model with a quaternionic structure, if any.
    pub fn hypercomplex(&self) -> Option<&LieModel> {
        match self {
            Model::Affine(_) => None,
            Model::Lie(m) | Model::Double(DoubleModel { model: m, .. }) => m.structure().map(|_| m),
        }
    }
}

impl From<Builtin> for Model {
    fn from(b: Builtin) -> Self {
        match b {
            Builtin::Lie(m) => Model::Lie(m),
            Builtin::Affine(a) => Model::Affine(a),
            Builtin::Double(d) => Model::Double(d),
        }
    }
}

/// A loaded model with the checks run while building it. When a check
/// fails, `model` is `None` and the last check carries the witness.
pub struct Loaded {
    pub model: Option<Model>,
    pub checks: Vec<Check>,
    pub id: ModelId,
}

const COMMON: &[&str] = &["version", "kind", "name", "dim", "labels", "brackets", "nilpotent", "lattice"];

fn allowed(kind: &str) -> Option<Vec<&'static str>> {
    let extra: &[&str] = match kind {
        "lie_model" => &["structure", "metric"],
        "affine_model" => &["I", "rho", "t"],
        "double_model" => &["structure", "metric", "split", "projection"],
        _ => return None,
    };
    Some(COMMON.iter().chain(extra).copied().collect())
}

struct Raw {
    kind: String,
    name: String,
    frame: FrameRef,
    brackets: Vec<(usize, usize, usize, Gaussian)>,
    nilpotent: Option<bool>,
    lattice: bool,
    structure: Option<[Matrix<Gaussian>; 3]>,
    metric: Option<Matrix<Gaussian>>,
    i_base: Option<Matrix<Gaussian>>,
    rho: Option<Vec<Matrix<Gaussian>>>,
    t: Option<Matrix<Gaussian>>,
    split: Option<(Vec<usize>, Vec<usize>)>,
    projection: Option<Matrix<Gaussian>>,
}

fn object<'a>(v: &'a Value, at: &str, keys: &[&str]) -> Result<&'a Map<String, Value>, CliError> {
    let map = v.as_object().ok_or_else(|| CliError::schema(at, "expected an object"))?;
    if let Some(key) = map.keys().find(|k| !keys.contains(&k.as_str())) {
        return Err(CliError::schema(at, format!("unknown key {key:?}")));
    }
    Ok(map)
}

fn index(v: &Value, at: &str, dim: usize) -> Result<usize, CliError> {
    let i = v.as_u64().ok_or_else(|| CliError::schema(at, "expected a non-negative integer"))? as usize;
    if i >= dim {
        return Err(CliError::schema(at, format!("index {i} out of range for dimension {dim}")));
    }
    Ok(i)
}

fn square(v: &Value, at: &str, dim: usize) -> Result<Matrix<Gaussian>, CliError> {
    let m = matrix_from_json(v, at)?;
    if m.rows() != dim || m.cols() != dim {
        return Err(CliError::schema(at, format!("expected a {dim}x{dim} matrix")));
    }
    Ok(m)
}

fn boolean(map: &Map<String, Value>, key: &str) -> Result<Option<bool>, CliError> {
    map.get(key).map(|v| v.as_bool().ok_or_else(|| CliError::schema(key, "expected a boolean"))).transpose()
}

fn index_list(v: &Value, at: &str, dim: usize) -> Result<Vec<usize>, CliError> {
    v.as_array().ok_or_else(|| CliError::schema(at, "expected a list"))?.iter().map(|x| index(x, at, dim)).collect()
}

fn parse(v: &Value) -> Result<Raw, CliError> {
    let top = v.as_object().ok_or_else(|| CliError::schema("$", "expected an object"))?;
    match top.get("version").and_then(Value::as_str) {
        Some(VERSION) => {}
        _ => return Err(CliError::schema("version", format!("expected {VERSION:?}"))),
    }
    let kind = top.get("kind").and_then(Value::as_str).ok_or_else(|| CliError::schema("kind", "missing"))?;
    let keys = allowed(kind).ok_or_else(|| CliError::schema("kind", format!("unknown kind {kind:?}")))?;
    let map = object(v, "$", &keys)?;
    let dim = map.get("dim").and_then(Value::as_u64).ok_or_else(|| CliError::schema("dim", "expected an integer"))? as usize;
    let frame = match map.get("labels") {
        Some(l) => {
            let labels = l
                .as_array()
                .and_then(|a| a.iter().map(|s| s.as_str().map(String::from)).collect::<Option<Vec<_>>>())
                .ok_or_else(|| CliError::schema("labels", "expected a list of strings"))?;
            if labels.len() != dim {
                return Err(CliError::schema("labels", "length differs from dim"));
            }
            Frame::new(labels)
        }
        None => Frame::numbered(dim),
    }
    .map_err(|e| CliError::schema("dim", e))?;
    let name = match map.get("name") {
        Some(n) => n.as_str().ok_or_else(|| CliError::schema("name", "expected a string"))?.to_string(),
        None => "model".to_string(),
    };
    let mut brackets = Vec::new();
    let list = map.get("brackets").ok_or_else(|| CliError::schema("brackets", "missing"))?;
    for (n, entry) in list.as_array().ok_or_else(|| CliError::schema("brackets", "expected a list"))?.iter().enumerate() {
        let at = format!("brackets[{n}]");
        let e = object(entry, &at, &["i", "j", "k", "c"])?;
        let get = |k: &str| e.get(k).ok_or_else(|| CliError::schema(&at, format!("missing {k:?}")));
        let (i, j, k) = (index(get("i")?, &at, dim)?, index(get("j")?, &at, dim)?, index(get("k")?, &at, dim)?);
        if i >= j {
            return Err(CliError::schema(&at, format!("requires i < j, found i = {i}, j = {j}")));
        }
        brackets.push((i, j, k, scalar_from_json(get("c")?, &at)?));
    }
    let structure = match map.get("structure") {
        Some(s) => {
            let o = object(s, "structure", &["I", "J", "K"])?;
            let get = |k: &str| {
                o.get(k)
                    .ok_or_else(|| CliError::schema("structure", format!("missing {k:?}")))
                    .and_then(|m| square(m, &format!("structure.{k}"), dim))
            };
            Some([get("I")?, get("J")?, get("K")?])
        }
        None => None,
    };
    let metric = map.get("metric").map(|m| square(m, "metric", dim)).transpose()?;
    let i_base = map.get("I").map(|m| square(m, "I", dim)).transpose()?;
    let t = map.get("t").map(|m| square(m, "t", dim)).transpose()?;
    let rho = match map.get("rho") {
        Some(r) => {
            let list = r.as_array().ok_or_else(|| CliError::schema("rho", "expected a list of matrices"))?;
            if list.len() != dim {
                return Err(CliError::schema("rho", format!("expected {dim} matrices")));
            }
            Some(list.iter().enumerate().map(|(n, m)| square(m, &format!("rho[{n}]"), dim)).collect::<Result<_, _>>()?)
        }
        None => None,
    };
    let split = match map.get("split") {
        Some(s) => {
            let o = object(s, "split", &["horizontal", "vertical"])?;
            let get = |k: &str| {
                o.get(k)
                    .ok_or_else(|| CliError::schema("split", format!("missing {k:?}")))
                    .and_then(|l| index_list(l, &format!("split.{k}"), dim))
            };
            Some((get("horizontal")?, get("vertical")?))
        }
        None => None,
    };
    let projection = map.get("projection").map(|m| matrix_from_json(m, "projection")).transpose()?;
    let raw = Raw {
        kind: kind.to_string(),
        name,
        frame,
        brackets,
        nilpotent: boolean(map, "nilpotent")?,
        lattice: boolean(map, "lattice")?.unwrap_or(false),
        structure,
        metric,
        i_base,
        rho,
        t,
        split,
        projection,
    };
    match raw.kind.as_str() {
        "affine_model" if raw.i_base.is_none() || raw.rho.is_none() || raw.t.is_none() => {
            Err(CliError::schema("$", "affine_model requires \"I\", \"rho\" and \"t\""))
        }
        "double_model" if raw.structure.is_none() || raw.split.is_none() => {
            Err(CliError::schema("$", "double_model requires \"structure\" and \"split\""))
        }
        _ => Ok(raw),
    }
}

/// Runs named checks in order, stopping at the first failure.
struct Checker {
    checks: Vec<Check>,
}

impl Checker {
    fn step<T>(&mut self, name: &str, r: hypercal_core::Result<T>) -> Option<T> {
        match r {
            Ok(v) => {
                self.checks.push(Check::pass(name));
                Some(v)
            }
            Err(e) => {
                self.checks.push(Check::fail(name, witness(&e)));
                None
            }
        }
    }
}

fn build_lie(raw: &Raw, c: &mut Checker) -> Option<LieModel> {
    let mut m = c.step("jacobi", LieModel::new(raw.name.clone(), &raw.frame, raw.brackets.clone()))?;
    c.step("d_squared", ce_differential(&m))?;
    if let Some(declared) = raw.nilpotent {
        c.step("nilpotency", m.check_nilpotent(declared))?;
    }
    m = m.with_lattice(raw.lattice);
    if let Some([i, j, k]) = &raw.structure {
        let f = &raw.frame;
        let q = c.step(
            "quaternionic",
            (|| {
                QuaternionicStructure::new(
                    FrameEndomorphism::new(f, i.clone())?,
                    FrameEndomorphism::new(f, j.clone())?,
                    FrameEndomorphism::new(f, k.clone())?,
                )
            })(),
        )?;
        for (name, l) in ["I", "J", "K"].into_iter().zip(q.triple()) {
            let r = nijenhuis(&m, l, name).and_then(|r| match r.witness {
                None => Ok(()),
                Some((i, j)) => Err(hypercal_core::Error::NotIntegrable { structure: name, i, j }),
            });
            c.step(&format!("nijenhuis_{name}"), r)?;
        }
        m = m.with_structure(q).expect("same frame");
        if let Some(g) = &raw.metric {
            let q = m.structure().expect("just attached");
            let g = c.step("metric", HyperhermitianMetric::new(q, g.clone()))?;
            m = m.with_metric(g).expect("validated");
        }
    } else if raw.metric.is_some() {
        c.step::<()>("metric", Err(hypercal_core::Error::MissingStructure))?;
    }
    Some(m)
}

/// Recovers `(g, ρ, I)` from a double written with `t = Id` and rebuilds it.
fn rebuild_double(raw: &Raw, m: &LieModel) -> hypercal_core::Result<DoubleModel> {
    use hypercal_core::Error;
    let dim = raw.frame.dim();
    let d = dim / 2;
    let (h, v) = raw.split.as_ref().expect("checked in parse");
    if !dim.is_multiple_of(4) || *h != (0..d).collect::<Vec<_>>() || *v != (d..dim).collect::<Vec<_>>() {
        return Err(Error::InvalidSplit);
    }
    if let Some(p) = &raw.projection {
        let expected = Matrix::from_fn(d, dim, |r, c| if r == c { Gaussian::one() } else { Gaussian::zero() });
        if *p != expected {
            return Err(Error::InvalidSplit);
        }
    }
    let base_frame = Frame::new(raw.frame.labels()[..d].to_vec())?;
    let mut base = Vec::new();
    let mut rho = vec![Matrix::zeros(d, d); d];
    for (i, j, k, c) in m.entries() {
        match (i < d, j < d, k < d) {
            (true, true, true) => base.push((i, j, k, c)),
            (true, false, false) => rho[i].set(k - d, j - d, c),
            _ => return Err(Error::DoubleInvariant("brackets have the semidirect layout")),
        }
    }
    let q = m.structure().ok_or(Error::MissingStructure)?;
    let i_base = q.i().matrix().submatrix(d, dim, d, dim);
    let base_name = raw.name.strip_suffix("_double").map_or_else(|| format!("{}_base", raw.name), String::from);
    let lie = LieModel::new(base_name, &base_frame, base)?;
    let a = AffineComplexModel::new(lie, FrameEndomorphism::new(&base_frame, i_base)?, rho, Matrix::identity(d), raw.lattice);
    let mut rebuilt = build_double(&a)?;
    let same_structure = rebuilt.structure().triple().iter().zip(q.triple()).all(|(a, b)| a.matrix() == b.matrix());
    if rebuilt.model.entries() != m.entries() || !same_structure {
        return Err(Error::DoubleInvariant("file matches the rebuilt double"));
    }
    rebuilt.model = m.clone();
    Ok(rebuilt)
}

fn build(raw: &Raw) -> (Option<Model>, Vec<Check>) {
    let mut c = Checker { checks: Vec::new() };
    let model = match raw.kind.as_str() {
        "lie_model" => build_lie(raw, &mut c).map(Model::Lie),
        "affine_model" => build_lie(raw, &mut c).and_then(|base| {
            // the flag lives on the affine model, not on its base algebra
            let base = base.with_lattice(false);
            let a = AffineComplexModel::new(
                base.clone(),
                FrameEndomorphism::new(base.frame(), raw.i_base.clone().expect("parsed")).expect("square"),
                raw.rho.clone().expect("parsed"),
                raw.t.clone().expect("parsed"),
                raw.lattice,
            );
            c.step("affine", validate_affine(&a)).map(|_| Model::Affine(a))
        }),
        _ => build_lie(raw, &mut c).and_then(|m| c.step("double_rebuild", rebuild_double(raw, &m)).map(Model::Double)),
    };
    (model, c.checks)
}

/// Checks that a model from the catalog satisfies, for reports.
fn builtin_checks(m: &Model) -> Vec<Check> {
    let raw = parse(&export(m)).expect("exports parse");
    build(&raw).1
}

fn lie_fields(m: &LieModel, kind: &str) -> Map<String, Value> {
    let brackets: Vec<Value> = m
        .entries()
        .iter()
        .map(|(i, j, k, c)| json!({"i": i, "j": j, "k": k, "c": scalar_to_json(c)}))
        .collect();
    let mut map = Map::new();
    map.insert("version".into(), json!(VERSION));
    map.insert("kind".into(), json!(kind));
    map.insert("name".into(), json!(m.name()));
    map.insert("dim".into(), json!(m.dim()));
    map.insert("labels".into(), json!(m.frame().labels()));
    map.insert("brackets".into(), Value::Array(brackets));
    map.insert("nilpotent".into(), json!(m.is_nilpotent()));
    map.insert("lattice".into(), json!(m.lattice()));
    if let Some(q) = m.structure() {
        let [i, j, k] = q.triple().map(|l| matrix_to_json(l.matrix()));
        map.insert("structure".into(), json!({"I": i, "J": j, "K": k}));
    }
    if let Some(g) = m.metric() {
        map.insert("metric".into(), matrix_to_json(g.matrix()));
    }
    map
}

/// The canonical model document.
pub fn export(m: &Model) -> Value {
    let map = match m {
        Model::Lie(l) => lie_fields(l, "lie_model"),
        Model::Affine(a) => {
            let mut map = lie_fields(&a.base, "affine_model");
            map.insert("lattice".into(), json!(a.lattice));
            map.insert("I".into(), matrix_to_json(a.i_base.matrix()));
            map.insert("rho".into(), Value::Array(a.rho.iter().map(matrix_to_json).collect()));
            map.insert("t".into(), matrix_to_json(&a.t));
            map
        }
        Model::Double(d) => {
            let mut map = lie_fields(&d.model, "double_model");
            map.insert("split".into(), json!({"horizontal": d.horizontal().collect::<Vec<_>>(), "vertical": d.vertical().collect::<Vec<_>>()}));
            map.insert("projection".into(), matrix_to_json(&d.projection));
            map
        }
    };
    Value::Object(map)
}

fn sha256(v: &Value) -> String {
    hex::encode(Sha256::digest(serde_json::to_vec(v).expect("serializable")))
}

/// Parses a document and builds the model, recording checks.
pub fn load_value(v: &Value) -> Result<Loaded, CliError> {
    let raw = parse(v)?;
    let (model, checks) = build(&raw);
    let id = ModelId { name: raw.name.clone(), kind: raw.kind.clone(), sha256: sha256(&model.as_ref().map_or_else(|| v.clone(), export)) };
    Ok(Loaded { model, checks, id })
}

/// A path to a model file, or a builtin name when no such file exists.
pub fn load(source: &str) -> Result<Loaded, CliError> {
    let path = Path::new(source);
    if let (false, Ok(b)) = (path.exists(), builtin(source)) {
        let model = Model::from(b);
        let doc = export(&model);
        let checks = builtin_checks(&model);
        let id = ModelId { name: source.to_string(), kind: model.kind().to_string(), sha256: sha256(&doc) };
        return Ok(Loaded { model: Some(model), checks, id });
    }
    let bytes = std::fs::read(path).map_err(|e| CliError::Io { path: source.into(), message: e.to_string() })?;
    let v: Value = serde_json::from_slice(&bytes).map_err(|e| CliError::schema("$", e))?;
    load_value(&v)
}

/// Metric documents: `{"version", "kind": "metric", "metric": [[...]]}`.
pub fn load_metric(path: &str, dim: usize) -> Result<Matrix<Gaussian>, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Io { path: path.into(), message: e.to_string() })?;
    let v: Value = serde_json::from_slice(&bytes).map_err(|e| CliError::schema("$", e))?;
    let map = object(&v, "$", &["version", "kind", "metric"])?;
    if map.get("version").and_then(Value::as_str) != Some(VERSION) || map.get("kind").and_then(Value::as_str) != Some("metric") {
        return Err(CliError::schema("$", format!("expected version {VERSION:?} and kind \"metric\"")));
    }
    square(map.get("metric").ok_or_else(|| CliError::schema("metric", "missing"))?, "metric", dim)
}
