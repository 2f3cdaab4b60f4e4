//! JSON encodings. Indices are 1-based, rationals are strings in lowest
//! terms (`"3"`, `"-1/2"`), tensors are sparse maps `{"i,j": {"k": c}}`
//! with zero entries omitted, and linear maps are lists of images of the
//! source basis vectors. Output is canonical: object keys are sorted.
//!
//! Decoding errors are [`Error::Parse`] and name the offending field.

use serde_json::{json, Map, Value};

use crate::algebra::Algebra;
use crate::error::Error;
use crate::exactlin::{format_rational, parse_rational, Matrix, Rational, Tensor3, Vector};
use crate::extending::ExtendingDatum;
use crate::flag::{FlagDatum, SolutionFamily};
use crate::products::{Bimodule, CrossedSystem, MatchedPair};
use crate::report::{CheckReport, ConditionResult, Witness};

fn err(path: &str, msg: impl std::fmt::Display) -> Error {
    let at = if path.is_empty() { "document" } else { path };
    Error::Parse(format!("{at}: {msg}"))
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

/// Parses text into a JSON value, reporting line and column on failure.
pub fn parse_document(text: &str) -> Result<Value, Error> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
}

/// Pretty-printed canonical form with a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn rat(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn vec_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

fn get<'a>(obj: &'a Value, key: &str, path: &str) -> Result<&'a Value, Error> {
    obj.as_object()
        .ok_or_else(|| err(path, "expected an object"))?
        .get(key)
        .ok_or_else(|| err(&join(path, key), "missing field"))
}

fn read_rational(v: &Value, path: &str) -> Result<Rational, Error> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|_| err(path, format!("bad rational {s:?}"))),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().expect("checked").into())),
        _ => Err(err(path, "expected a rational such as \"-3/4\"")),
    }
}

fn read_usize(v: &Value, path: &str) -> Result<usize, Error> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| err(path, "expected a nonnegative integer"))
}

fn read_vector(v: &Value, len: usize, path: &str) -> Result<Vector, Error> {
    let arr = v.as_array().ok_or_else(|| err(path, "expected an array"))?;
    if arr.len() != len {
        return Err(err(path, format!("expected {len} entries, found {}", arr.len())));
    }
    arr.iter()
        .enumerate()
        .map(|(i, x)| read_rational(x, &format!("{path}[{i}]")))
        .collect()
}

fn read_index(s: &str, bound: usize, path: &str) -> Result<usize, Error> {
    let i: usize = s.trim().parse().map_err(|_| err(path, format!("bad index {s:?}")))?;
    if i == 0 || i > bound {
        return Err(err(path, format!("index {i} outside 1..={bound}")));
    }
    Ok(i - 1)
}

pub fn tensor_to_json(t: &Tensor3) -> Value {
    let mut out = Map::new();
    for ((i, j, k), c) in t.nonzero_entries() {
        let slot = out
            .entry(format!("{},{}", i + 1, j + 1))
            .or_insert_with(|| Value::Object(Map::new()));
        slot.as_object_mut()
            .expect("slot is an object")
            .insert((k + 1).to_string(), rat(c));
    }
    Value::Object(out)
}

pub fn tensor_from_json(v: &Value, dims: (usize, usize, usize), path: &str) -> Result<Tensor3, Error> {
    let obj = v.as_object().ok_or_else(|| err(path, "expected an object"))?;
    let mut t = Tensor3::zeros(dims.0, dims.1, dims.2);
    for (key, slot) in obj {
        let here = join(path, &format!("\"{key}\""));
        let (a, b) = key
            .split_once(',')
            .ok_or_else(|| err(&here, "key must look like \"i,j\""))?;
        let i = read_index(a, dims.0, &here)?;
        let j = read_index(b, dims.1, &here)?;
        let entries = slot.as_object().ok_or_else(|| err(&here, "expected an object"))?;
        for (kk, c) in entries {
            let there = join(&here, kk);
            let k = read_index(kk, dims.2, &there)?;
            t.set(i, j, k, read_rational(c, &there)?);
        }
    }
    Ok(t)
}

/// A linear map as the list of images of the source basis vectors.
pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(m.to_images().iter().map(|v| vec_json(v)).collect())
}

/// Reads a list of `source_dim` images, each of length `target_dim`.
pub fn matrix_from_json(v: &Value, target_dim: usize, source_dim: usize, path: &str) -> Result<Matrix, Error> {
    let arr = v.as_array().ok_or_else(|| err(path, "expected an array of images"))?;
    if arr.len() != source_dim {
        return Err(err(path, format!("expected {source_dim} images, found {}", arr.len())));
    }
    let images: Vec<Vector> = arr
        .iter()
        .enumerate()
        .map(|(i, x)| read_vector(x, target_dim, &format!("{path}[{i}]")))
        .collect::<Result<_, _>>()?;
    Matrix::from_images(&images, target_dim)
}

pub fn algebra_to_json(a: &Algebra) -> Value {
    let mut out = Map::new();
    out.insert("dim".into(), json!(a.dim()));
    if let Some(names) = a.names() {
        out.insert("names".into(), json!(names));
    }
    out.insert("products".into(), tensor_to_json(a.mult()));
    Value::Object(out)
}

pub fn algebra_from_json(v: &Value, path: &str) -> Result<Algebra, Error> {
    let n = read_usize(get(v, "dim", path)?, &join(path, "dim"))?;
    let products = match v.get("products") {
        Some(p) => tensor_from_json(p, (n, n, n), &join(path, "products"))?,
        None => Tensor3::zeros(n, n, n),
    };
    let mut a = Algebra::new(products)?;
    if let Some(names) = v.get("names") {
        let here = join(path, "names");
        let arr = names.as_array().ok_or_else(|| err(&here, "expected an array"))?;
        let names: Vec<String> = arr
            .iter()
            .enumerate()
            .map(|(i, x)| {
                x.as_str()
                    .map(String::from)
                    .ok_or_else(|| err(&format!("{here}[{i}]"), "expected a string"))
            })
            .collect::<Result<_, _>>()?;
        a = a
            .with_names(names)
            .map_err(|_| err(&here, "one name per basis vector"))?;
    }
    Ok(a)
}

pub fn datum_to_json(d: &ExtendingDatum) -> Value {
    json!({
        "base": algebra_to_json(&d.base),
        "dimV": d.dim_v,
        "actL": tensor_to_json(&d.act_left),
        "actR": tensor_to_json(&d.act_right),
        "projL": tensor_to_json(&d.proj_left),
        "projR": tensor_to_json(&d.proj_right),
        "omega": tensor_to_json(&d.omega),
        "star": tensor_to_json(&d.star),
    })
}

/// Missing tensors are zero.
fn optional_tensor(v: &Value, key: &str, dims: (usize, usize, usize), path: &str) -> Result<Tensor3, Error> {
    match v.get(key) {
        Some(t) => tensor_from_json(t, dims, &join(path, key)),
        None => Ok(Tensor3::zeros(dims.0, dims.1, dims.2)),
    }
}

pub fn datum_from_json(v: &Value) -> Result<ExtendingDatum, Error> {
    let base = algebra_from_json(get(v, "base", "")?, "base")?;
    let m = read_usize(get(v, "dimV", "")?, "dimV")?;
    let n = base.dim();
    Ok(ExtendingDatum {
        act_left: optional_tensor(v, "actL", (m, n, m), "")?,
        act_right: optional_tensor(v, "actR", (n, m, m), "")?,
        proj_left: optional_tensor(v, "projL", (n, m, n), "")?,
        proj_right: optional_tensor(v, "projR", (m, n, n), "")?,
        omega: optional_tensor(v, "omega", (m, m, n), "")?,
        star: optional_tensor(v, "star", (m, m, m), "")?,
        base,
        dim_v: m,
    })
}

pub fn bimodule_to_json(b: &Bimodule) -> Value {
    json!({
        "base": algebra_to_json(&b.base),
        "dimV": b.dim_v,
        "actL": tensor_to_json(&b.act_left),
        "actR": tensor_to_json(&b.act_right),
    })
}

pub fn bimodule_from_json(v: &Value) -> Result<Bimodule, Error> {
    let base = algebra_from_json(get(v, "base", "")?, "base")?;
    let m = read_usize(get(v, "dimV", "")?, "dimV")?;
    let n = base.dim();
    Ok(Bimodule {
        act_left: optional_tensor(v, "actL", (m, n, m), "")?,
        act_right: optional_tensor(v, "actR", (n, m, m), "")?,
        base,
        dim_v: m,
    })
}

pub fn crossed_to_json(cs: &CrossedSystem) -> Value {
    json!({
        "base": algebra_to_json(&cs.base),
        "top": algebra_to_json(&cs.top),
        "projL": tensor_to_json(&cs.proj_left),
        "projR": tensor_to_json(&cs.proj_right),
        "omega": tensor_to_json(&cs.omega),
    })
}

pub fn crossed_from_json(v: &Value) -> Result<CrossedSystem, Error> {
    let base = algebra_from_json(get(v, "base", "")?, "base")?;
    let top = algebra_from_json(get(v, "top", "")?, "top")?;
    let (n, m) = (base.dim(), top.dim());
    Ok(CrossedSystem {
        proj_left: optional_tensor(v, "projL", (n, m, n), "")?,
        proj_right: optional_tensor(v, "projR", (m, n, n), "")?,
        omega: optional_tensor(v, "omega", (m, m, n), "")?,
        base,
        top,
    })
}

pub fn matched_to_json(mp: &MatchedPair) -> Value {
    json!({
        "base": algebra_to_json(&mp.base),
        "top": algebra_to_json(&mp.top),
        "actL": tensor_to_json(&mp.act_left),
        "actR": tensor_to_json(&mp.act_right),
        "projL": tensor_to_json(&mp.proj_left),
        "projR": tensor_to_json(&mp.proj_right),
    })
}

pub fn matched_from_json(v: &Value) -> Result<MatchedPair, Error> {
    let base = algebra_from_json(get(v, "base", "")?, "base")?;
    let top = algebra_from_json(get(v, "top", "")?, "top")?;
    let (n, m) = (base.dim(), top.dim());
    Ok(MatchedPair {
        act_left: optional_tensor(v, "actL", (m, n, m), "")?,
        act_right: optional_tensor(v, "actR", (n, m, m), "")?,
        proj_left: optional_tensor(v, "projL", (n, m, n), "")?,
        proj_right: optional_tensor(v, "projR", (m, n, n), "")?,
        base,
        top,
    })
}

fn sparse_vector(v: &[Rational]) -> Value {
    let mut out = Map::new();
    for (i, c) in v.iter().enumerate() {
        if !num::Zero::is_zero(c) {
            out.insert((i + 1).to_string(), rat(c));
        }
    }
    Value::Object(out)
}

fn sparse_vector_from_json(v: &Value, n: usize, path: &str) -> Result<Vector, Error> {
    let obj = v
        .as_object()
        .ok_or_else(|| err(path, "expected an object like {\"1\": \"2/3\"}"))?;
    let mut out = crate::exactlin::zero_vec(n);
    for (k, c) in obj {
        let here = join(path, k);
        out[read_index(k, n, &here)?] = read_rational(c, &here)?;
    }
    Ok(out)
}

pub fn flag_to_json(fd: &FlagDatum) -> Value {
    json!({
        "base": algebra_to_json(&fd.base),
        "x0": sparse_vector(&fd.x0),
        "k0": rat(&fd.k0),
        "mu": vec_json(&fd.mu),
        "D": matrix_to_json(&fd.d),
        "T": matrix_to_json(&fd.t),
    })
}

/// Missing fields other than `base` are zero.
pub fn flag_from_json(v: &Value) -> Result<FlagDatum, Error> {
    let base = algebra_from_json(get(v, "base", "")?, "base")?;
    let n = base.dim();
    let mut fd = FlagDatum::zero(base);
    if let Some(x0) = v.get("x0") {
        fd.x0 = sparse_vector_from_json(x0, n, "x0")?;
    }
    if let Some(k0) = v.get("k0") {
        fd.k0 = read_rational(k0, "k0")?;
    }
    if let Some(mu) = v.get("mu") {
        fd.mu = read_vector(mu, n, "mu")?;
    }
    if let Some(d) = v.get("D") {
        fd.d = matrix_from_json(d, n, n, "D")?;
    }
    if let Some(t) = v.get("T") {
        fd.t = matrix_from_json(t, n, n, "T")?;
    }
    Ok(fd)
}

pub fn solution_family_to_json(f: &SolutionFamily) -> Value {
    json!({
        "linear_basis": f.linear_basis.iter().map(matrix_to_json).collect::<Vec<_>>(),
        "residuals": f.residuals.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    })
}

fn witness_to_json(w: &Witness) -> Value {
    json!({
        "roles": w.roles,
        "basis": w.basis_tuple.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "lhs": vec_json(&w.lhs_value),
        "rhs": vec_json(&w.rhs_value),
    })
}

fn condition_to_json(c: &ConditionResult) -> Value {
    let mut out = Map::new();
    out.insert("label".into(), json!(c.label));
    out.insert("passed".into(), json!(c.passed));
    if let Some(w) = &c.witness {
        out.insert("witness".into(), witness_to_json(w));
    }
    Value::Object(out)
}

pub fn report_to_json(r: &CheckReport) -> Value {
    json!({
        "passed": r.passed,
        "conditions": r.condition_results.iter().map(condition_to_json).collect::<Vec<_>>(),
        "notes": r.notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exactlin::{int, q};
    use crate::extending::{extract_datum, InclusionPresentation};

    #[test]
    fn algebra_encoding() {
        let v = algebra_to_json(&catalog::a3());
        assert_eq!(
            v,
            json!({"dim": 3, "products": {"1,2": {"3": "1/2"}, "2,1": {"3": "-1/2"}}})
        );
        assert_eq!(algebra_from_json(&v, "").unwrap(), catalog::a3());
    }

    #[test]
    fn names_and_integer_shorthand() {
        let v = json!({"dim": 1, "names": ["x"], "products": {"1,1": {"1": 0}}});
        let a = algebra_from_json(&v, "").unwrap();
        assert_eq!(a.names(), Some(&["x".to_string()][..]));
        assert!(a.is_null());
    }

    #[test]
    fn errors_name_the_field() {
        let bad = json!({"dim": 2, "products": {"1,3": {"1": "1"}}});
        let msg = algebra_from_json(&bad, "").unwrap_err().to_string();
        assert!(msg.contains("products.\"1,3\""), "{msg}");
        let bad = json!({"dim": 2, "products": {"1,1": {"1": "1/0"}}});
        let msg = algebra_from_json(&bad, "").unwrap_err().to_string();
        assert!(msg.contains("products.\"1,1\".1"), "{msg}");
        let msg = datum_from_json(&json!({"base": {"dim": 1}})).unwrap_err().to_string();
        assert!(msg.contains("dimV"), "{msg}");
        let msg = parse_document("{\n  \"dim\": 3,\n}").unwrap_err().to_string();
        assert!(msg.contains("line 3"), "{msg}");
    }

    #[test]
    fn datum_and_flag_survive_encoding() {
        let p = InclusionPresentation::coordinate_split(catalog::a6(), &[1, 2]).unwrap();
        let d = extract_datum(&p).unwrap();
        assert_eq!(datum_from_json(&datum_to_json(&d)).unwrap(), d);

        let mut fd = catalog::get_flag(
            "DA5",
            &catalog::params(&[("lambda", int(2)), ("a13", q(1, 3)), ("a23", int(-1))]),
        )
        .unwrap();
        fd.x0 = vec![int(0), int(0), int(5)];
        fd.k0 = q(-1, 2);
        let v = flag_to_json(&fd);
        assert_eq!(v["D"], json!([["0", "0", "1/3"], ["0", "0", "-1"], ["0", "0", "0"]]));
        assert_eq!(v["x0"], json!({"3": "5"}));
        assert_eq!(flag_from_json(&v).unwrap(), fd);
    }
}
