//! Versioned JSON documents.
//!
//! Every document carries `"format": "logtrop/1"`. Integers are written as
//! JSON numbers when they fit in an `i64` and as decimal strings otherwise;
//! both forms are accepted on input. Objects serialize with sorted keys or
//! fixed field order, so identical inputs give byte-identical output.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::compactify::{Compactification, CompactificationReport};
use crate::cones::{Cone, Fan};
use crate::error::Error;
use crate::exactlin::IntegerVector;
use crate::katofan::{AbstractConeComplex, IntegerMatrix, KatoFan, StrataConeTable, ToricMonoid};
use crate::topology::{BettiTable, SimplicialComplex, W0Report};
use crate::trop::{trop_prevariety, DimensionReport, PolySupport, TropFan, TropOptions};

pub const FORMAT: &str = "logtrop/1";

/// Failure to load a document: malformed input or a schema violation, or a
/// well-formed document describing an invalid object.
#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error(transparent)]
    Domain(#[from] Error),
}

fn schema<T>(msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Schema(msg.into()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Int {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for Int {
    fn from(v: &BigInt) -> Int {
        match v.to_i64() {
            Some(k) => Int::Small(k),
            None => Int::Big(v.to_string()),
        }
    }
}

impl Int {
    fn to_bigint(&self) -> Result<BigInt, FormatError> {
        match self {
            Int::Small(k) => Ok(BigInt::from(*k)),
            Int::Big(s) => s
                .trim()
                .parse()
                .or_else(|_| schema(format!("not an integer: {s:?}"))),
        }
    }
}

fn vec_to_json(v: &IntegerVector) -> Vec<Int> {
    v.entries().iter().map(Int::from).collect()
}

fn vec_from_json(v: &[Int], dim: usize) -> Result<IntegerVector, FormatError> {
    if v.len() != dim {
        return schema(format!("vector of length {} in dimension {dim}", v.len()));
    }
    Ok(IntegerVector::new(
        v.iter().map(Int::to_bigint).collect::<Result<_, _>>()?,
    ))
}

fn vecs_from_json(vs: &[Vec<Int>], dim: usize) -> Result<Vec<IntegerVector>, FormatError> {
    vs.iter().map(|v| vec_from_json(v, dim)).collect()
}

/// Parses a document and checks its format tag.
pub fn parse(text: &str) -> Result<Value, FormatError> {
    let value: Value = serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    match value.get("format") {
        Some(Value::String(f)) if f == FORMAT => Ok(value),
        Some(Value::String(f)) => schema(format!("unsupported format {f:?}, expected {FORMAT:?}")),
        Some(_) => schema("\"format\" must be a string"),
        None => schema("missing \"format\" key"),
    }
}

fn decode<T: DeserializeOwned>(value: &Value) -> Result<T, FormatError> {
    T::deserialize(value).map_err(|e| FormatError::Schema(e.to_string()))
}

/// Pretty-printed JSON with a trailing newline. Vectors and lists of
/// vectors stay on one line.
pub fn render<T: Serialize>(doc: &T) -> String {
    let value = serde_json::to_value(doc).expect("documents serialize");
    let mut out = String::new();
    write_value(&mut out, &value, 0);
    out.push('\n');
    out
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|i| match i {
            Value::Array(inner) => inner.iter().all(|x| !x.is_array() && !x.is_object()),
            Value::Object(_) => false,
            _ => true,
        }),
        Value::Object(_) => false,
        _ => true,
    }
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = |out: &mut String, d: usize| out.push_str(&"  ".repeat(d));
    match v {
        _ if is_flat(v) => out.push_str(&serde_json::to_string(v).expect("scalar")),
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                pad(out, depth + 1);
                write_value(out, item, depth + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push_str("{\n");
            // Keys are sorted, except that the format tag leads.
            let entries = map
                .iter()
                .filter(|(k, _)| *k == "format")
                .chain(map.iter().filter(|(k, _)| *k != "format"));
            for (i, (k, item)) in entries.enumerate() {
                pad(out, depth + 1);
                out.push_str(&serde_json::to_string(k).expect("key"));
                out.push_str(": ");
                write_value(out, item, depth + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push('}');
        }
        _ => unreachable!("scalars are flat"),
    }
}

fn format_tag() -> String {
    FORMAT.to_string()
}

// ---------------------------------------------------------------------------
// Fans and cones

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FanDoc {
    #[serde(default = "format_tag")]
    pub format: String,
    pub ambient_dim: usize,
    pub rays: Vec<Vec<Int>>,
    /// Maximal cones as indices into `rays`.
    pub cones: Vec<Vec<usize>>,
}

impl FanDoc {
    pub fn new(f: &Fan) -> FanDoc {
        FanDoc {
            format: format_tag(),
            ambient_dim: f.ambient_dim(),
            rays: f.rays().iter().map(vec_to_json).collect(),
            cones: f.maximal_cones().iter().map(|c| c.rays.clone()).collect(),
        }
    }

    pub fn to_fan(&self) -> Result<Fan, FormatError> {
        let rays = vecs_from_json(&self.rays, self.ambient_dim)?;
        Ok(Fan::from_ray_indices(self.ambient_dim, &rays, &self.cones)?)
    }
}

pub fn fan_to_json(f: &Fan) -> String {
    render(&FanDoc::new(f))
}

pub fn fan_from_value(value: &Value) -> Result<Fan, FormatError> {
    decode::<FanDoc>(value)?.to_fan()
}

pub fn fan_from_json(text: &str) -> Result<Fan, FormatError> {
    fan_from_value(&parse(text)?)
}

/// A cone, or the generators of a monoid, by its rays.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConeDoc {
    #[serde(default = "format_tag")]
    pub format: String,
    pub ambient_dim: usize,
    pub rays: Vec<Vec<Int>>,
}

impl ConeDoc {
    pub fn new(c: &Cone) -> ConeDoc {
        ConeDoc {
            format: format_tag(),
            ambient_dim: c.ambient_dim(),
            rays: c.rays().iter().map(vec_to_json).collect(),
        }
    }

    pub fn generators(&self) -> Result<Vec<IntegerVector>, FormatError> {
        vecs_from_json(&self.rays, self.ambient_dim)
    }
}

pub fn cone_from_json(text: &str) -> Result<Cone, FormatError> {
    let doc: ConeDoc = decode(&parse(text)?)?;
    Ok(Cone::from_rays(doc.ambient_dim, &doc.generators()?)?)
}

pub fn cone_to_json(c: &Cone) -> String {
    render(&ConeDoc::new(c))
}

/// The saturated monoid of lattice points of the cone spanned by the rays.
pub fn monoid_from_json(text: &str) -> Result<ToricMonoid, FormatError> {
    let doc: ConeDoc = decode(&parse(text)?)?;
    Ok(ToricMonoid::from_generators(
        doc.ambient_dim,
        &doc.generators()?,
    )?)
}

// ---------------------------------------------------------------------------
// Polynomial supports and tropical fans

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SupportsDoc {
    #[serde(default = "format_tag")]
    pub format: String,
    pub rank: usize,
    pub supports: Vec<Vec<Vec<Int>>>,
    #[serde(default)]
    pub tropical_basis: bool,
}

impl SupportsDoc {
    pub fn new(fs: &[PolySupport], tropical_basis: bool) -> SupportsDoc {
        SupportsDoc {
            format: format_tag(),
            rank: fs.first().map_or(0, PolySupport::rank),
            supports: fs
                .iter()
                .map(|f| f.exponents().iter().map(vec_to_json).collect())
                .collect(),
            tropical_basis,
        }
    }

    pub fn to_supports(&self) -> Result<Vec<PolySupport>, FormatError> {
        self.supports
            .iter()
            .map(|s| Ok(PolySupport::new(self.rank, vecs_from_json(s, self.rank)?)?))
            .collect()
    }
}

pub fn supports_from_json(text: &str) -> Result<(Vec<PolySupport>, bool), FormatError> {
    let doc: SupportsDoc = decode(&parse(text)?)?;
    Ok((doc.to_supports()?, doc.tropical_basis))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TropFanDoc {
    #[serde(default = "format_tag")]
    pub format: String,
    pub ambient_dim: usize,
    pub rays: Vec<Vec<Int>>,
    pub cones: Vec<Vec<usize>>,
    #[serde(default)]
    pub declared_variety: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient: Option<Vec<Vec<Int>>>,
}

impl TropFanDoc {
    pub fn new(t: &TropFan) -> TropFanDoc {
        let fan = FanDoc::new(&t.fan);
        TropFanDoc {
            format: format_tag(),
            ambient_dim: fan.ambient_dim,
            rays: fan.rays,
            cones: fan.cones,
            declared_variety: t.declared_variety,
            quotient: t
                .quotient
                .as_ref()
                .map(|q| q.iter().map(vec_to_json).collect()),
        }
    }

    pub fn to_trop(&self) -> Result<TropFan, FormatError> {
        let fan = FanDoc {
            format: self.format.clone(),
            ambient_dim: self.ambient_dim,
            rays: self.rays.clone(),
            cones: self.cones.clone(),
        }
        .to_fan()?;
        let mut t = TropFan::new(fan, self.declared_variety);
        if let Some(q) = &self.quotient {
            let n = q.first().map_or(0, Vec::len);
            t.quotient = Some(vecs_from_json(q, n)?);
        }
        Ok(t)
    }
}

pub fn trop_to_json(t: &TropFan) -> String {
    render(&TropFanDoc::new(t))
}

/// A tropical fan from either a supports document (the prevariety is
/// computed) or a precomputed fan document.
pub fn trop_from_value(value: &Value, opts: TropOptions) -> Result<TropFan, FormatError> {
    if value.get("supports").is_some() {
        let doc: SupportsDoc = decode(value)?;
        let opts = TropOptions {
            tropical_basis: opts.tropical_basis || doc.tropical_basis,
            ..opts
        };
        Ok(trop_prevariety(&doc.to_supports()?, opts)?)
    } else if value.get("cones").is_some() {
        let mut t = decode::<TropFanDoc>(value)?.to_trop()?;
        t.declared_variety |= opts.tropical_basis;
        Ok(t)
    } else {
        schema("expected a supports document or a fan document")
    }
}

pub fn trop_from_json(text: &str, opts: TropOptions) -> Result<TropFan, FormatError> {
    trop_from_value(&parse(text)?, opts)
}

// ---------------------------------------------------------------------------
// Simplicial complexes

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexDoc {
    #[serde(default = "format_tag")]
    pub format: String,
    pub vertices: Vec<String>,
    pub maximal_simplices: Vec<Vec<String>>,
}

impl ComplexDoc {
    pub fn new(s: &SimplicialComplex) -> ComplexDoc {
        ComplexDoc {
            format: format_tag(),
            vertices: s.vertices().to_vec(),
            maximal_simplices: s
                .maximal_simplices()
                .iter()
                .map(|m| m.iter().map(|&v| s.vertices()[v].clone()).collect())
                .collect(),
        }
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex, FormatError> {
        Ok(SimplicialComplex::from_labels(
            self.vertices.clone(),
            &self.maximal_simplices,
        )?)
    }
}

pub fn complex_to_json(s: &SimplicialComplex) -> String {
    render(&ComplexDoc::new(s))
}

pub fn complex_from_json(text: &str) -> Result<SimplicialComplex, FormatError> {
    decode::<ComplexDoc>(&parse(text)?)?.to_complex()
}

// ---------------------------------------------------------------------------
// Kato fans and cone complexes

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StalkDoc {
    pub rank: usize,
    /// Rays of the cone spanned by the sharp stalk in its group `Z^rank`.
    pub rays: Vec<Vec<Int>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AttachDoc {
    pub from: String,
    pub to: String,
    /// Lattice map between the cells, `rank(to) × rank(from)`, by rows.
    pub matrix: Vec<Vec<Int>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KatoFanDoc {
    #[serde(default = "format_tag")]
    pub format: String,
    pub points: Vec<String>,
    /// All pairs `[x, y]` with `x < y` (`y` a specialization of `x`).
    pub order: Vec<[String; 2]>,
    pub stalks: BTreeMap<String, StalkDoc>,
    pub attaching: Vec<AttachDoc>,
}

fn matrix_to_json(m: &IntegerMatrix) -> Vec<Vec<Int>> {
    m.row_vectors().iter().map(vec_to_json).collect()
}

impl KatoFanDoc {
    pub fn new(k: &KatoFan) -> KatoFanDoc {
        let names = k.names();
        let mut order = Vec::new();
        for x in 0..k.len() {
            for y in 0..k.len() {
                if x != y && k.leq(x, y) {
                    order.push([names[x].clone(), names[y].clone()]);
                }
            }
        }
        KatoFanDoc {
            format: format_tag(),
            points: names.to_vec(),
            order,
            stalks: names
                .iter()
                .zip(k.stalks())
                .map(|(n, s)| {
                    (
                        n.clone(),
                        StalkDoc {
                            rank: s.rank(),
                            rays: s.cone().rays().iter().map(vec_to_json).collect(),
                        },
                    )
                })
                .collect(),
            attaching: k
                .steps()
                .iter()
                .map(|(&(x, y), m)| AttachDoc {
                    from: names[x].clone(),
                    to: names[y].clone(),
                    matrix: matrix_to_json(m),
                })
                .collect(),
        }
    }

    pub fn to_kato_fan(&self) -> Result<KatoFan, FormatError> {
        let index: BTreeMap<&String, usize> = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let lookup = |p: &String| {
            index
                .get(p)
                .copied()
                .ok_or_else(|| FormatError::Schema(format!("unknown point {p:?}")))
        };
        let mut stalks = Vec::with_capacity(self.points.len());
        for p in &self.points {
            let doc = self
                .stalks
                .get(p)
                .ok_or_else(|| FormatError::Schema(format!("no stalk for {p:?}")))?;
            let rays = vecs_from_json(&doc.rays, doc.rank)?;
            stalks.push(ToricMonoid::sharp(Cone::from_rays(doc.rank, &rays)?)?);
        }
        let mut steps = BTreeMap::new();
        for a in &self.attaching {
            let (x, y) = (lookup(&a.from)?, lookup(&a.to)?);
            let (rows, cols) = (stalks[y].rank(), stalks[x].rank());
            if a.matrix.len() != rows {
                return schema(format!(
                    "attaching map {}→{} needs {rows} rows",
                    a.from, a.to
                ));
            }
            let data = vecs_from_json(&a.matrix, cols)?;
            steps.insert((x, y), IntegerMatrix::new(rows, cols, data)?);
        }
        let k = KatoFan::new(self.points.clone(), stalks, steps)?;
        let mut declared = Vec::new();
        for [a, b] in &self.order {
            declared.push((lookup(a)?, lookup(b)?));
        }
        declared.sort_unstable();
        let mut actual: Vec<(usize, usize)> = (0..k.len())
            .flat_map(|x| (0..k.len()).map(move |y| (x, y)))
            .filter(|&(x, y)| x != y && k.leq(x, y))
            .collect();
        actual.sort_unstable();
        if declared != actual {
            return schema("\"order\" is not the order generated by the attaching maps");
        }
        Ok(k)
    }
}

pub fn kato_fan_to_json(k: &KatoFan) -> String {
    render(&KatoFanDoc::new(k))
}

pub fn kato_fan_from_json(text: &str) -> Result<KatoFan, FormatError> {
    decode::<KatoFanDoc>(&parse(text)?)?.to_kato_fan()
}

#[derive(Debug, Clone, Serialize)]
pub struct CellDoc {
    pub point: String,
    pub dim: usize,
    pub rays: Vec<Vec<Int>>,
    pub stratum_codim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConeComplexDoc {
    pub format: String,
    pub cells: Vec<CellDoc>,
    pub attaching: Vec<AttachDoc>,
    pub order_reversing: bool,
}

impl ConeComplexDoc {
    pub fn new(c: &AbstractConeComplex, table: &StrataConeTable) -> ConeComplexDoc {
        let names = c.names();
        ConeComplexDoc {
            format: format_tag(),
            cells: (0..c.len())
                .map(|x| CellDoc {
                    point: names[x].clone(),
                    dim: c.cell(x).dim(),
                    rays: c.cell(x).rays().iter().map(vec_to_json).collect(),
                    stratum_codim: table.rows[table.cell_of(x)].stratum_codim,
                })
                .collect(),
            attaching: c
                .attaching()
                .iter()
                .map(|(&(x, y), m)| AttachDoc {
                    from: names[x].clone(),
                    to: names[y].clone(),
                    matrix: matrix_to_json(m),
                })
                .collect(),
            order_reversing: table.order_reversing,
        }
    }
}

// ---------------------------------------------------------------------------
// Reports

#[derive(Debug, Clone, Serialize)]
pub struct ConeRowDoc {
    pub rays: Vec<usize>,
    pub dim: usize,
    pub meets: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Int>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_dim: Option<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompactificationReportDoc {
    pub format: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proper: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub premise_holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub premise_witness: Option<Vec<Int>>,
    pub fan: FanDoc,
    pub cones: Vec<ConeRowDoc>,
}

impl CompactificationReportDoc {
    pub fn new(r: &CompactificationReport, sigma_x: &Fan) -> CompactificationReportDoc {
        CompactificationReportDoc {
            format: format_tag(),
            proper: r.proper,
            premise_holds: r.premise_holds,
            premise_witness: r.premise_witness.as_ref().map(vec_to_json),
            fan: FanDoc::new(sigma_x),
            cones: r
                .cones
                .iter()
                .map(|c| ConeRowDoc {
                    rays: c.rays.clone(),
                    dim: c.dim,
                    meets: c.meets,
                    witness: c.witness.as_ref().map(vec_to_json),
                    expected_dim: c.expected_dim,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CompactificationDoc {
    pub format: String,
    pub ambient_dim: usize,
    pub rays: Vec<Vec<Int>>,
    pub cones: Vec<Vec<usize>>,
    pub refined: FanDoc,
    pub report: CompactificationReportDoc,
}

impl CompactificationDoc {
    pub fn new(c: &Compactification) -> CompactificationDoc {
        let fan = FanDoc::new(&c.fan);
        CompactificationDoc {
            format: format_tag(),
            ambient_dim: fan.ambient_dim,
            rays: fan.rays,
            cones: fan.cones,
            refined: FanDoc::new(&c.refined),
            report: CompactificationReportDoc::new(&c.report, &c.fan),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CohomologyDoc {
    pub format: String,
    /// `reduced_betti[k]` is `b̃^{k-1}`.
    pub reduced_betti: Vec<usize>,
    pub euler_characteristic: i64,
    /// `w0_hc[i]` is the predicted `dim W_0 H_c^i`.
    pub w0_hc: Vec<usize>,
}

impl CohomologyDoc {
    pub fn new(b: &BettiTable, w: &W0Report) -> CohomologyDoc {
        CohomologyDoc {
            format: format_tag(),
            reduced_betti: b.reduced_betti.clone(),
            euler_characteristic: b.euler_characteristic(),
            w0_hc: w.dims.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DimensionDoc {
    pub trop_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimension_drop: Option<bool>,
}

impl From<&DimensionReport> for DimensionDoc {
    fn from(r: &DimensionReport) -> DimensionDoc {
        DimensionDoc {
            trop_dim: r.trop_dim,
            source_dim: r.source_dim,
            bound_holds: r.bound_holds,
            dimension_drop: r.dimension_drop,
        }
    }
}
