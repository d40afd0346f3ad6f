use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use serde::Serialize;
use serde_json::Value;

use logtrop_core::compactify::{build_compactification, check_dimensions, check_proper};
use logtrop_core::cones::Fan;
use logtrop_core::io::{
    self, CohomologyDoc, CompactificationDoc, CompactificationReportDoc, ComplexDoc,
    ConeComplexDoc, ConeDoc, DimensionDoc, FormatError, KatoFanDoc, SupportsDoc, TropFanDoc,
};
use logtrop_core::katofan::{cone_complex, spec, strata_cone_table, KatoFan, ToricMonoid};
use logtrop_core::topology::{
    link, link_complex, reduced_cohomology, w0_report, SimplicialComplex,
};
use logtrop_core::trop::{
    dimension_report, restrict_to_fan, trop_prevariety, TropFan, TropOptions,
};
use logtrop_core::Error;

use crate::table;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Spec,
    ConeComplex,
    TropHypersurface,
    TropPrevariety,
    TropRestrict,
    CheckProper,
    CheckDims,
    Compactify,
    Link,
    Cohomology,
    Pipeline,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Spec => "spec",
            Command::ConeComplex => "cone-complex",
            Command::TropHypersurface => "trop-hypersurface",
            Command::TropPrevariety => "trop-prevariety",
            Command::TropRestrict => "trop-restrict",
            Command::CheckProper => "check-proper",
            Command::CheckDims => "check-dims",
            Command::Compactify => "compactify",
            Command::Link => "link",
            Command::Cohomology => "cohomology",
            Command::Pipeline => "pipeline",
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Flags {
    pub tropical_basis: bool,
    pub quotient_lineality: bool,
    pub dim_y: Option<usize>,
}

impl Flags {
    fn trop_options(&self) -> TropOptions {
        TropOptions {
            tropical_basis: self.tropical_basis,
            quotient_lineality: self.quotient_lineality,
        }
    }
}

#[derive(Debug, Clone)]
pub struct JobSpec {
    pub command: Command,
    /// Input role → file.
    pub inputs: BTreeMap<String, PathBuf>,
    pub flags: Flags,
    pub out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{path}: {source}")]
    Format { path: String, source: FormatError },
    #[error("{0}")]
    Domain(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 2,
            CliError::Format {
                source: FormatError::Domain(_),
                ..
            } => 1,
            CliError::Format { .. } => 2,
            CliError::Domain(_) => 1,
        }
    }
}

/// Parsed input documents, keyed by role.
struct Inputs {
    docs: BTreeMap<String, (String, Value)>,
}

impl Inputs {
    /// Reads and format-checks every input before any computation.
    fn load(job: &JobSpec) -> Result<Inputs, CliError> {
        let mut docs = BTreeMap::new();
        for (role, path) in &job.inputs {
            let shown = path.display().to_string();
            let text =
                fs::read_to_string(path).map_err(|e| CliError::Io(format!("{shown}: {e}")))?;
            let value = io::parse(&text).map_err(|source| CliError::Format {
                path: shown.clone(),
                source,
            })?;
            docs.insert(role.clone(), (shown, value));
        }
        Ok(Inputs { docs })
    }

    fn with<T>(
        &self,
        role: &str,
        f: impl FnOnce(&Value) -> Result<T, FormatError>,
    ) -> Result<T, CliError> {
        let (path, value) = &self.docs[role];
        f(value).map_err(|source| CliError::Format {
            path: path.clone(),
            source,
        })
    }

    fn has(&self, role: &str) -> bool {
        self.docs.contains_key(role)
    }
}

fn decode<T: serde::de::DeserializeOwned>(v: &Value) -> Result<T, FormatError> {
    T::deserialize(v).map_err(|e| FormatError::Schema(e.to_string()))
}

/// A finished command: the main JSON report, its table, and any further
/// artifacts written alongside with `--out`.
struct Output {
    json: String,
    table: String,
    artifacts: Vec<(String, String)>,
}

#[derive(Serialize)]
struct TropReport {
    #[serde(flatten)]
    fan: TropFanDoc,
    dimension: DimensionDoc,
}

#[derive(Serialize)]
struct PipelineDoc {
    format: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    caveat: Option<String>,
    tropical: TropReport,
    compactification: CompactificationDoc,
    link: ComplexDoc,
    cohomology: CohomologyDoc,
}

const PREVARIETY_CAVEAT: &str =
    "supports not declared a tropical basis: the fan is a tropical prevariety and may strictly contain Trop(Y)";

pub fn run(job: &JobSpec) -> Result<(), CliError> {
    let inputs = Inputs::load(job)?;
    let output = execute(job, &inputs)?;
    match &job.out {
        None => {
            print!("{}", output.json);
            eprint!("{}", output.table);
        }
        Some(dir) => {
            let write = |name: &str, content: &str| {
                let path = dir.join(name);
                fs::write(&path, content)
                    .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
            };
            fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
            let name = job.command.name();
            write(&format!("{name}.json"), &output.json)?;
            write(&format!("{name}.txt"), &output.table)?;
            for (file, content) in &output.artifacts {
                write(file, content)?;
            }
            let mut stdout = std::io::stdout();
            let _ = stdout.write_all(output.table.as_bytes());
        }
    }
    Ok(())
}

fn trop_input(inputs: &Inputs, flags: &Flags) -> Result<TropFan, CliError> {
    inputs.with("trop", |v| io::trop_from_value(v, flags.trop_options()))
}

fn fan_input(inputs: &Inputs, role: &str) -> Result<Fan, CliError> {
    inputs.with(role, io::fan_from_value)
}

fn trop_report(t: &TropFan, flags: &Flags) -> Result<(TropReport, String), CliError> {
    let dims = dimension_report(t, flags.dim_y)?;
    let table = table::trop(t, &dims);
    Ok((
        TropReport {
            fan: TropFanDoc::new(t),
            dimension: DimensionDoc::from(&dims),
        },
        table,
    ))
}

fn single(json: String, table: String) -> Output {
    Output {
        json,
        table,
        artifacts: Vec::new(),
    }
}

fn execute(job: &JobSpec, inputs: &Inputs) -> Result<Output, CliError> {
    let flags = &job.flags;
    Ok(match job.command {
        Command::Spec => {
            let p = monoid_input(inputs, "monoid")?;
            let k = spec(&p)?;
            single(io::render(&KatoFanDoc::new(&k)), table::kato_fan(&k))
        }
        Command::ConeComplex => {
            let k = inputs.with("kato_fan", |v| {
                if v.get("points").is_some() {
                    decode::<KatoFanDoc>(v)?.to_kato_fan()
                } else {
                    let doc: ConeDoc = decode(v)?;
                    let p = ToricMonoid::from_generators(doc.ambient_dim, &doc.generators()?)?;
                    Ok(spec(&p)?)
                }
            })?;
            let c = cone_complex(&k);
            let t = strata_cone_table(&k);
            single(io::render(&ConeComplexDoc::new(&c, &t)), table::strata(&t))
        }
        Command::TropHypersurface | Command::TropPrevariety => {
            let supports = inputs.with("supports", |v| {
                let doc: SupportsDoc = decode(v)?;
                if job.command == Command::TropHypersurface && doc.supports.len() != 1 {
                    return Err(FormatError::Schema(format!(
                        "a hypersurface needs exactly one support, found {}",
                        doc.supports.len()
                    )));
                }
                Ok((doc.to_supports()?, doc.tropical_basis))
            })?;
            let opts = TropOptions {
                tropical_basis: flags.tropical_basis || supports.1,
                ..flags.trop_options()
            };
            let t = trop_prevariety(&supports.0, opts)?;
            let (report, table) = trop_report(&t, flags)?;
            single(io::render(&report), table)
        }
        Command::TropRestrict => {
            let t = trop_input(inputs, flags)?;
            let delta = fan_input(inputs, "fan")?;
            let r = restrict_to_fan(&t, &delta)?;
            let (report, table) = trop_report(&r, flags)?;
            single(io::render(&report), table)
        }
        Command::CheckProper => {
            let t = trop_input(inputs, flags)?;
            let sigma = fan_input(inputs, "fan")?;
            let complete = fan_input(inputs, "complete")?;
            let t = restrict_to_fan(&t, &complete)?;
            let r = check_proper(&t, &sigma, &complete)?;
            single(
                io::render(&CompactificationReportDoc::new(&r, &sigma)),
                table::report(&r, &sigma),
            )
        }
        Command::CheckDims => {
            let t = trop_input(inputs, flags)?;
            let sigma = fan_input(inputs, "fan")?;
            let r = check_dimensions(&t, &sigma, flags.dim_y.unwrap_or(0))?;
            single(
                io::render(&CompactificationReportDoc::new(&r, &sigma)),
                table::report(&r, &sigma),
            )
        }
        Command::Compactify => {
            let t = trop_input(inputs, flags)?;
            let star = star_input(inputs, &t)?;
            let c = build_compactification(&t, &star)?;
            single(
                io::render(&CompactificationDoc::new(&c)),
                table::report(&c.report, &c.fan),
            )
        }
        Command::Link => {
            let s = inputs.with("fan", |v| {
                if v.get("points").is_some() {
                    let k: KatoFan = decode::<KatoFanDoc>(v)?.to_kato_fan()?;
                    Ok(link_complex(&cone_complex(&k)))
                } else {
                    Ok(link(&io::fan_from_value(v)?))
                }
            })?;
            single(io::render(&ComplexDoc::new(&s)), table::complex(&s))
        }
        Command::Cohomology => {
            let s: SimplicialComplex =
                inputs.with("complex", |v| decode::<ComplexDoc>(v)?.to_complex())?;
            let b = reduced_cohomology(&s);
            let w = w0_report(&b);
            single(
                io::render(&CohomologyDoc::new(&b, &w)),
                table::cohomology(&b, &w),
            )
        }
        Command::Pipeline => pipeline(inputs, flags)?,
    })
}

fn monoid_input(inputs: &Inputs, role: &str) -> Result<ToricMonoid, CliError> {
    inputs.with(role, |v| {
        let doc: ConeDoc = decode(v)?;
        Ok(ToricMonoid::from_generators(
            doc.ambient_dim,
            &doc.generators()?,
        )?)
    })
}

fn star_input(inputs: &Inputs, t: &TropFan) -> Result<Fan, CliError> {
    if inputs.has("complete") {
        fan_input(inputs, "complete")
    } else {
        Ok(Fan::orthants(t.ambient_dim()))
    }
}

fn pipeline(inputs: &Inputs, flags: &Flags) -> Result<Output, CliError> {
    let t = trop_input(inputs, flags)?;
    let (tropical, trop_table) = trop_report(&t, flags)?;
    let star = star_input(inputs, &t)?;
    let c = build_compactification(&t, &star)?;
    let s = link(&c.fan);
    let b = reduced_cohomology(&s);
    let w = w0_report(&b);
    let doc = PipelineDoc {
        format: io::FORMAT.to_string(),
        caveat: (!t.declared_variety).then(|| PREVARIETY_CAVEAT.to_string()),
        tropical,
        compactification: CompactificationDoc::new(&c),
        link: ComplexDoc::new(&s),
        cohomology: CohomologyDoc::new(&b, &w),
    };
    let mut text = trop_table;
    text.push_str(&table::report(&c.report, &c.fan));
    text.push_str(&table::complex(&s));
    text.push_str(&table::cohomology(&b, &w));
    if let Some(caveat) = &doc.caveat {
        text.push_str(&format!("note: {caveat}\n"));
    }
    let artifacts = vec![
        ("trop.json".to_string(), io::render(&TropFanDoc::new(&t))),
        (
            "compactify.json".to_string(),
            io::render(&doc.compactification),
        ),
        ("link.json".to_string(), io::render(&doc.link)),
        ("cohomology.json".to_string(), io::render(&doc.cohomology)),
    ];
    Ok(Output {
        json: io::render(&doc),
        table: text,
        artifacts,
    })
}
