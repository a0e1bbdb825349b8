//! `sphemb`: JSON front end for class groups, canonical divisors, Gorenstein
//! tests, principal divisors and oracle runs.
//!
//! Every invocation prints one JSON document
//! `{command, inputs, status, result, message}`. Exit codes: 0 success,
//! 2 usage or parameter errors, 3 domain errors (including failed oracle
//! comparisons), 4 oracle instability.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};
use sphemb_core::divisor_model::{
    canonical_divisor, class_group, class_of, gorenstein_witness, is_principal, model_from_json, model_to_json,
    principal_divisor, validate_model, wonderful_section_divisor, Divisor, SphericalDivisorModel, WonderfulModel,
};
use sphemb_core::families::{
    circular_complexes_model, complexes_realization, determinantal_model, monoid_model, FamilySpec, MatrixRealization,
};
use sphemb_core::json::int_to_value;
use sphemb_core::oracle::{self, OracleReport, DEFAULT_SEED, DEFAULT_TRIALS};
use sphemb_core::rootdata::Character;
use sphemb_core::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_UNSTABLE: i32 = 4;

#[derive(Args, Debug, Clone)]
struct Source {
    /// Family specifier, e.g. `monoid:m=3` or `circular:m=2,n=2,r=1,s=1`.
    #[arg(long, global = true)]
    family: Option<String>,
    /// Read the divisor model from a JSON file instead of a family.
    #[arg(long, global = true)]
    model: Option<PathBuf>,
    /// JSON output (the only format; accepted for compatibility).
    #[arg(long, global = true, default_value_t = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Class group presentation and generator names.
    ClassGroup,
    /// Canonical divisor and its class.
    Canonical,
    /// Principal divisor of a character.
    Divisor {
        #[arg(long)]
        chi: String,
    },
    /// Whether the canonical divisor is principal, with a witness character.
    Gorenstein,
    /// Class of a divisor given as `label:coefficient,...`.
    ClassOf {
        #[arg(long)]
        divisor: String,
    },
    /// Compare the model with its matrix realization.
    Verify {
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Divisor of the section of a Picard weight (family `wonderful:k=,l=`).
    WonderfulSection {
        #[arg(long)]
        chi: String,
    },
    /// Serialize the divisor model.
    Model {
        #[arg(long)]
        dump: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::ClassGroup => "class-group",
            Command::Canonical => "canonical",
            Command::Divisor { .. } => "divisor",
            Command::Gorenstein => "gorenstein",
            Command::ClassOf { .. } => "class-of",
            Command::Verify { .. } => "verify",
            Command::WonderfulSection { .. } => "wonderful-section",
            Command::Model { .. } => "model",
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "sphemb", version, about = "Divisor classes of spherical embeddings, as JSON")]
struct Invocation {
    #[command(flatten)]
    source: Source,
    #[command(subcommand)]
    command: Command,
}

/// Failure of a command: exit code, message and an optional partial result.
struct Failure {
    code: i32,
    message: String,
    result: Option<Value>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: exit_code(&e),
            message: e.to_string(),
            result: None,
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::InvalidParameters(_) | Error::ForeignLabel(_) | Error::UnknownBasisLabel(_) => {
            EXIT_USAGE
        }
        Error::OracleUnstable(_) => EXIT_UNSTABLE,
        _ => EXIT_DOMAIN,
    }
}

/// Parses `argv` (including the program name) and runs the command. Returns
/// the JSON document to print and the exit code.
pub fn run<I, S>(argv: I) -> (Value, i32)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let inv = match Invocation::try_parse_from(&argv) {
        Ok(inv) => inv,
        Err(e) => {
            use clap::error::ErrorKind;
            let help = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let command = argv.get(1).map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let doc = envelope(
                &command,
                Value::Object(Map::new()),
                if help { Ok(json!({ "help": e.to_string() })) } else { Err(usage(e.to_string())) },
            );
            return (doc, if help { EXIT_OK } else { EXIT_USAGE });
        }
    };
    let inputs = inputs_of(&inv);
    let outcome = dispatch(&inv);
    let code = match &outcome {
        Ok(_) => EXIT_OK,
        Err(f) => f.code,
    };
    (envelope(inv.command.name(), inputs, outcome), code)
}

fn usage(message: String) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.trim_end().to_string(),
        result: None,
    }
}

fn envelope(command: &str, inputs: Value, outcome: Result<Value, Failure>) -> Value {
    match outcome {
        Ok(result) => json!({
            "command": command,
            "inputs": inputs,
            "status": "ok",
            "result": result,
            "message": Value::Null,
        }),
        Err(f) => json!({
            "command": command,
            "inputs": inputs,
            "status": "error",
            "result": f.result.unwrap_or(Value::Null),
            "message": f.message,
        }),
    }
}

fn inputs_of(inv: &Invocation) -> Value {
    let mut m = Map::new();
    if let Some(f) = &inv.source.family {
        m.insert("family".into(), json!(f));
    }
    if let Some(p) = &inv.source.model {
        m.insert("model".into(), json!(p.display().to_string()));
    }
    match &inv.command {
        Command::Divisor { chi } | Command::WonderfulSection { chi } => {
            m.insert("chi".into(), json!(chi));
        }
        Command::ClassOf { divisor } => {
            m.insert("divisor".into(), json!(divisor));
        }
        Command::Verify { oracle, trials, seed } => {
            m.insert("oracle".into(), json!(oracle));
            m.insert("trials".into(), json!(trials));
            m.insert("seed".into(), json!(seed));
        }
        Command::Model { dump } => {
            m.insert("dump".into(), json!(dump));
        }
        _ => {}
    }
    Value::Object(m)
}

/// A divisor model with whatever realization the family provides.
struct Loaded {
    model: Option<SphericalDivisorModel>,
    realization: Option<MatrixRealization>,
    evidence: Option<Value>,
}

impl Loaded {
    fn model(&self) -> Result<&SphericalDivisorModel, Failure> {
        self.model.as_ref().ok_or_else(|| Failure {
            code: EXIT_DOMAIN,
            message: "this family has a realization but no divisor model".into(),
            result: None,
        })
    }
}

fn family_spec(source: &Source) -> Result<FamilySpec, Failure> {
    let text = source
        .family
        .as_deref()
        .ok_or_else(|| usage("one of --family or --model is required".into()))?;
    Ok(text.parse::<FamilySpec>()?)
}

fn load(source: &Source) -> Result<Loaded, Failure> {
    if let Some(path) = &source.model {
        if source.family.is_some() {
            return Err(usage("--family and --model are mutually exclusive".into()));
        }
        let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        // accept the output of `model --dump` as well as a bare model document
        let text = match serde_json::from_str::<Value>(&text) {
            Ok(Value::Object(doc)) if doc.get("command") == Some(&json!("model")) => {
                serde_json::to_string(&doc["result"]).expect("JSON value")
            }
            _ => text,
        };
        return Ok(Loaded {
            model: Some(model_from_json(&text)?),
            realization: None,
            evidence: None,
        });
    }
    let loaded = match family_spec(source)? {
        FamilySpec::Monoid { m } => {
            let (model, real) = monoid_model(m)?;
            Loaded {
                model: Some(model),
                realization: Some(real),
                evidence: None,
            }
        }
        FamilySpec::Circular { m, n, r, s } => {
            let (model, real) = circular_complexes_model(m, n, r, s)?;
            Loaded {
                model: Some(model),
                realization: Some(real),
                evidence: None,
            }
        }
        FamilySpec::Determinantal { m, n, r } => {
            let (model, real, evidence) = determinantal_model(m, n, r)?;
            Loaded {
                model: Some(model),
                realization: Some(real),
                evidence: Some(serde_json::to_value(evidence).expect("serializable")),
            }
        }
        FamilySpec::Complexes { l, m, n, r, s } => Loaded {
            model: None,
            realization: Some(complexes_realization(l, m, n, r, s)?),
            evidence: None,
        },
        FamilySpec::Wonderful { .. } => {
            return Err(Failure {
                code: EXIT_DOMAIN,
                message: "the wonderful family only supports `wonderful-section`".into(),
                result: None,
            })
        }
    };
    if let Some(model) = &loaded.model {
        let report = validate_model(model);
        if !report.is_valid() {
            return Err(Error::InvalidModel(format!("{:?}", report.failures)).into());
        }
    }
    Ok(loaded)
}

fn divisor_json(model_labels: &[sphemb_core::divisor_model::DivisorLabel], d: &Divisor) -> Value {
    let terms: Vec<Value> = model_labels
        .iter()
        .filter_map(|label| {
            let c = d.coefficient(label);
            (c != 0.into()).then(|| json!({ "label": label.id, "coefficient": int_to_value(&c) }))
        })
        .collect();
    json!({ "display": d.to_string(), "terms": terms })
}

fn character_json(chi: &Character) -> Value {
    let coords: Map<String, Value> = chi
        .lattice()
        .labels()
        .iter()
        .zip(chi.coords())
        .filter(|(_, c)| **c != 0.into())
        .map(|(l, c)| (l.clone(), int_to_value(c)))
        .collect();
    json!({ "display": chi.to_string(), "coordinates": coords })
}

fn dispatch(inv: &Invocation) -> Result<Value, Failure> {
    match &inv.command {
        Command::WonderfulSection { chi } => {
            let (k, l) = match family_spec(&inv.source)? {
                FamilySpec::Wonderful { k, l } => (k, l),
                other => {
                    return Err(usage(format!("wonderful-section needs a `wonderful:k=,l=` family, got `{other}`")))
                }
            };
            let model = WonderfulModel::synthetic(k, l)?;
            let chi = model.lattice().parse_character(chi)?;
            let d = wonderful_section_divisor(&model, &chi)?;
            Ok(json!({ "divisor": divisor_json(&model.color_labels(), &d), "character": character_json(&chi) }))
        }
        Command::Verify { oracle, trials, seed } => {
            if !oracle {
                return Err(usage("verify needs --oracle".into()));
            }
            verify(&load(&inv.source)?, *trials, *seed)
        }
        command => {
            let loaded = load(&inv.source)?;
            let model = loaded.model()?;
            let labels = model.labels();
            match command {
                Command::ClassGroup => {
                    let cl = class_group(model)?;
                    Ok(json!({
                        "free_rank": cl.presentation.free_rank,
                        "invariant_factors": cl.presentation.invariant_factors.iter().map(int_to_value).collect::<Vec<_>>(),
                        "generators": cl.generators,
                    }))
                }
                Command::Canonical => {
                    let k = canonical_divisor(model)?;
                    Ok(json!({ "divisor": divisor_json(&labels, &k), "class": class_of(model, &k)? }))
                }
                Command::Divisor { chi } => {
                    let chi = model.lattice().parse_character(chi)?;
                    let d = principal_divisor(model, &chi)?;
                    Ok(json!({ "divisor": divisor_json(&labels, &d), "character": character_json(&chi) }))
                }
                Command::Gorenstein => {
                    let witness = gorenstein_witness(model)?;
                    Ok(json!({
                        "gorenstein": witness.is_some(),
                        "witness_character": witness.as_ref().map(character_json),
                    }))
                }
                Command::ClassOf { divisor } => {
                    let d = model.parse_divisor(divisor)?;
                    let class = class_of(model, &d)?;
                    let witness = is_principal(model, &d)?;
                    Ok(json!({
                        "divisor": divisor_json(&labels, &d),
                        "class": class,
                        "principal": witness.is_some(),
                        "witness_character": witness.as_ref().map(character_json),
                    }))
                }
                Command::Model { dump } => {
                    if !dump {
                        return Err(usage("model needs --dump".into()));
                    }
                    Ok(serde_json::from_str(&model_to_json(model)).expect("model JSON"))
                }
                Command::Verify { .. } | Command::WonderfulSection { .. } => unreachable!(),
            }
        }
    }
}

fn verify(loaded: &Loaded, trials: usize, seed: u64) -> Result<Value, Failure> {
    let real = loaded.realization.as_ref().ok_or_else(|| Failure {
        code: EXIT_DOMAIN,
        message: "a model read from a file has no matrix realization to verify against".into(),
        result: None,
    })?;
    let mut report = OracleReport::new(real.family.clone(), Vec::new());
    if let Some(model) = &loaded.model {
        report.extend(oracle::verify_boundary_valuations(model, real, &real.semi_invariants, trials, seed)?);
    }
    report.extend(oracle::verify_stabilizer(real, trials, seed));
    let mut result = serde_json::to_value(&report).expect("serializable");
    if let Some(e) = &loaded.evidence {
        result["evidence"] = e.clone();
    }
    if report.passed {
        return Ok(result);
    }
    let failed = report.failures().count();
    let (code, what) = if report.is_unstable() {
        (EXIT_UNSTABLE, "oracle trials disagreed")
    } else {
        (EXIT_DOMAIN, "model and oracle disagree")
    };
    Err(Failure {
        code,
        message: format!("{what}: {failed} failing check(s)"),
        result: Some(result),
    })
}
