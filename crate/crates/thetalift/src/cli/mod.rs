//! Command-line front end. Every command prints one JSON document (or its
//! plain-text rendering) carrying `"schemaVersion": 1`.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on input
//! errors.

pub mod expr;
pub mod regress;

use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::arith::{int, parse_rational, rational_to_string, Q};
use crate::corpus::{self, HyperbolicExample};
use crate::error::{Error, Result};
use crate::hyperbolic::{
    congruence_check, phi_eval_hyperbolic, reflective_certificate, vector_system_check, wall_crossing_delta,
    weyl_vector, Convention, CuspFrame,
};
use crate::lattice::EvenLattice;
use crate::products::{chamber_point, datum_report, product_expansion, ray_coefficients, ProductDatum};
use crate::shimura::{lift_report, shimura_lift, ShimuraInput};
use crate::weilrep::{reduce_to_smaller, VectorValuedForm, WeilRepresentation};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "thetalift", version, about = "Exact computations for theta lifts")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Truncation order for q-expansions, as "p/q".
    #[arg(long, global = true)]
    pub prec: Option<String>,
    /// Treatment of the λ = 0 terms in the Weyl vector.
    #[arg(long, global = true, default_value = "boundary-included")]
    pub convention: String,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rank, signature, determinant and discriminant group of a lattice.
    LattInfo {
        /// A corpus name such as "E8" or "U+A1(-1)", or a lattice JSON file.
        #[arg(long)]
        lattice: String,
    },
    /// Theta series of a coset of a definite lattice.
    LattTheta {
        #[arg(long)]
        lattice: String,
        /// Coset vector as comma-separated rationals, or a coset JSON file.
        #[arg(long)]
        coset: Option<String>,
    },
    /// Checks the defining relations of the Weil representation.
    WeilCheck {
        #[arg(long)]
        lattice: String,
    },
    /// Checks a vector-valued form for exponent and symmetry consistency.
    VvfValidate {
        /// A bundled form name or a form JSON file.
        #[arg(long)]
        form: String,
    },
    /// Weyl vector of the chamber singled out by the frame witness.
    WeylVector {
        #[arg(long)]
        form: String,
        /// Frame JSON file {"z": [...], "zprime": [...], "witness": [...]}.
        #[arg(long)]
        frame: Option<String>,
    },
    /// Value of the piecewise linear function at a positive norm vector.
    WeylPhi {
        #[arg(long)]
        form: String,
        #[arg(long)]
        frame: Option<String>,
        /// Comma-separated rational coordinates.
        #[arg(long)]
        vector: String,
    },
    /// Change of the Weyl vector across a wall.
    WeylCrossing {
        #[arg(long)]
        form: String,
        /// Primitive integer wall vector, comma-separated.
        #[arg(long)]
        wall: String,
        /// A vector on the side of the wall where the crossing starts.
        #[arg(long)]
        side: String,
    },
    /// Divisibility of the theta constant term by 24.
    WeylCongruence {
        #[arg(long)]
        form: String,
        #[arg(long)]
        frame: Option<String>,
    },
    /// Reflective-lattice certificate.
    WeylReflective {
        #[arg(long)]
        form: String,
        #[arg(long)]
        frame: Option<String>,
    },
    /// Truncated product expansion at a cusp.
    LiftProduct {
        /// "level-two", "level-one", "fake-monster" or a datum JSON file.
        #[arg(long)]
        datum: String,
        /// Height vector in K coordinates; defaults to a chamber point.
        #[arg(long)]
        height_vector: Option<String>,
        #[arg(long, visible_alias = "height")]
        height_bound: String,
        /// Restrict to factors on the ray through this vector.
        #[arg(long)]
        ray: Option<String>,
    },
    /// Shimura-type lift of a plus-space coefficient stream.
    LiftShimura {
        /// "bundled" or a JSON file [{"exp": n, "val": "p/q"}, ...].
        #[arg(long, default_value = "bundled")]
        input: String,
        #[arg(long)]
        mplus: u32,
        /// Input coefficients are known below q^trunc.
        #[arg(long)]
        trunc: Option<i64>,
    },
    /// Evaluates a q-series expression such as "E4^3 / Delta".
    SeriesEval { expr: String },
    /// Runs the bundled regressions.
    PaperRegress {
        /// Only checks whose id starts with this prefix.
        #[arg(long)]
        filter: Option<String>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::LattInfo { .. } => "latt-info",
            Command::LattTheta { .. } => "latt-theta",
            Command::WeilCheck { .. } => "weil-check",
            Command::VvfValidate { .. } => "vvf-validate",
            Command::WeylVector { .. } => "weyl-vector",
            Command::WeylPhi { .. } => "weyl-phi",
            Command::WeylCrossing { .. } => "weyl-crossing",
            Command::WeylCongruence { .. } => "weyl-congruence",
            Command::WeylReflective { .. } => "weyl-reflective",
            Command::LiftProduct { .. } => "lift-product",
            Command::LiftShimura { .. } => "lift-shimura",
            Command::SeriesEval { .. } => "series-eval",
            Command::PaperRegress { .. } => "paper-regress",
        }
    }
}

/// Exit status and rendered output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let name = cli.command.name();
    match execute(cli) {
        Ok((ok, mut body)) => {
            if let Value::Object(map) = &mut body {
                map.insert("schemaVersion".into(), json!(SCHEMA_VERSION));
                map.insert("command".into(), json!(name));
                map.insert("ok".into(), json!(ok));
            }
            Outcome { code: if ok { 0 } else { 1 }, stdout: render(&body, cli.format), stderr: String::new() }
        }
        Err(e) => {
            let body = json!({
                "schemaVersion": SCHEMA_VERSION,
                "command": name,
                "error": e.to_string(),
            });
            Outcome { code: 2, stdout: String::new(), stderr: render(&body, cli.format) }
        }
    }
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            text_lines(v, "", &mut out);
            out
        }
    }
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Null => Some("-".into()),
        Value::Bool(_) | Value::Number(_) => Some(v.to_string()),
        _ => None,
    }
}

fn text_lines(v: &Value, indent: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar_text(x) {
                    Some(s) => out.push_str(&format!("{indent}{k}: {s}\n")),
                    None => match x {
                        Value::Array(a) if a.iter().all(|e| scalar_text(e).is_some()) => {
                            let items: Vec<String> = a.iter().filter_map(scalar_text).collect();
                            out.push_str(&format!("{indent}{k}: [{}]\n", items.join(", ")));
                        }
                        _ => {
                            out.push_str(&format!("{indent}{k}:\n"));
                            text_lines(x, &format!("{indent}  "), out);
                        }
                    },
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar_text(x) {
                    Some(s) => out.push_str(&format!("{indent}- {s}\n")),
                    None if x.as_array().is_some_and(|a| a.iter().all(|e| scalar_text(e).is_some())) => {
                        let items: Vec<String> = x.as_array().into_iter().flatten().filter_map(scalar_text).collect();
                        out.push_str(&format!("{indent}- [{}]\n", items.join(", ")));
                    }
                    None => {
                        out.push_str(&format!("{indent}-\n"));
                        text_lines(x, &format!("{indent}  "), out);
                    }
                }
            }
        }
        _ => out.push_str(&format!("{indent}{}\n", scalar_text(v).unwrap_or_default())),
    }
}

fn read_json(path: &str) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

fn is_file(s: &str) -> bool {
    Path::new(s).is_file()
}

fn parse_vector(s: &str) -> Result<Vec<Q>> {
    s.split(',').map(|t| parse_rational(t.trim())).collect()
}

fn parse_int_vector(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("{t:?} is not an integer"))))
        .collect()
}

fn json_vector(v: &Value) -> Result<Vec<Q>> {
    v.as_array()
        .ok_or_else(|| Error::Parse("expected an array of rationals".into()))?
        .iter()
        .map(crate::qseries::parse_json_rational)
        .collect()
}

fn json_int_vector(v: &Value) -> Result<Vec<i64>> {
    v.as_array()
        .ok_or_else(|| Error::Parse("expected an array of integers".into()))?
        .iter()
        .map(|x| x.as_i64().ok_or_else(|| Error::Parse("expected an integer".into())))
        .collect()
}

fn prec_or(cli: &Cli, default: i64) -> Result<Q> {
    let p = corpus::optional_rational(cli.prec.as_deref())?.unwrap_or_else(|| int(default));
    if !p.is_positive() {
        return Err(Error::Invalid("--prec must be positive".into()));
    }
    Ok(p)
}

fn resolve_lattice(s: &str) -> Result<EvenLattice> {
    if is_file(s) {
        EvenLattice::from_json(&read_json(s)?)
    } else {
        corpus::lattice(s)
    }
}

fn lattice_from_ref(v: &Value) -> Result<EvenLattice> {
    match v {
        Value::String(name) => corpus::lattice(name),
        Value::Object(_) => EvenLattice::from_json(v),
        _ => Err(Error::Parse("the lattice reference must be a name or {\"name\", \"gram\"}".into())),
    }
}

/// Bundled forms. Lorentzian ones come with their frame and witness.
pub const BUNDLED_FORMS: &[&str] = &[
    "ii19-e4sq",
    "ii117-e4",
    "ii125-leech",
    "ii125-e8cubed",
    "ii11-constant",
    "i119-theta-d6",
    "toy-u-a1",
    "a1-congruence",
    "level-two",
];

enum ResolvedForm {
    Hyperbolic(HyperbolicExample, Vec<Q>),
    Plain(VectorValuedForm),
}

impl ResolvedForm {
    fn form(&self) -> &VectorValuedForm {
        match self {
            ResolvedForm::Hyperbolic(ex, _) => &ex.form,
            ResolvedForm::Plain(f) => f,
        }
    }
}

fn bundled_form(name: &str, prec: &Q) -> Result<Option<ResolvedForm>> {
    let ex = match name {
        "ii19-e4sq" => corpus::ii_1_9_e4sq(prec)?,
        "ii117-e4" => corpus::ii_1_17_e4(prec)?,
        "ii125-leech" => corpus::ii_1_25_leech(prec)?,
        "ii125-e8cubed" => corpus::ii_1_25_e8cubed(prec)?,
        "ii11-constant" => corpus::ii_1_1_constant()?,
        "i119-theta-d6" => corpus::i_1_19_theta_d6(prec)?,
        "toy-u-a1" => {
            let ex = corpus::toy_u_plus_a1()?;
            return Ok(Some(ResolvedForm::Hyperbolic(ex, vec![Q::new(1.into(), 2.into())])));
        }
        "a1-congruence" => return Ok(Some(ResolvedForm::Plain(corpus::a1_congruence_form()))),
        "level-two" => return Ok(Some(ResolvedForm::Plain(corpus::level_two_form(prec)?))),
        _ => return Ok(None),
    };
    let mu = ex.generic_witness();
    Ok(Some(ResolvedForm::Hyperbolic(ex, mu)))
}

fn resolve_form(s: &str, prec: &Q) -> Result<ResolvedForm> {
    if is_file(s) {
        let v = read_json(s)?;
        let lat = lattice_from_ref(v.get("lattice").ok_or_else(|| Error::Parse("form needs a lattice".into()))?)?;
        return Ok(ResolvedForm::Plain(VectorValuedForm::from_json(&v, lat)?));
    }
    bundled_form(s, prec)?.ok_or_else(|| {
        Error::Parse(format!("{s:?} is neither a file nor a bundled form ({})", BUNDLED_FORMS.join(", ")))
    })
}

/// Frame and witness for a Lorentzian form: from `--frame` if given, else
/// the bundled frame, else the first basis vector as `z` with a generic
/// witness.
fn resolve_frame(form: &ResolvedForm, frame: Option<&str>) -> Result<(CuspFrame, Vec<Q>)> {
    let m = form.form().lattice();
    if let Some(path) = frame {
        let v = read_json(path)?;
        let z = json_int_vector(v.get("z").ok_or_else(|| Error::Parse("frame needs z".into()))?)?;
        let zp = v.get("zprime").map(json_vector).transpose()?;
        let f = CuspFrame::new(m, &z, zp.as_deref())?;
        let mu = match v.get("witness") {
            Some(w) => json_vector(w)?,
            None => corpus::witness_with_pairings(f.k(), 1000),
        };
        return Ok((f, mu));
    }
    match form {
        ResolvedForm::Hyperbolic(ex, mu) => Ok((ex.frame.clone(), mu.clone())),
        ResolvedForm::Plain(f) => {
            let mut z = vec![0i64; f.lattice().rank()];
            if z.is_empty() {
                return Err(Error::Invalid("the lattice has rank 0".into()));
            }
            z[0] = 1;
            let frame = CuspFrame::new(f.lattice(), &z, None)
                .map_err(|e| Error::Invalid(format!("no default frame ({e}); pass --frame")))?;
            let mu = corpus::witness_with_pairings(frame.k(), 1000);
            Ok((frame, mu))
        }
    }
}

fn convention(cli: &Cli) -> Result<Convention> {
    Convention::parse(&cli.convention)
}

fn resolve_datum(s: &str, prec: &Q, conv: Convention) -> Result<ProductDatum> {
    match s {
        "level-two" => return corpus::level_two_datum(prec),
        "level-one" => return corpus::level_one_datum(prec),
        "fake-monster" => return corpus::fake_monster_datum(prec),
        _ => {}
    }
    if !is_file(s) {
        return Err(Error::Parse(format!(
            "{s:?} is neither a file nor a bundled datum (level-two, level-one, fake-monster)"
        )));
    }
    let v = read_json(s)?;
    let fv = v.get("form").ok_or_else(|| Error::Parse("datum needs a form".into()))?;
    let form = match fv {
        Value::String(name) => resolve_form(name, prec)?.form().clone(),
        _ => {
            let lat = lattice_from_ref(fv.get("lattice").ok_or_else(|| Error::Parse("form needs a lattice".into()))?)?;
            VectorValuedForm::from_json(fv, lat)?
        }
    };
    let z = json_int_vector(v.get("z").ok_or_else(|| Error::Parse("datum needs z".into()))?)?;
    let z2 = json_int_vector(v.get("z2").ok_or_else(|| Error::Parse("datum needs z2".into()))?)?;
    let zp = v.get("zprime").map(json_vector).transpose()?;
    let witness = match v.get("witness") {
        Some(w) => json_vector(w)?,
        None => {
            let frame = CuspFrame::new(form.lattice(), &z, zp.as_deref())?;
            let kframe = CuspFrame::new(frame.k(), &z2, None)?;
            corpus::witness_with_pairings(kframe.k(), 3)
        }
    };
    ProductDatum::new(form, &z, zp.as_deref(), &z2, &witness, conv)
}

fn strings(v: &[Q]) -> Vec<String> {
    v.iter().map(rational_to_string).collect()
}

fn execute(cli: &Cli) -> Result<(bool, Value)> {
    match &cli.command {
        Command::LattInfo { lattice } => {
            let l = resolve_lattice(lattice)?;
            let d = l.discriminant_form();
            let (bp, bm) = l.signature();
            Ok((
                true,
                json!({
                    "lattice": l.to_json(),
                    "rank": l.rank(),
                    "signature": [bp, bm],
                    "determinant": l.det().to_string(),
                    "discriminantInvariants": d.invariants(),
                    "discriminantOrder": d.order(),
                    "level": d.level(),
                    "milgram": l.milgram_check(),
                }),
            ))
        }
        Command::LattTheta { lattice, coset } => {
            let l = resolve_lattice(lattice)?;
            let prec = prec_or(cli, 5)?;
            let c = match coset {
                None => vec![Q::zero(); l.rank()],
                Some(s) if is_file(s) => {
                    json_vector(read_json(s)?.get("coords").ok_or_else(|| Error::Parse("coset needs coords".into()))?)?
                }
                Some(s) => parse_vector(s)?,
            };
            if !l.is_dual_vector(&c) {
                return Err(Error::Invalid("the coset vector is not in the dual lattice".into()));
            }
            let t = l.theta_series(&c, &prec)?;
            Ok((true, json!({"lattice": l.name(), "coset": strings(&c), "series": t.to_json()})))
        }
        Command::WeilCheck { lattice } => {
            let l = resolve_lattice(lattice)?;
            let r = WeilRepresentation::build(&l.discriminant_form()).check_relations();
            let ok = r.all();
            Ok((
                ok,
                json!({
                    "lattice": l.name(),
                    "sSquaredIsZ": r.s_squared_is_z,
                    "stCubedIsZ": r.st_cubed_is_z,
                    "zFourthIsIdentity": r.z_fourth_is_identity,
                    "zAction": r.z_action,
                    "sSymmetric": r.s_symmetric,
                    "unitary": r.unitary,
                    "report": if ok { "relations hold" } else { "relations fail" },
                }),
            ))
        }
        Command::VvfValidate { form } => {
            let f = resolve_form(form, &prec_or(cli, 2)?)?;
            let issues = f.form().validate();
            Ok((issues.is_empty(), json!({"lattice": f.form().lattice().name(), "issues": issues})))
        }
        Command::WeylVector { form, frame } => {
            let f = resolve_form(form, &prec_or(cli, 2)?)?;
            let (fr, mu) = resolve_frame(&f, frame.as_deref())?;
            let w = weyl_vector(&fr, f.form(), &mu, convention(cli)?)?;
            Ok((true, json!({"lattice": f.form().lattice().name(), "weylVector": w.to_json()})))
        }
        Command::WeylPhi { form, frame, vector } => {
            let f = resolve_form(form, &prec_or(cli, 2)?)?;
            let (fr, mu) = resolve_frame(&f, frame.as_deref())?;
            let w = weyl_vector(&fr, f.form(), &mu, convention(cli)?)?;
            let v = parse_vector(vector)?;
            let (chamber, value) = phi_eval_hyperbolic(&w, f.form(), &v)?;
            Ok((
                true,
                json!({
                    "vector": strings(&v),
                    "value": rational_to_string(&value),
                    "chamberWeylVector": chamber.to_json(),
                }),
            ))
        }
        Command::WeylCrossing { form, wall, side } => {
            let f = resolve_form(form, &prec_or(cli, 2)?)?;
            let wall = parse_int_vector(wall)?;
            let side = parse_vector(side)?;
            let d = wall_crossing_delta(f.form(), &wall, &side)?;
            Ok((true, json!({"wall": wall, "side": strings(&side), "delta": strings(&d)})))
        }
        Command::WeylCongruence { form, frame } => {
            let f = resolve_form(form, &prec_or(cli, 2)?)?;
            let small = if f.form().lattice().is_negative_definite() || f.form().lattice().is_positive_definite() {
                f.form().clone()
            } else {
                let (fr, _) = resolve_frame(&f, frame.as_deref())?;
                reduce_to_smaller(f.form(), &fr)?
            };
            let r = congruence_check(&small)?;
            let vs = vector_system_check(&small).ok();
            Ok((
                r.divisible,
                json!({
                    "lattice": small.lattice().name(),
                    "constant": rational_to_string(&r.constant),
                    "ideal": r.ideal.to_string(),
                    "product": rational_to_string(&r.product),
                    "divisibleBy24": r.divisible,
                    "vectorSystem": vs.map(|v| json!({"holds": v.holds, "index": rational_to_string(&v.index)})),
                }),
            ))
        }
        Command::WeylReflective { form, frame } => {
            let f = resolve_form(form, &prec_or(cli, 2)?)?;
            let (fr, mu) = resolve_frame(&f, frame.as_deref())?;
            let r = reflective_certificate(&fr, f.form(), &mu, convention(cli)?)?;
            Ok((
                r.reflections_ok(),
                json!({
                    "lattice": f.form().lattice().name(),
                    "reflectionsPreserveLattice": r.reflections_ok(),
                    "failures": r.failures,
                    "norm": rational_to_string(&r.norm),
                    "classification": r.class.as_str(),
                    "weylVector": r.weyl.to_json(),
                }),
            ))
        }
        Command::LiftProduct { datum, height_vector, height_bound, ray } => {
            let d = resolve_datum(datum, &prec_or(cli, 3)?, convention(cli)?)?;
            let bound = parse_rational(height_bound)?;
            let h = match height_vector {
                Some(s) => parse_vector(s)?,
                None => chamber_point(&d)?,
            };
            let ray = ray.as_deref().map(parse_vector).transpose()?;
            let s = product_expansion(&d, &h, &bound, ray.as_deref())?;
            let mut body = json!({
                "datum": datum_report(&d)?,
                "heightVector": strings(&h),
                "heightBound": rational_to_string(&bound),
                "terms": s.to_json(),
            });
            if let Some(w) = &ray {
                let c: Vec<String> = ray_coefficients(&s, w)?.iter().map(|c| c.to_string()).collect();
                body["ray"] = json!({"direction": strings(w), "coefficients": c});
            }
            Ok((true, body))
        }
        Command::LiftShimura { input, mplus, trunc } => {
            let shim = if input == "bundled" {
                let (c, t) = corpus::shimura_stream();
                ShimuraInput::new(*mplus, c, trunc.unwrap_or(t))?
            } else {
                let v = read_json(input)?;
                let t = match trunc {
                    Some(t) => *t,
                    None => {
                        let top = v
                            .as_array()
                            .into_iter()
                            .flatten()
                            .filter_map(|r| r.get("exp").and_then(Value::as_i64))
                            .max()
                            .unwrap_or(0);
                        top + 1
                    }
                };
                ShimuraInput::from_json(*mplus, &v, t)?
            };
            let prec = match &cli.prec {
                Some(p) => {
                    let p = parse_rational(p)?;
                    if !p.is_integer() {
                        return Err(Error::Invalid("--prec must be an integer for the Shimura lift".into()));
                    }
                    p.to_integer().try_into().map_err(|_| Error::Invalid("--prec out of range".into()))?
                }
                None => shim.max_precision(),
            };
            let lift = shimura_lift(&shim, prec)?;
            Ok((true, lift_report(&shim, &lift)))
        }
        Command::SeriesEval { expr } => {
            let prec = prec_or(cli, 5)?;
            let s = expr::evaluate(expr, &prec)?;
            Ok((
                true,
                json!({
                    "expression": expr,
                    "constantTerm": rational_to_string(&s.constant_term()?),
                    "series": s.to_json(),
                }),
            ))
        }
        Command::PaperRegress { filter } => {
            let results = regress::run(filter.as_deref());
            let ok = results.iter().all(|r| r.passed);
            Ok((ok, regress::to_json(&results)))
        }
    }
}
