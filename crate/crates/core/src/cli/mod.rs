//! Command-line front end.

mod report;

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::decomp::{decompose_b, projective_a1, verma_flag, Catalogued};
use crate::error::{Error, Result};
use crate::module::{generalized_verma, simple, tensor, verma, Levi, TruncatedModule};
use crate::rootdata::{root_datum, CartanType, Weight};
use crate::suite;
use crate::tensorblocks::block_decompose;

pub use report::{dot_name, Format};

#[derive(Parser, Debug)]
#[command(name = "bgg", version, about = "Exact truncated highest-weight modules over sl2 and sl3")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Include full matrices and subspace bases in JSON output.
    #[arg(long)]
    emit_evidence: bool,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
struct ModuleSel {
    /// Verma module of the given highest weight.
    #[arg(long, allow_hyphen_values = true)]
    verma: Option<String>,
    /// Contravariant dual of a Verma module.
    #[arg(long, allow_hyphen_values = true)]
    dual: Option<String>,
    /// Simple module of the given highest weight.
    #[arg(long, allow_hyphen_values = true)]
    simple: Option<String>,
    /// Projective cover P(mu) of L(mu) for antidominant mu (rank one).
    #[arg(long, allow_hyphen_values = true)]
    projective: Option<String>,
    /// Generalized Verma module; the Levi set is given with --levi.
    #[arg(long, allow_hyphen_values = true)]
    generalized: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Acting {
    G,
    B,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a module and print its character and maximal vectors.
    Build {
        #[arg(long)]
        algebra: String,
        #[command(flatten)]
        module: ModuleSel,
        /// Simple roots of the Levi for --generalized, e.g. `0` or `0,1`.
        #[arg(long)]
        levi: Option<String>,
        #[arg(long, default_value_t = 8)]
        depth: u32,
        #[arg(long, value_enum, default_value_t = Acting::G)]
        acting: Acting,
        #[command(flatten)]
        out: Output,
    },
    /// Tensor two modules and decompose the product into blocks.
    Tensor {
        #[arg(long)]
        algebra: String,
        /// Left factor as KIND:WEIGHT with KIND one of verma, dual, simple, projective.
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
        /// Report only the block linked to this weight.
        #[arg(long, allow_hyphen_values = true)]
        block: Option<String>,
        #[arg(long, default_value_t = 8)]
        depth: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Decompose a catalogued module over the Borel subalgebra.
    Decompose {
        #[arg(long)]
        algebra: String,
        #[command(flatten)]
        module: ModuleSel,
        /// Defaults to 10 for A1 and 8 for A2.
        #[arg(long)]
        depth: Option<u32>,
        #[command(flatten)]
        out: Output,
    },
    /// Run the verification suite.
    VerifyPaper {
        /// Run only items whose name starts with this prefix, or one criterion by number.
        #[arg(long)]
        only: Option<String>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Include per-item timings in JSON output.
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        out: Output,
    },
}

/// A module named on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleSpec {
    Verma(Weight),
    Dual(Weight),
    Simple(Weight),
    /// `P(mu)`.
    Projective(Weight),
    Generalized(Weight, Levi),
}

impl ModuleSpec {
    fn weight(&self) -> &Weight {
        match self {
            ModuleSpec::Verma(w)
            | ModuleSpec::Dual(w)
            | ModuleSpec::Simple(w)
            | ModuleSpec::Projective(w)
            | ModuleSpec::Generalized(w, _) => w,
        }
    }

    fn validate(&self, ty: CartanType) -> Result<()> {
        let d = root_datum(ty);
        d.check_rank(self.weight())?;
        match self {
            ModuleSpec::Projective(mu) => {
                if ty != CartanType::A1 {
                    return Err(Error::Spec("projective modules are available for A1 only".into()));
                }
                projective_lambda(mu).map(|_| ())
            }
            ModuleSpec::Simple(w) if !d.is_dominant_integral(w) => {
                Err(Error::Spec(format!("simple modules need a dominant integral weight, not {w}")))
            }
            _ => Ok(()),
        }
    }

    pub fn build(&self, ty: CartanType, depth: u32) -> Result<TruncatedModule> {
        self.validate(ty)?;
        match self {
            ModuleSpec::Verma(w) => verma(ty, w, depth),
            ModuleSpec::Dual(w) => verma(ty, w, depth)?.dual(),
            ModuleSpec::Simple(w) => simple(ty, w, depth),
            ModuleSpec::Projective(mu) => projective_a1(&projective_lambda(mu)?, depth),
            ModuleSpec::Generalized(w, levi) => generalized_verma(ty, w, *levi, depth),
        }
    }

    /// The catalogue entry for this module, if it has a known Borel decomposition.
    pub fn catalogued(&self, ty: CartanType) -> Result<Catalogued> {
        self.validate(ty)?;
        let a1_only = |what: &str| {
            if ty == CartanType::A1 {
                Ok(())
            } else {
                Err(Error::Spec(format!("{what} modules are catalogued for A1 only")))
            }
        };
        match self {
            ModuleSpec::Verma(w) => {
                let (lambda, word) = dominant_and_word(ty, w)?;
                Ok(Catalogued::Verma { ty, lambda, word })
            }
            ModuleSpec::Dual(w) => {
                a1_only("dual Verma")?;
                Ok(Catalogued::DualVerma { lambda: w.clone() })
            }
            ModuleSpec::Simple(w) => {
                a1_only("simple")?;
                Ok(Catalogued::Simple { lambda: w.clone() })
            }
            ModuleSpec::Projective(mu) => Ok(Catalogued::Projective { lambda: projective_lambda(mu)? }),
            ModuleSpec::Generalized(..) => Err(Error::Spec("generalized Verma modules are not catalogued".into())),
        }
    }
}

impl std::fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModuleSpec::Verma(w) => write!(f, "verma:{w}"),
            ModuleSpec::Dual(w) => write!(f, "dual:{w}"),
            ModuleSpec::Simple(w) => write!(f, "simple:{w}"),
            ModuleSpec::Projective(w) => write!(f, "projective:{w}"),
            ModuleSpec::Generalized(w, l) => write!(f, "generalized:{w}:{:?}", l),
        }
    }
}

impl FromStr for ModuleSpec {
    type Err = Error;

    /// Parses `KIND:WEIGHT`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, w) = s.split_once(':').ok_or_else(|| Error::Spec(format!("expected KIND:WEIGHT, got `{s}`")))?;
        let w: Weight = w.parse()?;
        match kind.trim() {
            "verma" => Ok(ModuleSpec::Verma(w)),
            "dual" => Ok(ModuleSpec::Dual(w)),
            "simple" => Ok(ModuleSpec::Simple(w)),
            "projective" => Ok(ModuleSpec::Projective(w)),
            other => Err(Error::Spec(format!("unknown module kind `{other}`"))),
        }
    }
}

/// `lambda` with `P(mu)` the projective cover of `L(mu)`, `mu = -lambda - 2`.
fn projective_lambda(mu: &Weight) -> Result<Weight> {
    let m = mu.int_coords().filter(|c| c.len() == 1).ok_or_else(|| Error::Spec(format!("bad A1 weight {mu}")))?;
    let l = -m[0] - 2;
    if l < 0 {
        return Err(Error::Spec(format!("P({mu}) needs mu <= -2")));
    }
    Ok(Weight::from_ints(&[l]))
}

/// Dominant `lambda` and a reduced word `w` with `w . lambda = mu`.
pub fn dominant_and_word(ty: CartanType, mu: &Weight) -> Result<(Weight, Vec<usize>)> {
    let d = root_datum(ty);
    let lambda = d.linkage_rep(mu)?;
    if !d.is_dominant_integral(&lambda) {
        return Err(Error::Spec(format!("{mu} is not in the dot orbit of a dominant integral weight")));
    }
    let mut ws: Vec<&crate::rootdata::WeylElt> = d.weyl_group.iter().collect();
    ws.sort_by_key(|w| w.length());
    let w = ws.into_iter().find(|w| &d.dot_action(w, &lambda) == mu).expect("mu lies in the orbit");
    Ok((lambda, w.word.clone()))
}

fn parse_ty(s: &str) -> Result<CartanType> {
    s.parse()
}

fn parse_weight(s: &str) -> Result<Weight> {
    s.parse()
}

fn parse_levi(s: Option<&str>) -> Result<Levi> {
    let s = s.ok_or_else(|| Error::Spec("--generalized needs --levi".into()))?;
    let ix = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Spec(format!("bad Levi set `{s}`"))))
        .collect::<Result<Vec<usize>>>()?;
    Ok(Levi::from_indices(&ix))
}

impl ModuleSel {
    fn spec(&self, levi: Option<&str>) -> Result<ModuleSpec> {
        if let Some(w) = &self.verma {
            return Ok(ModuleSpec::Verma(parse_weight(w)?));
        }
        if let Some(w) = &self.dual {
            return Ok(ModuleSpec::Dual(parse_weight(w)?));
        }
        if let Some(w) = &self.simple {
            return Ok(ModuleSpec::Simple(parse_weight(w)?));
        }
        if let Some(w) = &self.projective {
            return Ok(ModuleSpec::Projective(parse_weight(w)?));
        }
        if let Some(w) = &self.generalized {
            return Ok(ModuleSpec::Generalized(parse_weight(w)?, parse_levi(levi)?));
        }
        Err(Error::Spec("no module selected".into()))
    }
}

/// Exit code for an error: 2 invalid input, 3 window or resource limits, 4 failed verification.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Window(_) | Error::Resource(_) => 3,
        Error::Verification(_)
        | Error::Undecided(_)
        | Error::NotSubmodule { .. }
        | Error::IrrationalEigenvalue(_)
        | Error::NotClosed
        | Error::NotUnital => 4,
        _ => 2,
    }
}

/// Result of a command: the report and whether all verification passed.
struct Done {
    json: Value,
    text: String,
    ok: bool,
}

fn envelope(command: &str, config: Value, body: Value) -> Value {
    let mut v = json!({"schema": "1", "command": command, "config": config});
    let o = v.as_object_mut().expect("object");
    if let Value::Object(b) = body {
        o.extend(b);
    }
    v
}

fn cmd_build(ty: CartanType, spec: &ModuleSpec, depth: u32, acting: Acting, out: &Output) -> Result<Done> {
    if depth < 1 {
        return Err(Error::Spec("depth must be at least 1".into()));
    }
    let mut m = spec.build(ty, depth)?;
    if acting == Acting::B {
        m = m.restrict(Levi::borel())?;
    }
    let config = json!({"algebra": ty.name(), "module": spec.to_string(), "depth": depth, "acting": m.acting_tag()});
    let body = report::module_json(&m, out.emit_evidence);
    Ok(Done { json: envelope("build", config, body), text: report::module_text(&m), ok: true })
}

fn cmd_tensor(ty: CartanType, left: &ModuleSpec, right: &ModuleSpec, block: Option<&Weight>, depth: u32) -> Result<Done> {
    let m = left.build(ty, depth)?;
    let n = right.build(ty, depth)?;
    let p = tensor(&m, &n, depth)?;
    let blocks = block_decompose(&p)?;
    let d = root_datum(ty);
    let want = block.map(|w| d.linkage_rep(w)).transpose()?;
    let mut rows = Vec::new();
    for (label, sub) in &blocks.blocks {
        if want.as_ref().is_some_and(|w| w != &label.rep) {
            continue;
        }
        let bm = sub.as_module(&p);
        let flag = verma_flag(&bm);
        rows.push(report::BlockRow { label: label.clone(), character: sub.character(&p), flag });
    }
    if let Some(w) = &want {
        if rows.is_empty() {
            rows.push(report::BlockRow {
                label: crate::tensorblocks::central_character(ty, w)?,
                character: crate::module::FormalCharacter::new(ty, p.top().clone(), depth),
                flag: None,
            });
        }
    }
    let config = json!({
        "algebra": ty.name(),
        "left": left.to_string(),
        "right": right.to_string(),
        "block": want.as_ref().map(crate::rootdata::weight_json),
        "depth": depth,
    });
    let body = report::tensor_json(&p, &rows, blocks.mechanism(), &blocks.degrees_used);
    Ok(Done { json: envelope("tensor", config, body), text: report::tensor_text(&p, &rows), ok: true })
}

fn cmd_decompose(ty: CartanType, spec: &ModuleSpec, depth: Option<u32>, out: &Output) -> Result<Done> {
    let depth = depth.unwrap_or(match ty {
        CartanType::A1 => 10,
        CartanType::A2 => 8,
    });
    let ctx = spec.catalogued(ty)?;
    let m = ctx.build(depth)?;
    let cert = decompose_b(&m, &ctx)?;
    let config = json!({"algebra": ty.name(), "module": ctx.name(), "depth": depth});
    let body = json!({"certificate": cert.to_json(out.emit_evidence)});
    Ok(Done { json: envelope("decompose", config, body), text: report::certificate_text(&ctx.name(), &cert), ok: cert.valid() })
}

fn cmd_verify(only: Option<&str>, threads: usize, timings: bool, out: &Output) -> Result<Done> {
    let items = suite::select(only);
    if items.is_empty() {
        return Err(Error::Spec(format!("no suite items match `{}`", only.unwrap_or_default())));
    }
    let results = suite::run(&items, threads, out.emit_evidence);
    let body = suite::report_json(&results, out.emit_evidence, timings);
    let ok = body["passed"].as_bool().unwrap_or(false);
    let config = json!({"only": only, "threads": threads});
    Ok(Done { json: envelope("verify-paper", config, body), text: report::suite_text(&results), ok })
}

fn dispatch(cli: &Cli) -> Result<(Done, Format)> {
    match &cli.command {
        Command::Build { algebra, module, levi, depth, acting, out } => {
            let ty = parse_ty(algebra)?;
            let spec = module.spec(levi.as_deref())?;
            Ok((cmd_build(ty, &spec, *depth, *acting, out)?, out.format))
        }
        Command::Tensor { algebra, left, right, block, depth, out } => {
            let ty = parse_ty(algebra)?;
            let (l, r): (ModuleSpec, ModuleSpec) = (left.parse()?, right.parse()?);
            let b = block.as_deref().map(parse_weight).transpose()?;
            Ok((cmd_tensor(ty, &l, &r, b.as_ref(), *depth)?, out.format))
        }
        Command::Decompose { algebra, module, depth, out } => {
            let ty = parse_ty(algebra)?;
            let spec = module.spec(None)?;
            Ok((cmd_decompose(ty, &spec, *depth, out)?, out.format))
        }
        Command::VerifyPaper { only, threads, timings, out } => {
            Ok((cmd_verify(only.as_deref(), *threads, *timings, out)?, out.format))
        }
    }
}

/// Run the command line and return the process exit code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(&cli) {
        Ok((done, format)) => {
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&done.json).expect("serializable")),
                Format::Text => print!("{}", done.text),
            }
            ExitCode::from(if done.ok { 0 } else { 4 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
