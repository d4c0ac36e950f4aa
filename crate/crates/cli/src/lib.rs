//! Command dispatch for the `grext` binary.
//!
//! Exit codes: 0 success or property holds, 1 property fails, 2 hypothesis
//! or precondition failure, 3 undecided within the bounds, 4 parse or
//! internal error.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use grext::constructions::{certify_k2_pipeline, expected_freeprod_ext, free_product, freeprod_hilbert_check, ConstructionError};
use grext::field::{Field, FieldSpec};
use grext::format::{parse_presentation, print_presentation, FormatError, PresentationFile, RawPresentation};
use grext::groebner::{associated_graded, complete, GroebnerError, Presentation};
use grext::resolution::anngraph::{annihilator_graph, export_dot, resolution_from_graph, Seed};
use grext::resolution::{algebra_betti, cyclic_module_betti, BettiError, BettiTable};
use grext::with_field;
use grext::word::Poly;
use grext::yoneda::analyze;
use grext::yoneda::generation::check_k2;
use grext::yoneda::monomial::check_almost_linear;
use grext::yoneda::verdict::{check_2d_determined, check_d_koszul, check_koszul, Outcome, Verdict, Witness};

#[derive(Debug, Parser)]
#[command(name = "grext", version, about = "Gröbner bases, resolutions and Yoneda algebras of graded algebras")]
pub struct Cli {
    #[command(flatten)]
    pub opts: Options,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Largest cohomological degree.
    #[arg(long, global = true, default_value_t = 6)]
    pub imax: usize,
    /// Largest internal degree.
    #[arg(long, global = true, default_value_t = 12)]
    pub jmax: usize,
    /// Coefficient field: a prime or `Q`. Overrides the file's field line.
    #[arg(long, global = true, value_parser = parse_field)]
    pub field: Option<FieldSpec>,
    /// JSON output.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced Gröbner basis up to `--jmax`.
    Gb { file: PathBuf },
    /// Dimensions of the graded pieces up to `--jmax`.
    Hilbert { file: PathBuf },
    /// Betti table of the trivial module.
    Betti { file: PathBuf },
    /// Associated graded presentation.
    Gr { file: PathBuf },
    /// Annihilator graph of a monomial algebra.
    Anngraph {
        file: PathBuf,
        /// Where to write the DOT graph (`-` for standard output).
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Seed with the `[gd]` words over the algebra of `[g2]`.
        #[arg(long)]
        quotient_by: Option<Group>,
    },
    /// Betti table of `R = A/A·g_d` over `A = T(V)/⟨g2⟩`.
    Modres {
        file: PathBuf,
        #[arg(long, default_value = "gd")]
        quotient_by: Group,
    },
    /// Check a homological property.
    Check {
        property: Property,
        file: PathBuf,
        #[arg(long)]
        d: Option<usize>,
    },
    /// Free product of two presentations.
    Freeprod { file1: PathBuf, file2: PathBuf },
    /// Certify the K2 property from the `[g2]`/`[gd]` split.
    CertifyK2 {
        file: PathBuf,
        #[arg(long)]
        d: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Group {
    Gd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Koszul,
    Dkoszul,
    #[value(name = "2d")]
    TwoD,
    K2,
    AlmostLinear,
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    if s == "Q" || s == "QQ" {
        return Ok(FieldSpec::Rationals);
    }
    let p: u64 = s.parse().map_err(|_| format!("`{s}` is neither a prime nor Q"))?;
    FieldSpec::prime(p).map_err(|e| e.to_string())
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{}:{}: {}", .source.line, .source.col, .source.msg)]
    Parse { path: String, source: FormatError },
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Betti(#[from] BettiError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("{0}")]
    Precondition(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Precondition(_) => 2,
            _ => 4,
        }
    }
}

/// What a command prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn ok(stdout: String) -> Self {
        CommandResult { code: 0, stdout, stderr: String::new() }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let shown = e.render().to_string();
            if e.use_stderr() {
                CommandResult { code: 4, stdout: String::new(), stderr: shown }
            } else {
                CommandResult::ok(shown)
            }
        }
    }
}

pub fn execute(cli: &Cli) -> CommandResult {
    dispatch(cli).unwrap_or_else(|e| CommandResult { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") })
}

fn read_raw(path: &Path) -> Result<RawPresentation, CliError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: shown.clone(), source })?;
    parse_presentation(&text).map_err(|source| CliError::Parse { path: shown, source })
}

fn load<F: Field>(raw: &RawPresentation, f: F, path: &Path) -> Result<PresentationFile<F>, CliError> {
    raw.to_field(f).map_err(|source| CliError::Parse { path: path.display().to_string(), source })
}

fn dispatch(cli: &Cli) -> Result<CommandResult, CliError> {
    let o = &cli.opts;
    match &cli.command {
        Command::Freeprod { file1, file2 } => {
            let (r1, r2) = (read_raw(file1)?, read_raw(file2)?);
            let spec = o.field.unwrap_or(r1.field);
            if o.field.is_none() && r1.field != r2.field {
                return Err(CliError::Precondition(format!("fields differ: {} and {}", r1.field, r2.field)));
            }
            with_field!(spec, |f| freeprod(o, load(&r1, f, file1)?, load(&r2, f, file2)?))
        }
        Command::Gb { file }
        | Command::Hilbert { file }
        | Command::Betti { file }
        | Command::Gr { file }
        | Command::Anngraph { file, .. }
        | Command::Modres { file, .. }
        | Command::Check { file, .. }
        | Command::CertifyK2 { file, .. } => {
            let raw = read_raw(file)?;
            let spec = o.field.unwrap_or(raw.field);
            with_field!(spec, |f| single(o, &cli.command, load(&raw, f, file)?))
        }
    }
}

fn single<F: Field>(o: &Options, cmd: &Command, file: PresentationFile<F>) -> Result<CommandResult, CliError> {
    let p = &file.presentation;
    match cmd {
        Command::Gb { .. } => gb(o, p),
        Command::Hilbert { .. } => hilbert(o, p),
        Command::Betti { .. } => Ok(CommandResult::ok(table_output(o, p.field.spec(), &algebra_betti(p, o.imax, o.jmax)?))),
        Command::Gr { .. } => {
            let (gr, complete) = associated_graded(p, o.jmax.max(p.max_degree()))?;
            let text = print_presentation(&PresentationFile { presentation: gr, g2: None, gd: None });
            if o.json {
                Ok(CommandResult::ok(json_line(&json!({ "field": p.field.spec(), "complete": complete, "presentation": text }))))
            } else {
                Ok(CommandResult::ok(text))
            }
        }
        Command::Anngraph { dot, quotient_by, .. } => anngraph(o, &file, dot.as_deref(), quotient_by.is_some()),
        Command::Modres { .. } => {
            let (a, gd) = split(&file)?;
            Ok(CommandResult::ok(table_output(o, p.field.spec(), &cyclic_module_betti(&a, &gd, o.imax, o.jmax)?)))
        }
        Command::Check { property, d, .. } => check(o, &file, *property, *d),
        Command::CertifyK2 { d, .. } => certify(o, &file, *d),
        Command::Freeprod { .. } => unreachable!("two-file command"),
    }
}

fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

fn table_json(t: &BettiTable) -> Value {
    let entries: Vec<Value> = t
        .entries()
        .map(|((i, j), v)| json!({ "i": i, "j": j, "dim": v, "certified": t.certified(i) }))
        .collect();
    json!({ "imax": t.imax(), "jmax": t.jmax(), "entries": entries })
}

fn table_output(o: &Options, spec: FieldSpec, t: &BettiTable) -> String {
    if o.json {
        let mut v = table_json(t);
        v["field"] = json!(spec);
        json_line(&v)
    } else {
        t.to_csv()
    }
}

fn verdict_json(v: &Verdict, spec: FieldSpec) -> Value {
    let mut j = serde_json::to_value(v).expect("serializable");
    j["field"] = json!(spec);
    j
}

fn verdict_text(v: &Verdict, spec: FieldSpec) -> String {
    let what = match &v.outcome {
        Outcome::Holds => "holds".to_string(),
        Outcome::Fails { witness } => format!("fails, witness {}", witness_text(witness)),
        Outcome::Undecided { bidegrees } => {
            let b: Vec<String> = bidegrees.iter().map(|(i, j)| format!("({i},{j})")).collect();
            format!("undecided at {}", b.join(" "))
        }
        Outcome::Refused { reason, witness } => match witness {
            Some(w) => format!("refused: {reason}, {}", witness_text(w)),
            None => format!("refused: {reason}"),
        },
    };
    let mut s = format!("{}: {what} [imax {}, jmax {}, field {spec}]\n", v.property, v.imax, v.jmax);
    for n in &v.notes {
        s.push_str(&format!("  {n}\n"));
    }
    s
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::Bidegree { i, j } => format!("({i},{j})"),
        Witness::Word { word } => word.clone(),
        Witness::Clause { clause, detail: Some(d) } => format!("{clause}: {d}"),
        Witness::Clause { clause, detail: None } => clause.clone(),
    }
}

fn verdict_result(o: &Options, v: &Verdict, spec: FieldSpec) -> CommandResult {
    let stdout = if o.json { json_line(&verdict_json(v, spec)) } else { verdict_text(v, spec) };
    CommandResult { code: v.exit_code(), stdout, stderr: String::new() }
}

fn gb<F: Field>(o: &Options, p: &Presentation<F>) -> Result<CommandResult, CliError> {
    let g = complete(p, o.jmax.max(p.max_degree()))?;
    let elems: Vec<String> = g.elements().iter().map(|e| e.format(&p.field, &p.alphabet)).collect();
    if o.json {
        return Ok(CommandResult::ok(json_line(&json!({
            "field": p.field.spec(),
            "truncation": g.truncation_degree(),
            "complete": g.complete_at_truncation(),
            "closed": g.closed(),
            "elements": elems,
        }))));
    }
    let mut s = String::new();
    for e in &elems {
        s.push_str(e);
        s.push('\n');
    }
    s.push_str(&format!(
        "# {} elements, complete through degree {}: {}, closed: {}\n",
        elems.len(),
        g.truncation_degree(),
        g.complete_at_truncation(),
        g.closed()
    ));
    Ok(CommandResult::ok(s))
}

fn hilbert<F: Field>(o: &Options, p: &Presentation<F>) -> Result<CommandResult, CliError> {
    let g = complete(p, o.jmax.max(p.max_degree()))?;
    let h = g.automaton().count_normal(o.jmax);
    if o.json {
        let dims: Vec<String> = h.iter().map(|x| x.to_string()).collect();
        return Ok(CommandResult::ok(json_line(&json!({
            "field": p.field.spec(),
            "jmax": o.jmax,
            "complete": g.complete_at_truncation(),
            "dims": dims,
        }))));
    }
    let mut s = String::from("j,dim\n");
    for (j, d) in h.iter().enumerate() {
        s.push_str(&format!("{j},{d}\n"));
    }
    Ok(CommandResult::ok(s))
}

/// `A = T(V)/⟨g2⟩` and the `[gd]` generators.
fn split<F: Field>(file: &PresentationFile<F>) -> Result<(Presentation<F>, Vec<Poly<F::Elem>>), CliError> {
    match (&file.g2, &file.gd) {
        (Some(g2), Some(gd)) => Ok((file.presentation.with_relations(g2.clone())?, gd.clone())),
        _ => Err(CliError::Precondition("the file has no [g2]/[gd] groups".into())),
    }
}

fn anngraph<F: Field>(
    o: &Options,
    file: &PresentationFile<F>,
    dot: Option<&Path>,
    module: bool,
) -> Result<CommandResult, CliError> {
    let (a, seed) = if module {
        let (a, gd) = split(file)?;
        let mut words = Vec::new();
        for g in &gd {
            match g.terms() {
                [(w, _)] => words.push(w.clone()),
                _ => return Err(CliError::Precondition("the [gd] relations must be monomials".into())),
            }
        }
        (a, Seed::ModuleGens(words))
    } else {
        (file.presentation.clone(), Seed::Augmentation)
    };
    let g = complete(&a, o.jmax.max(a.max_degree()))?;
    if !g.is_monomial() || !g.complete_at_truncation() {
        return Err(CliError::Precondition("annihilator graphs need a monomial algebra".into()));
    }
    let graph = annihilator_graph(&a.alphabet, g.tips(), &seed);
    let text = export_dot(&graph);
    let t = resolution_from_graph(&graph, o.imax, o.jmax);
    let mut stdout = table_output(o, a.field.spec(), &t);
    match dot {
        Some(p) if p == Path::new("-") => stdout = text,
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io { path: p.display().to_string(), source })?,
        None => {}
    }
    Ok(CommandResult::ok(stdout))
}

fn need_d(d: Option<usize>) -> Result<usize, CliError> {
    d.ok_or_else(|| CliError::Precondition("this check needs --d".into()))
}

fn check<F: Field>(o: &Options, file: &PresentationFile<F>, prop: Property, d: Option<usize>) -> Result<CommandResult, CliError> {
    let p = &file.presentation;
    let spec = p.field.spec();
    let v = match prop {
        Property::Koszul => check_koszul(&algebra_betti(p, o.imax, o.jmax)?),
        Property::Dkoszul => check_d_koszul(&algebra_betti(p, o.imax, o.jmax)?, &p.relation_degrees(), need_d(d)?),
        Property::TwoD => check_2d_determined(&algebra_betti(p, o.imax, o.jmax)?, &p.relation_degrees(), need_d(d)?),
        Property::K2 => check_k2(&analyze(p, o.imax, o.jmax)?.1),
        Property::AlmostLinear => {
            let (a, gd) = split(file)?;
            check_almost_linear(&a, &gd, need_d(d)?, o.imax, o.jmax)?.0
        }
    };
    Ok(verdict_result(o, &v, spec))
}

fn certify<F: Field>(o: &Options, file: &PresentationFile<F>, d: Option<usize>) -> Result<CommandResult, CliError> {
    let (a, gd) = split(file)?;
    let g2 = a.relations.clone();
    let d = match d {
        Some(d) => d,
        None => gd
            .first()
            .and_then(|g| g.homogeneous_degree())
            .ok_or_else(|| CliError::Precondition("[gd] is empty; pass --d".into()))?,
    };
    let p = &file.presentation;
    let r = certify_k2_pipeline(&p.field, &p.alphabet, &g2, &gd, d, o.imax, o.jmax)?;
    let spec = p.field.spec();
    #[derive(Serialize)]
    struct Out<'a> {
        field: FieldSpec,
        #[serde(flatten)]
        report: &'a grext::constructions::PipelineReport,
    }
    let stdout = if o.json {
        json_line(&serde_json::to_value(Out { field: spec, report: &r }).expect("serializable"))
    } else {
        let mut s = String::new();
        for c in &r.clauses {
            s.push_str(&format!("{}: {}", c.name, if c.holds { "yes" } else { "no" }));
            if let Some(d) = &c.detail {
                s.push_str(&format!(" ({d})"));
            }
            s.push('\n');
        }
        s.push_str(&verdict_text(&r.verdict, spec));
        if let Some(x) = &r.cross_check {
            s.push_str(&verdict_text(x, spec));
        }
        s
    };
    Ok(CommandResult { code: r.verdict.exit_code(), stdout, stderr: String::new() })
}

fn freeprod<F: Field>(o: &Options, a: PresentationFile<F>, b: PresentationFile<F>) -> Result<CommandResult, CliError> {
    let (pa, pb) = (&a.presentation, &b.presentation);
    let c = free_product(pa, pb).combined;
    let h = freeprod_hilbert_check(pa, pb, o.jmax)?;
    let tc = algebra_betti(&c, o.imax, o.jmax)?;
    let predicted = expected_freeprod_ext(&algebra_betti(pa, o.imax, o.jmax)?, &algebra_betti(pb, o.imax, o.jmax)?);
    let diff = tc.first_difference(&predicted);
    let code = if h.holds() && diff.is_none() { 0 } else { 1 };
    let text = print_presentation(&PresentationFile { presentation: c.clone(), g2: None, gd: None });
    let stdout = if o.json {
        json_line(&json!({
            "field": c.field.spec(),
            "presentation": text,
            "hilbert_identity": h.holds(),
            "hilbert_first_mismatch": h.first_mismatch,
            "betti": table_json(&tc),
            "prediction_first_difference": diff,
        }))
    } else {
        let mut s = text;
        s.push_str(&format!("# hilbert identity through degree {}: {}\n", o.jmax, h.holds()));
        match diff {
            None => s.push_str("# betti table matches the sum of the factors\n"),
            Some((i, j)) => s.push_str(&format!("# betti table differs from the sum of the factors at ({i},{j})\n")),
        }
        s
    };
    Ok(CommandResult { code, stdout, stderr: String::new() })
}
