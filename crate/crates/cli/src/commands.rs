use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use nearweight::codes::{build_code, default_eval_places, dual_min_distance_upto, DualDistance};
use nearweight::near_weights::{complete_set_check, verify_axioms};
use nearweight::tables::{self, Preset};
use nearweight::{
    bounds, BoundEngine, DivisorVector, Error, FieldSpec, HermitianCurve, PathChoice, PlaceKind, RiemannRoch,
    Semigroup,
};
use thiserror::Error;

use crate::config::{ConfigError, EvalSelection, OutputFormat, PathKind, RunConfig};
use crate::{BoundArgs, Cli, Command};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("inconsistent field/curve settings: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Config(_) => 3,
            CliError::Inconsistent(_) => 4,
            CliError::Lib(e) => match e {
                Error::InvalidField(_) | Error::InvalidCurve(_) | Error::MixedFields => 4,
                Error::BoxTooSmall { .. } => 5,
                Error::Parse(_)
                | Error::ArityMismatch { .. }
                | Error::InvalidPoints(_)
                | Error::InvalidPath(_)
                | Error::EmptyLub
                | Error::NotAMember(_)
                | Error::NotInR { .. } => 6,
                _ => 8,
            },
            CliError::Io { .. } => 7,
        }
    }
}

pub enum Outcome {
    Success,
    SuiteFailed,
}

impl Outcome {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            Outcome::Success => ExitCode::SUCCESS,
            Outcome::SuiteFailed => ExitCode::from(1),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Merged settings plus the objects every command needs.
struct Session {
    cfg: RunConfig,
    rr: Arc<RiemannRoch>,
    format: OutputFormat,
    seed: u64,
}

impl Session {
    fn field(&self) -> &Arc<FieldSpec> {
        self.rr.curve().field()
    }

    fn divisor(&self, a: Option<&DivisorVector>) -> CliResult<DivisorVector> {
        let a = a.ok_or_else(|| CliError::Usage("this command needs --a".into()))?;
        if a.m() != self.rr.m() {
            return Err(Error::ArityMismatch { expected: self.rr.m(), got: a.m() }.into());
        }
        Ok(a.clone())
    }

    fn semigroup(&self) -> Arc<Semigroup> {
        Arc::new(Semigroup::new(self.rr.clone(), self.seed))
    }

    fn engine(&self, args: &BoundArgs) -> CliResult<BoundEngine> {
        let sg = self.semigroup();
        let engine = match args.bound.as_ref().or(self.cfg.bound_box.as_ref()) {
            Some(b) => BoundEngine::with_box(sg, b)?,
            None => BoundEngine::new(sg)?,
        };
        let mode = args.mode.or(self.cfg.bound_mode).unwrap_or_default();
        let rule = args.rule.or(self.cfg.bound_rule).unwrap_or_default();
        Ok(engine.with_mode(mode).with_rule(rule))
    }

    fn path_choice(&self, path: Option<PathKind>) -> PathChoice {
        match path.or(self.cfg.bound_path).unwrap_or_default() {
            PathKind::Default => PathChoice::Default,
            PathKind::Search => PathChoice::Search,
        }
    }
}

fn build_curve(cfg: &RunConfig, preset: Option<Preset>) -> CliResult<Arc<HermitianCurve>> {
    let q = match (preset.map(Preset::q), cfg.curve_q) {
        (Some(pq), Some(cq)) if pq != cq => {
            return Err(CliError::Inconsistent(format!("preset is defined over q = {pq} but curve.q = {cq}")))
        }
        (pq, cq) => pq.or(cq),
    };
    let field = match (cfg.field_p, cfg.field_e) {
        (Some(p), Some(e)) => Some(match &cfg.field_modulus {
            Some(m) => FieldSpec::new(p, e, m.clone())?,
            None => FieldSpec::builtin(p, e)?,
        }),
        (None, None) if cfg.field_modulus.is_some() => {
            return Err(CliError::Inconsistent("field.modulus needs field.p and field.e".into()))
        }
        (None, None) => None,
        _ => return Err(CliError::Inconsistent("field.p and field.e must be given together".into())),
    };
    let curve = match (q, field) {
        (Some(q), Some(f)) => HermitianCurve::with_field(q, f)?,
        (Some(q), None) => HermitianCurve::new(q)?,
        (None, Some(f)) => {
            if f.degree() % 2 != 0 {
                return Err(CliError::Inconsistent(format!(
                    "GF({}) is not a square field, so no Hermitian curve is defined over it",
                    f.order()
                )));
            }
            let q = f.characteristic().pow(f.degree() / 2);
            HermitianCurve::with_field(q, f)?
        }
        (None, None) => HermitianCurve::new(3)?,
    };
    Ok(Arc::new(curve))
}

fn session(cli: &Cli) -> CliResult<Session> {
    let cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let curve = build_curve(&cfg, cli.preset)?;
    let q_indices = cfg.points_q.clone().unwrap_or_else(|| vec![0, 1, 2]);
    let rr = Arc::new(RiemannRoch::new(curve, &q_indices)?);
    let format = cli.format.or(cfg.output_format).unwrap_or_default();
    let seed = cli.seed.or(cfg.seed).unwrap_or(0);
    Ok(Session { cfg, rr, format, seed })
}

fn tuple_csv(a: &DivisorVector) -> String {
    a.entries().iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn emit(text: &str, path: Option<&Path>) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io { path: p.to_path_buf(), source }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io { path: "<stdout>".into(), source })
        }
    }
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let s = session(cli)?;
    let mut outcome = Outcome::Success;
    let text = match &cli.command {
        Command::Places => places(&s),
        Command::Semigroup { bound } => semigroup(&s, bound)?,
        Command::Rr => rr(&s, &s.divisor(cli.a.as_ref())?)?,
        Command::Nu { k, bound } => nu(&s, &s.divisor(cli.a.as_ref())?, *k, bound)?,
        Command::Bound { path, bound } => {
            let a = s.divisor(cli.a.as_ref())?;
            let report = s.engine(bound)?.delta_bound(&a, &s.path_choice(*path))?;
            match s.format {
                OutputFormat::Csv => format!("{}\n", report.csv_row()),
                OutputFormat::Markdown => bounds::markdown(&[report]),
            }
        }
        Command::Table { path, bound } => {
            let preset = cli.preset.ok_or_else(|| CliError::Usage("table needs --preset t1|t2".into()))?;
            let rows = tables::run_table(&s.engine(bound)?, preset, &s.path_choice(*path))?;
            for note in rows.iter().flat_map(|r| r.discrepancies()) {
                eprintln!("note: {note}");
            }
            match s.format {
                OutputFormat::Csv => rows.iter().map(|r| format!("{}\n", r.computed.csv_row())).collect(),
                OutputFormat::Markdown => tables::markdown(&rows),
            }
        }
        Command::Code { eval, dual_dmax } => code(&s, &s.divisor(cli.a.as_ref())?, eval.as_ref(), *dual_dmax)?,
        Command::Check { suite, n } => {
            let (text, ok) = check(&s, suite, *n)?;
            if !ok {
                outcome = Outcome::SuiteFailed;
            }
            text
        }
    };
    let out = cli.out.as_deref().or(s.cfg.output_path.as_deref());
    emit(&text, out)?;
    Ok(outcome)
}

fn places(s: &Session) -> String {
    let curve = s.rr.curve();
    let f = s.field();
    let x0 = curve.x0_places();
    let rows: Vec<[String; 4]> = curve
        .places()
        .iter()
        .map(|p| {
            let role = match s.rr.q_places().iter().position(|&q| q == p.index) {
                Some(k) => format!("Q{}", k + 1),
                None if p.is_infinite() => "inf".to_string(),
                None if x0.contains(&p.index) => "x0".to_string(),
                None => "eval".to_string(),
            };
            let (x, y) = match p.kind {
                PlaceKind::Affine { x, y } => (f.format(x), f.format(y)),
                PlaceKind::Infinite => (String::new(), String::new()),
            };
            [p.index.to_string(), x, y, role]
        })
        .collect();
    match s.format {
        OutputFormat::Csv => rows.iter().map(|r| format!("{}\n", r.join(";"))).collect(),
        OutputFormat::Markdown => {
            let mut t = String::from("| index | x | y | role |\n|---|---|---|---|\n");
            for r in &rows {
                t.push_str(&format!("| {} | {} | {} | {} |\n", r[0], r[1], r[2], r[3]));
            }
            t
        }
    }
}

fn semigroup(s: &Session, bound: &DivisorVector) -> CliResult<String> {
    if bound.m() != s.rr.m() {
        return Err(Error::ArityMismatch { expected: s.rr.m(), got: bound.m() }.into());
    }
    let table = s.semigroup().box_table(bound)?;
    let flag = |b: bool| if b { "1" } else { "0" };
    let mut t = String::new();
    match s.format {
        OutputFormat::Csv => {
            let head: Vec<String> = (1..=bound.m()).map(|i| format!("a{i}")).collect();
            t.push_str(&format!("{},member,minimal\n", head.join(",")));
            for b in bound.box_points() {
                t.push_str(&format!("{},{},{}\n", tuple_csv(&b), flag(table.is_member(&b)), flag(table.is_minimal(&b))));
            }
        }
        OutputFormat::Markdown => {
            t.push_str("| a | member | minimal |\n|---|---|---|\n");
            for b in bound.box_points() {
                t.push_str(&format!("| {} | {} | {} |\n", b, flag(table.is_member(&b)), flag(table.is_minimal(&b))));
            }
        }
    }
    Ok(t)
}

fn rr(s: &Session, a: &DivisorVector) -> CliResult<String> {
    let basis = s.rr.rr_basis(a)?;
    let mut t = format!("dim L{} = {}\n", a, basis.dim());
    for (i, f) in basis.basis.iter().enumerate() {
        t.push_str(&format!("f{} = {}\n", i + 1, f.display(s.field())));
    }
    Ok(t)
}

fn nu(s: &Session, a: &DivisorVector, k: usize, args: &BoundArgs) -> CliResult<String> {
    if k == 0 || k > a.m() {
        return Err(CliError::Usage(format!("--k must be between 1 and {}", a.m())));
    }
    let (value, chain) = s.engine(args)?.nu(a, k - 1)?;
    let mut t = String::new();
    match s.format {
        OutputFormat::Csv => {
            t.push_str(&format!("{};{};{}\n", tuple_csv(a), k, value));
            for p in &chain.pairs {
                t.push_str(&format!("{};{}\n", tuple_csv(&p.u), tuple_csv(&p.v)));
            }
        }
        OutputFormat::Markdown => {
            t.push_str(&format!("nu_{k}{a} = {value}\n\n| u | v |\n|---|---|\n"));
            for p in &chain.pairs {
                t.push_str(&format!("| {} | {} |\n", p.u, p.v));
            }
        }
    }
    Ok(t)
}

fn code(s: &Session, a: &DivisorVector, eval: Option<&EvalSelection>, dual_dmax: Option<usize>) -> CliResult<String> {
    let places = match eval.or(s.cfg.points_eval.as_ref()).unwrap_or(&EvalSelection::All) {
        EvalSelection::All => default_eval_places(&s.rr),
        EvalSelection::List(l) => l.clone(),
    };
    let code = build_code(&s.rr, a, &places)?;
    eprintln!("n = {}, k = {}, dim L{} = {}", code.n(), code.rank, a, code.generator.rows());
    if let Some(w) = dual_dmax {
        match dual_min_distance_upto(&code, s.field(), w) {
            DualDistance::Exact { d, support } => {
                let cols: Vec<String> = support.iter().map(|&i| places[i].to_string()).collect();
                eprintln!("dual distance = {d} (dependent places {})", cols.join(","));
            }
            DualDistance::Above(w) => eprintln!("dual distance > {w}"),
        }
    }
    let f = s.field();
    Ok(match s.format {
        OutputFormat::Csv => code.matrix_csv(f),
        OutputFormat::Markdown => {
            let head: Vec<String> = places.iter().map(|p| format!("P{p}")).collect();
            let mut t = format!("| {} |\n|{}\n", head.join(" | "), "---|".repeat(places.len()));
            for r in 0..code.generator.rows() {
                let row: Vec<String> = code.generator.row(r).iter().map(|&e| f.format(e)).collect();
                t.push_str(&format!("| {} |\n", row.join(" | ")));
            }
            t
        }
    })
}

fn check(s: &Session, suite: &str, n: usize) -> CliResult<(String, bool)> {
    let sg = s.semigroup();
    let mut t = String::new();
    let mut ok = true;
    let mut line = |pass: bool, text: String| {
        ok &= pass;
        t.push_str(&format!("{} {}\n", if pass { "PASS" } else { "FAIL" }, text));
    };
    if suite == "axioms" || suite == "all" {
        let report = verify_axioms(&sg, n, s.seed)?;
        for c in &report.checks {
            let mut text = format!("{} trials={}", c.name, c.trials);
            if let Some(first) = c.violations.first() {
                text.push_str(&format!(" violations={} first: {first}", c.violations.len()));
            }
            line(c.violations.is_empty(), text);
        }
    }
    if suite == "complete" || suite == "all" {
        let report = complete_set_check(&sg)?;
        let gens: Vec<String> = report
            .semigroups
            .iter()
            .map(|h| {
                let g: Vec<String> = h.generators().iter().map(u32::to_string).collect();
                format!("<{}>", g.join(","))
            })
            .collect();
        line(
            report.passed(),
            format!(
                "complete-set dim_L0={} constants_only={} semigroups={}",
                report.dim_l0,
                report.constants_only,
                gens.join(";")
            ),
        );
    }
    Ok((t, ok))
}
