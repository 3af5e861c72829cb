use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use monosing::gluing::{bar_presentation, equivalence_report, glue, Involution};
use monosing::gorenstein::{
    gorenstein_report, is_one_gorenstein, singularity_decomposition, GorensteinReport, OrbitEntry,
};
use monosing::graded::graded_report;
use monosing::oracle::{
    crosscheck_classification, simple_rep, tilting_check, DimStatus, InjectiveDimensionProfile, Oracle,
    ResolutionTrace, Termination,
};
use monosing::perfection::perfection_report;
use monosing::presentation::PresentationEcho;
use monosing::{Error, MonomialPresentation};

#[derive(Parser)]
#[command(name = "monosing", version)]
#[command(about = "Perfect paths, Gorenstein projectives and singularity categories of monomial algebras")]
struct Cli {
    /// Emit JSON instead of aligned text
    #[arg(long, global = true)]
    json: bool,

    /// Print elapsed wall time on stderr
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Everything at once
    Info { file: PathBuf },
    /// Nonzero paths, canonical order
    Basis { file: PathBuf },
    /// Perfect pairs, perfect paths and their cycles
    Perfect { file: PathBuf },
    /// Indecomposable non-projective Gorenstein projectives `Ap`
    Gproj { file: PathBuf },
    /// 1-Gorenstein test, relation cycles, Nakayama and gentle checks
    Gorenstein { file: PathBuf },
    /// Singularity category as a product of orbit categories
    Singcat { file: PathBuf },
    /// Graded tilting data: Ω(T) and Q^B
    Graded { file: PathBuf },
    /// Glue vertex pairs
    Glue {
        file: PathBuf,
        /// Pairs to identify, e.g. "3:6,1:4"
        #[arg(long)]
        pairs: String,
        /// Compare invariants of S and S_E instead of printing S_E
        #[arg(long)]
        report: bool,
        /// Print the bar quiver (one new arrow per pair) instead of S_E
        #[arg(long, conflicts_with = "report")]
        bar: bool,
    },
    /// Homological cross-checks over the rationals
    Oracle {
        file: PathBuf,
        #[arg(long, value_enum)]
        check: Check,
        /// Highest Ext degree for the tilting check (default 2·dim A)
        #[arg(long)]
        window: Option<usize>,
        /// Resolution length cap for traces (default dim A + #vertices)
        #[arg(long)]
        cutoff: Option<usize>,
        /// Include resolution traces of the simples
        #[arg(long)]
        trace: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Classification,
    Tilting,
    Gorenstein,
}

/// Exit 1: the analysis declined or a check failed. Exit 2: bad input.
enum Failure {
    Refused(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. }
            | Error::DuplicateIdentifier { .. }
            | Error::UnknownVertex { .. }
            | Error::UnknownArrow { .. }
            | Error::NonComposableRelation { .. }
            | Error::RelationTooShort { .. }
            | Error::InfiniteDimensional { .. }
            | Error::InvalidInvolution(_)
            | Error::DegreeOutOfRange { .. } => Failure::Input(e.to_string()),
            _ => Failure::Refused(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli);
    if cli.timing {
        eprintln!("elapsed_ms: {}", start.elapsed().as_millis());
    }
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Refused(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}

fn load(file: &PathBuf) -> Result<MonomialPresentation, Failure> {
    let text = std::fs::read_to_string(file).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
    let pres = MonomialPresentation::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
    pres.enumerate_basis()?;
    Ok(pres)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Two-column text, keys padded to a common width.
#[derive(Default)]
struct Table {
    rows: Vec<(String, String)>,
}

impl Table {
    fn row(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.rows.push((key.to_string(), value.to_string()));
        self
    }

    fn render(&self) -> String {
        let width = self.rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in &self.rows {
            let pad = width - k.chars().count();
            writeln!(out, "{k}{}  {v}", " ".repeat(pad)).unwrap();
        }
        out
    }
}

fn list(items: &[String]) -> String {
    if items.is_empty() {
        "—".into()
    } else {
        items.join(", ")
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Info { file } => info(&load(file)?, cli.json),
        Command::Basis { file } => basis(&load(file)?, cli.json),
        Command::Perfect { file } => perfect(&load(file)?, cli.json),
        Command::Gproj { file } => gproj(&load(file)?, cli.json),
        Command::Gorenstein { file } => gorenstein(&load(file)?, cli.json),
        Command::Singcat { file } => singcat(&load(file)?, cli.json),
        Command::Graded { file } => graded(&load(file)?, cli.json),
        Command::Glue {
            file,
            pairs,
            report,
            bar,
        } => glue_cmd(&load(file)?, pairs, *report, *bar, cli.json),
        Command::Oracle {
            file,
            check,
            window,
            cutoff,
            trace,
        } => oracle_cmd(&load(file)?, *check, *window, *cutoff, *trace, cli.json),
    }
}

#[derive(Serialize)]
struct AnalysisReport {
    presentation: PresentationEcho,
    dimension: usize,
    relations: Vec<String>,
    perfect: monosing::perfection::PerfectionReport,
    gorenstein: GorensteinReport,
    graded: Option<monosing::graded::GradedReport>,
    oracle: OracleSummary,
}

#[derive(Serialize)]
struct OracleSummary {
    profile: InjectiveDimensionProfile,
    global_dimension: DimStatus,
}

fn oracle_summary(pres: &MonomialPresentation) -> Result<OracleSummary, Failure> {
    let oracle = Oracle::new(pres)?;
    Ok(OracleSummary {
        profile: oracle.profile()?,
        global_dimension: oracle.global_dimension()?,
    })
}

fn relations(pres: &MonomialPresentation) -> Vec<String> {
    pres.minimal_relations().iter().map(|f| pres.display_path(f)).collect()
}

fn profile_text(p: &InjectiveDimensionProfile) -> String {
    match p.level {
        Some(l) => format!(
            "Gorenstein, level {l} (pd D(A) = {}, id A = {})",
            p.pd_of_dual, p.id_of_regular
        ),
        None => format!(
            "not Gorenstein (pd D(A) = {}, id A = {})",
            p.pd_of_dual, p.id_of_regular
        ),
    }
}

fn info(pres: &MonomialPresentation, as_json: bool) -> Outcome {
    let gorenstein = gorenstein_report(pres)?;
    let report = AnalysisReport {
        presentation: pres.echo(),
        dimension: pres.dimension()?,
        relations: relations(pres),
        perfect: perfection_report(pres)?,
        graded: if gorenstein.one_gorenstein {
            Some(graded_report(pres)?)
        } else {
            None
        },
        gorenstein,
        oracle: oracle_summary(pres)?,
    };
    if as_json {
        return Ok(json(&report));
    }
    let q = pres.quiver();
    let arrows: Vec<String> = q
        .arrows()
        .iter()
        .map(|a| format!("{}: {}→{}", a.name, q.vertex_name(a.source), q.vertex_name(a.target)))
        .collect();
    let mut t = Table::default();
    t.row("vertices", q.vertex_names().join(" "))
        .row("arrows", list(&arrows))
        .row("relations", list(&report.relations))
        .row("dimension", report.dimension)
        .row("perfect paths", perfect_paths_text(&report.perfect))
        .row("cycles", cycles_text(&report.perfect.cycles))
        .row("cm type", report.perfect.cm_type)
        .row("1-Gorenstein", one_gorenstein_text(&report.gorenstein));
    if let Some(s) = &report.gorenstein.singularity {
        t.row("singcat", orbit_text(s));
    }
    if let Some(g) = &report.graded {
        t.row("Q^B", qb_text(g));
    }
    t.row("oracle", profile_text(&report.oracle.profile))
        .row("gldim", report.oracle.global_dimension);
    Ok(t.render())
}

fn perfect_paths_text(r: &monosing::perfection::PerfectionReport) -> String {
    list(&r.gp_modules.iter().map(|g| g.generator.clone()).collect::<Vec<_>>())
}

fn cycles_text(cycles: &[Vec<String>]) -> String {
    if cycles.is_empty() {
        return "—".into();
    }
    cycles
        .iter()
        .map(|c| format!("({})", c.join(" ")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn one_gorenstein_text(g: &GorensteinReport) -> String {
    match &g.witness {
        None => "yes".into(),
        Some(w) => format!("no (p={}, q={}, relation {})", w.p, w.q, w.relation),
    }
}

fn orbit_text(s: &[OrbitEntry]) -> String {
    if s.is_empty() {
        return "0".into();
    }
    s.iter()
        .map(|o| format!("D^b(A_{})/[tau^{}]", o.rank, o.period))
        .collect::<Vec<_>>()
        .join(" × ")
}

fn qb_text(g: &monosing::graded::GradedReport) -> String {
    match &g.qb {
        Some(qb) if !qb.chains.is_empty() => qb
            .chains
            .iter()
            .map(|c| format!("A_{}", c.len()))
            .collect::<Vec<_>>()
            .join(" ⊔ "),
        _ => "∅".into(),
    }
}

#[derive(Serialize)]
struct BasisReport {
    dimension: usize,
    paths: Vec<String>,
}

fn basis(pres: &MonomialPresentation, as_json: bool) -> Outcome {
    let b = pres.enumerate_basis()?;
    let report = BasisReport {
        dimension: b.dimension(),
        paths: b.paths().iter().map(|p| pres.display_path(p)).collect(),
    };
    if as_json {
        return Ok(json(&report));
    }
    let mut out = format!("dimension {}\n", report.dimension);
    for p in &report.paths {
        writeln!(out, "{p}").unwrap();
    }
    Ok(out)
}

fn perfect(pres: &MonomialPresentation, as_json: bool) -> Outcome {
    let r = perfection_report(pres)?;
    if as_json {
        return Ok(json(&r));
    }
    let pairs: Vec<String> = r.perfect_pairs.iter().map(|[p, q]| format!("({p}, {q})")).collect();
    let mut t = Table::default();
    t.row(
        "perfect pairs",
        if pairs.is_empty() {
            "—".into()
        } else {
            pairs.join(" ")
        },
    )
    .row("perfect paths", perfect_paths_text(&r))
    .row("cycles", cycles_text(&r.cycles))
    .row("cm type", r.cm_type);
    Ok(t.render())
}

fn gproj(pres: &MonomialPresentation, as_json: bool) -> Outcome {
    let r = perfection_report(pres)?;
    if as_json {
        return Ok(json(&r.gp_modules));
    }
    if r.gp_modules.is_empty() {
        return Ok("no non-projective Gorenstein projectives\n".into());
    }
    let mut t = Table::default();
    for g in &r.gp_modules {
        t.row(&format!("A({})", g.generator), format!("dim {}", g.dim_vector));
    }
    Ok(t.render())
}

fn gorenstein(pres: &MonomialPresentation, as_json: bool) -> Outcome {
    let r = gorenstein_report(pres)?;
    if as_json {
        return Ok(json(&r));
    }
    let mut t = Table::default();
    t.row("1-Gorenstein", one_gorenstein_text(&r));
    for c in &r.cycles {
        t.row(
            "relation cycle",
            format!("n={} r={} ({})", c.n, c.r, c.arrows.join(" ")),
        );
    }
    if let Some(s) = &r.singularity {
        t.row("singcat", orbit_text(s));
    }
    if let Some(n) = &r.nakayama {
        t.row("nakayama", format!("kZ_{}/J^{}", n.n, n.m));
    }
    t.row(
        "gentle",
        match (r.gentle.is_gentle, r.gentle.one_gorenstein_criterion) {
            (false, _) => "no".to_string(),
            (true, Some(c)) => format!("yes (cycle criterion: {c})"),
            (true, None) => "yes".to_string(),
        },
    );
    Ok(t.render())
}

#[derive(Serialize)]
struct SingcatReport {
    singularity: Vec<OrbitEntry>,
    pretty: Vec<String>,
}

fn singcat(pres: &MonomialPresentation, as_json: bool) -> Outcome {
    let verdict = is_one_gorenstein(pres)?;
    if let Some(f) = verdict.failure {
        return Err(Error::NotOneGorenstein {
            witness: pres.display_path(&f.left),
            relation: pres.display_path(&f.relation),
        }
        .into());
    }
    let descriptors = singularity_decomposition(pres)?;
    let report = SingcatReport {
        pretty: descriptors.iter().map(ToString::to_string).collect(),
        singularity: descriptors.into_iter().map(OrbitEntry::from).collect(),
    };
    if as_json {
        return Ok(json(&report));
    }
    if report.pretty.is_empty() {
        return Ok("0\n".into());
    }
    Ok(report.pretty.iter().map(|s| format!("{s}\n")).collect())
}

fn graded(pres: &MonomialPresentation, as_json: bool) -> Outcome {
    let r = graded_report(pres)?;
    if as_json {
        return Ok(json(&r));
    }
    let mut t = Table::default();
    match &r.qb {
        Some(qb) => {
            t.row("Q^B", qb_text(&r));
            for c in &qb.chains {
                t.row(
                    "chain",
                    c.iter().map(|p| format!("A({p})")).collect::<Vec<_>>().join(" → "),
                );
            }
        }
        None => {
            t.row("Q^B", "— (not 1-Gorenstein)");
        }
    }
    t.row("graded singcat", &r.graded_singularity);
    for o in &r.omega_t {
        t.row(
            "Ω(T) summand",
            format!("A({})({}) ×{}", o.path, o.shift, o.multiplicity),
        );
    }
    Ok(t.render())
}

fn glue_cmd(pres: &MonomialPresentation, pairs: &str, report: bool, bar: bool, as_json: bool) -> Outcome {
    let e = Involution::parse_pairs(pres, pairs)?;
    if report {
        let r = equivalence_report(pres, &e)?;
        if as_json {
            return Ok(json(&r));
        }
        let side = |s: &monosing::gluing::SideReport| {
            format!(
                "dim {}, {} perfect paths, 1-Gorenstein {}, singcat {}, {}",
                s.dimension,
                s.perfect_paths,
                if s.one_gorenstein { "yes" } else { "no" },
                s.orbit_descriptors.as_ref().map_or("—".into(), |d| if d.is_empty() {
                    "0".into()
                } else {
                    d.join(" × ")
                }),
                match s.gorenstein_level {
                    Some(l) => format!("Gorenstein level {l}"),
                    None => "not Gorenstein".into(),
                }
            )
        };
        let flag = |b: bool| if b { "agree" } else { "DISAGREE" };
        let mut t = Table::default();
        t.row(
            "pairs",
            r.pairs
                .iter()
                .map(|[x, y]| format!("{x}:{y}"))
                .collect::<Vec<_>>()
                .join(","),
        )
        .row("S", side(&r.original))
        .row("S_E", side(&r.glued))
        .row("orbit multiset", flag(r.agreement.orbit_multiset))
        .row("gp count", flag(r.agreement.gp_count))
        .row("gorenstein", flag(r.agreement.gorenstein));
        let out = t.render();
        return if r.agreement.all() {
            Ok(out)
        } else {
            Err(Failure::Refused(out))
        };
    }
    let out = if bar {
        bar_presentation(pres, &e)?
    } else {
        glue(pres, &e)?
    };
    Ok(if as_json { json(&out.echo()) } else { out.to_text() })
}

#[derive(Serialize)]
struct GorensteinCheck {
    profile: InjectiveDimensionProfile,
    global_dimension: DimStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    traces: Option<Vec<SimpleTrace>>,
}

#[derive(Serialize)]
struct SimpleTrace {
    vertex: String,
    trace: ResolutionTrace,
}

fn oracle_cmd(
    pres: &MonomialPresentation,
    check: Check,
    window: Option<usize>,
    cutoff: Option<usize>,
    trace: bool,
    as_json: bool,
) -> Outcome {
    match check {
        Check::Classification => {
            let r = crosscheck_classification(pres)?;
            if as_json {
                return Ok(json(&r));
            }
            let show = |v: &[monosing::oracle::checks::ClassEntry]| {
                list(
                    &v.iter()
                        .map(|e| format!("A({}) {}", e.generator, e.dim_vector))
                        .collect::<Vec<_>>(),
                )
            };
            let mut t = Table::default();
            t.row("verdict", "match")
                .row("level", r.level)
                .row("homological", show(&r.oracle))
                .row("perfect", show(&r.perfect));
            Ok(t.render())
        }
        Check::Tilting => {
            let window = match window {
                Some(w) => w.max(1),
                None => 2 * pres.dimension()?,
            };
            let r = tilting_check(pres, window)?;
            let out = if as_json {
                json(&r)
            } else {
                let mut t = Table::default();
                t.row("verdict", if r.holds { "vanishes" } else { "FAILS" })
                    .row("window", r.window)
                    .row("computed", r.computed)
                    .row(
                        "Ω(T) summands",
                        list(&r.summands.iter().map(|p| format!("A({p})")).collect::<Vec<_>>()),
                    )
                    .row("syzygies first", r.reduced_by);
                if let Some((i, d)) = r.failure {
                    t.row("failure", format!("Ext^{i} has dimension {d}"));
                }
                t.render()
            };
            if r.holds {
                Ok(out)
            } else {
                Err(Failure::Refused(out))
            }
        }
        Check::Gorenstein => {
            let oracle = Oracle::new(pres)?;
            let cutoff = cutoff.unwrap_or_else(|| oracle.default_cutoff());
            let traces = if trace {
                let mut v = Vec::new();
                for x in 0..pres.quiver().vertex_count() {
                    v.push(SimpleTrace {
                        vertex: pres.quiver().vertex_name(x).to_string(),
                        trace: oracle.resolution_trace(&simple_rep(pres, x), cutoff)?,
                    });
                }
                Some(v)
            } else {
                None
            };
            let r = GorensteinCheck {
                profile: oracle.profile()?,
                global_dimension: oracle.global_dimension()?,
                traces,
            };
            if as_json {
                return Ok(json(&r));
            }
            let mut t = Table::default();
            t.row("verdict", profile_text(&r.profile))
                .row("gldim", r.global_dimension);
            for s in r.traces.iter().flatten() {
                let dims: Vec<String> = s
                    .trace
                    .steps
                    .iter()
                    .map(|st| {
                        format!(
                            "({})",
                            st.module_dims.iter().map(u128::to_string).collect::<Vec<_>>().join(",")
                        )
                    })
                    .collect();
                let status = match s.trace.status {
                    Termination::Finite(d) => format!("pd {d}"),
                    Termination::PeriodicityDetected { first, repeat } => {
                        format!("periodic: step {repeat} repeats step {first}")
                    }
                    Termination::CutoffReached(n) => format!("cutoff after {n} steps"),
                };
                t.row(&format!("S_{}", s.vertex), format!("{}  [{status}]", dims.join(" → ")));
            }
            Ok(t.render())
        }
    }
}
