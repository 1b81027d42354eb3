//! Command-line front end: flag parsing, dispatch, and text/JSON rendering
//! for the cell and cover engines.
//!
//! Exit codes: 0 on success, 1 on domain errors (the computation rejected a
//! well-formed input), 2 on usage errors (bad flags or flag values).

pub mod fixtures;
pub mod render;

use std::io::Write;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use hilburch::{cell_dimension, decode_cellpoint};
use hilburch::parser::parse_poly_list;
use hilburch::{
    canonical_deformation, conjecture_probe, cover_search, gcl_bound, generic_initial,
    lt_ideal_local, minimal_generator_count, rank_profile, reduced_standard_basis, Cap, CellPoint,
    CellReport, FieldTag, IdealPresentation, SearchStrategy, Staircase,
};

#[derive(Parser)]
#[command(
    name = "hilburch",
    version,
    about = "Gröbner cells of finite-colength ideals in k[[x,y]] via canonical Hilbert-Burch matrices"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Report a staircase: generators, numerics, flags, cell dimension.
    Info(InfoArgs),
    /// Leading-term ideal of an ideal under the local degree order.
    Lt(IdealArgs),
    /// Reduced standard basis of an ideal.
    Basis(IdealArgs),
    /// Generators cut out by a point of the canonical family.
    Phi(PhiArgs),
    /// Canonical Hilbert-Burch matrix of an ideal.
    Canonical(IdealArgs),
    /// Dimension of the Gröbner cell of a staircase.
    Dim(InfoArgs),
    /// All staircases of one colength with their cell data.
    Stratify(StratifyArgs),
    /// Exhaustive injectivity probe of the degree-bounded family over F_p.
    Probe(ProbeArgs),
    /// Gorenstein test for an ideal or for a cell point.
    Gorenstein(GorensteinArgs),
    /// Search a cell for Gorenstein ideals contained in a target.
    Cover(CoverArgs),
    /// Bound the Gorenstein colength of a quotient.
    Gcl(GclArgs),
    /// Generic initial ideal under random coordinate changes.
    Gin(GinArgs),
}

#[derive(Args)]
struct InfoArgs {
    /// Staircase: `m0,m1,...`, `t=T; m=...`, or monomial generators.
    #[arg(long)]
    staircase: String,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct IdealArgs {
    /// Generators, separated by `;`.
    #[arg(long)]
    gens: String,
    /// Coefficient field: `q` or `p=NNN`.
    #[arg(long, default_value = "q")]
    field: String,
    /// Truncate series arithmetic at this degree.
    #[arg(long)]
    cap: Option<u32>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct PhiArgs {
    /// Staircase of the cell.
    #[arg(long)]
    staircase: String,
    /// Chart coordinates `c1,c2,...`; omitted means the origin.
    #[arg(long)]
    point: Option<String>,
    #[arg(long, default_value = "q")]
    field: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct StratifyArgs {
    /// Colength of the staircases to list.
    #[arg(long)]
    colength: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ProbeArgs {
    #[arg(long)]
    staircase: String,
    /// Characteristic of the enumeration field.
    #[arg(long)]
    prime: u64,
    /// Abort if the enumeration would exceed this many points.
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GorensteinArgs {
    /// Generators of an ideal to test.
    #[arg(long)]
    gens: Option<String>,
    /// Staircase of a cell point to test.
    #[arg(long)]
    staircase: Option<String>,
    /// Chart coordinates of the cell point.
    #[arg(long)]
    point: Option<String>,
    #[arg(long, default_value = "q")]
    field: String,
    #[arg(long)]
    cap: Option<u32>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CoverArgs {
    /// Target ideal generators, separated by `;`.
    #[arg(long)]
    target: String,
    /// Staircase of the search cell.
    #[arg(long)]
    staircase: String,
    /// `q` samples rational points; `p=NNN` enumerates F_p exhaustively.
    #[arg(long, default_value = "q")]
    field: String,
    /// Point budget for exhaustive enumeration.
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    /// Number of rational sample points.
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    /// Rational samples draw coordinates from [-bound, bound].
    #[arg(long, default_value_t = 5)]
    bound: i64,
    /// Seed for the sampling; required with --json.
    #[arg(long)]
    seed: Option<u64>,
    /// Extra cell point `c1,c2,...` to test first (repeatable).
    #[arg(long)]
    point: Vec<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GclArgs {
    /// Target ideal generators, separated by `;`.
    #[arg(long)]
    target: String,
    /// `q` samples rational points; `p=NNN` enumerates F_p exhaustively.
    #[arg(long, default_value = "q")]
    field: String,
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    #[arg(long, default_value_t = 5)]
    bound: i64,
    /// Seed for the sampling; required with --json.
    #[arg(long)]
    seed: Option<u64>,
    /// Extra point `m0,m1,...:c1,c2,...` to test first (repeatable).
    #[arg(long)]
    point: Vec<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GinArgs {
    #[arg(long)]
    gens: String,
    #[arg(long, default_value = "q")]
    field: String,
    #[arg(long)]
    cap: Option<u32>,
    /// Seed for the coordinate changes; required with --json.
    #[arg(long)]
    seed: Option<u64>,
    /// Coordinate changes draw entries from [-bound, bound].
    #[arg(long, default_value_t = 100)]
    bound: i64,
    #[arg(long)]
    json: bool,
}

enum Failure {
    Usage(String),
    Domain(hilburch::Error),
    Io(std::io::Error),
}

impl From<hilburch::Error> for Failure {
    fn from(e: hilburch::Error) -> Failure {
        Failure::Domain(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Io(e)
    }
}

type CmdResult = Result<(), Failure>;

/// Parses and runs one invocation, writing results to `out` and diagnostics
/// to `err`; returns the process exit code.
pub fn run<'a, I, O, E>(argv: I, out: &mut O, err: &mut E) -> u8
where
    I: IntoIterator<Item = &'a str>,
    O: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                let _ = write!(out, "{e}");
                return 0;
            }
            _ => {
                let _ = write!(err, "{e}");
                return 2;
            }
        },
    };
    let res = match &cli.cmd {
        Cmd::Info(a) => info(a, out),
        Cmd::Lt(a) => lt(a, out),
        Cmd::Basis(a) => basis(a, out),
        Cmd::Phi(a) => phi(a, out),
        Cmd::Canonical(a) => canonical(a, out),
        Cmd::Dim(a) => dim(a, out),
        Cmd::Stratify(a) => stratify(a, out),
        Cmd::Probe(a) => probe(a, out),
        Cmd::Gorenstein(a) => gorenstein(a, out),
        Cmd::Cover(a) => cover(a, out),
        Cmd::Gcl(a) => gcl(a, out),
        Cmd::Gin(a) => gin(a, out),
    };
    match res {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            2
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn staircase_flag(s: &str) -> Result<Staircase, Failure> {
    Staircase::parse(s).map_err(|e| Failure::Usage(format!("--staircase: {e}")))
}

fn field_flag(s: &str) -> Result<FieldTag, Failure> {
    FieldTag::parse(s).map_err(|e| Failure::Usage(format!("--field: {e}")))
}

fn ideal_flag(
    flag: &str,
    src: &str,
    field: FieldTag,
    cap: Option<u32>,
) -> Result<IdealPresentation, Failure> {
    let cap = cap.map_or(Cap::Unbounded, Cap::Finite);
    let gens =
        parse_poly_list(src, ';', field, cap).map_err(|e| Failure::Usage(format!("{flag}: {e}")))?;
    IdealPresentation::new(gens).map_err(|e| Failure::Usage(format!("{flag}: {e}")))
}

fn point_flag(s: &str, e: &Staircase, field: FieldTag) -> Result<CellPoint, Failure> {
    CellPoint::parse(e.clone(), field, s).map_err(|er| Failure::Usage(format!("--point: {er}")))
}

/// `m0,m1,...:c1,c2,...` — a point together with its staircase.
fn situated_point_flag(s: &str, field: FieldTag) -> Result<CellPoint, Failure> {
    let (es, cs) = s.split_once(':').ok_or_else(|| {
        Failure::Usage("--point: expected `staircase:coords`, e.g. `0,1,3,5:1,0,0,1,0,0`".into())
    })?;
    let e = Staircase::parse(es).map_err(|er| Failure::Usage(format!("--point: {er}")))?;
    CellPoint::parse(e, field, cs).map_err(|er| Failure::Usage(format!("--point: {er}")))
}

/// Sampling strategies are replayable only with an explicit seed, so `--json`
/// (machine-consumed output) demands one.
fn sampling_seed(json: bool, seed: Option<u64>) -> Result<u64, Failure> {
    match seed {
        Some(s) => Ok(s),
        None if json => Err(Failure::Usage(
            "--seed is required with --json for randomized commands".into(),
        )),
        None => Ok(0),
    }
}

fn yesno(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join_u32(v: &[u32]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn info<W: Write>(a: &InfoArgs, out: &mut W) -> CmdResult {
    let e = staircase_flag(&a.staircase)?;
    let report = CellReport::new(&e);
    if a.json {
        writeln!(out, "{}", report.to_json())?;
        return Ok(());
    }
    writeln!(out, "staircase: {e}")?;
    writeln!(out, "generators: {}", e.generators_string())?;
    writeln!(out, "colength: {}", e.colength())?;
    writeln!(out, "socle degree: {}", e.socle_degree())?;
    writeln!(out, "hilbert function: {}", join_u32(&e.hilbert_function()))?;
    writeln!(out, "cell dimension: {}", report.dimension)?;
    writeln!(out, "lex segment: {}", yesno(report.flags.lex_segment))?;
    match report.chart_witness {
        None => writeln!(out, "chart condition: yes")?,
        Some((i, j)) => writeln!(out, "chart condition: no (violated at ({i},{j}))")?,
    }
    writeln!(
        out,
        "gorenstein admissible: {}",
        yesno(report.flags.gorenstein_admissible)
    )?;
    if !report.forced_zero.is_empty() {
        let slots = report
            .forced_zero
            .iter()
            .map(|(i, j)| format!("({i},{j})"))
            .collect::<Vec<_>>()
            .join(", ");
        writeln!(out, "forced zero slots: {slots}")?;
    }
    Ok(())
}

fn lt<W: Write>(a: &IdealArgs, out: &mut W) -> CmdResult {
    let field = field_flag(&a.field)?;
    let j = ideal_flag("--gens", &a.gens, field, a.cap)?;
    let (e, _) = lt_ideal_local(&j)?;
    if a.json {
        writeln!(out, "{}", e.to_json())?;
    } else {
        writeln!(out, "{e}")?;
    }
    Ok(())
}

fn basis<W: Write>(a: &IdealArgs, out: &mut W) -> CmdResult {
    let field = field_flag(&a.field)?;
    let j = ideal_flag("--gens", &a.gens, field, a.cap)?;
    let b = reduced_standard_basis(&j)?;
    if a.json {
        let v = serde_json::json!({
            "staircase": b.staircase().to_json(),
            "elements": b.elements().iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            "fingerprint": b.fingerprint(),
        });
        writeln!(out, "{v}")?;
        return Ok(());
    }
    for f in b.elements() {
        writeln!(out, "{f}")?;
    }
    Ok(())
}

fn phi<W: Write>(a: &PhiArgs, out: &mut W) -> CmdResult {
    let e = staircase_flag(&a.staircase)?;
    let field = field_flag(&a.field)?;
    let p = match &a.point {
        Some(s) => point_flag(s, &e, field)?,
        None => CellPoint::origin(e.clone(), field),
    };
    let n = decode_cellpoint(&p);
    let minors = n.signed_minors(Cap::Unbounded)?;
    if a.json {
        let v = serde_json::json!({
            "staircase": e.to_json(),
            "point": p.to_json(),
            "generators": minors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        });
        writeln!(out, "{v}")?;
        return Ok(());
    }
    for f in &minors {
        writeln!(out, "{f}")?;
    }
    Ok(())
}

fn canonical<W: Write>(a: &IdealArgs, out: &mut W) -> CmdResult {
    let field = field_flag(&a.field)?;
    let j = ideal_flag("--gens", &a.gens, field, a.cap)?;
    let res = canonical_deformation(&j)?;
    if a.json {
        writeln!(out, "{}", res.to_json())?;
        return Ok(());
    }
    let m = res.matrix.h_plus_n(res.matrix.min_cap())?;
    for line in render::matrix_lines(&m) {
        writeln!(out, "{line}")?;
    }
    match &res.point {
        Some(p) => writeln!(out, "point: {p}")?,
        None => writeln!(out, "point: unavailable (no chart for this staircase)")?,
    }
    Ok(())
}

fn dim<W: Write>(a: &InfoArgs, out: &mut W) -> CmdResult {
    let e = staircase_flag(&a.staircase)?;
    let d = cell_dimension(&e);
    if a.json {
        let v = serde_json::json!({ "staircase": e.to_json(), "dimension": d });
        writeln!(out, "{v}")?;
    } else {
        writeln!(out, "{d}")?;
    }
    Ok(())
}

fn stratify<W: Write>(a: &StratifyArgs, out: &mut W) -> CmdResult {
    let list = Staircase::enumerate(a.colength);
    if a.json {
        let v = serde_json::Value::Array(
            list.iter().map(|e| CellReport::new(e).to_json()).collect(),
        );
        writeln!(out, "{v}")?;
        return Ok(());
    }
    let rows: Vec<Vec<String>> = list
        .iter()
        .map(|e| {
            let r = CellReport::new(e);
            vec![
                e.to_string(),
                format!("({})", e.generators_string()),
                format!("{{{}}}", join_u32(&e.hilbert_function())),
                r.dimension.to_string(),
                yesno(r.flags.lex_segment).to_string(),
                yesno(r.flags.chart_condition).to_string(),
                yesno(r.flags.gorenstein_admissible).to_string(),
            ]
        })
        .collect();
    for line in render::table(
        &["staircase", "generators", "HF", "dim", "lex", "chart", "gor"],
        &rows,
    ) {
        writeln!(out, "{line}")?;
    }
    Ok(())
}

fn probe<W: Write>(a: &ProbeArgs, out: &mut W) -> CmdResult {
    let e = staircase_flag(&a.staircase)?;
    let r = conjecture_probe(&e, a.prime, a.budget)?;
    if a.json {
        writeln!(out, "{}", r.to_json())?;
        return Ok(());
    }
    writeln!(out, "staircase: {e}")?;
    writeln!(out, "prime: {}", r.prime)?;
    writeln!(out, "socle template slots: {}", r.n_template)?;
    writeln!(out, "degree template slots: {}", r.d_template)?;
    writeln!(out, "image ideals: {}", r.image_count)?;
    writeln!(out, "cell ideals: {}", r.cell_count)?;
    writeln!(out, "injective: {}", yesno(r.injective))?;
    writeln!(out, "pass: {}", yesno(r.pass))?;
    for c in &r.counterexamples {
        writeln!(out, "counterexample: {c}")?;
    }
    Ok(())
}

fn gorenstein<W: Write>(a: &GorensteinArgs, out: &mut W) -> CmdResult {
    match (&a.gens, &a.staircase) {
        (Some(gens), None) => {
            let field = field_flag(&a.field)?;
            let j = ideal_flag("--gens", gens, field, a.cap)?;
            let mu = minimal_generator_count(&j)?;
            if a.json {
                let v = serde_json::json!({ "mu": mu, "gorenstein": mu == 2 });
                writeln!(out, "{v}")?;
            } else {
                writeln!(out, "mu: {mu}")?;
                writeln!(out, "gorenstein: {}", yesno(mu == 2))?;
            }
            Ok(())
        }
        (None, Some(staircase)) => {
            let e = staircase_flag(staircase)?;
            let field = field_flag(&a.field)?;
            let coords = a.point.as_deref().ok_or_else(|| {
                Failure::Usage("--point is required together with --staircase".into())
            })?;
            let p = point_flag(coords, &e, field)?;
            let profile = rank_profile(&decode_cellpoint(&p));
            if a.json {
                let v = serde_json::json!({
                    "mu": profile.mu,
                    "rank_const": profile.rank_const,
                    "gorenstein": profile.mu == 2,
                });
                writeln!(out, "{v}")?;
            } else {
                writeln!(out, "mu: {}", profile.mu)?;
                writeln!(out, "constant rank: {}", profile.rank_const)?;
                writeln!(out, "gorenstein: {}", yesno(profile.mu == 2))?;
            }
            Ok(())
        }
        _ => Err(Failure::Usage(
            "exactly one of --gens or --staircase is required".into(),
        )),
    }
}

fn strategy_args(
    field: FieldTag,
    budget: u64,
    samples: u64,
    bound: i64,
    seed: Option<u64>,
    json: bool,
) -> Result<SearchStrategy, Failure> {
    match field {
        FieldTag::Q => Ok(SearchStrategy::RandomQ {
            samples,
            bound,
            seed: sampling_seed(json, seed)?,
        }),
        FieldTag::Fp(p) => Ok(SearchStrategy::ExhaustiveFp {
            prime: u64::from(p),
            budget,
        }),
    }
}

fn write_cover<W: Write>(w: &hilburch::CoverResult, out: &mut W) -> CmdResult {
    let gens = w
        .cover_ideal
        .gens()
        .iter()
        .map(|g| g.to_string())
        .collect::<Vec<_>>()
        .join(", ");
    writeln!(out, "cover: {gens}")?;
    writeln!(out, "gap: {}", w.colength_gap)?;
    match &w.cell_point {
        Some(p) => writeln!(out, "point: {p}")?,
        None => writeln!(out, "point: unavailable")?,
    }
    writeln!(
        out,
        "minimal: {}",
        if w.certified_minimal {
            "exact"
        } else {
            "upper-bound"
        }
    )?;
    Ok(())
}

fn cover<W: Write>(a: &CoverArgs, out: &mut W) -> CmdResult {
    let field = field_flag(&a.field)?;
    let e = staircase_flag(&a.staircase)?;
    let target = ideal_flag("--target", &a.target, field, None)?;
    let strategy = strategy_args(field, a.budget, a.samples, a.bound, a.seed, a.json)?;
    let extra = a
        .point
        .iter()
        .map(|s| point_flag(s, &e, field))
        .collect::<Result<Vec<_>, _>>()?;
    let results = cover_search(&target, &e, &strategy, &extra)?;
    if a.json {
        let v = serde_json::Value::Array(results.iter().map(|w| w.to_json()).collect());
        writeln!(out, "{v}")?;
        return Ok(());
    }
    if results.is_empty() {
        writeln!(out, "no covers found")?;
        return Ok(());
    }
    for (idx, w) in results.iter().enumerate() {
        if idx > 0 {
            writeln!(out)?;
        }
        write_cover(w, out)?;
    }
    Ok(())
}

fn gcl<W: Write>(a: &GclArgs, out: &mut W) -> CmdResult {
    let field = field_flag(&a.field)?;
    let target = ideal_flag("--target", &a.target, field, None)?;
    let strategy = strategy_args(field, a.budget, a.samples, a.bound, a.seed, a.json)?;
    let extra = a
        .point
        .iter()
        .map(|s| situated_point_flag(s, field))
        .collect::<Result<Vec<_>, _>>()?;
    let b = gcl_bound(&target, &strategy, &extra)?;
    if a.json {
        writeln!(out, "{}", b.to_json())?;
        return Ok(());
    }
    writeln!(out, "target colength: {}", b.target_colength)?;
    if b.exact() {
        writeln!(out, "gcl = {} (exact)", b.value)?;
    } else {
        writeln!(out, "gcl <= {} (lower bound {})", b.value, b.lower_bound)?;
    }
    for w in &b.witnesses {
        let gens = w
            .cover_ideal
            .gens()
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        writeln!(out, "witness (gap {}): {gens}", w.colength_gap)?;
    }
    Ok(())
}

fn gin<W: Write>(a: &GinArgs, out: &mut W) -> CmdResult {
    let field = field_flag(&a.field)?;
    let j = ideal_flag("--gens", &a.gens, field, a.cap)?;
    let seed = sampling_seed(a.json, a.seed)?;
    let e = generic_initial(&j, seed, a.bound)?;
    if a.json {
        let v = serde_json::json!({ "staircase": e.to_json(), "seed": seed });
        writeln!(out, "{v}")?;
    } else {
        writeln!(out, "{e}")?;
    }
    Ok(())
}
