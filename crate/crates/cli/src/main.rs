use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use growth_core::affineweyl::AffineTable;
use growth_core::conecount::{cone_indices, f_q, parallelepiped_points};
use growth_core::finiteweyl::{identity_checks_finite, GroupTable};
use growth_core::fixtures;
use growth_core::pipeline::{affine_identity_checks, oracle_report};
use growth_core::{AffinePipeline, CartanType, CheckReport, RatFun, RootSystem, SeriesMatrix, Subset};
use serde_json::{json, Value};

// Writes to stdout ignore errors so that piping into `head` exits quietly.
macro_rules! say {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! say_raw {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

const CACHE_ENV: &str = "GROWTH_CACHE_DIR";

#[derive(Parser)]
#[command(name = "growth", version, about = "Growth series of double-coset representatives in Weyl groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Poincare,
    Pmatrix,
    Hmatrix,
    Check,
}

#[derive(Subcommand)]
enum Command {
    /// Cartan matrix, determinant, positive roots and cone generators.
    Cartan {
        label: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Finite Weyl group data for a parabolic subgroup.
    Finite {
        #[arg(long = "type")]
        label: String,
        /// Generators of the parabolic subgroup (default: all).
        #[arg(long)]
        subset: Option<String>,
        #[arg(long, value_enum)]
        what: What,
        /// K for `pmatrix` (default: the whole subset).
        #[arg(long = "K")]
        k: Option<String>,
        /// J for `hmatrix` (default: the whole subset).
        #[arg(long = "J")]
        j: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Series of dominant translations with a given stabilizer pattern.
    Fq {
        #[arg(long = "type")]
        label: String,
        #[arg(long = "Q")]
        q: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Affine double-coset series p_{Q,J,K}, or the sum over Q.
    Series {
        #[arg(long = "type")]
        label: String,
        #[arg(long = "J", default_value = "")]
        j: String,
        #[arg(long = "K", default_value = "")]
        k: String,
        #[arg(long = "Q")]
        q: Option<String>,
        #[arg(long)]
        expand: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// The full matrix M_S of affine series p_{Q,J,S}.
    Matrix {
        #[arg(long = "type")]
        label: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Enumerate the affine group and bin representatives by Q.
    Oracle {
        #[arg(long = "type")]
        label: String,
        #[arg(long = "J", default_value = "")]
        j: String,
        #[arg(long = "K", default_value = "")]
        k: String,
        #[arg(long)]
        max_length: usize,
    },
    /// Compare every series against enumeration; exit 1 on any mismatch.
    Verify {
        #[arg(long = "type")]
        label: String,
        #[arg(long)]
        max_length: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run the finite and affine identity suites; exit 1 on any failure.
    Check {
        #[arg(long = "type")]
        label: String,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Recompute the golden fixtures and identity suites.
    Selftest {
        /// Directory of fixture files to use instead of the bundled ones.
        #[arg(long)]
        fixtures: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

/// Outcome of a command that ran to completion.
enum Status {
    Ok,
    Mismatch,
}

type CmdResult = Result<Status, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Mismatch) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> CmdResult {
    match cmd {
        Command::Cartan { label, format } => cartan(&label, format),
        Command::Finite { label, subset, what, k, j, format } => {
            finite(&label, subset.as_deref(), what, k.as_deref(), j.as_deref(), format)
        }
        Command::Fq { label, q, format } => fq(&label, q.as_deref(), format),
        Command::Series { label, j, k, q, expand, format } => {
            series(&label, &j, &k, q.as_deref(), expand, format)
        }
        Command::Matrix { label, format } => matrix(&label, format),
        Command::Oracle { label, j, k, max_length } => oracle(&label, &j, &k, max_length),
        Command::Verify { label, max_length, format } => verify(&label, max_length, format),
        Command::Check { label, degree, format } => check(&label, degree, format),
        Command::Selftest { fixtures, format } => selftest(fixtures.as_deref(), format),
    }
}

fn root_system(label: &str) -> Result<RootSystem, String> {
    let t: CartanType = label.parse().map_err(|e| format!("{e}"))?;
    Ok(RootSystem::build(t))
}

/// Parse generator ids such as `1,3`, `1 3`, `{1,3}` or the empty string.
fn parse_ids(s: &str, rank: usize) -> Result<Subset, String> {
    let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
    let mut ids = Vec::new();
    for tok in inner.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let id: usize = tok.parse().map_err(|_| format!("bad generator id `{tok}` in `{s}`"))?;
        ids.push(id);
    }
    Subset::from_ids(&ids, rank).ok_or_else(|| format!("generator ids in `{s}` must lie in 1..={rank}"))
}

fn pipeline(t: CartanType) -> Result<Arc<AffinePipeline>, String> {
    let p = AffinePipeline::shared(t).map_err(|e| e.to_string())?;
    if let Some(dir) = std::env::var_os(CACHE_ENV) {
        let path = Path::new(&dir).join(format!("{t}.m_s.json"));
        let cached = std::fs::read_to_string(&path)
            .ok()
            .and_then(|s| serde_json::from_str::<SeriesMatrix<RatFun>>(&s).ok());
        let seeded = cached.is_some_and(|m| p.seed_matrix_m(m));
        if !seeded {
            let m = p.matrix_m();
            // the cache is best effort
            if std::fs::create_dir_all(&dir).is_ok() {
                if let Ok(s) = serde_json::to_string(m) {
                    let _ = std::fs::write(&path, s);
                }
            }
        }
    }
    Ok(p)
}

fn render(f: &RatFun, format: Format) -> String {
    match format {
        Format::Latex => f.to_latex(),
        _ => f.to_text(),
    }
}

fn print_json(v: &Value) {
    say!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn print_report(report: &CheckReport, format: Format) -> Status {
    match format {
        Format::Json => {
            print_json(&json!({"passed": report.all_passed(), "checks": report.entries}));
        }
        _ => {
            say_raw!("{report}");
            let failed = report.failures().count();
            say!("{} checks, {failed} failed", report.len());
        }
    }
    if report.all_passed() {
        Status::Ok
    } else {
        Status::Mismatch
    }
}

fn cartan(label: &str, format: Format) -> CmdResult {
    let rs = root_system(label)?;
    let two_rho: Vec<i64> = rs.cone_generators().iter().map(|w| rs.two_rho_weight(w)).collect();
    match format {
        Format::Json => print_json(&json!({
            "type": rs.cartan_type().to_string(),
            "rank": rs.rank(),
            "cartan": rs.cartan().rows(),
            "det": rs.det(),
            "positive_roots": rs.num_positive(),
            "highest_root": rs.highest_root().coords,
            "r": rs.r(),
            "cone_generators": rs.cone_generators(),
            "two_rho": two_rho,
        })),
        _ => {
            say!("type            {}", rs.cartan_type());
            say!("det             {}", rs.det());
            say!("positive roots  {}", rs.num_positive());
            say!("highest root    {:?}", rs.highest_root().coords);
            say!("r               {:?}", rs.r());
            say!("cartan");
            let rows = rs.cartan().rows();
            let width = rows.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
            for row in rows {
                let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
                say!("  {}", cells.join(" "));
            }
            say!("cone generators");
            for (i, (w, e)) in rs.cone_generators().iter().zip(&two_rho).enumerate() {
                say!("  w_{} = {w:?}  <2rho, w> = {e}", i + 1);
            }
        }
    }
    Ok(Status::Ok)
}

fn finite(
    label: &str,
    subset: Option<&str>,
    what: What,
    k: Option<&str>,
    j: Option<&str>,
    format: Format,
) -> CmdResult {
    let rs = root_system(label)?;
    let s = match subset {
        Some(s) => parse_ids(s, rs.rank())?,
        None => rs.full(),
    };
    let sub = |x: Option<&str>| -> Result<Subset, String> {
        let set = match x {
            Some(x) => parse_ids(x, rs.rank())?,
            None => s,
        };
        if set.is_subset_of(s) {
            Ok(set)
        } else {
            Err(format!("{set} is not contained in {s}"))
        }
    };
    if let What::Check = what {
        let report = identity_checks_finite(&rs, s).map_err(|e| e.to_string())?;
        return Ok(print_report(&report, format));
    }
    let table = GroupTable::enumerate(&rs, s).map_err(|e| e.to_string())?;
    let m = match what {
        What::Poincare => {
            let p = RatFun::from_poly(table.poincare());
            match format {
                Format::Json => print_json(&json!({
                    "type": rs.cartan_type().to_string(),
                    "subset": s,
                    "order": table.len(),
                    "series": p,
                })),
                _ => say!("{}", render(&p, format)),
            }
            return Ok(Status::Ok);
        }
        What::Pmatrix => table.matrix_m(sub(k)?),
        What::Hmatrix => table.matrix_n(sub(j)?),
        What::Check => unreachable!(),
    };
    print_matrix(&m.map(|p| RatFun::from_poly(p.clone())), &rs, format);
    Ok(Status::Ok)
}

fn print_matrix(m: &SeriesMatrix<RatFun>, rs: &RootSystem, format: Format) {
    match format {
        Format::Json => {
            let entries: Vec<Value> = m
                .entries()
                .map(|(r, c, f)| json!({"row": r, "col": c, "series": f}))
                .collect();
            print_json(&json!({
                "type": rs.cartan_type().to_string(),
                "rows": m.rows(),
                "cols": m.cols(),
                "entries": entries,
            }));
        }
        _ => {
            for (r, c, f) in m.entries() {
                say!("[{r}][{c}] {}", render(f, format));
            }
        }
    }
}

fn fq(label: &str, q: Option<&str>, format: Format) -> CmdResult {
    let rs = root_system(label)?;
    let qs: Vec<Subset> = match q {
        Some(q) => vec![parse_ids(q, rs.rank())?],
        None => rs.full().subsets().collect(),
    };
    let rows: Vec<(Subset, RatFun, Vec<Vec<i64>>)> = qs
        .into_iter()
        .map(|q| (q, f_q(&rs, q), parallelepiped_points(&rs, cone_indices(&rs, q))))
        .collect();
    match format {
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|(q, f, pts)| json!({"Q": q, "series": f, "text": f.to_text(), "points": pts}))
                .collect();
            print_json(&json!({"type": rs.cartan_type().to_string(), "f_q": items}));
        }
        _ if rows.len() == 1 => {
            say!("{}", render(&rows[0].1, format));
        }
        _ => {
            for (q, f, pts) in &rows {
                say!("Q={q}  {}  points {pts:?}", render(f, format));
            }
        }
    }
    Ok(Status::Ok)
}

fn series(label: &str, j: &str, k: &str, q: Option<&str>, expand: Option<usize>, format: Format) -> CmdResult {
    let rs = root_system(label)?;
    let j = parse_ids(j, rs.rank())?;
    let k = parse_ids(k, rs.rank())?;
    let q = q.map(|q| parse_ids(q, rs.rank())).transpose()?;
    let p = pipeline(rs.cartan_type())?;
    let f = match q {
        Some(q) => p.p_full(q, j, k),
        None => p.double_coset_series(j, k),
    }
    .map_err(|e| e.to_string())?;
    let expansion = expand
        .map(|n| f.expand(n).map_err(|e| e.to_string()))
        .transpose()?;
    match format {
        Format::Json => {
            let mut v = json!({
                "type": rs.cartan_type().to_string(),
                "J": j,
                "K": k,
                "series": f,
            });
            if let Some(q) = q {
                v["Q"] = json!(q);
            }
            if let Some(e) = &expansion {
                v["expansion"] = json!(e.iter().map(|c| c.to_string()).collect::<Vec<_>>());
            }
            print_json(&v);
        }
        _ => {
            say!("{}", render(&f, format));
            if let Some(e) = expansion {
                let cs: Vec<String> = e.iter().map(|c| c.to_string()).collect();
                say!("{}", cs.join(" "));
            }
        }
    }
    Ok(Status::Ok)
}

fn matrix(label: &str, format: Format) -> CmdResult {
    let rs = root_system(label)?;
    let p = pipeline(rs.cartan_type())?;
    print_matrix(p.matrix_m(), &rs, format);
    Ok(Status::Ok)
}

fn oracle(label: &str, j: &str, k: &str, max_length: usize) -> CmdResult {
    let rs = root_system(label)?;
    let j = parse_ids(j, rs.rank())?;
    let k = parse_ids(k, rs.rank())?;
    let table = AffineTable::enumerate(&rs, max_length).map_err(|e| e.to_string())?;
    let bins = table.oracle_series(j, k);
    let per_q: Vec<Value> = k
        .subsets()
        .map(|q| json!({"Q": q, "counts": bins.bins[&q]}))
        .collect();
    print_json(&json!({
        "type": rs.cartan_type().to_string(),
        "J": j,
        "K": k,
        "max_length": max_length,
        "elements": table.len(),
        "bins": per_q,
        "total": bins.total,
    }));
    Ok(Status::Ok)
}

fn verify(label: &str, max_length: usize, format: Format) -> CmdResult {
    let rs = root_system(label)?;
    let p = pipeline(rs.cartan_type())?;
    let report = oracle_report(&p, max_length).map_err(|e| e.to_string())?;
    Ok(print_report(&report, format))
}

fn check(label: &str, degree: usize, format: Format) -> CmdResult {
    let rs = root_system(label)?;
    let mut report = identity_checks_finite(&rs, rs.full()).map_err(|e| e.to_string())?;
    let p = pipeline(rs.cartan_type())?;
    report.extend(affine_identity_checks(&p, degree).map_err(|e| e.to_string())?);
    Ok(print_report(&report, format))
}

fn selftest(dir: Option<&Path>, format: Format) -> CmdResult {
    let files = match dir {
        Some(d) => fixtures::load_dir(d).map_err(|e| format!("{}: {e}", d.display()))?,
        None => fixtures::builtin(),
    };
    if files.is_empty() {
        return Err("no fixture files found".into());
    }
    let outcomes: Vec<fixtures::FixtureOutcome> = files
        .iter()
        .map(|(name, json)| fixtures::evaluate(name, json))
        .collect();
    let mut suites = CheckReport::new();
    for label in ["A2", "B2", "G2"] {
        let rs = root_system(label)?;
        let mut r = identity_checks_finite(&rs, rs.full()).map_err(|e| e.to_string())?;
        let p = pipeline(rs.cartan_type())?;
        r.extend(affine_identity_checks(&p, 12).map_err(|e| e.to_string())?);
        suites.record(format!("identities {label}"), r.all_passed(), failure_summary(&r));
    }
    let ok = outcomes.iter().all(|o| o.passed()) && suites.all_passed();
    match format {
        Format::Json => {
            print_json(&json!({"passed": ok, "fixtures": outcomes, "suites": suites.entries}));
        }
        _ => {
            for o in &outcomes {
                let mark = if o.passed() { "ok  " } else { "FAIL" };
                say!("{mark} fixture {} ({}, {} checks)", o.name, o.system, o.checks);
                for f in &o.failures {
                    say!("     {f}");
                }
            }
            say_raw!("{suites}");
        }
    }
    Ok(if ok { Status::Ok } else { Status::Mismatch })
}

fn failure_summary(r: &CheckReport) -> String {
    r.failures().map(|e| e.name.clone()).collect::<Vec<_>>().join(", ")
}
