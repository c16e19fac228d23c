use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use tripack::analysis::{delta_report, distinct_gaps, gap_report, GapPair, GAP_DEDUP};
use tripack::catalog::{self, Verification};
use tripack::classes::{self, ClassId};
use tripack::engine::GrowthConfig;
use tripack::format::{fmt_real, read_packing, write_packing, PackingFile};
use tripack::pipeline::{self, PipelineConfig};
use tripack::refine::{PolishOptions, TOL_BOND_ENGINE};
use tripack::render::{render_svg, RenderOptions};

/// Dense packings of equal disks in an equilateral triangle.
#[derive(Parser)]
#[command(name = "tripack", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compress random starts, polish, and write the distinct results.
    Pack(PackArgs),
    /// Polish a packing file against its near-contacts.
    Refine {
        file: PathBuf,
        /// Output file; defaults to overwriting the input.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Relative gap below which a contact becomes a bond.
        #[arg(long, default_value_t = TOL_BOND_ENGINE)]
        tol: f64,
    },
    /// Report bonds, rattlers, gaps, the bound discrepancy and the catalog verdict.
    Analyze {
        file: PathBuf,
        /// Largest relative gap listed.
        #[arg(long, default_value_t = 0.05)]
        gap_max: f64,
        /// Relative tolerance for the catalog comparison.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Draw a packing file as SVG.
    Render {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        no_indices: bool,
    },
    /// Class members, the matrix family, closed forms and memberships.
    Classes {
        #[command(subcommand)]
        cmd: ClassCmd,
    },
    /// Bound discrepancy for every catalog entry, as CSV.
    DeltaTable {
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare a packing file with the catalog.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
}

#[derive(Args)]
struct PackArgs {
    #[arg(long)]
    n: usize,
    /// Number of seeds.
    #[arg(long, default_value_t = 10)]
    seeds: u64,
    #[arg(long, default_value_t = 0)]
    first_seed: u64,
    /// Directory for the packing files.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Write only the best packing.
    #[arg(long)]
    best_only: bool,
    #[arg(long)]
    g0: Option<f64>,
    #[arg(long)]
    g_min: Option<f64>,
    #[arg(long)]
    anneal: Option<f64>,
    #[arg(long)]
    stop_tol: Option<f64>,
    #[arg(long)]
    kappa: Option<f64>,
    #[arg(long)]
    max_events: Option<u64>,
    /// Relative gap below which an engine contact becomes a bond.
    #[arg(long, default_value_t = TOL_BOND_ENGINE)]
    tol_bond: f64,
}

#[derive(Subcommand)]
enum ClassCmd {
    /// Members of every class up to `max`.
    List {
        #[arg(long, default_value_t = 100)]
        max: u64,
    },
    /// The matrix family up to `max`.
    Matrix {
        #[arg(long, default_value_t = 300)]
        max: u64,
    },
    /// Closed-form diameter of a class member.
    Exact {
        #[arg(long)]
        class: String,
        #[arg(long)]
        k: u64,
    },
    /// Classes containing `n`.
    Memberships {
        #[arg(long)]
        n: u64,
    },
}

/// Exit status for a run that completed but produced an unconverged packing.
const EXIT_UNCONVERGED: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_UNCONVERGED),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

/// Runs one command; `Ok(false)` flags an unconverged packing.
fn dispatch(cmd: Cmd) -> Result<bool> {
    match cmd {
        Cmd::Pack(a) => pack(a),
        Cmd::Refine { file, out, tol } => refine(&file, out.as_deref(), tol),
        Cmd::Analyze { file, gap_max, tol } => analyze(&file, gap_max, tol),
        Cmd::Render { file, out, no_indices } => {
            let f = load(&file)?;
            let opts = RenderOptions { show_indices: !no_indices, ..RenderOptions::default() };
            fs::write(&out, render_svg(&f, &opts)).with_context(|| format!("writing {}", out.display()))?;
            Ok(true)
        }
        Cmd::Classes { cmd } => {
            print!("{}", classes_cmd(cmd)?);
            Ok(true)
        }
        Cmd::DeltaTable { out } => {
            let csv = delta_csv();
            match out {
                Some(path) => fs::write(&path, csv).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{csv}"),
            }
            Ok(true)
        }
        Cmd::Verify { file, tol } => {
            let f = load(&file)?;
            let v = verify(&f, tol);
            println!("{}", verdict_line(&v));
            Ok(f.packing.converged)
        }
    }
}

fn load(path: &Path) -> Result<PackingFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    read_packing(&text).with_context(|| format!("parsing {}", path.display()))
}

fn save(path: &Path, f: &PackingFile) -> Result<()> {
    fs::write(path, write_packing(f)).with_context(|| format!("writing {}", path.display()))
}

fn pack(a: PackArgs) -> Result<bool> {
    if a.n < 2 {
        bail!("need at least 2 disks");
    }
    if a.seeds == 0 {
        bail!("need at least one seed");
    }
    let mut growth = GrowthConfig::for_n(a.n);
    growth.g0 = a.g0.unwrap_or(growth.g0);
    growth.g_min = a.g_min.unwrap_or(growth.g_min.min(growth.g0));
    growth.anneal = a.anneal.unwrap_or(growth.anneal);
    growth.stop_tol = a.stop_tol.unwrap_or(growth.stop_tol);
    growth.kappa = a.kappa.unwrap_or(growth.kappa);
    growth.max_events = a.max_events.unwrap_or(growth.max_events);
    let cfg = PipelineConfig { growth, tol_bond: a.tol_bond, ..PipelineConfig::for_n(a.n) };
    let seeds: Vec<u64> = (a.first_seed..a.first_seed + a.seeds).collect();
    let outcomes = pipeline::pack(a.n, &cfg, &seeds)?;
    fs::create_dir_all(&a.out).with_context(|| format!("creating {}", a.out.display()))?;

    let mut all_ok = true;
    let take = if a.best_only { 1 } else { outcomes.len() };
    for o in outcomes.iter().take(take) {
        let p = &o.file.packing;
        let path = a.out.join(format!("{}.pack", p.label));
        save(&path, &o.file)?;
        let v = verify(&o.file, 1e-12);
        println!(
            "{:<12} d {}  bonds {:>4}  rattlers {:>3}  seeds {:>3}  {}{}",
            p.label,
            fmt_real(p.d),
            o.file.bonds.len(),
            p.rattlers.len(),
            o.seeds.len(),
            v.verdict,
            o.polish_error.as_ref().map_or(String::new(), |e| format!("  UNCONVERGED: {e}")),
        );
        all_ok &= o.converged();
    }
    Ok(all_ok)
}

fn refine(file: &Path, out: Option<&Path>, tol: f64) -> Result<bool> {
    let f = load(file)?;
    let r = pipeline::refine_packing(&f.packing, tol, &PolishOptions::default())?;
    let mut refined = PackingFile::new(r.packing, &r.graph);
    refined.packing.label = f.packing.label.clone();
    save(out.unwrap_or(file), &refined)?;
    println!(
        "d {}  bonds {}  rattlers {}  residual {:.1e}",
        fmt_real(refined.packing.d),
        refined.bonds.len(),
        refined.packing.rattlers.len(),
        r.residual
    );
    Ok(refined.packing.converged)
}

fn verify(f: &PackingFile, tol: f64) -> Verification {
    let p = &f.packing;
    catalog::builtin().verify(p.n() as u64, p.d, Some(f.bonds.len()), Some(p.rattlers.len()), tol)
}

fn verdict_line(v: &Verification) -> String {
    let mut s = format!("verdict {}", v.verdict);
    if let (Some(e), Some(rel)) = (&v.entry, v.rel_diff) {
        let _ = write!(s, "  against {} ({}, d {})  relative diff {:+.3e}", e.label(), e.source.name(), e.d_text, rel);
    }
    let yn = |b: Option<bool>| b.map_or("n/a", |b| if b { "yes" } else { "no" });
    let _ = write!(s, "  bonds agree {}  rattlers agree {}", yn(v.bonds_agree), yn(v.rattlers_agree));
    s
}

fn analyze(file: &Path, gap_max: f64, tol: f64) -> Result<bool> {
    let f = load(file)?;
    let p = &f.packing;
    let g = f.graph();
    let worst = g.bonds.iter().map(|b| b.gap.abs()).fold(0.0, f64::max);
    println!("label {}", if p.label.is_empty() { "-" } else { &p.label });
    println!("n {}", p.n());
    println!("d {}", fmt_real(p.d));
    println!("bonds {}  (largest violation {:.1e})", g.bond_count(), worst);
    println!("rattlers {}  {:?}", g.rattlers.len(), g.rattlers);
    let gaps = gap_report(p, &g, 1e-9, gap_max);
    let values = distinct_gaps(&gaps, 1e-7);
    println!("gap values {}", values.len());
    for v in &values {
        let members: Vec<String> = gaps
            .iter()
            .filter(|r| (r.relative_gap - v).abs() <= 1e-7 + GAP_DEDUP)
            .map(|r| match r.pair {
                GapPair::Disks(i, j) => format!("{i}-{j}"),
                GapPair::Wall(i, w) => format!("{}-{i}", w.name()),
            })
            .collect();
        println!("  {v:.9}  {}", members.join(" "));
    }
    let b = delta_report(p.n() as u64, p.d);
    println!("L {:.15}  t {:.15}  delta {:.15}", b.l, b.t, b.delta);
    println!("{}", verdict_line(&verify(&f, tol)));
    Ok(p.converged)
}

fn classes_cmd(cmd: ClassCmd) -> Result<String> {
    let mut s = String::new();
    match cmd {
        ClassCmd::List { max } => {
            for class in std::iter::once(ClassId::Triangular).chain(ClassId::SEVEN) {
                let members: Vec<String> =
                    (1..).map(|k| classes::member(class, k)).take_while(|&n| n <= max).map(|n| n.to_string()).collect();
                let _ = writeln!(s, "{:<16} {:<18} {}", class.tag(), class.formula(), members.join(" "));
            }
        }
        ClassCmd::Matrix { max } => {
            if max < 4 {
                bail!("--max must be at least 4");
            }
            let _ = writeln!(s, "n,p,k");
            for m in classes::matrix_members_up_to(max) {
                let _ = writeln!(s, "{},{},{}", m.n, m.p, m.k);
            }
        }
        ClassCmd::Exact { class, k } => {
            let class: ClassId = class.parse()?;
            if k == 0 {
                bail!("k starts at 1");
            }
            let n = classes::member(class, k);
            match classes::exact_d(class, k) {
                Some(d) => {
                    let _ = writeln!(s, "{} k={k} n={n} d={}", class.tag(), fmt_real(d));
                }
                None => bail!("no closed form for {} at k = {k}", class.tag()),
            }
        }
        ClassCmd::Memberships { n } => {
            for (class, k) in classes::memberships(n) {
                let t = classes::predicted_structure(class, k);
                let _ = write!(s, "{} k={k}", class.tag());
                if let Some(r) = t.predicted_rattlers {
                    let _ = write!(s, " rattlers={r}");
                }
                if let Some(m) = t.predicted_multiplicity {
                    let _ = write!(s, " best-packings={m}");
                }
                if let Some(tr) = t.predicted_triangles {
                    let _ = write!(s, " triangles={tr}");
                }
                s.push('\n');
            }
        }
    }
    Ok(s)
}

fn delta_csv() -> String {
    let mut s = String::from("n,L,t,delta,source,rank,classes\n");
    for row in catalog::all_delta_rows() {
        let r = row.report;
        let memberships: Vec<String> =
            classes::memberships(r.n).into_iter().map(|(c, k)| format!("{}:{k}", c.tag())).collect();
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            r.n,
            fmt_real(r.l),
            fmt_real(r.t),
            fmt_real(r.delta),
            row.source.name(),
            tripack::ranking::rank_letter(row.rank),
            memberships.join(";")
        );
    }
    s
}
