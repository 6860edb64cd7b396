//! Command implementations for the `xconn` binary. Each command renders its
//! output to a string so runs can be compared byte for byte.

pub mod checks;

use std::fmt::Write as _;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use xconn::bundle::{assemble_amalgam, fiber_family};
use xconn::category::{enumerate_normal_cones, ConeJson, SubspaceCategory};
use xconn::crossconn::{
    build_cross_conn_semigroup_over, chi_report, gamma_eps, verify_cross_connection,
    MembershipReading,
};
use xconn::gf::{
    enumerate_automorphisms, enumerate_endos, enumerate_subspaces, general_linear_order, Endo,
    Field,
};
use xconn::semigroup::{eggbox_export, green_relations};
use xconn::sing::SingSemigroup;

pub use checks::{verify_all, verify_table, CheckResult, Report, Status};

#[derive(Parser, Debug)]
#[command(name = "xconn", version, about = "Singular endomorphism semigroups, normal cones and cross-connections over GF(p)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Counts of subspaces, singular endomorphisms and idempotents.
    Enumerate(Common),
    /// Runs every verification; exits nonzero if any check fails.
    VerifyAll {
        #[command(flatten)]
        common: Common,
        /// Check a Cayley table file instead of the built-in structures.
        #[arg(long)]
        table: Option<std::path::PathBuf>,
    },
    /// Green's relations of Sing(V) as an eggbox diagram.
    Green(Common),
    /// The semigroup of normal cones of S(V).
    Cones(Common),
    /// Cross-connection semigroups for one or all automorphisms.
    Crossconn {
        #[command(flatten)]
        common: Common,
        /// Automorphism as a matrix literal, `[[0,1],[1,0]]` or `01;10`.
        #[arg(long)]
        eps: Option<String>,
        /// Sweep every automorphism of V.
        #[arg(long)]
        all_eps: bool,
    },
    /// The amalgam of cross-connection semigroups over a fiber family.
    Amalgam {
        #[command(flatten)]
        common: Common,
        /// Fiber dimensions, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "2,2,3")]
        dims: Vec<usize>,
        /// Core dimension; defaults to the smallest fiber dimension.
        #[arg(long)]
        core_dim: Option<usize>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, default_value_t = 2)]
    pub field: u8,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(short, long)]
    pub verbose: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Dot,
}

/// Rendered output and whether every requested verification passed.
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Enumerate(c) | Command::Green(c) | Command::Cones(c) => c,
            Command::VerifyAll { common, .. }
            | Command::Crossconn { common, .. }
            | Command::Amalgam { common, .. } => common,
        }
    }
}

/// Parses `args`, runs the command and writes its output. Returns the exit
/// code: 0 when every check passed, 1 when one failed, 2 on error.
pub fn execute<I, T>(args: I, stdout: &mut dyn std::io::Write, stderr: &mut dyn std::io::Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return e.exit_code() as u8;
        }
    };
    let outcome = match run(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            return 2;
        }
    };
    let written = match &cli.command.common().out {
        Some(path) => std::fs::write(path, &outcome.text).map_err(|e| format!("{}: {e}", path.display())),
        None => stdout.write_all(outcome.text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return 2;
    }
    if outcome.ok {
        0
    } else {
        1
    }
}

pub fn run(cmd: &Command) -> Result<Outcome> {
    let c = cmd.common();
    let field = Field::new(c.field)?;
    match cmd {
        Command::Enumerate(c) => enumerate(field, c),
        Command::VerifyAll { common, table } => verify(field, common, table.as_deref()),
        Command::Green(c) => green(field, c),
        Command::Cones(c) => cones(field, c),
        Command::Crossconn { common, eps, all_eps } => crossconn(field, common, eps.as_deref(), *all_eps),
        Command::Amalgam { common, dims, core_dim } => amalgam(field, common, dims, *core_dim),
    }
}

fn json_text(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn only(c: &Common, allowed: &[Format], default: Format) -> Result<Format> {
    let f = c.format.unwrap_or(default);
    if !allowed.contains(&f) {
        bail!("format {f:?} is not available for this command");
    }
    Ok(f)
}

fn enumerate(field: Field, c: &Common) -> Result<Outcome> {
    let format = only(c, &[Format::Table, Format::Json], Format::Table)?;
    let n = c.dim;
    let endos = enumerate_endos(field, n, false)?;
    let singular: Vec<&Endo> = endos.iter().filter(|e| e.is_singular()).collect();
    let idempotents = singular.iter().filter(|e| e.is_idempotent()).count();
    let proper = enumerate_subspaces(field, n, true)?.len();
    let all = enumerate_subspaces(field, n, false)?.len();
    let rows = [
        ("proper_subspaces", proper as u128),
        ("subspaces", all as u128),
        ("endomorphisms", endos.len() as u128),
        ("singular_endomorphisms", singular.len() as u128),
        ("idempotents", idempotents as u128),
        ("automorphisms", general_linear_order(field.p() as u128, n)),
    ];
    let text = match format {
        Format::Json => {
            let mut m = serde_json::Map::new();
            m.insert("p".into(), json!(field.p()));
            m.insert("n".into(), json!(n));
            for (k, v) in rows {
                m.insert(k.into(), json!(v));
            }
            json_text(&m)
        }
        _ => {
            let mut s = format!("GF({})^{n}\n", field.p());
            for (k, v) in rows {
                let _ = writeln!(s, "  {k:<24}{v}");
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

fn verify(field: Field, c: &Common, table: Option<&std::path::Path>) -> Result<Outcome> {
    let format = only(c, &[Format::Table, Format::Json], Format::Json)?;
    let report = match table {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            verify_table(&text)
        }
        None => verify_all(field, c.dim, c.seed)?,
    };
    let text = match format {
        Format::Json => json_text(&report),
        _ => {
            let mut s = String::new();
            for check in &report.checks {
                let status = if check.passed() { "PASS" } else { "FAIL" };
                let _ = writeln!(s, "{status}  {}", check.check);
                if c.verbose || !check.passed() {
                    let _ = writeln!(s, "      {}", check.witness);
                }
            }
            for name in &report.skipped {
                let _ = writeln!(s, "SKIP  {name}");
            }
            if !report.passed {
                let _ = writeln!(s, "failing: {}", report.failing().join(", "));
            }
            s
        }
    };
    Ok(Outcome {
        text,
        ok: report.passed,
    })
}

fn green(field: Field, c: &Common) -> Result<Outcome> {
    let format = only(c, &[Format::Dot, Format::Json, Format::Table], Format::Table)?;
    let sing = SingSemigroup::build(field, c.dim)?;
    let g = green_relations(sing.semigroup()).normalized();
    let (dot, json) = eggbox_export(sing.semigroup(), &g);
    let text = match format {
        Format::Dot => dot,
        Format::Json => json + "\n",
        Format::Table => {
            let mut s = format!("Sing(GF({})^{}): {} elements\n", field.p(), c.dim, sing.order());
            for (size, rows, cols) in g.shape() {
                let _ = writeln!(s, "  D-class of {size}: {rows} R-classes x {cols} L-classes");
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

fn cones(field: Field, c: &Common) -> Result<Outcome> {
    let format = only(c, &[Format::Json, Format::Table], Format::Table)?;
    let cat = SubspaceCategory::build(field, c.dim)?;
    let ts = enumerate_normal_cones(&cat)?;
    let text = match format {
        Format::Json => {
            let cones: Vec<ConeJson> = ts.cones().iter().cloned().map(ConeJson::from).collect();
            json_text(&json!({
                "p": field.p(),
                "n": c.dim,
                "exhaustive": ts.is_exhaustive(),
                "order": ts.order(),
                "cones": cones,
                "table": ts.semigroup().rows(),
            }))
        }
        _ => {
            let mut s = format!(
                "normal cones of S(GF({})^{}): {} ({})\n",
                field.p(),
                c.dim,
                ts.order(),
                if ts.is_exhaustive() { "exhaustive" } else { "principal" }
            );
            for (i, cone) in ts.cones().iter().enumerate() {
                let _ = writeln!(s, "  {i:>4}  {cone}");
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

/// `[[0,1],[1,0]]` (JSON) or `01;10` / `0,1;1,0`.
pub fn parse_matrix(field: Field, text: &str) -> Result<Endo> {
    let t = text.trim();
    let rows: Vec<Vec<u8>> = if t.starts_with('[') {
        serde_json::from_str(t).context("matrix literal")?
    } else {
        t.split(';')
            .map(|r| {
                let r = r.trim();
                if r.contains(',') {
                    r.split(',').map(|x| x.trim().parse::<u8>().context("matrix entry")).collect()
                } else {
                    r.chars()
                        .map(|ch| ch.to_digit(10).map(|d| d as u8).context("matrix entry"))
                        .collect()
                }
            })
            .collect::<Result<_>>()?
    };
    Ok(Endo::new(field, rows)?)
}

fn crossconn(field: Field, c: &Common, eps: Option<&str>, all_eps: bool) -> Result<Outcome> {
    let format = only(c, &[Format::Json, Format::Table], Format::Table)?;
    let n = c.dim;
    let family = match (eps, all_eps) {
        (Some(_), true) => bail!("--eps and --all-eps are exclusive"),
        (Some(e), false) => {
            let e = parse_matrix(field, e)?;
            if e.dim() != n {
                bail!("--eps is {0}x{0} but --dim is {n}", e.dim());
            }
            vec![e]
        }
        (None, true) => enumerate_automorphisms(field, n)?,
        (None, false) => vec![Endo::identity(field, n)],
    };
    let sing = Arc::new(SingSemigroup::build(field, n)?);
    let mut ok = true;
    let mut entries = Vec::new();
    for e in &family {
        let s = build_cross_conn_semigroup_over(e, sing.clone())?;
        let cc = gamma_eps(e)?;
        let cover = verify_cross_connection(&cc)?;
        let chi = chi_report(&cc, MembershipReading::Literal)?;
        let proj = s.projection_report()?;
        let passed = proj.is_isomorphism() && s.second_coordinates_consistent() && cover.passed() && chi.bijective;
        ok &= passed;
        entries.push((s, cover.passed(), chi.bijective, proj.is_isomorphism(), passed));
    }
    let text = match format {
        Format::Json => {
            let list: Vec<_> = entries
                .iter()
                .map(|(s, cover, chi, proj, passed)| {
                    json!({
                        "semigroup": s.to_json(),
                        "covering": cover,
                        "chi_bijective": chi,
                        "projection_isomorphism": proj,
                        "passed": passed,
                    })
                })
                .collect();
            json_text(&json!({"p": field.p(), "n": n, "count": list.len(), "cross_connections": list}))
        }
        _ => {
            let mut s = format!("{} cross-connection semigroup(s) over GF({})^{n}\n", entries.len(), field.p());
            for (sg, cover, chi, proj, passed) in &entries {
                let _ = writeln!(
                    s,
                    "  eps={}  order={}  covering={cover}  chi={chi}  projection_iso={proj}  {}",
                    sg.epsilon(),
                    sg.order(),
                    if *passed { "PASS" } else { "FAIL" }
                );
            }
            s
        }
    };
    Ok(Outcome { text, ok })
}

fn amalgam(field: Field, c: &Common, dims: &[usize], core_dim: Option<usize>) -> Result<Outcome> {
    let format = only(c, &[Format::Json, Format::Dot, Format::Table], Format::Json)?;
    let k = dims.iter().copied().max().unwrap_or(0);
    let spec = fiber_family(field, k, dims, None)?;
    let b = assemble_amalgam(&spec, core_dim, None)?;
    let text = match format {
        Format::Json => json_text(&b.to_json()),
        Format::Dot => b.to_dot(),
        Format::Table => {
            let mut s = format!("core W: GF({})^{}, order {}\n", field.p(), b.core.m, b.core.semigroup.order());
            for (i, e) in b.report.embeddings.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "  V{i}: dim {}, order {}, embedding hom={} injective={}",
                    dims[i],
                    b.branches[i].order(),
                    e.morphism.is_hom,
                    e.morphism.is_injective
                );
            }
            let _ = writeln!(s, "valid: {}", b.report.valid);
            s
        }
    };
    Ok(Outcome {
        text,
        ok: b.report.valid,
    })
}
