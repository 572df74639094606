//! `lie2`: build the rank-two algebras, verify the classification tables,
//! identify subalgebras and decompose modules under sl2 triples.
//!
//! Exit codes: 0 clean, 1 mathematical mismatch, 2 usage or parse error.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value as Json};

use lie2::algebra::LieAlgebra;
use lie2::catalog::{show_env, Catalog};
use lie2::exact::{Field, QuadExt, Rational};
use lie2::expr::{common_radicand, normalize_vector, parse_expr, parse_expr_list, Env, Surd};
use lie2::ident::{decompose_sl2, fingerprint, identify, Triple};
use lie2::linalg::{Subspace, Vector};
use lie2::rank2::{Ambient, RankTwo};
use lie2::tables::{default_tables, parse_table, verify_tables, Table, VerifyOptions};

#[derive(Parser)]
#[command(name = "lie2", version, about = "Exact verification of subalgebras of the rank-two simple Lie algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print (or write) the structure constants of an ambient algebra as JSON.
    Build {
        /// c2, a2, a1a1 or g2
        name: String,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Verify every row of the classification tables.
    Verify {
        /// Table files to load (glob); default: $LIE2_TABLE_DIR or the shipped tables.
        #[arg(long)]
        tables: Option<String>,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Worker threads (0: one per core).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Include per-row wall-clock times in the report.
        #[arg(long)]
        timings: bool,
    },
    /// Closure, kind, fingerprint and catalog match of a span.
    Identify {
        #[arg(long)]
        algebra: String,
        /// Generators separated by ';', e.g. "X(0,1); X(1,1)".
        #[arg(long)]
        span: String,
        #[arg(long)]
        json: bool,
    },
    /// Decompose a subspace under an sl2 triple "h; e; f".
    Decompose {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        sl2: String,
        /// "full" or generators separated by ';'.
        #[arg(long, default_value = "full")]
        space: String,
        #[arg(long)]
        json: bool,
    },
    /// Browse the catalog of low-dimensional algebras.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// Print the invariant fingerprint of a span or of a catalog entry.
    Fingerprint {
        #[arg(long, conflicts_with = "entry", required_unless_present = "entry")]
        algebra: Option<String>,
        /// Span inside --algebra (default: the whole algebra).
        #[arg(long, requires = "algebra")]
        span: Option<String>,
        #[arg(long)]
        entry: Option<String>,
        /// Parameter values for --entry, e.g. --param A=1/2.
        #[arg(long = "param", requires = "entry")]
        params: Vec<String>,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    List,
    Show { id: String },
}

fn ambient(name: &str) -> Result<Ambient> {
    match name.to_ascii_lowercase().as_str() {
        "c2" => Ok(Ambient::C2),
        "a2" => Ok(Ambient::A2),
        "a1a1" | "a1xa1" => Ok(Ambient::A1xA1),
        "g2" => Ok(Ambient::G2),
        _ => bail!("unknown algebra {name:?} (expected c2, a2, a1a1 or g2)"),
    }
}

/// Evaluates `;`-separated generators to exact vectors. With `normalize`,
/// each vector is rescaled so that a common quadratic field suffices (spans
/// are unchanged); otherwise values are kept as written.
fn eval_gens(amb: &RankTwo, src: &str, normalize: bool) -> Result<(i64, Vec<Vec<QuadExt>>)> {
    let exprs = parse_expr_list(src).map_err(|e| anyhow!("{src:?}: {e}"))?;
    let env = Env::new();
    let mut vecs = Vec::new();
    for e in &exprs {
        let v = e.eval_vector(&env, amb).map_err(|err| anyhow!("{e}: {err}"))?;
        let q = if normalize {
            normalize_vector(&v)?
        } else {
            v.iter().map(Surd::to_quad).collect::<Result<_, _>>()?
        };
        vecs.push(q);
    }
    let m = common_radicand(vecs.iter().flatten())?;
    Ok((m, vecs))
}

fn field_name(m: i64) -> String {
    match m {
        0 => "Q".into(),
        -1 => "Q(i)".into(),
        m => format!("Q(sqrt({m}))"),
    }
}

fn to_field<F: Field>(vs: &[Vec<QuadExt>]) -> Vec<Vector<F>> {
    vs.iter()
        .map(|v| v.iter().map(|q| F::from_quad(q).expect("common field")).collect())
        .collect()
}

macro_rules! in_field {
    ($m:expr, $F:ident => $body:expr) => {
        if $m == 0 {
            type $F = Rational;
            $body
        } else {
            type $F = QuadExt;
            $body
        }
    };
}

fn identify_json<F: Field>(amb: &RankTwo, vecs: &[Vec<QuadExt>]) -> Result<(Json, String)> {
    let g: LieAlgebra<F> = amb.algebra.map_field(F::from_rational);
    let gens = to_field::<F>(vecs);
    let span = Subspace::span(g.dim(), gens.clone());
    let closure = g.closure(&gens);
    let closed = closure.dim() == span.dim();
    let a = g.induced(&closure)?;
    let (fp, m) = identify(Catalog::shipped(), &a);
    let mut text = String::new();
    if !closed {
        text.push_str(&format!(
            "not closed: span of dimension {} grows to {} under brackets; identifying the closure\n",
            span.dim(),
            closure.dim()
        ));
    }
    text.push_str(&format!("dim {}, {}\n", closure.dim(), fp.kind()));
    match &m {
        Some(m) => text.push_str(&format!("class: {} ({})\n", collapse(&m.resolved), m.verdict)),
        None => text.push_str("class: no catalog match\n"),
    }
    let j = json!({
        "span_dim": span.dim(),
        "closure_dim": closure.dim(),
        "closed": closed,
        "kind": fp.kind(),
        "fingerprint": fp.to_json(),
        "match": m.as_ref().map(|m| json!({
            "class": m.resolved,
            "verdict": m.verdict.to_json(),
            "notes": m.notes,
        })),
    });
    Ok((j, text))
}

fn decompose_json<F: Field>(amb: &RankTwo, triple: &[Vec<QuadExt>], space: Option<&[Vec<QuadExt>]>) -> Result<Json> {
    let g: LieAlgebra<F> = amb.algebra.map_field(F::from_rational);
    let t = to_field::<F>(triple);
    let t = Triple {
        h: t[0].clone(),
        e: t[1].clone(),
        f: t[2].clone(),
    };
    let space = match space {
        Some(vs) => Subspace::span(g.dim(), to_field::<F>(vs)),
        None => Subspace::span(g.dim(), (0..g.dim()).map(|i| lie2::linalg::unit_vec(g.dim(), i))),
    };
    let d = decompose_sl2(&g, &t, &space).map_err(|e| Mismatch(format!("sl2 triple: {e}")))?;
    Ok(json!({
        "space_dim": space.dim(),
        "highest_weights": d.highest,
        "decomposition": d.display(),
    }))
}

/// Writes a line to stdout; a closed pipe (`lie2 ... | head`) is not an error.
fn out(s: &str) {
    use std::io::Write;
    let mut o = std::io::stdout().lock();
    let _ = writeln!(o, "{s}");
}

/// `n_1_1 (+) n_1_1` -> `2n_1_1`, for display.
fn collapse(class: &str) -> String {
    let mut parts: Vec<(usize, &str)> = Vec::new();
    for p in class.split(" (+) ") {
        match parts.last_mut() {
            Some((n, q)) if *q == p => *n += 1,
            _ => parts.push((1, p)),
        }
    }
    parts
        .iter()
        .map(|(n, p)| if *n == 1 { p.to_string() } else { format!("{n}{p}") })
        .collect::<Vec<_>>()
        .join(" (+) ")
}

/// A mathematical failure (exit 1), as opposed to bad input (exit 2).
#[derive(Debug)]
struct Mismatch(String);

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Mismatch {}

fn load_tables(pattern: Option<&str>) -> Result<Vec<Table>> {
    let Some(pattern) = pattern else {
        return Ok(default_tables()?);
    };
    let mut paths: Vec<PathBuf> = glob::glob(pattern)
        .with_context(|| format!("bad glob {pattern:?}"))?
        .collect::<Result<_, _>>()?;
    paths.sort();
    if paths.is_empty() {
        bail!("no table files match {pattern:?}");
    }
    paths
        .iter()
        .map(|p| {
            let src = std::fs::read_to_string(p).with_context(|| p.display().to_string())?;
            Ok(parse_table(&p.display().to_string(), &src)?)
        })
        .collect()
}

fn run(cli: Cli) -> Result<u8> {
    let cat = Catalog::shipped();
    match cli.cmd {
        Cmd::Build { name, emit } => {
            let amb = RankTwo::build(ambient(&name)?);
            let j = amb.algebra.to_json();
            match emit {
                Some(p) => {
                    std::fs::write(&p, j + "\n").with_context(|| p.display().to_string())?;
                    out(&format!("{}: dimension {} written to {}", amb.ambient, amb.dim(), p.display()));
                }
                None => out(&j),
            }
        }
        Cmd::Verify {
            tables,
            samples,
            seed,
            report,
            jobs,
            timings,
        } => {
            if samples == 0 {
                bail!("--samples must be at least 1");
            }
            let tables = load_tables(tables.as_deref())?;
            let opts = VerifyOptions {
                samples,
                seed,
                jobs,
                timings,
            };
            let rep = verify_tables(cat, &tables, &opts);
            if let Some(p) = report {
                let text = serde_json::to_string_pretty(&rep.to_json())? + "\n";
                std::fs::write(&p, text).with_context(|| p.display().to_string())?;
            }
            out(rep.human_summary().trim_end());
            return Ok(if rep.clean() { 0 } else { 1 });
        }
        Cmd::Identify { algebra, span, json } => {
            let amb = RankTwo::build(ambient(&algebra)?);
            let (m, vecs) = eval_gens(&amb, &span, true)?;
            let (mut j, text) = in_field!(m, F => identify_json::<F>(&amb, &vecs)?);
            if json {
                j["command"] = json!("identify");
                j["tool_version"] = json!(env!("CARGO_PKG_VERSION"));
                j["algebra"] = json!(amb.ambient.to_string());
                j["field"] = json!(field_name(m));
                out(&serde_json::to_string_pretty(&j)?);
            } else {
                out(text.trim_end());
            }
        }
        Cmd::Decompose {
            algebra,
            sl2,
            space,
            json,
        } => {
            let amb = RankTwo::build(ambient(&algebra)?);
            let (m1, triple) = eval_gens(&amb, &sl2, false)?;
            if triple.len() != 3 {
                bail!("--sl2 needs exactly three elements \"h; e; f\", got {}", triple.len());
            }
            let space_vecs = if space.trim() == "full" {
                None
            } else {
                Some(eval_gens(&amb, &space, true)?)
            };
            let m = match &space_vecs {
                Some((m2, _)) if *m2 != 0 && m1 != 0 && *m2 != m1 => {
                    bail!("triple and space need different quadratic fields")
                }
                Some((m2, _)) if m1 == 0 => *m2,
                _ => m1,
            };
            let sv = space_vecs.as_ref().map(|(_, v)| v.as_slice());
            let mut j = in_field!(m, F => decompose_json::<F>(&amb, &triple, sv)?);
            if json {
                j["command"] = json!("decompose");
                j["tool_version"] = json!(env!("CARGO_PKG_VERSION"));
                j["algebra"] = json!(amb.ambient.to_string());
                j["field"] = json!(field_name(m));
                out(&serde_json::to_string_pretty(&j)?);
            } else {
                out(j["decomposition"].as_str().unwrap_or_default());
            }
        }
        Cmd::Catalog { cmd } => match cmd {
            CatalogCmd::List => {
                for e in cat.entries() {
                    let q = cat.quarantine_reason(&e.id).map(|_| "  [quarantined]").unwrap_or("");
                    let params = if e.params.is_empty() {
                        String::new()
                    } else {
                        format!(" ({})", e.params.join(","))
                    };
                    out(&format!("{}{params}\tdim {}\t{}{q}", e.id, e.dim, e.kind));
                }
            }
            CatalogCmd::Show { id } => {
                let e = cat.get(&id).ok_or_else(|| anyhow!("unknown catalog entry {id:?}"))?;
                let brackets: Vec<Json> = e
                    .brackets
                    .iter()
                    .map(|b| json!([e.basis[b.x], e.basis[b.y], e.basis[b.z], b.coeff.to_string()]))
                    .collect();
                let j = json!({
                    "id": e.id,
                    "dim": e.dim,
                    "kind": e.kind.to_string(),
                    "params": e.params,
                    "constraints": e.constraints.iter().map(|(s, _)| s).collect::<Vec<_>>(),
                    "basis": e.basis,
                    "brackets": brackets,
                    "nilradical": e.stated_nilradical,
                    "iso_over_c": e.iso_over_c,
                    "levi": e.levi.as_ref().map(|l| json!({"factor": l.factor, "radical": l.radical, "rho": l.rho})),
                    "quarantine": cat.quarantine_reason(&e.id),
                });
                out(&serde_json::to_string_pretty(&j)?);
            }
        },
        Cmd::Fingerprint {
            algebra,
            span,
            entry,
            params,
        } => {
            let fp = if let Some(id) = entry {
                let mut env = Env::new();
                for p in &params {
                    let (k, v) = p
                        .split_once('=')
                        .ok_or_else(|| anyhow!("--param expects NAME=VALUE, got {p:?}"))?;
                    let v = parse_expr(v)
                        .and_then(|e| e.eval_scalar(&Env::new()))
                        .map_err(|e| anyhow!("{p}: {e}"))?;
                    env.insert(k.trim().to_string(), v);
                }
                let q = env.values().map(Surd::to_quad).collect::<Result<Vec<_>, _>>()?;
                let m = common_radicand(q.iter())?;
                let fp = in_field!(m, F => fingerprint(&cat.instantiate::<F>(&id, &env).map_err(|e| anyhow!("{id} at {}: {e}", show_env(&env)))?));
                fp
            } else {
                let amb = RankTwo::build(ambient(algebra.as_deref().unwrap_or_default())?);
                match span {
                    None => fingerprint(&amb.algebra),
                    Some(s) => {
                        let (m, vecs) = eval_gens(&amb, &s, true)?;
                        in_field!(m, F => {
                            let g: LieAlgebra<F> = amb.algebra.map_field(F::from_rational);
                            let gens = to_field::<F>(&vecs);
                            let span = Subspace::span(g.dim(), gens.clone());
                            let closure = g.closure(&gens);
                            if closure.dim() != span.dim() {
                                return Err(Mismatch(format!(
                                    "span of dimension {} is not a subalgebra (closure has dimension {})",
                                    span.dim(),
                                    closure.dim()
                                ))
                                .into());
                            }
                            fingerprint(&g.induced(&span)?)
                        })
                    }
                }
            };
            out(&serde_json::to_string_pretty(&fp.to_json())?);
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Mismatch>().is_some() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
