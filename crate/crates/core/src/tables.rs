//! Classification tables: record format and parser, seeded parameter
//! sampling, and the row-by-row verification harness.
//!
//! A table file is line oriented. Lines starting with `#` are comments; the
//! header must contain `# Table N: title` and `# rows: K`. Every other
//! non-blank line is a record
//!
//! ```text
//! table | ambient | gens | params | conditions | dim | kind | class | notes
//! ```
//!
//! `gens` is a `;`-separated list of generator expressions; Levi rows write
//! `levi gens & radical gens`. `params` is a comma list of parameter names,
//! `conditions` a comma list of (in)equalities, `class` a class claim in the
//! grammar of [`crate::expr`]. Notes are free text; a note starting with
//! `erratum:` marks a row whose printed class formula was corrected.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value as Json};
use thiserror::Error;

use crate::catalog::{show_env, Catalog, Kind};
use crate::exact::{Field, QuadExt, Rational};
use crate::expr::{
    common_radicand, normalize_vector, parse_class, parse_cond_list, parse_expr_list, token_texts,
    Binding, ClassBase, ClassInstance, ClassSpec, ClassSum, Cond, Env, Expr, ExprError, Guard,
    Operand, RelOp, Surd, Target,
};
use crate::ident::{
    fingerprint, match_any, root_decomposition, verify_levi, LeviClaim, Verdict,
};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::rank2::{Ambient, RankTwo};

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("{file}:{line}:{col}: {msg}")]
    Parse {
        file: String,
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("{file}: header declares {declared} rows, found {found}")]
    RowCount {
        file: String,
        declared: usize,
        found: usize,
    },
    #[error("{0}: {1}")]
    Io(String, String),
    #[error("row {0}: no admissible parameter values")]
    Unsatisfiable(String),
}

// ---------------------------------------------------------------------------
// Rows

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub table: usize,
    /// 1-based position in its table.
    pub index: usize,
    pub file: String,
    pub line: usize,
    pub ambient: Ambient,
    pub gens: Vec<Expr>,
    /// Number of Levi-factor generators (the rest span the radical).
    pub levi_split: Option<usize>,
    pub params: Vec<String>,
    pub conditions: Vec<Cond>,
    pub dim: usize,
    pub kind: Kind,
    pub class: ClassSpec,
    pub notes: String,
    pub source: String,
}

impl TableRow {
    pub fn key(&self) -> String {
        format!("{:02}.{:02}", self.table, self.index)
    }

    /// Corrections recorded in the notes.
    pub fn errata(&self) -> Vec<String> {
        self.notes
            .split(';')
            .map(str::trim)
            .filter_map(|n| n.strip_prefix("erratum:").map(|s| s.trim().to_string()))
            .collect()
    }

    /// Whether every generator lies in the Cartan subalgebra.
    pub fn cartan_only(&self) -> bool {
        fn walk(e: &Expr) -> bool {
            match e {
                Expr::Root { .. } => false,
                Expr::T(a, b) | Expr::H(a, b) | Expr::Bin(_, a, b) => walk(a) && walk(b),
                Expr::Call(_, a) | Expr::Neg(a) | Expr::Pow(a, _) | Expr::Paren(a) => walk(a),
                _ => true,
            }
        }
        self.gens.iter().all(walk)
    }

    /// Inverse of [`parse_row`], up to whitespace.
    pub fn unparse(&self) -> String {
        let list = |es: &[Expr]| es.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; ");
        let gens = match self.levi_split {
            Some(k) => format!("{} & {}", list(&self.gens[..k]), list(&self.gens[k..])),
            None => list(&self.gens),
        };
        let conds: Vec<String> = self.conditions.iter().map(|c| c.to_string()).collect();
        format!(
            "{} | {} | {} | {} | {} | {} | {} | {} | {}",
            self.table,
            self.ambient,
            gens,
            self.params.join(","),
            conds.join(", "),
            self.dim,
            self.kind,
            self.class,
            self.notes
        )
        .trim_end()
        .to_string()
    }
}

/// Compares two records field by field: tokens for the structured fields,
/// trimmed text for the notes.
pub fn records_token_identical(a: &str, b: &str) -> bool {
    let fa: Vec<&str> = a.splitn(9, '|').collect();
    let fb: Vec<&str> = b.splitn(9, '|').collect();
    if fa.len() != 9 || fb.len() != 9 {
        return false;
    }
    let structured = fa[..8]
        .iter()
        .zip(&fb[..8])
        .all(|(x, y)| match (token_texts(&x.replace('&', ";;")), token_texts(&y.replace('&', ";;"))) {
            (Ok(p), Ok(q)) => p == q,
            _ => false,
        });
    structured && fa[8].trim() == fb[8].trim()
}

fn walk_atoms(e: &Expr, amb: &RankTwo, vars: &mut Vec<String>) -> Result<(), String> {
    match e {
        Expr::Root { positive, m, n } => {
            let (m, n) = if *positive { (*m, *n) } else { (-*m, -*n) };
            amb.root_index(m, n).map(|_| ()).map_err(|_| format!("unknown atom {e} in {}", amb.ambient))
        }
        Expr::T(a, b) => {
            if amb.ambient != Ambient::C2 {
                return Err(format!("T(.,.) is only defined in C2, not {}", amb.ambient));
            }
            walk_atoms(a, amb, vars)?;
            walk_atoms(b, amb, vars)
        }
        Expr::H(a, b) | Expr::Bin(_, a, b) => {
            walk_atoms(a, amb, vars)?;
            walk_atoms(b, amb, vars)
        }
        Expr::Call(_, a) | Expr::Neg(a) | Expr::Pow(a, _) | Expr::Paren(a) => walk_atoms(a, amb, vars),
        Expr::Var(v) => {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

fn class_vars(spec: &ClassSpec) -> Vec<String> {
    fn sum(s: &ClassSum, out: &mut Vec<String>) {
        for t in &s.0 {
            base(&t.base, out);
        }
    }
    fn base(b: &ClassBase, out: &mut Vec<String>) {
        match b {
            ClassBase::Entry { bindings, .. } => {
                for b in bindings {
                    match b {
                        Binding::Eq(_, e) => e.vars(out),
                        Binding::Each(_, es) => es.iter().for_each(|e| e.vars(out)),
                        Binding::Tuples(_, ts) => ts.iter().flatten().for_each(|e| e.vars(out)),
                    }
                }
            }
            ClassBase::Levi(s) => base(&s.base, out),
            ClassBase::Group(s) => sum(s, out),
        }
    }
    let mut out = Vec::new();
    for c in &spec.clauses {
        if let Guard::If(cond) = &c.guard {
            cond.vars(&mut out);
        }
        match &c.target {
            Target::One(s) => sum(s, &mut out),
            Target::Any(ss) => ss.iter().for_each(|s| sum(s, &mut out)),
        }
    }
    for (_, e) in &spec.bindings {
        e.vars(&mut out);
    }
    out
}

/// Parses one record.
pub fn parse_row(text: &str) -> Result<TableRow, TableError> {
    parse_row_at(text, "<row>", 1)
}

fn parse_row_at(text: &str, file: &str, line: usize) -> Result<TableRow, TableError> {
    let err = |col: usize, msg: String| TableError::Parse {
        file: file.to_string(),
        line,
        col,
        msg,
    };
    // Character offsets of the fields.
    let mut fields: Vec<(usize, &str)> = Vec::new();
    let mut start = 0;
    let mut col = 0;
    for (i, ch) in text.char_indices() {
        if ch == '|' && fields.len() < 8 {
            fields.push((col, &text[start..i]));
            start = i + 1;
            col = text[..start].chars().count();
        }
    }
    fields.push((col, &text[start..]));
    if fields.len() != 9 {
        return Err(err(
            text.chars().count() + 1,
            format!("expected 9 '|'-separated fields, found {}", fields.len()),
        ));
    }
    let at = |i: usize, e: ExprError| match e {
        ExprError::Syntax { col, msg } => err(fields[i].0 + col, msg),
        other => err(fields[i].0 + 1, other.to_string()),
    };
    let lead = |i: usize| {
        let s = fields[i].1;
        fields[i].0 + s.chars().take_while(|c| c.is_whitespace()).count() + 1
    };

    let table: usize = fields[0]
        .1
        .trim()
        .parse()
        .map_err(|_| err(lead(0), format!("bad table number {:?}", fields[0].1.trim())))?;
    let ambient: Ambient = fields[1]
        .1
        .trim()
        .parse()
        .map_err(|e: crate::rank2::Rank2Error| err(lead(1), e.to_string()))?;
    let amb = RankTwo::build(ambient);

    let gtext = fields[2].1;
    let (gens, levi_split) = match gtext.find('&') {
        Some(pos) => {
            let levi = parse_expr_list(&gtext[..pos]).map_err(|e| at(2, e))?;
            let rad_col = gtext[..=pos].chars().count();
            let rad = parse_expr_list(&gtext[pos + 1..]).map_err(|e| match e {
                ExprError::Syntax { col, msg } => err(fields[2].0 + rad_col + col, msg),
                other => err(fields[2].0 + rad_col + 1, other.to_string()),
            })?;
            let k = levi.len();
            (levi.into_iter().chain(rad).collect::<Vec<_>>(), Some(k))
        }
        None => (parse_expr_list(gtext).map_err(|e| at(2, e))?, None),
    };
    if gens.is_empty() {
        return Err(err(lead(2), "no generators".into()));
    }

    let params: Vec<String> = fields[3]
        .1
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect();
    for p in &params {
        let ok = p.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && p.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(err(lead(3), format!("bad parameter name {p:?}")));
        }
    }

    let mut vars = Vec::new();
    for g in &gens {
        walk_atoms(g, &amb, &mut vars).map_err(|m| err(lead(2), m))?;
    }
    if let Some(v) = vars.iter().find(|v| !params.contains(v)) {
        return Err(err(lead(2), format!("undeclared parameter {v}")));
    }

    let conditions = parse_cond_list(fields[4].1).map_err(|e| at(4, e))?;
    let mut cvars = Vec::new();
    conditions.iter().for_each(|c| c.vars(&mut cvars));
    if let Some(v) = cvars.iter().find(|v| !params.contains(v)) {
        return Err(err(lead(4), format!("undeclared parameter {v}")));
    }

    let dim: usize = fields[5]
        .1
        .trim()
        .parse()
        .map_err(|_| err(lead(5), format!("bad dimension {:?}", fields[5].1.trim())))?;
    let kind: Kind = fields[6].1.trim().parse().map_err(|m| err(lead(6), m))?;
    let class = parse_class(fields[7].1).map_err(|e| at(7, e))?;
    let bound: Vec<&String> = class.bindings.iter().map(|(n, _)| n).collect();
    if let Some(v) = class_vars(&class)
        .iter()
        .find(|v| !params.contains(v) && !bound.contains(v))
    {
        return Err(err(lead(7), format!("undeclared parameter {v}")));
    }

    if dim != gens.len() {
        return Err(err(
            lead(5),
            format!("dimension {dim} but {} generators", gens.len()),
        ));
    }
    if (kind == Kind::Levi) != levi_split.is_some() {
        return Err(err(lead(6), "levi rows, and only they, use 'levi & radical'".into()));
    }

    Ok(TableRow {
        table,
        index: 0,
        file: file.to_string(),
        line,
        ambient,
        gens,
        levi_split,
        params,
        conditions,
        dim,
        kind,
        class,
        notes: fields[8].1.trim().to_string(),
        source: text.to_string(),
    })
}

// ---------------------------------------------------------------------------
// Tables

#[derive(Debug, Clone)]
pub struct Table {
    pub number: usize,
    pub title: String,
    pub file: String,
    pub rows: Vec<TableRow>,
}

pub fn parse_table(file: &str, src: &str) -> Result<Table, TableError> {
    let mut number = None;
    let mut title = String::new();
    let mut declared = None;
    let mut rows = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() {
            continue;
        }
        if let Some(c) = t.strip_prefix('#') {
            let c = c.trim();
            if let Some(rest) = c.strip_prefix("Table ") {
                let (n, ttl) = rest.split_once(':').unwrap_or((rest, ""));
                number = n.trim().parse().ok();
                title = ttl.trim().to_string();
            } else if let Some(k) = c.strip_prefix("rows:") {
                declared = Some(k.trim().parse::<usize>().map_err(|_| TableError::Parse {
                    file: file.into(),
                    line,
                    col: 1,
                    msg: "bad row count".into(),
                })?);
            }
            continue;
        }
        let mut row = parse_row_at(raw, file, line)?;
        row.index = rows.len() + 1;
        rows.push(row);
    }
    let missing = |what: &str| TableError::Parse {
        file: file.into(),
        line: 1,
        col: 1,
        msg: format!("missing '# {what}' header"),
    };
    let number: usize = number.ok_or_else(|| missing("Table N: title"))?;
    let declared = declared.ok_or_else(|| missing("rows: K"))?;
    if declared != rows.len() {
        return Err(TableError::RowCount {
            file: file.into(),
            declared,
            found: rows.len(),
        });
    }
    if let Some(r) = rows.iter().find(|r| r.table != number) {
        return Err(TableError::Parse {
            file: file.into(),
            line: r.line,
            col: 1,
            msg: format!("row belongs to table {}, file is table {number}", r.table),
        });
    }
    Ok(Table {
        number,
        title,
        file: file.to_string(),
        rows,
    })
}

macro_rules! shipped_tables {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../data/tables/", $name)))),*]
    };
}

const SHIPPED: &[(&str, &str)] = shipped_tables!(
    "01_c2_dim1.tbl",
    "02_c2_dim2.tbl",
    "03_c2_dim3.tbl",
    "04_c2_dim4.tbl",
    "05_c2_dim5_6.tbl",
    "06_c2_levi.tbl",
    "07_a2_dim1_2.tbl",
    "08_a2_dim3_5.tbl",
    "09_a2_levi.tbl",
    "10_a1a1_solvable.tbl",
    "11_a1a1_levi.tbl",
    "12_g2_dim1.tbl",
    "13_g2_dim2.tbl",
    "14_g2_regular_dim3.tbl",
    "15_g2_nonregular_dim3.tbl",
    "16_g2_regular_dim4.tbl",
    "17_g2_nonregular_dim4.tbl",
    "18_g2_dim5.tbl",
    "19_g2_dim6.tbl",
    "20_g2_dim7_8.tbl",
    "21_g2_semisimple.tbl",
    "22_g2_levi.tbl",
);

/// The tables compiled into the library.
pub fn shipped() -> Result<Vec<Table>, TableError> {
    SHIPPED.iter().map(|(f, src)| parse_table(f, src)).collect()
}

/// Every `*.tbl` file of a directory, in file-name order.
pub fn load_dir(dir: &Path) -> Result<Vec<Table>, TableError> {
    let io = |e: std::io::Error| TableError::Io(dir.display().to_string(), e.to_string());
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "tbl"))
        .collect();
    files.sort();
    files
        .iter()
        .map(|p| {
            let src = std::fs::read_to_string(p)
                .map_err(|e| TableError::Io(p.display().to_string(), e.to_string()))?;
            let name = p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            parse_table(&name, &src)
        })
        .collect()
}

/// Tables from `$LIE2_TABLE_DIR` if set, else the shipped ones.
pub fn default_tables() -> Result<Vec<Table>, TableError> {
    match std::env::var_os("LIE2_TABLE_DIR") {
        Some(dir) => load_dir(Path::new(&dir)),
        None => shipped(),
    }
}

// ---------------------------------------------------------------------------
// Sampling

fn value_pool() -> Vec<Rational> {
    let mut set = BTreeSet::new();
    for num in -6i64..=6 {
        for den in 1i64..=4 {
            set.insert(Rational::new(num, den).expect("nonzero denominator"));
        }
    }
    let mut pool: Vec<Rational> = set.into_iter().collect();
    pool.sort_by(|a, b| a.height().cmp(&b.height()).then(a.abs().cmp(&b.abs())).then(b.cmp(a)));
    pool
}

fn fnv(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

fn env_of(params: &[String], vals: &[Rational]) -> Env {
    params
        .iter()
        .zip(vals)
        .map(|(p, v)| (p.clone(), Surd::rational(v.clone())))
        .collect()
}

fn admissible(row: &TableRow, amb: &RankTwo, env: &Env) -> bool {
    row.conditions.iter().all(|c| c.eval(env).unwrap_or(false))
        && row.gens.iter().all(|g| g.eval_vector(env, amb).is_ok())
}

/// Disjuncts of a guard, each of which gets its own exact-branch sample.
fn disjuncts(c: &Cond) -> Vec<&Cond> {
    match c {
        Cond::Or(cs) => cs.iter().flat_map(disjuncts).collect(),
        other => vec![other],
    }
}

/// Deterministic admissible parameter values for a row: `count` seeded draws
/// from a height-bounded pool of small rationals, then one exact sample per
/// branch of the class claim, then one sample next to each excluded value.
pub fn sample_params(row: &TableRow, count: usize, seed: u64) -> Result<Vec<Env>, TableError> {
    if row.params.is_empty() {
        return Ok(vec![Env::new()]);
    }
    let amb = RankTwo::build(row.ambient);
    let pool = value_pool();
    let k = row.params.len();
    let mut out: Vec<Env> = Vec::new();
    let push = |out: &mut Vec<Env>, env: Env| {
        if !out.contains(&env) {
            out.push(env);
        }
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv(&row.key()));
    let mut tries = 0;
    let target = count.max(1);
    while out.len() < target && tries < 20_000 {
        tries += 1;
        let vals: Vec<Rational> = (0..k).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
        let env = env_of(&row.params, &vals);
        if admissible(row, &amb, &env) {
            push(&mut out, env);
        }
    }

    // Small points first, in a fixed order.
    let grid: Vec<Env> = {
        let small: Vec<Rational> = pool.iter().take(25).cloned().collect();
        let mut pts: Vec<Vec<Rational>> = vec![Vec::new()];
        for _ in 0..k {
            pts = pts
                .into_iter()
                .flat_map(|p| {
                    small.iter().map(move |v| {
                        let mut p = p.clone();
                        p.push(v.clone());
                        p
                    })
                })
                .collect();
        }
        pts.sort_by(|a, b| {
            let h = |p: &Vec<Rational>| p.iter().map(|x| x.height()).max();
            h(a).cmp(&h(b))
        });
        pts.iter().map(|p| env_of(&row.params, p)).collect()
    };
    for guard in row.class.guards() {
        for d in disjuncts(guard) {
            let hit = grid.iter().find(|env| {
                let full = row.class.extend_env(env);
                d.eval(&full).unwrap_or(false) && admissible(row, &amb, env)
            });
            if let Some(env) = hit {
                push(&mut out, env.clone());
            }
        }
    }
    // Next to excluded values `x != k`.
    let base = grid.iter().find(|env| admissible(row, &amb, env)).cloned();
    if let Some(base) = base {
        let delta = Rational::new(1, 16).expect("nonzero");
        for c in &row.conditions {
            let Cond::Rel(Operand::Expr(Expr::Var(x)), RelOp::Ne, Operand::Expr(e)) = c else {
                continue;
            };
            let Some(v) = e.eval_scalar(&Env::new()).ok().and_then(|s| s.as_rational()) else {
                continue;
            };
            let mut env = base.clone();
            env.insert(x.clone(), Surd::rational(&v + &delta));
            if admissible(row, &amb, &env) {
                push(&mut out, env);
            }
        }
    }
    if out.is_empty() {
        return Err(TableError::Unsatisfiable(row.key()));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Row verification

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

impl Check {
    fn new(name: &str, ok: bool, detail: impl Into<String>) -> Check {
        let detail = detail.into();
        let verdict = if ok {
            Verdict::Match
        } else {
            let want = match name {
                "independent" => "linearly independent generators",
                "closed" => "a subalgebra",
                "dim" => "the claimed dimension",
                "kind" => "the claimed kind",
                "root_system" => "the claimed root system",
                "sl2_triples" => "valid sl2 triples",
                "generators" => "evaluable generators",
                "class" => "the claimed class",
                _ => "a passing check",
            };
            Verdict::mismatch(name, &detail, want)
        };
        Check {
            name: name.into(),
            verdict,
            detail,
        }
    }

    fn to_json(&self) -> Json {
        json!({ "check": self.name, "verdict": self.verdict.label(), "detail": self.detail })
    }
}

#[derive(Debug, Clone)]
pub struct SampleReport {
    pub params: Env,
    pub field: String,
    /// Index of the class clause that applied.
    pub clause: Option<usize>,
    pub claimed: Vec<String>,
    pub resolved: Option<String>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl SampleReport {
    pub fn verdict(&self) -> Verdict {
        aggregate(self.checks.iter().map(|c| &c.verdict))
    }

    fn to_json(&self) -> Json {
        let params: BTreeMap<&String, String> = self.params.iter().map(|(k, v)| (k, v.to_string())).collect();
        json!({
            "params": params,
            "field": self.field,
            "clause": self.clause,
            "claimed": self.claimed,
            "resolved": self.resolved,
            "verdict": self.verdict().to_json(),
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
            "notes": self.notes,
        })
    }
}

fn aggregate<'a>(vs: impl Iterator<Item = &'a Verdict>) -> Verdict {
    let mut inconclusive = None;
    for v in vs {
        match v {
            Verdict::Mismatch { .. } => return v.clone(),
            Verdict::Inconclusive { .. } => {
                inconclusive.get_or_insert_with(|| v.clone());
            }
            Verdict::Match => {}
        }
    }
    inconclusive.unwrap_or(Verdict::Match)
}

#[derive(Debug, Clone)]
pub struct RowReport {
    pub key: String,
    pub table: usize,
    pub index: usize,
    pub file: String,
    pub line: usize,
    pub ambient: Ambient,
    pub record: String,
    pub verdict: Verdict,
    pub samples: Vec<SampleReport>,
    pub errata: Vec<String>,
    pub equivalence: Option<(String, String)>,
    pub millis: Option<u128>,
}

impl RowReport {
    pub fn to_json(&self, with_timing: bool) -> Json {
        let mut v = json!({
            "key": self.key,
            "table": self.table,
            "index": self.index,
            "file": self.file,
            "line": self.line,
            "ambient": self.ambient.to_string(),
            "record": self.record,
            "verdict": self.verdict.to_json(),
            "samples": self.samples.iter().map(SampleReport::to_json).collect::<Vec<_>>(),
            "errata": self.errata,
            "equivalence": self.equivalence.as_ref().map(|(text, status)| json!({"claim": text, "status": status})),
        });
        if with_timing {
            v["millis"] = json!(self.millis);
        }
        v
    }
}

fn to_field<F: Field>(v: &[QuadExt]) -> Vector<F> {
    v.iter().map(|q| F::from_quad(q).expect("value lies in the working field")).collect()
}

fn check_sample<F: Field>(
    cat: &Catalog,
    amb: &RankTwo,
    row: &TableRow,
    env: &Env,
    vecs: &[Vec<QuadExt>],
    rep: &mut SampleReport,
) {
    let g = amb.algebra.map_field(F::from_rational);
    let n = g.dim();
    let vecs: Vec<Vector<F>> = vecs.iter().map(|v| to_field::<F>(v)).collect();
    let span = Subspace::span(n, vecs.clone());
    rep.checks.push(Check::new(
        "independent",
        span.dim() == vecs.len(),
        format!("{} generators span dimension {}", vecs.len(), span.dim()),
    ));
    let closure = g.closure(&vecs);
    let closed = closure.dim() == span.dim();
    rep.checks.push(Check::new(
        "closed",
        closed,
        format!("closure dimension {} for span dimension {}", closure.dim(), span.dim()),
    ));
    rep.checks.push(Check::new(
        "dim",
        closure.dim() == row.dim,
        format!("subalgebra dimension {}, claimed {}", closure.dim(), row.dim),
    ));
    if !closed || span.dim() != vecs.len() {
        return;
    }
    let a = match g.induced_on_basis(&vecs) {
        Ok(a) => a,
        Err(e) => {
            rep.checks.push(Check::new("induced", false, e.to_string()));
            return;
        }
    };
    let fp = fingerprint(&a);
    rep.checks.push(Check::new(
        "kind",
        // A nilpotent algebra confirms a "solvable" claim; the class check
        // decides which branch applies.
        fp.kind() == row.kind.to_string() || (row.kind == Kind::Solvable && fp.solvable),
        format!("{}, claimed {}", fp.kind(), row.kind),
    ));

    let (clause, alts) = match row.class.resolve(env) {
        Ok(r) => r,
        Err(e) => {
            rep.checks.push(Check::new(
                "class",
                false,
                format!("claimed class is undefined at this sample: {e}"),
            ));
            return;
        }
    };
    rep.clause = Some(clause);
    rep.claimed = alts.iter().map(|a| a.to_string()).collect();

    match row.kind {
        Kind::Levi => {
            let k = row.levi_split.expect("levi rows carry a split");
            let mut first: Option<(Check, Vec<Check>)> = None;
            for alt in &alts {
                let claim = match LeviClaim::from_instance(cat, alt) {
                    Ok(c) => c,
                    Err(e) => {
                        first.get_or_insert((Check::new("class", false, e), Vec::new()));
                        continue;
                    }
                };
                match verify_levi(cat, amb_for::<F>(amb), &g, &vecs[..k], &vecs[k..], &claim) {
                    Ok(lr) => {
                        let subs: Vec<Check> = lr
                            .checks
                            .iter()
                            .map(|(name, ok, detail)| Check::new(&format!("levi.{name}"), *ok, detail.clone()))
                            .collect();
                        let top = Check {
                            name: "class".into(),
                            verdict: lr.verdict.clone(),
                            detail: format!("{alt}: {}", lr.verdict),
                        };
                        if lr.verdict.is_match() {
                            rep.resolved = Some(alt.to_string());
                            rep.checks.extend(subs);
                            rep.checks.push(top);
                            return;
                        }
                        first.get_or_insert((top, subs));
                    }
                    Err(e) => {
                        first.get_or_insert((Check::new("class", false, e), Vec::new()));
                    }
                }
            }
            if let Some((top, subs)) = first {
                rep.checks.extend(subs);
                rep.checks.push(top);
            }
        }
        Kind::Semisimple => {
            let want = alts
                .first()
                .and_then(|a| (a.0.len() == 1).then(|| a.0[0].id.clone()))
                .unwrap_or_default();
            match root_decomposition(amb, &g, &span) {
                Ok(rd) => {
                    rep.checks.push(Check::new(
                        "root_system",
                        rd.kind == want,
                        format!("root system of type {}, claimed {want}", rd.kind),
                    ));
                    let bad: Vec<String> = rd.triples.iter().filter_map(|t| t.check(&g).err()).collect();
                    rep.checks.push(Check::new(
                        "sl2_triples",
                        bad.is_empty() && !rd.triples.is_empty(),
                        format!("{} triples, failures: {bad:?}", rd.triples.len()),
                    ));
                }
                Err(e) => rep.checks.push(Check::new("root_system", false, e)),
            }
            push_class_match(cat, &a, &fp, &alts, rep);
        }
        _ => push_class_match(cat, &a, &fp, &alts, rep),
    }
}

// `verify_levi` takes the ambient by reference; kept as a function so the
// generic call sites read uniformly.
fn amb_for<F: Field>(amb: &RankTwo) -> &RankTwo {
    amb
}

fn push_class_match<F: Field>(
    cat: &Catalog,
    a: &crate::algebra::LieAlgebra<F>,
    fp: &crate::ident::Fingerprint,
    alts: &[ClassInstance],
    rep: &mut SampleReport,
) {
    let m = match_any(cat, a, fp, alts);
    rep.resolved = Some(m.resolved.clone());
    rep.notes.extend(m.notes.iter().cloned());
    rep.checks.push(Check {
        name: "class".into(),
        verdict: m.verdict.clone(),
        detail: format!("{}: {}", m.resolved, m.verdict),
    });
}

/// Verifies one sample of a row.
pub fn verify_sample(cat: &Catalog, row: &TableRow, env: &Env) -> SampleReport {
    let amb = RankTwo::build(row.ambient);
    let mut rep = SampleReport {
        params: env.clone(),
        field: "Q".into(),
        clause: None,
        claimed: Vec::new(),
        resolved: None,
        checks: Vec::new(),
        notes: Vec::new(),
    };
    let mut vecs = Vec::new();
    for g in &row.gens {
        match g.eval_vector(env, &amb).and_then(|v| normalize_vector(&v)) {
            Ok(v) => vecs.push(v),
            Err(e) => {
                rep.checks.push(Check::new("generators", false, format!("{g}: {e}")));
                return rep;
            }
        }
    }
    match common_radicand(vecs.iter().flatten()) {
        Ok(0) => check_sample::<Rational>(cat, &amb, row, env, &vecs, &mut rep),
        Ok(m) => {
            rep.field = if m == -1 { "Q(i)".into() } else { format!("Q(sqrt({m}))") };
            check_sample::<QuadExt>(cat, &amb, row, env, &vecs, &mut rep)
        }
        Err(e) => rep.checks.push(Check::new("generators", false, e.to_string())),
    }
    rep
}

/// Verifies a row at the given samples.
pub fn verify_row(cat: &Catalog, row: &TableRow, samples: &[Env]) -> RowReport {
    let start = Instant::now();
    let reports: Vec<SampleReport> = samples.iter().map(|env| verify_sample(cat, row, env)).collect();
    let mut verdict = aggregate(reports.iter().map(|s| s.verdict()).collect::<Vec<_>>().iter());
    if let Some(bad) = reports.iter().find(|s| !s.verdict().is_match()) {
        let at = if row.params.is_empty() {
            String::new()
        } else {
            format!(" at {}", show_env(&bad.params))
        };
        verdict = match verdict {
            Verdict::Mismatch { field, got, want } => Verdict::Mismatch {
                field,
                got: format!("{got}{at}"),
                want,
            },
            Verdict::Inconclusive { reason } => Verdict::Inconclusive {
                reason: format!("{reason}{at}"),
            },
            Verdict::Match => Verdict::Match,
        };
    }
    RowReport {
        key: row.key(),
        table: row.table,
        index: row.index,
        file: row.file.clone(),
        line: row.line,
        ambient: row.ambient,
        record: row.source.trim().to_string(),
        verdict,
        samples: reports,
        errata: row.errata(),
        equivalence: equivalence_status(row),
        millis: Some(start.elapsed().as_millis()),
    }
}

fn equivalence_status(row: &TableRow) -> Option<(String, String)> {
    let claim = row
        .notes
        .split(';')
        .map(str::trim)
        .find(|n| n.contains('~'))?
        .to_string();
    let rule = match row.ambient {
        Ambient::C2 => "c2_cartan_orbits",
        Ambient::A2 => "a2_six_maps_are_weyl",
        Ambient::A1xA1 => "a1a1_cartan_orbits",
        Ambient::G2 => "",
    };
    let status = if row.cartan_only() && !rule.is_empty() {
        format!("checked by Weyl orbits ({rule})")
    } else {
        "unverified: no conjugating element is given".to_string()
    };
    Some((claim, status))
}

// ---------------------------------------------------------------------------
// Equivalence rules

#[derive(Debug, Clone)]
pub struct RuleCheck {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

impl RuleCheck {
    fn new(name: &str, ok: bool, detail: impl Into<String>) -> RuleCheck {
        RuleCheck {
            name: name.into(),
            ok,
            detail: detail.into(),
        }
    }

    pub fn to_json(&self) -> Json {
        json!({ "rule": self.name, "ok": self.ok, "detail": self.detail })
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).expect("nonzero denominator")
}

/// The six maps of the A2 rule for `<Ha + a Hb>`, as Moebius matrices
/// `[[p, q], [r, s]]` meaning `a -> (p a + q) / (r a + s)`.
pub fn a2_six_maps() -> Vec<[[i64; 2]; 2]> {
    vec![
        [[1, 0], [0, 1]],   // a
        [[0, 1], [1, 0]],   // 1/a
        [[-1, 1], [0, 1]],  // 1-a
        [[0, 1], [-1, 1]],  // 1/(1-a)
        [[1, 0], [1, -1]],  // a/(a-1)
        [[1, -1], [1, 0]],  // (a-1)/a
    ]
}

fn moebius_mul(x: &[[i64; 2]; 2], y: &[[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut m = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    m
}

fn projectively_equal(x: &[[i64; 2]; 2], y: &[[i64; 2]; 2]) -> bool {
    let a = [x[0][0], x[0][1], x[1][0], x[1][1]];
    let b = [y[0][0], y[0][1], y[1][0], y[1][1]];
    (0..4).all(|i| (0..4).all(|j| a[i] * b[j] == a[j] * b[i]))
}

fn apply_moebius(m: &[[i64; 2]; 2], a: &Rational) -> Option<Rational> {
    let r = |v: i64| Rational::from_int(v);
    let num = r(m[0][0]) * a + &r(m[0][1]);
    let den = r(m[1][0]) * a + &r(m[1][1]);
    num.checked_div(&den).ok()
}

/// Orbit of `a` under the six printed maps.
pub fn a2_orbit(a: &Rational) -> BTreeSet<Rational> {
    a2_six_maps().iter().filter_map(|m| apply_moebius(m, a)).collect()
}

/// Values `b` with `<Ha + b Hb>` in the Weyl orbit of the line `<h>`.
fn weyl_line_slopes(amb: &RankTwo, h: &[Rational; 2]) -> BTreeSet<Rational> {
    amb.weyl_orbit(h)
        .into_iter()
        .filter_map(|[x, y]| y.checked_div(&x).ok())
        .collect()
}

fn show_set(s: &BTreeSet<Rational>) -> String {
    let v: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

/// Checks the explicit equivalence rules of the tables: Weyl group orders,
/// the A2 six-map rule (a group of order 6 realized by the Weyl group), and
/// the C2 and A1xA1 rules for Cartan elements.
pub fn verify_equivalence_rules() -> Vec<RuleCheck> {
    let mut out = Vec::new();
    let orders: Vec<(Ambient, usize)> = Ambient::ALL
        .iter()
        .map(|&a| (a, RankTwo::build(a).weyl_group().len()))
        .collect();
    out.push(RuleCheck::new(
        "weyl_orders",
        orders.iter().map(|p| p.1).collect::<Vec<_>>() == vec![8, 6, 4, 12],
        orders.iter().map(|(a, n)| format!("{a}: {n}")).collect::<Vec<_>>().join(", "),
    ));

    // A2: the six maps form a group.
    let maps = a2_six_maps();
    let find = |m: &[[i64; 2]; 2]| maps.iter().position(|x| projectively_equal(x, m));
    let closed = maps
        .iter()
        .all(|x| maps.iter().all(|y| find(&moebius_mul(x, y)).is_some()));
    let distinct = (0..6).all(|i| (0..6).all(|j| i == j || !projectively_equal(&maps[i], &maps[j])));
    let inverses = maps
        .iter()
        .all(|x| maps.iter().any(|y| find(&moebius_mul(x, y)) == Some(0)));
    out.push(RuleCheck::new(
        "a2_six_maps_group",
        closed && distinct && inverses,
        format!("closed: {closed}, six distinct: {distinct}, inverses: {inverses}"),
    ));
    let o3 = a2_orbit(&q(3, 1));
    let want3: BTreeSet<Rational> = [q(3, 1), q(1, 3), q(-2, 1), q(-1, 2), q(3, 2), q(2, 3)].into_iter().collect();
    out.push(RuleCheck::new("a2_orbit_of_3", o3 == want3, show_set(&o3)));
    let oh = a2_orbit(&q(1, 2));
    let wanth: BTreeSet<Rational> = [q(1, 2), q(2, 1), q(-1, 1)].into_iter().collect();
    out.push(RuleCheck::new("a2_orbit_of_1/2", oh == wanth, show_set(&oh)));

    let a2 = RankTwo::build(Ambient::A2);
    let samples = [q(3, 1), q(1, 2), q(-2, 5), q(7, 1), q(5, 3)];
    let bad: Vec<String> = samples
        .iter()
        .filter(|a| weyl_line_slopes(&a2, &[Rational::one(), (*a).clone()]) != a2_orbit(a))
        .map(|a| a.to_string())
        .collect();
    out.push(RuleCheck::new(
        "a2_six_maps_are_weyl",
        bad.is_empty(),
        if bad.is_empty() {
            "Weyl orbits of <Ha + a Hb> equal the six-map orbits".to_string()
        } else {
            format!("differ at a in {bad:?}")
        },
    ));

    // C2: s_alpha T(a,b) = T(a,-b), s_beta T(a,b) = T(b,a), and the orbit of
    // T(a,b) is {T(+-a, +-b), T(+-b, +-a)}.
    let c2 = RankTwo::build(Ambient::C2);
    let t = |a: &Rational, b: &Rational| c2.t_element(a, b).expect("C2");
    let act = |w: &Matrix<Rational>, h: &[Rational; 2]| -> [Rational; 2] {
        [
            w[0][0].clone() * &h[0] + &(w[0][1].clone() * &h[1]),
            w[1][0].clone() * &h[0] + &(w[1][1].clone() * &h[1]),
        ]
    };
    let (sa, sb) = (c2.simple_reflection(0), c2.simple_reflection(1));
    let pts = [(q(2, 1), q(3, 1)), (q(1, 1), q(-5, 2)), (q(-4, 3), q(1, 7))];
    let ok_a = pts.iter().all(|(a, b)| act(&sa, &t(a, b)) == t(a, &-b.clone()));
    let ok_b = pts.iter().all(|(a, b)| act(&sb, &t(a, b)) == t(b, a));
    out.push(RuleCheck::new("c2_s_alpha", ok_a, "s_alpha(T(a,b)) = T(a,-b)"));
    out.push(RuleCheck::new("c2_s_beta", ok_b, "s_beta(T(a,b)) = T(b,a)"));
    let ok_orbit = pts.iter().all(|(a, b)| {
        let orbit: BTreeSet<[Rational; 2]> = c2.weyl_orbit(&t(a, b)).into_iter().collect();
        let mut want = BTreeSet::new();
        for (x, y) in [(a, b), (b, a)] {
            for sx in [1, -1] {
                for sy in [1, -1] {
                    let f = |v: &Rational, s: i64| v.clone() * &Rational::from_int(s);
                    want.insert(t(&f(x, sx), &f(y, sy)));
                }
            }
        }
        orbit == want
    });
    let t12 = c2.weyl_orbit(&t(&q(1, 1), &q(2, 1))).contains(&t(&q(2, 1), &q(1, 1)));
    out.push(RuleCheck::new(
        "c2_cartan_orbits",
        ok_orbit && t12,
        format!("orbit of T(a,b) is {{T(+-a,+-b), T(+-b,+-a)}}: {ok_orbit}; T(1,2) ~ T(2,1): {t12}"),
    ));

    // A1xA1: <Ha + a Hb> ~ <Ha + b Hb> iff a = +-b.
    let aa = RankTwo::build(Ambient::A1xA1);
    let ok = samples.iter().all(|a| {
        let want: BTreeSet<Rational> = [a.clone(), -a.clone()].into_iter().collect();
        weyl_line_slopes(&aa, &[Rational::one(), a.clone()]) == want
    });
    out.push(RuleCheck::new("a1a1_cartan_orbits", ok, "Weyl orbit of <Ha + a Hb> is <Ha +- a Hb>"));
    out
}

// ---------------------------------------------------------------------------
// Full runs and the report

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub samples: usize,
    pub seed: u64,
    /// Worker threads; 0 lets rayon decide.
    pub jobs: usize,
    /// Record per-row wall-clock times (makes reports non-reproducible).
    pub timings: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            samples: 5,
            seed: 0,
            jobs: 0,
            timings: false,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Summary {
    pub rows_total: usize,
    pub rows_match: usize,
    pub rows_inconclusive: usize,
    pub rows_mismatch: usize,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub seed: u64,
    pub samples: usize,
    pub tables: Vec<(usize, String, String, usize)>,
    pub rows: Vec<RowReport>,
    pub rules: Vec<RuleCheck>,
    pub known_deviations: Vec<(String, String)>,
    pub timings: bool,
}

impl Report {
    pub fn summary(&self) -> Summary {
        let mut s = Summary {
            rows_total: self.rows.len(),
            ..Summary::default()
        };
        for r in &self.rows {
            match r.verdict {
                Verdict::Match => s.rows_match += 1,
                Verdict::Inconclusive { .. } => s.rows_inconclusive += 1,
                Verdict::Mismatch { .. } => s.rows_mismatch += 1,
            }
        }
        s
    }

    pub fn clean(&self) -> bool {
        self.summary().rows_mismatch == 0 && self.rules.iter().all(|r| r.ok)
    }

    pub fn to_json(&self) -> Json {
        let s = self.summary();
        json!({
            "schema": REPORT_SCHEMA,
            "tool": "lie2",
            "tool_version": env!("CARGO_PKG_VERSION"),
            "command": "verify",
            "seed": self.seed,
            "samples_per_row": self.samples,
            "tables": self.tables.iter().map(|(n, t, f, k)| json!({"table": n, "title": t, "file": f, "rows": k})).collect::<Vec<_>>(),
            "summary": {
                "rows_total": s.rows_total,
                "rows_match": s.rows_match,
                "rows_inconclusive": s.rows_inconclusive,
                "rows_mismatch": s.rows_mismatch,
            },
            "equivalence_rules": self.rules.iter().map(RuleCheck::to_json).collect::<Vec<_>>(),
            "known_deviations": self.known_deviations.iter().map(|(id, d)| json!({"id": id, "description": d})).collect::<Vec<_>>(),
            "rows": self.rows.iter().map(|r| r.to_json(self.timings)).collect::<Vec<_>>(),
        })
    }

    /// One line per non-matching row plus the summary, for terminals.
    pub fn human_summary(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            if !r.verdict.is_match() {
                out.push_str(&format!("{} {}:{} {}\n", r.key, r.file, r.line, r.verdict));
            }
        }
        for rule in self.rules.iter().filter(|r| !r.ok) {
            out.push_str(&format!("rule {} failed: {}\n", rule.name, rule.detail));
        }
        let s = self.summary();
        out.push_str(&format!(
            "rows: {} total, {} match, {} inconclusive, {} mismatch\n",
            s.rows_total, s.rows_match, s.rows_inconclusive, s.rows_mismatch
        ));
        out
    }
}

/// Deviations of the implementation from the printed source, plus the
/// errata recorded in the table files.
pub fn known_deviations(cat: &Catalog, rows: &[&TableRow]) -> Vec<(String, String)> {
    let mut out = vec![
        (
            "rho_raising".to_string(),
            "sl2 module rho_j: the printed raising coefficient k(j-1) violates [p+, p-] = h for j >= 3; k(j-k) is used".to_string(),
        ),
        (
            "g2_h_normalization".to_string(),
            "H(c,d) is the coroot 2mu/(mu,mu) of mu = c alpha + d beta; it is proportional to c Ha + 3d Hb, so spans are unchanged".to_string(),
        ),
        (
            "s_4_12_complex_form".to_string(),
            "s_4_12 (weights 1 +- i) is compared through its complex form 2s_2_1; representatives split over Q".to_string(),
        ),
    ];
    for q in cat.quarantined() {
        out.push((format!("quarantine:{}", q.id), q.reason.clone()));
    }
    for r in rows {
        for e in r.errata() {
            out.push((format!("erratum:{}", r.key()), e));
        }
    }
    out
}

/// Verifies every row of the given tables.
pub fn verify_tables(cat: &Catalog, tables: &[Table], opts: &VerifyOptions) -> Report {
    let rows: Vec<&TableRow> = tables.iter().flat_map(|t| &t.rows).collect();
    let run = || {
        rows.par_iter()
            .map(|row| match sample_params(row, opts.samples, opts.seed) {
                Ok(samples) => verify_row(cat, row, &samples),
                Err(e) => {
                    let mut r = verify_row(cat, row, &[]);
                    r.verdict = Verdict::mismatch("samples", e, "admissible parameters");
                    r
                }
            })
            .collect::<Vec<_>>()
    };
    let mut reports = match rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    };
    reports.sort_by(|a, b| a.key.cmp(&b.key));
    Report {
        seed: opts.seed,
        samples: opts.samples,
        tables: tables
            .iter()
            .map(|t| (t.number, t.title.clone(), t.file.clone(), t.rows.len()))
            .collect(),
        rows: reports,
        rules: verify_equivalence_rules(),
        known_deviations: known_deviations(cat, &rows),
        timings: opts.timings,
    }
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.unparse())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(src: &str) -> TableRow {
        parse_row(src).unwrap()
    }

    #[test]
    fn shipped_tables_parse_with_declared_counts() {
        let tables = shipped().unwrap();
        assert_eq!(tables.len(), 22);
        let counts: Vec<usize> = tables.iter().map(|t| t.rows.len()).collect();
        assert_eq!(
            counts,
            vec![8, 16, 19, 14, 8, 12, 13, 19, 7, 26, 9, 7, 16, 9, 14, 9, 12, 14, 8, 4, 6, 14]
        );
    }

    #[test]
    fn unparse_is_token_identical() {
        for t in shipped().unwrap() {
            for r in &t.rows {
                let back = r.unparse();
                assert!(records_token_identical(&r.source, &back), "{}\n{}", r.source, back);
                assert_eq!(&parse_row(&back).unwrap().gens, &r.gens);
            }
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = parse_row("3 | C2 | X(5,5) | | | 1 | nilpotent | n_1_1 |").unwrap_err();
        assert!(matches!(e, TableError::Parse { col: 10, .. }), "{e}");
        assert!(e.to_string().contains("unknown atom"));
        let e = parse_row("3 | C2 | X(1,0)+ | | | 1 | nilpotent | n_1_1 |").unwrap_err();
        let TableError::Parse { col, .. } = e else { panic!() };
        assert!(col > 9, "{col}");
        assert!(parse_row("3 | G2 | T(1,0) | | | 1 | nilpotent | n_1_1 |").is_err());
        assert!(parse_row("3 | C2 | X(1,0) | | | 2 | nilpotent | n_1_1 |").is_err());
        assert!(parse_row("3 | C2 | a*X(1,0) | | | 1 | nilpotent | n_1_1 |").is_err());
        assert!(parse_row("3 | C2 | X(1,0) | | | 1 | nilpotent").is_err());
    }

    #[test]
    fn radical_coefficients_parse() {
        let r = row("10 | A1xA1 | sqrt(1+4*a)*Ha | a | a != 0 | 1 | nilpotent | n_1_1 |");
        assert_eq!(r.gens[0].to_string(), "sqrt(1+4*a)*Ha");
    }

    #[test]
    fn sampling_respects_exclusions_and_is_deterministic() {
        let r = row("2 | C2 | T(a,1); X(1,0) | a | a != 0, a != 1, a != -1 | 2 | solvable | s_2_1 |");
        let s = sample_params(&r, 5, 1).unwrap();
        assert!(s.len() >= 5);
        for env in &s {
            let a = env["a"].as_rational().unwrap();
            assert!(!a.is_zero() && a != Rational::one() && a != -Rational::one());
        }
        assert_eq!(s, sample_params(&r, 5, 1).unwrap());
        let plain = row("1 | C2 | X(1,0) | | | 1 | nilpotent | n_1_1 |");
        assert_eq!(sample_params(&plain, 5, 1).unwrap(), vec![Env::new()]);
        let never = row("1 | C2 | T(a,1) | a | a > 1, a < 0 | 1 | nilpotent | n_1_1 |");
        assert!(matches!(sample_params(&never, 5, 1), Err(TableError::Unsatisfiable(_))));
    }

    #[test]
    fn g2_sign_condition_holds_at_samples() {
        let t = shipped().unwrap();
        let r = &t[11].rows[2];
        for env in sample_params(r, 5, 3).unwrap() {
            let c = env["c"].as_rational().unwrap();
            let d = env["d"].as_rational().unwrap();
            let two = Rational::from_int(2);
            let three = Rational::from_int(3);
            let v = (two.clone() * &c - &(three * &d)) * &(-c.clone() + &(two * &d));
            assert!(v.signum() >= 0);
        }
    }

    #[test]
    fn branch_samples_hit_every_guard() {
        let t = shipped().unwrap();
        let r = &t[13].rows[2]; // H(c,d); X(1,0); X(3,1)
        let s = sample_params(r, 5, 0).unwrap();
        let clauses: BTreeSet<usize> = s.iter().map(|e| r.class.resolve(e).unwrap().0).collect();
        assert_eq!(clauses.len(), 2);
        let hits_cd = s.iter().any(|e| e["c"] == e["d"]);
        let hits_23 = s.iter().any(|e| {
            let c = e["c"].as_rational().unwrap();
            let d = e["d"].as_rational().unwrap();
            c * &Rational::from_int(2) == d * &Rational::from_int(3)
        });
        assert!(hits_cd && hits_23);
    }

    #[test]
    fn borel_of_c2() {
        let t = shipped().unwrap();
        let r = &t[4].rows[7];
        let rep = verify_row(Catalog::shipped(), r, &[Env::new()]);
        assert!(rep.verdict.is_match(), "{}", rep.verdict);
    }

    #[test]
    fn table3_spectrum_family() {
        // <T(a,1), X(1,0), X(1,1)> at a = 2: weights 2a+... give alpha = 6/25 in
        // the s_3_1 normal form.
        let t = shipped().unwrap();
        let r = &t[2].rows[2];
        let env: Env = [("a".to_string(), Surd::int(2))].into_iter().collect();
        let rep = verify_row(Catalog::shipped(), r, &[env]);
        assert!(rep.verdict.is_match(), "{}", rep.verdict);
    }

    #[test]
    fn equivalence_rules_hold() {
        for c in verify_equivalence_rules() {
            assert!(c.ok, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn a2_orbits() {
        let o = a2_orbit(&q(3, 1));
        assert_eq!(o.len(), 6);
        assert_eq!(a2_orbit(&q(1, 2)).len(), 3);
    }
}
