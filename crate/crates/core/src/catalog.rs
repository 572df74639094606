//! Reference algebras: the low-dimensional solvable and nilpotent algebras
//! and the Levi decomposable algebras that the classification tables name,
//! plus the irreducible sl2 modules `rho_j`.
//!
//! The data ships as `data/catalog.json`. Every entry is parsed and
//! Jacobi-checked at load; entries that fail are quarantined rather than
//! patched.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, Builder, LieAlgebra};
use crate::exact::{Field, Rational};
use crate::expr::{parse_cond, parse_expr, Cond, Env, Expr, ExprError, Surd};
use crate::linalg::{mat_mul, zero_vec, Matrix};
use crate::rank2::{Ambient, RankTwo};

const CATALOG_JSON: &str = include_str!("../data/catalog.json");

/// Semisimple class names usable in class claims alongside catalog ids.
pub const SEMISIMPLE: [&str; 3] = ["A1", "A1xA1", "A2"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog id {0}")]
    UnknownId(String),
    #[error("{id}: missing value for parameter {param}")]
    MissingParam { id: String, param: String },
    #[error("{id}: unexpected parameter {param}")]
    ExtraParam { id: String, param: String },
    #[error("{id}: coefficient {coeff} does not lie in the working field")]
    Field { id: String, coeff: String },
    #[error("{id} is quarantined: {reason}")]
    Quarantined { id: String, reason: String },
    #[error("{id}: bad data: {msg}")]
    Data { id: String, msg: String },
    #[error("{id}: {source}")]
    Algebra { id: String, source: AlgebraError },
    #[error(transparent)]
    Expr(#[from] ExprError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Nilpotent,
    Solvable,
    Levi,
    Semisimple,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Nilpotent => "nilpotent",
            Kind::Solvable => "solvable",
            Kind::Levi => "levi",
            Kind::Semisimple => "semisimple",
        })
    }
}

impl std::str::FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "nilpotent" => Ok(Kind::Nilpotent),
            "solvable" => Ok(Kind::Solvable),
            "levi" => Ok(Kind::Levi),
            "semisimple" => Ok(Kind::Semisimple),
            _ => Err(format!("unknown kind {s}")),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct LeviMeta {
    pub factor: String,
    /// Class of the radical, in class-claim syntax.
    pub radical: String,
    /// Dimensions of the irreducible summands of the Levi factor acting on
    /// the radical.
    pub rho: Vec<usize>,
}

#[derive(Deserialize)]
struct RawEntry {
    id: String,
    dim: usize,
    kind: Kind,
    params: Vec<String>,
    #[serde(default)]
    constraints: Vec<String>,
    #[serde(default)]
    basis: Option<Vec<String>>,
    #[serde(default)]
    full_table: bool,
    #[serde(default)]
    stated_nilradical: Option<String>,
    #[serde(default)]
    iso_over_c: Option<Vec<String>>,
    #[serde(default)]
    levi: Option<LeviMeta>,
    brackets: Vec<(String, String, String, String)>,
}

/// `[x, y] += coeff * z` in basis indices.
#[derive(Debug, Clone)]
pub struct Bracket {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub coeff: Expr,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: String,
    pub dim: usize,
    pub kind: Kind,
    pub params: Vec<String>,
    pub constraints: Vec<(String, Cond)>,
    pub basis: Vec<String>,
    pub brackets: Vec<Bracket>,
    /// Whether the data lists both `[x,y]` and `[y,x]` (then antisymmetry is
    /// checked rather than assumed).
    pub full_table: bool,
    pub stated_nilradical: Option<String>,
    /// Over the complex numbers the entry splits as this direct sum.
    pub iso_over_c: Option<Vec<String>>,
    pub levi: Option<LeviMeta>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Quarantine {
    pub id: String,
    pub reason: String,
}

pub struct Catalog {
    entries: Vec<CatalogEntry>,
    index: BTreeMap<String, usize>,
    quarantined: Vec<Quarantine>,
}

/// Admissible sample values for catalog parameters, in preference order.
const SAMPLE_POOL: [(i64, i64); 12] = [
    (1, 2),
    (1, 3),
    (2, 3),
    (-1, 2),
    (1, 1),
    (-1, 3),
    (2, 1),
    (3, 1),
    (-2, 3),
    (-1, 1),
    (0, 1),
    (3, 4),
];

impl CatalogEntry {
    fn from_raw(raw: RawEntry) -> Result<Self, CatalogError> {
        let data = |msg: String| CatalogError::Data {
            id: raw.id.clone(),
            msg,
        };
        let basis = raw
            .basis
            .clone()
            .unwrap_or_else(|| (1..=raw.dim).map(|i| format!("e{i}")).collect());
        if basis.len() != raw.dim {
            return Err(data(format!("{} basis labels for dim {}", basis.len(), raw.dim)));
        }
        let pos = |l: &str| {
            basis
                .iter()
                .position(|b| b == l)
                .ok_or_else(|| data(format!("unknown basis element {l}")))
        };
        let mut brackets = Vec::new();
        for (x, y, z, c) in &raw.brackets {
            brackets.push(Bracket {
                x: pos(x)?,
                y: pos(y)?,
                z: pos(z)?,
                coeff: parse_expr(c)?,
            });
        }
        let constraints = raw
            .constraints
            .iter()
            .map(|c| Ok((c.clone(), parse_cond(c)?)))
            .collect::<Result<_, CatalogError>>()?;
        for b in &brackets {
            let mut vars = Vec::new();
            b.coeff.vars(&mut vars);
            if let Some(v) = vars.iter().find(|v| !raw.params.contains(v)) {
                return Err(data(format!("coefficient uses undeclared parameter {v}")));
            }
        }
        Ok(CatalogEntry {
            id: raw.id,
            dim: raw.dim,
            kind: raw.kind,
            params: raw.params,
            constraints,
            basis,
            brackets,
            full_table: raw.full_table,
            stated_nilradical: raw.stated_nilradical,
            iso_over_c: raw.iso_over_c,
            levi: raw.levi,
        })
    }

    /// Builds the algebra at the given parameter values, without the Jacobi
    /// gate.
    pub fn build<F: Field>(&self, params: &Env) -> Result<LieAlgebra<F>, CatalogError> {
        for p in &self.params {
            if !params.contains_key(p) {
                return Err(CatalogError::MissingParam {
                    id: self.id.clone(),
                    param: p.clone(),
                });
            }
        }
        if let Some(p) = params.keys().find(|p| !self.params.contains(p)) {
            return Err(CatalogError::ExtraParam {
                id: self.id.clone(),
                param: p.clone(),
            });
        }
        let n = self.dim;
        let mut table: BTreeMap<(usize, usize), Vec<F>> = BTreeMap::new();
        for b in &self.brackets {
            let c = b.coeff.eval_scalar(params)?;
            let c = c
                .to_quad()
                .ok()
                .and_then(|q| F::from_quad(&q))
                .ok_or_else(|| CatalogError::Field {
                    id: self.id.clone(),
                    coeff: format!("{} = {c}", b.coeff),
                })?;
            let v = table.entry((b.x, b.y)).or_insert_with(|| zero_vec(n));
            v[b.z] = v[b.z].clone() + &c;
        }
        let alg = |source| CatalogError::Algebra {
            id: self.id.clone(),
            source,
        };
        let mut builder = Builder::new(n);
        for i in 0..n {
            for j in i..n {
                let fwd = table.get(&(i, j));
                let back = table.get(&(j, i));
                let v = match (fwd, back) {
                    (Some(v), Some(w)) => {
                        let neg: Vec<F> = w.iter().map(|x| -x.clone()).collect();
                        if *v != neg {
                            return Err(alg(AlgebraError::Antisymmetry(i, j)));
                        }
                        v.clone()
                    }
                    (Some(v), None) | (None, Some(v)) if self.full_table && i != j => {
                        if v.iter().any(|x| !x.is_zero()) {
                            return Err(alg(AlgebraError::Antisymmetry(i, j)));
                        }
                        continue;
                    }
                    (Some(v), None) => v.clone(),
                    (None, Some(w)) => w.iter().map(|x| -x.clone()).collect(),
                    (None, None) => continue,
                };
                builder.set(i, j, v).map_err(alg)?;
            }
        }
        Ok(builder
            .build()
            .with_label(self.id.clone())
            .with_basis_labels(self.basis.clone()))
    }

    /// Printed constraints violated at `params`. Constraints that cannot be
    /// decided (irrational values under an ordering) are reported too.
    pub fn constraint_warnings(&self, params: &Env) -> Vec<String> {
        self.constraints
            .iter()
            .filter_map(|(src, c)| match c.eval(params) {
                Ok(true) => None,
                Ok(false) => Some(format!("{}: {src} fails (normalization)", self.id)),
                Err(e) => Some(format!("{}: {src} not decidable ({e})", self.id)),
            })
            .collect()
    }

    /// Up to `count` parameter points from a fixed pool satisfying the
    /// printed constraints; a single empty point for parameter-free entries.
    pub fn sample_points(&self, count: usize) -> Vec<Env> {
        let pool: Vec<Surd> = SAMPLE_POOL
            .iter()
            .map(|(n, d)| Surd::rational(Rational::new(*n, *d).expect("non-zero denominator")))
            .collect();
        let mut points: Vec<Env> = vec![Env::new()];
        for p in &self.params {
            points = points
                .into_iter()
                .flat_map(|e| {
                    pool.iter().map(move |v| {
                        let mut e = e.clone();
                        e.insert(p.clone(), v.clone());
                        e
                    })
                })
                .collect();
        }
        // Spread the picks so that multi-parameter entries do not vary only
        // their last parameter.
        let admissible: Vec<Env> = points
            .into_iter()
            .filter(|e| self.constraint_warnings(e).is_empty())
            .collect();
        let step = (admissible.len() / count.max(1)).max(1);
        admissible.into_iter().step_by(step).take(count).collect()
    }

    /// Levi triple `(h, p+, p-)` and radical basis indices for Levi entries.
    pub fn levi_split(&self) -> Option<([usize; 3], Vec<usize>)> {
        self.levi.as_ref()?;
        let idx = |l: &str| self.basis.iter().position(|b| b == l);
        let triple = [idx("h")?, idx("p+")?, idx("p-")?];
        let rest = (0..self.dim).filter(|i| !triple.contains(i)).collect();
        Some((triple, rest))
    }
}

fn sl2() -> LieAlgebra<Rational> {
    let q = Rational::from_int;
    let mut b = Builder::new(3);
    // basis h, e, f
    b.add_term(0, 1, 1, q(2)).expect("in range");
    b.add_term(0, 2, 2, q(-2)).expect("in range");
    b.add_term(1, 2, 0, q(1)).expect("in range");
    b.build()
        .with_label("A1")
        .with_basis_labels(vec!["h".into(), "e".into(), "f".into()])
}

/// The semisimple algebras that appear as class names.
pub fn semisimple(id: &str) -> Option<LieAlgebra<Rational>> {
    match id {
        "A1" => Some(sl2()),
        "A1xA1" => Some(RankTwo::build(Ambient::A1xA1).algebra.with_label("A1xA1")),
        "A2" => Some(RankTwo::build(Ambient::A2).algebra.with_label("A2")),
        _ => None,
    }
}

impl Catalog {
    pub fn from_json(src: &str) -> Result<Self, CatalogError> {
        let raw: Vec<RawEntry> = serde_json::from_str(src).map_err(|e| CatalogError::Data {
            id: "catalog".into(),
            msg: e.to_string(),
        })?;
        let mut entries = Vec::new();
        let mut index = BTreeMap::new();
        for r in raw {
            let e = CatalogEntry::from_raw(r)?;
            if index.insert(e.id.clone(), entries.len()).is_some() {
                return Err(CatalogError::Data {
                    id: e.id,
                    msg: "duplicate id".into(),
                });
            }
            entries.push(e);
        }
        let quarantined = entries.iter().filter_map(validate_entry).collect();
        Ok(Catalog {
            entries,
            index,
            quarantined,
        })
    }

    /// The shipped catalog, parsed and validated once.
    pub fn shipped() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::from_json(CATALOG_JSON).expect("shipped catalog parses"))
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, id: &str) -> Option<&CatalogEntry> {
        self.index.get(id).map(|&i| &self.entries[i])
    }

    pub fn quarantined(&self) -> &[Quarantine] {
        &self.quarantined
    }

    pub fn quarantine_reason(&self, id: &str) -> Option<&str> {
        self.quarantined
            .iter()
            .find(|q| q.id == id)
            .map(|q| q.reason.as_str())
    }

    /// Whether `id` names a catalog entry or a semisimple type.
    pub fn knows(&self, id: &str) -> bool {
        self.get(id).is_some() || SEMISIMPLE.contains(&id)
    }

    /// Instantiates a catalog entry (or semisimple type) over `F`. The
    /// result is Jacobi-checked; quarantined entries are refused.
    pub fn instantiate<F: Field>(
        &self,
        id: &str,
        params: &Env,
    ) -> Result<LieAlgebra<F>, CatalogError> {
        if let Some(a) = semisimple(id) {
            return Ok(a.map_field(F::from_rational));
        }
        let entry = self
            .get(id)
            .ok_or_else(|| CatalogError::UnknownId(id.to_string()))?;
        if let Some(reason) = self.quarantine_reason(id) {
            return Err(CatalogError::Quarantined {
                id: id.to_string(),
                reason: reason.to_string(),
            });
        }
        let a = entry.build::<F>(params)?;
        a.check_jacobi().map_err(|source| CatalogError::Algebra {
            id: id.to_string(),
            source,
        })?;
        Ok(a)
    }

    /// Levi decomposable entries only.
    pub fn instantiate_levi<F: Field>(&self, id: &str) -> Result<LieAlgebra<F>, CatalogError> {
        match self.get(id) {
            Some(e) if e.kind == Kind::Levi => self.instantiate(id, &Env::new()),
            Some(_) => Err(CatalogError::Data {
                id: id.to_string(),
                msg: "not a Levi decomposable entry".into(),
            }),
            None => Err(CatalogError::UnknownId(id.to_string())),
        }
    }
}

/// Builds an entry at up to three admissible points and checks Jacobi and the
/// structural kind. Returns the reason for quarantine, if any.
fn validate_entry(e: &CatalogEntry) -> Option<Quarantine> {
    let fail = |reason: String| {
        Some(Quarantine {
            id: e.id.clone(),
            reason,
        })
    };
    let points = e.sample_points(3);
    if points.is_empty() {
        return fail("no admissible sample point".into());
    }
    for p in &points {
        let a = match e.build::<Rational>(p) {
            Ok(a) => a,
            Err(err) => return fail(err.to_string()),
        };
        if let Err(err) = a.check_jacobi() {
            return fail(format!("at {}: {err}", show_env(p)));
        }
        let ok = match e.kind {
            Kind::Nilpotent => a.is_nilpotent(),
            Kind::Solvable => a.is_solvable() && !a.is_nilpotent(),
            Kind::Levi => {
                !a.is_solvable() && a.radical().map(|r| r.dim() + 3 == e.dim).unwrap_or(false)
            }
            Kind::Semisimple => a.is_semisimple(),
        };
        if !ok {
            return fail(format!("at {}: structure is not {}", show_env(p), e.kind));
        }
    }
    None
}

pub fn show_env(env: &Env) -> String {
    let parts: Vec<String> = env.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

/// An sl2 module given by the images of `h, p+, p-`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sl2Rep {
    pub j: usize,
    pub h: Matrix<Rational>,
    pub e: Matrix<Rational>,
    pub f: Matrix<Rational>,
}

fn commutator(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Matrix<Rational> {
    let ab = mat_mul(a, b);
    let ba = mat_mul(b, a);
    ab.iter()
        .zip(&ba)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect())
        .collect()
}

fn scaled(m: &Matrix<Rational>, s: i64) -> Matrix<Rational> {
    let s = Rational::from_int(s);
    m.iter().map(|r| r.iter().map(|x| x * &s).collect()).collect()
}

impl Sl2Rep {
    /// Checks the three defining relations, naming the first that fails.
    pub fn check(&self) -> Result<(), String> {
        if commutator(&self.h, &self.e) != scaled(&self.e, 2) {
            return Err("[h, p+] != 2 p+".into());
        }
        if commutator(&self.h, &self.f) != scaled(&self.f, -2) {
            return Err("[h, p-] != -2 p-".into());
        }
        if commutator(&self.e, &self.f) != self.h {
            return Err("[p+, p-] != h".into());
        }
        Ok(())
    }
}

fn rho_with(j: usize, raise: impl Fn(i64) -> i64) -> Sl2Rep {
    assert!(j >= 1, "rho_j needs j >= 1");
    let z = || vec![vec![Rational::zero(); j]; j];
    let (mut h, mut e, mut f) = (z(), z(), z());
    let ji = j as i64;
    for k in 0..j {
        let ki = k as i64;
        // columns are the images of v_k
        h[k][k] = Rational::from_int(ji - 1 - 2 * ki);
        if k + 1 < j {
            f[k + 1][k] = Rational::one();
        }
        if k > 0 {
            e[k - 1][k] = Rational::from_int(raise(ki));
        }
    }
    Sl2Rep { j, h, e, f }
}

/// The irreducible `j`-dimensional module: `h v_k = (j-1-2k) v_k`,
/// `p- v_k = v_{k+1}`, `p+ v_k = k(j-k) v_{k-1}`.
pub fn rho(j: usize) -> Sl2Rep {
    let ji = j as i64;
    rho_with(j, |k| k * (ji - k))
}

/// The same module with the raising coefficient `k(j-1)` as printed in the
/// source appendix. It satisfies the sl2 relations only for `j <= 2`.
pub fn rho_printed(j: usize) -> Sl2Rep {
    let ji = j as i64;
    rho_with(j, |k| k * (ji - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::dims;

    fn q(s: &str) -> Surd {
        Surd::rational(s.parse().unwrap())
    }

    #[test]
    fn shipped_catalog_loads() {
        let c = Catalog::shipped();
        assert_eq!(c.entries().len(), 55);
        let ids: Vec<&str> = c.quarantined().iter().map(|q| q.id.as_str()).collect();
        // As printed: the first fails Jacobi, the other two list
        // [e1, p-] = -e5 against [p-, e1] = 0.
        assert_eq!(
            ids,
            vec!["A1+3n_1_1", "A1+n_5_3", "A1+s_6_168(A=0,B=0)"],
            "{:?}",
            c.quarantined()
        );
    }

    #[test]
    fn small_entries() {
        let c = Catalog::shipped();
        let s21: LieAlgebra<Rational> = c.instantiate("s_2_1", &Env::new()).unwrap();
        // [e2, e1] = e1
        assert_eq!(s21.basis_bracket(1, 0), vec![Rational::one(), Rational::zero()]);
        let n11: LieAlgebra<Rational> = c.instantiate("n_1_1", &Env::new()).unwrap();
        assert!(n11.dim() == 1 && n11.is_abelian());
        let env: Env = [("A".to_string(), q("1/2"))].into();
        let s48: LieAlgebra<Rational> = c.instantiate("s_4_8", &env).unwrap();
        assert_eq!(dims(&s48.derived_series()), vec![4, 3, 1, 0]);
    }

    #[test]
    fn parameters_are_checked() {
        let c = Catalog::shipped();
        assert!(matches!(
            c.instantiate::<Rational>("s_3_1", &Env::new()),
            Err(CatalogError::MissingParam { .. })
        ));
        assert!(matches!(
            c.instantiate::<Rational>("s_9_9", &Env::new()),
            Err(CatalogError::UnknownId(_))
        ));
        let e = c.get("s_3_1").unwrap();
        let env: Env = [("A".to_string(), q("2"))].into();
        assert_eq!(e.constraint_warnings(&env).len(), 1);
        assert!(c.instantiate::<Rational>("s_3_1", &env).is_ok());
    }

    #[test]
    fn levi_entries() {
        let c = Catalog::shipped();
        let a: LieAlgebra<Rational> = c.instantiate_levi("A1+2n_1_1").unwrap();
        assert_eq!(a.dim(), 5);
        let r = a.radical().unwrap();
        assert_eq!(r.dim(), 2);
        assert!(c.instantiate_levi::<Rational>("s_2_1").is_err());
        assert!(matches!(
            c.instantiate_levi::<Rational>("A1+3n_1_1"),
            Err(CatalogError::Quarantined { .. })
        ));
        let e = c.get("A1+n_3_1").unwrap();
        let (triple, rad) = e.levi_split().unwrap();
        assert_eq!(triple, [0, 1, 2]);
        assert_eq!(rad.len(), 3);
    }

    #[test]
    fn rho_relations() {
        for j in 1..=6 {
            assert!(rho(j).check().is_ok(), "rho({j})");
        }
        assert!(rho(1).h[0][0].is_zero());
        assert_eq!(rho(2).h[0][0], Rational::from_int(1));
        assert_eq!(rho(2).h[1][1], Rational::from_int(-1));
        let r3 = rho(3);
        assert_eq!((r3.e[0][1].clone(), r3.e[1][2].clone()), (Rational::from_int(2), Rational::from_int(2)));
        assert!(rho_printed(2).check().is_ok());
        for j in 3..=6 {
            assert_eq!(rho_printed(j).check(), Err("[p+, p-] != h".into()));
        }
    }
}
