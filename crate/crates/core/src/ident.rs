//! Identification by invariants: fingerprints, claimed-class matching,
//! sl2-module decompositions and Levi-structure checks.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value as Json};

use crate::algebra::{dims, LieAlgebra};
use crate::catalog::{Catalog, CatalogError};
use crate::exact::{Field, QuadExt, Rational};
use crate::expr::{parse_class, ClassInstance, ClassTerm, Env};
use crate::linalg::{
    add_vec, char_poly, express_in_basis, is_zero_vec, kernel, scale, unit_vec, Matrix,
    Subspace, Vector,
};
use crate::rank2::RankTwo;

/// Pairs of catalog classes whose fingerprints are known not to separate
/// them. Empty: every pair used by the tables is separated.
pub const NON_SEPARATING: &[(&str, &str, &str)] = &[];

/// Scale-free invariant of the adjoint action of a torus complement to the
/// nilradical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Spectrum {
    /// Nilpotent or non-solvable algebras.
    NotApplicable,
    /// Codimension one: first nonzero index `k` of the characteristic
    /// polynomial of `ad x` and the ratios `c_j^k / c_k^j` for `j > k`.
    Codim1 { k: usize, ratios: Vec<QuadExt> },
    /// Codimension two: the weights with multiplicity, written in the basis
    /// of two of them and minimized over all such choices.
    Codim2 { weights: Vec<(Rational, Rational, usize)> },
    Unsupported { reason: String },
}

impl Spectrum {
    fn to_json(&self) -> Json {
        match self {
            Spectrum::NotApplicable => Json::Null,
            Spectrum::Codim1 { k, ratios } => json!({
                "codim": 1,
                "k": k,
                "ratios": ratios.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            }),
            Spectrum::Codim2 { weights } => json!({
                "codim": 2,
                "weights": weights
                    .iter()
                    .map(|(u, v, m)| json!([u.to_string(), v.to_string(), m]))
                    .collect::<Vec<_>>(),
            }),
            Spectrum::Unsupported { reason } => json!({ "unsupported": reason }),
        }
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    pub dim: usize,
    pub derived_dims: Vec<usize>,
    pub lcs_dims: Vec<usize>,
    pub ucs_dims: Vec<usize>,
    pub center_dim: usize,
    pub abelian: bool,
    pub nilpotent: bool,
    pub solvable: bool,
    pub semisimple: bool,
    pub radical_dim: Option<usize>,
    pub nilradical_dim: Option<usize>,
    pub torus_codim: Option<usize>,
    pub derivation_dim: usize,
    pub spectrum: Spectrum,
}

impl Fingerprint {
    /// Field-by-field values in a fixed order, for comparison and output.
    fn fields(&self) -> Vec<(&'static str, String)> {
        let opt = |o: Option<usize>| o.map_or("-".to_string(), |v| v.to_string());
        vec![
            ("dim", self.dim.to_string()),
            ("derived_dims", format!("{:?}", self.derived_dims)),
            ("lcs_dims", format!("{:?}", self.lcs_dims)),
            ("ucs_dims", format!("{:?}", self.ucs_dims)),
            ("center_dim", self.center_dim.to_string()),
            ("abelian", self.abelian.to_string()),
            ("nilpotent", self.nilpotent.to_string()),
            ("solvable", self.solvable.to_string()),
            ("semisimple", self.semisimple.to_string()),
            ("radical_dim", opt(self.radical_dim)),
            ("nilradical_dim", opt(self.nilradical_dim)),
            ("torus_codim", opt(self.torus_codim)),
            ("derivation_dim", self.derivation_dim.to_string()),
            ("spectrum", self.spectrum.to_string()),
        ]
    }

    /// First field in which the two fingerprints differ.
    pub fn first_difference(&self, other: &Fingerprint) -> Option<(&'static str, String, String)> {
        self.fields()
            .into_iter()
            .zip(other.fields())
            .find(|((_, a), (_, b))| a != b)
            .map(|((name, a), (_, b))| (name, a, b))
    }

    pub fn kind(&self) -> &'static str {
        if self.nilpotent {
            "nilpotent"
        } else if self.solvable {
            "solvable"
        } else if self.semisimple {
            "semisimple"
        } else {
            "levi"
        }
    }

    pub fn to_json(&self) -> Json {
        json!({
            "dim": self.dim,
            "derived_dims": self.derived_dims,
            "lcs_dims": self.lcs_dims,
            "ucs_dims": self.ucs_dims,
            "center_dim": self.center_dim,
            "flags": {
                "abelian": self.abelian,
                "nilpotent": self.nilpotent,
                "solvable": self.solvable,
                "semisimple": self.semisimple,
            },
            "radical_dim": self.radical_dim,
            "nilradical_dim": self.nilradical_dim,
            "torus_codim": self.torus_codim,
            "derivation_dim": self.derivation_dim,
            "spectrum": self.spectrum.to_json(),
        })
    }
}

pub fn fingerprint<F: Field>(a: &LieAlgebra<F>) -> Fingerprint {
    let solvable = a.is_solvable();
    let nilpotent = a.is_nilpotent();
    let nil = if solvable { a.nilradical().ok() } else { None };
    let spectrum = match &nil {
        Some(n) if !nilpotent => spectrum_with(a, n),
        Some(_) => Spectrum::NotApplicable,
        None if solvable => Spectrum::Unsupported {
            reason: "nilradical computation failed".into(),
        },
        None => Spectrum::NotApplicable,
    };
    Fingerprint {
        dim: a.dim(),
        derived_dims: dims(&a.derived_series()),
        lcs_dims: dims(&a.lower_central_series()),
        ucs_dims: dims(&a.upper_central_series()),
        center_dim: a.center().dim(),
        abelian: a.is_abelian(),
        nilpotent,
        solvable,
        semisimple: a.is_semisimple(),
        radical_dim: a.radical().ok().map(|r| r.dim()),
        nilradical_dim: nil.as_ref().map(|n| n.dim()),
        torus_codim: nil.as_ref().map(|n| a.dim() - n.dim()),
        derivation_dim: a.derivation_dim(),
        spectrum,
    }
}

/// The spectrum invariant of a solvable, non-nilpotent algebra.
pub fn spectrum<F: Field>(a: &LieAlgebra<F>) -> Spectrum {
    match a.nilradical() {
        Ok(n) if n.dim() < a.dim() => spectrum_with(a, &n),
        Ok(_) => Spectrum::NotApplicable,
        Err(_) => Spectrum::NotApplicable,
    }
}

fn spectrum_with<F: Field>(a: &LieAlgebra<F>, nil: &Subspace<F>) -> Spectrum {
    let n = a.dim();
    let outside: Vec<Vector<F>> = nil
        .complement_indices()
        .into_iter()
        .map(|i| unit_vec(n, i))
        .collect();
    match outside.len() {
        1 => codim1(a, &outside[0]),
        2 => codim2(a, &outside[0], &outside[1]),
        c => Spectrum::Unsupported {
            reason: format!("nilradical codimension {c}"),
        },
    }
}

fn codim1<F: Field>(a: &LieAlgebra<F>, x: &[F]) -> Spectrum {
    let c: Vec<QuadExt> = char_poly(&a.ad(x)).iter().map(F::to_quad).collect();
    let Some(k) = (1..c.len()).find(|&i| !c[i].is_zero()) else {
        return Spectrum::Unsupported {
            reason: "ad x is nilpotent outside the nilradical".into(),
        };
    };
    let pow = |q: &QuadExt, e: usize| (0..e).fold(QuadExt::one(), |acc, _| acc * q);
    let ratios = (k + 1..c.len())
        .map(|j| pow(&c[j], k) / pow(&c[k], j))
        .collect();
    Spectrum::Codim1 { k, ratios }
}

fn rational_char_poly<F: Field>(m: &Matrix<F>) -> Option<Vec<Rational>> {
    char_poly(m)
        .iter()
        .map(|c| c.to_quad().as_rational().cloned())
        .collect()
}

fn codim2<F: Field>(a: &LieAlgebra<F>, x1: &[F], x2: &[F]) -> Spectrum {
    let n = a.dim();
    let unsupported = |r: &str| Spectrum::Unsupported { reason: r.into() };
    let roots_at = |t: i64| -> Option<Vec<(Rational, usize)>> {
        let x = add_vec(x1, &scale(x2, &F::from_int(t)));
        let p = rational_char_poly(&a.ad(&x))?;
        let r = rational_roots(&p)?;
        (r.iter().map(|(_, m)| m).sum::<usize>() == n).then_some(r)
    };
    let mut samples = Vec::new();
    for t in 0..=(n as i64 + 2) {
        match roots_at(t) {
            Some(r) => samples.push(r),
            None => return unsupported("weights are not rational"),
        }
    }
    // A weight w gives the line t -> w(x1) + t w(x2). A spurious line meets
    // each of the at most n true lines at most once, so it cannot hit a root
    // at all n + 3 sample points.
    let is_root = |t: usize, v: &Rational| samples[t].iter().any(|(r, _)| r == v);
    let mut lines: Vec<(Rational, Rational)> = Vec::new();
    for (a0, _) in &samples[0] {
        for (a1, _) in &samples[1] {
            let slope = a1 - a0;
            let ok = (2..samples.len())
                .all(|t| is_root(t, &(a0 + &(&slope * &Rational::from_int(t as i64)))));
            if ok {
                lines.push((a0.clone(), slope));
            }
        }
    }
    // Multiplicities at a parameter where the lines are pairwise distinct.
    let limit = (lines.len() * lines.len() + 3) as i64;
    let sep = (0..=limit).find(|&t| {
        let tq = Rational::from_int(t);
        let vals: Vec<Rational> = lines.iter().map(|(p, s)| p + &(s * &tq)).collect();
        (0..vals.len()).all(|i| (i + 1..vals.len()).all(|j| vals[i] != vals[j]))
    });
    let Some(sep) = sep else {
        return unsupported("weight lines do not separate");
    };
    let Some(roots) = roots_at(sep) else {
        return unsupported("weights are not rational");
    };
    let tq = Rational::from_int(sep);
    let mut weights = Vec::new();
    for (p, s) in &lines {
        let v = p + &(s * &tq);
        let m = roots.iter().find(|(r, _)| *r == v).map_or(0, |(_, m)| *m);
        weights.push((p.clone(), s.clone(), m));
    }
    if weights.iter().map(|w| w.2).sum::<usize>() != n {
        return unsupported("weight multiplicities do not add up");
    }
    match canonical_weights(&weights) {
        Some(w) => Spectrum::Codim2 { weights: w },
        None => unsupported("weights do not span the torus dual"),
    }
}

/// Writes every weight in the basis given by an ordered pair of independent
/// weights and keeps the lexicographically smallest sorted result, which is
/// invariant under changes of torus basis and relabelling.
fn canonical_weights(
    ws: &[(Rational, Rational, usize)],
) -> Option<Vec<(Rational, Rational, usize)>> {
    let mut best: Option<Vec<(Rational, Rational, usize)>> = None;
    for p in ws {
        for q in ws {
            let det = &p.0 * &q.1 - &(&q.0 * &p.1);
            if det.is_zero() {
                continue;
            }
            let inv = det.recip().ok()?;
            let mut coords: Vec<(Rational, Rational, usize)> = ws
                .iter()
                .map(|w| {
                    let u = (&w.0 * &q.1 - &(&q.0 * &w.1)) * &inv;
                    let v = (&p.0 * &w.1 - &(&w.0 * &p.1)) * &inv;
                    (u, v, w.2)
                })
                .collect();
            coords.sort();
            if best.as_ref().map_or(true, |b| coords < *b) {
                best = Some(coords);
            }
        }
    }
    best
}

// ---------------------------------------------------------------------------
// Rational roots

const DIVISOR_LIMIT: u64 = 1 << 40;

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let v = n.abs().to_u64().filter(|v| *v > 0 && *v < DIVISOR_LIMIT)?;
    let mut primes = Vec::new();
    let mut rest = v;
    let mut p = 2u64;
    while p * p <= rest {
        let mut k = 0;
        while rest % p == 0 {
            rest /= p;
            k += 1;
        }
        if k > 0 {
            primes.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        primes.push((rest, 1));
    }
    let mut out = vec![1u64];
    for (p, k) in primes {
        let mut next = Vec::new();
        for d in &out {
            let mut f = 1;
            for _ in 0..=k {
                next.push(d * f);
                f *= p;
            }
        }
        out = next;
    }
    out.sort_unstable();
    Some(out)
}

fn eval_poly(p: &[Rational], x: &Rational) -> Rational {
    p.iter().fold(Rational::zero(), |acc, c| acc * x + c)
}

fn deflate(p: &[Rational], r: &Rational) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::with_capacity(p.len() - 1);
    let mut acc = Rational::zero();
    for c in &p[..p.len() - 1] {
        acc = &acc * r + c;
        out.push(acc.clone());
    }
    out
}

/// Rational roots with multiplicity of a polynomial given highest degree
/// first. `None` when a coefficient is too large to factor.
pub fn rational_roots(p: &[Rational]) -> Option<Vec<(Rational, usize)>> {
    let mut p: Vec<Rational> = p.to_vec();
    while p.first().is_some_and(|c| c.is_zero()) {
        p.remove(0);
    }
    let mut roots = Vec::new();
    let mut zeros = 0;
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
        zeros += 1;
    }
    if zeros > 0 {
        roots.push((Rational::zero(), zeros));
    }
    if p.len() <= 1 {
        return Some(roots);
    }
    let mut lcm = BigInt::one();
    for c in &p {
        let d = c.denom();
        lcm = &lcm * &d / num_integer_gcd(&lcm, &d);
    }
    let ints: Vec<BigInt> = p
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let lead = divisors(&ints[0])?;
    let cons = divisors(ints.last().expect("non-empty"))?;
    let mut seen = std::collections::BTreeSet::new();
    for q in &lead {
        for num in &cons {
            for sign in [1i64, -1] {
                let Ok(r) = Rational::normalize(
                    BigInt::from(*num) * sign,
                    BigInt::from(*q),
                ) else {
                    continue;
                };
                if !seen.insert(r.clone()) {
                    continue;
                }
                let mut m = 0;
                while p.len() > 1 && eval_poly(&p, &r).is_zero() {
                    p = deflate(&p, &r);
                    m += 1;
                }
                if m > 0 {
                    roots.push((r, m));
                }
            }
        }
    }
    roots.sort();
    Some(roots)
}

fn num_integer_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut a, mut b) = (a.abs(), b.abs());
    while !b.is_zero() {
        let t = &a % &b;
        a = b;
        b = t;
    }
    a
}

// ---------------------------------------------------------------------------
// Class matching

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Match,
    Mismatch { field: String, got: String, want: String },
    Inconclusive { reason: String },
}

impl Verdict {
    pub fn is_match(&self) -> bool {
        matches!(self, Verdict::Match)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Match => "match",
            Verdict::Mismatch { .. } => "mismatch",
            Verdict::Inconclusive { .. } => "inconclusive",
        }
    }

    pub fn mismatch(field: &str, got: impl ToString, want: impl ToString) -> Self {
        Verdict::Mismatch {
            field: field.to_string(),
            got: got.to_string(),
            want: want.to_string(),
        }
    }

    pub fn to_json(&self) -> Json {
        match self {
            Verdict::Match => json!({ "verdict": "match" }),
            Verdict::Mismatch { field, got, want } => json!({
                "verdict": "mismatch", "field": field, "got": got, "want": want,
            }),
            Verdict::Inconclusive { reason } => json!({ "verdict": "inconclusive", "reason": reason }),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Match => write!(f, "match"),
            Verdict::Mismatch { field, got, want } => {
                write!(f, "mismatch in {field}: got {got}, want {want}")
            }
            Verdict::Inconclusive { reason } => write!(f, "inconclusive: {reason}"),
        }
    }
}

/// Compares a computed fingerprint with the fingerprint of a claimed class.
pub fn compare(got: &Fingerprint, want: &Fingerprint) -> Verdict {
    if let Some((field, a, b)) = got.first_difference(want) {
        return Verdict::mismatch(field, a, b);
    }
    if let Spectrum::Unsupported { reason } = &got.spectrum {
        return Verdict::Inconclusive {
            reason: format!("fingerprints agree but the spectrum is unavailable ({reason})"),
        };
    }
    Verdict::Match
}

fn all_rational(inst: &ClassInstance) -> bool {
    inst.0
        .iter()
        .all(|t| t.params.iter().all(|(_, v)| v.as_rational().is_some()))
}

fn term_algebra<F: Field>(cat: &Catalog, t: &ClassTerm) -> Result<LieAlgebra<F>, CatalogError> {
    let env: Env = t.params.iter().cloned().collect();
    cat.instantiate(&t.id, &env)
}

/// Instantiates a direct sum of catalog classes over `F`.
pub fn instantiate_instance<F: Field>(
    cat: &Catalog,
    inst: &ClassInstance,
) -> Result<LieAlgebra<F>, CatalogError> {
    let mut acc: Option<LieAlgebra<F>> = None;
    for t in &inst.0 {
        let a = term_algebra::<F>(cat, t)?;
        acc = Some(match acc {
            None => a,
            Some(b) => b.direct_sum(&a),
        });
    }
    acc.ok_or_else(|| CatalogError::UnknownId("empty class".into()))
}

/// Replaces terms that are only real forms of a split class by that class,
/// which is what invariants over an algebraically closed field can see.
fn complex_form(cat: &Catalog, inst: &ClassInstance) -> (ClassInstance, Vec<String>) {
    let mut notes = Vec::new();
    let mut terms = Vec::new();
    for t in &inst.0 {
        match cat.get(&t.id).and_then(|e| e.iso_over_c.clone()) {
            Some(parts) => {
                notes.push(format!("{} compared via its complex form {}", t.id, parts.join(" (+) ")));
                for p in parts {
                    let spec = parse_class(&p).expect("catalog iso_over_c parses");
                    let (_, alts) = spec.resolve(&Env::new()).expect("parameter free");
                    terms.extend(alts[0].0.iter().cloned());
                }
            }
            None => terms.push(t.clone()),
        }
    }
    (ClassInstance(terms), notes)
}

/// Fingerprint of a claimed class. Quadratic parameters are instantiated
/// over their quadratic field.
pub fn class_fingerprint(
    cat: &Catalog,
    inst: &ClassInstance,
) -> Result<(Fingerprint, Vec<String>), CatalogError> {
    let (inst, notes) = complex_form(cat, inst);
    let fp = if all_rational(&inst) {
        fingerprint(&instantiate_instance::<Rational>(cat, &inst)?)
    } else {
        fingerprint(&instantiate_instance::<QuadExt>(cat, &inst)?)
    };
    Ok((fp, notes))
}

/// Outcome of matching an algebra against one claimed class.
#[derive(Debug, Clone)]
pub struct ClassMatch {
    pub verdict: Verdict,
    /// The class actually compared (free parameters filled in).
    pub resolved: String,
    pub notes: Vec<String>,
}

/// Candidate values for unbound parameters: ratios of the nonzero weights of
/// a torus element (and those ratios shifted by one).
fn parameter_candidates<F: Field>(a: &LieAlgebra<F>) -> Vec<Rational> {
    let Ok(nil) = a.nilradical() else {
        return Vec::new();
    };
    let Some(i) = nil.complement_indices().first().copied() else {
        return Vec::new();
    };
    let Some(p) = rational_char_poly(&a.ad(&unit_vec(a.dim(), i))) else {
        return Vec::new();
    };
    let roots: Vec<Rational> = rational_roots(&p)
        .unwrap_or_default()
        .into_iter()
        .map(|(r, _)| r)
        .filter(|r| !r.is_zero())
        .collect();
    let mut out = std::collections::BTreeSet::new();
    for x in &roots {
        for y in &roots {
            if let Ok(q) = x.checked_div(y) {
                out.insert(&q - &Rational::one());
                out.insert(&q + &Rational::one());
                out.insert(q);
            }
        }
    }
    out.into_iter().collect()
}

/// Matches `a` (with precomputed fingerprint `fp`) against a claimed class.
pub fn match_class<F: Field>(
    cat: &Catalog,
    a: &LieAlgebra<F>,
    fp: &Fingerprint,
    inst: &ClassInstance,
) -> ClassMatch {
    let free: Vec<&ClassTerm> = inst
        .0
        .iter()
        .filter(|t| t.free && cat.get(&t.id).is_some_and(|e| !e.params.is_empty()))
        .collect();
    if free.is_empty() {
        return match class_fingerprint(cat, inst) {
            Ok((want, notes)) => ClassMatch {
                verdict: compare(fp, &want),
                resolved: inst.to_string(),
                notes,
            },
            Err(e) => ClassMatch {
                verdict: Verdict::Inconclusive {
                    reason: format!("claimed class unavailable: {e}"),
                },
                resolved: inst.to_string(),
                notes: Vec::new(),
            },
        };
    }
    // Fill free parameters from the algebra's own weights.
    let cands = parameter_candidates(a);
    let mut options: Vec<ClassInstance> = vec![ClassInstance(Vec::new())];
    for t in &inst.0 {
        let names: Vec<String> = if free.iter().any(|f| std::ptr::eq(*f, t)) {
            cat.get(&t.id).map(|e| e.params.clone()).unwrap_or_default()
        } else {
            Vec::new()
        };
        let mut fills: Vec<Vec<(String, crate::expr::Surd)>> = vec![t.params.clone()];
        for n in &names {
            fills = fills
                .into_iter()
                .flat_map(|f| {
                    cands.iter().map(move |c| {
                        let mut f = f.clone();
                        f.push((n.clone(), crate::expr::Surd::rational(c.clone())));
                        f
                    })
                })
                .collect();
        }
        options = options
            .into_iter()
            .flat_map(|o| {
                fills.iter().map(move |params| {
                    let mut o = o.clone();
                    o.0.push(ClassTerm {
                        id: t.id.clone(),
                        params: params.clone(),
                        free: false,
                    });
                    o
                })
            })
            .collect();
    }
    let mut first_fail = None;
    for o in options {
        let Ok((want, notes)) = class_fingerprint(cat, &o) else {
            continue;
        };
        let v = compare(fp, &want);
        if v.is_match() {
            return ClassMatch {
                verdict: v,
                resolved: o.to_string(),
                notes,
            };
        }
        first_fail.get_or_insert((v, o.to_string()));
    }
    let (verdict, resolved) = first_fail.unwrap_or((
        Verdict::mismatch("class", inst.to_string(), "no admissible parameter"),
        inst.to_string(),
    ));
    ClassMatch {
        verdict,
        resolved,
        notes: vec!["parameters recovered from weight ratios".into()],
    }
}

/// Matches against a list of alternatives; the first that matches wins.
pub fn match_any<F: Field>(
    cat: &Catalog,
    a: &LieAlgebra<F>,
    fp: &Fingerprint,
    alts: &[ClassInstance],
) -> ClassMatch {
    let mut first: Option<ClassMatch> = None;
    let mut inconclusive: Option<ClassMatch> = None;
    for inst in alts {
        let m = match_class(cat, a, fp, inst);
        match m.verdict {
            Verdict::Match => return m,
            Verdict::Inconclusive { .. } => {
                inconclusive.get_or_insert(m);
            }
            Verdict::Mismatch { .. } => {
                first.get_or_insert(m);
            }
        }
    }
    inconclusive
        .or(first)
        .unwrap_or_else(|| ClassMatch {
            verdict: Verdict::mismatch("class", "-", "no alternatives"),
            resolved: String::new(),
            notes: Vec::new(),
        })
}

/// Best catalog match for an algebra, trying every parameter-free entry,
/// semisimple type and parameterized entry with recovered parameters.
pub fn identify<F: Field>(cat: &Catalog, a: &LieAlgebra<F>) -> (Fingerprint, Option<ClassMatch>) {
    let fp = fingerprint(a);
    let mut cands: Vec<ClassInstance> = crate::catalog::SEMISIMPLE
        .iter()
        .map(|id| ClassInstance(vec![ClassTerm { id: id.to_string(), params: vec![], free: false }]))
        .collect();
    for e in cat.entries() {
        if e.dim == a.dim() && cat.quarantine_reason(&e.id).is_none() {
            cands.push(ClassInstance(vec![ClassTerm {
                id: e.id.clone(),
                params: vec![],
                free: true,
            }]));
        }
    }
    // Abelian algebras are sums of n_1_1.
    if fp.abelian {
        let n11 = ClassTerm { id: "n_1_1".into(), params: vec![], free: false };
        cands.push(ClassInstance(vec![n11; a.dim()]));
    }
    for c in cands {
        if instantiate_dim(cat, &c) != Some(a.dim()) {
            continue;
        }
        let m = match_class(cat, a, &fp, &c);
        if !matches!(m.verdict, Verdict::Mismatch { .. }) {
            return (fp, Some(m));
        }
    }
    (fp, None)
}

fn instantiate_dim(cat: &Catalog, inst: &ClassInstance) -> Option<usize> {
    inst.0
        .iter()
        .map(|t| match t.id.as_str() {
            "A1" => Some(3),
            "A1xA1" => Some(6),
            "A2" => Some(8),
            id => cat.get(id).map(|e| e.dim),
        })
        .sum()
}

// ---------------------------------------------------------------------------
// Semisimple structure inside an ambient algebra

/// An sl2 triple with `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triple<F: Field> {
    pub h: Vector<F>,
    pub e: Vector<F>,
    pub f: Vector<F>,
}

impl<F: Field> Triple<F> {
    /// Checks the relations in `g`, naming the first that fails.
    pub fn check(&self, g: &LieAlgebra<F>) -> Result<(), String> {
        let two = F::from_int(2);
        if g.bracket(&self.h, &self.e) != scale(&self.e, &two) {
            return Err("[h, e] != 2e".into());
        }
        if g.bracket(&self.h, &self.f) != scale(&self.f, &-two) {
            return Err("[h, f] != -2f".into());
        }
        if g.bracket(&self.e, &self.f) != self.h {
            return Err("[e, f] != h".into());
        }
        Ok(())
    }
}

/// Root-space data of a subalgebra `S` whose Cartan part lies in the
/// ambient Cartan subalgebra.
#[derive(Debug, Clone)]
pub struct RootData<F: Field> {
    /// Basis of `S` intersected with the ambient Cartan subalgebra.
    pub cartan: Vec<Vector<F>>,
    /// Each root as its values on `cartan`, with a root vector.
    pub roots: Vec<(Vec<F>, Vector<F>)>,
    /// Semisimple type read off the root system.
    pub kind: String,
    /// One normalized triple per pair of opposite roots.
    pub triples: Vec<Triple<F>>,
}

fn ambient_roots(amb: &RankTwo) -> Vec<(i64, i64)> {
    amb.positive_roots
        .iter()
        .flat_map(|&(m, n)| [(m, n), (-m, -n)])
        .collect()
}

fn root_vector_index(amb: &RankTwo, r: (i64, i64)) -> usize {
    let p = amb.positive_roots.len();
    let pos = amb
        .positive_roots
        .iter()
        .position(|&x| x == r || x == (-r.0, -r.1))
        .expect("ambient root");
    if amb.positive_roots[pos] == r {
        2 + pos
    } else {
        2 + p + pos
    }
}

/// Decomposes `S` under `S ∩ h` and classifies its root system.
pub fn root_decomposition<F: Field>(
    amb: &RankTwo,
    g: &LieAlgebra<F>,
    s: &Subspace<F>,
) -> Result<RootData<F>, String> {
    let n = g.dim();
    let torus = Subspace::span(n, vec![unit_vec(n, 0), unit_vec(n, 1)]);
    let hs = s.intersect(&torus);
    let cartan: Vec<Vector<F>> = hs.basis().clone();
    if cartan.is_empty() {
        return Err("no Cartan elements of the ambient algebra in the span".into());
    }
    let restrict = |r: (i64, i64)| -> Vec<F> {
        cartan
            .iter()
            .map(|h| amb.root_value(r, &[h[0].clone(), h[1].clone()]))
            .collect()
    };
    let mut groups: BTreeMap<Vec<String>, (Vec<F>, Vec<usize>)> = BTreeMap::new();
    let mut zero_idx = vec![0, 1];
    for r in ambient_roots(amb) {
        let v = restrict(r);
        let idx = root_vector_index(amb, r);
        if v.iter().all(|x| x.is_zero()) {
            zero_idx.push(idx);
        } else {
            let key: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            groups.entry(key).or_insert_with(|| (v, Vec::new())).1.push(idx);
        }
    }
    let span_of = |idx: &[usize]| Subspace::span(n, idx.iter().map(|&i| unit_vec(n, i)));
    let s0 = s.intersect(&span_of(&zero_idx));
    if s0.dim() != cartan.len() {
        return Err(format!(
            "the ambient Cartan part (dim {}) is not a Cartan subalgebra of the span (zero weight space dim {})",
            cartan.len(),
            s0.dim()
        ));
    }
    let mut roots: Vec<(Vec<F>, Vector<F>)> = Vec::new();
    let mut total = s0.dim();
    for (vals, idx) in groups.values() {
        let sp = s.intersect(&span_of(idx));
        total += sp.dim();
        match sp.dim() {
            0 => {}
            1 => roots.push((vals.clone(), sp.basis()[0].clone())),
            d => return Err(format!("root space of dimension {d}")),
        }
    }
    if total != s.dim() {
        return Err("the span is not a sum of weight spaces".into());
    }
    let find = |vals: &[F]| roots.iter().find(|(v, _)| v.as_slice() == vals).map(|(_, x)| x.clone());
    let mut triples = Vec::new();
    let mut coroots: Vec<(Vec<F>, Vector<F>)> = Vec::new();
    for (vals, e) in &roots {
        let neg: Vec<F> = vals.iter().map(|x| -x.clone()).collect();
        let f = find(&neg).ok_or("root system is not symmetric")?;
        let hh = g.bracket(e, &f);
        if !hs.contains(&hh) || is_zero_vec(&hh) {
            return Err("[e, f] is not a nonzero Cartan element".into());
        }
        let c = amb_value(amb, &cartan, vals, &hh);
        let cinv = c.inv().ok_or("root vanishes on its coroot")?;
        let two = F::from_int(2);
        let h = scale(&hh, &(two.clone() * &cinv));
        coroots.push((vals.clone(), h.clone()));
        // Keep one triple per pair of opposite roots.
        if canonical_positive(vals) {
            let t = Triple {
                h,
                e: e.clone(),
                f: scale(&f, &(two * &cinv)),
            };
            t.check(g)?;
            triples.push(t);
        }
    }
    // Cartan integers <r, s^vee> = r(h_s).
    let r = cartan.len();
    let nroots = roots.len();
    let integers: Vec<Vec<F>> = roots
        .iter()
        .map(|(v, _)| {
            coroots
                .iter()
                .map(|(_, h)| amb_value(amb, &cartan, v, h))
                .collect()
        })
        .collect();
    let allowed: Vec<F> = (-3..=3).map(F::from_int).collect();
    if integers.iter().flatten().any(|x| !allowed.contains(x)) {
        return Err("Cartan integers are not integral".into());
    }
    let kind = match (r, nroots) {
        (1, 2) => "A1",
        (2, 4) => {
            let orth = (0..nroots).all(|i| {
                (0..nroots).all(|j| {
                    let proportional = integers[i][j] == F::from_int(2) || integers[i][j] == F::from_int(-2);
                    proportional || integers[i][j].is_zero()
                })
            });
            if !orth {
                return Err("four roots that are not orthogonal pairs".into());
            }
            "A1xA1"
        }
        (2, 6) => "A2",
        (2, 8) => "C2",
        (2, 12) => "G2",
        (r, k) => return Err(format!("rank {r} with {k} roots is not semisimple of rank <= 2")),
    };
    let induced = g
        .induced(s)
        .map_err(|e| format!("span is not a subalgebra: {e}"))?;
    if !induced.is_semisimple() {
        return Err("Killing form of the span is degenerate".into());
    }
    Ok(RootData {
        cartan,
        roots,
        kind: kind.to_string(),
        triples,
    })
}

/// Value of the root with restriction `vals` at a Cartan element `h` of the
/// span, computed from the restriction by linearity.
fn amb_value<F: Field>(_amb: &RankTwo, cartan: &[Vector<F>], vals: &[F], h: &[F]) -> F {
    let coords = express_in_basis(cartan, h).expect("element of the Cartan part");
    coords
        .iter()
        .zip(vals)
        .fold(F::zero(), |acc, (c, v)| acc + c.clone() * v)
}

fn canonical_positive<F: Field>(vals: &[F]) -> bool {
    let first = vals.iter().find(|x| !x.is_zero()).expect("nonzero root");
    let neg = -first.clone();
    // Choose one of each opposite pair by a total order on representations.
    first.canonical_cmp(&neg) == std::cmp::Ordering::Greater
}

// ---------------------------------------------------------------------------
// sl2 modules

#[derive(Debug, Clone)]
pub struct Sl2Decomposition<F: Field> {
    /// Highest weights, largest first; `n` stands for `V(n)` of dimension
    /// `n + 1`.
    pub highest: Vec<usize>,
    /// For each summand, the string `v, f v, f^2 v, ...` from a highest
    /// weight vector.
    pub strings: Vec<Vec<Vector<F>>>,
}

impl<F: Field> Sl2Decomposition<F> {
    pub fn display(&self) -> String {
        let mut counts: BTreeMap<std::cmp::Reverse<usize>, usize> = BTreeMap::new();
        for n in &self.highest {
            *counts.entry(std::cmp::Reverse(*n)).or_default() += 1;
        }
        counts
            .iter()
            .map(|(n, c)| if *c == 1 { format!("V({})", n.0) } else { format!("{c}V({})", n.0) })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Decomposes `space` under the triple by counting highest weight vectors:
/// the multiplicity of `V(n)` is `dim(ker ad e ∩ E_n(ad h) ∩ space)`.
pub fn decompose_sl2<F: Field>(
    g: &LieAlgebra<F>,
    t: &Triple<F>,
    space: &Subspace<F>,
) -> Result<Sl2Decomposition<F>, String> {
    t.check(g)?;
    let n = g.dim();
    for v in space.basis() {
        for (name, x) in [("h", &t.h), ("e", &t.e), ("f", &t.f)] {
            if !space.contains(&g.bracket(x, v)) {
                return Err(format!("space is not invariant under ad {name}"));
            }
        }
    }
    let ad_h = g.ad(&t.h);
    let ad_e = g.ad(&t.e);
    let ker_e = Subspace::span(n, kernel(&ad_e, n));
    let top = ker_e.intersect(space);
    let mut highest = Vec::new();
    let mut strings = Vec::new();
    for w in 0..=space.dim() {
        let shifted: Matrix<F> = ad_h
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r[i] = r[i].clone() - &F::from_int(w as i64);
                r
            })
            .collect();
        let eig = Subspace::span(n, kernel(&shifted, n));
        let hw = eig.intersect(&top);
        for v in hw.basis() {
            let mut s = vec![v.clone()];
            for _ in 0..w {
                let next = g.bracket(&t.f, s.last().expect("non-empty"));
                s.push(next);
            }
            highest.push(w);
            strings.push(s);
        }
    }
    let total: usize = highest.iter().map(|w| w + 1).sum();
    if total != space.dim() {
        return Err(format!(
            "highest weight vectors account for {total} of {} dimensions",
            space.dim()
        ));
    }
    highest.sort_unstable_by(|a, b| b.cmp(a));
    Ok(Sl2Decomposition { highest, strings })
}

// ---------------------------------------------------------------------------
// Levi structure

/// The Levi part of a class claim: the factor, the radical's class and the
/// dimensions of the irreducible summands of the factor on the radical.
#[derive(Debug, Clone)]
pub struct LeviClaim {
    pub factor: String,
    pub radical: ClassInstance,
    pub rho: Vec<usize>,
    /// The whole claimed class, compared as an abstract algebra.
    pub whole: Option<ClassInstance>,
}

impl LeviClaim {
    /// Reads a Levi claim from a class instance such as `A1 (+) s_2_1`,
    /// `A1+n_3_1` or `A1+2n_1_1 (+) n_1_1`.
    pub fn from_instance(cat: &Catalog, inst: &ClassInstance) -> Result<LeviClaim, String> {
        let mut factor = None;
        let mut radical: Vec<ClassTerm> = Vec::new();
        let mut rho: Vec<usize> = Vec::new();
        for t in &inst.0 {
            if crate::catalog::SEMISIMPLE.contains(&t.id.as_str()) {
                if factor.replace(t.id.clone()).is_some() {
                    return Err("more than one Levi factor".into());
                }
                continue;
            }
            match cat.get(&t.id) {
                Some(e) if e.levi.is_some() => {
                    let meta = e.levi.as_ref().expect("checked");
                    if factor.replace(meta.factor.clone()).is_some() {
                        return Err("more than one Levi factor".into());
                    }
                    let spec = parse_class(&meta.radical).map_err(|e| e.to_string())?;
                    let (_, alts) = spec.resolve(&Env::new()).map_err(|e| e.to_string())?;
                    radical.extend(alts[0].0.iter().cloned());
                    rho.extend(meta.rho.iter().copied());
                }
                Some(e) => {
                    radical.push(t.clone());
                    rho.extend(std::iter::repeat(1).take(e.dim));
                }
                None => return Err(format!("unknown class {}", t.id)),
            }
        }
        let factor = factor.ok_or("no Levi factor in the claim")?;
        let whole = Some(inst.clone());
        rho.sort_unstable_by(|a, b| b.cmp(a));
        Ok(LeviClaim {
            factor,
            radical: ClassInstance(radical),
            rho,
            whole,
        })
    }
}

#[derive(Debug, Clone)]
pub struct LeviReport {
    pub verdict: Verdict,
    pub checks: Vec<(String, bool, String)>,
    pub decomposition: Option<Vec<usize>>,
}

impl LeviReport {
    pub fn to_json(&self) -> Json {
        json!({
            "verdict": self.verdict.to_json(),
            "checks": self.checks.iter().map(|(n, ok, d)| json!({"check": n, "ok": ok, "detail": d})).collect::<Vec<_>>(),
            "rho_dims": self.decomposition.as_ref().map(|d| d.iter().map(|w| w + 1).collect::<Vec<_>>()),
        })
    }
}

/// Verifies that `levi ⋉ radical` (vectors in the ambient algebra) is a
/// Levi decomposition with the claimed radical class and representation.
pub fn verify_levi<F: Field>(
    cat: &Catalog,
    amb: &RankTwo,
    g: &LieAlgebra<F>,
    levi: &[Vector<F>],
    radical: &[Vector<F>],
    claim: &LeviClaim,
) -> Result<LeviReport, String> {
    let n = g.dim();
    let lspan = Subspace::span(n, levi.iter().cloned());
    let rspan = Subspace::span(n, radical.iter().cloned());
    if lspan.dim() != levi.len() || rspan.dim() != radical.len() {
        return Err("Levi or radical generators are dependent".into());
    }
    if lspan.intersect(&rspan).dim() != 0 {
        return Err("Levi factor and radical do not form a direct sum".into());
    }
    let mut checks: Vec<(String, bool, String)> = Vec::new();
    let mut push = |name: &str, ok: bool, detail: String| checks.push((name.to_string(), ok, detail));

    let basis: Vec<Vector<F>> = levi.iter().chain(radical).cloned().collect();
    let total = Subspace::span(n, basis.clone());
    let closed = g.closure(&basis);
    push(
        "closed",
        closed.dim() == total.dim(),
        format!("closure dim {} for span dim {}", closed.dim(), total.dim()),
    );
    let a = g.induced_on_basis(&basis).map_err(|e| e.to_string())?;
    let k = levi.len();
    let rad_coords = Subspace::span(a.dim(), (k..a.dim()).map(|i| unit_vec(a.dim(), i)));
    let rad_ok = a.radical().map(|r| r == rad_coords).unwrap_or(false);
    push("radical", rad_ok, "radical of the span equals the given radical".into());

    let root = root_decomposition(amb, g, &lspan);
    let (type_ok, type_detail, triple) = match &root {
        Ok(rd) => (
            rd.kind == claim.factor,
            format!("Levi factor of type {}", rd.kind),
            rd.triples.first().cloned(),
        ),
        Err(e) => (false, e.clone(), None),
    };
    push("levi_factor", type_ok, type_detail);

    let r_alg = g.induced_on_basis(radical).map_err(|e| e.to_string())?;
    let r_fp = fingerprint(&r_alg);
    let rm = match_class(cat, &r_alg, &r_fp, &claim.radical);
    push(
        "radical_class",
        rm.verdict.is_match(),
        format!("{} vs {}: {}", claim.radical, rm.resolved, rm.verdict),
    );

    let mut decomposition = None;
    if claim.factor == "A1" {
        match triple {
            Some(t) => match decompose_sl2(g, &t, &rspan) {
                Ok(d) => {
                    let dims: Vec<usize> = d.highest.iter().map(|w| w + 1).collect();
                    push(
                        "rho",
                        dims == claim.rho,
                        format!("rho dims {dims:?}, claimed {:?}", claim.rho),
                    );
                    decomposition = Some(d.highest);
                }
                Err(e) => push("rho", false, e),
            },
            None => push("rho", false, "no sl2 triple in the Levi factor".into()),
        }
    }

    if let Some(whole) = &claim.whole {
        let quarantined = whole.0.iter().find_map(|t| cat.quarantine_reason(&t.id).map(|r| (&t.id, r)));
        match quarantined {
            Some((id, reason)) => push(
                "whole_class",
                true,
                format!("{id} is quarantined ({reason}); radical and rho checks stand in"),
            ),
            None => {
                let m = match_class(cat, &a, &fingerprint(&a), whole);
                push("whole_class", m.verdict.is_match(), m.verdict.to_string());
            }
        }
    }

    let verdict = match checks.iter().find(|c| !c.1) {
        None => Verdict::Match,
        Some((name, _, detail)) => Verdict::mismatch(name, detail, "claimed Levi structure"),
    };
    Ok(LeviReport {
        verdict,
        checks,
        decomposition,
    })
}

/// Vectors of the radical: the complement of a Levi factor inside a span,
/// used when a table row gives only the whole algebra.
pub fn split_off<F: Field>(whole: &[Vector<F>], levi: &[Vector<F>]) -> Vec<Vector<F>> {
    let n = whole.first().map_or(0, |v| v.len());
    let mut s = Subspace::span(n, levi.iter().cloned());
    let mut out = Vec::new();
    for v in whole {
        if !s.contains(v) {
            out.push(v.clone());
            s = s.with([v.clone()]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Surd;
    use crate::linalg::identity;
    use crate::rank2::Ambient;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn inst(id: &str, params: &[(&str, Rational)]) -> ClassInstance {
        ClassInstance(vec![ClassTerm {
            id: id.into(),
            params: params.iter().map(|(n, v)| (n.to_string(), Surd::rational(v.clone()))).collect(),
            free: false,
        }])
    }

    fn cat_alg(id: &str, params: &[(&str, Rational)]) -> LieAlgebra<Rational> {
        instantiate_instance(Catalog::shipped(), &inst(id, params)).unwrap()
    }

    #[test]
    fn roots_of_rational_polynomials() {
        // (x - 1/2)^2 (x + 3) x
        let p = vec![q(1, 1), q(2, 1), q(-11, 4), q(3, 4), q(0, 1)];
        let r = rational_roots(&p).unwrap();
        assert_eq!(r, vec![(q(-3, 1), 1), (q(0, 1), 1), (q(1, 2), 2)]);
        // x^2 - 2 has no rational roots
        assert!(rational_roots(&[q(1, 1), q(0, 1), q(-2, 1)]).unwrap().is_empty());
    }

    #[test]
    fn fingerprint_examples() {
        let n41 = cat_alg("n_4_1", &[]);
        let fp = fingerprint(&n41);
        assert_eq!(fp.derived_dims, vec![4, 2, 0]);
        assert_eq!(fp.lcs_dims, vec![4, 2, 1, 0]);
        assert!(fp.nilpotent);
        let ab = LieAlgebra::<Rational>::abelian(3);
        let fp = fingerprint(&ab);
        assert_eq!((fp.derived_dims.clone(), fp.center_dim), (vec![3, 0], 3));
    }

    #[test]
    fn s31_spectrum() {
        // c1 = -(1+A), c2 = A: invariant c2/c1^2 = A/(1+A)^2
        let fp = fingerprint(&cat_alg("s_3_1", &[("A", q(1, 2))]));
        assert_eq!(
            fp.spectrum,
            Spectrum::Codim1 { k: 1, ratios: vec![QuadExt::rational(q(2, 9)), QuadExt::rational(q(0, 1))] }
        );
        let one = fingerprint(&cat_alg("s_3_1", &[("A", q(1, 1))]));
        let minus = fingerprint(&cat_alg("s_3_1", &[("A", q(-1, 1))]));
        assert!(matches!(&one.spectrum, Spectrum::Codim1 { k: 1, ratios } if ratios[0] == QuadExt::rational(q(1, 4))));
        assert!(matches!(&minus.spectrum, Spectrum::Codim1 { k: 2, .. }));
        // A and 1/A give the same class
        let a3 = fingerprint(&cat_alg("s_3_1", &[("A", q(3, 1))]));
        let a13 = fingerprint(&cat_alg("s_3_1", &[("A", q(1, 3))]));
        assert_eq!(a3, a13);
    }

    #[test]
    fn s46_is_not_s411() {
        let a = cat_alg("s_4_6", &[]);
        let fp = fingerprint(&a);
        let m = match_class(Catalog::shipped(), &a, &fp, &inst("s_4_11", &[]));
        assert!(matches!(m.verdict, Verdict::Mismatch { .. }), "{:?}", m.verdict);
    }

    #[test]
    fn s412_is_split_over_gaussian_rationals() {
        // f1 = e1 + i e2, x1 = (e3 - i e4)/2, f2 = e1 - i e2, x2 = (e3 + i e4)/2
        let a: LieAlgebra<QuadExt> =
            instantiate_instance(Catalog::shipped(), &inst("s_4_12", &[])).unwrap();
        let r = |n, d| QuadExt::rational(q(n, d));
        let i = |n, d| QuadExt::new(q(0, 1), q(n, d), -1).unwrap();
        let z = || r(0, 1);
        let basis = vec![
            vec![r(1, 1), i(1, 1), z(), z()],
            vec![z(), z(), r(1, 2), i(-1, 2)],
            vec![r(1, 1), i(-1, 1), z(), z()],
            vec![z(), z(), r(1, 2), i(1, 2)],
        ];
        let b = a.induced_on_basis(&basis).unwrap();
        let s21: LieAlgebra<QuadExt> =
            instantiate_instance(Catalog::shipped(), &inst("s_2_1", &[])).unwrap();
        let want = s21.direct_sum(&s21);
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(b.basis_bracket(x, y), want.basis_bracket(x, y));
            }
        }
    }

    #[test]
    fn codim2_weights_are_basis_free() {
        let a = cat_alg("s_4_12", &[]);
        // rotation weights are complex: no rational canonical form
        assert!(matches!(fingerprint(&a).spectrum, Spectrum::Unsupported { .. }));
        let two = cat_alg("s_2_1", &[]);
        let b = two.direct_sum(&two);
        let fp = fingerprint(&b);
        assert!(matches!(fp.spectrum, Spectrum::Codim2 { .. }));
        let p: Matrix<Rational> = vec![
            vec![q(1, 1), q(0, 1), q(2, 1), q(0, 1)],
            vec![q(0, 1), q(1, 1), q(0, 1), q(3, 1)],
            vec![q(0, 1), q(0, 1), q(1, 1), q(0, 1)],
            vec![q(1, 1), q(0, 1), q(0, 1), q(1, 1)],
        ];
        let c = b.induced_on_basis(&p).unwrap();
        assert_eq!(fingerprint(&c), fp);
        assert_eq!(fingerprint(&b.induced_on_basis(&identity(4)).unwrap()), fp);
    }

    #[test]
    fn c2_adjoint_decomposition() {
        let c2 = RankTwo::build(Ambient::C2);
        let g = &c2.algebra;
        let h = c2.cartan(&c2.t_element(&q(1, 1), &q(0, 1)).unwrap());
        let t = Triple { h, e: c2.x(1, 2).unwrap(), f: c2.y(1, 2).unwrap() };
        let d = decompose_sl2(g, &t, &g.whole()).unwrap();
        assert_eq!(d.highest, vec![2, 1, 1, 0, 0, 0]);
        assert_eq!(d.display(), "V(2) + 2V(1) + 3V(0)");
        let own = Subspace::span(10, vec![t.h.clone(), t.e.clone(), t.f.clone()]);
        assert_eq!(decompose_sl2(g, &t, &own).unwrap().highest, vec![2]);
        let bad = Triple { h: t.h.clone(), e: t.e.clone(), f: t.e.clone() };
        assert!(decompose_sl2(g, &bad, &g.whole()).is_err());
    }

    #[test]
    fn levi_in_c2() {
        let cat = Catalog::shipped();
        let c2 = RankTwo::build(Ambient::C2);
        let t = c2.cartan(&c2.t_element(&q(1, 1), &q(0, 1)).unwrap());
        let levi = vec![c2.x(1, 2).unwrap(), c2.y(1, 2).unwrap(), t];
        let rad = vec![c2.x(0, 1).unwrap(), c2.y(1, 1).unwrap(), c2.y(1, 0).unwrap()];
        let claim = LeviClaim::from_instance(cat, &inst("A1+n_3_1", &[])).unwrap();
        let rep = verify_levi(cat, &c2, &c2.algebra, &levi, &rad, &claim).unwrap();
        assert!(rep.verdict.is_match(), "{:?}", rep.checks);
        assert!(verify_levi(cat, &c2, &c2.algebra, &levi, &levi, &claim).is_err());
    }

    #[test]
    fn g2_a1_levi() {
        let cat = Catalog::shipped();
        let g2 = RankTwo::build(Ambient::G2);
        let ha = c_unit(14, 0);
        let levi = vec![ha, g2.x(1, 0).unwrap(), g2.y(1, 0).unwrap()];
        let rad: Vec<_> = [(0, 1), (1, 1), (2, 1), (3, 1), (3, 2)]
            .iter()
            .map(|&(m, n)| g2.x(m, n).unwrap())
            .collect();
        let claim = LeviClaim::from_instance(cat, &inst("A1+n_5_3", &[])).unwrap();
        let rep = verify_levi(cat, &g2, &g2.algebra, &levi, &rad, &claim).unwrap();
        assert!(rep.verdict.is_match(), "{:?}", rep.checks);
        assert_eq!(rep.decomposition, Some(vec![3, 0]));
    }

    fn c_unit(n: usize, i: usize) -> Vector<Rational> {
        unit_vec(n, i)
    }

    #[test]
    fn semisimple_types() {
        let g2 = RankTwo::build(Ambient::G2);
        let long: Vec<(i64, i64)> = vec![(0, 1), (3, 1), (3, 2)];
        let mut v = vec![c_unit(14, 0), c_unit(14, 1)];
        for &(m, n) in &long {
            v.push(g2.x(m, n).unwrap());
            v.push(g2.y(m, n).unwrap());
        }
        let s = Subspace::span(14, v);
        let rd = root_decomposition(&g2, &g2.algebra, &s).unwrap();
        assert_eq!(rd.kind, "A2");
        let a1a1 = RankTwo::build(Ambient::A1xA1);
        let rd = root_decomposition(&a1a1, &a1a1.algebra, &a1a1.algebra.whole()).unwrap();
        assert_eq!(rd.kind, "A1xA1");
        assert_eq!(rd.triples.len(), 2);
    }
}
