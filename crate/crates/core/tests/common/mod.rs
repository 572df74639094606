//! Helpers shared by the acceptance harness and the property suites.
#![allow(dead_code)]

use lie2::algebra::LieAlgebra;
use lie2::catalog::Catalog;
use lie2::exact::{Field, QuadExt, Rational};
use lie2::expr::{normalize_vector, parse_expr_list, Env, Surd};
use lie2::ident::{fingerprint, Spectrum};
use lie2::linalg::{rank, unit_vec, Matrix, Subspace, Vector};
use lie2::rank2::{Ambient, RankTwo};
use rand::Rng;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

/// Generator vectors as written (no rescaling), over `F`.
pub fn vectors<F: Field>(amb: &RankTwo, gens: &str, env: &Env) -> Vec<Vector<F>> {
    parse_expr_list(gens)
        .unwrap()
        .iter()
        .map(|e| {
            e.eval_vector(env, amb)
                .unwrap()
                .iter()
                .map(|s| F::from_quad(&s.to_quad().unwrap()).expect("field"))
                .collect()
        })
        .collect()
}

/// The subalgebra spanned by rational generators; panics if not closed.
pub fn sub(amb: &RankTwo, gens: &str, env: &Env) -> LieAlgebra<Rational> {
    let vs: Vec<Vector<Rational>> = parse_expr_list(gens)
        .unwrap()
        .iter()
        .map(|e| {
            let v = normalize_vector(&e.eval_vector(env, amb).unwrap()).unwrap();
            v.iter().map(|x: &QuadExt| x.as_rational().unwrap().clone()).collect()
        })
        .collect();
    let g = &amb.algebra;
    assert_eq!(g.closure(&vs).dim(), vs.len(), "{gens} is not a closed basis");
    g.induced_on_basis(&vs).unwrap()
}

pub fn env(pairs: &[(&str, Rational)]) -> Env {
    pairs.iter().map(|(k, v)| (k.to_string(), Surd::rational(v.clone()))).collect()
}

/// Every non-quarantined catalog entry at one admissible parameter point.
pub fn catalog_instances() -> Vec<(String, LieAlgebra<Rational>)> {
    let cat = Catalog::shipped();
    let mut out = Vec::new();
    for e in cat.entries() {
        if cat.quarantine_reason(&e.id).is_some() {
            continue;
        }
        for p in e.sample_points(1) {
            if let Ok(a) = cat.instantiate::<Rational>(&e.id, &p) {
                out.push((format!("{}{}", e.id, lie2::catalog::show_env(&p)), a));
            }
        }
    }
    out
}

pub fn ambients() -> Vec<RankTwo> {
    Ambient::ALL.iter().map(|&a| RankTwo::build(a)).collect()
}

/// A random invertible matrix with small integer entries.
pub fn random_invertible(rng: &mut impl Rng, n: usize) -> Matrix<Rational> {
    loop {
        let m: Matrix<Rational> = (0..n)
            .map(|_| (0..n).map(|_| Rational::from_int(rng.gen_range(-2..=2))).collect())
            .collect();
        if rank(&m) == n {
            return m;
        }
    }
}

pub fn basis_change_invariant(a: &LieAlgebra<Rational>, p: &Matrix<Rational>) -> Result<(), String> {
    let b = a.change_basis(p).map_err(|e| e.to_string())?;
    let (fa, fb) = (fingerprint(a), fingerprint(&b));
    match fa.first_difference(&fb) {
        None => Ok(()),
        Some((field, x, y)) => Err(format!("{field}: {x} vs {y}")),
    }
}

/// Replaces the torus element `x` outside the nilradical by `lambda x + n`
/// (n in the nilradical) and compares spectra. Only for torus codimension 1.
pub fn spectrum_shift_invariant(
    a: &LieAlgebra<Rational>,
    lambda: &Rational,
    shift: &[i64],
) -> Result<(), String> {
    let Ok(nil) = a.nilradical() else { return Ok(()) };
    let outside = nil.complement_indices();
    if outside.len() != 1 || !a.is_solvable() {
        return Ok(());
    }
    let n = a.dim();
    let x = outside[0];
    let mut basis: Vec<Vector<Rational>> = nil.basis().to_vec();
    let mut new_x: Vector<Rational> = unit_vec::<Rational>(n, x).iter().map(|c| c.clone() * lambda).collect();
    for (b, s) in nil.basis().iter().zip(shift.iter().cycle()) {
        for (t, v) in new_x.iter_mut().zip(b) {
            *t = t.clone() + &(v.clone() * &Rational::from_int(*s));
        }
    }
    basis.push(new_x);
    let b = a.change_basis(&basis).map_err(|e| e.to_string())?;
    let (sa, sb) = (lie2::ident::spectrum(a), lie2::ident::spectrum(&b));
    if matches!(sa, Spectrum::Unsupported { .. }) {
        return Err(format!("unsupported spectrum {sa}"));
    }
    (sa == sb).then_some(()).ok_or_else(|| format!("{sa} vs {sb}"))
}

pub fn cartan_agrees(a: &LieAlgebra<Rational>) -> Result<(), String> {
    let (c, d) = (a.cartan_solvable(), a.is_solvable());
    (c == d).then_some(()).ok_or_else(|| format!("Cartan criterion {c}, derived series {d}"))
}

pub fn closure_idempotent(g: &LieAlgebra<Rational>, gens: &[Vector<Rational>]) -> Result<(), String> {
    let c = g.closure(gens);
    let again = g.closure(c.basis());
    let span = Subspace::span(g.dim(), gens.iter().cloned());
    if again.dim() != c.dim() || !c.basis().iter().all(|v| again.contains(v)) {
        return Err("closure(closure(S)) != closure(S)".into());
    }
    if !span.basis().iter().all(|v| c.contains(v)) {
        return Err("S not contained in closure(S)".into());
    }
    if c.dim() == 0 && !gens.iter().all(|v| v.iter().all(Field::is_zero)) {
        return Err("closure collapsed".into());
    }
    Ok(())
}
