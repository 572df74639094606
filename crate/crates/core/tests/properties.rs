mod common;

use std::sync::OnceLock;

use common::*;
use lie2::algebra::LieAlgebra;
use lie2::exact::{Field, Rational};
use lie2::ident::{decompose_sl2, Triple};
use lie2::linalg::{rank, scale, Matrix, Subspace, Vector};
use lie2::rank2::RankTwo;
use lie2::tables::{parse_row, records_token_identical, shipped};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        rng_seed: RngSeed::Fixed(0x6c69_6532),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn instances() -> &'static [(String, LieAlgebra<Rational>)] {
    static CELL: OnceLock<Vec<(String, LieAlgebra<Rational>)>> = OnceLock::new();
    CELL.get_or_init(catalog_instances)
}

fn ambient_list() -> &'static [RankTwo] {
    static CELL: OnceLock<Vec<RankTwo>> = OnceLock::new();
    CELL.get_or_init(ambients)
}

fn int(v: i64) -> Rational {
    Rational::from_int(v)
}

/// Sparse generator vectors: (coordinate, value) pairs per generator.
fn gens_strategy() -> impl Strategy<Value = (usize, Vec<Vec<(usize, i64)>>)> {
    (0..4usize, prop::collection::vec(prop::collection::vec((0..14usize, -3i64..=3), 1..=3), 1..=3))
}

fn build_gens(n: usize, raw: &[Vec<(usize, i64)>]) -> Vec<Vector<Rational>> {
    raw.iter()
        .map(|g| {
            let mut v = vec![int(0); n];
            for &(i, c) in g {
                v[i % n] = int(c);
            }
            v
        })
        .collect()
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn closure_is_idempotent_and_contains_generators((a, raw) in gens_strategy()) {
        let amb = &ambient_list()[a];
        let gens = build_gens(amb.dim(), &raw);
        prop_assert_eq!(closure_idempotent(&amb.algebra, &gens), Ok(()));
    }

    #[test]
    fn cartan_criterion_agrees_with_derived_series((a, raw) in gens_strategy()) {
        let amb = &ambient_list()[a];
        let c = amb.algebra.closure(&build_gens(amb.dim(), &raw));
        prop_assume!(c.dim() > 0);
        let sub = amb.algebra.induced(&c).unwrap();
        prop_assert_eq!(cartan_agrees(&sub), Ok(()));
    }

    #[test]
    fn fingerprint_survives_basis_change(
        i in 0..usize::MAX,
        entries in prop::collection::vec(-3i64..=3, 81),
    ) {
        let (name, a) = &instances()[i % instances().len()];
        let n = a.dim();
        let p: Matrix<Rational> = (0..n).map(|r| (0..n).map(|c| int(entries[r * n + c])).collect()).collect();
        prop_assume!(rank(&p) == n);
        prop_assert_eq!(basis_change_invariant(a, &p), Ok(()), "{}", name);
    }

    #[test]
    fn spectrum_survives_torus_rescaling_and_shift(
        i in 0..usize::MAX,
        num in -5i64..=5,
        den in 1i64..=4,
        shift in prop::collection::vec(-3i64..=3, 1..=4),
    ) {
        prop_assume!(num != 0);
        let (name, a) = &instances()[i % instances().len()];
        prop_assert_eq!(spectrum_shift_invariant(a, &q(num, den), &shift), Ok(()), "{}", name);
    }

    #[test]
    fn sl2_weights_are_root_values(a in 0..4usize, r in 0..usize::MAX) {
        let amb = &ambient_list()[a];
        let g = &amb.algebra;
        let root = amb.positive_roots[r % amb.positive_roots.len()];
        let e = amb.x(root.0, root.1).unwrap();
        let f0 = amb.y(root.0, root.1).unwrap();
        let h0 = g.bracket(&e, &f0);
        // [h0, e] = c e; rescale f so that [h, e] = 2e.
        let he = g.bracket(&h0, &e);
        let k = (0..e.len()).find(|&j| !e[j].is_zero()).unwrap();
        let c = he[k].clone() * &e[k].inv().unwrap();
        let s = int(2) * &c.inv().unwrap();
        let t = Triple { h: scale(&h0, &s), e, f: scale(&f0, &s) };
        let n = g.dim();
        let d = decompose_sl2(g, &t, &g.whole()).unwrap();
        prop_assert_eq!(d.highest.iter().map(|w| w + 1).sum::<usize>(), n);

        // Independent oracle: ad h acts on X_beta by beta(h) and kills the torus.
        let hv = [t.h[0].clone(), t.h[1].clone()];
        let mut want: Vec<Rational> = vec![int(0), int(0)];
        for &(m, p) in &amb.positive_roots {
            let v = amb.root_value((m, p), &hv);
            want.push(v.clone());
            want.push(-v);
        }
        let mut got: Vec<Rational> = d
            .highest
            .iter()
            .flat_map(|&w| (0..=w).map(move |j| int(w as i64 - 2 * j as i64)))
            .collect();
        want.sort();
        got.sort();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn row_parse_tolerates_whitespace(i in 0..usize::MAX, pad in prop::collection::vec(0..3usize, 9)) {
        let rows: Vec<_> = shipped().unwrap().into_iter().flat_map(|t| t.rows).collect();
        let row = &rows[i % rows.len()];
        let text: Vec<String> = row
            .unparse()
            .splitn(9, '|')
            .zip(&pad)
            .map(|(f, &k)| format!("{}{}{}", " ".repeat(k), f.trim(), " ".repeat(k)))
            .collect();
        let again = parse_row(&text.join("|")).unwrap();
        prop_assert_eq!(again.unparse(), row.unparse());
    }
}

#[test]
fn every_shipped_row_round_trips() {
    for t in shipped().unwrap() {
        for row in &t.rows {
            let text = row.unparse();
            assert!(records_token_identical(&row.source, &text), "{}: {text}", row.key());
            assert_eq!(parse_row(&text).unwrap().unparse(), text, "{}", row.key());
        }
    }
}

#[test]
fn closure_of_a_subalgebra_basis_is_itself() {
    for amb in ambient_list() {
        let borel: Vec<Vector<Rational>> = amb
            .positive_roots
            .iter()
            .map(|&(m, n)| amb.x(m, n).unwrap())
            .collect();
        let c = amb.algebra.closure(&borel);
        assert_eq!(c, Subspace::span(amb.dim(), borel.clone()), "{:?}", amb.ambient);
    }
}
