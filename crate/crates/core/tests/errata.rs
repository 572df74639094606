//! Every corrected row matches, and its printed form is caught as a mismatch.

use lie2::catalog::Catalog;
use lie2::tables::{parse_row, sample_params, shipped, verify_row, TableRow};

fn row(key: &str) -> TableRow {
    shipped()
        .unwrap()
        .into_iter()
        .flat_map(|t| t.rows)
        .find(|r| r.key() == key)
        .unwrap_or_else(|| panic!("no row {key}"))
}

fn printed(r: &TableRow, swaps: &[(&str, &str)]) -> TableRow {
    let mut src = r.source.clone();
    for (fixed, orig) in swaps {
        assert_eq!(src.matches(fixed).count(), 1, "{fixed} in {src}");
        src = src.replacen(fixed, orig, 1);
    }
    let mut p = parse_row(&src).unwrap();
    p.index = r.index;
    p
}

fn check(key: &str, swaps: &[(&str, &str)]) {
    let cat = Catalog::shipped();
    let fixed = row(key);
    assert!(!fixed.errata().is_empty(), "{key} carries no erratum note");
    let samples = sample_params(&fixed, 5, 0).unwrap();
    let ok = verify_row(cat, &fixed, &samples);
    assert!(ok.verdict.is_match(), "{key}: {}", ok.verdict);
    let bad = printed(&fixed, swaps);
    let rep = verify_row(cat, &bad, &samples);
    assert!(
        matches!(rep.verdict, lie2::ident::Verdict::Mismatch { .. }),
        "{key} printed form: {}",
        rep.verdict
    );
}

#[test]
fn c2_principal_sl2_partner() {
    check("06.03", &[("4*Y(1,0)+3*Y(0,1)", "Y(1,0)+Y(0,1)")]);
}

#[test]
fn a2_s31_denominator() {
    check("08.07", &[("/(-2*al)", "/(-2*a*al)")]);
    check("08.08", &[("/(-2*al)", "/(-2*a*al)")]);
}

#[test]
fn g2_regular_dim3_sign() {
    check("14.05", &[("(2*d-c)/d, d/(2*d-c)", "(c-2*d)/d, d/(c-2*d)")]);
}

/// The list claim ranges over all pairs, so the printed entries are tested
/// as the pair they were printed as.
#[test]
fn g2_regular_dim4_denominators() {
    let cat = Catalog::shipped();
    let r = row("16.07");
    assert!(!r.errata().is_empty());
    let with_else = |target: &str| {
        let start = r.source.find("else: ").unwrap() + "else: ".len();
        let end = r.source[start..].find(" | ").unwrap() + start;
        let mut p = parse_row(&format!("{}{}{}", &r.source[..start], target, &r.source[end..])).unwrap();
        p.index = r.index;
        p
    };
    let samples = sample_params(&r, 5, 0).unwrap();
    let fixed = with_else("s_4_3(A=(-c+3*d)/(-3*c+6*d), B=d/(-c+2*d))");
    let rep = verify_row(cat, &fixed, &samples);
    assert!(rep.verdict.is_match(), "{}", rep.verdict);
    let bad = with_else("s_4_3(A=(-c+3*d)/(-3*c+3*d), B=d/(-c+d))");
    let rep = verify_row(cat, &bad, &samples);
    assert!(matches!(rep.verdict, lie2::ident::Verdict::Mismatch { .. }), "{}", rep.verdict);
}
