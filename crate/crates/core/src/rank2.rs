//! The four rank-two ambient algebras C2, A2, A1xA1 and G2 in Chevalley bases.
//!
//! Basis order is `Ha, Hb, X_mu (positive roots), Y_mu (same order)`. The
//! classical algebras take their structure constants from matrix
//! realizations; G2 is assembled from its table of `N_{mu,nu}`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, Builder, LieAlgebra};
use crate::exact::{Field, Rational};
use crate::linalg::{express_in_basis, mat_mul, sub_vec, unit_vec, zero_vec, Matrix, Vector};

type Q = Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ambient {
    C2,
    A2,
    A1xA1,
    G2,
}

impl Ambient {
    pub const ALL: [Ambient; 4] = [Ambient::C2, Ambient::A2, Ambient::A1xA1, Ambient::G2];
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ambient::C2 => "C2",
            Ambient::A2 => "A2",
            Ambient::A1xA1 => "A1xA1",
            Ambient::G2 => "G2",
        })
    }
}

impl FromStr for Ambient {
    type Err = Rank2Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "C2" => Ok(Ambient::C2),
            "A2" => Ok(Ambient::A2),
            "A1xA1" | "A1×A1" => Ok(Ambient::A1xA1),
            "G2" => Ok(Ambient::G2),
            _ => Err(Rank2Error::UnknownAmbient(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Rank2Error {
    #[error("unknown ambient algebra {0:?}")]
    UnknownAmbient(String),
    #[error("{1:?} is not a root of {0}")]
    NotARoot(Ambient, (i64, i64)),
    #[error("{0} has no T(a,b) elements")]
    NoTElements(Ambient),
    #[error("H(0,0) is undefined")]
    ZeroWeight,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A generator-pair disagreement between abstract brackets and matrix commutators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationMismatch {
    pub i: usize,
    pub j: usize,
}

#[derive(Debug, Clone)]
pub struct RealizationReport {
    pub pairs_checked: usize,
    pub mismatches: Vec<RealizationMismatch>,
}

#[derive(Clone, Debug)]
pub struct RankTwo {
    pub ambient: Ambient,
    pub algebra: LieAlgebra<Q>,
    /// Positive roots as `(m, n)` meaning `m alpha + n beta`, in basis order.
    pub positive_roots: Vec<(i64, i64)>,
    /// Inner products `(alpha,alpha), (alpha,beta), (beta,beta)`.
    pub gram: [Q; 3],
    matrices: Option<Vec<Matrix<Q>>>,
}

fn q(v: i64) -> Q {
    Q::from_int(v)
}

fn qq(n: i64, d: i64) -> Q {
    Q::new(n, d).expect("non-zero denominator")
}

/// `E_{r,c}` as an `n x n` matrix (1-based indices, as matrices are usually written).
fn e(n: usize, r: usize, c: usize) -> Matrix<Q> {
    let mut m = vec![zero_vec::<Q>(n); n];
    m[r - 1][c - 1] = q(1);
    m
}

fn lin(terms: &[(i64, Matrix<Q>)]) -> Matrix<Q> {
    let n = terms[0].1.len();
    let mut out = vec![zero_vec::<Q>(n); n];
    for (c, m) in terms {
        for r in 0..n {
            for k in 0..n {
                out[r][k] = out[r][k].clone() + &(q(*c) * &m[r][k]);
            }
        }
    }
    out
}

fn tr(m: &Matrix<Q>) -> Matrix<Q> {
    crate::linalg::transpose(m)
}

fn commutator(a: &Matrix<Q>, b: &Matrix<Q>) -> Matrix<Q> {
    let ab = mat_mul(a, b);
    let ba = mat_mul(b, a);
    ab.iter().zip(&ba).map(|(x, y)| sub_vec(x, y)).collect()
}

fn flat(m: &Matrix<Q>) -> Vector<Q> {
    m.iter().flatten().cloned().collect()
}

fn labels(roots: &[(i64, i64)]) -> Vec<String> {
    let mut l = vec!["Ha".to_string(), "Hb".to_string()];
    l.extend(roots.iter().map(|(m, n)| format!("X({m},{n})")));
    l.extend(roots.iter().map(|(m, n)| format!("Y({m},{n})")));
    l
}

/// Structure constants of the span of `mats`, which must be closed under commutators.
fn from_matrices(mats: &[Matrix<Q>]) -> Result<LieAlgebra<Q>, AlgebraError> {
    let flats: Vec<Vector<Q>> = mats.iter().map(flat).collect();
    LieAlgebra::from_fn(mats.len(), |i, j| {
        let c = flat(&commutator(&mats[i], &mats[j]));
        express_in_basis(&flats, &c).expect("matrix span is closed")
    })
}

impl RankTwo {
    pub fn build(ambient: Ambient) -> RankTwo {
        match ambient {
            Ambient::C2 => Self::c2(),
            Ambient::A2 => Self::a2(),
            Ambient::A1xA1 => Self::a1xa1(),
            Ambient::G2 => Self::g2(),
        }
    }

    fn classical(
        ambient: Ambient,
        roots: Vec<(i64, i64)>,
        gram: [Q; 3],
        xs: Vec<Matrix<Q>>,
        ys: Vec<Matrix<Q>>,
        h: [Matrix<Q>; 2],
    ) -> RankTwo {
        let mut mats = h.to_vec();
        mats.extend(xs);
        mats.extend(ys);
        let algebra = from_matrices(&mats)
            .expect("realization is a Lie algebra")
            .with_label(ambient.to_string())
            .with_basis_labels(labels(&roots));
        RankTwo {
            ambient,
            algebra,
            positive_roots: roots,
            gram,
            matrices: Some(mats),
        }
    }

    fn c2() -> RankTwo {
        let xa = e(4, 2, 4);
        let xb = lin(&[(1, e(4, 1, 2)), (-1, e(4, 4, 3))]);
        let xab = lin(&[(1, e(4, 1, 4)), (1, e(4, 2, 3))]);
        let xa2b = e(4, 1, 3);
        let xs = vec![xa, xb, xab, xa2b];
        let ys: Vec<Matrix<Q>> = xs.iter().map(tr).collect();
        let h = [commutator(&xs[0], &ys[0]), commutator(&xs[1], &ys[1])];
        Self::classical(
            Ambient::C2,
            vec![(1, 0), (0, 1), (1, 1), (1, 2)],
            [q(2), q(-1), q(1)],
            xs,
            ys,
            h,
        )
    }

    fn a2() -> RankTwo {
        let xs = vec![e(3, 1, 2), e(3, 2, 3), lin(&[(-1, e(3, 1, 3))])];
        let ys: Vec<Matrix<Q>> = xs.iter().map(tr).collect();
        let h = [
            lin(&[(1, e(3, 1, 1)), (-1, e(3, 2, 2))]),
            lin(&[(1, e(3, 2, 2)), (-1, e(3, 3, 3))]),
        ];
        Self::classical(
            Ambient::A2,
            vec![(1, 0), (0, 1), (1, 1)],
            [q(2), q(-1), q(2)],
            xs,
            ys,
            h,
        )
    }

    fn a1xa1() -> RankTwo {
        let xs = vec![e(4, 1, 2), e(4, 3, 4)];
        let ys = vec![e(4, 2, 1), e(4, 4, 3)];
        let h = [
            lin(&[(1, e(4, 1, 1)), (-1, e(4, 2, 2))]),
            lin(&[(1, e(4, 3, 3)), (-1, e(4, 4, 4))]),
        ];
        Self::classical(
            Ambient::A1xA1,
            vec![(1, 0), (0, 1)],
            [q(2), q(0), q(2)],
            xs,
            ys,
            h,
        )
    }

    fn g2() -> RankTwo {
        let roots = vec![(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)];
        let gram = [q(1), qq(-3, 2), q(3)];
        let rs = roots.len();
        let dim = 2 + 2 * rs;
        let index = |r: (i64, i64)| -> Option<usize> {
            if let Some(p) = roots.iter().position(|&x| x == r) {
                return Some(2 + p);
            }
            roots.iter().position(|&x| x == (-r.0, -r.1)).map(|p| 2 + rs + p)
        };
        // the listed N_{mu,nu}; the rest follow from N_{mu,nu} = -N_{nu,mu} = -N_{-mu,-nu}
        let a = (1, 0);
        let b = (0, 1);
        let ab = (1, 1);
        let a2b = (2, 1);
        let a3b = (3, 1);
        let a3b2 = (3, 2);
        let neg = |r: (i64, i64)| (-r.0, -r.1);
        let listed: Vec<((i64, i64), (i64, i64), i64)> = vec![
            (b, a, 1),
            (b, a3b, 1),
            (a3b, neg(a3b2), 1),
            (a2b, neg(a3b), 1),
            (a2b, neg(a3b2), 1),
            (neg(a3b2), ab, 1),
            (neg(a3b2), b, 1),
            (neg(a3b), a, 1),
            (neg(ab), b, 1),
            (ab, a, 2),
            (a, neg(a2b), 2),
            (neg(a2b), ab, 2),
            (a, a2b, 3),
            (a, neg(ab), 3),
            (ab, a2b, 3),
        ];
        let mut n_table: HashMap<((i64, i64), (i64, i64)), i64> = HashMap::new();
        for (mu, nu, c) in listed {
            n_table.insert((mu, nu), c);
            n_table.insert((nu, mu), -c);
            n_table.insert((neg(mu), neg(nu)), -c);
            n_table.insert((neg(nu), neg(mu)), c);
        }
        let ip = |x: (i64, i64), y: (i64, i64)| -> Q {
            q(x.0 * y.0) * &gram[0] + q(x.0 * y.1 + x.1 * y.0) * &gram[1] + q(x.1 * y.1) * &gram[2]
        };
        // coroot of mu in the basis (H_alpha, H_beta)
        let coroot = |mu: (i64, i64)| -> [Q; 2] {
            let norm = ip(mu, mu);
            [
                q(mu.0) * &gram[0] * &norm.recip().unwrap(),
                q(mu.1) * &gram[2] * &norm.recip().unwrap(),
            ]
        };
        let all_roots: Vec<(i64, i64)> =
            roots.iter().copied().chain(roots.iter().map(|&r| neg(r))).collect();
        let mut builder = Builder::<Q>::new(dim);
        for (hi, s) in [a, b].into_iter().enumerate() {
            for &nu in &all_roots {
                let c = q(2) * &ip(s, nu) * &ip(s, s).recip().unwrap();
                let mut v = zero_vec(dim);
                v[index(nu).unwrap()] = c;
                builder.set(hi, index(nu).unwrap(), v).unwrap();
            }
        }
        for (pi, &mu) in all_roots.iter().enumerate() {
            for &nu in &all_roots[pi + 1..] {
                let i = index(mu).unwrap();
                let j = index(nu).unwrap();
                let mut v = zero_vec::<Q>(dim);
                if nu == neg(mu) {
                    let [h0, h1] = coroot(mu);
                    v[0] = h0;
                    v[1] = h1;
                } else if let Some(k) = index((mu.0 + nu.0, mu.1 + nu.1)) {
                    let c = n_table
                        .get(&(mu, nu))
                        .unwrap_or_else(|| panic!("missing N for {mu:?}, {nu:?}"));
                    v[k] = q(*c);
                }
                builder.set(i, j, v).unwrap();
            }
        }
        let algebra = builder
            .build()
            .with_label("G2")
            .with_basis_labels(labels(&roots));
        RankTwo {
            ambient: Ambient::G2,
            algebra,
            positive_roots: roots,
            gram,
            matrices: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn rank_positive(&self) -> usize {
        self.positive_roots.len()
    }

    /// Basis index of `X_mu` for a positive `mu`, or `Y_{-mu}` for a negative one.
    pub fn root_index(&self, m: i64, n: i64) -> Result<usize, Rank2Error> {
        let k = self.positive_roots.len();
        if let Some(p) = self.positive_roots.iter().position(|&r| r == (m, n)) {
            return Ok(2 + p);
        }
        if let Some(p) = self.positive_roots.iter().position(|&r| r == (-m, -n)) {
            return Ok(2 + k + p);
        }
        Err(Rank2Error::NotARoot(self.ambient, (m, n)))
    }

    pub fn x(&self, m: i64, n: i64) -> Result<Vector<Q>, Rank2Error> {
        if m < 0 || n < 0 {
            return Err(Rank2Error::NotARoot(self.ambient, (m, n)));
        }
        Ok(unit_vec(self.dim(), self.root_index(m, n)?))
    }

    pub fn y(&self, m: i64, n: i64) -> Result<Vector<Q>, Rank2Error> {
        if m < 0 || n < 0 {
            return Err(Rank2Error::NotARoot(self.ambient, (m, n)));
        }
        Ok(unit_vec(self.dim(), self.root_index(-m, -n)?))
    }

    /// `x Ha + y Hb` embedded in the algebra.
    pub fn cartan<F: Field>(&self, h: &[F; 2]) -> Vector<F> {
        let mut v = vec![F::zero(); self.dim()];
        v[0] = h[0].clone();
        v[1] = h[1].clone();
        v
    }

    pub fn inner(&self, x: (i64, i64), y: (i64, i64)) -> Q {
        let g = &self.gram;
        q(x.0 * y.0) * &g[0] + q(x.0 * y.1 + x.1 * y.0) * &g[1] + q(x.1 * y.1) * &g[2]
    }

    /// `T(a,b) = (a+b) Ha + a Hb`, defined for C2 only.
    pub fn t_element<F: Field>(&self, a: &F, b: &F) -> Result<[F; 2], Rank2Error> {
        if self.ambient != Ambient::C2 {
            return Err(Rank2Error::NoTElements(self.ambient));
        }
        Ok([a.clone() + b, a.clone()])
    }

    /// The Cartan element `H(c,d)` attached to `c alpha + d beta`: the coroot
    /// `2 mu / (mu, mu)` written in the basis `Ha, Hb`. On roots this is the
    /// Chevalley coroot; elsewhere it is the proportional rescaling.
    pub fn h_element<F: Field>(&self, c: &F, d: &F) -> Result<[F; 2], Rank2Error> {
        let g: Vec<F> = self.gram.iter().map(F::from_rational).collect();
        let two = F::from_int(2);
        let norm = c.clone() * c * &g[0] + two * c * d * &g[1] + d.clone() * d * &g[2];
        let inv = norm.inv().ok_or(Rank2Error::ZeroWeight)?;
        Ok([c.clone() * &g[0] * &inv, d.clone() * &g[2] * &inv])
    }

    /// Value of the root `m alpha + n beta` on `x Ha + y Hb`.
    pub fn root_value<F: Field>(&self, root: (i64, i64), h: &[F; 2]) -> F {
        let p = self.cartan_pairing();
        let mut acc = F::zero();
        for (j, hj) in h.iter().enumerate() {
            let v = q(root.0) * &p[0][j] + q(root.1) * &p[1][j];
            acc = acc + &(F::from_rational(&v) * hj);
        }
        acc
    }

    /// `pairing[i][j] = simple_i(H_j)`: the Cartan matrix, read off the brackets.
    pub fn cartan_pairing(&self) -> [[Q; 2]; 2] {
        let xa = self.root_index(1, 0).unwrap();
        let xb = self.root_index(0, 1).unwrap();
        let get = |hj: usize, xi: usize| self.algebra.constant(hj, xi, xi);
        [[get(0, xa), get(1, xa)], [get(0, xb), get(1, xb)]]
    }

    /// Action of the simple reflection `s_gamma` on Cartan coordinates, as a
    /// matrix acting on column vectors: `s(h) = h - gamma(h) H_gamma`.
    pub fn simple_reflection(&self, which: usize) -> Matrix<Q> {
        let root = if which == 0 { (1, 0) } else { (0, 1) };
        let xi = self.root_index(root.0, root.1).unwrap();
        let yi = self.root_index(-root.0, -root.1).unwrap();
        let hg = self.algebra.basis_bracket(xi, yi);
        let p = self.cartan_pairing();
        let mut m = vec![zero_vec::<Q>(2); 2];
        for (col, hj) in [[q(1), q(0)], [q(0), q(1)]].iter().enumerate() {
            let g = q(0) + &(p[which][0].clone() * &hj[0]) + &(p[which][1].clone() * &hj[1]);
            for row in 0..2 {
                m[row][col] = hj[row].clone() - &(g.clone() * &hg[row]);
            }
        }
        m
    }

    /// All elements of the Weyl group, as 2x2 matrices on Cartan coordinates.
    pub fn weyl_group(&self) -> Vec<Matrix<Q>> {
        let gens = [self.simple_reflection(0), self.simple_reflection(1)];
        let id = crate::linalg::identity::<Q>(2);
        let mut seen: BTreeSet<String> = BTreeSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            if !seen.insert(format!("{g:?}")) {
                continue;
            }
            for s in &gens {
                queue.push_back(mat_mul(s, &g));
            }
            out.push(g);
        }
        out
    }

    /// Weyl orbit of a Cartan element given in `Ha, Hb` coordinates.
    pub fn weyl_orbit<F: Field>(&self, h: &[F; 2]) -> Vec<[F; 2]> {
        let mut out: Vec<[F; 2]> = Vec::new();
        for w in self.weyl_group() {
            let img = [
                F::from_rational(&w[0][0]) * &h[0] + &(F::from_rational(&w[0][1]) * &h[1]),
                F::from_rational(&w[1][0]) * &h[0] + &(F::from_rational(&w[1][1]) * &h[1]),
            ];
            if !out.contains(&img) {
                out.push(img);
            }
        }
        out
    }

    /// Compares every generator-pair bracket with the matrix commutator.
    /// Returns `None` for G2, which is not built from matrices.
    pub fn verify_realization(&self) -> Option<RealizationReport> {
        let mats = self.matrices.as_ref()?;
        let n = mats.len();
        let mut mismatches = Vec::new();
        let mut pairs = 0;
        for i in 0..n {
            for j in i + 1..n {
                pairs += 1;
                let com = flat(&commutator(&mats[i], &mats[j]));
                let br = self.algebra.basis_bracket(i, j);
                let mut img = zero_vec::<Q>(com.len());
                for (k, c) in br.iter().enumerate() {
                    crate::linalg::axpy(&mut img, c, &flat(&mats[k]));
                }
                if img != com {
                    mismatches.push(RealizationMismatch { i, j });
                }
            }
        }
        Some(RealizationReport {
            pairs_checked: pairs,
            mismatches,
        })
    }

    pub fn matrices(&self) -> Option<&[Matrix<Q>]> {
        self.matrices.as_deref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_and_jacobi() {
        for (amb, d) in [(Ambient::C2, 10), (Ambient::A2, 8), (Ambient::A1xA1, 6), (Ambient::G2, 14)] {
            let g = RankTwo::build(amb);
            assert_eq!(g.dim(), d);
            g.algebra.check_jacobi().unwrap();
            assert!(g.algebra.is_semisimple());
        }
    }

    #[test]
    fn realization_pairs() {
        for (amb, pairs) in [(Ambient::C2, 45), (Ambient::A2, 28), (Ambient::A1xA1, 15)] {
            let rep = RankTwo::build(amb).verify_realization().unwrap();
            assert_eq!(rep.pairs_checked, pairs);
            assert!(rep.mismatches.is_empty());
        }
        assert!(RankTwo::build(Ambient::G2).verify_realization().is_none());
    }

    #[test]
    fn cartan_matrices() {
        let p = |a: Ambient| RankTwo::build(a).cartan_pairing();
        assert_eq!(p(Ambient::C2), [[q(2), q(-2)], [q(-1), q(2)]]);
        assert_eq!(p(Ambient::A2), [[q(2), q(-1)], [q(-1), q(2)]]);
        assert_eq!(p(Ambient::A1xA1), [[q(2), q(0)], [q(0), q(2)]]);
        assert_eq!(p(Ambient::G2), [[q(2), q(-1)], [q(-3), q(2)]]);
    }

    #[test]
    fn weyl_orders() {
        let orders: Vec<usize> = Ambient::ALL
            .iter()
            .map(|&a| RankTwo::build(a).weyl_group().len())
            .collect();
        assert_eq!(orders, vec![8, 6, 4, 12]);
    }

    #[test]
    fn g2_brackets_match_listed_values() {
        let g = RankTwo::build(Ambient::G2);
        let br = |x: Vector<Q>, y: Vector<Q>| g.algebra.bracket(&x, &y);
        assert_eq!(br(g.x(0, 1).unwrap(), g.x(1, 0).unwrap()), g.x(1, 1).unwrap());
        let two_x = crate::linalg::scale(&g.x(2, 1).unwrap(), &q(2));
        assert_eq!(br(g.x(1, 1).unwrap(), g.x(1, 0).unwrap()), two_x);
        // [X_mu, Y_mu] is the coroot H(m, n)
        for &(m, n) in &g.positive_roots {
            let h = g.h_element(&q(m), &q(n)).unwrap();
            assert_eq!(br(g.x(m, n).unwrap(), g.y(m, n).unwrap()), g.cartan(&h));
        }
    }

    #[test]
    fn c2_t_elements() {
        let g = RankTwo::build(Ambient::C2);
        // coroot of alpha+beta is T(1,1)
        let t = g.t_element(&q(1), &q(1)).unwrap();
        let h = g.algebra.bracket(&g.x(1, 1).unwrap(), &g.y(1, 1).unwrap());
        assert_eq!(h, g.cartan(&t));
        // weights of T(a,b): alpha -> 2b, beta -> a-b
        let t = g.t_element(&q(3), &q(5)).unwrap();
        assert_eq!(g.root_value((1, 0), &t), q(10));
        assert_eq!(g.root_value((0, 1), &t), q(-2));
    }
}
