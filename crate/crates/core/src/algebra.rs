//! Finite-dimensional Lie algebras given by structure constants, and the
//! structural computations on them: closure, series, centre, Killing form,
//! radical, nilradical and derivations.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{parse_scalar, ExactError, Field};
use crate::linalg::{
    axpy, is_zero_vec, kernel, mat_mul, rank, trace_of_product, unit_vec, zero_vec, Echelon,
    Matrix, Subspace, Vector,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("span is not closed under the bracket: [b{0}, b{1}] leaves it")]
    NotASubalgebra(usize, usize),
    #[error("Jacobi identity fails on (e{0}, e{1}, e{2})")]
    Jacobi(usize, usize, usize),
    #[error("antisymmetry violated at [e{0}, e{1}]")]
    Antisymmetry(usize, usize),
    #[error("index {index} out of range for dimension {dim}")]
    Index { index: usize, dim: usize },
    #[error("vector has length {got}, expected {expected}")]
    Length { got: usize, expected: usize },
    #[error("algebra is not solvable")]
    NotSolvable,
    #[error("post-condition failed: {0}")]
    PostCondition(String),
    #[error(transparent)]
    Scalar(#[from] ExactError),
    #[error("malformed algebra JSON: {0}")]
    Json(String),
}

/// A Lie algebra with basis `e_0..e_{n-1}` and `[e_i, e_j] = sum_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra<F: Field> {
    dim: usize,
    label: Option<String>,
    basis_labels: Option<Vec<String>>,
    /// Non-zero entries of `[e_i, e_j]`, indexed by `i * dim + j`.
    table: Vec<Vec<(usize, F)>>,
}

/// Accumulates brackets `[e_i, e_j] = v`, filling in `[e_j, e_i] = -v` and
/// rejecting contradictory entries.
pub struct Builder<F: Field> {
    dim: usize,
    entries: Vec<Option<Vector<F>>>,
}

impl<F: Field> Builder<F> {
    pub fn new(dim: usize) -> Self {
        Builder {
            dim,
            entries: vec![None; dim * dim],
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: Vector<F>) -> Result<(), AlgebraError> {
        let n = self.dim;
        for idx in [i, j] {
            if idx >= n {
                return Err(AlgebraError::Index { index: idx, dim: n });
            }
        }
        if v.len() != n {
            return Err(AlgebraError::Length {
                got: v.len(),
                expected: n,
            });
        }
        if i == j {
            return if is_zero_vec(&v) {
                Ok(())
            } else {
                Err(AlgebraError::Antisymmetry(i, j))
            };
        }
        let neg: Vector<F> = v.iter().map(|x| -x.clone()).collect();
        match (&self.entries[i * n + j], &self.entries[j * n + i]) {
            (Some(old), _) if *old != v => return Err(AlgebraError::Antisymmetry(i, j)),
            (_, Some(old)) if *old != neg => return Err(AlgebraError::Antisymmetry(i, j)),
            _ => {}
        }
        self.entries[i * n + j] = Some(v);
        self.entries[j * n + i] = Some(neg);
        Ok(())
    }

    /// Adds `c * e_k` to `[e_i, e_j]` (and the mirrored entry).
    pub fn add_term(&mut self, i: usize, j: usize, k: usize, c: F) -> Result<(), AlgebraError> {
        let n = self.dim;
        if k >= n {
            return Err(AlgebraError::Index { index: k, dim: n });
        }
        let mut v = self.entries[i * n + j].clone().unwrap_or_else(|| zero_vec(n));
        v[k] = v[k].clone() + &c;
        self.entries[i * n + j] = None;
        self.entries[j * n + i] = None;
        self.set(i, j, v)
    }

    pub fn build(self) -> LieAlgebra<F> {
        let table = self
            .entries
            .into_iter()
            .map(|e| {
                e.map(|v| {
                    v.into_iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .collect()
                })
                .unwrap_or_default()
            })
            .collect();
        LieAlgebra {
            dim: self.dim,
            label: None,
            basis_labels: None,
            table,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    basis: Option<Vec<String>>,
    constants: Vec<(usize, usize, usize, String)>,
}

impl<F: Field> LieAlgebra<F> {
    pub fn abelian(dim: usize) -> Self {
        Builder::new(dim).build()
    }

    /// Builds the algebra whose brackets are given by `f(i, j)` for `i < j`.
    pub fn from_fn(
        dim: usize,
        mut f: impl FnMut(usize, usize) -> Vector<F>,
    ) -> Result<Self, AlgebraError> {
        let mut b = Builder::new(dim);
        for i in 0..dim {
            for j in i + 1..dim {
                b.set(i, j, f(i, j))?;
            }
        }
        Ok(b.build())
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn with_basis_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim);
        self.basis_labels = Some(labels);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn basis_labels(&self) -> Option<&[String]> {
        self.basis_labels.as_deref()
    }

    pub fn basis_label(&self, i: usize) -> String {
        match &self.basis_labels {
            Some(l) => l[i].clone(),
            None => format!("e{}", i + 1),
        }
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> F {
        self.table[i * self.dim + j]
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(F::zero)
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> Vector<F> {
        let mut v = zero_vec(self.dim);
        for (k, c) in &self.table[i * self.dim + j] {
            v[*k] = c.clone();
        }
        v
    }

    pub fn bracket(&self, x: &[F], y: &[F]) -> Vector<F> {
        let n = self.dim;
        let mut out = zero_vec::<F>(n);
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let entries = &self.table[i * n + j];
                if entries.is_empty() {
                    continue;
                }
                let s = xi.clone() * yj;
                for (k, c) in entries {
                    out[*k] = out[*k].clone() + &(s.clone() * c);
                }
            }
        }
        out
    }

    /// Matrix of `ad x` acting on column vectors.
    pub fn ad(&self, x: &[F]) -> Matrix<F> {
        let n = self.dim;
        let cols: Vec<Vector<F>> = (0..n).map(|j| self.bracket(x, &unit_vec(n, j))).collect();
        (0..n).map(|k| (0..n).map(|j| cols[j][k].clone()).collect()).collect()
    }

    pub fn ad_basis(&self, i: usize) -> Matrix<F> {
        let n = self.dim;
        let mut m = vec![zero_vec::<F>(n); n];
        for j in 0..n {
            for (k, c) in &self.table[i * n + j] {
                m[*k][j] = c.clone();
            }
        }
        m
    }

    pub fn check_jacobi(&self) -> Result<(), AlgebraError> {
        let n = self.dim;
        for i in 0..n {
            if !self.table[i * n + i].is_empty() {
                return Err(AlgebraError::Antisymmetry(i, i));
            }
            for j in 0..n {
                let mut s = self.basis_bracket(i, j);
                axpy(&mut s, &F::one(), &self.basis_bracket(j, i));
                if !is_zero_vec(&s) {
                    return Err(AlgebraError::Antisymmetry(i, j));
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (unit_vec(n, i), unit_vec(n, j), unit_vec(n, k));
                    let mut s = self.bracket(&self.bracket(&ei, &ej), &ek);
                    axpy(&mut s, &F::one(), &self.bracket(&self.bracket(&ej, &ek), &ei));
                    axpy(&mut s, &F::one(), &self.bracket(&self.bracket(&ek, &ei), &ej));
                    if !is_zero_vec(&s) {
                        return Err(AlgebraError::Jacobi(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn whole(&self) -> Subspace<F> {
        Subspace::full(self.dim)
    }

    pub fn bracket_spaces(&self, u: &Subspace<F>, v: &Subspace<F>) -> Subspace<F> {
        let mut out = Vec::new();
        for x in u.basis() {
            for y in v.basis() {
                let b = self.bracket(x, y);
                if !is_zero_vec(&b) {
                    out.push(b);
                }
            }
        }
        Subspace::span(self.dim, out)
    }

    /// Smallest subalgebra containing `gens`.
    pub fn closure(&self, gens: &[Vector<F>]) -> Subspace<F> {
        let mut s = Subspace::span(self.dim, gens.iter().cloned());
        // every productive round adds at least one dimension
        for _ in 0..=self.dim {
            let next = s.sum(&self.bracket_spaces(&s, &s));
            if next.dim() == s.dim() {
                return s;
            }
            s = next;
        }
        s
    }

    pub fn subalgebra_witness(&self, s: &Subspace<F>) -> Option<(usize, usize)> {
        let b = s.basis();
        for p in 0..b.len() {
            for q in p + 1..b.len() {
                if !s.contains(&self.bracket(&b[p], &b[q])) {
                    return Some((p, q));
                }
            }
        }
        None
    }

    pub fn is_ideal(&self, s: &Subspace<F>) -> bool {
        (0..self.dim).all(|i| {
            let e = unit_vec(self.dim, i);
            s.basis().iter().all(|v| s.contains(&self.bracket(&e, v)))
        })
    }

    /// Structure constants of a subalgebra in the echelon basis of `s`.
    pub fn induced(&self, s: &Subspace<F>) -> Result<LieAlgebra<F>, AlgebraError> {
        let b = s.basis();
        let d = b.len();
        let mut builder = Builder::new(d);
        for p in 0..d {
            for q in p + 1..d {
                let br = self.bracket(&b[p], &b[q]);
                let coords = s.coordinates(&br).ok_or(AlgebraError::NotASubalgebra(p, q))?;
                builder.set(p, q, coords)?;
            }
        }
        Ok(builder.build())
    }

    /// Structure constants in the basis given by the rows of `basis`, which
    /// must be linearly independent and span a subalgebra.
    pub fn induced_on_basis(&self, basis: &[Vector<F>]) -> Result<LieAlgebra<F>, AlgebraError> {
        let d = basis.len();
        let s = Subspace::span(self.dim, basis.iter().cloned());
        if s.dim() != d {
            return Err(AlgebraError::PostCondition("basis is linearly dependent".into()));
        }
        // coordinates relative to `basis`: solve via the echelon coordinates
        let to_echelon: Matrix<F> = basis
            .iter()
            .map(|v| s.coordinates(v).expect("in span"))
            .collect();
        let inv = crate::linalg::inverse(&to_echelon).expect("independent basis");
        let mut builder = Builder::new(d);
        for p in 0..d {
            for q in p + 1..d {
                let br = self.bracket(&basis[p], &basis[q]);
                let e = s.coordinates(&br).ok_or(AlgebraError::NotASubalgebra(p, q))?;
                // br = sum e_r * s_r and s_r = sum inv[r][t] basis_t
                let mut c = zero_vec::<F>(d);
                for (r, er) in e.iter().enumerate() {
                    axpy(&mut c, er, &inv[r]);
                }
                builder.set(p, q, c)?;
            }
        }
        Ok(builder.build())
    }

    pub fn derived_series(&self) -> Vec<Subspace<F>> {
        let mut chain = vec![self.whole()];
        loop {
            let last = chain.last().unwrap();
            let next = self.bracket_spaces(last, last);
            if next == *last {
                return chain;
            }
            chain.push(next);
        }
    }

    pub fn lower_central_series(&self) -> Vec<Subspace<F>> {
        let whole = self.whole();
        let mut chain = vec![whole.clone()];
        loop {
            let last = chain.last().unwrap();
            let next = self.bracket_spaces(&whole, last);
            if next == *last {
                return chain;
            }
            chain.push(next);
        }
    }

    /// `{x : [x, g] ⊆ s}`
    fn centralizer_mod(&self, s: &Subspace<F>) -> Subspace<F> {
        let n = self.dim;
        let mut rows: Matrix<F> = Vec::new();
        for j in 0..n {
            // columns: residue of [e_i, e_j] modulo s, for each i
            let cols: Vec<Vector<F>> = (0..n)
                .map(|i| s.residue(&self.basis_bracket(i, j)))
                .collect();
            for k in 0..n {
                let row: Vector<F> = (0..n).map(|i| cols[i][k].clone()).collect();
                if !is_zero_vec(&row) {
                    rows.push(row);
                }
            }
        }
        Subspace::span(n, kernel(&rows, n))
    }

    pub fn upper_central_series(&self) -> Vec<Subspace<F>> {
        let mut chain = vec![Subspace::zero(self.dim)];
        loop {
            let next = self.centralizer_mod(chain.last().unwrap());
            if next == *chain.last().unwrap() {
                return chain;
            }
            chain.push(next);
        }
    }

    pub fn center(&self) -> Subspace<F> {
        self.centralizer_mod(&Subspace::zero(self.dim))
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|e| e.is_empty())
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().dim() == 0
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().unwrap().dim() == 0
    }

    pub fn killing_matrix(&self) -> Matrix<F> {
        let ads: Vec<Matrix<F>> = (0..self.dim).map(|i| self.ad_basis(i)).collect();
        let n = self.dim;
        let mut k = vec![zero_vec::<F>(n); n];
        for i in 0..n {
            for j in i..n {
                let v = trace_of_product(&ads[i], &ads[j]);
                k[i][j] = v.clone();
                k[j][i] = v;
            }
        }
        k
    }

    pub fn killing(&self, x: &[F], y: &[F]) -> F {
        trace_of_product(&self.ad(x), &self.ad(y))
    }

    pub fn is_semisimple(&self) -> bool {
        self.dim > 0 && rank(&self.killing_matrix()) == self.dim
    }

    /// Cartan's criterion: solvable iff the Killing form vanishes on `g x [g,g]`.
    pub fn cartan_solvable(&self) -> bool {
        let d = self.bracket_spaces(&self.whole(), &self.whole());
        let k = self.killing_matrix();
        (0..self.dim).all(|i| {
            d.basis()
                .iter()
                .all(|y| crate::linalg::dot(&k[i], y).is_zero())
        })
    }

    /// The radical, as the Killing-orthogonal complement of `[g, g]`.
    pub fn radical(&self) -> Result<Subspace<F>, AlgebraError> {
        let d = self.bracket_spaces(&self.whole(), &self.whole());
        let k = self.killing_matrix();
        let rows: Matrix<F> = d
            .basis()
            .iter()
            .map(|y| crate::linalg::mat_vec(&k, y))
            .collect();
        let r = Subspace::span(self.dim, kernel(&rows, self.dim));
        if !self.is_ideal(&r) || !self.induced(&r)?.is_solvable() {
            return Err(AlgebraError::PostCondition("radical is not a solvable ideal".into()));
        }
        Ok(r)
    }

    /// The nilradical of a solvable algebra.
    ///
    /// Writing every `ad x` in a common triangular form, `tr(ad x * M)` for a
    /// product `M` of `ad` matrices is a weighted sum of the weights at `x`.
    /// Weights vanish on `[g,g]`, so they are functions of their values on a
    /// complement `y_1..y_t`, and the diagonal of `ad(y_1)^k_1 ... ad(y_t)^k_t`
    /// is the corresponding monomial in them. Monomials of degree below `n`
    /// interpolate any function on the at most `n` weights, so all of these
    /// traces vanish exactly when every weight vanishes at `x`, i.e. when
    /// `ad x` is nilpotent. This keeps the computation linear and rational
    /// even when the weights are not.
    pub fn nilradical(&self) -> Result<Subspace<F>, AlgebraError> {
        if !self.is_solvable() {
            return Err(AlgebraError::NotSolvable);
        }
        let n = self.dim;
        if self.is_nilpotent() {
            return Ok(self.whole());
        }
        let derived = self.bracket_spaces(&self.whole(), &self.whole());
        let gens: Vec<Matrix<F>> = derived.complement_indices().into_iter().map(|i| self.ad_basis(i)).collect();
        let ads: Vec<Matrix<F>> = (0..n).map(|i| self.ad_basis(i)).collect();
        // Ordered monomials: (matrix, index of the last factor).
        let mut words: Vec<Matrix<F>> = vec![crate::linalg::identity(n)];
        let mut layer: Vec<(Matrix<F>, usize)> = vec![(crate::linalg::identity(n), 0)];
        for _ in 1..n {
            let mut next = Vec::new();
            for (m, last) in &layer {
                for (j, g) in gens.iter().enumerate().skip(*last) {
                    next.push((mat_mul(m, g), j));
                }
            }
            words.extend(next.iter().map(|(m, _)| m.clone()));
            layer = next;
        }
        let rows: Matrix<F> = words
            .iter()
            .map(|w| ads.iter().map(|a| trace_of_product(a, w)).collect())
            .collect();
        let nil = Subspace::span(n, kernel(&rows, n));
        if !nil.contains_space(&derived) {
            return Err(AlgebraError::PostCondition("nilradical misses [g,g]".into()));
        }
        if !self.is_ideal(&nil) || !self.induced(&nil)?.is_nilpotent() {
            return Err(AlgebraError::PostCondition("nilradical is not a nilpotent ideal".into()));
        }
        Ok(nil)
    }

    /// Dimension of the derivation algebra.
    pub fn derivation_dim(&self) -> usize {
        let n = self.dim;
        let var = |a: usize, b: usize| a * n + b;
        let mut eqs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for l in 0..n {
                    // D[e_i,e_j] - [D e_i, e_j] - [e_i, D e_j], component l
                    let mut eq = zero_vec::<F>(n * n);
                    for (k, c) in &self.table[i * n + j] {
                        eq[var(l, *k)] = eq[var(l, *k)].clone() + c;
                    }
                    for m in 0..n {
                        let c1 = self.constant(m, j, l);
                        if !c1.is_zero() {
                            eq[var(m, i)] = eq[var(m, i)].clone() - &c1;
                        }
                        let c2 = self.constant(i, m, l);
                        if !c2.is_zero() {
                            eq[var(m, j)] = eq[var(m, j)].clone() - &c2;
                        }
                    }
                    if !is_zero_vec(&eq) {
                        eqs.push(eq);
                    }
                }
            }
        }
        let rank = F::fast_rank(&eqs, n * n).unwrap_or_else(|| {
            let mut ech = Echelon::new(n * n);
            for eq in eqs {
                ech.insert(eq);
            }
            ech.rank()
        });
        n * n - rank
    }

    /// The same algebra in the basis given by the rows of `p` (invertible).
    pub fn change_basis(&self, p: &Matrix<F>) -> Result<LieAlgebra<F>, AlgebraError> {
        let mut out = self.induced_on_basis(p)?;
        out.label = self.label.clone();
        Ok(out)
    }

    pub fn direct_sum(&self, other: &LieAlgebra<F>) -> LieAlgebra<F> {
        let (n, m) = (self.dim, other.dim);
        let d = n + m;
        let mut b = Builder::new(d);
        for i in 0..n {
            for j in i + 1..n {
                let mut v = self.basis_bracket(i, j);
                v.resize(d, F::zero());
                b.set(i, j, v).expect("consistent");
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                let mut v = zero_vec::<F>(n);
                v.extend(other.basis_bracket(i, j));
                b.set(n + i, n + j, v).expect("consistent");
            }
        }
        b.build()
    }

    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G) -> LieAlgebra<G> {
        LieAlgebra {
            dim: self.dim,
            label: self.label.clone(),
            basis_labels: self.basis_labels.clone(),
            table: self
                .table
                .iter()
                .map(|e| e.iter().map(|(k, c)| (*k, f(c))).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let n = self.dim;
        let mut constants = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for (k, c) in &self.table[i * n + j] {
                    constants.push((i, j, *k, c.to_string()));
                }
            }
        }
        let j = AlgebraJson {
            dim: n,
            label: self.label.clone(),
            basis: self.basis_labels.clone(),
            constants,
        };
        serde_json::to_string_pretty(&j).expect("serialisable")
    }

    pub fn from_json(s: &str) -> Result<Self, AlgebraError> {
        let j: AlgebraJson =
            serde_json::from_str(s).map_err(|e| AlgebraError::Json(e.to_string()))?;
        let mut b = Builder::new(j.dim);
        for (i, jj, k, c) in j.constants {
            if i >= j.dim || jj >= j.dim {
                return Err(AlgebraError::Index {
                    index: i.max(jj),
                    dim: j.dim,
                });
            }
            b.add_term(i, jj, k, parse_scalar::<F>(&c)?)?;
        }
        let mut a = b.build();
        a.label = j.label;
        if let Some(l) = j.basis {
            if l.len() != a.dim {
                return Err(AlgebraError::Json("basis label count".into()));
            }
            a.basis_labels = Some(l);
        }
        Ok(a)
    }
}

pub fn dims<F: Field>(chain: &[Subspace<F>]) -> Vec<usize> {
    chain.iter().map(|s| s.dim()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;

    type Q = Rational;

    fn q(v: i64) -> Q {
        Q::from_int(v)
    }

    /// sl2 in the basis (h, e, f).
    fn sl2() -> LieAlgebra<Q> {
        let mut b = Builder::new(3);
        b.set(0, 1, vec![q(0), q(2), q(0)]).unwrap();
        b.set(0, 2, vec![q(0), q(0), q(-2)]).unwrap();
        b.set(1, 2, vec![q(1), q(0), q(0)]).unwrap();
        b.build()
    }

    /// [e4,e1]=e1, [e4,e2]=e2, [e4,e3]=e3+... a small solvable example with
    /// nilradical <e1,e2,e3>: [e2,e3]=e1, [e4,e1]=2e1, [e4,e2]=e2, [e4,e3]=e3
    fn heis_ext() -> LieAlgebra<Q> {
        let mut b = Builder::new(4);
        b.set(1, 2, vec![q(1), q(0), q(0), q(0)]).unwrap();
        b.set(3, 0, vec![q(2), q(0), q(0), q(0)]).unwrap();
        b.set(3, 1, vec![q(0), q(1), q(0), q(0)]).unwrap();
        b.set(3, 2, vec![q(0), q(0), q(1), q(0)]).unwrap();
        b.build()
    }

    #[test]
    fn sl2_structure() {
        let g = sl2();
        g.check_jacobi().unwrap();
        assert!(g.is_semisimple());
        assert!(!g.is_solvable());
        assert_eq!(dims(&g.derived_series()), vec![3]);
        assert_eq!(g.center().dim(), 0);
        assert_eq!(g.radical().unwrap().dim(), 0);
        assert_eq!(g.derivation_dim(), 3);
        // Killing form of sl2: k(h,h) = 8, k(e,f) = 4
        let k = g.killing_matrix();
        assert_eq!(k[0][0], q(8));
        assert_eq!(k[1][2], q(4));
    }

    #[test]
    fn solvable_example() {
        let g = heis_ext();
        g.check_jacobi().unwrap();
        assert!(g.is_solvable() && !g.is_nilpotent());
        assert!(g.cartan_solvable());
        assert_eq!(dims(&g.derived_series()), vec![4, 3, 1, 0]);
        assert_eq!(g.nilradical().unwrap().dim(), 3);
        assert_eq!(g.center().dim(), 0);
    }

    #[test]
    fn closure_and_induced() {
        let g = sl2();
        let s = g.closure(&[vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)]]);
        assert_eq!(s.dim(), 3);
        let b = Subspace::span(3, vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]]);
        assert!(g.induced(&b).is_ok());
        let bad = Subspace::span(3, vec![vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)]]);
        assert_eq!(g.induced(&bad), Err(AlgebraError::NotASubalgebra(0, 1)));
    }

    #[test]
    fn json_round_trip() {
        let g = heis_ext().with_label("example");
        let s = g.to_json();
        let back = LieAlgebra::<Q>::from_json(&s).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.to_json(), s);
    }

    #[test]
    fn antisymmetry_conflict_rejected() {
        let mut b = Builder::<Q>::new(2);
        b.set(0, 1, vec![q(1), q(0)]).unwrap();
        assert!(b.set(1, 0, vec![q(1), q(0)]).is_err());
        assert!(b.set(1, 0, vec![q(-1), q(0)]).is_ok());
    }
}
