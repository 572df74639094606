//! Dense exact linear algebra over a [`Field`]: row reduction, kernels,
//! subspaces and characteristic polynomials.

use crate::exact::Field;

pub type Vector<F> = Vec<F>;
pub type Matrix<F> = Vec<Vec<F>>;

pub fn zero_vec<F: Field>(n: usize) -> Vector<F> {
    vec![F::zero(); n]
}

pub fn unit_vec<F: Field>(n: usize, i: usize) -> Vector<F> {
    let mut v = zero_vec(n);
    v[i] = F::one();
    v
}

pub fn is_zero_vec<F: Field>(v: &[F]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn scale<F: Field>(v: &[F], s: &F) -> Vector<F> {
    v.iter().map(|x| x.clone() * s).collect()
}

pub fn add_vec<F: Field>(a: &[F], b: &[F]) -> Vector<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y).collect()
}

pub fn sub_vec<F: Field>(a: &[F], b: &[F]) -> Vector<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y).collect()
}

/// `a += s * b`
pub fn axpy<F: Field>(a: &mut [F], s: &F, b: &[F]) {
    if s.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x = x.clone() + &(s.clone() * y);
        }
    }
}

pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    let mut acc = F::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc + &(x.clone() * y);
        }
    }
    acc
}

pub fn identity<F: Field>(n: usize) -> Matrix<F> {
    (0..n).map(|i| unit_vec(n, i)).collect()
}

pub fn mat_mul<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![zero_vec::<F>(m); n];
    for (i, row) in a.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            if !x.is_zero() {
                axpy(&mut out[i], x, &b[k]);
            }
        }
    }
    out
}

pub fn mat_vec<F: Field>(a: &Matrix<F>, v: &[F]) -> Vector<F> {
    a.iter().map(|row| dot(row, v)).collect()
}

pub fn transpose<F: Field>(a: &Matrix<F>) -> Matrix<F> {
    let n = a.len();
    let m = a.first().map_or(0, |r| r.len());
    (0..m).map(|j| (0..n).map(|i| a[i][j].clone()).collect()).collect()
}

pub fn trace<F: Field>(a: &Matrix<F>) -> F {
    let mut acc = F::zero();
    for (i, row) in a.iter().enumerate() {
        acc = acc + &row[i];
    }
    acc
}

/// `tr(a * b)` without forming the product.
pub fn trace_of_product<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> F {
    let mut acc = F::zero();
    for (i, row) in a.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            if !x.is_zero() && !b[k][i].is_zero() {
                acc = acc + &(x.clone() * &b[k][i]);
            }
        }
    }
    acc
}

/// Reduces `rows` in place to reduced row echelon form, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref<F: Field>(rows: &mut Matrix<F>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("non-zero pivot");
        let pivot_row: Vec<F> = rows[r].iter().map(|x| x.clone() * &inv).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = -row[c].clone();
                axpy(row, &f, &pivot_row);
            }
        }
        rows[r] = pivot_row;
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank<F: Field>(rows: &Matrix<F>) -> usize {
    let mut m = rows.clone();
    rref(&mut m).len()
}

/// Basis of `{x : a x = 0}` where `a` has `ncols` columns.
pub fn kernel<F: Field>(a: &Matrix<F>, ncols: usize) -> Vec<Vector<F>> {
    let mut m: Matrix<F> = a.iter().filter(|r| !is_zero_vec(r)).cloned().collect();
    let pivots = rref(&mut m);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = zero_vec::<F>(ncols);
        v[free] = F::one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        out.push(v);
    }
    out
}

/// Incremental echelon basis, used for rank computations over large equation
/// systems without materialising them.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    ncols: usize,
    rows: Vec<(usize, Vector<F>)>,
}

impl<F: Field> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; returns the residue.
    pub fn reduce(&self, mut v: Vector<F>) -> Vector<F> {
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = -v[*p].clone();
                axpy(&mut v, &f, row);
            }
        }
        v
    }

    /// Adds `v`; returns true if it increased the rank.
    pub fn insert(&mut self, v: Vector<F>) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        let v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("non-zero pivot");
        let v = scale(&v, &inv);
        self.rows.push((p, v));
        true
    }
}

/// A subspace of `F^n`, stored as its reduced row echelon basis. Two
/// subspaces are equal exactly when their stored bases are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    ambient: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = Vector<F>>) -> Self {
        let mut rows: Matrix<F> = vectors.into_iter().filter(|v| !is_zero_vec(v)).collect();
        for r in &rows {
            assert_eq!(r.len(), ambient, "vector length does not match ambient dimension");
        }
        let pivots = rref(&mut rows);
        Subspace {
            ambient,
            basis: rows,
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v - (its component along the basis)`, computed from pivot entries.
    pub fn residue(&self, v: &[F]) -> Vector<F> {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !out[p].is_zero() {
                let f = -out[p].clone();
                axpy(&mut out, &f, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &[F]) -> bool {
        is_zero_vec(&self.residue(v))
    }

    pub fn contains_space(&self, other: &Subspace<F>) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[F]) -> Option<Vector<F>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        Subspace::span(
            self.ambient,
            self.basis.iter().chain(other.basis.iter()).cloned(),
        )
    }

    pub fn with(&self, vectors: impl IntoIterator<Item = Vector<F>>) -> Subspace<F> {
        Subspace::span(self.ambient, self.basis.iter().cloned().chain(vectors))
    }

    pub fn intersect(&self, other: &Subspace<F>) -> Subspace<F> {
        // x in self with residue(x) against other == 0: solve for coefficients.
        let d = self.dim();
        if d == 0 || other.dim() == 0 {
            return Subspace::zero(self.ambient);
        }
        // columns: residues of own basis vectors modulo `other`
        let res: Vec<Vector<F>> = self.basis.iter().map(|b| other.residue(b)).collect();
        let system = transpose(&res);
        let coeffs = kernel(&system, d);
        Subspace::span(
            self.ambient,
            coeffs.into_iter().map(|c| {
                let mut v = zero_vec::<F>(self.ambient);
                for (ci, b) in c.iter().zip(&self.basis) {
                    axpy(&mut v, ci, b);
                }
                v
            }),
        )
    }

    /// Standard basis vectors completing this subspace to the whole space.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }
}

/// Coefficients `[1, c1, ..., cn]` of `det(lambda I - a)`, highest degree first.
pub fn char_poly<F: Field>(a: &Matrix<F>) -> Vec<F> {
    // Faddeev-LeVerrier: M_k = a M_{k-1} + c_{k-1} I, c_k = -tr(a M_k)/k.
    let n = a.len();
    let mut coeffs = vec![F::one()];
    let mut m: Matrix<F> = vec![zero_vec(n); n];
    for k in 1..=n {
        let mut next = mat_mul(a, &m);
        let c_prev = coeffs[k - 1].clone();
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = row[i].clone() + &c_prev;
        }
        m = next;
        let t = trace_of_product(a, &m);
        let k_inv = F::from_int(k as i64).inv().expect("characteristic zero");
        coeffs.push(-(t * &k_inv));
    }
    coeffs
}

/// Some solution of `a x = b`, if one exists.
pub fn solve<F: Field>(a: &Matrix<F>, b: &[F]) -> Option<Vector<F>> {
    let ncols = a.first().map_or(0, |r| r.len());
    let mut aug: Matrix<F> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = zero_vec::<F>(ncols);
    for (row, &p) in aug.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Coordinates of `v` with respect to independent `basis` vectors.
pub fn express_in_basis<F: Field>(basis: &[Vector<F>], v: &[F]) -> Option<Vector<F>> {
    let a = transpose(&basis.to_vec());
    if basis.is_empty() {
        return is_zero_vec(v).then(Vec::new);
    }
    solve(&a, v)
}

pub fn inverse<F: Field>(a: &Matrix<F>) -> Option<Matrix<F>> {
    let n = a.len();
    let mut aug: Matrix<F> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(unit_vec::<F>(n, i));
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() != n || piv.iter().enumerate().any(|(i, &p)| i != p) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;

    fn q(v: i64) -> Rational {
        Rational::from_int(v)
    }

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn kernel_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 1);
        assert!(is_zero_vec(&mat_vec(&a, &k[0])));
    }

    #[test]
    fn subspace_ops() {
        let u = Subspace::span(3, vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]]);
        let v = Subspace::span(3, vec![vec![q(0), q(1), q(1)], vec![q(1), q(1), q(1)]]);
        let w = u.intersect(&v);
        assert_eq!(w.dim(), 1);
        assert!(w.contains(&[q(1), q(0), q(0)]));
        assert_eq!(u.sum(&v).dim(), 3);
        assert_eq!(u.coordinates(&[q(2), q(5), q(0)]), Some(vec![q(2), q(5)]));
    }

    #[test]
    fn char_poly_matches_eigenvalues() {
        // upper triangular with diagonal 1, 2, 3
        let a = m(&[&[1, 5, 7], &[0, 2, 1], &[0, 0, 3]]);
        assert_eq!(char_poly(&a), vec![q(1), q(-6), q(11), q(-6)]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(3));
    }
}
