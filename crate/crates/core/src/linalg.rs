//! Dense matrices and Gaussian elimination over any [`FieldOps`] field.

use crate::field::FieldOps;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, fill: E) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![fill; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vec<E>]) -> Self
    where
        E: Default,
    {
        let cols = columns.len();
        let mut data = vec![E::default(); rows * cols];
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                data[i * cols + j] = v.clone();
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn identity<F: FieldOps<Elem = E>>(ctx: &F, n: usize) -> Self {
        let mut m = Matrix::filled(n, n, ctx.zero());
        for i in 0..n {
            m.set(i, i, ctx.one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn map<T: Clone>(&self, f: impl Fn(&E) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

pub fn mat_mul<F: FieldOps>(ctx: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "dimension mismatch");
    let mut out = Matrix::filled(a.rows, b.cols, ctx.zero());
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if ctx.is_zero(aik) {
                continue;
            }
            for j in 0..b.cols {
                let v = ctx.add(out.get(i, j), &ctx.mul(aik, b.get(k, j)));
                out.set(i, j, v);
            }
        }
    }
    out
}

pub fn mat_add<F: FieldOps>(ctx: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert!(a.rows == b.rows && a.cols == b.cols);
    Matrix {
        rows: a.rows,
        cols: a.cols,
        data: a
            .data
            .iter()
            .zip(&b.data)
            .map(|(x, y)| ctx.add(x, y))
            .collect(),
    }
}

pub fn mat_vec<F: FieldOps>(ctx: &F, a: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(a.cols, v.len());
    (0..a.rows)
        .map(|i| {
            a.row(i)
                .iter()
                .zip(v)
                .fold(ctx.zero(), |acc, (x, y)| ctx.add(&acc, &ctx.mul(x, y)))
        })
        .collect()
}

/// Reduced row echelon form and the pivot columns.
pub fn rref<F: FieldOps>(ctx: &F, m: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(pr) = (r..a.rows).find(|&i| !ctx.is_zero(a.get(i, c))) else {
            continue;
        };
        a.swap_rows(r, pr);
        let inv = ctx.inv(a.get(r, c)).expect("pivot is nonzero");
        for j in c..a.cols {
            let v = ctx.mul(a.get(r, j), &inv);
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let factor = a.get(i, c).clone();
            if ctx.is_zero(&factor) {
                continue;
            }
            for j in c..a.cols {
                let v = ctx.sub(a.get(i, j), &ctx.mul(&factor, a.get(r, j)));
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<F: FieldOps>(ctx: &F, m: &Matrix<F::Elem>) -> usize {
    rref(ctx, m).1.len()
}

/// Basis of the right kernel `{x : m x = 0}`, one vector per free column in
/// increasing column order.
pub fn kernel<F: FieldOps>(ctx: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let (r, pivots) = rref(ctx, m);
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![ctx.zero(); m.cols];
        v[free] = ctx.one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = ctx.neg(r.get(i, free));
        }
        basis.push(v);
    }
    basis
}

/// Some `x` with `m x = b`, if the system is consistent.
pub fn solve<F: FieldOps>(ctx: &F, m: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(m.rows, b.len());
    let mut aug = Matrix::filled(m.rows, m.cols + 1, ctx.zero());
    for (i, bi) in b.iter().enumerate() {
        for j in 0..m.cols {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, m.cols, bi.clone());
    }
    let (r, pivots) = rref(ctx, &aug);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![ctx.zero(); m.cols];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = r.get(i, m.cols).clone();
    }
    Some(x)
}

pub fn inverse<F: FieldOps>(ctx: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    if m.rows != m.cols {
        return None;
    }
    let n = m.rows;
    let mut aug = Matrix::filled(n, 2 * n, ctx.zero());
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n + i, ctx.one());
    }
    let (r, pivots) = rref(ctx, &aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let mut inv = Matrix::filled(n, n, ctx.zero());
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, r.get(i, n + j).clone());
        }
    }
    Some(inv)
}
