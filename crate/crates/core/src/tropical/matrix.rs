use std::ops::{Index, IndexMut};

use crate::error::{Result, WkamError};

/// Dense square matrix stored row-major. Row = source point, column = target.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    n: usize,
    data: Vec<E>,
}

impl<E> Matrix<E> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(WkamError::Parse(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Matrix { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = &E> + '_ {
        (0..self.n).map(move |i| &self.data[i * self.n + j])
    }

    pub fn rows(&self) -> impl Iterator<Item = &[E]> + '_ {
        self.data.chunks(self.n.max(1)).take(self.n)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &E)> + '_ {
        let n = self.n;
        self.data.iter().enumerate().map(move |(k, e)| ((k / n, k % n), e))
    }

    pub fn map<F, U>(&self, mut f: F) -> Matrix<U>
    where
        F: FnMut(&E) -> U,
    {
        Matrix { n: self.n, data: self.data.iter().map(&mut f).collect() }
    }
}

impl<E: Clone> Matrix<E> {
    pub fn filled(n: usize, value: E) -> Self {
        Matrix { n, data: vec![value; n * n] }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.n, |i, j| self[(j, i)].clone())
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    pub fn set_row(&mut self, i: usize, row: &[E]) {
        self.data[i * self.n..(i + 1) * self.n].clone_from_slice(row);
    }
}

impl<E> Index<(usize, usize)> for Matrix<E> {
    type Output = E;

    fn index(&self, (i, j): (usize, usize)) -> &E {
        assert!(i < self.n && j < self.n, "index ({i}, {j}) out of range for n = {}", self.n);
        &self.data[i * self.n + j]
    }
}

impl<E> IndexMut<(usize, usize)> for Matrix<E> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut E {
        assert!(i < self.n && j < self.n, "index ({i}, {j}) out of range for n = {}", self.n);
        &mut self.data[i * self.n + j]
    }
}
