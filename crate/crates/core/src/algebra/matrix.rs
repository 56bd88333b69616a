use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ring::Ring;

/// Dense square matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R> {
    n: usize,
    data: Vec<R>,
}

impl<R> Matrix<R> {
    pub fn from_vec(n: usize, data: Vec<R>) -> Self {
        assert_eq!(data.len(), n * n, "matrix data must be n*n");
        Matrix { n, data }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let n = rows.len();
        let data: Vec<R> = rows.into_iter().flatten().collect();
        Self::from_vec(n, data)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn map<S>(&self, f: impl FnMut(&R) -> S) -> Matrix<S> {
        Matrix { n: self.n, data: self.data.iter().map(f).collect() }
    }

    pub(crate) fn into_rows(self) -> Vec<Vec<R>> {
        let n = self.n;
        let mut it = self.data.into_iter();
        (0..n).map(|_| it.by_ref().take(n).collect()).collect()
    }
}

/// Exact determinant of a matrix over any integral domain.
///
/// For rationals the numbers are first brought to a common integer scale, so
/// the elimination itself always runs fraction-free.
pub fn det_exact<R: Ring>(m: &Matrix<R>) -> R {
    R::determinant(m.clone())
}

/// Fraction-free (Bareiss) elimination. Every division is exact in the ring;
/// a singular matrix yields zero.
pub fn bareiss<R: Ring>(m: Matrix<R>) -> R {
    let n = m.size();
    if n == 0 {
        return R::one();
    }
    let mut a = m.into_rows();
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return R::zero(),
            }
        }
        let pivot = a[k][k].clone();
        for i in k + 1..n {
            let aik = a[i][k].clone();
            for j in k + 1..n {
                let num = a[i][j].clone() * pivot.clone() - aik.clone() * a[k][j].clone();
                a[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss division must be exact in an integral domain");
            }
            a[i][k] = R::zero();
        }
        prev = pivot;
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Integer Bareiss working on references; the generic version clones every operand.
pub(crate) fn bareiss_int(m: Matrix<BigInt>) -> BigInt {
    let n = m.size();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.into_rows();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in rest.iter_mut() {
            let aik = std::mem::take(&mut row[k]);
            for j in k + 1..n {
                let num = &row[j] * pivot - &aik * &pivot_row[j];
                row[j] = if prev.is_one() { num } else { num / &prev };
            }
        }
        prev = top[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat, Rational};
    use num_bigint::BigInt;

    fn cofactor<R: Ring>(m: &Matrix<R>) -> R {
        let n = m.size();
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut acc = R::zero();
        for j in 0..n {
            let minor = Matrix::from_fn(n - 1, |r, c| {
                let cc = if c < j { c } else { c + 1 };
                m.get(r + 1, cc).clone()
            });
            let term = m.get(0, j).clone() * cofactor(&minor);
            acc = if j % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    #[test]
    fn identity_has_unit_determinant() {
        let m = Matrix::from_fn(4, |i, j| if i == j { int(1) } else { int(0) });
        assert_eq!(det_exact(&m), int(1));
    }

    #[test]
    fn needs_pivot_swap() {
        let m = Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
        assert_eq!(det_exact(&m), int(-1));
        let m = Matrix::from_rows(vec![
            vec![int(0), int(2), int(1)],
            vec![int(0), int(1), int(3)],
            vec![int(4), int(0), int(1)],
        ]);
        assert_eq!(det_exact(&m), cofactor(&m));
    }

    #[test]
    fn singular_is_zero() {
        let m = Matrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(3, 2), int(1)],
        ]);
        assert_eq!(det_exact(&m), int(0));
        let z: Matrix<Rational> = Matrix::from_fn(3, |_, j| if j == 0 { int(0) } else { int(1) });
        assert_eq!(det_exact(&z), int(0));
    }

    #[test]
    fn integer_matches_cofactor() {
        let m = Matrix::from_fn(5, |i, j| BigInt::from(((i * 7 + j * 3) % 11) as i64 - 5));
        assert_eq!(bareiss(m.clone()), cofactor(&m));
        assert_eq!(bareiss_int(m.clone()), cofactor(&m));
    }
}
