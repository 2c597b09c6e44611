use crate::scalar::{sum, Scalar};

pub(crate) type Rows<T> = Vec<Vec<T>>;

/// Row vector times square matrix.
pub(crate) fn vec_mat<T: Scalar>(v: &[T], m: &[Vec<T>]) -> Vec<T> {
    let n = m.first().map_or(0, Vec::len);
    (0..n)
        .map(|j| sum(v.iter().zip(m).map(|(vi, row)| vi.clone() * row[j].clone())))
        .collect()
}

pub(crate) fn mat_mul<T: Scalar>(a: &[Vec<T>], b: &[Vec<T>]) -> Rows<T> {
    a.iter().map(|row| vec_mat(row, b)).collect()
}

pub(crate) fn identity<T: Scalar>(n: usize) -> Rows<T> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect()
}

pub(crate) fn uniform_row<T: Scalar>(n: usize) -> Vec<T> {
    let share = T::one() / T::from_int(n as i64);
    vec![share; n]
}

/// Square, non-negative, each row summing to one within tolerance.
pub(crate) fn is_row_stochastic<T: Scalar>(rows: &[Vec<T>]) -> bool {
    let n = rows.len();
    let tol = T::normalization_tolerance();
    rows.iter().all(|row| {
        row.len() == n
            && row.iter().all(|x| *x >= T::zero())
            && sum(row.iter().cloned()).approx_eq(&T::one(), &tol)
    })
}
