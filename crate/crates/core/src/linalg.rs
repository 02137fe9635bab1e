//! Small dense vector helpers. Dimensions here never exceed a handful, so
//! everything works on plain slices and `Vec`s.

use crate::Scalar;

#[inline]
pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

#[inline]
pub fn norm<T: Scalar>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

#[inline]
pub fn sub<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

#[inline]
pub fn add<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| x + y).collect()
}

#[inline]
pub fn scale<T: Scalar>(a: &[T], s: T) -> Vec<T> {
    a.iter().map(|&x| x * s).collect()
}

/// `a + s * b`
#[inline]
pub fn axpy<T: Scalar>(a: &[T], s: T, b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| x + s * y).collect()
}

#[inline]
pub fn dist<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (x - y) * (x - y))
        .sum::<T>()
        .sqrt()
}

/// Normalizes `a`, returning `None` for vectors shorter than `min_norm`.
pub fn normalized<T: Scalar>(a: &[T], min_norm: T) -> Option<Vec<T>> {
    let n = norm(a);
    (n > min_norm).then(|| scale(a, T::one() / n))
}

/// Removes the component of `a` along the unit vector `u`.
pub fn reject<T: Scalar>(a: &[T], u: &[T]) -> Vec<T> {
    axpy(a, -dot(a, u), u)
}

/// Solves `m x = rhs` for a square row-major matrix by Gaussian elimination
/// with partial pivoting. Returns `None` when a pivot falls below
/// `rel_tol` times the largest absolute entry.
pub fn solve<T: Scalar>(m: &[Vec<T>], rhs: &[T], rel_tol: T) -> Option<Vec<T>> {
    let n = rhs.len();
    debug_assert!(m.len() == n && m.iter().all(|r| r.len() == n));
    if n == 0 {
        return Some(Vec::new());
    }
    let mut a: Vec<Vec<T>> = m
        .iter()
        .zip(rhs)
        .map(|(row, &b)| {
            let mut r = row.clone();
            r.push(b);
            r
        })
        .collect();
    let scale_ref = m
        .iter()
        .flat_map(|r| r.iter())
        .fold(T::zero(), |acc, &x| acc.max(x.abs()));
    if scale_ref == T::zero() {
        return None;
    }
    let floor = rel_tol * scale_ref;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
            .unwrap();
        if a[pivot][col].abs() <= floor {
            return None;
        }
        a.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            if f != T::zero() {
                for k in col..=n {
                    let v = a[col][k];
                    a[row][k] -= f * v;
                }
            }
        }
    }
    let mut x = vec![T::zero(); n];
    for row in (0..n).rev() {
        let mut s = a[row][n];
        for k in row + 1..n {
            s -= a[row][k] * x[k];
        }
        x[row] = s / a[row][row];
    }
    Some(x)
}

/// Gram matrix of a list of vectors.
pub fn gram<T: Scalar>(vs: &[Vec<T>]) -> Vec<Vec<T>> {
    vs.iter()
        .map(|a| vs.iter().map(|b| dot(a, b)).collect())
        .collect()
}

/// Orthonormal basis of the orthogonal complement of `span(vs)` in `R^dim`,
/// by Gram-Schmidt over `vs` followed by the standard basis.
pub fn complement_basis<T: Scalar>(vs: &[Vec<T>], dim: usize) -> Vec<Vec<T>> {
    let thresh = T::lit(1e-9);
    let mut span: Vec<Vec<T>> = Vec::new();
    for v in vs {
        let mut w = v.clone();
        for u in &span {
            w = reject(&w, u);
        }
        if let Some(u) = normalized(&w, thresh * norm(v).max(T::one())) {
            span.push(u);
        }
    }
    let fixed = span.len();
    for i in 0..dim {
        if span.len() == dim {
            break;
        }
        let mut w = vec![T::zero(); dim];
        w[i] = T::one();
        // two passes of Gram-Schmidt for stability
        for _ in 0..2 {
            for u in &span {
                w = reject(&w, u);
            }
        }
        if let Some(u) = normalized(&w, T::lit(1e-6)) {
            span.push(u);
        }
    }
    span.split_off(fixed)
}
