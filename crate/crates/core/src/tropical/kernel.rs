//! Shared min-plus kernels. Every Lax-Oleinik evaluation in the crate,
//! negative or positive, funnels through [`neg_kernel`].

use super::matrix::Matrix;
use super::scalar::{MinPlus, Scalar};

/// `out[x] = min_y u[y] (x) c(y, x)`, or `c(x, y)` when `reversed` (the cost
/// of the time-reversed instance). Ties keep the lowest index.
pub(crate) fn neg_kernel<E: MinPlus>(c: &Matrix<E>, reversed: bool, u: &[E]) -> Vec<E> {
    let n = c.n();
    debug_assert_eq!(u.len(), n);
    (0..n)
        .map(|x| {
            let mut best: Option<E> = None;
            for (y, uy) in u.iter().enumerate() {
                let edge = if reversed { &c[(x, y)] } else { &c[(y, x)] };
                let cand = uy.tropical_mul(edge);
                best = match best {
                    Some(b) if cand >= b => Some(b),
                    _ => Some(cand),
                };
            }
            best.expect("instances have at least one point")
        })
        .collect()
}

pub(crate) fn min_plus_product<E: MinPlus>(a: &Matrix<E>, b: &Matrix<E>) -> Matrix<E> {
    let n = a.n();
    Matrix::from_fn(n, |x, y| {
        let mut best: Option<E> = None;
        for z in 0..n {
            let cand = a[(x, z)].tropical_mul(&b[(z, y)]);
            best = match best {
                Some(b) if cand >= b => Some(b),
                _ => Some(cand),
            };
        }
        best.expect("instances have at least one point")
    })
}

pub(crate) fn negate<T: Scalar>(u: &[T]) -> Vec<T> {
    u.iter().map(|v| -v.clone()).collect()
}

pub(crate) fn shift<T: Scalar>(u: &[T], k: &T) -> Vec<T> {
    u.iter().map(|v| v.clone() + k.clone()).collect()
}

/// `T^- u` on a total cost.
pub(crate) fn t_neg<T: Scalar>(c: &Matrix<T>, u: &[T]) -> Vec<T> {
    neg_kernel(c, false, u)
}

/// `T^+ u = -T^-_{reversed}(-u)` on a total cost.
pub(crate) fn t_pos<T: Scalar>(c: &Matrix<T>, u: &[T]) -> Vec<T> {
    negate(&neg_kernel(c, true, &negate(u)))
}

/// `T^- u + alpha`.
pub(crate) fn t_neg_a<T: Scalar>(c: &Matrix<T>, u: &[T], alpha: &T) -> Vec<T> {
    shift(&t_neg(c, u), alpha)
}

/// `T^+ u - alpha`.
pub(crate) fn t_pos_a<T: Scalar>(c: &Matrix<T>, u: &[T], alpha: &T) -> Vec<T> {
    shift(&t_pos(c, u), &-alpha.clone())
}
