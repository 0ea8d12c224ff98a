//! The Mane potential `phi`, the family `phi_n` and the jump functions.
//!
//! With reduced weights `w = c + alpha0` (no negative cycles):
//!
//! * `phi_1(x, y)` is the cheapest `w`-walk from `x` to `y` with at least one step,
//! * `phi` agrees with `phi_1` off the diagonal and vanishes on it,
//! * `phi_{n+1}(x, .) = T^- phi_n(x, .) + alpha0`,
//! * `F(x) = phi_1(x, x)` and `f(x) = T^+ phi^x(x) - alpha0`.

use std::fmt;

use crate::critical::CriticalData;
use crate::error::{Result, WkamError};
use crate::tropical::kernel::{t_neg, t_neg_a, t_pos_a};
use crate::tropical::{CostInstance, Ext, Matrix, Scalar, Tol, ValueFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PotentialKind {
    Phi,
    PhiN(usize),
    CostPower(usize),
    Barrier,
}

impl fmt::Display for PotentialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PotentialKind::Phi => f.write_str("phi"),
            PotentialKind::PhiN(n) => write!(f, "phi_{n}"),
            PotentialKind::CostPower(n) => write!(f, "c_{n}"),
            PotentialKind::Barrier => f.write_str("barrier"),
        }
    }
}

/// A matrix-valued potential with its provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct PotentialTable<T> {
    pub entries: Matrix<Ext<T>>,
    pub kind: PotentialKind,
    pub alpha0: Option<T>,
}

impl<T: Scalar> PotentialTable<T> {
    pub(crate) fn from_dense(m: &Matrix<T>, kind: PotentialKind, alpha0: &T) -> Self {
        PotentialTable { entries: m.map(|v| Ext::Fin(v.clone())), kind, alpha0: Some(alpha0.clone()) }
    }

    pub fn n(&self) -> usize {
        self.entries.n()
    }

    pub fn get(&self, x: usize, y: usize) -> &Ext<T> {
        &self.entries[(x, y)]
    }

    /// The entries as finite scalars; fails if any entry is `+inf`.
    pub fn dense(&self) -> Result<Matrix<T>> {
        let mut rows = Vec::with_capacity(self.n());
        for row in self.entries.rows() {
            rows.push(
                row.iter()
                    .map(|v| v.finite().cloned().ok_or(WkamError::GraphMode { op: "dense potential" }))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Matrix::from_rows(rows)
    }

    /// Row `x` as a value function (`phi_x`, `h_x`, ...).
    pub fn row_function(&self, x: usize) -> ValueFunction<T> {
        ValueFunction::new(self.entries.row(x).to_vec(), format!("{}[{x},.]", self.kind))
    }

    /// Minus column `x` as a value function (`phi^x`, `h^x`, ...).
    pub fn column_function(&self, x: usize) -> Result<ValueFunction<T>> {
        let values = self.entries.column(x).map(Ext::checked_neg).collect::<Result<Vec<_>>>()?;
        Ok(ValueFunction::new(values, format!("-{}[.,{x}]", self.kind)))
    }
}

/// Cheapest walks with at least one step under `w`, assuming no negative
/// cycles. Walks with more than `n` steps never help, so `n` relaxation
/// rounds suffice.
pub(crate) fn shortest_nonempty_walks<T: Scalar>(w: &Matrix<T>, tol: Tol) -> Matrix<T> {
    let n = w.n();
    let mut out = w.clone();
    for x in 0..n {
        let mut d = w.row(x).to_vec();
        for _ in 0..n {
            let relaxed = t_neg(w, &d);
            let mut changed = false;
            for (dy, ry) in d.iter_mut().zip(relaxed) {
                if tol.lt(&ry, dy) {
                    *dy = ry;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        out.set_row(x, &d);
    }
    out
}

pub(crate) fn phi_one_dense<T: Scalar>(inst: &CostInstance<T>, crit: &CriticalData<T>) -> Result<Matrix<T>> {
    let c = inst.dense("phi_1")?;
    let w = c.map(|v| v.clone() + crit.alpha0.clone());
    Ok(shortest_nonempty_walks(&w, inst.walk_tol()))
}

pub(crate) fn mane_dense<T: Scalar>(phi1: &Matrix<T>) -> Matrix<T> {
    Matrix::from_fn(phi1.n(), |x, y| if x == y { T::zero() } else { phi1[(x, y)].clone() })
}

/// `phi_1(x, y) = inf_{k >= 1} c_k(x, y) + k alpha0`.
pub fn phi_one<T: Scalar>(inst: &CostInstance<T>, crit: &CriticalData<T>) -> Result<PotentialTable<T>> {
    let m = phi_one_dense(inst, crit)?;
    Ok(PotentialTable::from_dense(&m, PotentialKind::PhiN(1), &crit.alpha0))
}

/// The Mane potential: `phi_1` off the diagonal, `0` on it.
pub fn mane_potential<T: Scalar>(inst: &CostInstance<T>, crit: &CriticalData<T>) -> Result<PotentialTable<T>> {
    let m = mane_dense(&phi_one_dense(inst, crit)?);
    Ok(PotentialTable::from_dense(&m, PotentialKind::Phi, &crit.alpha0))
}

pub(crate) fn phi_n_dense<T: Scalar>(c: &Matrix<T>, phi1: &Matrix<T>, alpha0: &T, n: usize) -> Matrix<T> {
    let mut m = phi1.clone();
    for _ in 1..n {
        let rows: Vec<Vec<T>> = m.rows().map(|r| t_neg_a(c, r, alpha0)).collect();
        m = Matrix::from_rows(rows).expect("square");
    }
    m
}

/// `phi_n(x, y) = inf_{k >= n} c_k(x, y) + k alpha0`, via `phi_{n+1,x} = T^- phi_{n,x} + alpha0`.
pub fn phi_n<T: Scalar>(inst: &CostInstance<T>, crit: &CriticalData<T>, n: usize) -> Result<PotentialTable<T>> {
    if n == 0 {
        return Err(WkamError::ZeroPower);
    }
    let c = inst.dense("phi_n")?;
    let m = phi_n_dense(c, &phi_one_dense(inst, crit)?, &crit.alpha0, n);
    Ok(PotentialTable::from_dense(&m, PotentialKind::PhiN(n), &crit.alpha0))
}

/// `F(x) = T^- phi_x(x) + alpha0`, which equals `phi_1(x, x)`.
#[allow(non_snake_case)]
pub fn jump_F<T: Scalar>(inst: &CostInstance<T>, crit: &CriticalData<T>) -> Result<ValueFunction<T>> {
    let c = inst.dense("jump_F")?;
    let phi = mane_dense(&phi_one_dense(inst, crit)?);
    let values = (0..inst.n()).map(|x| t_neg_a(c, phi.row(x), &crit.alpha0)[x].clone()).collect();
    Ok(ValueFunction::from_finite(values, "F"))
}

/// `f(x) = T^+ phi^x(x) - alpha0` with `phi^x = -phi(., x)`.
pub fn jump_f<T: Scalar>(inst: &CostInstance<T>, crit: &CriticalData<T>) -> Result<ValueFunction<T>> {
    let c = inst.dense("jump_f")?;
    let phi = mane_dense(&phi_one_dense(inst, crit)?);
    let values = (0..inst.n())
        .map(|x| {
            let col: Vec<T> = phi.column(x).map(|v| -v.clone()).collect();
            t_pos_a(c, &col, &crit.alpha0)[x].clone()
        })
        .collect();
    Ok(ValueFunction::from_finite(values, "f"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::critical::critical_value;
    use crate::tropical::{rat, reverse_cost, Rational};

    fn inst(rows: Vec<Vec<i64>>) -> CostInstance<Rational> {
        CostInstance::from_rows(rows.into_iter().map(|r| r.into_iter().map(|v| rat(v, 1)).collect()).collect())
            .unwrap()
    }

    fn t2() -> CostInstance<Rational> {
        inst(vec![vec![2, 0], vec![1, 3]])
    }

    fn t3() -> CostInstance<Rational> {
        inst(vec![vec![1, 0, 9], vec![0, 9, 9], vec![9, 9, 9]])
    }

    fn fin(v: Rational) -> Ext<Rational> {
        Ext::Fin(v)
    }

    #[test]
    fn constant_cost_potentials_vanish() {
        let k = inst(vec![vec![4; 3]; 3]);
        let crit = critical_value(&k).unwrap();
        let phi = mane_potential(&k, &crit).unwrap();
        assert!(phi.entries.iter().all(|(_, v)| *v == Ext::zero()));
        for n in 1..4 {
            assert!(phi_n(&k, &crit, n).unwrap().entries.iter().all(|(_, v)| *v == Ext::zero()));
        }
        assert_eq!(jump_F(&k, &crit).unwrap().to_finite().unwrap(), vec![rat(0, 1); 3]);
        assert_eq!(jump_f(&k, &crit).unwrap().to_finite().unwrap(), vec![rat(0, 1); 3]);
    }

    #[test]
    fn two_point_potential() {
        let t = t2();
        let crit = critical_value(&t).unwrap();
        let phi = mane_potential(&t, &crit).unwrap();
        assert_eq!(phi.get(0, 1), &fin(rat(-1, 2)));
        assert_eq!(phi.get(1, 0), &fin(rat(1, 2)));
        assert_eq!(phi.get(0, 0), &fin(rat(0, 1)));
        let p1 = phi_one(&t, &crit).unwrap();
        assert_eq!(p1.get(0, 0), &fin(rat(0, 1)));
        assert_eq!(p1.get(1, 1), &fin(rat(0, 1)));
        assert_eq!(jump_F(&t, &crit).unwrap().to_finite().unwrap(), vec![rat(0, 1); 2]);
        assert_eq!(jump_f(&t, &crit).unwrap().to_finite().unwrap(), vec![rat(0, 1); 2]);
    }

    #[test]
    fn three_point_jump_positive_off_aubry() {
        let t = t3();
        let crit = critical_value(&t).unwrap();
        assert_eq!(crit.alpha0, rat(0, 1));
        let f_big = jump_F(&t, &crit).unwrap().to_finite().unwrap();
        assert_eq!(f_big[0], rat(0, 1));
        assert_eq!(f_big[1], rat(0, 1));
        assert!(f_big[2] > rat(0, 1));
        let p1 = phi_one(&t, &crit).unwrap();
        for (x, v) in f_big.iter().enumerate() {
            assert_eq!(p1.get(x, x), &fin(v.clone()));
        }
        let f_small = jump_f(&t, &crit).unwrap().to_finite().unwrap();
        for x in 0..3 {
            assert_eq!(f_small[x], -f_big[x].clone());
        }
    }

    #[test]
    fn jump_f_is_reversed_jump_big_f() {
        let t = inst(vec![vec![3, -1, 4], vec![1, 5, -9], vec![2, 6, 5]]);
        let crit = critical_value(&t).unwrap();
        let r = reverse_cost(&t).unwrap();
        let rcrit = critical_value(&r).unwrap();
        let f = jump_f(&t, &crit).unwrap().to_finite().unwrap();
        let big = jump_F(&r, &rcrit).unwrap().to_finite().unwrap();
        for x in 0..3 {
            assert_eq!(f[x], -big[x].clone());
        }
    }

    #[test]
    fn phi_n_is_nondecreasing_and_rejects_zero() {
        let t = t3();
        let crit = critical_value(&t).unwrap();
        let mut prev = phi_n(&t, &crit, 1).unwrap();
        for n in 2..6 {
            let next = phi_n(&t, &crit, n).unwrap();
            for ((_, a), (_, b)) in prev.entries.iter().zip(next.entries.iter()) {
                assert!(a <= b);
            }
            prev = next;
        }
        assert!(matches!(phi_n(&t, &crit, 0), Err(WkamError::ZeroPower)));
    }

    #[test]
    fn graph_mode_rejected() {
        let g = CostInstance::<Rational>::new(
            Matrix::from_rows(vec![vec![fin(rat(0, 1)), Ext::Inf], vec![Ext::Inf, fin(rat(0, 1))]]).unwrap(),
        )
        .unwrap();
        let crit = critical_value(&g).unwrap();
        assert!(matches!(mane_potential(&g, &crit), Err(WkamError::GraphMode { .. })));
    }
}
