//! Calibrated chains, per-function Aubry sets and strict critical sub-solutions.
//!
//! For a dominated `u`, the pair `(x, y)` is *tight* when
//! `u(y) - u(x) = c(x, y) + alpha0` and *strict* otherwise.
//! `A_u = {x : u_-(x) = u(x) = u_+(x)}` and `A^_u` is the set of tight
//! pairs `(x, y)` with `u_-(x) = u(x)` and `u_+(y) = u(y)`.

use crate::barrier::{aubry, limit_neg, limit_pos, peierls_barrier, require_dominated};
use crate::critical::CriticalData;
use crate::error::{Result, WkamError};
use crate::potential::{mane_dense, phi_one_dense};
use crate::tropical::kernel::{t_neg_a, t_pos_a};
use crate::tropical::{CostInstance, Matrix, Scalar, Tol, ValueFunction};

/// A finite sequence of at least two point indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain(Vec<usize>);

impl Chain {
    pub fn new(points: Vec<usize>, n: usize) -> Result<Self> {
        if points.len() < 2 {
            return Err(WkamError::InvalidChain("a chain needs at least two points".into()));
        }
        if let Some(&p) = points.iter().find(|&&p| p >= n) {
            return Err(WkamError::InvalidChain(format!("point {p} out of range (n = {n})")));
        }
        Ok(Chain(points))
    }

    pub fn points(&self) -> &[usize] {
        &self.0
    }
}

/// `u(x_n) = u(x_0) + sum c(x_i, x_{i+1}) + n alpha0`.
pub fn is_calibrated<T: Scalar>(
    inst: &CostInstance<T>,
    crit: &CriticalData<T>,
    u: &ValueFunction<T>,
    chain: &Chain,
) -> Result<bool> {
    let v = require_dominated(inst, crit, u)?;
    let c = inst.dense("is_calibrated")?;
    let p = chain.points();
    if let Some(&bad) = p.iter().find(|&&x| x >= inst.n()) {
        return Err(WkamError::InvalidChain(format!("point {bad} out of range")));
    }
    let mut total = v[p[0]].clone();
    for w in p.windows(2) {
        total = total + c[(w[0], w[1])].clone() + crit.alpha0.clone();
    }
    Ok(inst.walk_tol().eq(&v[p[p.len() - 1]], &total))
}

struct Profile<T> {
    u: Vec<T>,
    minus: Vec<T>,
    plus: Vec<T>,
    iterations: usize,
}

fn profile<T: Scalar>(inst: &CostInstance<T>, crit: &CriticalData<T>, u: &ValueFunction<T>) -> Result<Profile<T>> {
    let v = require_dominated(inst, crit, u)?;
    let c = inst.dense("aubry_of")?;
    let tol = inst.walk_tol();
    let (minus, k1) = limit_neg(c, &v, &crit.alpha0, tol)?;
    let (plus, k2) = limit_pos(c, &v, &crit.alpha0, tol)?;
    Ok(Profile { u: v, minus, plus, iterations: k1.max(k2) })
}

fn vertices_of<T: Scalar>(p: &Profile<T>, tol: Tol) -> Vec<usize> {
    (0..p.u.len()).filter(|&x| tol.eq(&p.minus[x], &p.u[x]) && tol.eq(&p.plus[x], &p.u[x])).collect()
}

fn edges_of<T: Scalar>(c: &Matrix<T>, alpha0: &T, p: &Profile<T>, tol: Tol) -> Vec<(usize, usize)> {
    let n = p.u.len();
    let mut out = Vec::new();
    for x in 0..n {
        if !tol.eq(&p.minus[x], &p.u[x]) {
            continue;
        }
        for y in 0..n {
            if tol.eq(&p.plus[y], &p.u[y]) && is_tight(c, alpha0, &p.u, x, y, tol) {
                out.push((x, y));
            }
        }
    }
    out
}

fn is_tight<T: Scalar>(c: &Matrix<T>, alpha0: &T, u: &[T], x: usize, y: usize, tol: Tol) -> bool {
    tol.eq(&(u[y].clone() - u[x].clone()), &(c[(x, y)].clone() + alpha0.clone()))
}

/// `A_u = {x : u_-(x) = u(x) = u_+(x)}`.
pub fn aubry_of<T: Scalar>(inst: &CostInstance<T>, crit: &CriticalData<T>, u: &ValueFunction<T>) -> Result<Vec<usize>> {
    let p = profile(inst, crit, u)?;
    Ok(vertices_of(&p, inst.walk_tol()))
}

/// `A^_u`: tight pairs `(x, y)` with `u_-(x) = u(x)` and `u_+(y) = u(y)`.
pub fn edge_aubry_of<T: Scalar>(
    inst: &CostInstance<T>,
    crit: &CriticalData<T>,
    u: &ValueFunction<T>,
) -> Result<Vec<(usize, usize)>> {
    let p = profile(inst, crit, u)?;
    Ok(edges_of(inst.dense("edge_aubry_of")?, &crit.alpha0, &p, inst.walk_tol()))
}

/// Pairs where `u(y) - u(x) < c(x, y) + alpha0`.
pub fn strict_pairs<T: Scalar>(
    inst: &CostInstance<T>,
    crit: &CriticalData<T>,
    u: &ValueFunction<T>,
) -> Result<Vec<(usize, usize)>> {
    let v = require_dominated(inst, crit, u)?;
    let c = inst.dense("strict_pairs")?;
    let tol = inst.walk_tol();
    let n = inst.n();
    Ok((0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| !is_tight(c, &crit.alpha0, &v, x, y, tol))
        .collect())
}

/// Uniform average of `T^-^n u + n alpha0` (`n = 0..=N`) and
/// `T^+^n u - n alpha0` (`n = 1..=N`), `N` the larger stabilization index of
/// `u_-` and `u_+`. Strict off `A^_u`, equal to `u` on `A_u`.
pub fn strict_subsolution<T: Scalar>(
    inst: &CostInstance<T>,
    crit: &CriticalData<T>,
    u: &ValueFunction<T>,
) -> Result<ValueFunction<T>> {
    let p = profile(inst, crit, u)?;
    let c = inst.dense("strict_subsolution")?;
    let big_n = p.iterations;
    let mut sum = p.u.clone();
    let mut v = p.u.clone();
    let mut w = p.u.clone();
    for _ in 0..big_n {
        v = t_neg_a(c, &v, &crit.alpha0);
        w = t_pos_a(c, &w, &crit.alpha0);
        for ((s, a), b) in sum.iter_mut().zip(&v).zip(&w) {
            *s = s.clone() + a.clone() + b.clone();
        }
    }
    let weight = T::from_ratio(1, 2 * big_n as i64 + 1);
    let values = sum.into_iter().map(|s| s * weight.clone()).collect();
    Ok(ValueFunction::from_finite(values, format!("strict({})", u.tag)))
}

/// Normalized average `(1/n) sum_x (phi_x - phi_x(0))`, whose own Aubry sets
/// coincide with the global ones.
pub fn aubry_generic_subsolution<T: Scalar>(inst: &CostInstance<T>, crit: &CriticalData<T>) -> Result<ValueFunction<T>> {
    let phi = mane_dense(&phi_one_dense(inst, crit)?);
    let n = inst.n();
    let weight = T::from_ratio(1, n as i64);
    let values = (0..n)
        .map(|y| {
            let total = (0..n).map(|x| phi[(x, y)].clone() - phi[(x, 0)].clone()).fold(T::zero(), |a, b| a + b);
            total * weight.clone()
        })
        .collect();
    Ok(ValueFunction::from_finite(values, "u*"))
}

/// A critical sub-solution strict at every pair outside the global `A^`.
///
/// Fails if the generic sub-solution does not realize the global Aubry sets.
pub fn max_strict_subsolution<T: Scalar>(inst: &CostInstance<T>, crit: &CriticalData<T>) -> Result<ValueFunction<T>> {
    let star = aubry_generic_subsolution(inst, crit)?;
    let bar = peierls_barrier(inst, crit)?;
    let global = aubry(inst, crit, &bar)?;
    let p = profile(inst, crit, &star)?;
    let tol = inst.walk_tol();
    if vertices_of(&p, tol) != global.vertices {
        return Err(WkamError::ConstructionFailed("A_u* differs from the projected Aubry set".into()));
    }
    if edges_of(inst.dense("max_strict_subsolution")?, &crit.alpha0, &p, tol) != global.edges {
        return Err(WkamError::ConstructionFailed("A^_u* differs from the edge Aubry set".into()));
    }
    let mut out = strict_subsolution(inst, crit, &star)?;
    out.tag = "u1".into();
    Ok(out)
}
