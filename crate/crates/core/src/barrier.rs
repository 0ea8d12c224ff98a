//! Peierls barrier, weak KAM solutions, Aubry sets and the `u_-`/`u_+` calculus.

use crate::critical::{first_violation, CriticalData};
use crate::error::{Result, WkamError};
use crate::potential::{
    jump_F, phi_one_dense, PotentialKind, PotentialTable,
};
use crate::tropical::kernel::{min_plus_product, t_neg, t_neg_a, t_pos, t_pos_a};
use crate::tropical::{CostInstance, Matrix, Scalar, Tol, ValueFunction};

/// Iteration cap in exact mode, where termination is guaranteed but not bounded a priori.
pub const EXACT_ITERATION_CAP: usize = 100_000;

/// Iteration cap in float mode: `4 n^2`.
pub fn float_iteration_cap(n: usize) -> usize {
    4 * n * n
}

#[derive(Clone, Debug, PartialEq)]
pub struct BarrierData<T> {
    pub h: PotentialTable<T>,
    pub finite: bool,
    /// Largest number of value-iteration steps any row needed.
    pub iterations_to_fix: usize,
}

impl<T: Scalar> BarrierData<T> {
    pub fn dense(&self) -> Result<Matrix<T>> {
        self.h.dense()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AubryData<T> {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub jumps: ValueFunction<T>,
}

impl<T> AubryData<T> {
    pub fn contains(&self, x: usize) -> bool {
        self.vertices.binary_search(&x).is_ok()
    }

    pub fn contains_edge(&self, x: usize, y: usize) -> bool {
        self.edges.binary_search(&(x, y)).is_ok()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `u = T^- u + alpha0`
    Negative,
    /// `u = T^+ u - alpha0`
    Positive,
}

/// Repeats `step` from `start` until the value stops changing.
///
/// Exact backends stop on equality; float backends stop once the sup-norm
/// change falls below the tolerance. Returns the fixed point and the number
/// of steps that changed the value.
pub(crate) fn iterate_to_fix<T: Scalar>(
    start: Vec<T>,
    tol: Tol,
    mut step: impl FnMut(&[T]) -> Vec<T>,
) -> Result<(Vec<T>, usize)> {
    let cap = if T::EXACT { EXACT_ITERATION_CAP } else { float_iteration_cap(start.len()) };
    let mut v = start;
    for k in 0..=cap {
        let next = step(&v);
        if tol.eq_slices(&next, &v) {
            return Ok((v, k));
        }
        v = next;
    }
    Err(WkamError::NonConvergence(cap))
}

/// `h(x, y) = liminf_n c_n(x, y) + n alpha0`, row by row as the fixed point
/// of `v -> T^- v + alpha0` started at `phi_1(x, .)`.
pub fn peierls_barrier<T: Scalar>(inst: &CostInstance<T>, crit: &CriticalData<T>) -> Result<BarrierData<T>> {
    let c = inst.dense("peierls_barrier")?;
    let phi1 = phi_one_dense(inst, crit)?;
    let tol = inst.walk_tol();
    let mut rows = Vec::with_capacity(inst.n());
    let mut iterations = 0;
    for x in 0..inst.n() {
        let (row, k) = iterate_to_fix(phi1.row(x).to_vec(), tol, |v| t_neg_a(c, v, &crit.alpha0))?;
        iterations = iterations.max(k);
        rows.push(row);
    }
    let h = Matrix::from_rows(rows)?;
    if T::EXACT {
        let vertices: Vec<usize> = (0..inst.n()).filter(|&a| h[(a, a)] == T::zero()).collect();
        if let Some(expected) = closed_form_barrier(&phi1, &vertices) {
            if expected != h {
                return Err(WkamError::ConstructionFailed(
                    "barrier disagrees with its closed form over the Aubry set".into(),
                ));
            }
        }
    }
    Ok(BarrierData {
        h: PotentialTable::from_dense(&h, PotentialKind::Barrier, &crit.alpha0),
        finite: true,
        iterations_to_fix: iterations,
    })
}

/// `min_{a in aubry} phi_1(x, a) + phi_1(a, y)`; `None` if `aubry` is empty.
pub fn closed_form_barrier<T: Scalar>(phi1: &Matrix<T>, aubry: &[usize]) -> Option<Matrix<T>> {
    if aubry.is_empty() {
        return None;
    }
    Some(Matrix::from_fn(phi1.n(), |x, y| {
        aubry
            .iter()
            .map(|&a| phi1[(x, a)].clone() + phi1[(a, y)].clone())
            .reduce(T::min_of)
            .expect("nonempty")
    }))
}

/// Projected Aubry set `{x : h(x, x) = 0}` and edge set
/// `{(x, y) : c(x, y) + alpha0 + h(y, x) = 0}`.
pub fn aubry<T: Scalar>(inst: &CostInstance<T>, crit: &CriticalData<T>, bar: &BarrierData<T>) -> Result<AubryData<T>> {
    let c = inst.dense("aubry")?;
    let h = bar.dense()?;
    let tol = inst.walk_tol();
    let vertices: Vec<usize> = (0..inst.n()).filter(|&x| tol.is_zero(&h[(x, x)])).collect();
    let mut edges = Vec::new();
    for x in 0..inst.n() {
        for y in 0..inst.n() {
            let s = c[(x, y)].clone() + crit.alpha0.clone() + h[(y, x)].clone();
            if tol.is_zero(&s) {
                edges.push((x, y));
            }
        }
    }
    Ok(AubryData { vertices, edges, jumps: jump_F(inst, crit)? })
}

/// `h_x = h(x, .)`, a negative weak KAM solution.
pub fn weak_kam_neg<T: Scalar>(bar: &BarrierData<T>, x: usize) -> ValueFunction<T> {
    let mut v = bar.h.row_function(x);
    v.tag = format!("h_{x}");
    v
}

/// `h^x = -h(., x)`, a positive weak KAM solution.
pub fn weak_kam_pos<T: Scalar>(bar: &BarrierData<T>, x: usize) -> Result<ValueFunction<T>> {
    let mut v = bar.h.column_function(x)?;
    v.tag = format!("h^{x}");
    Ok(v)
}

/// Points where the fixed-point equation of the given side fails.
pub fn weak_kam_defects<T: Scalar>(
    inst: &CostInstance<T>,
    crit: &CriticalData<T>,
    u: &ValueFunction<T>,
    side: Side,
) -> Result<Vec<usize>> {
    let c = inst.dense("is_weak_kam")?;
    inst.check_len(u.len())?;
    let u = u.to_finite()?;
    let image = match side {
        Side::Negative => t_neg_a(c, &u, &crit.alpha0),
        Side::Positive => t_pos_a(c, &u, &crit.alpha0),
    };
    let tol = inst.walk_tol();
    Ok((0..u.len()).filter(|&x| !tol.eq(&image[x], &u[x])).collect())
}

pub fn is_weak_kam<T: Scalar>(
    inst: &CostInstance<T>,
    crit: &CriticalData<T>,
    u: &ValueFunction<T>,
    side: Side,
) -> Result<bool> {
    Ok(weak_kam_defects(inst, crit, u, side)?.is_empty())
}

/// A limit function together with the number of steps needed to reach it.
#[derive(Clone, Debug, PartialEq)]
pub struct Limit<T> {
    pub value: ValueFunction<T>,
    pub iterations: usize,
}

pub(crate) fn require_dominated<T: Scalar>(
    inst: &CostInstance<T>,
    crit: &CriticalData<T>,
    u: &ValueFunction<T>,
) -> Result<Vec<T>> {
    inst.check_len(u.len())?;
    let v = u.to_finite()?;
    if let Some((x, y)) = first_violation(inst.cost(), &v, &crit.alpha0, inst.tol()) {
        return Err(WkamError::NotDominated(x, y));
    }
    Ok(v)
}

pub(crate) fn limit_neg<T: Scalar>(c: &Matrix<T>, u: &[T], alpha0: &T, tol: Tol) -> Result<(Vec<T>, usize)> {
    iterate_to_fix(u.to_vec(), tol, |v| t_neg_a(c, v, alpha0))
}

pub(crate) fn limit_pos<T: Scalar>(c: &Matrix<T>, u: &[T], alpha0: &T, tol: Tol) -> Result<(Vec<T>, usize)> {
    iterate_to_fix(u.to_vec(), tol, |v| t_pos_a(c, v, alpha0))
}

/// `u_- = lim T^-^n u + n alpha0` for a dominated `u`.
pub fn u_minus<T: Scalar>(inst: &CostInstance<T>, crit: &CriticalData<T>, u: &ValueFunction<T>) -> Result<Limit<T>> {
    let v = require_dominated(inst, crit, u)?;
    let (value, iterations) = limit_neg(inst.dense("u_minus")?, &v, &crit.alpha0, inst.walk_tol())?;
    Ok(Limit { value: ValueFunction::from_finite(value, format!("({})_-", u.tag)), iterations })
}

/// `u_+ = lim T^+^n u - n alpha0` for a dominated `u`.
pub fn u_plus<T: Scalar>(inst: &CostInstance<T>, crit: &CriticalData<T>, u: &ValueFunction<T>) -> Result<Limit<T>> {
    let v = require_dominated(inst, crit, u)?;
    let (value, iterations) = limit_pos(inst.dense("u_plus")?, &v, &crit.alpha0, inst.walk_tol())?;
    Ok(Limit { value: ValueFunction::from_finite(value, format!("({})_+", u.tag)), iterations })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConjugateReport<T> {
    pub u_m: Vec<T>,
    pub u_mp: Vec<T>,
    pub u_mpm: Vec<T>,
    pub u_mpmp: Vec<T>,
    /// `u_-+ = u_-+-+`
    pub idempotent: bool,
    /// `T^-^n T^+^n u >= u` for `n = 1..=3`
    pub neg_pos_above: bool,
    /// `T^+^n T^-^n u <= u` for `n = 1..=3`
    pub pos_neg_below: bool,
    /// `(T^- T^+)^2 u = T^- T^+ u` and `(T^+ T^-)^2 u = T^+ T^- u`
    pub compositions_idempotent: bool,
}

impl<T> ConjugateReport<T> {
    pub fn holds(&self) -> bool {
        self.idempotent && self.neg_pos_above && self.pos_neg_below && self.compositions_idempotent
    }
}

pub fn conjugate_check<T: Scalar>(
    inst: &CostInstance<T>,
    crit: &CriticalData<T>,
    u: &ValueFunction<T>,
) -> Result<ConjugateReport<T>> {
    let v = require_dominated(inst, crit, u)?;
    let c = inst.dense("conjugate_check")?;
    let tol = inst.walk_tol();
    let a = &crit.alpha0;
    let (u_m, _) = limit_neg(c, &v, a, tol)?;
    let (u_mp, _) = limit_pos(c, &u_m, a, tol)?;
    let (u_mpm, _) = limit_neg(c, &u_mp, a, tol)?;
    let (u_mpmp, _) = limit_pos(c, &u_mpm, a, tol)?;
    let idempotent = tol.eq_slices(&u_mp, &u_mpmp);

    let mut neg_pos_above = true;
    let mut pos_neg_below = true;
    for n in 1..=3 {
        let mut up = v.clone();
        let mut down = v.clone();
        for _ in 0..n {
            up = t_pos(c, &up);
            down = t_neg(c, &down);
        }
        for _ in 0..n {
            up = t_neg(c, &up);
            down = t_pos(c, &down);
        }
        neg_pos_above &= tol.le_slices(&v, &up);
        pos_neg_below &= tol.le_slices(&down, &v);
    }
    let np = |w: &[T]| t_neg(c, &t_pos(c, w));
    let pn = |w: &[T]| t_pos(c, &t_neg(c, w));
    let compositions_idempotent =
        tol.eq_slices(&np(&np(&v)), &np(&v)) && tol.eq_slices(&pn(&pn(&v)), &pn(&v));
    Ok(ConjugateReport { u_m, u_mp, u_mpm, u_mpmp, idempotent, neg_pos_above, pos_neg_below, compositions_idempotent })
}

/// Pointwise minimum of negative weak KAM solutions, which is again one.
pub fn inf_solutions<T: Scalar>(
    inst: &CostInstance<T>,
    crit: &CriticalData<T>,
    solutions: &[ValueFunction<T>],
) -> Result<ValueFunction<T>> {
    let first = solutions.first().ok_or(WkamError::EmptyList)?;
    for (i, s) in solutions.iter().enumerate() {
        if !is_weak_kam(inst, crit, s, Side::Negative)? {
            return Err(WkamError::NotASolution(i));
        }
    }
    let mut acc = first.to_finite()?;
    for s in &solutions[1..] {
        for (a, b) in acc.iter_mut().zip(s.to_finite()?) {
            if b < *a {
                *a = b;
            }
        }
    }
    let out = ValueFunction::from_finite(acc, "inf");
    if !is_weak_kam(inst, crit, &out, Side::Negative)? {
        return Err(WkamError::ConstructionFailed("infimum of solutions is not a solution".into()));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RepresentationReport<T> {
    /// `S(x, y) = max_{n, m <= N} T^-^n u(y) - T^+^m u(x) + (n + m) alpha0`.
    pub s: Matrix<T>,
    /// First pair with `S > h`, if any.
    pub violation: Option<(usize, usize)>,
}

impl<T> RepresentationReport<T> {
    pub fn bounded(&self) -> bool {
        self.violation.is_none()
    }
}

pub(crate) fn representation_matrix<T: Scalar>(c: &Matrix<T>, u: &[T], alpha0: &T, horizon: usize) -> Matrix<T> {
    let mut top = u.to_vec();
    let mut v = u.to_vec();
    for _ in 0..horizon {
        v = t_neg_a(c, &v, alpha0);
        for (t, x) in top.iter_mut().zip(&v) {
            if *x > *t {
                *t = x.clone();
            }
        }
    }
    let mut bottom = u.to_vec();
    let mut w = u.to_vec();
    for _ in 0..horizon {
        w = t_pos_a(c, &w, alpha0);
        for (b, x) in bottom.iter_mut().zip(&w) {
            if *x < *b {
                *b = x.clone();
            }
        }
    }
    Matrix::from_fn(u.len(), |x, y| top[y].clone() - bottom[x].clone())
}

/// Evaluates `S` for one dominated `u` and compares it with `h`.
pub fn representation_check<T: Scalar>(
    inst: &CostInstance<T>,
    crit: &CriticalData<T>,
    bar: &BarrierData<T>,
    u: &ValueFunction<T>,
    horizon: usize,
) -> Result<RepresentationReport<T>> {
    if horizon == 0 {
        return Err(WkamError::InvalidArgument("horizon must be at least 1".into()));
    }
    let v = require_dominated(inst, crit, u)?;
    let c = inst.dense("representation_check")?;
    let h = bar.dense()?;
    let s = representation_matrix(c, &v, &crit.alpha0, horizon);
    let tol = inst.walk_tol();
    let violation = s.iter().find(|((x, y), sv)| !tol.le(*sv, &h[(*x, *y)])).map(|(p, _)| p);
    Ok(RepresentationReport { s, violation })
}

/// For each `x`, whether `u = phi_1(x, .)` with horizon
/// `max(1, iterations_to_fix)` attains `S(x, .) = h(x, .)`.
pub fn representation_attainment<T: Scalar>(
    inst: &CostInstance<T>,
    crit: &CriticalData<T>,
    bar: &BarrierData<T>,
) -> Result<Vec<bool>> {
    let c = inst.dense("representation_attainment")?;
    let phi1 = phi_one_dense(inst, crit)?;
    let h = bar.dense()?;
    let horizon = bar.iterations_to_fix.max(1);
    let tol = inst.walk_tol();
    Ok((0..inst.n())
        .map(|x| {
            let s = representation_matrix(c, phi1.row(x), &crit.alpha0, horizon);
            tol.eq_slices(s.row(x), h.row(x))
        })
        .collect())
}

/// Both min-formulas `h(x, y) = min_z h(x, z) + c_n(z, y) + n alpha0` and
/// `h(x, y) = min_z c_n(x, z) + h(z, y) + n alpha0`.
pub fn min_formula_check<T: Scalar>(
    inst: &CostInstance<T>,
    crit: &CriticalData<T>,
    bar: &BarrierData<T>,
    n: usize,
) -> Result<bool> {
    if n == 0 {
        return Err(WkamError::ZeroPower);
    }
    let c = inst.dense("min_formula_check")?;
    let h = bar.dense()?;
    let mut cn = c.clone();
    for _ in 1..n {
        cn = min_plus_product(&cn, c);
    }
    let shift = T::from_int(n as i64) * crit.alpha0.clone();
    let cn = cn.map(|v| v.clone() + shift.clone());
    let tol = inst.walk_tol();
    let right = min_plus_product(&h, &cn);
    let left = min_plus_product(&cn, &h);
    let ok = h.iter().all(|(p, v)| tol.eq(v, &right[p]) && tol.eq(v, &left[p]));
    Ok(ok)
}

/// `u_-` from the barrier: `min_{a in A} h_a + t_a`, `t_a = max_y u(y) - h(a, y)`,
/// i.e. the least negative solution above `u`.
pub fn u_minus_extremal<T: Scalar>(h: &Matrix<T>, aubry: &[usize], u: &[T]) -> Vec<T> {
    let n = u.len();
    (0..n)
        .map(|y| {
            aubry
                .iter()
                .map(|&a| {
                    let t = (0..n).map(|z| u[z].clone() - h[(a, z)].clone()).reduce(T::max_of).expect("n >= 1");
                    h[(a, y)].clone() + t
                })
                .reduce(T::min_of)
                .expect("Aubry set is nonempty")
        })
        .collect()
}

/// `u_+` from the barrier: `max_{a in A} -h(., a) + s_a`, `s_a = min_y u(y) + h(y, a)`.
pub fn u_plus_extremal<T: Scalar>(h: &Matrix<T>, aubry: &[usize], u: &[T]) -> Vec<T> {
    let n = u.len();
    (0..n)
        .map(|y| {
            aubry
                .iter()
                .map(|&a| {
                    let s = (0..n).map(|z| u[z].clone() + h[(z, a)].clone()).reduce(T::min_of).expect("n >= 1");
                    s - h[(y, a)].clone()
                })
                .reduce(T::max_of)
                .expect("Aubry set is nonempty")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::critical::critical_value;
    use crate::subsolution::aubry_of;
    use crate::tropical::{rat, Rational};

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

    fn vf(v: &[Rational]) -> ValueFunction<Rational> {
        ValueFunction::from_finite(v.to_vec(), "u")
    }

    fn solve(i: &CostInstance<Rational>) -> (CriticalData<Rational>, BarrierData<Rational>) {
        let crit = critical_value(i).unwrap();
        let bar = peierls_barrier(i, &crit).unwrap();
        (crit, bar)
    }

    #[test]
    fn constant_barrier_is_zero() {
        let k = inst(vec![vec![5; 3]; 3]);
        let (crit, bar) = solve(&k);
        assert!(bar.dense().unwrap().iter().all(|(_, v)| *v == rat(0, 1)));
        let a = aubry(&k, &crit, &bar).unwrap();
        assert_eq!(a.vertices, vec![0, 1, 2]);
        assert_eq!(a.edges.len(), 9);
    }

    #[test]
    fn two_point_barrier() {
        let t = t2();
        let (crit, bar) = solve(&t);
        let h = bar.dense().unwrap();
        assert_eq!(h.to_rows(), vec![vec![rat(0, 1), rat(-1, 2)], vec![rat(1, 2), rat(0, 1)]]);
        let a = aubry(&t, &crit, &bar).unwrap();
        assert_eq!(a.vertices, vec![0, 1]);
        assert_eq!(a.edges, vec![(0, 1), (1, 0)]);
        let ha = weak_kam_neg(&bar, 0);
        assert_eq!(ha.to_finite().unwrap(), vec![rat(0, 1), rat(-1, 2)]);
        assert!(is_weak_kam(&t, &crit, &ha, Side::Negative).unwrap());
        let hb_up = weak_kam_pos(&bar, 1).unwrap();
        assert!(is_weak_kam(&t, &crit, &hb_up, Side::Positive).unwrap());
    }

    #[test]
    fn three_point_barrier_and_aubry() {
        let t = t3();
        let (crit, bar) = solve(&t);
        let h = bar.dense().unwrap();
        assert!(h[(2, 2)] > rat(0, 1));
        let a = aubry(&t, &crit, &bar).unwrap();
        assert_eq!(a.vertices, vec![0, 1]);
        assert_eq!(a.edges, vec![(0, 1), (1, 0)]);
        // phi_c is not a solution, and fails only at c
        let phi = crate::potential::mane_potential(&t, &crit).unwrap();
        let defects = weak_kam_defects(&t, &crit, &phi.row_function(2), Side::Negative).unwrap();
        assert_eq!(defects, vec![2]);
        assert!(is_weak_kam(&t, &crit, &phi.row_function(0), Side::Negative).unwrap());
    }

    #[test]
    fn limits_of_solutions_are_themselves() {
        let t = t2();
        let (crit, _) = solve(&t);
        let u = vf(&[rat(0, 1), rat(-1, 2)]);
        let lim = u_minus(&t, &crit, &u).unwrap();
        assert_eq!(lim.value.to_finite().unwrap(), u.to_finite().unwrap());
        assert_eq!(lim.iterations, 0);
        let not_dom = vf(&[rat(0, 1), rat(5, 1)]);
        assert!(matches!(u_minus(&t, &crit, &not_dom), Err(WkamError::NotDominated(..))));
    }

    #[test]
    fn conjugates_on_three_points() {
        let t = t3();
        let (crit, _) = solve(&t);
        let u = match crate::critical::solve_subsolution(&t, &crit.alpha0).unwrap() {
            crate::critical::SubsolutionOutcome::Feasible(u) => u,
            _ => unreachable!(),
        };
        let rep = conjugate_check(&t, &crit, &u).unwrap();
        assert!(rep.holds(), "{rep:?}");
    }

    #[test]
    fn infimum_of_solutions() {
        let t = t2();
        let (crit, bar) = solve(&t);
        let ha = weak_kam_neg(&bar, 0);
        let hb = weak_kam_neg(&bar, 1);
        let m = inf_solutions(&t, &crit, &[ha.clone(), hb]).unwrap();
        assert!(is_weak_kam(&t, &crit, &m, Side::Negative).unwrap());
        assert_eq!(inf_solutions(&t, &crit, std::slice::from_ref(&ha)).unwrap().values, ha.values);
        let shifted = ValueFunction::from_finite(ha.to_finite().unwrap().into_iter().map(|v| v + rat(1, 1)).collect(), "s");
        assert_eq!(inf_solutions(&t, &crit, &[ha.clone(), shifted]).unwrap().values, ha.values);
        assert!(matches!(inf_solutions(&t, &crit, &[]), Err(WkamError::EmptyList)));
    }

    #[test]
    fn representation_on_two_points() {
        let t = t2();
        let (crit, bar) = solve(&t);
        let rep = representation_check(&t, &crit, &bar, &weak_kam_neg(&bar, 0), 4).unwrap();
        assert!(rep.bounded());
        assert_eq!(rep.s.row(0), bar.dense().unwrap().row(0));
        assert!(representation_attainment(&t, &crit, &bar).unwrap().iter().all(|&b| b));
    }

    #[test]
    fn min_formulas() {
        for (i, n) in [(t2(), 1), (t3(), 3), (inst(vec![vec![7; 2]; 2]), 1)] {
            let (crit, bar) = solve(&i);
            assert!(min_formula_check(&i, &crit, &bar, n).unwrap());
        }
    }

    #[test]
    fn extremal_formula_matches_iteration() {
        let t = t3();
        let (crit, bar) = solve(&t);
        let a = aubry(&t, &crit, &bar).unwrap();
        let h = bar.dense().unwrap();
        let u = vec![rat(-3, 1), rat(-3, 1), rat(-10, 1)];
        let lim = u_minus(&t, &crit, &vf(&u)).unwrap().value.to_finite().unwrap();
        assert_eq!(lim, u_minus_extremal(&h, &a.vertices, &u));
        let lim = u_plus(&t, &crit, &vf(&u)).unwrap().value.to_finite().unwrap();
        assert_eq!(lim, u_plus_extremal(&h, &a.vertices, &u));
        assert_eq!(aubry_of(&t, &crit, &weak_kam_neg(&bar, 0)).unwrap(), vec![0, 1]);
    }
}
