//! Critical constant and domination.
//!
//! Summing `u(y) - u(x) <= c(x, y) + alpha` around a cycle shows that a
//! dominated function exists iff every cycle mean is at least `-alpha`. The
//! critical constant is therefore minus the minimum cycle mean, which Karp's
//! recurrence computes exactly.

use std::collections::VecDeque;

use crate::error::{Result, WkamError};
use crate::tropical::kernel::neg_kernel;
use crate::tropical::{CostInstance, Ext, Matrix, Scalar, Tol, ValueFunction};

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalData<T> {
    pub alpha0: T,
    /// Simple cycle (first point not repeated) whose mean cost is `-alpha0`.
    pub witness_cycle: Vec<usize>,
    /// `c(x, y) + alpha0`.
    pub reduced: Matrix<Ext<T>>,
}

impl<T: Scalar> CriticalData<T> {
    /// The reduced cost as a finite matrix (total instances only).
    pub fn reduced_dense(&self) -> Result<Matrix<T>> {
        let mut rows = Vec::with_capacity(self.reduced.n());
        for row in self.reduced.rows() {
            rows.push(
                row.iter()
                    .map(|v| v.finite().cloned().ok_or(WkamError::GraphMode { op: "reduced cost" }))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Matrix::from_rows(rows)
    }
}

pub fn critical_value<T: Scalar>(inst: &CostInstance<T>) -> Result<CriticalData<T>> {
    let n = inst.n();
    for x in 0..n {
        if !inst.cost().row(x).iter().any(Ext::is_finite) {
            return Err(WkamError::DeadEnd(x));
        }
    }

    // walks[k][v]: cheapest walk of exactly k steps ending at v, from anywhere
    let mut walks: Vec<Vec<Ext<T>>> = vec![vec![Ext::zero(); n]];
    for k in 1..=n {
        let next = neg_kernel(inst.cost(), false, &walks[k - 1]);
        walks.push(next);
    }

    let mut min_mean: Option<T> = None;
    for v in 0..n {
        let Ext::Fin(full) = &walks[n][v] else { continue };
        let mut worst: Option<T> = None;
        for (k, row) in walks.iter().enumerate().take(n) {
            if let Ext::Fin(dk) = &row[v] {
                let mean = (full.clone() - dk.clone()) / T::from_int((n - k) as i64);
                worst = Some(match worst {
                    None => mean,
                    Some(w) => T::max_of(w, mean),
                });
            }
        }
        if let Some(w) = worst {
            min_mean = Some(match min_mean {
                None => w,
                Some(m) => T::min_of(m, w),
            });
        }
    }
    let min_mean = min_mean.ok_or_else(|| WkamError::ConstructionFailed("no cycle found".into()))?;
    let alpha0 = -min_mean;
    let reduced = inst.cost().map(|v| v.plus_scalar(&alpha0));
    let witness_cycle = zero_cycle(&reduced, inst.walk_tol())?;
    Ok(CriticalData { alpha0, witness_cycle, reduced })
}

/// Finds a zero-weight simple cycle of a cost with no negative cycles.
///
/// With shortest-path potentials `p`, every edge has `w(x, y) + p(x) - p(y) >= 0`
/// and a cycle has weight zero iff all of its edges are tight. The search
/// returns the shortest tight cycle through the lowest possible start point.
fn zero_cycle<T: Scalar>(w: &Matrix<Ext<T>>, tol: Tol) -> Result<Vec<usize>> {
    let n = w.n();
    let mut p: Vec<Ext<T>> = vec![Ext::zero(); n];
    for _ in 0..n {
        let relaxed = neg_kernel(w, false, &p);
        p = p.into_iter().zip(relaxed).map(|(a, b)| if b < a { b } else { a }).collect();
    }
    let p: Vec<T> = p.into_iter().map(|v| v.into_finite().expect("potentials start at 0")).collect();
    let tight = |x: usize, y: usize| match &w[(x, y)] {
        Ext::Fin(wxy) => tol.eq(&(p[x].clone() + wxy.clone()), &p[y]),
        Ext::Inf => false,
    };
    for s in 0..n {
        if tight(s, s) {
            return Ok(vec![s]);
        }
        let mut parent: Vec<Option<usize>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for y in 0..n {
                if !tight(x, y) {
                    continue;
                }
                if y == s {
                    let mut cycle = vec![x];
                    let mut cur = x;
                    while let Some(prev) = parent[cur] {
                        cycle.push(prev);
                        cur = prev;
                    }
                    cycle.reverse();
                    return Ok(cycle);
                }
                if !seen[y] && y > s {
                    seen[y] = true;
                    parent[y] = Some(x);
                    queue.push_back(y);
                }
            }
        }
    }
    Err(WkamError::ConstructionFailed("no zero-weight cycle at the critical value".into()))
}

/// Outcome of a domination check: the first violated pair in row-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domination {
    pub violation: Option<(usize, usize)>,
}

impl Domination {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks `u(y) - u(x) <= c(x, y) + alpha` for all pairs.
pub fn is_dominated<T: Scalar>(inst: &CostInstance<T>, u: &ValueFunction<T>, alpha: &T) -> Result<Domination> {
    inst.check_len(u.len())?;
    let u = u.to_finite()?;
    Ok(Domination { violation: first_violation(inst.cost(), &u, alpha, inst.tol()) })
}

pub(crate) fn first_violation<T: Scalar>(
    cost: &Matrix<Ext<T>>,
    u: &[T],
    alpha: &T,
    tol: Tol,
) -> Option<(usize, usize)> {
    let n = cost.n();
    for x in 0..n {
        for y in 0..n {
            if let Ext::Fin(c) = &cost[(x, y)] {
                let lhs = u[y].clone() - u[x].clone();
                if !tol.le(&lhs, &(c.clone() + alpha.clone())) {
                    return Some((x, y));
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq)]
pub enum SubsolutionOutcome<T> {
    Feasible(ValueFunction<T>),
    /// A cycle whose weight under `c + alpha` is negative.
    Infeasible { cycle: Vec<usize>, weight: T },
}

/// Difference-constraint feasibility for `u(y) - u(x) <= c(x, y) + alpha`:
/// Bellman-Ford distances from an auxiliary source joined to every point
/// at weight zero.
pub fn solve_subsolution<T: Scalar>(inst: &CostInstance<T>, alpha: &T) -> Result<SubsolutionOutcome<T>> {
    let n = inst.n();
    let tol = inst.walk_tol();
    let w = inst.cost().map(|v| v.plus_scalar(alpha));
    let mut dist = vec![T::zero(); n];
    let mut pred: Vec<Option<usize>> = vec![None; n];

    let relax_round = |dist: &mut Vec<T>, pred: &mut Vec<Option<usize>>| -> Option<usize> {
        let mut last = None;
        for x in 0..n {
            for y in 0..n {
                if let Ext::Fin(wxy) = &w[(x, y)] {
                    let cand = dist[x].clone() + wxy.clone();
                    if tol.lt(&cand, &dist[y]) {
                        dist[y] = cand;
                        pred[y] = Some(x);
                        last = Some(y);
                    }
                }
            }
        }
        last
    };

    let mut stable = false;
    for _ in 0..n {
        if relax_round(&mut dist, &mut pred).is_none() {
            stable = true;
            break;
        }
    }
    if stable || relax_round(&mut dist, &mut pred).is_none() {
        return Ok(SubsolutionOutcome::Feasible(ValueFunction::from_finite(dist, "bellman-ford")));
    }

    let last = relax_round(&mut dist, &mut pred)
        .or_else(|| pred.iter().position(Option::is_some))
        .expect("an update happened in the previous round");
    let mut v = last;
    for _ in 0..n {
        v = pred[v].ok_or_else(|| WkamError::ConstructionFailed("broken predecessor chain".into()))?;
    }
    let start = v;
    let mut cycle = vec![start];
    let mut cur = pred[start].expect("on a predecessor cycle");
    while cur != start {
        cycle.push(cur);
        cur = pred[cur].ok_or_else(|| WkamError::ConstructionFailed("broken predecessor chain".into()))?;
    }
    cycle.reverse();
    let lowest = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap_or(0);
    cycle.rotate_left(lowest);
    let weight = cycle_weight(&w, &cycle).ok_or_else(|| WkamError::ConstructionFailed("infinite cycle".into()))?;
    Ok(SubsolutionOutcome::Infeasible { cycle, weight })
}

/// Total weight of the closed walk `cycle[0] -> cycle[1] -> ... -> cycle[0]`.
pub fn cycle_weight<T: Scalar>(w: &Matrix<Ext<T>>, cycle: &[usize]) -> Option<T> {
    let mut total = T::zero();
    for (i, &x) in cycle.iter().enumerate() {
        let y = cycle[(i + 1) % cycle.len()];
        total = total + w[(x, y)].finite()?.clone();
    }
    Some(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::{rat, Rational};

    fn t2() -> CostInstance<Rational> {
        CostInstance::from_rows(vec![vec![rat(2, 1), rat(0, 1)], vec![rat(1, 1), rat(3, 1)]]).unwrap()
    }

    fn constant(n: usize, k: i64) -> CostInstance<Rational> {
        CostInstance::from_rows(vec![vec![rat(k, 1); n]; n]).unwrap()
    }

    #[test]
    fn constant_cost_has_alpha_minus_k() {
        for (n, k) in [(1, 0), (2, 5), (4, -3)] {
            let crit = critical_value(&constant(n, k)).unwrap();
            assert_eq!(crit.alpha0, rat(-k, 1));
            assert_eq!(crit.witness_cycle, vec![0]);
        }
    }

    #[test]
    fn two_point_instance() {
        let crit = critical_value(&t2()).unwrap();
        assert_eq!(crit.alpha0, rat(-1, 2));
        assert_eq!(crit.witness_cycle, vec![0, 1]);
        assert_eq!(crit.reduced[(0, 1)], Ext::Fin(rat(-1, 2)));
    }

    #[test]
    fn dead_end_rejected() {
        let g = CostInstance::<Rational>::new(
            Matrix::from_rows(vec![vec![Ext::Fin(rat(0, 1)), Ext::Fin(rat(1, 1))], vec![Ext::Inf, Ext::Inf]])
                .unwrap(),
        )
        .unwrap();
        assert!(matches!(critical_value(&g), Err(WkamError::DeadEnd(1))));
    }

    #[test]
    fn graph_mode_cycle_mean() {
        // 0 -> 1 -> 2 -> 0 with weights 1, 2, 3 and a self-loop of 5 on 2
        let i = Ext::Inf;
        let f = |v: i64| Ext::Fin(rat(v, 1));
        let g = CostInstance::<Rational>::new(
            Matrix::from_rows(vec![
                vec![i.clone(), f(1), i.clone()],
                vec![i.clone(), i.clone(), f(2)],
                vec![f(3), i.clone(), f(5)],
            ])
            .unwrap(),
        )
        .unwrap();
        let crit = critical_value(&g).unwrap();
        assert_eq!(crit.alpha0, rat(-2, 1));
        assert_eq!(crit.witness_cycle, vec![0, 1, 2]);
    }

    #[test]
    fn domination_examples() {
        let k = constant(2, 3);
        let zero = ValueFunction::from_finite(vec![rat(0, 1); 2], "0");
        assert!(is_dominated(&k, &zero, &rat(-3, 1)).unwrap().holds());
        let bad = is_dominated(&k, &zero, &rat(-4, 1)).unwrap();
        assert_eq!(bad.violation, Some((0, 0)));
        let u = ValueFunction::from_finite(vec![rat(0, 1), rat(-1, 2)], "u");
        assert!(is_dominated(&t2(), &u, &rat(-1, 2)).unwrap().holds());
    }

    #[test]
    fn subsolution_feasible_at_critical_value() {
        let inst = t2();
        match solve_subsolution(&inst, &rat(-1, 2)).unwrap() {
            SubsolutionOutcome::Feasible(u) => {
                assert!(is_dominated(&inst, &u, &rat(-1, 2)).unwrap().holds());
                let v = u.to_finite().unwrap();
                assert_eq!(v, vec![rat(0, 1), rat(-1, 2)]);
            }
            other => panic!("expected feasible, got {other:?}"),
        }
    }

    #[test]
    fn subsolution_infeasible_below_critical_value() {
        let inst = t2();
        match solve_subsolution(&inst, &rat(-3, 2)).unwrap() {
            SubsolutionOutcome::Infeasible { cycle, weight } => {
                assert!(weight < rat(0, 1));
                let w = inst.cost().map(|v| v.plus_scalar(&rat(-3, 2)));
                assert_eq!(cycle_weight(&w, &cycle), Some(weight));
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn float_mode_matches_exact() {
        let inst: CostInstance<f64> = t2().convert().unwrap();
        let crit = critical_value(&inst).unwrap();
        assert!((crit.alpha0 + 0.5).abs() < 1e-12);
        assert!(matches!(solve_subsolution(&inst, &crit.alpha0).unwrap(), SubsolutionOutcome::Feasible(_)));
    }
}
