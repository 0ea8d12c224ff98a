use serde::Serialize;
use serde_json::{json, Value};

use super::enumerate::{
    enum_cycles, enum_walks, enum_zero_cycles, liminf_barrier_bounded, tight_walk_aubry, CYCLE_GUARD,
    TIGHT_WALK_GUARD, WALK_POINT_GUARD,
};
use super::sampler::subsolution_sampler;
use crate::barrier::{
    aubry, closed_form_barrier, conjugate_check, float_iteration_cap, inf_solutions, is_weak_kam, limit_neg,
    limit_pos, peierls_barrier, representation_attainment, representation_check, u_minus_extremal, u_plus_extremal,
    weak_kam_neg, AubryData, BarrierData, Side,
};
use crate::critical::{critical_value, cycle_weight, first_violation, solve_subsolution, CriticalData, SubsolutionOutcome};
use crate::error::{Result, WkamError};
use crate::models::io::{parse_value, Claims};
use crate::models::{apriori_check, check_length_space, lip_constants, lipschitz_large_check};
use crate::potential::{jump_F, jump_f, mane_dense, phi_n_dense, phi_one_dense};
use crate::subsolution::{aubry_of, max_strict_subsolution, strict_pairs, strict_subsolution, Chain, is_calibrated};
use crate::tropical::kernel::{min_plus_product, t_neg, t_neg_a, t_pos, t_pos_a};
use crate::tropical::{cost_power, reverse_cost, CostInstance, Matrix, Scalar, Tol, ValueFunction};

/// Largest instance `verify_all` accepts.
pub const VERIFY_GUARD: usize = CYCLE_GUARD;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Concrete counterexample when the check fails.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub checks: Vec<Check>,
    pub summary: String,
}

impl OracleReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "summary": self.summary,
            "pass": self.all_pass(),
            "checks": self.checks,
        })
    }
}

/// Outcome of one check: `None` passes, `Some(witness)` fails.
pub type Witness = Option<String>;

fn pair(x: usize, y: usize) -> String {
    format!("pair ({x}, {y})")
}

fn first_pair(n: usize, mut bad: impl FnMut(usize, usize) -> bool) -> Witness {
    for x in 0..n {
        for y in 0..n {
            if bad(x, y) {
                return Some(pair(x, y));
            }
        }
    }
    None
}

fn first_triple(n: usize, mut bad: impl FnMut(usize, usize, usize) -> bool) -> Witness {
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if bad(x, y, z) {
                    return Some(format!("triple ({x}, {y}, {z})"));
                }
            }
        }
    }
    None
}

fn show<T: Scalar>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Everything the checks share for one instance.
pub struct Context<'a, T: Scalar> {
    pub inst: &'a CostInstance<T>,
    pub c: &'a Matrix<T>,
    pub crit: CriticalData<T>,
    pub phi1: Matrix<T>,
    pub phi: Matrix<T>,
    pub bar: BarrierData<T>,
    pub h: Matrix<T>,
    pub aubry: AubryData<T>,
    pub samples: Vec<Vec<T>>,
    pub tol: Tol,
}

impl<'a, T: Scalar> Context<'a, T> {
    pub fn new(inst: &'a CostInstance<T>, seed: u64, sample_count: usize) -> Result<Self> {
        let c = inst.dense("verify")?;
        let crit = critical_value(inst)?;
        let phi1 = phi_one_dense(inst, &crit)?;
        let phi = mane_dense(&phi1);
        let bar = peierls_barrier(inst, &crit)?;
        let h = bar.dense()?;
        let aubry = aubry(inst, &crit, &bar)?;
        let samples = subsolution_sampler(inst, &crit, seed, sample_count)?
            .into_iter()
            .map(|u| u.to_finite())
            .collect::<Result<_>>()?;
        Ok(Context { inst, c, crit, phi1, phi, bar, h, aubry, samples, tol: inst.walk_tol() })
    }

    fn n(&self) -> usize {
        self.inst.n()
    }

    fn a0(&self) -> &T {
        &self.crit.alpha0
    }

    fn vf(&self, u: &[T]) -> ValueFunction<T> {
        ValueFunction::from_finite(u.to_vec(), "u")
    }

    fn shifted(&self, m: &Matrix<T>, k: usize) -> Matrix<T> {
        let s = T::from_int(k as i64) * self.a0().clone();
        m.map(|v| v.clone() + s.clone())
    }

    /// `c_k + k alpha0` for `k = 1..=upto`, by direct walk extension.
    fn reduced_powers(&self, upto: usize) -> Vec<Matrix<T>> {
        let w = self.shifted(self.c, 1);
        let mut out = vec![w.clone()];
        for _ in 1..upto {
            let next = min_plus_product(out.last().expect("nonempty"), &w);
            out.push(next);
        }
        out
    }

    // ---- tropical core ----

    pub fn check_pos_operator(&self) -> Witness {
        let n = self.n();
        for u in &self.samples {
            let got = t_pos(self.c, u);
            for (x, g) in got.iter().enumerate() {
                let direct = (0..n).map(|y| u[y].clone() - self.c[(x, y)].clone()).reduce(T::max_of).expect("n >= 1");
                if *g != direct {
                    return Some(format!("u = {}, point {x}", show(u)));
                }
            }
        }
        None
    }

    pub fn check_semigroup_law(&self) -> Result<Witness> {
        for a in 1..=3 {
            for b in 1..=3 {
                let lhs = cost_power(self.inst, a + b)?.entries;
                let rhs = min_plus_product(&cost_power(self.inst, a)?.entries, &cost_power(self.inst, b)?.entries);
                let bad = lhs.iter().find(|(p, v)| !v.eq_tol(&rhs[*p], self.tol)).map(|(p, _)| p);
                if let Some((x, y)) = bad {
                    return Ok(Some(format!("n = {a}, m = {b}, {}", pair(x, y))));
                }
            }
        }
        Ok(None)
    }

    pub fn check_cost_power_vs_walks(&self) -> Result<Witness> {
        if self.n() > WALK_POINT_GUARD {
            return Ok(None);
        }
        for k in 1..=4 {
            let cp = cost_power(self.inst, k)?.entries;
            for ((x, y), v) in cp.iter() {
                if !v.eq_tol(&enum_walks(self.inst, x, y, k)?, self.tol) {
                    return Ok(Some(format!("n = {k}, {}", pair(x, y))));
                }
            }
        }
        Ok(None)
    }

    pub fn check_monotone_and_constants(&self) -> Witness {
        for pairs in self.samples.windows(2) {
            let lower: Vec<T> = pairs[0].iter().zip(&pairs[1]).map(|(a, b)| T::min_of(a.clone(), b.clone())).collect();
            if !self.tol.le_slices(&t_neg(self.c, &lower), &t_neg(self.c, &pairs[0])) {
                return Some(format!("monotonicity fails for u = {}", show(&lower)));
            }
            let k = T::from_ratio(7, 3);
            let plus_k: Vec<T> = pairs[0].iter().map(|v| v.clone() + k.clone()).collect();
            let lhs = t_neg(self.c, &plus_k);
            let rhs: Vec<T> = t_neg(self.c, &pairs[0]).into_iter().map(|v| v + k.clone()).collect();
            if !self.tol.eq_slices(&lhs, &rhs) {
                return Some(format!("constant commutation fails for u = {}", show(&pairs[0])));
            }
        }
        None
    }

    // ---- critical ----

    pub fn check_karp_vs_cycles(&self) -> Result<Witness> {
        let e = enum_cycles(self.inst)?;
        if !self.tol.eq(&-e.min_mean.clone(), self.a0()) {
            return Ok(Some(format!("alpha0 = {}, minimum cycle mean = {}", self.a0(), e.min_mean)));
        }
        let mean = cycle_weight(self.inst.cost(), &self.crit.witness_cycle)
            .map(|w| w / T::from_int(self.crit.witness_cycle.len() as i64));
        match mean {
            Some(m) if self.tol.eq(&m, &e.min_mean) => Ok(None),
            _ => Ok(Some(format!("witness cycle {:?} does not attain the minimum mean", self.crit.witness_cycle))),
        }
    }

    pub fn check_feasibility_threshold(&self) -> Result<Witness> {
        match solve_subsolution(self.inst, self.a0())? {
            SubsolutionOutcome::Feasible(u) => {
                if let Some((x, y)) = first_violation(self.inst.cost(), &u.to_finite()?, self.a0(), self.tol) {
                    return Ok(Some(format!("solution at alpha0 violates {}", pair(x, y))));
                }
            }
            SubsolutionOutcome::Infeasible { cycle, .. } => {
                return Ok(Some(format!("infeasible at alpha0 with cycle {cycle:?}")));
            }
        }
        for q in [1, 2, 4] {
            let alpha = self.a0().clone() - T::from_ratio(1, q);
            match solve_subsolution(self.inst, &alpha)? {
                SubsolutionOutcome::Infeasible { weight, .. } if weight < T::zero() => {}
                _ => return Ok(Some(format!("feasible at alpha0 - 1/{q}"))),
            }
        }
        Ok(None)
    }

    pub fn check_self_loop_bound(&self) -> Witness {
        (0..self.n())
            .find(|&x| !self.tol.ge(self.a0(), &-self.c[(x, x)].clone()))
            .map(|x| format!("alpha0 < -c({x}, {x})"))
    }

    pub fn check_domination_closure(&self) -> Witness {
        for (i, u) in self.samples.iter().enumerate() {
            let image = t_neg_a(self.c, u, self.a0());
            if let Some((x, y)) = first_violation(self.inst.cost(), &image, self.a0(), self.tol) {
                return Some(format!("T^- sample{i} + alpha0 violates {}", pair(x, y)));
            }
        }
        for (i, w) in self.samples.windows(2).enumerate() {
            for (p, q) in [(1, 2), (1, 1), (3, 4)] {
                let t = T::from_ratio(p, q + p);
                let mix: Vec<T> = w[0]
                    .iter()
                    .zip(&w[1])
                    .map(|(a, b)| t.clone() * a.clone() + (T::one() - t.clone()) * b.clone())
                    .collect();
                if let Some((x, y)) = first_violation(self.inst.cost(), &mix, self.a0(), self.tol) {
                    return Some(format!("convex mix of samples {i}, {} violates {}", i + 1, pair(x, y)));
                }
            }
        }
        None
    }

    // ---- potential ----

    pub fn check_phi_axioms(&self) -> Witness {
        let n = self.n();
        if let Some(x) = (0..n).find(|&x| !self.tol.is_zero(&self.phi[(x, x)])) {
            return Some(format!("phi({x}, {x}) != 0"));
        }
        if let Some(w) = first_pair(n, |x, y| !self.tol.le(&self.phi[(x, y)], &(self.c[(x, y)].clone() + self.a0().clone()))) {
            return Some(format!("phi above c + alpha0 at {w}"));
        }
        first_triple(n, |x, y, z| {
            !self.tol.le(&self.phi[(x, z)], &(self.phi[(x, y)].clone() + self.phi[(y, z)].clone()))
        })
        .map(|w| format!("phi triangle inequality fails at {w}"))
    }

    pub fn check_sup_representation(&self) -> Witness {
        let n = self.n();
        for (i, u) in self.samples.iter().enumerate() {
            if let Some(w) = first_pair(n, |x, y| !self.tol.le(&(u[y].clone() - u[x].clone()), &self.phi[(x, y)])) {
                return Some(format!("sample{i} exceeds phi at {w}"));
            }
        }
        first_pair(n, |x, y| {
            let best = (0..n)
                .map(|z| self.phi[(z, y)].clone() - self.phi[(z, x)].clone())
                .reduce(T::max_of)
                .expect("n >= 1");
            !self.tol.eq(&best, &self.phi[(x, y)])
        })
        .map(|w| format!("rows of phi do not attain phi at {w}"))
    }

    pub fn check_rows_columns_dominated(&self) -> Witness {
        for x in 0..self.n() {
            let row = self.phi.row(x).to_vec();
            let col: Vec<T> = self.phi.column(x).map(|v| -v.clone()).collect();
            for (name, f) in [("phi_", row), ("phi^", col)] {
                if let Some((a, b)) = first_violation(self.inst.cost(), &f, self.a0(), self.tol) {
                    return Some(format!("{name}{x} not dominated at {}", pair(a, b)));
                }
            }
        }
        None
    }

    pub fn check_phi1_vs_phi(&self) -> Witness {
        first_pair(self.n(), |x, y| {
            if x == y {
                !self.tol.ge(&self.phi1[(x, x)], &T::zero())
            } else {
                !self.tol.eq(&self.phi1[(x, y)], &self.phi[(x, y)])
            }
        })
    }

    /// `phi_n = min_{k = n .. n + |X| - 1} c_k + k alpha0` and the value-iteration recursion.
    pub fn check_phi_n(&self) -> Witness {
        let n = self.n();
        let powers = self.reduced_powers(4 + n);
        let mut prev: Option<Matrix<T>> = None;
        for k in 1..=4 {
            let table = phi_n_dense(self.c, &self.phi1, self.a0(), k);
            let reference = Matrix::from_fn(n, |x, y| {
                powers[k - 1..k - 1 + n].iter().map(|m| m[(x, y)].clone()).reduce(T::min_of).expect("n >= 1")
            });
            if let Some(w) = first_pair(n, |x, y| !self.tol.eq(&table[(x, y)], &reference[(x, y)])) {
                return Some(format!("phi_{k} disagrees with the walk minimum at {w}"));
            }
            if let Some(p) = &prev {
                if let Some(w) = first_pair(n, |x, y| !self.tol.le(&p[(x, y)], &table[(x, y)])) {
                    return Some(format!("phi_{k} decreases at {w}"));
                }
            }
            for x in 0..n {
                if let Some((a, b)) = first_violation(self.inst.cost(), table.row(x), self.a0(), self.tol) {
                    return Some(format!("phi_{k} row {x} not dominated at {}", pair(a, b)));
                }
            }
            prev = Some(table);
        }
        None
    }

    pub fn check_vanishing(&self) -> Witness {
        for x in 0..self.n() {
            let mut a = self.phi1.row(x).to_vec();
            let mut b = self.phi.row(x).to_vec();
            for m in 1..=5 {
                a = t_pos_a(self.c, &a, self.a0());
                b = t_pos_a(self.c, &b, self.a0());
                if !self.tol.is_zero(&a[x]) {
                    return Some(format!("T+^{m} phi_1,{x}({x}) - {m} alpha0 = {}", a[x]));
                }
                if !self.tol.is_zero(&b[x]) {
                    return Some(format!("T+^{m} phi_{x}({x}) - {m} alpha0 = {}", b[x]));
                }
            }
        }
        None
    }

    /// `T^-^k phi_x + k alpha0 = phi_{k, x}`.
    pub fn check_phi_iteration(&self) -> Witness {
        for x in 0..self.n() {
            let mut v = self.phi.row(x).to_vec();
            for k in 1..=4 {
                v = t_neg_a(self.c, &v, self.a0());
                let expected = phi_n_dense(self.c, &self.phi1, self.a0(), k);
                if !self.tol.eq_slices(&v, expected.row(x)) {
                    return Some(format!("T^-^{k} phi_{x} + {k} alpha0 = {}", show(&v)));
                }
            }
        }
        None
    }

    pub fn check_jumps(&self) -> Result<Witness> {
        let big = jump_F(self.inst, &self.crit)?.to_finite()?;
        let small = jump_f(self.inst, &self.crit)?.to_finite()?;
        for x in 0..self.n() {
            if !self.tol.eq(&big[x], &self.phi1[(x, x)]) || big[x] < T::zero() {
                return Ok(Some(format!("F({x}) = {} but phi_1({x}, {x}) = {}", big[x], self.phi1[(x, x)])));
            }
            if !self.tol.eq(&small[x], &-big[x].clone()) {
                return Ok(Some(format!("f({x}) = {} differs from -F({x})", small[x])));
            }
        }
        let rev = reverse_cost(self.inst)?;
        let rcrit = critical_value(&rev)?;
        let rbig = jump_F(&rev, &rcrit)?.to_finite()?;
        Ok((0..self.n())
            .find(|&x| !self.tol.eq(&small[x], &-rbig[x].clone()))
            .map(|x| format!("f({x}) differs from -F_reversed({x})")))
    }

    // ---- barrier ----

    pub fn check_barrier_vs_liminf(&self) -> Result<Witness> {
        let mut horizon = 12;
        while horizon <= 1024 {
            let r = liminf_barrier_bounded(self.inst, &self.crit, horizon)?;
            if r.stabilized {
                return Ok(first_pair(self.n(), |x, y| !self.tol.eq(&r.h[(x, y)], &self.h[(x, y)]))
                    .map(|w| format!("N = {horizon}: liminf oracle differs at {w}")));
            }
            horizon *= 2;
        }
        Ok(Some("liminf oracle did not stabilize by N = 1024".into()))
    }

    pub fn check_barrier_closed_form(&self) -> Witness {
        match closed_form_barrier(&self.phi1, &self.aubry.vertices) {
            None => Some("empty Aubry set".into()),
            Some(m) => first_pair(self.n(), |x, y| !self.tol.eq(&m[(x, y)], &self.h[(x, y)])),
        }
    }

    pub fn check_barrier_basic(&self) -> Witness {
        let n = self.n();
        if let Some(w) =
            first_triple(n, |x, y, z| !self.tol.le(&self.h[(x, z)], &(self.h[(x, y)].clone() + self.h[(y, z)].clone())))
        {
            return Some(format!("h triangle inequality fails at {w}"));
        }
        first_pair(n, |x, y| !self.tol.le(&self.phi[(x, y)], &self.h[(x, y)])).map(|w| format!("h < phi at {w}"))
    }

    pub fn check_barrier_solutions(&self) -> Witness {
        for x in 0..self.n() {
            let row = self.h.row(x).to_vec();
            if !self.tol.eq_slices(&t_neg_a(self.c, &row, self.a0()), &row) {
                return Some(format!("h_{x} is not a negative solution"));
            }
            let col: Vec<T> = self.h.column(x).map(|v| -v.clone()).collect();
            if !self.tol.eq_slices(&t_pos_a(self.c, &col, self.a0()), &col) {
                return Some(format!("h^{x} is not a positive solution"));
            }
        }
        None
    }

    pub fn check_hh_suite(&self) -> Witness {
        let n = self.n();
        let cm = self.reduced_powers(4);
        let phis: Vec<Matrix<T>> = (1..=4).map(|k| phi_n_dense(self.c, &self.phi1, self.a0(), k)).collect();
        let h = &self.h;
        let le = |a: &T, b: T| self.tol.le(a, &b);
        for m in 1..=4 {
            let c = &cm[m - 1];
            if let Some(w) = first_triple(n, |x, y, z| !le(&h[(x, z)], h[(x, y)].clone() + c[(y, z)].clone())) {
                return Some(format!("h(x,z) <= h(x,y) + c_{m}(y,z) + {m} alpha0 fails at {w}"));
            }
            if let Some(w) = first_triple(n, |x, y, z| !le(&h[(x, z)], c[(x, y)].clone() + h[(y, z)].clone())) {
                return Some(format!("h(x,z) <= c_{m}(x,y) + h(y,z) + {m} alpha0 fails at {w}"));
            }
            for k in 1..=4 {
                if k + m <= 4 {
                    let big = &phis[k + m - 1];
                    let p = &phis[k - 1];
                    if let Some(w) = first_triple(n, |x, y, z| !le(&big[(x, z)], p[(x, y)].clone() + c[(y, z)].clone())) {
                        return Some(format!("phi_{}(x,z) <= phi_{k}(x,y) + c_{m}(y,z) + {m} alpha0 fails at {w}", k + m));
                    }
                }
                for l in 1..=4 {
                    if k <= l + m {
                        let (pk, pm, pl) = (&phis[k - 1], &phis[m - 1], &phis[l - 1]);
                        if let Some(w) = first_triple(n, |x, y, z| !le(&pk[(x, z)], pm[(x, y)].clone() + pl[(y, z)].clone())) {
                            return Some(format!("phi_{k}(x,z) <= phi_{m}(x,y) + phi_{l}(y,z) fails at {w}"));
                        }
                    }
                }
            }
        }
        for (k, p) in phis.iter().enumerate() {
            if let Some(w) = first_triple(n, |x, y, z| !le(&h[(x, z)], h[(x, y)].clone() + p[(y, z)].clone())) {
                return Some(format!("h(x,z) <= h(x,y) + phi_{}(y,z) fails at {w}", k + 1));
            }
        }
        None
    }

    pub fn check_min_formula(&self) -> Result<Witness> {
        for k in 1..=3 {
            if !crate::barrier::min_formula_check(self.inst, &self.crit, &self.bar, k)? {
                return Ok(Some(format!("min formula fails for n = {k}")));
            }
        }
        Ok(None)
    }

    // ---- Aubry sets ----

    pub fn check_aubry_four_way(&self) -> Result<Witness> {
        let n = self.n();
        let by_h: Vec<usize> = (0..n).filter(|&x| self.tol.is_zero(&self.h[(x, x)])).collect();
        let jumps = self.aubry.jumps.to_finite()?;
        let by_f: Vec<usize> = (0..n).filter(|&x| self.tol.is_zero(&jumps[x])).collect();
        let mut by_kam = Vec::new();
        for x in 0..n {
            if is_weak_kam(self.inst, &self.crit, &self.vf(self.phi.row(x)), Side::Negative)? {
                by_kam.push(x);
            }
        }
        let reference = enum_zero_cycles(self.inst, &self.crit)?;
        if by_h == by_f && by_f == by_kam && by_kam == reference.vertices && reference.vertices == self.aubry.vertices {
            Ok(None)
        } else {
            Ok(Some(format!(
                "h: {by_h:?}, F: {by_f:?}, weak KAM phi_x: {by_kam:?}, zero cycles: {:?}",
                reference.vertices
            )))
        }
    }

    pub fn check_aubry_edges(&self) -> Result<Witness> {
        let reference = enum_zero_cycles(self.inst, &self.crit)?;
        if reference.edges != self.aubry.edges {
            return Ok(Some(format!("barrier edges {:?}, zero-cycle edges {:?}", self.aubry.edges, reference.edges)));
        }
        Ok(self
            .aubry
            .edges
            .iter()
            .find(|(x, y)| !self.aubry.contains(*x) || !self.aubry.contains(*y))
            .map(|&(x, y)| format!("edge {} leaves the Aubry set", pair(x, y))))
    }

    // ---- limits ----

    /// Largest number of steps `u_-` or `u_+` needed over the samples.
    pub fn stabilization_index(&self) -> Result<usize> {
        let mut worst = 0;
        for u in &self.samples {
            let (_, a) = limit_neg(self.c, u, self.a0(), self.tol)?;
            let (_, b) = limit_pos(self.c, u, self.a0(), self.tol)?;
            worst = worst.max(a).max(b);
        }
        Ok(worst)
    }

    pub fn check_stabilization(&self) -> Result<Witness> {
        let cap = float_iteration_cap(self.n());
        let k = self.stabilization_index()?;
        Ok((k > cap).then(|| format!("needed {k} iterations, 4n^2 = {cap}")))
    }

    pub fn check_conjugates(&self) -> Result<Witness> {
        for (i, u) in self.samples.iter().enumerate() {
            let rep = conjugate_check(self.inst, &self.crit, &self.vf(u))?;
            if !rep.holds() {
                return Ok(Some(format!("sample{i} = {}: {rep:?}", show(u))));
            }
        }
        Ok(None)
    }

    pub fn check_inegh(&self, horizon: usize) -> Result<Witness> {
        for (i, u) in self.samples.iter().enumerate() {
            let rep = representation_check(self.inst, &self.crit, &self.bar, &self.vf(u), horizon)?;
            if let Some((x, y)) = rep.violation {
                return Ok(Some(format!("sample{i}: S > h at {}", pair(x, y))));
            }
        }
        Ok(None)
    }

    pub fn check_attainment(&self) -> Result<Witness> {
        let rows = representation_attainment(self.inst, &self.crit, &self.bar)?;
        Ok(rows.iter().position(|ok| !ok).map(|x| format!("row {x} not attained by phi_1,{x}")))
    }

    pub fn check_extremal(&self) -> Witness {
        for (i, u) in self.samples.iter().enumerate() {
            let (m, _) = limit_neg(self.c, u, self.a0(), self.tol).ok()?;
            let (p, _) = limit_pos(self.c, u, self.a0(), self.tol).ok()?;
            if !self.tol.eq_slices(&m, &u_minus_extremal(&self.h, &self.aubry.vertices, u)) {
                return Some(format!("u_- of sample{i} is not the least solution above it"));
            }
            if !self.tol.eq_slices(&p, &u_plus_extremal(&self.h, &self.aubry.vertices, u)) {
                return Some(format!("u_+ of sample{i} is not the greatest solution below it"));
            }
            let closed: Vec<T> = (0..self.n())
                .map(|y| (0..self.n()).map(|x| u[x].clone() + self.h[(x, y)].clone()).reduce(T::min_of).expect("n >= 1"))
                .collect();
            if !self.tol.eq_slices(&m, &closed) {
                return Some(format!("u_- of sample{i} differs from min_x u(x) + h(x, .)"));
            }
        }
        None
    }

    pub fn check_aubry_of(&self) -> Result<Witness> {
        for (i, u) in self.samples.iter().enumerate() {
            let a = aubry_of(self.inst, &self.crit, &self.vf(u))?;
            let image = t_neg_a(self.c, u, self.a0());
            let b = aubry_of(self.inst, &self.crit, &self.vf(&image))?;
            if a != b {
                return Ok(Some(format!("A_u = {a:?} but A_(T^- u) = {b:?} for sample{i}")));
            }
            if !self.aubry.vertices.iter().all(|x| a.binary_search(x).is_ok()) {
                return Ok(Some(format!("A = {:?} not inside A_u = {a:?} for sample{i}", self.aubry.vertices)));
            }
            if self.n() <= TIGHT_WALK_GUARD {
                let r = tight_walk_aubry(self.inst, &self.crit, &self.vf(u))?;
                if r.vertices != a {
                    return Ok(Some(format!("A_u = {a:?}, tight walks give {:?} for sample{i}", r.vertices)));
                }
            }
        }
        Ok(None)
    }

    pub fn check_inf_solutions(&self) -> Result<Witness> {
        let sols: Vec<ValueFunction<T>> = (0..self.n()).map(|x| weak_kam_neg(&self.bar, x)).collect();
        Ok(match inf_solutions(self.inst, &self.crit, &sols) {
            Ok(_) => None,
            Err(e) => Some(e.to_string()),
        })
    }

    // ---- strict sub-solutions ----

    pub fn check_strict(&self) -> Result<Witness> {
        let n = self.n();
        for (i, u) in self.samples.iter().enumerate() {
            let v = self.vf(u);
            let s = strict_subsolution(self.inst, &self.crit, &v)?;
            let sv = s.to_finite()?;
            if let Some((x, y)) = first_violation(self.inst.cost(), &sv, self.a0(), self.tol) {
                return Ok(Some(format!("strict(sample{i}) not dominated at {}", pair(x, y))));
            }
            let strict = strict_pairs(self.inst, &self.crit, &s)?;
            let au = aubry_of(self.inst, &self.crit, &v)?;
            if let Some(&x) = au.iter().find(|&&x| !self.tol.eq(&sv[x], &u[x])) {
                return Ok(Some(format!("strict(sample{i}) moves point {x} of A_u")));
            }
            if n <= TIGHT_WALK_GUARD {
                let reference = tight_walk_aubry(self.inst, &self.crit, &v)?;
                let complement: Vec<(usize, usize)> = (0..n)
                    .flat_map(|x| (0..n).map(move |y| (x, y)))
                    .filter(|p| !reference.edges.contains(p))
                    .collect();
                if strict != complement {
                    return Ok(Some(format!("sample{i}: strict at {strict:?}, expected {complement:?}")));
                }
            }
        }
        Ok(None)
    }

    pub fn check_max_strict(&self) -> Result<Witness> {
        let n = self.n();
        let u1 = max_strict_subsolution(self.inst, &self.crit)?;
        let strict = strict_pairs(self.inst, &self.crit, &u1)?;
        let complement: Vec<(usize, usize)> = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| !self.aubry.contains_edge(x, y))
            .collect();
        if strict != complement {
            return Ok(Some(format!("u1 strict at {strict:?}, expected {complement:?}")));
        }
        let v = u1.to_finite()?;
        let up = t_neg_a(self.c, &v, self.a0());
        let down = t_pos_a(self.c, &v, self.a0());
        Ok((0..n)
            .filter(|x| !self.aubry.contains(*x))
            .find(|&x| !(self.tol.lt(&v[x], &up[x]) && self.tol.gt(&v[x], &down[x])))
            .map(|x| format!("u1 is not strictly between T^+ u1 - alpha0 and T^- u1 + alpha0 at {x}")))
    }

    /// `u(x) - u(y) = c(y, x) + alpha0` forces `u(x) = T^- u(x) + alpha0`.
    pub fn check_lemma_trivial(&self) -> Witness {
        let n = self.n();
        for (i, u) in self.samples.iter().enumerate() {
            let image = t_neg_a(self.c, u, self.a0());
            let bad = first_pair(n, |y, x| {
                let tight = self.tol.eq(&(u[x].clone() - u[y].clone()), &(self.c[(y, x)].clone() + self.a0().clone()));
                tight && !self.tol.eq(&u[x], &image[x])
            });
            if let Some(w) = bad {
                return Some(format!("sample{i} at {w}"));
            }
        }
        None
    }

    /// A positive mix calibrates a chain iff every component does.
    pub fn check_convex_calibration(&self) -> Result<Witness> {
        let n = self.n();
        let mut chains = Vec::new();
        for x in 0..n {
            for y in 0..n {
                chains.push(Chain::new(vec![x, y], n)?);
                chains.push(Chain::new(vec![x, y, x], n)?);
            }
        }
        for (i, w) in self.samples.windows(2).enumerate() {
            let half = T::from_ratio(1, 2);
            let mix: Vec<T> = w[0].iter().zip(&w[1]).map(|(a, b)| half.clone() * (a.clone() + b.clone())).collect();
            for ch in &chains {
                let a = is_calibrated(self.inst, &self.crit, &self.vf(&w[0]), ch)?;
                let b = is_calibrated(self.inst, &self.crit, &self.vf(&w[1]), ch)?;
                let m = is_calibrated(self.inst, &self.crit, &self.vf(&mix), ch)?;
                if m != (a && b) {
                    return Ok(Some(format!("samples {i}, {} on chain {:?}", i + 1, ch.points())));
                }
            }
        }
        Ok(None)
    }

    /// Anything between `u` and `T^- u + alpha0` (or `T^+ u - alpha0`) is dominated.
    pub fn check_in_between(&self) -> Witness {
        for (i, u) in self.samples.iter().enumerate() {
            let up = t_neg_a(self.c, u, self.a0());
            let down = t_pos_a(self.c, u, self.a0());
            for (name, other) in [("T^-", &up), ("T^+", &down)] {
                for (j, t) in [(1, 3), (1, 2), (5, 6)].iter().enumerate() {
                    let theta = T::from_ratio(t.0, t.1);
                    // alternate the weight per point so v is not a plain convex mix
                    let v: Vec<T> = u
                        .iter()
                        .zip(other)
                        .enumerate()
                        .map(|(k, (a, b))| {
                            let th = if (k + j) % 2 == 0 { theta.clone() } else { T::one() - theta.clone() };
                            a.clone() + th * (b.clone() - a.clone())
                        })
                        .collect();
                    if let Some((x, y)) = first_violation(self.inst.cost(), &v, self.a0(), self.tol) {
                        return Some(format!("sample{i} between u and {name}: violated at {}", pair(x, y)));
                    }
                }
            }
        }
        None
    }

    // ---- metric ----

    /// Lipschitz-in-the-large and a-priori radius checks, when the instance
    /// has a metric that is a 1-length space at its coarsest nearest-neighbour scale.
    pub fn check_metric(&self) -> Result<Option<Witness>> {
        let Some(d) = self.inst.metric() else { return Ok(None) };
        let n = self.n();
        if n < 2 {
            return Ok(None);
        }
        let scale = (0..n)
            .map(|x| (0..n).filter(|&y| y != x).map(|y| d[(x, y)].clone()).reduce(T::min_of).expect("n >= 2"))
            .reduce(T::max_of)
            .expect("n >= 2");
        if scale <= T::zero() {
            return Ok(None);
        }
        let report = check_length_space(d, &T::one(), &scale)?;
        if !report.ok {
            return Ok(None);
        }
        let lip = lip_constants(self.inst, self.a0(), &T::one(), &scale)?;
        for (i, u) in self.samples.iter().enumerate() {
            let v = self.vf(u);
            if let Some((x, y)) = lipschitz_large_check(self.inst, &v, &lip.k, &lip.b)?.violation {
                return Ok(Some(Some(format!("sample{i} breaks the Lipschitz bound at {}", pair(x, y)))));
            }
            if let Some((x, y)) = apriori_check(self.inst, &v, &lip)?.violation {
                return Ok(Some(Some(format!("sample{i}: minimizer {y} for {x} outside the a-priori radius"))));
            }
        }
        Ok(Some(None))
    }

    // ---- claims ----

    pub fn check_claims(&self, claims: &Claims) -> Result<Vec<(String, Witness)>> {
        let mut out = Vec::new();
        if let Some(a) = &claims.alpha0 {
            let claimed: T = parse_value(a)?;
            out.push((
                "claims.alpha0".into(),
                (!self.tol.eq(&claimed, self.a0())).then(|| format!("claimed {claimed}, computed {}", self.a0())),
            ));
        }
        if let Some(rows) = &claims.h {
            let parsed = rows
                .iter()
                .map(|r| r.iter().map(parse_value::<T>).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let m = Matrix::from_rows(parsed)?;
            if m.n() != self.n() {
                return Err(WkamError::LengthMismatch { expected: self.n(), found: m.n() });
            }
            let tri = first_triple(self.n(), |x, y, z| !self.tol.le(&m[(x, z)], &(m[(x, y)].clone() + m[(y, z)].clone())));
            out.push(("claims.h_triangle".into(), tri));
            out.push((
                "claims.h_matches_barrier".into(),
                first_pair(self.n(), |x, y| !self.tol.eq(&m[(x, y)], &self.h[(x, y)])),
            ));
        }
        Ok(out)
    }
}

/// Runs every structural check on one instance.
pub fn verify_all<T: Scalar>(inst: &CostInstance<T>) -> Result<OracleReport> {
    verify_with(inst, &Claims::default(), 0, 20)
}

/// [`verify_all`] with claimed results, sampler seed and sample count.
pub fn verify_with<T: Scalar>(inst: &CostInstance<T>, claims: &Claims, seed: u64, samples: usize) -> Result<OracleReport> {
    if inst.n() > VERIFY_GUARD {
        return Err(WkamError::SizeGuard { what: format!("points = {}", inst.n()), limit: VERIFY_GUARD });
    }
    inst.dense("verify")?;
    let ctx = Context::new(inst, seed, samples)?;
    let mut checks = Vec::new();
    let mut push = |name: &str, r: Result<Witness>| {
        let witness = r.unwrap_or_else(|e| Some(format!("error: {e}")));
        checks.push(Check { name: name.into(), pass: witness.is_none(), witness });
    };
    push("tropical.pos_operator_formula", Ok(ctx.check_pos_operator()));
    push("tropical.semigroup_law", ctx.check_semigroup_law());
    push("tropical.cost_power_vs_enum_walks", ctx.check_cost_power_vs_walks());
    push("tropical.monotone_and_constants", Ok(ctx.check_monotone_and_constants()));
    push("critical.karp_vs_enum_cycles", ctx.check_karp_vs_cycles());
    push("critical.feasibility_threshold", ctx.check_feasibility_threshold());
    push("critical.self_loop_bound", Ok(ctx.check_self_loop_bound()));
    push("critical.domination_closure", Ok(ctx.check_domination_closure()));
    push("potential.phi_axioms", Ok(ctx.check_phi_axioms()));
    push("potential.sup_representation", Ok(ctx.check_sup_representation()));
    push("potential.rows_columns_dominated", Ok(ctx.check_rows_columns_dominated()));
    push("potential.phi1_vs_phi", Ok(ctx.check_phi1_vs_phi()));
    push("potential.phi_n", Ok(ctx.check_phi_n()));
    push("potential.vanishing", Ok(ctx.check_vanishing()));
    push("potential.phi_iteration", Ok(ctx.check_phi_iteration()));
    push("potential.jumps", ctx.check_jumps());
    push("barrier.vs_liminf_oracle", ctx.check_barrier_vs_liminf());
    push("barrier.closed_form", Ok(ctx.check_barrier_closed_form()));
    push("barrier.triangle_and_above_phi", Ok(ctx.check_barrier_basic()));
    push("barrier.weak_kam_rows_columns", Ok(ctx.check_barrier_solutions()));
    push("barrier.hh_suite", Ok(ctx.check_hh_suite()));
    push("barrier.min_formula", ctx.check_min_formula());
    push("aubry.four_way", ctx.check_aubry_four_way());
    push("aubry.edges_vs_zero_cycles", ctx.check_aubry_edges());
    push("limits.stabilization_within_4n2", ctx.check_stabilization());
    push("limits.conjugate_idempotence", ctx.check_conjugates());
    push("limits.inegh_bound", ctx.check_inegh(6));
    push("limits.peierl_attainment", ctx.check_attainment());
    push("limits.extremal_formula", Ok(ctx.check_extremal()));
    push("limits.aubry_of", ctx.check_aubry_of());
    push("limits.inf_solutions", ctx.check_inf_solutions());
    push("subsolution.strict_complement", ctx.check_strict());
    push("subsolution.max_strict", ctx.check_max_strict());
    push("subsolution.lemma_trivial", Ok(ctx.check_lemma_trivial()));
    push("subsolution.convex_calibration", ctx.check_convex_calibration());
    push("subsolution.in_between", Ok(ctx.check_in_between()));
    match ctx.check_metric() {
        Ok(None) => {}
        Ok(Some(w)) => push("models.lipschitz_and_apriori", Ok(w)),
        Err(e) => push("models.lipschitz_and_apriori", Err(e)),
    }
    match ctx.check_claims(claims) {
        Ok(list) => {
            for (name, w) in list {
                push(&name, Ok(w));
            }
        }
        Err(e) => push("claims.parse", Err(e)),
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    let summary = format!(
        "n = {}, mode = {}, alpha0 = {}, |A| = {}, {} checks, {} failed",
        inst.n(),
        inst.mode(),
        ctx.crit.alpha0,
        ctx.aubry.vertices.len(),
        checks.len(),
        failed
    );
    Ok(OracleReport { checks, summary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{gen_constant, gen_random_exact, gen_random_float};
    use crate::tropical::{rat, Rational};

    fn t3() -> CostInstance<Rational> {
        let r = |v: [i64; 3]| v.iter().map(|&x| rat(x, 1)).collect::<Vec<_>>();
        CostInstance::from_rows(vec![r([1, 0, 9]), r([0, 9, 9]), r([9, 9, 9])]).unwrap()
    }

    fn assert_clean(report: &OracleReport) {
        let bad: Vec<_> = report.failures().collect();
        assert!(bad.is_empty(), "{}: {bad:?}", report.summary);
    }

    #[test]
    fn small_instances_pass_every_check() {
        assert_clean(&verify_all(&t3()).unwrap());
        assert_clean(&verify_all(&gen_constant(4, rat(3, 2)).unwrap()).unwrap());
        for seed in 0..4 {
            let inst = gen_random_exact(5, seed, &rat(-2, 1), &rat(3, 1)).unwrap();
            assert_clean(&verify_all(&inst).unwrap());
        }
        assert_clean(&verify_all(&gen_random_float(4, 1, -1.0, 2.0).unwrap()).unwrap());
    }

    #[test]
    fn wrong_claims_are_caught() {
        let claims = Claims {
            alpha0: Some(json!("1")),
            h: Some(vec![
                vec![json!(0), json!(5), json!(1)],
                vec![json!(0), json!(0), json!(0)],
                vec![json!(0), json!(0), json!(9)],
            ]),
        };
        let r = verify_with(&t3(), &claims, 0, 5).unwrap();
        let failed: Vec<&str> = r.failures().map(|c| c.name.as_str()).collect();
        assert_eq!(failed, ["claims.alpha0", "claims.h_triangle", "claims.h_matches_barrier"]);
        assert!(r.failures().all(|c| c.witness.is_some()));
    }

    #[test]
    fn size_guard() {
        let inst = gen_constant(VERIFY_GUARD + 1, rat(0, 1)).unwrap();
        assert!(matches!(verify_all(&inst), Err(WkamError::SizeGuard { .. })));
    }
}
