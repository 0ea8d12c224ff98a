//! Length-space, growth and Lipschitz-in-the-large validators on metric instances.

use std::collections::BTreeMap;

use crate::error::{Result, WkamError};
use crate::tropical::{CostInstance, Matrix, Scalar, Tol, ValueFunction, DEFAULT_TOLERANCE};

fn tol_for<T: Scalar>() -> Tol {
    Tol(if T::EXACT { 0.0 } else { DEFAULT_TOLERANCE })
}

#[derive(Clone, Debug, PartialEq)]
pub struct LengthSpaceReport<T> {
    pub b: T,
    pub k: T,
    pub ok: bool,
    /// For each ordered pair of distinct points, a chain with steps `<= K`,
    /// total length `<= B d(x, y)` and the fewest possible steps.
    pub witness_chains: BTreeMap<(usize, usize), Vec<usize>>,
    /// Largest `floor(2 B d(x, y) / K + 1)` over all pairs.
    pub max_chain_length_bound: usize,
    /// Pairs with no admissible chain or a chain longer than the bound.
    pub failures: Vec<(usize, usize)>,
}

/// Searches, for every pair, the chain with the fewest `<= K` steps whose
/// total length is at most `B d(x, y)`.
pub fn check_length_space<T: Scalar>(metric: &Matrix<T>, b: &T, k: &T) -> Result<LengthSpaceReport<T>> {
    if *b < T::one() {
        return Err(WkamError::InvalidArgument("B must be at least 1".into()));
    }
    if *k <= T::zero() {
        return Err(WkamError::InvalidArgument("K must be positive".into()));
    }
    let n = metric.n();
    let tol = tol_for::<T>();
    let step_ok = |x: usize, y: usize| x != y && tol.le(&metric[(x, y)], k);

    let mut witness_chains = BTreeMap::new();
    let mut failures = Vec::new();
    let mut max_bound = 0usize;
    for x in 0..n {
        // best[y]: shortest total length from x to y with at most `s` steps
        let mut best: Vec<Option<(T, Vec<usize>)>> = (0..n).map(|y| (y == x).then(|| (T::zero(), vec![x]))).collect();
        let mut found: Vec<Option<Vec<usize>>> = vec![None; n];
        for _ in 0..n {
            let mut next = best.clone();
            for z in 0..n {
                let Some((lz, chain)) = &best[z] else { continue };
                for y in 0..n {
                    if !step_ok(z, y) {
                        continue;
                    }
                    let cand = lz.clone() + metric[(z, y)].clone();
                    let better = match &next[y] {
                        None => true,
                        Some((ly, _)) => tol.lt(&cand, ly),
                    };
                    if better {
                        let mut c = chain.clone();
                        c.push(y);
                        next[y] = Some((cand, c));
                    }
                }
            }
            best = next;
            for y in 0..n {
                if y == x || found[y].is_some() {
                    continue;
                }
                if let Some((ly, chain)) = &best[y] {
                    if tol.le(ly, &(b.clone() * metric[(x, y)].clone())) {
                        found[y] = Some(chain.clone());
                    }
                }
            }
        }
        for y in (0..n).filter(|&y| y != x) {
            let bound = T::from_int(2) * b.clone() * metric[(x, y)].clone() / k.clone() + T::one();
            max_bound = max_bound.max((bound.to_f64() + 1e-9).floor() as usize);
            match found[y].take() {
                Some(chain) => {
                    let steps = T::from_int(chain.len() as i64 - 1);
                    if !tol.le(&steps, &bound) {
                        failures.push((x, y));
                    }
                    witness_chains.insert((x, y), chain);
                }
                None => failures.push((x, y)),
            }
        }
    }
    Ok(LengthSpaceReport {
        b: b.clone(),
        k: k.clone(),
        ok: failures.is_empty(),
        witness_chains,
        max_chain_length_bound: max_bound,
        failures,
    })
}

fn metric_of<T: Scalar>(inst: &CostInstance<T>) -> Result<&Matrix<T>> {
    inst.metric().ok_or(WkamError::NoMetric)
}

/// Tight `C(k) = max_{x, y} k d(x, y) - c(x, y)`.
pub fn growth_c<T: Scalar>(inst: &CostInstance<T>, k: &T) -> Result<T> {
    let d = metric_of(inst)?;
    let c = inst.dense("growth_constants")?;
    Ok(c.iter()
        .map(|(p, cv)| k.clone() * d[p].clone() - cv.clone())
        .reduce(T::max_of)
        .expect("n >= 1"))
}

/// Tight `A(R) = max {c(x, y) : d(x, y) <= R}`.
pub fn growth_a<T: Scalar>(inst: &CostInstance<T>, r: &T) -> Result<T> {
    let d = metric_of(inst)?;
    let c = inst.dense("growth_constants")?;
    let tol = tol_for::<T>();
    c.iter()
        .filter(|(p, _)| tol.le(&d[*p], r))
        .map(|(_, v)| v.clone())
        .reduce(T::max_of)
        .ok_or_else(|| WkamError::InvalidArgument("radius must be nonnegative".into()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport<T> {
    pub c_of_k: Vec<(T, T)>,
    pub a_of_r: Vec<(T, T)>,
}

pub fn growth_constants<T: Scalar>(inst: &CostInstance<T>, ks: &[T], rs: &[T]) -> Result<GrowthReport<T>> {
    let c_of_k = ks.iter().map(|k| Ok((k.clone(), growth_c(inst, k)?))).collect::<Result<_>>()?;
    let a_of_r = rs.iter().map(|r| Ok((r.clone(), growth_a(inst, r)?))).collect::<Result<_>>()?;
    Ok(GrowthReport { c_of_k, a_of_r })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LipschitzCheck {
    pub violation: Option<(usize, usize)>,
}

impl LipschitzCheck {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// `|u(x) - u(y)| <= k d(x, y) + b` for all pairs.
pub fn lipschitz_large_check<T: Scalar>(
    inst: &CostInstance<T>,
    u: &ValueFunction<T>,
    k: &T,
    b: &T,
) -> Result<LipschitzCheck> {
    let d = metric_of(inst)?;
    inst.check_len(u.len())?;
    let u = u.to_finite()?;
    let tol = inst.walk_tol();
    let violation = d
        .iter()
        .find(|((x, y), dxy)| {
            let gap = (u[*x].clone() - u[*y].clone()).abs_val();
            !tol.le(&gap, &(k.clone() * (*dxy).clone() + b.clone()))
        })
        .map(|(p, _)| p);
    Ok(LipschitzCheck { violation })
}

#[derive(Clone, Debug, PartialEq)]
pub struct LipConstants<T> {
    pub k: T,
    pub b: T,
}

/// Constants `k = 2 (A(K) + alpha) B / K` and `b = A(K) + alpha` valid for
/// every `alpha`-dominated function on a `B`-length space at scale `K`.
pub fn lip_constants<T: Scalar>(inst: &CostInstance<T>, alpha: &T, b_len: &T, k_scale: &T) -> Result<LipConstants<T>> {
    if *k_scale <= T::zero() {
        return Err(WkamError::InvalidArgument("K must be positive".into()));
    }
    let base = growth_a(inst, k_scale)? + alpha.clone();
    Ok(LipConstants {
        k: T::from_int(2) * base.clone() * b_len.clone() / k_scale.clone(),
        b: base,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct AprioriReport<T> {
    pub radius: T,
    /// `(x, y)` with `y` minimizing `u(y) + c(y, x)` but `d(y, x) > radius`.
    pub violation: Option<(usize, usize)>,
}

/// Checks that the minimizers of `u(y) + c(y, x)` stay within
/// `D = (A(0) + C(2k) + b) / k` of `x` for a function with Lipschitz-in-the-large
/// constants `(k, b)` (`k = 0` is treated as `k = 1`).
pub fn apriori_check<T: Scalar>(
    inst: &CostInstance<T>,
    u: &ValueFunction<T>,
    lip: &LipConstants<T>,
) -> Result<AprioriReport<T>> {
    let d = metric_of(inst)?;
    let c = inst.dense("apriori_check")?;
    inst.check_len(u.len())?;
    let u = u.to_finite()?;
    let k = if lip.k > T::zero() { lip.k.clone() } else { T::one() };
    let radius = (growth_a(inst, &T::zero())? + growth_c(inst, &(T::from_int(2) * k.clone()))? + lip.b.clone()) / k;
    let tol = inst.walk_tol();
    let n = inst.n();
    let mut violation = None;
    'outer: for x in 0..n {
        let vals: Vec<T> = (0..n).map(|y| u[y].clone() + c[(y, x)].clone()).collect();
        let best = vals.iter().cloned().reduce(T::min_of).expect("n >= 1");
        for y in 0..n {
            if tol.eq(&vals[y], &best) && !tol.le(&d[(y, x)], &radius) {
                violation = Some((x, y));
                break 'outer;
            }
        }
    }
    Ok(AprioriReport { radius, violation })
}
