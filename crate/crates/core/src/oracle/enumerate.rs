//! Exhaustive references: cycles, walks, bounded liminf and tight walks.

use crate::critical::CriticalData;
use crate::error::{Result, WkamError};
use crate::tropical::{CostInstance, Ext, Matrix, Scalar, ValueFunction};

pub const CYCLE_GUARD: usize = 10;
pub const WALK_POINT_GUARD: usize = 6;
pub const WALK_LENGTH_GUARD: usize = 6;
pub const TIGHT_WALK_GUARD: usize = 6;

fn guard(what: &str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        return Err(WkamError::SizeGuard { what: format!("{what} = {value}"), limit });
    }
    Ok(())
}

/// Calls `visit` on every simple cycle whose edges are all finite, each
/// once, starting at its smallest point.
fn for_each_simple_cycle<T: Scalar>(cost: &Matrix<Ext<T>>, mut visit: impl FnMut(&[usize])) {
    fn extend<T: Scalar>(
        cost: &Matrix<Ext<T>>,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        visit: &mut dyn FnMut(&[usize]),
    ) {
        let start = path[0];
        let last = *path.last().expect("nonempty");
        for next in start..cost.n() {
            if !cost[(last, next)].is_finite() {
                continue;
            }
            if next == start {
                visit(path);
            } else if !on_path[next] {
                on_path[next] = true;
                path.push(next);
                extend(cost, path, on_path, visit);
                path.pop();
                on_path[next] = false;
            }
        }
    }
    let n = cost.n();
    for s in 0..n {
        let mut on_path = vec![false; n];
        on_path[s] = true;
        extend(cost, &mut vec![s], &mut on_path, &mut visit);
    }
}

fn cycle_sum<T: Scalar>(cost: &Matrix<Ext<T>>, cycle: &[usize]) -> T {
    let mut total = T::zero();
    for (i, &x) in cycle.iter().enumerate() {
        let y = cycle[(i + 1) % cycle.len()];
        total = total + cost[(x, y)].finite().expect("finite edge").clone();
    }
    total
}

#[derive(Clone, Debug, PartialEq)]
pub struct CycleEnumeration<T> {
    pub min_mean: T,
    /// Every simple cycle attaining the minimum mean.
    pub attaining: Vec<Vec<usize>>,
    pub cycles_seen: usize,
}

/// Minimum mean over all simple cycles, by exhaustive enumeration.
pub fn enum_cycles<T: Scalar>(inst: &CostInstance<T>) -> Result<CycleEnumeration<T>> {
    guard("points", inst.n(), CYCLE_GUARD)?;
    let tol = inst.walk_tol();
    let mut best: Option<T> = None;
    let mut attaining: Vec<Vec<usize>> = Vec::new();
    let mut seen = 0;
    for_each_simple_cycle(inst.cost(), |cycle| {
        seen += 1;
        let mean = cycle_sum(inst.cost(), cycle) / T::from_int(cycle.len() as i64);
        match &best {
            Some(b) if tol.eq(&mean, b) => attaining.push(cycle.to_vec()),
            Some(b) if mean > *b => {}
            _ => {
                best = Some(mean);
                attaining = vec![cycle.to_vec()];
            }
        }
    });
    let min_mean = best.ok_or_else(|| WkamError::InvalidArgument("instance has no cycle".into()))?;
    Ok(CycleEnumeration { min_mean, attaining, cycles_seen: seen })
}

/// `c_n(x, y)` by recursive enumeration of all intermediate points.
pub fn enum_walks<T: Scalar>(inst: &CostInstance<T>, x: usize, y: usize, n: usize) -> Result<Ext<T>> {
    guard("points", inst.n(), WALK_POINT_GUARD)?;
    guard("walk length", n, WALK_LENGTH_GUARD)?;
    if n == 0 {
        return Err(WkamError::ZeroPower);
    }
    fn rec<T: Scalar>(inst: &CostInstance<T>, at: usize, y: usize, left: usize) -> Ext<T> {
        if left == 1 {
            return inst.c(at, y).clone();
        }
        let mut best = Ext::Inf;
        for z in 0..inst.n() {
            let cand = inst.c(at, z).plus(&rec(inst, z, y, left - 1));
            if cand < best {
                best = cand;
            }
        }
        best
    }
    Ok(rec(inst, x, y, n))
}

#[derive(Clone, Debug, PartialEq)]
pub struct LiminfReport<T> {
    /// `min_{k in [N/2, N]} c_k + k alpha0`
    pub h: Matrix<T>,
    /// Whether the tail minimum is the same for every start in `[N/4, N/2]`.
    pub stabilized: bool,
}

/// Bounded-horizon approximation of `liminf_n c_n + n alpha0`.
pub fn liminf_barrier_bounded<T: Scalar>(
    inst: &CostInstance<T>,
    crit: &CriticalData<T>,
    horizon: usize,
) -> Result<LiminfReport<T>> {
    if horizon < 2 {
        return Err(WkamError::InvalidArgument("horizon must be at least 2".into()));
    }
    let c = inst.dense("liminf_barrier_bounded")?;
    let n = inst.n();
    // walk[k - 1] = c_k + k alpha0, built by appending one step at a time
    let mut walk: Vec<Matrix<T>> = vec![c.map(|v| v.clone() + crit.alpha0.clone())];
    for _ in 1..horizon {
        let prev = walk.last().expect("nonempty");
        let mut next = prev.clone();
        for x in 0..n {
            for y in 0..n {
                let mut best: Option<T> = None;
                for z in 0..n {
                    let cand = prev[(x, z)].clone() + c[(z, y)].clone() + crit.alpha0.clone();
                    if best.as_ref().is_none_or(|b| cand < *b) {
                        best = Some(cand);
                    }
                }
                next[(x, y)] = best.expect("n >= 1");
            }
        }
        walk.push(next);
    }
    // suffix[k] = min over walks of length >= k + 1
    let mut suffix = walk.clone();
    for k in (0..horizon - 1).rev() {
        let next = suffix[k + 1].clone();
        for ((x, y), v) in next.iter() {
            if *v < suffix[k][(x, y)] {
                suffix[k][(x, y)] = v.clone();
            }
        }
    }
    let half = horizon / 2;
    let h = suffix[half - 1].clone();
    let tol = inst.walk_tol();
    let stabilized = ((horizon / 4).max(1)..half).all(|from| suffix[from - 1].iter().all(|(p, v)| tol.eq(v, &h[p])));
    Ok(LiminfReport { h, stabilized })
}

/// Aubry sets from zero-weight simple cycles of the reduced cost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceAubry {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

pub fn enum_zero_cycles<T: Scalar>(inst: &CostInstance<T>, crit: &CriticalData<T>) -> Result<ReferenceAubry> {
    guard("points", inst.n(), CYCLE_GUARD)?;
    let reduced = inst.cost().map(|v| v.plus_scalar(&crit.alpha0));
    let tol = inst.walk_tol();
    let mut vertices = vec![false; inst.n()];
    let mut edges = Vec::new();
    for_each_simple_cycle(&reduced, |cycle| {
        if tol.is_zero(&cycle_sum(&reduced, cycle)) {
            for (i, &x) in cycle.iter().enumerate() {
                vertices[x] = true;
                edges.push((x, cycle[(i + 1) % cycle.len()]));
            }
        }
    });
    edges.sort_unstable();
    edges.dedup();
    Ok(ReferenceAubry { vertices: (0..inst.n()).filter(|&x| vertices[x]).collect(), edges })
}

/// `A_u` and `A^_u` from tight walks of `u`: a point is in `A_u` when some
/// tight walk of length `n` ends at it and some tight walk of length `n`
/// starts at it (so tight walks extend forever in both directions); a
/// tight pair `(x, y)` is in `A^_u` when such walks end at `x` and start at `y`.
pub fn tight_walk_aubry<T: Scalar>(
    inst: &CostInstance<T>,
    crit: &CriticalData<T>,
    u: &ValueFunction<T>,
) -> Result<ReferenceAubry> {
    let n = inst.n();
    guard("points", n, TIGHT_WALK_GUARD)?;
    let c = inst.dense("tight_walk_aubry")?;
    inst.check_len(u.len())?;
    let u = u.to_finite()?;
    let tol = inst.walk_tol();
    let tight = |x: usize, y: usize| tol.eq(&(u[y].clone() - u[x].clone()), &(c[(x, y)].clone() + crit.alpha0.clone()));

    fn walk(tight: &dyn Fn(usize, usize) -> bool, n: usize, at: usize, left: usize, forward: bool) -> bool {
        left == 0
            || (0..n).any(|z| {
                let ok = if forward { tight(at, z) } else { tight(z, at) };
                ok && walk(tight, n, z, left - 1, forward)
            })
    }
    let back: Vec<bool> = (0..n).map(|x| walk(&tight, n, x, n, false)).collect();
    let fwd: Vec<bool> = (0..n).map(|x| walk(&tight, n, x, n, true)).collect();
    let vertices = (0..n).filter(|&x| back[x] && fwd[x]).collect();
    let edges = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| back[x] && fwd[y] && tight(x, y))
        .collect();
    Ok(ReferenceAubry { vertices, edges })
}
