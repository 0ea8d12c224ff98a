use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::barrier::peierls_barrier;
use crate::critical::{first_violation, solve_subsolution, CriticalData, SubsolutionOutcome};
use crate::error::{Result, WkamError};
use crate::potential::{mane_dense, phi_one_dense};
use crate::tropical::kernel::{t_neg_a, t_pos_a};
use crate::tropical::{CostInstance, Scalar, ValueFunction};

/// Critically dominated functions drawn as random convex combinations of
/// `phi_x`, `phi^x`, `h_x`, `h^x` and a Bellman-Ford sub-solution, shifted
/// by a constant and sometimes pushed part of the way towards
/// `T^- u + alpha0` or `T^+ u - alpha0`.
pub fn subsolution_sampler<T: Scalar>(
    inst: &CostInstance<T>,
    crit: &CriticalData<T>,
    seed: u64,
    count: usize,
) -> Result<Vec<ValueFunction<T>>> {
    let c = inst.dense("subsolution_sampler")?;
    let n = inst.n();
    let phi = mane_dense(&phi_one_dense(inst, crit)?);
    let h = peierls_barrier(inst, crit)?.dense()?;
    let mut family: Vec<Vec<T>> = Vec::with_capacity(4 * n + 1);
    for x in 0..n {
        family.push(phi.row(x).to_vec());
        family.push(phi.column(x).map(|v| -v.clone()).collect());
        family.push(h.row(x).to_vec());
        family.push(h.column(x).map(|v| -v.clone()).collect());
    }
    if let SubsolutionOutcome::Feasible(u) = solve_subsolution(inst, &crit.alpha0)? {
        family.push(u.to_finite()?);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let parts = rng.gen_range(1..=3usize);
        let picks: Vec<(usize, i64)> =
            (0..parts).map(|_| (rng.gen_range(0..family.len()), rng.gen_range(1..=4i64))).collect();
        let total: i64 = picks.iter().map(|p| p.1).sum();
        let shift = T::from_ratio(rng.gen_range(-8..=8i64), 4);
        let mut u: Vec<T> = (0..n)
            .map(|y| {
                picks.iter().fold(shift.clone(), |acc, &(f, w)| acc + T::from_ratio(w, total) * family[f][y].clone())
            })
            .collect();
        match rng.gen_range(0..3u8) {
            1 => {
                let theta = T::from_ratio(rng.gen_range(0..=4i64), 4);
                let up = t_neg_a(c, &u, &crit.alpha0);
                u = u.iter().zip(&up).map(|(a, b)| a.clone() + theta.clone() * (b.clone() - a.clone())).collect();
            }
            2 => {
                let theta = T::from_ratio(rng.gen_range(0..=4i64), 4);
                let down = t_pos_a(c, &u, &crit.alpha0);
                u = u.iter().zip(&down).map(|(a, b)| a.clone() + theta.clone() * (b.clone() - a.clone())).collect();
            }
            _ => {}
        }
        if let Some((x, y)) = first_violation(inst.cost(), &u, &crit.alpha0, inst.walk_tol()) {
            return Err(WkamError::ConstructionFailed(format!("sample {i} is not dominated at ({x}, {y})")));
        }
        out.push(ValueFunction::from_finite(u, format!("sample{i}")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::critical::{critical_value, is_dominated};
    use crate::models::gen_random_exact;
    use crate::tropical::rat;

    #[test]
    fn samples_are_dominated_and_deterministic() {
        let inst = gen_random_exact(5, 11, &rat(-2, 1), &rat(3, 1)).unwrap();
        let crit = critical_value(&inst).unwrap();
        let a = subsolution_sampler(&inst, &crit, 3, 40).unwrap();
        assert_eq!(a.len(), 40);
        assert!(a.iter().all(|u| is_dominated(&inst, u, &crit.alpha0).unwrap().holds()));
        assert_eq!(a, subsolution_sampler(&inst, &crit, 3, 40).unwrap());
        assert_ne!(a, subsolution_sampler(&inst, &crit, 4, 40).unwrap());
    }
}
