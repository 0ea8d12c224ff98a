use num::{BigInt, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::io::AnyInstance;
use crate::error::{Result, WkamError};
use crate::tropical::{parse_rational, rat, CostInstance, Matrix, NumericMode, Rational, Scalar};

/// Number of grid steps between `lo` and `hi` for exact random costs.
pub const RANDOM_GRID: i64 = 12;

/// `c == k` on `n` points.
pub fn gen_constant<T: Scalar>(n: usize, k: T) -> Result<CostInstance<T>> {
    if n == 0 {
        return Err(WkamError::EmptyInstance);
    }
    CostInstance::from_rows(vec![vec![k; n]; n])
}

/// Costs drawn uniformly from the grid `lo + (hi - lo) j / 12`, `j = 0..=12`.
pub fn gen_random_exact(n: usize, seed: u64, lo: &Rational, hi: &Rational) -> Result<CostInstance<Rational>> {
    check_range(n, lo <= hi)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let step = (hi - lo) / rat(RANDOM_GRID, 1);
    let m = Matrix::from_fn(n, |_, _| lo + &step * rat(rng.gen_range(0..=RANDOM_GRID), 1));
    CostInstance::from_finite(m)
}

/// Costs drawn uniformly from `[lo, hi]`.
pub fn gen_random_float(n: usize, seed: u64, lo: f64, hi: f64) -> Result<CostInstance<f64>> {
    check_range(n, lo <= hi && lo.is_finite() && hi.is_finite())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = Matrix::from_fn(n, |_, _| if lo == hi { lo } else { rng.gen_range(lo..=hi) });
    CostInstance::from_finite(m)
}

pub fn gen_random(n: usize, seed: u64, lo: &Rational, hi: &Rational, mode: NumericMode) -> Result<AnyInstance> {
    match mode {
        NumericMode::Exact => Ok(AnyInstance::Exact(gen_random_exact(n, seed, lo, hi)?)),
        NumericMode::Float { tolerance } => Ok(AnyInstance::Float(
            gen_random_float(n, seed, lo.to_f64(), hi.to_f64())?.with_tolerance(tolerance)?,
        )),
    }
}

fn check_range(n: usize, ok: bool) -> Result<()> {
    if n == 0 {
        return Err(WkamError::EmptyInstance);
    }
    if !ok {
        return Err(WkamError::InvalidArgument("random range needs finite lo <= hi".into()));
    }
    Ok(())
}

/// Arc distance between grid points `i` and `j` on a circle of length 1.
pub fn circle_distance(m: usize, i: usize, j: usize) -> Rational {
    let d = i.abs_diff(j);
    rat(d.min(m - d) as i64, m as i64)
}

pub fn circle_metric(m: usize) -> Matrix<Rational> {
    Matrix::from_fn(m, |i, j| circle_distance(m, i, j))
}

/// Frenkel-Kontorova instance: `c(x, y) = lambda d(x, y)^2 + V(y)` on `m`
/// equispaced circle points, with the arc metric attached.
pub fn gen_fk(m: usize, lambda: &Rational, potential: &[Rational]) -> Result<CostInstance<Rational>> {
    if m == 0 {
        return Err(WkamError::EmptyInstance);
    }
    if potential.len() != m {
        return Err(WkamError::InvalidArgument(format!("potential has {} values for {m} points", potential.len())));
    }
    if lambda.is_negative() {
        return Err(WkamError::InvalidArgument("lambda must be nonnegative".into()));
    }
    if let Some(i) = potential.iter().position(|v| v.is_negative()) {
        return Err(WkamError::InvalidArgument(format!("potential is negative at {i}")));
    }
    if !potential.iter().any(|v| *v == rat(0, 1)) {
        return Err(WkamError::InvalidArgument("potential must have minimum 0".into()));
    }
    let cost = Matrix::from_fn(m, |x, y| {
        let d = circle_distance(m, x, y);
        lambda * &d * &d + &potential[y]
    });
    CostInstance::from_finite(cost)?.with_metric(circle_metric(m))
}

/// Potential profiles for [`gen_fk`]:
///
/// * `zero`: `V == 0`
/// * `cos`: `1 - cos(2 pi i / m)` rounded to 6 decimals (single zero at 0)
/// * `quad`: `d(i, 0)^2`
/// * `double`: `min(d(i, 0), d(i, m/2))^2` (zeros at 0 and `m/2`)
/// * `list:v0,v1,...`: explicit values
pub fn potential_profile(spec: &str, m: usize) -> Result<Vec<Rational>> {
    let spec = spec.trim();
    if let Some(list) = spec.strip_prefix("list:") {
        return list.split(',').map(parse_rational).collect();
    }
    match spec {
        "zero" => Ok(vec![rat(0, 1); m]),
        "cos" => Ok((0..m)
            .map(|i| {
                if i == 0 {
                    return rat(0, 1);
                }
                let v = 1.0 - (2.0 * std::f64::consts::PI * i as f64 / m as f64).cos();
                let micro = (v * 1e6).round() as i64;
                Rational::new(BigInt::from(micro), BigInt::from(1_000_000))
            })
            .collect()),
        "quad" => Ok((0..m).map(|i| { let d = circle_distance(m, i, 0); &d * &d }).collect()),
        "double" => Ok((0..m)
            .map(|i| {
                let d = circle_distance(m, i, 0).min(circle_distance(m, i, m / 2));
                &d * &d
            })
            .collect()),
        other => Err(WkamError::Parse(format!("unknown potential spec {other:?}"))),
    }
}
