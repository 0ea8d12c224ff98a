//! Extended-real min-plus arithmetic and the Lax-Oleinik operators
//!
//! `T^- u(x) = min_y u(y) + c(y, x)` is a tropical matrix-vector product.
//! `T^+ u(x) = max_y u(y) - c(x, y)` is evaluated as `-T^-_{c'}(-u)` where
//! `c'(x, y) = c(y, x)`, so both operators share one kernel.

pub(crate) mod kernel;
mod instance;
mod matrix;
mod scalar;

pub use instance::{CostInstance, NumericMode, ValueFunction};
pub use matrix::Matrix;
pub use scalar::{parse_rational, rat, Ext, MinPlus, Rational, Scalar, Tol, DEFAULT_TOLERANCE};

use crate::error::{Result, WkamError};
use crate::potential::{PotentialKind, PotentialTable};

fn check_input<T: Scalar>(inst: &CostInstance<T>, u: &ValueFunction<T>) -> Result<()> {
    inst.check_len(u.len())?;
    u.to_finite().map(|_| ())
}

/// `T^- u(x) = min_y u(y) + c(y, x)`.
pub fn lax_oleinik_neg<T: Scalar>(inst: &CostInstance<T>, u: &ValueFunction<T>) -> Result<ValueFunction<T>> {
    check_input(inst, u)?;
    let out = kernel::neg_kernel(inst.cost(), false, &u.values);
    Ok(ValueFunction::new(out, format!("T-({})", u.tag)))
}

/// `T^+ u(x) = max_y u(y) - c(x, y)`, computed as `-T^-_{reverse}(-u)`.
///
/// Fails when some point has no finite outgoing edge (the supremum would be `-inf`).
pub fn lax_oleinik_pos<T: Scalar>(inst: &CostInstance<T>, u: &ValueFunction<T>) -> Result<ValueFunction<T>> {
    check_input(inst, u)?;
    let reversed = reverse_cost(inst)?;
    let neg_u = ValueFunction::new(
        u.values.iter().map(Ext::checked_neg).collect::<Result<Vec<_>>>()?,
        u.tag.clone(),
    );
    let inner = lax_oleinik_neg(&reversed, &neg_u)?;
    let values = inner.values.iter().map(Ext::checked_neg).collect::<Result<Vec<_>>>()?;
    Ok(ValueFunction::new(values, format!("T+({})", u.tag)))
}

/// The time-reversed cost `c'(x, y) = c(y, x)`.
pub fn reverse_cost<T: Scalar>(inst: &CostInstance<T>) -> Result<CostInstance<T>> {
    inst.with_cost(inst.cost().transpose())
}

/// `c_n(x, y)`: cheapest chain of exactly `n` steps, as an `n`-fold min-plus power.
pub fn cost_power<T: Scalar>(inst: &CostInstance<T>, n: usize) -> Result<PotentialTable<T>> {
    if n == 0 {
        return Err(WkamError::ZeroPower);
    }
    let mut acc = inst.cost().clone();
    for _ in 1..n {
        acc = kernel::min_plus_product(&acc, inst.cost());
    }
    Ok(PotentialTable { entries: acc, kind: PotentialKind::CostPower(n), alpha0: None })
}

/// Min-plus product of two tables of the same size.
pub fn min_plus_product<E: MinPlus>(a: &Matrix<E>, b: &Matrix<E>) -> Result<Matrix<E>> {
    if a.n() != b.n() {
        return Err(WkamError::InvalidArgument(format!("sizes {} and {} differ", a.n(), b.n())));
    }
    Ok(kernel::min_plus_product(a, b))
}
