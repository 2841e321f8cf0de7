use std::sync::Arc;

use super::{same_space, GradedVectorSpace, MultilinearMap, Space};
use crate::error::{Error, Result};
use crate::signs::Sign;

/// A space `A` together with its desuspension `V = ↓A` (same labels,
/// degrees lowered by one).
///
/// A map `f: A^{⊗n} → A` corresponds to `f' = ↓ f ↑^{⊗n}`. Evaluating
/// `↑^{⊗n}` on `v_1 ⊗ … ⊗ v_n` moves the `t`-th suspension symbol past
/// `v_1, …, v_{t−1}`, so
///
/// `f'(v_1, …, v_n) = (−1)^{Σ_t (n−t)|v_t|} ↓f(↑v_1, …, ↑v_n)`
///
/// with `|v_t|` the degree in `V`. The degree changes by `n − 1`.
#[derive(Clone, Debug)]
pub struct SuspensionPair {
    unsuspended: Space,
    suspended: Space,
}

impl SuspensionPair {
    pub fn new(unsuspended: &Space) -> Self {
        Self {
            unsuspended: unsuspended.clone(),
            suspended: Arc::new(unsuspended.desuspension()),
        }
    }

    /// Pairs `A` with an existing `V`, checking that `V = ↓A`.
    pub fn from_spaces(unsuspended: &Space, suspended: &Space) -> Result<Self> {
        let expected = unsuspended.desuspension();
        if **suspended != expected {
            return Err(Error::NotSuspensionPair);
        }
        Ok(Self {
            unsuspended: unsuspended.clone(),
            suspended: suspended.clone(),
        })
    }

    /// The space `A`.
    pub fn unsuspended(&self) -> &Space {
        &self.unsuspended
    }

    /// The space `V = ↓A`.
    pub fn suspended(&self) -> &Space {
        &self.suspended
    }

    /// The sign `(−1)^{Σ_t (n−t)|v_t|}` for a tuple of basis indices, with
    /// `V`-degrees.
    pub fn sign(&self, tuple: &[usize]) -> Sign {
        let n = tuple.len() as i64;
        let exponent: i64 = tuple
            .iter()
            .enumerate()
            .map(|(t, &i)| (n - 1 - t as i64) * self.suspended.degree(i))
            .sum();
        Sign::pow(exponent)
    }

    /// `f ↦ ↓ f ↑^{⊗n}`.
    pub fn suspend(&self, f: &MultilinearMap) -> Result<MultilinearMap> {
        if !same_space(f.space(), &self.unsuspended) {
            return Err(Error::NotSuspensionPair);
        }
        let n = f.arity();
        self.transport(f, &self.suspended, f.degree() + n as i64 - 1)
    }

    /// Inverse of [`SuspensionPair::suspend`].
    pub fn desuspend(&self, f: &MultilinearMap) -> Result<MultilinearMap> {
        if !same_space(f.space(), &self.suspended) {
            return Err(Error::NotSuspensionPair);
        }
        let n = f.arity();
        self.transport(f, &self.unsuspended, f.degree() - n as i64 + 1)
    }

    fn transport(&self, f: &MultilinearMap, target: &Space, degree: i64) -> Result<MultilinearMap> {
        MultilinearMap::new(
            target,
            f.arity(),
            degree,
            f.entries().map(|(t, v)| (t.clone(), v.signed(self.sign(t)))),
        )
    }
}

impl GradedVectorSpace {
    /// Pairs this space with its desuspension.
    pub fn suspension_pair(self: &Arc<Self>) -> SuspensionPair {
        SuspensionPair::new(self)
    }
}
