//! Evaluation of free-operad elements in the endomorphism operad of a
//! graded vector space.

use std::collections::BTreeMap;

use super::{FreeOperadElement, GenId, Resolution, Signature, Tree};
use crate::error::{Error, Result};
use crate::graded::{MultilinearMap, Space};
use crate::homotopy_assoc::{UnsuspendedAInfinity, UnsuspendedDerivationA};
use crate::homotopy_lie::{UnsuspendedDerivationL, UnsuspendedLInfinity};
use crate::signs::{Permutation, Sign};

/// The image of `e` under the operad morphism sending each generator to its
/// assigned map. Each tree is evaluated as the planar composite of its
/// vertices, then its leaf labels route the arguments.
pub fn evaluate(
    e: &FreeOperadElement,
    assign: &BTreeMap<GenId, MultilinearMap>,
    space: &Space,
) -> Result<MultilinearMap> {
    let sig = e.signature();
    for (gen, f) in assign {
        let spec = sig.get(*gen);
        if f.arity() != spec.arity {
            return Err(Error::ArityMismatch {
                expected: spec.arity,
                got: f.arity(),
            });
        }
        if f.degree() != spec.degree && !f.is_zero() {
            return Err(Error::DegreeMismatch {
                expected: spec.degree,
                got: f.degree(),
            });
        }
    }
    let mut out = MultilinearMap::zero(space, e.arity(), e.degree());
    for (tree, coeff) in e.terms().iter() {
        let planar = planar_value(sig, tree, assign, space)?;
        let routed = planar
            .permute_inputs(&Permutation::new(tree.leaves())?)?
            .with_degree(e.degree())?;
        out.add_assign(&routed.scaled(coeff))?;
    }
    Ok(out)
}

fn planar_value(
    sig: &Signature,
    tree: &Tree,
    assign: &BTreeMap<GenId, MultilinearMap>,
    space: &Space,
) -> Result<MultilinearMap> {
    match tree {
        Tree::Leaf(_) => Ok(MultilinearMap::identity(space)),
        Tree::Vertex { gen, children } => {
            let spec = sig.get(*gen);
            let f = assign
                .get(gen)
                .ok_or_else(|| Error::MissingAssignment(spec.name.clone()))?;
            // A zero map may carry any degree; pin it to the generator's.
            let mut value = f.with_degree(spec.degree)?;
            let mut slot = 1;
            for child in children {
                if let Tree::Vertex { .. } = child {
                    value = value.compose_at(slot, &planar_value(sig, child, assign, space)?)?;
                }
                slot += child.arity();
            }
            Ok(value)
        }
    }
}

impl Resolution {
    /// `xⁱ ↦ mᵢ`, `x̄ⁱ ↦ θᵢ` and `φ ↦ (−1)^k θ_1`, the assignment under
    /// which an algebra over the associative resolution is an A∞ algebra
    /// with a strong homotopy derivation.
    pub fn assignment_ass(
        &self,
        m: &UnsuspendedAInfinity,
        theta: &UnsuspendedDerivationA,
    ) -> BTreeMap<GenId, MultilinearMap> {
        self.assignment(|n| m.m(n), |n| theta.theta(n), Sign::pow(self.k()))
    }

    /// `xⁱ ↦ lᵢ`, `x̄ⁱ ↦ θᵢ` and `φ ↦ (−1)^{k+1} θ_1`.
    pub fn assignment_lie(
        &self,
        l: &UnsuspendedLInfinity,
        theta: &UnsuspendedDerivationL,
    ) -> BTreeMap<GenId, MultilinearMap> {
        self.assignment(|n| l.l(n), |n| theta.theta(n), -Sign::pow(self.k()))
    }

    fn assignment(
        &self,
        x: impl Fn(usize) -> MultilinearMap,
        theta: impl Fn(usize) -> MultilinearMap,
        phi_sign: Sign,
    ) -> BTreeMap<GenId, MultilinearMap> {
        let mut out = BTreeMap::new();
        for n in 2..=self.max_arity() {
            out.insert(self.x(n), x(n));
            out.insert(self.xbar(n), theta(n));
        }
        out.insert(self.phi(), theta(1).signed(phi_sign));
        out
    }
}
