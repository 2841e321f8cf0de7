use crate::error::Result;
use crate::family::MapFamily;
use crate::graded::{Space, SymmetryMode};
use crate::homotopy_assoc::{AInfinityStructure, SHDerivationA};
use crate::homotopy_lie::{LInfinityStructure, SHDerivationL};
use crate::lincomb::LinComb;
use crate::signs::{koszul_sign_unchecked, Permutation};

use super::{SymWord, WordElement};

/// `χ(v_1 ⋯ v_n) = Σ_{σ ∈ Σ_n} ε(σ) v_{σ(1)} ⊗ … ⊗ v_{σ(n)}`.
pub fn chi(space: &Space, word: &SymWord) -> WordElement {
    let factors = word.factors();
    let degrees = space.degrees_of(factors);
    let mut out = LinComb::zero();
    for p in Permutation::all(factors.len()) {
        let sign = koszul_sign_unchecked(p.as_slice(), &degrees);
        out.add_term(p.act(factors), sign.to_rational());
    }
    out
}

fn symmetrize_family(family: &MapFamily) -> MapFamily {
    let maps = family
        .maps()
        .iter()
        .map(|f| f.symmetrize(SymmetryMode::Symmetric))
        .collect();
    MapFamily::new(family.space(), family.degree(), maps).expect("shapes preserved")
}

/// `l_n := m_n ∘ χ`.
pub fn symmetrize_structure(m: &AInfinityStructure) -> LInfinityStructure {
    LInfinityStructure::from_family(symmetrize_family(m.family()))
        .expect("symmetrized maps are symmetric")
}

/// `θ'_q := θ_q ∘ χ`.
pub fn symmetrize_derivation(theta: &SHDerivationA) -> Result<SHDerivationL> {
    SHDerivationL::from_family(symmetrize_family(theta.family()))
}
