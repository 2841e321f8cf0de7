//! The tensor coalgebra `T^c(V)`, its unital version, and the symmetric
//! coalgebra `S^c(V)`; coderivations stored through their projections.
//!
//! A coderivation acts on words lazily: nothing of the lift is stored
//! beyond the projection family `{f_n}` (and `f_0` in the unital case).

mod symmetrize;

use std::fmt;

pub use symmetrize::{chi, symmetrize_derivation, symmetrize_structure};

use crate::error::{Error, Result};
use crate::family::MapFamily;
use crate::graded::{same_space, GradedVector, MultilinearMap, Space, SymmetryMode};
use crate::homotopy_assoc::{element_map, AInfinityStructure, SHDerivationA};
use crate::homotopy_lie::{LInfinityStructure, SHDerivationL};
use crate::lincomb::{LinComb, Rational};
use crate::signs::{koszul_sign_unchecked, unshuffles, Permutation, Sign};

/// A word `v_1 ⊗ … ⊗ v_n` of basis indices. The empty word is the unit of
/// the unital coalgebra.
pub type TensorWord = Vec<usize>;

/// A linear combination of words; for the symmetric coalgebra every word is
/// kept in canonical order.
pub type WordElement = LinComb<Vec<usize>>;

/// A word of `S^c(V)` in canonical order: factors sorted by
/// `(degree, label)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymWord(Vec<usize>);

impl SymWord {
    /// Canonical form of `v_{t_1} ⋯ v_{t_n}` and the Koszul sign relating the
    /// two orders; `None` when an odd factor repeats (the word is zero).
    pub fn canonical(space: &Space, factors: &[usize]) -> Option<(SymWord, Sign)> {
        let keys: Vec<(i64, &str)> = factors
            .iter()
            .map(|&i| (space.degree(i), space.label(i)))
            .collect();
        let p = Permutation::sorting(&keys);
        let sorted = p.act(factors);
        if sorted
            .windows(2)
            .any(|w| w[0] == w[1] && space.degree(w[0]) & 1 != 0)
        {
            return None;
        }
        let degrees = space.degrees_of(factors);
        Some((SymWord(sorted), koszul_sign_unchecked(p.as_slice(), &degrees)))
    }

    pub fn factors(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Adds `coeff · v_{t_1} ⋯ v_{t_n}` to a symmetric element.
pub(crate) fn add_sym_word(out: &mut WordElement, space: &Space, factors: &[usize], coeff: Rational) {
    if let Some((w, s)) = SymWord::canonical(space, factors) {
        out.add_term(w.0, s.apply(coeff));
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Tensor,
    Symmetric,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Tensor => "tensor",
            Flavor::Symmetric => "symmetric",
        }
    }
}

/// A coderivation of `T^c(V)` or `S^c(V)` of degree `k`, described by its
/// projections `f_n = π_1 F|_{V^{⊗n}}`.
#[derive(Clone, PartialEq)]
pub struct Coderivation {
    flavor: Flavor,
    projections: MapFamily,
    /// `f_0`, an element of degree `k`; only on the unital tensor coalgebra.
    theta0: Option<MultilinearMap>,
}

impl Coderivation {
    pub fn tensor(projections: MapFamily) -> Self {
        Self {
            flavor: Flavor::Tensor,
            projections,
            theta0: None,
        }
    }

    /// A coderivation of the unital tensor coalgebra with `f_0 = theta0`.
    pub fn tensor_unital(projections: MapFamily, theta0: &GradedVector) -> Result<Self> {
        if !same_space(projections.space(), theta0.space()) {
            return Err(Error::SpaceMismatch);
        }
        let t0 = element_map(theta0, projections.degree())?;
        Ok(Self {
            flavor: Flavor::Tensor,
            projections,
            theta0: Some(t0),
        })
    }

    /// Requires graded symmetric projections.
    pub fn symmetric(projections: MapFamily) -> Result<Self> {
        for f in projections.maps() {
            f.require_symmetry(SymmetryMode::Symmetric)?;
        }
        Ok(Self {
            flavor: Flavor::Symmetric,
            projections,
            theta0: None,
        })
    }

    pub fn zero(space: &Space, flavor: Flavor, degree: i64, truncation: usize) -> Self {
        Self {
            flavor,
            projections: MapFamily::zero(space, degree, truncation),
            theta0: None,
        }
    }

    pub fn from_ainfty(m: &AInfinityStructure) -> Self {
        Self::tensor(m.family().clone())
    }

    pub fn from_linfty(l: &LInfinityStructure) -> Self {
        Self {
            flavor: Flavor::Symmetric,
            projections: l.family().clone(),
            theta0: None,
        }
    }

    pub fn from_derivation_a(theta: &SHDerivationA) -> Self {
        Self::tensor(theta.family().clone())
    }

    pub fn from_derivation_l(theta: &SHDerivationL) -> Self {
        Self {
            flavor: Flavor::Symmetric,
            projections: theta.family().clone(),
            theta0: None,
        }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn space(&self) -> &Space {
        self.projections.space()
    }

    pub fn degree(&self) -> i64 {
        self.projections.degree()
    }

    pub fn is_unital(&self) -> bool {
        self.theta0.is_some()
    }

    pub fn projections(&self) -> &MapFamily {
        &self.projections
    }

    pub fn truncation(&self) -> usize {
        self.projections.truncation()
    }

    pub fn theta0(&self) -> Option<GradedVector> {
        self.theta0.as_ref().map(|t| {
            GradedVector::from_coeffs(self.space(), t.value(&[])).expect("indices in range")
        })
    }

    /// `f_n`, with `f_0` the unital component (zero if absent).
    pub fn projection(&self, n: usize) -> MultilinearMap {
        if n == 0 {
            return self
                .theta0
                .clone()
                .unwrap_or_else(|| MultilinearMap::zero(self.space(), 0, self.degree()));
        }
        self.projections.get(n)
    }

    pub fn is_zero(&self) -> bool {
        self.projections.is_zero() && self.theta0.as_ref().is_none_or(MultilinearMap::is_zero)
    }

    pub fn to_derivation_a(&self) -> Result<SHDerivationA> {
        if self.flavor != Flavor::Tensor {
            return Err(Error::FlavorMismatch);
        }
        Ok(SHDerivationA::from_family(self.projections.clone()))
    }

    pub fn to_derivation_l(&self) -> Result<SHDerivationL> {
        if self.flavor != Flavor::Symmetric {
            return Err(Error::FlavorMismatch);
        }
        SHDerivationL::from_family(self.projections.clone())
    }

    /// The lift on a tensor word:
    /// `Σ (−1)^{k(|v_1|+…+|v_i|)} v_1 ⊗ … ⊗ v_i ⊗ f_j(v_{i+1}, …, v_{i+j}) ⊗ …`,
    /// including insertions of `f_0` at every gap in the unital case.
    pub fn apply_tensor(&self, word: &[usize]) -> Result<WordElement> {
        if self.flavor != Flavor::Tensor {
            return Err(Error::FlavorMismatch);
        }
        let space = self.space();
        let k_odd = self.degree() & 1 != 0;
        let n = word.len();
        let lowest = if self.is_unital() { 0 } else { 1 };
        let mut out = WordElement::zero();
        let mut prefix_degree = 0i64;
        for i in 0..=n {
            let sign = if k_odd { Sign::pow(prefix_degree) } else { Sign::PLUS };
            for j in lowest..=n - i {
                let f = match j {
                    0 => self.theta0.as_ref(),
                    _ => self.projections.get_ref(j),
                };
                let Some(value) = f.and_then(|f| f.value_ref(&word[i..i + j])) else {
                    continue;
                };
                for (o, c) in value.iter() {
                    let mut w = Vec::with_capacity(n - j + 1);
                    w.extend_from_slice(&word[..i]);
                    w.push(*o);
                    w.extend_from_slice(&word[i + j..]);
                    out.add_term(w, sign.apply(c.clone()));
                }
            }
            if i < n {
                prefix_degree += space.degree(word[i]);
            }
        }
        Ok(out)
    }

    /// The lift on a symmetric word:
    /// `Σ_j Σ_{σ ∈ Sh(j,n−j)} ε(σ) f_j(v_{σ(1)}, …, v_{σ(j)}) · v_{σ(j+1)} ⋯ v_{σ(n)}`.
    pub fn apply_sym(&self, word: &SymWord) -> Result<WordElement> {
        if self.flavor != Flavor::Symmetric {
            return Err(Error::FlavorMismatch);
        }
        let space = self.space();
        let factors = word.factors();
        let n = factors.len();
        let degrees = space.degrees_of(factors);
        let mut out = WordElement::zero();
        for j in 1..=n {
            let Some(f) = self.projections.get_ref(j) else { continue };
            if f.is_zero() {
                continue;
            }
            for sigma in unshuffles(j, n - j) {
                let permuted = sigma.act(factors);
                let Some(value) = f.value_ref(&permuted[..j]) else { continue };
                let eps = koszul_sign_unchecked(sigma.as_slice(), &degrees);
                for (o, c) in value.iter() {
                    let mut w = Vec::with_capacity(n - j + 1);
                    w.push(*o);
                    w.extend_from_slice(&permuted[j..]);
                    add_sym_word(&mut out, space, &w, eps.apply(c.clone()));
                }
            }
        }
        Ok(out)
    }

    /// The lift on a word of the matching flavor (symmetric words must be
    /// canonical).
    pub fn apply_word(&self, word: &[usize]) -> Result<WordElement> {
        match self.flavor {
            Flavor::Tensor => self.apply_tensor(word),
            Flavor::Symmetric => self.apply_sym(&SymWord(word.to_vec())),
        }
    }

    /// The lift extended linearly.
    pub fn apply(&self, element: &WordElement) -> Result<WordElement> {
        let mut out = WordElement::zero();
        for (w, c) in element.iter() {
            out.add_scaled(&self.apply_word(w)?, c);
        }
        Ok(out)
    }

    /// `π_1` of a word element under this coderivation's projections:
    /// `Σ_u c_u f_{|u|}(u)`.
    fn project(&self, element: &WordElement) -> LinComb<usize> {
        let mut out = LinComb::zero();
        for (u, c) in element.iter() {
            let f = match u.len() {
                0 => self.theta0.as_ref(),
                n => self.projections.get_ref(n),
            };
            if let Some(v) = f.and_then(|f| f.value_ref(u)) {
                out.add_scaled(v, c);
            }
        }
        out
    }

    /// `π_1 (F ∘ G)` on one basis word.
    pub fn composite_projection(&self, g: &Coderivation, word: &[usize]) -> Result<LinComb<usize>> {
        let mut unit = WordElement::zero();
        unit.add_term(word.to_vec(), Rational::from_integer(1.into()));
        Ok(self.project(&g.apply(&unit)?))
    }

    fn check_pair(&self, other: &Coderivation) -> Result<()> {
        if self.flavor != other.flavor {
            return Err(Error::FlavorMismatch);
        }
        if !same_space(self.space(), other.space()) {
            return Err(Error::SpaceMismatch);
        }
        Ok(())
    }

    /// `[F, G] = F∘G − (−1)^{pq} G∘F`, with projections computed for arities
    /// `1..=max_arity` (and arity 0 when either side is unital). The arity-`n`
    /// projection only involves projections of arity `≤ n + 1`, so it is exact
    /// for the stored truncations.
    pub fn bracket(&self, other: &Coderivation, max_arity: usize) -> Result<Coderivation> {
        self.check_pair(other)?;
        let space = self.space().clone();
        let (p, q) = (self.degree(), other.degree());
        let twist = -Sign::pow(p * q);
        let degree = p + q;
        let value = |t: &[usize]| -> Result<LinComb<usize>> {
            let (word, sign) = match self.flavor {
                Flavor::Tensor => (t.to_vec(), Sign::PLUS),
                Flavor::Symmetric => match SymWord::canonical(&space, t) {
                    Some((w, s)) => (w.0, s),
                    None => return Ok(LinComb::zero()),
                },
            };
            let mut v = self.composite_projection(other, &word)?;
            v.add_assign(&other.composite_projection(self, &word)?.signed(twist));
            Ok(v.signed(sign))
        };
        let mut maps = Vec::with_capacity(max_arity);
        for n in 1..=max_arity {
            maps.push(table(&space, n, degree, &value)?);
        }
        let projections = MapFamily::new(&space, degree, maps)?;
        let theta0 = if self.is_unital() || other.is_unital() {
            Some(table(&space, 0, degree, &value)?)
        } else {
            None
        };
        Ok(Coderivation {
            flavor: self.flavor,
            projections,
            theta0,
        })
    }

    /// Projections of `F ∘ F` (as a map, not a coderivation) on words up to
    /// `max_arity`; used to test `F² = 0`.
    pub fn square_projections(&self, max_arity: usize) -> Result<MapFamily> {
        let space = self.space().clone();
        let mut maps = Vec::with_capacity(max_arity);
        for n in 1..=max_arity {
            maps.push(table(&space, n, 2 * self.degree(), &|t: &[usize]| {
                match self.flavor {
                    Flavor::Tensor => self.composite_projection(self, t),
                    Flavor::Symmetric => match SymWord::canonical(&space, t) {
                        Some((w, s)) => Ok(self.composite_projection(self, &w.0)?.signed(s)),
                        None => Ok(LinComb::zero()),
                    },
                }
            })?);
        }
        MapFamily::new(&space, 2 * self.degree(), maps)
    }

    pub fn add(&self, other: &Coderivation) -> Result<Coderivation> {
        self.check_pair(other)?;
        let theta0 = match (&self.theta0, &other.theta0) {
            (None, None) => None,
            (a, b) => {
                let zero = MultilinearMap::zero(self.space(), 0, self.degree());
                Some(a.as_ref().unwrap_or(&zero).add(b.as_ref().unwrap_or(&zero))?)
            }
        };
        Ok(Coderivation {
            flavor: self.flavor,
            projections: self.projections.add(&other.projections)?,
            theta0,
        })
    }

    pub fn scaled(&self, c: &Rational) -> Coderivation {
        Coderivation {
            flavor: self.flavor,
            projections: self.projections.scaled(c),
            theta0: self.theta0.as_ref().map(|t| t.scaled(c)),
        }
    }
}

fn table(
    space: &Space,
    arity: usize,
    degree: i64,
    value: &dyn Fn(&[usize]) -> Result<LinComb<usize>>,
) -> Result<MultilinearMap> {
    let mut f = MultilinearMap::zero(space, arity, degree);
    for t in space.tuples(arity) {
        let v = value(&t)?;
        if !v.is_zero() {
            f.add_entry(t, &v)?;
        }
    }
    Ok(f)
}

impl fmt::Debug for Coderivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} coderivation, degree {}", self.flavor.name(), self.degree())?;
        if let Some(t0) = &self.theta0 {
            writeln!(f, "f_0 = {t0:?}")?;
        }
        write!(f, "{:?}", self.projections)
    }
}

/// `[𝒎, 𝜽]_q = calibration_sign(k) · sh_defect(q)` for a derivation of
/// degree `k`, for both the A∞ and the L∞ relations.
pub fn calibration_sign(k: i64) -> Sign {
    Sign::pow(k + 1)
}

/// The codifferential `𝒎` on `T^c(V)`.
pub fn codifferential_from_ainfty(m: &AInfinityStructure) -> Coderivation {
    Coderivation::from_ainfty(m)
}

/// The codifferential `𝒍` on `S^c(V)`.
pub fn codifferential_from_linfty(l: &LInfinityStructure) -> Coderivation {
    Coderivation::from_linfty(l)
}

/// `Θ := [𝒎, 𝝃]` for an arbitrary coderivation `𝝃`; a strong homotopy
/// derivation of degree `deg 𝝃 + 1` whenever `𝒎² = 0`.
pub fn reservoir_derivation(m: &AInfinityStructure, xi: &Coderivation) -> Result<SHDerivationA> {
    if xi.is_unital() {
        return Err(Error::UnitalUnsupported);
    }
    let bracket = codifferential_from_ainfty(m).bracket(xi, m.truncation())?;
    bracket.to_derivation_a()
}

/// L∞ analogue of [`reservoir_derivation`].
pub fn reservoir_derivation_l(l: &LInfinityStructure, xi: &Coderivation) -> Result<SHDerivationL> {
    let bracket = codifferential_from_linfty(l).bracket(xi, l.truncation())?;
    bracket.to_derivation_l()
}

/// The inner derivation of a closed `a` of degree `k`, obtained as
/// `[𝒎, 𝜽]` for the unital coderivation with `θ_0 = a` and `θ_n = 0`.
/// The arity-0 projection of the bracket is `m_1(a)`; it must vanish.
pub fn inner_via_counital(m: &AInfinityStructure, a: &GradedVector, degree: i64) -> Result<SHDerivationA> {
    let theta = Coderivation::tensor_unital(MapFamily::zero(m.space(), degree, 0), a)?;
    let bracket = codifferential_from_ainfty(m).bracket(&theta, m.truncation())?;
    if !bracket.projection(0).is_zero() {
        return Err(Error::NotClosed);
    }
    Ok(SHDerivationA::from_family(bracket.projections.clone()))
}

/// `[𝒎, 𝜽]_0 = m_1(a)` for the unital coderivation with `θ_0 = a`.
pub fn counital_zero_projection(m: &AInfinityStructure, a: &GradedVector, degree: i64) -> Result<GradedVector> {
    let theta = Coderivation::tensor_unital(MapFamily::zero(m.space(), degree, 0), a)?;
    let bracket = codifferential_from_ainfty(m).bracket(&theta, 0)?;
    Ok(bracket.theta0().unwrap_or_else(|| GradedVector::zero(m.space())))
}

/// Reduced deconcatenation `Δ(v_1 ⊗ … ⊗ v_n) = Σ_{0<i<n} (v_1…v_i) ⊗ (v_{i+1}…v_n)`.
pub fn deconcatenate(word: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
    (1..word.len())
        .map(|i| (word[..i].to_vec(), word[i..].to_vec()))
        .collect()
}

/// Reduced coproduct of `S^c(V)` on a canonical word, as canonical pairs.
pub fn sym_coproduct(space: &Space, word: &SymWord) -> LinComb<(Vec<usize>, Vec<usize>)> {
    let factors = word.factors();
    let n = factors.len();
    let degrees = space.degrees_of(factors);
    let mut out = LinComb::zero();
    for i in 1..n {
        for sigma in unshuffles(i, n - i) {
            let permuted = sigma.act(factors);
            let eps = koszul_sign_unchecked(sigma.as_slice(), &degrees);
            let (Some((a, sa)), Some((b, sb))) = (
                SymWord::canonical(space, &permuted[..i]),
                SymWord::canonical(space, &permuted[i..]),
            ) else {
                continue;
            };
            out.add_term((a.0, b.0), (eps * sa * sb).to_rational());
        }
    }
    out
}
