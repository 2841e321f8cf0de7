//! L∞ algebras in the suspended convention (all `l_n` of degree one and
//! graded symmetric) and their strong homotopy derivations.

use crate::error::{Error, Result};
use crate::family::{DefectWitness, MapFamily};
use crate::graded::{same_space, GradedVector, MultilinearMap, Space, SuspensionPair, SymmetryMode};
use crate::homotopy_assoc::{check_shape, element_map};
use crate::signs::{sgn, unshuffles, Sign};

/// A family `{l_n}` of degree-one graded symmetric maps on `V`.
#[derive(Clone, Debug, PartialEq)]
pub struct LInfinityStructure {
    maps: MapFamily,
}

/// A family `{θ_q}` of degree-`k` graded symmetric maps on `V`.
#[derive(Clone, Debug, PartialEq)]
pub struct SHDerivationL {
    maps: MapFamily,
}

fn require_symmetric(maps: &MapFamily) -> Result<()> {
    maps.maps()
        .iter()
        .try_for_each(|f| f.require_symmetry(SymmetryMode::Symmetric))
}

impl LInfinityStructure {
    pub fn new(space: &Space, maps: Vec<MultilinearMap>) -> Result<Self> {
        Self::from_family(MapFamily::new(space, 1, maps)?)
    }

    pub fn from_family(maps: MapFamily) -> Result<Self> {
        if maps.degree() != 1 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                got: maps.degree(),
            });
        }
        require_symmetric(&maps)?;
        Ok(Self { maps })
    }

    pub fn zero(space: &Space, truncation: usize) -> Self {
        Self {
            maps: MapFamily::zero(space, 1, truncation),
        }
    }

    pub fn space(&self) -> &Space {
        self.maps.space()
    }

    pub fn truncation(&self) -> usize {
        self.maps.truncation()
    }

    pub fn family(&self) -> &MapFamily {
        &self.maps
    }

    pub fn l(&self, n: usize) -> MultilinearMap {
        self.maps.get(n)
    }

    pub fn first_failure(&self, max_arity: usize) -> Option<DefectWitness> {
        (1..=max_arity).find_map(|n| DefectWitness::of("L-infinity relation", &linfty_defect(self, n)))
    }
}

impl SHDerivationL {
    pub fn new(space: &Space, degree: i64, maps: Vec<MultilinearMap>) -> Result<Self> {
        Self::from_family(MapFamily::new(space, degree, maps)?)
    }

    pub fn from_family(maps: MapFamily) -> Result<Self> {
        require_symmetric(&maps)?;
        Ok(Self { maps })
    }

    pub fn zero(space: &Space, degree: i64, truncation: usize) -> Self {
        Self {
            maps: MapFamily::zero(space, degree, truncation),
        }
    }

    pub fn space(&self) -> &Space {
        self.maps.space()
    }

    pub fn degree(&self) -> i64 {
        self.maps.degree()
    }

    pub fn truncation(&self) -> usize {
        self.maps.truncation()
    }

    pub fn family(&self) -> &MapFamily {
        &self.maps
    }

    pub fn theta(&self, q: usize) -> MultilinearMap {
        self.maps.get(q)
    }
}

/// `Σ_σ (f ∘_1 g)·σ` over `σ ∈ Sh(j, n − j)`, where `g` has arity `j`.
fn unshuffle_sum(f: &MultilinearMap, g: &MultilinearMap) -> Result<MultilinearMap> {
    let j = g.arity();
    let n = f.arity() + j - 1;
    let composite = f.compose_at(1, g)?;
    let mut out = MultilinearMap::zero(f.space(), n, composite.degree());
    if composite.is_zero() {
        return Ok(out);
    }
    for sigma in unshuffles(j, n - j) {
        out.add_assign(&composite.permute_inputs(&sigma)?)?;
    }
    Ok(out)
}

/// The higher Jacobi relation
/// `Σ_j Σ_{σ ∈ Sh(j,n−j)} ε(σ) l_{n−j+1}(l_j(v_{σ(1)}, …), v_{σ(j+1)}, …)`.
pub fn linfty_defect(l: &LInfinityStructure, n: usize) -> MultilinearMap {
    let mut out = MultilinearMap::zero(l.space(), n, 2);
    for j in 1..=n {
        let (outer, inner) = (l.l(n - j + 1), l.l(j));
        if outer.is_zero() || inner.is_zero() {
            continue;
        }
        let term = unshuffle_sum(&outer, &inner).expect("shapes agree");
        out.add_assign(&term).expect("degree two");
    }
    out
}

/// `Σ_j Σ_σ ε(σ) [θ_{n−j+1}(l_j(…), …) − (−1)^k l_{n−j+1}(θ_j(…), …)]`.
pub fn sh_defect(l: &LInfinityStructure, theta: &SHDerivationL, n: usize) -> Result<MultilinearMap> {
    if !same_space(l.space(), theta.space()) {
        return Err(Error::SpaceMismatch);
    }
    let k = theta.degree();
    let mut out = MultilinearMap::zero(l.space(), n, k + 1);
    for j in 1..=n {
        let (t_outer, l_inner) = (theta.theta(n - j + 1), l.l(j));
        if !t_outer.is_zero() && !l_inner.is_zero() {
            out.add_assign(&unshuffle_sum(&t_outer, &l_inner)?)?;
        }
        let (l_outer, t_inner) = (l.l(n - j + 1), theta.theta(j));
        if !l_outer.is_zero() && !t_inner.is_zero() {
            out.add_assign(&unshuffle_sum(&l_outer, &t_inner)?.signed(-Sign::pow(k)))?;
        }
    }
    Ok(out)
}

pub fn first_sh_failure(
    l: &LInfinityStructure,
    theta: &SHDerivationL,
    max_arity: usize,
) -> Result<Option<DefectWitness>> {
    for q in 1..=max_arity {
        let d = sh_defect(l, theta, q)?;
        if let Some(w) = DefectWitness::of("derivation relation", &d) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// `θ_q := l_q`, of degree one.
pub fn tautological_derivation(l: &LInfinityStructure) -> SHDerivationL {
    SHDerivationL {
        maps: l.family().clone(),
    }
}

/// `θ_n(v_1, …, v_n) = l_{n+1}(a, v_1, …, v_n)` for a closed `a` of degree
/// `k`; the result has degree `k + 1`.
pub fn inner_derivation(l: &LInfinityStructure, a: &GradedVector, degree: i64) -> Result<SHDerivationL> {
    if !same_space(l.space(), a.space()) {
        return Err(Error::SpaceMismatch);
    }
    let a0 = element_map(a, degree)?;
    if !l.l(1).compose_at(1, &a0)?.is_zero() {
        return Err(Error::NotClosed);
    }
    let maps = (1..=l.truncation())
        .map(|n| l.l(n + 1).compose_at(1, &a0))
        .collect::<Result<Vec<_>>>()?;
    SHDerivationL::new(l.space(), degree + 1, maps)
}

/// Checks that `(bracket, differential)` is a dg Lie algebra on `A`: graded
/// antisymmetry, graded Jacobi, `d² = 0` and the Leibniz rule.
pub fn check_dgla(bracket: &MultilinearMap, differential: &MultilinearMap) -> Result<()> {
    check_shape(bracket, 2, 0)?;
    check_shape(differential, 1, 1)?;
    if !same_space(bracket.space(), differential.space()) {
        return Err(Error::SpaceMismatch);
    }
    if let Some(v) = bracket.symmetry_defect(SymmetryMode::Antisymmetric) {
        return Err(Error::NotAntisymmetric(v.tuple));
    }
    let jacobi = skew_unshuffle_sum(bracket, bracket)?;
    if let Some((t, _)) = jacobi.first_entry() {
        return Err(Error::JacobiFails(t.clone()));
    }
    let dd = differential.compose_at(1, differential)?;
    if let Some((t, _)) = dd.first_entry() {
        return Err(Error::DifferentialNotSquareZero(t.clone()));
    }
    let leibniz = bracket.end_differential(differential)?;
    if let Some((t, _)) = leibniz.first_entry() {
        return Err(Error::LeibnizFails(t.clone()));
    }
    Ok(())
}

/// `Σ_{σ ∈ Sh(j, i−1)} sgn σ · (f ∘_1 g)·σ` for `f` of arity `i`, `g` of arity `j`.
fn skew_unshuffle_sum(f: &MultilinearMap, g: &MultilinearMap) -> Result<MultilinearMap> {
    let j = g.arity();
    let n = f.arity() + j - 1;
    let composite = f.compose_at(1, g)?;
    let mut out = MultilinearMap::zero(f.space(), n, composite.degree());
    for sigma in unshuffles(j, n - j) {
        out.add_assign(&composite.permute_inputs(&sigma)?.signed(sgn(&sigma)))?;
    }
    Ok(out)
}

/// The suspended structure of a dg Lie algebra `(A, [,], d)` on `V = ↓A`:
/// `l_1 = ↓(−d)↑`, `l_2 = ↓(−[,])↑^{⊗2}`.
pub fn from_dgla(
    bracket: &MultilinearMap,
    differential: &MultilinearMap,
) -> Result<(SuspensionPair, LInfinityStructure)> {
    check_dgla(bracket, differential)?;
    let pair = SuspensionPair::new(bracket.space());
    let un = UnsuspendedLInfinity::new(
        bracket.space(),
        vec![differential.with_degree(1)?, bracket.with_degree(0)?],
    )?;
    Ok((pair.clone(), un.suspend(&pair)?))
}

fn binomial_two_sign(n: usize) -> Sign {
    Sign::pow((n * n.saturating_sub(1) / 2) as i64)
}

/// Skew symmetric L∞ structure on a dg space `(A, d)`: `l_n` of degree
/// `2 − n` for `n ≥ 2`, `l_1 = d`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnsuspendedLInfinity {
    space: Space,
    maps: Vec<MultilinearMap>,
}

/// Skew symmetric `θ_n` of degree `k − n + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnsuspendedDerivationL {
    space: Space,
    k: i64,
    maps: Vec<MultilinearMap>,
}

impl UnsuspendedLInfinity {
    pub fn new(space: &Space, maps: Vec<MultilinearMap>) -> Result<Self> {
        for (i, f) in maps.iter().enumerate() {
            if !same_space(f.space(), space) {
                return Err(Error::SpaceMismatch);
            }
            check_shape(f, i + 1, if i == 0 { 1 } else { 1 - i as i64 })?;
            f.require_symmetry(SymmetryMode::Antisymmetric)?;
        }
        Ok(Self {
            space: space.clone(),
            maps,
        })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn l(&self, n: usize) -> MultilinearMap {
        let degree = if n == 1 { 1 } else { 2 - n as i64 };
        self.maps
            .get(n - 1)
            .cloned()
            .unwrap_or_else(|| MultilinearMap::zero(&self.space, n, degree))
    }

    /// `d ∘_1 l_n − (−1)^n Σ l_n ∘_m d − Σ_{i+j=n+1} (−1)^{j(i−1)} Σ_{σ ∈ Sh(j,i−1)} sgn σ (l_i ∘_1 l_j)·σ`
    /// with `i, j ≥ 2`; `d ∘ d` for `n = 1`.
    pub fn defect(&self, n: usize) -> MultilinearMap {
        let d = self.l(1);
        if n == 1 {
            return d.compose_at(1, &d).expect("arity one");
        }
        let mut out = self.l(n).end_differential(&d).expect("arity one");
        for i in 2..n {
            let j = n + 1 - i;
            let term = skew_unshuffle_sum(&self.l(i), &self.l(j)).expect("shapes agree");
            out.add_assign(&term.signed(-Sign::pow((j * (i - 1)) as i64)))
                .expect("homogeneous");
        }
        out.with_degree(3 - n as i64).expect("homogeneous")
    }

    /// Renames `L_1 = −d`, `L_n = (−1)^{n(n−1)/2} l_n` and suspends.
    pub fn suspend(&self, pair: &SuspensionPair) -> Result<LInfinityStructure> {
        if !same_space(&self.space, pair.unsuspended()) {
            return Err(Error::NotSuspensionPair);
        }
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let n = i + 1;
                let sign = if n == 1 { Sign::MINUS } else { binomial_two_sign(n) };
                pair.suspend(&f.signed(sign))
            })
            .collect::<Result<Vec<_>>>()?;
        LInfinityStructure::new(pair.suspended(), maps)
    }

    pub fn desuspend(pair: &SuspensionPair, l: &LInfinityStructure) -> Result<Self> {
        let maps = l
            .family()
            .maps()
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let n = i + 1;
                let sign = if n == 1 { Sign::MINUS } else { binomial_two_sign(n) };
                Ok(pair.desuspend(f)?.signed(sign))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(pair.unsuspended(), maps)
    }
}

impl UnsuspendedDerivationL {
    pub fn new(space: &Space, k: i64, maps: Vec<MultilinearMap>) -> Result<Self> {
        for (i, f) in maps.iter().enumerate() {
            if !same_space(f.space(), space) {
                return Err(Error::SpaceMismatch);
            }
            check_shape(f, i + 1, k - i as i64)?;
            f.require_symmetry(SymmetryMode::Antisymmetric)?;
        }
        Ok(Self {
            space: space.clone(),
            k,
            maps,
        })
    }

    pub fn theta(&self, n: usize) -> MultilinearMap {
        self.maps
            .get(n - 1)
            .cloned()
            .unwrap_or_else(|| MultilinearMap::zero(&self.space, n, self.k - n as i64 + 1))
    }

    /// `d ∘_1 θ_n − (−1)^{|θ_n|} Σ θ_n ∘_m d + Σ_{i+j=n+1} (−1)^{k+j(i−1)} Σ_σ sgn σ
    /// (θ_i ∘_1 l_j + (−1)^{(k+1)i} l_i ∘_1 θ_j)·σ`, with `l_1` excluded.
    pub fn defect(&self, l: &UnsuspendedLInfinity, n: usize) -> Result<MultilinearMap> {
        let k = self.k;
        let mut out = self.theta(n).end_differential(&l.l(1))?;
        for i in 1..=n {
            let j = n + 1 - i;
            let sign = Sign::pow(k + (j * (i - 1)) as i64);
            if j >= 2 {
                out.add_assign(&skew_unshuffle_sum(&self.theta(i), &l.l(j))?.signed(sign))?;
            }
            if i >= 2 {
                let twist = sign * Sign::pow((k + 1) * i as i64);
                out.add_assign(&skew_unshuffle_sum(&l.l(i), &self.theta(j))?.signed(twist))?;
            }
        }
        out.with_degree(k - n as i64 + 2)
    }

    /// Renames `Θ_1 = θ_1`, `Θ_n = (−1)^{n(n−1)/2} θ_n` and suspends.
    pub fn suspend(&self, pair: &SuspensionPair) -> Result<SHDerivationL> {
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(i, f)| pair.suspend(&f.signed(binomial_two_sign(i + 1))))
            .collect::<Result<Vec<_>>>()?;
        SHDerivationL::new(pair.suspended(), self.k, maps)
    }
}
