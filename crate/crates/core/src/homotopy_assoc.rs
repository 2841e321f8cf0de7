//! A∞ algebras in the suspended convention (all `m_n` of degree one) and
//! their strong homotopy derivations.

use crate::error::{Error, Result};
use crate::family::{DefectWitness, MapFamily};
use crate::graded::{same_space, GradedVector, MultilinearMap, Space, SuspensionPair};
use crate::lincomb::LinComb;
use crate::signs::Sign;

/// A family `{m_n}` of degree-one maps on `V`, zero above its truncation.
#[derive(Clone, Debug, PartialEq)]
pub struct AInfinityStructure {
    maps: MapFamily,
}

/// A family `{θ_q}` of degree-`k` maps on `V`.
#[derive(Clone, Debug, PartialEq)]
pub struct SHDerivationA {
    maps: MapFamily,
}

impl AInfinityStructure {
    pub fn new(space: &Space, maps: Vec<MultilinearMap>) -> Result<Self> {
        Ok(Self {
            maps: MapFamily::new(space, 1, maps)?,
        })
    }

    pub fn from_family(maps: MapFamily) -> Result<Self> {
        if maps.degree() != 1 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                got: maps.degree(),
            });
        }
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

    pub fn m(&self, n: usize) -> MultilinearMap {
        self.maps.get(n)
    }

    /// First failing relation among arities `1..=max_arity`.
    pub fn first_failure(&self, max_arity: usize) -> Option<DefectWitness> {
        (1..=max_arity).find_map(|n| DefectWitness::of("A-infinity relation", &ainfty_defect(self, n)))
    }
}

impl SHDerivationA {
    pub fn new(space: &Space, degree: i64, maps: Vec<MultilinearMap>) -> Result<Self> {
        Ok(Self {
            maps: MapFamily::new(space, degree, maps)?,
        })
    }

    pub fn from_family(maps: MapFamily) -> Self {
        Self { maps }
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

/// `Σ_{a+b=n+1} Σ_i m_a ∘_i m_b`, the arity-`n` A∞ relation. The Koszul
/// sign `(−1)^{|v_1|+…+|v_{i−1}|}` comes from moving `m_b` into place.
pub fn ainfty_defect(m: &AInfinityStructure, n: usize) -> MultilinearMap {
    let mut out = MultilinearMap::zero(m.space(), n, 2);
    for b in 1..=n {
        let a = n + 1 - b;
        let (ma, mb) = (m.m(a), m.m(b));
        if ma.is_zero() || mb.is_zero() {
            continue;
        }
        for i in 1..=a {
            let term = ma.compose_at(i, &mb).expect("slot in range");
            out.add_assign(&term).expect("same arity and degree");
        }
    }
    out
}

/// `Σ_{r+s=q+1} Σ_i θ_r ∘_i m_s − (−1)^k m_r ∘_i θ_s`, the arity-`q`
/// relation for a strong homotopy derivation of degree `k`.
pub fn sh_defect(m: &AInfinityStructure, theta: &SHDerivationA, q: usize) -> Result<MultilinearMap> {
    if !same_space(m.space(), theta.space()) {
        return Err(Error::SpaceMismatch);
    }
    let k = theta.degree();
    let mut out = MultilinearMap::zero(m.space(), q, k + 1);
    let twist = -Sign::pow(k);
    for s in 1..=q {
        let r = q + 1 - s;
        let (tr, ms) = (theta.theta(r), m.m(s));
        if !tr.is_zero() && !ms.is_zero() {
            for i in 1..=r {
                out.add_assign(&tr.compose_at(i, &ms)?)?;
            }
        }
        let (mr, ts) = (m.m(r), theta.theta(s));
        if !mr.is_zero() && !ts.is_zero() {
            for i in 1..=r {
                out.add_assign(&mr.compose_at(i, &ts)?.signed(twist))?;
            }
        }
    }
    Ok(out)
}

/// First failing derivation relation among arities `1..=max_arity`.
pub fn first_sh_failure(
    m: &AInfinityStructure,
    theta: &SHDerivationA,
    max_arity: usize,
) -> Result<Option<DefectWitness>> {
    for q in 1..=max_arity {
        let d = sh_defect(m, theta, q)?;
        if let Some(w) = DefectWitness::of("derivation relation", &d) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// `θ_q := m_q`, a strong homotopy derivation of degree one.
pub fn tautological_derivation(m: &AInfinityStructure) -> SHDerivationA {
    SHDerivationA {
        maps: m.family().clone(),
    }
}

/// The element `a` as an arity-0 map, checking it is homogeneous of `degree`.
pub(crate) fn element_map(a: &GradedVector, degree: i64) -> Result<MultilinearMap> {
    match a.degree() {
        Some(d) if d != degree => {
            return Err(Error::DegreeMismatch {
                expected: degree,
                got: d,
            })
        }
        None if !a.is_zero() => return Err(Error::InhomogeneousElement),
        _ => {}
    }
    MultilinearMap::new(a.space(), 0, degree, [(Vec::new(), a.coeffs().clone())])
}

/// `θ_n(v) = Σ_p (−1)^{k(|v_1|+…+|v_p|)} m_{n+1}(v_1, …, v_p, a, v_{p+1}, …, v_n)`
/// for a closed element `a` of degree `k`; the result has degree `k + 1`.
pub fn inner_derivation(m: &AInfinityStructure, a: &GradedVector, degree: i64) -> Result<SHDerivationA> {
    if !same_space(m.space(), a.space()) {
        return Err(Error::SpaceMismatch);
    }
    let a0 = element_map(a, degree)?;
    if !m.m(1).compose_at(1, &a0)?.is_zero() {
        return Err(Error::NotClosed);
    }
    let n_max = m.truncation();
    let mut maps = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let top = m.m(n + 1);
        let mut theta = MultilinearMap::zero(m.space(), n, degree + 1);
        if !top.is_zero() {
            for p in 0..=n {
                theta.add_assign(&top.compose_at(p + 1, &a0)?)?;
            }
        }
        maps.push(theta);
    }
    SHDerivationA::new(m.space(), degree + 1, maps)
}

/// Checks that `(product, differential)` is a dg associative algebra on `A`:
/// associativity, `d² = 0` and the Leibniz rule, each reported separately.
pub fn check_dga(product: &MultilinearMap, differential: &MultilinearMap) -> Result<()> {
    check_shape(product, 2, 0)?;
    check_shape(differential, 1, 1)?;
    if !same_space(product.space(), differential.space()) {
        return Err(Error::SpaceMismatch);
    }
    let assoc = product
        .compose_at(1, product)?
        .sub(&product.compose_at(2, product)?)?;
    if let Some((t, _)) = assoc.first_entry() {
        return Err(Error::NotAssociative(t.clone()));
    }
    let dd = differential.compose_at(1, differential)?;
    if let Some((t, _)) = dd.first_entry() {
        return Err(Error::DifferentialNotSquareZero(t.clone()));
    }
    let leibniz = product.end_differential(differential)?;
    if let Some((t, _)) = leibniz.first_entry() {
        return Err(Error::LeibnizFails(t.clone()));
    }
    Ok(())
}

pub(crate) fn check_shape(f: &MultilinearMap, arity: usize, degree: i64) -> Result<()> {
    if f.arity() != arity {
        return Err(Error::ArityMismatch {
            expected: arity,
            got: f.arity(),
        });
    }
    if !f.is_zero() && f.degree() != degree {
        return Err(Error::DegreeMismatch {
            expected: degree,
            got: f.degree(),
        });
    }
    Ok(())
}

/// The suspended structure `m_1 = d`, `m_2 = ↓μ↑^{⊗2}` of a dg associative
/// algebra `(A, μ, d)`, on `V = ↓A`.
pub fn from_dga(
    product: &MultilinearMap,
    differential: &MultilinearMap,
) -> Result<(SuspensionPair, AInfinityStructure)> {
    check_dga(product, differential)?;
    let pair = SuspensionPair::new(product.space());
    let unsuspended = UnsuspendedAInfinity::new(
        product.space(),
        vec![differential.with_degree(1)?, product.with_degree(0)?],
    )?;
    let m = unsuspended.suspend(&pair)?;
    Ok((pair, m))
}

/// Defects of a strict derivation `θ` of degree `K` of a strict structure
/// (`m_n = 0` for `n ≥ 3`): commutation with the differential,
/// `θ m_1 − (−1)^K m_1 θ`, and the Leibniz rule,
/// `θ(m_2) − (−1)^K (m_2(θ, 1) + m_2(1, θ))`.
pub fn strict_derivation_defect(
    m: &AInfinityStructure,
    theta: &MultilinearMap,
) -> Result<(MultilinearMap, MultilinearMap)> {
    if theta.arity() != 1 {
        return Err(Error::ArityMismatch {
            expected: 1,
            got: theta.arity(),
        });
    }
    if !same_space(m.space(), theta.space()) {
        return Err(Error::SpaceMismatch);
    }
    let twist = -Sign::pow(theta.degree());
    let (m1, m2) = (m.m(1), m.m(2));
    let commute = theta
        .compose_at(1, &m1)?
        .add(&m1.compose_at(1, theta)?.signed(twist))?;
    let leibniz = theta
        .compose_at(1, &m2)?
        .add(&m2.compose_at(1, theta)?.signed(twist))?
        .add(&m2.compose_at(2, theta)?.signed(twist))?;
    Ok((commute, leibniz))
}

/// An A∞ structure in the classical unsuspended form on a dg space
/// `(A, d)`: operations `m_n` of degree `2 − n` for `n ≥ 2`, with `m_1 = d`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnsuspendedAInfinity {
    space: Space,
    /// `maps[n - 1]` has arity `n`; `maps[0]` is the differential.
    maps: Vec<MultilinearMap>,
}

/// Unsuspended strong homotopy derivation data: `θ_n` of degree `k − n + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnsuspendedDerivationA {
    space: Space,
    k: i64,
    maps: Vec<MultilinearMap>,
}

fn unsuspended_degree(n: usize, shift: i64) -> i64 {
    shift - n as i64 + 1
}

fn check_graded_family(space: &Space, maps: &[MultilinearMap], shift: i64) -> Result<()> {
    for (i, f) in maps.iter().enumerate() {
        if !same_space(f.space(), space) {
            return Err(Error::SpaceMismatch);
        }
        check_shape(f, i + 1, unsuspended_degree(i + 1, shift))?;
    }
    Ok(())
}

impl UnsuspendedAInfinity {
    pub fn new(space: &Space, maps: Vec<MultilinearMap>) -> Result<Self> {
        // m_1 = d has degree 1 and m_n has degree 2 − n for n ≥ 2.
        for (i, f) in maps.iter().enumerate() {
            let expected = if i == 0 { 1 } else { 1 - i as i64 };
            if !same_space(f.space(), space) {
                return Err(Error::SpaceMismatch);
            }
            check_shape(f, i + 1, expected)?;
        }
        Ok(Self {
            space: space.clone(),
            maps,
        })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn truncation(&self) -> usize {
        self.maps.len()
    }

    pub fn m(&self, n: usize) -> MultilinearMap {
        let degree = if n == 1 { 1 } else { 2 - n as i64 };
        self.maps
            .get(n - 1)
            .cloned()
            .unwrap_or_else(|| MultilinearMap::zero(&self.space, n, degree))
    }

    pub fn d(&self) -> MultilinearMap {
        self.m(1)
    }

    /// `d ∘_1 m_n − (−1)^n Σ_l m_n ∘_l d − Σ_{i+j=n+1} Σ_l (−1)^{i+(l+1)(j+1)} m_i ∘_l m_j`
    /// with `i, j ≥ 2`; for `n = 1` it is `d ∘ d`.
    pub fn defect(&self, n: usize) -> MultilinearMap {
        let d = self.d();
        if n == 1 {
            return d.compose_at(1, &d).expect("arity one");
        }
        let mut out = self.m(n).end_differential(&d).expect("d has arity one");
        for i in 2..n {
            let j = n + 1 - i;
            let (mi, mj) = (self.m(i), self.m(j));
            for l in 1..=i {
                let sign = Sign::pow((i + (l + 1) * (j + 1)) as i64);
                let term = mi.compose_at(l, &mj).expect("slot in range");
                out.add_assign(&term.signed(-sign)).expect("homogeneous");
            }
        }
        out.with_degree(3 - n as i64).expect("homogeneous of degree 3 - n")
    }

    pub fn first_failure(&self, max_arity: usize) -> Option<DefectWitness> {
        (1..=max_arity).find_map(|n| DefectWitness::of("unsuspended A-infinity relation", &self.defect(n)))
    }

    /// `m_n ↦ ↓m_n↑^{⊗n}`, with `m_1 = d` unchanged.
    pub fn suspend(&self, pair: &SuspensionPair) -> Result<AInfinityStructure> {
        if !same_space(&self.space, pair.unsuspended()) {
            return Err(Error::NotSuspensionPair);
        }
        let maps = self
            .maps
            .iter()
            .map(|f| pair.suspend(f))
            .collect::<Result<Vec<_>>>()?;
        AInfinityStructure::new(pair.suspended(), maps)
    }

    pub fn desuspend(pair: &SuspensionPair, m: &AInfinityStructure) -> Result<Self> {
        let maps = m
            .family()
            .maps()
            .iter()
            .map(|f| pair.desuspend(f))
            .collect::<Result<Vec<_>>>()?;
        Self::new(pair.unsuspended(), maps)
    }
}

impl UnsuspendedDerivationA {
    pub fn new(space: &Space, k: i64, maps: Vec<MultilinearMap>) -> Result<Self> {
        check_graded_family(space, &maps, k)?;
        Ok(Self {
            space: space.clone(),
            k,
            maps,
        })
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn theta(&self, n: usize) -> MultilinearMap {
        self.maps
            .get(n - 1)
            .cloned()
            .unwrap_or_else(|| MultilinearMap::zero(&self.space, n, unsuspended_degree(n, self.k)))
    }

    /// `d ∘_1 θ_n − (−1)^{|θ_n|} Σ θ_n ∘_l d − Σ_{i+j=n+1} Σ_l (−1)^{k+1+i+(l+1)(j+1)}
    /// (θ_i ∘_l m_j + (−1)^{(k+1)i} m_i ∘_l θ_j)`, where only terms with
    /// `m_j`, `m_i` of arity at least two occur.
    pub fn defect(&self, m: &UnsuspendedAInfinity, n: usize) -> Result<MultilinearMap> {
        if !same_space(&self.space, m.space()) {
            return Err(Error::SpaceMismatch);
        }
        let k = self.k;
        let mut out = self.theta(n).end_differential(&m.d())?;
        for i in 1..=n {
            let j = n + 1 - i;
            for l in 1..=i {
                let sign = Sign::pow(k + 1 + (i + (l + 1) * (j + 1)) as i64);
                if j >= 2 {
                    let term = self.theta(i).compose_at(l, &m.m(j))?;
                    out.add_assign(&term.signed(-sign))?;
                }
                if i >= 2 {
                    let term = m.m(i).compose_at(l, &self.theta(j))?;
                    out.add_assign(&term.signed(-sign * Sign::pow((k + 1) * i as i64)))?;
                }
            }
        }
        out.with_degree(k - n as i64 + 2)
    }

    pub fn suspend(&self, pair: &SuspensionPair) -> Result<SHDerivationA> {
        let maps = self
            .maps
            .iter()
            .map(|f| pair.suspend(f))
            .collect::<Result<Vec<_>>>()?;
        SHDerivationA::new(pair.suspended(), self.k, maps)
    }

    pub fn desuspend(pair: &SuspensionPair, theta: &SHDerivationA) -> Result<Self> {
        let maps = theta
            .family()
            .maps()
            .iter()
            .map(|f| pair.desuspend(f))
            .collect::<Result<Vec<_>>>()?;
        Self::new(pair.unsuspended(), theta.degree(), maps)
    }
}

/// Convenience: the value `m_1(a)` for an element `a`.
pub fn differential_of(m: &AInfinityStructure, a: &GradedVector) -> Result<LinComb<usize>> {
    Ok(m.m(1).apply(std::slice::from_ref(a))?.coeffs().clone())
}
