//! Small dg algebras and dg Lie algebras used as regression anchors. Each
//! is given by structure constants on the unsuspended space `A`; the
//! suspended structures live on `V = ↓A`.

use crate::error::{Error, Result};
use crate::graded::{GradedVectorSpace, MultilinearMap, Space, SuspensionPair};
use crate::homotopy_assoc::{check_dga, from_dga, AInfinityStructure, UnsuspendedAInfinity};
use crate::homotopy_lie::{check_dgla, from_dgla, LInfinityStructure, UnsuspendedLInfinity};
use crate::lincomb::integer;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureKind {
    Associative,
    Lie,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub provenance: &'static str,
    pub kind: FixtureKind,
    /// Product or bracket on `A`, degree 0.
    pub operation: MultilinearMap,
    /// Differential on `A`, degree 1.
    pub differential: MultilinearMap,
}

type Table<'a> = &'a [(&'a [&'a str], &'a [(&'a str, i64)])];

fn table(space: &Space, arity: usize, degree: i64, table: Table<'_>) -> MultilinearMap {
    let rows: Vec<(&[&str], Vec<(&str, _)>)> = table
        .iter()
        .map(|(input, out)| (*input, out.iter().map(|(l, c)| (*l, integer(*c))).collect()))
        .collect();
    let rows: Vec<(&[&str], &[(&str, _)])> = rows.iter().map(|(i, o)| (*i, o.as_slice())).collect();
    MultilinearMap::from_labels(space, arity, degree, &rows).expect("fixture table is well formed")
}

fn binary(space: &Space, rows: Table<'_>) -> MultilinearMap {
    table(space, 2, 0, rows)
}

/// `k[ε]/(ε²)`, both basis elements in degree 0, `d = 0`.
pub fn dual_numbers() -> Fixture {
    let a = GradedVectorSpace::from_pairs([("1", 0), ("eps", 0)]).unwrap();
    Fixture {
        name: "dual-numbers",
        provenance: "k[eps]/(eps^2) with eps in degree 0 and zero differential",
        kind: FixtureKind::Associative,
        operation: binary(
            &a,
            &[
                (&["1", "1"], &[("1", 1)]),
                (&["1", "eps"], &[("eps", 1)]),
                (&["eps", "1"], &[("eps", 1)]),
            ],
        ),
        differential: MultilinearMap::zero(&a, 1, 1),
    }
}

/// The exterior algebra `Λ(ξ)` on one generator of degree 1.
pub fn exterior_odd() -> Fixture {
    let a = GradedVectorSpace::from_pairs([("1", 0), ("xi", 1)]).unwrap();
    Fixture {
        name: "exterior-odd",
        provenance: "exterior algebra on one generator xi of degree 1, xi^2 = 0, zero differential",
        kind: FixtureKind::Associative,
        operation: binary(
            &a,
            &[
                (&["1", "1"], &[("1", 1)]),
                (&["1", "xi"], &[("xi", 1)]),
                (&["xi", "1"], &[("xi", 1)]),
            ],
        ),
        differential: MultilinearMap::zero(&a, 1, 1),
    }
}

/// `k ⊕ M` with `M = span(t, u)`, `|t| = −1`, `dt = u`, and `M·M = 0`.
pub fn square_zero_extension() -> Fixture {
    let a = GradedVectorSpace::from_pairs([("1", 0), ("t", -1), ("u", 0)]).unwrap();
    Fixture {
        name: "square-zero",
        provenance: "trivial square-zero extension of k by the acyclic complex t -> u (|t| = -1)",
        kind: FixtureKind::Associative,
        operation: binary(
            &a,
            &[
                (&["1", "1"], &[("1", 1)]),
                (&["1", "t"], &[("t", 1)]),
                (&["t", "1"], &[("t", 1)]),
                (&["1", "u"], &[("u", 1)]),
                (&["u", "1"], &[("u", 1)]),
            ],
        ),
        differential: table(&a, 1, 1, &[(&["t"], &[("u", 1)])]),
    }
}

/// The non-abelian two-dimensional Lie algebra `[e1, e2] = e2`.
pub fn solvable_lie() -> Fixture {
    let a = GradedVectorSpace::from_pairs([("e1", 0), ("e2", 0)]).unwrap();
    Fixture {
        name: "solvable-lie",
        provenance: "two-dimensional non-abelian Lie algebra [e1, e2] = e2 in degree 0",
        kind: FixtureKind::Lie,
        operation: binary(&a, &[(&["e1", "e2"], &[("e2", 1)]), (&["e2", "e1"], &[("e2", -1)])]),
        differential: MultilinearMap::zero(&a, 1, 1),
    }
}

/// `sl_2` in the basis `e, f, h`.
pub fn sl2() -> Fixture {
    let a = GradedVectorSpace::from_pairs([("e", 0), ("f", 0), ("h", 0)]).unwrap();
    Fixture {
        name: "sl2",
        provenance: "sl(2) with [h, e] = 2e, [h, f] = -2f, [e, f] = h, in degree 0",
        kind: FixtureKind::Lie,
        operation: binary(
            &a,
            &[
                (&["h", "e"], &[("e", 2)]),
                (&["e", "h"], &[("e", -2)]),
                (&["h", "f"], &[("f", -2)]),
                (&["f", "h"], &[("f", 2)]),
                (&["e", "f"], &[("h", 1)]),
                (&["f", "e"], &[("h", -1)]),
            ],
        ),
        differential: MultilinearMap::zero(&a, 1, 1),
    }
}

pub fn all() -> Vec<Fixture> {
    vec![dual_numbers(), exterior_odd(), square_zero_extension(), solvable_lie(), sl2()]
}

pub fn by_name(name: &str) -> Result<Fixture> {
    all()
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::Parse(format!("unknown fixture `{name}`")))
}

impl Fixture {
    /// The unsuspended space `A`.
    pub fn space(&self) -> &Space {
        self.operation.space()
    }

    pub fn check(&self) -> Result<()> {
        match self.kind {
            FixtureKind::Associative => check_dga(&self.operation, &self.differential),
            FixtureKind::Lie => check_dgla(&self.operation, &self.differential),
        }
    }

    pub fn ainfty(&self) -> Option<(SuspensionPair, AInfinityStructure)> {
        (self.kind == FixtureKind::Associative)
            .then(|| from_dga(&self.operation, &self.differential).expect("fixture is a dg algebra"))
    }

    pub fn linfty(&self) -> Option<(SuspensionPair, LInfinityStructure)> {
        (self.kind == FixtureKind::Lie)
            .then(|| from_dgla(&self.operation, &self.differential).expect("fixture is a dg Lie algebra"))
    }

    /// `m_1 = d`, `m_2 = μ` in the unsuspended convention.
    pub fn unsuspended_ainfty(&self) -> Option<UnsuspendedAInfinity> {
        (self.kind == FixtureKind::Associative).then(|| {
            UnsuspendedAInfinity::new(self.space(), vec![self.differential.clone(), self.operation.clone()])
                .expect("shapes are fixed")
        })
    }

    pub fn unsuspended_linfty(&self) -> Option<UnsuspendedLInfinity> {
        (self.kind == FixtureKind::Lie).then(|| {
            UnsuspendedLInfinity::new(self.space(), vec![self.differential.clone(), self.operation.clone()])
                .expect("shapes are fixed")
        })
    }
}
