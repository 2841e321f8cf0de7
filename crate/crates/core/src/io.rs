//! JSON documents for spaces, maps, structures and coderivations.
//!
//! Every document carries a `basis` of `{label, degree}` records. Maps are
//! `{name, arity, degree, entries}` tables whose entries send a tuple of
//! input labels to a list of `{label, num, den}` terms; numerators and
//! denominators are decimal strings so that no precision is lost.
//! Structures and derivations are stored in the suspended convention.

use std::path::Path;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::coalgebra::Coderivation;
use crate::error::{Error, Result};
use crate::family::MapFamily;
use crate::graded::{BasisElement, GradedVector, GradedVectorSpace, MultilinearMap, Space};
use crate::family::DefectWitness;
use crate::homotopy_assoc::{first_sh_failure as first_sh_failure_a, AInfinityStructure, SHDerivationA};
use crate::homotopy_lie::{first_sh_failure as first_sh_failure_l, LInfinityStructure, SHDerivationL};
use crate::lincomb::{LinComb, Rational};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBasis {
    label: String,
    degree: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    label: String,
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    #[serde(rename = "in")]
    input: Vec<String>,
    out: Vec<RawTerm>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    name: String,
    arity: usize,
    degree: i64,
    entries: Vec<RawEntry>,
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    structure: Option<String>,
    basis: Vec<RawBasis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    m: Option<Vec<RawMap>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    theta: Option<Vec<RawMap>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    maps: Option<Vec<RawMap>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    degree: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    flavor: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    projections: Option<Vec<RawMap>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    theta0: Option<Vec<RawTerm>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureKind {
    AInfinity,
    LInfinity,
}

impl StructureKind {
    pub fn name(self) -> &'static str {
        match self {
            StructureKind::AInfinity => "ainfty",
            StructureKind::LInfinity => "linfty",
        }
    }

    fn map_prefix(self) -> &'static str {
        match self {
            StructureKind::AInfinity => "m",
            StructureKind::LInfinity => "l",
        }
    }
}

/// A derivation family `{θ_q}` of degree `k` stored with its structure.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivationData {
    pub degree: i64,
    /// `maps[q - 1]` is `θ_q`.
    pub maps: Vec<MultilinearMap>,
}

/// An A∞ or L∞ structure on `V`, optionally with a strong homotopy
/// derivation.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureDocument {
    pub kind: StructureKind,
    pub space: Space,
    /// `operations[n - 1]` is `m_n` (or `l_n`).
    pub operations: Vec<MultilinearMap>,
    pub derivation: Option<DerivationData>,
    pub note: Option<String>,
}

impl StructureDocument {
    pub fn from_ainfty(m: &AInfinityStructure, theta: Option<&SHDerivationA>) -> Self {
        Self {
            kind: StructureKind::AInfinity,
            space: m.space().clone(),
            operations: m.family().maps().to_vec(),
            derivation: theta.map(|t| DerivationData {
                degree: t.degree(),
                maps: t.family().maps().to_vec(),
            }),
            note: None,
        }
    }

    pub fn from_linfty(l: &LInfinityStructure, theta: Option<&SHDerivationL>) -> Self {
        Self {
            kind: StructureKind::LInfinity,
            space: l.space().clone(),
            operations: l.family().maps().to_vec(),
            derivation: theta.map(|t| DerivationData {
                degree: t.degree(),
                maps: t.family().maps().to_vec(),
            }),
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    fn require(&self, kind: StructureKind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "expected an {} document, found {}",
                kind.name(),
                self.kind.name()
            )))
        }
    }

    fn derivation_data(&self) -> Result<&DerivationData> {
        self.derivation
            .as_ref()
            .ok_or_else(|| Error::Parse("document carries no derivation (`theta`)".into()))
    }

    pub fn ainfty(&self) -> Result<AInfinityStructure> {
        self.require(StructureKind::AInfinity)?;
        AInfinityStructure::new(&self.space, self.operations.clone())
    }

    pub fn linfty(&self) -> Result<LInfinityStructure> {
        self.require(StructureKind::LInfinity)?;
        LInfinityStructure::new(&self.space, self.operations.clone())
    }

    /// First failing relation up to arity `max_arity`: the structure first,
    /// then the derivation when `with_derivation` is set.
    pub fn first_failure(&self, max_arity: usize, with_derivation: bool) -> Result<Option<DefectWitness>> {
        match self.kind {
            StructureKind::AInfinity => {
                let m = self.ainfty()?;
                match m.first_failure(max_arity) {
                    None if with_derivation => first_sh_failure_a(&m, &self.derivation_a()?, max_arity),
                    other => Ok(other),
                }
            }
            StructureKind::LInfinity => {
                let l = self.linfty()?;
                match l.first_failure(max_arity) {
                    None if with_derivation => first_sh_failure_l(&l, &self.derivation_l()?, max_arity),
                    other => Ok(other),
                }
            }
        }
    }

    pub fn derivation_a(&self) -> Result<SHDerivationA> {
        self.require(StructureKind::AInfinity)?;
        let d = self.derivation_data()?;
        SHDerivationA::new(&self.space, d.degree, d.maps.clone())
    }

    pub fn derivation_l(&self) -> Result<SHDerivationL> {
        self.require(StructureKind::LInfinity)?;
        let d = self.derivation_data()?;
        SHDerivationL::new(&self.space, d.degree, d.maps.clone())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Structure(StructureDocument),
    Coderivation(Coderivation),
    /// A bare space with named maps.
    Maps { space: Space, maps: Vec<(String, MultilinearMap)> },
}

impl Document {
    pub fn space(&self) -> &Space {
        match self {
            Document::Structure(s) => &s.space,
            Document::Coderivation(c) => c.space(),
            Document::Maps { space, .. } => space,
        }
    }

    pub fn into_structure(self) -> Result<StructureDocument> {
        match self {
            Document::Structure(s) => Ok(s),
            _ => Err(Error::Parse("expected an ainfty or linfty document".into())),
        }
    }
}

pub fn parse(json: &str) -> Result<Document> {
    let raw: RawDocument = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    let space = GradedVectorSpace::new(
        raw.basis
            .iter()
            .map(|b| BasisElement::new(b.label.clone(), b.degree))
            .collect(),
    )
    .map(std::sync::Arc::new)?;
    match raw.structure.as_deref() {
        Some(kind @ ("ainfty" | "linfty")) => {
            let kind = if kind == "ainfty" {
                StructureKind::AInfinity
            } else {
                StructureKind::LInfinity
            };
            let operations = by_arity(&space, 1, raw.m.as_deref().unwrap_or_default())?;
            let derivation = match (raw.theta, raw.k) {
                (Some(theta), Some(k)) => Some(DerivationData {
                    degree: k,
                    maps: by_arity(&space, k, &theta)?,
                }),
                (Some(_), None) => return Err(Error::Parse("`theta` requires the derivation degree `k`".into())),
                (None, _) => None,
            };
            Ok(Document::Structure(StructureDocument {
                kind,
                space,
                operations,
                derivation,
                note: raw.note,
            }))
        }
        Some("coderivation") => {
            let degree = raw
                .degree
                .ok_or_else(|| Error::Parse("coderivation needs `degree`".into()))?;
            let family = MapFamily::new(&space, degree, by_arity(&space, degree, raw.projections.as_deref().unwrap_or_default())?)?;
            let flavor = raw.flavor.as_deref().unwrap_or("tensor");
            match (flavor, raw.theta0) {
                ("tensor", None) => Ok(Document::Coderivation(Coderivation::tensor(family))),
                ("tensor", Some(t0)) => {
                    let t0 = GradedVector::from_coeffs(&space, terms_from_raw(&space, &t0)?)?;
                    Ok(Document::Coderivation(Coderivation::tensor_unital(family, &t0)?))
                }
                ("symmetric", None) => Ok(Document::Coderivation(Coderivation::symmetric(family)?)),
                ("symmetric", Some(_)) => Err(Error::Parse("`theta0` is only allowed on the tensor flavor".into())),
                (other, _) => Err(Error::Parse(format!("unknown flavor `{other}`"))),
            }
        }
        None => {
            let maps = raw
                .maps
                .unwrap_or_default()
                .iter()
                .map(|m| Ok((m.name.clone(), map_from_raw(&space, m)?)))
                .collect::<Result<_>>()?;
            Ok(Document::Maps { space, maps })
        }
        Some(other) => Err(Error::Parse(format!("unknown structure `{other}`"))),
    }
}

pub fn to_json(doc: &Document) -> String {
    let mut raw = RawDocument {
        basis: doc
            .space()
            .basis()
            .iter()
            .map(|b| RawBasis {
                label: b.label.clone(),
                degree: b.degree,
            })
            .collect(),
        ..Default::default()
    };
    match doc {
        Document::Structure(s) => {
            let prefix = s.kind.map_prefix();
            raw.structure = Some(s.kind.name().into());
            raw.m = Some(named(prefix, &s.operations));
            if let Some(d) = &s.derivation {
                raw.k = Some(d.degree);
                raw.theta = Some(named("theta", &d.maps));
            }
            raw.note = s.note.clone();
        }
        Document::Coderivation(c) => {
            raw.structure = Some("coderivation".into());
            raw.degree = Some(c.degree());
            raw.flavor = Some(c.flavor().name().into());
            raw.projections = Some(named("f", c.projections().maps()));
            raw.theta0 = c.theta0().map(|t| terms_to_raw(c.space(), t.coeffs()));
        }
        Document::Maps { maps, .. } => {
            raw.maps = Some(maps.iter().map(|(name, f)| map_to_raw(name, f)).collect());
        }
    }
    let mut out = serde_json::to_string_pretty(&raw).expect("documents always serialize");
    out.push('\n');
    out
}

pub fn read(path: &Path) -> Result<Document> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn write(path: &Path, doc: &Document) -> Result<()> {
    std::fs::write(path, to_json(doc)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn named(prefix: &str, maps: &[MultilinearMap]) -> Vec<RawMap> {
    maps.iter()
        .enumerate()
        .map(|(i, f)| map_to_raw(&format!("{prefix}{}", i + 1), f))
        .collect()
}

/// Places maps by arity `1, 2, …`, filling gaps with zero maps.
fn by_arity(space: &Space, degree: i64, raw: &[RawMap]) -> Result<Vec<MultilinearMap>> {
    let top = raw.iter().map(|m| m.arity).max().unwrap_or(0);
    let mut out: Vec<Option<MultilinearMap>> = vec![None; top];
    for m in raw {
        if m.arity == 0 {
            return Err(Error::Parse(format!("map `{}` has arity 0", m.name)));
        }
        let f = map_from_raw(space, m)?;
        if !f.is_zero() && f.degree() != degree {
            return Err(Error::Parse(format!(
                "map `{}` has degree {}, expected {degree}",
                m.name,
                f.degree()
            )));
        }
        let slot = &mut out[m.arity - 1];
        if slot.is_some() {
            return Err(Error::Parse(format!("two maps of arity {}", m.arity)));
        }
        *slot = Some(f);
    }
    Ok(out
        .into_iter()
        .enumerate()
        .map(|(i, f)| f.unwrap_or_else(|| MultilinearMap::zero(space, i + 1, degree)))
        .collect())
}

fn map_from_raw(space: &Space, raw: &RawMap) -> Result<MultilinearMap> {
    let mut f = MultilinearMap::zero(space, raw.arity, raw.degree);
    for entry in &raw.entries {
        let input = entry
            .input
            .iter()
            .map(|l| space.require(l))
            .collect::<Result<Vec<_>>>()?;
        f.add_entry(input, &terms_from_raw(space, &entry.out)?)
            .map_err(|e| Error::Parse(format!("map `{}`: {e}", raw.name)))?;
    }
    Ok(f)
}

fn map_to_raw(name: &str, f: &MultilinearMap) -> RawMap {
    RawMap {
        name: name.to_string(),
        arity: f.arity(),
        degree: f.degree(),
        entries: f
            .entries()
            .map(|(input, out)| RawEntry {
                input: input.iter().map(|&i| f.space().label(i).to_string()).collect(),
                out: terms_to_raw(f.space(), out),
            })
            .collect(),
    }
}

fn terms_from_raw(space: &Space, terms: &[RawTerm]) -> Result<LinComb<usize>> {
    let mut out = LinComb::zero();
    for t in terms {
        out.add_term(space.require(&t.label)?, parse_rational(&t.num, &t.den)?);
    }
    Ok(out)
}

fn terms_to_raw(space: &Space, terms: &LinComb<usize>) -> Vec<RawTerm> {
    terms
        .iter()
        .map(|(&i, c)| RawTerm {
            label: space.label(i).to_string(),
            num: c.numer().to_string(),
            den: c.denom().to_string(),
        })
        .collect()
}

fn parse_rational(num: &str, den: &str) -> Result<Rational> {
    let parse = |s: &str| {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("`{s}` is not a decimal integer")))
    };
    let (n, d) = (parse(num)?, parse(den)?);
    if d.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(Rational::new(n, d))
}

/// Parses `label=coeff,label=coeff` (a bare label means coefficient one)
/// into an element of `space`; the empty string is zero.
pub fn parse_element(space: &Space, spec: &str) -> Result<GradedVector> {
    let mut coeffs = LinComb::zero();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (label, coeff) = part.split_once('=').unwrap_or((part, "1"));
        coeffs.add_term(space.require(label.trim())?, parse_coefficient(coeff.trim())?);
    }
    GradedVector::from_coeffs(space, coeffs)
}

/// Parses `a`, `-a` or `a/b` as an exact rational.
pub fn parse_coefficient(s: &str) -> Result<Rational> {
    match s.split_once('/') {
        Some((n, d)) => parse_rational(n, d),
        None => parse_rational(s, "1"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixtures_roundtrip() {
        for f in fixtures::all() {
            let doc = match (f.ainfty(), f.linfty()) {
                (Some((_, m)), _) => StructureDocument::from_ainfty(&m, None),
                (_, Some((_, l))) => StructureDocument::from_linfty(&l, None),
                _ => unreachable!(),
            };
            let doc = Document::Structure(doc.with_note(f.provenance));
            let back = parse(&to_json(&doc)).unwrap();
            assert_eq!(back, doc, "{}", f.name);
        }
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(parse("{"), Err(Error::Parse(_))));
        assert!(parse(r#"{"basis":[{"label":"a","degree":0}],"bogus":1}"#).is_err());
        let bad_den = r#"{"basis":[{"label":"a","degree":0}],"maps":[{"name":"f","arity":1,"degree":0,
            "entries":[{"in":["a"],"out":[{"label":"a","num":"1","den":"0"}]}]}]}"#;
        assert!(parse(bad_den).is_err());
        let unknown = r#"{"basis":[{"label":"a","degree":0}],"maps":[{"name":"f","arity":1,"degree":0,
            "entries":[{"in":["b"],"out":[]}]}]}"#;
        assert_eq!(parse(unknown), Err(Error::UnknownLabel("b".into())));
    }

    #[test]
    fn coefficients() {
        assert_eq!(parse_coefficient("-3/6").unwrap(), crate::rational(-1, 2));
        assert_eq!(parse_coefficient("7").unwrap(), crate::integer(7));
        assert!(parse_coefficient("x").is_err());
    }
}
