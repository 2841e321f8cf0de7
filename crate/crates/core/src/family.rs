//! Arity-indexed families of homogeneous maps `{f_n}_{n ≥ 1}` of a common
//! degree, truncated at a finite arity.

use std::fmt;

use crate::error::{Error, Result};
use crate::graded::{same_space, MultilinearMap, Space};
use crate::lincomb::LinComb;

#[derive(Clone, PartialEq)]
pub struct MapFamily {
    space: Space,
    degree: i64,
    /// `maps[n - 1]` is the arity-`n` component.
    maps: Vec<MultilinearMap>,
}

impl MapFamily {
    pub fn zero(space: &Space, degree: i64, truncation: usize) -> Self {
        Self {
            space: space.clone(),
            degree,
            maps: (1..=truncation)
                .map(|n| MultilinearMap::zero(space, n, degree))
                .collect(),
        }
    }

    /// Builds a family from its components of arities `1, 2, …`. Zero
    /// components may carry any degree label.
    pub fn new(space: &Space, degree: i64, maps: Vec<MultilinearMap>) -> Result<Self> {
        let mut checked = Vec::with_capacity(maps.len());
        for (i, f) in maps.into_iter().enumerate() {
            checked.push(Self::check_component(space, degree, i + 1, f)?);
        }
        Ok(Self {
            space: space.clone(),
            degree,
            maps: checked,
        })
    }

    fn check_component(space: &Space, degree: i64, arity: usize, f: MultilinearMap) -> Result<MultilinearMap> {
        if !same_space(f.space(), space) {
            return Err(Error::SpaceMismatch);
        }
        if f.arity() != arity {
            return Err(Error::ArityMismatch {
                expected: arity,
                got: f.arity(),
            });
        }
        if f.is_zero() {
            return Ok(MultilinearMap::zero(space, arity, degree));
        }
        if f.degree() != degree {
            return Err(Error::DegreeMismatch {
                expected: degree,
                got: f.degree(),
            });
        }
        Ok(f)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// Largest arity carried; all higher components are zero.
    pub fn truncation(&self) -> usize {
        self.maps.len()
    }

    pub fn maps(&self) -> &[MultilinearMap] {
        &self.maps
    }

    /// The arity-`n` component, zero beyond the truncation.
    pub fn get(&self, n: usize) -> MultilinearMap {
        assert!(n >= 1, "families start at arity one");
        self.maps
            .get(n - 1)
            .cloned()
            .unwrap_or_else(|| MultilinearMap::zero(&self.space, n, self.degree))
    }

    pub fn get_ref(&self, n: usize) -> Option<&MultilinearMap> {
        n.checked_sub(1).and_then(|i| self.maps.get(i))
    }

    pub fn set(&mut self, f: MultilinearMap) -> Result<()> {
        let n = f.arity();
        if n == 0 {
            return Err(Error::ArityMismatch { expected: 1, got: 0 });
        }
        let f = Self::check_component(&self.space, self.degree, n, f)?;
        while self.maps.len() < n {
            let arity = self.maps.len() + 1;
            self.maps.push(MultilinearMap::zero(&self.space, arity, self.degree));
        }
        self.maps[n - 1] = f;
        Ok(())
    }

    /// Keeps arities `≤ n`, padding with zeros if needed.
    pub fn truncated(&self, n: usize) -> MapFamily {
        Self {
            space: self.space.clone(),
            degree: self.degree,
            maps: (1..=n).map(|a| self.get(a)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(MultilinearMap::is_zero)
    }

    pub fn add(&self, other: &MapFamily) -> Result<MapFamily> {
        if !same_space(&self.space, &other.space) {
            return Err(Error::SpaceMismatch);
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: other.degree,
            });
        }
        let degree = if self.is_zero() { other.degree } else { self.degree };
        let n = self.truncation().max(other.truncation());
        let maps = (1..=n)
            .map(|a| self.get(a).add(&other.get(a)))
            .collect::<Result<Vec<_>>>()?;
        MapFamily::new(&self.space, degree, maps)
    }

    pub fn scaled(&self, c: &crate::lincomb::Rational) -> MapFamily {
        Self {
            space: self.space.clone(),
            degree: self.degree,
            maps: self.maps.iter().map(|f| f.scaled(c)).collect(),
        }
    }

    /// Same components with trailing zeros dropped, for comparisons that
    /// should ignore the declared truncation.
    pub fn trimmed(&self) -> MapFamily {
        let mut maps = self.maps.clone();
        while maps.last().is_some_and(MultilinearMap::is_zero) {
            maps.pop();
        }
        Self {
            space: self.space.clone(),
            degree: self.degree,
            maps,
        }
    }
}

impl fmt::Debug for MapFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "family degree {}:", self.degree)?;
        for m in &self.maps {
            writeln!(f, "{m:?}")?;
        }
        Ok(())
    }
}

/// Where a relation fails: the arity, the first offending basis tuple and
/// the value there.
#[derive(Clone, Debug, PartialEq)]
pub struct DefectWitness {
    pub relation: &'static str,
    pub arity: usize,
    pub tuple: Vec<usize>,
    pub labels: Vec<String>,
    pub value: LinComb<String>,
}

impl DefectWitness {
    /// `None` when the defect map vanishes.
    pub fn of(relation: &'static str, defect: &MultilinearMap) -> Option<Self> {
        let (t, v) = defect.first_entry()?;
        let space = defect.space();
        Some(Self {
            relation,
            arity: defect.arity(),
            tuple: t.clone(),
            labels: t.iter().map(|&i| space.label(i).to_string()).collect(),
            value: v.map_keys(|&i| space.label(i).to_string()),
        })
    }
}

impl fmt::Display for DefectWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails at arity {} on ({}): defect {}",
            self.relation,
            self.arity,
            self.labels.join(", "),
            self.value
                .iter()
                .map(|(label, c)| format!("{c}*{label}"))
                .collect::<Vec<_>>()
                .join(" + ")
        )
    }
}
