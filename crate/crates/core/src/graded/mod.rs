//! Finite-dimensional Z-graded vector spaces over Q and homogeneous
//! multilinear maps between their tensor powers.
//!
//! Degrees are cohomological: a differential has degree `+1`.

mod map;
mod suspension;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::lincomb::{LinComb, Rational};

pub use map::{SymmetryMode, SymmetryViolation, MultilinearMap};
pub use suspension::SuspensionPair;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub label: String,
    pub degree: i64,
}

impl BasisElement {
    pub fn new(label: impl Into<String>, degree: i64) -> Self {
        Self {
            label: label.into(),
            degree,
        }
    }
}

/// A graded vector space with a labeled homogeneous basis.
#[derive(Clone)]
pub struct GradedVectorSpace {
    basis: Vec<BasisElement>,
    index: HashMap<String, usize>,
}

pub type Space = Arc<GradedVectorSpace>;

impl GradedVectorSpace {
    pub fn new(basis: Vec<BasisElement>) -> Result<Self> {
        let mut index = HashMap::with_capacity(basis.len());
        for (i, b) in basis.iter().enumerate() {
            if index.insert(b.label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(b.label.clone()));
            }
        }
        Ok(Self { basis, index })
    }

    /// Convenience constructor from `(label, degree)` pairs.
    pub fn from_pairs<S: Into<String>>(pairs: impl IntoIterator<Item = (S, i64)>) -> Result<Space> {
        Self::new(
            pairs
                .into_iter()
                .map(|(l, d)| BasisElement::new(l, d))
                .collect(),
        )
        .map(Arc::new)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.basis[i].degree
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn degrees_of(&self, tuple: &[usize]) -> Vec<i64> {
        tuple.iter().map(|&i| self.degree(i)).collect()
    }

    pub fn tuple_degree(&self, tuple: &[usize]) -> i64 {
        tuple.iter().map(|&i| self.degree(i)).sum()
    }

    pub fn basis_of_degree(&self, degree: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree(i) == degree).collect()
    }

    pub fn degrees(&self) -> Vec<i64> {
        let mut ds: Vec<i64> = self.basis.iter().map(|b| b.degree).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// All `n`-tuples of basis indices, lexicographically.
    pub fn tuples(&self, n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        (0..n)
            .map(|_| 0..self.dim())
            .multi_cartesian_product()
            .collect()
    }

    /// `↓` of this space: same labels, every degree lowered by one.
    pub fn desuspension(&self) -> GradedVectorSpace {
        Self::new(
            self.basis
                .iter()
                .map(|b| BasisElement::new(b.label.clone(), b.degree - 1))
                .collect(),
        )
        .expect("labels already unique")
    }
}

impl PartialEq for GradedVectorSpace {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

impl Eq for GradedVectorSpace {}

impl fmt::Debug for GradedVectorSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.basis.iter().map(|b| format!("{}:{}", b.label, b.degree)))
            .finish()
    }
}

pub(crate) fn same_space(a: &Space, b: &Space) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A vector of a graded space, as a sparse combination of basis elements.
#[derive(Clone)]
pub struct GradedVector {
    space: Space,
    coeffs: LinComb<usize>,
}

impl GradedVector {
    pub fn zero(space: &Space) -> Self {
        Self {
            space: space.clone(),
            coeffs: LinComb::zero(),
        }
    }

    pub fn basis(space: &Space, index: usize) -> Result<Self> {
        if index >= space.dim() {
            return Err(Error::IndexOutOfRange(index));
        }
        Ok(Self {
            space: space.clone(),
            coeffs: LinComb::basis(index),
        })
    }

    pub fn from_label(space: &Space, label: &str) -> Result<Self> {
        Self::basis(space, space.require(label)?)
    }

    pub fn from_coeffs(space: &Space, coeffs: LinComb<usize>) -> Result<Self> {
        if let Some(&bad) = coeffs.keys().find(|&&i| i >= space.dim()) {
            return Err(Error::IndexOutOfRange(bad));
        }
        Ok(Self {
            space: space.clone(),
            coeffs,
        })
    }

    pub fn from_labels<'a>(
        space: &Space,
        terms: impl IntoIterator<Item = (&'a str, Rational)>,
    ) -> Result<Self> {
        let mut coeffs = LinComb::zero();
        for (label, c) in terms {
            coeffs.add_term(space.require(label)?, c);
        }
        Ok(Self {
            space: space.clone(),
            coeffs,
        })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn coeffs(&self) -> &LinComb<usize> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// The common degree of the support; `None` for zero or mixed vectors.
    pub fn degree(&self) -> Option<i64> {
        let mut it = self.coeffs.keys().map(|&i| self.space.degree(i));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn add(&self, other: &GradedVector) -> Result<GradedVector> {
        if !same_space(&self.space, &other.space) {
            return Err(Error::SpaceMismatch);
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.add_assign(&other.coeffs);
        Ok(Self {
            space: self.space.clone(),
            coeffs,
        })
    }

    pub fn scaled(&self, c: &Rational) -> GradedVector {
        Self {
            space: self.space.clone(),
            coeffs: self.coeffs.scaled(c),
        }
    }
}

impl PartialEq for GradedVector {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space) && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for GradedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labeled = self.coeffs.map_keys(|&i| self.space.label(i).to_string());
        write!(f, "{labeled:?}")
    }
}
