use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use super::{same_space, GradedVector, Space};
use crate::error::{Error, Result};
use crate::lincomb::{LinComb, Rational};
use crate::signs::{koszul_sign_unchecked, sgn, Permutation, Sign};

/// A homogeneous multilinear map `V^{⊗n} → V` stored as a sparse table on
/// basis tuples. Arity-0 maps are elements of `V`.
#[derive(Clone)]
pub struct MultilinearMap {
    space: Space,
    arity: usize,
    degree: i64,
    entries: BTreeMap<Vec<usize>, LinComb<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetryMode {
    Symmetric,
    Antisymmetric,
}

impl SymmetryMode {
    pub fn name(self) -> &'static str {
        match self {
            SymmetryMode::Symmetric => "symmetric",
            SymmetryMode::Antisymmetric => "antisymmetric",
        }
    }
}

/// First basis tuple (lexicographically) at which a map fails graded
/// (anti)symmetry under the swap of positions `position` and `position + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryViolation {
    pub tuple: Vec<usize>,
    pub position: usize,
    /// `f(tuple) ∓ (−1)^{…} f(swapped tuple)`.
    pub difference: LinComb<usize>,
}

impl MultilinearMap {
    pub fn zero(space: &Space, arity: usize, degree: i64) -> Self {
        Self {
            space: space.clone(),
            arity,
            degree,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(space: &Space) -> Self {
        let mut f = Self::zero(space, 1, 0);
        for i in 0..space.dim() {
            f.entries.insert(vec![i], LinComb::basis(i));
        }
        f
    }

    /// Builds a map from a table, checking arity, index ranges and
    /// homogeneity of every entry.
    pub fn new(
        space: &Space,
        arity: usize,
        degree: i64,
        entries: impl IntoIterator<Item = (Vec<usize>, LinComb<usize>)>,
    ) -> Result<Self> {
        let mut f = Self::zero(space, arity, degree);
        for (input, output) in entries {
            f.add_entry(input, &output)?;
        }
        Ok(f)
    }

    /// Builds a map by evaluating `value` on every basis tuple.
    pub fn from_fn(
        space: &Space,
        arity: usize,
        degree: i64,
        mut value: impl FnMut(&[usize]) -> LinComb<usize>,
    ) -> Result<Self> {
        let mut f = Self::zero(space, arity, degree);
        for t in space.tuples(arity) {
            let out = value(&t);
            f.add_entry(t, &out)?;
        }
        Ok(f)
    }

    /// Label-based constructor, convenient for hand-written tables.
    pub fn from_labels(
        space: &Space,
        arity: usize,
        degree: i64,
        table: &[(&[&str], &[(&str, Rational)])],
    ) -> Result<Self> {
        let mut f = Self::zero(space, arity, degree);
        for (input, output) in table {
            let t = input
                .iter()
                .map(|l| space.require(l))
                .collect::<Result<Vec<_>>>()?;
            let mut out = LinComb::zero();
            for (l, c) in output.iter() {
                out.add_term(space.require(l)?, c.clone());
            }
            f.add_entry(t, &out)?;
        }
        Ok(f)
    }

    /// Adds `output` to the value on `input`.
    pub fn add_entry(&mut self, input: Vec<usize>, output: &LinComb<usize>) -> Result<()> {
        if input.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: input.len(),
            });
        }
        if let Some(&bad) = input.iter().chain(output.keys()).find(|&&i| i >= self.space.dim()) {
            return Err(Error::IndexOutOfRange(bad));
        }
        let expected = self.space.tuple_degree(&input) + self.degree;
        if output.keys().any(|&o| self.space.degree(o) != expected) {
            return Err(Error::NotHomogeneous { input, expected });
        }
        self.add_unchecked(input, output);
        Ok(())
    }

    fn add_unchecked(&mut self, input: Vec<usize>, output: &LinComb<usize>) {
        if output.is_zero() {
            return;
        }
        match self.entries.entry(input) {
            Entry::Vacant(slot) => {
                slot.insert(output.clone());
            }
            Entry::Occupied(mut slot) => {
                slot.get_mut().add_assign(output);
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn add_term_unchecked(&mut self, input: Vec<usize>, out: usize, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.entries.entry(input) {
            Entry::Vacant(slot) => {
                slot.insert(LinComb::single(out, coeff));
            }
            Entry::Occupied(mut slot) => {
                slot.get_mut().add_term(out, coeff);
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &LinComb<usize>)> {
        self.entries.iter()
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }

    /// The lexicographically first nonzero entry, used to report defects.
    pub fn first_entry(&self) -> Option<(&Vec<usize>, &LinComb<usize>)> {
        self.entries.iter().next()
    }

    /// Value on a basis tuple.
    pub fn value(&self, input: &[usize]) -> LinComb<usize> {
        self.entries.get(input).cloned().unwrap_or_default()
    }

    pub fn value_ref(&self, input: &[usize]) -> Option<&LinComb<usize>> {
        self.entries.get(input)
    }

    /// Multilinear extension of the basis table.
    pub fn apply(&self, args: &[GradedVector]) -> Result<GradedVector> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: args.len(),
            });
        }
        if args.iter().any(|a| !same_space(a.space(), &self.space)) {
            return Err(Error::SpaceMismatch);
        }
        let mut partial: Vec<(Vec<usize>, Rational)> = vec![(Vec::new(), Rational::one())];
        for a in args {
            let mut next = Vec::with_capacity(partial.len() * a.coeffs().len());
            for (t, c) in &partial {
                for (&i, ci) in a.coeffs().iter() {
                    let mut t2 = t.clone();
                    t2.push(i);
                    next.push((t2, c * ci));
                }
            }
            partial = next;
        }
        let mut out = LinComb::zero();
        for (t, c) in partial {
            if let Some(v) = self.entries.get(&t) {
                out.add_scaled(v, &c);
            }
        }
        GradedVector::from_coeffs(&self.space, out)
    }

    fn check_compatible(&self, other: &MultilinearMap) -> Result<()> {
        if !same_space(&self.space, &other.space) {
            return Err(Error::SpaceMismatch);
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: other.arity,
            });
        }
        Ok(())
    }

    /// Sum of two maps of the same arity. Zero maps are degree-agnostic.
    pub fn add(&self, other: &MultilinearMap) -> Result<MultilinearMap> {
        self.check_compatible(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: other.degree,
            });
        }
        let mut out = self.clone();
        for (k, v) in &other.entries {
            out.add_unchecked(k.clone(), v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultilinearMap) -> Result<MultilinearMap> {
        self.add(&other.signed(Sign::MINUS))
    }

    pub fn add_assign(&mut self, other: &MultilinearMap) -> Result<()> {
        *self = self.add(other)?;
        Ok(())
    }

    pub fn scaled(&self, c: &Rational) -> MultilinearMap {
        let mut out = Self::zero(&self.space, self.arity, self.degree);
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.entries {
            out.entries.insert(k.clone(), v.scaled(c));
        }
        out
    }

    pub fn signed(&self, s: Sign) -> MultilinearMap {
        if s.is_positive() {
            self.clone()
        } else {
            self.scaled(&-Rational::one())
        }
    }

    /// Same table, relabelled degree. Only valid for zero maps or when the
    /// caller knows the table is homogeneous of the new degree.
    pub fn with_degree(&self, degree: i64) -> Result<MultilinearMap> {
        MultilinearMap::new(
            &self.space,
            self.arity,
            degree,
            self.entries.iter().map(|(k, v)| (k.clone(), v.clone())),
        )
    }

    /// `f ∘_l g` with a one-based slot `l`:
    /// `(f ∘_l g)(v) = (−1)^{|g|(|v_1|+…+|v_{l−1}|)} f(v_1, …, g(v_l, …), …)`.
    pub fn compose_at(&self, slot: usize, g: &MultilinearMap) -> Result<MultilinearMap> {
        if !same_space(&self.space, &g.space) {
            return Err(Error::SpaceMismatch);
        }
        if slot == 0 || slot > self.arity {
            return Err(Error::SlotOutOfRange {
                slot,
                arity: self.arity,
            });
        }
        let l = slot - 1;
        let arity = self.arity + g.arity - 1;
        let mut out = Self::zero(&self.space, arity, self.degree + g.degree);
        if self.is_zero() || g.is_zero() {
            return Ok(out);
        }
        let mut by_slot: HashMap<usize, Vec<(&Vec<usize>, &LinComb<usize>)>> = HashMap::new();
        for (t, v) in &self.entries {
            by_slot.entry(t[l]).or_default().push((t, v));
        }
        let g_odd = g.degree & 1 != 0;
        for (u, gu) in &g.entries {
            for (o, c) in gu.iter() {
                let Some(fs) = by_slot.get(o) else { continue };
                for (t, fv) in fs {
                    let prefix = &t[..l];
                    let sign = if g_odd {
                        Sign::pow(self.space.tuple_degree(prefix))
                    } else {
                        Sign::PLUS
                    };
                    let mut input = Vec::with_capacity(arity);
                    input.extend_from_slice(prefix);
                    input.extend_from_slice(u);
                    input.extend_from_slice(&t[l + 1..]);
                    let factor = sign.apply(c.clone());
                    for (w, cw) in fv.iter() {
                        out.add_term_unchecked(input.clone(), *w, cw * &factor);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Right action `(f·σ)(v_1, …, v_n) = ε · f(v_{σ(1)}, …, v_{σ(n)})`
    /// where `ε` is the Koszul sign of that reordering.
    pub fn permute_inputs(&self, p: &Permutation) -> Result<MultilinearMap> {
        if p.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: p.len(),
            });
        }
        let inv = p.inverse();
        let mut out = Self::zero(&self.space, self.arity, self.degree);
        for (t, v) in &self.entries {
            let input = inv.act(t);
            let degrees = self.space.degrees_of(&input);
            let sign = koszul_sign_unchecked(p.as_slice(), &degrees);
            out.entries.insert(input, v.signed(sign));
        }
        Ok(out)
    }

    /// `Σ_σ ε(σ) · f·σ` over all of `Σ_n`, with `ε = 1` (symmetric) or
    /// `ε = sgn σ` (antisymmetric). In symmetric mode this is `f ∘ χ`.
    pub fn symmetrize(&self, mode: SymmetryMode) -> MultilinearMap {
        let mut out = Self::zero(&self.space, self.arity, self.degree);
        for p in Permutation::all(self.arity) {
            let term = self.permute_inputs(&p).expect("arity matches");
            let term = match mode {
                SymmetryMode::Symmetric => term,
                SymmetryMode::Antisymmetric => term.signed(sgn(&p)),
            };
            for (k, v) in &term.entries {
                out.add_unchecked(k.clone(), v);
            }
        }
        out
    }

    /// First basis tuple violating graded (anti)symmetry, if any.
    pub fn symmetry_defect(&self, mode: SymmetryMode) -> Option<SymmetryViolation> {
        if self.arity < 2 {
            return None;
        }
        let mode_sign = match mode {
            SymmetryMode::Symmetric => Sign::PLUS,
            SymmetryMode::Antisymmetric => Sign::MINUS,
        };
        for t in self.space.tuples(self.arity) {
            for i in 0..self.arity - 1 {
                let mut swapped = t.clone();
                swapped.swap(i, i + 1);
                let sign = mode_sign
                    * Sign::pow(self.space.degree(t[i]) * self.space.degree(t[i + 1]));
                let mut difference = self.value(&t);
                difference.sub_assign(&self.value(&swapped).signed(sign));
                if !difference.is_zero() {
                    return Some(SymmetryViolation {
                        tuple: t,
                        position: i,
                        difference,
                    });
                }
            }
        }
        None
    }

    pub fn require_symmetry(&self, mode: SymmetryMode) -> Result<()> {
        match self.symmetry_defect(mode) {
            None => Ok(()),
            Some(v) => Err(Error::NotSymmetric {
                arity: self.arity,
                mode: mode.name(),
                tuple: v.tuple,
            }),
        }
    }

    /// `[d, f] = d ∘_1 f − (−1)^{|f|} Σ_l f ∘_l d` for a degree-one `d`.
    pub fn end_differential(&self, d: &MultilinearMap) -> Result<MultilinearMap> {
        if d.arity != 1 {
            return Err(Error::ArityMismatch {
                expected: 1,
                got: d.arity,
            });
        }
        let mut out = d.compose_at(1, self)?;
        for l in 1..=self.arity {
            let term = self.compose_at(l, d)?.signed(-Sign::pow(self.degree));
            out.add_assign(&term)?;
        }
        Ok(out)
    }

    /// Entries rendered with labels, for diagnostics.
    pub fn describe_input(&self, input: &[usize]) -> String {
        let labels: Vec<&str> = input.iter().map(|&i| self.space.label(i)).collect();
        format!("({})", labels.join(", "))
    }

    pub fn describe_output(&self, output: &LinComb<usize>) -> String {
        format!("{:?}", output.map_keys(|&i| self.space.label(i).to_string()))
    }
}

impl PartialEq for MultilinearMap {
    /// Zero maps compare equal regardless of degree.
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space)
            && self.arity == other.arity
            && (self.degree == other.degree || self.is_zero())
            && self.entries == other.entries
    }
}

impl fmt::Debug for MultilinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "map arity {} degree {} {{", self.arity, self.degree)?;
        for (k, v) in &self.entries {
            writeln!(f, "  {} -> {}", self.describe_input(k), self.describe_output(v))?;
        }
        write!(f, "}}")
    }
}
