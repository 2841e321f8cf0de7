//! The free Σ-operad on a graded Σ-module, with elements stored as sums of
//! leaf-labelled decorated trees.
//!
//! A tree stands for the tensor word of its vertex decorations read in
//! depth-first preorder; every sign below is the Koszul sign of moving
//! such words around. Children of a vertex whose decoration spans a sign or
//! trivial representation are sorted by minimal leaf label; for the regular
//! representation the planar order itself is part of the basis.

mod eval;
mod latex;
mod resolution;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub use eval::evaluate;
pub use latex::{render, RenderStyle};
pub use resolution::{
    check_d_squared, generator_differential, DSquaredReport, GeneratorKind, GeneratorResidue, Mutation, Preset,
    Resolution,
};

use crate::error::{Error, Result};
use crate::lincomb::{LinComb, Rational};
use crate::signs::{koszul_sign_unchecked, sgn, Permutation, Sign};

/// How `Σ_n` acts on the span of a generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rep {
    /// `kΣ_n`: every relabelling is a new basis element.
    Regular,
    /// The one-dimensional sign representation.
    Sign,
    /// The one-dimensional trivial representation.
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    /// Plain-text name, also used as identifier.
    pub name: String,
    pub latex: String,
    pub arity: usize,
    pub degree: i64,
    pub rep: Rep,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenId(pub usize);

/// The generators of a free operad.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    generators: Vec<GeneratorSpec>,
}

impl Signature {
    pub fn new(generators: Vec<GeneratorSpec>) -> Result<Arc<Self>> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::DuplicateLabel(g.name.clone()));
            }
        }
        Ok(Arc::new(Self { generators }))
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn get(&self, id: GenId) -> &GeneratorSpec {
        &self.generators[id.0]
    }

    pub fn find(&self, name: &str) -> Option<GenId> {
        self.generators.iter().position(|g| g.name == name).map(GenId)
    }

    pub fn ids(&self) -> impl Iterator<Item = GenId> {
        (0..self.generators.len()).map(GenId)
    }
}

/// A decorated tree. Leaves carry labels `1..=n`, each used once.
///
/// `Vertex` is declared first so that trees with composite children sort
/// before bare leaves, which keeps renderings in the familiar order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tree {
    Vertex { gen: GenId, children: Vec<Tree> },
    Leaf(usize),
}

impl Tree {
    pub fn corolla(sig: &Signature, gen: GenId) -> Tree {
        let arity = sig.get(gen).arity;
        Tree::Vertex {
            gen,
            children: (1..=arity).map(Tree::Leaf).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Vertex { children, .. } => children.iter().map(Tree::arity).sum(),
        }
    }

    pub fn degree(&self, sig: &Signature) -> i64 {
        match self {
            Tree::Leaf(_) => 0,
            Tree::Vertex { gen, children } => {
                sig.get(*gen).degree + children.iter().map(|c| c.degree(sig)).sum::<i64>()
            }
        }
    }

    /// Number of vertices, the weight grading.
    pub fn weight(&self) -> usize {
        match self {
            Tree::Leaf(_) => 0,
            Tree::Vertex { children, .. } => 1 + children.iter().map(Tree::weight).sum::<usize>(),
        }
    }

    pub fn min_leaf(&self) -> Option<usize> {
        match self {
            Tree::Leaf(l) => Some(*l),
            Tree::Vertex { children, .. } => children.iter().filter_map(Tree::min_leaf).min(),
        }
    }

    /// Leaf labels in planar order.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            Tree::Leaf(l) => out.push(*l),
            Tree::Vertex { children, .. } => children.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    /// Vertex decorations in depth-first preorder.
    pub fn vertices(&self) -> Vec<GenId> {
        let mut out = Vec::new();
        self.collect_vertices(&mut out);
        out
    }

    fn collect_vertices(&self, out: &mut Vec<GenId>) {
        if let Tree::Vertex { gen, children } = self {
            out.push(*gen);
            children.iter().for_each(|c| c.collect_vertices(out));
        }
    }

    pub fn relabel(&self, f: &impl Fn(usize) -> usize) -> Tree {
        match self {
            Tree::Leaf(l) => Tree::Leaf(f(*l)),
            Tree::Vertex { gen, children } => Tree::Vertex {
                gen: *gen,
                children: children.iter().map(|c| c.relabel(f)).collect(),
            },
        }
    }

    /// Canonical representative and the sign relating it to `self`.
    pub fn canonical(&self, sig: &Signature) -> (Tree, Sign) {
        match self {
            Tree::Leaf(_) => (self.clone(), Sign::PLUS),
            Tree::Vertex { gen, children } => {
                let mut sign = Sign::PLUS;
                let mut kids = Vec::with_capacity(children.len());
                for c in children {
                    let (c, s) = c.canonical(sig);
                    sign *= s;
                    kids.push(c);
                }
                let rep = sig.get(*gen).rep;
                if rep != Rep::Regular && kids.len() > 1 {
                    let keys: Vec<(Option<usize>, &Tree)> = kids.iter().map(|c| (c.min_leaf(), c)).collect();
                    let p = Permutation::sorting(&keys);
                    if !p.is_identity() {
                        let degrees: Vec<i64> = kids.iter().map(|c| c.degree(sig)).collect();
                        sign *= koszul_sign_unchecked(p.as_slice(), &degrees);
                        if rep == Rep::Sign {
                            sign *= sgn(&p);
                        }
                        kids = p.act(&kids);
                    }
                }
                (Tree::Vertex { gen: *gen, children: kids }, sign)
            }
        }
    }

    /// Grafts `sub` onto leaf `slot`, relabelling order-preservingly. The sign
    /// moves the block of `sub` past the vertices that follow the leaf in
    /// preorder. The result is not canonicalized.
    fn graft(&self, sig: &Signature, slot: usize, sub: &Tree) -> (Tree, Sign) {
        let shift = sub.arity();
        let sub = sub.relabel(&|m| m + slot - 1);
        let mut after = 0i64;
        let mut seen = false;
        let tree = self.graft_rec(sig, slot, shift, &sub, &mut seen, &mut after);
        (tree, Sign::pow(sub.degree(sig) * after))
    }

    fn graft_rec(&self, sig: &Signature, slot: usize, shift: usize, sub: &Tree, seen: &mut bool, after: &mut i64) -> Tree {
        match self {
            Tree::Leaf(l) if *l == slot => {
                *seen = true;
                sub.clone()
            }
            Tree::Leaf(l) if *l > slot => Tree::Leaf(l + shift - 1),
            Tree::Leaf(l) => Tree::Leaf(*l),
            Tree::Vertex { gen, children } => {
                if *seen {
                    *after += sig.get(*gen).degree;
                }
                Tree::Vertex {
                    gen: *gen,
                    children: children
                        .iter()
                        .map(|c| c.graft_rec(sig, slot, shift, sub, seen, after))
                        .collect(),
                }
            }
        }
    }

    /// Replaces the vertex with preorder index `target` by `replacement`,
    /// whose leaf `i` receives the `i`-th child of that vertex. Returns the
    /// new tree, the Koszul sign of reordering `replacement ⊗ children` into
    /// preorder, and the total degree of the vertices preceding the target.
    fn substitute_vertex(&self, sig: &Signature, target: usize, replacement: &Tree) -> (Tree, Sign, i64) {
        let mut counter = 0usize;
        let mut prefix = 0i64;
        let mut sign = Sign::PLUS;
        let tree = self.substitute_rec(sig, target, replacement, &mut counter, &mut prefix, &mut sign);
        (tree, sign, prefix)
    }

    fn substitute_rec(
        &self,
        sig: &Signature,
        target: usize,
        replacement: &Tree,
        counter: &mut usize,
        prefix: &mut i64,
        sign: &mut Sign,
    ) -> Tree {
        match self {
            Tree::Leaf(_) => self.clone(),
            Tree::Vertex { gen, children } => {
                let index = *counter;
                *counter += 1;
                if index == target {
                    *counter += children.iter().map(Tree::weight).sum::<usize>();
                    let r_vertices = replacement.weight();
                    let mut degrees: Vec<i64> = replacement
                        .vertices()
                        .iter()
                        .map(|g| sig.get(*g).degree)
                        .collect();
                    degrees.extend(children.iter().map(|c| c.degree(sig)));
                    let mut order = Vec::with_capacity(degrees.len());
                    let mut next_vertex = 0usize;
                    let tree = plug_children(replacement, children, r_vertices, &mut next_vertex, &mut order);
                    *sign = koszul_sign_unchecked(&order, &degrees);
                    return tree;
                }
                if index < target {
                    *prefix += sig.get(*gen).degree;
                }
                Tree::Vertex {
                    gen: *gen,
                    children: children
                        .iter()
                        .map(|c| c.substitute_rec(sig, target, replacement, counter, prefix, sign))
                        .collect(),
                }
            }
        }
    }
}

/// Puts `children[i − 1]` on leaf `i` of `r`, recording the preorder of the
/// blocks: vertices of `r` are positions `0..r_vertices`, child `i` is
/// position `r_vertices + i − 1`.
fn plug_children(r: &Tree, children: &[Tree], r_vertices: usize, next_vertex: &mut usize, order: &mut Vec<usize>) -> Tree {
    match r {
        Tree::Leaf(i) => {
            order.push(r_vertices + i - 1);
            children[i - 1].clone()
        }
        Tree::Vertex { gen, children: kids } => {
            order.push(*next_vertex);
            *next_vertex += 1;
            Tree::Vertex {
                gen: *gen,
                children: kids
                    .iter()
                    .map(|c| plug_children(c, children, r_vertices, next_vertex, order))
                    .collect(),
            }
        }
    }
}

/// A homogeneous element of the free operad: a sum of canonical trees of a
/// common arity and total degree.
#[derive(Clone)]
pub struct FreeOperadElement {
    sig: Arc<Signature>,
    arity: usize,
    degree: i64,
    terms: LinComb<Tree>,
}

impl FreeOperadElement {
    pub fn zero(sig: &Arc<Signature>, arity: usize, degree: i64) -> Self {
        Self {
            sig: sig.clone(),
            arity,
            degree,
            terms: LinComb::zero(),
        }
    }

    /// The operadic unit in arity one.
    pub fn identity(sig: &Arc<Signature>) -> Self {
        Self {
            sig: sig.clone(),
            arity: 1,
            degree: 0,
            terms: LinComb::basis(Tree::Leaf(1)),
        }
    }

    pub fn generator(sig: &Arc<Signature>, gen: GenId) -> Self {
        let spec = sig.get(gen);
        Self {
            sig: sig.clone(),
            arity: spec.arity,
            degree: spec.degree,
            terms: LinComb::basis(Tree::corolla(sig, gen)),
        }
    }

    /// `coeff · tree`, canonicalized. The leaf labels must be `1..=n`.
    pub fn from_tree(sig: &Arc<Signature>, tree: &Tree, coeff: Rational) -> Result<Self> {
        let mut leaves = tree.leaves();
        leaves.sort_unstable();
        if leaves.iter().enumerate().any(|(i, &l)| l != i + 1) {
            return Err(Error::InvalidPermutation(tree.leaves()));
        }
        if let Tree::Vertex { .. } = tree {
            for g in tree.vertices() {
                if g.0 >= sig.len() {
                    return Err(Error::UnknownGenerator(format!("#{}", g.0)));
                }
            }
            check_vertex_arities(sig, tree)?;
        }
        let (t, s) = tree.canonical(sig);
        Ok(Self {
            sig: sig.clone(),
            arity: leaves.len(),
            degree: tree.degree(sig),
            terms: LinComb::single(t, s.apply(coeff)),
        })
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn terms(&self) -> &LinComb<Tree> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, tree: &Tree) -> Rational {
        self.terms.coeff(tree)
    }

    /// Smallest and largest vertex count among the terms.
    pub fn weight_range(&self) -> Option<(usize, usize)> {
        let weights = self.terms.keys().map(Tree::weight);
        let (lo, hi) = weights.fold((usize::MAX, 0), |(lo, hi), w| (lo.min(w), hi.max(w)));
        (lo <= hi).then_some((lo, hi))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if !Arc::ptr_eq(&self.sig, &other.sig) && *self.sig != *other.sig {
            return Err(Error::StructureMismatch);
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: other.arity,
            });
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: other.degree,
            });
        }
        Ok(())
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<()> {
        self.check_compatible(other)?;
        if self.is_zero() {
            self.degree = other.degree;
        }
        self.terms.add_assign(&other.terms);
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.signed(Sign::MINUS))
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        Self {
            terms: self.terms.scaled(c),
            ..self.clone()
        }
    }

    pub fn signed(&self, s: Sign) -> Self {
        Self {
            terms: self.terms.signed(s),
            ..self.clone()
        }
    }

    /// Adds `coeff · tree` for a tree that may not be canonical.
    fn add_tree(&mut self, tree: &Tree, coeff: Rational) {
        let (t, s) = tree.canonical(&self.sig);
        self.terms.add_term(t, s.apply(coeff));
    }

    /// Operadic `self ∘_slot other`.
    pub fn compose(&self, slot: usize, other: &Self) -> Result<Self> {
        tree_compose(self, slot, other)
    }
}

fn check_vertex_arities(sig: &Signature, tree: &Tree) -> Result<()> {
    if let Tree::Vertex { gen, children } = tree {
        let spec = sig.get(*gen);
        if spec.arity != children.len() {
            return Err(Error::ArityMismatch {
                expected: spec.arity,
                got: children.len(),
            });
        }
        children.iter().try_for_each(|c| check_vertex_arities(sig, c))?;
    }
    Ok(())
}

impl PartialEq for FreeOperadElement {
    fn eq(&self, other: &Self) -> bool {
        *self.sig == *other.sig
            && self.arity == other.arity
            && (self.degree == other.degree || self.is_zero())
            && self.terms == other.terms
    }
}

impl fmt::Debug for FreeOperadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render(self, RenderStyle::Text))
    }
}

impl fmt::Display for FreeOperadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render(self, RenderStyle::Text))
    }
}

/// Grafts `b` onto leaf `slot` of `a`, bilinearly.
pub fn tree_compose(a: &FreeOperadElement, slot: usize, b: &FreeOperadElement) -> Result<FreeOperadElement> {
    if slot == 0 || slot > a.arity {
        return Err(Error::SlotOutOfRange { slot, arity: a.arity });
    }
    if *a.sig != *b.sig {
        return Err(Error::StructureMismatch);
    }
    let mut out = FreeOperadElement::zero(&a.sig, a.arity + b.arity - 1, a.degree + b.degree);
    for (ta, ca) in a.terms.iter() {
        for (tb, cb) in b.terms.iter() {
            let (t, s) = ta.graft(&a.sig, slot, tb);
            out.add_tree(&t, s.apply(ca * cb));
        }
    }
    Ok(out)
}

/// `p · e`: leaf `l` is relabelled `p(l)`. On evaluation this is the action
/// `(f·p)(v) = ± f(v_{p(1)}, …, v_{p(n)})` on maps.
pub fn sigma_act(p: &Permutation, e: &FreeOperadElement) -> Result<FreeOperadElement> {
    if p.len() != e.arity {
        return Err(Error::ArityMismatch {
            expected: e.arity,
            got: p.len(),
        });
    }
    let images = p.as_slice();
    let mut out = FreeOperadElement::zero(&e.sig, e.arity, e.degree);
    for (t, c) in e.terms.iter() {
        out.add_tree(&t.relabel(&|l| images[l - 1] + 1), c.clone());
    }
    Ok(out)
}

/// Images of generators under an operadic derivation.
pub type DerivationRule = BTreeMap<GenId, FreeOperadElement>;

/// The derivation of degree `deg` determined by `rule`, applied to `e`:
/// each vertex in preorder is replaced by its image, with sign
/// `(−1)^{deg · (degrees of the vertices before it)}`.
pub fn extend_derivation(rule: &DerivationRule, deg: i64, e: &FreeOperadElement) -> Result<FreeOperadElement> {
    let sig = &e.sig;
    let mut out = FreeOperadElement::zero(sig, e.arity, e.degree + deg);
    for (tree, coeff) in e.terms.iter() {
        for (index, gen) in tree.vertices().into_iter().enumerate() {
            let image = rule
                .get(&gen)
                .ok_or_else(|| Error::MissingRule(sig.get(gen).name.clone()))?;
            if image.arity != sig.get(gen).arity {
                return Err(Error::ArityMismatch {
                    expected: sig.get(gen).arity,
                    got: image.arity,
                });
            }
            for (r, rc) in image.terms.iter() {
                let (t, s, prefix) = tree.substitute_vertex(sig, index, r);
                let sign = s * Sign::pow(deg * prefix);
                out.add_tree(&t, sign.apply(coeff * rc));
            }
        }
    }
    Ok(out)
}
