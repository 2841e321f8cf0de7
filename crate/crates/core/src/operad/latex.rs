//! Deterministic rendering of free-operad elements as nested partial
//! compositions.
//!
//! A tree `v(C_1, …, C_a)` is written `((v ∘_1 C_1) ∘_{1+|C_1|} C_2) …`,
//! skipping leaf children, which is exactly its preorder value. Trees whose
//! leaves are not labelled `1, …, n` from left to right are prefixed with
//! the relabelling, as in `[2,1,3]·(…)`.

use num_traits::{One, Signed};

use super::{FreeOperadElement, Signature, Tree};
use crate::lincomb::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderStyle {
    Text,
    Latex,
}

impl RenderStyle {
    fn circ(self, slot: usize) -> String {
        match self {
            RenderStyle::Text => format!(" o_{slot} "),
            RenderStyle::Latex => format!("\\circ_{{{slot}}}"),
        }
    }

    fn dot(self) -> &'static str {
        match self {
            RenderStyle::Text => ".",
            RenderStyle::Latex => "\\cdot",
        }
    }
}

pub fn render(e: &FreeOperadElement, style: RenderStyle) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (tree, coeff)) in e.terms().iter().enumerate() {
        let negative = coeff.is_negative();
        match (i, negative) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        let magnitude = coeff.abs();
        if !magnitude.is_one() {
            out.push_str(&render_coeff(&magnitude, style));
            out.push(' ');
        }
        out.push_str(&render_tree(e.signature(), tree, style));
    }
    out
}

fn render_coeff(c: &Rational, style: RenderStyle) -> String {
    if c.is_integer() {
        return c.numer().to_string();
    }
    match style {
        RenderStyle::Text => format!("{}/{}", c.numer(), c.denom()),
        RenderStyle::Latex => format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom()),
    }
}

fn render_tree(sig: &Signature, tree: &Tree, style: RenderStyle) -> String {
    let body = render_planar(sig, tree, style).0;
    let leaves = tree.leaves();
    if leaves.iter().enumerate().all(|(i, &l)| l == i + 1) {
        return body;
    }
    let labels: Vec<String> = leaves.iter().map(usize::to_string).collect();
    format!("[{}]{}({})", labels.join(","), style.dot(), body)
}

/// The rendering and whether it is a bare generator name.
fn render_planar(sig: &Signature, tree: &Tree, style: RenderStyle) -> (String, bool) {
    match tree {
        Tree::Leaf(_) => ("1".to_string(), true),
        Tree::Vertex { gen, children } => {
            let spec = sig.get(*gen);
            let mut s = match style {
                RenderStyle::Text => spec.name.clone(),
                RenderStyle::Latex => spec.latex.clone(),
            };
            let mut atomic = true;
            let mut slot = 1;
            for child in children {
                if let Tree::Vertex { .. } = child {
                    let (c, child_atomic) = render_planar(sig, child, style);
                    let left = if atomic { s } else { format!("({s})") };
                    let right = if child_atomic { c } else { format!("({c})") };
                    s = format!("{left}{}{right}", style.circ(slot));
                    atomic = false;
                }
                slot += child.arity();
            }
            (s, atomic)
        }
    }
}
