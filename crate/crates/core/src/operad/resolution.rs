//! The minimal resolutions of `Ass` and `Lie` extended by a degree-`k`
//! derivation: generators `xⁿ`, `x̄ⁿ` (`2 ≤ n ≤ N`) and `φ`, with their
//! differentials and the symbolic `∂² = 0` check.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;

use super::{
    extend_derivation, render, sigma_act, DerivationRule, FreeOperadElement, GenId, GeneratorSpec, Rep,
    RenderStyle, Signature,
};
use crate::error::{Error, Result};
use crate::signs::{sgn, unshuffles, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    Ass,
    Lie,
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::Ass => "ass",
            Preset::Lie => "lie",
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ass" => Ok(Preset::Ass),
            "lie" => Ok(Preset::Lie),
            other => Err(Error::Parse(format!("unknown preset `{other}` (expected ass or lie)"))),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    /// `xⁿ`, degree `2 − n`.
    X,
    /// `x̄ⁿ = s(xⁿ)`, degree `2 − n + k − 1`.
    XBar,
    /// `φ`, arity one, degree `k`.
    Phi,
}

/// Flips the sign of one summand of one generator's differential, counted
/// in the order the formula is written.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mutation {
    pub generator: GenId,
    pub term: usize,
}

/// The free operad on `X ⊕ Φ ⊕ ul(X)` truncated at arity `N`.
#[derive(Clone, Debug)]
pub struct Resolution {
    preset: Preset,
    k: i64,
    max_arity: usize,
    sig: Arc<Signature>,
}

impl Resolution {
    pub fn new(preset: Preset, k: i64, max_arity: usize) -> Result<Self> {
        if max_arity < 2 {
            return Err(Error::Parse(format!("maximal arity must be at least 2, got {max_arity}")));
        }
        let rep = match preset {
            Preset::Ass => Rep::Regular,
            Preset::Lie => Rep::Sign,
        };
        let mut gens = Vec::new();
        for n in 2..=max_arity {
            gens.push(GeneratorSpec {
                name: format!("x^{n}"),
                latex: format!("x^{{{n}}}"),
                arity: n,
                degree: 2 - n as i64,
                rep,
            });
        }
        for n in 2..=max_arity {
            gens.push(GeneratorSpec {
                name: format!("xbar^{n}"),
                latex: format!("\\bar{{x}}^{{{n}}}"),
                arity: n,
                degree: 2 - n as i64 + k - 1,
                rep,
            });
        }
        gens.push(GeneratorSpec {
            name: "phi".to_string(),
            latex: "\\phi".to_string(),
            arity: 1,
            degree: k,
            rep: Rep::Trivial,
        });
        Ok(Self {
            preset,
            k,
            max_arity,
            sig: Signature::new(gens)?,
        })
    }

    pub fn preset(&self) -> Preset {
        self.preset
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn x(&self, n: usize) -> GenId {
        assert!((2..=self.max_arity).contains(&n), "arity {n} outside 2..={}", self.max_arity);
        GenId(n - 2)
    }

    pub fn xbar(&self, n: usize) -> GenId {
        assert!((2..=self.max_arity).contains(&n), "arity {n} outside 2..={}", self.max_arity);
        GenId(self.max_arity - 1 + n - 2)
    }

    pub fn phi(&self) -> GenId {
        GenId(2 * (self.max_arity - 1))
    }

    pub fn kind(&self, id: GenId) -> (GeneratorKind, usize) {
        let spec = self.sig.get(id);
        let kind = if id == self.phi() {
            GeneratorKind::Phi
        } else if id.0 < self.max_arity - 1 {
            GeneratorKind::X
        } else {
            GeneratorKind::XBar
        };
        (kind, spec.arity)
    }

    /// Looks a generator up by name: `x^n`, `xbar^n` or `phi`.
    pub fn find(&self, name: &str) -> Result<GenId> {
        self.sig
            .find(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// All generators: `x²…x^N`, `x̄²…x̄^N`, `φ`.
    pub fn generators(&self) -> Vec<GenId> {
        self.sig.ids().collect()
    }

    pub fn corolla(&self, id: GenId) -> FreeOperadElement {
        FreeOperadElement::generator(&self.sig, id)
    }

    pub fn differential(&self, id: GenId) -> FreeOperadElement {
        self.differential_with(id, None)
    }

    pub fn differential_with(&self, id: GenId, mutation: Option<Mutation>) -> FreeOperadElement {
        self.build(id, mutation.filter(|m| m.generator == id).map(|m| m.term)).0
    }

    /// Number of written summands in `∂g`; the range of `Mutation::term`.
    pub fn term_count(&self, id: GenId) -> usize {
        self.build(id, None).1
    }

    fn build(&self, id: GenId, flip: Option<usize>) -> (FreeOperadElement, usize) {
        let mut b = Builder::new(&self.sig, self.sig.get(id).arity, self.sig.get(id).degree + 1, flip);
        let k = self.k;
        match self.kind(id) {
            (GeneratorKind::Phi, _) => {}
            (GeneratorKind::X, n) => self.quadratic_terms(&mut b, n, |i, j| {
                vec![(Sign::PLUS, self.x(i), self.x(j))]
            }),
            (GeneratorKind::XBar, n) => {
                b.push(&self.corolla(self.phi()).compose(1, &self.corolla(self.x(n))).unwrap(), Sign::PLUS);
                let twist = -Sign::pow(n as i64 * k);
                for l in 1..=n {
                    b.push(&self.corolla(self.x(n)).compose(l, &self.corolla(self.phi())).unwrap(), twist);
                }
                self.quadratic_terms(&mut b, n, |i, j| {
                    vec![
                        (-Sign::pow(k), self.xbar(i), self.x(j)),
                        (-Sign::pow(k) * Sign::pow((k + 1) * i as i64), self.x(i), self.xbar(j)),
                    ]
                });
            }
        }
        (b.out, b.index)
    }

    /// The quadratic part of `∂` in arity `n`: for each `i + j = n + 1` with
    /// `i, j ≥ 2`, the written composites `g ∘_l h` (associative case) or
    /// `σ·(g ∘_1 h)` (Lie case) of every pair `(ε, g, h)` produced by `pairs`,
    /// each weighted by `ε` and the written sign.
    fn quadratic_terms(&self, b: &mut Builder, n: usize, pairs: impl Fn(usize, usize) -> Vec<(Sign, GenId, GenId)>) {
        for i in 2..n {
            let j = n + 1 - i;
            match self.preset {
                Preset::Ass => {
                    for l in 1..=i {
                        let sign = Sign::pow((i + (l + 1) * (j + 1)) as i64);
                        for (eps, g, h) in pairs(i, j) {
                            let t = self.corolla(g).compose(l, &self.corolla(h)).unwrap();
                            b.push(&t, sign * eps);
                        }
                    }
                }
                Preset::Lie => {
                    let sign = Sign::pow((j * (i - 1)) as i64);
                    for sigma in unshuffles(j, i - 1) {
                        for (eps, g, h) in pairs(i, j) {
                            let t = self.corolla(g).compose(1, &self.corolla(h)).unwrap();
                            let t = sigma_act(&sigma, &t).unwrap();
                            b.push(&t, sign * sgn(&sigma) * eps);
                        }
                    }
                }
            }
        }
    }

    /// `∂` on every generator, as a derivation rule.
    pub fn differential_rule(&self, mutation: Option<Mutation>) -> DerivationRule {
        self.generators()
            .into_iter()
            .map(|g| (g, self.differential_with(g, mutation)))
            .collect()
    }

    /// The degree `k − 1` derivation `s: xⁿ ↦ x̄ⁿ` of the free operad on `X`.
    pub fn s_rule(&self) -> DerivationRule {
        (2..=self.max_arity)
            .map(|n| (self.x(n), self.corolla(self.xbar(n))))
            .collect()
    }

    /// Applies `∂` twice to each generator, in parallel over generators.
    pub fn check_d_squared(&self, mutation: Option<Mutation>) -> DSquaredReport {
        let rule = self.differential_rule(mutation);
        let results = self
            .generators()
            .into_par_iter()
            .map(|g| {
                let residue = extend_derivation(&rule, 1, &rule[&g]).expect("rule covers every generator");
                GeneratorResidue {
                    generator: self.sig.get(g).name.clone(),
                    arity: self.sig.get(g).arity,
                    residue,
                }
            })
            .collect();
        DSquaredReport {
            preset: self.preset,
            k: self.k,
            max_arity: self.max_arity,
            results,
        }
    }
}

/// Accumulates written summands, optionally negating one of them.
struct Builder {
    out: FreeOperadElement,
    flip: Option<usize>,
    index: usize,
}

impl Builder {
    fn new(sig: &Arc<Signature>, arity: usize, degree: i64, flip: Option<usize>) -> Self {
        Self {
            out: FreeOperadElement::zero(sig, arity, degree),
            flip,
            index: 0,
        }
    }

    fn push(&mut self, term: &FreeOperadElement, sign: Sign) {
        let sign = if self.flip == Some(self.index) { -sign } else { sign };
        self.index += 1;
        self.out
            .add_assign(&term.signed(sign))
            .expect("summands share arity and degree");
    }

}

/// `∂g` for a generator named `x^n`, `xbar^n` or `phi`.
pub fn generator_differential(preset: Preset, name: &str, k: i64) -> Result<FreeOperadElement> {
    let arity = match name {
        "phi" => 2,
        _ => name
            .strip_prefix("xbar^")
            .or_else(|| name.strip_prefix("x^"))
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|&n| n >= 2)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?,
    };
    let r = Resolution::new(preset, k, arity)?;
    Ok(r.differential(r.find(name)?))
}

pub fn check_d_squared(preset: Preset, k: i64, max_arity: usize) -> Result<DSquaredReport> {
    Ok(Resolution::new(preset, k, max_arity)?.check_d_squared(None))
}

#[derive(Clone, Debug)]
pub struct GeneratorResidue {
    pub generator: String,
    pub arity: usize,
    /// `∂²` of the generator; zero when the check passes.
    pub residue: FreeOperadElement,
}

#[derive(Clone, Debug)]
pub struct DSquaredReport {
    pub preset: Preset,
    pub k: i64,
    pub max_arity: usize,
    pub results: Vec<GeneratorResidue>,
}

impl DSquaredReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.residue.is_zero())
    }

    pub fn failures(&self) -> impl Iterator<Item = &GeneratorResidue> {
        self.results.iter().filter(|r| !r.residue.is_zero())
    }

    pub fn render(&self, style: RenderStyle) -> String {
        let mut out = format!(
            "d^2 check: preset {}, k = {}, max arity {}\n",
            self.preset, self.k, self.max_arity
        );
        for r in &self.results {
            if r.residue.is_zero() {
                out.push_str(&format!("  {}: ok\n", r.generator));
            } else {
                out.push_str(&format!("  {}: residue {}\n", r.generator, render(&r.residue, style)));
            }
        }
        out.push_str(if self.passed() { "PASS\n" } else { "FAIL\n" });
        out
    }
}
