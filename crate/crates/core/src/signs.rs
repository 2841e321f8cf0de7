//! Permutations and Koszul signs.
//!
//! A permutation `p` acts on a word `w` by `(p·w)_i = w_{p(i)}`: slot `i` of the
//! result receives the letter that sat in slot `p(i)`. Every module in the crate
//! uses this single convention. For multilinear maps it gives
//! `(p·f)(a_1, …, a_n) = ± f(a_{p(1)}, …, a_{p(n)})` with the Koszul sign of
//! the rearrangement.

use std::fmt;
use std::ops::{Mul, MulAssign, Neg};

use itertools::Itertools;
use num_traits::One;

use crate::error::{Error, Result};
use crate::lincomb::Rational;

/// A sign `±1`, stored as "is negative" so that multiplication is xor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sign(bool);

impl Sign {
    pub const PLUS: Sign = Sign(false);
    pub const MINUS: Sign = Sign(true);

    /// `(-1)^exponent`.
    pub fn pow(exponent: i64) -> Sign {
        Sign(exponent.rem_euclid(2) == 1)
    }

    pub fn is_positive(self) -> bool {
        !self.0
    }

    pub fn is_negative(self) -> bool {
        self.0
    }

    pub fn value(self) -> i64 {
        if self.0 {
            -1
        } else {
            1
        }
    }

    pub fn to_rational(self) -> Rational {
        if self.0 {
            -Rational::one()
        } else {
            Rational::one()
        }
    }

    pub fn apply(self, x: Rational) -> Rational {
        if self.0 {
            -x
        } else {
            x
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl MulAssign for Sign {
    fn mul_assign(&mut self, rhs: Sign) {
        self.0 ^= rhs.0;
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        Sign(!self.0)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.0 { "-1" } else { "+1" })
    }
}

/// A bijection of `{1, …, n}`, stored zero-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from one-based images `[p(1), …, p(n)]`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let zero_based: Option<Vec<usize>> = images.iter().map(|&i| i.checked_sub(1)).collect();
        match zero_based {
            Some(z) => Self::from_zero_based(z).map_err(|_| Error::InvalidPermutation(images)),
            None => Err(Error::InvalidPermutation(images)),
        }
    }

    pub fn from_zero_based(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(images.iter().map(|x| x + 1).collect()));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Zero-based images.
    pub fn as_slice(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &p) in self.images.iter().enumerate() {
            inv[p] = i;
        }
        Self { images: inv }
    }

    /// The permutation "act by `q`, then by `self`": `compose(p, q)·w = p·(q·w)`.
    ///
    /// Panics if the lengths differ.
    pub fn compose(&self, q: &Permutation) -> Permutation {
        assert_eq!(self.len(), q.len(), "composing permutations of different sizes");
        Permutation {
            images: self.images.iter().map(|&i| q.images[i]).collect(),
        }
    }

    /// `(p·w)_i = w_{p(i)}`.
    pub fn act<T: Clone>(&self, word: &[T]) -> Vec<T> {
        self.images.iter().map(|&i| word[i].clone()).collect()
    }

    pub fn inversions(&self) -> usize {
        let n = self.images.len();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// The stable sorting permutation: `p·keys` is sorted ascending.
    pub fn sorting<K: Ord>(keys: &[K]) -> Permutation {
        let mut idx: Vec<usize> = (0..keys.len()).collect();
        idx.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        Permutation { images: idx }
    }

    /// All permutations of `n` letters in lexicographic order of their images.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (0..n)
            .permutations(n)
            .map(|images| Permutation { images })
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.one_based())
    }
}

pub fn sgn(p: &Permutation) -> Sign {
    Sign::pow(p.inversions() as i64)
}

/// Sign picked up when homogeneous elements of the given degrees are moved
/// from order `x_1 … x_n` into order `x_{p(1)} … x_{p(n)}`.
pub fn koszul_sign(p: &Permutation, degrees: &[i64]) -> Result<Sign> {
    if degrees.len() != p.len() {
        return Err(Error::LengthMismatch {
            expected: p.len(),
            got: degrees.len(),
        });
    }
    Ok(koszul_sign_unchecked(p.as_slice(), degrees))
}

pub(crate) fn koszul_sign_unchecked(images: &[usize], degrees: &[i64]) -> Sign {
    let mut parity = 0i64;
    for i in 0..images.len() {
        let di = degrees[images[i]];
        if di & 1 == 0 {
            continue;
        }
        for j in i + 1..images.len() {
            if images[i] > images[j] {
                parity += di * degrees[images[j]];
            }
        }
    }
    Sign::pow(parity)
}

/// All `(a, b)`-unshuffles `σ ∈ Σ_{a+b}` with `σ(1) < … < σ(a)` and
/// `σ(a+1) < … < σ(a+b)`, ordered lexicographically by the first block.
pub fn unshuffles(a: usize, b: usize) -> Vec<Permutation> {
    let n = a + b;
    (0..n)
        .combinations(a)
        .map(|first| {
            let mut images = first.clone();
            images.extend((0..n).filter(|i| !first.contains(i)));
            Permutation { images }
        })
        .collect()
}
