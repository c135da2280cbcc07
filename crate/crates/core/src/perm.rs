//! Permutations of `{1, …, n}` stored as 0-based image vectors.
//!
//! Composition is a *right action*: `g.compose(&h)` applies `g` first and
//! then `h`, so `i^(gh) = (i^g)^h`. Multiplying `g` on the right by a
//! subgroup element `k` therefore relabels the *values* of `g`'s image
//! vector, which is what coset minimality in [`crate::splitting`] relies on.
//! Every other module (group actions, splitting sets, the solver) uses this
//! same convention.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("invalid degree {0}: permutations need degree >= 1")]
    InvalidDegree(usize),
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("value {value} is out of range for degree {degree}")]
    OutOfRange { value: usize, degree: usize },
    #[error("not a bijection: value {value} appears more than once")]
    Duplicate { value: usize },
    #[error("cannot parse {token:?} as a point")]
    BadToken { token: String },
}

/// An element of the symmetric group `S_n`.
///
/// `images()[i]` is the 0-based image of the 0-based point `i`. The text
/// form (`Display` / `FromStr`) is the 1-based base image, e.g. `"2 3 1"`.
/// The derived ordering is lexicographic on base images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Result<Self, PermError> {
        if n == 0 {
            return Err(PermError::InvalidDegree(0));
        }
        Ok(Self {
            images: (0..n).collect(),
        })
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        if n == 0 {
            return Err(PermError::InvalidDegree(0));
        }
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n {
                return Err(PermError::OutOfRange {
                    value: v + 1,
                    degree: n,
                });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(PermError::Duplicate { value: v + 1 });
            }
        }
        Ok(Self { images })
    }

    /// Builds a permutation from 1-based images, e.g. `[2, 3, 1]`.
    pub fn from_one_based(images: &[usize]) -> Result<Self, PermError> {
        let n = images.len();
        let zero = images
            .iter()
            .map(|&v| {
                v.checked_sub(1).ok_or(PermError::OutOfRange {
                    value: v,
                    degree: n,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_images(zero)
    }

    /// Caller guarantees `images` is a bijection on `0..images.len()`.
    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Self { images }
    }

    /// The cycle `(p_0 p_1 … p_{m-1})` on 0-based points, as a degree-`n` permutation.
    pub fn cycle(n: usize, points: &[usize]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..n).collect();
        if n == 0 {
            return Err(PermError::InvalidDegree(0));
        }
        for (i, &p) in points.iter().enumerate() {
            if p >= n {
                return Err(PermError::OutOfRange {
                    value: p + 1,
                    degree: n,
                });
            }
            images[p] = points[(i + 1) % points.len()];
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub(crate) fn images_mut(&mut self) -> &mut [usize] {
        &mut self.images
    }

    /// 1-based base image.
    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|v| v + 1).collect()
    }

    /// Image of the 0-based point `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `gh`: apply `self` first, then `h`.
    pub fn compose(&self, h: &Permutation) -> Result<Permutation, PermError> {
        self.check_degree(h)?;
        Ok(Self {
            images: self.images.iter().map(|&v| h.images[v]).collect(),
        })
    }

    /// Writes `self · h` into `out`, reusing its buffer.
    pub fn compose_into(&self, h: &Permutation, out: &mut Permutation) -> Result<(), PermError> {
        self.check_degree(h)?;
        out.images.clear();
        out.images.extend(self.images.iter().map(|&v| h.images[v]));
        Ok(())
    }

    pub fn invert(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Self { images: inv }
    }

    pub fn invert_into(&self, out: &mut Permutation) {
        out.images.clear();
        out.images.resize(self.images.len(), 0);
        for (i, &v) in self.images.iter().enumerate() {
            out.images[v] = i;
        }
    }

    fn check_degree(&self, other: &Permutation) -> Result<(), PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", v + 1)?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Parses the one-line format: whitespace-separated 1-based images.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let values = s
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| PermError::BadToken {
                    token: tok.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_one_based(&values)
    }
}
