//! Homomorphisms between finite generalized groups.
//!
//! A map `h : G → H` is a homomorphism when `h(x·y) = h(x)·h(y)` for all
//! pairs; preservation of local identities and inverses then follows. A
//! [`HomTable`] is just the image vector of a candidate map over the dense
//! element indices — nothing about the law is assumed at construction, so
//! the same type carries both verified homomorphisms and counterexamples.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::finite::FiniteGenGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomError {
    /// Image vector has the wrong length, or an image is out of range.
    ShapeMismatch { reason: String },
    /// The multiplicative law fails; carries the lexicographically first
    /// offending pair.
    NotAHomomorphism { witness: (usize, usize) },
    /// Local identity or inverse not preserved at `element`. Unreachable for
    /// a map satisfying the law; checked anyway because it is cheap.
    PreservationFailure { element: usize, what: &'static str },
}

impl fmt::Display for HomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomError::ShapeMismatch { reason } => write!(f, "shape mismatch: {reason}"),
            HomError::NotAHomomorphism { witness: (x, y) } => {
                write!(f, "not a homomorphism: law fails at ({x}, {y})")
            }
            HomError::PreservationFailure { element, what } => {
                write!(f, "{what} not preserved at element {element}")
            }
        }
    }
}

impl std::error::Error for HomError {}

/// A candidate map between two generalized groups, given by its images.
#[derive(Clone, Debug)]
pub struct HomTable<'a> {
    source: &'a FiniteGenGroup,
    target: &'a FiniteGenGroup,
    images: Vec<usize>,
}

impl<'a> HomTable<'a> {
    /// Validates shape only: one in-range image per source element.
    pub fn new(
        source: &'a FiniteGenGroup,
        target: &'a FiniteGenGroup,
        images: Vec<usize>,
    ) -> Result<Self, HomError> {
        if images.len() != source.order() {
            return Err(HomError::ShapeMismatch {
                reason: format!(
                    "{} images for a source of order {}",
                    images.len(),
                    source.order()
                ),
            });
        }
        if let Some((x, &img)) = images.iter().enumerate().find(|(_, &v)| v >= target.order()) {
            return Err(HomError::ShapeMismatch {
                reason: format!(
                    "image of {x} is {img}, out of range 0..{}",
                    target.order()
                ),
            });
        }
        Ok(HomTable {
            source,
            target,
            images,
        })
    }

    pub fn source(&self) -> &'a FiniteGenGroup {
        self.source
    }

    pub fn target(&self) -> &'a FiniteGenGroup {
        self.target
    }

    pub fn image(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Lexicographically first pair where the law fails, if any.
    pub fn first_violation(&self) -> Option<(usize, usize)> {
        for x in self.source.elements() {
            for y in self.source.elements() {
                if self.images[self.source.mul(x, y)]
                    != self.target.mul(self.images[x], self.images[y])
                {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Checks the law on all pairs.
    pub fn is_homomorphism(&self) -> bool {
        self.first_violation().is_none()
    }

    /// Full check: the law on all pairs, then preservation of local
    /// identities and inverses (implied by the law, re-checked defensively).
    pub fn check_preservation(&self) -> Result<(), HomError> {
        if let Some(witness) = self.first_violation() {
            return Err(HomError::NotAHomomorphism { witness });
        }
        for x in self.source.elements() {
            if self.images[self.source.local_identity(x)]
                != self.target.local_identity(self.images[x])
            {
                return Err(HomError::PreservationFailure {
                    element: x,
                    what: "local identity",
                });
            }
            if self.images[self.source.inverse(x)] != self.target.inverse(self.images[x]) {
                return Err(HomError::PreservationFailure {
                    element: x,
                    what: "inverse",
                });
            }
        }
        Ok(())
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &v in &self.images {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// Bijective homomorphism. (The inverse of a bijective homomorphism is
    /// again one, so this is the full isomorphism condition.)
    pub fn is_isomorphism(&self) -> bool {
        self.source.order() == self.target.order()
            && self.is_surjective()
            && self.is_homomorphism()
    }

    pub fn to_doc(&self) -> HomDoc {
        HomDoc {
            images: self.images.clone(),
        }
    }
}

/// JSON document form of a map: images over dense source indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomDoc {
    pub images: Vec<usize>,
}

/// `x ↦ second(first(x))`. The intermediate structures must be equal.
pub fn compose<'a>(
    first: &HomTable<'a>,
    second: &HomTable<'a>,
) -> Result<HomTable<'a>, HomError> {
    if first.target != second.source {
        return Err(HomError::ShapeMismatch {
            reason: "target of the first map differs from source of the second".into(),
        });
    }
    Ok(HomTable {
        source: first.source,
        target: second.target,
        images: first.images.iter().map(|&v| second.images[v]).collect(),
    })
}

/// Result of an exhaustive (possibly capped) homomorphism search.
#[derive(Clone, Debug)]
pub struct EnumeratedHoms<'a> {
    /// In lexicographic order of image vectors.
    pub homs: Vec<HomTable<'a>>,
    /// True when the cap cut the search off before exhaustion — there is at
    /// least one more homomorphism beyond those returned.
    pub truncated: bool,
}

/// Enumerates every homomorphism from `source` to `target` by backtracking
/// over image vectors in lexicographic order, pruning as soon as an assigned
/// prefix violates the law. Deterministic: the search order is fixed by the
/// element indices.
pub fn enumerate_homs<'a>(
    source: &'a FiniteGenGroup,
    target: &'a FiniteGenGroup,
    cap: usize,
) -> EnumeratedHoms<'a> {
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut images = vec![0usize; source.order()];
    // Collect up to cap + 1 so the truncated flag is exact.
    search(source, target, &mut images, 0, cap + 1, &mut found);
    let truncated = found.len() > cap;
    if truncated {
        found.pop();
    }
    EnumeratedHoms {
        homs: found
            .into_iter()
            .map(|images| HomTable {
                source,
                target,
                images,
            })
            .collect(),
        truncated,
    }
}

/// Does assigning element `k` keep the prefix `0..=k` law-consistent?
/// Checks exactly the pairs whose constraint became decidable at step `k`:
/// both factors and the product at indices ≤ k, at least one of them = k.
fn prefix_consistent(
    source: &FiniteGenGroup,
    target: &FiniteGenGroup,
    images: &[usize],
    k: usize,
) -> bool {
    for x in 0..=k {
        for y in 0..=k {
            let p = source.mul(x, y);
            if p <= k && (x == k || y == k || p == k)
                && images[p] != target.mul(images[x], images[y])
            {
                return false;
            }
        }
    }
    true
}

fn search(
    source: &FiniteGenGroup,
    target: &FiniteGenGroup,
    images: &mut Vec<usize>,
    k: usize,
    limit: usize,
    found: &mut Vec<Vec<usize>>,
) {
    if found.len() >= limit {
        return;
    }
    if k == source.order() {
        found.push(images.clone());
        return;
    }
    for v in 0..target.order() {
        images[k] = v;
        if prefix_consistent(source, target, images, k) {
            search(source, target, images, k + 1, limit, found);
            if found.len() >= limit {
                return;
            }
        }
    }
}

/// First isomorphism in lexicographic order, if the structures are
/// isomorphic. Backtracking with an injectivity constraint on top of the
/// usual law pruning; quick rejects on order and idempotent count.
pub fn find_isomorphism<'a>(
    g: &'a FiniteGenGroup,
    h: &'a FiniteGenGroup,
) -> Option<HomTable<'a>> {
    if g.order() != h.order() || g.idempotents().len() != h.idempotents().len() {
        return None;
    }
    let mut images = vec![0usize; g.order()];
    let mut used = vec![false; h.order()];
    fn go(
        g: &FiniteGenGroup,
        h: &FiniteGenGroup,
        images: &mut Vec<usize>,
        used: &mut Vec<bool>,
        k: usize,
    ) -> bool {
        if k == g.order() {
            return true;
        }
        for v in 0..h.order() {
            if used[v] {
                continue;
            }
            images[k] = v;
            if prefix_consistent(g, h, images, k) {
                used[v] = true;
                if go(g, h, images, used, k + 1) {
                    return true;
                }
                used[v] = false;
            }
        }
        false
    }
    if go(g, h, &mut images, &mut used, 0) {
        Some(HomTable {
            source: g,
            target: h,
            images,
        })
    } else {
        None
    }
}
