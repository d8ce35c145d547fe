//! Rees matrix construction.
//!
//! Given a finite group `G`, index sets `I` and `Λ`, and a sandwich matrix
//! `P : Λ × I → G`, the carrier `I × G × Λ` becomes a generalized group under
//!
//! ```text
//! (i, g, λ) · (j, h, μ) = (i, g · p[λ][j] · h, μ)
//! ```
//!
//! Every finite completely simple semigroup arises this way, which makes the
//! construction the natural instance generator: its parameters enumerate
//! examples that are far from groups (many idempotents) while each group
//! component stays isomorphic to `G`.
//!
//! [`ReesSpec`] holds validated parameters; [`ReesSpec::build`] produces the
//! full multiplication table and runs it through the ordinary
//! [`FiniteGenGroup`] axiom scan rather than trusting the formula.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::finite::{CayleyDoc, FiniteGenGroup, FiniteGroup};

/// Why a Rees specification was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReesError {
    MalformedSpec { reason: String },
    IndexOutOfRange {
        what: &'static str,
        value: usize,
        limit: usize,
    },
}

impl fmt::Display for ReesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReesError::MalformedSpec { reason } => write!(f, "malformed spec: {reason}"),
            ReesError::IndexOutOfRange { what, value, limit } => {
                write!(f, "{what} index {value} out of range 0..{limit}")
            }
        }
    }
}

impl std::error::Error for ReesError {}

/// Validated parameters for a Rees matrix construction.
///
/// The sandwich matrix is stored row-per-`λ`: `sandwich[λ][i]` is the group
/// element inserted between a factor ending in `λ` and one starting at `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesSpec {
    group: FiniteGroup,
    i_size: usize,
    lambda_size: usize,
    sandwich: Vec<Vec<usize>>,
}

impl ReesSpec {
    pub fn new(
        group: FiniteGroup,
        i_size: usize,
        lambda_size: usize,
        sandwich: Vec<Vec<usize>>,
    ) -> Result<Self, ReesError> {
        if i_size == 0 || lambda_size == 0 {
            return Err(ReesError::MalformedSpec {
                reason: "index sets must be nonempty".into(),
            });
        }
        if sandwich.len() != lambda_size {
            return Err(ReesError::MalformedSpec {
                reason: format!(
                    "sandwich has {} rows, expected lambda_size = {lambda_size}",
                    sandwich.len()
                ),
            });
        }
        for (lam, row) in sandwich.iter().enumerate() {
            if row.len() != i_size {
                return Err(ReesError::MalformedSpec {
                    reason: format!(
                        "sandwich row {lam} has length {}, expected i_size = {i_size}",
                        row.len()
                    ),
                });
            }
            for (i, &g) in row.iter().enumerate() {
                if g >= group.order() {
                    return Err(ReesError::MalformedSpec {
                        reason: format!(
                            "sandwich entry at ({lam}, {i}) is {g}, not a group element"
                        ),
                    });
                }
            }
        }
        Ok(ReesSpec {
            group,
            i_size,
            lambda_size,
            sandwich,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn i_size(&self) -> usize {
        self.i_size
    }

    pub fn lambda_size(&self) -> usize {
        self.lambda_size
    }

    pub fn sandwich(&self) -> &[Vec<usize>] {
        &self.sandwich
    }

    /// Order of the constructed generalized group: `|I| · |G| · |Λ|`.
    pub fn order(&self) -> usize {
        self.i_size * self.group.order() * self.lambda_size
    }

    /// Dense index of the triple `(i, g, λ)`.
    pub fn element_index(&self, i: usize, g: usize, lam: usize) -> usize {
        (i * self.group.order() + g) * self.lambda_size + lam
    }

    /// Inverse of [`element_index`](Self::element_index).
    pub fn decode(&self, x: usize) -> (usize, usize, usize) {
        let lam = x % self.lambda_size;
        let rest = x / self.lambda_size;
        (rest / self.group.order(), rest % self.group.order(), lam)
    }

    /// Label `"i:g:λ"`, with the group element shown by name. A 1×1
    /// instance is the group itself, so the redundant coordinates are
    /// dropped and the bare group name survives the construction.
    pub fn element_label(&self, i: usize, g: usize, lam: usize) -> String {
        if self.i_size == 1 && self.lambda_size == 1 {
            self.group.name(g).to_string()
        } else {
            format!("{i}:{}:{lam}", self.group.name(g))
        }
    }

    /// The idempotent of the `(i, λ)` component: `(i, p[λ][i]⁻¹, λ)`.
    pub fn idempotent(&self, i: usize, lam: usize) -> Result<usize, ReesError> {
        if i >= self.i_size {
            return Err(ReesError::IndexOutOfRange {
                what: "i",
                value: i,
                limit: self.i_size,
            });
        }
        if lam >= self.lambda_size {
            return Err(ReesError::IndexOutOfRange {
                what: "lambda",
                value: lam,
                limit: self.lambda_size,
            });
        }
        let p = self.sandwich[lam][i];
        Ok(self.element_index(i, self.group.inverse(p), lam))
    }

    /// Builds the full multiplication table and validates it from scratch.
    ///
    /// The construction is a theorem, but the output still goes through the
    /// axiom scan; a panic here means the builder itself is broken.
    pub fn build(&self) -> FiniteGenGroup {
        let n = self.order();
        let mut names = Vec::with_capacity(n);
        let mut table = vec![vec![0usize; n]; n];
        for i in 0..self.i_size {
            for g in 0..self.group.order() {
                for lam in 0..self.lambda_size {
                    names.push(self.element_label(i, g, lam));
                }
            }
        }
        for x in 0..n {
            let (i, g, lam) = self.decode(x);
            for y in 0..n {
                let (j, h, mu) = self.decode(y);
                let prod = self.group.mul(self.group.mul(g, self.sandwich[lam][j]), h);
                table[x][y] = self.element_index(i, prod, mu);
            }
        }
        FiniteGenGroup::new(names, table).expect("Rees construction satisfies the axioms")
    }

    pub fn to_doc(&self) -> ReesDoc {
        ReesDoc {
            group: self.group.as_generalized().to_doc(),
            i_size: self.i_size,
            lambda_size: self.lambda_size,
            sandwich: self.sandwich.clone(),
        }
    }

    pub fn from_doc(doc: ReesDoc) -> Result<ReesSpec, ReesError> {
        let gg = FiniteGenGroup::from_doc(doc.group).map_err(|e| ReesError::MalformedSpec {
            reason: format!("base group: {e}"),
        })?;
        let group = FiniteGroup::from_generalized(gg).map_err(|e| ReesError::MalformedSpec {
            reason: format!("base group: {e}"),
        })?;
        ReesSpec::new(group, doc.i_size, doc.lambda_size, doc.sandwich)
    }
}

/// JSON document form of a Rees specification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReesDoc {
    pub group: CayleyDoc,
    pub i_size: usize,
    pub lambda_size: usize,
    pub sandwich: Vec<Vec<usize>>,
}

/// Size caps for [`random_rees`]. Both must be at least 1.
#[derive(Clone, Copy, Debug)]
pub struct ReesBounds {
    pub max_i: usize,
    pub max_lambda: usize,
}

/// Deterministic seeded instance generator.
///
/// Draws, in order: a base group from [`catalogue`], `|I|` in `1..=max_i`,
/// `|Λ|` in `1..=max_lambda`, then the sandwich entries row-major. The same
/// seed always yields the same spec.
pub fn random_rees(seed: u64, bounds: ReesBounds) -> ReesSpec {
    assert!(
        bounds.max_i >= 1 && bounds.max_lambda >= 1,
        "bounds must be at least 1"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let groups = catalogue();
    let group = groups[rng.gen_range(0..groups.len())].clone();
    let i_size = rng.gen_range(1..=bounds.max_i);
    let lambda_size = rng.gen_range(1..=bounds.max_lambda);
    let sandwich = (0..lambda_size)
        .map(|_| (0..i_size).map(|_| rng.gen_range(0..group.order())).collect())
        .collect();
    ReesSpec::new(group, i_size, lambda_size, sandwich).expect("generated spec is well-formed")
}

/// The base groups used by the instance generator: orders 1 through 6,
/// including both groups of order 4 and the smallest non-abelian group.
pub fn catalogue() -> Vec<FiniteGroup> {
    vec![
        trivial_group(),
        cyclic(2),
        cyclic(3),
        cyclic(4),
        klein_four(),
        symmetric_3(),
    ]
}

/// The one-element group, labeled `e`.
pub fn trivial_group() -> FiniteGroup {
    FiniteGroup::new(vec!["e".into()], vec![vec![0]]).expect("trivial table is a group")
}

/// ℤ/n under addition, elements labeled by residue.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let names = (0..n).map(|i| i.to_string()).collect();
    let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    FiniteGroup::new(names, table).expect("cyclic table is a group")
}

/// ℤ/2 × ℤ/2, with `c = a·b`.
pub fn klein_four() -> FiniteGroup {
    let names = ["e", "a", "b", "c"].map(String::from).to_vec();
    let table = (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
    FiniteGroup::new(names, table).expect("xor table is a group")
}

/// The symmetric group on three points; elements labeled in one-line
/// notation, composed as `(p·q)(x) = p(q(x))`.
pub fn symmetric_3() -> FiniteGroup {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let index_of = |p: &[usize; 3]| perms.iter().position(|q| q == p).unwrap();
    let names = perms
        .iter()
        .map(|p| p.iter().map(usize::to_string).collect::<String>())
        .collect();
    let table = perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| index_of(&[p[q[0]], p[q[1]], p[q[2]]]))
                .collect()
        })
        .collect();
    FiniteGroup::new(names, table).expect("permutation table is a group")
}

/// The right-zero generalized group on `n` elements (`x·y = y`), realized as
/// a Rees construction over the trivial group with `|I| = 1`, `|Λ| = n`.
pub fn right_zero(n: usize) -> FiniteGenGroup {
    ReesSpec::new(trivial_group(), 1, n, vec![vec![0]; n])
        .expect("right-zero spec is well-formed")
        .build()
}

/// The left-zero generalized group on `n` elements (`x·y = x`).
pub fn left_zero(n: usize) -> FiniteGenGroup {
    ReesSpec::new(trivial_group(), n, 1, vec![vec![0; n]])
        .expect("left-zero spec is well-formed")
        .build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::verify_axioms;

    fn z2_spec() -> ReesSpec {
        ReesSpec::new(cyclic(2), 2, 1, vec![vec![0, 0]]).unwrap()
    }

    #[test]
    fn z2_two_by_one_has_four_elements_and_two_idempotents() {
        let g = z2_spec().build();
        assert_eq!(g.order(), 4);
        assert_eq!(g.idempotents().len(), 2);
        assert!(!g.is_group());
    }

    #[test]
    fn idempotent_count_is_i_times_lambda() {
        for (spec, i, lam) in [
            (z2_spec(), 2, 1),
            (ReesSpec::new(cyclic(3), 2, 2, vec![vec![0, 1], vec![2, 0]]).unwrap(), 2, 2),
            (ReesSpec::new(symmetric_3(), 1, 3, vec![vec![0], vec![3], vec![5]]).unwrap(), 1, 3),
        ] {
            let g = spec.build();
            assert_eq!(g.idempotents().len(), i * lam);
        }
    }

    #[test]
    fn idempotent_formula_matches_local_identities() {
        let spec = ReesSpec::new(cyclic(4), 2, 2, vec![vec![1, 2], vec![3, 0]]).unwrap();
        let g = spec.build();
        for i in 0..spec.i_size() {
            for lam in 0..spec.lambda_size() {
                let u = spec.idempotent(i, lam).unwrap();
                assert_eq!(g.mul(u, u), u);
                for h in 0..spec.group().order() {
                    assert_eq!(g.local_identity(spec.element_index(i, h, lam)), u);
                }
            }
        }
        assert!(matches!(
            spec.idempotent(2, 0),
            Err(ReesError::IndexOutOfRange { what: "i", .. })
        ));
    }

    #[test]
    fn inverse_formula() {
        // inverse of (i, g, λ) is (i, p⁻¹·g⁻¹·p⁻¹, λ) with p = sandwich[λ][i].
        let spec = ReesSpec::new(symmetric_3(), 2, 2, vec![vec![0, 2], vec![3, 1]]).unwrap();
        let g = spec.build();
        let base = spec.group();
        for x in g.elements() {
            let (i, a, lam) = spec.decode(x);
            let p_inv = base.inverse(spec.sandwich()[lam][i]);
            let expected = base.mul(base.mul(p_inv, base.inverse(a)), p_inv);
            assert_eq!(g.inverse(x), spec.element_index(i, expected, lam));
        }
    }

    #[test]
    fn degenerate_shapes_realize_zero_semigroups() {
        let rz = right_zero(3);
        for x in rz.elements() {
            for y in rz.elements() {
                assert_eq!(rz.mul(x, y), y);
            }
        }
        let lz = left_zero(3);
        for x in lz.elements() {
            for y in lz.elements() {
                assert_eq!(lz.mul(x, y), x);
            }
        }
        // |I| = |Λ| = 1 with trivial sandwich recovers the group itself.
        let g = ReesSpec::new(cyclic(4), 1, 1, vec![vec![0]]).unwrap().build();
        assert!(g.is_group());
        assert!(g.is_abelian());
    }

    #[test]
    fn identity_sandwich_is_normal_skew_sandwich_is_not() {
        let flat = ReesSpec::new(cyclic(2), 2, 2, vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert!(flat.build().is_normal());
        let skew = ReesSpec::new(cyclic(2), 2, 2, vec![vec![0, 0], vec![0, 1]]).unwrap();
        assert!(!skew.build().is_normal());
    }

    #[test]
    fn component_order_equals_base_group_order() {
        let spec = ReesSpec::new(klein_four(), 2, 2, vec![vec![0, 3], vec![1, 2]]).unwrap();
        let g = spec.build();
        for x in g.elements() {
            let comp = g.group_component(x).unwrap();
            assert_eq!(comp.order(), spec.group().order());
        }
    }

    #[test]
    fn labels_name_the_triple() {
        let spec = z2_spec();
        let g = spec.build();
        assert_eq!(g.name(spec.element_index(1, 1, 0)), "1:1:0");
        let s3 = ReesSpec::new(symmetric_3(), 1, 1, vec![vec![0]]).unwrap();
        assert_eq!(s3.build().name(1), "021");
    }

    #[test]
    fn spec_validation() {
        assert!(matches!(
            ReesSpec::new(cyclic(2), 0, 1, vec![]),
            Err(ReesError::MalformedSpec { .. })
        ));
        assert!(matches!(
            ReesSpec::new(cyclic(2), 2, 1, vec![vec![0]]),
            Err(ReesError::MalformedSpec { .. })
        ));
        assert!(matches!(
            ReesSpec::new(cyclic(2), 2, 1, vec![vec![0, 2]]),
            Err(ReesError::MalformedSpec { .. })
        ));
    }

    #[test]
    fn doc_round_trip() {
        let spec = ReesSpec::new(cyclic(3), 2, 2, vec![vec![0, 1], vec![2, 0]]).unwrap();
        let doc = spec.to_doc();
        assert_eq!(ReesSpec::from_doc(doc).unwrap(), spec);
    }

    #[test]
    fn catalogue_is_the_six_small_groups() {
        let groups = catalogue();
        let orders: Vec<usize> = groups.iter().map(|g| g.order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 4, 4, 6]);
        assert!(groups[..5].iter().all(|g| g.is_abelian()));
        assert!(!groups[5].is_abelian());
        // ℤ/4 and the Klein group are the two distinct order-4 tables.
        assert_ne!(groups[3].as_generalized().to_doc().table, groups[4].as_generalized().to_doc().table);
    }

    #[test]
    fn s3_composes_correctly() {
        let s3 = symmetric_3();
        // (021)·(102): apply 102 first, then 021 ⇒ x ↦ [2,0,1].
        let a = 1; // 021
        let b = 2; // 102
        assert_eq!(s3.name(s3.mul(a, b)), "201");
        assert_eq!(s3.element_order(3), 3); // 120 is a 3-cycle
        assert_eq!(s3.element_order(2), 2); // 102 is a transposition
    }

    #[test]
    fn random_instances_are_deterministic_and_bounded() {
        let bounds = ReesBounds { max_i: 3, max_lambda: 3 };
        for seed in 0..20 {
            let a = random_rees(seed, bounds);
            let b = random_rees(seed, bounds);
            assert_eq!(a, b);
            assert!(a.i_size() >= 1 && a.i_size() <= 3);
            assert!(a.lambda_size() >= 1 && a.lambda_size() <= 3);
            assert!(a.group().order() <= 6);
        }
        assert_ne!(random_rees(1, bounds), random_rees(2, bounds));
    }

    #[test]
    fn built_tables_always_pass_an_independent_scan() {
        for seed in 0..10 {
            let g = random_rees(seed, ReesBounds { max_i: 2, max_lambda: 2 }).build();
            assert!(verify_axioms(&g.to_doc().table).unwrap().verdict());
        }
    }
}
