//! Finitely supported integer sequences and the star operation.
//!
//! [`FinSeq`] models an element of the direct sum of countably many copies of
//! ℤ: a sequence `(x₁, x₂, x₃, …)` with only finitely many nonzero entries.
//! Positions are 1-based and the representation is sparse and canonical —
//! zero coefficients are never stored, so equality is structural.
//!
//! Two operations live on the same carrier:
//!
//! * coordinatewise addition ([`FinSeq::add`]), under which the carrier is an
//!   abelian group;
//! * the star operation ([`FinSeq::star`]), which takes positions ≡ 1 (mod 3)
//!   from the left operand, positions ≡ 2 (mod 3) from the right, and adds
//!   the two at multiples of 3:
//!
//!   ```text
//!   x ⋆ y = (x₁, y₂, x₃+y₃, x₄, y₅, x₆+y₆, …)
//!   ```
//!
//! Under star the carrier is a generalized group that is not a group: the
//! local identity of `x` keeps its non-multiple-of-3 entries and zeroes the
//! rest, so distinct elements can have distinct local identities. The maps
//! [`map_f`](FinSeq::map_f) (keep multiples of 3) and
//! [`map_g`](FinSeq::map_g) (read off every third entry) connect the additive
//! and star structures; their homomorphism laws are checked in the tests
//! rather than assumed.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

/// Errors from sequence constructors and the text parser.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeqError {
    /// Positions are 1-based; 0 is not a coordinate.
    InvalidIndex { index: u64 },
    Parse { reason: String },
}

impl fmt::Display for SeqError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqError::InvalidIndex { index } => {
                write!(f, "invalid coordinate index {index}; positions start at 1")
            }
            SeqError::Parse { reason } => write!(f, "cannot parse sequence: {reason}"),
        }
    }
}

impl std::error::Error for SeqError {}

/// A finitely supported integer sequence, indexed from 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct FinSeq {
    coords: BTreeMap<u64, BigInt>,
}

impl FinSeq {
    /// The zero sequence.
    pub fn zero() -> FinSeq {
        FinSeq::default()
    }

    /// The basis sequence `iₙ` with a 1 at position `n` and 0 elsewhere.
    pub fn basis(n: u64) -> Result<FinSeq, SeqError> {
        if n == 0 {
            return Err(SeqError::InvalidIndex { index: 0 });
        }
        let mut coords = BTreeMap::new();
        coords.insert(n, BigInt::from(1));
        Ok(FinSeq { coords })
    }

    /// Builds from `(index, value)` pairs. Duplicate indices are summed;
    /// zero results are dropped; index 0 is rejected.
    pub fn from_pairs<I, B>(pairs: I) -> Result<FinSeq, SeqError>
    where
        I: IntoIterator<Item = (u64, B)>,
        B: Into<BigInt>,
    {
        let mut coords: BTreeMap<u64, BigInt> = BTreeMap::new();
        for (index, value) in pairs {
            if index == 0 {
                return Err(SeqError::InvalidIndex { index: 0 });
            }
            let entry = coords.entry(index).or_insert_with(BigInt::zero);
            *entry += value.into();
            if entry.is_zero() {
                coords.remove(&index);
            }
        }
        Ok(FinSeq { coords })
    }

    /// Builds from a dense prefix: `values[k]` becomes position `k + 1`.
    pub fn from_dense<I, B>(values: I) -> FinSeq
    where
        I: IntoIterator<Item = B>,
        B: Into<BigInt>,
    {
        let coords = values
            .into_iter()
            .enumerate()
            .map(|(k, v)| (k as u64 + 1, v.into()))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        FinSeq { coords }
    }

    /// The coefficient at position `n` (zero when absent).
    pub fn coeff(&self, n: u64) -> BigInt {
        self.coords.get(&n).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// Nonzero positions, ascending.
    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.coords.keys().copied()
    }

    /// `(position, coefficient)` pairs, ascending by position.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.coords.iter().map(|(&k, v)| (k, v))
    }

    /// Largest nonzero position, if any.
    pub fn max_index(&self) -> Option<u64> {
        self.coords.keys().next_back().copied()
    }

    /// Coordinatewise sum — the ambient product-group operation.
    pub fn add(&self, other: &FinSeq) -> FinSeq {
        let mut coords = self.coords.clone();
        for (&k, v) in &other.coords {
            let entry = coords.entry(k).or_insert_with(BigInt::zero);
            *entry += v;
            if entry.is_zero() {
                coords.remove(&k);
            }
        }
        FinSeq { coords }
    }

    /// Coordinatewise negation.
    pub fn neg(&self) -> FinSeq {
        FinSeq {
            coords: self.coords.iter().map(|(&k, v)| (k, -v)).collect(),
        }
    }

    /// The star operation: positions ≡ 1 (mod 3) from `self`, ≡ 2 (mod 3)
    /// from `other`, multiples of 3 added.
    pub fn star(&self, other: &FinSeq) -> FinSeq {
        let mut coords = BTreeMap::new();
        for (&k, v) in &self.coords {
            if k % 3 != 2 {
                coords.insert(k, v.clone());
            }
        }
        for (&k, v) in &other.coords {
            match k % 3 {
                2 => {
                    coords.insert(k, v.clone());
                }
                0 => {
                    let entry = coords.entry(k).or_insert_with(BigInt::zero);
                    *entry += v;
                    if entry.is_zero() {
                        coords.remove(&k);
                    }
                }
                _ => {}
            }
        }
        FinSeq { coords }
    }

    /// The star local identity of `self`: non-multiples of 3 kept, multiples
    /// of 3 zeroed. Satisfies `e(x) ⋆ x = x ⋆ e(x) = x`.
    pub fn star_identity(&self) -> FinSeq {
        FinSeq {
            coords: self
                .coords
                .iter()
                .filter(|(&k, _)| k % 3 != 0)
                .map(|(&k, v)| (k, v.clone()))
                .collect(),
        }
    }

    /// The star inverse of `self`: multiples of 3 negated, everything else
    /// kept. Satisfies `x ⋆ x⁻¹ = x⁻¹ ⋆ x = e(x)`.
    pub fn star_inverse(&self) -> FinSeq {
        FinSeq {
            coords: self
                .coords
                .iter()
                .map(|(&k, v)| (k, if k % 3 == 0 { -v } else { v.clone() }))
                .collect(),
        }
    }

    /// Is `x ⋆ x = x`? Holds exactly when every multiple-of-3 entry is zero.
    pub fn is_star_idempotent(&self) -> bool {
        self.star(self) == *self
    }

    /// Keeps multiples of 3, zeroes the rest. A homomorphism from the
    /// additive structure into the star structure.
    pub fn map_f(&self) -> FinSeq {
        FinSeq {
            coords: self
                .coords
                .iter()
                .filter(|(&k, _)| k % 3 == 0)
                .map(|(&k, v)| (k, v.clone()))
                .collect(),
        }
    }

    /// Reads off every third entry: position `k` of the result is position
    /// `3k` of the input. A homomorphism from the star structure into the
    /// additive one.
    pub fn map_g(&self) -> FinSeq {
        FinSeq {
            coords: self
                .coords
                .iter()
                .filter(|(&k, _)| k % 3 == 0)
                .map(|(&k, v)| (k / 3, v.clone()))
                .collect(),
        }
    }

    /// Drops every position above `max_index`.
    pub fn truncate(&self, max_index: u64) -> FinSeq {
        FinSeq {
            coords: self
                .coords
                .iter()
                .filter(|(&k, _)| k <= max_index)
                .map(|(&k, v)| (k, v.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for FinSeq {
    /// Sparse form: `{}` for zero, otherwise `{k:v,…}` ascending, no spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, (k, v)) in self.coords.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}:{v}")?;
        }
        write!(f, "}}")
    }
}

impl FromStr for FinSeq {
    type Err = SeqError;

    /// Accepts the sparse form `{3:3, 6:6}` (whitespace tolerated, any order,
    /// duplicate indices summed) and the dense form `[0,0,3,0,0,6]`
    /// (1-based positions, trailing zeros implied).
    fn from_str(s: &str) -> Result<FinSeq, SeqError> {
        let s = s.trim();
        let parse_err = |reason: String| SeqError::Parse { reason };
        if let Some(inner) = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
            let mut pairs = Vec::new();
            for part in inner.split(',') {
                let part = part.trim();
                if part.is_empty() {
                    if inner.trim().is_empty() {
                        continue; // "{}"
                    }
                    return Err(parse_err("empty entry in sparse form".into()));
                }
                let (k, v) = part
                    .split_once(':')
                    .ok_or_else(|| parse_err(format!("expected index:value, got {part:?}")))?;
                let index: u64 = k
                    .trim()
                    .parse()
                    .map_err(|_| parse_err(format!("bad index {:?}", k.trim())))?;
                let value: BigInt = v
                    .trim()
                    .parse()
                    .map_err(|_| parse_err(format!("bad value {:?}", v.trim())))?;
                pairs.push((index, value));
            }
            FinSeq::from_pairs(pairs)
        } else if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            if inner.trim().is_empty() {
                return Ok(FinSeq::zero());
            }
            let values: Result<Vec<BigInt>, SeqError> = inner
                .split(',')
                .map(|part| {
                    part.trim()
                        .parse()
                        .map_err(|_| parse_err(format!("bad value {:?}", part.trim())))
                })
                .collect();
            Ok(FinSeq::from_dense(values?))
        } else {
            Err(parse_err("expected {index:value,…} or [v1,v2,…]".into()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(pairs: &[(u64, i64)]) -> FinSeq {
        FinSeq::from_pairs(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn star_follows_the_period_three_pattern() {
        let x = seq(&[(1, 5), (2, 7), (3, 3)]);
        let y = seq(&[(1, 9), (2, 4), (3, 1)]);
        assert_eq!(x.star(&y), seq(&[(1, 5), (2, 4), (3, 4)]));
        // Positions 4, 5, 6 behave like 1, 2, 3.
        let a = seq(&[(4, 1), (5, 2), (6, 3)]);
        let b = seq(&[(4, 10), (5, 20), (6, 30)]);
        assert_eq!(a.star(&b), seq(&[(4, 1), (5, 20), (6, 33)]));
    }

    #[test]
    fn star_identity_and_inverse_formulas() {
        let x = seq(&[(1, 2), (3, 5), (6, -4), (7, 1)]);
        assert_eq!(x.star_identity(), seq(&[(1, 2), (7, 1)]));
        assert_eq!(x.star_inverse(), seq(&[(1, 2), (3, -5), (6, 4), (7, 1)]));
        assert_eq!(FinSeq::basis(3).unwrap().star_identity(), FinSeq::zero());
    }

    #[test]
    fn basis_idempotency_depends_on_residue() {
        for n in 1..=12u64 {
            let i_n = FinSeq::basis(n).unwrap();
            assert_eq!(i_n.is_star_idempotent(), n % 3 != 0, "n = {n}");
        }
    }

    #[test]
    fn identity_map_is_not_a_star_to_add_homomorphism() {
        // i₁ ⋆ i₁ = i₁, but i₁ + i₁ = 2·i₁.
        let i1 = FinSeq::basis(1).unwrap();
        assert_eq!(i1.star(&i1), i1);
        assert_ne!(i1.star(&i1), i1.add(&i1));
    }

    #[test]
    fn g_collapses_third_positions() {
        assert_eq!(
            FinSeq::basis(9).unwrap().map_g(),
            FinSeq::basis(3).unwrap()
        );
        assert_eq!(
            seq(&[(1, 4), (3, 3), (6, 6)]).map_g(),
            seq(&[(1, 3), (2, 6)])
        );
        assert_eq!(
            seq(&[(3, 3), (6, 6)]).map_f(),
            seq(&[(3, 3), (6, 6)])
        );
        assert_eq!(seq(&[(1, 4), (2, 2)]).map_f(), FinSeq::zero());
    }

    #[test]
    fn basis_rejects_zero() {
        assert_eq!(FinSeq::basis(0), Err(SeqError::InvalidIndex { index: 0 }));
        assert!(FinSeq::from_pairs([(0u64, 1)]).is_err());
    }

    #[test]
    fn canonical_form_never_stores_zeros() {
        let x = FinSeq::from_pairs([(2u64, 3), (2, -3), (5, 0)]).unwrap();
        assert!(x.is_zero());
        assert_eq!(x, FinSeq::zero());
        let y = seq(&[(4, 1)]).add(&seq(&[(4, -1)]));
        assert!(y.is_zero());
    }

    #[test]
    fn display_and_parse_round_trip() {
        let x = seq(&[(3, 3), (6, 6)]);
        assert_eq!(x.to_string(), "{3:3,6:6}");
        assert_eq!("{3:3, 6:6}".parse::<FinSeq>().unwrap(), x);
        assert_eq!("{6:6,3:3}".parse::<FinSeq>().unwrap(), x);
        assert_eq!("[0,0,3,0,0,6]".parse::<FinSeq>().unwrap(), x);
        assert_eq!("{}".parse::<FinSeq>().unwrap(), FinSeq::zero());
        assert_eq!("[]".parse::<FinSeq>().unwrap(), FinSeq::zero());
        assert_eq!(FinSeq::zero().to_string(), "{}");
        assert_eq!("{2:-7}".parse::<FinSeq>().unwrap(), seq(&[(2, -7)]));
        // Duplicate indices in sparse input are summed.
        assert_eq!("{3:1,3:2}".parse::<FinSeq>().unwrap(), seq(&[(3, 3)]));
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "3:3", "{3}", "{0:1}", "{a:1}", "{1:b}", "[1,x]", "(1,2)"] {
            assert!(bad.parse::<FinSeq>().is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn truncate_drops_high_positions() {
        let x = seq(&[(2, 1), (6, 2), (9, 3)]);
        assert_eq!(x.truncate(6), seq(&[(2, 1), (6, 2)]));
        assert_eq!(x.truncate(1), FinSeq::zero());
        assert_eq!(x.max_index(), Some(9));
    }

    prop_compose! {
        fn arb_seq()(pairs in proptest::collection::vec((1..30u64, -9..=9i64), 0..8)) -> FinSeq {
            FinSeq::from_pairs(pairs).unwrap()
        }
    }

    proptest! {
        #[test]
        fn addition_is_an_abelian_group(x in arb_seq(), y in arb_seq(), z in arb_seq()) {
            prop_assert_eq!(x.add(&y), y.add(&x));
            prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
            prop_assert_eq!(x.add(&x.neg()), FinSeq::zero());
            prop_assert_eq!(x.add(&FinSeq::zero()), x);
        }

        #[test]
        fn star_is_associative(x in arb_seq(), y in arb_seq(), z in arb_seq()) {
            prop_assert_eq!(x.star(&y).star(&z), x.star(&y.star(&z)));
        }

        #[test]
        fn star_identity_laws(x in arb_seq()) {
            let e = x.star_identity();
            prop_assert_eq!(e.star(&x), x.clone());
            prop_assert_eq!(x.star(&e), x.clone());
            prop_assert_eq!(e.star(&e), e.clone());
            prop_assert_eq!(e.star_identity(), e);
        }

        #[test]
        fn star_inverse_laws(x in arb_seq()) {
            let inv = x.star_inverse();
            prop_assert_eq!(x.star(&inv), x.star_identity());
            prop_assert_eq!(inv.star(&x), x.star_identity());
            prop_assert_eq!(inv.star_inverse(), x.clone());
            prop_assert_eq!(inv.star_identity(), x.star_identity());
        }

        #[test]
        fn star_is_normal(x in arb_seq(), y in arb_seq()) {
            prop_assert_eq!(
                x.star(&y).star_identity(),
                x.star_identity().star(&y.star_identity())
            );
        }

        #[test]
        fn f_is_a_homomorphism_into_star(x in arb_seq(), y in arb_seq()) {
            prop_assert_eq!(x.add(&y).map_f(), x.map_f().star(&y.map_f()));
        }

        #[test]
        fn g_is_a_homomorphism_out_of_star(x in arb_seq(), y in arb_seq()) {
            prop_assert_eq!(x.star(&y).map_g(), x.map_g().add(&y.map_g()));
        }

        #[test]
        fn g_after_f_scales_indices(x in arb_seq()) {
            // g(f(x)) reads the multiples of 3 of x into consecutive slots.
            let gf = x.map_f().map_g();
            for (k, v) in gf.iter() {
                prop_assert_eq!(v, &x.coeff(3 * k));
            }
            prop_assert_eq!(gf.support().count(),
                x.support().filter(|k| k % 3 == 0).count());
        }

        #[test]
        fn parse_inverts_display(x in arb_seq()) {
            prop_assert_eq!(x.to_string().parse::<FinSeq>().unwrap(), x);
        }
    }
}
