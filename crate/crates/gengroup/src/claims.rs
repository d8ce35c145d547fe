//! Bounded, seeded checks of structural claims about homomorphisms out of
//! the sequence carrier.
//!
//! The homomorphisms of interest leave the star structure of [`crate::seq`]
//! and land in slender targets, so nothing at desk scale can decide them in
//! general. The harness therefore works with two honest stand-ins:
//!
//! * **representable maps** — [`RepHom`] is an additive map into `ℤ^k` that
//!   reads only a finite coordinate window, and [`RepGgHom`] composes one
//!   with the canonical maps in and out of the star structure;
//! * **finite probes** — [`FinProbe`] evaluates sequences into a finite
//!   generalized group through commuting component elements placed at
//!   multiples of 3.
//!
//! Both implement [`GgProbe`], the minimal interface the checkers need.
//! Every check returns a [`ClaimReport`]: `verified` (all bounded checks
//! passed), `falsified` (with a concrete witness), or `skipped` (with the
//! unmet precondition). Maps that factor through no finite window are out of
//! scope, and no report here speaks about them.
//!
//! [`run_all`] runs the whole claim suite over a seeded corpus;
//! [`mutation`] holds deliberately corrupted fixtures that the same checkers
//! must reject, as a sensitivity test for the harness itself.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::finite::{FiniteGenGroup, FiniteGroup};
use crate::hom::HomTable;
use crate::rees::{cyclic, random_rees, right_zero, ReesBounds};
use crate::seq::FinSeq;
use crate::slender::IntMatrix;

/// Default number of random inputs per sampled check.
pub const DEFAULT_SAMPLES: usize = 1000;
/// Default cap on probe windows.
pub const DEFAULT_MAX_WINDOW: u64 = 12;
/// Default magnitude bound for random sequence coordinates.
pub const COORD_BOUND: i64 = 9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClaimError {
    /// A checker that requires a verified homomorphism got a map violating
    /// the law at the witness pair.
    NotAHomomorphism { witness: (usize, usize) },
    NotSurjective,
    InvalidProbe { reason: String },
}

impl fmt::Display for ClaimError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClaimError::NotAHomomorphism { witness: (x, y) } => {
                write!(f, "map is not a homomorphism (law fails at ({x}, {y}))")
            }
            ClaimError::NotSurjective => write!(f, "map is not surjective"),
            ClaimError::InvalidProbe { reason } => write!(f, "invalid probe: {reason}"),
        }
    }
}

impl std::error::Error for ClaimError {}

/// Outcome of one claim check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimStatus {
    Verified,
    Falsified,
    Skipped,
}

impl fmt::Display for ClaimStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClaimStatus::Verified => "verified",
            ClaimStatus::Falsified => "falsified",
            ClaimStatus::Skipped => "skipped",
        };
        write!(f, "{s}")
    }
}

/// One claim, one verdict, and enough parameters to reproduce the run.
/// A falsified report always carries a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub id: String,
    pub status: ClaimStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub parameters: BTreeMap<String, String>,
}

impl ClaimReport {
    pub fn verified(id: &str, parameters: BTreeMap<String, String>) -> ClaimReport {
        ClaimReport {
            id: id.to_string(),
            status: ClaimStatus::Verified,
            witness: None,
            parameters,
        }
    }

    pub fn falsified(
        id: &str,
        witness: String,
        parameters: BTreeMap<String, String>,
    ) -> ClaimReport {
        ClaimReport {
            id: id.to_string(),
            status: ClaimStatus::Falsified,
            witness: Some(witness),
            parameters,
        }
    }

    pub fn skipped(
        id: &str,
        reason: &str,
        mut parameters: BTreeMap<String, String>,
    ) -> ClaimReport {
        parameters.insert("reason".into(), reason.to_string());
        ClaimReport {
            id: id.to_string(),
            status: ClaimStatus::Skipped,
            witness: None,
            parameters,
        }
    }

    /// The one-line text form: `CLAIM <id> <status> [witness=…]`.
    pub fn render_line(&self) -> String {
        match &self.witness {
            Some(w) => format!("CLAIM {} {} witness={w}", self.id, self.status),
            None => format!("CLAIM {} {}", self.id, self.status),
        }
    }
}

fn base_params(bound: u64, seed: u64) -> BTreeMap<String, String> {
    let mut p = BTreeMap::new();
    p.insert("bound".into(), bound.to_string());
    p.insert("seed".into(), seed.to_string());
    p
}

fn render_set(s: &BTreeSet<u64>) -> String {
    let items: Vec<String> = s.iter().map(u64::to_string).collect();
    format!("{{{}}}", items.join(","))
}

/// An additive map `ℤ-sequences → ℤ^k` that reads only the first `window`
/// coordinates: column `j` (1-based) of the matrix is the image of the basis
/// sequence `i_j`. This is the representable class: everything the harness
/// can say about maps out of the full product factors through such windows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepHom {
    matrix: IntMatrix,
}

impl RepHom {
    pub fn new(matrix: IntMatrix) -> RepHom {
        RepHom { matrix }
    }

    /// Highest coordinate the map reads (= number of matrix columns).
    pub fn window(&self) -> u64 {
        self.matrix.cols() as u64
    }

    /// Rank of the target `ℤ^k`.
    pub fn target_rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn eval(&self, x: &FinSeq) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.matrix.rows()];
        for (k, v) in x.iter() {
            if k == 0 || k > self.window() {
                continue;
            }
            let col = (k - 1) as usize;
            for (r, slot) in out.iter_mut().enumerate() {
                *slot += &self.matrix[(r, col)] * v;
            }
        }
        out
    }

    /// Positions whose basis sequence has a nonzero image, i.e. columns with
    /// a nonzero entry. 1-based, always within the window.
    pub fn support(&self) -> BTreeSet<u64> {
        (0..self.matrix.cols())
            .filter(|&c| (0..self.matrix.rows()).any(|r| !self.matrix[(r, c)].is_zero()))
            .map(|c| c as u64 + 1)
            .collect()
    }

    /// `{n ≤ bound : h(iₙ) ≠ 0}`, computed by evaluation.
    pub fn offdiagonal_set(&self, bound: u64) -> BTreeSet<u64> {
        (1..=bound)
            .filter(|&n| {
                let v = self.eval(&FinSeq::basis(n).expect("n ≥ 1"));
                v.iter().any(|c| !c.is_zero())
            })
            .collect()
    }

    /// Seeded generator. Draws, in order: target rank in `1..=max_rank`,
    /// window in `1..=max_window`, then entries row-major in
    /// `[-coord_bound, coord_bound]`.
    pub fn random(
        rng: &mut ChaCha8Rng,
        max_window: u64,
        max_rank: usize,
        coord_bound: i64,
    ) -> RepHom {
        let rank = rng.gen_range(1..=max_rank);
        let window = rng.gen_range(1..=max_window) as usize;
        let rows = (0..rank)
            .map(|_| {
                (0..window)
                    .map(|_| rng.gen_range(-coord_bound..=coord_bound))
                    .collect()
            })
            .collect();
        RepHom::new(IntMatrix::from_rows(rows).expect("rows are rectangular"))
    }
}

/// How a [`RepHom`] is composed with the canonical maps of the star carrier.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompositionRule {
    /// Precompose with the keep-multiples-of-3 map: the result reads the
    /// star structure directly.
    ThroughF,
    /// Precompose with the read-every-third-coordinate map: position `3m`
    /// of the input feeds coordinate `m` of the base map.
    ThroughG,
}

/// A representable candidate homomorphism out of the star structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepGgHom {
    base: RepHom,
    rule: CompositionRule,
}

impl RepGgHom {
    pub fn through_f(base: RepHom) -> RepGgHom {
        RepGgHom {
            base,
            rule: CompositionRule::ThroughF,
        }
    }

    pub fn through_g(base: RepHom) -> RepGgHom {
        RepGgHom {
            base,
            rule: CompositionRule::ThroughG,
        }
    }

    pub fn base(&self) -> &RepHom {
        &self.base
    }

    pub fn rule(&self) -> CompositionRule {
        self.rule
    }

    /// Window of the composite as a map on raw sequences.
    pub fn window(&self) -> u64 {
        match self.rule {
            CompositionRule::ThroughF => self.base.window(),
            CompositionRule::ThroughG => 3 * self.base.window(),
        }
    }

    pub fn eval(&self, x: &FinSeq) -> Vec<BigInt> {
        match self.rule {
            CompositionRule::ThroughF => self.base.eval(&x.map_f()),
            CompositionRule::ThroughG => self.base.eval(&x.map_g()),
        }
    }

    /// Expands the composition into a single explicit matrix over the
    /// composite window, so the result can be checked like any candidate.
    pub fn materialize(&self) -> LinearGgMap {
        let rank = self.base.target_rank();
        let window = self.window() as usize;
        let mut m = IntMatrix::zero(rank, window);
        for r in 0..rank {
            for j in 1..=window as u64 {
                if j % 3 != 0 {
                    continue;
                }
                let src = match self.rule {
                    CompositionRule::ThroughF => j,     // reads coordinate j directly
                    CompositionRule::ThroughG => j / 3, // coordinate 3m feeds column m
                };
                m.set(r, j as usize - 1, self.base.matrix()[(r, (src - 1) as usize)].clone());
            }
        }
        LinearGgMap::new(m)
    }
}

/// An explicit matrix candidate for a homomorphism from the star structure
/// into `ℤ^k`. Nothing about the law is assumed — checkers test it — and the
/// declared window is a *claim* that may deliberately disagree with the
/// matrix (see [`LinearGgMap::with_declared_window`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearGgMap {
    declared_window: u64,
    matrix: IntMatrix,
}

impl LinearGgMap {
    pub fn new(matrix: IntMatrix) -> LinearGgMap {
        LinearGgMap {
            declared_window: matrix.cols() as u64,
            matrix,
        }
    }

    /// Overrides the declared window. Evaluation still uses the full matrix,
    /// so a declaration smaller than the real reach produces a map whose
    /// claimed window is a lie — the corrupted-fixture case.
    pub fn with_declared_window(mut self, window: u64) -> LinearGgMap {
        self.declared_window = window;
        self
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn eval(&self, x: &FinSeq) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.matrix.rows()];
        for (k, v) in x.iter() {
            if k == 0 || k > self.matrix.cols() as u64 {
                continue;
            }
            let col = (k - 1) as usize;
            for (r, slot) in out.iter_mut().enumerate() {
                *slot += &self.matrix[(r, col)] * v;
            }
        }
        out
    }
}

/// The minimal interface a claim checker needs from a candidate map out of
/// the star structure: evaluate, combine in the target, take target local
/// identities, and state the claimed window.
pub trait GgProbe {
    type Value: Clone + PartialEq + fmt::Debug;

    /// Largest input coordinate the probe claims to depend on.
    fn declared_window(&self) -> u64;
    fn apply(&self, x: &FinSeq) -> Self::Value;
    /// The target operation.
    fn combine(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    /// Local identity of a value in the target.
    fn identity_of(&self, v: &Self::Value) -> Self::Value;
    fn target_is_normal(&self) -> bool;
    fn render(&self, v: &Self::Value) -> String;
}

impl GgProbe for LinearGgMap {
    type Value = Vec<BigInt>;

    fn declared_window(&self) -> u64 {
        self.declared_window
    }

    fn apply(&self, x: &FinSeq) -> Vec<BigInt> {
        self.eval(x)
    }

    fn combine(&self, a: &Vec<BigInt>, b: &Vec<BigInt>) -> Vec<BigInt> {
        assert_eq!(a.len(), b.len(), "values from different targets");
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn identity_of(&self, v: &Vec<BigInt>) -> Vec<BigInt> {
        vec![BigInt::zero(); v.len()]
    }

    fn target_is_normal(&self) -> bool {
        true // ℤ^k is a group
    }

    fn render(&self, v: &Vec<BigInt>) -> String {
        let items: Vec<String> = v.iter().map(BigInt::to_string).collect();
        format!("[{}]", items.join(","))
    }
}

/// A probe from the star structure into a finite generalized group: a base
/// idempotent `u` and commuting elements of `u`'s component placed at
/// positions ≡ 0 (mod 3). The input coordinate at each position becomes the
/// exponent of the element there:
///
/// ```text
/// x ↦ u · c₁^{x_{p₁}} · c₂^{x_{p₂}} · …
/// ```
///
/// Positions ≢ 0 (mod 3) are ignored, which is exactly what makes the probe
/// a homomorphism out of the star structure.
#[derive(Clone, Debug)]
pub struct FinProbe<'a> {
    target: &'a FiniteGenGroup,
    base: usize,
    factors: Vec<(u64, usize)>,
    declared_window: u64,
}

fn component_pow(target: &FiniteGenGroup, base: usize, c: usize, k: u64) -> usize {
    let mut acc = base;
    for _ in 0..k {
        acc = target.mul(acc, c);
    }
    acc
}

fn component_order(target: &FiniteGenGroup, base: usize, c: usize) -> u64 {
    let mut acc = c;
    let mut t = 1u64;
    while acc != base {
        acc = target.mul(acc, c);
        t += 1;
    }
    t
}

impl<'a> FinProbe<'a> {
    /// Validates the probe: `base` idempotent, positions strictly increasing
    /// multiples of 3, every factor in `base`'s component, factors pairwise
    /// commuting.
    pub fn new(
        target: &'a FiniteGenGroup,
        base: usize,
        factors: Vec<(u64, usize)>,
    ) -> Result<FinProbe<'a>, ClaimError> {
        if base >= target.order() || target.mul(base, base) != base {
            return Err(ClaimError::InvalidProbe {
                reason: format!("base {base} is not an idempotent"),
            });
        }
        let mut prev = 0u64;
        for &(pos, c) in &factors {
            if pos == 0 || pos % 3 != 0 || pos <= prev {
                return Err(ClaimError::InvalidProbe {
                    reason: format!(
                        "positions must be strictly increasing multiples of 3; got {pos}"
                    ),
                });
            }
            prev = pos;
            if c >= target.order() || target.local_identity(c) != base {
                return Err(ClaimError::InvalidProbe {
                    reason: format!("factor {c} at position {pos} is outside the base component"),
                });
            }
        }
        for (a, &(pa, ca)) in factors.iter().enumerate() {
            for &(pb, cb) in &factors[a + 1..] {
                if target.mul(ca, cb) != target.mul(cb, ca) {
                    return Err(ClaimError::InvalidProbe {
                        reason: format!(
                            "factors at positions {pa} and {pb} do not commute"
                        ),
                    });
                }
            }
        }
        let declared_window = factors.last().map_or(0, |&(p, _)| p);
        Ok(FinProbe {
            target,
            base,
            factors,
            declared_window,
        })
    }

    /// Overrides the declared window; the factors still evaluate wherever
    /// they sit. A declaration below the last factor position produces the
    /// corrupted wrong-window fixture.
    pub fn with_declared_window(mut self, window: u64) -> FinProbe<'a> {
        self.declared_window = window;
        self
    }

    pub fn target(&self) -> &'a FiniteGenGroup {
        self.target
    }
}

impl GgProbe for FinProbe<'_> {
    type Value = usize;

    fn declared_window(&self) -> u64 {
        self.declared_window
    }

    fn apply(&self, x: &FinSeq) -> usize {
        let mut acc = self.base;
        for &(pos, c) in &self.factors {
            let ord = component_order(self.target, self.base, c);
            let k = x
                .coeff(pos)
                .mod_floor(&BigInt::from(ord))
                .to_u64()
                .expect("reduced exponent fits u64");
            acc = self.target.mul(acc, component_pow(self.target, self.base, c, k));
        }
        acc
    }

    fn combine(&self, a: &usize, b: &usize) -> usize {
        self.target.mul(*a, *b)
    }

    fn identity_of(&self, v: &usize) -> usize {
        self.target.local_identity(*v)
    }

    fn target_is_normal(&self) -> bool {
        self.target.is_normal()
    }

    fn render(&self, v: &usize) -> String {
        self.target.name(*v).to_string()
    }
}

/// `{n ≤ bound : p(iₙ) ≠ e(p(iₙ))}` — the bounded off-diagonal set of a
/// probe, by direct evaluation on basis sequences.
pub fn probe_offdiagonal<P: GgProbe + ?Sized>(p: &P, bound: u64) -> BTreeSet<u64> {
    (1..=bound)
        .filter(|&n| {
            let v = p.apply(&FinSeq::basis(n).expect("n ≥ 1"));
            v != p.identity_of(&v)
        })
        .collect()
}

fn random_finseq(rng: &mut ChaCha8Rng, max_index: u64, max_terms: usize) -> FinSeq {
    let terms = rng.gen_range(0..=max_terms);
    let pairs = (0..terms)
        .map(|_| {
            (
                rng.gen_range(1..=max_index),
                rng.gen_range(-COORD_BOUND..=COORD_BOUND),
            )
        })
        .collect::<Vec<_>>();
    FinSeq::from_pairs(pairs).expect("indices start at 1")
}

/// First sampled pair violating `p(x ⋆ y) = p(x)·p(y)`, if any.
fn sampled_law_violation<P: GgProbe + ?Sized>(
    p: &P,
    rng: &mut ChaCha8Rng,
    samples: usize,
    max_index: u64,
) -> Option<(FinSeq, FinSeq)> {
    for _ in 0..samples {
        let x = random_finseq(rng, max_index, 6);
        let y = random_finseq(rng, max_index, 6);
        if p.apply(&x.star(&y)) != p.combine(&p.apply(&x), &p.apply(&y)) {
            return Some((x, y));
        }
    }
    None
}

/// Index range used when sampling inputs against a probe: a margin beyond
/// the declared window so truncation violations can actually be seen.
fn sample_range<P: GgProbe + ?Sized>(p: &P) -> u64 {
    p.declared_window().max(3) + DEFAULT_MAX_WINDOW
}

/// Shared core for the composite-candidate claims: sampled homomorphism law,
/// exact off-diagonal set, window containment.
fn candidate_report(
    id: &str,
    cand: &LinearGgMap,
    expected_offdiag: &BTreeSet<u64>,
    bound: u64,
    seed: u64,
) -> ClaimReport {
    let mut params = base_params(bound, seed);
    params.insert("window".into(), cand.declared_window().to_string());
    params.insert("target_rank".into(), cand.matrix().rows().to_string());
    if bound == 0 {
        return ClaimReport::skipped(id, "bound is 0; nothing checked", params);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if let Some((x, y)) = sampled_law_violation(cand, &mut rng, DEFAULT_SAMPLES, sample_range(cand))
    {
        return ClaimReport::falsified(
            id,
            format!("law fails at x={x}, y={y}"),
            params,
        );
    }
    let s = probe_offdiagonal(cand, bound);
    if s != *expected_offdiag {
        return ClaimReport::falsified(
            id,
            format!(
                "off-diagonal set {} differs from expected {}",
                render_set(&s),
                render_set(expected_offdiag)
            ),
            params,
        );
    }
    if let Some(&max) = s.iter().next_back() {
        if max > cand.declared_window() {
            return ClaimReport::falsified(
                id,
                format!(
                    "off-diagonal index {max} beyond declared window {}",
                    cand.declared_window()
                ),
                params,
            );
        }
    }
    params.insert("offdiagonal".into(), render_set(&s));
    ClaimReport::verified(id, params)
}

/// The identity map on the star carrier is not representable-slender: its
/// off-diagonal set is exactly the multiples of 3, and it already fails the
/// additive law at `(i₁, i₁)`.
pub fn check_ex_1_9(bound: u64) -> ClaimReport {
    let id = "Ex-1.9";
    let mut params = base_params(bound, 0);
    params.remove("seed"); // fully deterministic, no sampling
    if bound == 0 {
        return ClaimReport::skipped(id, "bound is 0; nothing checked", params);
    }
    let i1 = FinSeq::basis(1).expect("1 ≥ 1");
    if i1.star(&i1) == i1.add(&i1) {
        return ClaimReport::falsified(
            id,
            "identity map satisfied the additive law at (i1, i1)".into(),
            params,
        );
    }
    let s: BTreeSet<u64> = (1..=bound)
        .filter(|&n| {
            let i_n = FinSeq::basis(n).expect("n ≥ 1");
            i_n != i_n.star_identity()
        })
        .collect();
    let expected: BTreeSet<u64> = (1..=bound).filter(|n| n % 3 == 0).collect();
    if s != expected {
        return ClaimReport::falsified(
            id,
            format!(
                "off-diagonal set {} is not the multiples of 3 up to {bound}",
                render_set(&s)
            ),
            params,
        );
    }
    params.insert("offdiagonal_size".into(), s.len().to_string());
    params.insert("law_counterexample".into(), "(i1, i1)".into());
    ClaimReport::verified(id, params)
}

/// Subgroups inherit the bounded slenderness signature: probes into a
/// generalized subgroup keep finite, window-contained off-diagonal sets.
/// Skipped when `subset` is not a generalized subgroup.
pub fn check_prop_1_7(
    g: &FiniteGenGroup,
    subset: &[usize],
    bound: u64,
    seed: u64,
) -> ClaimReport {
    let id = "Prop-1.7";
    let mut params = base_params(bound, seed);
    params.insert("subset_size".into(), subset.len().to_string());
    if bound == 0 {
        return ClaimReport::skipped(id, "bound is 0; nothing checked", params);
    }
    if !g.is_generalized_subgroup(subset) {
        return ClaimReport::skipped(id, "subset is not a generalized subgroup", params);
    }
    let h = match g.sub_generalized_group(subset) {
        Ok(h) => h,
        Err(e) => {
            return ClaimReport::falsified(
                id,
                format!("subgroup extraction failed: {e}"),
                params,
            )
        }
    };
    params.insert("subgroup_order".into(), h.order().to_string());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let probes = seeded_probes(&h, &mut rng, 3);
    params.insert("probes".into(), probes.len().to_string());
    for probe in &probes {
        if let Some(report) = probe_failure(id, probe, bound, &mut rng, &params) {
            return report;
        }
    }
    ClaimReport::verified(id, params)
}

/// Window/law checks for one probe; `None` when it passes.
fn probe_failure<P: GgProbe + ?Sized>(
    id: &str,
    probe: &P,
    bound: u64,
    rng: &mut ChaCha8Rng,
    params: &BTreeMap<String, String>,
) -> Option<ClaimReport> {
    let s = probe_offdiagonal(probe, bound);
    if let Some(&max) = s.iter().next_back() {
        if max > probe.declared_window() {
            return Some(ClaimReport::falsified(
                id,
                format!(
                    "off-diagonal index {max} beyond declared window {}",
                    probe.declared_window()
                ),
                params.clone(),
            ));
        }
    }
    if let Some((x, y)) = sampled_law_violation(probe, rng, DEFAULT_SAMPLES, sample_range(probe)) {
        return Some(ClaimReport::falsified(
            id,
            format!("law fails at x={x}, y={y}"),
            params.clone(),
        ));
    }
    None
}

/// Seeded probes into `target`: each picks an idempotent, one element of its
/// component, and places powers of that element at positions 3, 6, 9, 12 —
/// powers of a single element always commute, so validation cannot fail.
fn seeded_probes<'a>(
    target: &'a FiniteGenGroup,
    rng: &mut ChaCha8Rng,
    count: usize,
) -> Vec<FinProbe<'a>> {
    let idempotents = target.idempotents();
    (0..count)
        .map(|_| {
            let base = idempotents[rng.gen_range(0..idempotents.len())];
            let members: Vec<usize> = target
                .elements()
                .filter(|&x| target.local_identity(x) == base)
                .collect();
            let c = members[rng.gen_range(0..members.len())];
            let ord = component_order(target, base, c);
            let positions = rng.gen_range(0..=4usize);
            let factors = (0..positions)
                .map(|k| {
                    let exp = rng.gen_range(0..ord);
                    (3 * (k as u64 + 1), component_pow(target, base, c, exp))
                })
                .collect();
            FinProbe::new(target, base, factors).expect("powers of one element commute")
        })
        .collect()
}

/// Every component of a generalized group is a group (validated by
/// extraction), isomorphic to `base` when one is supplied, and probes into
/// components keep the bounded slenderness signature.
pub fn check_prop_1_8(
    g: &FiniteGenGroup,
    base: Option<&FiniteGroup>,
    bound: u64,
    seed: u64,
) -> ClaimReport {
    let id = "Prop-1.8";
    let mut params = base_params(bound, seed);
    params.insert("order".into(), g.order().to_string());
    if bound == 0 {
        return ClaimReport::skipped(id, "bound is 0; nothing checked", params);
    }
    let idempotents = g.idempotents();
    params.insert("components".into(), idempotents.len().to_string());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for &u in &idempotents {
        let comp = match g.group_component(u) {
            Ok(c) => c,
            Err(e) => {
                return ClaimReport::falsified(
                    id,
                    format!("component at idempotent {u} is not a group: {e}"),
                    params,
                )
            }
        };
        if let Some(base) = base {
            if crate::hom::find_isomorphism(comp.as_generalized(), base.as_generalized())
                .is_none()
            {
                return ClaimReport::falsified(
                    id,
                    format!("component at idempotent {u} is not isomorphic to the base group"),
                    params,
                );
            }
        }
        let probes = seeded_probes(comp.as_generalized(), &mut rng, 1);
        for probe in &probes {
            if let Some(report) = probe_failure(id, probe, bound, &mut rng, &params) {
                return report;
            }
        }
    }
    // Sanity: every element's component was covered via its idempotent.
    for a in g.elements() {
        if !idempotents.contains(&g.local_identity(a)) {
            return ClaimReport::falsified(
                id,
                format!("local identity of {a} is not an idempotent"),
                params,
            );
        }
    }
    ClaimReport::verified(id, params)
}

/// Probes into the target of a surjective homomorphism lift pointwise:
/// smallest-index preimages reproduce the probe values, and the surjection
/// respects local identities on those preimages. The general lift (a full
/// homomorphism upstairs) is a recorded gap, noted in the parameters — this
/// checker tests the pointwise consequences only.
pub fn check_thm_2_2(
    f_map: &HomTable<'_>,
    bound: u64,
    seed: u64,
) -> Result<ClaimReport, ClaimError> {
    if let Some(witness) = f_map.first_violation() {
        return Err(ClaimError::NotAHomomorphism { witness });
    }
    if !f_map.is_surjective() {
        return Err(ClaimError::NotSurjective);
    }
    let id = "Thm-2.2";
    let mut params = base_params(bound, seed);
    params.insert(
        "proof_gap".into(),
        "lift checked pointwise on basis images; existence of a full lift is the recorded gap"
            .into(),
    );
    if bound == 0 {
        return Ok(ClaimReport::skipped(id, "bound is 0; nothing checked", params));
    }
    let source = f_map.source();
    let target = f_map.target();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let probes = seeded_probes(target, &mut rng, 3);
    params.insert("probes".into(), probes.len().to_string());
    for probe in &probes {
        if let Some(report) = probe_failure(id, probe, bound, &mut rng, &params) {
            return Ok(report);
        }
        for n in 1..=bound {
            let t = probe.apply(&FinSeq::basis(n).expect("n ≥ 1"));
            let a = source
                .elements()
                .find(|&a| f_map.image(a) == t)
                .expect("surjective map has a preimage");
            if f_map.image(source.local_identity(a)) != target.local_identity(t) {
                return Ok(ClaimReport::falsified(
                    id,
                    format!(
                        "local identity of the lifted preimage {a} does not map to e({}) at n={n}",
                        probe.render(&t)
                    ),
                    params,
                ));
            }
        }
    }
    Ok(ClaimReport::verified(id, params))
}

/// Probes into a finite direct product have window-bounded off-diagonal
/// sets, and a probe value differs from its local identity exactly when some
/// component does. Skipped beyond 4 factors (desk-scale cap) or on empty
/// factor lists.
pub fn check_thm_2_3(factors: &[FiniteGenGroup], bound: u64, seed: u64) -> ClaimReport {
    let id = "Thm-2.3";
    let mut params = base_params(bound, seed);
    params.insert("factors".into(), factors.len().to_string());
    if bound == 0 {
        return ClaimReport::skipped(id, "bound is 0; nothing checked", params);
    }
    if factors.is_empty() {
        return ClaimReport::skipped(id, "no factors given", params);
    }
    if factors.len() > 4 {
        return ClaimReport::skipped(id, "more than 4 factors is beyond desk scale", params);
    }
    let mut product = factors[0].clone();
    for f in &factors[1..] {
        product = product.direct_product(f);
    }
    params.insert("product_order".into(), product.order().to_string());
    // Left-nested product indices decode from the right.
    let decode = |mut x: usize| -> Vec<usize> {
        let mut comps = vec![0usize; factors.len()];
        for (k, f) in factors.iter().enumerate().rev() {
            comps[k] = x % f.order();
            x /= f.order();
        }
        comps
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let probes = seeded_probes(&product, &mut rng, 3);
    for probe in &probes {
        if let Some(report) = probe_failure(id, probe, bound, &mut rng, &params) {
            return report;
        }
        for n in 1..=bound {
            let v = probe.apply(&FinSeq::basis(n).expect("n ≥ 1"));
            let comps = decode(v);
            let non_identity: Vec<usize> = comps
                .iter()
                .enumerate()
                .filter(|&(k, &c)| factors[k].local_identity(c) != c)
                .map(|(k, _)| k)
                .collect();
            let off = v != product.local_identity(v);
            if off != !non_identity.is_empty() {
                return ClaimReport::falsified(
                    id,
                    format!(
                        "componentwise identity check disagrees with the product at n={n}"
                    ),
                    params,
                );
            }
        }
    }
    ClaimReport::verified(id, params)
}

/// A probe into a normal target is determined by its window: truncating
/// inputs at the declared window never changes the value, and the
/// off-diagonal set stays inside the window. Skipped for non-normal targets
/// (the claim's hypothesis).
pub fn check_thm_2_4<P: GgProbe + ?Sized>(probe: &P, bound: u64, seed: u64) -> ClaimReport {
    let id = "Thm-2.4";
    let mut params = base_params(bound, seed);
    params.insert("window".into(), probe.declared_window().to_string());
    if bound == 0 {
        return ClaimReport::skipped(id, "bound is 0; nothing checked", params);
    }
    if !probe.target_is_normal() {
        return ClaimReport::skipped(id, "target is not normal", params);
    }
    let s = probe_offdiagonal(probe, bound);
    if let Some(&max) = s.iter().next_back() {
        if max > probe.declared_window() {
            return ClaimReport::falsified(
                id,
                format!(
                    "off-diagonal index {max} beyond declared window {}",
                    probe.declared_window()
                ),
                params,
            );
        }
    }
    let window = probe.declared_window();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..DEFAULT_SAMPLES {
        let x = random_finseq(&mut rng, sample_range(probe), 6);
        if probe.apply(&x) != probe.apply(&x.truncate(window)) {
            return ClaimReport::falsified(
                id,
                format!("truncation at window {window} changes the value on x={x}"),
                params,
            );
        }
    }
    if let Some((x, y)) = sampled_law_violation(probe, &mut rng, DEFAULT_SAMPLES, sample_range(probe)) {
        return ClaimReport::falsified(id, format!("law fails at x={x}, y={y}"), params);
    }
    params.insert("offdiagonal".into(), render_set(&s));
    ClaimReport::verified(id, params)
}

/// Representable maps vanish on every basis sequence beyond their window:
/// the defining property of the class, checked by evaluation for the base
/// maps and both composites.
pub fn check_thm_1_10(h: &RepHom, bound: u64, seed: u64) -> ClaimReport {
    let expected: BTreeSet<u64> = h
        .support()
        .into_iter()
        .filter(|j| j % 3 == 0 && *j <= bound)
        .collect();
    let cand = RepGgHom::through_f(h.clone()).materialize();
    candidate_report("Thm-1.10", &cand, &expected, bound, seed)
}

/// The composite through the read-every-third map: nonzero exactly at
/// `3m` for `m` in the base support, with value `h(i_m)` there.
pub fn check_thm_1_11(h: &RepHom, bound: u64, seed: u64) -> ClaimReport {
    let id = "Thm-1.11";
    let expected: BTreeSet<u64> = h
        .support()
        .into_iter()
        .map(|m| 3 * m)
        .filter(|&n| n <= bound)
        .collect();
    let cand = RepGgHom::through_g(h.clone()).materialize();
    let report = candidate_report(id, &cand, &expected, bound, seed);
    if report.status != ClaimStatus::Verified {
        return report;
    }
    // Cross-check the defining identity: composite(i_{3m}) = h(i_m).
    for m in 1..=h.window() {
        let lhs = cand.eval(&FinSeq::basis(3 * m).expect("3m ≥ 3"));
        let rhs = h.eval(&FinSeq::basis(m).expect("m ≥ 1"));
        if lhs != rhs {
            return ClaimReport::falsified(
                id,
                format!("composite(i_{}) differs from h(i_{m})", 3 * m),
                report.parameters,
            );
        }
    }
    report
}

/// The window property of the representable class itself: off-diagonal sets
/// of a representable map and of both its composites stay inside their
/// windows at every bound.
fn check_window_property(h: &RepHom, bound: u64, seed: u64) -> ClaimReport {
    let id = "Thm-2.1";
    let mut params = base_params(bound, seed);
    params.insert("window".into(), h.window().to_string());
    if bound == 0 {
        return ClaimReport::skipped(id, "bound is 0; nothing checked", params);
    }
    let direct = h.offdiagonal_set(bound);
    if let Some(&max) = direct.iter().next_back() {
        if max > h.window() {
            return ClaimReport::falsified(
                id,
                format!("base map is nonzero at {max}, beyond its window {}", h.window()),
                params,
            );
        }
    }
    for cand in [
        RepGgHom::through_f(h.clone()).materialize(),
        RepGgHom::through_g(h.clone()).materialize(),
    ] {
        let s = probe_offdiagonal(&cand, bound);
        if let Some(&max) = s.iter().next_back() {
            if max > cand.declared_window() {
                return ClaimReport::falsified(
                    id,
                    format!(
                        "composite is off-diagonal at {max}, beyond its window {}",
                        cand.declared_window()
                    ),
                    params,
                );
            }
        }
    }
    ClaimReport::verified(id, params)
}

/// Collapses sub-reports for one claim: any falsification wins (first one is
/// returned as-is), all-skipped stays skipped, otherwise verified with
/// counts.
fn aggregate(reports: Vec<ClaimReport>) -> ClaimReport {
    let first = reports.first().expect("at least one sub-report").clone();
    if let Some(bad) = reports
        .iter()
        .find(|r| r.status == ClaimStatus::Falsified)
    {
        return bad.clone();
    }
    let skipped = reports
        .iter()
        .filter(|r| r.status == ClaimStatus::Skipped)
        .count();
    let mut params = first.parameters.clone();
    params.insert("subchecks".into(), reports.len().to_string());
    params.insert("subchecks_skipped".into(), skipped.to_string());
    if skipped == reports.len() {
        return ClaimReport::skipped(&first.id, "all sub-checks skipped", params);
    }
    params.remove("reason");
    ClaimReport::verified(&first.id, params)
}

/// The full claim suite over a seeded corpus, one report per claim id,
/// sorted by id. A zero bound skips everything. Deterministic in
/// `(seed, bound)`: corpora and all sampling derive from one seeded stream,
/// drawn in a fixed order.
pub fn run_all(seed: u64, bound: u64) -> Vec<ClaimReport> {
    const IDS: [&str; 9] = [
        "Ex-1.9", "Prop-1.7", "Prop-1.8", "Thm-1.10", "Thm-1.11", "Thm-2.1", "Thm-2.2",
        "Thm-2.3", "Thm-2.4",
    ];
    if bound == 0 {
        return IDS
            .iter()
            .map(|id| {
                ClaimReport::skipped(id, "bound is 0; nothing checked", base_params(0, seed))
            })
            .collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Corpus draws, in order: four Rees specs, then six representable maps.
    let specs: Vec<_> = (0..4)
        .map(|_| random_rees(rng.gen(), ReesBounds { max_i: 2, max_lambda: 2 }))
        .collect();
    let instances: Vec<FiniteGenGroup> = specs.iter().map(|s| s.build()).collect();
    let homs: Vec<RepHom> = (0..6)
        .map(|_| RepHom::random(&mut rng, DEFAULT_MAX_WINDOW, 3, COORD_BOUND))
        .collect();
    let rz2 = right_zero(2);
    let z2 = cyclic(2);
    let z3 = cyclic(3);
    let z4 = cyclic(4);

    let mut reports = Vec::with_capacity(IDS.len());

    reports.push(check_ex_1_9(bound));

    // Prop-1.7 over full carriers and generated subgroups of the corpus.
    let mut subs = Vec::new();
    for g in instances.iter().chain([&rz2]) {
        let all: Vec<usize> = g.elements().collect();
        subs.push(check_prop_1_7(g, &all, bound, rng.gen()));
        let seedling = rng.gen_range(0..g.order());
        let generated = g.generated_subgroup(&[seedling]);
        subs.push(check_prop_1_7(g, &generated, bound, rng.gen()));
    }
    reports.push(aggregate(subs));

    // Prop-1.8: Rees instances against their own base groups, plus a plain
    // group (its single component is itself).
    let mut subs = Vec::new();
    for (spec, g) in specs.iter().zip(&instances) {
        subs.push(check_prop_1_8(g, Some(spec.group()), bound, rng.gen()));
    }
    subs.push(check_prop_1_8(z4.as_generalized(), Some(&z4), bound, rng.gen()));
    reports.push(aggregate(subs));

    reports.push(aggregate(
        homs.iter()
            .map(|h| check_thm_1_10(h, bound, rng.gen()))
            .collect(),
    ));
    reports.push(aggregate(
        homs.iter()
            .map(|h| check_thm_1_11(h, bound, rng.gen()))
            .collect(),
    ));
    reports.push(aggregate(
        homs.iter()
            .map(|h| check_window_property(h, bound, rng.gen()))
            .collect(),
    ));

    // Thm-2.2: identity on a Rees instance and the ℤ/4 → ℤ/2 quotient.
    let mut subs = Vec::new();
    let identity_images: Vec<usize> = instances[0].elements().collect();
    let id_map = HomTable::new(&instances[0], &instances[0], identity_images)
        .expect("identity images are in range");
    subs.push(
        check_thm_2_2(&id_map, bound, rng.gen()).expect("identity map is a surjective hom"),
    );
    let quot = HomTable::new(z4.as_generalized(), z2.as_generalized(), vec![0, 1, 0, 1])
        .expect("images are in range");
    subs.push(check_thm_2_2(&quot, bound, rng.gen()).expect("quotient is a surjective hom"));
    reports.push(aggregate(subs));

    reports.push(aggregate(vec![
        check_thm_2_3(
            &[rz2.clone(), z2.as_generalized().clone()],
            bound,
            rng.gen(),
        ),
        check_thm_2_3(
            &[
                z2.as_generalized().clone(),
                z3.as_generalized().clone(),
            ],
            bound,
            rng.gen(),
        ),
        check_thm_2_3(&[instances[0].clone()], bound, rng.gen()),
    ]));

    // Thm-2.4: materialized composites (normal target ℤ^k) and finite probes
    // into corpus instances — non-normal targets are skipped by the checker.
    let mut subs = Vec::new();
    for h in &homs[..2] {
        subs.push(check_thm_2_4(
            &RepGgHom::through_f(h.clone()).materialize(),
            bound,
            rng.gen(),
        ));
        subs.push(check_thm_2_4(
            &RepGgHom::through_g(h.clone()).materialize(),
            bound,
            rng.gen(),
        ));
    }
    for g in instances.iter().chain([&rz2]) {
        let probe_seed: u64 = rng.gen();
        let check_seed: u64 = rng.gen();
        let mut prng = ChaCha8Rng::seed_from_u64(probe_seed);
        for probe in seeded_probes(g, &mut prng, 1) {
            subs.push(check_thm_2_4(&probe, bound, check_seed));
        }
    }
    reports.push(aggregate(subs));

    reports.sort_by(|a, b| a.id.cmp(&b.id));
    reports
}

pub mod mutation {
    //! Deliberately corrupted fixtures, each run through the *real* checker
    //! that is supposed to reject it. This is the sensitivity suite: a
    //! harness that cannot falsify these is not checking anything.
    //!
    //! Every constructor documents its corruption and returns the checker's
    //! report; the suite asserts each one is falsified with a witness.

    use super::*;
    use crate::finite::verify_axioms;
    use crate::rees::symmetric_3;
    use crate::slender::smith_normal_form;

    /// ℤ/3 with one entry overwritten (`2·2 = 2` instead of `1`): the table
    /// stops being associative and loses unique local identities.
    pub fn broken_table() -> ClaimReport {
        let id = "Mut-broken-table";
        let mut params = base_params(0, 0);
        params.insert("corruption".into(), "cyclic-3 table with entry (2,2) set to 2".into());
        let table = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 2]];
        let report = verify_axioms(&table).expect("table is square");
        if report.verdict() {
            return ClaimReport::verified(id, params);
        }
        let witness = match report.associativity_witness {
            Some((x, y, z)) => format!("associativity fails at ({x}, {y}, {z})"),
            None => match report.local_identity_failures.first() {
                Some(f) => format!(
                    "element {} has local identity candidates {:?}",
                    f.element, f.candidates
                ),
                None => format!("elements {:?} lack inverses", report.inverse_failures),
            },
        };
        ClaimReport::falsified(id, witness, params)
    }

    /// The shift `x ↦ x+1` on ℤ/4 presented as a homomorphism candidate:
    /// the law already fails at the first pair.
    pub fn non_hom_map() -> ClaimReport {
        let id = "Mut-non-hom-map";
        let mut params = base_params(0, 0);
        params.insert("corruption".into(), "shift map on cyclic-4 presented as a hom".into());
        let z4 = cyclic(4);
        let h = HomTable::new(z4.as_generalized(), z4.as_generalized(), vec![1, 2, 3, 0])
            .expect("images are in range");
        match h.first_violation() {
            Some((x, y)) => ClaimReport::falsified(id, format!("law fails at ({x}, {y})"), params),
            None => ClaimReport::verified(id, params),
        }
    }

    /// A multiplication table built with the sandwich entry read at the
    /// *left* factor's own index (`p[λ][i]` instead of `p[λ][j]`): for a
    /// sandwich with a non-constant row the result is not associative.
    pub fn wrong_sandwich() -> ClaimReport {
        let id = "Mut-wrong-sandwich";
        let mut params = base_params(0, 0);
        params.insert(
            "corruption".into(),
            "Rees product using p[lambda][i] instead of p[lambda][j]".into(),
        );
        let base = cyclic(2);
        let (i_size, lambda_size) = (2usize, 2usize);
        let sandwich = [[0usize, 0], [0, 1]];
        let order = i_size * base.order() * lambda_size;
        let index = |i: usize, g: usize, lam: usize| (i * base.order() + g) * lambda_size + lam;
        let decode = |x: usize| {
            let lam = x % lambda_size;
            let rest = x / lambda_size;
            (rest / base.order(), rest % base.order(), lam)
        };
        let mut table = vec![vec![0usize; order]; order];
        for x in 0..order {
            let (i, g, lam) = decode(x);
            for y in 0..order {
                let (_j, h, mu) = decode(y);
                // The defect: the sandwich entry ignores the right factor.
                let prod = base.mul(base.mul(g, sandwich[lam][i]), h);
                table[x][y] = index(i, prod, mu);
            }
        }
        let report = verify_axioms(&table).expect("table is square");
        if report.verdict() {
            return ClaimReport::verified(id, params);
        }
        let witness = match report.associativity_witness {
            Some((x, y, z)) => format!("associativity fails at ({x}, {y}, {z})"),
            None => "axiom scan failed without an associativity witness".into(),
        };
        ClaimReport::falsified(id, witness, params)
    }

    /// A materialized composite with one entry smuggled onto a column ≢ 0
    /// (mod 3): the candidate no longer vanishes where the star structure
    /// forces idempotents, and the off-diagonal set leaves the expected one.
    pub fn corrupted_composite() -> ClaimReport {
        let id = "Mut-corrupted-composite";
        let h = RepHom::new(
            IntMatrix::from_rows(vec![vec![0, 0, 3, 0, 0, 6]]).expect("rectangular"),
        );
        let expected: BTreeSet<u64> = h.support().into_iter().filter(|j| j % 3 == 0).collect();
        let mut matrix = RepGgHom::through_f(h).materialize().matrix().clone();
        matrix.set(0, 0, BigInt::from(5)); // column 1: position 1 ≢ 0 (mod 3)
        let cand = LinearGgMap::new(matrix);
        let mut report = candidate_report(id, &cand, &expected, 12, 0);
        report
            .parameters
            .insert("corruption".into(), "nonzero entry on column 1 of a composite".into());
        report
    }

    /// A Smith decomposition whose `U` row was scaled by 2 (with `D` scaled
    /// to keep `U·A·V = D`): reconstruction holds but `U` is no longer
    /// unimodular, and verification must say so.
    pub fn non_unimodular_snf() -> ClaimReport {
        let id = "Mut-non-unimodular";
        let mut params = base_params(0, 0);
        params.insert("corruption".into(), "row 0 of U and D scaled by 2".into());
        let a = IntMatrix::from_rows(vec![vec![2, 4], vec![6, 8]]).expect("rectangular");
        let mut snf = smith_normal_form(&a);
        for c in 0..2 {
            let u = snf.u[(0, c)].clone();
            snf.u.set(0, c, u * 2);
            let d = snf.d[(0, c)].clone();
            snf.d.set(0, c, d * 2);
        }
        match snf.verify(&a) {
            Err(e) => ClaimReport::falsified(id, e.to_string(), params),
            Ok(()) => ClaimReport::verified(id, params),
        }
    }

    /// A probe whose factors genuinely reach position 6 but whose declared
    /// window claims 3: the window-determinacy check must catch the lie.
    pub fn wrong_window() -> ClaimReport {
        let id = "Mut-wrong-window";
        let s3 = symmetric_3();
        let g = s3.as_generalized();
        let probe = FinProbe::new(g, 0, vec![(3, 3), (6, 3)])
            .expect("powers of one 3-cycle commute")
            .with_declared_window(3);
        let mut report = check_thm_2_4(&probe, 12, 0);
        report.id = id.to_string();
        report
            .parameters
            .insert("corruption".into(), "declared window 3 below the real reach 6".into());
        report
    }

    /// All six corrupted fixtures, in a fixed order.
    pub fn mutation_suite() -> Vec<ClaimReport> {
        vec![
            broken_table(),
            non_hom_map(),
            wrong_sandwich(),
            corrupted_composite(),
            non_unimodular_snf(),
            wrong_window(),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rees::{symmetric_3, ReesSpec};

    fn h36() -> RepHom {
        RepHom::new(IntMatrix::from_rows(vec![vec![0, 0, 3, 0, 0, 6]]).unwrap())
    }

    #[test]
    fn rep_hom_reads_only_its_window() {
        let h = h36();
        assert_eq!(h.window(), 6);
        assert_eq!(h.target_rank(), 1);
        assert_eq!(h.support().into_iter().collect::<Vec<_>>(), vec![3, 6]);
        assert_eq!(h.eval(&FinSeq::basis(3).unwrap()), vec![BigInt::from(3)]);
        assert_eq!(h.eval(&FinSeq::basis(7).unwrap()), vec![BigInt::zero()]);
        assert_eq!(
            h.offdiagonal_set(100).into_iter().collect::<Vec<_>>(),
            vec![3, 6]
        );
    }

    #[test]
    fn composites_match_their_materializations() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let h = RepHom::random(&mut rng, 9, 3, 9);
            let through_f = RepGgHom::through_f(h.clone());
            let through_g = RepGgHom::through_g(h.clone());
            let mf = through_f.materialize();
            let mg = through_g.materialize();
            assert_eq!(mf.declared_window(), h.window());
            assert_eq!(mg.declared_window(), 3 * h.window());
            for _ in 0..30 {
                let x = random_finseq(&mut rng, 3 * h.window() + 6, 6);
                assert_eq!(through_f.eval(&x), mf.eval(&x));
                assert_eq!(through_g.eval(&x), mg.eval(&x));
            }
        }
    }

    #[test]
    fn thm_1_10_exact_offdiagonal() {
        let report = check_thm_1_10(&h36(), 100, 1);
        assert_eq!(report.status, ClaimStatus::Verified);
        assert_eq!(report.parameters["offdiagonal"], "{3,6}");
    }

    #[test]
    fn thm_1_11_shifts_the_support() {
        let report = check_thm_1_11(&h36(), 100, 1);
        assert_eq!(report.status, ClaimStatus::Verified);
        assert_eq!(report.parameters["offdiagonal"], "{9,18}");
        // Tight bound cuts the expected set, not the verdict.
        let tight = check_thm_1_11(&h36(), 10, 1);
        assert_eq!(tight.status, ClaimStatus::Verified);
        assert_eq!(tight.parameters["offdiagonal"], "{9}");
    }

    #[test]
    fn zero_map_passes_vacuously() {
        let zero = RepHom::new(IntMatrix::zero(2, 5));
        for report in [
            check_thm_1_10(&zero, 50, 2),
            check_thm_1_11(&zero, 50, 2),
            check_window_property(&zero, 50, 2),
        ] {
            assert_eq!(report.status, ClaimStatus::Verified, "{report:?}");
        }
    }

    #[test]
    fn ex_1_9_sees_the_multiples_of_three() {
        let report = check_ex_1_9(30);
        assert_eq!(report.status, ClaimStatus::Verified);
        assert_eq!(report.parameters["offdiagonal_size"], "10");
        assert_eq!(check_ex_1_9(0).status, ClaimStatus::Skipped);
    }

    #[test]
    fn fin_probe_validation() {
        let s3 = symmetric_3();
        let g = s3.as_generalized();
        // 102 (a transposition) and 120 (a 3-cycle) do not commute.
        assert!(matches!(
            FinProbe::new(g, 0, vec![(3, 2), (6, 3)]),
            Err(ClaimError::InvalidProbe { .. })
        ));
        assert!(matches!(
            FinProbe::new(g, 1, vec![]),
            Err(ClaimError::InvalidProbe { .. }) // 021 is not idempotent
        ));
        assert!(matches!(
            FinProbe::new(g, 0, vec![(4, 3)]),
            Err(ClaimError::InvalidProbe { .. }) // 4 is not a multiple of 3
        ));
        assert!(FinProbe::new(g, 0, vec![(3, 3), (6, 4)]).is_ok()); // both 3-cycles commute
    }

    #[test]
    fn fin_probe_is_a_homomorphism() {
        let z4 = cyclic(4);
        let probe = FinProbe::new(z4.as_generalized(), 0, vec![(3, 1), (6, 2)]).unwrap();
        assert_eq!(probe.declared_window(), 6);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        assert!(sampled_law_violation(&probe, &mut rng, 500, 12).is_none());
        // apply() exponentiates coordinates: x₃ = 5 gives 1·5 = 5 ≡ 1 (mod 4).
        let x = FinSeq::from_pairs([(3u64, 5)]).unwrap();
        assert_eq!(probe.apply(&x), 1);
        let y = FinSeq::from_pairs([(3u64, -1)]).unwrap();
        assert_eq!(probe.apply(&y), 3);
    }

    #[test]
    fn prop_1_7_subgroups_and_non_subgroups() {
        let z4 = cyclic(4);
        let g = z4.as_generalized();
        assert_eq!(check_prop_1_7(g, &[0, 2], 40, 5).status, ClaimStatus::Verified);
        assert_eq!(
            check_prop_1_7(g, &[0, 1, 2, 3], 40, 5).status,
            ClaimStatus::Verified
        );
        let skipped = check_prop_1_7(g, &[0, 1], 40, 5);
        assert_eq!(skipped.status, ClaimStatus::Skipped);
        assert!(skipped.parameters["reason"].contains("not a generalized subgroup"));
    }

    #[test]
    fn prop_1_8_component_isomorphism() {
        let spec = ReesSpec::new(cyclic(3), 2, 2, vec![vec![0, 1], vec![2, 0]]).unwrap();
        let g = spec.build();
        let good = check_prop_1_8(&g, Some(spec.group()), 30, 7);
        assert_eq!(good.status, ClaimStatus::Verified);
        assert_eq!(good.parameters["components"], "4");
        let wrong_base = check_prop_1_8(&g, Some(&cyclic(2)), 30, 7);
        assert_eq!(wrong_base.status, ClaimStatus::Falsified);
        assert!(wrong_base.witness.unwrap().contains("not isomorphic"));
    }

    #[test]
    fn thm_2_2_requires_a_surjective_hom() {
        let z4 = cyclic(4);
        let z2 = cyclic(2);
        let quot =
            HomTable::new(z4.as_generalized(), z2.as_generalized(), vec![0, 1, 0, 1]).unwrap();
        let report = check_thm_2_2(&quot, 25, 11).unwrap();
        assert_eq!(report.status, ClaimStatus::Verified);
        assert!(report.parameters.contains_key("proof_gap"));

        let inject =
            HomTable::new(z2.as_generalized(), z4.as_generalized(), vec![0, 2]).unwrap();
        assert_eq!(
            check_thm_2_2(&inject, 25, 11).unwrap_err(),
            ClaimError::NotSurjective
        );
        let shift =
            HomTable::new(z4.as_generalized(), z4.as_generalized(), vec![1, 2, 3, 0]).unwrap();
        assert!(matches!(
            check_thm_2_2(&shift, 25, 11),
            Err(ClaimError::NotAHomomorphism { witness: (0, 0) })
        ));
    }

    #[test]
    fn thm_2_3_products_and_caps() {
        let rz2 = right_zero(2);
        let z2 = cyclic(2);
        let report = check_thm_2_3(&[rz2.clone(), z2.as_generalized().clone()], 30, 13);
        assert_eq!(report.status, ClaimStatus::Verified);
        assert_eq!(check_thm_2_3(&[], 30, 13).status, ClaimStatus::Skipped);
        let five = vec![z2.as_generalized().clone(); 5];
        assert_eq!(check_thm_2_3(&five, 30, 13).status, ClaimStatus::Skipped);
    }

    #[test]
    fn thm_2_4_normality_hypothesis() {
        let z4 = cyclic(4);
        let probe = FinProbe::new(z4.as_generalized(), 0, vec![(3, 1)]).unwrap();
        assert_eq!(check_thm_2_4(&probe, 30, 17).status, ClaimStatus::Verified);

        // A skew sandwich makes the instance non-normal: hypothesis unmet.
        let skew = ReesSpec::new(cyclic(2), 2, 2, vec![vec![0, 0], vec![0, 1]])
            .unwrap()
            .build();
        assert!(!skew.is_normal());
        let u = skew.idempotents()[0];
        let probe = FinProbe::new(&skew, u, vec![]).unwrap();
        let report = check_thm_2_4(&probe, 30, 17);
        assert_eq!(report.status, ClaimStatus::Skipped);
        assert!(report.parameters["reason"].contains("not normal"));
    }

    #[test]
    fn run_all_is_deterministic_and_clean() {
        let a = run_all(42, 50);
        let b = run_all(42, 50);
        assert_eq!(a, b);
        let ids: Vec<&str> = a.iter().map(|r| r.id.as_str()).collect();
        assert_eq!(
            ids,
            vec![
                "Ex-1.9", "Prop-1.7", "Prop-1.8", "Thm-1.10", "Thm-1.11", "Thm-2.1",
                "Thm-2.2", "Thm-2.3", "Thm-2.4"
            ]
        );
        for r in &a {
            assert_ne!(r.status, ClaimStatus::Falsified, "{r:?}");
        }
        assert_ne!(run_all(43, 50), a);
    }

    #[test]
    fn run_all_with_zero_bound_skips_everything() {
        let reports = run_all(1, 0);
        assert_eq!(reports.len(), 9);
        for r in &reports {
            assert_eq!(r.status, ClaimStatus::Skipped, "{r:?}");
        }
    }

    #[test]
    fn mutation_suite_is_fully_falsified() {
        let reports = mutation::mutation_suite();
        let ids: Vec<&str> = reports.iter().map(|r| r.id.as_str()).collect();
        assert_eq!(
            ids,
            vec![
                "Mut-broken-table",
                "Mut-non-hom-map",
                "Mut-wrong-sandwich",
                "Mut-corrupted-composite",
                "Mut-non-unimodular",
                "Mut-wrong-window"
            ]
        );
        for r in &reports {
            assert_eq!(r.status, ClaimStatus::Falsified, "{}", r.id);
            assert!(r.witness.as_deref().is_some_and(|w| !w.is_empty()), "{}", r.id);
        }
    }

    #[test]
    fn report_lines_render_status_and_witness() {
        let ok = ClaimReport::verified("Thm-2.1", base_params(10, 0));
        assert_eq!(ok.render_line(), "CLAIM Thm-2.1 verified");
        let bad = ClaimReport::falsified("Thm-2.1", "n=5".into(), base_params(10, 0));
        assert_eq!(bad.render_line(), "CLAIM Thm-2.1 falsified witness=n=5");
    }
}
