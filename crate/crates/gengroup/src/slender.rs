//! Smith normal form and slenderness of finitely generated abelian groups.
//!
//! Every finitely generated abelian group is `ℤ^r ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/dₖ` with
//! `d₁ | d₂ | … | dₖ`, computed here from a relations matrix via Smith
//! normal form over exact [`BigInt`] arithmetic. Such a group is *slender*
//! exactly when it is torsion-free, i.e. free of finite rank — any torsion
//! element is hit by a homomorphism out of the full product ℤ^ℕ that doesn't
//! almost-vanish on the basis.
//!
//! The negative verdicts for the classical infinite examples (ℚ, the p-adic
//! integers, the full product ℤ^ℕ) are not computations at this scale; they
//! are recorded verdicts with literature notes ([`named_verdict`]), kept
//! separate from the computational path on purpose.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SlenderError {
    ShapeMismatch { reason: String },
    UnknownName { name: String },
    /// An entry does not fit the i128 document range.
    EntryOutOfRange { row: usize, col: usize },
    InvalidFactors { reason: String },
}

impl fmt::Display for SlenderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlenderError::ShapeMismatch { reason } => write!(f, "shape mismatch: {reason}"),
            SlenderError::UnknownName { name } => {
                write!(f, "unknown group name {name:?}; known: Q, J_p, prod_Z, Z^n, free_abelian")
            }
            SlenderError::EntryOutOfRange { row, col } => {
                write!(f, "entry at ({row}, {col}) does not fit the document range")
            }
            SlenderError::InvalidFactors { reason } => {
                write!(f, "invalid invariant factors: {reason}")
            }
        }
    }
}

impl std::error::Error for SlenderError {}

/// A dense integer matrix with exact arbitrary-precision entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>, // row-major
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, SlenderError> {
        if entries.len() != rows * cols {
            return Err(SlenderError::ShapeMismatch {
                reason: format!("{} entries for a {rows}×{cols} matrix", entries.len()),
            });
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    /// Convenience over row vectors; rejects ragged input.
    pub fn from_rows<B: Into<BigInt>>(rows: Vec<Vec<B>>) -> Result<Self, SlenderError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != c {
                return Err(SlenderError::ShapeMismatch {
                    reason: format!("row {i} has length {}, expected {c}", row.len()),
                });
            }
            entries.extend(row.into_iter().map(Into::into));
        }
        IntMatrix::new(r, c, entries)
    }

    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of range");
        self.entries[r * self.cols + c] = value;
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, SlenderError> {
        if self.cols != other.rows {
            return Err(SlenderError::ShapeMismatch {
                reason: format!(
                    "cannot multiply {}×{} by {}×{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            });
        }
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * &other[(k, j)];
                    out.entries[i * out.cols + j] += add;
                }
            }
        }
        Ok(out)
    }

    /// Exact determinant by the Bareiss fraction-free algorithm; every
    /// division along the way is exact. The 0×0 determinant is 1.
    pub fn determinant(&self) -> Result<BigInt, SlenderError> {
        if self.rows != self.cols {
            return Err(SlenderError::ShapeMismatch {
                reason: format!("determinant of a {}×{} matrix", self.rows, self.cols),
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.entries.clone();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k * n + k].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !m[r * n + k].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                for c in 0..n {
                    m.swap(k * n + c, r * n + c);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j];
                    m[i * n + j] = num / &prev;
                }
            }
            prev = m[k * n + k].clone();
        }
        let det = m[n * n - 1].clone();
        Ok(if sign < 0 { -det } else { det })
    }

    pub fn to_doc(&self) -> Result<MatrixDoc, SlenderError> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for (k, v) in self.entries.iter().enumerate() {
            let small: i128 = v.try_into().map_err(|_| SlenderError::EntryOutOfRange {
                row: k / self.cols.max(1),
                col: k % self.cols.max(1),
            })?;
            entries.push(small);
        }
        Ok(MatrixDoc {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn from_doc(doc: MatrixDoc) -> Result<IntMatrix, SlenderError> {
        IntMatrix::new(
            doc.rows,
            doc.cols,
            doc.entries.into_iter().map(BigInt::from).collect(),
        )
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// `row[i] -= q · row[k]`
    fn row_sub(&mut self, i: usize, k: usize, q: &BigInt) {
        for c in 0..self.cols {
            let sub = q * &self.entries[k * self.cols + c];
            self.entries[i * self.cols + c] -= sub;
        }
    }

    /// `col[j] -= q · col[k]`
    fn col_sub(&mut self, j: usize, k: usize, q: &BigInt) {
        for r in 0..self.rows {
            let sub = q * &self.entries[r * self.cols + k];
            self.entries[r * self.cols + j] -= sub;
        }
    }

    /// `row[t] += row[i]`
    fn row_add(&mut self, t: usize, i: usize) {
        for c in 0..self.cols {
            let add = self.entries[i * self.cols + c].clone();
            self.entries[t * self.cols + c] += add;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.entries[r * self.cols + c].clone();
            self.entries[r * self.cols + c] = v;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of range");
        &self.entries[r * self.cols + c]
    }
}

/// JSON document form of a matrix. Entries are bounded by the i128 range;
/// anything larger must stay in [`IntMatrix`] form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<i128>,
}

/// A decomposition `U · A · V = D` with unimodular `U`, `V` and `D` in Smith
/// normal form: diagonal, nonnegative, each entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

/// What [`SnfResult::verify`] found wrong.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SnfCheckError {
    Shape { reason: String },
    Reconstruction { row: usize, col: usize },
    NotDiagonal { row: usize, col: usize },
    NegativeEntry { index: usize },
    ChainBroken { index: usize },
    NotUnimodular { factor: &'static str, det: BigInt },
}

impl fmt::Display for SnfCheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SnfCheckError::Shape { reason } => write!(f, "shape: {reason}"),
            SnfCheckError::Reconstruction { row, col } => {
                write!(f, "U·A·V differs from D at ({row}, {col})")
            }
            SnfCheckError::NotDiagonal { row, col } => {
                write!(f, "off-diagonal entry at ({row}, {col})")
            }
            SnfCheckError::NegativeEntry { index } => {
                write!(f, "negative diagonal entry at {index}")
            }
            SnfCheckError::ChainBroken { index } => {
                write!(f, "d[{index}] does not divide d[{}]", index + 1)
            }
            SnfCheckError::NotUnimodular { factor, det } => {
                write!(f, "{factor} has determinant {det}, not ±1")
            }
        }
    }
}

impl std::error::Error for SnfCheckError {}

impl SnfResult {
    /// The diagonal of `D`, in order.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    /// Re-derives every guarantee from scratch against the original matrix:
    /// reconstruction `U·A·V = D`, diagonality, nonnegativity, the
    /// divisibility chain, and unimodularity of both factors.
    pub fn verify(&self, a: &IntMatrix) -> Result<(), SnfCheckError> {
        let (m, n) = (a.rows, a.cols);
        if self.u.rows != m || self.u.cols != m || self.v.rows != n || self.v.cols != n
            || self.d.rows != m || self.d.cols != n
        {
            return Err(SnfCheckError::Shape {
                reason: "factor dimensions do not match the input".into(),
            });
        }
        let product = self
            .u
            .mul(a)
            .and_then(|ua| ua.mul(&self.v))
            .map_err(|e| SnfCheckError::Shape { reason: e.to_string() })?;
        for r in 0..m {
            for c in 0..n {
                if product[(r, c)] != self.d[(r, c)] {
                    return Err(SnfCheckError::Reconstruction { row: r, col: c });
                }
                if r != c && !self.d[(r, c)].is_zero() {
                    return Err(SnfCheckError::NotDiagonal { row: r, col: c });
                }
            }
        }
        let diag = self.diagonal();
        for (i, v) in diag.iter().enumerate() {
            if v.is_negative() {
                return Err(SnfCheckError::NegativeEntry { index: i });
            }
        }
        for i in 0..diag.len().saturating_sub(1) {
            let (a, b) = (&diag[i], &diag[i + 1]);
            let divides = if a.is_zero() { b.is_zero() } else { (b % a).is_zero() };
            if !divides {
                return Err(SnfCheckError::ChainBroken { index: i });
            }
        }
        for (factor, mat) in [("U", &self.u), ("V", &self.v)] {
            let det = mat.determinant().map_err(|e| SnfCheckError::Shape {
                reason: e.to_string(),
            })?;
            if !det.magnitude().is_one() {
                return Err(SnfCheckError::NotUnimodular { factor, det });
            }
        }
        Ok(())
    }
}

/// Smallest-magnitude nonzero entry of the trailing submatrix starting at
/// `(t, t)`, row-major on ties.
fn min_abs_nonzero(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let v = &d[(i, j)];
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if d[(bi, bj)].magnitude() <= v.magnitude() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Computes the Smith normal form `U · A · V = D`.
///
/// Per pivot position: bring the smallest-magnitude entry of the trailing
/// submatrix to the pivot, clear its row and column by division with
/// remainder (any surviving remainder restarts the round with a strictly
/// smaller pivot, so the process terminates), then repair divisibility
/// violations in the remaining submatrix by adding the offending row to the
/// pivot row. Signs are normalized at the end by negating rows.
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let steps = m.min(n);
    for t in 0..steps {
        loop {
            let Some((pi, pj)) = min_abs_nonzero(&d, t) else {
                break; // trailing submatrix is zero; remaining diagonal stays 0
            };
            if pi != t {
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
            }
            if pj != t {
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
            }
            let mut dirty = false;
            for i in t + 1..m {
                if !d[(i, t)].is_zero() {
                    let q = &d[(i, t)] / &d[(t, t)];
                    if !q.is_zero() {
                        d.row_sub(i, t, &q);
                        u.row_sub(i, t, &q);
                    }
                    dirty |= !d[(i, t)].is_zero();
                }
            }
            for j in t + 1..n {
                if !d[(t, j)].is_zero() {
                    let q = &d[(t, j)] / &d[(t, t)];
                    if !q.is_zero() {
                        d.col_sub(j, t, &q);
                        v.col_sub(j, t, &q);
                    }
                    dirty |= !d[(t, j)].is_zero();
                }
            }
            if dirty {
                continue;
            }
            let mut fixed = false;
            'sweep: for i in t + 1..m {
                for j in t + 1..n {
                    if !(&d[(i, j)] % &d[(t, t)]).is_zero() {
                        d.row_add(t, i);
                        u.row_add(t, i);
                        fixed = true;
                        break 'sweep;
                    }
                }
            }
            if !fixed {
                break;
            }
        }
    }
    for t in 0..steps {
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SnfResult { u, d, v }
}

/// Invariant-factor form of a finitely generated abelian group:
/// `ℤ^free_rank ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/dₖ` with `2 ≤ d₁ | d₂ | … | dₖ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgAbelian {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbelian {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self, SlenderError> {
        for (i, d) in torsion.iter().enumerate() {
            if *d < BigInt::from(2) {
                return Err(SlenderError::InvalidFactors {
                    reason: format!("factor {d} at position {i} is below 2"),
                });
            }
            if i + 1 < torsion.len() && !(&torsion[i + 1] % d).is_zero() {
                return Err(SlenderError::InvalidFactors {
                    reason: format!("{d} does not divide {}", torsion[i + 1]),
                });
            }
        }
        Ok(FgAbelian { free_rank, torsion })
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Finitely generated abelian groups are slender exactly when
    /// torsion-free.
    pub fn is_slender(&self) -> bool {
        self.torsion.is_empty()
    }
}

impl fmt::Display for FgAbelian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// See [`FgAbelian::is_slender`].
pub fn is_slender_fg(g: &FgAbelian) -> bool {
    g.is_slender()
}

/// Classifies the abelian group on `generators` generators subject to the
/// rows of `relations` (each row one relation, entries the coefficients).
pub fn classify(relations: &IntMatrix, generators: usize) -> Result<FgAbelian, SlenderError> {
    if relations.cols() != generators {
        return Err(SlenderError::ShapeMismatch {
            reason: format!(
                "relations have {} columns for {generators} generators",
                relations.cols()
            ),
        });
    }
    let snf = smith_normal_form(relations);
    debug_assert!(snf.verify(relations).is_ok());
    let diag = snf.diagonal();
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    let torsion = diag
        .into_iter()
        .filter(|d| *d >= BigInt::from(2))
        .collect();
    FgAbelian::new(generators - rank, torsion)
}

/// A recorded slenderness verdict for a classical infinite group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedVerdict {
    pub name: &'static str,
    pub slender: bool,
    pub note: &'static str,
}

/// Verdicts for the infinite examples outside the computational scope.
/// These are classical facts (Fuchs, *Infinite Abelian Groups*, 1970), not
/// outputs of a decision procedure.
pub fn named_verdict(name: &str) -> Result<NamedVerdict, SlenderError> {
    let verdict = match name {
        "Q" => NamedVerdict {
            name: "Q",
            slender: false,
            note: "nontrivial divisible groups are never slender (Fuchs 1970)",
        },
        "J_p" => NamedVerdict {
            name: "J_p",
            slender: false,
            note: "the p-adic integers are complete, hence not slender (Fuchs 1970)",
        },
        "prod_Z" => NamedVerdict {
            name: "prod_Z",
            slender: false,
            note: "the identity map on the full product sends no basis tail to 0",
        },
        "Z^n" => NamedVerdict {
            name: "Z^n",
            slender: true,
            note: "free of finite rank; finitely generated torsion-free",
        },
        "free_abelian" => NamedVerdict {
            name: "free_abelian",
            slender: true,
            note: "free abelian groups are slender (Specker; Fuchs 1970)",
        },
        _ => {
            return Err(SlenderError::UnknownName {
                name: name.to_string(),
            })
        }
    };
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(rows: Vec<Vec<i64>>) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    /// Independent k×k-minor determinant by Laplace expansion.
    fn laplace_det(rows: &[Vec<BigInt>]) -> BigInt {
        let n = rows.len();
        if n == 0 {
            return BigInt::one();
        }
        if n == 1 {
            return rows[0][0].clone();
        }
        let mut det = BigInt::zero();
        for (j, top) in rows[0].iter().enumerate() {
            if top.is_zero() {
                continue;
            }
            let minor: Vec<Vec<BigInt>> = rows[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = top * laplace_det(&minor);
            if j % 2 == 0 {
                det += term;
            } else {
                det -= term;
            }
        }
        det
    }

    /// gcd of all k×k minors (0 when every minor vanishes).
    fn minor_gcd(a: &IntMatrix, k: usize) -> BigInt {
        fn choices(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in 0..n {
                for mut rest in choices(n, k - 1) {
                    if rest.iter().all(|&r| r > first) {
                        let mut c = vec![first];
                        c.append(&mut rest);
                        out.push(c);
                    }
                }
            }
            out.retain(|c| c.len() == k);
            out
        }
        let mut g = BigInt::zero();
        for rs in choices(a.rows(), k) {
            for cs in choices(a.cols(), k) {
                let sub: Vec<Vec<BigInt>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| a[(r, c)].clone()).collect())
                    .collect();
                g = g.gcd(&laplace_det(&sub));
            }
        }
        g
    }

    /// Expected diagonal from the minor-gcd characterization:
    /// `dᵢ = gᵢ / gᵢ₋₁` where `gᵢ` is the gcd of all i×i minors.
    fn oracle_diagonal(a: &IntMatrix) -> Vec<BigInt> {
        let k = a.rows().min(a.cols());
        let mut prev = BigInt::one();
        let mut out = Vec::new();
        for i in 1..=k {
            let g = minor_gcd(a, i);
            if g.is_zero() {
                out.push(BigInt::zero());
            } else {
                out.push(&g / &prev);
            }
            if !g.is_zero() {
                prev = g;
            }
        }
        out
    }

    #[test]
    fn snf_of_known_matrices() {
        let a = m(vec![vec![2, 4], vec![6, 8]]);
        let snf = smith_normal_form(&a);
        snf.verify(&a).unwrap();
        assert_eq!(snf.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);

        let b = m(vec![vec![4, 0], vec![0, 6]]);
        let snf = smith_normal_form(&b);
        snf.verify(&b).unwrap();
        assert_eq!(snf.diagonal(), vec![BigInt::from(2), BigInt::from(12)]);

        let z = IntMatrix::zero(2, 3);
        let snf = smith_normal_form(&z);
        snf.verify(&z).unwrap();
        assert_eq!(snf.diagonal(), vec![BigInt::zero(), BigInt::zero()]);

        let id = IntMatrix::identity(3);
        let snf = smith_normal_form(&id);
        snf.verify(&id).unwrap();
        assert_eq!(snf.diagonal(), vec![BigInt::one(); 3]);
    }

    #[test]
    fn snf_handles_rectangles_and_negatives() {
        for a in [
            m(vec![vec![-3, 6, 9]]),
            m(vec![vec![0], vec![-5], vec![10]]),
            m(vec![vec![2, 3], vec![5, 7], vec![11, 13]]),
            m(vec![vec![-1, 2, -3], vec![4, -5, 6]]),
        ] {
            let snf = smith_normal_form(&a);
            snf.verify(&a).unwrap();
            assert_eq!(snf.diagonal(), oracle_diagonal(&a), "matrix {a:?}");
        }
    }

    #[test]
    fn snf_matches_minor_gcd_oracle_on_seeded_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let rows = rng.gen_range(1..=3);
            let cols = rng.gen_range(1..=3);
            let a = IntMatrix::from_rows(
                (0..rows)
                    .map(|_| (0..cols).map(|_| rng.gen_range(-20i64..=20)).collect())
                    .collect(),
            )
            .unwrap();
            let snf = smith_normal_form(&a);
            snf.verify(&a).unwrap();
            assert_eq!(snf.diagonal(), oracle_diagonal(&a), "matrix {a:?}");
        }
    }

    #[test]
    fn determinant_matches_laplace() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let n = rng.gen_range(0..=4);
            let rows: Vec<Vec<BigInt>> = (0..n)
                .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect())
                .collect();
            let a = IntMatrix::from_rows(rows.clone()).unwrap();
            assert_eq!(a.determinant().unwrap(), laplace_det(&rows));
        }
        assert!(m(vec![vec![1, 2]]).determinant().is_err());
    }

    #[test]
    fn classify_examples() {
        let z6 = classify(&m(vec![vec![6]]), 1).unwrap();
        assert_eq!(z6.to_string(), "Z/6");
        assert!(!z6.is_slender());

        let mixed = classify(&m(vec![vec![2, 0]]), 2).unwrap();
        assert_eq!(mixed.to_string(), "Z ⊕ Z/2");
        assert!(!mixed.is_slender());

        let free = classify(&IntMatrix::zero(2, 3), 3).unwrap();
        assert_eq!(free.to_string(), "Z^3");
        assert!(free.is_slender());
        assert!(is_slender_fg(&free));

        let trivial = classify(&IntMatrix::identity(2), 2).unwrap();
        assert_eq!(trivial.to_string(), "0");
        assert!(trivial.is_trivial());
        assert!(trivial.is_slender()); // torsion-free, vacuously

        // diag(4, 6) presents ℤ/2 ⊕ ℤ/12 in invariant-factor form.
        let d46 = classify(&m(vec![vec![4, 0], vec![0, 6]]), 2).unwrap();
        assert_eq!(d46.to_string(), "Z/2 ⊕ Z/12");

        assert!(matches!(
            classify(&m(vec![vec![1, 2]]), 3),
            Err(SlenderError::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn classification_is_presentation_invariant() {
        // Row operations on the relations don't change the group.
        let a = m(vec![vec![6, 0], vec![0, 4]]);
        let b = m(vec![vec![6, 4], vec![0, 4]]); // row0 += row1
        assert_eq!(classify(&a, 2).unwrap(), classify(&b, 2).unwrap());
    }

    #[test]
    fn invariant_factors_are_validated() {
        assert!(FgAbelian::new(1, vec![BigInt::from(2), BigInt::from(6)]).is_ok());
        assert!(matches!(
            FgAbelian::new(0, vec![BigInt::from(1)]),
            Err(SlenderError::InvalidFactors { .. })
        ));
        assert!(matches!(
            FgAbelian::new(0, vec![BigInt::from(4), BigInt::from(6)]),
            Err(SlenderError::InvalidFactors { .. })
        ));
    }

    #[test]
    fn display_forms() {
        assert_eq!(FgAbelian::new(0, vec![]).unwrap().to_string(), "0");
        assert_eq!(FgAbelian::new(1, vec![]).unwrap().to_string(), "Z");
        assert_eq!(FgAbelian::new(4, vec![]).unwrap().to_string(), "Z^4");
        assert_eq!(
            FgAbelian::new(2, vec![BigInt::from(2), BigInt::from(6)])
                .unwrap()
                .to_string(),
            "Z^2 ⊕ Z/2 ⊕ Z/6"
        );
    }

    #[test]
    fn named_verdicts() {
        for (name, slender) in [
            ("Q", false),
            ("J_p", false),
            ("prod_Z", false),
            ("Z^n", true),
            ("free_abelian", true),
        ] {
            let v = named_verdict(name).unwrap();
            assert_eq!(v.slender, slender, "{name}");
            assert!(!v.note.is_empty());
        }
        assert!(matches!(
            named_verdict("R"),
            Err(SlenderError::UnknownName { .. })
        ));
    }

    #[test]
    fn verify_catches_corruption() {
        let a = m(vec![vec![2, 4], vec![6, 8]]);
        let mut snf = smith_normal_form(&a);
        snf.verify(&a).unwrap();
        // Scale a row of U: reconstruction and unimodularity both break;
        // reconstruction is reported first.
        let row0 = snf.u[(0, 0)].clone();
        snf.u.set(0, 0, row0 * 2);
        assert!(snf.verify(&a).is_err());
    }

    #[test]
    fn doc_round_trip_and_range() {
        let a = m(vec![vec![1, -2], vec![3, 4]]);
        let doc = a.to_doc().unwrap();
        assert_eq!(IntMatrix::from_doc(doc).unwrap(), a);

        let mut big = IntMatrix::zero(1, 1);
        big.set(0, 0, BigInt::from(i128::MAX) * 2);
        assert!(matches!(
            big.to_doc(),
            Err(SlenderError::EntryOutOfRange { .. })
        ));
        assert!(IntMatrix::from_doc(MatrixDoc {
            rows: 2,
            cols: 2,
            entries: vec![1, 2, 3],
        })
        .is_err());
    }

    #[test]
    fn snf_survives_adversarial_small_cases() {
        // Single entries, single rows/columns, rank deficiency, duplicates.
        for a in [
            m(vec![vec![0]]),
            m(vec![vec![-7]]),
            m(vec![vec![3, 3], vec![3, 3]]),
            m(vec![vec![2, 4, 6], vec![4, 8, 12]]),
            m(vec![vec![0, 5], vec![7, 0]]),
        ] {
            let snf = smith_normal_form(&a);
            snf.verify(&a).unwrap();
            assert_eq!(snf.diagonal(), oracle_diagonal(&a), "matrix {a:?}");
        }
    }
}
