//! Finite generalized groups represented by full multiplication tables.
//!
//! Elements are dense indices `0..order`; display labels are kept alongside
//! the table and never participate in the algebra. [`FiniteGenGroup::new`]
//! runs the complete axiom scan — associativity, unique local identities,
//! inverses — and refuses tables that fail it, so a constructed value is
//! always a genuine generalized group and downstream code may assume the
//! axioms without rechecking. The scan is cubic in the order, which is the
//! point: at desk scale an exhaustive check beats a clever one.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Outcome of the exhaustive axiom scan over a multiplication table.
///
/// The scan never stops at the first problem: it records the associativity
/// verdict (with one witness triple), every element whose local identity is
/// missing or ambiguous, and every element that has a local identity but no
/// inverse against it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub associative: bool,
    /// First triple `(x, y, z)` with `(xy)z ≠ x(yz)`, if any.
    pub associativity_witness: Option<(usize, usize, usize)>,
    pub local_identity_failures: Vec<LocalIdentityFailure>,
    /// Elements with a unique local identity `e` but no `y` with `xy = yx = e`.
    pub inverse_failures: Vec<usize>,
}

/// An element whose set of local identity candidates is not a singleton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalIdentityFailure {
    pub element: usize,
    /// Every `z` with `z·x = x·z = x`; empty or of length ≥ 2 here.
    pub candidates: Vec<usize>,
}

impl AxiomReport {
    /// True exactly when the table defines a generalized group.
    pub fn verdict(&self) -> bool {
        self.associative
            && self.local_identity_failures.is_empty()
            && self.inverse_failures.is_empty()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.associativity_witness {
            None => writeln!(f, "associative: yes")?,
            Some((x, y, z)) => writeln!(f, "associative: no (witness ({x}, {y}, {z}))")?,
        }
        if self.local_identity_failures.is_empty() {
            writeln!(f, "local identity failures: none")?;
        } else {
            writeln!(
                f,
                "local identity failures: {}",
                self.local_identity_failures.len()
            )?;
            for fail in &self.local_identity_failures {
                writeln!(
                    f,
                    "  element {}: candidates {:?}",
                    fail.element, fail.candidates
                )?;
            }
        }
        if self.inverse_failures.is_empty() {
            writeln!(f, "inverse failures: none")?;
        } else {
            writeln!(f, "inverse failures: {:?}", self.inverse_failures)?;
        }
        write!(f, "verdict: {}", if self.verdict() { "pass" } else { "fail" })
    }
}

/// Why a table was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableError {
    /// Empty, ragged, wrongly sized, or containing an out-of-range entry.
    Malformed { reason: String },
    NotAssociative {
        witness: (usize, usize, usize),
        report: Box<AxiomReport>,
    },
    NoUniqueLocalIdentity {
        element: usize,
        candidates: Vec<usize>,
        report: Box<AxiomReport>,
    },
    NoInverse { element: usize, report: Box<AxiomReport> },
    /// A subset advertised as closed was not. Carries the offending product.
    ClosureViolation {
        left: usize,
        right: usize,
        product: usize,
    },
    /// The table is a generalized group but not a group (≠ 1 idempotent).
    NotAGroup { idempotents: Vec<usize> },
}

impl TableError {
    /// The full scan report, when the error came out of one.
    pub fn report(&self) -> Option<&AxiomReport> {
        match self {
            TableError::NotAssociative { report, .. }
            | TableError::NoUniqueLocalIdentity { report, .. }
            | TableError::NoInverse { report, .. } => Some(report),
            _ => None,
        }
    }
}

impl fmt::Display for TableError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableError::Malformed { reason } => write!(f, "malformed table: {reason}"),
            TableError::NotAssociative { witness: (x, y, z), .. } => {
                write!(f, "not associative: ({x}·{y})·{z} ≠ {x}·({y}·{z})")
            }
            TableError::NoUniqueLocalIdentity { element, candidates, .. } => write!(
                f,
                "element {element} has no unique local identity (candidates {candidates:?})"
            ),
            TableError::NoInverse { element, .. } => {
                write!(f, "element {element} has no inverse")
            }
            TableError::ClosureViolation { left, right, product } => write!(
                f,
                "subset not closed: {left}·{right} = {product} falls outside"
            ),
            TableError::NotAGroup { idempotents } => write!(
                f,
                "not a group: {} idempotents {idempotents:?}",
                idempotents.len()
            ),
        }
    }
}

impl std::error::Error for TableError {}

/// Validates shape and flattens: square, nonempty, entries in range.
fn check_shape(table: &[Vec<usize>]) -> Result<(usize, Vec<usize>), TableError> {
    let n = table.len();
    if n == 0 {
        return Err(TableError::Malformed {
            reason: "table is empty".into(),
        });
    }
    let mut flat = Vec::with_capacity(n * n);
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(TableError::Malformed {
                reason: format!("row {i} has length {} in a table of size {n}", row.len()),
            });
        }
        for (j, &entry) in row.iter().enumerate() {
            if entry >= n {
                return Err(TableError::Malformed {
                    reason: format!("entry at ({i}, {j}) is {entry}, out of range 0..{n}"),
                });
            }
            flat.push(entry);
        }
    }
    Ok((n, flat))
}

fn scan(n: usize, flat: &[usize]) -> AxiomReport {
    let mul = |x: usize, y: usize| flat[x * n + y];

    let mut associativity_witness = None;
    'assoc: for x in 0..n {
        for y in 0..n {
            let xy = mul(x, y);
            for z in 0..n {
                if mul(xy, z) != mul(x, mul(y, z)) {
                    associativity_witness = Some((x, y, z));
                    break 'assoc;
                }
            }
        }
    }

    let mut local_identity_failures = Vec::new();
    let mut local_ids = vec![None; n];
    for x in 0..n {
        let candidates: Vec<usize> = (0..n)
            .filter(|&z| mul(z, x) == x && mul(x, z) == x)
            .collect();
        if candidates.len() == 1 {
            local_ids[x] = Some(candidates[0]);
        } else {
            local_identity_failures.push(LocalIdentityFailure { element: x, candidates });
        }
    }

    let mut inverse_failures = Vec::new();
    for x in 0..n {
        if let Some(e) = local_ids[x] {
            if !(0..n).any(|y| mul(x, y) == e && mul(y, x) == e) {
                inverse_failures.push(x);
            }
        }
    }

    AxiomReport {
        associative: associativity_witness.is_none(),
        associativity_witness,
        local_identity_failures,
        inverse_failures,
    }
}

/// Runs the full axiom scan on a raw table without constructing anything.
///
/// Only shape problems are errors; axiom failures are data in the report.
pub fn verify_axioms(table: &[Vec<usize>]) -> Result<AxiomReport, TableError> {
    let (n, flat) = check_shape(table)?;
    Ok(scan(n, &flat))
}

/// A finite generalized group in a validated state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGenGroup {
    order: usize,
    names: Vec<String>,
    table: Vec<usize>, // row-major, length order²
    local_ids: Vec<usize>,
    inverses: Vec<usize>,
}

impl FiniteGenGroup {
    /// Builds from labels and a full table, running the axiom scan.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, TableError> {
        let (n, flat) = check_shape(&table)?;
        if names.len() != n {
            return Err(TableError::Malformed {
                reason: format!("{} names for a table of size {n}", names.len()),
            });
        }
        let report = scan(n, &flat);
        if let Some(witness) = report.associativity_witness {
            return Err(TableError::NotAssociative {
                witness,
                report: Box::new(report),
            });
        }
        if let Some(fail) = report.local_identity_failures.first() {
            return Err(TableError::NoUniqueLocalIdentity {
                element: fail.element,
                candidates: fail.candidates.clone(),
                report: Box::new(report.clone()),
            });
        }
        if let Some(&element) = report.inverse_failures.first() {
            return Err(TableError::NoInverse {
                element,
                report: Box::new(report),
            });
        }
        Ok(Self::assemble(names, n, flat))
    }

    /// Assembles caches from a table already known to satisfy the axioms.
    /// Callers are internal constructions whose correctness is structural
    /// (componentwise products); everything user-facing goes through `new`.
    fn assemble(names: Vec<String>, n: usize, flat: Vec<usize>) -> Self {
        let mul = |x: usize, y: usize| flat[x * n + y];
        let local_ids: Vec<usize> = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&z| mul(z, x) == x && mul(x, z) == x)
                    .expect("validated table has local identities")
            })
            .collect();
        let inverses: Vec<usize> = (0..n)
            .map(|x| {
                let e = local_ids[x];
                (0..n)
                    .find(|&y| mul(x, y) == e && mul(y, x) == e)
                    .expect("validated table has inverses")
            })
            .collect();
        FiniteGenGroup {
            order: n,
            names,
            table: flat,
            local_ids,
            inverses,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y]
    }

    /// The unique `e` with `e·x = x·e = x`.
    #[inline]
    pub fn local_identity(&self, x: usize) -> usize {
        self.local_ids[x]
    }

    /// The unique-in-its-component `y` with `x·y = y·x = e(x)`.
    #[inline]
    pub fn inverse(&self, x: usize) -> usize {
        self.inverses[x]
    }

    /// All `x` with `x·x = x`, ascending. Always nonempty, and equal to the
    /// image of [`local_identity`](Self::local_identity).
    pub fn idempotents(&self) -> Vec<usize> {
        self.elements().filter(|&x| self.mul(x, x) == x).collect()
    }

    /// Normal means `e(x·y) = e(x)·e(y)` for all pairs.
    pub fn is_normal(&self) -> bool {
        self.elements().all(|x| {
            self.elements().all(|y| {
                self.local_ids[self.mul(x, y)] == self.mul(self.local_ids[x], self.local_ids[y])
            })
        })
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order)
            .all(|x| (x + 1..self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// A generalized group is a group exactly when it has one idempotent.
    pub fn is_group(&self) -> bool {
        self.idempotents().len() == 1
    }

    /// The group component of `a`: all elements sharing `e(a)`, as a
    /// standalone group with `e(a)`'s label preserved.
    ///
    /// Closure of the component is a theorem, but the subtable is re-checked
    /// on extraction; a violation means the receiver is corrupt.
    pub fn group_component(&self, a: usize) -> Result<FiniteGroup, TableError> {
        let e = self.local_ids[a];
        let members: Vec<usize> = self.elements().filter(|&x| self.local_ids[x] == e).collect();
        let sub = self.extract(&members)?;
        FiniteGroup::from_generalized(sub)
    }

    /// Componentwise product. Element `(x, y)` gets index `x·other.order + y`
    /// and label `"(a,b)"`. Local identities and inverses are componentwise,
    /// so the result is again a generalized group; no rescan is performed
    /// (orders multiply, and the cubic scan would dominate everything else).
    pub fn direct_product(&self, other: &FiniteGenGroup) -> FiniteGenGroup {
        let n = self.order * other.order;
        let idx = |x: usize, y: usize| x * other.order + y;
        let mut names = Vec::with_capacity(n);
        let mut flat = vec![0usize; n * n];
        for x in 0..self.order {
            for y in 0..other.order {
                names.push(format!("({},{})", self.names[x], other.names[y]));
            }
        }
        for a in 0..self.order {
            for b in 0..other.order {
                for c in 0..self.order {
                    for d in 0..other.order {
                        flat[idx(a, b) * n + idx(c, d)] = idx(self.mul(a, c), other.mul(b, d));
                    }
                }
            }
        }
        let local_ids = (0..n)
            .map(|p| idx(self.local_ids[p / other.order], other.local_ids[p % other.order]))
            .collect();
        let inverses = (0..n)
            .map(|p| idx(self.inverses[p / other.order], other.inverses[p % other.order]))
            .collect();
        FiniteGenGroup {
            order: n,
            names,
            table: flat,
            local_ids,
            inverses,
        }
    }

    /// Is `subset` closed under multiplication, inversion, and local
    /// identities? Empty sets and out-of-range indices are not subgroups.
    pub fn is_generalized_subgroup(&self, subset: &[usize]) -> bool {
        if subset.is_empty() || subset.iter().any(|&x| x >= self.order) {
            return false;
        }
        let mut member = vec![false; self.order];
        for &x in subset {
            member[x] = true;
        }
        subset.iter().all(|&x| {
            member[self.local_ids[x]]
                && member[self.inverses[x]]
                && subset.iter().all(|&y| member[self.mul(x, y)])
        })
    }

    /// Smallest generalized subgroup containing `seeds`, as a sorted list.
    /// Closes under products, inverses, and local identities.
    pub fn generated_subgroup(&self, seeds: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order];
        let mut queue: Vec<usize> = Vec::new();
        for &s in seeds {
            assert!(s < self.order, "seed {s} out of range 0..{}", self.order);
            if !member[s] {
                member[s] = true;
                queue.push(s);
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            let push = |v: usize, member: &mut Vec<bool>, queue: &mut Vec<usize>| {
                if !member[v] {
                    member[v] = true;
                    queue.push(v);
                }
            };
            push(self.local_ids[x], &mut member, &mut queue);
            push(self.inverses[x], &mut member, &mut queue);
            for i in 0..queue.len() {
                let y = queue[i];
                push(self.mul(x, y), &mut member, &mut queue);
                push(self.mul(y, x), &mut member, &mut queue);
            }
        }
        let mut out: Vec<usize> = queue;
        out.sort_unstable();
        out
    }

    /// Extracts `subset` as a standalone generalized group (labels kept).
    /// Fails with `ClosureViolation` if the subset is not closed.
    pub fn sub_generalized_group(&self, subset: &[usize]) -> Result<FiniteGenGroup, TableError> {
        let mut members = subset.to_vec();
        members.sort_unstable();
        members.dedup();
        if members.iter().any(|&x| x >= self.order) {
            return Err(TableError::Malformed {
                reason: "subset index out of range".into(),
            });
        }
        self.extract(&members)
    }

    /// Builds the subtable over `members` (sorted, deduped, in range) and
    /// revalidates it through `new`.
    fn extract(&self, members: &[usize]) -> Result<FiniteGenGroup, TableError> {
        if members.is_empty() {
            return Err(TableError::Malformed {
                reason: "subset is empty".into(),
            });
        }
        let mut position = vec![usize::MAX; self.order];
        for (k, &x) in members.iter().enumerate() {
            position[x] = k;
        }
        let mut table = Vec::with_capacity(members.len());
        for &x in members {
            let mut row = Vec::with_capacity(members.len());
            for &y in members {
                let p = self.mul(x, y);
                if position[p] == usize::MAX {
                    return Err(TableError::ClosureViolation {
                        left: x,
                        right: y,
                        product: p,
                    });
                }
                row.push(position[p]);
            }
            table.push(row);
        }
        let names = members.iter().map(|&x| self.names[x].clone()).collect();
        FiniteGenGroup::new(names, table)
    }

    pub fn to_doc(&self) -> CayleyDoc {
        let table = (0..self.order)
            .map(|x| self.table[x * self.order..(x + 1) * self.order].to_vec())
            .collect();
        CayleyDoc {
            names: self.names.clone(),
            table,
        }
    }

    pub fn from_doc(doc: CayleyDoc) -> Result<FiniteGenGroup, TableError> {
        FiniteGenGroup::new(doc.names, doc.table)
    }
}

/// JSON document form of a multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyDoc {
    pub names: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

/// A finite group: a generalized group with exactly one idempotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    gg: FiniteGenGroup,
    identity: usize,
}

impl FiniteGroup {
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, TableError> {
        Self::from_generalized(FiniteGenGroup::new(names, table)?)
    }

    /// Refines a generalized group into a group, or reports its idempotents.
    pub fn from_generalized(gg: FiniteGenGroup) -> Result<Self, TableError> {
        let idempotents = gg.idempotents();
        match idempotents[..] {
            [identity] => Ok(FiniteGroup { gg, identity }),
            _ => Err(TableError::NotAGroup { idempotents }),
        }
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn as_generalized(&self) -> &FiniteGenGroup {
        &self.gg
    }

    pub fn order(&self) -> usize {
        self.gg.order
    }

    pub fn name(&self, x: usize) -> &str {
        self.gg.name(x)
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.gg.mul(x, y)
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.gg.inverse(x)
    }

    pub fn is_abelian(&self) -> bool {
        self.gg.is_abelian()
    }

    /// `x·x·…·x` (`k` factors); `k = 0` gives the identity.
    pub fn pow(&self, x: usize, k: u64) -> usize {
        let mut acc = self.identity;
        for _ in 0..k {
            acc = self.gg.mul(acc, x);
        }
        acc
    }

    /// Least `t ≥ 1` with `x^t` the identity.
    pub fn element_order(&self, x: usize) -> u64 {
        let mut acc = x;
        let mut t = 1;
        while acc != self.identity {
            acc = self.gg.mul(acc, x);
            t += 1;
        }
        t
    }
}
