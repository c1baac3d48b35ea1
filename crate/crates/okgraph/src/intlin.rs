//! Exact linear algebra over the integers.
//!
//! Everything downstream — K-groups, unit classes, realization witnesses —
//! reduces to questions about integer matrices: what are the invariant
//! factors, what is the cokernel, does a vector lie in the image, and if so
//! through which preimage. This module answers those questions exactly with
//! arbitrary-precision arithmetic.
//!
//! The workhorse is [`smith_normal_form`]: for any `A` it produces
//! unimodular `U`, `V` and a nonnegative diagonal `D` with `U·A·V = D` and
//! `d_i | d_{i+1}` along the diagonal. Because `U` and `V` are carried as
//! explicit witnesses (not just the diagonal), cosets in the cokernel get
//! canonical coordinates and membership in the image comes with a verified
//! preimage.
//!
//! # Conventions
//!
//! * Matrices are dense, row-major, with [`num_bigint::BigInt`] entries.
//!   Zero-dimensional shapes (`0×n`, `n×0`, `0×0`) are legal and behave as
//!   the corresponding trivial maps.
//! * A matrix `A` with `r` rows and `c` columns is the map `ℤ^c → ℤ^r`,
//!   `x ↦ A·x`.
//! * Finitely generated abelian groups are kept in invariant-factor form:
//!   a free rank plus a divisibility chain of torsion factors, no factor 1.
//! * Sign normalization of the Smith diagonal is pushed into `V`, so the
//!   coset coordinates `U·x` of small nonnegative vectors stay "positive"
//!   where possible (e.g. the class of `1` in `coker([-3]) = ℤ/3` is `1`,
//!   not `2`).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Errors reported by the fallible operations of this module.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum IntLinError {
    /// A vector or matrix had a different dimension than the operation
    /// requires.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch {
        /// The dimension the operation needs.
        expected: usize,
        /// The dimension that was supplied.
        got: usize,
    },
    /// A textual group expression could not be parsed.
    #[error("cannot parse abelian group: {0}")]
    GroupParse(String),
}

// ---------------------------------------------------------------------------
// Integer matrices
// ---------------------------------------------------------------------------

/// A dense matrix over `ℤ` with arbitrary-precision entries.
///
/// Rows and columns may independently be zero; a `0×c` or `r×0` matrix is
/// the unique map from/to the trivial group of the appropriate rank.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    /// The `rows × cols` zero matrix.
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    /// The `n × n` identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from rows of `i64` entries. Panics if the rows are
    /// ragged. `cols` must be passed explicitly so that `0×c` shapes are
    /// representable.
    pub fn from_i64(rows: usize, cols: usize, entries: &[&[i64]]) -> Self {
        assert_eq!(entries.len(), rows, "row count mismatch");
        let mut m = IntMatrix::zero(rows, cols);
        for (i, row) in entries.iter().enumerate() {
            assert_eq!(row.len(), cols, "column count mismatch in row {i}");
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(*x));
            }
        }
        m
    }

    /// Builds a matrix from owned `BigInt` rows. Panics if ragged.
    pub fn from_rows(rows: usize, cols: usize, entries: Vec<Vec<BigInt>>) -> Self {
        assert_eq!(entries.len(), rows, "row count mismatch");
        let mut m = IntMatrix::zero(rows, cols);
        for (i, row) in entries.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "column count mismatch in row {i}");
            for (j, x) in row.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }

    /// Overwrites the entry at `(i, j)`.
    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        self.data[i * self.cols + j] = value;
    }

    /// Matrix product `self · rhs`. Panics on inner-dimension mismatch.
    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let add = a * rhs.get(k, j);
                    let cur = out.get(i, j) + add;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// Matrix–vector product `self · x`. Panics on dimension mismatch.
    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, x.len(), "vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for j in 0..self.cols {
                    acc += self.get(i, j) * &x[j];
                }
                acc
            })
            .collect()
    }

    /// The transpose.
    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// A copy keeping only the first `k` columns.
    pub fn take_columns(&self, k: usize) -> IntMatrix {
        assert!(k <= self.cols, "cannot keep more columns than exist");
        let mut out = IntMatrix::zero(self.rows, k);
        for i in 0..self.rows {
            for j in 0..k {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        out
    }

    /// Horizontal concatenation `[self | rhs]`. Panics if row counts differ.
    pub fn hstack(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, rhs.rows, "row count mismatch");
        let mut out = IntMatrix::zero(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                out.set(i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        out
    }

    /// Column `j` as an owned vector.
    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// The entries as row-major vectors (for serialization).
    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    /// True if every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Exact determinant of a square matrix via fraction-free (Bareiss)
    /// elimination. Panics if the matrix is not square. The determinant of
    /// the empty `0×0` matrix is `1`.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                // Find a pivot row below and swap it up.
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            let a = m.get(k, j).clone();
                            let b = m.get(i, j).clone();
                            m.set(k, j, b);
                            m.set(i, j, a);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j);
                    // Bareiss guarantees exact divisibility here.
                    m.set(i, j, num / &prev);
                }
                m.set(i, k, BigInt::zero());
            }
            prev = m.get(k, k).clone();
        }
        let d = m.get(n - 1, n - 1).clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// True if the matrix is square with determinant `±1`.
    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs().is_one()
    }

    // -- private row/column operations used by the Smith reduction --------

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// `row_j += q · row_i`
    fn add_row_multiple(&mut self, j: usize, i: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for k in 0..self.cols {
            let add = q * self.get(i, k);
            let cur = self.get(j, k) + add;
            self.set(j, k, cur);
        }
    }

    /// `col_j += q · col_i`
    fn add_col_multiple(&mut self, j: usize, i: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let add = q * self.get(r, i);
            let cur = self.get(r, j) + add;
            self.set(r, j, cur);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            let v = -self.get(r, j).clone();
            self.set(r, j, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for k in 0..self.cols {
            let v = -self.get(i, k).clone();
            self.set(i, k, v);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

/// The result of [`smith_normal_form`]: unimodular `u`, `v` and diagonal `d`
/// with `u · a · v = d`, every diagonal entry nonnegative, and each nonzero
/// diagonal entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    /// Unimodular row transform (`rows × rows`).
    pub u: IntMatrix,
    /// The diagonal form, same shape as the input.
    pub d: IntMatrix,
    /// Unimodular column transform (`cols × cols`).
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// The diagonal entries `d_0, d_1, …` up to `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// The rank of the input matrix: the number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }

    /// Checks every promised property against the original matrix: the
    /// product identity `u·a·v = d`, unimodularity of `u` and `v`,
    /// diagonality and nonnegativity of `d`, and the divisibility chain.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        if self.u.rows() != a.rows() || self.v.rows() != a.cols() {
            return false;
        }
        if self.u.mul(a).mul(&self.v) != self.d {
            return false;
        }
        if !self.u.is_unimodular() || !self.v.is_unimodular() {
            return false;
        }
        for i in 0..self.d.rows() {
            for j in 0..self.d.cols() {
                if i != j && !self.d.get(i, j).is_zero() {
                    return false;
                }
            }
        }
        let diag = self.diagonal();
        for x in &diag {
            if x.is_negative() {
                return false;
            }
        }
        for w in diag.windows(2) {
            if !w[0].is_zero() && !w[1].is_zero() && !w[1].is_multiple_of(&w[0]) {
                return false;
            }
            if w[0].is_zero() && !w[1].is_zero() {
                return false; // zeros must come last
            }
        }
        true
    }
}

/// Smith normal form with inverse witnesses, kept private: the public
/// [`SmithDecomposition`] carries `u`, `d`, `v`; downstream operations also
/// need `u⁻¹` (for coset representatives) and occasionally `v⁻¹`, which are
/// cheapest to accumulate during the reduction itself.
#[derive(Clone, Debug)]
pub(crate) struct SmithExt {
    pub(crate) u: IntMatrix,
    pub(crate) d: IntMatrix,
    pub(crate) v: IntMatrix,
    pub(crate) u_inv: IntMatrix,
    #[allow(dead_code)]
    pub(crate) v_inv: IntMatrix,
    pub(crate) rank: usize,
}

impl SmithExt {
    pub(crate) fn compute(a: &IntMatrix) -> SmithExt {
        let rows = a.rows();
        let cols = a.cols();
        let mut d = a.clone();
        let mut u = IntMatrix::identity(rows);
        let mut u_inv = IntMatrix::identity(rows);
        let mut v = IntMatrix::identity(cols);
        let mut v_inv = IntMatrix::identity(cols);

        // Elementary operations, mirrored into the witnesses so that
        // u·a·v = d, u·u_inv = I and v·v_inv = I stay true throughout.
        macro_rules! row_swap {
            ($i:expr, $j:expr) => {
                d.swap_rows($i, $j);
                u.swap_rows($i, $j);
                u_inv.swap_cols($i, $j);
            };
        }
        macro_rules! col_swap {
            ($i:expr, $j:expr) => {
                d.swap_cols($i, $j);
                v.swap_cols($i, $j);
                v_inv.swap_rows($i, $j);
            };
        }
        macro_rules! row_add {
            // row_j += q * row_i
            ($j:expr, $i:expr, $q:expr) => {
                let q: BigInt = $q;
                d.add_row_multiple($j, $i, &q);
                u.add_row_multiple($j, $i, &q);
                u_inv.add_col_multiple($i, $j, &(-q));
            };
        }
        macro_rules! col_add {
            // col_j += q * col_i
            ($j:expr, $i:expr, $q:expr) => {
                let q: BigInt = $q;
                d.add_col_multiple($j, $i, &q);
                v.add_col_multiple($j, $i, &q);
                v_inv.add_row_multiple($i, $j, &(-q));
            };
        }

        let bound = rows.min(cols);
        let mut t = 0;
        while t < bound {
            // Deterministic pivot choice: the nonzero entry of the trailing
            // submatrix with the smallest absolute value; ties broken by
            // position. Small pivots keep intermediate entries small.
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if d.get(i, j).is_zero() {
                        continue;
                    }
                    match pivot {
                        None => pivot = Some((i, j)),
                        Some((pi, pj)) => {
                            if d.get(i, j).abs() < d.get(pi, pj).abs() {
                                pivot = Some((i, j));
                            }
                        }
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                break; // trailing submatrix is zero: done
            };
            row_swap!(t, pi);
            col_swap!(t, pj);

            // Clear row and column t. Truncated division leaves remainders
            // strictly smaller in absolute value than the pivot, so
            // re-selecting the minimal pivot makes progress until the
            // cross is clean.
            loop {
                let mut clean = true;
                for i in t + 1..rows {
                    if !d.get(i, t).is_zero() {
                        let q = -(d.get(i, t) / d.get(t, t));
                        row_add!(i, t, q);
                        if !d.get(i, t).is_zero() {
                            clean = false;
                        }
                    }
                }
                for j in t + 1..cols {
                    if !d.get(t, j).is_zero() {
                        let q = -(d.get(t, j) / d.get(t, t));
                        col_add!(j, t, q);
                        if !d.get(t, j).is_zero() {
                            clean = false;
                        }
                    }
                }
                if clean {
                    // The cross is zero. Enforce the divisibility chain: if
                    // some trailing entry is not divisible by the pivot,
                    // fold its row into row t and keep reducing.
                    let mut offender = None;
                    'search: for i in t + 1..rows {
                        for j in t + 1..cols {
                            if !d.get(i, j).is_multiple_of(d.get(t, t)) {
                                offender = Some(i);
                                break 'search;
                            }
                        }
                    }
                    match offender {
                        Some(i) => {
                            row_add!(t, i, BigInt::one());
                        }
                        None => break,
                    }
                }
                // Move the smallest entry of the cross (or the freshly
                // dirtied row) back to the pivot position.
                let mut best: Option<(usize, usize)> = Some((t, t));
                for i in t..rows {
                    for j in t..cols {
                        if (i == t || j == t) && !d.get(i, j).is_zero() {
                            let cur = best.unwrap();
                            if d.get(i, j).abs() < d.get(cur.0, cur.1).abs() {
                                best = Some((i, j));
                            }
                        }
                    }
                }
                let (bi, bj) = best.unwrap();
                row_swap!(t, bi);
                col_swap!(t, bj);
            }
            t += 1;
        }
        let rank = t;

        // Sign normalization via V: negating a column of D is matched by
        // negating the same column of V, leaving U untouched. Keeping U free
        // of sign flips gives coset coordinates their natural orientation.
        for i in 0..bound {
            if d.get(i, i).is_negative() {
                d.negate_col(i);
                v.negate_col(i);
                v_inv.negate_row(i);
            }
        }

        SmithExt {
            u,
            d,
            v,
            u_inv,
            v_inv,
            rank,
        }
    }

    fn torsion_rows(&self) -> Vec<usize> {
        (0..self.rank)
            .filter(|&i| self.d.get(i, i).abs() > BigInt::one())
            .collect()
    }
}

/// Computes the Smith normal form `u·a·v = d` of an arbitrary integer
/// matrix.
///
/// `d` is diagonal with nonnegative entries, each nonzero entry divides the
/// next, zeros come last, and `u`, `v` are unimodular. Zero-dimensional
/// inputs are handled (the witnesses are then empty identities).
///
/// ```
/// use okgraph::intlin::{smith_normal_form, IntMatrix};
/// let a = IntMatrix::from_i64(2, 2, &[&[2, 4], &[6, 8]]);
/// let s = smith_normal_form(&a);
/// assert!(s.verify(&a));
/// assert_eq!(s.diagonal(), vec![2.into(), 4.into()]);
/// ```
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let ext = SmithExt::compute(a);
    SmithDecomposition {
        u: ext.u,
        d: ext.d,
        v: ext.v,
    }
}

// ---------------------------------------------------------------------------
// Finitely generated abelian groups
// ---------------------------------------------------------------------------

/// A finitely generated abelian group in invariant-factor form:
/// `ℤ^free_rank ⊕ ℤ/d_1 ⊕ … ⊕ ℤ/d_t` with `2 ≤ d_1 | d_2 | … | d_t`.
///
/// The textual form follows the same shape: `"Z^2 + Z/4 + Z/8"`, with `"Z"`
/// for rank one and `"0"` for the trivial group. Parsing accepts arbitrary
/// cyclic factors in any order and canonicalizes them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl AbelianGroup {
    /// The trivial group.
    pub fn trivial() -> Self {
        AbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    /// Free abelian group of the given rank.
    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Builds a group from a free rank and an arbitrary list of cyclic
    /// orders (`0` meaning a free `ℤ` factor), canonicalizing into a
    /// divisibility chain. Factors `1` are dropped.
    ///
    /// ```
    /// use okgraph::intlin::AbelianGroup;
    /// let g = AbelianGroup::from_cyclic_factors(0, &[2.into(), 3.into()]);
    /// assert_eq!(g.to_string(), "Z/6");
    /// ```
    pub fn from_cyclic_factors(free_rank: usize, orders: &[BigInt]) -> Self {
        let mut free = free_rank;
        let mut tors: Vec<BigInt> = Vec::new();
        for d in orders {
            let d = d.abs();
            if d.is_zero() {
                free += 1;
            } else if !d.is_one() {
                tors.push(d);
            }
        }
        // Repeatedly replace pairs by (gcd, lcm) until each factor divides
        // the next; this is the standard invariant-factor refactoring.
        let mut changed = true;
        while changed {
            changed = false;
            tors.sort();
            for i in 0..tors.len() {
                for j in i + 1..tors.len() {
                    if !tors[j].is_multiple_of(&tors[i]) {
                        let g = tors[i].gcd(&tors[j]);
                        let l = tors[i].lcm(&tors[j]);
                        tors[i] = g;
                        tors[j] = l;
                        changed = true;
                    }
                }
            }
            tors.retain(|d| !d.is_one());
        }
        tors.sort();
        AbelianGroup {
            free_rank: free,
            torsion: tors,
        }
    }

    /// The rank of the free part.
    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// The torsion invariant factors, ascending, each dividing the next.
    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// True if the group is `0`.
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of coordinates an element of this group carries.
    pub fn coord_len(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// The order of the group, or `None` if it is infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            None
        } else {
            Some(self.torsion.iter().product())
        }
    }

    /// Direct sum with `k` extra free `ℤ` summands.
    pub fn with_extra_free_rank(&self, k: usize) -> AbelianGroup {
        AbelianGroup {
            free_rank: self.free_rank + k,
            torsion: self.torsion.clone(),
        }
    }

    /// An element from raw coordinates, reducing each torsion coordinate
    /// into `[0, d_i)`. Errors if the coordinate counts do not match.
    pub fn element(&self, free: Vec<BigInt>, torsion: Vec<BigInt>) -> Result<GroupElement, IntLinError> {
        if free.len() != self.free_rank {
            return Err(IntLinError::DimensionMismatch {
                expected: self.free_rank,
                got: free.len(),
            });
        }
        if torsion.len() != self.torsion.len() {
            return Err(IntLinError::DimensionMismatch {
                expected: self.torsion.len(),
                got: torsion.len(),
            });
        }
        let torsion = torsion
            .into_iter()
            .zip(&self.torsion)
            .map(|(x, d)| x.mod_floor(d))
            .collect();
        Ok(GroupElement { free, torsion })
    }

    /// The zero element.
    pub fn zero_element(&self) -> GroupElement {
        GroupElement {
            free: vec![BigInt::zero(); self.free_rank],
            torsion: vec![BigInt::zero(); self.torsion.len()],
        }
    }

    /// An element from one flat coordinate list (free coordinates first,
    /// then torsion coordinates).
    pub fn element_from_flat(&self, coords: &[BigInt]) -> Result<GroupElement, IntLinError> {
        if coords.len() != self.coord_len() {
            return Err(IntLinError::DimensionMismatch {
                expected: self.coord_len(),
                got: coords.len(),
            });
        }
        self.element(
            coords[..self.free_rank].to_vec(),
            coords[self.free_rank..].to_vec(),
        )
    }
}

impl fmt::Display for AbelianGroup {
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
        write!(f, "{}", parts.join(" + "))
    }
}

impl FromStr for AbelianGroup {
    type Err = IntLinError;

    /// Parses expressions like `"Z^2 + Z/4 + Z/2"`, `"Z"`, `"Z/6"`, `"0"`.
    /// Whitespace around `+` is optional; factors may appear in any order
    /// and are canonicalized.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(IntLinError::GroupParse("empty expression".into()));
        }
        if s == "0" {
            return Ok(AbelianGroup::trivial());
        }
        let mut free = 0usize;
        let mut orders = Vec::new();
        for raw in s.split('+') {
            let tok = raw.trim();
            if tok == "Z" {
                free += 1;
            } else if let Some(exp) = tok.strip_prefix("Z^") {
                let r: usize = exp
                    .trim()
                    .parse()
                    .map_err(|_| IntLinError::GroupParse(format!("bad exponent in `{tok}`")))?;
                free += r;
            } else if let Some(den) = tok.strip_prefix("Z/") {
                let d = BigInt::from_str(den.trim())
                    .map_err(|_| IntLinError::GroupParse(format!("bad modulus in `{tok}`")))?;
                if d <= BigInt::one() {
                    return Err(IntLinError::GroupParse(format!(
                        "modulus must be at least 2 in `{tok}`"
                    )));
                }
                orders.push(d);
            } else {
                return Err(IntLinError::GroupParse(format!("unrecognized factor `{tok}`")));
            }
        }
        Ok(AbelianGroup::from_cyclic_factors(free, &orders))
    }
}

/// Coordinates of an element relative to an [`AbelianGroup`] presentation:
/// one integer per free `ℤ` summand, and one reduced residue in `[0, d_i)`
/// per torsion factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    free: Vec<BigInt>,
    torsion: Vec<BigInt>,
}

impl GroupElement {
    /// Coordinates on the free part.
    pub fn free_coords(&self) -> &[BigInt] {
        &self.free
    }

    /// Reduced coordinates on the torsion part.
    pub fn torsion_coords(&self) -> &[BigInt] {
        &self.torsion
    }

    /// All coordinates, free first.
    pub fn flat_coords(&self) -> Vec<BigInt> {
        self.free.iter().chain(&self.torsion).cloned().collect()
    }

    /// True if this is the zero element.
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(Zero::is_zero) && self.torsion.iter().all(Zero::is_zero)
    }

    /// Sum inside `group`. Errors if either element does not match the
    /// group's coordinate shape.
    pub fn add(&self, other: &GroupElement, group: &AbelianGroup) -> Result<GroupElement, IntLinError> {
        let free = self
            .free
            .iter()
            .zip(&other.free)
            .map(|(a, b)| a + b)
            .collect::<Vec<_>>();
        let torsion = self
            .torsion
            .iter()
            .zip(&other.torsion)
            .map(|(a, b)| a + b)
            .collect::<Vec<_>>();
        if free.len() != group.free_rank() || torsion.len() != group.torsion().len() {
            return Err(IntLinError::DimensionMismatch {
                expected: group.coord_len(),
                got: free.len() + torsion.len(),
            });
        }
        group.element(free, torsion)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self.flat_coords().iter().map(|x| x.to_string()).collect();
        write!(f, "({})", coords.join(", "))
    }
}

// ---------------------------------------------------------------------------
// Cokernels, kernels, cosets
// ---------------------------------------------------------------------------

/// A cokernel `ℤ^rows / im(A)` together with the change-of-basis data
/// needed to map vectors to canonical coordinates and back.
///
/// This is the reusable form of [`cokernel_group`] / [`coset_class`]: build
/// it once, then classify many vectors, lift classes to representatives, or
/// export the whole classifying map as an integer matrix.
#[derive(Clone, Debug)]
pub struct CokernelPresentation {
    group: AbelianGroup,
    /// Rows of `u` indexed by the free coordinate rows (no pivot).
    free_rows: Vec<usize>,
    /// Rows of `u` indexed by torsion coordinate rows (pivot `≥ 2`).
    torsion_rows: Vec<usize>,
    ext: SmithExt,
}

impl CokernelPresentation {
    /// Builds the presentation of `ℤ^rows / im(a)`.
    pub fn new(a: &IntMatrix) -> Self {
        let ext = SmithExt::compute(a);
        let rows = a.rows();
        let torsion_rows = ext.torsion_rows();
        let free_rows: Vec<usize> = (ext.rank..rows).collect();
        let torsion: Vec<BigInt> = torsion_rows.iter().map(|&i| ext.d.get(i, i).clone()).collect();
        let group = AbelianGroup {
            free_rank: free_rows.len(),
            torsion,
        };
        CokernelPresentation {
            group,
            free_rows,
            torsion_rows,
            ext,
        }
    }

    /// The cokernel in invariant-factor form.
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// Canonical coordinates of the class of `x`.
    pub fn class(&self, x: &[BigInt]) -> Result<GroupElement, IntLinError> {
        if x.len() != self.ext.u.rows() {
            return Err(IntLinError::DimensionMismatch {
                expected: self.ext.u.rows(),
                got: x.len(),
            });
        }
        let y = self.ext.u.mul_vec(x);
        let free = self.free_rows.iter().map(|&i| y[i].clone()).collect();
        let torsion = self.torsion_rows.iter().map(|&i| y[i].clone()).collect();
        self.group.element(free, torsion)
    }

    /// A vector in `ℤ^rows` whose class is `e`.
    pub fn representative(&self, e: &GroupElement) -> Result<Vec<BigInt>, IntLinError> {
        if e.free_coords().len() != self.group.free_rank()
            || e.torsion_coords().len() != self.group.torsion().len()
        {
            return Err(IntLinError::DimensionMismatch {
                expected: self.group.coord_len(),
                got: e.free_coords().len() + e.torsion_coords().len(),
            });
        }
        let rows = self.ext.u.rows();
        let mut y = vec![BigInt::zero(); rows];
        for (k, &i) in self.free_rows.iter().enumerate() {
            y[i] = e.free_coords()[k].clone();
        }
        for (k, &i) in self.torsion_rows.iter().enumerate() {
            y[i] = e.torsion_coords()[k].clone();
        }
        Ok(self.ext.u_inv.mul_vec(&y))
    }

    /// The classifying map as an integer matrix `W` with
    /// `class(x) = reduce(W · x)`: one row per free coordinate (in order),
    /// then one row per torsion coordinate.
    pub fn witness_matrix(&self) -> IntMatrix {
        let rows = self.free_rows.len() + self.torsion_rows.len();
        let cols = self.ext.u.cols();
        let mut w = IntMatrix::zero(rows, cols);
        for (k, &i) in self.free_rows.iter().enumerate() {
            for j in 0..cols {
                w.set(k, j, self.ext.u.get(i, j).clone());
            }
        }
        let off = self.free_rows.len();
        for (k, &i) in self.torsion_rows.iter().enumerate() {
            for j in 0..cols {
                w.set(off + k, j, self.ext.u.get(i, j).clone());
            }
        }
        w
    }
}

/// The cokernel `ℤ^rows / im(a)` in canonical invariant-factor form.
///
/// ```
/// use okgraph::intlin::{cokernel_group, IntMatrix};
/// let a = IntMatrix::from_i64(1, 1, &[&[-3]]);
/// assert_eq!(cokernel_group(&a).to_string(), "Z/3");
/// ```
pub fn cokernel_group(a: &IntMatrix) -> AbelianGroup {
    CokernelPresentation::new(a).group().clone()
}

/// A `ℤ`-basis of `ker(a) ⊆ ℤ^cols`, returned as the columns of a
/// `cols × nullity` matrix.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let ext = SmithExt::compute(a);
    let cols = a.cols();
    let nullity = cols - ext.rank;
    let mut basis = IntMatrix::zero(cols, nullity);
    for (k, j) in (ext.rank..cols).enumerate() {
        for i in 0..cols {
            basis.set(i, k, ext.v.get(i, j).clone());
        }
    }
    basis
}

/// Canonical coordinates of the class of `x` in `ℤ^rows / im(a)`.
///
/// ```
/// use okgraph::intlin::{coset_class, IntMatrix};
/// use num_bigint::BigInt;
/// let a = IntMatrix::from_i64(1, 1, &[&[-3]]);
/// let class = coset_class(&a, &[BigInt::from(1)]).unwrap();
/// assert_eq!(class.torsion_coords(), &[BigInt::from(1)]);
/// ```
pub fn coset_class(a: &IntMatrix, x: &[BigInt]) -> Result<GroupElement, IntLinError> {
    CokernelPresentation::new(a).class(x)
}

/// If `x ∈ im(a)`, returns `Some(y)` with `a·y = x` (the witness is checked
/// by multiplication before being returned); otherwise `None`.
pub fn solve_in_image(a: &IntMatrix, x: &[BigInt]) -> Result<Option<Vec<BigInt>>, IntLinError> {
    if x.len() != a.rows() {
        return Err(IntLinError::DimensionMismatch {
            expected: a.rows(),
            got: x.len(),
        });
    }
    let ext = SmithExt::compute(a);
    let z = ext.u.mul_vec(x);
    let mut w = vec![BigInt::zero(); a.cols()];
    for i in 0..a.rows() {
        if i < ext.rank {
            let d = ext.d.get(i, i);
            if !z[i].is_multiple_of(d) {
                return Ok(None);
            }
            w[i] = &z[i] / d;
        } else if !z[i].is_zero() {
            return Ok(None);
        }
    }
    let y = ext.v.mul_vec(&w);
    debug_assert_eq!(a.mul_vec(&y), x, "solve_in_image produced a wrong witness");
    assert_eq!(a.mul_vec(&y), x.to_vec());
    Ok(Some(y))
}
