//! Exact integer matrices with Hermite and Smith normal forms.
//!
//! Entries are `i64` and every arithmetic step is range-checked through
//! `i128` intermediates; overflow surfaces as [`Error::Overflow`] instead of
//! wrapping.  Matrices are row-major, and lattices are always spanned by
//! *rows*.

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

/// Smith normal form $S = U \cdot M \cdot V$ with unimodular $U$, $V$.
///
/// $S$ is diagonal with nonnegative entries $d_1 \mid d_2 \mid \dots$; the
/// nonzero ones are the invariant factors of $M$.
pub struct SmithNormalForm {
    pub matrix: IntegerMatrix,
    pub left: IntegerMatrix,
    pub right: IntegerMatrix,
    pub rank: usize,
}

impl SmithNormalForm {
    /// The nonzero diagonal entries $d_1 \mid d_2 \mid \dots \mid d_r$.
    pub fn invariant_factors(&self) -> Vec<i64> {
        (0..self.rank).map(|i| self.matrix.get(i, i)).collect()
    }
}

fn fit(value: i128, context: &'static str) -> Result<i64> {
    i64::try_from(value).map_err(|_| Error::Overflow(context))
}

impl IntegerMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::invalid("matrix rows have unequal lengths"));
        }
        Ok(IntegerMatrix { rows: rows.len(), cols, data: rows.concat() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack_below(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.cols {
            return Err(Error::invalid("stacked matrices must have equal widths"));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(IntegerMatrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(Error::invalid("matrix dimensions do not match for product"));
        }
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i128 = 0;
                for l in 0..self.cols {
                    acc += self.get(i, l) as i128 * other.get(l, j) as i128;
                }
                out.set(i, j, fit(acc, "matrix product")?);
            }
        }
        Ok(out)
    }

    /// Row-vector/matrix product `v * self`, checked.
    pub fn apply_row(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.rows {
            return Err(Error::invalid("vector length does not match matrix rows"));
        }
        let mut out = Vec::with_capacity(self.cols);
        for j in 0..self.cols {
            let mut acc: i128 = 0;
            for (i, &x) in v.iter().enumerate() {
                acc += x as i128 * self.get(i, j) as i128;
            }
            out.push(fit(acc, "vector-matrix product")?);
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = self.get(i, j);
            self.set(i, j, -v);
        }
    }

    /// `row[dst] -= q * row[src]`, checked.
    fn row_axpy(&mut self, dst: usize, src: usize, q: i128) -> Result<()> {
        if q == 0 {
            return Ok(());
        }
        for j in 0..self.cols {
            let v = self.get(dst, j) as i128 - q * self.get(src, j) as i128;
            self.set(dst, j, fit(v, "row operation")?);
        }
        Ok(())
    }

    /// `row[dst] += row[src]`, checked.
    fn row_add(&mut self, dst: usize, src: usize) -> Result<()> {
        self.row_axpy(dst, src, -1)
    }

    /// `col[dst] -= q * col[src]`, checked.
    fn col_axpy(&mut self, dst: usize, src: usize, q: i128) -> Result<()> {
        if q == 0 {
            return Ok(());
        }
        for i in 0..self.rows {
            let v = self.get(i, dst) as i128 - q * self.get(i, src) as i128;
            self.set(i, dst, fit(v, "column operation")?);
        }
        Ok(())
    }

    fn truncate_rows(&mut self, rows: usize) {
        self.data.truncate(rows * self.cols);
        self.rows = rows;
    }

    /// Row-style Hermite normal form of the lattice spanned by the rows.
    ///
    /// Returns the unique canonical basis: echelon shape, positive pivots,
    /// entries above each pivot reduced into `[0, pivot)`.  Zero rows are
    /// dropped, so the result has exactly `rank` rows.
    pub fn hermite_normal_form(&self) -> Result<IntegerMatrix> {
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            loop {
                let pivot = (r..m.rows)
                    .filter(|&i| m.get(i, c) != 0)
                    .min_by_key(|&i| m.get(i, c).unsigned_abs());
                let Some(p) = pivot else { break };
                m.swap_rows(r, p);
                let mut remainder_left = false;
                for i in r + 1..m.rows {
                    let v = m.get(i, c);
                    if v != 0 {
                        let q = (v as i128).div_euclid(m.get(r, c) as i128);
                        m.row_axpy(i, r, q)?;
                        if m.get(i, c) != 0 {
                            remainder_left = true;
                        }
                    }
                }
                if !remainder_left {
                    break;
                }
            }
            if m.get(r, c) != 0 {
                if m.get(r, c) < 0 {
                    m.negate_row(r);
                }
                let d = m.get(r, c) as i128;
                for i in 0..r {
                    let q = (m.get(i, c) as i128).div_euclid(d);
                    m.row_axpy(i, r, q)?;
                }
                r += 1;
            }
        }
        m.truncate_rows(r);
        Ok(m)
    }

    /// `|det|` of a square matrix, via the Hermite normal form.
    pub fn det_abs(&self) -> Result<i64> {
        if self.rows != self.cols {
            return Err(Error::invalid("determinant of a non-square matrix"));
        }
        let h = self.hermite_normal_form()?;
        if h.rows() < self.rows {
            return Ok(0);
        }
        let mut acc: i128 = 1;
        for i in 0..h.rows() {
            acc *= h.get(i, i) as i128;
        }
        fit(acc, "determinant")
    }

    /// Position of a minimal-magnitude nonzero entry in the trailing
    /// submatrix starting at `(t, t)`; entries of magnitude 1 short-circuit.
    fn min_entry_from(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, u64)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let a = self.get(i, j).unsigned_abs();
                if a == 0 {
                    continue;
                }
                if a == 1 {
                    return Some((i, j));
                }
                if best.map_or(true, |(_, _, b)| a < b) {
                    best = Some((i, j, a));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn smith_internal(&self, track: bool) -> Result<SmithNormalForm> {
        let mut s = self.clone();
        let mut u = IntegerMatrix::identity(if track { self.rows } else { 0 });
        let mut v = IntegerMatrix::identity(if track { self.cols } else { 0 });
        let mut t = 0;
        let steps = self.rows.min(self.cols);
        while t < steps {
            let Some((bi, bj)) = s.min_entry_from(t) else { break };
            s.swap_rows(t, bi);
            s.swap_cols(t, bj);
            if track {
                u.swap_rows(t, bi);
                v.swap_cols(t, bj);
            }
            'reduce: loop {
                loop {
                    let mut changed = false;
                    for i in t + 1..s.rows {
                        let val = s.get(i, t);
                        if val == 0 {
                            continue;
                        }
                        let q = (val as i128).div_euclid(s.get(t, t) as i128);
                        s.row_axpy(i, t, q)?;
                        if track {
                            u.row_axpy(i, t, q)?;
                        }
                        if s.get(i, t) != 0 {
                            s.swap_rows(t, i);
                            if track {
                                u.swap_rows(t, i);
                            }
                            changed = true;
                        }
                    }
                    if !changed {
                        break;
                    }
                }
                let mut column_dirtied = false;
                loop {
                    let mut changed = false;
                    for j in t + 1..s.cols {
                        let val = s.get(t, j);
                        if val == 0 {
                            continue;
                        }
                        let q = (val as i128).div_euclid(s.get(t, t) as i128);
                        s.col_axpy(j, t, q)?;
                        if track {
                            v.col_axpy(j, t, q)?;
                        }
                        if s.get(t, j) != 0 {
                            s.swap_cols(t, j);
                            if track {
                                v.swap_cols(t, j);
                            }
                            changed = true;
                            column_dirtied = true;
                        }
                    }
                    if !changed {
                        break;
                    }
                }
                if column_dirtied {
                    continue 'reduce;
                }
                // Pivot row and column are clear; enforce divisibility of the
                // trailing block by the pivot.
                let d = s.get(t, t);
                let offender = (t + 1..s.rows).find(|&i| {
                    (t + 1..s.cols).any(|j| s.get(i, j).rem_euclid(d) != 0)
                });
                match offender {
                    Some(i) => {
                        s.row_add(t, i)?;
                        if track {
                            u.row_add(t, i)?;
                        }
                    }
                    None => break 'reduce,
                }
            }
            if s.get(t, t) < 0 {
                s.negate_row(t);
                if track {
                    u.negate_row(t);
                }
            }
            t += 1;
        }
        Ok(SmithNormalForm { matrix: s, left: u, right: v, rank: t })
    }

    /// Full Smith normal form with unimodular transforms.
    pub fn smith_normal_form(&self) -> Result<SmithNormalForm> {
        self.smith_internal(true)
    }

    /// Invariant factors only (no transforms); used by the homology engine
    /// where the transforms are dead weight.
    pub fn smith_invariants(&self) -> Result<Vec<i64>> {
        let snf = self.smith_internal(false)?;
        Ok(snf.invariant_factors())
    }

    /// Basis (as rows) of the left kernel `{ x : x * self = 0 }`.
    pub fn left_kernel(&self) -> Result<IntegerMatrix> {
        let snf = self.smith_normal_form()?;
        let rows: Vec<Vec<i64>> = (snf.rank..self.rows)
            .map(|i| snf.left.row(i).to_vec())
            .collect();
        IntegerMatrix::from_rows(rows).or_else(|_| Ok(IntegerMatrix::zero(0, self.rows)))
    }
}

impl std::fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntegerMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl std::fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            let parts: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}
