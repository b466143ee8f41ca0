//! Finite abelian groups in invariant-factor form, and quotients of
//! $\mathbb{Z}^k$ by full-rank sublattices.
//!
//! A group is stored as its invariant-factor chain $d_1 \mid d_2 \mid \dots
//! \mid d_r$ (each $d_i \ge 2$); elements are coordinate vectors with
//! $0 \le c_i < d_i$.  Every element also has a *canonical index*, its
//! mixed-radix value with the last coordinate least significant, which gives
//! the canonical enumeration order used for vertex ids and searches.

use crate::algebra::matrix::IntegerMatrix;
use crate::error::{Error, Result};

/// Finite abelian group $\mathbb{Z}_{d_1} \times \dots \times \mathbb{Z}_{d_r}$
/// with $d_1 \mid d_2 \mid \dots \mid d_r$.  The empty chain is the trivial
/// group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
}

/// Element of a [`FiniteAbelianGroup`]; coordinates are reduced residues.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

impl FiniteAbelianGroup {
    /// Builds a group from an invariant-factor chain.
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        for w in factors.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(Error::invalid(format!(
                    "invariant factors must form a divisibility chain, got {} before {}",
                    w[0], w[1]
                )));
            }
        }
        if factors.iter().any(|&d| d < 2) {
            return Err(Error::invalid("invariant factors must be at least 2"));
        }
        Ok(FiniteAbelianGroup { factors })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("cyclic group order must be positive"));
        }
        if n == 1 {
            return Ok(FiniteAbelianGroup { factors: vec![] });
        }
        Self::new(vec![n])
    }

    /// Builds the group $\prod_i \mathbb{Z}_{m_i}$ for arbitrary moduli,
    /// canonicalized to invariant-factor form (e.g. `[2, 3]` becomes `[6]`).
    pub fn from_moduli(moduli: &[u64]) -> Result<Self> {
        if moduli.iter().any(|&m| m == 0) {
            return Err(Error::invalid("moduli must be positive"));
        }
        let live: Vec<u64> = moduli.iter().copied().filter(|&m| m > 1).collect();
        let mut diag = IntegerMatrix::zero(live.len(), live.len());
        for (i, &m) in live.iter().enumerate() {
            let v = i64::try_from(m).map_err(|_| Error::Overflow("group modulus"))?;
            diag.set(i, i, v);
        }
        let inv = diag.smith_invariants()?;
        Self::new(inv.into_iter().filter(|&d| d > 1).map(|d| d as u64).collect())
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { coords: vec![0; self.factors.len()] }
    }

    pub fn is_zero(&self, e: &GroupElement) -> bool {
        e.coords.iter().all(|&c| c == 0)
    }

    fn check(&self, e: &GroupElement) -> Result<()> {
        if e.coords.len() != self.factors.len()
            || e.coords.iter().zip(&self.factors).any(|(&c, &d)| c >= d)
        {
            return Err(Error::invalid("element does not belong to this group"));
        }
        Ok(())
    }

    /// Builds an element from possibly unreduced signed coordinates.
    pub fn element_from_signed(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.factors.len() {
            return Err(Error::invalid(format!(
                "element has {} coordinates, group has rank {}",
                coords.len(),
                self.factors.len()
            )));
        }
        let coords = coords
            .iter()
            .zip(&self.factors)
            .map(|(&c, &d)| c.rem_euclid(d as i64) as u64)
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .zip(&self.factors)
            .map(|((&x, &y), &d)| (x + y) % d)
            .collect();
        GroupElement { coords }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&self.factors)
            .map(|(&x, &d)| if x == 0 { 0 } else { d - x })
            .collect();
        GroupElement { coords }
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    /// `n * a` for signed `n`.
    pub fn scalar_mul(&self, n: i64, a: &GroupElement) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&self.factors)
            .map(|(&x, &d)| {
                let v = (n as i128 * x as i128).rem_euclid(d as i128);
                v as u64
            })
            .collect();
        GroupElement { coords }
    }

    /// Canonical index: mixed-radix value, last coordinate least significant.
    pub fn index_of(&self, e: &GroupElement) -> u64 {
        let mut idx = 0u64;
        for (&c, &d) in e.coords.iter().zip(&self.factors) {
            idx = idx * d + c;
        }
        idx
    }

    pub fn element_at(&self, mut index: u64) -> Result<GroupElement> {
        if index >= self.order() {
            return Err(Error::invalid(format!(
                "element index {index} out of range for group of order {}",
                self.order()
            )));
        }
        let mut coords = vec![0u64; self.factors.len()];
        for i in (0..self.factors.len()).rev() {
            coords[i] = index % self.factors[i];
            index /= self.factors[i];
        }
        Ok(GroupElement { coords })
    }

    /// All elements in canonical-index order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(|i| self.element_at(i).expect("index in range"))
    }

    /// Additive order of an element.
    pub fn element_order(&self, e: &GroupElement) -> Result<u64> {
        self.check(e)?;
        let mut acc = e.clone();
        let mut n = 1;
        while !self.is_zero(&acc) {
            acc = self.add(&acc, e);
            n += 1;
        }
        Ok(n)
    }

    /// Whether the given elements generate the whole group (closure from 0
    /// under addition of generators and their negatives).
    pub fn generates(&self, gens: &[GroupElement]) -> Result<bool> {
        for g in gens {
            self.check(g)?;
        }
        let order = self.order() as usize;
        let mut seen = vec![false; order];
        seen[self.index_of(&self.zero()) as usize] = true;
        let mut frontier = vec![self.zero()];
        let mut count = 1usize;
        while let Some(e) = frontier.pop() {
            for g in gens {
                for next in [self.add(&e, g), self.sub(&e, g)] {
                    let idx = self.index_of(&next) as usize;
                    if !seen[idx] {
                        seen[idx] = true;
                        count += 1;
                        frontier.push(next);
                    }
                }
            }
        }
        Ok(count == order)
    }

    /// Human-readable element form: comma-joined coordinates ("0" for the
    /// trivial group's element).
    pub fn format_element(&self, e: &GroupElement) -> String {
        if e.coords.is_empty() {
            return "0".to_string();
        }
        e.coords.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
    }

    /// Name of the group, e.g. `Z_7` or `Z_3 x Z_3` (trivial group: `0`).
    pub fn name(&self) -> String {
        if self.factors.is_empty() {
            return "0".to_string();
        }
        self.factors
            .iter()
            .map(|d| format!("Z_{d}"))
            .collect::<Vec<_>>()
            .join(" x ")
    }
}

/// Projection $A_k \to A_k / L$ attached to a quotient group, retaining the
/// unimodular change of coordinates from the Smith normal form.
#[derive(Clone, Debug)]
pub struct LatticeProjection {
    transform: IntegerMatrix,
    diagonal: Vec<u64>,
    kept: Vec<usize>,
}

impl LatticeProjection {
    /// Image of a sum-zero vector with $k+1$ coordinates.
    pub fn apply(&self, full: &[i64]) -> Result<GroupElement> {
        if full.len() != self.transform.rows() + 1 {
            return Err(Error::invalid("vector length does not match projection"));
        }
        self.apply_projected(&full[..full.len() - 1])
    }

    /// Image of a vector already projected to its first $k$ coordinates.
    pub fn apply_projected(&self, x: &[i64]) -> Result<GroupElement> {
        let y = self.transform.apply_row(x)?;
        let coords = self
            .kept
            .iter()
            .map(|&i| y[i].rem_euclid(self.diagonal[i] as i64) as u64)
            .collect();
        Ok(GroupElement { coords })
    }
}

/// Quotient $A_k / L$ for a full-rank sublattice $L$ given by basis rows
/// (sum-zero vectors of length $k+1$).
///
/// Returns the quotient in invariant-factor form together with the projection
/// map.  Fails if the basis is not full rank (infinite quotient) or rows are
/// not sum-zero.
pub fn quotient_group(
    basis: &IntegerMatrix,
) -> Result<(FiniteAbelianGroup, LatticeProjection)> {
    let k = basis.rows();
    if basis.cols() != k + 1 {
        return Err(Error::invalid(format!(
            "basis must be k x (k+1), got {} x {}",
            k,
            basis.cols()
        )));
    }
    for i in 0..k {
        let s: i64 = basis.row(i).iter().sum();
        if s != 0 {
            return Err(Error::invalid(format!("basis row {i} does not sum to zero")));
        }
    }
    let mut projected = IntegerMatrix::zero(k, k);
    for i in 0..k {
        for j in 0..k {
            projected.set(i, j, basis.get(i, j));
        }
    }
    let snf = projected.smith_normal_form()?;
    if snf.rank < k {
        return Err(Error::invalid(
            "sublattice is rank-deficient; the quotient is infinite",
        ));
    }
    let diagonal: Vec<u64> =
        (0..k).map(|i| snf.matrix.get(i, i) as u64).collect();
    let kept: Vec<usize> =
        (0..k).filter(|&i| diagonal[i] > 1).collect();
    let factors: Vec<u64> = kept.iter().map(|&i| diagonal[i]).collect();
    let group = FiniteAbelianGroup::new(factors)?;
    let projection =
        LatticeProjection { transform: snf.right, diagonal, kept };
    Ok((group, projection))
}
