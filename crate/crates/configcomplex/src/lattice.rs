//! The lattice $A_k = \{x \in \mathbb{Z}^{k+1} : \sum_i x_i = 0\}$, its
//! sublattices (linear codes), and the labeling action induced by a colored
//! configuration.
//!
//! The graph metric on $A_k$ is $d(x,y) = \tfrac12 \lVert x-y \rVert_1$; the
//! unit ball around any vertex has $k^2+k+1$ elements.  A configuration with
//! $k+1$ colors labels the lattice by points: moving along $v = u - e_i + e_j$
//! applies the two-color step $\varphi_j \varphi_i$ to the label.  The
//! stabilizer $\{v : \ell(v) = \ell(0)\}$ is a full-rank sublattice, and for
//! configurations with $k^2+k+1$ points it is a perfect 1-error-correcting
//! code.

use crate::algebra::{
    quotient_group, FiniteAbelianGroup, IntegerMatrix, LatticeProjection,
};
use crate::config::{ColoredConfiguration, Vertex};
use crate::error::{Error, Result};

/// A vector of $A_k$: integer coordinates of length $k+1$ summing to zero.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector {
    coords: Vec<i64>,
}

/// Orientation of a facet of the distance-1 Rips complex of $A_k$.
///
/// Positive facets are $\{x + e_i\}_i$ for roots with coordinate sum $-1$;
/// negative facets are $\{x - e_i\}_i$ for roots with coordinate sum $+1$.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FacetSign {
    Positive,
    Negative,
}

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        let sum: i64 = coords.iter().sum();
        if sum != 0 {
            return Err(Error::invalid(format!(
                "lattice vector coordinates must sum to zero, got sum {sum}"
            )));
        }
        Ok(LatticeVector { coords })
    }

    /// The origin of $A_{m-1}$ ($m$ coordinates).
    pub fn zero(m: usize) -> Self {
        LatticeVector { coords: vec![0; m] }
    }

    /// $e_i - e_j$.
    pub fn step(m: usize, i: usize, j: usize) -> Self {
        let mut coords = vec![0; m];
        coords[i] += 1;
        coords[j] -= 1;
        LatticeVector { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// Number of coordinates, $k+1$.
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &LatticeVector) -> Result<LatticeVector> {
        if self.dim() != other.dim() {
            return Err(Error::invalid("lattice vectors of different dimensions"));
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| a.checked_add(b).ok_or(Error::Overflow("vector sum")))
            .collect::<Result<_>>()?;
        Ok(LatticeVector { coords })
    }

    pub fn sub(&self, other: &LatticeVector) -> Result<LatticeVector> {
        if self.dim() != other.dim() {
            return Err(Error::invalid("lattice vectors of different dimensions"));
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| a.checked_sub(b).ok_or(Error::Overflow("vector difference")))
            .collect::<Result<_>>()?;
        Ok(LatticeVector { coords })
    }

    /// Graph distance $\tfrac12 \lVert x - y \rVert_1$.
    pub fn distance(&self, other: &LatticeVector) -> Result<u64> {
        let diff = self.sub(other)?;
        let norm: u64 = diff.coords.iter().map(|c| c.unsigned_abs()).sum();
        debug_assert_eq!(norm % 2, 0, "sum-zero differences have even 1-norm");
        Ok(norm / 2)
    }

    /// The $k(k+1)$ vectors at distance 1, in lexicographic $(i, j)$ order of
    /// the step $x + e_i - e_j$.
    pub fn neighbors(&self) -> Vec<LatticeVector> {
        let m = self.dim();
        let mut out = Vec::with_capacity(m * (m - 1));
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    continue;
                }
                let mut coords = self.coords.clone();
                coords[i] += 1;
                coords[j] -= 1;
                out.push(LatticeVector { coords });
            }
        }
        out
    }

    /// Vertices of the facet rooted at this vector.
    ///
    /// A positive root has coordinate sum $-1$ and spans $\{x + e_i\}_i$; a
    /// negative root has sum $+1$ and spans $\{x - e_i\}_i$.  Note the root
    /// itself is not a lattice vector of $A_k$ (its sum is $\mp 1$), so this
    /// takes raw coordinates.
    pub fn facet_vertices(root: &[i64], sign: FacetSign) -> Result<Vec<LatticeVector>> {
        let sum: i64 = root.iter().sum();
        let expected = match sign {
            FacetSign::Positive => -1,
            FacetSign::Negative => 1,
        };
        if sum != expected {
            return Err(Error::invalid(format!(
                "{:?} facet root must have coordinate sum {expected}, got {sum}",
                sign
            )));
        }
        let delta: i64 = if sign == FacetSign::Positive { 1 } else { -1 };
        Ok((0..root.len())
            .map(|i| {
                let mut coords = root.to_vec();
                coords[i] += delta;
                LatticeVector { coords }
            })
            .collect())
    }
}

/// Full-rank sublattice of $A_k$, stored by its canonical basis: the Hermite
/// normal form of the projection onto the first $k$ coordinates, lifted back
/// with the sum-zero constraint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    k: usize,
    /// $k \times (k+1)$, rows sum to zero, projected rows in HNF.
    basis: IntegerMatrix,
}

impl LinearCode {
    /// Canonicalizes spanning rows (each a sum-zero vector of length $k+1$).
    /// Fails if the span has rank below $k$.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let m = rows.first().map(Vec::len).ok_or_else(|| {
            Error::invalid("a linear code needs at least one spanning row")
        })?;
        if m < 2 {
            return Err(Error::invalid("lattice vectors need at least 2 coordinates"));
        }
        let k = m - 1;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::invalid("spanning rows have unequal lengths"));
            }
            if row.iter().sum::<i64>() != 0 {
                return Err(Error::invalid(format!("spanning row {i} does not sum to zero")));
            }
        }
        let projected: Vec<Vec<i64>> =
            rows.iter().map(|r| r[..k].to_vec()).collect();
        let hnf = IntegerMatrix::from_rows(projected)?.hermite_normal_form()?;
        if hnf.rows() < k {
            return Err(Error::invalid(format!(
                "code must have full rank {k}, got rank {}",
                hnf.rows()
            )));
        }
        let mut basis = IntegerMatrix::zero(k, m);
        for i in 0..k {
            let mut sum = 0i64;
            for j in 0..k {
                basis.set(i, j, hnf.get(i, j));
                sum = sum
                    .checked_add(hnf.get(i, j))
                    .ok_or(Error::Overflow("basis lift"))?;
            }
            basis.set(i, k, -sum);
        }
        Ok(LinearCode { k, basis })
    }

    /// Lattice rank $k$ (vectors have $k+1$ coordinates).
    pub fn k(&self) -> usize {
        self.k
    }

    /// Canonical $k \times (k+1)$ basis.
    pub fn basis(&self) -> &IntegerMatrix {
        &self.basis
    }

    /// Index $[A_k : L]$, the product of the HNF diagonal.
    pub fn index(&self) -> u64 {
        (0..self.k).map(|i| self.basis.get(i, i) as u64).product()
    }

    /// Canonical representative of `v + L`: projected coordinates reduced
    /// into the box $0 \le r_i < d_i$ of the HNF diagonal, lifted back.
    pub fn reduce(&self, v: &LatticeVector) -> Result<LatticeVector> {
        if v.dim() != self.k + 1 {
            return Err(Error::invalid("vector dimension does not match code"));
        }
        let mut x: Vec<i64> = v.coords()[..self.k].to_vec();
        for i in 0..self.k {
            let d = self.basis.get(i, i);
            let q = x[i].div_euclid(d);
            if q != 0 {
                for j in i..self.k {
                    let delta = (q as i128) * (self.basis.get(i, j) as i128);
                    let val = x[j] as i128 - delta;
                    x[j] = i64::try_from(val).map_err(|_| Error::Overflow("reduction"))?;
                }
            }
        }
        let sum: i64 = x.iter().sum();
        x.push(-sum);
        Ok(LatticeVector { coords: x })
    }

    pub fn contains(&self, v: &LatticeVector) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    /// One representative per coset of $L$ in $A_k$, in lexicographic box
    /// order.
    pub fn representatives(&self) -> Result<Vec<LatticeVector>> {
        let dims: Vec<i64> = (0..self.k).map(|i| self.basis.get(i, i)).collect();
        let mut out = Vec::new();
        let mut r = vec![0i64; self.k];
        loop {
            let mut coords = r.clone();
            coords.push(-r.iter().sum::<i64>());
            out.push(LatticeVector { coords });
            let mut i = self.k;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                r[i] += 1;
                if r[i] < dims[i] {
                    break;
                }
                r[i] = 0;
            }
        }
    }

    /// Quotient group $A_k / L$ with its projection.
    pub fn quotient(&self) -> Result<(FiniteAbelianGroup, LatticeProjection)> {
        quotient_group(&self.basis)
    }

    /// Is the unit ball injective modulo the code?  Equivalently, do the
    /// $k^2+k+1$ ball vectors $\{0\} \cup \{e_i - e_j\}$ land in distinct
    /// cosets?
    pub fn is_radius_one(&self) -> Result<bool> {
        let (group, proj) = self.quotient()?;
        let m = self.k + 1;
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(group.index_of(&proj.apply(&vec![0; m])?));
        for v in LatticeVector::zero(m).neighbors() {
            if !seen.insert(group.index_of(&proj.apply(v.coords())?)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Perfect 1-code: radius-1 with index exactly $k^2 + k + 1$ (the balls
    /// tile the lattice).
    pub fn is_perfect(&self) -> Result<bool> {
        let ball = (self.k * self.k + self.k + 1) as u64;
        Ok(self.index() == ball && self.is_radius_one()?)
    }
}

/// The action of $A_{k}$ ($k+1$ = number of colors) on the points of a
/// colored configuration, realized by the two-color step permutations
/// $g_{ij} = \varphi_j \varphi_i$.
#[derive(Clone, Debug)]
pub struct LatticeAction {
    m: usize,
    num_points: usize,
    /// `pair_gens[i * m + j][p]` = image of point `p` under
    /// $\varphi_j \varphi_i$ (identity when `i == j`).
    pair_gens: Vec<Vec<usize>>,
}

impl LatticeAction {
    /// Builds and verifies the action.
    ///
    /// The configuration must be properly colored and connected; the
    /// generator identities (inverse pairs, pairwise commutation, and the
    /// two-step composition law) plus transitivity are all verified, so a
    /// coloring that breaks the hexagon property is rejected with a witness.
    pub fn build(config: &ColoredConfiguration) -> Result<Self> {
        let m = config.k();
        if m < 2 {
            return Err(Error::invalid(
                "the lattice action needs at least 2 colors",
            ));
        }
        let n = config.num_points();
        let mut pair_gens = vec![vec![0usize; n]; m * m];
        for i in 0..m {
            for j in 0..m {
                let perm = &mut pair_gens[i * m + j];
                for p in 0..n {
                    if i == j {
                        perm[p] = p;
                        continue;
                    }
                    let line = config.phi_checked(Vertex::Point(p), i).ok_or_else(|| {
                        Error::invalid(format!(
                            "point {} has no unique color-{} line",
                            config.point_name(p),
                            i + 1
                        ))
                    })?;
                    let q = config.phi_checked(line, j).ok_or_else(|| {
                        Error::invalid(format!(
                            "line {} has no unique color-{} point",
                            config.vertex_name(line),
                            j + 1
                        ))
                    })?;
                    perm[p] = q.id();
                }
            }
        }
        let action = LatticeAction { m, num_points: n, pair_gens };
        action.verify(config)?;
        Ok(action)
    }

    fn gen(&self, i: usize, j: usize) -> &[usize] {
        &self.pair_gens[i * self.m + j]
    }

    /// The permutation $g_{ij} = \varphi_j \varphi_i$ on points.
    pub fn generator(&self, i: usize, j: usize) -> Result<&[usize]> {
        if i >= self.m || j >= self.m {
            return Err(Error::invalid("generator color out of range"));
        }
        Ok(self.gen(i, j))
    }

    /// Number of colors, $k + 1$.
    pub fn num_colors(&self) -> usize {
        self.m
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    fn verify(&self, config: &ColoredConfiguration) -> Result<()> {
        let m = self.m;
        let n = self.num_points;
        // Inverse pairs: g_{ji} after g_{ij} is the identity.
        for i in 0..m {
            for j in 0..m {
                for p in 0..n {
                    let q = self.gen(j, i)[self.gen(i, j)[p]];
                    if q != p {
                        return Err(Error::invalid(format!(
                            "steps ({}, {}) and ({}, {}) are not inverse at point {}",
                            i + 1,
                            j + 1,
                            j + 1,
                            i + 1,
                            config.point_name(p)
                        )));
                    }
                }
            }
        }
        // Pairwise commutation: the hexagon property in permutation form.
        for a in 0..m * m {
            for b in a + 1..m * m {
                let (ga, gb) = (&self.pair_gens[a], &self.pair_gens[b]);
                for p in 0..n {
                    if ga[gb[p]] != gb[ga[p]] {
                        return Err(Error::invalid(format!(
                            "two-step maps ({}, {}) and ({}, {}) do not commute \
                             at point {}",
                            a / m + 1,
                            a % m + 1,
                            b / m + 1,
                            b % m + 1,
                            config.point_name(p)
                        )));
                    }
                }
            }
        }
        // Composition through an intermediate color.
        for i in 0..m {
            for j in 0..m {
                for l in 0..m {
                    for p in 0..n {
                        if self.gen(l, j)[self.gen(i, l)[p]] != self.gen(i, j)[p] {
                            return Err(Error::invalid(format!(
                                "composition law fails for colors ({}, {}, {}) at \
                                 point {}",
                                i + 1,
                                j + 1,
                                l + 1,
                                config.point_name(p)
                            )));
                        }
                    }
                }
            }
        }
        // Transitivity: the generator orbit of point 0 is everything.
        if n > 0 {
            let mut seen = vec![false; n];
            seen[0] = true;
            let mut stack = vec![0usize];
            let mut count = 1;
            while let Some(p) = stack.pop() {
                for i in 0..m {
                    for j in 0..m {
                        let q = self.gen(i, j)[p];
                        if !seen[q] {
                            seen[q] = true;
                            count += 1;
                            stack.push(q);
                        }
                    }
                }
            }
            if count != n {
                return Err(Error::invalid(format!(
                    "the lattice action is not transitive: orbit of point 0 has \
                     size {count} of {n}"
                )));
            }
        }
        Ok(())
    }

    /// Label of a lattice vector with base point `base` at the origin:
    /// translation by $e_i - e_{k+1}$ applies $\varphi_i \varphi_{k+1}$.
    pub fn label_from(&self, base: usize, v: &LatticeVector) -> Result<usize> {
        if v.dim() != self.m {
            return Err(Error::invalid(format!(
                "vector has {} coordinates, action expects {}",
                v.dim(),
                self.m
            )));
        }
        if base >= self.num_points {
            return Err(Error::invalid("base point out of range"));
        }
        let ref_color = self.m - 1;
        let mut p = base;
        for (i, &exp) in v.coords().iter().take(self.m - 1).enumerate() {
            let perm = if exp >= 0 {
                self.gen(ref_color, i)
            } else {
                self.gen(i, ref_color)
            };
            for _ in 0..exp.unsigned_abs() {
                p = perm[p];
            }
        }
        Ok(p)
    }

    /// Label with base point 0.
    pub fn label(&self, v: &LatticeVector) -> Result<usize> {
        self.label_from(0, v)
    }

    /// Stabilizer $\{v : \ell(v) = \mathrm{base}\}$ as a linear code.
    ///
    /// Computed from coset representatives found by breadth-first search over
    /// the translation generators; the result is base-point independent.
    pub fn stabilizer_code_from(&self, base: usize) -> Result<LinearCode> {
        let m = self.m;
        let k = m - 1;
        let n = self.num_points;
        let ref_color = m - 1;
        // BFS over translations T_i = g_{(k+1) i} and their inverses.
        let mut reps: Vec<Option<LatticeVector>> = vec![None; n];
        reps[base] = Some(LatticeVector::zero(m));
        let mut queue = std::collections::VecDeque::from([base]);
        while let Some(p) = queue.pop_front() {
            let here = reps[p].clone().expect("queued points have representatives");
            for i in 0..k {
                let fwd = self.gen(ref_color, i)[p];
                if reps[fwd].is_none() {
                    reps[fwd] = Some(here.add(&LatticeVector::step(m, i, ref_color))?);
                    queue.push_back(fwd);
                }
                let back = self.gen(i, ref_color)[p];
                if reps[back].is_none() {
                    reps[back] = Some(here.sub(&LatticeVector::step(m, i, ref_color))?);
                    queue.push_back(back);
                }
            }
        }
        let reps: Vec<LatticeVector> = reps
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::internal("transitive action left unreached points"))?;
        // Schreier relations: rep(p) + b_i - rep(T_i p) for every point and
        // translation generator.
        let mut rows = Vec::with_capacity(n * k);
        for p in 0..n {
            for i in 0..k {
                let q = self.gen(ref_color, i)[p];
                let rel = reps[p]
                    .add(&LatticeVector::step(m, i, ref_color))?
                    .sub(&reps[q])?;
                rows.push(rel.coords().to_vec());
            }
        }
        let code = LinearCode::from_rows(rows)?;
        if code.index() != n as u64 {
            return Err(Error::internal(format!(
                "stabilizer index {} does not match point count {n}",
                code.index()
            )));
        }
        // The representatives must label back to their points, and basis
        // vectors must stabilize the base label.
        for (p, rep) in reps.iter().enumerate() {
            if self.label_from(base, rep)? != p {
                return Err(Error::internal(format!(
                    "representative of point {p} does not label back to it"
                )));
            }
        }
        for row in code.basis().row_vectors() {
            let v = LatticeVector::new(row)?;
            if self.label_from(base, &v)? != base {
                return Err(Error::internal(
                    "stabilizer basis vector moves the base label".to_string(),
                ));
            }
        }
        Ok(code)
    }

    /// Stabilizer of the label at base point 0.
    pub fn stabilizer_code(&self) -> Result<LinearCode> {
        self.stabilizer_code_from(0)
    }
}
