//! Simplicial complexes with integral homology, and the quotient complex of
//! a colored configuration.
//!
//! A colored configuration $C$ with $k+1$ colors and $n$ points determines a
//! complex on its points with $2n$ facets of dimension $k$, two families of
//! $n$: a *positive* facet per line $l$ (the points of $l$, position $i$
//! holding $\varphi_i(l)$) and a *negative* facet per point $p$ (position $i$
//! holding $\varphi_r \varphi_i(p)$ for the reference color $r = k+1$).  It
//! is the quotient of the distance-1 flag complex of $A_k$ by the stabilizer
//! of the labeling, so its first homology is $\mathbb{Z}^k$; the cross-check
//! here walks a fundamental domain of the lattice and compares both facet
//! families against the labels.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::algebra::IntegerMatrix;
use crate::config::{
    ColoredConfiguration, GroupActionOnConfig, ValidationReport, Vertex,
};
use crate::error::{Error, Result};
use crate::lattice::{LatticeAction, LatticeVector};

/// Face-enumeration budget: `CONFIGCOMPLEX_FACE_CAP` overrides the default
/// of $10^6$ faces per dimension.
pub fn default_face_cap() -> usize {
    std::env::var("CONFIGCOMPLEX_FACE_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(1_000_000)
}

/// A finite simplicial complex presented by its facets (maximal faces).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_names: Vec<String>,
    /// Sorted vertex lists, lexicographically ordered, duplicate-free.
    facets: Vec<Vec<usize>>,
}

/// One homology group $H_d \cong \mathbb{Z}^{r} \oplus \bigoplus_i \mathbb{Z}_{t_i}$.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub free_rank: usize,
    /// Torsion coefficients in divisibility order, each $> 1$.
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Free part only, e.g. `Z^2`.
    pub fn free(rank: usize) -> Self {
        HomologyGroup { free_rank: rank, torsion: Vec::new() }
    }
}

impl std::fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z_{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl SimplicialComplex {
    /// Builds a complex from facets; every vertex must appear in one, faces
    /// must be duplicate-free, and no facet may contain another.
    pub fn new(vertex_names: Vec<String>, facets: Vec<Vec<usize>>) -> Result<Self> {
        let n = vertex_names.len();
        let mut cleaned: Vec<Vec<usize>> = Vec::with_capacity(facets.len());
        for mut facet in facets {
            if facet.is_empty() {
                return Err(Error::invalid("facets must be nonempty"));
            }
            facet.sort_unstable();
            if facet.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid(format!(
                    "facet {:?} repeats a vertex",
                    facet
                )));
            }
            if *facet.last().expect("nonempty") >= n {
                return Err(Error::invalid(format!(
                    "facet {:?} refers to an unknown vertex",
                    facet
                )));
            }
            cleaned.push(facet);
        }
        cleaned.sort();
        cleaned.dedup();
        for a in &cleaned {
            for b in &cleaned {
                if a.len() < b.len() && a.iter().all(|v| b.binary_search(v).is_ok()) {
                    return Err(Error::invalid(format!(
                        "facet {:?} is contained in facet {:?}",
                        a, b
                    )));
                }
            }
        }
        let mut covered = vec![false; n];
        for facet in &cleaned {
            for &v in facet {
                covered[v] = true;
            }
        }
        if let Some(v) = covered.iter().position(|&c| !c) {
            return Err(Error::invalid(format!(
                "vertex {} lies in no facet",
                vertex_names[v]
            )));
        }
        Ok(SimplicialComplex { vertex_names, facets: cleaned })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertex_names[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// Dimension of the complex (largest facet size minus one).
    pub fn dimension(&self) -> usize {
        self.facets.iter().map(|f| f.len() - 1).max().unwrap_or(0)
    }

    /// All faces with `size` vertices, sorted lexicographically.
    fn faces_of_size(&self, size: usize, face_cap: usize) -> Result<Vec<Vec<usize>>> {
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        for facet in &self.facets {
            if facet.len() < size {
                continue;
            }
            for combo in facet.iter().copied().combinations(size) {
                out.insert(combo);
                if out.len() > face_cap {
                    return Err(Error::LimitExceeded(format!(
                        "more than {face_cap} faces of {size} vertices; raise \
                         CONFIGCOMPLEX_FACE_CAP to proceed"
                    )));
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Every pair of vertices spans an edge of the complex.
    pub fn is_two_neighborly(&self) -> bool {
        let n = self.num_vertices();
        if n < 2 {
            return true;
        }
        let mut pairs = vec![false; n * n];
        let mut remaining = n * (n - 1) / 2;
        for facet in &self.facets {
            for (a, b) in facet.iter().tuple_combinations() {
                if !pairs[a * n + b] {
                    pairs[a * n + b] = true;
                    remaining -= 1;
                }
            }
        }
        remaining == 0
    }

    /// $\chi = \sum_d (-1)^d c_d$ over all face dimensions.
    pub fn euler_characteristic(&self, face_cap: usize) -> Result<i64> {
        let mut chi = 0i64;
        for d in 0..=self.dimension() {
            let count = self.faces_of_size(d + 1, face_cap)?.len() as i64;
            chi += if d % 2 == 0 { count } else { -count };
        }
        Ok(chi)
    }

    /// Integral homology $H_0, \dots, H_{\text{max\_dim}}$ via Smith normal
    /// forms of the boundary matrices.
    pub fn homology(&self, max_dim: usize, face_cap: usize) -> Result<Vec<HomologyGroup>> {
        let dim = self.dimension();
        let mut faces: Vec<Vec<Vec<usize>>> = Vec::new();
        for d in 0..=(max_dim + 1).min(dim) {
            faces.push(self.faces_of_size(d + 1, face_cap)?);
        }
        // ranks[d] and torsions[d] describe the boundary map from dimension
        // d to d-1 (trivial for d = 0 or beyond the complex).
        let mut ranks = vec![0usize; faces.len() + 1];
        let mut torsions: Vec<Vec<u64>> = vec![Vec::new(); faces.len() + 1];
        for d in 1..faces.len() {
            let index: BTreeMap<&[usize], usize> = faces[d - 1]
                .iter()
                .enumerate()
                .map(|(i, f)| (f.as_slice(), i))
                .collect();
            let mut boundary = IntegerMatrix::zero(faces[d].len(), faces[d - 1].len());
            for (row, face) in faces[d].iter().enumerate() {
                for omit in 0..face.len() {
                    let mut sub = face.clone();
                    sub.remove(omit);
                    let col = index[sub.as_slice()];
                    boundary.set(row, col, if omit % 2 == 0 { 1 } else { -1 });
                }
            }
            let invariants = boundary.smith_invariants()?;
            ranks[d] = invariants.len();
            torsions[d] = invariants
                .iter()
                .filter(|&&f| f > 1)
                .map(|&f| f as u64)
                .collect();
        }
        let mut out = Vec::with_capacity(max_dim + 1);
        for d in 0..=max_dim {
            let c_d = faces.get(d).map_or(0, Vec::len);
            let below = ranks.get(d).copied().unwrap_or(0);
            let above = ranks.get(d + 1).copied().unwrap_or(0);
            let free_rank = c_d.checked_sub(below + above).ok_or_else(|| {
                Error::internal("boundary ranks exceed the chain dimension")
            })?;
            let torsion = torsions.get(d + 1).cloned().unwrap_or_default();
            out.push(HomologyGroup { free_rank, torsion });
        }
        Ok(out)
    }
}

/// The quotient complex of a colored configuration, with facet provenance.
///
/// `positive[l]` and `negative[p]` list facet vertices ordered by color; the
/// underlying [`SimplicialComplex`] stores each distinct facet once.  When
/// the two families overlap as vertex sets (it happens for 2-colored
/// configurations, where both families are the same cycle) the complex is
/// flagged degenerate.
#[derive(Clone, Debug)]
pub struct QuotientComplex {
    complex: SimplicialComplex,
    positive: Vec<Vec<usize>>,
    negative: Vec<Vec<usize>>,
    degenerate: bool,
}

impl QuotientComplex {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// Positive facets by line id, vertices ordered by color.
    pub fn positive(&self) -> &[Vec<usize>] {
        &self.positive
    }

    /// Negative facets by point id, vertices ordered by color.
    pub fn negative(&self) -> &[Vec<usize>] {
        &self.negative
    }

    /// True when a positive facet coincides with a negative one as a set.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// Facet count by provenance (both families, before deduplication).
    pub fn provenance_facets(&self) -> usize {
        self.positive.len() + self.negative.len()
    }

    /// The configuration induced by the positive family: lines are the
    /// facets, colors the positions.
    pub fn positive_family_config(&self) -> Result<ColoredConfiguration> {
        family_config(&self.complex, &self.positive)
    }

    /// The configuration induced by the negative family.
    pub fn negative_family_config(&self) -> Result<ColoredConfiguration> {
        family_config(&self.complex, &self.negative)
    }

    /// Checks that a free group action on the configuration also permutes
    /// both facet families.
    pub fn verify_action(
        &self,
        config: &ColoredConfiguration,
        action: &GroupActionOnConfig,
    ) -> ValidationReport {
        let mut report = action.verify_free_action(config);
        let families: [(&str, &[Vec<usize>]); 2] =
            [("positive", &self.positive), ("negative", &self.negative)];
        for (name, family) in families {
            let sets: BTreeSet<Vec<usize>> = family
                .iter()
                .map(|f| f.iter().copied().sorted().collect())
                .collect();
            for (g, perm) in action.point_perms.iter().enumerate() {
                for facet in family.iter() {
                    let image: Vec<usize> =
                        facet.iter().map(|&v| perm[v]).sorted().collect();
                    if !sets.contains(&image) {
                        report.push_violation(
                            "facet-preservation",
                            format!(
                                "group element {g} maps a {name} facet outside \
                                 its family"
                            ),
                        );
                        break;
                    }
                }
            }
        }
        report
    }
}

fn family_config(
    complex: &SimplicialComplex,
    family: &[Vec<usize>],
) -> Result<ColoredConfiguration> {
    let m = family.first().map_or(0, Vec::len);
    let line_names: Vec<String> = (0..family.len()).map(|i| i.to_string()).collect();
    let mut incidences = Vec::with_capacity(family.len() * m);
    for (line, facet) in family.iter().enumerate() {
        for (color, &point) in facet.iter().enumerate() {
            incidences.push(crate::config::Incidence { point, line, color });
        }
    }
    ColoredConfiguration::new(
        m,
        complex.vertex_names().to_vec(),
        line_names,
        incidences,
    )
}

/// Builds the quotient complex of a valid colored configuration.
pub fn quotient_complex(config: &ColoredConfiguration) -> Result<QuotientComplex> {
    let structure = config.validate_configuration();
    if !structure.ok() {
        return Err(Error::invalid(format!(
            "configuration is invalid: {}",
            structure.violations[0].witness
        )));
    }
    let coloring = config.validate_coloring();
    if !coloring.ok() {
        return Err(Error::invalid(format!(
            "coloring is invalid: {}",
            coloring.violations[0].witness
        )));
    }
    let m = config.k();
    let ref_color = m - 1;
    let mut positive = Vec::with_capacity(config.num_lines());
    for l in 0..config.num_lines() {
        let facet: Vec<usize> = (0..m)
            .map(|c| config.phi(Vertex::Line(l), c).id())
            .collect();
        positive.push(facet);
    }
    let mut negative = Vec::with_capacity(config.num_points());
    for p in 0..config.num_points() {
        let facet: Vec<usize> = (0..m)
            .map(|c| {
                let line = config.phi(Vertex::Point(p), c);
                config.phi(line, ref_color).id()
            })
            .collect();
        negative.push(facet);
    }
    for facet in positive.iter().chain(&negative) {
        let distinct: BTreeSet<usize> = facet.iter().copied().collect();
        if distinct.len() != m {
            return Err(Error::internal(
                "a quotient facet repeats a vertex despite a valid coloring".to_string(),
            ));
        }
    }
    let positive_sets: BTreeSet<Vec<usize>> = positive
        .iter()
        .map(|f| f.iter().copied().sorted().collect())
        .collect();
    let degenerate = negative
        .iter()
        .map(|f| f.iter().copied().sorted().collect::<Vec<_>>())
        .any(|f| positive_sets.contains(&f));
    let all_facets: Vec<Vec<usize>> = positive.iter().chain(&negative).cloned().collect();
    let complex = SimplicialComplex::new(
        (0..config.num_points())
            .map(|p| config.point_name(p).to_string())
            .collect(),
        all_facets,
    )?;
    Ok(QuotientComplex { complex, positive, negative, degenerate })
}

/// Whether the negative facet family is unchanged (as a family of ordered
/// tuples up to relabeling the walk) for every choice of reference color.
///
/// For each reference $r$, the family $\{(\varphi_r \varphi_i(p))_i : p\}$
/// must consist of the same vertex sets.
pub fn reference_color_independence(config: &ColoredConfiguration) -> Result<bool> {
    let m = config.k();
    if m == 0 {
        return Err(Error::invalid("the configuration has no colors"));
    }
    let family_for = |r: usize| -> BTreeSet<Vec<usize>> {
        (0..config.num_points())
            .map(|p| {
                (0..m)
                    .map(|c| {
                        let line = config.phi(Vertex::Point(p), c);
                        config.phi(line, r).id()
                    })
                    .sorted()
                    .collect::<Vec<usize>>()
            })
            .collect()
    };
    let reference = family_for(m - 1);
    Ok((0..m - 1).all(|r| family_for(r) == reference))
}

/// Cross-checks the quotient complex against the lattice picture: walks a
/// fundamental domain of the stabilizer code and verifies that both facet
/// families, computed from lattice labels, match the configuration-side
/// tables color by color.
pub fn cross_check_with_lattice(config: &ColoredConfiguration) -> Result<bool> {
    let qc = quotient_complex(config)?;
    let action = LatticeAction::build(config)?;
    let code = action.stabilizer_code()?;
    let m = config.k();
    let ref_color = m - 1;
    for x in code.representatives()? {
        let p = action.label(&x)?;
        // Negative facet of p: labels of x + e_r - e_i.
        for i in 0..m {
            let v = x.add(&LatticeVector::step(m, ref_color, i))?;
            if action.label(&v)? != qc.negative()[p][i] {
                return Ok(false);
            }
        }
        // Positive facet of the line below p: labels of x + e_i - e_r.
        let line = config.phi(Vertex::Point(p), ref_color).id();
        for i in 0..m {
            let v = x.add(&LatticeVector::step(m, i, ref_color))?;
            if action.label(&v)? != qc.positive()[line][i] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
