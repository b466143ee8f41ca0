//! Colored configurations and their validation.
//!
//! A *$k$-configuration* is an incidence structure of points and lines where
//! every point lies on $k$ lines, every line carries $k$ points, two points
//! share at most one line (no 4-cycles in the incidence graph), and the
//! incidence graph is connected.  A *coloring* assigns one of $k$ colors to
//! every incidence so that the colors at each vertex are pairwise distinct
//! (a proper edge coloring), which makes the color-$i$ step
//! $\varphi_i$ a well-defined involution on vertices.  A coloring is *valid*
//! when every ordered triple of distinct colors $(a,b,c)$ closes hexagonally:
//! $(\varphi_c \varphi_b \varphi_a)^2 = \mathrm{id}$.
//!
//! Validation never fails with an error; it returns reports listing every
//! violation with an explicit witness.  Colors are `0`-based in code and
//! `1`-based in files and rendered reports.

use crate::error::{Error, Result};
use itertools::Itertools;
use serde::Serialize;
use std::collections::BTreeMap;

/// Vertex of the incidence graph: a point or a line, by dense id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    Point(usize),
    Line(usize),
}

impl Vertex {
    pub fn id(self) -> usize {
        match self {
            Vertex::Point(i) | Vertex::Line(i) => i,
        }
    }

    pub fn is_point(self) -> bool {
        matches!(self, Vertex::Point(_))
    }
}

/// An incidence `(point, line)` with its color, all 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Incidence {
    pub point: usize,
    pub line: usize,
    pub color: usize,
}

/// Incidence structure with a $k$-edge-coloring candidate.
///
/// Construction only enforces structural soundness (ids in range, colors in
/// range, no repeated point-line pair): whether the data is an actual colored
/// configuration is the job of [`ColoredConfiguration::validate_configuration`]
/// and [`ColoredConfiguration::validate_coloring`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredConfiguration {
    k: usize,
    point_names: Vec<String>,
    line_names: Vec<String>,
    incidences: Vec<Incidence>,
    /// `point_slots[p][c]` = lines incident to `p` with color `c`.
    point_slots: Vec<Vec<Vec<usize>>>,
    /// `line_slots[l][c]` = points incident to `l` with color `c`.
    line_slots: Vec<Vec<Vec<usize>>>,
}

/// One violation found by a validator, with a human-readable witness.
#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub rule: String,
    pub witness: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.rule, self.witness)
    }
}

/// Outcome of a validation pass.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push_violation(&mut self, rule: &str, witness: String) {
        self.violations.push(Violation { rule: rule.to_string(), witness });
    }
}

impl ColoredConfiguration {
    /// Builds a configuration from named points/lines and colored incidences.
    pub fn new(
        k: usize,
        point_names: Vec<String>,
        line_names: Vec<String>,
        mut incidences: Vec<Incidence>,
    ) -> Result<Self> {
        let np = point_names.len();
        let nl = line_names.len();
        incidences.sort();
        for pair in incidences.windows(2) {
            if pair[0].point == pair[1].point && pair[0].line == pair[1].line {
                return Err(Error::invalid(format!(
                    "incidence ({}, {}) listed more than once",
                    point_names[pair[0].point], line_names[pair[0].line]
                )));
            }
        }
        let mut point_slots = vec![vec![Vec::new(); k]; np];
        let mut line_slots = vec![vec![Vec::new(); k]; nl];
        for inc in &incidences {
            if inc.point >= np || inc.line >= nl {
                return Err(Error::invalid("incidence refers to an unknown vertex"));
            }
            if inc.color >= k {
                return Err(Error::invalid(format!(
                    "incidence ({}, {}) has color {} outside 1..={k}",
                    point_names[inc.point],
                    line_names[inc.line],
                    inc.color + 1
                )));
            }
            point_slots[inc.point][inc.color].push(inc.line);
            line_slots[inc.line][inc.color].push(inc.point);
        }
        Ok(ColoredConfiguration {
            k,
            point_names,
            line_names,
            incidences,
            point_slots,
            line_slots,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_points(&self) -> usize {
        self.point_names.len()
    }

    pub fn num_lines(&self) -> usize {
        self.line_names.len()
    }

    pub fn point_name(&self, p: usize) -> &str {
        &self.point_names[p]
    }

    pub fn line_name(&self, l: usize) -> &str {
        &self.line_names[l]
    }

    pub fn vertex_name(&self, v: Vertex) -> &str {
        match v {
            Vertex::Point(p) => self.point_name(p),
            Vertex::Line(l) => self.line_name(l),
        }
    }

    pub fn incidences(&self) -> &[Incidence] {
        &self.incidences
    }

    /// Lines through a point, sorted.
    pub fn lines_through(&self, p: usize) -> Vec<usize> {
        let mut out: Vec<usize> =
            self.point_slots[p].iter().flatten().copied().collect();
        out.sort_unstable();
        out
    }

    /// Points on a line, sorted.
    pub fn points_on(&self, l: usize) -> Vec<usize> {
        let mut out: Vec<usize> =
            self.line_slots[l].iter().flatten().copied().collect();
        out.sort_unstable();
        out
    }

    /// The color-`c` neighbor of a vertex, when unique.
    pub fn phi_checked(&self, v: Vertex, c: usize) -> Option<Vertex> {
        let slot = match v {
            Vertex::Point(p) => &self.point_slots[p][c],
            Vertex::Line(l) => &self.line_slots[l][c],
        };
        if slot.len() != 1 {
            return None;
        }
        Some(match v {
            Vertex::Point(_) => Vertex::Line(slot[0]),
            Vertex::Line(_) => Vertex::Point(slot[0]),
        })
    }

    /// The color step $\varphi_c$.  Requires a properly colored
    /// configuration (each vertex has exactly one incidence of each color);
    /// run [`Self::validate_coloring`] first on untrusted data.
    pub fn phi(&self, v: Vertex, c: usize) -> Vertex {
        self.phi_checked(v, c)
            .expect("phi requires a properly colored configuration")
    }

    /// Checks the (uncolored) configuration axioms: $k$-regularity on both
    /// sides, 4-cycle freeness, and connectivity of the incidence graph.
    pub fn validate_configuration(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for (p, slots) in self.point_slots.iter().enumerate() {
            let degree: usize = slots.iter().map(Vec::len).sum();
            if degree != self.k {
                report.push_violation(
                    "point degree",
                    format!(
                        "point {} has degree {degree} (expected {})",
                        self.point_name(p),
                        self.k
                    ),
                );
            }
        }
        for (l, slots) in self.line_slots.iter().enumerate() {
            let degree: usize = slots.iter().map(Vec::len).sum();
            if degree != self.k {
                report.push_violation(
                    "line degree",
                    format!(
                        "line {} has degree {degree} (expected {})",
                        self.line_name(l),
                        self.k
                    ),
                );
            }
        }
        // 4-cycle freeness: no two points on two common lines.
        let mut pair_line: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for l in 0..self.num_lines() {
            let pts = self.points_on(l);
            for (i, &a) in pts.iter().enumerate() {
                for &b in &pts[i + 1..] {
                    if let Some(&other) = pair_line.get(&(a, b)) {
                        report.push_violation(
                            "no 4-cycles",
                            format!(
                                "points {} and {} lie on lines {} and {}",
                                self.point_name(a),
                                self.point_name(b),
                                self.line_name(other),
                                self.line_name(l)
                            ),
                        );
                    } else {
                        pair_line.insert((a, b), l);
                    }
                }
            }
        }
        // Connectivity of the incidence graph.
        let total = self.num_points() + self.num_lines();
        if total > 0 {
            let mut seen = vec![false; total];
            let mut stack = vec![Vertex::Point(0)];
            if self.num_points() == 0 {
                stack = vec![Vertex::Line(0)];
            }
            let idx = |v: Vertex| match v {
                Vertex::Point(p) => p,
                Vertex::Line(l) => self.num_points() + l,
            };
            seen[idx(stack[0])] = true;
            let mut count = 1;
            while let Some(v) = stack.pop() {
                let neighbors: Vec<Vertex> = match v {
                    Vertex::Point(p) => self
                        .lines_through(p)
                        .into_iter()
                        .map(Vertex::Line)
                        .collect(),
                    Vertex::Line(l) => {
                        self.points_on(l).into_iter().map(Vertex::Point).collect()
                    }
                };
                for w in neighbors {
                    if !seen[idx(w)] {
                        seen[idx(w)] = true;
                        count += 1;
                        stack.push(w);
                    }
                }
            }
            if count != total {
                report.push_violation(
                    "connectivity",
                    format!(
                        "incidence graph has {} vertices but only {count} are \
                         reachable from {}",
                        total,
                        self.vertex_name(if self.num_points() > 0 {
                            Vertex::Point(0)
                        } else {
                            Vertex::Line(0)
                        })
                    ),
                );
            }
        }
        report
    }

    fn all_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.num_points())
            .map(Vertex::Point)
            .chain((0..self.num_lines()).map(Vertex::Line))
    }

    /// Checks that the coloring is proper and closes hexagonally: for every
    /// vertex $v$ and ordered triple of distinct colors $(a,b,c)$, walking
    /// $a,b,c,a,b,c$ returns to $v$.  The hexagon check runs only when the
    /// coloring is proper (the color steps are otherwise ill-defined).
    pub fn validate_coloring(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for v in self.all_vertices() {
            let slots = match v {
                Vertex::Point(p) => &self.point_slots[p],
                Vertex::Line(l) => &self.line_slots[l],
            };
            for (c, slot) in slots.iter().enumerate() {
                if slot.len() > 1 {
                    report.push_violation(
                        "proper coloring",
                        format!(
                            "{} {} has {} incidences of color {}",
                            if v.is_point() { "point" } else { "line" },
                            self.vertex_name(v),
                            slot.len(),
                            c + 1
                        ),
                    );
                }
                if slot.is_empty() {
                    report.push_violation(
                        "proper coloring",
                        format!(
                            "{} {} has no incidence of color {}",
                            if v.is_point() { "point" } else { "line" },
                            self.vertex_name(v),
                            c + 1
                        ),
                    );
                }
            }
        }
        if !report.ok() {
            return report;
        }
        for v in self.all_vertices() {
            for triple in (0..self.k).permutations(3) {
                let (a, b, c) = (triple[0], triple[1], triple[2]);
                let mut w = v;
                for color in [a, b, c, a, b, c] {
                    w = self.phi(w, color);
                }
                if w != v {
                    report.push_violation(
                        "hexagon property",
                        format!(
                            "{} {} with colors ({}, {}, {}) returns to {} {}",
                            if v.is_point() { "point" } else { "line" },
                            self.vertex_name(v),
                            a + 1,
                            b + 1,
                            c + 1,
                            if w.is_point() { "point" } else { "line" },
                            self.vertex_name(w)
                        ),
                    );
                }
            }
        }
        report
    }

    /// The dual configuration: points and lines exchanged, colors kept.
    pub fn dual(&self) -> ColoredConfiguration {
        let incidences = self
            .incidences
            .iter()
            .map(|inc| Incidence { point: inc.line, line: inc.point, color: inc.color })
            .collect();
        ColoredConfiguration::new(
            self.k,
            self.line_names.clone(),
            self.point_names.clone(),
            incidences,
        )
        .expect("dualizing preserves structural soundness")
    }
}

/// Isomorphism between two colored configurations: bijections on points and
/// lines plus a color permutation carrying incidences to incidences.
#[derive(Clone, Debug)]
pub struct ConfigIsomorphism {
    /// `point_map[p]` = image point id in the target.
    pub point_map: Vec<usize>,
    /// `line_map[l]` = image line id in the target.
    pub line_map: Vec<usize>,
    /// `color_map[c]` = image color in the target.
    pub color_map: Vec<usize>,
}

impl ConfigIsomorphism {
    pub fn is_color_identity(&self) -> bool {
        self.color_map.iter().enumerate().all(|(i, &c)| i == c)
    }
}

impl ColoredConfiguration {
    /// Searches for an isomorphism onto `other`.
    ///
    /// Deterministic: color permutations are tried in lexicographic order
    /// starting with the identity, and for each permutation the image of
    /// point 0 is tried in ascending id order; the first isomorphism found is
    /// returned.  Both configurations must be valid (connected and properly
    /// colored); degrees above 8 are refused because the color permutation
    /// space grows factorially.
    pub fn isomorphism(
        &self,
        other: &ColoredConfiguration,
    ) -> Result<Option<ConfigIsomorphism>> {
        if self.k > 8 {
            return Err(Error::LimitExceeded(format!(
                "isomorphism search needs k <= 8, got k = {}",
                self.k
            )));
        }
        if self.k != other.k
            || self.num_points() != other.num_points()
            || self.num_lines() != other.num_lines()
        {
            return Ok(None);
        }
        if self.num_points() == 0 {
            return Ok(Some(ConfigIsomorphism {
                point_map: vec![],
                line_map: vec![],
                color_map: (0..self.k).collect(),
            }));
        }
        for sigma in (0..self.k).permutations(self.k.max(1)) {
            for q0 in 0..other.num_points() {
                if let Some(iso) = self.try_map(other, &sigma, q0) {
                    return Ok(Some(iso));
                }
            }
        }
        Ok(None)
    }

    /// Attempts the unique color-respecting extension of `Point(0) -> q0`.
    fn try_map(
        &self,
        other: &ColoredConfiguration,
        sigma: &[usize],
        q0: usize,
    ) -> Option<ConfigIsomorphism> {
        let np = self.num_points();
        let nl = self.num_lines();
        let mut point_map = vec![usize::MAX; np];
        let mut line_map = vec![usize::MAX; nl];
        point_map[0] = q0;
        let mut queue = vec![Vertex::Point(0)];
        while let Some(v) = queue.pop() {
            let w = match v {
                Vertex::Point(p) => Vertex::Point(point_map[p]),
                Vertex::Line(l) => Vertex::Line(line_map[l]),
            };
            for c in 0..self.k {
                let vn = self.phi_checked(v, c)?;
                let wn = other.phi_checked(w, sigma[c])?;
                let slot = match vn {
                    Vertex::Point(p) => &mut point_map[p],
                    Vertex::Line(l) => &mut line_map[l],
                };
                if *slot == usize::MAX {
                    *slot = wn.id();
                    queue.push(vn);
                } else if *slot != wn.id() {
                    return None;
                }
            }
        }
        // Connectivity of a valid source covers every vertex; stay defensive.
        if point_map.contains(&usize::MAX) || line_map.contains(&usize::MAX) {
            return None;
        }
        // Bijectivity.
        let mut seen = vec![false; np];
        for &q in &point_map {
            if seen[q] {
                return None;
            }
            seen[q] = true;
        }
        let mut seen = vec![false; nl];
        for &m in &line_map {
            if seen[m] {
                return None;
            }
            seen[m] = true;
        }
        // Full incidence/color preservation.
        for inc in &self.incidences {
            let ok = other.point_slots[point_map[inc.point]][sigma[inc.color]]
                .contains(&line_map[inc.line]);
            if !ok {
                return None;
            }
        }
        Some(ConfigIsomorphism {
            point_map,
            line_map,
            color_map: sigma.to_vec(),
        })
    }
}

/// Action of a finite abelian group on a colored configuration.
///
/// Each group element acts by a point permutation and a line permutation;
/// a single color permutation is shared by all elements (the identity for
/// every translation action in this crate).
#[derive(Clone, Debug)]
pub struct GroupActionOnConfig {
    pub group: crate::algebra::FiniteAbelianGroup,
    /// `point_perms[g][p]` = image of point `p` under the element of
    /// canonical index `g`; same layout for lines.
    pub point_perms: Vec<Vec<usize>>,
    pub line_perms: Vec<Vec<usize>>,
    pub color_perm: Vec<usize>,
}

impl GroupActionOnConfig {
    /// Checks that this is a free action by color-preserving automorphisms:
    /// identity element acts as the identity, the composition law holds,
    /// every element preserves incidences and colors, and no non-identity
    /// element fixes a point.
    pub fn verify_free_action(&self, config: &ColoredConfiguration) -> ValidationReport {
        let mut report = ValidationReport::default();
        let order = self.group.order() as usize;
        if self.point_perms.len() != order || self.line_perms.len() != order {
            report.push_violation(
                "action shape",
                format!(
                    "expected {order} point and line permutations, got {} and {}",
                    self.point_perms.len(),
                    self.line_perms.len()
                ),
            );
            return report;
        }
        let np = config.num_points();
        let nl = config.num_lines();
        for (g, (pp, lp)) in self.point_perms.iter().zip(&self.line_perms).enumerate() {
            if pp.len() != np || lp.len() != nl {
                report.push_violation(
                    "action shape",
                    format!("element {g} does not act on all vertices"),
                );
                return report;
            }
            let mut seen = vec![false; np];
            for &q in pp {
                if q >= np || seen[q] {
                    report.push_violation(
                        "bijectivity",
                        format!("element {g} is not a point permutation"),
                    );
                    return report;
                }
                seen[q] = true;
            }
            let mut seen = vec![false; nl];
            for &m in lp {
                if m >= nl || seen[m] {
                    report.push_violation(
                        "bijectivity",
                        format!("element {g} is not a line permutation"),
                    );
                    return report;
                }
                seen[m] = true;
            }
        }
        if self.color_perm.len() != config.k()
            || {
                let mut sorted = self.color_perm.clone();
                sorted.sort_unstable();
                sorted != (0..config.k()).collect::<Vec<_>>()
            }
        {
            report.push_violation(
                "color permutation",
                format!("{:?} is not a permutation of the colors", self.color_perm),
            );
            return report;
        }
        let zero = self.group.index_of(&self.group.zero()) as usize;
        if self.point_perms[zero].iter().enumerate().any(|(i, &q)| i != q)
            || self.line_perms[zero].iter().enumerate().any(|(i, &m)| i != m)
        {
            report.push_violation(
                "identity",
                "the identity element does not act as the identity".to_string(),
            );
        }
        // Composition law on all element pairs.
        for a in self.group.elements() {
            let ia = self.group.index_of(&a) as usize;
            for b in self.group.elements() {
                let ib = self.group.index_of(&b) as usize;
                let iab = self.group.index_of(&self.group.add(&a, &b)) as usize;
                let composed_ok = (0..np).all(|p| {
                    self.point_perms[ib][self.point_perms[ia][p]]
                        == self.point_perms[iab][p]
                }) && (0..nl).all(|l| {
                    self.line_perms[ib][self.line_perms[ia][l]]
                        == self.line_perms[iab][l]
                });
                if !composed_ok {
                    report.push_violation(
                        "composition",
                        format!(
                            "acting by {} then {} differs from acting by their sum",
                            self.group.format_element(&a),
                            self.group.format_element(&b)
                        ),
                    );
                }
            }
        }
        // Automorphism + color preservation, and freeness on points.
        for (g, (pp, lp)) in self.point_perms.iter().zip(&self.line_perms).enumerate() {
            for inc in config.incidences() {
                let image_ok = config.point_slots[pp[inc.point]]
                    [self.color_perm[inc.color]]
                .contains(&lp[inc.line]);
                if !image_ok {
                    report.push_violation(
                        "automorphism",
                        format!(
                            "element {g} breaks incidence ({}, {}) of color {}",
                            config.point_name(inc.point),
                            config.line_name(inc.line),
                            inc.color + 1
                        ),
                    );
                }
            }
            if g != zero {
                if let Some(p) = (0..np).find(|&p| pp[p] == p) {
                    report.push_violation(
                        "freeness",
                        format!(
                            "non-identity element {g} fixes point {}",
                            config.point_name(p)
                        ),
                    );
                }
            }
        }
        report
    }
}
