//! Constructions of colored configurations: planar difference sets (with the
//! classical trace construction and exhaustive search) and commutative
//! semifields.
//!
//! A planar difference set $A \subseteq G$ represents every nonzero group
//! element exactly once as a difference $a_1 - a_2$, forcing
//! $|G| = s^2 - s + 1$ for $s = |A|$.  It yields a projective plane of order
//! $s - 1$ on point and line set $G$, with $p$ on $l$ iff $p - l \in A$;
//! coloring an incidence by the position of $p - l$ in $A$ makes the plane a
//! colored configuration, and $G$ acts freely on it by translation.
//!
//! A commutative semifield (a commutative, not necessarily associative
//! division algebra with identity) of order $q$ yields a colored
//! $q$-configuration on the $q^2$ points $(x, y)$ and lines $[a, b]$ of the
//! affine plane $y = a \cdot x + b$, colored by $\chi = x + a$.

use std::collections::BTreeSet;

use crate::algebra::{prime_power, FiniteAbelianGroup, FiniteField, GroupElement};
use crate::config::{ColoredConfiguration, GroupActionOnConfig, Incidence, ValidationReport};
use crate::correspondence::SidonSet;
use crate::error::{Error, Result};

/// A subset of a finite abelian group, stored sorted by canonical element
/// index, meant to be a planar difference set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceSet {
    group: FiniteAbelianGroup,
    elements: Vec<GroupElement>,
}

impl DifferenceSet {
    pub fn new(group: FiniteAbelianGroup, mut elements: Vec<GroupElement>) -> Result<Self> {
        if elements.len() < 2 {
            return Err(Error::invalid("a difference set needs at least 2 elements"));
        }
        elements.sort_by_key(|e| group.index_of(e));
        for w in elements.windows(2) {
            if w[0] == w[1] {
                return Err(Error::invalid(format!(
                    "element {} listed more than once",
                    group.format_element(&w[0])
                )));
            }
        }
        Ok(DifferenceSet { group, elements })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// Elements in ascending canonical index order.
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    /// Checks the planarity condition: every nonzero group element has
    /// exactly one ordered representation $a_1 - a_2$.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let order = self.group.order() as usize;
        let mut reps: Vec<Vec<(usize, usize)>> = vec![Vec::new(); order];
        for (i, a) in self.elements.iter().enumerate() {
            for (j, b) in self.elements.iter().enumerate() {
                if i == j {
                    continue;
                }
                let d = self.group.sub(a, b);
                reps[self.group.index_of(&d) as usize].push((i, j));
            }
        }
        for g in 1..order {
            let pairs = &reps[g];
            let element = self
                .group
                .element_at(g as u64)
                .expect("index in range");
            match pairs.len() {
                1 => {}
                0 => report.push_violation(
                    "difference-coverage",
                    format!(
                        "element {} has no representation as a difference",
                        self.group.format_element(&element)
                    ),
                ),
                _ => {
                    let shown: Vec<String> = pairs
                        .iter()
                        .take(2)
                        .map(|&(i, j)| {
                            format!(
                                "{} - {}",
                                self.group.format_element(&self.elements[i]),
                                self.group.format_element(&self.elements[j])
                            )
                        })
                        .collect();
                    report.push_violation(
                        "difference-uniqueness",
                        format!(
                            "element {} has {} representations ({})",
                            self.group.format_element(&element),
                            pairs.len(),
                            shown.join(", ")
                        ),
                    );
                }
            }
        }
        report
    }

    /// Lexicographically least translate containing 0 (by sorted index
    /// tuples).  Canonical forms are equal iff the sets are translates.
    pub fn canonical_form(&self) -> DifferenceSet {
        let best = self
            .elements
            .iter()
            .map(|b| {
                let mut translated: Vec<u64> = self
                    .elements
                    .iter()
                    .map(|a| self.group.index_of(&self.group.sub(a, b)))
                    .collect();
                translated.sort_unstable();
                translated
            })
            .min()
            .expect("difference sets are nonempty");
        let elements = best
            .into_iter()
            .map(|i| self.group.element_at(i).expect("index in range"))
            .collect();
        DifferenceSet { group: self.group.clone(), elements }
    }

    /// The same subset viewed as a Sidon set (requires $0 \in A$; use
    /// [`DifferenceSet::canonical_form`] first if necessary).
    pub fn to_sidon_set(&self) -> Result<SidonSet> {
        SidonSet::new(self.group.clone(), self.elements.clone())
    }
}

/// The colored configuration of a planar difference set together with the
/// free translation action of its group.
///
/// Points and lines are the group elements; $p$ lies on $l$ with color $c$
/// iff $p - l$ is the $c$-th smallest element of the set.  The returned
/// configuration is fully validated.
pub fn config_from_difference_set(
    ds: &DifferenceSet,
) -> Result<(ColoredConfiguration, GroupActionOnConfig)> {
    let group = ds.group();
    let n = group.order() as usize;
    let k = ds.elements().len();
    let names: Vec<String> = group.elements().map(|e| group.format_element(&e)).collect();
    let mut incidences = Vec::with_capacity(n * k);
    for p in 0..n {
        let point = group.element_at(p as u64).expect("index in range");
        for (c, a) in ds.elements().iter().enumerate() {
            let line = group.sub(&point, a);
            incidences.push(Incidence {
                point: p,
                line: group.index_of(&line) as usize,
                color: c,
            });
        }
    }
    let config = ColoredConfiguration::new(k, names.clone(), names, incidences)?;
    let structure = config.validate_configuration();
    if !structure.ok() {
        return Err(Error::invalid(format!(
            "the set is not a planar difference set: {}",
            structure.violations[0].witness
        )));
    }
    let coloring = config.validate_coloring();
    if !coloring.ok() {
        return Err(Error::invalid(format!(
            "the difference-set coloring is invalid: {}",
            coloring.violations[0].witness
        )));
    }

    Ok((config, translation_action(group, k)?))
}

/// The translation action of a group on a configuration whose points and
/// lines are both indexed by canonical element order: element $g$ sends
/// vertex $v$ to $v + g$, fixing every color.
pub fn translation_action(
    group: &FiniteAbelianGroup,
    num_colors: usize,
) -> Result<GroupActionOnConfig> {
    let n = group.order() as usize;
    let mut point_perms = Vec::with_capacity(n);
    for g in 0..n {
        let shift = group.element_at(g as u64)?;
        let perm: Vec<usize> = (0..n)
            .map(|p| {
                let e = group.element_at(p as u64).expect("index in range");
                group.index_of(&group.add(&e, &shift)) as usize
            })
            .collect();
        point_perms.push(perm);
    }
    Ok(GroupActionOnConfig {
        group: group.clone(),
        line_perms: point_perms.clone(),
        point_perms,
        color_perm: (0..num_colors).collect(),
    })
}

/// The classical perfect difference set of order $q$: exponents $i$ modulo
/// $q^2 + q + 1$ for which $\mathrm{Tr}_{\mathbb{F}_{q^3}/\mathbb{F}_q}(\omega^i) = 0$,
/// with $\omega$ the canonical primitive element.
///
/// Orders up to 16 are supported.
pub fn singer_difference_set(q: u64) -> Result<DifferenceSet> {
    if !(2..=16).contains(&q) {
        return Err(Error::invalid(format!(
            "difference-set order must be between 2 and 16, got {q}"
        )));
    }
    if prime_power(q).is_none() {
        return Err(Error::invalid(format!("{q} is not a prime power")));
    }
    let field = FiniteField::new(q * q * q)?;
    let omega = field.primitive_element();
    let n = q * q + q + 1;
    let group = FiniteAbelianGroup::cyclic(n)?;
    let mut elements = Vec::new();
    for i in 0..n {
        let x = field.pow(&omega, i);
        if field.is_zero(&field.trace_to_subfield(q, &x)?) {
            elements.push(group.element_at(i)?);
        }
    }
    if elements.len() as u64 != q + 1 {
        return Err(Error::internal(format!(
            "trace-zero exponent count {} differs from {}",
            elements.len(),
            q + 1
        )));
    }
    DifferenceSet::new(group, elements)
}

fn canonical_cyclic_translate(n: usize, set: &[usize]) -> Vec<u64> {
    set.iter()
        .map(|&b| {
            let mut t: Vec<u64> = set.iter().map(|&a| ((a + n - b) % n) as u64).collect();
            t.sort_unstable();
            t
        })
        .min()
        .expect("set is nonempty")
}

fn extend_difference_set(
    n: usize,
    size: usize,
    current: &mut Vec<usize>,
    used: &mut [bool],
    found: &mut BTreeSet<Vec<u64>>,
) {
    if current.len() == size {
        found.insert(canonical_cyclic_translate(n, current));
        return;
    }
    let start = current.last().map_or(0, |&l| l + 1);
    'candidates: for x in start..n {
        let mut marked: Vec<usize> = Vec::with_capacity(2 * current.len());
        for &p in current.iter() {
            let d = x - p;
            for diff in [d, n - d] {
                if used[diff] {
                    for &m in &marked {
                        used[m] = false;
                    }
                    continue 'candidates;
                }
                used[diff] = true;
                marked.push(diff);
            }
        }
        current.push(x);
        extend_difference_set(n, size, current, used, found);
        current.pop();
        for &m in &marked {
            used[m] = false;
        }
    }
}

/// All planar difference sets of the given size in $\mathbb{Z}_n$, up to
/// translation, each reported by its canonical translate (sorted, lex-least,
/// containing 0).  Empty unless $n = s^2 - s + 1$; orders up to 200 are
/// supported.
pub fn search_difference_sets(n: u64, size: usize) -> Result<Vec<DifferenceSet>> {
    if !(2..=200).contains(&n) {
        return Err(Error::invalid(format!(
            "search supports group orders 2..=200, got {n}"
        )));
    }
    if size < 2 {
        return Err(Error::invalid("difference sets need at least 2 elements"));
    }
    // A planar difference set of size s covers the s(s-1) nonzero elements
    // exactly once, so only n = s^2 - s + 1 admits one.
    if n != (size * size - size + 1) as u64 {
        return Ok(Vec::new());
    }
    let n = n as usize;
    // Every translation class has a representative containing {0, 1}: the
    // difference 1 is realized by some pair, and shifting its subtrahend to
    // the origin lands both.  The canonical translate is one such member.
    let mut found = BTreeSet::new();
    let mut used = vec![false; n];
    used[1] = true;
    used[n - 1] = true;
    let mut current = vec![0usize, 1];
    extend_difference_set(n, size, &mut current, &mut used, &mut found);
    let group = FiniteAbelianGroup::cyclic(n as u64)?;
    found
        .into_iter()
        .map(|indices| {
            let elements = indices
                .into_iter()
                .map(|i| group.element_at(i))
                .collect::<Result<Vec<_>>>()?;
            DifferenceSet::new(group.clone(), elements)
        })
        .collect()
}

fn binomial_exceeds(n: u64, k: u64, cap: u128) -> bool {
    let mut acc: u128 = 1;
    for i in 0..k.min(n) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > cap {
            return true;
        }
    }
    false
}

fn extend_sidon_set(
    elements: &[GroupElement],
    diff_table: &[Vec<usize>],
    size: usize,
    current: &mut Vec<usize>,
    used: &mut [bool],
    group: &FiniteAbelianGroup,
    found: &mut BTreeSet<Vec<u64>>,
) -> Result<()> {
    if current.len() == size {
        let members: Vec<GroupElement> =
            current.iter().map(|&i| elements[i].clone()).collect();
        if group.generates(&members)? {
            let canonical = current
                .iter()
                .map(|&b| {
                    let mut t: Vec<u64> = current
                        .iter()
                        .map(|&a| diff_table[a][b] as u64)
                        .collect();
                    t.sort_unstable();
                    t
                })
                .min()
                .expect("sets are nonempty");
            found.insert(canonical);
        }
        return Ok(());
    }
    let start = current.last().map_or(0, |&l| l + 1);
    'candidates: for x in start..elements.len() {
        let mut marked: Vec<usize> = Vec::with_capacity(2 * current.len());
        for &p in current.iter() {
            for diff in [diff_table[x][p], diff_table[p][x]] {
                if used[diff] {
                    for &m in &marked {
                        used[m] = false;
                    }
                    continue 'candidates;
                }
                used[diff] = true;
                marked.push(diff);
            }
        }
        current.push(x);
        extend_sidon_set(elements, diff_table, size, current, used, group, found)?;
        current.pop();
        for &m in &marked {
            used[m] = false;
        }
    }
    Ok(())
}

/// All Sidon sets of the given size in the group, up to translation, each
/// reported by its canonical translate (sorted by element index, lex-least,
/// containing 0).  Only generating sets are reported; group orders up to
/// 1000 are supported, and the subset space must stay below $10^7$.
pub fn search_sidon_sets(
    group: &FiniteAbelianGroup,
    size: usize,
) -> Result<Vec<SidonSet>> {
    let order = group.order();
    if order > 1000 {
        return Err(Error::LimitExceeded(format!(
            "Sidon search supports group orders up to 1000, got {order}"
        )));
    }
    if size < 2 {
        return Err(Error::invalid("Sidon sets need at least 2 elements"));
    }
    // s(s-1) distinct ordered differences must fit among nonzero elements.
    if (size * (size - 1)) as u64 > order - 1 {
        return Ok(Vec::new());
    }
    if binomial_exceeds(order - 1, size as u64 - 1, 10_000_000) {
        return Err(Error::LimitExceeded(format!(
            "searching size-{size} subsets of a group of order {order} is too large"
        )));
    }
    let elements: Vec<GroupElement> = group.elements().collect();
    let n = order as usize;
    let mut diff_table = vec![vec![0usize; n]; n];
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            diff_table[i][j] = group.index_of(&group.sub(a, b)) as usize;
        }
    }
    let mut found = BTreeSet::new();
    let mut used = vec![false; n];
    let mut current = vec![0usize];
    extend_sidon_set(
        &elements,
        &diff_table,
        size,
        &mut current,
        &mut used,
        group,
        &mut found,
    )?;
    found
        .into_iter()
        .map(|indices| {
            let members = indices
                .into_iter()
                .map(|i| group.element_at(i))
                .collect::<Result<Vec<_>>>()?;
            SidonSet::new(group.clone(), members)
        })
        .collect()
}

/// A finite commutative semifield presented by its addition and
/// multiplication tables over element indices $0, \dots, q-1$, with 0 the
/// additive and 1 the multiplicative identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semifield {
    q: usize,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
}

impl Semifield {
    /// Accepts well-shaped tables; axioms are checked by
    /// [`Semifield::validate`].
    pub fn new(add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>) -> Result<Self> {
        let q = add.len();
        if !(2..=256).contains(&q) {
            return Err(Error::invalid(format!(
                "semifield order must be between 2 and 256, got {q}"
            )));
        }
        for (name, table) in [("addition", &add), ("multiplication", &mul)] {
            if table.len() != q || table.iter().any(|row| row.len() != q) {
                return Err(Error::invalid(format!("{name} table is not {q} x {q}")));
            }
            if table.iter().flatten().any(|&e| e >= q) {
                return Err(Error::invalid(format!(
                    "{name} table entry out of range 0..{q}"
                )));
            }
        }
        Ok(Semifield { q, add, mul })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    /// Additive inverse.
    pub fn neg(&self, a: usize) -> usize {
        (0..self.q)
            .find(|&b| self.add[a][b] == 0)
            .expect("validated semifields have additive inverses")
    }

    /// Checks the commutative semifield axioms: $(S, +)$ is an abelian group
    /// with identity 0, multiplication is commutative with identity 1 and no
    /// zero divisors, and both distributive laws hold.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let q = self.q;
        for a in 0..q {
            if self.add[0][a] != a {
                report.push_violation(
                    "additive-identity",
                    format!("0 + {a} = {} instead of {a}", self.add[0][a]),
                );
            }
            if !(0..q).any(|b| self.add[a][b] == 0) {
                report.push_violation(
                    "additive-inverse",
                    format!("{a} has no additive inverse"),
                );
            }
            if self.mul[1][a] != a {
                report.push_violation(
                    "multiplicative-identity",
                    format!("1 * {a} = {} instead of {a}", self.mul[1][a]),
                );
            }
            if self.mul[0][a] != 0 || self.mul[a][0] != 0 {
                report.push_violation(
                    "zero-annihilation",
                    format!("0 * {a} or {a} * 0 is nonzero"),
                );
            }
        }
        for a in 0..q {
            for b in 0..q {
                if self.add[a][b] != self.add[b][a] {
                    report.push_violation(
                        "additive-commutativity",
                        format!("{a} + {b} = {} but {b} + {a} = {}", self.add[a][b], self.add[b][a]),
                    );
                }
                if self.mul[a][b] != self.mul[b][a] {
                    report.push_violation(
                        "multiplicative-commutativity",
                        format!("{a} * {b} = {} but {b} * {a} = {}", self.mul[a][b], self.mul[b][a]),
                    );
                }
                if a != 0 && b != 0 && self.mul[a][b] == 0 {
                    report.push_violation(
                        "zero-divisors",
                        format!("{a} * {b} = 0 with both factors nonzero"),
                    );
                }
            }
        }
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    if self.add[self.add[a][b]][c] != self.add[a][self.add[b][c]] {
                        report.push_violation(
                            "additive-associativity",
                            format!("({a} + {b}) + {c} differs from {a} + ({b} + {c})"),
                        );
                    }
                    if self.mul[a][self.add[b][c]] != self.add[self.mul[a][b]][self.mul[a][c]] {
                        report.push_violation(
                            "left-distributivity",
                            format!("{a} * ({b} + {c}) differs from {a}*{b} + {a}*{c}"),
                        );
                    }
                    if self.mul[self.add[a][b]][c] != self.add[self.mul[a][c]][self.mul[b][c]] {
                        report.push_violation(
                            "right-distributivity",
                            format!("({a} + {b}) * {c} differs from {a}*{c} + {b}*{c}"),
                        );
                    }
                }
            }
        }
        report
    }
}

/// The semifield of the finite field $\mathbb{F}_q$, with elements indexed
/// by their polynomial encoding.
pub fn semifield_from_field(q: u64) -> Result<Semifield> {
    if q > 256 {
        return Err(Error::invalid(format!(
            "semifield order must be at most 256, got {q}"
        )));
    }
    let field = FiniteField::new(q)?;
    let elems: Vec<_> = field.elements().collect();
    let table = |f: &dyn Fn(usize, usize) -> u64| -> Vec<Vec<usize>> {
        (0..q as usize)
            .map(|a| (0..q as usize).map(|b| f(a, b) as usize).collect())
            .collect()
    };
    let add = table(&|a, b| field.encoding(&field.add(&elems[a], &elems[b])));
    let mul = table(&|a, b| field.encoding(&field.mul(&elems[a], &elems[b])));
    Semifield::new(add, mul)
}

/// The colored $q$-configuration of a commutative semifield: points $(x, y)$
/// and lines $[a, b]$ of the affine plane $y = a \cdot x + b$, with the
/// incidence colored by $x + a$.
///
/// Point $(x, y)$ gets id $xq + y$ and name `x.y`; line $[a, b]$ gets id
/// $aq + b$ and name `a.b`.  The result is fully validated, so a table that
/// breaks the required axioms is rejected with a witness.
pub fn config_from_semifield(s: &Semifield) -> Result<ColoredConfiguration> {
    let q = s.q();
    let axioms = s.validate();
    if !axioms.ok() {
        return Err(Error::invalid(format!(
            "not a commutative semifield: {}",
            axioms.violations[0].witness
        )));
    }
    let point_names: Vec<String> = (0..q * q)
        .map(|id| format!("{}.{}", id / q, id % q))
        .collect();
    let mut incidences = Vec::with_capacity(q * q * q);
    for x in 0..q {
        for y in 0..q {
            for a in 0..q {
                let b = s.add(y, s.neg(s.mul(a, x)));
                incidences.push(Incidence {
                    point: x * q + y,
                    line: a * q + b,
                    color: s.add(x, a),
                });
            }
        }
    }
    let config =
        ColoredConfiguration::new(q, point_names.clone(), point_names, incidences)?;
    let structure = config.validate_configuration();
    if !structure.ok() {
        return Err(Error::invalid(format!(
            "semifield does not produce a valid configuration: {}",
            structure.violations[0].witness
        )));
    }
    let coloring = config.validate_coloring();
    if !coloring.ok() {
        return Err(Error::invalid(format!(
            "semifield coloring is invalid: {}",
            coloring.violations[0].witness
        )));
    }
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Vertex;

    fn cyclic_set(n: u64, elements: &[u64]) -> DifferenceSet {
        let group = FiniteAbelianGroup::cyclic(n).unwrap();
        let elements = elements
            .iter()
            .map(|&i| group.element_at(i).unwrap())
            .collect();
        DifferenceSet::new(group, elements).unwrap()
    }

    fn indices(group: &FiniteAbelianGroup, elements: &[GroupElement]) -> Vec<u64> {
        elements.iter().map(|e| group.index_of(e)).collect()
    }

    #[test]
    fn planarity_validation() {
        assert!(cyclic_set(7, &[0, 1, 3]).validate().ok());
        assert!(cyclic_set(13, &[0, 1, 3, 9]).validate().ok());
        let report = cyclic_set(7, &[0, 1, 2]).validate();
        assert!(!report.ok());
        assert!(report
            .violations
            .iter()
            .any(|v| v.rule == "difference-uniqueness" && v.witness.contains("element 1")));
        assert!(report
            .violations
            .iter()
            .any(|v| v.rule == "difference-coverage" && v.witness.contains("element 3")));
    }

    #[test]
    fn canonical_form_is_translation_invariant() {
        let a = cyclic_set(7, &[2, 3, 5]);
        assert_eq!(
            indices(a.group(), a.canonical_form().elements()),
            vec![0, 1, 3]
        );
        let b = cyclic_set(7, &[1, 2, 4]);
        assert_eq!(
            indices(b.group(), b.canonical_form().elements()),
            vec![0, 1, 3]
        );
    }

    #[test]
    fn difference_set_configuration() {
        let (config, action) = config_from_difference_set(&cyclic_set(7, &[0, 1, 3])).unwrap();
        assert_eq!(config.k(), 3);
        assert_eq!(config.num_points(), 7);
        assert_eq!(config.num_lines(), 7);
        assert!(config.validate_configuration().ok());
        assert!(config.validate_coloring().ok());
        // Point 0 lies on line 6 with color 1: 0 - 6 = 1.
        assert_eq!(config.phi(Vertex::Point(0), 1), Vertex::Line(6));
        assert!(action.verify_free_action(&config).ok());
    }

    #[test]
    fn non_planar_set_is_rejected() {
        let err = config_from_difference_set(&cyclic_set(7, &[0, 1, 2])).unwrap_err();
        assert!(err.to_string().contains("planar"));
    }

    #[test]
    fn triangle_plane_of_order_one() {
        let (config, _) = config_from_difference_set(&cyclic_set(3, &[0, 1])).unwrap();
        assert_eq!(config.k(), 2);
        assert!(config.validate_configuration().ok());
        assert!(config.validate_coloring().ok());
    }

    #[test]
    fn trace_zero_sets_are_frozen() {
        let cases: &[(u64, &[u64])] = &[
            (2, &[1, 2, 4]),
            (3, &[0, 1, 3, 9]),
            (4, &[3, 6, 7, 12, 14]),
            (5, &[3, 4, 7, 13, 15, 20]),
        ];
        for &(q, expected) in cases {
            let ds = singer_difference_set(q).unwrap();
            assert_eq!(ds.group().order(), q * q + q + 1);
            assert_eq!(indices(ds.group(), ds.elements()), expected, "q = {q}");
            assert!(ds.validate().ok(), "q = {q}");
        }
    }

    #[test]
    fn trace_construction_is_planar_for_larger_orders() {
        for q in [7u64, 8, 9] {
            let ds = singer_difference_set(q).unwrap();
            assert_eq!(ds.elements().len() as u64, q + 1);
            assert!(ds.validate().ok(), "q = {q}");
        }
    }

    #[test]
    fn trace_construction_guards() {
        assert!(singer_difference_set(6).is_err());
        assert!(singer_difference_set(17).is_err());
        assert!(singer_difference_set(1).is_err());
    }

    #[test]
    fn exhaustive_search_is_frozen() {
        let sets: Vec<Vec<u64>> = search_difference_sets(7, 3)
            .unwrap()
            .iter()
            .map(|d| indices(d.group(), d.elements()))
            .collect();
        assert_eq!(sets, vec![vec![0, 1, 3], vec![0, 1, 5]]);

        let sets: Vec<Vec<u64>> = search_difference_sets(13, 4)
            .unwrap()
            .iter()
            .map(|d| indices(d.group(), d.elements()))
            .collect();
        assert_eq!(
            sets,
            vec![
                vec![0, 1, 3, 9],
                vec![0, 1, 4, 6],
                vec![0, 1, 5, 11],
                vec![0, 1, 8, 10],
            ]
        );

        let sets: Vec<Vec<u64>> = search_difference_sets(21, 5)
            .unwrap()
            .iter()
            .map(|d| indices(d.group(), d.elements()))
            .collect();
        assert_eq!(sets, vec![vec![0, 1, 4, 14, 16], vec![0, 1, 6, 8, 18]]);
    }

    #[test]
    fn search_handles_impossible_orders() {
        assert!(search_difference_sets(11, 4).unwrap().is_empty());
        assert!(search_difference_sets(9, 3).unwrap().is_empty());
        assert_eq!(search_difference_sets(3, 2).unwrap().len(), 1);
        assert!(search_difference_sets(201, 15).is_err());
    }

    #[test]
    fn trace_set_appears_in_the_search() {
        let canonical = singer_difference_set(4).unwrap().canonical_form();
        assert_eq!(
            indices(canonical.group(), canonical.elements()),
            vec![0, 1, 6, 8, 18]
        );
        let found: Vec<Vec<u64>> = search_difference_sets(21, 5)
            .unwrap()
            .iter()
            .map(|d| indices(d.group(), d.elements()))
            .collect();
        assert!(found.contains(&vec![0, 1, 6, 8, 18]));
    }

    #[test]
    fn sidon_search_frozen_classes() {
        let z7 = FiniteAbelianGroup::cyclic(7).unwrap();
        let found: Vec<Vec<u64>> = search_sidon_sets(&z7, 3)
            .unwrap()
            .iter()
            .map(|s| indices(s.group(), s.elements()))
            .collect();
        assert_eq!(found, vec![vec![0, 1, 3], vec![0, 1, 5]]);

        let z8 = FiniteAbelianGroup::cyclic(8).unwrap();
        let found: Vec<Vec<u64>> = search_sidon_sets(&z8, 3)
            .unwrap()
            .iter()
            .map(|s| indices(s.group(), s.elements()))
            .collect();
        assert_eq!(found, vec![vec![0, 1, 3], vec![0, 1, 6]]);

        let z9 = FiniteAbelianGroup::cyclic(9).unwrap();
        assert_eq!(search_sidon_sets(&z9, 3).unwrap().len(), 6);

        let z33 = FiniteAbelianGroup::new(vec![3, 3]).unwrap();
        let found: Vec<Vec<u64>> = search_sidon_sets(&z33, 3)
            .unwrap()
            .iter()
            .map(|s| indices(s.group(), s.elements()))
            .collect();
        assert_eq!(
            found,
            vec![
                vec![0, 1, 3],
                vec![0, 1, 4],
                vec![0, 1, 5],
                vec![0, 1, 6],
                vec![0, 1, 7],
                vec![0, 1, 8],
                vec![0, 3, 7],
                vec![0, 3, 8],
            ]
        );

        let z13 = FiniteAbelianGroup::cyclic(13).unwrap();
        assert_eq!(search_sidon_sets(&z13, 4).unwrap().len(), 4);
        let z14 = FiniteAbelianGroup::cyclic(14).unwrap();
        assert_eq!(search_sidon_sets(&z14, 4).unwrap().len(), 2);
    }

    #[test]
    fn sidon_search_guards() {
        let z6 = FiniteAbelianGroup::cyclic(6).unwrap();
        // 3 * 2 = 6 differences cannot fit among 5 nonzero elements.
        assert!(search_sidon_sets(&z6, 3).unwrap().is_empty());
        let big = FiniteAbelianGroup::cyclic(1001).unwrap();
        assert!(search_sidon_sets(&big, 3).is_err());
        let z1000 = FiniteAbelianGroup::cyclic(1000).unwrap();
        assert!(matches!(
            search_sidon_sets(&z1000, 6),
            Err(Error::LimitExceeded(_))
        ));
    }

    #[test]
    fn field_semifield_tables() {
        let s = semifield_from_field(4).unwrap();
        assert!(s.validate().ok());
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(s.add(a, b), a ^ b);
            }
        }
        let mul: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| s.mul(a, b)).collect()).collect();
        assert_eq!(
            mul,
            vec![
                vec![0, 0, 0, 0],
                vec![0, 1, 2, 3],
                vec![0, 2, 3, 1],
                vec![0, 3, 1, 2],
            ]
        );
    }

    #[test]
    fn broken_tables_are_reported() {
        let mut s = semifield_from_field(3).unwrap();
        assert!(s.validate().ok());
        s.mul[2][2] = 0;
        let report = s.validate();
        assert!(!report.ok());
        assert!(report.violations.iter().any(|v| v.rule == "zero-divisors"
            || v.rule == "multiplicative-commutativity"
            || v.rule == "left-distributivity"));
        assert!(config_from_semifield(&s).is_err());
    }

    #[test]
    fn semifield_configuration_shape() {
        let s = semifield_from_field(3).unwrap();
        let config = config_from_semifield(&s).unwrap();
        assert_eq!(config.k(), 3);
        assert_eq!(config.num_points(), 9);
        assert_eq!(config.num_lines(), 9);
        assert_eq!(config.incidences().len(), 27);
        assert_eq!(config.point_name(5), "1.2");
        // Point (1, 2) lies on line [1, 1] (2 = 1*1 + 1) with color 1 + 1 = 2.
        assert!(config
            .incidences()
            .iter()
            .any(|i| i.point == 5 && i.line == 4 && i.color == 2));
    }

    #[test]
    fn semifield_configurations_validate_for_small_fields() {
        for q in [2u64, 4, 5] {
            let s = semifield_from_field(q).unwrap();
            let config = config_from_semifield(&s).unwrap();
            assert_eq!(config.num_points(), (q * q) as usize);
            assert!(config.validate_coloring().ok());
        }
    }
}
