//! The correspondence between radius-1 linear codes in $A_k$, Sidon sets in
//! finite abelian groups, and colored configurations.
//!
//! A full-rank sublattice $L \le A_k$ is *radius-1* when the $k^2+k+1$ unit
//! ball vectors $\{0\} \cup \{e_i - e_j\}$ fall into distinct cosets; this
//! happens exactly when the images $\beta_i$ of $e_i - e_{k+1}$ form a Sidon
//! set in $G = A_k / L$.  From such a code the quotient construction builds a
//! colored configuration on $G$ ($p$ on $l$ with color $i$ iff
//! $p = l + \beta_i$), and conversely the labeling action of any colored
//! configuration has a stabilizer sublattice.  The two directions are
//! mutually inverse: code $\to$ configuration $\to$ code is the identity on
//! canonical bases, and configuration $\to$ code $\to$ configuration yields a
//! color-preserving isomorphism.

use crate::algebra::{FiniteAbelianGroup, GroupElement, IntegerMatrix};
use crate::config::{ColoredConfiguration, Incidence, ValidationReport};
use crate::constructions::{config_from_difference_set, DifferenceSet};
use crate::error::{Error, Result};
use crate::lattice::{LatticeAction, LatticeVector, LinearCode};

/// A Sidon set of order 2 in a finite abelian group: all ordered differences
/// of distinct elements are distinct, and the set generates the group.
/// Stored sorted by canonical element index; must contain 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SidonSet {
    group: FiniteAbelianGroup,
    elements: Vec<GroupElement>,
}

impl SidonSet {
    pub fn new(group: FiniteAbelianGroup, mut elements: Vec<GroupElement>) -> Result<Self> {
        if elements.len() < 2 {
            return Err(Error::invalid("a Sidon set needs at least 2 elements"));
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
        if !group.is_zero(&elements[0]) {
            return Err(Error::invalid("a Sidon set must contain 0"));
        }
        Ok(SidonSet { group, elements })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// Elements in ascending canonical index order (the first is 0).
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    /// Checks distinctness of ordered differences and that the set generates
    /// the group.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let order = self.group.order() as usize;
        let mut seen: Vec<Option<(usize, usize)>> = vec![None; order];
        for (i, a) in self.elements.iter().enumerate() {
            for (j, b) in self.elements.iter().enumerate() {
                if i == j {
                    continue;
                }
                let d = self.group.sub(a, b);
                let idx = self.group.index_of(&d) as usize;
                if let Some((pi, pj)) = seen[idx] {
                    report.push_violation(
                        "difference-uniqueness",
                        format!(
                            "difference {} has two representations ({} - {}, {} - {})",
                            self.group.format_element(&d),
                            self.group.format_element(&self.elements[pi]),
                            self.group.format_element(&self.elements[pj]),
                            self.group.format_element(a),
                            self.group.format_element(b)
                        ),
                    );
                } else {
                    seen[idx] = Some((i, j));
                }
            }
        }
        match self.group.generates(&self.elements) {
            Ok(true) => {}
            Ok(false) => report.push_violation(
                "generation",
                "the set does not generate the group".to_string(),
            ),
            Err(e) => report.push_violation("generation", e.to_string()),
        }
        report
    }
}

/// The code of a Sidon set $B = \{b_1 < \dots < b_{k+1}\}$:
/// $L = \{x \in A_k : \sum_i x_i b_i = 0\}$.
///
/// Translating $B$ leaves $L$ unchanged (the weights sum to zero), and the
/// result is always radius-1 with index $|G|$.
pub fn sidon_to_code(set: &SidonSet) -> Result<LinearCode> {
    let report = set.validate();
    if !report.ok() {
        return Err(Error::invalid(format!(
            "not a Sidon set: {}",
            report.violations[0].witness
        )));
    }
    let group = set.group();
    let m = set.elements().len();
    let rank = group.factors().len();
    // Left kernel of the map x -> (sum x_i, sum x_i b_i): stack the weight
    // column and the element coordinates over the group relations.
    let mut mat = IntegerMatrix::zero(m + rank, 1 + rank);
    for (i, b) in set.elements().iter().enumerate() {
        mat.set(i, 0, 1);
        for (j, &c) in b.coords().iter().enumerate() {
            mat.set(i, 1 + j, c as i64);
        }
    }
    for (j, &d) in group.factors().iter().enumerate() {
        mat.set(m + j, 1 + j, d as i64);
    }
    let kernel = mat.left_kernel()?;
    let rows: Vec<Vec<i64>> = kernel
        .row_vectors()
        .into_iter()
        .map(|u| u[..m].to_vec())
        .collect();
    let code = LinearCode::from_rows(rows)?;
    if code.index() != group.order() {
        return Err(Error::internal(format!(
            "code index {} differs from the group order {}",
            code.index(),
            group.order()
        )));
    }
    if !code.is_radius_one()? {
        return Err(Error::internal(
            "the code of a Sidon set must be radius-1".to_string(),
        ));
    }
    Ok(code)
}

/// Images of the ball directions $e_i - e_{k+1}$ (with 0 for $i = k+1$) in
/// the quotient $G = A_k / L$, for a radius-1 code.
fn ball_images(
    code: &LinearCode,
) -> Result<(FiniteAbelianGroup, Vec<GroupElement>)> {
    let (group, proj) = code.quotient()?;
    let m = code.k() + 1;
    let mut betas = Vec::with_capacity(m);
    for i in 0..m {
        let v = if i == m - 1 {
            LatticeVector::zero(m)
        } else {
            LatticeVector::step(m, i, m - 1)
        };
        betas.push(proj.apply(v.coords())?);
    }
    Ok((group, betas))
}

/// The Sidon set of a radius-1 code: the ball-direction images in
/// $A_k / L$, sorted by element index.
pub fn code_to_sidon(code: &LinearCode) -> Result<SidonSet> {
    if !code.is_radius_one()? {
        return Err(Error::invalid(
            "the code is not radius-1: ball vectors collide in the quotient",
        ));
    }
    let (group, betas) = ball_images(code)?;
    let set = SidonSet::new(group, betas)?;
    let report = set.validate();
    if !report.ok() {
        return Err(Error::internal(format!(
            "ball images of a radius-1 code must form a Sidon set: {}",
            report.violations[0].witness
        )));
    }
    Ok(set)
}

/// The quotient configuration of a radius-1 code: points and lines are the
/// elements of $G = A_k / L$, and $p$ lies on $l$ with color $i$ iff
/// $p = l + \beta_i$ (color indices follow the ball directions, so the last
/// color is the self-pairing $\beta_{k+1} = 0$).
pub fn code_to_config(code: &LinearCode) -> Result<ColoredConfiguration> {
    if !code.is_radius_one()? {
        return Err(Error::invalid(
            "the code is not radius-1: ball vectors collide in the quotient",
        ));
    }
    let (group, betas) = ball_images(code)?;
    let n = group.order() as usize;
    let m = betas.len();
    let names: Vec<String> = group.elements().map(|e| group.format_element(&e)).collect();
    let mut incidences = Vec::with_capacity(n * m);
    for l in 0..n {
        let line = group.element_at(l as u64).expect("index in range");
        for (c, beta) in betas.iter().enumerate() {
            let point = group.add(&line, beta);
            incidences.push(Incidence {
                point: group.index_of(&point) as usize,
                line: l,
                color: c,
            });
        }
    }
    let config = ColoredConfiguration::new(m, names.clone(), names, incidences)?;
    let structure = config.validate_configuration();
    if !structure.ok() {
        return Err(Error::internal(format!(
            "quotient of a radius-1 code must be a valid configuration: {}",
            structure.violations[0].witness
        )));
    }
    let coloring = config.validate_coloring();
    if !coloring.ok() {
        return Err(Error::internal(format!(
            "quotient coloring of a radius-1 code must be valid: {}",
            coloring.violations[0].witness
        )));
    }
    Ok(config)
}

/// The stabilizer code of a configuration's labeling action.
pub fn config_to_code(config: &ColoredConfiguration) -> Result<LinearCode> {
    let action = LatticeAction::build(config)?;
    action.stabilizer_code()
}

/// Result of sending a configuration through the code correspondence and
/// back.
#[derive(Clone, Debug)]
pub struct ConfigRoundtrip {
    /// Stabilizer code of the original configuration.
    pub code: LinearCode,
    /// Whether the rebuilt configuration is isomorphic to the original.
    pub isomorphic: bool,
    /// Whether some isomorphism preserves every color.
    pub identity_colors: bool,
}

/// Sends a configuration to its code and back, reporting whether the
/// original is recovered.
pub fn roundtrip_config(config: &ColoredConfiguration) -> Result<ConfigRoundtrip> {
    let code = config_to_code(config)?;
    let rebuilt = code_to_config(&code)?;
    let iso = config.isomorphism(&rebuilt)?;
    Ok(ConfigRoundtrip {
        code,
        isomorphic: iso.is_some(),
        identity_colors: iso.map_or(false, |i| i.is_color_identity()),
    })
}

/// Recovers a planar difference set from a projective-plane configuration
/// (one with $k^2 + k + 1$ points for $k + 1$ colors).
///
/// The stabilizer code must be perfect; its Sidon set then covers every
/// nonzero difference exactly once.  The recovered set is cross-checked by
/// rebuilding its configuration and matching it against the input.
pub fn recover_difference_set(config: &ColoredConfiguration) -> Result<DifferenceSet> {
    let m = config.k();
    if m < 2 {
        return Err(Error::invalid("recovery needs at least 2 colors"));
    }
    let k = m - 1;
    let expected = k * k + k + 1;
    if config.num_points() != expected {
        return Err(Error::invalid(format!(
            "a projective plane with {m} colors needs {expected} points, got {}",
            config.num_points()
        )));
    }
    let code = config_to_code(config)?;
    if !code.is_perfect()? {
        return Err(Error::invalid(
            "the configuration's code is not perfect, so no difference set exists",
        ));
    }
    let sidon = code_to_sidon(&code)?;
    let ds = DifferenceSet::new(sidon.group().clone(), sidon.elements().to_vec())?;
    let planarity = ds.validate();
    if !planarity.ok() {
        return Err(Error::internal(format!(
            "the Sidon set of a perfect code must be planar: {}",
            planarity.violations[0].witness
        )));
    }
    let (rebuilt, _) = config_from_difference_set(&ds)?;
    if config.isomorphism(&rebuilt)?.is_none() {
        return Err(Error::internal(
            "recovered difference set does not rebuild the configuration".to_string(),
        ));
    }
    Ok(ds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{search_sidon_sets, semifield_from_field, config_from_semifield, singer_difference_set};

    fn cyclic_sidon(n: u64, elements: &[u64]) -> SidonSet {
        let group = FiniteAbelianGroup::cyclic(n).unwrap();
        let elements = elements
            .iter()
            .map(|&i| group.element_at(i).unwrap())
            .collect();
        SidonSet::new(group, elements).unwrap()
    }

    fn indices(set: &SidonSet) -> Vec<u64> {
        set.elements().iter().map(|e| set.group().index_of(e)).collect()
    }

    /// Equality of cyclic Sidon sets up to a unit multiplier and translation.
    fn cyclic_equivalent(a: &SidonSet, b: &SidonSet) -> bool {
        let n = a.group().order();
        if n != b.group().order() {
            return false;
        }
        let av = indices(a);
        let bv: std::collections::BTreeSet<u64> = indices(b).into_iter().collect();
        if av.len() != bv.len() {
            return false;
        }
        for u in 1..n {
            if num_integer::Integer::gcd(&u, &n) != 1 {
                continue;
            }
            for t in 0..n {
                if av.iter().map(|&x| (u * x + t) % n).collect::<std::collections::BTreeSet<_>>() == bv {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn sidon_validation() {
        assert!(cyclic_sidon(7, &[0, 1, 3]).validate().ok());
        assert!(cyclic_sidon(8, &[0, 1, 3]).validate().ok());
        let report = cyclic_sidon(7, &[0, 1, 2]).validate();
        assert!(report
            .violations
            .iter()
            .any(|v| v.rule == "difference-uniqueness" && v.witness.contains("difference 1")));
        let report = cyclic_sidon(8, &[0, 2]).validate();
        assert!(report.violations.iter().any(|v| v.rule == "generation"));
        assert!(SidonSet::new(
            FiniteAbelianGroup::cyclic(7).unwrap(),
            vec![
                FiniteAbelianGroup::cyclic(7).unwrap().element_at(1).unwrap(),
                FiniteAbelianGroup::cyclic(7).unwrap().element_at(3).unwrap()
            ]
        )
        .is_err());
    }

    #[test]
    fn fano_sidon_code_is_frozen() {
        let code = sidon_to_code(&cyclic_sidon(7, &[0, 1, 3])).unwrap();
        assert_eq!(
            code.basis().row_vectors(),
            vec![vec![1, 2, -3], vec![0, 7, -7]]
        );
        assert!(code.is_perfect().unwrap());
    }

    #[test]
    fn sidon_codes_are_translation_invariant() {
        // The trace set {1, 2, 4} is a translate of {0, 1, 3}; the code only
        // sees differences, so both give the same lattice.
        let singer = singer_difference_set(2).unwrap();
        let canonical = singer.canonical_form().to_sidon_set().unwrap();
        let code = sidon_to_code(&canonical).unwrap();
        assert_eq!(
            code.basis().row_vectors(),
            vec![vec![1, 2, -3], vec![0, 7, -7]]
        );
    }

    #[test]
    fn non_radius_one_codes_are_rejected() {
        let ambient = LinearCode::from_rows(vec![vec![1, -1, 0], vec![0, 1, -1]]).unwrap();
        assert!(code_to_sidon(&ambient).is_err());
        assert!(code_to_config(&ambient).is_err());
    }

    #[test]
    fn code_sidon_code_preserves_the_lattice_up_to_colors() {
        let codes = vec![
            sidon_to_code(&cyclic_sidon(7, &[0, 1, 3])).unwrap(),
            sidon_to_code(&cyclic_sidon(8, &[0, 1, 3])).unwrap(),
            sidon_to_code(&cyclic_sidon(13, &[0, 1, 3, 9])).unwrap(),
        ];
        for code in codes {
            let set = code_to_sidon(&code).unwrap();
            assert!(set.validate().ok());
            let back = sidon_to_code(&set).unwrap();
            assert_eq!(back.index(), code.index());
            // Reordering the ball images can permute colors, so compare the
            // quotient configurations up to isomorphism.
            let a = code_to_config(&code).unwrap();
            let b = code_to_config(&back).unwrap();
            assert!(a.isomorphism(&b).unwrap().is_some());
        }
    }

    #[test]
    fn fano_code_recovers_an_equivalent_sidon_set() {
        let code = sidon_to_code(&cyclic_sidon(7, &[0, 1, 3])).unwrap();
        let set = code_to_sidon(&code).unwrap();
        assert_eq!(set.group().order(), 7);
        assert!(cyclic_equivalent(&set, &cyclic_sidon(7, &[0, 1, 3])));
    }

    #[test]
    fn code_config_code_is_the_identity() {
        let mut codes = vec![
            sidon_to_code(&cyclic_sidon(7, &[0, 1, 3])).unwrap(),
            sidon_to_code(&cyclic_sidon(8, &[0, 1, 6])).unwrap(),
            LinearCode::from_rows(vec![vec![3, -3]]).unwrap(),
            LinearCode::from_rows(vec![vec![5, -5]]).unwrap(),
        ];
        let z9 = FiniteAbelianGroup::cyclic(9).unwrap();
        for set in search_sidon_sets(&z9, 3).unwrap() {
            codes.push(sidon_to_code(&set).unwrap());
        }
        for code in codes {
            let config = code_to_config(&code).unwrap();
            assert_eq!(config_to_code(&config).unwrap(), code);
        }
    }

    #[test]
    fn quotient_configuration_shape() {
        let code = sidon_to_code(&cyclic_sidon(7, &[0, 1, 3])).unwrap();
        let config = code_to_config(&code).unwrap();
        assert_eq!(config.k(), 3);
        assert_eq!(config.num_points(), 7);
        assert_eq!(config.num_lines(), 7);
        // The last color pairs each line with its own point: beta = 0.
        for l in 0..7 {
            assert!(config
                .incidences()
                .iter()
                .any(|i| i.line == l && i.point == l && i.color == 2));
        }
    }

    #[test]
    fn configuration_roundtrip_preserves_colors() {
        let (fano, _) = config_from_difference_set(
            &singer_difference_set(2).unwrap().canonical_form(),
        )
        .unwrap();
        let trip = roundtrip_config(&fano).unwrap();
        assert!(trip.isomorphic);
        assert!(trip.identity_colors);
        assert_eq!(trip.code.index(), 7);

        let semifield = semifield_from_field(3).unwrap();
        let affine = config_from_semifield(&semifield).unwrap();
        let trip = roundtrip_config(&affine).unwrap();
        assert!(trip.isomorphic);
        assert!(trip.identity_colors);
        assert_eq!(trip.code.index(), 9);
        let (group, _) = trip.code.quotient().unwrap();
        assert_eq!(group.factors(), &[3, 3]);
    }

    #[test]
    fn difference_set_recovery() {
        let (fano, _) = config_from_difference_set(
            &singer_difference_set(2).unwrap().canonical_form(),
        )
        .unwrap();
        let ds = recover_difference_set(&fano).unwrap();
        assert_eq!(ds.group().order(), 7);
        assert_eq!(ds.elements().len(), 3);
        assert!(ds.validate().ok());

        // The affine plane of order 3 has 9 points, not 7: no recovery.
        let semifield = semifield_from_field(3).unwrap();
        let affine = config_from_semifield(&semifield).unwrap();
        assert!(recover_difference_set(&affine).is_err());
    }

    #[test]
    fn semifield_code_has_elementary_abelian_quotient() {
        for q in [2u64, 3, 4] {
            let s = semifield_from_field(q).unwrap();
            let config = config_from_semifield(&s).unwrap();
            let code = config_to_code(&config).unwrap();
            assert_eq!(code.index(), q * q);
            assert!(code.is_radius_one().unwrap());
            let sidon = code_to_sidon(&code).unwrap();
            assert_eq!(sidon.elements().len() as u64, q);
            let (p, _) = crate::algebra::prime_power(q).unwrap();
            for factor in sidon.group().factors() {
                assert_eq!(factor % p, 0);
            }
        }
    }
}
