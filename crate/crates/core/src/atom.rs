//! Ground-state configurations and the single-determinant energy functional.
//!
//! Open shells are a single determinant with every unpaired spin up. Each pair
//! of occupied spinorbitals contributes one Coulomb integral, and an exchange
//! integral when the two spins agree.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::basis::{Exponents, OrbitalKind, Shell};
use crate::error::{Error, Result};
use crate::integrals::{CoulombPair, ExchangePair, IntegralSet, PShellModel, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Spin {
    Up,
    Down,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpinOrbital {
    pub orbital: OrbitalKind,
    pub spin: Spin,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Occupation {
    pub z: u32,
    pub n_1s: u32,
    pub n_2s: u32,
    pub n_2p: u32,
    pub p_assignment: Vec<(OrbitalKind, Spin)>,
    /// Term symbol such as `3P`.
    pub term: String,
}

fn term_symbol(unpaired: u32, n_2p: u32) -> String {
    // Hund's-rule L for pⁿ: S, P, P, S, P, P, S
    let l = match n_2p {
        1 | 2 | 4 | 5 => 'P',
        _ => 'S',
    };
    format!("{}{}", unpaired + 1, l)
}

fn hund_order() -> Vec<(OrbitalKind, Spin)> {
    OrbitalKind::P
        .iter()
        .map(|&k| (k, Spin::Up))
        .chain(OrbitalKind::P.iter().map(|&k| (k, Spin::Down)))
        .collect()
}

impl Occupation {
    /// Builds an occupation with an explicit p-shell assignment.
    pub fn with_p_assignment(z: u32, p_assignment: Vec<(OrbitalKind, Spin)>) -> Result<Self> {
        if !(2..=10).contains(&z) {
            return Err(Error::AtomicNumber(z));
        }
        let n_1s = 2;
        let n_2s = (z - 2).min(2);
        let n_2p = z - n_1s - n_2s;
        if p_assignment.len() as u32 != n_2p {
            return Err(Error::Assignment(format!(
                "Z = {z} needs {n_2p} p electrons, got {}",
                p_assignment.len()
            )));
        }
        for (i, a) in p_assignment.iter().enumerate() {
            if a.0.shell() != Shell::P2 {
                return Err(Error::Assignment(format!("{:?} is not a 2p orbital", a.0)));
            }
            if p_assignment[..i].contains(a) {
                return Err(Error::Assignment(format!("{a:?} occupied twice")));
            }
        }
        let paired_p = OrbitalKind::P
            .iter()
            .filter(|&&k| p_assignment.iter().filter(|a| a.0 == k).count() == 2)
            .count() as u32;
        let unpaired = (n_2s % 2) + n_2p - 2 * paired_p;
        Ok(Self { z, n_1s, n_2s, n_2p, p_assignment, term: term_symbol(unpaired, n_2p) })
    }

    pub fn spin_orbitals(&self) -> Vec<SpinOrbital> {
        let mut out = Vec::with_capacity(self.z as usize);
        let spins = [Spin::Up, Spin::Down];
        for (orbital, n) in [(OrbitalKind::S1, self.n_1s), (OrbitalKind::S2, self.n_2s)] {
            out.extend(spins[..n as usize].iter().map(|&spin| SpinOrbital { orbital, spin }));
        }
        out.extend(self.p_assignment.iter().map(|&(orbital, spin)| SpinOrbital { orbital, spin }));
        out
    }

    /// Configuration text in the reference table's style, e.g. `1s^2 2s^2 2p^3 ^4S`.
    pub fn label(&self) -> String {
        let mut parts = Vec::new();
        for (shell, n) in [("1s", self.n_1s), ("2s", self.n_2s), ("2p", self.n_2p)] {
            match n {
                0 => {}
                1 => parts.push(shell.to_string()),
                n => parts.push(format!("{shell}^{n}")),
            }
        }
        parts.push(format!("^{}", self.term));
        parts.join(" ")
    }
}

/// Aufbau ground state with Hund's-rule p filling.
pub fn configuration(z: u32) -> Result<Occupation> {
    if !(2..=10).contains(&z) {
        return Err(Error::AtomicNumber(z));
    }
    let n_2p = z.saturating_sub(4) as usize;
    Occupation::with_p_assignment(z, hund_order()[..n_2p].to_vec())
}

/// Multiplicities of each core, Coulomb and exchange term.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PairCounts {
    counts: BTreeMap<Term, u32>,
}

impl PairCounts {
    pub fn get(&self, term: Term) -> u32 {
        self.counts.get(&term).copied().unwrap_or(0)
    }

    /// Terms with nonzero multiplicity.
    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        self.counts.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Term, u32)> + '_ {
        self.counts.iter().map(|(&t, &n)| (t, n))
    }

    pub fn coulomb_total(&self) -> u32 {
        self.iter().filter(|(t, _)| matches!(t, Term::Coulomb(_))).map(|(_, n)| n).sum()
    }

    fn bump(&mut self, term: Term) {
        *self.counts.entry(term).or_insert(0) += 1;
    }
}

fn coulomb_pair(a: OrbitalKind, b: OrbitalKind) -> CoulombPair {
    match (a.shell(), b.shell()) {
        (Shell::S1, Shell::S1) => CoulombPair::J1s1s,
        (Shell::S2, Shell::S2) => CoulombPair::J2s2s,
        (Shell::S1, Shell::S2) | (Shell::S2, Shell::S1) => CoulombPair::J1s2s,
        (Shell::S1, Shell::P2) | (Shell::P2, Shell::S1) => CoulombPair::J1s2p,
        (Shell::S2, Shell::P2) | (Shell::P2, Shell::S2) => CoulombPair::J2s2p,
        (Shell::P2, Shell::P2) if a == b => CoulombPair::J2p2pSame,
        (Shell::P2, Shell::P2) => CoulombPair::J2p2pDiff,
    }
}

/// `None` for identical spatial orbitals, where K would equal J.
fn exchange_pair(a: OrbitalKind, b: OrbitalKind) -> Option<ExchangePair> {
    if a == b {
        return None;
    }
    Some(match (a.shell(), b.shell()) {
        (Shell::S1, Shell::S2) | (Shell::S2, Shell::S1) => ExchangePair::K1s2s,
        (Shell::S1, Shell::P2) | (Shell::P2, Shell::S1) => ExchangePair::K1s2p,
        (Shell::S2, Shell::P2) | (Shell::P2, Shell::S2) => ExchangePair::K2s2p,
        (Shell::P2, Shell::P2) => ExchangePair::K2p2pDiff,
        _ => unreachable!("distinct orbitals within one s shell"),
    })
}

pub fn pair_counts(occ: &Occupation) -> PairCounts {
    let orbitals = occ.spin_orbitals();
    let mut counts = PairCounts::default();
    for (i, a) in orbitals.iter().enumerate() {
        counts.bump(Term::Core(a.orbital.shell()));
        for b in &orbitals[..i] {
            counts.bump(Term::Coulomb(coulomb_pair(a.orbital, b.orbital)));
            if a.spin == b.spin {
                if let Some(k) = exchange_pair(a.orbital, b.orbital) {
                    counts.bump(Term::Exchange(k));
                }
            }
        }
    }
    counts
}

/// Kinetic and potential contributions to the total energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergySplit {
    pub kinetic: f64,
    /// Nuclear attraction plus all electron repulsion terms.
    pub potential: f64,
}

impl EnergySplit {
    pub fn total(&self) -> f64 {
        self.kinetic + self.potential
    }

    /// `(2T + V) / |E|`; zero at a scaling-stationary point.
    pub fn virial_ratio(&self) -> f64 {
        (2.0 * self.kinetic + self.potential) / self.total().abs()
    }
}

/// Assembles the energy of a configuration from evaluated integrals.
pub fn assemble(counts: &PairCounts, set: &IntegralSet) -> Result<EnergySplit> {
    let missing = |t: Term| Error::Report(format!("integral {} was not evaluated", t.name()));
    let mut split = EnergySplit { kinetic: 0.0, potential: 0.0 };
    for (term, n) in counts.iter() {
        let n = f64::from(n);
        match term {
            Term::Core(s) => {
                let h = set.core.get(&s).ok_or_else(|| missing(term))?;
                split.kinetic += n * h.kinetic;
                split.potential += n * h.potential;
            }
            Term::Coulomb(p) => {
                split.potential += n * set.coulomb.get(&p).ok_or_else(|| missing(term))?;
            }
            Term::Exchange(p) => {
                split.potential -= n * set.exchange.get(&p).ok_or_else(|| missing(term))?;
            }
        }
    }
    Ok(split)
}

pub fn energy_split(z: u32, exps: &Exponents) -> Result<EnergySplit> {
    energy_split_with(z, exps, PShellModel::Exact)
}

pub fn energy_split_with(z: u32, exps: &Exponents, model: PShellModel) -> Result<EnergySplit> {
    exps.check_for(z)?;
    let counts = pair_counts(&configuration(z)?);
    let set = IntegralSet::for_terms(counts.terms(), exps, z, model)?;
    assemble(&counts, &set)
}

/// Total energy `E(α, β, γ)` of atom `z` in hartree.
pub fn energy(z: u32, exps: &Exponents) -> Result<f64> {
    Ok(energy_split(z, exps)?.total())
}

pub fn energy_with(z: u32, exps: &Exponents, model: PShellModel) -> Result<f64> {
    Ok(energy_split_with(z, exps, model)?.total())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::reference_row;

    #[test]
    fn configurations_match_reference_labels() {
        for z in 2..=10 {
            let occ = configuration(z).unwrap();
            assert_eq!(occ.n_1s + occ.n_2s + occ.n_2p, z);
            assert_eq!(occ.label(), reference_row(z).unwrap().configuration, "Z = {z}");
        }
    }

    #[test]
    fn carbon_is_triplet_with_distinct_parallel_p() {
        let occ = configuration(6).unwrap();
        assert_eq!(occ.term, "3P");
        assert_eq!(occ.p_assignment, vec![(OrbitalKind::P2x, Spin::Up), (OrbitalKind::P2y, Spin::Up)]);
    }

    #[test]
    fn helium_and_neon() {
        let he = configuration(2).unwrap();
        assert_eq!((he.n_1s, he.n_2s, he.n_2p, he.term.as_str()), (2, 0, 0, "1S"));
        let ne = configuration(10).unwrap();
        assert_eq!(ne.n_2p, 6);
        for k in OrbitalKind::P {
            assert_eq!(ne.p_assignment.iter().filter(|a| a.0 == k).count(), 2);
        }
        assert_eq!(ne.term, "1S");
    }

    #[test]
    fn out_of_range_z() {
        assert!(matches!(configuration(1), Err(Error::AtomicNumber(1))));
        assert!(matches!(configuration(11), Err(Error::AtomicNumber(11))));
    }

    #[test]
    fn bad_assignments_rejected() {
        let dup = vec![(OrbitalKind::P2x, Spin::Up), (OrbitalKind::P2x, Spin::Up)];
        assert!(Occupation::with_p_assignment(6, dup).is_err());
        assert!(Occupation::with_p_assignment(6, vec![(OrbitalKind::S1, Spin::Up); 2]).is_err());
        assert!(Occupation::with_p_assignment(6, vec![]).is_err());
    }

    #[test]
    fn carbon_counts_match_functional() {
        use CoulombPair::*;
        use ExchangePair::*;
        let counts = pair_counts(&configuration(6).unwrap());
        let mut want: Vec<(Term, u32)> = vec![
            (Term::Core(Shell::S1), 2),
            (Term::Core(Shell::S2), 2),
            (Term::Core(Shell::P2), 2),
            (Term::Coulomb(J1s1s), 1),
            (Term::Coulomb(J2s2s), 1),
            (Term::Coulomb(J1s2s), 4),
            (Term::Exchange(K1s2s), 2),
            (Term::Coulomb(J1s2p), 4),
            (Term::Exchange(K1s2p), 2),
            (Term::Coulomb(J2s2p), 4),
            (Term::Exchange(K2s2p), 2),
            (Term::Coulomb(J2p2pDiff), 1),
            (Term::Exchange(K2p2pDiff), 1),
        ];
        let mut got: Vec<_> = counts.iter().collect();
        got.sort();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn nitrogen_and_neon_p_shell_counts() {
        use CoulombPair::*;
        use ExchangePair::*;
        let n = pair_counts(&configuration(7).unwrap());
        assert_eq!(n.get(Term::Coulomb(J2p2pDiff)), 3);
        assert_eq!(n.get(Term::Exchange(K2p2pDiff)), 3);
        assert_eq!(n.get(Term::Coulomb(J1s2p)), 6);
        assert_eq!(n.get(Term::Exchange(K1s2p)), 3);
        assert_eq!(n.get(Term::Coulomb(J2s2p)), 6);
        assert_eq!(n.get(Term::Exchange(K2s2p)), 3);
        let ne = pair_counts(&configuration(10).unwrap());
        assert_eq!(ne.get(Term::Coulomb(J2p2pSame)), 3);
        assert_eq!(ne.get(Term::Coulomb(J2p2pDiff)), 12);
        assert_eq!(ne.get(Term::Exchange(K2p2pDiff)), 6);
    }

    #[test]
    fn coulomb_multiplicities_count_every_pair() {
        for z in 2..=10 {
            let counts = pair_counts(&configuration(z).unwrap());
            assert_eq!(counts.coulomb_total(), z * (z - 1) / 2);
            let core: u32 = counts.iter().filter(|(t, _)| matches!(t, Term::Core(_))).map(|(_, n)| n).sum();
            assert_eq!(core, z);
        }
    }

    #[test]
    fn exchange_never_exceeds_coulomb() {
        let k_to_j = [
            (ExchangePair::K1s2s, CoulombPair::J1s2s),
            (ExchangePair::K1s2p, CoulombPair::J1s2p),
            (ExchangePair::K2s2p, CoulombPair::J2s2p),
            (ExchangePair::K2p2pDiff, CoulombPair::J2p2pDiff),
        ];
        for z in 2..=10 {
            let c = pair_counts(&configuration(z).unwrap());
            for (k, j) in k_to_j {
                assert!(c.get(Term::Exchange(k)) <= c.get(Term::Coulomb(j)));
            }
        }
    }

    #[test]
    fn oxygen_assignment_invariance() {
        let e = Exponents::with_2p(7.71286, 2.79267, 2.16972).unwrap();
        let base = energy(8, &e).unwrap();
        let reference = pair_counts(&configuration(8).unwrap());
        for doubled in OrbitalKind::P {
            let mut assignment: Vec<_> = OrbitalKind::P.iter().map(|&k| (k, Spin::Up)).collect();
            assignment.push((doubled, Spin::Down));
            let occ = Occupation::with_p_assignment(8, assignment).unwrap();
            assert_eq!(occ.term, "3P");
            assert_eq!(pair_counts(&occ), reference);
            let set = IntegralSet::for_terms(reference.terms(), &e, 8, PShellModel::Exact).unwrap();
            assert_eq!(assemble(&pair_counts(&occ), &set).unwrap().total(), base);
        }
    }

    #[test]
    fn helium_energy_at_optimum() {
        let e = Exponents::helium_like(27.0 / 16.0).unwrap();
        let split = energy_split(2, &e).unwrap();
        assert!((split.total() + 2.84765625).abs() < 1e-13);
        assert!((split.kinetic - 2.84765625).abs() < 1e-13);
        assert!((split.potential + 2.0 * split.kinetic).abs() < 1e-12);
    }

    #[test]
    fn helium_functional_form() {
        // E(α) = α² − 2Zα + 5α/8
        for a in [0.5, 1.0, 1.6875, 2.3, 4.0] {
            let e = energy(2, &Exponents::helium_like(a).unwrap()).unwrap();
            assert!((e - (a * a - 4.0 * a + 0.625 * a)).abs() < 1e-13);
        }
    }

    #[test]
    fn carbon_reference_energy() {
        let row = reference_row(6).unwrap();
        let e = energy(6, &row.exponents().unwrap()).unwrap();
        assert!((e - row.e_calc).abs() < 5e-4, "{e}");
    }

    #[test]
    fn monopole_model_matches_tabulated_energies() {
        for z in 7..=10 {
            let row = reference_row(z).unwrap();
            let e = energy_with(z, &row.exponents().unwrap(), PShellModel::Monopole).unwrap();
            assert!((e - row.e_calc).abs() < 5e-4, "Z = {z}: {e}");
        }
        // Below carbon there are no p–p pairs, so the models coincide.
        for z in 2..=5 {
            let e = reference_row(z).unwrap().exponents().unwrap();
            assert_eq!(energy(z, &e).unwrap(), energy_with(z, &e, PShellModel::Monopole).unwrap());
        }
    }

    #[test]
    fn split_adds_up_and_scales() {
        for z in 2..=10 {
            let e = reference_row(z).unwrap().exponents().unwrap();
            let s = energy_split(z, &e).unwrap();
            assert_eq!(s.total(), energy(z, &e).unwrap());
            assert!(s.kinetic > 0.0);
            let s2 = energy_split(z, &e.scaled(2.0).unwrap()).unwrap();
            assert!((s2.kinetic / s.kinetic - 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn presence_mismatch_is_an_error() {
        let li = Exponents::with_2s(2.7, 0.77).unwrap();
        assert!(energy(2, &li).is_err());
        assert!(energy(5, &li).is_err());
    }
}
