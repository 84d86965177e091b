//! Euclidean gamma matrices and the so(d) generators `γ_ab = (i/4)[γ_a, γ_b]`.
//!
//! Convention: starting from the empty set (size 1, chirality 1), each step
//! `d → d+2` maps
//!
//! ```text
//! γ_a   ↦ γ_a ⊗ σx      (a ≤ d)
//! γ_d+1 = χ   ⊗ σx
//! γ_d+2 = 1   ⊗ σy
//! χ     ↦ 1   ⊗ σz
//! ```
//!
//! For odd `d` the chirality of `d−1` is appended as the last gamma. The
//! matrices have size `2^⌊d/2⌋`, entries in {0, ±1, ±i}, and every
//! `γ_{2j−1,2j}` as well as the chirality is diagonal.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{Matrix, Rat, Scalar};
use crate::report::CheckReport;

#[derive(Debug, Clone)]
pub struct GammaSet {
    d: usize,
    gammas: Vec<Matrix>,
    chirality: Option<Matrix>,
}

fn pauli() -> [Matrix; 3] {
    let z = Scalar::zero;
    let one = Scalar::one;
    let i = Scalar::i;
    [
        Matrix::from_rows(vec![vec![z(), one()], vec![one(), z()]]),
        Matrix::from_rows(vec![vec![z(), -&i()], vec![i(), z()]]),
        Matrix::from_rows(vec![vec![one(), z()], vec![z(), -&one()]]),
    ]
}

pub fn build_gammas(d: usize) -> Result<GammaSet> {
    if d < 2 {
        return Err(Error::TooFewGammas(d));
    }
    let [sx, sy, sz] = pauli();
    let mut gammas: Vec<Matrix> = Vec::new();
    let mut chi = Matrix::identity(1);
    while gammas.len() + 2 <= d {
        let id = Matrix::identity(chi.rows());
        let mut next: Vec<Matrix> = gammas.iter().map(|g| g.kron(&sx)).collect();
        next.push(chi.kron(&sx));
        next.push(id.kron(&sy));
        chi = id.kron(&sz);
        gammas = next;
    }
    let chirality = if d % 2 == 1 {
        gammas.push(chi);
        None
    } else {
        Some(chi)
    };
    Ok(GammaSet {
        d,
        gammas,
        chirality,
    })
}

impl GammaSet {
    pub fn d(&self) -> usize {
        self.d
    }

    /// Matrix size `2^⌊d/2⌋`.
    pub fn size(&self) -> usize {
        self.gammas[0].rows()
    }

    /// `γ_a`, 1-based.
    pub fn gamma(&self, a: usize) -> &Matrix {
        &self.gammas[a - 1]
    }

    pub fn gammas(&self) -> &[Matrix] {
        &self.gammas
    }

    pub fn chirality(&self) -> Option<&Matrix> {
        self.chirality.as_ref()
    }

    /// Replaces `γ_a` (1-based); used for negative controls.
    pub fn with_gamma(&self, a: usize, m: Matrix) -> GammaSet {
        let mut g = self.clone();
        g.gammas[a - 1] = m;
        g
    }

    /// `γ_ab = (i/4)[γ_a, γ_b]`, 1-based.
    pub fn gamma_ab(&self, a: usize, b: usize) -> Result<Matrix> {
        if a == 0 || b == 0 || a > self.d || b > self.d {
            return Err(Error::IndexOutOfRange(a, b, self.d));
        }
        let c = self.gamma(a).commutator(self.gamma(b));
        Ok(c.mul_i().scale_rat(&Rat::new(1, 4)))
    }

    /// All generators indexed `[a][b]`, 0-based.
    pub fn generators(&self) -> Vec<Vec<Matrix>> {
        (1..=self.d)
            .map(|a| (1..=self.d).map(|b| self.gamma_ab(a, b).expect("in range")).collect())
            .collect()
    }

    /// `(1/2) Σ_{a,b} γ_ab γ_ab`.
    pub fn casimir_matrix(&self) -> Matrix {
        casimir_of(&self.generators())
    }

    /// Chirality projectors `(1 ± χ)/2`; `None` for odd `d`.
    pub fn chiral_projectors(&self) -> Option<(Matrix, Matrix)> {
        let chi = self.chirality.as_ref()?;
        let id = Matrix::identity(chi.rows());
        let half = Rat::new(1, 2);
        Some(((&id + chi).scale_rat(&half), (&id - chi).scale_rat(&half)))
    }
}

/// `(1/2) Σ_{a,b} M_ab M_ab` for a full antisymmetric table of generators.
pub fn casimir_of(gens: &[Vec<Matrix>]) -> Matrix {
    let n = gens[0][0].rows();
    let mut acc = Matrix::zeros(n, n);
    for (a, row) in gens.iter().enumerate() {
        for m in row.iter().skip(a + 1) {
            // both orderings contribute equally, cancelling the 1/2
            acc.add_assign(&(m * m));
        }
    }
    acc
}

/// Residual of the so(m) commutation relations for `gens[a][b]` (0-based):
/// `−[M_ab, M_cd] + iM_ad δ_bc − iM_bd δ_ac + iM_ca δ_bd − iM_cb δ_ad`.
pub fn so_commutator_residual(gens: &[Vec<Matrix>], a: usize, b: usize, c: usize, d: usize) -> Matrix {
    let mut r = -&gens[a][b].commutator(&gens[c][d]);
    let mut add = |m: &Matrix, sign: i64| r.add_scaled(m, &Scalar::i().scale(&Rat::from_int(sign)));
    if b == c {
        add(&gens[a][d], 1);
    }
    if a == c {
        add(&gens[b][d], -1);
    }
    if b == d {
        add(&gens[c][a], 1);
    }
    if a == d {
        add(&gens[c][b], -1);
    }
    r
}

/// Checks the so(m) commutators for all index quadruples.
pub fn check_so_commutators(gens: &[Vec<Matrix>], identity: &str) -> CheckReport {
    let m = gens.len();
    let mut report = CheckReport::new(identity);
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    let r = so_commutator_residual(gens, a, b, c, d);
                    report.record(|| format!("a={} b={} c={} d={}", a + 1, b + 1, c + 1, d + 1), &r);
                }
            }
        }
    }
    report
}

pub fn verify_so_commutators(g: &GammaSet) -> CheckReport {
    check_so_commutators(&g.generators(), "so-commutators")
}

/// Summary of the structural checks on one gamma set.
#[derive(Debug, Clone, Serialize)]
pub struct CliffordReport {
    pub d: usize,
    pub size: usize,
    pub clifford: CheckReport,
    pub hermitian: CheckReport,
    pub chirality: CheckReport,
    pub commutators: CheckReport,
    pub casimir: CheckReport,
    /// The Casimir eigenvalue on each irreducible piece.
    pub casimir_values: Vec<String>,
}

impl CliffordReport {
    pub fn pass(&self) -> bool {
        [
            &self.clifford,
            &self.hermitian,
            &self.chirality,
            &self.commutators,
            &self.casimir,
        ]
        .iter()
        .all(|r| r.pass())
    }
}

pub fn verify_gamma_set(g: &GammaSet) -> CliffordReport {
    let n = g.size();
    let id = Matrix::identity(n);
    let two_id = id.scale_rat(&Rat::from_int(2));
    let mut clifford = CheckReport::new("clifford-relation");
    let mut hermitian = CheckReport::new("hermiticity");
    for a in 1..=g.d() {
        hermitian.record(|| format!("gamma {a}"), &(g.gamma(a) - &g.gamma(a).adjoint()));
        for b in 1..=g.d() {
            let ac = g.gamma(a).anticommutator(g.gamma(b));
            let r = if a == b { &ac - &two_id } else { ac };
            clifford.record(|| format!("a={a} b={b}"), &r);
        }
    }
    let mut chirality = CheckReport::new("chirality");
    let mut casimir = CheckReport::new("casimir-scalar");
    let mut casimir_values = Vec::new();
    let cas = g.casimir_matrix();
    match (g.chirality(), g.chiral_projectors()) {
        (Some(chi), Some((pp, pm))) => {
            chirality.record(|| "square".into(), &(&(chi * chi) - &id));
            hermitian.record(|| "chirality".into(), &(chi - &chi.adjoint()));
            for a in 1..=g.d() {
                chirality.record(|| format!("anticommutes with gamma {a}"), &chi.anticommutator(g.gamma(a)));
            }
            chirality.record(|| "P+ idempotent".into(), &(&(&pp * &pp) - &pp));
            chirality.record(|| "P- idempotent".into(), &(&(&pm * &pm) - &pm));
            chirality.record(|| "P+ P- = 0".into(), &(&pp * &pm));
            for a in 1..=g.d() {
                for b in a + 1..=g.d() {
                    let gab = g.gamma_ab(a, b).expect("in range");
                    chirality.record(|| format!("P+ commutes with gamma_{a}{b}"), &pp.commutator(&gab));
                }
            }
            for (name, p) in [("+", &pp), ("-", &pm)] {
                let restricted = &(p * &cas) * p;
                let c = restricted.get(first_support(p), first_support(p)).clone();
                casimir.record(|| format!("chiral half {name}"), &(&restricted - &p.scale(&c)));
                casimir_values.push(c.to_string());
            }
        }
        _ => {
            let c = cas.get(0, 0).clone();
            casimir.record(|| "whole space".into(), &(&cas - &id.scale(&c)));
            casimir_values.push(c.to_string());
        }
    }
    CliffordReport {
        d: g.d(),
        size: n,
        clifford,
        hermitian,
        chirality,
        commutators: verify_so_commutators(g),
        casimir,
        casimir_values,
    }
}

/// First diagonal index where a projector is nonzero.
fn first_support(p: &Matrix) -> usize {
    (0..p.rows()).find(|&i| !p.get(i, i).is_zero()).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half(n: i64) -> Scalar {
        Scalar::from_rat(Rat::new(n, 2))
    }

    #[test]
    fn sizes() {
        for (d, n) in [(2, 2), (3, 2), (4, 4), (5, 4), (6, 8), (7, 8), (8, 16)] {
            let g = build_gammas(d).unwrap();
            assert_eq!(g.size(), n, "d={d}");
            assert_eq!(g.gammas().len(), d);
            assert_eq!(g.chirality().is_some(), d % 2 == 0);
        }
        assert_eq!(build_gammas(1).unwrap_err(), Error::TooFewGammas(1));
    }

    #[test]
    fn d2_is_pauli() {
        let g = build_gammas(2).unwrap();
        assert!(g.gamma(1).anticommutator(g.gamma(2)).is_zero());
        assert!((g.gamma(1) * g.gamma(1)).is_identity());
        let g12 = g.gamma_ab(1, 2).unwrap();
        assert_eq!(g12, Matrix::diagonal(&[half(-1), half(1)]));
        assert!(g.gamma_ab(1, 1).unwrap().is_zero());
        assert!(g.gamma_ab(0, 1).is_err());
        assert!(g.gamma_ab(1, 3).is_err());
    }

    #[test]
    fn d5_last_gamma_is_d4_chirality() {
        let g4 = build_gammas(4).unwrap();
        let g5 = build_gammas(5).unwrap();
        assert_eq!(g5.gamma(5), g4.chirality().unwrap());
    }

    #[test]
    fn d4_generator_spectra() {
        // every γ_ab squares to 1/4 and is traceless: eigenvalues ±1/2, twice each
        let g = build_gammas(4).unwrap();
        let quarter = Matrix::identity(4).scale_rat(&Rat::new(1, 4));
        for a in 1..=4 {
            for b in a + 1..=4 {
                let m = g.gamma_ab(a, b).unwrap();
                assert_eq!(&m * &m, quarter);
                assert!(m.trace().is_zero());
                assert_eq!(m, m.adjoint());
            }
        }
    }

    #[test]
    fn casimir_values() {
        let g2 = build_gammas(2).unwrap();
        assert_eq!(g2.casimir_matrix(), Matrix::identity(2).scale_rat(&Rat::new(1, 4)));
        let g3 = build_gammas(3).unwrap();
        assert_eq!(g3.casimir_matrix(), Matrix::identity(2).scale_rat(&Rat::new(3, 4)));
        let r4 = verify_gamma_set(&build_gammas(4).unwrap());
        assert_eq!(r4.casimir_values, vec!["3/2", "3/2"]);
    }

    #[test]
    fn full_checks_pass_for_small_d() {
        for d in 2..=6 {
            let r = verify_gamma_set(&build_gammas(d).unwrap());
            assert!(r.pass(), "d={d}: {r:?}");
        }
    }

    #[test]
    fn perturbed_gamma_breaks_commutators() {
        // so(2) is abelian, so the smallest informative case is d = 3
        let g = build_gammas(4).unwrap();
        let mut m = g.gamma(1).clone();
        let v = m.get(0, 0) + &Scalar::one();
        m.set(0, 0, v);
        let bad = g.with_gamma(1, m);
        assert!(!verify_so_commutators(&bad).pass());
    }
}
