//! Bound states: indicial exponents, terminating radial series, energy
//! levels and their decomposition under Spin(D).
//!
//! With `E = −λ²/2`, `R = e^{−λr} u` and `y = r^{(D−1)/2} u`, the radial
//! equation becomes
//!
//! ```text
//! y'' − 2λ y' + (2/r − C/r²) y = 0,   C = c₂[l] − c̄₂ + δ_D + (D−1)(D−3)/4.
//! ```
//!
//! Substituting `y = r^s Σ a_m r^m` with `s(s−1) = C` gives
//! `a_m ((m+s)(m+s−1) − s(s−1)) = 2(λ(m+s−1) − 1) a_{m−1}`, which terminates
//! after `a_{k−1}` exactly when `λ = 1/(k+s−1)`. (A commonly printed form of
//! this recursion has `(1 − λ(m+s−1))` on the right; it differs by a factor
//! of −2 and has the same termination condition.)

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::Rat;
use crate::repcalc::{
    branching_sum_check, c2_angular, cbar2, check_charge, delta, half_dim, weight_hi, weight_rl, IrrepLabel,
    Weight,
};

/// Constant `C` of the radial equation.
pub fn radial_constant(dim: usize, mu: &Rat, l: u32) -> Result<Rat> {
    let d = dim as i64;
    let shift = Rat::new((d - 1) * (d - 3), 4);
    Ok(&(&(&c2_angular(dim, mu, l)? - &cbar2(dim, mu)?) + &delta(dim, mu)?) + &shift)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndicialRoots {
    pub s_plus: Rat,
    pub s_minus: Rat,
    /// The root giving square-integrable states near the origin.
    pub admissible: Rat,
}

/// Roots of `s(s−1) = C`.
pub fn indicial_roots(dim: usize, mu: &Rat, l: u32) -> Result<IndicialRoots> {
    let c = radial_constant(dim, mu, l)?;
    let disc = &Rat::one() + &c.mul_int(4);
    let root = disc
        .sqrt_exact()
        .ok_or_else(|| Error::Invalid(format!("indicial discriminant {disc} is not a rational square")))?;
    let half = Rat::new(1, 2);
    let s_plus = &(&Rat::one() + &root) * &half;
    let s_minus = &(&Rat::one() - &root) * &half;
    Ok(IndicialRoots {
        admissible: s_plus.clone(),
        s_plus,
        s_minus,
    })
}

/// The closed form of the admissible exponent: `l + n + |μ|` (odd `D`) or
/// `l + n + μ − 1/2` (even `D`).
pub fn exponent_formula(dim: usize, mu: &Rat, l: u32) -> Rat {
    let base = &Rat::from_int(l as i64 + half_dim(dim) as i64) + &mu.abs();
    if dim % 2 == 1 {
        base
    } else {
        &base - &Rat::new(1, 2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RadialSolution {
    #[serde(rename = "D")]
    pub dim: usize,
    pub mu: Rat,
    pub k: u32,
    pub l: u32,
    pub s: Rat,
    pub lambda: Rat,
    pub energy: Rat,
    /// `a_0 … a_{k−1}`, `a_0 = 1`
    pub coeffs: Vec<Rat>,
}

/// The terminating series for `(k, l)`, `k ≥ 1`.
pub fn radial_coeffs(dim: usize, mu: &Rat, k: u32, l: u32) -> Result<RadialSolution> {
    if k == 0 {
        return Err(Error::Invalid("radial label k starts at 1".into()));
    }
    let s = indicial_roots(dim, mu, l)?.admissible;
    let lambda = (&Rat::from_int(k as i64 - 1) + &s).recip()?;
    let energy = -&(&(&lambda * &lambda) * &Rat::new(1, 2));
    let ss = &s * &(&s - &Rat::one());
    let factor = |m: i64| -> Rat {
        // λ(m+s−1) − 1
        &(&lambda * &(&Rat::from_int(m - 1) + &s)) - &Rat::one()
    };
    let mut coeffs = vec![Rat::one()];
    for m in 1..k as i64 {
        let ms = &Rat::from_int(m) + &s;
        let lhs = &(&ms * &(&ms - &Rat::one())) - &ss;
        let a = &(&factor(m).mul_int(2) * &coeffs[m as usize - 1]) / &lhs;
        coeffs.push(a);
    }
    if !factor(k as i64).is_zero() {
        return Err(Error::Invalid(format!("series for k = {k} does not terminate")));
    }
    Ok(RadialSolution {
        dim,
        mu: mu.clone(),
        k,
        l,
        s,
        lambda,
        energy,
        coeffs,
    })
}

/// Dense polynomial in `r`, lowest degree first.
fn poly_mul_r(p: &[Rat], shift: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); shift];
    out.extend_from_slice(p);
    out
}

fn poly_deriv(p: &[Rat]) -> Vec<Rat> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(m, a)| a.mul_int(m as i64))
        .collect()
}

fn poly_add(acc: &mut Vec<Rat>, p: &[Rat], c: &Rat) {
    if acc.len() < p.len() {
        acc.resize(p.len(), Rat::zero());
    }
    for (a, b) in acc.iter_mut().zip(p) {
        *a += &(b * c);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OdeReport {
    pub k: u32,
    pub l: u32,
    /// Coefficients of `r^{2−s} (y'' − 2λy' + (2/r − C/r²) y)`.
    pub residual: Vec<Rat>,
    pub pass: bool,
}

/// Substitutes the series back into the radial equation.
///
/// With `y = r^s P`: `r^{2−s}·(…) = s(s−1)P + 2s rP' + r²P'' − 2λ(s rP + r²P') + 2rP − CP`.
pub fn verify_radial_ode(sol: &RadialSolution) -> Result<OdeReport> {
    let c = radial_constant(sol.dim, &sol.mu, sol.l)?;
    let p = &sol.coeffs;
    let dp = poly_deriv(p);
    let ddp = poly_deriv(&dp);
    let s = &sol.s;
    let lam2 = sol.lambda.mul_int(2);
    let mut res = Vec::new();
    poly_add(&mut res, p, &(&(s * &(s - &Rat::one())) - &c));
    poly_add(&mut res, &poly_mul_r(&dp, 1), &s.mul_int(2));
    poly_add(&mut res, &poly_mul_r(&ddp, 2), &Rat::one());
    poly_add(&mut res, &poly_mul_r(p, 1), &-&(&lam2 * s));
    poly_add(&mut res, &poly_mul_r(&dp, 2), &-&lam2);
    poly_add(&mut res, &poly_mul_r(p, 1), &Rat::from_int(2));
    let pass = res.iter().all(Rat::is_zero);
    Ok(OdeReport {
        k: sol.k,
        l: sol.l,
        residual: res,
        pass,
    })
}

/// `E_I` from the closed form.
pub fn energy_formula(dim: usize, mu: &Rat, level: u32) -> Result<Rat> {
    check_charge(dim, mu)?;
    let s0 = exponent_formula(dim, mu, level);
    Ok(-&(&s0 * &s0).mul_int(2).recip()?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Constituent {
    pub k: u32,
    pub l: u32,
    pub irrep: IrrepLabel,
    #[serde(skip)]
    pub energy: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelSpectrum {
    #[serde(rename = "I")]
    pub level: u32,
    #[serde(rename = "E")]
    pub energy: Rat,
    pub irrep: IrrepLabel,
    pub degeneracy: u64,
    pub constituents: Vec<Constituent>,
}

impl LevelSpectrum {
    /// Every constituent has the level energy and the dimensions add up.
    pub fn consistent(&self) -> bool {
        self.constituents.iter().all(|c| c.energy == self.energy)
            && self.constituents.iter().map(|c| c.irrep.dim).sum::<u64>() == self.degeneracy
            && self.irrep.dim == self.degeneracy
    }
}

/// Level `I`: energy, Spin(D+1) irrep and the `(k, l)` modes with `k + l = I + 1`.
pub fn energy_level(dim: usize, mu: &Rat, level: u32) -> Result<LevelSpectrum> {
    let energy = energy_formula(dim, mu, level)?;
    let irrep = weight_hi(dim, mu, level)?;
    let mut constituents = Vec::new();
    for l in 0..=level {
        let k = level + 1 - l;
        let sol = radial_coeffs(dim, mu, k, l)?;
        for irrep in weight_rl(dim, mu, l)? {
            constituents.push(Constituent {
                k,
                l,
                irrep,
                energy: sol.energy.clone(),
            });
        }
    }
    Ok(LevelSpectrum {
        level,
        energy,
        degeneracy: irrep.dim,
        irrep,
        constituents,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CasimirCheck {
    #[serde(rename = "D")]
    pub dim: usize,
    pub mu: Rat,
    #[serde(rename = "I")]
    pub level: u32,
    pub energy: Rat,
    pub from_casimir: Rat,
    pub pass: bool,
}

/// `E_I = −½ / (c₂[so(D+1)] + ((D−1)/2)² − c̄₂)`.
pub fn casimir_hamiltonian_check(dim: usize, mu: &Rat, level: u32) -> Result<CasimirCheck> {
    let energy = energy_formula(dim, mu, level)?;
    let c2 = weight_hi(dim, mu, level)?.casimir;
    let h = Rat::new(dim as i64 - 1, 2);
    let denom = &(&c2 + &(&h * &h)) - &cbar2(dim, mu)?;
    let from_casimir = -&denom.mul_int(2).recip()?;
    Ok(CasimirCheck {
        dim,
        mu: mu.clone(),
        level,
        pass: from_casimir == energy,
        energy,
        from_casimir,
    })
}

/// The three routes to `E_I` agree, and the level decomposes consistently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumAgreement {
    #[serde(rename = "D")]
    pub dim: usize,
    pub mu: Rat,
    #[serde(rename = "I")]
    pub level: u32,
    pub formula: Rat,
    pub recursion: Vec<Rat>,
    pub casimir: Rat,
    pub branching: bool,
    pub pass: bool,
}

pub fn spectrum_agreement(dim: usize, mu: &Rat, level: u32) -> Result<SpectrumAgreement> {
    let lv = energy_level(dim, mu, level)?;
    let cc = casimir_hamiltonian_check(dim, mu, level)?;
    let branching = branching_sum_check(dim, mu, level)?.pass && lv.consistent();
    let recursion: Vec<Rat> = lv.constituents.iter().map(|c| c.energy.clone()).collect();
    let pass = cc.pass && branching && recursion.iter().all(|e| *e == lv.energy);
    Ok(SpectrumAgreement {
        dim,
        mu: mu.clone(),
        level,
        formula: lv.energy,
        recursion,
        casimir: cc.from_casimir,
        branching,
        pass,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelTable {
    #[serde(rename = "D")]
    pub dim: usize,
    pub mu: Rat,
    pub levels: Vec<LevelSpectrum>,
}

pub fn level_table(dim: usize, mu: &Rat, max_level: u32) -> Result<LevelTable> {
    let levels = (0..=max_level)
        .map(|i| energy_level(dim, mu, i))
        .collect::<Result<_>>()?;
    Ok(LevelTable {
        dim,
        mu: mu.clone(),
        levels,
    })
}

#[derive(Serialize)]
struct CsvRow<'a> {
    #[serde(rename = "D")]
    dim: usize,
    mu: &'a Rat,
    #[serde(rename = "I")]
    level: u32,
    #[serde(rename = "E")]
    energy: &'a Rat,
    weight: String,
    degeneracy: u64,
    k: u32,
    l: u32,
    constituent_weight: String,
    constituent_dim: u64,
}

fn weight_str(w: &Weight) -> String {
    w.entries().iter().map(Rat::to_string).collect::<Vec<_>>().join(" ")
}

impl LevelTable {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// One row per constituent.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for lv in &self.levels {
            for c in &lv.constituents {
                w.serialize(CsvRow {
                    dim: self.dim,
                    mu: &self.mu,
                    level: lv.level,
                    energy: &lv.energy,
                    weight: weight_str(&lv.irrep.weight),
                    degeneracy: lv.degeneracy,
                    k: c.k,
                    l: c.l,
                    constituent_weight: weight_str(&c.irrep.weight),
                    constituent_dim: c.irrep.dim,
                })
                .expect("in-memory csv");
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("D = {}, mu = {}\n", self.dim, self.mu);
        for lv in &self.levels {
            let modes: Vec<String> = lv
                .constituents
                .iter()
                .map(|c| format!("(k={}, l={}, {})", c.k, c.l, c.irrep.weight))
                .collect();
            out.push_str(&format!(
                "I={}  E={}  weight={}  degeneracy={}  modes: {}\n",
                lv.level,
                lv.energy,
                lv.irrep.weight,
                lv.degeneracy,
                modes.join(" ")
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(p: i64, q: i64) -> Rat {
        Rat::new(p, q)
    }

    #[test]
    fn indicial_examples() {
        let h = indicial_roots(3, &Rat::zero(), 0).unwrap();
        assert_eq!((h.s_plus, h.s_minus, h.admissible), (Rat::one(), Rat::zero(), Rat::one()));
        assert_eq!(indicial_roots(5, &r(1, 2), 0).unwrap().admissible, r(5, 2));
        assert_eq!(indicial_roots(4, &r(1, 2), 1).unwrap().admissible, Rat::from_int(3));
        assert!(indicial_roots(4, &Rat::one(), 0).is_err());
    }

    #[test]
    fn radial_examples() {
        let g = radial_coeffs(3, &Rat::zero(), 1, 0).unwrap();
        assert_eq!((g.coeffs.clone(), g.lambda.clone(), g.energy.clone()), (vec![Rat::one()], Rat::one(), r(-1, 2)));
        let s2 = radial_coeffs(3, &Rat::zero(), 2, 0).unwrap();
        assert_eq!(s2.coeffs, vec![Rat::one(), r(-1, 2)]);
        assert_eq!(s2.lambda, r(1, 2));
        let m = radial_coeffs(5, &r(1, 2), 1, 1).unwrap();
        assert_eq!((m.coeffs, m.lambda), (vec![Rat::one()], r(2, 7)));
    }

    #[test]
    fn hydrogen_radial_polynomials() {
        // u = r^l L^{(2l+1)}_{N−l−1}(2r/N) up to normalization; 3s: 1 − 2r/3 + 2r²/27
        let s3 = radial_coeffs(3, &Rat::zero(), 3, 0).unwrap();
        assert_eq!(s3.coeffs, vec![Rat::one(), r(-2, 3), r(2, 27)]);
        // 3p: 1 − r/6
        let p3 = radial_coeffs(3, &Rat::zero(), 2, 1).unwrap();
        assert_eq!(p3.coeffs, vec![Rat::one(), r(-1, 6)]);
    }

    #[test]
    fn ode_residuals() {
        assert!(verify_radial_ode(&radial_coeffs(3, &Rat::zero(), 2, 0).unwrap()).unwrap().pass);
        assert!(verify_radial_ode(&radial_coeffs(4, &r(1, 2), 2, 0).unwrap()).unwrap().pass);
        let mut bad = radial_coeffs(3, &Rat::zero(), 2, 0).unwrap();
        bad.coeffs[1] += &Rat::one();
        assert!(!verify_radial_ode(&bad).unwrap().pass);
    }

    #[test]
    fn printed_recursion_fails_the_ode() {
        // a_m · (…) = (1 − λ(m+s−1)) a_{m−1} gives 2s coefficient +1/4
        let mut sol = radial_coeffs(3, &Rat::zero(), 2, 0).unwrap();
        sol.coeffs[1] = r(1, 4);
        assert!(!verify_radial_ode(&sol).unwrap().pass);
    }

    #[test]
    fn level_examples() {
        let h = energy_level(3, &Rat::zero(), 1).unwrap();
        assert_eq!((h.energy.clone(), h.degeneracy), (r(-1, 8), 4));
        let a = energy_level(5, &r(1, 2), 0).unwrap();
        assert_eq!(a.energy, r(-2, 25));
        assert_eq!(a.constituents.iter().map(|c| (c.k, c.l)).collect::<Vec<_>>(), vec![(1, 0)]);
        assert_eq!(energy_level(4, &r(1, 2), 0).unwrap().energy, r(-1, 8));
        assert!(energy_level(4, &Rat::one(), 0).is_err());
    }

    #[test]
    fn casimir_relation() {
        for i in 0..=5 {
            assert!(casimir_hamiltonian_check(3, &Rat::zero(), i).unwrap().pass);
        }
        for i in 0..=3 {
            assert!(casimir_hamiltonian_check(5, &Rat::one(), i).unwrap().pass);
            assert!(casimir_hamiltonian_check(6, &r(1, 2), i).unwrap().pass);
        }
    }

    #[test]
    fn level_tables() {
        let t = level_table(3, &Rat::zero(), 2).unwrap();
        let e: Vec<Rat> = t.levels.iter().map(|l| l.energy.clone()).collect();
        assert_eq!(e, vec![r(-1, 2), r(-1, 8), r(-1, 18)]);
        assert_eq!(t.levels.iter().map(|l| l.degeneracy).collect::<Vec<_>>(), vec![1, 4, 9]);
        let t = level_table(3, &r(1, 2), 1).unwrap();
        assert_eq!(t.levels.iter().map(|l| l.degeneracy).collect::<Vec<_>>(), vec![2, 6]);
        let t = level_table(4, &Rat::zero(), 1).unwrap();
        assert_eq!(t.levels.iter().map(|l| l.degeneracy).collect::<Vec<_>>(), vec![1, 5]);
        let json: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(json["mu"], "0");
        assert_eq!(json["levels"][1]["E"], "-2/25");
        assert_eq!(json["levels"][1]["constituents"][1]["l"], 1);
        let csv = t.to_csv();
        assert!(csv.starts_with("D,mu,I,E,weight,degeneracy,k,l,constituent_weight,constituent_dim\n"));
        assert_eq!(csv.lines().count(), 1 + 1 + 2);
    }

    fn charge() -> impl Strategy<Value = (usize, Rat)> {
        prop_oneof![
            (1usize..4, -3i64..=3).prop_map(|(n, k)| (2 * n + 1, Rat::new(k, 2))),
            (2usize..4, 0i64..=1).prop_map(|(n, k)| (2 * n, Rat::new(k, 2))),
        ]
    }

    proptest! {
        #[test]
        fn energies_increase_toward_zero((dim, mu) in charge(), i in 0u32..6) {
            let a = energy_formula(dim, &mu, i).unwrap();
            let b = energy_formula(dim, &mu, i + 1).unwrap();
            prop_assert!(a.is_negative() && b.is_negative() && a < b);
        }

        #[test]
        fn exponent_matches_closed_form((dim, mu) in charge(), l in 0u32..5) {
            prop_assert_eq!(indicial_roots(dim, &mu, l).unwrap().admissible, exponent_formula(dim, &mu, l));
        }

        #[test]
        fn every_series_solves_the_ode((dim, mu) in charge(), k in 1u32..6, l in 0u32..5) {
            prop_assert!(verify_radial_ode(&radial_coeffs(dim, &mu, k, l).unwrap()).unwrap().pass);
        }
    }
}
