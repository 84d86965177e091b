//! Weight-level representation theory of so(m).
//!
//! Weights are written in the orthonormal basis `e^1..e^n`. The quadratic
//! Casimir is normalized as `⟨λ, λ + 2ρ⟩`, which is the eigenvalue of
//! `(1/2) Σ M_ab M_ab` for the generators used throughout the crate.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Series {
    /// so(2n+1)
    B,
    /// so(2n)
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraType {
    pub series: Series,
    pub rank: usize,
}

impl AlgebraType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Invalid("rank must be at least 1".into()));
        }
        Ok(AlgebraType { series, rank })
    }

    /// The algebra so(m), m ≥ 2.
    pub fn so(m: usize) -> Result<Self> {
        match m {
            0 | 1 => Err(Error::Invalid(format!("so({m}) is not supported"))),
            _ if m.is_multiple_of(2) => AlgebraType::new(Series::D, m / 2),
            _ => AlgebraType::new(Series::B, m / 2),
        }
    }

    /// `m` in so(m).
    pub fn m(&self) -> usize {
        match self.series {
            Series::B => 2 * self.rank + 1,
            Series::D => 2 * self.rank,
        }
    }

    /// Half-sum of positive roots.
    pub fn rho(&self) -> Vec<Rat> {
        let n = self.rank as i64;
        (1..=n)
            .map(|i| match self.series {
                Series::D => Rat::from_int(n - i),
                Series::B => Rat::new(2 * (n - i) + 1, 2),
            })
            .collect()
    }
}

impl fmt::Display for AlgebraType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "so({})", self.m())
    }
}

impl Serialize for AlgebraType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A weight in the orthonormal basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weight(pub Vec<Rat>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![Rat::zero(); rank])
    }

    pub fn from_halves(twice: &[i64]) -> Self {
        Weight(twice.iter().map(|&t| Rat::new(t, 2)).collect())
    }

    pub fn entries(&self) -> &[Rat] {
        &self.0
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|x| x.mul_int(k)).collect())
    }

    fn is_half_integral(&self) -> bool {
        let twice: Vec<Rat> = self.0.iter().map(|x| x.mul_int(2)).collect();
        twice.iter().all(Rat::is_integer)
            && self.0.windows(2).all(|w| (&w[0] - &w[1]).is_integer())
    }

    pub fn is_dominant(&self, alg: &AlgebraType) -> bool {
        let w = &self.0;
        if w.len() != alg.rank || !self.is_half_integral() {
            return false;
        }
        let n = alg.rank;
        let ordered = |lo: usize, hi: usize| (lo..hi).all(|i| w[i] >= w[i + 1]);
        match alg.series {
            Series::B => ordered(0, n - 1) && !w[n - 1].is_negative(),
            Series::D if n == 1 => true,
            Series::D => ordered(0, n - 2) && w[n - 2] >= w[n - 1].abs(),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Rat::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.0.iter().map(Rat::to_string).collect();
        parts.serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrrepLabel {
    pub series: Series,
    pub rank: usize,
    pub weight: Weight,
    pub dim: u64,
    #[serde(serialize_with = "ser_display")]
    pub casimir: Rat,
}

fn ser_display<S: Serializer, T: fmt::Display>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl IrrepLabel {
    pub fn new(alg: AlgebraType, weight: Weight) -> Result<Self> {
        let dim = weyl_dim(&alg, &weight)?;
        let casimir = casimir_value(&alg, &weight)?;
        Ok(IrrepLabel {
            series: alg.series,
            rank: alg.rank,
            weight,
            dim,
            casimir,
        })
    }

    pub fn algebra(&self) -> AlgebraType {
        AlgebraType {
            series: self.series,
            rank: self.rank,
        }
    }
}

fn require_dominant(alg: &AlgebraType, w: &Weight) -> Result<()> {
    if w.is_dominant(alg) {
        Ok(())
    } else {
        Err(Error::NonDominant(w.to_string(), alg.to_string()))
    }
}

/// `⟨λ, λ + 2ρ⟩`.
pub fn casimir_value(alg: &AlgebraType, w: &Weight) -> Result<Rat> {
    require_dominant(alg, w)?;
    let mut acc = Rat::zero();
    for (l, r) in w.0.iter().zip(alg.rho()) {
        acc += &(l * &(l + &r.mul_int(2)));
    }
    Ok(acc)
}

/// Weyl dimension formula.
pub fn weyl_dim(alg: &AlgebraType, w: &Weight) -> Result<u64> {
    require_dominant(alg, w)?;
    let rho = alg.rho();
    let m: Vec<Rat> = w.0.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let mut num = Rat::one();
    let mut den = Rat::one();
    for i in 0..alg.rank {
        for j in i + 1..alg.rank {
            num = &num * &(&(&m[i] * &m[i]) - &(&m[j] * &m[j]));
            den = &den * &(&(&rho[i] * &rho[i]) - &(&rho[j] * &rho[j]));
        }
        if alg.series == Series::B {
            num = &num * &m[i];
            den = &den * &rho[i];
        }
    }
    let d = &num / &den;
    debug_assert!(d.is_integer() && d.is_positive());
    d.to_i64()
        .map(|v| v as u64)
        .ok_or_else(|| Error::Invalid(format!("dimension {d} out of range")))
}

/// Checks that `D ≥ 3` and `μ` is an allowed charge for that dimension.
pub fn check_charge(dim: usize, mu: &Rat) -> Result<()> {
    if dim < 3 {
        return Err(Error::InvalidDimension(dim));
    }
    if !mu.mul_int(2).is_integer() {
        return Err(Error::NotHalfInteger(mu.clone()));
    }
    if dim.is_multiple_of(2) && !(mu.is_zero() || *mu == Rat::new(1, 2)) {
        return Err(Error::ChargeRestricted {
            dim,
            mu: mu.clone(),
        });
    }
    Ok(())
}

/// `n = ⌊D/2⌋`.
pub fn half_dim(dim: usize) -> usize {
    dim / 2
}

/// The gauge algebra so(D−1).
pub fn gauge_algebra(dim: usize) -> Result<AlgebraType> {
    AlgebraType::so(dim - 1)
}

/// Highest weight of the fiber representation `s^{2μ}` of so(D−1).
///
/// Odd `D`: `(|μ|, …, |μ|, μ)`, i.e. `s_±^{2|μ|}` by the sign of `μ`.
/// Even `D`: `(μ, …, μ)`.
pub fn gauge_weight(dim: usize, mu: &Rat) -> Result<Weight> {
    check_charge(dim, mu)?;
    let alg = gauge_algebra(dim)?;
    let mut w = vec![mu.abs(); alg.rank];
    if dim % 2 == 1 {
        w[alg.rank - 1] = mu.clone();
    }
    Ok(Weight(w))
}

/// `c̄₂`: Casimir of the fiber representation.
pub fn cbar2(dim: usize, mu: &Rat) -> Result<Rat> {
    casimir_value(&gauge_algebra(dim)?, &gauge_weight(dim, mu)?)
}

/// Centrifugal coefficient of the hamiltonian.
pub fn delta(dim: usize, mu: &Rat) -> Result<Rat> {
    check_charge(dim, mu)?;
    let n = half_dim(dim) as i64;
    Ok(if dim % 2 == 1 {
        &mu.abs().mul_int(n - 1) + &(mu * mu)
    } else {
        mu.mul_int(n - 1)
    })
}

/// Angular irreps `ℛ_l` of so(D): one label for odd `D` or `μ = 0`, the
/// pair `(ℛ_l⁺, ℛ_l⁻)` for even `D` with `μ = 1/2`.
pub fn weight_rl(dim: usize, mu: &Rat, l: u32) -> Result<Vec<IrrepLabel>> {
    check_charge(dim, mu)?;
    let alg = AlgebraType::so(dim)?;
    let n = alg.rank;
    let l = Rat::from_int(l as i64);
    let weights = if dim % 2 == 1 {
        let mut w = vec![mu.abs(); n];
        w[0] = &l + &mu.abs();
        vec![Weight(w)]
    } else if mu.is_zero() {
        let mut w = vec![Rat::zero(); n];
        w[0] = l;
        vec![Weight(w)]
    } else {
        let half = Rat::new(1, 2);
        let mut plus = vec![half.clone(); n];
        plus[0] = &l + &half;
        let mut minus = plus.clone();
        minus[n - 1] = -&half;
        vec![Weight(plus), Weight(minus)]
    };
    weights.into_iter().map(|w| IrrepLabel::new(alg, w)).collect()
}

/// Level irrep `ℋ_I` of so(D+1).
pub fn weight_hi(dim: usize, mu: &Rat, level: u32) -> Result<IrrepLabel> {
    check_charge(dim, mu)?;
    let alg = AlgebraType::so(dim + 1)?;
    let n = alg.rank;
    let mut w = vec![mu.abs(); n];
    w[0] = &Rat::from_int(level as i64) + &mu.abs();
    if dim % 2 == 1 {
        w[n - 1] = mu.clone();
    }
    IrrepLabel::new(alg, Weight(w))
}

/// `c₂[l]`: Casimir of the angular irrep (equal on both members of a pair).
pub fn c2_angular(dim: usize, mu: &Rat, l: u32) -> Result<Rat> {
    Ok(weight_rl(dim, mu, l)?[0].casimir.clone())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchingReport {
    #[serde(rename = "D")]
    pub dim: usize,
    #[serde(serialize_with = "ser_display")]
    pub mu: Rat,
    #[serde(rename = "I")]
    pub level: u32,
    pub level_dim: u64,
    pub angular_dims: Vec<u64>,
    pub angular_sum: u64,
    pub pass: bool,
}

/// `dim ℋ_I = Σ_{l ≤ I} dim ℛ_l` (summing both members of a pair).
pub fn branching_sum_check(dim: usize, mu: &Rat, level: u32) -> Result<BranchingReport> {
    let hi = weight_hi(dim, mu, level)?;
    let mut angular_dims = Vec::new();
    for l in 0..=level {
        angular_dims.push(weight_rl(dim, mu, l)?.iter().map(|r| r.dim).sum());
    }
    let angular_sum = angular_dims.iter().sum();
    Ok(BranchingReport {
        dim,
        mu: mu.clone(),
        level,
        level_dim: hi.dim,
        angular_dims,
        angular_sum,
        pass: hi.dim == angular_sum,
    })
}
