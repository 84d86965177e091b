//! The quantum operators of the generalized MICZ-Kepler problem, applied
//! exactly to jets of sections of the twisted bundle:
//!
//! ```text
//! ∇_α   = ∂_α + i A_α
//! ĥ     = −½ ∇_α∇_α + δ_D/(2r²) − 1/r
//! L_αβ  = −i(x_α∇_β − x_β∇_α) + r² F_αβ
//! L_β   = −(i/2)(∇_α L_αβ + L_αβ ∇_α) + x_β/r
//! ```
//!
//! Every operator of order `k` maps a jet of order `m` to one of order `m − k`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{ExactError, Jet, JetSpace, Matrix, Rat, Scalar, Vector, MAX_ORDER};
use crate::monopole::{field_jets_in, FieldPoint};
use crate::repcalc::{cbar2, check_charge, delta, half_dim};
use crate::report::{CheckReport, IdentityReport};
use crate::spinrep::{fiber_rep, RepSO};

/// A jet of a section: `dim(rep)` components expanded at a point.
pub type SectionJet = Jet<Vector>;

/// `D`, `μ` and the data derived from them.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub dim: usize,
    pub n: usize,
    pub mu: Rat,
    pub rep: RepSO,
    pub delta: Rat,
    pub cbar2: Rat,
}

impl ProblemSpec {
    pub fn new(dim: usize, mu: &Rat, budget: usize) -> Result<Self> {
        check_charge(dim, mu)?;
        Ok(ProblemSpec {
            dim,
            n: half_dim(dim),
            mu: mu.clone(),
            rep: fiber_rep(dim, mu, budget)?,
            delta: delta(dim, mu)?,
            cbar2: cbar2(dim, mu)?,
        })
    }

    /// Fiber dimension.
    pub fn rank(&self) -> usize {
        self.rep.dim()
    }
}

/// Coefficient jets of all operators at one point.
pub struct PointContext<'a> {
    spec: &'a ProblemSpec,
    point: FieldPoint,
    space: Arc<JetSpace>,
    /// `A_α`, with a flag for identically vanishing entries
    a: Vec<(Jet<Matrix>, bool)>,
    /// `r² F_αβ`
    qf: Vec<Vec<Jet<Matrix>>>,
    x: Vec<Jet<Scalar>>,
    x_over_r: Vec<Jet<Scalar>>,
    /// `δ_D/(2r²) − 1/r`
    potential: Jet<Scalar>,
}

fn insufficient(have: usize, need: usize) -> Error {
    Error::Exact(ExactError::InsufficientOrder { have, need })
}

impl<'a> PointContext<'a> {
    pub fn new(spec: &'a ProblemSpec, point: &FieldPoint, order: usize) -> Result<Self> {
        if point.dim() != spec.dim {
            return Err(Error::Invalid(format!(
                "point of R^{} used for D = {}",
                point.dim(),
                spec.dim
            )));
        }
        if order > MAX_ORDER {
            return Err(ExactError::OrderTooLarge(order).into());
        }
        let space = JetSpace::new(point.greek().to_vec(), order)?;
        let fj = field_jets_in(&spec.rep, &space, order)?;
        let q = Jet::norm_squared(&space, order);
        let qf = fj
            .f
            .iter()
            .map(|row| row.iter().map(|f| q.mul(f)).collect())
            .collect();
        let ir = Jet::radius(&space, order)?.inverse()?;
        let x: Vec<Jet<Scalar>> = (0..spec.dim).map(|v| Jet::variable(&space, order, v)).collect();
        let x_over_r = x.iter().map(|xv| xv.mul(&ir)).collect();
        let ir2: Jet<Scalar> = ir.mul(&ir);
        let potential = ir2.scale_rat(&(&spec.delta / &Rat::from_int(2))).sub(&ir);
        let a = fj
            .a
            .into_iter()
            .map(|j| {
                let z = j.is_zero();
                (j, z)
            })
            .collect();
        Ok(PointContext {
            spec,
            point: point.clone(),
            space,
            a,
            qf,
            x,
            x_over_r,
            potential,
        })
    }

    pub fn space(&self) -> &Arc<JetSpace> {
        &self.space
    }

    pub fn point(&self) -> &FieldPoint {
        &self.point
    }

    pub fn order(&self) -> usize {
        self.space.order()
    }

    /// `∇_α s`.
    pub fn nabla(&self, alpha: usize, s: &SectionJet) -> Result<SectionJet> {
        let mut out = s.derivative(alpha)?;
        let (a, zero) = &self.a[alpha];
        if !zero {
            let m = out.order();
            let as_: SectionJet = a.mul_to(s, m);
            out.add_assign(&as_.map(Vector::mul_i));
        }
        Ok(out)
    }

    /// `∇_α s` for every direction.
    pub fn nablas(&self, s: &SectionJet) -> Result<Vec<SectionJet>> {
        (0..self.spec.dim).map(|a| self.nabla(a, s)).collect()
    }

    /// `ĥ s`.
    pub fn hamiltonian(&self, s: &SectionJet) -> Result<SectionJet> {
        if s.order() < 2 {
            return Err(insufficient(s.order(), 2));
        }
        let mut lap: Option<SectionJet> = None;
        for a in 0..self.spec.dim {
            let t = self.nabla(a, &self.nabla(a, s)?)?;
            match &mut lap {
                None => lap = Some(t),
                Some(l) => l.add_assign(&t),
            }
        }
        let mut out = lap.expect("D >= 1").scale_rat(&Rat::new(-1, 2));
        out.add_assign(&self.potential.mul_to(s, s.order() - 2));
        Ok(out)
    }

    /// `L_αβ s` from precomputed `∇s`.
    fn lab_with(&self, alpha: usize, beta: usize, s: &SectionJet, ns: &[SectionJet]) -> SectionJet {
        let m = ns[0].order();
        let t: SectionJet = self.x[alpha].mul_to(&ns[beta], m);
        let u: SectionJet = self.x[beta].mul_to(&ns[alpha], m);
        let mut out = t.sub(&u).map(|v| v.mul_i().scale_rat(&Rat::from_int(-1)));
        out.add_assign(&self.qf[alpha][beta].mul_to(s, m));
        out
    }

    /// `L_αβ s`.
    pub fn lab(&self, alpha: usize, beta: usize, s: &SectionJet) -> Result<SectionJet> {
        let ns = self.nablas(s)?;
        Ok(self.lab_with(alpha, beta, s, &ns))
    }

    fn lab_all_with(&self, s: &SectionJet, ns: &[SectionJet]) -> Vec<Vec<SectionJet>> {
        let d = self.spec.dim;
        let zero = Jet::constant(&self.space, ns[0].order(), Vector::zeros(self.spec.rank()));
        let mut out = vec![vec![zero; d]; d];
        for a in 0..d {
            for b in a + 1..d {
                let l = self.lab_with(a, b, s, ns);
                out[b][a] = l.neg();
                out[a][b] = l;
            }
        }
        out
    }

    /// `L_αβ s` for all index pairs.
    pub fn lab_all(&self, s: &SectionJet) -> Result<Vec<Vec<SectionJet>>> {
        let ns = self.nablas(s)?;
        Ok(self.lab_all_with(s, &ns))
    }

    /// `L_β s` for every `β`.
    pub fn runge_lenz_all(&self, s: &SectionJet) -> Result<Vec<SectionJet>> {
        if s.order() < 2 {
            return Err(insufficient(s.order(), 2));
        }
        let d = self.spec.dim;
        let ns = self.nablas(s)?;
        let ls = self.lab_all_with(s, &ns);
        let nns: Vec<Vec<SectionJet>> = ns.iter().map(|n| self.nablas(n)).collect::<Result<_>>()?;
        let m = s.order() - 2;
        let mut out = Vec::with_capacity(d);
        for b in 0..d {
            let mut acc: Jet<Vector> = Jet::constant(&self.space, m, Vector::zeros(self.spec.rank()));
            for a in 0..d {
                if a == b {
                    continue;
                }
                acc.add_assign(&self.nabla(a, &ls[a][b])?);
                acc.add_assign(&self.lab_with(a, b, &ns[a], &nns[a]));
            }
            let mut r = acc.map(|v| v.mul_i().scale_rat(&Rat::new(-1, 2)));
            r.add_assign(&self.x_over_r[b].mul_to(s, m));
            out.push(r);
        }
        Ok(out)
    }

    /// `L_β s`.
    pub fn runge_lenz(&self, beta: usize, s: &SectionJet) -> Result<SectionJet> {
        Ok(self.runge_lenz_all(s)?.swap_remove(beta))
    }

    /// A polynomial section `Σ x^e v_e`, expanded to the context order.
    pub fn polynomial_section(&self, terms: &[(Vec<u8>, Vector)]) -> SectionJet {
        let order = self.order();
        let mut s = Jet::constant(&self.space, order, Vector::zeros(self.spec.rank()));
        for (exps, v) in terms {
            let m = Jet::monomial(&self.space, order, exps);
            s.add_assign(&m.map(|c| v.scale(c)));
        }
        s
    }
}

pub fn apply_nabla(ctx: &PointContext, alpha: usize, s: &SectionJet) -> Result<SectionJet> {
    ctx.nabla(alpha, s)
}

pub fn apply_hamiltonian(ctx: &PointContext, s: &SectionJet) -> Result<SectionJet> {
    ctx.hamiltonian(s)
}

pub fn apply_lab(ctx: &PointContext, alpha: usize, beta: usize, s: &SectionJet) -> Result<SectionJet> {
    ctx.lab(alpha, beta, s)
}

pub fn apply_runge_lenz(ctx: &PointContext, beta: usize, s: &SectionJet) -> Result<SectionJet> {
    ctx.runge_lenz(beta, s)
}

/// A random polynomial section of degree ≤ `degree` with small Gaussian
/// integer coefficients; never identically zero.
pub fn random_section(rng: &mut ChaCha8Rng, dim: usize, rank: usize, degree: usize) -> Vec<(Vec<u8>, Vector)> {
    let mut monos: Vec<Vec<u8>> = vec![vec![0; dim]];
    for _ in 0..degree {
        let mut next = Vec::new();
        for m in &monos {
            let last = m.iter().rposition(|&e| e > 0).unwrap_or(0);
            for v in last..dim {
                let mut e = m.clone();
                e[v] += 1;
                if !monos.contains(&e) && !next.contains(&e) {
                    next.push(e);
                }
            }
        }
        monos.extend(next);
    }
    loop {
        let mut terms = Vec::new();
        for m in &monos {
            // sparse: about one monomial in three is present
            if rng.gen_range(0..3) != 0 {
                continue;
            }
            let v = Vector(
                (0..rank)
                    .map(|_| Scalar::from_gauss_ints(rng.gen_range(-2..=2), rng.gen_range(-2..=2)))
                    .collect(),
            );
            if !v.is_zero() {
                terms.push((m.clone(), v));
            }
        }
        if !terms.is_empty() {
            return terms;
        }
    }
}

/// The five commutation relations of the symmetry algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    /// `[L_μν, ĥ] = 0`
    AngularHamiltonian,
    /// `[L_μν, L_αβ] = iδ_μα L_νβ − iδ_να L_μβ − iδ_μβ L_να + iδ_νβ L_μα`
    AngularAngular,
    /// `[L_μν, L_λ] = iδ_μλ L_ν − iδ_νλ L_μ`
    AngularRungeLenz,
    /// `[L_μ, ĥ] = 0`
    RungeLenzHamiltonian,
    /// `[L_μ, L_ν] = −2i ĥ L_μν`
    RungeLenzRungeLenz,
}

impl Relation {
    pub const ALL: [Relation; 5] = [
        Relation::AngularHamiltonian,
        Relation::AngularAngular,
        Relation::AngularRungeLenz,
        Relation::RungeLenzHamiltonian,
        Relation::RungeLenzRungeLenz,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Relation::AngularHamiltonian => "[L_mn, h] = 0",
            Relation::AngularAngular => "[L_mn, L_ab] = i(d_ma L_nb - d_na L_mb - d_mb L_na + d_nb L_ma)",
            Relation::AngularRungeLenz => "[L_mn, L_l] = i d_ml L_n - i d_nl L_m",
            Relation::RungeLenzHamiltonian => "[L_m, h] = 0",
            Relation::RungeLenzRungeLenz => "[L_m, L_n] = -2i h L_mn",
        }
    }

    /// Jet order the section needs for this relation.
    pub fn order(self) -> usize {
        match self {
            Relation::AngularHamiltonian => 3,
            Relation::AngularAngular => 2,
            Relation::AngularRungeLenz => 3,
            Relation::RungeLenzHamiltonian | Relation::RungeLenzRungeLenz => 4,
        }
    }
}

/// All coefficients of a vector jet as one column.
fn as_column(j: &SectionJet) -> Matrix {
    let col: Vec<Scalar> = j.coeffs().iter().flat_map(|v| v.0.iter().cloned()).collect();
    Matrix::from_columns(&[Vector(col)])
}

fn record(report: &mut CheckReport, ctx: impl FnOnce() -> String, lhs: &SectionJet, rhs: &SectionJet) {
    let order = lhs.order().min(rhs.order());
    report.record(ctx, &as_column(&lhs.truncate(order).sub(&rhs.truncate(order))));
}

fn i_times(j: &SectionJet) -> SectionJet {
    j.map(Vector::mul_i)
}

/// Checks the requested relations on one section at one point.
fn check_section(
    ctx: &PointContext,
    s: &SectionJet,
    relations: &[Relation],
    reports: &mut [CheckReport],
    tag: &str,
) -> Result<()> {
    let d = ctx.spec.dim;
    let need = |r: Relation| relations.contains(&r);
    let ls = ctx.lab_all(s)?;
    let hs = if need(Relation::AngularHamiltonian) || need(Relation::RungeLenzHamiltonian) {
        Some(ctx.hamiltonian(s)?)
    } else {
        None
    };
    let rs = if need(Relation::AngularRungeLenz)
        || need(Relation::RungeLenzHamiltonian)
        || need(Relation::RungeLenzRungeLenz)
    {
        Some(ctx.runge_lenz_all(s)?)
    } else {
        None
    };
    for (slot, &rel) in relations.iter().enumerate() {
        let rep = &mut reports[slot];
        match rel {
            Relation::AngularHamiltonian => {
                let lh = ctx.lab_all(hs.as_ref().expect("computed"))?;
                for m in 0..d {
                    for n in m + 1..d {
                        let hl = ctx.hamiltonian(&ls[m][n])?;
                        let zero = hl.scale_rat(&Rat::zero());
                        record(rep, || format!("{tag} m={m} n={n}"), &lh[m][n].sub(&hl), &zero);
                    }
                }
            }
            Relation::AngularAngular => {
                let pairs: Vec<(usize, usize)> = (0..d).flat_map(|a| (a + 1..d).map(move |b| (a, b))).collect();
                let lls: Vec<Vec<Vec<SectionJet>>> =
                    pairs.iter().map(|&(a, b)| ctx.lab_all(&ls[a][b])).collect::<Result<_>>()?;
                for (p, &(m, n)) in pairs.iter().enumerate() {
                    for (q, &(a, b)) in pairs.iter().enumerate() {
                        // L_mn L_ab s − L_ab L_mn s
                        let lhs = lls[q][m][n].sub(&lls[p][a][b]);
                        let kd = |x: usize, y: usize| x == y;
                        let mut rhs = ls[0][0].scale_rat(&Rat::zero());
                        if kd(m, a) {
                            rhs.add_assign(&ls[n][b]);
                        }
                        if kd(n, a) {
                            rhs.add_assign(&ls[m][b].neg());
                        }
                        if kd(m, b) {
                            rhs.add_assign(&ls[n][a].neg());
                        }
                        if kd(n, b) {
                            rhs.add_assign(&ls[m][a]);
                        }
                        record(rep, || format!("{tag} m={m} n={n} a={a} b={b}"), &lhs, &i_times(&rhs));
                    }
                }
            }
            Relation::AngularRungeLenz => {
                let rs = rs.as_ref().expect("computed");
                let lr: Vec<Vec<Vec<SectionJet>>> = rs.iter().map(|r| ctx.lab_all(r)).collect::<Result<_>>()?;
                for m in 0..d {
                    for n in m + 1..d {
                        let rl = ctx.runge_lenz_all(&ls[m][n])?;
                        for l in 0..d {
                            let lhs = lr[l][m][n].sub(&rl[l]);
                            let mut rhs = rs[0].scale_rat(&Rat::zero());
                            if m == l {
                                rhs.add_assign(&rs[n]);
                            }
                            if n == l {
                                rhs.add_assign(&rs[m].neg());
                            }
                            record(rep, || format!("{tag} m={m} n={n} l={l}"), &lhs, &i_times(&rhs));
                        }
                    }
                }
            }
            Relation::RungeLenzHamiltonian => {
                let rs = rs.as_ref().expect("computed");
                let rh = ctx.runge_lenz_all(hs.as_ref().expect("computed"))?;
                for m in 0..d {
                    let hr = ctx.hamiltonian(&rs[m])?;
                    let zero = hr.scale_rat(&Rat::zero());
                    record(rep, || format!("{tag} m={m}"), &rh[m].sub(&hr), &zero);
                }
            }
            Relation::RungeLenzRungeLenz => {
                let rs = rs.as_ref().expect("computed");
                let rr: Vec<Vec<SectionJet>> = rs.iter().map(|r| ctx.runge_lenz_all(r)).collect::<Result<_>>()?;
                for m in 0..d {
                    for n in m + 1..d {
                        let lhs = rr[n][m].sub(&rr[m][n]);
                        let rhs = i_times(&ctx.hamiltonian(&ls[m][n])?).scale_rat(&Rat::from_int(-2));
                        record(rep, || format!("{tag} m={m} n={n}"), &lhs, &rhs);
                    }
                }
            }
        }
    }
    Ok(())
}

/// Seeded test sections, one list per point.
fn sections_for(spec: &ProblemSpec, count: usize, seed: u64) -> Vec<Vec<(Vec<u8>, Vector)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x5EC7_1095));
    (0..count).map(|_| random_section(&mut rng, spec.dim, spec.rank(), 3)).collect()
}

/// Checks the given relations on `sections` seeded polynomial sections at
/// every point. One report per relation, in the order given.
pub fn check_symmetry_algebra(
    spec: &ProblemSpec,
    points: &[FieldPoint],
    sections: usize,
    seed: u64,
    relations: &[Relation],
) -> Result<Vec<IdentityReport>> {
    let mut reports: Vec<CheckReport> = relations.iter().map(|r| CheckReport::new(r.label())).collect();
    let order = relations.iter().map(|r| r.order()).max().unwrap_or(0);
    let polys = sections_for(spec, sections, seed);
    for p in points {
        let ctx = PointContext::new(spec, p, order)?;
        for (k, poly) in polys.iter().enumerate() {
            let s = ctx.polynomial_section(poly);
            check_section(&ctx, &s, relations, &mut reports, &format!("{p} section={k}"))?;
        }
    }
    Ok(reports
        .into_iter()
        .map(|r| IdentityReport::from_check(r, spec.dim, &spec.mu.to_string(), points.len()))
        .collect())
}

/// `L_μL_μ = 1 + (½(D−1)² − 2c̄₂ + L_μν L_μν) ĥ` on seeded sections.
pub fn check_lrl_square(spec: &ProblemSpec, points: &[FieldPoint], sections: usize, seed: u64) -> Result<IdentityReport> {
    let mut report = CheckReport::new("L_m L_m = 1 + ((D-1)^2/2 - 2 cbar2 + L_mn L_mn) h");
    let polys = sections_for(spec, sections, seed);
    let d = spec.dim;
    let half_sq = Rat::new(((d - 1) * (d - 1)) as i64, 2);
    let c = &half_sq - &spec.cbar2.mul_int(2);
    for p in points {
        let ctx = PointContext::new(spec, p, 4)?;
        for (k, poly) in polys.iter().enumerate() {
            let s = ctx.polynomial_section(poly);
            let rs = ctx.runge_lenz_all(&s)?;
            let mut lhs = Jet::constant(ctx.space(), 0, Vector::zeros(spec.rank()));
            for (m, r) in rs.iter().enumerate() {
                lhs.add_assign(&ctx.runge_lenz_all(r)?.swap_remove(m));
            }
            let hs = ctx.hamiltonian(&s)?;
            let mut rhs = s.truncate(0);
            rhs.add_assign(&hs.truncate(0).scale_rat(&c));
            let lh = ctx.lab_all(&hs)?;
            for m in 0..d {
                for n in 0..d {
                    if m != n {
                        rhs.add_assign(&ctx.lab(m, n, &lh[m][n])?);
                    }
                }
            }
            record(&mut report, || format!("{p} section={k}"), &lhs, &rhs);
        }
    }
    Ok(IdentityReport::from_check(report, d, &spec.mu.to_string(), points.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monopole::sample_points;
    use crate::spinrep::DEFAULT_SIZE_BUDGET;
    use std::collections::BTreeMap;

    fn spec(dim: usize, mu: Rat) -> ProblemSpec {
        ProblemSpec::new(dim, &mu, DEFAULT_SIZE_BUDGET).unwrap()
    }

    fn unit(n: usize) -> Vector {
        Vector::unit(n, 0)
    }

    #[test]
    fn spec_fields() {
        let s = spec(5, Rat::new(1, 2));
        assert_eq!(s.n, 2);
        assert_eq!(s.delta, Rat::new(3, 4));
        assert_eq!(spec(6, Rat::new(1, 2)).delta, Rat::one());
        assert!(ProblemSpec::new(4, &Rat::one(), DEFAULT_SIZE_BUDGET).is_err());
    }

    #[test]
    fn nabla_examples() {
        let sp = spec(5, Rat::new(1, 2));
        let p = FieldPoint::north(5, 3);
        let ctx = PointContext::new(&sp, &p, 2).unwrap();
        let v = Vector(vec![Scalar::from_int(1), Scalar::i()]);
        // constant section, direction 0
        let c = ctx.polynomial_section(&[(vec![0; 5], v.clone())]);
        assert!(ctx.nabla(0, &c).unwrap().value().is_zero());
        // x_1·v at the north pole, direction 1
        let s = ctx.polynomial_section(&[(vec![0, 1, 0, 0, 0], v.clone())]);
        assert_eq!(ctx.nabla(1, &s).unwrap().value(), &v);
        // μ = 0 is the plain derivative
        let sp0 = spec(5, Rat::zero());
        let q = FieldPoint::from_ints(&[1, 2, 0, 1, 3]).unwrap();
        let ctx0 = PointContext::new(&sp0, &q, 2).unwrap();
        let s0 = ctx0.polynomial_section(&[(vec![1, 2, 0, 0, 0], unit(1))]);
        for a in 0..5 {
            assert_eq!(ctx0.nabla(a, &s0).unwrap().coeffs(), s0.derivative(a).unwrap().coeffs());
        }
        assert!(ctx.nabla(0, &c.truncate(0)).is_err());
    }

    #[test]
    fn hamiltonian_on_radial_polynomial() {
        let sp = spec(3, Rat::zero());
        let p = FieldPoint::north(3, 1);
        let ctx = PointContext::new(&sp, &p, 2).unwrap();
        let v = unit(1);
        let c = ctx.polynomial_section(&[(vec![0, 0, 0], v.clone())]);
        assert_eq!(ctx.hamiltonian(&c).unwrap().value(), &v.scale_rat(&Rat::from_int(-1)));
        let r2 = ctx.polynomial_section(&[
            (vec![2, 0, 0], v.clone()),
            (vec![0, 2, 0], v.clone()),
            (vec![0, 0, 2], v.clone()),
        ]);
        assert_eq!(ctx.hamiltonian(&r2).unwrap().value(), &v.scale_rat(&Rat::from_int(-4)));
    }

    #[test]
    fn angular_momentum_examples() {
        let sp = spec(5, Rat::zero());
        let p = FieldPoint::from_ints(&[1, -1, 2, 0, 1]).unwrap();
        let ctx = PointContext::new(&sp, &p, 2).unwrap();
        let v = unit(1);
        let radial: Vec<(Vec<u8>, Vector)> = (0..5)
            .map(|k| {
                let mut e = vec![0; 5];
                e[k] = 2;
                (e, v.clone())
            })
            .collect();
        let s = ctx.polynomial_section(&radial);
        for a in 0..5 {
            for b in 0..5 {
                assert!(ctx.lab(a, b, &s).unwrap().is_zero());
            }
        }
        // the pure curvature term at the north pole: L_ab v = −M_ab v
        let sp = spec(5, Rat::new(1, 2));
        let p = FieldPoint::north(5, 2);
        let ctx = PointContext::new(&sp, &p, 1).unwrap();
        let v = Vector(vec![Scalar::from_int(2), Scalar::from_gauss_ints(1, -1)]);
        let c = ctx.polynomial_section(&[(vec![0; 5], v.clone())]);
        for a in 1..5 {
            assert!(ctx.lab(a, a, &c).unwrap().is_zero());
            for b in 1..5 {
                let expect = -&sp.rep.gen(a, b).mul_vec(&v);
                assert_eq!(ctx.lab(a, b, &c).unwrap().value(), &expect);
            }
        }
    }

    #[test]
    fn runge_lenz_constant_at_north_pole() {
        let sp = spec(4, Rat::zero());
        let p = FieldPoint::north(4, 3);
        let ctx = PointContext::new(&sp, &p, 2).unwrap();
        let v = unit(1);
        let c = ctx.polynomial_section(&[(vec![0; 4], v.clone())]);
        let rs = ctx.runge_lenz_all(&c).unwrap();
        assert_eq!(rs[0].value(), &v);
        for r in &rs[1..] {
            assert!(r.value().is_zero());
        }
    }

    /// Polynomials with exact coefficients, for an independent oracle.
    #[derive(Clone, Default)]
    struct Poly(BTreeMap<Vec<u8>, Scalar>);

    impl Poly {
        fn add(&mut self, o: &Poly, c: &Scalar) {
            for (k, v) in &o.0 {
                let e = self.0.entry(k.clone()).or_insert_with(Scalar::zero);
                *e += &(v * c);
            }
        }
        fn d(&self, v: usize) -> Poly {
            let mut out = Poly::default();
            for (k, c) in &self.0 {
                if k[v] > 0 {
                    let mut e = k.clone();
                    e[v] -= 1;
                    out.add(&Poly([(e, c.scale(&Rat::from_int(k[v] as i64)))].into()), &Scalar::one());
                }
            }
            out
        }
        fn times_x(&self, v: usize) -> Poly {
            Poly(
                self.0
                    .iter()
                    .map(|(k, c)| {
                        let mut e = k.clone();
                        e[v] += 1;
                        (e, c.clone())
                    })
                    .collect(),
            )
        }
        fn eval(&self, x: &[Rat]) -> Scalar {
            let mut s = Scalar::zero();
            for (k, c) in &self.0 {
                let mut t = c.clone();
                for (xv, &e) in x.iter().zip(k) {
                    t = t.scale(&xv.pow(e as u32));
                }
                s += &t;
            }
            s
        }
    }

    /// `−i(x_a ∂_b − x_b ∂_a) p`
    fn l_ab(p: &Poly, a: usize, b: usize) -> Poly {
        let mut out = Poly::default();
        out.add(&p.d(b).times_x(a), &-&Scalar::i());
        out.add(&p.d(a).times_x(b), &Scalar::i());
        out
    }

    #[test]
    fn runge_lenz_matches_direct_expansion() {
        let sp = spec(3, Rat::zero());
        let p = FieldPoint::from_ints(&[1, 2, 2]).unwrap();
        let ctx = PointContext::new(&sp, &p, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let terms = random_section(&mut rng, 3, 1, 3);
        let poly = Poly(terms.iter().map(|(e, v)| (e.clone(), v.0[0].clone())).collect());
        let s = ctx.polynomial_section(&terms);
        let rs = ctx.runge_lenz_all(&s).unwrap();
        let r = p.r().clone();
        for b in 0..3 {
            let mut acc = Poly::default();
            for a in 0..3 {
                acc.add(&l_ab(&poly, a, b).d(a), &Scalar::one());
                acc.add(&l_ab(&poly.d(a), a, b), &Scalar::one());
            }
            let mut expect = acc.eval(p.greek()) * Scalar::from_gauss_ints(0, 1).scale(&Rat::new(-1, 2));
            expect += &(&poly.eval(p.greek()) * &Scalar::from_rat(p.x(b).clone()) / r.clone());
            assert_eq!(rs[b].value().0[0], expect, "beta = {b}");
        }
    }

    #[test]
    fn orderings_differ_by_commutator() {
        // [∇_0, L_01] = −i∇_1 + x_0 F_01 + [∇_0, r²F_01], using [∇_0, ∇_1] = iF_01
        let sp = spec(3, Rat::new(1, 2));
        let p = FieldPoint::from_ints(&[2, 1, 2]).unwrap();
        let ctx = PointContext::new(&sp, &p, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = ctx.polynomial_section(&random_section(&mut rng, 3, 1, 2));
        let l01 = ctx.lab(0, 1, &s).unwrap();
        let l10 = ctx.lab(1, 0, &s).unwrap();
        assert_eq!(l01.coeffs(), l10.neg().coeffs());
        let a = ctx.nabla(0, &l01).unwrap();
        let b = ctx.lab(0, 1, &ctx.nabla(0, &s).unwrap()).unwrap();
        let ns = ctx.nablas(&s).unwrap();
        let mut expect = ns[1].map(|v| v.mul_i().scale_rat(&Rat::from_int(-1)));
        let f01 = field_jets_in(&sp.rep, ctx.space(), 2).unwrap().f[0][1].clone();
        let x0f: Jet<Matrix> = ctx.x[0].mul(&f01);
        expect.add_assign(&x0f.mul_to(&s, 1));
        let qf = &ctx.qf[0][1];
        let mut comm: SectionJet = qf.derivative(0).unwrap().mul_to(&s, 1);
        let ia = ctx.a[0].0.map(Matrix::mul_i);
        let t1: SectionJet = ia.mul_to(&qf.mul_to::<Vector, Vector>(&s, 1), 1);
        let t2: SectionJet = qf.mul_to(&ia.mul_to::<Vector, Vector>(&s, 1), 1);
        comm.add_assign(&t1.sub(&t2));
        expect.add_assign(&comm);
        assert_eq!(a.sub(&b).coeffs(), expect.truncate(0).coeffs());
    }

    #[test]
    fn symmetry_algebra_small() {
        let sp = spec(3, Rat::new(1, 2));
        let pts = sample_points(3, 2, 3);
        for r in check_symmetry_algebra(&sp, &pts, 1, 1, &Relation::ALL).unwrap() {
            assert!(r.pass, "{} {:?}", r.identity, r.max_residual_entries);
        }
        assert!(check_lrl_square(&sp, &pts, 1, 1).unwrap().pass);
    }

    #[test]
    fn broken_potential_breaks_runge_lenz_conservation() {
        // wrong centrifugal coefficient: [L_m, h] no longer vanishes
        let mut sp = spec(3, Rat::new(1, 2));
        sp.delta = &sp.delta + &Rat::one();
        let pts = sample_points(3, 2, 3);
        let r = check_symmetry_algebra(&sp, &pts, 1, 1, &[Relation::RungeLenzHamiltonian]).unwrap();
        assert!(!r[0].pass);
    }
}
