//! Truncated multivariate Taylor expansions.
//!
//! A [`Jet`] stores the coefficients `c_m` of `Σ c_m·(x − x̄)^m` over all
//! multi-indices `m` with `|m| ≤ order`, where `x̄` is the base point of its
//! [`JetSpace`]. Coefficients can be scalars, matrices or vectors; products
//! between coefficient kinds go through [`JetMul`].

use std::collections::HashMap;
use std::sync::Arc;

use super::{ExactError, Matrix, Rat, Scalar, Vector};

pub const MAX_ORDER: usize = 4;

/// Monomial tables shared by all jets at one base point.
#[derive(Debug)]
pub struct JetSpace {
    base: Vec<Rat>,
    order: usize,
    monomials: Vec<Vec<u8>>,
    /// `len_at[k]` = number of monomials of degree ≤ k.
    len_at: Vec<usize>,
    /// `(i, j, k)` with `mono[i] + mono[j] = mono[k]`, sorted by degree of `k`.
    triples: Vec<(u32, u32, u32)>,
    triples_at: Vec<usize>,
    /// `shift[v][n]` = index of `mono[n] + e_v`, for `|mono[n]| < order`.
    shift: Vec<Vec<u32>>,
}

impl JetSpace {
    pub fn new(base: Vec<Rat>, order: usize) -> Result<Arc<Self>, ExactError> {
        if order > MAX_ORDER {
            return Err(ExactError::OrderTooLarge(order));
        }
        let dim = base.len();
        let mut monomials: Vec<Vec<u8>> = vec![vec![0; dim]];
        let mut len_at = vec![1];
        let mut frontier = vec![vec![0u8; dim]];
        for _ in 1..=order {
            let mut next: Vec<Vec<u8>> = Vec::new();
            for m in &frontier {
                // extend only from the last nonzero slot to avoid duplicates
                let start = m.iter().rposition(|&e| e > 0).unwrap_or(0);
                for v in start..dim {
                    let mut n = m.clone();
                    n[v] += 1;
                    next.push(n);
                }
            }
            monomials.extend(next.iter().cloned());
            len_at.push(monomials.len());
            frontier = next;
        }
        let index: HashMap<Vec<u8>, u32> = monomials
            .iter()
            .enumerate()
            .map(|(k, m)| (m.clone(), k as u32))
            .collect();
        let degree = |m: &[u8]| m.iter().map(|&e| e as usize).sum::<usize>();

        let mut triples = Vec::new();
        let mut triples_at = Vec::with_capacity(order + 1);
        for d in 0..=order {
            let lo = if d == 0 { 0 } else { len_at[d - 1] };
            for k in lo..len_at[d] {
                let target = &monomials[k];
                for (i, a) in monomials[..len_at[d]].iter().enumerate() {
                    if a.iter().zip(target).all(|(x, y)| x <= y) {
                        let b: Vec<u8> = target.iter().zip(a).map(|(y, x)| y - x).collect();
                        triples.push((i as u32, index[&b], k as u32));
                    }
                }
            }
            triples_at.push(triples.len());
        }

        let below = if order == 0 { 0 } else { len_at[order - 1] };
        let shift = (0..dim)
            .map(|v| {
                monomials[..below]
                    .iter()
                    .map(|m| {
                        let mut n = m.clone();
                        n[v] += 1;
                        debug_assert!(degree(&n) <= order);
                        index[&n]
                    })
                    .collect()
            })
            .collect();

        Ok(Arc::new(JetSpace {
            base,
            order,
            monomials,
            len_at,
            triples,
            triples_at,
            shift,
        }))
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn base(&self) -> &[Rat] {
        &self.base
    }

    pub fn len_at(&self, order: usize) -> usize {
        self.len_at[order]
    }

    pub fn monomial(&self, k: usize) -> &[u8] {
        &self.monomials[k]
    }

    /// Index of a multi-index, if present.
    pub fn index_of(&self, m: &[u8]) -> Option<usize> {
        let d: usize = m.iter().map(|&e| e as usize).sum();
        if d > self.order || m.len() != self.dim() {
            return None;
        }
        let lo = if d == 0 { 0 } else { self.len_at[d - 1] };
        (lo..self.len_at[d]).find(|&k| self.monomials[k] == m)
    }
}

/// Coefficient types a jet can carry.
pub trait JetCoeff: Clone {
    fn zero_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, o: &Self);
    fn sub_assign(&mut self, o: &Self);
    fn neg(&self) -> Self;
    fn scale(&self, s: &Scalar) -> Self;
    fn scale_rat(&self, r: &Rat) -> Self;
}

/// Coefficient products, e.g. matrix times vector.
pub trait JetMul<Rhs: JetCoeff>: JetCoeff {
    type Output: JetCoeff;
    fn jet_mul(&self, rhs: &Rhs) -> Self::Output;
}

impl JetCoeff for Scalar {
    fn zero_like(&self) -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn sub_assign(&mut self, o: &Self) {
        *self -= o;
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, s: &Scalar) -> Self {
        self * s
    }
    fn scale_rat(&self, r: &Rat) -> Self {
        Scalar::scale(self, r)
    }
}

impl JetCoeff for Matrix {
    fn zero_like(&self) -> Self {
        Matrix::zeros(self.rows(), self.cols())
    }
    fn is_zero(&self) -> bool {
        Matrix::is_zero(self)
    }
    fn add_assign(&mut self, o: &Self) {
        Matrix::add_assign(self, o)
    }
    fn sub_assign(&mut self, o: &Self) {
        Matrix::sub_assign(self, o)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, s: &Scalar) -> Self {
        Matrix::scale(self, s)
    }
    fn scale_rat(&self, r: &Rat) -> Self {
        Matrix::scale_rat(self, r)
    }
}

impl JetCoeff for Vector {
    fn zero_like(&self) -> Self {
        Vector::zeros(self.len())
    }
    fn is_zero(&self) -> bool {
        Vector::is_zero(self)
    }
    fn add_assign(&mut self, o: &Self) {
        Vector::add_assign(self, o)
    }
    fn sub_assign(&mut self, o: &Self) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a -= b;
        }
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, s: &Scalar) -> Self {
        Vector::scale(self, s)
    }
    fn scale_rat(&self, r: &Rat) -> Self {
        Vector::scale_rat(self, r)
    }
}

impl JetMul<Scalar> for Scalar {
    type Output = Scalar;
    fn jet_mul(&self, rhs: &Scalar) -> Scalar {
        self * rhs
    }
}

impl JetMul<Matrix> for Scalar {
    type Output = Matrix;
    fn jet_mul(&self, rhs: &Matrix) -> Matrix {
        rhs.scale(self)
    }
}

impl JetMul<Scalar> for Matrix {
    type Output = Matrix;
    fn jet_mul(&self, rhs: &Scalar) -> Matrix {
        self.scale(rhs)
    }
}

impl JetMul<Vector> for Scalar {
    type Output = Vector;
    fn jet_mul(&self, rhs: &Vector) -> Vector {
        rhs.scale(self)
    }
}

impl JetMul<Matrix> for Matrix {
    type Output = Matrix;
    fn jet_mul(&self, rhs: &Matrix) -> Matrix {
        self * rhs
    }
}

impl JetMul<Vector> for Matrix {
    type Output = Vector;
    fn jet_mul(&self, rhs: &Vector) -> Vector {
        self.mul_vec(rhs)
    }
}

/// A truncated Taylor expansion with coefficients of type `T`.
#[derive(Clone, Debug)]
pub struct Jet<T> {
    space: Arc<JetSpace>,
    order: usize,
    coeffs: Vec<T>,
}

impl<T: JetCoeff> Jet<T> {
    pub fn from_coeffs(space: &Arc<JetSpace>, order: usize, coeffs: Vec<T>) -> Self {
        assert!(order <= space.order, "jet order exceeds its space");
        assert_eq!(coeffs.len(), space.len_at(order), "coefficient count");
        Jet {
            space: space.clone(),
            order,
            coeffs,
        }
    }

    pub fn constant(space: &Arc<JetSpace>, order: usize, value: T) -> Self {
        let zero = value.zero_like();
        let mut coeffs = vec![zero; space.len_at(order)];
        coeffs[0] = value;
        Jet::from_coeffs(space, order, coeffs)
    }

    pub fn space(&self) -> &Arc<JetSpace> {
        &self.space
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// The degree-0 coefficient, i.e. the value at the base point.
    pub fn value(&self) -> &T {
        &self.coeffs[0]
    }

    pub fn coeff(&self, m: &[u8]) -> Option<&T> {
        self.space
            .index_of(m)
            .filter(|&k| k < self.coeffs.len())
            .map(|k| &self.coeffs[k])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(T::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order, "cannot raise jet order by truncation");
        Jet {
            space: self.space.clone(),
            order,
            coeffs: self.coeffs[..self.space.len_at(order)].to_vec(),
        }
    }

    pub fn map<U: JetCoeff>(&self, f: impl Fn(&T) -> U) -> Jet<U> {
        Jet {
            space: self.space.clone(),
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Pairs coefficients of two jets; the result has the smaller order.
    fn zip_with(&self, o: &Self, f: impl Fn(&mut T, &T)) -> Self {
        let order = self.order.min(o.order);
        let n = self.space.len_at(order);
        let mut coeffs = self.coeffs[..n].to_vec();
        for (a, b) in coeffs.iter_mut().zip(&o.coeffs[..n]) {
            f(a, b);
        }
        Jet {
            space: self.space.clone(),
            order,
            coeffs,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip_with(o, |a, b| a.add_assign(b))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip_with(o, |a, b| a.sub_assign(b))
    }

    pub fn neg(&self) -> Self {
        self.map(T::neg)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        self.map(|c| c.scale(s))
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        self.map(|c| c.scale_rat(r))
    }

    pub fn add_assign(&mut self, o: &Self) {
        if o.order < self.order {
            *self = self.truncate(o.order);
        }
        for (a, b) in self.coeffs.iter_mut().zip(&o.coeffs) {
            a.add_assign(b);
        }
    }

    /// Truncated product, computed to `order` (at most both input orders).
    pub fn mul_to<U, V>(&self, o: &Jet<U>, order: usize) -> Jet<V>
    where
        T: JetMul<U, Output = V>,
        U: JetCoeff,
        V: JetCoeff,
    {
        assert!(Arc::ptr_eq(&self.space, &o.space), "jets from different spaces");
        assert!(order <= self.order.min(o.order), "product order too high");
        let sp = &self.space;
        let n = sp.len_at(order);
        let zero = self.coeffs[0].jet_mul(&o.coeffs[0]).zero_like();
        let mut out = vec![zero; n];
        let a_nz: Vec<bool> = self.coeffs[..n].iter().map(|c| !c.is_zero()).collect();
        let b_nz: Vec<bool> = o.coeffs[..n].iter().map(|c| !c.is_zero()).collect();
        for &(i, j, k) in &sp.triples[..sp.triples_at[order]] {
            let (i, j) = (i as usize, j as usize);
            if a_nz[i] && b_nz[j] {
                out[k as usize].add_assign(&self.coeffs[i].jet_mul(&o.coeffs[j]));
            }
        }
        Jet {
            space: sp.clone(),
            order,
            coeffs: out,
        }
    }

    pub fn mul<U, V>(&self, o: &Jet<U>) -> Jet<V>
    where
        T: JetMul<U, Output = V>,
        U: JetCoeff,
        V: JetCoeff,
    {
        self.mul_to(o, self.order.min(o.order))
    }

    /// Partial derivative in coordinate `v`; the order drops by one.
    pub fn derivative(&self, v: usize) -> Result<Self, ExactError> {
        if self.order == 0 {
            return Err(ExactError::InsufficientOrder { have: 0, need: 1 });
        }
        let sp = &self.space;
        let n = sp.len_at(self.order - 1);
        let coeffs = (0..n)
            .map(|k| {
                let src = sp.shift[v][k] as usize;
                let factor = sp.monomials[k][v] as i64 + 1;
                let c = &self.coeffs[src];
                if factor == 1 {
                    c.clone()
                } else {
                    c.scale_rat(&Rat::from_int(factor))
                }
            })
            .collect();
        Ok(Jet {
            space: sp.clone(),
            order: self.order - 1,
            coeffs,
        })
    }
}

impl Jet<Scalar> {
    /// The coordinate function `x_v`.
    pub fn variable(space: &Arc<JetSpace>, order: usize, v: usize) -> Self {
        Jet::monomial(space, order, &unit(space.dim(), v))
    }

    /// The polynomial `Π x_v^{e_v}` expanded at the base point.
    pub fn monomial(space: &Arc<JetSpace>, order: usize, exps: &[u8]) -> Self {
        assert_eq!(exps.len(), space.dim());
        let coeffs = (0..space.len_at(order))
            .map(|k| {
                let m = &space.monomials[k];
                if m.iter().zip(exps).any(|(a, e)| a > e) {
                    return Scalar::zero();
                }
                let mut c = Rat::one();
                for ((&a, &e), x) in m.iter().zip(exps).zip(&space.base) {
                    c = &c * &(&Rat::from_int(binomial(e as u64, a as u64)) * &x.pow((e - a) as u32));
                }
                Scalar::from_rat(c)
            })
            .collect();
        Jet::from_coeffs(space, order, coeffs)
    }

    /// The polynomial `Σ x_v²`.
    pub fn norm_squared(space: &Arc<JetSpace>, order: usize) -> Self {
        let mut acc = Jet::constant(space, order, Scalar::zero());
        let mut e = vec![0u8; space.dim()];
        for v in 0..space.dim() {
            e[v] = 2;
            acc.add_assign(&Jet::monomial(space, order, &e));
            e[v] = 0;
        }
        acc
    }

    /// `Σ_k a_k·ε^k` where `ε = self − self(x̄)`.
    fn compose_series(&self, series: &[Scalar]) -> Self {
        let sp = &self.space;
        let mut eps = self.clone();
        eps.coeffs[0] = Scalar::zero();
        let mut acc = Jet::constant(sp, self.order, series[0].clone());
        let mut power = Jet::constant(sp, self.order, Scalar::one());
        for a in series.iter().skip(1) {
            power = power.mul(&eps);
            if !a.is_zero() {
                acc.add_assign(&power.scale(a));
            }
        }
        acc
    }

    pub fn inverse(&self) -> Result<Self, ExactError> {
        let c = &self.coeffs[0];
        if c.is_zero() {
            return Err(ExactError::VanishingLeadingCoefficient);
        }
        let inv = c.recip()?;
        // 1/(c+ε) = Σ (−1)^k ε^k / c^{k+1}
        let mut series = Vec::with_capacity(self.order + 1);
        let mut t = inv.clone();
        for _ in 0..=self.order {
            series.push(t.clone());
            t = -&(&t * &inv);
        }
        Ok(self.compose_series(&series))
    }

    /// Square root given the square root `root` of the value at the base point.
    pub fn sqrt_with(&self, root: &Scalar) -> Result<Self, ExactError> {
        let c = &self.coeffs[0];
        if c.is_zero() {
            return Err(ExactError::VanishingLeadingCoefficient);
        }
        if &(root * root) != c {
            return Err(ExactError::Shape(format!("{root} is not a root of {c}")));
        }
        // √(c+ε) = root·Σ binom(1/2, k)(ε/c)^k
        let inv = c.recip()?;
        let half = Rat::new(1, 2);
        let mut series = Vec::with_capacity(self.order + 1);
        let mut b = Rat::one();
        let mut ipow = Scalar::one();
        for k in 0..=self.order {
            series.push((root * &ipow).scale(&b));
            b = &(&b * &(&half - &Rat::from_int(k as i64))) / &Rat::from_int(k as i64 + 1);
            ipow = &ipow * &inv;
        }
        Ok(self.compose_series(&series))
    }

    /// The jet of `r = √(Σ x_v²)`; its value is `√s` with `s = Σ x̄_v²`.
    pub fn radius(space: &Arc<JetSpace>, order: usize) -> Result<Self, ExactError> {
        let q = Jet::norm_squared(space, order);
        let s = q.coeffs[0].as_rat().cloned().unwrap_or_else(Rat::zero);
        if s.is_zero() {
            return Err(ExactError::ZeroBasePoint);
        }
        let root = Scalar::sqrt_of(&s)?;
        q.sqrt_with(&root)
    }
}

/// `jet_of_radius` in free-function form.
pub fn jet_of_radius(base: Vec<Rat>, order: usize) -> Result<Jet<Scalar>, ExactError> {
    let space = JetSpace::new(base, order)?;
    Jet::radius(&space, order)
}

/// `jet_inverse` in free-function form.
pub fn jet_inverse(j: &Jet<Scalar>) -> Result<Jet<Scalar>, ExactError> {
    j.inverse()
}

fn unit(dim: usize, v: usize) -> Vec<u8> {
    let mut e = vec![0; dim];
    e[v] = 1;
    e
}

fn binomial(n: u64, k: u64) -> i64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1)) as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rats(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| Rat::from_int(x)).collect()
    }

    fn int(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn monomial_counts() {
        let sp = JetSpace::new(rats(&[0, 0, 0]), 4).unwrap();
        // C(3+k, k)
        assert_eq!(
            (0..=4).map(|k| sp.len_at(k)).collect::<Vec<_>>(),
            vec![1, 4, 10, 20, 35]
        );
        assert!(JetSpace::new(rats(&[0]), 5).is_err());
    }

    #[test]
    fn radius_at_pythagorean_point() {
        let r = jet_of_radius(rats(&[3, 4, 0]), 1).unwrap();
        assert_eq!(*r.value(), int(5));
        assert_eq!(r.coeff(&[1, 0, 0]).unwrap(), &Scalar::from_rat(Rat::new(3, 5)));
        assert_eq!(r.coeff(&[0, 1, 0]).unwrap(), &Scalar::from_rat(Rat::new(4, 5)));
        assert!(r.coeff(&[0, 0, 1]).unwrap().is_zero());
    }

    #[test]
    fn radius_uses_the_extension() {
        let r = jet_of_radius(rats(&[1, 1, 0]), 0).unwrap();
        assert_eq!(*r.value(), Scalar::sqrt_of(&Rat::from_int(2)).unwrap());
        assert_eq!(
            jet_of_radius(rats(&[0, 0]), 2).unwrap_err(),
            ExactError::ZeroBasePoint
        );
    }

    #[test]
    fn radius_squares_to_norm() {
        for base in [[1, 2, 2], [1, 1, 1], [-2, 0, 3]] {
            let sp = JetSpace::new(rats(&base), 4).unwrap();
            let r = Jet::radius(&sp, 4).unwrap();
            let q = Jet::norm_squared(&sp, 4);
            assert_eq!(r.mul::<Scalar, Scalar>(&r).coeffs(), q.coeffs());
        }
    }

    #[test]
    fn inverse_examples() {
        let sp = JetSpace::new(rats(&[0]), 2).unwrap();
        let two = Jet::constant(&sp, 2, int(2));
        assert_eq!(*two.inverse().unwrap().value(), Scalar::from_rat(Rat::new(1, 2)));
        let one_plus_x = Jet::constant(&sp, 2, int(1)).add(&Jet::variable(&sp, 2, 0));
        assert_eq!(one_plus_x.inverse().unwrap().coeffs(), &[int(1), int(-1), int(1)]);
        let zero = Jet::constant(&sp, 2, int(0));
        assert_eq!(zero.inverse().unwrap_err(), ExactError::VanishingLeadingCoefficient);

        let sp = JetSpace::new(rats(&[3, 4, 0]), 2).unwrap();
        let r = Jet::radius(&sp, 2).unwrap();
        let p: Jet<Scalar> = r.inverse().unwrap().mul(&r);
        assert_eq!(p.coeffs(), Jet::constant(&sp, 2, int(1)).coeffs());
    }

    #[test]
    fn derivative_of_monomial() {
        let sp = JetSpace::new(rats(&[2, -1]), 3).unwrap();
        // x²y → 2xy
        let f = Jet::monomial(&sp, 3, &[2, 1]);
        let g = Jet::monomial(&sp, 2, &[1, 1]).scale_rat(&Rat::from_int(2));
        assert_eq!(f.derivative(0).unwrap().coeffs(), g.coeffs());
        let c = Jet::constant(&sp, 0, int(1));
        assert!(c.derivative(0).is_err());
    }

    #[test]
    fn matrix_vector_jets() {
        let sp = JetSpace::new(rats(&[1, 2]), 2).unwrap();
        let x = Jet::variable(&sp, 2, 0);
        let m = x.map(|c| Matrix::identity(2).scale(c));
        let v = Jet::variable(&sp, 2, 1).map(|c| Vector(vec![c.clone(), Scalar::zero()]));
        let mv: Jet<Vector> = m.mul(&v);
        let xy = Jet::monomial(&sp, 2, &[1, 1]);
        for (a, b) in mv.coeffs().iter().zip(xy.coeffs()) {
            assert_eq!(&a.0[0], b);
            assert!(a.0[1].is_zero());
        }
    }

    /// Coefficients of a product of polynomials, by direct polynomial
    /// multiplication and re-expansion at the base point.
    fn poly_product_oracle(
        sp: &Arc<JetSpace>,
        f: &[(Vec<u8>, i64)],
        g: &[(Vec<u8>, i64)],
    ) -> Jet<Scalar> {
        let mut acc = Jet::constant(sp, sp.order(), int(0));
        for (ef, cf) in f {
            for (eg, cg) in g {
                let e: Vec<u8> = ef.iter().zip(eg).map(|(a, b)| a + b).collect();
                acc.add_assign(&Jet::monomial(sp, sp.order(), &e).scale(&int(cf * cg)));
            }
        }
        acc
    }

    fn poly_jet(sp: &Arc<JetSpace>, f: &[(Vec<u8>, i64)]) -> Jet<Scalar> {
        let mut acc = Jet::constant(sp, sp.order(), int(0));
        for (e, c) in f {
            acc.add_assign(&Jet::monomial(sp, sp.order(), e).scale(&int(*c)));
        }
        acc
    }

    fn arb_poly() -> impl Strategy<Value = Vec<(Vec<u8>, i64)>> {
        proptest::collection::vec((proptest::collection::vec(0u8..3, 2), -5i64..5), 1..4)
    }

    proptest! {
        #[test]
        fn leibniz_matches_polynomial_product(
            f in arb_poly(), g in arb_poly(), bx in -3i64..3, by in -3i64..3,
        ) {
            let sp = JetSpace::new(rats(&[bx, by]), 3).unwrap();
            let prod: Jet<Scalar> = poly_jet(&sp, &f).mul(&poly_jet(&sp, &g));
            let oracle = poly_product_oracle(&sp, &f, &g);
            prop_assert_eq!(prod.coeffs(), oracle.coeffs());
        }

        #[test]
        fn radius_square_identity(x in -6i64..6, y in -6i64..6, z in 1i64..6) {
            let sp = JetSpace::new(rats(&[x, y, z]), 3).unwrap();
            let r = Jet::radius(&sp, 3).unwrap();
            let sq: Jet<Scalar> = r.mul(&r);
            let q = Jet::norm_squared(&sp, 3);
            prop_assert_eq!(sq.coeffs(), q.coeffs());
        }
    }
}
