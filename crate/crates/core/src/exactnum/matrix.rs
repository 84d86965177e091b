//! Dense matrices and column vectors over [`Scalar`].
//!
//! Products are the hot path of every verification suite. They go through an
//! integer kernel: both factors are split into ℚ(i) parts, each part is scaled
//! to a common denominator, and the product is accumulated in `i128`. Inputs
//! whose numerators are too large for that fall back to entrywise `Scalar`
//! arithmetic, so results are always exact.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::rat::lcm_denominators;
use super::{ExactError, Gauss, Rat, Scalar};

/// A column vector.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Vector(pub Vec<Scalar>);

impl Vector {
    pub fn zeros(n: usize) -> Self {
        Vector(vec![Scalar::zero(); n])
    }

    /// The `k`-th standard basis vector of length `n`.
    pub fn unit(n: usize, k: usize) -> Self {
        let mut v = Vector::zeros(n);
        v.0[k] = Scalar::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, s: &Scalar) -> Vector {
        if s.is_zero() {
            return Vector::zeros(self.len());
        }
        Vector(self.0.iter().map(|x| x * s).collect())
    }

    pub fn scale_rat(&self, r: &Rat) -> Vector {
        Vector(self.0.iter().map(|x| x.scale(r)).collect())
    }

    pub fn mul_i(&self) -> Vector {
        Vector(self.0.iter().map(Scalar::mul_i).collect())
    }

    pub fn add_assign(&mut self, o: &Vector) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a += b;
        }
    }

    /// Hermitian product `⟨self, o⟩ = Σ conj(selfᵢ)·oᵢ`.
    pub fn inner(&self, o: &Vector) -> Scalar {
        let mut acc = Scalar::zero();
        for (a, b) in self.0.iter().zip(&o.0) {
            if !a.is_zero() && !b.is_zero() {
                acc += &(&a.conj() * b);
            }
        }
        acc
    }

    /// Kronecker product `self ⊗ o`.
    pub fn kron(&self, o: &Vector) -> Vector {
        let mut out = Vec::with_capacity(self.len() * o.len());
        for a in &self.0 {
            for b in &o.0 {
                out.push(a * b);
            }
        }
        Vector(out)
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, o: &Vector) -> Vector {
        Vector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, o: &Vector) -> Vector {
        Vector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

/// A dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn scalar_identity(n: usize, s: &Scalar) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = s.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vector]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vector::len);
        let mut m = Matrix::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for i in 0..r {
                m.data[i * c + j] = col.0[i].clone();
            }
        }
        m
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let n = entries.len();
        let mut m = Matrix::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    /// Returns `c` when the matrix equals `c·Id`.
    pub fn as_scalar_multiple(&self) -> Option<Scalar> {
        if !self.is_square() {
            return None;
        }
        let c = if self.rows == 0 {
            Scalar::zero()
        } else {
            self.get(0, 0).clone()
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                let ok = if i == j { *v == c } else { v.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).conj();
            }
        }
        t
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        if s.is_zero() {
            return Matrix::zeros(self.rows, self.cols);
        }
        if s.is_one() {
            return self.clone();
        }
        self.map(|x| if x.is_zero() { Scalar::zero() } else { x * s })
    }

    pub fn scale_rat(&self, r: &Rat) -> Matrix {
        if r.is_one() {
            return self.clone();
        }
        self.map(|x| x.scale(r))
    }

    pub fn mul_i(&self) -> Matrix {
        self.map(Scalar::mul_i)
    }

    /// `self += s·o` without allocating a temporary matrix.
    pub fn add_scaled(&mut self, o: &Matrix, s: &Scalar) {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            if !b.is_zero() {
                *a += &(b * s);
            }
        }
    }

    pub fn add_assign(&mut self, o: &Matrix) {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            *a += b;
        }
    }

    pub fn sub_assign(&mut self, o: &Matrix) {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }

    pub fn commutator(&self, o: &Matrix) -> Matrix {
        &(self * o) - &(o * self)
    }

    pub fn anticommutator(&self, o: &Matrix) -> Matrix {
        &(self * o) + &(o * self)
    }

    pub fn trace(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for i in 0..self.rows.min(self.cols) {
            acc += self.get(i, i);
        }
        acc
    }

    pub fn kron(&self, o: &Matrix) -> Matrix {
        let rows = self.rows * o.rows;
        let cols = self.cols * o.cols;
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = o.get(k, l);
                        if !b.is_zero() {
                            m.data[(i * o.rows + k) * cols + j * o.cols + l] = a * b;
                        }
                    }
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &Vector) -> Vector {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = Scalar::zero();
            for j in 0..self.cols {
                let a = self.get(i, j);
                let b = &v.0[j];
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
            }
            out.push(acc);
        }
        Vector(out)
    }

    /// The nonzero entries as `(row, col, value)`.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(k, v)| (k / self.cols, k % self.cols, v))
    }

    /// Reduced row echelon form, returning the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, row * m.cols + j);
                }
            }
            let inv = m.get(row, col).recip().expect("nonzero pivot");
            for j in col..m.cols {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let sub = m.get(row, j);
                    if sub.is_zero() {
                        continue;
                    }
                    let v = m.get(r, j) - &(&factor * sub);
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{v : self·v = 0}`.
    pub fn nullspace(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = Vector::zeros(self.cols);
                v.0[f] = Scalar::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v.0[pc] = -r.get(row, f);
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Matrix, ExactError> {
        if !self.is_square() {
            return Err(ExactError::Shape(format!(
                "inverse of {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Scalar::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(ExactError::Singular);
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// Splits into ℚ(i) parts `(P, Q, s)` with `self = P + √s·Q`.
    fn split_radical(&self) -> Result<(GaussMat, Option<(GaussMat, Arc<Rat>)>), ExactError> {
        let mut radicand: Option<Arc<Rat>> = None;
        for v in &self.data {
            if let Some(s) = v.radicand_arc() {
                match &radicand {
                    None => radicand = Some(s.clone()),
                    Some(prev) if **prev != **s => {
                        return Err(ExactError::RadicandMismatch(prev.to_string(), s.to_string()))
                    }
                    _ => {}
                }
            }
        }
        let rational = GaussMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v.rational_part().clone()).collect(),
        };
        let radical = radicand.map(|s| {
            (
                GaussMat {
                    rows: self.rows,
                    cols: self.cols,
                    data: self.data.iter().map(|v| v.radical_part().clone()).collect(),
                },
                s,
            )
        });
        Ok((rational, radical))
    }

    pub fn try_mul(&self, o: &Matrix) -> Result<Matrix, ExactError> {
        if self.cols != o.rows {
            return Err(ExactError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let (p1, q1) = self.split_radical()?;
        let (p2, q2) = o.split_radical()?;
        let radicand = match (&q1, &q2) {
            (Some((_, a)), Some((_, b))) if **a != **b => {
                return Err(ExactError::RadicandMismatch(a.to_string(), b.to_string()))
            }
            (Some((_, a)), _) | (None, Some((_, a))) => Some(a.clone()),
            (None, None) => None,
        };
        let mut rational = p1.mul(&p2);
        let mut radical: Option<GaussMat> = None;
        let mut add_radical = |m: GaussMat| {
            radical = Some(match radical.take() {
                None => m,
                Some(acc) => acc.add(&m),
            })
        };
        if let Some((q2m, _)) = &q2 {
            add_radical(p1.mul(q2m));
        }
        if let Some((q1m, s)) = &q1 {
            add_radical(q1m.mul(&p2));
            if let Some((q2m, _)) = &q2 {
                rational = rational.add(&q1m.mul(q2m).scale(s));
            }
        }
        let data = match radical {
            None => rational.data.into_iter().map(Scalar::from_gauss).collect(),
            Some(rad) => rational
                .data
                .into_iter()
                .zip(rad.data)
                .map(|(u, v)| Scalar::from_parts(u, v, radicand.clone()))
                .collect(),
        };
        Ok(Matrix {
            rows: self.rows,
            cols: o.cols,
            data,
        })
    }
}

/// A matrix over ℚ(i); the working form of the product kernel.
#[derive(Clone)]
struct GaussMat {
    rows: usize,
    cols: usize,
    data: Vec<Gauss>,
}

/// Common-denominator integer form: entries are `(re[k] + im[k]·i) / den`.
struct IntForm {
    den: i128,
    re: Vec<i64>,
    im: Vec<i64>,
    max_abs: u64,
}

impl GaussMat {
    fn int_form(&self) -> Option<IntForm> {
        let den = lcm_denominators(self.data.iter().flat_map(|g| [&g.re, &g.im]))?;
        if den > i64::MAX as i128 {
            return None;
        }
        let n = self.data.len();
        let mut re = Vec::with_capacity(n);
        let mut im = Vec::with_capacity(n);
        let mut max_abs = 0u64;
        let conv = |r: &Rat| -> Option<i64> {
            let (num, d) = r.as_small()?;
            let v = (num as i128) * (den / d as i128);
            i64::try_from(v).ok().filter(|&x| x != i64::MIN)
        };
        for g in &self.data {
            let a = conv(&g.re)?;
            let b = conv(&g.im)?;
            max_abs = max_abs.max(a.unsigned_abs()).max(b.unsigned_abs());
            re.push(a);
            im.push(b);
        }
        Some(IntForm {
            den,
            re,
            im,
            max_abs,
        })
    }

    fn mul(&self, o: &GaussMat) -> GaussMat {
        let (n, k, m) = (self.rows, self.cols, o.cols);
        if let (Some(a), Some(b)) = (self.int_form(), o.int_form()) {
            // |Σ| ≤ 2·k·max_a·max_b must stay below 2^126
            let bound = (a.max_abs as u128)
                .checked_mul(b.max_abs as u128)
                .and_then(|x| x.checked_mul(2 * k.max(1) as u128));
            if let Some(bound) = bound.filter(|&x| x < (1u128 << 126)) {
                let _ = bound;
                let den = a.den * b.den;
                let mut data = Vec::with_capacity(n * m);
                let mut acc_re = vec![0i128; m];
                let mut acc_im = vec![0i128; m];
                for i in 0..n {
                    acc_re.iter_mut().for_each(|x| *x = 0);
                    acc_im.iter_mut().for_each(|x| *x = 0);
                    for l in 0..k {
                        let ar = a.re[i * k + l] as i128;
                        let ai = a.im[i * k + l] as i128;
                        if ar == 0 && ai == 0 {
                            continue;
                        }
                        let row = l * m;
                        for j in 0..m {
                            let br = b.re[row + j] as i128;
                            let bi = b.im[row + j] as i128;
                            if br == 0 && bi == 0 {
                                continue;
                            }
                            acc_re[j] += ar * br - ai * bi;
                            acc_im[j] += ar * bi + ai * br;
                        }
                    }
                    for j in 0..m {
                        data.push(Gauss::new(
                            Rat::from_i128(acc_re[j], den),
                            Rat::from_i128(acc_im[j], den),
                        ));
                    }
                }
                return GaussMat { rows: n, cols: m, data };
            }
        }
        let mut data = vec![Gauss::zero(); n * m];
        for i in 0..n {
            for l in 0..k {
                let a = &self.data[i * k + l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..m {
                    let b = &o.data[l * m + j];
                    if !b.is_zero() {
                        data[i * m + j] = data[i * m + j].add(&a.mul(b));
                    }
                }
            }
        }
        GaussMat { rows: n, cols: m, data }
    }

    fn add(&self, o: &GaussMat) -> GaussMat {
        GaussMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    fn scale(&self, r: &Rat) -> GaussMat {
        GaussMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.scale(r)).collect(),
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, o: &Matrix) -> Matrix {
        match self.try_mul(o) {
            Ok(m) => m,
            Err(e) => panic!("{e}"),
        }
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, o: &Matrix) -> Matrix {
        let mut m = self.clone();
        m.add_assign(o);
        m
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, o: &Matrix) -> Matrix {
        let mut m = self.clone();
        m.sub_assign(o);
        m
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.map(|x| -x)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl serde::Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        serde::Serialize::serialize(&rows, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(re: i64, im: i64) -> Scalar {
        Scalar::from_gauss(Gauss::new(Rat::from_int(re), Rat::from_int(im)))
    }

    fn naive_mul(a: &Matrix, b: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(a.rows(), b.cols());
        for i in 0..a.rows() {
            for j in 0..b.cols() {
                let mut acc = Scalar::zero();
                for k in 0..a.cols() {
                    acc = &acc + &(a.get(i, k) * b.get(k, j));
                }
                m.set(i, j, acc);
            }
        }
        m
    }

    #[test]
    fn identity_and_inverse() {
        let a = Matrix::from_rows(vec![vec![g(1, 1), g(2, 0)], vec![g(0, -1), g(3, 2)]]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        assert!(Matrix::zeros(2, 2).inverse().is_err());
    }

    #[test]
    fn nullspace_is_annihilated() {
        let a = Matrix::from_rows(vec![
            vec![g(1, 0), g(2, 0), g(3, 0)],
            vec![g(2, 0), g(4, 0), g(6, 0)],
        ]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(a.mul_vec(&v).is_zero());
        }
    }

    #[test]
    fn product_with_radicals_matches_naive() {
        let s = Rat::from_int(3);
        let r3 = Scalar::sqrt_of(&s).unwrap();
        let a = Matrix::from_rows(vec![vec![r3.clone(), g(1, 2)], vec![g(0, 1), &r3 * &g(2, -1)]]);
        let b = Matrix::from_rows(vec![vec![g(1, 0), r3.clone()], vec![&r3 + &g(1, 1), g(0, 0)]]);
        assert_eq!(&a * &b, naive_mul(&a, &b));
    }

    #[test]
    fn product_falls_back_on_huge_entries() {
        let big = Scalar::from_rat(&Rat::from_int(i64::MAX) * &Rat::from_int(5));
        let a = Matrix::from_rows(vec![vec![big.clone(), g(1, 0)], vec![g(0, 1), big.clone()]]);
        assert_eq!(&a * &a, naive_mul(&a, &a));
    }

    fn arb_entry() -> impl Strategy<Value = Scalar> {
        (-9i64..9, 1i64..7, -9i64..9, 1i64..7).prop_map(|(a, b, c, d)| {
            Scalar::from_gauss(Gauss::new(Rat::new(a, b), Rat::new(c, d)))
        })
    }

    proptest! {
        #[test]
        fn kernel_agrees_with_entrywise(
            xs in proptest::collection::vec(arb_entry(), 12),
            ys in proptest::collection::vec(arb_entry(), 12),
        ) {
            let a = Matrix::from_rows(xs.chunks(4).map(|c| c.to_vec()).collect());
            let b = Matrix::from_rows(ys.chunks(3).map(|c| c.to_vec()).collect());
            prop_assert_eq!(&a * &b, naive_mul(&a, &b));
        }
    }
}
