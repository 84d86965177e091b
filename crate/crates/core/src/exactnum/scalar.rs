//! Elements of ℚ(i, √s).
//!
//! A [`Scalar`] is `(a + b·i) + (c + d·i)·√s` for a single positive rational
//! radicand `s` that is not a rational square. Scalars without a radical
//! part carry no radicand and mix freely with any other scalar; two scalars
//! with different radicands cannot be combined.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::Arc;

use super::{ExactError, Rat};

/// A Gaussian rational `re + im·i`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Gauss {
    pub re: Rat,
    pub im: Rat,
}

impl Gauss {
    pub fn new(re: Rat, im: Rat) -> Self {
        Gauss { re, im }
    }

    pub fn zero() -> Self {
        Gauss::default()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Gauss {
        Gauss::new(self.re.clone(), -&self.im)
    }

    #[inline]
    pub fn add(&self, o: &Gauss) -> Gauss {
        Gauss::new(&self.re + &o.re, &self.im + &o.im)
    }

    #[inline]
    pub fn sub(&self, o: &Gauss) -> Gauss {
        Gauss::new(&self.re - &o.re, &self.im - &o.im)
    }

    #[inline]
    pub fn mul(&self, o: &Gauss) -> Gauss {
        if self.im.is_zero() {
            if o.im.is_zero() {
                return Gauss::new(&self.re * &o.re, Rat::zero());
            }
            return Gauss::new(&self.re * &o.re, &self.re * &o.im);
        }
        if o.im.is_zero() {
            return Gauss::new(&self.re * &o.re, &self.im * &o.re);
        }
        Gauss::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn scale(&self, r: &Rat) -> Gauss {
        Gauss::new(&self.re * r, &self.im * r)
    }

    pub fn neg(&self) -> Gauss {
        Gauss::new(-&self.re, -&self.im)
    }

    /// `|z|² = re² + im²`.
    pub fn norm_sqr(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn recip(&self) -> Result<Gauss, ExactError> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let inv = n.recip()?;
        Ok(self.conj().scale(&inv))
    }
}

/// An element of ℚ(i, √s).
#[derive(Clone, Default)]
pub struct Scalar {
    rational: Gauss,
    radical: Gauss,
    radicand: Option<Arc<Rat>>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_rat(Rat::one())
    }

    pub fn i() -> Self {
        Scalar::from_gauss(Gauss::new(Rat::zero(), Rat::one()))
    }

    pub fn from_rat(r: Rat) -> Self {
        Scalar::from_gauss(Gauss::new(r, Rat::zero()))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rat(Rat::from_int(n))
    }

    /// `a + b·i` for integers `a`, `b`.
    pub fn from_gauss_ints(a: i64, b: i64) -> Self {
        Scalar::from_gauss(Gauss::new(Rat::from_int(a), Rat::from_int(b)))
    }

    pub fn from_gauss(g: Gauss) -> Self {
        Scalar {
            rational: g,
            radical: Gauss::zero(),
            radicand: None,
        }
    }

    /// Builds `(a + b·i) + (c + d·i)·√s`.
    ///
    /// When `s` is the square of a rational the radical part is folded into
    /// the rational part, so the result lies in ℚ(i).
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat, s: Rat) -> Result<Self, ExactError> {
        let radical = Gauss::new(c, d);
        let rational = Gauss::new(a, b);
        Scalar::with_radical(rational, radical, s)
    }

    fn with_radical(rational: Gauss, radical: Gauss, s: Rat) -> Result<Self, ExactError> {
        if !s.is_positive() {
            return Err(ExactError::NonPositiveRadicand(s.to_string()));
        }
        if let Some(root) = s.sqrt_exact() {
            return Ok(Scalar::from_gauss(rational.add(&radical.scale(&root))));
        }
        let (outside, radicand) = split_square(&s);
        Ok(Scalar {
            rational,
            radical: radical.scale(&outside),
            radicand: Some(Arc::new(radicand)),
        })
    }

    /// The nonnegative square root of a positive rational.
    /// Radicands are stored as square-free integers where trial division allows.
    pub fn sqrt_of(s: &Rat) -> Result<Scalar, ExactError> {
        Scalar::with_radical(Gauss::zero(), Gauss::new(Rat::one(), Rat::zero()), s.clone())
    }

    /// Components `(a, b, c, d)` of `(a + b·i) + (c + d·i)·√s`.
    pub fn components(&self) -> (&Rat, &Rat, &Rat, &Rat) {
        (
            &self.rational.re,
            &self.rational.im,
            &self.radical.re,
            &self.radical.im,
        )
    }

    pub fn rational_part(&self) -> &Gauss {
        &self.rational
    }

    pub fn radical_part(&self) -> &Gauss {
        &self.radical
    }

    /// The radicand, when the scalar has a nonzero radical part.
    pub fn radicand(&self) -> Option<&Rat> {
        if self.radical.is_zero() {
            None
        } else {
            self.radicand.as_deref()
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.radical.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.radical.is_zero() && self.rational.re.is_one() && self.rational.im.is_zero()
    }

    /// True when the value lies in ℚ(i).
    #[inline]
    pub fn is_gaussian(&self) -> bool {
        self.radical.is_zero()
    }

    /// The value as a rational, if it is one.
    pub fn as_rat(&self) -> Option<&Rat> {
        if self.radical.is_zero() && self.rational.im.is_zero() {
            Some(&self.rational.re)
        } else {
            None
        }
    }

    fn join_radicand(&self, other: &Scalar) -> Result<Option<Arc<Rat>>, ExactError> {
        match (self.radicand(), other.radicand()) {
            (None, None) => Ok(None),
            (Some(_), None) => Ok(self.radicand.clone()),
            (None, Some(_)) => Ok(other.radicand.clone()),
            (Some(a), Some(b)) => {
                if a == b {
                    Ok(self.radicand.clone())
                } else {
                    Err(ExactError::RadicandMismatch(a.to_string(), b.to_string()))
                }
            }
        }
    }

    fn build(rational: Gauss, radical: Gauss, radicand: Option<Arc<Rat>>) -> Scalar {
        Scalar {
            rational,
            radical,
            radicand,
        }
    }

    pub fn try_add(&self, o: &Scalar) -> Result<Scalar, ExactError> {
        if o.is_gaussian() && self.is_gaussian() {
            return Ok(Scalar::from_gauss(self.rational.add(&o.rational)));
        }
        let rad = self.join_radicand(o)?;
        Ok(Scalar::build(
            self.rational.add(&o.rational),
            self.radical.add(&o.radical),
            rad,
        ))
    }

    pub fn try_sub(&self, o: &Scalar) -> Result<Scalar, ExactError> {
        self.try_add(&o.neg_ref())
    }

    pub fn try_mul(&self, o: &Scalar) -> Result<Scalar, ExactError> {
        if self.is_gaussian() && o.is_gaussian() {
            return Ok(Scalar::from_gauss(self.rational.mul(&o.rational)));
        }
        let rad = self.join_radicand(o)?;
        let s = rad.as_deref().expect("radical part implies radicand");
        let mut rational = self.rational.mul(&o.rational);
        if !self.radical.is_zero() && !o.radical.is_zero() {
            rational = rational.add(&self.radical.mul(&o.radical).scale(s));
        }
        let radical = self
            .rational
            .mul(&o.radical)
            .add(&self.radical.mul(&o.rational));
        Ok(Scalar::build(rational, radical, rad))
    }

    /// Multiplicative inverse; rationalizes over √s and then over i.
    pub fn recip(&self) -> Result<Scalar, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if self.is_gaussian() {
            return Ok(Scalar::from_gauss(self.rational.recip()?));
        }
        let s = self.radicand.as_deref().expect("radical part implies radicand");
        // (u + v√s)(u − v√s) = u² − s v² ∈ ℚ(i)
        let norm = self
            .rational
            .mul(&self.rational)
            .sub(&self.radical.mul(&self.radical).scale(s));
        let inv = norm.recip()?;
        Ok(Scalar::build(
            self.rational.mul(&inv),
            self.radical.mul(&inv).neg(),
            self.radicand.clone(),
        ))
    }

    pub fn try_div(&self, o: &Scalar) -> Result<Scalar, ExactError> {
        self.try_mul(&o.recip()?)
    }

    #[inline]
    fn neg_ref(&self) -> Scalar {
        Scalar::build(self.rational.neg(), self.radical.neg(), self.radicand.clone())
    }

    /// Complex conjugate (i ↦ −i; √s is real).
    pub fn conj(&self) -> Scalar {
        Scalar::build(self.rational.conj(), self.radical.conj(), self.radicand.clone())
    }

    pub fn scale(&self, r: &Rat) -> Scalar {
        if r.is_zero() {
            return Scalar::zero();
        }
        Scalar::build(
            self.rational.scale(r),
            self.radical.scale(r),
            self.radicand.clone(),
        )
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Scalar {
        let rot = |g: &Gauss| Gauss::new(-&g.im, g.re.clone());
        Scalar::build(rot(&self.rational), rot(&self.radical), self.radicand.clone())
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub(crate) fn radicand_arc(&self) -> Option<&Arc<Rat>> {
        if self.radical.is_zero() {
            None
        } else {
            self.radicand.as_ref()
        }
    }

    pub(crate) fn from_parts(rational: Gauss, radical: Gauss, radicand: Option<Arc<Rat>>) -> Self {
        if radical.is_zero() {
            Scalar::from_gauss(rational)
        } else {
            Scalar::build(rational, radical, radicand)
        }
    }
}

/// `s = f²·t` with `t` an integer, square-free up to the trial-division bound.
fn split_square(s: &Rat) -> (Rat, Rat) {
    const BOUND: u64 = 1 << 17;
    let Some((p, q)) = s.as_small() else {
        return (Rat::one(), s.clone());
    };
    let (p, q) = (p as u64, q as u64);
    let Some(mut n) = p.checked_mul(q) else {
        return (Rat::one(), s.clone());
    };
    let mut f: u64 = 1;
    let mut d: u64 = 2;
    while d <= BOUND && d * d <= n {
        while n % (d * d) == 0 {
            n /= d * d;
            f *= d;
        }
        d += 1;
    }
    (
        Rat::from_i128(f as i128, q as i128),
        Rat::from_i128(n as i128, 1),
    )
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.rational == other.rational
            && self.radical == other.radical
            && (self.radical.is_zero() || self.radicand == other.radicand)
    }
}

impl Eq for Scalar {}

impl From<Rat> for Scalar {
    fn from(r: Rat) -> Self {
        Scalar::from_rat(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Gauss> for Scalar {
    fn from(g: Gauss) -> Self {
        Scalar::from_gauss(g)
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a, 'b> $tr<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            #[inline]
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            #[inline]
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'b> $tr<&'b Scalar> for Scalar {
            type Output = Scalar;
            #[inline]
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

scalar_binop!(Add, add, try_add);
scalar_binop!(Sub, sub, try_sub);
scalar_binop!(Mul, mul, try_mul);
scalar_binop!(Div, div, try_div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl AddAssign<&Scalar> for Scalar {
    #[inline]
    fn add_assign(&mut self, rhs: &Scalar) {
        if rhs.is_zero() {
            return;
        }
        if self.is_gaussian() && rhs.is_gaussian() {
            self.rational.re += &rhs.rational.re;
            self.rational.im += &rhs.rational.im;
            return;
        }
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

/// The four components rendered as `a`, `b*i`, `c*sqrt(s)`, `d*i*sqrt(s)`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let rad = self.radicand().map(|s| format!("sqrt({s})"));
        let terms: [(&Rat, String); 4] = [
            (&self.rational.re, String::new()),
            (&self.rational.im, "*i".to_string()),
            (
                &self.radical.re,
                rad.as_ref().map(|r| format!("*{r}")).unwrap_or_default(),
            ),
            (
                &self.radical.im,
                rad.as_ref().map(|r| format!("*i*{r}")).unwrap_or_default(),
            ),
        ];
        let mut first = true;
        for (coeff, suffix) in terms.iter() {
            if coeff.is_zero() {
                continue;
            }
            let text = coeff.to_string();
            if first {
                write!(f, "{text}{suffix}")?;
            } else if let Some(rest) = text.strip_prefix('-') {
                write!(f, "-{rest}{suffix}")?;
            } else {
                write!(f, "+{text}{suffix}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = ExactError;

    /// Inverse of `Display`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || ExactError::Parse(text.to_string());
        let src: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(bad());
        }
        // split on top-level signs (parentheses only appear in sqrt(..))
        let mut terms = Vec::new();
        let mut depth = 0usize;
        let mut start = 0usize;
        for (idx, ch) in src.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth = depth.checked_sub(1).ok_or_else(bad)?,
                '+' | '-' if depth == 0 && idx > start => {
                    terms.push(&src[start..idx]);
                    start = idx;
                }
                _ => {}
            }
        }
        terms.push(&src[start..]);

        let mut comps = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
        let mut radicand: Option<Rat> = None;
        for term in terms {
            let mut factors = term.split('*');
            let coeff: Rat = factors.next().ok_or_else(bad)?.parse()?;
            let mut imag = false;
            let mut root: Option<Rat> = None;
            for factor in factors {
                if factor == "i" && !imag {
                    imag = true;
                } else if let Some(inner) =
                    factor.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')'))
                {
                    if root.is_some() {
                        return Err(bad());
                    }
                    root = Some(inner.parse()?);
                } else {
                    return Err(bad());
                }
            }
            let slot = match (root, imag) {
                (None, false) => 0,
                (None, true) => 1,
                (Some(s), im) => {
                    match &radicand {
                        Some(prev) if *prev != s => {
                            return Err(ExactError::RadicandMismatch(prev.to_string(), s.to_string()))
                        }
                        _ => radicand = Some(s),
                    }
                    if im {
                        3
                    } else {
                        2
                    }
                }
            };
            comps[slot] += &coeff;
        }
        let [a, b, c, d] = comps;
        match radicand {
            None => Ok(Scalar::from_gauss(Gauss::new(a, b))),
            Some(s) => Scalar::new(a, b, c, d, s),
        }
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `a op b` with the error cases surfaced instead of panicking.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar, ExactError> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
        ArithOp::Div => a.try_div(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn surd(a: i64, c: i64, s: i64) -> Scalar {
        Scalar::new(q(a, 1), Rat::zero(), q(c, 1), Rat::zero(), q(s, 1)).unwrap()
    }

    #[test]
    fn radicands_are_square_free() {
        let r = Scalar::sqrt_of(&q(63, 1)).unwrap();
        assert_eq!(r.radicand(), Some(&q(7, 1)));
        assert_eq!(r.components(), (&Rat::zero(), &Rat::zero(), &q(3, 1), &Rat::zero()));

        let r = Scalar::sqrt_of(&q(1, 8)).unwrap();
        assert_eq!(r.radicand(), Some(&q(2, 1)));
        assert_eq!(r.components().2, &q(1, 4));

        assert_eq!(Scalar::sqrt_of(&q(49, 4)).unwrap(), Scalar::from_rat(q(7, 2)));
    }

    #[test]
    fn difference_of_squares() {
        let p = surd(1, 1, 5);
        let m = surd(1, -1, 5);
        assert_eq!(scalar_arith(&p, &m, ArithOp::Mul).unwrap(), Scalar::from_int(-4));
    }

    #[test]
    fn defining_relation() {
        let r2 = Scalar::sqrt_of(&q(2, 1)).unwrap();
        assert_eq!(&r2 * &r2, Scalar::from_int(2));
    }

    #[test]
    fn gaussian_reciprocal() {
        let z = Scalar::from_gauss(Gauss::new(q(3, 1), q(4, 1)));
        let inv = scalar_arith(&Scalar::one(), &z, ArithOp::Div).unwrap();
        assert_eq!(inv, Scalar::from_gauss(Gauss::new(q(3, 25), q(-4, 25))));
        assert!((&inv * &z).is_one());
    }

    #[test]
    fn perfect_square_radicand_folds() {
        let s = Scalar::new(q(1, 1), Rat::zero(), q(2, 1), q(1, 1), q(9, 4)).unwrap();
        assert!(s.is_gaussian());
        assert_eq!(s, Scalar::from_gauss(Gauss::new(q(4, 1), q(3, 2))));
    }

    #[test]
    fn errors() {
        let z = Scalar::zero();
        assert_eq!(
            scalar_arith(&Scalar::one(), &z, ArithOp::Div),
            Err(ExactError::DivisionByZero)
        );
        let a = Scalar::sqrt_of(&q(2, 1)).unwrap();
        let b = Scalar::sqrt_of(&q(3, 1)).unwrap();
        assert!(matches!(
            scalar_arith(&a, &b, ArithOp::Add),
            Err(ExactError::RadicandMismatch(_, _))
        ));
        assert!(Scalar::sqrt_of(&q(-2, 1)).is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::from_rat(q(3, 4)).to_string(), "3/4");
        let g = Scalar::from_gauss(Gauss::new(q(1, 2), q(-3, 4)));
        assert_eq!(g.to_string(), "1/2-3/4*i");
        let s = Scalar::new(q(1, 2), Rat::zero(), q(1, 3), Rat::zero(), q(5, 1)).unwrap();
        assert_eq!(s.to_string(), "1/2+1/3*sqrt(5)");
        assert_eq!(Scalar::i().to_string(), "1*i");
        assert_eq!(Scalar::zero().to_string(), "0");
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-20i64..20, 1i64..12).prop_map(|(n, d)| Rat::new(n, d))
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (arb_rat(), arb_rat(), arb_rat(), arb_rat())
            .prop_map(|(a, b, c, d)| Scalar::new(a, b, c, d, Rat::from_int(7)).unwrap())
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb_scalar(), y in arb_scalar(), z in arb_scalar()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&x * &y, &y * &x);
            if !x.is_zero() {
                prop_assert!((&x * &x.recip().unwrap()).is_one());
            }
        }

        #[test]
        fn display_round_trips(x in arb_scalar()) {
            let back: Scalar = x.to_string().parse().unwrap();
            prop_assert_eq!(back, x);
        }
    }
}
