//! Arbitrary-precision rationals with an inline fast path.
//!
//! Almost every rational met in this crate has a numerator and denominator
//! that fit in an `i64`, so [`Rat`] keeps those inline and only falls back to
//! `BigRational` when an intermediate result overflows. The representation is
//! canonical: a value that fits is always stored small, which makes structural
//! equality and hashing agree with numeric equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::ExactError;

#[derive(Clone)]
enum Repr {
    /// Reduced, `den > 0`, `num != i64::MIN`.
    Small { num: i64, den: i64 },
    /// Reduced and does not fit the small form.
    Big(BigRational),
}

/// An exact rational number, always in lowest terms with positive denominator.
#[derive(Clone)]
pub struct Rat(Repr);

#[inline]
fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

#[inline]
fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a <= u64::MAX as u128 && b <= u64::MAX as u128 {
        return gcd_u64(a as u64, b as u64) as u128;
    }
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl Rat {
    pub fn zero() -> Self {
        Rat(Repr::Small { num: 0, den: 1 })
    }

    pub fn one() -> Self {
        Rat(Repr::Small { num: 1, den: 1 })
    }

    pub fn from_int(n: i64) -> Self {
        if n == i64::MIN {
            return Rat::from_big(BigRational::from_integer(BigInt::from(n)));
        }
        Rat(Repr::Small { num: n, den: 1 })
    }

    /// `num/den`, reduced. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "rational with zero denominator");
        Rat::from_i128(num as i128, den as i128)
    }

    /// Builds a reduced rational from a 128-bit fraction. Panics if `den == 0`.
    pub fn from_i128(num: i128, den: i128) -> Self {
        assert!(den != 0, "rational with zero denominator");
        if num == 0 {
            return Rat::zero();
        }
        let (mut num, mut den) = if den < 0 {
            match (num.checked_neg(), den.checked_neg()) {
                (Some(n), Some(d)) => (n, d),
                _ => {
                    return Rat::from_big(BigRational::new(BigInt::from(num), BigInt::from(den)))
                }
            }
        } else {
            (num, den)
        };
        let g = gcd_u128(num.unsigned_abs(), den as u128);
        if g > 1 {
            num /= g as i128;
            den /= g as i128;
        }
        Rat::pack_reduced(num, den)
    }

    #[inline]
    fn pack_reduced(num: i128, den: i128) -> Self {
        if num > i64::MIN as i128 && num <= i64::MAX as i128 && den <= i64::MAX as i128 {
            Rat(Repr::Small {
                num: num as i64,
                den: den as i64,
            })
        } else {
            Rat(Repr::Big(BigRational::new_raw(
                BigInt::from(num),
                BigInt::from(den),
            )))
        }
    }

    /// Canonicalizes a big rational (demoting it when it fits).
    pub fn from_big(r: BigRational) -> Self {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN {
                return Rat(Repr::Small { num: n, den: d });
            }
        }
        Rat(Repr::Big(r))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rat::from_big(BigRational::from_integer(n))
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => {
                BigRational::new_raw(BigInt::from(*num), BigInt::from(*den))
            }
            Repr::Big(b) => b.clone(),
        }
    }

    /// Numerator and denominator as `i64` when the value is stored small.
    #[inline]
    pub fn as_small(&self) -> Option<(i64, i64)> {
        match self.0 {
            Repr::Small { num, den } => Some((num, den)),
            Repr::Big(_) => None,
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, .. } => BigInt::from(*num),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small { num: 1, den: 1 })
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small { num, .. } => num.signum() as i32,
            Repr::Big(b) => {
                if b.is_positive() {
                    1
                } else if b.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn abs(&self) -> Rat {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Result<Rat, ExactError> {
        match &self.0 {
            Repr::Small { num: 0, .. } => Err(ExactError::DivisionByZero),
            Repr::Small { num, den } => Ok(Rat::from_i128(*den as i128, *num as i128)),
            Repr::Big(b) => Ok(Rat::from_big(b.recip())),
        }
    }

    pub fn pow(&self, exp: u32) -> Rat {
        let mut acc = Rat::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// The value as an integer, if it is one.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small { num, den: 1 } => Some(*num),
            _ => None,
        }
    }

    /// Nonnegative rational square root, when it exists in ℚ.
    pub fn sqrt_exact(&self) -> Option<Rat> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer();
        let d = self.denom();
        let rn = n.sqrt();
        let rd = d.sqrt();
        if &rn * &rn == n && &rd * &rd == d {
            Some(Rat::from_big(BigRational::new(rn, rd)))
        } else {
            None
        }
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        self.to_big().floor().to_integer()
    }

    fn big_op(a: &Rat, b: &Rat, f: impl Fn(BigRational, BigRational) -> BigRational) -> Rat {
        Rat::from_big(f(a.to_big(), b.to_big()))
    }

    #[inline]
    fn add_ref(&self, other: &Rat) -> Rat {
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&self.0, &other.0)
        {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if b == d {
                // both reduced with equal denominator
                let n = a + c;
                if n == 0 {
                    return Rat::zero();
                }
                if b == 1 {
                    return Rat::pack_reduced(n, 1);
                }
                let g = gcd_u128(n.unsigned_abs(), b as u128) as i128;
                return Rat::pack_reduced(n / g, b / g);
            }
            let g = gcd_u64(b as u64, d as u64) as i128;
            if g == 1 {
                // already reduced: gcd(ad + cb, bd) = 1
                return Rat::pack_reduced(a * d + c * b, b * d);
            }
            let t = a * (d / g) + c * (b / g);
            if t == 0 {
                return Rat::zero();
            }
            let g2 = gcd_u128(t.unsigned_abs(), g as u128) as i128;
            return Rat::pack_reduced(t / g2, (b / g) * (d / g2));
        }
        Rat::big_op(self, other, |x, y| x + y)
    }

    #[inline]
    fn mul_ref(&self, other: &Rat) -> Rat {
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&self.0, &other.0)
        {
            if *a == 0 || *c == 0 {
                return Rat::zero();
            }
            let g1 = gcd_u64(a.unsigned_abs(), *d as u64) as i64;
            let g2 = gcd_u64(c.unsigned_abs(), *b as u64) as i64;
            let n = (*a / g1) as i128 * (*c / g2) as i128;
            let m = (*b / g2) as i128 * (*d / g1) as i128;
            return Rat::pack_reduced(n, m);
        }
        Rat::big_op(self, other, |x, y| x * y)
    }

    #[inline]
    fn neg_ref(&self) -> Rat {
        match &self.0 {
            Repr::Small { num, den } => Rat(Repr::Small {
                num: -*num,
                den: *den,
            }),
            Repr::Big(b) => Rat::from_big(-b.clone()),
        }
    }

    /// `self * k` for a small integer `k`.
    pub fn mul_int(&self, k: i64) -> Rat {
        self * &Rat::from_int(k)
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::zero()
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

impl From<i32> for Rat {
    fn from(n: i32) -> Self {
        Rat::from_int(n as i64)
    }
}

impl From<usize> for Rat {
    fn from(n: usize) -> Self {
        Rat::from_i128(n as i128, 1)
    }
}

impl PartialEq for Rat {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Rat {}

impl Hash for Rat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small { num, den } => {
                0u8.hash(state);
                num.hash(state);
                den.hash(state);
            }
            Repr::Big(b) => {
                1u8.hash(state);
                b.hash(state);
            }
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a, 'b> $tr<&'b Rat> for &'a Rat {
            type Output = Rat;
            #[inline]
            fn $method(self, rhs: &'b Rat) -> Rat {
                let f: fn(&Rat, &Rat) -> Rat = $body;
                f(self, rhs)
            }
        }
        impl $tr<Rat> for Rat {
            type Output = Rat;
            #[inline]
            fn $method(self, rhs: Rat) -> Rat {
                (&self).$method(&rhs)
            }
        }
        impl<'b> $tr<&'b Rat> for Rat {
            type Output = Rat;
            #[inline]
            fn $method(self, rhs: &'b Rat) -> Rat {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Rat> for &'a Rat {
            type Output = Rat;
            #[inline]
            fn $method(self, rhs: Rat) -> Rat {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_ref(b));
forward_binop!(Sub, sub, |a, b| a.add_ref(&b.neg_ref()));
forward_binop!(Mul, mul, |a, b| a.mul_ref(b));
forward_binop!(Div, div, |a, b| a.mul_ref(
    &b.recip().expect("rational division by zero")
));

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        self.neg_ref()
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        self.neg_ref()
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        *self = self.add_ref(rhs);
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        *self = self.add_ref(&rhs.neg_ref());
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        *self = self.mul_ref(rhs);
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = ExactError;

    /// Parses `p` or `p/q`; decimal notation is rejected.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ExactError::Parse(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let valid = |t: &str| {
            let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
            !digits.is_empty() && digits.bytes().all(|c| c.is_ascii_digit())
        };
        if !valid(n) || !valid(d) {
            return Err(bad());
        }
        let n: BigInt = n.trim_start_matches('+').parse().map_err(|_| bad())?;
        let d: BigInt = d.trim_start_matches('+').parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rat::from_big(BigRational::new(n, d)))
    }
}

impl serde::Serialize for Rat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Rat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Least common multiple of the denominators, if it fits an `i128`.
pub(crate) fn lcm_denominators<'a>(items: impl Iterator<Item = &'a Rat>) -> Option<i128> {
    let mut l: i128 = 1;
    for r in items {
        let (_, d) = r.as_small()?;
        let d = d as i128;
        if l % d != 0 {
            let g = gcd_u128(l as u128, d as u128) as i128;
            l = (l / g).checked_mul(d)?;
        }
    }
    Some(l)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_canonicalizes() {
        assert_eq!(Rat::new(6, -4), Rat::new(-3, 2));
        assert_eq!(Rat::new(0, 5), Rat::zero());
        assert_eq!(Rat::new(0, -5).to_string(), "0");
        assert_eq!(Rat::new(4, 2).to_string(), "2");
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rat::from_int(i64::MAX);
        let sq = &big * &big;
        assert!(sq.as_small().is_none());
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(back.as_small().is_some());
        let m = Rat::from_int(i64::MIN);
        assert_eq!(-(-m.clone()), m);
    }

    #[test]
    fn parse_rejects_decimals() {
        assert_eq!("3/4".parse::<Rat>().unwrap(), Rat::new(3, 4));
        assert_eq!("-1/2".parse::<Rat>().unwrap(), Rat::new(-1, 2));
        assert_eq!("7".parse::<Rat>().unwrap(), Rat::from_int(7));
        assert!("0.5".parse::<Rat>().is_err());
        assert!("1/0".parse::<Rat>().is_err());
        assert!("abc".parse::<Rat>().is_err());
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(Rat::new(9, 4).sqrt_exact(), Some(Rat::new(3, 2)));
        assert_eq!(Rat::from_int(2).sqrt_exact(), None);
        assert_eq!(Rat::from_int(-4).sqrt_exact(), None);
    }

    #[test]
    fn ordering_matches_value() {
        assert!(Rat::new(1, 3) < Rat::new(1, 2));
        assert!(Rat::new(-1, 2) < Rat::zero());
        let huge = &Rat::from_int(i64::MAX) * &Rat::from_int(3);
        assert!(huge > Rat::from_int(i64::MAX));
    }

    #[test]
    fn lcm_of_denominators() {
        let xs = [Rat::new(1, 4), Rat::new(1, 6), Rat::from_int(3)];
        assert_eq!(lcm_denominators(xs.iter()), Some(12));
    }
}
