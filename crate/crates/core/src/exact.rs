//! Exact arithmetic in ½ℤ[√a] and 2×2 matrices over it.
//!
//! A [`QuadHalfInt`] stores the numerators `(u, v)` of `(u + v√a)/2`. The set
//! ½ℤ[√a] is not closed under multiplication on its own, but the matrix groups
//! used here are: a matrix product is accumulated over the denominator 4 and
//! halved only once per entry, after the cross terms have been summed.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// True when `a` is a positive square-free integer.
pub fn is_squarefree(a: u32) -> bool {
    if a == 0 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= a {
        if a.is_multiple_of(d * d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `(u + v√a)/2` with arbitrary-precision numerators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadHalfInt {
    u: BigInt,
    v: BigInt,
    a: u32,
}

/// `(u + v√a)/4`: intermediate for products before they are halved.
#[derive(Clone, Debug)]
struct Quarter {
    u: BigInt,
    v: BigInt,
    a: u32,
}

impl Quarter {
    fn product(x: &QuadHalfInt, y: &QuadHalfInt) -> Quarter {
        assert_same_radicand(x.a, y.a);
        Quarter {
            u: &x.u * &y.u + BigInt::from(x.a) * &x.v * &y.v,
            v: &x.u * &y.v + &x.v * &y.u,
            a: x.a,
        }
    }

    fn add(mut self, other: &Quarter) -> Quarter {
        self.u += &other.u;
        self.v += &other.v;
        self
    }

    fn sub(mut self, other: &Quarter) -> Quarter {
        self.u -= &other.u;
        self.v -= &other.v;
        self
    }

    fn into_half(self) -> Option<QuadHalfInt> {
        let two = BigInt::from(2);
        if self.u.is_multiple_of(&two) && self.v.is_multiple_of(&two) {
            Some(QuadHalfInt {
                u: self.u / &two,
                v: self.v / &two,
                a: self.a,
            })
        } else {
            None
        }
    }
}

fn assert_same_radicand(a: u32, b: u32) {
    assert_eq!(a, b, "radicand mismatch: √{a} vs √{b}");
}

impl QuadHalfInt {
    /// `(u + v√a)/2`.
    pub fn new(u: impl Into<BigInt>, v: impl Into<BigInt>, a: u32) -> Self {
        QuadHalfInt {
            u: u.into(),
            v: v.into(),
            a,
        }
    }

    /// The integer `n`, embedded as `(2n + 0√a)/2`.
    pub fn from_int(n: impl Into<BigInt>, a: u32) -> Self {
        QuadHalfInt::new(n.into() * 2, 0, a)
    }

    /// `x + y√a` with integer `x, y`.
    pub fn from_integral(x: impl Into<BigInt>, y: impl Into<BigInt>, a: u32) -> Self {
        QuadHalfInt::new(x.into() * 2, y.into() * 2, a)
    }

    pub fn zero(a: u32) -> Self {
        QuadHalfInt::new(0, 0, a)
    }

    pub fn one(a: u32) -> Self {
        QuadHalfInt::new(2, 0, a)
    }

    pub fn u(&self) -> &BigInt {
        &self.u
    }

    pub fn v(&self) -> &BigInt {
        &self.v
    }

    pub fn radicand(&self) -> u32 {
        self.a
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    /// Galois conjugate `(u − v√a)/2`.
    pub fn conj(&self) -> Self {
        QuadHalfInt::new(self.u.clone(), -&self.v, self.a)
    }

    /// Field norm `x·x′ = (u² − a v²)/4`.
    pub fn norm(&self) -> BigRational {
        let num = &self.u * &self.u - BigInt::from(self.a) * &self.v * &self.v;
        BigRational::new(num, BigInt::from(4))
    }

    /// Product, if it stays in ½ℤ[√a].
    pub fn checked_mul(&self, other: &QuadHalfInt) -> Option<QuadHalfInt> {
        Quarter::product(self, other).into_half()
    }

    /// Sign of the first nonzero numerator (`u` before `v`), 0 for zero.
    pub(crate) fn leading_sign(&self) -> i8 {
        for c in [&self.u, &self.v] {
            if c.is_positive() {
                return 1;
            }
            if c.is_negative() {
                return -1;
            }
        }
        0
    }

    /// Double-precision value. When `u` and `v√a` have opposite signs the
    /// value is taken as `(u² − a v²) / (2(u − v√a))` to avoid cancellation.
    pub fn to_f64(&self) -> f64 {
        let u = self.u.to_f64().unwrap_or(f64::NAN);
        let v = self.v.to_f64().unwrap_or(f64::NAN) * f64::from(self.a).sqrt();
        if (u > 0.0 && v < 0.0) || (u < 0.0 && v > 0.0) {
            let n = &self.u * &self.u - BigInt::from(self.a) * &self.v * &self.v;
            n.to_f64().unwrap_or(f64::NAN) / (2.0 * (u - v))
        } else {
            0.5 * (u + v)
        }
    }
}

impl fmt::Display for QuadHalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let two = BigInt::from(2);
        let integral = self.u.is_multiple_of(&two) && self.v.is_multiple_of(&two);
        let (u, v) = if integral {
            (&self.u / &two, &self.v / &two)
        } else {
            (self.u.clone(), self.v.clone())
        };
        let body = match (u.is_zero(), v.is_zero()) {
            (_, true) => u.to_string(),
            (true, false) => format!("{v}√{}", self.a),
            (false, false) if v.is_negative() => format!("{u} - {}√{}", -v, self.a),
            (false, false) => format!("{u} + {v}√{}", self.a),
        };
        if integral {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/2")
        }
    }
}

impl Add for &QuadHalfInt {
    type Output = QuadHalfInt;
    fn add(self, rhs: &QuadHalfInt) -> QuadHalfInt {
        assert_same_radicand(self.a, rhs.a);
        QuadHalfInt::new(&self.u + &rhs.u, &self.v + &rhs.v, self.a)
    }
}

impl Sub for &QuadHalfInt {
    type Output = QuadHalfInt;
    fn sub(self, rhs: &QuadHalfInt) -> QuadHalfInt {
        assert_same_radicand(self.a, rhs.a);
        QuadHalfInt::new(&self.u - &rhs.u, &self.v - &rhs.v, self.a)
    }
}

impl Mul for &QuadHalfInt {
    type Output = QuadHalfInt;
    /// Panics when the product leaves ½ℤ[√a]; use [`QuadHalfInt::checked_mul`]
    /// for inputs not known to be closed.
    fn mul(self, rhs: &QuadHalfInt) -> QuadHalfInt {
        self.checked_mul(rhs)
            .unwrap_or_else(|| panic!("product ({self})·({rhs}) leaves ½ℤ[√{}]", self.a))
    }
}

impl Neg for &QuadHalfInt {
    type Output = QuadHalfInt;
    fn neg(self) -> QuadHalfInt {
        QuadHalfInt::new(-&self.u, -&self.v, self.a)
    }
}

impl Add for QuadHalfInt {
    type Output = QuadHalfInt;
    fn add(self, rhs: QuadHalfInt) -> QuadHalfInt {
        &self + &rhs
    }
}

impl Sub for QuadHalfInt {
    type Output = QuadHalfInt;
    fn sub(self, rhs: QuadHalfInt) -> QuadHalfInt {
        &self - &rhs
    }
}

impl Mul for QuadHalfInt {
    type Output = QuadHalfInt;
    fn mul(self, rhs: QuadHalfInt) -> QuadHalfInt {
        &self * &rhs
    }
}

impl Neg for QuadHalfInt {
    type Output = QuadHalfInt;
    fn neg(self) -> QuadHalfInt {
        -&self
    }
}

/// 2×2 matrix `[[e11, e12], [e21, e22]]` over ½ℤ[√a].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadMatrix {
    e: [QuadHalfInt; 4],
}

impl QuadMatrix {
    pub fn new(e11: QuadHalfInt, e12: QuadHalfInt, e21: QuadHalfInt, e22: QuadHalfInt) -> Self {
        let a = e11.a;
        for x in [&e12, &e21, &e22] {
            assert_same_radicand(a, x.a);
        }
        QuadMatrix {
            e: [e11, e12, e21, e22],
        }
    }

    /// Builds from numerator pairs: entry `k` is `(num[k].0 + num[k].1·√a)/2`.
    pub fn from_halves(num: [(i64, i64); 4], a: u32) -> Self {
        let [p, q, r, s] = num.map(|(u, v)| QuadHalfInt::new(u, v, a));
        QuadMatrix::new(p, q, r, s)
    }

    pub fn identity(a: u32) -> Self {
        QuadMatrix::new(
            QuadHalfInt::one(a),
            QuadHalfInt::zero(a),
            QuadHalfInt::zero(a),
            QuadHalfInt::one(a),
        )
    }

    pub fn radicand(&self) -> u32 {
        self.e[0].a
    }

    pub fn e11(&self) -> &QuadHalfInt {
        &self.e[0]
    }

    pub fn e12(&self) -> &QuadHalfInt {
        &self.e[1]
    }

    pub fn e21(&self) -> &QuadHalfInt {
        &self.e[2]
    }

    pub fn e22(&self) -> &QuadHalfInt {
        &self.e[3]
    }

    pub fn entries(&self) -> &[QuadHalfInt; 4] {
        &self.e
    }

    /// Exact product, if every entry stays in ½ℤ[√a].
    pub fn checked_mul(&self, rhs: &QuadMatrix) -> Option<QuadMatrix> {
        let [a11, a12, a21, a22] = &self.e;
        let [b11, b12, b21, b22] = &rhs.e;
        let entry = |x: &QuadHalfInt, y: &QuadHalfInt, z: &QuadHalfInt, w: &QuadHalfInt| {
            Quarter::product(x, y)
                .add(&Quarter::product(z, w))
                .into_half()
        };
        Some(QuadMatrix {
            e: [
                entry(a11, b11, a12, b21)?,
                entry(a11, b12, a12, b22)?,
                entry(a21, b11, a22, b21)?,
                entry(a21, b12, a22, b22)?,
            ],
        })
    }

    /// `e11·e22 − e12·e21`, exact.
    pub fn det(&self) -> Result<QuadHalfInt> {
        let [a11, a12, a21, a22] = &self.e;
        Quarter::product(a11, a22)
            .sub(&Quarter::product(a12, a21))
            .into_half()
            .ok_or_else(|| Error::Domain(format!("determinant of {self} leaves ½ℤ[√a]")))
    }

    pub fn has_unit_det(&self) -> bool {
        self.det()
            .map(|d| d == QuadHalfInt::one(self.radicand()))
            .unwrap_or(false)
    }

    /// Adjugate inverse; only defined for determinant 1.
    pub fn inverse(&self) -> Result<QuadMatrix> {
        if !self.has_unit_det() {
            return Err(Error::Domain(format!(
                "matrix {self} does not have determinant 1"
            )));
        }
        let [a11, a12, a21, a22] = &self.e;
        Ok(QuadMatrix {
            e: [a22.clone(), -a12, -a21, a11.clone()],
        })
    }

    pub fn trace(&self) -> QuadHalfInt {
        &self.e[0] + &self.e[3]
    }

    pub fn negate(&self) -> QuadMatrix {
        QuadMatrix {
            e: self.e.clone().map(|x| -x),
        }
    }

    /// Representative of `±self` whose first nonzero numerator is positive.
    pub fn canonical(&self) -> QuadMatrix {
        let sign = self
            .e
            .iter()
            .map(QuadHalfInt::leading_sign)
            .find(|&s| s != 0);
        match sign {
            Some(-1) => self.negate(),
            _ => self.clone(),
        }
    }

    pub fn eq_up_to_sign(&self, other: &QuadMatrix) -> bool {
        self == other || *self == other.negate()
    }

    pub fn is_identity_up_to_sign(&self) -> bool {
        self.eq_up_to_sign(&QuadMatrix::identity(self.radicand()))
    }

    /// Exact power by repeated squaring; `n = 0` gives the identity.
    pub fn pow(&self, n: u32) -> QuadMatrix {
        let mut result = QuadMatrix::identity(self.radicand());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Entries in double precision, row-major.
    pub fn to_f64(&self) -> [f64; 4] {
        [
            self.e[0].to_f64(),
            self.e[1].to_f64(),
            self.e[2].to_f64(),
            self.e[3].to_f64(),
        ]
    }

    /// Largest absolute numerator, a cheap size measure for tests.
    pub fn max_numerator_bits(&self) -> u64 {
        self.e
            .iter()
            .flat_map(|x| [x.u.bits(), x.v.bits()])
            .max()
            .unwrap_or(0)
    }
}

impl Mul for &QuadMatrix {
    type Output = QuadMatrix;
    fn mul(self, rhs: &QuadMatrix) -> QuadMatrix {
        self.checked_mul(rhs)
            .unwrap_or_else(|| panic!("matrix product leaves ½ℤ[√{}]", self.radicand()))
    }
}

impl Mul for QuadMatrix {
    type Output = QuadMatrix;
    fn mul(self, rhs: QuadMatrix) -> QuadMatrix {
        &self * &rhs
    }
}

impl fmt::Display for QuadMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.e[0], self.e[1], self.e[2], self.e[3]
        )
    }
}
