//! Real scalar abstraction shared by every numerical routine in the crate.
//!
//! Two backends are provided: plain `f64`, and [`Mp`], a 256-bit binary
//! floating point number. The exact Gaussian-moment inner products of
//! high-degree Hermite-type polynomials cancel catastrophically in the
//! monomial basis (the sum of absolute terms exceeds the result by ~10^18
//! at degree 30 and ~10^55 at degree 100), so anything that integrates
//! eigenfunctions beyond a handful of levels has to run on [`Mp`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Rem, Sub, SubAssign};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;
use num_complex::Complex;
use num_traits::{Num, One, Zero};

pub trait Real:
    Num + Clone + PartialOrd + Neg<Output = Self> + fmt::Debug + Send + Sync + 'static
{
    /// Short label used in reports.
    const LABEL: &'static str;

    fn from_f64(x: f64) -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_ibig(n: &IBig) -> Self;
    fn to_f64(&self) -> f64;

    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn sinh(&self) -> Self;
    fn cosh(&self) -> Self;
    fn atanh(&self) -> Self;
    fn pi() -> Self;

    /// Unit roundoff of the backend.
    fn epsilon() -> f64;

    fn from_usize(n: usize) -> Self {
        Self::from_i64(n as i64)
    }

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn max_of(a: Self, b: Self) -> Self {
        if a >= b {
            a
        } else {
            b
        }
    }

    fn powi(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

impl Real for f64 {
    const LABEL: &'static str = "f64";

    fn from_f64(x: f64) -> Self {
        x
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn from_ibig(n: &IBig) -> Self {
        n.to_f64().value()
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn sinh(&self) -> Self {
        f64::sinh(*self)
    }
    fn cosh(&self) -> Self {
        f64::cosh(*self)
    }
    fn atanh(&self) -> Self {
        f64::atanh(*self)
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
    fn epsilon() -> f64 {
        f64::EPSILON / 2.0
    }
}

/// Working precision of [`Mp`], in bits.
pub const MP_PRECISION: usize = 256;

type Big = FBig<HalfEven>;

/// 256-bit binary floating point number.
#[derive(Clone, PartialEq)]
pub struct Mp(Big);

impl Mp {
    fn wrap(x: Big) -> Self {
        if x.precision() == MP_PRECISION {
            Mp(x)
        } else {
            Mp(x.with_precision(MP_PRECISION).value())
        }
    }
}

impl fmt::Debug for Mp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mp({:e})", self.to_f64())
    }
}

impl fmt::Display for Mp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_f64(), f)
    }
}

impl PartialOrd for Mp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

macro_rules! mp_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Mp {
            type Output = Mp;
            fn $method(self, rhs: Mp) -> Mp {
                Mp::wrap(self.0 $op rhs.0)
            }
        }
        impl<'a> $trait<&'a Mp> for Mp {
            type Output = Mp;
            fn $method(self, rhs: &'a Mp) -> Mp {
                Mp::wrap(self.0 $op &rhs.0)
            }
        }
        impl<'a> $trait<&'a Mp> for &'a Mp {
            type Output = Mp;
            fn $method(self, rhs: &'a Mp) -> Mp {
                Mp::wrap(&self.0 $op &rhs.0)
            }
        }
    };
}

mp_binop!(Add, add, +);
mp_binop!(Sub, sub, -);
mp_binop!(Mul, mul, *);
mp_binop!(Div, div, /);

impl Rem for Mp {
    type Output = Mp;
    fn rem(self, rhs: Mp) -> Mp {
        let q = Mp::wrap((&self.0 / &rhs.0).trunc());
        self - q * rhs
    }
}

impl Neg for Mp {
    type Output = Mp;
    fn neg(self) -> Mp {
        Mp(-self.0)
    }
}

impl AddAssign for Mp {
    fn add_assign(&mut self, rhs: Mp) {
        *self = self.clone() + rhs;
    }
}

impl SubAssign for Mp {
    fn sub_assign(&mut self, rhs: Mp) {
        *self = self.clone() - rhs;
    }
}

impl MulAssign for Mp {
    fn mul_assign(&mut self, rhs: Mp) {
        *self = self.clone() * rhs;
    }
}

impl Zero for Mp {
    fn zero() -> Self {
        Mp::wrap(Big::ZERO)
    }
    fn is_zero(&self) -> bool {
        self.0 == Big::ZERO
    }
}

impl One for Mp {
    fn one() -> Self {
        Mp::wrap(Big::ONE)
    }
}

impl Num for Mp {
    type FromStrRadixErr = std::num::ParseFloatError;

    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        // decimal only; other radices are never needed
        debug_assert_eq!(radix, 10);
        s.parse::<f64>().map(Mp::from_f64)
    }
}

impl Real for Mp {
    const LABEL: &'static str = "mp256";

    fn from_f64(x: f64) -> Self {
        Mp::wrap(Big::try_from(x).expect("finite f64"))
    }
    fn from_i64(n: i64) -> Self {
        Mp::wrap(Big::from(IBig::from(n)))
    }
    fn from_ibig(n: &IBig) -> Self {
        Mp::wrap(Big::from(n.clone()))
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }
    fn sqrt(&self) -> Self {
        Mp::wrap(self.0.sqrt())
    }
    fn exp(&self) -> Self {
        Mp::wrap(self.0.exp())
    }
    fn ln(&self) -> Self {
        Mp::wrap(self.0.ln())
    }
    fn sin(&self) -> Self {
        Mp::wrap(self.0.sin())
    }
    fn cos(&self) -> Self {
        Mp::wrap(self.0.cos())
    }
    fn sinh(&self) -> Self {
        Mp::wrap(self.0.sinh())
    }
    fn cosh(&self) -> Self {
        Mp::wrap(self.0.cosh())
    }
    fn atanh(&self) -> Self {
        Mp::wrap(self.0.atanh())
    }
    fn pi() -> Self {
        Mp(Big::pi(MP_PRECISION))
    }
    fn epsilon() -> f64 {
        2f64.powi(-(MP_PRECISION as i32))
    }
}

/// Lift a real into the complex plane.
pub fn re<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

pub fn c_from_f64<T: Real>(z: Complex<f64>) -> Complex<T> {
    Complex::new(T::from_f64(z.re), T::from_f64(z.im))
}

pub fn c_to_f64<T: Real>(z: &Complex<T>) -> Complex<f64> {
    Complex::new(z.re.to_f64(), z.im.to_f64())
}

pub fn cexp<T: Real>(z: &Complex<T>) -> Complex<T> {
    let m = z.re.exp();
    Complex::new(m.clone() * z.im.cos(), m * z.im.sin())
}

pub fn cabs<T: Real>(z: &Complex<T>) -> T {
    (z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone()).sqrt()
}

/// Principal square root.
pub fn csqrt<T: Real>(z: &Complex<T>) -> Complex<T> {
    let r = cabs(z);
    let half = T::from_f64(0.5);
    let a = ((r.clone() + z.re.clone()) * half.clone()).sqrt();
    let b = ((r - z.re.clone()) * half).sqrt();
    if z.im < T::zero() {
        Complex::new(a, -b)
    } else {
        Complex::new(a, b)
    }
}

pub fn scale<T: Real>(z: &Complex<T>, s: &T) -> Complex<T> {
    Complex::new(z.re.clone() * s.clone(), z.im.clone() * s.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mp_arithmetic_keeps_working_precision() {
        let third = Mp::one() / Mp::from_i64(3);
        let back = third.clone() * Mp::from_i64(3);
        assert!((back - Mp::one()).abs().to_f64() < 1e-70);
        let small_ints = Mp::from_i64(3) * Mp::from_i64(5) / Mp::from_i64(7);
        assert!((small_ints.to_f64() - 15.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn mp_transcendentals_match_f64() {
        let x = Mp::from_f64(0.4);
        assert!((x.atanh().to_f64() - 0.4f64.atanh()).abs() < 1e-15);
        assert!((x.cosh().to_f64() - 0.4f64.cosh()).abs() < 1e-15);
        assert!((x.sin().to_f64() - 0.4f64.sin()).abs() < 1e-15);
        assert!((Mp::pi().to_f64() - std::f64::consts::PI).abs() < 1e-15);
        let e = Mp::one().exp().ln();
        assert!((e - Mp::one()).abs().to_f64() < 1e-70);
    }

    #[test]
    fn complex_helpers() {
        let z = Complex::new(0.3f64, -1.2);
        let e = cexp(&z);
        assert!((e - z.exp()).norm() < 1e-15);
        let s = csqrt(&z);
        assert!((s * s - z).norm() < 1e-15);
        assert!((cabs(&z) - z.norm()).abs() < 1e-15);
    }

    #[test]
    fn mp_rem_and_powi() {
        let r = Mp::from_f64(7.5) % Mp::from_f64(2.0);
        assert_eq!(r.to_f64(), 1.5);
        assert_eq!(Mp::from_i64(3).powi(5).to_f64(), 243.0);
    }
}
