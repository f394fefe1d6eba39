use std::fmt;
use std::ops::{Add, Deref, Index, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{self, gcd_of_integers, lcm_of_denominators, Rational};

/// A vector of exact rationals.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QVector(Vec<Rational>);

impl QVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        QVector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        QVector(vec![Rational::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = rational::int(1);
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        QVector(xs.iter().map(|&x| rational::int(x)).collect())
    }

    pub fn from_integers(xs: &[BigInt]) -> Self {
        QVector(xs.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn into_inner(self) -> Vec<Rational> {
        self.0
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn dot(&self, other: &QVector) -> Rational {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, k: &Rational) -> QVector {
        QVector(self.0.iter().map(|x| x * k).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    /// Integer entries; `None` if some entry is fractional.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.0
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect()
    }

    /// The primitive integral vector on the ray through `self`, or `None` for
    /// the zero vector.
    pub fn primitive(&self) -> Option<QVector> {
        if self.is_zero() {
            return None;
        }
        let lcm = lcm_of_denominators(&self.0);
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = gcd_of_integers(&ints);
        Some(QVector(
            ints.into_iter()
                .map(|x| Rational::from_integer(x / &g))
                .collect(),
        ))
    }

    /// Gcd of the coordinates, for integral vectors.
    pub fn content(&self) -> Option<BigInt> {
        self.to_integers().map(|ints| gcd_of_integers(&ints))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_some_and(|g| g == BigInt::from(1))
    }

    /// Scales so that the first nonzero entry is positive.
    pub fn sign_normalized(self) -> QVector {
        match self.0.iter().find(|x| !x.is_zero()) {
            Some(x) if x.is_negative() => -self,
            _ => self,
        }
    }
}

impl Deref for QVector {
    type Target = [Rational];
    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

impl Index<usize> for QVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl FromIterator<Rational> for QVector {
    fn from_iter<I: IntoIterator<Item = Rational>>(iter: I) -> Self {
        QVector(iter.into_iter().collect())
    }
}

impl From<Vec<Rational>> for QVector {
    fn from(v: Vec<Rational>) -> Self {
        QVector(v)
    }
}

impl Add for &QVector {
    type Output = QVector;
    fn add(self, rhs: &QVector) -> QVector {
        self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect()
    }
}

impl Sub for &QVector {
    type Output = QVector;
    fn sub(self, rhs: &QVector) -> QVector {
        self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect()
    }
}

impl Neg for QVector {
    type Output = QVector;
    fn neg(self) -> QVector {
        self.0.into_iter().map(|x| -x).collect()
    }
}

impl Neg for &QVector {
    type Output = QVector;
    fn neg(self) -> QVector {
        self.0.iter().map(|x| -x).collect()
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", rational::format(x))?;
        }
        write!(f, ")")
    }
}

impl Serialize for QVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.0.iter().map(rational::format).collect();
        strings.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Entry(#[serde(with = "rational::serde_q")] Rational);
        let entries = Vec::<Entry>::deserialize(d)?;
        Ok(QVector(entries.into_iter().map(|e| e.0).collect()))
    }
}

/// Builds a `QVector` from integer literals.
#[macro_export]
macro_rules! qv {
    ($($x:expr),* $(,)?) => {
        $crate::exactla::QVector::from_ints(&[$($x as i64),*])
    };
}
