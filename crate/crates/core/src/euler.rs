//! The Euler ring U(SO(2)) and equivariant degrees of `-Id` on SO(2)-representations.
//!
//! U(SO(2)) is the free abelian group on the conjugacy classes of closed subgroups
//! of SO(2): the group itself (whose class is the ring unit 𝕀) and the cyclic
//! subgroups Z_k, k ≥ 1 (written χ_k). Elements are stored in canonical form with
//! zero coefficients pruned, so structural equality is semantic equality.
//!
//! Multiplication is 𝕀 ⋆ x = x and χ_j ⋆ χ_k = Θ: orbits SO(2)/Z_k have Euler
//! characteristic zero, so products of two positive-dimensional orbit types carry no
//! cells with nonzero Euler characteristic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of U(SO(2)).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct EulerSO2 {
    unit: BigInt,
    cyclic: BTreeMap<u64, BigInt>,
}

impl EulerSO2 {
    /// The zero element Θ.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The ring unit 𝕀 = χ(SO(2)/SO(2)⁺).
    pub fn unit() -> Self {
        Self::from_unit(1)
    }

    pub fn from_unit(n: impl Into<BigInt>) -> Self {
        Self {
            unit: n.into(),
            cyclic: BTreeMap::new(),
        }
    }

    /// The basis element χ_k attached to the cyclic subgroup Z_k.
    ///
    /// Panics if `k == 0`.
    pub fn chi(k: u64) -> Self {
        Self::from_parts(0, [(k, 1)])
    }

    /// Builds an element from its unit coefficient and `(k, coefficient)` pairs.
    /// Repeated keys are summed and zeros dropped.
    ///
    /// Panics if a key is zero.
    pub fn from_parts<U, C, I>(unit: U, cyclic: I) -> Self
    where
        U: Into<BigInt>,
        C: Into<BigInt>,
        I: IntoIterator<Item = (u64, C)>,
    {
        let mut out = Self::from_unit(unit);
        for (k, c) in cyclic {
            assert!(k >= 1, "cyclic class index must be positive");
            out.add_cyclic(k, c.into());
        }
        out
    }

    pub fn unit_coeff(&self) -> &BigInt {
        &self.unit
    }

    /// Coefficient of χ_k (zero when absent).
    pub fn cyclic_coeff(&self, k: u64) -> BigInt {
        self.cyclic.get(&k).cloned().unwrap_or_default()
    }

    /// Nonzero cyclic coefficients in increasing order of `k`.
    pub fn cyclic_coeffs(&self) -> &BTreeMap<u64, BigInt> {
        &self.cyclic
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero() && self.cyclic.is_empty()
    }

    pub fn is_invertible(&self) -> bool {
        self.unit.abs().is_one()
    }

    fn add_cyclic(&mut self, k: u64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.cyclic.entry(k).or_default();
        *entry += c;
        if entry.is_zero() {
            self.cyclic.remove(&k);
        }
    }

    /// The multiplicative inverse. Only ±𝕀 + (cyclic part) is invertible, and
    /// then (u; c)⁻¹ = (u; −c).
    pub fn invert(&self) -> Result<Self> {
        if !self.is_invertible() {
            return Err(Error::NotInvertible(self.unit.to_string()));
        }
        Ok(Self {
            unit: self.unit.clone(),
            cyclic: self.cyclic.iter().map(|(&k, c)| (k, -c)).collect(),
        })
    }

    /// Integer power; negative exponents go through [`EulerSO2::invert`].
    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.invert()? } else { self.clone() };
        let mut exp = n.unsigned_abs();
        let mut acc = Self::unit();
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &sq;
            }
            exp >>= 1;
            if exp > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Multiplies every coefficient by an integer.
    pub fn scale(&self, n: impl Into<BigInt>) -> Self {
        let n = n.into();
        if n.is_zero() {
            return Self::zero();
        }
        Self {
            unit: &self.unit * &n,
            cyclic: self.cyclic.iter().map(|(&k, c)| (k, c * &n)).collect(),
        }
    }

    /// All coefficients, unit included, are ≤ 0.
    pub fn is_nonpositive(&self) -> bool {
        !self.unit.is_positive() && self.cyclic.values().all(|c| c.is_negative())
    }
}

impl Add for &EulerSO2 {
    type Output = EulerSO2;

    fn add(self, rhs: &EulerSO2) -> EulerSO2 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for EulerSO2 {
    type Output = EulerSO2;

    fn add(mut self, rhs: EulerSO2) -> EulerSO2 {
        self += &rhs;
        self
    }
}

impl AddAssign<&EulerSO2> for EulerSO2 {
    fn add_assign(&mut self, rhs: &EulerSO2) {
        self.unit += &rhs.unit;
        for (&k, c) in &rhs.cyclic {
            self.add_cyclic(k, c.clone());
        }
    }
}

impl Neg for &EulerSO2 {
    type Output = EulerSO2;

    fn neg(self) -> EulerSO2 {
        self.scale(-1)
    }
}

impl Neg for EulerSO2 {
    type Output = EulerSO2;

    fn neg(self) -> EulerSO2 {
        -&self
    }
}

impl Sub for &EulerSO2 {
    type Output = EulerSO2;

    fn sub(self, rhs: &EulerSO2) -> EulerSO2 {
        self + &(-rhs)
    }
}

impl Sub for EulerSO2 {
    type Output = EulerSO2;

    fn sub(self, rhs: EulerSO2) -> EulerSO2 {
        &self - &rhs
    }
}

impl Mul for &EulerSO2 {
    type Output = EulerSO2;

    // (u_a; c_a) ⋆ (u_b; c_b) = (u_a u_b; u_a c_b + u_b c_a)
    fn mul(self, rhs: &EulerSO2) -> EulerSO2 {
        let mut out = EulerSO2::from_unit(&self.unit * &rhs.unit);
        for (&k, c) in &rhs.cyclic {
            out.add_cyclic(k, &self.unit * c);
        }
        for (&k, c) in &self.cyclic {
            out.add_cyclic(k, &rhs.unit * c);
        }
        out
    }
}

impl Mul for EulerSO2 {
    type Output = EulerSO2;

    fn mul(self, rhs: EulerSO2) -> EulerSO2 {
        &self * &rhs
    }
}

impl std::iter::Sum for EulerSO2 {
    fn sum<I: Iterator<Item = EulerSO2>>(iter: I) -> Self {
        iter.fold(EulerSO2::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Sum<&'a EulerSO2> for EulerSO2 {
    fn sum<I: Iterator<Item = &'a EulerSO2>>(iter: I) -> Self {
        let mut acc = EulerSO2::zero();
        for x in iter {
            acc += x;
        }
        acc
    }
}

impl Zero for EulerSO2 {
    fn zero() -> Self {
        EulerSO2::zero()
    }

    fn is_zero(&self) -> bool {
        EulerSO2::is_zero(self)
    }
}

impl One for EulerSO2 {
    fn one() -> Self {
        EulerSO2::unit()
    }
}

impl fmt::Display for EulerSO2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "Θ");
        }
        let terms = std::iter::once((None, &self.unit))
            .filter(|(_, c)| !c.is_zero())
            .chain(self.cyclic.iter().map(|(k, c)| (Some(*k), c)));
        for (i, (k, c)) in terms.enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                _ => write!(f, " {sign} ")?,
            }
            let mag = c.abs();
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match k {
                None => write!(f, "𝕀")?,
                Some(k) => write!(f, "χ{k}")?,
            }
        }
        Ok(())
    }
}

/// A JSON integer that may exceed 64 bits; large values travel as decimal strings.
struct WireInt<'a>(&'a BigInt);

impl Serialize for WireInt<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawInt {
    Signed(i64),
    Unsigned(u64),
    Text(String),
}

impl RawInt {
    fn into_bigint<E: serde::de::Error>(self) -> std::result::Result<BigInt, E> {
        match self {
            RawInt::Signed(v) => Ok(v.into()),
            RawInt::Unsigned(v) => Ok(v.into()),
            RawInt::Text(s) => s
                .parse()
                .map_err(|_| E::custom(format!("not an integer: {s:?}"))),
        }
    }
}

impl Serialize for EulerSO2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;

        struct Cyclic<'a>(&'a BTreeMap<u64, BigInt>);
        impl Serialize for Cyclic<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_map(self.0.iter().map(|(k, c)| (k.to_string(), WireInt(c))))
            }
        }

        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("unit", &WireInt(&self.unit))?;
        map.serialize_entry("cyclic", &Cyclic(&self.cyclic))?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for EulerSO2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            unit: RawInt,
            #[serde(default)]
            cyclic: BTreeMap<String, RawInt>,
        }

        let raw = Raw::deserialize(d)?;
        let mut out = EulerSO2::from_unit(raw.unit.into_bigint::<D::Error>()?);
        for (key, c) in raw.cyclic {
            let k: u64 = key
                .parse()
                .map_err(|_| D::Error::custom(format!("cyclic key {key:?} is not an integer")))?;
            if k == 0 {
                return Err(D::Error::custom("cyclic keys must be ≥ 1"));
            }
            out.add_cyclic(k, c.into_bigint::<D::Error>()?);
        }
        Ok(out)
    }
}

/// A finite-dimensional orthogonal SO(2)-representation: `trivial` copies of the
/// trivial line plus, for each rotation number k, `m_k` copies of the real
/// 2-dimensional irreducible on which SO(2) acts with k-fold rotation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSO2Rep")]
pub struct SO2Rep {
    trivial: u64,
    rot: BTreeMap<u64, u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSO2Rep {
    #[serde(default)]
    trivial: u64,
    #[serde(default)]
    rot: BTreeMap<u64, u64>,
}

impl TryFrom<RawSO2Rep> for SO2Rep {
    type Error = String;

    fn try_from(raw: RawSO2Rep) -> std::result::Result<Self, String> {
        if raw.rot.contains_key(&0) {
            return Err("rotation numbers must be ≥ 1".into());
        }
        Ok(SO2Rep::new(raw.trivial, raw.rot))
    }
}

impl SO2Rep {
    /// Panics if a rotation number is zero.
    pub fn new(trivial: u64, rot: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut out = Self::trivial(trivial);
        for (k, m) in rot {
            out.add_rotation(k, m);
        }
        out
    }

    pub fn trivial(dim: u64) -> Self {
        Self {
            trivial: dim,
            rot: BTreeMap::new(),
        }
    }

    /// `mult` copies of the rotation-number-`k` irreducible.
    pub fn rotation(k: u64, mult: u64) -> Self {
        Self::new(0, [(k, mult)])
    }

    fn add_rotation(&mut self, k: u64, m: u64) {
        assert!(k >= 1, "rotation number must be positive");
        if m > 0 {
            *self.rot.entry(k).or_default() += m;
        }
    }

    pub fn trivial_dim(&self) -> u64 {
        self.trivial
    }

    pub fn rotation_mults(&self) -> &BTreeMap<u64, u64> {
        &self.rot
    }

    pub fn dim(&self) -> u64 {
        self.trivial + 2 * self.rot.values().sum::<u64>()
    }

    pub fn is_zero(&self) -> bool {
        self.trivial == 0 && self.rot.is_empty()
    }

    pub fn oplus(&self, other: &SO2Rep) -> SO2Rep {
        let mut out = self.clone();
        out.trivial += other.trivial;
        for (&k, &m) in &other.rot {
            out.add_rotation(k, m);
        }
        out
    }

    /// Direct sum of `n` copies.
    pub fn repeat(&self, n: u64) -> SO2Rep {
        SO2Rep {
            trivial: self.trivial * n,
            rot: if n == 0 {
                BTreeMap::new()
            } else {
                self.rot.iter().map(|(&k, &m)| (k, m * n)).collect()
            },
        }
    }
}

/// ∇_{SO(2)}-deg(−Id, B(V)) = (−1)^t ⋆ ∏_k (𝕀 − χ_k)^{m_k}.
///
/// The trivial part contributes (−1)^{dim}·𝕀; each copy of the rotation-k
/// irreducible contributes the factor 𝕀 − χ_k.
pub fn deg_minus_id(v: &SO2Rep) -> EulerSO2 {
    let sign = if v.trivial % 2 == 0 { 1 } else { -1 };
    v.rot
        .iter()
        .fold(EulerSO2::from_unit(sign), |acc, (&k, &m)| {
            let factor = &EulerSO2::unit() - &EulerSO2::chi(k);
            // m is a multiplicity of a finite-dimensional representation
            let m = i64::try_from(m).expect("multiplicity exceeds i64");
            &acc * &factor.pow(m).expect("non-negative power")
        })
}

/// V ⊕ ℝ^{2a} ≅ W ⊕ ℝ^{2b} for some a, b ≥ 0.
pub fn rep_equiv_mod_even_trivial(v: &SO2Rep, w: &SO2Rep) -> bool {
    v.rot == w.rot && v.trivial % 2 == w.trivial % 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(unit: i64, cyclic: &[(u64, i64)]) -> EulerSO2 {
        EulerSO2::from_parts(unit, cyclic.iter().copied())
    }

    #[test]
    fn addition() {
        assert_eq!(EulerSO2::unit() + EulerSO2::zero(), EulerSO2::unit());
        assert_eq!(e(2, &[(1, -1)]) + e(-2, &[(1, 1)]), EulerSO2::zero());
        assert_eq!(
            e(1, &[(2, 3)]) + e(1, &[(2, -1), (5, 1)]),
            e(2, &[(2, 2), (5, 1)])
        );
    }

    #[test]
    fn zero_entries_are_pruned() {
        let x = e(0, &[(3, 2)]) + e(0, &[(3, -2)]);
        assert!(x.cyclic_coeffs().is_empty());
        assert_eq!(x, EulerSO2::zero());
        assert_eq!(e(0, &[(4, 0)]), EulerSO2::zero());
    }

    #[test]
    fn multiplication() {
        let x = e(-3, &[(2, 5), (7, -1)]);
        assert_eq!(&EulerSO2::unit() * &x, x);
        assert_eq!(EulerSO2::chi(1) * EulerSO2::chi(2), EulerSO2::zero());
        assert_eq!(e(1, &[(2, -1)]) * e(1, &[(2, 1)]), EulerSO2::unit());
    }

    #[test]
    fn inversion() {
        assert_eq!(e(1, &[(3, -1)]).invert().unwrap(), e(1, &[(3, 1)]));
        assert_eq!(e(-1, &[(1, 1)]).invert().unwrap(), e(-1, &[(1, -1)]));
        assert!(matches!(
            EulerSO2::from_unit(2).invert(),
            Err(Error::NotInvertible(_))
        ));
        assert!(EulerSO2::chi(4).invert().is_err());
    }

    #[test]
    fn powers() {
        assert_eq!(e(1, &[(1, -1)]).pow(2).unwrap(), e(1, &[(1, -2)]));
        assert_eq!(e(-1, &[(1, 1)]).pow(-1).unwrap(), e(-1, &[(1, -1)]));
        assert_eq!(e(5, &[(9, 9)]).pow(0).unwrap(), EulerSO2::unit());
        assert_eq!(EulerSO2::zero().pow(0).unwrap(), EulerSO2::unit());
        assert!(EulerSO2::from_unit(3).pow(-2).is_err());
        // 2^70 needs more than 64 bits
        let big = EulerSO2::from_unit(2).pow(70).unwrap();
        assert_eq!(
            big.unit_coeff(),
            &(BigInt::from(1u64 << 35) * BigInt::from(1u64 << 35))
        );
    }

    #[test]
    fn degree_examples() {
        assert_eq!(deg_minus_id(&SO2Rep::trivial(3)), EulerSO2::from_unit(-1));
        assert_eq!(deg_minus_id(&SO2Rep::rotation(3, 2)), e(1, &[(3, -2)]));
        assert_eq!(deg_minus_id(&SO2Rep::new(2, [(1, 1)])), e(1, &[(1, -1)]));
        assert_eq!(deg_minus_id(&SO2Rep::default()), EulerSO2::unit());
    }

    #[test]
    fn equivalence_examples() {
        let v = SO2Rep::new(1, [(2, 1)]);
        assert!(rep_equiv_mod_even_trivial(&v, &v));
        assert!(rep_equiv_mod_even_trivial(
            &SO2Rep::trivial(2),
            &SO2Rep::trivial(0)
        ));
        assert!(!rep_equiv_mod_even_trivial(
            &SO2Rep::trivial(2),
            &SO2Rep::trivial(1)
        ));
    }

    #[test]
    fn display() {
        assert_eq!(EulerSO2::zero().to_string(), "Θ");
        assert_eq!(e(1, &[(1, -2)]).to_string(), "𝕀 - 2χ1");
        assert_eq!(e(0, &[(1, -2), (3, 1)]).to_string(), "-2χ1 + χ3");
        assert_eq!(e(-1, &[]).to_string(), "-𝕀");
    }

    #[test]
    fn json_schema() {
        let x = e(-2, &[(1, 3), (12, -1)]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"unit":-2,"cyclic":{"1":3,"12":-1}}"#);
        assert_eq!(serde_json::from_str::<EulerSO2>(&s).unwrap(), x);

        let huge = EulerSO2::from_unit(3).pow(60).unwrap();
        let s = serde_json::to_string(&huge).unwrap();
        assert!(s.contains('"'));
        assert_eq!(serde_json::from_str::<EulerSO2>(&s).unwrap(), huge);

        let pruned: EulerSO2 = serde_json::from_str(r#"{"unit":0,"cyclic":{"2":0}}"#).unwrap();
        assert_eq!(pruned, EulerSO2::zero());
        assert!(serde_json::from_str::<EulerSO2>(r#"{"unit":0,"cyclic":{"0":1}}"#).is_err());
    }

    #[test]
    fn rep_json_schema() {
        let v = SO2Rep::new(3, [(2, 1), (5, 4)]);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"trivial":3,"rot":{"2":1,"5":4}}"#);
        assert_eq!(serde_json::from_str::<SO2Rep>(&s).unwrap(), v);
        let pruned: SO2Rep = serde_json::from_str(r#"{"trivial":1,"rot":{"4":0}}"#).unwrap();
        assert_eq!(pruned, SO2Rep::trivial(1));
        assert!(serde_json::from_str::<SO2Rep>(r#"{"rot":{"0":1}}"#).is_err());
    }

    #[test]
    fn rep_dimension() {
        let v = SO2Rep::new(3, [(1, 2), (4, 1)]);
        assert_eq!(v.dim(), 3 + 2 * 3);
        assert_eq!(v.repeat(2).dim(), 2 * v.dim());
        assert!(v.repeat(0).is_zero());
    }
}
