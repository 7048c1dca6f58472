//! Exact scalars and loop-parameter polynomials.
//!
//! [`GaussRat`] is the single scalar type used everywhere (rationals with an
//! adjoined `i`), and [`DeltaPoly`] is a polynomial in the loop parameters
//! `δ_0, …, δ_{⌊m/2⌋}` with `GaussRat` coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::{BigInt, BigRational, Complex, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Gaussian rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRat(Complex<BigRational>);

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat(Complex::new(re, im))
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::new(BigRational::new(num.into(), den.into()), BigRational::zero())
    }

    pub fn gauss_int(re: i64, im: i64) -> Self {
        Self::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
    }

    pub fn i() -> Self {
        Self::gauss_int(0, 1)
    }

    pub fn re(&self) -> &BigRational {
        &self.0.re
    }

    pub fn im(&self) -> &BigRational {
        &self.0.im
    }

    pub fn is_real(&self) -> bool {
        self.0.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat(self.0.conj())
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(GaussRat(self.0.inv()))
        }
    }

    /// The value as an `i64` when it is a (small) real integer.
    pub fn to_i64(&self) -> Option<i64> {
        use num::ToPrimitive;
        if self.is_real() && self.0.re.is_integer() {
            self.0.re.to_integer().to_i64()
        } else {
            None
        }
    }

    /// `(re, im)` as `"p/q"` strings (the denominator is omitted when it is 1).
    pub fn to_strings(&self) -> (String, String) {
        (rat_to_string(&self.0.re), rat_to_string(&self.0.im))
    }

    pub fn from_strings(re: &str, im: &str) -> Result<Self> {
        Ok(Self::new(parse_rat(re)?, parse_rat(im)?))
    }
}

fn rat_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rat(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl Zero for GaussRat {
    fn zero() -> Self {
        GaussRat(Complex::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.re.is_zero() && self.0.im.is_zero()
    }
}

impl One for GaussRat {
    fn one() -> Self {
        GaussRat(Complex::one())
    }
}

impl From<i64> for GaussRat {
    fn from(n: i64) -> Self {
        GaussRat::from_int(n)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (&self.0.re, &self.0.im);
        match (re.is_zero(), im.is_zero()) {
            (_, true) => write!(f, "{}", rat_to_string(re)),
            (true, false) => write!(f, "{}i", rat_to_string(im)),
            (false, false) => {
                let sign = if im.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}i", rat_to_string(re), sign, rat_to_string(&im.abs()))
            }
        }
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussRat {
    type Err = Error;

    /// Accepts `"p/q"` (real) or `"p/q,r/s"` (real, imaginary).
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(',') {
            Some((re, im)) => GaussRat::from_strings(re, im),
            None => GaussRat::from_strings(s, "0"),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&GaussRat> for &GaussRat {
            type Output = GaussRat;
            fn $method(self, rhs: &GaussRat) -> GaussRat {
                GaussRat((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $method(self, rhs: GaussRat) -> GaussRat {
                GaussRat(self.0.$method(rhs.0))
            }
        }
        impl $trait<&GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $method(self, rhs: &GaussRat) -> GaussRat {
                GaussRat(self.0.$method(&rhs.0))
            }
        }
        impl $trait<GaussRat> for &GaussRat {
            type Output = GaussRat;
            fn $method(self, rhs: GaussRat) -> GaussRat {
                GaussRat((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat(-self.0)
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat(-&self.0)
    }
}

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, rhs: &GaussRat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&GaussRat> for GaussRat {
    fn sub_assign(&mut self, rhs: &GaussRat) {
        self.0 -= &rhs.0;
    }
}

/// Number of loop parameters `δ_0 … δ_{⌊m/2⌋}` for modulus `m`.
pub fn num_deltas(m: u32) -> usize {
    (m / 2) as usize + 1
}

/// Normalized loop label: `min(ℓ, m − ℓ)` for `ℓ` taken mod `m`.
pub fn normalize_loop_label(label: u32, m: u32) -> u32 {
    let l = label % m;
    l.min((m - l) % m)
}

/// Polynomial in `δ_0, …, δ_{⌊m/2⌋}` over the Gaussian rationals.
///
/// Exponent vectors are dense over the variable set; zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DeltaPoly {
    m: u32,
    terms: BTreeMap<Vec<u32>, GaussRat>,
}

impl DeltaPoly {
    pub fn zero(m: u32) -> Self {
        assert!(m >= 1, "modulus must be positive");
        DeltaPoly { m, terms: BTreeMap::new() }
    }

    pub fn one(m: u32) -> Self {
        Self::constant(m, GaussRat::one())
    }

    pub fn constant(m: u32, c: GaussRat) -> Self {
        let mut p = Self::zero(m);
        if !c.is_zero() {
            p.terms.insert(vec![0; num_deltas(m)], c);
        }
        p
    }

    /// The variable `δ_index`.
    pub fn var(m: u32, index: usize) -> Result<Self> {
        let n = num_deltas(m);
        if index >= n {
            return Err(Error::IndexOutOfRange { index, range: format!("0..{n}") });
        }
        let mut exps = vec![0; n];
        exps[index] = 1;
        let mut p = Self::zero(m);
        p.terms.insert(exps, GaussRat::one());
        Ok(p)
    }

    /// Product `∏ δ_ℓ` over a multiset of already-normalized loop labels.
    pub fn delta_monomial(loops: &[u32], m: u32) -> Result<Self> {
        let n = num_deltas(m);
        let mut exps = vec![0u32; n];
        for &l in loops {
            if l as usize >= n {
                return Err(Error::BadLabel { label: l, m });
            }
            exps[l as usize] += 1;
        }
        Ok(Self::from_exponents(m, exps, GaussRat::one()))
    }

    /// Single term `c · δ^exps`; `exps` must have length `⌊m/2⌋ + 1`.
    pub fn from_exponents(m: u32, exps: Vec<u32>, c: GaussRat) -> Self {
        assert_eq!(exps.len(), num_deltas(m));
        let mut p = Self::zero(m);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &GaussRat)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The constant term's coefficient if the polynomial is constant.
    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(GaussRat::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn check_context(&self, other: &DeltaPoly) -> Result<()> {
        if self.m != other.m {
            return Err(Error::ContextMismatch(format!("polynomials over moduli {} and {}", self.m, other.m)));
        }
        Ok(())
    }

    fn add_term(&mut self, exps: &[u32], c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(exps) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(exps);
                }
            }
            None => {
                self.terms.insert(exps.to_vec(), c.clone());
            }
        }
    }

    pub fn checked_add(&self, other: &DeltaPoly) -> Result<DeltaPoly> {
        self.check_context(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &DeltaPoly) -> Result<DeltaPoly> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &DeltaPoly) -> Result<DeltaPoly> {
        self.check_context(other)?;
        let mut out = DeltaPoly::zero(self.m);
        let mut exps = vec![0u32; num_deltas(self.m)];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                for (slot, (a, b)) in exps.iter_mut().zip(ea.iter().zip(eb)) {
                    *slot = a + b;
                }
                out.add_term(&exps, &(ca * cb));
            }
        }
        Ok(out)
    }

    fn neg_ref(&self) -> DeltaPoly {
        DeltaPoly { m: self.m, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn scale(&self, s: &GaussRat) -> DeltaPoly {
        if s.is_zero() {
            return DeltaPoly::zero(self.m);
        }
        DeltaPoly { m: self.m, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect() }
    }

    /// Exact evaluation at `δ_i ↦ assignment[i]`.
    ///
    /// Only variables that actually occur need to be assigned.
    pub fn specialize(&self, assignment: &BTreeMap<usize, GaussRat>) -> Result<GaussRat> {
        let mut total = GaussRat::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (var, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let value = assignment.get(&var).ok_or(Error::MissingAssignment(var))?;
                for _ in 0..e {
                    term = term * value;
                }
            }
            total += &term;
        }
        Ok(total)
    }

    pub fn to_json(&self) -> Vec<PolyTermJson> {
        self.terms
            .iter()
            .map(|(e, c)| {
                let (re, im) = c.to_strings();
                PolyTermJson { coeff_re: re, coeff_im: im, exponents: e.clone() }
            })
            .collect()
    }

    pub fn from_json(m: u32, terms: &[PolyTermJson]) -> Result<Self> {
        let mut p = DeltaPoly::zero(m);
        for t in terms {
            if t.exponents.len() != num_deltas(m) {
                return Err(Error::Parse(format!("exponent vector of length {} for modulus {m}", t.exponents.len())));
            }
            p.add_term(&t.exponents, &GaussRat::from_strings(&t.coeff_re, &t.coeff_im)?);
        }
        Ok(p)
    }
}

/// One polynomial term in the JSON interchange format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTermJson {
    pub coeff_re: String,
    pub coeff_im: String,
    pub exponents: Vec<u32>,
}

impl Add for &DeltaPoly {
    type Output = DeltaPoly;
    fn add(self, rhs: &DeltaPoly) -> DeltaPoly {
        self.checked_add(rhs).expect("DeltaPoly moduli differ")
    }
}

impl Sub for &DeltaPoly {
    type Output = DeltaPoly;
    fn sub(self, rhs: &DeltaPoly) -> DeltaPoly {
        self.checked_sub(rhs).expect("DeltaPoly moduli differ")
    }
}

impl Mul for &DeltaPoly {
    type Output = DeltaPoly;
    fn mul(self, rhs: &DeltaPoly) -> DeltaPoly {
        self.checked_mul(rhs).expect("DeltaPoly moduli differ")
    }
}

impl Neg for &DeltaPoly {
    type Output = DeltaPoly;
    fn neg(self) -> DeltaPoly {
        self.neg_ref()
    }
}

impl fmt::Display for DeltaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (exps, c)) in self.terms.iter().rev().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { format!("d{v}") } else { format!("d{v}^{e}") })
                .collect();
            match (mono.is_empty(), c.is_one()) {
                (true, _) => write!(f, "{c}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "({c})*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DeltaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DeltaPoly[m={}]({})", self.m, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: u32, i: usize) -> DeltaPoly {
        DeltaPoly::var(m, i).unwrap()
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&GaussRat::i() * &GaussRat::i(), GaussRat::from_int(-1));
    }

    #[test]
    fn division_is_exact() {
        let a = GaussRat::gauss_int(3, 4);
        let b = GaussRat::gauss_int(1, -2);
        let q = &a / &b;
        assert_eq!(&q * &b, a);
        assert_eq!(q, GaussRat::new(BigRational::new((-1).into(), 1.into()), BigRational::from_integer(2.into())));
    }

    #[test]
    fn string_round_trip() {
        let x = GaussRat::new(BigRational::new(3.into(), (-6).into()), BigRational::from_integer(7.into()));
        let (re, im) = x.to_strings();
        assert_eq!(re, "-1/2");
        assert_eq!(im, "7");
        assert_eq!(GaussRat::from_strings(&re, &im).unwrap(), x);
        assert!(GaussRat::from_strings("1/0", "0").is_err());
        assert_eq!("2/4,-1".parse::<GaussRat>().unwrap().to_string(), "1/2-1i");
    }

    #[test]
    fn monomials() {
        assert_eq!(DeltaPoly::delta_monomial(&[0], 3).unwrap(), d(3, 0));
        assert_eq!(DeltaPoly::delta_monomial(&[], 3).unwrap(), DeltaPoly::one(3));
        let expected = DeltaPoly::from_exponents(2, vec![1, 2], GaussRat::one());
        assert_eq!(DeltaPoly::delta_monomial(&[1, 1, 0], 2).unwrap(), expected);
        assert_eq!(&(&d(2, 0) * &d(2, 1)) * &d(2, 1), expected);
        assert!(matches!(DeltaPoly::delta_monomial(&[2], 3), Err(Error::BadLabel { label: 2, m: 3 })));
    }

    #[test]
    fn arithmetic_examples() {
        let d0 = d(2, 0);
        assert!((&d0 + &(-&d0)).is_zero());
        let one = DeltaPoly::one(2);
        let lhs = &(&d0 + &one) * &(&d0 - &one);
        let rhs = &(&d0 * &d0) - &one;
        assert_eq!(lhs, rhs);
        assert_eq!(&d0 * &d(2, 1), DeltaPoly::from_exponents(2, vec![1, 1], GaussRat::one()));
        assert!(matches!(d0.checked_add(&d(3, 0)), Err(Error::ContextMismatch(_))));
    }

    #[test]
    fn specialize_examples() {
        let mut a = BTreeMap::new();
        a.insert(0, GaussRat::from_int(-2));
        assert_eq!(d(2, 0).specialize(&a).unwrap(), GaussRat::from_int(-2));

        let p = &(&d(2, 0) * &d(2, 1)) + &d(2, 1);
        let mut a = BTreeMap::new();
        a.insert(0, GaussRat::from_int(-3));
        a.insert(1, GaussRat::zero());
        assert_eq!(p.specialize(&a).unwrap(), GaussRat::zero());

        assert_eq!(DeltaPoly::one(5).specialize(&BTreeMap::new()).unwrap(), GaussRat::one());
        assert_eq!(d(2, 1).specialize(&BTreeMap::new()), Err(Error::MissingAssignment(1)));
    }

    #[test]
    fn json_round_trip() {
        let p = &(&d(4, 2) * &d(4, 0)).scale(&GaussRat::gauss_int(1, -3))
            + &DeltaPoly::constant(4, GaussRat::from_frac(5, 7));
        let back = DeltaPoly::from_json(4, &p.to_json()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn loop_label_normalization() {
        assert_eq!(normalize_loop_label(2, 3), 1);
        assert_eq!(normalize_loop_label(0, 3), 0);
        assert_eq!(normalize_loop_label(3, 4), 1);
        assert_eq!(normalize_loop_label(2, 4), 2);
        assert_eq!(normalize_loop_label(0, 1), 0);
    }
}
