//! Exact base fields: prime fields `F_p`, the rationals `Q`, cyclotomic
//! fields `Q(w)` for `w` a primitive `d`-th root of unity (`d` an odd prime),
//! and fraction fields of multivariate polynomial rings over any of the
//! former.
//!
//! Every element is kept in a canonical form — reduced residues, lowest-terms
//! rationals, coordinates over the power basis `1, w, ..., w^{d-2}`, and
//! lowest-terms fractions of polynomials with monic denominator — so that
//! structural equality is semantic equality and rendering is byte-stable.
//!
//! Beyond arithmetic the module provides the two decision procedures the
//! splitting machinery is built on: [`dth_power_test`], which decides whether
//! an element is a `d`-th power (exactly where that is decidable, with an
//! honest [`PowerDecision::Unknown`] where it is not), and
//! [`primitive_root_of_unity`], which locates a canonical primitive `d`-th
//! root of unity when the field has one.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::matrix::CommutativeRing;
use crate::polyring::{self, MultiPoly};

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime modulus {0} exceeds 2^31")]
    PrimeTooLarge(u64),
    #[error("cyclotomic degree {0} must be an odd prime >= 3")]
    InvalidCyclotomicDegree(u64),
    #[error("fraction fields over fraction fields are not supported")]
    NestedFractionField,
    #[error("invalid variable name {0:?}")]
    InvalidVariableName(String),
    #[error("duplicate variable name {0:?}")]
    DuplicateVariableName(String),
    #[error("a fraction field needs at least one variable")]
    EmptyVariableList,
    #[error("cannot parse field descriptor {input:?}: {detail}")]
    DescriptorSyntax { input: String, detail: String },
    #[error("cannot parse element literal {input:?}: {detail}")]
    ElementSyntax { input: String, detail: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator {0} is divisible by the characteristic")]
    DenominatorNotInvertible(BigInt),
    #[error("the d-th power test requires a nonzero input")]
    ZeroInPowerTest,
    #[error("power degree {0} must be odd and positive")]
    InvalidPowerDegree(u64),
    #[error("characteristic {p} divides the degree {d}")]
    CharacteristicDividesDegree { p: u64, d: u64 },
    #[error("element of {found} used where an element of {expected} was expected")]
    FieldMismatch { expected: String, found: String },
    #[error("{field} has no generator w")]
    NoGenerator { field: String },
    #[error("expected {expected} coordinates, found {found}")]
    CoordinateLength { expected: usize, found: usize },
    #[error(transparent)]
    Poly(#[from] polyring::PolyError),
}

/// The four supported base field shapes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldKind {
    /// `F_p` for a prime `p < 2^31`.
    Prime(u64),
    /// The rational numbers.
    Rationals,
    /// `Q(w)`, `w` a primitive `d`-th root of unity, `d` an odd prime.
    Cyclotomic(u64),
    /// `Frac(base[v_1, ..., v_n])`; the base is never itself a fraction field.
    FractionField {
        base: Arc<FieldDescriptor>,
        variables: Vec<String>,
    },
}

/// A base field, shared by reference-counted pointer between all elements,
/// polynomials and extensions built over it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldDescriptor {
    kind: FieldKind,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn valid_variable_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    // "w" is reserved for the cyclotomic generator so element syntax stays
    // unambiguous.
    name != "w" && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl FieldDescriptor {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Arc<Self>, FieldError> {
        if p >= 1 << 31 {
            return Err(FieldError::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Arc::new(FieldDescriptor { kind: FieldKind::Prime(p) }))
    }

    /// The rational numbers.
    #[must_use]
    pub fn rationals() -> Arc<Self> {
        Arc::new(FieldDescriptor { kind: FieldKind::Rationals })
    }

    /// `Q(w)` for a primitive `d`-th root of unity `w`; `d` must be an odd
    /// prime, for which the minimal polynomial of `w` is
    /// `1 + x + ... + x^{d-1}`.
    pub fn cyclotomic(d: u64) -> Result<Arc<Self>, FieldError> {
        if d < 3 || d.is_multiple_of(2) || !is_prime(d) {
            return Err(FieldError::InvalidCyclotomicDegree(d));
        }
        Ok(Arc::new(FieldDescriptor { kind: FieldKind::Cyclotomic(d) }))
    }

    /// The fraction field of `base[variables]`.
    pub fn fraction_field<S: AsRef<str>>(
        base: &Arc<Self>,
        variables: &[S],
    ) -> Result<Arc<Self>, FieldError> {
        if matches!(base.kind, FieldKind::FractionField { .. }) {
            return Err(FieldError::NestedFractionField);
        }
        if variables.is_empty() {
            return Err(FieldError::EmptyVariableList);
        }
        let mut names = Vec::with_capacity(variables.len());
        for v in variables {
            let v = v.as_ref();
            if !valid_variable_name(v) {
                return Err(FieldError::InvalidVariableName(v.to_string()));
            }
            if names.iter().any(|n| n == v) {
                return Err(FieldError::DuplicateVariableName(v.to_string()));
            }
            names.push(v.to_string());
        }
        Ok(Arc::new(FieldDescriptor {
            kind: FieldKind::FractionField { base: Arc::clone(base), variables: names },
        }))
    }

    #[must_use]
    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }

    /// `0` in characteristic zero, `p` for prime and `Frac(F_p[...])` fields.
    #[must_use]
    pub fn characteristic(&self) -> u64 {
        match &self.kind {
            FieldKind::Prime(p) => *p,
            FieldKind::Rationals | FieldKind::Cyclotomic(_) => 0,
            FieldKind::FractionField { base, .. } => base.characteristic(),
        }
    }

    #[must_use]
    pub fn is_finite(&self) -> bool {
        matches!(self.kind, FieldKind::Prime(_))
    }

    /// Coefficient field of a fraction field; `None` otherwise.
    #[must_use]
    pub fn base_field(&self) -> Option<&Arc<FieldDescriptor>> {
        match &self.kind {
            FieldKind::FractionField { base, .. } => Some(base),
            _ => None,
        }
    }

    /// Variable names of a fraction field; empty otherwise.
    #[must_use]
    pub fn variables(&self) -> &[String] {
        match &self.kind {
            FieldKind::FractionField { variables, .. } => variables,
            _ => &[],
        }
    }

    /// Parses the descriptor grammar: `Fp:7`, `Q`, `QW:3`,
    /// `Frac(Q)[x,y,z,t]`.
    pub fn parse(input: &str) -> Result<Arc<Self>, FieldError> {
        let s = input.trim();
        let syntax = |detail: &str| FieldError::DescriptorSyntax {
            input: input.to_string(),
            detail: detail.to_string(),
        };
        if let Some(rest) = s.strip_prefix("Frac(") {
            let close = rest.find(')').ok_or_else(|| syntax("missing ')'"))?;
            let base = Self::parse(&rest[..close])?;
            let tail = &rest[close + 1..];
            let tail = tail.strip_prefix('[').ok_or_else(|| syntax("expected '[' after base"))?;
            let tail = tail.strip_suffix(']').ok_or_else(|| syntax("missing ']'"))?;
            let vars: Vec<&str> = tail.split(',').map(str::trim).collect();
            return Self::fraction_field(&base, &vars);
        }
        if s == "Q" {
            return Ok(Self::rationals());
        }
        if let Some(p) = s.strip_prefix("Fp:") {
            let p: u64 = p.trim().parse().map_err(|_| syntax("modulus is not a number"))?;
            return Self::prime(p);
        }
        if let Some(d) = s.strip_prefix("QW:") {
            let d: u64 = d.trim().parse().map_err(|_| syntax("degree is not a number"))?;
            return Self::cyclotomic(d);
        }
        Err(syntax("expected Fp:<p>, Q, QW:<d> or Frac(<base>)[vars]"))
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FieldKind::Prime(p) => write!(f, "Fp:{p}"),
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Cyclotomic(d) => write!(f, "QW:{d}"),
            FieldKind::FractionField { base, variables } => {
                write!(f, "Frac({})[{}]", base, variables.join(","))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Elements

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Value {
    Prime(u64),
    Rational(BigRational),
    /// Coordinates over `1, w, ..., w^{d-2}`.
    Cyclotomic(Vec<BigRational>),
    RationalFunction(Box<RatFn>),
}

/// Lowest terms, nonzero monic denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RatFn {
    pub(crate) numerator: MultiPoly,
    pub(crate) denominator: MultiPoly,
}

/// An element of a [`FieldDescriptor`], always in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Arc<FieldDescriptor>,
    value: Value,
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    let p_big = BigInt::from(p);
    let mut r = n % &p_big;
    if r.sign() == num_bigint::Sign::Minus {
        r += &p_big;
    }
    r.to_u64().expect("residue fits in u64")
}

impl FieldElement {
    fn new(field: Arc<FieldDescriptor>, value: Value) -> Self {
        FieldElement { field, value }
    }

    #[must_use]
    pub fn field(&self) -> &Arc<FieldDescriptor> {
        &self.field
    }

    #[must_use]
    pub fn zero(field: &Arc<FieldDescriptor>) -> Self {
        let value = match &field.kind {
            FieldKind::Prime(_) => Value::Prime(0),
            FieldKind::Rationals => Value::Rational(BigRational::zero()),
            FieldKind::Cyclotomic(d) => Value::Cyclotomic(vec![BigRational::zero(); *d as usize - 1]),
            FieldKind::FractionField { base, variables } => Value::RationalFunction(Box::new(RatFn {
                numerator: MultiPoly::zero(base, variables),
                denominator: MultiPoly::one(base, variables),
            })),
        };
        FieldElement::new(Arc::clone(field), value)
    }

    #[must_use]
    pub fn one(field: &Arc<FieldDescriptor>) -> Self {
        Self::from_integer(field, 1)
    }

    /// The image of an integer under the unique ring map `Z -> k`.
    #[must_use]
    pub fn from_integer(field: &Arc<FieldDescriptor>, n: i64) -> Self {
        Self::from_bigint(field, &BigInt::from(n))
    }

    #[must_use]
    pub fn from_bigint(field: &Arc<FieldDescriptor>, n: &BigInt) -> Self {
        let value = match &field.kind {
            FieldKind::Prime(p) => Value::Prime(bigint_mod(n, *p)),
            FieldKind::Rationals => Value::Rational(BigRational::from_integer(n.clone())),
            FieldKind::Cyclotomic(d) => {
                let mut coords = vec![BigRational::zero(); *d as usize - 1];
                coords[0] = BigRational::from_integer(n.clone());
                Value::Cyclotomic(coords)
            }
            FieldKind::FractionField { base, variables } => {
                let c = FieldElement::from_bigint(base, n);
                Value::RationalFunction(Box::new(RatFn {
                    numerator: MultiPoly::constant(base, variables, &c),
                    denominator: MultiPoly::one(base, variables),
                }))
            }
        };
        FieldElement::new(Arc::clone(field), value)
    }

    /// The image of a rational number; fails over `F_p` when the denominator
    /// is divisible by `p`.
    pub fn from_rational(field: &Arc<FieldDescriptor>, r: &BigRational) -> Result<Self, FieldError> {
        match &field.kind {
            FieldKind::Prime(p) => {
                let den = bigint_mod(r.denom(), *p);
                if den == 0 {
                    return Err(FieldError::DenominatorNotInvertible(r.denom().clone()));
                }
                let num = bigint_mod(r.numer(), *p);
                Ok(FieldElement::new(
                    Arc::clone(field),
                    Value::Prime(mul_mod(num, inv_mod(den, *p), *p)),
                ))
            }
            FieldKind::Rationals => {
                Ok(FieldElement::new(Arc::clone(field), Value::Rational(r.clone())))
            }
            FieldKind::Cyclotomic(d) => {
                let mut coords = vec![BigRational::zero(); *d as usize - 1];
                coords[0] = r.clone();
                Ok(FieldElement::new(Arc::clone(field), Value::Cyclotomic(coords)))
            }
            FieldKind::FractionField { base, variables } => {
                let c = FieldElement::from_rational(base, r)?;
                Ok(FieldElement::new(
                    Arc::clone(field),
                    Value::RationalFunction(Box::new(RatFn {
                        numerator: MultiPoly::constant(base, variables, &c),
                        denominator: MultiPoly::one(base, variables),
                    })),
                ))
            }
        }
    }

    /// The generator `w` of a cyclotomic field.
    pub fn generator(field: &Arc<FieldDescriptor>) -> Result<Self, FieldError> {
        match &field.kind {
            FieldKind::Cyclotomic(d) => {
                let mut coords = vec![BigRational::zero(); *d as usize - 1];
                coords[1] = BigRational::one();
                Ok(FieldElement::new(Arc::clone(field), Value::Cyclotomic(coords)))
            }
            _ => Err(FieldError::NoGenerator { field: field.to_string() }),
        }
    }

    /// A cyclotomic element from its coordinates over `1, w, ..., w^{d-2}`.
    pub fn cyclotomic_from_coords(
        field: &Arc<FieldDescriptor>,
        coords: Vec<BigRational>,
    ) -> Result<Self, FieldError> {
        match &field.kind {
            FieldKind::Cyclotomic(d) => {
                let want = *d as usize - 1;
                if coords.len() != want {
                    return Err(FieldError::CoordinateLength { expected: want, found: coords.len() });
                }
                Ok(FieldElement::new(Arc::clone(field), Value::Cyclotomic(coords)))
            }
            _ => Err(FieldError::NoGenerator { field: field.to_string() }),
        }
    }

    /// A fraction field element `p/1`.
    pub fn from_polynomial(field: &Arc<FieldDescriptor>, p: MultiPoly) -> Result<Self, FieldError> {
        match &field.kind {
            FieldKind::FractionField { base, variables } => {
                if p.coefficient_field() != base || p.variables() != variables {
                    return Err(FieldError::FieldMismatch {
                        expected: field.to_string(),
                        found: format!("polynomial over {}", p.coefficient_field()),
                    });
                }
                let one = MultiPoly::one(base, variables);
                Ok(FieldElement::new(
                    Arc::clone(field),
                    Value::RationalFunction(Box::new(RatFn { numerator: p, denominator: one })),
                ))
            }
            _ => Err(FieldError::FieldMismatch {
                expected: "a fraction field".to_string(),
                found: field.to_string(),
            }),
        }
    }

    /// A fraction field element `num/den`, canonicalized to lowest terms with
    /// monic denominator.
    pub fn from_quotient(
        field: &Arc<FieldDescriptor>,
        num: MultiPoly,
        den: MultiPoly,
    ) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let n = Self::from_polynomial(field, num)?;
        let d = Self::from_polynomial(field, den)?;
        n.div(&d)
    }

    /// The residue of a prime field element.
    #[must_use]
    pub fn residue(&self) -> Option<u64> {
        match &self.value {
            Value::Prime(r) => Some(*r),
            _ => None,
        }
    }

    /// The value of a rational element, or of any element that happens to lie
    /// in the image of `Q` (constant cyclotomic coordinates, constant
    /// fraction).
    #[must_use]
    pub fn as_rational(&self) -> Option<BigRational> {
        match &self.value {
            Value::Rational(r) => Some(r.clone()),
            Value::Cyclotomic(coords) => {
                if coords[1..].iter().all(Zero::is_zero) {
                    Some(coords[0].clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Coordinates of a cyclotomic element.
    #[must_use]
    pub fn cyclotomic_coords(&self) -> Option<&[BigRational]> {
        match &self.value {
            Value::Cyclotomic(coords) => Some(coords),
            _ => None,
        }
    }

    /// Numerator and denominator of a fraction field element.
    #[must_use]
    pub fn as_quotient(&self) -> Option<(&MultiPoly, &MultiPoly)> {
        match &self.value {
            Value::RationalFunction(r) => Some((&r.numerator, &r.denominator)),
            _ => None,
        }
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Prime(r) => *r == 0,
            Value::Rational(r) => r.is_zero(),
            Value::Cyclotomic(coords) => coords.iter().all(Zero::is_zero),
            Value::RationalFunction(r) => r.numerator.is_zero(),
        }
    }

    #[must_use]
    pub fn is_one(&self) -> bool {
        *self == Self::one(&self.field)
    }

    fn assert_same_field(&self, other: &Self, op: &str) {
        assert!(
            self.field == other.field,
            "{op} between elements of {} and {}",
            self.field,
            other.field
        );
    }

    #[must_use]
    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_field(other, "addition");
        let value = match (&self.value, &other.value) {
            (Value::Prime(a), Value::Prime(b)) => {
                let p = self.field.characteristic();
                Value::Prime((a + b) % p)
            }
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a + b),
            (Value::Cyclotomic(a), Value::Cyclotomic(b)) => {
                Value::Cyclotomic(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (Value::RationalFunction(a), Value::RationalFunction(b)) => {
                // a/b + c/d = (ad + cb) / bd
                let num = a
                    .numerator
                    .mul(&b.denominator)
                    .add(&b.numerator.mul(&a.denominator));
                let den = a.denominator.mul(&b.denominator);
                return Self::fraction_canonical(&self.field, num, den)
                    .expect("product of nonzero denominators is nonzero");
            }
            _ => unreachable!("same descriptor implies same value shape"),
        };
        FieldElement::new(Arc::clone(&self.field), value)
    }

    #[must_use]
    pub fn neg(&self) -> Self {
        let value = match &self.value {
            Value::Prime(a) => {
                let p = self.field.characteristic();
                Value::Prime(if *a == 0 { 0 } else { p - a })
            }
            Value::Rational(a) => Value::Rational(-a),
            Value::Cyclotomic(coords) => Value::Cyclotomic(coords.iter().map(|c| -c).collect()),
            Value::RationalFunction(r) => Value::RationalFunction(Box::new(RatFn {
                numerator: r.numerator.neg(),
                denominator: r.denominator.clone(),
            })),
        };
        FieldElement::new(Arc::clone(&self.field), value)
    }

    #[must_use]
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    #[must_use]
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_field(other, "multiplication");
        let value = match (&self.value, &other.value) {
            (Value::Prime(a), Value::Prime(b)) => {
                Value::Prime(mul_mod(*a, *b, self.field.characteristic()))
            }
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a * b),
            (Value::Cyclotomic(a), Value::Cyclotomic(b)) => {
                Value::Cyclotomic(cyclotomic_mul(a, b))
            }
            (Value::RationalFunction(a), Value::RationalFunction(b)) => {
                let num = a.numerator.mul(&b.numerator);
                let den = a.denominator.mul(&b.denominator);
                return Self::fraction_canonical(&self.field, num, den)
                    .expect("product of nonzero denominators is nonzero");
            }
            _ => unreachable!("same descriptor implies same value shape"),
        };
        FieldElement::new(Arc::clone(&self.field), value)
    }

    pub fn inverse(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let value = match &self.value {
            Value::Prime(a) => Value::Prime(inv_mod(*a, self.field.characteristic())),
            Value::Rational(a) => Value::Rational(a.recip()),
            Value::Cyclotomic(coords) => {
                let d = match self.field.kind() {
                    FieldKind::Cyclotomic(d) => *d,
                    _ => unreachable!(),
                };
                Value::Cyclotomic(cyclotomic_inverse(coords, d))
            }
            Value::RationalFunction(r) => {
                return Self::fraction_canonical(
                    &self.field,
                    r.denominator.clone(),
                    r.numerator.clone(),
                );
            }
        };
        Ok(FieldElement::new(Arc::clone(&self.field), value))
    }

    pub fn div(&self, other: &Self) -> Result<Self, FieldError> {
        Ok(self.mul(&other.inverse()?))
    }

    /// `self^exp`; a negative exponent inverts first, so zero to a negative
    /// power is a division by zero.
    pub fn pow(&self, exp: i64) -> Result<Self, FieldError> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one(&self.field);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            e >>= 1;
        }
        Ok(acc)
    }

    fn fraction_canonical(
        field: &Arc<FieldDescriptor>,
        num: MultiPoly,
        den: MultiPoly,
    ) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let (base, variables) = match &field.kind {
            FieldKind::FractionField { base, variables } => (base, variables),
            _ => unreachable!(),
        };
        if num.is_zero() {
            return Ok(Self::zero(field));
        }
        let (num, den) = if let Some(c) = den.constant_value() {
            // The overwhelmingly common case: dividing by a constant.
            let inv = c.inverse()?;
            (num.mul_scalar(&inv), MultiPoly::one(base, variables))
        } else {
            let g = polyring::poly_gcd(&num, &den);
            let num = polyring::exact_div(&num, &g).expect("gcd divides numerator");
            let den = polyring::exact_div(&den, &g).expect("gcd divides denominator");
            let lc_inv = den.leading_coefficient().expect("nonzero").inverse()?;
            (num.mul_scalar(&lc_inv), den.mul_scalar(&lc_inv))
        };
        Ok(FieldElement::new(
            Arc::clone(field),
            Value::RationalFunction(Box::new(RatFn { numerator: num, denominator: den })),
        ))
    }

    /// Canonical total order on the field; used to make every search and
    /// every "smallest witness" choice deterministic.  Prime fields order by
    /// residue, the rationals numerically, cyclotomic fields
    /// coordinate-lexicographically, and fraction fields by comparing
    /// canonical numerators then denominators term by term (graded
    /// lexicographic monomials, largest first).
    ///
    /// # Panics
    ///
    /// If the elements belong to different fields.
    #[must_use]
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        self.assert_same_field(other, "comparison");
        match (&self.value, &other.value) {
            (Value::Prime(a), Value::Prime(b)) => a.cmp(b),
            (Value::Rational(a), Value::Rational(b)) => a.cmp(b),
            (Value::Cyclotomic(a), Value::Cyclotomic(b)) => a.cmp(b),
            (Value::RationalFunction(a), Value::RationalFunction(b)) => a
                .numerator
                .cmp_canonical(&b.numerator)
                .then_with(|| a.denominator.cmp_canonical(&b.denominator)),
            _ => unreachable!("same descriptor implies same value shape"),
        }
    }

    /// Parses an element literal.  Accepted forms depend on the field:
    /// integers and `n/m` fractions for `F_p` and `Q`; sums of `c`, `c*w^k`
    /// terms for cyclotomic fields; polynomials and `(P)/(Q)` quotients for
    /// fraction fields.
    pub fn parse(field: &Arc<FieldDescriptor>, input: &str) -> Result<Self, FieldError> {
        let s = input.trim();
        let syntax = |detail: String| FieldError::ElementSyntax {
            input: input.to_string(),
            detail,
        };
        match &field.kind {
            FieldKind::Prime(_) | FieldKind::Rationals => {
                let r = parse_rational_literal(s).map_err(syntax)?;
                Self::from_rational(field, &r)
            }
            FieldKind::Cyclotomic(d) => {
                let coords = parse_cyclotomic_literal(s, *d).map_err(syntax)?;
                Self::cyclotomic_from_coords(field, coords)
            }
            FieldKind::FractionField { base, variables } => {
                if let Some(rest) = s.strip_prefix('(') {
                    if let Some((inner, tail)) = split_paren_group(rest) {
                        let tail = tail.trim_start();
                        if tail.is_empty() {
                            // A fully parenthesized polynomial.
                            let p = MultiPoly::parse(base, variables, inner)?;
                            return Self::from_polynomial(field, p);
                        }
                        if let Some(den_part) = tail.strip_prefix('/') {
                            let den_part = den_part.trim();
                            let den_inner = den_part
                                .strip_prefix('(')
                                .and_then(split_paren_group)
                                .filter(|(_, after)| after.trim().is_empty())
                                .map(|(inner, _)| inner)
                                .ok_or_else(|| {
                                    syntax("expected (numerator)/(denominator)".to_string())
                                })?;
                            let num = MultiPoly::parse(base, variables, inner)?;
                            let den = MultiPoly::parse(base, variables, den_inner)?;
                            return Self::from_quotient(field, num, den);
                        }
                    }
                }
                let p = MultiPoly::parse(base, variables, s)?;
                Self::from_polynomial(field, p)
            }
        }
    }
}

/// Splits `"inner) tail"` into `("inner", "tail")`, honouring nested parens.
/// The input starts just *after* an opening paren.
pub(crate) fn split_paren_group(s: &str) -> Option<(&str, &str)> {
    let mut depth = 1usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some((&s[..i], &s[i + 1..]));
                }
            }
            _ => {}
        }
    }
    None
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Prime(r) => write!(f, "{r}"),
            Value::Rational(r) => write!(f, "{r}"),
            Value::Cyclotomic(coords) => write!(f, "{}", render_cyclotomic(coords)),
            Value::RationalFunction(r) => {
                if r.denominator.is_one() {
                    write!(f, "{}", r.numerator)
                } else {
                    write!(f, "({})/({})", r.numerator, r.denominator)
                }
            }
        }
    }
}

impl CommutativeRing for FieldElement {
    fn ring_one(&self) -> Self {
        FieldElement::one(&self.field)
    }
    fn ring_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
}

macro_rules! element_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                FieldElement::$method(self, rhs)
            }
        }
    };
}
element_binop!(Add, add);
element_binop!(Sub, sub);
element_binop!(Mul, mul);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

// ---------------------------------------------------------------------------
// Cyclotomic arithmetic over the power basis, d an odd prime.

/// Multiplication modulo `x^d - 1` followed by elimination of `x^{d-1}` via
/// `x^{d-1} = -(1 + x + ... + x^{d-2})`.
fn cyclotomic_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let d = a.len() + 1;
    let mut folded = vec![BigRational::zero(); d];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            folded[(i + j) % d] += ai * bj;
        }
    }
    let top = folded.pop().expect("d >= 3");
    folded.iter_mut().for_each(|c| *c -= &top);
    folded
}

/// `w |-> w^j` for `j` coprime to `d`, on coordinates.
fn cyclotomic_conjugate(coords: &[BigRational], d: u64, j: u64) -> Vec<BigRational> {
    let d = d as usize;
    let mut folded = vec![BigRational::zero(); d];
    for (i, c) in coords.iter().enumerate() {
        folded[(i * j as usize) % d] += c;
    }
    let top = folded.pop().expect("d >= 3");
    folded.iter_mut().for_each(|c| *c -= &top);
    folded
}

/// Inverse in `Q[x]/(Phi_d)` by the extended Euclidean algorithm on dense
/// rational polynomials.
fn cyclotomic_inverse(coords: &[BigRational], d: u64) -> Vec<BigRational> {
    // Phi_d = 1 + x + ... + x^{d-1} for prime d.
    let phi: Vec<BigRational> = vec![BigRational::one(); d as usize];
    let a: Vec<BigRational> = coords.to_vec();

    // Invariant: r0 = s0 * a (mod phi), r1 = s1 * a (mod phi).
    let mut r0 = phi.clone();
    let mut r1 = trim_poly(a);
    let mut s0 = vec![];
    let mut s1 = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, rem) = poly_divmod(&r0, &r1);
        let s_next = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s_next;
    }
    // r0 is a nonzero constant: the element is invertible since Phi_d is
    // irreducible and a != 0.
    assert_eq!(r0.len(), 1, "element has no inverse modulo an irreducible polynomial");
    let scale = r0[0].recip();
    let scaled: Vec<BigRational> = s0.iter().map(|c| c * &scale).collect();
    let (_, mut inv) = poly_divmod(&scaled, &phi);
    inv.resize(d as usize - 1, BigRational::zero());
    inv
}

fn trim_poly(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim_poly(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = a.to_vec();
    out.resize(out.len().max(b.len()), BigRational::zero());
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim_poly(out)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead = &b[db];
    if rem.len() <= db {
        return (vec![], trim_poly(rem));
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() > db {
        let dr = rem.len() - 1;
        let c = &rem[dr] / lead;
        quot[dr - db] = c.clone();
        for (i, y) in b.iter().enumerate() {
            let t = &c * y;
            rem[dr - db + i] -= t;
        }
        rem = trim_poly(rem);
        if rem.is_empty() {
            break;
        }
    }
    (trim_poly(quot), rem)
}

fn render_cyclotomic(coords: &[BigRational]) -> String {
    let mut out = String::new();
    for (i, c) in coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let show_coeff = i == 0 || !mag.is_one();
        if show_coeff {
            out.push_str(&mag.to_string());
        }
        if i > 0 {
            if show_coeff {
                out.push('*');
            }
            out.push('w');
            if i > 1 {
                out.push_str(&format!("^{i}"));
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

// ---------------------------------------------------------------------------
// Scalar literal parsing

fn parse_rational_literal(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (sign, rest) = match s.strip_prefix('-') {
        Some(r) => (-1, r.trim()),
        None => (1, s),
    };
    let parse_int = |t: &str| -> Result<BigInt, String> {
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("{t:?} is not an integer"));
        }
        t.parse::<BigInt>().map_err(|e| e.to_string())
    };
    let r = match rest.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d.trim())?;
            if den.is_zero() {
                return Err("zero denominator".to_string());
            }
            BigRational::new(parse_int(n.trim())?, den)
        }
        None => BigRational::from_integer(parse_int(rest)?),
    };
    Ok(if sign < 0 { -r } else { r })
}

fn parse_cyclotomic_literal(s: &str, d: u64) -> Result<Vec<BigRational>, String> {
    let mut coords = vec![BigRational::zero(); d as usize - 1];
    let mut rest = s.trim();
    if rest.is_empty() {
        return Err("empty literal".to_string());
    }
    let mut sign = BigRational::one();
    if let Some(r) = rest.strip_prefix('-') {
        sign = -sign;
        rest = r.trim_start();
    }
    loop {
        // One term: RAT, RAT*w^k, w^k or w.
        let term_end = rest
            .char_indices()
            .find(|(i, c)| (*c == '+' || *c == '-') && *i > 0)
            .map_or(rest.len(), |(i, _)| i);
        let term = rest[..term_end].trim();
        let (coeff, power) = parse_cyclotomic_term(term, d)?;
        let signed = &sign * coeff;
        if power == d as usize - 1 {
            // w^{d-1} = -(1 + w + ... + w^{d-2}).
            coords.iter_mut().for_each(|c| *c -= &signed);
        } else {
            coords[power] += signed;
        }
        rest = rest[term_end..].trim_start();
        if rest.is_empty() {
            break;
        }
        sign = match rest.as_bytes()[0] {
            b'+' => BigRational::one(),
            b'-' => -BigRational::one(),
            _ => unreachable!(),
        };
        rest = rest[1..].trim_start();
        if rest.is_empty() {
            return Err("dangling sign".to_string());
        }
    }
    Ok(coords)
}

fn parse_cyclotomic_term(term: &str, d: u64) -> Result<(BigRational, usize), String> {
    let (coeff_part, w_part) = match term.find('w') {
        Some(pos) => {
            let head = term[..pos].trim().trim_end_matches('*').trim();
            (head, Some(term[pos..].trim()))
        }
        None => (term, None),
    };
    let coeff = if coeff_part.is_empty() {
        BigRational::one()
    } else {
        parse_rational_literal(coeff_part)?
    };
    let power = match w_part {
        None => 0usize,
        Some(wp) => {
            let rest = &wp[1..];
            let k: u64 = if rest.is_empty() {
                1
            } else {
                let e = rest
                    .strip_prefix('^')
                    .ok_or_else(|| format!("unexpected {rest:?} after w"))?;
                e.trim().parse().map_err(|_| format!("bad exponent {e:?}"))?
            };
            // w^d = 1; the caller folds w^{d-1} into the power basis.
            (k % d) as usize
        }
    };
    Ok((coeff, power))
}

// ---------------------------------------------------------------------------
// d-th powers

/// Outcome of [`dth_power_test`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PowerDecision {
    /// `c = root^d`, with the canonical (smallest) such root.
    Power(FieldElement),
    /// Certified not a `d`-th power.
    NotAPower,
    /// The procedure is not a decision procedure for this input (only
    /// possible for cyclotomic fields outside the rational line, past the
    /// height-bounded search).
    Unknown,
}

/// Height bound and candidate cap for the cyclotomic fallback search.
const CYCLOTOMIC_SEARCH_HEIGHT: u32 = 4;
const CYCLOTOMIC_SEARCH_CAP: usize = 20_000;

/// Decides whether `c` is a `d`-th power in its field, for odd `d >= 1`.
///
/// * `F_p`: decided by the order criterion `c^{(p-1)/gcd(d,p-1)} = 1`; the
///   canonical root is the smallest residue, found by direct scan (the root
///   is unique without scanning when `gcd(d, p-1) = 1`).
/// * `Q`: integer `d`-th roots of numerator and denominator; odd `d` makes
///   the sign unambiguous.
/// * `Q(w)`: inputs on the rational line with `d` equal to the field's
///   degree are decided exactly — a rational that is a `d`-th power in
///   `Q(w_d)` is already one in `Q`, because a rational root would generate
///   a degree-`d` subfield of a field of degree `d-1`.  Other inputs get a
///   certified negative when the norm to `Q` is not a `d`-th power, a
///   witness when the height-bounded search finds one, and
///   [`PowerDecision::Unknown`] otherwise.
/// * Fraction fields: exact polynomial `d`-th roots of the canonical
///   numerator and denominator (leading-term recursion), fully decidable
///   over decidable coefficient fields.
pub fn dth_power_test(c: &FieldElement, d: u64) -> Result<PowerDecision, FieldError> {
    if d == 0 || d.is_multiple_of(2) {
        return Err(FieldError::InvalidPowerDegree(d));
    }
    if c.is_zero() {
        return Err(FieldError::ZeroInPowerTest);
    }
    match &c.value {
        Value::Prime(r) => {
            let p = c.field.characteristic();
            Ok(prime_dth_power(*r, d, p, &c.field))
        }
        Value::Rational(r) => Ok(match rational_dth_root(r, d) {
            Some(root) => PowerDecision::Power(FieldElement::from_rational(&c.field, &root)?),
            None => PowerDecision::NotAPower,
        }),
        Value::Cyclotomic(coords) => cyclotomic_dth_power(c, coords, d),
        Value::RationalFunction(r) => {
            let p = c.field.characteristic();
            if p != 0 && d.is_multiple_of(p) {
                return Err(FieldError::CharacteristicDividesDegree { p, d });
            }
            let num = match polyring::poly_dth_root(&r.numerator, d)? {
                PolyRootOutcome::Root(g) => g,
                PolyRootOutcome::NotAPower => return Ok(PowerDecision::NotAPower),
                PolyRootOutcome::Unknown => return Ok(PowerDecision::Unknown),
            };
            let den = match polyring::poly_dth_root(&r.denominator, d)? {
                PolyRootOutcome::Root(g) => g,
                PolyRootOutcome::NotAPower => return Ok(PowerDecision::NotAPower),
                PolyRootOutcome::Unknown => return Ok(PowerDecision::Unknown),
            };
            let root = FieldElement::from_quotient(&c.field, num, den)?;
            debug_assert_eq!(root.pow(d as i64).unwrap(), *c);
            Ok(PowerDecision::Power(root))
        }
    }
}

pub(crate) use crate::polyring::PolyRootOutcome;

fn prime_dth_power(r: u64, d: u64, p: u64, field: &Arc<FieldDescriptor>) -> PowerDecision {
    let g = num_integer::gcd(d, p - 1);
    if pow_mod(r, (p - 1) / g, p) != 1 {
        return PowerDecision::NotAPower;
    }
    if g == 1 {
        // x -> x^d is a bijection; the unique root is c^{d^{-1} mod (p-1)}.
        let d_inv = mod_inverse(d % (p - 1), p - 1).expect("gcd(d, p-1) = 1");
        let root = pow_mod(r, d_inv, p);
        return PowerDecision::Power(FieldElement::new(
            Arc::clone(field),
            Value::Prime(root),
        ));
    }
    // A root exists; take the smallest residue.  Linear scan in p, fine at
    // the scale this library targets.
    for x in 1..p {
        if pow_mod(x, d, p) == r {
            return PowerDecision::Power(FieldElement::new(Arc::clone(field), Value::Prime(x)));
        }
    }
    unreachable!("order criterion certified a root exists");
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    // Extended Euclid on i128.
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

fn rational_dth_root(r: &BigRational, d: u64) -> Option<BigRational> {
    let num = integer_dth_root(r.numer(), d)?;
    let den = integer_dth_root(r.denom(), d)?;
    Some(BigRational::new(num, den))
}

fn integer_dth_root(n: &BigInt, d: u64) -> Option<BigInt> {
    // Odd d: the real root has the sign of n.
    let root = n.abs().nth_root(d as u32);
    let root = if n.is_negative() { -root } else { root };
    if root.pow(d as u32) == *n {
        Some(root)
    } else {
        None
    }
}

fn cyclotomic_dth_power(
    c: &FieldElement,
    coords: &[BigRational],
    d: u64,
) -> Result<PowerDecision, FieldError> {
    let field_d = match c.field.kind() {
        FieldKind::Cyclotomic(fd) => *fd,
        _ => unreachable!(),
    };
    if let Some(r) = c.as_rational() {
        if d == field_d {
            // Exact: a rational d-th power in Q(w_d) is a d-th power in Q.
            // A root would generate a subfield of degree dividing both d
            // (prime) and d-1; degree d is impossible, so the root is
            // rational.
            return Ok(match rational_dth_root(&r, d) {
                Some(root) => {
                    PowerDecision::Power(FieldElement::from_rational(&c.field, &root)?)
                }
                None => PowerDecision::NotAPower,
            });
        }
        if let Some(root) = rational_dth_root(&r, d) {
            return Ok(PowerDecision::Power(FieldElement::from_rational(&c.field, &root)?));
        }
        // Fall through: not a rational d-th power, but for d different from
        // the field degree a cyclotomic root is not excluded.
    }
    // Roots of unity are fully decided: the torsion subgroup of Q(w)^x is
    // exactly the 2*field_d roots +-w^k, and a d-th root of a torsion
    // element is itself torsion, so checking all of them settles the
    // question.
    if c.pow(2 * field_d as i64)?.is_one() {
        let w = FieldElement::generator(&c.field)?;
        let mut best: Option<FieldElement> = None;
        for k in 0..field_d {
            for negate in [false, true] {
                let mut cand = w.pow(k as i64)?;
                if negate {
                    cand = cand.neg();
                }
                if cand.pow(d as i64)? == *c {
                    best = Some(match best {
                        None => cand,
                        Some(b) if cand.cmp_canonical(&b) == Ordering::Less => cand,
                        Some(b) => b,
                    });
                }
            }
        }
        return Ok(match best {
            Some(b) => PowerDecision::Power(b),
            None => PowerDecision::NotAPower,
        });
    }
    // Norm obstruction: N(c) = N(root)^d would be a rational d-th power.
    let norm = cyclotomic_norm_to_q(coords, field_d);
    if rational_dth_root(&norm, d).is_none() {
        return Ok(PowerDecision::NotAPower);
    }
    // Height-bounded search for a root, smallest (enumeration order) first.
    for cand in enumerate_field(&c.field, CYCLOTOMIC_SEARCH_HEIGHT, CYCLOTOMIC_SEARCH_CAP) {
        if cand.is_zero() {
            continue;
        }
        if cand.pow(d as i64)? == *c {
            return Ok(PowerDecision::Power(cand));
        }
    }
    Ok(PowerDecision::Unknown)
}

/// `N_{Q(w)/Q}` as the product of all conjugates `w -> w^j`, `1 <= j <= d-1`.
fn cyclotomic_norm_to_q(coords: &[BigRational], d: u64) -> BigRational {
    let mut acc = cyclotomic_conjugate(coords, d, 1);
    for j in 2..d {
        acc = cyclotomic_mul(&acc, &cyclotomic_conjugate(coords, d, j));
    }
    assert!(
        acc[1..].iter().all(Zero::is_zero),
        "norm of a cyclotomic element must be rational"
    );
    acc[0].clone()
}

// ---------------------------------------------------------------------------
// Roots of unity

/// Canonical primitive `d`-th root of unity, if the field contains one.
///
/// * `F_p`: the smallest residue of multiplicative order exactly `d`
///   (exists iff `d | p-1`).
/// * `Q`: only `1` and `-1`.
/// * `Q(w_e)`: the torsion subgroup is generated by `-w`, of order `2e`; a
///   primitive `d`-th root exists iff `d | 2e`.  For `d = e` the canonical
///   choice is the generator `w` itself.
/// * Fraction fields: whatever the coefficient field provides, embedded as a
///   constant.
pub fn primitive_root_of_unity(
    field: &Arc<FieldDescriptor>,
    d: u64,
) -> Result<Option<FieldElement>, FieldError> {
    if d == 0 {
        return Err(FieldError::InvalidPowerDegree(d));
    }
    if d == 1 {
        return Ok(Some(FieldElement::one(field)));
    }
    match field.kind() {
        FieldKind::Prime(p) => {
            if (p - 1) % d != 0 {
                return Ok(None);
            }
            let prime_divisors = distinct_prime_divisors(d);
            for x in 2..*p {
                if pow_mod(x, d, *p) == 1
                    && prime_divisors.iter().all(|q| pow_mod(x, d / q, *p) != 1)
                {
                    return Ok(Some(FieldElement::new(Arc::clone(field), Value::Prime(x))));
                }
            }
            unreachable!("F_p has an element of order d whenever d | p-1");
        }
        FieldKind::Rationals => Ok(if d == 2 {
            Some(FieldElement::from_integer(field, -1))
        } else {
            None
        }),
        FieldKind::Cyclotomic(e) => {
            if d == 2 {
                return Ok(Some(FieldElement::from_integer(field, -1)));
            }
            if d == *e {
                return Ok(Some(FieldElement::generator(field)?));
            }
            if d == 2 * e {
                return Ok(Some(FieldElement::generator(field)?.neg()));
            }
            Ok(None)
        }
        FieldKind::FractionField { base, .. } => {
            match primitive_root_of_unity(base, d)? {
                None => Ok(None),
                Some(c) => Ok(Some(embed_constant(field, &c))),
            }
        }
    }
}

/// Embeds a base field element as a constant of the fraction field.
pub fn embed_constant(field: &Arc<FieldDescriptor>, c: &FieldElement) -> FieldElement {
    match field.kind() {
        FieldKind::FractionField { base, variables } => {
            assert!(c.field() == base, "constant comes from the coefficient field");
            FieldElement::new(
                Arc::clone(field),
                Value::RationalFunction(Box::new(RatFn {
                    numerator: MultiPoly::constant(base, variables, c),
                    denominator: MultiPoly::one(base, variables),
                })),
            )
        }
        _ => {
            assert!(c.field() == field);
            c.clone()
        }
    }
}

fn distinct_prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---------------------------------------------------------------------------
// Enumeration

/// Height of a rational: `max(|num|, den)` on the lowest-terms form.
fn rational_height(r: &BigRational) -> BigInt {
    r.numer().abs().max(r.denom().clone())
}

/// Rationals of height exactly `h`, in increasing numeric order.
fn rational_shell(h: u32) -> Vec<BigRational> {
    let hb = BigInt::from(h);
    let mut shell = vec![];
    for den in 1..=h {
        for num in -(h as i64)..=(h as i64) {
            let r = BigRational::new(BigInt::from(num), BigInt::from(den));
            if rational_height(&r) == hb && r.denom() == &BigInt::from(den) {
                // The denominator check keeps only lowest-terms pairs, so
                // each rational appears once.
                shell.push(r);
            }
        }
    }
    shell.sort();
    shell
}

/// Deterministic enumeration used by searches and by the cyclotomic power
/// test: all of `F_p` in residue order; rationals by increasing height, then
/// numeric order; cyclotomic coordinate vectors by increasing maximum
/// coordinate height, then coordinate-lexicographic order.  Fraction fields
/// are not enumerated here — polynomial candidate generation is search
/// policy and lives with the searches.
pub(crate) fn enumerate_field(
    field: &Arc<FieldDescriptor>,
    max_height: u32,
    cap: usize,
) -> Vec<FieldElement> {
    match field.kind() {
        FieldKind::Prime(p) => (0..*p)
            .take(cap)
            .map(|r| FieldElement::new(Arc::clone(field), Value::Prime(r)))
            .collect(),
        FieldKind::Rationals => {
            let mut out = vec![];
            for h in 1..=max_height {
                for r in rational_shell(h) {
                    if out.len() >= cap {
                        return out;
                    }
                    out.push(
                        FieldElement::from_rational(field, &r).expect("rationals embed"),
                    );
                }
            }
            out
        }
        FieldKind::Cyclotomic(d) => {
            let n = *d as usize - 1;
            let mut out = vec![];
            let mut pool: Vec<BigRational> = vec![];
            for h in 1..=max_height {
                pool.extend(rational_shell(h));
                let mut sorted = pool.clone();
                sorted.sort();
                let hb = BigInt::from(h);
                let room = cap.saturating_sub(out.len());
                let mut shell_vectors = vec![];
                cartesian_coords(&sorted, n, &mut vec![], &mut |coords| {
                    if shell_vectors.len() >= room {
                        return;
                    }
                    let max_h = coords
                        .iter()
                        .map(rational_height)
                        .max()
                        .expect("n >= 1");
                    if max_h == hb {
                        shell_vectors.push(coords.to_vec());
                    }
                });
                for coords in shell_vectors {
                    if out.len() >= cap {
                        return out;
                    }
                    out.push(
                        FieldElement::cyclotomic_from_coords(field, coords)
                            .expect("coordinate length matches"),
                    );
                }
            }
            out
        }
        FieldKind::FractionField { .. } => {
            panic!("fraction fields are enumerated by the search layer, not here")
        }
    }
}

fn cartesian_coords(
    pool: &[BigRational],
    n: usize,
    prefix: &mut Vec<BigRational>,
    emit: &mut impl FnMut(&[BigRational]),
) {
    if prefix.len() == n {
        emit(prefix);
        return;
    }
    for r in pool {
        prefix.push(r.clone());
        cartesian_coords(pool, n, prefix, emit);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> Arc<FieldDescriptor> {
        FieldDescriptor::prime(p).unwrap()
    }

    fn el(field: &Arc<FieldDescriptor>, s: &str) -> FieldElement {
        FieldElement::parse(field, s).unwrap()
    }

    #[test]
    fn descriptor_grammar_round_trips() {
        for s in ["Fp:7", "Q", "QW:3", "Frac(Q)[x,y,z,t]", "Frac(Fp:7)[e]", "Frac(QW:3)[u,v]"] {
            let f = FieldDescriptor::parse(s).unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert!(FieldDescriptor::parse("Fp:6").is_err());
        assert!(FieldDescriptor::parse("QW:4").is_err());
        assert!(FieldDescriptor::parse("Frac(Frac(Q)[x])[y]").is_err());
        assert!(FieldDescriptor::parse("Frac(Q)[w]").is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = fp(7);
        let three = FieldElement::from_integer(&f, 3);
        let five = FieldElement::from_integer(&f, 5);
        assert_eq!(three.add(&five), FieldElement::from_integer(&f, 1));
        assert_eq!(three.mul(&five), FieldElement::from_integer(&f, 1));
        assert_eq!(three.inverse().unwrap(), five);
        assert_eq!(three.pow(-1).unwrap(), five);
        assert!(FieldElement::zero(&f).inverse().is_err());
        assert_eq!(FieldElement::from_integer(&f, -3).residue(), Some(4));
    }

    #[test]
    fn rational_arithmetic() {
        let q = FieldDescriptor::rationals();
        let a = el(&q, "2/3");
        let b = el(&q, "3/2");
        assert!(a.mul(&b).is_one());
        assert_eq!(a.pow(-2).unwrap(), el(&q, "9/4"));
        assert_eq!(el(&q, "-4/6"), el(&q, "-2/3"));
    }

    #[test]
    fn cyclotomic_relations() {
        let f = FieldDescriptor::cyclotomic(3).unwrap();
        let w = FieldElement::generator(&f).unwrap();
        // w^2 + w + 1 = 0 and w^3 = 1.
        let sum = w.mul(&w).add(&w).add(&FieldElement::one(&f));
        assert!(sum.is_zero());
        assert!(w.pow(3).unwrap().is_one());
        assert_eq!(w.inverse().unwrap(), w.pow(2).unwrap());
        let parsed = el(&f, "-1 - w");
        assert_eq!(parsed, w.mul(&w));
        assert_eq!(parsed.to_string(), "-1 - w");
        // Out-of-basis powers fold: w^2 = -1 - w and w^3 = 1 for d = 3.
        assert_eq!(el(&f, "w^2"), parsed);
        assert!(el(&f, "w^3").is_one());

        let f5 = FieldDescriptor::cyclotomic(5).unwrap();
        let w5 = FieldElement::generator(&f5).unwrap();
        assert!(w5.pow(5).unwrap().is_one());
        let inv = w5.add(&FieldElement::one(&f5)).inverse().unwrap();
        assert!(inv.mul(&w5.add(&FieldElement::one(&f5))).is_one());
    }

    #[test]
    fn fraction_field_canonicalization() {
        let base = FieldDescriptor::rationals();
        let f = FieldDescriptor::fraction_field(&base, &["x", "y"]).unwrap();
        // (x^2 - y^2)/(x - y) reduces to x + y.
        let a = el(&f, "(x^2 - y^2)/(x - y)");
        assert_eq!(a, el(&f, "x + y"));
        assert_eq!(a.to_string(), "x + y");
        // Division by a constant keeps the denominator trivial.
        let b = el(&f, "3*x").div(&el(&f, "3")).unwrap();
        assert_eq!(b, el(&f, "x"));
        // Denominators are normalized monic.
        let c = el(&f, "(y)/(2*x)");
        assert_eq!(c.to_string(), "(1/2*y)/(x)");
        let recip = c.inverse().unwrap();
        assert!(c.mul(&recip).is_one());
    }

    #[test]
    fn display_and_parse_round_trip() {
        let qw = FieldDescriptor::cyclotomic(5).unwrap();
        for s in ["0", "1", "-1", "w", "2*w^3", "1/2 - w + 3*w^2", "-2/7*w"] {
            let e = el(&qw, s);
            assert_eq!(el(&qw, &e.to_string()), e, "round trip through {s:?}");
        }
        let frac = FieldDescriptor::fraction_field(&FieldDescriptor::rationals(), &["x", "t"])
            .unwrap();
        for s in ["0", "t^2", "(x^3 + t)/(t)", "x^3 - 3*x*t + 1/2"] {
            let e = el(&frac, s);
            assert_eq!(el(&frac, &e.to_string()), e, "round trip through {s:?}");
        }
    }

    #[test]
    fn cubes_in_f7() {
        // Cubes mod 7: 1^3 = 2^3 = 4^3 = 1 and 3^3 = 5^3 = 6^3 = 6.
        let f = fp(7);
        let six = FieldElement::from_integer(&f, 6);
        match dth_power_test(&six, 3).unwrap() {
            PowerDecision::Power(root) => assert_eq!(root.residue(), Some(3), "smallest root"),
            other => panic!("6 is a cube mod 7, got {other:?}"),
        }
        let two = FieldElement::from_integer(&f, 2);
        assert_eq!(dth_power_test(&two, 3).unwrap(), PowerDecision::NotAPower);
        assert!(dth_power_test(&FieldElement::zero(&f), 3).is_err());
    }

    #[test]
    fn rational_power_test() {
        let q = FieldDescriptor::rationals();
        match dth_power_test(&el(&q, "8/27"), 3).unwrap() {
            PowerDecision::Power(r) => assert_eq!(r, el(&q, "2/3")),
            other => panic!("8/27 is a cube, got {other:?}"),
        }
        match dth_power_test(&el(&q, "-8"), 3).unwrap() {
            PowerDecision::Power(r) => assert_eq!(r, el(&q, "-2")),
            other => panic!("-8 is a cube, got {other:?}"),
        }
        assert_eq!(dth_power_test(&el(&q, "2"), 3).unwrap(), PowerDecision::NotAPower);
        assert_eq!(dth_power_test(&el(&q, "4"), 3).unwrap(), PowerDecision::NotAPower);
    }

    #[test]
    fn cyclotomic_power_test_is_exact_on_rationals() {
        let f = FieldDescriptor::cyclotomic(3).unwrap();
        // 2 stays a non-cube in Q(w): a cube root would generate a degree-3
        // subfield of a degree-2 field.
        let two = FieldElement::from_integer(&f, 2);
        assert_eq!(dth_power_test(&two, 3).unwrap(), PowerDecision::NotAPower);
        let eight = FieldElement::from_integer(&f, 8);
        match dth_power_test(&eight, 3).unwrap() {
            PowerDecision::Power(r) => assert_eq!(r, FieldElement::from_integer(&f, 2)),
            other => panic!("8 is a cube, got {other:?}"),
        }
        // w is certified not a cube: a cube root of w would be a primitive
        // 9th root of unity, but the torsion of Q(w) is only mu_6.
        let w = FieldElement::generator(&f).unwrap();
        assert_eq!(dth_power_test(&w, 3).unwrap(), PowerDecision::NotAPower);
        // -1 is a torsion cube, with canonical root -1.
        let minus_one = FieldElement::from_integer(&f, -1);
        assert_eq!(
            dth_power_test(&minus_one, 3).unwrap(),
            PowerDecision::Power(minus_one.clone())
        );
        // -8w^2 = 8 + 8w is neither torsion nor norm-obstructed (its norm is
        // 64 = 4^3), and no root exists within the search bound: the test
        // honestly reports Unknown.
        let hard = el(&f, "8 + 8*w");
        assert_eq!(dth_power_test(&hard, 3).unwrap(), PowerDecision::Unknown);
    }

    #[test]
    fn fraction_field_power_test() {
        let f = FieldDescriptor::fraction_field(&FieldDescriptor::rationals(), &["x", "y"])
            .unwrap();
        let cube = el(&f, "x^3 + 3*x^2*y + 3*x*y^2 + y^3");
        match dth_power_test(&cube, 3).unwrap() {
            PowerDecision::Power(r) => assert_eq!(r, el(&f, "x + y")),
            other => panic!("(x+y)^3 is a cube, got {other:?}"),
        }
        assert_eq!(dth_power_test(&el(&f, "x^2*y"), 3).unwrap(), PowerDecision::NotAPower);
        match dth_power_test(&el(&f, "(x^3)/(y^3)"), 3).unwrap() {
            PowerDecision::Power(r) => assert_eq!(r, el(&f, "(x)/(y)")),
            other => panic!("x^3/y^3 is a cube, got {other:?}"),
        }
        // 8*t^3 over F_7 coefficients: 8 = 1, root 2^...: 1*t^3 -> root t.
        let g = FieldDescriptor::fraction_field(&fp(7), &["t"]).unwrap();
        match dth_power_test(&el(&g, "6*t^3"), 3).unwrap() {
            PowerDecision::Power(r) => {
                assert_eq!(r.pow(3).unwrap(), el(&g, "6*t^3"));
                assert_eq!(r, el(&g, "3*t"), "smallest coefficient root");
            }
            other => panic!("6*t^3 is a cube over F_7, got {other:?}"),
        }
    }

    #[test]
    fn power_test_agrees_with_exhaustive_enumeration_small_primes() {
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
            73, 79, 83, 89, 97]
        {
            let f = fp(p);
            for d in [3u64, 5, 9] {
                let mut powers = std::collections::BTreeSet::new();
                for x in 1..p {
                    powers.insert(pow_mod(x, d, p));
                }
                for c in 1..p {
                    let e = FieldElement::from_integer(&f, c as i64);
                    let decision = dth_power_test(&e, d).unwrap();
                    if powers.contains(&c) {
                        let smallest = (1..p).find(|x| pow_mod(*x, d, p) == c).unwrap();
                        assert_eq!(
                            decision,
                            PowerDecision::Power(FieldElement::from_integer(&f, smallest as i64)),
                            "p={p} d={d} c={c}"
                        );
                    } else {
                        assert_eq!(decision, PowerDecision::NotAPower, "p={p} d={d} c={c}");
                    }
                }
            }
        }
    }

    #[test]
    fn primitive_roots() {
        // Order-3 elements of F_7 are 2 and 4; canonical is 2.
        let r = primitive_root_of_unity(&fp(7), 3).unwrap().unwrap();
        assert_eq!(r.residue(), Some(2));
        // 3^5 = 243 = 1 mod 11, and 2^5 = 10 != 1.
        let r = primitive_root_of_unity(&fp(11), 5).unwrap().unwrap();
        assert_eq!(r.residue(), Some(3));
        assert!(primitive_root_of_unity(&fp(7), 5).unwrap().is_none());
        assert!(primitive_root_of_unity(&FieldDescriptor::rationals(), 3).unwrap().is_none());
        let qw = FieldDescriptor::cyclotomic(3).unwrap();
        assert_eq!(
            primitive_root_of_unity(&qw, 3).unwrap().unwrap(),
            FieldElement::generator(&qw).unwrap()
        );
        // Embeds into fraction fields over the base.
        let frac = FieldDescriptor::fraction_field(&fp(7), &["e"]).unwrap();
        let r = primitive_root_of_unity(&frac, 3).unwrap().unwrap();
        assert!(r.pow(3).unwrap().is_one());
        assert!(!r.is_one());
    }

    #[test]
    fn canonical_order_and_enumeration() {
        let f = fp(7);
        let a = FieldElement::from_integer(&f, 3);
        let b = FieldElement::from_integer(&f, 6);
        assert_eq!(a.cmp_canonical(&b), Ordering::Less);
        let listed = enumerate_field(&f, 1, usize::MAX);
        assert_eq!(listed.len(), 7);
        assert!(listed.windows(2).all(|w| w[0].cmp_canonical(&w[1]) == Ordering::Less));

        let q = FieldDescriptor::rationals();
        let listed: Vec<String> =
            enumerate_field(&q, 2, usize::MAX).iter().map(|e| e.to_string()).collect();
        assert_eq!(listed, ["-1", "0", "1", "-2", "-1/2", "1/2", "2"]);
    }

    #[test]
    fn enumeration_of_cyclotomic_coordinates_grows_by_height() {
        let f = FieldDescriptor::cyclotomic(3).unwrap();
        let listed = enumerate_field(&f, 1, usize::MAX);
        // 3 choices per coordinate at height 1: all 9 vectors.
        assert_eq!(listed.len(), 9);
        let more = enumerate_field(&f, 2, usize::MAX);
        assert_eq!(&more[..9], &listed[..], "enumeration is a stable prefix");
        assert_eq!(more.len(), 49);
    }
}
