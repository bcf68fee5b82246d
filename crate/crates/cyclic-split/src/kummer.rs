//! The Kummer extension `l = k[alpha]/(alpha^d - b)` of odd degree `d`.
//!
//! When `b` is not a `d`-th power (more precisely, not a `q`-th power for
//! any prime `q` dividing `d`), `l` is a field; otherwise it is an étale
//! algebra with zero divisors, which the construction deliberately allows —
//! a degenerate radicand makes every algebra built on `l` split outright,
//! a case the pipeline wants to exhibit, and norms behave the same either
//! way.
//!
//! When the base field contains a primitive `d`-th root of unity `w`, the
//! Galois action `sigma(alpha) = w*alpha` is available and the field norm is
//! computed as the product of conjugates.  Without `w` (the rationals, or a
//! rational function field over them) the norm falls back to the determinant
//! of the multiplication matrix — the two agree where both are defined, and
//! the fallback is what lets the rational-function-field norm identity be
//! checked exactly.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::exactfield::{
    dth_power_test, primitive_root_of_unity, FieldDescriptor, FieldElement, FieldError,
    PowerDecision,
};
use crate::matrix::{self, CommutativeRing};

#[derive(Debug, Error)]
pub enum KummerError {
    #[error("degree {0} must be odd and at least 3")]
    InvalidDegree(u64),
    #[error("characteristic {p} divides the degree {d}")]
    CharacteristicDividesDegree { p: u64, d: u64 },
    #[error("the radicand must be nonzero")]
    ZeroRadicand,
    #[error("whether x^{d} - b is irreducible could not be decided (power test inconclusive)")]
    IrreducibilityUndecided { d: u64 },
    #[error("the base field has no primitive {d}-th root of unity, so there is no Galois action")]
    NoGaloisAction { d: u64 },
    #[error("element is not invertible")]
    NotInvertible,
    #[error("expected {expected} coordinates, found {found}")]
    CoordinateLength { expected: usize, found: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// `k[alpha]/(alpha^d - b)` together with its (optional) Galois action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KummerExtension {
    field: Arc<FieldDescriptor>,
    degree: u64,
    radicand: FieldElement,
    omega: Option<FieldElement>,
    is_field: bool,
}

impl KummerExtension {
    /// Builds the extension, deciding irreducibility of `x^d - b` on the
    /// way: for odd `d` the binomial is irreducible iff `b` is not a `q`-th
    /// power for any prime `q | d`.  Construction fails if that question is
    /// undecidable for the coefficient field (cyclotomic radicands beyond
    /// the power-test search bound).
    pub fn new(
        field: &Arc<FieldDescriptor>,
        degree: u64,
        radicand: FieldElement,
    ) -> Result<Arc<Self>, KummerError> {
        if degree < 3 || degree.is_multiple_of(2) {
            return Err(KummerError::InvalidDegree(degree));
        }
        let p = field.characteristic();
        if p != 0 && degree.is_multiple_of(p) {
            return Err(KummerError::CharacteristicDividesDegree { p, d: degree });
        }
        assert!(radicand.field() == field, "radicand comes from the base field");
        if radicand.is_zero() {
            return Err(KummerError::ZeroRadicand);
        }
        let omega = primitive_root_of_unity(field, degree)?;
        let mut is_field = true;
        for q in distinct_prime_divisors(degree) {
            match dth_power_test(&radicand, q)? {
                PowerDecision::NotAPower => {}
                PowerDecision::Power(_) => {
                    is_field = false;
                    break;
                }
                PowerDecision::Unknown => {
                    return Err(KummerError::IrreducibilityUndecided { d: degree });
                }
            }
        }
        Ok(Arc::new(KummerExtension {
            field: Arc::clone(field),
            degree,
            radicand,
            omega,
            is_field,
        }))
    }

    #[must_use]
    pub fn base_field(&self) -> &Arc<FieldDescriptor> {
        &self.field
    }

    #[must_use]
    pub fn degree(&self) -> u64 {
        self.degree
    }

    #[must_use]
    pub fn radicand(&self) -> &FieldElement {
        &self.radicand
    }

    /// The primitive `d`-th root of unity acting on the extension, when the
    /// base field has one.
    #[must_use]
    pub fn omega(&self) -> Option<&FieldElement> {
        self.omega.as_ref()
    }

    /// Whether `x^d - b` is irreducible, i.e. whether `l` is a field rather
    /// than a split étale algebra.
    #[must_use]
    pub fn is_field(&self) -> bool {
        self.is_field
    }
}

fn distinct_prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut q = 3;
    // n is odd here.
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 2;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// An element `u_1 + u_2 alpha + ... + u_d alpha^{d-1}` of the extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KummerElement {
    ext: Arc<KummerExtension>,
    coords: Vec<FieldElement>,
}

impl KummerElement {
    #[must_use]
    pub fn zero(ext: &Arc<KummerExtension>) -> Self {
        let coords = vec![FieldElement::zero(&ext.field); ext.degree as usize];
        KummerElement { ext: Arc::clone(ext), coords }
    }

    #[must_use]
    pub fn one(ext: &Arc<KummerExtension>) -> Self {
        Self::from_base(ext, FieldElement::one(&ext.field))
    }

    /// The generator `alpha`.
    #[must_use]
    pub fn alpha(ext: &Arc<KummerExtension>) -> Self {
        let mut e = Self::zero(ext);
        e.coords[1] = FieldElement::one(&ext.field);
        e
    }

    /// The base field embedded along constants.
    #[must_use]
    pub fn from_base(ext: &Arc<KummerExtension>, c: FieldElement) -> Self {
        assert!(c.field() == &ext.field, "coefficient from the base field");
        let mut e = Self::zero(ext);
        e.coords[0] = c;
        e
    }

    pub fn from_coords(
        ext: &Arc<KummerExtension>,
        coords: Vec<FieldElement>,
    ) -> Result<Self, KummerError> {
        if coords.len() != ext.degree as usize {
            return Err(KummerError::CoordinateLength {
                expected: ext.degree as usize,
                found: coords.len(),
            });
        }
        for c in &coords {
            assert!(c.field() == &ext.field, "coordinates from the base field");
        }
        Ok(KummerElement { ext: Arc::clone(ext), coords })
    }

    #[must_use]
    pub fn extension(&self) -> &Arc<KummerExtension> {
        &self.ext
    }

    #[must_use]
    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(FieldElement::is_zero)
    }

    /// `Some(c)` when the element is the embedded base field element `c`.
    #[must_use]
    pub fn as_base(&self) -> Option<&FieldElement> {
        self.coords[1..]
            .iter()
            .all(FieldElement::is_zero)
            .then(|| &self.coords[0])
    }

    fn assert_same_extension(&self, other: &Self) {
        assert!(
            self.ext == other.ext,
            "elements of different Kummer extensions"
        );
    }

    #[must_use]
    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_extension(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.add(b))
            .collect();
        KummerElement { ext: Arc::clone(&self.ext), coords }
    }

    #[must_use]
    pub fn neg(&self) -> Self {
        let coords = self.coords.iter().map(FieldElement::neg).collect();
        KummerElement { ext: Arc::clone(&self.ext), coords }
    }

    #[must_use]
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Multiplication with the wrap rule `alpha^d = b`.
    #[must_use]
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_extension(other);
        let d = self.ext.degree as usize;
        let b = &self.ext.radicand;
        let mut coords = vec![FieldElement::zero(&self.ext.field); d];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, c) in other.coords.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let prod = a.mul(c);
                if i + j < d {
                    coords[i + j] = coords[i + j].add(&prod);
                } else {
                    coords[i + j - d] = coords[i + j - d].add(&prod.mul(b));
                }
            }
        }
        KummerElement { ext: Arc::clone(&self.ext), coords }
    }

    #[must_use]
    pub fn mul_base(&self, c: &FieldElement) -> Self {
        assert!(c.field() == &self.ext.field, "scalar from the base field");
        let coords = self.coords.iter().map(|x| x.mul(c)).collect();
        KummerElement { ext: Arc::clone(&self.ext), coords }
    }

    #[must_use]
    pub fn pow(&self, exp: u64) -> Self {
        let mut acc = Self::one(&self.ext);
        let mut sq = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    /// The Galois action `sigma^power`, where `sigma(alpha) = w*alpha`:
    /// on coordinates, `u_j |-> w^{j*power} u_j`.  Requires the base field
    /// to contain `w`.
    pub fn galois_sigma(&self, power: i64) -> Result<Self, KummerError> {
        let d = self.ext.degree;
        let omega = self
            .ext
            .omega
            .as_ref()
            .ok_or(KummerError::NoGaloisAction { d })?;
        let power = power.rem_euclid(d as i64);
        let mut coords = Vec::with_capacity(d as usize);
        for (j, u) in self.coords.iter().enumerate() {
            let twist = omega.pow((j as i64 * power) % d as i64)?;
            coords.push(u.mul(&twist));
        }
        Ok(KummerElement { ext: Arc::clone(&self.ext), coords })
    }

    /// Multiplication matrix over the base field: column `j` holds the
    /// coordinates of `x * alpha^j`.
    #[must_use]
    pub fn multiplication_matrix(&self) -> Vec<Vec<FieldElement>> {
        let d = self.ext.degree as usize;
        let mut cols = Vec::with_capacity(d);
        let mut current = self.clone();
        for _ in 0..d {
            cols.push(current.coords.clone());
            current = current.mul(&Self::alpha(&self.ext));
        }
        (0..d)
            .map(|i| (0..d).map(|j| cols[j][i].clone()).collect())
            .collect()
    }

    /// The field norm `n_{l/k}`.  With a Galois action it is the product of
    /// the conjugates `sigma^i(x)`; without one it is the determinant of the
    /// multiplication matrix.  Both land in the base field.
    #[must_use]
    pub fn field_norm(&self) -> FieldElement {
        match &self.ext.omega {
            Some(_) => {
                let mut acc = self.clone();
                for i in 1..self.ext.degree {
                    acc = acc.mul(
                        &self
                            .galois_sigma(i as i64)
                            .expect("omega is present"),
                    );
                }
                let norm = acc
                    .as_base()
                    .expect("a product of all conjugates is Galois-invariant")
                    .clone();
                norm
            }
            None => matrix::determinant(&self.multiplication_matrix()),
        }
    }

    /// The field trace; on coordinates this is `d * u_1` (each diagonal
    /// entry of the multiplication matrix is `u_1`).
    #[must_use]
    pub fn field_trace(&self) -> FieldElement {
        let d = FieldElement::from_integer(&self.ext.field, self.ext.degree as i64);
        self.coords[0].mul(&d)
    }

    /// Inverse by solving the linear system `x * y = 1` over the base
    /// field.  Fails on zero and on the zero divisors of an étale algebra.
    pub fn inverse(&self) -> Result<Self, KummerError> {
        let d = self.ext.degree as usize;
        let m = self.multiplication_matrix();
        let mut rhs = vec![FieldElement::zero(&self.ext.field); d];
        rhs[0] = FieldElement::one(&self.ext.field);
        let sol = solve_linear(m, rhs).ok_or(KummerError::NotInvertible)?;
        Self::from_coords(&self.ext, sol).map_err(|_| KummerError::NotInvertible)
    }
}

/// Gaussian elimination with exact arithmetic; `None` when singular.
fn solve_linear(
    mut m: Vec<Vec<FieldElement>>,
    mut rhs: Vec<FieldElement>,
) -> Option<Vec<FieldElement>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = m[col][col].inverse().expect("pivot is nonzero");
        for entry in m[col][col..].iter_mut() {
            *entry = entry.mul(&inv);
        }
        rhs[col] = rhs[col].mul(&inv);
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            let scaled: Vec<FieldElement> =
                m[col][col..].iter().map(|v| v.mul(&factor)).collect();
            for (entry, t) in m[r][col..].iter_mut().zip(scaled.iter()) {
                *entry = entry.sub(t);
            }
            let t = rhs[col].mul(&factor);
            rhs[r] = rhs[r].sub(&t);
        }
    }
    Some(rhs)
}

impl CommutativeRing for KummerElement {
    fn ring_one(&self) -> Self {
        KummerElement::one(&self.ext)
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

impl fmt::Display for KummerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec![];
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let coeff = if cs.contains([' ', '/', '+']) && !(i == 0) {
                format!("({cs})")
            } else {
                cs
            };
            let part = match i {
                0 => coeff,
                1 => {
                    if c.is_one() {
                        "alpha".to_string()
                    } else {
                        format!("{coeff}*alpha")
                    }
                }
                _ => {
                    if c.is_one() {
                        format!("alpha^{i}")
                    } else {
                        format!("{coeff}*alpha^{i}")
                    }
                }
            };
            parts.push(part);
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}
