//! The first Tits construction `J(A, c)` on `V = A + A + A` for a
//! degree-3 cyclic algebra `A`, with its cubic norm `N`, adjoint `#`,
//! bilinear trace `T`, and `U`-operator — and the constructive
//! non-division test: exhibit a nonzero `v` with `N(v) = 0`.
//!
//! The structure maps are
//!
//! ```text
//! N(a1, a2, a3)  = n(a1) + c n(a2) + c^-1 n(a3) - tr(a1 a2 a3)
//! (a1, a2, a3)#  = (a1# - a2 a3,  c^-1 a3# - a1 a2,  c a2# - a3 a1)
//! T(v, w)        = tr(a1 b1) + tr(a2 b3) + tr(a3 b2)
//! U_v w          = T(v, w) v - v# x w
//! ```
//!
//! where `x#` on `A` is the classical adjoint `x^2 - tr(x) x + s(x) 1`
//! read off the reduced characteristic polynomial (so `x x# = n(x) 1`
//! with no division by 2 anywhere), and `v x w` is the linearization
//! `(v + w)# - v# - w#`.  The deciding criterion for each formula is the
//! cubic-norm-structure identity `(v#)# = N(v) v`, which the test suite
//! checks on random inputs; it fails for the plausible sign variants and
//! holds for the ones above.
//!
//! The non-division pipeline searches the four tensor conditions
//! `c n(x) + a n(y) = 1`, `= a^2` and `c n(x) + a^2 n(y) = 1`, `= a`
//! over `(x, y)` in `l^2`.  A hit with `x != 0` converts into `w` in `A`
//! with reduced norm `c`, and `(-w, 1, 0)` is then a nonzero vector of
//! cubic norm `-c + c - 0 = 0`.  A hit with `x = 0` instead exhibits `a`
//! itself as a norm of `l`, so `A` splits (the declared division
//! hypothesis was false) and `(e, 0, 0)` for a nontrivial idempotent `e`
//! of `A` does the job.  Division is never asserted: no hit is reported
//! as exactly that, a miss.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclic::{
    self, AlgebraElement, CertificateDocument, CyclicAlgebra, CyclicError, SplitCertificate,
};
use crate::exactfield::{FieldDescriptor, FieldElement, FieldError};
use crate::forms::{
    tensor_represent_search, FirstSlot, FormsError, SearchBudget, TensorNormForm, TensorOutcome,
};
use crate::kummer::{KummerElement, KummerError};

#[derive(Debug, Error)]
pub enum AlbertError {
    #[error("the first Tits construction here takes a degree-3 algebra; got degree {0}")]
    AlgebraDegree(u64),
    #[error("the scalar of the construction must be invertible")]
    ZeroScalar,
    #[error("component comes from a different algebra")]
    ComponentMismatch,
    #[error("invalid non-division document: {0}")]
    DocumentInvalid(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Kummer(#[from] KummerError),
    #[error(transparent)]
    Cyclic(#[from] CyclicError),
    #[error(transparent)]
    Forms(#[from] FormsError),
}

/// The Jordan algebra `J(A, c)`: a degree-3 cyclic algebra together with
/// an invertible scaling scalar.  (The base field automatically has
/// characteristic different from 3 and contains a primitive cube root of
/// unity — both are forced on `A` at construction.)
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TitsAlgebra {
    algebra: Arc<CyclicAlgebra>,
    scalar: FieldElement,
    scalar_inv: FieldElement,
}

impl TitsAlgebra {
    pub fn new(
        algebra: &Arc<CyclicAlgebra>,
        scalar: FieldElement,
    ) -> Result<Arc<Self>, AlbertError> {
        if algebra.degree() != 3 {
            return Err(AlbertError::AlgebraDegree(algebra.degree()));
        }
        if scalar.is_zero() {
            return Err(AlbertError::ZeroScalar);
        }
        let scalar_inv = scalar.inverse()?;
        Ok(Arc::new(TitsAlgebra {
            algebra: Arc::clone(algebra),
            scalar,
            scalar_inv,
        }))
    }

    #[must_use]
    pub fn algebra(&self) -> &Arc<CyclicAlgebra> {
        &self.algebra
    }

    #[must_use]
    pub fn scalar(&self) -> &FieldElement {
        &self.scalar
    }

    #[must_use]
    pub fn scalar_inverse(&self) -> &FieldElement {
        &self.scalar_inv
    }

    #[must_use]
    pub fn base_field(&self) -> &Arc<FieldDescriptor> {
        self.algebra.base_field()
    }
}

/// The adjoint data of one element of `A`: reduced trace, the second
/// coefficient `s(x)` of the reduced characteristic polynomial, and the
/// adjoint `x# = x^2 - tr(x) x + s(x) 1` satisfying `x x# = n(x) 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraAdjointData {
    pub trace: FieldElement,
    pub second_coefficient: FieldElement,
    pub adjoint: AlgebraElement,
}

/// Reads trace, `s(x)`, and the adjoint off the reduced characteristic
/// polynomial `X^3 - tr(x) X^2 + s(x) X - n(x)`.
#[must_use]
pub fn algebra_adjoint(x: &AlgebraElement) -> AlgebraAdjointData {
    let coeffs = x.reduced_char_poly();
    let trace = coeffs[1].neg();
    let second = coeffs[2].clone();
    let adjoint = x
        .mul(x)
        .sub(&x.mul_scalar(&trace))
        .add(&AlgebraElement::scalar(x.algebra(), second.clone()));
    AlgebraAdjointData {
        trace,
        second_coefficient: second,
        adjoint,
    }
}

fn sharp(x: &AlgebraElement) -> AlgebraElement {
    algebra_adjoint(x).adjoint
}

/// A vector `(a_1, a_2, a_3)` of `V = A + A + A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlbertElement {
    jordan: Arc<TitsAlgebra>,
    components: [AlgebraElement; 3],
}

impl AlbertElement {
    pub fn new(
        jordan: &Arc<TitsAlgebra>,
        components: [AlgebraElement; 3],
    ) -> Result<Self, AlbertError> {
        for c in &components {
            if c.algebra() != jordan.algebra() {
                return Err(AlbertError::ComponentMismatch);
            }
        }
        Ok(AlbertElement {
            jordan: Arc::clone(jordan),
            components,
        })
    }

    #[must_use]
    pub fn zero(jordan: &Arc<TitsAlgebra>) -> Self {
        let z = AlgebraElement::zero(jordan.algebra());
        AlbertElement {
            jordan: Arc::clone(jordan),
            components: [z.clone(), z.clone(), z],
        }
    }

    /// The unit `(1, 0, 0)` of the cubic norm structure.
    #[must_use]
    pub fn one(jordan: &Arc<TitsAlgebra>) -> Self {
        let mut v = AlbertElement::zero(jordan);
        v.components[0] = AlgebraElement::one(jordan.algebra());
        v
    }

    #[must_use]
    pub fn jordan(&self) -> &Arc<TitsAlgebra> {
        &self.jordan
    }

    #[must_use]
    pub fn components(&self) -> &[AlgebraElement; 3] {
        &self.components
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(AlgebraElement::is_zero)
    }

    #[must_use]
    pub fn add(&self, other: &Self) -> Self {
        let components = [
            self.components[0].add(&other.components[0]),
            self.components[1].add(&other.components[1]),
            self.components[2].add(&other.components[2]),
        ];
        AlbertElement {
            jordan: Arc::clone(&self.jordan),
            components,
        }
    }

    #[must_use]
    pub fn neg(&self) -> Self {
        let components = [
            self.components[0].neg(),
            self.components[1].neg(),
            self.components[2].neg(),
        ];
        AlbertElement {
            jordan: Arc::clone(&self.jordan),
            components,
        }
    }

    #[must_use]
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    #[must_use]
    pub fn scale(&self, c: &FieldElement) -> Self {
        let components = [
            self.components[0].mul_scalar(c),
            self.components[1].mul_scalar(c),
            self.components[2].mul_scalar(c),
        ];
        AlbertElement {
            jordan: Arc::clone(&self.jordan),
            components,
        }
    }

    /// `N(v) = n(a1) + c n(a2) + c^-1 n(a3) - tr(a1 a2 a3)`.
    #[must_use]
    pub fn cubic_norm(&self) -> FieldElement {
        let [a1, a2, a3] = &self.components;
        let c = self.jordan.scalar();
        let c_inv = self.jordan.scalar_inverse();
        let product_trace = a1.mul(a2).mul(a3).reduced_trace();
        a1.reduced_norm()
            .add(&c.mul(&a2.reduced_norm()))
            .add(&c_inv.mul(&a3.reduced_norm()))
            .sub(&product_trace)
    }

    /// `v# = (a1# - a2 a3, c^-1 a3# - a1 a2, c a2# - a3 a1)`.
    #[must_use]
    pub fn adjoint(&self) -> Self {
        let [a1, a2, a3] = &self.components;
        let c = self.jordan.scalar();
        let c_inv = self.jordan.scalar_inverse();
        let components = [
            sharp(a1).sub(&a2.mul(a3)),
            sharp(a3).mul_scalar(c_inv).sub(&a1.mul(a2)),
            sharp(a2).mul_scalar(c).sub(&a3.mul(a1)),
        ];
        AlbertElement {
            jordan: Arc::clone(&self.jordan),
            components,
        }
    }

    /// The linearization `v x w = (v + w)# - v# - w#` of the adjoint.
    #[must_use]
    pub fn cross(&self, other: &Self) -> Self {
        self.add(other)
            .adjoint()
            .sub(&self.adjoint())
            .sub(&other.adjoint())
    }

    /// `T(v, w) = tr(a1 b1) + tr(a2 b3) + tr(a3 b2)` — note the (2,3)
    /// swap in the pairing.
    #[must_use]
    pub fn trace_form(&self, other: &Self) -> FieldElement {
        let [a1, a2, a3] = &self.components;
        let [b1, b2, b3] = &other.components;
        a1.mul(b1)
            .reduced_trace()
            .add(&a2.mul(b3).reduced_trace())
            .add(&a3.mul(b2).reduced_trace())
    }

    /// `U_v w = T(v, w) v - v# x w`.
    #[must_use]
    pub fn u_operator(&self, w: &Self) -> Self {
        self.scale(&self.trace_form(w))
            .sub(&self.adjoint().cross(w))
    }
}

impl fmt::Display for AlbertElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            self.components[0], self.components[1], self.components[2]
        )
    }
}

struct Condition {
    index: u8,
    /// Exponent of `a` on the second tensor slot.
    a_power: i64,
    /// Exponent of `a` giving the represented target.
    target_power: i64,
    label: &'static str,
}

const CONDITIONS: [Condition; 4] = [
    Condition { index: 1, a_power: 1, target_power: 0, label: "c*n(x) + a*n(y) = 1" },
    Condition { index: 2, a_power: 1, target_power: 2, label: "c*n(x) + a*n(y) = a^2" },
    Condition { index: 3, a_power: 2, target_power: 0, label: "c*n(x) + a^2*n(y) = 1" },
    Condition { index: 4, a_power: 2, target_power: 1, label: "c*n(x) + a^2*n(y) = a" },
];

/// Outcome of scanning one `x`-slice of one condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum SliceStatus {
    Hit { x: Vec<String>, y: Vec<String> },
    /// The whole slice was scanned; no representation exists in it.
    ExhaustedNo,
    NoHitWithinBudget,
    NotSearched,
}

/// Per-condition record: the `x != 0` slice is searched first for every
/// condition (it yields the direct norm witness in `A`); the `x = 0`
/// slices only afterwards.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub label: String,
    pub nonzero_slice: SliceStatus,
    pub zero_slice: SliceStatus,
}

/// What a successful pipeline run actually found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Finding {
    /// A hit with `x != 0`: `w` in `A` has reduced norm `c`, and
    /// `(-w, 1, 0)` has cubic norm zero.
    ScalarIsReducedNorm {
        condition: u8,
        x: KummerElement,
        y: KummerElement,
        witness: AlgebraElement,
        zero_vector: AlbertElement,
    },
    /// A hit with `x = 0`: `a` itself is a norm of `l`, refuting the
    /// division hypothesis on `A`; the certificate splits `A` and its
    /// idempotent gives the zero vector `(e, 0, 0)`.
    ParameterIsNorm {
        condition: u8,
        y: KummerElement,
        norm_witness: KummerElement,
        certificate: SplitCertificate,
        zero_vector: AlbertElement,
    },
}

/// A complete non-division record: how each condition fared plus the
/// verified finding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotDivisionReport {
    jordan: Arc<TitsAlgebra>,
    conditions: Vec<ConditionReport>,
    finding: Finding,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Theorem2Outcome {
    NotDivision(Box<NotDivisionReport>),
    /// No representation found in any slice of any condition within
    /// budget.  Nothing is claimed about `J(A, c)`.
    Inconclusive { conditions: Vec<ConditionReport> },
}

/// The hypothesis every report carries verbatim: this machinery cannot
/// check that `A` has no zero divisors.
pub const DIVISION_HYPOTHESIS_NOTE: &str = "the caller asserts that the coefficient algebra \
has no zero divisors; this is not verified here, and a hit on the x = 0 slice refutes it";

impl NotDivisionReport {
    #[must_use]
    pub fn jordan(&self) -> &Arc<TitsAlgebra> {
        &self.jordan
    }

    #[must_use]
    pub fn conditions(&self) -> &[ConditionReport] {
        &self.conditions
    }

    #[must_use]
    pub fn finding(&self) -> &Finding {
        &self.finding
    }

    #[must_use]
    pub fn zero_vector(&self) -> &AlbertElement {
        match &self.finding {
            Finding::ScalarIsReducedNorm { zero_vector, .. }
            | Finding::ParameterIsNorm { zero_vector, .. } => zero_vector,
        }
    }

    /// Re-checks every identity the report claims, from the stored data
    /// alone.
    #[must_use]
    pub fn verify(&self) -> bool {
        let zv = self.zero_vector();
        if zv.is_zero() || !zv.cubic_norm().is_zero() {
            return false;
        }
        match &self.finding {
            Finding::ScalarIsReducedNorm { condition, x, y, witness, zero_vector } => {
                if x.is_zero() {
                    return false;
                }
                let Some(cond) = CONDITIONS.iter().find(|c| c.index == *condition) else {
                    return false;
                };
                let ok = (|| -> Result<bool, AlbertError> {
                    let a = self.jordan.algebra().parameter();
                    let c = self.jordan.scalar();
                    let lhs = c
                        .mul(&x.field_norm())
                        .add(&a.pow(cond.a_power)?.mul(&y.field_norm()));
                    if lhs != a.pow(cond.target_power)? {
                        return Ok(false);
                    }
                    let rebuilt = scalar_norm_witness(self.jordan.algebra(), cond, x, y)?;
                    Ok(rebuilt == *witness
                        && witness.reduced_norm() == *c
                        && slice_norm(witness) == *c
                        && *zero_vector
                            == expected_scalar_zero_vector(&self.jordan, witness))
                })();
                ok.unwrap_or(false)
            }
            Finding::ParameterIsNorm { condition, y, norm_witness, certificate, zero_vector } => {
                let Some(cond) = CONDITIONS.iter().find(|c| c.index == *condition) else {
                    return false;
                };
                let ok = (|| -> Result<bool, AlbertError> {
                    let a = self.jordan.algebra().parameter();
                    let c2 = a.pow(cond.a_power)?;
                    if c2.mul(&y.field_norm()) != a.pow(cond.target_power)? {
                        return Ok(false);
                    }
                    let rebuilt = zero_slice_norm_witness(self.jordan.algebra(), cond, y)?;
                    Ok(rebuilt == *norm_witness
                        && norm_witness.field_norm() == *a
                        && certificate.witness() == norm_witness
                        && certificate.verify()
                        && *zero_vector
                            == expected_idempotent_zero_vector(&self.jordan, certificate))
                })();
                ok.unwrap_or(false)
            }
        }
    }

    #[must_use]
    pub fn to_document(&self) -> Theorem2Document {
        let alg = self.jordan.algebra();
        let finding = match &self.finding {
            Finding::ScalarIsReducedNorm { condition, x, y, witness, zero_vector } => {
                FindingDocument::ScalarIsReducedNorm {
                    condition: *condition,
                    condition_label: CONDITIONS[*condition as usize - 1].label.to_string(),
                    x: cyclic::render_l(x),
                    y: cyclic::render_l(y),
                    witness: cyclic::render_a(witness),
                    zero_vector: render_albert(zero_vector),
                    norm_check_determinant: witness.reduced_norm() == *self.jordan.scalar(),
                    norm_check_slice: slice_norm(witness) == *self.jordan.scalar(),
                    zero_vector_norm_is_zero: zero_vector.cubic_norm().is_zero(),
                }
            }
            Finding::ParameterIsNorm { condition, y, norm_witness, certificate, zero_vector } => {
                FindingDocument::ParameterIsNorm {
                    condition: *condition,
                    condition_label: CONDITIONS[*condition as usize - 1].label.to_string(),
                    y: cyclic::render_l(y),
                    norm_witness: cyclic::render_l(norm_witness),
                    certificate: Box::new(certificate.to_document()),
                    zero_vector: render_albert(zero_vector),
                    parameter_norm_check: norm_witness.field_norm() == *alg.parameter(),
                    zero_vector_norm_is_zero: zero_vector.cubic_norm().is_zero(),
                }
            }
        };
        Theorem2Document {
            field: alg.base_field().to_string(),
            degree: alg.degree(),
            radicand: alg.extension().radicand().to_string(),
            parameter: alg.parameter().to_string(),
            scalar: self.jordan.scalar().to_string(),
            division_hypothesis: DIVISION_HYPOTHESIS_NOTE.to_string(),
            conditions: self.conditions.clone(),
            finding,
        }
    }
}

fn render_albert(v: &AlbertElement) -> Vec<Vec<Vec<String>>> {
    v.components().iter().map(cyclic::render_a).collect()
}

fn expected_scalar_zero_vector(
    jordan: &Arc<TitsAlgebra>,
    witness: &AlgebraElement,
) -> AlbertElement {
    let mut zv = AlbertElement::zero(jordan);
    zv.components[0] = witness.neg();
    zv.components[1] = AlgebraElement::one(jordan.algebra());
    zv
}

fn expected_idempotent_zero_vector(
    jordan: &Arc<TitsAlgebra>,
    certificate: &SplitCertificate,
) -> AlbertElement {
    let mut zv = AlbertElement::zero(jordan);
    zv.components[0] = certificate.idempotent().clone();
    zv
}

/// `w` in `A` with one `z`-coordinate slot per condition shape; its
/// reduced norm is `c` by the two-slot norm identity.
fn scalar_norm_witness(
    alg: &Arc<CyclicAlgebra>,
    cond: &Condition,
    x: &KummerElement,
    y: &KummerElement,
) -> Result<AlgebraElement, AlbertError> {
    let x_inv = x.inverse()?;
    let m = y.neg().mul(&x_inv);
    let zero = KummerElement::zero(alg.extension());
    let coords = match cond.index {
        1 => vec![x_inv, m, zero],
        2 => vec![zero, m, x_inv],
        3 => vec![x_inv, zero, m],
        4 => vec![zero, x_inv, m],
        _ => unreachable!("condition indices are 1 through 4"),
    };
    Ok(AlgebraElement::from_coords(alg, coords)?)
}

/// The reduced norm of an element with at least one vanishing
/// `z`-coordinate: the mixed trace term of the full norm vanishes and
/// `n_A = n(x_0) + a n(x_1) + a^2 n(x_2)` on such slices.
fn slice_norm(w: &AlgebraElement) -> FieldElement {
    let coords = w.coords();
    debug_assert!(
        coords.iter().any(KummerElement::is_zero),
        "the slice identity needs a vanishing coordinate"
    );
    let a = w.algebra().parameter();
    let mut total = FieldElement::zero(w.algebra().base_field());
    let mut a_power = FieldElement::one(w.algebra().base_field());
    for c in coords {
        total = total.add(&a_power.mul(&c.field_norm()));
        a_power = a_power.mul(a);
    }
    total
}

/// `u` in `l` with `n(u) = a`, derived from an `x = 0` hit
/// `a^p n(y) = a^t`: inversion, identity, or scaling by `a` (using
/// `n(a) = a^3` for the scalar `a`), per condition.
fn zero_slice_norm_witness(
    alg: &Arc<CyclicAlgebra>,
    cond: &Condition,
    y: &KummerElement,
) -> Result<KummerElement, AlbertError> {
    Ok(match cond.index {
        1 | 4 => y.inverse()?,
        2 => y.clone(),
        3 => y.mul_base(alg.parameter()),
        _ => unreachable!("condition indices are 1 through 4"),
    })
}

/// Searches the four conditions for a representation and converts any
/// hit into a verified nonzero vector of cubic norm zero.
pub fn theorem2_pipeline(
    jordan: &Arc<TitsAlgebra>,
    budget: &SearchBudget,
) -> Result<Theorem2Outcome, AlbertError> {
    let alg = jordan.algebra();
    let ext = alg.extension();
    let a = alg.parameter();
    let c = jordan.scalar();
    let mut reports: Vec<ConditionReport> = CONDITIONS
        .iter()
        .map(|cond| ConditionReport {
            label: cond.label.to_string(),
            nonzero_slice: SliceStatus::NotSearched,
            zero_slice: SliceStatus::NotSearched,
        })
        .collect();

    for (slot, first_slot) in [FirstSlot::NonZero, FirstSlot::Zero].into_iter().enumerate() {
        for (i, cond) in CONDITIONS.iter().enumerate() {
            let form = TensorNormForm::new(ext, c.clone(), a.pow(cond.a_power)?)?;
            let target = a.pow(cond.target_power)?;
            let status = match tensor_represent_search(&form, &target, budget, first_slot)? {
                TensorOutcome::Found { x, y } => {
                    let hit = SliceStatus::Hit {
                        x: cyclic::render_l(&x),
                        y: cyclic::render_l(&y),
                    };
                    if slot == 0 {
                        reports[i].nonzero_slice = hit;
                    } else {
                        reports[i].zero_slice = hit;
                    }
                    let finding = if slot == 0 {
                        let witness = scalar_norm_witness(alg, cond, &x, &y)?;
                        assert_eq!(
                            witness.reduced_norm(),
                            *c,
                            "the represented target forces reduced norm c"
                        );
                        assert_eq!(
                            slice_norm(&witness),
                            *c,
                            "determinant and slice-identity norms must agree"
                        );
                        let zero_vector = expected_scalar_zero_vector(jordan, &witness);
                        assert!(zero_vector.cubic_norm().is_zero());
                        Finding::ScalarIsReducedNorm {
                            condition: cond.index,
                            x,
                            y,
                            witness,
                            zero_vector,
                        }
                    } else {
                        let norm_witness = zero_slice_norm_witness(alg, cond, &y)?;
                        let certificate =
                            SplitCertificate::from_norm_witness(alg, norm_witness.clone())?;
                        let zero_vector = expected_idempotent_zero_vector(jordan, &certificate);
                        assert!(zero_vector.cubic_norm().is_zero());
                        Finding::ParameterIsNorm {
                            condition: cond.index,
                            y,
                            norm_witness,
                            certificate,
                            zero_vector,
                        }
                    };
                    let report = NotDivisionReport {
                        jordan: Arc::clone(jordan),
                        conditions: reports,
                        finding,
                    };
                    assert!(report.verify(), "a freshly built report must verify");
                    return Ok(Theorem2Outcome::NotDivision(Box::new(report)));
                }
                TensorOutcome::ExhaustedNo { .. } => SliceStatus::ExhaustedNo,
                TensorOutcome::NotFound { .. } => SliceStatus::NoHitWithinBudget,
            };
            if slot == 0 {
                reports[i].nonzero_slice = status;
            } else {
                reports[i].zero_slice = status;
            }
        }
    }
    Ok(Theorem2Outcome::Inconclusive { conditions: reports })
}

/// Serialized non-division report.  Everything needed to re-derive and
/// re-check the claim is embedded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem2Document {
    pub field: String,
    pub degree: u64,
    pub radicand: String,
    pub parameter: String,
    pub scalar: String,
    pub division_hypothesis: String,
    pub conditions: Vec<ConditionReport>,
    pub finding: FindingDocument,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum FindingDocument {
    ScalarIsReducedNorm {
        condition: u8,
        condition_label: String,
        x: Vec<String>,
        y: Vec<String>,
        witness: Vec<Vec<String>>,
        zero_vector: Vec<Vec<Vec<String>>>,
        norm_check_determinant: bool,
        norm_check_slice: bool,
        zero_vector_norm_is_zero: bool,
    },
    ParameterIsNorm {
        condition: u8,
        condition_label: String,
        y: Vec<String>,
        norm_witness: Vec<String>,
        certificate: Box<CertificateDocument>,
        zero_vector: Vec<Vec<Vec<String>>>,
        parameter_norm_check: bool,
        zero_vector_norm_is_zero: bool,
    },
}

impl Theorem2Document {
    /// Parses, rebuilds, and re-verifies the full report; any mismatch
    /// between stored and re-derived data rejects the document.
    pub fn try_into_report(&self) -> Result<NotDivisionReport, AlbertError> {
        let field = FieldDescriptor::parse(&self.field)?;
        let radicand = FieldElement::parse(&field, &self.radicand)?;
        let ext = crate::kummer::KummerExtension::new(&field, self.degree, radicand)?;
        let parameter = FieldElement::parse(&field, &self.parameter)?;
        let alg = CyclicAlgebra::new(&ext, parameter)?;
        let scalar = FieldElement::parse(&field, &self.scalar)?;
        let jordan = TitsAlgebra::new(&alg, scalar)?;
        let invalid = |what: &str| AlbertError::DocumentInvalid(what.to_string());
        let finding = match &self.finding {
            FindingDocument::ScalarIsReducedNorm {
                condition, x, y, witness, zero_vector,
                norm_check_determinant, norm_check_slice, zero_vector_norm_is_zero, ..
            } => {
                if !(*norm_check_determinant && *norm_check_slice && *zero_vector_norm_is_zero) {
                    return Err(invalid("a stored identity check is marked failed"));
                }
                Finding::ScalarIsReducedNorm {
                    condition: *condition,
                    x: cyclic::parse_l(&ext, x)?,
                    y: cyclic::parse_l(&ext, y)?,
                    witness: cyclic::parse_a(&alg, witness)?,
                    zero_vector: parse_albert(&jordan, zero_vector)?,
                }
            }
            FindingDocument::ParameterIsNorm {
                condition, y, norm_witness, certificate, zero_vector,
                parameter_norm_check, zero_vector_norm_is_zero, ..
            } => {
                if !(*parameter_norm_check && *zero_vector_norm_is_zero) {
                    return Err(invalid("a stored identity check is marked failed"));
                }
                if certificate.field != self.field
                    || certificate.radicand != self.radicand
                    || certificate.parameter != self.parameter
                {
                    return Err(invalid("embedded certificate is for a different algebra"));
                }
                Finding::ParameterIsNorm {
                    condition: *condition,
                    y: cyclic::parse_l(&ext, y)?,
                    norm_witness: cyclic::parse_l(&ext, norm_witness)?,
                    certificate: certificate.try_into_certificate()?,
                    zero_vector: parse_albert(&jordan, zero_vector)?,
                }
            }
        };
        let report = NotDivisionReport {
            jordan,
            conditions: self.conditions.clone(),
            finding,
        };
        if !report.verify() {
            return Err(invalid("identities do not hold for the document's data"));
        }
        Ok(report)
    }
}

fn parse_albert(
    jordan: &Arc<TitsAlgebra>,
    components: &[Vec<Vec<String>>],
) -> Result<AlbertElement, AlbertError> {
    if components.len() != 3 {
        return Err(AlbertError::DocumentInvalid(format!(
            "a vector needs 3 components, found {}",
            components.len()
        )));
    }
    let parsed = [
        cyclic::parse_a(jordan.algebra(), &components[0])?,
        cyclic::parse_a(jordan.algebra(), &components[1])?,
        cyclic::parse_a(jordan.algebra(), &components[2])?,
    ];
    AlbertElement::new(jordan, parsed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kummer::KummerExtension;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeMap;

    fn f7_jordan(b: i64, a: i64, c: i64) -> Arc<TitsAlgebra> {
        let k = FieldDescriptor::prime(7).unwrap();
        let ext = KummerExtension::new(&k, 3, FieldElement::from_integer(&k, b)).unwrap();
        let alg = CyclicAlgebra::new(&ext, FieldElement::from_integer(&k, a)).unwrap();
        TitsAlgebra::new(&alg, FieldElement::from_integer(&k, c)).unwrap()
    }

    fn random_element(jordan: &Arc<TitsAlgebra>, rng: &mut ChaCha8Rng) -> AlbertElement {
        let alg = jordan.algebra();
        let k = alg.base_field();
        let p = match k.kind() {
            crate::exactfield::FieldKind::Prime(p) => *p as i64,
            _ => unreachable!("tests draw over prime fields"),
        };
        let mut component = || {
            let coords = (0..3)
                .map(|_| {
                    let c = (0..3)
                        .map(|_| FieldElement::from_integer(k, rng.gen_range(0..p)))
                        .collect();
                    KummerElement::from_coords(alg.extension(), c).unwrap()
                })
                .collect();
            AlgebraElement::from_coords(alg, coords).unwrap()
        };
        AlbertElement::new(jordan, [component(), component(), component()]).unwrap()
    }

    #[test]
    fn construction_validates() {
        let k = FieldDescriptor::prime(7).unwrap();
        let ext = KummerExtension::new(&k, 3, FieldElement::from_integer(&k, 3)).unwrap();
        let alg = CyclicAlgebra::new(&ext, FieldElement::from_integer(&k, 2)).unwrap();
        assert!(matches!(
            TitsAlgebra::new(&alg, FieldElement::zero(&k)),
            Err(AlbertError::ZeroScalar)
        ));

        let k11 = FieldDescriptor::prime(11).unwrap();
        let ext5 = KummerExtension::new(&k11, 5, FieldElement::from_integer(&k11, 2)).unwrap();
        let alg5 = CyclicAlgebra::new(&ext5, FieldElement::from_integer(&k11, 1)).unwrap();
        assert!(matches!(
            TitsAlgebra::new(&alg5, FieldElement::from_integer(&k11, 1)),
            Err(AlbertError::AlgebraDegree(5))
        ));

        // Components from a different algebra are rejected.
        let jordan = f7_jordan(3, 2, 5);
        let other = f7_jordan(3, 4, 5);
        let stray = AlgebraElement::one(other.algebra());
        assert!(matches!(
            AlbertElement::new(
                &jordan,
                [
                    stray,
                    AlgebraElement::zero(jordan.algebra()),
                    AlgebraElement::zero(jordan.algebra())
                ]
            ),
            Err(AlbertError::ComponentMismatch)
        ));
    }

    #[test]
    fn coefficient_adjoint_multiplies_to_the_norm() {
        let jordan = f7_jordan(3, 2, 5);
        let alg = jordan.algebra();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..50 {
            let x = random_element(&jordan, &mut rng).components()[0].clone();
            let data = algebra_adjoint(&x);
            assert_eq!(data.trace, x.reduced_trace());
            let norm_scalar = AlgebraElement::scalar(alg, x.reduced_norm());
            assert_eq!(x.mul(&data.adjoint), norm_scalar);
            assert_eq!(data.adjoint.mul(&x), norm_scalar);
        }
    }

    #[test]
    fn cubic_norm_on_unit_vectors() {
        let jordan = f7_jordan(3, 2, 5);
        let k = jordan.base_field();
        let one = AlbertElement::one(&jordan);
        assert_eq!(one.cubic_norm(), FieldElement::one(k));

        let mut e2 = AlbertElement::zero(&jordan);
        e2.components[1] = AlgebraElement::one(jordan.algebra());
        assert_eq!(e2.cubic_norm(), *jordan.scalar());

        let mut e3 = AlbertElement::zero(&jordan);
        e3.components[2] = AlgebraElement::one(jordan.algebra());
        assert_eq!(e3.cubic_norm(), *jordan.scalar_inverse());
    }

    #[test]
    fn cubic_norm_is_homogeneous_of_degree_three() {
        let jordan = f7_jordan(3, 2, 5);
        let k = jordan.base_field();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..30 {
            let v = random_element(&jordan, &mut rng);
            let lambda = FieldElement::from_integer(k, rng.gen_range(1..7));
            assert_eq!(
                v.scale(&lambda).cubic_norm(),
                lambda.pow(3).unwrap().mul(&v.cubic_norm())
            );
        }
    }

    #[test]
    fn adjoint_on_unit_vectors() {
        let jordan = f7_jordan(3, 2, 5);
        let alg = jordan.algebra();
        let one = AlbertElement::one(&jordan);
        assert_eq!(one.adjoint(), one);

        let mut e2 = AlbertElement::zero(&jordan);
        e2.components[1] = AlgebraElement::one(alg);
        let mut expected = AlbertElement::zero(&jordan);
        expected.components[2] = AlgebraElement::scalar(alg, jordan.scalar().clone());
        assert_eq!(e2.adjoint(), expected);

        let mut e3 = AlbertElement::zero(&jordan);
        e3.components[2] = AlgebraElement::one(alg);
        let mut expected = AlbertElement::zero(&jordan);
        expected.components[1] = AlgebraElement::scalar(alg, jordan.scalar_inverse().clone());
        assert_eq!(e3.adjoint(), expected);
    }

    #[test]
    fn adjoint_identity_on_random_vectors() {
        // (v#)# = N(v) v — the identity that pins down every sign in the
        // component formulas.
        let jordan = f7_jordan(3, 2, 5);
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..60 {
            let v = random_element(&jordan, &mut rng);
            assert_eq!(v.adjoint().adjoint(), v.scale(&v.cubic_norm()));
        }
    }

    #[test]
    fn cross_and_trace_form_behave() {
        let jordan = f7_jordan(3, 2, 5);
        let k = jordan.base_field();
        let alg = jordan.algebra();
        let two = FieldElement::from_integer(k, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        for _ in 0..25 {
            let v = random_element(&jordan, &mut rng);
            let w = random_element(&jordan, &mut rng);
            assert_eq!(v.cross(&v), v.adjoint().scale(&two));
            // Bilinearity of T in each argument.
            let u = random_element(&jordan, &mut rng);
            assert_eq!(
                v.add(&u).trace_form(&w),
                v.trace_form(&w).add(&u.trace_form(&w))
            );
        }

        let one = AlbertElement::one(&jordan);
        assert_eq!(one.trace_form(&one), FieldElement::from_integer(k, 3));

        // The (2,3)-swap pairing: second component meets third.
        let x = AlgebraElement::z(alg);
        let y = AlgebraElement::z(alg).mul(&AlgebraElement::z(alg));
        let mut v = AlbertElement::zero(&jordan);
        v.components[1] = x.clone();
        let mut w = AlbertElement::zero(&jordan);
        w.components[2] = y.clone();
        assert_eq!(v.trace_form(&w), x.mul(&y).reduced_trace());
    }

    #[test]
    fn u_operator_fixes_everything_at_the_unit() {
        let jordan = f7_jordan(3, 2, 5);
        let one = AlbertElement::one(&jordan);
        let mut rng = ChaCha8Rng::seed_from_u64(45);
        for _ in 0..25 {
            let w = random_element(&jordan, &mut rng);
            assert_eq!(one.u_operator(&w), w);
        }
        // U is quadratic in its subscript.
        let k = jordan.base_field();
        for _ in 0..10 {
            let v = random_element(&jordan, &mut rng);
            let w = random_element(&jordan, &mut rng);
            let lambda = FieldElement::from_integer(k, rng.gen_range(1..7));
            assert_eq!(
                v.scale(&lambda).u_operator(&w),
                v.u_operator(&w).scale(&lambda.mul(&lambda))
            );
        }
    }

    #[test]
    fn norm_of_two_slot_elements_matches_slice_identity() {
        let jordan = f7_jordan(3, 2, 5);
        let alg = jordan.algebra();
        let mut rng = ChaCha8Rng::seed_from_u64(46);
        for _ in 0..40 {
            let sample = random_element(&jordan, &mut rng).components()[0].clone();
            let mut coords = sample.coords().to_vec();
            coords[rng.gen_range(0..3)] = KummerElement::zero(alg.extension());
            let w = AlgebraElement::from_coords(alg, coords).unwrap();
            assert_eq!(w.reduced_norm(), slice_norm(&w));
        }
    }

    #[test]
    fn directional_derivative_of_the_norm_is_the_trace_form() {
        // N(v + e w) over the rational function field in e: the
        // coefficient of e^1 must be T(v#, w).  (A dual-number check —
        // degrees >= 2 in e are simply discarded by the extraction.)
        let jordan = f7_jordan(3, 2, 5);
        let f7 = FieldDescriptor::prime(7).unwrap();
        let kf = FieldDescriptor::fraction_field(&f7, &["e".to_string()]).unwrap();
        let ext_f = KummerExtension::new(&kf, 3, FieldElement::from_integer(&kf, 3)).unwrap();
        let alg_f = CyclicAlgebra::new(&ext_f, FieldElement::from_integer(&kf, 2)).unwrap();
        let jordan_f = TitsAlgebra::new(&alg_f, FieldElement::from_integer(&kf, 5)).unwrap();
        let eps = FieldElement::parse(&kf, "e").unwrap();

        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..5 {
            // 27 integer draws for v and 27 for w, shared between the
            // F_7 evaluation and the lifted one.
            let draws: Vec<i64> = (0..54).map(|_| rng.gen_range(0..7)).collect();
            let build = |jordan: &Arc<TitsAlgebra>, f: &dyn Fn(i64, i64) -> FieldElement| {
                let alg = jordan.algebra();
                let mut components = Vec::with_capacity(3);
                for i in 0..3 {
                    let coords = (0..3)
                        .map(|j| {
                            let entries = (0..3)
                                .map(|m| {
                                    let idx = 9 * i + 3 * j + m;
                                    f(draws[idx], draws[27 + idx])
                                })
                                .collect();
                            KummerElement::from_coords(alg.extension(), entries).unwrap()
                        })
                        .collect();
                    components.push(AlgebraElement::from_coords(alg, coords).unwrap());
                }
                AlbertElement::new(
                    jordan,
                    [components[0].clone(), components[1].clone(), components[2].clone()],
                )
                .unwrap()
            };

            // Base-field copies of v and w from the same integer draws.
            let k7 = jordan.base_field().clone();
            let v = build(&jordan, &|vi, _| FieldElement::from_integer(&k7, vi));
            let w = build(&jordan, &|_, wi| FieldElement::from_integer(&k7, wi));
            let expected = v.adjoint().trace_form(&w);

            // The perturbed vector v + e w over Frac(F_7)[e].
            let perturbed = build(&jordan_f, &|vi, wi| {
                FieldElement::from_integer(&kf, vi)
                    .add(&eps.mul(&FieldElement::from_integer(&kf, wi)))
            });
            let norm = perturbed.cubic_norm();
            let (num, den) = norm.as_quotient().expect("fraction-field element");

            let mut at_zero = BTreeMap::new();
            at_zero.insert(
                "e".to_string(),
                crate::polyring::Assignment::Element(FieldElement::zero(&f7)),
            );
            let mut eval_zero = BTreeMap::new();
            eval_zero.insert("e".to_string(), FieldElement::zero(&f7));

            let den_value = den.evaluate(&eval_zero).unwrap();
            assert!(!den_value.is_zero(), "denominator must be a unit constant");
            let diff = num.sub(&num.specialize(&at_zero).unwrap());
            let linear = if diff.is_zero() {
                FieldElement::zero(&f7)
            } else {
                let (power, quotient) = diff.divide_out_variable("e").unwrap();
                if power > 1 {
                    FieldElement::zero(&f7)
                } else {
                    quotient.evaluate(&eval_zero).unwrap()
                }
            };
            assert_eq!(linear.div(&den_value).unwrap(), expected);
        }
    }

    #[test]
    fn pipeline_with_scalar_one_finds_the_first_nonzero_slice_hit() {
        // c = 1, a = 2, b = 3 over F_7: the first x != 0 candidate is
        // x = alpha^2 (n = 2), and y = alpha (n = 3) closes
        // 1*2 + 2*3 = 1; so w = 5 alpha + 2 alpha^2 z.
        let jordan = f7_jordan(3, 2, 1);
        let ext = jordan.algebra().extension();
        let outcome = theorem2_pipeline(&jordan, &SearchBudget::default()).unwrap();
        let report = match outcome {
            Theorem2Outcome::NotDivision(r) => r,
            Theorem2Outcome::Inconclusive { .. } => panic!("must find a hit over F_7"),
        };
        match report.finding() {
            Finding::ScalarIsReducedNorm { condition, x, y, witness, zero_vector } => {
                assert_eq!(*condition, 1);
                assert_eq!(*x, KummerElement::alpha(ext).mul(&KummerElement::alpha(ext)));
                assert_eq!(*y, KummerElement::alpha(ext));
                assert_eq!(witness.reduced_norm(), *jordan.scalar());
                assert_eq!(zero_vector.components()[1], AlgebraElement::one(jordan.algebra()));
                assert!(zero_vector.cubic_norm().is_zero());
            }
            Finding::ParameterIsNorm { .. } => panic!("expected the x != 0 route"),
        }
        assert_eq!(
            report.conditions()[1].nonzero_slice,
            SliceStatus::NotSearched
        );
        assert!(report.verify());
    }

    #[test]
    fn pipeline_over_f7_produces_a_verified_zero_vector() {
        let jordan = f7_jordan(3, 2, 5);
        let outcome = theorem2_pipeline(&jordan, &SearchBudget::default()).unwrap();
        let report = match outcome {
            Theorem2Outcome::NotDivision(r) => r,
            Theorem2Outcome::Inconclusive { .. } => panic!("must find a hit over F_7"),
        };
        assert!(report.verify());
        let zv = report.zero_vector();
        assert!(!zv.is_zero());
        assert!(zv.cubic_norm().is_zero());
    }

    #[test]
    fn pipeline_reports_honest_inconclusive_on_tiny_budget() {
        // a = 7 keeps every condition out of reach of the first 50
        // height-1 candidates: the x = 0 slices need n(y) = 7 (or the
        // non-integral 1/7, 1/49), and the integer norms reachable there
        // are 1 + 2u + 4v - 6 w^2 c1 c2 with cube units u, v — never 7.
        let qw = FieldDescriptor::cyclotomic(3).unwrap();
        let ext = KummerExtension::new(&qw, 3, FieldElement::from_integer(&qw, 2)).unwrap();
        let alg = CyclicAlgebra::new(&ext, FieldElement::from_integer(&qw, 7)).unwrap();
        let jordan = TitsAlgebra::new(&alg, FieldElement::from_integer(&qw, 5)).unwrap();
        let tiny = SearchBudget { height: 1, max_candidates: 50, threads: 1 };
        match theorem2_pipeline(&jordan, &tiny).unwrap() {
            Theorem2Outcome::Inconclusive { conditions } => {
                assert_eq!(conditions.len(), 4);
                for cond in &conditions {
                    assert_eq!(cond.nonzero_slice, SliceStatus::NoHitWithinBudget);
                    assert_eq!(cond.zero_slice, SliceStatus::NoHitWithinBudget);
                }
            }
            Theorem2Outcome::NotDivision(_) => panic!("50 candidates cannot reach a hit here"),
        }
    }

    #[test]
    fn zero_slice_witnesses_have_norm_a() {
        // For each condition, pick y on the x = 0 slice satisfying it and
        // check the derived u has n(u) = a.
        let jordan = f7_jordan(3, 2, 5);
        let alg = jordan.algebra();
        let ext = alg.extension();
        let a = alg.parameter();
        let mut found = 0;
        for cond in &CONDITIONS {
            let c2 = a.pow(cond.a_power).unwrap();
            let target = a.pow(cond.target_power).unwrap();
            // Scan l for a y with c2 * n(y) = target.
            'scan: for c0 in 0..7 {
                for c1 in 0..7 {
                    for c2_coord in 0..7 {
                        let k = alg.base_field();
                        let y = KummerElement::from_coords(
                            ext,
                            vec![
                                FieldElement::from_integer(k, c0),
                                FieldElement::from_integer(k, c1),
                                FieldElement::from_integer(k, c2_coord),
                            ],
                        )
                        .unwrap();
                        if c2.mul(&y.field_norm()) == target {
                            let u = zero_slice_norm_witness(alg, cond, &y).unwrap();
                            assert_eq!(u.field_norm(), *a, "condition {}", cond.index);
                            let cert = SplitCertificate::from_norm_witness(alg, u).unwrap();
                            let zv = expected_idempotent_zero_vector(&jordan, &cert);
                            assert!(!zv.is_zero());
                            assert!(zv.cubic_norm().is_zero());
                            found += 1;
                            break 'scan;
                        }
                    }
                }
            }
        }
        assert_eq!(found, 4, "every condition has an x = 0 solution over F_7");
    }

    #[test]
    fn document_round_trip_and_tamper_rejection() {
        let jordan = f7_jordan(3, 2, 5);
        let outcome = theorem2_pipeline(&jordan, &SearchBudget::default()).unwrap();
        let report = match outcome {
            Theorem2Outcome::NotDivision(r) => r,
            Theorem2Outcome::Inconclusive { .. } => panic!("must find a hit over F_7"),
        };
        let doc = report.to_document();
        assert_eq!(doc.division_hypothesis, DIVISION_HYPOTHESIS_NOTE);
        let json = serde_json::to_string_pretty(&doc).unwrap();
        let parsed: Theorem2Document = serde_json::from_str(&json).unwrap();
        let rebuilt = parsed.try_into_report().unwrap();
        assert_eq!(rebuilt, *report);

        let mut tampered = doc.clone();
        if let FindingDocument::ScalarIsReducedNorm { witness, .. } = &mut tampered.finding {
            witness[0][0] = "3".to_string();
        }
        assert!(tampered.try_into_report().is_err());

        let mut wrong_scalar = doc;
        wrong_scalar.scalar = "6".to_string();
        assert!(wrong_scalar.try_into_report().is_err());
    }
}
