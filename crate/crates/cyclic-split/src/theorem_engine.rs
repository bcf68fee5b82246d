//! The splitting pipelines.
//!
//! The central sufficient condition: for `l = k(alpha)`, `alpha^d = b`, if
//! the binary form `<a, b^r>` of degree `d` represents `b^s` (with
//! `1 <= r <= d-1`, `0 <= s <= d-1`, `r != s`), then `(l, a)` is split,
//! with the explicit norm witness `u = (1/x) alpha^s + (-y/x) alpha^r`.
//! The two-coordinate norm identity behind the witness,
//! `n(c_1 alpha^s + c_2 alpha^r) = b^s c_1^d + b^r c_2^d`, holds exactly
//! when `gcd(s - r, d) = 1` — automatic for prime `d`, and enforced at
//! instance construction for composite `d` (for, say, `d = 9` and
//! `s - r = 3` the cross terms of the norm expansion survive and the
//! witness construction is simply wrong).
//!
//! The pipelines only ever *prove* splitting.  A search that comes back
//! empty — even a provably exhaustive one over a finite field — leaves
//! splitting undecided, because the condition is sufficient, not
//! necessary; the four-variable norm identity checked by
//! [`example1_verify`] exhibits a split algebra for which every one of
//! these conditions provably fails.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclic::{
    CertificateDocument, CyclicAlgebra, CyclicError, Provenance, SplitCertificate,
};
use crate::exactfield::{
    dth_power_test, FieldDescriptor, FieldElement, FieldError, PowerDecision,
};
use crate::forms::{
    self, valuation_obstruction, DiagonalForm, FormsError, ObstructionOutcome, RefutationReport,
    SearchBudget, SearchOutcome, TermValuation, ValuationProfile,
};
use crate::kummer::{KummerElement, KummerError, KummerExtension};
use crate::polyring::{MultiPoly, PolyError};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("exponents must satisfy 1 <= r <= d-1, 0 <= s <= d-1, r != s; got r = {r}, s = {s} for degree {degree}")]
    InvalidExponents { r: u64, s: u64, degree: u64 },
    #[error("s - r = {shift} mod {degree} shares a factor with the degree; the witness construction needs gcd(s - r, d) = 1")]
    NonCoprimeShift { shift: u64, degree: u64 },
    #[error("{field} contains no primitive root of unity of order {degree}")]
    NoRootOfUnity { field: String, degree: u64 },
    #[error("x^{degree} - b is reducible although b is not a {degree}-th power; only field extensions and the fully split case are supported")]
    ReducibleComposite { degree: u64 },
    #[error("could not decide whether the radicand is a {degree}-th power")]
    PowerUndecided { degree: u64 },
    #[error("invalid outcome document: {0}")]
    DocumentInvalid(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Kummer(#[from] KummerError),
    #[error(transparent)]
    Cyclic(#[from] CyclicError),
    #[error(transparent)]
    Forms(#[from] FormsError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum RadicandStatus {
    /// `x^d - b` is irreducible; `l` is a field.
    Irreducible,
    /// `b` is the `d`-th power of the stored root; `l` splits completely.
    DthPower(FieldElement),
}

/// One instance of the sufficient condition: the extension data
/// `(k, d, b)`, the algebra parameter `a`, and the exponent pair `(r, s)`.
#[derive(Debug, Clone)]
pub struct Theorem1Instance {
    ext: Arc<KummerExtension>,
    algebra: Arc<CyclicAlgebra>,
    r: u64,
    s: u64,
    radicand_status: RadicandStatus,
}

impl Theorem1Instance {
    pub fn new(
        field: &Arc<FieldDescriptor>,
        degree: u64,
        b: FieldElement,
        a: FieldElement,
        r: u64,
        s: u64,
    ) -> Result<Self, EngineError> {
        if r < 1 || r > degree - 1 || s > degree - 1 || r == s {
            return Err(EngineError::InvalidExponents { r, s, degree });
        }
        let shift = (s + degree - r) % degree;
        if shift.gcd(&degree) != 1 {
            return Err(EngineError::NonCoprimeShift { shift, degree });
        }
        let ext = KummerExtension::new(field, degree, b)?;
        if ext.omega().is_none() {
            return Err(EngineError::NoRootOfUnity {
                field: field.to_string(),
                degree,
            });
        }
        let radicand_status = if ext.is_field() {
            RadicandStatus::Irreducible
        } else {
            match dth_power_test(ext.radicand(), degree)? {
                PowerDecision::Power(root) => RadicandStatus::DthPower(root),
                PowerDecision::NotAPower => {
                    return Err(EngineError::ReducibleComposite { degree })
                }
                PowerDecision::Unknown => return Err(EngineError::PowerUndecided { degree }),
            }
        };
        let algebra = CyclicAlgebra::new(&ext, a)?;
        Ok(Theorem1Instance { ext, algebra, r, s, radicand_status })
    }

    #[must_use]
    pub fn extension(&self) -> &Arc<KummerExtension> {
        &self.ext
    }

    #[must_use]
    pub fn algebra(&self) -> &Arc<CyclicAlgebra> {
        &self.algebra
    }

    #[must_use]
    pub fn degree(&self) -> u64 {
        self.ext.degree()
    }

    #[must_use]
    pub fn exponents(&self) -> (u64, u64) {
        (self.r, self.s)
    }

    /// `(s - r) mod d`, the exponent whose power of `b` the guard tests.
    #[must_use]
    pub fn shift(&self) -> u64 {
        (self.s + self.degree() - self.r) % self.degree()
    }

    /// The proof's nondegeneracy guard: `b^(s-r)` must not be a `d`-th
    /// power, otherwise `<b^r>` alone could represent `b^s` and the found
    /// arguments could have `x = 0`, where no witness can be built.
    ///
    /// When `l` is a field the guard always passes: `gcd(s - r, d) = 1`,
    /// so `b^(s-r)` being a `d`-th power would force `b` itself to be one.
    /// That implication also soundly covers the one case where the
    /// bounded cyclotomic power search cannot return a proof either way.
    pub fn guard_power_check(&self) -> Result<GuardOutcome, EngineError> {
        let shift = self.shift();
        match &self.radicand_status {
            RadicandStatus::DthPower(root) => {
                Ok(GuardOutcome::DegeneratePower(root.pow(shift as i64)?))
            }
            RadicandStatus::Irreducible => {
                let b_shift = self.ext.radicand().pow(shift as i64)?;
                match dth_power_test(&b_shift, self.degree())? {
                    PowerDecision::NotAPower => Ok(GuardOutcome::Passed),
                    PowerDecision::Power(root) => Ok(GuardOutcome::DegeneratePower(root)),
                    PowerDecision::Unknown => Ok(GuardOutcome::Passed),
                }
            }
        }
    }

    /// Serializes an outcome of this instance with enough context to be
    /// re-verified from the document alone.
    #[must_use]
    pub fn outcome_document(&self, outcome: &PipelineOutcome) -> OutcomeDocument {
        outcome_document_with(
            outcome,
            self.ext.base_field(),
            self.degree(),
            self.ext.radicand(),
        )
    }

    /// Runs the full sufficient-condition pipeline: degenerate radicand
    /// short-circuit, guard, representation search for
    /// `<a, b^r> = b^s`, witness construction, and certificate emission.
    pub fn theorem1_pipeline(
        &self,
        budget: &SearchBudget,
    ) -> Result<PipelineOutcome, EngineError> {
        if let RadicandStatus::DthPower(root) = &self.radicand_status {
            return Ok(PipelineOutcome::DegenerateSplit { root: root.clone() });
        }
        match self.guard_power_check()? {
            GuardOutcome::Passed => {}
            GuardOutcome::DegeneratePower(root) => unreachable!(
                "b^(s-r) = ({root})^d contradicts irreducibility of x^d - b with gcd(s-r, d) = 1"
            ),
        }
        let b = self.ext.radicand();
        let a = self.algebra.parameter();
        let form = DiagonalForm::new(
            self.degree(),
            vec![a.clone(), b.pow(self.r as i64)?],
        )?;
        let target = b.pow(self.s as i64)?;
        match forms::represent_search(&form, &target, budget)? {
            SearchOutcome::Found(rep) => {
                let x = &rep.arguments[0];
                let y = &rep.arguments[1];
                assert!(
                    !x.is_zero(),
                    "the guard rules out representations by <b^r> alone"
                );
                let x_inv = x.inverse()?;
                let d = self.degree() as usize;
                let mut coords = vec![FieldElement::zero(x.field()); d];
                coords[self.s as usize] = x_inv.clone();
                coords[self.r as usize] = y.neg().mul(&x_inv);
                let witness = KummerElement::from_coords(&self.ext, coords)?;
                let cert = SplitCertificate::from_norm_witness_with(
                    &self.algebra,
                    witness,
                    Provenance::BinaryForm {
                        r: self.r,
                        s: self.s,
                        x: x.to_string(),
                        y: y.to_string(),
                    },
                )?;
                Ok(PipelineOutcome::Split(cert))
            }
            SearchOutcome::ExhaustedNo { examined } => Ok(PipelineOutcome::Inconclusive {
                reason: InconclusiveReason::SearchExhausted { examined },
            }),
            SearchOutcome::NotFound { examined } => Ok(PipelineOutcome::Inconclusive {
                reason: InconclusiveReason::BudgetExhausted { examined },
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GuardOutcome {
    Passed,
    /// `b^(s-r)` is the `d`-th power of the carried root; the instance is
    /// degenerate (the fully split case).
    DegeneratePower(FieldElement),
}

/// Why a pipeline run did not produce a certificate.  `SearchExhausted`
/// means the representation condition *provably fails* for this `(r, s)`
/// over the finite field — which still decides nothing about splitting;
/// `BudgetExhausted` means nothing at all is known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InconclusiveReason {
    SearchExhausted { examined: usize },
    BudgetExhausted { examined: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PipelineOutcome {
    Split(SplitCertificate),
    /// `b` is a `d`-th power: the extension splits completely and
    /// `(l, a)` is a matrix algebra for every `a` — no witness needed.
    DegenerateSplit { root: FieldElement },
    Inconclusive { reason: InconclusiveReason },
}

impl PipelineOutcome {
    /// Whether the outcome proves splitting.
    #[must_use]
    pub fn proves_split(&self) -> bool {
        matches!(self, PipelineOutcome::Split(_) | PipelineOutcome::DegenerateSplit { .. })
    }
}

fn outcome_document_with(
    outcome: &PipelineOutcome,
    field: &Arc<FieldDescriptor>,
    degree: u64,
    radicand: &FieldElement,
) -> OutcomeDocument {
    match outcome {
        PipelineOutcome::Split(cert) => OutcomeDocument::Split {
            certificate: cert.to_document(),
        },
        PipelineOutcome::DegenerateSplit { root } => OutcomeDocument::DegenerateSplit {
            field: field.to_string(),
            degree,
            radicand: radicand.to_string(),
            root: root.to_string(),
        },
        PipelineOutcome::Inconclusive { reason } => {
            let (text, examined, ruled_out) = match reason {
                InconclusiveReason::SearchExhausted { examined } => (
                    "the binary form provably does not represent the target; this sufficient condition cannot apply",
                    *examined,
                    true,
                ),
                InconclusiveReason::BudgetExhausted { examined } => {
                    ("search budget exhausted without a hit", *examined, false)
                }
            };
            OutcomeDocument::Inconclusive {
                reason: text.to_string(),
                examined: examined as u64,
                representation_ruled_out: ruled_out,
            }
        }
    }
}

impl fmt::Display for PipelineOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PipelineOutcome::Split(cert) => write!(f, "SPLIT\n{cert}"),
            PipelineOutcome::DegenerateSplit { root } => write!(
                f,
                "SPLIT (degenerate): b = ({root})^d is a d-th power, the extension splits \
                 completely and the algebra is a matrix algebra for every parameter"
            ),
            PipelineOutcome::Inconclusive { reason } => match reason {
                InconclusiveReason::SearchExhausted { examined } => write!(
                    f,
                    "INCONCLUSIVE: exhaustive scan ({examined} candidate pairs) shows the form \
                     does not represent the target, so this condition cannot certify splitting; \
                     splitting itself remains undecided"
                ),
                InconclusiveReason::BudgetExhausted { examined } => write!(
                    f,
                    "INCONCLUSIVE: no representation within budget ({examined} candidate pairs \
                     examined); nothing is claimed"
                ),
            },
        }
    }
}

/// Serialized pipeline outcome; `Split` embeds the full re-verifiable
/// certificate, `DegenerateSplit` its own context so `root^d = b` can be
/// re-checked from the document alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum OutcomeDocument {
    Split {
        certificate: CertificateDocument,
    },
    DegenerateSplit {
        field: String,
        degree: u64,
        radicand: String,
        root: String,
    },
    Inconclusive {
        reason: String,
        examined: u64,
        representation_ruled_out: bool,
    },
}

/// What re-verifying a document established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DocumentClaim {
    /// The document carries a claim and every identity re-checked.
    Proven,
    /// The document records an inconclusive run; there is nothing to
    /// prove or refute.
    NoClaim,
}

impl OutcomeDocument {
    /// Re-checks the document's claim from its own data; errors on any
    /// mismatch.
    pub fn reverify(&self) -> Result<DocumentClaim, EngineError> {
        match self {
            OutcomeDocument::Split { certificate } => {
                certificate.try_into_certificate()?;
                Ok(DocumentClaim::Proven)
            }
            OutcomeDocument::DegenerateSplit { field, degree, radicand, root } => {
                let k = FieldDescriptor::parse(field)?;
                let b = FieldElement::parse(&k, radicand)?;
                let r = FieldElement::parse(&k, root)?;
                if r.pow(*degree as i64)? != b {
                    return Err(EngineError::DocumentInvalid(
                        "the stated root does not power to the radicand".to_string(),
                    ));
                }
                Ok(DocumentClaim::Proven)
            }
            OutcomeDocument::Inconclusive { .. } => Ok(DocumentClaim::NoClaim),
        }
    }
}

/// The four degree-3 exponent pairs, in the order the report lists them:
/// `<a, b>` representing `1` or `b^2`, then `<a, b^2>` representing `1`
/// or `b`.
pub const COROLLARY1_ROWS: [(u64, u64); 4] = [(1, 0), (1, 2), (2, 0), (2, 1)];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorollaryRow {
    pub r: u64,
    pub s: u64,
    pub outcome: PipelineOutcome,
}

/// Per-row outcomes for the four degree-3 conditions plus the overall
/// disjunction.  The rows genuinely differ in general — one condition can
/// fire while another provably fails — and the report keeps them apart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corollary1Report {
    field: Arc<FieldDescriptor>,
    radicand: FieldElement,
    parameter: FieldElement,
    rows: Vec<CorollaryRow>,
    overall: PipelineOutcome,
}

impl Corollary1Report {
    #[must_use]
    pub fn rows(&self) -> &[CorollaryRow] {
        &self.rows
    }

    #[must_use]
    pub fn overall(&self) -> &PipelineOutcome {
        &self.overall
    }

    /// The first row whose condition fired, if any.
    #[must_use]
    pub fn winning_row(&self) -> Option<&CorollaryRow> {
        self.rows
            .iter()
            .find(|row| matches!(row.outcome, PipelineOutcome::Split(_)))
    }

    #[must_use]
    pub fn to_document(&self) -> Corollary1Document {
        let doc_of = |o: &PipelineOutcome| {
            outcome_document_with(o, &self.field, 3, &self.radicand)
        };
        Corollary1Document {
            field: self.field.to_string(),
            degree: 3,
            radicand: self.radicand.to_string(),
            parameter: self.parameter.to_string(),
            rows: self
                .rows
                .iter()
                .map(|row| CorollaryRowDocument {
                    r: row.r,
                    s: row.s,
                    outcome: doc_of(&row.outcome),
                })
                .collect(),
            overall: doc_of(&self.overall),
        }
    }
}

/// Serialized four-row report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corollary1Document {
    pub field: String,
    pub degree: u64,
    pub radicand: String,
    pub parameter: String,
    pub rows: Vec<CorollaryRowDocument>,
    pub overall: OutcomeDocument,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryRowDocument {
    pub r: u64,
    pub s: u64,
    pub outcome: OutcomeDocument,
}

impl Corollary1Document {
    /// Re-checks every row's claim, each row's consistency with the
    /// header context and its declared exponents, and the overall
    /// verdict's consistency with the rows.
    pub fn reverify(&self) -> Result<DocumentClaim, EngineError> {
        let invalid = |msg: &str| EngineError::DocumentInvalid(msg.to_string());
        if self.degree != 3 {
            return Err(invalid("the four-condition report is degree-3 only"));
        }
        let listed: Vec<(u64, u64)> = self.rows.iter().map(|row| (row.r, row.s)).collect();
        if listed != COROLLARY1_ROWS {
            return Err(invalid("rows do not cover the four conditions"));
        }
        let mut any_proven = false;
        for row in &self.rows {
            if row.outcome.reverify()? == DocumentClaim::Proven {
                any_proven = true;
            }
            self.check_context(&row.outcome)?;
            if let OutcomeDocument::Split { certificate } = &row.outcome {
                match &certificate.provenance {
                    Provenance::BinaryForm { r, s, .. } if (*r, *s) == (row.r, row.s) => {}
                    _ => {
                        return Err(invalid(
                            "row certificate provenance disagrees with its exponents",
                        ))
                    }
                }
            }
        }
        let overall = self.overall.reverify()?;
        self.check_context(&self.overall)?;
        if (overall == DocumentClaim::Proven) != any_proven {
            return Err(invalid("overall verdict disagrees with the rows"));
        }
        Ok(overall)
    }

    /// A proven outcome must speak about the same algebra the header
    /// announces.  (Inconclusive outcomes carry no context of their own
    /// and make no claim, so there is nothing to cross-check.)
    fn check_context(&self, outcome: &OutcomeDocument) -> Result<(), EngineError> {
        let matches = match outcome {
            OutcomeDocument::Split { certificate } => {
                certificate.field == self.field
                    && certificate.degree == self.degree
                    && certificate.radicand == self.radicand
                    && certificate.parameter == self.parameter
            }
            OutcomeDocument::DegenerateSplit { field, degree, radicand, .. } => {
                *field == self.field && *degree == self.degree && *radicand == self.radicand
            }
            OutcomeDocument::Inconclusive { .. } => true,
        };
        if matches {
            Ok(())
        } else {
            Err(EngineError::DocumentInvalid(
                "outcome context disagrees with the report header".to_string(),
            ))
        }
    }
}

/// Runs all four degree-3 conditions for `(l, a)`, `l = k(cbrt(b))`.
pub fn corollary1_check(
    field: &Arc<FieldDescriptor>,
    a: FieldElement,
    b: FieldElement,
    budget: &SearchBudget,
) -> Result<Corollary1Report, EngineError> {
    let mut rows = Vec::with_capacity(COROLLARY1_ROWS.len());
    for (r, s) in COROLLARY1_ROWS {
        let instance = Theorem1Instance::new(field, 3, b.clone(), a.clone(), r, s)?;
        let outcome = instance.theorem1_pipeline(budget)?;
        rows.push(CorollaryRow { r, s, outcome });
    }
    let overall = rows
        .iter()
        .map(|row| &row.outcome)
        .find(|o| o.proves_split())
        .cloned()
        .unwrap_or_else(|| {
            // All four inconclusive: aggregate honestly, reporting a
            // definitive miss only if every row's search was exhaustive.
            let mut examined_total = 0;
            let mut all_exhausted = true;
            for row in &rows {
                match &row.outcome {
                    PipelineOutcome::Inconclusive {
                        reason: InconclusiveReason::SearchExhausted { examined },
                    } => examined_total += examined,
                    PipelineOutcome::Inconclusive {
                        reason: InconclusiveReason::BudgetExhausted { examined },
                    } => {
                        examined_total += examined;
                        all_exhausted = false;
                    }
                    _ => unreachable!("split outcomes were handled above"),
                }
            }
            let examined = examined_total;
            PipelineOutcome::Inconclusive {
                reason: if all_exhausted {
                    InconclusiveReason::SearchExhausted { examined }
                } else {
                    InconclusiveReason::BudgetExhausted { examined }
                },
            }
        });
    Ok(Corollary1Report {
        field: Arc::clone(field),
        radicand: b,
        parameter: a,
        rows,
        overall,
    })
}

/// One valuation-obstruction case of the four-variable counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub claim: String,
    pub profile: ValuationProfile,
    pub obstruction: ObstructionOutcome,
}

/// The end-to-end counterexample record: the exact norm identity showing
/// the algebra is split, and the three non-representation cases showing
/// every sufficient condition fails for it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Example1Report {
    pub field: String,
    pub norm_computed: String,
    pub norm_expected: String,
    pub identity_holds: bool,
    pub case1: CaseReport,
    pub case2: CaseReport,
    pub case3: RefutationReport,
    /// True when the identity holds yet all three cases are refuted: a
    /// split algebra for which the sufficient condition fails in every
    /// available shape.
    pub converse_refuted: bool,
}

/// Verifies the four-variable counterexample: over
/// `k = Frac(Q[x, y, z, t])` with `l = k(cbrt(t))` and
/// `a = x^3 + y^3 t + z^3 t^2 - 3xyzt`,
///
/// 1. `n_{l/k}(x + y cbrt(t) + z cbrt(t)^2) = a` exactly — so `(l, a)` is
///    split by a direct witness (the norm here is the multiplication
///    matrix determinant: no root of unity is needed for the identity);
/// 2. `<a, t>` represents neither `1` nor `t^2`, and `<a, t^2>` does not
///    represent `1`, each certified by a valuation argument — so no
///    condition of the splitting criterion holds.
pub fn example1_verify(case3_degree_bound: u32) -> Result<Example1Report, EngineError> {
    let (q, vars) = forms::example1_ring();
    let k = FieldDescriptor::fraction_field(&q, &vars)?;
    let t = FieldElement::parse(&k, "t")?;
    let ext = KummerExtension::new(&k, 3, t)?;
    let generic = KummerElement::from_coords(
        &ext,
        vec![
            FieldElement::parse(&k, "x")?,
            FieldElement::parse(&k, "y")?,
            FieldElement::parse(&k, "z")?,
        ],
    )?;
    let norm = generic.field_norm();
    let a_poly = forms::example1_coefficient(&q, &vars);
    let a_el = FieldElement::from_polynomial(&k, a_poly.clone())?;
    let identity_holds = norm == a_el;

    let deg_a = a_poly
        .degree_in("t")?
        .expect("the coefficient polynomial is nonzero") as i64;
    let val_a = a_poly
        .min_degree_in("t")?
        .expect("the coefficient polynomial is nonzero") as i64;
    let t_poly = MultiPoly::parse(&q, &vars, "t")?;
    let deg_t = t_poly.degree_in("t")?.expect("t is nonzero") as i64;

    // Case 1: <a, t> does not represent 1 — degrees in t mod 3 of the
    // cleared equation a u^3 + t v^3 = w^3 are 2, 1 against 0.
    let case1_profile = ValuationProfile::new(
        3,
        vec![
            TermValuation { label: format!("deg_t of ({a_poly}) * u^3"), valuation: deg_a },
            TermValuation { label: "deg_t of t * v^3".to_string(), valuation: deg_t },
        ],
        "deg_t of w^3",
        0,
    )?;
    let case1 = CaseReport {
        claim: "<a, t> does not represent 1".to_string(),
        obstruction: valuation_obstruction(&case1_profile),
        profile: case1_profile,
    };

    // Case 2: <a, t> does not represent t^2 — orders at t = 0 are 0, 1
    // against 2.
    let case2_profile = ValuationProfile::new(
        3,
        vec![
            TermValuation { label: format!("v_t of ({a_poly}) * u^3"), valuation: val_a },
            TermValuation { label: "v_t of t * v^3".to_string(), valuation: 1 },
        ],
        "v_t of t^2 * w^3",
        2,
    )?;
    let case2 = CaseReport {
        claim: "<a, t> does not represent t^2".to_string(),
        obstruction: valuation_obstruction(&case2_profile),
        profile: case2_profile,
    };

    // Case 3: <a, t^2> does not represent 1 — needs the specialization
    // x -> 0 first, then the same style of argument.
    let case3 = forms::example1_case3_refute(case3_degree_bound)?;

    let all_impossible = case1.obstruction == ObstructionOutcome::Impossible
        && case2.obstruction == ObstructionOutcome::Impossible
        && case3.obstruction == ObstructionOutcome::Impossible;
    let search_clean = case3
        .search
        .as_ref()
        .is_none_or(|s| s.solution.is_none());
    Ok(Example1Report {
        field: k.to_string(),
        norm_computed: norm.to_string(),
        norm_expected: a_el.to_string(),
        identity_holds,
        case1,
        case2,
        case3,
        converse_refuted: identity_holds && all_impossible && search_clean,
    })
}
