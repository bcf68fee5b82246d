//! Diagonal forms `<c_1, ..., c_m>` of degree `d`, the cubic tensor form
//! `<c_1, c_2> (x) n_{l/k}`, representation searches, and the
//! valuation-mod-`d` obstruction that certifies non-representation.
//!
//! Searches are deterministic: candidates are enumerated in the field's
//! canonical order (residues ascending for `F_p`; increasing height, then
//! numeric or coordinate order, for the rationals and cyclotomics), tuples
//! lexicographically with the first argument most significant, and the
//! first hit in that order is returned.  A sharded multi-worker scan merges
//! by minimal tuple index, so the result is independent of `--threads`.
//! Over a finite field a full scan that finds nothing is a proof
//! (`ExhaustedNo`); over an infinite field running out of budget proves
//! nothing and is reported as `NotFound`.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactfield::{enumerate_field, FieldDescriptor, FieldElement, FieldError, FieldKind};
use crate::kummer::{KummerElement, KummerError, KummerExtension};
use crate::polyring::{Assignment, MultiPoly, PolyError};

#[derive(Debug, Error)]
pub enum FormsError {
    #[error("diagonal form coefficients must be nonzero")]
    ZeroCoefficient,
    #[error("form degree must be at least 1, got {0}")]
    InvalidDegree(u64),
    #[error("the tensor form needs a degree-3 extension, got degree {0}")]
    TensorDegree(u64),
    #[error("form has {expected} arguments, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("representation targets must be nonzero")]
    ZeroTarget,
    #[error("cannot enumerate candidates over {0}; searches run over finite fields, Q, and cyclotomic fields")]
    UnsupportedSearchField(String),
    #[error("valuation profile needs two or three terms, got {0}")]
    ProfileArity(usize),
    #[error("valuation profile degree must be at least 2, got {0}")]
    ProfileDegree(u64),
    #[error("invalid representation document: {0}")]
    DocumentInvalid(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Kummer(#[from] KummerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Limits for representation searches.  `height` bounds the numerator and
/// denominator size of candidates over infinite fields (finite fields are
/// always enumerated in full); `max_candidates` caps the number of
/// candidate tuples examined; `threads` shards the scan without changing
/// the result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub height: u32,
    pub max_candidates: usize,
    pub threads: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { height: 50, max_candidates: 1_000_000, threads: 1 }
    }
}

impl SearchBudget {
    fn workers(&self) -> usize {
        self.threads.clamp(1, 64)
    }
}

/// `<c_1, ..., c_m>` of degree `d`: the form `sum c_i x_i^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalForm {
    degree: u64,
    coefficients: Vec<FieldElement>,
}

impl DiagonalForm {
    pub fn new(degree: u64, coefficients: Vec<FieldElement>) -> Result<Self, FormsError> {
        if degree == 0 {
            return Err(FormsError::InvalidDegree(degree));
        }
        if coefficients.is_empty() {
            return Err(FormsError::ArityMismatch { expected: 1, found: 0 });
        }
        if coefficients.iter().any(FieldElement::is_zero) {
            return Err(FormsError::ZeroCoefficient);
        }
        let field = coefficients[0].field();
        assert!(
            coefficients.iter().all(|c| c.field() == field),
            "coefficients from one field"
        );
        Ok(DiagonalForm { degree, coefficients })
    }

    #[must_use]
    pub fn degree(&self) -> u64 {
        self.degree
    }

    #[must_use]
    pub fn coefficients(&self) -> &[FieldElement] {
        &self.coefficients
    }

    #[must_use]
    pub fn arity(&self) -> usize {
        self.coefficients.len()
    }

    #[must_use]
    pub fn field(&self) -> &Arc<FieldDescriptor> {
        self.coefficients[0].field()
    }

    pub fn evaluate(&self, args: &[FieldElement]) -> Result<FieldElement, FormsError> {
        if args.len() != self.arity() {
            return Err(FormsError::ArityMismatch {
                expected: self.arity(),
                found: args.len(),
            });
        }
        let mut acc = FieldElement::zero(self.field());
        for (c, x) in self.coefficients.iter().zip(args) {
            let power = x
                .pow(self.degree as i64)
                .expect("nonnegative power cannot fail");
            acc = acc.add(&c.mul(&power));
        }
        Ok(acc)
    }
}

impl fmt::Display for DiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.coefficients.iter().map(FieldElement::to_string).collect();
        write!(f, "<{}> (degree {})", coeffs.join(", "), self.degree)
    }
}

/// A verified statement `form(arguments) = target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub form: DiagonalForm,
    pub arguments: Vec<FieldElement>,
    pub target: FieldElement,
}

impl Representation {
    #[must_use]
    pub fn verify(&self) -> bool {
        self.form
            .evaluate(&self.arguments)
            .map(|v| v == self.target)
            .unwrap_or(false)
    }

    #[must_use]
    pub fn to_document(&self) -> RepresentationDocument {
        RepresentationDocument {
            field: self.form.field().to_string(),
            degree: self.form.degree(),
            coefficients: self
                .form
                .coefficients()
                .iter()
                .map(FieldElement::to_string)
                .collect(),
            target: self.target.to_string(),
            arguments: self.arguments.iter().map(FieldElement::to_string).collect(),
        }
    }
}

/// Serialized representation claim, self-contained: re-parsing and
/// re-evaluating the form is the verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationDocument {
    pub field: String,
    pub degree: u64,
    pub coefficients: Vec<String>,
    pub target: String,
    pub arguments: Vec<String>,
}

impl RepresentationDocument {
    pub fn try_into_representation(&self) -> Result<Representation, FormsError> {
        let field = FieldDescriptor::parse(&self.field)?;
        let coefficients = self
            .coefficients
            .iter()
            .map(|s| FieldElement::parse(&field, s))
            .collect::<Result<Vec<_>, _>>()?;
        let form = DiagonalForm::new(self.degree, coefficients)?;
        let target = FieldElement::parse(&field, &self.target)?;
        let arguments = self
            .arguments
            .iter()
            .map(|s| FieldElement::parse(&field, s))
            .collect::<Result<Vec<_>, _>>()?;
        let rep = Representation { form, arguments, target };
        if !rep.verify() {
            return Err(FormsError::DocumentInvalid(
                "the form does not evaluate to the stated target".to_string(),
            ));
        }
        Ok(rep)
    }
}

/// Outcome of a representation search.  `ExhaustedNo` is a proof of
/// non-representation (the finite space was scanned in full);
/// `NotFound` only says the budgeted portion contained no hit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Representation),
    ExhaustedNo { examined: usize },
    NotFound { examined: usize },
}

/// Candidates for one search coordinate: either a full finite field
/// (decoded on the fly) or a height-bounded list.
enum CandidateSpace {
    Prime { field: Arc<FieldDescriptor>, p: u64 },
    Listed { items: Vec<FieldElement> },
}

impl CandidateSpace {
    fn for_field(
        field: &Arc<FieldDescriptor>,
        budget: &SearchBudget,
    ) -> Result<Self, FormsError> {
        match field.kind() {
            FieldKind::Prime(p) => Ok(CandidateSpace::Prime { field: Arc::clone(field), p: *p }),
            FieldKind::Rationals | FieldKind::Cyclotomic(_) => Ok(CandidateSpace::Listed {
                items: enumerate_field(field, budget.height, budget.max_candidates),
            }),
            FieldKind::FractionField { .. } => {
                Err(FormsError::UnsupportedSearchField(field.to_string()))
            }
        }
    }

    fn len(&self) -> usize {
        match self {
            CandidateSpace::Prime { p, .. } => *p as usize,
            CandidateSpace::Listed { items } => items.len(),
        }
    }

    /// Whether the space is the whole field, so that a full scan proves
    /// nonexistence.
    fn complete(&self) -> bool {
        matches!(self, CandidateSpace::Prime { .. })
    }

    fn get(&self, i: usize) -> FieldElement {
        match self {
            CandidateSpace::Prime { field, .. } => FieldElement::from_integer(field, i as i64),
            CandidateSpace::Listed { items } => items[i].clone(),
        }
    }
}

/// Scans tuple indices `0..cap_total` for the first satisfying one.  With
/// several workers the stripes interleave by residue, each worker stops
/// once past the best hit so far, and the minimal hit index wins — the
/// same answer as the sequential scan.
fn first_hit<F>(cap_total: usize, workers: usize, test: F) -> Option<usize>
where
    F: Fn(usize) -> bool + Sync,
{
    if workers <= 1 || cap_total < 2048 {
        return (0..cap_total).find(|&i| test(i));
    }
    let best = AtomicUsize::new(usize::MAX);
    std::thread::scope(|scope| {
        for w in 0..workers {
            let best = &best;
            let test = &test;
            scope.spawn(move || {
                let mut i = w;
                while i < cap_total && i < best.load(Ordering::Relaxed) {
                    if test(i) {
                        best.fetch_min(i, Ordering::Relaxed);
                        break;
                    }
                    i += workers;
                }
            });
        }
    });
    match best.load(Ordering::Relaxed) {
        usize::MAX => None,
        i => Some(i),
    }
}

fn grid_total(per_coord: usize, arity: u32) -> usize {
    let mut total = 1usize;
    for _ in 0..arity {
        total = total.saturating_mul(per_coord);
    }
    total
}

/// Searches for arguments representing `target`, in the canonical
/// deterministic order.  Finite fields are scanned exhaustively (within
/// `max_candidates`); `Q` and cyclotomic fields by increasing height up to
/// `budget.height`.
pub fn represent_search(
    form: &DiagonalForm,
    target: &FieldElement,
    budget: &SearchBudget,
) -> Result<SearchOutcome, FormsError> {
    if target.is_zero() {
        return Err(FormsError::ZeroTarget);
    }
    assert!(target.field() == form.field(), "target from the form's field");
    let space = CandidateSpace::for_field(form.field(), budget)?;
    let n = space.len();
    let m = form.arity();
    let total = grid_total(n, m as u32);
    let cap_total = total.min(budget.max_candidates);

    let decode = |idx: usize| -> Vec<FieldElement> {
        let mut args = vec![FieldElement::zero(form.field()); m];
        let mut rest = idx;
        for slot in (0..m).rev() {
            args[slot] = space.get(rest % n);
            rest /= n;
        }
        args
    };
    let hit = first_hit(cap_total, budget.workers(), |idx| {
        let args = decode(idx);
        form.evaluate(&args).map(|v| v == *target).unwrap_or(false)
    });
    match hit {
        Some(idx) => Ok(SearchOutcome::Found(Representation {
            form: form.clone(),
            arguments: decode(idx),
            target: target.clone(),
        })),
        None if space.complete() && cap_total == total => {
            Ok(SearchOutcome::ExhaustedNo { examined: cap_total })
        }
        None => Ok(SearchOutcome::NotFound { examined: cap_total }),
    }
}

/// The cubic form `<c_1, c_2> (x) n_{l/k}` on `l x l`: six variables over
/// the base field, evaluated as `c_1 n(x) + c_2 n(y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorNormForm {
    ext: Arc<KummerExtension>,
    c1: FieldElement,
    c2: FieldElement,
}

impl TensorNormForm {
    pub fn new(
        ext: &Arc<KummerExtension>,
        c1: FieldElement,
        c2: FieldElement,
    ) -> Result<Self, FormsError> {
        if ext.degree() != 3 {
            return Err(FormsError::TensorDegree(ext.degree()));
        }
        if c1.is_zero() || c2.is_zero() {
            return Err(FormsError::ZeroCoefficient);
        }
        assert!(
            c1.field() == ext.base_field() && c2.field() == ext.base_field(),
            "coefficients from the extension's base field"
        );
        Ok(TensorNormForm { ext: Arc::clone(ext), c1, c2 })
    }

    #[must_use]
    pub fn extension(&self) -> &Arc<KummerExtension> {
        &self.ext
    }

    #[must_use]
    pub fn coefficients(&self) -> (&FieldElement, &FieldElement) {
        (&self.c1, &self.c2)
    }

    #[must_use]
    pub fn evaluate(&self, x: &KummerElement, y: &KummerElement) -> FieldElement {
        let nx = x.field_norm();
        let ny = y.field_norm();
        self.c1.mul(&nx).add(&self.c2.mul(&ny))
    }
}

/// Which first-slot values a tensor search ranges over.  The Tits pipeline
/// scans nonzero `x` first and the `x = 0` slice separately, because the
/// two hit kinds produce different witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FirstSlot {
    Any,
    NonZero,
    Zero,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TensorOutcome {
    Found { x: KummerElement, y: KummerElement },
    ExhaustedNo { examined: usize },
    NotFound { examined: usize },
}

fn decode_l(
    ext: &Arc<KummerExtension>,
    space: &CandidateSpace,
    idx: usize,
) -> KummerElement {
    let d = ext.degree() as usize;
    let n = space.len();
    let mut coords = vec![FieldElement::zero(ext.base_field()); d];
    let mut rest = idx;
    for slot in (0..d).rev() {
        coords[slot] = space.get(rest % n);
        rest /= n;
    }
    KummerElement::from_coords(ext, coords).expect("coordinate count matches the degree")
}

/// Searches `(x, y)` in `l x l` with `c_1 n(x) + c_2 n(y) = target`.
/// Elements of `l` are ordered by their coordinate tuples (constant
/// coordinate most significant), pairs lexicographically with `x` major.
/// Pair indices whose `x` falls outside `first_slot` are skipped but still
/// counted against the budget, keeping examined counts deterministic.
pub fn tensor_represent_search(
    form: &TensorNormForm,
    target: &FieldElement,
    budget: &SearchBudget,
    first_slot: FirstSlot,
) -> Result<TensorOutcome, FormsError> {
    if target.is_zero() {
        return Err(FormsError::ZeroTarget);
    }
    let ext = &form.ext;
    let space = CandidateSpace::for_field(ext.base_field(), budget)?;
    let d = ext.degree() as u32;
    let nl = grid_total(space.len(), d);

    let total = match first_slot {
        FirstSlot::Zero => nl,
        FirstSlot::Any | FirstSlot::NonZero => nl.saturating_mul(nl),
    };
    let cap_total = total.min(budget.max_candidates);

    let decode = |idx: usize| -> (KummerElement, KummerElement) {
        match first_slot {
            FirstSlot::Zero => (KummerElement::zero(ext), decode_l(ext, &space, idx)),
            _ => (
                decode_l(ext, &space, idx / nl),
                decode_l(ext, &space, idx % nl),
            ),
        }
    };
    let hit = first_hit(cap_total, budget.workers(), |idx| {
        let (x, y) = decode(idx);
        if first_slot == FirstSlot::NonZero && x.is_zero() {
            return false;
        }
        form.evaluate(&x, &y) == *target
    });
    match hit {
        Some(idx) => {
            let (x, y) = decode(idx);
            Ok(TensorOutcome::Found { x, y })
        }
        None if space.complete() && cap_total == total => {
            Ok(TensorOutcome::ExhaustedNo { examined: cap_total })
        }
        None => Ok(TensorOutcome::NotFound { examined: cap_total }),
    }
}

/// One term's valuation data: the valuation of the coefficient multiplying
/// a `d`-th power, plus a label for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermValuation {
    pub label: String,
    pub valuation: i64,
}

/// The integer data of a valuation argument: for the equation
/// `sum c_i x_i^d = target`, the residues mod `d` of `v(c_i)` and
/// `v(target)`.  Works for any discrete valuation — `v_p`, `v_t`, or a
/// degree function `deg_t` (whose sign convention does not matter here,
/// only residues do).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationProfile {
    pub degree: u64,
    pub terms: Vec<TermValuation>,
    pub target_label: String,
    pub target_valuation: i64,
}

impl ValuationProfile {
    pub fn new(
        degree: u64,
        terms: Vec<TermValuation>,
        target_label: impl Into<String>,
        target_valuation: i64,
    ) -> Result<Self, FormsError> {
        if degree < 2 {
            return Err(FormsError::ProfileDegree(degree));
        }
        if terms.len() < 2 || terms.len() > 3 {
            return Err(FormsError::ProfileArity(terms.len()));
        }
        Ok(ValuationProfile {
            degree,
            terms,
            target_label: target_label.into(),
            target_valuation,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum ObstructionOutcome {
    /// The term valuations are pairwise distinct mod `d` and the target's
    /// class differs from all of them: the valuation of any combination
    /// `sum c_i x_i^d` lands in some term's class, never the target's, so
    /// no representation exists.
    Impossible,
    /// Classes collide; cancellation could occur and nothing is claimed.
    Inconclusive,
}

#[must_use]
pub fn valuation_obstruction(profile: &ValuationProfile) -> ObstructionOutcome {
    let d = profile.degree as i64;
    let classes: Vec<i64> = profile
        .terms
        .iter()
        .map(|t| t.valuation.rem_euclid(d))
        .collect();
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i + 1..] {
            if a == b {
                return ObstructionOutcome::Inconclusive;
            }
        }
    }
    let target = profile.target_valuation.rem_euclid(d);
    if classes.contains(&target) {
        return ObstructionOutcome::Inconclusive;
    }
    ObstructionOutcome::Impossible
}

/// Result of the exhaustive scan over the declared low-degree candidate
/// family for an equation `c_1 u^3 + c_2 v^3 = target` in a polynomial
/// ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundedSearchReport {
    /// Candidates are `coeff * monomial` for every listed rational
    /// coefficient and every monomial in the support variables of total
    /// degree at most this bound, plus the zero polynomial.
    pub degree_bound: u32,
    pub support: Vec<String>,
    pub coefficient_pool: Vec<String>,
    pub candidates_per_slot: usize,
    pub examined_pairs: usize,
    /// The first solution in scan order, if any; the refutations expect
    /// none.
    pub solution: Option<(String, String)>,
}

const SEARCH_SCALES: [(i64, i64); 6] = [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2)];

fn monomials_up_to(
    ring_vars: &[String],
    support: &[&str],
    bound: u32,
) -> Result<Vec<Vec<u32>>, FormsError> {
    let mut support_idx = vec![];
    for s in support {
        let idx = ring_vars
            .iter()
            .position(|v| v == s)
            .ok_or_else(|| PolyError::UnknownVariable((*s).to_string()))?;
        support_idx.push(idx);
    }
    let mut out = vec![];
    let mut exps = vec![0u32; ring_vars.len()];
    fn rec(
        support_idx: &[usize],
        pos: usize,
        remaining: u32,
        exps: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if pos == support_idx.len() {
            out.push(exps.clone());
            return;
        }
        for e in 0..=remaining {
            exps[support_idx[pos]] = e;
            rec(support_idx, pos + 1, remaining - e, exps, out);
            exps[support_idx[pos]] = 0;
        }
    }
    rec(&support_idx, 0, bound, &mut exps, &mut out);
    // Smaller total degree first, then exponent-lexicographic: a stable,
    // documented candidate order.
    out.sort_by_key(|e| (e.iter().sum::<u32>(), e.clone()));
    Ok(out)
}

/// Exhaustively checks `c_1 u^3 + c_2 v^3 = target` for `u, v` ranging
/// over scaled monomials (total degree `<= degree_bound` in the support
/// variables, rational scales from a fixed small pool, plus zero).  A full
/// miss refutes solvability *within the declared family only* — the
/// valuation obstruction is what rules out everything else.
pub fn bounded_monomial_search(
    c1: &MultiPoly,
    c2: &MultiPoly,
    target: &MultiPoly,
    support: &[&str],
    degree_bound: u32,
) -> Result<BoundedSearchReport, FormsError> {
    let field = c1.coefficient_field();
    let vars: Vec<String> = c1.variables().to_vec();
    let mut pool = vec![MultiPoly::zero(field, &vars)];
    let mut pool_names = vec!["0".to_string()];
    for exps in monomials_up_to(&vars, support, degree_bound)? {
        let mut mono = MultiPoly::one(field, &vars);
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                mono = mono.mul(&MultiPoly::variable(field, &vars, &vars[i])?.pow(e));
            }
        }
        for (num, den) in SEARCH_SCALES {
            let scale = FieldElement::from_integer(field, num)
                .div(&FieldElement::from_integer(field, den))
                .expect("scale denominators are nonzero");
            let cand = mono.mul_scalar(&scale);
            pool_names.push(cand.to_string());
            pool.push(cand);
        }
    }

    // c1 u^3 == target - c2 v^3, with both sides precomputed per slot.
    let lhs: Vec<MultiPoly> = pool.iter().map(|u| c1.mul(&u.pow(3))).collect();
    let rhs: Vec<MultiPoly> = pool
        .iter()
        .map(|v| target.sub(&c2.mul(&v.pow(3))))
        .collect();
    let mut solution = None;
    'outer: for (i, l) in lhs.iter().enumerate() {
        for (j, r) in rhs.iter().enumerate() {
            if l == r {
                solution = Some((pool_names[i].clone(), pool_names[j].clone()));
                break 'outer;
            }
        }
    }
    Ok(BoundedSearchReport {
        degree_bound,
        support: support.iter().map(|s| (*s).to_string()).collect(),
        coefficient_pool: SEARCH_SCALES
            .iter()
            .map(|(n, d)| if *d == 1 { n.to_string() } else { format!("{n}/{d}") })
            .collect(),
        candidates_per_slot: pool.len(),
        examined_pairs: pool.len() * pool.len(),
        solution,
    })
}

/// The two-step refutation that `<a, t^2>` does not represent 1 for
/// `a = x^3 + y^3 t + z^3 t^2 - 3xyzt`: specializing `x -> 0` turns a
/// hypothetical cleared-denominator solution into one of
/// `(y^3 t + z^3 t^2) p^3 + t^2 q^3 = r^3`, whose term valuations in `t`
/// fall in the classes 1 and 2 against a target in class 0 — impossible.
/// A bounded exhaustive scan over low-degree candidates backs this up
/// empirically on the original equation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefutationReport {
    pub equation: String,
    pub specialized_coefficient: String,
    /// The specialization step assumes a putative coprime solution stays
    /// nontrivial after `x -> 0`; recorded rather than verified.
    pub hypothesis: String,
    pub profile: ValuationProfile,
    pub obstruction: ObstructionOutcome,
    pub search: Option<BoundedSearchReport>,
}

pub(crate) fn example1_coefficient(
    field: &Arc<FieldDescriptor>,
    vars: &[String],
) -> MultiPoly {
    MultiPoly::parse(field, vars, "x^3 + y^3*t + z^3*t^2 - 3*x*y*z*t")
        .expect("the coefficient polynomial is well formed")
}

pub(crate) fn example1_ring() -> (Arc<FieldDescriptor>, Vec<String>) {
    let q = FieldDescriptor::rationals();
    let vars: Vec<String> = ["x", "y", "z", "t"].iter().map(|s| s.to_string()).collect();
    (q, vars)
}

/// Runs the case `<a, t^2>` does-not-represent-1 refutation.  A degree
/// bound of 0 skips the empirical scan; the valuation obstruction needs no
/// budget.
pub fn example1_case3_refute(degree_bound: u32) -> Result<RefutationReport, FormsError> {
    let (q, vars) = example1_ring();
    let a = example1_coefficient(&q, &vars);
    let mut subst = std::collections::BTreeMap::new();
    subst.insert("x".to_string(), Assignment::Element(FieldElement::zero(&q)));
    let specialized = a.specialize(&subst)?;
    let v_specialized = specialized
        .min_degree_in("t")?
        .expect("the specialized coefficient is nonzero");
    let t_squared = MultiPoly::parse(&q, &vars, "t^2")?;
    let v_t2 = t_squared.min_degree_in("t")?.expect("t^2 is nonzero");
    let profile = ValuationProfile::new(
        3,
        vec![
            TermValuation {
                label: format!("({specialized}) * p^3"),
                valuation: v_specialized as i64,
            },
            TermValuation { label: "t^2 * q^3".to_string(), valuation: v_t2 as i64 },
        ],
        "r^3",
        0,
    )?;
    let obstruction = valuation_obstruction(&profile);
    let search = if degree_bound == 0 {
        None
    } else {
        let one = MultiPoly::one(&q, &vars);
        Some(bounded_monomial_search(
            &a,
            &t_squared,
            &one,
            &["x", "y", "z", "t"],
            degree_bound,
        )?)
    };
    Ok(RefutationReport {
        equation: format!("({a}) * u^3 + t^2 * v^3 = 1"),
        specialized_coefficient: specialized.to_string(),
        hypothesis: "a coprime cleared-denominator solution is assumed to stay nontrivial \
                     under the specialization x -> 0"
            .to_string(),
        profile,
        obstruction,
        search,
    })
}
