//! Sparse multivariate polynomials over an exact coefficient field.
//!
//! Terms are kept in a map from exponent vectors to nonzero coefficients, so
//! arithmetic is order-independent; the graded lexicographic order (total
//! degree first, then left-to-right exponent comparison with earlier
//! variables larger) is fixed for canonical printing, leading terms and the
//! canonical polynomial comparison.
//!
//! The module deliberately stops short of general computer algebra: no
//! factorization, no Gröbner machinery.  The one piece of nontrivial
//! structure it does carry — a multivariate gcd by primitive pseudo-remainder
//! sequences, exact division, and exact `d`-th roots — is crate-internal
//! plumbing for lowest-terms rational functions and the `d`-th power test.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use thiserror::Error;

use crate::exactfield::{dth_power_test, FieldDescriptor, FieldElement, PowerDecision};

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("polynomials over different rings: {left} vs {right}")]
    RingMismatch { left: String, right: String },
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("variable {0:?} has no assigned value")]
    MissingAssignment(String),
    #[error("cannot parse {input:?} as a polynomial: {detail}")]
    Syntax { input: String, detail: String },
}

/// Exponent vector; ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Monomial(Vec<u32>);

impl Monomial {
    fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn quotient(&self, by: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&by.0).map(|(a, b)| a - b).collect())
    }

    fn product(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn scaled(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse multivariate polynomial with coefficients in a fixed base field
/// and a fixed, ordered variable list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    base: Arc<FieldDescriptor>,
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Monomial, FieldElement>,
}

/// Substitution target for [`MultiPoly::specialize`].
#[derive(Debug, Clone)]
pub enum Assignment {
    Element(FieldElement),
    Poly(MultiPoly),
}

impl MultiPoly {
    #[must_use]
    pub fn zero(base: &Arc<FieldDescriptor>, vars: &[String]) -> Self {
        MultiPoly {
            base: Arc::clone(base),
            vars: Arc::new(vars.to_vec()),
            terms: BTreeMap::new(),
        }
    }

    #[must_use]
    pub fn one(base: &Arc<FieldDescriptor>, vars: &[String]) -> Self {
        Self::constant(base, vars, &FieldElement::one(base))
    }

    /// The constant polynomial `c`.
    #[must_use]
    pub fn constant(base: &Arc<FieldDescriptor>, vars: &[String], c: &FieldElement) -> Self {
        assert!(c.field() == base, "constant comes from the coefficient field");
        let mut p = Self::zero(base, vars);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; vars.len()]), c.clone());
        }
        p
    }

    /// The polynomial `name`, which must be one of the ring's variables.
    pub fn variable(
        base: &Arc<FieldDescriptor>,
        vars: &[String],
        name: &str,
    ) -> Result<Self, PolyError> {
        let idx = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        let mut p = Self::zero(base, vars);
        let mut exps = vec![0; vars.len()];
        exps[idx] = 1;
        p.terms.insert(Monomial(exps), FieldElement::one(base));
        Ok(p)
    }

    #[must_use]
    pub fn coefficient_field(&self) -> &Arc<FieldDescriptor> {
        &self.base
    }

    #[must_use]
    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[must_use]
    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    #[must_use]
    pub fn constant_value(&self) -> Option<FieldElement> {
        match self.terms.len() {
            0 => Some(FieldElement::zero(&self.base)),
            1 => {
                let (m, c) = self.terms.iter().next().expect("one term");
                (m.total_degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Terms as (exponent vector, coefficient) pairs in increasing graded
    /// lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &FieldElement)> {
        self.terms.iter().map(|(m, c)| (m.0.as_slice(), c))
    }

    fn assert_same_ring(&self, other: &Self, _op: &str) {
        assert!(
            self.base == other.base && *self.vars == *other.vars,
            "polynomials over different rings: {}[{}] vs {}[{}]",
            self.base,
            self.vars.join(","),
            other.base,
            other.vars.join(",")
        );
    }

    fn insert_term(&mut self, m: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    #[must_use]
    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_ring(other, "addition");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    #[must_use]
    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    #[must_use]
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    #[must_use]
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_ring(other, "multiplication");
        let mut out = Self {
            base: Arc::clone(&self.base),
            vars: Arc::clone(&self.vars),
            terms: BTreeMap::new(),
        };
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.insert_term(m1.product(m2), c1.mul(c2));
            }
        }
        out
    }

    #[must_use]
    pub fn mul_scalar(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(&self.base, &self.vars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.mul(c);
        }
        out
    }

    #[must_use]
    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(&self.base, &self.vars);
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

    /// Greatest exponent of `var`; `None` for the zero polynomial (its
    /// degree is minus infinity).
    pub fn degree_in(&self, var: &str) -> Result<Option<u32>, PolyError> {
        let idx = self.var_index(var)?;
        Ok(self.terms.keys().map(|m| m.0[idx]).max())
    }

    /// Least exponent of `var` across terms; `None` for zero.  This is the
    /// `var`-adic valuation of the polynomial.
    pub fn min_degree_in(&self, var: &str) -> Result<Option<u32>, PolyError> {
        let idx = self.var_index(var)?;
        Ok(self.terms.keys().map(|m| m.0[idx]).min())
    }

    /// Total degree; `None` for the zero polynomial.
    #[must_use]
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    fn var_index(&self, var: &str) -> Result<usize, PolyError> {
        self.vars
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| PolyError::UnknownVariable(var.to_string()))
    }

    /// Leading coefficient with respect to the graded lexicographic order.
    #[must_use]
    pub fn leading_coefficient(&self) -> Option<&FieldElement> {
        self.terms.iter().next_back().map(|(_, c)| c)
    }

    fn leading_term(&self) -> Option<(&Monomial, &FieldElement)> {
        self.terms.iter().next_back()
    }

    /// Simultaneous substitution.  Assigned variables are replaced by the
    /// target (a coefficient field element or a polynomial of the same
    /// ring); unassigned variables stay.
    pub fn specialize(&self, assignments: &BTreeMap<String, Assignment>) -> Result<Self, PolyError> {
        for (name, a) in assignments {
            self.var_index(name)?;
            match a {
                Assignment::Element(c) => {
                    if c.field() != &self.base {
                        return Err(PolyError::RingMismatch {
                            left: self.base.to_string(),
                            right: c.field().to_string(),
                        });
                    }
                }
                Assignment::Poly(p) => {
                    if p.base != self.base || *p.vars != *self.vars {
                        return Err(PolyError::RingMismatch {
                            left: self.base.to_string(),
                            right: p.base.to_string(),
                        });
                    }
                }
            }
        }
        let assigned: Vec<Option<&Assignment>> =
            self.vars.iter().map(|v| assignments.get(v)).collect();
        let mut out = Self::zero(&self.base, &self.vars);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut residual = vec![0u32; self.vars.len()];
            let mut poly_factor = Self::one(&self.base, &self.vars);
            for (i, e) in m.0.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                match assigned[i] {
                    None => residual[i] = *e,
                    Some(Assignment::Element(v)) => {
                        coeff = coeff.mul(&v.pow(*e as i64).expect("nonnegative exponent"));
                    }
                    Some(Assignment::Poly(p)) => {
                        poly_factor = poly_factor.mul(&p.pow(*e));
                    }
                }
            }
            let mut term = Self::zero(&self.base, &self.vars);
            term.insert_term(Monomial(residual), coeff);
            out = out.add(&term.mul(&poly_factor));
        }
        Ok(out)
    }

    /// Full evaluation; every variable must be assigned.
    pub fn evaluate(
        &self,
        values: &BTreeMap<String, FieldElement>,
    ) -> Result<FieldElement, PolyError> {
        for v in self.vars.iter() {
            if !values.contains_key(v) {
                return Err(PolyError::MissingAssignment(v.clone()));
            }
        }
        let vals: Vec<&FieldElement> =
            self.vars.iter().map(|v| &values[v]).collect();
        let mut acc = FieldElement::zero(&self.base);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, e) in m.0.iter().enumerate() {
                if *e > 0 {
                    t = t.mul(&vals[i].pow(*e as i64).expect("nonnegative exponent"));
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Writes a nonzero `f` as `v^m * g` with `v` not dividing `g`;
    /// returns `(m, g)`.
    pub fn divide_out_variable(&self, var: &str) -> Result<(u32, Self), PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let idx = self.var_index(var)?;
        let m = self.terms.keys().map(|k| k.0[idx]).min().expect("nonzero");
        if m == 0 {
            return Ok((0, self.clone()));
        }
        let mut out = Self::zero(&self.base, &self.vars);
        for (mono, c) in &self.terms {
            let mut exps = mono.0.clone();
            exps[idx] -= m;
            out.terms.insert(Monomial(exps), c.clone());
        }
        Ok((m, out))
    }

    /// Canonical order on polynomials of one ring: compare term lists from
    /// the leading term down; a higher monomial wins, equal monomials
    /// compare coefficients, and the longer list wins once one side runs
    /// out.  Not a numeric order — a deterministic one.
    #[must_use]
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        self.assert_same_ring(other, "comparison");
        let mut it1 = self.terms.iter().rev();
        let mut it2 = other.terms.iter().rev();
        loop {
            match (it1.next(), it2.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((m1, c1)), Some((m2, c2))) => {
                    match m1.cmp(m2).then_with(|| c1.cmp_canonical(c2)) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
            }
        }
    }

    /// Parses the polynomial grammar: sums of terms, each a `*`-product of
    /// integer or rational literals, variables with optional `^k`, and
    /// parenthesized coefficient field literals such as `(1 + w)`.
    pub fn parse(
        base: &Arc<FieldDescriptor>,
        vars: &[String],
        input: &str,
    ) -> Result<Self, PolyError> {
        Parser {
            base,
            vars,
            input,
            rest: input.trim(),
        }
        .parse()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let mono = render_monomial(&self.vars, m);
            // Coefficients that parse back as a single numeric factor are
            // written bare with their sign folded into the term separator;
            // anything else (a proper cyclotomic coefficient) is
            // parenthesized so the output re-parses.
            let simple = if let Some(r) = c.residue() {
                Some((false, r.to_string()))
            } else {
                c.as_rational().map(|r| {
                    use num_traits::Signed;
                    (r.is_negative(), r.abs().to_string())
                })
            };
            match simple {
                Some((neg, mag)) => {
                    if out.is_empty() {
                        if neg {
                            out.push('-');
                        }
                    } else {
                        out.push_str(if neg { " - " } else { " + " });
                    }
                    match &mono {
                        None => out.push_str(&mag),
                        Some(ms) => {
                            if mag != "1" {
                                out.push_str(&mag);
                                out.push('*');
                            }
                            out.push_str(ms);
                        }
                    }
                }
                None => {
                    if !out.is_empty() {
                        out.push_str(" + ");
                    }
                    out.push('(');
                    out.push_str(&c.to_string());
                    out.push(')');
                    if let Some(ms) = &mono {
                        out.push('*');
                        out.push_str(ms);
                    }
                }
            }
        }
        write!(f, "{out}")
    }
}

fn render_monomial(vars: &[String], m: &Monomial) -> Option<String> {
    let mut parts = vec![];
    for (v, e) in vars.iter().zip(&m.0) {
        match e {
            0 => {}
            1 => parts.push(v.clone()),
            _ => parts.push(format!("{v}^{e}")),
        }
    }
    if parts.is_empty() {
        None
    } else {
        Some(parts.join("*"))
    }
}

// ---------------------------------------------------------------------------
// Parsing

struct Parser<'a> {
    base: &'a Arc<FieldDescriptor>,
    vars: &'a [String],
    input: &'a str,
    rest: &'a str,
}

impl<'a> Parser<'a> {
    fn error(&self, detail: impl Into<String>) -> PolyError {
        PolyError::Syntax {
            input: self.input.to_string(),
            detail: detail.into(),
        }
    }

    fn skip_ws(&mut self) {
        self.rest = self.rest.trim_start();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if let Some(r) = self.rest.strip_prefix(c) {
            self.rest = r;
            true
        } else {
            false
        }
    }

    fn parse(mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = MultiPoly::zero(self.base, self.vars);
        self.skip_ws();
        if self.rest.is_empty() {
            return Err(self.error("empty input"));
        }
        let mut negate = self.eat('-');
        loop {
            let term = self.parse_term()?;
            acc = if negate { acc.sub(&term) } else { acc.add(&term) };
            self.skip_ws();
            if self.rest.is_empty() {
                return Ok(acc);
            }
            negate = if self.eat('+') {
                false
            } else if self.eat('-') {
                true
            } else {
                return Err(self.error(format!("unexpected {:?}", self.rest)));
            };
        }
    }

    fn parse_term(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.parse_factor()?;
        while self.eat('*') {
            let f = self.parse_factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<MultiPoly, PolyError> {
        self.skip_ws();
        let Some(first) = self.rest.chars().next() else {
            return Err(self.error("expected a factor"));
        };
        if first == '(' {
            // Parenthesized coefficient field literal.
            let inner_and_tail = crate::exactfield::split_paren_group(&self.rest[1..])
                .ok_or_else(|| self.error("unbalanced parenthesis"))?;
            let (inner, tail) = inner_and_tail;
            let c = FieldElement::parse(self.base, inner)
                .map_err(|e| self.error(format!("bad coefficient literal: {e}")))?;
            self.rest = tail;
            return Ok(MultiPoly::constant(self.base, self.vars, &c));
        }
        if first.is_ascii_digit() {
            let num = self.take_integer()?;
            self.skip_ws();
            if self.rest.starts_with('/') {
                self.rest = &self.rest[1..];
                let den = self.take_integer()?;
                let r: BigRational = BigRational::new(
                    num.parse().map_err(|_| self.error("bad numerator"))?,
                    den.parse().map_err(|_| self.error("bad denominator"))?,
                );
                let c = FieldElement::from_rational(self.base, &r)
                    .map_err(|e| self.error(e.to_string()))?;
                return Ok(MultiPoly::constant(self.base, self.vars, &c));
            }
            let r = BigRational::from_integer(
                num.parse().map_err(|_| self.error("bad integer"))?,
            );
            let c = FieldElement::from_rational(self.base, &r)
                .map_err(|e| self.error(e.to_string()))?;
            return Ok(MultiPoly::constant(self.base, self.vars, &c));
        }
        if first.is_ascii_alphabetic() {
            let name = self.take_identifier();
            let var = MultiPoly::variable(self.base, self.vars, &name)?;
            self.skip_ws();
            if self.rest.starts_with('^') {
                self.rest = &self.rest[1..];
                let e = self.take_integer()?;
                let e: u32 = e.parse().map_err(|_| self.error("bad exponent"))?;
                return Ok(var.pow(e));
            }
            return Ok(var);
        }
        Err(self.error(format!("unexpected {first:?}")))
    }

    fn take_integer(&mut self) -> Result<String, PolyError> {
        self.skip_ws();
        let end = self
            .rest
            .char_indices()
            .find(|(_, c)| !c.is_ascii_digit())
            .map_or(self.rest.len(), |(i, _)| i);
        if end == 0 {
            return Err(self.error("expected a number"));
        }
        let (num, rest) = self.rest.split_at(end);
        self.rest = rest;
        Ok(num.to_string())
    }

    fn take_identifier(&mut self) -> String {
        let end = self
            .rest
            .char_indices()
            .find(|(_, c)| !c.is_ascii_alphanumeric() && *c != '_')
            .map_or(self.rest.len(), |(i, _)| i);
        let (name, rest) = self.rest.split_at(end);
        self.rest = rest;
        name.to_string()
    }
}

// ---------------------------------------------------------------------------
// Exact division, gcd, d-th roots (crate plumbing)

/// Exact polynomial division; `None` when `b` does not divide `a`.
pub(crate) fn exact_div(a: &MultiPoly, b: &MultiPoly) -> Option<MultiPoly> {
    assert!(!b.is_zero(), "division by the zero polynomial");
    let mut rem = a.clone();
    let mut quot = MultiPoly::zero(&a.base, &a.vars);
    let (bm, bc) = b.leading_term()?;
    let bm = bm.clone();
    let bc = bc.clone();
    let bc_inv = bc.inverse().expect("leading coefficient is nonzero");
    while !rem.is_zero() {
        let (rm, rc) = rem.leading_term().expect("nonzero");
        if !bm.divides(rm) {
            return None;
        }
        let qm = rm.quotient(&bm);
        let qc = rc.mul(&bc_inv);
        let mut t = MultiPoly::zero(&a.base, &a.vars);
        t.insert_term(qm, qc);
        rem = rem.sub(&t.mul(b));
        quot = quot.add(&t);
    }
    Some(quot)
}

/// Monic multivariate gcd by primitive pseudo-remainder sequences, recursing
/// on the number of variables.
pub(crate) fn poly_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    a.assert_same_ring(b, "gcd");
    let g = gcd_inner(a, b);
    match g.leading_coefficient() {
        None => g,
        Some(lc) => {
            let inv = lc.inverse().expect("nonzero leading coefficient");
            g.mul_scalar(&inv)
        }
    }
}

fn gcd_inner(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    // Last variable occurring in either operand.
    let nvars = a.vars.len();
    let pivot = (0..nvars).rev().find(|i| {
        a.terms.keys().any(|m| m.0[*i] > 0) || b.terms.keys().any(|m| m.0[*i] > 0)
    });
    let Some(pivot) = pivot else {
        // Two nonzero constants.
        return MultiPoly::one(&a.base, &a.vars);
    };

    let ua = as_univariate(a, pivot);
    let ub = as_univariate(b, pivot);
    let (ca, pa) = primitive_parts(&ua);
    let (cb, pb) = primitive_parts(&ub);
    let content_gcd = gcd_inner(&ca, &cb);

    let (mut f, mut g) = if ua.len() >= ub.len() { (pa, pb) } else { (pb, pa) };
    loop {
        if g.iter().all(MultiPoly::is_zero) {
            break;
        }
        let r = pseudo_remainder(&f, &g);
        let r = if r.is_empty() { r } else { primitive_parts(&r).1 };
        f = g;
        g = r;
    }
    let pp = from_univariate(a, pivot, &f);
    content_gcd.mul(&pp)
}

/// Coefficient list of `p` viewed as a univariate polynomial in
/// `vars[pivot]`, lowest degree first.  Coefficients live in the same ring
/// but do not involve the pivot variable.
fn as_univariate(p: &MultiPoly, pivot: usize) -> Vec<MultiPoly> {
    let deg = p.terms.keys().map(|m| m.0[pivot]).max().unwrap_or(0) as usize;
    let mut out = vec![MultiPoly::zero(&p.base, &p.vars); deg + 1];
    for (m, c) in &p.terms {
        let e = m.0[pivot] as usize;
        let mut exps = m.0.clone();
        exps[pivot] = 0;
        out[e].insert_term(Monomial(exps), c.clone());
    }
    out
}

fn from_univariate(template: &MultiPoly, pivot: usize, coeffs: &[MultiPoly]) -> MultiPoly {
    let mut out = MultiPoly::zero(&template.base, &template.vars);
    for (e, c) in coeffs.iter().enumerate() {
        for (m, v) in &c.terms {
            let mut exps = m.0.clone();
            exps[pivot] = e as u32;
            out.insert_term(Monomial(exps), v.clone());
        }
    }
    out
}

fn trim_univariate(mut u: Vec<MultiPoly>) -> Vec<MultiPoly> {
    while u.last().is_some_and(MultiPoly::is_zero) {
        u.pop();
    }
    u
}

/// `(content, primitive part)` of a univariate coefficient list with at
/// least one nonzero entry.
fn primitive_parts(u: &[MultiPoly]) -> (MultiPoly, Vec<MultiPoly>) {
    let nonzero: Vec<&MultiPoly> = u.iter().filter(|c| !c.is_zero()).collect();
    let first = nonzero.first().expect("coefficient list has a nonzero entry");
    let mut content = (*first).clone();
    for c in &nonzero[1..] {
        content = gcd_inner(&content, c);
        if content.constant_value().is_some_and(|c| !c.is_zero()) {
            break;
        }
    }
    let pp = u
        .iter()
        .map(|c| {
            if c.is_zero() {
                c.clone()
            } else {
                exact_div(c, &content).expect("content divides every coefficient")
            }
        })
        .collect();
    (content, pp)
}

/// One pseudo-division step sequence: multiplies `f` by powers of the leading
/// coefficient of `g` as needed so every division is exact, and returns the
/// final remainder (degree in the pivot below `deg g`).
fn pseudo_remainder(f: &[MultiPoly], g: &[MultiPoly]) -> Vec<MultiPoly> {
    let g = trim_univariate(g.to_vec());
    let dg = g.len() - 1;
    let lg = g.last().expect("nonzero").clone();
    let mut r = trim_univariate(f.to_vec());
    while r.len() > dg {
        let dr = r.len() - 1;
        let lr = r.last().expect("nonzero").clone();
        // r <- lg * r - lr * g * x^{dr - dg}
        let mut next = vec![MultiPoly::zero(&lg.base, &lg.vars); dr + 1];
        for (i, c) in r.iter().enumerate() {
            next[i] = c.mul(&lg);
        }
        for (i, c) in g.iter().enumerate() {
            let idx = i + dr - dg;
            next[idx] = next[idx].sub(&c.mul(&lr));
        }
        r = trim_univariate(next);
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Outcome of an exact polynomial `d`-th root extraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum PolyRootOutcome {
    Root(MultiPoly),
    NotAPower,
    /// Only possible when the coefficient field's own power test is
    /// undecided (cyclotomic coefficients past the search bound).
    Unknown,
}

/// Exact `d`-th root of a polynomial by leading-term recursion: the root's
/// terms are discovered in decreasing graded lexicographic order, each new
/// term being `lt(remainder) / (d * lt(g)^{d-1})`.
pub(crate) fn poly_dth_root(p: &MultiPoly, d: u64) -> Result<PolyRootOutcome, PolyError> {
    if p.is_zero() {
        return Ok(PolyRootOutcome::Root(p.clone()));
    }
    let (lm, lc) = p.leading_term().expect("nonzero");
    if lm.0.iter().any(|e| e % d as u32 != 0) {
        return Ok(PolyRootOutcome::NotAPower);
    }
    let root_mono = Monomial(lm.0.iter().map(|e| e / d as u32).collect());
    let root_coeff = match dth_power_test(lc, d).map_err(|e| PolyError::Syntax {
        input: p.to_string(),
        detail: format!("coefficient power test failed: {e}"),
    })? {
        PowerDecision::Power(c) => c,
        PowerDecision::NotAPower => return Ok(PolyRootOutcome::NotAPower),
        PowerDecision::Unknown => return Ok(PolyRootOutcome::Unknown),
    };
    let mut g = MultiPoly::zero(&p.base, &p.vars);
    g.insert_term(root_mono.clone(), root_coeff.clone());

    // Divisor for successive terms: d * (leading term of g)^{d-1}.
    let d_elem = FieldElement::from_integer(&p.base, d as i64);
    assert!(!d_elem.is_zero(), "characteristic must not divide d");
    let corr_mono = root_mono.scaled(d as u32 - 1);
    let corr_coeff = d_elem.mul(&root_coeff.pow(d as i64 - 1).expect("nonzero"));
    let corr_inv = corr_coeff.inverse().expect("nonzero");

    let mut last_mono = root_mono;
    loop {
        let rem = p.sub(&g.pow(d as u32));
        let Some((rm, rc)) = rem.leading_term() else {
            return Ok(PolyRootOutcome::Root(g));
        };
        if !corr_mono.divides(rm) {
            return Ok(PolyRootOutcome::NotAPower);
        }
        let tm = rm.quotient(&corr_mono);
        if tm >= last_mono {
            return Ok(PolyRootOutcome::NotAPower);
        }
        let tc = rc.mul(&corr_inv);
        last_mono = tm.clone();
        let mut t = MultiPoly::zero(&p.base, &p.vars);
        t.insert_term(tm, tc);
        g = g.add(&t);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Arc<FieldDescriptor> {
        FieldDescriptor::rationals()
    }

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn parse(base: &Arc<FieldDescriptor>, vs: &[String], s: &str) -> MultiPoly {
        MultiPoly::parse(base, vs, s).unwrap()
    }

    #[test]
    fn parse_and_render_canonical_order() {
        let base = q();
        let vs = vars(&["x", "y", "z", "t"]);
        let p = parse(&base, &vs, "x^3+y^3*t+z^3*t^2-3*x*y*z*t");
        // Graded lexicographic, largest first: total degree 5, then the two
        // degree-4 terms ordered by exponent vectors, then x^3.
        assert_eq!(p.to_string(), "z^3*t^2 - 3*x*y*z*t + y^3*t + x^3");
        assert_eq!(parse(&base, &vs, &p.to_string()), p);
        assert_eq!(p.degree_in("t").unwrap(), Some(2));
        assert_eq!(p.degree_in("x").unwrap(), Some(3));
        assert_eq!(p.min_degree_in("t").unwrap(), Some(0));
        assert_eq!(p.total_degree(), Some(5));
        assert!(p.degree_in("q").is_err());
    }

    #[test]
    fn ring_operations() {
        let base = q();
        let vs = vars(&["x", "y"]);
        let sum = parse(&base, &vs, "x + y");
        let diff = parse(&base, &vs, "x - y");
        assert_eq!(sum.mul(&diff), parse(&base, &vs, "x^2 - y^2"));
        assert_eq!(sum.pow(2), parse(&base, &vs, "x^2 + 2*x*y + y^2"));
        assert!(sum.sub(&sum).is_zero());
        let zero = MultiPoly::zero(&base, &vs);
        assert_eq!(zero.total_degree(), None);
        assert_eq!(zero.degree_in("x").unwrap(), None);
    }

    #[test]
    fn specialization_kills_a_variable() {
        let base = q();
        let vs = vars(&["x", "y", "z", "t"]);
        let p = parse(&base, &vs, "x^3+y^3*t+z^3*t^2-3*x*y*z*t");
        let mut assign = BTreeMap::new();
        assign.insert("x".to_string(), Assignment::Element(FieldElement::zero(&base)));
        let specialized = p.specialize(&assign).unwrap();
        assert_eq!(specialized, parse(&base, &vs, "y^3*t + z^3*t^2"));

        // Substituting a polynomial works too: x -> y gives y^3 + ... with
        // the mixed term folded in.
        let mut assign = BTreeMap::new();
        assign.insert(
            "x".to_string(),
            Assignment::Poly(parse(&base, &vs, "y")),
        );
        let merged = p.specialize(&assign).unwrap();
        assert_eq!(merged, parse(&base, &vs, "y^3 + y^3*t + z^3*t^2 - 3*y^2*z*t"));
    }

    #[test]
    fn divide_out_variable_extracts_the_full_power() {
        let base = q();
        let vs = vars(&["y", "z", "t"]);
        let p = parse(&base, &vs, "t*y^3 + t^2*z^3");
        let (m, g) = p.divide_out_variable("t").unwrap();
        assert_eq!(m, 1);
        assert_eq!(g, parse(&base, &vs, "y^3 + t*z^3"));
        let (m0, same) = g.divide_out_variable("t").unwrap();
        assert_eq!(m0, 0);
        assert_eq!(same, g);
        assert!(MultiPoly::zero(&base, &vs).divide_out_variable("t").is_err());
    }

    #[test]
    fn evaluation() {
        let base = q();
        let vs = vars(&["x", "y"]);
        let p = parse(&base, &vs, "x^2 + 1/2*y");
        let mut values = BTreeMap::new();
        values.insert("x".to_string(), FieldElement::from_integer(&base, 3));
        values.insert("y".to_string(), FieldElement::from_integer(&base, 2));
        assert_eq!(p.evaluate(&values).unwrap(), FieldElement::from_integer(&base, 10));
        values.remove("y");
        assert!(p.evaluate(&values).is_err());
    }

    #[test]
    fn exact_division_and_gcd() {
        let base = q();
        let vs = vars(&["x", "y"]);
        let a = parse(&base, &vs, "x^2 - y^2");
        let b = parse(&base, &vs, "x + y");
        assert_eq!(exact_div(&a, &b).unwrap(), parse(&base, &vs, "x - y"));
        assert!(exact_div(&a, &parse(&base, &vs, "x + 1")).is_none());

        let c = parse(&base, &vs, "x^2 + 2*x*y + y^2");
        assert_eq!(poly_gcd(&a, &c), b);
        // Coprime inputs have gcd 1.
        assert!(poly_gcd(&a, &parse(&base, &vs, "x + 2*y")).is_one());
        // gcd with zero returns the monic associate of the other argument.
        let z = MultiPoly::zero(&base, &vs);
        assert_eq!(poly_gcd(&z, &parse(&base, &vs, "2*x + 2*y")), b);
    }

    #[test]
    fn gcd_over_prime_field_coefficients() {
        let base = FieldDescriptor::prime(7).unwrap();
        let vs = vars(&["u", "v"]);
        let f = parse(&base, &vs, "u^2 + 6*v^2"); // u^2 - v^2
        let g = parse(&base, &vs, "u^2 + 2*u*v + v^2");
        assert_eq!(poly_gcd(&f, &g), parse(&base, &vs, "u + v"));
    }

    #[test]
    fn dth_roots() {
        let base = q();
        let vs = vars(&["x", "y"]);
        let cube = parse(&base, &vs, "x + y").pow(3);
        match poly_dth_root(&cube, 3).unwrap() {
            PolyRootOutcome::Root(r) => assert_eq!(r, parse(&base, &vs, "x + y")),
            other => panic!("expected a root, got {other:?}"),
        }
        assert_eq!(
            poly_dth_root(&parse(&base, &vs, "x^3 + x^2"), 3).unwrap(),
            PolyRootOutcome::NotAPower
        );
        assert_eq!(
            poly_dth_root(&parse(&base, &vs, "x^2*y"), 3).unwrap(),
            PolyRootOutcome::NotAPower
        );
        // Negative leading coefficients are fine for odd d.
        let neg = parse(&base, &vs, "1 - x").pow(5);
        match poly_dth_root(&neg, 5).unwrap() {
            PolyRootOutcome::Root(r) => assert_eq!(r, parse(&base, &vs, "1 - x")),
            other => panic!("expected a root, got {other:?}"),
        }
    }

    #[test]
    fn cyclotomic_coefficients_render_with_parens() {
        let base = FieldDescriptor::cyclotomic(3).unwrap();
        let vs = vars(&["x"]);
        let p = parse(&base, &vs, "(1 + w)*x + 2");
        assert_eq!(p.to_string(), "(1 + w)*x + 2");
        assert_eq!(parse(&base, &vs, &p.to_string()), p);
        // A pure w coefficient needs no parentheses to round trip.
        let p = parse(&base, &vs, "(w)*x^2 - x");
        assert_eq!(parse(&base, &vs, &p.to_string()), p);
    }

    #[test]
    fn canonical_comparison_is_a_total_order_on_samples() {
        let base = q();
        let vs = vars(&["x", "y"]);
        let samples = ["0", "1", "x", "y", "x + y", "x^2", "2*x", "x - y"];
        let polys: Vec<MultiPoly> = samples.iter().map(|s| parse(&base, &vs, s)).collect();
        for a in &polys {
            for b in &polys {
                let ab = a.cmp_canonical(b);
                let ba = b.cmp_canonical(a);
                assert_eq!(ab, ba.reverse());
                assert_eq!(ab == Ordering::Equal, a == b);
            }
        }
        // Zero is the least element.
        let zero = MultiPoly::zero(&base, &vs);
        for p in &polys {
            if !p.is_zero() {
                assert_eq!(zero.cmp_canonical(p), Ordering::Less);
            }
        }
    }
}
