//! Buchberger's algorithm over the rationals.
//!
//! Polynomials are converted to a dense-exponent form over the variables
//! that actually occur, sorted by variable position, so the first variable
//! is the most significant one in both supported orders.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::time::Instant;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Rational, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum MonomialOrder {
    #[default]
    #[serde(rename = "lex")]
    Lex,
    #[serde(rename = "grevlex")]
    GradedReverseLex,
}

impl MonomialOrder {
    fn cmp(self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GradedReverseLex => {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                da.cmp(&db).then_with(|| {
                    // smaller exponent in the last differing variable wins
                    for (x, y) in a.iter().zip(b).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::GradedReverseLex => write!(f, "grevlex"),
        }
    }
}

impl std::str::FromStr for MonomialOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex" => Ok(MonomialOrder::Lex),
            "grevlex" => Ok(MonomialOrder::GradedReverseLex),
            other => Err(Error::Usage(format!("unknown monomial order `{other}` (expected lex or grevlex)"))),
        }
    }
}

/// A finitely generated ideal. Zero generators are dropped, so the zero
/// ideal has no generators at all.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Ideal {
    generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(generators: impl IntoIterator<Item = Polynomial>) -> Self {
        Ideal {
            generators: generators.into_iter().filter(|p| !p.is_zero()).collect(),
        }
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }
}

/// A reduced Gröbner basis: monic, inter-reduced, sorted by leading
/// monomial (descending).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    elements: Vec<Polynomial>,
    order: MonomialOrder,
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Normal form of `p`.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        divide(p, &self.elements, self.order).1
    }
}

/// True iff the basis is `{1}`.
pub fn contains_one(basis: &GroebnerBasis) -> bool {
    basis.elements.len() == 1 && basis.elements[0] == Polynomial::one()
}

// ---------------------------------------------------------------------------
// dense-exponent working form

#[derive(Clone, Debug)]
struct Ring {
    vars: Vec<Var>,
    order: MonomialOrder,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Term {
    exps: Vec<u32>,
    coeff: Rational,
}

/// Terms sorted strictly descending in the ring's order.
#[derive(Clone, Debug, PartialEq, Eq)]
struct DPoly(Vec<Term>);

impl Ring {
    fn for_polys<'a>(polys: impl IntoIterator<Item = &'a Polynomial>, order: MonomialOrder) -> Ring {
        let vars: BTreeSet<Var> = polys.into_iter().flat_map(|p| p.variables()).collect();
        Ring {
            vars: vars.into_iter().collect(),
            order,
        }
    }

    fn to_dense(&self, p: &Polynomial) -> DPoly {
        let mut terms: Vec<Term> = p
            .terms()
            .map(|(m, c)| Term {
                exps: self.vars.iter().map(|&v| m.exponent(v)).collect(),
                coeff: c.clone(),
            })
            .collect();
        terms.sort_by(|a, b| self.order.cmp(&b.exps, &a.exps));
        DPoly(terms)
    }

    fn to_poly(&self, p: &DPoly) -> Polynomial {
        Polynomial::from_terms(p.0.iter().map(|t| {
            let m = Monomial::from_factors(self.vars.iter().copied().zip(t.exps.iter().copied()));
            (m, t.coeff.clone())
        }))
    }

    /// `a - c * x^shift * b`.
    fn sub_scaled(&self, a: &DPoly, c: &Rational, shift: &[u32], b: &DPoly) -> DPoly {
        let mut out = Vec::with_capacity(a.0.len() + b.0.len());
        let mut ia = a.0.iter().peekable();
        let mut ib = b.0.iter().map(|t| Term {
            exps: t.exps.iter().zip(shift).map(|(x, y)| x + y).collect(),
            coeff: -(c * &t.coeff),
        });
        let mut next_b = ib.next();
        loop {
            match (ia.peek(), &next_b) {
                (None, None) => break,
                (Some(_), None) => out.push(ia.next().unwrap().clone()),
                (None, Some(_)) => {
                    out.push(next_b.take().unwrap());
                    next_b = ib.next();
                }
                (Some(ta), Some(tb)) => match self.order.cmp(&ta.exps, &tb.exps) {
                    Ordering::Greater => out.push(ia.next().unwrap().clone()),
                    Ordering::Less => {
                        out.push(next_b.take().unwrap());
                        next_b = ib.next();
                    }
                    Ordering::Equal => {
                        let sum = &ta.coeff + &tb.coeff;
                        let exps = ta.exps.clone();
                        ia.next();
                        next_b = ib.next();
                        if !sum.is_zero() {
                            out.push(Term { exps, coeff: sum });
                        }
                    }
                },
            }
        }
        DPoly(out)
    }
}

impl DPoly {
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn lead(&self) -> &Term {
        &self.0[0]
    }

    fn is_nonzero_constant(&self) -> bool {
        self.0.len() == 1 && self.0[0].exps.iter().all(|&e| e == 0)
    }

    fn make_monic(&mut self) {
        if self.0.is_empty() {
            return;
        }
        let inv = self.0[0].coeff.recip();
        for t in &mut self.0 {
            t.coeff *= &inv;
        }
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn quotient(b: &[u32], a: &[u32]) -> Vec<u32> {
    b.iter().zip(a).map(|(y, x)| y - x).collect()
}

fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Full reduction of `p` modulo `basis` (every term, not only the lead).
fn normal_form(ring: &Ring, p: &DPoly, basis: &[DPoly]) -> DPoly {
    let mut rest = p.clone();
    let mut remainder: Vec<Term> = Vec::new();
    while !rest.is_zero() {
        let lt = rest.lead().clone();
        match basis.iter().find(|g| !g.is_zero() && divides(&g.lead().exps, &lt.exps)) {
            Some(g) => {
                let c = &lt.coeff / &g.lead().coeff;
                let shift = quotient(&lt.exps, &g.lead().exps);
                rest = ring.sub_scaled(&rest, &c, &shift, g);
            }
            None => {
                remainder.push(lt);
                rest.0.remove(0);
            }
        }
    }
    DPoly(remainder)
}

fn s_polynomial(ring: &Ring, f: &DPoly, g: &DPoly) -> DPoly {
    let l = lcm(&f.lead().exps, &g.lead().exps);
    let sf = quotient(&l, &f.lead().exps);
    let sg = quotient(&l, &g.lead().exps);
    // f, g are monic
    let zero = DPoly(Vec::new());
    let a = ring.sub_scaled(&zero, &-Rational::one(), &sf, f);
    ring.sub_scaled(&a, &Rational::one(), &sg, g)
}

/// Multivariate division: `p = Σ q_i d_i + r` with no term of `r`
/// divisible by any leading term. Deterministic in divisor order.
pub fn divide(p: &Polynomial, divisors: &[Polynomial], order: MonomialOrder) -> (Vec<Polynomial>, Polynomial) {
    let ring = Ring::for_polys(std::iter::once(p).chain(divisors), order);
    let ds: Vec<DPoly> = divisors.iter().map(|d| ring.to_dense(d)).collect();
    let mut quotients: Vec<Vec<Term>> = vec![Vec::new(); ds.len()];
    let mut rest = ring.to_dense(p);
    let mut remainder = Vec::new();
    while !rest.is_zero() {
        let lt = rest.lead().clone();
        match ds.iter().position(|d| !d.is_zero() && divides(&d.lead().exps, &lt.exps)) {
            Some(i) => {
                let c = &lt.coeff / &ds[i].lead().coeff;
                let shift = quotient(&lt.exps, &ds[i].lead().exps);
                rest = ring.sub_scaled(&rest, &c, &shift, &ds[i]);
                quotients[i].push(Term { exps: shift, coeff: c });
            }
            None => {
                remainder.push(lt);
                rest.0.remove(0);
            }
        }
    }
    let qs = quotients.into_iter().map(|q| ring.to_poly(&DPoly(q))).collect();
    (qs, ring.to_poly(&DPoly(remainder)))
}

/// Reduced Gröbner basis of `ideal`.
pub fn buchberger(ideal: &Ideal, order: MonomialOrder) -> GroebnerBasis {
    buchberger_until(ideal, order, None).expect("no deadline was set")
}

/// Reduced Gröbner basis, giving up with [`Error::Interrupted`] once
/// `deadline` passes.
pub fn buchberger_until(ideal: &Ideal, order: MonomialOrder, deadline: Option<Instant>) -> Result<GroebnerBasis> {
    let ring = Ring::for_polys(ideal.generators(), order);
    let one = || GroebnerBasis {
        elements: vec![Polynomial::one()],
        order,
    };

    let mut basis: Vec<DPoly> = Vec::new();
    for g in ideal.generators() {
        let mut d = ring.to_dense(g);
        d.make_monic();
        if d.is_nonzero_constant() {
            return Ok(one());
        }
        basis.push(d);
    }

    let mut pending: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.push((i, j));
        }
    }
    let mut pending_set: HashSet<(usize, usize)> = pending.iter().copied().collect();

    while !pending.is_empty() {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(Error::Interrupted);
        }
        // normal strategy: smallest lcm of leading monomials first
        let pick = (0..pending.len())
            .min_by(|&a, &b| {
                let (i, j) = pending[a];
                let (k, l) = pending[b];
                let la = lcm(&basis[i].lead().exps, &basis[j].lead().exps);
                let lb = lcm(&basis[k].lead().exps, &basis[l].lead().exps);
                order.cmp(&la, &lb).then((i, j).cmp(&(k, l)))
            })
            .expect("nonempty");
        let (i, j) = pending.swap_remove(pick);
        pending_set.remove(&(i, j));

        let (li, lj) = (&basis[i].lead().exps, &basis[j].lead().exps);
        if coprime(li, lj) {
            continue;
        }
        let l = lcm(li, lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(&basis[k].lead().exps, &l)
                && !pending_set.contains(&(i.min(k), i.max(k)))
                && !pending_set.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }

        let s = s_polynomial(&ring, &basis[i], &basis[j]);
        let mut h = normal_form(&ring, &s, &basis);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        if h.is_nonzero_constant() {
            return Ok(one());
        }
        let n = basis.len();
        basis.push(h);
        for k in 0..n {
            pending.push((k, n));
            pending_set.insert((k, n));
        }
    }

    Ok(GroebnerBasis {
        elements: reduce_basis(&ring, basis).iter().map(|g| ring.to_poly(g)).collect(),
        order,
    })
}

/// Minimalize, inter-reduce, make monic, and sort descending by leading
/// monomial.
fn reduce_basis(ring: &Ring, basis: Vec<DPoly>) -> Vec<DPoly> {
    let mut minimal: Vec<DPoly> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            k != idx
                && divides(&h.lead().exps, &g.lead().exps)
                // among equal leading monomials keep the first one
                && (h.lead().exps != g.lead().exps || k < idx)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for idx in 0..minimal.len() {
        let others: Vec<DPoly> = minimal.iter().enumerate().filter(|&(k, _)| k != idx).map(|(_, g)| g.clone()).collect();
        let mut g = normal_form(ring, &minimal[idx], &others);
        g.make_monic();
        reduced.push(g);
    }
    reduced.sort_by(|a, b| ring.order.cmp(&b.lead().exps, &a.lead().exps));
    reduced
}

/// Whether the zero set of `ideal` over the algebraic closure is nonempty.
pub fn is_solvable(ideal: &Ideal) -> bool {
    !contains_one(&buchberger(ideal, MonomialOrder::Lex))
}

pub fn is_solvable_until(ideal: &Ideal, order: MonomialOrder, deadline: Option<Instant>) -> Result<bool> {
    Ok(!contains_one(&buchberger_until(ideal, order, deadline)?))
}
