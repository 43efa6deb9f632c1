//! State avoidance, state-polytope membership and the semistability
//! decision procedure, plus Hilbert-point bookkeeping.
//!
//! A point `v` is unstable exactly when some `u q` (upper unipotent times
//! permutation) moves every weight of the state strictly to one side of a
//! hyperplane through `ξ`. For each permutation `q` and candidate covector
//! `ω`, the set of such `u` is the zero set of the coordinates of `u.(q.v)`
//! whose weights lie in `C_ω = {χ : ω(χ) <= ω(ξ)}`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::action::{
    act_on_exterior, act_on_exterior_filtered, pair, permutation_matrix, state, symbolic_unipotent, Covector,
    MatrixElement, Permutation,
};
use crate::error::{usage, Error, Result};
use crate::exterior::{all_weights, wedge_from_factors, Ambient, Character, ExteriorVector};
use crate::groebner::{buchberger_until, contains_one, is_solvable_until, Ideal, MonomialOrder};
use crate::lp::feasible_point;
use crate::poly::{binomial, monomials_of_degree, Monomial, Polynomial, Rational, Var};
use crate::reduction::{ESCInstance, SCInstance};
use crate::unipoly::UniPoly;

/// Order used for the consistency checks inside the decision procedure.
const SOLVE_ORDER: MonomialOrder = MonomialOrder::GradedReverseLex;

/// `ξ = (db/r, ..., db/r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiPoint {
    coords: Vec<Rational>,
}

impl XiPoint {
    /// A point on the diagonal; all entries must be equal.
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.is_empty() {
            return usage("ξ must have at least one entry");
        }
        if coords.iter().any(|c| *c != coords[0]) {
            return usage("ξ must have all entries equal");
        }
        Ok(XiPoint { coords })
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

pub fn xi_point(d: u32, b: usize, r: usize) -> Result<XiPoint> {
    if r == 0 {
        return usage("ξ needs r >= 1");
    }
    let entry = Rational::new(BigInt::from(d) * BigInt::from(b), BigInt::from(r));
    Ok(XiPoint { coords: vec![entry; r] })
}

/// Outcome of [`is_semistable`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub semistable: bool,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Certificate {
    /// A pair `(q, ω)` whose avoidance ideal is consistent, with its reduced
    /// Gröbner basis.
    Unstable {
        q: Permutation,
        omega: Covector,
        groebner: Vec<Polynomial>,
    },
    /// Number of `(q, ω)` pairs checked, all inconsistent.
    Exhausted { checked_pairs: usize },
}

fn dominated_by_some(exps: &[u32], chars: &BTreeSet<Character>) -> bool {
    chars
        .iter()
        .any(|chi| exps.iter().zip(chi.as_slice()).all(|(&e, &w)| i64::from(e) <= w))
}

/// The coordinates of `u.v` at basis elements with weight in `chars`, for the
/// generic upper unipotent `u`; their common zeros are the `u` removing
/// every character of `chars` from the state.
pub fn coefficient_ideal(v: &ExteriorVector, chars: &BTreeSet<Character>) -> Result<Ideal> {
    if chars.is_empty() {
        return usage("the character set must be nonempty");
    }
    if !v.is_numeric() {
        return usage("coefficient_ideal needs a point with rational coordinates");
    }
    let r = v.ambient().r;
    if let Some(bad) = chars.iter().find(|c| c.len() != r) {
        return usage(format!("character {bad} does not match r = {r}"));
    }
    let u = symbolic_unipotent(r);
    // a factor of a target wedge is bounded by the target weight
    let space_keep = |m: &Monomial| dominated_by_some(&m.space_exponents(r), chars);
    let wedge_keep = |w: &crate::exterior::WedgeIndex| chars.contains(&w.weight(r));
    let image = act_on_exterior_filtered(&u, v, &space_keep, &wedge_keep)?;
    Ok(Ideal::new(image.coords().map(|(_, c)| c.clone())))
}

pub fn solve_sc(inst: &SCInstance) -> Result<bool> {
    solve_esc(&inst.to_esc())
}

pub fn solve_esc(inst: &ESCInstance) -> Result<bool> {
    solve_esc_until(inst, None)
}

pub fn solve_esc_until(inst: &ESCInstance, deadline: Option<Instant>) -> Result<bool> {
    let ideal = coefficient_ideal(inst.point(), inst.characters())?;
    is_solvable_until(&ideal, SOLVE_ORDER, deadline)
}

/// The assignment `g_i_j ↦ g[i][j]` for a numeric upper unipotent matrix.
pub fn unipotent_assignment(g: &MatrixElement) -> Result<BTreeMap<Var, Polynomial>> {
    if !g.is_numeric() {
        return usage("the matrix must be numeric");
    }
    let r = g.size();
    let mut out = BTreeMap::new();
    for i in 1..=r {
        for j in 1..=r {
            let e = g.entry(i, j);
            let expected_zero = i > j;
            if (i == j && !e.constant_value().is_some_and(|c| c.is_one())) || (expected_zero && !e.is_zero()) {
                return usage(format!("{g} is not upper unipotent"));
            }
            if i < j {
                out.insert(Var::g(i as u32, j as u32), e.clone());
            }
        }
    }
    Ok(out)
}

/// Whether `ξ` lies in the convex hull of `weights`, by exact LP.
pub fn in_hull(weights: &BTreeSet<Character>, xi: &XiPoint) -> Result<bool> {
    if weights.is_empty() {
        return usage("the weight set must be nonempty");
    }
    if let Some(bad) = weights.iter().find(|w| w.len() != xi.len()) {
        return usage(format!("weight {bad} does not match ξ of length {}", xi.len()));
    }
    let ws: Vec<&Character> = weights.iter().collect();
    let mut a = vec![vec![Rational::one(); ws.len()]];
    let mut b = vec![Rational::one()];
    for k in 0..xi.len() {
        a.push(ws.iter().map(|w| Rational::from_integer(w.as_slice()[k].into())).collect());
        b.push(xi.coords()[k].clone());
    }
    Ok(feasible_point(&a, &b).is_some())
}

/// Reduced row echelon form; zero rows are dropped.
fn rref(mut rows: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for x in rows[rank].iter_mut() {
            *x /= &pivot;
        }
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

/// The null space of `rows` when it is one-dimensional, as a primitive
/// integer vector.
fn primitive_normal(rows: Vec<Vec<Rational>>, n: usize) -> Option<Vec<BigInt>> {
    let reduced = rref(rows);
    if reduced.len() + 1 != n {
        return None;
    }
    let pivots: Vec<usize> = reduced
        .iter()
        .map(|row| row.iter().position(|x| !x.is_zero()).expect("nonzero row"))
        .collect();
    let free = (0..n).find(|c| !pivots.contains(c))?;
    let mut v = vec![Rational::zero(); n];
    v[free] = Rational::one();
    for (row, &p) in reduced.iter().zip(&pivots) {
        v[p] = -row[free].clone();
    }
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Some(ints.into_iter().map(|x| x / &gcd).collect())
}

fn for_each_subset<T>(items: &[T], k: usize, f: &mut impl FnMut(&[&T])) {
    fn go<'a, T>(items: &'a [T], from: usize, k: usize, chosen: &mut Vec<&'a T>, f: &mut impl FnMut(&[&T])) {
        if chosen.len() == k {
            f(chosen);
            return;
        }
        for i in from..=items.len() - (k - chosen.len()) {
            chosen.push(&items[i]);
            go(items, i + 1, k, chosen, f);
            chosen.pop();
        }
    }
    if k <= items.len() {
        go(items, 0, k, &mut Vec::with_capacity(k), f);
    }
}

/// Finite family of covectors separating `ξ` from every subset of the
/// weights of `Λ^b S_d` whose hull misses `ξ`.
///
/// For every `r-1` weights spanning a hyperplane of the affine plane
/// `Σ = db`, both orientations of its primitive normal orthogonal to
/// `(1, ..., 1)`; plus every `e_i - e_j`. Covectors that are nowhere above
/// `ξ` on the weights are dropped. Sorted and deduplicated.
pub fn candidate_covectors(r: usize, d: u32, b: usize) -> Result<Vec<Covector>> {
    let ambient = Ambient::new(r, d, b)?;
    let weights: Vec<Character> = all_weights(&ambient)?.into_iter().collect();
    let mut normals: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut push = |n: Vec<BigInt>| {
        let small: Option<Vec<i64>> = n.iter().map(ToPrimitive::to_i64).collect();
        let small = small.expect("normals of small weights fit in i64");
        normals.insert(small.iter().map(|x| -x).collect());
        normals.insert(small);
    };
    if r >= 2 {
        for_each_subset(&weights, r - 1, &mut |subset: &[&Character]| {
            let mut rows = vec![vec![Rational::one(); r]];
            let base = subset[0].as_slice();
            for w in &subset[1..] {
                rows.push(w.as_slice().iter().zip(base).map(|(a, b)| Rational::from_integer((a - b).into())).collect());
            }
            if let Some(n) = primitive_normal(rows, r) {
                push(n);
            }
        });
    }
    for i in 0..r {
        for j in 0..r {
            if i != j {
                let mut e = vec![0i64; r];
                e[i] = 1;
                e[j] = -1;
                normals.insert(e);
            }
        }
    }
    let xi = xi_point(d, b, r)?;
    let mut out = Vec::new();
    for n in normals {
        let omega = Covector::from_ints(&n);
        let at_xi = omega.eval(xi.coords());
        let mut above = false;
        for w in &weights {
            if pair(&omega, w)? > at_xi {
                above = true;
                break;
            }
        }
        if above {
            out.push(omega);
        }
    }
    Ok(out)
}

/// `C_ω = {χ ∈ W : ω(χ) <= ω(ξ)}`.
pub fn lower_characters(weights: &BTreeSet<Character>, omega: &Covector, xi: &XiPoint) -> Result<BTreeSet<Character>> {
    let at_xi = omega.eval(xi.coords());
    let mut out = BTreeSet::new();
    for w in weights {
        if pair(omega, w)? <= at_xi {
            out.insert(w.clone());
        }
    }
    Ok(out)
}

/// Limits for [`is_semistable_with`].
#[derive(Clone, Copy, Debug, Default)]
pub struct SearchOptions {
    /// Worker threads; 0 and 1 both mean sequential.
    pub jobs: usize,
    pub deadline: Option<Instant>,
}

pub fn is_semistable(v: &ExteriorVector) -> Result<Verdict> {
    is_semistable_with(v, SearchOptions::default())
}

/// Checks every `(q, ω)` with `q` in lex order (outer) and `ω` in
/// [`candidate_covectors`] order (inner). The reported certificate is the
/// first consistent pair in that order regardless of `jobs`.
pub fn is_semistable_with(v: &ExteriorVector, options: SearchOptions) -> Result<Verdict> {
    if v.is_zero() {
        return usage("the point must be nonzero");
    }
    if !v.is_numeric() {
        return usage("semistability needs a point with rational coordinates");
    }
    let ambient = v.ambient();
    let (r, d, b) = (ambient.r, ambient.d, ambient.b);
    let xi = xi_point(d, b, r)?;
    let weights = all_weights(&ambient)?;
    let mut omegas = Vec::new();
    for omega in candidate_covectors(r, d, b)? {
        let lower = lower_characters(&weights, &omega, &xi)?;
        if !lower.is_empty() {
            omegas.push((omega, lower));
        }
    }
    let perms = Permutation::all(r);
    let mut moved = Vec::with_capacity(perms.len());
    for q in &perms {
        moved.push(act_on_exterior(&permutation_matrix(q), v)?);
    }
    let total = perms.len() * omegas.len();

    // Some(basis) when the pair's avoidance ideal is consistent
    let check = |index: usize| -> Result<Option<Vec<Polynomial>>> {
        let (qi, oi) = (index / omegas.len(), index % omegas.len());
        let ideal = coefficient_ideal(&moved[qi], &omegas[oi].1)?;
        let basis = buchberger_until(&ideal, SOLVE_ORDER, options.deadline)?;
        Ok((!contains_one(&basis)).then(|| basis.elements().to_vec()))
    };

    let found = if options.jobs <= 1 {
        let mut found = None;
        for index in 0..total {
            if let Some(basis) = check(index)? {
                found = Some((index, basis));
                break;
            }
        }
        found
    } else {
        search_parallel(total, options.jobs, &check)?
    };

    Ok(match found {
        Some((index, groebner)) => Verdict {
            semistable: false,
            certificate: Certificate::Unstable {
                q: perms[index / omegas.len()].clone(),
                omega: omegas[index % omegas.len()].0.clone(),
                groebner,
            },
        },
        None => Verdict {
            semistable: true,
            certificate: Certificate::Exhausted { checked_pairs: total },
        },
    })
}

type Hit = (usize, Vec<Polynomial>);

/// Lowest index with a hit. Workers claim indices in increasing order and
/// stop once past the best hit, so every lower index is checked.
fn search_parallel(
    total: usize,
    jobs: usize,
    check: &(dyn Fn(usize) -> Result<Option<Vec<Polynomial>>> + Sync),
) -> Result<Option<Hit>> {
    let next = AtomicUsize::new(0);
    let best = AtomicUsize::new(usize::MAX);
    let hits: Mutex<Vec<Hit>> = Mutex::new(Vec::new());
    let failure: Mutex<Option<(usize, Error)>> = Mutex::new(None);
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(total.max(1)) {
            scope.spawn(|| loop {
                let index = next.fetch_add(1, Ordering::SeqCst);
                if index >= total || index > best.load(Ordering::SeqCst) {
                    break;
                }
                match check(index) {
                    Ok(Some(basis)) => {
                        best.fetch_min(index, Ordering::SeqCst);
                        hits.lock().expect("no poisoned lock").push((index, basis));
                    }
                    Ok(None) => {}
                    Err(e) => {
                        let mut slot = failure.lock().expect("no poisoned lock");
                        if slot.as_ref().is_none_or(|(i, _)| index < *i) {
                            *slot = Some((index, e));
                        }
                        best.fetch_min(index, Ordering::SeqCst);
                    }
                }
            });
        }
    });
    let hit = hits.into_inner().expect("no poisoned lock").into_iter().min_by_key(|(i, _)| *i);
    if let Some((fail_index, e)) = failure.into_inner().expect("no poisoned lock") {
        if hit.as_ref().is_none_or(|(i, _)| fail_index < *i) {
            return Err(e);
        }
    }
    Ok(hit)
}

/// Whether `ξ` lies in the state polytope of `g.v`.
pub fn delta_contains_xi(v: &ExteriorVector, g: &MatrixElement) -> Result<bool> {
    if g.determinant()?.is_zero() {
        return usage(format!("{g} is singular"));
    }
    let ambient = v.ambient();
    let moved = act_on_exterior(g, v)?;
    let weights = state(&moved)?;
    if weights.is_empty() {
        return usage("the point must be nonzero");
    }
    in_hull(&weights, &xi_point(ambient.d, ambient.b, ambient.r)?)
}

/// The point of `Λ^b S_d` spanned by the degree-`d` part of the ideal
/// generated by `gens` in `x_1..x_r`, with `b = dim I_d`.
pub fn hilbert_point(gens: &[Polynomial], r: usize, d: u32) -> Result<(ExteriorVector, usize)> {
    if r == 0 {
        return usage("r must be at least 1");
    }
    let basis = monomials_of_degree(r, d);
    let column: BTreeMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for f in gens {
        if f.is_zero() {
            continue;
        }
        if f.has_entry_vars() || f.max_space_index() as usize > r {
            return usage(format!("{f} is not a polynomial in x_1..x_{r}"));
        }
        let e = f.degree();
        if !f.is_space_homogeneous(e) {
            return usage(format!("{f} is not homogeneous"));
        }
        if e > d {
            return usage(format!("{f} has degree {e} > d = {d}"));
        }
        for m in monomials_of_degree(r, d - e) {
            let mut row = vec![Rational::zero(); basis.len()];
            for (t, c) in f.terms() {
                row[column[&t.mul(&m)]] = c.clone();
            }
            rows.push(row);
        }
    }
    let reduced = rref(rows);
    if reduced.is_empty() {
        return usage(format!("the ideal has no elements of degree {d}"));
    }
    let b = reduced.len();
    let factors: Vec<Polynomial> = reduced
        .into_iter()
        .map(|row| Polynomial::from_terms(basis.iter().cloned().zip(row)))
        .collect();
    let point = wedge_from_factors(&factors, Ambient::new(r, d, b)?)?;
    Ok((point, b))
}

/// `Q(d) = C(r+d-1, d) - P(d)`, the codimension of the degree-`d` part.
pub fn q_of_d(p: &UniPoly, r: usize, d: u32) -> Result<BigInt> {
    let value = p.eval_int(d.into());
    if !value.is_integer() {
        return usage(format!("P({d}) = {value} is not an integer"));
    }
    let value = value.to_integer();
    if value.is_negative() {
        return usage(format!("P({d}) = {value} is negative"));
    }
    let q = binomial(r as i64 + d as i64 - 1, d as i64) - value;
    if !q.is_positive() {
        return usage(format!("Q({d}) = {q}: the degree-{d} part of the ideal would be empty"));
    }
    Ok(q)
}

const GOTZMANN_LIMIT: u64 = 1_000_000;

/// The number of summands in `P(t) = Σ_{i=1}^{s} C(t + a_i - i + 1, a_i)`,
/// `a_1 >= ... >= a_s >= 0`, found greedily from the top degree down.
pub fn gotzmann_number(p: &UniPoly) -> Result<u64> {
    let mut rest = p.clone();
    let mut s: u64 = 0;
    while !rest.is_zero() {
        if !rest.leading_coeff().is_positive() {
            return usage(format!("{p} has no Gotzmann decomposition"));
        }
        if s == GOTZMANN_LIMIT {
            return usage(format!("{p} needs more than {GOTZMANN_LIMIT} summands"));
        }
        let a = rest.degree().expect("nonzero") as u32;
        // summand i = s + 1: C(t + a - s, a)
        rest = &rest - &UniPoly::binomial(i64::from(a) - s as i64, a);
        s += 1;
    }
    if s == 0 {
        return usage("the zero polynomial has no Gotzmann decomposition");
    }
    Ok(s)
}
