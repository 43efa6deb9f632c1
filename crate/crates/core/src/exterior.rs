//! Exterior powers of the degree-`d` forms: the wedge basis, coordinates of
//! exterior vectors, and torus weights of basis elements.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::poly::{binomial, monomials_of_degree, Monomial, Polynomial, Rational};

/// An integer weight of the diagonal torus: the exponents of `χ_1..χ_r`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Character(pub Vec<i64>);

impl Character {
    pub fn new(weights: Vec<i64>) -> Self {
        Character(weights)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    /// Componentwise `self <= other`.
    pub fn dominated_by(&self, other: &Character) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

/// The ambient space `Λ^b S_d` in `r` variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ambient {
    pub r: usize,
    pub d: u32,
    pub b: usize,
}

impl Ambient {
    pub fn new(r: usize, d: u32, b: usize) -> Result<Self> {
        if r == 0 {
            return usage("ambient needs at least one variable");
        }
        let dim = binomial((r + d as usize - 1) as i64, d as i64);
        if b == 0 || num_bigint::BigInt::from(b) > dim {
            return usage(format!("wedge degree b={b} outside 1..={dim} for r={r}, d={d}"));
        }
        Ok(Ambient { r, d, b })
    }

    /// Dimension of `S_d`.
    pub fn forms_dim(&self) -> usize {
        binomial((self.r + self.d as usize - 1) as i64, self.d as i64)
            .try_into()
            .expect("dimension fits in usize")
    }
}

/// A basis element `m_1 ∧ ... ∧ m_b` with `m_1 > ... > m_b` in lex.
///
/// The derived order compares factor tuples lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WedgeIndex(Vec<Monomial>);

impl WedgeIndex {
    /// Sort the factors into basis order and return the permutation sign.
    /// `None` when a factor repeats.
    pub fn normalize(mut factors: Vec<Monomial>) -> Option<(WedgeIndex, bool)> {
        let mut negative = false;
        // insertion sort, descending; each swap flips the sign
        for i in 1..factors.len() {
            let mut j = i;
            while j > 0 && factors[j - 1] < factors[j] {
                factors.swap(j - 1, j);
                negative = !negative;
                j -= 1;
            }
        }
        if factors.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((WedgeIndex(factors), negative))
    }

    /// Strictly decreasing factors, all space-only of degree `d` in at most
    /// `r` variables.
    pub fn new(factors: Vec<Monomial>, ambient: &Ambient) -> Result<WedgeIndex> {
        if factors.len() != ambient.b {
            return usage(format!("wedge has {} factors, expected {}", factors.len(), ambient.b));
        }
        for m in &factors {
            if m.entry_degree() > 0 || m.space_degree() != ambient.d || m.max_space_index() as usize > ambient.r {
                return usage(format!("wedge factor {m} is not a degree-{} monomial in x_1..x_{}", ambient.d, ambient.r));
            }
        }
        if !factors.windows(2).all(|w| w[0] > w[1]) {
            return usage("wedge factors must be strictly decreasing in lex");
        }
        Ok(WedgeIndex(factors))
    }

    pub fn factors(&self) -> &[Monomial] {
        &self.0
    }

    /// The torus weight: the sum of the factors' exponent vectors.
    pub fn weight(&self, r: usize) -> Character {
        let mut w = vec![0i64; r];
        for m in &self.0 {
            for (slot, e) in w.iter_mut().zip(m.space_exponents(r)) {
                *slot += e as i64;
            }
        }
        Character(w)
    }
}

impl fmt::Display for WedgeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "∧")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

pub fn weight_of(w: &WedgeIndex, r: usize) -> Character {
    w.weight(r)
}

/// All basis elements of `Λ^b S_d` in `r` variables, lex descending on
/// tuples.
pub fn wedge_basis(r: usize, d: u32, b: usize) -> Result<Vec<WedgeIndex>> {
    Ambient::new(r, d, b)?;
    let monos = monomials_of_degree(r, d);
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(b);
    choose(&monos, 0, b, &mut chosen, &mut out);
    Ok(out)
}

fn choose(monos: &[Monomial], from: usize, left: usize, chosen: &mut Vec<Monomial>, out: &mut Vec<WedgeIndex>) {
    if left == 0 {
        out.push(WedgeIndex(chosen.clone()));
        return;
    }
    for i in from..=monos.len() - left {
        chosen.push(monos[i].clone());
        choose(monos, i + 1, left - 1, chosen, out);
        chosen.pop();
    }
}

/// The weights of all basis elements, deduplicated and sorted.
pub fn all_weights(ambient: &Ambient) -> Result<BTreeSet<Character>> {
    Ok(wedge_basis(ambient.r, ambient.d, ambient.b)?.iter().map(|w| w.weight(ambient.r)).collect())
}

/// A vector of `Λ^b S_d` with coordinates in the entry-variable ring
/// (constants for numeric points).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorVector {
    ambient: Ambient,
    coords: BTreeMap<WedgeIndex, Polynomial>,
}

impl ExteriorVector {
    pub fn zero(ambient: Ambient) -> Self {
        ExteriorVector { ambient, coords: BTreeMap::new() }
    }

    pub fn from_coords(ambient: Ambient, coords: impl IntoIterator<Item = (WedgeIndex, Polynomial)>) -> Result<Self> {
        let mut v = ExteriorVector::zero(ambient);
        for (w, c) in coords {
            WedgeIndex::new(w.0.clone(), &ambient)?;
            if c.has_space_vars() {
                return usage(format!("coordinate at {w} mentions space variables"));
            }
            v.add_to(w, &c);
        }
        Ok(v)
    }

    pub(crate) fn from_raw(ambient: Ambient, coords: BTreeMap<WedgeIndex, Polynomial>) -> Self {
        debug_assert!(coords.values().all(|c| !c.is_zero()));
        ExteriorVector { ambient, coords }
    }

    fn add_to(&mut self, w: WedgeIndex, c: &Polynomial) {
        let slot = self.coords.entry(w.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coords.remove(&w);
        }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    /// Nonzero coordinates, basis order descending.
    pub fn coords(&self) -> impl Iterator<Item = (&WedgeIndex, &Polynomial)> {
        self.coords.iter().rev()
    }

    pub fn coord(&self, w: &WedgeIndex) -> Polynomial {
        self.coords.get(w).cloned().unwrap_or_default()
    }

    pub fn num_nonzero(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// All coordinates are rational constants.
    pub fn is_numeric(&self) -> bool {
        self.coords.values().all(Polynomial::is_constant)
    }

    pub fn scale(&self, c: &Rational) -> ExteriorVector {
        if c.is_zero() {
            return ExteriorVector::zero(self.ambient);
        }
        ExteriorVector {
            ambient: self.ambient,
            coords: self.coords.iter().map(|(w, p)| (w.clone(), p.scale(c))).collect(),
        }
    }

    pub fn map_coords(&self, mut f: impl FnMut(&Polynomial) -> Polynomial) -> ExteriorVector {
        ExteriorVector {
            ambient: self.ambient,
            coords: self
                .coords
                .iter()
                .map(|(w, p)| (w.clone(), f(p)))
                .filter(|(_, p)| !p.is_zero())
                .collect(),
        }
    }

    /// Weights of the nonzero coordinates.
    pub fn support_weights(&self) -> BTreeSet<Character> {
        self.coords.keys().map(|w| w.weight(self.ambient.r)).collect()
    }
}

/// Split each factor into space monomial → entry-ring coefficient and
/// expand the wedge product multilinearly. Basis elements rejected by
/// `keep` are dropped at the last factor.
pub(crate) fn expand_wedge(
    factors: &[BTreeMap<Monomial, Polynomial>],
    mut keep: impl FnMut(&WedgeIndex) -> bool,
) -> BTreeMap<WedgeIndex, Polynomial> {
    let mut partial: HashMap<Vec<Monomial>, Polynomial> = HashMap::new();
    partial.insert(Vec::new(), Polynomial::one());
    for (k, factor) in factors.iter().enumerate() {
        let last = k + 1 == factors.len();
        let mut next: HashMap<Vec<Monomial>, Polynomial> = HashMap::new();
        for (tuple, c) in &partial {
            for (m, a) in factor {
                // tuple is strictly decreasing; find where m belongs
                let pos = tuple.partition_point(|t| t > m);
                if tuple.get(pos) == Some(m) {
                    continue;
                }
                let mut grown = tuple.clone();
                grown.insert(pos, m.clone());
                if last && !keep(&WedgeIndex(grown.clone())) {
                    continue;
                }
                let mut term = c * a;
                // m moved left past the (tuple.len() - pos) smaller factors
                if (tuple.len() - pos) % 2 == 1 {
                    term = -term;
                }
                *next.entry(grown).or_default() += &term;
            }
        }
        next.retain(|_, c| !c.is_zero());
        partial = next;
    }
    partial.into_iter().map(|(t, c)| (WedgeIndex(t), c)).collect()
}

/// `p_1 ∧ ... ∧ p_b` in coordinates: the coordinate at `(m_1, ..., m_b)` is
/// the `b × b` minor of the coefficient matrix on those columns.
///
/// Factors must be homogeneous of space degree `d` in `x_1..x_r`; their
/// coefficients may involve entry variables.
pub fn wedge_from_factors(ps: &[Polynomial], ambient: Ambient) -> Result<ExteriorVector> {
    if ps.len() != ambient.b {
        return usage(format!("{} factors given for a wedge of degree {}", ps.len(), ambient.b));
    }
    let mut split = Vec::with_capacity(ps.len());
    for p in ps {
        if !p.is_space_homogeneous(ambient.d) {
            return usage(format!("factor {p} is not homogeneous of degree {} in the space variables", ambient.d));
        }
        if p.max_space_index() as usize > ambient.r {
            return usage(format!("factor {p} uses variables beyond x_{}", ambient.r));
        }
        split.push(p.group_by_space_monomial());
    }
    Ok(ExteriorVector::from_raw(ambient, expand_wedge(&split, |_| true)))
}

#[derive(Serialize, Deserialize)]
struct CoordJson {
    wedge: Vec<Vec<u32>>,
    coeff: Polynomial,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct ExteriorVectorJson {
    r: usize,
    d: u32,
    b: usize,
    coords: Vec<CoordJson>,
}

impl From<&ExteriorVector> for ExteriorVectorJson {
    fn from(v: &ExteriorVector) -> Self {
        let Ambient { r, d, b } = v.ambient;
        ExteriorVectorJson {
            r,
            d,
            b,
            coords: v
                .coords()
                .map(|(w, c)| CoordJson {
                    wedge: w.factors().iter().map(|m| m.space_exponents(r)).collect(),
                    coeff: c.clone(),
                })
                .collect(),
        }
    }
}

impl TryFrom<ExteriorVectorJson> for ExteriorVector {
    type Error = Error;

    fn try_from(json: ExteriorVectorJson) -> Result<Self> {
        let ambient = Ambient::new(json.r, json.d, json.b)?;
        let mut coords = Vec::with_capacity(json.coords.len());
        for c in json.coords {
            if c.wedge.iter().any(|e| e.len() != json.r) {
                return Err(Error::Invalid(format!("wedge exponent vectors must have length {}", json.r)));
            }
            let factors = c.wedge.iter().map(|e| Monomial::from_space_exponents(e)).collect();
            let w = WedgeIndex::new(factors, &ambient).map_err(|e| Error::Invalid(e.to_string()))?;
            coords.push((w, c.coeff));
        }
        ExteriorVector::from_coords(ambient, coords)
    }
}

impl Serialize for ExteriorVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ExteriorVectorJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExteriorVector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = ExteriorVectorJson::deserialize(deserializer)?;
        ExteriorVector::try_from(json).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_space_exponents(e)
    }

    fn wedge(es: &[&[u32]]) -> WedgeIndex {
        WedgeIndex(es.iter().map(|e| mono(e)).collect())
    }

    #[test]
    fn basis_examples() {
        let b = wedge_basis(2, 2, 2).unwrap();
        assert_eq!(b, vec![wedge(&[&[2, 0], &[1, 1]]), wedge(&[&[2, 0], &[0, 2]]), wedge(&[&[1, 1], &[0, 2]])]);
        assert_eq!(wedge_basis(2, 1, 2).unwrap(), vec![wedge(&[&[1, 0], &[0, 1]])]);
        assert_eq!(wedge_basis(3, 1, 2).unwrap().len(), 3);
        assert!(wedge_basis(2, 1, 3).is_err());
        assert!(wedge_basis(2, 1, 0).is_err());
    }

    #[test]
    fn basis_sizes_match_binomials() {
        for r in 1..=3usize {
            for d in 0..=3u32 {
                let n = binomial((r + d as usize - 1) as i64, d as i64);
                let n: i64 = n.try_into().unwrap();
                for b in 1..=n.min(3) {
                    let got = wedge_basis(r, d, b as usize).unwrap().len();
                    assert_eq!(num_bigint::BigInt::from(got), binomial(n, b), "r={r} d={d} b={b}");
                }
            }
        }
    }

    #[test]
    fn weights_of_wedges() {
        assert_eq!(wedge(&[&[2, 0], &[1, 1]]).weight(2), Character(vec![3, 1]));
        assert_eq!(wedge(&[&[1, 0], &[0, 1]]).weight(2), Character(vec![1, 1]));
        // x_1^{2l+d} ∧ x_1^d x_3^{2l} with l = 3, d = 1
        assert_eq!(wedge(&[&[7, 0, 0], &[1, 0, 6]]).weight(3), Character(vec![8, 0, 6]));
    }

    #[test]
    fn wedge_of_monomials_and_minors() {
        let amb = Ambient::new(2, 2, 2).unwrap();
        let v = wedge_from_factors(&[p("x_1^2"), p("x_2^2")], amb).unwrap();
        assert_eq!(v.num_nonzero(), 1);
        assert_eq!(v.coord(&wedge(&[&[2, 0], &[0, 2]])), Polynomial::one());

        let v = wedge_from_factors(&[p("x_1^2 + x_1*x_2"), p("x_1*x_2 + x_2^2")], amb).unwrap();
        assert_eq!(v.num_nonzero(), 3);
        for w in wedge_basis(2, 2, 2).unwrap() {
            assert_eq!(v.coord(&w), Polynomial::one(), "at {w}");
        }

        let q = p("3*x_1^2 - x_1*x_2 + 2/5*x_2^2");
        assert!(wedge_from_factors(&[q.clone(), q], amb).unwrap().is_zero());
    }

    #[test]
    fn wedge_sign_for_reversed_factors() {
        let amb = Ambient::new(2, 1, 2).unwrap();
        let v = wedge_from_factors(&[p("x_2"), p("x_1")], amb).unwrap();
        assert_eq!(v.coord(&wedge(&[&[1, 0], &[0, 1]])), Polynomial::from_int(-1));
    }

    #[test]
    fn wedge_rejects_inhomogeneous_factors() {
        let amb = Ambient::new(2, 2, 2).unwrap();
        assert!(wedge_from_factors(&[p("x_1^2 + x_2"), p("x_2^2")], amb).is_err());
        assert!(wedge_from_factors(&[p("x_1^2")], amb).is_err());
        assert!(wedge_from_factors(&[p("x_1^2"), p("x_3^2")], amb).is_err());
    }

    #[test]
    fn symbolic_coefficients_are_allowed() {
        let amb = Ambient::new(2, 1, 2).unwrap();
        let v = wedge_from_factors(&[p("x_1"), p("g_1_2*x_1 + x_2")], amb).unwrap();
        assert_eq!(v.coord(&wedge(&[&[1, 0], &[0, 1]])), Polynomial::one());
        let v = wedge_from_factors(&[p("x_1 + g_1_2*x_2"), p("x_1 + x_2")], amb).unwrap();
        assert_eq!(v.coord(&wedge(&[&[1, 0], &[0, 1]])), p("1 - g_1_2"));
    }

    #[test]
    fn normalize_reports_sign() {
        let (w, neg) = WedgeIndex::normalize(vec![mono(&[0, 2]), mono(&[1, 1]), mono(&[2, 0])]).unwrap();
        assert_eq!(w, wedge(&[&[2, 0], &[1, 1], &[0, 2]]));
        assert!(neg);
        assert!(WedgeIndex::normalize(vec![mono(&[0, 2]), mono(&[0, 2])]).is_none());
    }

    #[test]
    fn json_layout() {
        let amb = Ambient::new(2, 2, 2).unwrap();
        let v = wedge_from_factors(&[p("x_1^2"), p("x_1*x_2 - 1/2*x_2^2")], amb).unwrap();
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(
            text,
            r#"{"r":2,"d":2,"b":2,"coords":[{"wedge":[[2,0],[1,1]],"coeff":"1"},{"wedge":[[2,0],[0,2]],"coeff":"-1/2"}]}"#
        );
        let back: ExteriorVector = serde_json::from_str(&text).unwrap();
        assert_eq!(back, v);
        let bad = r#"{"r":2,"d":2,"b":2,"coords":[{"wedge":[[1,1],[2,0]],"coeff":"1"}]}"#;
        assert!(serde_json::from_str::<ExteriorVector>(bad).is_err());
    }
}
