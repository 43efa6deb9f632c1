//! Polynomial-system solvability reduced to state avoidance.
//!
//! A system `p_0, ..., p_{l-3}` in `x_2..x_r` becomes a point of
//! `Λ^2 S_{2l+d}` in `r + 1` variables and the character
//! `χ_1^{2d+2l} χ_{r+1}^{2l}`. Some upper unipotent `u` removes the
//! character from the state of `u.v` exactly when the system has a common
//! zero over the algebraic closure.
//!
//! Under the generic unipotent `u`, the coordinates of `u.v` carrying that
//! character are spanned by the polynomials returned from [`f_polys`], and
//! after the substitution `F = F_ψ` by those from [`pi_polys`]:
//! `π_j = K_j g^{2l-1} + ψ̃_j g^j` with `g = g_{1,r+1}` and `K_j` the
//! nonzero constant `(2l-1)!/(2l-1-j)! · alternating_sum(l, j)`. Choosing
//! `ψ_0, ψ_1` as `-K_0, -K_1` forces `g = 1` on the zero set, and the
//! remaining `π_j` then restrict to the `p_i`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::action::{upper_unipotent, MatrixElement};
use crate::error::{usage, Error, Result};
use crate::exterior::{wedge_from_factors, Ambient, Character, ExteriorVector, WedgeIndex};
use crate::poly::{binomial, factorial, Monomial, Polynomial, Rational, Var};
use crate::unipoly::UniPoly;

/// Polynomials `p_0..p_{l-3}` in `x_2..x_r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PolySystemJson", into = "PolySystemJson")]
pub struct PolySystem {
    r: usize,
    polys: Vec<Polynomial>,
}

#[derive(Serialize, Deserialize)]
struct PolySystemJson {
    r: usize,
    polys: Vec<Polynomial>,
}

impl TryFrom<PolySystemJson> for PolySystem {
    type Error = Error;
    fn try_from(json: PolySystemJson) -> Result<Self> {
        PolySystem::new(json.r, json.polys)
    }
}

impl From<PolySystem> for PolySystemJson {
    fn from(p: PolySystem) -> Self {
        PolySystemJson { r: p.r, polys: p.polys }
    }
}

impl PolySystem {
    pub fn new(r: usize, polys: Vec<Polynomial>) -> Result<Self> {
        if r < 2 {
            return usage("a system needs r >= 2 (variables x_2..x_r)");
        }
        if polys.is_empty() {
            return usage("a system needs at least one polynomial");
        }
        for p in &polys {
            if p.has_entry_vars() {
                return usage(format!("{p} mentions matrix-entry variables"));
            }
            if p.variables().contains(&Var::x(1)) {
                return usage(format!("{p} mentions x_1; systems live in x_2..x_r"));
            }
            if p.max_space_index() as usize > r {
                return usage(format!("{p} uses variables beyond x_{r}"));
            }
        }
        Ok(PolySystem { r, polys })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    /// `l = #polys + 2`.
    pub fn l(&self) -> usize {
        self.polys.len() + 2
    }

    /// Largest total degree; 0 for constant systems.
    pub fn d(&self) -> u32 {
        self.polys.iter().map(Polynomial::degree).max().unwrap_or(0)
    }
}

/// `F_0, ..., F_{2l-1}` in `x_1..x_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FSequence {
    entries: Vec<Polynomial>,
}

impl FSequence {
    pub fn new(entries: Vec<Polynomial>) -> Result<Self> {
        if entries.is_empty() || !entries.len().is_multiple_of(2) {
            return usage(format!("F must have even positive length, got {}", entries.len()));
        }
        if entries.iter().any(Polynomial::has_entry_vars) {
            return usage("F entries must be polynomials in the space variables");
        }
        Ok(FSequence { entries })
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn l(&self) -> usize {
        self.entries.len() / 2
    }
}

/// A point and one character to avoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SCInstance {
    point: ExteriorVector,
    character: Character,
}

/// A point and a finite set of characters to avoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ESCInstance {
    point: ExteriorVector,
    characters: BTreeSet<Character>,
}

fn check_point(point: &ExteriorVector) -> Result<()> {
    if point.is_zero() {
        return usage("the point must be nonzero");
    }
    if !point.is_numeric() {
        return usage("the point must have rational coordinates");
    }
    Ok(())
}

impl SCInstance {
    pub fn new(point: ExteriorVector, character: Character) -> Result<Self> {
        check_point(&point)?;
        if character.len() != point.ambient().r {
            return usage(format!("character {character} does not match r = {}", point.ambient().r));
        }
        Ok(SCInstance { point, character })
    }

    pub fn point(&self) -> &ExteriorVector {
        &self.point
    }

    pub fn character(&self) -> &Character {
        &self.character
    }

    pub fn ambient(&self) -> Ambient {
        self.point.ambient()
    }

    pub fn to_esc(&self) -> ESCInstance {
        ESCInstance {
            point: self.point.clone(),
            characters: BTreeSet::from([self.character.clone()]),
        }
    }
}

impl ESCInstance {
    pub fn new(point: ExteriorVector, characters: BTreeSet<Character>) -> Result<Self> {
        check_point(&point)?;
        if characters.is_empty() {
            return usage("the character set must be nonempty");
        }
        let r = point.ambient().r;
        if let Some(bad) = characters.iter().find(|c| c.len() != r) {
            return usage(format!("character {bad} does not match r = {r}"));
        }
        Ok(ESCInstance { point, characters })
    }

    pub fn point(&self) -> &ExteriorVector {
        &self.point
    }

    pub fn characters(&self) -> &BTreeSet<Character> {
        &self.characters
    }

    pub fn ambient(&self) -> Ambient {
        self.point.ambient()
    }
}

#[derive(Serialize, Deserialize)]
struct SCInstanceJson {
    #[serde(flatten)]
    point: ExteriorVector,
    character: Character,
}

#[derive(Serialize, Deserialize)]
struct ESCInstanceJson {
    #[serde(flatten)]
    point: ExteriorVector,
    characters: Vec<Character>,
}

impl Serialize for SCInstance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SCInstanceJson {
            point: self.point.clone(),
            character: self.character.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SCInstance {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = SCInstanceJson::deserialize(d)?;
        SCInstance::new(json.point, json.character).map_err(serde::de::Error::custom)
    }
}

impl Serialize for ESCInstance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ESCInstanceJson {
            point: self.point.clone(),
            characters: self.characters.iter().cloned().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ESCInstance {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = ESCInstanceJson::deserialize(d)?;
        ESCInstance::new(json.point, json.characters.into_iter().collect()).map_err(serde::de::Error::custom)
    }
}

fn int(n: impl Into<num_bigint::BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `Σ_{a=0}^{l-1-j} (-1)^a C(2l-1-j, a)`. Never zero; positive exactly
/// when `l-1-j` is even.
pub fn alternating_sum(l: usize, j: usize) -> Result<Rational> {
    if l < 1 || j >= l {
        return usage(format!("alternating_sum needs l >= 1 and 0 <= j < l, got l={l}, j={j}"));
    }
    let top = (2 * l - 1 - j) as i64;
    let mut acc = num_bigint::BigInt::zero();
    for a in 0..=(l - 1 - j) as i64 {
        let term = binomial(top, a);
        if a % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(int(acc))
}

/// `(2l-1)! / (2l-1-j)!`.
fn falling(l: usize, j: usize) -> Rational {
    Rational::new(factorial((2 * l - 1) as u64), factorial((2 * l - 1 - j) as u64))
}

/// The constant `K_j` multiplying `g_{1,r+1}^{2l-1}` in `π_j`.
pub fn leading_constant(l: usize, j: usize) -> Result<Rational> {
    Ok(falling(l, j) * alternating_sum(l, j)?)
}

/// Multiply each term of space degree `e <= d` by `x_1^{d-e}`.
fn homogenize_with_x1(p: &Polynomial, d: u32) -> Result<Polynomial> {
    let mut out = Polynomial::zero();
    for (m, c) in p.terms() {
        let e = m.space_degree();
        if e > d {
            return usage(format!("{p} has degree {e} > d = {d}"));
        }
        out.add_term(m.mul(&Monomial::var_pow(Var::x(1), d - e)), c.clone());
    }
    Ok(out)
}

/// `F̃ = F(1, g_{12}, ..., g_{1r})`.
fn tilde(p: &Polynomial, r: usize) -> Polynomial {
    let mut assignment = BTreeMap::new();
    assignment.insert(Var::x(1), Polynomial::one());
    for k in 2..=r as u32 {
        assignment.insert(Var::x(k), Polynomial::var(Var::g(1, k)));
    }
    p.substitute(&assignment)
}

/// The two degree-`2l+d` factors `Σ x_{r+1}^i x_1^{2l-i} F_i` and
/// `Σ x_{r+1}^{i+1} x_1^{2l-i-1} F_i`, with each `F_i` homogenized to
/// degree `d` by powers of `x_1`.
pub fn point_factors(f: &FSequence, r: usize, d: u32) -> Result<(Polynomial, Polynomial)> {
    let l = f.l() as u32;
    let last = Var::x(r as u32 + 1);
    let mut first = Polynomial::zero();
    let mut second = Polynomial::zero();
    for (i, fi) in f.entries().iter().enumerate() {
        if fi.max_space_index() as usize > r {
            return usage(format!("F_{i} = {fi} uses variables beyond x_{r}"));
        }
        let h = homogenize_with_x1(fi, d)?;
        let i = i as u32;
        let a = Monomial::from_factors([(last, i), (Var::x(1), 2 * l - i)]);
        let b = Monomial::from_factors([(last, i + 1), (Var::x(1), 2 * l - i - 1)]);
        first += &h.mul_term(&a, &Rational::one());
        second += &h.mul_term(&b, &Rational::one());
    }
    Ok((first, second))
}

/// The point `v_d^r(F)` of `Λ^2 S_{2l+d}` in `r + 1` variables.
pub fn build_point(f: &FSequence, r: usize, d: u32) -> Result<ExteriorVector> {
    let (first, second) = point_factors(f, r, d)?;
    let ambient = Ambient::new(r + 1, 2 * f.l() as u32 + d, 2)?;
    let v = wedge_from_factors(&[first, second], ambient)?;
    if v.is_zero() {
        return usage("F produces the zero vector, which is not a point");
    }
    Ok(v)
}

/// The basis element `x_1^{2l+d-a} x_{r+1}^a ∧ x_1^{d+a} x_{r+1}^{2l-a}`.
pub fn special_wedge(r: usize, l: usize, d: u32, a: usize) -> Result<WedgeIndex> {
    let (l32, a32) = (l as u32, a as u32);
    if a >= l {
        return usage(format!("a = {a} must be below l = {l}"));
    }
    let last = Var::x(r as u32 + 1);
    let m1 = Monomial::from_factors([(Var::x(1), 2 * l32 + d - a32), (last, a32)]);
    let m2 = Monomial::from_factors([(Var::x(1), d + a32), (last, 2 * l32 - a32)]);
    WedgeIndex::new(vec![m1, m2], &Ambient::new(r + 1, 2 * l32 + d, 2)?)
}

/// `f_{a,r,l,F}` for `a = 0..l-1`, polynomials in `g_{12}..g_{1,r+1}`.
pub fn f_polys(f: &FSequence, r: usize) -> Vec<Polynomial> {
    let l = f.l() as i64;
    let g = Polynomial::var(Var::g(1, r as u32 + 1));
    let tildes: Vec<Polynomial> = f.entries().iter().map(|p| tilde(p, r)).collect();
    let g_pow = |e: i64| {
        assert!(e >= 0, "negative power of g with nonzero coefficient");
        g.pow(e as u32)
    };
    (0..l)
        .map(|a| {
            let mut acc = Polynomial::zero();
            for j in 0..2 * l {
                for i in 0..j {
                    let c = binomial(i, a) * binomial(j, 2 * l - a - 1) + binomial(i, 2 * l - a - 1) * binomial(j, a);
                    if c.is_zero() {
                        continue;
                    }
                    let t = &(&tildes[i as usize] * &tildes[j as usize]) * &g_pow(i + j - 2 * l + 1);
                    acc += &t.scale(&int(c));
                }
                let c = binomial(j, a) * binomial(j, 2 * l - a - 1);
                if !c.is_zero() {
                    let t = &tildes[j as usize].pow(2) * &g_pow(2 * j - 2 * l + 1);
                    acc += &t.scale(&int(c));
                }
            }
            acc
        })
        .collect()
}

/// `π_j = K_j g_{1,r+1}^{2l-1} + ψ̃_j g_{1,r+1}^j` for `j = 0..l-1`.
pub fn pi_polys(psi: &[Polynomial], r: usize) -> Result<Vec<Polynomial>> {
    let l = psi.len();
    if l == 0 {
        return usage("ψ must be nonempty");
    }
    let g = Polynomial::var(Var::g(1, r as u32 + 1));
    let top = g.pow(2 * l as u32 - 1);
    psi.iter()
        .enumerate()
        .map(|(j, p)| {
            let k = leading_constant(l, j)?;
            Ok(&top.scale(&k) + &(&tilde(p, r) * &g.pow(j as u32)))
        })
        .collect()
}

/// `ψ_i = -K_i` for `i ∈ {0, 1}` and `ψ_i = -K_i + x_1^{d - deg p_{i-2}} p_{i-2}`
/// for `2 <= i <= l-1`.
pub fn build_psi(system: &PolySystem) -> Vec<Polynomial> {
    let l = system.l();
    let d = system.d();
    (0..l)
        .map(|i| {
            let k = leading_constant(l, i).expect("0 <= i < l");
            let mut psi = Polynomial::constant(-k);
            if i >= 2 {
                let p = &system.polys()[i - 2];
                let shift = Monomial::var_pow(Var::x(1), d - p.degree());
                psi += &p.mul_term(&shift, &Rational::one());
            }
            psi
        })
        .collect()
}

/// `F_ψ`: `F_i = ψ_i / i!` for `i < l`, zero for `l <= i <= 2l-2`, and
/// `F_{2l-1} = 1`.
pub fn build_f(psi: &[Polynomial]) -> Result<FSequence> {
    let l = psi.len();
    if l == 0 {
        return usage("ψ must be nonempty");
    }
    let mut entries: Vec<Polynomial> = psi
        .iter()
        .enumerate()
        .map(|(i, p)| p.scale(&Rational::new(1.into(), factorial(i as u64))))
        .collect();
    entries.extend(std::iter::repeat_n(Polynomial::zero(), l - 1));
    entries.push(Polynomial::one());
    FSequence::new(entries)
}

/// `χ_1^{2d+2l} χ_{r+1}^{2l}` as a length-`(r+1)` weight.
pub fn target_character(r: usize, l: usize, d: u32) -> Character {
    let mut w = vec![0i64; r + 1];
    w[0] = 2 * d as i64 + 2 * l as i64;
    w[r] += 2 * l as i64;
    Character(w)
}

/// The SC instance encoding `system`.
pub fn reduce_sysal_to_sc(system: &PolySystem) -> Result<SCInstance> {
    let (r, l, d) = (system.r(), system.l(), system.d());
    let psi = build_psi(system);
    let f = build_f(&psi)?;
    let point = build_point(&f, r, d)?;
    SCInstance::new(point, target_character(r, l, d))
}

/// The upper unipotent `(r+1) × (r+1)` matrix with first row
/// `(1, root_2, ..., root_r, 1)` and zeros elsewhere above the diagonal.
/// It removes the target character from the reduced instance's state.
pub fn witness_from_root(system: &PolySystem, root: &[Rational]) -> Result<MatrixElement> {
    let r = system.r();
    if root.len() != r - 1 {
        return usage(format!("root must give values for x_2..x_{r} ({} entries)", r - 1));
    }
    let assignment: BTreeMap<Var, Polynomial> = root
        .iter()
        .enumerate()
        .map(|(k, c)| (Var::x(k as u32 + 2), Polynomial::constant(c.clone())))
        .collect();
    for p in system.polys() {
        if !p.substitute(&assignment).is_zero() {
            return usage(format!("the given point is not a root of {p}"));
        }
    }
    let mut entries: Vec<((usize, usize), Rational)> = root.iter().enumerate().map(|(k, c)| ((1, k + 2), c.clone())).collect();
    entries.push(((1, r + 1), Rational::one()));
    upper_unipotent(r + 1, &entries)
}

/// `P(t) = C(r+t, r) - C(r+t-2l-d+1, r) + C(r+t-2l-d-1, r-2)`.
pub fn hilbert_polynomial_of_point(r: usize, l: usize, d: u32) -> Result<UniPoly> {
    if r < 2 {
        return usage("the Hilbert polynomial formula needs r >= 2");
    }
    let (ri, li, di) = (r as i64, l as i64, d as i64);
    let a = UniPoly::binomial(ri, r as u32);
    let b = UniPoly::binomial(ri - 2 * li - di + 1, r as u32);
    let c = UniPoly::binomial(ri - 2 * li - di - 1, r as u32 - 2);
    Ok(&(&a - &b) + &c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn system(r: usize, polys: &[&str]) -> PolySystem {
        PolySystem::new(r, polys.iter().map(|s| p(s)).collect()).unwrap()
    }

    #[test]
    fn alternating_sum_examples() {
        assert_eq!(alternating_sum(1, 0).unwrap(), rational(1, 1));
        assert_eq!(alternating_sum(3, 0).unwrap(), rational(6, 1));
        assert_eq!(alternating_sum(2, 0).unwrap(), rational(-2, 1));
        assert!(alternating_sum(2, 2).is_err());
        assert!(alternating_sum(0, 0).is_err());
    }

    #[test]
    fn psi_for_l3() {
        let psi = build_psi(&system(2, &["x_2"]));
        assert_eq!(psi, vec![p("-6"), p("15"), p("x_2 - 20")]);
    }

    #[test]
    fn psi_pads_lower_degree_polynomials_with_x1() {
        let psi = build_psi(&system(3, &["x_2^2 - 1", "x_3"]));
        let k2 = leading_constant(4, 2).unwrap();
        let k3 = leading_constant(4, 3).unwrap();
        assert_eq!(psi[2], &p("x_2^2 - 1") - &Polynomial::constant(k2));
        assert_eq!(psi[3], &p("x_1*x_3") - &Polynomial::constant(k3));
    }

    #[test]
    fn f_sequence_rules() {
        let f = build_f(&[p("-6"), p("15"), p("x_2 - 20")]).unwrap();
        assert_eq!(f.entries(), &[p("-6"), p("15"), p("1/2*x_2 - 10"), p("0"), p("0"), p("1")]);
        let f = build_f(&[p("7")]).unwrap();
        assert_eq!(f.entries(), &[p("7"), p("1")]);
    }

    #[test]
    fn target_character_examples() {
        assert_eq!(target_character(2, 3, 1), Character(vec![8, 0, 6]));
        assert_eq!(target_character(3, 3, 0), Character(vec![6, 0, 0, 6]));
        assert_eq!(target_character(3, 4, 2).total(), 2 * (2 * 4 + 2));
    }

    #[test]
    fn point_for_constant_sequence() {
        let f = FSequence::new(vec![p("1"), p("1")]).unwrap();
        let v = build_point(&f, 1, 0).unwrap();
        assert_eq!(v.num_nonzero(), 3);
        assert!(v.coords().all(|(_, c)| *c == Polynomial::one()));
    }

    #[test]
    fn point_with_x1_entry() {
        // factors x_1^3 and x_1^2 x_2
        let f = FSequence::new(vec![p("x_1"), p("0")]).unwrap();
        let (a, b) = point_factors(&f, 1, 1).unwrap();
        assert_eq!(a, p("x_1^3"));
        assert_eq!(b, p("x_1^2*x_2"));
        let v = build_point(&f, 1, 1).unwrap();
        assert_eq!(v.num_nonzero(), 1);
    }

    #[test]
    fn degenerate_points_are_rejected() {
        let f = FSequence::new(vec![p("0"), p("0")]).unwrap();
        assert!(build_point(&f, 1, 0).is_err());
        let f = FSequence::new(vec![p("x_1^2"), p("1")]).unwrap();
        assert!(build_point(&f, 1, 1).is_err(), "degree above d");
    }

    #[test]
    fn f_and_pi_for_l1() {
        let f = FSequence::new(vec![p("1"), p("1")]).unwrap();
        assert_eq!(f_polys(&f, 1), vec![p("1 + g_1_2")]);
        let f = FSequence::new(vec![p("x_1^2 - 3"), p("1")]).unwrap();
        assert_eq!(f_polys(&f, 1), vec![p("-2 + g_1_2")]);
        assert_eq!(pi_polys(&[p("5")], 1).unwrap(), vec![p("g_1_2 + 5")]);
        let zeros = FSequence::new(vec![Polynomial::zero(); 6]).unwrap();
        assert!(f_polys(&zeros, 2).iter().all(Polynomial::is_zero));
    }

    #[test]
    fn pi_with_zero_psi_is_a_pure_power() {
        let pis = pi_polys(&[p("0"), p("0"), p("0")], 2).unwrap();
        for (j, pi) in pis.iter().enumerate() {
            let expected = p("g_1_3^5").scale(&leading_constant(3, j).unwrap());
            assert_eq!(pi, &expected);
        }
    }

    #[test]
    fn pi_for_the_l3_system() {
        // ψ_2 = x_2 - 20 with r = 2; K_2 = 20
        let pis = pi_polys(&build_psi(&system(2, &["x_2"])), 2).unwrap();
        assert_eq!(pis[0], p("6*g_1_3^5 - 6"));
        assert_eq!(pis[1], p("-15*g_1_3^5 + 15*g_1_3"));
        assert_eq!(pis[2], p("20*g_1_3^5 + g_1_2*g_1_3^2 - 20*g_1_3^2"));
    }

    #[test]
    fn witness_rows() {
        let s = system(2, &["x_2 - 1"]);
        let w = witness_from_root(&s, &[rational(1, 1)]).unwrap();
        assert_eq!(w.to_string(), "[[1, 1, 1], [0, 1, 0], [0, 0, 1]]");
        let s = system(2, &["x_2"]);
        let w = witness_from_root(&s, &[rational(0, 1)]).unwrap();
        assert_eq!(w.to_string(), "[[1, 0, 1], [0, 1, 0], [0, 0, 1]]");
        assert!(witness_from_root(&s, &[rational(2, 1)]).is_err());
        assert!(witness_from_root(&s, &[]).is_err());
    }

    #[test]
    fn hilbert_polynomial_example() {
        let hp = hilbert_polynomial_of_point(2, 3, 1).unwrap();
        // C(t+2,2) - C(t-4,2) + C(t-6,0)
        let oracle = &(&UniPoly::binomial(2, 2) - &UniPoly::binomial(-4, 2)) + &UniPoly::binomial(-6, 0);
        assert_eq!(hp, oracle);
        assert_eq!(hp.to_string(), "6*t - 8");
        for t in 20..=30 {
            assert!(hp.eval_int(t) >= Rational::zero());
        }
        assert!(hilbert_polynomial_of_point(3, 4, 2).unwrap().degree().unwrap() <= 3);
    }

    #[test]
    fn system_validation() {
        assert!(PolySystem::new(2, vec![p("x_1 - 1")]).is_err());
        assert!(PolySystem::new(2, vec![p("x_3")]).is_err());
        assert!(PolySystem::new(2, vec![p("g_1_2")]).is_err());
        assert!(PolySystem::new(2, vec![]).is_err());
        let s = system(3, &["x_2*x_3 - 1", "x_2 - x_3"]);
        assert_eq!((s.l(), s.d()), (4, 2));
        assert_eq!(system(2, &["1"]).d(), 0);
    }

    #[test]
    fn instance_json_round_trip() {
        let inst = reduce_sysal_to_sc(&system(2, &["x_2 - 1"])).unwrap();
        let text = serde_json::to_string(&inst).unwrap();
        assert!(text.contains(r#""character":[8,0,6]"#));
        let back: SCInstance = serde_json::from_str(&text).unwrap();
        assert_eq!(back, inst);
        let esc = inst.to_esc();
        let back: ESCInstance = serde_json::from_str(&serde_json::to_string(&esc).unwrap()).unwrap();
        assert_eq!(back, esc);
    }
}
