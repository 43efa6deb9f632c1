//! Matrices acting on forms and on exterior vectors.
//!
//! The convention is `g.x_i = Σ_j g_ji x_j`, extended to a ring
//! homomorphism. It is a left action: `g.(h.p) = (gh).p`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::exterior::{expand_wedge, Character, ExteriorVector, WedgeIndex};
use crate::poly::{Monomial, Polynomial, Rational, Var};

/// A square matrix with polynomial entries (constants for numeric
/// matrices, entry variables for symbolic ones).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixElement {
    rows: Vec<Vec<Polynomial>>,
}

impl MatrixElement {
    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let r = rows.len();
        if r == 0 || rows.iter().any(|row| row.len() != r) {
            return usage("matrix must be square and nonempty");
        }
        Ok(MatrixElement { rows })
    }

    pub fn from_rationals(rows: Vec<Vec<Rational>>) -> Result<Self> {
        Self::from_rows(rows.into_iter().map(|row| row.into_iter().map(Polynomial::constant).collect()).collect())
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|row| row.iter().map(|&c| Polynomial::from_int(c)).collect()).collect())
    }

    pub fn identity(r: usize) -> Self {
        let rows = (0..r)
            .map(|i| (0..r).map(|j| if i == j { Polynomial::one() } else { Polynomial::zero() }).collect())
            .collect();
        MatrixElement { rows }
    }

    /// The generic matrix with entry `(i, j)` the variable `g_i_j`.
    pub fn symbolic_general(r: usize) -> Self {
        let rows = (1..=r as u32)
            .map(|i| (1..=r as u32).map(|j| Polynomial::var(Var::g(i, j))).collect())
            .collect();
        MatrixElement { rows }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Entry at 1-based `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.rows[i - 1][j - 1]
    }

    pub fn rows(&self) -> &[Vec<Polynomial>] {
        &self.rows
    }

    pub fn is_numeric(&self) -> bool {
        self.rows.iter().flatten().all(Polynomial::is_constant)
    }

    pub fn mul(&self, other: &MatrixElement) -> Result<MatrixElement> {
        let r = self.size();
        if other.size() != r {
            return usage("matrix sizes differ");
        }
        let rows = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let mut acc = Polynomial::zero();
                        for k in 0..r {
                            acc += &(&self.rows[i][k] * &other.rows[k][j]);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Ok(MatrixElement { rows })
    }

    /// Substitute values for entry variables in every entry.
    pub fn specialize(&self, assignment: &BTreeMap<Var, Polynomial>) -> MatrixElement {
        MatrixElement {
            rows: self.rows.iter().map(|row| row.iter().map(|e| e.substitute(assignment)).collect()).collect(),
        }
    }

    /// Determinant of a numeric matrix by exact elimination.
    pub fn determinant(&self) -> Result<Rational> {
        let mut m: Vec<Vec<Rational>> = Vec::with_capacity(self.size());
        for row in &self.rows {
            let mut out = Vec::with_capacity(row.len());
            for e in row {
                out.push(e.constant_value().ok_or_else(|| Error::Usage("determinant needs a numeric matrix".into()))?);
            }
            m.push(out);
        }
        let n = m.len();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&i| !m[i][col].is_zero()) else {
                return Ok(Rational::zero());
            };
            if pivot != col {
                m.swap(pivot, col);
                det = -det;
            }
            det *= &m[col][col];
            for i in col + 1..n {
                if m[i][col].is_zero() {
                    continue;
                }
                let f = &m[i][col] / &m[col][col];
                let (top, rest) = m.split_at_mut(i);
                for (x, p) in rest[0].iter_mut().zip(&top[col]).skip(col) {
                    *x -= &f * p;
                }
            }
        }
        Ok(det)
    }

    /// The images `g.x_1, ..., g.x_r` as linear forms.
    fn variable_images(&self) -> Vec<Polynomial> {
        let r = self.size();
        (0..r)
            .map(|i| {
                let mut img = Polynomial::zero();
                for j in 0..r {
                    img += &(&self.rows[j][i] * &Polynomial::var(Var::x(j as u32 + 1)));
                }
                img
            })
            .collect()
    }
}

impl fmt::Display for MatrixElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// The generic upper unipotent matrix: 1 on the diagonal, 0 below, `g_i_j`
/// above.
pub fn symbolic_unipotent(r: usize) -> MatrixElement {
    let rows = (1..=r as u32)
        .map(|i| {
            (1..=r as u32)
                .map(|j| match i.cmp(&j) {
                    std::cmp::Ordering::Equal => Polynomial::one(),
                    std::cmp::Ordering::Greater => Polynomial::zero(),
                    std::cmp::Ordering::Less => Polynomial::var(Var::g(i, j)),
                })
                .collect()
        })
        .collect();
    MatrixElement { rows }
}

/// Upper unipotent matrix with the given strictly-upper entries.
pub fn upper_unipotent(r: usize, entries: &[((usize, usize), Rational)]) -> Result<MatrixElement> {
    let mut m = MatrixElement::identity(r);
    for ((i, j), c) in entries {
        if !(1 <= *i && i < j && *j <= r) {
            return usage(format!("({i}, {j}) is not strictly above the diagonal of a {r}x{r} matrix"));
        }
        m.rows[i - 1][j - 1] = Polynomial::constant(c.clone());
    }
    Ok(m)
}

/// Lower unipotent matrix with the given strictly-lower entries.
pub fn lower_unipotent(r: usize, entries: &[((usize, usize), Rational)]) -> Result<MatrixElement> {
    let mut m = MatrixElement::identity(r);
    for ((i, j), c) in entries {
        if !(1 <= *j && j < i && *i <= r) {
            return usage(format!("({i}, {j}) is not strictly below the diagonal of a {r}x{r} matrix"));
        }
        m.rows[i - 1][j - 1] = Polynomial::constant(c.clone());
    }
    Ok(m)
}

/// A permutation of `{1..r}`, stored by images.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let r = images.len();
        let mut seen = vec![false; r];
        for &i in &images {
            if i == 0 || i > r || seen[i - 1] {
                return usage(format!("{images:?} is not a permutation of 1..={r}"));
            }
            seen[i - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(r: usize) -> Self {
        Permutation { images: (1..=r).collect() }
    }

    /// Swap of `i` and `j` in `{1..r}`.
    pub fn transposition(r: usize, i: usize, j: usize) -> Result<Self> {
        let mut images: Vec<usize> = (1..=r).collect();
        if i == 0 || j == 0 || i > r || j > r {
            return usage("transposition index out of range");
        }
        images.swap(i - 1, j - 1);
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            inv[img - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// All permutations of `{1..r}` in lexicographic order of image lists.
    pub fn all(r: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (1..=r).collect();
        loop {
            out.push(Permutation { images: current.clone() });
            // next lexicographic permutation
            let Some(i) = (0..r.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
                break;
            };
            let j = (i + 1..r).rev().find(|&j| current[j] > current[i]).expect("successor exists");
            current.swap(i, j);
            current[i + 1..].reverse();
        }
        out
    }

    /// Move weight coordinate `i` to position `q(i)`: the weight of `q.m`
    /// for a monomial `m` of weight `chi`.
    pub fn permute_character(&self, chi: &Character) -> Character {
        let mut out = vec![0; chi.len()];
        for (i, &w) in chi.as_slice().iter().enumerate() {
            out[self.images[i] - 1] = w;
        }
        Character(out)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

/// The matrix with `q.x_i = x_{q(i)}`: entry `(q(j), j)` is 1.
pub fn permutation_matrix(q: &Permutation) -> MatrixElement {
    let r = q.len();
    let mut m = MatrixElement {
        rows: vec![vec![Polynomial::zero(); r]; r],
    };
    for j in 1..=r {
        m.rows[q.apply(j) - 1][j - 1] = Polynomial::one();
    }
    m
}

/// A rational linear functional on characters.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Covector(pub Vec<Rational>);

impl Covector {
    pub fn from_ints(duals: &[i64]) -> Self {
        Covector(duals.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Evaluate on a rational point of the character space.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.0.iter().zip(point).map(|(a, b)| a * b).sum()
    }
}

impl fmt::Display for Covector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Covector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let texts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        texts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Covector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let texts = Vec::<String>::deserialize(deserializer)?;
        texts
            .iter()
            .map(|t| t.trim().parse::<Rational>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Covector)
    }
}

/// `ω(χ)`.
pub fn pair(omega: &Covector, chi: &Character) -> Result<Rational> {
    if omega.len() != chi.len() {
        return usage(format!("covector of length {} paired with character of length {}", omega.len(), chi.len()));
    }
    Ok(omega
        .0
        .iter()
        .zip(chi.as_slice())
        .map(|(a, &w)| a * Rational::from_integer(w.into()))
        .sum())
}

/// `g.p` for a polynomial in `x_1..x_r`.
pub fn act_on_poly(g: &MatrixElement, p: &Polynomial) -> Result<Polynomial> {
    if p.max_space_index() as usize > g.size() {
        return usage(format!("{p} uses variables beyond x_{}", g.size()));
    }
    let assignment: BTreeMap<Var, Polynomial> = g
        .variable_images()
        .into_iter()
        .enumerate()
        .map(|(i, img)| (Var::x(i as u32 + 1), img))
        .collect();
    Ok(p.substitute(&assignment))
}

/// Expands `g.m` for space monomials, optionally discarding space parts
/// rejected by a downward-closed predicate as soon as they appear.
pub(crate) struct MonomialImages<'a> {
    images: Vec<Polynomial>,
    keep: &'a dyn Fn(&Monomial) -> bool,
    cache: HashMap<Monomial, BTreeMap<Monomial, Polynomial>>,
}

impl<'a> MonomialImages<'a> {
    /// `keep` must be downward closed on space parts: if it rejects `m` it
    /// rejects every multiple of `m`.
    pub(crate) fn new(g: &MatrixElement, keep: &'a dyn Fn(&Monomial) -> bool) -> Self {
        MonomialImages {
            images: g.variable_images(),
            keep,
            cache: HashMap::new(),
        }
    }

    /// `g.m` grouped by space monomial.
    pub(crate) fn image(&mut self, m: &Monomial) -> &BTreeMap<Monomial, Polynomial> {
        if !self.cache.contains_key(m) {
            let mut acc = Polynomial::one();
            for &(v, e) in m.factors() {
                let Var::Space(i) = v else {
                    unreachable!("wedge factors are space monomials")
                };
                for _ in 0..e {
                    acc = &acc * &self.images[i as usize - 1];
                    let keep = self.keep;
                    acc.retain(|t| keep(&t.split().0));
                }
            }
            self.cache.insert(m.clone(), acc.group_by_space_monomial());
        }
        &self.cache[m]
    }
}

/// `g.v` with space parts pruned by `space_keep` (downward closed) and
/// result coordinates restricted to basis elements accepted by
/// `wedge_keep`.
pub(crate) fn act_on_exterior_filtered(
    g: &MatrixElement,
    v: &ExteriorVector,
    space_keep: &dyn Fn(&Monomial) -> bool,
    wedge_keep: &dyn Fn(&WedgeIndex) -> bool,
) -> Result<ExteriorVector> {
    let ambient = v.ambient();
    if g.size() != ambient.r {
        return usage(format!("{}x{} matrix acting on a point with r = {}", g.size(), g.size(), ambient.r));
    }
    let mut images = MonomialImages::new(g, space_keep);
    let mut acc: BTreeMap<WedgeIndex, Polynomial> = BTreeMap::new();
    for (w, c) in v.coords() {
        let factors: Vec<BTreeMap<Monomial, Polynomial>> = w.factors().iter().map(|m| images.image(m).clone()).collect();
        for (target, coeff) in expand_wedge(&factors, |t| wedge_keep(t)) {
            *acc.entry(target).or_default() += &(&coeff * c);
        }
    }
    acc.retain(|_, c| !c.is_zero());
    Ok(ExteriorVector::from_raw(ambient, acc))
}

/// `g.v`: each basis wedge `m_1 ∧ ... ∧ m_b` maps to `g.m_1 ∧ ... ∧ g.m_b`.
pub fn act_on_exterior(g: &MatrixElement, v: &ExteriorVector) -> Result<ExteriorVector> {
    act_on_exterior_filtered(g, v, &|_| true, &|_| true)
}

/// The state of a numeric point: weights of its nonzero coordinates.
pub fn state(v: &ExteriorVector) -> Result<BTreeSet<Character>> {
    if !v.is_numeric() {
        return usage("state needs a point with constant coordinates");
    }
    Ok(v.support_weights())
}
