use std::cmp::Ordering;
use std::fmt;

use super::Var;

/// A sparse power product over the two-sorted variable universe.
///
/// Factors are kept sorted by variable position with no zero exponents, so
/// structural equality is monomial equality. `Ord` is the lexicographic
/// monomial order: `x_1 > x_2 > ... > g_1_2 > g_1_3 > ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(Var, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, exp: u32) -> Self {
        if exp == 0 {
            return Self::one();
        }
        Monomial {
            factors: vec![(v, exp)],
        }
    }

    /// Build from arbitrary `(var, exponent)` pairs; repeated variables
    /// multiply.
    pub fn from_factors(factors: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut factors: Vec<(Var, u32)> = factors.into_iter().filter(|&(_, e)| e > 0).collect();
        factors.sort_by_key(|&(v, _)| v);
        let mut merged: Vec<(Var, u32)> = Vec::with_capacity(factors.len());
        for (v, e) in factors {
            match merged.last_mut() {
                Some((last, acc)) if *last == v => *acc += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial { factors: merged }
    }

    /// `x_1^{e_1} ... x_r^{e_r}` from a dense exponent vector.
    pub fn from_space_exponents(exps: &[u32]) -> Self {
        Monomial {
            factors: exps
                .iter()
                .enumerate()
                .filter(|&(_, &e)| e > 0)
                .map(|(i, &e)| (Var::Space(i as u32 + 1), e))
                .collect(),
        }
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.factors
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn space_degree(&self) -> u32 {
        self.factors.iter().filter(|(v, _)| v.is_space()).map(|&(_, e)| e).sum()
    }

    pub fn entry_degree(&self) -> u32 {
        self.factors.iter().filter(|(v, _)| v.is_entry()).map(|&(_, e)| e).sum()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.factors.iter().map(|&(v, _)| v)
    }

    /// Largest space index occurring, 0 if none.
    pub fn max_space_index(&self) -> u32 {
        self.factors
            .iter()
            .filter_map(|&(v, _)| match v {
                Var::Space(i) => Some(i),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Split into the space part and the matrix-entry part.
    pub fn split(&self) -> (Monomial, Monomial) {
        let (space, entry): (Vec<_>, Vec<_>) = self.factors.iter().partition(|(v, _)| v.is_space());
        (Monomial { factors: space }, Monomial { factors: entry })
    }

    /// Dense exponent vector of `x_1..x_r`. Entry variables are ignored.
    pub fn space_exponents(&self, r: usize) -> Vec<u32> {
        let mut out = vec![0; r];
        for &(v, e) in &self.factors {
            if let Var::Space(i) = v {
                if let Some(slot) = out.get_mut(i as usize - 1) {
                    *slot = e;
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial {
            factors: self.factors.iter().map(|&(v, e)| (v, e * k)).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.factors.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let factors = self
            .factors
            .iter()
            .filter_map(|&(v, e)| {
                let rest = e - other.exponent(v);
                (rest > 0).then_some((v, rest))
            })
            .collect();
        Some(Monomial { factors })
    }

    /// Drop one power of `v`, together with the falling-factorial
    /// multiplier `e (e-1) ... (e-order+1)` of the derivative. `None` if the
    /// derivative vanishes.
    pub(crate) fn differentiate(&self, v: Var, order: u32) -> Option<(u64, Monomial)> {
        let e = self.exponent(v);
        if order > e {
            return None;
        }
        let mult: u64 = (0..order).map(|k| (e - k) as u64).product();
        let factors = self
            .factors
            .iter()
            .filter_map(|&(w, f)| {
                if w == v {
                    (f > order).then_some((w, f - order))
                } else {
                    Some((w, f))
                }
            })
            .collect();
        Some((mult, Monomial { factors }))
    }

    /// The lexicographic comparison, spelled out for callers that prefer a
    /// named function over `Ord`.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        self.cmp(other)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.factors, &other.factors);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    // `va` is more significant and absent from `b`.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(&eb) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        ord => return ord,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (k, &(v, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// All degree-`d` monomials in `x_1..x_r`, lex descending.
pub fn monomials_of_degree(r: usize, d: u32) -> Vec<Monomial> {
    assert!(r >= 1, "need at least one variable");
    let mut out = Vec::new();
    let mut exps = vec![0u32; r];
    fill(&mut exps, 0, d, &mut out);
    out
}

fn fill(exps: &mut [u32], pos: usize, left: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == exps.len() {
        exps[pos] = left;
        out.push(Monomial::from_space_exponents(exps));
        return;
    }
    for e in (0..=left).rev() {
        exps[pos] = e;
        fill(exps, pos + 1, left - e, out);
    }
    exps[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(exps: &[u32]) -> Monomial {
        Monomial::from_space_exponents(exps)
    }

    #[test]
    fn lex_examples() {
        assert_eq!(x(&[2, 0]).lex_cmp(&x(&[1, 1])), Ordering::Greater);
        assert_eq!(x(&[0, 1]).lex_cmp(&x(&[0, 1])), Ordering::Equal);
        assert_eq!(x(&[1, 0, 1]).lex_cmp(&x(&[1, 1, 0])), Ordering::Less);
    }

    #[test]
    fn entry_variables_rank_below_space_variables() {
        let g12 = Monomial::var(Var::g(1, 2));
        let g13 = Monomial::var(Var::g(1, 3));
        let g23 = Monomial::var(Var::g(2, 3));
        assert!(x(&[0, 0, 1]) > g12.pow(5));
        assert!(g12 > g13);
        assert!(g13 > g23);
        assert!(g23 > Monomial::one());
    }

    #[test]
    fn enumerate_small_degrees() {
        assert_eq!(monomials_of_degree(2, 2), vec![x(&[2, 0]), x(&[1, 1]), x(&[0, 2])]);
        assert_eq!(monomials_of_degree(1, 5), vec![x(&[5])]);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(3, 0), vec![Monomial::one()]);
    }

    #[test]
    fn enumeration_is_strictly_descending() {
        let ms = monomials_of_degree(4, 3);
        assert!(ms.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn division_and_split() {
        let m = Monomial::from_factors([(Var::x(1), 2), (Var::g(1, 2), 1), (Var::x(1), 1)]);
        assert_eq!(m.exponent(Var::x(1)), 3);
        assert_eq!(m.space_degree(), 3);
        assert_eq!(m.entry_degree(), 1);
        let (s, e) = m.split();
        assert_eq!(s, x(&[3]));
        assert_eq!(e, Monomial::var(Var::g(1, 2)));
        assert_eq!(m.div(&x(&[2])).unwrap(), Monomial::from_factors([(Var::x(1), 1), (Var::g(1, 2), 1)]));
        assert!(m.div(&x(&[0, 1])).is_none());
        assert_eq!(format!("{m}"), "x_1^3*g_1_2");
    }
}
