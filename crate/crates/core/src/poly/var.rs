use std::fmt;

/// A variable of the two-sorted universe.
///
/// The derived ordering is the variable *position*: earlier means more
/// significant under lex. Space variables come first (`x_1` before `x_2`),
/// then matrix entries by `(row, column)`, so `g_1_2` is the most
/// significant entry variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// `x_i`, 1-based.
    Space(u32),
    /// `g_i_j`, 1-based row and column.
    Entry(u32, u32),
}

impl Var {
    pub fn x(i: u32) -> Var {
        assert!(i >= 1, "space variable indices start at 1");
        Var::Space(i)
    }

    pub fn g(i: u32, j: u32) -> Var {
        assert!(i >= 1 && j >= 1, "matrix entry indices start at 1");
        Var::Entry(i, j)
    }

    pub fn is_space(&self) -> bool {
        matches!(self, Var::Space(_))
    }

    pub fn is_entry(&self) -> bool {
        matches!(self, Var::Entry(..))
    }

    /// Parse `x_<i>` or `g_<i>_<j>`.
    pub fn parse(name: &str) -> Option<Var> {
        let positive = |s: &str| s.parse::<u32>().ok().filter(|&n| n >= 1);
        if let Some(rest) = name.strip_prefix("x_") {
            return positive(rest).map(Var::Space);
        }
        if let Some(rest) = name.strip_prefix("g_") {
            let (i, j) = rest.split_once('_')?;
            return Some(Var::Entry(positive(i)?, positive(j)?));
        }
        None
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Space(i) => write!(f, "x_{i}"),
            Var::Entry(i, j) => write!(f, "g_{i}_{j}"),
        }
    }
}
