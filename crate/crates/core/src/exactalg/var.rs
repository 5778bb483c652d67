use std::fmt;
use std::str::FromStr;

use super::PolyError;

/// An indeterminate from the closed alphabet used throughout the crate.
///
/// The derived ordering is the canonical alphabet order:
/// `a1 < a2 < … < M < s_1_2 < s_1_3 < … < l3 < l4 < … < x1 < x2 < …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// Diffeomorphism coefficient `a_j`, `j >= 1`.
    A(u32),
    /// Squared mass `m^2`.
    M,
    /// Dot product `p_i . p_j` of two distinct external momenta, `i < j`.
    S(u32, u32),
    /// Interaction coupling `lambda_s`, `s >= 3`.
    L(u32),
    /// Generic Bell polynomial argument `x_i`, `i >= 1`.
    X(u32),
}

impl Var {
    /// `s_i_j` with the indices put in order. Panics if `i == j` or either is zero.
    pub fn dot(i: u32, j: u32) -> Var {
        assert!(
            i != j && i > 0 && j > 0,
            "s_i_j needs two distinct positive indices"
        );
        Var::S(i.min(j), i.max(j))
    }

    fn validate(self) -> Result<Var, PolyError> {
        let ok = match self {
            Var::A(j) => j >= 1,
            Var::M => true,
            Var::S(i, j) => i >= 1 && i < j,
            Var::L(s) => s >= 3,
            Var::X(i) => i >= 1,
        };
        if ok {
            Ok(self)
        } else {
            Err(PolyError::UnknownVariable(self.to_string()))
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::A(j) => write!(f, "a{j}"),
            Var::M => f.write_str("M"),
            Var::S(i, j) => write!(f, "s_{i}_{j}"),
            Var::L(s) => write!(f, "l{s}"),
            Var::X(i) => write!(f, "x{i}"),
        }
    }
}

fn index(s: &str) -> Option<u32> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) || (s.len() > 1 && s.starts_with('0'))
    {
        return None;
    }
    s.parse().ok()
}

impl FromStr for Var {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || PolyError::UnknownVariable(s.to_string());
        let var = if s == "M" {
            Var::M
        } else if let Some(rest) = s.strip_prefix("s_") {
            let (i, j) = rest.split_once('_').ok_or_else(unknown)?;
            Var::S(index(i).ok_or_else(unknown)?, index(j).ok_or_else(unknown)?)
        } else if let Some(rest) = s.strip_prefix('a') {
            Var::A(index(rest).ok_or_else(unknown)?)
        } else if let Some(rest) = s.strip_prefix('l') {
            Var::L(index(rest).ok_or_else(unknown)?)
        } else if let Some(rest) = s.strip_prefix('x') {
            Var::X(index(rest).ok_or_else(unknown)?)
        } else {
            return Err(unknown());
        };
        var.validate().map_err(|_| unknown())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_order() {
        let mut vars = [
            Var::X(1),
            Var::L(3),
            Var::S(1, 3),
            Var::M,
            Var::A(10),
            Var::S(1, 2),
            Var::A(2),
            Var::L(4),
        ];
        vars.sort();
        let names: Vec<_> = vars.iter().map(|v| v.to_string()).collect();
        assert_eq!(
            names,
            ["a2", "a10", "M", "s_1_2", "s_1_3", "l3", "l4", "x1"]
        );
    }

    #[test]
    fn parse_rejects_outside_alphabet() {
        for bad in [
            "a0", "s_2_1", "s_1_1", "l2", "x0", "b1", "m", "a01", "s_1", "",
        ] {
            assert!(bad.parse::<Var>().is_err(), "{bad} accepted");
        }
        assert_eq!("s_2_10".parse::<Var>().unwrap(), Var::S(2, 10));
        assert_eq!("l7".parse::<Var>().unwrap(), Var::L(7));
    }
}
