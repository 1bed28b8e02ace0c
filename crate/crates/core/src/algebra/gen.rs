use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// A mode generator: `l+_ij[-r]` for [`Sign::Plus`], `l-_ij[r]` for [`Sign::Minus`].
///
/// Indices are 1-based; `r >= 0` is the depth of the mode in both cases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    pub sign: Sign,
    pub i: u8,
    pub j: u8,
    pub r: u16,
}

impl Gen {
    pub fn plus(i: usize, j: usize, r: usize) -> Gen {
        Gen { sign: Sign::Plus, i: i as u8, j: j as u8, r: r as u16 }
    }

    pub fn minus(i: usize, j: usize, r: usize) -> Gen {
        Gen { sign: Sign::Minus, i: i as u8, j: j as u8, r: r as u16 }
    }

    pub fn new(sign: Sign, i: usize, j: usize, r: usize) -> Gen {
        Gen { sign, i: i as u8, j: j as u8, r: r as u16 }
    }

    /// `l+_ij[0]` with `i > j` and `l-_ij[0]` with `i < j` vanish identically.
    pub fn is_zero_gen(&self) -> bool {
        self.r == 0
            && match self.sign {
                Sign::Plus => self.i > self.j,
                Sign::Minus => self.i < self.j,
            }
    }

    /// Diagonal zero mode `l±_ii[0]`.
    pub fn is_diag_zero(&self) -> bool {
        self.r == 0 && self.i == self.j
    }

    /// Mode degree: `-r` for `l+`, `r` for `l-`.
    pub fn degree(&self) -> i64 {
        match self.sign {
            Sign::Plus => -(self.r as i64),
            Sign::Minus => self.r as i64,
        }
    }

    /// `r` for `l-` generators, 0 otherwise.
    pub fn minus_degree(&self) -> u32 {
        match self.sign {
            Sign::Plus => 0,
            Sign::Minus => self.r as u32,
        }
    }

    pub fn weight(&self) -> i64 {
        self.i as i64 - self.j as i64
    }

    pub fn check(&self, n: usize) -> Result<()> {
        if self.i == 0 || self.j == 0 || self.i as usize > n || self.j as usize > n {
            return invalid(format!("generator {self} has indices outside 1..={n}"));
        }
        Ok(())
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx = if self.i < 10 && self.j < 10 {
            format!("{}{}", self.i, self.j)
        } else {
            format!("({},{})", self.i, self.j)
        };
        match self.sign {
            Sign::Plus if self.r == 0 => write!(f, "l+{idx}[0]"),
            Sign::Plus => write!(f, "l+{idx}[-{}]", self.r),
            Sign::Minus => write!(f, "l-{idx}[{}]", self.r),
        }
    }
}

/// The two PBW orderings of the generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderingKind {
    /// `l+` by `(j-i, i, r)`, `l-` by `(i-j, i, r)`.
    Standard,
    /// `l+` by `(i-j, i, r)`, `l-` by `(j-i, i, r)`.
    Opposite,
}

impl OrderingKind {
    pub fn key(&self, g: &Gen) -> (u8, i64, i64, i64) {
        let (i, j, r) = (g.i as i64, g.j as i64, g.r as i64);
        let flip = matches!(
            (self, g.sign),
            (OrderingKind::Standard, Sign::Plus) | (OrderingKind::Opposite, Sign::Minus)
        );
        let s = if g.sign == Sign::Plus { 0 } else { 1 };
        if flip {
            (s, j - i, i, r)
        } else {
            (s, i - j, i, r)
        }
    }

    pub fn cmp(&self, a: &Gen, b: &Gen) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }

    /// Ordering comparison that refuses identically zero generators.
    pub fn compare(&self, a: &Gen, b: &Gen) -> Result<Ordering> {
        if a.is_zero_gen() || b.is_zero_gen() {
            return invalid(format!("zero generator in comparison of {a} and {b}"));
        }
        Ok(self.cmp(a, b))
    }

    pub fn is_ordered(&self, w: &[Gen]) -> bool {
        w.windows(2).all(|p| self.cmp(&p[0], &p[1]) != Ordering::Greater)
    }

    pub fn name(&self) -> &'static str {
        match self {
            OrderingKind::Standard => "standard",
            OrderingKind::Opposite => "opposite",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_chain() {
        let o = OrderingKind::Standard;
        assert_eq!(o.cmp(&Gen::plus(2, 1, 0), &Gen::plus(1, 1, 0)), Ordering::Less);
        // l+_{n1} < l+_{n-1,1} < l+_{n2} < l+_{11} < l+_{nn} < l+_{12}, n = 3
        let chain = [(3, 1), (2, 1), (3, 2), (1, 1), (3, 3), (1, 2), (1, 3)];
        for w in chain.windows(2) {
            let a = Gen::plus(w[0].0, w[0].1, 1);
            let b = Gen::plus(w[1].0, w[1].1, 1);
            assert_eq!(o.cmp(&a, &b), Ordering::Less, "{a} vs {b}");
        }
        let chain = [(1, 3), (1, 2), (2, 3), (1, 1), (3, 3), (2, 1), (3, 1)];
        for w in chain.windows(2) {
            assert_eq!(o.cmp(&Gen::minus(w[0].0, w[0].1, 1), &Gen::minus(w[1].0, w[1].1, 1)), Ordering::Less);
        }
    }

    #[test]
    fn opposite_chain() {
        let o = OrderingKind::Opposite;
        let chain = [(1, 3), (1, 2), (2, 3), (1, 1), (3, 3), (2, 1), (3, 1)];
        for w in chain.windows(2) {
            assert_eq!(o.cmp(&Gen::plus(w[0].0, w[0].1, 1), &Gen::plus(w[1].0, w[1].1, 1)), Ordering::Less);
        }
        let chain = [(3, 1), (2, 1), (3, 2), (1, 1), (3, 3), (1, 2), (1, 3)];
        for w in chain.windows(2) {
            assert_eq!(o.cmp(&Gen::minus(w[0].0, w[0].1, 1), &Gen::minus(w[1].0, w[1].1, 1)), Ordering::Less);
        }
    }

    #[test]
    fn plus_before_minus_and_modes() {
        for o in [OrderingKind::Standard, OrderingKind::Opposite] {
            assert_eq!(o.cmp(&Gen::plus(1, 2, 5), &Gen::minus(2, 1, 0)), Ordering::Less);
            assert_eq!(o.cmp(&Gen::minus(1, 2, 3), &Gen::minus(1, 2, 5)), Ordering::Less);
        }
        assert!(OrderingKind::Standard.compare(&Gen::plus(2, 1, 1), &Gen::plus(1, 1, 0)).is_ok());
        assert!(OrderingKind::Standard.compare(&Gen::plus(2, 1, 0), &Gen::plus(1, 1, 0)).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(Gen::plus(1, 2, 1).to_string(), "l+12[-1]");
        assert_eq!(Gen::plus(1, 1, 0).to_string(), "l+11[0]");
        assert_eq!(Gen::minus(2, 1, 3).to_string(), "l-21[3]");
    }
}
