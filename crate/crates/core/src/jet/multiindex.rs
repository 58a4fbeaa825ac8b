//! Multi-indices for jet coordinates.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Exponent vector over the base variables; `|σ|` is the jet order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiIndex(pub Vec<u8>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn order(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    /// σ + 1_i
    pub fn bump(&self, i: usize) -> MultiIndex {
        let mut v = self.0.clone();
        v[i] += 1;
        MultiIndex(v)
    }

    /// σ − 1_i when possible.
    pub fn lower(&self, i: usize) -> Option<MultiIndex> {
        if self.0[i] == 0 {
            return None;
        }
        let mut v = self.0.clone();
        v[i] -= 1;
        Some(MultiIndex(v))
    }

    /// All multi-indices of the given order, graded-lex sorted.
    pub fn all_of_order(n: usize, order: usize) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = vec![0u8; n];
        fn rec(n: usize, pos: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<MultiIndex>) {
            if pos == n - 1 {
                cur[pos] = left as u8;
                out.push(MultiIndex(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[pos] = e as u8;
                rec(n, pos + 1, left - e, cur, out);
            }
        }
        if n == 0 {
            return out;
        }
        rec(n, 0, order, &mut cur, &mut out);
        out
    }

    /// All multi-indices with order ≤ bound, ascending by (order, lex).
    pub fn all_up_to(n: usize, bound: usize) -> Vec<MultiIndex> {
        (0..=bound)
            .flat_map(|o| Self::all_of_order(n, o))
            .collect()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| other.0.cmp(&self.0)) // more leading derivatives first
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for MultiIndex {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Result<Vec<u8>, _> = s.split(',').map(|p| p.trim().parse::<u8>()).collect();
        parts.map(MultiIndex).map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_order() {
        let all = MultiIndex::all_up_to(2, 2);
        let strs: Vec<String> = all.iter().map(|m| m.to_string()).collect();
        assert_eq!(
            strs,
            vec!["0,0", "1,0", "0,1", "2,0", "1,1", "0,2"],
            "graded order with x-derivatives first"
        );
    }

    #[test]
    fn parse_display_roundtrip() {
        let m: MultiIndex = "2,1".parse().unwrap();
        assert_eq!(m.0, vec![2, 1]);
        assert_eq!(m.to_string(), "2,1");
        assert_eq!(m.order(), 3);
    }
}
