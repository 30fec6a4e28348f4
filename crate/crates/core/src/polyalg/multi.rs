use std::fmt;

use smallvec::SmallVec;

/// Exponent vector α = (α₁, …, αₙ).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(pub SmallVec<[u32; 4]>);

impl MultiIndex {
    pub fn zeros(n: usize) -> Self {
        MultiIndex(SmallVec::from_elem(0, n))
    }

    pub fn unit(n: usize, j: usize) -> Self {
        let mut m = Self::zeros(n);
        m.0[j] = 1;
        m
    }

    pub fn from_slice(v: &[u32]) -> Self {
        MultiIndex(SmallVec::from_slice(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// |α|
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn plus(&self, other: &Self) -> Self {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn bumped(&self, j: usize) -> Self {
        let mut m = self.clone();
        m.0[j] += 1;
        m
    }

    pub fn lowered(&self, j: usize) -> Self {
        let mut m = self.clone();
        m.0[j] -= 1;
        m
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// All multi-indices of length n and order d, in ascending lexicographic order.
    pub fn all_of_order(n: usize, d: u32) -> Vec<MultiIndex> {
        fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == n {
                prefix.push(d);
                out.push(MultiIndex::from_slice(prefix));
                prefix.pop();
                return;
            }
            for a in 0..=d {
                prefix.push(a);
                rec(n, d - a, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        rec(n, d, &mut Vec::with_capacity(n), &mut out);
        out.sort();
        out
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        assert_eq!(MultiIndex::all_of_order(3, 2).len(), 6);
        assert_eq!(MultiIndex::all_of_order(1, 5).len(), 1);
        let v = MultiIndex::all_of_order(2, 3);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }
}
