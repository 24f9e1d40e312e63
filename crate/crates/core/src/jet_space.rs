//! The fibred chart ℝⁿ×ℝᵐ → ℝⁿ, its jet coordinates, and multi-index
//! combinatorics.
//!
//! Indices are zero-based in the API (`0..n` for base directions, `0..m`
//! for fibre components). Multi-indices are stored sorted, so `y^σ_{12}` and
//! `y^σ_{21}` are the same coordinate and no multiplicity weights ever appear.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A symmetric multi-index: a non-decreasing list of base directions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn empty() -> Self {
        MultiIndex(Vec::new())
    }

    /// Builds a multi-index from directions in any order.
    pub fn new(mut entries: Vec<usize>) -> Self {
        entries.sort_unstable();
        MultiIndex(entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `J` juxtaposed with `i`, i.e. the sorted merge.
    pub fn append(&self, i: usize) -> Self {
        let pos = self.0.partition_point(|&e| e <= i);
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0[..pos]);
        v.push(i);
        v.extend_from_slice(&self.0[pos..]);
        MultiIndex(v)
    }

    /// Checked variant of [`append`](Self::append) against a base dimension.
    pub fn try_append(&self, i: usize, n: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, bound: n });
        }
        Ok(self.append(i))
    }

    /// Splits off the largest entry: `J = K i`.
    pub fn pop_last(&self) -> Option<(MultiIndex, usize)> {
        let (&last, rest) = self.0.split_last()?;
        Some((MultiIndex(rest.to_vec()), last))
    }

    pub fn concat(&self, other: &MultiIndex) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        MultiIndex::new(v)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// `C(n+k-1, k)`, the number of multi-indices of length `k` over `n` directions.
pub fn count_multiindices(n: usize, k: usize) -> usize {
    if n == 0 {
        return usize::from(k == 0);
    }
    let mut acc: u128 = 1;
    for t in 0..k as u128 {
        acc = acc * (n as u128 + t) / (t + 1);
    }
    acc as usize
}

/// All multi-indices of length exactly `k`, lexicographically ordered.
pub fn multiindices_of_length(n: usize, k: usize) -> Vec<MultiIndex> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
        if cur.len() == k {
            out.push(MultiIndex(cur.clone()));
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::with_capacity(count_multiindices(n, k));
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// A coordinate on `J^r Y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum JetCoordinate {
    Base(usize),
    Fibre { sigma: usize, j: MultiIndex },
}

impl JetCoordinate {
    pub fn fibre(sigma: usize, j: MultiIndex) -> Self {
        JetCoordinate::Fibre { sigma, j }
    }

    pub fn order(&self) -> usize {
        match self {
            JetCoordinate::Base(_) => 0,
            JetCoordinate::Fibre { j, .. } => j.len(),
        }
    }

    pub fn is_fibre(&self) -> bool {
        matches!(self, JetCoordinate::Fibre { .. })
    }
}

// Base coordinates first, then fibre coordinates by (|J|, σ, J).
impl Ord for JetCoordinate {
    fn cmp(&self, other: &Self) -> Ordering {
        use JetCoordinate::*;
        match (self, other) {
            (Base(a), Base(b)) => a.cmp(b),
            (Base(_), Fibre { .. }) => Ordering::Less,
            (Fibre { .. }, Base(_)) => Ordering::Greater,
            (Fibre { sigma: s1, j: j1 }, Fibre { sigma: s2, j: j2 }) => j1
                .len()
                .cmp(&j2.len())
                .then(s1.cmp(s2))
                .then_with(|| j1.cmp(j2)),
        }
    }
}

impl PartialOrd for JetCoordinate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The chart: base and fibre names fix `n` and `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JetSpace {
    base_names: Vec<String>,
    fibre_names: Vec<String>,
}

impl JetSpace {
    pub fn new<S: Into<String>>(
        base: impl IntoIterator<Item = S>,
        fibre: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let base_names: Vec<String> = base.into_iter().map(Into::into).collect();
        let fibre_names: Vec<String> = fibre.into_iter().map(Into::into).collect();
        if base_names.is_empty() {
            return Err(Error::InvalidSpace("base dimension must be ≥ 1".into()));
        }
        if fibre_names.is_empty() {
            return Err(Error::InvalidSpace("fibre dimension must be ≥ 1".into()));
        }
        let mut all: Vec<&String> = base_names.iter().chain(&fibre_names).collect();
        all.sort();
        if let Some(w) = all.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidSpace(format!("duplicate name `{}`", w[0])));
        }
        Ok(JetSpace {
            base_names,
            fibre_names,
        })
    }

    pub fn n(&self) -> usize {
        self.base_names.len()
    }

    pub fn m(&self) -> usize {
        self.fibre_names.len()
    }

    pub fn base_names(&self) -> &[String] {
        &self.base_names
    }

    pub fn fibre_names(&self) -> &[String] {
        &self.fibre_names
    }

    pub fn base_name(&self, i: usize) -> &str {
        &self.base_names[i]
    }

    pub fn fibre_name(&self, sigma: usize) -> &str {
        &self.fibre_names[sigma]
    }

    pub fn check(&self, c: &JetCoordinate) -> Result<()> {
        match c {
            JetCoordinate::Base(i) if *i >= self.n() => Err(Error::IndexOutOfRange {
                index: *i,
                bound: self.n(),
            }),
            JetCoordinate::Fibre { sigma, .. } if *sigma >= self.m() => {
                Err(Error::IndexOutOfRange {
                    index: *sigma,
                    bound: self.m(),
                })
            }
            JetCoordinate::Fibre { j, .. } if j.entries().iter().any(|&e| e >= self.n()) => {
                Err(Error::IndexOutOfRange {
                    index: *j.entries().last().unwrap(),
                    bound: self.n(),
                })
            }
            _ => Ok(()),
        }
    }

    /// Coordinates of `J^r Y` in canonical order.
    pub fn enumerate_coordinates(&self, r: usize) -> Vec<JetCoordinate> {
        let mut out: Vec<JetCoordinate> = (0..self.n()).map(JetCoordinate::Base).collect();
        for k in 0..=r {
            let js = multiindices_of_length(self.n(), k);
            for sigma in 0..self.m() {
                out.extend(js.iter().map(|j| JetCoordinate::fibre(sigma, j.clone())));
            }
        }
        out
    }

    /// Plain-text name, e.g. `v_tx` (or `qdd` when `n = 1`).
    pub fn coordinate_name(&self, c: &JetCoordinate) -> String {
        match c {
            JetCoordinate::Base(i) => self.base_names[*i].clone(),
            JetCoordinate::Fibre { sigma, j } => {
                let name = &self.fibre_names[*sigma];
                if j.is_empty() {
                    name.clone()
                } else if self.n() == 1 {
                    format!("{name}{}", "d".repeat(j.len()))
                } else {
                    let suffix: String = j
                        .entries()
                        .iter()
                        .map(|&e| self.base_names[e].as_str())
                        .collect();
                    format!("{name}_{suffix}")
                }
            }
        }
    }

    /// Every accepted spelling of each coordinate up to order `r`.
    pub fn coordinate_spellings(&self, r: usize) -> Vec<(String, JetCoordinate)> {
        let mut out = Vec::new();
        for c in self.enumerate_coordinates(r) {
            out.push((self.coordinate_name(&c), c.clone()));
            if let JetCoordinate::Fibre { sigma, j } = &c {
                if !j.is_empty() {
                    let suffix: String = j
                        .entries()
                        .iter()
                        .map(|&e| self.base_names[e].as_str())
                        .collect();
                    let alt = format!("{}_{suffix}", self.fibre_names[*sigma]);
                    if alt != out.last().unwrap().0 {
                        out.push((alt, c.clone()));
                    }
                }
            }
        }
        out
    }
}
