//! Weight multisets for spin representations and `sl(2)^k` characters.
//!
//! Weights are stored doubled, so the half-integral spin weights become
//! sign vectors and the `sl(2)` irrep `V_a` has weights `a, a-2, …, -a`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

pub type Weight = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMultiset {
    rank: usize,
    weights: BTreeMap<Weight, u64>,
}

impl WeightMultiset {
    pub fn empty(rank: usize) -> Self {
        WeightMultiset { rank, weights: BTreeMap::new() }
    }

    /// The one-dimensional representation with weight 0.
    pub fn trivial(rank: usize) -> Self {
        let mut w = Self::empty(rank);
        w.insert(vec![0; rank], 1);
        w
    }

    pub fn from_pairs(rank: usize, pairs: impl IntoIterator<Item = (Weight, u64)>) -> Result<Self> {
        let mut w = Self::empty(rank);
        for (k, m) in pairs {
            if k.len() != rank {
                return Err(Error::RankMismatch { expected: rank, got: k.len() });
            }
            w.insert(k, m);
        }
        Ok(w)
    }

    fn insert(&mut self, w: Weight, mult: u64) {
        if mult > 0 {
            *self.weights.entry(w).or_insert(0) += mult;
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn weights(&self) -> &BTreeMap<Weight, u64> {
        &self.weights
    }

    pub fn mult(&self, w: &[i64]) -> u64 {
        self.weights.get(w).copied().unwrap_or(0)
    }

    /// Sum of multiplicities.
    pub fn dim(&self) -> u64 {
        self.weights.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Invariant under `w ↦ -w`.
    pub fn is_self_dual(&self) -> bool {
        self.weights
            .iter()
            .all(|(w, m)| self.mult(&w.iter().map(|x| -x).collect::<Vec<_>>()) == *m)
    }

    /// Direct sum.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.same_rank(other)?;
        let mut out = self.clone();
        for (w, m) in &other.weights {
            out.insert(w.clone(), *m);
        }
        Ok(out)
    }

    /// `k` copies.
    pub fn times(&self, k: u64) -> Self {
        WeightMultiset {
            rank: self.rank,
            weights: self
                .weights
                .iter()
                .filter(|_| k > 0)
                .map(|(w, m)| (w.clone(), m * k))
                .collect(),
        }
    }

    fn same_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { expected: self.rank, got: other.rank });
        }
        Ok(())
    }

    /// Weights listed with repetition, in sorted order.
    pub fn expanded(&self) -> Vec<&Weight> {
        self.weights
            .iter()
            .flat_map(|(w, m)| std::iter::repeat_n(w, *m as usize))
            .collect()
    }
}

impl fmt::Display for WeightMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .weights
            .iter()
            .map(|(w, m)| format!("{w:?}×{m}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn add_weights(a: &[i64], b: &[i64]) -> Weight {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Internal tensor product (Minkowski sum of multisets).
pub fn tensor(a: &WeightMultiset, b: &WeightMultiset) -> Result<WeightMultiset> {
    a.same_rank(b)?;
    let mut out = WeightMultiset::empty(a.rank);
    for (wa, ma) in &a.weights {
        for (wb, mb) in &b.weights {
            out.insert(add_weights(wa, wb), ma * mb);
        }
    }
    Ok(out)
}

/// External tensor product: weights are concatenated.
pub fn boxtimes(a: &WeightMultiset, b: &WeightMultiset) -> WeightMultiset {
    let mut out = WeightMultiset::empty(a.rank + b.rank);
    for (wa, ma) in &a.weights {
        for (wb, mb) in &b.weights {
            let mut w = wa.clone();
            w.extend_from_slice(wb);
            out.insert(w, ma * mb);
        }
    }
    out
}

/// `W ⊠ W ⊠ … ⊠ W` with `n` factors.
pub fn boxtimes_power(w: &WeightMultiset, n: usize) -> WeightMultiset {
    (0..n).fold(WeightMultiset::trivial(0), |acc, _| boxtimes(&acc, w))
}

fn pairs(w: &WeightMultiset, strict: bool) -> WeightMultiset {
    let basis = w.expanded();
    let mut out = WeightMultiset::empty(w.rank);
    for i in 0..basis.len() {
        let start = if strict { i + 1 } else { i };
        for b in &basis[start..] {
            out.insert(add_weights(basis[i], b), 1);
        }
    }
    out
}

/// `∧²W` from pairs `i < j` of an ordered weight basis.
pub fn wedge2(w: &WeightMultiset) -> WeightMultiset {
    pairs(w, true)
}

/// `Sym²W` from pairs `i ≤ j` of an ordered weight basis.
pub fn sym2(w: &WeightMultiset) -> WeightMultiset {
    pairs(w, false)
}

/// Spin weights of `so(N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpinWeights {
    /// `N` odd: the spin representation `S(N)`.
    Odd(WeightMultiset),
    /// `N` even: the half-spin representations `(S⁺, S⁻)`.
    Even(WeightMultiset, WeightMultiset),
}

impl SpinWeights {
    /// `S = S⁺ ⊕ S⁻` for even `N`.
    pub fn merged(&self) -> WeightMultiset {
        match self {
            SpinWeights::Odd(s) => s.clone(),
            SpinWeights::Even(p, m) => p.sum(m).expect("same rank"),
        }
    }
}

/// All sign vectors of length `⌊N/2⌋`; for even `N` split by the parity of
/// the number of minus signs.
pub fn spin_weights(n: usize) -> Result<SpinWeights> {
    if n < 2 {
        return Err(Error::RankMismatch { expected: 2, got: n });
    }
    let r = n / 2;
    let mut plus = WeightMultiset::empty(r);
    let mut minus = WeightMultiset::empty(r);
    for bits in 0u64..(1 << r) {
        let w: Weight = (0..r).map(|i| if bits >> i & 1 == 1 { -1 } else { 1 }).collect();
        if bits.count_ones() % 2 == 0 {
            plus.insert(w, 1);
        } else {
            minus.insert(w, 1);
        }
    }
    Ok(if n % 2 == 1 {
        SpinWeights::Odd(plus.sum(&minus).expect("same rank"))
    } else {
        SpinWeights::Even(plus, minus)
    })
}

/// Restriction from `so(nm)` to `so(m)^n`.
///
/// The first `n·⌊m/2⌋` coordinates form the Cartan of `so(m)^n`, block by
/// block; the remaining ones vanish on it and are dropped.
pub fn restrict_to_product(w: &WeightMultiset, m: usize, n: usize) -> Result<WeightMultiset> {
    let expected = n * m / 2;
    if w.rank != expected {
        return Err(Error::RankMismatch { expected, got: w.rank });
    }
    let keep = n * (m / 2);
    let mut out = WeightMultiset::empty(keep);
    for (wt, mult) in &w.weights {
        out.insert(wt[..keep].to_vec(), *mult);
    }
    Ok(out)
}

/// Number of dropped coordinates, `⌊nm/2⌋ - n⌊m/2⌋` (equal to `⌊n/2⌋` for odd `m`).
pub fn dropped_rank(m: usize, n: usize) -> usize {
    n * m / 2 - n * (m / 2)
}

/// Both sides of the branching identity
/// `S(nm)|so(m)^n = 2^{n'} · S(m)^{⊠n}`.
#[derive(Clone, Debug)]
pub struct BranchingCheck {
    pub m: usize,
    pub n: usize,
    pub restricted: WeightMultiset,
    pub product: WeightMultiset,
    pub copies: u64,
    pub holds: bool,
}

pub fn check_branching(m: usize, n: usize) -> Result<BranchingCheck> {
    let big = spin_weights(n * m)?.merged();
    let restricted = restrict_to_product(&big, m, n)?;
    let small = spin_weights(m)?.merged();
    let copies = 1u64 << dropped_rank(m, n);
    let product = boxtimes_power(&small, n).times(copies);
    let dims_agree = (1u64 << (n * m / 2)) == copies * (1u64 << (m / 2)).pow(n as u32);
    Ok(BranchingCheck {
        m,
        n,
        holds: restricted == product && dims_agree,
        restricted,
        product,
        copies,
    })
}

/// `V_{a₁} ⊠ … ⊠ V_{a_k}` for `sl(2)^k`.
pub fn sl2_irrep(highest: &[i64]) -> Result<WeightMultiset> {
    if highest.iter().any(|&a| a < 0) {
        return Err(Error::NotACharacter(format!("{highest:?} is not dominant")));
    }
    Ok(highest.iter().fold(WeightMultiset::trivial(0), |acc, &a| {
        let string = WeightMultiset::from_pairs(1, (0..=a).map(|i| (vec![a - 2 * i], 1)))
            .expect("rank 1");
        boxtimes(&acc, &string)
    }))
}

/// Greedy highest-weight decomposition of an `sl(2)^k` character.
pub fn decompose_sl2k(w: &WeightMultiset) -> Result<Vec<(Weight, u64)>> {
    let mut rest = w.weights.clone();
    let mut out = Vec::new();
    while let Some((top, &mult)) = rest.iter().next_back() {
        let top = top.clone();
        let irrep = sl2_irrep(&top)?;
        for (wt, m) in &irrep.weights {
            let have = rest.get(wt).copied().unwrap_or(0);
            let need = m * mult;
            if have < need {
                return Err(Error::NotACharacter(format!(
                    "weight {wt:?} has multiplicity {have}, V{top:?} needs {need}"
                )));
            }
            if have == need {
                rest.remove(wt);
            } else {
                rest.insert(wt.clone(), have - need);
            }
        }
        out.push((top, mult));
    }
    Ok(out)
}

/// Character of `⊕ mult·V_λ`.
pub fn recompose(rank: usize, parts: &[(Weight, u64)]) -> Result<WeightMultiset> {
    parts.iter().try_fold(WeightMultiset::empty(rank), |acc, (hw, m)| {
        acc.sum(&sl2_irrep(hw)?.times(*m))
    })
}
