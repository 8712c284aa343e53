//! Information that can be pulled out of reducible or equivalent listing
//! pairs.
//!
//! The central object is [`PairedListings`]: a listing `f` of `B = A ∪ {m}`
//! that starts with `m`, aligned with an equivalent listing `g` of `A`. Rank
//! alignment forces `f(g⁻¹(a_k)) = a_{k-1}`, so following `f ∘ g⁻¹` from any
//! enumerated element walks down through every smaller element of `A`. That
//! walk decides membership in `A` below any enumerated element.

use serde::Serialize;

use crate::prefix::{equiv_eo, leq_eo, Pattern, PrefixListing, SetSample};
use crate::{Error, Result};

/// A prefix's value set in ascending order: `a_1 < a_2 < … < a_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AscendingView {
    values: Vec<u64>,
}

impl AscendingView {
    pub fn of(p: &PrefixListing) -> Self {
        Self {
            values: p.ascending_values(),
        }
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// `a_k`, 1-based.
    pub fn nth(&self, k: usize) -> Option<u64> {
        k.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }

    /// The `k` with `a_k = v`.
    pub fn rank_of(&self, v: u64) -> Option<usize> {
        self.values.binary_search(&v).ok().map(|i| i + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FirstClause {
    pub fpos: usize,
    pub gpos: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StepClause {
    pub i: usize,
    pub premise_held: bool,
    pub fpos: usize,
    pub gpos: usize,
    /// `true` when the premise failed (the clause is vacuous).
    pub holds: bool,
}

/// Where a reducible pair places the `k`-th smallest elements of the two
/// value sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositionBoundsReport {
    #[serde(rename = "clause1")]
    pub first: Option<FirstClause>,
    #[serde(rename = "clause2")]
    pub steps: Vec<StepClause>,
}

impl PositionBoundsReport {
    pub fn all_hold(&self) -> bool {
        self.first.is_none_or(|c| c.holds) && self.steps.iter().all(|c| c.holds)
    }
}

/// For `f ≤eo g` with ascending views `a` and `b`:
///
/// 1. `f⁻¹(a_1) ≤ g⁻¹(b_1)`;
/// 2. for `i > 1`, if `f⁻¹(a_j) = g⁻¹(b_j)` for all `j < i`, then
///    `f⁻¹(a_i) ≤ g⁻¹(b_i)`.
///
/// Every evaluated clause holds for reducible pairs; the report records each
/// one so callers can confirm it.
pub fn check_position_bounds(f: &PrefixListing, g: &PrefixListing) -> Result<PositionBoundsReport> {
    if let crate::Verdict::FailsAt(i, j) = leq_eo(f, g)? {
        return Err(Error::PreconditionViolated(format!(
            "f is not reducible to g (fails at ({i}, {j}))"
        )));
    }
    let a = AscendingView::of(f);
    let b = AscendingView::of(g);
    // Each value comes from the prefix's own view, so the lookups succeed.
    let positions: Vec<(usize, usize)> = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(&av, &bv)| (f.position_of(av).unwrap(), g.position_of(bv).unwrap()))
        .collect();

    let first = positions.first().map(|&(fpos, gpos)| FirstClause {
        fpos,
        gpos,
        holds: fpos <= gpos,
    });
    let mut steps = Vec::with_capacity(positions.len().saturating_sub(1));
    let mut premise = true;
    for k in 1..positions.len() {
        let (prev_f, prev_g) = positions[k - 1];
        premise &= prev_f == prev_g;
        let (fpos, gpos) = positions[k];
        steps.push(StepClause {
            i: k + 1,
            premise_held: premise,
            fpos,
            gpos,
            holds: !premise || fpos <= gpos,
        });
    }
    Ok(PositionBoundsReport { first, steps })
}

/// A listing `f` of `A ∪ {m}` starting at `m`, paired with an equivalent
/// listing `g` of `A` so that `f(i)` and `g(i)` have equal ranks in their
/// own value sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairedListings {
    f: PrefixListing,
    g: PrefixListing,
    m: u64,
}

impl PairedListings {
    /// Validates an arbitrary pair against every pairing invariant.
    pub fn new(f: PrefixListing, g: PrefixListing, m: u64) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidPairing(msg));
        if f.len() != g.len() {
            return invalid(format!("lengths differ ({} vs {})", f.len(), g.len()));
        }
        if m == 0 {
            return invalid("m must be at least 1".into());
        }
        if g.contains(m) {
            return invalid(format!("m = {m} is enumerated by g"));
        }
        let a = AscendingView::of(&g);
        if let Some(min) = a.nth(1) {
            if m >= min {
                return invalid(format!("m = {m} is not below min(A) = {min}"));
            }
        }
        if f.at(1) != Some(m) {
            return invalid(format!("f(1) must be m = {m}"));
        }
        let mut b_values = Vec::with_capacity(a.values().len() + 1);
        b_values.push(m);
        b_values.extend_from_slice(a.values());
        let b = AscendingView { values: b_values };
        for (i, (&fv, &gv)) in f.values().iter().zip(g.values()).enumerate() {
            let Some(rank_f) = b.rank_of(fv) else {
                return invalid(format!("f({}) = {fv} is not in A ∪ {{m}}", i + 1));
            };
            let rank_g = a.rank_of(gv).expect("g value in its own view");
            if rank_f != rank_g {
                return invalid(format!(
                    "rank alignment fails at position {}: f has rank {rank_f}, g has rank {rank_g}",
                    i + 1
                ));
            }
        }
        if !equiv_eo(&f, &g)? {
            return invalid("f and g are not equivalent".into());
        }
        Ok(Self { f, g, m })
    }

    pub fn f(&self) -> &PrefixListing {
        &self.f
    }

    pub fn g(&self) -> &PrefixListing {
        &self.g
    }

    pub fn m(&self) -> u64 {
        self.m
    }
}

/// Builds the aligned pair for `A = a_sample` and extra element `m`: both
/// listings follow `pattern`, `f` over the `|A|` smallest elements of
/// `A ∪ {m}` and `g` over `A`. The pattern must start with rank 1 so that
/// `f(1) = m`.
pub fn make_paired(a_sample: &SetSample, m: u64, pattern: &Pattern) -> Result<PairedListings> {
    if m == 0 || a_sample.contains(m) || a_sample.min().is_some_and(|min| m >= min) {
        return Err(Error::BadExtra(format!(
            "m = {m} must be a natural below every element of A"
        )));
    }
    if pattern.len() != a_sample.len() {
        return Err(Error::BadPattern(format!(
            "pattern length {} does not match |A| = {}",
            pattern.len(),
            a_sample.len()
        )));
    }
    if pattern.ranks().first() != Some(&1) {
        return Err(Error::BadPattern("pattern must start with rank 1".into()));
    }
    let a: Vec<u64> = a_sample.elements().iter().copied().collect();
    let b: Vec<u64> = std::iter::once(m).chain(a.iter().copied()).collect();
    let f = pattern.ranks().iter().map(|&r| b[r - 1]).collect();
    let g = pattern.ranks().iter().map(|&r| a[r - 1]).collect();
    Ok(PairedListings {
        f: PrefixListing::from_distinct(f),
        g: PrefixListing::from_distinct(g),
        m,
    })
}

/// `f(g⁻¹(a))`: the largest element of `A` below `a`, or `m` when `a` is the
/// minimum.
pub fn predecessor(p: &PairedListings, a: u64) -> Result<u64> {
    let pos = p.g.position_of(a).ok_or(Error::ValueAbsent(a))?;
    Ok(p.f.values()[pos - 1])
}

/// Iterates [`predecessor`] from `a` until it reaches `m`. The result lists
/// every element of `A` below `a`, descending.
pub fn descent_chain(p: &PairedListings, a: u64) -> Result<Vec<u64>> {
    if !p.g.contains(a) {
        return Err(Error::ValueAbsent(a));
    }
    let mut out = Vec::new();
    let mut x = a;
    loop {
        let pos = p.g.position_of(x).ok_or(Error::InsufficientPrefix(x))?;
        let y = p.f.values()[pos - 1];
        if y == p.m {
            return Ok(out);
        }
        if y >= x || out.len() >= p.g.len() {
            return Err(Error::InvalidPairing(format!(
                "predecessor of {x} is {y}, not a smaller element"
            )));
        }
        out.push(y);
        x = y;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Membership {
    #[serde(rename = "in")]
    InA,
    #[serde(rename = "out")]
    NotInA,
    #[serde(rename = "insufficient")]
    InsufficientPrefix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub result: Membership,
    /// The descent from the least enumerated witness above `x`, when one was
    /// needed.
    pub descent: Vec<u64>,
}

/// Decides `x ∈ A` from the pairing alone: `x` is in `A` if `g` enumerates
/// it; otherwise the descent from the least enumerated `a > x` lists all of
/// `A` below `a`, and `x` is out if it is absent from that list.
pub fn decide_membership(p: &PairedListings, x: u64) -> Result<Decision> {
    if x == 0 {
        return Err(Error::ZeroValue);
    }
    if p.g.contains(x) {
        return Ok(Decision {
            result: Membership::InA,
            descent: Vec::new(),
        });
    }
    let Some(witness) = p.g.values().iter().copied().filter(|&a| a > x).min() else {
        return Ok(Decision {
            result: Membership::InsufficientPrefix,
            descent: Vec::new(),
        });
    };
    let descent = descent_chain(p, witness)?;
    let result = if descent.contains(&x) {
        Membership::InA
    } else {
        Membership::NotInA
    };
    Ok(Decision { result, descent })
}

/// The `n + 1` finite modifications of `A` on `{1..n}`: member `k`
/// (1-based) is `(A − {k, …, n}) ∪ {1, …, k − 1}`. The bound is preserved.
pub fn perturbation_family(a_sample: &SetSample, n: u64) -> Result<Vec<SetSample>> {
    if a_sample.bound() < n {
        return Err(Error::BadBound {
            bound: a_sample.bound(),
            n,
        });
    }
    (1..=n + 1)
        .map(|k| {
            let kept = a_sample
                .elements()
                .iter()
                .copied()
                .filter(|&x| !(k..=n).contains(&x));
            SetSample::new(kept.chain(1..k), a_sample.bound())
        })
        .collect()
}
