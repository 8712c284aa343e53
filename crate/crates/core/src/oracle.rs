//! Exhaustive brute-force checks over all permutations of small `n`.
//!
//! Each registered property enumerates every instance up to its bound and
//! collects counterexamples. Checks that restate a definition (the
//! reducibility condition, repeat detection) are evaluated here by direct
//! loops, not through the library routines they validate.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{chain_stabilize, transport, Chain};
use crate::extraction::check_position_bounds;
use crate::prefix::{
    ascending_listing, equiv_eo, inversions, leq_eo, standardize, Pattern, PrefixListing,
    SetSample, Verdict,
};
use crate::{Error, Result};

/// Largest `n` accepted by [`all_patterns`].
pub const MAX_PATTERN_N: usize = 8;

/// Registered property ids with their `(min, max)` bounds on `n`.
pub const REGISTRY: [(&str, usize, usize); 9] = [
    ("reflexive", 0, MAX_PATTERN_N),
    ("transitive", 0, 4),
    ("non-antisymmetric", 1, 5),
    ("subset-characterization", 0, 5),
    ("lemma-2-3", 0, 5),
    ("lemma-2-8", 0, 5),
    ("transport", 0, 4),
    ("stabilization", 0, 5),
    ("class-count", 0, 5),
];

/// Random descending walks per `n` where exhaustive chain enumeration is
/// out of reach.
const STABILIZATION_WALKS: usize = 2_000;
const STABILIZATION_EXHAUSTIVE_MAX_N: usize = 4;

/// All `n!` permutations of `1..=n` in lexicographic order.
pub fn all_patterns(n: usize) -> Result<Vec<Pattern>> {
    if n > MAX_PATTERN_N {
        return Err(Error::TooLarge {
            n,
            max: MAX_PATTERN_N,
        });
    }
    Ok((1..=n)
        .permutations(n)
        .map(Pattern::from_ranks_unchecked)
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyReport {
    pub property: String,
    pub n: usize,
    pub instances: u64,
    /// Instances on which the checked claim's hypothesis held (for example,
    /// reducible pairs among all pairs examined).
    pub applicable: u64,
    /// Sorted counterexample descriptions; empty on pass.
    pub violations: Vec<String>,
    /// A witness for existence claims.
    pub witness: Option<(PrefixListing, PrefixListing)>,
    pub elapsed: Duration,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    property: &'a str,
    n: usize,
    instances: u64,
    violations: &'a [String],
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<[&'a PrefixListing; 2]>,
}

impl PropertyReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    /// One JSON object on a single line. Timing is left out so the output is
    /// reproducible.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&ReportJson {
            property: &self.property,
            n: self.n,
            instances: self.instances,
            violations: &self.violations,
            pass: self.pass(),
            witness: self.witness.as_ref().map(|(a, b)| [a, b]),
        })
        .expect("report serializes")
    }
}

pub fn property_bounds(id: &str) -> Result<(usize, usize)> {
    REGISTRY
        .iter()
        .find(|(name, _, _)| *name == id)
        .map(|&(_, lo, hi)| (lo, hi))
        .ok_or_else(|| Error::UnknownProperty(id.to_string()))
}

pub fn run_property(id: &str, n: usize) -> Result<PropertyReport> {
    run_property_with(id, n, Execution::default())
}

pub fn run_property_with(id: &str, n: usize, exec: Execution) -> Result<PropertyReport> {
    let (lo, hi) = property_bounds(id)?;
    if n > hi {
        return Err(Error::TooLarge { n, max: hi });
    }
    if n < lo {
        return Err(Error::TooSmall { n, min: lo });
    }
    let start = Instant::now();
    let outcome = match id {
        "reflexive" => reflexive(n, exec),
        "transitive" => transitive(n, exec),
        "non-antisymmetric" => non_antisymmetric(n, exec),
        "subset-characterization" => subset_characterization(n, exec),
        "lemma-2-3" => ascending_is_least(n, exec),
        "lemma-2-8" => position_bounds(n, exec),
        "transport" => transport_preserves_pattern(n, exec),
        "stabilization" => stabilization(n, exec),
        "class-count" => class_count(n),
        _ => unreachable!("registry and dispatch disagree on {id}"),
    };
    let mut violations = outcome.violations;
    violations.sort();
    Ok(PropertyReport {
        property: id.to_string(),
        n,
        instances: outcome.instances,
        applicable: outcome.applicable,
        violations,
        witness: outcome.witness,
        elapsed: start.elapsed(),
    })
}

/// Runs every registered property, each at `min(n, its bound)`.
pub fn run_all(n: usize, exec: Execution) -> Vec<PropertyReport> {
    REGISTRY
        .iter()
        .map(|&(id, lo, hi)| {
            run_property_with(id, n.clamp(lo, hi), exec).expect("n clamped into bounds")
        })
        .collect()
}

#[derive(Default)]
struct Outcome {
    instances: u64,
    applicable: u64,
    violations: Vec<String>,
    witness: Option<(PrefixListing, PrefixListing)>,
}

/// Per-item result: (applicable count, violations).
type Tally = (u64, Vec<String>);

fn fan_out<T: Sync>(items: &[T], exec: Execution, check: impl Fn(&T) -> Tally + Sync) -> Tally {
    let merge = |mut a: Tally, b: Tally| {
        a.0 += b.0;
        a.1.extend(b.1);
        a
    };
    match exec {
        Execution::Sequential => items.iter().map(&check).fold((0, Vec::new()), merge),
        Execution::Parallel => items
            .par_iter()
            .map(&check)
            .reduce(|| (0, Vec::new()), merge),
    }
}

fn listings(n: usize) -> Vec<PrefixListing> {
    all_patterns(n)
        .expect("n within pattern bound")
        .iter()
        .map(Pattern::to_listing)
        .collect()
}

fn over_values(p: &PrefixListing, values: &[u64]) -> PrefixListing {
    standardize(p).materialize(values).expect("matching length")
}

fn evens(n: usize) -> Vec<u64> {
    (1..=n as u64).map(|i| 2 * i).collect()
}

/// The reducibility condition read straight off its definition: the least
/// `(i, j)`, `i < j`, with `f(i) > f(j)` but not `g(i) > g(j)`.
fn definition_violation(f: &[u64], g: &[u64]) -> Option<(usize, usize)> {
    let n = f.len();
    for i in 1..=n {
        for j in 1..=n {
            if i < j && f[i - 1] > f[j - 1] && !(g[i - 1] > g[j - 1]) {
                return Some((i, j));
            }
        }
    }
    None
}

fn holds(f: &PrefixListing, g: &PrefixListing) -> bool {
    leq_eo(f, g).expect("equal lengths").holds()
}

fn reflexive(n: usize, exec: Execution) -> Outcome {
    let ls = listings(n);
    let (applicable, violations) = fan_out(&ls, exec, |p| {
        if holds(p, p) {
            (1, vec![])
        } else {
            (1, vec![format!("[{p}] is not reducible to itself")])
        }
    });
    Outcome {
        instances: ls.len() as u64,
        applicable,
        violations,
        witness: None,
    }
}

fn transitive(n: usize, exec: Execution) -> Outcome {
    let ls = listings(n);
    let k = ls.len();
    let leq: Vec<Vec<bool>> = ls
        .iter()
        .map(|f| ls.iter().map(|g| holds(f, g)).collect())
        .collect();
    let (applicable, violations) = fan_out(&(0..k).collect::<Vec<_>>(), exec, |&a| {
        let mut tally: Tally = (0, vec![]);
        for b in (0..k).filter(|&b| leq[a][b]) {
            for c in (0..k).filter(|&c| leq[b][c]) {
                tally.0 += 1;
                if !leq[a][c] {
                    tally.1.push(format!(
                        "[{}] <= [{}] <= [{}] but not [{}] <= [{}]",
                        ls[a], ls[b], ls[c], ls[a], ls[c]
                    ));
                }
            }
        }
        tally
    });
    Outcome {
        instances: (k * k * k) as u64,
        applicable,
        violations,
        witness: None,
    }
}

fn non_antisymmetric(n: usize, exec: Execution) -> Outcome {
    let low = listings(n);
    let shifted: Vec<u64> = (n as u64 + 1..=2 * n as u64).collect();
    let mut all = low.clone();
    all.extend(low.iter().map(|p| over_values(p, &shifted)));
    let patterns: Vec<Pattern> = all.iter().map(standardize).collect();

    let (applicable, mut violations) = fan_out(&(0..all.len()).collect::<Vec<_>>(), exec, |&a| {
        let mut tally: Tally = (0, vec![]);
        for b in 0..all.len() {
            let eq = equiv_eo(&all[a], &all[b]).expect("equal lengths");
            if eq && a != b {
                tally.0 += 1;
            }
            if eq != (patterns[a] == patterns[b]) {
                tally.1.push(format!(
                    "equivalence of [{}] and [{}] disagrees with their patterns",
                    all[a], all[b]
                ));
            }
        }
        tally
    });
    let witness = (0..all.len())
        .cartesian_product(0..all.len())
        .find(|&(a, b)| all[a] != all[b] && equiv_eo(&all[a], &all[b]).unwrap())
        .map(|(a, b)| (all[a].clone(), all[b].clone()));
    if witness.is_none() {
        violations.push("no pair of distinct equivalent prefixes found".into());
    }
    Outcome {
        instances: (all.len() * all.len()) as u64,
        applicable,
        violations,
        witness,
    }
}

fn subset_characterization(n: usize, exec: Execution) -> Outcome {
    let ls = listings(n);
    let invs: Vec<_> = ls.iter().map(inversions).collect();
    let (applicable, violations) = fan_out(&(0..ls.len()).collect::<Vec<_>>(), exec, |&a| {
        let mut tally: Tally = (0, vec![]);
        for b in 0..ls.len() {
            let (f, g) = (&ls[a], &ls[b]);
            let direct = definition_violation(f.values(), g.values());
            let verdict = leq_eo(f, g).expect("equal lengths");
            let subset = invs[a].is_subset(&invs[b]);
            if direct.is_none() {
                tally.0 += 1;
            }
            let expected = direct.map_or(Verdict::Holds, |(i, j)| Verdict::FailsAt(i, j));
            if verdict != expected || subset != direct.is_none() {
                tally.1.push(format!(
                    "f=[{f}] g=[{g}]: definition {expected:?}, leq_eo {verdict:?}, inversion subset {subset}"
                ));
            }
        }
        tally
    });
    Outcome {
        instances: (ls.len() * ls.len()) as u64,
        applicable,
        violations,
        witness: None,
    }
}

fn ascending_is_least(n: usize, exec: Execution) -> Outcome {
    let ls = listings(n);
    let samples: Vec<SetSample> = (1..=2 * n as u64)
        .combinations(n)
        .map(|c| SetSample::new(c, 2 * n as u64).expect("valid sample"))
        .collect();
    let (applicable, violations) = fan_out(&samples, exec, |s| {
        let asc = ascending_listing(s);
        let mut tally: Tally = (0, vec![]);
        if !inversions(&asc).is_empty() {
            tally
                .1
                .push(format!("ascending listing [{asc}] has inversions"));
        }
        for g in &ls {
            tally.0 += 1;
            if !holds(&asc, g) {
                tally.1.push(format!("[{asc}] is not reducible to [{g}]"));
            }
        }
        tally
    });
    Outcome {
        instances: (samples.len() * ls.len()) as u64,
        applicable,
        violations,
        witness: None,
    }
}

fn position_bounds(n: usize, exec: Execution) -> Outcome {
    let fs = listings(n);
    let gs: Vec<PrefixListing> = fs.iter().map(|p| over_values(p, &evens(n))).collect();
    let (applicable, violations) = fan_out(&fs, exec, |f| {
        let mut tally: Tally = (0, vec![]);
        for g in &gs {
            let reducible = definition_violation(f.values(), g.values()).is_none();
            match (reducible, check_position_bounds(f, g)) {
                (true, Ok(report)) => {
                    tally.0 += 1;
                    if !report.all_hold() {
                        tally.1.push(format!("f=[{f}] g=[{g}]: {report:?}"));
                    }
                }
                (false, Err(Error::PreconditionViolated(_))) => {}
                (_, other) => tally.1.push(format!(
                    "f=[{f}] g=[{g}]: reducible={reducible} but got {other:?}"
                )),
            }
        }
        tally
    });
    Outcome {
        instances: (fs.len() * gs.len()) as u64,
        applicable,
        violations,
        witness: None,
    }
}

fn transport_preserves_pattern(n: usize, exec: Execution) -> Outcome {
    let ls = listings(n);
    let targets: Vec<PrefixListing> = ls.iter().map(|p| over_values(p, &evens(n))).collect();
    let target_set: BTreeSet<u64> = evens(n).into_iter().collect();
    let (applicable, violations) = fan_out(&ls, exec, |h| {
        let mut tally: Tally = (0, vec![]);
        for h_prime in &ls {
            for g_prime in &targets {
                let out = match transport(h, h_prime, g_prime) {
                    Ok(out) => out,
                    Err(e) => {
                        tally
                            .1
                            .push(format!("h=[{h}] h'=[{h_prime}] g'=[{g_prime}]: {e}"));
                        continue;
                    }
                };
                if out.value_set() != target_set {
                    tally
                        .1
                        .push(format!("transport [{out}] left the value set of g'"));
                }
                if standardize(g_prime) == standardize(h_prime) {
                    tally.0 += 1;
                    if standardize(&out) != standardize(h) {
                        tally.1.push(format!(
                            "h=[{h}] h'=[{h_prime}] g'=[{g_prime}]: [{out}] has a different pattern"
                        ));
                    }
                }
            }
        }
        tally
    });
    Outcome {
        instances: (ls.len() * ls.len() * targets.len()) as u64,
        applicable,
        violations,
        witness: None,
    }
}

/// `down[p]` lists every `q` (including `p`) with `q ≤eo p`.
fn down_sets(ls: &[PrefixListing]) -> Vec<Vec<usize>> {
    ls.iter()
        .map(|p| (0..ls.len()).filter(|&q| holds(&ls[q], p)).collect())
        .collect()
}

/// Every descending chain of `len` listings, as index sequences.
pub(crate) fn all_descending_chains(down: &[Vec<usize>], len: usize) -> Vec<Vec<usize>> {
    fn extend(down: &[Vec<usize>], len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let last = *cur.last().expect("non-empty");
        for &q in &down[last] {
            cur.push(q);
            extend(down, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if len == 0 {
        return out;
    }
    for start in 0..down.len() {
        extend(down, len, &mut vec![start], &mut out);
    }
    out
}

fn random_descending_chains(
    down: &[Vec<usize>],
    len: usize,
    walks: usize,
    seed: u64,
) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..walks)
        .map(|_| {
            let mut cur = rng.gen_range(0..down.len());
            let mut walk = vec![cur];
            while walk.len() < len {
                cur = down[cur][rng.gen_range(0..down[cur].len())];
                walk.push(cur);
            }
            walk
        })
        .collect()
}

/// The least repeat by scanning every pair, ordered by `(j, i)`.
fn pairwise_repeat(ls: &[PrefixListing]) -> Option<(usize, usize)> {
    (1..ls.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .find(|&(i, j)| ls[i] == ls[j])
        .map(|(i, j)| (i + 1, j + 1))
}

/// Length of a descending chain over an `n`-element set that must repeat.
pub fn forcing_chain_length(n: usize) -> usize {
    n * n.saturating_sub(1) / 2 + 2
}

fn stabilization(n: usize, exec: Execution) -> Outcome {
    let ls = listings(n);
    let down = down_sets(&ls);
    let len = forcing_chain_length(n);
    let chains = if n <= STABILIZATION_EXHAUSTIVE_MAX_N {
        all_descending_chains(&down, len)
    } else {
        random_descending_chains(&down, len, STABILIZATION_WALKS, 0x5eed_0000 + n as u64)
    };
    let (applicable, violations) = fan_out(&chains, exec, |idx| {
        let rows: Vec<PrefixListing> = idx.iter().map(|&i| ls[i].clone()).collect();
        let oracle = pairwise_repeat(&rows);
        let desc = rows.iter().map(ToString::to_string).join(" / ");
        match Chain::new(rows) {
            Err(e) => (0, vec![format!("chain {desc}: rejected: {e}")]),
            Ok(chain) => {
                let found = chain_stabilize(&chain);
                if oracle.is_none() || found != oracle {
                    (
                        1,
                        vec![format!(
                            "chain {desc}: found {found:?}, pairwise scan {oracle:?}"
                        )],
                    )
                } else {
                    (1, vec![])
                }
            }
        }
    });
    Outcome {
        instances: chains.len() as u64,
        applicable,
        violations,
        witness: None,
    }
}

/// Partitions prefixes by pairwise equivalence against one representative
/// per class.
pub fn equivalence_classes(prefixes: &[PrefixListing]) -> Result<Vec<Vec<usize>>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    'next: for (i, p) in prefixes.iter().enumerate() {
        for class in classes.iter_mut() {
            if equiv_eo(&prefixes[class[0]], p)? {
                class.push(i);
                continue 'next;
            }
        }
        classes.push(vec![i]);
    }
    Ok(classes)
}

fn class_count(n: usize) -> Outcome {
    let ls = listings(n);
    let classes = equivalence_classes(&ls).expect("equal lengths");
    let patterns: BTreeSet<Pattern> = ls.iter().map(standardize).collect();
    let mut violations = Vec::new();
    if classes.len() != patterns.len() {
        violations.push(format!(
            "{} classes but {} distinct patterns",
            classes.len(),
            patterns.len()
        ));
    }
    for class in &classes {
        let inside: BTreeSet<Pattern> = class.iter().map(|&i| standardize(&ls[i])).collect();
        if inside.len() != 1 {
            violations.push(format!("class of [{}] mixes patterns", ls[class[0]]));
        }
    }
    Outcome {
        instances: ls.len() as u64,
        applicable: classes.len() as u64,
        violations,
        witness: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_patterns_examples() {
        assert_eq!(
            all_patterns(0).unwrap(),
            vec![Pattern::new(vec![]).unwrap()]
        );
        let two: Vec<Vec<usize>> = all_patterns(2)
            .unwrap()
            .iter()
            .map(|p| p.ranks().to_vec())
            .collect();
        assert_eq!(two, vec![vec![1, 2], vec![2, 1]]);
        let three = all_patterns(3).unwrap();
        assert_eq!(three.len(), 6);
        assert!(three.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all_patterns(8).unwrap().len(), 40_320);
        assert_eq!(all_patterns(9), Err(Error::TooLarge { n: 9, max: 8 }));
    }

    #[test]
    fn transitive_at_three() {
        let r = run_property("transitive", 3).unwrap();
        assert!(r.pass(), "{:?}", r.violations);
        assert_eq!(r.instances, 216);
    }

    #[test]
    fn non_antisymmetric_witness() {
        let r = run_property("non-antisymmetric", 2).unwrap();
        assert!(r.pass());
        let (a, b) = r.witness.clone().unwrap();
        assert_eq!((a.values(), b.values()), (&[1, 2][..], &[3, 4][..]));
        assert_eq!(
            r.to_json(),
            r#"{"property":"non-antisymmetric","n":2,"instances":16,"violations":[],"pass":true,"witness":[[1,2],[3,4]]}"#
        );
    }

    #[test]
    fn class_count_at_three() {
        let r = run_property("class-count", 3).unwrap();
        assert!(r.pass());
        assert_eq!(r.applicable, 6);
    }

    #[test]
    fn definition_violation_is_least() {
        assert_eq!(definition_violation(&[1, 3, 2], &[1, 2, 3]), Some((2, 3)));
        assert_eq!(definition_violation(&[3, 2, 1], &[3, 2, 1]), None);
    }

    #[test]
    fn descending_chain_enumeration_counts() {
        // S_2: down sets {[1,2]} and {[1,2],[2,1]}; chains of length 3 number 1 + 3.
        let ls = listings(2);
        let chains = all_descending_chains(&down_sets(&ls), 3);
        assert_eq!(chains.len(), 4);
        assert_eq!(forcing_chain_length(4), 8);
    }

    #[test]
    fn bounds_and_unknown_ids() {
        assert_eq!(
            run_property("bogus", 3).unwrap_err(),
            Error::UnknownProperty("bogus".into())
        );
        assert_eq!(
            run_property("transitive", 5).unwrap_err(),
            Error::TooLarge { n: 5, max: 4 }
        );
        assert_eq!(
            run_property("non-antisymmetric", 0).unwrap_err(),
            Error::TooSmall { n: 0, min: 1 }
        );
    }

    #[test]
    fn sequential_and_parallel_agree() {
        for &(id, _, _) in &REGISTRY {
            let a = run_property_with(id, 3, Execution::Sequential).unwrap();
            let b = run_property_with(id, 3, Execution::Parallel).unwrap();
            assert_eq!(a.to_json(), b.to_json(), "{id}");
            assert_eq!(a.applicable, b.applicable);
        }
    }

    #[test]
    fn every_property_passes_at_small_n() {
        for n in 1..=3 {
            for r in run_all(n, Execution::Parallel) {
                assert!(r.pass(), "{} n={}: {:?}", r.property, r.n, r.violations);
            }
        }
    }
}
