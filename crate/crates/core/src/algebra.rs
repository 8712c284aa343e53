//! Constructive manipulations of listings: inverse lookup, transport along an
//! equivalent pair, and repeat detection in descending chains.

use std::collections::{BTreeSet, HashMap};

use crate::prefix::{leq_eo, PrefixListing};
use crate::{Error, Result};

/// The 1-based position at which `p` enumerates `v`.
pub fn inverse_lookup(p: &PrefixListing, v: u64) -> Result<usize> {
    p.position_of(v).ok_or(Error::ValueAbsent(v))
}

/// Re-expresses `h` through the pair `(h', g')`: position `i` of the result
/// holds `g'(h'^{-1}(h(i)))`.
///
/// When `h'` and `g'` are equivalent, the result is a listing of `g'`'s value
/// set that is equivalent to `h`.
pub fn transport(
    h: &PrefixListing,
    h_prime: &PrefixListing,
    g_prime: &PrefixListing,
) -> Result<PrefixListing> {
    if h.len() != h_prime.len() {
        return Err(Error::LengthMismatch {
            left: h.len(),
            right: h_prime.len(),
        });
    }
    if g_prime.len() != h_prime.len() {
        return Err(Error::LengthMismatch {
            left: h_prime.len(),
            right: g_prime.len(),
        });
    }
    let index: HashMap<u64, usize> = h_prime
        .values()
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let mut out = Vec::with_capacity(h.len());
    for &v in h.values() {
        let i = *index.get(&v).ok_or(Error::ValueSetMismatch)?;
        out.push(g_prime.values()[i]);
    }
    // Equal lengths plus containment give equal value sets, and distinct
    // positions of h' map to distinct values of g'.
    Ok(PrefixListing::from_distinct(out))
}

/// A mapping between listings of two sets, at prefix scale.
pub trait ListingTransformer {
    fn source(&self) -> BTreeSet<u64>;
    fn target(&self) -> BTreeSet<u64>;
    fn apply(&self, listing: &PrefixListing) -> Result<PrefixListing>;
}

/// The transformer `h ↦ g' ∘ h'^{-1} ∘ h` for a fixed pair `(h', g')`.
#[derive(Debug, Clone)]
pub struct Transport {
    h_prime: PrefixListing,
    g_prime: PrefixListing,
}

impl Transport {
    pub fn new(h_prime: PrefixListing, g_prime: PrefixListing) -> Result<Self> {
        if h_prime.len() != g_prime.len() {
            return Err(Error::LengthMismatch {
                left: h_prime.len(),
                right: g_prime.len(),
            });
        }
        Ok(Self { h_prime, g_prime })
    }
}

impl ListingTransformer for Transport {
    fn source(&self) -> BTreeSet<u64> {
        self.h_prime.value_set()
    }

    fn target(&self) -> BTreeSet<u64> {
        self.g_prime.value_set()
    }

    fn apply(&self, listing: &PrefixListing) -> Result<PrefixListing> {
        transport(listing, &self.h_prime, &self.g_prime)
    }
}

/// Equal-length listings of one value set, each reducible to its predecessor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    listings: Vec<PrefixListing>,
}

impl Chain {
    /// Validates the descending invariant. Errors carry the 1-based index `k`
    /// of the first listing whose successor is not reducible to it.
    pub fn new(listings: Vec<PrefixListing>) -> Result<Self> {
        if let Some(first) = listings.first() {
            let values = first.value_set();
            for (k, pair) in listings.windows(2).enumerate() {
                if pair[1].len() != pair[0].len() {
                    return Err(Error::LengthMismatch {
                        left: pair[0].len(),
                        right: pair[1].len(),
                    });
                }
                if pair[1].value_set() != values {
                    return Err(Error::ValueSetMismatch);
                }
                if !leq_eo(&pair[1], &pair[0])?.holds() {
                    return Err(Error::ChainInvariantViolated(k + 1));
                }
            }
        }
        Ok(Self { listings })
    }

    pub fn listings(&self) -> &[PrefixListing] {
        &self.listings
    }

    pub fn len(&self) -> usize {
        self.listings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.listings.is_empty()
    }
}

/// The first repeat `(i, j)`, `i < j`, 1-based, least in `(j, i)` order.
///
/// Inversion sets only shrink along a chain, and over a fixed value set equal
/// inversion sets mean equal listings, so a repeat is always between
/// neighbours.
pub fn chain_stabilize(c: &Chain) -> Option<(usize, usize)> {
    c.listings
        .windows(2)
        .position(|w| w[0] == w[1])
        .map(|k| (k + 1, k + 2))
}

/// The strict chain from the reversal of `1..=n` down to the identity.
///
/// Each step swaps the smallest value `v` that `v + 1` precedes with `v + 1`.
/// Swapping adjacent values removes exactly their own inversion and leaves
/// every other position pair as it was.
pub fn make_strict_chain(n: usize) -> Chain {
    let mut current: Vec<u64> = (1..=n as u64).rev().collect();
    // pos[v] is the index of value v + 1.
    let mut pos: Vec<usize> = (0..n).rev().collect();
    let mut listings = vec![PrefixListing::from_distinct(current.clone())];
    while let Some(v) = (0..n.saturating_sub(1)).find(|&v| pos[v + 1] < pos[v]) {
        current.swap(pos[v], pos[v + 1]);
        pos.swap(v, v + 1);
        listings.push(PrefixListing::from_distinct(current.clone()));
    }
    Chain { listings }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prefix::{inversions, standardize};

    fn p(values: &[u64]) -> PrefixListing {
        PrefixListing::new(values.to_vec()).unwrap()
    }

    fn chain(rows: &[&[u64]]) -> Chain {
        Chain::new(rows.iter().map(|r| p(r)).collect()).unwrap()
    }

    #[test]
    fn inverse_lookup_examples() {
        let q = p(&[6, 2, 4]);
        assert_eq!(inverse_lookup(&q, 4), Ok(3));
        assert_eq!(inverse_lookup(&q, 6), Ok(1));
        assert_eq!(inverse_lookup(&q, 5), Err(Error::ValueAbsent(5)));
    }

    #[test]
    fn transport_examples() {
        let a = p(&[2, 4, 6]);
        assert_eq!(
            transport(&a, &a, &p(&[2, 3, 4])).unwrap().values(),
            &[2, 3, 4]
        );

        // Positionwise: 6 sits at h'(3) -> g'(3) = 4; 2 at h'(1) -> 2; 4 at h'(2) -> 3.
        let h = p(&[6, 2, 4]);
        let out = transport(&h, &a, &p(&[2, 3, 4])).unwrap();
        assert_eq!(out.values(), &[4, 2, 3]);
        assert_eq!(standardize(&out), standardize(&h));

        assert_eq!(transport(&h, &a, &a).unwrap(), h);
    }

    #[test]
    fn transport_errors() {
        let a = p(&[2, 4, 6]);
        assert_eq!(
            transport(&p(&[2, 4, 7]), &a, &a),
            Err(Error::ValueSetMismatch)
        );
        assert!(matches!(
            transport(&a, &a, &p(&[1, 2])),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            transport(&p(&[2, 4]), &a, &a),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn transformer_alternation_is_stable() {
        // A listing of A sent to B and back: both transformers preserve the
        // pattern, so the alternating sequence repeats immediately.
        let h_prime = p(&[2, 4, 6]);
        let g_prime = p(&[3, 5, 7]);
        let to_b = Transport::new(h_prime.clone(), g_prime.clone()).unwrap();
        let to_a = Transport::new(g_prime, h_prime).unwrap();
        assert_eq!(to_b.target(), [3, 5, 7].into_iter().collect());
        let f1 = p(&[4, 6, 2]);
        let g1 = to_b.apply(&f1).unwrap();
        let f2 = to_a.apply(&g1).unwrap();
        assert_eq!(g1.values(), &[5, 7, 3]);
        let c = Chain::new(vec![f1.clone(), f2]).unwrap();
        assert_eq!(chain_stabilize(&c), Some((1, 2)));
    }

    #[test]
    fn stabilize_examples() {
        let pairwise = |c: &Chain| {
            let l = c.listings();
            (1..l.len())
                .flat_map(|j| (0..j).map(move |i| (i, j)))
                .find(|&(i, j)| l[i] == l[j])
                .map(|(i, j)| (i + 1, j + 1))
        };
        let c = chain(&[&[2, 1, 3], &[1, 2, 3], &[1, 2, 3]]);
        assert_eq!(pairwise(&c), Some((2, 3)));
        assert_eq!(chain_stabilize(&c), Some((2, 3)));
        assert_eq!(
            chain_stabilize(&chain(&[&[2, 4, 6], &[2, 4, 6]])),
            Some((1, 2))
        );
        assert_eq!(chain_stabilize(&chain(&[&[2, 1], &[1, 2]])), None);
        assert_eq!(chain_stabilize(&chain(&[])), None);
    }

    #[test]
    fn chain_rejects_ascent() {
        assert_eq!(
            Chain::new(vec![p(&[1, 2, 3]), p(&[2, 1, 3])]),
            Err(Error::ChainInvariantViolated(1))
        );
        assert_eq!(
            Chain::new(vec![p(&[2, 1]), p(&[1, 2]), p(&[2, 1])]),
            Err(Error::ChainInvariantViolated(2))
        );
        assert_eq!(
            Chain::new(vec![p(&[2, 1]), p(&[1, 3])]),
            Err(Error::ValueSetMismatch)
        );
    }

    #[test]
    fn strict_chain_examples() {
        assert_eq!(make_strict_chain(1).listings(), &[p(&[1])]);
        assert_eq!(make_strict_chain(2).listings(), &[p(&[2, 1]), p(&[1, 2])]);
        let c3 = make_strict_chain(3);
        assert_eq!(
            c3.listings(),
            &[p(&[3, 2, 1]), p(&[3, 1, 2]), p(&[2, 1, 3]), p(&[1, 2, 3])]
        );
    }

    #[test]
    fn strict_chain_sheds_one_inversion_per_step() {
        for n in 1..=7 {
            let c = make_strict_chain(n);
            assert_eq!(c.len(), n * (n - 1) / 2 + 1);
            let c = Chain::new(c.listings().to_vec()).expect("descending");
            for w in c.listings().windows(2) {
                let (big, small) = (inversions(&w[0]), inversions(&w[1]));
                assert!(small.is_subset(&big));
                assert_eq!(big.len(), small.len() + 1);
            }
            assert!(inversions(c.listings().last().unwrap()).is_empty());
            assert_eq!(chain_stabilize(&c), None);
        }
    }
}
