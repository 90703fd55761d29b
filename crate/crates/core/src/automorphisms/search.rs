//! Exhaustive search for the automorphisms of `P₀(G)` that fix every
//! 2-element set.
//!
//! Carrier elements are assigned images in ascending `(|X|, mask)` order.
//! Every assignment is propagated through the Cayley table: for each pair of
//! assigned sets the image of their sum is forced (or checked, if already
//! assigned). Candidates are restricted to sets with the same signature, a
//! tuple of quantities every automorphism fixing the 2-element sets must
//! preserve. Divisibility in both directions is checked against everything
//! already assigned. Each complete assignment is confirmed with the raw
//! definition check before it is accepted.

use std::collections::HashMap;

use serde::Serialize;

use super::{is_monoid_automorphism, MonoidMap};
use crate::error::{Error, Result};
use crate::power_monoid::{CayleyTable, PowerMonoidContext, SubsetId};

const UNSET: u32 = u32::MAX;

/// Counters reported by the search, also on budget exhaustion.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Branching decisions tried.
    pub nodes: u64,
    /// Images fixed by propagation rather than branching.
    pub forced: u64,
    /// Branches abandoned on a contradiction.
    pub conflicts: u64,
    /// Complete assignments reached.
    pub leaves: u64,
    /// Complete assignments that failed the definition check.
    pub rejected: u64,
    /// Number of distinct signatures among carrier elements.
    pub signature_classes: usize,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub maps: Vec<MonoidMap>,
    pub stats: SearchStats,
}

/// Every automorphism of `P₀(G)` with trivial pullback, sorted by image table.
///
/// The search is exhaustive: the only candidates discarded are those that
/// contradict a property every such automorphism has. `budget` caps the
/// number of branching nodes.
pub fn enumerate_trivial_pullback_automorphisms(
    ctx: &PowerMonoidContext,
    budget: u64,
) -> Result<SearchOutcome> {
    let table = ctx.cayley_table()?;
    let mut search = Search::new(ctx, &table, budget);
    if search.seed() && search.descend(0).is_err() {
        return Err(Error::BudgetExhausted {
            budget,
            stats: search.stats,
        });
    }
    let mut stats = search.stats;
    let mut maps = Vec::with_capacity(search.found.len());
    for image in search.found {
        let f = MonoidMap::from_images(image);
        if is_monoid_automorphism(ctx, &f) {
            maps.push(f);
        } else {
            stats.rejected += 1;
        }
    }
    maps.sort();
    Ok(SearchOutcome { maps, stats })
}

struct BudgetExceeded;

struct Search<'a> {
    table: &'a CayleyTable,
    n: usize,
    group_order: usize,
    /// `divides[x]` is the bit row of carrier elements divisible by `x`.
    divides: Vec<Vec<u64>>,
    class: Vec<u32>,
    class_members: Vec<Vec<u32>>,
    order: Vec<u32>,
    image: Vec<u32>,
    preimage: Vec<u32>,
    trail: Vec<u32>,
    budget: u64,
    stats: SearchStats,
    found: Vec<Vec<u32>>,
}

impl<'a> Search<'a> {
    fn new(ctx: &PowerMonoidContext, table: &'a CayleyTable, budget: u64) -> Self {
        let n = ctx.carrier_size();
        let words = n.div_ceil(64);
        let mut divides = vec![vec![0u64; words]; n];
        for (x, row) in divides.iter_mut().enumerate() {
            for z in 0..n {
                let y = table.get(x, z);
                row[y / 64] |= 1 << (y % 64);
            }
        }
        let mut divisor_count = vec![0u32; n];
        for row in &divides {
            for (w, &word) in row.iter().enumerate() {
                let mut bitsw = word;
                while bitsw != 0 {
                    divisor_count[w * 64 + bitsw.trailing_zeros() as usize] += 1;
                    bitsw &= bitsw - 1;
                }
            }
        }

        let group_order = ctx.order();
        let pair_index = |a: usize| SubsetId::with_zero([a]).carrier_index();
        let mut classes: HashMap<Signature, u32> = HashMap::new();
        let mut class = Vec::with_capacity(n);
        for x in 0..n {
            let mut pair_divisors = 0u64;
            let mut stabilizer = 0u64;
            for a in 1..group_order {
                let p = pair_index(a);
                if divides[p][x / 64] >> (x % 64) & 1 == 1 {
                    pair_divisors |= 1 << a;
                }
                if table.get(p, x) == x {
                    stabilizer |= 1 << a;
                }
            }
            let mut k = 1;
            let mut cur = x;
            loop {
                let next = table.get(cur, x);
                if next == cur {
                    break;
                }
                cur = next;
                k += 1;
            }
            let sig = Signature {
                idempotent: table.get(x, x) == x,
                stabilization_index: k,
                divisors: divisor_count[x],
                multiples: divides[x].iter().map(|w| w.count_ones()).sum(),
                pair_divisors,
                stabilizer,
            };
            let next_id = classes.len() as u32;
            class.push(*classes.entry(sig).or_insert(next_id));
        }

        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_by_key(|&i| (SubsetId::from_carrier_index(i as usize).len(), i));
        let mut class_members = vec![Vec::new(); classes.len()];
        for &i in &order {
            class_members[class[i as usize] as usize].push(i);
        }

        Search {
            table,
            n,
            group_order,
            divides,
            class,
            class_members,
            order,
            image: vec![UNSET; n],
            preimage: vec![UNSET; n],
            trail: Vec::with_capacity(n),
            budget,
            stats: SearchStats {
                signature_classes: classes.len(),
                ..SearchStats::default()
            },
            found: Vec::new(),
        }
    }

    /// Fixes `{0}` and every 2-element set; false if that is already contradictory.
    fn seed(&mut self) -> bool {
        if !self.assign(0, 0) {
            return false;
        }
        for a in 1..self.group_order {
            let p = SubsetId::with_zero([a]).carrier_index() as u32;
            match self.image[p as usize] {
                UNSET => {
                    if !self.assign(p, p) {
                        return false;
                    }
                }
                v if v != p => return false,
                _ => {}
            }
        }
        true
    }

    #[inline]
    fn divisible(&self, x: usize, y: usize) -> bool {
        self.divides[x][y / 64] >> (y % 64) & 1 == 1
    }

    /// Records `x ↦ y` if it is consistent with signatures, injectivity and
    /// divisibility against every assigned set.
    fn set(&mut self, x: u32, y: u32) -> bool {
        let (xu, yu) = (x as usize, y as usize);
        if self.preimage[yu] != UNSET || self.class[xu] != self.class[yu] {
            return false;
        }
        for &t in &self.trail {
            let (t, ft) = (t as usize, self.image[t as usize] as usize);
            if self.divisible(xu, t) != self.divisible(yu, ft)
                || self.divisible(t, xu) != self.divisible(ft, yu)
            {
                return false;
            }
        }
        self.image[xu] = y;
        self.preimage[yu] = x;
        self.trail.push(x);
        true
    }

    /// Assigns `x ↦ y` and closes under `f(S + T) = f(S) + f(T)`.
    fn assign(&mut self, x: u32, y: u32) -> bool {
        let mut head = self.trail.len();
        if !self.set(x, y) {
            return false;
        }
        while head < self.trail.len() {
            let pos = head;
            head += 1;
            let s = self.trail[pos] as usize;
            let fs = self.image[s] as usize;
            // each unordered pair is handled when its later member is processed
            for k in 0..=pos {
                let t = self.trail[k] as usize;
                let ft = self.image[t] as usize;
                let sum = self.table.get(s, t);
                let fsum = self.table.get(fs, ft) as u32;
                match self.image[sum] {
                    UNSET => {
                        self.stats.forced += 1;
                        if !self.set(sum as u32, fsum) {
                            return false;
                        }
                    }
                    v if v != fsum => return false,
                    _ => {}
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for &x in &self.trail[mark..] {
            let y = self.image[x as usize];
            self.preimage[y as usize] = UNSET;
            self.image[x as usize] = UNSET;
        }
        self.trail.truncate(mark);
    }

    fn descend(&mut self, mut pos: usize) -> Result<(), BudgetExceeded> {
        while pos < self.n && self.image[self.order[pos] as usize] != UNSET {
            pos += 1;
        }
        if pos == self.n {
            self.stats.leaves += 1;
            self.found.push(self.image.clone());
            return Ok(());
        }
        let x = self.order[pos];
        let class = self.class[x as usize] as usize;
        for ci in 0..self.class_members[class].len() {
            let y = self.class_members[class][ci];
            if self.preimage[y as usize] != UNSET {
                continue;
            }
            self.stats.nodes += 1;
            if self.stats.nodes > self.budget {
                return Err(BudgetExceeded);
            }
            let mark = self.trail.len();
            if self.assign(x, y) {
                self.descend(pos + 1)?;
            } else {
                self.stats.conflicts += 1;
            }
            self.undo(mark);
        }
        Ok(())
    }
}

/// Quantities preserved by every automorphism fixing the 2-element sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Signature {
    idempotent: bool,
    stabilization_index: u32,
    divisors: u32,
    multiples: u32,
    /// `a` such that `{0,a}` divides the set.
    pair_divisors: u64,
    /// `a` such that `{0,a} + X = X`.
    stabilizer: u64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian_group::GroupSpec;

    fn trivial_pullback(f: &[u64]) -> SearchOutcome {
        let ctx = PowerMonoidContext::new(&GroupSpec::new(f).unwrap()).unwrap();
        enumerate_trivial_pullback_automorphisms(&ctx, 100_000_000).unwrap()
    }

    #[test]
    fn cyclic_four_has_only_identity() {
        let out = trivial_pullback(&[4]);
        assert_eq!(out.maps.len(), 1);
        assert!(out.maps[0].is_identity());
    }

    #[test]
    fn klein_kernel_is_s3_on_three_sets() {
        let ctx = PowerMonoidContext::new(&GroupSpec::new(&[2, 2]).unwrap()).unwrap();
        let out = enumerate_trivial_pullback_automorphisms(&ctx, 1_000_000).unwrap();
        assert_eq!(out.maps.len(), 6);
        for f in &out.maps {
            for x in ctx.enumerate_carrier() {
                if x.len() != 3 {
                    assert_eq!(f.apply(x), x);
                }
            }
        }
    }

    #[test]
    fn elementary_abelian_eight_has_only_identity() {
        let out = trivial_pullback(&[2, 2, 2]);
        assert_eq!(out.maps.len(), 1);
        assert!(out.maps[0].is_identity());
        assert_eq!(out.stats.rejected, 0);
    }

    #[test]
    fn cyclic_groups_have_only_identity() {
        for n in 1..=12 {
            let factors: Vec<u64> = if n == 1 { vec![] } else { vec![n] };
            let out = trivial_pullback(&factors);
            assert_eq!(out.maps.len(), 1, "C{n}");
            assert!(out.maps[0].is_identity());
        }
    }

    #[test]
    fn budget_exhaustion_reports_stats() {
        let ctx = PowerMonoidContext::new(&GroupSpec::new(&[2, 2]).unwrap()).unwrap();
        match enumerate_trivial_pullback_automorphisms(&ctx, 2) {
            Err(Error::BudgetExhausted { budget, stats }) => {
                assert_eq!(budget, 2);
                assert_eq!(stats.nodes, 3);
            }
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn refuses_large_groups() {
        let ctx = PowerMonoidContext::new(&GroupSpec::new(&[13]).unwrap()).unwrap();
        assert!(matches!(
            enumerate_trivial_pullback_automorphisms(&ctx, 10),
            Err(Error::Resource { .. })
        ));
    }
}
