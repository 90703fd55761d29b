//! The reduced power monoid `P₀(G)`: subsets of `G` containing `0` under
//! setwise addition, with identity `{0}`.
//!
//! Subsets are bitmasks over element indices. Because bit 0 is always set,
//! the carrier is indexed densely by `mask >> 1`.

use std::fmt;

use rayon::prelude::*;

use crate::abelian_group::{bits, AbelianTable, GroupSpec, GroupTable, QuotientGroup, Subgroup};
use crate::error::{Error, Result};

/// Largest group whose carrier can be enumerated at all.
pub const MAX_CARRIER_GROUP_ORDER: usize = 21;
/// Largest group whose full Cayley table is materialized.
pub const MAX_TABLE_GROUP_ORDER: usize = 12;

/// A subset of `G` containing `0`; an element of `P₀(G)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetId(u64);

impl SubsetId {
    /// `{0}`, the identity of `P₀(G)`.
    pub const ZERO: SubsetId = SubsetId(1);

    pub fn from_mask(mask: u64) -> Result<Self> {
        if mask & 1 == 0 {
            return Err(Error::Contract(format!(
                "subset {mask:#b} does not contain 0"
            )));
        }
        Ok(SubsetId(mask))
    }

    /// `{0} ∪ elements`.
    pub fn with_zero<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        SubsetId(elements.into_iter().fold(1u64, |m, a| m | 1 << a))
    }

    pub fn from_carrier_index(index: usize) -> Self {
        SubsetId((index as u64) << 1 | 1)
    }

    pub fn carrier_index(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Always false; present for API symmetry with `len`.
    pub fn is_empty(self) -> bool {
        false
    }

    pub fn contains(self, a: usize) -> bool {
        a < 64 && self.0 >> a & 1 == 1
    }

    pub fn is_subset_of(self, other: SubsetId) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in ascending index order.
    pub fn elements(self) -> Vec<usize> {
        bits(self.0).collect()
    }
}

impl From<Subgroup> for SubsetId {
    fn from(h: Subgroup) -> Self {
        SubsetId(h.mask())
    }
}

/// Renders as a sorted element list, e.g. `[0,2]`.
impl fmt::Display for SubsetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Precomputed translation data for one group.
///
/// `translation[x][y] = x + y`. Each translation is also folded into byte
/// lookup tables so that translating a whole mask costs one lookup per byte.
#[derive(Debug, Clone)]
pub struct PowerMonoidContext {
    spec: Option<GroupSpec>,
    group: GroupTable,
    translation: Vec<Vec<u8>>,
    chunks_per_mask: usize,
    byte_images: Vec<[u64; 256]>,
    carrier_size: usize,
}

impl PowerMonoidContext {
    pub fn new(spec: &GroupSpec) -> Result<Self> {
        if spec.order() > MAX_CARRIER_GROUP_ORDER {
            return Err(Error::resource(
                "group order for P0(G)",
                spec.order(),
                MAX_CARRIER_GROUP_ORDER,
            ));
        }
        let mut ctx = Self::from_table(GroupTable::from_table(spec))?;
        ctx.spec = Some(spec.clone());
        Ok(ctx)
    }

    /// Context for a group given only by its table (a subgroup or quotient).
    pub fn from_table(group: GroupTable) -> Result<Self> {
        let n = group.order();
        if n > MAX_CARRIER_GROUP_ORDER {
            return Err(Error::resource(
                "group order for P0(G)",
                n,
                MAX_CARRIER_GROUP_ORDER,
            ));
        }
        let translation: Vec<Vec<u8>> = (0..n)
            .map(|x| (0..n).map(|y| group.add(x, y) as u8).collect())
            .collect();
        let chunks_per_mask = n.div_ceil(8).max(1);
        let mut byte_images = Vec::with_capacity(n * chunks_per_mask);
        for row in &translation {
            for c in 0..chunks_per_mask {
                let mut images = [0u64; 256];
                for (v, slot) in images.iter_mut().enumerate() {
                    *slot = bits(v as u64)
                        .map(|j| 8 * c + j)
                        .filter(|&y| y < n)
                        .fold(0, |m, y| m | 1 << row[y]);
                }
                byte_images.push(images);
            }
        }
        Ok(PowerMonoidContext {
            spec: None,
            group,
            translation,
            chunks_per_mask,
            byte_images,
            carrier_size: 1 << (n - 1),
        })
    }

    /// The invariant-factor description, when the context was built from one.
    pub fn spec(&self) -> Option<&GroupSpec> {
        self.spec.as_ref()
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// `2^(|G|−1)`.
    pub fn carrier_size(&self) -> usize {
        self.carrier_size
    }

    pub fn translation(&self, x: usize) -> &[u8] {
        &self.translation[x]
    }

    /// The whole group as a subset.
    pub fn full(&self) -> SubsetId {
        SubsetId(((1u128 << self.order()) - 1) as u64)
    }

    /// `x + Y` as a raw mask (the result need not contain `0`).
    #[inline]
    pub fn translate(&self, x: usize, mask: u64) -> u64 {
        let base = x * self.chunks_per_mask;
        let mut out = 0;
        for c in 0..self.chunks_per_mask {
            out |= self.byte_images[base + c][(mask >> (8 * c)) as usize & 0xff];
        }
        out
    }

    /// `{x + y : x ∈ X, y ∈ Y}`, as the union of translates of the larger
    /// set by the members of the smaller.
    #[inline]
    pub fn sumset(&self, x: SubsetId, y: SubsetId) -> SubsetId {
        let (small, large) = if x.len() <= y.len() { (x, y) } else { (y, x) };
        let mut out = 0;
        for a in bits(small.0) {
            out |= self.translate(a, large.0);
        }
        SubsetId(out)
    }

    /// `nX = X + … + X`, for `n ≥ 1`, by binary doubling.
    pub fn n_fold_sum(&self, x: SubsetId, n: usize) -> Result<SubsetId> {
        if n == 0 {
            return Err(Error::Contract(
                "the n-fold sum is defined for n ≥ 1".into(),
            ));
        }
        let mut acc = SubsetId::ZERO;
        let mut base = x;
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.sumset(acc, base);
            }
            k >>= 1;
            if k > 0 {
                base = self.sumset(base, base);
            }
        }
        Ok(acc)
    }

    /// Least `n ≥ 1` with `nX = (n+1)X`, and that stable set.
    pub fn stabilization_index(&self, x: SubsetId) -> (usize, SubsetId) {
        let mut n = 1;
        let mut cur = x;
        loop {
            let next = self.sumset(cur, x);
            if next == cur {
                return (n, cur);
            }
            cur = next;
            n += 1;
        }
    }

    /// Largest `Z ⊆ Y` with `X + Z ⊆ Y`; every divisibility witness lies inside it.
    fn max_cofactor(&self, x: SubsetId, y: SubsetId) -> u64 {
        bits(y.0)
            .filter(|&z| self.translate(z, x.0) & !y.0 == 0)
            .fold(0, |m, z| m | 1 << z)
    }

    /// Whether `X` divides `Y`, without producing a witness.
    pub fn is_divisible(&self, x: SubsetId, y: SubsetId) -> bool {
        if !x.is_subset_of(y) {
            return false;
        }
        let zmax = SubsetId(self.max_cofactor(x, y));
        self.sumset(x, zmax) == y
    }

    /// Some `Z ∋ 0` with `X + Z = Y`: the first one in ascending
    /// `(|Z|, mask)` order, or `None` if `X` does not divide `Y`.
    pub fn divides(&self, x: SubsetId, y: SubsetId) -> Option<SubsetId> {
        if !x.is_subset_of(y) {
            return None;
        }
        let zmax = self.max_cofactor(x, y);
        if self.sumset(x, SubsetId(zmax)) != y {
            return None;
        }
        let free: Vec<usize> = bits(zmax & !1).collect();
        let m = free.len();
        for k in 0..=m {
            // Gosper's hack over k-subsets of the free positions; the
            // position-to-element map is monotone so masks come out ascending.
            let mut comb: u64 = (1u64 << k) - 1;
            loop {
                let z = bits(comb).fold(1u64, |acc, p| acc | 1 << free[p]);
                if self.sumset(x, SubsetId(z)) == y {
                    return Some(SubsetId(z));
                }
                if k == 0 || comb == 0 {
                    break;
                }
                let low = comb & comb.wrapping_neg();
                let ripple = comb + low;
                comb = (((ripple ^ comb) >> 2) / low) | ripple;
                if comb >> m != 0 {
                    break;
                }
            }
        }
        debug_assert!(false, "max cofactor covers Y but no witness found");
        None
    }

    pub fn is_idempotent(&self, x: SubsetId) -> bool {
        self.sumset(x, x) == x
    }

    /// Closed under addition and negation.
    pub fn is_subgroup_set(&self, x: SubsetId) -> bool {
        bits(x.0).all(|a| {
            x.contains(self.group.neg(a)) && bits(x.0).all(|b| x.contains(self.group.add(a, b)))
        })
    }

    /// `G_a = G \ {a}`, for `a ≠ 0`.
    pub fn punctured(&self, a: usize) -> Result<SubsetId> {
        if a == 0 {
            return Err(Error::Contract(
                "the punctured set G \\ {0} does not contain 0".into(),
            ));
        }
        if a >= self.order() {
            return Err(Error::Contract(format!(
                "{a} is not an element of the group"
            )));
        }
        Ok(SubsetId(self.full().0 & !(1 << a)))
    }

    pub fn quotient(&self, h: &Subgroup) -> Result<QuotientGroup> {
        QuotientGroup::new(&self.group, h)
    }

    /// `P_{0,H}(G) = H + P₀(G)`: unions of `H`-cosets containing `H`, ascending by mask.
    pub fn divisible_by_h_family(&self, h: &Subgroup) -> Result<impl Iterator<Item = SubsetId>> {
        let q = self.quotient(h)?;
        let cosets: Vec<u64> = (0..q.order()).map(|k| q.coset_mask(k)).collect();
        let mut family: Vec<SubsetId> = (0..1usize << (cosets.len() - 1))
            .map(|sel| {
                let mask = bits(sel as u64).fold(cosets[0], |m, k| m | cosets[k + 1]);
                SubsetId(mask)
            })
            .collect();
        family.sort();
        Ok(family.into_iter())
    }

    /// `φ_H(X) = {x + H : x ∈ X}` as a subset of `G/H` (coset numbering of `q`).
    pub fn quotient_project(&self, q: &QuotientGroup, x: SubsetId) -> SubsetId {
        SubsetId(bits(x.0).fold(0, |m, a| m | 1 << q.coset_of(a)))
    }

    /// Inverse of [`quotient_project`](Self::quotient_project) on `P_{0,H}(G)`:
    /// the union of the selected cosets.
    pub fn quotient_lift(&self, q: &QuotientGroup, y: SubsetId) -> SubsetId {
        SubsetId(bits(y.0).fold(0, |m, k| m | q.coset_mask(k)))
    }

    /// Context of `P₀(G/H)` in the coset numbering of `q`.
    pub fn quotient_context(&self, q: &QuotientGroup) -> Result<PowerMonoidContext> {
        PowerMonoidContext::from_table(q.table().clone())
    }

    /// Context of `P₀(H)`, with `H`'s members renumbered `0..|H|` in ascending order.
    pub fn subgroup_context(&self, h: &Subgroup) -> Result<PowerMonoidContext> {
        PowerMonoidContext::from_table(GroupTable::induced(&self.group, &h.members())?)
    }

    /// All `2^(|G|−1)` carrier elements in ascending mask order.
    pub fn enumerate_carrier(&self) -> impl Iterator<Item = SubsetId> {
        (0..self.carrier_size).map(SubsetId::from_carrier_index)
    }

    pub fn subset(&self, carrier_index: usize) -> SubsetId {
        debug_assert!(carrier_index < self.carrier_size);
        SubsetId::from_carrier_index(carrier_index)
    }

    /// The sumset table over carrier indices, rows computed in parallel.
    pub fn cayley_table(&self) -> Result<CayleyTable> {
        if self.order() > MAX_TABLE_GROUP_ORDER {
            return Err(Error::resource(
                "group order for the Cayley table",
                self.order(),
                MAX_TABLE_GROUP_ORDER,
            ));
        }
        let n = self.carrier_size;
        let mut cells = vec![0u32; n * n];
        cells.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
            let x = SubsetId::from_carrier_index(i);
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self
                    .sumset(x, SubsetId::from_carrier_index(j))
                    .carrier_index() as u32;
            }
        });
        Ok(CayleyTable { size: n, cells })
    }
}

/// Sumset table of `P₀(G)` indexed by carrier position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    size: usize,
    cells: Vec<u32>,
}

impl CayleyTable {
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.cells[i * self.size + j] as usize
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.cells[i * self.size..(i + 1) * self.size]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian_group::cyclic_subgroup;

    fn ctx(f: &[u64]) -> PowerMonoidContext {
        PowerMonoidContext::new(&GroupSpec::new(f).unwrap()).unwrap()
    }

    fn s(elems: &[usize]) -> SubsetId {
        SubsetId::with_zero(elems.iter().copied())
    }

    #[test]
    fn sumset_examples() {
        let k = ctx(&[2, 2]);
        // a = (1,0) = 1, b = (0,1) = 2
        assert_eq!(k.sumset(s(&[1]), s(&[2])), k.full());
        let c4 = ctx(&[4]);
        assert_eq!(c4.sumset(s(&[1]), s(&[1])), s(&[1, 2]));
        for x in c4.enumerate_carrier() {
            assert_eq!(c4.sumset(x, SubsetId::ZERO), x);
        }
    }

    #[test]
    fn n_fold_examples() {
        let c4 = ctx(&[4]);
        assert_eq!(c4.n_fold_sum(s(&[1]), 3).unwrap(), c4.full());
        assert_eq!(c4.n_fold_sum(s(&[1]), 1).unwrap(), s(&[1]));
        let c6 = ctx(&[6]);
        assert_eq!(c6.n_fold_sum(s(&[2]), 2).unwrap(), s(&[2, 4]));
        assert!(matches!(c6.n_fold_sum(s(&[2]), 0), Err(Error::Contract(_))));
    }

    #[test]
    fn n_fold_matches_iteration() {
        let c = ctx(&[2, 4]);
        for x in c.enumerate_carrier() {
            let mut linear = x;
            for n in 1..10 {
                assert_eq!(c.n_fold_sum(x, n).unwrap(), linear, "{x} n={n}");
                linear = c.sumset(linear, x);
            }
        }
    }

    #[test]
    fn stabilization_examples() {
        let c4 = ctx(&[4]);
        assert_eq!(c4.stabilization_index(s(&[1])), (3, c4.full()));
        assert_eq!(c4.stabilization_index(SubsetId::ZERO), (1, SubsetId::ZERO));
        let c6 = ctx(&[6]);
        assert_eq!(c6.stabilization_index(s(&[2])), (2, s(&[2, 4])));
    }

    #[test]
    fn divides_examples() {
        let c4 = ctx(&[4]);
        assert_eq!(c4.divides(s(&[2]), c4.full()), Some(s(&[1])));
        assert_eq!(c4.divides(s(&[1]), s(&[1, 3])), Some(s(&[3])));
        assert_eq!(c4.divides(s(&[1]), s(&[2])), None);
        assert_eq!(c4.divides(SubsetId::ZERO, s(&[1, 2])), Some(s(&[1, 2])));
        assert_eq!(c4.divides(s(&[1, 2]), s(&[1, 2])), Some(SubsetId::ZERO));
    }

    #[test]
    fn idempotent_examples() {
        let c4 = ctx(&[4]);
        assert!(c4.is_idempotent(s(&[2])) && c4.is_subgroup_set(s(&[2])));
        assert!(!c4.is_idempotent(s(&[1])) && !c4.is_subgroup_set(s(&[1])));
        let k = ctx(&[2, 2]);
        for x in k.enumerate_carrier() {
            assert_eq!(k.is_idempotent(x), x.len() != 3, "{x}");
        }
    }

    #[test]
    fn punctured_examples() {
        assert_eq!(ctx(&[4]).punctured(3).unwrap(), s(&[1, 2]));
        assert_eq!(ctx(&[2]).punctured(1).unwrap(), SubsetId::ZERO);
        assert_eq!(ctx(&[2, 2]).punctured(3).unwrap(), s(&[1, 2]));
        assert!(matches!(ctx(&[4]).punctured(0), Err(Error::Contract(_))));
    }

    #[test]
    fn family_examples() {
        let c4 = ctx(&[4]);
        let all: Vec<_> = c4
            .divisible_by_h_family(&Subgroup::trivial())
            .unwrap()
            .collect();
        assert_eq!(all, c4.enumerate_carrier().collect::<Vec<_>>());
        let whole: Vec<_> = c4
            .divisible_by_h_family(&Subgroup::whole(c4.group()))
            .unwrap()
            .collect();
        assert_eq!(whole, [c4.full()]);
        let h = cyclic_subgroup(c4.group(), 2);
        let fam: Vec<_> = c4.divisible_by_h_family(&h).unwrap().collect();
        assert_eq!(fam, [s(&[2]), c4.full()]);
    }

    #[test]
    fn projection_examples() {
        let c4 = ctx(&[4]);
        let h = cyclic_subgroup(c4.group(), 2);
        let q = c4.quotient(&h).unwrap();
        assert_eq!(c4.quotient_project(&q, c4.full()), s(&[1]));
        assert_eq!(c4.quotient_project(&q, h.into()), SubsetId::ZERO);
        let k = ctx(&[2, 2]);
        let h = cyclic_subgroup(k.group(), 1);
        let q = k.quotient(&h).unwrap();
        assert_eq!(k.quotient_project(&q, k.full()), s(&[1]));
        assert_eq!(k.quotient_lift(&q, s(&[1])), k.full());
    }

    #[test]
    fn carrier_and_table() {
        let c2 = ctx(&[2]);
        assert_eq!(
            c2.enumerate_carrier().collect::<Vec<_>>(),
            [SubsetId::ZERO, s(&[1])]
        );
        assert_eq!(ctx(&[2, 2]).carrier_size(), 8);
        let c4 = ctx(&[4]);
        let t = c4.cayley_table().unwrap();
        assert_eq!(t.size(), 8);
        assert_eq!(t.row(0), (0..8u32).collect::<Vec<_>>().as_slice());
        let x = s(&[1]).carrier_index();
        assert_eq!(t.get(x, x), s(&[1, 2]).carrier_index());
        assert!(matches!(
            ctx(&[13]).cayley_table(),
            Err(Error::Resource { .. })
        ));
        assert!(PowerMonoidContext::new(&GroupSpec::new(&[22]).unwrap()).is_err());
    }

    #[test]
    fn trivial_group_is_one_point() {
        let t = PowerMonoidContext::new(&GroupSpec::trivial()).unwrap();
        assert_eq!(t.carrier_size(), 1);
        assert_eq!(t.full(), SubsetId::ZERO);
        assert_eq!(t.sumset(SubsetId::ZERO, SubsetId::ZERO), SubsetId::ZERO);
    }

    #[test]
    fn display_is_sorted_list() {
        assert_eq!(s(&[2]).to_string(), "[0,2]");
        assert_eq!(SubsetId::ZERO.to_string(), "[0]");
    }
}
