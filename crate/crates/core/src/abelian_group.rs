//! Finite abelian groups in invariant-factor form.
//!
//! Elements are addressed by a mixed-radix index over the invariant factors,
//! least-significant factor first. Element `0` is the identity and index order
//! is fixed, so element masks are reproducible across runs.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Widest group whose subsets can be stored as a `u64` bitmask.
pub const MASK_BITS: usize = 64;

/// Read-only access to the addition of a finite abelian group whose elements
/// are numbered `0..order` with `0` as the identity.
pub trait AbelianTable {
    fn order(&self) -> usize;
    fn add(&self, a: usize, b: usize) -> usize;
    fn neg(&self, a: usize) -> usize;

    /// `n·a`, by binary doubling.
    fn scale(&self, mut n: u64, a: usize) -> usize {
        let mut acc = 0;
        let mut base = a;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            n >>= 1;
        }
        acc
    }

    /// Least `n ≥ 1` with `n·a = 0`.
    fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.add(x, a);
            n += 1;
        }
        n
    }
}

/// A finite abelian group `C_{n_1} ⊕ … ⊕ C_{n_r}` with `n_1 | n_2 | … | n_r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupSpec {
    factors: Vec<usize>,
    order: usize,
}

/// Coordinates and index of one element of a [`GroupSpec`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub coords: Vec<usize>,
    pub index: usize,
}

impl GroupSpec {
    /// Builds the canonical group for an arbitrary list of cyclic factors.
    ///
    /// The factors are split into prime powers and regrouped into the
    /// invariant-factor chain, so `[2, 3]` and `[6]` give the same group.
    pub fn new(factors: &[u64]) -> Result<Self> {
        let mut parts: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &f in factors {
            if f <= 1 {
                return Err(Error::InvalidFactor(f));
            }
            for (p, e) in factorize(f) {
                parts.entry(p).or_default().push(e);
            }
        }
        Self::from_prime_parts(parts)
    }

    /// The one-element group (empty factor list).
    pub fn trivial() -> Self {
        GroupSpec {
            factors: Vec::new(),
            order: 1,
        }
    }

    /// Assembles the invariant-factor chain from the cyclic prime-power
    /// exponents of each primary component.
    fn from_prime_parts(mut parts: BTreeMap<u64, Vec<u32>>) -> Result<Self> {
        let rank = parts.values().map(Vec::len).max().unwrap_or(0);
        for exps in parts.values_mut() {
            exps.sort_unstable_by(|a, b| b.cmp(a));
        }
        let mut descending = Vec::with_capacity(rank);
        for k in 0..rank {
            let mut factor: u64 = 1;
            for (&p, exps) in &parts {
                if let Some(&e) = exps.get(k) {
                    factor = p.checked_pow(e).and_then(|q| factor.checked_mul(q)).ok_or(
                        Error::resource("group order", usize::MAX, u32::MAX as usize),
                    )?;
                }
            }
            descending.push(factor);
        }
        let mut order: u64 = 1;
        for &f in &descending {
            order = order
                .checked_mul(f)
                .filter(|&o| o <= u32::MAX as u64)
                .ok_or(Error::resource(
                    "group order",
                    usize::MAX,
                    u32::MAX as usize,
                ))?;
        }
        descending.reverse();
        Ok(GroupSpec {
            factors: descending.into_iter().map(|f| f as usize).collect(),
            order: order as usize,
        })
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    /// True for the Klein four-group `C_2 ⊕ C_2`.
    pub fn is_klein_four(&self) -> bool {
        self.factors == [2, 2]
    }

    pub fn coords(&self, mut index: usize) -> Vec<usize> {
        self.factors
            .iter()
            .map(|&n| {
                let c = index % n;
                index /= n;
                c
            })
            .collect()
    }

    /// Inverse of [`coords`](Self::coords); coordinates are reduced mod `n_i`.
    pub fn index_of(&self, coords: &[usize]) -> usize {
        debug_assert_eq!(coords.len(), self.factors.len());
        let mut index = 0;
        let mut stride = 1;
        for (&c, &n) in coords.iter().zip(&self.factors) {
            index += (c % n) * stride;
            stride *= n;
        }
        index
    }

    pub fn element(&self, index: usize) -> GroupElement {
        GroupElement {
            coords: self.coords(index),
            index,
        }
    }

    /// Index of the `i`-th canonical generator `e_i`.
    pub fn basis_element(&self, i: usize) -> usize {
        self.factors[..i].iter().product()
    }
}

impl AbelianTable for GroupSpec {
    fn order(&self) -> usize {
        self.order
    }

    fn add(&self, mut a: usize, mut b: usize) -> usize {
        let mut out = 0;
        let mut stride = 1;
        for &n in &self.factors {
            out += ((a % n + b % n) % n) * stride;
            stride *= n;
            a /= n;
            b /= n;
        }
        out
    }

    fn neg(&self, mut a: usize) -> usize {
        let mut out = 0;
        let mut stride = 1;
        for &n in &self.factors {
            out += ((n - a % n) % n) * stride;
            stride *= n;
            a /= n;
        }
        out
    }

    /// lcm over coordinates of `n_i / gcd(c_i, n_i)`.
    fn element_order(&self, a: usize) -> usize {
        self.coords(a)
            .iter()
            .zip(&self.factors)
            .map(|(&c, &n)| n / gcd(c, n))
            .fold(1, lcm)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "C1");
        }
        let parts: Vec<String> = self.factors.iter().map(|n| format!("C{n}")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Parses comma-separated cyclic factors such as `"2,4"`. The empty string
/// denotes the trivial group.
impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_factor_list(s).and_then(|f| GroupSpec::new(&f))
    }
}

/// Splits a group literal into its raw factor list without normalizing it.
pub fn parse_factor_list(s: &str) -> Result<Vec<u64>> {
    let trimmed = s.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|tok| {
            tok.trim().parse::<u64>().map_err(|e| Error::Parse {
                input: s.to_string(),
                reason: format!("{:?}: {e}", tok.trim()),
            })
        })
        .collect()
}

/// A materialized addition table. Used for subgroups and quotients, which
/// have no invariant-factor indexing of their own.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    sum: Vec<u32>,
    inverse: Vec<u32>,
}

impl GroupTable {
    pub fn from_table(t: &impl AbelianTable) -> Self {
        let n = t.order();
        let mut sum = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                sum.push(t.add(a, b) as u32);
            }
        }
        let inverse = (0..n).map(|a| t.neg(a) as u32).collect();
        GroupTable {
            order: n,
            sum,
            inverse,
        }
    }

    /// The group on `members` (which must contain `0` first and be closed),
    /// renumbered by position in the list.
    pub fn induced(parent: &impl AbelianTable, members: &[usize]) -> Result<Self> {
        if members.first() != Some(&0) {
            return Err(Error::Invariant(
                "subgroup members must start with 0".into(),
            ));
        }
        let mut local = vec![u32::MAX; parent.order()];
        for (i, &m) in members.iter().enumerate() {
            local[m] = i as u32;
        }
        let n = members.len();
        let mut sum = Vec::with_capacity(n * n);
        for &a in members {
            for &b in members {
                let s = local[parent.add(a, b)];
                if s == u32::MAX {
                    return Err(Error::Invariant(format!(
                        "members not closed: {a} + {b} leaves the set"
                    )));
                }
                sum.push(s);
            }
        }
        let inverse = members
            .iter()
            .map(|&a| local[parent.neg(a)])
            .collect::<Vec<_>>();
        if inverse.contains(&u32::MAX) {
            return Err(Error::Invariant("members not closed under negation".into()));
        }
        Ok(GroupTable {
            order: n,
            sum,
            inverse,
        })
    }
}

impl AbelianTable for GroupTable {
    fn order(&self) -> usize {
        self.order
    }

    #[inline]
    fn add(&self, a: usize, b: usize) -> usize {
        self.sum[a * self.order + b] as usize
    }

    #[inline]
    fn neg(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }
}

#[inline]
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

fn mask_sum(t: &impl AbelianTable, a: u64, b: u64) -> u64 {
    let mut out = 0u64;
    for x in bits(a) {
        for y in bits(b) {
            out |= 1 << t.add(x, y);
        }
    }
    out
}

fn assert_maskable(t: &impl AbelianTable) {
    assert!(
        t.order() <= MASK_BITS,
        "group of order {} does not fit a {MASK_BITS}-bit element mask",
        t.order()
    );
}

/// A subgroup, stored as its member mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    order: usize,
    mask: u64,
}

impl Subgroup {
    /// Validates that `mask` is a subgroup of `t`.
    pub fn from_mask(t: &impl AbelianTable, mask: u64) -> Result<Self> {
        assert_maskable(t);
        if mask & 1 == 0 {
            return Err(Error::Invariant(format!(
                "mask {mask:#b} misses the zero element"
            )));
        }
        if t.order() < MASK_BITS && mask >> t.order() != 0 {
            return Err(Error::Invariant(format!(
                "mask {mask:#b} has bits outside the group"
            )));
        }
        if mask_sum(t, mask, mask) != mask {
            return Err(Error::Invariant(format!(
                "mask {mask:#b} is not closed under addition"
            )));
        }
        Ok(Subgroup {
            order: mask.count_ones() as usize,
            mask,
        })
    }

    pub fn trivial() -> Self {
        Subgroup { order: 1, mask: 1 }
    }

    pub fn whole(t: &impl AbelianTable) -> Self {
        assert_maskable(t);
        let mask = if t.order() == MASK_BITS {
            u64::MAX
        } else {
            (1u64 << t.order()) - 1
        };
        Subgroup {
            order: t.order(),
            mask,
        }
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn contains(&self, a: usize) -> bool {
        a < MASK_BITS && self.mask >> a & 1 == 1
    }

    /// Members in ascending index order; the first is always `0`.
    pub fn members(&self) -> Vec<usize> {
        bits(self.mask).collect()
    }
}

/// `⟨a⟩ = {0, a, 2a, …}`.
pub fn cyclic_subgroup(t: &impl AbelianTable, a: usize) -> Subgroup {
    assert_maskable(t);
    let mut mask = 1u64;
    let mut x = a;
    while x != 0 {
        mask |= 1 << x;
        x = t.add(x, a);
    }
    Subgroup {
        order: mask.count_ones() as usize,
        mask,
    }
}

/// Smallest subgroup containing every element of `gens`.
pub fn subgroup_generated(t: &impl AbelianTable, gens: &[usize]) -> Subgroup {
    let mask = gens
        .iter()
        .fold(1u64, |acc, &g| mask_sum(t, acc, cyclic_subgroup(t, g).mask));
    Subgroup {
        order: mask.count_ones() as usize,
        mask,
    }
}

/// All subgroups, each once, sorted by `(order, mask)`.
///
/// Breadth-first over single-generator extensions `⟨S, x⟩ = S + ⟨x⟩`,
/// starting from the trivial subgroup.
pub fn enumerate_subgroups(t: &impl AbelianTable, max_order: usize) -> Result<Vec<Subgroup>> {
    if t.order() > max_order.min(MASK_BITS) {
        return Err(Error::resource(
            "group order",
            t.order(),
            max_order.min(MASK_BITS),
        ));
    }
    let cyclic: Vec<u64> = (0..t.order()).map(|x| cyclic_subgroup(t, x).mask).collect();
    let mut seen = HashSet::from([1u64]);
    let mut queue = VecDeque::from([1u64]);
    while let Some(s) = queue.pop_front() {
        for (x, &c) in cyclic.iter().enumerate() {
            if s >> x & 1 == 1 {
                continue;
            }
            let ext = mask_sum(t, s, c);
            if seen.insert(ext) {
                queue.push_back(ext);
            }
        }
    }
    let mut out: Vec<Subgroup> = seen
        .into_iter()
        .map(|mask| Subgroup {
            order: mask.count_ones() as usize,
            mask,
        })
        .collect();
    out.sort();
    Ok(out)
}

/// `G/H` with cosets numbered in order of their least element, so the coset
/// of `0` is number `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientGroup {
    parent_order: usize,
    modulus: Subgroup,
    coset_reps: Vec<usize>,
    coset_of: Vec<usize>,
    table: GroupTable,
}

impl QuotientGroup {
    pub fn new(parent: &impl AbelianTable, modulus: &Subgroup) -> Result<Self> {
        let modulus = Subgroup::from_mask(parent, modulus.mask)?;
        let n = parent.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut coset_reps = Vec::with_capacity(n / modulus.order);
        for a in 0..n {
            if coset_of[a] != usize::MAX {
                continue;
            }
            let k = coset_reps.len();
            coset_reps.push(a);
            for h in modulus.members() {
                coset_of[parent.add(a, h)] = k;
            }
        }
        let m = coset_reps.len();
        let mut sum = Vec::with_capacity(m * m);
        for &a in &coset_reps {
            for &b in &coset_reps {
                sum.push(coset_of[parent.add(a, b)] as u32);
            }
        }
        let inverse = coset_reps
            .iter()
            .map(|&a| coset_of[parent.neg(a)] as u32)
            .collect();
        Ok(QuotientGroup {
            parent_order: n,
            modulus,
            coset_reps,
            coset_of,
            table: GroupTable {
                order: m,
                sum,
                inverse,
            },
        })
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn modulus(&self) -> &Subgroup {
        &self.modulus
    }

    pub fn coset_reps(&self) -> &[usize] {
        &self.coset_reps
    }

    /// Coset number of a parent element.
    pub fn coset_of(&self, a: usize) -> usize {
        self.coset_of[a]
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    /// Parent-element mask of coset number `k`.
    pub fn coset_mask(&self, k: usize) -> u64 {
        self.coset_of
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == k)
            .fold(0u64, |m, (a, _)| m | 1 << a)
    }
}

impl AbelianTable for QuotientGroup {
    fn order(&self) -> usize {
        self.table.order
    }

    fn add(&self, a: usize, b: usize) -> usize {
        self.table.add(a, b)
    }

    fn neg(&self, a: usize) -> usize {
        self.table.neg(a)
    }
}

/// Checks the abelian group axioms on a table with identity `0`.
///
/// Associativity is checked exhaustively for tables up to order 256.
pub fn validate_table(t: &impl AbelianTable) -> Result<()> {
    let n = t.order();
    if n == 0 {
        return Err(Error::Invariant("empty group table".into()));
    }
    for a in 0..n {
        if t.add(0, a) != a || t.add(a, 0) != a {
            return Err(Error::Invariant(format!("0 is not an identity for {a}")));
        }
        let na = t.neg(a);
        if na >= n || t.add(a, na) != 0 {
            return Err(Error::Invariant(format!("{a} has no inverse")));
        }
        for b in 0..n {
            let s = t.add(a, b);
            if s >= n {
                return Err(Error::Invariant(format!("{a} + {b} = {s} is out of range")));
            }
            if s != t.add(b, a) {
                return Err(Error::Invariant(format!("{a} + {b} is not commutative")));
            }
        }
    }
    if n <= 256 {
        for a in 0..n {
            for b in 0..n {
                let ab = t.add(a, b);
                for c in 0..n {
                    if t.add(ab, c) != t.add(a, t.add(b, c)) {
                        return Err(Error::Invariant(format!(
                            "({a} + {b}) + {c} differs from {a} + ({b} + {c})"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Invariant factors of an abelian group given by its table.
///
/// For each prime `p | n` the counts `#{x : p^k·x = 0} = p^{s_k}` give the
/// number `s_k − s_{k−1}` of cyclic `p`-factors of order at least `p^k`;
/// the primary parts are then regrouped into the divisibility chain.
pub fn classify_invariant_factors(t: &impl AbelianTable) -> Result<Vec<usize>> {
    validate_table(t)?;
    let n = t.order();
    let mut parts: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for (p, e) in factorize(n as u64) {
        let mut at_least = Vec::with_capacity(e as usize + 2);
        let mut prev_s = 0u32;
        let mut pk = 1u64;
        for _ in 1..=e {
            pk *= p;
            let count = (0..n).filter(|&x| t.scale(pk, x) == 0).count() as u64;
            let s = exact_log(count, p).ok_or_else(|| {
                Error::Invariant(format!(
                    "{count} elements killed by {pk}: not a power of {p}"
                ))
            })?;
            at_least.push(s - prev_s);
            prev_s = s;
        }
        at_least.push(0);
        let exps = parts.entry(p).or_default();
        for k in 0..e as usize {
            let exactly = at_least[k] - at_least[k + 1];
            exps.extend(std::iter::repeat_n(k as u32 + 1, exactly as usize));
        }
    }
    Ok(GroupSpec::from_prime_parts(parts)?.factors)
}

/// An automorphism of a group, as an element-to-element image table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupAutMap {
    image: Vec<usize>,
}

impl GroupAutMap {
    pub fn identity(order: usize) -> Self {
        GroupAutMap {
            image: (0..order).collect(),
        }
    }

    /// Wraps an image table without checking it; see [`validate`](Self::validate).
    pub fn from_images(image: Vec<usize>) -> Self {
        GroupAutMap { image }
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, a: usize) -> usize {
        self.image[a]
    }

    /// Bijective, fixes `0`, and additive on every pair.
    pub fn validate(&self, t: &impl AbelianTable) -> Result<()> {
        let n = t.order();
        if self.image.len() != n {
            return Err(Error::Invariant(format!(
                "image table has length {}, group has order {n}",
                self.image.len()
            )));
        }
        let mut hit = vec![false; n];
        for &y in &self.image {
            if y >= n || std::mem::replace(&mut hit[y], true) {
                return Err(Error::Invariant(format!(
                    "image table is not a permutation ({y} repeated or out of range)"
                )));
            }
        }
        if self.image[0] != 0 {
            return Err(Error::Invariant(format!("0 maps to {}", self.image[0])));
        }
        for a in 0..n {
            for b in a..n {
                if self.image[t.add(a, b)] != t.add(self.image[a], self.image[b]) {
                    return Err(Error::Invariant(format!(
                        "not additive on ({a}, {b}): image of sum is {}, sum of images is {}",
                        self.image[t.add(a, b)],
                        t.add(self.image[a], self.image[b])
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_automorphism(&self, t: &impl AbelianTable) -> bool {
        self.validate(t).is_ok()
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &GroupAutMap) -> GroupAutMap {
        GroupAutMap {
            image: other.image.iter().map(|&a| self.image[a]).collect(),
        }
    }

    pub fn inverse(&self) -> GroupAutMap {
        let mut image = vec![0; self.image.len()];
        for (a, &b) in self.image.iter().enumerate() {
            image[b] = a;
        }
        GroupAutMap { image }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(a, &b)| a == b)
    }

    /// Pointwise image of an element mask.
    pub fn image_mask(&self, mask: u64) -> u64 {
        bits(mask).fold(0, |m, a| m | 1 << self.image[a])
    }
}

/// Every automorphism of `g`, sorted by image table.
///
/// An automorphism is fixed by the images `y_i` of the canonical generators
/// `e_i`, and `e_i ↦ y_i` extends to a homomorphism exactly when
/// `ord(y_i) | n_i`; candidates are filtered to bijections.
pub fn enumerate_group_automorphisms(g: &GroupSpec, max_order: usize) -> Result<Vec<GroupAutMap>> {
    if g.order() > max_order {
        return Err(Error::resource("group order", g.order(), max_order));
    }
    let n = g.order();
    let candidates: Vec<Vec<usize>> = g
        .factors()
        .iter()
        .map(|&ni| (0..n).filter(|&y| ni % g.element_order(y) == 0).collect())
        .collect();
    let coords: Vec<Vec<usize>> = (0..n).map(|x| g.coords(x)).collect();
    let mut out = Vec::new();
    let mut chosen = vec![0usize; g.rank()];
    let mut hit = vec![false; n];
    basis_images(g, &candidates, &coords, 0, &mut chosen, &mut hit, &mut out);
    out.sort();
    out.dedup();
    Ok(out)
}

fn basis_images(
    g: &GroupSpec,
    candidates: &[Vec<usize>],
    coords: &[Vec<usize>],
    depth: usize,
    chosen: &mut [usize],
    hit: &mut [bool],
    out: &mut Vec<GroupAutMap>,
) {
    if depth == chosen.len() {
        hit.fill(false);
        let mut image = Vec::with_capacity(coords.len());
        for c in coords {
            let y = c
                .iter()
                .zip(chosen.iter())
                .fold(0, |acc, (&ci, &yi)| g.add(acc, g.scale(ci as u64, yi)));
            if std::mem::replace(&mut hit[y], true) {
                return;
            }
            image.push(y);
        }
        out.push(GroupAutMap { image });
        return;
    }
    for &y in &candidates[depth] {
        chosen[depth] = y;
        basis_images(g, candidates, coords, depth + 1, chosen, hit, out);
    }
}

/// All abelian groups of order exactly `n`, ordered by rank then factors.
///
/// One partition of the exponent per prime, combined into the
/// invariant-factor chain.
pub fn abelian_groups_of_order(n: usize) -> Vec<GroupSpec> {
    if n == 0 {
        return Vec::new();
    }
    let mut combos: Vec<BTreeMap<u64, Vec<u32>>> = vec![BTreeMap::new()];
    for (p, e) in factorize(n as u64) {
        let parts = partitions(e);
        combos = combos
            .into_iter()
            .flat_map(|base| {
                parts.iter().map(move |part| {
                    let mut m = base.clone();
                    m.insert(p, part.clone());
                    m
                })
            })
            .collect();
    }
    let mut out: Vec<GroupSpec> = combos
        .into_iter()
        .map(|m| GroupSpec::from_prime_parts(m).expect("order fits"))
        .collect();
    out.sort_by(|a, b| (a.rank(), &a.factors).cmp(&(b.rank(), &b.factors)));
    out
}

/// All abelian groups of order `1..=max_order`.
pub fn abelian_groups_up_to(max_order: usize) -> Vec<GroupSpec> {
    (1..=max_order).flat_map(abelian_groups_of_order).collect()
}

/// Partitions of `n` into non-increasing positive parts.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k);
            go(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Prime factorization by trial division, primes ascending.
pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn exact_log(mut x: u64, p: u64) -> Option<u32> {
    let mut k = 0;
    while x > 1 {
        if !x.is_multiple_of(p) {
            return None;
        }
        x /= p;
        k += 1;
    }
    (x == 1).then_some(k)
}

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}
