//! Automorphisms of `P₀(G)`: augmentations of group automorphisms,
//! pullbacks, restriction to `P₀(H)`, induction on `P₀(G/H)`, and exhaustive
//! enumeration.

mod search;

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::abelian_group::{enumerate_group_automorphisms, GroupAutMap, QuotientGroup, Subgroup};
use crate::error::{Error, Result};
use crate::power_monoid::{PowerMonoidContext, SubsetId};
use crate::Limits;

pub use search::{enumerate_trivial_pullback_automorphisms, SearchOutcome, SearchStats};

/// A self-map of the carrier of `P₀(G)`, as a table of carrier indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct MonoidMap {
    image: Vec<u32>,
}

impl MonoidMap {
    pub fn identity(carrier_size: usize) -> Self {
        MonoidMap {
            image: (0..carrier_size as u32).collect(),
        }
    }

    /// Wraps an image table without checking it; see [`is_monoid_automorphism`].
    pub fn from_images(image: Vec<u32>) -> Self {
        MonoidMap { image }
    }

    pub fn images(&self) -> &[u32] {
        &self.image
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: SubsetId) -> SubsetId {
        SubsetId::from_carrier_index(self.image[x.carrier_index()] as usize)
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &MonoidMap) -> MonoidMap {
        MonoidMap {
            image: other
                .image
                .iter()
                .map(|&i| self.image[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> MonoidMap {
        let mut image = vec![0; self.image.len()];
        for (i, &j) in self.image.iter().enumerate() {
            image[j as usize] = i as u32;
        }
        MonoidMap { image }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Carrier positions that are not fixed.
    pub fn moved(&self) -> impl Iterator<Item = usize> + '_ {
        self.image
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i != j as usize)
            .map(|(i, _)| i)
    }
}

/// The pullback `g` of an automorphism `f`, defined by `f({0,a}) = {0,g(a)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullbackResult {
    pub map: GroupAutMap,
    pub trivial: bool,
}

/// The map `F_h : X ↦ h[X]` induced by a group automorphism `h`.
pub fn augmentation(ctx: &PowerMonoidContext, h: &GroupAutMap) -> Result<MonoidMap> {
    h.validate(ctx.group())?;
    Ok(augmentation_unchecked(ctx, h))
}

fn augmentation_unchecked(ctx: &PowerMonoidContext, h: &GroupAutMap) -> MonoidMap {
    let image = ctx
        .enumerate_carrier()
        .map(|x| (h.image_mask(x.mask()) >> 1) as u32)
        .collect();
    MonoidMap { image }
}

/// Reads off `g` from the images of the 2-element sets, without checking
/// that it is a homomorphism.
pub fn pullback_map(ctx: &PowerMonoidContext, f: &MonoidMap) -> Result<GroupAutMap> {
    check_len(ctx, f)?;
    let mut image = vec![0usize; ctx.order()];
    for (a, slot) in image.iter_mut().enumerate().skip(1) {
        let pair = SubsetId::with_zero([a]);
        let fx = f.apply(pair);
        if fx.len() != 2 {
            return Err(Error::violation(
                "automorphisms map 2-element sets to 2-element sets",
                format!("{pair} maps to {fx}"),
            ));
        }
        *slot = fx.elements()[1];
    }
    Ok(GroupAutMap::from_images(image))
}

/// The pullback of `f`, validated as a group automorphism.
pub fn pullback(ctx: &PowerMonoidContext, f: &MonoidMap) -> Result<PullbackResult> {
    let map = pullback_map(ctx, f)?;
    map.validate(ctx.group())
        .map_err(|e| Error::violation("the pullback is a group automorphism", e.to_string()))?;
    let trivial = map.is_identity();
    Ok(PullbackResult { map, trivial })
}

fn check_len(ctx: &PowerMonoidContext, f: &MonoidMap) -> Result<()> {
    if f.len() != ctx.carrier_size() {
        return Err(Error::Contract(format!(
            "map has {} entries, carrier has {}",
            f.len(),
            ctx.carrier_size()
        )));
    }
    Ok(())
}

/// The raw definition: a permutation of the carrier fixing `{0}` that
/// preserves every sumset.
pub fn is_monoid_automorphism(ctx: &PowerMonoidContext, f: &MonoidMap) -> bool {
    first_violated_product(ctx, f).is_none() && is_permutation_fixing_zero(ctx, f)
}

fn is_permutation_fixing_zero(ctx: &PowerMonoidContext, f: &MonoidMap) -> bool {
    let n = ctx.carrier_size();
    if f.len() != n || f.image[0] != 0 {
        return false;
    }
    let mut hit = vec![false; n];
    f.image
        .iter()
        .all(|&j| (j as usize) < n && !std::mem::replace(&mut hit[j as usize], true))
}

/// Some pair `(X, Y)` with `f(X + Y) ≠ f(X) + f(Y)`, if any.
pub fn first_violated_product(
    ctx: &PowerMonoidContext,
    f: &MonoidMap,
) -> Option<(SubsetId, SubsetId)> {
    let n = ctx.carrier_size();
    if f.len() != n || f.image.iter().any(|&j| j as usize >= n) {
        return Some((SubsetId::ZERO, SubsetId::ZERO));
    }
    (0..n).into_par_iter().find_map_first(|i| {
        let x = SubsetId::from_carrier_index(i);
        let fx = f.apply(x);
        (i..n).find_map(|j| {
            let y = SubsetId::from_carrier_index(j);
            (f.apply(ctx.sumset(x, y)) != ctx.sumset(fx, f.apply(y))).then_some((x, y))
        })
    })
}

/// `F_{g⁻¹} ∘ f`, where `g` is the pullback of `f`; has trivial pullback.
pub fn normalize_by_pullback(ctx: &PowerMonoidContext, f: &MonoidMap) -> Result<MonoidMap> {
    let g = pullback(ctx, f)?.map;
    Ok(augmentation_unchecked(ctx, &g.inverse()).compose(f))
}

/// `f` restricted to `P₀(H)`, in `H`'s own numbering.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub context: PowerMonoidContext,
    /// `members[i]` is the element of `G` numbered `i` in `H`.
    pub members: Vec<usize>,
    pub map: MonoidMap,
}

impl Restriction {
    /// A subset of `H` (local numbering) as a subset of `G`.
    pub fn to_global(&self, local: SubsetId) -> SubsetId {
        SubsetId::with_zero(local.elements().into_iter().map(|i| self.members[i]))
    }
}

pub fn restrict_to_subgroup(
    ctx: &PowerMonoidContext,
    f: &MonoidMap,
    h: &Subgroup,
) -> Result<Restriction> {
    check_len(ctx, f)?;
    let hs = SubsetId::from(*h);
    let fh = f.apply(hs);
    if fh != hs {
        return Err(Error::violation(
            "f(H) = H for trivial pullbacks",
            format!("f({hs}) = {fh}"),
        ));
    }
    let members = h.members();
    let context = ctx.subgroup_context(h)?;
    let mut local = vec![usize::MAX; ctx.order()];
    for (i, &m) in members.iter().enumerate() {
        local[m] = i;
    }
    let mut image = Vec::with_capacity(context.carrier_size());
    for x in context.enumerate_carrier() {
        let global = SubsetId::with_zero(x.elements().into_iter().map(|i| members[i]));
        let fx = f.apply(global);
        if !fx.is_subset_of(hs) {
            return Err(Error::violation(
                "f restricts to P0(H)",
                format!("{global} ⊆ H but f({global}) = {fx} is not"),
            ));
        }
        let back = SubsetId::with_zero(fx.elements().into_iter().map(|a| local[a]));
        image.push(back.carrier_index() as u32);
    }
    let map = MonoidMap { image };
    if let Some((x, y)) = first_violated_product(&context, &map) {
        return Err(Error::violation(
            "the restriction is an automorphism of P0(H)",
            format!("restriction breaks {x} + {y}"),
        ));
    }
    if !is_permutation_fixing_zero(&context, &map) {
        return Err(Error::violation(
            "the restriction is an automorphism of P0(H)",
            "restriction is not a permutation fixing {0}",
        ));
    }
    Ok(Restriction {
        context,
        members,
        map,
    })
}

/// The induced automorphism `f_{G/H} = φ_H ∘ f ∘ φ_H⁻¹` of `P₀(G/H)`.
#[derive(Debug, Clone)]
pub struct Induced {
    pub quotient: QuotientGroup,
    pub context: PowerMonoidContext,
    pub map: MonoidMap,
}

pub fn induce_on_quotient(
    ctx: &PowerMonoidContext,
    f: &MonoidMap,
    h: &Subgroup,
) -> Result<Induced> {
    check_len(ctx, f)?;
    let quotient = ctx.quotient(h)?;
    let context = ctx.quotient_context(&quotient)?;
    let mut image = Vec::with_capacity(context.carrier_size());
    for y in context.enumerate_carrier() {
        let x = ctx.quotient_lift(&quotient, y);
        let fx = f.apply(x);
        let projected = ctx.quotient_project(&quotient, fx);
        if ctx.quotient_lift(&quotient, projected) != fx {
            return Err(Error::violation(
                "f stabilizes P0,H(G)",
                format!(
                    "f({x}) = {fx} is not a union of cosets of {}",
                    SubsetId::from(*h)
                ),
            ));
        }
        image.push(projected.carrier_index() as u32);
    }
    let map = MonoidMap { image };
    if let Some((a, b)) = first_violated_product(&context, &map) {
        return Err(Error::violation(
            "the induced map is an automorphism of P0(G/H)",
            format!("induced map breaks {a} + {b}"),
        ));
    }
    if !is_permutation_fixing_zero(&context, &map) {
        return Err(Error::violation(
            "the induced map is an automorphism of P0(G/H)",
            "induced map is not a permutation fixing {0}",
        ));
    }
    Ok(Induced {
        quotient,
        context,
        map,
    })
}

/// All automorphisms of `P₀(G)`, as `F_g ∘ k` over `g ∈ Aut(G)` and
/// trivial-pullback `k`, sorted by image table.
///
/// The assembled list is checked to consist of automorphisms and to be
/// closed under composition before it is returned.
pub fn enumerate_monoid_automorphisms(
    ctx: &PowerMonoidContext,
    limits: &Limits,
) -> Result<Vec<MonoidMap>> {
    let spec = ctx.spec().ok_or_else(|| {
        Error::Contract("automorphism enumeration needs an invariant-factor group".into())
    })?;
    let group_auts = enumerate_group_automorphisms(spec, limits.max_group_order)?;
    let kernel = enumerate_trivial_pullback_automorphisms(ctx, limits.budget)?.maps;
    assemble(ctx, &group_auts, &kernel)
}

/// `{F_g ∘ k}`, validated and checked for closure.
pub fn assemble(
    ctx: &PowerMonoidContext,
    group_auts: &[GroupAutMap],
    kernel: &[MonoidMap],
) -> Result<Vec<MonoidMap>> {
    let mut all = Vec::with_capacity(group_auts.len() * kernel.len());
    for g in group_auts {
        let fg = augmentation(ctx, g)?;
        for k in kernel {
            all.push(fg.compose(k));
        }
    }
    all.sort();
    all.dedup();
    if all.len() != group_auts.len() * kernel.len() {
        return Err(Error::Invariant(format!(
            "{} products F_g ∘ k are not distinct",
            group_auts.len() * kernel.len()
        )));
    }
    if let Some(bad) = all
        .par_iter()
        .position_first(|f| !is_monoid_automorphism(ctx, f))
    {
        return Err(Error::Invariant(format!(
            "assembled map #{bad} is not an automorphism"
        )));
    }
    check_closed(&all)?;
    Ok(all)
}

/// Every product of two listed maps is listed.
pub fn check_closed(maps: &[MonoidMap]) -> Result<()> {
    let set: HashSet<&MonoidMap> = maps.iter().collect();
    let bad = maps.par_iter().enumerate().find_map_first(|(i, a)| {
        maps.iter()
            .position(|b| !set.contains(&a.compose(b)))
            .map(|j| (i, j))
    });
    match bad {
        Some((i, j)) => Err(Error::Invariant(format!(
            "map #{i} ∘ map #{j} is missing from the list"
        ))),
        None => Ok(()),
    }
}

/// Largest carrier [`naive_enumerate`] accepts.
pub const NAIVE_MAX_CARRIER: usize = 8;

/// Brute force: every permutation of the carrier fixing `{0}`, filtered by
/// [`is_monoid_automorphism`].
pub fn naive_enumerate(ctx: &PowerMonoidContext) -> Result<Vec<MonoidMap>> {
    let n = ctx.carrier_size();
    if n > NAIVE_MAX_CARRIER {
        return Err(Error::resource(
            "carrier size for naive enumeration",
            n,
            NAIVE_MAX_CARRIER,
        ));
    }
    let mut rest: Vec<u32> = (1..n as u32).collect();
    let mut out = Vec::new();
    let mut visit = |perm: &[u32]| {
        let mut image = Vec::with_capacity(n);
        image.push(0);
        image.extend_from_slice(perm);
        let f = MonoidMap { image };
        if is_monoid_automorphism(ctx, &f) {
            out.push(f);
        }
    };
    heap_permutations(&mut rest, &mut visit);
    out.sort();
    Ok(out)
}

/// Heap's algorithm (iterative).
fn heap_permutations(items: &mut [u32], visit: &mut impl FnMut(&[u32])) {
    let k = items.len();
    let mut c = vec![0usize; k];
    visit(items);
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            visit(items);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}
