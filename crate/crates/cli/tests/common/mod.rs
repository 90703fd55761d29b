//! Brute-force reference implementations. They share nothing with
//! `powmon-core` except the element numbering: mixed radix over the
//! invariant factors, first factor least significant, and subset `X`
//! at carrier index `mask(X) >> 1`.

#![allow(dead_code)]

use std::collections::HashSet;
use std::process::{Command, Output};

pub struct Grp {
    pub factors: Vec<usize>,
    pub n: usize,
}

impl Grp {
    pub fn new(factors: &[usize]) -> Self {
        Grp {
            factors: factors.to_vec(),
            n: factors.iter().product(),
        }
    }

    fn coords(&self, mut a: usize) -> Vec<usize> {
        self.factors
            .iter()
            .map(|&m| {
                let c = a % m;
                a /= m;
                c
            })
            .collect()
    }

    fn index(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.factors)
            .rev()
            .fold(0, |acc, (&c, &m)| acc * m + c % m)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.coords(a), self.coords(b));
        let sum: Vec<usize> = x.iter().zip(&y).map(|(p, q)| p + q).collect();
        self.index(&sum)
    }

    pub fn order_of(&self, a: usize) -> usize {
        let (mut k, mut x) = (1, a);
        while x != 0 {
            x = self.add(x, a);
            k += 1;
        }
        k
    }

    pub fn cyclic_mask(&self, a: usize) -> u64 {
        let (mut mask, mut x) = (1u64, a);
        while x != 0 {
            mask |= 1 << x;
            x = self.add(x, a);
        }
        mask
    }

    pub fn sumset(&self, x: u64, y: u64) -> u64 {
        let mut out = 0;
        for a in (0..self.n).filter(|&a| x >> a & 1 == 1) {
            for b in (0..self.n).filter(|&b| y >> b & 1 == 1) {
                out |= 1 << self.add(a, b);
            }
        }
        out
    }

    pub fn carrier_size(&self) -> usize {
        1 << (self.n - 1)
    }

    /// Carrier masks in carrier-index order.
    pub fn carrier(&self) -> Vec<u64> {
        (0..self.carrier_size() as u64)
            .map(|i| i << 1 | 1)
            .collect()
    }
}

/// `|Aut(G)|` by trying every assignment of images to the standard
/// generators and keeping the well-defined bijective ones.
pub fn brute_aut_g_count(g: &Grp) -> usize {
    let r = g.factors.len();
    let mut count = 0;
    let mut images = vec![0usize; r];
    loop {
        let respects_relations = (0..r).all(|i| {
            let mut x = 0;
            for _ in 0..g.factors[i] {
                x = g.add(x, images[i]);
            }
            x == 0
        });
        if respects_relations {
            let mut seen = 0u64;
            for a in 0..g.n {
                let mut y = 0;
                for (i, c) in g.coords(a).into_iter().enumerate() {
                    for _ in 0..c {
                        y = g.add(y, images[i]);
                    }
                }
                seen |= 1 << y;
            }
            if seen.count_ones() as usize == g.n {
                count += 1;
            }
        }
        // odometer over all r-tuples of elements
        let mut i = 0;
        while i < r {
            images[i] += 1;
            if images[i] < g.n {
                break;
            }
            images[i] = 0;
            i += 1;
        }
        if i == r {
            return count;
        }
    }
}

/// Subsets containing 0 and closed under addition.
pub fn brute_subgroups(g: &Grp) -> HashSet<u64> {
    g.carrier()
        .into_iter()
        .filter(|&x| g.sumset(x, x) == x)
        .collect()
}

pub fn brute_divides(g: &Grp, x: u64, y: u64) -> bool {
    g.carrier().into_iter().any(|z| g.sumset(x, z) == y)
}

/// Every automorphism of `P₀(G)` as an image table, by filtering all
/// permutations of the carrier that fix `{0}`.
pub fn brute_monoid_auts(g: &Grp) -> Vec<Vec<u32>> {
    let carrier = g.carrier();
    let n = carrier.len();
    let index = |mask: u64| (mask >> 1) as usize;
    let table: Vec<Vec<usize>> = carrier
        .iter()
        .map(|&x| carrier.iter().map(|&y| index(g.sumset(x, y))).collect())
        .collect();
    let mut rest: Vec<u32> = (1..n as u32).collect();
    let mut out = Vec::new();
    permute(&mut rest, 0, &mut |p| {
        let mut image = vec![0u32];
        image.extend_from_slice(p);
        let ok = (0..n).all(|i| {
            (i..n)
                .all(|j| image[table[i][j]] as usize == table[image[i] as usize][image[j] as usize])
        });
        if ok {
            out.push(image);
        }
    });
    out.sort();
    out
}

fn permute(v: &mut [u32], k: usize, visit: &mut impl FnMut(&[u32])) {
    if k == v.len() {
        visit(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, visit);
        v.swap(k, i);
    }
}

/// Checks that "X ↦ the set of H-cosets meeting X" is a monoid isomorphism
/// from the subsets divisible by `H` onto the subsets of `G/H` containing
/// the zero coset.
pub fn phi_is_isomorphism(g: &Grp, h: u64) -> Result<(), String> {
    let mut cosets: Vec<u64> = Vec::new();
    let mut coset_of = vec![usize::MAX; g.n];
    for a in 0..g.n {
        if coset_of[a] == usize::MAX {
            let c = g.sumset(h, 1 << a);
            for b in (0..g.n).filter(|&b| c >> b & 1 == 1) {
                coset_of[b] = cosets.len();
            }
            cosets.push(c);
        }
    }
    let reps: Vec<usize> = cosets.iter().map(|c| c.trailing_zeros() as usize).collect();
    let qadd = |i: usize, j: usize| coset_of[g.add(reps[i], reps[j])];
    let qsum = |x: u64, y: u64| {
        let mut out = 0u64;
        for i in (0..cosets.len()).filter(|&i| x >> i & 1 == 1) {
            for j in (0..cosets.len()).filter(|&j| y >> j & 1 == 1) {
                out |= 1 << qadd(i, j);
            }
        }
        out
    };
    let project = |x: u64| {
        (0..g.n)
            .filter(|&a| x >> a & 1 == 1)
            .fold(0u64, |acc, a| acc | 1 << coset_of[a])
    };
    let family: Vec<u64> = g
        .carrier()
        .into_iter()
        .filter(|&x| g.sumset(x, h) == x)
        .collect();
    let images: HashSet<u64> = family.iter().map(|&x| project(x)).collect();
    let expected = 1usize << (cosets.len() - 1);
    if family.len() != expected || images.len() != expected || images.iter().any(|m| m & 1 == 0) {
        return Err(format!(
            "family {} images {} quotient carrier {expected}",
            family.len(),
            images.len()
        ));
    }
    for &x in &family {
        for &y in &family {
            if project(g.sumset(x, y)) != qsum(project(x), project(y)) {
                return Err(format!("not additive on {x:#b}, {y:#b}"));
            }
        }
    }
    Ok(())
}

pub fn powmon(args: &[&str]) -> Output {
    powmon_with(args, &[])
}

pub fn powmon_with(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_powmon"));
    cmd.args(args).env_remove("POWMON_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("powmon runs")
}

pub fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}
