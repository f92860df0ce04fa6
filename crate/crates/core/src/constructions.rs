//! The explicit coloring constructions behind the lower bounds, plus their
//! certification: fresh colors on a convex family, fresh colors on the two
//! middle layers, wrap-around chains for brooms/forks, and pairwise
//! internally disjoint maximal chains for antichains. Every generator
//! checks its own cardinality bookkeeping instead of silently adjusting.

use thiserror::Error;

use crate::copies::{find_rainbow_copy, Coloring, CopyEmbedding, Mode};
use crate::families::{full_mask, is_convex, middle_layer_order, SetFamily};
use crate::poset::Poset;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("family is not convex")]
    NotConvex,
    #[error("bad construction parameters: {0}")]
    BadParams(String),
    #[error("construction invariant violated: {0}")]
    Invariant(String),
}

/// A cyclic interval of `[n]` (1-based): `[a, b]` is `{a, …, b}` when
/// `a <= b` and `{a, …, n} ∪ {1, …, b}` when `b < a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WrapInterval {
    pub a: u32,
    pub b: u32,
}

impl WrapInterval {
    pub fn new(a: u32, b: u32) -> WrapInterval {
        assert!(a >= 1 && b >= 1);
        WrapInterval { a, b }
    }

    pub fn to_mask(self, n: u32) -> u64 {
        assert!(self.a <= n && self.b <= n);
        let span = |lo: u32, hi: u32| -> u64 {
            // Elements lo..=hi, 1-based, as bits lo-1..=hi-1.
            if lo > hi {
                return 0;
            }
            let width = hi - lo + 1;
            if width == 64 {
                u64::MAX
            } else {
                ((1u64 << width) - 1) << (lo - 1)
            }
        };
        if self.a <= self.b {
            span(self.a, self.b)
        } else {
            span(self.a, n) | span(1, self.b)
        }
    }
}

/// Report of certifying a coloring against a poset: the number of colors
/// used and a rainbow witness if one exists.
#[derive(Debug, Clone)]
pub struct CertifyReport {
    pub color_count: u32,
    pub rainbow: Option<CopyEmbedding>,
}

/// Fresh color per member of a convex family, one shared color for the
/// rest of the cube. Uses |F| + 1 colors (|F| when the family is the whole
/// cube and no mask is left for the shared color).
pub fn lowertriv_coloring(family: &SetFamily) -> Result<Coloring, ConstructionError> {
    if !is_convex(family) {
        return Err(ConstructionError::NotConvex);
    }
    let n = family.ground();
    let outside = family.len() as u32;
    let mut colors = vec![outside; 1usize << n];
    for (i, &m) in family.members().iter().enumerate() {
        colors[m as usize] = i as u32;
    }
    Ok(Coloring::new(n, colors))
}

/// Fresh color per set in layers floor(n/2) and floor(n/2)+1, one shared
/// color elsewhere.
pub fn butterfly_coloring(n: u32) -> Result<Coloring, ConstructionError> {
    if n < 2 {
        return Err(ConstructionError::BadParams("butterfly coloring needs n >= 2".into()));
    }
    let mut next = 0u32;
    let mut colors = vec![u32::MAX; 1usize << n];
    for k in [n / 2, n / 2 + 1] {
        for &m in crate::families::layer(n, k).unwrap().members() {
            colors[m as usize] = next;
            next += 1;
        }
    }
    let shared = next;
    for c in colors.iter_mut() {
        if *c == u32::MAX {
            *c = shared;
        }
    }
    Ok(Coloring::new(n, colors))
}

/// The wrap-around chains used by the broom/fork construction. Chain j
/// (2 <= j <= s-1) is {j} ⊂ [j, j+1] ⊂ … ⊂ [j, j-2]; chain 1 climbs the
/// prefix `[1] ⊂ … ⊂ [s-2]` and then adds s, s+1, …, n one by one.
pub fn broom_chains(n: u32, s: u32) -> Result<Vec<Vec<u64>>, ConstructionError> {
    if s < 2 {
        return Err(ConstructionError::BadParams("broom construction needs s >= 2".into()));
    }
    if n < s + 2 {
        return Err(ConstructionError::BadParams(format!(
            "broom construction needs n >= s + 2 (the chains do not fit below that), got n = {n}, s = {s}"
        )));
    }
    let mut chains = Vec::with_capacity(s as usize - 1);
    {
        let mut chain = Vec::new();
        for t in 1..=s.saturating_sub(2) {
            chain.push(WrapInterval::new(1, t).to_mask(n));
        }
        let prefix = if s >= 3 { WrapInterval::new(1, s - 2).to_mask(n) } else { 0 };
        for t in s..=n {
            chain.push(prefix | WrapInterval::new(s, t).to_mask(n));
        }
        chains.push(chain);
    }
    for j in 2..s {
        let mut chain = Vec::new();
        for t in 0..n - 1 {
            let b = (j - 1 + t) % n + 1; // j + t, cyclically in 1..=n
            chain.push(WrapInterval::new(j, b).to_mask(n));
        }
        chains.push(chain);
    }
    // Bookkeeping checks: each chain has exactly n - 1 sets, strictly
    // nested, and no set of chain i contains a set of chain i - 1.
    for (i, chain) in chains.iter().enumerate() {
        if chain.len() != (n - 1) as usize {
            return Err(ConstructionError::Invariant(format!(
                "chain {} has {} sets, expected n - 1 = {}",
                i + 1,
                chain.len(),
                n - 1
            )));
        }
        for w in chain.windows(2) {
            if w[0] & !w[1] != 0 || w[0] == w[1] {
                return Err(ConstructionError::Invariant(format!("chain {} is not nested", i + 1)));
            }
        }
    }
    for i in 1..chains.len() {
        for &c in &chains[i] {
            for &prev in &chains[i - 1] {
                if prev & !c == 0 {
                    return Err(ConstructionError::Invariant(format!(
                        "set {prev:#x} of chain {i} is inside set {c:#x} of chain {}",
                        i + 1
                    )));
                }
            }
        }
    }
    let mut all: Vec<u64> = chains.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    if all.len() != chains.iter().map(Vec::len).sum::<usize>() {
        return Err(ConstructionError::Invariant("chains share a set".into()));
    }
    if all.contains(&0) || all.contains(&full_mask(n)) {
        return Err(ConstructionError::Invariant("chains touch the empty or full set".into()));
    }
    Ok(chains)
}

/// Distinct colors on `{∅, [n]}` and on every set of the s - 1 wrap-around
/// chains; everything else shares the color of `[n]`. Uses
/// (s-1)(n-1) + 2 colors and admits no rainbow strong broom (dually, no
/// rainbow strong fork under complementation).
pub fn broom_chain_coloring(n: u32, s: u32) -> Result<Coloring, ConstructionError> {
    let chains = broom_chains(n, s)?;
    let mut next = 0u32;
    let mut colors = vec![u32::MAX; 1usize << n];
    colors[0] = next; // empty set
    next += 1;
    for chain in &chains {
        for &m in chain {
            colors[m as usize] = next;
            next += 1;
        }
    }
    let top = next;
    for c in colors.iter_mut() {
        if *c == u32::MAX {
            *c = top;
        }
    }
    let coloring = Coloring::new(n, colors);
    let expect = (s - 1) * (n - 1) + 2;
    if coloring.color_count() != expect {
        return Err(ConstructionError::Invariant(format!(
            "expected {expect} colors, used {}",
            coloring.color_count()
        )));
    }
    Ok(coloring)
}

/// k - 2 pairwise internally disjoint maximal chains (chain t inserts
/// elements in cyclic order starting at t), distinct colors on their
/// union and on ∅ and `[n]`, one shared color elsewhere. Uses
/// 3 + (k-2)(n-1) colors.
pub fn antichain_chain_coloring(n: u32, k: u32) -> Result<Coloring, ConstructionError> {
    if k < 2 {
        return Err(ConstructionError::BadParams("antichain construction needs k >= 2".into()));
    }
    if n < 2 * k {
        return Err(ConstructionError::BadParams(format!(
            "antichain construction needs n >= 2k, got n = {n}, k = {k}"
        )));
    }
    let mut interiors: Vec<Vec<u64>> = Vec::new();
    for t in 1..=k - 2 {
        let mut chain = Vec::new();
        for m in 0..n - 1 {
            let b = (t - 1 + m) % n + 1;
            chain.push(WrapInterval::new(t, b).to_mask(n));
        }
        interiors.push(chain);
    }
    // Pairwise internal disjointness.
    let mut seen = std::collections::HashSet::new();
    for chain in &interiors {
        for &m in chain {
            if !seen.insert(m) {
                return Err(ConstructionError::Invariant(format!(
                    "chains are not internally disjoint at {m:#x}"
                )));
            }
        }
    }
    let mut colors = vec![u32::MAX; 1usize << n];
    colors[0] = 0;
    colors[full_mask(n) as usize] = 1;
    let mut next = 2u32;
    for chain in &interiors {
        for &m in chain {
            colors[m as usize] = next;
            next += 1;
        }
    }
    let purple = next;
    for c in colors.iter_mut() {
        if *c == u32::MAX {
            *c = purple;
        }
    }
    let coloring = Coloring::new(n, colors);
    let expect = 3 + (k - 2) * (n - 1);
    if coloring.color_count() != expect {
        return Err(ConstructionError::Invariant(format!(
            "expected {expect} colors, used {}",
            coloring.color_count()
        )));
    }
    Ok(coloring)
}

/// From a single-layer family with more than sn/2 + k + 1 members, extracts
/// F' of size s + 1 whose union misses an element of `[n]`, and F'' of size
/// k + 1 none of whose members lies inside that union. Returns None when
/// the size hypothesis fails.
pub fn union_extraction(
    family: &SetFamily,
    s: u32,
    k: u32,
) -> Option<(SetFamily, SetFamily)> {
    let n = family.ground();
    let sizes: Vec<u32> = family.members().iter().map(|m| m.count_ones()).collect();
    assert!(
        sizes.windows(2).all(|w| w[0] == w[1]),
        "union extraction expects a single-layer family"
    );
    if let Some(&j) = sizes.first() {
        assert!(j <= n - 2, "union extraction expects layer j <= n - 2");
    }
    if family.len() as f64 <= s as f64 * n as f64 / 2.0 + k as f64 + 1.0 {
        return None;
    }
    // Shrink a carrier set M: while at least s + 1 members avoid some
    // element of M, drop the element avoided by the most members. At the
    // fixed point fewer than s|M|/2 members fit inside M, leaving enough
    // members outside to pick F''.
    let mut carrier = full_mask(n);
    loop {
        let mut best: Option<(usize, u32)> = None; // (count, element)
        for x in 0..n {
            if carrier >> x & 1 == 0 {
                continue;
            }
            let shrunk = carrier & !(1u64 << x);
            let count = family.members().iter().filter(|&&m| m & !shrunk == 0).count();
            if count > s as usize && best.map(|(c, _)| count > c).unwrap_or(true) {
                best = Some((count, x));
            }
        }
        match best {
            Some((_, x)) => carrier &= !(1u64 << x),
            None => break,
        }
    }
    if carrier == full_mask(n) {
        return None;
    }
    let inside: Vec<u64> = family
        .members()
        .iter()
        .copied()
        .filter(|&m| m & !carrier == 0)
        .take(s as usize + 1)
        .collect();
    if inside.len() != s as usize + 1 {
        return None;
    }
    let union: u64 = inside.iter().fold(0, |acc, &m| acc | m);
    debug_assert!(union.count_ones() < n);
    let outside: Vec<u64> = family
        .members()
        .iter()
        .copied()
        .filter(|&m| m & !union != 0)
        .take(k as usize + 1)
        .collect();
    if outside.len() != k as usize + 1 {
        return None;
    }
    Some((SetFamily::new(n, inside), SetFamily::new(n, outside)))
}

/// Certifies a coloring against a poset: color count plus a rainbow witness
/// when a rainbow copy exists.
pub fn certify(coloring: &Coloring, poset: &Poset, mode: Mode) -> CertifyReport {
    CertifyReport {
        color_count: coloring.color_count(),
        rainbow: find_rainbow_copy(poset, coloring, mode),
    }
}

/// The extremal fork-and-broom-free family: all floor((n-1)/2)-subsets of
/// [n-1], plus the same subsets with element n added. Convex.
pub fn katona_tarjan_family(n: u32) -> SetFamily {
    assert!(n >= 2);
    let base = crate::families::layer(n - 1, (n - 1) / 2).unwrap();
    let mut members: Vec<u64> = base.members().to_vec();
    members.extend(base.members().iter().map(|&m| m | 1 << (n - 1)));
    SetFamily::new(n, members)
}

/// The two middle layers used by the butterfly coloring, as a family.
pub fn butterfly_layers(n: u32) -> SetFamily {
    let ks: Vec<u32> = middle_layer_order(n).into_iter().take(2).collect();
    let mut members = Vec::new();
    for k in ks {
        members.extend_from_slice(crate::families::layer(n, k).unwrap().members());
    }
    SetFamily::new(n, members)
}
