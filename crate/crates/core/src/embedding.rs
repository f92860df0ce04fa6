//! Desk-scale embedding machinery: inclusion bigraphs between a family and
//! a selected slice, minimum-degree cores, greedy spiders grown under a
//! color-set discipline, completion of a spider to a fence and of a fence
//! to a crown, the pivot-reversal tree transform, forbidden neighborhoods,
//! marked chains, and the lower/upper badness and goodness predicates.
//!
//! Every embedding an operation returns is re-verified as a strong copy
//! through the copy detector; the growth disciplines are treated as
//! heuristics that the verification then audits.

use thiserror::Error;

use crate::copies::{CopyEmbedding, Mode};
use crate::families::{full_mask, BandSpec, SetFamily, SubsetMask};
use crate::poset::{catalog, CatalogId, Poset, PosetError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmbedError {
    #[error("spider growth stuck after {completed_legs} legs and {partial_steps} steps")]
    Stuck { completed_legs: usize, partial_steps: usize },
    #[error("no leaf pair with a common removable element found")]
    NoPairFound,
    #[error("completion infeasible: {0}")]
    Infeasible(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("bad pivot: {0}")]
    BadPivot(String),
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("grown embedding failed strong-copy verification: {0}")]
    NotStrongCopy(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// Which part of the bipartite inclusion graph a vertex lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lower,
    Upper,
}

/// Bipartite inclusion graph between a family and a selected upper slice:
/// `F` (lower) is joined to `F1` (upper) iff `F ⊆ F1` and `|F| = |F1| - j`.
/// The color set of such an edge is `F1 \ F`.
#[derive(Debug, Clone)]
pub struct InclusionBigraph {
    pub n: u32,
    pub j: u32,
    pub lower: Vec<u64>,
    pub upper: Vec<u64>,
    /// adjacency by index into `upper` / `lower`.
    pub adj_lower: Vec<Vec<u32>>,
    pub adj_upper: Vec<Vec<u32>>,
}

impl InclusionBigraph {
    pub fn edge_count(&self) -> usize {
        self.adj_lower.iter().map(Vec::len).sum()
    }

    pub fn vertex_count(&self) -> usize {
        self.lower.len() + self.upper.len()
    }

    pub fn average_degree(&self) -> f64 {
        if self.vertex_count() == 0 {
            return 0.0;
        }
        2.0 * self.edge_count() as f64 / self.vertex_count() as f64
    }

    pub fn min_degree(&self) -> usize {
        self.adj_lower
            .iter()
            .chain(self.adj_upper.iter())
            .map(Vec::len)
            .min()
            .unwrap_or(0)
    }

    pub fn color_set(&self, lower_idx: usize, upper_idx: usize) -> u64 {
        self.upper[upper_idx] & !self.lower[lower_idx]
    }
}

/// Builds the inclusion bigraph between `family` and `upper_sel` at level
/// gap `j`. `upper_sel` must be a subfamily of `family`.
pub fn build_bigraph(family: &SetFamily, upper_sel: &SetFamily, j: u32) -> InclusionBigraph {
    assert_eq!(family.ground(), upper_sel.ground());
    assert!(
        upper_sel.members().iter().all(|&m| family.contains(m)),
        "upper selection must be a subfamily"
    );
    let lower: Vec<u64> = family.members().to_vec();
    let upper: Vec<u64> = upper_sel.members().to_vec();
    let mut adj_lower = vec![Vec::new(); lower.len()];
    let mut adj_upper = vec![Vec::new(); upper.len()];
    for (ui, &u) in upper.iter().enumerate() {
        let want = u.count_ones().wrapping_sub(j);
        for (li, &l) in lower.iter().enumerate() {
            if l.count_ones() == want && l & !u == 0 {
                adj_lower[li].push(ui as u32);
                adj_upper[ui].push(li as u32);
            }
        }
    }
    InclusionBigraph { n: family.ground(), j, lower, upper, adj_lower, adj_upper }
}

/// Iteratively deletes vertices of degree < d from both parts. When the
/// input's average degree is at least 2d the result is guaranteed (and
/// asserted) to be nonempty.
pub fn min_degree_subgraph(b: &InclusionBigraph, d: usize) -> InclusionBigraph {
    assert!(d >= 1);
    let guaranteed = b.average_degree() >= 2.0 * d as f64;
    let mut alive_lower = vec![true; b.lower.len()];
    let mut alive_upper = vec![true; b.upper.len()];
    let mut deg_lower: Vec<usize> = b.adj_lower.iter().map(Vec::len).collect();
    let mut deg_upper: Vec<usize> = b.adj_upper.iter().map(Vec::len).collect();
    loop {
        let mut changed = false;
        for li in 0..b.lower.len() {
            if alive_lower[li] && deg_lower[li] < d {
                alive_lower[li] = false;
                changed = true;
                for &ui in &b.adj_lower[li] {
                    if alive_upper[ui as usize] {
                        deg_upper[ui as usize] -= 1;
                    }
                }
            }
        }
        for ui in 0..b.upper.len() {
            if alive_upper[ui] && deg_upper[ui] < d {
                alive_upper[ui] = false;
                changed = true;
                for &li in &b.adj_upper[ui] {
                    if alive_lower[li as usize] {
                        deg_lower[li as usize] -= 1;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    // Reindex the survivors and filter the adjacency through both alive
    // masks.
    let mut lower_map = vec![u32::MAX; b.lower.len()];
    let mut lower = Vec::new();
    for (i, &alive) in alive_lower.iter().enumerate() {
        if alive {
            lower_map[i] = lower.len() as u32;
            lower.push(b.lower[i]);
        }
    }
    let mut upper_map = vec![u32::MAX; b.upper.len()];
    let mut upper = Vec::new();
    for (i, &alive) in alive_upper.iter().enumerate() {
        if alive {
            upper_map[i] = upper.len() as u32;
            upper.push(b.upper[i]);
        }
    }
    let mut adj_lower = vec![Vec::new(); lower.len()];
    let mut adj_upper = vec![Vec::new(); upper.len()];
    for (li, adj) in b.adj_lower.iter().enumerate() {
        if !alive_lower[li] {
            continue;
        }
        for &ui in adj {
            if alive_upper[ui as usize] {
                adj_lower[lower_map[li] as usize].push(upper_map[ui as usize]);
                adj_upper[upper_map[ui as usize] as usize].push(lower_map[li]);
            }
        }
    }
    let out = InclusionBigraph { n: b.n, j: b.j, lower, upper, adj_lower, adj_upper };
    if guaranteed {
        assert!(
            !out.lower.is_empty() || !out.upper.is_empty(),
            "average degree {} >= 2d = {} must leave a nonempty core",
            b.average_degree(),
            2 * d
        );
        debug_assert!(out.min_degree() >= d);
    }
    out
}

/// Color-set rule for admitting a new spider edge against the union of all
/// previously used edge color sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Discipline {
    /// The new edge's color set must be disjoint from everything used.
    FullDisjoint,
    /// The new edge may reuse strictly fewer than j/k old colors.
    Fraction { j: u32, k: u32 },
}

impl Discipline {
    fn admits(&self, color_set: u64, used: u64) -> bool {
        match *self {
            Discipline::FullDisjoint => color_set & used == 0,
            Discipline::Fraction { j, k } => (color_set & used).count_ones() * k < j,
        }
    }
}

/// A grown spider: center plus `legs` alternating paths in the bigraph,
/// each recorded outward from the center as (mask, edge color set).
#[derive(Debug, Clone)]
pub struct SpiderEmbedding {
    pub n: u32,
    pub j: u32,
    pub center: u64,
    pub center_side: Side,
    pub legs: Vec<Vec<(u64, u64)>>,
    pub discipline: Discipline,
    pub used_colors: u64,
}

impl SpiderEmbedding {
    pub fn leg_len(&self) -> usize {
        self.legs.first().map_or(0, Vec::len)
    }

    pub fn leaf_masks(&self) -> Vec<u64> {
        self.legs.iter().map(|leg| leg.last().unwrap().0).collect()
    }

    pub fn leaf_color_sets(&self) -> Vec<u64> {
        self.legs.iter().map(|leg| leg.last().unwrap().1).collect()
    }

    pub fn all_masks(&self) -> Vec<u64> {
        let mut out = vec![self.center];
        for leg in &self.legs {
            out.extend(leg.iter().map(|&(m, _)| m));
        }
        out
    }

    /// The spider poset this embedding claims to copy.
    pub fn poset(&self) -> Poset {
        catalog(&CatalogId::Spider { leg_len: self.leg_len(), legs: self.legs.len() }).unwrap()
    }

    /// Re-expresses the spider as a copy embedding of S^{leg_len, legs}.
    pub fn to_copy_embedding(&self) -> CopyEmbedding {
        let poset = self.poset();
        let mut images = Vec::with_capacity(poset.size());
        images.push(self.center);
        for leg in &self.legs {
            images.extend(leg.iter().map(|&(m, _)| m));
        }
        CopyEmbedding { poset, ground: self.n, images, mode: Mode::Strong }
    }
}

/// Grows a spider with `legs` legs of `leg_len` edges in the bigraph,
/// admitting each new edge only if its color set passes the discipline
/// against everything used so far. The result is verified to be a strong
/// copy of S^{leg_len, legs}.
pub fn greedy_spider(
    b: &InclusionBigraph,
    legs: usize,
    leg_len: usize,
    discipline: Discipline,
    center_side: Side,
) -> Result<SpiderEmbedding, EmbedError> {
    if legs == 0 || leg_len == 0 {
        return Err(EmbedError::BadParams("spider needs legs >= 1 and leg_len >= 1".into()));
    }
    // Leaves of S^{k,l} are maximal, so the center is minimal exactly when
    // the leg length is odd.
    let required = if leg_len.is_multiple_of(2) { Side::Upper } else { Side::Lower };
    if center_side != required {
        return Err(EmbedError::BadParams(format!(
            "leg length {leg_len} forces the center into the {required:?} part"
        )));
    }
    let center_idx = match center_side {
        Side::Lower => (0..b.lower.len()).find(|&i| !b.adj_lower[i].is_empty()),
        Side::Upper => (0..b.upper.len()).find(|&i| !b.adj_upper[i].is_empty()),
    };
    let center_idx = center_idx.ok_or(EmbedError::Stuck { completed_legs: 0, partial_steps: 0 })?;
    let center = match center_side {
        Side::Lower => b.lower[center_idx],
        Side::Upper => b.upper[center_idx],
    };
    let mut used_masks: Vec<u64> = vec![center];
    let mut used_colors = 0u64;
    let mut legs_out: Vec<Vec<(u64, u64)>> = Vec::with_capacity(legs);
    for leg_no in 0..legs {
        let mut leg = Vec::with_capacity(leg_len);
        let mut side = center_side;
        let mut idx = center_idx;
        for step in 0..leg_len {
            let neighbors: &[u32] = match side {
                Side::Lower => &b.adj_lower[idx],
                Side::Upper => &b.adj_upper[idx],
            };
            let mut chosen = None;
            for &nb in neighbors {
                let nb = nb as usize;
                let (mask, color_set) = match side {
                    Side::Lower => (b.upper[nb], b.color_set(idx, nb)),
                    Side::Upper => (b.lower[nb], b.color_set(nb, idx)),
                };
                if used_masks.contains(&mask) {
                    continue;
                }
                if discipline.admits(color_set, used_colors) {
                    chosen = Some((nb, mask, color_set));
                    break;
                }
            }
            let (nb, mask, color_set) = chosen.ok_or(EmbedError::Stuck {
                completed_legs: leg_no,
                partial_steps: step,
            })?;
            used_masks.push(mask);
            used_colors |= color_set;
            leg.push((mask, color_set));
            idx = nb;
            side = match side {
                Side::Lower => Side::Upper,
                Side::Upper => Side::Lower,
            };
        }
        legs_out.push(leg);
    }
    let spider = SpiderEmbedding {
        n: b.n,
        j: b.j,
        center,
        center_side,
        legs: legs_out,
        discipline,
        used_colors,
    };
    let emb = spider.to_copy_embedding();
    if !emb.validate() {
        return Err(EmbedError::NotStrongCopy(format!(
            "greedy spider with {legs} legs of length {leg_len}"
        )));
    }
    Ok(spider)
}

/// Completes a spider S^{k-2, l} (l >= 2) to a strong copy of the fence
/// P_{2k-1}: finds leaves a < b and an element y of the spider intersection
/// G with in-family subsets G^a ⊆ F^a \ {y}, G^b ⊆ F^b \ {y} that keep the
/// leaf edge's marked element (full-disjoint discipline) or most of the
/// leaf color set (fraction discipline). The side condition that no middle
/// minimal image lies inside G^a ∪ G^b is audited directly.
pub fn complete_p2km1(
    spider: &SpiderEmbedding,
    family: &SetFamily,
    k: usize,
) -> Result<CopyEmbedding, EmbedError> {
    if k != spider.leg_len() + 2 {
        return Err(EmbedError::BadParams(format!(
            "k = {k} does not match spider leg length {} + 2",
            spider.leg_len()
        )));
    }
    if spider.legs.len() < 2 {
        return Err(EmbedError::NoPairFound);
    }
    let j = spider.j;
    let intersection = spider.all_masks().iter().fold(u64::MAX, |acc, &m| acc & m);
    let leaves = spider.leaf_masks();
    let leaf_colors = spider.leaf_color_sets();
    let marked: Vec<u64> = leaf_colors.iter().map(|&c| c & c.wrapping_neg()).collect();
    let spider_masks = spider.all_masks();

    let candidates = |leaf: u64, color: u64, mark: u64, y_bit: u64| -> Vec<u64> {
        let want = leaf.count_ones() - j;
        family
            .members()
            .iter()
            .copied()
            .filter(|&g| {
                if g.count_ones() != want || g & !leaf != 0 || g & y_bit != 0 {
                    return false;
                }
                if spider_masks.contains(&g) {
                    return false;
                }
                match spider.discipline {
                    Discipline::FullDisjoint => g & mark != 0,
                    Discipline::Fraction { j, k } => {
                        // The removal F^a \ g may take at most j/k of the
                        // leaf edge's color set.
                        ((leaf & !g) & color).count_ones() * k <= j
                    }
                }
            })
            .collect()
    };

    for a in 0..leaves.len() {
        for b in a + 1..leaves.len() {
            let mut y_bits = intersection;
            while y_bits != 0 {
                let y = y_bits & y_bits.wrapping_neg();
                y_bits ^= y;
                for &ga in &candidates(leaves[a], leaf_colors[a], marked[a], y) {
                    for &gb in &candidates(leaves[b], leaf_colors[b], marked[b], y) {
                        if ga == gb {
                            continue;
                        }
                        if let Some(emb) = assemble_fence(spider, a, b, ga, gb, k) {
                            return Ok(emb);
                        }
                    }
                }
            }
        }
    }
    Err(EmbedError::NoPairFound)
}

/// Lays out G^a, leg a (leaf to center), the center, leg b (center to
/// leaf), G^b along the fence path and validates the strong copy plus the
/// crown-side condition.
fn assemble_fence(
    spider: &SpiderEmbedding,
    a: usize,
    b: usize,
    ga: u64,
    gb: u64,
    k: usize,
) -> Option<CopyEmbedding> {
    let mut path = vec![ga];
    for &(m, _) in spider.legs[a].iter().rev() {
        path.push(m);
    }
    path.push(spider.center);
    for &(m, _) in spider.legs[b].iter() {
        path.push(m);
    }
    path.push(gb);
    debug_assert_eq!(path.len(), 2 * k - 1);
    // Fence path order alternates a_1, b_1, a_2, …, b_{k-1}, a_k; catalog
    // order is a_1..a_k then b_1..b_{k-1}.
    let poset = catalog(&CatalogId::PathPoset(k)).unwrap();
    let mut images = vec![0u64; 2 * k - 1];
    for (pos, &mask) in path.iter().enumerate() {
        if pos % 2 == 0 {
            images[pos / 2] = mask;
        } else {
            images[k + pos / 2] = mask;
        }
    }
    let emb = CopyEmbedding { poset, ground: spider.n, images, mode: Mode::Strong };
    if !emb.validate() {
        return None;
    }
    // Side condition: no middle minimal image inside the union of the end
    // minimal images.
    let ends = emb.images[0] | emb.images[k - 1];
    for i in 1..k - 1 {
        if emb.images[i] & !ends == 0 {
            return None;
        }
    }
    Some(emb)
}

/// Completes a fence copy to a strong crown copy: the missing maximal
/// element is `[n]` minus one point per middle minimal image (a point chosen
/// outside the union of the end images), verified as a strong O_{2k} copy.
pub fn complete_crown(fence: &CopyEmbedding, n: u32) -> Result<CopyEmbedding, EmbedError> {
    let size = fence.poset.size();
    if size < 5 || size.is_multiple_of(2) {
        return Err(EmbedError::BadParams(format!("fence must have 2k-1 >= 5 elements, got {size}")));
    }
    let k = size.div_ceil(2);
    let expected = catalog(&CatalogId::PathPoset(k)).unwrap();
    if fence.poset != expected {
        return Err(EmbedError::BadParams("embedding is not a fence P_{2k-1}".into()));
    }
    let ends = fence.images[0] | fence.images[k - 1];
    let mut removed = 0u64;
    for i in 1..k - 1 {
        let outside = fence.images[i] & !ends;
        if outside == 0 {
            return Err(EmbedError::PreconditionViolated(format!(
                "middle image a_{} lies inside the union of the end images",
                i + 1
            )));
        }
        removed |= outside & outside.wrapping_neg();
    }
    let bk = full_mask(n) & !removed;
    let band = BandSpec::plain(n as u64);
    let wanted = n as f64 / 2.0 + band.half_width() / band.scale as f64 * 2.0;
    // |B_k| = n - (k - 2) is the largest set avoiding the marked points;
    // the n/2 + 2 sqrt(n ln n) size target is honored whenever achievable.
    debug_assert!(bk.count_ones() as f64 >= wanted.min(n as f64 - (k as f64 - 2.0)));
    let crown = catalog(&CatalogId::Crown(k)).unwrap();
    let mut images = Vec::with_capacity(2 * k);
    images.extend_from_slice(&fence.images[..k]); // a_1 .. a_k
    images.extend_from_slice(&fence.images[k..]); // b_1 .. b_{k-1}
    images.push(bk);
    let emb = CopyEmbedding { poset: crown, ground: n, images, mode: Mode::Strong };
    if !emb.validate() {
        return Err(EmbedError::Infeasible(
            "crown completion failed verification despite the side condition".into(),
        ));
    }
    Ok(emb)
}

/// Result of the pivot-reversal transform.
#[derive(Debug, Clone)]
pub struct PivotTransform {
    pub poset: Poset,
    pub pivot: usize,
    /// Fresh chain elements appended below the pivot, in ascending order.
    pub added: Vec<usize>,
    /// True for heights <= 2, where the added chain is empty and the
    /// height postcondition degenerates.
    pub degenerate: bool,
}

/// Reverses every Hasse arc into the maximal pivot `m` and hangs a fresh
/// chain of k-2 elements below it (k + 1 = height of `t`). Requires every
/// maximum-length chain to pass through `m`. Postconditions (checked):
/// the result has height k, and removing the pivot and the fresh chain
/// recovers `t` minus the pivot.
pub fn t0_transform(t: &Poset, m: usize) -> Result<PivotTransform, EmbedError> {
    if m >= t.size() {
        return Err(EmbedError::BadPivot(format!("element {m} out of range")));
    }
    if t.up_set(m) != 0 {
        return Err(EmbedError::BadPivot(format!("element {m} is not maximal")));
    }
    let h = t.height();
    for chain in t.maximal_chains() {
        if chain.len() == h && !chain.contains(&m) {
            return Err(EmbedError::BadPivot(format!(
                "a maximum-length chain avoids the pivot {m}"
            )));
        }
    }
    let k = h - 1;
    let degenerate = k < 2;
    let extra = k.saturating_sub(2);
    let size = t.size() + extra;
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    for (p, q) in t.hasse().arcs {
        if q == m {
            arcs.push((q, p));
        } else {
            arcs.push((p, q));
        }
    }
    let added: Vec<usize> = (t.size()..size).collect();
    let mut prev: Option<usize> = None;
    for &v in &added {
        if let Some(p) = prev {
            arcs.push((p, v));
        }
        prev = Some(v);
    }
    if let Some(last) = prev {
        arcs.push((last, m));
    }
    let mut labels: Vec<String> = (0..t.size()).map(|i| t.label(i)).collect();
    labels.extend((1..=extra).map(|i| format!("v{i}")));
    let poset = Poset::transitive_closure(&arcs, size)?.with_labels(labels);
    if !degenerate && poset.height() != k {
        return Err(EmbedError::Infeasible(format!(
            "transform produced height {} instead of {k}",
            poset.height()
        )));
    }
    // Removing the pivot and fresh chain must recover t minus the pivot.
    let mut drop = vec![m];
    drop.extend_from_slice(&added);
    if poset.without(&drop) != t.without(&[m]) {
        return Err(EmbedError::Infeasible(
            "transform does not restrict back to the original poset".into(),
        ));
    }
    Ok(PivotTransform { poset, pivot: m, added, degenerate })
}

/// A family of obstacle sets with the side it obstructs.
#[derive(Debug, Clone)]
pub struct WitnessFamily {
    pub sets: SetFamily,
    pub side: Side,
}

/// The forbidden neighborhood below `g`: proper subsets of `g` that are
/// comparable to some witness set, restricted to the plain band. Requires
/// no witness set to contain `g`.
pub fn forbidden_down(
    g: SubsetMask,
    witness: &SetFamily,
    band: &BandSpec,
) -> Result<SetFamily, EmbedError> {
    if g.ground > 18 {
        return Err(EmbedError::TooLarge("forbidden neighborhoods capped at n = 18".into()));
    }
    if witness.members().iter().any(|&w| g.bits & !w == 0) {
        return Err(EmbedError::PreconditionViolated(
            "a witness set contains G (U(G) meets S)".into(),
        ));
    }
    let mut out = Vec::new();
    // All proper submasks of g, including the empty set.
    let mut sub = (g.bits.wrapping_sub(1)) & g.bits;
    loop {
        if related_to_any(sub, witness) && band.contains_size(sub.count_ones() as u64) {
            out.push(sub);
        }
        if sub == 0 {
            break;
        }
        sub = (sub.wrapping_sub(1)) & g.bits;
    }
    Ok(SetFamily::new(g.ground, out))
}

/// The forbidden neighborhood above `g`: proper supersets of `g` that are
/// comparable to some witness set, restricted to the plain band. Requires
/// no witness set to lie inside `g`.
pub fn forbidden_up(
    g: SubsetMask,
    witness: &SetFamily,
    band: &BandSpec,
) -> Result<SetFamily, EmbedError> {
    if g.ground > 18 {
        return Err(EmbedError::TooLarge("forbidden neighborhoods capped at n = 18".into()));
    }
    if witness.members().iter().any(|&w| w & !g.bits == 0) {
        return Err(EmbedError::PreconditionViolated(
            "a witness set lies inside G (D(G) meets S)".into(),
        ));
    }
    let free = full_mask(g.ground) & !g.bits;
    let mut out = Vec::new();
    let mut add = (free.wrapping_sub(1)) & free;
    loop {
        if add != free || free == 0 {
            // skip nothing; enumerate every submask of `free`
        }
        let sup = g.bits | add;
        if sup != g.bits
            && related_to_any(sup, witness)
            && band.contains_size(sup.count_ones() as u64)
        {
            out.push(sup);
        }
        if add == 0 {
            break;
        }
        add = (add.wrapping_sub(1)) & free;
    }
    // The enumeration above misses the full `free` mask itself.
    let sup = g.bits | free;
    if free != 0
        && sup != g.bits
        && related_to_any(sup, witness)
        && band.contains_size(sup.count_ones() as u64)
        && !out.contains(&sup)
    {
        out.push(sup);
    }
    Ok(SetFamily::new(g.ground, out))
}

fn related_to_any(mask: u64, family: &SetFamily) -> bool {
    family
        .members()
        .iter()
        .any(|&w| mask & !w == 0 || w & !mask == 0)
}

/// A maximal chain of the cube together with k marker sets from a family
/// on it. The chain is stored as its n+1 masks in ascending order; markers
/// ascend by size, so the d-th marker from the top is `markers[k - d]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedChain {
    pub chain: Vec<u64>,
    pub markers: Vec<u64>,
}

impl MarkedChain {
    pub fn marker_from_top(&self, d: usize) -> Option<u64> {
        let k = self.markers.len();
        if d == 0 || d > k {
            return None;
        }
        Some(self.markers[k - d])
    }
}

/// Enumerates every k-marked chain with markers in `family`. All n! chains
/// are generated, so this is capped at n = 8.
pub fn marked_chains(family: &SetFamily, k: usize) -> Result<Vec<MarkedChain>, EmbedError> {
    let n = family.ground();
    if n > 8 {
        return Err(EmbedError::TooLarge("chain enumeration capped at n = 8".into()));
    }
    let mut order: Vec<u32> = (0..n).collect();
    let mut chains: Vec<Vec<u64>> = Vec::new();
    permute_chains(&mut order, 0, &mut chains);
    let mut out = Vec::new();
    for chain in chains {
        let on_chain: Vec<u64> =
            chain.iter().copied().filter(|&m| family.contains(m)).collect();
        if on_chain.len() < k {
            continue;
        }
        let mut combo = vec![0usize; k];
        combos(&on_chain, k, 0, &mut combo, 0, &mut |markers| {
            out.push(MarkedChain { chain: chain.clone(), markers: markers.to_vec() });
        });
    }
    Ok(out)
}

fn permute_chains(order: &mut Vec<u32>, fixed: usize, out: &mut Vec<Vec<u64>>) {
    let n = order.len();
    if fixed == n {
        let mut chain = Vec::with_capacity(n + 1);
        let mut mask = 0u64;
        chain.push(mask);
        for &b in order.iter() {
            mask |= 1 << b;
            chain.push(mask);
        }
        out.push(chain);
        return;
    }
    for i in fixed..n {
        order.swap(fixed, i);
        permute_chains(order, fixed + 1, out);
        order.swap(fixed, i);
    }
}

fn combos(
    items: &[u64],
    k: usize,
    start: usize,
    idx: &mut Vec<usize>,
    depth: usize,
    emit: &mut impl FnMut(&[u64]),
) {
    if depth == k {
        let pick: Vec<u64> = idx.iter().map(|&i| items[i]).collect();
        emit(&pick);
        return;
    }
    for i in start..items.len() {
        idx[depth] = i;
        combos(items, k, i + 1, idx, depth + 1, emit);
    }
}

/// The sub-collection of marked chains on which `g` is the d-th marker
/// from the top.
pub fn l_of(chains: &[MarkedChain], g: u64, d: usize) -> Vec<&MarkedChain> {
    chains
        .iter()
        .filter(|mc| mc.marker_from_top(d) == Some(g))
        .collect()
}

/// Searches the pool for a witness family S (|S| <= t_size, side
/// precondition satisfied) such that every marked chain in L(g, d) has a
/// marker inside the forbidden neighborhood of g relative to S. Returns
/// the first such S in pool order, or None; a set with empty L(g, d) is
/// never bad.
pub fn is_bad(
    g: SubsetMask,
    d: usize,
    chains: &[MarkedChain],
    t_size: usize,
    side: Side,
    pool: &SetFamily,
) -> Result<Option<WitnessFamily>, EmbedError> {
    let lgd = l_of(chains, g.bits, d);
    if lgd.is_empty() {
        return Ok(None);
    }
    let wide = BandSpec::poset_scaled(g.ground as u64, t_size);
    assert!(
        pool.members().iter().all(|&m| wide.contains_size(m.count_ones() as u64)),
        "witness pool must live in the poset-widened band"
    );
    let band = BandSpec::plain(g.ground as u64);
    let members = pool.members();
    let mut found: Option<WitnessFamily> = None;
    for size in 1..=t_size.min(members.len()) {
        let mut idx = vec![0usize; size];
        let mut stop = false;
        combos(members, size, 0, &mut idx, 0, &mut |pick| {
            if stop || found.is_some() {
                return;
            }
            let s = SetFamily::new(g.ground, pick.to_vec());
            let forb = match side {
                Side::Lower => forbidden_down(g, &s, &band),
                Side::Upper => forbidden_up(g, &s, &band),
            };
            let forb = match forb {
                Ok(f) => f,
                Err(_) => return, // side precondition failed: not a witness
            };
            let blocks_all = lgd
                .iter()
                .all(|mc| mc.markers.iter().any(|&q| forb.contains(q)));
            if blocks_all {
                found = Some(WitnessFamily { sets: s, side });
                stop = true;
            }
        });
        if found.is_some() {
            break;
        }
    }
    Ok(found)
}

/// A marked chain is good when none of its markers is lower- or upper-bad
/// at its own depth relative to the collection.
pub fn is_good(
    mc: &MarkedChain,
    chains: &[MarkedChain],
    t_size: usize,
    pool: &SetFamily,
    ground: u32,
) -> Result<bool, EmbedError> {
    let k = mc.markers.len();
    for d in 1..=k {
        let g = SubsetMask::new(mc.marker_from_top(d).unwrap(), ground);
        if is_bad(g, d, chains, t_size, Side::Lower, pool)?.is_some() {
            return Ok(false);
        }
        if is_bad(g, d, chains, t_size, Side::Upper, pool)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exhaustive check of the extension property of good marked chains: for
/// every good (C, Q) in the collection, every marker G at depth d, and
/// every admissible witness family S from the pool, some member of
/// L(G, d) has all its markers outside the forbidden neighborhood of G
/// relative to S.
#[derive(Debug, Clone, Default)]
pub struct GoodExtensionReport {
    pub good_chains: usize,
    pub admissible_cases: usize,
    pub violations: Vec<String>,
}

pub fn check_good_extension(
    chains: &[MarkedChain],
    t_size: usize,
    pool: &SetFamily,
    ground: u32,
) -> Result<GoodExtensionReport, EmbedError> {
    let band = BandSpec::plain(ground as u64);
    let mut report = GoodExtensionReport::default();
    for mc in chains {
        if !is_good(mc, chains, t_size, pool, ground)? {
            continue;
        }
        report.good_chains += 1;
        let k = mc.markers.len();
        for d in 1..=k {
            let g = SubsetMask::new(mc.marker_from_top(d).unwrap(), ground);
            let lgd = l_of(chains, g.bits, d);
            for side in [Side::Lower, Side::Upper] {
                let members = pool.members();
                for size in 1..=t_size.min(members.len()) {
                    let mut idx = vec![0usize; size];
                    combos(members, size, 0, &mut idx, 0, &mut |pick| {
                        let s = SetFamily::new(ground, pick.to_vec());
                        let forb = match side {
                            Side::Lower => forbidden_down(g, &s, &band),
                            Side::Upper => forbidden_up(g, &s, &band),
                        };
                        let forb = match forb {
                            Ok(f) => f,
                            Err(_) => return,
                        };
                        report.admissible_cases += 1;
                        let extendable = lgd
                            .iter()
                            .any(|mc2| mc2.markers.iter().all(|&q| !forb.contains(q)));
                        if !extendable {
                            report.violations.push(format!(
                                "good chain blocked: G = {:#x}, d = {d}, side {side:?}, S = {:x?}",
                                g.bits,
                                s.members()
                            ));
                        }
                    });
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{layer, middle_layers};

    #[test]
    fn bigraph_cube_to_top_layer() {
        let family = SetFamily::full_cube(4);
        let upper = layer(4, 3).unwrap();
        let b = build_bigraph(&family, &upper, 1);
        assert_eq!(b.edge_count(), 12);
    }

    #[test]
    fn bigraph_j0_has_self_loops() {
        let family = SetFamily::full_cube(2);
        let upper = layer(2, 1).unwrap();
        let b = build_bigraph(&family, &upper, 0);
        assert_eq!(b.edge_count(), 2);
        for ui in 0..b.upper.len() {
            assert_eq!(b.adj_upper[ui].len(), 1);
            assert_eq!(b.lower[b.adj_upper[ui][0] as usize], b.upper[ui]);
        }
    }

    #[test]
    fn bigraph_edge_count_matches_double_loop() {
        let family = middle_layers(6, 2).unwrap();
        let upper = layer(6, 4).unwrap();
        let b = build_bigraph(&family, &upper, 1);
        let mut direct = 0;
        for &u in upper.members() {
            for &l in family.members() {
                if l & !u == 0 && l.count_ones() + 1 == u.count_ones() {
                    direct += 1;
                }
            }
        }
        assert_eq!(b.edge_count(), direct);
    }

    #[test]
    fn peeling_a_star_to_empty() {
        // Star: one 3-set over its three 2-subsets; threshold 2 kills the
        // leaves, then the center.
        let n = 3;
        let family = SetFamily::new(n, vec![0b011, 0b101, 0b110, 0b111]);
        let upper = SetFamily::new(n, vec![0b111]);
        let b = build_bigraph(&family, &upper, 1);
        assert_eq!(b.edge_count(), 3);
        let core = min_degree_subgraph(&b, 2);
        assert_eq!(core.edge_count(), 0);
        assert!(core.upper.is_empty());
    }

    #[test]
    fn peeling_keeps_only_real_lower_vertices() {
        // Upper sets that nest at gap j must not leak into the lower part
        // of the core.
        let n = 4;
        let family = SetFamily::new(n, vec![0b0001, 0b0011, 0b0111]);
        let upper = SetFamily::new(n, vec![0b0011, 0b0111]);
        let b = build_bigraph(&family, &upper, 1);
        let core = min_degree_subgraph(&b, 1);
        for &l in &core.lower {
            assert!(family.contains(l));
        }
        // 0b0011 appears as an upper vertex and as a lower vertex only
        // because the input family put it there.
        assert!(core.lower.contains(&0b0011));
        assert!(core.min_degree() >= 1);
    }

    #[test]
    fn complete_bigraph_survives_peeling() {
        // All 1-sets under all 2-sets of [4]: every lower vertex has degree
        // 3, every upper degree 2.
        let family = SetFamily::new(4, {
            let mut m = layer(4, 1).unwrap().members().to_vec();
            m.extend_from_slice(layer(4, 2).unwrap().members());
            m
        });
        let upper = layer(4, 2).unwrap();
        let b = build_bigraph(&family, &upper, 1);
        let core = min_degree_subgraph(&b, 2);
        assert_eq!(core.edge_count(), b.edge_count());
        assert!(core.min_degree() >= 2);
    }

    #[test]
    fn random_bigraph_core_has_min_degree() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let lower: Vec<u64> = layer(10, 4).unwrap().members().to_vec();
        let upper: Vec<u64> = layer(10, 5)
            .unwrap()
            .members()
            .iter()
            .copied()
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        let mut members = lower.clone();
        members.extend_from_slice(&upper);
        let b = build_bigraph(&SetFamily::new(10, members), &SetFamily::new(10, upper), 1);
        let d = (b.average_degree() / 2.0).floor().max(1.0) as usize;
        let core = min_degree_subgraph(&b, d);
        assert!(!core.upper.is_empty());
        assert!(core.min_degree() >= d);
    }

    #[test]
    fn spider_single_leg_is_a_path() {
        let family = SetFamily::full_cube(3);
        let upper = layer(3, 2).unwrap();
        let b = build_bigraph(&family, &upper, 1);
        let s = greedy_spider(&b, 1, 1, Discipline::FullDisjoint, Side::Lower).unwrap();
        assert_eq!(s.legs.len(), 1);
        assert!(s.to_copy_embedding().validate());
    }

    #[test]
    fn spider_in_two_middle_layers_of_b12() {
        let family = middle_layers(12, 2).unwrap();
        let upper = layer(12, 7).unwrap();
        let b = build_bigraph(&family, &upper, 1);
        let s = greedy_spider(&b, 3, 2, Discipline::FullDisjoint, Side::Upper).unwrap();
        assert_eq!(s.legs.len(), 3);
        assert_eq!(s.leg_len(), 2);
        let emb = s.to_copy_embedding();
        assert!(emb.validate());
        // Case I: pairwise disjoint edge color sets, audited bitwise.
        let mut colors: Vec<u64> = Vec::new();
        for leg in &s.legs {
            for &(_, c) in leg {
                colors.push(c);
            }
        }
        for (i, &a) in colors.iter().enumerate() {
            for &b in &colors[i + 1..] {
                assert_eq!(a & b, 0);
            }
        }
    }

    #[test]
    fn spider_stuck_on_single_edge() {
        let family = SetFamily::new(3, vec![0b001, 0b011]);
        let upper = SetFamily::new(3, vec![0b011]);
        let b = build_bigraph(&family, &upper, 1);
        let err = greedy_spider(&b, 2, 1, Discipline::FullDisjoint, Side::Lower).unwrap_err();
        assert!(matches!(err, EmbedError::Stuck { completed_legs: 1, .. }));
    }

    #[test]
    fn spider_rejects_wrong_center_side() {
        let family = SetFamily::full_cube(3);
        let upper = layer(3, 2).unwrap();
        let b = build_bigraph(&family, &upper, 1);
        assert!(matches!(
            greedy_spider(&b, 1, 1, Discipline::FullDisjoint, Side::Upper),
            Err(EmbedError::BadParams(_))
        ));
    }

    #[test]
    fn fence_from_spider_at_n12() {
        let family = middle_layers(12, 2).unwrap();
        let upper = layer(12, 7).unwrap();
        let b = build_bigraph(&family, &upper, 1);
        let s = greedy_spider(&b, 3, 1, Discipline::FullDisjoint, Side::Lower).unwrap();
        let fence = complete_p2km1(&s, &family, 3).unwrap();
        assert!(fence.validate());
        let ends = fence.images[0] | fence.images[2];
        assert!(fence.images[1] & !ends != 0);
    }

    #[test]
    fn fence_needs_two_legs() {
        let family = middle_layers(6, 2).unwrap();
        let upper = layer(6, 4).unwrap();
        let b = build_bigraph(&family, &upper, 1);
        let s = greedy_spider(&b, 1, 1, Discipline::FullDisjoint, Side::Lower).unwrap();
        assert!(matches!(complete_p2km1(&s, &family, 3), Err(EmbedError::NoPairFound)));
    }

    #[test]
    fn fence_finds_the_unique_triple() {
        // Hand-built fixture: only y = bit 2 admits in-family subsets of
        // both leaves that keep the marked elements.
        let n = 6;
        let center = 0b000111u64;
        let leaf1 = 0b001111u64;
        let leaf2 = 0b010111u64;
        let g1 = 0b001011u64;
        let g2 = 0b010011u64;
        let family = SetFamily::new(n, vec![center, leaf1, leaf2, g1, g2]);
        let spider = SpiderEmbedding {
            n,
            j: 1,
            center,
            center_side: Side::Lower,
            legs: vec![vec![(leaf1, leaf1 & !center)], vec![(leaf2, leaf2 & !center)]],
            discipline: Discipline::FullDisjoint,
            used_colors: (leaf1 & !center) | (leaf2 & !center),
        };
        assert!(spider.to_copy_embedding().validate());
        let fence = complete_p2km1(&spider, &family, 3).unwrap();
        assert_eq!(fence.images, vec![g1, center, g2, leaf1, leaf2]);
    }

    #[test]
    fn crown_completion_at_n12() {
        let family = middle_layers(12, 2).unwrap();
        let upper = layer(12, 7).unwrap();
        let b = build_bigraph(&family, &upper, 1);
        let s = greedy_spider(&b, 3, 1, Discipline::FullDisjoint, Side::Lower).unwrap();
        let fence = complete_p2km1(&s, &family, 3).unwrap();
        let crown = complete_crown(&fence, 12).unwrap();
        assert!(crown.validate());
        // b_3 is the full set minus one point per middle minimal image.
        assert_eq!(crown.images[5].count_ones(), 12 - 1);
    }

    #[test]
    fn crown_rejects_violated_precondition() {
        // Fence with a_2 inside a_1 ∪ a_3.
        let poset = catalog(&CatalogId::PathPoset(3)).unwrap();
        let fence = CopyEmbedding {
            poset,
            ground: 4,
            images: vec![0b0001, 0b0011, 0b0010, 0b0111, 0b1011],
            mode: Mode::Strong,
        };
        assert!(matches!(
            complete_crown(&fence, 4),
            Err(EmbedError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn pivot_transform_on_chain() {
        // C_4 with the top as pivot: reversing the top arc and hanging a
        // k-2 chain gives a height-3 poset restricting back to C_3.
        let c4 = catalog(&CatalogId::Chain(4)).unwrap();
        let t0 = t0_transform(&c4, 3).unwrap();
        assert!(!t0.degenerate);
        assert_eq!(t0.poset.height(), 3);
        assert_eq!(t0.added.len(), 1);
        let mut drop = vec![3];
        drop.extend_from_slice(&t0.added);
        assert_eq!(t0.poset.without(&drop), c4.without(&[3]));
    }

    #[test]
    fn pivot_transform_rejects_avoidable_pivot() {
        // In the X tree, the height-3 chains through b_2 avoid b_1.
        let x = catalog(&CatalogId::XPoset).unwrap();
        assert!(matches!(t0_transform(&x, 3), Err(EmbedError::BadPivot(_))));
        // Non-maximal pivot.
        assert!(matches!(t0_transform(&x, 0), Err(EmbedError::BadPivot(_))));
    }

    #[test]
    fn pivot_transform_degenerate_broom() {
        let broom = catalog(&CatalogId::Broom(2)).unwrap();
        let t0 = t0_transform(&broom, 2).unwrap();
        assert!(t0.degenerate);
        assert!(t0.added.is_empty());
        // Arcs reversed: the old top now sits below both old minimals.
        assert!(t0.poset.less(2, 0) && t0.poset.less(2, 1));
    }

    #[test]
    fn forbidden_empty_witness() {
        let band = BandSpec::plain(6);
        let g = SubsetMask::new(0b000111, 6);
        let empty = SetFamily::empty(6);
        assert!(forbidden_down(g, &empty, &band).unwrap().is_empty());
        assert!(forbidden_up(g, &empty, &band).unwrap().is_empty());
    }

    #[test]
    fn forbidden_down_is_subsets_of_intersection() {
        // Witness = one incomparable 3-set: the forbidden sets below G are
        // exactly the subsets of G ∩ W (the band is trivial at n = 6).
        let band = BandSpec::plain(6);
        let g = SubsetMask::new(0b000111, 6);
        let w = SetFamily::new(6, vec![0b011100]);
        let forb = forbidden_down(g, &w, &band).unwrap();
        let both = 0b000111u64 & 0b011100;
        let mut expect: Vec<u64> = vec![0, both];
        assert_eq!(both.count_ones(), 1);
        expect.sort_unstable();
        expect.dedup();
        assert_eq!(forb.members(), &expect[..]);
    }

    #[test]
    fn forbidden_up_down_complement_symmetry() {
        let n = 6;
        let band = BandSpec::plain(n as u64);
        let g = SubsetMask::new(0b001011, n);
        let w = SetFamily::new(n, vec![0b110100, 0b000001]);
        if let Ok(down) = forbidden_down(g, &w, &band) {
            let gc = SubsetMask::new(full_mask(n) & !g.bits, n);
            let up = forbidden_up(gc, &w.complemented(), &band).unwrap();
            assert_eq!(down.complemented(), up);
        }
    }

    #[test]
    fn marked_chain_counts() {
        let family = SetFamily::full_cube(3);
        let chains = marked_chains(&family, 2).unwrap();
        assert_eq!(chains.len(), 36); // 6 chains x C(4,2) marker pairs
        // A family covering one full maximal chain: with k = |F|, only the
        // single chain through all of F qualifies.
        let one_chain = SetFamily::new(3, vec![0b000, 0b001, 0b011, 0b111]);
        let chains = marked_chains(&one_chain, 4).unwrap();
        assert_eq!(chains.len(), 1);
        assert_eq!(chains[0].markers.len(), 4);
        assert_eq!(chains[0].chain, vec![0b000, 0b001, 0b011, 0b111]);
    }

    #[test]
    fn l_of_depth_out_of_range_is_empty() {
        let family = SetFamily::full_cube(3);
        let chains = marked_chains(&family, 2).unwrap();
        assert!(l_of(&chains, 0b001, 3).is_empty());
        assert!(!l_of(&chains, 0b001, 2).is_empty());
    }

    #[test]
    fn badness_fixture() {
        // Family on one maximal chain of B_5 with markers {1}, {1,2}; a
        // single blocking set below G = {1,2} makes G lower-bad at depth 1.
        let n = 5;
        let family = SetFamily::new(n, vec![0b00001, 0b00011]);
        let chains = marked_chains(&family, 2).unwrap();
        let g = SubsetMask::new(0b00011, n);
        let pool = SetFamily::new(n, vec![0b00001]);
        let witness = is_bad(g, 1, &chains, 2, Side::Lower, &pool).unwrap().unwrap();
        assert_eq!(witness.side, Side::Lower);
        assert_eq!(witness.sets.members(), &[0b00001]);
        // Depth with empty L(G, d) is never bad.
        assert!(is_bad(g, 2, &chains, 2, Side::Lower, &pool).unwrap().is_none());
    }

    #[test]
    fn good_extension_smoke() {
        let n = 5;
        let mut members = layer(n, 2).unwrap().members().to_vec();
        members.extend_from_slice(layer(n, 3).unwrap().members());
        let family = SetFamily::new(n, members);
        let chains = marked_chains(&family, 2).unwrap();
        let pool = SetFamily::new(n, vec![0b11000, 0b10100]);
        let report = check_good_extension(&chains, 2, &pool, n).unwrap();
        assert!(report.violations.is_empty(), "{:?}", report.violations);
    }
}
