//! Finite strict partial orders, their structural decompositions, and the
//! catalog of named posets (chains, antichains, forks, brooms, diamond,
//! butterfly, crowns, fences, spiders, Boolean cubes, the X tree).
//!
//! Elements are `0..size`. The strict order is stored as a dense bit matrix
//! (one `u64` row per element), which caps sizes at 64 elements; everything
//! in this crate stays well below that.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PosetError {
    #[error("relation pairs close into a cycle")]
    CycleDetected,
    #[error("poset must have at least two elements")]
    EmptyPoset,
    #[error("not a tree poset: Hasse diagram is not a tree")]
    NotTreePoset,
    #[error("poset is not k-saturated: {0}")]
    NotSaturated(String),
    #[error("bad catalog parameters: {0}")]
    BadParams(String),
    #[error("elements are not connected in the comparability graph")]
    Disconnected,
    #[error("element out of range: {0}")]
    BadElement(usize),
}

/// A finite strict partial order on elements `0..size`.
///
/// Invariants (enforced by constructors): irreflexive, antisymmetric,
/// transitively closed.
#[derive(Debug, Clone)]
pub struct Poset {
    size: usize,
    /// `above[i]` has bit `j` set iff `i < j` in the order.
    above: Vec<u64>,
    /// `below[i]` has bit `j` set iff `j < i`; transpose of `above`.
    below: Vec<u64>,
    labels: Option<Vec<String>>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.above == other.above
    }
}
impl Eq for Poset {}

/// Cover relation of a poset: `(p, q)` is an arc iff `q` covers `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HasseDiagram {
    pub size: usize,
    pub arcs: Vec<(usize, usize)>,
}

impl Poset {
    /// Builds the transitive closure of the given strict relation pairs.
    pub fn transitive_closure(pairs: &[(usize, usize)], size: usize) -> Result<Poset, PosetError> {
        assert!(size <= 64, "posets are capped at 64 elements");
        let mut above = vec![0u64; size];
        for &(p, q) in pairs {
            if p >= size || q >= size {
                return Err(PosetError::BadElement(p.max(q)));
            }
            above[p] |= 1 << q;
        }
        // Warshall closure.
        for k in 0..size {
            for i in 0..size {
                if above[i] >> k & 1 == 1 {
                    above[i] |= above[k];
                }
            }
        }
        for (i, row) in above.iter().enumerate() {
            if row >> i & 1 == 1 {
                return Err(PosetError::CycleDetected);
            }
        }
        Ok(Poset::from_closed_rows(above, None))
    }

    fn from_closed_rows(above: Vec<u64>, labels: Option<Vec<String>>) -> Poset {
        let size = above.len();
        let mut below = vec![0u64; size];
        for (i, &row) in above.iter().enumerate() {
            for (j, col) in below.iter_mut().enumerate() {
                if row >> j & 1 == 1 {
                    *col |= 1 << i;
                }
            }
        }
        Poset { size, above, below, labels }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// True iff `p < q` strictly.
    pub fn less(&self, p: usize, q: usize) -> bool {
        self.above[p] >> q & 1 == 1
    }

    pub fn comparable(&self, p: usize, q: usize) -> bool {
        self.less(p, q) || self.less(q, p)
    }

    /// Bitmask of elements strictly above `p`.
    pub fn up_set(&self, p: usize) -> u64 {
        self.above[p]
    }

    /// Bitmask of elements strictly below `p`.
    pub fn down_set(&self, p: usize) -> u64 {
        self.below[p]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, p: usize) -> String {
        match &self.labels {
            Some(ls) => ls[p].clone(),
            None => p.to_string(),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Poset {
        assert_eq!(labels.len(), self.size);
        self.labels = Some(labels);
        self
    }

    /// The cover relation.
    pub fn hasse(&self) -> HasseDiagram {
        let mut arcs = Vec::new();
        for p in 0..self.size {
            for q in 0..self.size {
                if self.less(p, q) && self.above[p] & self.below[q] == 0 {
                    arcs.push((p, q));
                }
            }
        }
        HasseDiagram { size: self.size, arcs }
    }

    /// Number of elements in a longest chain.
    pub fn height(&self) -> usize {
        if self.size == 0 {
            return 0;
        }
        // Longest path over the canonical level structure.
        let mut h = vec![0usize; self.size];
        let order = self.linear_extension();
        for &q in &order {
            let mut best = 1;
            for (p, &hp) in h.iter().enumerate() {
                if self.less(p, q) {
                    best = best.max(hp + 1);
                }
            }
            h[q] = best;
        }
        h.into_iter().max().unwrap()
    }

    /// Elements sorted so that every element appears after everything below
    /// it; ties broken by index.
    pub fn linear_extension(&self) -> Vec<usize> {
        self.canonical_decomposition().concat()
    }

    /// (minimal elements, maximal elements).
    pub fn extremal_elements(&self) -> (Vec<usize>, Vec<usize>) {
        let minimals = (0..self.size).filter(|&i| self.below[i] == 0).collect();
        let maximals = (0..self.size).filter(|&i| self.above[i] == 0).collect();
        (minimals, maximals)
    }

    /// Level decomposition: A_1 = minimal elements, A_j = minimal elements of
    /// what remains after removing A_1..A_{j-1}. The levels partition the
    /// poset and there are exactly `height()` of them.
    pub fn canonical_decomposition(&self) -> Vec<Vec<usize>> {
        let mut removed = 0u64;
        let mut levels = Vec::new();
        while removed.count_ones() as usize != self.size {
            let mut level = Vec::new();
            for i in 0..self.size {
                if removed >> i & 1 == 0 && self.below[i] & !removed == 0 {
                    level.push(i);
                }
            }
            for &i in &level {
                removed |= 1 << i;
            }
            levels.push(level);
        }
        levels
    }

    /// The order dual: all relations reversed. Labels are preserved.
    pub fn dual(&self) -> Poset {
        Poset {
            size: self.size,
            above: self.below.clone(),
            below: self.above.clone(),
            labels: self.labels.clone(),
        }
    }

    /// Restriction of the poset to the elements NOT listed in `drop`.
    pub fn without(&self, drop: &[usize]) -> Poset {
        let keep: Vec<usize> = (0..self.size).filter(|i| !drop.contains(i)).collect();
        self.restrict(&keep)
    }

    /// Restriction to the given elements, renumbered in the given order.
    pub fn restrict(&self, keep: &[usize]) -> Poset {
        let mut above = vec![0u64; keep.len()];
        for (new_p, &p) in keep.iter().enumerate() {
            for (new_q, &q) in keep.iter().enumerate() {
                if self.less(p, q) {
                    above[new_p] |= 1 << new_q;
                }
            }
        }
        let labels = self
            .labels
            .as_ref()
            .map(|ls| keep.iter().map(|&i| ls[i].clone()).collect());
        Poset::from_closed_rows(above, labels)
    }

    /// The set `{P \ {m} : m maximal or minimal}`, deduplicated up to
    /// isomorphism, in order of first occurrence.
    pub fn p_minus(&self) -> Result<Vec<Poset>, PosetError> {
        if self.size <= 1 {
            return Err(PosetError::EmptyPoset);
        }
        let (mins, maxs) = self.extremal_elements();
        let mut removable: Vec<usize> = mins;
        for m in maxs {
            if !removable.contains(&m) {
                removable.push(m);
            }
        }
        removable.sort_unstable();
        let mut out: Vec<Poset> = Vec::new();
        for m in removable {
            let q = self.without(&[m]);
            if !out.iter().any(|p| p.is_isomorphic(&q)) {
                out.push(q);
            }
        }
        Ok(out)
    }

    /// Shortest walk length between `p` and `q` where consecutive vertices
    /// are comparable; 0 iff `p == q`.
    pub fn poset_distance(&self, p: usize, q: usize) -> Result<usize, PosetError> {
        if p >= self.size || q >= self.size {
            return Err(PosetError::BadElement(p.max(q)));
        }
        let mut dist = vec![usize::MAX; self.size];
        dist[p] = 0;
        let mut frontier = vec![p];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &v in &frontier {
                let nbrs = self.above[v] | self.below[v];
                for w in 0..self.size {
                    if nbrs >> w & 1 == 1 && dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        if dist[q] == usize::MAX {
            return Err(PosetError::Disconnected);
        }
        Ok(dist[q])
    }

    /// True iff the (undirected) Hasse diagram is a tree.
    pub fn is_tree_poset(&self) -> bool {
        self.size > 0
            && self.hasse().arcs.len() == self.size - 1
            && self.hasse_components() == 1
    }

    /// True iff the (undirected) Hasse diagram is acyclic, i.e. a forest.
    pub fn is_forest_poset(&self) -> bool {
        self.size > 0 && self.hasse().arcs.len() + self.hasse_components() == self.size
    }

    /// Number of connected components of the undirected Hasse graph.
    fn hasse_components(&self) -> usize {
        let mut adj = vec![0u64; self.size];
        for &(p, q) in &self.hasse().arcs {
            adj[p] |= 1 << q;
            adj[q] |= 1 << p;
        }
        let mut seen = 0u64;
        let mut components = 0;
        for start in 0..self.size {
            if seen >> start & 1 == 1 {
                continue;
            }
            components += 1;
            seen |= 1 << start;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for w in 0..self.size {
                    if adj[v] >> w & 1 == 1 && seen >> w & 1 == 0 {
                        seen |= 1 << w;
                        stack.push(w);
                    }
                }
            }
        }
        components
    }

    /// Enumerates all maximal chains (as element sequences from a minimal to
    /// a maximal element along covers).
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let hasse = self.hasse();
        let mut covers_up = vec![Vec::new(); self.size];
        for &(p, q) in &hasse.arcs {
            covers_up[p].push(q);
        }
        let (mins, _) = self.extremal_elements();
        let mut chains = Vec::new();
        let mut path = Vec::new();
        fn rec(
            v: usize,
            covers_up: &[Vec<usize>],
            path: &mut Vec<usize>,
            chains: &mut Vec<Vec<usize>>,
        ) {
            path.push(v);
            if covers_up[v].is_empty() {
                chains.push(path.clone());
            } else {
                for &w in &covers_up[v] {
                    rec(w, covers_up, path, chains);
                }
            }
            path.pop();
        }
        for m in mins {
            rec(m, &covers_up, &mut path, &mut chains);
        }
        chains
    }

    /// True iff the poset has height `k` and every maximal chain has exactly
    /// `k` elements.
    pub fn is_saturated(&self, k: usize) -> bool {
        self.height() == k && self.maximal_chains().iter().all(|c| c.len() == k)
    }

    /// Isomorphism test by backtracking over signature-preserving bijections.
    pub fn is_isomorphic(&self, other: &Poset) -> bool {
        if self.size != other.size {
            return false;
        }
        if self.size == 0 {
            return true;
        }
        let sig_a = self.signatures();
        let sig_b = other.signatures();
        {
            let mut sa = sig_a.clone();
            let mut sb = sig_b.clone();
            sa.sort_unstable();
            sb.sort_unstable();
            if sa != sb {
                return false;
            }
        }
        // map[i] = image of element i of self in other.
        let mut map = vec![usize::MAX; self.size];
        let mut used = 0u64;
        self.iso_rec(other, &sig_a, &sig_b, &mut map, &mut used, 0)
    }

    fn signatures(&self) -> Vec<(u32, u32, usize, usize)> {
        (0..self.size)
            .map(|i| {
                (
                    self.below[i].count_ones(),
                    self.above[i].count_ones(),
                    self.down_height(i),
                    self.up_height(i),
                )
            })
            .collect()
    }

    /// Elements in a longest chain ending at `p` (inclusive).
    pub fn down_height(&self, p: usize) -> usize {
        let mut memo = vec![0usize; self.size];
        for &q in &self.linear_extension() {
            let mut best = 1;
            for (r, &mr) in memo.iter().enumerate() {
                if self.less(r, q) {
                    best = best.max(mr + 1);
                }
            }
            memo[q] = best;
        }
        memo[p]
    }

    /// Elements in a longest chain starting at `p` (inclusive).
    pub fn up_height(&self, p: usize) -> usize {
        self.dual().down_height(p)
    }

    fn iso_rec(
        &self,
        other: &Poset,
        sig_a: &[(u32, u32, usize, usize)],
        sig_b: &[(u32, u32, usize, usize)],
        map: &mut Vec<usize>,
        used: &mut u64,
        next: usize,
    ) -> bool {
        if next == self.size {
            return true;
        }
        for cand in 0..self.size {
            if *used >> cand & 1 == 1 || sig_b[cand] != sig_a[next] {
                continue;
            }
            let ok = (0..next).all(|prev| {
                self.less(next, prev) == other.less(cand, map[prev])
                    && self.less(prev, next) == other.less(map[prev], cand)
            });
            if ok {
                map[next] = cand;
                *used |= 1 << cand;
                if self.iso_rec(other, sig_a, sig_b, map, used, next + 1) {
                    return true;
                }
                *used &= !(1 << cand);
                map[next] = usize::MAX;
            }
        }
        false
    }
}

/// Saturation of a tree (or forest) poset: extends `t` to an `h`-saturated
/// poset containing it as a strong subposet (`h = t.height()`), by the two
/// rules: a maximal element at level `j` gets a fresh chain of `h - j`
/// elements above it, and a cover arc spanning levels `i -> j` is
/// subdivided with `j - i - 1` fresh elements. Posets whose Hasse diagram
/// contains an undirected cycle are rejected.
pub fn saturate(t: &Poset) -> Result<Poset, PosetError> {
    if !t.is_forest_poset() {
        return Err(PosetError::NotTreePoset);
    }
    let h = t.height();
    let levels = t.canonical_decomposition();
    let mut level_of = vec![0usize; t.size()];
    for (j, level) in levels.iter().enumerate() {
        for &e in level {
            level_of[e] = j + 1;
        }
    }
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    let mut next = t.size();
    let mut labels: Vec<String> = (0..t.size()).map(|i| t.label(i)).collect();
    for (p, q) in t.hasse().arcs {
        let gap = level_of[q] - level_of[p];
        if gap == 1 {
            arcs.push((p, q));
        } else {
            // Subdivide with gap - 1 chain elements.
            let mut prev = p;
            for _ in 0..gap - 1 {
                labels.push(format!("aux{}", next - t.size()));
                arcs.push((prev, next));
                prev = next;
                next += 1;
            }
            arcs.push((prev, q));
        }
    }
    let (_, maxs) = t.extremal_elements();
    for q in maxs {
        let mut prev = q;
        for _ in level_of[q]..h {
            labels.push(format!("aux{}", next - t.size()));
            arcs.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    let out = Poset::transitive_closure(&arcs, next)?.with_labels(labels);
    if !out.is_saturated(h) {
        return Err(PosetError::NotSaturated(format!(
            "saturation produced a non-{h}-saturated poset"
        )));
    }
    Ok(out)
}

/// One peeling step of a k-saturated tree poset that is not a chain:
/// returns the poset with a leaf chain interval (minus its inner endpoint)
/// removed, together with the removed elements. The peeled leaf is chosen
/// among leaves maximizing poset distance to some element, lowest index
/// first.
fn peel_step(t: &Poset, k: usize) -> Result<(Poset, Vec<usize>), PosetError> {
    let hasse = t.hasse();
    let mut degree = vec![0usize; t.size()];
    let mut nbrs = vec![Vec::new(); t.size()];
    for &(p, q) in &hasse.arcs {
        degree[p] += 1;
        degree[q] += 1;
        nbrs[p].push(q);
        nbrs[q].push(p);
    }
    let leaves: Vec<usize> = (0..t.size()).filter(|&v| degree[v] == 1).collect();
    let mut best_leaf = None;
    let mut best_dist = 0;
    for &v in &leaves {
        let mut far = 0;
        for w in 0..t.size() {
            far = far.max(t.poset_distance(v, w)?);
        }
        if far > best_dist {
            best_dist = far;
            best_leaf = Some(v);
        }
    }
    let v = best_leaf.ok_or_else(|| PosetError::NotSaturated("no peelable leaf".into()))?;
    // Walk the pendant path from v while it stays a monotone chain interval.
    let downward = t.up_set(v) == 0; // v maximal => interval goes down from v
    let mut interval = vec![v];
    let mut cur = v;
    let mut prev = usize::MAX;
    loop {
        let step: Vec<usize> = nbrs[cur]
            .iter()
            .copied()
            .filter(|&w| {
                w != prev && if downward { t.less(w, cur) } else { t.less(cur, w) }
            })
            .collect();
        if step.len() != 1 {
            break;
        }
        let w = step[0];
        if degree[w] != 2 {
            interval.push(w); // w is the kept endpoint u
            break;
        }
        interval.push(w);
        prev = cur;
        cur = w;
    }
    if interval.len() < 2 {
        return Err(PosetError::NotSaturated("leaf has no interval endpoint".into()));
    }
    let removed: Vec<usize> = interval[..interval.len() - 1].to_vec();
    let rest = t.without(&removed);
    if !rest.is_saturated(k) {
        return Err(PosetError::NotSaturated(format!(
            "peeling leaf {v} broke {k}-saturation"
        )));
    }
    Ok((rest, removed))
}

/// The peeling sequence T'_0 ⊃ T'_1 ⊃ … ⊃ T'_ℓ of a k-saturated tree poset:
/// each step removes a leaf chain interval minus its inner endpoint, every
/// intermediate poset is k-saturated, and the last one is the chain C_k.
pub fn chain_interval_peel(t: &Poset) -> Result<Vec<Poset>, PosetError> {
    if !t.is_tree_poset() {
        return Err(PosetError::NotTreePoset);
    }
    let k = t.height();
    if !t.is_saturated(k) {
        return Err(PosetError::NotSaturated(format!("input is not {k}-saturated")));
    }
    let mut seq = vec![t.clone()];
    let mut cur = t.clone();
    while cur.size() > k {
        let (next, _) = peel_step(&cur, k)?;
        assert!(next.size() < cur.size());
        seq.push(next.clone());
        cur = next;
    }
    Ok(seq)
}

/// Identifier of a named poset from the catalog.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogId {
    /// Chain C_k on k elements.
    Chain(usize),
    /// Antichain A_k on k elements.
    Antichain(usize),
    /// Fork ∨_s: a < b_1, …, b_s.
    Fork(usize),
    /// Broom ∧_s: c_1, …, c_s < d.
    Broom(usize),
    /// Diamond on a < b, c < d.
    Diamond,
    /// Butterfly: a_1, a_2 < b_1, b_2 (all four relations).
    Butterfly,
    /// Crown O_{2k}: a_i, a_{i+1} < b_i cyclically.
    Crown(usize),
    /// Fence P_{2k-1}: the crown minus one maximal element.
    PathPoset(usize),
    /// Spider S^{k,ℓ}: height-2 tree, ℓ legs of length k, leaves maximal.
    Spider { leg_len: usize, legs: usize },
    /// Boolean poset B_d: subsets of `[d]` ordered by inclusion.
    Boolean(usize),
    /// The X tree: a_1, a_2 < c < b_1, b_2.
    XPoset,
}

/// Builds the named poset, with paper-style element labels.
pub fn catalog(id: &CatalogId) -> Result<Poset, PosetError> {
    use CatalogId::*;
    let bad = |msg: &str| Err(PosetError::BadParams(msg.to_string()));
    match *id {
        Chain(k) => {
            if k == 0 || k > 64 {
                return bad("chain needs 1 <= k <= 64");
            }
            let arcs: Vec<_> = (0..k.saturating_sub(1)).map(|i| (i, i + 1)).collect();
            Ok(Poset::transitive_closure(&arcs, k)?
                .with_labels((1..=k).map(|i| format!("c{i}")).collect()))
        }
        Antichain(k) => {
            if k == 0 || k > 64 {
                return bad("antichain needs 1 <= k <= 64");
            }
            Ok(Poset::transitive_closure(&[], k)?
                .with_labels((1..=k).map(|i| format!("e{i}")).collect()))
        }
        Fork(s) => {
            if s == 0 || s > 63 {
                return bad("fork needs 1 <= s <= 63");
            }
            let arcs: Vec<_> = (1..=s).map(|i| (0, i)).collect();
            let mut labels = vec!["a".to_string()];
            labels.extend((1..=s).map(|i| format!("b{i}")));
            Ok(Poset::transitive_closure(&arcs, s + 1)?.with_labels(labels))
        }
        Broom(s) => {
            if s == 0 || s > 63 {
                return bad("broom needs 1 <= s <= 63");
            }
            let arcs: Vec<_> = (0..s).map(|i| (i, s)).collect();
            let mut labels: Vec<String> = (1..=s).map(|i| format!("c{i}")).collect();
            labels.push("d".to_string());
            Ok(Poset::transitive_closure(&arcs, s + 1)?.with_labels(labels))
        }
        Diamond => Ok(Poset::transitive_closure(&[(0, 1), (0, 2), (1, 3), (2, 3)], 4)?
            .with_labels(vec!["a".into(), "b".into(), "c".into(), "d".into()])),
        Butterfly => catalog(&Crown(2)).map(|p| {
            p.with_labels(vec!["a1".into(), "a2".into(), "b1".into(), "b2".into()])
        }),
        Crown(k) => {
            if k < 2 || 2 * k > 64 {
                return bad("crown needs 2 <= k <= 32");
            }
            let mut arcs = Vec::new();
            for i in 0..k {
                arcs.push((i, k + i));
                arcs.push(((i + 1) % k, k + i));
            }
            let mut labels: Vec<String> = (1..=k).map(|i| format!("a{i}")).collect();
            labels.extend((1..=k).map(|i| format!("b{i}")));
            Ok(Poset::transitive_closure(&arcs, 2 * k)?.with_labels(labels))
        }
        PathPoset(k) => {
            if k < 2 || 2 * k - 1 > 64 {
                return bad("path poset needs 2 <= k <= 32");
            }
            let mut arcs = Vec::new();
            for i in 0..k - 1 {
                arcs.push((i, k + i));
                arcs.push((i + 1, k + i));
            }
            let mut labels: Vec<String> = (1..=k).map(|i| format!("a{i}")).collect();
            labels.extend((1..=k - 1).map(|i| format!("b{i}")));
            Ok(Poset::transitive_closure(&arcs, 2 * k - 1)?.with_labels(labels))
        }
        Spider { leg_len, legs } => {
            if leg_len == 0 || legs == 0 || leg_len * legs + 1 > 64 {
                return bad("spider needs k, l >= 1 and k*l+1 <= 64");
            }
            // Each leg is a zigzag path of leg_len edges; leaves maximal, so
            // vertex t of a leg (1-based from the center) is maximal iff
            // leg_len - t is even.
            let center = 0usize;
            let mut arcs = Vec::new();
            let mut labels = vec!["v".to_string()];
            let mut next = 1usize;
            for leg in 1..=legs {
                let mut prev = center;
                for t in 1..=leg_len {
                    let cur = next;
                    labels.push(format!("v{leg}_{t}"));
                    next += 1;
                    let cur_max = (leg_len - t) % 2 == 0;
                    if cur_max {
                        arcs.push((prev, cur));
                    } else {
                        arcs.push((cur, prev));
                    }
                    prev = cur;
                }
            }
            Ok(Poset::transitive_closure(&arcs, next)?.with_labels(labels))
        }
        Boolean(d) => {
            if d > 6 {
                return bad("boolean poset needs d <= 6");
            }
            let size = 1usize << d;
            let mut arcs = Vec::new();
            for s in 0..size {
                for b in 0..d {
                    if s >> b & 1 == 0 {
                        arcs.push((s, s | 1 << b));
                    }
                }
            }
            Ok(Poset::transitive_closure(&arcs, size)?
                .with_labels((0..size).map(|s| format!("{s:x}")).collect()))
        }
        XPoset => Ok(
            Poset::transitive_closure(&[(0, 2), (1, 2), (2, 3), (2, 4)], 5)?.with_labels(vec![
                "a1".into(),
                "a2".into(),
                "c".into(),
                "b1".into(),
                "b2".into(),
            ]),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat(id: CatalogId) -> Poset {
        catalog(&id).unwrap()
    }

    #[test]
    fn closure_adds_transitive_pairs() {
        let p = Poset::transitive_closure(&[(0, 1), (1, 2)], 3).unwrap();
        assert!(p.less(0, 2));
        assert!(!p.less(2, 0));
    }

    #[test]
    fn closure_of_empty_relation_is_antichain() {
        let p = Poset::transitive_closure(&[], 4).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!(!p.less(i, j));
            }
        }
        assert!(p.is_isomorphic(&cat(CatalogId::Antichain(4))));
    }

    #[test]
    fn closure_builds_x_poset() {
        let p = Poset::transitive_closure(&[(0, 2), (1, 2), (2, 3), (2, 4)], 5).unwrap();
        assert!(p.less(0, 3) && p.less(0, 4) && p.less(1, 3) && p.less(1, 4));
        assert!(p.is_isomorphic(&cat(CatalogId::XPoset)));
    }

    #[test]
    fn closure_rejects_cycles() {
        let err = Poset::transitive_closure(&[(0, 1), (1, 0)], 2).unwrap_err();
        assert_eq!(err, PosetError::CycleDetected);
    }

    #[test]
    fn hasse_removes_transitive_arcs() {
        let c3 = cat(CatalogId::Chain(3));
        assert_eq!(c3.hasse().arcs, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn hasse_of_diamond() {
        let d = cat(CatalogId::Diamond);
        assert_eq!(d.hasse().arcs, vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn hasse_of_crown_is_antidirected_cycle() {
        let o6 = cat(CatalogId::Crown(3));
        let arcs = o6.hasse().arcs;
        assert_eq!(arcs.len(), 6);
        // Every arc goes from a minimal a_i to a maximal b_j and the
        // undirected graph is a single 6-cycle.
        let mut deg = [0; 6];
        for (p, q) in arcs {
            assert!(p < 3 && q >= 3);
            deg[p] += 1;
            deg[q] += 1;
        }
        assert!(deg.iter().all(|&d| d == 2));
    }

    #[test]
    fn heights() {
        assert_eq!(cat(CatalogId::Antichain(5)).height(), 1);
        assert_eq!(cat(CatalogId::Chain(4)).height(), 4);
        assert_eq!(cat(CatalogId::Butterfly).height(), 2);
        assert_eq!(cat(CatalogId::XPoset).height(), 3);
    }

    #[test]
    fn extremal_elements_of_catalog_posets() {
        assert_eq!(cat(CatalogId::Chain(3)).extremal_elements(), (vec![0], vec![2]));
        assert_eq!(cat(CatalogId::Diamond).extremal_elements(), (vec![0], vec![3]));
        assert_eq!(
            cat(CatalogId::Crown(3)).extremal_elements(),
            (vec![0, 1, 2], vec![3, 4, 5])
        );
    }

    #[test]
    fn p_minus_of_diamond_is_fork_and_broom() {
        let ps = cat(CatalogId::Diamond).p_minus().unwrap();
        assert_eq!(ps.len(), 2);
        let fork = cat(CatalogId::Fork(2));
        let broom = cat(CatalogId::Broom(2));
        assert!(ps.iter().any(|p| p.is_isomorphic(&fork)));
        assert!(ps.iter().any(|p| p.is_isomorphic(&broom)));
    }

    #[test]
    fn p_minus_of_butterfly_is_fork_and_broom() {
        let ps = cat(CatalogId::Butterfly).p_minus().unwrap();
        assert_eq!(ps.len(), 2);
        assert!(ps.iter().any(|p| p.is_isomorphic(&cat(CatalogId::Fork(2)))));
        assert!(ps.iter().any(|p| p.is_isomorphic(&cat(CatalogId::Broom(2)))));
    }

    #[test]
    fn p_minus_of_antichain() {
        let ps = cat(CatalogId::Antichain(3)).p_minus().unwrap();
        assert_eq!(ps.len(), 1);
        assert!(ps[0].is_isomorphic(&cat(CatalogId::Antichain(2))));
    }

    #[test]
    fn p_minus_rejects_singletons() {
        assert_eq!(cat(CatalogId::Chain(1)).p_minus().unwrap_err(), PosetError::EmptyPoset);
    }

    #[test]
    fn dual_swaps_fork_and_broom() {
        assert!(cat(CatalogId::Fork(3)).dual().is_isomorphic(&cat(CatalogId::Broom(3))));
        let a4 = cat(CatalogId::Antichain(4));
        assert_eq!(a4.dual(), a4);
        let d = cat(CatalogId::Diamond);
        assert!(d.dual().is_isomorphic(&d));
    }

    #[test]
    fn dual_is_involution_and_commutes_with_p_minus() {
        for id in [
            CatalogId::Diamond,
            CatalogId::Crown(3),
            CatalogId::Fork(2),
            CatalogId::XPoset,
            CatalogId::PathPoset(3),
        ] {
            let p = cat(id);
            assert_eq!(p.dual().dual(), p);
            let lhs = p.dual().p_minus().unwrap();
            let rhs: Vec<Poset> = p.p_minus().unwrap().iter().map(|q| q.dual()).collect();
            assert_eq!(lhs.len(), rhs.len());
            for l in &lhs {
                assert!(rhs.iter().any(|r| r.is_isomorphic(l)));
            }
        }
    }

    #[test]
    fn canonical_decomposition_examples() {
        assert_eq!(cat(CatalogId::Chain(3)).canonical_decomposition(), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(
            cat(CatalogId::Diamond).canonical_decomposition(),
            vec![vec![0], vec![1, 2], vec![3]]
        );
        assert_eq!(
            cat(CatalogId::XPoset).canonical_decomposition(),
            vec![vec![0, 1], vec![2], vec![3, 4]]
        );
    }

    #[test]
    fn decomposition_partitions_into_antichains() {
        for id in [CatalogId::Crown(4), CatalogId::Boolean(2), CatalogId::XPoset] {
            let p = cat(id);
            let levels = p.canonical_decomposition();
            assert_eq!(levels.len(), p.height());
            let all: Vec<usize> = levels.concat();
            let mut sorted = all.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, (0..p.size()).collect::<Vec<_>>());
            for level in &levels {
                for &a in level {
                    for &b in level {
                        assert!(a == b || !p.comparable(a, b));
                    }
                }
            }
        }
    }

    #[test]
    fn saturate_fixed_point_on_x_poset() {
        let x = cat(CatalogId::XPoset);
        let s = saturate(&x).unwrap();
        assert_eq!(s, x);
    }

    #[test]
    fn saturate_extends_isolated_element() {
        let p = Poset::transitive_closure(&[(0, 1)], 3).unwrap();
        let s = saturate(&p).unwrap();
        assert_eq!(s.size(), 4);
        assert!(s.is_saturated(2));
        // Element 2 gained exactly one new element above it.
        assert_eq!(s.up_set(2).count_ones(), 1);
    }

    #[test]
    fn saturate_lengthened_fork() {
        // a < b1, a < b2 < b3: the short leg must grow by one element.
        let p = Poset::transitive_closure(&[(0, 1), (0, 2), (2, 3)], 4).unwrap();
        let s = saturate(&p).unwrap();
        assert_eq!(s.size(), 5);
        assert!(s.is_saturated(3));
        // Strong subposet: original relations and non-relations survive.
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(p.less(i, j), s.less(i, j));
            }
        }
    }

    #[test]
    fn saturate_rejects_non_trees() {
        let d = cat(CatalogId::Diamond);
        assert_eq!(saturate(&d).unwrap_err(), PosetError::NotTreePoset);
    }

    #[test]
    fn peel_chain_is_trivial() {
        let c4 = cat(CatalogId::Chain(4));
        let seq = chain_interval_peel(&c4).unwrap();
        assert_eq!(seq.len(), 1);
        assert_eq!(seq[0], c4);
    }

    #[test]
    fn peel_x_poset() {
        let x = cat(CatalogId::XPoset);
        let seq = chain_interval_peel(&x).unwrap();
        assert_eq!(seq.len(), 3);
        assert_eq!(seq[0].size(), 5);
        assert_eq!(seq[1].size(), 4);
        assert_eq!(seq[2].size(), 3);
        assert!(seq[2].is_isomorphic(&cat(CatalogId::Chain(3))));
        for t in &seq {
            assert!(t.is_saturated(3));
        }
    }

    #[test]
    fn peel_spider_s13() {
        let s = cat(CatalogId::Spider { leg_len: 1, legs: 3 });
        let seq = chain_interval_peel(&s).unwrap();
        assert_eq!(seq.len(), 3);
        assert!(seq.last().unwrap().is_isomorphic(&cat(CatalogId::Chain(2))));
        for (a, b) in seq.iter().zip(seq.iter().skip(1)) {
            assert!(b.size() < a.size());
            assert!(b.is_saturated(2));
        }
    }

    #[test]
    fn catalog_crown2_is_butterfly() {
        assert!(cat(CatalogId::Crown(2)).is_isomorphic(&cat(CatalogId::Butterfly)));
    }

    #[test]
    fn catalog_path_poset_shape() {
        let p5 = cat(CatalogId::PathPoset(3));
        assert_eq!(p5.size(), 5);
        // a_i, a_{i+1} < b_i and nothing else.
        assert!(p5.less(0, 3) && p5.less(1, 3) && p5.less(1, 4) && p5.less(2, 4));
        assert!(!p5.less(0, 4) && !p5.less(2, 3));
    }

    #[test]
    fn catalog_boolean2_is_diamond() {
        assert!(cat(CatalogId::Boolean(2)).is_isomorphic(&cat(CatalogId::Diamond)));
    }

    #[test]
    fn catalog_spider_shapes() {
        let fork = cat(CatalogId::Spider { leg_len: 1, legs: 4 });
        assert!(fork.is_isomorphic(&cat(CatalogId::Fork(4))));
        let s22 = cat(CatalogId::Spider { leg_len: 2, legs: 2 });
        assert_eq!(s22.size(), 5);
        assert_eq!(s22.height(), 2);
        assert!(s22.is_tree_poset());
        // Leaves are maximal.
        let (_, maxs) = s22.extremal_elements();
        assert!(maxs.contains(&2) && maxs.contains(&4));
    }

    #[test]
    fn catalog_roundtrips_through_hasse() {
        for id in [
            CatalogId::Chain(4),
            CatalogId::Antichain(3),
            CatalogId::Fork(3),
            CatalogId::Broom(2),
            CatalogId::Diamond,
            CatalogId::Butterfly,
            CatalogId::Crown(3),
            CatalogId::PathPoset(4),
            CatalogId::Spider { leg_len: 2, legs: 3 },
            CatalogId::Boolean(3),
            CatalogId::XPoset,
        ] {
            let p = cat(id);
            let rebuilt = Poset::transitive_closure(&p.hasse().arcs, p.size()).unwrap();
            assert_eq!(rebuilt, p);
        }
    }

    #[test]
    fn poset_distance_examples() {
        let c3 = cat(CatalogId::Chain(3));
        assert_eq!(c3.poset_distance(0, 2).unwrap(), 1);
        let bf = cat(CatalogId::Butterfly);
        assert_eq!(bf.poset_distance(0, 1).unwrap(), 2);
        let o6 = cat(CatalogId::Crown(3));
        assert_eq!(o6.poset_distance(0, 2).unwrap(), 2);
        assert_eq!(o6.poset_distance(0, 0).unwrap(), 0);
        let a2 = cat(CatalogId::Antichain(2));
        assert_eq!(a2.poset_distance(0, 1).unwrap_err(), PosetError::Disconnected);
    }

    #[test]
    fn crown_needs_k_at_least_2() {
        assert!(matches!(catalog(&CatalogId::Crown(1)), Err(PosetError::BadParams(_))));
    }
}
