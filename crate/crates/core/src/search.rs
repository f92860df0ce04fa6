//! Exact computation of the extremal quantities La, La*, La_con, ar and
//! ar* for small ground sets.
//!
//! Family search branches on including/excluding masks middle-layer-first
//! with incremental freeness pruning; coloring search branches over set
//! partitions in restricted-growth form with canonical-form deduplication
//! under the automorphisms of the cube (coordinate permutations, plus
//! complementation when the poset is self-dual). Brute-force enumerations
//! back both searches as oracles at the smallest sizes.

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::copies::{
    find_copy_with, find_rainbow_copy, find_rainbow_copy_among, is_free, Coloring, Mode,
};
use crate::families::{full_mask, middle_layer_order, SetFamily};
use crate::poset::Poset;
use crate::util::{run_chunked, thread_budget};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("instance too large for exact search: {0}")]
    TooLarge(String),
    #[error("bad search configuration: {0}")]
    BadConfig(String),
}

/// Configuration of one extremal search.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub n: u32,
    pub posets: Vec<Poset>,
    pub mode: Mode,
    pub convex_only: bool,
    pub time_limit: Option<Duration>,
    pub threads: Option<usize>,
    /// Canonical-form deduplication under the cube automorphisms in the
    /// coloring search; disabled only to cross-check its soundness.
    pub use_symmetry: bool,
}

impl SearchConfig {
    pub fn new(n: u32, posets: Vec<Poset>, mode: Mode) -> SearchConfig {
        SearchConfig {
            n,
            posets,
            mode,
            convex_only: false,
            time_limit: None,
            threads: None,
            use_symmetry: true,
        }
    }

    pub fn convex(mut self) -> SearchConfig {
        self.convex_only = true;
        self
    }
}

#[derive(Debug, Clone)]
pub enum Witness {
    Family(SetFamily),
    Coloring(Coloring),
}

/// Result of an extremal search. `exact` is false when a time limit cut
/// the search short, in which case `value` is only a lower bound.
#[derive(Debug, Clone)]
pub struct ExtremalResult {
    pub value: u64,
    pub witness: Witness,
    pub nodes: u64,
    pub exact: bool,
}

impl ExtremalResult {
    pub fn family(&self) -> &SetFamily {
        match &self.witness {
            Witness::Family(f) => f,
            Witness::Coloring(_) => panic!("witness is a coloring"),
        }
    }

    pub fn coloring(&self) -> &Coloring {
        match &self.witness {
            Witness::Coloring(c) => c,
            Witness::Family(_) => panic!("witness is a family"),
        }
    }
}

/// Masks of 2^[n] in layer-major order, middle layers first.
fn middle_out_masks(n: u32) -> Vec<u64> {
    let mut order = Vec::with_capacity(1 << n);
    for k in middle_layer_order(n) {
        order.extend_from_slice(crate::families::layer(n, k).unwrap().members());
    }
    order
}

// ---------------------------------------------------------------------------
// La: maximum size of a P-free family.
// ---------------------------------------------------------------------------

struct LaCtx<'a> {
    n: u32,
    order: Vec<u64>,
    posets: &'a [Poset],
    mode: Mode,
    /// Lubell-mass cap: a family of mass above k-1 meets some maximal
    /// chain in k sets, so forbidding the k-chain caps the family size at
    /// (k-1) * C(n, floor(n/2)). Applies whenever a forbidden poset is a
    /// chain; u64::MAX otherwise.
    size_cap: u64,
    deadline: Option<Instant>,
    nodes: AtomicU64,
    timed_out: AtomicBool,
}

struct LaLocal {
    best: u64,
    witness: Vec<u64>,
    have: bool,
}

impl<'a> LaCtx<'a> {
    fn extension_is_free(&self, current: &mut Vec<u64>, mask: u64) -> bool {
        current.push(mask);
        let ok = self
            .posets
            .iter()
            .all(|p| !find_copy_with(p, self.n, current, self.mode, mask));
        current.pop();
        ok
    }

    fn dfs(&self, pos: usize, current: &mut Vec<u64>, local: &mut LaLocal) {
        let nodes = self.nodes.fetch_add(1, Ordering::Relaxed);
        if let Some(d) = self.deadline {
            if nodes.is_multiple_of(1024) && Instant::now() > d {
                self.timed_out.store(true, Ordering::Relaxed);
            }
        }
        if self.timed_out.load(Ordering::Relaxed) {
            return;
        }
        let size = current.len() as u64;
        if !local.have || size > local.best {
            local.best = size;
            local.witness = current.clone();
            local.have = true;
        }
        if pos == self.order.len() {
            return;
        }
        // Workers prune only against their own bound: sharing a bound
        // across threads makes the explored-node count depend on
        // scheduling, and the node count is part of the reported result.
        let ub = (size + (self.order.len() - pos) as u64).min(self.size_cap);
        if ub <= local.best {
            return;
        }
        // Greedy completion bound: any completion only uses remaining masks
        // that are individually addable to the current family. Counting
        // stops as soon as the bound is known not to prune.
        let mut addable = 0u64;
        for &m in &self.order[pos..] {
            if self.extension_is_free(current, m) {
                addable += 1;
                if size + addable > local.best {
                    break;
                }
            }
        }
        if size + addable <= local.best {
            return;
        }
        let mask = self.order[pos];
        if self.extension_is_free(current, mask) {
            current.push(mask);
            self.dfs(pos + 1, current, local);
            current.pop();
        }
        self.dfs(pos + 1, current, local);
    }
}

/// Exact La / La* / La_con value with a certifying witness family.
pub fn la_exact(cfg: &SearchConfig) -> Result<ExtremalResult, SearchError> {
    if cfg.posets.is_empty() {
        return Err(SearchError::BadConfig("no posets given".into()));
    }
    if cfg.convex_only {
        return la_convex(cfg);
    }
    if cfg.n > 5 {
        return Err(SearchError::TooLarge(format!("La search capped at n = 5, got {}", cfg.n)));
    }
    let size_cap = cfg
        .posets
        .iter()
        .filter(|p| p.size() == p.height())
        .map(|p| (p.size() as u64 - 1) * crate::util::binomial(cfg.n as u64, cfg.n as u64 / 2) as u64)
        .min()
        .unwrap_or(u64::MAX);
    let ctx = LaCtx {
        n: cfg.n,
        order: middle_out_masks(cfg.n),
        posets: &cfg.posets,
        mode: cfg.mode,
        size_cap,
        deadline: cfg.time_limit.map(|t| Instant::now() + t),
        nodes: AtomicU64::new(0),
        timed_out: AtomicBool::new(false),
    };
    let threads = thread_budget(cfg.threads);
    let depth = if threads <= 1 { 0 } else { 6usize.min(ctx.order.len()) };
    // Prefix patterns in DFS (include-first) order: bit t of the key, read
    // from the top, is the include decision for order[t].
    let mut prefixes: Vec<Vec<bool>> = Vec::new();
    for key in (0..1u64 << depth).rev() {
        prefixes.push((0..depth).map(|t| key >> (depth - 1 - t) & 1 == 1).collect());
    }
    let locals = run_chunked(prefixes.len(), threads, |range| {
        let mut acc = LaLocal { best: 0, witness: Vec::new(), have: false };
        for prefix in &prefixes[range] {
            let mut current = Vec::new();
            let mut valid = true;
            for (t, &include) in prefix.iter().enumerate() {
                if include {
                    if ctx.extension_is_free(&mut current, ctx.order[t]) {
                        current.push(ctx.order[t]);
                    } else {
                        valid = false;
                        break;
                    }
                }
            }
            if !valid {
                continue;
            }
            let mut local = LaLocal { best: 0, witness: Vec::new(), have: false };
            ctx.dfs(depth, &mut current, &mut local);
            if local.have && (!acc.have || local.best > acc.best) {
                acc = local;
            }
        }
        acc
    });
    let mut best = LaLocal { best: 0, witness: Vec::new(), have: false };
    for local in locals {
        if local.have && (!best.have || local.best > best.best) {
            best = local;
        }
    }
    let witness = SetFamily::new(cfg.n, best.witness);
    // Every witness re-validates through the copy detector before return.
    assert!(is_free(&cfg.posets, &witness, cfg.mode));
    assert_eq!(witness.len() as u64, best.best);
    Ok(ExtremalResult {
        value: best.best,
        witness: Witness::Family(witness),
        nodes: ctx.nodes.load(Ordering::Relaxed),
        exact: !ctx.timed_out.load(Ordering::Relaxed),
    })
}

/// All up-closed (or down-closed) subsets of the cube, as bitmaps over
/// masks. Brute-force filter; only used for n <= 4.
fn closed_family_bitmaps(n: u32, upward: bool) -> Vec<u64> {
    let cube = 1usize << n;
    let mut out = Vec::new();
    'cand: for bitmap in 0..1u64 << cube {
        for m in 0..cube as u64 {
            if bitmap >> m & 1 == 1 {
                for b in 0..n {
                    let nb = if upward { m | 1 << b } else { m & !(1 << b) };
                    if nb != m && bitmap >> nb & 1 == 0 {
                        continue 'cand;
                    }
                }
            }
        }
        out.push(bitmap);
    }
    out
}

fn la_convex(cfg: &SearchConfig) -> Result<ExtremalResult, SearchError> {
    if cfg.n > 4 {
        return Err(SearchError::TooLarge(format!(
            "convex-restricted search enumerates up/down-set pairs, capped at n = 4, got {}",
            cfg.n
        )));
    }
    // Convex families are exactly intersections of an up-set and a
    // down-set, so enumerate those pairs instead of filtering families.
    let ups = closed_family_bitmaps(cfg.n, true);
    let downs = closed_family_bitmaps(cfg.n, false);
    let mut best: Option<(u64, u64)> = None; // (size, bitmap)
    let mut nodes = 0u64;
    for &d in &downs {
        for &u in &ups {
            nodes += 1;
            let bitmap = d & u;
            let size = bitmap.count_ones() as u64;
            if best.map(|(s, _)| size <= s).unwrap_or(false) {
                continue;
            }
            let members: Vec<u64> =
                (0..1u64 << cfg.n).filter(|&m| bitmap >> m & 1 == 1).collect();
            let family = SetFamily::new(cfg.n, members);
            if is_free(&cfg.posets, &family, cfg.mode) {
                best = Some((size, bitmap));
            }
        }
    }
    let (value, bitmap) = best.unwrap_or((0, 0));
    let members: Vec<u64> = (0..1u64 << cfg.n).filter(|&m| bitmap >> m & 1 == 1).collect();
    let witness = SetFamily::new(cfg.n, members);
    debug_assert!(crate::families::is_convex(&witness));
    Ok(ExtremalResult { value, witness: Witness::Family(witness), nodes, exact: true })
}

/// Brute-force La over all 2^(2^n) families; the oracle for n <= 4.
pub fn la_brute(
    n: u32,
    posets: &[Poset],
    mode: Mode,
    threads: Option<usize>,
) -> Result<ExtremalResult, SearchError> {
    if n > 4 {
        return Err(SearchError::TooLarge("brute-force La capped at n = 4".into()));
    }
    let cube = 1usize << n;
    let total = 1u64 << cube;
    let threads = thread_budget(threads);
    let chunk_results = run_chunked(total as usize, threads, |range| {
        let mut best: Option<(u64, u64)> = None;
        for bitmap in range.start as u64..range.end as u64 {
            let size = bitmap.count_ones() as u64;
            if best.map(|(s, _)| size <= s).unwrap_or(false) {
                continue;
            }
            let members: Vec<u64> = (0..cube as u64).filter(|&m| bitmap >> m & 1 == 1).collect();
            let family = SetFamily::new(n, members);
            if is_free(posets, &family, mode) {
                best = Some((size, bitmap));
            }
        }
        best
    });
    let mut value = 0;
    let mut bitmap = 0;
    for r in chunk_results.into_iter().flatten() {
        if r.0 > value {
            value = r.0;
            bitmap = r.1;
        }
    }
    let members: Vec<u64> = (0..cube as u64).filter(|&m| bitmap >> m & 1 == 1).collect();
    Ok(ExtremalResult {
        value,
        witness: Witness::Family(SetFamily::new(n, members)),
        nodes: total,
        exact: true,
    })
}

// ---------------------------------------------------------------------------
// ar: maximum number of colors avoiding a rainbow copy.
// ---------------------------------------------------------------------------

/// Bit-permutation tables for all n! coordinate permutations of the cube,
/// plus complementation composed with each when `with_complement`.
fn automorphism_tables(n: u32, with_complement: bool) -> Vec<Vec<u64>> {
    let mut perm: Vec<u32> = (0..n).collect();
    let mut perms: Vec<Vec<u32>> = Vec::new();
    heap_permutations(&mut perm, n as usize, &mut perms);
    let full = full_mask(n);
    let mut tables = Vec::with_capacity(perms.len() * if with_complement { 2 } else { 1 });
    for p in &perms {
        let mut table = vec![0u64; 1 << n];
        for (mask, slot) in table.iter_mut().enumerate() {
            let mut out = 0u64;
            for b in 0..n {
                if mask as u64 >> b & 1 == 1 {
                    out |= 1 << p[b as usize];
                }
            }
            *slot = out;
        }
        if with_complement {
            tables.push(table.iter().map(|&m| full & !m).collect());
        }
        tables.push(table);
    }
    tables
}

fn heap_permutations(perm: &mut Vec<u32>, k: usize, out: &mut Vec<Vec<u32>>) {
    if k <= 1 {
        out.push(perm.clone());
        return;
    }
    for i in 0..k {
        heap_permutations(perm, k - 1, out);
        if k.is_multiple_of(2) {
            perm.swap(i, k - 1);
        } else {
            perm.swap(0, k - 1);
        }
    }
}

const UNASSIGNED: u32 = u32::MAX;

struct ArCtx<'a> {
    n: u32,
    order: Vec<u64>,
    poset: &'a Poset,
    mode: Mode,
    deadline: Option<Instant>,
    nodes: AtomicU64,
    timed_out: AtomicBool,
    /// Automorphism tables usable at each canonicalization boundary.
    tables: Vec<Vec<u64>>,
    /// Number of tables valid per boundary (complementation needs the
    /// prefix layer set to be closed under k <-> n-k).
    boundaries: Vec<(usize, usize)>, // (depth, usable table count)
}

struct ArLocal {
    best: u64,
    witness: Vec<u32>,
    have: bool,
    seen: Vec<HashSet<Vec<u8>>>,
}

impl<'a> ArCtx<'a> {
    fn rainbow_blocked(&self, assigned: &[u64], colors: &[u32], mask: u64) -> bool {
        find_rainbow_copy_among(self.poset, self.n, assigned, colors, self.mode, mask)
    }

    /// Restricted-growth normalization of the class sequence of the prefix
    /// under one automorphism table.
    fn canonical_key(&self, depth: usize, colors: &[u32], usable: usize) -> Vec<u8> {
        let mut best: Option<Vec<u8>> = None;
        for table in &self.tables[..usable] {
            let mut relabel = vec![u8::MAX; depth + 2];
            let mut next = 0u8;
            let mut seq = Vec::with_capacity(depth);
            for &mask in &self.order[..depth] {
                let c = colors[table[mask as usize] as usize];
                debug_assert_ne!(c, UNASSIGNED);
                let r = &mut relabel[c as usize];
                if *r == u8::MAX {
                    *r = next;
                    next += 1;
                }
                seq.push(*r);
            }
            if best.as_ref().map(|b| seq < *b).unwrap_or(true) {
                best = Some(seq);
            }
        }
        best.unwrap()
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        pos: usize,
        class_count: u32,
        assigned: &mut Vec<u64>,
        colors: &mut Vec<u32>,
        local: &mut ArLocal,
    ) {
        let nodes = self.nodes.fetch_add(1, Ordering::Relaxed);
        if let Some(d) = self.deadline {
            if nodes.is_multiple_of(1024) && Instant::now() > d {
                self.timed_out.store(true, Ordering::Relaxed);
            }
        }
        if self.timed_out.load(Ordering::Relaxed) {
            return;
        }
        if pos == self.order.len() {
            if !local.have || class_count as u64 > local.best {
                local.best = class_count as u64;
                local.witness = colors.clone().into_iter().collect();
                local.have = true;
            }
            return;
        }
        // Per-worker bound only, for the same determinism reason as the
        // family search.
        let ub = class_count as u64 + (self.order.len() - pos) as u64;
        if local.have && ub <= local.best {
            return;
        }
        if let Some(bi) = self.boundaries.iter().position(|&(d, _)| d == pos) {
            // Memory-capped: once a table fills up, later states simply go
            // undeduplicated, which is sound.
            if local.seen[bi].len() < 4_000_000 {
                let usable = self.boundaries[bi].1;
                let key = self.canonical_key(pos, colors, usable);
                if !local.seen[bi].insert(key) {
                    return;
                }
            }
        }
        let mask = self.order[pos];
        assigned.push(mask);
        for c in 0..=class_count {
            colors[mask as usize] = c;
            if !self.rainbow_blocked(assigned, colors, mask) {
                let next_count = if c == class_count { class_count + 1 } else { class_count };
                self.dfs(pos + 1, next_count, assigned, colors, local);
            }
        }
        colors[mask as usize] = UNASSIGNED;
        assigned.pop();
    }
}

/// Exact ar / ar* value with a certifying rainbow-free coloring.
pub fn ar_exact(cfg: &SearchConfig) -> Result<ExtremalResult, SearchError> {
    if cfg.posets.len() != 1 {
        return Err(SearchError::BadConfig("ar search takes a single poset".into()));
    }
    if cfg.n > 6 {
        return Err(SearchError::TooLarge(format!("ar search capped at n = 6, got {}", cfg.n)));
    }
    let poset = &cfg.posets[0];
    let self_dual = poset.is_isomorphic(&poset.dual());
    let tables = automorphism_tables(cfg.n, self_dual);
    // Complement-composed tables sit at even indices when present; a prefix
    // admits them only if its layer set is closed under k <-> n-k.
    let order = middle_out_masks(cfg.n);
    let layer_order = middle_layer_order(cfg.n);
    let mut boundaries = Vec::new();
    if cfg.use_symmetry {
        let mut depth = 0usize;
        let mut layers_so_far: Vec<u32> = Vec::new();
        for &k in layer_order.iter().take(layer_order.len() - 1) {
            depth += crate::util::binomial(cfg.n as u64, k as u64) as usize;
            layers_so_far.push(k);
            // Complement-composed tables only apply while the assigned
            // layer set is closed under k <-> n-k.
            let complement_closed =
                layers_so_far.iter().all(|&l| layers_so_far.contains(&(cfg.n - l)));
            let usable = if self_dual && complement_closed {
                tables.len()
            } else if self_dual {
                tables.len() / 2
            } else {
                tables.len()
            };
            boundaries.push((depth, usable));
        }
    }
    let ctx = ArCtx {
        n: cfg.n,
        order,
        poset,
        mode: cfg.mode,
        deadline: cfg.time_limit.map(|t| Instant::now() + t),
        nodes: AtomicU64::new(0),
        timed_out: AtomicBool::new(false),
        tables: reorder_tables(tables, self_dual),
        boundaries,
    };
    let threads = thread_budget(cfg.threads);
    let split_depth = if threads <= 1 { 0 } else { 4usize.min(ctx.order.len()) };
    // Enumerate restricted-growth prefixes in DFS order.
    let mut prefixes: Vec<Vec<u32>> = Vec::new();
    fn gen_prefixes(depth: usize, cur: &mut Vec<u32>, count: u32, out: &mut Vec<Vec<u32>>) {
        if cur.len() == depth {
            out.push(cur.clone());
            return;
        }
        for c in 0..=count {
            cur.push(c);
            gen_prefixes(depth, cur, count.max(c + 1), out);
            cur.pop();
        }
    }
    gen_prefixes(split_depth, &mut Vec::new(), 0, &mut prefixes);

    let locals = run_chunked(prefixes.len(), threads, |range| {
        let mut acc = ArLocal { best: 0, witness: Vec::new(), have: false, seen: Vec::new() };
        for prefix in &prefixes[range] {
            let mut colors = vec![UNASSIGNED; 1 << cfg.n];
            let mut assigned = Vec::new();
            let mut count = 0u32;
            let mut valid = true;
            for (t, &c) in prefix.iter().enumerate() {
                let mask = ctx.order[t];
                assigned.push(mask);
                colors[mask as usize] = c;
                if ctx.rainbow_blocked(&assigned, &colors, mask) {
                    valid = false;
                    break;
                }
                count = count.max(c + 1);
            }
            if !valid {
                continue;
            }
            let mut local = ArLocal {
                best: 0,
                witness: Vec::new(),
                have: false,
                seen: vec![HashSet::new(); ctx.boundaries.len()],
            };
            ctx.dfs(prefix.len(), count, &mut assigned, &mut colors, &mut local);
            if local.have && (!acc.have || local.best > acc.best) {
                acc.best = local.best;
                acc.witness = local.witness;
                acc.have = true;
            }
        }
        acc
    });
    let mut best: Option<(u64, Vec<u32>)> = None;
    for local in locals {
        if local.have && best.as_ref().map(|(v, _)| local.best > *v).unwrap_or(true) {
            best = Some((local.best, local.witness));
        }
    }
    let (value, colors) =
        best.ok_or_else(|| SearchError::BadConfig("search produced no coloring".into()))?;
    let coloring = Coloring::new(cfg.n, colors);
    // The witness coloring re-validates before return: exactly `value`
    // colors and no rainbow copy.
    assert_eq!(coloring.color_count() as u64, value);
    assert!(find_rainbow_copy(poset, &coloring, cfg.mode).is_none());
    Ok(ExtremalResult {
        value,
        witness: Witness::Coloring(coloring),
        nodes: ctx.nodes.load(Ordering::Relaxed),
        exact: !ctx.timed_out.load(Ordering::Relaxed),
    })
}

/// Puts complement-composed tables first so a usable-count prefix can
/// select either "plain only" or "all".
fn reorder_tables(tables: Vec<Vec<u64>>, self_dual: bool) -> Vec<Vec<u64>> {
    if !self_dual {
        return tables;
    }
    // Incoming layout: [compl_0, plain_0, compl_1, plain_1, ...]. We want
    // plain tables first (always usable), complement-composed after.
    let mut plain = Vec::new();
    let mut compl = Vec::new();
    for (i, t) in tables.into_iter().enumerate() {
        if i % 2 == 0 {
            compl.push(t);
        } else {
            plain.push(t);
        }
    }
    plain.extend(compl);
    plain
}

/// Brute-force ar over all set partitions of the cube; the oracle for
/// n <= 3 (Bell(8) = 4140 partitions).
pub fn ar_brute(n: u32, poset: &Poset, mode: Mode) -> Result<ExtremalResult, SearchError> {
    if n > 3 {
        return Err(SearchError::TooLarge("brute-force ar capped at n = 3".into()));
    }
    let cube = 1usize << n;
    let mut best: Option<(u64, Vec<u32>)> = None;
    let mut nodes = 0u64;
    let mut rgs = vec![0u32; cube];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        pos: usize,
        count: u32,
        rgs: &mut Vec<u32>,
        n: u32,
        poset: &Poset,
        mode: Mode,
        nodes: &mut u64,
        best: &mut Option<(u64, Vec<u32>)>,
    ) {
        if pos == rgs.len() {
            *nodes += 1;
            let coloring = Coloring::new(n, rgs.clone());
            if best.as_ref().map(|(v, _)| (coloring.color_count() as u64) <= *v).unwrap_or(false) {
                return;
            }
            if find_rainbow_copy(poset, &coloring, mode).is_none() {
                *best = Some((coloring.color_count() as u64, rgs.clone()));
            }
            return;
        }
        for c in 0..=count {
            rgs[pos] = c;
            rec(pos + 1, count.max(c + 1), rgs, n, poset, mode, nodes, best);
        }
    }
    rec(0, 0, &mut rgs, n, poset, mode, &mut nodes, &mut best);
    let (value, colors) = best.unwrap();
    Ok(ExtremalResult {
        value,
        witness: Witness::Coloring(Coloring::new(n, colors)),
        nodes,
        exact: true,
    })
}

// ---------------------------------------------------------------------------
// Sandwich report.
// ---------------------------------------------------------------------------

/// The chain of inequalities tying ar to La computed exactly at one n.
#[derive(Debug, Clone)]
pub struct SandwichReport {
    pub n: u32,
    pub mode: Mode,
    pub ar: u64,
    pub la: u64,
    pub la_pminus: u64,
    pub la_con_pminus: u64,
    /// La of P minus its largest (preferred) or smallest element; only
    /// populated when one exists.
    pub la_minus_m: Option<u64>,
    pub violations: Vec<String>,
}

impl SandwichReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Computes ar, La, La(P^-), La_con(P^-) (and La(P \ {m}) when P has a
/// largest or smallest element) and checks every inequality that applies
/// in the given mode.
pub fn check_sandwich(n: u32, poset: &Poset, mode: Mode) -> Result<SandwichReport, SearchError> {
    if poset.size() < 2 {
        return Err(SearchError::BadConfig("sandwich needs |P| >= 2".into()));
    }
    let pminus = poset
        .p_minus()
        .map_err(|e| SearchError::BadConfig(format!("p_minus failed: {e}")))?;
    let ar = ar_exact(&SearchConfig::new(n, vec![poset.clone()], mode))?.value;
    let la = la_exact(&SearchConfig::new(n, vec![poset.clone()], mode))?.value;
    let la_pminus = la_exact(&SearchConfig::new(n, pminus.clone(), mode))?.value;
    let la_con_pminus = la_exact(&SearchConfig::new(n, pminus, mode).convex())?.value;

    // Largest element: above everything else; smallest: below everything.
    let size = poset.size();
    let largest = (0..size).find(|&m| poset.down_set(m).count_ones() as usize == size - 1);
    let smallest = (0..size).find(|&m| poset.up_set(m).count_ones() as usize == size - 1);
    let la_minus_m = match largest.or(smallest) {
        Some(m) if size >= 2 => {
            Some(la_exact(&SearchConfig::new(n, vec![poset.without(&[m])], mode))?.value)
        }
        _ => None,
    };

    let mut violations = Vec::new();
    if ar > la {
        violations.push(format!("ar = {ar} > La = {la}"));
    }
    if 1 + la_con_pminus > ar {
        violations.push(format!("1 + La_con(P^-) = {} > ar = {ar}", 1 + la_con_pminus));
    }
    if mode == Mode::Weak && ar > 2 + la_pminus {
        violations.push(format!("ar = {ar} > 2 + La(P^-) = {}", 2 + la_pminus));
    }
    if mode == Mode::Strong {
        if let Some(lm) = la_minus_m {
            if ar > 1 + lm {
                violations.push(format!("ar* = {ar} > 1 + La*(P - m) = {}", 1 + lm));
            }
        }
    }
    Ok(SandwichReport { n, mode, ar, la, la_pminus, la_con_pminus, la_minus_m, violations })
}
