//! Detection of weak and strong copies of a poset inside a set family, and
//! of rainbow copies under a coloring of the cube.
//!
//! `find_copy` embeds along a linear extension with size and
//! incomparability pruning; `oracle_find_copy` checks all injections with
//! no pruning and exists so every other search in the crate has an
//! independent ground truth to be compared against. Both return the
//! lexicographically first witness in their fixed search order.

use thiserror::Error;

use crate::families::{full_mask, SetFamily};
use crate::poset::Poset;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CopyError {
    #[error("instance too large for the exhaustive oracle: {0}")]
    TooLarge(String),
}

/// Copy semantics: weak preserves order one way, strong both ways.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Weak,
    Strong,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Weak => "weak",
            Mode::Strong => "strong",
        }
    }
}

/// An injective map from poset elements to masks witnessing a copy.
#[derive(Debug, Clone)]
pub struct CopyEmbedding {
    pub poset: Poset,
    pub ground: u32,
    /// `images[e]` = mask assigned to poset element e.
    pub images: Vec<u64>,
    pub mode: Mode,
}

impl CopyEmbedding {
    /// Re-checks the embedding from scratch: injectivity plus the weak or
    /// strong correspondence between order and inclusion.
    pub fn validate(&self) -> bool {
        let p = &self.poset;
        if self.images.len() != p.size() {
            return false;
        }
        for i in 0..p.size() {
            for j in 0..p.size() {
                if i == j {
                    continue;
                }
                if self.images[i] == self.images[j] {
                    return false;
                }
                let included = self.images[i] & !self.images[j] == 0;
                match self.mode {
                    Mode::Weak => {
                        if p.less(i, j) && !included {
                            return false;
                        }
                    }
                    Mode::Strong => {
                        if p.less(i, j) != included {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// True iff all images carry pairwise distinct colors.
    pub fn is_rainbow(&self, coloring: &Coloring) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.images.iter().all(|&m| seen.insert(coloring.color_of(m)))
    }
}

/// A total coloring of `2^[n]`: one color id per mask, with every id in
/// `0..color_count` used at least once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    n: u32,
    color_of: Vec<u32>,
    color_count: u32,
}

impl Coloring {
    pub fn new(n: u32, color_of: Vec<u32>) -> Coloring {
        assert!(n <= 24);
        assert_eq!(color_of.len(), 1usize << n, "coloring must cover all masks");
        let count = color_of.iter().copied().max().map_or(0, |m| m + 1);
        let mut used = vec![false; count as usize];
        for &c in &color_of {
            used[c as usize] = true;
        }
        assert!(used.iter().all(|&u| u), "color ids must be dense");
        Coloring { n, color_of, color_count: count }
    }

    pub fn ground(&self) -> u32 {
        self.n
    }

    pub fn color_of(&self, mask: u64) -> u32 {
        self.color_of[mask as usize]
    }

    pub fn colors(&self) -> &[u32] {
        &self.color_of
    }

    pub fn color_count(&self) -> u32 {
        self.color_count
    }

    /// The coloring of the complemented cube: mask -> color of `[n] \ mask`.
    pub fn complemented(&self) -> Coloring {
        let full = full_mask(self.n);
        let color_of = (0..1u64 << self.n)
            .map(|m| self.color_of[(full & !m) as usize])
            .collect();
        Coloring::new(self.n, color_of)
    }
}

/// Relation of a later element to an earlier one in the search order.
#[derive(Clone, Copy, PartialEq)]
enum Rel {
    Above,
    Below,
    Incomparable,
}

struct Searcher<'a> {
    poset: &'a Poset,
    ground: u32,
    mode: Mode,
    /// Element processing order (a linear extension).
    order: Vec<usize>,
    /// rels[i][k] = relation of order[i] to order[k], k < i.
    rels: Vec<Vec<Rel>>,
    /// Minimum / maximum image sizes per ordered element.
    min_size: Vec<u32>,
    max_size: Vec<u32>,
    candidates: &'a [u64],
    /// Color per mask for rainbow search; indexed by mask value.
    coloring: Option<&'a [u32]>,
}

impl<'a> Searcher<'a> {
    fn new(
        poset: &'a Poset,
        ground: u32,
        mode: Mode,
        candidates: &'a [u64],
        coloring: Option<&'a [u32]>,
    ) -> Searcher<'a> {
        let order = poset.linear_extension();
        let mut rels = Vec::with_capacity(order.len());
        for (i, &e) in order.iter().enumerate() {
            let mut row = Vec::with_capacity(i);
            for &d in &order[..i] {
                row.push(if poset.less(d, e) {
                    Rel::Above
                } else if poset.less(e, d) {
                    Rel::Below
                } else {
                    Rel::Incomparable
                });
            }
            rels.push(row);
        }
        // An element atop a d-chain needs an image of size >= d - 1; one
        // under an h-chain needs size <= n - h + 1. Posets taller than the
        // cube leave an empty window (saturating to an impossible range).
        let min_size = order.iter().map(|&e| poset.down_height(e) as u32 - 1).collect();
        let max_size = order
            .iter()
            .map(|&e| {
                let above = poset.up_height(e) as u32 - 1;
                ground.saturating_sub(above)
            })
            .collect();
        Searcher { poset, ground, mode, order, rels, min_size, max_size, candidates, coloring }
    }

    fn admissible(&self, pos: usize, mask: u64, images: &[u64]) -> bool {
        let size = mask.count_ones();
        if size < self.min_size[pos] || size > self.max_size[pos] {
            return false;
        }
        for (k, &prev) in images.iter().enumerate() {
            if prev == mask {
                return false;
            }
            let prev_in_mask = prev & !mask == 0;
            let mask_in_prev = mask & !prev == 0;
            match self.rels[pos][k] {
                Rel::Above => {
                    if !prev_in_mask {
                        return false;
                    }
                }
                Rel::Below => {
                    if !mask_in_prev {
                        return false;
                    }
                }
                Rel::Incomparable => {
                    if self.mode == Mode::Strong && (prev_in_mask || mask_in_prev) {
                        return false;
                    }
                }
            }
        }
        if let Some(col) = self.coloring {
            let c = col[mask as usize];
            if images.iter().any(|&prev| col[prev as usize] == c) {
                return false;
            }
        }
        true
    }

    fn run(&self, images: &mut Vec<u64>) -> bool {
        if images.len() == self.order.len() {
            return true;
        }
        let pos = images.len();
        for &mask in self.candidates {
            if self.admissible(pos, mask, images) {
                images.push(mask);
                if self.run(images) {
                    return true;
                }
                images.pop();
            }
        }
        false
    }

    fn embedding_of(&self, by_order: Vec<u64>) -> CopyEmbedding {
        let mut images = vec![0u64; self.order.len()];
        for (pos, &e) in self.order.iter().enumerate() {
            images[e] = by_order[pos];
        }
        CopyEmbedding { poset: self.poset.clone(), ground: self.ground, images, mode: self.mode }
    }
}

/// Finds a weak or strong copy of `poset` inside `family`, or None. The
/// search is complete and the witness is the first in the fixed order.
pub fn find_copy(poset: &Poset, family: &SetFamily, mode: Mode) -> Option<CopyEmbedding> {
    if poset.size() > family.len() {
        return None;
    }
    let searcher = Searcher::new(poset, family.ground(), mode, family.members(), None);
    let mut images = Vec::with_capacity(poset.size());
    if searcher.run(&mut images) {
        let emb = searcher.embedding_of(images);
        debug_assert!(emb.validate());
        Some(emb)
    } else {
        None
    }
}

/// True iff `family` contains no weak/strong copy of any poset in the set.
pub fn is_free(posets: &[Poset], family: &SetFamily, mode: Mode) -> bool {
    posets.iter().all(|p| find_copy(p, family, mode).is_none())
}

/// Finds a rainbow copy of `poset` under `coloring` (images with pairwise
/// distinct colors, drawn from the whole cube), or None.
pub fn find_rainbow_copy(poset: &Poset, coloring: &Coloring, mode: Mode) -> Option<CopyEmbedding> {
    let n = coloring.ground();
    if poset.size() as u64 > 1 << n || poset.size() as u32 > coloring.color_count() {
        return None;
    }
    let candidates: Vec<u64> = (0..1u64 << n).collect();
    let searcher = Searcher::new(poset, n, mode, &candidates, Some(coloring.colors()));
    let mut images = Vec::with_capacity(poset.size());
    if searcher.run(&mut images) {
        let emb = searcher.embedding_of(images);
        debug_assert!(emb.validate() && emb.is_rainbow(coloring));
        Some(emb)
    } else {
        None
    }
}

/// Rainbow copy search restricted to an explicit candidate list, requiring
/// `required` to appear among the images. `colors` is indexed by mask value
/// and must cover every candidate. Used by the coloring search to test
/// partial colorings incrementally.
pub(crate) fn find_rainbow_copy_among(
    poset: &Poset,
    ground: u32,
    candidates: &[u64],
    colors: &[u32],
    mode: Mode,
    required: u64,
) -> bool {
    if poset.size() > candidates.len() {
        return false;
    }
    let searcher = Searcher::new(poset, ground, mode, candidates, Some(colors));
    // Pin `required` at every position of the search order in turn.
    for pin in 0..searcher.order.len() {
        let mut images = Vec::with_capacity(poset.size());
        if pinned_run(&searcher, pin, required, &mut images) {
            return true;
        }
    }
    false
}

fn pinned_run(s: &Searcher, pin: usize, required: u64, images: &mut Vec<u64>) -> bool {
    if images.len() == s.order.len() {
        return true;
    }
    let pos = images.len();
    if pos == pin {
        if s.admissible(pos, required, images) {
            images.push(required);
            if pinned_run(s, pin, required, images) {
                return true;
            }
            images.pop();
        }
        return false;
    }
    for &mask in s.candidates {
        if mask != required && s.admissible(pos, mask, images) {
            images.push(mask);
            if pinned_run(s, pin, required, images) {
                return true;
            }
            images.pop();
        }
    }
    false
}

/// Copy search restricted to a candidate list, requiring `required` among
/// the images. Used by the family search to test extensions incrementally.
pub(crate) fn find_copy_with(
    poset: &Poset,
    ground: u32,
    candidates: &[u64],
    mode: Mode,
    required: u64,
) -> bool {
    if poset.size() > candidates.len() {
        return false;
    }
    let searcher = Searcher::new(poset, ground, mode, candidates, None);
    for pin in 0..searcher.order.len() {
        let mut images = Vec::with_capacity(poset.size());
        if pinned_run(&searcher, pin, required, &mut images) {
            return true;
        }
    }
    false
}

/// Exhaustive injection check with no pruning: the test oracle. Elements
/// are assigned in index order, candidates in family order, and the full
/// constraint set is evaluated only on complete assignments.
pub fn oracle_find_copy(
    poset: &Poset,
    family: &SetFamily,
    mode: Mode,
) -> Result<Option<CopyEmbedding>, CopyError> {
    if poset.size() > 6 {
        return Err(CopyError::TooLarge(format!("|P| = {} > 6", poset.size())));
    }
    if family.len() > 40 {
        return Err(CopyError::TooLarge(format!("|F| = {} > 40", family.len())));
    }
    let mut images: Vec<u64> = Vec::with_capacity(poset.size());
    let mut used = vec![false; family.len()];
    fn rec(
        poset: &Poset,
        family: &SetFamily,
        mode: Mode,
        images: &mut Vec<u64>,
        used: &mut [bool],
    ) -> bool {
        if images.len() == poset.size() {
            let emb = CopyEmbedding {
                poset: poset.clone(),
                ground: family.ground(),
                images: images.clone(),
                mode,
            };
            return emb.validate();
        }
        for idx in 0..family.len() {
            if used[idx] {
                continue;
            }
            used[idx] = true;
            images.push(family.members()[idx]);
            if rec(poset, family, mode, images, used) {
                return true;
            }
            images.pop();
            used[idx] = false;
        }
        false
    }
    if rec(poset, family, mode, &mut images, &mut used) {
        Ok(Some(CopyEmbedding {
            poset: poset.clone(),
            ground: family.ground(),
            images,
            mode,
        }))
    } else {
        Ok(None)
    }
}

/// An all-distinct coloring: every mask its own color.
pub fn rainbow_coloring(n: u32) -> Coloring {
    Coloring::new(n, (0..1u32 << n).collect())
}

/// A single-color coloring.
pub fn monochromatic_coloring(n: u32) -> Coloring {
    Coloring::new(n, vec![0; 1 << n])
}
