//! Subsets of `[n]` as bitmasks and the family-level machinery: layers,
//! convexity, exact-rational Lubell mass, size bands, in-family shadows,
//! the F1/F2/F3 shadow partition, and the large-n binomial inequality
//! checks evaluated in log space.
//!
//! Two disjoint numeric regimes, never mixed: exact `BigRational`
//! arithmetic for everything on concrete families (n <= 64), and
//! log-gamma floating point for the inequality margins where n is
//! astronomically large.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::util::{binomial, ln_gamma, log_binomial_real, log_sum_exp};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("argument out of range: {0}")]
    BadRange(String),
    #[error("outside the inequality window: {0}")]
    RangeViolation(String),
}

/// A subset of `[n]` stored as the low `n` bits of a `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetMask {
    pub bits: u64,
    pub ground: u32,
}

impl SubsetMask {
    pub fn new(bits: u64, ground: u32) -> SubsetMask {
        assert!(ground <= 64);
        if ground < 64 {
            assert!(bits < 1 << ground, "mask has bits outside the ground set");
        }
        SubsetMask { bits, ground }
    }

    pub fn size(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_subset_of(&self, other: &SubsetMask) -> bool {
        self.bits & !other.bits == 0
    }
}

/// Bitmask of the full ground set `[n]`.
pub fn full_mask(n: u32) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// An ordered duplicate-free collection of subsets of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    n: u32,
    members: Vec<u64>,
}

impl SetFamily {
    pub fn new(n: u32, mut members: Vec<u64>) -> SetFamily {
        assert!(n <= 64);
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            assert!(m & !full_mask(n) == 0, "member outside the ground set");
        }
        SetFamily { n, members }
    }

    pub fn empty(n: u32) -> SetFamily {
        SetFamily { n, members: Vec::new() }
    }

    /// The whole cube `2^[n]`.
    pub fn full_cube(n: u32) -> SetFamily {
        assert!(n <= 24, "full cube enumeration capped at n = 24");
        SetFamily { n, members: (0..1u64 << n).collect() }
    }

    pub fn ground(&self) -> u32 {
        self.n
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, mask: u64) -> bool {
        self.members.binary_search(&mask).is_ok()
    }

    pub fn union(&self, other: &SetFamily) -> SetFamily {
        assert_eq!(self.n, other.n);
        let mut members = self.members.clone();
        members.extend_from_slice(&other.members);
        SetFamily::new(self.n, members)
    }

    /// The complemented family `{[n] \ F : F in self}`.
    pub fn complemented(&self) -> SetFamily {
        let full = full_mask(self.n);
        SetFamily::new(self.n, self.members.iter().map(|&m| full & !m).collect())
    }

    /// Member count per cardinality, indexed 0..=n.
    pub fn layer_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.n as usize + 1];
        for &m in &self.members {
            counts[m.count_ones() as usize] += 1;
        }
        counts
    }
}

/// All k-subsets of `[n]`, in increasing mask order.
pub fn layer(n: u32, k: u32) -> Result<SetFamily, FamilyError> {
    if k > n {
        return Err(FamilyError::BadRange(format!("layer({n}, {k})")));
    }
    if k == 0 {
        return Ok(SetFamily { n, members: vec![0] });
    }
    let mut members = Vec::with_capacity(binomial(n as u64, k as u64) as usize);
    let mut mask: u64 = (1 << k) - 1;
    let limit: u128 = 1u128 << n;
    while (mask as u128) < limit {
        members.push(mask);
        // Gosper's hack: next k-subset in increasing order.
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        if r == 0 {
            break;
        }
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    Ok(SetFamily { n, members })
}

/// The order in which layers count as "middle": floor(n/2) first, then
/// alternating up/down.
pub fn middle_layer_order(n: u32) -> Vec<u32> {
    let k0 = n / 2;
    let mut ks = vec![k0];
    let mut step = 1u32;
    loop {
        let up = k0 + step;
        let down = k0.checked_sub(step);
        let mut pushed = false;
        if up <= n {
            ks.push(up);
            pushed = true;
        }
        if let Some(d) = down {
            ks.push(d);
            pushed = true;
        }
        if !pushed {
            break;
        }
        step += 1;
    }
    ks
}

/// Union of the `h` layers closest to n/2 (ties resolved toward floor(n/2)
/// first, then alternating up/down).
pub fn middle_layers(n: u32, h: u32) -> Result<SetFamily, FamilyError> {
    if h == 0 || h > n + 1 {
        return Err(FamilyError::BadRange(format!("middle_layers({n}, {h})")));
    }
    let mut members = Vec::new();
    for &k in middle_layer_order(n).iter().take(h as usize) {
        members.extend_from_slice(layer(n, k)?.members());
    }
    Ok(SetFamily::new(n, members))
}

/// Convexity: `F ⊆ G ⊆ F'` with `F, F'` in the family forces `G` in.
///
/// Checked locally: for every member pair `A ⊂ B` with gap at least 2,
/// every single-element extension of `A` inside `B` must be a member.
pub fn is_convex(family: &SetFamily) -> bool {
    for &b in family.members() {
        for &a in family.members() {
            if a & !b != 0 || a == b {
                continue;
            }
            let diff = b & !a;
            if diff.count_ones() < 2 {
                continue;
            }
            let mut rest = diff;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                if !family.contains(a | bit) {
                    return false;
                }
                rest ^= bit;
            }
        }
    }
    true
}

fn big_binomial(n: u64, k: u64) -> BigInt {
    BigInt::from(binomial(n, k))
}

/// Exact Lubell mass: sum over members of 1 / C(n, |F|).
pub fn lubell_mass(family: &SetFamily) -> BigRational {
    let n = family.ground() as u64;
    let mut total = BigRational::zero();
    for (k, &count) in family.layer_counts().iter().enumerate() {
        if count > 0 {
            total += BigRational::new(BigInt::from(count), big_binomial(n, k as u64));
        }
    }
    total
}

/// Lubell mass of the members below `g` (inclusive), computed in the
/// |g|-cube: sum over members `F ⊆ g` of 1 / C(|g|, |F|).
pub fn lambda_below(family: &SetFamily, g: SubsetMask) -> BigRational {
    let gsize = g.size() as u64;
    let mut total = BigRational::zero();
    for &m in family.members() {
        if m & !g.bits == 0 {
            total += BigRational::new(BigInt::from(1), big_binomial(gsize, m.count_ones() as u64));
        }
    }
    total
}

/// A size band around n/2: members are the sets whose size differs from n/2
/// by at most `scale * sqrt(n ln n)`. The plain band uses scale 2; the
/// poset-widened band uses scale `4|T|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandSpec {
    pub n: u64,
    pub scale: u64,
    pub poset_size: Option<usize>,
}

impl BandSpec {
    /// The band with half-width 2 sqrt(n ln n).
    pub fn plain(n: u64) -> BandSpec {
        BandSpec { n, scale: 2, poset_size: None }
    }

    /// The band with half-width 4|T| sqrt(n ln n).
    pub fn poset_scaled(n: u64, poset_size: usize) -> BandSpec {
        BandSpec { n, scale: 4 * poset_size as u64, poset_size: Some(poset_size) }
    }

    pub fn half_width(&self) -> f64 {
        let n = self.n as f64;
        self.scale as f64 * (n * n.ln()).sqrt()
    }

    /// Integer bound for the squared comparison: membership is
    /// `(2s - n)^2 <= ceil((2 * scale)^2 * n * ln n)`. The ceiling is the
    /// fixed rounding rule, avoiding float boundary flakiness.
    pub fn squared_bound(&self) -> u128 {
        let n = self.n as f64;
        let raw = (2.0 * self.scale as f64).powi(2) * n * n.ln();
        raw.ceil() as u128
    }

    /// Band membership by set size alone (the band only depends on |F|).
    pub fn contains_size(&self, size: u64) -> bool {
        let lhs = (2i128 * size as i128 - self.n as i128).pow(2) as u128;
        lhs <= self.squared_bound()
    }
}

/// Band membership of a mask.
pub fn in_band(f: SubsetMask, band: &BandSpec) -> bool {
    assert_eq!(f.ground as u64, band.n);
    band.contains_size(f.size() as u64)
}

/// The members of `family` that are subsets of `g` of size `|g| - j`.
pub fn shadow_in_family(
    family: &SetFamily,
    g: SubsetMask,
    j: u32,
) -> Result<SetFamily, FamilyError> {
    if j > g.size() {
        return Err(FamilyError::BadRange(format!(
            "shadow depth {j} exceeds |G| = {}",
            g.size()
        )));
    }
    let want = g.size() - j;
    let members = family
        .members()
        .iter()
        .copied()
        .filter(|&m| m & !g.bits == 0 && m.count_ones() == want)
        .collect();
    Ok(SetFamily::new(family.ground(), members))
}

/// The three-way shadow partition of a family, recording for the first two
/// parts the smallest qualifying shadow depth j(F).
#[derive(Debug, Clone)]
pub struct ShadowPartition {
    pub f1: SetFamily,
    pub f2: SetFamily,
    pub f3: SetFamily,
    pub epsilon: f64,
    pub k: u32,
    /// Smallest qualifying j for each member of f1 and f2.
    pub j_of: BTreeMap<u64, u32>,
}

/// Partitions `family` by in-family shadow density:
/// - F1: members with some `1 <= j <= 1000k` where the j-shadow inside the
///   family has at least `eps/(10000k) * C(|F|, j)` sets;
/// - F2: the rest with some `j >= 1000k + 1` where the j-shadow has at
///   least `C(|F|, j - 22)` sets;
/// - F3: everything else.
pub fn partition_f123(family: &SetFamily, epsilon: f64, k: u32) -> ShadowPartition {
    assert!(epsilon > 0.0 && k >= 3, "partition needs eps > 0 and k >= 3");
    let members = family.members();
    // shadow_counts[idx][j] = |S_j(F)| for member idx, j = |F| - |G|.
    let n = family.ground();
    let shadow_counts: Vec<Vec<u64>> = if n <= 24 && members.len() > 1 << (n / 2) {
        shadow_counts_by_sos(family)
    } else {
        let mut counts: Vec<Vec<u64>> = members
            .iter()
            .map(|&m| vec![0u64; m.count_ones() as usize + 1])
            .collect();
        for (fi, &f) in members.iter().enumerate() {
            let fsize = f.count_ones();
            for &g in members.iter() {
                if g & !f == 0 && g != f {
                    counts[fi][(fsize - g.count_ones()) as usize] += 1;
                }
            }
        }
        counts
    };
    let threshold_upper = 1000 * k;
    let mut f1 = Vec::new();
    let mut f2 = Vec::new();
    let mut f3 = Vec::new();
    let mut j_of = BTreeMap::new();
    for (fi, &f) in members.iter().enumerate() {
        let fsize = f.count_ones() as u64;
        let counts = &shadow_counts[fi];
        let mut found = None;
        for j in 1..=threshold_upper.min(fsize as u32) {
            let need = epsilon / (10_000.0 * k as f64) * binomial(fsize, j as u64) as f64;
            if counts[j as usize] as f64 >= need {
                found = Some(j);
                break;
            }
        }
        if let Some(j) = found {
            f1.push(f);
            j_of.insert(f, j);
            continue;
        }
        let mut found2 = None;
        for j in (threshold_upper + 1)..=fsize as u32 {
            if counts[j as usize] as u128 >= binomial(fsize, j as u64 - 22) {
                found2 = Some(j);
                break;
            }
        }
        if let Some(j) = found2 {
            f2.push(f);
            j_of.insert(f, j);
        } else {
            f3.push(f);
        }
    }
    let n = family.ground();
    ShadowPartition {
        f1: SetFamily::new(n, f1),
        f2: SetFamily::new(n, f2),
        f3: SetFamily::new(n, f3),
        epsilon,
        k,
        j_of,
    }
}

/// Dense-family shadow counting by sum-over-subsets DP: one pass per layer
/// gives, for every mask, the number of family members of that layer below
/// it. O((n+1) * n * 2^n) instead of quadratic in the family size.
fn shadow_counts_by_sos(family: &SetFamily) -> Vec<Vec<u64>> {
    let n = family.ground();
    let members = family.members();
    let mut out: Vec<Vec<u64>> =
        members.iter().map(|&m| vec![0u64; m.count_ones() as usize + 1]).collect();
    let mut table = vec![0u32; 1 << n];
    for s in 0..=n {
        table.iter_mut().for_each(|x| *x = 0);
        for &m in members {
            if m.count_ones() == s {
                table[m as usize] = 1;
            }
        }
        for b in 0..n {
            for mask in 0..1usize << n {
                if mask >> b & 1 == 1 {
                    table[mask] += table[mask ^ (1 << b)];
                }
            }
        }
        for (fi, &f) in members.iter().enumerate() {
            let fsize = f.count_ones();
            if s < fsize {
                out[fi][(fsize - s) as usize] = table[f as usize] as u64;
            }
        }
    }
    out
}

/// ln C(n, k) for integer arguments via log-gamma.
pub fn log_binomial(n: u64, k: u64) -> f64 {
    log_binomial_real(n as f64, k as f64)
}

/// Signed log-margins (positive = inequality satisfied at this n) of the
/// three large-n binomial inequalities, with any o(.) factor read as "at
/// most" at the given n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma10Report {
    pub n: u64,
    pub k: u32,
    pub j: u64,
    /// 20 ln n  -  ln [ C(n + 2s, j) / C(n - 2s, j) ], s = sqrt(n ln n).
    pub ratio_margin: f64,
    /// ln [ C(n/2 - 2s, j - 22) / s ]  -  ln sum_{i=ceil(j/k)}^{j}
    /// C(k n^{1/3} j, i) C(n/2 + 2s, j - i).
    pub sum_margin: f64,
    /// ln [ C(n/2 - 2s, j - 22) / s ]  -  ln C(n^{2/3} + k n^{1/3} j, j).
    pub single_margin: f64,
}

impl Lemma10Report {
    pub fn all_positive(&self) -> bool {
        self.ratio_margin > 0.0 && self.sum_margin > 0.0 && self.single_margin > 0.0
    }
}

/// Evaluates the three inequality margins in log space. The window
/// `100k <= j <= 4 sqrt(n ln n)` is enforced.
pub fn check_lemma10(n: u64, k: u32, j: u64) -> Result<Lemma10Report, FamilyError> {
    let nf = n as f64;
    let s = (nf * nf.ln()).sqrt();
    let j_max = (4.0 * s).floor() as u64;
    if j < 100 * k as u64 || j > j_max {
        return Err(FamilyError::RangeViolation(format!(
            "j = {j} outside [100k, 4 sqrt(n ln n)] = [{}, {j_max}]",
            100 * k as u64
        )));
    }
    let jf = j as f64;
    // ln of the ratio C(n + 2s, j) / C(n - 2s, j), term by term so the two
    // near-equal halves never meet in a subtraction.
    let mut ratio = 0.0;
    for i in 0..j {
        ratio += ((nf + 2.0 * s - i as f64) / (nf - 2.0 * s - i as f64)).ln();
    }
    let ratio_margin = 20.0 * nf.ln() - ratio;

    // Shared right-hand side of (2) and (3).
    let rhs = log_binomial_real(nf / 2.0 - 2.0 * s, jf - 22.0) - s.ln();

    // Sum over i of C(k n^{1/3} j, i) C(n/2 + 2s, j - i), with both
    // binomials updated incrementally (one multiplicative factor per step).
    let pool = k as f64 * nf.powf(1.0 / 3.0) * jf;
    let x2 = nf / 2.0 + 2.0 * s;
    let i_lo = (jf / k as f64).ceil() as u64;
    let mut lb_pool = log_binomial_real(pool, i_lo as f64);
    let mut lb_rest = log_binomial_real(x2, (j - i_lo) as f64);
    let mut terms = Vec::with_capacity((j - i_lo + 1) as usize);
    for i in i_lo..=j {
        terms.push(lb_pool + lb_rest);
        if i < j {
            lb_pool += ((pool - i as f64) / (i + 1) as f64).ln();
            let m = (j - i) as f64;
            lb_rest -= ((x2 - m + 1.0) / m).ln();
        }
    }
    let sum_margin = rhs - log_sum_exp(&terms);

    let single = log_binomial_real(nf.powf(2.0 / 3.0) + pool, jf);
    let single_margin = rhs - single;

    Ok(Lemma10Report { n, k, j, ratio_margin, sum_margin, single_margin })
}

/// ln Gamma, exposed for callers that need raw log-space terms.
pub fn log_gamma(x: f64) -> f64 {
    ln_gamma(x)
}

/// Exact binomial coefficient (valid through n = 64).
pub fn binomial_u128(n: u64, k: u64) -> u128 {
    binomial(n, k)
}

/// A uniformly random family: each mask independently with probability
/// `density`.
pub fn random_family(n: u32, density: f64, rng: &mut impl rand::Rng) -> SetFamily {
    assert!(n <= 20);
    let members = (0..1u64 << n)
        .filter(|_| rng.gen_bool(density))
        .collect();
    SetFamily::new(n, members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rational(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn layer_sizes() {
        assert_eq!(layer(4, 2).unwrap().len(), 6);
        assert_eq!(layer(5, 0).unwrap().members(), &[0]);
        assert!(layer(3, 4).is_err());
    }

    #[test]
    fn middle_layer_selection() {
        assert_eq!(middle_layers(4, 1).unwrap(), layer(4, 2).unwrap());
        let m52 = middle_layers(5, 2).unwrap();
        assert_eq!(m52.len(), 20);
        assert!(m52.members().iter().all(|m| {
            let s = m.count_ones();
            s == 2 || s == 3
        }));
        // Order of middles: floor(n/2) first, then up.
        assert_eq!(&middle_layer_order(5)[..2], &[2, 3]);
        assert_eq!(&middle_layer_order(4)[..3], &[2, 3, 1]);
    }

    #[test]
    fn convexity_examples() {
        assert!(is_convex(&middle_layers(5, 2).unwrap()));
        // {∅, [2]} misses the singletons.
        assert!(!is_convex(&SetFamily::new(2, vec![0b00, 0b11])));
        assert!(is_convex(&katona_tarjan(5)));
        for h in 1..=5 {
            assert!(is_convex(&middle_layers(4, h).unwrap()));
        }
    }

    /// The two-shifted-copies family: all floor((n-1)/2)-subsets of [n-1]
    /// plus the same sets with element n added.
    pub(crate) fn katona_tarjan(n: u32) -> SetFamily {
        let base = layer(n - 1, (n - 1) / 2).unwrap();
        let mut members: Vec<u64> = base.members().to_vec();
        members.extend(base.members().iter().map(|&m| m | 1 << (n - 1)));
        SetFamily::new(n, members)
    }

    #[test]
    fn lubell_mass_examples() {
        assert_eq!(lubell_mass(&SetFamily::full_cube(3)), rational(4, 1));
        assert_eq!(lubell_mass(&layer(6, 3).unwrap()), rational(1, 1));
        let f = SetFamily::new(3, vec![0b000, 0b001, 0b111]);
        assert_eq!(lubell_mass(&f), rational(7, 3));
    }

    #[test]
    fn lambda_below_examples() {
        let chain = SetFamily::new(2, vec![0b00, 0b01, 0b11]);
        let top = SubsetMask::new(0b11, 2);
        assert_eq!(lambda_below(&chain, top), rational(5, 2));
        // A minimal member sees only itself.
        let f = SetFamily::new(3, vec![0b001, 0b011, 0b110]);
        assert_eq!(lambda_below(&f, SubsetMask::new(0b001, 3)), rational(1, 1));
    }

    #[test]
    fn band_membership() {
        let band = BandSpec::plain(100);
        assert!((band.half_width() - 42.919).abs() < 1e-2);
        assert!(band.contains_size(50));
        assert!(band.contains_size(80));
        assert!(!band.contains_size(93));
        let band = BandSpec::plain(10_000);
        assert!((band.half_width() - 606.9).abs() < 0.1);
        // 5500 is 500 away from the center, inside half-width ~607.
        assert!(band.contains_size(5500));
        assert!(!band.contains_size(5700));
        // Exact midpoint is always inside.
        for n in [2u64, 7, 64, 1001] {
            assert!(BandSpec::plain(n).contains_size(n / 2));
        }
    }

    #[test]
    fn in_band_by_mask() {
        let band = BandSpec::plain(6);
        assert!(in_band(SubsetMask::new(0b000111, 6), &band));
        // At n = 6 the half-width exceeds n/2, so even the extremes fit.
        assert!(in_band(SubsetMask::new(0, 6), &band));
        let tight = BandSpec::plain(100);
        assert!(!tight.contains_size(0));
    }

    #[test]
    fn band_monotone_in_poset_size() {
        for n in [100u64, 10_000] {
            let plain = BandSpec::plain(n);
            let wide = BandSpec::poset_scaled(n, 1);
            for s in 0..=n.min(200) {
                if plain.contains_size(s) {
                    assert!(wide.contains_size(s));
                }
            }
        }
    }

    #[test]
    fn shadow_examples() {
        let cube = SetFamily::full_cube(4);
        let top = SubsetMask::new(0b1111, 4);
        assert_eq!(shadow_in_family(&cube, top, 0).unwrap().members(), &[0b1111]);
        assert_eq!(shadow_in_family(&cube, top, 1).unwrap().len(), 4);
        let m62 = middle_layers(6, 2).unwrap();
        let g = SubsetMask::new(0b001111, 6);
        let sh = shadow_in_family(&m62, g, 1).unwrap();
        assert_eq!(sh.len(), 4);
        assert!(shadow_in_family(&m62, g, 5).is_err());
    }

    #[test]
    fn partition_single_layer_is_all_f3() {
        let f = layer(6, 3).unwrap();
        let part = partition_f123(&f, 0.5, 3);
        assert!(part.f1.is_empty() && part.f2.is_empty());
        assert_eq!(part.f3, f);
    }

    #[test]
    fn partition_dense_cube_puts_non_bottom_in_f1() {
        // Every non-empty set F in the full cube has |S_1(F)| = |F| >=
        // eps/(10000k) * |F|, so everything except the empty set lands in
        // F1 with j = 1. (At these n the plain band covers every size, so
        // the full cube is band-restricted already.)
        for n in [5u32, 12] {
            let f = SetFamily::full_cube(n);
            let part = partition_f123(&f, 0.5, 3);
            assert_eq!(part.f3.members(), &[0], "n={n}");
            assert!(part.f2.is_empty(), "n={n}");
            assert_eq!(part.f1.len(), (1usize << n) - 1, "n={n}");
            assert!(part.j_of.values().all(|&j| j == 1), "n={n}");
        }
    }

    #[test]
    fn partition_is_a_partition() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let f = random_family(8, 0.4, &mut rng);
            let part = partition_f123(&f, 0.3, 3);
            let mut all: Vec<u64> = part
                .f1
                .members()
                .iter()
                .chain(part.f2.members())
                .chain(part.f3.members())
                .copied()
                .collect();
            all.sort_unstable();
            assert_eq!(all, f.members());
        }
    }

    #[test]
    fn log_binomial_small_values() {
        assert!((log_binomial(4, 2) - 6.0f64.ln()).abs() < 1e-12);
        assert!((log_binomial(10, 5) - 252.0f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn lemma10_window_enforced() {
        assert!(matches!(
            check_lemma10(1_000_000, 3, 100),
            Err(FamilyError::RangeViolation(_))
        ));
        assert!(matches!(
            check_lemma10(1_000_000, 3, 10_000_000),
            Err(FamilyError::RangeViolation(_))
        ));
        assert!(check_lemma10(1_000_000, 3, 300).is_ok());
    }

    #[test]
    fn lemma10_ratio_margin_positive_at_desk_scale() {
        // Inequality (1) already holds at n = 10^6 over the whole window.
        for &j in &[300u64, 1000, 14867] {
            let rep = check_lemma10(1_000_000, 3, j).unwrap();
            assert!(rep.ratio_margin > 0.0, "j = {j}: {rep:?}");
        }
    }

    #[test]
    fn lemma10_margins_at_astronomical_n() {
        // All three inequalities hold comfortably once n is genuinely
        // large; n = 10^18 is inside the asymptotic regime for k = 3.
        let n = 1_000_000_000_000_000_000u64;
        for &j in &[300u64, 1000, 100_000] {
            let rep = check_lemma10(n, 3, j).unwrap();
            assert!(rep.all_positive(), "j = {j}: {rep:?}");
        }
    }

    #[test]
    fn lubell_bound_on_random_families() {
        // |F| <= lambda_n(F) * C(n, floor(n/2)) on >= 100 random families.
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut checked = 0;
        for n in [6u32, 10, 16] {
            for _ in 0..40 {
                let f = random_family(n, 0.3, &mut rng);
                let mass = lubell_mass(&f);
                let bound = mass * BigRational::from_i64(binomial(n as u64, n as u64 / 2) as i64).unwrap();
                assert!(BigRational::from_i64(f.len() as i64).unwrap() <= bound);
                checked += 1;
            }
        }
        assert!(checked >= 100);
    }
}
