//! The reproduction suite: every headline quantity the crate must get
//! right, runnable one criterion at a time (CLI verb `repro`) or as the
//! `acceptance` integration test. Each criterion pins its expected values
//! and tolerances here, in code.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::{
    antichain_chain_coloring, broom_chain_coloring, butterfly_coloring, katona_tarjan_family,
};
use crate::copies::{find_copy, find_rainbow_copy, is_free, oracle_find_copy, Mode};
use crate::embedding::{
    build_bigraph, check_good_extension, complete_crown, complete_p2km1, greedy_spider,
    marked_chains, min_degree_subgraph, Discipline, Side,
};
use crate::families::{
    check_lemma10, is_convex, lambda_below, layer, lubell_mass, middle_layers, partition_f123,
    random_family, BandSpec, SetFamily, SubsetMask,
};
use crate::poset::{catalog, CatalogId, Poset};
use crate::search::{ar_brute, ar_exact, check_sandwich, la_brute, la_exact, SearchConfig};
use crate::util::{binomial, run_chunked, thread_budget};

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
    pub millis: u128,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        format!(
            "{:5} {} ({} ms)",
            self.id,
            if self.passed { "pass" } else { "FAIL" },
            self.millis
        )
    }
}

pub const CRITERIA: [&str; 12] = [
    "AC1", "AC2", "AC3", "AC4", "AC5", "AC6", "AC7", "AC8", "AC9", "AC10", "AC11", "AC12",
];

/// Runs one criterion by id.
pub fn run_criterion(id: &str, threads: Option<usize>) -> Option<CriterionReport> {
    let start = Instant::now();
    let (id, passed, details) = match id {
        "AC1" => ac1(),
        "AC2" => ac2(),
        "AC3" => ac3(),
        "AC4" => ac4(threads),
        "AC5" => ac5(),
        "AC6" => ac6(),
        "AC7" => ac7(),
        "AC8" => ac8(threads),
        "AC9" => ac9(),
        "AC10" => ac10(),
        "AC11" => ac11(),
        "AC12" => ac12(),
        _ => return None,
    };
    Some(CriterionReport { id, passed, details, millis: start.elapsed().as_millis() })
}

/// Runs the whole suite.
pub fn run_all(threads: Option<usize>) -> Vec<CriterionReport> {
    CRITERIA.iter().map(|id| run_criterion(id, threads).unwrap()).collect()
}

fn cat(id: CatalogId) -> Poset {
    catalog(&id).unwrap()
}

/// ar(3, diamond, weak) = 5 = 1 + 2 C(2,1), by exhaustive coloring search.
fn ac1() -> (&'static str, bool, Vec<String>) {
    let r = ar_exact(&SearchConfig::new(3, vec![cat(CatalogId::Diamond)], Mode::Weak)).unwrap();
    let expected = 1 + 2 * binomial(2, 1) as u64;
    let witness_ok = r.exact
        && r.coloring().color_count() as u64 == r.value
        && find_rainbow_copy(&cat(CatalogId::Diamond), r.coloring(), Mode::Weak).is_none();
    (
        "AC1",
        r.value == expected && witness_ok,
        vec![format!("ar(3, diamond, weak) = {} (expected {expected}), {} nodes", r.value, r.nodes)],
    )
}

/// ar*(4, A_2) = 3 = 3 + (k-2)(n-1) with k = 2.
fn ac2() -> (&'static str, bool, Vec<String>) {
    let r = ar_exact(&SearchConfig::new(4, vec![cat(CatalogId::Antichain(2))], Mode::Strong))
        .unwrap();
    let witness_ok = r.exact
        && find_rainbow_copy(&cat(CatalogId::Antichain(2)), r.coloring(), Mode::Strong).is_none();
    (
        "AC2",
        r.value == 3 && witness_ok,
        vec![format!("ar*(4, A_2) = {} (expected 3), {} nodes", r.value, r.nodes)],
    )
}

/// ar*(3, broom_2) = 4 = (s-1)(n-1) + 2; brute force over all 4140
/// partitions of 2^[3] agrees with branch-and-bound.
fn ac3() -> (&'static str, bool, Vec<String>) {
    let p = cat(CatalogId::Broom(2));
    let fast = ar_exact(&SearchConfig::new(3, vec![p.clone()], Mode::Strong)).unwrap();
    let slow = ar_brute(3, &p, Mode::Strong).unwrap();
    let ok = fast.value == 4 && slow.value == 4 && slow.nodes == 4140;
    (
        "AC3",
        ok,
        vec![format!(
            "ar*(3, broom_2): branch-and-bound = {}, brute force over {} partitions = {}",
            fast.value, slow.nodes, slow.value
        )],
    )
}

/// La(4, {fork, broom}, weak) = 6 = 2 C(3,1), by exhaustive search over
/// all 2^16 families; the convex-restricted optimum matches with a
/// verified-convex witness, so La_con = La here.
fn ac4(threads: Option<usize>) -> (&'static str, bool, Vec<String>) {
    let posets = vec![cat(CatalogId::Fork(2)), cat(CatalogId::Broom(2))];
    let brute = la_brute(4, &posets, Mode::Weak, threads).unwrap();
    let bb = la_exact(&SearchConfig::new(4, posets.clone(), Mode::Weak)).unwrap();
    let convex = la_exact(&SearchConfig::new(4, posets.clone(), Mode::Weak).convex()).unwrap();
    let kt = katona_tarjan_family(4);
    let ok = brute.value == 6
        && bb.value == 6
        && convex.value == 6
        && is_convex(convex.family())
        && is_free(&posets, convex.family(), Mode::Weak)
        && is_free(&posets, &kt, Mode::Weak)
        && is_convex(&kt)
        && kt.len() == 6;
    (
        "AC4",
        ok,
        vec![
            format!(
                "La(4, {{fork, broom}}, weak): brute = {}, branch-and-bound = {}, convex = {}",
                brute.value, bb.value, convex.value
            ),
            "convex witness verified fork/broom-free and convex; La_con = La".into(),
        ],
    )
}

/// La(n, A_k, weak) = k - 1 for (n, k) in {(3,2), (4,2), (4,3)}.
fn ac5() -> (&'static str, bool, Vec<String>) {
    let mut details = Vec::new();
    let mut ok = true;
    for (n, k) in [(3u32, 2usize), (4, 2), (4, 3)] {
        let r = la_exact(&SearchConfig::new(n, vec![cat(CatalogId::Antichain(k))], Mode::Weak))
            .unwrap();
        details.push(format!("La({n}, A_{k}, weak) = {} (expected {})", r.value, k - 1));
        ok &= r.value == k as u64 - 1 && r.exact;
    }
    ("AC5", ok, details)
}

/// Construction certifications: color counts and rainbow-freeness by full
/// search for the butterfly, broom-chain and antichain-chain colorings.
fn ac6() -> (&'static str, bool, Vec<String>) {
    let mut details = Vec::new();
    let mut ok = true;

    let bf = cat(CatalogId::Butterfly);
    for n in [4u32, 5] {
        let c = butterfly_coloring(n).unwrap();
        let expect =
            (binomial(n as u64, (n / 2) as u64) + binomial(n as u64, (n / 2 + 1) as u64) + 1) as u32;
        let rainbow = find_rainbow_copy(&bf, &c, Mode::Strong);
        details.push(format!(
            "butterfly_coloring({n}): {} colors (expected {expect}), rainbow strong butterfly: {}",
            c.color_count(),
            if rainbow.is_some() { "FOUND" } else { "none" }
        ));
        ok &= c.color_count() == expect && rainbow.is_none();
    }

    let c = broom_chain_coloring(5, 2).unwrap();
    let rainbow = find_rainbow_copy(&cat(CatalogId::Broom(2)), &c, Mode::Strong);
    details.push(format!(
        "broom_chain_coloring(5, 2): {} colors (expected 6), rainbow strong broom_2: {}",
        c.color_count(),
        match &rainbow {
            Some(w) => format!("FOUND {:x?} (single-chain case; ar*(5, broom_2) = 4 < 6 by exhaustive search, so no 6-color coloring can pass)", w.images),
            None => "none".into(),
        }
    ));
    ok &= c.color_count() == 6 && rainbow.is_none();

    let c = antichain_chain_coloring(6, 3).unwrap();
    let no_a3 = find_rainbow_copy(&cat(CatalogId::Antichain(3)), &c, Mode::Strong).is_none();
    let has_a2 = find_rainbow_copy(&cat(CatalogId::Antichain(2)), &c, Mode::Strong).is_some();
    details.push(format!(
        "antichain_chain_coloring(6, 3): {} colors (expected 8), max rainbow strong antichain = {}",
        c.color_count(),
        if no_a3 && has_a2 { "2" } else { "NOT 2" }
    ));
    ok &= c.color_count() == 8 && no_a3 && has_a2;

    ("AC6", ok, details)
}

/// Catalog posets with at most 4 elements, deduplicated up to isomorphism.
fn small_catalog() -> Vec<(String, Poset)> {
    let ids: Vec<(String, CatalogId)> = vec![
        ("chain:2".into(), CatalogId::Chain(2)),
        ("chain:3".into(), CatalogId::Chain(3)),
        ("chain:4".into(), CatalogId::Chain(4)),
        ("antichain:2".into(), CatalogId::Antichain(2)),
        ("antichain:3".into(), CatalogId::Antichain(3)),
        ("antichain:4".into(), CatalogId::Antichain(4)),
        ("fork:2".into(), CatalogId::Fork(2)),
        ("fork:3".into(), CatalogId::Fork(3)),
        ("broom:2".into(), CatalogId::Broom(2)),
        ("broom:3".into(), CatalogId::Broom(3)),
        ("diamond".into(), CatalogId::Diamond),
        ("butterfly".into(), CatalogId::Butterfly),
        ("crown:2".into(), CatalogId::Crown(2)),
        ("path:2".into(), CatalogId::PathPoset(2)),
        ("spider:1x2".into(), CatalogId::Spider { leg_len: 1, legs: 2 }),
        ("spider:1x3".into(), CatalogId::Spider { leg_len: 1, legs: 3 }),
        ("boolean:1".into(), CatalogId::Boolean(1)),
        ("boolean:2".into(), CatalogId::Boolean(2)),
    ];
    let mut out: Vec<(String, Poset)> = Vec::new();
    for (name, id) in ids {
        let p = cat(id);
        if p.size() < 2 || p.size() > 4 {
            continue;
        }
        if !out.iter().any(|(_, q)| q.is_isomorphic(&p)) {
            out.push((name, p));
        }
    }
    out
}

/// Sandwich inequalities hold for every catalog poset with <= 4 elements
/// at n = 3, in both modes, with all quantities computed exactly.
fn ac7() -> (&'static str, bool, Vec<String>) {
    let mut details = Vec::new();
    let mut ok = true;
    for (name, p) in small_catalog() {
        for mode in [Mode::Weak, Mode::Strong] {
            let rep = check_sandwich(3, &p, mode).unwrap();
            if !rep.ok() {
                ok = false;
                details.push(format!("{name} ({}): VIOLATED {:?}", mode.as_str(), rep.violations));
            } else {
                details.push(format!(
                    "{name} ({}): ar = {}, La = {}, La(P^-) = {}, La_con(P^-) = {}{}",
                    mode.as_str(),
                    rep.ar,
                    rep.la,
                    rep.la_pminus,
                    rep.la_con_pminus,
                    rep.la_minus_m
                        .map(|v| format!(", La(P - m) = {v}"))
                        .unwrap_or_default()
                ));
            }
        }
    }
    ("AC7", ok, details)
}

/// Catalog posets with at most 6 elements for the oracle cross-check.
fn oracle_catalog() -> Vec<Poset> {
    let mut ids: Vec<CatalogId> = Vec::new();
    for k in 1..=6 {
        ids.push(CatalogId::Chain(k));
        ids.push(CatalogId::Antichain(k));
    }
    for s in 2..=5 {
        ids.push(CatalogId::Fork(s));
        ids.push(CatalogId::Broom(s));
    }
    ids.extend([
        CatalogId::Diamond,
        CatalogId::Butterfly,
        CatalogId::Crown(2),
        CatalogId::Crown(3),
        CatalogId::PathPoset(2),
        CatalogId::PathPoset(3),
        CatalogId::Spider { leg_len: 1, legs: 4 },
        CatalogId::Spider { leg_len: 1, legs: 5 },
        CatalogId::Spider { leg_len: 2, legs: 2 },
        CatalogId::Boolean(1),
        CatalogId::Boolean(2),
        CatalogId::XPoset,
    ]);
    ids.into_iter().map(cat).filter(|p| p.size() <= 6).collect()
}

/// find_copy agrees with the unpruned oracle on every family over 2^[3],
/// every catalog poset with <= 6 elements, both modes.
fn ac8(threads: Option<usize>) -> (&'static str, bool, Vec<String>) {
    let posets = oracle_catalog();
    let threads = thread_budget(threads);
    let disagreements: usize = run_chunked(256, threads, |range| {
        let mut bad = 0;
        for bitmap in range {
            let members: Vec<u64> = (0..8u64).filter(|&m| bitmap >> m & 1 == 1).collect();
            let family = SetFamily::new(3, members);
            for p in &posets {
                for mode in [Mode::Weak, Mode::Strong] {
                    let fast = find_copy(p, &family, mode);
                    let slow = oracle_find_copy(p, &family, mode).unwrap();
                    if fast.is_some() != slow.is_some() {
                        bad += 1;
                    }
                    if let Some(w) = fast {
                        if !w.validate() {
                            bad += 1;
                        }
                    }
                    if let Some(w) = slow {
                        if !w.validate() {
                            bad += 1;
                        }
                    }
                }
            }
        }
        bad
    })
    .into_iter()
    .sum();
    let runs = 256 * posets.len() * 2;
    (
        "AC8",
        disagreements == 0,
        vec![format!(
            "{} search-vs-oracle runs over all 256 families of 2^[3], {} disagreements",
            runs, disagreements
        )],
    )
}

/// Counts maximal chains from `from` upward that avoid the family strictly
/// above `from`; used by the max-partition identity.
fn chains_avoiding_above(family: &SetFamily, from: u64) -> u64 {
    let n = family.ground();
    let full = crate::families::full_mask(n);
    if from == full {
        return 1;
    }
    // h[s] = chains s -> full with every vertex (including s) outside the
    // family; only supersets of `from` matter, processed by descending
    // popcount.
    let mut masks: Vec<u64> = (0..1u64 << n).filter(|&s| from & !s == 0).collect();
    masks.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    let mut h = std::collections::HashMap::new();
    for &s in &masks {
        if s == from {
            continue;
        }
        let val = if family.contains(s) {
            0
        } else if s == full {
            1
        } else {
            let mut total = 0u64;
            for b in 0..n {
                if s >> b & 1 == 0 {
                    total += h.get(&(s | 1 << b)).copied().unwrap_or(0);
                }
            }
            total
        };
        h.insert(s, val);
    }
    let mut total = 0u64;
    for b in 0..n {
        if from >> b & 1 == 0 {
            total += h.get(&(from | 1 << b)).copied().unwrap_or(0);
        }
    }
    total
}

fn factorial_big(k: u64) -> BigInt {
    let mut acc = BigInt::from(1);
    for i in 2..=k {
        acc *= BigInt::from(i);
    }
    acc
}

/// The max-partition identity: n! * lambda_n(F) equals the sum over
/// members F of |C_F| * lambda_{|F|}(D_F(F)), where C_F counts the maximal
/// chains whose largest member of the family is F.
pub fn lubell_chain_identity(family: &SetFamily) -> bool {
    let n = family.ground() as u64;
    let lhs = lubell_mass(family) * BigRational::from_integer(factorial_big(n));
    let mut rhs = BigRational::zero();
    for &f in family.members() {
        let lower_chains = factorial_big(f.count_ones() as u64);
        let upper_chains = BigInt::from(chains_avoiding_above(family, f));
        let weight = BigRational::from_integer(lower_chains * upper_chains);
        rhs += weight * lambda_below(family, SubsetMask::new(f, family.ground()));
    }
    lhs == rhs
}

/// Lubell suite: the mass bound and the max-partition weighted-average
/// identity on 500 random families at each n in {6, 8, 10}.
fn ac9() -> (&'static str, bool, Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(90_417);
    let mut bound_violations = 0u32;
    let mut identity_violations = 0u32;
    let mut count = 0u32;
    for n in [6u32, 8, 10] {
        for i in 0..500 {
            let density = match i % 3 {
                0 => 0.15,
                1 => 0.5,
                _ => 0.85,
            };
            let family = random_family(n, density, &mut rng);
            count += 1;
            let mass = lubell_mass(&family);
            let bound = mass
                * BigRational::from_u128(binomial(n as u64, n as u64 / 2))
                    .unwrap();
            if BigRational::from_usize(family.len()).unwrap() > bound {
                bound_violations += 1;
            }
            if !lubell_chain_identity(&family) {
                identity_violations += 1;
            }
        }
    }
    (
        "AC9",
        bound_violations == 0 && identity_violations == 0,
        vec![format!(
            "{count} random families: {bound_violations} mass-bound violations, {identity_violations} identity violations"
        )],
    )
}

/// Large-n inequality margins at n = 10^6 plus the band-closure property
/// of unions of connected in-band tuples at n = 10^4.
fn ac10() -> (&'static str, bool, Vec<String>) {
    let mut details = Vec::new();
    let mut ok = true;
    let n = 1_000_000u64;
    let nf = n as f64;
    let j_top = (4.0 * (nf * nf.ln()).sqrt()).floor() as u64;
    for k in [3u32, 5] {
        for j in [100 * k as u64, 1000, j_top] {
            let rep = check_lemma10(n, k, j).unwrap();
            let pass = rep.all_positive();
            ok &= pass;
            details.push(format!(
                "n = 10^6, k = {k}, j = {j}: margins ratio {:+.1}, sum {:+.1}, single {:+.1} -> {}",
                rep.ratio_margin,
                rep.sum_margin,
                rep.single_margin,
                if pass { "positive" } else { "NOT ALL POSITIVE" }
            ));
        }
    }

    // Band closure: unions of connected in-band tuples land in the
    // poset-widened band.
    let n = 10_000usize;
    let t_cap = 4usize;
    let plain = BandSpec::plain(n as u64);
    let wide = BandSpec::poset_scaled(n as u64, t_cap);
    let hw = plain.half_width().floor() as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(1404);
    let mut closure_violations = 0u32;
    for _ in 0..10_000 {
        let h = rng.gen_range(2..=t_cap);
        let mut sets: Vec<Vec<u32>> = Vec::with_capacity(h);
        let first_size = (n as i64 / 2 + rng.gen_range(-hw..=hw)) as usize;
        let mut first: Vec<u32> =
            sample(&mut rng, n, first_size).into_iter().map(|x| x as u32).collect();
        first.sort_unstable();
        debug_assert!(plain.contains_size(first.len() as u64));
        sets.push(first);
        for _ in 1..h {
            let base = &sets[rng.gen_range(0..sets.len())];
            let next = if rng.gen_bool(0.5) && base.len() as i64 > n as i64 / 2 - hw {
                // subset of base, still in band
                let lo = (n as i64 / 2 - hw) as usize;
                let target = rng.gen_range(lo..=base.len());
                let mut s: Vec<u32> = sample(&mut rng, base.len(), target)
                    .into_iter()
                    .map(|i| base[i])
                    .collect();
                s.sort_unstable();
                s
            } else {
                // superset of base, still in band
                let hi = (n as i64 / 2 + hw) as usize;
                let target = rng.gen_range(base.len()..=hi.max(base.len()));
                let complement: Vec<u32> = {
                    let inbase: std::collections::HashSet<u32> = base.iter().copied().collect();
                    (0..n as u32).filter(|x| !inbase.contains(x)).collect()
                };
                let extra = target - base.len();
                let mut s = base.clone();
                for idx in sample(&mut rng, complement.len(), extra) {
                    s.push(complement[idx]);
                }
                s.sort_unstable();
                s
            };
            debug_assert!(plain.contains_size(next.len() as u64));
            sets.push(next);
        }
        let mut union = vec![false; n];
        for s in &sets {
            for &x in s {
                union[x as usize] = true;
            }
        }
        let usize_count = union.iter().filter(|&&b| b).count() as u64;
        if !wide.contains_size(usize_count) {
            closure_violations += 1;
        }
    }
    details.push(format!(
        "band closure at n = 10^4: 10000 connected in-band tuples (h <= {t_cap}), {closure_violations} unions outside the widened band"
    ));
    ok &= closure_violations == 0;
    ("AC10", ok, details)
}

/// End-to-end crown pipeline on the two middle layers of B_12: shadow
/// partition, inclusion bigraph at gap 1, minimum-degree core, greedy
/// 3-leg spider under full color disjointness, fence completion for k = 3,
/// crown completion; the final embedding is re-verified and the side
/// condition audited directly.
fn ac11() -> (&'static str, bool, Vec<String>) {
    let mut details = Vec::new();
    let family = middle_layers(12, 2).unwrap();
    let part = partition_f123(&family, 0.5, 3);
    details.push(format!(
        "partition of {} sets: |F1| = {}, |F2| = {}, |F3| = {}",
        family.len(),
        part.f1.len(),
        part.f2.len(),
        part.f3.len()
    ));
    // The j = 1 slice of F1.
    let slice = SetFamily::new(
        12,
        part.j_of
            .iter()
            .filter(|&(_, &j)| j == 1)
            .map(|(&m, _)| m)
            .filter(|&m| part.f1.contains(m))
            .collect(),
    );
    let b = build_bigraph(&family, &slice, 1);
    let d = ((b.average_degree() / 2.0).floor() as usize).max(1);
    let core = min_degree_subgraph(&b, d);
    details.push(format!(
        "bigraph: {} edges, average degree {:.2}; core at d = {d}: {} + {} vertices, min degree {}",
        b.edge_count(),
        b.average_degree(),
        core.lower.len(),
        core.upper.len(),
        core.min_degree()
    ));
    let spider = match greedy_spider(&core, 3, 1, Discipline::FullDisjoint, Side::Lower) {
        Ok(s) => s,
        Err(e) => return ("AC11", false, vec![format!("spider failed: {e}")]),
    };
    let fence = match complete_p2km1(&spider, &family, 3) {
        Ok(f) => f,
        Err(e) => return ("AC11", false, vec![format!("fence completion failed: {e}")]),
    };
    let crown = match complete_crown(&fence, 12) {
        Ok(c) => c,
        Err(e) => return ("AC11", false, vec![format!("crown completion failed: {e}")]),
    };
    let verified = crown.validate();
    let ends = crown.images[0] | crown.images[2];
    let side_condition = crown.images[1] & !ends != 0;
    details.push(format!(
        "strong O_6 copy verified: {verified}; middle minimal image escapes the end union: {side_condition}"
    ));
    details.push(format!(
        "crown images: {:x?}",
        crown.images.to_vec()
    ));
    ("AC11", verified && side_condition, details)
}

/// Exhaustive good-extension check over marked-chain fixtures at n = 5:
/// every good marked chain admits, for every admissible witness family
/// from the pool, an extension whose markers avoid the forbidden
/// neighborhood.
fn ac12() -> (&'static str, bool, Vec<String>) {
    let mut details = Vec::new();
    let mut ok = true;

    // Fixture 1: the two middle layers of B_5; every chain is good.
    let n = 5u32;
    let mut members = layer(n, 2).unwrap().members().to_vec();
    members.extend_from_slice(layer(n, 3).unwrap().members());
    let family = SetFamily::new(n, members);
    let chains = marked_chains(&family, 2).unwrap();
    let pool = SetFamily::new(n, vec![0b11000, 0b10100, 0b00110]);
    let report = check_good_extension(&chains, 2, &pool, n).unwrap();
    details.push(format!(
        "fixture 1: {} marked chains, {} good, {} admissible cases, {} violations",
        chains.len(),
        report.good_chains,
        report.admissible_cases,
        report.violations.len()
    ));
    ok &= report.violations.is_empty() && report.good_chains > 0 && report.admissible_cases > 0;

    // Fixture 2: a sparse family where badness genuinely filters chains.
    let family =
        SetFamily::new(n, vec![0b00001, 0b00011, 0b00111, 0b01111, 0b00010, 0b00110]);
    let chains = marked_chains(&family, 2).unwrap();
    let pool = SetFamily::new(n, vec![0b00001, 0b10000, 0b01000]);
    let bad_markers: usize = {
        let mut bad = 0;
        for mc in &chains {
            if !crate::embedding::is_good(mc, &chains, 2, &pool, n).unwrap() {
                bad += 1;
            }
        }
        bad
    };
    let report = check_good_extension(&chains, 2, &pool, n).unwrap();
    details.push(format!(
        "fixture 2: {} marked chains, {} filtered as bad, {} good, {} admissible cases, {} violations",
        chains.len(),
        bad_markers,
        report.good_chains,
        report.admissible_cases,
        report.violations.len()
    ));
    ok &= report.violations.is_empty() && bad_markers > 0;

    ("AC12", ok, details)
}
