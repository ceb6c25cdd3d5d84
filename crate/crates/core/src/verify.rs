//! Brute-force oracle harness.
//!
//! [`run_exhaustive`] sweeps every partition (and every ordered pair of partitions) of
//! every universe up to a given size and checks the lattice, closure-space and entropy
//! identities. [`run_independence`] checks the product-grid identities and
//! [`run_distribution_trials`] runs seeded random trials of the distribution inequalities.
//!
//! Random distributions are drawn with ChaCha8 seeded by `seed_from_u64(seed)`: each
//! trial draws a length `n` uniformly from `1..=n_max`, then `p` and `q` as independent
//! `uniform(0, 1]` vectors normalized by their sums, then a mixing weight in `[0, 1)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::distributions::{self as dist, Base, DistanceMatrix, Family, ProbDist};
use crate::entropy;
use crate::error::{Error, Result};
use crate::io::to_text;
use crate::pairs::{self, PairSet};
use crate::partition::{bell, enumerate_partitions, is_refinement, Partition, Universe};
use crate::rational::Rational;

pub const MAX_EXHAUSTIVE_N: usize = 6;
pub const MAX_GRID_SIZE: usize = 64;
/// Float tolerance for the Shannon / block-count / distribution identities.
pub const TOLERANCE: f64 = 1e-12;
/// Only the first few counterexamples of a check are kept verbatim.
pub const MAX_RECORDED_FAILURES: usize = 20;

/// Outcome of one check over one parameter setting.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub parameters: Map<String, Value>,
    pub cases: u64,
    pub failures: Vec<String>,
    pub failures_total: u64,
}

impl VerificationReport {
    fn new(name: &str, parameters: Value) -> Self {
        let parameters = match parameters {
            Value::Object(m) => m,
            _ => Map::new(),
        };
        VerificationReport {
            name: name.to_string(),
            parameters,
            cases: 0,
            failures: Vec::new(),
            failures_total: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures_total == 0
    }

    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(describe());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failures_total += 1;
        if self.failures.len() < MAX_RECORDED_FAILURES {
            self.failures.push(msg);
        }
    }
}

/// Join and meet implementations under test. Swapping one out is how the harness itself is
/// mutation-tested.
#[derive(Clone, Copy)]
pub struct LatticeOps {
    pub join: fn(&Partition, &Partition) -> Result<Partition>,
    pub meet: fn(&Partition, &Partition) -> Result<Partition>,
}

impl Default for LatticeOps {
    fn default() -> Self {
        LatticeOps {
            join: Partition::join,
            meet: Partition::meet,
        }
    }
}

/// A meet that is wrong whenever the true meet differs from the blob or the operands.
/// Used to confirm that the harness reports counterexamples.
pub fn corrupted_meet(pi: &Partition, sigma: &Partition) -> Result<Partition> {
    let m = pi.meet(sigma)?;
    if m.num_blocks() > 1 && m != *pi && m != *sigma {
        Ok(Partition::blob(pi.universe()))
    } else {
        Ok(m)
    }
}

fn pair_text(pi: &Partition, sigma: &Partition) -> String {
    format!("pi:\n{}sigma:\n{}", to_text(pi), to_text(sigma))
}

// Everything shared by the checks at one universe size.
struct Level {
    n: usize,
    universe: Universe,
    parts: Vec<Partition>,
    dits: Vec<PairSet>,
    indits: Vec<PairSet>,
    h: Vec<Rational>,
}

impl Level {
    fn new(n: usize) -> Result<Self> {
        let universe = Universe::new(n)?;
        let parts: Vec<Partition> = enumerate_partitions(&universe)?.collect();
        let dits = parts.iter().map(pairs::dit_set).collect();
        let indits = parts.iter().map(pairs::indit_set).collect();
        let h = parts.iter().map(entropy::logical_entropy).collect();
        Ok(Level {
            n,
            universe,
            parts,
            dits,
            indits,
            h,
        })
    }

    fn report(&self, name: &str) -> VerificationReport {
        VerificationReport::new(name, json!({ "n": self.n }))
    }

    fn pair_check(
        &self,
        name: &str,
        mut f: impl FnMut(usize, usize) -> std::result::Result<(), String>,
    ) -> VerificationReport {
        let mut r = self.report(name);
        for i in 0..self.parts.len() {
            for j in 0..self.parts.len() {
                let outcome = f(i, j);
                r.case(outcome.is_ok(), || {
                    format!(
                        "{}\n{}",
                        outcome.unwrap_err(),
                        pair_text(&self.parts[i], &self.parts[j])
                    )
                });
            }
        }
        r
    }

    fn single_check(
        &self,
        name: &str,
        mut f: impl FnMut(usize) -> std::result::Result<(), String>,
    ) -> VerificationReport {
        let mut r = self.report(name);
        for i in 0..self.parts.len() {
            let outcome = f(i);
            r.case(outcome.is_ok(), || {
                format!("{}\npi:\n{}", outcome.unwrap_err(), to_text(&self.parts[i]))
            });
        }
        r
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOLERANCE
}

type Check = fn(&Level, &LatticeOps) -> Vec<VerificationReport>;

fn join_dit_union(l: &Level, ops: &LatticeOps) -> Vec<VerificationReport> {
    vec![l.pair_check("join_dit_union", |i, j| {
        let join = (ops.join)(&l.parts[i], &l.parts[j]).map_err(|e| e.to_string())?;
        let union = l.dits[i].union(&l.dits[j]).map_err(|e| e.to_string())?;
        ensure(pairs::dit_set(&join) == union, || {
            format!("dit(join) != dit(pi) ∪ dit(sigma); join = {join}")
        })
    })]
}

fn meet_dit_interior(l: &Level, ops: &LatticeOps) -> Vec<VerificationReport> {
    vec![l.pair_check("meet_dit_interior", |i, j| {
        let meet = (ops.meet)(&l.parts[i], &l.parts[j]).map_err(|e| e.to_string())?;
        let inter = l.dits[i].intersection(&l.dits[j]).map_err(|e| e.to_string())?;
        ensure(pairs::dit_set(&meet) == pairs::interior(&inter), || {
            format!("dit(meet) != interior(dit(pi) ∩ dit(sigma)); meet = {meet}")
        })
    })]
}

fn refinement_dit_inclusion(l: &Level, _: &LatticeOps) -> Vec<VerificationReport> {
    vec![l.pair_check("refinement_dit_inclusion", |i, j| {
        let by_blocks = is_refinement(&l.parts[i], &l.parts[j]).map_err(|e| e.to_string())?;
        let by_dits = l.dits[i].is_subset(&l.dits[j]).map_err(|e| e.to_string())?;
        ensure(by_blocks == by_dits, || {
            format!("refinement by blocks = {by_blocks}, by dit inclusion = {by_dits}")
        })
    })]
}

fn mutual_set_nonempty(l: &Level, _: &LatticeOps) -> Vec<VerificationReport> {
    vec![l.pair_check("mutual_set_nonempty", |i, j| {
        if l.parts[i].is_blob() || l.parts[j].is_blob() {
            return Ok(());
        }
        let m = l.dits[i].intersection(&l.dits[j]).map_err(|e| e.to_string())?;
        ensure(!m.is_empty(), || "two non-blob partitions with empty Mut".into())
    })]
}

fn mutual_set_structural(l: &Level, _: &LatticeOps) -> Vec<VerificationReport> {
    vec![l.pair_check("mutual_set_structural", |i, j| {
        let direct = pairs::mutual_information_set(&l.parts[i], &l.parts[j])
            .map_err(|e| e.to_string())?;
        let built = pairs::mutual_information_set_structural(&l.parts[i], &l.parts[j])
            .map_err(|e| e.to_string())?;
        ensure(direct == built, || {
            format!("intersection {direct:?} != blockwise {built:?}")
        })
    })]
}

fn equivalence_union_cover(l: &Level, _: &LatticeOps) -> Vec<VerificationReport> {
    let full = PairSet::full(l.n);
    vec![l.pair_check("equivalence_union_cover", |i, j| {
        let u = l.indits[i].union(&l.indits[j]).map_err(|e| e.to_string())?;
        ensure(u != full || l.indits[i] == full || l.indits[j] == full, || {
            "E1 ∪ E2 = U×U with neither equal to U×U".into()
        })
    })]
}

fn modular_law(l: &Level, ops: &LatticeOps) -> Vec<VerificationReport> {
    vec![l.pair_check("modular_law", |i, j| {
        let m = entropy::logical_mutual_info(&l.parts[i], &l.parts[j]).map_err(|e| e.to_string())?;
        let join = (ops.join)(&l.parts[i], &l.parts[j]).map_err(|e| e.to_string())?;
        let rhs = l.h[i] + l.h[j] - entropy::logical_entropy(&join);
        ensure(m == rhs, || format!("m = {m} but h(pi) + h(sigma) - h(join) = {rhs}"))
    })]
}

fn submodular_inequality(l: &Level, ops: &LatticeOps) -> Vec<VerificationReport> {
    vec![l.pair_check("submodular_inequality", |i, j| {
        let join = (ops.join)(&l.parts[i], &l.parts[j]).map_err(|e| e.to_string())?;
        let meet = (ops.meet)(&l.parts[i], &l.parts[j]).map_err(|e| e.to_string())?;
        let lhs = entropy::logical_entropy(&meet) + entropy::logical_entropy(&join);
        let rhs = l.h[i] + l.h[j];
        ensure(lhs <= rhs, || format!("h(meet) + h(join) = {lhs} > {rhs}"))
    })]
}

fn lattice_bounds(l: &Level, ops: &LatticeOps) -> Vec<VerificationReport> {
    let le = |a: &Partition, b: &Partition| is_refinement(a, b).unwrap_or(false);
    vec![l.pair_check("lattice_bounds", |i, j| {
        let (p, s) = (&l.parts[i], &l.parts[j]);
        let join = (ops.join)(p, s).map_err(|e| e.to_string())?;
        let meet = (ops.meet)(p, s).map_err(|e| e.to_string())?;
        ensure(le(p, &join) && le(s, &join), || format!("join {join} is not an upper bound"))?;
        ensure(le(&meet, p) && le(&meet, s), || format!("meet {meet} is not a lower bound"))?;
        for t in &l.parts {
            if le(p, t) && le(s, t) {
                ensure(le(&join, t), || format!("join {join} is not below upper bound {t}"))?;
            }
            if le(t, p) && le(t, s) {
                ensure(le(t, &meet), || format!("meet {meet} is not above lower bound {t}"))?;
            }
        }
        Ok(())
    })]
}

fn lattice_algebra(l: &Level, ops: &LatticeOps) -> Vec<VerificationReport> {
    let mut out = vec![l.pair_check("lattice_commutative_idempotent", |i, j| {
        let (p, s) = (&l.parts[i], &l.parts[j]);
        let e = |e: Error| e.to_string();
        ensure((ops.join)(p, s).map_err(e)? == (ops.join)(s, p).map_err(e)?, || {
            "join is not commutative".into()
        })?;
        ensure((ops.meet)(p, s).map_err(e)? == (ops.meet)(s, p).map_err(e)?, || {
            "meet is not commutative".into()
        })?;
        ensure(
            (ops.join)(p, p).map_err(e)? == *p && (ops.meet)(p, p).map_err(e)? == *p,
            || "join or meet is not idempotent on pi".into(),
        )
    })];
    // triples are exhaustive only up to n = 4
    if l.n <= 4 {
        let mut r = l.report("lattice_associative");
        let k = l.parts.len();
        for a in 0..k {
            for b in 0..k {
                let (pa, pb) = (&l.parts[a], &l.parts[b]);
                let (Ok(jab), Ok(mab)) = ((ops.join)(pa, pb), (ops.meet)(pa, pb)) else {
                    r.case(false, || pair_text(pa, pb));
                    continue;
                };
                for pc in &l.parts {
                    let ok = (|| -> Result<bool> {
                        let j1 = (ops.join)(&jab, pc)?;
                        let j2 = (ops.join)(pa, &(ops.join)(pb, pc)?)?;
                        let m1 = (ops.meet)(&mab, pc)?;
                        let m2 = (ops.meet)(pa, &(ops.meet)(pb, pc)?)?;
                        Ok(j1 == j2 && m1 == m2)
                    })()
                    .unwrap_or(false);
                    r.case(ok, || {
                        format!("associativity fails\n{}tau:\n{}", pair_text(pa, pb), to_text(pc))
                    });
                }
            }
        }
        out.push(r);
    }
    out
}

fn shannon_mutual_info_identity(l: &Level, ops: &LatticeOps) -> Vec<VerificationReport> {
    let h2: Vec<f64> = l
        .parts
        .iter()
        .map(|p| entropy::shannon_entropy(p, Base::TWO))
        .collect();
    vec![l.pair_check("shannon_mutual_info_identity", |i, j| {
        let mi = entropy::shannon_mutual_info(&l.parts[i], &l.parts[j], Base::TWO)
            .map_err(|e| e.to_string())?;
        let join = (ops.join)(&l.parts[i], &l.parts[j]).map_err(|e| e.to_string())?;
        let rhs = h2[i] + h2[j] - entropy::shannon_entropy(&join, Base::TWO);
        ensure(close(mi, rhs) && mi >= -TOLERANCE, || {
            format!("I = {mi} but H(pi) + H(sigma) - H(join) = {rhs}")
        })
    })]
}

fn canonical_form(l: &Level, _: &LatticeOps) -> Vec<VerificationReport> {
    vec![l.single_check("canonical_form", |i| {
        let p = &l.parts[i];
        let sorted = p.blocks().iter().all(|b| b.windows(2).all(|w| w[0] < w[1]))
            && p.blocks().windows(2).all(|w| w[0][0] < w[1][0]);
        ensure(sorted && p.canonicalized() == *p, || {
            "partition is not in canonical form".into()
        })
    })]
}

fn blob_discrete_bounds(l: &Level, _: &LatticeOps) -> Vec<VerificationReport> {
    let blob = Partition::blob(&l.universe);
    let discrete = Partition::discrete(&l.universe);
    vec![l.single_check("blob_discrete_bounds", |i| {
        let p = &l.parts[i];
        let ok = is_refinement(&blob, p).unwrap_or(false)
            && is_refinement(p, &discrete).unwrap_or(false);
        ensure(ok, || "not between blob and discrete".into())
    })]
}

fn dit_indit_complement(l: &Level, _: &LatticeOps) -> Vec<VerificationReport> {
    let full = PairSet::full(l.n);
    vec![l.single_check("dit_indit_complement", |i| {
        let (d, e) = (&l.dits[i], &l.indits[i]);
        let splits = d.union(e).ok() == Some(full.clone())
            && d.intersection(e).map(|x| x.is_empty()).unwrap_or(false);
        ensure(splits, || "dit and indit do not partition U×U".into())?;
        ensure(d.is_symmetric() && d.is_irreflexive(), || {
            "dit set is not symmetric and irreflexive".into()
        })?;
        ensure(e.is_equivalence(), || "indit set is not an equivalence relation".into())?;
        ensure(pairs::is_open(d) && pairs::is_closed(e), || {
            "dit set not open or indit set not closed".into()
        })
    })]
}

fn open_set_round_trip(l: &Level, _: &LatticeOps) -> Vec<VerificationReport> {
    vec![l.single_check("open_set_round_trip", |i| {
        let back =
            pairs::partition_from_open_set(&l.universe, &l.dits[i]).map_err(|e| e.to_string())?;
        ensure(back == l.parts[i], || format!("recovered {back}"))
    })]
}

fn logical_entropy_block_formula(l: &Level, _: &LatticeOps) -> Vec<VerificationReport> {
    vec![l.single_check("logical_entropy_block_formula", |i| {
        let via_blocks = entropy::logical_entropy_from_blocks(&l.parts[i]);
        ensure(l.h[i] == via_blocks, || {
            format!("|dit|/n² = {} but 1 - Σp² = {via_blocks}", l.h[i])
        })
    })]
}

fn logical_entropy_distribution_consistency(l: &Level, _: &LatticeOps) -> Vec<VerificationReport> {
    vec![l.single_check("logical_entropy_distribution_consistency", |i| {
        let f = dist::logical_entropy(&l.parts[i].block_probabilities());
        ensure(close(f, l.h[i].to_f64()), || {
            format!("distribution h = {f}, partition h = {}", l.h[i])
        })
    })]
}

fn equal_blocks(p: &Partition) -> bool {
    p.block_sizes().all(|s| s == p.blocks()[0].len())
}

fn logical_entropy_maximum(l: &Level, _: &LatticeOps) -> Vec<VerificationReport> {
    vec![l.single_check("logical_entropy_maximum", |i| {
        let p = &l.parts[i];
        let bound = Rational::ONE - Rational::new(1, p.num_blocks() as i128);
        let h = l.h[i];
        ensure(h <= bound && ((h == bound) == equal_blocks(p)), || {
            format!("h = {h}, bound 1 - 1/|pi| = {bound}")
        })
    })]
}

fn shannon_maximum(l: &Level, _: &LatticeOps) -> Vec<VerificationReport> {
    vec![l.single_check("shannon_maximum", |i| {
        let p = &l.parts[i];
        let k = p.num_blocks() as f64;
        let h2 = entropy::shannon_entropy(p, Base::TWO);
        let hm = entropy::block_count_entropy(p);
        let eq = equal_blocks(p);
        ensure(h2 <= k.log2() + TOLERANCE && close(h2, k.log2()) == eq, || {
            format!("H2 = {h2}, log2|pi| = {}", k.log2())
        })?;
        ensure(hm <= k + TOLERANCE && close(hm, k) == eq, || {
            format!("H_m = {hm}, |pi| = {k}")
        })
    })]
}

fn block_count_identity(l: &Level, _: &LatticeOps) -> Vec<VerificationReport> {
    vec![l.single_check("block_count_identity", |i| {
        let p = &l.parts[i];
        let hm = entropy::block_count_entropy(p);
        let via2 = entropy::shannon_entropy(p, Base::TWO).exp2();
        let via3 = 3f64.powf(entropy::shannon_entropy(p, Base::THREE));
        ensure(close(hm, via2) && close(hm, via3), || {
            format!("H_m = {hm}, 2^H2 = {via2}, 3^H3 = {via3}")
        })
    })]
}

fn block_entropy_identity(l: &Level, _: &LatticeOps) -> Vec<VerificationReport> {
    vec![l.single_check("block_entropy_identity", |i| {
        let report = entropy::entropy_report(&l.parts[i], Base::TWO);
        for b in &report.blocks {
            let h = b.logical.to_f64();
            ensure(
                close(h, 1.0 - 1.0 / b.block_count) && close(h, 1.0 - (-b.shannon).exp2()),
                || format!("block {}: h(B) = {h}, H_m(B) = {}, H(B) = {}", b.block, b.block_count, b.shannon),
            )?;
        }
        Ok(())
    })]
}

fn enumeration_count(l: &Level, _: &LatticeOps) -> Vec<VerificationReport> {
    let mut r = l.report("enumeration_count");
    let mut distinct = l.parts.clone();
    distinct.sort_by_key(|p| format!("{p}"));
    distinct.dedup();
    let count = l.parts.len() as u128;
    r.case(count == bell(l.n) && distinct.len() == l.parts.len(), || {
        format!("enumerated {count} ({} distinct), Bell({}) = {}", distinct.len(), l.n, bell(l.n))
    });
    vec![r]
}

fn closure_not_topological(l: &Level, _: &LatticeOps) -> Vec<VerificationReport> {
    if l.n < 3 {
        return vec![];
    }
    let mut r = l.report("closure_not_topological");
    let k = l.parts.len();
    let mut found = false;
    for i in 0..k {
        for j in 0..k {
            r.cases += 1;
            if let Ok(u) = l.indits[i].union(&l.indits[j]) {
                found |= !pairs::is_closed(&u);
            }
        }
    }
    if !found {
        r.fail(format!("no two closed sets on n = {} have a non-closed union", l.n));
    }
    vec![r]
}

fn closure_operator_laws(l: &Level, _: &LatticeOps) -> Vec<VerificationReport> {
    // every subset of U×U, indexed by bitmask over row-major pairs
    if l.n > 4 {
        return vec![];
    }
    let n = l.n;
    let cells = n * n;
    let to_set = |mask: u32| {
        PairSet::from_pairs(n, (0..cells).filter(|b| mask >> b & 1 == 1).map(|b| (b / n, b % n)))
            .expect("in range")
    };
    let sets: Vec<PairSet> = (0..1u32 << cells).map(to_set).collect();
    let closures: Vec<PairSet> = sets.iter().map(pairs::closure).collect();
    let mut r = l.report("closure_operator_laws");
    for (mask, (s, c)) in sets.iter().zip(&closures).enumerate() {
        let mut problems = Vec::new();
        if !s.is_subset(c).unwrap_or(false) {
            problems.push("not extensive");
        }
        if pairs::closure(c) != *c {
            problems.push("not idempotent");
        }
        if !c.is_equivalence() {
            problems.push("closure is not an equivalence relation");
        }
        if pairs::closure_warshall(s) != *c {
            problems.push("union-find and Warshall closures differ");
        }
        for b in 0..cells {
            if mask >> b & 1 == 0 && !c.is_subset(&closures[mask | 1 << b]).unwrap_or(false) {
                problems.push("not monotone");
                break;
            }
        }
        let int = pairs::interior(s);
        if !int.is_subset(s).unwrap_or(false)
            || pairs::interior(&int) != int
            || !pairs::is_open(&int)
        {
            problems.push("interior laws fail");
        }
        r.case(problems.is_empty(), || format!("{}: {s:?}", problems.join(", ")));
    }
    vec![r]
}

const EXHAUSTIVE_CHECKS: &[Check] = &[
    blob_discrete_bounds,
    block_count_identity,
    block_entropy_identity,
    canonical_form,
    closure_not_topological,
    closure_operator_laws,
    dit_indit_complement,
    enumeration_count,
    equivalence_union_cover,
    join_dit_union,
    lattice_algebra,
    lattice_bounds,
    logical_entropy_block_formula,
    logical_entropy_distribution_consistency,
    logical_entropy_maximum,
    meet_dit_interior,
    modular_law,
    mutual_set_nonempty,
    mutual_set_structural,
    open_set_round_trip,
    refinement_dit_inclusion,
    shannon_maximum,
    shannon_mutual_info_identity,
    submodular_inequality,
];

fn sort_reports(reports: &mut [VerificationReport]) {
    let key = |r: &VerificationReport| {
        let nums: Vec<i64> = r.parameters.values().filter_map(Value::as_i64).collect();
        (r.name.clone(), nums)
    };
    reports.sort_by_key(key);
}

/// Exhaustive sweep over all partitions of universes of size `1..=max_n`, `2 ≤ max_n ≤ 6`.
pub fn run_exhaustive(max_n: usize) -> Result<Vec<VerificationReport>> {
    run_exhaustive_with(max_n, &LatticeOps::default())
}

/// [`run_exhaustive`] with substitute join/meet implementations.
pub fn run_exhaustive_with(max_n: usize, ops: &LatticeOps) -> Result<Vec<VerificationReport>> {
    if max_n < 2 {
        return Err(Error::TooSmall { size: max_n, min: 2 });
    }
    if max_n > MAX_EXHAUSTIVE_N {
        return Err(Error::TooLarge {
            size: max_n,
            max: MAX_EXHAUSTIVE_N,
        });
    }
    let levels = (1..=max_n).map(Level::new).collect::<Result<Vec<_>>>()?;
    let tasks: Vec<(&Check, &Level)> = EXHAUSTIVE_CHECKS
        .iter()
        .flat_map(|c| levels.iter().map(move |l| (c, l)))
        .collect();
    let mut reports: Vec<VerificationReport> = tasks
        .par_iter()
        .flat_map_iter(|(check, level)| check(level, ops))
        .collect();
    sort_reports(&mut reports);
    Ok(reports)
}

/// Coordinate partitions of the `a × b` grid; element `i` sits at row `i / b`, column `i % b`.
pub fn grid_partitions(a: usize, b: usize) -> Result<(Partition, Partition)> {
    let u = Universe::new(a * b)?;
    let rows: Vec<usize> = (0..a * b).map(|i| i / b).collect();
    let cols: Vec<usize> = (0..a * b).map(|i| i % b).collect();
    Ok((
        Partition::from_block_labels(&u, &rows)?,
        Partition::from_block_labels(&u, &cols)?,
    ))
}

/// Product-grid identities for each `(a, b)` with `a, b ≥ 2` and `a·b ≤ 64`.
pub fn run_independence(dims: &[(usize, usize)]) -> Result<Vec<VerificationReport>> {
    for &(a, b) in dims {
        if a < 2 || b < 2 {
            return Err(Error::TooSmall {
                size: a.min(b),
                min: 2,
            });
        }
        if a * b > MAX_GRID_SIZE {
            return Err(Error::TooLarge {
                size: a * b,
                max: MAX_GRID_SIZE,
            });
        }
    }
    let mut reports = Vec::new();
    for &(a, b) in dims {
        let (rows, cols) = grid_partitions(a, b)?;
        let params = json!({ "a": a, "b": b });
        let join = rows.join(&cols)?;
        let (hr, hc, hj) = (
            entropy::logical_entropy(&rows),
            entropy::logical_entropy(&cols),
            entropy::logical_entropy(&join),
        );
        let m = entropy::logical_mutual_info(&rows, &cols)?;
        let sh = |p: &Partition| entropy::shannon_entropy(p, Base::TWO);
        let bc = entropy::block_count_entropy;

        let mut r = VerificationReport::new("independence_grid", params.clone());
        r.case(entropy::are_independent(&rows, &cols)?, || {
            "rows and columns are not independent".into()
        });
        r.case(m == hr * hc, || format!("m = {m} but h·h = {}", hr * hc));
        let mi = entropy::shannon_mutual_info(&rows, &cols, Base::TWO)?;
        r.case(mi <= TOLERANCE, || format!("I = {mi}"));
        let expected = Rational::ONE - (Rational::ONE - hr) * (Rational::ONE - hc);
        r.case(hj == expected, || format!("h(join) = {hj}, 1-(1-h)(1-h) = {expected}"));
        r.case(close(sh(&join), sh(&rows) + sh(&cols)), || {
            format!("H(join) = {}, H + H = {}", sh(&join), sh(&rows) + sh(&cols))
        });
        r.case(close(bc(&join), bc(&rows) * bc(&cols)), || {
            format!("H_m(join) = {}, H_m·H_m = {}", bc(&join), bc(&rows) * bc(&cols))
        });
        reports.push(r);

        // rows against themselves are dependent; the product identity must fail
        let mut c = VerificationReport::new("dependence_control", params);
        c.case(!entropy::are_independent(&rows, &rows)?, || {
            "rows reported independent of themselves".into()
        });
        let self_m = entropy::logical_mutual_info(&rows, &rows)?;
        c.case(self_m != hr * hr, || format!("m(rows, rows) = {self_m} equals h·h"));
        reports.push(c);
    }
    sort_reports(&mut reports);
    Ok(reports)
}

fn random_dist(rng: &mut ChaCha8Rng, n: usize) -> ProbDist {
    let draws: Vec<f64> = (0..n).map(|_| 1.0 - rng.gen::<f64>()).collect();
    let total: f64 = draws.iter().sum();
    ProbDist::from_probs(draws.iter().map(|x| x / total).collect()).expect("normalized draws")
}

/// One random trial: two distributions of the same length and a mixing weight.
#[derive(Debug, Clone)]
pub struct Trial {
    pub p: ProbDist,
    pub q: ProbDist,
    pub weight: f64,
}

/// The trials drawn by [`run_distribution_trials`] for the same arguments.
pub fn draw_trials(n_max: usize, trials: usize, seed: u64) -> Vec<Trial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            let n = rng.gen_range(1..=n_max);
            let p = random_dist(&mut rng, n);
            let q = random_dist(&mut rng, n);
            let weight = rng.gen::<f64>();
            Trial { p, q, weight }
        })
        .collect()
}

fn dist_text(t: &Trial) -> String {
    format!("p = {:?}, q = {:?}, weight = {}", t.p.probs(), t.q.probs(), t.weight)
}

/// Checks of the distribution identities and inequalities on explicit trials.
pub fn check_trials(trials: &[Trial], parameters: Value) -> Vec<VerificationReport> {
    let new = |name| VerificationReport::new(name, parameters.clone());
    let mut sym = new("cross_entropy_symmetry");
    let mut ident = new("divergence_identity");
    let mut nonneg = new("divergence_nonnegative");
    let mut kl = new("kl_information_inequality");
    let mut mixing = new("jensen_mixing_identity");
    let mut concave = new("logical_entropy_concavity");
    let mut uniform = new("uniform_maximizes_logical_entropy");
    let mut param = new("parametric_reductions");
    let mut bc = new("block_count_identity_distribution");

    for t in trials {
        let (p, q) = (&t.p, &t.q);
        let n = p.len();
        let (hp, hq) = (dist::logical_entropy(p), dist::logical_entropy(q));
        let cross = dist::logical_cross_entropy(p, q).unwrap();
        let d = dist::logical_divergence(p, q).unwrap();
        let txt = || dist_text(t);

        sym.case(cross == dist::logical_cross_entropy(q, p).unwrap(), txt);

        ident.case(close(d, 2.0 * cross - hp - hq), || {
            format!("d = {d}, 2h(p||q) - h(p) - h(q) = {}; {}", 2.0 * cross - hp - hq, txt())
        });

        let max_diff = p
            .probs()
            .iter()
            .zip(q.probs())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let zero_iff = if max_diff <= 1e-9 { d <= n as f64 * 1e-18 } else { d > 0.0 };
        let self_d = dist::logical_divergence(p, p).unwrap();
        nonneg.case(d >= 0.0 && zero_iff && self_d == 0.0, || {
            format!("d = {d}, d(p||p) = {self_d}; {}", txt())
        });

        let dkl = dist::kl_divergence(p, q, Base::TWO).unwrap();
        let self_kl = dist::kl_divergence(p, p, Base::TWO).unwrap();
        let via_cross =
            dist::shannon_cross_entropy(p, q, Base::TWO).unwrap() - dist::shannon_entropy(p, Base::TWO);
        kl.case(
            dkl >= -TOLERANCE && self_kl.abs() <= TOLERANCE && close(dkl, via_cross),
            || format!("D = {dkl}, D(p||p) = {self_kl}, H(p||q) - H(p) = {via_cross}; {}", txt()),
        );

        let half = dist::mix(p, q, 0.5).unwrap();
        let via_mix = 4.0 * (dist::logical_entropy(&half) - 0.5 * (hp + hq));
        let jensen = dist::jensen_difference(p, q).unwrap();
        mixing.case(close(d, via_mix) && close(jensen, d / 2.0), || {
            format!("d = {d}, 4[h(mix) - avg] = {via_mix}, jensen = {jensen}; {}", txt())
        });

        let m = dist::mix(p, q, t.weight).unwrap();
        let lower = t.weight * hp + (1.0 - t.weight) * hq;
        concave.case(dist::logical_entropy(&m) >= lower - TOLERANCE, || {
            format!("h(mix) = {} < {lower}; {}", dist::logical_entropy(&m), txt())
        });

        let u = ProbDist::uniform(n).unwrap();
        let bound = 1.0 - 1.0 / n as f64;
        let uq = dist::logical_cross_entropy(&u, q).unwrap();
        let ud = dist::logical_divergence(&u, q).unwrap();
        uniform.case(
            hq <= bound + TOLERANCE && close(uq, bound) && close(ud, bound - hq),
            || format!("h(q) = {hq}, h(u||q) = {uq}, d(u||q) = {ud}, 1 - 1/n = {bound}; {}", txt()),
        );

        let at = |f, x| dist::parametric_entropy(p, f, x).unwrap();
        let quad = dist::quadratic_entropy(p, &DistanceMatrix::unit(n)).unwrap();
        let ok = close(at(Family::Tsallis, 2.0), hp)
            && close(at(Family::PatilTaillie, 1.0), hp)
            && close(quad, hp)
            && close(at(Family::DegreeAlpha, 2.0), 2.0 * hp)
            && close(at(Family::HavrdaCharvat, 2.0), 2.0 * hp);
        param.case(ok, txt);

        let hm = dist::block_count_entropy(p);
        bc.case(
            close(hm, dist::shannon_entropy(p, Base::TWO).exp2())
                && close(hm, 3f64.powf(dist::shannon_entropy(p, Base::THREE))),
            txt,
        );
    }
    let mut reports = vec![sym, ident, nonneg, kl, mixing, concave, uniform, param, bc];
    sort_reports(&mut reports);
    reports
}

/// Seeded random sweep of the distribution invariants. Identical arguments give identical
/// reports.
pub fn run_distribution_trials(
    n_max: usize,
    trials: usize,
    seed: u64,
) -> Result<Vec<VerificationReport>> {
    if trials < 1 {
        return Err(Error::TooSmall { size: trials, min: 1 });
    }
    if n_max < 1 {
        return Err(Error::TooSmall { size: n_max, min: 1 });
    }
    let params = json!({ "n_max": n_max, "trials": trials, "seed": seed });
    Ok(check_trials(&draw_trials(n_max, trials, seed), params))
}
