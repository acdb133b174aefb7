//! Property suites behind the `verify` command. Each suite draws its cases
//! from a seeded generator, so a report depends only on the configuration.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::games::{
    self, play, CantorCover, Cover, GreedySelector, HCoverList, HSpace,
    ImgTranslation, Mode, RandomSelector, SameCover, Verdict,
};
use crate::groundset::EpSet;
use crate::hyper::{self, h_member, img_point, HBasic};
use crate::metric::{self, Dist};
use crate::sampling::{self, SampleRng};
use crate::sequence::QSeq;
use crate::vtop::{self, Region, SearchBounds, VBasic};

pub const SUITES: [&str; 6] = ["games", "groundset", "hyper", "metric", "sequence", "vtop"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteConfig {
    pub max_prefix: usize,
    pub max_value: u64,
    pub depth_limit: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        let b = SearchBounds::default();
        Self {
            max_prefix: b.max_prefix,
            max_value: b.max_value,
            depth_limit: b.depth_limit,
            seed: 0,
        }
    }
}

impl SuiteConfig {
    pub fn bounds(&self) -> SearchBounds {
        SearchBounds {
            max_prefix: self.max_prefix,
            max_value: self.max_value,
            depth_limit: self.depth_limit,
        }
    }

    fn rng(&self, suite: &str) -> SampleRng {
        let salt = suite.bytes().fold(0u64, |h, b| h.wrapping_mul(31).wrapping_add(b as u64));
        sampling::seeded(self.seed ^ salt)
    }
}

/// The first failing case of one check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub payload: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: u64,
    pub failed: u64,
    pub failures: Vec<Failure>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

struct Run {
    cases: u64,
    failed: u64,
    first: BTreeMap<String, Value>,
}

impl Run {
    fn new() -> Self {
        Self {
            cases: 0,
            failed: 0,
            first: BTreeMap::new(),
        }
    }

    fn check(&mut self, name: &str, ok: bool, payload: impl FnOnce() -> Value) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            self.first.entry(name.to_string()).or_insert_with(payload);
        }
    }
}

pub fn run_suite(name: &str, config: &SuiteConfig) -> Option<SuiteReport> {
    let start = Instant::now();
    let mut rng = config.rng(name);
    let mut run = Run::new();
    match name {
        "groundset" => groundset_suite(&mut run, &mut rng),
        "sequence" => sequence_suite(&mut run, &mut rng, config),
        "vtop" => vtop_suite(&mut run, &mut rng, config),
        "metric" => metric_suite(&mut run, &mut rng, config),
        "hyper" => hyper_suite(&mut run, &mut rng, config),
        "games" => games_suite(&mut run, &mut rng, config),
        _ => return None,
    }
    Some(SuiteReport {
        suite: name.to_string(),
        cases: run.cases,
        failed: run.failed,
        failures: run
            .first
            .into_iter()
            .map(|(check, payload)| Failure { check, payload })
            .collect(),
        wall_time: start.elapsed(),
    })
}

/// Runs every suite on its own thread; reports come back sorted by id.
pub fn run_all(config: &SuiteConfig) -> Vec<SuiteReport> {
    let mut reports: Vec<SuiteReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = SUITES
            .iter()
            .map(|name| scope.spawn(move || run_suite(name, config).expect("known suite")))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect()
    });
    reports.sort_by(|a, b| a.suite.cmp(&b.suite));
    reports
}

const HORIZON: u64 = 256;

fn groundset_suite(run: &mut Run, rng: &mut SampleRng) {
    for _ in 0..1000 {
        let a = sampling::random_epset(rng, 12, 6);
        let b = sampling::random_epset(rng, 12, 6);
        let payload = || json!({ "a": a, "b": b });
        let (u, i, d) = (a.union(&b), a.intersect(&b), a.difference(&b));
        let pointwise = (0..HORIZON).all(|n| {
            let (x, y) = (a.contains(n), b.contains(n));
            u.contains(n) == (x || y) && i.contains(n) == (x && y) && d.contains(n) == (x && !y)
        });
        run.check("pointwise", pointwise, payload);
        run.check(
            "de-morgan",
            u.complement() == a.complement().intersect(&b.complement()),
            payload,
        );
        run.check("involution", a.complement().complement() == a, payload);
        let text = serde_json::to_string(&a).unwrap();
        let back: EpSet = serde_json::from_str(&text).unwrap();
        run.check("json-roundtrip", back == a, payload);
        run.check(
            "subset",
            a.is_subset(&b) == (0..HORIZON).all(|n| !a.contains(n) || b.contains(n)),
            payload,
        );
    }
}

fn sequence_suite(run: &mut Run, rng: &mut SampleRng, config: &SuiteConfig) {
    let max_value = config.max_value.max(2);
    for _ in 0..1000 {
        let f = sampling::random_qseq(rng, config.max_prefix, max_value);
        let g = sampling::random_qseq(rng, config.max_prefix, max_value);
        let payload = || json!({ "f": f, "g": g });
        let image = f.image();
        let scanned: BTreeSet<u64> = (0..4 * HORIZON).map(|n| f.eval(n)).collect();
        run.check(
            "image-scan",
            (0..HORIZON).all(|v| image.contains(v) == scanned.contains(&v)),
            payload,
        );
        run.check(
            "finite-iff-drift0",
            image.is_finite() == (f.drift() == 0),
            payload,
        );
        let first = (0..4 * HORIZON).find(|&n| f.eval(n) != g.eval(n));
        let fd = f.first_difference(&g);
        run.check("first-difference-symmetric", fd == g.first_difference(&f), payload);
        run.check(
            "first-difference-scan",
            fd.is_none() || fd == first,
            payload,
        );
        run.check("first-difference-none", fd.is_some() || f == g, payload);
    }
}

fn vtop_suite(run: &mut Run, rng: &mut SampleRng, config: &SuiteConfig) {
    let v = config.max_value.max(2);
    for _ in 0..1000 {
        let b1 = sampling::random_vbasic(rng, 3, 4, v);
        let b2 = sampling::random_vbasic(rng, 3, 4, v);
        let f = sampling::random_qseq(rng, config.max_prefix.min(5), v);
        run.check(
            "intersect-exact",
            b1.intersect(&b2).contains(&f) == (b1.contains(&f) && b2.contains(&f)),
            || json!({ "b1": b1, "b2": b2, "f": f }),
        );
        if let Some(w) = b1.witness() {
            run.check("witness-member", b1.contains(&w), || json!({ "b": b1 }));
        }
        if !b1.contains(&f) {
            let word = b1.as_word();
            if let Ok(sep) = vtop::closed_separator(&f, b1.range(), b1.constraints()) {
                let ok = sep.contains(&f)
                    && (0..20).all(|_| match sampling::member_of_vbasic(rng, &sep, v) {
                        Some(g) => !b1.contains(&g),
                        None => true,
                    });
                run.check("separator-disjoint", ok, || json!({ "b": b1, "f": f, "word": word }));
            }
        }
    }

    // Containment against enumeration of a small drift-0 universe.
    let values = v.min(4);
    let universe = small_universe(config.max_prefix.min(3), values);
    for _ in 0..300 {
        let b1 = sampling::random_vbasic(rng, 2, 3, values);
        let b2 = sampling::random_vbasic(rng, 2, 3, values);
        let oracle = universe.iter().all(|f| !b1.contains(f) || b2.contains(f));
        // The universe only reaches values below `values`, so compare on
        // basics whose sets all live there.
        let bounded = [&b1, &b2].iter().all(|b| {
            b.range().is_finite() && b.range().max_element().is_none_or(|m| m < values)
        });
        if bounded {
            run.check("subset-vs-enumeration", b1.is_subset(&b2) == oracle, || {
                json!({ "b1": b1, "b2": b2 })
            });
        }
    }

    let bounds = config.bounds();
    for k in 0..100u64 {
        let alpha = k % 5;
        let mut c = BTreeMap::from([(alpha, EpSet::singleton(0))]);
        if k % 3 == 0 {
            c.insert(alpha + 1 + k % 4, EpSet::finite([0, 1, k % 7]));
        }
        let cylinder = Region::from(VBasic::cylinder(c.clone()));
        let tube = Region::from(VBasic::tube(EpSet::singleton(0)));
        let g = vtop::separating_witness(&cylinder, &tube, &bounds);
        run.check(
            "cylinder-not-tube",
            g.is_some_and(|g| cylinder.contains(&g) && !tube.contains(&g)),
            || json!({ "constraints": c }),
        );
    }

    for _ in 0..100 {
        let b = identity_neighborhood(rng);
        let ok = match vtop::isolation_witness(&QSeq::identity()) {
            vtop::Isolation::NotIsolated(e) => e
                .escape(&b)
                .is_ok_and(|g| b.contains(&g) && g != QSeq::identity()),
            vtop::Isolation::Isolated => false,
        };
        run.check("identity-not-isolated", ok, || json!({ "b": b }));
        let c = rng.gen_range(0..v);
        run.check(
            "constant-isolated",
            vtop::isolation_witness(&QSeq::constant(c)) == vtop::Isolation::Isolated,
            || json!({ "value": c }),
        );
    }

    for _ in 0..50 {
        let (family, leaves) = random_prefix_tree_cover(rng, &[0, 1], 4);
        let covered = vtop::compact_cover_check(&[0, 1], &family, config.depth_limit.max(6));
        run.check(
            "tree-cover-covered",
            matches!(covered, Ok(vtop::CoverVerdict::Covered { .. })),
            || json!({ "leaves": leaves }),
        );
        let drop = rng.gen_range(0..family.len());
        let mut partial = family.clone();
        partial.remove(drop);
        if partial.is_empty() {
            continue;
        }
        let verdict = vtop::compact_cover_check(&[0, 1], &partial, config.depth_limit.max(6));
        run.check(
            "tree-cover-minus-one-escapes",
            matches!(verdict, Ok(vtop::CoverVerdict::Escape { .. })),
            || json!({ "leaves": leaves, "dropped": drop }),
        );
    }

    for _ in 0..200 {
        let f = sampling::random_qseq_with_drift(rng, 4, 40, 0);
        let g = sampling::random_qseq_with_drift(rng, 4, 40, 0);
        let split = |h: &QSeq| vtop::phi_split(h).unwrap();
        run.check("phi-injective", f == g || split(&f) != split(&g), || {
            json!({ "f": f, "g": g })
        });
        let (a, b) = split(&f);
        run.check("phi-join", vtop::phi_join(&a, &b).as_ref() == Ok(&f), || {
            json!({ "f": f })
        });
    }
}

/// All drift-0 sequences with prefix length `≤ max_prefix`, cycle length
/// `≤ 2` and values below `values`.
pub fn small_universe(max_prefix: usize, values: u64) -> Vec<QSeq> {
    let mut words: Vec<Vec<u64>> = vec![vec![]];
    let mut all = Vec::new();
    for len in 0..=max_prefix.max(2) {
        if len > 0 {
            words = words
                .iter()
                .flat_map(|w| {
                    (0..values).map(move |v| {
                        let mut w = w.clone();
                        w.push(v);
                        w
                    })
                })
                .collect();
        }
        all.extend(words.iter().cloned());
    }
    let mut out = BTreeSet::new();
    for prefix in all.iter().filter(|w| w.len() <= max_prefix) {
        for cycle in all.iter().filter(|w| (1..=2).contains(&w.len())) {
            out.insert(QSeq::new(prefix.clone(), cycle.clone(), 0).unwrap());
        }
    }
    out.into_iter().collect()
}

/// A basic containing the identity: constraints `α ↦ V ∋ α`, range
/// containing ω from some point on.
pub fn identity_neighborhood(rng: &mut impl Rng) -> VBasic {
    let constraints = (0..rng.gen_range(0..5))
        .map(|_| {
            let alpha = rng.gen_range(0..12);
            let extra = sampling::random_epset(rng, 8, 3);
            (alpha, extra.union(&EpSet::singleton(alpha)))
        })
        .collect();
    let range = if rng.gen_bool(0.5) {
        EpSet::all()
    } else {
        sampling::random_epset(rng, 6, 3).union(&EpSet::at_least(rng.gen_range(0..4)))
    };
    let range = range.union(&EpSet::below(12));
    VBasic::new(range, constraints)
}

/// Splits `[[s]]` along a random finite prefix tree over `img(s)`; returns
/// the leaves' basics and the leaf words.
pub fn random_prefix_tree_cover(
    rng: &mut impl Rng,
    s: &[u64],
    max_extra: usize,
) -> (Vec<VBasic>, Vec<Vec<u64>>) {
    let letters: Vec<u64> = EpSet::finite(s.iter().copied()).elements().unwrap();
    let alphabet = EpSet::finite(letters.iter().copied());
    let mut leaves = Vec::new();
    let mut stack = vec![s.to_vec()];
    while let Some(w) = stack.pop() {
        let depth = w.len() - s.len();
        if depth >= max_extra || (depth > 0 && rng.gen_bool(0.4)) {
            leaves.push(w);
            continue;
        }
        for &a in letters.iter().rev() {
            let mut next = w.clone();
            next.push(a);
            stack.push(next);
        }
    }
    let family = leaves
        .iter()
        .map(|w| VBasic::word(w, alphabet.clone()))
        .collect();
    (family, leaves)
}

fn metric_suite(run: &mut Run, rng: &mut SampleRng, config: &SuiteConfig) {
    let v = config.max_value.clamp(2, 4);
    for _ in 0..10_000 {
        let draw = |rng: &mut SampleRng| sampling::random_qseq_with_drift(rng, 4, v, 0);
        let (f, g, h) = (draw(rng), draw(rng), draw(rng));
        let d = |x: &QSeq, y: &QSeq| metric::dist(x, y).unwrap();
        let payload = || json!({ "f": f, "g": g, "h": h });
        run.check("identity", (d(&f, &g) == Dist::Zero) == (f == g), payload);
        run.check("symmetry", d(&f, &g) == d(&g, &f), payload);
        run.check(
            "triangle",
            d(&f, &h).to_rational() <= d(&f, &g).to_rational() + d(&g, &h).to_rational(),
            payload,
        );
        run.check(
            "below-two-same-image",
            d(&f, &g) == Dist::Two || f.image() == g.image(),
            payload,
        );
    }
    for _ in 0..100 {
        let f = sampling::random_qseq_with_drift(rng, 4, v, 0);
        let n = rng.gen_range(0..4);
        let s = f.restrict(n);
        let cert = metric::ball_in_basic(&f, &s, &f.image()).unwrap();
        run.check("ball-in-basic", cert.validate(rng, 100).is_ok(), || json!({ "f": f, "n": n }));

        let g = sampling::random_qseq_with_drift(rng, 4, v, 0);
        let eps = BigRational::new(1.into(), (1i64 << rng.gen_range(0..4)).into());
        if let Ok(b) = metric::basic_in_ball(&f, &g, &eps) {
            let ok = b.contains(&g)
                && (0..100).all(|_| {
                    sampling::member_of_vbasic(rng, &b, v)
                        .is_some_and(|h| metric::dist(&f, &h).unwrap().to_rational() < eps)
                });
            run.check("basic-in-ball", ok, || json!({ "f": f, "g": g, "eps": eps.to_string() }));
        }
    }
}

fn hyper_suite(run: &mut Run, rng: &mut SampleRng, config: &SuiteConfig) {
    let v = config.max_value.clamp(2, 5);
    let subsets: Vec<EpSet> = (0u64..1 << v)
        .map(|m| EpSet::finite((0..v).filter(|i| m >> i & 1 == 1)))
        .collect();
    let mut options: Vec<Option<&EpSet>> = vec![None];
    options.extend(subsets.iter().map(Some));
    for u in &subsets {
        for a in &options {
            for b in &options {
                let c: BTreeMap<u64, EpSet> = [(0, a), (1, b)]
                    .into_iter()
                    .filter_map(|(k, s)| s.map(|s| (k, s.clone())))
                    .collect();
                let basic = VBasic::new(u.clone(), c);
                if basic.is_empty() {
                    continue;
                }
                let mismatch = hyper::image_formula_mismatch(&basic, v + 1);
                run.check("image-formula", matches!(mismatch, Ok(None)), || {
                    json!({ "b": basic, "mismatch": mismatch.ok().flatten() })
                });
            }
        }
    }
    for _ in 0..1000 {
        let f = sampling::random_qseq_with_drift(rng, 4, v + 2, 0);
        let k = img_point(&f).unwrap();
        let n = rng.gen_range(1..=3);
        let mut sets: Vec<EpSet> = (0..n)
            .map(|_| sampling::random_finite(rng, v + 2).union(&EpSet::singleton(*k.members().first().unwrap())))
            .collect();
        sets.push(k.to_epset().union(&sampling::random_finite(rng, v + 2)));
        let h = HBasic::new(sets).unwrap();
        if !h_member(&k, &h) {
            continue;
        }
        let nb = hyper::continuity_neighborhood(&f, &h).unwrap();
        let ok = nb.contains(&f)
            && (0..20).all(|_| {
                sampling::member_of_vbasic(rng, &nb, v + 2)
                    .is_some_and(|g| h_member(&img_point(&g).unwrap(), &h))
            });
        run.check("continuity", ok, || json!({ "f": f, "h": h }));
        run.check("img-point-is-image", k.to_epset() == f.image(), || json!({ "f": f }));
    }
}

fn games_suite(run: &mut Run, rng: &mut SampleRng, config: &SuiteConfig) {
    let top = config.max_value.clamp(2, 12);
    for mask in 0u64..1 << (top + 1) {
        let mut selections = Vec::new();
        if mask & 1 == 1 {
            selections.push(CantorCover::tube());
        }
        for n in 0..top {
            if mask >> (n + 1) & 1 == 1 {
                selections.push(CantorCover::cylinder(n));
            }
        }
        let w = CantorCover.uncovered_witness(&selections).unwrap();
        run.check(
            "cantor-avoids",
            selections.iter().all(|b| !b.contains(&w)),
            || json!({ "mask": mask }),
        );
    }

    for game in 0..200u64 {
        let mut p1 = games::challenger_by_name("prefix").unwrap();
        let rounds = 1 + game as usize % 8;
        let t = if game % 2 == 0 {
            let mut p2 = RandomSelector::new(rng.gen(), 64, 3);
            play(Mode::Finite, &mut *p1, &mut p2, rounds)
        } else {
            let mut p2 = GreedySelector::new(3);
            play(Mode::Finite, &mut *p1, &mut p2, rounds)
        };
        let ok = t.as_ref().is_ok_and(|t| match &t.verdict {
            Verdict::P1WitnessFound { witness } => t
                .rounds
                .iter()
                .flat_map(|r| &r.selections)
                .all(|b| !b.contains(witness)),
            Verdict::P2SurvivesToHorizon => false,
        });
        run.check("prefix-p1-wins", ok, || json!({ "game": game, "result": format!("{t:?}") }));
    }

    let translation = ImgTranslation::faithful();
    for game in 0..200u64 {
        let parts = random_partition(rng, v_parts(game));
        let cover = std::rc::Rc::new(HCoverList::from_partition("partition", &parts));
        let mut p1 = SameCover::<HSpace>::new(cover);
        let mut p2 = games::lift_strategy(
            &translation,
            Box::new(RandomSelector::new(rng.gen(), 12, 2)),
        );
        let result = play(Mode::Finite, &mut p1, &mut p2, 3);
        run.check("lift-t1", result.is_ok(), || {
            json!({ "parts": parts, "error": result.err().map(|e| e.to_string()) })
        });
    }
}

fn v_parts(game: u64) -> usize {
    1 + (game % 3) as usize
}

/// A partition of ω into `n` nonempty eventually periodic parts.
pub fn random_partition(rng: &mut impl Rng, n: usize) -> Vec<EpSet> {
    let period = n as u64 + rng.gen_range(0..3);
    let mut labels: Vec<usize> = (0..period as usize).map(|i| i % n).collect();
    for i in (1..labels.len()).rev() {
        labels.swap(i, rng.gen_range(0..=i));
    }
    (0..n)
        .map(|part| {
            let pattern = labels.iter().map(|&l| l == part).collect();
            EpSet::new(vec![], pattern).unwrap()
        })
        .collect()
}
