//! Acceptance gate: twelve criteria, one line each. Exits nonzero if any
//! criterion fails.
//!
//! Every check compares library output against oracles defined in this file
//! (pointwise unrolling of sequences, enumeration of small universes), not
//! against the library's own decision procedures.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::rc::Rc;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use vietoris_core::games::{
    self, lift_strategy, play, t2_sample_check, CantorCover, Cover, GameError, GreedySelector,
    HCoverList, HSpace, ImgTranslation, ImgVariant, Mode, RandomSelector, SameCover, Verdict,
};
use vietoris_core::hyper::{self, HBasic};
use vietoris_core::metric::{self, Dist};
use vietoris_core::sampling::{self, SampleRng};
use vietoris_core::vtop::{
    self, CantorPairing, CoverVerdict, Isolation, Pairing, Region, SearchBounds, VBasic,
    WordBasic,
};
use vietoris_core::{EpSet, QSeq};

// ---------------------------------------------------------------- oracles

/// `f(n)` straight from the defining formula.
fn at(f: &QSeq, n: u64) -> u64 {
    let l = f.prefix().len() as u64;
    if n < l {
        return f.prefix()[n as usize];
    }
    let c = f.cycle().len() as u64;
    f.cycle()[((n - l) % c) as usize] + f.drift() * ((n - l) / c)
}

/// Bit `n` of an eventually periodic set, read off its explicit/pattern parts.
fn bit(set: &EpSet, n: u64) -> bool {
    let e = set.explicit();
    if (n as usize) < e.len() {
        return e[n as usize];
    }
    let p = set.pattern();
    p[((n as usize) - e.len()) % p.len()]
}

/// Number of coordinates after which `{f(n)}` and membership in `set`
/// repeat: past the prefix, a shift by `c` coordinates adds `D` to the
/// value, and `set` is periodic with period `p` past its threshold `N`, so
/// `N + p` full cycles reach every residue at values `≥ N`.
fn scan_len(f: &QSeq, set: &EpSet) -> u64 {
    let l = f.prefix().len() as u64;
    let c = f.cycle().len() as u64;
    let n = set.explicit().len() as u64;
    let p = set.pattern().len() as u64;
    l + c * (n + 2 * p + 2)
}

fn image_inside(f: &QSeq, set: &EpSet) -> bool {
    (0..scan_len(f, set)).all(|n| bit(set, at(f, n)))
}

fn member(b: &VBasic, f: &QSeq) -> bool {
    b.constraints().iter().all(|(&a, v)| bit(v, at(f, a))) && image_inside(f, b.range())
}

fn finite_image(f: &QSeq) -> BTreeSet<u64> {
    assert_eq!(f.drift(), 0);
    f.prefix().iter().chain(f.cycle()).copied().collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn first_diff(f: &QSeq, g: &QSeq) -> Option<u64> {
    let l = f.prefix().len().max(g.prefix().len()) as u64;
    let (cf, cg) = (f.cycle().len() as u64, g.cycle().len() as u64);
    let window = l + 2 * (cf / gcd(cf, cg) * cg) + 1;
    (0..window).find(|&n| at(f, n) != at(g, n))
}

fn dist_oracle(f: &QSeq, g: &QSeq) -> BigRational {
    if finite_image(f) != finite_image(g) {
        return BigRational::from_integer(2.into());
    }
    match first_diff(f, g) {
        None => BigRational::from_integer(0.into()),
        Some(m) => BigRational::new(1.into(), num_bigint::BigInt::from(1u8) << m),
    }
}

fn h_member_oracle(k: &BTreeSet<u64>, h: &HBasic) -> bool {
    !k.is_empty()
        && k.iter().all(|&x| h.sets().iter().any(|u| bit(u, x)))
        && h.sets().iter().all(|u| k.iter().any(|&x| bit(u, x)))
}

/// Inverse of the Cantor pairing by walking the diagonals.
fn unpair_walk(n: u64) -> (u64, u64) {
    let (mut w, mut start) = (0u64, 0u64);
    while start + w < n {
        start += w + 1;
        w += 1;
    }
    let b = n - start;
    (w - b, b)
}

fn set(values: &[u64]) -> EpSet {
    EpSet::finite(values.iter().copied())
}

/// A drift-0 point `head⌢tail` where `tail` eventually cycles through all of
/// `values` in random order.
fn extend(rng: &mut SampleRng, head: &[u64], values: &[u64]) -> QSeq {
    let mut prefix = head.to_vec();
    for _ in 0..rng.gen_range(0..5) {
        prefix.push(*values.choose(rng).unwrap());
    }
    let mut cycle = values.to_vec();
    cycle.shuffle(rng);
    for _ in 0..rng.gen_range(0..3) {
        cycle.push(*values.choose(rng).unwrap());
    }
    QSeq::new(prefix, cycle, 0).unwrap()
}

// -------------------------------------------------------------- criteria

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn basis_law() -> Outcome {
    let start = Instant::now();
    let mut rng = sampling::seeded(101);
    let mut inside = 0;
    for _ in 0..1000 {
        let b1 = sampling::random_vbasic(&mut rng, 3, 6, 6);
        let b2 = sampling::random_vbasic(&mut rng, 3, 6, 6);
        // Bias towards points in b1 so both sides of the equivalence occur.
        let f = match rng.gen_bool(0.5) {
            true => sampling::member_of_vbasic(&mut rng, &b1, 6),
            false => None,
        }
        .unwrap_or_else(|| sampling::random_qseq(&mut rng, 5, 6));
        let both = member(&b1, &f) && member(&b2, &f);
        inside += both as u32;
        ensure(member(&b1.intersect(&b2), &f) == both, || {
            format!("B1 = {b1:?}, B2 = {b2:?}, f = {f:?}")
        })?;
    }
    within(start.elapsed(), Duration::from_secs(5))?;
    Ok(format!("1000 triples, {inside} in both"))
}

fn clopen_word_basics() -> Outcome {
    let mut rng = sampling::seeded(202);
    let mut instances = 0;
    while instances < 500 {
        let len = rng.gen_range(0..4);
        let s: Vec<u64> = (0..len).map(|_| rng.gen_range(0..5)).collect();
        let a = sampling::random_finite(&mut rng, 5).union(&set(&s));
        let word = VBasic::word(&s, a.clone());
        let f = sampling::random_qseq(&mut rng, 4, 6);
        if member(&word, &f) {
            continue;
        }
        instances += 1;
        let sep = vtop::closed_separator(&f, &a, word.constraints())
            .map_err(|e| format!("{e} for f = {f:?}, {word:?}"))?;
        ensure(member(&sep, &f), || format!("{sep:?} misses f = {f:?}"))?;
        for _ in 0..1000 {
            let g = sampling::member_of_vbasic(&mut rng, &sep, 8)
                .ok_or_else(|| format!("separator {sep:?} is empty"))?;
            ensure(member(&sep, &g) && !member(&word, &g), || {
                format!("{g:?} from {sep:?} lies in {word:?}")
            })?;
        }
    }
    Ok("500 separators, 1000 samples each".into())
}

fn cantor_non_compact() -> Outcome {
    let start = Instant::now();
    for mask in 0u64..1 << 13 {
        let mut selections = Vec::new();
        if mask & 1 == 1 {
            selections.push(VBasic::tube(set(&[0])));
        }
        for n in 0..12 {
            if mask >> (n + 1) & 1 == 1 {
                let v = VBasic::new(set(&[0, 1]), BTreeMap::from([(n, set(&[1]))]));
                ensure(CantorCover.is_element(&v), || format!("V_{n} not an element"))?;
                selections.push(v);
            }
        }
        let w = CantorCover
            .uncovered_witness(&selections)
            .ok_or_else(|| format!("no witness for mask {mask:#b}"))?;
        ensure(image_inside(&w, &set(&[0, 1])), || format!("{w:?} leaves 2^ω"))?;
        ensure(selections.iter().all(|b| !member(b, &w)), || {
            format!("witness {w:?} covered for mask {mask:#b}")
        })?;
    }
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok("8192 selection sets".into())
}

/// Leaves of a random prefix tree over {0,1} below ⟨0,1⟩, split at least once.
fn tree_leaves(rng: &mut SampleRng) -> Vec<Vec<u64>> {
    let mut leaves = Vec::new();
    let mut stack = vec![vec![0, 1, 0], vec![0, 1, 1]];
    while let Some(w) = stack.pop() {
        if w.len() >= 7 || rng.gen_bool(0.45) {
            leaves.push(w);
        } else {
            for a in [0, 1] {
                let mut next = w.clone();
                next.push(a);
                stack.push(next);
            }
        }
    }
    leaves
}

fn compact_words() -> Outcome {
    let mut rng = sampling::seeded(404);
    let s = [0, 1];
    let binary = set(&[0, 1]);
    for instance in 0..100 {
        let leaves = tree_leaves(&mut rng);
        let family: Vec<VBasic> = leaves
            .iter()
            .map(|w| VBasic::word(w, binary.clone()))
            .collect();
        match vtop::compact_cover_check(&s, &family, 16) {
            Ok(CoverVerdict::Covered { leaves: cert, .. }) => {
                // Every point of [[01]] below a certificate leaf must lie in
                // the named member; check on sampled points.
                for (leaf, &i) in &cert {
                    for _ in 0..5 {
                        let g = extend(&mut rng, leaf, &[0, 1]);
                        ensure(member(&family[i], &g), || {
                            format!("instance {instance}: leaf {leaf:?} not inside member {i}")
                        })?;
                    }
                }
            }
            other => return Err(format!("instance {instance}: {other:?} for {leaves:?}")),
        }
        let drop = rng.gen_range(0..family.len());
        let mut partial = family.clone();
        partial.remove(drop);
        match vtop::compact_cover_check(&s, &partial, 16) {
            Ok(CoverVerdict::Escape { point, .. }) => {
                ensure(member(&VBasic::compact(&s), &point), || {
                    format!("escape {point:?} outside [[01]]")
                })?;
                ensure(partial.iter().all(|b| !member(b, &point)), || {
                    format!("escape {point:?} is covered")
                })?;
            }
            other => {
                return Err(format!(
                    "instance {instance} without leaf {drop}: {other:?}"
                ))
            }
        }
    }
    Ok("100 covers and 100 deletions classified".into())
}

fn metric_checks() -> Outcome {
    let mut rng = sampling::seeded(505);
    let two = BigRational::from_integer(2.into());
    for _ in 0..10_000 {
        let mut draw = || sampling::random_qseq_with_drift(&mut rng, 4, 3, 0);
        let (f, g, h) = (draw(), draw(), draw());
        let d = |x: &QSeq, y: &QSeq| -> Result<BigRational, String> {
            let lib = metric::dist(x, y).map_err(|e| e.to_string())?.to_rational();
            let oracle = dist_oracle(x, y);
            ensure(lib == oracle, || format!("d({x:?}, {y:?}) = {lib}, oracle {oracle}"))?;
            Ok(lib)
        };
        let (fg, gh, fh, gf) = (d(&f, &g)?, d(&g, &h)?, d(&f, &h)?, d(&g, &f)?);
        let ctx = || format!("f = {f:?}, g = {g:?}, h = {h:?}");
        ensure((fg == BigRational::from_integer(0.into())) == (f == g), ctx)?;
        ensure(fg == gf, ctx)?;
        ensure(fh <= &fg + &gh, ctx)?;
        ensure(fg <= two, ctx)?;
        ensure(fg == two || finite_image(&f) == finite_image(&g), ctx)?;
    }

    let mut certs = 0;
    for _ in 0..60 {
        let f = sampling::random_qseq_with_drift(&mut rng, 4, 4, 0);
        let n = rng.gen_range(0..5);
        let s = f.restrict(n);
        let a = f.image().union(&sampling::random_finite(&mut rng, 6));
        let cert = metric::ball_in_basic(&f, &s, &a).map_err(|e| e.to_string())?;
        ensure(cert.radius == Dist::Dyadic(n + 1), || format!("radius {}", cert.radius))?;
        let radius = cert.radius.to_rational();
        let values: Vec<u64> = finite_image(&f).into_iter().collect();
        let word = VBasic::word(&s, a.clone());
        for _ in 0..1000 {
            let g = extend(&mut rng, &f.restrict(n + 2), &values);
            ensure(dist_oracle(&f, &g) < radius, || format!("sampler left the ball: {g:?}"))?;
            ensure(member(&word, &g), || format!("{g:?} in ball around {f:?} but not in {word:?}"))?;
        }
        certs += 1;

        let g = if rng.gen_bool(0.5) {
            let head = f.restrict(rng.gen_range(0..4));
            extend(&mut rng, &head, &values)
        } else {
            sampling::random_qseq_with_drift(&mut rng, 4, 4, 0)
        };
        let eps = BigRational::new(rng.gen_range(1..9).into(), 4.into());
        match metric::basic_in_ball(&f, &g, &eps) {
            Ok(b) => {
                ensure(member(&b, &g), || format!("{b:?} misses g"))?;
                let gv: Vec<u64> = finite_image(&g).into_iter().collect();
                let head = b.as_word().map(|w| w.word).unwrap_or_default();
                for _ in 0..1000 {
                    let h = extend(&mut rng, &head, &gv);
                    if !member(&b, &h) {
                        continue;
                    }
                    ensure(dist_oracle(&f, &h) < eps, || {
                        format!("{h:?} in {b:?} is not within {eps} of {f:?}")
                    })?;
                }
                certs += 1;
            }
            Err(metric::MetricError::TooFar(_)) => {
                ensure(dist_oracle(&f, &g) >= eps, || format!("wrongly too far: {f:?} {g:?}"))?;
            }
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(format!("10000 triples, {certs} certificates sampled"))
}

fn weight_diagonal() -> Outcome {
    let mut rng = sampling::seeded(606);
    let mut done = 0;
    let mut bound_checks = 0;
    while done < 200 {
        let b = match rng.gen_range(0..3) {
            0 => sampling::random_finite(&mut rng, 7),
            1 => sampling::random_epset(&mut rng, 6, 3),
            _ => EpSet::all(),
        };
        let basics: Vec<WordBasic> = (0..rng.gen_range(0..=20))
            .map(|_| {
                let s: Vec<u64> = (0..rng.gen_range(0..3)).map(|_| rng.gen_range(0..6)).collect();
                let a = match rng.gen_range(0..3) {
                    0 => b.intersect(&sampling::random_finite(&mut rng, 7)),
                    1 => sampling::random_finite(&mut rng, 7),
                    _ => sampling::random_epset(&mut rng, 6, 3),
                };
                WordBasic::new(s, a)
            })
            .collect();
        if b.is_empty() || basics.iter().any(|w| w.range == b) {
            continue;
        }
        done += 1;
        let w = games::tube_weight_witness(&b, &basics)
            .map_err(|e| e.to_string())?
            .ok_or("no witness for nonempty B")?;
        ensure(image_inside(&w, &b), || format!("{w:?} outside B = {b:?}"))?;
        for basic in basics.iter().filter(|x| x.range.is_subset(&b)) {
            bound_checks += 1;
            ensure(!member(&basic.to_vbasic(), &w), || {
                format!("{w:?} lies in {basic} with B = {b:?}")
            })?;
        }
    }
    Ok(format!("200 lists, {bound_checks} basics inside B^ω avoided"))
}

fn spread() -> Outcome {
    for k in 2..=10u64 {
        let family = games::spread_family(k).map_err(|e| e.to_string())?;
        for (i, (a, _)) in family.iter().enumerate() {
            for (j, (_, f)) in family.iter().enumerate() {
                let m = member(&VBasic::tube(a.clone()), f);
                ensure(m == (i == j), || format!("k = {k}: entry ({i},{j}) is {m}"))?;
            }
        }
    }
    Ok("k = 2..10 identity matrices".into())
}

fn non_menger() -> Outcome {
    let mut rng = sampling::seeded(808);
    for game in 0..1000 {
        let mut p1 = games::challenger_by_name("prefix").map_err(|e| e.to_string())?;
        let t = if game % 4 == 0 {
            play(Mode::Finite, &mut *p1, &mut GreedySelector::new(3), 8)
        } else {
            let mut p2 = RandomSelector::new(rng.gen(), 40, 3);
            play(Mode::Finite, &mut *p1, &mut p2, 8)
        }
        .map_err(|e| format!("game {game}: {e}"))?;
        let Verdict::P1WitnessFound { witness } = &t.verdict else {
            return Err(format!("game {game}: P2 survived"));
        };
        for (k, round) in t.rounds.iter().enumerate() {
            for b in &round.selections {
                let w = b.as_word().ok_or("selection not a word basic")?;
                ensure(w.word.len() == k + 1 && w.range == EpSet::all(), || {
                    format!("game {game}: bad selection {b}")
                })?;
                ensure(!member(b, witness), || {
                    format!("game {game}: witness {witness:?} in {b}")
                })?;
            }
        }
    }
    Ok("1000 games of 8 rounds, P1 wins all".into())
}

fn image_formula() -> Outcome {
    let start = Instant::now();
    let subsets: Vec<EpSet> = (0u64..32)
        .map(|m| EpSet::finite((0..5).filter(|i| m >> i & 1 == 1)))
        .collect();
    let mut options: Vec<Option<&EpSet>> = vec![None];
    options.extend(subsets.iter().map(Some));
    let (mut checked, mut empty) = (0u64, 0u64);
    for u in &subsets {
        for a in &options {
            for b in &options {
                for c in &options {
                    let constraints: BTreeMap<u64, EpSet> = [a, b, c]
                        .iter()
                        .enumerate()
                        .filter_map(|(i, s)| s.map(|s| (i as u64, s.clone())))
                        .collect();
                    let basic = VBasic::new(u.clone(), constraints);
                    match hyper::verify_image_formula(&basic, 6) {
                        Ok(true) => checked += 1,
                        Ok(false) => return Err(format!("formula fails for {basic:?}")),
                        Err(hyper::HyperError::EmptyBasic) => empty += 1,
                        Err(e) => return Err(e.to_string()),
                    }
                }
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("{checked} nonempty basics ({empty} empty skipped)"))
}

fn square() -> Outcome {
    let mut rng = sampling::seeded(1010);
    for _ in 0..1000 {
        let f = sampling::random_qseq_with_drift(&mut rng, 4, 30, 0);
        let g = sampling::random_qseq_with_drift(&mut rng, 4, 30, 0);
        let (sf, sg) = (vtop::phi_split(&f).unwrap(), vtop::phi_split(&g).unwrap());
        ensure(f == g || sf != sg, || format!("{f:?} and {g:?} collide"))?;
        for n in 0..40 {
            let (a, b) = unpair_walk(at(&f, n));
            ensure(at(&sf.0, n) == a && at(&sf.1, n) == b, || {
                format!("split of {f:?} wrong at {n}")
            })?;
        }
    }
    for instance in 0..100 {
        let pool: Vec<u64> = (0..rng.gen_range(1..4)).map(|_| rng.gen_range(0..20)).collect();
        let f = extend(&mut rng, &[], &pool);
        let (f1, f2) = vtop::phi_split(&f).unwrap();
        let target = |rng: &mut SampleRng, h: &QSeq| {
            let s = h.restrict(rng.gen_range(0..4));
            VBasic::word(&s, h.image().union(&sampling::random_finite(rng, 6)))
        };
        let (b1, b2) = (target(&mut rng, &f1), target(&mut rng, &f2));
        let cert = vtop::phi_continuity_cert(&f, &b1, &b2).map_err(|e| e.to_string())?;
        let nb = cert.neighborhood.as_word().ok_or("certificate not in [s, A] form")?;
        let values = nb.range.elements().ok_or("certificate range infinite")?;
        for _ in 0..1000 {
            let g = extend(&mut rng, &nb.word, &values);
            let (g1, g2) = vtop::phi_split(&g).unwrap();
            ensure(member(&b1, &g1) && member(&b2, &g2), || {
                format!("instance {instance}: Φ({g:?}) leaves {b1:?} × {b2:?}")
            })?;
        }
        // The pairing used by the certificate is the one pinned here.
        ensure(CantorPairing.unpair(values[0]) == unpair_walk(values[0]), || {
            "pairing mismatch".into()
        })?;
    }
    Ok("1000 pairs injective, 100 certificates x 1000 samples".into())
}

fn translation() -> Outcome {
    let mut rng = sampling::seeded(1111);
    let t = ImgTranslation::faithful();
    let mut moves = 0;
    for game in 0..1000 {
        let parts = vietoris_core::suites::random_partition(&mut rng, 1 + game % 3);
        let cover = Rc::new(HCoverList::from_partition(format!("partition{game}"), &parts));
        let mut p1 = SameCover::<HSpace>::new(cover.clone());
        let mode = if game % 2 == 0 { Mode::Single } else { Mode::Finite };
        let mut p2 = lift_strategy(&t, Box::new(RandomSelector::new(rng.gen(), 16, 3)));
        let transcript = play(mode, &mut p1, &mut p2, 5).map_err(|e| format!("game {game}: {e}"))?;
        for round in &transcript.rounds {
            for h in &round.selections {
                ensure(cover.sets().contains(h), || format!("game {game}: {h} not in cover"))?;
                moves += 1;
            }
        }
    }

    let mut samples_checked = 0;
    for instance in 0..100 {
        let parts = vietoris_core::suites::random_partition(&mut rng, 1 + instance % 3);
        let cover = HCoverList::from_partition("p", &parts);
        let source = vietoris_core::games::Translation::t1(&t, &cover).unwrap();
        let selections: Vec<VBasic> = (0..rng.gen_range(1..6))
            .map(|_| source.element(rng.gen_range(0..30)).unwrap())
            .collect();
        let samples: Vec<QSeq> = (0..200)
            .map(|_| sampling::random_qseq_with_drift(&mut rng, 4, 8, 0))
            .collect();
        t2_sample_check(&t, &cover, &selections, &samples)
            .map_err(|f| format!("T2 fails at {f:?}"))?;
        for f in &samples {
            for x in selections.iter().filter(|x| member(x, f)) {
                let y = vietoris_core::games::Translation::t2(&t, x, &cover).ok_or("tII failed")?;
                ensure(h_member_oracle(&finite_image(f), &y), || {
                    format!("img of {f:?} not in {y}")
                })?;
                samples_checked += 1;
            }
        }
    }

    let two = Rc::new(HCoverList::new(
        "two",
        vec![
            HBasic::new(vec![set(&[0, 1])]).unwrap(),
            HBasic::new(vec![set(&[2])]).unwrap(),
        ],
    ));
    let broken = ImgTranslation {
        variant: ImgVariant::Misroute,
    };
    let mut p1 = SameCover::<HSpace>::new(two);
    let mut p2 = lift_strategy(&broken, Box::new(GreedySelector::new(1)));
    match play(Mode::Single, &mut p1, &mut p2, 5) {
        Err(GameError::T1Violation { round: 0, .. }) => {}
        other => return Err(format!("broken tII gave {other:?}")),
    }
    Ok(format!(
        "1000 lifted games ({moves} moves), {samples_checked} T2 samples, broken tII rejected in round 0"
    ))
}

fn comparisons() -> Outcome {
    let mut rng = sampling::seeded(1212);
    let bounds = SearchBounds::default();
    let tube = Region::from(VBasic::tube(set(&[0])));
    for i in 0..100 {
        // Cylinders around const 0: every constraint allows 0.
        let mut c = BTreeMap::new();
        for _ in 0..rng.gen_range(1..4) {
            let v = set(&[0]).union(&sampling::random_finite(&mut rng, 4));
            c.insert(rng.gen_range(0..6), v);
        }
        check_cylinder(i, &VBasic::cylinder(c), &tube, &bounds)?;
    }
    isolation(&mut rng)
}

fn check_cylinder(i: usize, cyl: &VBasic, tube: &Region, bounds: &SearchBounds) -> Result<(), String> {
    ensure(member(cyl, &QSeq::constant(0)), || format!("cylinder {i} misses const 0"))?;
    let g = vtop::separating_witness(&Region::from(cyl.clone()), tube, bounds)
        .ok_or_else(|| format!("no witness for cylinder {cyl:?}"))?;
    let tube_basic = VBasic::tube(set(&[0]));
    ensure(member(cyl, &g) && !member(&tube_basic, &g), || {
        format!("bad witness {g:?} for {cyl:?}")
    })
}

fn isolation(rng: &mut SampleRng) -> Outcome {
    let id = QSeq::identity();
    let Isolation::NotIsolated(escape) = vtop::isolation_witness(&id) else {
        return Err("identity reported isolated".into());
    };
    let mut basics = 0;
    while basics < 100 {
        let b = vietoris_core::suites::identity_neighborhood(rng);
        if !member(&b, &id) {
            continue;
        }
        basics += 1;
        let g = escape.escape(&b).map_err(|e| format!("{e} for {b:?}"))?;
        ensure(member(&b, &g) && first_diff(&g, &id).is_some(), || {
            format!("escape {g:?} fails for {b:?}")
        })?;
    }
    for _ in 0..100 {
        let c = rng.gen_range(0..1000);
        ensure(vtop::isolation_witness(&QSeq::constant(c)) == Isolation::Isolated, || {
            format!("const {c} not isolated")
        })?;
    }
    Ok("100 cylinders separated, identity escapes 100 basics, 100 constants isolated".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("basis law", basis_law),
        ("clopen [s,A]", clopen_word_basics),
        ("V(2^ω) not compact", cantor_non_compact),
        ("[[s]] compact", compact_words),
        ("metric", metric_checks),
        ("weight diagonal", weight_diagonal),
        ("spread", spread),
        ("not Menger", non_menger),
        ("image formula", image_formula),
        ("square bijection", square),
        ("translation", translation),
        ("topology comparisons", comparisons),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check)
            .unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("[{:>2}] PASS {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(reason) => {
                failed += 1;
                println!("[{:>2}] FAIL {name}: {reason} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
