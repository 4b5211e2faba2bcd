//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits with
//! a nonzero status if any criterion fails. All checks are exact.

mod common;

use std::fs;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::{corpus, corpus_dir, products};
use trunckit::dsl::{parse, print};
use trunckit::elim::{
    canon, check_null, check_weakly_constant, enumerate_factorizations, factor_through_pi0, factor_through_proptrunc,
    null_iff_ap_constant, PropTruncFactor,
};
use trunckit::groupoid::{
    enumerate_functors, validate_groupoid, FinGroupoid, GroupoidFunctor, NaturalIso, ObjId, DEFAULT_CAP,
};
use trunckit::hit::{
    build_hit, descent_to_functor, enumerate_descent_data, functor_to_descent, hit_equiv_pi0, hit_is_truncated,
    restricted_induction_check,
};
use trunckit::represent::{enumerate_representations, is_braided, represent, represent_along, RepresentError};
use trunckit::trunc::{pi0, TreeOrder};

/// Pairs whose functor count exceeds this are outside criteria 1, 2 and 7.
const FUNCTOR_LIMIT: usize = 10_000;
/// Search-space cap while listing functors; backtracking visits far fewer.
const LISTING_CAP: u64 = 1_000_000_000;

struct Outcome {
    failures: Vec<String>,
    summary: String,
}

impl Outcome {
    fn new() -> Self {
        Self { failures: Vec::new(), summary: String::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

type Corpus = Vec<(&'static str, Arc<FinGroupoid>)>;

/// Every functor between corpus pairs with at most `FUNCTOR_LIMIT` functors.
fn functor_pool(gs: &Corpus) -> (Vec<(String, GroupoidFunctor)>, usize, Vec<String>) {
    let mut pool = Vec::new();
    let mut pairs = 0;
    let mut skipped = Vec::new();
    for (an, a) in gs {
        for (bn, b) in gs {
            match enumerate_functors(a, b, LISTING_CAP) {
                Ok(fs) if fs.len() <= FUNCTOR_LIMIT => {
                    pairs += 1;
                    pool.extend(fs.into_iter().map(|f| (format!("{an}->{bn}"), f)));
                }
                Ok(fs) => skipped.push(format!("{an}->{bn} ({} functors)", fs.len())),
                Err(e) => skipped.push(format!("{an}->{bn} ({e})")),
            }
        }
    }
    (pool, pairs, skipped)
}

fn criterion_1(pool: &[(String, GroupoidFunctor)], pairs: usize, skipped: &[String]) -> Outcome {
    let mut out = Outcome::new();
    let mut nonempty = 0;
    for (label, f) in pool {
        let null = check_null(f).is_ok();
        let factored = factor_through_pi0(f).is_ok();
        match enumerate_factorizations(f, DEFAULT_CAP) {
            Ok(fg) => {
                nonempty += usize::from(!fg.is_empty());
                out.check(null == factored && factored == !fg.is_empty(), || {
                    format!("{label}: null={null} factored={factored} enumerated={}", fg.objects.len())
                });
            }
            Err(e) => out.check(false, || format!("{label}: {e}")),
        }
    }
    out.summary = format!(
        "{} functors over {pairs} pairs, {nonempty} factor, {} pairs above {FUNCTOR_LIMIT} functors{}",
        pool.len(),
        skipped.len(),
        if skipped.is_empty() { String::new() } else { format!(" [{}]", skipped.join(", ")) }
    );
    out
}

fn criterion_2(pool: &[(String, GroupoidFunctor)]) -> Outcome {
    let mut out = Outcome::new();
    let (mut empty, mut contractible) = (0, 0);
    for (label, f) in pool {
        match enumerate_factorizations(f, DEFAULT_CAP) {
            Ok(fg) => {
                empty += usize::from(fg.is_empty());
                contractible += usize::from(fg.is_contractible());
                out.check(fg.is_empty() || fg.is_contractible(), || {
                    format!("{label}: {} factorizations, not contractible", fg.objects.len())
                });
            }
            Err(e) => out.check(false, || format!("{label}: {e}")),
        }
    }
    out.summary = format!("{empty} empty, {contractible} contractible");
    out
}

fn criterion_3(gs: &Corpus, pool: &[(String, GroupoidFunctor)]) -> Outcome {
    let mut out = Outcome::new();
    let mut choices = 0;
    for (an, a) in gs {
        let comps = pi0(a).count();
        for (bn, b) in gs {
            for choice in products((0..comps).map(|_| b.objects().collect::<Vec<ObjId>>()).collect()) {
                choices += 1;
                let recovered = canon(&choice, a, b).ok().and_then(|(f, cert)| {
                    cert.verify().then_some(())?;
                    factor_through_pi0(&f).ok().map(|fac| fac.f_prime)
                });
                out.check(recovered.as_deref() == Some(&choice[..]), || format!("{an}->{bn}: choice {choice:?}"));
            }
        }
    }
    let mut null = 0;
    for (label, f) in pool {
        let Ok(fac) = factor_through_pi0(f) else { continue };
        null += 1;
        let ok = canon(&fac.f_prime, f.dom(), f.cod())
            .map(|(k, _)| NaturalIso::new(k, f.clone(), fac.witness.components.clone()).check().is_ok())
            .unwrap_or(false);
        out.check(ok, || format!("{label}: canon of the factor is not isomorphic to f"));
    }
    out.summary = format!("{choices} component choices recovered, {null} null functors rebuilt");
    out
}

fn criterion_4(gs: &Corpus) -> Outcome {
    let mut out = Outcome::new();
    let mut maps = 0;
    for (name, a) in gs {
        for k in 1..=3usize {
            for values in products((0..a.object_count()).map(|_| (0..k).collect::<Vec<_>>()).collect()) {
                maps += 1;
                let constant = check_weakly_constant(&values, a).is_ok();
                let factored = factor_through_proptrunc(&values, a);
                out.check(constant == factored.is_ok(), || format!("{name}: {values:?} disagree"));
                if let Ok(PropTruncFactor::Value(v)) = factored {
                    let witnesses = (0..k).filter(|&w| values.iter().all(|&x| x == w)).count();
                    out.check(witnesses == 1 && values.iter().all(|&x| x == v), || {
                        format!("{name}: {values:?} factor {v} not unique")
                    });
                }
            }
        }
    }
    out.summary = format!("{maps} object maps into sets of size 1..3");
    out
}

fn criterion_5(gs: &Corpus) -> Outcome {
    let mut out = Outcome::new();
    let (mut data, mut skipped) = (0, Vec::new());
    for (an, a) in gs {
        let h = build_hit(a);
        out.check(validate_groupoid(&h.carrier.to_raw()).as_ref() == Ok(&*h.carrier), || format!("{an}: carrier invalid"));
        out.check(h.carrier.objects().all(|x| h.carrier.loops(x).len() == 1), || format!("{an}: nontrivial loop"));
        out.check(hit_is_truncated(&h).is_ok(), || format!("{an}: truncation check fails"));
        out.check(hit_equiv_pi0(&h).is_valid(), || format!("{an}: not equivalent to its components"));
        for s in 1..=3 {
            let holds = restricted_induction_check(&h, s, DEFAULT_CAP).map(|v| v.holds()).unwrap_or(false);
            out.check(holds, || format!("{an}: restricted induction fails for |S| = {s}"));
        }
        for (bn, b) in gs {
            let (descent, functors) =
                match (enumerate_descent_data(&h, b, DEFAULT_CAP), enumerate_functors(&h.carrier, b, DEFAULT_CAP)) {
                    (Ok(d), Ok(k)) => (d, k),
                    _ => {
                        skipped.push(format!("{an}->{bn}"));
                        continue;
                    }
                };
            data += descent.len();
            out.check(descent.len() == functors.len(), || {
                format!("{an}->{bn}: {} descent data, {} functors", descent.len(), functors.len())
            });
            for d in &descent {
                let back = descent_to_functor(d, &h).and_then(|k| functor_to_descent(&k, &h));
                out.check(back.as_ref() == Ok(d), || format!("{an}->{bn}: descent round trip fails"));
                out.check(d.collapse_law_holds(), || format!("{an}->{bn}: collapse law fails"));
            }
            for k in &functors {
                let back = functor_to_descent(k, &h).and_then(|d| descent_to_functor(&d, &h));
                out.check(back.is_ok_and(|k2| k2.same_maps(k)), || format!("{an}->{bn}: functor round trip fails"));
            }
        }
    }
    out.summary = format!(
        "{} bases, {data} descent data matched{}",
        gs.len(),
        if skipped.is_empty() { String::new() } else { format!(", over cap: {}", skipped.join(", ")) }
    );
    out
}

fn criterion_6(gs: &Corpus) -> Outcome {
    let mut out = Outcome::new();
    let mut braided = 0;
    let mut equations = 0;
    for (name, g) in gs {
        let is_b = is_braided(g).is_ok();
        match (represent(g), is_b) {
            (Ok(r), true) => {
                braided += 1;
                equations += r.naturality_equations();
                out.check(r.check().is_ok(), || format!("{name}: representation fails its checks"));
                let other = represent_along(g, TreeOrder::Reverse);
                out.check(other.is_ok_and(|o| o.iso == r.iso), || format!("{name}: depends on the spanning tree"));
                let count = enumerate_representations(g, DEFAULT_CAP).unwrap_or(0);
                out.check(count >= 1, || format!("{name}: braided but no representation counted"));
            }
            (Err(RepresentError::NonBraided { .. }), false) => {}
            (r, b) => out.check(false, || format!("{name}: braided={b} but represent gave {:?}", r.err())),
        }
    }
    let bs3 = gs.iter().find(|(n, _)| *n == "BS3").map(|(_, g)| g.clone()).expect("BS3");
    let bz2 = gs.iter().find(|(n, _)| *n == "BZ2").map(|(_, g)| g.clone()).expect("BZ2");
    let witness = match represent(&bs3) {
        Err(RepresentError::NonBraided { p, q, .. }) => {
            let (p, q) = (bs3.find_morphism(&p), bs3.find_morphism(&q));
            match (p, q) {
                (Some(p), Some(q)) => bs3.try_compose(p, q) != bs3.try_compose(q, p),
                _ => false,
            }
        }
        _ => false,
    };
    out.check(witness, || "BS3: no valid non-commuting witness".into());
    let (c_s3, c_z2) = (enumerate_representations(&bs3, DEFAULT_CAP), enumerate_representations(&bz2, DEFAULT_CAP));
    out.check(c_s3 == Ok(0), || format!("BS3 count {c_s3:?}, expected 0"));
    out.check(c_z2 == Ok(1), || format!("BZ2 count {c_z2:?}, expected 1"));
    out.summary = format!("{braided} braided groupoids represented, {equations} naturality equations verified");
    out
}

fn criterion_7(pool: &[(String, GroupoidFunctor)]) -> Outcome {
    let mut out = Outcome::new();
    for (label, f) in pool {
        let (a, b) = null_iff_ap_constant(f);
        out.check(a == b, || format!("{label}: null={a}, ap-constant={b}"));
    }
    out.summary = format!("{} functors", pool.len());
    out
}

fn criterion_8() -> Outcome {
    let mut out = Outcome::new();
    let list = |dir: std::path::PathBuf| -> Vec<std::path::PathBuf> {
        let mut v: Vec<_> = fs::read_dir(dir)
            .map(|rd| rd.filter_map(|e| e.ok().map(|e| e.path())).collect())
            .unwrap_or_default();
        v.retain(|p: &std::path::PathBuf| p.extension().is_some_and(|x| x == "gd"));
        v.sort();
        v
    };
    let docs = list(corpus_dir());
    for path in &docs {
        let name = path.file_name().unwrap_or_default().to_string_lossy().to_string();
        let ok = fs::read_to_string(path).ok().and_then(|t| parse(&t).ok()).is_some_and(|d| parse(&print(&d)).ok() == Some(d));
        out.check(ok, || format!("{name}: round trip fails"));
    }
    let broken = list(corpus_dir().join("broken"));
    for path in &broken {
        let name = path.file_name().unwrap_or_default().to_string_lossy().to_string();
        let text = fs::read_to_string(path).unwrap_or_default();
        let located = match parse(&text) {
            Err(e) => text.split('\n').nth(e.line().wrapping_sub(1)).is_some_and(|l| e.col() >= 1 && e.col() <= l.chars().count()),
            Ok(_) => false,
        };
        out.check(located, || format!("{name}: no located error"));
    }
    out.check(!docs.is_empty() && !broken.is_empty(), || "no fixtures found".into());
    out.summary = format!("{} documents round-trip, {} broken fixtures located", docs.len(), broken.len());
    out
}

fn report(number: usize, title: &str, out: &Outcome, elapsed: Duration, limit: Option<Duration>) -> bool {
    let in_time = limit.is_none_or(|l| elapsed < l);
    let pass = out.failures.is_empty() && in_time;
    let timing = match limit {
        Some(l) => format!("{:.2}s, limit {}s", elapsed.as_secs_f64(), l.as_secs()),
        None => format!("{:.2}s", elapsed.as_secs_f64()),
    };
    println!("{} criterion {number}: {title}: {} ({timing})", if pass { "PASS" } else { "FAIL" }, out.summary);
    for f in out.failures.iter().take(10) {
        println!("    {f}");
    }
    if out.failures.len() > 10 {
        println!("    ... {} more", out.failures.len() - 10);
    }
    pass
}

fn main() {
    let start = Instant::now();
    let gs = corpus();
    let mut all = true;

    let t = Instant::now();
    let (pool, pairs, skipped) = functor_pool(&gs);
    let c1 = criterion_1(&pool, pairs, &skipped);
    all &= report(1, "theorem equivalence at n = 0", &c1, t.elapsed(), Some(Duration::from_secs(60)));

    let t = Instant::now();
    all &= report(2, "factorizations are empty or contractible", &criterion_2(&pool), t.elapsed(), None);

    let t = Instant::now();
    all &= report(3, "canonical-map round trips", &criterion_3(&gs, &pool), t.elapsed(), None);

    let t = Instant::now();
    all &= report(4, "propositional truncation case", &criterion_4(&gs), t.elapsed(), None);

    let t = Instant::now();
    all &= report(5, "HIT suite", &criterion_5(&gs), t.elapsed(), Some(Duration::from_secs(120)));

    let t = Instant::now();
    all &= report(6, "set-based representations", &criterion_6(&gs), t.elapsed(), None);

    let t = Instant::now();
    all &= report(7, "null iff ap-constant", &criterion_7(&pool), t.elapsed(), None);

    let t = Instant::now();
    all &= report(8, "parser round trip and located errors", &criterion_8(), t.elapsed(), None);

    let mut total = Outcome::new();
    total.summary = "whole acceptance run".into();
    all &= report(9, "wall clock", &total, start.elapsed(), Some(Duration::from_secs(300)));

    if !all {
        std::process::exit(1);
    }
}
