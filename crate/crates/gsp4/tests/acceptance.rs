//! Acceptance suite: one line per criterion with its verdict and timing.
//!
//! Two criteria cannot hold as stated (no 10-generic type exists at p = 37,
//! and the l = 2 block determinant lacks c14·A41). They print FAIL; the run
//! itself fails only if their observed form changes or anything else fails.

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use gsp4::affweyl::{theta_fixed, transfer_elt, ExtAffElt};
use gsp4::jh::{
    defect_max_type, jh_candidates, jh_membership, jh_of_type, presentation_depth, w_obv, w_question,
    wq_component_with_bound,
};
use gsp4::localmodel::chart::{chart_matrix, chart_membership};
use gsp4::localmodel::frobenius::{
    change_of_basis_check, frobenius_identity_check, random_change_of_basis_instance, random_frobenius_instance,
};
use gsp4::localmodel::schubert::{monodromy_dim, monodromy_dim_by_roots, monodromy_dim_closed_form};
use gsp4::localmodel::springer::springer_blocks;
use gsp4::localmodel::torus::{bruhat_interval_by_search, random_presentation, torus_fixed_bounds};
use gsp4::rootdata::{gl, gsp4, gsp4_dual, phi, transfer_weight, vadd, RootDatum, Vec4, WeylElt};
use gsp4::weights::{depth, in_lowest_alcove, is_m_deep, is_p_generic, pm_poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    /// A failure with exactly the expected form, explained in the detail.
    known_failure: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, known_failure: false, detail: detail.into() }
}

fn random_weyl(rng: &mut ChaCha8Rng, d: &RootDatum) -> WeylElt {
    let all: Vec<WeylElt> = d.weyl.elements().collect();
    all[rng.gen_range(0..all.len())]
}

/// μ with μ in C0 and at least `m` deep, or None if p is too small.
fn random_deep_mu(rng: &mut ChaCha8Rng, p: i64, m: i64) -> Option<Vec4> {
    let d = gsp4();
    for _ in 0..100_000 {
        let mu = [rng.gen_range(0..p), rng.gen_range(0..p), rng.gen_range(-5..5), 0];
        if in_lowest_alcove(d, &mu, p) && depth(d, &mu, p) >= m {
            return Some(mu);
        }
    }
    None
}

fn max_depth_in_c0(p: i64) -> i64 {
    let d = gsp4();
    let mut best = -1;
    for a in 0..p {
        for b in 0..p {
            let mu = [a, b, 0, 0];
            if in_lowest_alcove(d, &mu, p) {
                best = best.max(depth(d, &mu, p));
            }
        }
    }
    best
}

/// Products of all subwords of `letters`, as a set.
fn subword_products(d: &RootDatum, letters: &[usize]) -> HashSet<ExtAffElt> {
    let mut set = HashSet::from([ExtAffElt::IDENTITY]);
    for &l in letters {
        let s = d.affine_simple[l];
        let extra: Vec<ExtAffElt> = set.iter().map(|x| d.mul(x, &s)).collect();
        set.extend(extra);
    }
    set
}

/// u ≤ w by the subword property, splitting a reduced word of w in two halves.
fn subword_leq(d: &RootDatum, u: &ExtAffElt, w: &ExtAffElt) -> bool {
    let rw = d.reduced_word(w);
    assert_eq!(rw.letters.len(), d.length(w), "gallery word is reduced");
    let x = d.mul(u, &d.inv(&rw.omega));
    if d.omega_index(&x) != 0 {
        return false;
    }
    let half = rw.letters.len() / 2;
    let left = subword_products(d, &rw.letters[..half]);
    let right = subword_products(d, &rw.letters[half..]);
    right.iter().any(|b| left.contains(&d.mul(&x, &d.inv(b))))
}

fn random_small_elt(rng: &mut ChaCha8Rng, bound: i64) -> ExtAffElt {
    let d = gsp4();
    let nu = [rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound), 0];
    ExtAffElt::new(nu, random_weyl(rng, d))
}

fn criterion_1() -> Outcome {
    let d = gsp4();
    let g = gl(4);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut pairs, mut mismatches, mut related) = (0, 0, 0);
    while pairs < 500 {
        let w2 = random_small_elt(&mut rng, 3);
        let w1 = if pairs % 2 == 0 {
            random_small_elt(&mut rng, 3)
        } else {
            // a random subword of w2, so that comparable pairs are well represented
            let rw = d.reduced_word(&w2);
            let mut x = ExtAffElt::IDENTITY;
            for &l in &rw.letters {
                if rng.gen_bool(0.5) {
                    x = d.mul(&x, &d.affine_simple[l]);
                }
            }
            d.mul(&x, &rw.omega)
        };
        if w1.nu[..3].iter().any(|v| v.abs() > 3) {
            continue;
        }
        pairs += 1;
        let left = d.bruhat_leq(&w1, &w2);
        let right = subword_leq(g, &transfer_elt(&w1), &transfer_elt(&w2));
        related += usize::from(left);
        mismatches += usize::from(left != right);
    }
    outcome(mismatches == 0, format!("{pairs} pairs ({related} comparable), {mismatches} mismatches"))
}

fn criterion_2() -> Outcome {
    let d = gsp4();
    let g = gl(4);
    let mut details = vec![];
    let mut ok = true;
    for lambda in [d.eta, vadd(&d.eta, &[1, 1, 2, 0])] {
        let adm = d.adm(&lambda).expect("dominant");
        let image: BTreeSet<ExtAffElt> = adm.iter().map(transfer_elt).collect();
        let fixed: BTreeSet<ExtAffElt> =
            g.adm(&transfer_weight(&lambda)).expect("dominant").into_iter().filter(theta_fixed).collect();
        let diff = image.symmetric_difference(&fixed).count();
        ok &= diff == 0 && image.len() == adm.len();
        details.push(format!("λ = {}: |Adm| = {}, symmetric difference {diff}", d.format_weight(&lambda), adm.len()));
    }
    outcome(ok, details.join("; "))
}

fn criterion_3() -> Outcome {
    let d = gsp4();
    let p = 37;
    let a = [5, 11, 0];
    let adm = d.adm(&d.eta).expect("dominant");
    let mut agree = 0;
    let mut failures = vec![];
    for w in &adm {
        let h = (0..=4).find(|&h| d.is_small(w, h)).unwrap_or(4);
        match monodromy_dim(w, &a, h, p) {
            Ok(_) if monodromy_dim_closed_form(w) == monodromy_dim_by_roots(w).unwrap() => agree += 1,
            other => failures.push(format!("{}: {other:?}", d.format_elt(w))),
        }
    }
    outcome(failures.is_empty(), format!("{agree}/{} elements of Adm(η) agree {failures:?}", adm.len()))
}

fn jh_agreement(p: i64, f: usize, rng: &mut ChaCha8Rng) -> Option<(bool, usize, usize)> {
    let d = gsp4();
    let mu: Vec<Vec4> = (0..f).map(|_| random_deep_mu(rng, p, 10)).collect::<Option<_>>()?;
    let s: Vec<WeylElt> = (0..f).map(|_| random_weyl(rng, d)).collect();
    assert!(presentation_depth(d, &mu, p)? >= 10);
    let mut by_pairs: Vec<_> =
        jh_of_type(d, &s, &mu, &vec![[0; 4]; f], p, false).unwrap().into_iter().map(|c| c.weight).collect();
    by_pairs.sort();
    by_pairs.dedup();
    let pool = jh_candidates(d, &s, &mu, p, 5).unwrap();
    let by_alcoves: Vec<_> =
        pool.iter().filter(|w| jh_membership(d, &s, &mu, w, false).unwrap()).cloned().collect();
    Some((by_pairs == by_alcoves, by_pairs.len(), pool.len()))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let at_37 = max_depth_in_c0(37);
    let stated = if at_37 >= 10 {
        let runs: Vec<_> = [1, 2, 1, 2, 1].iter().map(|&f| jh_agreement(37, f, &mut rng)).collect();
        Some(runs.iter().all(|r| matches!(r, Some((true, _, _)))))
    } else {
        None
    };
    let mut notes = vec![];
    let mut supplementary = true;
    for (i, f) in [1, 2, 1, 2, 1].into_iter().enumerate() {
        match jh_agreement(47, f, &mut rng) {
            Some((eq, n, pool)) => {
                supplementary &= eq;
                notes.push(format!("τ{} f={f}: {n} weights, pool {pool}, {}", i + 1, if eq { "equal" } else { "DIFFER" }));
            }
            None => {
                supplementary = false;
                notes.push(format!("τ{}: no 10-deep weight", i + 1));
            }
        }
    }
    match stated {
        Some(ok) => outcome(ok && supplementary, format!("p = 37 and p = 47: {}", notes.join("; "))),
        None => Outcome {
            pass: false,
            known_failure: supplementary && at_37 == 8,
            detail: format!(
                "no 10-generic τ exists at p = 37 (deepest C0 weight is {at_37}-deep); \
                 supplementary run at p = 47 {}: {}",
                if supplementary { "agrees" } else { "DISAGREES" },
                notes.join("; ")
            ),
        },
    }
}

fn criterion_5() -> Outcome {
    let d = gsp4();
    let p = 37;
    let pair_count = wq_component_with_bound(d, 4).len();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut sizes = BTreeSet::new();
    let mut obv_ok = true;
    let mut obv_sizes = BTreeSet::new();
    for _ in 0..20 {
        let mu = vec![random_deep_mu(&mut rng, p, 6).expect("6-deep weights exist at 37")];
        let s = vec![random_weyl(&mut rng, d)];
        let wq = w_question(d, &s, &mu, p, false).unwrap();
        sizes.insert(wq.len());
        let obv = w_obv(d, &s, &mu, p).unwrap();
        obv_sizes.insert(obv.len());
        obv_ok &= obv.len() == 8 && obv.iter().all(|w| wq.iter().any(|e| &e.weight == w));
    }
    let ok = sizes.len() == 1 && sizes.contains(&pair_count) && obv_ok;
    outcome(ok, format!("|W^?| over 20 ρ̄: {sizes:?}, pair count {pair_count}; |W_obv| {obv_sizes:?}, contained: {obv_ok}"))
}

fn criterion_6() -> Outcome {
    let d = gsp4();
    let p = 53;
    let s = vec![d.weyl.simple(1)];
    let mu = vec![[24, 12, 3, 0]];
    let depth = presentation_depth(d, &mu, p);
    let wq = w_question(d, &s, &mu, p, false).unwrap();
    let mut failures = 0;
    for e in &wq {
        let r = defect_max_type(d, &s, &mu, p, e).unwrap();
        failures += usize::from(!(r.contains_sigma && r.sigma_maximal));
    }
    outcome(
        depth >= Some(12) && failures == 0 && !wq.is_empty(),
        format!("ρ̄ = (s1, 24,12;3) at p = 53, depth {depth:?}: {} weights, {failures} failures", wq.len()),
    )
}

fn criterion_7() -> Outcome {
    let mut lines = vec![];
    let mut ok = true;
    let mut only_l2_fails = true;
    for l in 0..4 {
        let r = springer_blocks(l).unwrap();
        ok &= r.verdict;
        only_l2_fails &= r.verdict == (l != 2) && r.nonzero;
        lines.push(format!(
            "l={l} {} ({}; det = {}, with relations {})",
            if r.verdict { "holds" } else { "FAILS" },
            r.claim,
            r.det_raw,
            r.det
        ));
    }
    Outcome { pass: ok, known_failure: only_l2_fails, detail: lines.join("; ") }
}

fn criterion_8() -> Outcome {
    let dd = gsp4_dual();
    let d = gsp4();
    let p = 37u64;
    let shapes = dd.adm(&phi(&d.eta)).unwrap();
    let mut chart_ok = 0;
    for seed in 0..100u64 {
        let z = shapes[seed as usize % shapes.len()];
        let a = chart_matrix(&z, 3, seed, p).unwrap();
        let symplectic = a.similitude(None).unwrap().is_some();
        if symplectic && chart_membership(&a, &z, 3).unwrap() {
            chart_ok += 1;
        }
    }
    let n = 40;
    let mut frob_ok = 0;
    let mut cob_ok = 0;
    for seed in 0..50u64 {
        let (cm, cn, h) = random_frobenius_instance(p, seed, n).unwrap();
        frob_ok += usize::from(frobenius_identity_check(&cm, &cn, h, n).unwrap());
        let (a2, iw) = random_change_of_basis_instance(p, 1, seed, n);
        let s = [d.weyl.elements().nth(seed as usize % 8).unwrap()];
        let r = change_of_basis_check(&a2, &iw, &s, &[[6, 2, 1, 0]], p, n).unwrap();
        cob_ok += usize::from(r.conjugates_iwahori && r.orders_agree);
    }
    outcome(
        chart_ok == 100 && frob_ok == 50 && cob_ok == 50,
        format!("charts {chart_ok}/100 symplectic; Frobenius identity {frob_ok}/50 at N = {n}; change of basis {cob_ok}/50"),
    )
}

fn criterion_9() -> Outcome {
    let d = gsp4();
    let p = 37;
    let mut checked = 0;
    let mut mismatches = 0;
    for m in 0..=3u32 {
        let poly = pm_poly(m);
        for a in -2 * p..=2 * p {
            for b in -2 * p..=2 * p {
                let lambda = [a, b, 0, 0];
                let shifted = [a - d.eta[0], b - d.eta[1], -d.eta[2], 0];
                if !in_lowest_alcove(d, &shifted, p) {
                    continue;
                }
                checked += 1;
                if is_m_deep(d, &shifted, m as i64, p) != is_p_generic(&poly, &[lambda], p) {
                    mismatches += 1;
                }
            }
        }
    }
    outcome(mismatches == 0, format!("{checked} (λ, m) with λ − η in C0, {mismatches} mismatches"))
}

fn criterion_10() -> Outcome {
    let d = gsp4();
    let p = 37;
    let mut contained = 0;
    let mut counts = 0;
    for seed in 0..50u64 {
        let f = 1 + (seed % 2) as usize;
        let lap = random_presentation(f, p, 3, seed).unwrap();
        let b = torus_fixed_bounds(&lap, p).unwrap();
        assert!(b.generic.iter().all(|&g| g));
        contained += usize::from(b.lower_in_upper);
        let expected: usize = lap
            .w1
            .iter()
            .map(|w1| bruhat_interval_by_search(&d.mul(&ExtAffElt::weyl(d.weyl.longest()), w1)).len())
            .product();
        counts += usize::from(b.upper.len() == expected);
    }
    outcome(
        contained == 50 && counts == 50,
        format!("lower ⊆ upper in {contained}/50; |upper| = interval size in {counts}/50"),
    )
}

fn main() {
    let criteria: Vec<(usize, &str, Duration, fn() -> Outcome)> = vec![
        (1, "transfer preserves Bruhat order", Duration::from_secs(60), criterion_1),
        (2, "Adm(λ) is the Θ-fixed part of Adm(T(λ))", Duration::MAX, criterion_2),
        (3, "monodromy dimension: closed form = root count", Duration::from_secs(10), criterion_3),
        (4, "JH by admissible pairs = JH by alcove criterion", Duration::MAX, criterion_4),
        (5, "W^? size constant and W_obv ⊆ W^?", Duration::MAX, criterion_5),
        (6, "defect-maximising types", Duration::MAX, criterion_6),
        (7, "Springer block determinants", Duration::from_secs(5), criterion_7),
        (8, "symplecticity and Frobenius identities", Duration::MAX, criterion_8),
        (9, "m-deep ⟺ P_m-generic", Duration::MAX, criterion_9),
        (10, "torus fixed point sandwich", Duration::MAX, criterion_10),
    ];
    let mut unexpected = vec![];
    let mut known = vec![];
    let mut passed = 0;
    for (n, name, limit, run) in criteria {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= limit;
        let pass = out.pass && in_time;
        let timing = if limit == Duration::MAX {
            format!("{:.2} s", elapsed.as_secs_f64())
        } else {
            format!("{:.2} s, limit {} s", elapsed.as_secs_f64(), limit.as_secs())
        };
        println!("criterion {n:>2} {} {name}: {} ({timing})", if pass { "PASS" } else { "FAIL" }, out.detail);
        if pass {
            passed += 1;
        } else if out.known_failure && in_time {
            known.push(n);
        } else {
            unexpected.push(n);
        }
    }
    println!("acceptance: {passed}/10 passed; failing as documented: {known:?}");
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
