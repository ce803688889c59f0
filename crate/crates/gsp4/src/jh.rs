//! Jordan–Hölder combinatorics: admissible pairs, constituents of reductions
//! of Deligne–Lusztig representations, the sets W^? and W_obv, the ↑ relation
//! on Serre weights, defect-maximising types, weight elimination and the
//! transfer to GL4.
//!
//! A representation or parameter is given by a lowest alcove presentation
//! (s, μ) with μ ∈ C0; its element is w̃ = t_{μ+η} s.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use crate::affweyl::ExtAffElt;
use crate::error::{Error, Result};
use crate::rootdata::{
    dot, gl, gsp4, transfer_weight, transfer_weyl, vadd, vsub, Group, RootDatum, Vec4, WeylElt,
};
use crate::types::{type_isomorphic, TameType};
use crate::weights::{
    depth, hat, in_lowest_alcove, lap_central_char, p_dot, pi_shift, r_operator, restricted_reps,
    serre_uparrow, serre_weight, w_h, weight_uparrow, Lap, SerreWeight,
};

/// Cartesian product of per-embedding choices.
pub fn product<T: Clone>(parts: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![vec![]];
    for part in parts {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                part.iter().map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x.clone());
                    v
                })
            })
            .collect();
    }
    out
}

/// Vectors with Ω-index `index` whose non-central coordinates lie in [−bound, bound].
fn central_box(d: &RootDatum, index: i64, bound: i64) -> Vec<Vec4> {
    let free: Vec<usize> = (0..d.dim).filter(|&i| i != d.center_coord).collect();
    let k = d.omega_form[d.center_coord];
    let mut out = vec![];
    let mut cur = vec![-bound; free.len()];
    loop {
        let mut v = [0i64; 4];
        for (slot, &i) in free.iter().enumerate() {
            v[i] = cur[slot];
        }
        let rest = index - dot(&d.omega_form, &v);
        if rest % k == 0 {
            v[d.center_coord] = rest / k;
            out.push(v);
        }
        let mut i = 0;
        while i < cur.len() {
            cur[i] += 1;
            if cur[i] <= bound {
                break;
            }
            cur[i] = -bound;
            i += 1;
        }
        if i == cur.len() {
            break;
        }
    }
    out
}

fn elements_with_index(d: &RootDatum, index: i64, bound: i64) -> Vec<ExtAffElt> {
    central_box(d, index, bound)
        .into_iter()
        .flat_map(|nu| d.weyl.elements().map(move |w| ExtAffElt::new(nu, w)))
        .collect()
}

/// A length-zero element of Ω-index 1.
pub fn omega_generator(d: &RootDatum) -> ExtAffElt {
    elements_with_index(d, 1, 1)
        .into_iter()
        .find(|x| d.length(x) == 0)
        .expect("Ω has an element of index 1")
}

/// Elements w̃ (one per alcove and per Ω-class modulo X⁰) with w̃A0 dominant
/// and w̃A0 ↑ w̃_h A0, scanning translations in a box of the given radius.
/// Without the dominance restriction the down-set of w̃_h A0 is infinite.
pub fn dl_candidates_with_bound(d: &RootDatum, bound: i64) -> Vec<ExtAffElt> {
    let top = w_h(d);
    let delta = omega_generator(d);
    let step = dot(&d.omega_form, &d.center);
    let mut out = vec![];
    for u in elements_with_index(d, d.omega_index(&top), bound) {
        if d.is_dominant_elt(&u) && d.uparrow_leq(&u, &top) {
            let mut x = u;
            for _ in 0..step {
                out.push(x);
                x = d.mul(&x, &delta);
            }
        }
    }
    out.sort();
    out
}

fn dl_candidates(d: &RootDatum) -> &'static [ExtAffElt] {
    static GSP4: OnceLock<Vec<ExtAffElt>> = OnceLock::new();
    static GL4: OnceLock<Vec<ExtAffElt>> = OnceLock::new();
    match d.group {
        Group::GSp4 => GSP4.get_or_init(|| dl_candidates_with_bound(gsp4(), 4)),
        Group::GL(4) => GL4.get_or_init(|| dl_candidates_with_bound(gl(4), 4)),
        g => panic!("Jordan–Hölder data is tabulated for GSp4 and GL4, not {g}"),
    }
}

/// Minimal depth of μ_j in C0 over all j, or None if some μ_j is outside C0.
pub fn presentation_depth(d: &RootDatum, mu: &[Vec4], p: i64) -> Option<i64> {
    if mu.iter().all(|m| in_lowest_alcove(d, m, p)) {
        mu.iter().map(|m| depth(d, m, p)).min()
    } else {
        None
    }
}

fn require_depth(d: &RootDatum, mu: &[Vec4], p: i64, need: i64, force: bool, what: &str) -> Result<()> {
    if force {
        return Ok(());
    }
    match presentation_depth(d, mu, p) {
        Some(m) if m >= need => Ok(()),
        Some(m) => Err(Error::Precondition(format!("{what} is {m}-generic, {need}-generic required"))),
        None => Err(Error::Precondition(format!("{what}: μ is not in the lowest alcove"))),
    }
}

/// 6 for GSp4, 2(n − 1) for GL_n.
fn base_genericity(d: &RootDatum) -> i64 {
    match d.group {
        Group::GL(n) => 2 * (n as i64 - 1),
        _ => 6,
    }
}

fn check_shapes(s: &[WeylElt], mu: &[Vec4]) -> Result<()> {
    if s.len() != mu.len() || s.is_empty() {
        return Err(Error::Dimension { expected: s.len().max(1), got: mu.len() });
    }
    Ok(())
}

/// w̃ = t_{μ+η} s, per embedding.
pub fn wtilde_of(d: &RootDatum, s: &[WeylElt], mu: &[Vec4]) -> Vec<ExtAffElt> {
    s.iter().zip(mu).map(|(&w, m)| ExtAffElt::new(vadd(m, &d.eta), w)).collect()
}

/// An admissible pair (w̃1, w̃2), with w̃1 the canonical restricted representative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ApPair {
    pub w1: Vec<ExtAffElt>,
    pub w2: Vec<ExtAffElt>,
}

/// Pairs (w̃1, w̃2) for a single embedding with w̃1 ↑ t_λ w̃_h⁻¹ w̃2.
pub fn ap_component(d: &RootDatum, lambda: &Vec4, bound: i64) -> Vec<(ExtAffElt, ExtAffElt)> {
    let wh_inv = d.inv(&w_h(d));
    let t_lambda = ExtAffElt::t(*lambda);
    let mut out = vec![];
    for w1 in restricted_reps(d) {
        let index = d.omega_index(w1) - d.omega_index(&t_lambda) - d.omega_index(&wh_inv);
        for w2 in elements_with_index(d, index, bound) {
            if !d.is_dominant_elt(&w2) {
                continue;
            }
            let x = d.mul(&t_lambda, &d.mul(&wh_inv, &w2));
            if d.uparrow_leq(w1, &x) {
                out.push((*w1, w2));
            }
        }
    }
    out.sort();
    out
}

/// AP(λ+η) modulo X⁰, enumerated embedding by embedding.
pub fn ap_set(d: &RootDatum, lambda: &[Vec4]) -> Result<Vec<ApPair>> {
    for l in lambda {
        if !d.is_dominant(l) {
            return Err(Error::Precondition(format!("{} is not dominant", d.format_weight(l))));
        }
    }
    let parts: Vec<Vec<(ExtAffElt, ExtAffElt)>> =
        lambda.iter().map(|l| ap_component(d, l, 2 * d.h_value(l) + 5)).collect();
    Ok(product(&parts)
        .into_iter()
        .map(|choice| ApPair { w1: choice.iter().map(|c| c.0).collect(), w2: choice.iter().map(|c| c.1).collect() })
        .collect())
}

/// A constituent together with the presentation that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constituent {
    pub lap: Lap,
    pub weight: SerreWeight,
}

/// JH(R̄ ⊗ W(λ)) for R with presentation (s, μ), through admissible pairs.
pub fn jh_of_type(
    d: &RootDatum,
    s: &[WeylElt],
    mu: &[Vec4],
    lambda: &[Vec4],
    p: i64,
    force: bool,
) -> Result<Vec<Constituent>> {
    check_shapes(s, mu)?;
    if lambda.len() != s.len() {
        return Err(Error::Dimension { expected: s.len(), got: lambda.len() });
    }
    let h = lambda.iter().map(|l| d.h_value(l)).max().unwrap_or(0);
    let need = if d.group == Group::GSp4 { (h + 3).max(6) } else { (h + d.dim as i64 - 1).max(base_genericity(d)) };
    require_depth(d, mu, p, need, force, "the presentation")?;
    let wr = wtilde_of(d, s, mu);
    let expected_cc: Vec<i64> =
        wr.iter().zip(lambda).map(|(w, l)| d.omega_index(w) + dot(&d.omega_form, l)).collect();
    let mut out: Vec<Constituent> = vec![];
    for pair in ap_set(d, lambda)? {
        let omega: Vec<Vec4> = wr.iter().zip(&pair.w2).map(|(r, w2)| d.mul(r, &d.inv(w2)).nu).collect();
        let lap = Lap { w1: pair.w1.clone(), omega };
        let cc = lap_central_char(d, &lap);
        if cc != expected_cc {
            return Err(Error::Invariant(format!("central character {cc:?} differs from {expected_cc:?}")));
        }
        let weight = serre_weight(d, p, &lap)?;
        out.push(Constituent { lap, weight });
    }
    out.sort_by(|a, b| a.weight.cmp(&b.weight));
    Ok(out)
}

/// F(λ) ∈ JH(R̄) by the alcove criterion: some w̃ = w t_{−ν} with
/// w̃·C0 ↑ w̃_h·C0 and w̃·(μ + sπ(ν)) ↑ w̃_h·λ.
pub fn jh_membership(
    d: &RootDatum,
    s: &[WeylElt],
    mu: &[Vec4],
    weight: &SerreWeight,
    force: bool,
) -> Result<bool> {
    check_shapes(s, mu)?;
    if weight.f() != s.len() {
        return Err(Error::Dimension { expected: s.len(), got: weight.f() });
    }
    require_depth(d, mu, weight.p, base_genericity(d), force, "the presentation")?;
    let p = weight.p;
    let wh = w_h(d);
    let target: Vec<Vec4> = weight.lambda.iter().map(|l| p_dot(d, &wh, l, p)).collect();
    let cands = dl_candidates(d);
    let f = s.len();
    let parts: Vec<Vec<ExtAffElt>> = (0..f).map(|_| cands.to_vec()).collect();
    for choice in product(&parts) {
        // w̃_j = t_κ w = w t_{w⁻¹κ}, so ν_j = −w⁻¹κ
        let nu: Vec<Vec4> = choice.iter().map(|c| vsub(&[0; 4], &d.right_translation(c))).collect();
        let nu_next = pi_shift(&nu);
        let x: Vec<Vec4> = (0..f)
            .map(|j| p_dot(d, &choice[j], &vadd(&mu[j], &d.weyl.act(s[j], &nu_next[j])), p))
            .collect();
        if let Some(x) = crate::weights::align_mod_p_pi(d, p, &x, &target) {
            if x.iter().zip(&target).all(|(a, b)| weight_uparrow(d, a, b, p)) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Serre weights F_{(w̃1, w̃(R)w̃2⁻¹)} over all restricted w̃1 and dominant w̃2
/// of the right Ω-index in a box, without the ↑ condition: a finite pool
/// containing JH(R̄) in which membership can be tested weight by weight.
pub fn jh_candidates(d: &RootDatum, s: &[WeylElt], mu: &[Vec4], p: i64, bound: i64) -> Result<Vec<SerreWeight>> {
    check_shapes(s, mu)?;
    let wr = wtilde_of(d, s, mu);
    let wh_inv = d.inv(&w_h(d));
    let mut parts: Vec<Vec<Lap>> = vec![];
    for r in &wr {
        let mut part = vec![];
        for w1 in restricted_reps(d) {
            let index = d.omega_index(w1) - d.omega_index(&wh_inv);
            for w2 in elements_with_index(d, index, bound) {
                if d.is_dominant_elt(&w2) {
                    part.push(Lap { w1: vec![*w1], omega: vec![d.mul(r, &d.inv(&w2)).nu] });
                }
            }
        }
        parts.push(part);
    }
    let mut out = vec![];
    for choice in product(&parts) {
        let lap = Lap {
            w1: choice.iter().map(|l| l.w1[0]).collect(),
            omega: choice.iter().map(|l| l.omega[0]).collect(),
        };
        match serre_weight(d, p, &lap) {
            Ok(w) => out.push(w),
            Err(Error::Precondition(_)) => {}
            Err(e) => return Err(e),
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Per embedding: (w̃, w̃2) with w̃ restricted (canonical), w̃2 dominant and w̃2 ↑ w̃.
pub fn wq_component_with_bound(d: &RootDatum, bound: i64) -> Vec<(ExtAffElt, ExtAffElt)> {
    let mut out = vec![];
    for w in restricted_reps(d) {
        for w2 in elements_with_index(d, d.omega_index(w), bound) {
            if d.is_dominant_elt(&w2) && d.uparrow_leq(&w2, w) {
                out.push((*w, w2));
            }
        }
    }
    out.sort();
    out
}

fn wq_component(d: &RootDatum) -> &'static [(ExtAffElt, ExtAffElt)] {
    static GSP4: OnceLock<Vec<(ExtAffElt, ExtAffElt)>> = OnceLock::new();
    static GL4: OnceLock<Vec<(ExtAffElt, ExtAffElt)>> = OnceLock::new();
    match d.group {
        Group::GSp4 => GSP4.get_or_init(|| wq_component_with_bound(gsp4(), 4)),
        Group::GL(4) => GL4.get_or_init(|| wq_component_with_bound(gl(4), 4)),
        g => panic!("W^? data is tabulated for GSp4 and GL4, not {g}"),
    }
}

/// An element of W^?(ρ̄) with its parametrisation (w̃, w̃2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WqEntry {
    pub w: Vec<ExtAffElt>,
    pub w2: Vec<ExtAffElt>,
    pub lap: Lap,
    pub weight: SerreWeight,
}

impl WqEntry {
    /// (w̃, w̃2) shifted by X⁰ so that w̃2 is the canonical representative.
    pub fn normalized_by_w2(&self, d: &RootDatum) -> (Vec<ExtAffElt>, Vec<ExtAffElt>) {
        let mut w = vec![];
        let mut w2 = vec![];
        for (a, b) in self.w.iter().zip(&self.w2) {
            let c = d.canonical_mod_center(b);
            let shift = vsub(&b.nu, &c.nu);
            w.push(ExtAffElt::new(vsub(&a.nu, &shift), a.w));
            w2.push(c);
        }
        (w, w2)
    }
}

/// W^?(ρ̄), through the parametrisation by pairs w̃2 ↑ w̃.
pub fn w_question(d: &RootDatum, s: &[WeylElt], mu: &[Vec4], p: i64, force: bool) -> Result<Vec<WqEntry>> {
    check_shapes(s, mu)?;
    require_depth(d, mu, p, base_genericity(d), force, "ρ̄")?;
    let wr = wtilde_of(d, s, mu);
    let comp = wq_component(d).to_vec();
    let parts: Vec<Vec<(ExtAffElt, ExtAffElt)>> = (0..s.len()).map(|_| comp.clone()).collect();
    let mut out = vec![];
    for choice in product(&parts) {
        let w: Vec<ExtAffElt> = choice.iter().map(|c| c.0).collect();
        let w2: Vec<ExtAffElt> = choice.iter().map(|c| c.1).collect();
        let omega: Vec<Vec4> = wr.iter().zip(&w2).map(|(r, x)| d.mul(r, &d.inv(x)).nu).collect();
        let lap = Lap { w1: w.clone(), omega };
        let weight = serre_weight(d, p, &lap)?;
        out.push(WqEntry { w, w2, lap, weight });
    }
    out.sort_by(|a, b| a.weight.cmp(&b.weight));
    Ok(out)
}

/// W^?(ρ̄) as R(JH(σ̄(ρ̄))), through the alcove criterion; an independent route.
pub fn w_question_via_jh(d: &RootDatum, s: &[WeylElt], mu: &[Vec4], p: i64, force: bool) -> Result<Vec<SerreWeight>> {
    let jh = jh_of_type(d, s, mu, &vec![[0; 4]; s.len()], p, force)?;
    let mut out: Vec<SerreWeight> = jh
        .iter()
        .map(|c| SerreWeight::new(d, p, &c.weight.lambda.iter().map(|l| r_operator(d, l, p)).collect::<Vec<_>>()))
        .collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Outer weight F_R(w) = F(w̃_h⁻¹ π⁻¹(ŵ)·(μ + s ŵ⁻¹(0))).
pub fn f_r(d: &RootDatum, s: &[WeylElt], mu: &[Vec4], p: i64, w: &[WeylElt]) -> Result<SerreWeight> {
    check_shapes(s, mu)?;
    if w.len() != s.len() {
        return Err(Error::Dimension { expected: s.len(), got: w.len() });
    }
    let f = s.len();
    let hats: Vec<ExtAffElt> = w.iter().map(|&x| hat(d, x)).collect();
    let wh_inv = d.inv(&w_h(d));
    let lambda: Vec<Vec4> = (0..f)
        .map(|j| {
            let prev = hats[(j + f - 1) % f];
            let arg = vadd(&mu[j], &d.weyl.act(s[j], &d.inv(&hats[j]).nu));
            p_dot(d, &d.mul(&wh_inv, &prev), &arg, p)
        })
        .collect();
    SerreWeight::new(d, p, &lambda)
}

/// Obvious weight F_ρ̄(w) = R(F_R(w)) with R = σ(ρ̄).
pub fn f_rhobar(d: &RootDatum, s: &[WeylElt], mu: &[Vec4], p: i64, w: &[WeylElt]) -> Result<SerreWeight> {
    let outer = f_r(d, s, mu, p, w)?;
    let lambda: Vec<Vec4> = outer.lambda.iter().map(|l| r_operator(d, l, p)).collect();
    SerreWeight::new(d, p, &lambda)
}

pub fn w_obv(d: &RootDatum, s: &[WeylElt], mu: &[Vec4], p: i64) -> Result<Vec<SerreWeight>> {
    let weyl: Vec<WeylElt> = d.weyl.elements().collect();
    let parts: Vec<Vec<WeylElt>> = (0..s.len()).map(|_| weyl.clone()).collect();
    let mut out: Vec<SerreWeight> =
        product(&parts).iter().map(|w| f_rhobar(d, s, mu, p, w)).collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// σ ↑ κ for σ, κ ∈ W^?(ρ̄), computed on representatives and through the
/// parametrisation (equal w̃2 and w̃ ↑ w̃′); the two must agree.
pub fn uparrow_weights(
    d: &RootDatum,
    wq: &[WqEntry],
    sigma: &SerreWeight,
    kappa: &SerreWeight,
) -> Result<bool> {
    let find = |x: &SerreWeight| {
        wq.iter()
            .find(|e| &e.weight == x)
            .ok_or_else(|| Error::Precondition(format!("{} is not in W^?", x.format(d))))
    };
    let (es, ek) = (find(sigma)?, find(kappa)?);
    let raw = serre_uparrow(d, sigma, kappa);
    let (ws, w2s) = es.normalized_by_w2(d);
    let (wk, w2k) = ek.normalized_by_w2(d);
    let structured = w2s == w2k && ws.iter().zip(&wk).all(|(a, b)| d.uparrow_leq(a, b));
    if raw != structured {
        return Err(Error::Invariant(format!(
            "↑ on representatives ({raw}) disagrees with the parametrisation ({structured}) for {} and {}",
            sigma.format(d),
            kappa.format(d)
        )));
    }
    Ok(raw)
}

/// Type built for a weight of W^?(ρ̄), and the verification of its two properties.
#[derive(Clone, Debug)]
pub struct DefectReport {
    pub s: Vec<WeylElt>,
    pub mu: Vec<Vec4>,
    pub depth: Option<i64>,
    /// σ ∈ JH(σ̄(τ)).
    pub contains_sigma: bool,
    /// Every κ ∈ W^?(ρ̄) ∩ JH(σ̄(τ)) with σ ↑ κ equals σ.
    pub sigma_maximal: bool,
}

/// Splits t_ν s into (s, ν − η).
fn presentation_of(d: &RootDatum, x: &[ExtAffElt]) -> (Vec<WeylElt>, Vec<Vec4>) {
    (x.iter().map(|a| a.w).collect(), x.iter().map(|a| vsub(&a.nu, &d.eta)).collect())
}

/// The type τ with w̃(ρ̄, τ) = w̃⁻¹ w0 w̃2, where σ has parameters (w̃_h⁻¹w̃, w̃2).
pub fn defect_max_type(d: &RootDatum, s: &[WeylElt], mu: &[Vec4], p: i64, entry: &WqEntry) -> Result<DefectReport> {
    let wr = wtilde_of(d, s, mu);
    let wh = w_h(d);
    let w0 = ExtAffElt::weyl(d.weyl.longest());
    let wt: Vec<ExtAffElt> = (0..s.len())
        .map(|j| {
            let top = d.mul(&wh, &entry.w[j]);
            d.mul_all(&[wr[j], d.inv(&entry.w2[j]), w0, top])
        })
        .collect();
    let (ts, tmu) = presentation_of(d, &wt);
    let dep = presentation_depth(d, &tmu, p);
    let jh = jh_of_type(d, &ts, &tmu, &vec![[0; 4]; s.len()], p, false)?;
    let jh_weights: BTreeSet<SerreWeight> = jh.into_iter().map(|c| c.weight).collect();
    let contains_sigma = jh_weights.contains(&entry.weight) && jh_membership(d, &ts, &tmu, &entry.weight, false)?;
    let wq = w_question(d, s, mu, p, false)?;
    let mut sigma_maximal = true;
    for e in &wq {
        if e.weight != entry.weight && jh_weights.contains(&e.weight) && uparrow_weights(d, &wq, &entry.weight, &e.weight)? {
            sigma_maximal = false;
        }
    }
    Ok(DefectReport { s: ts, mu: tmu, depth: dep, contains_sigma, sigma_maximal })
}

/// All lowest alcove presentations (s′, μ′) of the type τ(s, v) found near v,
/// obtained as (w s π(w)⁻¹, w(v + p π⁻¹(s⁻¹u) − u) − η).
pub fn lowest_alcove_presentations(d: &RootDatum, s: &[WeylElt], v: &[Vec4], p: i64) -> Vec<(Vec<WeylElt>, Vec<Vec4>)> {
    let f = s.len();
    let radius = 2i64;
    // u_i ≈ −s_i(v_{i+1})/p
    let centres: Vec<Vec4> = (0..f)
        .map(|i| {
            let t = d.weyl.act(s[i], &v[(i + 1) % f]);
            let mut c = [0i64; 4];
            for k in 0..d.dim {
                c[k] = (-(t[k] as f64) / p as f64).round() as i64;
            }
            c
        })
        .collect();
    let offsets: Vec<Vec4> = {
        let mut o = vec![];
        let n = (2 * radius + 1).pow(d.dim as u32);
        for code in 0..n {
            let mut x = [0i64; 4];
            let mut c = code;
            for k in 0..d.dim {
                x[k] = c % (2 * radius + 1) - radius;
                c /= 2 * radius + 1;
            }
            o.push(x);
        }
        o
    };
    let parts: Vec<Vec<Vec4>> = centres.iter().map(|c| offsets.iter().map(|o| vadd(c, o)).collect()).collect();
    let mut found: BTreeSet<(Vec<WeylElt>, Vec<Vec4>)> = BTreeSet::new();
    for u in product(&parts) {
        let mut ws = vec![];
        let mut mus = vec![];
        for j in 0..f {
            let prev = (j + f - 1) % f;
            let shifted = vadd(&v[j], &vsub(&d.weyl.act(d.weyl.inv(s[prev]), &u[prev]).map(|x| x * p), &u[j]));
            let (dom, w) = d.dominant_rep(&shifted);
            let m = vsub(&dom, &d.eta);
            if !in_lowest_alcove(d, &m, p) {
                break;
            }
            ws.push(w);
            mus.push(m);
        }
        if mus.len() < f {
            continue;
        }
        let s_new: Vec<WeylElt> = (0..f)
            .map(|j| d.weyl.mul(d.weyl.mul(ws[j], s[j]), d.weyl.inv(ws[(j + 1) % f])))
            .collect();
        found.insert((s_new, mus));
    }
    found.into_iter().collect()
}

#[derive(Clone, Debug)]
pub struct ElimCase {
    pub s: Vec<WeylElt>,
    /// The presentation of τ(s, w̃_h·λ + η) with μ_ρ̄ − μ − η in the root lattice.
    pub presentation: Option<(Vec<WeylElt>, Vec<Vec4>)>,
    pub admissible: bool,
}

#[derive(Clone, Debug)]
pub struct ElimReport {
    pub cases: Vec<ElimCase>,
    pub all_admissible: bool,
    pub in_w_question: bool,
}

fn adm_eta(d: &RootDatum) -> &'static [ExtAffElt] {
    static GSP4: OnceLock<Vec<ExtAffElt>> = OnceLock::new();
    assert_eq!(d.group, Group::GSp4);
    GSP4.get_or_init(|| gsp4().adm(&gsp4().eta).expect("η is dominant"))
}

/// Weight elimination: for every s, the type τ(s, w̃_h·λ + η) has a presentation
/// with w̃(ρ̄, τ) ∈ Adm(η); if so F(λ) must lie in W^?(ρ̄).
pub fn weight_elim_check(s: &[WeylElt], mu: &[Vec4], p: i64, lambda: &[Vec4], force: bool) -> Result<ElimReport> {
    let d = gsp4();
    check_shapes(s, mu)?;
    if lambda.len() != s.len() {
        return Err(Error::Dimension { expected: s.len(), got: lambda.len() });
    }
    require_depth(d, mu, p, 12, force, "ρ̄")?;
    if !force && !lambda.iter().all(|l| crate::weights::is_m_deep(d, l, 12, p)) {
        return Err(Error::Precondition("λ must be 12-deep".into()));
    }
    let f = s.len();
    let adm = adm_eta(d);
    let wrho = wtilde_of(d, s, mu);
    let wh = w_h(d);
    let v: Vec<Vec4> = lambda.iter().map(|l| vadd(&p_dot(d, &wh, l, p), &d.eta)).collect();
    let weyl: Vec<WeylElt> = d.weyl.elements().collect();
    let mut cases = vec![];
    for choice in product(&(0..f).map(|_| weyl.clone()).collect::<Vec<_>>()) {
        let matching: Vec<(Vec<WeylElt>, Vec<Vec4>)> = lowest_alcove_presentations(d, &choice, &v, p)
            .into_iter()
            .filter(|(_, m)| m.iter().zip(mu).all(|(a, b)| d.in_root_lattice(&vsub(&vsub(b, a), &d.eta))))
            .collect();
        if matching.len() > 1 {
            return Err(Error::Invariant(format!("{} compatible presentations of one type", matching.len())));
        }
        let presentation = matching.into_iter().next();
        let admissible = presentation.as_ref().map_or(false, |(ts, tmu)| {
            wtilde_of(d, ts, tmu)
                .iter()
                .zip(&wrho)
                .all(|(t, r)| adm.contains(&d.mul(&d.inv(t), r)))
        });
        cases.push(ElimCase { s: choice, presentation, admissible });
    }
    let all_admissible = cases.iter().all(|c| c.admissible);
    let weight = SerreWeight::new(d, p, lambda)?;
    let in_w_question = w_question(d, s, mu, p, force)?.iter().any(|e| e.weight == weight);
    if all_admissible && !in_w_question {
        return Err(Error::Invariant(format!("{} passes weight elimination but is not in W^?", weight.format(d))));
    }
    Ok(ElimReport { cases, all_admissible, in_w_question })
}

/// Checks that τ(s, v) and each found presentation define isomorphic types.
pub fn presentations_isomorphic(s: &[WeylElt], v: &[Vec4], p: i64, found: &(Vec<WeylElt>, Vec<Vec4>)) -> Result<bool> {
    let d = gsp4();
    let orig = TameType::new(p, s.to_vec(), v.iter().map(|x| vsub(x, &d.eta)).collect())?;
    let other = TameType::new(p, found.0.clone(), found.1.clone())?;
    type_isomorphic(&orig, &other)
}

/// Outcome of comparing constituents on the GSp4 side and after transfer to GL4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferReport {
    pub gsp4_member: bool,
    pub gl4_member: bool,
    /// |a_j − p/2| > 3/2 for μ = (a_j, b_j; c_j).
    pub guard: bool,
    pub forward_holds: bool,
    pub equivalent: bool,
}

pub fn transfer_weight_tuple(lambda: &[Vec4]) -> Vec<Vec4> {
    lambda.iter().map(transfer_weight).collect()
}

pub fn transfer_serre_weight(sigma: &SerreWeight) -> Result<SerreWeight> {
    SerreWeight::new(gl(4), sigma.p, &transfer_weight_tuple(&sigma.lambda))
}

pub fn transfer_guard(mu: &[Vec4], p: i64) -> bool {
    mu.iter().all(|m| (2 * m[0] - p).abs() > 3)
}

pub fn transfer_jh_compat(s: &[WeylElt], mu: &[Vec4], weight: &SerreWeight, force: bool) -> Result<TransferReport> {
    let d = gsp4();
    let g = gl(4);
    let gsp4_member = jh_membership(d, s, mu, weight, force)?;
    let ts: Vec<WeylElt> = s.iter().map(|&w| transfer_weyl(w)).collect();
    let tmu = transfer_weight_tuple(mu);
    let gl4_member = jh_membership(g, &ts, &tmu, &transfer_serre_weight(weight)?, force)?;
    let guard = transfer_guard(mu, weight.p);
    Ok(TransferReport {
        gsp4_member,
        gl4_member,
        guard,
        forward_holds: !gsp4_member || gl4_member,
        equivalent: gsp4_member == gl4_member,
    })
}

/// Whether a GL4 weight class is the transfer of a GSp4 weight: x1 + x4 = x2 + x3.
pub fn in_transfer_image(sigma: &SerreWeight) -> bool {
    sigma.lambda.iter().all(|x| x[0] + x[3] == x[1] + x[2])
}

/// T(W^?(ρ̄)) and W^?(std ρ̄) ∩ T(X1), both as sorted GL4 weight classes.
pub fn transfer_w_question(s: &[WeylElt], mu: &[Vec4], p: i64, force: bool) -> Result<(Vec<SerreWeight>, Vec<SerreWeight>)> {
    let d = gsp4();
    let mut left: Vec<SerreWeight> =
        w_question(d, s, mu, p, force)?.iter().map(|e| transfer_serre_weight(&e.weight)).collect::<Result<_>>()?;
    left.sort();
    left.dedup();
    let ts: Vec<WeylElt> = s.iter().map(|&w| transfer_weyl(w)).collect();
    let mut right: Vec<SerreWeight> = w_question(gl(4), &ts, &transfer_weight_tuple(mu), p, force)?
        .into_iter()
        .map(|e| e.weight)
        .filter(in_transfer_image)
        .collect();
    right.sort();
    right.dedup();
    Ok((left, right))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_generator_has_index_one() {
        for d in [gsp4(), gl(4)] {
            let g = omega_generator(d);
            assert_eq!(d.omega_index(&g), 1);
            assert_eq!(d.length(&g), 0);
        }
    }

    #[test]
    fn candidate_bound_is_wide_enough() {
        let d = gsp4();
        assert_eq!(dl_candidates_with_bound(d, 4), dl_candidates_with_bound(d, 6));
        assert_eq!(wq_component_with_bound(d, 4), wq_component_with_bound(d, 6));
    }

    #[test]
    fn ap_contains_reflexive_pairs() {
        let d = gsp4();
        let ap = ap_component(d, &[0; 4], 5);
        let wh = w_h(d);
        for w1 in restricted_reps(d) {
            let w2 = d.mul(&wh, w1);
            assert!(ap.contains(&(*w1, w2)), "{}", d.format_elt(w1));
        }
    }
}
