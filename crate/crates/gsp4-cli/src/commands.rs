use gsp4::affweyl::{star_inv, transfer_elt, ExtAffElt};
use gsp4::jh::{
    defect_max_type, jh_membership, jh_of_type, transfer_jh_compat, transfer_w_question, w_obv, w_question,
    weight_elim_check,
};
use gsp4::localmodel::chart::{chart_matrix, chart_membership};
use gsp4::localmodel::frobenius::{
    change_of_basis_check, frobenius_identity_check, random_change_of_basis_instance, random_frobenius_instance,
};
use gsp4::localmodel::schubert::{irr_components, monodromy_dim_by_roots, monodromy_dim_closed_form};
use gsp4::localmodel::{monodromy_dim, springer_blocks, torus_fixed_bounds};
use gsp4::rootdata::{gl, gsp4, gsp4_dual, transfer_weight, Group, RootDatum, Vec4, WeylElt};
use gsp4::types::{niveau_classify, Niveau, TameType};
use gsp4::weights::{Lap, SerreWeight};
use gsp4::{Error, Result};
use serde_json::{json, Value};

use crate::{Command, Common};

fn is_odd_prime(p: i64) -> bool {
    p > 2 && (2..).take_while(|k| k * k <= p).all(|k| p % k != 0)
}

fn tuple<'a>(s: &'a str, f: usize, what: &str) -> Result<Vec<&'a str>> {
    let parts: Vec<&str> = s.split('|').map(str::trim).collect();
    if parts.len() != f {
        return Err(Error::Parse(format!("{what} has {} entries, f = {f}", parts.len())));
    }
    Ok(parts)
}

fn weights(d: &RootDatum, s: &str, f: usize, what: &str) -> Result<Vec<Vec4>> {
    tuple(s, f, what)?.iter().map(|x| d.parse_weight(x)).collect()
}

fn words(d: &RootDatum, s: &str, f: usize) -> Result<Vec<WeylElt>> {
    tuple(s, f, "s")?.iter().map(|x| d.parse_word(x)).collect()
}

fn elts(d: &RootDatum, s: &str, f: usize, what: &str) -> Result<Vec<ExtAffElt>> {
    tuple(s, f, what)?.iter().map(|x| d.parse_elt(x)).collect()
}

fn triples(s: &str, f: usize) -> Result<Vec<[i64; 3]>> {
    tuple(s, f, "a")?
        .iter()
        .map(|x| {
            let v: Vec<i64> = x
                .split([',', ';'])
                .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad integer in '{x}'"))))
                .collect::<Result<_>>()?;
            <[i64; 3]>::try_from(v).map_err(|v| Error::Dimension { expected: 3, got: v.len() })
        })
        .collect()
}

fn fmt_elts(d: &RootDatum, xs: &[ExtAffElt]) -> Value {
    json!(xs.iter().map(|x| d.format_elt(x)).collect::<Vec<_>>())
}

fn fmt_tuple(d: &RootDatum, xs: &[ExtAffElt]) -> String {
    xs.iter().map(|x| d.format_elt(x)).collect::<Vec<_>>().join(" | ")
}

fn fmt_weights(d: &RootDatum, xs: &[Vec4]) -> String {
    xs.iter().map(|x| d.format_weight(x)).collect::<Vec<_>>().join(" | ")
}

fn fmt_words(d: &RootDatum, xs: &[WeylElt]) -> String {
    xs.iter().map(|&x| d.format_word(x)).collect::<Vec<_>>().join(" | ")
}

fn mark_forced(mut v: Value, force: bool) -> Value {
    if force {
        if let Value::Object(map) = &mut v {
            map.insert("forced".into(), json!(true));
        }
    }
    v
}

fn pass(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "fail"
    }
}

pub fn run(cmd: &Command, c: &Common) -> Result<Value> {
    if !is_odd_prime(c.p) {
        return Err(Error::Parse(format!("p = {} is not an odd prime", c.p)));
    }
    if c.f == 0 {
        return Err(Error::Parse("f must be at least 1".into()));
    }
    log::debug!("{cmd:?} with {c:?}");
    let d = gsp4();
    let (p, f) = (c.p, c.f);
    let out = match cmd {
        Command::Adm { lambda, reg } => {
            let l = d.parse_weight(lambda)?;
            let set = if *reg { d.adm_reg(&l)? } else { d.adm(&l)? };
            json!({ "lambda": d.format_weight(&l), "count": set.len(), "elements": fmt_elts(d, &set) })
        }
        Command::Bruhat { x, y } => {
            let (x, y) = (d.parse_elt(x)?, d.parse_elt(y)?);
            json!({
                "leq": d.bruhat_leq(&x, &y),
                "length_x": d.length(&x),
                "length_y": d.length(&y),
                "transfer_leq": gl(4).bruhat_leq(&transfer_elt(&x), &transfer_elt(&y)),
            })
        }
        Command::Uparrow { x, y } => {
            let (x, y) = (d.parse_elt(x)?, d.parse_elt(y)?);
            json!({ "leq": d.uparrow_leq(&x, &y) })
        }
        Command::Transfer { x, lambda, s, mu, weight } => match (x, lambda, s, mu) {
            (Some(x), None, None, None) => {
                let x = d.parse_elt(x)?;
                json!({ "element": gl(4).format_elt(&transfer_elt(&x)) })
            }
            (None, Some(l), None, None) => {
                let l = d.parse_weight(l)?;
                json!({ "weight": gl(4).format_weight(&transfer_weight(&l)) })
            }
            (None, None, Some(s), Some(mu)) => {
                let s = words(d, s, f)?;
                let mu = weights(d, mu, f, "mu")?;
                let (left, right) = transfer_w_question(&s, &mu, p, c.force)?;
                let fmt = |xs: &[SerreWeight]| xs.iter().map(|w| w.format(gl(4))).collect::<Vec<_>>();
                let mut v = json!({
                    "transferred_w_question": fmt(&left),
                    "gl4_w_question_in_image": fmt(&right),
                    "equal": left == right,
                });
                if let Some(w) = weight {
                    let sigma = SerreWeight::new(d, p, &weights(d, w, f, "weight")?)?;
                    let r = transfer_jh_compat(&s, &mu, &sigma, c.force)?;
                    v["jh"] = json!({
                        "gsp4_member": r.gsp4_member,
                        "gl4_member": r.gl4_member,
                        "guard": r.guard,
                        "forward_holds": r.forward_holds,
                        "equivalent": r.equivalent,
                    });
                }
                mark_forced(v, c.force)
            }
            _ => return Err(Error::Parse("transfer takes --x, --lambda, or --s with --mu".into())),
        },
        Command::Jh { s, mu, lambda, weight } => {
            let s = words(d, s, f)?;
            let mu = weights(d, mu, f, "mu")?;
            let v = if let Some(w) = weight {
                let sigma = SerreWeight::new(d, p, &weights(d, w, f, "weight")?)?;
                json!({ "weight": sigma.format(d), "member": jh_membership(d, &s, &mu, &sigma, c.force)? })
            } else {
                let lambda = match lambda {
                    Some(l) => weights(d, l, f, "lambda")?,
                    None => vec![[0; 4]; f],
                };
                let cs = jh_of_type(d, &s, &mu, &lambda, p, c.force)?;
                json!({
                    "count": cs.len(),
                    "constituents": cs.iter().map(|x| json!({
                        "presentation": x.lap.format(d),
                        "weight": x.weight.format(d),
                    })).collect::<Vec<_>>(),
                })
            };
            mark_forced(v, c.force)
        }
        Command::Wq { s, mu } => {
            let s = words(d, s, f)?;
            let mu = weights(d, mu, f, "mu")?;
            let wq = w_question(d, &s, &mu, p, c.force)?;
            let v = json!({
                "count": wq.len(),
                "weights": wq.iter().map(|e| json!({
                    "w": fmt_tuple(d, &e.w),
                    "w2": fmt_tuple(d, &e.w2),
                    "presentation": e.lap.format(d),
                    "weight": e.weight.format(d),
                })).collect::<Vec<_>>(),
            });
            mark_forced(v, c.force)
        }
        Command::Wobv { s, mu } => {
            let s = words(d, s, f)?;
            let mu = weights(d, mu, f, "mu")?;
            let ws = w_obv(d, &s, &mu, p)?;
            json!({ "count": ws.len(), "weights": ws.iter().map(|w| w.format(d)).collect::<Vec<_>>() })
        }
        Command::Defectmax { s, mu, index } => {
            let s = words(d, s, f)?;
            let mu = weights(d, mu, f, "mu")?;
            let wq = w_question(d, &s, &mu, p, c.force)?;
            let chosen: Vec<usize> = match index {
                Some(i) if *i < wq.len() => vec![*i],
                Some(i) => return Err(Error::Precondition(format!("index {i} exceeds |W^?| = {}", wq.len()))),
                None => (0..wq.len()).collect(),
            };
            let mut reports = vec![];
            for i in chosen {
                let r = defect_max_type(d, &s, &mu, p, &wq[i])?;
                reports.push(json!({
                    "weight": wq[i].weight.format(d),
                    "type": { "s": fmt_words(d, &r.s), "mu": fmt_weights(d, &r.mu) },
                    "depth": r.depth,
                    "contains_sigma": r.contains_sigma,
                    "sigma_maximal": r.sigma_maximal,
                }));
            }
            let all = reports.iter().all(|r| r["contains_sigma"] == json!(true) && r["sigma_maximal"] == json!(true));
            mark_forced(json!({ "reports": reports, "verdict": pass(all) }), c.force)
        }
        Command::Weightelim { s, mu, lambda } => {
            let s = words(d, s, f)?;
            let mu = weights(d, mu, f, "mu")?;
            let lambda = weights(d, lambda, f, "lambda")?;
            let r = weight_elim_check(&s, &mu, p, &lambda, c.force)?;
            let v = json!({
                "cases": r.cases.iter().map(|k| json!({
                    "s": fmt_words(d, &k.s),
                    "presentation": k.presentation.as_ref().map(|(ps, pm)| json!({
                        "s": fmt_words(d, ps),
                        "mu": fmt_weights(d, pm),
                    })),
                    "admissible": k.admissible,
                })).collect::<Vec<_>>(),
                "all_admissible": r.all_admissible,
                "in_w_question": r.in_w_question,
                "verdict": pass(!r.all_admissible || r.in_w_question),
            });
            mark_forced(v, c.force)
        }
        Command::Taumap { s, mu } => {
            let tau = TameType::new(p, words(d, s, f)?, weights(d, mu, f, "mu")?)?;
            let e = tau.exponents();
            json!({
                "level": e.level,
                "modulus": e.modulus(p).to_string(),
                "exponents": e.raw.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "residues": e.residues(p).iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "simc": e.simc.to_string(),
                "wtilde": fmt_tuple(d, &tau.wtilde()),
            })
        }
        Command::Niveau { s, mu } => {
            let tau = TameType::new(p, words(d, s, f)?, weights(d, mu, f, "mu")?)?;
            let n = niveau_classify(&tau);
            let data = match &n {
                Niveau::Borel { theta } => json!({ "theta": theta.map(|x| x.to_string()) }),
                Niveau::Siegel { mu, theta2 } => {
                    json!({ "mu": mu.map(|x| x.to_string()), "theta2": theta2.to_string() })
                }
                Niveau::Klingen { theta1, mu } => {
                    json!({ "theta1": theta1.to_string(), "mu": mu.map(|x| x.to_string()) })
                }
                Niveau::Cuspidal => json!({}),
            };
            json!({ "parabolic": n.tag(), "data": data, "s_tau": d.format_word(tau.s_tau()) })
        }
        Command::Monodim { x, a, h } => {
            let x = d.parse_elt(x)?;
            let a = triples(a, 1)?[0];
            let dim = monodromy_dim(&x, &a, *h, p)?;
            json!({
                "dim": dim,
                "closed_form": monodromy_dim_closed_form(&x),
                "root_count": monodromy_dim_by_roots(&x)?,
            })
        }
        Command::Irr { lambda, a } => {
            let dd = gsp4_dual();
            let lambda = weights(dd, lambda, f, "lambda")?;
            let a = triples(a, f)?;
            let comps = irr_components(&lambda, &a, p)?;
            json!({
                "count": comps.len(),
                "components": comps.iter().map(|z| fmt_tuple(dd, z)).collect::<Vec<_>>(),
                "starred": comps
                    .iter()
                    .map(|z| {
                        let w: Vec<ExtAffElt> =
                            z.iter().map(|x| star_inv(Group::GSp4Dual, x)).collect::<Result<_>>()?;
                        Ok(fmt_tuple(d, &w))
                    })
                    .collect::<Result<Vec<_>>>()?,
            })
        }
        Command::Fixedpoints { w1, omega } => {
            let lap = Lap { w1: elts(d, w1, f, "w1")?, omega: weights(d, omega, f, "omega")? };
            let b = torus_fixed_bounds(&lap, p)?;
            if !c.force && !b.generic.iter().all(|&g| g) {
                return Err(Error::Precondition(format!(
                    "the presentation is not {}-deep in every embedding",
                    gsp4::localmodel::torus::REQUIRED_DEPTH
                )));
            }
            let dd = gsp4_dual();
            let v = json!({
                "lower": b.lower.iter().map(|x| fmt_tuple(dd, x)).collect::<Vec<_>>(),
                "upper": b.upper.iter().map(|x| fmt_tuple(dd, x)).collect::<Vec<_>>(),
                "lower_count": b.lower.len(),
                "upper_count": b.upper.len(),
                "generic": b.generic,
                "lower_in_upper": b.lower_in_upper,
                "equality": b.equality,
            });
            mark_forced(v, c.force)
        }
        Command::Springer { l } => {
            let r = springer_blocks(*l)?;
            json!({
                "l": r.l,
                "matrix": r.matrix.iter().map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "det": r.det_raw.to_string(),
                "det_with_relations": r.det.to_string(),
                "claim": r.claim,
                "nonzero": r.nonzero,
                "verdict": pass(r.verdict),
            })
        }
        Command::Chart { z, h } => {
            let dd = gsp4_dual();
            let z = dd.parse_elt(z)?;
            let a = chart_matrix(&z, *h, c.seed, p as u64)?;
            let sim = a.similitude(None)?;
            json!({
                "z": dd.format_elt(&z),
                "matrix": a.term_lists(),
                "member": chart_membership(&a, &z, *h)?,
                "similitude": sim.map(|x| x.to_string()),
            })
        }
        Command::Frobcheck { s, mu } => {
            let n = c.precision;
            let (cm, cn, h) = random_frobenius_instance(p as u64, c.seed, n)?;
            let frob = frobenius_identity_check(&cm, &cn, h, n)?;
            let s = words(d, s, f)?;
            let mu = weights(d, mu, f, "mu")?;
            let (a2, iw) = random_change_of_basis_instance(p as u64, f, c.seed, n);
            let cob = change_of_basis_check(&a2, &iw, &s, &mu, p as u64, n)?;
            json!({
                "precision": n,
                "frobenius_identity": frob,
                "conjugates_iwahori": cob.conjugates_iwahori,
                "orders_agree": cob.orders_agree,
                "verdict": pass(frob && cob.conjugates_iwahori && cob.orders_agree),
            })
        }
        Command::Batch { .. } => return Err(Error::Parse("batch is handled by the caller".into())),
    };
    Ok(out)
}
