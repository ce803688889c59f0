//! Bounds on the torus fixed points of the components C_{(w̃1, ω)} of the
//! local model: from below by {(t_ω w w̃1)*} and from above by the Bruhat
//! interval below w0 w̃1, translated by t_ω.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::affweyl::{star, ExtAffElt};
use crate::error::{Error, Result};
use crate::jh::product;
use crate::rootdata::{gsp4, vsub, Group, Vec4};
use crate::weights::{depth, in_lowest_alcove, restricted_reps, Lap};

/// Presentation depth required by the fixed point bounds.
pub const REQUIRED_DEPTH: i64 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusBounds {
    pub lower: Vec<Vec<ExtAffElt>>,
    pub upper: Vec<Vec<ExtAffElt>>,
    /// ω_j − η is 3-deep in the lowest alcove, per embedding.
    pub generic: Vec<bool>,
    pub lower_in_upper: bool,
    /// Equality holds only off the zero locus of a polynomial in ω that is
    /// not known explicitly, so it is never asserted.
    pub equality: &'static str,
}

/// {w̃ ≤ x}, from the products of all subwords of a reduced word of x.
pub fn bruhat_interval_subwords(x: &ExtAffElt) -> Vec<ExtAffElt> {
    let d = gsp4();
    let rw = d.reduced_word(x);
    let n = rw.letters.len();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        let mut y = ExtAffElt::IDENTITY;
        for (k, &l) in rw.letters.iter().enumerate() {
            if mask >> k & 1 == 1 {
                y = d.mul(&y, &d.affine_simple[l]);
            }
        }
        out.insert(d.mul(&y, &rw.omega));
    }
    out.into_iter().collect()
}

/// {w̃ ≤ x}, by testing every element with translation part in a box around
/// that of x against the Bruhat order.
pub fn bruhat_interval_by_search(x: &ExtAffElt) -> Vec<ExtAffElt> {
    let d = gsp4();
    let r = x.nu[..3].iter().map(|v| v.abs()).max().unwrap_or(0) + 3;
    let mut out = vec![];
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                for w in d.weyl.elements() {
                    let u = ExtAffElt::new([a, b, c, 0], w);
                    if d.bruhat_leq(&u, x) {
                        out.push(u);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

fn translate_star(omega: &Vec4, u: &ExtAffElt) -> Result<ExtAffElt> {
    let d = gsp4();
    star(Group::GSp4, &d.mul(&ExtAffElt::t(*omega), u))
}

/// Lower and upper bounds for C^{T∨}_{(w̃1, ω)} as f-tuples in the dual group.
pub fn torus_fixed_bounds(lap: &Lap, p: i64) -> Result<TorusBounds> {
    let d = gsp4();
    if lap.w1.len() != lap.omega.len() || lap.w1.is_empty() {
        return Err(Error::Dimension { expected: lap.w1.len().max(1), got: lap.omega.len() });
    }
    let mut lower_parts = vec![];
    let mut upper_parts = vec![];
    let mut generic = vec![];
    for (w1, omega) in lap.w1.iter().zip(&lap.omega) {
        if !d.is_restricted(w1) {
            return Err(Error::Precondition(format!("{} is not restricted", d.format_elt(w1))));
        }
        let shifted = vsub(omega, &d.eta);
        generic.push(in_lowest_alcove(d, &shifted, p) && depth(d, &shifted, p) >= REQUIRED_DEPTH);
        let lower: BTreeSet<ExtAffElt> = d
            .weyl
            .elements()
            .map(|w| translate_star(omega, &d.mul(&ExtAffElt::weyl(w), w1)))
            .collect::<Result<_>>()?;
        let top = d.mul(&ExtAffElt::weyl(d.weyl.longest()), w1);
        let upper: BTreeSet<ExtAffElt> =
            bruhat_interval_subwords(&top).iter().map(|u| translate_star(omega, u)).collect::<Result<_>>()?;
        lower_parts.push(lower.into_iter().collect::<Vec<_>>());
        upper_parts.push(upper.into_iter().collect::<Vec<_>>());
    }
    let lower_in_upper = lower_parts.iter().zip(&upper_parts).all(|(l, u)| l.iter().all(|x| u.contains(x)));
    Ok(TorusBounds {
        lower: product(&lower_parts),
        upper: product(&upper_parts),
        generic,
        lower_in_upper,
        equality: "conditional",
    })
}

/// A random presentation with each ω_j − η at least `min_depth` deep in C0.
pub fn random_presentation(f: usize, p: i64, min_depth: i64, seed: u64) -> Result<Lap> {
    let d = gsp4();
    let reps = restricted_reps(d);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w1 = vec![];
    let mut omega = vec![];
    for _ in 0..f {
        w1.push(reps[rng.gen_range(0..reps.len())]);
        let mut found = None;
        for _ in 0..10_000 {
            let a = rng.gen_range(0..p);
            let b = rng.gen_range(0..p);
            let c = rng.gen_range(-p..p);
            let mu: Vec4 = [a, b, c, 0];
            if in_lowest_alcove(d, &mu, p) && depth(d, &mu, p) >= min_depth {
                found = Some(crate::rootdata::vadd(&mu, &d.eta));
                break;
            }
        }
        omega.push(found.ok_or_else(|| Error::Precondition(format!("no {min_depth}-deep weight for p = {p}")))?);
    }
    Ok(Lap { w1, omega })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_oracles_agree() {
        let d = gsp4();
        for w1 in restricted_reps(d) {
            let top = d.mul(&ExtAffElt::weyl(d.weyl.longest()), w1);
            assert_eq!(bruhat_interval_subwords(&top), bruhat_interval_by_search(&top));
        }
    }

    #[test]
    fn trivial_w1() {
        let lap = Lap { w1: vec![ExtAffElt::IDENTITY], omega: vec![[10, 5, 0, 0]] };
        let b = torus_fixed_bounds(&lap, 37).unwrap();
        assert_eq!(b.lower.len(), 8);
        assert_eq!(b.upper.len(), 8);
        assert!(b.lower_in_upper);
        assert_eq!(b.generic, vec![true]);
        assert_eq!(b.equality, "conditional");
    }
}
