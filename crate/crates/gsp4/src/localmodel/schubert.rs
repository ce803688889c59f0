//! Coordinates on open Schubert cells of the affine flag variety, the
//! dimension of their intersection with the monodromy locus, and the
//! top-dimensional components of the naive local model.

use num_integer::Integer;

use crate::affweyl::{star, star_inv, ExtAffElt};
use crate::error::{Error, Result};
use crate::jh::product;
use crate::rootdata::{gsp4, gsp4_dual, phi_inv, vneg, Group, RatPt, Vec4};

/// One affine root coordinate (α∨, m) of N_z̃.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineCoroot {
    pub coroot: Vec4,
    pub m: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchubertCoords {
    /// Φ∨_z̃, sorted.
    pub coords: Vec<AffineCoroot>,
    /// (α∨, d_{α∨,z̃}) for every coroot α∨, positive ones first.
    pub degree_bounds: Vec<(Vec4, i64)>,
}

fn all_coroots() -> Vec<Vec4> {
    let d = gsp4();
    d.pos_coroots.iter().copied().chain(d.pos_coroots.iter().map(vneg)).collect()
}

/// Witness point (1/2, 1/4; 0) of the base alcove.
pub fn default_witness() -> RatPt {
    RatPt::new([2, 1, 0, 0], 4)
}

/// Second interior point (2/5, 1/5; 0), for checking independence of the witness.
pub fn alternate_witness() -> RatPt {
    RatPt::new([2, 1, 0, 0], 5)
}

fn ceil_div(a: i64, b: i64) -> i64 {
    Integer::div_ceil(&a, &b)
}

/// Φ∨_z̃ = {(α∨, m) : ⟨x, α∨⟩ < m < ⟨z̃*(x), α∨⟩} and the degree bounds
/// d = ⌊⟨z̃*(x), α∨⟩⌋ − ⌈⟨x, α∨⟩⌉, for z̃ in the dual extended affine Weyl group.
pub fn schubert_coords_with_witness(z: &ExtAffElt, x: &RatPt) -> Result<SchubertCoords> {
    let d = gsp4();
    let zstar = star_inv(Group::GSp4Dual, z)?;
    let y = d.act_pt(&zstar, x);
    let mut coords = vec![];
    let mut degree_bounds = vec![];
    for co in all_coroots() {
        let (xn, yn) = (crate::rootdata::dot(&x.num, &co), crate::rootdata::dot(&y.num, &co));
        let lo = xn.div_euclid(x.den) + 1;
        let hi = ceil_div(yn, y.den) - 1;
        for m in lo..=hi {
            coords.push(AffineCoroot { coroot: co, m });
        }
        degree_bounds.push((co, yn.div_euclid(y.den) - ceil_div(xn, x.den)));
    }
    coords.sort();
    Ok(SchubertCoords { coords, degree_bounds })
}

pub fn schubert_coords(z: &ExtAffElt) -> Result<SchubertCoords> {
    schubert_coords_with_witness(z, &default_witness())
}

/// {a1, a2, a1+a2, a1−a2} avoids {−m, …, m} modulo p.
pub fn a_is_generic(a: &[i64; 3], m: i64, p: i64) -> bool {
    [a[0], a[1], a[0] + a[1], a[0] - a[1]].iter().all(|x| {
        let r = x.rem_euclid(p);
        r > m && r < p - m
    })
}

/// 4 − #{α > 0 : w̃(A0) ⊂ H_α^{(0,1)}}.
pub fn monodromy_dim_closed_form(w: &ExtAffElt) -> usize {
    4 - gsp4().strips_containing(w)
}

/// Number of coroots α∨ admitting some (α∨, m) ∈ Φ∨_{w̃*} with m ≥ 0.
pub fn monodromy_dim_by_roots(w: &ExtAffElt) -> Result<usize> {
    let z = star(Group::GSp4, w)?;
    let sc = schubert_coords(&z)?;
    let mut roots: Vec<Vec4> = sc.coords.iter().filter(|c| c.m >= 0).map(|c| c.coroot).collect();
    roots.sort();
    roots.dedup();
    Ok(roots.len())
}

/// Dimension of S°(w̃*) ∩ Fl^{∇a}, for w̃ h-small and a h-generic modulo p.
pub fn monodromy_dim(w: &ExtAffElt, a: &[i64; 3], h: i64, p: i64) -> Result<usize> {
    let d = gsp4();
    if !d.is_small(w, h) {
        return Err(Error::Precondition(format!("{} is not {h}-small", d.format_elt(w))));
    }
    if !a_is_generic(a, h, p) {
        return Err(Error::Precondition(format!("a = {a:?} is not {h}-generic mod {p}")));
    }
    let closed = monodromy_dim_closed_form(w);
    let oracle = monodromy_dim_by_roots(w)?;
    if closed != oracle {
        return Err(Error::Invariant(format!(
            "closed form {closed} differs from the root count {oracle} for {}",
            d.format_elt(w)
        )));
    }
    Ok(closed)
}

/// h_λ for a cocharacter: the largest pairing of φ⁻¹(λ) with a coroot.
pub fn h_of_cocharacter(lambda: &Vec4) -> i64 {
    gsp4().h_value(&phi_inv(lambda))
}

/// Adm∨_reg(λ_j) for each embedding, and their product, indexing the
/// 4-dimensional components of the naive local model.
pub fn irr_components(lambda: &[Vec4], a: &[[i64; 3]], p: i64) -> Result<Vec<Vec<ExtAffElt>>> {
    if lambda.len() != a.len() || lambda.is_empty() {
        return Err(Error::Dimension { expected: lambda.len().max(1), got: a.len() });
    }
    let mut parts = vec![];
    for (l, aj) in lambda.iter().zip(a) {
        let h = h_of_cocharacter(l);
        if !a_is_generic(aj, h, p) {
            return Err(Error::Precondition(format!("a = {aj:?} is not {h}-generic mod {p}")));
        }
        parts.push(adm_reg_dual(l)?);
    }
    Ok(product(&parts))
}

/// {z̃ ∈ Adm∨(λ) : z̃* regular}.
pub fn adm_reg_dual(lambda: &Vec4) -> Result<Vec<ExtAffElt>> {
    let d = gsp4();
    let mut out = vec![];
    for z in gsp4_dual().adm(lambda)? {
        if d.is_regular(&star_inv(Group::GSp4Dual, &z)?) {
            out.push(z);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::phi;

    #[test]
    fn identity_has_no_coordinates() {
        let sc = schubert_coords(&ExtAffElt::IDENTITY).unwrap();
        assert!(sc.coords.is_empty());
        assert!(sc.degree_bounds.iter().all(|(_, b)| *b < 0));
    }

    #[test]
    fn translation_by_eta() {
        let d = gsp4();
        let z = ExtAffElt::t(phi(&d.eta));
        let sc = schubert_coords(&z).unwrap();
        let pairing_sum: i64 = d.pos_coroots.iter().map(|co| crate::rootdata::dot(&d.eta, co)).sum();
        assert_eq!(sc.coords.len() as i64, pairing_sum);
        assert_eq!(sc.coords.len(), 7);
        assert_eq!(monodromy_dim(&ExtAffElt::t(d.eta), &[5, 11, 0], 3, 37).unwrap(), 4);
        assert_eq!(monodromy_dim(&ExtAffElt::IDENTITY, &[5, 11, 0], 3, 37).unwrap(), 0);
    }

    #[test]
    fn regular_components_match_ap_pairs() {
        let d = gsp4();
        let reg = adm_reg_dual(&phi(&d.eta)).unwrap();
        let ap = crate::jh::ap_component(d, &[0, 0, 0, 0], 5);
        assert_eq!(reg.len(), ap.len());
        let w0 = ExtAffElt::weyl(d.weyl.longest());
        for (w1, w2) in &ap {
            let z = star(Group::GSp4, &d.mul_all(&[d.inv(w2), w0, *w1])).unwrap();
            assert!(reg.contains(&z), "{}", d.format_elt(&star_inv(Group::GSp4Dual, &z).unwrap()));
        }
        for z in &reg {
            let w = star_inv(Group::GSp4Dual, z).unwrap();
            assert_eq!(monodromy_dim(&w, &[5, 11, 0], 3, 37).unwrap(), 4);
        }
    }

    #[test]
    fn closed_form_over_adm_eta() {
        let d = gsp4();
        let adm = d.adm(&d.eta).unwrap();
        for w in &adm {
            assert_eq!(monodromy_dim_closed_form(w), monodromy_dim_by_roots(w).unwrap(), "{}", d.format_elt(w));
            let z = star(Group::GSp4, w).unwrap();
            assert_eq!(schubert_coords(&z).unwrap().coords.len(), d.length(w));
        }
    }

    #[test]
    fn genericity_of_a() {
        assert!(a_is_generic(&[5, 11, 0], 3, 37));
        assert!(!a_is_generic(&[5, 7, 0], 3, 37));
        assert!(!a_is_generic(&[35, 11, 0], 3, 37));
    }
}
