//! Values computed once by independent enumeration and frozen here.

use gsp4::affweyl::ExtAffElt;
use gsp4::jh::{ap_component, w_obv, w_question, wq_component_with_bound};
use gsp4::localmodel::schubert::{adm_reg_dual, schubert_coords};
use gsp4::localmodel::springer::springer_blocks;
use gsp4::rootdata::{gsp4, gsp4_dual, phi};

#[test]
fn admissible_pair_counts() {
    let d = gsp4();
    assert_eq!(ap_component(d, &[0, 0, 0, 0], 5).len(), 20);
    assert_eq!(wq_component_with_bound(d, 4).len(), 20);
    assert_eq!(adm_reg_dual(&phi(&d.eta)).unwrap().len(), 20);
}

#[test]
fn adm_sizes() {
    let d = gsp4();
    assert_eq!(d.adm(&d.eta).unwrap().len(), 63);
    assert_eq!(d.adm(&[3, 2, 2, 0]).unwrap().len(), 145);
}

#[test]
fn weight_sets_of_a_generic_rhobar() {
    let d = gsp4();
    let s = vec![d.weyl.simple(1)];
    let mu = vec![[16, 6, 0, 0]];
    assert_eq!(w_question(d, &s, &mu, 37, false).unwrap().len(), 20);
    assert_eq!(w_obv(d, &s, &mu, 37).unwrap().len(), 8);
}

#[test]
fn translation_by_eta_has_seven_coordinates() {
    let d = gsp4();
    let coords = schubert_coords(&ExtAffElt::t(phi(&d.eta))).unwrap();
    assert_eq!(coords.coords.len(), 7);
    assert_eq!(d.length(&ExtAffElt::t(d.eta)), 7);
}

#[test]
fn coordinates_are_the_nonnegative_degree_bounds() {
    let dd = gsp4_dual();
    for w in dd.adm(&phi(&gsp4().eta)).unwrap() {
        let sc = schubert_coords(&w).unwrap();
        let with_coordinate = sc.coords.iter().map(|c| c.coroot).collect::<std::collections::BTreeSet<_>>();
        for (coroot, bound) in &sc.degree_bounds {
            assert_eq!(*bound >= 0, with_coordinate.contains(coroot), "{}", dd.format_elt(&w));
        }
    }
}

#[test]
fn springer_determinants() {
    let dets: Vec<(String, String)> =
        (0..4).map(|l| springer_blocks(l).unwrap()).map(|r| (r.det_raw.to_string(), r.det.to_string())).collect();
    assert_eq!(dets[0].1, "c12*c13*A21*A31 - c124*A21*A42 - c134*A31*A43 - c14*A41");
    assert_eq!(dets[1].1, "-c12*c23*A21*A32 + c123*A21*A32");
    assert_eq!(dets[2].1, "c12*c123*A21^2*A32 - c1234*A21*A32*A43");
    assert_eq!(dets[3].0, "-c234*A32*A43");
    assert_eq!(dets[3].1, "-c123*A21*A32");
}
