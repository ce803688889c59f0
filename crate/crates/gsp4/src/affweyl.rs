//! Extended affine Weyl groups X*(T) ⋊ W, their alcove geometry, the Bruhat
//! and ↑ orders, admissible sets, the star map and the involution Θ.
//!
//! Elements are stored as t_ν w. The group acts on X*(T) ⊗ Q by
//! t_ν w (x) = w(x) + ν, and an element is identified with the alcove
//! containing the image of the base point.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::rootdata::{
    self, dot, gl, gsp4_dual, phi, phi_inv, phi_weyl, phi_weyl_inv, transfer_weight, transfer_weyl, vadd,
    vneg, vscale, vsub, Group, RatPt, RootDatum, Vec4, WeylElt, ZERO,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtAffElt {
    pub nu: Vec4,
    pub w: WeylElt,
}

impl ExtAffElt {
    pub const IDENTITY: ExtAffElt = ExtAffElt { nu: ZERO, w: WeylElt::E };

    pub fn t(nu: Vec4) -> Self {
        ExtAffElt { nu, w: WeylElt::E }
    }

    pub fn weyl(w: WeylElt) -> Self {
        ExtAffElt { nu: ZERO, w }
    }

    /// t_ν w.
    pub fn new(nu: Vec4, w: WeylElt) -> Self {
        ExtAffElt { nu, w }
    }
}

/// s_{i_1} ... s_{i_k} · δ with δ of length zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedWord {
    pub letters: Vec<usize>,
    pub omega: ExtAffElt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub dominant: bool,
    pub restricted: bool,
    pub regular: bool,
    pub small: bool,
    pub generic: bool,
}

/// Affine reflections through the walls of the base alcove.
pub(crate) fn derive_affine_simple(d: &RootDatum) -> (Vec<ExtAffElt>, Vec<(usize, i64)>) {
    let mut elts = vec![];
    let mut walls = vec![];
    for (i, co) in d.pos_coroots.iter().enumerate() {
        let k = d.base_point.strip(co);
        for m in [k, k + 1] {
            let s = ExtAffElt::new(vscale(m, &d.pos_roots[i]), d.reflection(i));
            if d.length(&s) == 1 && !elts.contains(&s) {
                elts.push(s);
                walls.push((i, m));
            }
        }
    }
    (elts, walls)
}

impl RootDatum {
    pub fn mul(&self, a: &ExtAffElt, b: &ExtAffElt) -> ExtAffElt {
        ExtAffElt { nu: vadd(&a.nu, &self.weyl.act(a.w, &b.nu)), w: self.weyl.mul(a.w, b.w) }
    }

    pub fn mul_all(&self, elts: &[ExtAffElt]) -> ExtAffElt {
        elts.iter().fold(ExtAffElt::IDENTITY, |acc, x| self.mul(&acc, x))
    }

    pub fn inv(&self, a: &ExtAffElt) -> ExtAffElt {
        let wi = self.weyl.inv(a.w);
        ExtAffElt { nu: vneg(&self.weyl.act(wi, &a.nu)), w: wi }
    }

    /// w t_ν, normalised to t_{wν} w.
    pub fn w_t(&self, w: WeylElt, nu: &Vec4) -> ExtAffElt {
        ExtAffElt { nu: self.weyl.act(w, nu), w }
    }

    /// The translation ν with a = w t_ν.
    pub fn right_translation(&self, a: &ExtAffElt) -> Vec4 {
        self.weyl.act(self.weyl.inv(a.w), &a.nu)
    }

    pub fn act_pt(&self, a: &ExtAffElt, x: &RatPt) -> RatPt {
        RatPt::new(vadd(&self.weyl.act(a.w, &x.num), &vscale(x.den, &a.nu)), x.den)
    }

    /// Image of zero, i.e. the translation part.
    pub fn act_zero(&self, a: &ExtAffElt) -> Vec4 {
        a.nu
    }

    pub fn alcove_point(&self, a: &ExtAffElt) -> RatPt {
        self.act_pt(a, &self.base_point)
    }

    /// Image in Ω ≅ W̃/W_a ≅ Z.
    pub fn omega_index(&self, a: &ExtAffElt) -> i64 {
        dot(&self.omega_form, &a.nu)
    }

    /// Number of affine root hyperplanes separating the base alcove from a(base alcove).
    pub fn length(&self, a: &ExtAffElt) -> usize {
        self.length_with_witness(a, &self.base_point)
    }

    /// Length computed from another interior point of the base alcove.
    pub fn length_with_witness(&self, a: &ExtAffElt, x: &RatPt) -> usize {
        let y = self.act_pt(a, x);
        self.pos_coroots.iter().map(|co| (y.strip(co) - x.strip(co)).unsigned_abs() as usize).sum()
    }

    /// Reduced word obtained by walking a gallery from the base alcove, crossing
    /// at each step a wall of the current alcove that separates it from the target.
    pub fn reduced_word(&self, a: &ExtAffElt) -> ReducedWord {
        let target = self.alcove_point(a);
        let mut u = ExtAffElt::IDENTITY;
        let mut letters = vec![];
        'walk: loop {
            let y = self.alcove_point(&u);
            for (i, &(root, m)) in self.affine_walls.iter().enumerate() {
                let co = self.weyl.coact(u.w, &self.pos_coroots[root]);
                let level = m + dot(&u.nu, &co);
                let side_y = dot(&y.num, &co) - level * y.den;
                let side_t = dot(&target.num, &co) - level * target.den;
                if side_y.signum() * side_t.signum() < 0 {
                    u = self.mul(&u, &self.affine_simple[i]);
                    letters.push(i);
                    continue 'walk;
                }
            }
            break;
        }
        let omega = self.mul(&self.inv(&u), a);
        debug_assert_eq!(self.length(&omega), 0);
        ReducedWord { letters, omega }
    }

    pub fn from_reduced_word(&self, rw: &ReducedWord) -> ExtAffElt {
        let mut x = ExtAffElt::IDENTITY;
        for &l in &rw.letters {
            x = self.mul(&x, &self.affine_simple[l]);
        }
        self.mul(&x, &rw.omega)
    }

    fn right_descent(&self, w: &ExtAffElt, lw: usize) -> Option<usize> {
        (0..self.affine_simple.len()).find(|&i| self.length(&self.mul(w, &self.affine_simple[i])) < lw)
    }

    /// Bruhat order, with elements in distinct Ω-cosets incomparable.
    ///
    /// Uses the descent recursion: if ws < w then u ≤ w iff min(u, us) ≤ ws.
    pub fn bruhat_leq(&self, u: &ExtAffElt, w: &ExtAffElt) -> bool {
        if self.omega_index(u) != self.omega_index(w) {
            return false;
        }
        let mut u = *u;
        let mut w = *w;
        let mut lu = self.length(&u);
        let mut lw = self.length(&w);
        loop {
            if lu > lw {
                return false;
            }
            if lu == lw {
                return u == w;
            }
            let i = self.right_descent(&w, lw).expect("positive length has a descent");
            let s = &self.affine_simple[i];
            let ws = self.mul(&w, s);
            let us = self.mul(&u, s);
            let lus = self.length(&us);
            if lus < lu {
                u = us;
                lu = lus;
            }
            w = ws;
            lw -= 1;
        }
    }

    pub fn is_dominant_elt(&self, a: &ExtAffElt) -> bool {
        let y = self.alcove_point(a);
        self.simple_coroots.iter().all(|co| dot(&y.num, co) > 0)
    }

    /// The alcove of a lies in the p-restricted region (scaled to p = 1).
    pub fn is_restricted(&self, a: &ExtAffElt) -> bool {
        let y = self.alcove_point(a);
        self.simple_coroots.iter().all(|co| {
            let v = dot(&y.num, co);
            v > 0 && v < y.den
        })
    }

    /// a(A0) is contained in no strip 0 < ⟨x, α∨⟩ < 1.
    pub fn is_regular(&self, a: &ExtAffElt) -> bool {
        let y = self.alcove_point(a);
        self.pos_coroots.iter().all(|co| y.strip(co) != 0)
    }

    /// Number of positive roots α whose strip 0 < ⟨x, α∨⟩ < 1 contains a(A0).
    pub fn strips_containing(&self, a: &ExtAffElt) -> usize {
        let y = self.alcove_point(a);
        self.pos_coroots.iter().filter(|co| y.strip(co) == 0).count()
    }

    /// h_ν = max over roots of ⟨ν, α∨⟩.
    pub fn h_value(&self, nu: &Vec4) -> i64 {
        self.pos_coroots.iter().map(|co| dot(nu, co).abs()).max().unwrap_or(0)
    }

    /// w t_ν is m-small when h_ν ≤ m.
    pub fn is_small(&self, a: &ExtAffElt, m: i64) -> bool {
        self.h_value(&self.right_translation(a)) <= m
    }

    /// w t_ν is m-generic when ν − η is m-deep.
    pub fn is_generic(&self, a: &ExtAffElt, m: i64, p: i64) -> bool {
        let nu = self.right_translation(a);
        crate::weights::is_m_deep(self, &vsub(&nu, &self.eta), m, p)
    }

    pub fn classify(&self, a: &ExtAffElt, m: i64, p: i64) -> Classification {
        Classification {
            dominant: self.is_dominant_elt(a),
            restricted: self.is_restricted(a),
            regular: self.is_regular(a),
            small: self.is_small(a, m),
            generic: self.is_generic(a, m, p),
        }
    }

    /// Alcove-level ↑ order computed by search over raising affine reflections.
    ///
    /// A step replaces the alcove point y by s_{β,n}(y) = y + (n − ⟨y,β∨⟩)β with
    /// n > ⟨y,β∨⟩. Every intermediate point lies between the endpoints in the
    /// dominance order, which bounds the search.
    pub fn uparrow_leq_bfs(&self, u: &ExtAffElt, w: &ExtAffElt) -> bool {
        if self.omega_index(u) != self.omega_index(w) {
            return false;
        }
        let start = self.alcove_point(u);
        let target = self.alcove_point(w);
        if start == target {
            return true;
        }
        if !self.in_positive_cone(&vsub(&target.num, &start.num)) {
            return false;
        }
        let den = start.den;
        let mut seen: HashSet<Vec4> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(start.num);
        queue.push_back(start.num);
        while let Some(y) = queue.pop_front() {
            for (root, co) in self.pos_roots.iter().zip(&self.pos_coroots) {
                let val = dot(&y, co);
                let mut n = val.div_euclid(den) + 1;
                loop {
                    let shift = n * den - val;
                    let next = vadd(&y, &vscale(shift, root));
                    if !self.in_positive_cone(&vsub(&target.num, &next)) {
                        break;
                    }
                    if next == target.num {
                        return true;
                    }
                    if seen.insert(next) {
                        queue.push_back(next);
                    }
                    n += 1;
                }
            }
        }
        false
    }

    /// The ↑ order; on pairs of dominant elements it coincides with the Bruhat order.
    pub fn uparrow_leq(&self, u: &ExtAffElt, w: &ExtAffElt) -> bool {
        if self.is_dominant_elt(u) && self.is_dominant_elt(w) {
            self.bruhat_leq(u, w)
        } else {
            self.uparrow_leq_bfs(u, w)
        }
    }

    /// Adm(λ) = {w̃ : w̃ ≤ t_{wλ} for some w ∈ W}, sorted.
    pub fn adm(&self, lambda: &Vec4) -> Result<Vec<ExtAffElt>> {
        if !self.is_dominant(lambda) {
            return Err(Error::Precondition(format!("{} is not dominant", self.format_weight(lambda))));
        }
        let tops: Vec<ExtAffElt> = self.orbit(lambda).into_iter().map(ExtAffElt::t).collect();
        let mut out = vec![];
        for nu in self.conv_lattice_points(lambda) {
            for w in self.weyl.elements() {
                let x = ExtAffElt::new(nu, w);
                if tops.iter().any(|t| self.bruhat_leq(&x, t)) {
                    out.push(x);
                }
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn adm_reg(&self, lambda: &Vec4) -> Result<Vec<ExtAffElt>> {
        Ok(self.adm(lambda)?.into_iter().filter(|x| self.is_regular(x)).collect())
    }

    /// Representative of the class of `a` modulo translations by X⁰, with Ω index
    /// in [0, index of the X⁰ generator).
    pub fn canonical_mod_center(&self, a: &ExtAffElt) -> ExtAffElt {
        let step = dot(&self.omega_form, &self.center);
        let k = self.omega_index(a).div_euclid(step);
        ExtAffElt::new(vsub(&a.nu, &vscale(k, &self.center)), a.w)
    }

    pub fn format_elt(&self, a: &ExtAffElt) -> String {
        match (a.nu == ZERO, a.w == WeylElt::E) {
            (true, _) => self.format_word(a.w),
            (false, true) => format!("t({})", self.format_weight(&a.nu)),
            (false, false) => format!("t({}) {}", self.format_weight(&a.nu), self.format_word(a.w)),
        }
    }

    /// Parses "t(a,b;c) s1s2", "t(a,b;c)", "s2 s1" or "e".
    pub fn parse_elt(&self, s: &str) -> Result<ExtAffElt> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("t(") {
            let close = rest.find(')').ok_or_else(|| Error::Parse(format!("missing ')' in '{s}'")))?;
            let nu = self.parse_weight(&rest[..close])?;
            let w = self.parse_word(&rest[close + 1..])?;
            Ok(ExtAffElt::new(nu, w))
        } else {
            Ok(ExtAffElt::weyl(self.parse_word(s)?))
        }
    }

    pub fn format_reduced_word(&self, rw: &ReducedWord) -> String {
        let mut parts: Vec<String> = rw.letters.iter().map(|l| format!("a{l}")).collect();
        let k = self.omega_index(&rw.omega);
        if rw.omega != ExtAffElt::IDENTITY {
            parts.push(format!("omega^{k}[{}]", self.format_elt(&rw.omega)));
        }
        if parts.is_empty() {
            "e".into()
        } else {
            parts.join(" ")
        }
    }
}

impl fmt::Display for ExtAffElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t({},{},{},{}) w{}", self.nu[0], self.nu[1], self.nu[2], self.nu[3], self.w.0)
    }
}

/// w̃* = φ(w)⁻¹ t_{φ(ν)} for GSp4 (landing in the dual group), and
/// w⁻¹ t_ν for GL_n.
pub fn star(group: Group, a: &ExtAffElt) -> Result<ExtAffElt> {
    match group {
        Group::GSp4 => {
            let dd = gsp4_dual();
            let wi = dd.weyl.inv(phi_weyl(a.w));
            Ok(dd.w_t(wi, &phi(&a.nu)))
        }
        Group::GL(n) => {
            let d = rootdata::gl_dual(n as usize);
            let wi = d.weyl.inv(a.w);
            Ok(d.w_t(wi, &a.nu))
        }
        g => Err(Error::GroupMismatch(format!("star is defined on GSp4 and GL_n, not {g}"))),
    }
}

/// Inverse of `star`: z̃ = t_μ u in the dual group goes to t_ν w with
/// w = φ⁻¹(u⁻¹), ν = φ⁻¹(u⁻¹μ).
pub fn star_inv(group: Group, z: &ExtAffElt) -> Result<ExtAffElt> {
    match group {
        Group::GSp4Dual => {
            let dd = gsp4_dual();
            let ui = dd.weyl.inv(z.w);
            Ok(ExtAffElt::new(phi_inv(&dd.weyl.act(ui, &z.nu)), phi_weyl_inv(ui)))
        }
        Group::GLDual(n) => {
            let d = rootdata::gl_dual(n as usize);
            let ui = d.weyl.inv(z.w);
            Ok(ExtAffElt::new(d.weyl.act(ui, &z.nu), ui))
        }
        g => Err(Error::GroupMismatch(format!("inverse star is defined on dual groups, not {g}"))),
    }
}

/// T(t_ν w) = t_{T(ν)} T(w) in the extended affine Weyl group of GL4.
pub fn transfer_elt(a: &ExtAffElt) -> ExtAffElt {
    ExtAffElt::new(transfer_weight(&a.nu), transfer_weyl(a.w))
}

/// Θ on GL4 elements with rational translation part:
/// Θ(t_ν w) = t_{Θ(ν)} w0 w w0 with Θ(ν) = (Σν/2)(1,1,1,1) − w0 ν.
pub fn theta_rational(nu: &RatPt, w: WeylElt) -> (RatPt, WeylElt) {
    let d = gl(4);
    let w0 = d.weyl.longest();
    let s: i64 = nu.num.iter().sum();
    let rev = d.weyl.act(w0, &nu.num);
    let num = [0, 1, 2, 3].map(|i| s - 2 * rev[i]);
    (RatPt::new(num, 2 * nu.den), d.weyl.mul(w0, d.weyl.mul(w, w0)))
}

/// Θ on integral GL4 elements; `None` when Θ(ν) is not integral.
pub fn theta(a: &ExtAffElt) -> Option<ExtAffElt> {
    let s: i64 = a.nu.iter().sum();
    if s % 2 != 0 {
        return None;
    }
    let d = gl(4);
    let w0 = d.weyl.longest();
    let rev = d.weyl.act(w0, &a.nu);
    let nu = [0, 1, 2, 3].map(|i| s / 2 - rev[i]);
    Some(ExtAffElt::new(nu, d.weyl.mul(w0, d.weyl.mul(a.w, w0))))
}

pub fn theta_fixed(a: &ExtAffElt) -> bool {
    theta(a) == Some(*a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::gsp4;

    fn d() -> &'static RootDatum {
        gsp4()
    }

    #[test]
    fn affine_simple_reflections() {
        assert_eq!(d().affine_simple.len(), 3);
        assert_eq!(gl(4).affine_simple.len(), 4);
        assert_eq!(gsp4_dual().affine_simple.len(), 3);
        for s in &d().affine_simple {
            assert_eq!(d().mul(s, s), ExtAffElt::IDENTITY);
        }
    }

    #[test]
    fn composition_examples() {
        let d = d();
        let eta = d.eta;
        let s1 = d.weyl.simple(1);
        let s2 = d.weyl.simple(2);
        assert_eq!(d.mul(&ExtAffElt::t(eta), &ExtAffElt::t(eta)), ExtAffElt::t(vscale(2, &eta)));
        let x = ExtAffElt::new(eta, s1);
        let y = ExtAffElt::new(eta, s2);
        assert_eq!(d.mul(&x, &y), ExtAffElt::new([3, 3, 0, 0], d.weyl.mul(s1, s2)));
        assert_eq!(d.mul(&x, &d.inv(&x)), ExtAffElt::IDENTITY);
    }

    #[test]
    fn length_examples() {
        let d = d();
        assert_eq!(d.length(&ExtAffElt::IDENTITY), 0);
        assert_eq!(d.length(&ExtAffElt::t(d.eta)), 7);
        assert_eq!(d.length(&ExtAffElt::weyl(d.weyl.longest())), 4);
    }

    #[test]
    fn star_example() {
        let d = d();
        let x = ExtAffElt::new(d.eta, d.weyl.simple(1));
        let dd = gsp4_dual();
        let s2 = dd.weyl.simple(2);
        assert_eq!(star(Group::GSp4, &x).unwrap(), dd.w_t(s2, &[3, 2, 3, 0]));
        assert_eq!(star_inv(Group::GSp4Dual, &star(Group::GSp4, &x).unwrap()).unwrap(), x);
    }

    #[test]
    fn classify_examples() {
        let d = d();
        let c = d.classify(&ExtAffElt::IDENTITY, 0, 37);
        assert!(c.dominant && c.restricted && !c.regular);
        assert!(d.is_regular(&ExtAffElt::t(d.eta)));
        assert!(d.is_generic(&ExtAffElt::t(d.eta), 0, 37));
    }

    #[test]
    fn adm_small_cases() {
        let d = d();
        assert_eq!(d.adm(&ZERO).unwrap(), vec![ExtAffElt::IDENTITY]);
        let adm = d.adm(&d.eta).unwrap();
        for mu in d.orbit(&d.eta) {
            assert!(adm.contains(&ExtAffElt::t(mu)));
        }
        assert!(d.adm(&[1, 2, 0, 0]).is_err());
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta(&ExtAffElt::IDENTITY), Some(ExtAffElt::IDENTITY));
        let t = transfer_elt(&ExtAffElt::new(d().eta, d().weyl.simple(2)));
        assert!(theta_fixed(&t));
    }

    #[test]
    fn parse_roundtrip() {
        let d = d();
        for s in ["e", "t(2,1;0)", "t(2,1;0) s1s2", "s2s1"] {
            let x = d.parse_elt(s).unwrap();
            assert_eq!(d.parse_elt(&d.format_elt(&x)).unwrap(), x);
        }
    }
}
