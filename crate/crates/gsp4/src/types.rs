//! Tame inertial L-parameters given by presentations (s, μ): explicit
//! exponents of the associated characters, the parabolic/cuspidal
//! classification by s_τ, and the elements w̃(τ), w̃(ρ̄), w̃(ρ̄, τ).

use num_integer::Integer;

use crate::affweyl::ExtAffElt;
use crate::error::{Error, Result};
use crate::rootdata::{gsp4, vadd, Mat4, RootDatum, Vec4, WeylElt};

pub type Vec4W = [i128; 4];

fn act_wide(m: &Mat4, v: &Vec4W) -> Vec4W {
    let mut out = [0i128; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i] += m[i][j] as i128 * v[j];
        }
    }
    out
}

fn widen(v: &Vec4) -> Vec4W {
    [v[0] as i128, v[1] as i128, v[2] as i128, v[3] as i128]
}

/// T = std∘φ on wide vectors: (a,b;c) ↦ (a+b+c, a+c, b+c, c).
fn transfer_wide(l: &Vec4W) -> Vec4W {
    [l[0] + l[1] + l[2], l[0] + l[2], l[1] + l[2], l[2]]
}

/// A tame inertial L-parameter τ(s, μ+η) for GSp4 over an unramified
/// extension of degree f. Also used for ρ̄ presentations (s_ρ̄, μ_ρ̄).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TameType {
    pub p: i64,
    pub s: Vec<WeylElt>,
    pub mu: Vec<Vec4>,
}

pub type RhobarPresentation = TameType;

/// Exponents of τ on ω_{f′}: the four std coordinates and the similitude
/// exponent, as exact integers together with the level f′.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauExponents {
    pub level: u32,
    pub raw: Vec4W,
    pub simc: i128,
}

impl TauExponents {
    pub fn modulus(&self, p: i64) -> i128 {
        (p as i128).pow(self.level) - 1
    }

    pub fn residues(&self, p: i64) -> Vec4W {
        let m = self.modulus(p);
        self.raw.map(|x| x.rem_euclid(m))
    }
}

impl TameType {
    pub fn new(p: i64, s: Vec<WeylElt>, mu: Vec<Vec4>) -> Result<TameType> {
        if s.len() != mu.len() {
            return Err(Error::Dimension { expected: s.len(), got: mu.len() });
        }
        if s.is_empty() {
            return Err(Error::Precondition("f must be positive".into()));
        }
        Ok(TameType { p, s, mu })
    }

    pub fn f(&self) -> usize {
        self.s.len()
    }

    /// s_τ = s_0 s_1 ⋯ s_{f−1}.
    pub fn s_tau(&self) -> WeylElt {
        let w = &gsp4().weyl;
        self.s.iter().fold(WeylElt::E, |acc, &x| w.mul(acc, x))
    }

    /// Multiplicative order of s_τ.
    pub fn r(&self) -> usize {
        gsp4().weyl.order_of(self.s_tau())
    }

    /// f′ = f·r.
    pub fn level(&self) -> u32 {
        (self.f() * self.r()) as u32
    }

    /// (F*∘s⁻¹)(x)_j = p · s_{j−1}⁻¹ x_{j−1}.
    fn frobenius_step(&self, x: &[Vec4W]) -> Vec<Vec4W> {
        let w = &gsp4().weyl;
        let f = self.f();
        (0..f)
            .map(|j| {
                let k = (j + f - 1) % f;
                act_wide(w.matrix(w.inv(self.s[k])), &x[k]).map(|c| c * self.p as i128)
            })
            .collect()
    }

    /// a⁽⁰⁾ = Σ_{j<f} ((F*∘s⁻¹)^j (μ+η))_0.
    pub fn a0(&self) -> Vec4W {
        let d = gsp4();
        let mut cur: Vec<Vec4W> = self.mu.iter().map(|m| widen(&vadd(m, &d.eta))).collect();
        let mut total = [0i128; 4];
        for _ in 0..self.f() {
            for i in 0..4 {
                total[i] += cur[0][i];
            }
            cur = self.frobenius_step(&cur);
        }
        total
    }

    /// Σ_{k<r} p^{fk} s_τ^{−k} a⁽⁰⁾, as a character.
    pub fn exponent_character(&self) -> Vec4W {
        let w = &gsp4().weyl;
        let a0 = self.a0();
        let step = w.matrix(w.inv(self.s_tau()));
        let pf = (self.p as i128).pow(self.f() as u32);
        let mut term = a0;
        let mut total = [0i128; 4];
        let mut scale = 1i128;
        for _ in 0..self.r() {
            for i in 0..4 {
                total[i] += scale * term[i];
            }
            term = act_wide(step, &term);
            scale *= pf;
        }
        total
    }

    pub fn exponents(&self) -> TauExponents {
        let x = self.exponent_character();
        let t = transfer_wide(&x);
        TauExponents { level: self.level(), raw: t, simc: x[0] + x[1] + 2 * x[2] }
    }

    /// w̃ = t_{μ+η} s, per embedding.
    pub fn wtilde(&self) -> Vec<ExtAffElt> {
        let d = gsp4();
        self.s.iter().zip(&self.mu).map(|(&s, m)| ExtAffElt::new(vadd(m, &d.eta), s)).collect()
    }
}

/// w̃(ρ̄, τ) = w̃(τ)⁻¹ w̃(ρ̄).
pub fn wtilde_rel(rhobar: &RhobarPresentation, tau: &TameType) -> Result<Vec<ExtAffElt>> {
    if rhobar.f() != tau.f() {
        return Err(Error::Dimension { expected: tau.f(), got: rhobar.f() });
    }
    let d = gsp4();
    Ok(tau.wtilde().iter().zip(rhobar.wtilde()).map(|(t, r)| d.mul(&d.inv(t), &r)).collect())
}

/// Levi of the minimal parabolic containing the torus attached to s_τ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Niveau {
    /// Borel: three G_m factors with characters a1, a2, a3.
    Borel { theta: [i128; 3] },
    /// Siegel parabolic: a GL2 factor with character μ, and G_m with a3.
    Siegel { mu: [i128; 2], theta2: i128 },
    /// Klingen parabolic: G_m with θ1, and a GL2 factor with character μ.
    Klingen { theta1: i128, mu: [i128; 2] },
    Cuspidal,
}

impl Niveau {
    pub fn tag(&self) -> &'static str {
        match self {
            Niveau::Borel { .. } => "B",
            Niveau::Siegel { .. } => "S",
            Niveau::Klingen { .. } => "Q",
            Niveau::Cuspidal => "GSp4",
        }
    }
}

pub fn niveau_classify(tau: &TameType) -> Niveau {
    let d = gsp4();
    let w = |word: &[u8]| d.weyl.from_word(word).unwrap();
    let st = tau.s_tau();
    let a = tau.a0();
    let (a1, a2, a3) = (a[0], a[1], a[2]);
    if st == WeylElt::E {
        Niveau::Borel { theta: [a1, a2, a3] }
    } else if st == w(&[1]) {
        Niveau::Siegel { mu: [a1, a2], theta2: a3 }
    } else if st == w(&[2, 1, 2]) {
        Niveau::Siegel { mu: [a1, -a2], theta2: a3 }
    } else if st == w(&[2]) {
        Niveau::Klingen { theta1: a1, mu: [a2 + a3, a3] }
    } else if st == w(&[1, 2, 1]) {
        Niveau::Klingen { theta1: a2, mu: [a1 + a3, a3] }
    } else {
        assert!(
            [w(&[1, 2]), w(&[2, 1]), d.weyl.longest()].contains(&st),
            "s_τ falls in exactly one class"
        );
        Niveau::Cuspidal
    }
}

fn lift(e: &TauExponents, p: i64, level: u32) -> Vec4W {
    let factor = ((p as i128).pow(level) - 1) / e.modulus(p);
    e.residues(p).map(|x| x * factor)
}

/// τ1 ≅ τ2: the exponent data agree up to W-conjugation and multiplication
/// by a power of p, compared at the least common level.
pub fn type_isomorphic(t1: &TameType, t2: &TameType) -> Result<bool> {
    if t1.p != t2.p {
        return Err(Error::Precondition("types over different p".into()));
    }
    if t1.f() != t2.f() {
        return Err(Error::Dimension { expected: t1.f(), got: t2.f() });
    }
    let p = t1.p;
    let (e1, e2) = (t1.exponents(), t2.exponents());
    let level = e1.level.lcm(&e2.level);
    let m = (p as i128).pow(level) - 1;
    let x1 = t1.exponent_character();
    let target = lift(&e2, p, level);
    let factor1 = m / e1.modulus(p);
    let d = gsp4();
    for w in d.weyl.elements() {
        let conj = transfer_wide(&act_wide(d.weyl.matrix(w), &x1)).map(|x| x.rem_euclid(e1.modulus(p)) * factor1);
        let mut cur = conj;
        for _ in 0..level {
            if cur == target {
                return Ok(true);
            }
            cur = cur.map(|x| x * p as i128 % m);
        }
    }
    Ok(false)
}

/// Builds a type from per-embedding words and weights, e.g. `["s1", "e"]`, `["3,1;0", "4,2;1"]`.
pub fn parse_type(d: &RootDatum, p: i64, s: &[String], mu: &[String]) -> Result<TameType> {
    let s = s.iter().map(|w| d.parse_word(w)).collect::<Result<Vec<_>>>()?;
    let mu = mu.iter().map(|m| d.parse_weight(m)).collect::<Result<Vec<_>>>()?;
    TameType::new(p, s, mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::transfer_weight;

    fn w(word: &[u8]) -> WeylElt {
        gsp4().weyl.from_word(word).unwrap()
    }

    #[test]
    fn principal_series_exponents() {
        let d = gsp4();
        let mu = [10, 4, 3, 0];
        let t = TameType::new(37, vec![WeylElt::E], vec![mu]).unwrap();
        assert_eq!(t.r(), 1);
        let e = t.exponents();
        assert_eq!(e.level, 1);
        let expect = transfer_weight(&vadd(&mu, &d.eta)).map(|x| (x as i128).rem_euclid(36));
        assert_eq!(e.residues(37), expect);
    }

    #[test]
    fn symplectic_exponents() {
        let t = TameType::new(37, vec![w(&[1, 2]), w(&[2])], vec![[5, 2, 7, 0], [9, 3, 1, 0]]).unwrap();
        let e = t.exponents();
        assert_eq!(e.raw[0] + e.raw[3], e.raw[1] + e.raw[2]);
        assert_eq!(e.raw[0] + e.raw[3], e.simc);
    }

    #[test]
    fn niveau_table() {
        let cases: [(&[u8], &str); 8] = [
            (&[], "B"),
            (&[1], "S"),
            (&[2, 1, 2], "S"),
            (&[2], "Q"),
            (&[1, 2, 1], "Q"),
            (&[1, 2], "GSp4"),
            (&[2, 1], "GSp4"),
            (&[1, 2, 1, 2], "GSp4"),
        ];
        for (word, tag) in cases {
            let t = TameType::new(37, vec![w(word)], vec![[5, 2, 7, 0]]).unwrap();
            assert_eq!(niveau_classify(&t).tag(), tag, "{word:?}");
        }
    }

    #[test]
    fn frobenius_twist_is_isomorphic() {
        let t = TameType::new(37, vec![w(&[1])], vec![[10, 4, 3, 0]]).unwrap();
        assert!(type_isomorphic(&t, &t).unwrap());
        let other = TameType::new(37, vec![w(&[1])], vec![[11, 4, 3, 0]]).unwrap();
        assert!(!type_isomorphic(&t, &other).unwrap());
    }
}
