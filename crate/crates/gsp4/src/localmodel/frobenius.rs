//! Identities satisfied by partial Frobenius matrices of Breuil–Kisin modules
//! with descent data, checked on truncated power series over F_p (where
//! E(v) = v and Frobenius is v ↦ v^p).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rootdata::{gl, gsp4, phi, phi_weyl, std_cochar, std_weyl, vadd, Vec4, WeylElt};

use super::chart::{root_generators, symplectic_signs};
use super::laurent::{Laurent, LaurentMatrix};

/// C_Mᵀ J C_M = C_N · v^h · J below v^n.
pub fn frobenius_identity_check(c_m: &LaurentMatrix, c_n: &Laurent, h: i64, n: i64) -> Result<bool> {
    if c_m.n != 4 {
        return Err(Error::Dimension { expected: 4, got: c_m.n });
    }
    let j = LaurentMatrix::form_j(c_m.p);
    let lhs = LaurentMatrix::mul_all(&[&c_m.transpose(), &j, c_m]);
    let rhs = j.scale_by(&c_n.shift(h));
    lhs.eq_to(&rhs, n)
}

fn random_series(rng: &mut ChaCha8Rng, p: u64, low: i64, n: i64) -> Laurent {
    let coeffs: Vec<i64> = (low..n).map(|_| rng.gen_range(0..p as i64)).collect();
    Laurent::series(p, low, &coeffs, n)
}

fn random_unit_series(rng: &mut ChaCha8Rng, p: u64, n: i64) -> Laurent {
    let mut coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(0..p as i64)).collect();
    coeffs[0] = rng.gen_range(1..p as i64);
    Laurent::series(p, 0, &coeffs, n)
}

/// A random element of the Iwahori subgroup of GSp4(F_p[[v]]), known below v^n:
/// a unit scalar times a torus element times root subgroup factors, with
/// negative root coefficients divisible by v.
pub fn random_iwahori(rng: &mut ChaCha8Rng, p: u64, n: i64) -> LaurentMatrix {
    let t1 = rng.gen_range(1..p as i64);
    let t2 = rng.gen_range(1..p as i64);
    let c = rng.gen_range(1..p as i64);
    // diag(t1, t2, c/t2, c/t1)
    let mut torus = LaurentMatrix::zero(4, p);
    let inv = |x: i64| Laurent::constant(p, 1).scale(c).mul(&Laurent::constant(p, x).inverse(n).expect("unit"));
    torus.set(0, 0, Laurent::constant(p, t1));
    torus.set(1, 1, Laurent::constant(p, t2));
    torus.set(2, 2, inv(t2));
    torus.set(3, 3, inv(t1));
    let mut g = torus.scale_by(&random_unit_series(rng, p, n));
    for (positive, x) in root_generators() {
        let f = random_series(rng, p, if *positive { 0 } else { 1 }, n);
        let mut m = LaurentMatrix::identity(4, p);
        for i in 0..4 {
            for j in 0..4 {
                if x[i][j] != 0 {
                    m.set(i, j, m.get(i, j).add(&f.scale(x[i][j])));
                }
            }
        }
        g = g.mul(&m);
    }
    g
}

/// A diagonal-plus-Iwahori instance (C_M, C_N, h): C_M = I1·v^{std λ}·I2 with
/// λ random and dominant-positive, C_N = simc(I1)·simc(I2), h = simc(λ).
pub fn random_frobenius_instance(p: u64, seed: u64, n: i64) -> Result<(LaurentMatrix, Laurent, i64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = rng.gen_range(0..4);
    let b = rng.gen_range(0..4);
    let c = a.max(b) + rng.gen_range(0..4);
    let lambda: Vec4 = [a, b, c, 0];
    let diag = LaurentMatrix::diag_powers(p, &std_cochar(&lambda));
    let i1 = random_iwahori(&mut rng, p, n);
    let i2 = random_iwahori(&mut rng, p, n);
    let s1 = i1.similitude(Some(n))?.ok_or_else(|| Error::Invariant("Iwahori factor is not symplectic".into()))?;
    let s2 = i2.similitude(Some(n))?.ok_or_else(|| Error::Invariant("Iwahori factor is not symplectic".into()))?;
    Ok((LaurentMatrix::mul_all(&[&i1, &diag, &i2]), s1.mul(&s2), c))
}

/// The signed permutation lift of a dual Weyl element, symplectic for J.
pub fn weyl_lift(p: u64, w_dual: WeylElt) -> LaurentMatrix {
    let sigma = std_weyl(w_dual);
    let mut perm = [0usize; 4];
    for (j, slot) in perm.iter_mut().enumerate() {
        let mut e = [0i64; 4];
        e[j] = 1;
        *slot = gl(4).weyl.act(sigma, &e).iter().position(|&x| x == 1).expect("permutation");
    }
    let signs = symplectic_signs(&perm).expect("Weyl elements lift to Sp4");
    let mut m = LaurentMatrix::zero(4, p);
    for j in 0..4 {
        m.set(perm[j], j, Laurent::constant(p, signs[j]));
    }
    m
}

/// The matrix φ(s⁻¹)·v^{φ(μ+η)} by which descent data twist Frobenius.
pub fn twist_matrix(p: u64, s: WeylElt, mu: &Vec4) -> LaurentMatrix {
    let d = gsp4();
    let lift = weyl_lift(p, phi_weyl(d.weyl.inv(s)));
    lift.mul(&LaurentMatrix::diag_powers(p, &std_cochar(&phi(&vadd(mu, &d.eta)))))
}

/// Ad(φ(s⁻¹)v^{φ(μ+η)})(X), computed entrywise: scale X_ab by v^{e_a − e_b},
/// then move entries along the signed permutation.
pub fn twist_conjugate(p: u64, s: WeylElt, mu: &Vec4, x: &LaurentMatrix) -> LaurentMatrix {
    let d = gsp4();
    let e = std_cochar(&phi(&vadd(mu, &d.eta)));
    let lift = weyl_lift(p, phi_weyl(d.weyl.inv(s)));
    let mut out = LaurentMatrix::zero(4, p);
    // lift has one nonzero entry per column: lift[π(b)][b] = ε_b, and its
    // inverse is its transpose up to the sign pattern
    let mut pos = [(0usize, 0i64); 4];
    for b in 0..4 {
        let row = (0..4).find(|&r| !lift.get(r, b).is_zero()).expect("permutation");
        let sign = if lift.get(row, b).coeff(0) == 1 { 1 } else { -1 };
        pos[b] = (row, sign);
    }
    for a in 0..4 {
        for b in 0..4 {
            let y = x.get(a, b).shift(e[a] - e[b]);
            let (ra, sa) = pos[a];
            let (rb, sb) = pos[b];
            out.set(ra, rb, y.scale(sa * sb));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChangeOfBasisReport {
    /// The conjugated I^{(j−1)} lies in the Iwahori subgroup for every j.
    pub conjugates_iwahori: bool,
    /// Entrywise and direct matrix evaluations of A1 agree below v^n.
    pub orders_agree: bool,
    /// A1^{(j)} for each embedding, from the entrywise evaluation.
    pub transformed: Vec<LaurentMatrix>,
}

/// A1^{(j)} = I^{(j)} · A2^{(j)} · Ad(φ(s_j⁻¹)v^{φ(μ_j+η)})(φ(I^{(j−1)})⁻¹), evaluated
/// entrywise and again as the plain product I·A2·M·φ(I)⁻¹·M⁻¹.
pub fn change_of_basis_check(
    a2: &[LaurentMatrix],
    iwahori: &[LaurentMatrix],
    s: &[WeylElt],
    mu: &[Vec4],
    p: u64,
    n: i64,
) -> Result<ChangeOfBasisReport> {
    let f = a2.len();
    if f == 0 || iwahori.len() != f || s.len() != f || mu.len() != f {
        return Err(Error::Dimension { expected: f.max(1), got: iwahori.len().min(s.len()).min(mu.len()) });
    }
    let d = gsp4();
    let mut conjugates_iwahori = true;
    let mut orders_agree = true;
    let mut transformed = vec![];
    for j in 0..f {
        let prev = &iwahori[(j + f - 1) % f];
        for c in d.pos_coroots.iter() {
            let pairing = crate::rootdata::dot(&vadd(&mu[j], &d.eta), c);
            if pairing <= 0 || pairing >= p as i64 {
                return Err(Error::Precondition(format!(
                    "μ+η = {:?} is not strictly dominant with pairings below p",
                    vadd(&mu[j], &d.eta)
                )));
            }
        }
        let frob_inv = prev.inverse(n)?.frobenius();
        let conj = twist_conjugate(p, s[j], &mu[j], &frob_inv);
        conjugates_iwahori &= conj.is_iwahori();
        let a1 = LaurentMatrix::mul_all(&[&iwahori[j], &a2[j], &conj]);
        let m = twist_matrix(p, s[j], &mu[j]);
        let direct = LaurentMatrix::mul_all(&[&iwahori[j], &a2[j], &m, &frob_inv, &m.inverse(n)?]);
        orders_agree &= a1.eq_to(&direct, n)?;
        transformed.push(a1);
    }
    Ok(ChangeOfBasisReport { conjugates_iwahori, orders_agree, transformed })
}

/// Random diagonal A2 and Iwahori I tuples of length f.
pub fn random_change_of_basis_instance(
    p: u64,
    f: usize,
    seed: u64,
    n: i64,
) -> (Vec<LaurentMatrix>, Vec<LaurentMatrix>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a2 = vec![];
    let mut iw = vec![];
    for _ in 0..f {
        let a = rng.gen_range(0..4);
        let b = rng.gen_range(0..4);
        let c = a.max(b) + rng.gen_range(0..3);
        let powers = std_cochar(&[a, b, c, 0]);
        let mut m = LaurentMatrix::diag_powers(p, &powers);
        for k in 0..4 {
            let u = Laurent::constant(p, rng.gen_range(1..p as i64));
            m.set(k, k, m.get(k, k).mul(&u));
        }
        a2.push(m);
        iw.push(random_iwahori(&mut rng, p, n));
    }
    (a2, iw)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_case_is_exact() {
        let p = 37;
        let lambda = [3, 1, 4, 0];
        let cm = LaurentMatrix::diag_powers(p, &std_cochar(&lambda));
        assert!(frobenius_identity_check(&cm, &Laurent::one(p), 4, 40).unwrap());
        assert!(!frobenius_identity_check(&cm, &Laurent::one(p), 3, 40).unwrap());
    }

    #[test]
    fn random_instances_hold() {
        for seed in 0..5 {
            let (cm, cn, h) = random_frobenius_instance(37, seed, 12).unwrap();
            assert!(frobenius_identity_check(&cm, &cn, h, 12).unwrap());
        }
    }

    #[test]
    fn identity_tuple_leaves_a_unchanged() {
        let p = 37;
        let mu = [6, 2, 1, 0];
        let s = gsp4().weyl.simple(1);
        let a2 = vec![LaurentMatrix::diag_powers(p, &[2, 1, 1, 0])];
        let iw = vec![LaurentMatrix::identity(4, p)];
        let rep = change_of_basis_check(&a2, &iw, &[s], &[mu], p, 20).unwrap();
        assert!(rep.conjugates_iwahori && rep.orders_agree);
        assert!(rep.transformed[0].eq_to(&a2[0], 20).unwrap());
    }

    #[test]
    fn random_iwahori_conjugates_back() {
        let p = 37;
        let mu = [6, 2, 1, 0];
        for seed in 0..3 {
            let (a2, iw) = random_change_of_basis_instance(p, 2, seed, 10);
            let s = [gsp4().weyl.simple(1), gsp4().weyl.longest()];
            let rep = change_of_basis_check(&a2, &iw, &s, &[mu, mu], p, 10).unwrap();
            assert!(rep.conjugates_iwahori);
            assert!(rep.orders_agree);
        }
    }
}
