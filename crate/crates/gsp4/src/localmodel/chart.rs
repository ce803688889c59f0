//! Affine charts U(z̃) of the similitude-bounded affine Grassmannian, taken at
//! t = 0: matrices A = g·ż·v^ν with g ∈ GSp4(F_p[1/v]) lower unipotent modulo
//! 1/v, entries confined to degree windows, and similitude v^{simc(ν)}.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::affweyl::ExtAffElt;
use crate::error::{Error, Result};
use crate::rootdata::{gl, gsp4_dual, simc_cochar, std_cochar, std_weyl, WeylElt};

use super::laurent::{Laurent, LaurentMatrix};

/// The shape data of z̃ = w t_ν read through std: ν′ = std(ν), the permutation
/// σ = std(w) with σ(j) the row of the pinned entry in column j, its signs in
/// the symplectic lift, and d = simc(ν).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartShape {
    pub nu: [i64; 4],
    pub perm: [usize; 4],
    pub signs: [i64; 4],
    pub simc: i64,
}

fn integer_form_j() -> [[i64; 4]; 4] {
    [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]]
}

fn int_mul(a: &[[i64; 4]; 4], b: &[[i64; 4]; 4]) -> [[i64; 4]; 4] {
    let mut out = [[0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

fn int_transpose(a: &[[i64; 4]; 4]) -> [[i64; 4]; 4] {
    let mut out = [[0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[j][i] = a[i][j];
        }
    }
    out
}

/// Signs making the permutation matrix of σ symplectic (PᵀJP = J); the first
/// such choice in lexicographic order with + before −.
pub fn symplectic_signs(perm: &[usize; 4]) -> Option<[i64; 4]> {
    let j = integer_form_j();
    for code in 0..16u32 {
        let signs = [0, 1, 2, 3].map(|k| if code >> (3 - k) & 1 == 0 { 1 } else { -1 });
        let mut m = [[0i64; 4]; 4];
        for col in 0..4 {
            m[perm[col]][col] = signs[col];
        }
        if int_mul(&int_mul(&int_transpose(&m), &j), &m) == j {
            return Some(signs);
        }
    }
    None
}

pub fn chart_shape(z: &ExtAffElt) -> ChartShape {
    let dd = gsp4_dual();
    let nu_right = dd.right_translation(z);
    let nu = std_cochar(&nu_right);
    let sigma: WeylElt = std_weyl(z.w);
    let g = gl(4);
    let mut perm = [0usize; 4];
    for (j, slot) in perm.iter_mut().enumerate() {
        let mut e = [0i64; 4];
        e[j] = 1;
        let img = g.weyl.act(sigma, &e);
        *slot = img.iter().position(|&x| x == 1).expect("permutation matrix");
    }
    let signs = symplectic_signs(&perm).expect("Weyl elements lift to Sp4");
    ChartShape { nu, perm, signs, simc: simc_cochar(&nu_right) }
}

/// Nilpotent generators X_β of sp4 for J, one per root, as (positive?, matrix).
pub(crate) fn root_generators() -> &'static Vec<(bool, [[i64; 4]; 4])> {
    static GENS: OnceLock<Vec<(bool, [[i64; 4]; 4])>> = OnceLock::new();
    GENS.get_or_init(|| {
        let j = integer_form_j();
        let mut out: Vec<(bool, [[i64; 4]; 4])> = vec![];
        for r in 0..4 {
            for c in 0..4 {
                if r == c {
                    continue;
                }
                for eps in [1, -1] {
                    let mut x = [[0i64; 4]; 4];
                    x[r][c] = 1;
                    if (3 - c, 3 - r) != (r, c) {
                        x[3 - c][3 - r] = eps;
                    }
                    let lhs = int_mul(&int_transpose(&x), &j);
                    let rhs = int_mul(&j, &x);
                    let is_lie = (0..4).all(|a| (0..4).all(|b| lhs[a][b] + rhs[a][b] == 0));
                    if is_lie && !out.iter().any(|(_, y)| y[r][c] != 0) {
                        out.push((r < c, x));
                    }
                }
            }
        }
        assert_eq!(out.len(), 8, "Sp4 has eight roots");
        out
    })
}

/// x_β(f) = 1 + f·X_β.
fn root_element(p: u64, x: &[[i64; 4]; 4], f: &Laurent) -> LaurentMatrix {
    let mut m = LaurentMatrix::identity(4, p);
    for i in 0..4 {
        for j in 0..4 {
            if x[i][j] != 0 {
                m.set(i, j, m.get(i, j).add(&f.scale(x[i][j])));
            }
        }
    }
    m
}

/// ż·v^ν with the signed permutation lift.
pub fn chart_base_point(p: u64, shape: &ChartShape) -> LaurentMatrix {
    let mut m = LaurentMatrix::zero(4, p);
    for j in 0..4 {
        m.set(shape.perm[j], j, Laurent::monomial(p, shape.signs[j], shape.nu[j]));
    }
    m
}

/// Exponent window [lo, hi] allowed for the entry (i, j).
pub fn entry_window(shape: &ChartShape, h: i64, i: usize, j: usize) -> (i64, i64) {
    let lo = -h + i64::from(i > j);
    let hi = shape.nu[j] - i64::from(i < shape.perm[j]);
    (lo, hi)
}

/// Checks degree windows, the pinned coefficients and Aᵀ J A = v^d·J exactly.
pub fn chart_membership(a: &LaurentMatrix, z: &ExtAffElt, h: i64) -> Result<bool> {
    if a.n != 4 {
        return Err(Error::Dimension { expected: 4, got: a.n });
    }
    let shape = chart_shape(z);
    for i in 0..4 {
        for j in 0..4 {
            let x = a.get(i, j);
            if x.prec().is_some() {
                return Err(Error::Precondition("chart membership needs exact entries".into()));
            }
            let (lo, hi) = entry_window(&shape, h, i, j);
            if x.valuation().map_or(false, |v| v < lo) || x.top_degree().map_or(false, |t| t > hi) {
                return Ok(false);
            }
        }
    }
    for j in 0..4 {
        let pin = a.get(shape.perm[j], j).coeff(shape.nu[j]);
        if pin != super::laurent::reduce_mod(shape.signs[j], a.p) {
            return Ok(false);
        }
    }
    Ok(a.similitude(None)? == Some(Laurent::monomial(a.p, 1, shape.simc)))
}

fn within_windows(a: &LaurentMatrix, shape: &ChartShape, h: i64) -> bool {
    (0..4).all(|i| {
        (0..4).all(|j| {
            let x = a.get(i, j);
            let (lo, hi) = entry_window(shape, h, i, j);
            x.valuation().map_or(true, |v| v >= lo) && x.top_degree().map_or(true, |t| t <= hi)
        })
    })
}

/// A random point of U(z̃)^{simc, ≤h} over F_p: root subgroup factors with
/// random Laurent coefficients are multiplied in while the result stays
/// inside the degree windows.
pub fn chart_matrix(z: &ExtAffElt, h: i64, seed: u64, p: u64) -> Result<LaurentMatrix> {
    let shape = chart_shape(z);
    let base = chart_base_point(p, &shape);
    if !within_windows(&base, &shape, h) {
        return Err(Error::Precondition(format!("the chart of {} is empty for h = {h}", gsp4_dual().format_elt(z))));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let depth = (h + shape.nu.iter().copied().max().unwrap_or(0)).max(1);
    let gens = root_generators();
    let mut g = LaurentMatrix::identity(4, p);
    let mut current = base.clone();
    for _ in 0..24 {
        let (positive, x) = &gens[rng.gen_range(0..gens.len())];
        // g must stay lower unipotent modulo 1/v: positive roots get v^{−1} and below
        let top = if *positive { -1 } else { 0 };
        let low = top - rng.gen_range(0..depth);
        let coeffs: Vec<i64> = (low..=top).map(|_| rng.gen_range(0..p as i64)).collect();
        let f = Laurent::from_coeffs(p, low, &coeffs);
        let trial = g.mul(&root_element(p, x, &f));
        let a = trial.mul(&base);
        if within_windows(&a, &shape, h) {
            g = trial;
            current = a;
        }
    }
    if !chart_membership(&current, z, h)? {
        return Err(Error::Invariant("sampled chart matrix fails membership".into()));
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{gsp4, phi};

    #[test]
    fn identity_chart() {
        let p = 37;
        let z = ExtAffElt::IDENTITY;
        assert!(chart_membership(&LaurentMatrix::identity(4, p), &z, 0).unwrap());
        assert_eq!(chart_matrix(&z, 0, 1, p).unwrap(), LaurentMatrix::identity(4, p));
    }

    #[test]
    fn every_weyl_element_lifts() {
        for w in gsp4_dual().weyl.elements() {
            let s = chart_shape(&ExtAffElt::weyl(w));
            assert!(symplectic_signs(&s.perm).is_some());
        }
    }

    #[test]
    fn samples_are_symplectic_and_windows_are_sharp() {
        let p = 37;
        let z = ExtAffElt::new(phi(&gsp4().eta), gsp4_dual().weyl.simple(1));
        let shape = chart_shape(&z);
        for seed in 0..5 {
            let a = chart_matrix(&z, 2, seed, p).unwrap();
            assert!(chart_membership(&a, &z, 2).unwrap());
            // push one entry just past the top of its window
            let (_, hi) = entry_window(&shape, 2, 0, 1);
            let mut b = a.clone();
            b.set(0, 1, b.get(0, 1).add(&Laurent::monomial(p, 1, hi + 1)));
            assert!(!chart_membership(&b, &z, 2).unwrap());
        }
    }
}
