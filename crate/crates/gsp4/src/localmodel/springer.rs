//! The block matrices testing trivial intersection of flags for the Springer
//! type resolution at w̃ = w̃0, z̃ = e, copied entry by entry, with their
//! determinants before and after imposing the GSp4 relations.

use crate::error::{Error, Result};
use crate::poly::MultiPoly;

fn m(names: &[&str]) -> MultiPoly {
    MultiPoly::monomial(names)
}

fn c12() -> MultiPoly {
    m(&["c12", "A21"])
}
fn c123() -> MultiPoly {
    m(&["c123", "A21", "A32"])
}
fn c13() -> MultiPoly {
    m(&["c13", "A31"])
}
fn c23() -> MultiPoly {
    m(&["c23", "A32"])
}
fn c24() -> MultiPoly {
    m(&["c24", "A42"])
}
fn c234() -> MultiPoly {
    m(&["c234", "A32", "A43"])
}
fn c1234() -> MultiPoly {
    m(&["c1234", "A21", "A32", "A43"])
}
/// c14A41 + c124A21A42 + c134A31A43.
fn c14_sum() -> MultiPoly {
    &(&m(&["c14", "A41"]) + &m(&["c124", "A21", "A42"])) + &m(&["c134", "A31", "A43"])
}

/// The block matrix for 0 ≤ l ≤ 3; blank entries are zero.
pub fn block_matrix(l: u8) -> Result<Vec<Vec<MultiPoly>>> {
    let o = MultiPoly::zero;
    let i = MultiPoly::one;
    Ok(match l {
        0 => vec![
            vec![o(), i(), o(), o()],
            vec![c12(), o(), i(), o()],
            vec![c123(), c13(), c23(), i()],
            vec![c14_sum(), o(), c24(), o()],
        ],
        1 => vec![vec![o(), i(), o()], vec![c12(), o(), i()], vec![c123(), c13(), c23()]],
        2 => vec![
            vec![o(), i(), o(), o(), o(), o()],
            vec![c12(), o(), i(), o(), o(), o()],
            vec![o(), o(), o(), i(), o(), o()],
            vec![o(), c12(), o(), o(), i(), o()],
            vec![o(), c123(), o(), c13(), c23(), i()],
            vec![c1234(), c14_sum(), c234(), o(), c24(), o()],
        ],
        3 => vec![
            vec![i(), o(), o(), o(), o()],
            vec![o(), o(), i(), o(), o()],
            vec![c12(), o(), o(), i(), o()],
            vec![c123(), o(), c13(), c23(), i()],
            vec![c14_sum(), c234(), o(), c24(), o()],
        ],
        _ => return Err(Error::Precondition(format!("l = {l} is outside 0..=3"))),
    })
}

/// Determinant by cofactor expansion along the first row, skipping zeros.
pub fn determinant(rows: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = rows.len();
    if n == 0 {
        return MultiPoly::one();
    }
    let mut acc = MultiPoly::zero();
    for j in 0..n {
        if rows[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> = rows[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &rows[0][j] * &determinant(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Eliminates c34A43, c24A42 and c234A32A43 using the GSp4 relations.
pub fn apply_gsp4_relations(x: &MultiPoly) -> MultiPoly {
    x.rewrite(&["c34", "A43"], &c12().scale(-1))
        .rewrite(&["c24", "A42"], &c13())
        .rewrite(&["c234", "A32", "A43"], &c123())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpringerReport {
    pub l: u8,
    pub matrix: Vec<Vec<MultiPoly>>,
    pub det_raw: MultiPoly,
    pub det: MultiPoly,
    /// The stated property of this block's determinant holds.
    pub verdict: bool,
    pub claim: &'static str,
    /// The determinant (after the relations) is a nonzero polynomial.
    pub nonzero: bool,
}

/// Builds the block matrix, its determinant, and checks the stated property:
/// l = 3 gives exactly −c234A32A43, l = 0 and l = 2 carry the monomial c14A41,
/// l = 1 is nonzero (all after imposing the relations).
pub fn springer_blocks(l: u8) -> Result<SpringerReport> {
    let matrix = block_matrix(l)?;
    let det_raw = determinant(&matrix);
    let det = apply_gsp4_relations(&det_raw);
    let (verdict, claim) = match l {
        3 => {
            let expected = c234().scale(-1);
            (det_raw == expected && det == apply_gsp4_relations(&expected), "det = -c234*A32*A43")
        }
        0 | 2 => (det.coeff_of(&["c14", "A41"]) != 0, "det has the monomial c14*A41"),
        _ => (!det.is_zero(), "det is nonzero"),
    };
    let nonzero = !det.is_zero();
    Ok(SpringerReport { l, matrix, det_raw, det, verdict, claim, nonzero })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts_per_block() {
        for l in [0, 1, 3] {
            let r = springer_blocks(l).unwrap();
            assert!(r.verdict, "l = {l}: {}", r.det);
        }
        // in the l = 2 block the first row's only 1 shares a column with the
        // c14 entry, so that entry never reaches the determinant
        let r = springer_blocks(2).unwrap();
        assert!(!r.verdict && r.nonzero);
        assert_eq!(r.det.to_string(), "c12*c123*A21^2*A32 - c1234*A21*A32*A43");
        assert!((0..4).all(|l| springer_blocks(l).unwrap().nonzero));
        assert_eq!(springer_blocks(3).unwrap().det_raw.to_string(), "-c234*A32*A43");
        assert!(springer_blocks(4).is_err());
    }

    #[test]
    fn small_determinants() {
        let x = MultiPoly::var("x");
        let y = MultiPoly::var("y");
        let rows = vec![vec![x.clone(), y.clone()], vec![y.clone(), x.clone()]];
        assert_eq!(determinant(&rows), &x.pow(2) - &y.pow(2));
    }
}
