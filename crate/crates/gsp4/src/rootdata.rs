//! Root data for GSp4, its dual group and GL_n (n <= 4).
//!
//! GSp4 characters are written (a,b;c) and sent to the torus element
//! Diag(x^a, x^b, x^{c-b}, x^{c-a}); cocharacters use the same coordinates and
//! the pairing is the coordinate dot product. All vectors are padded to four
//! entries so that every datum shares one representation.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use num_rational::Ratio;

use crate::affweyl::ExtAffElt;
use crate::error::{Error, Result};

pub type Vec4 = [i64; 4];
pub type Mat4 = [[i64; 4]; 4];

pub const ZERO: Vec4 = [0; 4];
pub const IDENTITY: Mat4 = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];

pub fn dot(a: &Vec4, b: &Vec4) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

pub fn vadd(a: &Vec4, b: &Vec4) -> Vec4 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

pub fn vsub(a: &Vec4, b: &Vec4) -> Vec4 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]]
}

pub fn vscale(k: i64, a: &Vec4) -> Vec4 {
    [k * a[0], k * a[1], k * a[2], k * a[3]]
}

pub fn vneg(a: &Vec4) -> Vec4 {
    vscale(-1, a)
}

pub fn mat_vec(m: &Mat4, v: &Vec4) -> Vec4 {
    let mut out = ZERO;
    for (i, row) in m.iter().enumerate() {
        out[i] = dot(row, v);
    }
    out
}

pub fn mat_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = [[0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    GSp4,
    /// Dual group of GSp4, with the antidominant base alcove.
    GSp4Dual,
    GL(u8),
    /// GL_n seen as its own dual, with the antidominant base alcove.
    GLDual(u8),
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::GSp4 => write!(f, "GSp4"),
            Group::GSp4Dual => write!(f, "GSp4-dual"),
            Group::GL(n) => write!(f, "GL{n}"),
            Group::GLDual(n) => write!(f, "GL{n}-dual"),
        }
    }
}

/// Index of an element of the finite Weyl group of a fixed root datum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElt(pub u16);

impl WeylElt {
    pub const E: WeylElt = WeylElt(0);
}

/// A rational point num/den of X*(T) ⊗ Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RatPt {
    pub num: Vec4,
    pub den: i64,
}

impl RatPt {
    pub fn new(num: Vec4, den: i64) -> Self {
        assert!(den > 0, "denominator must be positive");
        RatPt { num, den }
    }

    pub fn integral(v: Vec4) -> Self {
        RatPt { num: v, den: 1 }
    }

    pub fn pair(&self, co: &Vec4) -> Ratio<i64> {
        Ratio::new(dot(&self.num, co), self.den)
    }

    /// floor of the pairing with a cocharacter.
    pub fn strip(&self, co: &Vec4) -> i64 {
        dot(&self.num, co).div_euclid(self.den)
    }

    /// Whether the pairing with `co` is an integer, i.e. the point lies on a wall.
    pub fn on_wall(&self, co: &Vec4) -> bool {
        dot(&self.num, co) % self.den == 0
    }

    pub fn neg(&self) -> Self {
        RatPt { num: vneg(&self.num), den: self.den }
    }
}

pub struct WeylGroup {
    mats: Vec<Mat4>,
    comats: Vec<Mat4>,
    words: Vec<Vec<u8>>,
    mul: Vec<u16>,
    inv: Vec<u16>,
    lookup: HashMap<Mat4, u16>,
    w0: u16,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.mats.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = WeylElt> {
        (0..self.mats.len() as u16).map(WeylElt)
    }

    pub fn matrix(&self, w: WeylElt) -> &Mat4 {
        &self.mats[w.0 as usize]
    }

    pub fn comatrix(&self, w: WeylElt) -> &Mat4 {
        &self.comats[w.0 as usize]
    }

    /// A reduced word; letters are 1-based simple reflection indices.
    pub fn word(&self, w: WeylElt) -> &[u8] {
        &self.words[w.0 as usize]
    }

    pub fn length(&self, w: WeylElt) -> usize {
        self.words[w.0 as usize].len()
    }

    pub fn mul(&self, a: WeylElt, b: WeylElt) -> WeylElt {
        WeylElt(self.mul[a.0 as usize * self.mats.len() + b.0 as usize])
    }

    pub fn inv(&self, a: WeylElt) -> WeylElt {
        WeylElt(self.inv[a.0 as usize])
    }

    pub fn longest(&self) -> WeylElt {
        WeylElt(self.w0)
    }

    pub fn simple(&self, i: usize) -> WeylElt {
        self.from_word(&[i as u8]).expect("simple reflection index in range")
    }

    pub fn from_matrix(&self, m: &Mat4) -> Option<WeylElt> {
        self.lookup.get(m).map(|&i| WeylElt(i))
    }

    pub fn from_word(&self, letters: &[u8]) -> Option<WeylElt> {
        let mut m = IDENTITY;
        for &l in letters {
            let s = self.words.iter().position(|w| w.as_slice() == [l])?;
            m = mat_mul(&m, &self.mats[s]);
        }
        self.from_matrix(&m)
    }

    pub fn act(&self, w: WeylElt, v: &Vec4) -> Vec4 {
        mat_vec(self.matrix(w), v)
    }

    pub fn coact(&self, w: WeylElt, v: &Vec4) -> Vec4 {
        mat_vec(self.comatrix(w), v)
    }

    pub fn order_of(&self, w: WeylElt) -> usize {
        let mut k = 1;
        let mut x = w;
        while x != WeylElt::E {
            x = self.mul(x, w);
            k += 1;
        }
        k
    }
}

pub struct RootDatum {
    pub group: Group,
    pub dim: usize,
    pub simple_roots: Vec<Vec4>,
    pub simple_coroots: Vec<Vec4>,
    /// Positive roots, sorted by height; `pos_coroots[i]` is the coroot of `pos_roots[i]`.
    pub pos_roots: Vec<Vec4>,
    pub pos_coroots: Vec<Vec4>,
    /// Linear form on characters whose kernel is the root lattice; it identifies Ω with Z.
    pub omega_form: Vec4,
    /// Generator of the lattice X⁰ of characters orthogonal to all coroots.
    pub center: Vec4,
    /// Coordinate in which `center` has entry 1, used to split off the central part.
    pub center_coord: usize,
    pub eta: Vec4,
    /// Interior point of the base alcove.
    pub base_point: RatPt,
    pub weyl: WeylGroup,
    /// Simple reflections of the affine Weyl group, as elements t_{mβ}s_β.
    pub affine_simple: Vec<ExtAffElt>,
    /// (positive root index, m) for each affine simple reflection.
    pub affine_walls: Vec<(usize, i64)>,
    reflections: HashMap<WeylElt, usize>,
    coeff_proj: Vec<Vec4>,
    coeff_den: i64,
}

impl fmt::Debug for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootDatum({})", self.group)
    }
}

fn reflection_matrix(root: &Vec4, coroot: &Vec4, dim: usize) -> Mat4 {
    let mut m = IDENTITY;
    for i in 0..dim {
        for j in 0..dim {
            m[i][j] -= root[i] * coroot[j];
        }
    }
    m
}

/// Exact left inverse of the matrix whose columns are `cols`, scaled to integers.
fn left_inverse(cols: &[Vec4], dim: usize) -> (Vec<Vec4>, i64) {
    let r = cols.len();
    let mut g: Vec<Vec<Ratio<i64>>> = (0..r)
        .map(|i| (0..r).map(|j| Ratio::from_integer(dot(&cols[i], &cols[j]))).collect())
        .collect();
    let mut ginv: Vec<Vec<Ratio<i64>>> = (0..r)
        .map(|i| (0..r).map(|j| Ratio::from_integer(i64::from(i == j))).collect())
        .collect();
    for c in 0..r {
        let piv = (c..r).find(|&i| g[i][c] != Ratio::from_integer(0)).expect("simple roots are independent");
        g.swap(c, piv);
        ginv.swap(c, piv);
        let inv = Ratio::from_integer(1) / g[c][c];
        for j in 0..r {
            g[c][j] *= inv;
            ginv[c][j] *= inv;
        }
        for i in 0..r {
            if i != c && g[i][c] != Ratio::from_integer(0) {
                let k = g[i][c];
                for j in 0..r {
                    let gc = g[c][j];
                    let hc = ginv[c][j];
                    g[i][j] -= k * gc;
                    ginv[i][j] -= k * hc;
                }
            }
        }
    }
    // P = G^{-1} A^T
    let mut p: Vec<Vec<Ratio<i64>>> = vec![vec![Ratio::from_integer(0); dim]; r];
    for i in 0..r {
        for k in 0..dim {
            let mut s = Ratio::from_integer(0);
            for j in 0..r {
                s += ginv[i][j] * cols[j][k];
            }
            p[i][k] = s;
        }
    }
    let den = p.iter().flatten().fold(1i64, |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
    let rows = p
        .iter()
        .map(|row| {
            let mut v = ZERO;
            for (k, x) in row.iter().enumerate() {
                v[k] = (x * den).to_integer();
            }
            v
        })
        .collect();
    (rows, den)
}

struct DatumInput {
    group: Group,
    dim: usize,
    simple_roots: Vec<Vec4>,
    simple_coroots: Vec<Vec4>,
    omega_form: Vec4,
    center: Vec4,
    center_coord: usize,
    eta: Vec4,
    base_point: RatPt,
}

impl RootDatum {
    fn build(input: DatumInput) -> RootDatum {
        let dim = input.dim;
        let gens: Vec<(Mat4, Mat4)> = input
            .simple_roots
            .iter()
            .zip(&input.simple_coroots)
            .map(|(a, c)| (reflection_matrix(a, c, dim), reflection_matrix(c, a, dim)))
            .collect();

        // breadth-first enumeration gives reduced words
        let mut mats = vec![IDENTITY];
        let mut comats = vec![IDENTITY];
        let mut words: Vec<Vec<u8>> = vec![vec![]];
        let mut lookup = HashMap::new();
        lookup.insert(IDENTITY, 0u16);
        let mut head = 0;
        while head < mats.len() {
            for (i, (g, cg)) in gens.iter().enumerate() {
                let m = mat_mul(&mats[head], g);
                if !lookup.contains_key(&m) {
                    lookup.insert(m, mats.len() as u16);
                    let mut w = words[head].clone();
                    w.push(i as u8 + 1);
                    comats.push(mat_mul(&comats[head], cg));
                    mats.push(m);
                    words.push(w);
                }
            }
            head += 1;
        }
        let n = mats.len();
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = lookup[&mat_mul(&mats[a], &mats[b])];
            }
        }
        let inv = (0..n).map(|a| (0..n).find(|&b| mul[a * n + b] == 0).unwrap() as u16).collect();
        let w0 = (0..n).max_by_key(|&i| words[i].len()).unwrap() as u16;
        let weyl = WeylGroup { mats, comats, words, mul, inv, lookup, w0 };

        let (coeff_proj, coeff_den) = left_inverse(&input.simple_roots, dim);
        let mut datum = RootDatum {
            group: input.group,
            dim,
            simple_roots: input.simple_roots,
            simple_coroots: input.simple_coroots,
            pos_roots: vec![],
            pos_coroots: vec![],
            omega_form: input.omega_form,
            center: input.center,
            center_coord: input.center_coord,
            eta: input.eta,
            base_point: input.base_point,
            weyl,
            affine_simple: vec![],
            affine_walls: vec![],
            reflections: HashMap::new(),
            coeff_proj,
            coeff_den,
        };

        let mut pairs: Vec<(Vec4, Vec4)> = vec![];
        for w in datum.weyl.elements() {
            for (a, c) in datum.simple_roots.iter().zip(&datum.simple_coroots) {
                let root = datum.weyl.act(w, a);
                let coroot = datum.weyl.coact(w, c);
                if datum.simple_coeffs(&root).map_or(false, |cs| cs.iter().all(|&x| x >= 0))
                    && !pairs.iter().any(|(r, _)| *r == root)
                {
                    pairs.push((root, coroot));
                }
            }
        }
        pairs.sort_by_key(|(r, _)| (datum.height(r), std::cmp::Reverse(*r)));
        datum.pos_roots = pairs.iter().map(|p| p.0).collect();
        datum.pos_coroots = pairs.iter().map(|p| p.1).collect();
        for (i, (r, c)) in pairs.iter().enumerate() {
            let w = datum.weyl.from_matrix(&reflection_matrix(r, c, dim)).expect("reflection in W");
            datum.reflections.insert(w, i);
        }
        let (simple, walls) = crate::affweyl::derive_affine_simple(&datum);
        datum.affine_simple = simple;
        datum.affine_walls = walls;
        datum
    }

    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    /// Coefficients of `v` in the basis of simple roots, scaled by `coeff_den()`;
    /// `None` when `v` is not in the rational span of the roots.
    pub fn simple_coeffs(&self, v: &Vec4) -> Option<Vec<i64>> {
        let cs: Vec<i64> = self.coeff_proj.iter().map(|row| dot(row, v)).collect();
        let mut back = ZERO;
        for (c, a) in cs.iter().zip(&self.simple_roots) {
            back = vadd(&back, &vscale(*c, a));
        }
        if back == vscale(self.coeff_den, v) {
            Some(cs)
        } else {
            None
        }
    }

    pub fn coeff_den(&self) -> i64 {
        self.coeff_den
    }

    fn height(&self, v: &Vec4) -> i64 {
        self.simple_coeffs(v).map_or(0, |c| c.iter().sum())
    }

    /// Whether `v` lies in the closed cone spanned by the positive roots.
    pub fn in_positive_cone(&self, v: &Vec4) -> bool {
        self.simple_coeffs(v).map_or(false, |c| c.iter().all(|&x| x >= 0))
    }

    /// Whether `v` lies in the root lattice.
    pub fn in_root_lattice(&self, v: &Vec4) -> bool {
        self.simple_coeffs(v).map_or(false, |c| c.iter().all(|&x| x % self.coeff_den == 0))
    }

    pub fn pairing(&self, lambda: &Vec4, coweight: &Vec4) -> i64 {
        dot(lambda, coweight)
    }

    pub fn is_dominant(&self, lambda: &Vec4) -> bool {
        self.simple_coroots.iter().all(|c| dot(lambda, c) >= 0)
    }

    /// The positive root index of a reflection, if `w` is one.
    pub fn reflection_root(&self, w: WeylElt) -> Option<usize> {
        self.reflections.get(&w).copied()
    }

    pub fn reflection(&self, root_index: usize) -> WeylElt {
        let r = &self.pos_roots[root_index];
        let c = &self.pos_coroots[root_index];
        self.weyl.from_matrix(&reflection_matrix(r, c, self.dim)).unwrap()
    }

    /// The dominant element of the orbit W·λ together with w such that wλ is dominant.
    pub fn dominant_rep(&self, lambda: &Vec4) -> (Vec4, WeylElt) {
        for w in self.weyl.elements() {
            let x = self.weyl.act(w, lambda);
            if self.is_dominant(&x) {
                return (x, w);
            }
        }
        unreachable!("every W-orbit meets the dominant chamber")
    }

    pub fn orbit(&self, lambda: &Vec4) -> Vec<Vec4> {
        let mut out: Vec<Vec4> = self.weyl.elements().map(|w| self.weyl.act(w, lambda)).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Membership of ν in the convex hull of Wλ, via the dominance order:
    /// ν is in the hull iff its dominant conjugate is below λ.
    pub fn conv_hull_member(&self, nu: &Vec4, lambda: &Vec4) -> bool {
        let (nd, _) = self.dominant_rep(nu);
        let (ld, _) = self.dominant_rep(lambda);
        self.in_positive_cone(&vsub(&ld, &nd))
    }

    /// Lattice points of Conv(Wλ) congruent to λ modulo the root lattice.
    pub fn conv_lattice_points(&self, lambda: &Vec4) -> Vec<Vec4> {
        let (ld, _) = self.dominant_rep(lambda);
        let mut dominant = vec![ld];
        let mut frontier = vec![ld];
        while let Some(x) = frontier.pop() {
            for a in self.pos_roots.iter() {
                let y = vsub(&x, a);
                if self.is_dominant(&y) && !dominant.contains(&y) {
                    dominant.push(y);
                    frontier.push(y);
                }
            }
        }
        let mut out: Vec<Vec4> = dominant.iter().flat_map(|d| self.orbit(d)).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Splits λ as (derived part, central coefficient) along the X⁰ generator.
    pub fn central_coord(&self, lambda: &Vec4) -> i64 {
        lambda[self.center_coord]
    }

    pub fn parse_weight(&self, s: &str) -> Result<Vec4> {
        let parts: Vec<&str> = s.split([',', ';']).map(str::trim).filter(|x| !x.is_empty()).collect();
        if parts.len() != self.dim {
            return Err(Error::Dimension { expected: self.dim, got: parts.len() });
        }
        let mut v = ZERO;
        for (i, p) in parts.iter().enumerate() {
            v[i] = p.parse().map_err(|_| Error::Parse(format!("bad integer '{p}' in weight '{s}'")))?;
        }
        Ok(v)
    }

    pub fn format_weight(&self, v: &Vec4) -> String {
        match self.group {
            Group::GSp4 | Group::GSp4Dual => format!("{},{};{}", v[0], v[1], v[2]),
            _ => v[..self.dim].iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
        }
    }

    /// Parses words like "s1 s2 s1", "s1s2" or "e".
    pub fn parse_word(&self, s: &str) -> Result<WeylElt> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() || t == "e" || t == "1" {
            return Ok(WeylElt::E);
        }
        let mut letters = vec![];
        for tok in t.split('s').skip(1) {
            let i: u8 = tok.parse().map_err(|_| Error::Parse(format!("bad Weyl word '{s}'")))?;
            if i == 0 || i as usize > self.rank() {
                return Err(Error::Parse(format!("no simple reflection s{i} in {}", self.group)));
            }
            letters.push(i);
        }
        if !t.starts_with('s') {
            return Err(Error::Parse(format!("bad Weyl word '{s}'")));
        }
        self.weyl.from_word(&letters).ok_or_else(|| Error::Parse(format!("bad Weyl word '{s}'")))
    }

    pub fn format_word(&self, w: WeylElt) -> String {
        let word = self.weyl.word(w);
        if word.is_empty() {
            "e".to_string()
        } else {
            word.iter().map(|l| format!("s{l}")).collect::<Vec<_>>().join("")
        }
    }
}

fn gsp4_input() -> DatumInput {
    DatumInput {
        group: Group::GSp4,
        dim: 3,
        simple_roots: vec![[1, -1, 0, 0], [0, 2, -1, 0]],
        simple_coroots: vec![[1, -1, 0, 0], [0, 1, 0, 0]],
        omega_form: [1, 1, 2, 0],
        center: [0, 0, 1, 0],
        center_coord: 2,
        eta: [2, 1, 0, 0],
        base_point: RatPt::new([2, 1, 0, 0], 4),
    }
}

fn gsp4_dual_input() -> DatumInput {
    DatumInput {
        group: Group::GSp4Dual,
        dim: 3,
        simple_roots: vec![[1, -1, 0, 0], [0, 1, 0, 0]],
        simple_coroots: vec![[1, -1, 0, 0], [0, 2, -1, 0]],
        omega_form: [0, 0, 1, 0],
        center: [1, 1, 2, 0],
        center_coord: 0,
        eta: [3, 2, 3, 0],
        base_point: RatPt::new([-3, -2, -3, 0], 4),
    }
}

fn gl_input(n: usize, dual: bool) -> DatumInput {
    assert!((1..=4).contains(&n), "GL_n is supported for n <= 4");
    let mut simple = vec![];
    for i in 0..n - 1 {
        let mut a = ZERO;
        a[i] = 1;
        a[i + 1] = -1;
        simple.push(a);
    }
    let mut eta = ZERO;
    let mut omega_form = ZERO;
    let mut center = ZERO;
    for i in 0..n {
        eta[i] = (n - 1 - i) as i64;
        omega_form[i] = 1;
        center[i] = 1;
    }
    let sign = if dual { -1 } else { 1 };
    DatumInput {
        group: if dual { Group::GLDual(n as u8) } else { Group::GL(n as u8) },
        dim: n,
        simple_roots: simple.clone(),
        simple_coroots: simple,
        omega_form,
        center,
        center_coord: n - 1,
        eta,
        base_point: RatPt::new(vscale(sign, &eta), n as i64),
    }
}

pub fn gsp4() -> &'static RootDatum {
    static CELL: OnceLock<RootDatum> = OnceLock::new();
    CELL.get_or_init(|| RootDatum::build(gsp4_input()))
}

pub fn gsp4_dual() -> &'static RootDatum {
    static CELL: OnceLock<RootDatum> = OnceLock::new();
    CELL.get_or_init(|| RootDatum::build(gsp4_dual_input()))
}

pub fn gl(n: usize) -> &'static RootDatum {
    static CELLS: [OnceLock<RootDatum>; 4] = [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    CELLS[n - 1].get_or_init(|| RootDatum::build(gl_input(n, false)))
}

pub fn gl_dual(n: usize) -> &'static RootDatum {
    static CELLS: [OnceLock<RootDatum>; 4] = [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    CELLS[n - 1].get_or_init(|| RootDatum::build(gl_input(n, true)))
}

pub fn datum(group: Group) -> &'static RootDatum {
    match group {
        Group::GSp4 => gsp4(),
        Group::GSp4Dual => gsp4_dual(),
        Group::GL(n) => gl(n as usize),
        Group::GLDual(n) => gl_dual(n as usize),
    }
}

/// The dual datum, whose characters are the cocharacters of `d`.
pub fn dual_of(d: &RootDatum) -> &'static RootDatum {
    match d.group {
        Group::GSp4 => gsp4_dual(),
        Group::GSp4Dual => gsp4(),
        Group::GL(n) => gl_dual(n as usize),
        Group::GLDual(n) => gl(n as usize),
    }
}

/// φ: X*(T) → X*(T^∨) = X_*(T), (a,b;c) ↦ (a+b+c, a+c; a+b+2c).
pub fn phi(l: &Vec4) -> Vec4 {
    [l[0] + l[1] + l[2], l[0] + l[2], l[0] + l[1] + 2 * l[2], 0]
}

pub fn phi_inv(x: &Vec4) -> Vec4 {
    [x[0] + x[1] - x[2], x[0] - x[1], x[2] - x[0], 0]
}

/// φ on rational points (the map is linear).
pub fn phi_pt(x: &RatPt) -> RatPt {
    RatPt::new(phi(&x.num), x.den)
}

/// std: X_*(T) → Z⁴, (a,b;c) ↦ (a, b, c−b, c−a).
pub fn std_cochar(x: &Vec4) -> Vec4 {
    [x[0], x[1], x[2] - x[1], x[2] - x[0]]
}

/// Similitude part of a cocharacter (the c coordinate).
pub fn simc_cochar(x: &Vec4) -> i64 {
    x[2]
}

/// T = std∘φ: (a,b;c) ↦ (a+b+c, a+c, b+c, c).
pub fn transfer_weight(l: &Vec4) -> Vec4 {
    std_cochar(&phi(l))
}

pub fn transfer_pt(x: &RatPt) -> RatPt {
    RatPt::new(transfer_weight(&x.num), x.den)
}

fn conjugate_into(
    src: &RootDatum,
    dst: &RootDatum,
    w: WeylElt,
    map: impl Fn(&Vec4) -> Vec4,
) -> WeylElt {
    let basis: Vec<Vec4> = (0..src.dim)
        .map(|i| {
            let mut e = ZERO;
            e[i] = 1;
            e
        })
        .collect();
    let mut found = None;
    for u in dst.weyl.elements() {
        if basis.iter().all(|e| dst.weyl.act(u, &map(e)) == map(&src.weyl.act(w, e))) {
            assert!(found.is_none(), "transported Weyl element is not unique");
            found = Some(u);
        }
    }
    found.expect("Weyl element transports")
}

/// φ on Weyl groups: the unique w' ∈ W^∨ with φ(wλ) = w'φ(λ).
pub fn phi_weyl(w: WeylElt) -> WeylElt {
    static TABLE: OnceLock<Vec<WeylElt>> = OnceLock::new();
    TABLE.get_or_init(|| gsp4().weyl.elements().map(|w| conjugate_into(gsp4(), gsp4_dual(), w, phi)).collect())
        [w.0 as usize]
}

pub fn phi_weyl_inv(w: WeylElt) -> WeylElt {
    gsp4().weyl.elements().find(|&u| phi_weyl(u) == w).unwrap()
}

/// std on the dual Weyl group: the permutation σ with std(wx) = σ std(x).
pub fn std_weyl(w: WeylElt) -> WeylElt {
    static TABLE: OnceLock<Vec<WeylElt>> = OnceLock::new();
    TABLE.get_or_init(|| {
        gsp4_dual().weyl.elements().map(|w| conjugate_into(gsp4_dual(), gl(4), w, std_cochar)).collect()
    })[w.0 as usize]
}

/// T on Weyl groups: the permutation σ with T(wλ) = σT(λ).
pub fn transfer_weyl(w: WeylElt) -> WeylElt {
    static TABLE: OnceLock<Vec<WeylElt>> = OnceLock::new();
    TABLE.get_or_init(|| gsp4().weyl.elements().map(|w| conjugate_into(gsp4(), gl(4), w, transfer_weight)).collect())
        [w.0 as usize]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gsp4_roots() {
        let d = gsp4();
        assert_eq!(d.weyl.order(), 8);
        let mut roots = d.pos_roots.clone();
        roots.sort();
        let mut expect = vec![[1, -1, 0, 0], [0, 2, -1, 0], [1, 1, -1, 0], [2, 0, -1, 0]];
        expect.sort();
        assert_eq!(roots, expect);
        let mut co = d.pos_coroots.clone();
        co.sort();
        let mut expect = vec![[1, -1, 0, 0], [0, 1, 0, 0], [1, 1, 0, 0], [1, 0, 0, 0]];
        expect.sort();
        assert_eq!(co, expect);
    }

    #[test]
    fn cartan_matrix_is_c2() {
        let d = gsp4();
        let cartan: Vec<Vec<i64>> = d
            .simple_roots
            .iter()
            .map(|a| d.simple_coroots.iter().map(|c| dot(a, c)).collect())
            .collect();
        assert_eq!(cartan, vec![vec![2, -1], vec![-2, 2]]);
    }

    #[test]
    fn simple_reflections_and_w0() {
        let d = gsp4();
        let s1 = d.weyl.simple(1);
        let s2 = d.weyl.simple(2);
        assert_eq!(d.weyl.act(s1, &[2, 1, 0, 0]), [1, 2, 0, 0]);
        assert_eq!(d.weyl.act(s2, &[0, 2, -1, 0]), [0, -2, 1, 0]);
        assert_eq!(d.weyl.act(s2, &[5, 3, 7, 0]), [5, -3, 10, 0]);
        let w0 = d.weyl.longest();
        assert_eq!(d.weyl.length(w0), 4);
        assert_eq!(d.weyl.act(w0, &[2, 1, 0, 0]), [-2, -1, 3, 0]);
    }

    #[test]
    fn pairing_examples() {
        let d = gsp4();
        assert_eq!(d.pairing(&[1, -1, 0, 0], &[1, -1, 0, 0]), 2);
        assert_eq!(d.pairing(&[0, 2, -1, 0], &[1, -1, 0, 0]), -2);
    }

    #[test]
    fn pairing_matches_torus_evaluation() {
        // evaluate the character (a,b;c) on the cocharacter x ↦ Diag(x^p, x^q, x^{r-q}, x^{r-p}):
        // the exponent of x is a·p + b·q + (c−b)(r−q)... restricted to the diagonal torus the
        // character picks the first, second and similitude exponents.
        for a in -2..3 {
            for b in -2..3 {
                for c in -2..3 {
                    for (p, q, r) in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (2, -1, 3)] {
                        // character: diag(t1,t2,t3,t4) ↦ t1^a t2^b (t1 t4)^c with t1 t4 = t2 t3
                        let t = [p, q, r - q, r - p];
                        let exponent = a * t[0] + b * t[1] + c * (t[0] + t[3]);
                        assert_eq!(exponent, dot(&[a, b, c, 0], &[p, q, r, 0]));
                    }
                }
            }
        }
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&[2, 1, 0, 0]), [3, 2, 3, 0]);
        assert_eq!(phi(&[1, -1, 0, 0]), [0, 1, 0, 0]);
        assert_eq!(phi_weyl(gsp4().weyl.simple(1)), gsp4_dual().weyl.simple(2));
        assert_eq!(phi_weyl(gsp4().weyl.simple(2)), gsp4_dual().weyl.simple(1));
        for x in [[1, 2, 3, 0], [-4, 0, 7, 0]] {
            assert_eq!(phi_inv(&phi(&x)), x);
        }
    }

    #[test]
    fn transfer_examples() {
        assert_eq!(transfer_weight(&[2, 1, 0, 0]), [3, 2, 1, 0]);
        assert_eq!(std_cochar(&[1, 1, 2, 0]), [1, 1, 1, 1]);
        assert_eq!(std_cochar(&phi(&gsp4().eta)), transfer_weight(&gsp4().eta));
    }

    #[test]
    fn dual_and_gl_data() {
        assert_eq!(gsp4_dual().pos_roots.len(), 4);
        assert_eq!(gl(4).weyl.order(), 24);
        assert_eq!(gl(4).pos_roots.len(), 6);
        assert_eq!(gl(3).weyl.order(), 6);
    }

    #[test]
    fn parse_and_format() {
        let d = gsp4();
        assert_eq!(d.parse_weight("2,1;0").unwrap(), [2, 1, 0, 0]);
        assert!(d.parse_weight("2,1").is_err());
        let w = d.parse_word("s1 s2 s1 s2").unwrap();
        assert_eq!(w, d.weyl.longest());
        assert_eq!(d.format_word(WeylElt::E), "e");
        assert!(d.parse_word("s3").is_err());
    }

    #[test]
    fn conv_hull_examples() {
        let d = gsp4();
        let eta_dual = phi(&d.eta);
        let dd = gsp4_dual();
        // the barycenter of W·φ(η) is (3/2)(1,1;2); scale by two to stay integral
        assert!(dd.conv_hull_member(&[3, 3, 6, 0], &vscale(2, &eta_dual)));
        assert!(dd.conv_hull_member(&eta_dual, &eta_dual));
        assert!(d.conv_hull_member(&d.eta, &d.eta));
        assert!(!d.conv_hull_member(&[3, 0, 0, 0], &d.eta));
        assert_eq!(d.conv_lattice_points(&[0, 0, 0, 0]), vec![[0, 0, 0, 0]]);
    }
}
