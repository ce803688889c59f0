//! Sparse multivariate polynomials with integer coefficients over named variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A monomial: variable name ↦ positive exponent.
pub type Monomial = BTreeMap<String, u32>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, i128>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn constant(c: i128) -> Self {
        let mut p = MultiPoly::zero();
        if c != 0 {
            p.terms.insert(Monomial::new(), c);
        }
        p
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn var(name: &str) -> Self {
        let mut m = Monomial::new();
        m.insert(name.to_string(), 1);
        let mut p = MultiPoly::zero();
        p.terms.insert(m, 1);
        p
    }

    /// Product of the named variables, e.g. `monomial(&["c14", "A41"])`.
    pub fn monomial(names: &[&str]) -> Self {
        names.iter().fold(Self::one(), |acc, n| &acc * &Self::var(n))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &i128)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, m: Monomial, c: i128) {
        let entry = self.terms.entry(m).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    /// Coefficient of the monomial given as a product of variable names.
    pub fn coeff_of(&self, names: &[&str]) -> i128 {
        let mut m = Monomial::new();
        for n in names {
            *m.entry(n.to_string()).or_insert(0) += 1;
        }
        self.terms.get(&m).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.values().sum()).max().unwrap_or(0)
    }

    pub fn scale(&self, k: i128) -> Self {
        if k == 0 {
            return Self::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Replaces a variable by a polynomial.
    pub fn substitute(&self, name: &str, value: &MultiPoly) -> Self {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let e = rest.remove(name).unwrap_or(0);
            let mut base = MultiPoly::zero();
            base.terms.insert(rest, *c);
            out = &out + &(&base * &value.pow(e));
        }
        out
    }

    /// Replaces every occurrence of the monomial `pattern` by `value`, as often
    /// as it divides each term. `value` must not contain `pattern` again.
    pub fn rewrite(&self, pattern: &[&str], value: &MultiPoly) -> Self {
        let mut pat = Monomial::new();
        for n in pattern {
            *pat.entry(n.to_string()).or_insert(0) += 1;
        }
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let times = pat.iter().map(|(v, e)| m.get(v).copied().unwrap_or(0) / e).min().unwrap_or(0);
            if times == 0 {
                out.terms.insert(m.clone(), *c);
                continue;
            }
            let mut rest = m.clone();
            for (v, e) in &pat {
                let left = rest[v] - e * times;
                if left == 0 {
                    rest.remove(v);
                } else {
                    rest.insert(v.clone(), left);
                }
            }
            let mut base = MultiPoly::zero();
            base.terms.insert(rest, *c);
            out = &out + &(&base * &value.pow(times));
        }
        out
    }

    /// Evaluates with every variable given an integer value; missing variables are an error.
    pub fn eval(&self, values: &BTreeMap<String, i128>) -> Option<i128> {
        let mut total: i128 = 0;
        for (m, c) in &self.terms {
            let mut t = *c;
            for (v, e) in m {
                t = t.checked_mul(values.get(v)?.checked_pow(*e)?)?;
            }
            total = total.checked_add(t)?;
        }
        Some(total)
    }

    /// Evaluates modulo p.
    pub fn eval_mod(&self, values: &BTreeMap<String, i128>, p: i128) -> Option<i128> {
        let mut total: i128 = 0;
        for (m, c) in &self.terms {
            let mut t = c.rem_euclid(p);
            for (v, e) in m {
                let x = values.get(v)?.rem_euclid(p);
                for _ in 0..*e {
                    t = t * x % p;
                }
            }
            total = (total + t) % p;
        }
        Some(total)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), *c);
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -*c);
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(-1)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut acc: BTreeMap<Monomial, i128> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let mut m = m1.clone();
                for (v, e) in m2 {
                    *m.entry(v.clone()).or_insert(0) += e;
                }
                *acc.entry(m).or_insert(0) += c1 * c2;
            }
        }
        acc.retain(|_, c| *c != 0);
        MultiPoly { terms: acc }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // higher degree first, then lexicographic
        let mut terms: Vec<(&Monomial, &i128)> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.values().sum::<u32>().cmp(&a.0.values().sum::<u32>()).then(a.0.cmp(b.0)));
        for (i, (m, c)) in terms.iter().enumerate() {
            let c = **c;
            // lowercase coefficient symbols before uppercase entries
            let mut vars: Vec<(&String, &u32)> = m.iter().collect();
            vars.sort_by_key(|(v, _)| (v.starts_with(|ch: char| ch.is_uppercase()), v.as_str()));
            let mono: Vec<String> =
                vars.iter().map(|(v, e)| if **e == 1 { v.to_string() } else { format!("{v}^{e}") }).collect();
            let sign = if c < 0 { "-" } else if i > 0 { "+" } else { "" };
            let sep = if i > 0 { " " } else { "" };
            let body = match (c.abs(), mono.is_empty()) {
                (a, true) => a.to_string(),
                (1, false) => mono.join("*"),
                (a, false) => format!("{a}*{}", mono.join("*")),
            };
            if i > 0 {
                write!(f, "{sep}{sign} {body}")?;
            } else {
                write!(f, "{sign}{body}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_basics() {
        let x = MultiPoly::var("x");
        let y = MultiPoly::var("y");
        let s = &x + &y;
        let sq = &s * &s;
        assert_eq!(sq.coeff_of(&["x", "y"]), 2);
        assert_eq!(sq.coeff_of(&["x", "x"]), 1);
        assert!((&sq - &sq).is_zero());
        assert_eq!(format!("{}", &x - &y), "x - y");
        assert_eq!(format!("{}", MultiPoly::monomial(&["c234", "A32", "A43"]).scale(-1)), "-c234*A32*A43");
    }

    #[test]
    fn substitution() {
        let x = MultiPoly::var("x");
        let p = &x.pow(2) + &MultiPoly::constant(1);
        let q = p.substitute("x", &(&x - &MultiPoly::constant(1)));
        let mut vals = BTreeMap::new();
        vals.insert("x".to_string(), 3);
        assert_eq!(q.eval(&vals), Some(5));
    }

    #[test]
    fn monomial_rewrite() {
        let lhs = MultiPoly::monomial(&["c24", "A42", "A42", "x"]);
        let r = lhs.rewrite(&["c24", "A42"], &MultiPoly::monomial(&["c13", "A31"]));
        assert_eq!(r, MultiPoly::monomial(&["c13", "A31", "A42", "x"]));
        let untouched = MultiPoly::var("c24");
        assert_eq!(untouched.rewrite(&["c24", "A42"], &MultiPoly::one()), untouched);
    }
}
