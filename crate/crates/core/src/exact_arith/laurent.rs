//! Sparse multivariate Laurent polynomials over `Q(ω)`.
//!
//! Terms are keyed by exponent vectors with one slot per formal variable.
//! The variable layout is chosen by the caller; the vertex model uses
//! `(t, β, z₁, …, z_N)` with `q = t²` and `s = t³`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::ExactScalar;
use crate::error::{Error, Result};

pub type Exponents = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiLaurent {
    nvars: usize,
    terms: BTreeMap<Exponents, ExactScalar>,
}

/// A coefficient times a monomial, the image of one variable under a monomial map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: ExactScalar,
    pub exps: Exponents,
}

impl Monomial {
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial {
            coeff: ExactScalar::one(),
            exps,
        }
    }

    /// The monomial `∏ v_k^{e_k}` with unit coefficient.
    pub fn from_exps(exps: Exponents) -> Self {
        Monomial {
            coeff: ExactScalar::one(),
            exps,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(Monomial {
            coeff: self.coeff.inv()?,
            exps: self.exps.iter().map(|e| -e).collect(),
        })
    }

    pub fn to_laurent(&self) -> MultiLaurent {
        MultiLaurent::term(self.exps.len(), self.exps.clone(), self.coeff.clone())
    }
}

impl MultiLaurent {
    pub fn zero(nvars: usize) -> Self {
        MultiLaurent {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, ExactScalar::one())
    }

    pub fn constant(nvars: usize, c: ExactScalar) -> Self {
        Self::term(nvars, vec![0; nvars], c)
    }

    pub fn term(nvars: usize, exps: Exponents, c: ExactScalar) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MultiLaurent { nvars, terms }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Monomial::var(nvars, i).to_laurent()
    }

    /// `v^e` for a single variable, negative powers allowed.
    pub fn var_pow(nvars: usize, i: usize, e: i32) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = e;
        Self::term(nvars, exps, ExactScalar::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i32]) -> ExactScalar {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(ExactScalar::zero)
    }

    fn insert_add(&mut self, exps: Exponents, c: ExactScalar) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn as_monomial(&self) -> Option<Monomial> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        Some(Monomial {
            coeff: c.clone(),
            exps: e.clone(),
        })
    }

    pub fn as_constant(&self) -> Option<ExactScalar> {
        match self.terms.len() {
            0 => Some(ExactScalar::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        let mut out = MultiLaurent::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (e, a) in &self.terms {
            out.terms.insert(e.clone(), a * c);
        }
        out
    }

    /// Multiply by a monomial.
    pub fn shift(&self, m: &Monomial) -> Self {
        let mut out = MultiLaurent::zero(self.nvars);
        for (e, a) in &self.terms {
            let ne = e.iter().zip(&m.exps).map(|(x, y)| x + y).collect();
            out.insert_add(ne, a * &m.coeff);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MultiLaurent::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power; negative exponents need a monomial base.
    pub fn powi(&self, e: i32) -> Result<Self> {
        if e >= 0 {
            return Ok(self.pow(e as u32));
        }
        let m = self.as_monomial().ok_or_else(|| {
            Error::UnsupportedSubstitution("negative power of a non-monomial".into())
        })?;
        Ok(m.inv()?.to_laurent().pow(e.unsigned_abs()))
    }

    /// `[v] = v - v⁻¹` for a Laurent monomial `v`.
    pub fn bracket(v: &MultiLaurent) -> Result<Self> {
        let m = v
            .as_monomial()
            .ok_or_else(|| Error::Argument("bracket of a non-monomial".into()))?;
        Ok(v - &m.inv()?.to_laurent())
    }

    /// Replace variable `var` by `value`.
    pub fn substitute(&self, var: usize, value: &MultiLaurent) -> Result<Self> {
        assert_eq!(value.nvars, self.nvars);
        let mono = value.as_monomial();
        if mono.is_none() && self.terms.keys().any(|e| e[var] < 0) && !value.is_empty() {
            return Err(Error::UnsupportedSubstitution(
                "non-monomial value into a negative power".into(),
            ));
        }
        let mut powers: BTreeMap<i32, MultiLaurent> = BTreeMap::new();
        let mut out = MultiLaurent::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e[var];
            if let std::collections::btree_map::Entry::Vacant(e) = powers.entry(k) {
                let p = if value.is_empty() {
                    if k < 0 {
                        return Err(Error::SingularInput("zero into a negative power".into()));
                    }
                    if k == 0 {
                        MultiLaurent::one(self.nvars)
                    } else {
                        MultiLaurent::zero(self.nvars)
                    }
                } else {
                    value.powi(k)?
                };
                e.insert(p);
            }
            let mut rest = e.clone();
            rest[var] = 0;
            let part = powers[&k].shift(&Monomial {
                coeff: c.clone(),
                exps: rest,
            });
            for (pe, pc) in part.terms {
                out.insert_add(pe, pc);
            }
        }
        Ok(out)
    }

    /// Replace every variable at once; `images[i]` is the image of variable `i`.
    pub fn monomial_map(&self, images: &[Monomial]) -> Result<Self> {
        self.monomial_map_to(images, self.nvars)
    }

    /// Like [`Self::monomial_map`], into a ring with `target` variables.
    pub fn monomial_map_to(&self, images: &[Monomial], target: usize) -> Result<Self> {
        assert_eq!(images.len(), self.nvars);
        assert!(images.iter().all(|m| m.exps.len() == target));
        let mut out = MultiLaurent::zero(target);
        let mut cache: Vec<BTreeMap<i32, ExactScalar>> = vec![BTreeMap::new(); self.nvars];
        for (e, c) in &self.terms {
            let mut ne = vec![0i32; target];
            let mut coeff = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let img = &images[i];
                for (slot, &ie) in ne.iter_mut().zip(&img.exps) {
                    *slot += k * ie;
                }
                if !img.coeff.is_one() {
                    let p = match cache[i].get(&k) {
                        Some(p) => p.clone(),
                        None => {
                            let p = img.coeff.pow(k as i64)?;
                            cache[i].insert(k, p.clone());
                            p
                        }
                    };
                    coeff = &coeff * &p;
                }
            }
            out.insert_add(ne, coeff);
        }
        Ok(out)
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut out = MultiLaurent::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne.swap(i, j);
            out.terms.insert(ne, c.clone());
        }
        out
    }

    /// `p(…, v_i⁻¹, …)`.
    pub fn invert_var(&self, i: usize) -> Self {
        let mut out = MultiLaurent::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne[i] = -ne[i];
            out.terms.insert(ne, c.clone());
        }
        out
    }

    /// `p(…, -v_i, …)`.
    pub fn negate_var(&self, i: usize) -> Self {
        let mut out = MultiLaurent::zero(self.nvars);
        for (e, c) in &self.terms {
            let c = if e[i] % 2 != 0 { -c } else { c.clone() };
            out.terms.insert(e.clone(), c);
        }
        out
    }

    pub fn evaluate(&self, values: &[ExactScalar]) -> Result<ExactScalar> {
        assert_eq!(values.len(), self.nvars);
        let mut cache: Vec<BTreeMap<i32, ExactScalar>> = vec![BTreeMap::new(); self.nvars];
        let mut acc = ExactScalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let p = match cache[i].get(&k) {
                    Some(p) => p.clone(),
                    None => {
                        let p = values[i].pow(k as i64)?;
                        cache[i].insert(k, p.clone());
                        p
                    }
                };
                t = &t * &p;
            }
            acc += &t;
        }
        Ok(acc)
    }

    pub fn eval_complex(&self, values: &[Complex64]) -> Complex64 {
        assert_eq!(values.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(values)
                    .fold(c.to_complex(), |acc, (&k, v)| acc * v.powi(k))
            })
            .sum()
    }

    /// Smallest and largest exponent of variable `var`, `None` for zero.
    pub fn degree_range(&self, var: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|e| e[var]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), k| (lo.min(k), hi.max(k))))
    }

    pub fn degree_width(&self, var: usize) -> u32 {
        self.degree_range(var)
            .map_or(0, |(lo, hi)| (hi - lo) as u32)
    }

    /// Degree width equals twice the leading degree, i.e. exponents symmetric about zero.
    pub fn is_centred(&self, var: usize) -> bool {
        self.degree_range(var).is_none_or(|(lo, hi)| lo == -hi)
    }

    pub fn is_even_in(&self, var: usize) -> bool {
        self.terms.keys().all(|e| e[var] % 2 == 0)
    }

    /// Coefficient of `v_var^k`, as a polynomial in the remaining variables.
    pub fn coefficient_in(&self, var: usize, k: i32) -> Self {
        let mut out = MultiLaurent::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == k {
                let mut ne = e.clone();
                ne[var] = 0;
                out.terms.insert(ne, c.clone());
            }
        }
        out
    }

    /// Exact quotient `self / d` in the Laurent ring.
    ///
    /// Lex-leading-term division. The quotient support must lie in the box
    /// `[min_p - min_d, max_p - max_d]` per variable; leaving it proves a
    /// nonzero remainder, which also guarantees termination.
    pub fn exact_div(&self, d: &MultiLaurent) -> Result<Self> {
        assert_eq!(d.nvars, self.nvars);
        let (dlead_e, dlead_c) = d
            .terms
            .iter()
            .next_back()
            .ok_or_else(|| Error::SingularInput("Laurent division by zero".into()))?;
        let dlead_inv = dlead_c.inv()?;
        let mut quot = MultiLaurent::zero(self.nvars);
        if self.is_empty() {
            return Ok(quot);
        }
        let bounds: Vec<(i32, i32)> = (0..self.nvars)
            .map(|v| {
                let (plo, phi) = self.degree_range(v).unwrap();
                let (dlo, dhi) = d.degree_range(v).unwrap();
                (plo - dlo, phi - dhi)
            })
            .collect();
        let mut rem = self.clone();
        while let Some((e, c)) = rem.terms.iter().next_back() {
            let qe: Exponents = e.iter().zip(dlead_e).map(|(a, b)| a - b).collect();
            if qe
                .iter()
                .zip(&bounds)
                .any(|(&k, &(lo, hi))| k < lo || k > hi)
            {
                return Err(Error::NotDivisible(
                    "Laurent quotient leaves a remainder".into(),
                ));
            }
            let qc = c * &dlead_inv;
            let m = Monomial {
                coeff: -&qc,
                exps: qe.clone(),
            };
            for (pe, pc) in d.shift(&m).terms {
                rem.insert_add(pe, pc);
            }
            quot.insert_add(qe, qc);
        }
        Ok(quot)
    }

    pub fn display_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(k, _)| **k != 0)
                .map(|(k, n)| {
                    if *k == 1 {
                        n.to_string()
                    } else {
                        format!("{n}^{k}")
                    }
                })
                .collect();
            let cs = if c.is_rational() {
                c.to_string()
            } else {
                format!("({c})")
            };
            parts.push(if mono.is_empty() {
                cs
            } else {
                format!("{cs}*{}", mono.join("*"))
            });
        }
        parts.join(" + ")
    }
}

impl fmt::Display for MultiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("v{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        write!(f, "{}", self.display_with(&refs))
    }
}

impl Add for &MultiLaurent {
    type Output = MultiLaurent;
    fn add(self, o: &MultiLaurent) -> MultiLaurent {
        assert_eq!(self.nvars, o.nvars);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiLaurent {
    type Output = MultiLaurent;
    fn sub(self, o: &MultiLaurent) -> MultiLaurent {
        assert_eq!(self.nvars, o.nvars);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.insert_add(e.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiLaurent {
    type Output = MultiLaurent;
    fn mul(self, o: &MultiLaurent) -> MultiLaurent {
        assert_eq!(self.nvars, o.nvars);
        let mut out = MultiLaurent::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert_add(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiLaurent {
    type Output = MultiLaurent;
    fn neg(self) -> MultiLaurent {
        MultiLaurent {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiLaurent {
    type Output = MultiLaurent;
    fn neg(self) -> MultiLaurent {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiLaurent {
            type Output = MultiLaurent;
            fn $m(self, o: MultiLaurent) -> MultiLaurent {
                (&self).$m(&o)
            }
        }
        impl $tr<&MultiLaurent> for MultiLaurent {
            type Output = MultiLaurent;
            fn $m(self, o: &MultiLaurent) -> MultiLaurent {
                (&self).$m(o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const T: usize = 0;
    const Z: usize = 1;

    fn v(i: usize) -> MultiLaurent {
        MultiLaurent::var(3, i)
    }

    fn small_poly() -> impl Strategy<Value = MultiLaurent> {
        prop::collection::vec((-2i32..=2, -2i32..=2, -2i32..=2, -3i64..=3), 0..5).prop_map(|ts| {
            let mut p = MultiLaurent::zero(3);
            for (a, b, c, k) in ts {
                p = &p + &MultiLaurent::term(3, vec![a, b, c], ExactScalar::from_int(k));
            }
            p
        })
    }

    #[test]
    fn bracket_of_a_variable() {
        let b = MultiLaurent::bracket(&v(Z)).unwrap();
        assert_eq!(b, &v(Z) - &MultiLaurent::var_pow(3, Z, -1));
        assert!(MultiLaurent::bracket(&MultiLaurent::one(3))
            .unwrap()
            .is_empty());
        let q = MultiLaurent::var_pow(3, T, 2);
        let bq = MultiLaurent::bracket(&q).unwrap();
        assert_eq!(bq, &q - &MultiLaurent::var_pow(3, T, -2));
        assert!(MultiLaurent::bracket(&(&v(Z) + &v(T))).is_err());
    }

    #[test]
    fn substitution_by_a_shifted_monomial() {
        // [z] with z := t⁻² z gives t⁻² z - t² z⁻¹
        let bz = MultiLaurent::bracket(&v(Z)).unwrap();
        let img = MultiLaurent::term(3, vec![-2, 1, 0], ExactScalar::one());
        let got = bz.substitute(Z, &img).unwrap();
        let want = &MultiLaurent::term(3, vec![-2, 1, 0], ExactScalar::one())
            - &MultiLaurent::term(3, vec![2, -1, 0], ExactScalar::one());
        assert_eq!(got, want);
        let at_one = bz.substitute(Z, &MultiLaurent::one(3)).unwrap();
        assert!(at_one.is_empty());
    }

    #[test]
    fn non_monomial_into_negative_power_is_rejected() {
        let p = MultiLaurent::var_pow(3, Z, -1);
        let val = &v(T) + &MultiLaurent::one(3);
        assert!(matches!(
            p.substitute(Z, &val),
            Err(Error::UnsupportedSubstitution(_))
        ));
        let pos = v(Z).pow(2).substitute(Z, &val).unwrap();
        assert_eq!(pos, val.pow(2));
    }

    #[test]
    fn width_and_centring() {
        let p = &MultiLaurent::var_pow(3, Z, 3) - &MultiLaurent::var_pow(3, Z, -3).scale(&2.into());
        assert_eq!(p.degree_width(Z), 6);
        assert!(p.is_centred(Z));
        let q = &MultiLaurent::var_pow(3, Z, 3) - &MultiLaurent::var_pow(3, Z, -2);
        assert_eq!(q.degree_width(Z), 5);
        assert!(!q.is_centred(Z));
    }

    #[test]
    fn exact_division_recovers_factor_and_rejects_remainders() {
        let a = MultiLaurent::bracket(&(&v(Z) * &v(2))).unwrap();
        let b = &(&v(T) + &MultiLaurent::var_pow(3, Z, -2)) + &MultiLaurent::one(3);
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        assert_eq!(prod.exact_div(&b).unwrap(), a);
        assert!(b.exact_div(&a).is_err());
    }

    #[test]
    fn monomial_map_matches_substitution() {
        let p = &MultiLaurent::bracket(&(&v(T) * &v(Z))).unwrap() * &v(2).pow(2);
        let images = vec![
            Monomial::var(3, T),
            Monomial {
                coeff: ExactScalar::from_int(3),
                exps: vec![-1, -1, 0],
            },
            Monomial::var(3, 2),
        ];
        let mapped = p.monomial_map(&images).unwrap();
        let subst = p.substitute(Z, &images[1].to_laurent()).unwrap();
        assert_eq!(mapped, subst);
    }

    proptest! {
        #[test]
        fn ring_laws(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn bracket_at_one_kills_any_product(p in small_poly()) {
            let prod = &MultiLaurent::bracket(&v(Z)).unwrap() * &p;
            prop_assert!(prod.substitute(Z, &MultiLaurent::one(3)).unwrap().is_empty());
        }

        #[test]
        fn division_inverts_multiplication(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_empty());
            let prod = &a * &b;
            prop_assert_eq!(prod.exact_div(&b).unwrap(), a);
        }
    }
}
