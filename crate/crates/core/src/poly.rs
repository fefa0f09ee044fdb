//! Sparse exact multivariate polynomials.
//!
//! A `Poly` carries its ring tag (`Ring`: field plus ordered variable
//! list). Canonical form strips zero coefficients eagerly, so equality is
//! syntactic equality of the term maps.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Coeff, FieldSpec};
use crate::monomial::{Monomial, MonomialOrder};

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct RingData {
    pub field: FieldSpec,
    pub vars: Vec<String>,
}

/// Ring tag: cheap to clone, compared by value.
#[derive(Debug, Clone, Eq, Hash)]
pub struct Ring(pub Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Ring {
    pub fn new(field: FieldSpec, vars: Vec<String>) -> Ring {
        Ring(Arc::new(RingData { field, vars }))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.0.field
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    /// Ring with extra variables appended.
    pub fn extend(&self, extra: &[String]) -> Ring {
        let mut vars = self.0.vars.clone();
        for v in extra {
            assert!(!vars.contains(v), "variable {v} already declared");
            vars.push(v.clone());
        }
        Ring::new(self.0.field.clone(), vars)
    }

    pub fn describe(&self) -> String {
        format!("{}[{}]", self.0.field, self.0.vars.join(","))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    ring: Ring,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Poly {
    pub fn zero(ring: &Ring) -> Poly {
        Poly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Ring) -> Poly {
        Poly::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Ring, c: Coeff) -> Poly {
        let mut terms = BTreeMap::new();
        if !ring.field().is_zero(&c) {
            terms.insert(Monomial::one(ring.nvars()), c);
        }
        Poly { ring: ring.clone(), terms }
    }

    pub fn var(ring: &Ring, name: &str) -> Result<Poly> {
        let idx = ring
            .var_index(name)
            .ok_or_else(|| Error::NotRepresentable(format!("unknown variable {name}")))?;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(ring.nvars(), idx), ring.field().one());
        Ok(Poly { ring: ring.clone(), terms })
    }

    pub fn from_terms(ring: &Ring, list: Vec<(Monomial, Coeff)>) -> Poly {
        let mut p = Poly::zero(ring);
        for (m, c) in list {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|m| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(m, c)| m.is_one() && self.ring.field().is_one(c))
    }

    /// Single-term polynomial?
    pub fn is_term(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: Coeff) {
        let field = self.ring.field().clone();
        if field.is_zero(&c) {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let s = field.add(&old, &c);
                if !field.is_zero(&s) {
                    self.terms.insert(m, s);
                }
            }
        }
    }

    fn assert_same_ring(&self, other: &Poly) {
        assert!(
            self.ring == other.ring,
            "ring tag mismatch: {} vs {}",
            self.ring,
            other.ring
        );
    }

    pub fn checked_binop(&self, other: &Poly) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(
                self.ring.describe(),
                other.ring.describe(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.assert_same_ring(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        let f = self.ring.field();
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), f.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.assert_same_ring(other);
        let f = self.ring.field().clone();
        let mut out = Poly::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), f.mul(ca, cb));
            }
        }
        out
    }

    /// Coefficient-convolution product with the ring tags checked up front.
    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.checked_binop(other)?;
        Ok(self.mul(other))
    }

    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Poly {
        let f = self.ring.field();
        if f.is_zero(c) {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), f.mul(cc, c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        self.mul_term(&Monomial::one(self.ring.nvars()), c)
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut out = Poly::one(&self.ring);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn leading(&self, ord: MonomialOrder) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().max_by(|a, b| ord.cmp(a.0, b.0))
    }

    /// Monic under the given order (no-op on zero).
    pub fn normalize(&self, ord: MonomialOrder) -> Poly {
        match self.leading(ord) {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = self.ring.field().inv(lc).expect("nonzero leading coeff");
                self.scale(&inv)
            }
        }
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        self.assert_same_ring(divisor);
        if divisor.is_zero() {
            return None;
        }
        let ord = MonomialOrder::GrevLex;
        let f = self.ring.field().clone();
        let (dm, dc) = {
            let (m, c) = divisor.leading(ord).unwrap();
            (m.clone(), c.clone())
        };
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.ring);
        while !rem.is_zero() {
            let (lm, lc) = {
                let (m, c) = rem.leading(ord).unwrap();
                (m.clone(), c.clone())
            };
            if !dm.divides(&lm) {
                return None;
            }
            let qm = dm.div_into(&lm);
            let qc = f.div(&lc, &dc).unwrap();
            quot.add_term(qm.clone(), qc.clone());
            rem = rem.sub(&divisor.mul_term(&qm, &qc));
        }
        Some(quot)
    }

    /// Coefficients of `self` as a polynomial in variable `var`, listed as
    /// `(power, coefficient-poly)` with the coefficient polys still in the
    /// full ring (zero exponent at `var`).
    pub fn coeffs_wrt(&self, var: usize) -> Vec<(u32, Poly)> {
        let mut by_pow: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let k = m.0[var];
            let mut stripped = m.clone();
            stripped.0[var] = 0;
            by_pow
                .entry(k)
                .or_insert_with(|| Poly::zero(&self.ring))
                .add_term(stripped, c.clone());
        }
        by_pow.into_iter().collect()
    }

    /// Reinterpret in `target`, matching variables by name. Fails if a
    /// variable with positive degree is missing from `target`.
    pub fn cast(&self, target: &Ring) -> Result<Poly> {
        if self.ring == *target {
            return Ok(self.clone());
        }
        if self.ring.field() != target.field() {
            return Err(Error::RingMismatch(
                self.ring.describe(),
                target.describe(),
            ));
        }
        let map: Vec<Option<usize>> = self
            .ring
            .vars()
            .iter()
            .map(|v| target.var_index(v))
            .collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.nvars()];
            for (i, &exp) in m.0.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e[j] = exp,
                    None => {
                        return Err(Error::NotRepresentable(format!(
                            "variable {} not present in {}",
                            self.ring.vars()[i],
                            target.describe()
                        )))
                    }
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Does the polynomial involve any of the trailing `k` variables?
    pub fn uses_last_vars(&self, k: usize) -> bool {
        let n = self.ring.nvars();
        self.terms
            .keys()
            .any(|m| m.0[n - k..].iter().any(|&e| e > 0))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let field = self.ring.field();
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| MonomialOrder::GrevLex.cmp(b.0, a.0));
        let mut first = true;
        for (m, c) in terms {
            let neg = field.is_negative_display(c);
            let mag = if neg { field.neg(c) } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_str = field.format(&mag);
            let mut parts: Vec<String> = Vec::new();
            if m.is_one() || coeff_str != "1" {
                parts.push(coeff_str);
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 1 {
                    parts.push(self.ring.vars()[i].clone());
                } else if e > 1 {
                    parts.push(format!("{}^{}", self.ring.vars()[i], e));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// Multivariate gcd over a field, by primitive-part recursion on the last
/// active variable. Result is monic under grevlex; associates compare equal
/// after this normalization.
pub fn poly_gcd(p: &Poly, q: &Poly) -> Result<Poly> {
    p.checked_binop(q)?;
    if p.is_zero() && q.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    Ok(gcd_inner(p, q).normalize(MonomialOrder::GrevLex))
}

fn gcd_inner(p: &Poly, q: &Poly) -> Poly {
    if p.is_zero() {
        return q.clone();
    }
    if q.is_zero() {
        return p.clone();
    }
    // last variable with positive degree in either input
    let nvars = p.ring().nvars();
    let main = (0..nvars)
        .rev()
        .find(|&v| p.degree_in(v) > 0 || q.degree_in(v) > 0);
    let main = match main {
        None => return Poly::one(p.ring()), // both nonzero constants
        Some(v) => v,
    };
    let (cp, pp) = content_and_primitive(p, main);
    let (cq, pq) = content_and_primitive(q, main);
    let cont_gcd = gcd_inner(&cp, &cq);
    let pp_gcd = primitive_euclid(pp, pq, main);
    cont_gcd.mul(&pp_gcd)
}

/// Content (gcd of coefficients w.r.t. `var`) and the primitive part.
fn content_and_primitive(p: &Poly, var: usize) -> (Poly, Poly) {
    let coeffs = p.coeffs_wrt(var);
    let mut cont = Poly::zero(p.ring());
    for (_, c) in &coeffs {
        cont = gcd_inner(&cont, c);
        if cont.is_one() {
            break;
        }
    }
    let cont = cont.normalize(MonomialOrder::GrevLex);
    let prim = p.div_exact(&cont).expect("content divides");
    (cont, prim)
}

/// Primitive-PRS Euclid in `var` over the coefficient UFD.
fn primitive_euclid(mut a: Poly, mut b: Poly, var: usize) -> Poly {
    loop {
        if b.is_zero() {
            let (_, prim) = content_and_primitive(&a, var);
            return prim;
        }
        if b.degree_in(var) == 0 {
            // nonzero constant in var: primitive parts are coprime in var
            return Poly::one(a.ring());
        }
        if a.degree_in(var) < b.degree_in(var) {
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        let r = pseudo_rem(&a, &b, var);
        let r = if r.is_zero() {
            r
        } else {
            content_and_primitive(&r, var).1
        };
        a = b;
        b = r;
    }
}

/// Pseudo-remainder of `a` by `b` in `var` (fraction-free).
fn pseudo_rem(a: &Poly, b: &Poly, var: usize) -> Poly {
    let db = b.degree_in(var);
    let lb = leading_coeff_in(b, var);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lr = leading_coeff_in(&r, var);
        let mut shift = Monomial::one(r.ring().nvars());
        shift.0[var] = dr - db;
        // r := lb*r - lr * x^(dr-db) * b
        r = r.mul(&lb).sub(&b.mul(&lr).mul_term(&shift, &r.ring().field().one()));
    }
    r
}

/// Leading coefficient of `p` seen as a polynomial in `var` (a poly in the
/// remaining variables, kept in the full ring).
fn leading_coeff_in(p: &Poly, var: usize) -> Poly {
    let d = p.degree_in(var);
    let mut out = Poly::zero(p.ring());
    for (m, c) in p.terms() {
        if m.0[var] == d {
            let mut stripped = m.clone();
            stripped.0[var] = 0;
            out = out.add(&Poly::from_terms(p.ring(), vec![(stripped, c.clone())]));
        }
    }
    out
}

/// Cancel the full multivariate gcd from a fraction `f/g` and make the
/// denominator monic. The reduced pair has no common factor, in particular
/// no common base-ring factor divides both contents.
pub fn reduce_rational(f: &Poly, g: &Poly) -> Result<(Poly, Poly)> {
    f.checked_binop(g)?;
    if g.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if f.is_zero() {
        return Ok((Poly::zero(f.ring()), Poly::one(f.ring())));
    }
    let h = poly_gcd(f, g)?;
    let f0 = f.div_exact(&h).expect("gcd divides");
    let g0 = g.div_exact(&h).expect("gcd divides");
    let lc = g0
        .leading(MonomialOrder::GrevLex)
        .map(|(_, c)| c.clone())
        .unwrap();
    let inv = f.ring().field().inv(&lc)?;
    Ok((f0.scale(&inv), g0.scale(&inv)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn ring_xy() -> Ring {
        Ring::new(FieldSpec::Rationals, vec!["X".into(), "Y".into()])
    }

    fn ring_xyz() -> Ring {
        Ring::new(
            FieldSpec::Rationals,
            vec!["X".into(), "Y".into(), "Z".into()],
        )
    }

    fn p(ring: &Ring, s: &str) -> Poly {
        parse_poly(s, ring).unwrap()
    }

    #[test]
    fn mul_difference_of_squares() {
        let r = ring_xy();
        let prod = p(&r, "X + Y").mul(&p(&r, "X - Y"));
        assert_eq!(prod, p(&r, "X^2 - Y^2"));
    }

    #[test]
    fn mul_mod7() {
        let r = Ring::new(FieldSpec::prime_field(7).unwrap(), vec!["X".into()]);
        let prod = p(&r, "3*X + 4").mul(&p(&r, "5*X"));
        assert_eq!(prod, p(&r, "X^2 + 6*X"));
    }

    /// Brute-force convolution oracle: accumulate coefficients over an
    /// explicit index-pair list, independent of `Poly::mul`'s fold.
    fn convolution_oracle(a: &Poly, b: &Poly) -> Vec<(Monomial, Coeff)> {
        let f = a.ring().field().clone();
        let av: Vec<_> = a.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        let bv: Vec<_> = b.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        let mut acc: Vec<(Monomial, Coeff)> = Vec::new();
        for (ma, ca) in &av {
            for (mb, cb) in &bv {
                let m = ma.mul(mb);
                let c = f.mul(ca, cb);
                match acc.iter_mut().find(|(mm, _)| *mm == m) {
                    Some((_, cc)) => *cc = f.add(cc, &c),
                    None => acc.push((m, c)),
                }
            }
        }
        acc.retain(|(_, c)| !f.is_zero(c));
        acc.sort_by(|x, y| x.0.cmp(&y.0));
        acc
    }

    #[test]
    fn mul_matches_convolution_oracle() {
        let r = ring_xyz();
        let a = p(&r, "X + Y*Z");
        let b = p(&r, "Y + X*Z");
        let prod = a.mul(&b);
        assert_eq!(prod, p(&r, "X*Y + (X^2 + Y^2)*Z + X*Y*Z^2"));
        let oracle = convolution_oracle(&a, &b);
        let got: Vec<_> = prod.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        assert_eq!(got, oracle);
    }

    #[test]
    fn ring_mismatch_rejected() {
        let a = p(&ring_xy(), "X");
        let b = p(&ring_xyz(), "X");
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn gcd_monomials() {
        let r = ring_xy();
        let g = poly_gcd(&p(&r, "X^2*Y"), &p(&r, "X*Y^2")).unwrap();
        assert_eq!(g, p(&r, "X*Y"));
    }

    #[test]
    fn gcd_common_power() {
        let r = ring_xy();
        let g = poly_gcd(&p(&r, "X^2"), &p(&r, "X^2 + X^3")).unwrap();
        assert_eq!(g, p(&r, "X^2"));
    }

    /// 2x2 Sylvester-resultant oracle for linear-in-X inputs: aX+b, cX+d
    /// (a,b,c,d in Q[Y]) are coprime in X over Q(Y) iff ad - bc != 0.
    #[test]
    fn gcd_coprime_by_resultant_oracle() {
        let r = ring_xy();
        let f = p(&r, "X + Y");
        let g = p(&r, "X - Y");
        // res_X = 1*(-Y) - Y*1 = -2Y != 0, and the X-contents are 1
        let res = p(&r, "-2*Y");
        assert!(!res.is_zero());
        let gcd = poly_gcd(&f, &g).unwrap();
        assert!(gcd.is_one());
    }

    #[test]
    fn gcd_divides_both_inputs() {
        let r = ring_xy();
        let f = p(&r, "X^2*Y + X*Y^2").mul(&p(&r, "X - Y"));
        let g = p(&r, "X*Y - Y^2").mul(&p(&r, "X + 3"));
        let d = poly_gcd(&f, &g).unwrap();
        assert!(f.div_exact(&d).is_some());
        assert!(g.div_exact(&d).is_some());
        // common divisor divides the gcd
        let common = p(&r, "X - Y");
        assert!(d.div_exact(&common).is_some());
    }

    #[test]
    fn reduce_rational_cancels() {
        let r = ring_xyz();
        let f = p(&r, "X*Z").mul(&p(&r, "X + Z"));
        let g = p(&r, "X").mul(&p(&r, "X + Z"));
        let (f0, g0) = reduce_rational(&f, &g).unwrap();
        assert_eq!(f0, p(&r, "Z"));
        assert_eq!(g0, p(&r, "1"));

        let (f1, g1) = reduce_rational(
            &p(&r, "Y").mul(&p(&r, "X + Y*Z")),
            &p(&r, "X").mul(&p(&r, "X + Y*Z")),
        )
        .unwrap();
        assert_eq!(f1, p(&r, "Y"));
        assert_eq!(g1, p(&r, "X"));
    }

    #[test]
    fn reduce_rational_gcd_oracle() {
        let r = ring_xyz();
        let (f0, g0) = reduce_rational(&p(&r, "X^2 + X*Y*Z"), &p(&r, "X*Y")).unwrap();
        assert_eq!(f0, p(&r, "X + Y*Z"));
        assert_eq!(g0, p(&r, "Y"));
    }

    #[test]
    fn display_round_trip() {
        let r = ring_xyz();
        for s in ["3*X^2*Y - 1/2*Z + 5", "X*Y + Y^2*Z^3", "-X + 2"] {
            let q = p(&r, s);
            let printed = q.to_string();
            assert_eq!(parse_poly(&printed, &r).unwrap(), q);
        }
    }
}
