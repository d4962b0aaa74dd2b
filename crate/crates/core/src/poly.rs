use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use crate::error::MathError;
use crate::scalar::Scalar;

/// Indeterminates. The reserved ones are `d` (the derivation), `l` and `m`
/// (the two bracket variables), `l1..l3` (cochain arguments) and `x`.
/// Everything else (parameters, unknown coefficients) is a `Sym`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    D,
    L,
    M,
    L1,
    L2,
    L3,
    X,
    Sym(Arc<str>),
}

impl Var {
    pub fn sym(name: &str) -> Var {
        Var::Sym(Arc::from(name))
    }

    pub fn reserved(name: &str) -> Option<Var> {
        Some(match name {
            "d" => Var::D,
            "l" => Var::L,
            "m" => Var::M,
            "l1" => Var::L1,
            "l2" => Var::L2,
            "l3" => Var::L3,
            "x" => Var::X,
            _ => return None,
        })
    }

    pub fn name(&self) -> &str {
        match self {
            Var::D => "d",
            Var::L => "l",
            Var::M => "m",
            Var::L1 => "l1",
            Var::L2 => "l2",
            Var::L3 => "l3",
            Var::X => "x",
            Var::Sym(s) => s,
        }
    }

    pub fn is_sym(&self) -> bool {
        matches!(self, Var::Sym(_))
    }

    // printing priority: symbols, then bracket variables, derivation last
    fn rank(&self) -> u8 {
        match self {
            Var::Sym(_) => 0,
            Var::L => 1,
            Var::L1 => 2,
            Var::L2 => 3,
            Var::L3 => 4,
            Var::M => 5,
            Var::X => 6,
            Var::D => 7,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A power product, stored sorted by variable with no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn from_pairs(mut pairs: Vec<(Var, u32)>) -> Self {
        pairs.retain(|(_, e)| *e > 0);
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match out.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exp(&self, v: &Var) -> u32 {
        self.0.iter().find(|(w, _)| w == v).map_or(0, |(_, e)| *e)
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &o.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Splits into (part in `vars`, remainder).
    pub fn split(&self, vars: &[Var]) -> (Monomial, Monomial) {
        let mut inside = Vec::new();
        let mut rest = Vec::new();
        for f in &self.0 {
            if vars.contains(&f.0) {
                inside.push(f.clone());
            } else {
                rest.push(f.clone());
            }
        }
        (Monomial(inside), Monomial(rest))
    }

    fn display_cmp(&self, o: &Monomial) -> Ordering {
        o.degree().cmp(&self.degree()).then_with(|| {
            let key = |m: &Monomial| {
                let mut k: Vec<(u8, Var, u32)> =
                    m.0.iter().map(|(v, e)| (v.rank(), v.clone(), *e)).collect();
                k.sort();
                k
            };
            let (ka, kb) = (key(self), key(o));
            for (x, y) in ka.iter().zip(kb.iter()) {
                let c = (x.0, &x.1).cmp(&(y.0, &y.1));
                if c != Ordering::Equal {
                    return c;
                }
                let c = y.2.cmp(&x.2);
                if c != Ordering::Equal {
                    return c;
                }
            }
            kb.len().cmp(&ka.len())
        })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut fs: Vec<&(Var, u32)> = self.0.iter().collect();
        fs.sort_by(|a, b| (a.0.rank(), &a.0).cmp(&(b.0.rank(), &b.0)));
        let parts: Vec<String> = fs
            .iter()
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

pub type Bindings = BTreeMap<Var, MultiPoly>;

/// Sparse multivariate polynomial with exact coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Scalar::int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Scalar::one(), Monomial::var(v, 1))
    }

    pub fn sym(name: &str) -> Self {
        Self::var(Var::sym(name))
    }

    pub fn term(c: Scalar, m: Monomial) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn d() -> Self {
        Self::var(Var::D)
    }

    pub fn l() -> Self {
        Self::var(Var::L)
    }

    pub fn m() -> Self {
        Self::var(Var::M)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Scalar)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, c: &Scalar, mono: &Monomial) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, a)| (m.mul(mono), a * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Total degree counting only the listed variables.
    pub fn degree_among(&self, vars: &[Var]) -> Option<u32> {
        self.terms.keys().map(|m| m.split(vars).0.degree()).max()
    }

    pub fn degree_in(&self, v: &Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|(v, _)| v.clone())).collect()
    }

    pub fn contains_var(&self, v: &Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    /// Simultaneous substitution; unbound variables are left alone.
    pub fn substitute(&self, bind: &Bindings) -> MultiPoly {
        if bind.is_empty() {
            return self.clone();
        }
        let mut cache: HashMap<(Var, u32), MultiPoly> = HashMap::new();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = MultiPoly::constant(c.clone());
            for (v, e) in &m.0 {
                match bind.get(v) {
                    Some(p) => {
                        let pw = cache
                            .entry((v.clone(), *e))
                            .or_insert_with(|| p.pow(*e))
                            .clone();
                        factor = &factor * &pw;
                    }
                    None => kept.push((v.clone(), *e)),
                }
            }
            out += &factor.mul_monomial(&Scalar::one(), &Monomial(kept));
        }
        out
    }

    pub fn subs(&self, v: Var, p: &MultiPoly) -> MultiPoly {
        let mut b = Bindings::new();
        b.insert(v, p.clone());
        self.substitute(&b)
    }

    /// Substitution keyed by variable names; a name that is neither reserved
    /// nor occurring in `self` is rejected.
    pub fn substitute_named(&self, bind: &[(&str, MultiPoly)]) -> Result<MultiPoly, MathError> {
        let present = self.vars();
        let mut b = Bindings::new();
        for (name, p) in bind {
            let v = match Var::reserved(name) {
                Some(v) => v,
                None => {
                    let v = Var::sym(name);
                    if !present.contains(&v) {
                        return Err(MathError::UnknownIndeterminate(name.to_string()));
                    }
                    v
                }
            };
            b.insert(v, p.clone());
        }
        Ok(self.substitute(&b))
    }

    /// Reduction modulo `d + l_1 + ... + l_n`: replaces `d` by `-(l_1 + ... + l_n)`.
    pub fn eliminate_partial(&self, lambda_vars: &[Var]) -> Result<MultiPoly, MathError> {
        if lambda_vars.is_empty() {
            return Err(MathError::EmptyLambdaVars);
        }
        let mut s = MultiPoly::zero();
        for v in lambda_vars {
            s -= &MultiPoly::var(v.clone());
        }
        Ok(self.subs(Var::D, &s))
    }

    /// Coefficients with respect to the monomials in `vars`; the values are
    /// polynomials in the remaining variables.
    pub fn coefficients(&self, vars: &[Var]) -> BTreeMap<Monomial, MultiPoly> {
        let mut out: BTreeMap<Monomial, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (inside, rest) = m.split(vars);
            out.entry(inside).or_default().add_term(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Writes `self = sum_u coef_u * u + rest` for the given unknowns, failing
    /// if any term is nonlinear in them.
    pub fn linear_parts(
        &self,
        unknowns: &BTreeSet<Var>,
    ) -> Result<(BTreeMap<Var, MultiPoly>, MultiPoly), MathError> {
        let mut lin: BTreeMap<Var, MultiPoly> = BTreeMap::new();
        let mut rest = MultiPoly::zero();
        for (m, c) in &self.terms {
            let hits: Vec<&(Var, u32)> = m.0.iter().filter(|(v, _)| unknowns.contains(v)).collect();
            match hits.as_slice() {
                [] => rest.add_term(m.clone(), c.clone()),
                [(u, 1)] => {
                    let others: Vec<(Var, u32)> =
                        m.0.iter().filter(|(v, _)| v != u).cloned().collect();
                    lin.entry(u.clone()).or_default().add_term(Monomial(others), c.clone());
                }
                _ => return Err(MathError::NonLinear(format!("{m}"))),
            }
        }
        lin.retain(|_, p| !p.is_zero());
        Ok((lin, rest))
    }

    pub fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Homogeneous component of the given total degree in `vars`.
    pub fn homogeneous_part(&self, vars: &[Var], deg: u32) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            if m.split(vars).0.degree() == deg {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Leading coefficient under the display order, used for normalising
    /// representatives.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().min_by(|a, b| a.0.display_cmp(b.0))
    }

    pub fn monic(&self) -> MultiPoly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.recip().unwrap()),
            None => MultiPoly::zero(),
        }
    }
}

impl From<Scalar> for MultiPoly {
    fn from(c: Scalar) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<i64> for MultiPoly {
    fn from(n: i64) -> Self {
        MultiPoly::int(n)
    }
}

impl From<Var> for MultiPoly {
    fn from(v: Var) -> Self {
        MultiPoly::var(v)
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, o: &MultiPoly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, o: &MultiPoly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl AddAssign<MultiPoly> for MultiPoly {
    fn add_assign(&mut self, o: MultiPoly) {
        if self.terms.is_empty() {
            *self = o;
            return;
        }
        for (m, c) in o.terms {
            self.add_term(m, c);
        }
    }
}

impl SubAssign<MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, o: MultiPoly) {
        for (m, c) in o.terms {
            self.add_term(m, -c);
        }
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

macro_rules! forward_poly {
    ($tr:ident, $m:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: MultiPoly) -> MultiPoly {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: &MultiPoly) -> MultiPoly {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<MultiPoly> for &'a MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: MultiPoly) -> MultiPoly {
                self.$m(&o)
            }
        }
    };
}
forward_poly!(Add, add);
forward_poly!(Sub, sub);
forward_poly!(Mul, mul);

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut ts: Vec<(&Monomial, &Scalar)> = self.terms.iter().collect();
        ts.sort_by(|a, b| a.0.display_cmp(b.0));
        let mut out = String::new();
        for (i, (m, c)) in ts.iter().enumerate() {
            let (neg, mag) = if c.is_rational() && c.signum() < 0 { (true, -*c) } else { (false, (*c).clone()) };
            let coef = if mag.is_rational() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            let body = if m.is_one() {
                coef
            } else if mag.is_one() {
                m.to_string()
            } else {
                format!("{coef}*{m}")
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Generic polynomial `sum c_{ij} l^i d^j` over total degrees `lo..=hi`, with
/// fresh symbolic coefficients named `{prefix}_{i}_{j}`.
pub fn ansatz(prefix: &str, x: Var, y: Var, lo: u32, hi: u32) -> (MultiPoly, Vec<Var>) {
    let mut p = MultiPoly::zero();
    let mut unknowns = Vec::new();
    for deg in lo..=hi {
        for j in 0..=deg {
            let i = deg - j;
            let u = Var::sym(&format!("{prefix}_{i}_{j}"));
            p.add_term(
                Monomial::from_pairs(vec![(x.clone(), i), (y.clone(), j), (u.clone(), 1)]),
                Scalar::one(),
            );
            unknowns.push(u);
        }
    }
    (p, unknowns)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l() -> MultiPoly {
        MultiPoly::l()
    }
    fn d() -> MultiPoly {
        MultiPoly::d()
    }

    #[test]
    fn basic_identities() {
        assert_eq!(&(&l() + &d()) + &(&l() - &d()), l().scale(&Scalar::int(2)));
        let s = &l() + &d();
        assert_eq!((&s * &s).to_string(), "l^2 + 2*l*d + d^2");
        assert_eq!((&l().scale(&Scalar::int(2)) + &d()).scale(&Scalar::int(-1)).to_string(), "-2*l - d");
    }

    #[test]
    fn skew_substitution() {
        let p = &d() + &l().scale(&Scalar::int(2));
        let q = p.subs(Var::L, &(-&l() - &d()));
        assert_eq!(q.to_string(), "-2*l - d");
        let lm = &l() * &MultiPoly::m();
        assert_eq!(lm.subs(Var::M, &(&l() + &d())).to_string(), "l^2 + l*d");
        assert_eq!(p.substitute(&Bindings::new()), p);
    }

    #[test]
    fn elimination() {
        let (l1, l2) = (MultiPoly::var(Var::L1), MultiPoly::var(Var::L2));
        let vs = [Var::L1, Var::L2];
        assert!((&(&d() + &l1) + &l2).eliminate_partial(&vs).unwrap().is_zero());
        assert_eq!((&l1 * &d()).eliminate_partial(&vs).unwrap().to_string(), "-l1^2 - l1*l2");
        let b = MultiPoly::sym("b");
        assert_eq!((&b * &l1).eliminate_partial(&vs).unwrap(), &b * &l1);
        assert_eq!(d().eliminate_partial(&[]), Err(MathError::EmptyLambdaVars));
    }

    #[test]
    fn named_substitution_rejects_strangers() {
        let p = &l() + &MultiPoly::sym("a");
        assert!(p.substitute_named(&[("a", MultiPoly::int(3))]).is_ok());
        assert!(p.substitute_named(&[("zz", MultiPoly::int(3))]).is_err());
    }

    #[test]
    fn linear_split() {
        let u = Var::sym("u");
        let p = &(&MultiPoly::var(u.clone()) * &l()) + &MultiPoly::int(4);
        let set: BTreeSet<Var> = [u.clone()].into_iter().collect();
        let (lin, rest) = p.linear_parts(&set).unwrap();
        assert_eq!(lin[&u], l());
        assert_eq!(rest, MultiPoly::int(4));
        let sq = &MultiPoly::var(u.clone()) * &MultiPoly::var(u);
        assert!(sq.linear_parts(&set).is_err());
    }
}
