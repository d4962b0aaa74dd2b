use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Bindings, MultiPoly, Var};
use crate::scalar::Scalar;

/// A free generator: a name (`L`, `J`, `v`), a member `J_i` of an indexed
/// family, or `J^n_{e_pq}` for the matrix-unit families.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    Index(i64),
    Unit { power: i64, row: u32, col: u32 },
    Named(Arc<str>),
}

impl Gen {
    pub fn named(s: &str) -> Gen {
        Gen::Named(Arc::from(s))
    }

    /// Position in the indexed family, if any; used for truncation.
    pub fn level(&self) -> Option<i64> {
        match self {
            Gen::Index(i) => Some(*i),
            Gen::Unit { power, .. } => Some(*power),
            Gen::Named(_) => None,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Named(s) => f.write_str(s),
            Gen::Index(i) => write!(f, "J[{i}]"),
            Gen::Unit { power, row, col } => write!(f, "J[{power};{row},{col}]"),
        }
    }
}

impl fmt::Debug for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Finite sum `sum_g p_g * g`. With coefficients in `d` alone this is an
/// element of the algebra; with `l` (and `m`) present it is a bracket value.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LinComb {
    terms: BTreeMap<Gen, MultiPoly>,
}

pub type Element = LinComb;
pub type LambdaExpr = LinComb;

impl LinComb {
    pub fn zero() -> Self {
        LinComb { terms: BTreeMap::new() }
    }

    pub fn gen(g: Gen) -> Self {
        Self::term(MultiPoly::one(), g)
    }

    pub fn term(p: MultiPoly, g: Gen) -> Self {
        let mut s = Self::zero();
        s.add_term(g, p);
        s
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Gen, MultiPoly)>) -> Self {
        let mut s = Self::zero();
        for (g, p) in it {
            s.add_term(g, p);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Gen, &MultiPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, g: &Gen) -> MultiPoly {
        self.terms.get(g).cloned().unwrap_or_default()
    }

    pub fn gens(&self) -> impl Iterator<Item = &Gen> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, g: Gen, p: MultiPoly) {
        if p.is_zero() {
            return;
        }
        let e = self.terms.entry(g.clone()).or_default();
        *e += p;
        if e.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn add(&self, o: &LinComb) -> LinComb {
        let mut r = self.clone();
        for (g, p) in &o.terms {
            r.add_term(g.clone(), p.clone());
        }
        r
    }

    pub fn sub(&self, o: &LinComb) -> LinComb {
        let mut r = self.clone();
        for (g, p) in &o.terms {
            r.add_term(g.clone(), -p);
        }
        r
    }

    pub fn scale(&self, c: &Scalar) -> LinComb {
        self.mul_poly(&MultiPoly::constant(c.clone()))
    }

    pub fn mul_poly(&self, q: &MultiPoly) -> LinComb {
        LinComb::from_terms(self.terms.iter().map(|(g, p)| (g.clone(), p * q)))
    }

    pub fn neg(&self) -> LinComb {
        self.scale(&Scalar::int(-1))
    }

    pub fn substitute(&self, b: &Bindings) -> LinComb {
        LinComb::from_terms(self.terms.iter().map(|(g, p)| (g.clone(), p.substitute(b))))
    }

    pub fn subs(&self, v: Var, q: &MultiPoly) -> LinComb {
        LinComb::from_terms(self.terms.iter().map(|(g, p)| (g.clone(), p.subs(v.clone(), q))))
    }

    pub fn map_coeffs(&self, f: impl Fn(&Gen, &MultiPoly) -> MultiPoly) -> LinComb {
        LinComb::from_terms(self.terms.iter().map(|(g, p)| (g.clone(), f(g, p))))
    }

    /// Applies a linear substitution of generators: each `g` is replaced by
    /// `image(g)` (coefficients in `d`), with `d` acting by left multiplication.
    pub fn rewrite(&self, image: &BTreeMap<Gen, LinComb>) -> LinComb {
        let mut out = LinComb::zero();
        for (g, p) in &self.terms {
            match image.get(g) {
                Some(img) => out = out.add(&img.mul_poly(p)),
                None => out.add_term(g.clone(), p.clone()),
            }
        }
        out
    }
}

impl fmt::Display for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(g, p)| {
                if p.as_constant().is_some_and(|c| c.is_one()) {
                    g.to_string()
                } else if p.len() == 1 {
                    format!("{p} {g}")
                } else {
                    format!("({p}) {g}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Outcome of an axiom check. A failure carries the full residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Pass,
    Witness(LinComb),
}

impl Check {
    pub fn from_residual(r: LinComb) -> Check {
        if r.is_zero() {
            Check::Pass
        } else {
            Check::Witness(r)
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Check::Pass)
    }

    pub fn witness(&self) -> Option<&LinComb> {
        match self {
            Check::Pass => None,
            Check::Witness(w) => Some(w),
        }
    }
}

/// A free `C[d]`-module on `gens` with the structure brackets of generator
/// pairs stored as polynomials in `l` and `d`.
///
/// For indexed families only the pairs whose level sum is within the
/// truncation bound are present; asking for any other pair is reported as
/// `OutOfBound` rather than as an axiom failure.
#[derive(Clone)]
pub struct ConformalAlgebra {
    pub name: String,
    gens: Vec<Gen>,
    table: BTreeMap<(Gen, Gen), LinComb>,
    truncation: Option<i64>,
    params: BTreeMap<String, Scalar>,
}

impl PartialEq for ConformalAlgebra {
    fn eq(&self, o: &Self) -> bool {
        self.gens == o.gens && self.table == o.table && self.truncation == o.truncation
    }
}

impl fmt::Debug for ConformalAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algebra {} {{", self.name)?;
        for ((x, y), v) in &self.table {
            writeln!(f, "  [{x} _ {y}] = {v}")?;
        }
        write!(f, "}}")
    }
}

impl ConformalAlgebra {
    pub fn new(name: &str, gens: Vec<Gen>, truncation: Option<i64>) -> Self {
        let mut gens = gens;
        gens.sort();
        gens.dedup();
        ConformalAlgebra {
            name: name.to_string(),
            gens,
            table: BTreeMap::new(),
            truncation,
            params: BTreeMap::new(),
        }
    }

    pub fn with_param(mut self, k: &str, v: Scalar) -> Self {
        self.params.insert(k.to_string(), v);
        self
    }

    pub fn params(&self) -> &BTreeMap<String, Scalar> {
        &self.params
    }

    pub fn gens(&self) -> &[Gen] {
        &self.gens
    }

    pub fn truncation(&self) -> Option<i64> {
        self.truncation
    }

    pub fn has_gen(&self, g: &Gen) -> bool {
        self.gens.binary_search(g).is_ok()
    }

    /// Whether the pair is inside the truncation bound.
    pub fn pair_in_bound(&self, x: &Gen, y: &Gen) -> bool {
        match (self.truncation, x.level(), y.level()) {
            (Some(n), Some(i), Some(j)) => i + j <= n,
            _ => true,
        }
    }

    pub fn triple_in_bound(&self, x: &Gen, y: &Gen, z: &Gen) -> bool {
        if !(self.pair_in_bound(x, y) && self.pair_in_bound(x, z) && self.pair_in_bound(y, z)) {
            return false;
        }
        match (self.truncation, x.level(), y.level(), z.level()) {
            (Some(n), Some(i), Some(j), Some(k)) => i + j + k <= n,
            _ => true,
        }
    }

    pub fn set_bracket(&mut self, x: Gen, y: Gen, v: LinComb) {
        self.table.insert((x, y), v);
    }

    pub fn remove_bracket(&mut self, x: &Gen, y: &Gen) {
        self.table.remove(&(x.clone(), y.clone()));
    }

    pub fn table(&self) -> &BTreeMap<(Gen, Gen), LinComb> {
        &self.table
    }

    pub fn pairs(&self) -> impl Iterator<Item = &(Gen, Gen)> {
        self.table.keys()
    }

    /// Fills in `[y _ x]` from `[x _ y]` by skew-symmetry wherever only one
    /// order is present.
    pub fn skew_complete(&mut self) {
        let missing: Vec<((Gen, Gen), LinComb)> = self
            .table
            .iter()
            .filter(|((x, y), _)| !self.table.contains_key(&(y.clone(), x.clone())))
            .map(|((x, y), v)| ((y.clone(), x.clone()), skew_image(v)))
            .collect();
        self.table.extend(missing);
    }

    pub fn rule(&self, x: &Gen, y: &Gen) -> Result<&LinComb> {
        if let Some(v) = self.table.get(&(x.clone(), y.clone())) {
            return Ok(v);
        }
        for g in [x, y] {
            if !self.has_gen(g) {
                return Err(Error::UnknownGenerator(g.clone()));
            }
        }
        Err(Error::OutOfBound(x.clone(), y.clone()))
    }

    /// `[x_nu y]` for arbitrary elements, by sesquilinearity: a coefficient
    /// `p(d)` on the left becomes `p(-nu)`, one on the right becomes
    /// `q(d + nu)`, and the structure polynomial is evaluated at `l = nu`.
    pub fn bracket_at(&self, x: &LinComb, y: &LinComb, nu: &MultiPoly) -> Result<LinComb> {
        let mut out = LinComb::zero();
        let left: Bindings = [(Var::D, -nu)].into_iter().collect();
        let right: Bindings = [(Var::D, &MultiPoly::d() + nu)].into_iter().collect();
        let at: Bindings = [(Var::L, nu.clone())].into_iter().collect();
        for (a, p) in x.terms() {
            let pa = p.substitute(&left);
            for (b, q) in y.terms() {
                let qb = q.substitute(&right);
                let pq = &pa * &qb;
                for (w, r) in self.rule(a, b)?.terms() {
                    out.add_term(w.clone(), &pq * &r.substitute(&at));
                }
            }
        }
        Ok(out)
    }

    pub fn bracket(&self, x: &LinComb, y: &LinComb) -> Result<LinComb> {
        self.bracket_at(x, y, &MultiPoly::l())
    }

    pub fn bracket_gens(&self, x: &Gen, y: &Gen) -> Result<LinComb> {
        self.rule(x, y).cloned()
    }

    /// Residual `[x_l y] + [y_{-l-d} x]`.
    pub fn check_skew(&self, x: &Gen, y: &Gen) -> Result<Check> {
        let a = self.rule(x, y)?;
        let b = self.rule(y, x)?;
        Ok(Check::from_residual(a.sub(&skew_image(b))))
    }

    /// Residual `[x_l [y_m z]] - [[x_l y]_{l+m} z] - [y_m [x_l z]]`.
    pub fn jacobi_residual(&self, x: &Gen, y: &Gen, z: &Gen) -> Result<LinComb> {
        let (gx, gy, gz) = (LinComb::gen(x.clone()), LinComb::gen(y.clone()), LinComb::gen(z.clone()));
        let (l, m) = (MultiPoly::l(), MultiPoly::m());
        let lhs = self.bracket_at(&gx, &self.bracket_at(&gy, &gz, &m)?, &l)?;
        let r1 = self.bracket_at(&self.bracket_at(&gx, &gy, &l)?, &gz, &(&l + &m))?;
        let r2 = self.bracket_at(&gy, &self.bracket_at(&gx, &gz, &l)?, &m)?;
        Ok(lhs.sub(&r1).sub(&r2))
    }

    pub fn check_jacobi(&self, x: &Gen, y: &Gen, z: &Gen) -> Result<Check> {
        self.jacobi_residual(x, y, z).map(Check::from_residual)
    }

    /// Applies `f` to every structure polynomial.
    pub fn map_table(&self, f: impl Fn(&Gen, &Gen, &LinComb) -> LinComb) -> ConformalAlgebra {
        let mut out = self.clone();
        out.table = self
            .table
            .iter()
            .map(|((x, y), v)| ((x.clone(), y.clone()), f(x, y, v)))
            .collect();
        out
    }

    /// Substitutes values for symbolic parameters in every structure polynomial.
    pub fn specialize(&self, b: &Bindings) -> ConformalAlgebra {
        self.map_table(|_, _, v| v.substitute(b))
    }

    /// All ordered generator pairs that are inside the bound.
    pub fn in_bound_pairs(&self) -> Vec<(Gen, Gen)> {
        let mut v = Vec::new();
        for x in &self.gens {
            for y in &self.gens {
                if self.pair_in_bound(x, y) {
                    v.push((x.clone(), y.clone()));
                }
            }
        }
        v
    }

    pub fn in_bound_triples(&self) -> Vec<(Gen, Gen, Gen)> {
        let mut v = Vec::new();
        for x in &self.gens {
            for y in &self.gens {
                for z in &self.gens {
                    if self.triple_in_bound(x, y, z) {
                        v.push((x.clone(), y.clone(), z.clone()));
                    }
                }
            }
        }
        v
    }

    /// Every generator referenced by an output lies in the generator set.
    pub fn check_closed(&self) -> Result<()> {
        for v in self.table.values() {
            for g in v.gens() {
                if !self.has_gen(g) {
                    return Err(Error::UnknownGenerator(g.clone()));
                }
            }
        }
        Ok(())
    }
}

/// `v(l, d) -> -v(-l - d, d)`, the value forced on the opposite order.
pub fn skew_image(v: &LinComb) -> LinComb {
    let flip = -&MultiPoly::l() - &MultiPoly::d();
    v.subs(Var::L, &flip).neg()
}

/// Result of sweeping every in-bound pair and triple.
#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub skew_checked: usize,
    pub jacobi_checked: usize,
    pub out_of_bound: usize,
    pub skew_failures: Vec<((Gen, Gen), LinComb)>,
    pub jacobi_failures: Vec<((Gen, Gen, Gen), LinComb)>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.skew_failures.is_empty() && self.jacobi_failures.is_empty()
    }
}

pub fn axiom_sweep(alg: &ConformalAlgebra) -> AxiomReport {
    use rayon::prelude::*;
    let mut rep = AxiomReport::default();
    for (x, y) in alg.in_bound_pairs() {
        match alg.check_skew(&x, &y) {
            Ok(Check::Pass) => rep.skew_checked += 1,
            Ok(Check::Witness(w)) => {
                rep.skew_checked += 1;
                rep.skew_failures.push(((x, y), w));
            }
            Err(_) => rep.out_of_bound += 1,
        }
    }
    let triples = alg.in_bound_triples();
    let results: Vec<_> = triples
        .par_iter()
        .map(|(x, y, z)| ((x.clone(), y.clone(), z.clone()), alg.jacobi_residual(x, y, z)))
        .collect();
    for (t, r) in results {
        match r {
            Ok(w) => {
                rep.jacobi_checked += 1;
                if !w.is_zero() {
                    rep.jacobi_failures.push((t, w));
                }
            }
            Err(_) => rep.out_of_bound += 1,
        }
    }
    rep
}

/// A module over a conformal algebra, free over `C[d]` except for the basis
/// vectors listed in `torsion`, on which `d` acts as the given scalar.
#[derive(Clone, Debug, PartialEq)]
pub struct ConformalModule {
    basis: Vec<Gen>,
    action: BTreeMap<(Gen, Gen), LinComb>,
    torsion: BTreeMap<Gen, Scalar>,
}

impl ConformalModule {
    pub fn new(basis: Vec<Gen>) -> Self {
        ConformalModule { basis, action: BTreeMap::new(), torsion: BTreeMap::new() }
    }

    pub fn basis(&self) -> &[Gen] {
        &self.basis
    }

    pub fn set_action(&mut self, x: Gen, v: Gen, val: LinComb) {
        self.action.insert((x, v), val);
    }

    pub fn set_torsion(&mut self, v: Gen, alpha: Scalar) {
        self.torsion.insert(v, alpha);
    }

    pub fn torsion(&self) -> &BTreeMap<Gen, Scalar> {
        &self.torsion
    }

    pub fn action_rule(&self, x: &Gen, v: &Gen) -> Result<LinComb> {
        match self.action.get(&(x.clone(), v.clone())) {
            Some(a) => Ok(a.clone()),
            None if self.basis.contains(v) => Ok(LinComb::zero()),
            None => Err(Error::MissingAction(x.clone(), v.clone())),
        }
    }

    /// On torsion vectors `d` is a scalar, so coefficients collapse.
    pub fn normalize(&self, w: &LinComb) -> LinComb {
        if self.torsion.is_empty() {
            return w.clone();
        }
        w.map_coeffs(|g, p| match self.torsion.get(g) {
            Some(a) => p.subs(Var::D, &MultiPoly::constant(a.clone())),
            None => p.clone(),
        })
    }

    /// `x_nu w` for an algebra element `x` and a module element `w`.
    pub fn act_at(&self, x: &LinComb, w: &LinComb, nu: &MultiPoly) -> Result<LinComb> {
        let w = self.normalize(w);
        let mut out = LinComb::zero();
        let left: Bindings = [(Var::D, -nu)].into_iter().collect();
        let right: Bindings = [(Var::D, &MultiPoly::d() + nu)].into_iter().collect();
        let at: Bindings = [(Var::L, nu.clone())].into_iter().collect();
        for (a, p) in x.terms() {
            let pa = p.substitute(&left);
            for (b, q) in w.terms() {
                let qb = q.substitute(&right);
                let pq = &pa * &qb;
                for (u, r) in self.action_rule(a, b)?.terms() {
                    out.add_term(u.clone(), &pq * &r.substitute(&at));
                }
            }
        }
        Ok(self.normalize(&out))
    }

    /// Residual `[x_l y]_{l+m} v - x_l (y_m v) + y_m (x_l v)`.
    pub fn module_residual(&self, alg: &ConformalAlgebra, x: &Gen, y: &Gen, v: &Gen) -> Result<LinComb> {
        let (gx, gy, gv) = (LinComb::gen(x.clone()), LinComb::gen(y.clone()), LinComb::gen(v.clone()));
        let (l, m) = (MultiPoly::l(), MultiPoly::m());
        let lhs = self.act_at(&alg.bracket_at(&gx, &gy, &l)?, &gv, &(&l + &m))?;
        let r1 = self.act_at(&gx, &self.act_at(&gy, &gv, &m)?, &l)?;
        let r2 = self.act_at(&gy, &self.act_at(&gx, &gv, &l)?, &m)?;
        Ok(lhs.sub(&r1).add(&r2))
    }

    pub fn check_module(&self, alg: &ConformalAlgebra, x: &Gen, y: &Gen, v: &Gen) -> Result<Check> {
        self.module_residual(alg, x, y, v).map(Check::from_residual)
    }

    /// Checks the module axiom on all in-bound algebra pairs and basis vectors.
    pub fn check_all(&self, alg: &ConformalAlgebra) -> Result<Vec<((Gen, Gen, Gen), LinComb)>> {
        let mut fails = Vec::new();
        for (x, y) in alg.in_bound_pairs() {
            for v in &self.basis {
                let r = self.module_residual(alg, &x, &y, v)?;
                if !r.is_zero() {
                    fails.push(((x.clone(), y.clone(), v.clone()), r));
                }
            }
        }
        Ok(fails)
    }

    pub fn substitute(&self, b: &Bindings) -> ConformalModule {
        let mut m = self.clone();
        for v in m.action.values_mut() {
            *v = v.substitute(b);
        }
        m
    }
}

/// Free variables (parameters) appearing anywhere in a table.
pub fn table_symbols(alg: &ConformalAlgebra) -> BTreeSet<Var> {
    let mut s = BTreeSet::new();
    for v in alg.table.values() {
        for (_, p) in v.terms() {
            s.extend(p.vars().into_iter().filter(Var::is_sym));
        }
    }
    s
}
