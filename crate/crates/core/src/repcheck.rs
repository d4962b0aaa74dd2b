use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::algebra::{ConformalAlgebra, ConformalModule, Gen, LinComb};
use crate::error::{Error, Result};
use crate::linsolve::{coefficient_equations, scalar_matrix_row, solve_linear};
use crate::matrix::{ExactMatrix, SolutionSpace};
use crate::poly::{Bindings, Monomial, MultiPoly, Var};
use crate::scalar::Scalar;
use crate::zoo;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompositionFactor {
    /// `M_{delta, alpha}`; `delta` must be nonzero.
    Free { delta: Scalar, alpha: Scalar },
    /// `C_alpha`: zero lambda-action, `d` acting as `alpha`.
    Trivial { alpha: Scalar },
}

impl CompositionFactor {
    pub fn free(delta: Scalar, alpha: Scalar) -> Self {
        CompositionFactor::Free { delta, alpha }
    }

    pub fn trivial(alpha: Scalar) -> Self {
        CompositionFactor::Trivial { alpha }
    }

    fn validate(&self) -> Result<()> {
        match self {
            CompositionFactor::Free { delta, .. } if delta.is_zero() => Err(Error::ZeroWeightFreeFactor),
            _ => Ok(()),
        }
    }

    fn is_free(&self) -> bool {
        matches!(self, CompositionFactor::Free { .. })
    }

    fn parts(&self) -> (MultiPoly, MultiPoly) {
        match self {
            CompositionFactor::Free { delta, alpha } => (MultiPoly::constant(delta.clone()), MultiPoly::constant(alpha.clone())),
            CompositionFactor::Trivial { alpha } => (MultiPoly::zero(), MultiPoly::constant(alpha.clone())),
        }
    }
}

/// Kernel of one of the four composition-series functional equations.
#[derive(Clone, Debug)]
pub struct CaseSolution {
    pub case: u8,
    pub i: i64,
    pub ansatz: MultiPoly,
    pub unknowns: Vec<Var>,
    pub space: SolutionSpace,
}

impl CaseSolution {
    pub fn is_trivial(&self) -> bool {
        self.space.is_zero()
    }

    pub fn basis(&self) -> Vec<MultiPoly> {
        self.space
            .basis
            .iter()
            .map(|v| {
                let b: Bindings = self.unknowns.iter().cloned().zip(v.iter().map(|s| MultiPoly::constant(s.clone()))).collect();
                self.ansatz.substitute(&b)
            })
            .collect()
    }
}

fn action_ansatz(two_vars: bool, degree: u32) -> (MultiPoly, Vec<Var>) {
    let mut p = MultiPoly::zero();
    let mut vs = Vec::new();
    for a in 0..=degree {
        let top_b = if two_vars { degree - a } else { 0 };
        for b in 0..=top_b {
            let u = Var::sym(&format!("p_{a}_{b}"));
            p.add_term(Monomial::from_pairs(vec![(Var::L, a), (Var::D, b), (u.clone(), 1)]), Scalar::one());
            vs.push(u);
        }
    }
    (p, vs)
}

fn shift(v: Var, by: MultiPoly) -> Bindings {
    let s = &MultiPoly::var(v.clone()) + &by;
    [(v, s)].into_iter().collect()
}

/// The functional equation of the given case applied to `p`.
pub fn case_equation(case: u8, i: i64, source: &CompositionFactor, target: &CompositionFactor, p: &MultiPoly) -> Result<MultiPoly> {
    source.validate()?;
    target.validate()?;
    let expected = match case {
        1 => (true, true),
        2 => (false, true),
        3 => (true, false),
        4 => (false, false),
        _ => return Err(Error::CaseMismatch { case, expected: "a case number in 1..=4" }),
    };
    if (source.is_free(), target.is_free()) != expected {
        let what = ["free to free", "trivial to free", "free to trivial", "trivial to trivial"][(case - 1) as usize];
        return Err(Error::CaseMismatch { case, expected: what });
    }
    let (l, m, d) = (MultiPoly::l(), MultiPoly::m(), MultiPoly::d());
    let (d1, a1) = source.parts();
    let (dk, ak) = target.parts();
    let weight = &(&MultiPoly::int(1 + i) * &m) - &l;
    let p_l_mu = p.substitute(&shift(Var::L, m.clone()));
    let source_factor = &(&(&a1 + &l) + &d) + &(&d1 * &m);
    Ok(match case {
        1 | 2 => {
            let lhs = &p.substitute(&shift(Var::D, m.clone())) * &(&(&ak + &d) + &(&dk * &m));
            let mut rhs = &weight * &p_l_mu;
            if case == 1 {
                rhs += &(&source_factor * p);
            }
            &lhs - &rhs
        }
        3 => &(&weight * &p_l_mu) + &(&source_factor * p),
        _ => &weight * &p_l_mu,
    })
}

pub fn case_solve(case: u8, i: i64, source: &CompositionFactor, target: &CompositionFactor, degree: u32) -> Result<CaseSolution> {
    let (p, unknowns) = action_ansatz(case <= 2, degree);
    let eq = case_equation(case, i, source, target, &p)?;
    let rows: Vec<Vec<Scalar>> = coefficient_equations(&eq, &[Var::L, Var::M, Var::D])
        .iter()
        .map(|e| scalar_matrix_row(e, &unknowns).expect("case equation is linear with numeric coefficients"))
        .collect();
    let space = ExactMatrix::from_rows(unknowns.len(), rows).kernel();
    Ok(CaseSolution { case, i, ansatz: p, unknowns, space })
}

/// Both sides of the leading-coefficient condition
/// `(i+1)(dk+1)(i+1-dk)^m = (i+1-d1*dk)(i+1)^m`; true when they agree.
pub fn degree_obstruction(i: i64, d1: &Scalar, dk: &Scalar, m: u32) -> Result<bool> {
    if d1.is_zero() || dk.is_zero() {
        return Err(Error::ZeroWeightFreeFactor);
    }
    let ip = Scalar::int(i + 1);
    let lhs = &(&ip * &(dk + &Scalar::one())) * &(&ip - dk).pow(m);
    let rhs = &(&ip - &(d1 * dk)) * &ip.pow(m);
    Ok(lhs == rhs)
}

// ---------------------------------------------------------------------------
// Univariate polynomials over Q, for kernels depending on one weight.

#[derive(Clone, Debug, PartialEq, Eq)]
struct UPoly(Vec<BigRational>);

impl UPoly {
    fn trim(mut v: Vec<BigRational>) -> UPoly {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        UPoly(v)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.0.last().unwrap()
    }

    fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        let z = BigRational::zero();
        UPoly::trim((0..n).map(|i| self.0.get(i).unwrap_or(&z) - o.0.get(i).unwrap_or(&z)).collect())
    }

    fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly(Vec::new());
        }
        let mut v = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UPoly::trim(v)
    }

    fn div_rem(&self, o: &UPoly) -> (UPoly, UPoly) {
        let mut r = self.clone();
        let mut q = vec![BigRational::zero(); self.0.len().saturating_sub(o.deg()).max(1)];
        while !r.is_zero() && r.deg() >= o.deg() {
            let k = r.deg() - o.deg();
            let c = r.lead() / o.lead();
            q[k] = c.clone();
            let mut t = vec![BigRational::zero(); k];
            t.extend(o.0.iter().map(|x| x * &c));
            r = r.sub(&UPoly(t));
        }
        (UPoly::trim(q), r)
    }

    fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    fn from_multipoly(p: &MultiPoly, v: &Var) -> UPoly {
        let mut out = vec![BigRational::zero(); p.degree_in(v) as usize + 1];
        for (mono, c) in p.terms() {
            out[mono.exp(v) as usize] += c.rational_part();
        }
        UPoly::trim(out)
    }

    /// Distinct rational roots, and whether an irrational factor remains.
    fn rational_roots(&self) -> (Vec<BigRational>, bool) {
        let mut p = self.clone();
        let mut roots = Vec::new();
        let zero = BigRational::zero();
        if p.deg() > 0 && p.0[0].is_zero() {
            roots.push(zero.clone());
            while p.deg() > 0 && p.0[0].is_zero() {
                p.0.remove(0);
            }
        }
        let lcm = p.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = p.0.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        if p.deg() > 0 {
            let divisors = |n: &BigInt| -> Vec<BigInt> {
                let n = n.abs().to_u64().expect("coefficient too large for root search");
                (1..=n).filter(|k| n.is_multiple_of(*k)).map(BigInt::from).collect()
            };
            for num in divisors(&ints[0]) {
                for den in divisors(ints.last().unwrap()) {
                    for s in [1, -1] {
                        let r = BigRational::new(&num * s, den.clone());
                        if !roots.contains(&r) && p.eval(&r).is_zero() {
                            roots.push(r);
                        }
                    }
                }
            }
        }
        let mut rest = p;
        for r in &roots {
            if r.is_zero() {
                continue;
            }
            let lin = UPoly(vec![-r.clone(), BigRational::one()]);
            loop {
                let (qq, rr) = rest.div_rem(&lin);
                if !rr.is_zero() || rest.deg() == 0 {
                    break;
                }
                rest = qq;
            }
        }
        roots.sort();
        (roots, rest.deg() > 0)
    }
}

/// gcd of the maximal minors of a full-column-rank polynomial matrix, by
/// Euclidean row reduction; `None` when the columns are dependent over Q(x).
fn maximal_minor_gcd(mut a: Vec<Vec<UPoly>>, cols: usize) -> Option<UPoly> {
    let mut g = UPoly(vec![BigRational::one()]);
    for j in 0..cols {
        loop {
            let live: Vec<usize> = (j..a.len()).filter(|&r| !a[r][j].is_zero()).collect();
            let &piv = live.iter().min_by_key(|&&r| a[r][j].deg())?;
            if live.len() == 1 {
                a.swap(j, piv);
                break;
            }
            for &r in &live {
                if r == piv {
                    continue;
                }
                let (qq, _) = a[r][j].div_rem(&a[piv][j]);
                let prow = a[piv].clone();
                for c in j..cols {
                    a[r][c] = a[r][c].sub(&qq.mul(&prow[c]));
                }
            }
        }
        g = g.mul(&a[j][j]);
    }
    Some(g)
}

// ---------------------------------------------------------------------------
// Rank-one modules.

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rank1Kind {
    /// `C[d] v`, free of rank one.
    Free,
    /// `C_alpha`: `d` acts as a scalar.
    Torsion,
}

#[derive(Clone, Debug)]
pub struct Rank1Module {
    pub kind: Rank1Kind,
    /// Action of each generator on `v`, as a polynomial in `l` and `d`.
    pub actions: BTreeMap<Gen, MultiPoly>,
    pub module: ConformalModule,
}

impl Rank1Module {
    pub fn is_trivial_action(&self) -> bool {
        self.actions.values().all(MultiPoly::is_zero)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BranchReport {
    pub label: String,
    pub weight_candidates: Vec<Scalar>,
    pub outcome: String,
}

#[derive(Clone, Debug)]
pub struct Rank1Search {
    pub modules: Vec<Rank1Module>,
    pub branches: Vec<BranchReport>,
    /// Branches the exact method could not settle.
    pub unresolved: Vec<String>,
}

impl Rank1Search {
    pub fn only_trivial(&self) -> bool {
        self.unresolved.is_empty() && !self.modules.is_empty() && self.modules.iter().all(Rank1Module::is_trivial_action)
    }
}

fn v_gen() -> Gen {
    Gen::named("v")
}

fn build_module(kind: &Rank1Kind, actions: &BTreeMap<Gen, MultiPoly>) -> ConformalModule {
    let v = v_gen();
    let mut m = ConformalModule::new(vec![v.clone()]);
    for (g, p) in actions {
        m.set_action(g.clone(), v.clone(), LinComb::term(p.clone(), v.clone()));
    }
    if *kind == Rank1Kind::Torsion {
        m.set_torsion(v.clone(), Scalar::zero());
    }
    m
}

/// Equations from the module axiom on `(x, y)`, as coefficient rows.
fn axiom_rows(alg: &ConformalAlgebra, module: &ConformalModule, x: &Gen, y: &Gen) -> Result<Vec<MultiPoly>> {
    let r = module.module_residual(alg, x, y, &v_gen())?;
    Ok(coefficient_equations(&r.coeff(&v_gen()), &[Var::L, Var::M, Var::D]))
}

/// Replaces every degree-two product of unknowns by a fresh symbol.
fn linearize(eq: &MultiPoly, unknowns: &BTreeSet<Var>, products: &mut BTreeSet<Var>) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for (mono, c) in eq.terms() {
        let (inside, rest) = mono.split(&unknowns.iter().cloned().collect::<Vec<_>>());
        let new = match inside.degree() {
            0 | 1 => mono.clone(),
            2 => {
                let names: Vec<String> = inside
                    .factors()
                    .iter()
                    .flat_map(|(v, e)| std::iter::repeat_n(v.name().to_string(), *e as usize))
                    .collect();
                let z = Var::sym(&format!("z[{}]", names.join("*")));
                products.insert(z.clone());
                rest.mul(&Monomial::var(z, 1))
            }
            _ => panic!("module axioms are at most quadratic in the actions"),
        };
        out.add_term(new, c.clone());
    }
    out
}

/// All rank-one module structures over `alg` whose actions have degree at
/// most `degree`, with `vir` acting either by zero or by `d + delta*l`.
///
/// Free modules with `vir` acting as `alpha + d + delta*l` are identified
/// with the `alpha = 0` case by `d -> d + alpha`, so only that case is solved.
pub fn rank1_search_on(alg: &ConformalAlgebra, vir: &Gen, degree: u32) -> Result<Rank1Search> {
    let others: Vec<Gen> = alg.gens().iter().filter(|g| *g != vir).cloned().collect();
    let mut branches = Vec::new();
    let mut modules = Vec::new();
    let mut unresolved = Vec::new();

    for kind in [Rank1Kind::Free, Rank1Kind::Torsion] {
        // Zero action of vir: the pairs (vir, x) are linear.
        let label = format!("{kind:?}, zero action of {vir}");
        let mut actions: BTreeMap<Gen, MultiPoly> = BTreeMap::new();
        let mut unknowns = Vec::new();
        actions.insert(vir.clone(), MultiPoly::zero());
        for (n, g) in others.iter().enumerate() {
            let (p, vs) = action_ansatz(kind == Rank1Kind::Free, degree);
            let rn: Bindings = vs.iter().map(|v| (v.clone(), MultiPoly::sym(&format!("{}#{n}", v.name())))).collect();
            unknowns.extend(rn.values().flat_map(|p| p.vars()));
            actions.insert(g.clone(), p.substitute(&rn));
        }
        let module = build_module(&kind, &actions);
        let mut eqs = Vec::new();
        for g in &others {
            if alg.pair_in_bound(vir, g) {
                eqs.extend(axiom_rows(alg, &module, vir, g)?);
            }
        }
        let sol = solve_linear(&eqs, &unknowns)?;
        if !sol.free.is_empty() || !sol.residual.is_empty() {
            unresolved.push(format!("{label}: {} free action coefficients", sol.free.len()));
            continue;
        }
        let actions: BTreeMap<Gen, MultiPoly> = actions.into_iter().map(|(g, p)| (g, sol.apply(&p))).collect();
        let module = build_module(&kind, &actions);
        branches.push(BranchReport { label, weight_candidates: Vec::new(), outcome: "all actions vanish".into() });
        modules.push(Rank1Module { kind: kind.clone(), actions, module });
    }

    // Free module, vir acting by d + delta*l.
    let delta = Var::sym("delta");
    let vir_act = &MultiPoly::d() + &(&MultiPoly::var(delta.clone()) * &MultiPoly::l());
    if others.is_empty() {
        let mut actions = BTreeMap::new();
        actions.insert(vir.clone(), vir_act);
        let module = build_module(&Rank1Kind::Free, &actions);
        branches.push(BranchReport {
            label: format!("Free, {vir} acting by d + delta*l"),
            weight_candidates: Vec::new(),
            outcome: "valid for every delta".into(),
        });
        modules.push(Rank1Module { kind: Rank1Kind::Free, actions, module });
        return Ok(Rank1Search { modules, branches, unresolved });
    }

    // Weights at which some generator can act nontrivially, per homogeneous
    // degree of its action.
    let mut candidates: BTreeSet<BigRational> = BTreeSet::new();
    let mut generic: Vec<Gen> = Vec::new();
    for g in &others {
        if !alg.pair_in_bound(vir, g) {
            continue;
        }
        for n in 0..=degree {
            let (p, vs) = homogeneous_action(n);
            let mut actions = BTreeMap::new();
            actions.insert(vir.clone(), vir_act.clone());
            actions.insert(g.clone(), p);
            let module = build_module(&Rank1Kind::Free, &actions);
            let rows = axiom_rows(alg, &module, vir, g)?;
            let set: BTreeSet<Var> = vs.iter().cloned().collect();
            let mut mat = Vec::new();
            for r in &rows {
                let (lin, rest) = r.linear_parts(&set)?;
                debug_assert!(rest.is_zero());
                mat.push(vs.iter().map(|u| UPoly::from_multipoly(&lin.get(u).cloned().unwrap_or_default(), &delta)).collect());
            }
            match maximal_minor_gcd(mat, vs.len()) {
                None => {
                    if !generic.contains(g) {
                        generic.push(g.clone());
                    }
                }
                Some(gcd) => {
                    let (roots, irrational) = gcd.rational_roots();
                    if irrational {
                        unresolved.push(format!("{g} at degree {n}: irrational weights"));
                    }
                    candidates.extend(roots);
                }
            }
        }
    }

    let mut label = format!("Free, {vir} acting by d + delta*l, generic delta");
    // Away from the candidates only the generators in `generic` may act. A
    // pair with a silent factor whose bracket is vir plus silent generators
    // then reads (d + delta*l) * (nonzero) = 0.
    let silent = |g: &Gen| !generic.contains(g);
    let collapse = alg.pairs().find(|(x, y)| {
        let Ok(r) = alg.rule(x, y) else { return false };
        x != vir
            && y != vir
            && (silent(x) || silent(y))
            && !r.coeff(vir).is_zero()
            && r.gens().all(|g| g == vir || silent(g))
    });
    match collapse {
        Some((x, y)) => {
            label.push_str(&format!(": [{x} {y}] has a {vir} component"));
            branches.push(BranchReport { label, weight_candidates: Vec::new(), outcome: "no module".into() });
        }
        None => unresolved.push(format!("{label}: no collapsing pair")),
    }

    let outcomes: Vec<Result<(BranchReport, Option<String>)>> = candidates
        .iter()
        .cloned()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|w| special_weight(alg, vir, &others, &Scalar::rational(w.clone()), degree))
        .collect();
    for o in outcomes {
        let (b, u) = o?;
        branches.push(b);
        unresolved.extend(u);
    }
    Ok(Rank1Search { modules, branches, unresolved })
}

fn homogeneous_action(n: u32) -> (MultiPoly, Vec<Var>) {
    let mut p = MultiPoly::zero();
    let mut vs = Vec::new();
    for a in 0..=n {
        let u = Var::sym(&format!("h_{a}"));
        p.add_term(Monomial::from_pairs(vec![(Var::L, a), (Var::D, n - a), (u.clone(), 1)]), Scalar::one());
        vs.push(u);
    }
    (p, vs)
}

/// One exceptional weight: solve the linear pairs first, then the quadratic
/// pairs with every product of two unknowns treated as a new unknown.
fn special_weight(alg: &ConformalAlgebra, vir: &Gen, others: &[Gen], w: &Scalar, degree: u32) -> Result<(BranchReport, Option<String>)> {
    let vir_act = &MultiPoly::d() + &MultiPoly::l().scale(w);
    let mut actions: BTreeMap<Gen, MultiPoly> = BTreeMap::new();
    actions.insert(vir.clone(), vir_act);
    let mut unknowns = Vec::new();
    for (n, g) in others.iter().enumerate() {
        let (p, vs) = action_ansatz(true, degree);
        let rn: Bindings = vs.iter().map(|v| (v.clone(), MultiPoly::sym(&format!("{}#{n}", v.name())))).collect();
        unknowns.extend(rn.values().flat_map(|p| p.vars()));
        actions.insert(g.clone(), p.substitute(&rn));
    }
    let module = build_module(&Rank1Kind::Free, &actions);
    let mut lin = Vec::new();
    for g in others {
        if alg.pair_in_bound(vir, g) {
            lin.extend(axiom_rows(alg, &module, vir, g)?);
        }
    }
    let sol = solve_linear(&lin, &unknowns)?;
    let actions: BTreeMap<Gen, MultiPoly> = actions.into_iter().map(|(g, p)| (g, sol.apply(&p))).collect();
    let module = build_module(&Rank1Kind::Free, &actions);
    let free: BTreeSet<Var> = sol.free.iter().cloned().collect();
    let mut products = BTreeSet::new();
    let mut quad = Vec::new();
    for (x, y) in alg.in_bound_pairs() {
        if x == *vir || y == *vir {
            continue;
        }
        for r in axiom_rows(alg, &module, &x, &y)? {
            quad.push(linearize(&r, &free, &mut products));
        }
    }
    let all: Vec<Var> = products.iter().cloned().chain(free.iter().cloned()).collect();
    let relaxed = solve_linear(&quad, &all)?;
    let label = format!("Free, {vir} acting by {}", &MultiPoly::d() + &MultiPoly::l().scale(w));
    if !relaxed.is_consistent() {
        return Ok((BranchReport { label, weight_candidates: vec![w.clone()], outcome: "no module".into() }, None));
    }
    Ok((
        BranchReport { label: label.clone(), weight_candidates: vec![w.clone()], outcome: "linearised system consistent".into() },
        Some(format!("{label}: quadratic system not settled by linearisation")),
    ))
}

/// The search over the truncated graded algebra with `J_0` as the Virasoro
/// element.
pub fn rank1_module_search(k: i64, degree: u32) -> Result<Rank1Search> {
    if k < 1 {
        return Err(Error::OutOfBound(Gen::Index(k), Gen::Index(1)));
    }
    rank1_search_on(&zoo::grgc1(k), &Gen::Index(0), degree)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free(d: i64, a: i64) -> CompositionFactor {
        CompositionFactor::free(Scalar::int(d), Scalar::int(a))
    }

    #[test]
    fn case_examples() {
        assert!(case_solve(1, 10, &free(1, 0), &free(1, 0), 6).unwrap().is_trivial());
        assert!(case_solve(3, 3, &free(2, 0), &CompositionFactor::trivial(Scalar::zero()), 6).unwrap().is_trivial());
        assert!(case_solve(2, 5, &CompositionFactor::trivial(Scalar::zero()), &free(2, 1), 6).unwrap().is_trivial());
    }

    #[test]
    fn zero_weight_rejected() {
        let e = case_solve(1, 3, &free(0, 0), &free(1, 0), 2);
        assert!(matches!(e, Err(Error::ZeroWeightFreeFactor)));
        let e = case_solve(2, 3, &free(1, 0), &free(1, 0), 2);
        assert!(matches!(e, Err(Error::CaseMismatch { case: 2, .. })));
    }

    #[test]
    fn obstruction_examples() {
        let one = Scalar::one();
        // 2*2*1 against 1*2
        assert!(!degree_obstruction(1, &one, &one, 1).unwrap());
        // m = 0: 2*2 == 2 + 2
        assert!(degree_obstruction(1, &Scalar::int(-2), &one, 0).unwrap());
        assert!(!degree_obstruction(10, &one, &one, 2).unwrap());
    }

    #[test]
    fn upoly_roots() {
        let q = |n: i64| BigRational::from_integer(n.into());
        // 2x^3 - 3x^2 + x = x(2x - 1)(x - 1)
        let p = UPoly(vec![q(0), q(1), q(-3), q(2)]);
        let (r, irr) = p.rational_roots();
        assert_eq!(r, vec![q(0), BigRational::new(1.into(), 2.into()), q(1)]);
        assert!(!irr);
        let p = UPoly(vec![q(-2), q(0), q(1)]);
        assert_eq!(p.rational_roots(), (vec![], true));
    }
}
