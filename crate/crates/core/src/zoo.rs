use std::collections::BTreeMap;

use crate::algebra::{ConformalAlgebra, ConformalModule, Gen, LinComb};
use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::scalar::{binom, Scalar};

pub const DEFAULT_TRUNCATION: i64 = 6;

fn l() -> MultiPoly {
    MultiPoly::l()
}

fn d() -> MultiPoly {
    MultiPoly::d()
}

fn c(n: i64) -> MultiPoly {
    MultiPoly::int(n)
}

/// `a*l + b*d`
fn lin(a: &Scalar, b: &Scalar) -> MultiPoly {
    &l().scale(a) + &d().scale(b)
}

pub fn vir() -> ConformalAlgebra {
    let lg = Gen::named("L");
    let mut a = ConformalAlgebra::new("Vir", vec![lg.clone()], None);
    a.set_bracket(lg.clone(), lg.clone(), LinComb::term(&d() + &l().scale(&Scalar::int(2)), lg));
    a
}

/// `L_l v = (alpha + d + delta*l) v`
pub fn module_m(delta: &Scalar, alpha: &Scalar) -> ConformalModule {
    let v = Gen::named("v");
    let mut m = ConformalModule::new(vec![v.clone()]);
    let p = &(&MultiPoly::constant(alpha.clone()) + &d()) + &l().scale(delta);
    m.set_action(Gen::named("L"), v.clone(), LinComb::term(p, v));
    m
}

/// One-dimensional module with `d` acting as `alpha` and zero l-action.
pub fn trivial_module(alpha: &Scalar) -> ConformalModule {
    let v = Gen::named("v");
    let mut m = ConformalModule::new(vec![v.clone()]);
    m.set_torsion(v, alpha.clone());
    m
}

/// Vir acting on `J` with weight `a`, and `[J_l J] = 0`.
pub fn semidirect(a: &Scalar) -> ConformalAlgebra {
    let (lg, jg) = (Gen::named("L"), Gen::named("J"));
    let mut alg = ConformalAlgebra::new("SD", vec![lg.clone(), jg.clone()], None)
        .with_param("a", a.clone());
    alg.set_bracket(lg.clone(), lg.clone(), LinComb::term(&d() + &l().scale(&Scalar::int(2)), lg.clone()));
    alg.set_bracket(lg.clone(), jg.clone(), LinComb::term(&d() + &l().scale(a), jg.clone()));
    alg.set_bracket(jg.clone(), jg.clone(), LinComb::zero());
    alg.skew_complete();
    alg
}

fn family_gens(n: i64) -> Vec<Gen> {
    (-1..=n).map(Gen::Index).collect()
}

/// Bracket of `J_m` and `J_n` in gc1.
pub fn gc1_bracket(m: i64, n: i64) -> LinComb {
    let mut out = LinComb::zero();
    let lpd = &l() + &d();
    for s in 0..=m {
        out.add_term(Gen::Index(m + n - s), lpd.pow((s + 1) as u32).scale(&binom(m + 1, s + 1)));
    }
    let ml = -l();
    for s in 0..=n {
        out.add_term(Gen::Index(m + n - s), -ml.pow((s + 1) as u32).scale(&binom(n + 1, s + 1)));
    }
    out
}

/// Bracket of `J_i` and `J_j` in gr gc1.
pub fn grgc1_bracket(i: i64, j: i64) -> LinComb {
    LinComb::term(lin(&Scalar::int(i + j + 2), &Scalar::int(i + 1)), Gen::Index(i + j))
}

fn indexed(name: &str, n: i64, f: impl Fn(i64, i64) -> LinComb) -> ConformalAlgebra {
    assert!(n >= -1, "truncation bound must be at least -1");
    let mut a = ConformalAlgebra::new(name, family_gens(n), Some(n));
    for i in -1..=n {
        for j in -1..=n {
            if i + j <= n {
                a.set_bracket(Gen::Index(i), Gen::Index(j), f(i, j));
            }
        }
    }
    a
}

pub fn gc1(n: i64) -> ConformalAlgebra {
    indexed("gc1", n, gc1_bracket)
}

pub fn grgc1(n: i64) -> ConformalAlgebra {
    indexed("grgc1", n, grgc1_bracket)
}

/// `[J^m_{e_ab} _l J^n_{e_cd}]` from the double-sum formula with
/// `e_ab e_cd = delta_bc e_ad`.
pub fn gcn_bracket(m: i64, a: u32, b: u32, n: i64, cc: u32, dd: u32) -> LinComb {
    let mut out = LinComb::zero();
    let lpd = &l() + &d();
    if b == cc {
        for s in 0..=m {
            let g = Gen::Unit { power: m + n - s, row: a, col: dd };
            out.add_term(g, lpd.pow(s as u32).scale(&binom(m, s)));
        }
    }
    if dd == a {
        let ml = -l();
        for s in 0..=n {
            let g = Gen::Unit { power: m + n - s, row: cc, col: b };
            out.add_term(g, -ml.pow(s as u32).scale(&binom(n, s)));
        }
    }
    out
}

pub fn gcn(size: u32, n: i64) -> ConformalAlgebra {
    assert!(size >= 1 && n >= 0);
    let mut gens = Vec::new();
    for p in 0..=n {
        for r in 1..=size {
            for q in 1..=size {
                gens.push(Gen::Unit { power: p, row: r, col: q });
            }
        }
    }
    let mut alg = ConformalAlgebra::new("gcN", gens.clone(), Some(n));
    for x in &gens {
        for y in &gens {
            if let (Gen::Unit { power: m, row: a, col: b }, Gen::Unit { power: k, row: c2, col: d2 }) = (x, y) {
                if m + k <= n {
                    alg.set_bracket(x.clone(), y.clone(), gcn_bracket(*m, *a, *b, *k, *c2, *d2));
                }
            }
        }
    }
    alg
}

/// Renames generators; the map must be injective on the generator set.
pub fn relabel(alg: &ConformalAlgebra, f: impl Fn(&Gen) -> Gen, truncation: Option<i64>) -> ConformalAlgebra {
    let mut out = ConformalAlgebra::new(&alg.name, alg.gens().iter().map(&f).collect(), truncation);
    for ((x, y), v) in alg.table() {
        let v2 = LinComb::from_terms(v.terms().map(|(g, p)| (f(g), p.clone())));
        out.set_bracket(f(x), f(y), v2);
    }
    out
}

/// gc_N at `N = 1`, re-indexed by `J_k = J^{k+1}`.
pub fn gcn1_as_gc1(n: i64) -> ConformalAlgebra {
    let relabel_one = |g: &Gen| match g {
        Gen::Unit { power, .. } => Gen::Index(power - 1),
        other => other.clone(),
    };
    indexed("gcN(1)", n, |i, j| {
        let v = gcn_bracket(i + 1, 1, 1, j + 1, 1, 1);
        LinComb::from_terms(v.terms().map(|(g, p)| (relabel_one(g), p.clone())))
    })
}

/// Degree assignment for each generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationSpec {
    pub degrees: BTreeMap<Gen, i64>,
}

impl FiltrationSpec {
    pub fn from_fn(alg: &ConformalAlgebra, f: impl Fn(&Gen) -> i64) -> Self {
        FiltrationSpec { degrees: alg.gens().iter().map(|g| (g.clone(), f(g))).collect() }
    }

    /// `deg J_k = k` on gc1 and friends; `deg J^n_A = n` on gcN.
    pub fn by_level(alg: &ConformalAlgebra) -> Self {
        Self::from_fn(alg, |g| g.level().unwrap_or(0))
    }

    /// The matrix-unit filtration transported to gc1 via `J_k = x^{k+1}`.
    pub fn shifted_gc1(alg: &ConformalAlgebra) -> Self {
        Self::from_fn(alg, |g| g.level().map_or(0, |k| k + 1))
    }

    pub fn degree(&self, g: &Gen) -> Result<i64> {
        self.degrees.get(g).copied().ok_or_else(|| Error::UnknownGenerator(g.clone()))
    }
}

/// A bracket with components above the allowed degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationWitness {
    pub pair: (Gen, Gen),
    pub excess: LinComb,
}

pub fn check_filtration(alg: &ConformalAlgebra, filt: &FiltrationSpec) -> Result<Option<FiltrationWitness>> {
    for ((x, y), v) in alg.table() {
        let cap = filt.degree(x)? + filt.degree(y)?;
        let mut excess = LinComb::zero();
        for (g, p) in v.terms() {
            if filt.degree(g)? > cap {
                excess.add_term(g.clone(), p.clone());
            }
        }
        if !excess.is_zero() {
            return Ok(Some(FiltrationWitness { pair: (x.clone(), y.clone()), excess }));
        }
    }
    Ok(None)
}

/// The component of `[x _ y]` in degree exactly `deg x + deg y`.
pub fn leading_term(alg: &ConformalAlgebra, filt: &FiltrationSpec, x: &Gen, y: &Gen) -> Result<LinComb> {
    let top = filt.degree(x)? + filt.degree(y)?;
    let v = alg.rule(x, y)?;
    let mut out = LinComb::zero();
    for (g, p) in v.terms() {
        if filt.degree(g)? == top {
            out.add_term(g.clone(), p.clone());
        }
    }
    Ok(out)
}

pub fn associated_graded(alg: &ConformalAlgebra, filt: &FiltrationSpec) -> Result<ConformalAlgebra> {
    if let Some(w) = check_filtration(alg, filt)? {
        return Err(Error::FiltrationViolation(w.pair.0, w.pair.1));
    }
    let mut out = alg.clone();
    for (x, y) in alg.pairs() {
        out.set_bracket(x.clone(), y.clone(), leading_term(alg, filt, x, y)?);
    }
    Ok(out)
}

/// Leading term predicted for gc_N: `J^{i+j}_{[A,B]}`.
pub fn gcn_expected_leading(x: &Gen, y: &Gen) -> LinComb {
    let mut out = LinComb::zero();
    if let (Gen::Unit { power: i, row: a, col: b }, Gen::Unit { power: j, row: c2, col: d2 }) = (x, y) {
        if b == c2 {
            out.add_term(Gen::Unit { power: i + j, row: *a, col: *d2 }, c(1));
        }
        if d2 == a {
            out.add_term(Gen::Unit { power: i + j, row: *c2, col: *b }, c(-1));
        }
    }
    out
}

/// Pairs whose leading term differs from `reference`.
pub fn leading_term_mismatches(
    alg: &ConformalAlgebra,
    filt: &FiltrationSpec,
    reference: impl Fn(&Gen, &Gen) -> LinComb,
) -> Result<Vec<((Gen, Gen), LinComb)>> {
    let mut bad = Vec::new();
    for (x, y) in alg.pairs() {
        let diff = leading_term(alg, filt, x, y)?.sub(&reference(x, y));
        if !diff.is_zero() {
            bad.push(((x.clone(), y.clone()), diff));
        }
    }
    Ok(bad)
}

/// Builds one of the named algebras; `args` are the numeric arguments in order.
pub fn builtin(name: &str, args: &[Scalar]) -> Option<ConformalAlgebra> {
    let int = |i: usize, dflt: i64| args.get(i).map_or(Some(dflt), |s| s.to_i64());
    match name {
        "vir" => Some(vir()),
        "semidirect" => Some(semidirect(args.first()?)),
        "gc1" => Some(gc1(int(0, DEFAULT_TRUNCATION)?)),
        "grgc1" => Some(grgc1(int(0, DEFAULT_TRUNCATION)?)),
        "gcN" | "gcn" => {
            let size = int(0, 2)?;
            Some(gcn(u32::try_from(size).ok()?, int(1, DEFAULT_TRUNCATION)?))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_brackets() {
        assert_eq!(vir().bracket_gens(&Gen::named("L"), &Gen::named("L")).unwrap().to_string(), "(2*l + d) L");
        let g = gc1(3);
        assert_eq!(g.bracket_gens(&Gen::Index(0), &Gen::Index(0)).unwrap().to_string(), "(2*l + d) J[0]");
        assert_eq!(
            g.bracket_gens(&Gen::Index(1), &Gen::Index(1)).unwrap().to_string(),
            "(4*l + 2*d) J[2] + (2*l*d + d^2) J[1]"
        );
        assert!(g.bracket_gens(&Gen::Index(-1), &Gen::Index(-1)).unwrap().is_zero());
        assert_eq!(grgc1(2).bracket_gens(&Gen::Index(-1), &Gen::Index(0)).unwrap().to_string(), "l J[-1]");
    }

    #[test]
    fn matrix_units() {
        let a = gcn(2, 1);
        let u = |p, r, c| Gen::Unit { power: p, row: r, col: c };
        assert_eq!(a.bracket_gens(&u(0, 1, 1), &u(0, 1, 2)).unwrap(), LinComb::gen(u(0, 1, 2)));
        assert!(a.bracket_gens(&u(0, 1, 1), &u(0, 1, 1)).unwrap().is_zero());
        assert_eq!(gcn1_as_gc1(3), gc1(3));
    }
}
