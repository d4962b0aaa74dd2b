use std::collections::{BTreeMap, BTreeSet};

use crate::error::MathError;
use crate::poly::{Bindings, Monomial, MultiPoly, Var};
use crate::scalar::Scalar;

/// Result of eliminating a system that is linear in a chosen set of unknowns
/// and whose coefficients may involve further symbolic parameters.
///
/// Pivots are taken only on constant coefficients, so nothing here ever
/// divides by an expression in the parameters. Rows that could not be
/// pivoted stay in `residual`.
#[derive(Clone, Debug, Default)]
pub struct Solution {
    pub values: BTreeMap<Var, MultiPoly>,
    pub free: Vec<Var>,
    pub residual: Vec<MultiPoly>,
}

impl Solution {
    pub fn apply(&self, p: &MultiPoly) -> MultiPoly {
        p.substitute(&self.values)
    }

    pub fn bindings(&self) -> &Bindings {
        &self.values
    }

    /// A residual row that is a nonzero constant is a contradiction.
    pub fn is_consistent(&self) -> bool {
        !self.residual.iter().any(|r| r.as_constant().is_some_and(|c| !c.is_zero()))
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }
}

fn reduce(row: &MultiPoly, values: &Bindings) -> MultiPoly {
    if row.vars().iter().any(|v| values.contains_key(v)) {
        row.substitute(values)
    } else {
        row.clone()
    }
}

/// Gauss-Jordan elimination over the unknowns, in the order given.
pub fn solve_linear(eqs: &[MultiPoly], unknowns: &[Var]) -> Result<Solution, MathError> {
    let set: BTreeSet<Var> = unknowns.iter().cloned().collect();
    let order: BTreeMap<&Var, usize> = unknowns.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut values: Bindings = BTreeMap::new();
    let mut pending: Vec<MultiPoly> = Vec::new();

    let mut queue: Vec<MultiPoly> = eqs.iter().filter(|e| !e.is_zero()).cloned().collect();
    let mut progress = true;
    while progress {
        progress = false;
        for row in queue.drain(..) {
            let row = reduce(&row, &values);
            if row.is_zero() {
                continue;
            }
            let (lin, _) = row.linear_parts(&set)?;
            let pivot = lin
                .iter()
                .filter_map(|(u, c)| c.as_constant().filter(|s| !s.is_zero()).map(|s| (u, s)))
                .min_by_key(|(u, _)| order[u]);
            match pivot {
                Some((u, c)) => {
                    let u = u.clone();
                    let without = &row - &MultiPoly::var(u.clone()).scale(&c);
                    let val = without.scale(&-(c.recip().unwrap()));
                    let mut b = Bindings::new();
                    b.insert(u.clone(), val.clone());
                    for v in values.values_mut() {
                        if v.contains_var(&u) {
                            *v = v.substitute(&b);
                        }
                    }
                    values.insert(u, val);
                    progress = true;
                }
                None => pending.push(row),
            }
        }
        queue = std::mem::take(&mut pending);
        if !progress {
            pending = queue;
            break;
        }
    }

    let residual: Vec<MultiPoly> =
        pending.iter().map(|r| reduce(r, &values)).filter(|r| !r.is_zero()).collect();
    let free = unknowns.iter().filter(|u| !values.contains_key(*u)).cloned().collect();
    Ok(Solution { values, free, residual })
}

/// Coefficient list of `p` with respect to the monomials in `vars`.
pub fn coefficient_equations(p: &MultiPoly, vars: &[Var]) -> Vec<MultiPoly> {
    p.coefficients(vars).into_values().collect()
}

/// Treats a relation `c*x + rest = 0` with constant `c` and `x` among
/// `params` as a substitution for `x`. Returns `None` if no parameter can be
/// isolated that way.
pub fn isolate_parameter(rel: &MultiPoly, params: &[Var]) -> Option<(Var, MultiPoly)> {
    for x in params {
        if rel.degree_in(x) != 1 {
            continue;
        }
        let set: BTreeSet<Var> = [x.clone()].into_iter().collect();
        let Ok((lin, rest)) = rel.linear_parts(&set) else { continue };
        if let Some(c) = lin.get(x).and_then(|c| c.as_constant()) {
            if !c.is_zero() {
                return Some((x.clone(), rest.scale(&-(c.recip().unwrap()))));
            }
        }
    }
    None
}

/// Convenience for tests and reports: the coefficients `[c_0, c_1, ...]` of a
/// polynomial in a single variable.
pub fn univariate_coefficients(p: &MultiPoly, v: &Var) -> Vec<MultiPoly> {
    let deg = p.degree_in(v);
    let cs = p.coefficients(std::slice::from_ref(v));
    (0..=deg)
        .map(|e| cs.get(&Monomial::var(v.clone(), e)).cloned().unwrap_or_default())
        .collect()
}

pub fn scalar_matrix_row(p: &MultiPoly, unknowns: &[Var]) -> Option<Vec<Scalar>> {
    let set: BTreeSet<Var> = unknowns.iter().cloned().collect();
    let (lin, rest) = p.linear_parts(&set).ok()?;
    if !rest.is_zero() {
        return None;
    }
    unknowns
        .iter()
        .map(|u| lin.get(u).map_or(Some(Scalar::zero()), |c| c.as_constant()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: &str) -> MultiPoly {
        MultiPoly::sym(n)
    }

    #[test]
    fn solves_parametric_system() {
        // x + y = b, x - y = 1
        let (x, y) = (Var::sym("x0"), Var::sym("y0"));
        let eqs = vec![&(&s("x0") + &s("y0")) - &s("b"), &(&s("x0") - &s("y0")) - &MultiPoly::one()];
        let sol = solve_linear(&eqs, &[x.clone(), y.clone()]).unwrap();
        assert!(sol.free.is_empty() && sol.residual.is_empty());
        let half = Scalar::ratio(1, 2);
        assert_eq!(sol.values[&x], (&s("b") + &MultiPoly::one()).scale(&half));
        assert_eq!(sol.values[&y], (&s("b") - &MultiPoly::one()).scale(&half));
    }

    #[test]
    fn parametric_pivot_is_deferred() {
        // b*x = 0 cannot be pivoted; x stays free and the row is residual.
        let x = Var::sym("x0");
        let sol = solve_linear(&[&s("b") * &s("x0")], std::slice::from_ref(&x)).unwrap();
        assert_eq!(sol.free, vec![x]);
        assert_eq!(sol.residual.len(), 1);
        assert!(sol.is_consistent());
    }

    #[test]
    fn inconsistency_detected() {
        let x = Var::sym("x0");
        let sol = solve_linear(&[s("x0"), &s("x0") - &MultiPoly::one()], &[x]).unwrap();
        assert!(!sol.is_consistent());
    }

    #[test]
    fn isolate() {
        let rel = &s("k").scale(&Scalar::int(5)) - &(&s("c") * &s("c")).scale(&Scalar::int(5));
        let (v, val) = isolate_parameter(&rel, &[Var::sym("k")]).unwrap();
        assert_eq!(v, Var::sym("k"));
        assert_eq!(val, &s("c") * &s("c"));
    }
}
