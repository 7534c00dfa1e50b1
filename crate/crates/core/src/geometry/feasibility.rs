//! Exact feasibility of mixed strict / non-strict / equality systems by
//! Fourier-Motzkin elimination, with a deterministic witness read off by
//! back-substitution.

use std::collections::HashMap;

use super::{Polyhedron, Relation};
use crate::scalar::ExactScalar;

#[derive(Clone, Debug)]
struct Row<T> {
    coeffs: Vec<T>,
    strict: bool,
    rhs: T,
}

/// `x_pivot = (rhs - sum_{j != pivot} coeffs_j x_j) / coeffs_pivot`
#[derive(Clone, Debug)]
struct Substitution<T> {
    pivot: usize,
    coeffs: Vec<T>,
    rhs: T,
}

impl<T: ExactScalar> Substitution<T> {
    fn value(&self, x: &[T]) -> T {
        let mut acc = self.rhs.clone();
        for (j, a) in self.coeffs.iter().enumerate() {
            if j != self.pivot && !a.is_zero() {
                acc = acc - a.clone() * x[j].clone();
            }
        }
        acc / self.coeffs[self.pivot].clone()
    }

    /// Rewrites `coeffs . x (rel) rhs` with `x_pivot` eliminated.
    fn apply(&self, coeffs: &mut [T], rhs: &mut T) {
        let c = coeffs[self.pivot].clone();
        if c.is_zero() {
            return;
        }
        let factor = c / self.coeffs[self.pivot].clone();
        for (j, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                coeffs[j] = coeffs[j].clone() - factor.clone() * a.clone();
            }
        }
        coeffs[self.pivot] = T::zero();
        *rhs = rhs.clone() - factor * self.rhs.clone();
    }
}

/// Returns a rational point satisfying every constraint of `p` (strict ones
/// strictly), or `None` when the system is infeasible.
pub fn feasible_interior<T: ExactScalar>(p: &Polyhedron<T>) -> Option<Vec<T>> {
    let d = p.dim();
    let mut rows: Vec<Row<T>> = Vec::new();
    let mut equalities: Vec<(Vec<T>, T)> = Vec::new();
    for c in p.constraints() {
        match c.relation {
            Relation::Eq => equalities.push((c.coeffs.clone(), c.rhs.clone())),
            Relation::Le | Relation::Lt => rows.push(Row {
                coeffs: c.coeffs.clone(),
                strict: c.relation == Relation::Lt,
                rhs: c.rhs.clone(),
            }),
        }
    }

    // Gaussian elimination of the equalities.
    let mut substitutions: Vec<Substitution<T>> = Vec::new();
    let mut pending = equalities;
    while let Some((mut coeffs, mut rhs)) = pending.pop() {
        for s in &substitutions {
            s.apply(&mut coeffs, &mut rhs);
        }
        let Some(pivot) = coeffs.iter().position(|a| !a.is_zero()) else {
            if rhs.is_zero() {
                continue;
            }
            return None;
        };
        let sub = Substitution { pivot, coeffs, rhs };
        for (c, r) in pending.iter_mut() {
            sub.apply(c, r);
        }
        substitutions.push(sub);
    }
    for row in rows.iter_mut() {
        for s in &substitutions {
            s.apply(&mut row.coeffs, &mut row.rhs);
        }
    }

    // levels[k] constrains x_0..x_{k-1} only
    let mut levels: Vec<Vec<Row<T>>> = vec![Vec::new(); d + 1];
    levels[d] = normalize(rows)?;
    for k in (0..d).rev() {
        let current = &levels[k + 1];
        let mut next = Vec::new();
        let mut upper = Vec::new();
        let mut lower = Vec::new();
        for row in current {
            if row.coeffs[k].is_positive() {
                upper.push(row);
            } else if row.coeffs[k].is_negative() {
                lower.push(row);
            } else {
                next.push(row.clone());
            }
        }
        for u in &upper {
            for l in &lower {
                let lu = -l.coeffs[k].clone();
                let ll = u.coeffs[k].clone();
                let coeffs = u
                    .coeffs
                    .iter()
                    .zip(&l.coeffs)
                    .map(|(a, b)| lu.clone() * a.clone() + ll.clone() * b.clone())
                    .collect();
                next.push(Row {
                    coeffs,
                    strict: u.strict || l.strict,
                    rhs: lu.clone() * u.rhs.clone() + ll.clone() * l.rhs.clone(),
                });
            }
        }
        levels[k] = normalize(next)?;
    }

    let mut x = vec![T::zero(); d];
    for k in 0..d {
        x[k] = choose(&levels[k + 1], k, &x);
    }
    for s in substitutions.iter().rev() {
        x[s.pivot] = s.value(&x);
    }
    debug_assert!(p.contains(&x), "witness violates the system");
    Some(x)
}

/// Picks `x_k` inside the bounds that `rows` impose given `x_0..x_{k-1}`.
fn choose<T: ExactScalar>(rows: &[Row<T>], k: usize, x: &[T]) -> T {
    let mut lower: Option<(T, bool)> = None;
    let mut upper: Option<(T, bool)> = None;
    for row in rows {
        let a = &row.coeffs[k];
        if a.is_zero() {
            continue;
        }
        let mut rest = row.rhs.clone();
        for j in 0..k {
            if !row.coeffs[j].is_zero() {
                rest = rest - row.coeffs[j].clone() * x[j].clone();
            }
        }
        let bound = rest / a.clone();
        if a.is_positive() {
            upper = Some(match upper {
                Some((u, s)) if u < bound => (u, s),
                Some((u, s)) if u == bound => (u, s || row.strict),
                _ => (bound, row.strict),
            });
        } else {
            lower = Some(match lower {
                Some((l, s)) if l > bound => (l, s),
                Some((l, s)) if l == bound => (l, s || row.strict),
                _ => (bound, row.strict),
            });
        }
    }
    match (lower, upper) {
        (Some((l, _)), Some((u, _))) if l == u => l,
        (Some((l, _)), Some((u, _))) => (l + u) / T::two(),
        (Some((l, _)), None) => l + T::one(),
        (None, Some((u, _))) => u - T::one(),
        (None, None) => T::zero(),
    }
}

/// Scales rows so the first nonzero coefficient is +-1, checks constant rows,
/// and keeps the tightest row per coefficient vector.
fn normalize<T: ExactScalar>(rows: Vec<Row<T>>) -> Option<Vec<Row<T>>> {
    let mut best: HashMap<Vec<T>, (T, bool)> = HashMap::new();
    let mut order: Vec<Vec<T>> = Vec::new();
    for row in rows {
        let Some(lead) = row.coeffs.iter().find(|a| !a.is_zero()).cloned() else {
            let ok = if row.strict {
                row.rhs.is_positive()
            } else {
                !row.rhs.is_negative()
            };
            if !ok {
                return None;
            }
            continue;
        };
        let scale = lead.abs();
        let coeffs: Vec<T> = row.coeffs.into_iter().map(|a| a / scale.clone()).collect();
        let rhs = row.rhs / scale;
        match best.get_mut(&coeffs) {
            Some(entry) => {
                if rhs < entry.0 {
                    *entry = (rhs, row.strict);
                } else if rhs == entry.0 {
                    entry.1 |= row.strict;
                }
            }
            None => {
                order.push(coeffs.clone());
                best.insert(coeffs, (rhs, row.strict));
            }
        }
    }
    Some(
        order
            .into_iter()
            .map(|coeffs| {
                let (rhs, strict) = best.remove(&coeffs).unwrap();
                Row { coeffs, strict, rhs }
            })
            .collect(),
    )
}
