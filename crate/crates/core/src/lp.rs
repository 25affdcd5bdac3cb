//! Exact feasibility oracle for linear inequality systems: phase-1 primal
//! simplex with Bland's rule over any [`ExactField`].

use crate::error::{input, internal, Result};
use crate::scalar::ExactField;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row<T> {
    pub coeffs: Vec<T>,
    pub relation: Relation,
    pub rhs: T,
}

impl<T: ExactField> Row<T> {
    pub fn is_satisfied_by(&self, point: &[T]) -> bool {
        let lhs = self
            .coeffs
            .iter()
            .zip(point)
            .fold(T::zero(), |acc, (a, x)| acc + a.clone() * x.clone());
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Ge => lhs >= self.rhs,
        }
    }
}

/// `rows` over `num_vars` variables, each boxed in `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem<T> {
    num_vars: usize,
    rows: Vec<Row<T>>,
    bounds: Vec<(T, T)>,
}

impl<T: ExactField> LinearSystem<T> {
    /// All variables start in `[lo, hi]`.
    pub fn new(num_vars: usize, lo: T, hi: T) -> Self {
        LinearSystem {
            num_vars,
            rows: Vec::new(),
            bounds: vec![(lo, hi); num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn rows(&self) -> &[Row<T>] {
        &self.rows
    }

    pub fn bounds(&self) -> &[(T, T)] {
        &self.bounds
    }

    pub fn set_bounds(&mut self, var: usize, lo: T, hi: T) -> Result<()> {
        let slot = self
            .bounds
            .get_mut(var)
            .ok_or_else(|| input(format!("variable {var} out of range")))?;
        *slot = (lo, hi);
        Ok(())
    }

    pub fn add_row(&mut self, coeffs: Vec<T>, relation: Relation, rhs: T) -> Result<()> {
        if coeffs.len() != self.num_vars {
            return Err(input(format!(
                "row has {} coefficients, system has {} variables",
                coeffs.len(),
                self.num_vars
            )));
        }
        self.rows.push(Row {
            coeffs,
            relation,
            rhs,
        });
        Ok(())
    }

    /// Exact membership test.
    pub fn contains(&self, point: &[T]) -> bool {
        point.len() == self.num_vars
            && self
                .bounds
                .iter()
                .zip(point)
                .all(|((lo, hi), x)| lo <= x && x <= hi)
            && self.rows.iter().all(|r| r.is_satisfied_by(point))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility<T> {
    Feasible(Vec<T>),
    Infeasible,
}

impl<T> Feasibility<T> {
    pub fn point(self) -> Option<Vec<T>> {
        match self {
            Feasibility::Feasible(p) => Some(p),
            Feasibility::Infeasible => None,
        }
    }
}

/// Finds a point of the system or proves it empty.
///
/// Variables are shifted to `z = x - lo >= 0`, upper bounds become rows,
/// and every row gets a slack; rows whose slack cannot start basic get an
/// artificial. Phase 1 minimises the artificial sum with Bland's rule, so the
/// returned vertex is deterministic. The point is re-verified before return.
pub fn feasible_point<T: ExactField>(sys: &LinearSystem<T>) -> Result<Feasibility<T>> {
    let n = sys.num_vars;
    if sys.bounds.iter().any(|(lo, hi)| lo > hi) {
        return Ok(Feasibility::Infeasible);
    }

    // Constraint rows in shifted variables: (coeffs, sign of slack, rhs).
    let mut rows: Vec<(Vec<T>, T, T)> = Vec::with_capacity(sys.rows.len() + n);
    for row in &sys.rows {
        let shift = row
            .coeffs
            .iter()
            .zip(&sys.bounds)
            .fold(T::zero(), |acc, (a, (lo, _))| acc + a.clone() * lo.clone());
        let slack = match row.relation {
            Relation::Le => T::one(),
            Relation::Ge => -T::one(),
        };
        rows.push((row.coeffs.clone(), slack, row.rhs.clone() - shift));
    }
    for (j, (lo, hi)) in sys.bounds.iter().enumerate() {
        let mut coeffs = vec![T::zero(); n];
        coeffs[j] = T::one();
        rows.push((coeffs, T::one(), hi.clone() - lo.clone()));
    }

    let m = rows.len();
    // Columns: n structural, m slacks, then one artificial per row that needs it.
    let mut needs_artificial = Vec::with_capacity(m);
    for (_, slack, rhs) in &rows {
        // After normalising rhs >= 0 the slack coefficient is slack * sign(rhs).
        let flip = rhs.is_negative();
        let coeff_positive = if flip {
            slack.is_negative()
        } else {
            slack.is_positive()
        };
        needs_artificial.push(!coeff_positive);
    }
    let num_art = needs_artificial.iter().filter(|&&a| a).count();
    let cols = n + m + num_art;
    let mut tableau: Vec<Vec<T>> = Vec::with_capacity(m);
    let mut rhs_col: Vec<T> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let mut next_art = n + m;
    for (i, (coeffs, slack, rhs)) in rows.into_iter().enumerate() {
        let flip = rhs.is_negative();
        let mut line = vec![T::zero(); cols];
        for (j, a) in coeffs.into_iter().enumerate() {
            line[j] = if flip { -a } else { a };
        }
        line[n + i] = if flip { -slack } else { slack };
        if needs_artificial[i] {
            line[next_art] = T::one();
            basis.push(next_art);
            next_art += 1;
        } else {
            basis.push(n + i);
        }
        tableau.push(line);
        rhs_col.push(if flip { -rhs } else { rhs });
    }

    // Phase-1 objective: minimise the sum of artificials. Reduced costs
    // c_j - c_B B^-1 A_j for the starting basis.
    let is_art = |j: usize| j >= n + m;
    let mut reduced = vec![T::zero(); cols];
    let mut objective = T::zero();
    for r in &mut reduced[n + m..] {
        *r = T::one();
    }
    for i in 0..m {
        if is_art(basis[i]) {
            for j in 0..cols {
                if !tableau[i][j].is_zero() {
                    reduced[j] = reduced[j].clone() - tableau[i][j].clone();
                }
            }
            objective = objective + rhs_col[i].clone();
        }
    }

    // Bland: lowest-index improving column.
    while let Some(enter) = (0..cols).find(|&j| reduced[j].is_negative()) {
        // Ratio test, ties broken by lowest basic variable index.
        let mut leave: Option<(usize, T)> = None;
        for i in 0..m {
            let a = &tableau[i][enter];
            if a.is_positive() {
                let ratio = rhs_col[i].clone() / a.clone();
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((pivot_row, _)) = leave else {
            return Err(internal("phase-1 objective unbounded below"));
        };
        pivot(
            &mut tableau,
            &mut rhs_col,
            &mut reduced,
            &mut objective,
            pivot_row,
            enter,
        );
        basis[pivot_row] = enter;
    }

    if objective.is_positive() {
        return Ok(Feasibility::Infeasible);
    }
    let mut z = vec![T::zero(); n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            z[b] = rhs_col[i].clone();
        }
    }
    let point: Vec<T> = z
        .into_iter()
        .zip(&sys.bounds)
        .map(|(z, (lo, _))| z + lo.clone())
        .collect();
    if !sys.contains(&point) {
        return Err(internal(
            "simplex returned a point that violates the system",
        ));
    }
    Ok(Feasibility::Feasible(point))
}

fn pivot<T: ExactField>(
    tableau: &mut [Vec<T>],
    rhs: &mut [T],
    reduced: &mut [T],
    objective: &mut T,
    row: usize,
    col: usize,
) {
    let p = tableau[row][col].clone();
    for v in tableau[row].iter_mut() {
        if !v.is_zero() {
            *v = v.clone() / p.clone();
        }
    }
    rhs[row] = rhs[row].clone() / p;
    let pivot_line = tableau[row].clone();
    let pivot_rhs = rhs[row].clone();
    let nonzero: Vec<usize> = (0..pivot_line.len())
        .filter(|&j| !pivot_line[j].is_zero())
        .collect();
    for (i, line) in tableau.iter_mut().enumerate() {
        if i == row || line[col].is_zero() {
            continue;
        }
        let f = line[col].clone();
        for &j in &nonzero {
            line[j] = line[j].clone() - f.clone() * pivot_line[j].clone();
        }
        rhs[i] = rhs[i].clone() - f * pivot_rhs.clone();
    }
    if !reduced[col].is_zero() {
        let f = reduced[col].clone();
        for &j in &nonzero {
            reduced[j] = reduced[j].clone() - f.clone() * pivot_line[j].clone();
        }
        *objective = objective.clone() + f * pivot_rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn contradictory_rows_are_infeasible() {
        let mut sys = LinearSystem::new(1, q(-10, 1), q(10, 1));
        sys.add_row(vec![q(1, 1)], Relation::Ge, q(1, 1)).unwrap();
        sys.add_row(vec![q(1, 1)], Relation::Le, q(0, 1)).unwrap();
        assert_eq!(feasible_point(&sys).unwrap(), Feasibility::Infeasible);
    }

    #[test]
    fn contradictory_bounds_are_infeasible() {
        let sys = LinearSystem::new(1, q(1, 1), q(0, 1));
        assert_eq!(feasible_point(&sys).unwrap(), Feasibility::Infeasible);
    }

    #[test]
    fn box_only_returns_lower_corner() {
        let sys = LinearSystem::new(1, q(0, 1), q(1, 1));
        assert_eq!(
            feasible_point(&sys).unwrap(),
            Feasibility::Feasible(vec![q(0, 1)])
        );
    }

    #[test]
    fn fractional_vertex() {
        // x + y >= 3/2, x - y = 0 via two rows, box [0, 1].
        let mut sys = LinearSystem::new(2, q(0, 1), q(1, 1));
        sys.add_row(vec![q(1, 1), q(1, 1)], Relation::Ge, q(3, 2))
            .unwrap();
        sys.add_row(vec![q(1, 1), q(-1, 1)], Relation::Le, q(0, 1))
            .unwrap();
        sys.add_row(vec![q(1, 1), q(-1, 1)], Relation::Ge, q(0, 1))
            .unwrap();
        let p = feasible_point(&sys).unwrap().point().unwrap();
        assert!(sys.contains(&p));
        assert_eq!(p[0], p[1]);
    }

    #[test]
    fn negative_bounds_shift() {
        let mut sys = LinearSystem::new(2, q(-5, 1), q(-2, 1));
        sys.add_row(vec![q(1, 1), q(1, 1)], Relation::Le, q(-9, 1))
            .unwrap();
        let p = feasible_point(&sys).unwrap().point().unwrap();
        assert!(sys.contains(&p));
    }

    #[test]
    fn row_length_checked() {
        let mut sys = LinearSystem::new(2, q(0, 1), q(1, 1));
        assert!(sys.add_row(vec![q(1, 1)], Relation::Le, q(0, 1)).is_err());
    }
}
