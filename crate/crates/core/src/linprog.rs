//! Exact two-phase simplex over rationals.
//!
//! Variables are free; internally each one is split as `x = x⁺ − x⁻`. Every
//! constraint gets a slack (inequalities) and an artificial column, and the
//! rows are sign-normalized so the right-hand side is nonnegative. Pivoting
//! follows Bland's rule, so the method terminates on degenerate programs.
//!
//! Every outcome carries a certificate that can be checked by substitution:
//! a feasible assignment (plus dual multipliers at an optimum), a Farkas
//! combination of the rows proving infeasibility, or an improving ray.

use std::fmt::Write as _;

use log::trace;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::dot;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub coeffs: Vec<Scalar>,
    pub relation: Relation,
    pub rhs: Scalar,
}

impl Constraint {
    pub fn new(coeffs: Vec<Scalar>, relation: Relation, rhs: Scalar) -> Self {
        Constraint { coeffs, relation, rhs }
    }

    pub fn eq(coeffs: Vec<Scalar>, rhs: Scalar) -> Self {
        Constraint::new(coeffs, Relation::Eq, rhs)
    }

    pub fn ge(coeffs: Vec<Scalar>, rhs: Scalar) -> Self {
        Constraint::new(coeffs, Relation::Ge, rhs)
    }

    pub fn le(coeffs: Vec<Scalar>, rhs: Scalar) -> Self {
        Constraint::new(coeffs, Relation::Le, rhs)
    }

    pub fn is_satisfied(&self, x: &[Scalar]) -> bool {
        let lhs = dot(&self.coeffs, x);
        match self.relation {
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
            Relation::Le => lhs <= self.rhs,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Maximize,
    Minimize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Objective {
    pub coeffs: Vec<Scalar>,
    pub direction: Direction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub constraints: Vec<Constraint>,
    pub objective: Option<Objective>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram { num_vars, constraints: Vec::new(), objective: None }
    }

    pub fn with_constraints(num_vars: usize, constraints: Vec<Constraint>) -> Self {
        LinearProgram { num_vars, constraints, objective: None }
    }

    pub fn push(&mut self, c: Constraint) {
        self.constraints.push(c);
    }

    pub fn maximize(mut self, coeffs: Vec<Scalar>) -> Self {
        self.objective = Some(Objective { coeffs, direction: Direction::Maximize });
        self
    }

    pub fn minimize(mut self, coeffs: Vec<Scalar>) -> Self {
        self.objective = Some(Objective { coeffs, direction: Direction::Minimize });
        self
    }

    fn validate(&self) -> Result<()> {
        for c in &self.constraints {
            if c.coeffs.len() != self.num_vars {
                return Err(Error::DimensionMismatch { expected: self.num_vars, found: c.coeffs.len() });
            }
        }
        if let Some(obj) = &self.objective {
            if obj.coeffs.len() != self.num_vars {
                return Err(Error::DimensionMismatch { expected: self.num_vars, found: obj.coeffs.len() });
            }
        }
        Ok(())
    }

    pub fn is_feasible_assignment(&self, x: &[Scalar]) -> bool {
        x.len() == self.num_vars && self.constraints.iter().all(|c| c.is_satisfied(x))
    }

    /// Checks a Farkas certificate `w` (one multiplier per row):
    /// `Σ wᵢ aᵢ = 0`, `Σ wᵢ bᵢ > 0`, `wᵢ ≥ 0` on `≥` rows and `wᵢ ≤ 0` on `≤` rows.
    /// Any feasible `x` would give `0 = Σ wᵢ aᵢ·x ≥ Σ wᵢ bᵢ > 0`.
    pub fn verify_farkas(&self, w: &[Scalar]) -> bool {
        if w.len() != self.constraints.len() {
            return false;
        }
        let signs_ok = self.constraints.iter().zip(w).all(|(c, wi)| match c.relation {
            Relation::Eq => true,
            Relation::Ge => !wi.is_negative(),
            Relation::Le => !wi.is_positive(),
        });
        let combo_zero = (0..self.num_vars)
            .all(|j| self.constraints.iter().zip(w).map(|(c, wi)| wi * &c.coeffs[j]).sum::<Scalar>().is_zero());
        let rhs: Scalar = self.constraints.iter().zip(w).map(|(c, wi)| wi * &c.rhs).sum();
        signs_ok && combo_zero && rhs.is_positive()
    }

    /// Checks dual multipliers `u` for an optimum of value `value`:
    /// `Σ uᵢ aᵢ = c`, `Σ uᵢ bᵢ = value`, and the sign pattern that makes
    /// `u` a valid bound (for maximization `uᵢ ≥ 0` on `≤` rows and `uᵢ ≤ 0`
    /// on `≥` rows; reversed for minimization).
    pub fn verify_dual(&self, u: &[Scalar], value: &Scalar) -> bool {
        let Some(obj) = &self.objective else { return false };
        if u.len() != self.constraints.len() {
            return false;
        }
        let max = obj.direction == Direction::Maximize;
        let signs_ok = self.constraints.iter().zip(u).all(|(c, ui)| match (c.relation, max) {
            (Relation::Eq, _) => true,
            (Relation::Le, true) | (Relation::Ge, false) => !ui.is_negative(),
            (Relation::Ge, true) | (Relation::Le, false) => !ui.is_positive(),
        });
        let combo_ok = (0..self.num_vars).all(|j| {
            self.constraints.iter().zip(u).map(|(c, ui)| ui * &c.coeffs[j]).sum::<Scalar>() == obj.coeffs[j]
        });
        let rhs: Scalar = self.constraints.iter().zip(u).map(|(c, ui)| ui * &c.rhs).sum();
        signs_ok && combo_ok && rhs == *value
    }

    /// A ray `d` is improving when it keeps every row feasible
    /// (`aᵢ·d` = / ≥ / ≤ 0 as the relation dictates) and strictly improves the objective.
    pub fn verify_ray(&self, d: &[Scalar]) -> bool {
        let Some(obj) = &self.objective else { return false };
        let rows_ok = self.constraints.iter().all(|c| {
            let ad = dot(&c.coeffs, d);
            match c.relation {
                Relation::Eq => ad.is_zero(),
                Relation::Ge => !ad.is_negative(),
                Relation::Le => !ad.is_positive(),
            }
        });
        let gain = dot(&obj.coeffs, d);
        rows_ok
            && match obj.direction {
                Direction::Maximize => gain.is_positive(),
                Direction::Minimize => gain.is_negative(),
            }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpOutcome {
    Feasible {
        assignment: Vec<Scalar>,
        objective_value: Option<Scalar>,
        /// Optimal dual multipliers, one per constraint, when an objective was given.
        dual: Option<Vec<Scalar>>,
    },
    Infeasible {
        farkas_certificate: Vec<Scalar>,
    },
    Unbounded {
        assignment: Vec<Scalar>,
        ray: Vec<Scalar>,
    },
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible { .. })
    }

    pub fn assignment(&self) -> Option<&[Scalar]> {
        match self {
            LpOutcome::Feasible { assignment, .. } | LpOutcome::Unbounded { assignment, .. } => Some(assignment),
            LpOutcome::Infeasible { .. } => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub phase1_pivots: usize,
    pub phase2_pivots: usize,
}

impl SolveStats {
    pub fn pivots(&self) -> usize {
        self.phase1_pivots + self.phase2_pivots
    }
}

pub fn solve(lp: &LinearProgram) -> Result<LpOutcome> {
    solve_with_stats(lp).map(|(o, _)| o)
}

/// Phase-1 only: any exact point satisfying all constraints.
pub fn feasible_point(num_vars: usize, constraints: &[Constraint]) -> Result<Option<Vec<Scalar>>> {
    let lp = LinearProgram::with_constraints(num_vars, constraints.to_vec());
    match solve(&lp)? {
        LpOutcome::Feasible { assignment, .. } => Ok(Some(assignment)),
        LpOutcome::Unbounded { .. } => unreachable!("no objective"),
        LpOutcome::Infeasible { .. } => Ok(None),
    }
}

pub fn solve_with_stats(lp: &LinearProgram) -> Result<(LpOutcome, SolveStats)> {
    lp.validate()?;
    let mut tab = Tableau::build(lp);
    let mut stats = SolveStats::default();

    let phase1_cost: Vec<Scalar> = (0..tab.ncols)
        .map(|j| if j >= tab.art_start { Scalar::one() } else { Scalar::zero() })
        .collect();
    tab.set_cost(&phase1_cost);
    tab.dump("phase 1 start");
    let end = tab.run(tab.ncols, &mut stats.phase1_pivots);
    debug_assert!(end.is_none(), "phase 1 is bounded below by zero");
    tab.dump("phase 1 end");

    if tab.obj_value.is_positive() {
        let y = tab.simplex_multipliers(&phase1_cost);
        let w: Vec<Scalar> = y.iter().zip(&tab.row_sign).map(|(yi, s)| yi * s).collect();
        debug_assert!(lp.verify_farkas(&w));
        return Ok((LpOutcome::Infeasible { farkas_certificate: w }, stats));
    }

    tab.drive_out_artificials();

    let Some(obj) = &lp.objective else {
        return Ok((
            LpOutcome::Feasible { assignment: tab.assignment(), objective_value: None, dual: None },
            stats,
        ));
    };

    // Phase 2 minimizes `sign·c·x`.
    let sign = match obj.direction {
        Direction::Maximize => -Scalar::one(),
        Direction::Minimize => Scalar::one(),
    };
    let mut cost = vec![Scalar::zero(); tab.ncols];
    for (k, ck) in obj.coeffs.iter().enumerate() {
        cost[2 * k] = &sign * ck;
        cost[2 * k + 1] = -(&sign * ck);
    }
    tab.set_cost(&cost);
    tab.dump("phase 2 start");
    let blocked = tab.run(tab.art_start, &mut stats.phase2_pivots);
    tab.dump("phase 2 end");

    if let Some(col) = blocked {
        let ray = tab.ray(col);
        return Ok((LpOutcome::Unbounded { assignment: tab.assignment(), ray }, stats));
    }

    let assignment = tab.assignment();
    let value = dot(&obj.coeffs, &assignment);
    let y = tab.simplex_multipliers(&cost);
    // y·A_std ≤ c_std for the minimization of sign·c; undo the row signs and the objective sign.
    let dual: Vec<Scalar> = y.iter().zip(&tab.row_sign).map(|(yi, s)| yi * s * &sign).collect();
    debug_assert!(lp.verify_dual(&dual, &value));
    Ok((
        LpOutcome::Feasible { assignment, objective_value: Some(value), dual: Some(dual) },
        stats,
    ))
}

struct Tableau {
    num_vars: usize,
    /// Rows of `B⁻¹[A | I_art]` followed by the right-hand side.
    rows: Vec<Vec<Scalar>>,
    basis: Vec<usize>,
    row_sign: Vec<Scalar>,
    ncols: usize,
    art_start: usize,
    reduced: Vec<Scalar>,
    obj_value: Scalar,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let m = lp.constraints.len();
        let n = lp.num_vars;
        let num_slack = lp.constraints.iter().filter(|c| c.relation != Relation::Eq).count();
        let art_start = 2 * n + num_slack;
        let ncols = art_start + m;
        let mut rows = Vec::with_capacity(m);
        let mut row_sign = Vec::with_capacity(m);
        let mut slack = 2 * n;
        for (i, c) in lp.constraints.iter().enumerate() {
            let sign = if c.rhs.is_negative() { -Scalar::one() } else { Scalar::one() };
            let mut row = vec![Scalar::zero(); ncols + 1];
            for (k, a) in c.coeffs.iter().enumerate() {
                if !a.is_zero() {
                    row[2 * k] = a * &sign;
                    row[2 * k + 1] = -(a * &sign);
                }
            }
            match c.relation {
                Relation::Eq => {}
                Relation::Le => {
                    row[slack] = sign.clone();
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -sign.clone();
                    slack += 1;
                }
            }
            row[art_start + i] = Scalar::one();
            row[ncols] = &c.rhs * &sign;
            rows.push(row);
            row_sign.push(sign);
        }
        Tableau {
            num_vars: n,
            rows,
            basis: (art_start..art_start + m).collect(),
            row_sign,
            ncols,
            art_start,
            reduced: vec![Scalar::zero(); ncols],
            obj_value: Scalar::zero(),
        }
    }

    fn set_cost(&mut self, cost: &[Scalar]) {
        let mut reduced = cost.to_vec();
        let mut value = Scalar::zero();
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            let row = &self.rows[r];
            for (j, red) in reduced.iter_mut().enumerate() {
                if !row[j].is_zero() {
                    *red -= cb * &row[j];
                }
            }
            value += cb * &row[self.ncols];
        }
        self.reduced = reduced;
        self.obj_value = value;
    }

    /// Bland's rule over columns `< allowed`. Returns the entering column when unbounded.
    fn run(&mut self, allowed: usize, pivots: &mut usize) -> Option<usize> {
        loop {
            let Some(col) = (0..allowed).find(|&j| self.reduced[j].is_negative()) else {
                return None;
            };
            let mut best: Option<(usize, Scalar)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[self.ncols] / &row[col];
                let better = match &best {
                    None => true,
                    Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            let Some((row, _)) = best else { return Some(col) };
            self.pivot(row, col);
            *pivots += 1;
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        let f = self.reduced[c].clone();
        if !f.is_zero() {
            for (x, p) in self.reduced.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
            self.obj_value += &f * &pivot_row[self.ncols];
        }
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Pivots zero-level artificials out of the basis where a structural column allows it.
    /// Rows where none does are redundant and keep their artificial at zero.
    fn drive_out_artificials(&mut self) {
        for r in 0..self.rows.len() {
            if self.basis[r] < self.art_start {
                continue;
            }
            if let Some(c) = (0..self.art_start).find(|&j| !self.rows[r][j].is_zero()) {
                self.pivot(r, c);
            }
        }
    }

    /// `y = c_B·B⁻¹`, read from the artificial block which started as the identity.
    fn simplex_multipliers(&self, cost: &[Scalar]) -> Vec<Scalar> {
        let m = self.rows.len();
        let mut y = vec![Scalar::zero(); m];
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (i, yi) in y.iter_mut().enumerate() {
                let x = &self.rows[r][self.art_start + i];
                if !x.is_zero() {
                    *yi += cb * x;
                }
            }
        }
        y
    }

    fn standard_solution(&self) -> Vec<Scalar> {
        let mut z = vec![Scalar::zero(); self.ncols];
        for (r, &b) in self.basis.iter().enumerate() {
            z[b] = self.rows[r][self.ncols].clone();
        }
        z
    }

    fn to_original(&self, z: &[Scalar]) -> Vec<Scalar> {
        (0..self.num_vars).map(|k| &z[2 * k] - &z[2 * k + 1]).collect()
    }

    fn assignment(&self) -> Vec<Scalar> {
        self.to_original(&self.standard_solution())
    }

    fn ray(&self, col: usize) -> Vec<Scalar> {
        let mut d = vec![Scalar::zero(); self.ncols];
        d[col] = Scalar::one();
        for (r, &b) in self.basis.iter().enumerate() {
            d[b] = -self.rows[r][col].clone();
        }
        self.to_original(&d)
    }

    fn dump(&self, label: &str) {
        if !log::log_enabled!(log::Level::Trace) {
            return;
        }
        let mut out = format!("tableau ({label}): {} rows x {} cols, basis {:?}\n", self.rows.len(), self.ncols, self.basis);
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Scalar::to_string).collect();
            let _ = writeln!(out, "  [{}]", cells.join(" "));
        }
        let cells: Vec<String> = self.reduced.iter().map(Scalar::to_string).collect();
        let _ = writeln!(out, "  reduced [{}] value {}", cells.join(" "), self.obj_value);
        trace!("{out}");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn s(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn maximize_on_interval() {
        let lp = LinearProgram::with_constraints(
            1,
            vec![Constraint::ge(s(&[1]), q(0, 1)), Constraint::le(s(&[1]), q(1, 1))],
        )
        .maximize(s(&[1]));
        match solve(&lp).unwrap() {
            LpOutcome::Feasible { assignment, objective_value, dual } => {
                assert_eq!(assignment, vec![q(1, 1)]);
                assert_eq!(objective_value, Some(q(1, 1)));
                assert!(lp.verify_dual(&dual.unwrap(), &q(1, 1)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn contradictory_bounds_are_certified() {
        let lp = LinearProgram::with_constraints(
            1,
            vec![Constraint::ge(s(&[1]), q(0, 1)), Constraint::le(s(&[1]), q(-1, 1))],
        );
        match solve(&lp).unwrap() {
            LpOutcome::Infeasible { farkas_certificate } => assert!(lp.verify_farkas(&farkas_certificate)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn triangle_centroid_weights() {
        // λ ≥ 0, Σλ = 1, Σλ·v = centroid for v = (0,0), (3,0), (0,3).
        let mut c = vec![
            Constraint::eq(s(&[1, 1, 1]), q(1, 1)),
            Constraint::eq(s(&[0, 3, 0]), q(1, 1)),
            Constraint::eq(s(&[0, 0, 3]), q(1, 1)),
        ];
        for i in 0..3 {
            let mut e = s(&[0, 0, 0]);
            e[i] = q(1, 1);
            c.push(Constraint::ge(e, q(0, 1)));
        }
        let x = feasible_point(3, &c).unwrap().unwrap();
        assert_eq!(x, vec![q(1, 3); 3]);
    }

    #[test]
    fn feasible_point_edge_cases() {
        assert_eq!(feasible_point(1, &[]).unwrap(), Some(vec![q(0, 1)]));
        let c = vec![Constraint::eq(s(&[1]), q(2, 1)), Constraint::eq(s(&[1]), q(3, 1))];
        assert_eq!(feasible_point(1, &c).unwrap(), None);
    }

    #[test]
    fn unbounded_ray() {
        let lp = LinearProgram::with_constraints(2, vec![Constraint::ge(s(&[1, -1]), q(0, 1))])
            .maximize(s(&[1, 1]));
        match solve(&lp).unwrap() {
            LpOutcome::Unbounded { assignment, ray } => {
                assert!(lp.is_feasible_assignment(&assignment));
                assert!(lp.verify_ray(&ray));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_rows() {
        let lp = LinearProgram::with_constraints(2, vec![Constraint::ge(s(&[1]), q(0, 1))]);
        assert!(matches!(solve(&lp), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn redundant_equalities() {
        let c = vec![
            Constraint::eq(s(&[1, 1]), q(1, 1)),
            Constraint::eq(s(&[2, 2]), q(2, 1)),
            Constraint::ge(s(&[1, 0]), q(0, 1)),
            Constraint::ge(s(&[0, 1]), q(0, 1)),
        ];
        let lp = LinearProgram::with_constraints(2, c).maximize(s(&[1, 0]));
        match solve(&lp).unwrap() {
            LpOutcome::Feasible { assignment, objective_value, dual } => {
                assert_eq!(assignment, vec![q(1, 1), q(0, 1)]);
                assert!(lp.verify_dual(&dual.unwrap(), &objective_value.unwrap()));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
