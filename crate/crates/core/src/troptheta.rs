//! Tropical theta values, Delaunay sets and maximal linear forms.
//!
//! `Θ_B(α) = max_{x ∈ ℤⁿ} (α B xᵀ − ½ x B xᵀ)` is computed exactly through
//! the closest-vector reformulation `Θ_B(α) = ½ α B αᵀ − ½ min_x (x−α)B(x−α)ᵀ`.
//! The minimizers are enumerated by Schnorr–Euchner style sphere decoding on
//! the exact LDLᵀ decomposition of `B`; square roots never appear because
//! candidates are generated outward from the interval center and compared by
//! squared cost.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_traits::{Signed, Zero};

use crate::exact::{self, Ldlt};
use crate::period::{LinearForm, PeriodError, SymbolicPeriodMatrix, TropicalPeriodMatrix};
use crate::{rat, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TropError {
    Period(PeriodError),
    AlphaDimension { expected: usize, got: usize },
}

impl fmt::Display for TropError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropError::Period(e) => write!(f, "{e}"),
            TropError::AlphaDimension { expected, got } => {
                write!(f, "alpha has length {got}, expected {expected}")
            }
        }
    }
}

impl From<PeriodError> for TropError {
    fn from(e: PeriodError) -> Self {
        TropError::Period(e)
    }
}

/// All lattice points attaining `Θ_B(α)`, with the attained value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelaunaySet {
    pub points: Vec<Vec<i64>>,
    pub value: Rat,
}

/// Result of the exact closest-vector enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CvpOutcome {
    /// `min_x (x−α) B (x−α)ᵀ`
    pub dist2: Rat,
    /// every minimizer, sorted lexicographically
    pub points: Vec<Vec<i64>>,
}

struct Enumerator<'a> {
    factor: &'a Ldlt,
    alpha: &'a [Rat],
    x: Vec<i64>,
    y: Vec<Rat>,
    bound: Rat,
    points: Vec<Vec<i64>>,
}

impl Enumerator<'_> {
    /// Enumerate level `i`, having fixed coordinates `i+1..n` with partial
    /// cost `partial ≤ bound`. Candidates for `x_i` are visited outward from
    /// the interval center, so the first failing candidate ends the level.
    fn descend(&mut self, i: usize, partial: &Rat) {
        let mut center = self.alpha[i].clone();
        for j in i + 1..self.alpha.len() {
            center -= &self.factor.lower[j][i] * &self.y[j];
        }
        let start = exact::nearest_i64(&center);
        let sigma: i64 = if Rat::from_integer(start.into()) <= center { 1 } else { -1 };
        let mut k = 0i64;
        loop {
            // start, start+σ, start−σ, start+2σ, … has nondecreasing |x−center|
            let cand = if k == 0 {
                start
            } else if k % 2 == 1 {
                start + sigma * (k + 1) / 2
            } else {
                start - sigma * k / 2
            };
            let dev = Rat::from_integer(cand.into()) - &center;
            let cost = partial + &dev * &dev * &self.factor.diag[i];
            if cost > self.bound {
                // |cand − center| is nondecreasing along the zig-zag, so the
                // first failure ends the level
                return;
            }
            self.x[i] = cand;
            self.y[i] = Rat::from_integer(cand.into()) - &self.alpha[i];
            if i == 0 {
                self.leaf(cost.clone());
            } else {
                self.descend(i - 1, &cost);
            }
            k += 1;
        }
    }

    fn leaf(&mut self, total: Rat) {
        if total < self.bound {
            self.bound = total;
            self.points.clear();
            self.points.push(self.x.clone());
        } else if total == self.bound {
            self.points.push(self.x.clone());
        }
    }
}

/// Exact CVP: all `x ∈ ℤⁿ` minimizing `(x−α) B (x−α)ᵀ`.
pub fn closest_vectors(
    b: &TropicalPeriodMatrix,
    alpha: &[Rat],
) -> Result<CvpOutcome, TropError> {
    let n = b.dim();
    if alpha.len() != n {
        return Err(TropError::AlphaDimension { expected: n, got: alpha.len() });
    }
    if n == 0 {
        return Ok(CvpOutcome { dist2: Rat::zero(), points: vec![vec![]] });
    }
    let factor = exact::ldlt(b.entries()).ok_or(PeriodError::NotPositiveDefinite)?;
    // Babai rounding gives the initial pruning radius.
    let x0: Vec<i64> = alpha.iter().map(exact::nearest_i64).collect();
    let y0: Vec<Rat> =
        x0.iter().zip(alpha.iter()).map(|(&x, a)| Rat::from_integer(x.into()) - a).collect();
    let bound = exact::bilinear(&y0, b.entries(), &y0);
    let mut en = Enumerator {
        factor: &factor,
        alpha,
        x: vec![0; n],
        y: vec![Rat::zero(); n],
        bound,
        points: Vec::new(),
    };
    en.descend(n - 1, &Rat::zero());
    let mut points = en.points;
    points.sort_unstable();
    points.dedup();
    debug_assert!(!points.is_empty());
    Ok(CvpOutcome { dist2: en.bound, points })
}

fn objective(b: &TropicalPeriodMatrix, alpha: &[Rat], x: &[i64]) -> Rat {
    let xr = exact::ints_to_rats(x);
    let half = rat(1, 2);
    exact::bilinear(alpha, b.entries(), &xr) - half * exact::bilinear(&xr, b.entries(), &xr)
}

/// `Θ_B(α)`, exact.
///
/// Computed through the CVP route and cross-checked against the primal
/// objective on a maximizer; the two agree identically in exact arithmetic,
/// so a mismatch would indicate memory corruption rather than roundoff.
pub fn tropical_theta(b: &TropicalPeriodMatrix, alpha: &[Rat]) -> Result<Rat, TropError> {
    Ok(delaunay_set(b, alpha)?.value)
}

/// The Delaunay set `D_{α,B}` with its attained value.
pub fn delaunay_set(b: &TropicalPeriodMatrix, alpha: &[Rat]) -> Result<DelaunaySet, TropError> {
    let cvp = closest_vectors(b, alpha)?;
    let half = rat(1, 2);
    let value = &half * exact::bilinear(alpha, b.entries(), alpha) - &half * &cvp.dist2;
    if let Some(x) = cvp.points.first() {
        let primal = objective(b, alpha, x);
        assert_eq!(primal, value, "CVP duality violated: internal inconsistency");
    }
    Ok(DelaunaySet { points: cvp.points, value })
}

/// A maximal linear form for `α` together with its witnesses `D_{α,a}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalForm {
    pub form: LinearForm,
    pub witnesses: Vec<Vec<i64>>,
}

/// The symbolic objective `a(x) = α B_Δ xᵀ − ½ x B_Δ xᵀ`.
pub fn symbolic_objective(
    sym: &SymbolicPeriodMatrix,
    alpha: &[Rat],
    x: &[i64],
) -> Result<LinearForm, TropError> {
    if alpha.len() != sym.dim() {
        return Err(TropError::AlphaDimension { expected: sym.dim(), got: alpha.len() });
    }
    let mut lin = LinearForm::zero(sym.num_edges());
    for (j, aj) in alpha.iter().enumerate() {
        if aj.is_zero() {
            continue;
        }
        for (k, &xk) in x.iter().enumerate() {
            if xk != 0 {
                lin = &lin + &sym.entry(j, k).scale(&(aj * Rat::from_integer(xk.into())));
            }
        }
    }
    let quad = sym.quadratic_form(x, x)?;
    Ok(&lin - &quad.scale(&rat(1, 2)))
}

/// Delaunay points of the specialized matrix, grouped by their symbolic
/// forms. Every returned form is maximal for `α`: a dominating candidate
/// would evaluate strictly above `Θ_{B_C}(α)` at the (positive) length
/// function, contradicting optimality.
pub fn maximal_forms_at(
    sym: &SymbolicPeriodMatrix,
    lengths: &[Rat],
    alpha: &[Rat],
) -> Result<Vec<MaximalForm>, TropError> {
    let b = sym.specialize(lengths)?;
    let d = delaunay_set(&b, alpha)?;
    let mut groups: BTreeMap<Vec<Rat>, MaximalForm> = BTreeMap::new();
    for x in &d.points {
        let form = symbolic_objective(sym, alpha, x)?;
        groups
            .entry(form.coeffs().to_vec())
            .or_insert_with(|| MaximalForm { form, witnesses: Vec::new() })
            .witnesses
            .push(x.clone());
    }
    Ok(groups.into_values().collect())
}

/// Best-effort enumeration of all maximal elements for `α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalElements {
    pub forms: Vec<MaximalForm>,
    /// true iff the form set did not change when the enumeration box was
    /// doubled
    pub stable: bool,
    pub radius: i64,
}

/// All integer vectors with `‖x‖∞ ≤ radius`; `n = 0` yields the empty vector.
pub(crate) fn box_points(n: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut x = vec![-radius; n];
    loop {
        out.push(x.clone());
        let mut i = 0;
        while i < n && x[i] == radius {
            x[i] = -radius;
            i += 1;
        }
        if i == n {
            return out;
        }
        x[i] += 1;
    }
}

fn maximal_in_box(
    sym: &SymbolicPeriodMatrix,
    alpha: &[Rat],
    radius: i64,
) -> Result<Vec<MaximalForm>, TropError> {
    let mut candidates: BTreeMap<Vec<Rat>, MaximalForm> = BTreeMap::new();
    for xs in box_points(sym.dim(), radius) {
        let form = symbolic_objective(sym, alpha, &xs)?;
        candidates
            .entry(form.coeffs().to_vec())
            .or_insert_with(|| MaximalForm { form, witnesses: Vec::new() })
            .witnesses
            .push(xs);
    }
    // skyline filter: O(candidates × maximal), the maximal set stays small
    let mut maximal: Vec<MaximalForm> = Vec::new();
    'outer: for (_, mf) in candidates {
        let mut k = 0;
        while k < maximal.len() {
            if mf.form.dominated_by(&maximal[k].form) {
                continue 'outer;
            }
            if maximal[k].form.dominated_by(&mf.form) {
                maximal.swap_remove(k);
            } else {
                k += 1;
            }
        }
        maximal.push(mf);
    }
    maximal.sort_by(|a, b| a.form.coeffs().cmp(b.form.coeffs()));
    Ok(maximal)
}

/// Enumerates candidate `x` in `‖x‖∞ ≤ radius`, keeps the coefficientwise
/// maximal forms, re-runs at doubled radius and reports whether the set
/// stabilized. Completeness for a *given* length function is what
/// [`maximal_forms_at`] provides; this is the heuristic-with-certificate
/// variant over all length functions.
pub fn maximal_elements(
    sym: &SymbolicPeriodMatrix,
    alpha: &[Rat],
    radius: i64,
) -> Result<MaximalElements, TropError> {
    let radius = radius.max(1);
    let first = maximal_in_box(sym, alpha, radius)?;
    let second = maximal_in_box(sym, alpha, radius * 2)?;
    let stable = first.iter().map(|m| &m.form).eq(second.iter().map(|m| &m.form));
    Ok(MaximalElements { forms: second, stable, radius: radius * 2 })
}

/// Exact verification of the decomposition identity: `Θ_{B_C}(α)` equals the
/// maximum of `Σ_e a_e l(e)` over maximal forms, and the witnesses of the
/// achieving forms partition `D_{α,B_C}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thm36Report {
    pub theta: Rat,
    pub delaunay: DelaunaySet,
    pub achieving: Vec<MaximalForm>,
    pub enumerated: MaximalElements,
    pub pass: bool,
    pub failures: Vec<String>,
}

pub fn verify_decomposition(
    sym: &SymbolicPeriodMatrix,
    lengths: &[Rat],
    alpha: &[Rat],
    radius: i64,
) -> Result<Thm36Report, TropError> {
    use alloc::format;
    let b = sym.specialize(lengths)?;
    let delaunay = delaunay_set(&b, alpha)?;
    let theta = delaunay.value.clone();
    let achieving = maximal_forms_at(sym, lengths, alpha)?;
    // widen the box so that it surely contains the Delaunay witnesses
    let dmax = delaunay
        .points
        .iter()
        .flat_map(|p| p.iter().map(|v| v.abs()))
        .max()
        .unwrap_or(0);
    let enumerated = maximal_elements(sym, alpha, radius.max(dmax + 1))?;
    let mut failures = Vec::new();
    for mf in &achieving {
        if mf.form.eval(lengths) != theta {
            failures.push(format!("achieving form does not evaluate to theta: {:?}", mf.form));
        }
    }
    let mut union: Vec<Vec<i64>> = achieving.iter().flat_map(|m| m.witnesses.clone()).collect();
    union.sort_unstable();
    let before = union.len();
    union.dedup();
    if union.len() != before {
        failures.push("witness sets of achieving forms overlap".into());
    }
    if union != delaunay.points {
        failures.push("witnesses of achieving forms do not cover the Delaunay set".into());
    }
    for mf in &enumerated.forms {
        if mf.form.eval(lengths) > theta {
            failures.push(format!(
                "enumerated maximal form exceeds theta at this length function: {:?}",
                mf.form
            ));
        }
    }
    for mf in &achieving {
        if !enumerated.forms.iter().any(|e| e.form == mf.form) {
            failures.push("achieving form missing from enumeration box".into());
        }
    }
    let pass = failures.is_empty();
    Ok(Thm36Report { theta, delaunay, achieving, enumerated, pass, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle_basis, tests as graph_tests};
    use crate::period::{period_matrix, symbolic_period_matrix};
    use crate::{rat, rat_int};

    fn matrix(entries: &[&[i64]]) -> TropicalPeriodMatrix {
        TropicalPeriodMatrix::new(
            entries.iter().map(|r| r.iter().map(|&v| rat_int(v)).collect()).collect(),
        )
        .unwrap()
    }

    /// Exhaustive box search, the independent oracle for the sphere decoder.
    pub(crate) fn brute_force_delaunay(
        b: &TropicalPeriodMatrix,
        alpha: &[Rat],
        radius: i64,
    ) -> DelaunaySet {
        let n = b.dim();
        let mut best: Option<Rat> = None;
        let mut points: Vec<Vec<i64>> = Vec::new();
        let total = (2 * radius + 1).pow(n as u32);
        for idx in 0..total {
            let mut rem = idx;
            let mut x = vec![0i64; n];
            for xi in x.iter_mut() {
                *xi = rem % (2 * radius + 1) - radius;
                rem /= 2 * radius + 1;
            }
            let val = objective(b, alpha, &x);
            match &best {
                Some(b0) if val < *b0 => {}
                Some(b0) if val == *b0 => points.push(x),
                _ => {
                    best = Some(val);
                    points.retain(|_| false);
                    points.push(x);
                }
            }
        }
        points.sort_unstable();
        DelaunaySet { points, value: best.unwrap() }
    }

    #[test]
    fn alpha_zero_gives_origin() {
        let b = matrix(&[&[2, 1], &[1, 2]]);
        let d = delaunay_set(&b, &[rat_int(0), rat_int(0)]).unwrap();
        assert_eq!(d.value, rat_int(0));
        assert_eq!(d.points, vec![vec![0, 0]]);
    }

    #[test]
    fn one_dim_quarter_and_half() {
        let b = matrix(&[&[4]]);
        let d = delaunay_set(&b, &[rat(1, 4)]).unwrap();
        let oracle = brute_force_delaunay(&b, &[rat(1, 4)], 10);
        assert_eq!(d.value, rat_int(0));
        assert_eq!(d.points, vec![vec![0]]);
        assert_eq!((d.points.clone(), d.value.clone()), (oracle.points, oracle.value));

        let d = delaunay_set(&b, &[rat(1, 2)]).unwrap();
        let oracle = brute_force_delaunay(&b, &[rat(1, 2)], 10);
        assert_eq!(d.value, rat_int(0));
        assert_eq!(d.points, vec![vec![0], vec![1]]);
        assert_eq!(d.points, oracle.points);
    }

    #[test]
    fn two_dim_tie_matches_brute_force() {
        let b = matrix(&[&[2, 1], &[1, 2]]);
        let alpha = [rat(1, 2), rat(1, 2)];
        let d = delaunay_set(&b, &alpha).unwrap();
        let oracle = brute_force_delaunay(&b, &alpha, 10);
        assert_eq!(d.points, oracle.points);
        assert_eq!(d.value, oracle.value);
        // the tie here is the antidiagonal pair
        assert_eq!(d.points, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(d.value, rat(1, 2));
    }

    #[test]
    fn integral_alpha_is_its_own_maximizer() {
        let b = matrix(&[&[3, 1], &[1, 5]]);
        let alpha = [rat_int(2), rat_int(-1)];
        let d = delaunay_set(&b, &alpha).unwrap();
        assert_eq!(d.points, vec![vec![2, -1]]);
        let half_abba = rat(1, 2) * exact::bilinear(&alpha, b.entries(), &alpha);
        assert_eq!(d.value, half_abba);
    }

    #[test]
    fn empty_dimension() {
        let b = TropicalPeriodMatrix::new(vec![]).unwrap();
        let d = delaunay_set(&b, &[]).unwrap();
        assert_eq!(d.value, rat_int(0));
        assert_eq!(d.points, vec![Vec::<i64>::new()]);
    }

    #[test]
    fn quasi_periodicity_shift() {
        let b = matrix(&[&[2, 1], &[1, 4]]);
        let alpha = [rat(3, 7), rat(-5, 3)];
        let lambda = [2i64, -1];
        let shifted: Vec<Rat> = alpha
            .iter()
            .zip(lambda.iter())
            .map(|(a, &l)| a + rat_int(l))
            .collect();
        let d0 = delaunay_set(&b, &alpha).unwrap();
        let d1 = delaunay_set(&b, &shifted).unwrap();
        let lam_r = exact::ints_to_rats(&lambda);
        let expected = &d0.value
            + exact::bilinear(&alpha, b.entries(), &lam_r)
            + rat(1, 2) * exact::bilinear(&lam_r, b.entries(), &lam_r);
        assert_eq!(d1.value, expected);
        let shifted_pts: Vec<Vec<i64>> = d0
            .points
            .iter()
            .map(|p| p.iter().zip(lambda.iter()).map(|(a, b)| a + b).collect())
            .collect();
        assert_eq!(d1.points, shifted_pts);
    }

    #[test]
    fn single_loop_maximal_forms() {
        let c = graph_tests::single_loop(0, rat_int(4));
        let basis = cycle_basis(&c);
        let sym = symbolic_period_matrix(&basis);

        // α = 1/2: x = 0 and x = 1 give the same (zero) form
        let groups = maximal_forms_at(&sym, &c.lengths(), &[rat(1, 2)]).unwrap();
        assert_eq!(groups.len(), 1);
        assert!(groups[0].form.is_zero());
        assert_eq!(groups[0].witnesses, vec![vec![0], vec![1]]);

        // α = 1/4: the form −t/4 at x=1 is dominated by 0
        let me = maximal_elements(&sym, &[rat(1, 4)], 4).unwrap();
        assert!(me.stable);
        assert_eq!(me.forms.len(), 1);
        assert!(me.forms[0].form.is_zero());

        // α = 3/4: t/4 at x=1 dominates 0
        let me = maximal_elements(&sym, &[rat(3, 4)], 4).unwrap();
        assert!(me.stable);
        assert_eq!(me.forms.len(), 1);
        assert_eq!(me.forms[0].form.coeffs(), &[rat(1, 4)]);
        assert_eq!(me.forms[0].witnesses, vec![vec![1]]);

        // α = 0
        let me = maximal_elements(&sym, &[rat_int(0)], 4).unwrap();
        assert_eq!(me.forms.len(), 1);
        assert!(me.forms[0].form.is_zero());
    }

    #[test]
    fn decomposition_report_passes() {
        let c = graph_tests::theta_graph(0, 0, [rat_int(1), rat_int(1), rat_int(1)]);
        let basis = cycle_basis(&c);
        let sym = symbolic_period_matrix(&basis);
        let rep =
            verify_decomposition(&sym, &c.lengths(), &[rat(1, 2), rat_int(0)], 4).unwrap();
        assert!(rep.pass, "{:?}", rep.failures);
        let oracle = brute_force_delaunay(
            &sym.specialize(&c.lengths()).unwrap(),
            &[rat(1, 2), rat_int(0)],
            10,
        );
        assert_eq!(rep.delaunay.points, oracle.points);
    }

    #[test]
    fn tree_graph_decomposition_trivial() {
        let c = graph_tests::curve(&[("a", 0), ("b", 0)], &[("e", "a", "b", rat_int(1))]).unwrap();
        let basis = cycle_basis(&c);
        let sym = symbolic_period_matrix(&basis);
        let rep = verify_decomposition(&sym, &c.lengths(), &[], 2).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.theta, rat_int(0));
    }

    #[test]
    fn theta_graph_oracle_equivalence() {
        let c = graph_tests::theta_graph(0, 0, [rat_int(1), rat_int(2), rat_int(3)]);
        let basis = cycle_basis(&c);
        let b = period_matrix(&c, &basis).unwrap();
        for alpha in [
            [rat(1, 2), rat(1, 3)],
            [rat(-3, 2), rat(7, 4)],
            [rat_int(2), rat(-1, 5)],
        ] {
            let d = delaunay_set(&b, &alpha).unwrap();
            let oracle = brute_force_delaunay(&b, &alpha, 10);
            assert_eq!(d.points, oracle.points);
            assert_eq!(d.value, oracle.value);
        }
    }
}
