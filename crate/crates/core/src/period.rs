//! Tropical period matrices, numeric and symbolic.
//!
//! `B_C = M · diag(l(e)) · Mᵀ` for a cycle basis `M` is kept as exact
//! rationals; the symbolic variant `B_Δ` has entries in `⊕_e ℚ·t_e` and
//! specializes to `B_C` at any positive length function.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use num_traits::Zero;

use crate::exact;
use crate::graph::{CycleBasis, TropicalCurve};
use crate::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PeriodError {
    BasisMismatch,
    DimensionMismatch { expected: usize, got: usize },
    NotPositiveDefinite,
    NonpositiveLength { edge: usize },
}

impl fmt::Display for PeriodError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PeriodError::BasisMismatch => write!(f, "cycle basis does not belong to the curve"),
            PeriodError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            PeriodError::NotPositiveDefinite => write!(f, "matrix is not positive definite"),
            PeriodError::NonpositiveLength { edge } => {
                write!(f, "length function is nonpositive on edge #{edge}")
            }
        }
    }
}

/// Positive definite symmetric bilinear form on the cycle lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalPeriodMatrix {
    entries: Vec<Vec<Rat>>,
}

impl TropicalPeriodMatrix {
    /// Wraps a raw matrix, checking symmetry and exact positive
    /// definiteness.
    pub fn new(entries: Vec<Vec<Rat>>) -> Result<Self, PeriodError> {
        let n = entries.len();
        for row in &entries {
            if row.len() != n {
                return Err(PeriodError::DimensionMismatch { expected: n, got: row.len() });
            }
        }
        for i in 0..n {
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(PeriodError::NotPositiveDefinite);
                }
            }
        }
        if !exact::is_positive_definite(&entries) {
            return Err(PeriodError::NotPositiveDefinite);
        }
        Ok(TropicalPeriodMatrix { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Rat>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i][j]
    }

    /// Exact `x · B · yᵀ` for integer vectors.
    pub fn quadratic_form(&self, x: &[i64], y: &[i64]) -> Result<Rat, PeriodError> {
        if x.len() != self.dim() || y.len() != self.dim() {
            return Err(PeriodError::DimensionMismatch { expected: self.dim(), got: x.len().max(y.len()) });
        }
        Ok(exact::bilinear(&exact::ints_to_rats(x), &self.entries, &exact::ints_to_rats(y)))
    }

    /// Exact `x · B · yᵀ` for rational vectors.
    pub fn bilinear(&self, x: &[Rat], y: &[Rat]) -> Result<Rat, PeriodError> {
        if x.len() != self.dim() || y.len() != self.dim() {
            return Err(PeriodError::DimensionMismatch { expected: self.dim(), got: x.len().max(y.len()) });
        }
        Ok(exact::bilinear(x, &self.entries, y))
    }

    pub fn det(&self) -> Rat {
        exact::det(&self.entries)
    }
}

/// `B_C[j][k] = Σ_e l(e)·M[j][e]·M[k][e]`, exact.
pub fn period_matrix(
    curve: &TropicalCurve,
    basis: &CycleBasis,
) -> Result<TropicalPeriodMatrix, PeriodError> {
    if !basis.matches(curve) {
        return Err(PeriodError::BasisMismatch);
    }
    let h1 = basis.h1();
    let lengths = curve.lengths();
    let mut entries = vec![vec![Rat::zero(); h1]; h1];
    for j in 0..h1 {
        for k in j..h1 {
            let mut s = Rat::zero();
            for (e, l) in lengths.iter().enumerate() {
                let c = basis.matrix[j][e] * basis.matrix[k][e];
                if c != 0 {
                    s += l * Rat::from_integer(c.into());
                }
            }
            entries[j][k] = s.clone();
            entries[k][j] = s;
        }
    }
    TropicalPeriodMatrix::new(entries)
}

/// Element of `⊕_e ℚ·t_e`, stored densely over a fixed edge ordering.
///
/// The only order on forms is the coefficientwise partial order exposed
/// through [`LinearForm::le`]; deliberately no `Ord` impl.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    coeffs: Vec<Rat>,
}

impl LinearForm {
    pub fn zero(num_edges: usize) -> Self {
        LinearForm { coeffs: vec![Rat::zero(); num_edges] }
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        LinearForm { coeffs }
    }

    /// Unit form `t_e`.
    pub fn variable(num_edges: usize, e: usize) -> Self {
        let mut f = Self::zero(num_edges);
        f.coeffs[e] = Rat::from_integer(1.into());
        f
    }

    pub fn num_edges(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, e: usize) -> &Rat {
        &self.coeffs[e]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    pub fn scale(&self, c: &Rat) -> LinearForm {
        LinearForm { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Specialize `t_e ↦ l(e)`.
    pub fn eval(&self, lengths: &[Rat]) -> Rat {
        let mut s = Rat::zero();
        for (c, l) in self.coeffs.iter().zip(lengths.iter()) {
            if !c.is_zero() {
                s += c * l;
            }
        }
        s
    }

    /// Coefficientwise partial order: `self ≤ other` everywhere.
    pub fn le(&self, other: &LinearForm) -> bool {
        self.coeffs.iter().zip(other.coeffs.iter()).all(|(a, b)| a <= b)
    }

    /// `other` dominates `self`: `self ≤ other` and they differ.
    pub fn dominated_by(&self, other: &LinearForm) -> bool {
        self != other && self.le(other)
    }
}

impl Add for &LinearForm {
    type Output = LinearForm;
    fn add(self, rhs: &LinearForm) -> LinearForm {
        LinearForm {
            coeffs: self.coeffs.iter().zip(rhs.coeffs.iter()).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &LinearForm {
    type Output = LinearForm;
    fn sub(self, rhs: &LinearForm) -> LinearForm {
        LinearForm {
            coeffs: self.coeffs.iter().zip(rhs.coeffs.iter()).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &LinearForm {
    type Output = LinearForm;
    fn neg(self) -> LinearForm {
        LinearForm { coeffs: self.coeffs.iter().map(|a| -a.clone()).collect() }
    }
}

impl Mul<&Rat> for &LinearForm {
    type Output = LinearForm;
    fn mul(self, rhs: &Rat) -> LinearForm {
        self.scale(rhs)
    }
}

/// `B_Δ` with `LinearForm` entries; symmetric by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicPeriodMatrix {
    entries: Vec<Vec<LinearForm>>,
    num_edges: usize,
}

impl SymbolicPeriodMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn entries(&self) -> &[Vec<LinearForm>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &LinearForm {
        &self.entries[i][j]
    }

    /// Specialize every entry at a positive length function.
    pub fn specialize(&self, lengths: &[Rat]) -> Result<TropicalPeriodMatrix, PeriodError> {
        if let Some(e) = lengths.iter().position(|l| *l <= Rat::zero()) {
            return Err(PeriodError::NonpositiveLength { edge: e });
        }
        if lengths.len() != self.num_edges {
            return Err(PeriodError::DimensionMismatch { expected: self.num_edges, got: lengths.len() });
        }
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|f| f.eval(lengths)).collect())
            .collect();
        TropicalPeriodMatrix::new(entries)
    }

    /// Exact `x · B_Δ · yᵀ` as a linear form.
    pub fn quadratic_form(&self, x: &[i64], y: &[i64]) -> Result<LinearForm, PeriodError> {
        if x.len() != self.dim() || y.len() != self.dim() {
            return Err(PeriodError::DimensionMismatch { expected: self.dim(), got: x.len().max(y.len()) });
        }
        let mut acc = LinearForm::zero(self.num_edges);
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                let c = xi * yj;
                if c != 0 {
                    acc = &acc + &self.entries[i][j].scale(&Rat::from_integer(c.into()));
                }
            }
        }
        Ok(acc)
    }
}

/// `B_Δ[j][k] = Σ_e M[j][e]·M[k][e]·t_e` over the basis' edge ordering.
pub fn symbolic_period_matrix(basis: &CycleBasis) -> SymbolicPeriodMatrix {
    let h1 = basis.h1();
    let ne = basis.num_edges;
    let mut entries = vec![vec![LinearForm::zero(ne); h1]; h1];
    for j in 0..h1 {
        for k in 0..h1 {
            let mut coeffs = vec![Rat::zero(); ne];
            for (e, c) in coeffs.iter_mut().enumerate() {
                let v = basis.matrix[j][e] * basis.matrix[k][e];
                if v != 0 {
                    *c = Rat::from_integer(v.into());
                }
            }
            entries[j][k] = LinearForm::from_coeffs(coeffs);
        }
    }
    SymbolicPeriodMatrix { entries, num_edges: ne }
}
