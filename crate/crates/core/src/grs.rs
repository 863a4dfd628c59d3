//! Generalized Reed-Solomon codes and their extended versions.
//!
//! `GRS_k(A, v)` is the set of vectors `(v_1 f(a_1), ..., v_n f(a_n))` for all
//! polynomials `f` of degree below `k`. The extended code appends the
//! coefficient of `x^(k-1)` as one more coordinate (the "∞" point).

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField};
use crate::matrix::Matrix;

/// Where an evaluation point came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PointTag {
    Plain,
    /// Point `index` of coset `coset` in the first or second part of a
    /// two-part coset union.
    Coset { part: CosetPart, coset: u32, index: u32 },
    /// The shift point α added by the length n+2 extension.
    Shift,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CosetPart {
    First,
    Second,
}

/// Ordered distinct points, optionally followed by ∞.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvaluationSet {
    points: Vec<FieldElement>,
    tags: Vec<PointTag>,
    infinity: bool,
}

impl EvaluationSet {
    pub fn new(field: &FiniteField, points: Vec<FieldElement>, infinity: bool) -> Result<Self> {
        let tags = vec![PointTag::Plain; points.len()];
        Self::with_tags(field, points, tags, infinity)
    }

    pub fn with_tags(
        field: &FiniteField,
        points: Vec<FieldElement>,
        tags: Vec<PointTag>,
        infinity: bool,
    ) -> Result<Self> {
        assert_eq!(points.len(), tags.len(), "one tag per point");
        let size = points.len() + infinity as usize;
        if size as u64 > field.order() as u64 + 1 {
            return Err(Error::SetTooLarge { size, max: field.order() as u64 + 1 });
        }
        let mut seen = vec![false; field.order() as usize];
        for &x in &points {
            let idx = field.to_index(x) as usize;
            if seen[idx] {
                return Err(Error::DuplicatePoint(x.to_string()));
            }
            seen[idx] = true;
        }
        Ok(EvaluationSet { points, tags, infinity })
    }

    #[doc(hidden)]
    pub fn new_unchecked(points: Vec<FieldElement>, infinity: bool) -> Self {
        let tags = vec![PointTag::Plain; points.len()];
        EvaluationSet { points, tags, infinity }
    }

    pub fn points(&self) -> &[FieldElement] {
        &self.points
    }

    pub fn tags(&self) -> &[PointTag] {
        &self.tags
    }

    pub fn includes_infinity(&self) -> bool {
        self.infinity
    }

    /// Number of finite points.
    pub fn finite_len(&self) -> usize {
        self.points.len()
    }

    /// Size counting ∞.
    pub fn len(&self) -> usize {
        self.points.len() + self.infinity as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn position(&self, x: FieldElement) -> Option<usize> {
        self.points.iter().position(|&p| p == x)
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        self.position(x).is_some()
    }

    /// Same points with ∞ appended.
    pub fn with_infinity(mut self) -> Self {
        self.infinity = true;
        self
    }
}

/// `δ_A(a) = ∏_{a' ∈ A, a' ≠ a} (a - a')` over the finite points of `set`.
///
/// A one-point set gives the empty product 1.
pub fn delta(field: &FiniteField, set: &EvaluationSet, a: FieldElement) -> Result<FieldElement> {
    let i = set.position(a).ok_or_else(|| Error::PointNotInSet(a.to_string()))?;
    Ok(delta_at(field, set.points(), i))
}

fn delta_at(field: &FiniteField, points: &[FieldElement], i: usize) -> FieldElement {
    let a = points[i];
    points
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .fold(FieldElement::ONE, |acc, (_, &b)| field.mul(acc, field.sub(a, b)))
}

/// δ at every finite point, in point order.
pub fn deltas(field: &FiniteField, set: &EvaluationSet) -> Vec<FieldElement> {
    let points = set.points();
    (0..points.len()).into_par_iter().map(|i| delta_at(field, points, i)).collect()
}

/// `f_A(x) = x^n - 1` for `A` the subgroup of order `n`.
pub fn subgroup_f_eval(field: &FiniteField, n: u64, x: FieldElement) -> Result<FieldElement> {
    check_subgroup_order(field, n)?;
    Ok(field.sub(field.pow(x, n), FieldElement::ONE))
}

/// `f_A(x) = ∏_{a ∈ A} (x - a)` evaluated directly.
pub fn f_eval(field: &FiniteField, set: &EvaluationSet, x: FieldElement) -> FieldElement {
    field.product(set.points().iter().map(|&a| field.sub(x, a)))
}

fn check_subgroup_order(field: &FiniteField, n: u64) -> Result<()> {
    let order = field.order() as u64 - 1;
    if n == 0 || !order.is_multiple_of(n) {
        return Err(Error::NotASubgroupOrder { n, order });
    }
    Ok(())
}

/// The multiplicative subgroup of order `n`, listed as `g^1, ..., g^n` with
/// `g = θ^((q-1)/n)`.
pub fn subgroup(field: &FiniteField, n: u64) -> Result<EvaluationSet> {
    check_subgroup_order(field, n)?;
    let step = (field.order() as u64 - 1) / n;
    let points = (1..=n).map(|j| field.element(step * j)).collect();
    EvaluationSet::new(field, points, false)
}

/// Which lemma or theorem produced a code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    Manual,
    Lemma2,
    Lemma3,
    Corollary1,
    Lemma4,
    Lemma5,
    #[serde(rename = "theorem1-i")]
    Theorem1Even,
    #[serde(rename = "theorem1-ii")]
    Theorem1Odd,
    #[serde(rename = "theorem2-i")]
    Theorem2Odd,
    #[serde(rename = "theorem2-ii")]
    Theorem2Even,
    #[serde(rename = "theorem3-i")]
    Theorem3S,
    #[serde(rename = "theorem3-ii")]
    Theorem3T,
    #[serde(rename = "theorem4-i")]
    Theorem4S,
    #[serde(rename = "theorem4-ii")]
    Theorem4T,
}

impl Construction {
    /// Stable name, as written in code files.
    pub fn label(self) -> &'static str {
        match self {
            Construction::Manual => "manual",
            Construction::Lemma2 => "lemma2",
            Construction::Lemma3 => "lemma3",
            Construction::Corollary1 => "corollary1",
            Construction::Lemma4 => "lemma4",
            Construction::Lemma5 => "lemma5",
            Construction::Theorem1Even => "theorem1-i",
            Construction::Theorem1Odd => "theorem1-ii",
            Construction::Theorem2Odd => "theorem2-i",
            Construction::Theorem2Even => "theorem2-ii",
            Construction::Theorem3S => "theorem3-i",
            Construction::Theorem3T => "theorem3-ii",
            Construction::Theorem4S => "theorem4-i",
            Construction::Theorem4T => "theorem4-ii",
        }
    }

    /// Outputs of these constructions are self-dual, not merely self-orthogonal.
    pub fn is_self_dual_family(self) -> bool {
        matches!(
            self,
            Construction::Lemma2
                | Construction::Lemma3
                | Construction::Corollary1
                | Construction::Theorem1Even
                | Construction::Theorem1Odd
                | Construction::Theorem2Odd
                | Construction::Theorem2Even
        )
    }
}

/// Provenance record attached to every code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recipe {
    pub construction: Construction,
    pub q: u32,
    pub r: Option<u32>,
    pub a: Option<u64>,
    pub b: Option<u64>,
    pub s: Option<u64>,
    pub t: Option<u64>,
    pub k: usize,
    pub omega: Option<String>,
}

impl Recipe {
    pub fn manual(field: &FiniteField, k: usize) -> Recipe {
        Recipe {
            construction: Construction::Manual,
            q: field.order(),
            r: field.sqrt_order(),
            a: None,
            b: None,
            s: None,
            t: None,
            k,
            omega: None,
        }
    }
}

#[derive(Clone)]
pub struct GrsCode {
    field: Arc<FiniteField>,
    evaluation: EvaluationSet,
    twist: Vec<FieldElement>,
    k: usize,
    recipe: Recipe,
}

impl fmt::Debug for GrsCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GrsCode[{}, {}] over GF({}) via {:?}",
            self.length(),
            self.k,
            self.field.order(),
            self.recipe.construction
        )
    }
}

impl GrsCode {
    pub fn new(
        field: Arc<FiniteField>,
        evaluation: EvaluationSet,
        twist: Vec<FieldElement>,
        k: usize,
        recipe: Recipe,
    ) -> Result<GrsCode> {
        if twist.len() != evaluation.finite_len() {
            return Err(Error::InvalidCode(format!(
                "{} twist entries for {} finite points",
                twist.len(),
                evaluation.finite_len()
            )));
        }
        if let Some(i) = twist.iter().position(|v| v.is_zero()) {
            return Err(Error::InvalidCode(format!("twist entry {i} is zero")));
        }
        let n = evaluation.len();
        if k == 0 || k > n {
            return Err(Error::InvalidCode(format!("dimension {k} outside 1..={n}")));
        }
        Ok(GrsCode { field, evaluation, twist, k, recipe })
    }

    /// Skips every invariant check. Only for exercising failure paths.
    #[doc(hidden)]
    pub fn new_unchecked(
        field: Arc<FiniteField>,
        evaluation: EvaluationSet,
        twist: Vec<FieldElement>,
        k: usize,
    ) -> GrsCode {
        let recipe = Recipe::manual(&field, k);
        GrsCode { field, evaluation, twist, k, recipe }
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn evaluation(&self) -> &EvaluationSet {
        &self.evaluation
    }

    pub fn twist(&self) -> &[FieldElement] {
        &self.twist
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn length(&self) -> usize {
        self.evaluation.len()
    }

    pub fn is_extended(&self) -> bool {
        self.evaluation.includes_infinity()
    }

    pub fn recipe(&self) -> &Recipe {
        &self.recipe
    }

    pub(crate) fn with_recipe(mut self, recipe: Recipe) -> GrsCode {
        self.recipe = recipe;
        self
    }

    /// Column `j` of the generator matrix; `j == n_finite` is the ∞ column.
    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        let f = &*self.field;
        if j == self.evaluation.finite_len() {
            let mut col = vec![FieldElement::ZERO; self.k];
            col[self.k - 1] = FieldElement::ONE;
            return col;
        }
        let a = self.evaluation.points()[j];
        let mut acc = self.twist[j];
        let mut col = Vec::with_capacity(self.k);
        for _ in 0..self.k {
            col.push(acc);
            acc = f.mul(acc, a);
        }
        col
    }

    /// Row `i` is `(v_1 a_1^i, ..., v_n a_n^i)`, with a trailing `[i == k-1]`
    /// for the ∞ coordinate. `0^0` counts as 1.
    pub fn generator_matrix(&self) -> Matrix {
        let f = &*self.field;
        let n = self.length();
        let nf = self.evaluation.finite_len();
        let mut g = Matrix::zeros(self.k, n);
        for (j, (&a, &v)) in self.evaluation.points().iter().zip(&self.twist).enumerate() {
            let mut acc = v;
            for i in 0..self.k {
                g.set(i, j, acc);
                acc = f.mul(acc, a);
            }
        }
        if self.is_extended() {
            g.set(self.k - 1, nf, FieldElement::ONE);
        }
        g
    }

    /// Gram matrix `G G^T` of the generator matrix.
    pub fn gram_matrix(&self) -> Matrix {
        self.generator_matrix().gram(&self.field)
    }

    /// True iff every pair of generator rows is orthogonal.
    pub fn is_self_orthogonal(&self) -> bool {
        self.gram_matrix().is_zero()
    }

    pub fn is_self_dual(&self) -> bool {
        2 * self.k == self.length() && self.is_self_orthogonal()
    }

    /// Hankel moments of the Gram matrix.
    ///
    /// Row `i` dotted with row `j` equals `Σ v_l^2 a_l^(i+j)` plus 1 when
    /// `i = j = k-1` on an extended code, so the Gram matrix is determined by
    /// the `2k-1` values returned here (entry `m` is the value for `i+j = m`).
    /// Costs O(kn) instead of O(k^2 n).
    pub fn gram_moments(&self) -> Vec<FieldElement> {
        let f = &*self.field;
        let len = 2 * self.k - 1;
        let partials: Vec<Vec<FieldElement>> = self
            .evaluation
            .points()
            .par_chunks(1024)
            .zip(self.twist.par_chunks(1024))
            .map(|(pts, tw)| {
                let mut acc = vec![FieldElement::ZERO; len];
                for (&a, &v) in pts.iter().zip(tw) {
                    let mut term = f.mul(v, v);
                    for slot in acc.iter_mut() {
                        *slot = f.add(*slot, term);
                        term = f.mul(term, a);
                    }
                }
                acc
            })
            .collect();
        let mut moments = vec![FieldElement::ZERO; len];
        for part in partials {
            for (m, x) in moments.iter_mut().zip(part) {
                *m = f.add(*m, x);
            }
        }
        if self.is_extended() {
            moments[len - 1] = f.add(moments[len - 1], FieldElement::ONE);
        }
        moments
    }

    /// Same verdict as [`GrsCode::is_self_orthogonal`], through [`GrsCode::gram_moments`].
    pub fn is_self_orthogonal_by_moments(&self) -> bool {
        self.gram_moments().iter().all(|x| x.is_zero())
    }

    /// Codeword for the message polynomial with coefficients `message`
    /// (low to high, exactly k of them).
    pub fn encode(&self, message: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(message.len(), self.k, "message length must equal k");
        let f = &*self.field;
        let mut word: Vec<FieldElement> = self
            .evaluation
            .points()
            .par_iter()
            .zip(self.twist.par_iter())
            .map(|(&a, &v)| {
                let fa = message.iter().rev().fold(FieldElement::ZERO, |acc, &c| {
                    f.add(f.mul(acc, a), c)
                });
                f.mul(v, fa)
            })
            .collect();
        if self.is_extended() {
            word.push(message[self.k - 1]);
        }
        word
    }
}
