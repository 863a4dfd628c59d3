//! Coset-union evaluation sets and the lemma/theorem pipeline that turns
//! them into self-dual, self-orthogonal and almost self-dual codes.
//!
//! Over GF(q) with q = r^2 and θ primitive, put α = θ^a, β = θ^b,
//! A = ⟨α⟩ and B = ⟨β⟩. Two evaluation sets are used:
//!
//! - `S = ∪_{i<s} β^i A  ∪  ∪_{j<t} γ^(2j+1) B` with γ = θ^(a/2), for
//!   r ≡ 1 (mod 4) and a ≡ 2 (mod 4);
//! - `T = ∪_{i<t} α^i B  ∪  ∪_{j<s} ξ^(2j+1) A` with ξ = θ^(b/2), for
//!   r ≡ 3 (mod 4) and b ≡ 2 (mod 4).
//!
//! The lemma functions accept any evaluation set; the theorem functions build
//! S or T from [`ConstructionParams`] and pick the lemma and twist.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField, Sign};
use crate::grs::{self, Construction, CosetPart, EvaluationSet, GrsCode, PointTag, Recipe};
use crate::poly::Polynomial;

/// Which coset union a parameter tuple builds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    S,
    T,
}

/// Checks the integer conditions on `(r, a, b, s, t)` without building a
/// field.
pub fn validate(r: u64, a: u64, b: u64, s: u64, t: u64) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidParams(msg));
    if r < 3 || r.is_multiple_of(2) {
        return bad(format!("r = {r} must be odd and at least 3"));
    }
    let q1 = r * r - 1;
    for (name, x) in [("a", a), ("b", b)] {
        if x == 0 || x % 2 != 0 {
            return bad(format!("{name} = {x} is not a positive even integer"));
        }
        if !q1.is_multiple_of(x) {
            return bad(format!("{name} = {x} ∤ q-1 = {q1}"));
        }
    }
    if !(b * (r + 1)).is_multiple_of(2 * a) {
        return bad(format!("2a ∤ b(r+1) for a = {a}, b = {b}, r = {r}"));
    }
    if !(a * (r - 1)).is_multiple_of(2 * b) {
        return bad(format!("2b ∤ a(r-1) for a = {a}, b = {b}, r = {r}"));
    }
    let g = arith::gcd(a, b);
    if s == 0 || s > a / g {
        return bad(format!("s = {s} outside 1..=a/gcd(a,b) = {}", a / g));
    }
    if t == 0 || t > b / g {
        return bad(format!("t = {t} outside 1..=b/gcd(a,b) = {}", b / g));
    }
    Ok(())
}

/// The branch selected by `r mod 4`, after checking the matching congruence
/// on `a` or `b`.
pub fn branch_for(r: u64, a: u64, b: u64) -> Result<Branch> {
    match r % 4 {
        1 if a % 4 == 2 => Ok(Branch::S),
        1 => Err(Error::InvalidParams(format!("a = {a} ≢ 2 (mod 4) while r ≡ 1 (mod 4)"))),
        3 if b % 4 == 2 => Ok(Branch::T),
        3 => Err(Error::InvalidParams(format!("b = {b} ≢ 2 (mod 4) while r ≡ 3 (mod 4)"))),
        _ => Err(Error::InvalidParams(format!("r = {r} is even"))),
    }
}

/// Parity of `(r+1) b s^2 / (2a)`; assumes `2a | b(r+1)`.
pub fn t_exponent_is_odd(r: u64, a: u64, b: u64, s: u64) -> bool {
    let c = (r + 1) * b / (2 * a);
    c % 2 == 1 && s % 2 == 1
}

/// True when the self-dual code is GRS on the set itself (length n);
/// false when it needs the shifted extension (length n+2).
pub fn is_plain(branch: Branch, r: u64, a: u64, b: u64, s: u64) -> bool {
    match branch {
        Branch::S => s.is_multiple_of(2),
        Branch::T => t_exponent_is_odd(r, a, b, s),
    }
}

/// A validated `(a, b, s, t)` tuple over a field of square order.
#[derive(Clone, Debug)]
pub struct ConstructionParams {
    field: Arc<FiniteField>,
    r: u64,
    a: u64,
    b: u64,
    s: u64,
    t: u64,
}

impl ConstructionParams {
    pub fn new(field: Arc<FiniteField>, a: u64, b: u64, s: u64, t: u64) -> Result<Self> {
        let r = field.sqrt_order().ok_or_else(|| {
            Error::InvalidParams(format!("q = {} is not a perfect square", field.order()))
        })? as u64;
        validate(r, a, b, s, t)?;
        Ok(ConstructionParams { field, r, a, b, s, t })
    }

    /// `(r+1, r-1, (r+1)/2, (r-1)/2)`, whose shifted extension has length q+1.
    pub fn largest(field: Arc<FiniteField>) -> Result<Self> {
        let r = field
            .sqrt_order()
            .ok_or_else(|| Error::InvalidParams(format!("q = {} is not a perfect square", field.order())))?
            as u64;
        ConstructionParams::new(field, r + 1, r - 1, r.div_ceil(2), (r - 1) / 2)
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn q(&self) -> u64 {
        self.r * self.r
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn branch(&self) -> Result<Branch> {
        branch_for(self.r, self.a, self.b)
    }

    /// `n = s(q-1)/a + t(q-1)/b`, the size of S or T.
    pub fn set_size(&self) -> u64 {
        let q1 = self.q() - 1;
        self.s * q1 / self.a + self.t * q1 / self.b
    }

    /// Parity of `(r+1) b s^2 / (2a)`.
    pub fn t_exponent_is_odd(&self) -> bool {
        t_exponent_is_odd(self.r, self.a, self.b, self.s)
    }

    pub fn is_plain(&self, branch: Branch) -> bool {
        is_plain(branch, self.r, self.a, self.b, self.s)
    }

    fn require(&self, branch: Branch) -> Result<()> {
        let actual = self.branch()?;
        if actual != branch {
            return Err(Error::InvalidParams(format!(
                "parameters select branch {actual:?}, not {branch:?}"
            )));
        }
        Ok(())
    }

    fn recipe(&self, construction: Construction, k: usize, omega: Option<String>) -> Recipe {
        Recipe {
            construction,
            q: self.field.order(),
            r: Some(self.r as u32),
            a: Some(self.a),
            b: Some(self.b),
            s: Some(self.s),
            t: Some(self.t),
            k,
            omega,
        }
    }
}

fn coset_points(
    field: &FiniteField,
    part: CosetPart,
    offsets: impl Iterator<Item = u64>,
    step: u64,
    out: &mut Vec<FieldElement>,
    tags: &mut Vec<PointTag>,
) {
    let per = (field.order() as u64 - 1) / step;
    for (coset, off) in offsets.enumerate() {
        for index in 1..=per {
            out.push(field.element(off + step * index));
            tags.push(PointTag::Coset { part, coset: coset as u32, index: index as u32 });
        }
    }
}

pub fn build_s(params: &ConstructionParams) -> Result<EvaluationSet> {
    params.require(Branch::S)?;
    let f = &*params.field;
    let (a, b) = (params.a, params.b);
    let mut points = Vec::with_capacity(params.set_size() as usize);
    let mut tags = Vec::with_capacity(points.capacity());
    coset_points(f, CosetPart::First, (0..params.s).map(|i| b * i), a, &mut points, &mut tags);
    coset_points(f, CosetPart::Second, (0..params.t).map(|j| a / 2 * (2 * j + 1)), b, &mut points, &mut tags);
    EvaluationSet::with_tags(f, points, tags, false)
}

pub fn build_t(params: &ConstructionParams) -> Result<EvaluationSet> {
    params.require(Branch::T)?;
    let f = &*params.field;
    let (a, b) = (params.a, params.b);
    let mut points = Vec::with_capacity(params.set_size() as usize);
    let mut tags = Vec::with_capacity(points.capacity());
    coset_points(f, CosetPart::First, (0..params.t).map(|i| a * i), b, &mut points, &mut tags);
    coset_points(f, CosetPart::Second, (0..params.s).map(|j| b / 2 * (2 * j + 1)), a, &mut points, &mut tags);
    EvaluationSet::with_tags(f, points, tags, false)
}

pub fn build_set(params: &ConstructionParams) -> Result<EvaluationSet> {
    match params.branch()? {
        Branch::S => build_s(params),
        Branch::T => build_t(params),
    }
}

/// Quantity whose character is profiled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CharacterVariant {
    /// η(δ_A(a))
    Delta,
    /// η(-δ_A(a))
    NegDelta,
    /// η(-a δ_A(a))
    NegPointDelta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileSummary {
    Constant(Sign),
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterProfile {
    pub variant: CharacterVariant,
    pub signs: Vec<Sign>,
    pub summary: ProfileSummary,
}

impl CharacterProfile {
    pub fn constant(&self) -> Option<Sign> {
        match self.summary {
            ProfileSummary::Constant(s) => Some(s),
            ProfileSummary::Mixed => None,
        }
    }
}

/// Brute-force character profile over the finite points of `set`.
pub fn character_profile(
    field: &FiniteField,
    set: &EvaluationSet,
    variant: CharacterVariant,
) -> Result<CharacterProfile> {
    let d = grs::deltas(field, set);
    profile_from_deltas(field, set.points(), &d, variant)
}

pub fn profile_from_deltas(
    field: &FiniteField,
    points: &[FieldElement],
    deltas: &[FieldElement],
    variant: CharacterVariant,
) -> Result<CharacterProfile> {
    let signs = points
        .iter()
        .zip(deltas)
        .map(|(&a, &d)| {
            let x = match variant {
                CharacterVariant::Delta => d,
                CharacterVariant::NegDelta => field.neg(d),
                CharacterVariant::NegPointDelta => field.neg(field.mul(a, d)),
            };
            field.quadratic_character(x)
        })
        .collect::<Result<Vec<Sign>>>()?;
    let summary = match signs.first() {
        None => ProfileSummary::Constant(Sign::Plus),
        Some(&s0) if signs.iter().all(|&s| s == s0) => ProfileSummary::Constant(s0),
        Some(_) => ProfileSummary::Mixed,
    };
    Ok(CharacterProfile { variant, signs, summary })
}

/// Closed-form η(δ) on the first or second part of S or T, from exponent
/// parity alone.
pub fn predicted_character(params: &ConstructionParams, part: CosetPart, branch: Branch) -> Result<Sign> {
    params.require(branch)?;
    let (r, a, b, s) = (params.r, params.a, params.b, params.s);
    let odd = match (branch, part) {
        (Branch::S, CosetPart::First) => (r.div_ceil(2) * (s - 1)) % 2 == 1,
        (Branch::S, CosetPart::Second) => (a / 2) % 2 == 1,
        (Branch::T, CosetPart::First) => params.t_exponent_is_odd(),
        (Branch::T, CosetPart::Second) => (b / 2) % 2 == 1,
    };
    Ok(Sign::from_parity(odd))
}

fn lemma_recipe(field: &FiniteField, construction: Construction, k: usize, omega: Option<String>) -> Recipe {
    Recipe { construction, omega, ..Recipe::manual(field, k) }
}

fn require_finite(set: &EvaluationSet) -> Result<()> {
    if set.includes_infinity() {
        return Err(Error::Precondition("evaluation set must not contain ∞".into()));
    }
    Ok(())
}

fn ensure_self_orthogonal(code: GrsCode) -> Result<GrsCode> {
    if code.is_self_orthogonal_by_moments() {
        Ok(code)
    } else {
        Err(Error::Internal(format!("{code:?} failed the Gram check")))
    }
}

/// Twist with `v_i^2 = c_i / δ_i`, failing at the first non-square.
fn twist_from(
    field: &FiniteField,
    numerators: impl Iterator<Item = FieldElement>,
    deltas: &[FieldElement],
    what: &str,
) -> Result<Vec<FieldElement>> {
    numerators
        .zip(deltas)
        .enumerate()
        .map(|(i, (c, &d))| {
            let x = field.div(c, d)?;
            field
                .sqrt(x)
                .map_err(|_| Error::Precondition(format!("η({what}) = -1 at point {i}")))
        })
        .collect()
}

/// Self-dual `GRS_{n/2}(A, v)` for a set whose η(δ) profile is constant.
pub fn lemma2_self_dual(field: &Arc<FiniteField>, set: &EvaluationSet) -> Result<GrsCode> {
    require_finite(set)?;
    let d = grs::deltas(field, set);
    lemma2_with_deltas(field, set, &d)
}

fn lemma2_with_deltas(field: &Arc<FiniteField>, set: &EvaluationSet, d: &[FieldElement]) -> Result<GrsCode> {
    let n = set.finite_len();
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::Precondition(format!("length {n} is not a positive even number")));
    }
    let profile = profile_from_deltas(field, set.points(), d, CharacterVariant::Delta)?;
    let lambda = match profile.constant() {
        Some(Sign::Plus) => FieldElement::ONE,
        Some(Sign::Minus) => field.theta(),
        None => return Err(Error::Precondition("η(δ_A(a_i)) is not constant".into())),
    };
    let twist = twist_from(field, std::iter::repeat(lambda), d, "λ δ_A(a_i)")?;
    let k = n / 2;
    let recipe = lemma_recipe(field, Construction::Lemma2, k, None);
    ensure_self_orthogonal(GrsCode::new(field.clone(), set.clone(), twist, k, recipe)?)
}

/// Self-dual extended `GRS_{(n+1)/2}(A ∪ ∞, v)` for odd |A| with
/// η(-δ_A(a_i)) = 1 throughout. A single point has δ = 1.
pub fn lemma3_extended_self_dual(field: &Arc<FiniteField>, set: &EvaluationSet) -> Result<GrsCode> {
    require_finite(set)?;
    let d = grs::deltas(field, set);
    lemma3_with_deltas(field, set, &d)
}

fn lemma3_with_deltas(field: &Arc<FiniteField>, set: &EvaluationSet, d: &[FieldElement]) -> Result<GrsCode> {
    let n = set.finite_len();
    if n % 2 != 1 {
        return Err(Error::Precondition(format!("length {n} is not odd")));
    }
    let twist = twist_from(field, std::iter::repeat(field.minus_one()), d, "-δ_A(a_i)")?;
    let k = n.div_ceil(2);
    let recipe = lemma_recipe(field, Construction::Lemma3, k, None);
    let ext = set.clone().with_infinity();
    ensure_self_orthogonal(GrsCode::new(field.clone(), ext, twist, k, recipe)?)
}

/// Length n+2 self-dual code from an even-size set `A ⊆ F_q^*`: shifts the
/// set to `(α + A) ∪ {α}` and applies [`lemma3_extended_self_dual`].
///
/// Any `alpha` works since 0 ∉ A; it defaults to 0.
pub fn corollary1_extend(
    field: &Arc<FiniteField>,
    set: &EvaluationSet,
    alpha: Option<FieldElement>,
) -> Result<GrsCode> {
    require_finite(set)?;
    let n = set.finite_len();
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::Precondition(format!("length {n} is not a positive even number")));
    }
    if set.contains(FieldElement::ZERO) {
        return Err(Error::Precondition("A contains 0".into()));
    }
    let f = &**field;
    let points = set.points();
    let d = grs::deltas(f, set);
    let profile = profile_from_deltas(f, points, &d, CharacterVariant::NegPointDelta)?;
    if let Some(i) = profile.signs.iter().position(|&s| s == Sign::Minus) {
        return Err(Error::Precondition(format!("η(-a_i δ_A(a_i)) = -1 at point {i}")));
    }
    let prod = f.product(points.iter().copied());
    if f.quadratic_character(f.neg(prod))? == Sign::Minus {
        return Err(Error::Precondition("η(-∏ a_i) = -1".into()));
    }

    let alpha = alpha.unwrap_or(FieldElement::ZERO);

    let mut shifted: Vec<FieldElement> = points.iter().map(|&a| f.add(alpha, a)).collect();
    shifted.push(alpha);
    let mut tags = set.tags().to_vec();
    tags.push(PointTag::Shift);
    let bar = EvaluationSet::with_tags(f, shifted, tags, false)?;
    let bar_d = grs::deltas(f, &bar);

    if bar_d[n] != prod {
        return Err(Error::Internal(format!("δ(α) = {} but ∏ a_i = {prod}", bar_d[n])));
    }
    for (i, (&a, &di)) in points.iter().zip(&d).enumerate() {
        if bar_d[i] != f.mul(a, di) {
            return Err(Error::Internal(format!("δ(α + a_{i}) != a_{i} δ_A(a_{i})")));
        }
    }

    let code = lemma3_with_deltas(field, &bar, &bar_d)?;
    let k = code.dimension();
    Ok(code.with_recipe(lemma_recipe(f, Construction::Corollary1, k, None)))
}

/// Self-orthogonal `GRS_k(A, v)` with `v_i^2 = ω(a_i) / δ_A(a_i)`,
/// `deg ω <= n - 2k`.
pub fn lemma4_self_orthogonal(
    field: &Arc<FiniteField>,
    set: &EvaluationSet,
    k: usize,
    omega: &Polynomial,
) -> Result<GrsCode> {
    require_finite(set)?;
    let n = set.finite_len();
    if k == 0 || 2 * k > n {
        return Err(Error::Precondition(format!("k = {k} outside 1..={}", n / 2)));
    }
    let deg = omega.degree().ok_or_else(|| Error::Precondition("ω is zero".into()))?;
    if deg > n - 2 * k {
        return Err(Error::Precondition(format!("deg ω = {deg} > n - 2k = {}", n - 2 * k)));
    }
    let twist = omega_twist(field, set, omega)?;
    let recipe = lemma_recipe(field, Construction::Lemma4, k, Some(omega.describe()));
    ensure_self_orthogonal(GrsCode::new(field.clone(), set.clone(), twist, k, recipe)?)
}

/// Self-orthogonal extended `GRS_k(A ∪ ∞, v)` of length n+1, where ω has
/// leading term `-x^(n-2k+1)`.
pub fn lemma5_extended_self_orthogonal(
    field: &Arc<FiniteField>,
    set: &EvaluationSet,
    k: usize,
    omega: &Polynomial,
) -> Result<GrsCode> {
    require_finite(set)?;
    let n = set.finite_len();
    if k == 0 || 2 * k > n + 1 {
        return Err(Error::Precondition(format!("k = {k} outside 1..={}", n.div_ceil(2))));
    }
    let want = n + 1 - 2 * k;
    if omega.degree() != Some(want) || omega.leading() != field.minus_one() {
        return Err(Error::Precondition(format!("ω must have leading term -x^{want}")));
    }
    let twist = omega_twist(field, set, omega)?;
    let recipe = lemma_recipe(field, Construction::Lemma5, k, Some(omega.describe()));
    let ext = set.clone().with_infinity();
    ensure_self_orthogonal(GrsCode::new(field.clone(), ext, twist, k, recipe)?)
}

fn omega_twist(field: &FiniteField, set: &EvaluationSet, omega: &Polynomial) -> Result<Vec<FieldElement>> {
    let values: Vec<FieldElement> = set.points().iter().map(|&a| omega.eval(field, a)).collect();
    if let Some(i) = values.iter().position(|w| w.is_zero()) {
        return Err(Error::Precondition(format!("ω vanishes at point {i}")));
    }
    let d = grs::deltas(field, set);
    twist_from(field, values.into_iter(), &d, "ω(a_i) δ_A(a_i)")
}

fn self_dual_from(params: &ConstructionParams, branch: Branch) -> Result<GrsCode> {
    params.require(branch)?;
    let set = build_set(params)?;
    let field = &params.field;
    let construction = match (branch, params.is_plain(branch)) {
        (Branch::S, true) => Construction::Theorem1Even,
        (Branch::S, false) => Construction::Theorem1Odd,
        (Branch::T, true) => Construction::Theorem2Odd,
        (Branch::T, false) => Construction::Theorem2Even,
    };
    let code = if params.is_plain(branch) {
        lemma2_self_dual(field, &set)?
    } else {
        corollary1_extend(field, &set, None).inspect_err(|e| {
            if matches!(e, Error::Precondition(_)) {
                log::warn!(
                    "sign conditions of the shifted extension fail for (q, a, b, s, t) = ({}, {}, {}, {}, {}): {e}",
                    params.q(),
                    params.a,
                    params.b,
                    params.s,
                    params.t
                );
            }
        })?
    };
    let k = code.dimension();
    Ok(code.with_recipe(params.recipe(construction, k, None)))
}

/// Self-dual code on S: length n when s is even, n+2 when s is odd.
pub fn theorem1(params: &ConstructionParams) -> Result<GrsCode> {
    self_dual_from(params, Branch::S)
}

/// Self-dual code on T: length n when `(r+1)bs^2/(2a)` is odd, n+2 otherwise.
pub fn theorem2(params: &ConstructionParams) -> Result<GrsCode> {
    self_dual_from(params, Branch::T)
}

/// [`theorem1`] or [`theorem2`], chosen by `r mod 4`.
pub fn self_dual(params: &ConstructionParams) -> Result<GrsCode> {
    self_dual_from(params, params.branch()?)
}

/// `[n, k]` self-orthogonal code on S or T for `1 <= k <= n/2 - 1`.
pub fn theorem3(params: &ConstructionParams, k: usize) -> Result<GrsCode> {
    let branch = params.branch()?;
    let n = params.set_size() as usize;
    if k == 0 || k + 1 > n / 2 {
        return Err(Error::InvalidParams(format!("k = {k} outside 1..=n/2-1 = {}", n / 2 - 1)));
    }
    let f = &params.field;
    let omega = match (branch, params.is_plain(branch)) {
        (Branch::S, true) => Polynomial::constant(f.element(params.a / 2)),
        (Branch::T, true) => Polynomial::constant(f.element(params.b / 2)),
        (_, false) => Polynomial::monomial(FieldElement::ONE, 1),
    };
    let set = build_set(params)?;
    let code = lemma4_self_orthogonal(f, &set, k, &omega)?;
    let construction = match branch {
        Branch::S => Construction::Theorem3S,
        Branch::T => Construction::Theorem3T,
    };
    Ok(code.with_recipe(params.recipe(construction, k, Some(omega.describe()))))
}

/// `[n+1, n/2]` almost self-dual code, for the tuples whose self-dual code
/// needs the shift (s odd on S, `(r+1)bs^2/(2a)` even on T).
pub fn theorem4(params: &ConstructionParams) -> Result<GrsCode> {
    let branch = params.branch()?;
    if params.is_plain(branch) {
        let why = match branch {
            Branch::S => format!("s = {} is even", params.s),
            Branch::T => "(r+1)bs^2/(2a) is odd".to_string(),
        };
        return Err(Error::InvalidParams(format!("almost self-dual code needs the shifted case: {why}")));
    }
    let f = &params.field;
    let omega = Polynomial::monomial(f.minus_one(), 1);
    let set = build_set(params)?;
    let k = set.finite_len() / 2;
    let code = lemma5_extended_self_orthogonal(f, &set, k, &omega)?;
    let construction = match branch {
        Branch::S => Construction::Theorem4S,
        Branch::T => Construction::Theorem4T,
    };
    Ok(code.with_recipe(params.recipe(construction, k, Some(omega.describe()))))
}
