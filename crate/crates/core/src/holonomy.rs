//! Marked surface-group presentations and their representations into
//! `Isom(E^{1,2})`: word evaluation, the surface relation, tangency of
//! peripheral translation parts, and admissibility reports.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minkowski::{
    classify_linear, mink_form, parabolic_direction, AffineIsometry, CausalClass, LinearIsometry,
};
use crate::tol::{EPS_FORM, EPS_REL};

/// A generator or its inverse.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }
}

/// A word in the generators, read left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(gen: usize, inverse: bool) -> Self {
        Word(vec![Letter::new(gen, inverse)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Free reduction.
    pub fn reduced(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Cyclic rotation by `k` letters.
    pub fn rotated(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    pub fn render(&self, labels: &[String]) -> String {
        self.0
            .iter()
            .map(|l| if l.inverse { format!("{}^-1", labels[l.gen]) } else { labels[l.gen].clone() })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// `Γ = ⟨a_1, b_1, …, a_g, b_g, c_1, …, c_s | ∏[a_i,b_i] ∏c_j = 1⟩`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedGroupPresentation {
    pub genus: usize,
    pub punctures: usize,
}

impl MarkedGroupPresentation {
    pub fn new(genus: usize, punctures: usize) -> Result<Self> {
        if punctures == 0 || 2 * genus + punctures <= 2 {
            return Err(Error::Schema {
                pointer: "/presentation".into(),
                message: format!("need s > 0 and 2g - 2 + s > 0 (g = {genus}, s = {punctures})"),
            });
        }
        Ok(MarkedGroupPresentation { genus, punctures })
    }

    pub fn rank(&self) -> usize {
        2 * self.genus + self.punctures
    }

    pub fn a(&self, i: usize) -> usize {
        2 * i
    }

    pub fn b(&self, i: usize) -> usize {
        2 * i + 1
    }

    pub fn c(&self, j: usize) -> usize {
        2 * self.genus + j
    }

    /// Labels in input order `a1, b1, …, ag, bg, c1, …, cs`.
    pub fn labels(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(self.rank());
        for i in 1..=self.genus {
            out.push(format!("a{i}"));
            out.push(format!("b{i}"));
        }
        for j in 1..=self.punctures {
            out.push(format!("c{j}"));
        }
        out
    }

    /// `∏[a_i,b_i] ∏c_j` with `[a,b] = a b a⁻¹ b⁻¹`.
    pub fn relation(&self) -> Word {
        let mut w = Vec::new();
        for i in 0..self.genus {
            let (a, b) = (self.a(i), self.b(i));
            w.extend([
                Letter::new(a, false),
                Letter::new(b, false),
                Letter::new(a, true),
                Letter::new(b, true),
            ]);
        }
        for j in 0..self.punctures {
            w.push(Letter::new(self.c(j), false));
        }
        Word(w)
    }
}

/// Group structure behind a representation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Presentation {
    /// Marked surface group with its single relation.
    Surface(MarkedGroupPresentation),
    /// Free group on `rank` generators `x1..xn` (the fundamental group of a
    /// punctured surface read off a cellulation), with one peripheral word per puncture.
    Free { rank: usize, peripherals: Vec<Word> },
}

impl Presentation {
    pub fn rank(&self) -> usize {
        match self {
            Presentation::Surface(p) => p.rank(),
            Presentation::Free { rank, .. } => *rank,
        }
    }

    pub fn labels(&self) -> Vec<String> {
        match self {
            Presentation::Surface(p) => p.labels(),
            Presentation::Free { rank, .. } => (1..=*rank).map(|i| format!("x{i}")).collect(),
        }
    }

    pub fn punctures(&self) -> usize {
        match self {
            Presentation::Surface(p) => p.punctures,
            Presentation::Free { peripherals, .. } => peripherals.len(),
        }
    }

    pub fn peripheral_words(&self) -> Vec<Word> {
        match self {
            Presentation::Surface(p) => (0..p.punctures).map(|j| Word::letter(p.c(j), false)).collect(),
            Presentation::Free { peripherals, .. } => peripherals.clone(),
        }
    }

    pub fn relation(&self) -> Option<Word> {
        match self {
            Presentation::Surface(p) => Some(p.relation()),
            Presentation::Free { .. } => None,
        }
    }
}

/// Images of the generators in `Isom(E^{1,2})`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineRepresentation {
    pub presentation: Presentation,
    pub images: Vec<AffineIsometry>,
}

impl AffineRepresentation {
    pub fn new(presentation: Presentation, images: Vec<AffineIsometry>) -> Result<Self> {
        if images.len() != presentation.rank() {
            return Err(Error::Schema {
                pointer: "/generators".into(),
                message: format!("expected {} generator images, got {}", presentation.rank(), images.len()),
            });
        }
        Ok(AffineRepresentation { presentation, images })
    }

    pub fn surface(p: MarkedGroupPresentation, images: Vec<AffineIsometry>) -> Result<Self> {
        Self::new(Presentation::Surface(p), images)
    }

    /// Linear representation of a marked surface group.
    pub fn linear(p: MarkedGroupPresentation, images: Vec<LinearIsometry>) -> Result<Self> {
        Self::surface(p, images.into_iter().map(AffineIsometry::linear).collect())
    }

    pub fn labels(&self) -> Vec<String> {
        self.presentation.labels()
    }

    pub fn is_linear(&self) -> bool {
        self.images.iter().all(|g| g.is_linear())
    }

    /// The linear part `ρ_L`.
    pub fn linear_part(&self) -> AffineRepresentation {
        AffineRepresentation {
            presentation: self.presentation.clone(),
            images: self.images.iter().map(|g| AffineIsometry::linear(g.linear)).collect(),
        }
    }

    /// Parses `"a1 b1^-1 c1"` (also accepts `a1^-1` spelled `a1'`).
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let labels = self.labels();
        let mut w = Vec::new();
        for tok in text.split_whitespace() {
            let (name, inverse) = if let Some(n) = tok.strip_suffix("^-1") {
                (n, true)
            } else if let Some(n) = tok.strip_suffix('\'') {
                (n, true)
            } else {
                (tok, false)
            };
            let gen = labels
                .iter()
                .position(|l| l == name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            w.push(Letter::new(gen, inverse));
        }
        Ok(Word(w))
    }

    pub fn image(&self, l: Letter) -> Result<AffineIsometry> {
        let g = self
            .images
            .get(l.gen)
            .ok_or_else(|| Error::UnknownGenerator(format!("#{}", l.gen)))?;
        Ok(if l.inverse { g.inverse() } else { *g })
    }

    /// Left-to-right product of generator images; the empty word is the identity.
    pub fn evaluate_word(&self, word: &Word) -> Result<AffineIsometry> {
        self.evaluate_word_with(word, |a, b| a.compose(b))
    }

    /// Same as [`Self::evaluate_word`] with an explicit composition routine.
    pub fn evaluate_word_with<F>(&self, word: &Word, compose: F) -> Result<AffineIsometry>
    where
        F: Fn(&AffineIsometry, &AffineIsometry) -> AffineIsometry,
    {
        let mut acc = AffineIsometry::identity();
        for &l in &word.0 {
            acc = compose(&acc, &self.image(l)?);
        }
        Ok(acc)
    }

    pub fn peripheral(&self, j: usize) -> Result<AffineIsometry> {
        let words = self.presentation.peripheral_words();
        let w = words.get(j).ok_or_else(|| Error::UnknownGenerator(format!("peripheral {j}")))?;
        self.evaluate_word(w)
    }

    /// Conjugates every image by `g`: `ρ'(γ) = g ρ(γ) g⁻¹`.
    pub fn conjugated(&self, g: &AffineIsometry) -> AffineRepresentation {
        let gi = g.inverse();
        AffineRepresentation {
            presentation: self.presentation.clone(),
            images: self.images.iter().map(|h| g.compose(h).compose(&gi)).collect(),
        }
    }
}

/// `‖ρ(relation) − id‖∞` over linear and translation parts; zero for free presentations.
pub fn check_relation(rep: &AffineRepresentation) -> f64 {
    match rep.presentation.relation() {
        Some(w) => rep
            .evaluate_word(&w)
            .map(|m| m.distance(&AffineIsometry::identity()))
            .unwrap_or(f64::INFINITY),
        None => 0.0,
    }
}

/// Residual of the relation word rotated cyclically by `k` letters.
pub fn check_relation_rotated(rep: &AffineRepresentation, k: usize) -> f64 {
    match rep.presentation.relation() {
        Some(w) => rep
            .evaluate_word(&w.rotated(k))
            .map(|m| m.distance(&AffineIsometry::identity()))
            .unwrap_or(f64::INFINITY),
        None => 0.0,
    }
}

/// Whether the translation part of a parabolic `φ` is orthogonal to its fixed lightlike direction.
pub fn is_tangent(phi: &AffineIsometry) -> Result<bool> {
    is_tangent_with(phi, EPS_FORM)
}

pub fn is_tangent_with(phi: &AffineIsometry, tol: f64) -> Result<bool> {
    if classify_linear(&phi.linear, tol) != CausalClass::Parabolic {
        return Err(Error::NotParabolic);
    }
    let v = parabolic_direction(&phi.linear);
    let scale = 1.0f64.max(phi.translation.norm_euclid());
    Ok(mink_form(phi.translation, v).abs() <= tol.max(EPS_FORM) * scale)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    AdmissibleNecessaryConditions,
    NotAdmissible,
}

pub const DISCRETENESS_CAVEAT: &str =
    "faithfulness and discreteness are not decided in floating point; only necessary conditions were checked";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub relation_ok: bool,
    pub relation_residual: f64,
    pub peripheral_classes: Vec<CausalClass>,
    pub handle_classes: Vec<CausalClass>,
    pub tangency_ok: Vec<bool>,
    pub verdict: Verdict,
    pub discreteness_decided: bool,
    pub caveat: String,
}

impl AdmissibilityReport {
    pub fn is_admissible(&self) -> bool {
        self.verdict == Verdict::AdmissibleNecessaryConditions
    }
}

/// Trace tolerance grows with the entries, which long products inflate.
fn classify_scaled(m: &LinearIsometry, tol: f64) -> CausalClass {
    classify_linear(m, tol * m.matrix().amax().max(1.0))
}

/// Checks the decidable admissibility conditions at the default tolerances.
pub fn check_admissible(rep: &AffineRepresentation) -> AdmissibilityReport {
    check_admissible_with(rep, EPS_FORM)
}

/// Rounding bound for the relation product: `∏ max(1, ‖ρ(letter)‖∞)`.
fn relation_scale(rep: &AffineRepresentation) -> f64 {
    rep.presentation.relation().map_or(1.0, |w| {
        w.0.iter()
            .map(|l| {
                let g = &rep.images[l.gen];
                g.linear.matrix().amax().max(g.translation.norm_inf()).max(1.0)
            })
            .product()
    })
}

/// Relation residual ≤ `EPS_REL` relative to its factors; peripherals parabolic with tangent translation;
/// for surface presentations every `a_i`, `b_i` hyperbolic.
pub fn check_admissible_with(rep: &AffineRepresentation, tol: f64) -> AdmissibilityReport {
    let relation_residual = check_relation(rep);
    let relation_ok = relation_residual <= EPS_REL * relation_scale(rep);
    let mut peripheral_classes = Vec::new();
    let mut tangency_ok = Vec::new();
    for j in 0..rep.presentation.punctures() {
        match rep.peripheral(j) {
            Ok(phi) => {
                let class = classify_scaled(&phi.linear, tol);
                peripheral_classes.push(class);
                let tol = tol * phi.linear.matrix().amax().max(1.0);
                tangency_ok.push(class == CausalClass::Parabolic && is_tangent_with(&phi, tol).unwrap_or(false));
            }
            Err(_) => {
                peripheral_classes.push(CausalClass::Identity);
                tangency_ok.push(false);
            }
        }
    }
    let handle_classes: Vec<CausalClass> = match &rep.presentation {
        Presentation::Surface(p) => (0..2 * p.genus).map(|i| classify_scaled(&rep.images[i].linear, tol)).collect(),
        Presentation::Free { .. } => Vec::new(),
    };
    let ok = relation_ok
        && peripheral_classes.iter().all(|c| *c == CausalClass::Parabolic)
        && handle_classes.iter().all(|c| *c == CausalClass::Hyperbolic)
        && tangency_ok.iter().all(|t| *t);
    AdmissibilityReport {
        relation_ok,
        relation_residual,
        peripheral_classes,
        handle_classes,
        tangency_ok,
        verdict: if ok { Verdict::AdmissibleNecessaryConditions } else { Verdict::NotAdmissible },
        discreteness_decided: false,
        caveat: DISCRETENESS_CAVEAT.to_string(),
    }
}

/// Maximum deviation of `τ(γ₁γ₂) = τ(γ₁) + L(γ₁)τ(γ₂)` over the given word pairs.
pub fn cocycle_check(rep: &AffineRepresentation, pairs: &[(Word, Word)]) -> f64 {
    cocycle_check_with(rep, pairs, |a, b| a.compose(b))
}

pub fn cocycle_check_with<F>(rep: &AffineRepresentation, pairs: &[(Word, Word)], compose: F) -> f64
where
    F: Fn(&AffineIsometry, &AffineIsometry) -> AffineIsometry + Copy,
{
    let mut worst = 0.0f64;
    for (w1, w2) in pairs {
        let (Ok(g1), Ok(g2), Ok(g12)) = (
            rep.evaluate_word_with(w1, compose),
            rep.evaluate_word_with(w2, compose),
            rep.evaluate_word_with(&w1.concat(w2), compose),
        ) else {
            return f64::INFINITY;
        };
        let expected = g1.translation + g1.linear.apply(g2.translation);
        let scale = 1.0f64.max(expected.norm_inf());
        worst = worst.max((g12.translation - expected).norm_inf() / scale);
    }
    worst
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::AdmissibleNecessaryConditions => write!(f, "admissible (necessary conditions)"),
            Verdict::NotAdmissible => write!(f, "not admissible"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::minkowski::{psl2_to_so12, MinkVec};

    #[test]
    fn evaluate_word_examples() {
        let rep = fixtures::torus_rep();
        assert_eq!(rep.evaluate_word(&Word::empty()).unwrap(), AffineIsometry::identity());
        let w = rep.parse_word("a1 a1^-1").unwrap();
        assert!(rep.evaluate_word(&w).unwrap().distance(&AffineIsometry::identity()) < 1e-12);
        let rel = rep.parse_word("a1 b1 a1^-1 b1^-1 c1").unwrap();
        assert!(rep.evaluate_word(&rel).unwrap().distance(&AffineIsometry::identity()) < EPS_REL);
        assert_eq!(rep.parse_word("z7"), Err(Error::UnknownGenerator("z7".into())));
    }

    #[test]
    fn relation_examples() {
        let p = MarkedGroupPresentation::new(1, 1).unwrap();
        let id = AffineRepresentation::linear(p, vec![LinearIsometry::identity(); 3]).unwrap();
        assert_eq!(check_relation(&id), 0.0);

        let rep = fixtures::torus_rep();
        assert!(check_relation(&rep) < 1e-10);

        let mut bad = rep.clone();
        let mut m = *bad.images[0].linear.matrix();
        m[(0, 1)] += 1e-3;
        bad.images[0].linear = LinearIsometry::from_matrix_unchecked(m);
        assert!(check_relation(&bad) > 1e-4);
    }

    #[test]
    fn relation_rotation_invariance() {
        for rep in [fixtures::torus_rep(), fixtures::gamma2_rep()] {
            let n = rep.presentation.relation().unwrap().len();
            for k in 0..n {
                assert!(check_relation_rotated(&rep, k) < 1e-9);
            }
        }
    }

    #[test]
    fn tangency_examples() {
        let n = LinearIsometry::null_rotation(1.0);
        assert!(is_tangent(&AffineIsometry::linear(n)).unwrap());
        assert!(is_tangent(&AffineIsometry::new(n, MinkVec::new(0.0, 0.0, 1.0))).unwrap());
        assert!(!is_tangent(&AffineIsometry::new(n, MinkVec::new(1.0, 0.0, 0.0))).unwrap());
        let h = AffineIsometry::linear(psl2_to_so12(2.0, 1.0, 1.0, 1.0).unwrap());
        assert_eq!(is_tangent(&h), Err(Error::NotParabolic));
    }

    #[test]
    fn admissibility_examples() {
        let p = MarkedGroupPresentation::new(1, 1).unwrap();
        let id = AffineRepresentation::linear(p, vec![LinearIsometry::identity(); 3]).unwrap();
        let r = check_admissible(&id);
        assert_eq!(r.verdict, Verdict::NotAdmissible);
        assert!(!r.discreteness_decided);

        let rep = fixtures::torus_rep();
        let r = check_admissible(&rep);
        assert_eq!(r.verdict, Verdict::AdmissibleNecessaryConditions, "{r:?}");
        assert_eq!(r.handle_classes, vec![CausalClass::Hyperbolic; 2]);

        let bad = fixtures::torus_rep_non_tangent();
        assert!(check_relation(&bad) < 1e-9);
        let r = check_admissible(&bad);
        assert_eq!(r.verdict, Verdict::NotAdmissible);
        assert_eq!(r.tangency_ok, vec![false]);
        assert!(r.relation_ok);
    }

    #[test]
    fn commutator_trace_is_minus_two() {
        // 2x2 oracle: trace of [A, B] for the torus fixture.
        let a = [[1.0, 1.0], [1.0, 2.0]];
        let b = [[1.0, -1.0], [-1.0, 2.0]];
        let mul = |x: [[f64; 2]; 2], y: [[f64; 2]; 2]| {
            [
                [x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]],
                [x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]],
            ]
        };
        let inv = |x: [[f64; 2]; 2]| [[x[1][1], -x[0][1]], [-x[1][0], x[0][0]]];
        let c = mul(mul(mul(a, b), inv(a)), inv(b));
        assert_eq!(c[0][0] + c[1][1], -2.0);
    }

    #[test]
    fn cocycle_examples() {
        let rep = fixtures::torus_affine_rep();
        assert_eq!(cocycle_check(&rep, &[(Word::empty(), Word::empty())]), 0.0);
        let pairs = fixtures::random_word_pairs(&rep, 20, 6, 11);
        assert!(cocycle_check(&rep, &pairs) < 1e-9);
        // Mutation: dropping the linear action on the inner translation.
        let broken = |a: &AffineIsometry, b: &AffineIsometry| AffineIsometry {
            linear: a.linear.compose(&b.linear),
            translation: a.translation + b.translation,
        };
        assert!(cocycle_check_with(&rep, &pairs, broken) > 1e-3);
    }

    #[test]
    fn free_word_reduction() {
        let w = Word(vec![Letter::new(0, false), Letter::new(1, false), Letter::new(1, true), Letter::new(0, true)]);
        assert!(w.reduced().is_empty());
        assert_eq!(w.inverse().inverse(), w);
    }
}
