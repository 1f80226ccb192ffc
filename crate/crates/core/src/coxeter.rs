//! Coxeter systems with their geometric representation on the root space,
//! group elements with exact matrix equality, the word problem via descent
//! sets, folding of Tits-cone points into the fundamental chamber, and
//! Cayley-ball enumeration.
//!
//! Conventions: the bilinear form is B(αs, αt) = −cos(π/m_st) with B = −1
//! for m = ∞; elements act on the root space V by the simple-reflection
//! matrices; points of the ambient geometry live in the dual space V* in the
//! basis dual to the simple roots, where the pairing ⟨p, αs⟩ is the s-th
//! coordinate. Both finite, affine and hyperbolic geometries are slices of
//! the Tits cone in V*.

use crate::scalars::{rat, ratio, QMatrix, QScalar, Rational, Sign};
use crate::{Error, Result};
use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

/// An off-diagonal Coxeter label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Finite(u32),
    Infinity,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinity => write!(f, "inf"),
        }
    }
}

/// Symmetric matrix of labels with diagonal 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    rank: usize,
    labels: Vec<Label>, // row-major rank×rank
}

impl CoxeterMatrix {
    /// Build from the strict upper triangle, row by row:
    /// entries[(i,j)] for i < j.
    pub fn from_upper(rank: usize, upper: &[(usize, usize, Label)]) -> Result<Self> {
        let mut labels = vec![Label::Finite(2); rank * rank];
        for i in 0..rank {
            labels[i * rank + i] = Label::Finite(1);
        }
        for &(i, j, m) in upper {
            if i >= rank || j >= rank || i == j {
                return Err(Error::InvalidMatrix(format!("bad index pair ({i},{j})")));
            }
            labels[i * rank + j] = m;
            labels[j * rank + i] = m;
        }
        let cm = CoxeterMatrix { rank, labels };
        cm.validate()?;
        Ok(cm)
    }

    pub fn from_rows(rows: Vec<Vec<Label>>) -> Result<Self> {
        let rank = rows.len();
        if rows.iter().any(|r| r.len() != rank) {
            return Err(Error::InvalidMatrix("matrix is not square".into()));
        }
        let cm = CoxeterMatrix {
            rank,
            labels: rows.into_iter().flatten().collect(),
        };
        cm.validate()?;
        Ok(cm)
    }

    fn validate(&self) -> Result<()> {
        for i in 0..self.rank {
            if self.label(i, i) != Label::Finite(1) {
                return Err(Error::InvalidMatrix(format!("diagonal entry ({i},{i}) must be 1")));
            }
            for j in 0..self.rank {
                if self.label(i, j) != self.label(j, i) {
                    return Err(Error::InvalidMatrix(format!("asymmetric at ({i},{j})")));
                }
                if i != j {
                    match self.label(i, j) {
                        Label::Finite(m) if (2..=6).contains(&m) => {}
                        Label::Infinity => {}
                        other => return Err(Error::UnsupportedLabel(other.to_string())),
                    }
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self, i: usize, j: usize) -> Label {
        self.labels[i * self.rank + j]
    }

    /// Flattened canonical form modulo simultaneous row/column permutation;
    /// used to compare recognized presentations with shipped systems.
    pub fn canonical_flat(&self) -> Vec<Label> {
        let n = self.rank;
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Vec<Label>> = None;
        permute(&mut perm, 0, &mut |p| {
            let flat: Vec<Label> = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| self.label(p[i], p[j]))
                .collect();
            if best.as_ref().is_none_or(|b| flat < *b) {
                best = Some(flat);
            }
        });
        best.unwrap_or_default()
    }
}

fn permute<F: FnMut(&[usize])>(p: &mut Vec<usize>, k: usize, f: &mut F) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// −cos(π/m) as an exact scalar.
fn minus_cos_pi_over(m: Label) -> Result<QScalar> {
    Ok(match m {
        Label::Finite(1) => QScalar::from_int(1),
        Label::Finite(2) => QScalar::zero(),
        Label::Finite(3) => QScalar::from_rational(ratio(-1, 2)),
        Label::Finite(4) => QScalar::radical_term(ratio(-1, 2), 1),
        Label::Finite(5) => {
            // cos(π/5) = (1+√5)/4
            &QScalar::from_rational(ratio(-1, 4)) + &QScalar::radical_term(ratio(-1, 4), 4)
        }
        Label::Finite(6) => QScalar::radical_term(ratio(-1, 2), 2),
        Label::Infinity => QScalar::from_int(-1),
        other => return Err(Error::UnsupportedLabel(other.to_string())),
    })
}

/// Definiteness class of the bilinear form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TypeClass {
    Finite,
    Affine,
    Indefinite,
}

impl fmt::Display for TypeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeClass::Finite => write!(f, "finite"),
            TypeClass::Affine => write!(f, "affine"),
            TypeClass::Indefinite => write!(f, "indefinite"),
        }
    }
}

/// A group element: exact matrix on the root space plus a witness word.
/// Equality and hashing go through the matrix only — the geometric
/// representation is faithful, so this is a canonical form.
#[derive(Debug, Clone)]
pub struct Element {
    pub matrix: QMatrix,
    pub word: Vec<usize>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}
impl Eq for Element {}
impl std::hash::Hash for Element {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.matrix.hash(state);
    }
}

/// A point of the Tits cone in dual (weight-like) coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConePoint(pub Vec<QScalar>);

impl ConePoint {
    pub fn pairing(&self, s: usize) -> &QScalar {
        &self.0[s]
    }

    /// Face of the closed chamber containing the point: the set of walls the
    /// point lies on. Meaningful for dominant points.
    pub fn zero_set(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_zero())
            .map(|(s, _)| s)
            .collect()
    }
}

#[derive(Default)]
struct BallMemo {
    layers: Vec<Vec<Element>>,
    seen: std::collections::HashSet<QMatrix>,
}

/// A Coxeter system: matrix, generators, bilinear form, simple-reflection
/// matrices and their duals, and the definiteness class.
pub struct CoxeterSystem {
    matrix: CoxeterMatrix,
    generators: Vec<String>,
    bilinear: QMatrix,
    simple: Vec<QMatrix>,
    simple_dual: Vec<QMatrix>,
    type_class: TypeClass,
    ball_memo: Mutex<BallMemo>,
}

impl fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterSystem")
            .field("generators", &self.generators)
            .field("type_class", &self.type_class)
            .finish()
    }
}

/// Build the geometric representation from a Coxeter matrix. Generator names
/// default to s0, s1, … when not supplied.
pub fn build_system(matrix: CoxeterMatrix, names: Option<Vec<String>>) -> Result<CoxeterSystem> {
    let n = matrix.rank();
    let generators = match names {
        Some(v) => {
            if v.len() != n {
                return Err(Error::InvalidMatrix(format!(
                    "{} generator names for rank {n}",
                    v.len()
                )));
            }
            v
        }
        None => (0..n).map(|i| format!("s{i}")).collect(),
    };
    let mut bilinear = QMatrix::zero(n);
    for i in 0..n {
        for j in 0..n {
            bilinear.set(i, j, minus_cos_pi_over(matrix.label(i, j))?);
        }
    }
    // σs(αt) = αt − 2B(s,t)αs: identity except in row s.
    let mut simple = Vec::with_capacity(n);
    for s in 0..n {
        let mut m = QMatrix::identity(n);
        for t in 0..n {
            let b = bilinear.at(s, t);
            let delta = if s == t { QScalar::one() } else { QScalar::zero() };
            m.set(s, t, &delta - &(&QScalar::from_int(2) * b));
        }
        simple.push(m);
    }
    let simple_dual = simple.iter().map(|m| m.transpose()).collect();
    let type_class = classify(&bilinear);
    Ok(CoxeterSystem {
        matrix,
        generators,
        bilinear,
        simple,
        simple_dual,
        type_class,
        ball_memo: Mutex::new(BallMemo::default()),
    })
}

/// Positive definite iff all leading principal minors are positive
/// (Sylvester); positive semidefinite needs every principal minor ≥ 0.
fn classify(b: &QMatrix) -> TypeClass {
    let leading = b.leading_principal_minors();
    if leading.iter().all(|m| m.sign() == Sign::Positive) {
        return TypeClass::Finite;
    }
    let n = b.dim();
    let mut psd = true;
    'outer: for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        if b.principal_submatrix(&idx).det().sign() == Sign::Negative {
            psd = false;
            break 'outer;
        }
    }
    if psd {
        TypeClass::Affine
    } else {
        TypeClass::Indefinite
    }
}

impl CoxeterSystem {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn coxeter_matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generators
    }

    pub fn bilinear_form(&self) -> &QMatrix {
        &self.bilinear
    }

    pub fn simple_reflection(&self, s: usize) -> &QMatrix {
        &self.simple[s]
    }

    pub fn type_class(&self) -> TypeClass {
        self.type_class
    }

    pub fn identity(&self) -> Element {
        Element {
            matrix: QMatrix::identity(self.rank()),
            word: Vec::new(),
        }
    }

    pub fn generator(&self, s: usize) -> Element {
        Element {
            matrix: self.simple[s].clone(),
            word: vec![s],
        }
    }

    pub fn elem_from_word(&self, word: &[usize]) -> Element {
        let mut m = QMatrix::identity(self.rank());
        for &s in word {
            m = m.mul(&self.simple[s]);
        }
        Element {
            matrix: m,
            word: word.to_vec(),
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut word = a.word.clone();
        word.extend_from_slice(&b.word);
        let mut out = Element {
            matrix: a.matrix.mul(&b.matrix),
            word,
        };
        // Witness words are only evidence; keep them short enough to stay
        // useful by re-deriving a reduced word when they grow.
        if out.word.len() > 4 * self.rank() + 32 {
            out.word = self.canonical_word(&out);
        }
        out
    }

    pub fn inv(&self, a: &Element) -> Element {
        let word: Vec<usize> = a.word.iter().rev().copied().collect();
        self.elem_from_word(&word)
    }

    /// u·w·u⁻¹.
    pub fn conj(&self, u: &Element, w: &Element) -> Element {
        self.mul(&self.mul(u, w), &self.inv(u))
    }

    /// Is the column vector a negative root? Roots have all coordinates of
    /// one sign; we check every coordinate exactly.
    fn is_negative_root(&self, v: &[QScalar]) -> bool {
        let mut seen_negative = false;
        for c in v {
            match c.sign() {
                Sign::Positive => return false,
                Sign::Negative => seen_negative = true,
                Sign::Zero => {}
            }
        }
        seen_negative
    }

    /// Right descents: {s : w(αs) is a negative root}.
    pub fn right_descents(&self, w: &Element) -> Vec<usize> {
        let n = self.rank();
        (0..n)
            .filter(|&s| {
                let col: Vec<QScalar> = (0..n).map(|i| w.matrix.at(i, s).clone()).collect();
                self.is_negative_root(&col)
            })
            .collect()
    }

    /// The ShortLex-minimal reduced word: repeatedly peel the smallest left
    /// descent of w, which is the smallest right descent of w⁻¹.
    pub fn canonical_word(&self, w: &Element) -> Vec<usize> {
        let n = self.rank();
        let mut v = self.inv(w).matrix;
        let mut out = Vec::new();
        while !v.is_identity() {
            let mut found = None;
            for s in 0..n {
                let col: Vec<QScalar> = (0..n).map(|i| v.at(i, s).clone()).collect();
                if self.is_negative_root(&col) {
                    found = Some(s);
                    break;
                }
            }
            let s = found.expect("non-identity element must have a descent");
            out.push(s);
            v = v.mul(&self.simple[s]);
        }
        out
    }

    pub fn length(&self, w: &Element) -> usize {
        self.canonical_word(w).len()
    }

    /// Key for the ShortLex total order on elements.
    pub fn shortlex_key(&self, w: &Element) -> (usize, Vec<usize>) {
        let cw = self.canonical_word(w);
        (cw.len(), cw)
    }

    /// Apply the dual (contragredient) action of w to a point.
    pub fn dual_apply(&self, w: &Element, p: &ConePoint) -> ConePoint {
        // dual(w) = dual(s_{i1})···dual(s_{ik}) applied right-to-left.
        let mut v = p.0.clone();
        for &s in w.word.iter().rev() {
            v = self.simple_dual[s].apply(&v);
        }
        ConePoint(v)
    }

    /// Fold a Tits-cone point into the closed fundamental chamber. Returns
    /// (g, q) with q = g·p dominant; q is the unique representative of the
    /// W-orbit of p in the closed chamber.
    pub fn fold(&self, p: &ConePoint, step_cap: usize) -> Result<(Element, ConePoint)> {
        let n = self.rank();
        let mut q = p.clone();
        let mut letters: Vec<usize> = Vec::new();
        let mut steps = 0;
        loop {
            let neg = (0..n).find(|&s| q.pairing(s).sign() == Sign::Negative);
            match neg {
                None => break,
                Some(s) => {
                    q = ConePoint(self.simple_dual[s].apply(&q.0));
                    letters.push(s);
                    steps += 1;
                    if steps > step_cap {
                        return Err(Error::FoldCapExceeded { cap: step_cap });
                    }
                }
            }
        }
        // q = s_{ik}···s_{i1}·p, so g reads the letters in reverse.
        letters.reverse();
        let g = self.elem_from_word(&letters);
        Ok((g, q))
    }

    /// All elements of length ≤ radius, grouped by length. Layer k holds the
    /// elements of length exactly k in discovery order.
    pub fn ball_layers(&self, radius: usize, cap: usize) -> Result<Vec<Vec<Element>>> {
        let mut memo = self.ball_memo.lock().unwrap();
        if memo.layers.is_empty() {
            let e = self.identity();
            memo.seen.insert(e.matrix.clone());
            memo.layers.push(vec![e]);
        }
        while memo.layers.len() <= radius {
            let total: usize = memo.layers.iter().map(|l| l.len()).sum();
            let last = memo.layers.last().unwrap().clone();
            let mut next = Vec::new();
            for w in &last {
                for s in 0..self.rank() {
                    let m = w.matrix.mul(&self.simple[s]);
                    if memo.seen.contains(&m) {
                        continue;
                    }
                    let mut word = w.word.clone();
                    word.push(s);
                    memo.seen.insert(m.clone());
                    next.push(Element { matrix: m, word });
                }
            }
            if total + next.len() > cap {
                return Err(Error::BallCapExceeded { cap });
            }
            if next.is_empty() {
                // finite group exhausted; pad with empty layers
                memo.layers.push(Vec::new());
            } else {
                memo.layers.push(next);
            }
        }
        Ok(memo.layers[..=radius].to_vec())
    }

    /// Flattened ball in length-then-discovery order.
    pub fn ball(&self, radius: usize, cap: usize) -> Result<Vec<Element>> {
        Ok(self.ball_layers(radius, cap)?.into_iter().flatten().collect())
    }

    /// Seed the internal ball memo with externally validated layers (e.g.
    /// from a persistent cache). Layers must start at the identity.
    pub fn seed_ball_layers(&self, layers: Vec<Vec<Element>>) {
        let mut memo = self.ball_memo.lock().unwrap();
        if layers.len() <= memo.layers.len() {
            return;
        }
        let mut seen = std::collections::HashSet::new();
        for layer in &layers {
            for e in layer {
                seen.insert(e.matrix.clone());
            }
        }
        memo.layers = layers;
        memo.seen = seen;
    }

    /// Connected components of the odd Coxeter graph (edges where m_st is
    /// odd), as a map generator → component index, plus the component count.
    pub fn odd_graph_components(&self) -> (Vec<usize>, usize) {
        let n = self.rank();
        let mut comp: Vec<Option<usize>> = vec![None; n];
        let mut count = 0;
        for start in 0..n {
            if comp[start].is_some() {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = Some(count);
            while let Some(i) = stack.pop() {
                for j in 0..n {
                    if comp[j].is_some() {
                        continue;
                    }
                    if let Label::Finite(m) = self.matrix.label(i, j) {
                        if i != j && m % 2 == 1 {
                            comp[j] = Some(count);
                            stack.push(j);
                        }
                    }
                }
            }
            count += 1;
        }
        (comp.into_iter().map(|c| c.unwrap()).collect(), count)
    }

    /// Image of w in W^ab ≅ (ℤ/2)^c, computed from the witness word; the
    /// relations pair generators within one odd component, so the class does
    /// not depend on the word chosen.
    pub fn abelianization_class(&self, w: &Element) -> Vec<u8> {
        let (comp, count) = self.odd_graph_components();
        let mut v = vec![0u8; count];
        for &s in &w.word {
            v[comp[s]] ^= 1;
        }
        v
    }

    /// Pretty form of a word in generator names.
    pub fn word_string(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return "e".to_string();
        }
        word.iter()
            .map(|&s| self.generators[s].as_str())
            .collect::<Vec<_>>()
            .join(".")
    }

    /// Radical of the bilinear form (kernel of B), as exact vectors.
    pub fn radical_basis(&self) -> Vec<Vec<QScalar>> {
        crate::scalars::kernel_basis(&self.bilinear)
    }
}

/// Convenience: dihedral-style matrix on two generators.
pub fn rank2(m: Label) -> CoxeterMatrix {
    CoxeterMatrix::from_upper(2, &[(0, 1, m)]).unwrap()
}

/// Shipped test systems, keyed by the names used throughout the test suite.
pub fn named_matrix(name: &str) -> Option<CoxeterMatrix> {
    let m = |v: Label| v;
    let fin = Label::Finite;
    match name {
        "a1" => Some(CoxeterMatrix::from_upper(1, &[]).unwrap()),
        "a1xa1" => Some(rank2(m(fin(2)))),
        "a2" => Some(rank2(m(fin(3)))),
        "b2" => Some(rank2(m(fin(4)))),
        "g2" => Some(rank2(m(fin(6)))),
        "h2" => Some(rank2(m(fin(5)))),
        "affine_a1" => Some(rank2(Label::Infinity)),
        "affine_a2" => Some(
            CoxeterMatrix::from_upper(3, &[(0, 1, fin(3)), (0, 2, fin(3)), (1, 2, fin(3))])
                .unwrap(),
        ),
        "triangle_23inf" => Some(
            CoxeterMatrix::from_upper(3, &[(0, 1, fin(2)), (0, 2, fin(3)), (1, 2, Label::Infinity)])
                .unwrap(),
        ),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(name: &str) -> CoxeterSystem {
        build_system(named_matrix(name).unwrap(), None).unwrap()
    }

    #[test]
    fn type_classification() {
        assert_eq!(sys("a2").type_class(), TypeClass::Finite);
        assert_eq!(sys("affine_a1").type_class(), TypeClass::Affine);
        assert_eq!(sys("affine_a2").type_class(), TypeClass::Affine);
        assert_eq!(sys("triangle_23inf").type_class(), TypeClass::Indefinite);
        assert_eq!(sys("b2").type_class(), TypeClass::Finite);
        assert_eq!(sys("g2").type_class(), TypeClass::Finite);
        assert_eq!(sys("h2").type_class(), TypeClass::Finite);
    }

    #[test]
    fn a2_leading_minors() {
        let s = sys("a2");
        let minors = s.bilinear_form().leading_principal_minors();
        assert_eq!(minors[0], QScalar::one());
        assert_eq!(minors[1], QScalar::from_rational(ratio(3, 4)));
    }

    #[test]
    fn triangle_det_is_negative() {
        let s = sys("triangle_23inf");
        let det = s.bilinear_form().det();
        assert_eq!(det, QScalar::from_rational(ratio(-1, 4)));
    }

    #[test]
    fn affine_a1_form_is_psd_singular() {
        let s = sys("affine_a1");
        let b = s.bilinear_form();
        assert_eq!(*b.at(0, 1), QScalar::from_int(-1));
        assert!(b.det().is_zero());
    }

    #[test]
    fn generators_are_involutions_preserving_b() {
        for name in ["a2", "b2", "g2", "h2", "affine_a2", "triangle_23inf"] {
            let s = sys(name);
            let b = s.bilinear_form();
            for i in 0..s.rank() {
                let m = s.simple_reflection(i);
                assert!(m.mul(m).is_identity(), "{name}: σ{i}² ≠ 1");
                assert_eq!(m.transpose().mul(&b.mul(m)), *b, "{name}: σ{i} breaks B");
            }
        }
    }

    #[test]
    fn word_squares_to_identity() {
        let s = sys("a2");
        assert_eq!(s.elem_from_word(&[0, 0]), s.identity());
    }

    #[test]
    fn braid_relation_in_a2() {
        let s = sys("a2");
        assert_eq!(s.elem_from_word(&[0, 1, 0]), s.elem_from_word(&[1, 0, 1]));
    }

    #[test]
    fn canonical_word_frees_and_minimizes() {
        let s = sys("affine_a1");
        // [0,1,0,0,1] reduces freely: the (s0 s0) pair cancels, then (s1 s1).
        // Independent oracle: free reduction plus matrix equality.
        let w = s.elem_from_word(&[0, 1, 0, 0, 1]);
        let reduced = free_reduce_involutions(&[0, 1, 0, 0, 1]);
        assert_eq!(reduced, vec![0]);
        assert_eq!(s.elem_from_word(&reduced), w);
        assert_eq!(s.canonical_word(&w), reduced);
        // A word that is genuinely length 3 after free reduction.
        let w3 = s.elem_from_word(&[0, 1, 0, 1, 1]);
        assert_eq!(s.canonical_word(&w3).len(), 3);
    }

    /// Free reduction for involution generators: drop adjacent equal pairs.
    fn free_reduce_involutions(word: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for &s in word {
            if out.last() == Some(&s) {
                out.pop();
            } else {
                out.push(s);
            }
        }
        out
    }

    #[test]
    fn canonical_word_is_shortlex_minimal_small() {
        // Exhaustive oracle on short words: no shorter or lex-smaller word
        // produces the same matrix.
        for name in ["a2", "b2", "affine_a1"] {
            let s = sys(name);
            let mut best: HashMap<QMatrix, Vec<usize>> = HashMap::new();
            let mut frontier: Vec<Vec<usize>> = vec![vec![]];
            for _ in 0..=5 {
                for word in &frontier {
                    let e = s.elem_from_word(word);
                    best.entry(e.matrix).or_insert_with(|| word.clone());
                }
                frontier = frontier
                    .iter()
                    .flat_map(|w| {
                        (0..s.rank()).map(move |g| {
                            let mut w2 = w.clone();
                            w2.push(g);
                            w2
                        })
                    })
                    .collect();
            }
            for (m, word) in &best {
                let e = Element {
                    matrix: m.clone(),
                    word: word.clone(),
                };
                let canon = s.canonical_word(&e);
                assert_eq!(canon.len(), word.len(), "{name}: length mismatch");
                assert!(canon <= *word, "{name}: not lex-minimal");
            }
        }
    }

    #[test]
    fn ball_counts() {
        let s = sys("affine_a1");
        for radius in 0..8 {
            assert_eq!(s.ball(radius, 10_000).unwrap().len(), 2 * radius + 1);
        }
        let a2 = sys("a2");
        assert_eq!(a2.ball(1, 100).unwrap().len(), 3); // rank + 1
        assert_eq!(a2.ball(3, 100).unwrap().len(), 6); // whole group
        assert_eq!(a2.ball(10, 100).unwrap().len(), 6);
    }

    #[test]
    fn ball_cap_trips() {
        let s = sys("affine_a1");
        assert!(matches!(
            s.ball(100, 5),
            Err(Error::BallCapExceeded { cap: 5 })
        ));
    }

    #[test]
    fn fold_dominant_point_is_fixed() {
        let s = sys("affine_a1");
        let p = ConePoint(vec![
            QScalar::from_rational(ratio(1, 2)),
            QScalar::from_rational(ratio(1, 2)),
        ]);
        let (g, q) = s.fold(&p, 100).unwrap();
        assert_eq!(g, s.identity());
        assert_eq!(q, p);
    }

    #[test]
    fn fold_single_wall() {
        let s = sys("a2");
        // One negative pairing; one reflection fixes it.
        let p = ConePoint(vec![QScalar::from_int(-1), QScalar::from_int(2)]);
        let (g, q) = s.fold(&p, 100).unwrap();
        assert_eq!(g, s.generator(0));
        assert_eq!(q, s.dual_apply(&g, &p));
        assert!(q.0.iter().all(|c| c.sign() != Sign::Negative));
    }

    #[test]
    fn fold_on_the_affine_line() {
        // Level-1 slice of the Tits cone of affine A1 is a line with the
        // alcove [0,1] in the coordinate x = f1, walls x=0 and x=1.
        // Independent oracle: the orbit of x under (x ↦ −x, x ↦ 2−x) is
        // {±x + 2k}; the unique orbit point in [0,1] for x = 23/10 is 3/10,
        // and the alcove [2,3] is two walls away from [0,1].
        let s = sys("affine_a1");
        let p = ConePoint(vec![
            QScalar::from_rational(ratio(-13, 10)),
            QScalar::from_rational(ratio(23, 10)),
        ]);
        let (g, q) = s.fold(&p, 1000).unwrap();
        assert_eq!(
            q,
            ConePoint(vec![
                QScalar::from_rational(ratio(7, 10)),
                QScalar::from_rational(ratio(3, 10)),
            ])
        );
        assert_eq!(s.length(&g), 2);
        assert_eq!(s.dual_apply(&g, &p), q);
        // A point one alcove further out folds with three reflections.
        let p3 = ConePoint(vec![
            QScalar::from_rational(ratio(33, 10)),
            QScalar::from_rational(ratio(-23, 10)),
        ]);
        let (g3, q3) = s.fold(&p3, 1000).unwrap();
        assert_eq!(q3, q);
        assert_eq!(s.length(&g3), 3);
    }

    #[test]
    fn abelianization_classes() {
        let s = sys("affine_a1");
        assert_eq!(s.abelianization_class(&s.identity()), vec![0, 0]);
        assert_eq!(s.abelianization_class(&s.generator(0)), vec![1, 0]);
        assert_eq!(s.abelianization_class(&s.generator(1)), vec![0, 1]);
        let t = sys("affine_a2");
        // single odd component: every reflection maps to (1)
        for i in 0..3 {
            assert_eq!(t.abelianization_class(&t.generator(i)), vec![1]);
        }
        let r = t.elem_from_word(&[0, 1, 0]); // a reflection again
        assert_eq!(t.abelianization_class(&r), vec![1]);
    }

    #[test]
    fn homomorphism_property() {
        let s = sys("b2");
        let w1 = s.elem_from_word(&[0, 1]);
        let w2 = s.elem_from_word(&[1, 0, 1]);
        assert_eq!(s.mul(&w1, &w2), s.elem_from_word(&[0, 1, 1, 0, 1]));
    }

    #[test]
    fn fold_is_orbit_canonical() {
        let s = sys("affine_a1");
        let p = ConePoint(vec![
            QScalar::from_rational(ratio(2, 7)),
            QScalar::from_rational(ratio(5, 7)),
        ]);
        let (_, q) = s.fold(&p, 1000).unwrap();
        for g in s.ball(4, 1000).unwrap() {
            let moved = s.dual_apply(&g, &p);
            let (_, q2) = s.fold(&moved, 1000).unwrap();
            assert_eq!(q2, q);
        }
    }
}
