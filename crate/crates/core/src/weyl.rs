//! The finite Weyl group `W_0` and the extended affine (Iwahori-Weyl) group
//! `W = X_*(T) ⋊ W_0`: lengths, reduced words, Bruhat order and spherical
//! double cosets.
//!
//! An affine element `(lambda, w)` acts on `X_*(T) ⊗ R` by `x -> lambda + w x`,
//! so `(lambda, w)(lambda', w') = (lambda + w lambda', w w')`. The base alcove
//! lies in the dominant chamber at the origin; it enters only through the
//! length formula
//!
//! ```text
//! l(t_lambda w) = sum_{alpha > 0, w^-1 alpha > 0} |<alpha, lambda>|
//!               + sum_{alpha > 0, w^-1 alpha < 0} |<alpha, lambda> - 1|
//! ```
//!
//! and through the affine simple reflections `s_0 = t_{theta^v} s_theta`, one per
//! irreducible component, with `theta` the highest root of that component.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{self, IMat, IVec};
use crate::root_datum::{fmt_tuple, DominantCocharacter, RootDatum};

/// Limits on enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeylConfig {
    /// Largest finite Weyl group that will be enumerated.
    pub max_finite_order: usize,
    /// Largest length of `w` accepted by [`AffineWeylGroup::bruhat_leq`].
    pub bruhat_length_bound: u64,
}

impl Default for WeylConfig {
    fn default() -> Self {
        Self { max_finite_order: 3_628_800, bruhat_length_bound: 12 }
    }
}

/// An element of the finite Weyl group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteWeylElement {
    /// Action on the cocharacter lattice.
    pub action: IMat,
    /// Action on the character lattice.
    pub char_action: IMat,
    /// A reduced word in simple reflection indices (shortest, lexicographically first by BFS).
    pub word: Vec<usize>,
}

impl FiniteWeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }
}

/// The finite Weyl group of a root datum, fully enumerated.
#[derive(Clone, Debug)]
pub struct FiniteWeylGroup {
    rd: Arc<RootDatum>,
    elements: Vec<FiniteWeylElement>,
    index: HashMap<IMat, usize>,
    inverse: Vec<usize>,
    /// `inv_positive[w][a]`: whether `w^-1` sends the `a`-th positive root to a positive root.
    inv_positive: Vec<Vec<bool>>,
    /// `simple_left[i][w]` is the index of `s_i w`.
    simple_left: Vec<Vec<usize>>,
    /// `simple_right[i][w]` is the index of `w s_i`.
    simple_right: Vec<Vec<usize>>,
    longest: usize,
}

impl FiniteWeylGroup {
    /// Enumerates `W_0` by closing the simple reflection matrices under multiplication.
    pub fn new(rd: Arc<RootDatum>, config: &WeylConfig) -> Result<Self> {
        let n = rd.rank();
        let r = rd.semisimple_rank();
        let simple_cochar: Vec<IMat> = (0..r).map(|i| reflection_matrix_cochar(&rd, i)).collect();
        let simple_char: Vec<IMat> = (0..r).map(|i| reflection_matrix_char(&rd, i)).collect();
        let id = lattice::identity(n);
        let mut elements = vec![FiniteWeylElement { action: id.clone(), char_action: id.clone(), word: Vec::new() }];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(cur) = queue.pop_front() {
            for i in 0..r {
                let action = lattice::mat_mul(&elements[cur].action, &simple_cochar[i]);
                if index.contains_key(&action) {
                    continue;
                }
                if elements.len() >= config.max_finite_order {
                    return Err(Error::WeylGroupTooLarge(config.max_finite_order));
                }
                let char_action = lattice::mat_mul(&elements[cur].char_action, &simple_char[i]);
                let mut word = elements[cur].word.clone();
                word.push(i);
                index.insert(action.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(FiniteWeylElement { action, char_action, word });
            }
        }
        let lookup = |m: &IMat| -> usize { index[m] };
        let inverse: Vec<usize> = elements
            .iter()
            .map(|e| {
                let mut m = lattice::identity(n);
                for &i in e.word.iter().rev() {
                    m = lattice::mat_mul(&m, &simple_cochar[i]);
                }
                lookup(&m)
            })
            .collect();
        let positive: HashSet<&IVec> = rd.positive_roots().iter().collect();
        let inv_positive = (0..elements.len())
            .map(|w| {
                let winv = &elements[inverse[w]].char_action;
                rd.positive_roots()
                    .iter()
                    .map(|a| positive.contains(&lattice::mat_vec(winv, a)))
                    .collect()
            })
            .collect();
        let simple_left = (0..r)
            .map(|i| elements.iter().map(|e| lookup(&lattice::mat_mul(&simple_cochar[i], &e.action))).collect())
            .collect();
        let simple_right = (0..r)
            .map(|i| elements.iter().map(|e| lookup(&lattice::mat_mul(&e.action, &simple_cochar[i]))).collect())
            .collect();
        let longest = (0..elements.len()).max_by_key(|&w| elements[w].word.len()).unwrap_or(0);
        Ok(Self { rd, elements, index, inverse, inv_positive, simple_left, simple_right, longest })
    }

    pub fn root_datum(&self) -> &Arc<RootDatum> {
        &self.rd
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[FiniteWeylElement] {
        &self.elements
    }

    pub fn element(&self, w: usize) -> &FiniteWeylElement {
        &self.elements[w]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn longest(&self) -> usize {
        self.longest
    }

    /// Index of the simple reflection `s_i`.
    pub fn simple(&self, i: usize) -> usize {
        self.simple_left[i][0]
    }

    pub fn length(&self, w: usize) -> usize {
        self.elements[w].word.len()
    }

    /// Length computed as the number of positive roots sent to negative roots.
    pub fn inversion_count(&self, w: usize) -> usize {
        self.inv_positive[self.inverse[w]].iter().filter(|&&p| !p).count()
    }

    pub fn inverse(&self, w: usize) -> usize {
        self.inverse[w]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        // Walk the reduced word of b; each step is a table lookup.
        self.elements[b].word.iter().fold(a, |acc, &i| self.simple_right[i][acc])
    }

    pub fn index_of(&self, action: &IMat) -> Option<usize> {
        self.index.get(action).copied()
    }

    pub fn act(&self, w: usize, lam: &[i64]) -> IVec {
        lattice::mat_vec(&self.elements[w].action, lam)
    }

    pub fn act_on_character(&self, w: usize, chi: &[i64]) -> IVec {
        lattice::mat_vec(&self.elements[w].char_action, chi)
    }

    /// Whether `w^-1 alpha > 0` for the `a`-th positive root.
    pub fn inverse_keeps_positive(&self, w: usize, a: usize) -> bool {
        self.inv_positive[w][a]
    }

    /// The `W_0`-orbit of a cocharacter, sorted and without repetition.
    pub fn orbit(&self, lam: &[i64]) -> Vec<IVec> {
        let set: BTreeSet<IVec> = (0..self.order()).map(|w| self.act(w, lam)).collect();
        set.into_iter().collect()
    }

    /// The dominant element of the orbit of `lam`.
    pub fn dominant_conjugate(&self, lam: &[i64]) -> IVec {
        let mut v = lam.to_vec();
        // Reflect in any simple root pairing negatively; terminates because each
        // step raises v in the dominance order.
        loop {
            match (0..self.rd.semisimple_rank()).find(|&i| self.rd.pair_simple_root(i, &v) < 0) {
                Some(i) => {
                    let k = self.rd.pair_simple_root(i, &v);
                    v = lattice::sub(&v, &lattice::scale(k, &self.rd.simple_coroots()[i]));
                }
                None => return v,
            }
        }
    }

    /// `sum_{w in W_0} q^{l(w)}` as coefficient list by length.
    pub fn length_distribution(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.length(self.longest) + 1];
        for e in &self.elements {
            out[e.word.len()] += 1;
        }
        out
    }

    /// Formats a finite element by its reduced word, e.g. `s1s2`, or `e`.
    pub fn word_string(&self, w: usize) -> String {
        word_string(&self.elements[w].word.iter().map(|i| i + 1).collect::<Vec<_>>())
    }
}

fn word_string(one_based: &[usize]) -> String {
    if one_based.is_empty() {
        "e".to_string()
    } else {
        one_based.iter().map(|i| format!("s{i}")).collect()
    }
}

fn reflection_matrix_cochar(rd: &RootDatum, i: usize) -> IMat {
    let n = rd.rank();
    let cols: Vec<IVec> = (0..n)
        .map(|j| {
            let mut e = vec![0; n];
            e[j] = 1;
            let k = rd.pair_simple_root(i, &e);
            lattice::sub(&e, &lattice::scale(k, &rd.simple_coroots()[i]))
        })
        .collect();
    lattice::transpose(&cols)
}

fn reflection_matrix_char(rd: &RootDatum, i: usize) -> IMat {
    let n = rd.rank();
    let cols: Vec<IVec> = (0..n)
        .map(|j| {
            let mut e = vec![0; n];
            e[j] = 1;
            let k = rd.pair(&e, &rd.simple_coroots()[i]);
            lattice::sub(&e, &lattice::scale(k, &rd.simple_roots()[i]))
        })
        .collect();
    lattice::transpose(&cols)
}

/// An element `t_lambda w` of the extended affine Weyl group.
///
/// `finite` indexes into the [`FiniteWeylGroup`] of the owning
/// [`AffineWeylGroup`]; elements of different groups must not be mixed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineWeylElement {
    pub translation: IVec,
    pub finite: usize,
}

/// One affine simple reflection, with its display label.
#[derive(Clone, Debug)]
pub struct AffineGenerator {
    pub element: AffineWeylElement,
    pub label: String,
    /// `Some(i)` for the finite simple reflection `s_{i+1}`, `None` for an affine `s_0`.
    pub finite_index: Option<usize>,
}

/// JSON form of an affine element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineElementJson {
    pub translation: IVec,
    pub word: String,
    pub omega: String,
}

/// The extended affine Weyl group with its affine simple system.
#[derive(Clone, Debug)]
pub struct AffineWeylGroup {
    finite: FiniteWeylGroup,
    generators: Vec<AffineGenerator>,
    config: WeylConfig,
}

/// Which descent to take first when building reduced words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieBreak {
    Smallest,
    Largest,
}

/// The double coset `W_0 t_mu W_0`.
#[derive(Clone, Debug)]
pub struct DoubleCoset {
    pub mu: DominantCocharacter,
    pub elements: Vec<AffineWeylElement>,
    pub min_length: AffineWeylElement,
    pub max_length: AffineWeylElement,
}

impl AffineWeylGroup {
    pub fn new(rd: Arc<RootDatum>, config: WeylConfig) -> Result<Self> {
        let finite = FiniteWeylGroup::new(rd.clone(), &config)?;
        let n = rd.rank();
        let r = rd.semisimple_rank();
        let mut generators = Vec::new();
        let components = irreducible_components(&rd);
        for (c, comp) in components.iter().enumerate() {
            // Highest root of the component: the positive root of maximal height
            // supported on it.
            let theta = (0..rd.positive_roots().len())
                .filter(|&a| in_component(&rd, a, comp))
                .max_by_key(|&a| height(&rd, a))
                .expect("components are nonempty");
            let s_theta = finite
                .index_of(&reflection_matrix_general(&rd, theta))
                .expect("reflections lie in W_0");
            let element = AffineWeylElement { translation: rd.positive_coroots()[theta].clone(), finite: s_theta };
            let label = if components.len() == 1 { "s0".to_string() } else { format!("s0_{}", c + 1) };
            generators.push(AffineGenerator { element, label, finite_index: None });
        }
        for i in 0..r {
            generators.push(AffineGenerator {
                element: AffineWeylElement { translation: vec![0; n], finite: finite.simple(i) },
                label: format!("s{}", i + 1),
                finite_index: Some(i),
            });
        }
        let group = Self { finite, generators, config };
        for g in &group.generators {
            let l = group.length(&g.element);
            if l != 1 {
                return Err(Error::Internal(format!("generator {} has length {l}", g.label)));
            }
        }
        Ok(group)
    }

    /// Builds the group of a catalog datum with default limits.
    pub fn for_datum(rd: RootDatum) -> Result<Self> {
        Self::new(Arc::new(rd), WeylConfig::default())
    }

    pub fn root_datum(&self) -> &Arc<RootDatum> {
        self.finite.root_datum()
    }

    pub fn finite(&self) -> &FiniteWeylGroup {
        &self.finite
    }

    pub fn config(&self) -> &WeylConfig {
        &self.config
    }

    pub fn generators(&self) -> &[AffineGenerator] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &AffineWeylElement {
        &self.generators[i].element
    }

    /// Index of the generator with the given label (`s0`, `s1`, `s0_2`, ...).
    pub fn generator_index(&self, label: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.label == label)
    }

    pub fn identity(&self) -> AffineWeylElement {
        AffineWeylElement { translation: vec![0; self.root_datum().rank()], finite: 0 }
    }

    pub fn translation(&self, lam: &[i64]) -> AffineWeylElement {
        AffineWeylElement { translation: lam.to_vec(), finite: 0 }
    }

    pub fn from_finite(&self, w: usize) -> AffineWeylElement {
        self.from_parts(vec![0; self.root_datum().rank()], w)
    }

    pub fn from_parts(&self, translation: IVec, finite: usize) -> AffineWeylElement {
        AffineWeylElement { translation, finite }
    }

    pub fn mul(&self, x: &AffineWeylElement, y: &AffineWeylElement) -> AffineWeylElement {
        let moved = self.finite.act(x.finite, &y.translation);
        AffineWeylElement {
            translation: lattice::add(&x.translation, &moved),
            finite: self.finite.mul(x.finite, y.finite),
        }
    }

    pub fn inverse(&self, x: &AffineWeylElement) -> AffineWeylElement {
        let winv = self.finite.inverse(x.finite);
        AffineWeylElement { translation: lattice::neg(&self.finite.act(winv, &x.translation)), finite: winv }
    }

    /// Iwahori-Matsumoto length.
    pub fn length(&self, x: &AffineWeylElement) -> u64 {
        let rd = self.root_datum();
        (0..rd.positive_roots().len())
            .map(|a| {
                let p = rd.pair_positive_root(a, &x.translation);
                if self.finite.inverse_keeps_positive(x.finite, a) {
                    p.unsigned_abs()
                } else {
                    (p - 1).unsigned_abs()
                }
            })
            .sum()
    }

    /// `s_i x`.
    pub fn left_mul_generator(&self, i: usize, x: &AffineWeylElement) -> AffineWeylElement {
        let g = &self.generators[i];
        match g.finite_index {
            Some(j) => AffineWeylElement {
                translation: self.finite.act(g.element.finite, &x.translation),
                finite: self.finite.simple_left[j][x.finite],
            },
            None => self.mul(&g.element, x),
        }
    }

    /// `x s_i`.
    pub fn right_mul_generator(&self, x: &AffineWeylElement, i: usize) -> AffineWeylElement {
        let g = &self.generators[i];
        match g.finite_index {
            Some(j) => AffineWeylElement { translation: x.translation.clone(), finite: self.finite.simple_right[j][x.finite] },
            None => self.mul(x, &g.element),
        }
    }

    /// Reduced expression `x = s_{i_1} ... s_{i_k} omega` with `omega` of length
    /// zero, peeling off the smallest left descent at each step.
    pub fn reduced_word(&self, x: &AffineWeylElement) -> Result<(Vec<usize>, AffineWeylElement)> {
        self.reduced_word_with(x, TieBreak::Smallest)
    }

    pub fn reduced_word_with(&self, x: &AffineWeylElement, tie: TieBreak) -> Result<(Vec<usize>, AffineWeylElement)> {
        let mut cur = x.clone();
        let mut len = self.length(&cur);
        let mut word = Vec::with_capacity(len as usize);
        let order: Vec<usize> = match tie {
            TieBreak::Smallest => (0..self.generators.len()).collect(),
            TieBreak::Largest => (0..self.generators.len()).rev().collect(),
        };
        while len > 0 {
            let step = order.iter().find_map(|&i| {
                let y = self.left_mul_generator(i, &cur);
                let ly = self.length(&y);
                (ly < len).then_some((i, y, ly))
            });
            match step {
                Some((i, y, ly)) => {
                    word.push(i);
                    cur = y;
                    len = ly;
                }
                None => {
                    return Err(Error::Internal(format!(
                        "element {} of length {len} has no left descent",
                        self.format(x)
                    )))
                }
            }
        }
        Ok((word, cur))
    }

    /// Evaluates a generator word followed by `omega`.
    pub fn evaluate(&self, word: &[usize], omega: &AffineWeylElement) -> AffineWeylElement {
        word.iter().rev().fold(omega.clone(), |acc, &i| self.left_mul_generator(i, &acc))
    }

    /// The length-zero part of `x`.
    pub fn omega_part(&self, x: &AffineWeylElement) -> Result<AffineWeylElement> {
        Ok(self.reduced_word(x)?.1)
    }

    /// Bruhat order via the subword property on the reduced word of `w`.
    pub fn bruhat_leq(&self, v: &AffineWeylElement, w: &AffineWeylElement) -> Result<bool> {
        let lw = self.length(w);
        if lw > self.config.bruhat_length_bound {
            return Err(Error::LengthBoundExceeded { length: lw, bound: self.config.bruhat_length_bound });
        }
        let (word, omega) = self.reduced_word(w)?;
        self.bruhat_leq_on_word(v, &word, &omega)
    }

    /// Subword test against an explicit reduced word of `w`.
    pub fn bruhat_leq_on_word(&self, v: &AffineWeylElement, word: &[usize], omega: &AffineWeylElement) -> Result<bool> {
        if self.length(v) > word.len() as u64 {
            return Ok(false);
        }
        let (_, v_omega) = self.reduced_word(v)?;
        if v_omega != *omega {
            return Ok(false);
        }
        // All products of subwords of the Coxeter part.
        let mut subwords: HashSet<AffineWeylElement> = HashSet::from([self.identity()]);
        for &i in word {
            let extended: Vec<AffineWeylElement> =
                subwords.iter().map(|x| self.right_mul_generator(x, i)).collect();
            subwords.extend(extended);
        }
        let v_cox = self.mul(v, &self.inverse(omega));
        Ok(subwords.contains(&v_cox))
    }

    /// The full double coset `W_0 t_mu W_0`, by enumerating `u t_mu v`.
    pub fn spherical_double_coset(&self, mu: &DominantCocharacter) -> DoubleCoset {
        let t = self.translation(mu.coords());
        let mut set: BTreeSet<AffineWeylElement> = BTreeSet::new();
        for u in 0..self.finite.order() {
            let ut = self.mul(&self.from_finite(u), &t);
            for v in 0..self.finite.order() {
                set.insert(self.mul(&ut, &self.from_finite(v)));
            }
        }
        let elements: Vec<AffineWeylElement> = set.into_iter().collect();
        let by_len = |x: &&AffineWeylElement| (self.length(x), (*x).clone());
        let min_length = elements.iter().min_by_key(by_len).cloned().expect("nonempty");
        let max_length = elements.iter().max_by_key(by_len).cloned().expect("nonempty");
        DoubleCoset { mu: mu.clone(), elements, min_length, max_length }
    }

    /// The dominant cocharacter indexing the double coset containing `x`.
    pub fn double_coset_of(&self, x: &AffineWeylElement) -> DominantCocharacter {
        DominantCocharacter(self.finite.dominant_conjugate(&x.translation))
    }

    /// Length-zero elements whose translation part lies in `[-bound, bound]^n`.
    pub fn omega_elements(&self, bound: i64) -> Vec<AffineWeylElement> {
        let n = self.root_datum().rank();
        let mut out = Vec::new();
        let mut lam = vec![-bound; n];
        loop {
            for w in 0..self.finite.order() {
                let x = AffineWeylElement { translation: lam.clone(), finite: w };
                if self.length(&x) == 0 {
                    out.push(x);
                }
            }
            let mut i = 0;
            loop {
                if i == n {
                    return out;
                }
                lam[i] += 1;
                if lam[i] > bound {
                    lam[i] = -bound;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    }

    /// The permutation of affine simple reflections induced by conjugation with
    /// a length-zero element: `omega s_i omega^-1 = s_{sigma(i)}`.
    pub fn omega_permutation(&self, omega: &AffineWeylElement) -> Result<Vec<usize>> {
        let inv = self.inverse(omega);
        self.generators
            .iter()
            .map(|g| {
                let c = self.mul(&self.mul(omega, &g.element), &inv);
                self.generators
                    .iter()
                    .position(|h| h.element == c)
                    .ok_or_else(|| Error::Internal("length-zero element does not permute generators".into()))
            })
            .collect()
    }

    /// The Coxeter matrix of the affine simple system, computed from element orders.
    pub fn coxeter_matrix(&self) -> Vec<Vec<u32>> {
        let k = self.generators.len();
        let mut m = vec![vec![1u32; k]; k];
        for i in 0..k {
            for j in 0..k {
                if i != j {
                    m[i][j] = self.order_of_product(i, j);
                }
            }
        }
        m
    }

    /// Order of `s_i s_j`, or 0 when infinite (only possible between commuting
    /// components of a torus-free rank-one piece, i.e. never for a finite-type datum).
    fn order_of_product(&self, i: usize, j: usize) -> u32 {
        let p = self.mul(self.generator(i), self.generator(j));
        let mut acc = p.clone();
        for k in 1..=12u32 {
            if acc == self.identity() {
                return k;
            }
            acc = self.mul(&acc, &p);
        }
        0
    }

    /// Text form `t[lambda]·w`.
    pub fn format(&self, x: &AffineWeylElement) -> String {
        format!("t[{}]·{}", fmt_tuple(&x.translation).trim_matches(['(', ')']), self.finite.word_string(x.finite))
    }

    pub fn word_labels(&self, word: &[usize]) -> String {
        if word.is_empty() {
            "e".to_string()
        } else {
            word.iter().map(|&i| self.generators[i].label.as_str()).collect()
        }
    }

    pub fn to_json(&self, x: &AffineWeylElement) -> Result<AffineElementJson> {
        let (word, omega) = self.reduced_word(x)?;
        Ok(AffineElementJson { translation: x.translation.clone(), word: self.word_labels(&word), omega: self.format(&omega) })
    }

    /// Parses `e`, a generator word such as `s1s0s1`, `t[1,0]`, `t[1,0]·s1s2`
    /// (the finite word after the dot), or `w0` for the longest finite element.
    pub fn parse_element(&self, s: &str) -> Result<AffineWeylElement> {
        let t = s.trim();
        let bad = || Error::Parse(format!("cannot parse affine Weyl element `{s}`"));
        if t.is_empty() || t == "e" {
            return Ok(self.identity());
        }
        if t == "w0" {
            return Ok(self.from_finite(self.finite.longest()));
        }
        if let Some(rest) = t.strip_prefix("t[") {
            let (lam, tail) = rest.split_once(']').ok_or_else(bad)?;
            let lam = crate::root_datum::parse_tuple(lam)?;
            if lam.len() != self.root_datum().rank() {
                return Err(Error::RankMismatch { expected: self.root_datum().rank(), got: lam.len() });
            }
            let tail = tail.trim_start_matches(['·', '.', '*']);
            let w = if tail.is_empty() || tail == "e" {
                self.identity()
            } else {
                let word = self.parse_word(tail)?;
                if word.iter().any(|&i| self.generators[i].finite_index.is_none()) {
                    return Err(bad());
                }
                self.evaluate(&word, &self.identity())
            };
            return Ok(self.mul(&self.translation(&lam), &w));
        }
        let word = self.parse_word(t)?;
        Ok(self.evaluate(&word, &self.identity()))
    }

    /// Parses a concatenation of generator labels, longest label first.
    pub fn parse_word(&self, s: &str) -> Result<Vec<usize>> {
        let mut labels: Vec<(usize, &str)> = self.generators.iter().enumerate().map(|(i, g)| (i, g.label.as_str())).collect();
        labels.sort_by_key(|(_, l)| std::cmp::Reverse(l.len()));
        let mut rest = s.trim();
        let mut word = Vec::new();
        // A bare `s` names the finite simple reflection when there is only one.
        let finite: Vec<usize> = (0..self.generators.len()).filter(|&i| self.generators[i].finite_index.is_some()).collect();
        if !rest.is_empty() && rest.chars().all(|c| c == 's') && finite.len() == 1 {
            return Ok(vec![finite[0]; rest.len()]);
        }
        while !rest.is_empty() {
            let (i, l) = labels
                .iter()
                .find(|(_, l)| rest.starts_with(l) && !next_is_digit(rest, l.len()))
                .ok_or_else(|| Error::Parse(format!("unknown generator in `{s}`")))?;
            word.push(*i);
            rest = &rest[l.len()..];
        }
        Ok(word)
    }
}

fn next_is_digit(s: &str, at: usize) -> bool {
    s[at..].chars().next().is_some_and(|c| c.is_ascii_digit())
}

fn reflection_matrix_general(rd: &RootDatum, a: usize) -> IMat {
    let n = rd.rank();
    let cols: Vec<IVec> = (0..n)
        .map(|j| {
            let mut e = vec![0; n];
            e[j] = 1;
            rd.reflect_cocharacter(a, &e)
        })
        .collect();
    lattice::transpose(&cols)
}

/// Connected components of the Dynkin diagram, as sets of simple root indices.
fn irreducible_components(rd: &RootDatum) -> Vec<Vec<usize>> {
    let a = rd.cartan_matrix();
    let r = a.len();
    let mut seen = vec![false; r];
    let mut comps = Vec::new();
    for s in 0..r {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..r {
                if !seen[j] && a[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

fn simple_root_coordinates(rd: &RootDatum, a: usize) -> IVec {
    // Positive roots are nonnegative integer combinations of simple roots;
    // recover the coordinates through the coroot pairing-free solver on roots.
    let solver = lattice::CoordinateSolver::new(rd.simple_roots(), rd.rank()).expect("validated datum");
    solver.solve(&rd.positive_roots()[a]).expect("roots are integral combinations")
}

fn in_component(rd: &RootDatum, a: usize, comp: &[usize]) -> bool {
    simple_root_coordinates(rd, a)
        .iter()
        .enumerate()
        .all(|(i, &c)| c == 0 || comp.contains(&i))
}

fn height(rd: &RootDatum, a: usize) -> i64 {
    simple_root_coordinates(rd, a).iter().sum()
}

impl fmt::Display for AffineWeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t[{}]·w#{}", fmt_tuple(&self.translation).trim_matches(['(', ')']), self.finite)
    }
}
