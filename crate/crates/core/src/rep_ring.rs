//! Representations of the dual group `G^` and of the modified dual group
//! `G^_1`: weight multiplicities, characters, tensor products, Lusztig's
//! q-analogs, and the ring `R(G^_1)` with its quotient by `[d^-1] - q`.
//!
//! Weights of `G^` are cocharacters of `G`; the positive roots of `G^` are the
//! positive coroots of `G`. Half-integral `rho^` never appears directly: every
//! formula that needs it works with `2 rho^` and halves at the end.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::algebra::{FreeModule, LaurentPoly};
use crate::error::{Error, Result};
use crate::lattice::{self, IVec};
use crate::root_datum::{DominantCocharacter, RootDatum};
use crate::weyl::{AffineWeylGroup, FiniteWeylGroup};

/// A character of `G^`: weight multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Character {
    pub weights: BTreeMap<IVec, u64>,
}

impl Character {
    pub fn dimension(&self) -> u64 {
        self.weights.values().sum()
    }

    pub fn multiplicity(&self, lam: &[i64]) -> u64 {
        self.weights.get(lam).copied().unwrap_or(0)
    }

    /// Pointwise product of characters (tensor product of representations).
    pub fn tensor(&self, other: &Character) -> Character {
        let mut weights = BTreeMap::new();
        for (a, m) in &self.weights {
            for (b, n) in &other.weights {
                *weights.entry(lattice::add(a, b)).or_insert(0) += m * n;
            }
        }
        Character { weights }
    }

    pub fn is_weyl_invariant(&self, w: &FiniteWeylGroup) -> bool {
        self.weights
            .iter()
            .all(|(lam, m)| (0..w.order()).all(|x| self.multiplicity(&w.act(x, lam)) == *m))
    }
}

/// Basis element `(mu, k)` of `R(G^_1)`: the irreducible representation of
/// highest weight `mu` on which the central `G_m` acts with weight `k`.
///
/// `k ≡ <2 rho, mu> (mod 2)`. The representation written `V_mu(n)` with a Tate
/// twist `n` has `k = 2n - <2 rho, mu>`, so `[d] = V_0(1)` is `(0, 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct G1RepClass {
    pub mu: DominantCocharacter,
    pub k: i64,
}

impl fmt::Display for G1RepClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V{}<{}>", self.mu, self.k)
    }
}

/// An element of `R(G^_1) ⊗ Z[q, q^-1]`.
pub type G1RingElement = FreeModule<G1RepClass, LaurentPoly>;

/// Representation theory of the dual group of one root datum.
///
/// Partition-function values and tensor decompositions are cached; each entry
/// is computed deterministically, so concurrent writers store identical values.
#[derive(Debug)]
pub struct DualReps {
    group: Arc<AffineWeylGroup>,
    /// Positive coroots in simple-coroot coordinates.
    positive_coroot_coords: Vec<IVec>,
    partition_cache: RwLock<HashMap<IVec, LaurentPoly>>,
    tensor_cache: RwLock<HashMap<(DominantCocharacter, DominantCocharacter), BTreeMap<DominantCocharacter, u64>>>,
}

impl DualReps {
    pub fn new(group: Arc<AffineWeylGroup>) -> Self {
        let rd = group.root_datum().clone();
        let positive_coroot_coords = rd
            .positive_coroots()
            .iter()
            .map(|c| rd.coroot_coordinates(c).expect("coroots lie in the coroot lattice"))
            .collect();
        Self {
            group,
            positive_coroot_coords,
            partition_cache: RwLock::new(HashMap::new()),
            tensor_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn group(&self) -> &Arc<AffineWeylGroup> {
        &self.group
    }

    pub fn root_datum(&self) -> &RootDatum {
        self.group.root_datum()
    }

    fn weyl(&self) -> &FiniteWeylGroup {
        self.group.finite()
    }

    /// q-Kostant partition function over the positive coroots:
    /// `sum q^{size}` over multisets of positive coroots summing to `v`.
    /// With `q_graded = false` the value is evaluated at `q = 1`.
    pub fn kostant_partition(&self, v: &[i64], q_graded: bool) -> LaurentPoly {
        let Some(coords) = self.root_datum().coroot_coordinates(v) else {
            return LaurentPoly::zero();
        };
        if coords.iter().any(|&c| c < 0) {
            return LaurentPoly::zero();
        }
        let p = self.partition_by_coords(&coords);
        if q_graded {
            p
        } else {
            LaurentPoly::constant(p.eval_at_one())
        }
    }

    fn partition_by_coords(&self, coords: &IVec) -> LaurentPoly {
        if let Some(p) = self.partition_cache.read().expect("cache lock").get(coords) {
            return p.clone();
        }
        let mut memo = HashMap::new();
        let p = partition_rec(&self.positive_coroot_coords, coords, 0, &mut memo);
        self.partition_cache.write().expect("cache lock").insert(coords.clone(), p.clone());
        p
    }

    /// Alternating sum `sum_w (-1)^{l(w)} P(w(mu + rho^) - (lam + rho^))` with the
    /// graded or ungraded partition function.
    fn kostant_sum(&self, mu: &[i64], lam: &[i64], q_graded: bool) -> LaurentPoly {
        let w = self.weyl();
        let two_rho = self.root_datum().two_rho_check();
        let top = lattice::add(&lattice::scale(2, mu), two_rho);
        let base = lattice::add(&lattice::scale(2, lam), two_rho);
        let mut acc = LaurentPoly::zero();
        for x in 0..w.order() {
            let diff2 = lattice::sub(&w.act(x, &top), &base);
            if diff2.iter().any(|c| c % 2 != 0) {
                continue;
            }
            let diff: IVec = diff2.iter().map(|c| c / 2).collect();
            let p = self.kostant_partition(&diff, q_graded);
            if w.length(x) % 2 == 0 {
                acc += &p;
            } else {
                acc -= &p;
            }
        }
        acc
    }

    /// Dimension of the `lam`-weight space of the irreducible representation `V_mu` of `G^`.
    pub fn weight_multiplicity(&self, mu: &DominantCocharacter, lam: &[i64]) -> u64 {
        let dom = self.weyl().dominant_conjugate(lam);
        let m = self.kostant_sum(mu.coords(), &dom, false).eval_at_one();
        m.to_u64().expect("weight multiplicities are nonnegative")
    }

    /// Lusztig's q-analog of the weight multiplicity.
    pub fn lusztig_q_analog(&self, mu: &DominantCocharacter, lam: &[i64]) -> LaurentPoly {
        self.kostant_sum(mu.coords(), lam, true)
    }

    /// Dominant weights of `V_mu` with their multiplicities.
    pub fn dominant_character(&self, mu: &DominantCocharacter) -> BTreeMap<DominantCocharacter, u64> {
        self.root_datum()
            .dominant_below(mu)
            .into_iter()
            .filter_map(|lam| {
                let m = self.weight_multiplicity(mu, lam.coords());
                (m > 0).then_some((lam, m))
            })
            .collect()
    }

    /// The full character of `V_mu`.
    pub fn character(&self, mu: &DominantCocharacter) -> Character {
        let mut weights = BTreeMap::new();
        for (lam, m) in self.dominant_character(mu) {
            for v in self.weyl().orbit(lam.coords()) {
                weights.insert(v, m);
            }
        }
        Character { weights }
    }

    /// `dim V_mu`.
    pub fn weyl_dim(&self, mu: &DominantCocharacter) -> u64 {
        self.dominant_character(mu)
            .iter()
            .map(|(lam, m)| m * self.weyl().orbit(lam.coords()).len() as u64)
            .sum()
    }

    /// Multiplicities `N_{mu lam}^nu` in `V_mu ⊗ V_lam`.
    ///
    /// Multiplies characters and repeatedly strips off the irreducible of the
    /// highest remaining dominant weight.
    pub fn tensor_decompose(
        &self,
        mu: &DominantCocharacter,
        lam: &DominantCocharacter,
    ) -> Result<BTreeMap<DominantCocharacter, u64>> {
        let key = if mu <= lam { (mu.clone(), lam.clone()) } else { (lam.clone(), mu.clone()) };
        if let Some(v) = self.tensor_cache.read().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let rd = self.root_datum();
        let product = self.character(mu).tensor(&self.character(lam));
        let mut remaining: BTreeMap<DominantCocharacter, i64> = product
            .weights
            .into_iter()
            .filter(|(w, _)| rd.is_dominant(w))
            .map(|(w, m)| (DominantCocharacter(w), m as i64))
            .collect();
        let mut out = BTreeMap::new();
        loop {
            if let Some((w, m)) = remaining.iter().find(|(_, &m)| m < 0) {
                return Err(Error::Internal(format!("tensor extraction left multiplicity {m} at {w}")));
            }
            let top = remaining
                .iter()
                .filter(|(_, &m)| m > 0)
                .max_by_key(|(w, _)| (rd.d_pairing(w.coords()), (*w).clone()))
                .map(|(w, &m)| (w.clone(), m));
            let Some((nu, n)) = top else { break };
            for (kappa, m) in self.dominant_character(&nu) {
                *remaining.entry(kappa).or_insert(0) -= n * m as i64;
            }
            remaining.retain(|_, m| *m != 0);
            out.insert(nu, n as u64);
        }
        self.tensor_cache.write().expect("cache lock").insert(key, out.clone());
        Ok(out)
    }

    /// The class `(mu, k)` after checking the parity condition.
    pub fn g1_class(&self, mu: DominantCocharacter, k: i64) -> Result<G1RepClass> {
        if (k - self.root_datum().d_pairing(mu.coords())).rem_euclid(2) != 0 {
            return Err(Error::Internal(format!("central weight {k} has the wrong parity for {mu}")));
        }
        Ok(G1RepClass { mu, k })
    }

    /// The class of `V_mu(n)`.
    pub fn twisted_class(&self, mu: &DominantCocharacter, n: i64) -> G1RepClass {
        let k = 2 * n - self.root_datum().d_pairing(mu.coords());
        G1RepClass { mu: mu.clone(), k }
    }

    /// `[d] = [V_0(1)]`.
    pub fn d_class(&self) -> G1RepClass {
        self.twisted_class(&self.root_datum().zero(), 1)
    }

    pub fn g1_unit(&self) -> G1RingElement {
        G1RingElement::basis(G1RepClass { mu: self.root_datum().zero(), k: 0 })
    }

    /// Product in `R(G^_1)`: `(mu, j)(lam, k) = sum_nu N_{mu lam}^nu (nu, j + k)`.
    pub fn g1_mul(&self, a: &G1RingElement, b: &G1RingElement) -> Result<G1RingElement> {
        a.try_bilinear(b, |x, y| {
            let mut out = G1RingElement::zero();
            for (nu, n) in self.tensor_decompose(&x.mu, &y.mu)? {
                let class = self.g1_class(nu, x.k + y.k)?;
                out.add_term(class, LaurentPoly::constant(n));
            }
            Ok(out)
        })
    }

    /// Normal form in `R(G^_1)/([d^-1] - q)`: `(mu, k) -> q^{-(k - r)/2} (mu, r)` with
    /// `r = k mod 2`.
    pub fn quotient_normal_form(&self, x: &G1RingElement) -> G1RingElement {
        x.map_basis(|c| {
            let r = c.k.rem_euclid(2);
            G1RingElement::term(G1RepClass { mu: c.mu.clone(), k: r }, LaurentPoly::q_pow(-(c.k - r) / 2))
        })
    }

    /// Whether every key has `k ∈ {0, 1}`.
    pub fn is_normal_form(&self, x: &G1RingElement) -> bool {
        x.keys().all(|c| c.k == 0 || c.k == 1)
    }
}

fn partition_rec(
    gens: &[IVec],
    target: &IVec,
    from: usize,
    memo: &mut HashMap<(IVec, usize), LaurentPoly>,
) -> LaurentPoly {
    if target.iter().all(|&c| c == 0) {
        return LaurentPoly::one();
    }
    if from == gens.len() {
        return LaurentPoly::zero();
    }
    let key = (target.clone(), from);
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let mut acc = LaurentPoly::zero();
    let mut rest = target.clone();
    let mut j = 0i64;
    loop {
        let sub = partition_rec(gens, &rest, from + 1, memo);
        acc += &sub.shift(j).expect("small exponents");
        rest = lattice::sub(&rest, &gens[from]);
        if rest.iter().any(|&c| c < 0) {
            break;
        }
        j += 1;
    }
    memo.insert(key, acc.clone());
    acc
}

/// Text form of a ring element: `Σ p(q)·V[mu]<k>`.
pub fn format_g1(x: &G1RingElement) -> String {
    crate::hecke::join_terms(
        x.iter()
            .map(|(c, p)| format!("{}V[{}]<{}>", crate::hecke::coeff_prefix(p), crate::hecke::tuple_body(&c.mu), c.k))
            .collect(),
    )
}

/// Sum of multiplicities weighted by a function of the summand; helper for
/// dimension checks.
pub fn weighted_sum<F: Fn(&DominantCocharacter) -> u64>(m: &BTreeMap<DominantCocharacter, u64>, f: F) -> u64 {
    m.iter().map(|(nu, n)| n * f(nu)).sum()
}


#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn reps(id: &str) -> DualReps {
        DualReps::new(Arc::new(AffineWeylGroup::for_datum(RootDatum::from_id(id).unwrap()).unwrap()))
    }

    fn dom(r: &DualReps, v: &[i64]) -> DominantCocharacter {
        r.root_datum().dominant(v.to_vec()).unwrap()
    }

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn is_constant(p: &LaurentPoly, c: i64) -> bool {
        p.as_constant().is_some_and(|x| x == BigInt::from(c))
    }

    #[test]
    fn partition_examples() {
        let r = reps("SL(2)");
        assert!(r.kostant_partition(&[0], true).is_one());
        for k in 0..5 {
            assert_eq!(r.kostant_partition(&[k], true), LaurentPoly::q_pow(k));
        }
        assert!(r.kostant_partition(&[-1], true).is_zero());
        // SL(3): alpha1^v + alpha2^v as {alpha1^v, alpha2^v} or {alpha1^v + alpha2^v}.
        let r = reps("SL(3)");
        assert_eq!(r.kostant_partition(&[1, 1], true), p("q + q^2"));
        assert!(is_constant(&r.kostant_partition(&[1, 1], false), 2));
    }

    #[test]
    fn partition_matches_multiset_enumeration() {
        // Brute force: enumerate multiplicity vectors for the three positive coroots.
        let r = reps("SL(3)");
        let pos = r.root_datum().positive_coroots().to_vec();
        for a in 0..4i64 {
            for b in 0..4i64 {
                let mut brute = LaurentPoly::zero();
                for x in 0..5i64 {
                    for y in 0..5i64 {
                        for z in 0..5i64 {
                            let mut v = vec![0, 0];
                            for (m, c) in [(x, &pos[0]), (y, &pos[1]), (z, &pos[2])] {
                                v = lattice::add(&v, &lattice::scale(m, c));
                            }
                            if v == vec![a, b] {
                                brute += &LaurentPoly::q_pow(x + y + z);
                            }
                        }
                    }
                }
                assert_eq!(r.kostant_partition(&[a, b], true), brute, "({a},{b})");
            }
        }
    }

    #[test]
    fn multiplicity_examples() {
        let r = reps("PGL(2)");
        for m in 0..6 {
            let mu = dom(&r, &[m]);
            assert_eq!(r.weight_multiplicity(&mu, &[m]), 1);
            if m >= 2 {
                assert_eq!(r.weight_multiplicity(&mu, &[m - 2]), 1);
            }
            assert_eq!(r.weight_multiplicity(&mu, &[m - 1]), 0);
            assert_eq!(r.weyl_dim(&mu), m as u64 + 1);
        }
        // G^ = SL(3), adjoint highest weight: zero weight has multiplicity 2.
        let r = reps("PGL(3)");
        let theta = dom(&r, &[1, 1]);
        assert_eq!(r.weight_multiplicity(&theta, &[0, 0]), 2);
        assert_eq!(r.weyl_dim(&theta), 8);
        assert_eq!(r.weyl_dim(&r.root_datum().zero()), 1);
    }

    #[test]
    fn gl2_symmetric_powers() {
        let r = reps("GL(2)");
        for m in 0..6 {
            assert_eq!(r.weyl_dim(&dom(&r, &[m, 0])), m as u64 + 1);
        }
    }

    #[test]
    fn tensor_examples() {
        let r = reps("GL(2)");
        let a = dom(&r, &[1, 0]);
        let t = r.tensor_decompose(&a, &a).unwrap();
        assert_eq!(t, BTreeMap::from([(dom(&r, &[1, 1]), 1), (dom(&r, &[2, 0]), 1)]));
        assert_eq!(r.tensor_decompose(&a, &r.root_datum().zero()).unwrap(), BTreeMap::from([(a.clone(), 1)]));
        let r = reps("PGL(2)");
        let one = dom(&r, &[1]);
        let t = r.tensor_decompose(&one, &one).unwrap();
        assert_eq!(t, BTreeMap::from([(dom(&r, &[0]), 1), (dom(&r, &[2]), 1)]));
    }

    #[test]
    fn tensor_dimension_rule_and_symmetry() {
        for id in ["GL(2)", "PGL(2)", "SL(2)", "SL(3)"] {
            let r = reps(id);
            let rd = r.root_datum().clone();
            let doms = rd.dominant_up_to(6);
            for a in &doms {
                for b in &doms {
                    if rd.d_pairing(a.coords()) + rd.d_pairing(b.coords()) > 6 {
                        continue;
                    }
                    let t = r.tensor_decompose(a, b).unwrap();
                    assert_eq!(t, r.tensor_decompose(b, a).unwrap());
                    assert_eq!(weighted_sum(&t, |nu| r.weyl_dim(nu)), r.weyl_dim(a) * r.weyl_dim(b));
                    let top = a.plus(b);
                    for nu in t.keys() {
                        assert!(rd.dominance_leq(nu, &top).unwrap());
                        assert_eq!(rd.pi1_class(nu.coords()), rd.pi1_class(top.coords()));
                    }
                }
            }
        }
    }

    #[test]
    fn q_analog_examples() {
        let r = reps("PGL(2)");
        let two = dom(&r, &[2]);
        assert!(r.lusztig_q_analog(&two, &[2]).is_one());
        assert_eq!(r.lusztig_q_analog(&two, &[0]), LaurentPoly::q());
        // Kostka-Foulkes K_{(2,1,0),(1,1,1)}(q) = q + q^2 for the adjoint of SL(3).
        let r = reps("PGL(3)");
        assert_eq!(r.lusztig_q_analog(&dom(&r, &[1, 1]), &[0, 0]), p("q + q^2"));
        let r = reps("GL(3)");
        assert_eq!(r.lusztig_q_analog(&dom(&r, &[2, 1, 0]), &[1, 1, 1]), p("q + q^2"));
        assert_eq!(r.lusztig_q_analog(&dom(&r, &[3, 0, 0]), &[1, 1, 1]), p("q^3"));
    }

    #[test]
    fn characters_are_weyl_invariant() {
        let r = reps("Sp(4)");
        for mu in r.root_datum().dominant_up_to(6) {
            let ch = r.character(&mu);
            assert!(ch.is_weyl_invariant(r.group().finite()));
            assert_eq!(ch.dimension(), r.weyl_dim(&mu));
        }
    }

    #[test]
    fn g1_products() {
        let r = reps("GL(2)");
        let a = dom(&r, &[1, 0]);
        let x = G1RingElement::basis(r.twisted_class(&a, 0));
        let sq = r.g1_mul(&x, &x).unwrap();
        let expected = G1RingElement::from_terms([
            (r.twisted_class(&dom(&r, &[2, 0]), 0), LaurentPoly::one()),
            (r.twisted_class(&dom(&r, &[1, 1]), -1), LaurentPoly::one()),
        ]);
        assert_eq!(sq, expected);
        assert_eq!(r.g1_mul(&x, &r.g1_unit()).unwrap(), x);
        assert_eq!(r.d_class(), G1RepClass { mu: r.root_datum().zero(), k: 2 });
    }

    #[test]
    fn quotient_examples() {
        let r = reps("PGL(2)");
        let zero = r.root_datum().zero();
        let dinv = G1RingElement::basis(G1RepClass { mu: zero.clone(), k: -2 });
        assert_eq!(r.quotient_normal_form(&dinv), G1RingElement::term(G1RepClass { mu: zero, k: 0 }, LaurentPoly::q()));
        let mu = dom(&r, &[3]);
        let a = G1RingElement::basis(G1RepClass { mu: mu.clone(), k: 5 });
        let b = G1RingElement::term(G1RepClass { mu, k: 3 }, LaurentPoly::q_pow(-1));
        let na = r.quotient_normal_form(&a);
        assert_eq!(na, r.quotient_normal_form(&b));
        assert_eq!(r.quotient_normal_form(&na), na);
        assert!(r.is_normal_form(&na));
    }

    #[test]
    fn parity_is_enforced() {
        let r = reps("PGL(2)");
        assert!(r.g1_class(dom(&r, &[1]), 0).is_err());
        assert!(r.g1_class(dom(&r, &[1]), 1).is_ok());
    }
}
