//! Independent reference computations and the verification suites.
//!
//! The reference routines here deliberately avoid the production algorithms
//! they are compared against: weight multiplicities come from Freudenthal's
//! recursion instead of Kostant's formula, and the `Sym^mu` classes of `GL_2`
//! are built from their torus weights instead of from IC functions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::LaurentPoly;
use crate::error::{Error, Result};
use crate::hecke::{HeckeElement, SphericalHecke, SphericalOptions};
use crate::lattice::{self, IVec};
use crate::rep_ring::{G1RepClass, G1RingElement};
use crate::root_datum::{DominantCocharacter, GroupId, RootDatum};
use crate::satake_k0::{self, ICClass, K0Element};
use crate::weyl::AffineWeylElement;

/// Weight multiplicities of `V_mu` by Freudenthal's recursion, using the
/// invariant form `B(x, y) = sum over all roots a of <a, x><a, y>`.
pub fn freudenthal_character(rd: &RootDatum, mu: &DominantCocharacter) -> BTreeMap<IVec, u64> {
    let form = |x: &[i64], y: &[i64]| -> i64 {
        2 * rd.positive_roots().iter().map(|a| rd.pair(a, x) * rd.pair(a, y)).sum::<i64>()
    };
    let coroots = rd.positive_coroots();
    let two_rho = rd.two_rho_check();
    // Candidate weights: mu minus nonnegative combinations of positive coroots,
    // cut off once the height drops below that of -mu.
    let floor = -rd.d_pairing(mu.coords());
    let mut candidates: BTreeSet<IVec> = BTreeSet::from([mu.coords().to_vec()]);
    let mut frontier = vec![mu.coords().to_vec()];
    while let Some(v) = frontier.pop() {
        for a in coroots {
            let w = lattice::sub(&v, a);
            if rd.d_pairing(&w) >= floor && candidates.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    let mut ordered: Vec<IVec> = candidates.into_iter().collect();
    ordered.sort_by_key(|v| std::cmp::Reverse(rd.d_pairing(v)));
    let top = mu.coords();
    let mut mult: BTreeMap<IVec, u64> = BTreeMap::new();
    for lam in ordered {
        if lam == top {
            mult.insert(lam, 1);
            continue;
        }
        let mut num = 0i64;
        for a in coroots {
            let mut k = 1;
            loop {
                let w = lattice::add(&lam, &lattice::scale(k, a));
                if rd.d_pairing(&w) > rd.d_pairing(top) {
                    break;
                }
                if let Some(&m) = mult.get(&w) {
                    num += 2 * m as i64 * form(&w, a);
                }
                k += 1;
            }
        }
        // (mu + rho, mu + rho) - (lam + rho, lam + rho) with 2 rho integral.
        let diff = lattice::sub(top, &lam);
        let den = form(&diff, &lattice::add(top, &lam)) + form(&diff, two_rho);
        if den == 0 {
            assert_eq!(num, 0, "Freudenthal recursion hit a zero denominator at {lam:?}");
            continue;
        }
        assert_eq!(num % den, 0, "Freudenthal recursion is not integral at {lam:?}");
        let m = num / den;
        if m > 0 {
            mult.insert(lam, m as u64);
        }
    }
    mult
}

/// The class of `Sym^m` of the standard representation of `GL_2`, for the
/// modified dual group of `PGL(2)`.
///
/// `G^_1` is identified with `GL_2` through `(g, t) -> t^-1 g`, under which the
/// square character `d` becomes `det^-1`. A torus weight `(a, b)` of `GL_2`
/// then has `T^_1`-weight `(a - b, -(a + b))`, and the class is obtained by
/// peeling irreducible characters `{(nu - 2j, k) : 0 <= j <= nu}` off the top.
pub fn gl2_symmetric_power_class(rd: &RootDatum, m: u32) -> Result<G1RingElement> {
    if rd.rank() != 1 || rd.simple_coroots() != [vec![2]] {
        return Err(Error::Internal("Sym^m classes are defined for PGL(2) only".into()));
    }
    let m = i64::from(m);
    let mut weights: BTreeMap<(i64, i64), i64> = BTreeMap::new();
    for a in 0..=m {
        let b = m - a;
        *weights.entry((a - b, -(a + b))).or_insert(0) += 1;
    }
    let mut out = G1RingElement::zero();
    while let Some((&(nu, k), &n)) = weights.iter().filter(|(_, &n)| n != 0).max_by_key(|((nu, _), _)| *nu) {
        if n < 0 || nu < 0 {
            return Err(Error::Internal("Sym^m character does not decompose".into()));
        }
        for j in 0..=nu {
            *weights.entry((nu - 2 * j, k)).or_insert(0) -= n;
        }
        out.add_term(G1RepClass { mu: rd.dominant(vec![nu])?, k }, LaurentPoly::constant(n));
    }
    Ok(out)
}

/// Status of one verification criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The criterion does not concern the configured group.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub status: Status,
    pub checks: u64,
    pub detail: String,
}

impl CriterionResult {
    fn new(id: u8, name: &str) -> Self {
        Self { id, name: name.into(), status: Status::Pass, checks: 0, detail: String::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.status != Status::Fail {
            self.status = Status::Fail;
            self.detail = what();
        }
    }

    fn record_error(&mut self, e: Error) {
        self.check(false, || e.to_string());
    }

    fn skipped(mut self, why: &str) -> Self {
        self.status = Status::Skipped;
        self.detail = why.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        write!(f, "[{tag}] {:>2}. {} ({} checks)", self.id, self.name, self.checks)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

/// A group together with everything the suites compute on it.
pub struct Subject {
    pub id: String,
    pub sph: Arc<SphericalHecke>,
}

impl Subject {
    pub fn new(id: &str, options: SphericalOptions) -> Result<Self> {
        let rd = RootDatum::from_id(id)?;
        Ok(Self { id: rd.name().to_string(), sph: Arc::new(SphericalHecke::for_datum(rd, options)?) })
    }

    pub fn root_datum(&self) -> &RootDatum {
        self.sph.root_datum()
    }
}

/// 1. `T_s^2 = (q-1) T_s + q T_e` for every affine simple reflection.
pub fn quadratic_relation(subjects: &[Subject]) -> CriterionResult {
    let mut r = CriterionResult::new(1, "Iwahori quadratic relation");
    let rel = &LaurentPoly::q() - &LaurentPoly::one();
    for s in subjects {
        let iw = s.sph.iwahori();
        for (i, g) in iw.group().generators().iter().enumerate() {
            let t = iw.t(g.element.clone());
            let mut expected = t.scale(&rel);
            expected.add_term(iw.group().identity(), LaurentPoly::q());
            match iw.mul(&t, &t) {
                Ok(sq) => r.check(sq == expected, || format!("{}: T_{}^2 = {sq:?}", s.id, iw.group().generators()[i].label)),
                Err(e) => r.record_error(e),
            }
        }
    }
    r
}

/// A random element of length at most `max_len`: a random generator word,
/// reduced by evaluation, times a random length-zero element.
pub fn random_element(sph: &SphericalHecke, rng: &mut ChaCha8Rng, max_len: usize) -> AffineWeylElement {
    let g = sph.iwahori().group();
    let omegas = g.omega_elements(2);
    let n = g.generators().len();
    let len = rng.gen_range(0..=max_len);
    let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..n)).collect();
    let omega = omegas.choose(rng).cloned().unwrap_or_else(|| g.identity());
    g.evaluate(&word, &omega)
}

/// 2. Associativity on seeded random triples of basis elements.
pub fn hecke_associativity(subjects: &[Subject], triples: usize, max_len: usize, seed: u64) -> CriterionResult {
    let mut r = CriterionResult::new(2, "Hecke associativity");
    for s in subjects {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let iw = s.sph.iwahori();
        for _ in 0..triples {
            let [a, b, c] = [0; 3].map(|_| HeckeElement::basis(random_element(&s.sph, &mut rng, max_len)));
            let res = (|| -> Result<bool> {
                let left = iw.mul(&iw.mul(&a, &b)?, &c)?;
                let right = iw.mul(&a, &iw.mul(&b, &c)?)?;
                Ok(left == right)
            })();
            match res {
                Ok(ok) => r.check(ok, || format!("{}: associativity fails on {a:?}, {b:?}, {c:?}", s.id)),
                Err(e) => r.record_error(e),
            }
        }
    }
    r
}

/// Criteria 3 and 11 share one sweep over pairs `(mu, lam)` with `d(mu + lam) <= bound`.
pub fn cross_path_and_weights(subjects: &[Subject], bound: i64) -> (CriterionResult, CriterionResult) {
    let mut c3 = CriterionResult::new(3, "cross-path oracle equality");
    let mut c11 = CriterionResult::new(11, "purity weight additivity");
    for s in subjects {
        let rd = s.root_datum();
        let doms = rd.dominant_up_to(bound);
        for (i, mu) in doms.iter().enumerate() {
            for lam in &doms[i..] {
                if rd.d_pairing(mu.coords()) + rd.d_pairing(lam.coords()) > bound {
                    continue;
                }
                let paths = s
                    .sph
                    .spherical_mul_iwahori_path(mu, lam)
                    .and_then(|a| Ok((a, s.sph.spherical_mul_satake_path(mu, lam)?)));
                match paths {
                    Ok((a, b)) => c3.check(a == b, || {
                        format!("{}: c{mu} ⋆ c{lam}: Iwahori path {} but Satake path {}", s.id, s.sph.format(&a), s.sph.format(&b))
                    }),
                    Err(e) => c3.record_error(e),
                }
                let (x, y) = (ICClass { mu: mu.clone(), n: 0 }, ICClass { mu: lam.clone(), n: 0 });
                match satake_k0::convolve_ic(s.sph.reps(), &x, &y) {
                    Ok(prod) => {
                        let w = satake_k0::purity_weight(rd, &x) + satake_k0::purity_weight(rd, &y);
                        for (c, _) in prod.iter() {
                            c11.check(satake_k0::purity_weight(rd, c) == w, || format!("{}: {x} ⋆ {y} contains {c}", s.id));
                        }
                    }
                    Err(e) => c11.record_error(e),
                }
            }
        }
    }
    (c3, c11)
}

/// 4. `f_{IC_mu(0)} -> [Sym^mu]` for `PGL(2)`.
pub fn pgl2_satake_table(subjects: &[Subject], max_mu: u32) -> CriterionResult {
    let r = CriterionResult::new(4, "PGL(2) Satake table");
    let Some(s) = subjects.iter().find(|s| s.root_datum().same_datum(&RootDatum::from_id("PGL(2)").expect("catalog"))) else {
        return r.skipped("no PGL(2) subject");
    };
    let mut r = r;
    for m in 0..=max_mu {
        let res = (|| -> Result<(G1RingElement, G1RingElement)> {
            let mu = s.root_datum().dominant(vec![i64::from(m)])?;
            let image = s.sph.satake_transform(&s.sph.ic_function(&mu, 0)?)?;
            let sym = s.sph.reps().quotient_normal_form(&gl2_symmetric_power_class(s.root_datum(), m)?);
            Ok((image, sym))
        })();
        match res {
            Ok((image, sym)) => r.check(image == sym, || format!("mu = {m}: {image:?} vs Sym^{m} = {sym:?}")),
            Err(e) => r.record_error(e),
        }
    }
    r
}

/// 5. `trace(IC_0(-1) - q IC_0) = 0`.
pub fn kernel_relation(subjects: &[Subject]) -> CriterionResult {
    let mut r = CriterionResult::new(5, "kernel relation");
    for s in subjects {
        let zero = s.root_datum().zero();
        let mut x = K0Element::basis(ICClass { mu: zero.clone(), n: -1 });
        x.add_term(ICClass { mu: zero, n: 0 }, -LaurentPoly::q());
        match satake_k0::trace_to_hecke(&s.sph, &x) {
            Ok(f) => r.check(f.is_zero(), || format!("{}: trace is {}", s.id, s.sph.format(&f))),
            Err(e) => r.record_error(e),
        }
    }
    r
}

/// 6. The `GL(2)` convolution and its trace identity.
pub fn gl2_convolution(subjects: &[Subject]) -> CriterionResult {
    let r = CriterionResult::new(6, "GL(2) convolution");
    let Some(s) = subjects.iter().find(|s| s.root_datum().same_datum(&RootDatum::from_id("GL(2)").expect("catalog"))) else {
        return r.skipped("no GL(2) subject");
    };
    let mut r = r;
    let res = (|| -> Result<()> {
        let rd = s.root_datum();
        let a = ICClass { mu: rd.dominant(vec![1, 0])?, n: 0 };
        let prod = satake_k0::convolve_ic(s.sph.reps(), &a, &a)?;
        let expected = K0Element::from_terms([
            (ICClass { mu: rd.dominant(vec![2, 0])?, n: 0 }, LaurentPoly::one()),
            (ICClass { mu: rd.dominant(vec![1, 1])?, n: -1 }, LaurentPoly::one()),
        ]);
        r.check(prod == expected, || format!("got {}", satake_k0::format_k0(&prod)));
        let f = s.sph.ic_function(&a.mu, 0)?;
        let lhs = satake_k0::trace_to_hecke(&s.sph, &prod)?;
        let rhs = s.sph.mul_iwahori_path(&f, &f)?;
        r.check(lhs == rhs, || format!("trace {} but f⋆f = {}", s.sph.format(&lhs), s.sph.format(&rhs)));
        Ok(())
    })();
    if let Err(e) = res {
        r.record_error(e);
    }
    r
}

/// 7. `m_mu^lam(1)` against Freudenthal multiplicities.
pub fn q_to_one(subjects: &[Subject], bound: i64) -> CriterionResult {
    let mut r = CriterionResult::new(7, "q -> 1 specialization");
    for s in subjects {
        let rd = s.root_datum();
        for mu in rd.dominant_up_to(bound) {
            let oracle = freudenthal_character(rd, &mu);
            for lam in rd.dominant_below(&mu) {
                let m = s.sph.reps().lusztig_q_analog(&mu, lam.coords()).eval_at_one();
                let expected = BigInt::from(oracle.get(lam.coords()).copied().unwrap_or(0));
                r.check(m == expected, || format!("{}: m[{mu},{lam}](1) = {m}, Freudenthal gives {expected}", s.id));
            }
        }
    }
    r
}

/// 8. Every stalk polynomial is a polynomial with nonnegative coefficients.
pub fn stalk_parity(subjects: &[Subject], bound: i64) -> CriterionResult {
    let mut r = CriterionResult::new(8, "stalk parity and positivity");
    for s in subjects {
        for mu in s.root_datum().dominant_up_to(bound) {
            for row in satake_k0::parity_report(&s.sph, &mu).rows {
                r.check(row.ok(), || format!("{}: h[{mu},{}] = {}", s.id, row.lambda, row.poly));
            }
        }
    }
    r
}

/// 9. Dual groups and modified dual groups.
pub fn dual_group_table(subjects: &[Subject]) -> CriterionResult {
    let mut r = CriterionResult::new(9, "dual group table");
    let res = (|| -> Result<()> {
        let pgl2 = RootDatum::from_id("PGL(2)")?;
        r.check(pgl2.dual().same_datum(&RootDatum::from_id("SL(2)")?), || "dual(PGL(2)) is not SL(2)".into());
        let g1 = pgl2.g1_data().structure();
        r.check(g1 == "GL₂", || format!("PGL(2) reports {g1}"));
        let sl2 = RootDatum::from_id("SL(2)")?.g1_data();
        r.check(sl2.direct_product, || "SL(2) does not report a direct product".into());
        for n in 1..=5u32 {
            let rd = RootDatum::catalog(&GroupId::Gl(i64::from(n)))?;
            // Brute force: (-1)^{<e_i, 2 rho>} with 2 rho = (n-1, n-3, ..., 1-n).
            let brute = (0..n).all(|i| (i64::from(n) - 1 - 2 * i64::from(i)).rem_euclid(2) == 0);
            let reported = rd.g1_data().epsilon_trivial;
            r.check(reported == brute && brute == (n % 2 == 1), || format!("GL({n}): epsilon trivial = {reported}"));
        }
        for s in subjects {
            let rd = s.root_datum();
            r.check(rd.dual().dual().same_datum(rd), || format!("{}: dual is not an involution", s.id));
            let g = rd.g1_data();
            r.check(g.epsilon_trivial == g.direct_product, || format!("{}: inconsistent G1 data", s.id));
        }
        Ok(())
    })();
    if let Err(e) = res {
        r.record_error(e);
    }
    r
}

/// 10. `l(t_mu) = <2 rho, mu>` for dominant `mu`.
pub fn length_law(subjects: &[Subject], bound: i64) -> CriterionResult {
    let mut r = CriterionResult::new(10, "length of dominant translations");
    for s in subjects {
        let g = s.sph.iwahori().group();
        for mu in s.root_datum().dominant_up_to(bound) {
            let l = g.length(&g.translation(mu.coords()));
            let d = s.root_datum().d_pairing(mu.coords());
            r.check(l as i64 == d, || format!("{}: l(t{mu}) = {l} but d = {d}", s.id));
        }
    }
    r
}

/// Parameters of a verification run over explicitly chosen groups.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub bound: i64,
    pub seed: u64,
    pub triples: usize,
    pub max_word_length: usize,
    pub sym_max: u32,
    pub options: SphericalOptions,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { bound: 8, seed: 0, triples: 200, max_word_length: 6, sym_max: 6, options: SphericalOptions::default() }
    }
}

/// Runs all eleven criteria on the given groups with one common bound.
pub fn run_all(groups: &[&str], config: &VerifyConfig) -> Result<Vec<CriterionResult>> {
    let subjects = groups.iter().map(|g| Subject::new(g, config.options)).collect::<Result<Vec<_>>>()?;
    let (c3, c11) = cross_path_and_weights(&subjects, config.bound);
    Ok(vec![
        quadratic_relation(&subjects),
        hecke_associativity(&subjects, config.triples, config.max_word_length, config.seed),
        c3,
        pgl2_satake_table(&subjects, config.sym_max.min(config.bound.max(0) as u32)),
        kernel_relation(&subjects),
        gl2_convolution(&subjects),
        q_to_one(&subjects, config.bound),
        stalk_parity(&subjects, config.bound),
        dual_group_table(&subjects),
        length_law(&subjects, config.bound),
        c11,
    ])
}
