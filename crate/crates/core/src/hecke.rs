//! The Iwahori–Hecke algebra of the extended affine Weyl group, the spherical
//! Hecke algebra with basis `c_mu`, the IC trace functions, and the Satake
//! transform onto `R(G^_1)/([d^-1] - q)`.
//!
//! Spherical products are computed two ways. The Iwahori path multiplies the
//! double-coset indicators inside the Iwahori–Hecke algebra and divides by the
//! Poincaré polynomial of `W_0`. The Satake path changes basis to IC functions,
//! convolves IC classes through the tensor product of `G^`, and traces back.
//! The two paths share no code beyond the root datum and the Weyl group.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::algebra::{FreeModule, LaurentPoly};
use crate::error::{Error, Result};
use crate::rep_ring::{DualReps, G1RepClass, G1RingElement};
use crate::root_datum::{DominantCocharacter, RootDatum};
use crate::satake_k0::{self, ICClass, K0Element};
use crate::weyl::{AffineWeylElement, AffineWeylGroup};

/// Element of the Iwahori–Hecke algebra in the basis `T_w`.
pub type HeckeElement = FreeModule<AffineWeylElement, LaurentPoly>;

/// Element of the spherical Hecke algebra in the basis `c_mu`.
pub type SatakeFunction = FreeModule<DominantCocharacter, LaurentPoly>;

/// Iwahori–Hecke algebra with the quadratic relation `T_s^2 = (q-1) T_s + q T_e`.
#[derive(Clone, Debug)]
pub struct IwahoriHecke {
    group: Arc<AffineWeylGroup>,
    max_length: u64,
}

impl IwahoriHecke {
    pub const DEFAULT_MAX_LENGTH: u64 = 64;

    pub fn new(group: Arc<AffineWeylGroup>) -> Self {
        Self { group, max_length: Self::DEFAULT_MAX_LENGTH }
    }

    pub fn with_max_length(mut self, max_length: u64) -> Self {
        self.max_length = max_length;
        self
    }

    pub fn group(&self) -> &Arc<AffineWeylGroup> {
        &self.group
    }

    pub fn t(&self, w: AffineWeylElement) -> HeckeElement {
        HeckeElement::basis(w)
    }

    pub fn unit(&self) -> HeckeElement {
        HeckeElement::basis(self.group.identity())
    }

    fn check_lengths(&self, x: &HeckeElement) -> Result<()> {
        for w in x.keys() {
            let l = self.group.length(w);
            if l > self.max_length {
                return Err(Error::LengthBoundExceeded { length: l, bound: self.max_length });
            }
        }
        Ok(())
    }

    /// `x · T_s` for the affine simple reflection with index `i`.
    pub fn mul_generator(&self, x: &HeckeElement, i: usize) -> HeckeElement {
        let g = &self.group;
        let q = LaurentPoly::q();
        let q_minus_one = &q - &LaurentPoly::one();
        let mut out = HeckeElement::zero();
        for (w, c) in x.iter() {
            let ws = g.right_mul_generator(w, i);
            if g.length(&ws) > g.length(w) {
                out.add_term(ws, c.clone());
            } else {
                out.add_term(w.clone(), c * &q_minus_one);
                out.add_term(ws, c * &q);
            }
        }
        out
    }

    /// Product in the Iwahori–Hecke algebra: `a` is right-multiplied by the
    /// reduced word of each key of `b`, then by its length-zero part.
    pub fn mul(&self, a: &HeckeElement, b: &HeckeElement) -> Result<HeckeElement> {
        self.check_lengths(a)?;
        self.check_lengths(b)?;
        let mut out = HeckeElement::zero();
        for (y, cy) in b.iter() {
            let (word, omega) = self.group.reduced_word(y)?;
            let mut cur = a.clone();
            for &i in &word {
                cur = self.mul_generator(&cur, i);
            }
            let shifted = cur.map_basis(|w| HeckeElement::basis(self.group.mul(w, &omega)));
            out.add_scaled(&shifted, cy);
        }
        Ok(out)
    }

    /// `1_{K t_mu K} = sum of T_w over the double coset W_0 t_mu W_0`.
    pub fn spherical_indicator(&self, mu: &DominantCocharacter) -> HeckeElement {
        HeckeElement::from_terms(
            self.group
                .spherical_double_coset(mu)
                .elements
                .into_iter()
                .map(|w| (w, LaurentPoly::one())),
        )
    }

    /// `P_{W_0}(q) = sum_w q^{l(w)}`.
    pub fn poincare_polynomial(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.group
                .finite()
                .length_distribution()
                .into_iter()
                .enumerate()
                .map(|(l, n)| (l as i64, n as i64)),
        )
    }

    /// Text form `Σ p(q)·T[w]`, with `w` written as a reduced word followed by
    /// its length-zero part when that part is nontrivial.
    pub fn format(&self, x: &HeckeElement) -> Result<String> {
        let mut terms = Vec::new();
        for (w, c) in x.iter() {
            terms.push(format!("{}T[{}]", coeff_prefix(c), self.element_label(w)?));
        }
        Ok(join_terms(terms))
    }

    pub fn element_label(&self, w: &AffineWeylElement) -> Result<String> {
        let (word, omega) = self.group.reduced_word(w)?;
        let mut s = self.group.word_labels(&word);
        if omega != self.group.identity() {
            let o = self.group.format(&omega);
            s = if word.is_empty() { o } else { format!("{s}·{o}") };
        }
        Ok(s)
    }
}

/// Which sign `sigma(mu)` multiplies the trace function of `IC_mu`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignConvention {
    /// `sigma = +1`.
    #[default]
    Unsigned,
    /// `sigma = (-1)^{<2 rho, mu>}`, the alternating trace.
    Signed,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SphericalOptions {
    pub sign: SignConvention,
    /// Perturbs every off-diagonal q-analog by `q - 1`. Only for negative
    /// controls of the verification suite.
    pub corrupt_q_analog: bool,
}

/// Smallest of the rings `Z ⊂ Z[q], Z[q^-1] ⊂ Z[q, q^-1]` containing a set of scalars.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScalarRing {
    #[serde(rename = "Z")]
    Integers,
    #[serde(rename = "Z[q]")]
    Polynomial,
    #[serde(rename = "Z[q^-1]")]
    InversePolynomial,
    #[serde(rename = "Z[q,q^-1]")]
    Laurent,
}

impl fmt::Display for ScalarRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScalarRing::Integers => "Z",
            ScalarRing::Polynomial => "Z[q]",
            ScalarRing::InversePolynomial => "Z[q^-1]",
            ScalarRing::Laurent => "Z[q,q^-1]",
        })
    }
}

pub fn minimal_scalar_ring<'a>(coeffs: impl IntoIterator<Item = &'a LaurentPoly>) -> ScalarRing {
    let (mut pos, mut neg) = (false, false);
    for c in coeffs {
        pos |= c.max_exponent().is_some_and(|e| e > 0);
        neg |= c.min_exponent().is_some_and(|e| e < 0);
    }
    match (pos, neg) {
        (false, false) => ScalarRing::Integers,
        (true, false) => ScalarRing::Polynomial,
        (false, true) => ScalarRing::InversePolynomial,
        (true, true) => ScalarRing::Laurent,
    }
}

/// The spherical Hecke algebra of one group, with both multiplication paths.
#[derive(Debug)]
pub struct SphericalHecke {
    reps: Arc<DualReps>,
    iwahori: IwahoriHecke,
    options: SphericalOptions,
    ic_cache: RwLock<HashMap<DominantCocharacter, SatakeFunction>>,
    c_to_ic_cache: RwLock<HashMap<DominantCocharacter, SatakeFunction>>,
}

impl SphericalHecke {
    pub fn new(reps: Arc<DualReps>, options: SphericalOptions) -> Self {
        let iwahori = IwahoriHecke::new(reps.group().clone());
        Self {
            reps,
            iwahori,
            options,
            ic_cache: RwLock::new(HashMap::new()),
            c_to_ic_cache: RwLock::new(HashMap::new()),
        }
    }

    /// Builds everything from a root datum with default limits.
    pub fn for_datum(rd: RootDatum, options: SphericalOptions) -> Result<Self> {
        let group = Arc::new(AffineWeylGroup::for_datum(rd)?);
        Ok(Self::new(Arc::new(DualReps::new(group)), options))
    }

    pub fn reps(&self) -> &Arc<DualReps> {
        &self.reps
    }

    pub fn iwahori(&self) -> &IwahoriHecke {
        &self.iwahori
    }

    pub fn root_datum(&self) -> &RootDatum {
        self.reps.root_datum()
    }

    pub fn options(&self) -> SphericalOptions {
        self.options
    }

    pub fn c(&self, mu: DominantCocharacter) -> SatakeFunction {
        SatakeFunction::basis(mu)
    }

    pub fn unit(&self) -> SatakeFunction {
        SatakeFunction::basis(self.root_datum().zero())
    }

    /// `c_mu ⋆ c_lam` through the Iwahori–Hecke algebra.
    pub fn spherical_mul_iwahori_path(&self, mu: &DominantCocharacter, lam: &DominantCocharacter) -> Result<SatakeFunction> {
        let iw = &self.iwahori;
        let prod = iw.mul(&iw.spherical_indicator(mu), &iw.spherical_indicator(lam))?;
        let poincare = iw.poincare_polynomial();
        let group = iw.group();
        let mut by_coset: HashMap<DominantCocharacter, (LaurentPoly, usize)> = HashMap::new();
        for (w, c) in prod.iter() {
            let nu = group.double_coset_of(w);
            let c = c.div_exact(&poincare).map_err(|_| {
                Error::InexactDivision(format!("T-coefficient {c} at {} is not divisible by {poincare}", group.format(w)))
            })?;
            match by_coset.get_mut(&nu) {
                Some((first, count)) => {
                    if *first != c {
                        return Err(Error::Internal(format!("product is not bi-invariant on the double coset of {nu}")));
                    }
                    *count += 1;
                }
                None => {
                    by_coset.insert(nu, (c, 1));
                }
            }
        }
        let mut out = SatakeFunction::zero();
        for (nu, (c, count)) in by_coset {
            let size = group.spherical_double_coset(&nu).elements.len();
            if count != size {
                return Err(Error::Internal(format!("product covers {count} of {size} elements of the double coset of {nu}")));
            }
            out.add_term(nu, c);
        }
        Ok(out)
    }

    /// Bilinear extension of the Iwahori-path product.
    pub fn mul_iwahori_path(&self, a: &SatakeFunction, b: &SatakeFunction) -> Result<SatakeFunction> {
        a.try_bilinear(b, |x, y| self.spherical_mul_iwahori_path(x, y))
    }

    pub fn sigma(&self, mu: &DominantCocharacter) -> LaurentPoly {
        match self.options.sign {
            SignConvention::Signed if self.root_datum().parity(mu.coords()) == 1 => LaurentPoly::constant(-1),
            _ => LaurentPoly::one(),
        }
    }

    /// `h_{mu,lam}(q) = q^{<rho, mu - lam>} m_mu^lam(q^-1)`, unchecked.
    pub fn stalk_polynomial(&self, mu: &DominantCocharacter, lam: &DominantCocharacter) -> LaurentPoly {
        let rd = self.root_datum();
        let mut m = self.reps.lusztig_q_analog(mu, lam.coords());
        if self.options.corrupt_q_analog && mu != lam {
            m += &(&LaurentPoly::q() - &LaurentPoly::one());
        }
        let shift = (rd.d_pairing(mu.coords()) - rd.d_pairing(lam.coords())) / 2;
        m.invert_variable().shift(shift).expect("small exponents")
    }

    /// `f_{IC_mu(n)}`.
    pub fn ic_function(&self, mu: &DominantCocharacter, n: i64) -> Result<SatakeFunction> {
        let base = self.ic_function_untwisted(mu)?;
        Ok(base.scale(&LaurentPoly::q_pow(-n)))
    }

    fn ic_function_untwisted(&self, mu: &DominantCocharacter) -> Result<SatakeFunction> {
        if let Some(f) = self.ic_cache.read().expect("cache lock").get(mu) {
            return Ok(f.clone());
        }
        let rd = self.root_datum();
        let sigma = self.sigma(mu);
        let mut f = SatakeFunction::zero();
        for lam in rd.dominant_below(mu) {
            let h = self.stalk_polynomial(mu, &lam);
            if !h.is_polynomial() {
                return Err(Error::Internal(format!("stalk polynomial h[{mu},{lam}] = {h} has negative exponents")));
            }
            f.add_term(lam, &h * &sigma);
        }
        self.ic_cache.write().expect("cache lock").insert(mu.clone(), f.clone());
        Ok(f)
    }

    /// `c_mu` written in the basis `f_{IC_nu(0)}`: coefficients keyed by `nu`.
    ///
    /// Back-substitution along dominance: `c_mu = sigma(mu) f_mu - sum_{lam < mu} h_{mu,lam} c_lam`.
    pub fn c_in_ic_basis(&self, mu: &DominantCocharacter) -> Result<SatakeFunction> {
        if let Some(f) = self.c_to_ic_cache.read().expect("cache lock").get(mu) {
            return Ok(f.clone());
        }
        let f_mu = self.ic_function_untwisted(mu)?;
        let lead = f_mu.coeff(mu);
        let sigma = self.sigma(mu);
        if lead != sigma {
            return Err(Error::Internal(format!("leading coefficient of f_IC[{mu}] is {lead}")));
        }
        let mut out = SatakeFunction::term(mu.clone(), sigma.clone());
        for (lam, h) in f_mu.iter() {
            if lam == mu {
                continue;
            }
            let below = self.c_in_ic_basis(lam)?;
            out.add_scaled(&below, &-(h * &sigma));
        }
        self.c_to_ic_cache.write().expect("cache lock").insert(mu.clone(), out.clone());
        Ok(out)
    }

    /// A spherical function as a K_0 class with Laurent coefficients.
    pub fn to_k0(&self, f: &SatakeFunction) -> Result<K0Element> {
        let mut out = K0Element::zero();
        for (mu, c) in f.iter() {
            for (nu, a) in self.c_in_ic_basis(mu)?.iter() {
                out.add_term(ICClass { mu: nu.clone(), n: 0 }, a * c);
            }
        }
        Ok(out)
    }

    /// `c_mu ⋆ c_lam` through IC classes and the tensor product of `G^`.
    pub fn spherical_mul_satake_path(&self, mu: &DominantCocharacter, lam: &DominantCocharacter) -> Result<SatakeFunction> {
        let a = self.to_k0(&self.c(mu.clone()))?;
        let b = self.to_k0(&self.c(lam.clone()))?;
        let prod = satake_k0::convolve(&self.reps, &a, &b)?;
        satake_k0::trace_to_hecke(self, &prod)
    }

    pub fn mul_satake_path(&self, a: &SatakeFunction, b: &SatakeFunction) -> Result<SatakeFunction> {
        let prod = satake_k0::convolve(&self.reps, &self.to_k0(a)?, &self.to_k0(b)?)?;
        satake_k0::trace_to_hecke(self, &prod)
    }

    /// The class `V_nu(n)` reduced modulo `[d^-1] - q`.
    fn ic_image(&self, c: &ICClass) -> G1RingElement {
        self.reps.quotient_normal_form(&G1RingElement::basis(self.reps.twisted_class(&c.mu, c.n)))
    }

    /// Satake transform `H_G ⊗ Z[q^±1] -> R(G^_1)/([d^-1] - q)`, in normal form.
    pub fn satake_transform(&self, f: &SatakeFunction) -> Result<G1RingElement> {
        let k0 = self.to_k0(f)?;
        let mut out = G1RingElement::zero();
        for (c, a) in k0.iter() {
            out.add_scaled(&self.ic_image(c), a);
        }
        Ok(out)
    }

    /// Inverse of [`SphericalHecke::satake_transform`]; accepts any element and
    /// normalizes it first.
    pub fn inverse_satake_transform(&self, x: &G1RingElement) -> Result<SatakeFunction> {
        let rd = self.root_datum();
        let mut out = SatakeFunction::zero();
        for (class, a) in self.reps.quotient_normal_form(x).iter() {
            let G1RepClass { mu, k } = class;
            let twice_n = k + rd.d_pairing(mu.coords());
            if twice_n.rem_euclid(2) != 0 {
                return Err(Error::Internal(format!("class {class} violates the parity condition")));
            }
            let f = self.ic_function(mu, twice_n / 2)?;
            out.add_scaled(&f, a);
        }
        Ok(out)
    }

    /// Text form `Σ p_nu(q)·c[nu]`.
    pub fn format(&self, f: &SatakeFunction) -> String {
        join_terms(f.iter().map(|(nu, p)| format!("{}c[{}]", coeff_prefix(p), tuple_body(nu))).collect())
    }
}

pub(crate) fn tuple_body(mu: &DominantCocharacter) -> String {
    mu.coords().iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

/// `""` for 1, `"-"` for -1, `"p·"` for a monomial and `"(p)·"` otherwise.
pub(crate) fn coeff_prefix(p: &LaurentPoly) -> String {
    if p.is_one() {
        String::new()
    } else if p.as_constant().is_some_and(|c| c == (-1).into()) {
        "-".into()
    } else if p.num_terms() == 1 {
        format!("{p}·")
    } else {
        format!("({p})·")
    }
}

pub(crate) fn join_terms(terms: Vec<String>) -> String {
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// JSON form of an element in one of the three bases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisExpansionJson {
    pub basis: String,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub key: String,
    pub poly: LaurentPoly,
}

impl SphericalHecke {
    pub fn satake_json(&self, f: &SatakeFunction) -> BasisExpansionJson {
        BasisExpansionJson {
            basis: "c".into(),
            terms: f.iter().map(|(k, p)| TermJson { key: tuple_body(k), poly: p.clone() }).collect(),
        }
    }
}

impl IwahoriHecke {
    pub fn hecke_json(&self, x: &HeckeElement) -> Result<BasisExpansionJson> {
        let terms = x
            .iter()
            .map(|(w, p)| Ok(TermJson { key: self.element_label(w)?, poly: p.clone() }))
            .collect::<Result<_>>()?;
        Ok(BasisExpansionJson { basis: "T".into(), terms })
    }
}
