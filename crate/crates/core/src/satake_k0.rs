//! The Grothendieck group of the Satake category: classes `IC_mu(n)`, their
//! convolution, purity weights, and the trace map to spherical functions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{FreeModule, LaurentPoly};
use crate::error::{Error, Result};
use crate::hecke::{coeff_prefix, join_terms, tuple_body, SatakeFunction, SphericalHecke};
use crate::rep_ring::DualReps;
use crate::root_datum::{DominantCocharacter, RootDatum};

/// The class of `IC_mu(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ICClass {
    pub mu: DominantCocharacter,
    pub n: i64,
}

impl fmt::Display for ICClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IC[{}]({})", tuple_body(&self.mu), self.n)
    }
}

/// `K_0` classes. Honest classes have integer coefficients; Laurent
/// coefficients appear once scalars are extended for the Satake path.
pub type K0Element = FreeModule<ICClass, LaurentPoly>;

/// `<2 rho, mu> - 2n`.
pub fn purity_weight(rd: &RootDatum, a: &ICClass) -> i64 {
    rd.d_pairing(a.mu.coords()) - 2 * a.n
}

/// `IC_mu(m) ⋆ IC_lam(n) = sum_nu N^nu IC_nu(n_nu)` with the twist forced by
/// additivity of purity weights.
pub fn convolve_ic(reps: &DualReps, a: &ICClass, b: &ICClass) -> Result<K0Element> {
    let rd = reps.root_datum();
    let (da, db) = (rd.d_pairing(a.mu.coords()), rd.d_pairing(b.mu.coords()));
    let mut out = K0Element::zero();
    for (nu, mult) in reps.tensor_decompose(&a.mu, &b.mu)? {
        let offset = rd.d_pairing(nu.coords()) - da - db;
        if offset % 2 != 0 {
            return Err(Error::Internal(format!("non-integral twist for {nu} in {a} ⋆ {b}")));
        }
        out.add_term(ICClass { mu: nu, n: a.n + b.n + offset / 2 }, LaurentPoly::constant(mult));
    }
    Ok(out)
}

pub fn convolve(reps: &DualReps, x: &K0Element, y: &K0Element) -> Result<K0Element> {
    x.try_bilinear(y, |a, b| convolve_ic(reps, a, b))
}

/// `M -> f_M`, extended linearly.
pub fn trace_to_hecke(sph: &SphericalHecke, x: &K0Element) -> Result<SatakeFunction> {
    x.try_map_basis(|c| sph.ic_function(&c.mu, c.n))
}

/// Whether every coefficient is an integer.
pub fn is_integral(x: &K0Element) -> bool {
    x.iter().all(|(_, c)| c.as_constant().is_some())
}

/// One row of a decomposition table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionRow {
    pub nu: DominantCocharacter,
    pub multiplicity: LaurentPoly,
    pub twist: i64,
    pub weight: i64,
}

pub fn decomposition_rows(rd: &RootDatum, x: &K0Element) -> Vec<DecompositionRow> {
    x.iter()
        .map(|(c, m)| DecompositionRow {
            nu: c.mu.clone(),
            multiplicity: m.clone(),
            twist: c.n,
            weight: purity_weight(rd, c),
        })
        .collect()
}

/// Text form `IC[nu](n)^N + ...`, with Laurent multiplicities written as prefixes.
pub fn format_k0(x: &K0Element) -> String {
    join_terms(
        x.iter()
            .map(|(c, m)| match m.as_constant() {
                Some(n) if n == 1.into() => c.to_string(),
                Some(n) if n > 0.into() => format!("{c}^{n}"),
                _ => format!("{}{c}", coeff_prefix(m)),
            })
            .collect(),
    )
}

/// One stalk `h_{mu,lam}` and whether it passes the parity checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StalkRow {
    pub lambda: DominantCocharacter,
    pub poly: LaurentPoly,
    pub polynomial: bool,
    pub nonnegative: bool,
}

impl StalkRow {
    pub fn ok(&self) -> bool {
        self.polynomial && self.nonnegative
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityReport {
    pub mu: DominantCocharacter,
    pub rows: Vec<StalkRow>,
}

impl ParityReport {
    pub fn violations(&self) -> usize {
        self.rows.iter().filter(|r| !r.ok()).count()
    }
}

/// The stalk table of `IC_mu`, with each row checked for being a polynomial in
/// `q` with nonnegative coefficients.
pub fn parity_report(sph: &SphericalHecke, mu: &DominantCocharacter) -> ParityReport {
    let rows = sph
        .root_datum()
        .dominant_below(mu)
        .into_iter()
        .map(|lam| {
            let poly = sph.stalk_polynomial(mu, &lam);
            StalkRow { polynomial: poly.is_polynomial(), nonnegative: poly.has_nonnegative_coefficients(), lambda: lam, poly }
        })
        .collect();
    ParityReport { mu: mu.clone(), rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::SphericalOptions;

    fn sph(id: &str) -> SphericalHecke {
        SphericalHecke::for_datum(RootDatum::from_id(id).unwrap(), SphericalOptions::default()).unwrap()
    }

    fn ic(s: &SphericalHecke, v: &[i64], n: i64) -> ICClass {
        ICClass { mu: s.root_datum().dominant(v.to_vec()).unwrap(), n }
    }

    #[test]
    fn gl2_convolution() {
        let s = sph("GL(2)");
        let a = ic(&s, &[1, 0], 0);
        let prod = convolve_ic(s.reps(), &a, &a).unwrap();
        let expected = K0Element::from_terms([
            (ic(&s, &[2, 0], 0), LaurentPoly::one()),
            (ic(&s, &[1, 1], -1), LaurentPoly::one()),
        ]);
        assert_eq!(prod, expected);
        assert_eq!(format_k0(&prod), "IC[1,1](-1) + IC[2,0](0)");
        // Trace is multiplicative on this example.
        let f = s.ic_function(&a.mu, 0).unwrap();
        assert_eq!(trace_to_hecke(&s, &prod).unwrap(), s.mul_iwahori_path(&f, &f).unwrap());
    }

    #[test]
    fn skyscraper_twists() {
        let s = sph("SL(3)");
        for m in -2..=2 {
            for n in -2..=2 {
                let lam = ic(&s, &[1, 1], n);
                let prod = convolve_ic(s.reps(), &ic(&s, &[0, 0], m), &lam).unwrap();
                assert_eq!(prod, K0Element::basis(ic(&s, &[1, 1], m + n)));
            }
        }
    }

    #[test]
    fn weights() {
        let s = sph("PGL(2)");
        let rd = s.root_datum();
        assert_eq!(purity_weight(rd, &ic(&s, &[0], 0)), 0);
        assert_eq!(purity_weight(rd, &ic(&s, &[3], 0)), 3);
        assert_eq!(purity_weight(rd, &ic(&s, &[0], -1)), 2);
        let a = ic(&s, &[2], 1);
        let b = ic(&s, &[3], -2);
        for (c, _) in convolve_ic(s.reps(), &a, &b).unwrap().iter() {
            assert_eq!(purity_weight(rd, c), purity_weight(rd, &a) + purity_weight(rd, &b));
        }
    }

    #[test]
    fn kernel_relation() {
        let s = sph("SL(2)");
        let zero = s.root_datum().zero();
        let mut x = K0Element::basis(ICClass { mu: zero.clone(), n: -1 });
        x.add_term(ICClass { mu: zero.clone(), n: 0 }, -LaurentPoly::q());
        assert!(trace_to_hecke(&s, &x).unwrap().is_zero());
        let unit = K0Element::basis(ICClass { mu: zero, n: 0 });
        assert_eq!(trace_to_hecke(&s, &unit).unwrap(), s.unit());
    }

    #[test]
    fn parity_rows() {
        let s = sph("PGL(2)");
        let two = s.root_datum().dominant(vec![2]).unwrap();
        let rep = parity_report(&s, &two);
        assert_eq!(rep.violations(), 0);
        assert!(rep.rows.iter().all(|r| r.poly.is_one()));
    }
}
