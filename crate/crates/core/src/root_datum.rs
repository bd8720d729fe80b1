//! Based root data of split reductive groups, their Langlands duals, the
//! dominance order on cocharacters, and the data of the modified dual group.
//!
//! Lattices are integer tuples in a fixed basis. The perfect pairing
//! `X*(T) x X_*(T) -> Z` is an explicit integer matrix `P` with
//! `<chi, lambda> = chi^T P lambda`, so `GL(n)`, `SL(n)` and `PGL(n)` all live in
//! one framework without special cases.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{self, CoordinateSolver, IMat, IVec};

/// Upper bound on the number of roots accepted when saturating simple
/// reflections; anything larger is not a finite root system of catalog size.
const MAX_ROOTS: usize = 4096;

/// A catalog identifier.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupId {
    Gl(i64),
    Sl(i64),
    Pgl(i64),
    Sp4,
    Torus(i64),
    Product(Box<GroupId>, Box<GroupId>),
}

impl GroupId {
    /// The identifier of the Langlands dual group.
    pub fn dual(&self) -> GroupId {
        match self {
            GroupId::Gl(n) => GroupId::Gl(*n),
            GroupId::Sl(n) => GroupId::Pgl(*n),
            GroupId::Pgl(n) => GroupId::Sl(*n),
            // Sp(4) is dual to SO(5), which is isomorphic to PSp(4); the catalog
            // has no separate entry, the dual datum is built by transposition.
            GroupId::Sp4 => GroupId::Sp4,
            GroupId::Torus(n) => GroupId::Torus(*n),
            GroupId::Product(a, b) => GroupId::Product(Box::new(a.dual()), Box::new(b.dual())),
        }
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupId::Gl(n) => write!(f, "GL({n})"),
            GroupId::Sl(n) => write!(f, "SL({n})"),
            GroupId::Pgl(n) => write!(f, "PGL({n})"),
            GroupId::Sp4 => write!(f, "Sp(4)"),
            GroupId::Torus(n) => write!(f, "torus({n})"),
            GroupId::Product(a, b) => write!(f, "{a}x{b}"),
        }
    }
}

impl FromStr for GroupId {
    type Err = Error;

    /// Accepts `GL(3)`, `gl3`, `PGL(2)`, `Sp(4)`, `torus(1)`, and products
    /// written `A x B` or `product(A,B)`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let unknown = || Error::UnknownGroup(s.to_string());
        if let Some(inner) = t
            .strip_prefix("product(")
            .or_else(|| t.strip_prefix("Product("))
            .and_then(|x| x.strip_suffix(')'))
        {
            let (a, b) = split_top_level_comma(inner).ok_or_else(unknown)?;
            return Ok(GroupId::Product(Box::new(a.parse()?), Box::new(b.parse()?)));
        }
        // No catalog name contains an `x`, so the first one separates factors.
        if let Some(pos) = t.find(['x', '×']) {
            let (a, b) = t.split_at(pos);
            let b = b.trim_start_matches(['x', '×']);
            return Ok(GroupId::Product(Box::new(a.parse()?), Box::new(b.parse()?)));
        }
        let lower = t.to_ascii_lowercase();
        let (head, arg) = match lower.find(|c: char| c.is_ascii_digit() || c == '(' || c == '-') {
            Some(i) => lower.split_at(i),
            None => return Err(unknown()),
        };
        let arg = arg.trim_start_matches('(').trim_end_matches(')');
        let n: i64 = arg.parse().map_err(|_| unknown())?;
        match head {
            "gl" => Ok(GroupId::Gl(n)),
            "sl" => Ok(GroupId::Sl(n)),
            "pgl" => Ok(GroupId::Pgl(n)),
            "sp" if n == 4 => Ok(GroupId::Sp4),
            "torus" | "t" => Ok(GroupId::Torus(n)),
            _ => Err(unknown()),
        }
    }
}

fn split_top_level_comma(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

/// A based root datum `(X*, X_*, simple roots, simple coroots, pairing)`.
///
/// Positive roots and coroots are derived at construction and stored in
/// matching order: `positive_coroots[i]` is the coroot of `positive_roots[i]`.
#[derive(Clone, Debug)]
pub struct RootDatum {
    name: String,
    rank: usize,
    pairing: IMat,
    simple_roots: Vec<IVec>,
    simple_coroots: Vec<IVec>,
    positive_roots: Vec<IVec>,
    positive_coroots: Vec<IVec>,
    /// `alpha^T P` for each positive root, so `<alpha, lambda>` is one dot product.
    root_rows: Vec<IVec>,
    two_rho: IVec,
    two_rho_check: IVec,
    /// `(2 rho)^T P`: pairs `2 rho` with cocharacters.
    two_rho_row: IVec,
    coroot_solver: CoordinateSolver,
    coroot_hnf: Vec<IVec>,
}

/// The serialized form: exactly the defining data, in a fixed field order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatumJson {
    pub name: String,
    pub rank: usize,
    pub pairing_matrix: IMat,
    pub simple_roots: Vec<IVec>,
    pub simple_coroots: Vec<IVec>,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.pairing == other.pairing
            && self.simple_roots == other.simple_roots
            && self.simple_coroots == other.simple_coroots
    }
}

impl Eq for RootDatum {}

impl RootDatum {
    /// Builds and validates a root datum from its defining data.
    pub fn new(
        name: impl Into<String>,
        pairing: IMat,
        simple_roots: Vec<IVec>,
        simple_coroots: Vec<IVec>,
    ) -> Result<Self> {
        let name = name.into();
        let rank = pairing.len();
        let invalid = |m: String| Error::InvalidRootDatum(format!("{name}: {m}"));
        if pairing.iter().any(|r| r.len() != rank) {
            return Err(invalid("pairing matrix is not square".into()));
        }
        if simple_roots.len() != simple_coroots.len() {
            return Err(invalid("simple roots and coroots differ in number".into()));
        }
        if simple_roots.iter().chain(&simple_coroots).any(|v| v.len() != rank) {
            return Err(invalid("a simple (co)root has the wrong length".into()));
        }
        if determinant(&pairing).abs() != 1 {
            return Err(invalid("pairing is not perfect".into()));
        }
        let pair = |chi: &[i64], lam: &[i64]| lattice::dot(chi, &lattice::mat_vec(&pairing, lam));
        for (i, a) in simple_roots.iter().enumerate() {
            for (j, c) in simple_coroots.iter().enumerate() {
                let v = pair(a, c);
                if i == j && v != 2 {
                    return Err(invalid(format!("<alpha_{i}, alpha_{i}^v> = {v}, expected 2")));
                }
                if i != j && v > 0 {
                    return Err(invalid(format!("Cartan entry ({i},{j}) = {v} is positive")));
                }
                if i != j && (v == 0) != (pair(&simple_roots[j], &simple_coroots[i]) == 0) {
                    return Err(invalid("Cartan matrix is not symmetrizable in sign".into()));
                }
            }
        }
        let coroot_solver = CoordinateSolver::new(&simple_coroots, rank)
            .ok_or_else(|| invalid("simple coroots are linearly dependent".into()))?;
        let root_solver = CoordinateSolver::new(&simple_roots, rank)
            .ok_or_else(|| invalid("simple roots are linearly dependent".into()))?;

        // Saturate (root, coroot) pairs under the simple reflections.
        let start: Vec<(IVec, IVec)> = simple_roots
            .iter()
            .cloned()
            .zip(simple_coroots.iter().cloned())
            .collect();
        let mut seen: HashSet<IVec> = start.iter().map(|(a, _)| a.clone()).collect();
        let mut all = start.clone();
        let mut queue: VecDeque<(IVec, IVec)> = start.into();
        while let Some((a, c)) = queue.pop_front() {
            for (ai, ci) in simple_roots.iter().zip(&simple_coroots) {
                let ra = lattice::sub(&a, &lattice::scale(pair(&a, ci), ai));
                let rc = lattice::sub(&c, &lattice::scale(pair(ai, &c), ci));
                if seen.insert(ra.clone()) {
                    if seen.len() > MAX_ROOTS {
                        return Err(invalid("root system is not finite".into()));
                    }
                    all.push((ra.clone(), rc.clone()));
                    queue.push_back((ra, rc));
                }
            }
        }
        let mut positive: Vec<(IVec, IVec, IVec)> = Vec::new();
        for (a, c) in all {
            let coords = root_solver
                .solve(&a)
                .ok_or_else(|| invalid("a root is not an integral combination of simple roots".into()))?;
            if coords.iter().all(|&x| x >= 0) {
                positive.push((coords, a, c));
            } else if !coords.iter().all(|&x| x <= 0) {
                return Err(invalid("a root is neither positive nor negative".into()));
            }
        }
        // Height, then coordinates: simple roots come first in their own order.
        positive.sort_by(|x, y| {
            let hx: i64 = x.0.iter().sum();
            let hy: i64 = y.0.iter().sum();
            hx.cmp(&hy).then_with(|| y.0.cmp(&x.0))
        });
        let positive_roots: Vec<IVec> = positive.iter().map(|p| p.1.clone()).collect();
        let positive_coroots: Vec<IVec> = positive.iter().map(|p| p.2.clone()).collect();
        let zero = vec![0; rank];
        let two_rho = positive_roots.iter().fold(zero.clone(), |acc, a| lattice::add(&acc, a));
        let two_rho_check = positive_coroots.iter().fold(zero, |acc, a| lattice::add(&acc, a));
        let row = |chi: &IVec| -> IVec {
            (0..rank).map(|j| (0..rank).map(|i| chi[i] * pairing[i][j]).sum()).collect()
        };
        let root_rows = positive_roots.iter().map(row).collect();
        let two_rho_row = row(&two_rho);
        let coroot_hnf = lattice::hermite_rows(&simple_coroots, rank);
        Ok(Self {
            name,
            rank,
            pairing,
            simple_roots,
            simple_coroots,
            positive_roots,
            positive_coroots,
            root_rows,
            two_rho,
            two_rho_check,
            two_rho_row,
            coroot_solver,
            coroot_hnf,
        })
    }

    /// Looks up a catalog group.
    pub fn catalog(id: &GroupId) -> Result<Self> {
        match id {
            GroupId::Gl(n) => {
                let n = positive_rank(*n, 1)?;
                let roots: Vec<IVec> = (0..n - 1).map(|i| unit_diff(n, i)).collect();
                Self::new(id.to_string(), lattice::identity(n), roots.clone(), roots)
            }
            GroupId::Sl(n) => {
                let r = positive_rank(*n, 2)? - 1;
                let a = cartan_a(r);
                Self::new(id.to_string(), lattice::identity(r), a, lattice::identity(r))
            }
            GroupId::Pgl(n) => {
                let r = positive_rank(*n, 2)? - 1;
                let a = cartan_a(r);
                // Coroot j is column j of the Cartan matrix; type A is symmetric.
                Self::new(id.to_string(), lattice::identity(r), lattice::identity(r), a)
            }
            GroupId::Sp4 => Self::new(
                id.to_string(),
                lattice::identity(2),
                vec![vec![1, -1], vec![0, 2]],
                vec![vec![1, -1], vec![0, 1]],
            ),
            GroupId::Torus(n) => {
                let n = positive_rank(*n, 1)?;
                Self::new(id.to_string(), lattice::identity(n), Vec::new(), Vec::new())
            }
            GroupId::Product(a, b) => {
                let a = Self::catalog(a)?;
                let b = Self::catalog(b)?;
                Ok(a.product(&b, id.to_string()))
            }
        }
    }

    /// Parses a catalog identifier and looks it up.
    pub fn from_id(id: &str) -> Result<Self> {
        Self::catalog(&id.parse()?)
    }

    /// The direct product datum, on the direct sum of lattices.
    pub fn product(&self, other: &Self, name: impl Into<String>) -> Self {
        let n = self.rank + other.rank;
        let mut pairing = vec![vec![0; n]; n];
        for i in 0..self.rank {
            pairing[i][..self.rank].copy_from_slice(&self.pairing[i]);
        }
        for i in 0..other.rank {
            pairing[self.rank + i][self.rank..].copy_from_slice(&other.pairing[i]);
        }
        let left = |v: &IVec| -> IVec { v.iter().copied().chain(std::iter::repeat_n(0, other.rank)).collect() };
        let right = |v: &IVec| -> IVec { std::iter::repeat_n(0, self.rank).chain(v.iter().copied()).collect() };
        let roots = self.simple_roots.iter().map(left).chain(other.simple_roots.iter().map(right)).collect();
        let coroots = self
            .simple_coroots
            .iter()
            .map(left)
            .chain(other.simple_coroots.iter().map(right))
            .collect();
        Self::new(name, pairing, roots, coroots).expect("product of valid root data is valid")
    }

    /// The Langlands dual datum: lattices, roots and coroots swapped, pairing transposed.
    pub fn dual(&self) -> Self {
        let name = match self.name.parse::<GroupId>() {
            Ok(id) if !matches!(id, GroupId::Sp4) => id.dual().to_string(),
            _ => format!("dual({})", self.name),
        };
        Self::new(
            name,
            lattice::transpose(&self.pairing),
            self.simple_coroots.clone(),
            self.simple_roots.clone(),
        )
        .expect("the dual of a valid root datum is valid")
    }

    /// Equality of defining data up to reordering the simple roots.
    pub fn same_datum(&self, other: &Self) -> bool {
        let pairs = |rd: &Self| -> BTreeSet<(IVec, IVec)> {
            rd.simple_roots.iter().cloned().zip(rd.simple_coroots.iter().cloned()).collect()
        };
        self.rank == other.rank && self.pairing == other.pairing && pairs(self) == pairs(other)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of simple roots.
    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn pairing_matrix(&self) -> &IMat {
        &self.pairing
    }

    pub fn simple_roots(&self) -> &[IVec] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[IVec] {
        &self.simple_coroots
    }

    pub fn positive_roots(&self) -> &[IVec] {
        &self.positive_roots
    }

    pub fn positive_coroots(&self) -> &[IVec] {
        &self.positive_coroots
    }

    /// Sum of the positive roots, a character.
    pub fn two_rho(&self) -> &IVec {
        &self.two_rho
    }

    /// Sum of the positive coroots, a cocharacter (twice the dual group's rho).
    pub fn two_rho_check(&self) -> &IVec {
        &self.two_rho_check
    }

    /// `<chi, lambda>`.
    pub fn pair(&self, chi: &[i64], lam: &[i64]) -> i64 {
        lattice::dot(chi, &lattice::mat_vec(&self.pairing, lam))
    }

    /// `<alpha, lambda>` for the `i`-th positive root.
    pub fn pair_positive_root(&self, i: usize, lam: &[i64]) -> i64 {
        lattice::dot(&self.root_rows[i], lam)
    }

    /// `<alpha_i, lambda>` for the `i`-th simple root.
    pub fn pair_simple_root(&self, i: usize, lam: &[i64]) -> i64 {
        // Simple roots are the first entries of the positive list.
        self.pair_positive_root(self.simple_positive_index(i), lam)
    }

    fn simple_positive_index(&self, i: usize) -> usize {
        self.positive_roots
            .iter()
            .position(|a| *a == self.simple_roots[i])
            .expect("simple roots are positive")
    }

    /// The generalized Cartan matrix `A[i][j] = <alpha_i, alpha_j^v>`.
    pub fn cartan_matrix(&self) -> IMat {
        self.simple_roots
            .iter()
            .map(|a| self.simple_coroots.iter().map(|c| self.pair(a, c)).collect())
            .collect()
    }

    /// Reflection of a cocharacter in the `i`-th positive root.
    pub fn reflect_cocharacter(&self, root: usize, lam: &[i64]) -> IVec {
        let k = self.pair_positive_root(root, lam);
        lattice::sub(lam, &lattice::scale(k, &self.positive_coroots[root]))
    }

    /// Reflection of a character in the `i`-th positive root.
    pub fn reflect_character(&self, root: usize, chi: &[i64]) -> IVec {
        let k = self.pair(chi, &self.positive_coroots[root]);
        lattice::sub(chi, &lattice::scale(k, &self.positive_roots[root]))
    }

    fn check_rank(&self, v: &[i64]) -> Result<()> {
        if v.len() == self.rank {
            Ok(())
        } else {
            Err(Error::RankMismatch { expected: self.rank, got: v.len() })
        }
    }

    pub fn is_dominant(&self, lam: &[i64]) -> bool {
        (0..self.simple_roots.len()).all(|i| self.pair_simple_root(i, lam) >= 0)
    }

    /// Validates a dominant cocharacter.
    pub fn dominant(&self, mu: impl Into<IVec>) -> Result<DominantCocharacter> {
        let mu = mu.into();
        self.check_rank(&mu)?;
        if !self.is_dominant(&mu) {
            return Err(Error::NotDominant(mu));
        }
        Ok(DominantCocharacter(mu))
    }

    /// The zero cocharacter.
    pub fn zero(&self) -> DominantCocharacter {
        DominantCocharacter(vec![0; self.rank])
    }

    /// Coordinates of `v` in the basis of simple coroots, if `v` lies in the coroot lattice.
    pub fn coroot_coordinates(&self, v: &[i64]) -> Option<IVec> {
        self.coroot_solver.solve(v)
    }

    /// `lam <= mu` in the dominance order.
    pub fn dominance_leq(&self, lam: &DominantCocharacter, mu: &DominantCocharacter) -> Result<bool> {
        self.check_rank(&lam.0)?;
        self.check_rank(&mu.0)?;
        Ok(self.le_weight(&lam.0, &mu.0))
    }

    /// Dominance comparison on arbitrary cocharacters: `mu - lam` is a
    /// nonnegative integral combination of simple coroots.
    pub fn le_weight(&self, lam: &[i64], mu: &[i64]) -> bool {
        self.coroot_solver
            .solve(&lattice::sub(mu, lam))
            .is_some_and(|c| c.iter().all(|&x| x >= 0))
    }

    /// `<2 rho, lambda>`; for dominant `lambda` the dimension of the Schubert cell.
    pub fn d_pairing(&self, lam: &[i64]) -> i64 {
        lattice::dot(&self.two_rho_row, lam)
    }

    /// `<2 rho, lambda> mod 2`, constant on classes in `pi_1(G)`.
    pub fn parity(&self, lam: &[i64]) -> u8 {
        self.d_pairing(lam).rem_euclid(2) as u8
    }

    /// The class of `lam` in `X_*(T) / (coroot lattice)`.
    pub fn pi1_class(&self, lam: &[i64]) -> Pi1Class {
        Pi1Class(lattice::reduce_mod(&self.coroot_hnf, lam))
    }

    /// `|pi_1(G)|`, or `None` when it is infinite.
    pub fn pi1_order(&self) -> Option<u64> {
        lattice::quotient_order(&self.coroot_hnf, self.rank)
    }

    /// All dominant cocharacters with `<2 rho, mu> <= max_d` whose coordinates
    /// are bounded by `max(max_d, 1)` in absolute value.
    ///
    /// The box only matters for central directions, where the dimension does
    /// not bound the cocharacter.
    pub fn dominant_up_to(&self, max_d: i64) -> Vec<DominantCocharacter> {
        self.dominant_in_box(max_d, max_d.max(1))
    }

    pub fn dominant_in_box(&self, max_d: i64, max_abs: i64) -> Vec<DominantCocharacter> {
        let mut out = Vec::new();
        let mut cur = vec![-max_abs; self.rank];
        if self.rank == 0 {
            return vec![self.zero()];
        }
        loop {
            if self.is_dominant(&cur) && self.d_pairing(&cur) <= max_d {
                out.push(DominantCocharacter(cur.clone()));
            }
            let mut i = 0;
            loop {
                if i == self.rank {
                    out.sort_by_key(|m| (self.d_pairing(&m.0), m.0.clone()));
                    return out;
                }
                cur[i] += 1;
                if cur[i] > max_abs {
                    cur[i] = -max_abs;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    }

    /// Dominant cocharacters `lam <= mu`, in order of increasing `<2 rho, lam>`.
    pub fn dominant_below(&self, mu: &DominantCocharacter) -> Vec<DominantCocharacter> {
        // mu - lam = sum c_i alpha_i^v with c_i >= 0, and <2rho, alpha_i^v> = 2
        // together with <2rho, lam> >= 0 bounds sum c_i by d_mu / 2.
        let r = self.simple_coroots.len();
        let budget = self.d_pairing(&mu.0) / 2;
        let mut out = Vec::new();
        let mut coeffs = vec![0i64; r];
        loop {
            let mut lam = mu.0.clone();
            for (c, a) in coeffs.iter().zip(&self.simple_coroots) {
                lam = lattice::sub(&lam, &lattice::scale(*c, a));
            }
            if self.is_dominant(&lam) {
                out.push(DominantCocharacter(lam));
            }
            // Next coefficient vector with sum <= budget.
            let mut i = 0;
            loop {
                if i == r {
                    out.sort_by_key(|m| (self.d_pairing(&m.0), m.0.clone()));
                    return out;
                }
                coeffs[i] += 1;
                if coeffs.iter().sum::<i64>() > budget {
                    coeffs[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    }

    /// The modified dual group data.
    pub fn g1_data(&self) -> G1Data {
        let epsilon = Epsilon { two_rho_row: self.two_rho_row.clone() };
        let epsilon_trivial = (0..self.rank).all(|i| {
            let mut e = vec![0; self.rank];
            e[i] = 1;
            epsilon.eval(&e) == 1
        });
        // rho is a cocharacter of the dual torus iff 2 rho is divisible by 2 in X*(T).
        let rho_integral = self.two_rho.iter().all(|x| x % 2 == 0);
        assert_eq!(
            epsilon_trivial, rho_integral,
            "epsilon is trivial exactly when rho is integral (pairing is perfect)"
        );
        G1Data {
            dual_datum: self.dual(),
            epsilon,
            epsilon_trivial,
            direct_product: epsilon_trivial,
            rho_integral,
        }
    }

    pub fn to_json(&self) -> RootDatumJson {
        RootDatumJson {
            name: self.name.clone(),
            rank: self.rank,
            pairing_matrix: self.pairing.clone(),
            simple_roots: self.simple_roots.clone(),
            simple_coroots: self.simple_coroots.clone(),
        }
    }

    pub fn from_json(j: &RootDatumJson) -> Result<Self> {
        if j.pairing_matrix.len() != j.rank {
            return Err(Error::InvalidRootDatum("rank does not match the pairing matrix".into()));
        }
        Self::new(j.name.clone(), j.pairing_matrix.clone(), j.simple_roots.clone(), j.simple_coroots.clone())
    }
}

fn positive_rank(n: i64, min: i64) -> Result<usize> {
    if n < min {
        return Err(Error::NonPositiveRank(n - (min - 1)));
    }
    Ok(n as usize)
}

fn unit_diff(n: usize, i: usize) -> IVec {
    let mut v = vec![0; n];
    v[i] = 1;
    v[i + 1] = -1;
    v
}

fn cartan_a(r: usize) -> IMat {
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

fn determinant(m: &IMat) -> i64 {
    // Bareiss fraction-free elimination.
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.clone();
    let mut sign = 1;
    let mut prev = 1i64;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// A dominant cocharacter. Construct through [`RootDatum::dominant`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DominantCocharacter(pub(crate) IVec);

impl DominantCocharacter {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_inner(self) -> IVec {
        self.0
    }

    /// Sum of two dominant cocharacters, again dominant.
    pub fn plus(&self, other: &Self) -> Self {
        Self(lattice::add(&self.0, &other.0))
    }
}

impl fmt::Display for DominantCocharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_tuple(&self.0))
    }
}

/// Formats a lattice element as `(a,b,...)`.
pub fn fmt_tuple(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

/// Parses `(a,b,...)`, `a,b`, or a bare integer.
pub fn parse_tuple(s: &str) -> Result<IVec> {
    let t = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    if t.trim().is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad lattice element `{s}`"))))
        .collect()
}

/// A class in `pi_1(G) = X_*(T) / (coroot lattice)`, stored as the canonical
/// coset representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Pi1Class(IVec);

impl Pi1Class {
    pub fn representative(&self) -> &[i64] {
        &self.0
    }
}

/// The character `chi -> (-1)^<chi, 2 rho>` of `X*(T^) = X_*(T)`, i.e. the
/// element `(2 rho)(-1)` of the dual torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Epsilon {
    two_rho_row: IVec,
}

impl Epsilon {
    pub fn eval(&self, chi: &[i64]) -> i8 {
        if lattice::dot(&self.two_rho_row, chi).rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }
}

/// Data of the modified dual group `G^_1 = (G^ x G_m) / mu_2`, with `mu_2`
/// generated by `(epsilon, -1)`.
#[derive(Clone, Debug)]
pub struct G1Data {
    pub dual_datum: RootDatum,
    pub epsilon: Epsilon,
    pub epsilon_trivial: bool,
    /// Whether `G^_1` is canonically `G^ x G_m`.
    pub direct_product: bool,
    /// Whether `rho` is a cocharacter of the dual torus.
    pub rho_integral: bool,
}

impl G1Data {
    /// A short human-readable description of `G^_1`.
    pub fn structure(&self) -> String {
        let dual = self.dual_datum.name();
        if self.direct_product {
            return format!("{dual} × G_m (direct product)");
        }
        let sl2 = RootDatum::catalog(&GroupId::Sl(2)).expect("catalog");
        if self.dual_datum.same_datum(&sl2) {
            // (SL_2 x G_m) / <(-1, -1)> -> GL_2, (g, t) -> t g.
            "GL₂".to_string()
        } else {
            format!("({dual} × G_m)/μ₂")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rd(s: &str) -> RootDatum {
        RootDatum::from_id(s).unwrap()
    }

    #[test]
    fn gl2_standard_data() {
        let g = rd("GL(2)");
        assert_eq!(g.simple_roots(), &[vec![1, -1]]);
        assert_eq!(g.simple_coroots(), &[vec![1, -1]]);
        assert_eq!(g.pairing_matrix(), &lattice::identity(2));
    }

    #[test]
    fn torus_has_no_roots() {
        let t = rd("torus(1)");
        assert_eq!(t.rank(), 1);
        assert!(t.positive_roots().is_empty());
        assert!(t.simple_roots().is_empty());
    }

    #[test]
    fn sl3_cartan_matrix_matches_brute_force_pairing() {
        let g = rd("SL(3)");
        // Brute force: evaluate chi^T P lambda entry by entry.
        let p = g.pairing_matrix();
        let mut brute = vec![vec![0; 2]; 2];
        for (i, a) in g.simple_roots().iter().enumerate() {
            for (j, c) in g.simple_coroots().iter().enumerate() {
                for (k, ak) in a.iter().enumerate() {
                    for (l, cl) in c.iter().enumerate() {
                        brute[i][j] += ak * p[k][l] * cl;
                    }
                }
            }
        }
        assert_eq!(brute, vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(g.cartan_matrix(), brute);
    }

    #[test]
    fn positive_roots_match_closed_forms() {
        // Type A_{n-1} in GL(n): e_i - e_j for i < j.
        for n in 1..=5 {
            let g = rd(&format!("GL({n})"));
            let mut expected: Vec<IVec> = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let mut v = vec![0; n];
                    v[i] = 1;
                    v[j] = -1;
                    expected.push(v);
                }
            }
            let mut got = g.positive_roots().to_vec();
            got.sort();
            expected.sort();
            assert_eq!(got, expected, "GL({n})");
        }
        // C_2: e1 - e2, e1 + e2, 2 e1, 2 e2 with coroots e1 - e2, e1 + e2, e1, e2.
        let g = rd("Sp(4)");
        let mut pairs: Vec<(IVec, IVec)> = g
            .positive_roots()
            .iter()
            .cloned()
            .zip(g.positive_coroots().iter().cloned())
            .collect();
        pairs.sort();
        assert_eq!(
            pairs,
            vec![
                (vec![0, 2], vec![0, 1]),
                (vec![1, -1], vec![1, -1]),
                (vec![1, 1], vec![1, 1]),
                (vec![2, 0], vec![1, 0]),
            ]
        );
    }

    #[test]
    fn catalog_errors() {
        assert!(matches!(RootDatum::from_id("E8"), Err(Error::UnknownGroup(_))));
        assert!(matches!(RootDatum::from_id("GL(0)"), Err(Error::NonPositiveRank(_))));
        assert!(matches!(RootDatum::from_id("SL(1)"), Err(Error::NonPositiveRank(_))));
        assert!(matches!(RootDatum::from_id("torus(-2)"), Err(Error::NonPositiveRank(_))));
    }

    #[test]
    fn group_ids_parse() {
        assert_eq!("gl3".parse::<GroupId>().unwrap(), GroupId::Gl(3));
        assert_eq!("PGL(2)".parse::<GroupId>().unwrap(), GroupId::Pgl(2));
        assert_eq!("torus(2)".parse::<GroupId>().unwrap(), GroupId::Torus(2));
        let p: GroupId = "GL(2)xSL(2)".parse().unwrap();
        assert_eq!(p, GroupId::Product(Box::new(GroupId::Gl(2)), Box::new(GroupId::Sl(2))));
        let p: GroupId = "product(torus(1),PGL(3))".parse().unwrap();
        assert_eq!(p, GroupId::Product(Box::new(GroupId::Torus(1)), Box::new(GroupId::Pgl(3))));
        assert_eq!(p.to_string().parse::<GroupId>().unwrap(), p);
    }

    #[test]
    fn duals() {
        assert!(rd("PGL(2)").dual().same_datum(&rd("SL(2)")));
        assert_eq!(rd("PGL(2)").dual().name(), "SL(2)");
        assert!(rd("GL(3)").dual().same_datum(&rd("GL(3)")));
        let d = rd("SL(3)").dual();
        assert!(d.same_datum(&rd("PGL(3)")));
        for id in ["GL(2)", "SL(3)", "Sp(4)", "torus(2)", "GL(2)xPGL(2)"] {
            let g = rd(id);
            assert!(g.dual().dual().same_datum(&g), "{id}");
            assert_eq!(g.dual().dual().cartan_matrix(), g.cartan_matrix());
        }
    }

    #[test]
    fn sl3_dual_has_index_three_by_coset_enumeration() {
        // Enumerate classes of a box of PGL(3) cocharacters modulo the coroot lattice.
        let d = rd("SL(3)").dual();
        let mut classes = BTreeSet::new();
        for a in -3..=3 {
            for b in -3..=3 {
                classes.insert(d.pi1_class(&[a, b]));
            }
        }
        assert_eq!(classes.len(), 3);
        assert_eq!(d.pi1_order(), Some(3));
    }

    #[test]
    fn dominance_examples() {
        let g = rd("GL(2)");
        let a = g.dominant(vec![1, 1]).unwrap();
        let b = g.dominant(vec![2, 0]).unwrap();
        let z = g.dominant(vec![0, 0]).unwrap();
        let w = g.dominant(vec![1, 0]).unwrap();
        assert!(g.dominance_leq(&a, &b).unwrap());
        assert!(!g.dominance_leq(&b, &a).unwrap());
        assert!(g.dominance_leq(&a, &a).unwrap());
        assert!(!g.dominance_leq(&z, &w).unwrap());
        assert!(g.dominant(vec![0, 1]).is_err());
        let bad = DominantCocharacter(vec![1]);
        assert_eq!(g.dominance_leq(&bad, &a), Err(Error::RankMismatch { expected: 2, got: 1 }));
    }

    #[test]
    fn d_pairing_examples() {
        let g = rd("GL(2)");
        assert_eq!(g.d_pairing(&[1, 0]), 1);
        assert_eq!(g.d_pairing(&[0, 0]), 0);
        assert_eq!(g.parity(&[1, 0]), 1);
        assert_eq!(g.parity(&[1, 1]), 0);
        // SL(3): the highest coroot alpha_1^v + alpha_2^v. Direct summation of
        // <alpha, mu> over the three positive roots: 1 + 1 + 2.
        let s = rd("SL(3)");
        let mu = [1, 1];
        let brute: i64 = s.positive_roots().iter().map(|a| s.pair(a, &mu)).sum();
        assert_eq!(brute, 4);
        assert_eq!(s.d_pairing(&mu), 4);
    }

    #[test]
    fn g1_examples() {
        let pgl2 = rd("PGL(2)").g1_data();
        assert!(!pgl2.epsilon_trivial);
        assert_eq!(pgl2.structure(), "GL₂");
        let sl2 = rd("SL(2)").g1_data();
        assert!(sl2.epsilon_trivial && sl2.direct_product);
        assert!(sl2.structure().contains("direct product"));
        for n in 1..=5i64 {
            let g = rd(&format!("GL({n})"));
            // 2 rho = (n-1, n-3, ..., 1-n); evaluate (-1)^{<e_i, 2 rho>} by hand.
            let brute = (0..n).all(|i| (n - 1 - 2 * i).rem_euclid(2) == 0);
            assert_eq!(g.g1_data().epsilon_trivial, brute, "GL({n})");
            assert_eq!(brute, n % 2 == 1);
        }
    }

    #[test]
    fn epsilon_squares_to_one() {
        let g = rd("PGL(3)").g1_data();
        for a in -3..=3 {
            for b in -3..=3 {
                let e = g.epsilon.eval(&[a, b]);
                assert_eq!(e * e, 1);
            }
        }
    }

    #[test]
    fn pi1_orders() {
        assert_eq!(rd("SL(3)").pi1_order(), Some(1));
        assert_eq!(rd("PGL(3)").pi1_order(), Some(3));
        assert_eq!(rd("Sp(4)").pi1_order(), Some(1));
        assert_eq!(rd("GL(2)").pi1_order(), None);
    }

    #[test]
    fn json_round_trip_and_field_order() {
        let g = rd("PGL(2)");
        let s = serde_json::to_string(&g.to_json()).unwrap();
        assert_eq!(
            s,
            r#"{"name":"PGL(2)","rank":1,"pairing_matrix":[[1]],"simple_roots":[[1]],"simple_coroots":[[2]]}"#
        );
        let back = RootDatum::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn rejects_invalid_data() {
        // Cartan diagonal must be 2.
        assert!(RootDatum::new("bad", lattice::identity(1), vec![vec![1]], vec![vec![1]]).is_err());
        // Non-perfect pairing.
        assert!(RootDatum::new("bad", vec![vec![2]], vec![vec![1]], vec![vec![1]]).is_err());
    }

    #[test]
    fn dominant_below_sl3_adjoint() {
        let g = rd("SL(3)");
        let theta = g.dominant(vec![1, 1]).unwrap();
        let below: Vec<IVec> = g.dominant_below(&theta).into_iter().map(|m| m.0).collect();
        assert_eq!(below, vec![vec![0, 0], vec![1, 1]]);
    }
}
