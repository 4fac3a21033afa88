//! Vertex operators `X_ij(a,z) = Σ x_ij(a,n) z^{-n}` as exact mode matrices.
//!
//! Every operator used here has the form `Σ_t e^{α_t} ⊗ H_t`, with `e^{α_t}`
//! acting on `C[Γ/2Γ]` and `H_t` acting on `S(H⁻)`. Products then factor as
//! `(e^α ⊗ H)(e^γ ⊗ K) = ε(α,γ) e^{α+γ} ⊗ HK`, so each Heisenberg matrix is
//! built and multiplied once per partition and reused for all `2^ν` cosets.

mod thm215;

pub use thm215::{
    thm215_rhs_matrix, verify_limit_24, verify_symmetry_25, verify_thm215, Thm215Config,
    Thm215Mutation,
};

use std::borrow::Cow;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::fock::{partitions_of_degree, FockBasisState, FockVector, Partition, PartitionSpace};
use crate::lattice::{coset_reduce, Cocycle, Coset, LatticeVector};
use crate::scalars::Scalar;
use crate::{Error, Result};

/// The data `(i, j, a)` of `X_ij(a, z)`. Colors are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSpec {
    pub i: usize,
    pub j: usize,
    pub a: Scalar,
}

impl VertexSpec {
    pub fn new(i: usize, j: usize, a: Scalar) -> VertexSpec {
        VertexSpec { i, j, a }
    }
}

impl fmt::Display for VertexSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{}{}({})", self.i + 1, self.j + 1, self.a)
    }
}

/// The truncation shared by a family of mode operators.
///
/// Columns exist for states of degree at most `depth`; rows may reach
/// `depth + window`, the furthest a single mode `|n| ≤ window` can move.
#[derive(Debug)]
pub struct FockWindow {
    nu: usize,
    depth: u32,
    window: u32,
    eps: Cocycle,
    parts: PartitionSpace,
}

impl FockWindow {
    pub fn new(nu: usize, depth: u32, window: u32, eps: Cocycle) -> Arc<FockWindow> {
        Arc::new(FockWindow {
            nu,
            depth,
            window,
            eps,
            parts: PartitionSpace::new(nu, depth + window),
        })
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn window(&self) -> u32 {
        self.window
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.eps
    }

    pub fn partitions(&self) -> &PartitionSpace {
        &self.parts
    }
}

/// Sparse columns of an operator on `S(H⁻)`, indexed by interned partitions.
#[derive(Clone, Debug)]
struct HeisMatrix {
    cols: Vec<Vec<(u32, Scalar)>>,
}

/// A Heisenberg factor: either `c · id` or an explicit matrix.
#[derive(Clone, Debug)]
enum Heis {
    Scalar(Scalar),
    Matrix(Arc<HeisMatrix>),
}

impl Heis {
    fn column(&self, k: u32) -> Cow<'_, [(u32, Scalar)]> {
        match self {
            Heis::Scalar(c) if c.is_zero() => Cow::Owned(Vec::new()),
            Heis::Scalar(c) => Cow::Owned(vec![(k, c.clone())]),
            Heis::Matrix(m) => Cow::Borrowed(&m.cols[k as usize]),
        }
    }

    fn ncols(&self) -> Option<usize> {
        match self {
            Heis::Scalar(_) => None,
            Heis::Matrix(m) => Some(m.cols.len()),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Heis::Scalar(c) => c.is_zero(),
            Heis::Matrix(m) => m.cols.iter().all(Vec::is_empty),
        }
    }

    fn scale(&self, c: &Scalar) -> Heis {
        match self {
            Heis::Scalar(x) => Heis::Scalar(x * c),
            Heis::Matrix(m) => {
                if c.is_zero() {
                    return Heis::Scalar(Scalar::zero());
                }
                let cols = m
                    .cols
                    .iter()
                    .map(|col| col.iter().map(|(r, x)| (*r, x * c)).collect())
                    .collect();
                Heis::Matrix(Arc::new(HeisMatrix { cols }))
            }
        }
    }
}

fn collect_column(acc: BTreeMap<u32, Scalar>) -> Vec<(u32, Scalar)> {
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

fn add_into(acc: &mut BTreeMap<u32, Scalar>, r: u32, x: Scalar) {
    match acc.get_mut(&r) {
        Some(y) => *y = &*y + &x,
        None => {
            acc.insert(r, x);
        }
    }
}

/// `Σ c_t H_t` on the first `ncols` columns.
fn heis_lin_comb(terms: &[(Scalar, Heis)], ncols: usize) -> Heis {
    if terms.iter().all(|(_, h)| matches!(h, Heis::Scalar(_))) {
        let mut acc = Scalar::zero();
        for (c, h) in terms {
            if let Heis::Scalar(x) = h {
                acc = &acc + &(c * x);
            }
        }
        return Heis::Scalar(acc);
    }
    let cols = (0..ncols as u32)
        .map(|k| {
            let mut acc = BTreeMap::new();
            for (c, h) in terms {
                for (r, x) in h.column(k).iter() {
                    add_into(&mut acc, *r, c * x);
                }
            }
            collect_column(acc)
        })
        .collect();
    Heis::Matrix(Arc::new(HeisMatrix { cols }))
}

#[derive(Clone, Debug)]
struct Piece {
    group: LatticeVector,
    heis: Heis,
}

/// An operator on the truncated Fock space that moves degree by `-shift`.
///
/// Column images are known for states of degree at most `depth`.
#[derive(Clone, Debug)]
pub struct ModeOperator {
    window: Arc<FockWindow>,
    depth: u32,
    shift: i64,
    pieces: Vec<Piece>,
}

impl ModeOperator {
    pub fn zero(window: &Arc<FockWindow>, depth: u32, shift: i64) -> ModeOperator {
        ModeOperator {
            window: window.clone(),
            depth,
            shift,
            pieces: Vec::new(),
        }
    }

    pub fn identity(window: &Arc<FockWindow>, depth: u32) -> ModeOperator {
        ModeOperator::scalar(window, depth, Scalar::one())
    }

    pub fn scalar(window: &Arc<FockWindow>, depth: u32, c: Scalar) -> ModeOperator {
        let mut op = ModeOperator::zero(window, depth, 0);
        if !c.is_zero() {
            op.pieces.push(Piece {
                group: LatticeVector::zero(window.nu),
                heis: Heis::Scalar(c),
            });
        }
        op
    }

    /// `e^α` as an operator.
    pub fn group(window: &Arc<FockWindow>, depth: u32, alpha: &LatticeVector) -> ModeOperator {
        let mut op = ModeOperator::zero(window, depth, 0);
        op.pieces.push(Piece {
            group: alpha.clone(),
            heis: Heis::Scalar(Scalar::one()),
        });
        op
    }

    /// `ε_c(n)` for odd `n` (0-based color).
    pub fn heisenberg(
        window: &Arc<FockWindow>,
        depth: u32,
        c: usize,
        n: i64,
    ) -> Result<ModeOperator> {
        if n % 2 == 0 {
            return Err(Error::Invalid(format!("Heisenberg mode {} is not odd", n)));
        }
        check_mode(window, n)?;
        let parts = &window.parts;
        let m = n.unsigned_abs() as u32;
        let cols = (0..parts.count_up_to(depth) as u32)
            .map(|k| {
                let p = parts.get(k);
                if n < 0 {
                    vec![(parts.index_of(&p.with(c, m)).unwrap(), Scalar::one())]
                } else {
                    let e = p.count(c, m);
                    match p.without(c, m) {
                        Some(q) => {
                            vec![(parts.index_of(&q).unwrap(), Scalar::frac(n * e as i64, 2))]
                        }
                        None => Vec::new(),
                    }
                }
            })
            .collect();
        let mut op = ModeOperator::zero(window, depth, n);
        op.pieces.push(Piece {
            group: LatticeVector::zero(window.nu),
            heis: Heis::Matrix(Arc::new(HeisMatrix { cols })),
        });
        Ok(op)
    }

    pub fn fock_window(&self) -> &Arc<FockWindow> {
        &self.window
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// The mode index `n`: states of degree `d` map to degree `d - n`.
    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn nu(&self) -> usize {
        self.window.nu
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(|p| p.heis.is_zero())
    }

    fn ncols(&self) -> usize {
        self.window.parts.count_up_to(self.depth)
    }

    /// Restricts the column domain to degree at most `depth`.
    pub fn restrict(&self, depth: u32) -> ModeOperator {
        let mut op = self.clone();
        op.depth = depth.min(self.depth);
        op
    }

    pub fn scale(&self, c: &Scalar) -> ModeOperator {
        let mut op = self.clone();
        op.pieces = self
            .pieces
            .iter()
            .map(|p| Piece {
                group: p.group.clone(),
                heis: p.heis.scale(c),
            })
            .collect();
        op.normalize();
        op
    }

    /// `Σ c_t U_t` on the common domain.
    pub fn lin_comb(terms: &[(Scalar, &ModeOperator)]) -> ModeOperator {
        let first = terms.first().expect("empty linear combination").1;
        let depth = terms.iter().map(|(_, u)| u.depth).min().unwrap();
        let shift = terms
            .iter()
            .find(|(c, u)| !c.is_zero() && !u.is_zero())
            .map_or(first.shift, |(_, u)| u.shift);
        let mut op = ModeOperator::zero(&first.window, depth, shift);
        for (c, u) in terms {
            if c.is_zero() {
                continue;
            }
            for p in &u.pieces {
                op.pieces.push(Piece {
                    group: p.group.clone(),
                    heis: p.heis.scale(c),
                });
            }
        }
        op.normalize();
        op
    }

    pub fn add(&self, other: &ModeOperator) -> ModeOperator {
        ModeOperator::lin_comb(&[(Scalar::one(), self), (Scalar::one(), other)])
    }

    pub fn sub(&self, other: &ModeOperator) -> ModeOperator {
        ModeOperator::lin_comb(&[(Scalar::one(), self), (Scalar::int(-1), other)])
    }

    /// Merges pieces with equal group parts and drops zero pieces.
    fn normalize(&mut self) {
        let ncols = self.ncols();
        let mut by_group: BTreeMap<Vec<i64>, Vec<(Scalar, Heis)>> = BTreeMap::new();
        for p in self.pieces.drain(..) {
            by_group
                .entry(p.group.coords().to_vec())
                .or_default()
                .push((Scalar::one(), p.heis));
        }
        for (g, hs) in by_group {
            let heis = if hs.len() == 1 {
                hs.into_iter().next().unwrap().1
            } else {
                heis_lin_comb(&hs, ncols)
            };
            if !heis.is_zero() {
                self.pieces.push(Piece {
                    group: LatticeVector::from_coords(g),
                    heis,
                });
            }
        }
    }

    /// `self ∘ other` on columns of degree at most `depth`.
    ///
    /// Fails with `InsufficientHeadroom` if `other` sends such a column to a
    /// state where `self` has no column.
    pub fn compose(&self, other: &ModeOperator, depth: u32) -> Result<ModeOperator> {
        if depth > other.depth {
            return Err(Error::InsufficientHeadroom {
                degree: depth,
                depth: other.depth,
            });
        }
        let parts = &self.window.parts;
        let ncols = parts.count_up_to(depth);
        let limit = parts.count_up_to(self.depth);
        let mut op = ModeOperator::zero(&self.window, depth, self.shift + other.shift);
        for pu in &self.pieces {
            for pv in &other.pieces {
                let sign = self.window.eps.eval(&pu.group, &pv.group);
                let heis = match (&pu.heis, &pv.heis) {
                    (Heis::Scalar(x), Heis::Scalar(y)) => {
                        if depth > self.depth {
                            return Err(Error::InsufficientHeadroom {
                                degree: depth,
                                depth: self.depth,
                            });
                        }
                        Heis::Scalar(x * y)
                    }
                    (hu, hv) => {
                        let mut cols = Vec::with_capacity(ncols);
                        for k in 0..ncols as u32 {
                            let mut acc = BTreeMap::new();
                            for (r, x) in hv.column(k).iter() {
                                if *r as usize >= limit
                                    || hu.ncols().is_some_and(|n| *r as usize >= n)
                                {
                                    return Err(Error::InsufficientHeadroom {
                                        degree: parts.degree_of(*r),
                                        depth: self.depth,
                                    });
                                }
                                for (s, y) in hu.column(*r).iter() {
                                    add_into(&mut acc, *s, x * y);
                                }
                            }
                            cols.push(collect_column(acc));
                        }
                        Heis::Matrix(Arc::new(HeisMatrix { cols }))
                    }
                };
                let heis = if sign == 1 {
                    heis
                } else {
                    heis.scale(&Scalar::int(-1))
                };
                op.pieces.push(Piece {
                    group: &pu.group + &pv.group,
                    heis,
                });
            }
        }
        op.normalize();
        Ok(op)
    }

    /// Image of the basis state `(coset, partition #k)` as `(coset, row) → value`.
    fn column_raw(&self, coset: Coset, k: u32) -> BTreeMap<(Coset, u32), Scalar> {
        let nu = self.window.nu;
        let rep = coset.representative(nu);
        let mut out: BTreeMap<(Coset, u32), Scalar> = BTreeMap::new();
        for p in &self.pieces {
            let sign = self.window.eps.eval(&p.group, &rep);
            let target = coset + coset_reduce(&p.group);
            for (r, x) in p.heis.column(k).iter() {
                let x = if sign == 1 { x.clone() } else { -x };
                match out.get_mut(&(target, *r)) {
                    Some(y) => *y = &*y + &x,
                    None => {
                        out.insert((target, *r), x);
                    }
                }
            }
        }
        out.retain(|_, x| !x.is_zero());
        out
    }

    /// The image of a basis state of degree at most `depth`.
    pub fn column(&self, s: &FockBasisState) -> Result<FockVector> {
        let d = s.partition.degree();
        if d > self.depth {
            return Err(Error::InsufficientHeadroom {
                degree: d,
                depth: self.depth,
            });
        }
        let k = self
            .window
            .parts
            .index_of(&s.partition)
            .expect("partition inside the window");
        Ok(self
            .column_raw(s.coset, k)
            .into_iter()
            .map(|((c, r), x)| (FockBasisState::new(c, self.window.parts.get(r).clone()), x))
            .collect())
    }

    /// Applies the operator to a vector supported in degree at most `depth`.
    pub fn apply(&self, v: &FockVector) -> Result<FockVector> {
        let mut out = FockVector::zero();
        for (s, x) in v.terms() {
            for (t, y) in self.column(s)?.terms() {
                out.add_term(t.clone(), x * y);
            }
        }
        Ok(out)
    }

    /// All nonzero entries `(row, column) → value` on the column domain.
    pub fn entries(&self) -> BTreeMap<(FockBasisState, FockBasisState), Scalar> {
        let parts = &self.window.parts;
        let mut out = BTreeMap::new();
        for k in 0..self.ncols() as u32 {
            for c in Coset::all(self.window.nu) {
                let col = FockBasisState::new(c, parts.get(k).clone());
                for ((rc, r), x) in self.column_raw(c, k) {
                    out.insert(
                        (FockBasisState::new(rc, parts.get(r).clone()), col.clone()),
                        x,
                    );
                }
            }
        }
        out
    }

    /// First entry on columns of degree at most `depth` where the operators differ.
    pub fn first_difference(&self, other: &ModeOperator, depth: u32) -> Option<EntryDifference> {
        let parts = &self.window.parts;
        let ncols = parts.count_up_to(depth.min(self.depth).min(other.depth));
        for k in 0..ncols as u32 {
            for c in Coset::all(self.window.nu) {
                let a = self.column_raw(c, k);
                let b = other.column_raw(c, k);
                if a == b {
                    continue;
                }
                let keys: std::collections::BTreeSet<_> = a.keys().chain(b.keys()).collect();
                for key in keys {
                    let x = a.get(key).cloned().unwrap_or_else(Scalar::zero);
                    let y = b.get(key).cloned().unwrap_or_else(Scalar::zero);
                    if x != y {
                        return Some(EntryDifference {
                            row: FockBasisState::new(key.0, parts.get(key.1).clone()),
                            column: FockBasisState::new(c, parts.get(k).clone()),
                            lhs: x,
                            rhs: y,
                        });
                    }
                }
            }
        }
        None
    }
}

/// A differing matrix entry between two operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryDifference {
    pub row: FockBasisState,
    pub column: FockBasisState,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

impl fmt::Display for EntryDifference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "entry ({}, {}): {} vs {}",
            self.row, self.column, self.lhs, self.rhs
        )
    }
}

/// `uv - vu` on columns of degree at most `depth`.
pub fn commutator_matrix(u: &ModeOperator, v: &ModeOperator, depth: u32) -> Result<ModeOperator> {
    let uv = u.compose(v, depth)?;
    let vu = v.compose(u, depth)?;
    Ok(uv.sub(&vu))
}

fn check_mode(window: &FockWindow, n: i64) -> Result<()> {
    if n.unsigned_abs() > window.window as u64 {
        return Err(Error::ModeOutOfWindow {
            mode: n,
            window: window.window as i64,
        });
    }
    Ok(())
}

/// Per-color weights of an exponential `exp(Σ_k w_{c,k} z^{±k} ε_c(∓k))`.
fn weights(
    nu: usize,
    terms: &[(usize, Scalar, Scalar)],
    creation: bool,
    max_k: u32,
) -> HashMap<(usize, u32), Scalar> {
    // terms are (color, u, s) for factors E(u·ε_c, s·z)
    let mut w: HashMap<(usize, u32), Scalar> = HashMap::new();
    for k in (1..=max_k).step_by(2) {
        for (c, u, s) in terms {
            assert!(*c < nu);
            let x = if creation {
                &(&Scalar::frac(2, k as i64) * u) * &s.pow(k as i64)
            } else {
                -&(u * &s.pow(-(k as i64)))
            };
            let e = w.entry((*c, k)).or_insert_with(Scalar::zero);
            *e = &*e + &x;
        }
    }
    w
}

/// `Σ_{p ⊢ s} Π w_{c,k}^e / e!` over partitions using only weighted colors.
fn exp_coefficient(
    nu: usize,
    w: &HashMap<(usize, u32), Scalar>,
    s: u32,
) -> Vec<(Partition, Scalar)> {
    let mut out = Vec::new();
    'parts: for p in partitions_of_degree(nu, s) {
        let mut c = Scalar::one();
        for ((col, m), e) in p.grouped() {
            let Some(x) = w.get(&(col, m)) else {
                continue 'parts;
            };
            if x.is_zero() {
                continue 'parts;
            }
            let mut fact = 1i64;
            for t in 2..=e as i64 {
                fact *= t;
            }
            c = &(&c * &x.pow(e as i64)) / &Scalar::int(fact);
        }
        out.push((p, c));
    }
    out
}

/// A coefficient of `z^k` in `E_±(α, scale·z)`: a polynomial in creation
/// (sign −) or annihilation (sign +) operators.
#[derive(Clone, Debug)]
pub struct GradedComponent {
    pub creation: bool,
    /// Monomials `Π ε_c(∓m)` (as partitions) with coefficients.
    pub terms: Vec<(Partition, Scalar)>,
}

impl GradedComponent {
    pub fn is_identity(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_empty() && self.terms[0].1.is_one()
    }

    pub fn apply(&self, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (mono, c) in &self.terms {
            let mut w = v.scale(c);
            for (col, m) in mono.parts() {
                let n = if self.creation { -(m as i64) } else { m as i64 };
                w = crate::fock::heis_act(col, n, &w);
            }
            out = out.add(&w);
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// The coefficient of `z^k` in `E_sign(α, scale·z)`.
#[allow(non_snake_case)]
pub fn expand_E(
    sign: Sign,
    alpha: &LatticeVector,
    scale: &Scalar,
    k: i64,
    depth: u32,
) -> Result<GradedComponent> {
    if scale.is_zero() {
        return Err(Error::ZeroScale);
    }
    if k.unsigned_abs() > depth as u64 {
        return Err(Error::ModeOutOfWindow {
            mode: k,
            window: depth as i64,
        });
    }
    let nu = alpha.rank();
    let creation = sign == Sign::Minus;
    if (creation && k < 0) || (!creation && k > 0) {
        return Ok(GradedComponent {
            creation,
            terms: Vec::new(),
        });
    }
    let s = k.unsigned_abs() as u32;
    let factors: Vec<(usize, Scalar, Scalar)> = alpha
        .coords()
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(c, &x)| (c, Scalar::int(x), scale.clone()))
        .collect();
    // E_+ weights are (−2/k)·u·s^{−k}; `weights` stores the translation −u·s^{−k}
    let mut w = weights(nu, &factors, creation, s);
    if !creation {
        for ((_, m), x) in w.iter_mut() {
            *x = &*x * &Scalar::frac(2, *m as i64);
        }
    }
    Ok(GradedComponent {
        creation,
        terms: exp_coefficient(nu, &w, s),
    })
}

/// Builds Heisenberg matrices `Π E_−(u_t ε_{c_t}, s_t z) Π E_+(u_t ε_{c_t}, s_t z)` mode by mode.
struct ExpBuilder<'a> {
    window: &'a FockWindow,
    creation: HashMap<(usize, u32), Scalar>,
    translation: HashMap<(usize, u32), Scalar>,
    coeffs: Vec<Option<Vec<(u32, Scalar)>>>,
    /// Annihilation expansions of each column: (remaining partition, weight q, coefficient).
    expansions: Vec<Vec<(Partition, u32, Scalar)>>,
}

impl<'a> ExpBuilder<'a> {
    fn new(
        window: &'a FockWindow,
        factors: &[(usize, Scalar, Scalar)],
        depth: u32,
    ) -> ExpBuilder<'a> {
        let max = depth + window.window;
        let creation = weights(window.nu, factors, true, max);
        let translation = weights(window.nu, factors, false, max);
        let parts = &window.parts;
        let expansions = (0..parts.count_up_to(depth) as u32)
            .map(|k| {
                let mut acc: Vec<(Partition, u32, Scalar)> =
                    vec![(Partition::empty(), 0, Scalar::one())];
                for ((c, m), e) in parts.get(k).grouped() {
                    let t = translation.get(&(c, m)).filter(|x| !x.is_zero());
                    let mut next = Vec::new();
                    for (rem, q, x) in &acc {
                        let kept_all = (0..e).fold(rem.clone(), |p, _| p.with(c, m));
                        let Some(t) = t else {
                            next.push((kept_all, *q, x.clone()));
                            continue;
                        };
                        let mut binom = 1i64;
                        for r in 0..=e {
                            let kept = (0..e - r).fold(rem.clone(), |p, _| p.with(c, m));
                            let coef = &(x * &Scalar::int(binom)) * &t.pow(r as i64);
                            next.push((kept, q + m * r, coef));
                            binom = binom * (e - r) as i64 / (r + 1) as i64;
                        }
                    }
                    acc = next;
                }
                acc
            })
            .collect();
        ExpBuilder {
            window,
            creation,
            translation,
            coeffs: vec![None; (max + 1) as usize],
            expansions,
        }
    }

    fn creation_coeff(&mut self, s: u32) -> &[(u32, Scalar)] {
        if self.coeffs[s as usize].is_none() {
            let parts = &self.window.parts;
            let v = exp_coefficient(self.window.nu, &self.creation, s)
                .into_iter()
                .map(|(p, c)| (parts.index_of(&p).unwrap(), c))
                .collect();
            self.coeffs[s as usize] = Some(v);
        }
        self.coeffs[s as usize].as_deref().unwrap()
    }

    /// Columns of the coefficient of `z^{-n}`.
    fn mode(&mut self, n: i64) -> HeisMatrix {
        let _ = &self.translation;
        let ncols = self.expansions.len();
        let mut cols = Vec::with_capacity(ncols);
        for k in 0..ncols {
            let mut acc = BTreeMap::new();
            let exp = std::mem::take(&mut self.expansions[k]);
            for (rem, q, x) in &exp {
                let s = *q as i64 - n;
                if s < 0 {
                    continue;
                }
                let window = self.window;
                for (mono, c) in self.creation_coeff(s as u32).to_vec() {
                    let p = rem.merge(window.parts.get(mono));
                    let r = window
                        .parts
                        .index_of(&p)
                        .expect("image inside the row space");
                    add_into(&mut acc, r, x * &c);
                }
            }
            self.expansions[k] = exp;
            cols.push(collect_column(acc));
        }
        HeisMatrix { cols }
    }
}

/// `x_ij(a, n)` on columns of degree at most `depth`.
pub fn mode_matrix(
    window: &Arc<FockWindow>,
    spec: &VertexSpec,
    n: i64,
    depth: u32,
) -> Result<ModeOperator> {
    ModeCache::new(window.clone()).mode(spec, n, depth)
}

/// Memoizes mode matrices for a fixed [`FockWindow`].
pub struct ModeCache {
    window: Arc<FockWindow>,
    cache: HashMap<(usize, usize, String, i64, u32), ModeOperator>,
}

impl ModeCache {
    pub fn new(window: Arc<FockWindow>) -> ModeCache {
        ModeCache {
            window,
            cache: HashMap::new(),
        }
    }

    pub fn window(&self) -> &Arc<FockWindow> {
        &self.window
    }

    pub fn mode(&mut self, spec: &VertexSpec, n: i64, depth: u32) -> Result<ModeOperator> {
        check_mode(&self.window, n)?;
        let key = (spec.i, spec.j, spec.a.to_string(), n, depth);
        if let Some(op) = self.cache.get(&key) {
            return Ok(op.clone());
        }
        let w = self.window.window as i64;
        let ops = self.build_all(spec, depth)?;
        for (m, op) in (-w..=w).zip(ops) {
            self.cache
                .insert((spec.i, spec.j, spec.a.to_string(), m, depth), op);
        }
        Ok(self.cache[&key].clone())
    }

    /// Every mode `|n| ≤ window` of `X_ij(a, z)`.
    fn build_all(&self, spec: &VertexSpec, depth: u32) -> Result<Vec<ModeOperator>> {
        let window = &self.window;
        let nu = window.nu;
        if spec.i >= nu || spec.j >= nu {
            return Err(Error::Invalid(format!(
                "color out of range for rank {}",
                nu
            )));
        }
        if depth > window.depth {
            return Err(Error::InsufficientHeadroom {
                degree: depth,
                depth: window.depth,
            });
        }
        if spec.a.is_zero() {
            return Err(Error::ZeroScale);
        }
        let w = window.window as i64;
        let one = Scalar::one();
        let zero_vec = LatticeVector::zero(nu);
        if spec.i == spec.j && spec.a == one {
            return (-w..=w)
                .map(|n| {
                    if n % 2 == 0 {
                        Ok(ModeOperator::zero(window, depth, n))
                    } else {
                        Ok(ModeOperator::heisenberg(window, depth, spec.i, n)?
                            .scale(&Scalar::int(4)))
                    }
                })
                .collect();
        }
        if spec.i == spec.j && spec.a == -&one {
            return Ok((-w..=w)
                .map(|n| ModeOperator::zero(window, depth, n))
                .collect());
        }
        let factors = [
            (spec.i, one.clone(), one.clone()),
            (spec.j, -&one, spec.a.clone()),
        ];
        let mut builder = ExpBuilder::new(window, &factors, depth);
        let (group, prefactor) = if spec.i == spec.j {
            (zero_vec, &(&one + &spec.a) / &(&one - &spec.a))
        } else {
            (
                LatticeVector::root(nu, spec.i, spec.j),
                Scalar::int(window.eps.generator(spec.i, spec.j)),
            )
        };
        let mut out = Vec::new();
        for n in -w..=w {
            let mut h = Heis::Matrix(Arc::new(builder.mode(n)));
            if spec.i == spec.j && n == 0 {
                let ncols = window.parts.count_up_to(depth);
                h = heis_lin_comb(
                    &[(one.clone(), h), (-&one, Heis::Scalar(one.clone()))],
                    ncols,
                );
            }
            let mut op = ModeOperator::zero(window, depth, n);
            op.pieces.push(Piece {
                group: group.clone(),
                heis: h.scale(&prefactor),
            });
            op.normalize();
            out.push(op);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests;
