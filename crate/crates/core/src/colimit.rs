//! Direct limits `colim(G → G → G → ⋯)` along a single endomorphism `f`.
//!
//! This is the K-theory of a dilation: the endomorphism becomes an
//! automorphism `f̄` of the limit. The limit of `G` along `f` equals the limit
//! of `G/N` along the induced map, where `N = ⋃ ker fᵗ`, and the induced map
//! is injective. Finite groups are then done (the map is an automorphism);
//! free groups with a non-unimodular matrix `M` give `⋃ M⁻ᵗ ℤʳ ⊂ ℚʳ`.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::abelian::{
    cokernel, induced_on_cokernel, kernel, restrict_endo, FgAbelianGroup, GroupHom, Presentation,
};
use crate::matrix::{kernel_basis, solve, IntMatrix};
use crate::numtheory::same_prime_support;
use crate::{Error, Result};

pub const DEFAULT_STABILIZATION_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColimitOptions {
    /// Maximum number of powers of `f` tried before `ker fᵗ` must have stabilized.
    pub stabilization_cap: usize,
}

impl Default for ColimitOptions {
    fn default() -> Self {
        Self { stabilization_cap: DEFAULT_STABILIZATION_CAP }
    }
}

/// A group with a fixed endomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DilationProblem {
    endo: GroupHom,
}

impl DilationProblem {
    pub fn new(endo: GroupHom) -> Result<Self> {
        if !endo.is_endomorphism() {
            return Err(Error::Incompatible(format!(
                "not an endomorphism: {} → {}",
                endo.domain(),
                endo.codomain()
            )));
        }
        Ok(Self { endo })
    }

    /// `matrix` acts on the presentation's generator coordinates.
    pub fn from_presentation(base: &Presentation, matrix: &IntMatrix) -> Result<Self> {
        Self::new(GroupHom::from_presentations(base, base, matrix)?)
    }

    pub fn base(&self) -> &FgAbelianGroup {
        self.endo.domain()
    }

    pub fn endo(&self) -> &GroupHom {
        &self.endo
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventualKernel {
    pub group: FgAbelianGroup,
    pub inclusion: GroupHom,
    /// Least `t` with `ker fᵗ = ker fᵗ⁺¹`.
    pub stabilization_index: usize,
}

pub fn eventual_kernel(p: &DilationProblem) -> Result<EventualKernel> {
    eventual_kernel_with(p, ColimitOptions::default())
}

pub fn eventual_kernel_with(p: &DilationProblem, opts: ColimitOptions) -> Result<EventualKernel> {
    let f = &p.endo;
    let mut power = GroupHom::identity(p.base());
    let mut current = kernel(&power)?;
    for t in 0..=opts.stabilization_cap {
        let next_power = f.compose(&power)?;
        let next = kernel(&next_power)?;
        // ker fᵗ ⊆ ker fᵗ⁺¹ always; equality iff fᵗ kills the generators of the latter.
        let stable = (0..next.group.num_generators())
            .map(|j| power.apply(&next.inclusion.matrix().column(j)))
            .try_fold(true, |acc, img| Ok::<_, Error>(acc && img?.iter().all(Zero::is_zero)))?;
        if stable {
            return Ok(EventualKernel {
                group: current.group,
                inclusion: current.inclusion,
                stabilization_index: t,
            });
        }
        power = next_power;
        current = next;
    }
    Err(Error::StabilizationCapExceeded { cap: opts.stabilization_cap })
}

/// Isomorphism type of a direct limit together with the automorphism induced on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColimitDescription {
    /// A finitely generated group; `action` is an automorphism of it.
    FiniteOrFg { group: FgAbelianGroup, action: GroupHom },
    /// `⋃ₜ M⁻ᵗ ℤʳ` inside `ℚʳ` for an integer matrix `M` with `det M ≠ 0, ±1`.
    /// The induced automorphism is `M` itself.
    LocalizedFree { matrix: IntMatrix },
    /// An equivariantly split sum.
    DirectSum(Vec<ColimitDescription>),
    /// `0 → sub → ? → quotient → 0`, not determined.
    Extension { sub: Box<ColimitDescription>, quotient: Box<ColimitDescription> },
}

impl ColimitDescription {
    pub fn fg(group: FgAbelianGroup, action: GroupHom) -> Self {
        Self::FiniteOrFg { group, action }
    }

    /// The trivial group.
    pub fn zero() -> Self {
        let g = FgAbelianGroup::trivial();
        Self::FiniteOrFg { action: GroupHom::identity(&g), group: g }
    }

    /// A finitely generated group with the identity action.
    pub fn fixed(group: FgAbelianGroup) -> Self {
        Self::FiniteOrFg { action: GroupHom::identity(&group), group }
    }

    /// Direct sum of parts, merging finitely generated parts and dropping zeros.
    pub fn sum(parts: Vec<ColimitDescription>) -> Self {
        let mut fg: Option<GroupHom> = None;
        let mut rest = Vec::new();
        for part in parts {
            match part {
                Self::FiniteOrFg { action, .. } => {
                    fg = Some(match fg {
                        None => action,
                        Some(prev) => GroupHom::direct_sum(&prev, &action),
                    });
                }
                Self::DirectSum(inner) => rest.extend(inner),
                other => rest.push(other),
            }
        }
        if let Some(action) = fg.filter(|a| !a.domain().is_trivial()) {
            rest.insert(0, Self::FiniteOrFg { group: action.domain().clone(), action });
        }
        match rest.len() {
            0 => Self::zero(),
            1 => rest.pop().unwrap(),
            _ => Self::DirectSum(rest),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Self::FiniteOrFg { .. } => "finite_or_fg",
            Self::LocalizedFree { .. } => "localized_free",
            Self::DirectSum(_) => "direct_sum",
            Self::Extension { .. } => "extension",
        }
    }

    /// False if an undetermined extension occurs anywhere inside.
    pub fn is_resolved(&self) -> bool {
        match self {
            Self::FiniteOrFg { .. } | Self::LocalizedFree { .. } => true,
            Self::DirectSum(parts) => parts.iter().all(Self::is_resolved),
            Self::Extension { .. } => false,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Self::FiniteOrFg { group, .. } => group.is_trivial(),
            Self::LocalizedFree { matrix } => matrix.rows() == 0,
            Self::DirectSum(parts) => parts.iter().all(Self::is_zero),
            Self::Extension { sub, quotient } => sub.is_zero() && quotient.is_zero(),
        }
    }

    /// Torsion-free rank (dimension after tensoring with ℚ).
    pub fn rank(&self) -> usize {
        match self {
            Self::FiniteOrFg { group, .. } => group.free_rank(),
            Self::LocalizedFree { matrix } => matrix.rows(),
            Self::DirectSum(parts) => parts.iter().map(Self::rank).sum(),
            Self::Extension { sub, quotient } => sub.rank() + quotient.rank(),
        }
    }

    /// Order if the group is finite.
    pub fn finite_order(&self) -> Option<BigInt> {
        match self {
            Self::FiniteOrFg { group, .. } => group.order(),
            Self::LocalizedFree { matrix } if matrix.rows() == 0 => Some(BigInt::one()),
            Self::LocalizedFree { .. } => None,
            Self::DirectSum(parts) => parts.iter().map(Self::finite_order).product(),
            Self::Extension { sub, quotient } => Some(sub.finite_order()? * quotient.finite_order()?),
        }
    }

    pub fn as_fg(&self) -> Option<&FgAbelianGroup> {
        match self {
            Self::FiniteOrFg { group, .. } => Some(group),
            _ => None,
        }
    }

    /// A finitely generated free abelian group (including 0).
    pub fn is_free_fg(&self) -> bool {
        self.as_fg().is_some_and(FgAbelianGroup::is_free)
    }

    /// Torsion part plus one localization parameter per rank-one summand
    /// (`1` for a plain `ℤ`), when the group is a known direct sum of such.
    fn flatten(&self) -> Option<(FgAbelianGroup, Vec<BigInt>)> {
        match self {
            Self::FiniteOrFg { group, .. } => {
                Some((group.torsion(), vec![BigInt::one(); group.free_rank()]))
            }
            Self::LocalizedFree { matrix } => {
                Some((FgAbelianGroup::trivial(), localized_summands(matrix)?))
            }
            Self::DirectSum(parts) => {
                let mut torsion = FgAbelianGroup::trivial();
                let mut types = Vec::new();
                for part in parts {
                    let (t, ty) = part.flatten()?;
                    torsion = crate::abelian::direct_sum(&torsion, &t);
                    types.extend(ty);
                }
                Some((torsion, types))
            }
            Self::Extension { .. } => None,
        }
    }
}

/// If `M` is conjugate by a unimodular matrix to `diag(m₁, …, m_r)`, the `|mᵢ|`
/// (so the limit is `⊕ ℤ[1/mᵢ]`), sorted ascending.
pub fn localized_summands(matrix: &IntMatrix) -> Option<Vec<BigInt>> {
    let r = matrix.rows();
    let mut values: Vec<BigInt> = if matrix.is_diagonal() {
        (0..r).map(|i| matrix[(i, i)].abs()).collect()
    } else {
        let det = matrix.determinant().ok()?.abs();
        let candidates = divisors(&det)?;
        let mut columns: Vec<Vec<BigInt>> = Vec::new();
        let mut values = Vec::new();
        for d in candidates {
            for lambda in [d.clone(), -d.clone()] {
                let shifted = matrix.try_sub(&IntMatrix::diagonal(r, r, vec![lambda.clone(); r])).ok()?;
                let basis = kernel_basis(&shifted);
                for j in 0..basis.cols() {
                    columns.push(basis.column(j));
                    values.push(lambda.abs());
                }
            }
        }
        if columns.len() != r || !IntMatrix::from_columns(r, &columns).determinant().ok()?.abs().is_one() {
            return None;
        }
        values
    };
    values.sort();
    Some(values)
}

/// Positive divisors of `n`, or `None` if `n` is zero or too large to factor by trial division.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.to_u64().filter(|&n| n > 0 && n <= 1 << 40)?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// `Some(true/false)` when decidable, `None` when undetermined (unresolved
/// extensions, or localized parts that are not diagonalizable).
pub fn isomorphic(a: &ColimitDescription, b: &ColimitDescription) -> Option<bool> {
    let (ta, mut xa) = a.flatten()?;
    let (tb, mut xb) = b.flatten()?;
    if ta != tb || xa.len() != xb.len() {
        return Some(false);
    }
    // Rank-one summands ℤ[1/m] are classified by the primes dividing m.
    while let Some(m) = xa.pop() {
        match xb.iter().position(|n| same_prime_support(&m, n)) {
            Some(i) => {
                xb.swap_remove(i);
            }
            None => return Some(false),
        }
    }
    Some(true)
}

pub fn classify_colimit(p: &DilationProblem) -> Result<ColimitDescription> {
    classify_colimit_with(p, ColimitOptions::default())
}

pub fn classify_colimit_with(p: &DilationProblem, opts: ColimitOptions) -> Result<ColimitDescription> {
    let ek = eventual_kernel_with(p, opts)?;
    let quotient = cokernel(&ek.inclusion)?;
    let induced = induced_on_cokernel(&p.endo, &ek.inclusion, &quotient)?;
    let q = quotient.group;

    if q.is_finite() {
        return Ok(ColimitDescription::fg(q, induced));
    }
    let t = q.torsion_count();
    let n = q.num_generators();
    let m = induced.matrix();
    let free_block = m.block(t, n, t, n);
    if free_block.determinant()?.abs().is_one() {
        return Ok(ColimitDescription::fg(q, induced));
    }
    if t == 0 {
        return Ok(ColimitDescription::LocalizedFree { matrix: free_block });
    }

    // Mixed: torsion T is invariant; look for an invariant free complement.
    let torsion = q.torsion();
    let torsion_action = GroupHom::new(torsion.clone(), torsion.clone(), m.block(0, t, 0, t))?;
    let torsion_part = ColimitDescription::fg(torsion, torsion_action);
    let free_part = ColimitDescription::LocalizedFree { matrix: free_block.clone() };
    if has_invariant_complement(&q, m, &free_block) {
        Ok(ColimitDescription::DirectSum(vec![torsion_part, free_part]))
    } else {
        Ok(ColimitDescription::Extension { sub: Box::new(torsion_part), quotient: Box::new(free_part) })
    }
}

/// For `f = [[A, B], [0, D]]` on `T ⊕ ℤʳ`, a complement `{(Xv, v)}` is invariant
/// iff `A X + B ≡ X D` modulo the torsion orders. Solved exactly as an integer
/// system in the entries of `X` plus one slack variable per congruence.
fn has_invariant_complement(q: &FgAbelianGroup, m: &IntMatrix, d: &IntMatrix) -> bool {
    let t = q.torsion_count();
    let r = q.free_rank();
    let orders = q.invariant_factors();
    let unknowns = t * r;
    let var = |i: usize, j: usize| i * r + j;
    let mut system = IntMatrix::zeros(unknowns, 2 * unknowns);
    let mut rhs = vec![BigInt::zero(); unknowns];
    for i in 0..t {
        for j in 0..r {
            let row = var(i, j);
            for k in 0..t {
                system[(row, var(k, j))] += &m[(i, k)];
            }
            for l in 0..r {
                system[(row, var(i, l))] -= &d[(l, j)];
            }
            system[(row, unknowns + row)] = -orders[i].clone();
            rhs[row] = -m[(i, t + j)].clone();
        }
    }
    solve(&system, &rhs).is_some()
}

/// `ker(Id − f̄)` and `coker(Id − f̄)` on the limit.
///
/// Filtered colimits are exact, so both are limits of the corresponding
/// level-zero groups along the map induced by `f` (which commutes with `Id − f`).
pub fn ker_coker_one_minus(p: &DilationProblem) -> Result<(ColimitDescription, ColimitDescription)> {
    ker_coker_one_minus_with(p, ColimitOptions::default())
}

pub fn ker_coker_one_minus_with(
    p: &DilationProblem,
    opts: ColimitOptions,
) -> Result<(ColimitDescription, ColimitDescription)> {
    let h = p.endo.identity_minus()?;
    let ker = kernel(&h)?;
    let on_ker = DilationProblem::new(restrict_endo(&p.endo, &ker.inclusion)?)?;
    let coker = cokernel(&h)?;
    let on_coker = DilationProblem::new(induced_on_cokernel(&p.endo, &h, &coker)?)?;
    Ok((classify_colimit_with(&on_ker, opts)?, classify_colimit_with(&on_coker, opts)?))
}

/// The class of `coords` placed at stage `level` of the directed system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColimElement {
    pub level: usize,
    pub coords: Vec<BigInt>,
}

/// Whether the element vanishes in the limit, i.e. `fᵗ(v) = 0` for some `t`.
pub fn colim_element_is_zero(p: &DilationProblem, e: &ColimElement) -> Result<bool> {
    colim_element_is_zero_with(p, e, ColimitOptions::default())
}

pub fn colim_element_is_zero_with(p: &DilationProblem, e: &ColimElement, opts: ColimitOptions) -> Result<bool> {
    if e.coords.len() != p.base().num_generators() {
        return Err(Error::Incompatible(format!(
            "{} coordinates for a group with {} generators",
            e.coords.len(),
            p.base().num_generators()
        )));
    }
    let ek = eventual_kernel_with(p, opts)?;
    let image = p.endo.pow(ek.stabilization_index)?.apply(&e.coords)?;
    Ok(image.iter().all(Zero::is_zero))
}

impl fmt::Display for ColimitDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::FiniteOrFg { group, .. } => write!(f, "{group}"),
            Self::LocalizedFree { matrix } => match localized_summands(matrix) {
                Some(values) => {
                    for (i, m) in values.iter().enumerate() {
                        if i > 0 {
                            f.write_str(" ⊕ ")?;
                        }
                        if m.is_one() {
                            f.write_str("Z")?;
                        } else {
                            write!(f, "Z[1/{m}]")?;
                        }
                    }
                    Ok(())
                }
                None => write!(f, "colim(Z^{}, {matrix})", matrix.rows()),
            },
            Self::DirectSum(parts) => {
                for (i, part) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ⊕ ")?;
                    }
                    write!(f, "{part}")?;
                }
                Ok(())
            }
            Self::Extension { sub, quotient } => write!(f, "ext({quotient} by {sub})"),
        }
    }
}
