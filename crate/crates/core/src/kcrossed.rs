//! K-theory of crossed products `A ⋊_α ℕ` by injective endomorphisms.
//!
//! `A ⋊_α ℕ` is Morita equivalent to `Ā ⋊_ᾱ ℤ` for the dilation `Ā`, whose
//! K-groups are direct limits of those of `A`. The Pimsner–Voiculescu
//! sequence for `ᾱ` then splits into two short exact sequences
//!
//! ```text
//! 0 → coker(Id − K₀(ᾱ)) → K₀(A ⋊ ℕ) → ker(Id − K₁(ᾱ)) → 0
//! 0 → coker(Id − K₁(ᾱ)) → K₁(A ⋊ ℕ) → ker(Id − K₀(ᾱ)) → 0
//! ```
//!
//! which are resolved only when one end vanishes or the right end is free.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::abelian::{FgAbelianGroup, GroupHom};
use crate::colimit::{ker_coker_one_minus_with, ColimitDescription, ColimitOptions, DilationProblem};
use crate::{Error, Result};

pub use crate::numtheory::bracket;

/// `(K₀(A), K₁(A))` with the maps induced by an endomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KTheoryData {
    map0: GroupHom,
    map1: GroupHom,
}

impl KTheoryData {
    pub fn new(map0: GroupHom, map1: GroupHom) -> Result<Self> {
        if !map0.is_endomorphism() || !map1.is_endomorphism() {
            return Err(Error::Incompatible("K-theory maps must be endomorphisms".into()));
        }
        Ok(Self { map0, map1 })
    }

    /// Identity maps on both groups.
    pub fn trivial_action(k0: &FgAbelianGroup, k1: &FgAbelianGroup) -> Self {
        Self { map0: GroupHom::identity(k0), map1: GroupHom::identity(k1) }
    }

    pub fn k0(&self) -> &FgAbelianGroup {
        self.map0.domain()
    }

    pub fn k1(&self) -> &FgAbelianGroup {
        self.map1.domain()
    }

    pub fn map0(&self) -> &GroupHom {
        &self.map0
    }

    pub fn map1(&self) -> &GroupHom {
        &self.map1
    }
}

/// Composes both K-maps with multiplication by `class_multiplier`.
///
/// Twisting `α` by a shift endomorphism multiplies `K_*(α)` by the class
/// `[p]`; when that class acts as an integer this is the resulting data.
pub fn scale_k_map(d: &KTheoryData, class_multiplier: &BigInt) -> KTheoryData {
    KTheoryData { map0: d.map0.scaled(class_multiplier), map1: d.map1.scaled(class_multiplier) }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Resolution {
    /// The cokernel end is zero, so the group is the kernel end.
    SubVanishes,
    /// The kernel end is zero, so the group is the cokernel end.
    QuotientVanishes,
    /// The kernel end is free abelian, so the sequence splits.
    FreeQuotientSplits,
    Unresolved,
}

impl Resolution {
    pub fn tag(self) -> &'static str {
        match self {
            Self::SubVanishes => "sub_vanishes",
            Self::QuotientVanishes => "quotient_vanishes",
            Self::FreeQuotientSplits => "free_quotient_splits",
            Self::Unresolved => "unresolved",
        }
    }

    /// Human-readable reason.
    pub fn as_str(self) -> &'static str {
        match self {
            Self::SubVanishes => "cokernel end vanishes",
            Self::QuotientVanishes => "kernel end vanishes",
            Self::FreeQuotientSplits => "kernel end is free, extension splits",
            Self::Unresolved => "extension not determined",
        }
    }
}

/// One K-group of the crossed product as an extension `0 → sub → K → quotient → 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPiece {
    pub sub: ColimitDescription,
    pub quotient: ColimitDescription,
    pub resolved: Option<ColimitDescription>,
    pub resolution: Resolution,
}

impl GradedPiece {
    fn assemble(sub: ColimitDescription, quotient: ColimitDescription) -> Self {
        let (resolved, resolution) = if sub.is_zero() {
            (Some(quotient.clone()), Resolution::SubVanishes)
        } else if quotient.is_zero() {
            (Some(sub.clone()), Resolution::QuotientVanishes)
        } else if quotient.is_free_fg() {
            let sum = ColimitDescription::sum(vec![sub.clone(), quotient.clone()]);
            (Some(sum), Resolution::FreeQuotientSplits)
        } else {
            (None, Resolution::Unresolved)
        };
        Self { sub, quotient, resolved, resolution }
    }

    pub fn is_resolved(&self) -> bool {
        self.resolved.as_ref().is_some_and(ColimitDescription::is_resolved)
    }
}

impl fmt::Display for GradedPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.resolved {
            Some(k) => write!(f, "{k}"),
            None => write!(f, "ext({} by {})", self.quotient, self.sub),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedProductK {
    pub k0: GradedPiece,
    pub k1: GradedPiece,
}

impl CrossedProductK {
    pub fn is_resolved(&self) -> bool {
        self.k0.is_resolved() && self.k1.is_resolved()
    }
}

pub fn pv_crossed_product(d: &KTheoryData) -> Result<CrossedProductK> {
    pv_crossed_product_with(d, ColimitOptions::default())
}

pub fn pv_crossed_product_with(d: &KTheoryData, opts: ColimitOptions) -> Result<CrossedProductK> {
    let (ker0, coker0) = ker_coker_one_minus_with(&DilationProblem::new(d.map0.clone())?, opts)?;
    let (ker1, coker1) = ker_coker_one_minus_with(&DilationProblem::new(d.map1.clone())?, opts)?;
    Ok(CrossedProductK {
        k0: GradedPiece::assemble(coker0, ker1),
        k1: GradedPiece::assemble(coker1, ker0),
    })
}

/// Consistency of a result with its input: the extension ends must match a
/// recomputation, the resolution reason must hold, and resolved groups must
/// have `rank = rank(sub) + rank(quotient)` and, when finite, `|K| = |sub|·|quotient|`.
pub fn pv_verify_exactness(d: &KTheoryData, result: &CrossedProductK) -> bool {
    let Ok(expected) = pv_crossed_product(d) else { return false };
    let matches = |got: &GradedPiece, want: &GradedPiece| {
        got.sub == want.sub && got.quotient == want.quotient && piece_consistent(got)
    };
    matches(&result.k0, &expected.k0) && matches(&result.k1, &expected.k1)
}

fn piece_consistent(p: &GradedPiece) -> bool {
    let reason_holds = match p.resolution {
        Resolution::SubVanishes => p.sub.is_zero(),
        Resolution::QuotientVanishes => p.quotient.is_zero(),
        Resolution::FreeQuotientSplits => p.quotient.is_free_fg(),
        Resolution::Unresolved => p.resolved.is_none(),
    };
    let Some(k) = &p.resolved else { return reason_holds };
    if k.rank() != p.sub.rank() + p.quotient.rank() {
        return false;
    }
    match (p.sub.finite_order(), p.quotient.finite_order()) {
        (Some(a), Some(b)) => reason_holds && k.finite_order() == Some(a * b),
        _ => reason_holds && k.finite_order().is_none(),
    }
}

/// The `n` of a Cuntz algebra `O_n`, `2 ≤ n ≤ ∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CuntzIndex {
    Finite(BigInt),
    Infinite,
}

impl fmt::Display for CuntzIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(n) => write!(f, "{n}"),
            Self::Infinite => f.write_str("inf"),
        }
    }
}

/// K-data of `O_n` with `K_*(α_m) = m · Id`.
pub fn cuntz_k_data(n: &CuntzIndex, m: &BigInt) -> Result<KTheoryData> {
    check_cuntz_params(n, m)?;
    let k0 = match n {
        CuntzIndex::Infinite => FgAbelianGroup::free(1),
        CuntzIndex::Finite(n) => FgAbelianGroup::cyclic(n - 1),
    };
    let identity = KTheoryData::trivial_action(&k0, &FgAbelianGroup::trivial());
    Ok(scale_k_map(&identity, m))
}

fn check_cuntz_params(n: &CuntzIndex, m: &BigInt) -> Result<()> {
    if !m.is_positive() {
        return Err(Error::InvalidParameter(format!("m must be positive, got {m}")));
    }
    if let CuntzIndex::Finite(n) = n {
        if *n < BigInt::from(2) {
            return Err(Error::InvalidParameter(format!("n must be at least 2, got {n}")));
        }
        if m >= n {
            return Err(Error::RequiresMLessThanN { n: format!("{n}"), m: format!("{m}") });
        }
    }
    Ok(())
}

/// Which value the emitted label is based on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorsionSource {
    /// `l = k / gcd(k, m − 1)`, the closed form as originally stated.
    ClosedFormL,
    /// `g = gcd(k, m − 1)`, confirmed by element-wise computation on `ℤ/k`.
    OracleG,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuntzClosedForm {
    pub n: CuntzIndex,
    pub m: BigInt,
    /// Order of the limit `K₀`, `[gcd(n − 1, m) | n − 1]`; `None` for `n = ∞`.
    pub k: Option<BigInt>,
    pub closed_form_l: Option<BigInt>,
    pub oracle_g: Option<BigInt>,
    pub label_source: TorsionSource,
    /// K-groups of `O_n ⋊_{α_m} ℕ` as computed by the PV machinery.
    pub k0: ColimitDescription,
    pub k1: ColimitDescription,
    pub label: String,
    /// The label the `l` formula would give, when it differs in form.
    pub closed_form_label: Option<String>,
}

pub fn cuntz_closed_form(n: &CuntzIndex, m: &BigInt) -> Result<CuntzClosedForm> {
    let data = cuntz_k_data(n, m)?;
    let pv = pv_crossed_product(&data)?;
    let (Some(k0), Some(k1)) = (pv.k0.resolved, pv.k1.resolved) else {
        return Err(Error::InvalidParameter("Cuntz family gave an unresolved extension".into()));
    };

    let (k, closed_form_l, oracle_g, label, closed_form_label) = match n {
        CuntzIndex::Infinite => {
            let label = if m.is_one() { String::from("B") } else { format!("O_{m}") };
            (None, None, None, label, None)
        }
        CuntzIndex::Finite(n) => {
            let n1: BigInt = n - 1;
            let k = bracket(&n1.gcd(m), &n1)?;
            let g = k.gcd(&(m - 1));
            let l = &k / &g;
            // K₀ = K₁ = ℤ/g, which is the K-theory of O_{g+1} ⊗ O_{g+1}.
            let order = k0.finite_order().unwrap_or_else(|| g.clone());
            let label = format!("O_{} ⊗ O_{}", &order + 1, &order + 1);
            let closed_form_label = format!("O_{} ⊗ O_{}", &l + 1, &l + 1);
            (Some(k), Some(l), Some(g), label, Some(closed_form_label))
        }
    };
    Ok(CuntzClosedForm {
        n: n.clone(),
        m: m.clone(),
        k,
        closed_form_l,
        oracle_g,
        label_source: TorsionSource::OracleG,
        k0,
        k1,
        label,
        closed_form_label,
    })
}
