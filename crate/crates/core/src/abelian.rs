//! Finitely generated abelian groups and their homomorphisms.
//!
//! A group is kept in canonical form `ℤ/d₁ ⊕ … ⊕ ℤ/d_t ⊕ ℤ^r` with every
//! `dᵢ ≥ 2` and `dᵢ | dᵢ₊₁`, so equality of values is isomorphism of groups.
//! Its generators are ordered torsion first, then free. Homomorphisms act on
//! column vectors of generator coordinates: `matrix` has one row per codomain
//! generator and one column per domain generator.
//!
//! Kernels and cokernels are computed by lifting to free presentations and
//! reading the answer off a Smith normal form.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::{kernel_basis, smith_normal_form, solve, IntMatrix};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FgAbelianGroup {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn new(free_rank: usize, invariant_factors: Vec<BigInt>) -> Result<Self> {
        for (i, d) in invariant_factors.iter().enumerate() {
            if *d < BigInt::from(2) {
                return Err(Error::InvalidGroup(format!("invariant factor {d} is below 2")));
            }
            if let Some(next) = invariant_factors.get(i + 1) {
                if !next.is_multiple_of(d) {
                    return Err(Error::InvalidGroup(format!("{d} does not divide {next}")));
                }
            }
        }
        Ok(Self { free_rank, invariant_factors })
    }

    pub fn trivial() -> Self {
        Self { free_rank: 0, invariant_factors: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        Self { free_rank: rank, invariant_factors: Vec::new() }
    }

    /// `ℤ/n`, where `n = 0` gives `ℤ` and `n = ±1` the trivial group.
    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        let n = n.into().abs();
        if n.is_zero() {
            Self::free(1)
        } else if n.is_one() {
            Self::trivial()
        } else {
            Self { free_rank: 0, invariant_factors: vec![n] }
        }
    }

    /// `⊕ ℤ/oᵢ` for arbitrary orders (`0` meaning `ℤ`), brought to canonical form.
    pub fn from_cyclic_orders<I: IntoIterator<Item = BigInt>>(orders: I) -> Self {
        let orders: Vec<BigInt> = orders.into_iter().collect();
        let n = orders.len();
        let rel = IntMatrix::diagonal(n, n, orders);
        Presentation { generators: n, relations: rel }.canonicalize().group
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn torsion_count(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn num_generators(&self) -> usize {
        self.invariant_factors.len() + self.free_rank
    }

    /// Order of each generator, `0` for the free ones.
    pub fn generator_orders(&self) -> Vec<BigInt> {
        let mut v = self.invariant_factors.clone();
        v.resize(self.num_generators(), BigInt::zero());
        v
    }

    pub fn is_trivial(&self) -> bool {
        self.num_generators() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// `None` for infinite groups.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.invariant_factors.iter().product())
    }

    pub fn torsion(&self) -> Self {
        Self { free_rank: 0, invariant_factors: self.invariant_factors.clone() }
    }

    fn check_len(&self, coords: &[BigInt]) -> Result<()> {
        if coords.len() != self.num_generators() {
            return Err(Error::Incompatible(format!(
                "{} coordinates for a group with {} generators",
                coords.len(),
                self.num_generators()
            )));
        }
        Ok(())
    }

    /// Canonical representative: torsion coordinates reduced into `[0, dᵢ)`.
    pub fn reduce(&self, coords: &[BigInt]) -> Result<Vec<BigInt>> {
        self.check_len(coords)?;
        Ok(coords
            .iter()
            .enumerate()
            .map(|(i, x)| match self.invariant_factors.get(i) {
                Some(d) => x.mod_floor(d),
                None => x.clone(),
            })
            .collect())
    }

    pub fn element_is_zero(&self, coords: &[BigInt]) -> Result<bool> {
        Ok(self.reduce(coords)?.iter().all(Zero::is_zero))
    }

    /// Relations as a square diagonal matrix of generator orders.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.num_generators();
        IntMatrix::diagonal(n, n, self.generator_orders())
    }

    pub fn as_presentation(&self) -> Presentation {
        let n = self.num_generators();
        let t = self.torsion_count();
        Presentation {
            generators: n,
            relations: IntMatrix::diagonal(t, n, self.invariant_factors.iter().cloned()),
        }
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut first = true;
        for d in &self.invariant_factors {
            if !first {
                f.write_str(" ⊕ ")?;
            }
            write!(f, "Z/{d}")?;
            first = false;
        }
        if self.free_rank > 0 {
            if !first {
                f.write_str(" ⊕ ")?;
            }
            match self.free_rank {
                1 => f.write_str("Z")?,
                r => write!(f, "Z^{r}")?,
            }
        }
        Ok(())
    }
}

/// `ℤ^generators / (row span of relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: usize,
    relations: IntMatrix,
}

/// A canonical group together with the coordinate changes to and from the
/// presentation it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    pub group: FgAbelianGroup,
    /// Presented coordinates → canonical coordinates.
    pub to_canonical: IntMatrix,
    /// Canonical generators expressed in presented coordinates (as columns).
    pub from_canonical: IntMatrix,
}

impl Presentation {
    pub fn new(generators: usize, relations: IntMatrix) -> Result<Self> {
        if relations.cols() != generators {
            return Err(Error::Incompatible(format!(
                "relations have {} columns but there are {generators} generators",
                relations.cols()
            )));
        }
        Ok(Self { generators, relations })
    }

    pub fn free(generators: usize) -> Self {
        Self { generators, relations: IntMatrix::zeros(0, generators) }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn canonicalize(&self) -> Canonical {
        let snf = smith_normal_form(&self.relations);
        let diag = snf.diagonal();
        let g = self.generators;

        let kept: Vec<usize> =
            (0..g).filter(|&i| i >= snf.rank || !diag[i].is_one()).collect();
        let factors: Vec<BigInt> =
            kept.iter().filter(|&&i| i < snf.rank).map(|&i| diag[i].clone()).collect();
        let free_rank = g - snf.rank;

        // Relation lattice is Vᵀ-transformed to the diagonal one.
        let to_canonical = snf.v.transpose().select_rows(&kept);
        let from_canonical = snf.v_inv.transpose().select_cols(&kept);
        Canonical {
            group: FgAbelianGroup { free_rank, invariant_factors: factors },
            to_canonical,
            from_canonical,
        }
    }

    /// Whether `coords` lies in the relation lattice.
    pub fn element_is_zero(&self, coords: &[BigInt]) -> Result<bool> {
        if coords.len() != self.generators {
            return Err(Error::Incompatible(format!(
                "{} coordinates for {} generators",
                coords.len(),
                self.generators
            )));
        }
        Ok(solve(&self.relations.transpose(), coords).is_some())
    }
}

/// Canonical form of `ℤ^num_generators / (row span of relations)`.
pub fn group_from_presentation(num_generators: usize, relations: IntMatrix) -> Result<FgAbelianGroup> {
    Ok(Presentation::new(num_generators, relations)?.canonicalize().group)
}

pub fn element_is_zero(group: &Presentation, coords: &[BigInt]) -> Result<bool> {
    group.element_is_zero(coords)
}

pub fn is_isomorphic(g: &FgAbelianGroup, h: &FgAbelianGroup) -> bool {
    g == h
}

/// `G ⊕ H` with coordinate changes against the concatenated generators of `G` then `H`.
pub fn direct_sum_with_maps(g: &FgAbelianGroup, h: &FgAbelianGroup) -> Canonical {
    let orders: Vec<BigInt> = g.generator_orders().into_iter().chain(h.generator_orders()).collect();
    let n = orders.len();
    Presentation { generators: n, relations: IntMatrix::diagonal(n, n, orders) }.canonicalize()
}

pub fn direct_sum(g: &FgAbelianGroup, h: &FgAbelianGroup) -> FgAbelianGroup {
    direct_sum_with_maps(g, h).group
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupHom {
    domain: FgAbelianGroup,
    codomain: FgAbelianGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    /// Checks shape and well-definedness; torsion rows are reduced so that
    /// equal homomorphisms have equal matrices.
    pub fn new(domain: FgAbelianGroup, codomain: FgAbelianGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != codomain.num_generators() || matrix.cols() != domain.num_generators() {
            return Err(Error::Incompatible(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                codomain.num_generators(),
                domain.num_generators()
            )));
        }
        for (j, d) in domain.invariant_factors.iter().enumerate() {
            let image: Vec<BigInt> = matrix.column(j).iter().map(|x| x * d).collect();
            if !codomain.element_is_zero(&image)? {
                return Err(Error::IllDefinedHom(format!(
                    "generator {j} has order {d} but its image does not"
                )));
            }
        }
        let mut matrix = matrix;
        for (i, c) in codomain.invariant_factors.iter().enumerate() {
            for j in 0..matrix.cols() {
                let v = matrix[(i, j)].mod_floor(c);
                matrix[(i, j)] = v;
            }
        }
        Ok(Self { domain, codomain, matrix })
    }

    /// Transports a matrix written against two presentations to canonical coordinates.
    pub fn from_presentations(domain: &Presentation, codomain: &Presentation, matrix: &IntMatrix) -> Result<Self> {
        if matrix.rows() != codomain.generators() || matrix.cols() != domain.generators() {
            return Err(Error::Incompatible(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                codomain.generators(),
                domain.generators()
            )));
        }
        for (r, rel) in domain.relations().row_vecs().enumerate() {
            if !codomain.element_is_zero(&matrix.mul_vec(rel))? {
                return Err(Error::IllDefinedHom(format!("relation {r} is not sent to zero")));
            }
        }
        let dom = domain.canonicalize();
        let cod = codomain.canonicalize();
        let m = &(&cod.to_canonical * matrix) * &dom.from_canonical;
        Self::new(dom.group, cod.group, m)
    }

    pub fn identity(g: &FgAbelianGroup) -> Self {
        Self::scalar(g, BigInt::one())
    }

    pub fn zero(domain: &FgAbelianGroup, codomain: &FgAbelianGroup) -> Self {
        Self {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix: IntMatrix::zeros(codomain.num_generators(), domain.num_generators()),
        }
    }

    /// Multiplication by `c` on `g`.
    pub fn scalar(g: &FgAbelianGroup, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let n = g.num_generators();
        Self::new(g.clone(), g.clone(), IntMatrix::diagonal(n, n, vec![c; n]))
            .expect("scalar maps are always well defined")
    }

    pub fn domain(&self) -> &FgAbelianGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FgAbelianGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn is_endomorphism(&self) -> bool {
        self.domain == self.codomain
    }

    pub fn apply(&self, coords: &[BigInt]) -> Result<Vec<BigInt>> {
        self.domain.check_len(coords)?;
        self.codomain.reduce(&self.matrix.mul_vec(coords))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupHom) -> Result<Self> {
        if other.codomain != self.domain {
            return Err(Error::Incompatible(format!(
                "cannot compose: {} is not {}",
                other.codomain, self.domain
            )));
        }
        Self::new(other.domain.clone(), self.codomain.clone(), &self.matrix * &other.matrix)
    }

    pub fn sub(&self, other: &GroupHom) -> Result<Self> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::Incompatible("cannot subtract maps between different groups".into()));
        }
        Self::new(self.domain.clone(), self.codomain.clone(), self.matrix.try_sub(&other.matrix)?)
    }

    /// `Id − self` for an endomorphism.
    pub fn identity_minus(&self) -> Result<Self> {
        GroupHom::identity(&self.domain).sub(self)
    }

    /// `self` composed with multiplication by `c`.
    pub fn scaled(&self, c: &BigInt) -> Self {
        Self::new(self.domain.clone(), self.codomain.clone(), self.matrix.scale(c))
            .expect("a multiple of a homomorphism is well defined")
    }

    pub fn pow(&self, t: usize) -> Result<Self> {
        if !self.is_endomorphism() {
            return Err(Error::Incompatible("power of a non-endomorphism".into()));
        }
        let mut acc = GroupHom::identity(&self.domain);
        for _ in 0..t {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Some `x` with `self(x) = y`, if `y` is in the image.
    pub fn lift(&self, y: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        self.codomain.check_len(y)?;
        let a = self.domain.num_generators();
        let system = self.matrix.hstack(&torsion_columns(&self.codomain))?;
        Ok(solve(&system, y).map(|x| self.domain.reduce(&x[..a]).expect("length checked")))
    }

    /// `f ⊕ g : G ⊕ G' → H ⊕ H'` in canonical coordinates of both sums.
    pub fn direct_sum(f: &GroupHom, g: &GroupHom) -> Self {
        let dom = direct_sum_with_maps(&f.domain, &g.domain);
        let cod = direct_sum_with_maps(&f.codomain, &g.codomain);
        let block = IntMatrix::block_diagonal(&f.matrix, &g.matrix);
        let m = &(&cod.to_canonical * &block) * &dom.from_canonical;
        Self::new(dom.group, cod.group, m).expect("direct sum of well-defined maps")
    }
}

/// The `codomain gens × torsion count` matrix whose columns are the torsion relations.
fn torsion_columns(g: &FgAbelianGroup) -> IntMatrix {
    IntMatrix::diagonal(g.num_generators(), g.torsion_count(), g.invariant_factors.iter().cloned())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    pub group: FgAbelianGroup,
    pub inclusion: GroupHom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cokernel {
    pub group: FgAbelianGroup,
    pub projection: GroupHom,
    /// Lifts of the quotient's generators to the codomain (as columns).
    pub section: IntMatrix,
}

pub fn kernel(f: &GroupHom) -> Result<Kernel> {
    let dom = &f.domain;
    let a = dom.num_generators();

    // x is in the kernel iff M x + C y = 0 for some y.
    let system = f.matrix.hstack(&torsion_columns(&f.codomain))?;
    let null = kernel_basis(&system);
    let basis = null.block(0, a, 0, null.cols());
    let k = basis.cols();

    // Express the domain's own relations in that basis.
    let mut rel_rows = Vec::with_capacity(dom.torsion_count());
    for (j, d) in dom.invariant_factors.iter().enumerate() {
        let mut r = vec![BigInt::zero(); a];
        r[j] = d.clone();
        let z = solve(&basis, &r).ok_or_else(|| {
            Error::IllDefinedHom(format!("relation of generator {j} is not in the kernel lattice"))
        })?;
        rel_rows.push(z);
    }
    let pres = Presentation::new(k, IntMatrix::from_rows(k, rel_rows)?)?;
    let canon = pres.canonicalize();
    let incl = &basis * &canon.from_canonical;
    let inclusion = GroupHom::new(canon.group.clone(), dom.clone(), incl)?;
    Ok(Kernel { group: canon.group, inclusion })
}

pub fn cokernel(f: &GroupHom) -> Result<Cokernel> {
    let cod = &f.codomain;
    let b = cod.num_generators();
    let torsion_rels = IntMatrix::diagonal(cod.torsion_count(), b, cod.invariant_factors.iter().cloned());
    let rels = torsion_rels.vstack(&f.matrix.transpose())?;
    let canon = Presentation::new(b, rels)?.canonicalize();
    let projection = GroupHom::new(cod.clone(), canon.group.clone(), canon.to_canonical)?;
    Ok(Cokernel { group: canon.group, projection, section: canon.from_canonical })
}

pub fn compose(f: &GroupHom, g: &GroupHom) -> Result<GroupHom> {
    f.compose(g)
}

/// The restriction of an endomorphism to a subgroup it preserves.
pub fn restrict_endo(endo: &GroupHom, inclusion: &GroupHom) -> Result<GroupHom> {
    if !endo.is_endomorphism() || inclusion.codomain != endo.domain {
        return Err(Error::Incompatible("restriction needs an endomorphism of the ambient group".into()));
    }
    let sub = &inclusion.domain;
    let mut cols = Vec::with_capacity(sub.num_generators());
    for j in 0..sub.num_generators() {
        let image = endo.apply(&inclusion.matrix.column(j))?;
        let pre = inclusion
            .lift(&image)?
            .ok_or_else(|| Error::IllDefinedHom("endomorphism does not preserve the subgroup".into()))?;
        cols.push(pre);
    }
    GroupHom::new(sub.clone(), sub.clone(), IntMatrix::from_columns(sub.num_generators(), &cols))
}

/// The endomorphism induced on `coker(f)` by an endomorphism of `f`'s codomain
/// that preserves `im(f)`.
pub fn induced_on_cokernel(endo: &GroupHom, f: &GroupHom, coker: &Cokernel) -> Result<GroupHom> {
    if !endo.is_endomorphism() || endo.domain != f.codomain {
        return Err(Error::Incompatible("induced map needs an endomorphism of the codomain".into()));
    }
    for j in 0..f.matrix.cols() {
        let image = endo.apply(&f.matrix.column(j))?;
        if !coker.projection.apply(&image)?.iter().all(Zero::is_zero) {
            return Err(Error::IllDefinedHom("endomorphism does not preserve the image".into()));
        }
    }
    let m = &(coker.projection.matrix() * &endo.matrix) * &coker.section;
    GroupHom::new(coker.group.clone(), coker.group.clone(), m)
}
