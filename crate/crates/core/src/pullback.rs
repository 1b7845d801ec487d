//! Fiber products of racks and pullback crossed modules.
//!
//! Given a crossed module `∂: P → R` and a rack hom `φ: S → R`, the
//! pullback crossed module lives on `P ×_R S = {(p, s) : ∂p = φs}` with
//! boundary `(p, s) ↦ s` and action `(p, s)·s' = (p·φ(s'), s ◁ s')`.
//! Every claim about it (rack axioms, X1/X2, the commuting square and the
//! universal property) is checked by exhaustion rather than assumed.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom};
use crate::group_xmod::{check_group_xmod_square, conj_xmod, GroupXMod, GroupXModMorphism};
use crate::rack::{check_rack_map, conj_hom, FiniteRack, RackHom};
use crate::xmod::{
    check_xmod_square, find_xmod_isomorphism, validate_xmod_morphism, RackAction, RackXMod,
    RackXModMorphism,
};

/// Default cap on `|carrier|^|X|` for the brute-force uniqueness search.
pub const DEFAULT_SEARCH_LIMIT: u128 = 20_000_000;

/// Pairs of a subset of `P × S`, with index lookup.
#[derive(Clone, PartialEq, Eq)]
struct PairIndex {
    width: usize,
    slots: Vec<Option<usize>>,
}

impl PairIndex {
    fn new(pairs: &[(usize, usize)], left: usize, right: usize) -> Self {
        let mut slots = vec![None; left * right];
        for (i, &(p, s)) in pairs.iter().enumerate() {
            slots[p * right + s] = Some(i);
        }
        Self {
            width: right,
            slots,
        }
    }

    fn get(&self, p: usize, s: usize) -> Option<usize> {
        self.slots[p * self.width + s]
    }
}

/// The subrack `P ×_R S` of `P × S`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiberProduct {
    carrier: FiniteRack,
    pairs: Vec<(usize, usize)>,
    proj1: RackHom,
    proj2: RackHom,
    index: PairIndex,
}

impl fmt::Debug for FiberProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiberProduct")
            .field("pairs", &self.pairs)
            .field("carrier", &self.carrier)
            .finish()
    }
}

/// Fiber product of `α: P → R` and `β: S → R`; pairs are listed in
/// lexicographic order and the carrier's indices follow that list.
pub fn fiber_product(alpha: &RackHom, beta: &RackHom) -> Result<FiberProduct> {
    if alpha.cod() != beta.cod() {
        return Err(Error::Mismatch("fiber product needs a common codomain".into()));
    }
    let (p_rack, s_rack) = (alpha.dom(), beta.dom());
    let pairs: Vec<(usize, usize)> = (0..p_rack.size())
        .flat_map(|p| (0..s_rack.size()).map(move |s| (p, s)))
        .filter(|&(p, s)| alpha.apply(p) == beta.apply(s))
        .collect();
    let index = PairIndex::new(&pairs, p_rack.size(), s_rack.size());
    let n = pairs.len();
    let mut table = Vec::with_capacity(n * n);
    for &(p, s) in &pairs {
        for &(p2, s2) in &pairs {
            let (q, t) = (p_rack.op(p, p2), s_rack.op(s, s2));
            table.push(
                index
                    .get(q, t)
                    .ok_or(Error::ImageOutsideCarrier { p: q, s: t })?,
            );
        }
    }
    let bp = index
        .get(p_rack.basepoint(), s_rack.basepoint())
        .ok_or(Error::ImageOutsideCarrier {
            p: p_rack.basepoint(),
            s: s_rack.basepoint(),
        })?;
    let mut carrier = FiniteRack::new(n, table, bp)?;
    if p_rack.labels().is_some() || s_rack.labels().is_some() {
        carrier.set_labels(Some(
            pairs
                .iter()
                .map(|&(p, s)| format!("({},{})", p_rack.label(p), s_rack.label(s)))
                .collect(),
        ));
    }
    let proj1 = RackHom::new(
        carrier.clone(),
        p_rack.clone(),
        pairs.iter().map(|&(p, _)| p).collect(),
    )?;
    let proj2 = RackHom::new(
        carrier.clone(),
        s_rack.clone(),
        pairs.iter().map(|&(_, s)| s).collect(),
    )?;
    let left = proj1.then(alpha)?;
    let right = proj2.then(beta)?;
    if let Some(i) = (0..n).find(|&i| left.apply(i) != right.apply(i)) {
        return Err(Error::BoundarySquareFail { element: i });
    }
    Ok(FiberProduct {
        carrier,
        pairs,
        proj1,
        proj2,
        index,
    })
}

impl FiberProduct {
    pub fn carrier(&self) -> &FiniteRack {
        &self.carrier
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn proj1(&self) -> &RackHom {
        &self.proj1
    }

    pub fn proj2(&self) -> &RackHom {
        &self.proj2
    }

    /// Carrier index of `(p, s)`, if the pair lies in the fiber product.
    pub fn index_of(&self, p: usize, s: usize) -> Option<usize> {
        self.index.get(p, s)
    }
}

/// Crossed module `P ×_R S → R`, `(p, s) ↦ α(p)`, with `R` acting
/// componentwise: `(p, s)·r = (p·r, s·r)`.
pub fn fiber_product_xmod(alpha: &RackXMod, beta: &RackXMod) -> Result<RackXMod> {
    if alpha.codomain() != beta.codomain() {
        return Err(Error::Mismatch(
            "crossed modules must share their codomain".into(),
        ));
    }
    let fp = fiber_product(alpha.boundary(), beta.boundary())?;
    let r_rack = alpha.codomain();
    let mut table = Vec::with_capacity(fp.pairs.len() * r_rack.size());
    for &(p, s) in &fp.pairs {
        for r in 0..r_rack.size() {
            let (q, t) = (alpha.act(p, r), beta.act(s, r));
            table.push(fp.index_of(q, t).ok_or(Error::ImageOutsideCarrier { p: q, s: t })?);
        }
    }
    let action = RackAction::new(fp.carrier.clone(), r_rack.clone(), table)?;
    let boundary = fp.proj1.then(alpha.boundary())?;
    RackXMod::new(boundary, action)
}

/// The pullback crossed module `φ*(P) → S` of `∂: P → R` along `φ: S → R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackXMod {
    xmod: RackXMod,
    phi_prime: RackHom,
    fiber: FiberProduct,
    source: RackXMod,
    phi: RackHom,
}

pub fn pullback_xmod(source: &RackXMod, phi: &RackHom) -> Result<PullbackXMod> {
    if phi.cod() != source.codomain() {
        return Err(Error::Mismatch(
            "φ must land in the crossed module's codomain".into(),
        ));
    }
    let fiber = fiber_product(source.boundary(), phi)?;
    let s_rack = phi.dom();
    let mut table = Vec::with_capacity(fiber.pairs.len() * s_rack.size());
    for &(p, s) in &fiber.pairs {
        for s2 in 0..s_rack.size() {
            let (q, t) = (source.act(p, phi.apply(s2)), s_rack.op(s, s2));
            table.push(fiber.index_of(q, t).ok_or(Error::ImageOutsideCarrier { p: q, s: t })?);
        }
    }
    let action = RackAction::new(fiber.carrier.clone(), s_rack.clone(), table)?;
    let xmod = RackXMod::new(fiber.proj2.clone(), action)?;
    let phi_prime = fiber.proj1.clone();

    let down_then_across = xmod.boundary().then(phi)?;
    let across_then_down = phi_prime.then(source.boundary())?;
    if let Some(i) =
        (0..fiber.pairs.len()).find(|&i| down_then_across.apply(i) != across_then_down.apply(i))
    {
        return Err(Error::BoundarySquareFail { element: i });
    }
    Ok(PullbackXMod {
        xmod,
        phi_prime,
        fiber,
        source: source.clone(),
        phi: phi.clone(),
    })
}

impl PullbackXMod {
    /// `∂*: φ*(P) → S`
    pub fn xmod(&self) -> &RackXMod {
        &self.xmod
    }

    /// `φ′: φ*(P) → P`, `(p, s) ↦ p`.
    pub fn phi_prime(&self) -> &RackHom {
        &self.phi_prime
    }

    pub fn fiber(&self) -> &FiberProduct {
        &self.fiber
    }

    pub fn carrier(&self) -> &FiniteRack {
        self.xmod.domain()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.fiber.pairs
    }

    pub fn source(&self) -> &RackXMod {
        &self.source
    }

    pub fn phi(&self) -> &RackHom {
        &self.phi
    }

    /// The morphism `(φ′, φ): φ*(P) → P`.
    pub fn projection(&self) -> RackXModMorphism {
        validate_xmod_morphism(&self.phi_prime, &self.phi, &self.xmod, &self.source)
            .expect("pullback projection is a morphism")
    }
}

/// Builds the test morphism `(f, φ): (X, S, μ) → (P, R, ∂)` from a map
/// `f: X → P`, reporting [`Error::NotAMorphism`] if it is not one.
pub fn test_morphism(pb: &PullbackXMod, x: &RackXMod, f: Vec<usize>) -> Result<RackXModMorphism> {
    RackXModMorphism::new(x, &pb.source, f, pb.phi.map().to_vec())
        .map_err(|e| Error::NotAMorphism(Box::new(e)))
}

fn check_test_morphism(pb: &PullbackXMod, test: &RackXModMorphism) -> Result<()> {
    if test.target() != &pb.source {
        return Err(Error::NotAMorphism(Box::new(Error::Mismatch(
            "test morphism must land in the pulled-back crossed module".into(),
        ))));
    }
    if test.f0() != &pb.phi {
        return Err(Error::NotAMorphism(Box::new(Error::Mismatch(
            "test morphism must have second component φ".into(),
        ))));
    }
    validate_xmod_morphism(test.f1(), test.f0(), test.source(), test.target())
        .map_err(|e| Error::NotAMorphism(Box::new(e)))?;
    Ok(())
}

/// The factorization `(f*, id_S)` of a morphism `(f, φ)` through the
/// pullback, with `f*(x) = (f(x), μ(x))`.
pub fn mediating_morphism(pb: &PullbackXMod, test: &RackXModMorphism) -> Result<RackXModMorphism> {
    check_test_morphism(pb, test)?;
    let x = test.source();
    let f = test.f1();
    let fstar = (0..x.domain().size())
        .map(|i| {
            let (p, s) = (f.apply(i), x.boundary().apply(i));
            pb.fiber.index_of(p, s).ok_or(Error::ImageOutsideCarrier { p, s })
        })
        .collect::<Result<Vec<_>>>()?;
    let id_s: Vec<usize> = (0..pb.xmod.codomain().size()).collect();
    let mediating = RackXModMorphism::new(x, &pb.xmod, fstar, id_s)?;
    let back = mediating.then(&pb.projection())?;
    if back.f1() != f || back.f0() != test.f0() {
        return Err(Error::Mismatch("factorization does not commute".into()));
    }
    Ok(mediating)
}

/// Certificate that a test morphism factors through the pullback exactly
/// once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalityCertificate {
    pub mediating: RackXModMorphism,
    /// Number of maps `h: X → φ*(P)` for which `(h, id_S)` is a morphism
    /// with `φ′∘h = f` and `∂*∘h = μ`.
    pub uniqueness_checked: usize,
    /// `|φ*(P)|^|X|`: every set map was examined.
    pub search_space: u128,
}

pub fn verify_universal_property(
    pb: &PullbackXMod,
    test: &RackXModMorphism,
) -> Result<UniversalityCertificate> {
    verify_universal_property_with_limit(pb, test, DEFAULT_SEARCH_LIMIT)
}

/// Constructs `f*`, then enumerates every set map `X → φ*(P)` and counts
/// those satisfying the factorization and the morphism laws. Succeeds only
/// when exactly one map qualifies and it equals `f*`.
pub fn verify_universal_property_with_limit(
    pb: &PullbackXMod,
    test: &RackXModMorphism,
    limit: u128,
) -> Result<UniversalityCertificate> {
    let mediating = mediating_morphism(pb, test)?;
    let x = test.source();
    let (nx, nc) = (x.domain().size(), pb.carrier().size());
    let search_space = (nc as u128).pow(nx as u32);
    if search_space > limit {
        return Err(Error::SearchSpaceTooLarge {
            size: search_space,
            limit,
        });
    }
    let id_s: Vec<usize> = (0..pb.xmod.codomain().size()).collect();
    let qualifies = |h: &[usize]| {
        (0..nx).all(|i| {
            pb.phi_prime.apply(h[i]) == test.f1().apply(i)
                && pb.xmod.boundary().apply(h[i]) == x.boundary().apply(i)
        }) && check_rack_map(x.domain(), pb.carrier(), h).is_ok()
            && check_xmod_square(x, &pb.xmod, h, &id_s).is_ok()
    };
    let witnesses = brute_force(nx, nc, qualifies);
    if witnesses.len() != 1 || witnesses[0] != mediating.f1().map() {
        return Err(Error::UniquenessFail {
            count: witnesses.len(),
            witnesses,
        });
    }
    Ok(UniversalityCertificate {
        mediating,
        uniqueness_checked: witnesses.len(),
        search_space,
    })
}

/// Every map `0..len → 0..range` in lexicographic order that passes `keep`.
fn brute_force(len: usize, range: usize, keep: impl Fn(&[usize]) -> bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut h = vec![0; len];
    loop {
        if keep(&h) {
            out.push(h.clone());
        }
        // odometer, last position fastest
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            h[i] += 1;
            if h[i] < range {
                break;
            }
            h[i] = 0;
        }
    }
}

/// The pullback functor on a morphism `(g, id_R)` of crossed modules over
/// `R`: `(p, s) ↦ (g(p), s)` between the two pullbacks along `φ`.
pub fn pullback_on_morphisms(m: &RackXModMorphism, phi: &RackHom) -> Result<RackXModMorphism> {
    let r_rack = m.source().codomain();
    if m.target().codomain() != r_rack || m.f0() != &RackHom::identity(r_rack) {
        return Err(Error::Mismatch(
            "morphism must be the identity on the common codomain".into(),
        ));
    }
    let src = pullback_xmod(m.source(), phi)?;
    let dst = pullback_xmod(m.target(), phi)?;
    let map = src
        .pairs()
        .iter()
        .map(|&(p, s)| {
            let q = m.f1().apply(p);
            dst.fiber.index_of(q, s).ok_or(Error::ImageOutsideCarrier { p: q, s })
        })
        .collect::<Result<Vec<_>>>()?;
    let id_s = (0..phi.dom().size()).collect();
    RackXModMorphism::new(&src.xmod, &dst.xmod, map, id_s)
}

/// Group-side pullback crossed module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPullback {
    xmod: GroupXMod,
    pairs: Vec<(usize, usize)>,
    phi_prime: GroupHom,
    source: GroupXMod,
    phi: GroupHom,
}

impl GroupPullback {
    pub fn xmod(&self) -> &GroupXMod {
        &self.xmod
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn phi_prime(&self) -> &GroupHom {
        &self.phi_prime
    }

    pub fn source(&self) -> &GroupXMod {
        &self.source
    }

    pub fn phi(&self) -> &GroupHom {
        &self.phi
    }

    pub fn index_of(&self, m: usize, s: usize) -> Option<usize> {
        self.pairs.iter().position(|&q| q == (m, s))
    }
}

/// Pullback of `∂: M → R` along `φ: S → R` on `{(m, s) : ∂m = φs} ≤ M × S`,
/// with boundary `(m, s) ↦ s` and action `(m, s)·s' = (m·φ(s'), s'⁻¹ss')`.
pub fn group_pullback_xmod(source: &GroupXMod, phi: &GroupHom) -> Result<GroupPullback> {
    if phi.cod() != source.codomain() {
        return Err(Error::Mismatch(
            "φ must land in the crossed module's codomain".into(),
        ));
    }
    let (m_grp, s_grp) = (source.domain(), phi.dom());
    let pairs: Vec<(usize, usize)> = (0..m_grp.size())
        .flat_map(|m| (0..s_grp.size()).map(move |s| (m, s)))
        .filter(|&(m, s)| source.boundary().apply(m) == phi.apply(s))
        .collect();
    let index = PairIndex::new(&pairs, m_grp.size(), s_grp.size());
    let lookup = |m: usize, s: usize| index.get(m, s).ok_or(Error::ImageOutsideCarrier { p: m, s });
    let n = pairs.len();
    let mut mul = Vec::with_capacity(n * n);
    for &(m, s) in &pairs {
        for &(m2, s2) in &pairs {
            mul.push(lookup(m_grp.mul(m, m2), s_grp.mul(s, s2))?);
        }
    }
    let mut carrier = FiniteGroup::new(n, mul, lookup(m_grp.identity(), s_grp.identity())?)?;
    if m_grp.labels().is_some() || s_grp.labels().is_some() {
        carrier = carrier.with_labels(
            pairs
                .iter()
                .map(|&(m, s)| format!("({},{})", m_grp.label(m), s_grp.label(s)))
                .collect(),
        )?;
    }
    let mut action = Vec::with_capacity(n * s_grp.size());
    for &(m, s) in &pairs {
        for s2 in 0..s_grp.size() {
            action.push(lookup(source.act(m, phi.apply(s2)), s_grp.conjugate(s, s2))?);
        }
    }
    let boundary = GroupHom::new(carrier.clone(), s_grp.clone(), pairs.iter().map(|p| p.1).collect())?;
    let xmod = GroupXMod::new(boundary, action)?;
    let phi_prime = GroupHom::new(carrier, m_grp.clone(), pairs.iter().map(|p| p.0).collect())?;
    for i in 0..n {
        if phi.apply(xmod.boundary().apply(i)) != source.boundary().apply(phi_prime.apply(i)) {
            return Err(Error::BoundarySquareFail { element: i });
        }
    }
    Ok(GroupPullback {
        xmod,
        pairs,
        phi_prime,
        source: source.clone(),
        phi: phi.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupUniversalityCertificate {
    pub mediating: GroupXModMorphism,
    pub uniqueness_checked: usize,
    pub search_space: u128,
}

/// Group analogue of [`verify_universal_property`]: `test` is a morphism
/// `(f, φ): (X, S, μ) → (M, R, ∂)`.
pub fn verify_group_universal_property(
    pb: &GroupPullback,
    test: &GroupXModMorphism,
) -> Result<GroupUniversalityCertificate> {
    if test.target() != &pb.source || test.f0() != &pb.phi {
        return Err(Error::NotAMorphism(Box::new(Error::Mismatch(
            "test morphism must be (f, φ) into the pulled-back crossed module".into(),
        ))));
    }
    let x = test.source();
    let f = test.f1();
    let fstar = (0..x.domain().size())
        .map(|i| {
            let (m, s) = (f.apply(i), x.boundary().apply(i));
            pb.index_of(m, s).ok_or(Error::ImageOutsideCarrier { p: m, s })
        })
        .collect::<Result<Vec<_>>>()?;
    let id_s: Vec<usize> = (0..pb.xmod.codomain().size()).collect();
    let mediating = GroupXModMorphism::new(x, &pb.xmod, fstar, id_s.clone())?;

    let (nx, nc) = (x.domain().size(), pb.xmod.domain().size());
    let search_space = (nc as u128).pow(nx as u32);
    if search_space > DEFAULT_SEARCH_LIMIT {
        return Err(Error::SearchSpaceTooLarge {
            size: search_space,
            limit: DEFAULT_SEARCH_LIMIT,
        });
    }
    let qualifies = |h: &[usize]| {
        (0..nx).all(|i| {
            pb.phi_prime.apply(h[i]) == f.apply(i)
                && pb.xmod.boundary().apply(h[i]) == x.boundary().apply(i)
        }) && GroupHom::new(x.domain().clone(), pb.xmod.domain().clone(), h.to_vec()).is_ok()
            && check_group_xmod_square(x, &pb.xmod, h, &id_s).is_ok()
    };
    let witnesses = brute_force(nx, nc, qualifies);
    if witnesses.len() != 1 || witnesses[0] != mediating.f1().map() {
        return Err(Error::UniquenessFail {
            count: witnesses.len(),
            witnesses,
        });
    }
    Ok(GroupUniversalityCertificate {
        mediating,
        uniqueness_checked: 1,
        search_space,
    })
}

/// Both routes around the square `Conj ∘ pullback` vs `pullback ∘ Conj`,
/// and the crossed module isomorphism found between them.
#[derive(Clone, Debug)]
pub struct ConjPreservation {
    /// `Conj(pullback of ∂ along φ)`
    pub conj_of_pullback: RackXMod,
    /// `pullback of Conj(∂) along Conj(φ)`
    pub pullback_of_conj: RackXMod,
    pub isomorphism: RackXModMorphism,
}

pub fn check_conj_preserves_pullback(
    source: &GroupXMod,
    phi: &GroupHom,
) -> Result<ConjPreservation> {
    let group_side = group_pullback_xmod(source, phi)?;
    let conj_of_pullback = conj_xmod(group_side.xmod());
    let pullback_of_conj = pullback_xmod(&conj_xmod(source), &conj_hom(phi))?
        .xmod()
        .clone();
    let isomorphism = find_xmod_isomorphism(&conj_of_pullback, &pullback_of_conj)
        .ok_or(Error::NoIsomorphismFound)?;
    if !isomorphism.is_isomorphism() {
        return Err(Error::NoIsomorphismFound);
    }
    Ok(ConjPreservation {
        conj_of_pullback,
        pullback_of_conj,
        isomorphism,
    })
}
