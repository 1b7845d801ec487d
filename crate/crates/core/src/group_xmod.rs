//! Crossed modules of groups and the conjugation functor into crossed
//! modules of racks.

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom};
use crate::rack::{conj_hom, conj_rack};
use crate::xmod::{RackAction, RackXMod, RackXModMorphism};

/// `μ: M → N` with a right action of `N` on `M` by automorphisms, stored
/// as a full `|M| × |N|` table (`action[m * |N| + n] = m·n`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupXMod {
    boundary: GroupHom,
    action: Vec<usize>,
}

/// Checks, in order: identity acts trivially, right-action law, action by
/// homomorphisms, equivariance `μ(m·n) = n⁻¹μ(m)n`, Peiffer identity
/// `m·μ(m') = m'⁻¹mm'`.
pub fn validate_group_xmod(boundary: GroupHom, action: Vec<usize>) -> Result<GroupXMod> {
    let (m_grp, n_grp) = (boundary.dom(), boundary.cod());
    let (nm, nn) = (m_grp.size(), n_grp.size());
    if action.len() != nm * nn {
        return Err(Error::TableShape {
            expected: nm * nn,
            found: action.len(),
        });
    }
    for (i, &v) in action.iter().enumerate() {
        if v >= nm {
            return Err(Error::EntryOutOfRange {
                row: i / nn,
                col: i % nn,
                value: v,
                size: nm,
            });
        }
    }
    let act = |m: usize, n: usize| action[m * nn + n];
    for m in 0..nm {
        if act(m, n_grp.identity()) != m {
            return Err(Error::GroupActionIdentityFail { m });
        }
    }
    for m in 0..nm {
        for n1 in 0..nn {
            for n2 in 0..nn {
                if act(act(m, n1), n2) != act(m, n_grp.mul(n1, n2)) {
                    return Err(Error::GroupActionCompositionFail { m, n1, n2 });
                }
            }
        }
    }
    for m1 in 0..nm {
        for m2 in 0..nm {
            for n in 0..nn {
                if act(m_grp.mul(m1, m2), n) != m_grp.mul(act(m1, n), act(m2, n)) {
                    return Err(Error::GroupActionNotAutomorphism { m1, m2, n });
                }
            }
        }
    }
    for m in 0..nm {
        for n in 0..nn {
            if boundary.apply(act(m, n)) != n_grp.conjugate(boundary.apply(m), n) {
                return Err(Error::EquivarianceFail { m, n });
            }
        }
    }
    for m in 0..nm {
        for m2 in 0..nm {
            if act(m, boundary.apply(m2)) != m_grp.conjugate(m, m2) {
                return Err(Error::PeifferFail { m, m2 });
            }
        }
    }
    Ok(GroupXMod { boundary, action })
}

impl GroupXMod {
    pub fn new(boundary: GroupHom, action: Vec<usize>) -> Result<Self> {
        validate_group_xmod(boundary, action)
    }

    /// `id: G → G` with conjugation action.
    pub fn identity(g: &FiniteGroup) -> Self {
        let n = g.size();
        let action = (0..n)
            .flat_map(|m| (0..n).map(move |h| g.conjugate(m, h)))
            .collect();
        Self::new(GroupHom::identity(g), action).expect("identity crossed module")
    }

    /// Inclusion of a normal subgroup, acted on by conjugation.
    pub fn normal_inclusion(g: &FiniteGroup, elements: &[usize]) -> Result<Self> {
        let (sub, elems) = g.normal_subgroup(elements)?;
        let mut pos = vec![usize::MAX; g.size()];
        for (i, &e) in elems.iter().enumerate() {
            pos[e] = i;
        }
        let action = elems
            .iter()
            .flat_map(|&m| (0..g.size()).map(move |h| (m, h)))
            .map(|(m, h)| pos[g.conjugate(m, h)])
            .collect();
        Self::new(GroupHom::inclusion(&sub, &elems, g)?, action)
    }

    /// Trivial boundary and trivial action; a crossed module exactly when
    /// `m` is abelian.
    pub fn trivial(m: &FiniteGroup, n: &FiniteGroup) -> Result<Self> {
        let action = (0..m.size())
            .flat_map(|x| std::iter::repeat_n(x, n.size()))
            .collect();
        Self::new(GroupHom::trivial(m, n), action)
    }

    pub fn boundary(&self) -> &GroupHom {
        &self.boundary
    }

    pub fn domain(&self) -> &FiniteGroup {
        self.boundary.dom()
    }

    pub fn codomain(&self) -> &FiniteGroup {
        self.boundary.cod()
    }

    #[inline]
    pub fn act(&self, m: usize, n: usize) -> usize {
        self.action[m * self.codomain().size() + n]
    }

    pub fn action_table(&self) -> &[usize] {
        &self.action
    }

    pub fn action_rows(&self) -> Vec<Vec<usize>> {
        self.action
            .chunks(self.codomain().size())
            .map(<[usize]>::to_vec)
            .collect()
    }
}

/// Applies `Conj` to both groups and the boundary, keeping the action
/// table. The result is validated as a crossed module of racks.
pub fn conj_xmod(g: &GroupXMod) -> RackXMod {
    let boundary = conj_hom(g.boundary());
    let action = RackAction::new(
        conj_rack(g.domain()),
        conj_rack(g.codomain()),
        g.action.clone(),
    )
    .expect("group actions by automorphisms are rack actions");
    RackXMod::new(boundary, action).expect("Conj preserves crossed modules")
}

/// A morphism `(f1, f0)` of crossed modules of groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupXModMorphism {
    source: GroupXMod,
    target: GroupXMod,
    f1: GroupHom,
    f0: GroupHom,
}

impl GroupXModMorphism {
    pub fn new(src: &GroupXMod, dst: &GroupXMod, f1: Vec<usize>, f0: Vec<usize>) -> Result<Self> {
        let f1 = GroupHom::new(src.domain().clone(), dst.domain().clone(), f1)?;
        let f0 = GroupHom::new(src.codomain().clone(), dst.codomain().clone(), f0)?;
        check_group_xmod_square(src, dst, f1.map(), f0.map())?;
        Ok(Self {
            source: src.clone(),
            target: dst.clone(),
            f1,
            f0,
        })
    }

    pub fn identity(x: &GroupXMod) -> Self {
        Self {
            source: x.clone(),
            target: x.clone(),
            f1: GroupHom::identity(x.domain()),
            f0: GroupHom::identity(x.codomain()),
        }
    }

    pub fn source(&self) -> &GroupXMod {
        &self.source
    }

    pub fn target(&self) -> &GroupXMod {
        &self.target
    }

    pub fn f1(&self) -> &GroupHom {
        &self.f1
    }

    pub fn f0(&self) -> &GroupHom {
        &self.f0
    }

    pub fn then(&self, other: &GroupXModMorphism) -> Result<GroupXModMorphism> {
        if self.target != other.source {
            return Err(Error::Mismatch("composition: target ≠ source".into()));
        }
        Self::new(
            &self.source,
            &other.target,
            self.f1.then(&other.f1)?.map().to_vec(),
            self.f0.then(&other.f0)?.map().to_vec(),
        )
    }
}

pub(crate) fn check_group_xmod_square(
    src: &GroupXMod,
    dst: &GroupXMod,
    f1: &[usize],
    f0: &[usize],
) -> Result<()> {
    for m in 0..src.domain().size() {
        if dst.boundary().apply(f1[m]) != f0[src.boundary().apply(m)] {
            return Err(Error::BoundarySquareFail { element: m });
        }
    }
    for m in 0..src.domain().size() {
        for n in 0..src.codomain().size() {
            if f1[src.act(m, n)] != dst.act(f1[m], f0[n]) {
                return Err(Error::ActionSquareFail { r: m, s: n });
            }
        }
    }
    Ok(())
}

/// `Conj` on morphisms.
pub fn conj_xmod_morphism(m: &GroupXModMorphism) -> Result<RackXModMorphism> {
    RackXModMorphism::new(
        &conj_xmod(m.source()),
        &conj_xmod(m.target()),
        m.f1().map().to_vec(),
        m.f0().map().to_vec(),
    )
}
