//! Rack actions, hemi-semi-direct products and crossed modules of racks.
//!
//! An action of `R` on `S` is stored as an `|S| × |R|` table with
//! `table[s * |R| + r] = s·r`. Besides the two action axioms we require
//! the pointed compatibility laws `1·r = 1` and `s·1 = s`; without them the
//! hemi-semi-direct product has no basepoint.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::iso;
use crate::rack::{is_normal_subrack, FiniteRack, Normality, RackHom};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RackAction {
    actee: FiniteRack,
    actor: FiniteRack,
    table: Vec<usize>,
}

/// Validates a row-major action table (`rows[s][r] = s·r`).
pub fn validate_action(
    rows: &[Vec<usize>],
    actee: &FiniteRack,
    actor: &FiniteRack,
) -> Result<RackAction> {
    if rows.len() != actee.size() {
        return Err(Error::TableShape {
            expected: actee.size(),
            found: rows.len(),
        });
    }
    if let Some(bad) = rows.iter().find(|r| r.len() != actor.size()) {
        return Err(Error::TableShape {
            expected: actor.size(),
            found: bad.len(),
        });
    }
    RackAction::new(actee.clone(), actor.clone(), rows.concat())
}

impl RackAction {
    pub fn new(actee: FiniteRack, actor: FiniteRack, table: Vec<usize>) -> Result<Self> {
        let a = Self::new_unchecked(actee, actor, table)?;
        a.check_axioms()?;
        Ok(a)
    }

    /// Checks only the table's shape and range. Used to exercise downstream
    /// validators with tables that violate the action axioms.
    #[doc(hidden)]
    pub fn new_unchecked(actee: FiniteRack, actor: FiniteRack, table: Vec<usize>) -> Result<Self> {
        let (ns, nr) = (actee.size(), actor.size());
        if table.len() != ns * nr {
            return Err(Error::TableShape {
                expected: ns * nr,
                found: table.len(),
            });
        }
        for (i, &v) in table.iter().enumerate() {
            if v >= ns {
                return Err(Error::EntryOutOfRange {
                    row: i / nr,
                    col: i % nr,
                    value: v,
                    size: ns,
                });
            }
        }
        Ok(Self {
            actee,
            actor,
            table,
        })
    }

    fn check_axioms(&self) -> Result<()> {
        let (s_rack, r_rack) = (&self.actee, &self.actor);
        let (ns, nr) = (s_rack.size(), r_rack.size());
        for s in 0..ns {
            for r in 0..nr {
                for r2 in 0..nr {
                    let lhs = self.act(self.act(s, r), r2);
                    let rhs = self.act(self.act(s, r2), r_rack.op(r, r2));
                    if lhs != rhs {
                        return Err(Error::ActionAxiom1Fail { s, r, r2 });
                    }
                }
            }
        }
        for s in 0..ns {
            for s2 in 0..ns {
                for r in 0..nr {
                    let lhs = self.act(s_rack.op(s, s2), r);
                    let rhs = s_rack.op(self.act(s, r), self.act(s2, r));
                    if lhs != rhs {
                        return Err(Error::ActionAxiom2Fail { s, s2, r });
                    }
                }
            }
        }
        let one = s_rack.basepoint();
        for r in 0..nr {
            let v = self.act(one, r);
            if v != one {
                return Err(Error::PointednessFail {
                    s: one,
                    r,
                    result: v,
                });
            }
        }
        let unit = r_rack.basepoint();
        for s in 0..ns {
            let v = self.act(s, unit);
            if v != s {
                return Err(Error::PointednessFail {
                    s,
                    r: unit,
                    result: v,
                });
            }
        }
        Ok(())
    }

    /// `s·r = s` for all `s`, `r`.
    pub fn trivial(actee: &FiniteRack, actor: &FiniteRack) -> Self {
        let table = (0..actee.size())
            .flat_map(|s| std::iter::repeat_n(s, actor.size()))
            .collect();
        Self::new(actee.clone(), actor.clone(), table).expect("trivial action")
    }

    /// A rack acting on itself by its own operation.
    pub fn self_conjugation(r: &FiniteRack) -> Self {
        Self::new(r.clone(), r.clone(), r.table().to_vec()).expect("self-distributivity")
    }

    pub fn actee(&self) -> &FiniteRack {
        &self.actee
    }

    pub fn actor(&self) -> &FiniteRack {
        &self.actor
    }

    #[inline]
    pub fn act(&self, s: usize, r: usize) -> usize {
        self.table[s * self.actor.size() + r]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.actor.size())
            .map(<[usize]>::to_vec)
            .collect()
    }

    /// Whether every `s ↦ s·r` is a permutation of the actee.
    pub fn has_bijective_translations(&self) -> bool {
        let ns = self.actee.size();
        (0..self.actor.size()).all(|r| {
            let mut seen = vec![false; ns];
            (0..ns).all(|s| !std::mem::replace(&mut seen[self.act(s, r)], true))
        })
    }
}

/// The rack `S ⋊ R` on pairs `(s, r)` (index `s * |R| + r`) with
/// `(s, r) ◁ (s', r') = (s·r', r ◁ r')`, pointed at `(1, 1)`.
///
/// The second component `s'` plays no role. The result is re-validated;
/// an action whose translations `s ↦ s·r` are not bijective yields
/// [`Error::ResultNotRack`].
pub fn hemi_semidirect(a: &RackAction) -> Result<FiniteRack> {
    let (s_rack, r_rack) = (a.actee(), a.actor());
    let nr = r_rack.size();
    let n = s_rack.size() * nr;
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        let (s, r) = (x / nr, x % nr);
        for y in 0..n {
            let r2 = y % nr;
            table.push(a.act(s, r2) * nr + r_rack.op(r, r2));
        }
    }
    let bp = s_rack.basepoint() * nr + r_rack.basepoint();
    let rack = FiniteRack::new(n, table, bp).map_err(|e| Error::ResultNotRack(Box::new(e)))?;
    if s_rack.labels().is_some() || r_rack.labels().is_some() {
        let labels = (0..n)
            .map(|x| format!("({},{})", s_rack.label(x / nr), r_rack.label(x % nr)))
            .collect();
        return rack.with_labels(labels);
    }
    Ok(rack)
}

/// A crossed module of racks: `∂: R → S` with an action of `S` on `R`
/// satisfying X1 `∂(r·s) = ∂(r) ◁ s` and X2 `r·∂(r') = r ◁ r'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RackXMod {
    boundary: RackHom,
    action: RackAction,
}

pub fn validate_rack_xmod(boundary: RackHom, action: RackAction) -> Result<RackXMod> {
    if action.actee() != boundary.dom() {
        return Err(Error::Mismatch(
            "action must act on the boundary's domain".into(),
        ));
    }
    if action.actor() != boundary.cod() {
        return Err(Error::Mismatch(
            "acting rack must be the boundary's codomain".into(),
        ));
    }
    let (r_rack, s_rack) = (boundary.dom(), boundary.cod());
    // X2 is reported before X1
    for r in 0..r_rack.size() {
        for r2 in 0..r_rack.size() {
            if action.act(r, boundary.apply(r2)) != r_rack.op(r, r2) {
                return Err(Error::X2Fail { r, r2 });
            }
        }
    }
    for r in 0..r_rack.size() {
        for s in 0..s_rack.size() {
            if boundary.apply(action.act(r, s)) != s_rack.op(boundary.apply(r), s) {
                return Err(Error::X1Fail { r, s });
            }
        }
    }
    Ok(RackXMod { boundary, action })
}

impl RackXMod {
    pub fn new(boundary: RackHom, action: RackAction) -> Result<Self> {
        validate_rack_xmod(boundary, action)
    }

    /// `id: R → R` with `R` acting on itself by conjugation.
    pub fn identity(r: &FiniteRack) -> Self {
        Self::new(RackHom::identity(r), RackAction::self_conjugation(r)).expect("identity xmod")
    }

    pub fn boundary(&self) -> &RackHom {
        &self.boundary
    }

    pub fn action(&self) -> &RackAction {
        &self.action
    }

    /// The rack `R` of `∂: R → S`.
    pub fn domain(&self) -> &FiniteRack {
        self.boundary.dom()
    }

    /// The rack `S` of `∂: R → S`.
    pub fn codomain(&self) -> &FiniteRack {
        self.boundary.cod()
    }

    #[inline]
    pub fn act(&self, r: usize, s: usize) -> usize {
        self.action.act(r, s)
    }

    /// Normality verdict for `∂(R) ⊆ S`.
    pub fn image_normality(&self) -> Normality {
        is_normal_subrack(&self.boundary.image(), self.codomain())
            .expect("image contains the basepoint")
    }
}

/// The inclusion `N ↪ R` of a normal subrack, with `R` acting by `◁`.
pub fn inclusion_xmod(subset: &[usize], rack: &FiniteRack) -> Result<RackXMod> {
    let sub = match is_normal_subrack(subset, rack)? {
        Normality::Normal(sub) => sub,
        Normality::NotClosed { n, r, result } => return Err(Error::NotNormal { n, r, result }),
    };
    let elems = sub.elements();
    let mut pos = vec![usize::MAX; rack.size()];
    for (i, &e) in elems.iter().enumerate() {
        pos[e] = i;
    }
    let table = elems
        .iter()
        .flat_map(|&n| (0..rack.size()).map(move |r| (n, r)))
        .map(|(n, r)| pos[rack.op(n, r)])
        .collect();
    let action = RackAction::new(sub.rack().clone(), rack.clone(), table)?;
    RackXMod::new(sub.inclusion(), action)
}

/// A morphism `(f1, f0)` of crossed modules of racks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RackXModMorphism {
    source: RackXMod,
    target: RackXMod,
    f1: RackHom,
    f0: RackHom,
}

/// Checks that `(f1, f0)` is a morphism `src → dst`: `∂'∘f1 = f0∘∂` and
/// `f1(r·s) = f1(r)·f0(s)`.
pub fn validate_xmod_morphism(
    f1: &RackHom,
    f0: &RackHom,
    src: &RackXMod,
    dst: &RackXMod,
) -> Result<RackXModMorphism> {
    if f1.dom() != src.domain() || f1.cod() != dst.domain() {
        return Err(Error::Mismatch("f1 must map between the domain racks".into()));
    }
    if f0.dom() != src.codomain() || f0.cod() != dst.codomain() {
        return Err(Error::Mismatch(
            "f0 must map between the codomain racks".into(),
        ));
    }
    check_xmod_square(src, dst, f1.map(), f0.map())?;
    Ok(RackXModMorphism {
        source: src.clone(),
        target: dst.clone(),
        f1: f1.clone(),
        f0: f0.clone(),
    })
}

/// The two morphism laws on raw maps, without the hom checks.
pub(crate) fn check_xmod_square(
    src: &RackXMod,
    dst: &RackXMod,
    f1: &[usize],
    f0: &[usize],
) -> Result<()> {
    for r in 0..src.domain().size() {
        if dst.boundary().apply(f1[r]) != f0[src.boundary().apply(r)] {
            return Err(Error::BoundarySquareFail { element: r });
        }
    }
    for r in 0..src.domain().size() {
        for s in 0..src.codomain().size() {
            if f1[src.act(r, s)] != dst.act(f1[r], f0[s]) {
                return Err(Error::ActionSquareFail { r, s });
            }
        }
    }
    Ok(())
}

impl RackXModMorphism {
    /// Validates raw maps as rack homs and then as a morphism.
    pub fn new(src: &RackXMod, dst: &RackXMod, f1: Vec<usize>, f0: Vec<usize>) -> Result<Self> {
        let f1 = RackHom::new(src.domain().clone(), dst.domain().clone(), f1)?;
        let f0 = RackHom::new(src.codomain().clone(), dst.codomain().clone(), f0)?;
        validate_xmod_morphism(&f1, &f0, src, dst)
    }

    pub fn identity(x: &RackXMod) -> Self {
        Self {
            source: x.clone(),
            target: x.clone(),
            f1: RackHom::identity(x.domain()),
            f0: RackHom::identity(x.codomain()),
        }
    }

    pub fn source(&self) -> &RackXMod {
        &self.source
    }

    pub fn target(&self) -> &RackXMod {
        &self.target
    }

    pub fn f1(&self) -> &RackHom {
        &self.f1
    }

    pub fn f0(&self) -> &RackHom {
        &self.f0
    }

    /// `other ∘ self`, re-validated.
    pub fn then(&self, other: &RackXModMorphism) -> Result<RackXModMorphism> {
        if self.target != other.source {
            return Err(Error::Mismatch("composition: target ≠ source".into()));
        }
        let f1 = self.f1.then(&other.f1)?;
        let f0 = self.f0.then(&other.f0)?;
        validate_xmod_morphism(&f1, &f0, &self.source, &other.target)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.f1.is_bijective() && self.f0.is_bijective()
    }
}

/// Searches for a pair of rack isomorphisms `(f1, f0)` forming a crossed
/// module morphism `a → b`. Codomain isomorphisms are tried in
/// lexicographic order; for each, domain isomorphisms are restricted to
/// those compatible with the boundaries.
pub fn find_xmod_isomorphism(a: &RackXMod, b: &RackXMod) -> Option<RackXModMorphism> {
    let mut found = None;
    iso::for_each_isomorphism(a.codomain(), b.codomain(), &|_, _| true, &mut |f0| {
        let f0 = f0.to_vec();
        let compatible = |x: usize, y: usize| b.boundary().apply(y) == f0[a.boundary().apply(x)];
        iso::for_each_isomorphism(a.domain(), b.domain(), &compatible, &mut |f1| {
            if check_xmod_square(a, b, f1, &f0).is_ok() {
                found = RackXModMorphism::new(a, b, f1.to_vec(), f0.clone()).ok();
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        if found.is_some() {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found
}
