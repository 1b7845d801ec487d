//! Named small instances and the generated corpus that the property and
//! acceptance suites sweep over.

use crate::enumerate::enumerate_pointed_racks_with_bound;
use crate::error::Result;
use crate::functors::enumerate_rack_homs;
use crate::group::{cyclic_group, sign_hom, symmetric_group, FiniteGroup, GroupHom};
use crate::group_xmod::{conj_xmod, GroupXMod};
use crate::pullback::{test_morphism, PullbackXMod};
use crate::rack::{adjoin_basepoint, conj_rack, dihedral_quandle, is_normal_subrack, FiniteRack, RackHom};
use crate::xmod::{inclusion_xmod, RackAction, RackXMod, RackXModMorphism};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Named<T> {
    pub name: String,
    pub value: T,
}

fn named<T>(name: impl Into<String>, value: T) -> Named<T> {
    Named {
        name: name.into(),
        value,
    }
}

pub fn s3() -> FiniteGroup {
    symmetric_group(3)
}

pub fn groups() -> Vec<Named<FiniteGroup>> {
    vec![
        named("Z2", cyclic_group(2)),
        named("Z3", cyclic_group(3)),
        named("Z4", cyclic_group(4)),
        named("Z6", cyclic_group(6)),
        named("S3", s3()),
    ]
}

/// Indices of `e`, `(123)`, `(132)` in [`s3`].
pub fn a3_elements() -> Vec<usize> {
    let g = s3();
    ["e", "(123)", "(132)"]
        .iter()
        .map(|l| g.element(l).expect("S3 label"))
        .collect()
}

pub fn cs3() -> FiniteRack {
    conj_rack(&s3())
}

pub fn cz2() -> FiniteRack {
    conj_rack(&cyclic_group(2))
}

/// Dihedral quandle on three points with a basepoint adjoined.
pub fn r3_plus() -> FiniteRack {
    let r3 = dihedral_quandle(3)
        .with_labels(vec!["0".into(), "1".into(), "2".into()])
        .expect("three labels");
    adjoin_basepoint(&r3)
}

pub fn t2() -> FiniteRack {
    FiniteRack::trivial(2)
}

pub fn named_racks() -> Vec<Named<FiniteRack>> {
    vec![
        named("1", FiniteRack::singleton()),
        named("T2", t2()),
        named("CZ2", cz2()),
        named("CS3", cs3()),
        named("R3+", r3_plus()),
    ]
}

/// Pointed racks of every order `1..=n` up to isomorphism, named
/// `P<order>_<index>`.
pub fn enumerated_racks(n: usize, bound: usize) -> Result<Vec<Named<FiniteRack>>> {
    let mut out = Vec::new();
    for n in 1..=n {
        for (i, r) in enumerate_pointed_racks_with_bound(n, bound)?
            .into_iter()
            .enumerate()
        {
            out.push(named(format!("P{n}_{i}"), r));
        }
    }
    Ok(out)
}

/// Enumerated racks up to `bound` followed by the named racks of larger
/// order.
pub fn rack_corpus(bound: usize) -> Result<Vec<Named<FiniteRack>>> {
    let mut out = enumerated_racks(bound, bound)?;
    out.extend(named_racks().into_iter().filter(|r| r.value.size() > bound));
    Ok(out)
}

/// `sgn: S3 → Z2`.
pub fn sgn() -> GroupHom {
    sign_hom(3)
}

/// `Z3 → S3`, `1 ↦ (123)`.
pub fn psi() -> GroupHom {
    let g = s3();
    let c = g.element("(123)").expect("S3 label");
    GroupHom::from_generators(cyclic_group(3), g, &[(1, c)]).expect("(123) has order 3")
}

/// `Z2 → S3`, `1 ↦ (12)`.
pub fn tau() -> GroupHom {
    let g = s3();
    let t = g.element("(12)").expect("S3 label");
    GroupHom::from_generators(cyclic_group(2), g, &[(1, t)]).expect("(12) has order 2")
}

pub fn group_homs() -> Vec<Named<GroupHom>> {
    let z2 = cyclic_group(2);
    vec![
        named("sgn", sgn()),
        named("psi", psi()),
        named("tau", tau()),
        named("id_S3", GroupHom::identity(&s3())),
        named("id_Z2", GroupHom::identity(&z2)),
        named("Z3->Z2", GroupHom::trivial(&cyclic_group(3), &z2)),
        named("Z4->Z2", GroupHom::from_generators(cyclic_group(4), z2, &[(1, 1)]).expect("Z4 onto Z2")),
    ]
}

pub fn group_xmods() -> Vec<Named<GroupXMod>> {
    let (g, z2) = (s3(), cyclic_group(2));
    let e = |g: &FiniteGroup| vec![g.identity()];
    vec![
        named("A3<S3", GroupXMod::normal_inclusion(&g, &a3_elements()).expect("A3 is normal")),
        named("1<S3", GroupXMod::normal_inclusion(&g, &e(&g)).expect("trivial subgroup")),
        named("id_S3", GroupXMod::identity(&g)),
        named("1<Z2", GroupXMod::normal_inclusion(&z2, &e(&z2)).expect("trivial subgroup")),
        named("id_Z2", GroupXMod::identity(&z2)),
        named("Z2->S3", GroupXMod::trivial(&z2, &g).expect("Z2 is abelian")),
        named("Z3->S3", GroupXMod::trivial(&cyclic_group(3), &g).expect("Z3 is abelian")),
        named("Z3->Z2", GroupXMod::trivial(&cyclic_group(3), &z2).expect("Z3 is abelian")),
    ]
}

/// Every `(crossed module, hom)` pair from [`group_xmods`] and
/// [`group_homs`] with matching codomains.
pub fn group_pullback_instances() -> Vec<(String, GroupXMod, GroupHom)> {
    let homs = group_homs();
    let mut out = Vec::new();
    for x in group_xmods() {
        for h in &homs {
            if h.value.cod() == x.value.codomain() {
                out.push((
                    format!("{} along {}", x.name, h.name),
                    x.value.clone(),
                    h.value.clone(),
                ));
            }
        }
    }
    out
}

/// Subsets of `r` containing the basepoint and closed under `n ◁ x`, in
/// order of their sorted element lists.
pub fn normal_subracks(r: &FiniteRack) -> Vec<Vec<usize>> {
    let others: Vec<usize> = (0..r.size()).filter(|&x| x != r.basepoint()).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << others.len()) {
        let mut subset: Vec<usize> = others
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &x)| x)
            .collect();
        subset.push(r.basepoint());
        subset.sort_unstable();
        if matches!(is_normal_subrack(&subset, r), Ok(n) if n.is_normal()) {
            out.push(subset);
        }
    }
    out.sort();
    out
}

/// Constant boundary from `T2` with the trivial action. `T2` is trivial,
/// so both Peiffer laws reduce to `1 ◁ s = 1`.
pub fn constant_t2_xmod(r: &FiniteRack) -> RackXMod {
    let action = RackAction::trivial(&t2(), r);
    RackXMod::new(RackHom::to_basepoint(&t2(), r), action).expect("constant crossed module")
}

/// Inclusion crossed modules of every normal subrack of `r`, then the
/// constant one from `T2`.
pub fn xmods_over(r: &FiniteRack, rack_name: &str) -> Vec<Named<RackXMod>> {
    let mut out: Vec<Named<RackXMod>> = normal_subracks(r)
        .into_iter()
        .map(|n| {
            let name = format!("incl{:?}->{rack_name}", n);
            named(name, inclusion_xmod(&n, r).expect("normal subrack"))
        })
        .collect();
    out.push(named(format!("T2->{rack_name}"), constant_t2_xmod(r)));
    out
}

/// The crossed modules of racks the examples are stated over.
pub fn rack_xmods() -> Vec<Named<RackXMod>> {
    let r = cs3();
    let cz2 = cz2();
    let mut out = vec![
        named("1->CS3", inclusion_xmod(&[r.basepoint()], &r).expect("basepoint")),
        named("A3r->CS3", inclusion_xmod(&a3_elements(), &r).expect("A3r is normal")),
        named("id_CS3", RackXMod::identity(&r)),
        named("1->CZ2", inclusion_xmod(&[cz2.basepoint()], &cz2).expect("basepoint")),
        named("id_CZ2", RackXMod::identity(&cz2)),
        named("T2->CS3", constant_t2_xmod(&r)),
    ];
    for g in group_xmods() {
        out.push(named(format!("Conj({})", g.name), conj_xmod(&g.value)));
    }
    out
}

pub struct PullbackInstance {
    pub name: String,
    pub xmod: RackXMod,
    pub phi: RackHom,
}

/// Crossed modules over each base rack, paired with every hom into that
/// base from each source rack.
pub fn pullback_instances(bases: &[Named<FiniteRack>], sources: &[Named<FiniteRack>]) -> Vec<PullbackInstance> {
    let mut out = Vec::new();
    for base in bases {
        for x in xmods_over(&base.value, &base.name) {
            for s in sources {
                for (i, map) in enumerate_rack_homs(&s.value, &base.value).maps.into_iter().enumerate() {
                    let phi = RackHom::new(s.value.clone(), base.value.clone(), map).expect("enumerated hom");
                    out.push(PullbackInstance {
                        name: format!("{} along {}->{}#{i}", x.name, s.name, base.name),
                        xmod: x.value.clone(),
                        phi,
                    });
                }
            }
        }
    }
    out
}

/// Test morphisms `(f, φ)` into the pulled-back crossed module: the
/// pullback's own projection, then every valid `f` out of each crossed
/// module in [`xmods_over`] the pullback's base.
pub fn universal_tests(pb: &PullbackXMod) -> Vec<RackXModMorphism> {
    let mut out = vec![pb.projection()];
    let p = pb.source().domain();
    for x in xmods_over(pb.phi().dom(), "S") {
        for f in enumerate_rack_homs(x.value.domain(), p).maps {
            if let Ok(m) = test_morphism(pb, &x.value, f) {
                out.push(m);
            }
        }
    }
    out
}
