//! Finite racks, pointed and unpointed, and rack homomorphisms.
//!
//! Elements are dense indices `0..size`. A table is stored row-major, so
//! `table[a * size + b]` holds `a ◁ b`. Every constructor re-runs the full
//! axiom check on its output.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{index_set, positions, FiniteGroup, GroupHom};

fn check_entries(size: usize, table: &[usize]) -> Result<()> {
    if size == 0 {
        return Err(Error::EmptyCarrier);
    }
    if table.len() != size * size {
        return Err(Error::TableShape {
            expected: size * size,
            found: table.len(),
        });
    }
    for (i, &v) in table.iter().enumerate() {
        if v >= size {
            return Err(Error::EntryOutOfRange {
                row: i / size,
                col: i % size,
                value: v,
                size,
            });
        }
    }
    Ok(())
}

/// Right translations `a ↦ a ◁ b` must be bijections.
fn check_columns(size: usize, table: &[usize]) -> Result<()> {
    for b in 0..size {
        let mut preimage: Vec<Option<usize>> = vec![None; size];
        for a in 0..size {
            let c = table[a * size + b];
            if let Some(first) = preimage[c] {
                return Err(Error::NonBijectiveColumn {
                    column: b,
                    first,
                    second: a,
                    image: c,
                });
            }
            preimage[c] = Some(a);
        }
    }
    Ok(())
}

fn check_self_distributive(size: usize, table: &[usize]) -> Result<()> {
    let op = |x: usize, y: usize| table[x * size + y];
    for a in 0..size {
        for b in 0..size {
            let ab = op(a, b);
            for c in 0..size {
                if op(ab, c) != op(op(a, c), op(b, c)) {
                    return Err(Error::SelfDistributivityFail { a, b, c });
                }
            }
        }
    }
    Ok(())
}

fn check_pointed(size: usize, table: &[usize], basepoint: usize) -> Result<()> {
    for a in 0..size {
        let left = table[basepoint * size + a];
        if left != basepoint {
            return Err(Error::NotPointed {
                left: basepoint,
                right: a,
                result: left,
            });
        }
        let right = table[a * size + basepoint];
        if right != a {
            return Err(Error::NotPointed {
                left: a,
                right: basepoint,
                result: right,
            });
        }
    }
    Ok(())
}

fn rows_of(size: usize, table: &[usize]) -> Vec<Vec<usize>> {
    table.chunks(size).map(<[usize]>::to_vec).collect()
}

fn flatten_square(rows: &[Vec<usize>]) -> Result<Vec<usize>> {
    let size = rows.len();
    if let Some(bad) = rows.iter().find(|r| r.len() != size) {
        return Err(Error::TableShape {
            expected: size,
            found: bad.len(),
        });
    }
    Ok(rows.concat())
}

/// A finite pointed rack.
#[derive(Clone)]
pub struct FiniteRack {
    size: usize,
    table: Vec<usize>,
    basepoint: usize,
    labels: Option<Vec<String>>,
}

/// Validates a square table as a pointed rack.
///
/// Axioms are checked in the order: entries in range, bijective columns,
/// self-distributivity, pointedness. The error names the first violated
/// axiom with its lexicographically first witness.
pub fn validate_rack(rows: &[Vec<usize>], basepoint: usize) -> Result<FiniteRack> {
    FiniteRack::new(rows.len(), flatten_square(rows)?, basepoint)
}

impl FiniteRack {
    pub fn new(size: usize, table: Vec<usize>, basepoint: usize) -> Result<Self> {
        check_entries(size, &table)?;
        if basepoint >= size {
            return Err(Error::IndexOutOfRange {
                index: basepoint,
                size,
            });
        }
        check_columns(size, &table)?;
        check_self_distributive(size, &table)?;
        check_pointed(size, &table, basepoint)?;
        Ok(Self {
            size,
            table,
            basepoint,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(Error::LabelCount {
                expected: self.size,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub(crate) fn set_labels(&mut self, labels: Option<Vec<String>>) {
        debug_assert!(labels.as_ref().is_none_or(|l| l.len() == self.size));
        self.labels = labels;
    }

    pub fn singleton() -> Self {
        Self::trivial(1)
    }

    /// The trivial pointed rack `a ◁ b = a` on `n` elements, basepoint 0.
    pub fn trivial(n: usize) -> Self {
        let table = (0..n).flat_map(|a| std::iter::repeat_n(a, n)).collect();
        Self::new(n, table, 0).expect("trivial rack")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    /// The unique `c` with `c ◁ b = a`.
    pub fn op_inverse(&self, a: usize, b: usize) -> usize {
        (0..self.size)
            .find(|&c| self.op(c, b) == a)
            .expect("columns are bijections")
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        rows_of(self.size, &self.table)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn element(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).all(|b| self.op(a, b) == a))
    }

    pub fn is_quandle(&self) -> bool {
        (0..self.size).all(|a| self.op(a, a) == a)
    }

    /// Orbits under the inner action, each sorted, listed by smallest member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.size).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for a in 0..self.size {
            for b in 0..self.size {
                let (x, y) = (find(&mut parent, a), find(&mut parent, self.op(a, b)));
                if x != y {
                    parent[x.max(y)] = x.min(y);
                }
            }
        }
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        let mut slot: Vec<Option<usize>> = vec![None; self.size];
        for a in 0..self.size {
            let root = find(&mut parent, a);
            match slot[root] {
                Some(i) => orbits[i].push(a),
                None => {
                    slot[root] = Some(orbits.len());
                    orbits.push(vec![a]);
                }
            }
        }
        orbits
    }

    /// Restricts the operation to a subset closed under `◁` within itself.
    /// Indices of the result follow the sorted order of `elements`.
    pub fn subrack(&self, elements: &[usize]) -> Result<Subrack> {
        let set = index_set(elements, self.size)?;
        if !set.contains(&self.basepoint) {
            return Err(Error::BasepointMissing {
                basepoint: self.basepoint,
            });
        }
        let elems: Vec<usize> = set.into_iter().collect();
        let pos = positions(&elems, self.size);
        let k = elems.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in &elems {
            for &b in &elems {
                let c = self.op(a, b);
                match pos[c] {
                    Some(i) => table.push(i),
                    None => {
                        return Err(Error::NotNormal {
                            n: a,
                            r: b,
                            result: c,
                        })
                    }
                }
            }
        }
        let mut rack = FiniteRack::new(k, table, pos[self.basepoint].unwrap())?;
        if let Some(l) = &self.labels {
            rack.labels = Some(elems.iter().map(|&e| l[e].clone()).collect());
        }
        Ok(Subrack {
            ambient: self.clone(),
            elements: elems,
            rack,
        })
    }
}

impl PartialEq for FiniteRack {
    /// Structural equality; labels are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.basepoint == other.basepoint && self.table == other.table
    }
}

impl Eq for FiniteRack {}

impl fmt::Debug for FiniteRack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRack")
            .field("size", &self.size)
            .field("basepoint", &self.basepoint)
            .field("table", &self.rows())
            .finish()
    }
}

/// A finite rack without a distinguished basepoint.
#[derive(Clone, PartialEq, Eq)]
pub struct UnpointedRack {
    size: usize,
    table: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl UnpointedRack {
    pub fn new(size: usize, table: Vec<usize>) -> Result<Self> {
        check_entries(size, &table)?;
        check_columns(size, &table)?;
        check_self_distributive(size, &table)?;
        Ok(Self {
            size,
            table,
            labels: None,
        })
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        Self::new(rows.len(), flatten_square(rows)?)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(Error::LabelCount {
                expected: self.size,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        rows_of(self.size, &self.table)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Views the rack as pointed at `basepoint`, if that element is a
    /// genuine basepoint.
    pub fn pointed_at(&self, basepoint: usize) -> Result<FiniteRack> {
        let mut r = FiniteRack::new(self.size, self.table.clone(), basepoint)?;
        r.labels = self.labels.clone();
        Ok(r)
    }
}

impl fmt::Debug for UnpointedRack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UnpointedRack")
            .field("size", &self.size)
            .field("table", &self.rows())
            .finish()
    }
}

/// A subset of a pointed rack closed under its operation, with the
/// restricted rack. Index `i` of `rack` is ambient element `elements[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subrack {
    ambient: FiniteRack,
    elements: Vec<usize>,
    rack: FiniteRack,
}

impl Subrack {
    pub fn ambient(&self) -> &FiniteRack {
        &self.ambient
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn rack(&self) -> &FiniteRack {
        &self.rack
    }

    pub fn inclusion(&self) -> RackHom {
        RackHom::new(self.rack.clone(), self.ambient.clone(), self.elements.clone())
            .expect("inclusion of a subrack is a hom")
    }
}

/// Outcome of a normal-subrack test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normality {
    /// Closed under `n ◁ r` for all `n ∈ N`, `r ∈ R`; carries the
    /// restricted rack.
    Normal(Subrack),
    /// `n ◁ r` leaves the subset.
    NotClosed { n: usize, r: usize, result: usize },
}

impl Normality {
    pub fn is_normal(&self) -> bool {
        matches!(self, Normality::Normal(_))
    }
}

/// Tests whether `subset` is a normal subrack: `n ◁ r ∈ N` for every
/// `n ∈ N` and every `r` in the ambient rack, with `N` a rack under the
/// restricted table.
///
/// Normality is read as closure inside `N`. The weaker reading
/// `n ◁ r ∈ R` holds for every subset and is not what the inclusion
/// crossed module needs.
pub fn is_normal_subrack(subset: &[usize], rack: &FiniteRack) -> Result<Normality> {
    let set = index_set(subset, rack.size())?;
    if !set.contains(&rack.basepoint()) {
        return Err(Error::BasepointMissing {
            basepoint: rack.basepoint(),
        });
    }
    for &n in &set {
        for r in 0..rack.size() {
            let c = rack.op(n, r);
            if !set.contains(&c) {
                return Ok(Normality::NotClosed { n, r, result: c });
            }
        }
    }
    let elems: Vec<usize> = set.into_iter().collect();
    Ok(Normality::Normal(rack.subrack(&elems)?))
}

/// A basepoint-preserving map commuting with `◁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RackHom {
    dom: FiniteRack,
    cod: FiniteRack,
    map: Vec<usize>,
}

impl RackHom {
    pub fn new(dom: FiniteRack, cod: FiniteRack, map: Vec<usize>) -> Result<Self> {
        check_rack_map(&dom, &cod, &map)?;
        Ok(Self { dom, cod, map })
    }

    pub fn identity(r: &FiniteRack) -> Self {
        Self {
            dom: r.clone(),
            cod: r.clone(),
            map: (0..r.size()).collect(),
        }
    }

    /// The constant map onto the codomain basepoint.
    pub fn to_basepoint(dom: &FiniteRack, cod: &FiniteRack) -> Self {
        Self {
            dom: dom.clone(),
            cod: cod.clone(),
            map: vec![cod.basepoint(); dom.size()],
        }
    }

    pub fn dom(&self) -> &FiniteRack {
        &self.dom
    }

    pub fn cod(&self) -> &FiniteRack {
        &self.cod
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// `other ∘ self`
    pub fn then(&self, other: &RackHom) -> Result<RackHom> {
        if self.cod != other.dom {
            return Err(Error::Mismatch("composition: codomain ≠ domain".into()));
        }
        Ok(RackHom {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            map: self.map.iter().map(|&x| other.map[x]).collect(),
        })
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.size() == self.cod.size() && {
            let mut seen = vec![false; self.cod.size()];
            self.map.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
        }
    }

    /// Elements of the image, sorted.
    pub fn image(&self) -> Vec<usize> {
        let mut img = self.map.clone();
        img.sort_unstable();
        img.dedup();
        img
    }

    /// Elements of the domain over `subset` of the codomain.
    pub fn preimage(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.dom.size())
            .filter(|&a| subset.contains(&self.map[a]))
            .collect()
    }

    pub fn kernel(&self) -> Kernel {
        let elements = self.preimage(&[self.cod.basepoint()]);
        let certificate = is_normal_subrack(&elements, &self.dom)
            .expect("kernel contains the basepoint");
        Kernel {
            elements,
            certificate,
        }
    }
}

/// Checks range, basepoint and hom law of a raw map between racks.
pub fn check_rack_map(dom: &FiniteRack, cod: &FiniteRack, map: &[usize]) -> Result<()> {
    if map.len() != dom.size() {
        return Err(Error::MapLength {
            expected: dom.size(),
            found: map.len(),
        });
    }
    if let Some(&bad) = map.iter().find(|&&v| v >= cod.size()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            size: cod.size(),
        });
    }
    if map[dom.basepoint()] != cod.basepoint() {
        return Err(Error::BasepointNotPreserved {
            basepoint: dom.basepoint(),
            image: map[dom.basepoint()],
            expected: cod.basepoint(),
        });
    }
    for a in 0..dom.size() {
        for b in 0..dom.size() {
            if map[dom.op(a, b)] != cod.op(map[a], map[b]) {
                return Err(Error::HomLawFail { a, b });
            }
        }
    }
    Ok(())
}

/// Kernel of a rack homomorphism together with its normality certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    pub elements: Vec<usize>,
    pub certificate: Normality,
}

/// `Conj(G)`: `g ◁ h = h⁻¹gh`, pointed at the identity.
pub fn conj_rack(g: &FiniteGroup) -> FiniteRack {
    let n = g.size();
    let table = (0..n)
        .flat_map(|a| (0..n).map(move |b| g.conjugate(a, b)))
        .collect();
    let mut r = FiniteRack::new(n, table, g.identity()).expect("conjugation rack");
    r.labels = g.labels().map(<[String]>::to_vec);
    r
}

/// The rack homomorphism `Conj(f)` induced by a group homomorphism.
pub fn conj_hom(f: &GroupHom) -> RackHom {
    RackHom::new(conj_rack(f.dom()), conj_rack(f.cod()), f.map().to_vec())
        .expect("group homs induce rack homs")
}

/// Core rack `g ◁ h = h·g⁻¹·h`. Unpointed: `e ◁ h = h²`.
pub fn core_rack(g: &FiniteGroup) -> UnpointedRack {
    let n = g.size();
    let table = (0..n)
        .flat_map(|a| (0..n).map(move |b| g.mul(g.mul(b, g.inv(a)), b)))
        .collect();
    let mut r = UnpointedRack::new(n, table).expect("core rack");
    r.labels = g.labels().map(<[String]>::to_vec);
    r
}

/// Dihedral quandle on `Z/n`: `i ◁ j = 2j − i mod n`.
pub fn dihedral_quandle(n: usize) -> UnpointedRack {
    let table = (0..n)
        .flat_map(|i| (0..n).map(move |j| (2 * j + n - i) % n))
        .collect();
    UnpointedRack::new(n, table).expect("dihedral quandle")
}

/// Componentwise product; `(p, r)` has index `p * |R| + r`.
pub fn product_rack(p: &FiniteRack, r: &FiniteRack) -> FiniteRack {
    let (m, n) = (p.size(), r.size());
    let mut table = Vec::with_capacity(m * n * m * n);
    for a in 0..m * n {
        for b in 0..m * n {
            table.push(p.op(a / n, b / n) * n + r.op(a % n, b % n));
        }
    }
    let mut out =
        FiniteRack::new(m * n, table, p.basepoint() * n + r.basepoint()).expect("product rack");
    if p.labels.is_some() || r.labels.is_some() {
        out.labels = Some(
            (0..m * n)
                .map(|i| format!("({},{})", p.label(i / n), r.label(i % n)))
                .collect(),
        );
    }
    out
}

/// Projections out of [`product_rack`].
pub fn product_projections(p: &FiniteRack, r: &FiniteRack) -> (RackHom, RackHom) {
    let prod = product_rack(p, r);
    let n = r.size();
    let first = RackHom::new(prod.clone(), p.clone(), (0..prod.size()).map(|i| i / n).collect());
    let second = RackHom::new(prod.clone(), r.clone(), (0..prod.size()).map(|i| i % n).collect());
    (
        first.expect("first projection"),
        second.expect("second projection"),
    )
}

/// Adds a fresh element `⋆` (the last index) with `⋆ ◁ a = ⋆` and
/// `a ◁ ⋆ = a`, and points the result at it.
pub fn adjoin_basepoint(r: &UnpointedRack) -> FiniteRack {
    let n = r.size();
    let star = n;
    let mut table = Vec::with_capacity((n + 1) * (n + 1));
    for a in 0..=n {
        for b in 0..=n {
            table.push(if a == star {
                star
            } else if b == star {
                a
            } else {
                r.op(a, b)
            });
        }
    }
    let mut out = FiniteRack::new(n + 1, table, star).expect("adjoining a basepoint keeps the axioms");
    if let Some(l) = &r.labels {
        let mut l = l.clone();
        l.push("*".into());
        out.labels = Some(l);
    }
    out
}
