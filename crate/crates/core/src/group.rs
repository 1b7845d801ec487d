//! Finite groups given by multiplication tables, and their homomorphisms.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A finite group stored as a full multiplication table.
///
/// `mul[a * size + b]` is the product `a·b`. Inverses are derived once at
/// validation time.
#[derive(Clone)]
pub struct FiniteGroup {
    size: usize,
    mul: Vec<usize>,
    identity: usize,
    inv: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates a row-major multiplication table.
    ///
    /// Checks run in the order range, identity, inverses, associativity and
    /// report the first failing element or triple.
    pub fn new(size: usize, mul: Vec<usize>, identity: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyCarrier);
        }
        if mul.len() != size * size {
            return Err(Error::TableShape {
                expected: size * size,
                found: mul.len(),
            });
        }
        if identity >= size {
            return Err(Error::IndexOutOfRange {
                index: identity,
                size,
            });
        }
        for (i, &v) in mul.iter().enumerate() {
            if v >= size {
                return Err(Error::EntryOutOfRange {
                    row: i / size,
                    col: i % size,
                    value: v,
                    size,
                });
            }
        }
        let at = |a: usize, b: usize| mul[a * size + b];
        for a in 0..size {
            if at(identity, a) != a || at(a, identity) != a {
                return Err(Error::IdentityFail { element: a });
            }
        }
        let mut inv = Vec::with_capacity(size);
        for a in 0..size {
            match (0..size).find(|&b| at(a, b) == identity && at(b, a) == identity) {
                Some(b) => inv.push(b),
                None => return Err(Error::InverseFail { element: a }),
            }
        }
        for a in 0..size {
            for b in 0..size {
                let ab = at(a, b);
                for c in 0..size {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::AssociativityFail { a, b, c });
                    }
                }
            }
        }
        Ok(Self {
            size,
            mul,
            identity,
            inv,
            labels: None,
        })
    }

    pub fn from_rows(rows: &[Vec<usize>], identity: usize) -> Result<Self> {
        let size = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != size) {
            return Err(Error::TableShape {
                expected: size,
                found: bad.len(),
            });
        }
        Self::new(size, rows.concat(), identity)
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

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `h⁻¹·g·h`
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(h), g), h)
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, g))
    }

    pub fn table(&self) -> &[usize] {
        &self.mul
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.size).map(<[usize]>::to_vec).collect()
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

    /// Index of the element carrying `label`, if the group is labelled.
    pub fn element(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Checks that `elements` is a subgroup and returns it as a group,
    /// together with the sorted list of ambient indices.
    pub fn subgroup(&self, elements: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        let set = index_set(elements, self.size)?;
        if !set.contains(&self.identity) {
            return Err(Error::NotSubgroup {
                a: self.identity,
                b: self.identity,
                result: self.identity,
            });
        }
        let elems: Vec<usize> = set.iter().copied().collect();
        let pos = positions(&elems, self.size);
        let k = elems.len();
        let mut mul = Vec::with_capacity(k * k);
        for &a in &elems {
            for &b in &elems {
                let ab = self.mul(a, b);
                match pos[ab] {
                    Some(i) => mul.push(i),
                    None => return Err(Error::NotSubgroup { a, b, result: ab }),
                }
            }
        }
        let mut sub = FiniteGroup::new(k, mul, pos[self.identity].unwrap())?;
        if let Some(l) = &self.labels {
            sub.labels = Some(elems.iter().map(|&e| l[e].clone()).collect());
        }
        Ok((sub, elems))
    }

    /// Like [`FiniteGroup::subgroup`], additionally requiring closure under
    /// conjugation by every ambient element.
    pub fn normal_subgroup(&self, elements: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        let (sub, elems) = self.subgroup(elements)?;
        let pos = positions(&elems, self.size);
        for &m in &elems {
            for g in 0..self.size {
                let c = self.conjugate(m, g);
                if pos[c].is_none() {
                    return Err(Error::NotNormalSubgroup { m, g, result: c });
                }
            }
        }
        Ok((sub, elems))
    }
}

impl PartialEq for FiniteGroup {
    /// Structural equality; labels are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.identity == other.identity && self.mul == other.mul
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("size", &self.size)
            .field("identity", &self.identity)
            .field("mul", &self.rows())
            .finish()
    }
}

pub(crate) fn index_set(elements: &[usize], size: usize) -> Result<BTreeSet<usize>> {
    let mut set = BTreeSet::new();
    for &e in elements {
        if e >= size {
            return Err(Error::IndexOutOfRange { index: e, size });
        }
        set.insert(e);
    }
    Ok(set)
}

/// Inverse lookup from ambient index to position in `elems`.
pub(crate) fn positions(elems: &[usize], ambient: usize) -> Vec<Option<usize>> {
    let mut pos = vec![None; ambient];
    for (i, &e) in elems.iter().enumerate() {
        pos[e] = Some(i);
    }
    pos
}

/// Cyclic group `Z/n` with elements `0..n` under addition.
pub fn cyclic_group(n: usize) -> FiniteGroup {
    assert!(n > 0, "cyclic group of order zero");
    let mul = (0..n).flat_map(|a| (0..n).map(move |b| (a + b) % n)).collect();
    FiniteGroup::new(n, mul, 0)
        .expect("cyclic table is a group")
        .with_labels((0..n).map(|i| i.to_string()).collect())
        .unwrap()
}

/// Symmetric group on `k` points.
///
/// Elements are the permutations of `0..k` in lexicographic order of their
/// image lists, labelled in one-based cycle notation (`e`, `(12)`, `(123)`).
/// The product `g·h` applies `g` first, then `h`.
pub fn symmetric_group(k: usize) -> FiniteGroup {
    let perms = permutations(k);
    let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
    let n = perms.len();
    let mut mul = Vec::with_capacity(n * n);
    for g in &perms {
        for h in &perms {
            let gh: Vec<usize> = (0..k).map(|x| h[g[x]]).collect();
            mul.push(index(&gh));
        }
    }
    let labels = perms.iter().map(|p| cycle_notation(p)).collect();
    FiniteGroup::new(n, mul, 0)
        .expect("permutation table is a group")
        .with_labels(labels)
        .unwrap()
}

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    let mut used = vec![false; k];
    fn go(k: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in 0..k {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                go(k, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    go(k, &mut current, &mut used, &mut out);
    out
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            out.push_str(&(x + 1).to_string());
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push('e');
    }
    out
}

fn parity(p: &[usize]) -> usize {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    inversions % 2
}

/// Direct product with componentwise multiplication; `(a, b)` has index
/// `a * |H| + b`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let (m, n) = (g.size(), h.size());
    let mut mul = Vec::with_capacity(m * n * m * n);
    for a in 0..m * n {
        for b in 0..m * n {
            mul.push(g.mul(a / n, b / n) * n + h.mul(a % n, b % n));
        }
    }
    let labels = (0..m * n)
        .map(|i| format!("({},{})", g.label(i / n), h.label(i % n)))
        .collect();
    FiniteGroup::new(m * n, mul, g.identity() * n + h.identity())
        .expect("direct product of groups is a group")
        .with_labels(labels)
        .unwrap()
}

/// A homomorphism between finite groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    dom: FiniteGroup,
    cod: FiniteGroup,
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(dom: FiniteGroup, cod: FiniteGroup, map: Vec<usize>) -> Result<Self> {
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
        if map[dom.identity()] != cod.identity() {
            return Err(Error::BasepointNotPreserved {
                basepoint: dom.identity(),
                image: map[dom.identity()],
                expected: cod.identity(),
            });
        }
        for a in 0..dom.size() {
            for b in 0..dom.size() {
                if map[dom.mul(a, b)] != cod.mul(map[a], map[b]) {
                    return Err(Error::HomLawFail { a, b });
                }
            }
        }
        Ok(Self { dom, cod, map })
    }

    /// Extends an assignment on generators multiplicatively and validates
    /// the result. The generators must generate `dom`.
    pub fn from_generators(
        dom: FiniteGroup,
        cod: FiniteGroup,
        images: &[(usize, usize)],
    ) -> Result<Self> {
        let mut map: Vec<Option<usize>> = vec![None; dom.size()];
        map[dom.identity()] = Some(cod.identity());
        let mut frontier = vec![dom.identity()];
        while let Some(x) = frontier.pop() {
            for &(g, img) in images {
                if g >= dom.size() {
                    return Err(Error::IndexOutOfRange {
                        index: g,
                        size: dom.size(),
                    });
                }
                let y = dom.mul(x, g);
                let value = cod.mul(map[x].unwrap(), img);
                match map[y] {
                    None => {
                        map[y] = Some(value);
                        frontier.push(y);
                    }
                    Some(v) if v != value => return Err(Error::HomLawFail { a: x, b: g }),
                    Some(_) => {}
                }
            }
        }
        let map = map
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| Error::Mismatch(format!("element {i} is not generated")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(dom, cod, map)
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        Self {
            dom: g.clone(),
            cod: g.clone(),
            map: (0..g.size()).collect(),
        }
    }

    pub fn trivial(dom: &FiniteGroup, cod: &FiniteGroup) -> Self {
        Self {
            dom: dom.clone(),
            cod: cod.clone(),
            map: vec![cod.identity(); dom.size()],
        }
    }

    /// Inclusion of a subgroup given by sorted ambient indices.
    pub fn inclusion(sub: &FiniteGroup, elems: &[usize], ambient: &FiniteGroup) -> Result<Self> {
        Self::new(sub.clone(), ambient.clone(), elems.to_vec())
    }

    pub fn dom(&self) -> &FiniteGroup {
        &self.dom
    }

    pub fn cod(&self) -> &FiniteGroup {
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
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.cod != other.dom {
            return Err(Error::Mismatch("composition: codomain ≠ domain".into()));
        }
        Ok(GroupHom {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            map: self.map.iter().map(|&x| other.map[x]).collect(),
        })
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.dom.size())
            .filter(|&g| self.map[g] == self.cod.identity())
            .collect()
    }
}

/// The sign homomorphism `S_k → Z/2`.
pub fn sign_hom(k: usize) -> GroupHom {
    let map = permutations(k).iter().map(|p| parity(p)).collect();
    GroupHom::new(symmetric_group(k), cyclic_group(2), map).expect("sign is multiplicative")
}
