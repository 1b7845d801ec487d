//! Presentations of the associated group `As(X)` and the adjunction
//! `Hom(As(X), G) ≅ Hom(X, Conj(G))`, checked by enumerating both sides.
//!
//! `As(X)` is never built as a group. A group hom `As(X) → G` is an
//! assignment of generators to elements of `G` under which every relator
//! evaluates to the identity, so both sides of the adjunction are finite
//! lists of index vectors that can be compared literally.
//!
//! The presentation also kills the basepoint generator. Pointed rack homs
//! send the basepoint to the basepoint, so without that relator the group
//! side would admit assignments with `f(1)` central but not trivial.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::group_xmod::{conj_xmod, GroupXMod};
use crate::rack::{conj_rack, FiniteRack};
use crate::xmod::{check_xmod_square, RackXMod};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn gen(generator: usize) -> Self {
        Self {
            generator,
            inverse: false,
        }
    }

    pub fn inv(generator: usize) -> Self {
        Self {
            generator,
            inverse: true,
        }
    }
}

/// A word over generators and their formal inverses.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Value of the word in `g` when generator `i` is sent to `assignment[i]`.
    pub fn evaluate(&self, g: &FiniteGroup, assignment: &[usize]) -> usize {
        self.0.iter().fold(g.identity(), |acc, l| {
            let x = assignment[l.generator];
            g.mul(acc, if l.inverse { g.inv(x) } else { x })
        })
    }

    fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator).max()
    }
}

/// Signed 1-based indices separated by spaces; `-k` is the inverse of
/// generator `k - 1`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let k = l.generator as i64 + 1;
            write!(f, "{}", if l.inverse { -k } else { k })?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace()
            .map(|tok| {
                let k: i64 = tok
                    .parse()
                    .map_err(|_| Error::Mismatch(format!("bad letter {tok:?}")))?;
                if k == 0 {
                    return Err(Error::Mismatch("generator 0 does not exist".into()));
                }
                let generator = (k.unsigned_abs() - 1) as usize;
                Ok(Letter {
                    generator,
                    inverse: k < 0,
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// Finite presentation of `As(X)` for a pointed rack `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: usize,
    labels: Vec<String>,
    relators: Vec<Word>,
    pointed_relator: Word,
    /// Generator assigned to each rack element.
    unit: Vec<usize>,
}

/// One generator per element; relator `y⁻¹x⁻¹y(x◁y)` for every ordered
/// pair `(x, y)` in lexicographic order; then the basepoint generator.
pub fn as_presentation(x: &FiniteRack) -> Presentation {
    let n = x.size();
    let mut relators = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            relators.push(Word(vec![
                Letter::inv(b),
                Letter::inv(a),
                Letter::gen(b),
                Letter::gen(x.op(a, b)),
            ]));
        }
    }
    Presentation {
        generators: n,
        labels: (0..n).map(|a| x.label(a)).collect(),
        relators,
        pointed_relator: Word(vec![Letter::gen(x.basepoint())]),
        unit: (0..n).collect(),
    }
}

impl Presentation {
    pub fn new(generators: usize, relators: Vec<Word>, pointed_relator: Word) -> Result<Self> {
        for w in relators.iter().chain(std::iter::once(&pointed_relator)) {
            if let Some(g) = w.max_generator().filter(|&g| g >= generators) {
                return Err(Error::IndexOutOfRange {
                    index: g,
                    size: generators,
                });
            }
        }
        Ok(Self {
            generators,
            labels: (0..generators).map(|i| i.to_string()).collect(),
            relators,
            pointed_relator,
            unit: (0..generators).collect(),
        })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The conjugation relators, without the pointed relator.
    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn pointed_relator(&self) -> &Word {
        &self.pointed_relator
    }

    pub fn unit(&self) -> &[usize] {
        &self.unit
    }

    pub fn all_relators(&self) -> impl Iterator<Item = &Word> {
        self.relators
            .iter()
            .chain(std::iter::once(&self.pointed_relator))
    }

    pub fn is_satisfied_by(&self, g: &FiniteGroup, assignment: &[usize]) -> bool {
        assignment.len() == self.generators
            && self
                .all_relators()
                .all(|w| w.evaluate(g, assignment) == g.identity())
    }

    /// Relator-list text: `#` header lines, then one relator per line with
    /// the pointed relator last.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "# generators {}\n# relators {}\n# last relator kills the basepoint generator\n",
            self.generators,
            self.relators.len() + 1
        );
        for w in self.all_relators() {
            out.push_str(&w.to_string());
            out.push('\n');
        }
        out
    }

    /// Inverse of [`to_text`](Self::to_text).
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut generators = None;
        let mut words = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(n) = comment.trim().strip_prefix("generators ") {
                    generators = Some(
                        n.trim()
                            .parse()
                            .map_err(|_| Error::Mismatch(format!("bad generator count {n:?}")))?,
                    );
                }
                continue;
            }
            words.push(line.parse::<Word>()?);
        }
        let generators =
            generators.ok_or_else(|| Error::Mismatch("missing `# generators` line".into()))?;
        let pointed = words
            .pop()
            .ok_or_else(|| Error::Mismatch("presentation has no relators".into()))?;
        Self::new(generators, words, pointed)
    }
}

/// Explicit list of maps, lexicographically ordered and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSet {
    pub source: String,
    pub target: String,
    pub maps: Vec<Vec<usize>>,
}

impl HomSet {
    pub fn count(&self) -> usize {
        self.maps.len()
    }

    pub fn contains(&self, map: &[usize]) -> bool {
        self.maps.binary_search_by(|m| m.as_slice().cmp(map)).is_ok()
    }
}

/// Every pointed rack hom `X → Y`, found by extending partial maps in
/// element order and rejecting as soon as a hom-law instance among
/// assigned elements fails.
pub fn enumerate_rack_homs(x: &FiniteRack, y: &FiniteRack) -> HomSet {
    let n = x.size();
    let mut map = vec![usize::MAX; n];
    let mut maps = Vec::new();
    extend_rack_hom(x, y, 0, &mut map, &mut maps);
    HomSet {
        source: format!("rack of order {}", x.size()),
        target: format!("rack of order {}", y.size()),
        maps,
    }
}

fn extend_rack_hom(
    x: &FiniteRack,
    y: &FiniteRack,
    next: usize,
    map: &mut [usize],
    out: &mut Vec<Vec<usize>>,
) {
    if next == x.size() {
        out.push(map.to_vec());
        return;
    }
    let candidates: Vec<usize> = if next == x.basepoint() {
        vec![y.basepoint()]
    } else {
        (0..y.size()).collect()
    };
    for c in candidates {
        map[next] = c;
        let consistent = (0..=next).all(|a| {
            (0..=next).all(|b| {
                let ab = x.op(a, b);
                ab > next || map[ab] == y.op(map[a], map[b])
            })
        });
        if consistent {
            extend_rack_hom(x, y, next + 1, map, out);
        }
    }
    map[next] = usize::MAX;
}

/// Every assignment of generators to `G` killing all relators, found by
/// extending assignments in generator order and checking each relator
/// once its last generator is set.
pub fn enumerate_presented_homs(p: &Presentation, g: &FiniteGroup) -> HomSet {
    let mut due: Vec<Vec<&Word>> = vec![Vec::new(); p.generators];
    for w in p.all_relators() {
        // the empty word is trivially satisfied
        if let Some(k) = w.max_generator() {
            due[k].push(w);
        }
    }
    let mut assignment = vec![g.identity(); p.generators];
    let mut maps = Vec::new();
    extend_assignment(g, &due, 0, &mut assignment, &mut maps);
    HomSet {
        source: format!("presentation on {} generators", p.generators),
        target: format!("group of order {}", g.size()),
        maps,
    }
}

fn extend_assignment(
    g: &FiniteGroup,
    due: &[Vec<&Word>],
    next: usize,
    assignment: &mut [usize],
    out: &mut Vec<Vec<usize>>,
) {
    if next == due.len() {
        out.push(assignment.to_vec());
        return;
    }
    for v in 0..g.size() {
        assignment[next] = v;
        if due[next]
            .iter()
            .all(|w| w.evaluate(g, assignment) == g.identity())
        {
            extend_assignment(g, due, next + 1, assignment, out);
        }
    }
}

/// Both hom sets of the adjunction for one `(X, G)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionReport {
    pub rack_homs: usize,
    pub group_homs: usize,
    /// The common assignments, which are both rack homs `X → Conj(G)` and
    /// relator-satisfying assignments for `As(X)`.
    pub matching: Vec<Vec<usize>>,
}

pub fn check_adjunction_bijection(x: &FiniteRack, g: &FiniteGroup) -> Result<AdjunctionReport> {
    let rack_side = enumerate_rack_homs(x, &conj_rack(g));
    let group_side = enumerate_presented_homs(&as_presentation(x), g);
    compare_sides(&rack_side.maps, &group_side.maps)?;
    Ok(AdjunctionReport {
        rack_homs: rack_side.count(),
        group_homs: group_side.count(),
        matching: rack_side.maps,
    })
}

fn compare_sides<T: PartialEq + fmt::Debug>(rack_side: &[T], group_side: &[T]) -> Result<()> {
    if let Some(m) = rack_side.iter().find(|m| !group_side.contains(m)) {
        return Err(Error::BijectionFail(format!(
            "{m:?} is a rack-side morphism with no group-side partner"
        )));
    }
    if let Some(m) = group_side.iter().find(|m| !rack_side.contains(m)) {
        return Err(Error::BijectionFail(format!(
            "{m:?} is a group-side morphism with no rack-side partner"
        )));
    }
    if rack_side.len() != group_side.len() {
        return Err(Error::BijectionFail(format!(
            "counts differ: {} vs {}",
            rack_side.len(),
            group_side.len()
        )));
    }
    Ok(())
}

/// Pairs `(f1, f0)` on both sides of the crossed module adjunction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XModAdjunctionReport {
    pub rack_morphisms: usize,
    pub group_morphisms: usize,
    pub matching: Vec<(Vec<usize>, Vec<usize>)>,
}

/// Compares crossed module morphisms `X → Conj(G)` with pairs of
/// assignments for `As(R)` and `As(S)` that kill their relators and satisfy
/// the boundary and action equations on generators.
pub fn check_xmod_adjunction(x: &RackXMod, g: &GroupXMod) -> Result<XModAdjunctionReport> {
    let target = conj_xmod(g);
    let top = enumerate_rack_homs(x.domain(), target.domain());
    let bottom = enumerate_rack_homs(x.codomain(), target.codomain());
    let mut rack_side = Vec::new();
    for f0 in &bottom.maps {
        for f1 in &top.maps {
            if check_xmod_square(x, &target, f1, f0).is_ok() {
                rack_side.push((f1.clone(), f0.clone()));
            }
        }
    }

    let (m_grp, n_grp) = (g.domain(), g.codomain());
    let top = enumerate_presented_homs(&as_presentation(x.domain()), m_grp);
    let bottom = enumerate_presented_homs(&as_presentation(x.codomain()), n_grp);
    let (nr, ns) = (x.domain().size(), x.codomain().size());
    let mut group_side = Vec::new();
    for a0 in &bottom.maps {
        for a1 in &top.maps {
            let boundary_ok = (0..nr).all(|r| g.boundary().apply(a1[r]) == a0[x.boundary().apply(r)]);
            let action_ok = boundary_ok
                && (0..nr).all(|r| (0..ns).all(|s| a1[x.act(r, s)] == g.act(a1[r], a0[s])));
            if action_ok {
                group_side.push((a1.clone(), a0.clone()));
            }
        }
    }
    compare_sides(&rack_side, &group_side)?;
    Ok(XModAdjunctionReport {
        rack_morphisms: rack_side.len(),
        group_morphisms: group_side.len(),
        matching: rack_side,
    })
}
