//! Isomorphism search between finite pointed racks.
//!
//! Candidates are pruned by per-element invariants, then a backtracking
//! search assigns the lowest unmapped element to the lowest admissible
//! target and closes the partial map under `◁` before branching again.

use std::ops::ControlFlow;

use crate::rack::{FiniteRack, RackHom};

/// Isomorphism-invariant fingerprint of a single element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementInvariant {
    pub is_basepoint: bool,
    pub orbit_size: usize,
    /// Sorted cycle lengths of the right translation `x ↦ x ◁ a`.
    pub cycle_type: Vec<usize>,
    pub idempotent: bool,
    /// Number of `b` with `a ◁ b = a`.
    pub stabilized_by: usize,
}

pub fn element_invariants(r: &FiniteRack) -> Vec<ElementInvariant> {
    let n = r.size();
    let mut orbit_size = vec![0; n];
    for orbit in r.orbits() {
        for &x in &orbit {
            orbit_size[x] = orbit.len();
        }
    }
    (0..n)
        .map(|a| {
            let mut seen = vec![false; n];
            let mut cycle_type = Vec::new();
            for start in 0..n {
                if seen[start] {
                    continue;
                }
                let mut len = 0;
                let mut x = start;
                while !seen[x] {
                    seen[x] = true;
                    len += 1;
                    x = r.op(x, a);
                }
                cycle_type.push(len);
            }
            cycle_type.sort_unstable();
            ElementInvariant {
                is_basepoint: a == r.basepoint(),
                orbit_size: orbit_size[a],
                cycle_type,
                idempotent: r.op(a, a) == a,
                stabilized_by: (0..n).filter(|&b| r.op(a, b) == a).count(),
            }
        })
        .collect()
}

/// Sorted multiset of orbit sizes.
pub fn orbit_profile(r: &FiniteRack) -> Vec<usize> {
    let mut sizes: Vec<usize> = r.orbits().iter().map(Vec::len).collect();
    sizes.sort_unstable();
    sizes
}

/// Result of an exhaustive isomorphism search.
#[derive(Clone, Debug)]
pub struct IsoSearch {
    pub isomorphism: Option<RackHom>,
    /// Set when invariants alone ruled out an isomorphism.
    pub rejected_by_invariants: bool,
    /// Branching nodes visited.
    pub nodes: u64,
}

pub fn isomorphism_search(a: &FiniteRack, b: &FiniteRack) -> IsoSearch {
    let mut found = None;
    let outcome = search(a, b, &|_, _| true, &mut |map| {
        found = Some(map.to_vec());
        ControlFlow::Break(())
    });
    IsoSearch {
        isomorphism: found.map(|m| {
            RackHom::new(a.clone(), b.clone(), m).expect("search yields homomorphisms")
        }),
        rejected_by_invariants: outcome.rejected_by_invariants,
        nodes: outcome.nodes,
    }
}

pub fn find_isomorphism(a: &FiniteRack, b: &FiniteRack) -> Option<RackHom> {
    isomorphism_search(a, b).isomorphism
}

pub fn is_isomorphic(a: &FiniteRack, b: &FiniteRack) -> bool {
    find_isomorphism(a, b).is_some()
}

/// Visits every isomorphism `a → b` whose pairs all satisfy `allowed`, in
/// lexicographic order of the image list, until `visit` breaks.
pub fn for_each_isomorphism(
    a: &FiniteRack,
    b: &FiniteRack,
    allowed: &dyn Fn(usize, usize) -> bool,
    visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) {
    search(a, b, allowed, visit);
}

/// All automorphisms of `r`, lexicographically ordered.
pub fn automorphisms(r: &FiniteRack) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_isomorphism(r, r, &|_, _| true, &mut |m| {
        out.push(m.to_vec());
        ControlFlow::Continue(())
    });
    out
}

struct Outcome {
    rejected_by_invariants: bool,
    nodes: u64,
}

struct State<'a> {
    a: &'a FiniteRack,
    b: &'a FiniteRack,
    inv_a: Vec<ElementInvariant>,
    inv_b: Vec<ElementInvariant>,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
    trail: Vec<usize>,
    nodes: u64,
}

impl State<'_> {
    fn assign(&mut self, x: usize, y: usize, allowed: &dyn Fn(usize, usize) -> bool) -> bool {
        if self.used[y] || self.inv_a[x] != self.inv_b[y] || !allowed(x, y) {
            return false;
        }
        self.map[x] = Some(y);
        self.used[y] = true;
        self.trail.push(x);
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().unwrap();
            let y = self.map[x].take().unwrap();
            self.used[y] = false;
        }
    }

    /// Closes the partial map under `◁`; false on contradiction.
    fn propagate(&mut self, allowed: &dyn Fn(usize, usize) -> bool) -> bool {
        let mut start = 0;
        loop {
            let assigned = self.trail.clone();
            let before = self.trail.len();
            for (i, &x) in assigned.iter().enumerate() {
                for (j, &y) in assigned.iter().enumerate() {
                    // pairs among the old prefix were already closed
                    if i < start && j < start {
                        continue;
                    }
                    let z = self.a.op(x, y);
                    let w = self.b.op(self.map[x].unwrap(), self.map[y].unwrap());
                    match self.map[z] {
                        Some(v) if v != w => return false,
                        Some(_) => {}
                        None => {
                            if !self.assign(z, w, allowed) {
                                return false;
                            }
                        }
                    }
                }
            }
            if self.trail.len() == before {
                return true;
            }
            start = assigned.len();
        }
    }

    fn recurse(
        &mut self,
        allowed: &dyn Fn(usize, usize) -> bool,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        self.nodes += 1;
        let Some(x) = self.map.iter().position(Option::is_none) else {
            let full: Vec<usize> = self.map.iter().map(|v| v.unwrap()).collect();
            return visit(&full);
        };
        for y in 0..self.b.size() {
            let mark = self.trail.len();
            if self.assign(x, y, allowed) && self.propagate(allowed) {
                self.recurse(allowed, visit)?;
            }
            self.undo_to(mark);
        }
        ControlFlow::Continue(())
    }
}

fn search(
    a: &FiniteRack,
    b: &FiniteRack,
    allowed: &dyn Fn(usize, usize) -> bool,
    visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) -> Outcome {
    let rejected = Outcome {
        rejected_by_invariants: true,
        nodes: 0,
    };
    if a.size() != b.size() || orbit_profile(a) != orbit_profile(b) {
        return rejected;
    }
    let inv_a = element_invariants(a);
    let inv_b = element_invariants(b);
    let mut sa = inv_a.clone();
    let mut sb = inv_b.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return rejected;
    }
    let n = a.size();
    let mut st = State {
        a,
        b,
        inv_a,
        inv_b,
        map: vec![None; n],
        used: vec![false; n],
        trail: Vec::new(),
        nodes: 0,
    };
    if st.assign(a.basepoint(), b.basepoint(), allowed) && st.propagate(allowed) {
        let _ = st.recurse(allowed, visit);
    }
    Outcome {
        rejected_by_invariants: false,
        nodes: st.nodes,
    }
}
