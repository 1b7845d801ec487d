//! Brute-force oracles written against raw tables, sharing no search code
//! with the library.
#![allow(dead_code)]

use rackxmod::group_xmod::GroupXMod;
use rackxmod::xmod::RackXMod;
use rackxmod::{FiniteGroup, FiniteRack};

/// Direct check of bijective columns, self-distributivity and pointedness.
pub fn is_pointed_rack(n: usize, t: &[usize], bp: usize) -> bool {
    let op = |a: usize, b: usize| t[a * n + b];
    is_rack(n, t) && (0..n).all(|a| op(bp, a) == bp && op(a, bp) == a)
}

pub fn is_rack(n: usize, t: &[usize]) -> bool {
    let op = |a: usize, b: usize| t[a * n + b];
    if n == 0 || t.len() != n * n || t.iter().any(|&v| v >= n) {
        return false;
    }
    for b in 0..n {
        let mut seen = vec![false; n];
        for a in 0..n {
            if std::mem::replace(&mut seen[op(a, b)], true) {
                return false;
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if op(op(a, b), c) != op(op(a, c), op(b, c)) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn rack_ok(r: &FiniteRack) -> bool {
    is_pointed_rack(r.size(), r.table(), r.basepoint())
}

pub fn group_ok(g: &FiniteGroup) -> bool {
    let n = g.size();
    let e = g.identity();
    (0..n).all(|a| g.mul(a, e) == a && g.mul(e, a) == a)
        && (0..n).all(|a| (0..n).any(|b| g.mul(a, b) == e))
        && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)))))
}

/// Every `(table, basepoint)` on `0..n` that is a pointed rack, found by
/// scanning all `n^(n*n)` tables.
pub fn all_pointed_racks(n: usize) -> Vec<(Vec<usize>, usize)> {
    let cells = n * n;
    let mut t = vec![0; cells];
    let mut out = Vec::new();
    loop {
        for bp in 0..n {
            if is_pointed_rack(n, &t, bp) {
                out.push((t.clone(), bp));
            }
        }
        let mut i = 0;
        loop {
            if i == cells {
                return out;
            }
            t[i] += 1;
            if t[i] < n {
                break;
            }
            t[i] = 0;
            i += 1;
        }
    }
}

/// All permutations of `0..n` by Heap's algorithm.
pub fn perms(n: usize) -> Vec<Vec<usize>> {
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    let mut out = vec![a.clone()];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Isomorphism of raw pointed racks by trying every bijection.
pub fn isomorphic_raw(n: usize, a: (&[usize], usize), b: (&[usize], usize)) -> bool {
    perms(n).into_iter().any(|p| {
        p[a.1] == b.1
            && (0..n).all(|x| (0..n).all(|y| p[a.0[x * n + y]] == b.0[p[x] * n + p[y]]))
    })
}

pub fn isomorphic(a: &FiniteRack, b: &FiniteRack) -> bool {
    a.size() == b.size()
        && isomorphic_raw(a.size(), (a.table(), a.basepoint()), (b.table(), b.basepoint()))
}

/// Representatives of the isomorphism classes, in order of first
/// appearance.
pub fn classes(n: usize, racks: &[(Vec<usize>, usize)]) -> Vec<(Vec<usize>, usize)> {
    let mut reps: Vec<(Vec<usize>, usize)> = Vec::new();
    for (t, bp) in racks {
        if !reps.iter().any(|(u, c)| isomorphic_raw(n, (t, *bp), (u, *c))) {
            reps.push((t.clone(), *bp));
        }
    }
    reps
}

/// Every map `0..len → 0..range`, in lexicographic order.
pub fn all_maps(len: usize, range: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_map(len, range, |m| out.push(m.to_vec()));
    out
}

pub fn for_each_map(len: usize, range: usize, mut visit: impl FnMut(&[usize])) {
    let mut m = vec![0; len];
    loop {
        visit(&m);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            m[i] += 1;
            if m[i] < range {
                break;
            }
            m[i] = 0;
        }
    }
}

pub fn is_rack_hom(x: &FiniteRack, y: &FiniteRack, f: &[usize]) -> bool {
    f[x.basepoint()] == y.basepoint()
        && (0..x.size()).all(|a| (0..x.size()).all(|b| f[x.op(a, b)] == y.op(f[a], f[b])))
}

/// All pointed rack homs, by filtering every set map.
pub fn rack_homs(x: &FiniteRack, y: &FiniteRack) -> Vec<Vec<usize>> {
    all_maps(x.size(), y.size())
        .into_iter()
        .filter(|f| is_rack_hom(x, y, f))
        .collect()
}

/// Assignments `X → G` under which every `y⁻¹x⁻¹y(x◁y)` and the basepoint
/// evaluate to the identity, evaluated with raw group arithmetic.
pub fn relator_assignments(x: &FiniteRack, g: &FiniteGroup) -> Vec<Vec<usize>> {
    let e = g.identity();
    let inv = |a: usize| (0..g.size()).find(|&b| g.mul(a, b) == e).unwrap();
    all_maps(x.size(), g.size())
        .into_iter()
        .filter(|f| {
            f[x.basepoint()] == e
                && (0..x.size()).all(|a| {
                    (0..x.size()).all(|b| {
                        let w = g.mul(g.mul(g.mul(inv(f[b]), inv(f[a])), f[b]), f[x.op(a, b)]);
                        w == e
                    })
                })
        })
        .collect()
}

/// `{(p, s) : α(p) = β(s)}` in lexicographic order.
pub fn fiber_pairs(alpha: &[usize], beta: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (p, &a) in alpha.iter().enumerate() {
        for (s, &b) in beta.iter().enumerate() {
            if a == b {
                out.push((p, s));
            }
        }
    }
    out
}

/// Hom law, action axioms with pointed compatibility, X1 and X2, all by
/// direct iteration.
pub fn rack_xmod_ok(x: &RackXMod) -> bool {
    let (r, s) = (x.domain(), x.codomain());
    let d = x.boundary().map();
    let act = |a: usize, b: usize| x.act(a, b);
    let (nr, ns) = (r.size(), s.size());
    rack_ok(r)
        && rack_ok(s)
        && is_rack_hom(r, s, d)
        && (0..nr).all(|a| {
            (0..ns).all(|b| {
                (0..ns).all(|c| act(act(a, b), c) == act(act(a, c), s.op(b, c)))
            })
        })
        && (0..nr).all(|a| {
            (0..nr).all(|a2| (0..ns).all(|b| act(r.op(a, a2), b) == r.op(act(a, b), act(a2, b))))
        })
        && (0..ns).all(|b| act(r.basepoint(), b) == r.basepoint())
        && (0..nr).all(|a| act(a, s.basepoint()) == a)
        && (0..nr).all(|a| (0..ns).all(|b| d[act(a, b)] == s.op(d[a], b)))
        && (0..nr).all(|a| (0..nr).all(|a2| act(a, d[a2]) == r.op(a, a2)))
}

/// Group crossed module laws by direct iteration.
pub fn group_xmod_ok(x: &GroupXMod) -> bool {
    let (m, n) = (x.domain(), x.codomain());
    let mu = x.boundary().map();
    let act = |a: usize, b: usize| x.act(a, b);
    let (nm, nn) = (m.size(), n.size());
    let inv_n = |b: usize| (0..nn).find(|&c| n.mul(b, c) == n.identity()).unwrap();
    let inv_m = |a: usize| (0..nm).find(|&c| m.mul(a, c) == m.identity()).unwrap();
    group_ok(m)
        && group_ok(n)
        && (0..nm).all(|a| (0..nm).all(|b| mu[m.mul(a, b)] == n.mul(mu[a], mu[b])))
        && (0..nm).all(|a| act(a, n.identity()) == a)
        && (0..nm).all(|a| (0..nn).all(|b| (0..nn).all(|c| act(act(a, b), c) == act(a, n.mul(b, c)))))
        && (0..nm).all(|a| (0..nm).all(|a2| (0..nn).all(|b| act(m.mul(a, a2), b) == m.mul(act(a, b), act(a2, b)))))
        && (0..nm).all(|a| (0..nn).all(|b| mu[act(a, b)] == n.mul(n.mul(inv_n(b), mu[a]), b)))
        && (0..nm).all(|a| (0..nm).all(|a2| act(a, mu[a2]) == m.mul(m.mul(inv_m(a2), a), a2)))
}

/// Maps `h` with `(h, id)` a crossed-module morphism `x → pb` lying over
/// the given `f` and the boundary of `x`.
pub fn factorizations(pb: &RackXMod, phi_prime: &[usize], x: &RackXMod, f: &[usize]) -> usize {
    let (nx, nc) = (x.domain().size(), pb.domain().size());
    let mut count = 0;
    for_each_map(nx, nc, |h| {
        let ok = (0..nx).all(|i| phi_prime[h[i]] == f[i] && pb.boundary().apply(h[i]) == x.boundary().apply(i))
            && is_rack_hom(x.domain(), pb.domain(), h)
            && (0..nx).all(|i| (0..x.codomain().size()).all(|s| h[x.act(i, s)] == pb.act(h[i], s)));
        if ok {
            count += 1;
        }
    });
    count
}
