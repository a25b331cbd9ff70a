use std::collections::HashSet;

use crate::colorful::{validate_sphere, ColorfulQuad};
use crate::bijection::rooted_from_trace;
use crate::planar::PlanarMap;
use crate::rigid::RigidQuad;
use crate::exploration::{Letter, Step, Trace};

/// All words with `k` downs and `l` ups.
pub fn words(k: usize, l: usize) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k + l);
    fn rec(k: usize, l: usize, cur: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
        if k == 0 && l == 0 {
            out.push(cur.clone());
            return;
        }
        if l > 0 {
            cur.push(Letter::Up);
            rec(k, l - 1, cur, out);
            cur.pop();
        }
        if k > 0 {
            cur.push(Letter::Down);
            rec(k - 1, l, cur, out);
            cur.pop();
        }
    }
    rec(k, l, &mut cur, &mut out);
    out
}

/// All complete traces of base `p` with exactly `j` steps.
pub fn traces_exact(p: usize, j: usize) -> Vec<Trace> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    rec(&[p], j, &mut cur, &mut out);
    out.into_iter().map(|steps| Trace { p, steps }).collect()
}

fn rec(front: &[usize], j: usize, cur: &mut Vec<Step>, out: &mut Vec<Vec<Step>>) {
    if front.is_empty() {
        if j == 0 {
            out.push(cur.clone());
        }
        return;
    }
    // a side of size s needs at least s steps
    if j < front.iter().sum::<usize>() {
        return;
    }
    let s = front[0];
    let rest = &front[1..];
    let go = |st: Step, cur: &mut Vec<Step>, out: &mut Vec<Vec<Step>>| {
        let mut nf = st.children(s).unwrap();
        nf.extend_from_slice(rest);
        cur.push(st);
        rec(&nf, j - 1, cur, out);
        cur.pop();
    };
    for left in 0..s {
        go(Step::G { left, right: s - 1 - left }, cur, out);
    }
    let rest_sum: usize = rest.iter().sum();
    for k in 0..j {
        for l in 0..j {
            if s + k + l + rest_sum > j - 1 {
                break;
            }
            for w in words(k, l) {
                go(Step::R(w.clone()), cur, out);
                go(Step::L(w), cur, out);
            }
        }
    }
}

/// All complete traces of base `p` with at most `max_steps` steps.
pub fn brute_rigid(p: usize, max_steps: usize) -> Vec<Trace> {
    (1..=max_steps).flat_map(|j| traces_exact(p, j)).collect()
}

/// All perfect matchings of `0..n` (n even) as involutions.
fn matchings(n: usize) -> Vec<Vec<usize>> {
    fn rec(m: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(a) = m.iter().position(|&x| x == usize::MAX) else {
            out.push(m.clone());
            return;
        };
        for b in a + 1..m.len() {
            if m[b] == usize::MAX {
                m[a] = b;
                m[b] = a;
                rec(m, out);
                m[a] = usize::MAX;
                m[b] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![usize::MAX; n], &mut out);
    out
}

/// All rooted planar quadrangulations with f faces, up to root-preserving isomorphism.
pub fn brute_quadrangulations(f: usize) -> Vec<PlanarMap> {
    let nd = 4 * f;
    let face_next: Vec<usize> = (0..nd).map(|d| 4 * (d / 4) + (d + 1) % 4).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for twin in matchings(nd) {
        let Ok(m) = PlanarMap::from_face_next(twin, &face_next, 0) else {
            continue;
        };
        for root in 0..nd {
            let mut r = m.clone();
            r.root = root;
            if seen.insert(r.canonical_code()) {
                out.push(r);
            }
        }
    }
    out
}

/// All colorful sphere quadrangulations with n vertices and (0,1,2,1) right of the root,
/// built from the definitions alone.
pub fn brute_colorful(n: usize) -> Vec<ColorfulQuad> {
    if n < 3 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for m in brute_quadrangulations(n - 2) {
        let (vid, verts) = m.vertices();
        let nv = verts.len();
        // BFS order of vertices from the root origin, with parents
        let start = vid[m.root];
        let mut parent = vec![usize::MAX; nv];
        let mut order = vec![start];
        parent[start] = start;
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            i += 1;
            for &d in &verts[v] {
                let w = vid[m.twin[d]];
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    order.push(w);
                }
            }
        }
        for bits in 0..1u32 << (nv - 1) {
            let mut lab = vec![0i64; nv];
            lab[start] = 1;
            for (k, &v) in order.iter().enumerate().skip(1) {
                lab[v] = lab[parent[v]] + if bits >> (k - 1) & 1 == 1 { 1 } else { -1 };
            }
            let label: Vec<i64> = (0..m.darts()).map(|d| lab[vid[d]]).collect();
            if let Ok(q) = validate_sphere(&m, label) {
                out.push(q);
            }
        }
    }
    out
}

/// All rigid quadrangulations with n non-root convex corners, from base-1 traces with an
/// L first step and n - 1 steps.
pub fn brute_rooted(n: usize) -> Vec<RigidQuad> {
    if n < 3 {
        return Vec::new();
    }
    traces_exact(1, n - 1)
        .into_iter()
        .filter(|t| t.steps[0].is_l())
        .map(|t| rooted_from_trace(&t).expect("L-first traces pull back through expand"))
        .collect()
}
