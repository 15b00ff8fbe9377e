//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library.
#![allow(dead_code)]

use std::collections::HashSet;

/// `gamma(C, p)` for `C = 1..=10`, `p = 2..=16`.
pub const TABLE1: [[u64; 15]; 10] = [
    [1, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16],
    [1, 3, 5, 7, 9, 10, 12, 13, 15, 16, 18, 19, 21, 22, 24],
    [1, 3, 6, 10, 12, 14, 16, 18, 20, 22, 24, 26, 28, 30, 32],
    [1, 3, 6, 10, 13, 16, 18, 21, 23, 25, 28, 30, 32, 35, 37],
    [1, 3, 6, 10, 15, 18, 21, 24, 26, 29, 32, 34, 37, 40, 42],
    [1, 3, 6, 10, 15, 21, 24, 27, 30, 33, 36, 39, 42, 45, 48],
    [1, 3, 6, 10, 15, 21, 25, 29, 32, 35, 39, 42, 45, 48, 52],
    [1, 3, 6, 10, 15, 21, 27, 31, 35, 38, 42, 45, 49, 52, 56],
    [1, 3, 6, 10, 15, 21, 28, 33, 37, 41, 45, 48, 52, 56, 60],
    [1, 3, 6, 10, 15, 21, 28, 36, 40, 44, 48, 52, 56, 60, 64],
];

/// `rho(C)` as printed, numerator and denominator unreduced.
pub const TABLE1_RHO: [(i128, i128); 10] = [(1, 1), (3, 2), (2, 1), (7, 3), (8, 3), (3, 1), (13, 4), (14, 4), (15, 4), (4, 1)];

/// Shortest-path arcs of the ring; `forward[i]` orients the diameter `{i, i + N/2}`.
pub fn tournament(n: usize, forward: &[bool]) -> Vec<(usize, usize)> {
    let mut arcs = Vec::new();
    for u in 0..n {
        for d in 1..n {
            let v = (u + d) % n;
            let keep = if 2 * d < n {
                true
            } else if 2 * d == n {
                let i = u.min(v);
                forward[i] == (u == i)
            } else {
                false
            };
            if keep {
                arcs.push((u, v));
            }
        }
    }
    arcs
}

pub fn all_forward(n: usize) -> Vec<bool> {
    vec![true; n / 2]
}

/// Ring segments `u, u+1, ..., v-1` crossed by the clockwise route of `(u, v)`.
pub fn segments(n: usize, u: usize, v: usize) -> Vec<usize> {
    let len = (v + n - u) % n;
    (0..len).map(|s| (u + s) % n).collect()
}

pub fn within_load(n: usize, c: u32, arcs: &[(usize, usize)]) -> bool {
    let mut load = vec![0u32; n];
    for &(u, v) in arcs {
        for e in segments(n, u, v) {
            load[e] += 1;
        }
    }
    load.iter().all(|&l| l <= c)
}

/// Most arcs of an oriented graph on `p` cyclically ordered vertices with
/// every cycle edge carrying at most `C` routes, by exhaustive search.
pub fn brute_force_gamma(c: u32, p: usize) -> u64 {
    struct St {
        p: usize,
        c: u32,
        pairs: Vec<(usize, usize)>,
        load: Vec<u32>,
        best: u64,
    }
    fn go(st: &mut St, i: usize, count: u64) {
        if count > st.best {
            st.best = count;
        }
        if i == st.pairs.len() || count + (st.pairs.len() - i) as u64 <= st.best {
            return;
        }
        let free: u32 = st.load.iter().map(|&l| st.c - l).sum();
        // Each remaining pair costs at least its shorter way round.
        let mut lens: Vec<u32> = st.pairs[i..]
            .iter()
            .map(|&(a, b)| ((b - a).min(st.p - (b - a))) as u32)
            .collect();
        lens.sort_unstable();
        let mut room = free;
        let mut fit = 0u64;
        for l in lens {
            if l > room {
                break;
            }
            room -= l;
            fit += 1;
        }
        if count + fit <= st.best {
            return;
        }
        let (a, b) = st.pairs[i];
        for (u, v) in [(a, b), (b, a)] {
            let segs = segments(st.p, u, v);
            if segs.iter().all(|&e| st.load[e] < st.c) {
                segs.iter().for_each(|&e| st.load[e] += 1);
                go(st, i + 1, count + 1);
                segs.iter().for_each(|&e| st.load[e] -= 1);
            }
        }
        go(st, i + 1, count);
    }
    let mut pairs: Vec<(usize, usize)> = (0..p).flat_map(|a| (a + 1..p).map(move |b| (a, b))).collect();
    pairs.sort_by_key(|&(a, b)| (b - a).min(p - (b - a)));
    let mut st = St { p, c, pairs, load: vec![0; p], best: 0 };
    go(&mut st, 0, 0);
    st.best
}

/// Minimum ADMs over all partitions of the tournament into admissible
/// blocks, by dynamic programming over the set of unassigned arcs. The block
/// holding the lowest unassigned arc is enumerated explicitly.
pub fn brute_force_adm(c: u32, n: usize, forward: &[bool]) -> u64 {
    let arcs = tournament(n, forward);
    let m = arcs.len();
    assert!(m <= 24, "oracle is exponential in the arc count");
    let segs: Vec<Vec<usize>> = arcs.iter().map(|&(u, v)| segments(n, u, v)).collect();
    let mut memo = vec![u16::MAX; 1 << m];
    memo[0] = 0;

    struct Ctx<'a> {
        n: usize,
        c: u32,
        arcs: &'a [(usize, usize)],
        segs: &'a [Vec<usize>],
        memo: Vec<u16>,
    }

    fn best(ctx: &mut Ctx, rest: u32) -> u16 {
        if ctx.memo[rest as usize] != u16::MAX {
            return ctx.memo[rest as usize];
        }
        let first = rest.trailing_zeros() as usize;
        let mut load = vec![0u32; ctx.n];
        for &e in &ctx.segs[first] {
            load[e] += 1;
        }
        let (u, v) = ctx.arcs[first];
        let mut blocks = Vec::new();
        extend(ctx, rest & !(1 << first), 1 << first, (1u64 << u) | (1u64 << v), &mut load, &mut blocks);
        let mut out = u16::MAX;
        for (block, verts) in blocks {
            let sub = best(ctx, rest & !block);
            out = out.min(sub + verts as u16);
        }
        ctx.memo[rest as usize] = out;
        out
    }

    /// Every admissible block made of the chosen arcs plus a subset of `pool`.
    fn extend(ctx: &Ctx, pool: u32, chosen: u32, verts: u64, load: &mut [u32], out: &mut Vec<(u32, u32)>) {
        out.push((chosen, verts.count_ones()));
        let mut rest = pool;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if ctx.segs[i].iter().all(|&e| load[e] < ctx.c) {
                ctx.segs[i].iter().for_each(|&e| load[e] += 1);
                let (u, v) = ctx.arcs[i];
                extend(ctx, rest, chosen | 1 << i, verts | 1u64 << u | 1u64 << v, load, out);
                ctx.segs[i].iter().for_each(|&e| load[e] -= 1);
            }
        }
    }

    let mut ctx = Ctx { n, c, arcs: &arcs, segs: &segs, memo };
    let full = if m == 32 { u32::MAX } else { (1u32 << m) - 1 };
    u64::from(best(&mut ctx, full))
}

/// Whether every pair of points not sharing a group lies in exactly one
/// block and no block meets a group twice.
pub fn covers_pairs_exactly_once(points: usize, groups: &[Vec<usize>], blocks: &[Vec<usize>]) -> bool {
    let mut group_of = vec![usize::MAX; points];
    for (g, members) in groups.iter().enumerate() {
        for &x in members {
            if x >= points || group_of[x] != usize::MAX {
                return false;
            }
            group_of[x] = g;
        }
    }
    let mut seen = HashSet::new();
    for b in blocks {
        for (i, &x) in b.iter().enumerate() {
            for &y in &b[i + 1..] {
                if x >= points || y >= points || x == y {
                    return false;
                }
                let same_group = group_of[x] != usize::MAX && group_of[x] == group_of[y];
                if same_group || !seen.insert((x.min(y), x.max(y))) {
                    return false;
                }
            }
        }
    }
    let grouped = |x: usize, y: usize| group_of[x] != usize::MAX && group_of[x] == group_of[y];
    let cross = (0..points).flat_map(|x| (x + 1..points).map(move |y| (x, y))).filter(|&(x, y)| !grouped(x, y)).count();
    seen.len() == cross
}

/// Number of distinct endpoints summed over blocks.
pub fn adm_of(blocks: &[Vec<(usize, usize)>]) -> u64 {
    blocks
        .iter()
        .map(|b| b.iter().flat_map(|&(u, v)| [u, v]).collect::<HashSet<_>>().len() as u64)
        .sum()
}

/// Checks that `blocks` partition the tournament given by `forward` with
/// every block within load `C`, and returns the ADM count.
pub fn check_partition(n: usize, c: u32, forward: &[bool], blocks: &[Vec<(usize, usize)>]) -> Result<u64, String> {
    let expected: HashSet<(usize, usize)> = tournament(n, forward).into_iter().collect();
    let mut seen = HashSet::new();
    for (i, b) in blocks.iter().enumerate() {
        for &arc in b {
            if !expected.contains(&arc) {
                return Err(format!("block {i}: ({}, {}) is not a tournament arc", arc.0, arc.1));
            }
            if !seen.insert(arc) {
                return Err(format!("({}, {}) covered twice", arc.0, arc.1));
            }
        }
        if !within_load(n, c, b) {
            return Err(format!("block {i} exceeds load {c}"));
        }
    }
    if seen.len() != expected.len() {
        return Err(format!("{} of {} arcs covered", seen.len(), expected.len()));
    }
    Ok(adm_of(blocks))
}
