//! Search fallbacks: exact cover by backtracking, difference families over
//! cyclic groups, and randomized hill-climbing for triple systems with groups.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Budgets for the design searches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Node cap for backtracking searches.
    pub node_budget: u64,
    /// Largest point count handed to exact backtracking.
    pub exact_point_limit: usize,
    /// Move cap for hill-climbing.
    pub hill_climb_iterations: u64,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { node_budget: 2_000_000, exact_point_limit: 16, hill_climb_iterations: 50_000_000, seed: 0x5eed }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Vec<Vec<usize>>),
    /// The search space was exhausted: no design exists.
    Exhausted,
    BudgetExceeded,
}

fn group_index(v: usize, groups: &[Vec<usize>]) -> Vec<usize> {
    let mut g = vec![usize::MAX; v];
    for (i, grp) in groups.iter().enumerate() {
        for &x in grp {
            g[x] = i;
        }
    }
    g
}

/// Partitions all cross-group pairs into blocks of size `k`, exhaustively.
///
/// The next block always contains the lexicographically first uncovered pair,
/// so each design is reached exactly once.
pub fn exact_cover(v: usize, groups: &[Vec<usize>], k: usize, node_budget: u64) -> SearchOutcome {
    let group = group_index(v, groups);
    let mut degree = vec![0usize; v];
    let mut total = 0;
    for x in 0..v {
        for y in 0..v {
            if x != y && group[x] != group[y] {
                degree[x] += 1;
                total += 1;
            }
        }
    }
    total /= 2;
    if k < 2 || degree.iter().any(|d| d % (k - 1) != 0) || total % (k * (k - 1) / 2) != 0 {
        return SearchOutcome::Exhausted;
    }
    let mut state = Cover { v, k, group, covered: vec![false; v * v], blocks: Vec::new(), nodes: 0, budget: node_budget };
    match state.search() {
        Some(true) => SearchOutcome::Found(state.blocks),
        Some(false) => SearchOutcome::Exhausted,
        None => SearchOutcome::BudgetExceeded,
    }
}

struct Cover {
    v: usize,
    k: usize,
    group: Vec<usize>,
    covered: Vec<bool>,
    blocks: Vec<Vec<usize>>,
    nodes: u64,
    budget: u64,
}

impl Cover {
    fn open(&self, x: usize, y: usize) -> bool {
        self.group[x] != self.group[y] && !self.covered[x * self.v + y]
    }

    fn first_open(&self) -> Option<(usize, usize)> {
        (0..self.v).find_map(|x| (x + 1..self.v).find(|&y| self.open(x, y)).map(|y| (x, y)))
    }

    fn set(&mut self, block: &[usize], value: bool) {
        for (i, &a) in block.iter().enumerate() {
            for &b in &block[i + 1..] {
                self.covered[a * self.v + b] = value;
                self.covered[b * self.v + a] = value;
            }
        }
    }

    /// `Some(true)` found, `Some(false)` exhausted, `None` out of budget.
    fn search(&mut self) -> Option<bool> {
        let Some((x, y)) = self.first_open() else {
            return Some(true);
        };
        let mut block = vec![x, y];
        self.extend(&mut block, y + 1)
    }

    fn extend(&mut self, block: &mut Vec<usize>, from: usize) -> Option<bool> {
        if block.len() == self.k {
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            self.set(block, true);
            self.blocks.push(block.clone());
            let r = self.search();
            if r != Some(false) {
                return r;
            }
            self.blocks.pop();
            self.set(block, false);
            return Some(false);
        }
        for z in from..self.v {
            if block.iter().all(|&b| self.open(b, z)) {
                block.push(z);
                let r = self.extend(block, z + 1);
                block.pop();
                if r != Some(false) {
                    return r;
                }
            }
        }
        Some(false)
    }
}

/// Blocks of a `(v, k, 1)`-BIBD developed from a difference family over `Z_v`.
pub fn cyclic_difference_family(v: usize, k: usize, node_budget: u64) -> Option<Vec<Vec<usize>>> {
    abelian_difference_family(v, 1, k, node_budget)
}

/// Blocks of an `(a b, k, 1)`-BIBD developed from a difference family over
/// `Z_a x Z_b`. Element `(x, y)` is labelled `x * b + y`.
pub fn abelian_difference_family(a: usize, b: usize, k: usize, node_budget: u64) -> Option<Vec<Vec<usize>>> {
    let v = a * b;
    if k < 3 || v < 2 || (v - 1) % (k * (k - 1)) != 0 {
        return None;
    }
    let mut st = Abelian { a, b, k, t: (v - 1) / (k * (k - 1)), used: vec![false; v], bases: Vec::new(), nodes: 0, budget: node_budget };
    st.used[0] = true;
    if !st.next_block() {
        return None;
    }
    let mut blocks = Vec::with_capacity(st.t * v);
    for base in &st.bases {
        for g in 0..v {
            blocks.push(base.iter().map(|&x| st.add(x, g)).collect());
        }
    }
    Some(blocks)
}

struct Abelian {
    a: usize,
    b: usize,
    k: usize,
    t: usize,
    used: Vec<bool>,
    bases: Vec<Vec<usize>>,
    nodes: u64,
    budget: u64,
}

impl Abelian {
    fn add(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.a, self.b);
        ((x / b + y / b) % a) * b + (x % b + y % b) % b
    }

    fn sub(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.a, self.b);
        ((x / b + a - y / b) % a) * b + (x % b + b - y % b) % b
    }

    /// Differences `z` would add to `block`, or `None` if one is taken or repeated.
    fn new_differences(&self, block: &[usize], z: usize) -> Option<Vec<usize>> {
        let mut diffs = Vec::with_capacity(2 * block.len());
        for &p in block {
            for d in [self.sub(z, p), self.sub(p, z)] {
                if self.used[d] || diffs.contains(&d) {
                    return None;
                }
                diffs.push(d);
            }
        }
        Some(diffs)
    }

    fn set(&mut self, diffs: &[usize], value: bool) {
        for &d in diffs {
            self.used[d] = value;
        }
    }

    fn next_block(&mut self) -> bool {
        if self.bases.len() == self.t {
            return true;
        }
        // Some block realizes the first unused difference; translate it to hold 0 and d.
        let d = (1..self.used.len()).find(|&d| !self.used[d]).expect("differences remain while blocks remain");
        let Some(diffs) = self.new_differences(&[0], d) else { return false };
        self.set(&diffs, true);
        let ok = self.extend(&mut vec![0, d], 1);
        if !ok {
            self.set(&diffs, false);
        }
        ok
    }

    fn extend(&mut self, block: &mut Vec<usize>, from: usize) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        if block.len() == self.k {
            self.bases.push(block.clone());
            if self.next_block() {
                return true;
            }
            self.bases.pop();
            return false;
        }
        for z in from..self.used.len() {
            if block.contains(&z) {
                continue;
            }
            let Some(diffs) = self.new_differences(block, z) else { continue };
            self.set(&diffs, true);
            block.push(z);
            if self.extend(block, z + 1) {
                return true;
            }
            block.pop();
            self.set(&diffs, false);
        }
        false
    }
}

/// Blocks of an `(m s, k, 1)`-BIBD fixed by `Z_m` acting on `s` point classes
/// of odd size `m`, from base blocks covering every mixed and pure
/// difference once. Point `(class, x)` is labelled `class * m + x`.
pub fn orbit_difference_family(m: usize, s: usize, k: usize, node_budget: u64) -> Option<Vec<Vec<usize>>> {
    if m < 3 || m % 2 == 0 || k < 3 || s == 0 {
        return None;
    }
    let pairs_per_block = k * (k - 1) / 2;
    let total = s * (s - 1) / 2 * m + s * (m - 1) / 2;
    if total % pairs_per_block != 0 {
        return None;
    }
    let mut st = Orbit { m, s, k, t: total / pairs_per_block, used: vec![false; s * s * m], bases: Vec::new(), nodes: 0, budget: node_budget };
    if !st.next_block() {
        return None;
    }
    let mut blocks = Vec::with_capacity(st.t * m);
    for base in &st.bases {
        for shift in 0..m {
            blocks.push(base.iter().map(|&p| p / m * m + (p % m + shift) % m).collect());
        }
    }
    Some(blocks)
}

struct Orbit {
    m: usize,
    s: usize,
    k: usize,
    t: usize,
    /// `used[(a * s + b) * m + d]`: difference `d` from class `a` to class `b >= a`.
    used: Vec<bool>,
    bases: Vec<Vec<usize>>,
    nodes: u64,
    budget: u64,
}

impl Orbit {
    fn key(&self, a: usize, b: usize, d: usize) -> usize {
        (a * self.s + b) * self.m + d
    }

    /// Difference keys of the pair `{p, q}`: one mixed key, or both signs of a pure one.
    fn keys(&self, p: usize, q: usize, out: &mut Vec<usize>) {
        let m = self.m;
        let (a, x, b, y) = (p / m, p % m, q / m, q % m);
        match a.cmp(&b) {
            std::cmp::Ordering::Less => out.push(self.key(a, b, (y + m - x) % m)),
            std::cmp::Ordering::Greater => out.push(self.key(b, a, (x + m - y) % m)),
            std::cmp::Ordering::Equal => {
                out.push(self.key(a, a, (y + m - x) % m));
                out.push(self.key(a, a, (x + m - y) % m));
            }
        }
    }

    /// Keys `z` would add to `block`, or `None` if one is taken or repeated.
    fn new_keys(&self, block: &[usize], z: usize) -> Option<Vec<usize>> {
        let mut keys = Vec::with_capacity(2 * block.len());
        for &p in block {
            if p == z {
                return None;
            }
            self.keys(p, z, &mut keys);
        }
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != keys.len() || keys.iter().any(|&key| self.used[key]) {
            return None;
        }
        Some(keys)
    }

    fn set(&mut self, keys: &[usize], value: bool) {
        for &key in keys {
            self.used[key] = value;
        }
    }

    fn next_block(&mut self) -> bool {
        if self.bases.len() == self.t {
            return true;
        }
        // The first free difference lies in some base block; translate it to start at x = 0.
        let first = (0..self.used.len())
            .find(|&key| {
                let (ab, d) = (key / self.m, key % self.m);
                let (a, b) = (ab / self.s, ab % self.s);
                a <= b && !(a == b && d == 0) && !self.used[key]
            })
            .expect("differences remain while blocks remain");
        let (ab, d) = (first / self.m, first % self.m);
        let (a, b) = (ab / self.s, ab % self.s);
        let start = a * self.m;
        let second = b * self.m + d;
        let keys = self.new_keys(&[start], second).expect("first free difference");
        self.set(&keys, true);
        let mut block = vec![start, second];
        let ok = self.extend(&mut block, 0);
        if !ok {
            self.set(&keys, false);
        }
        ok
    }

    fn extend(&mut self, block: &mut Vec<usize>, from: usize) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        if block.len() == self.k {
            self.bases.push(block.clone());
            if self.next_block() {
                return true;
            }
            self.bases.pop();
            return false;
        }
        for z in from..self.s * self.m {
            let Some(keys) = self.new_keys(block, z) else { continue };
            self.set(&keys, true);
            block.push(z);
            if self.extend(block, z + 1) {
                return true;
            }
            block.pop();
            self.set(&keys, false);
        }
        false
    }
}

/// Stinson-style hill-climbing for a 3-GDD with the given groups.
///
/// Returns `None` when the divisibility conditions fail or the move budget
/// runs out.
pub fn hill_climb_triples(v: usize, groups: &[Vec<usize>], options: &SearchOptions) -> Option<Vec<Vec<usize>>> {
    const NONE: u32 = u32::MAX;
    let group = group_index(v, groups);
    let mut live = vec![0usize; v];
    for x in 0..v {
        live[x] = (0..v).filter(|&y| group[y] != group[x]).count();
    }
    let pairs: usize = live.iter().sum::<usize>() / 2;
    if live.iter().any(|d| d % 2 != 0) || pairs % 3 != 0 {
        return None;
    }
    let target = pairs / 3;
    if target == 0 {
        return Some(Vec::new());
    }
    if groups.len() < 3 {
        return None;
    }
    let mut other = vec![NONE; v * v];
    let mut count = 0usize;
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut partners: Vec<usize> = Vec::with_capacity(v);

    let remove = |other: &mut Vec<u32>, live: &mut Vec<usize>, a: usize, b: usize| {
        let c = other[a * v + b] as usize;
        for (p, q) in [(a, b), (a, c), (b, c)] {
            other[p * v + q] = NONE;
            other[q * v + p] = NONE;
        }
        for x in [a, b, c] {
            live[x] += 2;
        }
    };

    for _ in 0..options.hill_climb_iterations {
        if count == target {
            break;
        }
        let x = loop {
            let x = rng.gen_range(0..v);
            if live[x] > 0 {
                break x;
            }
        };
        partners.clear();
        partners.extend((0..v).filter(|&y| group[y] != group[x] && other[x * v + y] == NONE));
        let y = partners[rng.gen_range(0..partners.len())];
        partners.retain(|&z| z != y && group[z] != group[y]);
        let z = if partners.is_empty() {
            loop {
                let z = rng.gen_range(0..v);
                if group[z] != group[x] && group[z] != group[y] {
                    break z;
                }
            }
        } else {
            partners[rng.gen_range(0..partners.len())]
        };
        for (a, b) in [(x, z), (y, z)] {
            if other[a * v + b] != NONE {
                remove(&mut other, &mut live, a, b);
                count -= 1;
            }
        }
        for (p, q, r) in [(x, y, z), (x, z, y), (y, z, x)] {
            other[p * v + q] = r as u32;
            other[q * v + p] = r as u32;
        }
        for a in [x, y, z] {
            live[a] -= 2;
        }
        count += 1;
    }
    if count != target {
        return None;
    }
    let mut blocks = Vec::with_capacity(target);
    for x in 0..v {
        for y in x + 1..v {
            let z = other[x * v + y];
            if z != NONE && z as usize > y {
                blocks.push(vec![x, y, z as usize]);
            }
        }
    }
    Some(blocks)
}
