use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use super::problem::{cyclic, ConstraintKind, SearchProblem, Var};
use super::{SearchStats, SolveOptions};
use crate::structures::Structure;
use crate::{Error, Result};

/// Choice products at or above this size end the sequential prefix in
/// parallel mode. Independent of the thread count, so the branches (and
/// therefore results and node counts) are too.
const SPLIT_BRANCHES: usize = 64;

struct State<'p> {
    p: &'p SearchProblem,
    vals: Vec<bool>,
    seqs: Vec<Vec<usize>>,
    choice: Vec<usize>,
    stats: SearchStats,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    audit: bool,
    cancel: Option<(&'p AtomicUsize, usize)>,
}

enum Stop {
    Budget,
    Cancelled,
}

impl<'p> State<'p> {
    fn new(p: &'p SearchProblem, opts: &SolveOptions, start: Instant) -> Self {
        let mut vals = vec![false; p.layout.total];
        for (b, f) in p.forced.iter().enumerate() {
            if let Some(v) = f {
                vals[b] = *v;
            }
        }
        State {
            p,
            vals,
            seqs: vec![Vec::new(); p.hints.len()],
            choice: vec![0; p.vars.len()],
            stats: SearchStats::default(),
            max_nodes: opts.max_nodes,
            deadline: opts.max_time.map(|d| start + d),
            audit: opts.audit,
            cancel: None,
        }
    }

    fn tick(&mut self) -> std::result::Result<(), Stop> {
        self.stats.nodes += 1;
        if let Some(m) = self.max_nodes {
            if self.stats.nodes > m {
                return Err(Stop::Budget);
            }
        }
        if self.stats.nodes & 1023 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    return Err(Stop::Budget);
                }
            }
            if let Some((best, me)) = self.cancel {
                if best.load(Ordering::Relaxed) < me {
                    return Err(Stop::Cancelled);
                }
            }
        }
        Ok(())
    }

    fn assign(&mut self, d: usize, val: usize) {
        self.choice[d] = val;
        match &self.p.vars[d] {
            Var::Bit(b) => self.vals[*b as usize] = val == 1,
            Var::Order { hint, v, circular, block, .. } => {
                let seq = &mut self.seqs[*hint];
                let at = if *circular { if *v == 0 { 0 } else { val + 1 } } else { val };
                seq.insert(at, *v);
                let len = seq.len();
                let mut pos = vec![0; len];
                for (i, &u) in seq.iter().enumerate() {
                    pos[u] = i;
                }
                for (b, t) in block {
                    let on = if *circular {
                        cyclic(pos[t[0]], pos[t[1]], pos[t[2]], len)
                    } else {
                        pos[t[0]] < pos[t[1]]
                    };
                    self.vals[*b as usize] = on;
                }
            }
        }
    }

    fn unassign(&mut self, d: usize, val: usize) {
        if let Var::Order { hint, v, circular, .. } = &self.p.vars[d] {
            let at = if *circular { if *v == 0 { 0 } else { val + 1 } } else { val };
            let removed = self.seqs[*hint].remove(at);
            debug_assert_eq!(removed, *v);
        }
    }

    fn violation(&self, d: usize) -> Option<ConstraintKind> {
        if let Var::Order { forced, .. } = &self.p.vars[d] {
            for &(b, v, kind) in forced {
                if self.vals[b as usize] != v {
                    return Some(kind);
                }
            }
        }
        for &c in &self.p.triggers[d] {
            let c = &self.p.constraints[c as usize];
            if c.violated(&self.vals) {
                return Some(c.kind);
            }
        }
        None
    }

    /// Every constraint whose variables are all assigned holds.
    fn audit_prefix(&self, d: usize) {
        for t in 0..=d {
            for &c in &self.p.triggers[t] {
                let c = &self.p.constraints[c as usize];
                assert!(!c.violated(&self.vals), "in-prefix {} constraint violated at depth {d}", c.kind);
            }
        }
    }

    /// Depth-first search from depth `d`. `leaf` returns true to stop.
    fn dfs(
        &mut self,
        d: usize,
        until: usize,
        leaf: &mut dyn FnMut(&mut State<'p>) -> bool,
    ) -> std::result::Result<bool, Stop> {
        if d == until {
            return Ok(leaf(self));
        }
        for val in 0..self.p.vars[d].domain() {
            self.tick()?;
            self.assign(d, val);
            if let Some(kind) = self.violation(d) {
                self.stats.failures.add(kind);
                self.unassign(d, val);
                continue;
            }
            if self.audit {
                self.audit_prefix(d);
            }
            let stop = self.dfs(d + 1, until, leaf);
            self.unassign(d, val);
            if stop? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn replay(&mut self, prefix: &[usize]) {
        for (d, &val) in prefix.iter().enumerate() {
            self.assign(d, val);
        }
    }

    fn structure(&self) -> Structure {
        let p = self.p;
        let mut s = Structure::new(&p.sig, p.n);
        for sym in 0..p.sig.len() {
            let off = p.layout.offsets[sym];
            let size = p.n.pow(p.sig.arity(sym) as u32);
            for i in 0..size {
                if self.vals[off + i] {
                    s.set_index(sym, i, true);
                }
            }
        }
        s
    }
}

fn timeout(mut stats: SearchStats, start: Instant) -> Error {
    stats.elapsed = start.elapsed();
    Error::Timeout(Box::new(stats))
}

pub(crate) fn solve_sequential(p: &SearchProblem, opts: &SolveOptions) -> Result<(Option<Structure>, SearchStats)> {
    let start = Instant::now();
    let mut st = State::new(p, opts, start);
    if let Some(kind) = p.infeasible {
        st.stats.failures.add(kind);
        st.stats.elapsed = start.elapsed();
        return Ok((None, st.stats));
    }
    let mut found = None;
    let n = p.vars.len();
    match st.dfs(0, n, &mut |s| {
        found = Some(s.structure());
        true
    }) {
        Ok(_) => {}
        Err(_) => return Err(timeout(st.stats, start)),
    }
    st.stats.elapsed = start.elapsed();
    Ok((found, st.stats))
}

pub(crate) fn count_sequential(p: &SearchProblem, cap: u64, opts: &SolveOptions) -> Result<(u64, SearchStats)> {
    let start = Instant::now();
    let mut st = State::new(p, opts, start);
    if let Some(kind) = p.infeasible {
        st.stats.failures.add(kind);
        return Ok((0, st.stats));
    }
    let mut count = 0;
    let n = p.vars.len();
    if st
        .dfs(0, n, &mut |_| {
            count += 1;
            count >= cap
        })
        .is_err()
    {
        return Err(timeout(st.stats, start));
    }
    st.stats.elapsed = start.elapsed();
    Ok((count, st.stats))
}

struct Branch {
    found: Option<Structure>,
    stats: SearchStats,
    timed_out: bool,
}

/// Parallel search over the branches below a fixed prefix depth. The result
/// and the node counts equal those of [`solve_sequential`].
pub(crate) fn solve_parallel(p: &SearchProblem, opts: &SolveOptions) -> Result<(Option<Structure>, SearchStats)> {
    let start = Instant::now();
    if p.infeasible.is_some() {
        return solve_sequential(p, opts);
    }
    let mut depth = 0;
    let mut product = 1usize;
    while depth < p.vars.len() && product < SPLIT_BRANCHES {
        product = product.saturating_mul(p.vars[depth].domain());
        depth += 1;
    }
    // sequential prefix; snapshot the counters when each prefix is emitted
    let mut st = State::new(p, opts, start);
    let mut prefixes: Vec<(Vec<usize>, SearchStats)> = Vec::new();
    if st
        .dfs(0, depth, &mut |s| {
            prefixes.push((s.choice[..depth].to_vec(), s.stats.clone()));
            false
        })
        .is_err()
    {
        return Err(timeout(st.stats, start));
    }
    let prefix_total = st.stats.clone();
    if depth == p.vars.len() {
        // the whole search happened in the prefix
        return solve_sequential(p, opts);
    }

    let threads = opts.threads.max(1).min(prefixes.len().max(1));
    let next = AtomicUsize::new(0);
    let best = AtomicUsize::new(usize::MAX);
    let results: Mutex<Vec<Option<Branch>>> = Mutex::new((0..prefixes.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::SeqCst);
                if k >= prefixes.len() {
                    break;
                }
                if best.load(Ordering::SeqCst) < k {
                    continue;
                }
                let mut b = State::new(p, opts, start);
                b.cancel = Some((&best, k));
                b.replay(&prefixes[k].0);
                let mut found = None;
                let out = b.dfs(depth, p.vars.len(), &mut |s| {
                    found = Some(s.structure());
                    true
                });
                let timed_out = match out {
                    Ok(_) => false,
                    Err(Stop::Cancelled) => continue,
                    Err(Stop::Budget) => true,
                };
                if found.is_some() {
                    best.fetch_min(k, Ordering::SeqCst);
                }
                results.lock().unwrap()[k] = Some(Branch { found, stats: b.stats, timed_out });
            });
        }
    });
    let results = results.into_inner().unwrap();
    let winner = best.load(Ordering::SeqCst);
    let last = if winner == usize::MAX { prefixes.len() } else { winner + 1 };
    let mut total = if winner == usize::MAX { prefix_total } else { prefixes[winner].1.clone() };
    let mut found = None;
    for (k, r) in results.into_iter().take(last).enumerate() {
        let r = r.expect("branches before the winner complete");
        total.absorb(&r.stats);
        if r.timed_out || opts.max_nodes.is_some_and(|m| total.nodes > m) {
            return Err(timeout(total, start));
        }
        if k == winner {
            found = r.found;
        }
    }
    total.elapsed = start.elapsed();
    Ok((found, total))
}
