use std::collections::HashMap;

use super::class::{minimize_bounds, LocalClass};
use crate::logic::QfDefinition;
use crate::structures::{are_isomorphic, canonical_form, Structure};
use crate::{Error, Result};

/// A membership oracle usable from worker threads.
pub type Pred<'a> = &'a (dyn Fn(&Structure) -> bool + Sync);

/// Per-size tallies of a mining run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeCount {
    pub n: usize,
    pub ambient: usize,
    pub members: usize,
    pub bounds: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MiningReport {
    pub bounds: Vec<Structure>,
    pub per_size: Vec<SizeCount>,
}

/// Evaluates `pred` on every item, splitting the work over threads.
fn eval_all(pred: Pred<'_>, items: &[Structure]) -> Vec<bool> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(8);
    if workers <= 1 || items.len() < 64 {
        return items.iter().map(pred).collect();
    }
    let chunk = items.len().div_ceil(workers);
    std::thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|c| s.spawn(move || c.iter().map(pred).collect::<Vec<bool>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("mining worker")).collect()
    })
}

fn vertex_deleted(x: &Structure, v: usize) -> Structure {
    let rest: Vec<usize> = (0..x.n()).filter(|&u| u != v).collect();
    x.induced(&rest).expect("in range")
}

/// Minimal bounds of `pred` inside `ambient` on at most `max_n` vertices,
/// with per-size counts. Fails if `pred` is not hereditary on that range.
pub fn mine_bounds(pred: Pred<'_>, ambient: &LocalClass, max_n: usize) -> Result<MiningReport> {
    let levels = ambient.levels(max_n)?;
    let mut known: HashMap<Structure, bool> = HashMap::new();
    let mut bounds = Vec::new();
    let mut per_size = Vec::new();
    for (n, level) in levels.iter().enumerate() {
        let verdicts = eval_all(pred, level);
        let mut count = SizeCount { n, ambient: level.len(), members: 0, bounds: 0 };
        for (x, &inside) in level.iter().zip(&verdicts) {
            let subs_inside = (0..x.n()).all(|v| {
                let sub = canonical_form(&vertex_deleted(x, v));
                known.get(&sub).copied().unwrap_or(true)
            });
            if inside {
                count.members += 1;
                if !subs_inside {
                    let bad = (0..x.n())
                        .map(|v| vertex_deleted(x, v))
                        .find(|s| known.get(&canonical_form(s)) == Some(&false))
                        .expect("witness");
                    return Err(Error::logic(format!(
                        "predicate is not hereditary: it accepts {x:?} but rejects its substructure {bad:?}"
                    )));
                }
            } else if subs_inside {
                count.bounds += 1;
                bounds.push(x.clone());
            }
            known.insert(canonical_form(x), inside);
        }
        per_size.push(count);
    }
    Ok(MiningReport { bounds, per_size })
}

pub fn minimal_bounds_relative(pred: Pred<'_>, ambient: &LocalClass, max_n: usize) -> Result<Vec<Structure>> {
    Ok(mine_bounds(pred, ambient, max_n)?.bounds)
}

/// Members of both classes. Bound sets are merged and re-minimized; if either
/// side has axioms the result is presented by axioms.
pub fn intersect(c1: &LocalClass, c2: &LocalClass) -> Result<LocalClass> {
    c1.merge(c2)
}

/// `C1 ∪ C2` over all structures of the signature.
pub fn union_classes(c1: &LocalClass, c2: &LocalClass, max_n: usize) -> Result<LocalClass> {
    union_classes_within(c1, c2, &LocalClass::everything(c1.signature()), max_n)
}

/// `(C1 ∪ C2) ∩ ambient`, with bounds mined inside `ambient`. Needs `max_n`
/// at least the sum of the two windows.
pub fn union_classes_within(
    c1: &LocalClass,
    c2: &LocalClass,
    ambient: &LocalClass,
    max_n: usize,
) -> Result<LocalClass> {
    c1.signature().expect_eq(c2.signature(), "class union")?;
    c1.signature().expect_eq(ambient.signature(), "class union")?;
    let need = c1.window() + c2.window();
    if max_n < need {
        return Err(Error::input(format!("class union needs max_n >= {need}, got {max_n}")));
    }
    let pred = |x: &Structure| c1.contains_unchecked(x) || c2.contains_unchecked(x);
    let mined = minimal_bounds_relative(&pred, ambient, max_n)?;
    intersect(ambient, &LocalClass::from_bounds(c1.signature(), mined)?)
}

/// Minimal bounds of `{X ∈ ambient : reduct(D, X) is target-bound free}`.
/// Mined directly and compared with the ambient structures whose reduct is
/// isomorphic to a target bound; a mismatch is an error.
pub fn preimage_bounds(
    d: &QfDefinition,
    target_bounds: &[Structure],
    ambient: &LocalClass,
    max_n: usize,
) -> Result<Vec<Structure>> {
    d.carrier().expect_eq(ambient.signature(), "preimage bounds")?;
    for b in target_bounds {
        d.source().expect_eq(b.signature(), "preimage bounds")?;
    }
    let free = |x: &Structure| {
        let r = d.reduct_unchecked(x);
        target_bounds.iter().all(|b| !crate::structures::embeds(b, &r).expect("same signature"))
    };
    let mined = minimal_bounds_relative(&free, ambient, max_n)?;
    let mut direct = Vec::new();
    for level in ambient.levels(max_n)? {
        for x in level {
            let r = d.reduct_unchecked(&x);
            let mut hit = false;
            for b in target_bounds {
                if b.n() == r.n() && are_isomorphic(b, &r)? {
                    hit = true;
                    break;
                }
            }
            if hit {
                direct.push(x);
            }
        }
    }
    let direct = minimize_bounds(&direct)?;
    if mined != direct {
        let only_mined: Vec<_> = mined.iter().filter(|x| !direct.contains(x)).collect();
        let only_direct: Vec<_> = direct.iter().filter(|x| !mined.contains(x)).collect();
        return Err(Error::logic(format!(
            "mined preimage bounds differ from reduct preimages: only mined {only_mined:?}, only direct {only_direct:?}"
        )));
    }
    Ok(mined)
}

/// The first ambient structure on `n + 1..=max_n` vertices where `pred`
/// disagrees with "every substructure on at most `n` vertices satisfies
/// `pred`".
pub fn locality_witness(pred: Pred<'_>, ambient: &LocalClass, n: usize, max_n: usize) -> Result<Option<Structure>> {
    if max_n <= n {
        return Ok(None);
    }
    let levels = ambient.levels(max_n)?;
    let mut memo: HashMap<Structure, bool> = HashMap::new();
    for level in &levels[..=n] {
        for (x, v) in level.iter().zip(eval_all(pred, level)) {
            memo.insert(x.clone(), v);
        }
    }
    for level in &levels[n + 1..] {
        let verdicts = eval_all(pred, level);
        for (x, &v) in level.iter().zip(&verdicts) {
            let mut local = true;
            let mut subset: Vec<usize> = Vec::new();
            'sizes: for k in 0..=n {
                let mut found = false;
                for_each_subset(x.n(), k, &mut subset, &mut |s| {
                    if !found && !memo[&canonical_form(&x.induced(s).expect("in range"))] {
                        found = true;
                    }
                });
                if found {
                    local = false;
                    break 'sizes;
                }
            }
            if local != v {
                return Ok(Some(x.clone()));
            }
        }
    }
    Ok(None)
}

/// True iff `pred` agrees with its `n`-local approximation on every ambient
/// structure with more than `n` and at most `max_n` vertices.
pub fn is_local_up_to(pred: Pred<'_>, ambient: &LocalClass, n: usize, max_n: usize) -> Result<bool> {
    Ok(locality_witness(pred, ambient, n, max_n)?.is_none())
}

fn for_each_subset(m: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    let start = cur.last().map_or(0, |&l| l + 1);
    for v in start..m {
        if m - v < k - cur.len() {
            break;
        }
        cur.push(v);
        for_each_subset(m, k, cur, f);
        cur.pop();
    }
}
