//! Kauffman bracket evaluators: a skein-recursion engine and a frontier
//! contraction engine for cables, plus an engine dispatcher.
//!
//! All engines share the normalization <unknot> = 1. The unreduced variants
//! (one factor of delta per circle, empty diagram = 1) are what the colored
//! Jones computation consumes.

use std::collections::BTreeMap;

use crate::diagram::{dart, dart_crossing, dart_slot, Dart, Diagram};
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;
use crate::ribbon;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Engine {
    Skein,
    Subgraph,
    Fast,
}

impl std::str::FromStr for Engine {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "skein" => Ok(Engine::Skein),
            "subgraph" => Ok(Engine::Subgraph),
            "fast" => Ok(Engine::Fast),
            other => Err(Error::Other(format!("unknown engine {:?}", other))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BracketOptions {
    pub naive_limit: usize,
    pub frontier_cap: usize,
}

impl Default for BracketOptions {
    fn default() -> Self {
        BracketOptions { naive_limit: ribbon::DEFAULT_NAIVE_LIMIT, frontier_cap: 20 }
    }
}

/// Unreduced bracket (delta per circle) by resolving the first crossing both
/// ways and recursing; circles close as their last crossing resolves.
pub fn unreduced_skein(d: &Diagram, limit: usize) -> Result<LaurentPoly> {
    let c = d.crossing_count();
    if c > limit {
        return Err(Error::TooLarge { crossings: c, limit });
    }
    let unknot_factor = LaurentPoly::delta().pow(d.unknot_components());
    if c == 0 {
        return Ok(unknot_factor);
    }
    let ends = d.arc_ends();
    let mut partner: Vec<Dart> = (0..4 * c).map(|dd| d.arc_partner(&ends, dd)).collect();
    let body = skein_rec(0, c, &mut partner);
    Ok(&body * &unknot_factor)
}

fn skein_rec(x: usize, c: usize, partner: &mut Vec<Dart>) -> LaurentPoly {
    if x == c {
        return LaurentPoly::one();
    }
    let mut total = LaurentPoly::zero();
    for (pairs, exp) in [([(0usize, 1usize), (2, 3)], 1i64), ([(1, 2), (3, 0)], -1)] {
        let mut undo: Vec<(Dart, Dart, Dart, Dart)> = Vec::new();
        let mut closures = 0u32;
        for (s, t) in pairs {
            let p = dart(x, s);
            let q = dart(x, t);
            let a = partner[p];
            let b = partner[q];
            if a == q {
                closures += 1;
            } else {
                undo.push((a, partner[a], b, partner[b]));
                partner[a] = b;
                partner[b] = a;
            }
        }
        let sub = skein_rec(x + 1, c, partner);
        let contrib = &LaurentPoly::monomial(exp, 1) * &LaurentPoly::delta().pow(closures);
        total += &(&contrib * &sub);
        for (a, pa, b, pb) in undo.into_iter().rev() {
            partner[a] = pa;
            partner[b] = pb;
        }
    }
    total
}

/// Bracket via the skein recursion, <unknot> = 1.
pub fn skein_bracket(d: &Diagram, limit: usize) -> Result<LaurentPoly> {
    let unreduced = unreduced_skein(d, limit)?;
    unreduced.exact_div(&LaurentPoly::delta())
}

/// Cyclic boundary of the grown disk region during contraction. Crossings are
/// glued as 4-gons; their boundary cycles enter reversed because the region
/// and the crossing face each other. A gluing that would join two distinct
/// cycles of the same component (creating genus) is rejected, which is what
/// forces contraction orders to keep the region a disk.
#[derive(Clone)]
struct Boundary {
    next: BTreeMap<u64, u64>,
    prev: BTreeMap<u64, u64>,
}

impl Boundary {
    fn new() -> Self {
        Boundary { next: BTreeMap::new(), prev: BTreeMap::new() }
    }

    fn len(&self) -> usize {
        self.next.len()
    }

    fn contains(&self, p: u64) -> bool {
        self.next.contains_key(&p)
    }

    fn insert_cycle(&mut self, ports: &[u64]) {
        for i in 0..ports.len() {
            let a = ports[i];
            let b = ports[(i + 1) % ports.len()];
            self.next.insert(a, b);
            self.prev.insert(b, a);
        }
    }

    fn remove(&mut self, p: u64) {
        let n = self.next.remove(&p).unwrap();
        let q = self.prev.remove(&p).unwrap();
        if n == p {
            return;
        }
        self.next.insert(q, n);
        self.prev.insert(n, q);
    }

    fn same_cycle(&self, a: u64, b: u64) -> bool {
        let mut cur = a;
        loop {
            if cur == b {
                return true;
            }
            cur = self.next[&cur];
            if cur == a {
                return false;
            }
        }
    }

    /// Glue a band between ports a and b. Returns false when the gluing is
    /// not disk-compatible (same cycle but not adjacent).
    fn glue(&mut self, a: u64, b: u64) -> bool {
        if self.same_cycle(a, b) {
            if self.next[&a] == b || self.next[&b] == a {
                self.remove(a);
                self.remove(b);
                true
            } else {
                false
            }
        } else {
            // merge: next(a)..prev(a) followed by next(b)..prev(b)
            let (na, pa) = (self.next[&a], self.prev[&a]);
            let (nb, pb) = (self.next[&b], self.prev[&b]);
            if na == a && nb == b {
                self.next.remove(&a);
                self.prev.remove(&a);
                self.next.remove(&b);
                self.prev.remove(&b);
                return true;
            }
            if na == a {
                // a is a singleton cycle: just delete both; b's cycle closes over
                self.next.remove(&a);
                self.prev.remove(&a);
                self.remove(b);
                return true;
            }
            if nb == b {
                self.next.remove(&b);
                self.prev.remove(&b);
                self.remove(a);
                return true;
            }
            self.next.remove(&a);
            self.prev.remove(&a);
            self.next.remove(&b);
            self.prev.remove(&b);
            self.next.insert(pa, nb);
            self.prev.insert(nb, pa);
            self.next.insert(pb, na);
            self.prev.insert(na, pb);
            true
        }
    }

    fn cycle_from(&self, start: u64) -> Vec<u64> {
        let mut out = vec![start];
        let mut cur = self.next[&start];
        while cur != start {
            out.push(cur);
            cur = self.next[&cur];
        }
        out
    }
}

/// One absorption step on the boundary structure. Returns the attached legs
/// (slot, old port) in gluing order, or None if the crossing cannot be glued
/// disk-compatibly right now.
fn glue_crossing(bd: &mut Boundary, d: &Diagram, ends: &[[Dart; 2]], x: usize) -> Option<Vec<(usize, u64)>> {
    // ports are dart ids; a leg of x is encoded by its own dart, an open
    // strand end by the dart it points at
    let legs: Vec<u64> = (0..4).map(|s| dart(x, s) as u64).collect();
    // the crossing boundary enters reversed
    bd.insert_cycle(&[legs[0], legs[3], legs[2], legs[1]]);
    let mut glued = Vec::new();
    // self arcs first
    let mut self_arcs = Vec::new();
    let mut attach = Vec::new();
    for s in 0..4 {
        let far = d.arc_partner(ends, dart(x, s));
        if dart_crossing(far) == x {
            if dart_slot(far) > s {
                self_arcs.push((s, dart_slot(far)));
            }
        } else if bd.contains(far as u64) {
            attach.push((s, far as u64));
        }
    }
    for &(s, t) in &self_arcs {
        if !bd.glue(dart(x, s) as u64, dart(x, t) as u64) {
            return None;
        }
    }
    // glue attached legs; try until none can be glued
    let mut remaining = attach;
    while !remaining.is_empty() {
        let mut progressed = false;
        let mut i = 0;
        while i < remaining.len() {
            let (s, far) = remaining[i];
            let mut trial = bd.clone();
            if trial.glue(dart(x, s) as u64, far) {
                *bd = trial;
                glued.push((s, far));
                remaining.remove(i);
                progressed = true;
            } else {
                i += 1;
            }
        }
        if !progressed {
            return None;
        }
    }
    Some(glued)
}

#[derive(Clone, Debug)]
pub struct ContractionPlan {
    pub order: Vec<usize>,
    pub peak_width: usize,
}

/// Deterministic greedy contraction order: prefer the unabsorbed crossing
/// with the most open legs on the frontier (ties to the smallest index), and
/// only start a fresh component when the frontier is empty.
pub fn choose_order(d: &Diagram) -> Result<ContractionPlan> {
    let c = d.crossing_count();
    if c == 0 {
        return Ok(ContractionPlan { order: Vec::new(), peak_width: 0 });
    }
    let ends = d.arc_ends();
    'starts: for start in 0..c {
        let mut bd = Boundary::new();
        let mut absorbed = vec![false; c];
        let mut order = Vec::with_capacity(c);
        let mut peak = 0usize;
        let mut try_absorb = |bd: &mut Boundary, absorbed: &mut Vec<bool>, order: &mut Vec<usize>, x: usize| -> bool {
            let mut trial = bd.clone();
            if glue_crossing(&mut trial, d, &ends, x).is_some() {
                *bd = trial;
                absorbed[x] = true;
                order.push(x);
                true
            } else {
                false
            }
        };
        if !try_absorb(&mut bd, &mut absorbed, &mut order, start) {
            continue 'starts;
        }
        peak = peak.max(bd.len());
        while order.len() < c {
            // score candidates by number of attached legs
            let mut best: Option<(usize, usize)> = None;
            for x in 0..c {
                if absorbed[x] {
                    continue;
                }
                let att = (0..4)
                    .filter(|&s| {
                        let far = d.arc_partner(&ends, dart(x, s));
                        bd.contains(far as u64)
                    })
                    .count();
                if att == 0 && bd.len() > 0 {
                    continue;
                }
                if best.map(|(batt, _)| att > batt).unwrap_or(true) {
                    best = Some((att, x));
                }
            }
            let mut placed = false;
            if let Some((_, x)) = best {
                if try_absorb(&mut bd, &mut absorbed, &mut order, x) {
                    placed = true;
                }
            }
            if !placed {
                // fall back to scanning all candidates in index order
                for x in 0..c {
                    if !absorbed[x]
                        && try_absorb(&mut bd, &mut absorbed, &mut order, x)
                    {
                        placed = true;
                        break;
                    }
                }
            }
            if !placed {
                continue 'starts;
            }
            peak = peak.max(bd.len());
        }
        return Ok(ContractionPlan { order, peak_width: peak });
    }
    Err(Error::NoContractionOrder)
}

type Matching = Vec<u8>;

/// Unreduced bracket via frontier contraction: crossings are absorbed one at
/// a time into a tangle state holding exact amplitudes per non-crossing
/// boundary matching.
pub fn fast_unreduced(d: &Diagram, cap: usize) -> Result<LaurentPoly> {
    let c = d.crossing_count();
    let unknot_factor = LaurentPoly::delta().pow(d.unknot_components());
    if c == 0 {
        return Ok(unknot_factor);
    }
    let plan = choose_order(d)?;
    if plan.peak_width > cap {
        return Err(Error::FrontierTooWide { width: plan.peak_width, cap });
    }
    let ends = d.arc_ends();
    let mut bd = Boundary::new();
    // frontier as an ordered vector of ports; amplitudes keyed by matchings
    let mut frontier: Vec<u64> = Vec::new();
    let mut amps: BTreeMap<Matching, LaurentPoly> = BTreeMap::new();
    amps.insert(Vec::new(), LaurentPoly::one());
    let mut total_closed_factor = LaurentPoly::one();

    for &x in &plan.order {
        glue_crossing(&mut bd, d, &ends, x).ok_or(Error::NoContractionOrder)?;
        // rebuild the frontier vector deterministically
        let new_frontier: Vec<u64> = if bd.len() == 0 {
            Vec::new()
        } else {
            let start = *bd.next.keys().next().unwrap();
            bd.cycle_from(start)
        };
        let old_pos: BTreeMap<u64, usize> =
            frontier.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        // wiring nodes: 0..old_len = old frontier ports, then the 4 legs of x
        let old_len = frontier.len();
        let node_leg = |s: usize| old_len + s;
        let nn = old_len + 4;
        // connections that do not depend on the resolution: arcs into the
        // absorbed region and self arcs of x
        let mut fixed_edges: Vec<(usize, usize)> = Vec::new();
        for s in 0..4 {
            let far = d.arc_partner(&ends, dart(x, s));
            if dart_crossing(far) == x {
                if dart_slot(far) > s {
                    fixed_edges.push((node_leg(s), node_leg(dart_slot(far))));
                }
            } else if let Some(&p) = old_pos.get(&(far as u64)) {
                fixed_edges.push((node_leg(s), p));
            }
        }
        // new frontier endpoints in wiring-node terms
        let open: Vec<usize> = new_frontier
            .iter()
            .map(|&port| {
                let pd = port as usize;
                if dart_crossing(pd) == x {
                    node_leg(dart_slot(pd))
                } else {
                    old_pos[&port]
                }
            })
            .collect();
        let mut open_index: BTreeMap<usize, usize> = BTreeMap::new();
        for (fi, &node) in open.iter().enumerate() {
            open_index.insert(node, fi);
        }
        let mut new_amps: BTreeMap<Matching, LaurentPoly> = BTreeMap::new();
        for (matching, amp) in &amps {
            for (pairs, exp) in [([(0usize, 1usize), (2, 3)], 1i64), ([(1, 2), (3, 0)], -1)] {
                let mut edges: Vec<(usize, usize)> = fixed_edges.clone();
                for (i, &j) in matching.iter().enumerate() {
                    if i < j as usize {
                        edges.push((i, j as usize));
                    }
                }
                for (s, t) in pairs {
                    edges.push((node_leg(s), node_leg(t)));
                }
                let mut inc: Vec<Vec<usize>> = vec![Vec::new(); nn];
                for (ei, &(a, b)) in edges.iter().enumerate() {
                    inc[a].push(ei);
                    inc[b].push(ei);
                }
                // walk strands edge by edge; open nodes have degree one
                let mut edge_seen = vec![false; edges.len()];
                let mut new_matching: Matching = vec![0; open.len()];
                for (fi, &start_node) in open.iter().enumerate() {
                    debug_assert_eq!(inc[start_node].len(), 1);
                    let first = inc[start_node][0];
                    if edge_seen[first] {
                        continue;
                    }
                    let mut cur_edge = first;
                    let mut cur_node = start_node;
                    loop {
                        edge_seen[cur_edge] = true;
                        let (a, b) = edges[cur_edge];
                        cur_node = if a == cur_node { b } else { a };
                        if inc[cur_node].len() == 1 {
                            break;
                        }
                        debug_assert_eq!(inc[cur_node].len(), 2);
                        cur_edge = if inc[cur_node][0] == cur_edge {
                            inc[cur_node][1]
                        } else {
                            inc[cur_node][0]
                        };
                    }
                    let fj = open_index[&cur_node];
                    new_matching[fi] = fj as u8;
                    new_matching[fj] = fi as u8;
                }
                let mut closures = 0u32;
                for start_edge in 0..edges.len() {
                    if edge_seen[start_edge] {
                        continue;
                    }
                    let mut cur_edge = start_edge;
                    let mut cur_node = edges[start_edge].0;
                    loop {
                        edge_seen[cur_edge] = true;
                        let (a, b) = edges[cur_edge];
                        cur_node = if a == cur_node { b } else { a };
                        debug_assert_eq!(inc[cur_node].len(), 2);
                        cur_edge = if inc[cur_node][0] == cur_edge {
                            inc[cur_node][1]
                        } else {
                            inc[cur_node][0]
                        };
                        if cur_edge == start_edge {
                            break;
                        }
                    }
                    closures += 1;
                }
                let weight = &LaurentPoly::monomial(exp, 1) * &LaurentPoly::delta().pow(closures);
                let add = &weight * amp;
                new_amps
                    .entry(new_matching.clone())
                    .and_modify(|p| *p += &add)
                    .or_insert(add);
            }
        }
        new_amps.retain(|_, p| !p.is_zero());
        frontier = new_frontier;
        amps = new_amps;
        if frontier.is_empty() {
            // component finished; fold its scalar into the running product
            let p = amps
                .get(&Vec::new())
                .cloned()
                .unwrap_or_else(LaurentPoly::zero);
            total_closed_factor = &total_closed_factor * &p;
            amps = BTreeMap::from([(Vec::new(), LaurentPoly::one())]);
        }
    }
    debug_assert!(frontier.is_empty());
    let (_, last) = amps.iter().next().ok_or_else(|| Error::Other("empty amplitude".into()))?;
    Ok(&(&total_closed_factor * last) * &unknot_factor)
}

/// Bracket via frontier contraction, <unknot> = 1.
pub fn fast_bracket(d: &Diagram, cap: usize) -> Result<LaurentPoly> {
    fast_unreduced(d, cap)?.exact_div(&LaurentPoly::delta())
}

pub fn bracket_with(d: &Diagram, engine: Engine, opts: &BracketOptions) -> Result<LaurentPoly> {
    match engine {
        Engine::Skein => skein_bracket(d, opts.naive_limit),
        Engine::Subgraph => ribbon::subgraph_bracket(d, opts.naive_limit),
        Engine::Fast => fast_bracket(d, opts.frontier_cap),
    }
}

/// Unreduced bracket by the cheapest suitable engine: skein up to 14
/// crossings, otherwise the frontier engine.
pub fn auto_unreduced(d: &Diagram, opts: &BracketOptions) -> Result<LaurentPoly> {
    if d.crossing_count() <= 14 {
        unreduced_skein(d, opts.naive_limit)
    } else {
        match fast_unreduced(d, opts.frontier_cap) {
            Ok(p) => Ok(p),
            Err(Error::NoContractionOrder) if d.crossing_count() <= opts.naive_limit => {
                unreduced_skein(d, opts.naive_limit)
            }
            Err(e) => Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures;
    use crate::ribbon::subgraph_bracket;

    #[test]
    fn unknot_and_circles() {
        assert_eq!(skein_bracket(&fixtures::unknot(), 22).unwrap(), LaurentPoly::one());
        let two = crate::diagram::parse_pd("U2 PD[]").unwrap();
        assert_eq!(skein_bracket(&two, 22).unwrap(), LaurentPoly::delta());
        let (u2, _) = fixtures::unknot().cable(2).unwrap();
        assert_eq!(fast_bracket(&u2, 20).unwrap(), LaurentPoly::delta());
    }

    #[test]
    fn kink_values() {
        // negative kink multiplies the bracket by -A^-3
        let kink = crate::diagram::parse_pd("PD[X[1,2,2,1]]").unwrap();
        assert_eq!(kink.writhe(), -1);
        let b = skein_bracket(&kink, 22).unwrap();
        assert_eq!(b, LaurentPoly::monomial(-3, -1));
    }

    #[test]
    fn three_way_agreement_fixtures() {
        for d in [
            fixtures::unknot(),
            fixtures::trefoil(),
            fixtures::trefoil_left(),
            fixtures::figure8(),
            fixtures::clasp2(),
            fixtures::pseudo_trefoil(),
            fixtures::trefoil_kinked(),
        ] {
            let s = skein_bracket(&d, 22).unwrap();
            let g = subgraph_bracket(&d, 22).unwrap();
            let f = fast_bracket(&d, 20).unwrap();
            assert_eq!(s, g, "skein vs subgraph on {}", d);
            assert_eq!(s, f, "skein vs fast on {}", d);
        }
    }

    #[test]
    fn mirror_symmetry() {
        for d in [fixtures::trefoil(), fixtures::figure8(), fixtures::clasp2(), fixtures::pseudo_trefoil()] {
            let b = skein_bracket(&d, 22).unwrap();
            let bm = skein_bracket(&d.mirror(), 22).unwrap();
            assert_eq!(bm, b.invert_variable());
        }
    }

    #[test]
    fn cable_brackets_agree() {
        for d in [fixtures::trefoil(), fixtures::clasp2()] {
            let (c2, _) = d.cable(2).unwrap();
            let s = skein_bracket(&c2, 22).unwrap();
            let f = fast_bracket(&c2, 20).unwrap();
            assert_eq!(s, f, "2-cable of {}", d);
        }
    }

    #[test]
    fn adequate_bracket_degree_is_sharp() {
        for d in [fixtures::trefoil(), fixtures::figure8()] {
            let b = skein_bracket(&d, 22).unwrap();
            let ctx = crate::ribbon::AllAContext::new(&d);
            let m = d.crossing_count() as i64 + 2 * ctx.v as i64 - 2;
            assert_eq!(b.max_deg(), Some(m));
        }
        // non-adequate: strictly below M
        for d in [fixtures::clasp2(), fixtures::pseudo_trefoil()] {
            let b = skein_bracket(&d, 22).unwrap();
            let ctx = crate::ribbon::AllAContext::new(&d);
            let m = d.crossing_count() as i64 + 2 * ctx.v as i64 - 2;
            assert!(b.max_deg().unwrap() < m);
        }
    }

    #[test]
    fn order_is_deterministic_and_bounded() {
        let d = fixtures::trefoil();
        let p1 = choose_order(&d).unwrap();
        let p2 = choose_order(&d).unwrap();
        assert_eq!(p1.order, p2.order);
        assert!(p1.peak_width <= 8);
        let (c3, _) = d.cable(3).unwrap();
        let p3 = choose_order(&c3).unwrap();
        assert!(p3.peak_width <= 14, "peak width {}", p3.peak_width);
    }

    #[test]
    fn trefoil_cube_degree() {
        let d = fixtures::trefoil();
        let (c3, _) = d.cable(3).unwrap();
        let b = fast_bracket(&c3, 20).unwrap();
        // M(D^3) = 9c + 2*3*s_A - 2 = 27 + 12 = 39 for the A-adequate cable
        assert_eq!(b.max_deg(), Some(39));
    }
}
