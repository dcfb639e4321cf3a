//! Cancellation machinery for cables of reduced non-A-adequate diagrams:
//! labeling the cabled crossings of the inadequacy witness, the interval
//! a(H), the starting edge s_a, the region sequences, the free set G(H),
//! the local genus count g_a, equivalence classes of spanning subgraphs, and
//! the verification of the per-class degree drop.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use crate::bracket::{fast_bracket, BracketOptions};
use crate::diagram::{CableMap, Diagram, UnionFind};
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;
use crate::ribbon::{self, AllAContext, SpanningSubgraph};
use crate::states::{
    self, embed, is_a_adequate, resolve, Embedding, KauffmanState, MapEdge, StateGraph,
    FLAG_EDGE,
};

/// The binomial sum of the cancellation lemma:
/// sum over i of C(k,i) A^{c-2i} delta^{d+i}. Its maximum degree is at most
/// c + 2d - 4k, which is what makes whole equivalence classes drop degree.
pub fn binomial_cancellation(c: i64, d: u32, k: u32) -> LaurentPoly {
    let mut sum = LaurentPoly::zero();
    let mut binom = BigInt::from(1);
    for i in 0..=k {
        let term = LaurentPoly::monomial(c - 2 * i as i64, binom.clone());
        sum += &(&term * &LaurentPoly::delta().pow(d + i));
        binom = &binom * BigInt::from((k - i) as i64) / BigInt::from(i as i64 + 1);
    }
    sum
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Right,
    Left,
    /// Loops live in Omega_0, which both sides share.
    Center,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct EdgeLabel {
    /// Region index i of Omega_i.
    pub region: usize,
    pub side: Side,
    pub number: i64,
}

/// Which end of the loop nesting chain receives label 1. Rule (b) fixes the
/// labels only up to this reversal; verification selects the convention.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LoopOrder {
    Forward,
    Reversed,
}

/// Which of the two edge blocks is called R. The dividing-curve side choice
/// is arbitrary in the source conventions.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Chirality {
    Standard,
    Mirrored,
}

pub struct CableLabeling {
    pub n: usize,
    pub violating: usize,
    pub cable: Diagram,
    pub map: CableMap,
    pub ctx: AllAContext,
    /// Circles S_0 .. S_{n-1}.
    pub s_family: Vec<usize>,
    /// Region ids Omega_0 .. Omega_{n-1}, then the outer region.
    pub omega: Vec<usize>,
    pub outer_region: usize,
    /// Region id of every cable edge.
    pub edge_region: Vec<usize>,
    /// The n^2 cabled crossings of the violating crossing.
    pub en: Vec<usize>,
    /// Loop edges of e^n ordered by label: loops[j] carries label 2j+1.
    pub loops: Vec<usize>,
    pub labels: BTreeMap<usize, EdgeLabel>,
    /// (region index, side, number) -> edge, for the e^n edges.
    pub by_label: BTreeMap<(usize, u8, i64), usize>,
    pub orientation: LoopOrder,
    pub chirality: Chirality,
}

fn side_code(s: Side) -> u8 {
    match s {
        Side::Right => 0,
        Side::Left => 1,
        Side::Center => 2,
    }
}

impl CableLabeling {
    pub fn label_of(&self, edge: usize) -> EdgeLabel {
        self.labels[&edge]
    }

    pub fn edge_at(&self, region: usize, side: Side, number: i64) -> Option<usize> {
        self.by_label.get(&(region, side_code(side), number)).copied()
    }

    pub fn loop_by_number(&self, number: i64) -> Option<usize> {
        let idx = (number - 1) / 2;
        self.loops.get(idx as usize).copied()
    }

    pub fn max_label(&self) -> i64 {
        2 * self.n as i64 - 1
    }

    /// Edges of e^n in a given region and side, sorted by number.
    pub fn region_side_edges(&self, region: usize, side: Side) -> Vec<usize> {
        if region == 0 {
            return self.loops.clone();
        }
        let mut v: Vec<(i64, usize)> = self
            .labels
            .iter()
            .filter(|(_, l)| l.region == region && l.side == side)
            .map(|(&e, l)| (l.number, e))
            .collect();
        v.sort_unstable();
        v.into_iter().map(|(_, e)| e).collect()
    }
}

/// Pick the inadequacy witness: a loop edge one of whose adjacent faces
/// contains no other loop edge (innermost), ties to the lowest index.
fn pick_violating(d: &Diagram) -> Result<usize> {
    let g = resolve(d, &KauffmanState::all_a(d.crossing_count()));
    let loops: Vec<usize> = (0..d.crossing_count()).filter(|&x| g.is_loop_edge(x)).collect();
    if loops.is_empty() {
        return Err(Error::NotApplicable("diagram is A-adequate".into()));
    }
    let emb = embed(d, &g);
    let mut face_loops: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for &x in &loops {
        let (f0, f1) = emb.edge_faces(x);
        face_loops.entry(f0).or_default().insert(x);
        face_loops.entry(f1).or_default().insert(x);
    }
    for &x in &loops {
        let (f0, f1) = emb.edge_faces(x);
        for f in [f0, f1] {
            if face_loops[&f].len() == 1 {
                return Ok(x);
            }
        }
    }
    Ok(loops[0])
}

/// Map each all-A circle of the cable to the original circle it covers.
fn circle_projection(
    d: &Diagram,
    orig_graph: &StateGraph,
    cable: &Diagram,
    cable_graph: &StateGraph,
    n: usize,
) -> Result<Vec<usize>> {
    // original circle of each original arc
    let ends = d.arc_ends();
    let mut arc_circle = vec![usize::MAX; d.arc_count() as usize + 1];
    for a in 1..=d.arc_count() as usize {
        let dd = ends[a][0];
        let x = dd / 4;
        let slot = dd % 4;
        let side = usize::from(slot >= 2); // all-A smoothing sides
        arc_circle[a] = orig_graph.circle_of(x, side);
    }
    let cends = cable.arc_ends();
    let mut proj = vec![usize::MAX; cable_graph.attached_circles().len()];
    let external_max = d.arc_count() as usize * n;
    for a in 1..=cable.arc_count() as usize {
        if a > external_max {
            continue; // internal grid arc
        }
        let orig = (a - 1) / n + 1;
        let dd = cends[a][0];
        let x = dd / 4;
        let slot = dd % 4;
        let side = usize::from(slot >= 2);
        let circ = cable_graph.circle_of(x, side);
        let want = arc_circle[orig];
        if proj[circ] == usize::MAX {
            proj[circ] = want;
        } else if proj[circ] != want {
            return Err(Error::LabelingInconsistent(
                "cable circle covers two original circles".into(),
            ));
        }
    }
    if proj.iter().any(|&p| p == usize::MAX) {
        return Err(Error::LabelingInconsistent("cable circle covers no original arc".into()));
    }
    // each original circle must receive exactly n copies
    let mut counts = BTreeMap::new();
    for &p in &proj {
        *counts.entry(p).or_insert(0usize) += 1;
    }
    if counts.values().any(|&c| c != n) {
        return Err(Error::LabelingInconsistent("circle copies are not n per original".into()));
    }
    Ok(proj)
}

pub fn label_cable(d: &Diagram, n: usize, orientation: LoopOrder, chirality: Chirality) -> Result<CableLabeling> {
    if n < 2 {
        return Err(Error::NotApplicable(format!("cable parameter must be >= 2, got {}", n)));
    }
    if d.unknot_components() > 0 {
        return Err(Error::NotApplicable("free unknot components are not supported here".into()));
    }
    if !d.is_reduced() {
        return Err(Error::NotApplicable("diagram is not reduced".into()));
    }
    if is_a_adequate(d).0 {
        return Err(Error::NotApplicable("diagram is A-adequate".into()));
    }
    let violating = pick_violating(d)?;
    let orig_graph = resolve(d, &KauffmanState::all_a(d.crossing_count()));
    let s_orig = orig_graph.circle_of(violating, 0);
    let (cable, map) = d.cable(n)?;
    if cable.crossing_count() > 64 {
        return Err(Error::TooLarge { crossings: cable.crossing_count(), limit: 64 });
    }
    let ctx = AllAContext::new(&cable);
    let proj = circle_projection(d, &orig_graph, &cable, &ctx.graph, n)?;
    let en = map.cells_of(violating);
    let en_set: BTreeSet<usize> = en.iter().copied().collect();
    let loops_unordered: Vec<usize> = en.iter().copied().filter(|&x| ctx.is_loop(x)).collect();
    if loops_unordered.len() != n {
        return Err(Error::LabelingInconsistent(format!(
            "expected {} loops among e^n, found {}",
            n,
            loops_unordered.len()
        )));
    }
    let s0 = ctx.graph.circle_of(loops_unordered[0], 0);
    if loops_unordered.iter().any(|&x| ctx.graph.circle_of(x, 0) != s0) || proj[s0] != s_orig {
        return Err(Error::LabelingInconsistent("loops of e^n do not share the cabled circle".into()));
    }

    // regions: faces merged across all edges and across segments of circles
    // outside the S family
    let emb = embed(&cable, &ctx.graph);
    let s_family_set: BTreeSet<usize> =
        (0..proj.len()).filter(|&c| proj[c] == s_orig).collect();
    let mut region_uf = UnionFind::new(emb.face_count);
    for f in 0..emb.theta.len() {
        let merge = match emb.kind[f] {
            MapEdge::Cross { .. } => true,
            MapEdge::Segment { circle } => !s_family_set.contains(&circle),
        };
        if merge {
            region_uf.union(emb.face_of_flag[f], emb.face_of_flag[emb.theta[f]]);
        }
    }
    let mut region_uf = region_uf;
    let edge_region: Vec<usize> = (0..cable.crossing_count())
        .map(|x| {
            let f = Embedding::flag(x, 0, FLAG_EDGE);
            region_uf.find(emb.face_of_flag[f])
        })
        .collect();
    // region adjacency of S-family circles: each circle borders two regions
    let mut circle_sides: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for f in 0..emb.theta.len() {
        if let MapEdge::Segment { circle } = emb.kind[f] {
            if s_family_set.contains(&circle) {
                circle_sides.entry(circle).or_default().insert(region_uf.find(emb.face_of_flag[f]));
            }
        }
    }
    for (c, sides) in &circle_sides {
        if sides.len() != 2 {
            return Err(Error::LabelingInconsistent(format!(
                "cabled circle {} borders {} regions",
                c,
                sides.len()
            )));
        }
    }
    // chain the regions: Omega_0 holds the loops; S_i separates Omega_i from
    // Omega_{i+1}; the far side of S_{n-1} is the outer region
    let omega0 = edge_region[loops_unordered[0]];
    if loops_unordered.iter().any(|&x| edge_region[x] != omega0) {
        return Err(Error::LabelingInconsistent("loops of e^n lie in different regions".into()));
    }
    let region_circles = {
        let mut m: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for (&c, sides) in &circle_sides {
            for &r in sides {
                m.entry(r).or_default().insert(c);
            }
        }
        m
    };
    if region_circles.get(&omega0).map(|s| s.len()) != Some(1)
        || !region_circles[&omega0].contains(&s0)
    {
        return Err(Error::LabelingInconsistent("Omega_0 is not bounded by S_0 alone".into()));
    }
    let mut s_family = vec![s0];
    let mut omega = vec![omega0];
    let mut cur_region = omega0;
    let mut cur_circle = s0;
    for i in 1..=n {
        let next_region = *circle_sides[&cur_circle]
            .iter()
            .find(|&&r| r != cur_region)
            .unwrap();
        if i == n {
            // past S_{n-1}: the outer region, bounded by S_{n-1} alone
            if region_circles[&next_region].len() != 1 {
                return Err(Error::LabelingInconsistent(
                    "outer region is bounded by more than one cabled circle".into(),
                ));
            }
            omega.push(next_region);
            break;
        }
        let bound = &region_circles[&next_region];
        if bound.len() != 2 || !bound.contains(&cur_circle) {
            return Err(Error::LabelingInconsistent(format!(
                "region between cabled circles has boundary {:?}",
                bound
            )));
        }
        let next_circle = *bound.iter().find(|&&c| c != cur_circle).unwrap();
        omega.push(next_region);
        s_family.push(next_circle);
        cur_region = next_region;
        cur_circle = next_circle;
    }
    let outer_region = omega.pop().unwrap();
    // sanity: e^n edges in Omega_i run between S_{i-1} and S_i, 2(n-i) each
    let omega_index: BTreeMap<usize, usize> = omega.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut per_region = vec![Vec::new(); n];
    for &x in &en {
        let Some(&i) = omega_index.get(&edge_region[x]) else {
            return Err(Error::LabelingInconsistent(format!(
                "e^n edge {} lies outside the Omega regions",
                x
            )));
        };
        per_region[i].push(x);
        if i == 0 {
            if !ctx.is_loop(x) {
                return Err(Error::LabelingInconsistent("non-loop e^n edge in Omega_0".into()));
            }
        } else {
            let (p, q) = ctx.ends[x];
            let want = (s_family[i - 1].min(s_family[i]), s_family[i - 1].max(s_family[i]));
            if (p.min(q), p.max(q)) != want {
                return Err(Error::LabelingInconsistent(format!(
                    "e^n edge {} in Omega_{} does not join S_{} and S_{}",
                    x,
                    i,
                    i - 1,
                    i
                )));
            }
        }
    }
    for (i, v) in per_region.iter().enumerate() {
        let want = if i == 0 { n } else { 2 * (n - i) };
        if v.len() != want {
            return Err(Error::LabelingInconsistent(format!(
                "Omega_{} holds {} e^n edges, expected {}",
                i,
                v.len(),
                want
            )));
        }
    }

    // loop numbering from the nesting chain on S_0
    let s0_seq = &ctx.graph.attached_circles()[s0];
    let en_items: Vec<(usize, bool)> = s0_seq
        .iter()
        .filter(|a| en_set.contains(&a.crossing))
        .map(|a| (a.crossing, ctx.is_loop(a.crossing)))
        .collect();
    let loop_positions: Vec<usize> = en_items
        .iter()
        .enumerate()
        .filter(|(_, &(_, is_loop))| is_loop)
        .map(|(i, _)| i)
        .collect();
    let loop_seq: Vec<usize> = loop_positions.iter().map(|&i| en_items[i].0).collect();
    let ln = loop_seq.len();
    debug_assert_eq!(ln, 2 * n);
    // adjacency pairs (same loop twice in a row, cyclically)
    let adjacencies: Vec<usize> = (0..ln)
        .filter(|&i| loop_seq[i] == loop_seq[(i + 1) % ln])
        .collect();
    if adjacencies.len() != 2 {
        return Err(Error::LabelingInconsistent(format!(
            "loop ends on S_0 have {} adjacencies, expected a nested chain",
            adjacencies.len()
        )));
    }
    // read the chain from the chosen inner adjacency outwards
    let pick_inner = {
        let c0 = loop_seq[adjacencies[0]];
        let c1 = loop_seq[adjacencies[1]];
        match orientation {
            LoopOrder::Forward => {
                if c0 <= c1 {
                    adjacencies[0]
                } else {
                    adjacencies[1]
                }
            }
            LoopOrder::Reversed => {
                if c0 <= c1 {
                    adjacencies[1]
                } else {
                    adjacencies[0]
                }
            }
        }
    };
    // chain inner -> outer by expanding around the inner adjacency
    let mut chain = vec![loop_seq[pick_inner]];
    for step in 1..n {
        let lo = loop_seq[(pick_inner + ln - step) % ln];
        let hi = loop_seq[(pick_inner + 1 + step) % ln];
        if lo != hi || chain.contains(&lo) {
            return Err(Error::LabelingInconsistent("loop ends are not palindromically nested".into()));
        }
        chain.push(lo);
    }
    // chain[0] innermost = label 2n-1 ... chain[n-1] outermost = label 1
    let mut labels: BTreeMap<usize, EdgeLabel> = BTreeMap::new();
    let mut loops = vec![0usize; n];
    for (j, &x) in chain.iter().enumerate() {
        let number = 2 * (n - j) as i64 - 1;
        labels.insert(x, EdgeLabel { region: 0, side: Side::Center, number });
        loops[((number - 1) / 2) as usize] = x;
    }
    // Omega_1 numbers from loop neighbors in the e^n item sequence; sides
    // from the two blocks split by the adjacencies
    let pos_of = |x: usize| -> Vec<usize> {
        en_items
            .iter()
            .enumerate()
            .filter(|(_, &(c, _))| c == x)
            .map(|(i, _)| i)
            .collect()
    };
    let items_len = en_items.len();
    // block membership: walk from inner adjacency to the outer adjacency
    let other_adj = if adjacencies[0] == pick_inner { adjacencies[1] } else { adjacencies[0] };
    let mut block_of = vec![Side::Center; items_len];
    {
        let mut i = (pick_inner + 1) % items_len.max(1);
        // map loop-sequence index back to item index
        let item_index_of_loop_pos: Vec<usize> = loop_positions.clone();
        let inner_item = item_index_of_loop_pos[pick_inner];
        let outer_item = item_index_of_loop_pos[other_adj];
        // side A: strictly between inner_item and outer_item going forward
        i = (inner_item + 1) % items_len;
        while i != (outer_item + 1) % items_len {
            block_of[i] = Side::Left;
            i = (i + 1) % items_len;
        }
        let mut j = (outer_item + 1) % items_len;
        while j != (inner_item + 1) % items_len {
            block_of[j] = Side::Right;
            j = (j + 1) % items_len;
        }
    }
    let flip = |s: Side| -> Side {
        match (chirality, s) {
            (Chirality::Standard, s) => s,
            (Chirality::Mirrored, Side::Left) => Side::Right,
            (Chirality::Mirrored, Side::Right) => Side::Left,
            (Chirality::Mirrored, Side::Center) => Side::Center,
        }
    };
    for (i, &(x, is_loop)) in en_items.iter().enumerate() {
        if is_loop {
            continue;
        }
        // neighbors in the e^n item sequence must be loop ends
        let prev = en_items[(i + items_len - 1) % items_len];
        let next = en_items[(i + 1) % items_len];
        if !prev.1 || !next.1 {
            return Err(Error::LabelingInconsistent(
                "Omega_1 edge end not flanked by loop ends on S_0".into(),
            ));
        }
        let a = labels[&prev.0].number;
        let b = labels[&next.0].number;
        if (a - b).abs() != 2 {
            return Err(Error::LabelingInconsistent(format!(
                "Omega_1 edge between loops {} and {}",
                a, b
            )));
        }
        let number = (a + b) / 2;
        let side = flip(block_of[i]);
        if side == Side::Center {
            return Err(Error::LabelingInconsistent("Omega_1 edge in no block".into()));
        }
        let entry = EdgeLabel { region: 1, side, number };
        if let Some(old) = labels.insert(x, entry) {
            if old != entry {
                return Err(Error::LabelingInconsistent(format!(
                    "edge {} labeled twice: {:?} vs {:?}",
                    x, old, entry
                )));
            }
        }
    }
    // higher regions: an edge of Omega_{i} is numbered between its two
    // labeled neighbors of Omega_{i-1} on S_{i-1}, inheriting their side
    for i in 2..n {
        let s_prev = s_family[i - 1];
        let seq = &ctx.graph.attached_circles()[s_prev];
        let relevant: Vec<usize> = seq
            .iter()
            .filter(|a| en_set.contains(&a.crossing))
            .map(|a| a.crossing)
            .collect();
        let rl = relevant.len();
        for (j, &x) in relevant.iter().enumerate() {
            let xi = omega_index[&edge_region[x]];
            if xi != i {
                continue;
            }
            let prev = relevant[(j + rl - 1) % rl];
            let next = relevant[(j + 1) % rl];
            let (lp, lnx) = (labels.get(&prev).copied(), labels.get(&next).copied());
            let (Some(lp), Some(lnx)) = (lp, lnx) else {
                return Err(Error::LabelingInconsistent(format!(
                    "Omega_{} edge {} has unlabeled neighbors",
                    i, x
                )));
            };
            if lp.region != i - 1 || lnx.region != i - 1 || lp.side != lnx.side
                || (lp.number - lnx.number).abs() != 2
            {
                return Err(Error::LabelingInconsistent(format!(
                    "Omega_{} edge {} flanked by {:?} and {:?}",
                    i, x, lp, lnx
                )));
            }
            let entry = EdgeLabel { region: i, side: lp.side, number: (lp.number + lnx.number) / 2 };
            if let Some(old) = labels.insert(x, entry) {
                if old != entry {
                    return Err(Error::LabelingInconsistent(format!(
                        "edge {} labeled twice: {:?} vs {:?}",
                        x, old, entry
                    )));
                }
            }
        }
    }
    if labels.len() != n * n {
        return Err(Error::LabelingInconsistent(format!(
            "labeled {} of {} e^n edges",
            labels.len(),
            n * n
        )));
    }
    // rule (b) final check and expected census per region/side
    let mut by_label = BTreeMap::new();
    for (&x, l) in &labels {
        if by_label.insert((l.region, side_code(l.side), l.number), x).is_some() {
            return Err(Error::LabelingInconsistent(format!("duplicate label {:?}", l)));
        }
    }
    for i in 1..n {
        for side in [Side::Right, Side::Left] {
            let expect: Vec<i64> = ((i as i64 + 1)..=(2 * n as i64 - 1 - i as i64))
                .filter(|v| (v - i as i64 - 1) % 2 == 0)
                .collect();
            for &number in &expect {
                if by_label.get(&(i, side_code(side), number)).is_none() {
                    return Err(Error::LabelingInconsistent(format!(
                        "missing edge {:?}{} in Omega_{}",
                        side, number, i
                    )));
                }
            }
        }
    }
    Ok(CableLabeling {
        n,
        violating,
        cable,
        map,
        ctx,
        s_family,
        omega: omega.clone(),
        outer_region,
        edge_region,
        en,
        loops,
        labels,
        by_label,
        orientation,
        chirality,
    })
}

/// Circle membership of the two ends of every e^n loop in the state that
/// B-resolves the given edges.
fn loop_separations(l: &CableLabeling, resolved: u64) -> Vec<bool> {
    let c = l.cable.crossing_count();
    let sigma = KauffmanState::new(resolved, c);
    let g = resolve(&l.cable, &sigma);
    l.loops
        .iter()
        .map(|&x| {
            let (p, q) = g.edge_ends(x);
            p != q
        })
        .collect()
}

fn mask_of_region(l: &CableLabeling, region_index: usize) -> u64 {
    let region = l.omega[region_index];
    let mut m = 0u64;
    for (x, &r) in l.edge_region.iter().enumerate() {
        if r == region {
            m |= 1 << x;
        }
    }
    m
}

/// a(H): the interval of loop labels between the smallest and largest loop
/// whose ends land on distinct circles after resolving only the edges of H
/// inside Omega_1.
pub fn a_of(l: &CableLabeling, h: SpanningSubgraph) -> Vec<i64> {
    let omega1 = mask_of_region(l, 1);
    let sep = loop_separations(l, h.mask & omega1);
    let labels: Vec<i64> = sep
        .iter()
        .enumerate()
        .filter(|(_, &s)| s)
        .map(|(j, _)| 2 * j as i64 + 1)
        .collect();
    match (labels.first(), labels.last()) {
        (Some(&m), Some(&mm)) => (m..=mm).filter(|v| v % 2 == 1).collect(),
        _ => Vec::new(),
    }
}

/// The state H^e: resolve the edges of H that are neither in e^n nor in
/// Omega_{n-1}.
fn he_mask(l: &CableLabeling, h: SpanningSubgraph) -> u64 {
    let mut en_mask = 0u64;
    for &x in &l.en {
        en_mask |= 1 << x;
    }
    let last = mask_of_region(l, l.n - 1);
    h.mask & !en_mask & !last
}

/// s_a per the two cases of the defining rule. `primary` is the side the
/// search runs on (R in the source; swapped under reflection).
pub fn s_a_of(l: &CableLabeling, h: SpanningSubgraph, a: &[i64]) -> Result<usize> {
    assert!(!a.is_empty());
    let primary = Side::Right;
    if a[0] != 1 {
        let m = a[0];
        let r = l
            .edge_at(1, primary, m - 1)
            .ok_or_else(|| Error::WitnessMissing(format!("no edge R{} in Omega_1", m - 1)))?;
        if h.contains(r) {
            return Ok(r);
        }
        let other = l
            .edge_at(1, Side::Left, m - 1)
            .ok_or_else(|| Error::WitnessMissing(format!("no edge L{} in Omega_1", m - 1)))?;
        if h.contains(other) {
            return Ok(other);
        }
        return Err(Error::WitnessMissing(format!(
            "neither R{} nor L{} is included although {} is in a(H)",
            m - 1,
            m - 1,
            m
        )));
    }
    // 1 in a(H): search the primary side in H^e
    let he = he_mask(l, h);
    let sigma = KauffmanState::new(he, l.cable.crossing_count());
    let g = resolve(&l.cable, &sigma);
    for k in 1..=(l.n - 2) {
        let cand = l
            .edge_at(k, primary, k as i64 + 1)
            .ok_or_else(|| Error::WitnessMissing(format!("no edge R{} in Omega_{}", k + 1, k)))?;
        let (p, q) = g.edge_ends(cand);
        if p == q {
            let prev = if k == 1 {
                l.loop_by_number(1).unwrap()
            } else {
                l.edge_at(k - 1, primary, k as i64).unwrap()
            };
            return Ok(if h.contains(prev) { prev } else { cand });
        }
    }
    Err(Error::WitnessMissing(
        "no same-circle edge found along the primary side in H^e".into(),
    ))
}

/// Region sequences {t^j}, {b^j} per side and region index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Sequences {
    /// [side][i] with side 0 = Right, 1 = Left.
    pub t: [Vec<Vec<usize>>; 2],
    pub b: [Vec<Vec<usize>>; 2],
}

fn side_index(s: Side) -> usize {
    match s {
        Side::Right => 0,
        Side::Left => 1,
        Side::Center => 0,
    }
}

fn side_from_index(i: usize) -> Side {
    if i == 0 {
        Side::Right
    } else {
        Side::Left
    }
}

/// Smallest included e^n edge in the given region and side with label
/// strictly greater than `above` and at most `max`.
fn smallest_included(
    l: &CableLabeling,
    h: SpanningSubgraph,
    region: usize,
    side: Side,
    above: i64,
    max: i64,
) -> Option<usize> {
    l.region_side_edges(region, side)
        .into_iter()
        .filter(|&e| h.contains(e))
        .map(|e| (l.label_of(e).number, e))
        .filter(|&(num, _)| num > above && num <= max)
        .min()
        .map(|(_, e)| e)
}

pub fn sequences_of(l: &CableLabeling, h: SpanningSubgraph, s_a: usize, a: &[i64]) -> Sequences {
    let n = l.n;
    let max = *a.last().unwrap();
    let sl = l.label_of(s_a);
    let k = sl.region;
    let primary = side_index(sl.side);
    let secondary = 1 - primary;

    // first terms per side and region
    let mut first: [Vec<Option<usize>>; 2] = [vec![None; n], vec![None; n]];
    let seed = (sl.number <= max).then_some(s_a);
    first[primary][k] = seed;
    // primary chain upward and downward from k
    for i in (k + 1)..n {
        first[primary][i] = first[primary][i - 1].and_then(|prev| {
            smallest_included(l, h, i, side_from_index(primary), l.label_of(prev).number, max)
        });
    }
    for i in (0..k).rev() {
        first[primary][i] = first[primary][i + 1].and_then(|prev| {
            let side = if i == 0 { Side::Center } else { side_from_index(primary) };
            smallest_included(l, h, i, side, l.label_of(prev).number, max)
        });
    }
    // the shared Omega_0 first term, then the secondary chain upward
    first[secondary][0] = first[primary][0];
    for i in 1..n {
        first[secondary][i] = first[secondary][i - 1].and_then(|prev| {
            smallest_included(l, h, i, side_from_index(secondary), l.label_of(prev).number, max)
        });
    }

    let grow = |side: usize, i: usize, towards_up: bool| -> Vec<usize> {
        let mut out = Vec::new();
        let Some(t0) = first[side][i] else {
            return out;
        };
        out.push(t0);
        let mut j = 1usize;
        loop {
            let region = if j % 2 == 1 {
                if towards_up {
                    if i + 1 >= n {
                        break;
                    }
                    i + 1
                } else {
                    if i == 0 {
                        break;
                    }
                    i - 1
                }
            } else {
                i
            };
            let s = if region == 0 { Side::Center } else { side_from_index(side) };
            let prev_num = l.label_of(*out.last().unwrap()).number;
            match smallest_included(l, h, region, s, prev_num, max) {
                Some(e) => out.push(e),
                None => break,
            }
            j += 1;
        }
        out
    };

    let mut seqs = Sequences::default();
    for side in 0..2 {
        seqs.t[side] = (0..n).map(|i| grow(side, i, true)).collect();
        seqs.b[side] = (0..n)
            .map(|i| if i == 0 { Vec::new() } else { grow(side, i, false) })
            .collect();
    }
    // the b sequences of Omega_0 mirror the t sequences of the other side
    let t_r0 = seqs.t[0][0].clone();
    let t_l0 = seqs.t[1][0].clone();
    seqs.b[0][0] = t_l0;
    seqs.b[1][0] = t_r0;
    seqs
}

/// Edges of e^n in (side, Omega_i) between consecutive even/odd sequence
/// terms, capped at M.
fn between_set(
    l: &CableLabeling,
    seq: &[usize],
    region: usize,
    side: Side,
    max: i64,
) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    let region_edges = l.region_side_edges(region, side);
    let mut j = 0;
    while j < seq.len() {
        let lo = l.label_of(seq[j]).number;
        let hi = seq.get(j + 1).map(|&e| l.label_of(e).number);
        for &e in &region_edges {
            let num = l.label_of(e).number;
            let ok = match hi {
                Some(hi) => num > lo && num < hi,
                None => num > lo && num <= max,
            };
            if ok {
                out.insert(e);
            }
        }
        j += 2;
    }
    out
}

/// G(H): union over sides and regions of t_i intersect b_i, together with
/// s_a when 1 is in a(H), s_a lies outside Omega_0 and its label is at most M.
pub fn g_of(l: &CableLabeling, h: SpanningSubgraph, s_a: usize, a: &[i64], seqs: &Sequences) -> BTreeSet<usize> {
    let n = l.n;
    let max = *a.last().unwrap();
    let mut g = BTreeSet::new();
    for side in 0..2 {
        for i in 0..=(n - 2) {
            let s = if i == 0 { Side::Center } else { side_from_index(side) };
            let t_set = between_set(l, &seqs.t[side][i], i, s, max);
            let b_set = between_set(l, &seqs.b[side][i], i, s, max);
            for e in t_set.intersection(&b_set) {
                g.insert(*e);
            }
        }
    }
    let sl = l.label_of(s_a);
    if a[0] == 1 && sl.region > 0 && sl.number <= max {
        g.insert(s_a);
    }
    g
}

/// g_a(H): the interleaving count from the sequences.
pub fn g_a_of(l: &CableLabeling, s_a: usize, seqs: &Sequences) -> usize {
    let n = l.n;
    let sl = l.label_of(s_a);
    let k = sl.region;
    let primary = side_index(sl.side);
    let secondary = 1 - primary;
    let count_between = |terms: &[usize], frame: &[usize]| -> usize {
        let mut cnt = 0;
        for (pos, &t) in terms.iter().enumerate() {
            if pos % 2 != 0 {
                continue;
            }
            let num = l.label_of(t).number;
            let mut j = 0;
            while j + 1 < frame.len() {
                let lo = l.label_of(frame[j]).number;
                let hi = l.label_of(frame[j + 1]).number;
                if num > lo && num < hi {
                    cnt += 1;
                    break;
                }
                j += 2;
            }
        }
        cnt
    };
    let tg = |side: usize, i: usize| count_between(&seqs.t[side][i], &seqs.b[side][i]);
    let bg = |side: usize, i: usize| count_between(&seqs.b[side][i], &seqs.t[side][i]);
    let mut total = 0usize;
    for i in 0..=k.min(n - 2) {
        if i == k {
            total += seqs.b[primary][k].len() / 2;
        } else {
            total += bg(primary, i);
        }
    }
    for i in k..=(n - 2) {
        total += tg(primary, i);
    }
    for i in 1..=(n - 2) {
        total += tg(secondary, i);
    }
    total
}

/// Full analysis of one spanning subgraph.
#[derive(Clone, Debug)]
pub struct SubgraphAnalysis {
    pub a: Vec<i64>,
    pub s_a: Option<usize>,
    pub seqs: Sequences,
    pub g_set: BTreeSet<usize>,
    pub g_a: usize,
}

pub fn analyze(l: &CableLabeling, h: SpanningSubgraph) -> Result<SubgraphAnalysis> {
    let a = a_of(l, h);
    if a.is_empty() {
        return Ok(SubgraphAnalysis {
            a,
            s_a: None,
            seqs: Sequences::default(),
            g_set: BTreeSet::new(),
            g_a: 0,
        });
    }
    let s_a = s_a_of(l, h, &a)?;
    let seqs = sequences_of(l, h, s_a, &a);
    let g_set = g_of(l, h, s_a, &a, &seqs);
    let g_a = g_a_of(l, s_a, &seqs);
    Ok(SubgraphAnalysis { a, s_a: Some(s_a), seqs, g_set, g_a })
}

/// One equivalence class: the base subgraph plus all subsets of the free set.
#[derive(Clone, Debug)]
pub struct ClassDescriptor {
    pub base: SpanningSubgraph,
    pub a: Vec<i64>,
    pub g_set: BTreeSet<usize>,
    pub free: Vec<usize>,
    pub members: Vec<SpanningSubgraph>,
    pub vk: usize,
    pub genus: usize,
    pub s_a: Option<usize>,
    pub seqs: Sequences,
}

impl ClassDescriptor {
    pub fn contribution(&self, l: &CableLabeling) -> Result<LaurentPoly> {
        let st = ribbon::stats(&l.cable, &l.ctx, self.base)?;
        let c = l.cable.crossing_count() as i64;
        Ok(binomial_cancellation(
            c - 2 * st.e as i64 - 2 * self.free.len() as i64,
            st.f as u32 - 1,
            self.free.len() as u32,
        ))
    }
}

pub struct Partition {
    pub labeling: CableLabeling,
    pub classes: Vec<ClassDescriptor>,
    pub subgraph_count: usize,
}

/// Partition all spanning subgraphs with v - k <= n - 2 into equivalence
/// classes and verify the class laws: each class is exactly the base plus
/// subsets of its free set; face counts rise by one per added free edge; a
/// and G agree across members.
pub fn partition_classes(
    d: &Diagram,
    n: usize,
    orientation: LoopOrder,
    chirality: Chirality,
) -> Result<Partition> {
    if n < 3 {
        return Err(Error::NotApplicable("class machinery needs n >= 3".into()));
    }
    let l = label_cable(d, n, orientation, chirality)?;
    let mut subs = ribbon::collect_low_rank(&l.cable, &l.ctx, n - 2);
    subs.sort_by_key(|h| h.mask);
    let index: BTreeMap<u64, usize> = subs.iter().enumerate().map(|(i, h)| (h.mask, i)).collect();
    let loop_mask: u64 = l.loops.iter().map(|&x| 1u64 << x).sum();
    let mut class_of: BTreeMap<u64, Vec<SpanningSubgraph>> = BTreeMap::new();
    let mut class_info: BTreeMap<u64, (Vec<i64>, BTreeSet<usize>, Option<usize>, Sequences)> =
        BTreeMap::new();
    for &h in &subs {
        let an = analyze(&l, h)?;
        let mut free_mask: u64 = an.g_set.iter().map(|&x| 1u64 << x).sum();
        let a_loops: u64 = an
            .a
            .iter()
            .map(|&num| 1u64 << l.loop_by_number(num).unwrap())
            .sum();
        free_mask |= loop_mask & !a_loops;
        let base = h.mask & !free_mask;
        class_of.entry(base).or_default().push(h);
        match class_info.entry(base) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert((an.a, an.g_set, an.s_a, an.seqs));
            }
            std::collections::btree_map::Entry::Occupied(o) => {
                let (a0, g0, _, _) = o.get();
                if *a0 != an.a || *g0 != an.g_set {
                    return Err(Error::PartitionError(format!(
                        "members of class {:#x} disagree: a {:?} vs {:?}, G {:?} vs {:?}",
                        base, a0, an.a, g0, an.g_set
                    )));
                }
            }
        }
    }
    let mut classes = Vec::new();
    for (base_mask, members) in class_of {
        let (a, g_set, s_a, seqs) = class_info.remove(&base_mask).unwrap();
        let base = SpanningSubgraph { mask: base_mask };
        if !index.contains_key(&base_mask) {
            return Err(Error::PartitionError(format!(
                "class base {:#x} is not a rank-bounded subgraph",
                base_mask
            )));
        }
        let a_loops: u64 = a.iter().map(|&num| 1u64 << l.loop_by_number(num).unwrap()).sum();
        let mut free_mask: u64 = g_set.iter().map(|&x| 1u64 << x).sum();
        free_mask |= loop_mask & !a_loops;
        let free: Vec<usize> =
            (0..l.cable.crossing_count()).filter(|&x| (free_mask >> x) & 1 == 1).collect();
        // the class must be exactly base + subsets of free
        let member_set: BTreeSet<u64> = members.iter().map(|h| h.mask).collect();
        if member_set.len() != 1 << free.len() {
            return Err(Error::PartitionError(format!(
                "class {:#x} has {} members, expected 2^{}",
                base_mask,
                member_set.len(),
                free.len()
            )));
        }
        for bits in 0u64..(1 << free.len()) {
            let mut m = base_mask;
            for (i, &e) in free.iter().enumerate() {
                if (bits >> i) & 1 == 1 {
                    m |= 1 << e;
                }
            }
            if !member_set.contains(&m) {
                return Err(Error::PartitionError(format!(
                    "class {:#x} misses member {:#x}",
                    base_mask, m
                )));
            }
        }
        // face increments and invariance of v-k and genus
        let st0 = ribbon::stats(&l.cable, &l.ctx, base)?;
        for &h in &members {
            let st = ribbon::stats(&l.cable, &l.ctx, h)?;
            let added = (h.mask & !base_mask).count_ones() as usize;
            if st.f != st0.f + added {
                return Err(Error::PartitionError(format!(
                    "face count of {:#x} is {} but base {:#x} has {} with {} added edges",
                    h.mask, st.f, base_mask, st0.f, added
                )));
            }
            if st.v - st.k != st0.v - st0.k || st.g != st0.g {
                return Err(Error::PartitionError(format!(
                    "v-k or genus drift in class {:#x}",
                    base_mask
                )));
            }
        }
        classes.push(ClassDescriptor {
            base,
            a,
            g_set,
            free,
            members,
            vk: st0.v - st0.k,
            genus: st0.g,
            s_a,
            seqs,
        });
    }
    Ok(Partition { labeling: l, classes, subgraph_count: subs.len() })
}

/// Try labeling conventions until the partition verifies.
pub fn partition_auto(d: &Diagram, n: usize) -> Result<Partition> {
    let variants = [
        (LoopOrder::Forward, Chirality::Standard),
        (LoopOrder::Forward, Chirality::Mirrored),
        (LoopOrder::Reversed, Chirality::Standard),
        (LoopOrder::Reversed, Chirality::Mirrored),
    ];
    let mut last_err = None;
    for (o, c) in variants {
        match partition_classes(d, n, o, c) {
            Ok(p) => return Ok(p),
            Err(e @ Error::NotApplicable(_)) => return Err(e),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::Other("no labeling convention verified".into())))
}

#[derive(Clone, Debug)]
pub struct DegreeDropReport {
    pub n: usize,
    pub m_dn: i64,
    pub bound: i64,
    pub class_count: usize,
    pub subgraph_count: usize,
    pub max_class_degree: Option<i64>,
    pub bracket_degree: i64,
    pub lemma_inequality_checked: usize,
    pub orientation: LoopOrder,
    pub chirality: Chirality,
}

/// Per-class degree bounds, the generating inequality, and the full bracket
/// check d* <D^n> <= M(D^n) - 4(n-1).
pub fn verify_degree_drop(d: &Diagram, n: usize, opts: &BracketOptions) -> Result<DegreeDropReport> {
    let part = partition_auto(d, n)?;
    let l = &part.labeling;
    let m_dn = crate::jones::m_bound_cable(d, n);
    let bound = m_dn - 4 * (n as i64 - 1);
    let mut max_class_degree = None;
    let mut lemma_checked = 0usize;
    for class in &part.classes {
        let x_c = class.contribution(l)?;
        if let Some(deg) = x_c.max_deg() {
            if deg > bound {
                return Err(Error::BoundViolation(format!(
                    "class with base {:#x} contributes degree {} > {}",
                    class.base.mask, deg, bound
                )));
            }
            max_class_degree = Some(max_class_degree.map_or(deg, |d: i64| d.max(deg)));
        }
        let vkg = class.vk + class.genus;
        if vkg <= n - 2 && !class.a.is_empty() {
            lemma_checked += 1;
            if class.g_set.len() + vkg + 1 < class.a.len() {
                return Err(Error::BoundViolation(format!(
                    "|G| + v - k + g = {} < |a| - 1 = {} for base {:#x}",
                    class.g_set.len() + vkg,
                    class.a.len() - 1,
                    class.base.mask
                )));
            }
        }
    }
    let bracket = fast_bracket(&l.cable, opts.frontier_cap)?;
    let bracket_degree = bracket
        .max_deg()
        .ok_or_else(|| Error::Other("vanishing cable bracket".into()))?;
    if bracket_degree > bound {
        return Err(Error::BoundViolation(format!(
            "d* <D^n> = {} exceeds M(D^n) - 4(n-1) = {}",
            bracket_degree, bound
        )));
    }
    Ok(DegreeDropReport {
        n,
        m_dn,
        bound,
        class_count: part.classes.len(),
        subgraph_count: part.subgraph_count,
        max_class_degree,
        bracket_degree,
        lemma_inequality_checked: lemma_checked,
        orientation: l.orientation,
        chirality: l.chirality,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures;
    use num_traits::Zero;

    #[test]
    fn binomial_cancellation_bound() {
        // k = 0: plain monomial times delta powers
        let p = binomial_cancellation(3, 2, 0);
        assert_eq!(p.max_deg(), Some(7));
        // c = 0, d = 0, k = 1: 1 + A^-2 delta = -A^-4(1 + A^2 delta)
        let p = binomial_cancellation(0, 0, 1);
        assert_eq!(p.max_deg(), Some(-4));
        for k in 0..=8u32 {
            for c in -6..=6i64 {
                for d in 0..=6u32 {
                    let p = binomial_cancellation(c, d, k);
                    if let Some(deg) = p.max_deg() {
                        assert!(
                            deg <= c + 2 * d as i64 - 4 * k as i64,
                            "c={} d={} k={}: deg {}",
                            c,
                            d,
                            k,
                            deg
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn binomial_matches_direct_expansion() {
        for k in 0..=6u32 {
            for c in -3..=3i64 {
                for d in 0..=3u32 {
                    let fast = binomial_cancellation(c, d, k);
                    // direct: sum over subsets S of a k-set of A^{c-2|S|} delta^{d+|S|}
                    let mut slow = LaurentPoly::zero();
                    for bits in 0u32..(1 << k) {
                        let i = bits.count_ones();
                        let term = LaurentPoly::monomial(c - 2 * i as i64, 1);
                        slow += &(&term * &LaurentPoly::delta().pow(d + i));
                    }
                    assert_eq!(fast, slow, "c={} d={} k={}", c, d, k);
                }
            }
        }
    }

    #[test]
    fn label_cable_rejects_adequate_and_small_n() {
        assert!(matches!(
            label_cable(&fixtures::trefoil(), 3, LoopOrder::Forward, Chirality::Standard),
            Err(Error::NotApplicable(_))
        ));
        assert!(matches!(
            label_cable(&fixtures::clasp2(), 1, LoopOrder::Forward, Chirality::Standard),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn clasp2_labeling_census() {
        let l = label_cable(&fixtures::clasp2(), 3, LoopOrder::Forward, Chirality::Standard).unwrap();
        assert_eq!(l.loops.len(), 3);
        assert_eq!(l.en.len(), 9);
        // region census 3 + 4 + 2
        let mut counts = vec![0usize; 3];
        for &x in &l.en {
            let i = l.omega.iter().position(|&r| r == l.edge_region[x]).unwrap();
            counts[i] += 1;
        }
        assert_eq!(counts, vec![3, 4, 2]);
        // labels: loops odd 1,3,5; Omega_1 has 2,4 per side; Omega_2 has 3
        for (num, &lp) in [(1i64, &l.loops[0]), (3, &l.loops[1]), (5, &l.loops[2])] {
            assert_eq!(l.label_of(lp).number, num);
        }
        for side in [Side::Right, Side::Left] {
            assert!(l.edge_at(1, side, 2).is_some());
            assert!(l.edge_at(1, side, 4).is_some());
            assert!(l.edge_at(2, side, 3).is_some());
        }
    }

    #[test]
    fn a_of_examples() {
        let l = label_cable(&fixtures::clasp2(), 3, LoopOrder::Forward, Chirality::Standard).unwrap();
        // empty subgraph -> empty interval
        assert!(a_of(&l, SpanningSubgraph::empty()).is_empty());
        // a single Omega_1 edge -> still empty
        let r2 = l.edge_at(1, Side::Right, 2).unwrap();
        assert!(a_of(&l, SpanningSubgraph::empty().with(r2)).is_empty());
        // R2 + R4 separates exactly loop 3
        let r4 = l.edge_at(1, Side::Right, 4).unwrap();
        let h = SpanningSubgraph::empty().with(r2).with(r4);
        assert_eq!(a_of(&l, h), vec![3]);
        // same-label pair L2 + R2 separates nothing
        let l2 = l.edge_at(1, Side::Left, 2).unwrap();
        let h = SpanningSubgraph::empty().with(r2).with(l2);
        assert!(a_of(&l, h).is_empty());
    }

    #[test]
    fn s_a_table_cases() {
        let l = label_cable(&fixtures::clasp2(), 3, LoopOrder::Forward, Chirality::Standard).unwrap();
        let r2 = l.edge_at(1, Side::Right, 2).unwrap();
        let r4 = l.edge_at(1, Side::Right, 4).unwrap();
        let l2 = l.edge_at(1, Side::Left, 2).unwrap();
        // a = {3} with R2 included: s_a = R2
        let h = SpanningSubgraph::empty().with(r2).with(r4);
        assert_eq!(s_a_of(&l, h, &a_of(&l, h)).unwrap(), r2);
        // a = {3} with R2 not included: s_a = L2
        let h = SpanningSubgraph::empty().with(l2).with(r4);
        assert_eq!(s_a_of(&l, h, &a_of(&l, h)).unwrap(), l2);
    }

    #[test]
    fn partition_verifies_on_clasp2() {
        let part = partition_auto(&fixtures::clasp2(), 3).unwrap();
        assert!(part.classes.len() > 1);
        let total: usize = part.classes.iter().map(|c| c.members.len()).sum();
        assert_eq!(total, part.subgraph_count);
    }

    #[test]
    fn class_contribution_matches_member_sum() {
        let part = partition_auto(&fixtures::clasp2(), 3).unwrap();
        let l = &part.labeling;
        for class in part.classes.iter().take(200) {
            let fast = class.contribution(l).unwrap();
            let mut slow = LaurentPoly::zero();
            for &m in &class.members {
                slow += &ribbon::contribution(&l.cable, &l.ctx, m).unwrap();
            }
            assert_eq!(fast, slow, "class base {:#x}", class.base.mask);
        }
    }

    #[test]
    fn degree_drop_on_clasp2() {
        let rep = verify_degree_drop(&fixtures::clasp2(), 3, &BracketOptions::default()).unwrap();
        assert_eq!(rep.m_dn, 22);
        assert_eq!(rep.bound, 14);
        assert!(rep.bracket_degree <= rep.bound);
    }

    #[test]
    fn classes_cover_bracket() {
        // sum of class contributions plus the high-rank rest equals <D^3>
        let part = partition_auto(&fixtures::clasp2(), 3).unwrap();
        let l = &part.labeling;
        let mut sum = LaurentPoly::zero();
        for class in &part.classes {
            sum += &class.contribution(l).unwrap();
        }
        let covered: std::collections::BTreeSet<u64> = part
            .classes
            .iter()
            .flat_map(|c| c.members.iter().map(|m| m.mask))
            .collect();
        let c = l.cable.crossing_count();
        for mask in 0u64..(1 << c) {
            if !covered.contains(&mask) {
                sum += &ribbon::contribution(&l.cable, &l.ctx, SpanningSubgraph { mask }).unwrap();
            }
        }
        let bracket = crate::bracket::fast_bracket(&l.cable, 20).unwrap();
        assert_eq!(sum, bracket);
    }

    #[test]
    fn free_edges_split_circles() {
        // every free edge of every class has both ends on one circle of the
        // base state, and adding any j of them splits exactly j circles
        let part = partition_auto(&fixtures::clasp2(), 3).unwrap();
        let l = &part.labeling;
        for class in &part.classes {
            let g0 = resolve(&l.cable, &class.base.state(l.cable.crossing_count()));
            for &e in &class.free {
                let (p, q) = g0.edge_ends(e);
                assert_eq!(p, q, "free edge {} of base {:#x}", e, class.base.mask);
            }
        }
    }

    #[test]
    fn g_a_zero_for_short_sequences() {
        let l = label_cable(&fixtures::clasp2(), 3, LoopOrder::Forward, Chirality::Standard).unwrap();
        let r2 = l.edge_at(1, Side::Right, 2).unwrap();
        let r4 = l.edge_at(1, Side::Right, 4).unwrap();
        let h = SpanningSubgraph::empty().with(r2).with(r4);
        let an = analyze(&l, h).unwrap();
        assert!(an.seqs.b[0][1].len() <= 1 || an.g_a <= 1);
        assert_eq!(an.g_a, 0);
    }
}
