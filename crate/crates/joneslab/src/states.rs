//! Kauffman states, state circles, state graphs and adequacy.
//!
//! A state graph keeps the full planar embedding: every crossing contributes
//! one edge whose two ends sit on smoothing arcs, and each state circle knows
//! the cyclic order of the smoothing arcs it runs through. Faces of the
//! embedded picture are traced from that data; the region analysis of the
//! cancellation machinery and several test oracles are built on it.

use crate::diagram::{dart, dart_crossing, dart_slot, Dart, Diagram, UnionFind};

/// A choice of A- or B-resolution at each crossing; a set bit means the
/// B-resolution.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct KauffmanState {
    bits: u64,
    len: usize,
}

impl KauffmanState {
    pub fn new(bits: u64, len: usize) -> Self {
        assert!(len <= 64, "states support at most 64 crossings");
        let mask = if len == 64 { !0u64 } else { (1u64 << len) - 1 };
        KauffmanState { bits: bits & mask, len }
    }

    pub fn all_a(len: usize) -> Self {
        Self::new(0, len)
    }

    pub fn all_b(len: usize) -> Self {
        Self::new(!0u64, len)
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_b(&self, crossing: usize) -> bool {
        (self.bits >> crossing) & 1 == 1
    }

    pub fn b_count(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Bitwise complement: resolves every crossing the opposite way.
    pub fn dual(&self) -> Self {
        Self::new(!self.bits, self.len)
    }
}

/// Smoothing arc side within a crossing: side 0 is the arc containing slot 0.
/// For the A-resolution the sides pair slots (0,1) and (2,3); for the
/// B-resolution (3,0) and (1,2).
fn side_of_slot(slot: usize, b: bool) -> usize {
    if b {
        usize::from(slot == 1 || slot == 2)
    } else {
        usize::from(slot >= 2)
    }
}

/// First slot of the CCW-consecutive pair (s, s+1) forming the given side.
fn first_slot(side: usize, b: bool) -> usize {
    match (b, side) {
        (false, 0) => 0,
        (false, _) => 2,
        (true, 0) => 3,
        (true, _) => 1,
    }
}

fn smoothing_partner(slot: usize, b: bool) -> usize {
    if b {
        [3, 2, 1, 0][slot]
    } else {
        [1, 0, 3, 2][slot]
    }
}

/// One passage of a state circle through a crossing's smoothing arc.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Attach {
    pub crossing: usize,
    pub side: usize,
}

#[derive(Clone, Debug)]
pub struct StateGraph {
    state: KauffmanState,
    /// Cyclic attachment sequences, one per circle that touches a crossing.
    circles: Vec<Vec<Attach>>,
    /// (circle, position) per (crossing, side).
    attach_pos: Vec<[(usize, usize); 2]>,
    /// Circles with no crossings (cabled/declared unknot components).
    free_circles: usize,
}

impl StateGraph {
    pub fn state(&self) -> &KauffmanState {
        &self.state
    }

    pub fn circle_count(&self) -> usize {
        self.circles.len() + self.free_circles
    }

    pub fn attached_circles(&self) -> &[Vec<Attach>] {
        &self.circles
    }

    pub fn free_circles(&self) -> usize {
        self.free_circles
    }

    pub fn circle_of(&self, crossing: usize, side: usize) -> usize {
        self.attach_pos[crossing][side].0
    }

    pub fn position_of(&self, crossing: usize, side: usize) -> (usize, usize) {
        self.attach_pos[crossing][side]
    }

    /// Circle ids of the two ends of the crossing's edge.
    pub fn edge_ends(&self, crossing: usize) -> (usize, usize) {
        (self.circle_of(crossing, 0), self.circle_of(crossing, 1))
    }

    pub fn is_loop_edge(&self, crossing: usize) -> bool {
        let (p, q) = self.edge_ends(crossing);
        p == q
    }

    pub fn crossing_count(&self) -> usize {
        self.attach_pos.len()
    }

    /// JSON embedding dump: circles with their cyclic attachment lists.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "circles": self.circles.iter().map(|c| {
                c.iter().map(|a| serde_json::json!([a.crossing, a.side])).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
            "free_circles": self.free_circles,
            "edges": (0..self.attach_pos.len()).map(|x| {
                let (p, q) = self.edge_ends(x);
                serde_json::json!([p, q])
            }).collect::<Vec<_>>(),
        })
    }
}

/// Resolve a diagram by a state, producing the state graph with its embedding.
pub fn resolve(d: &Diagram, sigma: &KauffmanState) -> StateGraph {
    let c = d.crossing_count();
    assert_eq!(sigma.len(), c, "state length must match crossing count");
    let ends = d.arc_ends();
    let nd = 4 * c;
    let mut visited = vec![false; nd];
    let mut circles = Vec::new();
    let mut attach_pos = vec![[(usize::MAX, usize::MAX); 2]; c];
    for start in 0..nd {
        if visited[start] {
            continue;
        }
        let mut seq = Vec::new();
        let mut dd: Dart = start;
        loop {
            // entering smoothing arc at dd
            let x = dart_crossing(dd);
            let b = sigma.is_b(x);
            let side = side_of_slot(dart_slot(dd), b);
            visited[dd] = true;
            attach_pos[x][side] = (circles.len(), seq.len());
            seq.push(Attach { crossing: x, side });
            let out = dart(x, smoothing_partner(dart_slot(dd), b));
            visited[out] = true;
            dd = d.arc_partner(&ends, out);
            if dd == start {
                break;
            }
        }
        circles.push(seq);
    }
    StateGraph {
        state: *sigma,
        circles,
        attach_pos,
        free_circles: d.unknot_components() as usize,
    }
}

/// Number of state circles, via union-find (no embedding data).
pub fn count_circles(d: &Diagram, sigma: &KauffmanState) -> usize {
    let c = d.crossing_count();
    assert_eq!(sigma.len(), c);
    if c == 0 {
        return d.unknot_components() as usize;
    }
    let ends = d.arc_ends();
    let mut uf = UnionFind::new(4 * c);
    for x in 0..c {
        let b = sigma.is_b(x);
        for slot in 0..4 {
            uf.union(dart(x, slot), dart(x, smoothing_partner(slot, b)));
        }
    }
    for e in ends.iter().skip(1) {
        uf.union(e[0], e[1]);
    }
    // every dart lies on exactly one circle, so dart components = circles
    uf.components() + d.unknot_components() as usize
}

/// All-A adequacy: true iff the all-A state graph has no loop edge. On
/// failure the witness is the smallest crossing whose edge is a loop.
pub fn is_a_adequate(d: &Diagram) -> (bool, Option<usize>) {
    if d.crossing_count() == 0 {
        return (true, None);
    }
    let g = resolve(d, &KauffmanState::all_a(d.crossing_count()));
    for x in 0..d.crossing_count() {
        if g.is_loop_edge(x) {
            return (false, Some(x));
        }
    }
    (true, None)
}

/// Flags of the embedded state picture: three per attachment vertex.
/// Vertex v = 2*crossing + side; flag = 3*v + k with k = 0 toward the first
/// slot of the smoothing pair, k = 1 toward the second, k = 2 along the edge.
pub const FLAG_FIRST: usize = 0;
pub const FLAG_SECOND: usize = 1;
pub const FLAG_EDGE: usize = 2;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MapEdge {
    /// Piece of a state circle between two consecutive attachments.
    Segment { circle: usize },
    /// The edge recording a crossing.
    Cross { crossing: usize },
}

/// Faces of the embedded state picture, traced from the rotation system.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub face_of_flag: Vec<usize>,
    pub face_count: usize,
    /// For every flag: its opposite flag and the kind of map edge they span.
    pub theta: Vec<usize>,
    pub kind: Vec<MapEdge>,
}

impl Embedding {
    pub fn flag(crossing: usize, side: usize, k: usize) -> usize {
        3 * (2 * crossing + side) + k
    }

    /// The two faces adjacent to the crossing's edge.
    pub fn edge_faces(&self, crossing: usize) -> (usize, usize) {
        let f0 = Self::flag(crossing, 0, FLAG_EDGE);
        let f1 = Self::flag(crossing, 1, FLAG_EDGE);
        (self.face_of_flag[f0], self.face_of_flag[f1])
    }
}

pub fn embed(d: &Diagram, g: &StateGraph) -> Embedding {
    let c = d.crossing_count();
    let ends = d.arc_ends();
    let nf = 3 * 2 * c;
    let mut theta = vec![usize::MAX; nf];
    let mut kind = vec![MapEdge::Cross { crossing: 0 }; nf];
    for x in 0..c {
        let b = g.state().is_b(x);
        // crossing edge
        let e0 = Embedding::flag(x, 0, FLAG_EDGE);
        let e1 = Embedding::flag(x, 1, FLAG_EDGE);
        theta[e0] = e1;
        theta[e1] = e0;
        kind[e0] = MapEdge::Cross { crossing: x };
        kind[e1] = MapEdge::Cross { crossing: x };
        // circle segments leave through each slot of each smoothing pair
        for side in 0..2 {
            let fs = first_slot(side, b);
            for (k, slot) in [(FLAG_FIRST, fs), (FLAG_SECOND, (fs + 1) % 4)] {
                let f = Embedding::flag(x, side, k);
                let other = d.arc_partner(&ends, dart(x, slot));
                let y = dart_crossing(other);
                let t = dart_slot(other);
                let b2 = g.state().is_b(y);
                let side2 = side_of_slot(t, b2);
                let k2 = if t == first_slot(side2, b2) { FLAG_FIRST } else { FLAG_SECOND };
                theta[f] = Embedding::flag(y, side2, k2);
                let circle = g.circle_of(x, side);
                kind[f] = MapEdge::Segment { circle };
            }
        }
    }
    // rotation: counterclockwise at each vertex is (first, second, edge)
    let rho = |f: usize| -> usize {
        let v = f / 3;
        3 * v + (f % 3 + 1) % 3
    };
    let mut face_of_flag = vec![usize::MAX; nf];
    let mut face_count = 0;
    for start in 0..nf {
        if face_of_flag[start] != usize::MAX {
            continue;
        }
        let mut f = start;
        loop {
            face_of_flag[f] = face_count;
            f = rho(theta[f]);
            if f == start {
                break;
            }
        }
        face_count += 1;
    }
    Embedding { face_of_flag, face_count, theta, kind }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures;

    #[test]
    fn unknot_all_a() {
        let d = fixtures::unknot();
        let g = resolve(&d, &KauffmanState::all_a(0));
        assert_eq!(g.circle_count(), 1);
        assert_eq!(g.attached_circles().len(), 0);
    }

    #[test]
    fn trefoil_all_a() {
        let d = fixtures::trefoil();
        let g = resolve(&d, &KauffmanState::all_a(3));
        assert_eq!(g.circle_count(), 2);
        assert!((0..3).all(|x| !g.is_loop_edge(x)));
        // the classical identity for alternating diagrams: s_A + s_B = c + 2
        let sb = count_circles(&d, &KauffmanState::all_b(3));
        assert_eq!(g.circle_count() + sb, 3 + 2);
        assert_eq!(sb, 3);
    }

    #[test]
    fn adequacy_examples() {
        assert!(is_a_adequate(&fixtures::trefoil()).0);
        assert!(is_a_adequate(&fixtures::figure8()).0);
        let (ok, w) = is_a_adequate(&fixtures::trefoil_kinked());
        assert!(!ok);
        assert_eq!(w, Some(3)); // the appended kink
        assert!(!is_a_adequate(&fixtures::clasp2()).0);
        assert!(!is_a_adequate(&fixtures::pseudo_trefoil()).0);
    }

    #[test]
    fn fig8_circle_counts() {
        let d = fixtures::figure8();
        assert_eq!(count_circles(&d, &KauffmanState::all_a(4)), 3);
        assert_eq!(count_circles(&d, &KauffmanState::all_b(4)), 3);
    }

    #[test]
    fn clasp2_all_a_is_one_circle_with_two_loops() {
        let d = fixtures::clasp2();
        let g = resolve(&d, &KauffmanState::all_a(2));
        assert_eq!(g.circle_count(), 1);
        assert!(g.is_loop_edge(0) && g.is_loop_edge(1));
        // interleaved chords: around the circle the passages alternate
        let seq: Vec<usize> = g.attached_circles()[0].iter().map(|a| a.crossing).collect();
        assert_eq!(seq.len(), 4);
        assert_ne!(seq[0], seq[1]);
        assert_ne!(seq[1], seq[2]);
    }

    #[test]
    fn pseudo_trefoil_three_loops() {
        let d = fixtures::pseudo_trefoil();
        let g = resolve(&d, &KauffmanState::all_a(3));
        assert_eq!(g.circle_count(), 1);
        assert!((0..3).all(|x| g.is_loop_edge(x)));
    }

    #[test]
    fn dual_involution() {
        let s = KauffmanState::new(0b101, 3);
        assert_eq!(s.dual().dual(), s);
        assert_eq!(KauffmanState::all_a(3).dual(), KauffmanState::all_b(3));
    }

    #[test]
    fn flip_changes_circle_count_by_one() {
        for d in [fixtures::trefoil(), fixtures::figure8(), fixtures::clasp2(), fixtures::pseudo_trefoil()] {
            let c = d.crossing_count();
            for bits in 0u64..(1 << c) {
                let s = KauffmanState::new(bits, c);
                let n0 = count_circles(&d, &s) as i64;
                assert!(n0 >= 1);
                for x in 0..c {
                    let s2 = KauffmanState::new(bits ^ (1 << x), c);
                    let n1 = count_circles(&d, &s2) as i64;
                    assert_eq!((n0 - n1).abs(), 1);
                }
            }
        }
    }

    #[test]
    fn resolve_matches_count() {
        for d in [fixtures::trefoil(), fixtures::figure8(), fixtures::pseudo_trefoil()] {
            let c = d.crossing_count();
            for bits in 0u64..(1 << c) {
                let s = KauffmanState::new(bits, c);
                assert_eq!(resolve(&d, &s).circle_count(), count_circles(&d, &s));
            }
        }
    }

    #[test]
    fn euler_formula_per_component() {
        // V - E + F = 2 per connected component of the embedded state picture
        for d in [
            fixtures::trefoil(),
            fixtures::figure8(),
            fixtures::clasp2(),
            fixtures::pseudo_trefoil(),
        ] {
            let c = d.crossing_count();
            for bits in 0u64..(1 << c) {
                let s = KauffmanState::new(bits, c);
                let g = resolve(&d, &s);
                let emb = embed(&d, &g);
                // component structure over attachment vertices
                let mut uf = UnionFind::new(2 * c);
                for f in 0..emb.theta.len() {
                    uf.union(f / 3, emb.theta[f] / 3);
                }
                let mut v_per = std::collections::BTreeMap::new();
                let mut e_per = std::collections::BTreeMap::new();
                let mut f_per = std::collections::BTreeMap::new();
                for v in 0..2 * c {
                    *v_per.entry(uf.find(v)).or_insert(0i64) += 1;
                }
                for f in 0..emb.theta.len() {
                    if f < emb.theta[f] {
                        *e_per.entry(uf.find(f / 3)).or_insert(0i64) += 1;
                    }
                }
                let mut face_comp = std::collections::BTreeMap::new();
                for f in 0..emb.theta.len() {
                    face_comp.insert(emb.face_of_flag[f], uf.find(f / 3));
                }
                for (_, comp) in face_comp {
                    *f_per.entry(comp).or_insert(0i64) += 1;
                }
                for (root, &v) in &v_per {
                    let chi = v - e_per[root] + f_per[root];
                    assert_eq!(chi, 2, "diagram {} state {:b}", d, bits);
                }
            }
        }
    }

    #[test]
    fn state_graph_json_shape() {
        let d = fixtures::trefoil();
        let g = resolve(&d, &KauffmanState::all_a(3));
        let j = g.to_json();
        assert_eq!(j["circles"].as_array().unwrap().len(), 2);
        assert_eq!(j["edges"].as_array().unwrap().len(), 3);
    }
}
