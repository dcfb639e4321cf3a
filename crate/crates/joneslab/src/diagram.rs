//! PD-code link diagrams: parsing, validation, writhe, mirroring, nugatory
//! crossing detection and blackboard-framed cabling.
//!
//! Conventions (fixed for the whole crate):
//! * `X[a,b,c,d]` lists arcs counterclockwise starting at the incoming
//!   under-strand, so the under-strand runs a -> c.
//! * The A-smoothing of a crossing joins slots (0,1) and (2,3); the
//!   B-smoothing joins (1,2) and (3,0).
//! * A crossing is positive when the over-strand runs slot 3 -> slot 1.
//! * Arcs are numbered consecutively along each component in PD text; a
//!   `U<k>` prefix declares k zero-crossing unknot components.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

pub type ArcId = u32;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Crossing {
    /// Arc labels counterclockwise from the incoming under-strand.
    pub slots: [ArcId; 4],
    /// +1 or -1, derived from strand orientations.
    pub sign: i8,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    arc_count: u32,
    /// Zero-crossing unknot components, declared separately since PD codes
    /// cannot express them.
    unknots: u32,
}

/// A dart is one of the four slot positions of a crossing: `4*ci + slot`.
pub type Dart = usize;

pub fn dart(ci: usize, slot: usize) -> Dart {
    4 * ci + slot
}

pub fn dart_crossing(d: Dart) -> usize {
    d / 4
}

pub fn dart_slot(d: Dart) -> usize {
    d % 4
}

impl Diagram {
    pub fn new(crossings: Vec<Crossing>, arc_count: u32, unknots: u32) -> Result<Self> {
        let d = Diagram { crossings, arc_count, unknots };
        d.validate()?;
        Ok(d)
    }

    pub fn unknot() -> Self {
        Diagram { crossings: Vec::new(), arc_count: 0, unknots: 1 }
    }

    pub fn empty() -> Self {
        Diagram { crossings: Vec::new(), arc_count: 0, unknots: 0 }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> u32 {
        self.arc_count
    }

    pub fn unknot_components(&self) -> u32 {
        self.unknots
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|x| x.sign as i64).sum()
    }

    pub fn negative_crossings(&self) -> usize {
        self.crossings.iter().filter(|x| x.sign < 0).count()
    }

    /// Both dart occurrences of each arc, in slot-scan order.
    pub fn arc_ends(&self) -> Vec<[Dart; 2]> {
        let mut ends: Vec<Vec<Dart>> = vec![Vec::new(); self.arc_count as usize + 1];
        for (ci, x) in self.crossings.iter().enumerate() {
            for (slot, &a) in x.slots.iter().enumerate() {
                ends[a as usize].push(dart(ci, slot));
            }
        }
        let mut out = vec![[0usize; 2]; self.arc_count as usize + 1];
        for (a, e) in ends.iter().enumerate().skip(1) {
            debug_assert_eq!(e.len(), 2);
            out[a] = [e[0], e[1]];
        }
        out
    }

    /// The dart at the other end of the arc attached at `d`.
    pub fn arc_partner(&self, ends: &[[Dart; 2]], d: Dart) -> Dart {
        let a = self.crossings[dart_crossing(d)].slots[dart_slot(d)] as usize;
        let [p, q] = ends[a];
        if p == d {
            q
        } else {
            p
        }
    }

    fn validate(&self) -> Result<()> {
        let mut counts: BTreeMap<ArcId, usize> = BTreeMap::new();
        for x in &self.crossings {
            if x.sign != 1 && x.sign != -1 {
                return Err(Error::Validation("crossing sign must be +1 or -1".into()));
            }
            for &a in &x.slots {
                if a == 0 || a > self.arc_count {
                    return Err(Error::Validation(format!(
                        "arc label {} out of range 1..={}",
                        a, self.arc_count
                    )));
                }
                *counts.entry(a).or_insert(0) += 1;
            }
        }
        if self.crossings.is_empty() {
            if self.arc_count != 0 {
                return Err(Error::Validation("crossing-free diagram must have no arcs".into()));
            }
            return Ok(());
        }
        for a in 1..=self.arc_count {
            if counts.get(&a).copied().unwrap_or(0) != 2 {
                return Err(Error::Validation(format!(
                    "arc {} appears {} times, expected exactly 2",
                    a,
                    counts.get(&a).copied().unwrap_or(0)
                )));
            }
        }
        // Orientations must be globally consistent: the sign of each crossing
        // decides the over-strand direction, and together with the under
        // a -> c rule every arc needs exactly one head and one tail.
        let mut succ: BTreeMap<ArcId, ArcId> = BTreeMap::new();
        let mut pred: BTreeMap<ArcId, ArcId> = BTreeMap::new();
        let mut set = |succ: &mut BTreeMap<ArcId, ArcId>,
                       pred: &mut BTreeMap<ArcId, ArcId>,
                       u: ArcId,
                       v: ArcId|
         -> Result<()> {
            if succ.insert(u, v).is_some() {
                return Err(Error::Validation(format!("arc {} has two successors", u)));
            }
            if pred.insert(v, u).is_some() {
                return Err(Error::Validation(format!("arc {} has two predecessors", v)));
            }
            Ok(())
        };
        for x in &self.crossings {
            let [a, b, c, d] = x.slots;
            set(&mut succ, &mut pred, a, c)?;
            if x.sign > 0 {
                set(&mut succ, &mut pred, d, b)?;
            } else {
                set(&mut succ, &mut pred, b, d)?;
            }
        }
        for a in 1..=self.arc_count {
            if !succ.contains_key(&a) || !pred.contains_key(&a) {
                return Err(Error::Validation(format!("arc {} is not on an oriented strand", a)));
            }
        }
        self.validate_planar()?;
        Ok(())
    }

    /// Faces of the 4-valent map under the slot rotation system: orbits of
    /// sigma o alpha, where sigma is the counterclockwise next-slot map and
    /// alpha swaps the two ends of each arc. Each face is a dart cycle.
    pub fn map_faces(&self) -> Vec<Vec<Dart>> {
        let ends = self.arc_ends();
        let nd = 4 * self.crossings.len();
        let mut seen = vec![false; nd];
        let mut faces = Vec::new();
        for start in 0..nd {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            loop {
                seen[d] = true;
                face.push(d);
                let other = self.arc_partner(&ends, d);
                let next = dart(dart_crossing(other), (dart_slot(other) + 1) % 4);
                d = next;
                if d == start {
                    break;
                }
            }
            faces.push(face);
        }
        faces
    }

    /// Euler characteristic check per connected component of the 4-valent
    /// graph: a realizable diagram satisfies V - E + F = 2 on each.
    fn validate_planar(&self) -> Result<()> {
        if self.crossings.is_empty() {
            return Ok(());
        }
        let ends = self.arc_ends();
        let mut uf = UnionFind::new(self.crossings.len());
        for e in ends.iter().skip(1) {
            uf.union(dart_crossing(e[0]), dart_crossing(e[1]));
        }
        let mut v = BTreeMap::new();
        let mut ecnt = BTreeMap::new();
        let mut fcnt = BTreeMap::new();
        for ci in 0..self.crossings.len() {
            *v.entry(uf.find(ci)).or_insert(0i64) += 1;
        }
        for e in ends.iter().skip(1) {
            *ecnt.entry(uf.find(dart_crossing(e[0]))).or_insert(0i64) += 1;
        }
        for face in self.map_faces() {
            *fcnt.entry(uf.find(dart_crossing(face[0]))).or_insert(0i64) += 1;
        }
        for (root, &vi) in &v {
            let chi = vi - ecnt.get(root).copied().unwrap_or(0) + fcnt.get(root).copied().unwrap_or(0);
            if chi != 2 {
                return Err(Error::Validation(format!(
                    "rotation system is not planar (component Euler characteristic {})",
                    chi
                )));
            }
        }
        Ok(())
    }

    /// Link components as cycles of arcs in strand order, excluding declared
    /// unknot components.
    pub fn components(&self) -> Vec<Vec<ArcId>> {
        let mut succ: BTreeMap<ArcId, ArcId> = BTreeMap::new();
        for x in &self.crossings {
            let [a, b, c, d] = x.slots;
            succ.insert(a, c);
            if x.sign > 0 {
                succ.insert(d, b);
            } else {
                succ.insert(b, d);
            }
        }
        let mut seen: BTreeMap<ArcId, bool> = BTreeMap::new();
        let mut comps = Vec::new();
        for a in 1..=self.arc_count {
            if seen.get(&a).copied().unwrap_or(false) {
                continue;
            }
            let mut cyc = Vec::new();
            let mut u = a;
            loop {
                cyc.push(u);
                seen.insert(u, true);
                u = succ[&u];
                if u == a {
                    break;
                }
            }
            comps.push(cyc);
        }
        comps
    }

    pub fn component_count(&self) -> usize {
        self.components().len() + self.unknots as usize
    }

    pub fn mirror(&self) -> Diagram {
        let crossings = self
            .crossings
            .iter()
            .map(|x| {
                let [a, b, c, d] = x.slots;
                if x.sign > 0 {
                    // over entered at slot 3; it becomes the incoming under
                    Crossing { slots: [d, a, b, c], sign: -1 }
                } else {
                    Crossing { slots: [b, c, d, a], sign: 1 }
                }
            })
            .collect();
        Diagram { crossings, arc_count: self.arc_count, unknots: self.unknots }
    }

    /// True iff no crossing is nugatory. A crossing is nugatory exactly when
    /// one of its two smoothings disconnects the underlying 4-valent graph,
    /// which is the combinatorial form of the separating-curve definition.
    pub fn is_reduced(&self) -> bool {
        (0..self.crossings.len()).all(|ci| !self.is_nugatory(ci))
    }

    pub fn is_nugatory(&self, ci: usize) -> bool {
        let base = self.graph_components_smoothed(None, 0);
        self.graph_components_smoothed(Some(ci), 0) > base
            || self.graph_components_smoothed(Some(ci), 1) > base
    }

    /// Connected components of the underlying graph, with crossing `smooth`
    /// (if any) replaced by one of its two smoothings (0 = (01)(23),
    /// 1 = (12)(30)).
    fn graph_components_smoothed(&self, smooth: Option<usize>, which: usize) -> usize {
        if self.arc_count == 0 {
            return self.unknots as usize;
        }
        let mut uf = UnionFind::new(self.arc_count as usize + 1);
        for (ci, x) in self.crossings.iter().enumerate() {
            if Some(ci) == smooth {
                let [a, b, c, d] = x.slots;
                if which == 0 {
                    uf.union(a as usize, b as usize);
                    uf.union(c as usize, d as usize);
                } else {
                    uf.union(b as usize, c as usize);
                    uf.union(d as usize, a as usize);
                }
            } else {
                let s = x.slots;
                uf.union(s[0] as usize, s[1] as usize);
                uf.union(s[1] as usize, s[2] as usize);
                uf.union(s[2] as usize, s[3] as usize);
            }
        }
        let mut roots = std::collections::BTreeSet::new();
        for a in 1..=self.arc_count as usize {
            roots.insert(uf.find(a));
        }
        roots.len() + self.unknots as usize
    }

    /// Blackboard-framed n-cable. Each arc a becomes arcs (a-1)n+1 ..= a*n
    /// ordered left-to-right along the orientation, each crossing becomes an
    /// n x n grid of crossings of the same sign. Returns the cabled diagram
    /// and the map from each new crossing back to (original crossing, row,
    /// column), rows indexing under-strand copies and columns over-strand
    /// copies (both 1-based).
    pub fn cable(&self, n: usize) -> Result<(Diagram, CableMap)> {
        if n < 1 {
            return Err(Error::InvalidN(n as i64));
        }
        if n == 1 {
            let map = CableMap {
                n: 1,
                cells: (0..self.crossings.len()).map(|ci| (ci, 1, 1)).collect(),
                index: (0..self.crossings.len()).map(|ci| vec![vec![ci]]).collect(),
            };
            return Ok((self.clone(), map));
        }
        let n_u32 = n as u32;
        let ext = |a: ArcId, copy: usize| -> ArcId { (a - 1) * n_u32 + copy as u32 };
        let mut next_fresh = self.arc_count * n_u32 + 1;
        let mut crossings = Vec::with_capacity(self.crossings.len() * n * n);
        let mut cells = Vec::with_capacity(self.crossings.len() * n * n);
        let mut index = Vec::with_capacity(self.crossings.len());
        for (ci, x) in self.crossings.iter().enumerate() {
            let [a, b, c, d] = x.slots;
            // Under copies run south to north at horizontal positions
            // 1..n west to east; copy i sits at position i (left of the
            // northward direction is west). Over copies run horizontally;
            // for a positive crossing the over-strand goes west to east and
            // copy 1 is the northmost row, otherwise copy 1 is southmost.
            // under segment (i, level): level 0 = entering arc, n = exiting.
            let mut under_seg = vec![vec![0u32; n + 1]; n + 1];
            let mut over_seg = vec![vec![0u32; n + 1]; n + 1];
            for i in 1..=n {
                under_seg[i][0] = ext(a, i);
                under_seg[i][n] = ext(c, i);
                for lvl in 1..n {
                    under_seg[i][lvl] = next_fresh;
                    next_fresh += 1;
                }
            }
            // over entry arc is d for positive crossings (d -> b), b otherwise
            let (entry, exit) = if x.sign > 0 { (d, b) } else { (b, d) };
            for j in 1..=n {
                // over segments indexed west to east by x-position 0..n
                let (w, e) = if x.sign > 0 {
                    (ext(entry, j), ext(exit, j))
                } else {
                    (ext(exit, j), ext(entry, j))
                };
                over_seg[j][0] = w;
                over_seg[j][n] = e;
                for lvl in 1..n {
                    over_seg[j][lvl] = next_fresh;
                    next_fresh += 1;
                }
            }
            let mut grid_index = vec![vec![0usize; n]; n];
            // cell at (x-position px, y-position py), both 1..n; y counts
            // south to north
            for px in 1..=n {
                for py in 1..=n {
                    // which over copy occupies row py
                    let j = if x.sign > 0 { n + 1 - py } else { py };
                    let south = under_seg[px][py - 1];
                    let north = under_seg[px][py];
                    let west = over_seg[j][px - 1];
                    let east = over_seg[j][px];
                    let id = crossings.len();
                    crossings.push(Crossing { slots: [south, east, north, west], sign: x.sign });
                    cells.push((ci, px, j));
                    grid_index[px - 1][j - 1] = id;
                }
            }
            index.push(grid_index);
        }
        let arc_count = next_fresh - 1;
        let out = Diagram { crossings, arc_count, unknots: self.unknots * n_u32 };
        out.validate()?;
        Ok((out, CableMap { n, cells, index }))
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        if self.unknots > 0 {
            s.push_str(&format!("U{} ", self.unknots));
        }
        s.push_str("PD[");
        for (i, x) in self.crossings.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&format!("X[{},{},{},{}]", x.slots[0], x.slots[1], x.slots[2], x.slots[3]));
        }
        s.push(']');
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "unknot_components": self.unknots,
            "arc_count": self.arc_count,
            "crossings": self.crossings.iter().map(|x| {
                serde_json::json!({"slots": x.slots, "sign": x.sign})
            }).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Map from cabled crossings back to cells of the original diagram.
#[derive(Clone, Debug)]
pub struct CableMap {
    pub n: usize,
    /// new crossing id -> (original crossing, row 1..=n, column 1..=n)
    pub cells: Vec<(usize, usize, usize)>,
    /// original crossing -> row-1 -> col-1 -> new crossing id
    pub index: Vec<Vec<Vec<usize>>>,
}

impl CableMap {
    /// All cabled crossings of one original crossing.
    pub fn cells_of(&self, orig: usize) -> Vec<usize> {
        self.index[orig].iter().flatten().copied().collect()
    }
}

/// Parse the PD grammar `[U<count>] PD[X[a,b,c,d],...]`, whitespace
/// insensitive. Crossing signs are derived from the arc numbering, which must
/// be consecutive along each component (with one wrap at the component
/// maximum). Diagrams built by `cable` need not follow that convention; on
/// such input the parser falls back to any globally consistent orientation,
/// chosen deterministically.
pub fn parse_pd(text: &str) -> Result<Diagram> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut rest = compact.as_str();
    let mut unknots = 0u32;
    if let Some(r) = rest.strip_prefix('U') {
        let idx = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
        if idx == 0 {
            return Err(Error::Syntax("expected digits after U".into()));
        }
        unknots = r[..idx]
            .parse::<u32>()
            .map_err(|e| Error::Syntax(format!("bad unknot count: {}", e)))?;
        rest = &r[idx..];
    }
    let body = rest
        .strip_prefix("PD[")
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Syntax("expected PD[...]".into()))?;
    let mut slots_list: Vec<[ArcId; 4]> = Vec::new();
    let mut cursor = body;
    while !cursor.is_empty() {
        if let Some(r) = cursor.strip_prefix(',') {
            cursor = r;
            continue;
        }
        let r = cursor
            .strip_prefix("X[")
            .ok_or_else(|| Error::Syntax(format!("expected X[...], found {:?}", cursor)))?;
        let end = r.find(']').ok_or_else(|| Error::Syntax("unterminated X[".into()))?;
        let nums: Vec<&str> = r[..end].split(',').collect();
        if nums.len() != 4 {
            return Err(Error::Syntax(format!("X[...] needs 4 arcs, got {}", nums.len())));
        }
        let mut slots = [0u32; 4];
        for (i, t) in nums.iter().enumerate() {
            slots[i] = t
                .parse::<u32>()
                .map_err(|e| Error::Syntax(format!("bad arc label {:?}: {}", t, e)))?;
            if slots[i] == 0 {
                return Err(Error::Syntax("arc labels are positive integers".into()));
            }
        }
        slots_list.push(slots);
        cursor = &r[end + 1..];
    }
    if slots_list.is_empty() {
        return Ok(Diagram { crossings: Vec::new(), arc_count: 0, unknots });
    }
    let arc_count = slots_list.iter().flatten().copied().max().unwrap();
    // multiplicity check before orientation search
    let mut counts = vec![0usize; arc_count as usize + 1];
    for s in &slots_list {
        for &a in s {
            counts[a as usize] += 1;
        }
    }
    for a in 1..=arc_count {
        if counts[a as usize] != 2 {
            return Err(Error::Validation(format!(
                "arc {} appears {} times, expected exactly 2",
                a, counts[a as usize]
            )));
        }
    }
    let signs = derive_signs(&slots_list, arc_count, true)
        .or_else(|_| derive_signs(&slots_list, arc_count, false))?;
    let crossings = slots_list
        .iter()
        .zip(&signs)
        .map(|(s, &sign)| Crossing { slots: *s, sign })
        .collect();
    let d = Diagram { crossings, arc_count, unknots };
    d.validate()?;
    Ok(d)
}

/// Choose per-crossing over-strand directions so that every arc gets exactly
/// one head and one tail. With `numbered` the resulting components must be
/// numbered consecutively with a single wrap; without it any consistent
/// orientation is accepted (first found in a deterministic search order).
fn derive_signs(slots_list: &[[ArcId; 4]], arc_count: u32, numbered: bool) -> Result<Vec<i8>> {
    #[derive(Clone)]
    struct State {
        succ: Vec<u32>,
        pred: Vec<u32>,
    }
    impl State {
        fn set(&mut self, u: u32, v: u32) -> bool {
            if self.succ[u as usize] != 0 || self.pred[v as usize] != 0 {
                return false;
            }
            self.succ[u as usize] = v;
            self.pred[v as usize] = u;
            true
        }
        fn unset(&mut self, u: u32, v: u32) {
            self.succ[u as usize] = 0;
            self.pred[v as usize] = 0;
        }
    }
    fn consecutive(a: ArcId, b: ArcId) -> bool {
        b == a + 1
    }
    fn search(
        st: &mut State,
        slots_list: &[[ArcId; 4]],
        ci: usize,
        signs: &mut Vec<i8>,
        numbered: bool,
        arc_count: u32,
    ) -> bool {
        if ci == slots_list.len() {
            return finish(st, numbered, arc_count);
        }
        let [_, b, _, d] = slots_list[ci];
        // sign +1: over runs d -> b; sign -1: b -> d. Prefer the direction
        // that matches consecutive numbering.
        let prefer_pos = consecutive(d, b) || (!consecutive(b, d) && d > b);
        let order: [i8; 2] = if prefer_pos { [1, -1] } else { [-1, 1] };
        for sign in order {
            let (u, v) = if sign > 0 { (d, b) } else { (b, d) };
            if st.set(u, v) {
                signs.push(sign);
                if search(st, slots_list, ci + 1, signs, numbered, arc_count) {
                    return true;
                }
                signs.pop();
                st.unset(u, v);
            }
        }
        false
    }
    fn finish(st: &State, numbered: bool, arc_count: u32) -> bool {
        let mut seen = vec![false; arc_count as usize + 1];
        for a in 1..=arc_count {
            if st.succ[a as usize] == 0 || st.pred[a as usize] == 0 {
                return false;
            }
        }
        for a in 1..=arc_count {
            if seen[a as usize] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut u = a;
            loop {
                if seen[u as usize] {
                    return false;
                }
                seen[u as usize] = true;
                cyc.push(u);
                u = st.succ[u as usize];
                if u == a {
                    break;
                }
            }
            if numbered {
                let lo = *cyc.iter().min().unwrap();
                let hi = *cyc.iter().max().unwrap();
                if (hi - lo + 1) as usize != cyc.len() {
                    return false;
                }
                let mut wraps = 0;
                for w in 0..cyc.len() {
                    let u = cyc[w];
                    let v = cyc[(w + 1) % cyc.len()];
                    if v == u + 1 {
                        continue;
                    }
                    if u == hi && v == lo {
                        wraps += 1;
                    } else {
                        return false;
                    }
                }
                if cyc.len() > 1 && wraps != 1 {
                    return false;
                }
            }
        }
        true
    }

    let mut st = State {
        succ: vec![0; arc_count as usize + 1],
        pred: vec![0; arc_count as usize + 1],
    };
    // under-strand orientation a -> c is forced
    for s in slots_list {
        if !st.set(s[0], s[2]) {
            return Err(Error::Validation(format!(
                "inconsistent under-strand orientation at arc {}",
                s[0]
            )));
        }
    }
    let mut signs = Vec::with_capacity(slots_list.len());
    if search(&mut st, slots_list, 0, &mut signs, numbered, arc_count) {
        Ok(signs)
    } else {
        Err(Error::Validation("no consistent strand orientation".into()))
    }
}

/// Small union-find used across the crate.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), rank: vec![0; n], components: n }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.components -= 1;
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }

    pub fn components(&self) -> usize {
        self.components
    }
}

/// Standard fixtures used throughout the tests.
pub mod fixtures {
    use super::{parse_pd, Diagram};

    /// Right-handed trefoil, writhe +3, A-adequate with two all-A circles.
    pub fn trefoil() -> Diagram {
        parse_pd("PD[X[4,2,5,1],X[6,4,1,3],X[2,6,3,5]]").unwrap()
    }

    /// Left-handed trefoil (Rolfsen 3_1), writhe -3.
    pub fn trefoil_left() -> Diagram {
        parse_pd("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]").unwrap()
    }

    /// Standard figure-eight diagram, writhe 0.
    pub fn figure8() -> Diagram {
        parse_pd("PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]").unwrap()
    }

    /// Two-component clasp whose both crossings smooth to loops in the all-A
    /// state: reduced and not A-adequate. This is the worked-example shape.
    pub fn clasp2() -> Diagram {
        parse_pd("PD[X[1,3,2,4],X[2,3,1,4]]").unwrap()
    }

    /// Trefoil shadow with one crossing switched: a 3-crossing unknot diagram
    /// whose all-A state is a single circle with three loop edges.
    pub fn pseudo_trefoil() -> Diagram {
        parse_pd("PD[X[4,2,5,1],X[6,4,1,3],X[5,2,6,3]]").unwrap()
    }

    /// Right trefoil with an extra kink on the A-loop side (not reduced).
    pub fn trefoil_kinked() -> Diagram {
        parse_pd("PD[X[4,2,5,1],X[8,4,1,3],X[2,8,3,7],X[5,6,6,7]]").unwrap()
    }

    pub fn unknot() -> Diagram {
        Diagram::unknot()
    }
}
