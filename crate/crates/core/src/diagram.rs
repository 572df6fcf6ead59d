//! Oriented planar diagrams (PD codes).
//!
//! A crossing is written `X(a, b, c, d)`: the four incident arcs listed
//! counterclockwise starting from the incoming under-strand, so the
//! under-strand runs `a -> c`. The over-strand runs `d -> b` on a positive
//! crossing and `b -> d` on a negative one.
//!
//! Arcs are edges of the diagram between crossings. Components with no
//! crossings at all are kept as a count of free loops; the unknot is the empty
//! crossing list with one free loop.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub type ArcId = i64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    pub arcs: [ArcId; 4],
    pub sign: Sign,
}

impl Crossing {
    pub fn new(arcs: [ArcId; 4], sign: Sign) -> Self {
        Crossing { arcs, sign }
    }

    pub fn under_in(&self) -> ArcId {
        self.arcs[0]
    }

    pub fn under_out(&self) -> ArcId {
        self.arcs[2]
    }

    pub fn over_in(&self) -> ArcId {
        self.arcs[self.over_in_pos()]
    }

    pub fn over_out(&self) -> ArcId {
        self.arcs[4 - self.over_in_pos()]
    }

    fn over_in_pos(&self) -> usize {
        match self.sign {
            Sign::Positive => 3,
            Sign::Negative => 1,
        }
    }

    /// Whether the arc at `pos` ends at this crossing.
    fn is_incoming(&self, pos: usize) -> bool {
        pos == 0 || pos == self.over_in_pos()
    }

    /// The same crossing seen from the other side of the projection plane:
    /// over and under exchange and the sign flips.
    pub fn mirrored(&self) -> Crossing {
        let [a, b, c, d] = self.arcs;
        match self.sign {
            Sign::Positive => Crossing::new([d, a, b, c], Sign::Negative),
            Sign::Negative => Crossing::new([b, c, d, a], Sign::Positive),
        }
    }

    fn relabel(&self, f: impl FnMut(ArcId) -> ArcId) -> Crossing {
        Crossing::new(self.arcs.map(f), self.sign)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("arc multiplicity: {}", describe_multiplicities(.0))]
    ArcMultiplicity(Vec<(ArcId, usize)>),
    #[error("arc {arc} is incoming at two crossing ends")]
    DoubleIncoming { arc: ArcId },
    #[error("arc {arc} is outgoing at two crossing ends")]
    DoubleOutgoing { arc: ArcId },
}

fn describe_multiplicities(bad: &[(ArcId, usize)]) -> String {
    bad.iter()
        .map(|(a, n)| format!("arc {a} appears {n} time{}", if *n == 1 { "" } else { "s" }))
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("invalid PD code: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("expected a knot, found {components} components")]
    NotAKnot { components: usize },
    #[error("component {0} does not exist")]
    NoSuchComponent(usize),
    #[error("crossing {0} does not exist")]
    NoSuchCrossing(usize),
    #[error("linking number needs two distinct components")]
    SameComponent,
    #[error("inter-component sign sum {0} is odd")]
    OddLinkingSum(i64),
    #[error("crossings {0} and {1} do not form a cancelling bigon")]
    NotABigon(usize, usize),
    #[error("orientation of crossing {crossing} cannot be determined consistently")]
    Orientation { crossing: usize },
}

/// One link component: its arcs in traversal order. Free loops have no arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub arcs: Vec<ArcId>,
}

impl Component {
    pub fn is_free_loop(&self) -> bool {
        self.arcs.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PdCode {
    crossings: Vec<Crossing>,
    free_loops: usize,
}

impl PdCode {
    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    /// `count` split unknotted circles.
    pub fn unlink(count: usize) -> Self {
        PdCode { crossings: Vec::new(), free_loops: count }
    }

    /// Builds a diagram from oriented crossings and checks it.
    pub fn new(crossings: Vec<Crossing>, free_loops: usize) -> Result<Self, DiagramError> {
        let pd = Self::new_unchecked(crossings, free_loops);
        pd.check()?;
        Ok(pd)
    }

    pub fn new_unchecked(crossings: Vec<Crossing>, free_loops: usize) -> Self {
        PdCode { crossings, free_loops }
    }

    /// Builds a diagram from bare quadruples, recovering each over-strand's
    /// direction from the under-strand data. Over-strands that are never
    /// constrained (a component lying entirely on top) fall back to the
    /// consecutive-label convention. An empty list is the unknot.
    pub fn from_quads(quads: &[[ArcId; 4]]) -> Result<Self, DiagramError> {
        if quads.is_empty() {
            return Ok(Self::unknot());
        }
        if let Some(v) = multiplicity_violation(quads.iter()) {
            return Err(DiagramError::Invalid(vec![v]));
        }
        let signs = infer_signs(quads)?;
        let crossings = quads.iter().zip(signs).map(|(q, s)| Crossing::new(*q, s)).collect();
        Self::new(crossings, 0)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn is_unknot_diagram(&self) -> bool {
        self.crossings.is_empty() && self.free_loops == 1
    }

    /// All structural problems found; empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        if let Some(v) = multiplicity_violation(self.crossings.iter().map(|c| &c.arcs)) {
            return vec![v];
        }
        let mut incoming: BTreeMap<ArcId, usize> = BTreeMap::new();
        let mut outgoing: BTreeMap<ArcId, usize> = BTreeMap::new();
        for c in &self.crossings {
            for pos in 0..4 {
                let map = if c.is_incoming(pos) { &mut incoming } else { &mut outgoing };
                *map.entry(c.arcs[pos]).or_default() += 1;
            }
        }
        let mut out = Vec::new();
        for (&arc, &n) in &incoming {
            if n > 1 {
                out.push(Violation::DoubleIncoming { arc });
            }
        }
        for (&arc, &n) in &outgoing {
            if n > 1 {
                out.push(Violation::DoubleOutgoing { arc });
            }
        }
        out
    }

    fn check(&self) -> Result<(), DiagramError> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(DiagramError::Invalid(v))
        }
    }

    /// Successor of each arc along the orientation.
    pub fn successors(&self) -> BTreeMap<ArcId, ArcId> {
        let mut succ = BTreeMap::new();
        for c in &self.crossings {
            succ.insert(c.under_in(), c.under_out());
            succ.insert(c.over_in(), c.over_out());
        }
        succ
    }

    /// Link components: arc cycles in order of their smallest arc, then the
    /// free loops.
    pub fn components(&self) -> Result<Vec<Component>, DiagramError> {
        self.check()?;
        let succ = self.successors();
        let mut seen = BTreeSet::new();
        let mut comps = Vec::new();
        for &start in succ.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut arcs = Vec::new();
            let mut a = start;
            while seen.insert(a) {
                arcs.push(a);
                a = succ[&a];
            }
            comps.push(Component { arcs });
        }
        comps.extend((0..self.free_loops).map(|_| Component { arcs: Vec::new() }));
        Ok(comps)
    }

    pub fn component_count(&self) -> Result<usize, DiagramError> {
        Ok(self.components()?.len())
    }

    fn component_index(&self) -> Result<(Vec<Component>, HashMap<ArcId, usize>), DiagramError> {
        let comps = self.components()?;
        let mut index = HashMap::new();
        for (i, c) in comps.iter().enumerate() {
            for &a in &c.arcs {
                index.insert(a, i);
            }
        }
        Ok((comps, index))
    }

    pub fn writhe(&self) -> Result<i64, DiagramError> {
        self.check()?;
        Ok(self.crossings.iter().map(|c| c.sign.value()).sum())
    }

    /// Half the signed count of crossings between components `c1` and `c2`.
    pub fn linking_number(&self, c1: usize, c2: usize) -> Result<i64, DiagramError> {
        if c1 == c2 {
            return Err(DiagramError::SameComponent);
        }
        let (comps, index) = self.component_index()?;
        for c in [c1, c2] {
            if c >= comps.len() {
                return Err(DiagramError::NoSuchComponent(c));
            }
        }
        let mut sum = 0;
        for x in &self.crossings {
            let (u, o) = (index[&x.under_in()], index[&x.over_in()]);
            if (u == c1 && o == c2) || (u == c2 && o == c1) {
                sum += x.sign.value();
            }
        }
        if sum % 2 != 0 {
            return Err(DiagramError::OddLinkingSum(sum));
        }
        Ok(sum / 2)
    }

    /// Every crossing switched, same projection.
    pub fn mirror(&self) -> PdCode {
        PdCode {
            crossings: self.crossings.iter().map(Crossing::mirrored).collect(),
            free_loops: self.free_loops,
        }
    }

    /// Arcs renumbered `1..=2n` along components (components ordered by their
    /// smallest original arc, each walked from that arc). Crossing order is
    /// kept. Two diagrams are considered equal when their canonical forms are.
    pub fn canonical(&self) -> PdCode {
        let succ = self.successors();
        let mut seen = BTreeSet::new();
        let mut relabel = HashMap::new();
        let mut next = 1;
        for &start in succ.keys() {
            let mut a = start;
            while seen.insert(a) {
                relabel.insert(a, next);
                next += 1;
                a = succ[&a];
            }
        }
        let crossings = self.crossings.iter().map(|c| c.relabel(|a| relabel[&a])).collect();
        PdCode { crossings, free_loops: self.free_loops }
    }

    /// Connected sum of two knots, splicing at the smallest arc of each.
    pub fn connected_sum(&self, other: &PdCode) -> Result<PdCode, DiagramError> {
        for pd in [self, other] {
            let n = pd.component_count()?;
            if n != 1 {
                return Err(DiagramError::NotAKnot { components: n });
            }
        }
        if self.crossings.is_empty() {
            return Ok(other.canonical());
        }
        if other.crossings.is_empty() {
            return Ok(self.canonical());
        }
        let offset = self.crossings.iter().flat_map(|c| c.arcs).max().unwrap_or(0)
            - other.crossings.iter().flat_map(|c| c.arcs).min().unwrap_or(0)
            + 1;
        let mut first = self.crossings.clone();
        let mut second: Vec<Crossing> = other.crossings.iter().map(|c| c.relabel(|a| a + offset)).collect();
        let x1 = first.iter().flat_map(|c| c.arcs).min().unwrap();
        let x2 = second.iter().flat_map(|c| c.arcs).min().unwrap();
        // x1 now runs from its old tail into the second diagram; x2 returns.
        let (i1, p1) = head_slot(&first, x1);
        let (i2, p2) = head_slot(&second, x2);
        first[i1].arcs[p1] = x2;
        second[i2].arcs[p2] = x1;
        first.extend(second);
        Ok(PdCode::new(first, 0)?.canonical())
    }

    /// The same diagram with crossing `index` switched.
    pub fn crossing_change(&self, index: usize) -> Result<PdCode, DiagramError> {
        let mut crossings = self.crossings.clone();
        let c = crossings.get_mut(index).ok_or(DiagramError::NoSuchCrossing(index))?;
        *c = c.mirrored();
        Ok(PdCode { crossings, free_loops: self.free_loops })
    }

    /// Oriented smoothing at crossing `index`: the incoming under-strand is
    /// joined to the outgoing over-strand and vice versa.
    pub fn smoothing(&self, index: usize) -> Result<PdCode, DiagramError> {
        let c = *self.crossings.get(index).ok_or(DiagramError::NoSuchCrossing(index))?;
        let joins = [(c.under_in(), c.over_out()), (c.over_in(), c.under_out())];
        Ok(self.rebuild(&[index], &joins, None))
    }

    /// Removes a Reidemeister II bigon formed by crossings `i` and `j`.
    pub fn cancel_bigon(&self, i: usize, j: usize) -> Result<PdCode, DiagramError> {
        let n = self.crossings.len();
        if i >= n || j >= n || i == j {
            return Err(DiagramError::NoSuchCrossing(i.max(j)));
        }
        let (a, b) = (self.crossings[i], self.crossings[j]);
        let shared = a.arcs.iter().filter(|x| b.arcs.contains(x)).count();
        // The strand on top at i runs straight to the top of j; likewise underneath.
        let under_chain = a.under_out() == b.under_in() || b.under_out() == a.under_in();
        let over_chain = a.over_out() == b.over_in() || b.over_out() == a.over_in();
        if a.sign == b.sign || shared < 2 || !(under_chain && over_chain) {
            return Err(DiagramError::NotABigon(i, j));
        }
        let joins = [
            (a.under_in(), a.under_out()),
            (a.over_in(), a.over_out()),
            (b.under_in(), b.under_out()),
            (b.over_in(), b.over_out()),
        ];
        Ok(self.rebuild(&[i, j], &joins, None))
    }

    /// The diagram of one component alone, obtained by erasing the others.
    pub fn sublink(&self, component: usize) -> Result<PdCode, DiagramError> {
        let (comps, index) = self.component_index()?;
        let comp = comps.get(component).ok_or(DiagramError::NoSuchComponent(component))?;
        if comp.is_free_loop() {
            return Ok(PdCode::unknot());
        }
        let mut removed = Vec::new();
        let mut joins = Vec::new();
        for (i, c) in self.crossings.iter().enumerate() {
            let under_here = index[&c.under_in()] == component;
            let over_here = index[&c.over_in()] == component;
            if under_here && over_here {
                continue;
            }
            removed.push(i);
            if under_here {
                joins.push((c.under_in(), c.under_out()));
            }
            if over_here {
                joins.push((c.over_in(), c.over_out()));
            }
        }
        let keep: BTreeSet<ArcId> = comp.arcs.iter().copied().collect();
        let mut pd = self.rebuild(&removed, &joins, Some(&keep));
        pd.free_loops = usize::from(pd.crossings.is_empty());
        Ok(pd)
    }

    /// Deletes `removed` crossings, merges arcs along `joins`, and turns any
    /// merged arc class that no longer meets a crossing into a free loop.
    /// With `only`, arcs outside that set are ignored for the loop count.
    fn rebuild(&self, removed: &[usize], joins: &[(ArcId, ArcId)], only: Option<&BTreeSet<ArcId>>) -> PdCode {
        let mut uf = UnionFind::default();
        for &(x, y) in joins {
            uf.union(x, y);
        }
        let crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .enumerate()
            .filter(|(i, _)| !removed.contains(i))
            .map(|(_, c)| c.relabel(|a| uf.find(a)))
            .collect();
        let present: BTreeSet<ArcId> = crossings.iter().flat_map(|c| c.arcs).collect();
        let mut classes = BTreeSet::new();
        for c in &self.crossings {
            for a in c.arcs {
                if only.is_none_or(|s| s.contains(&a)) {
                    classes.insert(uf.find(a));
                }
            }
        }
        let new_loops = classes.iter().filter(|r| !present.contains(r)).count();
        PdCode { crossings, free_loops: self.free_loops + new_loops }
    }
}

fn head_slot(crossings: &[Crossing], arc: ArcId) -> (usize, usize) {
    for (i, c) in crossings.iter().enumerate() {
        for pos in 0..4 {
            if c.arcs[pos] == arc && c.is_incoming(pos) {
                return (i, pos);
            }
        }
    }
    unreachable!("arc {arc} has no incoming end in a valid diagram")
}

fn multiplicity_violation<'a>(quads: impl Iterator<Item = &'a [ArcId; 4]>) -> Option<Violation> {
    let mut counts: BTreeMap<ArcId, usize> = BTreeMap::new();
    for q in quads {
        for &a in q {
            *counts.entry(a).or_default() += 1;
        }
    }
    let bad: Vec<(ArcId, usize)> = counts.into_iter().filter(|(_, n)| *n != 2).collect();
    (!bad.is_empty()).then_some(Violation::ArcMultiplicity(bad))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Role {
    In,
    Out,
}

fn infer_signs(quads: &[[ArcId; 4]]) -> Result<Vec<Sign>, DiagramError> {
    let mut ends: HashMap<ArcId, Vec<(usize, usize)>> = HashMap::new();
    for (i, q) in quads.iter().enumerate() {
        for (p, &a) in q.iter().enumerate() {
            ends.entry(a).or_default().push((i, p));
        }
    }
    let mut role: Vec<[Option<Role>; 4]> = vec![[None; 4]; quads.len()];
    let mut queue = VecDeque::new();
    let assign = |role: &mut Vec<[Option<Role>; 4]>, queue: &mut VecDeque<(usize, usize)>, i: usize, p: usize, r: Role| {
        match role[i][p] {
            Some(old) if old != r => Err(DiagramError::Orientation { crossing: i }),
            Some(_) => Ok(()),
            None => {
                role[i][p] = Some(r);
                queue.push_back((i, p));
                Ok(())
            }
        }
    };
    for i in 0..quads.len() {
        assign(&mut role, &mut queue, i, 0, Role::In)?;
        assign(&mut role, &mut queue, i, 2, Role::Out)?;
    }
    loop {
        while let Some((i, p)) = queue.pop_front() {
            let r = role[i][p].expect("queued slots have a role");
            let opposite = if r == Role::In { Role::Out } else { Role::In };
            for &(j, q) in &ends[&quads[i][p]] {
                if (j, q) != (i, p) {
                    assign(&mut role, &mut queue, j, q, opposite)?;
                }
            }
            if p == 1 || p == 3 {
                assign(&mut role, &mut queue, i, 4 - p, opposite)?;
            }
        }
        // Over-strands of a component that is never passed under.
        let Some(i) = role.iter().position(|r| r[1].is_none()) else {
            break;
        };
        let [_, b, _, d] = quads[i];
        let d_to_b = if d + 1 == b {
            true
        } else if b + 1 == d {
            false
        } else {
            d > b
        };
        assign(&mut role, &mut queue, i, 3, if d_to_b { Role::In } else { Role::Out })?;
    }
    Ok(role
        .iter()
        .map(|r| if r[3] == Some(Role::In) { Sign::Positive } else { Sign::Negative })
        .collect())
}

#[derive(Default)]
struct UnionFind {
    parent: HashMap<ArcId, ArcId>,
}

impl UnionFind {
    fn find(&mut self, x: ArcId) -> ArcId {
        let p = *self.parent.get(&x).unwrap_or(&x);
        if p == x {
            return x;
        }
        let root = self.find(p);
        self.parent.insert(x, root);
        root
    }

    fn union(&mut self, x: ArcId, y: ArcId) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            // keep the smaller label as representative
            let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
            self.parent.insert(hi, lo);
        }
    }
}

/// A skein triple `(K+, K-, K' u K'')` at one crossing of a knot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeinTriple {
    pub k_plus: PdCode,
    pub k_minus: PdCode,
    /// Two-component link from the oriented smoothing.
    pub k_smooth: PdCode,
    /// Component indices of `K'` and `K''` in `k_smooth`.
    pub k_prime: usize,
    pub k_double_prime: usize,
}

impl SkeinTriple {
    /// Triple at crossing `index` of the knot `pd`. If that crossing is
    /// negative, `pd` is `K-` and `K+` is obtained by switching it.
    pub fn at_crossing(pd: &PdCode, index: usize) -> Result<SkeinTriple, DiagramError> {
        let n = pd.component_count()?;
        if n != 1 {
            return Err(DiagramError::NotAKnot { components: n });
        }
        let c = pd.crossings.get(index).ok_or(DiagramError::NoSuchCrossing(index))?;
        let switched = pd.crossing_change(index)?;
        let (k_plus, k_minus) = match c.sign {
            Sign::Positive => (pd.clone(), switched),
            Sign::Negative => (switched, pd.clone()),
        };
        let k_smooth = pd.smoothing(index)?;
        Ok(SkeinTriple { k_plus, k_minus, k_smooth, k_prime: 0, k_double_prime: 1 })
    }

    /// Diagrams of `K'` and `K''` on their own.
    pub fn smoothed_components(&self) -> Result<(PdCode, PdCode), DiagramError> {
        Ok((self.k_smooth.sublink(self.k_prime)?, self.k_smooth.sublink(self.k_double_prime)?))
    }

    pub fn smoothed_linking_number(&self) -> Result<i64, DiagramError> {
        self.k_smooth.linking_number(self.k_prime, self.k_double_prime)
    }
}

impl fmt::Display for PdCode {
    /// Knot-Atlas style `PD[X(1,4,2,3), ...]`; the unknot renders as `PD[]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PD[")?;
        for (i, c) in self.crossings.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let [a, b, cc, d] = c.arcs;
            write!(f, "X({a},{b},{cc},{d})")?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct ParseError {
    /// 1-based column of the offending character.
    pub column: usize,
    pub message: String,
}

/// A parsed input line: optional `name:` label and the diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedPd {
    pub name: Option<String>,
    pub pd: PdCode,
}

/// Parses one line of the form `[name:] PD[X(1,4,2,3), X(3,6,4,5), ...]`.
/// Square brackets inside crossings (`X[1,4,2,3]`) are accepted as well.
pub fn parse_pd_line(line: &str) -> Result<NamedPd, ParseError> {
    let mut p = Cursor { s: line.as_bytes(), i: 0 };
    p.ws();
    let pd_start = line.find("PD[").ok_or_else(|| p.err("expected `PD[`"))?;
    let name = match line[..pd_start].trim() {
        "" => None,
        prefix => match prefix.strip_suffix(':') {
            Some(n) if !n.trim().is_empty() => Some(n.trim().to_string()),
            _ => return Err(ParseError { column: 1, message: "expected `name:` before `PD[`".into() }),
        },
    };
    p.i = pd_start + 3;
    let mut quads = Vec::new();
    p.ws();
    if !p.eat(b']') {
        loop {
            p.ws();
            p.expect(b'X')?;
            let close = if p.eat(b'(') {
                b')'
            } else if p.eat(b'[') {
                b']'
            } else {
                return Err(p.err("expected `(` after `X`"));
            };
            let mut q = [0; 4];
            for (k, slot) in q.iter_mut().enumerate() {
                p.ws();
                *slot = p.integer()?;
                p.ws();
                if k < 3 {
                    p.expect(b',')?;
                }
            }
            p.expect(close)?;
            quads.push(q);
            p.ws();
            if p.eat(b',') {
                continue;
            }
            p.expect(b']')?;
            break;
        }
    }
    p.ws();
    if p.i < p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    let pd = PdCode::from_quads(&quads).map_err(|e| ParseError { column: pd_start + 1, message: e.to_string() })?;
    Ok(NamedPd { name, pd })
}

struct Cursor<'a> {
    s: &'a [u8],
    i: usize,
}

impl Cursor<'_> {
    fn err(&self, message: &str) -> ParseError {
        ParseError { column: self.i + 1, message: message.to_string() }
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.s.get(self.i) == Some(&b) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", b as char)))
        }
    }

    fn integer(&mut self) -> Result<ArcId, ParseError> {
        let start = self.i;
        if self.s.get(self.i) == Some(&b'-') {
            self.i += 1;
        }
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        std::str::from_utf8(&self.s[start..self.i])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or(ParseError { column: start + 1, message: "expected an integer arc label".into() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> PdCode {
        parse_pd_line("PD[X(1,5,2,4), X(5,3,6,2), X(3,1,4,6)]").unwrap().pd
    }

    #[test]
    fn trefoil_from_text() {
        let pd = trefoil();
        assert!(pd.validate().is_empty());
        assert_eq!(pd.writhe().unwrap(), 3);
        assert_eq!(pd.component_count().unwrap(), 1);
        assert_eq!(pd.to_string(), "PD[X(1,5,2,4), X(5,3,6,2), X(3,1,4,6)]");
    }

    #[test]
    fn knot_atlas_left_trefoil_is_negative() {
        let pd = parse_pd_line("3_1: PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]").unwrap();
        assert_eq!(pd.name.as_deref(), Some("3_1"));
        assert_eq!(pd.pd.writhe().unwrap(), -3);
    }

    #[test]
    fn unknot_is_valid() {
        let u = PdCode::unknot();
        assert!(u.validate().is_empty());
        assert_eq!(u.writhe().unwrap(), 0);
        assert_eq!(u.component_count().unwrap(), 1);
        assert_eq!(u.mirror(), u);
        assert_eq!(parse_pd_line("PD[]").unwrap().pd, u);
    }

    #[test]
    fn triple_arc_label_is_one_violation() {
        let bad = PdCode::new_unchecked(
            vec![
                Crossing::new([1, 4, 2, 3], Sign::Positive),
                Crossing::new([3, 2, 4, 5], Sign::Positive),
                Crossing::new([5, 2, 6, 1], Sign::Positive),
            ],
            0,
        );
        let v = bad.validate();
        assert_eq!(v.len(), 1);
        assert!(matches!(&v[0], Violation::ArcMultiplicity(list) if list.contains(&(2, 3))));
        assert!(bad.components().is_err());
    }

    #[test]
    fn orientation_conflict_is_reported() {
        // arc 1 enters both crossings
        let bad = PdCode::new_unchecked(
            vec![Crossing::new([1, 4, 2, 3], Sign::Positive), Crossing::new([3, 2, 4, 1], Sign::Positive)],
            0,
        );
        assert!(bad.validate().iter().any(|v| matches!(v, Violation::DoubleIncoming { arc: 1 })));
    }

    #[test]
    fn mirror_negates_writhe_and_is_an_involution() {
        let pd = trefoil();
        assert_eq!(pd.mirror().writhe().unwrap(), -3);
        assert_eq!(pd.mirror().mirror(), pd);
        assert!(pd.mirror().validate().is_empty());
    }

    #[test]
    fn hopf_link_linking_number() {
        let hopf = parse_pd_line("PD[X(4,1,3,2), X(2,3,1,4)]").unwrap().pd;
        assert_eq!(hopf.component_count().unwrap(), 2);
        assert_eq!(hopf.linking_number(0, 1).unwrap(), -1);
        assert_eq!(hopf.linking_number(1, 0).unwrap(), -1);
        assert_eq!(hopf.mirror().linking_number(0, 1).unwrap(), 1);
        assert_eq!(hopf.linking_number(0, 0), Err(DiagramError::SameComponent));
        assert_eq!(hopf.linking_number(0, 5), Err(DiagramError::NoSuchComponent(5)));
    }

    #[test]
    fn split_unlink_has_zero_linking() {
        let u = PdCode::unlink(2);
        assert_eq!(u.linking_number(0, 1).unwrap(), 0);
    }

    #[test]
    fn connected_sum_with_unknot_is_identity() {
        let pd = trefoil();
        assert_eq!(pd.connected_sum(&PdCode::unknot()).unwrap(), pd.canonical());
        assert_eq!(PdCode::unknot().connected_sum(&pd).unwrap(), pd.canonical());
    }

    #[test]
    fn connected_sum_of_trefoils() {
        let pd = trefoil();
        let sum = pd.connected_sum(&pd.mirror()).unwrap();
        assert!(sum.validate().is_empty());
        assert_eq!(sum.crossing_count(), 6);
        assert_eq!(sum.component_count().unwrap(), 1);
        assert_eq!(sum.writhe().unwrap(), 0);
        let hopf = parse_pd_line("PD[X(4,1,3,2), X(2,3,1,4)]").unwrap().pd;
        assert!(matches!(pd.connected_sum(&hopf), Err(DiagramError::NotAKnot { components: 2 })));
    }

    #[test]
    fn smoothing_a_trefoil_crossing_gives_hopf_link() {
        let t = SkeinTriple::at_crossing(&trefoil(), 0).unwrap();
        assert_eq!(t.k_smooth.component_count().unwrap(), 2);
        assert_eq!(t.k_smooth.crossing_count(), 2);
        assert_eq!(t.smoothed_linking_number().unwrap(), 1);
        assert_eq!(t.k_minus.writhe().unwrap(), 1);
        let (a, b) = t.smoothed_components().unwrap();
        assert!(a.is_unknot_diagram() && b.is_unknot_diagram());
    }

    #[test]
    fn canonical_is_relabel_invariant() {
        let a = trefoil();
        let b = parse_pd_line("PD[X(11,15,12,14), X(15,13,16,12), X(13,11,14,16)]").unwrap().pd;
        assert_eq!(a.canonical(), b.canonical());
    }

    #[test]
    fn parse_errors_carry_columns() {
        let e = parse_pd_line("PD[X(1,4,2,3), Y(3,6,4,5)]").unwrap_err();
        assert_eq!(e.column, 16);
        let e = parse_pd_line("PD[X(1,4,2), X(3,6,4,5)]").unwrap_err();
        assert_eq!(e.column, 11);
        assert!(parse_pd_line("trefoil").is_err());
        assert!(parse_pd_line("PD[X(1,4,2,3)] junk").is_err());
        assert!(parse_pd_line("PD[X(1,1,2,3)]").is_err());
    }

    #[test]
    fn top_component_uses_label_convention() {
        // the circle through arcs 5, 6 lies on top of the other one
        let pd = parse_pd_line("PD[X(1,5,2,6), X(2,5,1,6)]").unwrap().pd;
        assert!(pd.validate().is_empty());
        assert_eq!(pd.component_count().unwrap(), 2);
        assert_eq!(pd.linking_number(0, 1).unwrap(), 0);
    }
}
