//! Generators for the Kinoshita-Terasaka and Conway knot families, closed
//! 2-braids, four-strand pretzel links and general closed braids.
//!
//! Diagrams are assembled top to bottom from three moves on a row of
//! vertical strand ends: a maximum opens two new adjacent strands, a crossing
//! twists two adjacent strands, and a minimum joins two adjacent strands.
//!
//! Layout of `KT(r, n)` and `C(r, n)`: four vertical twist boxes side by side
//! holding `(r+1, -r, r, -r-1)` (respectively `(r+1, -r, -r-1, r)`)
//! half-twists, joined pairwise along the top and bottom as in a pretzel link.
//! The outer arc over the top and the arc joining boxes two and three are
//! clasped by a vertical box of `2n` half-twists. Removing the clasp (`n = 0`)
//! leaves the unknot; smoothing one of its crossings leaves the pretzel link.
//!
//! Conventions: a positive half-twist in a box means the strand entering at
//! the top right crosses over the one entering at the top left. The clasp
//! twists so that its crossings are positive exactly when `n > 0`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::diagram::{ArcId, Crossing, DiagramError, PdCode, Sign, SkeinTriple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    KinoshitaTerasaka { r: i64, n: i64 },
    Conway { r: i64, n: i64 },
    /// Closed 2-braid with `k` half-twists; `k` odd gives a knot.
    Torus2 { k: i64 },
    Pretzel4 { p: [i64; 4] },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TwistFamily {
    #[serde(rename = "kt")]
    KinoshitaTerasaka,
    Conway,
}

impl TwistFamily {
    pub fn spec(self, r: i64, n: i64) -> FamilySpec {
        match self {
            TwistFamily::KinoshitaTerasaka => FamilySpec::KinoshitaTerasaka { r, n },
            TwistFamily::Conway => FamilySpec::Conway { r, n },
        }
    }

    /// Half-twist counts of the four pretzel boxes.
    pub fn boxes(self, r: i64) -> [i64; 4] {
        match self {
            TwistFamily::KinoshitaTerasaka => [r + 1, -r, r, -r - 1],
            TwistFamily::Conway => [r + 1, -r, -r - 1, r],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TwistFamily::KinoshitaTerasaka => "kt",
            TwistFamily::Conway => "conway",
        }
    }
}

impl FromStr for TwistFamily {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "kt" | "kinoshita-terasaka" => Ok(TwistFamily::KinoshitaTerasaka),
            "conway" | "c" => Ok(TwistFamily::Conway),
            _ => Err(FamilyError::Parse(format!("unknown family `{s}` (expected kt or conway)"))),
        }
    }
}

impl fmt::Display for TwistFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("{0}")]
    Parse(String),
    #[error("torus2 needs a nonzero number of half-twists")]
    ZeroTwist,
    #[error("operation applies to the kt and conway families only")]
    NotTwistFamily,
    #[error("twist region skein triple needs n >= 1, got {0}; use the mirror partner")]
    NonPositiveTwist(i64),
    #[error("braid generator {0} out of range for {1} strands")]
    BadGenerator(usize, usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

impl FamilySpec {
    pub fn twist_family(&self) -> Option<(TwistFamily, i64, i64)> {
        match *self {
            FamilySpec::KinoshitaTerasaka { r, n } => Some((TwistFamily::KinoshitaTerasaka, r, n)),
            FamilySpec::Conway { r, n } => Some((TwistFamily::Conway, r, n)),
            _ => None,
        }
    }

    /// `r -> -r-1`, the inside-out symmetry of both families.
    pub fn symmetry_partner(&self) -> Result<FamilySpec, FamilyError> {
        let (fam, r, n) = self.twist_family().ok_or(FamilyError::NotTwistFamily)?;
        Ok(fam.spec(-r - 1, n))
    }

    /// `n -> -n`, which gives the mirror image.
    pub fn mirror_partner(&self) -> Result<FamilySpec, FamilyError> {
        let (fam, r, n) = self.twist_family().ok_or(FamilyError::NotTwistFamily)?;
        Ok(fam.spec(r, -n))
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::KinoshitaTerasaka { r, n } => write!(f, "kt:{r},{n}"),
            FamilySpec::Conway { r, n } => write!(f, "conway:{r},{n}"),
            FamilySpec::Torus2 { k } => write!(f, "torus2:{k}"),
            FamilySpec::Pretzel4 { p: [a, b, c, d] } => write!(f, "pretzel4:{a},{b},{c},{d}"),
        }
    }
}

impl Serialize for FamilySpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    /// `kt:r,n`, `conway:r,n`, `torus2:k`, `pretzel4:p1,p2,p3,p4`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, params) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| FamilyError::Parse(format!("expected `kind:params`, got `{s}`")))?;
        let nums = params
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| FamilyError::Parse(format!("bad parameter in `{s}`: {e}")))?;
        let arity = |want: usize| {
            if nums.len() == want {
                Ok(())
            } else {
                Err(FamilyError::Parse(format!("`{kind}` takes {want} parameter(s), got {}", nums.len())))
            }
        };
        match kind.trim().to_ascii_lowercase().as_str() {
            "kt" => arity(2).map(|_| FamilySpec::KinoshitaTerasaka { r: nums[0], n: nums[1] }),
            "conway" => arity(2).map(|_| FamilySpec::Conway { r: nums[0], n: nums[1] }),
            "torus2" => {
                arity(1)?;
                if nums[0] == 0 {
                    return Err(FamilyError::ZeroTwist);
                }
                Ok(FamilySpec::Torus2 { k: nums[0] })
            }
            "pretzel4" => arity(4).map(|_| FamilySpec::Pretzel4 { p: [nums[0], nums[1], nums[2], nums[3]] }),
            other => Err(FamilyError::Parse(format!("unknown family `{other}`"))),
        }
    }
}

/// True iff `KT(r, n)` and `C(r, n)` are unknots: `r` in `{0, 1, -1, -2}` or `n = 0`.
pub fn is_trivial_parameters(r: i64, n: i64) -> bool {
    matches!(r, -2..=1) || n == 0
}

/// The diagram of a family member, with canonical arc labels.
pub fn generate(spec: &FamilySpec) -> Result<PdCode, FamilyError> {
    Ok(match *spec {
        FamilySpec::KinoshitaTerasaka { r, n } => twisted_pretzel(TwistFamily::KinoshitaTerasaka.boxes(r), n),
        FamilySpec::Conway { r, n } => twisted_pretzel(TwistFamily::Conway.boxes(r), n),
        FamilySpec::Torus2 { k } => {
            if k == 0 {
                return Err(FamilyError::ZeroTwist);
            }
            let twist = if k > 0 { Twist::RightOver } else { Twist::LeftOver };
            closed_braid_word(2, &vec![(0, twist); k.unsigned_abs() as usize])
        }
        FamilySpec::Pretzel4 { p } => pretzel(p),
    }
    .canonical())
}

/// Closure of a braid on `strands` strands. Each letter `(i, positive)` is
/// `sigma_i` (strand `i` crosses under strand `i+1`... with the right strand on
/// top, i.e. a positive crossing when both strands run down) or its inverse.
pub fn closed_braid(strands: usize, word: &[(usize, bool)]) -> Result<PdCode, FamilyError> {
    let mut letters = Vec::with_capacity(word.len());
    for &(i, positive) in word {
        if i + 1 >= strands {
            return Err(FamilyError::BadGenerator(i, strands));
        }
        letters.push((i, if positive { Twist::RightOver } else { Twist::LeftOver }));
    }
    Ok(closed_braid_word(strands, &letters).canonical())
}

/// Skein triple at the first crossing of the `2n` clasp of `KT(r, n)` or
/// `C(r, n)`, `n >= 1`.
///
/// `K+` is the generated diagram. `K-` switches that crossing and then
/// cancels it against its neighbour in the clasp, which is a diagram of the
/// `n - 1` member. The smoothing is the pretzel link of the family with its
/// two components as `K'` and `K''`.
pub fn twist_region_skein_triple(family: TwistFamily, r: i64, n: i64) -> Result<SkeinTriple, FamilyError> {
    if n < 1 {
        return Err(FamilyError::NonPositiveTwist(n));
    }
    let pd = generate(&family.spec(r, n))?;
    // generate() emits the clasp crossings first
    debug_assert_eq!(pd.crossings()[0].sign, Sign::Positive);
    let mut triple = SkeinTriple::at_crossing(&pd, 0)?;
    triple.k_minus = pd.crossing_change(0)?.cancel_bigon(0, 1)?.canonical();
    triple.k_smooth = triple.k_smooth.canonical();
    Ok(triple)
}

/// Skein triple `(T(2, 2k+1), T(2, 2k-1), T(2, 2k))` at a braid crossing,
/// `k >= 1`.
pub fn torus_recursion_triple(k: i64) -> Result<SkeinTriple, FamilyError> {
    if k < 1 {
        return Err(FamilyError::NonPositiveTwist(k));
    }
    let pd = generate(&FamilySpec::Torus2 { k: 2 * k + 1 })?;
    let mut triple = SkeinTriple::at_crossing(&pd, 0)?;
    triple.k_minus = pd.crossing_change(0)?.cancel_bigon(0, 1)?.canonical();
    triple.k_smooth = triple.k_smooth.canonical();
    Ok(triple)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Twist {
    /// The strand from top-right to bottom-left is on top.
    RightOver,
    LeftOver,
}

fn box_twist(p: i64) -> Twist {
    if p > 0 {
        Twist::RightOver
    } else {
        Twist::LeftOver
    }
}

fn pretzel_boxes(b: &mut MorseBuilder, p: [i64; 4]) {
    for (i, &twists) in p.iter().enumerate() {
        for _ in 0..twists.unsigned_abs() {
            b.cross(2 * i, box_twist(twists));
        }
    }
    // bottom: join box i's right end to box i+1's left end, then the outer arc
    b.min(1);
    b.min(1);
    b.min(1);
    b.min(0);
}

fn pretzel(p: [i64; 4]) -> PdCode {
    let mut b = MorseBuilder::default();
    b.max(0);
    b.max(1);
    b.max(3);
    b.max(5);
    pretzel_boxes(&mut b, p);
    b.finish()
}

// The clasp sits between the halves of the outer top arc and the arc joining
// boxes two and three. With this builder's orientation the clasp strands run
// antiparallel and `LeftOver` twists are positive crossings.
fn twisted_pretzel(p: [i64; 4], n: i64) -> PdCode {
    let mut b = MorseBuilder::default();
    b.max(0);
    b.max(2);
    let clasp = if n > 0 { Twist::LeftOver } else { Twist::RightOver };
    for _ in 0..2 * n.unsigned_abs() {
        b.cross(1, clasp);
    }
    b.max(1);
    b.max(5);
    pretzel_boxes(&mut b, p);
    b.finish()
}

fn closed_braid_word(strands: usize, word: &[(usize, Twist)]) -> PdCode {
    let mut b = MorseBuilder::default();
    for j in 0..strands {
        b.max(j);
    }
    for &(i, t) in word {
        b.cross(i, t);
    }
    for j in (0..strands).rev() {
        b.min(j);
    }
    b.finish()
}

// Corners of a crossing in the builder: top-left, top-right, bottom-left,
// bottom-right. Strands run TL-BR and TR-BL.
const TL: usize = 0;
const TR: usize = 1;
const BL: usize = 2;
const BR: usize = 3;
/// Counterclockwise order of corners around a crossing.
const CCW: [usize; 4] = [TL, BL, BR, TR];

fn through(corner: usize) -> usize {
    3 - corner
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum End {
    Open,
    Slot(usize, usize),
}

/// A piece of strand between two ends. Edges created at a maximum have end 0
/// on the left.
#[derive(Debug, Clone)]
struct Edge {
    ends: [End; 2],
}

#[derive(Default)]
struct MorseBuilder {
    /// Open strand ends on the current row, left to right: (edge, end index).
    row: Vec<(usize, usize)>,
    edges: Vec<Edge>,
    crossings: Vec<Twist>,
    /// Per maximum, the edge end reached by travelling down its left strand.
    seeds: Vec<(usize, usize)>,
    closed_loops: usize,
    alive: Vec<bool>,
}

impl MorseBuilder {
    fn new_edge(&mut self, ends: [End; 2]) -> usize {
        self.edges.push(Edge { ends });
        self.alive.push(true);
        self.edges.len() - 1
    }

    fn max(&mut self, pos: usize) {
        let e = self.new_edge([End::Open, End::Open]);
        self.row.insert(pos, (e, 0));
        self.row.insert(pos + 1, (e, 1));
        self.seeds.push((e, 0));
    }

    fn cross(&mut self, pos: usize, twist: Twist) {
        let c = self.crossings.len();
        self.crossings.push(twist);
        for (k, corner) in [(pos, TL), (pos + 1, TR)] {
            let (e, end) = self.row[k];
            self.edges[e].ends[end] = End::Slot(c, corner);
        }
        for (k, corner) in [(pos, BL), (pos + 1, BR)] {
            let e = self.new_edge([End::Slot(c, corner), End::Open]);
            self.row[k] = (e, 1);
        }
    }

    fn min(&mut self, pos: usize) {
        let (e1, k1) = self.row[pos];
        let (e2, k2) = self.row[pos + 1];
        self.row.drain(pos..pos + 2);
        if e1 == e2 {
            self.closed_loops += 1;
            self.alive[e1] = false;
            return;
        }
        let merged = self.new_edge([self.edges[e1].ends[1 - k1], self.edges[e2].ends[1 - k2]]);
        self.alive[e1] = false;
        self.alive[e2] = false;
        for slot in self.row.iter_mut() {
            if *slot == (e1, 1 - k1) {
                *slot = (merged, 0);
            } else if *slot == (e2, 1 - k2) {
                *slot = (merged, 1);
            }
        }
        // Travelling into the joined ends continues out of the other edge.
        for seed in self.seeds.iter_mut() {
            *seed = match *seed {
                (e, k) if e == e1 => (merged, if k == k1 { 1 } else { 0 }),
                (e, k) if e == e2 => (merged, if k == k2 { 0 } else { 1 }),
                s => s,
            };
        }
    }

    fn finish(self) -> PdCode {
        assert!(self.row.is_empty(), "unclosed strands");
        let n = self.crossings.len();
        // edge at each crossing corner
        let mut at = vec![[usize::MAX; 4]; n];
        for (e, edge) in self.edges.iter().enumerate() {
            if !self.alive[e] {
                continue;
            }
            for end in edge.ends {
                if let End::Slot(c, corner) = end {
                    at[c][corner] = e;
                }
            }
        }
        // Orient: walk each component from its first seed.
        let mut label = vec![0 as ArcId; self.edges.len()];
        let mut head_at = vec![[false; 4]; n];
        let mut next_label = 1;
        for &(e, k) in &self.seeds {
            if !self.alive[e] || label[e] != 0 {
                continue;
            }
            let End::Slot(mut c, mut corner) = self.edges[e].ends[k] else {
                continue;
            };
            let mut edge = e;
            while label[edge] == 0 {
                label[edge] = next_label;
                next_label += 1;
                head_at[c][corner] = true;
                let out = through(corner);
                edge = at[c][out];
                let ends = self.edges[edge].ends;
                let far = if ends[0] == End::Slot(c, out) { ends[1] } else { ends[0] };
                let End::Slot(c2, corner2) = far else { unreachable!("closed strands end at crossings") };
                c = c2;
                corner = corner2;
            }
        }
        let crossings = (0..n)
            .map(|c| {
                let under_pair = match self.crossings[c] {
                    Twist::RightOver => [TL, BR],
                    Twist::LeftOver => [TR, BL],
                };
                let start = if head_at[c][under_pair[0]] { under_pair[0] } else { under_pair[1] };
                let rot = CCW.iter().position(|&x| x == start).unwrap();
                let corners: [usize; 4] = std::array::from_fn(|i| CCW[(rot + i) % 4]);
                let arcs = corners.map(|k| label[at[c][k]]);
                // positive iff the over-strand enters at the fourth position
                let sign = if head_at[c][corners[3]] { Sign::Positive } else { Sign::Negative };
                Crossing::new(arcs, sign)
            })
            .collect();
        PdCode::new(crossings, self.closed_loops).expect("builder produces valid diagrams")
    }
}
