//! Grid geometry for stacked hexagonal layers and the octahedral lattice.
//!
//! A hexagonal grid is built from planar layers `L_k`, each a copy of the
//! triangular lattice spanned by `[2,0,0]` and `[1,√3,0]`. Layer `k` sits at
//! height `k·√(8/3)` and is shifted horizontally by `S_k·[1,√(1/3),0]`, where
//! `S_k` is a running sum of the per-layer signs `ε_k ∈ {−1,+1}`. Every choice
//! of signs gives a 12-regular packing grid. Layers below 0 are built
//! downwards, so the ordinary hexagonal (fcc) lattice, which stacks every layer
//! by the same `ℓ₁`, is `ε_k = sign(k)`.
//!
//! Contact decisions never touch floating point. Distances are kept as
//! integer scaled squares: `3·d²` on hexagonal grids and `d²` on the
//! octahedral lattice, so two unit balls touch exactly when the scaled value
//! equals [`LatticeRef::contact_threshold`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Lengths of the basis vectors used by [`LatticeRef::to_cartesian`].
pub mod basis {
    /// Vertical layer spacing `√(8/3)`.
    pub fn layer_height() -> f64 {
        (8.0f64 / 3.0).sqrt()
    }

    /// `L_v = [0, 0, √(8/3)]`.
    pub fn vertical() -> [f64; 3] {
        [0.0, 0.0, layer_height()]
    }

    /// `L_h = [1, √(1/3), 0]`.
    pub fn horizontal() -> [f64; 3] {
        [1.0, (1.0f64 / 3.0).sqrt(), 0.0]
    }

    /// `ℓ₁ = L_v + L_h`, the hexagonal-lattice stacking vector.
    pub fn ell1() -> [f64; 3] {
        let (v, h) = (vertical(), horizontal());
        [v[0] + h[0], v[1] + h[1], v[2] + h[2]]
    }

    /// `ℓ₂ = L_v − L_h`.
    pub fn ell2() -> [f64; 3] {
        let (v, h) = (vertical(), horizontal());
        [v[0] - h[0], v[1] - h[1], v[2] - h[2]]
    }

    /// In-layer generators of the triangular lattice.
    pub fn planar() -> [[f64; 3]; 2] {
        [[2.0, 0.0, 0.0], [1.0, 3.0f64.sqrt(), 0.0]]
    }

    /// Generators of the octahedral lattice.
    pub fn octahedral() -> [[f64; 3]; 3] {
        [[2.0, 0.0, 0.0], [0.0, 2.0, 0.0], [1.0, 1.0, 2.0f64.sqrt()]]
    }
}

/// Integer coordinates of a grid point.
///
/// On a hexagonal grid these are the inner coordinates `[i, j, k]` (`k` is
/// the layer). On the octahedral lattice they are the multipliers `[x, y, z]`
/// of the three generators, stored in `i`, `j`, `k` respectively.
///
/// Points order by `(k, i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticePoint {
    pub i: i32,
    pub j: i32,
    pub k: i32,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { i: 0, j: 0, k: 0 };

    pub const fn new(i: i32, j: i32, k: i32) -> Self {
        Self { i, j, k }
    }

    fn offset(self, di: i32, dj: i32, dk: i32) -> Self {
        Self::new(self.i + di, self.j + dj, self.k + dk)
    }
}

impl Ord for LatticePoint {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.k, self.i, self.j).cmp(&(other.k, other.i, other.j))
    }
}

impl PartialOrd for LatticePoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.i, self.j, self.k)
    }
}

/// A finite sign sequence `ε_{t1} … ε_{t2}` with `ε_0 = 0`, identifying one
/// hexagonal grid restricted to the layers `t1..=t2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EpsilonSeq {
    t1: i32,
    t2: i32,
    /// Indexed by `k - t1`; the slot for `k = 0` holds 0.
    eps: Vec<i8>,
    /// `S_k`, indexed by `k - t1`.
    prefix: Vec<i32>,
}

impl EpsilonSeq {
    /// Builds a sequence from the signs of every non-zero layer, listed in
    /// order `k = t1, …, −1, 1, …, t2`.
    pub fn new(t1: i32, t2: i32, values: &[i32]) -> Result<Self> {
        check_span(t1, t2)?;
        let expected = (t2 - t1) as usize;
        if values.len() != expected {
            return Err(Error::EpsilonCount {
                expected,
                got: values.len(),
            });
        }
        let mut eps = Vec::with_capacity(expected + 1);
        let mut it = values.iter();
        for k in t1..=t2 {
            if k == 0 {
                eps.push(0);
                continue;
            }
            let &v = it.next().expect("length checked");
            if v != 1 && v != -1 {
                return Err(Error::InvalidEpsilon { k, value: v });
            }
            eps.push(v as i8);
        }
        Ok(Self::from_raw(t1, t2, eps))
    }

    /// Decodes a [`grid_id`](Self::grid_id) back into its sequence.
    pub fn from_grid_id(t1: i32, t2: i32, id: u64) -> Result<Self> {
        check_span(t1, t2)?;
        let bits = (t2 - t1) as u32;
        if bits < 64 && id >> bits != 0 {
            return Err(Error::InvalidParams(format!(
                "grid id {id} does not fit {bits} layers"
            )));
        }
        let mut eps = Vec::with_capacity(bits as usize + 1);
        let mut bit = 0;
        for k in t1..=t2 {
            if k == 0 {
                eps.push(0);
            } else {
                eps.push(if id >> bit & 1 == 1 { 1 } else { -1 });
                bit += 1;
            }
        }
        Ok(Self::from_raw(t1, t2, eps))
    }

    /// The one-layer grid `t1 = t2 = 0`.
    pub fn single_layer() -> Self {
        Self::from_raw(0, 0, vec![0])
    }

    /// `ε_k = sign(k)`, so `S_k = k` and every layer sits `ℓ₁` above the one
    /// below it: the ordinary hexagonal lattice.
    pub fn hexagonal_lattice(t1: i32, t2: i32) -> Result<Self> {
        check_span(t1, t2)?;
        let values: Vec<i32> = (t1..=t2).filter(|&k| k != 0).map(i32::signum).collect();
        Self::new(t1, t2, &values)
    }

    fn from_raw(t1: i32, t2: i32, eps: Vec<i8>) -> Self {
        let origin = (-t1) as usize;
        let mut prefix = vec![0i32; eps.len()];
        for idx in origin + 1..eps.len() {
            prefix[idx] = prefix[idx - 1] + eps[idx] as i32;
        }
        for idx in (0..origin).rev() {
            prefix[idx] = prefix[idx + 1] + eps[idx] as i32;
        }
        Self {
            t1,
            t2,
            eps,
            prefix,
        }
    }

    pub fn t1(&self) -> i32 {
        self.t1
    }

    pub fn t2(&self) -> i32 {
        self.t2
    }

    pub fn contains_layer(&self, k: i32) -> bool {
        (self.t1..=self.t2).contains(&k)
    }

    fn slot(&self, k: i32) -> Result<usize> {
        if self.contains_layer(k) {
            Ok((k - self.t1) as usize)
        } else {
            Err(Error::LayerOutOfRange {
                k,
                t1: self.t1,
                t2: self.t2,
            })
        }
    }

    /// `ε_k`; zero for `k = 0`.
    pub fn epsilon(&self, k: i32) -> Result<i32> {
        Ok(self.eps[self.slot(k)?] as i32)
    }

    /// The horizontal shift multiplier `S_k` of layer `k`.
    pub fn prefix_sum(&self, k: i32) -> Result<i32> {
        Ok(self.prefix[self.slot(k)?])
    }

    /// Signs of the non-zero layers in order `t1..=t2`.
    pub fn signs(&self) -> impl Iterator<Item = (i32, i32)> + '_ {
        (self.t1..=self.t2)
            .zip(self.eps.iter())
            .filter(|(k, _)| *k != 0)
            .map(|(k, &e)| (k, e as i32))
    }

    /// The sign-flipped sequence `−ε`.
    pub fn negated(&self) -> Self {
        Self::from_raw(self.t1, self.t2, self.eps.iter().map(|e| -e).collect())
    }

    /// Positional binary id: the bit for the `m`-th non-zero layer (counting
    /// from `t1`) is set iff that layer's sign is `+1`.
    pub fn grid_id(&self) -> u64 {
        self.signs()
            .enumerate()
            .filter(|(_, (_, e))| *e == 1)
            .fold(0u64, |acc, (bit, _)| acc | 1 << bit)
    }

    /// `Σ 2^{s(ε_k)}` with `s(−1) = 0`, `s(+1) = 1`, summed over the non-zero
    /// layers. Not injective; kept only for cross-referencing published tables.
    pub fn type_code(&self) -> u64 {
        self.signs().map(|(_, e)| if e == 1 { 2 } else { 1 }).sum()
    }

    /// Orientation used to make tie-breaking mirror-equivariant: `ε_1` when
    /// layer 1 exists, otherwise `ε_{−1}`, otherwise `+1`.
    pub fn orientation(&self) -> i32 {
        if self.t2 >= 1 {
            self.eps[(1 - self.t1) as usize] as i32
        } else if self.t1 <= -1 {
            self.eps[(-1 - self.t1) as usize] as i32
        } else {
            1
        }
    }

    /// Text form `hex:t1..t2:<bits>`; one character per non-zero layer in
    /// order `t1..=t2`, `1` for `+1`.
    pub fn descriptor(&self) -> String {
        let bits: String = self
            .signs()
            .map(|(_, e)| if e == 1 { '1' } else { '0' })
            .collect();
        format!("hex:{}..{}:{}", self.t1, self.t2, bits)
    }

    /// Change of `S` when moving from layer `k` to layer `k + dk`.
    fn shift(&self, k: i32, dk: i32) -> Option<i32> {
        let to = k + dk;
        if !self.contains_layer(k) || !self.contains_layer(to) {
            return None;
        }
        Some(self.prefix[(to - self.t1) as usize] - self.prefix[(k - self.t1) as usize])
    }
}

fn check_span(t1: i32, t2: i32) -> Result<()> {
    if t1 > 0 || t2 < 0 {
        return Err(Error::InvalidLayerSpan { t1, t2 });
    }
    if (t2 as i64 - t1 as i64) > 64 {
        return Err(Error::TooManyLayers { t1, t2 });
    }
    Ok(())
}

/// All `2^(t2−t1)` grids over the layer span, ordered by grid id. With
/// `normalize` set and `t2 ≥ 1`, only sequences with `ε_1 = +1` are kept;
/// the others are mirror images of these.
pub fn enumerate_grids(t1: i32, t2: i32, normalize: bool) -> Result<Vec<EpsilonSeq>> {
    check_span(t1, t2)?;
    let bits = (t2 - t1) as u32;
    if bits > 30 {
        return Err(Error::InvalidParams(format!(
            "refusing to enumerate 2^{bits} grids"
        )));
    }
    // bit position of ε_1 is the number of negative layers
    let eps1_bit = (-t1) as u32;
    (0..1u64 << bits)
        .filter(|id| !normalize || t2 < 1 || id >> eps1_bit & 1 == 1)
        .map(|id| EpsilonSeq::from_grid_id(t1, t2, id))
        .collect()
}

/// Which packing grid a point or configuration lives on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LatticeRef {
    Hexagonal(EpsilonSeq),
    Octahedral,
}

// Neighbour offsets (dk, di, dj), sorted ascending.
const HEX_IN_LAYER: [(i32, i32); 6] = [(-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0)];
// Adjacent-layer offsets (di, dj) keyed by the change of S between the layers.
const HEX_SHIFT_PLUS: [(i32, i32); 3] = [(-1, 0), (0, -1), (0, 0)];
const HEX_SHIFT_MINUS: [(i32, i32); 3] = [(0, 0), (0, 1), (1, 0)];
const OCT_OFFSETS: [(i32, i32, i32); 12] = [
    (-1, 0, 0),
    (-1, 0, 1),
    (-1, 1, 0),
    (-1, 1, 1),
    (0, -1, 0),
    (0, 0, -1),
    (0, 0, 1),
    (0, 1, 0),
    (1, -1, -1),
    (1, -1, 0),
    (1, 0, -1),
    (1, 0, 0),
];

impl LatticeRef {
    /// Scaled squared distance at which two unit balls touch.
    pub fn contact_threshold(&self) -> i64 {
        match self {
            LatticeRef::Hexagonal(_) => 12,
            LatticeRef::Octahedral => 4,
        }
    }

    /// Factor between [`scaled_sq_dist`](Self::scaled_sq_dist) and `d²`.
    pub fn distance_scale(&self) -> i64 {
        match self {
            LatticeRef::Hexagonal(_) => 3,
            LatticeRef::Octahedral => 1,
        }
    }

    /// Grid id of the sign sequence; 0 for the octahedral lattice.
    pub fn grid_id(&self) -> u64 {
        match self {
            LatticeRef::Hexagonal(seq) => seq.grid_id(),
            LatticeRef::Octahedral => 0,
        }
    }

    pub fn descriptor(&self) -> String {
        match self {
            LatticeRef::Hexagonal(seq) => seq.descriptor(),
            LatticeRef::Octahedral => "oct".to_string(),
        }
    }

    pub fn is_hexagonal(&self) -> bool {
        matches!(self, LatticeRef::Hexagonal(_))
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        match self {
            LatticeRef::Hexagonal(seq) => seq.contains_layer(p.k),
            LatticeRef::Octahedral => true,
        }
    }

    pub fn check_point(&self, p: LatticePoint) -> Result<()> {
        match self {
            LatticeRef::Hexagonal(seq) => seq.slot(p.k).map(|_| ()),
            LatticeRef::Octahedral => Ok(()),
        }
    }

    pub fn to_cartesian(&self, p: LatticePoint) -> Result<[f64; 3]> {
        let (i, j, k) = (p.i as f64, p.j as f64, p.k as f64);
        match self {
            LatticeRef::Hexagonal(seq) => {
                let s = seq.prefix_sum(p.k)? as f64;
                Ok([
                    2.0 * i + j + s,
                    3.0f64.sqrt() * j + s * (1.0f64 / 3.0).sqrt(),
                    k * basis::layer_height(),
                ])
            }
            LatticeRef::Octahedral => Ok([2.0 * i + k, 2.0 * j + k, 2.0f64.sqrt() * k]),
        }
    }

    /// Exact `3·d²` (hexagonal) or `d²` (octahedral) between two points.
    pub fn scaled_sq_dist(&self, p: LatticePoint, q: LatticePoint) -> Result<i64> {
        let di = (p.i - q.i) as i64;
        let dj = (p.j - q.j) as i64;
        let dk = (p.k - q.k) as i64;
        match self {
            LatticeRef::Hexagonal(seq) => {
                let ds = (seq.prefix_sum(p.k)? - seq.prefix_sum(q.k)?) as i64;
                let a = 2 * di + dj + ds;
                let b = 3 * dj + ds;
                Ok(3 * a * a + b * b + 8 * dk * dk)
            }
            LatticeRef::Octahedral => {
                let a = 2 * di + dk;
                let b = 2 * dj + dk;
                Ok(a * a + b * b + 2 * dk * dk)
            }
        }
    }

    pub fn is_contact(&self, p: LatticePoint, q: LatticePoint) -> Result<bool> {
        if p == q {
            return Err(Error::SameBall(p));
        }
        Ok(self.scaled_sq_dist(p, q)? == self.contact_threshold())
    }

    /// All touching grid points of `p`, sorted by `(dk, di, dj)`. Hexagonal
    /// neighbours in layers outside `t1..=t2` are dropped.
    pub fn neighbors(&self, p: LatticePoint) -> Result<Vec<LatticePoint>> {
        self.check_point(p)?;
        let mut out = Vec::with_capacity(12);
        self.push_neighbors(p, &mut out);
        Ok(out)
    }

    /// Appends the neighbours of an in-range point to `out`.
    pub(crate) fn push_neighbors(&self, p: LatticePoint, out: &mut Vec<LatticePoint>) {
        match self {
            LatticeRef::Hexagonal(seq) => {
                if let Some(s) = seq.shift(p.k, -1) {
                    for &(di, dj) in hex_layer_offsets(s) {
                        out.push(p.offset(di, dj, -1));
                    }
                }
                for &(di, dj) in &HEX_IN_LAYER {
                    out.push(p.offset(di, dj, 0));
                }
                if let Some(s) = seq.shift(p.k, 1) {
                    for &(di, dj) in hex_layer_offsets(s) {
                        out.push(p.offset(di, dj, 1));
                    }
                }
            }
            LatticeRef::Octahedral => {
                for &(dk, di, dj) in &OCT_OFFSETS {
                    out.push(p.offset(di, dj, dk));
                }
            }
        }
    }

    /// The mirror grid: `−ε` for hexagonal grids, itself for octahedral.
    pub fn mirrored(&self) -> LatticeRef {
        match self {
            LatticeRef::Hexagonal(seq) => LatticeRef::Hexagonal(seq.negated()),
            LatticeRef::Octahedral => LatticeRef::Octahedral,
        }
    }

    /// Image of `p` on [`mirrored`](Self::mirrored) under the isometry that
    /// negates the x and y Cartesian coordinates and keeps z.
    pub fn mirror_point(&self, p: LatticePoint) -> LatticePoint {
        match self {
            LatticeRef::Hexagonal(_) => LatticePoint::new(-p.i, -p.j, p.k),
            LatticeRef::Octahedral => LatticePoint::new(-p.i - p.k, -p.j - p.k, p.k),
        }
    }

    /// Sign that orients lexicographic tie-breaking, see
    /// [`EpsilonSeq::orientation`].
    pub fn orientation(&self) -> i32 {
        match self {
            LatticeRef::Hexagonal(seq) => seq.orientation(),
            LatticeRef::Octahedral => 1,
        }
    }
}

fn hex_layer_offsets(shift: i32) -> &'static [(i32, i32); 3] {
    if shift > 0 {
        &HEX_SHIFT_PLUS
    } else {
        &HEX_SHIFT_MINUS
    }
}

impl fmt::Display for LatticeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

impl FromStr for LatticeRef {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Descriptor(s.to_string());
        if s == "oct" {
            return Ok(LatticeRef::Octahedral);
        }
        let rest = s.strip_prefix("hex:").ok_or_else(bad)?;
        let (span, bits) = rest.rsplit_once(':').ok_or_else(bad)?;
        let (t1, t2) = parse_span(span).ok_or_else(bad)?;
        let values = bits
            .chars()
            .map(|c| match c {
                '1' => Ok(1),
                '0' => Ok(-1),
                _ => Err(bad()),
            })
            .collect::<Result<Vec<_>>>()?;
        EpsilonSeq::new(t1, t2, &values).map(LatticeRef::Hexagonal)
    }
}

/// Parses `a..b` into an inclusive pair.
pub fn parse_span(s: &str) -> Option<(i32, i32)> {
    let (a, b) = s.split_once("..")?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}
