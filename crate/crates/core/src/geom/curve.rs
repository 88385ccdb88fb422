use std::f64::consts::TAU;
use std::sync::Arc;

use super::{arg_turns, cis, Mobius};
use crate::{Error, Result, C64};

/// Which copy of a two-sided slit a piece represents.
///
/// `Minus` is the side met first when the boundary is traversed from the
/// marked point in the direction of increasing model angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Side {
    Minus,
    Plus,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Minus => Side::Plus,
            Side::Plus => Side::Minus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlitTag {
    pub side: Side,
    /// Index of the piece tracing the other side of the same slit.
    pub twin: usize,
}

/// Sampled truncated Laurent series `Σ c_k e^{ikθ}`, optionally followed by a
/// Möbius map, for `θ` running from `theta0` to `theta1` (turns).
#[derive(Debug, Clone)]
pub struct FourierPiece {
    pub coeffs: Vec<(i32, C64)>,
    pub theta0: f64,
    pub theta1: f64,
    pub post: Option<Mobius>,
    table: Arc<FourierTable>,
}

#[derive(Debug)]
struct FourierTable {
    points: Vec<C64>,
    cumulative: Vec<f64>,
}

const FOURIER_TABLE: usize = 2048;
const FOURIER_COARSE_STRIDE: usize = 8;

impl PartialEq for FourierPiece {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
            && self.theta0 == other.theta0
            && self.theta1 == other.theta1
            && self.post == other.post
    }
}

impl FourierPiece {
    pub fn new(coeffs: Vec<(i32, C64)>, theta0: f64, theta1: f64, post: Option<Mobius>) -> Self {
        let mut piece = FourierPiece {
            coeffs,
            theta0,
            theta1,
            post,
            table: Arc::new(FourierTable {
                points: Vec::new(),
                cumulative: Vec::new(),
            }),
        };
        let points: Vec<C64> = (0..=FOURIER_TABLE)
            .map(|j| piece.eval(j as f64 / FOURIER_TABLE as f64).0)
            .collect();
        // Simpson on |z'| per table cell.
        let mut cumulative = Vec::with_capacity(points.len());
        cumulative.push(0.0);
        let h = 1.0 / FOURIER_TABLE as f64;
        let mut acc = 0.0;
        for j in 0..FOURIER_TABLE {
            let s0 = j as f64 * h;
            let f0 = piece.eval(s0).1.norm();
            let fm = piece.eval(s0 + 0.5 * h).1.norm();
            let f1 = piece.eval(s0 + h).1.norm();
            acc += h * (f0 + 4.0 * fm + f1) / 6.0;
            cumulative.push(acc);
        }
        piece.table = Arc::new(FourierTable { points, cumulative });
        piece
    }

    fn dtheta_ds(&self) -> f64 {
        TAU * (self.theta1 - self.theta0)
    }

    /// Point, first and second derivative with respect to `s ∈ [0, 1]`.
    fn eval2(&self, s: f64) -> (C64, C64, C64) {
        let theta = TAU * (self.theta0 + s * (self.theta1 - self.theta0));
        let k1 = self.dtheta_ds();
        let mut z = C64::new(0.0, 0.0);
        let mut dz = C64::new(0.0, 0.0);
        let mut ddz = C64::new(0.0, 0.0);
        for &(k, c) in &self.coeffs {
            let e = C64::from_polar(1.0, k as f64 * theta);
            let kf = k as f64;
            z += c * e;
            dz += c * e * C64::new(0.0, kf * k1);
            ddz += c * e * (-(kf * k1) * (kf * k1));
        }
        match &self.post {
            None => (z, dz, ddz),
            Some(m) => {
                let d1 = m.derivative(z);
                let d2 = m.second_derivative(z);
                (m.eval(z), d1 * dz, d2 * dz * dz + d1 * ddz)
            }
        }
    }

    fn eval(&self, s: f64) -> (C64, C64) {
        let (z, dz, _) = self.eval2(s);
        (z, dz)
    }

    fn length(&self) -> f64 {
        *self.table.cumulative.last().unwrap_or(&0.0)
    }

    fn arclength_at(&self, s: f64) -> f64 {
        let x = s.clamp(0.0, 1.0) * FOURIER_TABLE as f64;
        let j = (x.floor() as usize).min(FOURIER_TABLE - 1);
        let f = x - j as f64;
        let c = &self.table.cumulative;
        c[j] + f * (c[j + 1] - c[j])
    }

    fn s_at_arclength(&self, target: f64) -> f64 {
        let c = &self.table.cumulative;
        let target = target.clamp(0.0, self.length());
        let j = c.partition_point(|&v| v < target).clamp(1, FOURIER_TABLE) - 1;
        let span = c[j + 1] - c[j];
        let f = if span > 0.0 { (target - c[j]) / span } else { 0.0 };
        (j as f64 + f) / FOURIER_TABLE as f64
    }

    fn nearest(&self, p: C64) -> (f64, f64, C64) {
        let pts = &self.table.points;
        let coarse: Vec<(usize, f64)> = (0..=FOURIER_TABLE)
            .step_by(FOURIER_COARSE_STRIDE)
            .map(|j| (j, (pts[j] - p).norm_sqr()))
            .collect();
        // Refine around the best few coarse local minima.
        let mut cands: Vec<(usize, f64)> = (0..coarse.len())
            .filter(|&i| {
                let d = coarse[i].1;
                (i == 0 || coarse[i - 1].1 >= d) && (i + 1 == coarse.len() || coarse[i + 1].1 >= d)
            })
            .map(|i| coarse[i])
            .collect();
        cands.sort_by(|a, b| a.1.total_cmp(&b.1));
        cands.truncate(3);
        let h = FOURIER_COARSE_STRIDE as f64 / FOURIER_TABLE as f64;
        let mut best = (f64::INFINITY, 0.0, p);
        for (j, _) in cands {
            let s0 = j as f64 / FOURIER_TABLE as f64;
            let (lo, hi) = ((s0 - h).max(0.0), (s0 + h).min(1.0));
            let s = self.refine(p, s0, lo, hi);
            for cand in [s, lo, hi] {
                let z = self.eval(cand).0;
                let d = (z - p).norm();
                if d < best.0 {
                    best = (d, cand, z);
                }
            }
        }
        best
    }

    fn refine(&self, p: C64, s0: f64, lo: f64, hi: f64) -> f64 {
        let mut s = s0;
        let (mut a, mut b) = (lo, hi);
        for _ in 0..40 {
            let (z, dz, ddz) = self.eval2(s);
            let g = ((z - p).conj() * dz).re;
            let gp = dz.norm_sqr() + ((z - p).conj() * ddz).re;
            if g > 0.0 {
                b = s;
            } else {
                a = s;
            }
            let mut next = if gp > 0.0 { s - g / gp } else { f64::NAN };
            if !(next > a && next < b) {
                next = 0.5 * (a + b);
            }
            if (next - s).abs() < 1e-15 {
                return next;
            }
            s = next;
        }
        s
    }

    fn mobius_image(&self, m: &Mobius) -> FourierPiece {
        let post = match &self.post {
            None => *m,
            Some(p) => m.compose(p),
        };
        FourierPiece::new(self.coeffs.clone(), self.theta0, self.theta1, Some(post))
    }
}

/// Geometry of one primitive boundary piece, parameterized by `s ∈ [0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub enum PieceGeom {
    Segment { from: C64, to: C64 },
    /// Circular arc; `start` and signed `sweep` in turns.
    Arc { center: C64, radius: f64, start: f64, sweep: f64 },
    Fourier(FourierPiece),
}

impl PieceGeom {
    pub fn point(&self, s: f64) -> C64 {
        self.eval(s).0
    }

    /// Point and derivative with respect to `s`.
    pub fn eval(&self, s: f64) -> (C64, C64) {
        match self {
            PieceGeom::Segment { from, to } => (from + (to - from) * s, to - from),
            PieceGeom::Arc {
                center,
                radius,
                start,
                sweep,
            } => {
                let e = cis(start + s * sweep);
                (center + e * *radius, e * C64::new(0.0, TAU * sweep * radius))
            }
            PieceGeom::Fourier(f) => f.eval(s),
        }
    }

    pub fn start(&self) -> C64 {
        self.point(0.0)
    }

    pub fn end(&self) -> C64 {
        self.point(1.0)
    }

    pub fn length(&self) -> f64 {
        match self {
            PieceGeom::Segment { from, to } => (to - from).norm(),
            PieceGeom::Arc { radius, sweep, .. } => TAU * radius * sweep.abs(),
            PieceGeom::Fourier(f) => f.length(),
        }
    }

    pub fn arclength_at(&self, s: f64) -> f64 {
        match self {
            PieceGeom::Fourier(f) => f.arclength_at(s),
            _ => s.clamp(0.0, 1.0) * self.length(),
        }
    }

    pub fn s_at_arclength(&self, x: f64) -> f64 {
        match self {
            PieceGeom::Fourier(f) => f.s_at_arclength(x),
            _ => {
                let len = self.length();
                if len > 0.0 {
                    (x / len).clamp(0.0, 1.0)
                } else {
                    0.0
                }
            }
        }
    }

    /// Distance, parameter and location of the closest point to `p`.
    pub fn nearest(&self, p: C64) -> (f64, f64, C64) {
        match self {
            PieceGeom::Segment { from, to } => {
                let d = to - from;
                let len2 = d.norm_sqr();
                let s = if len2 > 0.0 {
                    (((p - from) * d.conj()).re / len2).clamp(0.0, 1.0)
                } else {
                    0.0
                };
                let q = from + d * s;
                ((p - q).norm(), s, q)
            }
            PieceGeom::Arc {
                center,
                radius,
                start,
                sweep,
            } => {
                let v = p - center;
                let full = sweep.abs() >= 1.0 - 1e-15;
                let s_on = if v.norm() == 0.0 {
                    Some(0.0)
                } else {
                    let a = arg_turns(v);
                    let d = if *sweep >= 0.0 {
                        (a - start).rem_euclid(1.0)
                    } else {
                        (start - a).rem_euclid(1.0)
                    };
                    if full {
                        Some(d)
                    } else if d <= sweep.abs() {
                        Some(d / sweep.abs())
                    } else {
                        None
                    }
                };
                match s_on {
                    Some(s) => {
                        let q = self.point(s);
                        ((v.norm() - radius).abs(), s, q)
                    }
                    None => {
                        let (q0, q1) = (self.start(), self.end());
                        let (d0, d1) = ((p - q0).norm(), (p - q1).norm());
                        if d0 <= d1 {
                            (d0, 0.0, q0)
                        } else {
                            (d1, 1.0, q1)
                        }
                    }
                }
            }
            PieceGeom::Fourier(f) => f.nearest(p),
        }
    }

    /// Image under a Möbius map whose pole is off this piece.
    pub fn mobius_image(&self, m: &Mobius) -> Result<PieceGeom> {
        if let PieceGeom::Fourier(f) = self {
            return Ok(PieceGeom::Fourier(f.mobius_image(m)));
        }
        let full = matches!(self, PieceGeom::Arc { sweep, .. } if sweep.abs() >= 1.0 - 1e-15);
        let probe = |s: f64| -> Result<C64> {
            let z = self.point(s);
            let den = m.c * z + m.d;
            if den.norm() < 1e-14 * (1.0 + z.norm()) {
                return Err(Error::invalid("Möbius pole lies on a boundary piece"));
            }
            Ok(m.eval(z))
        };
        if full {
            let (w0, w1, w2) = (probe(0.0)?, probe(1.0 / 3.0)?, probe(2.0 / 3.0)?);
            let (center, radius) = circumcircle(w0, w1, w2)
                .ok_or_else(|| Error::invalid("full circle mapped to a line"))?;
            let orient = ((w1 - w0).conj() * (w2 - w0)).im;
            return Ok(PieceGeom::Arc {
                center,
                radius,
                start: arg_turns(w0 - center),
                sweep: if orient > 0.0 { 1.0 } else { -1.0 },
            });
        }
        let (w0, wm, w1) = (probe(0.0)?, probe(0.5)?, probe(1.0)?);
        match circumcircle(w0, wm, w1) {
            None => Ok(PieceGeom::Segment { from: w0, to: w1 }),
            Some((center, radius)) => {
                let start = arg_turns(w0 - center);
                let dm = (arg_turns(wm - center) - start).rem_euclid(1.0);
                let d1 = (arg_turns(w1 - center) - start).rem_euclid(1.0);
                let sweep = if dm < d1 { d1 } else { d1 - 1.0 };
                Ok(PieceGeom::Arc {
                    center,
                    radius,
                    start,
                    sweep,
                })
            }
        }
    }

    /// The sub-piece over `[s0, s1]`.
    pub fn sub(&self, s0: f64, s1: f64) -> PieceGeom {
        match self {
            PieceGeom::Segment { .. } => PieceGeom::Segment {
                from: self.point(s0),
                to: self.point(s1),
            },
            PieceGeom::Arc {
                center,
                radius,
                start,
                sweep,
            } => PieceGeom::Arc {
                center: *center,
                radius: *radius,
                start: start + s0 * sweep,
                sweep: (s1 - s0) * sweep,
            },
            PieceGeom::Fourier(f) => {
                let th = |s: f64| f.theta0 + s * (f.theta1 - f.theta0);
                PieceGeom::Fourier(FourierPiece::new(f.coeffs.clone(), th(s0), th(s1), f.post))
            }
        }
    }

    /// Same point set traversed backwards.
    pub fn reversed(&self) -> PieceGeom {
        match self {
            PieceGeom::Segment { from, to } => PieceGeom::Segment { from: *to, to: *from },
            PieceGeom::Arc {
                center,
                radius,
                start,
                sweep,
            } => PieceGeom::Arc {
                center: *center,
                radius: *radius,
                start: start + sweep,
                sweep: -sweep,
            },
            PieceGeom::Fourier(f) => {
                PieceGeom::Fourier(FourierPiece::new(f.coeffs.clone(), f.theta1, f.theta0, f.post))
            }
        }
    }

    fn samples(&self, k: usize) -> impl Iterator<Item = C64> + '_ {
        (0..=k).map(move |j| self.point(j as f64 / k as f64))
    }
}

/// Center and radius of the circle through three points, `None` when collinear.
fn circumcircle(a: C64, b: C64, c: C64) -> Option<(C64, f64)> {
    let (ab, ac) = (b - a, c - a);
    let cross = (ab.conj() * ac).im;
    let scale = ab.norm_sqr().max(ac.norm_sqr());
    if cross.abs() <= 1e-12 * scale {
        return None;
    }
    // Solve |z - a|² = |z - b|² = |z - c|² for z = a + w.
    let w = (ab * ac.norm_sqr() - ac * ab.norm_sqr()) / C64::new(0.0, 2.0 * cross) * -1.0;
    let center = a + w;
    Some((center, (a - center).norm()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Piece {
    pub geom: PieceGeom,
    pub slit: Option<SlitTag>,
}

impl Piece {
    pub fn plain(geom: PieceGeom) -> Self {
        Piece { geom, slit: None }
    }
}

/// Closest boundary location to a query point.
#[derive(Debug, Clone, Copy)]
pub struct Nearest {
    pub distance: f64,
    pub point: C64,
    pub piece: usize,
    pub s: f64,
}

/// Closed chain of boundary pieces.
///
/// The chain starts at the marked boundary point (when there is one) and is
/// ordered in the direction of increasing model angle of the normalized
/// Riemann map: counterclockwise with the domain on the left for bounded
/// domains, counterclockwise around the complement with the domain on the
/// right for domains containing ∞.
#[derive(Debug, Clone)]
pub struct BoundaryCurve {
    pieces: Vec<Piece>,
    domain_on_left: bool,
    lengths: Vec<f64>,
    param_start: Vec<f64>,
    total_param: f64,
    prefix: Vec<f64>,
    bounded: bool,
}

impl PartialEq for BoundaryCurve {
    fn eq(&self, other: &Self) -> bool {
        self.pieces == other.pieces && self.domain_on_left == other.domain_on_left
    }
}

impl BoundaryCurve {
    pub fn new(pieces: Vec<Piece>, domain_on_left: bool) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::invalid("boundary curve without pieces"));
        }
        let lengths: Vec<f64> = pieces.iter().map(|p| p.geom.length()).collect();
        let scale = 1.0 + lengths.iter().sum::<f64>();
        for i in 0..pieces.len() {
            let j = (i + 1) % pieces.len();
            let gap = (pieces[i].geom.end() - pieces[j].geom.start()).norm();
            if gap > 1e-7 * scale {
                return Err(Error::invalid(format!(
                    "boundary pieces {i} and {j} do not share an endpoint (gap {gap:.3e})"
                )));
            }
            if let Some(tag) = pieces[i].slit {
                let twin = pieces
                    .get(tag.twin)
                    .and_then(|t| t.slit)
                    .ok_or_else(|| Error::invalid(format!("slit piece {i} has no tagged twin")))?;
                if twin.twin != i || twin.side == tag.side {
                    return Err(Error::invalid(format!("slit pieces {i}/{} are not twins", tag.twin)));
                }
            }
        }
        let mut param_start = vec![0.0; pieces.len()];
        let mut acc = 0.0;
        for (i, p) in pieces.iter().enumerate() {
            param_start[i] = acc;
            if !matches!(p.slit, Some(SlitTag { side: Side::Plus, .. })) {
                acc += lengths[i];
            }
        }
        let mut area = 0.0;
        for p in &pieces {
            let k = match p.geom {
                PieceGeom::Segment { .. } => 1,
                _ => 256,
            };
            let pts: Vec<C64> = p.geom.samples(k).collect();
            for w in pts.windows(2) {
                area += 0.5 * (w[0].conj() * w[1]).im;
            }
        }
        let mut prefix = Vec::with_capacity(pieces.len());
        let mut run = 0.0;
        for l in &lengths {
            prefix.push(run);
            run += l;
        }
        let scale: f64 = lengths.iter().sum();
        let enclosing = area.abs() > 1e-9 * scale * scale;
        let bounded = enclosing && ((area > 0.0) == domain_on_left);
        Ok(BoundaryCurve {
            pieces,
            domain_on_left,
            lengths,
            param_start,
            total_param: acc,
            prefix,
            bounded,
        })
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn domain_on_left(&self) -> bool {
        self.domain_on_left
    }

    /// Whether the domain is the bounded side of the curve.
    pub fn bounds_domain(&self) -> bool {
        self.bounded
    }

    pub fn has_slits(&self) -> bool {
        self.pieces.iter().any(|p| p.slit.is_some())
    }

    pub fn start_point(&self) -> C64 {
        self.pieces[0].geom.start()
    }

    pub fn distance(&self, z: C64) -> f64 {
        self.nearest(z).distance
    }

    pub fn nearest(&self, z: C64) -> Nearest {
        let mut best = Nearest {
            distance: f64::INFINITY,
            point: z,
            piece: 0,
            s: 0.0,
        };
        for (i, p) in self.pieces.iter().enumerate() {
            // Plus-side pieces repeat their twin's point set.
            if matches!(p.slit, Some(SlitTag { side: Side::Plus, .. })) {
                continue;
            }
            let (d, s, q) = p.geom.nearest(z);
            if d < best.distance {
                best = Nearest {
                    distance: d,
                    point: q,
                    piece: i,
                    s,
                };
            }
        }
        best
    }

    /// Like [`nearest`](Self::nearest), but on a slit picks the side facing `z`.
    pub fn nearest_sided(&self, z: C64) -> Nearest {
        let n = self.nearest(z);
        match self.pieces[n.piece].slit {
            Some(tag) if !self.on_domain_side(n.piece, n.s, z) => Nearest {
                piece: tag.twin,
                s: 1.0 - n.s,
                ..n
            },
            _ => n,
        }
    }

    /// Nearest location, placed on the given side when it falls on a slit.
    pub fn nearest_on_side(&self, z: C64, side: Option<Side>) -> Nearest {
        let n = self.nearest(z);
        match (self.pieces[n.piece].slit, side) {
            (Some(tag), Some(side)) if tag.side != side => Nearest {
                piece: tag.twin,
                s: 1.0 - n.s,
                ..n
            },
            _ => n,
        }
    }

    /// Unit normal at a location pointing into the domain.
    pub fn inward_normal(&self, piece: usize, s: f64) -> C64 {
        let (_, dq) = self.pieces[piece].geom.eval(s);
        let t = dq / dq.norm();
        if self.domain_on_left {
            t * C64::new(0.0, 1.0)
        } else {
            t * C64::new(0.0, -1.0)
        }
    }

    fn on_domain_side(&self, piece: usize, s: f64, z: C64) -> bool {
        let (q, dq) = self.pieces[piece].geom.eval(s);
        let cross = (dq.conj() * (z - q)).im;
        (cross > 0.0) == self.domain_on_left
    }

    /// Side tag of the slit piece facing `z`, if the closest boundary point is on a slit.
    pub fn side_at(&self, z: C64) -> Option<(Side, Nearest)> {
        let n = self.nearest_sided(z);
        self.pieces[n.piece].slit.map(|t| (t.side, n))
    }

    /// Arclength parameter of a location, measured from the start of the
    /// chain. Both sides of a slit share the minus side's parameter.
    pub fn param(&self, piece: usize, s: f64) -> f64 {
        let p = &self.pieces[piece];
        match p.slit {
            Some(SlitTag {
                side: Side::Plus,
                twin,
            }) => self.param_start[twin] + self.pieces[twin].geom.arclength_at(1.0 - s),
            _ => self.param_start[piece] + p.geom.arclength_at(s),
        }
    }

    pub fn param_of_point(&self, z: C64) -> f64 {
        let n = self.nearest(z);
        self.param(n.piece, n.s)
    }

    /// Arclength position along the full traversal, counting both sides of slits.
    pub fn traversal_param(&self, piece: usize, s: f64) -> f64 {
        self.prefix[piece] + self.pieces[piece].geom.arclength_at(s)
    }

    /// Free ends of slits: points where a slit piece is followed directly by its twin.
    pub fn slit_tips(&self) -> Vec<C64> {
        let n = self.pieces.len();
        let mut tips = Vec::new();
        for (i, p) in self.pieces.iter().enumerate() {
            if let Some(tag) = p.slit {
                if tag.twin == (i + 1) % n {
                    tips.push(p.geom.end());
                }
            }
        }
        tips
    }

    /// Whether a location on a slit piece lies on its two-sided part.
    pub fn is_two_sided(&self, piece: usize, point: C64, tol: f64) -> bool {
        self.pieces[piece].slit.is_some()
            && self.slit_tips().iter().all(|t| (t - point).norm() > tol)
    }

    /// Total arclength of the boundary as a point set.
    pub fn total_param(&self) -> f64 {
        self.total_param
    }

    /// Total length of the traversal, counting both sides of slits.
    pub fn traversal_length(&self) -> f64 {
        self.lengths.iter().sum()
    }

    /// `n` points at equal arclength over the point set, at cell midpoints,
    /// paired with their parameter.
    pub fn sample_point_set(&self, n: usize) -> Vec<(C64, f64)> {
        let total = self.total_param;
        (0..n)
            .map(|k| {
                let x = (k as f64 + 0.5) * total / n as f64;
                (self.point_at_param(x), x)
            })
            .collect()
    }

    pub fn point_at_param(&self, x: f64) -> C64 {
        let x = x.rem_euclid(self.total_param.max(f64::MIN_POSITIVE));
        let mut last = 0;
        for (i, p) in self.pieces.iter().enumerate() {
            if matches!(p.slit, Some(SlitTag { side: Side::Plus, .. })) {
                continue;
            }
            last = i;
            let local = x - self.param_start[i];
            if local <= self.lengths[i] {
                return p.geom.point(p.geom.s_at_arclength(local));
            }
        }
        self.pieces[last].geom.end()
    }

    /// `n` points at equal arclength along the full traversal, starting at the
    /// chain start.
    pub fn sample_traversal(&self, n: usize) -> Vec<C64> {
        let total = self.traversal_length();
        let mut out = Vec::with_capacity(n);
        let mut piece = 0;
        let mut offset = 0.0;
        for k in 0..n {
            let x = k as f64 * total / n as f64;
            while piece + 1 < self.pieces.len() && x > offset + self.lengths[piece] {
                offset += self.lengths[piece];
                piece += 1;
            }
            let g = &self.pieces[piece].geom;
            out.push(g.point(g.s_at_arclength(x - offset)));
        }
        out
    }

    /// Winding number of the chain around `z` (`z` off the curve).
    pub fn winding_number(&self, z: C64) -> i64 {
        let mut total = 0.0;
        for p in &self.pieces {
            let k = match p.geom {
                PieceGeom::Segment { .. } => 1,
                _ => 256,
            };
            let mut prev = p.geom.start() - z;
            for q in p.geom.samples(k).skip(1) {
                let cur = q - z;
                total += (cur / prev).arg();
                prev = cur;
            }
        }
        (total / TAU).round() as i64
    }

    /// Whether `z` lies in the domain bounded by this chain.
    pub fn contains(&self, z: C64, tol: f64) -> bool {
        if !z.is_finite() || self.distance(z) <= tol {
            return false;
        }
        let w = self.winding_number(z);
        if self.bounded {
            w != 0
        } else {
            w == 0
        }
    }

    pub fn bounding_box(&self) -> (C64, C64) {
        let (mut lo, mut hi) = (
            C64::new(f64::INFINITY, f64::INFINITY),
            C64::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        );
        for p in &self.pieces {
            let k = match p.geom {
                PieceGeom::Segment { .. } => 1,
                _ => 256,
            };
            for q in p.geom.samples(k) {
                lo = C64::new(lo.re.min(q.re), lo.im.min(q.im));
                hi = C64::new(hi.re.max(q.re), hi.im.max(q.im));
            }
        }
        (lo, hi)
    }

    pub fn diameter(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        (hi - lo).norm()
    }

    /// Centroid of the bounding box.
    pub fn anchor(&self) -> C64 {
        let (lo, hi) = self.bounding_box();
        (lo + hi) * 0.5
    }

    /// Same curve with the traversal starting at the boundary point closest to `z`.
    pub fn starting_at(&self, z: C64, tol: f64) -> Result<BoundaryCurve> {
        let n = self.nearest(z);
        let count = self.pieces.len();
        let len = self.lengths[n.piece];
        let (split, first) = if n.s * len <= tol {
            (None, n.piece)
        } else if (1.0 - n.s) * len <= tol {
            (None, (n.piece + 1) % count)
        } else {
            (Some(n.s), n.piece)
        };
        if split.is_some() && self.pieces[n.piece].slit.is_some() {
            return Err(Error::invalid("cannot start a traversal inside a slit"));
        }
        let mut order: Vec<usize> = (0..count).map(|k| (first + k) % count).collect();
        let mut pieces: Vec<Piece> = Vec::with_capacity(count + 1);
        match split {
            None => {
                let pos = |i: usize| order.iter().position(|&j| j == i).unwrap();
                for &i in &order {
                    let mut p = self.pieces[i].clone();
                    if let Some(t) = p.slit.as_mut() {
                        t.twin = pos(t.twin);
                    }
                    pieces.push(p);
                }
            }
            Some(s) => {
                order.remove(0);
                let pos = |i: usize| order.iter().position(|&j| j == i).unwrap() + 1;
                let g = &self.pieces[n.piece].geom;
                pieces.push(Piece::plain(g.sub(s, 1.0)));
                for &i in &order {
                    let mut p = self.pieces[i].clone();
                    if let Some(t) = p.slit.as_mut() {
                        t.twin = pos(t.twin);
                    }
                    pieces.push(p);
                }
                pieces.push(Piece::plain(g.sub(0.0, s)));
            }
        }
        BoundaryCurve::new(pieces, self.domain_on_left)
    }

    pub fn mobius_image(&self, m: &Mobius) -> Result<BoundaryCurve> {
        let pieces = self
            .pieces
            .iter()
            .map(|p| {
                Ok(Piece {
                    geom: p.geom.mobius_image(m)?,
                    slit: p.slit,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        BoundaryCurve::new(pieces, self.domain_on_left)
    }
}
