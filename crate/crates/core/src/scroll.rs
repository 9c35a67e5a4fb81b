//! The rational normal scroll of the pencil, its Cox ring and the curve's
//! ideal inside it.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::curvegen::{parameter_ring, CurveModel};
use crate::error::{Error, ScrollError};
use crate::field::PrimeField;
use crate::groebner::{kernel_of_ring_map, preimage, IdealGB};
use crate::poly::{indexed_names, GradedRing, Monomial, MonomialOrder, MultiPoly, Ring, RingMap};
use crate::syzygy::{kernel_generators, kernel_rank_bound, CoxParametrization, Differential, KernelGenerators, WindowOverflow};

/// `S(e_1, ..., e_d)` with `e_1 >= ... >= e_d >= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScrollType {
    e: Vec<usize>,
}

impl ScrollType {
    pub fn new(mut e: Vec<usize>) -> Self {
        assert!(!e.is_empty());
        e.sort_unstable_by(|a, b| b.cmp(a));
        ScrollType { e }
    }

    pub fn e(&self) -> &[usize] {
        &self.e
    }

    /// Rank `d = k - 1` of the bundle.
    pub fn rank(&self) -> usize {
        self.e.len()
    }

    /// Degree `f = g - k + 1`.
    pub fn degree(&self) -> usize {
        self.e.iter().sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.e[0] - self.e[self.e.len() - 1] <= 1
    }

    pub fn max_e(&self) -> usize {
        self.e[0]
    }
}

pub fn scroll_type_from_curve(model: &CurveModel) -> ScrollType {
    ScrollType::new(model.adapted().block_sizes.clone())
}

/// `k[phi_0, ..., phi_{d-1}, v, w]` with `deg phi_i = (e_1 - e_{i+1}, 1)` and
/// `deg v = deg w = (1, 0)`; monomials are compared by `d1 + d2` and then
/// reverse-lexicographically.
#[derive(Debug, Clone)]
pub struct CoxRingDescriptor {
    pub scroll: ScrollType,
    pub ring: Ring,
}

impl CoxRingDescriptor {
    pub fn phi(&self, i: usize) -> usize {
        i
    }

    pub fn v(&self) -> usize {
        self.scroll.rank()
    }

    pub fn w(&self) -> usize {
        self.scroll.rank() + 1
    }

    /// Multidegree of the class `aH + bR`.
    pub fn class_degree(&self, a: i64, b: i64) -> (i64, i64) {
        (a * self.scroll.max_e() as i64 + b, a)
    }
}

pub fn build_cox_ring(scroll: &ScrollType, field: PrimeField) -> CoxRingDescriptor {
    let e = scroll.e();
    let d = e.len();
    let mut names: Vec<String> = indexed_names("phi", d);
    names.push("v".into());
    names.push("w".into());
    let mut degrees: Vec<(i64, i64)> = e.iter().map(|&ei| ((e[0] - ei) as i64, 1)).collect();
    degrees.push((1, 0));
    degrees.push((1, 0));
    let weights = degrees.iter().map(|&(a, b)| (a + b) as u32).collect();
    let ring = GradedRing::new(field, names, degrees, weights, MonomialOrder::GRevLex);
    CoxRingDescriptor {
        scroll: scroll.clone(),
        ring,
    }
}

#[derive(Debug, Clone)]
pub struct ScrollEmbedding {
    pub cox: CoxRingDescriptor,
    /// Canonical coordinate indices, top row then bottom row.
    pub scroll_matrix: [Vec<usize>; 2],
    pub scroll_ideal: IdealGB,
    /// `T -> R`, `x_{i,m} -> phi_i v^(e_i - m) w^m`.
    pub phi_map: RingMap,
    /// `R -> k[s,t]`, `phi_i -> G_i`, `v -> f`, `w -> h`.
    pub cox_parametrization: RingMap,
    pub parametrization: CoxParametrization,
}

pub fn build_embedding(model: &CurveModel) -> Result<ScrollEmbedding, Error> {
    let field = model.spec.field;
    let adapted = model.adapted();
    let scroll = scroll_type_from_curve(model);
    let cox = build_cox_ring(&scroll, field);
    let t_ring = &model.canonical.ring;
    let g = t_ring.nvars();
    let r = &cox.ring;

    let scroll_matrix = adapted.scroll_matrix();
    let [top, bottom] = &scroll_matrix;
    let t = |j: usize| MultiPoly::var(t_ring, j);
    let mut minors = Vec::new();
    for a in 0..top.len() {
        for b in a + 1..top.len() {
            minors.push(&(&t(top[a]) * &t(bottom[b])) - &(&t(top[b]) * &t(bottom[a])));
        }
    }
    let scroll_ideal = IdealGB::new(t_ring, minors)?;

    let mut images = Vec::with_capacity(g);
    for (i, &e) in adapted.block_sizes.iter().enumerate() {
        for m in 0..=e {
            let mut exps = alloc::vec![0u16; r.nvars()];
            exps[cox.phi(i)] = 1;
            exps[cox.v()] = (e - m) as u16;
            exps[cox.w()] = m as u16;
            images.push(MultiPoly::term(r, Monomial::from_exponents(exps), 1));
        }
    }
    let phi_map = RingMap::new(t_ring, r, images)?;

    let s_ring = parameter_ring(field);
    let mut cox_images: Vec<MultiPoly> = adapted.block_generators.iter().map(|gi| gi.to_poly(&s_ring)).collect();
    cox_images.push(model.gluing.f.to_poly(&s_ring));
    cox_images.push(model.gluing.h.to_poly(&s_ring));
    let cox_parametrization = RingMap::new(r, &s_ring, cox_images)?;

    let k = model.spec.gonality as i64;
    let parametrization = CoxParametrization {
        ring: r.clone(),
        fiber_images: adapted.block_generators.clone(),
        f: model.gluing.f.clone(),
        h: model.gluing.h.clone(),
        offset: 2 * model.spec.genus as i64 - 2 - scroll.max_e() as i64 * k,
    };
    Ok(ScrollEmbedding {
        cox,
        scroll_matrix,
        scroll_ideal,
        phi_map,
        cox_parametrization,
        parametrization,
    })
}

impl ScrollEmbedding {
    /// `kernel(phi) = (2x2 minors)`, by elimination.
    pub fn verify_scroll_kernel(&self) -> Result<bool, Error> {
        let ker = kernel_of_ring_map(&self.phi_map)?;
        Ok(ker.equals(&self.scroll_ideal)?)
    }

    /// `phi` followed by the Cox parametrization is the curve's parametrization.
    pub fn verify_factorization(&self, model: &CurveModel) -> Result<bool, Error> {
        let composite = self.phi_map.then(&self.cox_parametrization)?;
        let direct = model.parametrization();
        Ok(composite.images() == direct.images())
    }

    /// The twist window `[lo, hi]` is scanned as `c = m e_1 - a`.
    pub fn c_range(&self, m: i64, twist_lo: i64, twist_hi: i64) -> (i64, i64) {
        let e1 = self.cox.scroll.max_e() as i64;
        (m * e1 - twist_hi, m * e1 - twist_lo)
    }

    pub fn base_vars(&self) -> [usize; 2] {
        [self.cox.v(), self.cox.w()]
    }
}

/// Minimal generators of the curve's ideal in the Cox ring.
#[derive(Debug, Clone)]
pub struct CurveOnScroll {
    pub generators: Vec<MultiPoly>,
    pub bidegrees: Vec<(i64, i64)>,
    /// `a = d2 e_1 - d1` per generator, decreasing.
    pub twists: Vec<i64>,
    /// Second degree at which the generators live: 2, or 3 when `k = 3`.
    pub h_degree: i64,
    /// Checked ranges with `dim ker` per `c`, for certificates.
    pub kernel_dims: Vec<(i64, usize)>,
}

impl CurveOnScroll {
    pub fn ideal(&self, emb: &ScrollEmbedding) -> Result<IdealGB, Error> {
        Ok(IdealGB::new(&emb.cox.ring, self.generators.clone())?)
    }
}

/// Shared scan for one resolution step at second degree `m` with twists in
/// `[lo, hi]`; widens once by `f + 2` on each side if the scan spills over
/// or the generator count is off.
pub(crate) fn scan_step(
    emb: &ScrollEmbedding,
    diff: Differential<'_>,
    m: i64,
    window: (i64, i64),
    expected: usize,
) -> Result<KernelGenerators, StepFailure> {
    let widen = emb.cox.scroll.degree() as i64 + 2;
    let bound = match diff {
        Differential::Module(map) => Some(kernel_rank_bound(map, &emb.cox.ring, m, emb.base_vars())),
        Differential::Parametrization(_) => None,
    };
    let mut last = StepFailure::Count(0);
    for (lo, hi) in [window, (window.0 - widen, window.1 + widen)] {
        let (c_lo, c_hi) = emb.c_range(m, lo, hi);
        match kernel_generators(diff, &emb.cox.ring, m, c_lo.max(0), c_hi, emb.base_vars(), bound) {
            Ok(found) if found.columns.len() == expected => return Ok(found),
            Ok(found) => last = StepFailure::Count(found.columns.len()),
            Err(WindowOverflow::Below(c)) | Err(WindowOverflow::Above(c)) => {
                last = StepFailure::Window(m * emb.cox.scroll.max_e() as i64 - c)
            }
        }
    }
    Err(last)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum StepFailure {
    Count(usize),
    /// Twist of the offending kernel element.
    Window(i64),
}

/// `dim ker` of the differential at second degree `m` over a twist window.
pub(crate) fn kernel_vanishes(emb: &ScrollEmbedding, diff: Differential<'_>, m: i64, window: (i64, i64)) -> bool {
    if let Differential::Module(map) = diff {
        // a torsion-free module of rank zero is zero in every degree
        if kernel_rank_bound(map, &emb.cox.ring, m, emb.base_vars()) == 0 {
            return true;
        }
    }
    let (c_lo, c_hi) = emb.c_range(m, window.0, window.1);
    (c_lo.max(0)..=c_hi).all(|c| crate::syzygy::kernel_at(diff, &emb.cox.ring, (c, m)).1.is_empty())
}

pub fn curve_on_scroll(model: &CurveModel, emb: &ScrollEmbedding) -> Result<CurveOnScroll, Error> {
    let k = model.spec.gonality;
    let f = emb.cox.scroll.degree() as i64;
    let (m, expected) = if k == 3 { (3, 1) } else { (2, k * (k - 3) / 2) };
    let window = (-2, f);
    let diff = Differential::Parametrization(&emb.parametrization);
    for lower in 1..m {
        if !kernel_vanishes(emb, diff, lower, window) {
            return Err(ScrollError::Inconsistent(format!("curve lies on a relative hypersurface of degree {lower}")).into());
        }
    }
    let found = scan_step(emb, diff, m, window, expected).map_err(|e| match e {
        StepFailure::Count(found) => ScrollError::GeneratorCount { found, expected },
        StepFailure::Window(a) => ScrollError::Inconsistent(format!("generator with twist {a} outside the search window")),
    })?;
    let e1 = emb.cox.scroll.max_e() as i64;
    let generators: Vec<MultiPoly> = found.columns.into_iter().map(|mut c| c.remove(0)).collect();
    let twists = found.bidegrees.iter().map(|&(c, d2)| d2 * e1 - c).collect();
    // every generator must be killed by the parametrization
    for gen in &generators {
        if !emb.cox_parametrization.apply(gen)?.is_zero() {
            return Err(ScrollError::Inconsistent("generator does not vanish on the curve".into()).into());
        }
    }
    Ok(CurveOnScroll {
        generators,
        bidegrees: found.bidegrees,
        twists,
        h_degree: m,
        kernel_dims: found.kernel_dims,
    })
}

/// `preimage(phi, J) = I_can`.
pub fn verify_preimage(model: &CurveModel, emb: &ScrollEmbedding, j: &IdealGB) -> Result<bool, Error> {
    let pre = preimage(&emb.phi_map, j)?;
    Ok(pre.equals(&model.canonical.ideal)?)
}
