//! Random `g`-nodal rational curves carrying a pencil of degree `k`, their
//! canonical sections and canonical ideal.
//!
//! The normalization is `P^1` with coordinates `(s:t)`. A pencil `(f:h)` of
//! binary forms of degree `k` is drawn, and for each node a fiber
//! `f*R1 - h*R0 = 0` with at least two rational points is picked; two of its
//! points `P_i, Q_i` are glued. The canonical series is spanned by
//! `s_j = prod_{i != j} q_i` where `q_i` vanishes at `P_i` and `Q_i`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::binary::{coprime, BinaryForm, ProjPoint};
use crate::error::{CurveError, Error};
use crate::field::{FieldElement, PrimeField};
use crate::groebner::{HilbertData, IdealGB};
use crate::linalg::{EchelonSpace, Matrix};
use crate::poly::{indexed_names, monomial_basis, GradedRing, Monomial, MonomialOrder, MultiPoly, Ring, RingMap};
use crate::rng::FieldRng;

/// Draws of the pencil, and of each fiber point `R_i`, before giving up.
pub const MAX_DRAWS: usize = 200;

/// Whole-construction attempts made by [`construct_with_retries`].
pub const DEFAULT_ATTEMPTS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveSpec {
    pub genus: usize,
    pub gonality: usize,
    pub field: PrimeField,
    pub seed: u64,
}

impl CurveSpec {
    pub fn new(genus: usize, gonality: usize, prime: u64, seed: u64) -> Result<Self, Error> {
        let field = PrimeField::new(prime)?;
        if gonality < 3 {
            return Err(CurveError::InvalidSpec(format!("gonality {gonality} < 3 (hyperelliptic excluded)")).into());
        }
        if gonality + 1 > genus {
            return Err(CurveError::InvalidSpec(format!("gonality {gonality} exceeds genus - 1 = {}", genus as i64 - 1)).into());
        }
        if prime + 1 < (2 * genus + gonality) as u64 {
            return Err(CurveError::InvalidSpec(format!(
                "GF({prime}) has too few points for {} glued points",
                2 * genus
            ))
            .into());
        }
        Ok(CurveSpec {
            genus,
            gonality,
            field,
            seed,
        })
    }

    pub fn prime(&self) -> u32 {
        self.field.modulus()
    }

    /// Degree `g - k + 1` of the scroll.
    pub fn scroll_degree(&self) -> usize {
        self.genus - self.gonality + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingData {
    pub f: BinaryForm,
    pub h: BinaryForm,
    pub points_r: Vec<ProjPoint>,
    pub points_p: Vec<ProjPoint>,
    pub points_q: Vec<ProjPoint>,
    /// `(a_i, b_i)` with `b_i f(P_i) = a_i f(Q_i)` and `b_i h(P_i) = a_i h(Q_i)`.
    pub multipliers: Vec<(FieldElement, FieldElement)>,
}

impl GluingData {
    /// The fiber form `f*R1 - h*R0` of the point `R`.
    pub fn fiber_form(&self, r: ProjPoint, field: PrimeField) -> BinaryForm {
        self.f
            .scale(r.x1, field)
            .add(&self.h.scale(field.neg(r.x0), field), field)
    }

    /// Checks the fiber, distinctness and multiplier conditions by evaluation.
    pub fn verify(&self, field: PrimeField) -> Result<(), CurveError> {
        let fail = |msg: String| Err(CurveError::Verification(msg));
        let mut all: Vec<ProjPoint> = self.points_p.iter().chain(&self.points_q).copied().collect();
        all.sort();
        all.dedup();
        if all.len() != 2 * self.points_p.len() {
            return fail("glued points are not pairwise distinct".into());
        }
        for i in 0..self.points_p.len() {
            let (pp, qq) = (self.points_p[i], self.points_q[i]);
            let d = self.fiber_form(self.points_r[i], field);
            if d.eval(pp, field) != 0 || d.eval(qq, field) != 0 {
                return fail(format!("node {i}: points off the fiber"));
            }
            let (fp, hp) = (self.f.eval(pp, field), self.h.eval(pp, field));
            let (fq, hq) = (self.f.eval(qq, field), self.h.eval(qq, field));
            if field.mul(fp, hq) != field.mul(hp, fq) {
                return fail(format!("node {i}: (f:h) differs at P and Q"));
            }
            let (a, b) = self.multipliers[i];
            if a == 0 || b != 1 || field.mul(b, fp) != field.mul(a, fq) || field.mul(b, hp) != field.mul(a, hq) {
                return fail(format!("node {i}: bad multipliers"));
            }
        }
        Ok(())
    }
}

fn random_point(field: PrimeField, rng: &mut FieldRng) -> ProjPoint {
    let x = rng.below(field.modulus() + 1);
    if x == field.modulus() {
        ProjPoint::INFINITY
    } else {
        ProjPoint::affine(x)
    }
}

/// Draws the pencil and the `g` glued pairs.
pub fn build_gluing_data(spec: &CurveSpec, rng: &mut FieldRng) -> Result<GluingData, CurveError> {
    let field = spec.field;
    let k = spec.gonality;
    let (f, h) = (0..MAX_DRAWS)
        .map(|_| (BinaryForm::random(k, field, rng), BinaryForm::random(k, field, rng)))
        .find(|(f, h)| coprime(f, h, field))
        .ok_or(CurveError::RetryExhausted { attempts: MAX_DRAWS })?;
    let mut data = GluingData {
        f,
        h,
        points_r: Vec::new(),
        points_p: Vec::new(),
        points_q: Vec::new(),
        multipliers: Vec::new(),
    };
    for _ in 0..spec.genus {
        let mut found = None;
        for _ in 0..MAX_DRAWS {
            let r = random_point(field, rng);
            if data.points_r.contains(&r) {
                continue;
            }
            let roots = data.fiber_form(r, field).rational_roots(field, rng);
            if roots.len() >= 2 {
                found = Some((r, roots[0], roots[1]));
                break;
            }
        }
        let (r, pp, qq) = found.ok_or(CurveError::RetryExhausted { attempts: MAX_DRAWS })?;
        let (fp, fq) = (data.f.eval(pp, field), data.f.eval(qq, field));
        let a = if fq != 0 {
            field.div(fp, fq).unwrap()
        } else {
            field.div(data.h.eval(pp, field), data.h.eval(qq, field)).unwrap()
        };
        data.points_r.push(r);
        data.points_p.push(pp);
        data.points_q.push(qq);
        data.multipliers.push((a, 1));
    }
    Ok(data)
}

/// Sections recombined so that the scroll of the pencil is in block form.
///
/// Block `i` has size `e_i + 1` and coordinates `f^(e_i - m) h^m G_i` for
/// `m = 0..=e_i`; blocks are ordered by `e_i` descending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScrollAdaptedBasis {
    pub sections: Vec<BinaryForm>,
    /// Row `j` expresses `sections[j]` in the original sections `s_0..s_{g-1}`.
    pub transform: Matrix,
    pub block_sizes: Vec<usize>,
    pub block_generators: Vec<BinaryForm>,
    /// `dim H^0(K - jD)` for `j = 0, 1, ...` down to the first zero.
    pub filtration_dims: Vec<usize>,
}

impl ScrollAdaptedBasis {
    pub fn block_start(&self, i: usize) -> usize {
        self.block_sizes[..i].iter().map(|e| e + 1).sum()
    }

    /// Coordinate indices of the `2 x f` scroll matrix, top row then bottom.
    pub fn scroll_matrix(&self) -> [Vec<usize>; 2] {
        let mut top = Vec::new();
        let mut bottom = Vec::new();
        for (i, &e) in self.block_sizes.iter().enumerate() {
            let start = self.block_start(i);
            for m in 0..e {
                top.push(start + m);
                bottom.push(start + m + 1);
            }
        }
        [top, bottom]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalBasis {
    pub q_forms: Vec<BinaryForm>,
    pub sections: Vec<BinaryForm>,
    pub normalized: Option<ScrollAdaptedBasis>,
}

impl CanonicalBasis {
    /// The coordinates used for the embedding: normalized if available.
    pub fn coordinates(&self) -> &[BinaryForm] {
        match &self.normalized {
            Some(n) => &n.sections,
            None => &self.sections,
        }
    }
}

fn coefficient_matrix(forms: &[BinaryForm]) -> Matrix {
    Matrix::from_rows(forms.iter().map(|f| f.coeffs().to_vec()).collect(), forms[0].degree() + 1)
}

pub fn canonical_sections(gluing: &GluingData, field: PrimeField) -> Result<CanonicalBasis, CurveError> {
    let g = gluing.points_p.len();
    let q_forms: Vec<BinaryForm> = (0..g)
        .map(|i| {
            BinaryForm::vanishing_at(gluing.points_p[i], field)
                .mul(&BinaryForm::vanishing_at(gluing.points_q[i], field), field)
        })
        .collect();
    let sections: Vec<BinaryForm> = (0..g)
        .map(|j| {
            (0..g)
                .filter(|&i| i != j)
                .fold(BinaryForm::one(), |acc, i| acc.mul(&q_forms[i], field))
        })
        .collect();
    let rank = coefficient_matrix(&sections).rank(field);
    if rank < g {
        return Err(CurveError::RankDeficient { rank, genus: g });
    }
    Ok(CanonicalBasis {
        q_forms,
        sections,
        normalized: None,
    })
}

/// Matrix of `G -> F*G` from forms of degree `target - deg F` to degree `target`.
fn multiplication_matrix(form: &BinaryForm, target: usize) -> Matrix {
    let src = target - form.degree();
    let mut m = Matrix::zeros(target + 1, src + 1);
    for c in 0..=src {
        for (r, &x) in form.coeffs().iter().enumerate() {
            m.set(r + c, c, x);
        }
    }
    m
}

/// `{G of degree 2g-2-jk : f^j G and h^j G lie in W}` where `ann` cuts out `W`.
fn residual_space(
    ann: &Matrix,
    f_pow: &BinaryForm,
    h_pow: &BinaryForm,
    top: usize,
    field: PrimeField,
) -> Vec<BinaryForm> {
    let cond_f = ann.mul(&multiplication_matrix(f_pow, top), field);
    let cond_h = ann.mul(&multiplication_matrix(h_pow, top), field);
    let cols = cond_f.cols();
    let rows: Vec<Vec<FieldElement>> = (0..cond_f.rows())
        .map(|r| cond_f.row(r).to_vec())
        .chain((0..cond_h.rows()).map(|r| cond_h.row(r).to_vec()))
        .collect();
    let n = rows.len();
    let cond = if n == 0 { Matrix::zeros(0, cols) } else { Matrix::from_rows(rows, cols) };
    cond.kernel_basis(field)
        .into_iter()
        .map(BinaryForm::from_coeffs)
        .collect()
}

/// Recombines the sections along the filtration `H^0(K - jD)`, `D` a fiber.
pub fn normalize_basis_for_scroll(
    basis: &CanonicalBasis,
    gluing: &GluingData,
    spec: &CurveSpec,
) -> Result<CanonicalBasis, CurveError> {
    let field = spec.field;
    let (g, k) = (spec.genus, spec.gonality);
    let top = 2 * g - 2;
    let s_matrix = coefficient_matrix(&basis.sections);
    // rows of `ann` are the linear functionals vanishing on W
    let ann_rows = s_matrix.kernel_basis(field);
    let ann = Matrix::from_rows(ann_rows, top + 1);

    let mut levels: Vec<Vec<BinaryForm>> = Vec::new();
    let mut j = 0;
    while j * k <= top {
        let space = residual_space(&ann, &gluing.f.pow(j, field), &gluing.h.pow(j, field), top, field);
        if space.is_empty() {
            break;
        }
        levels.push(space);
        j += 1;
    }
    let dims: Vec<usize> = levels.iter().map(Vec::len).collect();
    let expected_v1 = g - k + 1;
    let found_v1 = dims.get(1).copied().unwrap_or(0);
    if dims[0] != g || found_v1 != expected_v1 {
        return Err(CurveError::FiltrationMismatch {
            level: 1,
            found: found_v1,
            expected: expected_v1,
        });
    }

    let mut blocks: Vec<(usize, BinaryForm)> = Vec::new();
    for j in (0..levels.len()).rev() {
        let deg = top - j * k;
        let mut span = EchelonSpace::new(field, deg + 1);
        if let Some(above) = levels.get(j + 1) {
            for b in above {
                span.insert(b.mul(&gluing.f, field).coeffs());
                span.insert(b.mul(&gluing.h, field).coeffs());
            }
        }
        for b in &levels[j] {
            if span.insert(b.coeffs()) {
                blocks.push((j, b.clone()));
            }
        }
        let expected: usize = blocks.iter().map(|(e, _)| e - j + 1).sum();
        if span.rank() != dims[j] || expected != dims[j] {
            return Err(CurveError::FiltrationMismatch {
                level: j,
                found: dims[j],
                expected,
            });
        }
    }

    let s_cols = s_matrix.transpose();
    let mut sections = Vec::with_capacity(g);
    let mut rows = Vec::with_capacity(g);
    for (e, gen) in &blocks {
        for m in 0..=*e {
            let x = gluing
                .f
                .pow(e - m, field)
                .mul(&gluing.h.pow(m, field), field)
                .mul(gen, field);
            let coords = s_cols.solve(x.coeffs(), field).ok_or_else(|| {
                CurveError::Verification("scroll coordinate outside the canonical series".into())
            })?;
            rows.push(coords);
            sections.push(x);
        }
    }
    let transform = Matrix::from_rows(rows, g);
    let rank = transform.rank(field);
    if rank != g {
        return Err(CurveError::RankDeficient { rank, genus: g });
    }
    Ok(CanonicalBasis {
        q_forms: basis.q_forms.clone(),
        sections: basis.sections.clone(),
        normalized: Some(ScrollAdaptedBasis {
            sections,
            transform,
            block_sizes: blocks.iter().map(|(e, _)| *e).collect(),
            block_generators: blocks.into_iter().map(|(_, g)| g).collect(),
            filtration_dims: dims,
        }),
    })
}

/// The canonical ideal with its generators split by degree.
#[derive(Debug, Clone)]
pub struct CanonicalIdeal {
    pub ring: Ring,
    pub quadrics: Vec<MultiPoly>,
    pub cubics: Vec<MultiPoly>,
    pub ideal: IdealGB,
    pub hilbert: HilbertData,
}

pub fn canonical_ring(g: usize, field: PrimeField) -> Ring {
    GradedRing::standard(field, indexed_names("t", g), MonomialOrder::GRevLex)
}

pub fn parameter_ring(field: PrimeField) -> Ring {
    GradedRing::standard(field, vec!["s".into(), "t".into()], MonomialOrder::GRevLex)
}

fn evaluate_monomial(m: &Monomial, coords: &[BinaryForm], field: PrimeField) -> BinaryForm {
    let mut acc = BinaryForm::one();
    for (i, &e) in m.exponents().iter().enumerate() {
        for _ in 0..e {
            acc = acc.mul(&coords[i], field);
        }
    }
    acc
}

/// Kernel of `T_d -> S_{d(2g-2)}` as coefficient vectors over `monomial_basis(T, d)`.
fn evaluation_kernel(ring: &Ring, coords: &[BinaryForm], d: i64, field: PrimeField) -> (Vec<Monomial>, Vec<Vec<FieldElement>>) {
    let mons = monomial_basis(ring, (d, 0));
    let images: Vec<Vec<FieldElement>> = mons
        .iter()
        .map(|m| evaluate_monomial(m, coords, field).coeffs().to_vec())
        .collect();
    let rows = images[0].len();
    let mut mat = Matrix::zeros(rows, mons.len());
    for (c, img) in images.iter().enumerate() {
        for (r, &x) in img.iter().enumerate() {
            mat.set(r, c, x);
        }
    }
    (mons.clone(), mat.kernel_basis(field))
}

fn vector_to_poly(ring: &Ring, mons: &[Monomial], v: &[FieldElement]) -> MultiPoly {
    let terms = mons
        .iter()
        .zip(v)
        .filter(|(_, &c)| c != 0)
        .map(|(m, &c)| (m.clone(), c))
        .collect();
    MultiPoly::from_terms(ring, terms)
}

fn ideal_error(e: crate::error::PolyError) -> CurveError {
    CurveError::Verification(format!("{e}"))
}

/// Ideal of the image of `P^1` under the canonical coordinates: the quadrics
/// of the evaluation kernel, plus the cubics not in `T_1 * quadrics` when the
/// quadrics alone fail the Hilbert gate.
pub fn canonical_ideal(basis: &CanonicalBasis, spec: &CurveSpec) -> Result<CanonicalIdeal, CurveError> {
    let field = spec.field;
    let g = spec.genus;
    let coords = basis.coordinates();
    let ring = canonical_ring(g, field);
    let expected = HilbertData {
        projective_dimension: 1,
        degree: 2 * g as i64 - 2,
        arithmetic_genus: g as i64,
    };

    let (mons2, ker2) = evaluation_kernel(&ring, coords, 2, field);
    let quadrics: Vec<MultiPoly> = ker2.iter().map(|v| vector_to_poly(&ring, &mons2, v)).collect();
    let ideal = IdealGB::new(&ring, quadrics.clone()).map_err(ideal_error)?;
    let hilbert = ideal.hilbert_data().map_err(ideal_error)?;
    if hilbert == expected {
        return Ok(CanonicalIdeal {
            ring,
            quadrics,
            cubics: Vec::new(),
            ideal,
            hilbert,
        });
    }

    let (mons3, ker3) = evaluation_kernel(&ring, coords, 3, field);
    let index: BTreeMap<Monomial, usize> = mons3.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut span = EchelonSpace::new(field, mons3.len());
    for q in &quadrics {
        for i in 0..g {
            let mut v = vec![0; mons3.len()];
            for (m, c) in q.terms() {
                v[index[&m.mul(&Monomial::var(g, i))]] = *c;
            }
            span.insert(&v);
        }
    }
    let cubics: Vec<MultiPoly> = ker3
        .iter()
        .filter(|v| span.insert(v))
        .map(|v| vector_to_poly(&ring, &mons3, v))
        .collect();
    let gens: Vec<MultiPoly> = quadrics.iter().chain(&cubics).cloned().collect();
    let ideal = IdealGB::new(&ring, gens).map_err(ideal_error)?;
    let hilbert = ideal.hilbert_data().map_err(ideal_error)?;
    if hilbert != expected {
        return Err(CurveError::Verification(format!(
            "Hilbert data (dim {}, degree {}, genus {}) instead of (1, {}, {g})",
            hilbert.projective_dimension,
            hilbert.degree,
            hilbert.arithmetic_genus,
            2 * g - 2
        )));
    }
    Ok(CanonicalIdeal {
        ring,
        quadrics,
        cubics,
        ideal,
        hilbert,
    })
}

#[derive(Debug, Clone)]
pub struct CurveModel {
    pub spec: CurveSpec,
    pub gluing: GluingData,
    pub basis: CanonicalBasis,
    pub canonical: CanonicalIdeal,
}

impl CurveModel {
    pub fn adapted(&self) -> &ScrollAdaptedBasis {
        self.basis.normalized.as_ref().expect("models are built with a normalized basis")
    }

    pub fn hilbert(&self) -> HilbertData {
        self.canonical.hilbert
    }

    /// `t_j -> X_j(s, t)` for the normalized coordinates `X_j`.
    pub fn parametrization(&self) -> RingMap {
        let s = parameter_ring(self.spec.field);
        let images = self.basis.coordinates().iter().map(|x| x.to_poly(&s)).collect();
        RingMap::new(&self.canonical.ring, &s, images).expect("arity matches by construction")
    }
}

/// One construction attempt drawing from `rng`.
pub fn construct_curve(spec: &CurveSpec, rng: &mut FieldRng) -> Result<CurveModel, CurveError> {
    let gluing = build_gluing_data(spec, rng)?;
    gluing.verify(spec.field)?;
    let raw = canonical_sections(&gluing, spec.field)?;
    let basis = normalize_basis_for_scroll(&raw, &gluing, spec)?;
    let canonical = canonical_ideal(&basis, spec)?;
    Ok(CurveModel {
        spec: *spec,
        gluing,
        basis,
        canonical,
    })
}

/// Repeats [`construct_curve`] on one random stream seeded by `spec.seed`;
/// returns the model and the number of failed attempts before it.
pub fn construct_with_retries(spec: &CurveSpec, attempts: usize) -> Result<(CurveModel, usize), CurveError> {
    let mut rng = FieldRng::from_seed(spec.seed);
    let mut last = CurveError::RetryExhausted { attempts: 0 };
    for n in 0..attempts {
        match construct_curve(spec, &mut rng) {
            Ok(model) => return Ok((model, n)),
            Err(e @ CurveError::InvalidSpec(_)) => return Err(e),
            Err(e) => last = e,
        }
    }
    match last {
        CurveError::RetryExhausted { .. } => Err(CurveError::RetryExhausted { attempts }),
        other => Err(other),
    }
}
