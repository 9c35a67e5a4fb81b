//! Linear algebra in a single bidegree of the Cox ring.
//!
//! A differential is either the parametrization `R -> S` of the curve or a
//! map of free bigraded `R`-modules. Restricted to a bidegree `(c, m)` each is
//! a matrix over `GF(p)`; kernels are computed there and minimal generators
//! are picked as complements of the `k[v,w]`-multiples coming from `c - 1`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::binary::BinaryForm;
use crate::field::{FieldElement, PrimeField};
use crate::linalg::{EchelonSpace, Matrix};
use crate::poly::{monomial_basis, Monomial, MultiPoly, Ring};

/// `R -> k[s,t]` with `phi_i -> G_i`, `v -> f`, `w -> h`.
#[derive(Debug, Clone)]
pub struct CoxParametrization {
    pub ring: Ring,
    pub fiber_images: Vec<BinaryForm>,
    pub f: BinaryForm,
    pub h: BinaryForm,
    /// Degree in `k[s,t]` of the image of bidegree `(c, m)` is `k c + offset m`.
    pub offset: i64,
}

impl CoxParametrization {
    pub fn field(&self) -> PrimeField {
        self.ring.field()
    }

    pub fn target_degree(&self, deg: (i64, i64)) -> i64 {
        self.f.degree() as i64 * deg.0 + self.offset * deg.1
    }

    pub fn image_of_monomial(&self, m: &Monomial) -> BinaryForm {
        let field = self.field();
        let d = self.fiber_images.len();
        let e = m.exponents();
        let mut acc = BinaryForm::one();
        for (i, &x) in e.iter().enumerate() {
            let base = if i < d {
                &self.fiber_images[i]
            } else if i == d {
                &self.f
            } else {
                &self.h
            };
            for _ in 0..x {
                acc = acc.mul(base, field);
            }
        }
        acc
    }

    pub fn image(&self, p: &MultiPoly, degree: usize) -> BinaryForm {
        let field = self.field();
        let mut acc = BinaryForm::zero(degree);
        for (m, c) in p.terms() {
            acc = acc.add(&self.image_of_monomial(m).scale(*c, field), field);
        }
        acc
    }
}

/// Homogeneous map of free modules; `columns[j][l]` is the entry from source
/// generator `j` to target generator `l`, of bidegree `source[j] - target[l]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap {
    pub source: Vec<(i64, i64)>,
    pub target: Vec<(i64, i64)>,
    pub columns: Vec<Vec<MultiPoly>>,
}

#[derive(Debug, Clone, Copy)]
pub enum Differential<'a> {
    Parametrization(&'a CoxParametrization),
    Module(&'a ModuleMap),
}

impl Differential<'_> {
    fn source_degrees(&self) -> Vec<(i64, i64)> {
        match self {
            Differential::Parametrization(_) => vec![(0, 0)],
            Differential::Module(m) => m.source.clone(),
        }
    }
}

/// Basis `{(j, mu)}` of a free module in one bidegree: generator `j` times a
/// monomial `mu` of the complementary degree.
#[derive(Debug, Clone)]
pub struct GradedBasis {
    pub elems: Vec<(usize, Monomial)>,
    index: BTreeMap<(usize, Monomial), usize>,
}

impl GradedBasis {
    pub fn new(ring: &Ring, gens: &[(i64, i64)], deg: (i64, i64)) -> Self {
        let mut elems = Vec::new();
        for (j, g) in gens.iter().enumerate() {
            let rest = (deg.0 - g.0, deg.1 - g.1);
            if rest == (0, 0) {
                elems.push((j, Monomial::one(ring.nvars())));
            } else {
                elems.extend(monomial_basis(ring, rest).into_iter().map(|m| (j, m)));
            }
        }
        let index = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        GradedBasis { elems, index }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn position(&self, j: usize, m: &Monomial) -> Option<usize> {
        self.index.get(&(j, m.clone())).copied()
    }

    /// Column of polynomials (one per generator) of a coordinate vector.
    pub fn to_column(&self, ring: &Ring, ngens: usize, v: &[FieldElement]) -> Vec<MultiPoly> {
        let mut terms: Vec<Vec<(Monomial, FieldElement)>> = vec![Vec::new(); ngens];
        for ((j, m), &c) in self.elems.iter().zip(v) {
            if c != 0 {
                terms[*j].push((m.clone(), c));
            }
        }
        terms.into_iter().map(|t| MultiPoly::from_terms(ring, t)).collect()
    }

    /// Coordinates of a homogeneous column; `None` if some term falls outside.
    pub fn coordinates(&self, column: &[MultiPoly]) -> Option<Vec<FieldElement>> {
        let mut v = vec![0; self.len()];
        for (j, p) in column.iter().enumerate() {
            for (m, c) in p.terms() {
                v[self.position(j, m)?] = *c;
            }
        }
        Some(v)
    }
}

/// The differential restricted to bidegree `deg`, with its source basis.
pub fn matrix_at(diff: Differential<'_>, ring: &Ring, deg: (i64, i64)) -> (GradedBasis, Matrix) {
    let field = ring.field();
    let source = GradedBasis::new(ring, &diff.source_degrees(), deg);
    match diff {
        Differential::Parametrization(param) => {
            let tdeg = param.target_degree(deg);
            let rows = if tdeg < 0 { 0 } else { tdeg as usize + 1 };
            let mut mat = Matrix::zeros(rows, source.len());
            if rows > 0 {
                for (c, (_, m)) in source.elems.iter().enumerate() {
                    for (r, &x) in param.image_of_monomial(m).coeffs().iter().enumerate() {
                        mat.set(r, c, x);
                    }
                }
            }
            (source, mat)
        }
        Differential::Module(map) => {
            let target = GradedBasis::new(ring, &map.target, deg);
            let mut mat = Matrix::zeros(target.len(), source.len());
            for (c, (j, mu)) in source.elems.iter().enumerate() {
                for (l, entry) in map.columns[*j].iter().enumerate() {
                    for (nu, x) in entry.terms() {
                        let r = target
                            .position(l, &nu.mul(mu))
                            .expect("map entries have the bidegree of the map");
                        mat.set(r, c, field.add(mat.get(r, c), *x));
                    }
                }
            }
            (source, mat)
        }
    }
}

pub fn kernel_at(diff: Differential<'_>, ring: &Ring, deg: (i64, i64)) -> (GradedBasis, Vec<Vec<FieldElement>>) {
    let (basis, mat) = matrix_at(diff, ring, deg);
    if basis.is_empty() {
        return (basis, Vec::new());
    }
    let ker = mat.kernel_basis(ring.field());
    (basis, ker)
}

pub fn rank_at(diff: Differential<'_>, ring: &Ring, deg: (i64, i64)) -> usize {
    let (basis, mat) = matrix_at(diff, ring, deg);
    if basis.is_empty() || mat.rows() == 0 {
        return 0;
    }
    mat.rank(ring.field())
}

/// Monomials of degree `h` in the first `d` variables of an `nvars`-variable ring.
fn fiber_monomials(nvars: usize, d: usize, h: usize) -> Vec<Monomial> {
    fn go(i: usize, d: usize, left: usize, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i + 1 == d {
            exps[i] = left as u16;
            out.push(Monomial::from_exponents(exps.clone()));
            exps[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            exps[i] = e as u16;
            go(i + 1, d, left - e, exps, out);
        }
        exps[i] = 0;
    }
    let mut out = Vec::new();
    go(0, d, h, &mut vec![0u16; nvars], &mut out);
    out
}

/// Upper bound on the rank, as a `k[v,w]`-module, of the kernel of `map` in
/// second degree `m`: the number of source `phi`-monomials minus the rank of
/// the map specialized at `v = 1`, `w = lambda`. Specialization can only
/// lower the rank of the map, so the bound is never too small.
pub fn kernel_rank_bound(map: &ModuleMap, ring: &Ring, m: i64, base_vars: [usize; 2]) -> usize {
    let field = ring.field();
    let nvars = ring.nvars();
    let d = base_vars[0];
    let basis = |gens: &[(i64, i64)]| -> Vec<(usize, Monomial)> {
        gens.iter()
            .enumerate()
            .filter(|(_, g)| g.1 <= m)
            .flat_map(|(j, g)| fiber_monomials(nvars, d, (m - g.1) as usize).into_iter().map(move |x| (j, x)))
            .collect()
    };
    let source = basis(&map.source);
    let target = basis(&map.target);
    if source.is_empty() {
        return 0;
    }
    let index: BTreeMap<(usize, Monomial), usize> = target.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let strip = |mu: &Monomial| -> Monomial {
        let mut e = mu.exponents().to_vec();
        e[base_vars[0]] = 0;
        e[base_vars[1]] = 0;
        Monomial::from_exponents(e)
    };
    let p = field.modulus() as u64;
    let mut best = 0;
    for lambda in [2 % p, 7919 % p, 104_729 % p] {
        let mut mat = Matrix::zeros(target.len(), source.len());
        for (col, (j, psi)) in source.iter().enumerate() {
            for (l, entry) in map.columns[*j].iter().enumerate() {
                for (mu, c) in entry.terms() {
                    let row = index[&(l, strip(mu).mul(psi))];
                    let w_exp = mu.exponents()[base_vars[1]] as u64;
                    let x = field.mul(*c, field.pow(lambda as u32, w_exp));
                    mat.set(row, col, field.add(mat.get(row, col), x));
                }
            }
        }
        best = best.max(mat.rank(field));
        if best == source.len().min(target.len()) {
            break;
        }
    }
    source.len() - best
}

/// Minimal generators of the kernel at a fixed second degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelGenerators {
    pub bidegrees: Vec<(i64, i64)>,
    pub columns: Vec<Vec<MultiPoly>>,
    /// `dim ker` at each `c` of the scanned range `c_lo..=c_hi`.
    pub kernel_dims: Vec<(i64, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowOverflow {
    /// The kernel is already nonzero just below the window.
    Below(i64),
    /// New generators appear just above the window.
    Above(i64),
}

/// Scans `c = c_lo..=c_hi` at second degree `m`, collecting kernel elements
/// not generated over `k[v,w]` by the kernel one step lower; `base_vars` are
/// the indices of `v` and `w`. Stops early once as many generators as
/// `rank_bound` are found, otherwise also checks `c_hi + 1`.
pub fn kernel_generators(
    diff: Differential<'_>,
    ring: &Ring,
    m: i64,
    c_lo: i64,
    c_hi: i64,
    base_vars: [usize; 2],
    rank_bound: Option<usize>,
) -> Result<KernelGenerators, WindowOverflow> {
    let field = ring.field();
    let nvars = ring.nvars();
    let ngens = diff.source_degrees().len();
    let (mut prev_basis, mut prev_ker) = kernel_at(diff, ring, (c_lo - 1, m));
    if !prev_ker.is_empty() {
        return Err(WindowOverflow::Below(c_lo - 1));
    }
    let mut out = KernelGenerators {
        bidegrees: Vec::new(),
        columns: Vec::new(),
        kernel_dims: Vec::new(),
    };
    for c in c_lo..=c_hi + 1 {
        let (basis, ker) = kernel_at(diff, ring, (c, m));
        let mut span = EchelonSpace::new(field, basis.len());
        for v in &prev_ker {
            for &var in &base_vars {
                let x = Monomial::var(nvars, var);
                let mut shifted = vec![0; basis.len()];
                for ((j, mu), &coef) in prev_basis.elems.iter().zip(v) {
                    if coef != 0 {
                        let pos = basis.position(*j, &mu.mul(&x)).expect("multiples stay in the module");
                        shifted[pos] = coef;
                    }
                }
                span.insert(&shifted);
            }
        }
        let mut fresh = Vec::new();
        for v in &ker {
            if span.insert(v) {
                fresh.push(v.clone());
            }
        }
        if c > c_hi {
            if !fresh.is_empty() {
                return Err(WindowOverflow::Above(c));
            }
            break;
        }
        out.kernel_dims.push((c, ker.len()));
        for v in fresh {
            out.bidegrees.push((c, m));
            out.columns.push(basis.to_column(ring, ngens, &v));
        }
        if rank_bound == Some(out.columns.len()) {
            // found generators are part of a basis of a free module whose
            // rank they already reach
            break;
        }
        prev_basis = basis;
        prev_ker = ker;
    }
    Ok(out)
}
