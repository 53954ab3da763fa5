//! Highest-weight modules as weight-graded truncations.
//!
//! Two realizations share one data layout ([`Space`]): quotients of a Verma
//! module, presented through the normal forms of `U_q(n-)`, and irreducible
//! modules, built weight by weight inside the sum of the lower weight spaces
//! via `v ↦ (e_1 v, e_2 v, e_3 v)`.

pub mod ops;
mod build;
mod mixed;

use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

use crate::error::{AlgebraError, Result};
use crate::linalg::{vec_is_zero, Mat};
use crate::rootsys::{height, is_nonneg, offset_add, offset_sub, offset_to_eps, unit, Offset, Weight};
use crate::scalars::{QField, Scalar};
use crate::uqneg::{AlgElem, SerreQuotient, Word};

pub use build::{
    base_module_m, build_irreducible, build_verma, pseudo_parabolic, quotient_by_singulars, zeta, DeltaSolve,
};
pub use mixed::{lambda_bracket, test_weights, 
    char_product_formula, defining_relations, e2_action_coefficients, mixed_identity_check, mixed_keys, relation_check, y_basis,
    E2Action, MixedReport,
};
pub use ops::{Letter, Op};

/// One weight space `V[hw - offset]`.
#[derive(Clone, Debug)]
pub struct Space<S> {
    pub offset: Offset,
    /// Monomial labels (`f`-words applied to the highest vector).
    pub labels: Vec<Word>,
    /// Basis vector `b` equals `f_{j+1}·u` with `origin[b] = (j, u)`, `u`
    /// in coordinates of the space at `offset - α_{j+1}`.
    pub origin: Vec<(usize, Vec<S>)>,
    /// `f[j]`: matrix of `f_{j+1}` from `offset - α_{j+1}` to here.
    pub f: [Option<Mat<S>>; 3],
    /// `e[i]`: matrix of `e_{i+1}` from here to `offset - α_{i+1}`.
    pub e: [Option<Mat<S>>; 3],
}

impl<S> Space<S> {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }
}

/// Quotient of a Verma module, presented by reduced monomials.
pub(crate) struct Presentation<S> {
    pub alg: Arc<SerreQuotient<S>>,
    /// Generators of the submodule, in Verma coordinates.
    pub relations: Vec<(Offset, Vec<S>)>,
    pub verma_e: RwLock<BTreeMap<(usize, Offset), Arc<Mat<S>>>>,
    pub sub: RwLock<BTreeMap<Offset, Arc<SubData<S>>>>,
}

/// Echelon basis of the submodule in one Verma weight space.
pub(crate) struct SubData<S> {
    pub rows: Vec<(usize, Vec<S>)>,
    /// Indices of standard words that survive in the quotient.
    pub basis: Vec<usize>,
}

impl<S: Scalar> SubData<S> {
    pub fn project(&self, v: &[S]) -> Vec<S> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(c.clone() * r);
                }
            }
        }
        self.basis.iter().map(|&i| v[i].clone()).collect()
    }
}

pub(crate) enum Realization<S> {
    Presented(Presentation<S>),
    Irreducible,
}

/// A highest-weight module truncated at a height bound.
pub struct ModuleTruncation<S> {
    pub name: String,
    hw: Weight,
    bound: i32,
    field: QField<S>,
    pub(crate) real: Realization<S>,
    spaces: RwLock<BTreeMap<Offset, Arc<Space<S>>>>,
}

/// A weight vector of a truncation.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleVector<S> {
    pub offset: Offset,
    pub coords: Vec<S>,
}

impl<S: Scalar> ModuleVector<S> {
    pub fn is_zero(&self) -> bool {
        vec_is_zero(&self.coords)
    }

    pub fn scale(&self, c: &S) -> Self {
        ModuleVector { offset: self.offset, coords: self.coords.iter().map(|x| x.clone() * c).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.offset, o.offset, "adding vectors of different weights");
        ModuleVector { offset: self.offset, coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a.clone() + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-S::one()))
    }
}

impl<S: Scalar> ModuleTruncation<S> {
    pub(crate) fn new(name: String, hw: Weight, bound: i32, field: QField<S>, real: Realization<S>) -> Self {
        ModuleTruncation { name, hw, bound, field, real, spaces: RwLock::new(BTreeMap::new()) }
    }

    pub fn hw(&self) -> Weight {
        self.hw
    }

    pub fn bound(&self) -> i32 {
        self.bound
    }

    pub fn field(&self) -> &QField<S> {
        &self.field
    }

    pub fn is_presented(&self) -> bool {
        matches!(self.real, Realization::Presented(_))
    }

    pub(crate) fn check_bound(&self, o: Offset) -> Result<()> {
        let h = height(o);
        if h > self.bound {
            return Err(AlgebraError::DegreeBound { offset: o, height: h, bound: self.bound });
        }
        Ok(())
    }

    /// The space at `o`; `None` when `o` has a negative coordinate.
    pub fn space(&self, o: Offset) -> Result<Option<Arc<Space<S>>>> {
        if !is_nonneg(o) {
            return Ok(None);
        }
        self.check_bound(o)?;
        if let Some(s) = self.spaces.read().unwrap().get(&o) {
            return Ok(Some(s.clone()));
        }
        let built = Arc::new(match &self.real {
            Realization::Presented(p) => self.build_presented(p, o)?,
            Realization::Irreducible => self.build_irreducible_space(o)?,
        });
        let mut c = self.spaces.write().unwrap();
        Ok(Some(c.entry(o).or_insert(built).clone()))
    }

    pub fn dim(&self, o: Offset) -> Result<usize> {
        Ok(self.space(o)?.map_or(0, |s| s.dim()))
    }

    /// Weight `hw - o`.
    pub fn weight_at(&self, o: Offset) -> Weight {
        self.hw.sub_offset(o)
    }

    /// `[K_i; μ] = (q^{(α_i,μ)} - q^{-(α_i,μ)})/(q - q^-1)` at `μ = hw - o`.
    pub fn cartan_bracket(&self, i: usize, o: Offset) -> S {
        let k = self.weight_at(o).q_pairing(&self.field, crate::rootsys::SIMPLE[i]);
        self.field.bracket_of(&k, crate::scalars::QLevel::ONE)
    }

    pub fn zero_vector(&self, o: Offset) -> Result<ModuleVector<S>> {
        Ok(ModuleVector { offset: o, coords: vec![S::zero(); self.dim(o)?] })
    }

    pub fn highest_vector(&self) -> ModuleVector<S> {
        ModuleVector { offset: [0, 0, 0], coords: vec![S::one()] }
    }

    pub fn basis_vector(&self, o: Offset, k: usize) -> Result<ModuleVector<S>> {
        let mut v = self.zero_vector(o)?;
        v.coords[k] = S::one();
        Ok(v)
    }

    /// `f_{i+1}·v`.
    pub fn act_f(&self, i: usize, v: &ModuleVector<S>) -> Result<ModuleVector<S>> {
        let o = offset_add(v.offset, unit(i));
        let s = self.space(o)?.expect("nonnegative");
        let coords = match &s.f[i] {
            Some(m) if !v.coords.is_empty() => m.mul_vec(&v.coords),
            _ => vec![S::zero(); s.dim()],
        };
        Ok(ModuleVector { offset: o, coords })
    }

    /// `e_{i+1}·v`.
    pub fn act_e(&self, i: usize, v: &ModuleVector<S>) -> Result<ModuleVector<S>> {
        let o = offset_sub(v.offset, unit(i));
        let s = self.space(v.offset)?.expect("vector at a valid offset");
        let coords = match &s.e[i] {
            Some(m) => m.mul_vec(&v.coords),
            None => vec![S::zero(); self.dim(o).unwrap_or(0)],
        };
        Ok(ModuleVector { offset: o, coords })
    }

    /// `K(γ)·v = q^{(γ, wt v)} v`.
    pub fn k_value(&self, gamma: crate::rootsys::Eps, o: Offset) -> S {
        self.weight_at(o).q_pairing(&self.field, gamma)
    }

    pub fn apply(&self, op: &Op<S>, v: &ModuleVector<S>) -> Result<ModuleVector<S>> {
        let mut acc: Option<ModuleVector<S>> = None;
        for (word, c) in &op.terms {
            let mut w = v.clone();
            for l in word.iter().rev() {
                if !is_nonneg(w.offset) {
                    break;
                }
                w = match *l {
                    Letter::E(i) => self.act_e(i as usize - 1, &w)?,
                    Letter::F(i) => self.act_f(i as usize - 1, &w)?,
                    Letter::K(g) => w.scale(&self.k_value(g, w.offset)),
                };
            }
            if !is_nonneg(w.offset) {
                continue;
            }
            let w = w.scale(c);
            acc = Some(match acc {
                None => w,
                Some(a) if a.offset == w.offset => a.add(&w),
                Some(_) => return Err(AlgebraError::NotHomogeneous),
            });
        }
        match acc {
            Some(a) => Ok(a),
            None => {
                // Result offset of an empty or fully vanishing operator.
                let o = op.terms.first().map(|(w, _)| shift(v.offset, w)).unwrap_or(v.offset);
                if is_nonneg(o) {
                    self.zero_vector(o)
                } else {
                    Ok(ModuleVector { offset: o, coords: Vec::new() })
                }
            }
        }
    }

    /// `x·v` for `x ∈ U_q(n-)`.
    pub fn apply_alg(&self, x: &AlgElem<S>, v: &ModuleVector<S>) -> Result<ModuleVector<S>> {
        if v.offset == [0, 0, 0] {
            if let Realization::Presented(p) = &self.real {
                // Fast path: the Verma module is U_q(n-) itself.
                let (o, c) = p.alg.coords(x)?;
                self.check_bound(o)?;
                let s = self.sub_data(p, o)?;
                return Ok(ModuleVector { offset: o, coords: s.project(&c).into_iter().map(|y| y * &v.coords[0]).collect() });
            }
        }
        self.apply(&Op::from_alg(x), v)
    }

    /// Basis of the vectors at `o` annihilated by all `e_i`.
    pub fn singular_vectors(&self, o: Offset) -> Result<Vec<ModuleVector<S>>> {
        let s = self.space(o)?.ok_or(AlgebraError::NotHomogeneous)?;
        if s.dim() == 0 {
            return Ok(Vec::new());
        }
        let mut rows = Vec::new();
        for m in s.e.iter().flatten() {
            for r in 0..m.rows() {
                rows.push(m.row(r));
            }
        }
        let stacked = Mat::from_rows(s.dim(), &rows);
        Ok(stacked.kernel().into_iter().map(|c| ModuleVector { offset: o, coords: c }).collect())
    }

    /// Dimensions of all weight spaces up to height `n`.
    pub fn character(&self, n: i32) -> Result<BTreeMap<Offset, usize>> {
        let mut out = BTreeMap::new();
        for h in 0..=n {
            for o in crate::rootsys::offsets_of_height(h) {
                let d = self.dim(o)?;
                if d > 0 {
                    out.insert(o, d);
                }
            }
        }
        Ok(out)
    }

    /// Weight in `ε` coordinates of the space at `o` (λ-part dropped).
    pub fn eps_at(&self, o: Offset) -> crate::rootsys::Eps {
        crate::rootsys::sub(self.hw.eps, offset_to_eps(o))
    }
}

fn shift(o: Offset, word: &[Letter]) -> Offset {
    let mut o = o;
    for l in word.iter().rev() {
        match *l {
            Letter::E(i) => o = offset_sub(o, unit(i as usize - 1)),
            Letter::F(i) => o = offset_add(o, unit(i as usize - 1)),
            Letter::K(_) => {}
        }
    }
    o
}
