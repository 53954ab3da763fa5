//! Construction of Verma quotients and irreducible modules.

use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

use crate::error::{AlgebraError, Result};
use crate::linalg::{rref, IncrementalBasis, Insert, Mat};
use crate::rootsys::{height, is_nonneg, offset_sub, scale, unit, Offset, Weight, DELTA_OFFSET, KAPPA_FUNDAMENTAL};
use crate::scalars::{QField, Scalar};
use crate::uqneg::{composite, Composite, SerreQuotient, Word};

use super::{ModuleTruncation, ModuleVector, Presentation, Realization, Space, SubData};

impl<S: Scalar> ModuleTruncation<S> {
    fn presentation(&self) -> Option<&Presentation<S>> {
        match &self.real {
            Realization::Presented(p) => Some(p),
            Realization::Irreducible => None,
        }
    }

    /// Matrix of `e_{i+1}` on the Verma module from `o` to `o - α_{i+1}`,
    /// in standard-word coordinates. Uses `e_i f_j b = f_j e_i b + δ_ij [K_i] b`.
    pub(crate) fn verma_e(&self, p: &Presentation<S>, i: usize, o: Offset) -> Result<Arc<Mat<S>>> {
        if let Some(m) = p.verma_e.read().unwrap().get(&(i, o)) {
            return Ok(m.clone());
        }
        let basis = p.alg.basis(o)?;
        let target = offset_sub(o, unit(i));
        let tdim = p.alg.dim(target)?;
        let mut cols = Vec::with_capacity(basis.len());
        for w in &basis {
            let mut col = vec![S::zero(); tdim];
            if tdim > 0 {
                let j = w.0[0] as usize - 1;
                let rest = Word(w.0[1..].to_vec());
                let lower = offset_sub(o, unit(j));
                let inner_target = offset_sub(target, unit(j));
                if is_nonneg(inner_target) && p.alg.dim(inner_target)? > 0 {
                    let idx = p.alg.weight(lower)?.unwrap().index_of(&rest).expect("standard suffix");
                    let inner = self.verma_e(p, i, lower)?;
                    let v = inner.col(idx);
                    let lm = p.alg.left_mul(j, target)?.expect("left multiplication");
                    col = lm.mul_vec(&v);
                }
                if i == j {
                    let idx = p.alg.weight(lower)?.unwrap().index_of(&rest).expect("standard suffix");
                    col[idx] += &self.cartan_bracket(i, lower);
                }
            }
            cols.push(col);
        }
        let m = Arc::new(Mat::from_cols(tdim, &cols));
        p.verma_e.write().unwrap().insert((i, o), m.clone());
        Ok(m)
    }

    pub(crate) fn sub_data(&self, p: &Presentation<S>, o: Offset) -> Result<Arc<SubData<S>>> {
        if let Some(s) = p.sub.read().unwrap().get(&o) {
            return Ok(s.clone());
        }
        let vdim = p.alg.dim(o)?;
        let mut gens: Vec<Vec<S>> = p.relations.iter().filter(|(ro, _)| *ro == o).map(|(_, v)| v.clone()).collect();
        for j in 0..3 {
            let lower = offset_sub(o, unit(j));
            if !is_nonneg(lower) {
                continue;
            }
            let ls = self.sub_data(p, lower)?;
            if ls.rows.is_empty() {
                continue;
            }
            let lm = p.alg.left_mul(j, o)?.expect("left multiplication");
            for (_, r) in &ls.rows {
                gens.push(lm.mul_vec(r));
            }
        }
        // Echelon form with pivots at the largest words: reduce with the
        // column order reversed.
        let mut rows = Vec::new();
        if !gens.is_empty() {
            let rev: Vec<Vec<S>> = gens.iter().map(|g| g.iter().rev().cloned().collect()).collect();
            let r = rref(&Mat::from_rows(vdim, &rev));
            for (k, &pc) in r.pivots.iter().enumerate() {
                let row: Vec<S> = r.m.row(k).into_iter().rev().collect();
                rows.push((vdim - 1 - pc, row));
            }
        }
        let pivots: Vec<usize> = rows.iter().map(|(p, _)| *p).collect();
        let basis = (0..vdim).filter(|c| !pivots.contains(c)).collect();
        let s = Arc::new(SubData { rows, basis });
        p.sub.write().unwrap().insert(o, s.clone());
        Ok(s)
    }

    pub(crate) fn build_presented(&self, p: &Presentation<S>, o: Offset) -> Result<Space<S>> {
        let sd = self.sub_data(p, o)?;
        let words = p.alg.basis(o)?;
        let labels: Vec<Word> = sd.basis.iter().map(|&i| words[i].clone()).collect();
        let mut origin = Vec::with_capacity(labels.len());
        for w in labels.iter().filter(|w| !w.is_empty()) {
            let j = w.0[0] as usize - 1;
            let lower = offset_sub(o, unit(j));
            let rest = Word(w.0[1..].to_vec());
            let idx = p.alg.weight(lower)?.unwrap().index_of(&rest).expect("standard suffix");
            let mut v = vec![S::zero(); p.alg.dim(lower)?];
            v[idx] = S::one();
            origin.push((j, self.sub_data(p, lower)?.project(&v)));
        }
        let mut f: [Option<Mat<S>>; 3] = [None, None, None];
        let mut e: [Option<Mat<S>>; 3] = [None, None, None];
        for j in 0..3 {
            let lower = offset_sub(o, unit(j));
            if !is_nonneg(lower) {
                continue;
            }
            let ls = self.sub_data(p, lower)?;
            let lm = p.alg.left_mul(j, o)?.expect("left multiplication");
            let cols: Vec<Vec<S>> = ls.basis.iter().map(|&u| sd.project(&lm.col(u))).collect();
            f[j] = Some(Mat::from_cols(labels.len(), &cols));
            let ve = self.verma_e(p, j, o)?;
            let cols: Vec<Vec<S>> = sd.basis.iter().map(|&b| ls.project(&ve.col(b))).collect();
            e[j] = Some(Mat::from_cols(ls.basis.len(), &cols));
        }
        Ok(Space { offset: o, labels, origin, f, e })
    }

    pub(crate) fn build_irreducible_space(&self, o: Offset) -> Result<Space<S>> {
        if o == [0, 0, 0] {
            return Ok(Space { offset: o, labels: vec![Word::empty()], origin: vec![], f: [None, None, None], e: [None, None, None] });
        }
        let lower: Vec<Option<Arc<Space<S>>>> = (0..3).map(|j| self.space(offset_sub(o, unit(j)))).collect::<Result<_>>()?;
        let block_dims: Vec<usize> = lower.iter().map(|s| s.as_ref().map_or(0, |s| s.dim())).collect();
        let total: usize = block_dims.iter().sum();
        let mut basis = IncrementalBasis::new(total);
        let mut chosen: Vec<(usize, usize, Vec<S>)> = Vec::new();
        let mut f_cols: [Vec<Vec<S>>; 3] = [vec![], vec![], vec![]];
        let mut pending: Vec<(usize, Vec<S>)> = Vec::new();
        for j in 0..3 {
            let Some(lj) = &lower[j] else { continue };
            for u in 0..lj.dim() {
                // e-image of f_j·u, blockwise over i.
                let mut img = Vec::with_capacity(total);
                for i in 0..3 {
                    let Some(li) = &lower[i] else { continue };
                    let mut block = vec![S::zero(); li.dim()];
                    if let (Some(eu), Some(fm)) = (&lj.e[i], &li.f[j]) {
                        block = fm.mul_vec(&eu.col(u));
                    }
                    if i == j {
                        block[u] += &self.cartan_bracket(i, offset_sub(o, unit(j)));
                    }
                    img.extend(block);
                }
                match basis.insert(&img) {
                    Insert::New(_) => chosen.push((j, u, img.clone())),
                    Insert::Dependent(_) => {}
                }
                pending.push((j, img));
            }
        }
        let dim = chosen.len();
        for (j, img) in &pending {
            let c = basis.express(img).expect("member of span");
            f_cols[*j].push(c);
        }
        let mut f: [Option<Mat<S>>; 3] = [None, None, None];
        let mut e: [Option<Mat<S>>; 3] = [None, None, None];
        let mut start = 0;
        for i in 0..3 {
            let Some(li) = &lower[i] else { continue };
            f[i] = Some(Mat::from_cols(dim, &f_cols[i]));
            let cols: Vec<Vec<S>> = chosen.iter().map(|(_, _, img)| img[start..start + li.dim()].to_vec()).collect();
            e[i] = Some(Mat::from_cols(li.dim(), &cols));
            start += li.dim();
        }
        let labels = chosen
            .iter()
            .map(|(j, u, _)| Word::letter(*j as u8 + 1).concat(&lower[*j].as_ref().unwrap().labels[*u]))
            .collect();
        let origin = chosen
            .iter()
            .map(|(j, u, _)| {
                let mut v = vec![S::zero(); block_dims[*j]];
                v[*u] = S::one();
                (*j, v)
            })
            .collect();
        Ok(Space { offset: o, labels, origin, f, e })
    }

    /// Verma coordinates of a basis vector of this quotient.
    pub(crate) fn lift(&self, v: &ModuleVector<S>) -> Result<Vec<S>> {
        let p = self.presentation().expect("presented module");
        let sd = self.sub_data(p, v.offset)?;
        let mut out = vec![S::zero(); p.alg.dim(v.offset)?];
        for (k, &i) in sd.basis.iter().enumerate() {
            out[i] = v.coords[k].clone();
        }
        Ok(out)
    }
}

fn presented<S: Scalar>(
    name: String,
    alg: Arc<SerreQuotient<S>>,
    hw: Weight,
    bound: i32,
    relations: Vec<(Offset, Vec<S>)>,
) -> ModuleTruncation<S> {
    let field = alg.field().clone();
    let p = Presentation { alg, relations, verma_e: RwLock::new(BTreeMap::new()), sub: RwLock::new(BTreeMap::new()) };
    ModuleTruncation::new(name, hw, bound, field, Realization::Presented(p))
}

/// The Verma module of highest weight `hw`, truncated at height `bound`.
pub fn build_verma<S: Scalar>(alg: Arc<SerreQuotient<S>>, hw: Weight, bound: i32) -> ModuleTruncation<S> {
    let bound = bound.min(alg.bound());
    presented(format!("Verma({hw})"), alg, hw, bound, Vec::new())
}

/// `base / (submodule generated by sing)`. Each vector must be annihilated
/// by all `e_i` in `base`.
pub fn quotient_by_singulars<S: Scalar>(
    base: &ModuleTruncation<S>,
    sing: &[ModuleVector<S>],
) -> Result<ModuleTruncation<S>> {
    let p = base.presentation().expect("quotients are taken of presented modules");
    let mut relations = p.relations.clone();
    for v in sing {
        for i in 0..3 {
            if !base.act_e(i, v)?.is_zero() {
                return Err(AlgebraError::NotSingular { generator: i + 1 });
            }
        }
        relations.push((v.offset, base.lift(v)?));
    }
    Ok(presented(format!("{}/<{}>", base.name, sing.len()), p.alg.clone(), base.hw(), base.bound(), relations))
}

/// The irreducible module of highest weight `hw`, truncated at `bound`.
pub fn build_irreducible<S: Scalar>(field: QField<S>, hw: Weight, bound: i32) -> ModuleTruncation<S> {
    ModuleTruncation::new(format!("L({hw})"), hw, bound, field, Realization::Irreducible)
}

/// The base module: `Verma(λ)` modulo `f1·1, f3·1, f_δ·1`.
pub fn base_module_m<S: Scalar>(alg: Arc<SerreQuotient<S>>, bound: i32) -> Result<ModuleTruncation<S>> {
    let field = alg.field().clone();
    let v = build_verma(alg, Weight::lambda_plus([0, 0, 0]), bound);
    let one = v.highest_vector();
    let gens = vec![v.act_f(0, &one)?, v.act_f(2, &one)?];
    let parabolic = quotient_by_singulars(&v, &gens)?;
    let mut m = if height(DELTA_OFFSET) <= v.bound() {
        let d = parabolic.apply_alg(&composite(Composite::Delta, &field), &one)?;
        quotient_by_singulars(&parabolic, &[d])?
    } else {
        parabolic
    };
    m.name = "M".to_string();
    Ok(m)
}

/// Outcome of the kernel solve for the δ-direction singular vector.
#[derive(Clone, Debug)]
pub struct DeltaSolve<S> {
    pub offset: Offset,
    /// Dimension of the singular space; `None` if the offset exceeds the bound.
    pub singular_dim: Option<usize>,
    pub vector: Option<ModuleVector<S>>,
}

/// `ζ = λ + i1 μ1 + i2 μ2 + i3 μ3`.
pub fn zeta(i: [u32; 3]) -> Weight {
    let mut e = [0, 0, 0];
    for s in 0..3 {
        e = crate::rootsys::add(e, scale(i[s] as i32, KAPPA_FUNDAMENTAL[s]));
    }
    Weight::lambda_plus(e)
}

/// `M̃_i`: `Verma(ζ)` modulo `f1^{i1+1}`, `f3^{i3+1}` and the singular vector
/// at offset `(i2+1)δ` solved in the partial quotient.
pub fn pseudo_parabolic<S: Scalar>(
    alg: Arc<SerreQuotient<S>>,
    i: [u32; 3],
    bound: i32,
) -> Result<(ModuleTruncation<S>, DeltaSolve<S>)> {
    let v = build_verma(alg, zeta(i), bound);
    let one = v.highest_vector();
    let mut gens = Vec::new();
    for (s, gen) in [(0usize, 0usize), (2, 2)] {
        let o = scale(i[s] as i32 + 1, unit(gen));
        if height(o) <= v.bound() {
            let mut x = one.clone();
            for _ in 0..=i[s] {
                x = v.act_f(gen, &x)?;
            }
            gens.push(x);
        }
    }
    let partial = quotient_by_singulars(&v, &gens)?;
    let o = scale(i[1] as i32 + 1, DELTA_OFFSET);
    let mut solve = DeltaSolve { offset: o, singular_dim: None, vector: None };
    let m = if height(o) <= partial.bound() {
        let sing = partial.singular_vectors(o)?;
        solve.singular_dim = Some(sing.len());
        match sing.len() {
            0 => return Err(AlgebraError::NoSingularVector(o)),
            1 => {}
            d => return Err(AlgebraError::SingularDimension { offset: o, dim: d }),
        }
        solve.vector = Some(sing[0].clone());
        quotient_by_singulars(&partial, &sing)?
    } else {
        partial
    };
    let mut m = m;
    m.name = format!("M~({},{},{})", i[0], i[1], i[2]);
    Ok((m, solve))
}
