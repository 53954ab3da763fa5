//! Per-weight normal forms in `U_q(n-)`.
//!
//! The quotient of the free algebra by the Serre ideal is realized weight by
//! weight as the image of the skew derivations
//! `A_k(f_i x) = δ_ik q^{-(α_k, wt x)} x + f_i A_k(x)`: a homogeneous element
//! of nonzero weight lies in the ideal iff every `A_k` sends it into the
//! ideal. A basis of standard words is chosen greedily in increasing word
//! order among `{f_i b : b standard}`; left multiplications and derivations
//! are stored as matrices.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use crate::error::{AlgebraError, Result};
use crate::linalg::{IncrementalBasis, Insert, Mat};
use crate::rootsys::{height, is_nonneg, kostant_table, offset_add, offset_sub, offset_to_eps, pairing, unit, Offset, SIMPLE};
use crate::scalars::{QField, Scalar};

use super::{ideal_generators, AlgElem, Word};

/// Data of one weight space of `U_q(n-)`.
#[derive(Debug)]
pub struct WeightData<S> {
    pub offset: Offset,
    /// Standard words, increasing.
    pub basis: Vec<Word>,
    index: HashMap<Word, usize>,
    /// `left[i]`: multiplication by `f_{i+1}` from `offset - α_{i+1}`.
    left: [Option<Mat<S>>; 3],
    /// `deriv[k]`: the derivation `A_{k+1}` into `offset - α_{k+1}`.
    deriv: [Option<Mat<S>>; 3],
}

impl<S> WeightData<S> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }
}

/// Echelon basis of the Serre ideal in one weight of the free algebra:
/// one element `w - NF(w)` for every nonstandard word `w`, whose largest
/// word is `w`.
#[derive(Clone, Debug)]
pub struct SerreIdealBasis<S> {
    pub offset: Offset,
    pub elements: Vec<AlgElem<S>>,
}

/// `U_q(n-)` truncated at a height bound, with a per-weight cache.
pub struct SerreQuotient<S> {
    field: QField<S>,
    bound: i32,
    kostant: BTreeMap<Offset, u64>,
    cache: RwLock<BTreeMap<Offset, Arc<WeightData<S>>>>,
}

impl<S: Scalar> SerreQuotient<S> {
    pub fn new(field: QField<S>, bound: i32) -> Self {
        SerreQuotient {
            field,
            bound,
            kostant: kostant_table(bound.max(0)),
            cache: RwLock::new(BTreeMap::new()),
        }
    }

    pub fn field(&self) -> &QField<S> {
        &self.field
    }

    pub fn bound(&self) -> i32 {
        self.bound
    }

    fn check_bound(&self, o: Offset) -> Result<()> {
        let h = height(o);
        if h > self.bound {
            return Err(AlgebraError::DegreeBound { offset: o, height: h, bound: self.bound });
        }
        Ok(())
    }

    /// Weight data at `o`; `None` when `o` has a negative coordinate.
    pub fn weight(&self, o: Offset) -> Result<Option<Arc<WeightData<S>>>> {
        if !is_nonneg(o) {
            return Ok(None);
        }
        self.check_bound(o)?;
        if let Some(w) = self.cache.read().unwrap().get(&o) {
            return Ok(Some(w.clone()));
        }
        let built = Arc::new(self.build(o)?);
        let mut c = self.cache.write().unwrap();
        Ok(Some(c.entry(o).or_insert(built).clone()))
    }

    fn weight_req(&self, o: Offset) -> Result<Arc<WeightData<S>>> {
        Ok(self.weight(o)?.expect("nonnegative offset"))
    }

    pub fn dim(&self, o: Offset) -> Result<usize> {
        Ok(self.weight(o)?.map_or(0, |w| w.dim()))
    }

    pub fn basis(&self, o: Offset) -> Result<Vec<Word>> {
        Ok(self.weight(o)?.map_or_else(Vec::new, |w| w.basis.clone()))
    }

    /// Matrix of `f_{i+1}·` from `o - α_{i+1}` to `o`.
    pub fn left_mul(&self, i: usize, o: Offset) -> Result<Option<Mat<S>>> {
        Ok(self.weight(o)?.and_then(|w| w.left[i].clone()))
    }

    /// Matrix of the derivation `A_{k+1}` from `o` to `o - α_{k+1}`.
    pub fn derivation(&self, k: usize, o: Offset) -> Result<Option<Mat<S>>> {
        Ok(self.weight(o)?.and_then(|w| w.deriv[k].clone()))
    }

    fn build(&self, o: Offset) -> Result<WeightData<S>> {
        if o == [0, 0, 0] {
            let basis = vec![Word::empty()];
            let index = basis.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
            return Ok(WeightData { offset: o, basis, index, left: [None, None, None], deriv: [None, None, None] });
        }
        let lower: Vec<Option<Arc<WeightData<S>>>> =
            (0..3).map(|i| self.weight(offset_sub(o, unit(i)))).collect::<Result<_>>()?;

        // layout of the derivation vector ⊕_k U_{o-α_k}
        let mut block_start = [0usize; 3];
        let mut total = 0;
        for k in 0..3 {
            block_start[k] = total;
            total += lower[k].as_ref().map_or(0, |w| w.dim());
        }

        let mut cands: Vec<(Word, usize, usize)> = Vec::new();
        for (i, lw) in lower.iter().enumerate() {
            if let Some(lw) = lw {
                for (bi, b) in lw.basis.iter().enumerate() {
                    cands.push((Word::letter(i as u8 + 1).concat(b), i, bi));
                }
            }
        }
        cands.sort();

        let mut derivs: Vec<Vec<S>> = Vec::with_capacity(cands.len());
        for (_, i, bi) in &cands {
            let (i, bi) = (*i, *bi);
            let mut v = vec![S::zero(); total];
            let nu_b = offset_to_eps(offset_sub(o, unit(i)));
            v[block_start[i] + bi] = self.field.q_pow(-pairing(SIMPLE[i], nu_b) as i64);
            let lw = lower[i].as_ref().unwrap();
            for k in 0..3 {
                let Some(target) = lower[k].as_ref() else { continue };
                let Some(dk) = lw.deriv[k].as_ref() else { continue };
                let Some(li) = target.left[i].as_ref() else { continue };
                let col = dk.col(bi);
                let img = li.mul_vec(&col);
                for (r, x) in img.into_iter().enumerate() {
                    if !x.is_zero() {
                        v[block_start[k] + r] += &x;
                    }
                }
            }
            derivs.push(v);
        }

        let mut inc = IncrementalBasis::new(total);
        let mut accepted: Vec<usize> = Vec::new();
        let mut expr: Vec<std::result::Result<usize, Vec<S>>> = Vec::with_capacity(cands.len());
        for (ci, v) in derivs.iter().enumerate() {
            match inc.insert(v) {
                Insert::New(m) => {
                    accepted.push(ci);
                    expr.push(Ok(m));
                }
                Insert::Dependent(c) => expr.push(Err(c)),
            }
        }
        let d = accepted.len();
        let expected = self.kostant.get(&o).copied().unwrap_or(0);
        if d as u64 != expected {
            return Err(AlgebraError::DimensionMismatch { offset: o, found: d, expected });
        }

        let basis: Vec<Word> = accepted.iter().map(|&ci| cands[ci].0.clone()).collect();
        let index = basis.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();

        let mut left: [Option<Mat<S>>; 3] = [None, None, None];
        for i in 0..3 {
            if let Some(lw) = &lower[i] {
                left[i] = Some(Mat::zeros(d, lw.dim()));
            }
        }
        for (ci, (_, i, bi)) in cands.iter().enumerate() {
            let m = left[*i].as_mut().unwrap();
            match &expr[ci] {
                Ok(j) => m.set(*j, *bi, S::one()),
                Err(c) => {
                    for (j, x) in c.iter().enumerate() {
                        if !x.is_zero() {
                            m.set(j, *bi, x.clone());
                        }
                    }
                }
            }
        }
        let mut deriv: [Option<Mat<S>>; 3] = [None, None, None];
        for k in 0..3 {
            if let Some(lw) = &lower[k] {
                let mut m = Mat::zeros(lw.dim(), d);
                for (j, &ci) in accepted.iter().enumerate() {
                    for r in 0..lw.dim() {
                        let x = &derivs[ci][block_start[k] + r];
                        if !x.is_zero() {
                            m.set(r, j, x.clone());
                        }
                    }
                }
                deriv[k] = Some(m);
            }
        }
        Ok(WeightData { offset: o, basis, index, left, deriv })
    }

    /// Coordinates of a homogeneous element of offset `o` in the standard basis.
    pub fn coords_at(&self, x: &AlgElem<S>, o: Offset) -> Result<Vec<S>> {
        let wd = self.weight_req(o)?;
        if o == [0, 0, 0] {
            return Ok(vec![x.coeff(&Word::empty())]);
        }
        let mut out = vec![S::zero(); wd.dim()];
        for i in 0..3 {
            let tail = AlgElem::from_terms(
                x.terms()
                    .iter()
                    .filter(|(w, _)| w.0.first() == Some(&(i as u8 + 1)))
                    .map(|(w, c)| (Word(w.0[1..].to_vec()), c.clone())),
            );
            if tail.is_zero() {
                continue;
            }
            let sub = offset_sub(o, unit(i));
            let tc = self.coords_at(&tail, sub)?;
            let img = wd.left[i].as_ref().unwrap().mul_vec(&tc);
            for (a, b) in out.iter_mut().zip(img) {
                *a += &b;
            }
        }
        Ok(out)
    }

    /// Offset and coordinates of a homogeneous nonzero element.
    pub fn coords(&self, x: &AlgElem<S>) -> Result<(Offset, Vec<S>)> {
        let o = x.offset().ok_or(AlgebraError::NotHomogeneous)?;
        Ok((o, self.coords_at(x, o)?))
    }

    pub fn from_coords(&self, o: Offset, v: &[S]) -> Result<AlgElem<S>> {
        let wd = self.weight_req(o)?;
        Ok(AlgElem::from_terms(wd.basis.iter().cloned().zip(v.iter().cloned())))
    }

    /// The unique representative in the span of standard words.
    pub fn normal_form(&self, x: &AlgElem<S>) -> Result<AlgElem<S>> {
        let mut parts: BTreeMap<Offset, AlgElem<S>> = BTreeMap::new();
        for (w, c) in x.terms() {
            parts.entry(w.offset()).or_insert_with(AlgElem::zero).add_term(w.clone(), c.clone());
        }
        let mut out = AlgElem::zero();
        for (o, part) in parts {
            let v = self.coords_at(&part, o)?;
            out = out.add(&self.from_coords(o, &v)?);
        }
        Ok(out)
    }

    pub fn is_zero_mod_serre(&self, x: &AlgElem<S>) -> Result<bool> {
        Ok(self.normal_form(x)?.is_zero())
    }

    pub fn ideal_basis(&self, o: Offset) -> Result<SerreIdealBasis<S>> {
        let wd = self.weight_req(o)?;
        let mut elements = Vec::new();
        for w in Word::all_of_offset(o) {
            if wd.index_of(&w).is_some() {
                continue;
            }
            let e = AlgElem::word(w.clone(), S::one());
            elements.push(e.sub(&self.normal_form(&e)?));
        }
        Ok(SerreIdealBasis { offset: o, elements })
    }

    /// Literal spanning set `{u·r·v}` of the ideal at `o`, for cross-checking.
    pub fn literal_ideal_span(&self, o: Offset) -> Result<Vec<AlgElem<S>>> {
        self.check_bound(o)?;
        let mut out = Vec::new();
        for r in ideal_generators(&self.field) {
            let g = r.offset().unwrap();
            let rest = offset_sub(o, g);
            if !is_nonneg(rest) {
                continue;
            }
            for a0 in 0..=rest[0] {
                for a1 in 0..=rest[1] {
                    for a2 in 0..=rest[2] {
                        let a = [a0, a1, a2];
                        let us = Word::all_of_offset(a);
                        let vs = Word::all_of_offset(offset_sub(rest, a));
                        for u in &us {
                            let ur = AlgElem::word(u.clone(), S::one()).mul(&r);
                            for v in &vs {
                                out.push(ur.mul(&AlgElem::word(v.clone(), S::one())));
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Whether `x` lies in the left ideal of `U_q(n-)` generated by `gens`.
    pub fn in_left_ideal(&self, x: &AlgElem<S>, gens: &[AlgElem<S>]) -> Result<bool> {
        let nf = self.normal_form(x)?;
        if nf.is_zero() {
            return Ok(true);
        }
        let o = nf.offset().ok_or(AlgebraError::NotHomogeneous)?;
        let target = self.coords_at(&nf, o)?;
        let mut span = IncrementalBasis::new(target.len());
        for g in gens {
            let gn = self.normal_form(g)?;
            if gn.is_zero() {
                continue;
            }
            let go = gn.offset().ok_or(AlgebraError::NotHomogeneous)?;
            let rest = offset_sub(o, go);
            let Some(rw) = self.weight(rest)? else { continue };
            for b in &rw.basis {
                let prod = AlgElem::word(b.clone(), S::one()).mul(&gn);
                let v = self.coords_at(&prod, o)?;
                let _ = span.insert(&v);
            }
        }
        Ok(span.contains(&target))
    }

    /// Applies the derivation `A_{k+1}` to a homogeneous element, returning
    /// its coordinates at `o - α_{k+1}`.
    pub fn apply_derivation(&self, k: usize, x: &AlgElem<S>) -> Result<Option<(Offset, Vec<S>)>> {
        let (o, v) = self.coords(x)?;
        Ok(self.derivation(k, o)?.map(|m| (offset_sub(o, unit(k)), m.mul_vec(&v))))
    }

    /// Derivation `A_{k+1}` evaluated in the free algebra (no reduction).
    pub fn free_derivation(&self, k: usize, x: &AlgElem<S>) -> AlgElem<S> {
        let mut out = AlgElem::zero();
        let letter = k as u8 + 1;
        for (w, c) in x.terms() {
            for m in 0..w.len() {
                if w.0[m] != letter {
                    continue;
                }
                let suffix = Word(w.0[m + 1..].to_vec());
                let beta = offset_to_eps(suffix.offset());
                let coef = c.clone() * &self.field.q_pow(-pairing(SIMPLE[k], beta) as i64);
                let mut nw = w.0.clone();
                nw.remove(m);
                out.add_term(Word(nw), coef);
            }
        }
        out
    }

    /// Number of stored weights.
    pub fn cached_weights(&self) -> usize {
        self.cache.read().unwrap().len()
    }

    /// Builds every weight up to the given height.
    pub fn warm(&self, max_height: i32) -> Result<()> {
        for h in 0..=max_height.min(self.bound) {
            for o in crate::rootsys::offsets_of_height(h) {
                self.weight(o)?;
            }
        }
        Ok(())
    }

    /// Offsets of `o + α` for convenience in callers.
    pub fn shifted(o: Offset, i: usize) -> Offset {
        offset_add(o, unit(i))
    }
}
