//! Terms and differentials of complexes built on `A ⊗ J`.
//!
//! The Koszul complex has terms `K_0 = A`, `K_1 = A ⊗ V` and, for `i >= 2`,
//! `K_i = A ⊗ J^a_{n_a(i)} ⊕ A ⊗ J^b_{n_b(i)}`. The reduced bimodule complex computing
//! Hochschild homology has the same terms with a cyclic differential. Both differentials
//! split a tensor `j ∈ J_L` into outer words and a middle tail, move the outer words onto
//! the `A` factor and read the tail in the basis of the codomain `J`.
//!
//! A layer `(i, n)` is the internal degree `n` component of `K_i`. Its basis is indexed by
//! pairs `(u, r)` of a basis word `u` of `A_{n-L}` and a canonical row `r` of `J_L`,
//! block by block.

use std::borrow::Cow;
use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{left_kernel, rank_of_rows, rref, Accumulator, Field, SparseMatrix, SparseVec, Subspace};
use crate::tensorgraded::{n_s, word_at, word_index, Branch, GradedAlgebra, Word};

/// Which summand of a complex term a block belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Slot {
    /// The single summand of `K_0` and `K_1`.
    Single,
    /// The summand built on `J^s` for the branch's degree `s`.
    Branch(Branch),
}

/// The differential to assemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DifferentialKind {
    /// `δ(α ⊗ v_1…v_L) = α v_1…v_p ⊗ v_{p+1}…v_L` with `p = s-1` for even `i` and `p = 1`
    /// for odd `i`.
    Koszul,
    /// The reduced Hochschild differential `d̄`. For odd `i` it is
    /// `ᾱ ⊗ v w v' ↦ ᾱ v ⊗ w v' - v' ᾱ ⊗ v w`; for even `i` it is the sum over
    /// `k = 0..s-1` of `(suffix of length k) · ᾱ · (prefix of length s-1-k)` tensored
    /// with the remaining middle.
    Hochschild,
}

/// One summand `A_{n-L} ⊗ J_L` of a layer.
#[derive(Debug, Clone)]
pub struct Block<'a, F: Field> {
    /// Summand label.
    pub slot: Slot,
    /// Length `L` of the `J` factor.
    pub jdeg: usize,
    /// Degree `n - L` of the `A` factor.
    pub adeg: usize,
    /// `dim A_{n-L}`.
    pub adim: usize,
    /// The space `J_L` in canonical form.
    pub j: Cow<'a, Subspace<F>>,
    /// Position of the block's first basis element.
    pub offset: usize,
}

impl<F: Field> Block<'_, F> {
    /// `dim J_L`.
    pub fn jdim(&self) -> usize {
        self.j.dim()
    }

    /// Number of basis elements of the block.
    pub fn size(&self) -> usize {
        self.adim * self.jdim()
    }
}

/// The degree `n` component of `K_i` with its basis layout.
#[derive(Debug, Clone)]
pub struct Layer<'a, F: Field> {
    /// Homological index.
    pub i: usize,
    /// Internal degree.
    pub n: usize,
    /// Nonempty blocks in slot order.
    pub blocks: Vec<Block<'a, F>>,
    /// Total dimension.
    pub dim: usize,
}

/// Summands of `K_i` as `(slot, jdeg)` pairs, before any degree is fixed.
pub fn term_slots<F: Field>(alg: &GradedAlgebra<F>, i: usize) -> Vec<(Slot, usize)> {
    match i {
        0 => vec![(Slot::Single, 0)],
        1 => vec![(Slot::Single, 1)],
        _ => Branch::BOTH
            .iter()
            .map(|&br| (Slot::Branch(br), n_s(alg.presentation().degree(br), i)))
            .collect(),
    }
}

/// Largest homological index with a nonzero term in some internal degree `<= n`.
pub fn max_index(a: usize, n: usize) -> usize {
    if n == 0 {
        0
    } else {
        2 * (n / a) + usize::from(n % a >= 1)
    }
}

impl<'a, F: Field> Layer<'a, F> {
    /// Builds the basis layout of `K_{i,n}`.
    pub fn new(alg: &'a GradedAlgebra<F>, i: usize, n: usize) -> Result<Self> {
        let f = alg.field();
        let d = alg.dim_v();
        let mut blocks = Vec::new();
        let mut offset = 0;
        for (slot, jdeg) in term_slots(alg, i) {
            if jdeg > n {
                continue;
            }
            let j: Cow<'a, Subspace<F>> = match slot {
                Slot::Single => Cow::Owned(Subspace::full(f, alg.limits().ambient(d, jdeg)?)),
                Slot::Branch(br) => Cow::Borrowed(alg.j(br, jdeg)?),
            };
            let adeg = n - jdeg;
            let adim = alg.dim(adeg)?;
            if adim == 0 || j.is_zero() {
                continue;
            }
            let block = Block { slot, jdeg, adeg, adim, j, offset };
            offset += block.size();
            blocks.push(block);
        }
        Ok(Layer { i, n, blocks, dim: offset })
    }

    /// Index of basis element `(u, r)` of a block.
    pub fn index(&self, block: usize, u: usize, r: usize) -> usize {
        let b = &self.blocks[block];
        b.offset + u * b.jdim() + r
    }

    /// Block and `(u, r)` of a basis index.
    pub fn locate(&self, idx: usize) -> (usize, usize, usize) {
        for (k, b) in self.blocks.iter().enumerate() {
            if idx < b.offset + b.size() {
                let rel = idx - b.offset;
                return (k, rel / b.jdim(), rel % b.jdim());
            }
        }
        panic!("basis index {idx} out of range {}", self.dim)
    }

    fn block_for(&self, slot: Slot) -> Option<usize> {
        self.blocks.iter().position(|b| b.slot == slot)
    }
}

/// An outer-word move of a differential: `coef · left · α · right ⊗ tail`.
#[derive(Debug, Clone)]
struct Piece<E> {
    left: Word,
    right: Word,
    coef: E,
    tail: SparseVec<E>,
}

/// Splits `j ∈ V^(len)` into `(prefix, suffix, middle)` parts and reads each middle in the
/// canonical basis of `codomain`.
fn split<F: Field>(
    field: &F,
    d: usize,
    j: &SparseVec<F::Elem>,
    len: usize,
    pre: usize,
    suf: usize,
    codomain: &Subspace<F>,
) -> Result<Vec<(Word, Word, SparseVec<F::Elem>)>> {
    let mid_len = len - pre - suf;
    let mut groups: BTreeMap<(Word, Word), Vec<(usize, F::Elem)>> = BTreeMap::new();
    for (c, x) in j.entries() {
        let w = word_at(*c, len, d);
        let key = (w[..pre].to_vec(), w[len - suf..].to_vec());
        groups.entry(key).or_default().push((word_index(&w[pre..len - suf], d), x.clone()));
    }
    let mut out = Vec::with_capacity(groups.len());
    for ((p, s), pairs) in groups {
        let mid = SparseVec::from_pairs(field, pairs);
        let coords = codomain.coordinates(field, &mid).ok_or_else(|| {
            Error::Internal(format!(
                "tail of length {mid_len} leaves the codomain J space; the J recursion is inconsistent"
            ))
        })?;
        out.push((p, s, coords));
    }
    Ok(out)
}

fn pieces<F: Field>(
    alg: &GradedAlgebra<F>,
    kind: DifferentialKind,
    i: usize,
    block: &Block<'_, F>,
    j: &SparseVec<F::Elem>,
    codomain: &Subspace<F>,
) -> Result<Vec<Piece<F::Elem>>> {
    let f = alg.field();
    let d = alg.dim_v();
    let len = block.jdeg;
    let s = match block.slot {
        Slot::Single => 2,
        Slot::Branch(br) => alg.presentation().degree(br),
    };
    let mut out = Vec::new();
    let mut push = |pre: usize, suf: usize, coef: F::Elem| -> Result<()> {
        for (p, q, tail) in split(f, d, j, len, pre, suf, codomain)? {
            out.push(Piece { left: q, right: p, coef: coef.clone(), tail });
        }
        Ok(())
    };
    match (kind, i % 2 == 0) {
        (DifferentialKind::Koszul, true) => push(s - 1, 0, f.one())?,
        (DifferentialKind::Koszul, false) => push(1, 0, f.one())?,
        (DifferentialKind::Hochschild, false) => {
            push(1, 0, f.one())?;
            push(0, 1, f.neg(&f.one()))?;
        }
        (DifferentialKind::Hochschild, true) => {
            for k in 0..s {
                push(s - 1 - k, k, f.one())?;
            }
        }
    }
    Ok(out)
}

/// The degree `n` component of a differential `K_i -> K_{i-1}`.
#[derive(Debug, Clone)]
pub struct ComplexLayer<'a, F: Field> {
    /// Domain layout.
    pub domain: Layer<'a, F>,
    /// Codomain layout.
    pub codomain: Layer<'a, F>,
    /// One row per domain basis element, in codomain coordinates.
    pub matrix: SparseMatrix<F::Elem>,
}

/// Assembles the differential `K_{i,n} -> K_{i-1,n}` for `i >= 1`.
pub fn build_layer<'a, F: Field>(
    alg: &'a GradedAlgebra<F>,
    kind: DifferentialKind,
    i: usize,
    n: usize,
) -> Result<ComplexLayer<'a, F>> {
    if i == 0 {
        return Err(Error::Domain("the differential starts at K_1".into()));
    }
    alg.limits().check_time()?;
    let f = alg.field();
    let domain = Layer::new(alg, i, n)?;
    let codomain = Layer::new(alg, i - 1, n)?;
    let mut rows: Vec<SparseVec<F::Elem>> = Vec::with_capacity(domain.dim);
    for block in &domain.blocks {
        let target_slot = if i >= 3 { block.slot } else { Slot::Single };
        let target = codomain.block_for(target_slot);
        let Some(tb) = target else {
            rows.extend(std::iter::repeat_with(SparseVec::zero).take(block.size()));
            continue;
        };
        let cod = &codomain.blocks[tb];
        let per_row: Vec<Vec<Piece<F::Elem>>> = block
            .j
            .rows()
            .iter()
            .map(|j| pieces(alg, kind, i, block, j, &cod.j))
            .collect::<Result<_>>()?;
        let mut moves: Vec<(Word, Word)> =
            per_row.iter().flatten().map(|p| (p.left.clone(), p.right.clone())).collect();
        moves.sort();
        moves.dedup();
        let move_pos: HashMap<(Word, Word), usize> =
            moves.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
        let block_rows: Vec<Vec<SparseVec<F::Elem>>> = (0..block.adim)
            .into_par_iter()
            .map(|u| -> Result<Vec<SparseVec<F::Elem>>> {
                alg.limits().check_time()?;
                let e = SparseVec::unit(f, u, f.one());
                let images: Vec<SparseVec<F::Elem>> = moves
                    .iter()
                    .map(|(l, r)| alg.sandwich(l, block.adeg, &e, r))
                    .collect::<Result<_>>()?;
                Ok(per_row
                    .iter()
                    .map(|ps| {
                        let mut acc = Accumulator::new();
                        for p in ps {
                            let img = &images[move_pos[&(p.left.clone(), p.right.clone())]];
                            for (v, x) in img.entries() {
                                let cx = f.mul(&p.coef, x);
                                for (t, y) in p.tail.entries() {
                                    acc.add_entry(f, cod.offset + v * cod.jdim() + t, &f.mul(&cx, y));
                                }
                            }
                        }
                        acc.finish(f)
                    })
                    .collect())
            })
            .collect::<Result<_>>()?;
        rows.extend(block_rows.into_iter().flatten());
    }
    let matrix = SparseMatrix::from_rows(codomain.dim, rows)?;
    Ok(ComplexLayer { domain, codomain, matrix })
}

/// `(dim K_{i,n}, rank of the differential K_{i,n} -> K_{i-1,n})`, with rank 0 for `i = 0`.
pub fn differential_rank<F: Field>(alg: &GradedAlgebra<F>, kind: DifferentialKind, i: usize, n: usize) -> Result<(usize, usize)> {
    if i == 0 {
        return Ok((Layer::new(alg, 0, n)?.dim, 0));
    }
    let layer = build_layer(alg, kind, i, n)?;
    let r = rank_of_rows(alg.field(), layer.codomain.dim, layer.matrix.rows().iter().cloned());
    Ok((layer.domain.dim, r))
}

/// Dimensions of the homology `H_{i,n}` over a rectangle, with every layer computed once.
///
/// Returns `(i, n, dim K_{i,n}, rank out, rank in, homology)` for `i <= imax`, `n` in
/// `n_range`. Layers are independent and are assembled in parallel.
pub fn homology_rectangle<F: Field>(
    alg: &GradedAlgebra<F>,
    kind: DifferentialKind,
    imax: usize,
    n_range: std::ops::RangeInclusive<usize>,
) -> Result<Vec<HomologyCell>> {
    let jobs: Vec<(usize, usize)> =
        n_range.clone().flat_map(|n| (0..=imax + 1).map(move |i| (i, n))).collect();
    let results: Vec<((usize, usize), (usize, usize))> = jobs
        .par_iter()
        .map(|&(i, n)| Ok(((i, n), differential_rank(alg, kind, i, n)?)))
        .collect::<Result<_>>()?;
    let table: HashMap<(usize, usize), (usize, usize)> = results.into_iter().collect();
    let mut out = Vec::new();
    for n in n_range {
        for i in 0..=imax {
            let (dim, rank_out) = table[&(i, n)];
            let rank_in = table[&(i + 1, n)].1;
            out.push(HomologyCell { i, n, dim, rank_out, rank_in, homology: dim - rank_out - rank_in });
        }
    }
    Ok(out)
}

/// Homology of one node of a complex in one internal degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HomologyCell {
    /// Homological index.
    pub i: usize,
    /// Internal degree.
    pub n: usize,
    /// `dim K_{i,n}`.
    pub dim: usize,
    /// Rank of the outgoing differential `K_{i,n} -> K_{i-1,n}`.
    pub rank_out: usize,
    /// Rank of the incoming differential `K_{i+1,n} -> K_{i,n}`.
    pub rank_in: usize,
    /// `dim K_{i,n} - rank_out - rank_in`.
    pub homology: usize,
}

/// First basis vector of `ker(K_{i,n} -> K_{i-1,n})` outside the image of `K_{i+1,n}`.
pub fn homology_witness<F: Field>(
    alg: &GradedAlgebra<F>,
    kind: DifferentialKind,
    i: usize,
    n: usize,
) -> Result<Option<(Layer<'_, F>, SparseVec<F::Elem>)>> {
    let f = alg.field();
    let incoming = build_layer(alg, kind, i + 1, n)?;
    let (layer, ker) = if i == 0 {
        let layer = Layer::new(alg, 0, n)?;
        let dim = layer.dim;
        (layer, Subspace::full(f, dim))
    } else {
        let out = build_layer(alg, kind, i, n)?;
        let ker = left_kernel(f, &out.matrix);
        (out.domain, ker)
    };
    let image = rref(f, &incoming.matrix);
    Ok(ker.first_outside(f, &image).map(|v| (layer, v)))
}

/// A basis element of a layer rendered as `a_word ⊗ j` with `j` expanded in words.
pub fn expand_element<F: Field>(
    alg: &GradedAlgebra<F>,
    layer: &Layer<'_, F>,
    v: &SparseVec<F::Elem>,
) -> Vec<(F::Elem, Word, Word)> {
    let f = alg.field();
    let d = alg.dim_v();
    let mut acc: BTreeMap<(Word, Word), F::Elem> = BTreeMap::new();
    for (idx, c) in v.entries() {
        let (k, u, r) = layer.locate(*idx);
        let b = &layer.blocks[k];
        let aw = alg.basis(b.adeg).expect("cached degree")[u].clone();
        for (col, x) in b.j.rows()[r].entries() {
            let key = (aw.clone(), word_at(*col, b.jdeg, d));
            let e = acc.entry(key).or_insert_with(|| f.zero());
            *e = f.add(e, &f.mul(c, x));
        }
    }
    acc.into_iter().filter(|(_, c)| !f.is_zero(c)).map(|((a, w), c)| (c, a, w)).collect()
}
