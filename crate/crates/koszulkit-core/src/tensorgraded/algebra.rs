//! Degreewise cache of an (a,b)-homogeneous algebra: bases of `A_n`, multiplication by
//! letters, ideal components `I_n` and the intersection spaces `J_n^s`.
//!
//! `A_{n+1}` is computed as `(A_n ⊗ V)` modulo the images of `V^(n+1-s) ⊗ R_s`. Under the
//! lexicographic order the pivots of this quotient are exactly the pivot words of
//! `RREF(I_{n+1})`, so the surviving words are the non-pivot words of `I_{n+1}` and the
//! stored normal forms agree with reduction modulo `I_{n+1}`.

use std::collections::HashMap;
use std::sync::OnceLock;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::exactla::{Accumulator, Echelon, Field, SparseVec, Subspace};
use crate::tensorgraded::presentation::{Branch, Presentation};
use crate::tensorgraded::word::{checked_pow, pow, word_at, word_index, Letter, Word};

/// Resource limits applied to every computation on an algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest ambient dimension `(dim V)^n` that may be materialised.
    pub max_ambient_dim: usize,
    /// Wall-clock deadline after which computations stop with a budget error.
    pub deadline: Option<Instant>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_ambient_dim: 1 << 16, deadline: None }
    }
}

impl Limits {
    /// Fails once the deadline has passed.
    pub fn check_time(&self) -> Result<()> {
        match self.deadline {
            Some(t) if Instant::now() > t => Err(Error::Budget("timeout reached".into())),
            _ => Ok(()),
        }
    }

    /// `d^n`, failing when it exceeds the ambient budget.
    pub fn ambient(&self, d: usize, n: usize) -> Result<usize> {
        match checked_pow(d, n) {
            Some(v) if v <= self.max_ambient_dim => Ok(v),
            _ => Err(Error::Budget(format!(
                "V^({n}) has dimension {d}^{n}, above the limit {}",
                self.max_ambient_dim
            ))),
        }
    }
}

#[derive(Debug)]
struct Degree<E> {
    words: Vec<Word>,
    position: HashMap<usize, usize>,
    parent: Vec<(usize, Letter)>,
    right: Vec<Vec<SparseVec<E>>>,
    left: Vec<Vec<SparseVec<E>>>,
}

type Lazy<F> = OnceLock<Result<Subspace<F>>>;

/// Memoised graded components of `A = T(V)/I(R_a ⊕ R_b)` up to a maximal degree.
///
/// Bases of `A_n` and the multiplication tables are built eagerly; `I_n` and `J_n^s` are
/// built on first use. All accessors take `&self`, so one cache can serve parallel workers.
#[derive(Debug)]
pub struct GradedAlgebra<F: Field> {
    pres: Presentation<F>,
    limits: Limits,
    max_degree: usize,
    degrees: Vec<Degree<F::Elem>>,
    ideals: Vec<Lazy<F>>,
    js: [Vec<Lazy<F>>; 2],
    perps: [Subspace<F>; 2],
}

fn slot(br: Branch) -> usize {
    match br {
        Branch::A => 0,
        Branch::B => 1,
    }
}

impl<F: Field> GradedAlgebra<F> {
    /// Builds bases and multiplication tables of `A_n` for `n <= max_degree`.
    pub fn new(pres: Presentation<F>, max_degree: usize, limits: Limits) -> Result<Self> {
        let field = pres.field().clone();
        let d = pres.dim_v();
        let perps = [pres.relations(Branch::A).perp(&field), pres.relations(Branch::B).perp(&field)];
        let mut alg = GradedAlgebra {
            pres,
            limits,
            max_degree,
            degrees: vec![Degree {
                words: vec![Vec::new()],
                position: HashMap::from([(0, 0)]),
                parent: vec![(0, 0)],
                right: Vec::new(),
                left: Vec::new(),
            }],
            ideals: (0..=max_degree).map(|_| OnceLock::new()).collect(),
            js: [(0..=max_degree).map(|_| OnceLock::new()).collect(), (0..=max_degree).map(|_| OnceLock::new()).collect()],
            perps,
        };
        for m in 0..max_degree {
            alg.limits.check_time()?;
            alg.build_next(m, d)?;
        }
        Ok(alg)
    }

    fn build_next(&mut self, m: usize, d: usize) -> Result<()> {
        let field = self.pres.field().clone();
        let cur_dim = self.degrees[m].words.len();
        let ncols = cur_dim
            .checked_mul(d)
            .ok_or_else(|| Error::Budget("A_n ⊗ V is too large".into()))?;
        let mut ech = Echelon::new(&field, ncols);
        for br in Branch::BOTH {
            let s = self.pres.degree(br);
            if m + 1 < s {
                continue;
            }
            let low = m + 1 - s;
            let rows = self.pres.relations(br).rows().to_vec();
            let mut memo: HashMap<(usize, usize), SparseVec<F::Elem>> = HashMap::new();
            for p in 0..self.degrees[low].words.len() {
                for r in &rows {
                    let mut acc = Accumulator::new();
                    for (widx, c) in r.entries() {
                        let w = word_at(*widx, s, d);
                        let prefix = word_index(&w[..s - 1], d);
                        let v = match memo.get(&(p, prefix)) {
                            Some(v) => v.clone(),
                            None => {
                                let mut v = SparseVec::unit(&field, p, field.one());
                                for (k, &l) in w[..s - 1].iter().enumerate() {
                                    v = self.right_mul(low + k, &v, l);
                                }
                                memo.insert((p, prefix), v.clone());
                                v
                            }
                        };
                        let last = w[s - 1] as usize;
                        for (u, x) in v.entries() {
                            acc.add_entry(&field, u * d + last, &field.mul(c, x));
                        }
                    }
                    ech.insert(acc.finish(&field));
                }
                if p % 256 == 0 {
                    self.limits.check_time()?;
                }
            }
        }
        let quotient = ech.into_subspace();
        let mut is_pivot = vec![usize::MAX; ncols];
        for (k, p) in quotient.pivots().iter().enumerate() {
            is_pivot[*p] = k;
        }
        let mut new_pos = vec![usize::MAX; ncols];
        let mut words = Vec::new();
        let mut parent = Vec::new();
        let mut position = HashMap::new();
        for col in 0..ncols {
            if is_pivot[col] == usize::MAX {
                new_pos[col] = words.len();
                let (u, l) = (col / d, (col % d) as Letter);
                let mut w = self.degrees[m].words[u].clone();
                w.push(l);
                position.insert(word_index(&w, d), words.len());
                words.push(w);
                parent.push((u, l));
            }
        }
        let mut right = vec![Vec::with_capacity(d); cur_dim];
        for (u, slot) in right.iter_mut().enumerate() {
            for l in 0..d {
                let col = u * d + l;
                let v = if is_pivot[col] == usize::MAX {
                    SparseVec::unit(&field, new_pos[col], field.one())
                } else {
                    let row = &quotient.rows()[is_pivot[col]];
                    let pairs = row.entries()[1..]
                        .iter()
                        .map(|(c, x)| (new_pos[*c], field.neg(x)))
                        .collect();
                    SparseVec::from_pairs(&field, pairs)
                };
                slot.push(v);
            }
        }
        self.degrees[m].right = right;
        let mut left = vec![Vec::with_capacity(d); cur_dim];
        for (u, slot) in left.iter_mut().enumerate() {
            for l in 0..d {
                let v = if m == 0 {
                    self.degrees[0].right[0][l].clone()
                } else {
                    let (pu, pl) = self.degrees[m].parent[u];
                    let base = self.degrees[m - 1].left[pu][l].clone();
                    self.right_mul(m, &base, pl)
                };
                slot.push(v);
            }
        }
        self.degrees[m].left = left;
        self.degrees.push(Degree { words, position, parent, right: Vec::new(), left: Vec::new() });
        Ok(())
    }

    /// The presentation.
    pub fn presentation(&self) -> &Presentation<F> {
        &self.pres
    }

    /// The field.
    pub fn field(&self) -> &F {
        self.pres.field()
    }

    /// The limits in force.
    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// `dim V`.
    pub fn dim_v(&self) -> usize {
        self.pres.dim_v()
    }

    /// Largest degree with a computed basis.
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    fn degree_data(&self, n: usize) -> Result<&Degree<F::Elem>> {
        self.degrees
            .get(n)
            .ok_or_else(|| Error::Budget(format!("degree {n} exceeds the cached bound {}", self.max_degree)))
    }

    /// `dim A_n`; zero for negative degrees is expressed by callers passing `None`.
    pub fn dim(&self, n: usize) -> Result<usize> {
        Ok(self.degree_data(n)?.words.len())
    }

    /// Basis words of `A_n`: the non-pivot words of `RREF(I_n)` in lexicographic order.
    pub fn basis(&self, n: usize) -> Result<&[Word]> {
        Ok(&self.degree_data(n)?.words)
    }

    /// Position of a word in the basis of `A_n`, if it is a basis word.
    pub fn basis_position(&self, w: &[Letter]) -> Option<usize> {
        self.degrees.get(w.len())?.position.get(&word_index(w, self.dim_v())).copied()
    }

    /// Right multiplication `A_n x V -> A_{n+1}` applied to a vector of `A_n`.
    pub fn right_mul(&self, n: usize, v: &SparseVec<F::Elem>, l: Letter) -> SparseVec<F::Elem> {
        let f = self.field();
        let table = &self.degrees[n].right;
        if let [(u, c)] = v.entries() {
            return table[*u][l as usize].scale(f, c);
        }
        let mut acc = Accumulator::new();
        for (u, c) in v.entries() {
            acc.add_scaled(f, c, &table[*u][l as usize]);
        }
        acc.finish(f)
    }

    /// Left multiplication `V x A_n -> A_{n+1}` applied to a vector of `A_n`.
    pub fn left_mul(&self, n: usize, l: Letter, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = self.field();
        let table = &self.degrees[n].left;
        if let [(u, c)] = v.entries() {
            return table[*u][l as usize].scale(f, c);
        }
        let mut acc = Accumulator::new();
        for (u, c) in v.entries() {
            acc.add_scaled(f, c, &table[*u][l as usize]);
        }
        acc.finish(f)
    }

    /// The class of `left · α · right` in `A`, for `α` a vector of `A_n`.
    pub fn sandwich(&self, left: &[Letter], n: usize, alpha: &SparseVec<F::Elem>, right: &[Letter]) -> Result<SparseVec<F::Elem>> {
        let top = n + left.len() + right.len();
        if top > self.max_degree {
            return Err(Error::Budget(format!("degree {top} exceeds the cached bound {}", self.max_degree)));
        }
        let mut v = alpha.clone();
        let mut deg = n;
        for &l in left.iter().rev() {
            if v.is_zero() {
                return Ok(v);
            }
            v = self.left_mul(deg, l, &v);
            deg += 1;
        }
        for &l in right {
            if v.is_zero() {
                return Ok(v);
            }
            v = self.right_mul(deg, &v, l);
            deg += 1;
        }
        Ok(v)
    }

    /// Coordinates of the class of a word in the basis of `A_{|w|}`.
    pub fn reduce_word(&self, w: &[Letter]) -> Result<SparseVec<F::Elem>> {
        let f = self.field();
        self.sandwich(&[], 0, &SparseVec::unit(f, 0, f.one()), w)
    }

    /// Coordinates in `A_n` of a vector of `V^(n)` given in the word basis.
    pub fn reduce_vector(&self, n: usize, v: &SparseVec<F::Elem>) -> Result<SparseVec<F::Elem>> {
        let f = self.field();
        let d = self.dim_v();
        let mut acc = Accumulator::new();
        for (c, x) in v.entries() {
            acc.add_scaled(f, x, &self.reduce_word(&word_at(*c, n, d))?);
        }
        Ok(acc.finish(f))
    }

    /// The ideal component `I_n ⊆ V^(n)` in canonical form.
    ///
    /// Its canonical rows are `w - nf(w)` for the pivot words `w`, which are read off the
    /// normal forms without any elimination.
    pub fn ideal(&self, n: usize) -> Result<&Subspace<F>> {
        if n > self.max_degree {
            return Err(Error::Budget(format!("degree {n} exceeds the cached bound {}", self.max_degree)));
        }
        let r = self.ideals[n].get_or_init(|| self.build_ideal(n));
        r.as_ref().map_err(Clone::clone)
    }

    fn build_ideal(&self, n: usize) -> Result<Subspace<F>> {
        let d = self.dim_v();
        let ambient = self.limits.ambient(d, n)?;
        let f = self.field().clone();
        if n < self.pres.a() {
            return Ok(Subspace::zero(ambient));
        }
        let basis_index: Vec<usize> = self.degrees[n].words.iter().map(|w| word_index(w, d)).collect();
        let mut rows = Vec::new();
        let mut stack: Vec<(usize, usize, SparseVec<F::Elem>)> = vec![(0, 0, SparseVec::unit(&f, 0, f.one()))];
        while let Some((len, idx, v)) = stack.pop() {
            if len == n {
                if !self.degrees[n].position.contains_key(&idx) {
                    let mut pairs: Vec<(usize, F::Elem)> =
                        v.entries().iter().map(|(u, x)| (basis_index[*u], f.neg(x))).collect();
                    pairs.push((idx, f.one()));
                    rows.push(SparseVec::from_pairs(&f, pairs));
                }
                continue;
            }
            for l in (0..d).rev() {
                let nv = if v.is_zero() { v.clone() } else { self.right_mul(len, &v, l as Letter) };
                stack.push((len + 1, idx * d + l, nv));
            }
        }
        Ok(Subspace::from_canonical_rows(&f, ambient, rows))
    }

    /// The relation space of a branch.
    pub fn relations(&self, br: Branch) -> &Subspace<F> {
        self.pres.relations(br)
    }

    /// `R_s^⊥ ⊆ V^(s)`.
    pub fn relations_perp(&self, br: Branch) -> &Subspace<F> {
        &self.perps[slot(br)]
    }

    /// `J_n^s`: the intersection of all `V^(i) ⊗ R_s ⊗ V^(j)` inside `V^(n)`.
    ///
    /// Computed by `J_n^s = (R_s ⊗ V^(n-s)) ∩ (V ⊗ J_{n-1}^s)`: an element of
    /// `V ⊗ J_{n-1}^s` is parametrised by its coefficients and membership in
    /// `R_s ⊗ V^(n-s)` becomes the vanishing of `R_s^⊥` on every length-`s` head.
    pub fn j(&self, br: Branch, n: usize) -> Result<&Subspace<F>> {
        let s = self.pres.degree(br);
        if n < s {
            return Err(Error::Domain(format!("J_n^s needs n >= s, got n={n}, s={s}")));
        }
        if n > self.max_degree {
            return Err(Error::Budget(format!("degree {n} exceeds the cached bound {}", self.max_degree)));
        }
        let r = self.js[slot(br)][n].get_or_init(|| self.build_j(br, n));
        r.as_ref().map_err(Clone::clone)
    }

    fn build_j(&self, br: Branch, n: usize) -> Result<Subspace<F>> {
        let s = self.pres.degree(br);
        let d = self.dim_v();
        self.limits.check_time()?;
        if n == s {
            return Ok(self.relations(br).clone());
        }
        let prev = self.j(br, n - 1)?;
        if prev.is_zero() {
            let ambient = checked_pow(d, n).ok_or_else(|| Error::Budget(format!("V^({n}) overflows")))?;
            return Ok(Subspace::zero(ambient));
        }
        let ambient = self.limits.ambient(d, n)?;
        let f = self.field().clone();
        let tail_size = pow(d, n - s);
        let prev_amb = prev.ambient();
        let perp = self.relations_perp(br);
        // Index perp rows by head word.
        let mut by_head: HashMap<usize, Vec<(usize, F::Elem)>> = HashMap::new();
        for (k, row) in perp.rows().iter().enumerate() {
            for (h, x) in row.entries() {
                by_head.entry(*h).or_default().push((k, x.clone()));
            }
        }
        let nparams = d * prev.dim();
        let mut constraints: HashMap<(usize, usize), Accumulator<F::Elem>> = HashMap::new();
        for l in 0..d {
            for (jr, row) in prev.rows().iter().enumerate() {
                let param = l * prev.dim() + jr;
                for (c, x) in row.entries() {
                    let col = l * prev_amb + c;
                    let (head, tail) = (col / tail_size, col % tail_size);
                    if let Some(list) = by_head.get(&head) {
                        for (k, phi) in list {
                            constraints
                                .entry((tail, *k))
                                .or_default()
                                .add_entry(&f, param, &f.mul(phi, x));
                        }
                    }
                }
            }
        }
        let mut ech = Echelon::new(&f, nparams);
        let mut keys: Vec<(usize, usize)> = constraints.keys().copied().collect();
        keys.sort_unstable();
        for key in keys {
            let acc = constraints.remove(&key).expect("key present");
            ech.insert(acc.finish(&f));
            if ech.rank() == nparams {
                break;
            }
        }
        let solutions = ech.into_subspace().perp(&f);
        let mut vectors = Vec::with_capacity(solutions.dim());
        for sol in solutions.rows() {
            let mut acc = Accumulator::new();
            for (param, c) in sol.entries() {
                let (l, jr) = (param / prev.dim(), param % prev.dim());
                for (col, x) in prev.rows()[jr].entries() {
                    acc.add_entry(&f, l * prev_amb + col, &f.mul(c, x));
                }
            }
            vectors.push(acc.finish(&f));
        }
        Subspace::span(&f, ambient, vectors)
    }

    /// `J_n^s` computed literally as the intersection of all `n - s + 1` shifts.
    pub fn j_direct(&self, br: Branch, n: usize) -> Result<Subspace<F>> {
        let s = self.pres.degree(br);
        if n < s {
            return Err(Error::Domain(format!("J_n^s needs n >= s, got n={n}, s={s}")));
        }
        let d = self.dim_v();
        let f = self.field();
        let ambient = self.limits.ambient(d, n)?;
        let mut acc = Subspace::full(f, ambient);
        for i in 0..=(n - s) {
            let shifted = embed(f, d, self.relations(br), s, i, n - s - i);
            acc = acc.intersect(f, &shifted)?;
        }
        Ok(acc)
    }

    /// `V^(i) ⊗ W ⊗ V^(j)` for `W ⊆ V^(m)`, with the ambient budget enforced.
    pub fn embed(&self, w: &Subspace<F>, m: usize, i: usize, j: usize) -> Result<Subspace<F>> {
        self.limits.ambient(self.dim_v(), i + m + j)?;
        Ok(embed(self.field(), self.dim_v(), w, m, i, j))
    }

    /// `Σ_q V^(n-m-q) ⊗ W ⊗ V^(q)` over the given right padding lengths `q`.
    ///
    /// Paddings making the left exponent negative are skipped, matching the convention
    /// `V^(i) = 0` for `i < 0`.
    pub fn shift_sum(&self, w: &Subspace<F>, m: usize, n: usize, qs: impl IntoIterator<Item = i64>) -> Result<Subspace<F>> {
        let ambient = self.limits.ambient(self.dim_v(), n)?;
        let mut parts = Vec::new();
        for q in qs {
            if q < 0 || (q as usize) + m > n {
                continue;
            }
            let q = q as usize;
            parts.push(self.embed(w, m, n - m - q, q)?);
        }
        Subspace::sum_all(self.field(), ambient, parts.iter())
    }
}

/// `V^(i) ⊗ W ⊗ V^(j)` inside `V^(i+m+j)` for `W ⊆ V^(m)`.
///
/// The result is already canonical: blocks with different outer words are disjoint and
/// within a block the rows are those of `W`.
pub fn embed<F: Field>(field: &F, d: usize, w: &Subspace<F>, m: usize, i: usize, j: usize) -> Subspace<F> {
    let ambient = pow(d, i + m + j);
    let (left, right, mid) = (pow(d, i), pow(d, j), pow(d, m));
    debug_assert_eq!(w.ambient(), mid);
    let mut rows = Vec::with_capacity(left * right * w.dim());
    for p in 0..left {
        for r in w.rows() {
            for q in 0..right {
                rows.push(r.map_cols(|c| (p * mid + c) * right + q));
            }
        }
    }
    Subspace::from_canonical_rows(field, ambient, rows)
}
