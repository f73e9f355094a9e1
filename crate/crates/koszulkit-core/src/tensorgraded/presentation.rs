//! Presentations of (a,b)-homogeneous algebras and the opposite and dual constructions.

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exactla::{Field, SparseVec, Subspace};
use crate::tensorgraded::word::{checked_pow, format_word, pow, reversed_index, word_at, Word};

/// One of the two relation degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// The lower degree `a`.
    A,
    /// The higher degree `b`.
    B,
}

impl Branch {
    /// Both branches, lower degree first.
    pub const BOTH: [Branch; 2] = [Branch::A, Branch::B];
}

/// A homogeneous relation: a nonzero combination of words of one length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation<E> {
    /// Length of every word in the relation.
    pub degree: usize,
    /// Coefficients indexed by word position in `V^(degree)`.
    pub vector: SparseVec<E>,
}

/// A presentation `T(V)/I(R_a ⊕ R_b)` with `2 <= a < b`.
#[derive(Debug, Clone)]
pub struct Presentation<F: Field> {
    field: F,
    generators: Vec<String>,
    a: usize,
    b: usize,
    r_a: Subspace<F>,
    r_b: Subspace<F>,
}

impl<F: Field> Presentation<F> {
    /// Validates relations and builds the relation spaces.
    ///
    /// Rejects relations in fewer or more than two degrees, degrees below 2 and zero
    /// relations. A user generating set is not minimised; `R_s` is its span.
    pub fn new(field: F, generators: Vec<String>, relations: Vec<Relation<F::Elem>>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Presentation("at least one generator is required".into()));
        }
        if generators.len() > usize::from(u8::MAX) {
            return Err(Error::Presentation("too many generators".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for g in &generators {
            if g.is_empty() || !seen.insert(g) {
                return Err(Error::Presentation(format!("generator names must be unique and nonempty: '{g}'")));
            }
        }
        let d = generators.len();
        let mut degrees: Vec<usize> = relations.iter().map(|r| r.degree).collect();
        degrees.sort_unstable();
        degrees.dedup();
        if let Some(&low) = degrees.first() {
            if low < 2 {
                return Err(Error::Presentation(format!("relation degree {low} is below 2")));
            }
        }
        match degrees.len() {
            0 => return Err(Error::Presentation("no relations given".into())),
            1 => {
                return Err(Error::Presentation(format!(
                    "all relations have degree {}: a = b reduces to N-Koszul, unsupported",
                    degrees[0]
                )))
            }
            2 => {}
            _ => {
                return Err(Error::Presentation(format!(
                    "relations in degrees {degrees:?}: not (a,b)-homogeneous"
                )))
            }
        }
        let (a, b) = (degrees[0], degrees[1]);
        let mut spaces = Vec::new();
        for s in [a, b] {
            let amb = checked_pow(d, s)
                .ok_or_else(|| Error::Budget(format!("V^({s}) is too large")))?;
            let mut vs = Vec::new();
            for r in relations.iter().filter(|r| r.degree == s) {
                if r.vector.is_zero() {
                    return Err(Error::Presentation("a relation has all coefficients zero".into()));
                }
                vs.push(r.vector.clone());
            }
            spaces.push(Subspace::span(&field, amb, vs)?);
        }
        let r_b = spaces.pop().expect("two spaces");
        let r_a = spaces.pop().expect("two spaces");
        Ok(Presentation { field, generators, a, b, r_a, r_b })
    }

    /// Builds a presentation from relation spaces directly.
    pub fn from_spaces(field: F, generators: Vec<String>, a: usize, r_a: Subspace<F>, b: usize, r_b: Subspace<F>) -> Result<Self> {
        let d = generators.len();
        if !(2 <= a && a < b) {
            return Err(Error::Presentation(format!("degrees must satisfy 2 <= a < b, got a={a}, b={b}")));
        }
        if r_a.ambient() != pow(d, a) || r_b.ambient() != pow(d, b) {
            return Err(Error::Presentation("relation space has the wrong ambient dimension".into()));
        }
        if r_a.is_zero() || r_b.is_zero() {
            return Err(Error::Presentation("a relation space is zero".into()));
        }
        Ok(Presentation { field, generators, a, b, r_a, r_b })
    }

    /// The ground field.
    pub fn field(&self) -> &F {
        &self.field
    }

    /// Generator names in declaration order.
    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    /// `dim V`.
    pub fn dim_v(&self) -> usize {
        self.generators.len()
    }

    /// The lower relation degree.
    pub fn a(&self) -> usize {
        self.a
    }

    /// The higher relation degree.
    pub fn b(&self) -> usize {
        self.b
    }

    /// Degree of a branch.
    pub fn degree(&self, br: Branch) -> usize {
        match br {
            Branch::A => self.a,
            Branch::B => self.b,
        }
    }

    /// `R_s` for the branch.
    pub fn relations(&self, br: Branch) -> &Subspace<F> {
        match br {
            Branch::A => &self.r_a,
            Branch::B => &self.r_b,
        }
    }

    /// The relations as a flat list, one per canonical basis row.
    pub fn relation_list(&self) -> Vec<Relation<F::Elem>> {
        Branch::BOTH
            .iter()
            .flat_map(|&br| {
                let deg = self.degree(br);
                self.relations(br)
                    .rows()
                    .iter()
                    .map(move |r| Relation { degree: deg, vector: r.clone() })
            })
            .collect()
    }

    /// Renders a vector of `V^(n)` as `(coefficient, word)` pairs.
    pub fn terms(&self, n: usize, v: &SparseVec<F::Elem>) -> Vec<(String, String)> {
        v.entries()
            .iter()
            .map(|(c, x)| (self.field.format(x), format_word(&word_at(*c, n, self.dim_v()), &self.generators)))
            .collect()
    }

    /// The opposite presentation: every relation word reversed.
    pub fn reverse(&self) -> Self {
        let d = self.dim_v();
        let rev = |s: &Subspace<F>, n: usize| {
            let rows = s.rows().iter().map(|r| {
                let pairs = r.entries().iter().map(|(c, x)| (reversed_index(*c, n, d), x.clone())).collect();
                SparseVec::from_pairs(&self.field, pairs)
            });
            Subspace::span(&self.field, s.ambient(), rows).expect("same ambient")
        };
        Presentation {
            field: self.field.clone(),
            generators: self.generators.clone(),
            a: self.a,
            b: self.b,
            r_a: rev(&self.r_a, self.a),
            r_b: rev(&self.r_b, self.b),
        }
    }

    /// The Koszul dual presentation on `V*`, identified with `V` through the dual basis.
    ///
    /// Fails only when a relation space is all of `V^(s)`, since then its complement is zero.
    pub fn dual(&self) -> Result<Self> {
        let pa = self.r_a.perp(&self.field);
        let pb = self.r_b.perp(&self.field);
        Presentation::from_spaces(self.field.clone(), self.generators.clone(), self.a, pa, self.b, pb)
    }

    /// Hex SHA-256 of the canonical form: field, generators, degrees and RREF relation rows.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("field={};gens={};", self.field.tag(), self.generators.join(",")));
        for br in Branch::BOTH {
            h.update(format!("deg={};", self.degree(br)));
            for r in self.relations(br).rows() {
                for (c, x) in r.entries() {
                    h.update(format!("{}:{},", c, self.field.format(x)));
                }
                h.update(";");
            }
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Every word of `V^(n)` as a letter vector, in basis order.
    pub fn all_words(&self, n: usize) -> impl Iterator<Item = Word> + '_ {
        let d = self.dim_v();
        (0..pow(d, n)).map(move |i| word_at(i, n, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Rationals;

    fn mono(d: usize, w: &[u8]) -> Relation<num_rational::BigRational> {
        let f = Rationals;
        Relation { degree: w.len(), vector: SparseVec::unit(&f, crate::tensorgraded::word::word_index(w, d), f.one()) }
    }

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn validation() {
        let f = Rationals;
        assert!(Presentation::new(f, names(), vec![mono(2, &[0, 0]), mono(2, &[1, 1, 1])]).is_ok());
        let e = Presentation::new(f, names(), vec![mono(2, &[0, 0]), mono(2, &[1, 1])]).unwrap_err();
        assert!(e.to_string().contains("N-Koszul"));
        let e = Presentation::new(f, names(), vec![mono(2, &[0, 0]), mono(2, &[1, 1, 1]), mono(2, &[1; 5])]).unwrap_err();
        assert!(e.to_string().contains("not (a,b)-homogeneous"));
        assert!(Presentation::new(f, names(), vec![mono(2, &[0]), mono(2, &[1, 1, 1])]).is_err());
    }

    #[test]
    fn reverse_of_evc_example() {
        let f = Rationals;
        let p = Presentation::new(f, names(), vec![mono(2, &[0, 0, 0]), mono(2, &[0, 1, 1, 1])]).unwrap();
        let r = p.reverse();
        let expected = Presentation::new(f, names(), vec![mono(2, &[0, 0, 0]), mono(2, &[1, 1, 1, 0])]).unwrap();
        assert_eq!(r.relations(Branch::B), expected.relations(Branch::B));
        assert_eq!(r.reverse().relations(Branch::B), p.relations(Branch::B));
        assert_eq!(p.fingerprint(), p.reverse().reverse().fingerprint());
        assert_ne!(p.fingerprint(), r.fingerprint());
    }

    #[test]
    fn dual_dimensions() {
        let f = Rationals;
        let p = Presentation::new(f, names(), vec![mono(2, &[0, 0, 0]), mono(2, &[1, 1, 1, 1])]).unwrap();
        let dl = p.dual().unwrap();
        assert_eq!(dl.relations(Branch::A).dim(), 7);
        assert_eq!(dl.relations(Branch::B).dim(), 15);
        // (x*)^2 y* pairs to zero with x^3.
        let w = crate::tensorgraded::word::word_index(&[0, 0, 1], 2);
        assert!(dl.relations(Branch::A).contains(&f, &SparseVec::unit(&f, w, f.one())).unwrap());
    }
}
