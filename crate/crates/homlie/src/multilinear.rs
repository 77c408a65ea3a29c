//! Exterior-algebra kernel: sparse multivectors over the lexicographic wedge
//! basis, wedge products, extension of linear maps to ∧^k, the extended
//! bracket on ∧•g, and contraction with dual vectors.

use crate::error::HomlieError;
use crate::linmap::LinearMap;
use crate::scalar::{scalar_eq, Scalar};
use std::collections::BTreeMap;
use std::fmt;

/// All strictly increasing k-tuples from {0,..,n-1} in lexicographic order.
pub fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut t: Vec<usize> = (0..k).collect();
    loop {
        out.push(t.clone());
        // advance to the next increasing tuple
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if t[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        t[i] += 1;
        for j in i + 1..k {
            t[j] = t[j - 1] + 1;
        }
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Rank of an increasing tuple in the lexicographic order of `tuples(n, k)`.
pub fn tuple_rank(n: usize, t: &[usize]) -> usize {
    let k = t.len();
    let mut rank = 0;
    let mut prev = 0;
    for (pos, &idx) in t.iter().enumerate() {
        for lower in prev..idx {
            rank += binomial(n - lower - 1, k - pos - 1);
        }
        prev = idx + 1;
    }
    rank
}

/// Sort indices, counting transposition sign; `None` on a repeated index.
fn normalize(indices: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = indices.to_vec();
    let mut neg = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            neg = !neg;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, neg))
}

/// Element of ∧^k g in the basis {e_I : I increasing}; only nonzero
/// coefficients on canonical tuples are stored.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiVector {
    pub dim: usize,
    pub degree: usize,
    terms: BTreeMap<Vec<usize>, Scalar>,
}

impl MultiVector {
    pub fn zero(dim: usize, degree: usize) -> Self {
        MultiVector {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Degree-0 multivector carrying a scalar.
    pub fn scalar(dim: usize, s: Scalar) -> Self {
        let mut m = MultiVector::zero(dim, 0);
        m.add_term(&[], s);
        m
    }

    /// e_{i1} ∧ … ∧ e_{ik} from 0-based indices, in any order.
    pub fn basis(dim: usize, indices: &[usize]) -> Self {
        assert!(indices.iter().all(|&i| i < dim), "basis index out of range");
        let mut m = MultiVector::zero(dim, indices.len());
        m.add_term(indices, Scalar::one());
        m
    }

    /// Degree-1 multivector from coordinates.
    pub fn from_vec1(coords: &[Scalar]) -> Self {
        let mut m = MultiVector::zero(coords.len(), 1);
        for (i, c) in coords.iter().enumerate() {
            m.add_term(&[i], c.clone());
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, indices: &[usize]) -> Scalar {
        match normalize(indices) {
            None => Scalar::zero(),
            Some((sorted, neg)) => {
                let c = self.terms.get(&sorted).cloned().unwrap_or_else(Scalar::zero);
                if neg {
                    c.neg()
                } else {
                    c
                }
            }
        }
    }

    /// As a scalar; degree must be 0.
    pub fn as_scalar(&self) -> Scalar {
        assert_eq!(self.degree, 0, "not a degree-0 multivector");
        self.terms.get(&vec![]).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Degree-1 coordinates.
    pub fn to_vec1(&self) -> Vec<Scalar> {
        assert_eq!(self.degree, 1, "not a degree-1 multivector");
        (0..self.dim).map(|i| self.coeff(&[i])).collect()
    }

    pub fn add_term(&mut self, indices: &[usize], coeff: Scalar) {
        assert_eq!(indices.len(), self.degree, "term degree mismatch");
        if coeff.is_zero() || indices.len() > self.dim {
            return;
        }
        let Some((sorted, neg)) = normalize(indices) else {
            return;
        };
        let coeff = if neg { coeff.neg() } else { coeff };
        let entry = self.terms.entry(sorted.clone()).or_insert_with(Scalar::zero);
        *entry = &*entry + &coeff;
        if entry.is_zero() {
            self.terms.remove(&sorted);
        }
    }

    pub fn add(&self, other: &MultiVector) -> MultiVector {
        assert_eq!(self.dim, other.dim);
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (t, c) in other.terms.iter() {
            out.add_term(t, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiVector) -> MultiVector {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiVector {
        let mut out = MultiVector::zero(self.dim, self.degree);
        for (t, c) in self.terms.iter() {
            out.terms.insert(t.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> MultiVector {
        let mut out = MultiVector::zero(self.dim, self.degree);
        if c.is_zero() {
            return out;
        }
        for (t, a) in self.terms.iter() {
            out.add_term(t, a * c);
        }
        out
    }

    pub fn eq_promoted(&self, other: &MultiVector) -> bool {
        if self.dim != other.dim || self.degree != other.degree {
            return false;
        }
        self.sub(other).is_zero() || {
            // sub already canonicalizes; keep a field-insensitive fallback
            self.terms.len() == other.terms.len()
                && self
                    .terms
                    .iter()
                    .all(|(t, c)| other.terms.get(t).map_or(false, |d| scalar_eq(c, d)))
        }
    }

    /// Coordinates over the lexicographic wedge basis of ∧^degree.
    pub fn to_coords(&self) -> Vec<Scalar> {
        let mut coords = vec![Scalar::zero(); binomial(self.dim, self.degree)];
        for (t, c) in self.terms.iter() {
            coords[tuple_rank(self.dim, t)] = c.clone();
        }
        coords
    }

    pub fn from_coords(dim: usize, degree: usize, coords: &[Scalar]) -> Self {
        let basis = tuples(dim, degree);
        assert_eq!(coords.len(), basis.len(), "coordinate length mismatch");
        let mut m = MultiVector::zero(dim, degree);
        for (t, c) in basis.iter().zip(coords) {
            m.add_term(t, c.clone());
        }
        m
    }
}

impl fmt::Display for MultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (t, c) in self.terms.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let name = t
                .iter()
                .map(|i| format!("e{}", i + 1))
                .collect::<Vec<_>>()
                .join("^");
            if t.is_empty() {
                write!(f, "{}", c)?;
            } else {
                write!(f, "{} {}", c, name)?;
            }
        }
        Ok(())
    }
}

/// Element of ∧^k g* over the dual basis e^I. Same storage and canonical
/// form as `MultiVector`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiForm(pub MultiVector);

impl MultiForm {
    pub fn basis(dim: usize, indices: &[usize]) -> Self {
        MultiForm(MultiVector::basis(dim, indices))
    }

    pub fn from_vec1(coords: &[Scalar]) -> Self {
        MultiForm(MultiVector::from_vec1(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }
}

/// Exterior product.
pub fn wedge(u: &MultiVector, v: &MultiVector) -> Result<MultiVector, HomlieError> {
    if u.dim != v.dim {
        return Err(HomlieError::DimensionMismatch(format!(
            "wedge of base dims {} and {}",
            u.dim, v.dim
        )));
    }
    let mut out = MultiVector::zero(u.dim, u.degree + v.degree);
    for (s, a) in u.terms.iter() {
        for (t, b) in v.terms.iter() {
            let mut idx = s.clone();
            idx.extend_from_slice(t);
            out.add_term(&idx, a * b);
        }
    }
    Ok(out)
}

/// Matrix of ∧^k f on the lexicographic wedge basis; entries are k×k minors.
pub fn extend_map(f: &LinearMap, k: usize) -> Result<LinearMap, HomlieError> {
    if !f.is_square() {
        return Err(HomlieError::DimensionMismatch(
            "extend_map requires a square map".into(),
        ));
    }
    let n = f.rows;
    let basis = tuples(n, k);
    Ok(LinearMap::from_fn(basis.len(), basis.len(), |i, j| {
        let rows = &basis[i];
        let cols = &basis[j];
        let minor = LinearMap::from_fn(k, k, |a, b| f.get(rows[a], cols[b]).clone());
        minor.det()
    }))
}

/// Apply a linear map degree-wise: f(x_1)∧…∧f(x_k) on decomposables.
pub fn apply_map(f: &LinearMap, w: &MultiVector) -> Result<MultiVector, HomlieError> {
    if f.cols != w.dim {
        return Err(HomlieError::DimensionMismatch(format!(
            "map on dim {} applied to multivector over dim {}",
            f.cols, w.dim
        )));
    }
    let mut out = MultiVector::zero(f.rows, w.degree);
    for (t, c) in w.terms.iter() {
        let mut acc = MultiVector::scalar(f.rows, c.clone());
        for &idx in t {
            acc = wedge(&acc, &MultiVector::from_vec1(&f.col(idx)))?;
        }
        out = out.add(&acc);
    }
    Ok(out)
}

/// The bracket of ∧•g extended from a bracket on basis vectors:
/// [x_1∧…∧x_m, y_1∧…∧y_n] = Σ_{i,j} (-1)^{i+j} [x_i,y_j] ∧ φ(x_1∧…x̂_i…∧y_1∧…ŷ_j…).
pub fn extended_bracket_with(
    a: &MultiVector,
    b: &MultiVector,
    bracket_basis: &dyn Fn(usize, usize) -> Vec<Scalar>,
    twist: &LinearMap,
) -> Result<MultiVector, HomlieError> {
    if a.dim != b.dim || twist.cols != a.dim {
        return Err(HomlieError::DimensionMismatch(
            "extended bracket operand dims differ".into(),
        ));
    }
    assert!(a.degree >= 1 && b.degree >= 1, "degrees must be at least 1");
    let dim = a.dim;
    let out_degree = a.degree + b.degree - 1;
    let mut out = MultiVector::zero(dim, out_degree);
    for (s, ca) in a.terms.iter() {
        for (t, cb) in b.terms.iter() {
            let coeff = ca * cb;
            for (pi, &xi) in s.iter().enumerate() {
                for (pj, &yj) in t.iter().enumerate() {
                    let sign_neg = (pi + pj) % 2 == 1; // (-1)^{i+j} with 1-based i,j
                    let br = MultiVector::from_vec1(&bracket_basis(xi, yj));
                    if br.is_zero() {
                        continue;
                    }
                    // φ of the remaining factors, kept in written order
                    let mut rest = MultiVector::scalar(dim, Scalar::one());
                    for (p, &idx) in s.iter().enumerate() {
                        if p != pi {
                            rest = wedge(&rest, &MultiVector::from_vec1(&twist.col(idx)))?;
                        }
                    }
                    for (p, &idx) in t.iter().enumerate() {
                        if p != pj {
                            rest = wedge(&rest, &MultiVector::from_vec1(&twist.col(idx)))?;
                        }
                    }
                    let mut term = wedge(&br, &rest)?;
                    term = term.scale(&coeff);
                    if sign_neg {
                        term = term.neg();
                    }
                    out = out.add(&term);
                }
            }
        }
    }
    Ok(out)
}

/// Left interior product by a 1-form: ι_ξ(e_{i1}∧…∧e_{ik}) = Σ_t (-1)^{t-1} ξ(e_{it}) e_{…î_t…}.
fn interior(w: &MultiVector, xi: &MultiForm) -> Result<MultiVector, HomlieError> {
    if xi.dim() != w.dim {
        return Err(HomlieError::DimensionMismatch(
            "interior product base dims differ".into(),
        ));
    }
    assert_eq!(xi.degree(), 1, "interior product needs a 1-form");
    assert!(w.degree >= 1, "cannot contract a degree-0 multivector");
    let coords = xi.0.to_vec1();
    let mut out = MultiVector::zero(w.dim, w.degree - 1);
    for (t, c) in w.terms.iter() {
        for (pos, &idx) in t.iter().enumerate() {
            let pairing = &coords[idx];
            if pairing.is_zero() {
                continue;
            }
            let rest: Vec<usize> = t
                .iter()
                .enumerate()
                .filter(|&(p, _)| p != pos)
                .map(|(_, &i)| i)
                .collect();
            let mut coeff = c * pairing;
            if pos % 2 == 1 {
                coeff = coeff.neg();
            }
            out.add_term(&rest, coeff);
        }
    }
    Ok(out)
}

/// Successive left interior products, first form innermost. Full contraction
/// (j = k) realizes the determinant pairing ⟨e_I, e^J⟩ = det(δ).
pub fn contract(w: &MultiVector, forms: &[MultiForm]) -> Result<MultiVector, HomlieError> {
    if forms.len() > w.degree {
        return Err(HomlieError::DimensionMismatch(
            "more forms than the multivector degree".into(),
        ));
    }
    let mut acc = w.clone();
    for f in forms {
        acc = interior(&acc, f)?;
    }
    Ok(acc)
}

/// Determinant pairing of ∧^k g with ∧^k g*: ⟨e_I, e^J⟩ = δ_IJ on increasing tuples.
pub fn pair(w: &MultiVector, form: &MultiForm) -> Result<Scalar, HomlieError> {
    if w.dim != form.dim() || w.degree != form.degree() {
        return Err(HomlieError::DimensionMismatch(
            "pairing shape mismatch".into(),
        ));
    }
    let mut acc = Scalar::zero();
    for (t, c) in w.terms.iter() {
        let d = form.0.coeff(t);
        if !d.is_zero() {
            acc = &acc + &(c * &d);
        }
    }
    Ok(acc)
}
