use std::fmt;

use super::Scalar;

/// Sparse exact vector: sorted `(index, value)` pairs with no stored zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    dim: usize,
    entries: Vec<(usize, Scalar)>,
}

impl Vector {
    pub fn zeros(dim: usize) -> Self {
        Vector { dim, entries: Vec::new() }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        assert!(i < dim, "basis index {i} out of range for dim {dim}");
        Vector { dim, entries: vec![(i, Scalar::one())] }
    }

    pub fn from_dense(values: Vec<Scalar>) -> Self {
        let dim = values.len();
        let entries = values.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
        Vector { dim, entries }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self::from_dense(values.iter().map(|&v| Scalar::from_int(v)).collect())
    }

    /// Builds a vector from arbitrary `(index, value)` pairs, summing repeats.
    pub fn from_entries<I: IntoIterator<Item = (usize, Scalar)>>(dim: usize, items: I) -> Self {
        let mut raw: Vec<(usize, Scalar)> = items.into_iter().collect();
        raw.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Scalar)> = Vec::with_capacity(raw.len());
        for (i, v) in raw {
            assert!(i < dim, "index {i} out of range for dim {dim}");
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc += &v,
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        Vector { dim, entries }
    }

    /// Trusted constructor: entries must be sorted, in range and nonzero.
    pub(crate) fn from_sorted(dim: usize, entries: Vec<(usize, Scalar)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(i, v)| *i < dim && !v.is_zero()));
        Vector { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn get(&self, i: usize) -> Scalar {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(p) => self.entries[p].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn to_dense(&self) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        if c.is_zero() {
            return Vector::zeros(self.dim);
        }
        Vector {
            dim: self.dim,
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Scalar, other: &Vector) -> Vector {
        assert_eq!(self.dim, other.dim, "vector dimension mismatch");
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y * c));
                        b.next();
                    } else {
                        let s = x + &(y * c);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        Vector { dim: self.dim, entries: out }
    }

    pub fn add(&self, other: &Vector) -> Vector {
        self.add_scaled(&Scalar::one(), other)
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        self.add_scaled(&-Scalar::one(), other)
    }

    pub fn neg(&self) -> Vector {
        self.scale(&-Scalar::one())
    }

    pub fn dot(&self, other: &Vector) -> Scalar {
        let mut acc = Scalar::zero();
        let (mut p, mut q) = (0, 0);
        while p < self.entries.len() && q < other.entries.len() {
            let (i, j) = (self.entries[p].0, other.entries[q].0);
            if i == j {
                acc += &(&self.entries[p].1 * &other.entries[q].1);
                p += 1;
                q += 1;
            } else if i < j {
                p += 1;
            } else {
                q += 1;
            }
        }
        acc
    }

    /// Kronecker product; index `(i, j)` lands at `i * other.dim + j`.
    pub fn tensor(&self, other: &Vector) -> Vector {
        let mut entries = Vec::with_capacity(self.nnz() * other.nnz());
        for (i, x) in &self.entries {
            for (j, y) in &other.entries {
                entries.push((i * other.dim + j, x * y));
            }
        }
        Vector { dim: self.dim * other.dim, entries }
    }

    /// Direct sum coordinates: `self` followed by `other`.
    pub fn concat(&self, other: &Vector) -> Vector {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().map(|(i, x)| (i + self.dim, x.clone())));
        Vector { dim: self.dim + other.dim, entries }
    }

    /// Splits into the first `k` coordinates and the rest.
    pub fn split_at(&self, k: usize) -> (Vector, Vector) {
        assert!(k <= self.dim);
        let cut = self.entries.partition_point(|(i, _)| *i < k);
        let head = self.entries[..cut].to_vec();
        let tail = self.entries[cut..].iter().map(|(i, x)| (i - k, x.clone())).collect();
        (Vector { dim: k, entries: head }, Vector { dim: self.dim - k, entries: tail })
    }

    /// Sum of `c_k * v_k`; all vectors must have dimension `dim`.
    pub fn linear_combination<'a, I>(dim: usize, terms: I) -> Vector
    where
        I: IntoIterator<Item = (Scalar, &'a Vector)>,
    {
        let mut items = Vec::new();
        for (c, v) in terms {
            assert_eq!(v.dim, dim, "vector dimension mismatch");
            if c.is_zero() {
                continue;
            }
            for (i, x) in &v.entries {
                items.push((*i, x * &c));
            }
        }
        Vector::from_entries(dim, items)
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vector[{}]{{", self.dim)?;
        for (k, (i, v)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}: {v}")?;
        }
        write!(f, "}}")
    }
}
