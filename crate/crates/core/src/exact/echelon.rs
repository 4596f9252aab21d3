//! Incremental row echelon form over the rationals.
//!
//! Rows are kept with leading coefficient one and indexed by their pivot
//! column. Reduction scans columns left to right and eliminates at every
//! pivot it meets, so a remainder has no entry in any pivot column.

use super::{Scalar, Vector};

/// Dimension used for combination-tracking vectors, whose length is not known up front.
const OPEN_DIM: usize = usize::MAX;

#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<Vector>,
    pivot_row: Vec<Option<usize>>,
    tracks: Option<Vec<Vector>>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivot_row: vec![None; ncols], tracks: None }
    }

    /// An echelon form that remembers each row as a combination of the inserted vectors.
    pub fn tracked(ncols: usize) -> Self {
        Echelon { tracks: Some(Vec::new()), ..Echelon::new(ncols) }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.leading().expect("nonzero row").0)
    }

    fn eliminate(&self, v: &Vector, mut track: Option<Vector>) -> (Vector, Option<Vector>) {
        assert_eq!(v.dim(), self.ncols, "vector length does not match echelon width");
        let mut v = v.clone();
        let mut pos = 0;
        while pos < v.nnz() {
            let (col, c) = {
                let (col, c) = &v.entries()[pos];
                (*col, c.clone())
            };
            match self.pivot_row[col] {
                Some(r) => {
                    let neg = -c;
                    v = v.add_scaled(&neg, &self.rows[r]);
                    if let (Some(t), Some(ts)) = (track.as_mut(), self.tracks.as_ref()) {
                        *t = t.add_scaled(&neg, &ts[r]);
                    }
                }
                None => pos += 1,
            }
        }
        (v, track)
    }

    /// Remainder of `v` after elimination against the stored rows.
    pub fn reduce(&self, v: &Vector) -> Vector {
        self.eliminate(v, None).0
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns whether it was independent of the current rows.
    pub fn insert(&mut self, v: &Vector) -> bool {
        let (rem, _) = self.eliminate(v, None);
        self.push_row(rem, None)
    }

    /// Inserts `v`, remembering it as generator number `label`.
    pub fn insert_tracked(&mut self, v: &Vector, label: usize) -> bool {
        assert!(self.tracks.is_some(), "echelon form was not created with tracking");
        let seed = Vector::from_entries(OPEN_DIM, [(label, Scalar::one())]);
        let (rem, t) = self.eliminate(v, Some(seed));
        self.push_row(rem, t)
    }

    fn push_row(&mut self, rem: Vector, track: Option<Vector>) -> bool {
        let Some((col, lead)) = rem.leading() else {
            return false;
        };
        let inv = lead.recip().expect("leading entry is nonzero");
        let row = rem.scale(&inv);
        self.pivot_row[col] = Some(self.rows.len());
        self.rows.push(row);
        if let (Some(ts), Some(t)) = (self.tracks.as_mut(), track) {
            ts.push(t.scale(&inv));
        }
        true
    }

    /// Expresses `v` through the tracked generators, or `None` if `v` is outside the span.
    pub(crate) fn combination(&self, v: &Vector) -> Option<Vec<(usize, Scalar)>> {
        assert!(self.tracks.is_some(), "echelon form was not created with tracking");
        let (rem, t) = self.eliminate(v, Some(Vector::zeros(OPEN_DIM)));
        if !rem.is_zero() {
            return None;
        }
        Some(t.expect("tracking enabled").neg().entries().to_vec())
    }

    /// Fully reduced rows sorted by pivot column.
    pub fn rref(&self) -> Vec<Vector> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| std::cmp::Reverse(self.rows[r].leading().unwrap().0));
        let mut reduced: Vec<Option<Vector>> = vec![None; self.rows.len()];
        for &r in &order {
            let row = &self.rows[r];
            let lead = row.leading().unwrap().0;
            let mut out = row.clone();
            for (col, c) in row.iter() {
                if col == lead {
                    continue;
                }
                if let Some(q) = self.pivot_row[col] {
                    let other = reduced[q].as_ref().expect("higher pivots reduced first");
                    out = out.add_scaled(&-c, other);
                }
            }
            reduced[r] = Some(out);
        }
        let mut rows: Vec<Vector> = reduced.into_iter().map(Option::unwrap).collect();
        rows.sort_by_key(|r| r.leading().unwrap().0);
        rows
    }
}

/// Null space of the system whose equations are `rows`, as the standard basis
/// indexed by the free columns of the reduced row echelon form.
pub fn kernel_of_rows<I: IntoIterator<Item = Vector>>(ncols: usize, rows: I) -> Vec<Vector> {
    let mut ech = Echelon::new(ncols);
    for r in rows {
        ech.insert(&r);
    }
    kernel_of_echelon(&ech)
}

pub fn kernel_of_echelon(ech: &Echelon) -> Vec<Vector> {
    let ncols = ech.ncols();
    let rref = ech.rref();
    let mut is_pivot = vec![false; ncols];
    for r in &rref {
        is_pivot[r.leading().unwrap().0] = true;
    }
    let mut items: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); ncols];
    for r in &rref {
        let p = r.leading().unwrap().0;
        for (col, c) in r.iter().skip(1) {
            items[col].push((p, -c));
        }
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut e = std::mem::take(&mut items[f]);
            e.push((f, Scalar::one()));
            Vector::from_entries(ncols, e)
        })
        .collect()
}
