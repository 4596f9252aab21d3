use super::echelon::{kernel_of_echelon, Echelon};
use super::{Matrix, Scalar, Vector};

/// Basis of `{F : F·A = B·F for every pair (A, B)}` with `F` of shape `dy × dx`.
///
/// Unknowns are the entries of `F` in column-major order, matching
/// [`Matrix::flatten`].
pub fn intertwiners(dx: usize, dy: usize, pairs: &[(&Matrix, &Matrix)]) -> Vec<Matrix> {
    let n = dx * dy;
    let mut ech = Echelon::new(n);
    for (a, b) in pairs {
        assert_eq!((a.nrows(), a.ncols()), (dx, dx), "source operator has the wrong shape");
        assert_eq!((b.nrows(), b.ncols()), (dy, dy), "target operator has the wrong shape");
        let b_rows = b.rows();
        for v in 0..dx {
            let acol = a.col(v);
            for (w, brow) in b_rows.iter().enumerate() {
                // (F A)[w, v] - (B F)[w, v]
                let mut items: Vec<(usize, Scalar)> = Vec::with_capacity(acol.nnz() + brow.nnz());
                items.extend(acol.iter().map(|(y, x)| (y * dy + w, x.clone())));
                items.extend(brow.iter().map(|(z, x)| (v * dy + z, -x)));
                let eq = Vector::from_entries(n, items);
                if !eq.is_zero() {
                    ech.insert(&eq);
                }
            }
        }
    }
    kernel_of_echelon(&ech).into_iter().map(|k| Matrix::unflatten(&k, dy, dx)).collect()
}
