//! Submodules and quotients of a family of matrices.

use crate::error::{Error, Result};
use crate::scalars::{Fe, Mat};

use super::ModuleRep;

/// Pivot rows of a full-column-rank basis `k`: the rows where `k` is
/// invertible.
fn pivot_rows(k: &Mat) -> Vec<usize> {
    k.transpose().rref().1
}

/// Matrices `A_T` with `T k = k A_T` for each generator `T`, where the
/// columns of `k` are independent and span a common invariant subspace.
pub fn restrict_to_subspace(gens: &[Mat], k: &Mat) -> Result<Vec<Mat>> {
    let s = k.cols();
    let piv = pivot_rows(k);
    if piv.len() != s {
        return Err(Error::DimensionMismatch("subspace basis is not independent".into()));
    }
    let all: Vec<usize> = (0..s).collect();
    let kp_inv = k.select(&piv, &all).inverse()?;
    gens.iter()
        .map(|t| {
            let tk = t.mul(k);
            let a = kp_inv.mul(&tk.select(&piv, &all));
            if k.mul(&a) != tk {
                return Err(Error::Validation("subspace is not invariant".into()));
            }
            Ok(a)
        })
        .collect()
}

/// The projection onto `F^d / span(u)`: a `(d - r) x d` matrix together
/// with the coordinates used as the quotient basis.
pub fn quotient_map(u: &Mat) -> (Mat, Vec<usize>) {
    let d = u.rows();
    let basis = u.column_space();
    let piv = pivot_rows(&basis);
    let mut is_piv = vec![false; d];
    for &p in &piv {
        is_piv[p] = true;
    }
    let comp: Vec<usize> = (0..d).filter(|&i| !is_piv[i]).collect();
    // v ↦ v_comp - U_comp v_piv, using that U restricted to `piv` is the identity.
    let f = u.field();
    let mut q = Mat::zeros(f, comp.len(), d);
    for (r, &c) in comp.iter().enumerate() {
        q[(r, c)] = Fe::ONE;
        for (j, &p) in piv.iter().enumerate() {
            q[(r, p)] = f.neg(basis[(c, j)]);
        }
    }
    (q, comp)
}

/// Induced action on `F^d / span(u)` for an invariant `span(u)`.
pub fn quotient(gens: &[Mat], u: &Mat) -> Vec<Mat> {
    let (q, comp) = quotient_map(u);
    gens.iter().map(|t| q.mul(&t.select_cols(&comp))).collect()
}

/// Smallest invariant subspace containing the columns of `v`, as a reduced
/// column basis.
pub fn generated_subspace(gens: &[Mat], v: &Mat) -> Mat {
    let mut basis = v.column_space();
    loop {
        let mut parts = vec![basis.clone()];
        parts.extend(gens.iter().map(|t| t.mul(&basis)));
        let refs: Vec<&Mat> = parts.iter().collect();
        let next = Mat::hstack(&refs).column_space();
        if next.cols() == basis.cols() {
            return basis;
        }
        basis = next;
    }
}

impl ModuleRep {
    /// The submodule spanned by the columns of `k` (in that basis).
    pub fn submodule(&self, k: &Mat) -> Result<ModuleRep> {
        let gens: Vec<Mat> = self.generators().cloned().collect();
        let mut restricted = restrict_to_subspace(&gens, k)?;
        let g = restricted.split_off(self.ctx.n());
        Ok(ModuleRep::assemble(&self.ctx, restricted, g))
    }

    /// The quotient by the submodule spanned by the columns of `u`.
    pub fn quotient(&self, u: &Mat) -> Result<ModuleRep> {
        let gens: Vec<Mat> = self.generators().cloned().collect();
        let closure = generated_subspace(&gens, u);
        if closure.cols() != u.column_space().cols() {
            return Err(Error::Validation("subspace is not invariant".into()));
        }
        let mut q = quotient(&gens, u);
        let g = q.split_off(self.ctx.n());
        Ok(ModuleRep::assemble(&self.ctx, q, g))
    }

    /// The submodule generated by the columns of `v`.
    pub fn generated_submodule(&self, v: &Mat) -> Mat {
        let gens: Vec<Mat> = self.generators().cloned().collect();
        generated_subspace(&gens, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{projective_indecomposable, Char};
    use crate::scalars::FieldCtx;

    #[test]
    fn radical_layers_of_projective() {
        let c = FieldCtx::new(5, 2, 2).unwrap();
        let p = projective_indecomposable(&c, &Char(vec![0, 0]));
        let rad = Mat::hstack(&[p.x(0), p.x(1)]);
        let rad_basis = p.generated_submodule(&rad);
        assert_eq!(rad_basis.cols(), 3);
        let head = p.quotient(&rad_basis).unwrap();
        assert_eq!(head.dim(), 1);
        let sub = p.submodule(&rad_basis).unwrap();
        assert_eq!(sub.dim(), 3);
        sub.validate().unwrap();
    }

    #[test]
    fn quotient_map_kills_subspace() {
        let c = FieldCtx::new(7, 3, 1).unwrap();
        let f = c.base();
        let u = Mat::from_ints(f, &[vec![1], vec![2], vec![3]]);
        let (q, comp) = quotient_map(&u);
        assert_eq!(comp.len(), 2);
        assert!(q.mul(&u).is_zero());
        assert_eq!(q.rank(), 2);
    }

    #[test]
    fn non_invariant_subspace_is_rejected() {
        let c = FieldCtx::new(5, 2, 1).unwrap();
        let p = projective_indecomposable(&c, &Char(vec![0]));
        let top = Mat::from_ints(c.base(), &[vec![1], vec![0]]);
        assert!(p.submodule(&top).is_err());
        assert!(p.quotient(&top).is_err());
    }
}
