use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::models::{symbol_extract, QParameters};

use super::winding::winding_number;

/// Singular values below this count as zero when counting kernels.
const KERNEL_THRESHOLD: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct IndexReport {
    pub by_symbol: i64,
    pub by_kernel: i64,
}

fn kernel_dim(m: &ComplexMatrix, cols: usize) -> usize {
    let idx: Vec<usize> = (0..cols).collect();
    let all_rows: Vec<usize> = (0..m.rows()).collect();
    let sub = m.submatrix(&all_rows, &idx);
    cols - sub.rank(KERNEL_THRESHOLD)
}

/// `dim ker − dim coker` of a banded operator, counted on its first
/// `N − band` columns, where the finite section sees no boundary effect.
pub fn kernel_index(t: &ComplexMatrix, band: usize) -> Result<i64> {
    let n = t.rows();
    if !t.is_square() || band >= n {
        return Err(Error::KindMismatch("kernel counting needs a square matrix wider than its band".into()));
    }
    let cols = n - band;
    Ok(kernel_dim(t, cols) as i64 - kernel_dim(&t.adjoint(), cols) as i64)
}

/// Fredholm index of a Toeplitz-type matrix: `−winding(σ(t))`, cross-checked
/// against kernel counting away from the symbol band and the truncation margin.
pub fn fredholm_index(t: &ComplexMatrix, params: &QParameters) -> Result<i64> {
    Ok(fredholm_report(t, params)?.by_symbol)
}

pub(crate) fn fredholm_report(t: &ComplexMatrix, params: &QParameters) -> Result<IndexReport> {
    let symbol = symbol_extract(t, params)?;
    let by_symbol = -winding_number(&symbol)?;
    let band = symbol.max_abs_degree().max(1) as usize + params.margin;
    let by_kernel = kernel_index(t, band)?;
    if by_symbol != by_kernel {
        return Err(Error::NotFredholmAtTruncation { by_symbol, by_kernel });
    }
    Ok(IndexReport { by_symbol, by_kernel })
}

impl IndexReport {
    pub fn of(t: &ComplexMatrix, params: &QParameters) -> Result<Self> {
        fredholm_report(t, params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::toeplitz_power;
    use crate::laurent::LaurentElement;
    use crate::models::toeplitz_of;
    use crate::C64;

    fn p() -> QParameters {
        QParameters::new(0.5, 32, 8, 2).unwrap()
    }

    #[test]
    fn examples() {
        let p = p();
        assert_eq!(fredholm_index(&toeplitz_power(32, -1), &p).unwrap(), 1);
        assert_eq!(fredholm_index(&toeplitz_power(32, 2), &p).unwrap(), -2);
        assert_eq!(fredholm_index(&ComplexMatrix::identity(32), &p).unwrap(), 0);
        for n in -3..=3 {
            let r = IndexReport::of(&toeplitz_power(32, n), &p).unwrap();
            assert_eq!((r.by_symbol, r.by_kernel), (-n, -n));
        }
    }

    #[test]
    fn non_monomial_symbols() {
        let p = p();
        let v = LaurentElement::from_terms([(0, C64::new(0.5, 0.0)), (1, C64::new(1.0, 0.0))]);
        assert_eq!(fredholm_index(&toeplitz_of(&v, 32), &p).unwrap(), -1);
        let v = LaurentElement::from_terms([(0, C64::new(2.0, 0.0)), (-1, C64::new(1.0, 0.0))]);
        assert_eq!(fredholm_index(&toeplitz_of(&v, 32), &p).unwrap(), 0);
    }
}
