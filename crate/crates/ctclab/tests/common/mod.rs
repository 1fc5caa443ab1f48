//! Test-side oracles built from first principles: explicit mixed-radix digit
//! arithmetic and exhaustive sums over basis configurations. Nothing here
//! shares code with the library's partial traces or circuit plumbing, so an
//! agreement between the two is evidence, not tautology.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub const R: f64 = std::f64::consts::FRAC_1_SQRT_2;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Big-endian digit decomposition: subsystem 0 is the most significant.
fn digits(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for p in (0..dims.len()).rev() {
        out[p] = index % dims[p];
        index /= dims[p];
    }
    out
}

fn pack(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (d, dim)| acc * dim + d)
}

/// The contraction by its definition, `C[i,j] = sum_k <i,k|M|j,k>`: every
/// pair of composite indices is visited, pairs whose traced digits disagree
/// contribute nothing, the rest accumulate into the kept-digit entry.
pub fn contraction_oracle(
    matrix: &DMatrix<Complex64>,
    dims: &[usize],
    traced: &[usize],
) -> DMatrix<Complex64> {
    let total: usize = dims.iter().product();
    assert_eq!(matrix.nrows(), total);
    assert_eq!(matrix.ncols(), total);
    let kept: Vec<usize> = (0..dims.len()).filter(|p| !traced.contains(p)).collect();
    let kept_dims: Vec<usize> = kept.iter().map(|&p| dims[p]).collect();
    let kept_total: usize = kept_dims.iter().product();

    let mut out = DMatrix::zeros(kept_total, kept_total);
    for row in 0..total {
        let rd = digits(row, dims);
        for col in 0..total {
            let cd = digits(col, dims);
            if traced.iter().any(|&p| rd[p] != cd[p]) {
                continue;
            }
            let rk: Vec<usize> = kept.iter().map(|&p| rd[p]).collect();
            let ck: Vec<usize> = kept.iter().map(|&p| cd[p]).collect();
            out[(pack(&rk, &kept_dims), pack(&ck, &kept_dims))] += matrix[(row, col)];
        }
    }
    out
}

/// One traversal of the teleporter by exhaustive enumeration of the sixteen
/// basis configurations of (entering, emerged, both resource wires). Returns
/// the unnormalized amplitudes left on the emerged wire:
///
///   out[e'] = sum conj(detect[b'][r]) * u[(b', e'), (b, e)]
///                 * input[b] * resource[e][r]
///
/// with `u` indexed big-endian on (entering, emerged). The squared norm of
/// the result is the acceptance probability of the forced detection.
pub fn traversal_oracle(
    input: [Complex64; 2],
    interaction: &DMatrix<Complex64>,
    resource: [[Complex64; 2]; 2],
    detect: [[Complex64; 2]; 2],
) -> [Complex64; 2] {
    assert_eq!(interaction.nrows(), 4);
    assert_eq!(interaction.ncols(), 4);
    let mut out = [Complex64::new(0.0, 0.0); 2];
    for e_out in 0..2 {
        for b_out in 0..2 {
            for r in 0..2 {
                for b_in in 0..2 {
                    for e_in in 0..2 {
                        out[e_out] += detect[b_out][r].conj()
                            * interaction[(b_out * 2 + e_out, b_in * 2 + e_in)]
                            * input[b_in]
                            * resource[e_in][r];
                    }
                }
            }
        }
    }
    out
}

/// The anticorrelated pair (|01> + |10>)/sqrt(2) as a two-index table.
pub fn anticorrelated_pair() -> [[Complex64; 2]; 2] {
    [[c(0.0), c(R)], [c(R), c(0.0)]]
}

pub fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    assert_eq!(a.shape(), b.shape());
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}
