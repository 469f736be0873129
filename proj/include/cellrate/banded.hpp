#pragma once

#include <complex>
#include <vector>

namespace cellrate {

/// Hermitian positive-definite matrix stored by its lower band:
/// entry(j + d, j) for d = 0..bandwidth. Supports an in-place Cholesky
/// factorization that accumulates the log-determinant; O(n * bandwidth^2).
class BandedHermitianMatrix {
  public:
    BandedHermitianMatrix(int n, int bandwidth);

    int size() const { return n_; }
    int bandwidth() const { return bandwidth_; }

    // A(j+d, j); d in [0, bandwidth], j+d < n.
    std::complex<double>& at(int d, int j) { return data_[static_cast<std::size_t>(j) * stride_ + d]; }
    const std::complex<double>& at(int d, int j) const {
        return data_[static_cast<std::size_t>(j) * stride_ + d];
    }

    /// Factors A = L L^H in place and returns log2(det A). Throws
    /// NumericalFailureError if a pivot loses positive-definiteness.
    double cholesky_log2_det();

  private:
    int n_;
    int bandwidth_;
    std::size_t stride_;
    std::vector<std::complex<double>> data_;
};

}  // namespace cellrate
