#include "cellrate/banded.hpp"

#include <cmath>
#include <stdexcept>

#include "cellrate/errors.hpp"

namespace cellrate {

BandedHermitianMatrix::BandedHermitianMatrix(int n, int bandwidth)
    : n_(n), bandwidth_(bandwidth), stride_(static_cast<std::size_t>(bandwidth) + 1) {
    if (n < 1) throw std::invalid_argument("BandedHermitianMatrix: n must be >= 1");
    if (bandwidth < 0 || bandwidth >= n)
        throw std::invalid_argument("BandedHermitianMatrix: bandwidth must lie in [0, n)");
    data_.assign(stride_ * static_cast<std::size_t>(n), {0.0, 0.0});
}

double BandedHermitianMatrix::cholesky_log2_det() {
    double log2_det = 0.0;
    for (int j = 0; j < n_; ++j) {
        const int i_max = std::min(j + bandwidth_, n_ - 1);
        for (int i = j; i <= i_max; ++i) {
            std::complex<double> sum = at(i - j, j);
            const int k_min = std::max(i - bandwidth_, 0);
            for (int k = k_min; k < j; ++k) sum -= at(i - k, k) * std::conj(at(j - k, k));
            if (i == j) {
                const double pivot = sum.real();
                if (!(pivot > 0.0) || !std::isfinite(pivot))
                    throw NumericalFailureError("cholesky_log2_det: non-positive pivot");
                const double root = std::sqrt(pivot);
                at(0, j) = root;
                log2_det += std::log2(pivot);
            } else {
                at(i - j, j) = sum / at(0, j).real();
            }
        }
    }
    return log2_det;
}

}  // namespace cellrate
