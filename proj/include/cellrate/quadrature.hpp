#pragma once

#include <functional>
#include <vector>

namespace cellrate {

// Gauss-Legendre nodes and weights on [-1,1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Computes the n-point rule by Newton iteration on the Legendre recurrence.
GaussLegendreRule gauss_legendre(int n);

// Composite Gauss-Legendre over [0,1]: `panels` uniform panels with an
// n-point rule on each. The default 64x64 (4096 evaluations) drives the
// trigonometric-rational integrands here to well below 1e-10.
double integrate01(const std::function<double(double)>& f, int panels = 64, int nodes = 64);

}  // namespace cellrate
