// quadrature.hpp -- adaptive panel quadrature for complex-valued integrands
// of a real parameter, with an evaluation budget and error estimate.

#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace bwh {

using cplx = std::complex<double>;

struct QuadratureFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadResult {
    cplx value{0.0, 0.0};
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

struct QuadOptions {
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
    std::size_t max_evaluations = 2'000'000;
    int max_depth = 40;
};

// Adaptive bisection with an embedded Gauss(7)/Kronrod-style error estimate
// on each panel (15-point rule vs its 7-point subset).
QuadResult integrate_adaptive(const std::function<cplx(double)>& f, double a, double b,
                              const QuadOptions& opt = {});

// Convenience: integrate over a list of contiguous breakpoints.
QuadResult integrate_segments(const std::function<cplx(double)>& f,
                              const std::vector<double>& breakpoints, const QuadOptions& opt = {});

}  // namespace bwh
