#pragma once

#include <functional>

namespace orderflow::quad {

// Adaptive Simpson on [a,b] for smooth integrands.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10, int max_depth = 40);

// tanh-sinh rule on (a,b); tolerates integrable endpoint singularities.
double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12);

// exp-sinh rule on (0, inf) for integrands decaying at infinity; tolerates an
// integrable singularity at 0.
double exp_sinh_0inf(const std::function<double(double)>& f, double tol = 1e-12);

}  // namespace orderflow::quad
