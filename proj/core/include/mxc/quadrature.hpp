#pragma once

#include <array>
#include <functional>
#include <vector>

namespace mxc {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

/// Gauss-Laguerre rule for integrals of the form
///   int_0^inf e^{-b x} f(x) dx  ~  sum_i w_i f(x_i),
/// i.e. the exponential weight is folded into the weights.
QuadratureRule gauss_laguerre(int n, double b);

/// Nodes and weights of a product rule on a sphere of radius 1:
/// int_{S^2} f = sum w_i f(x_i), exact for polynomials of degree
/// <= 2*n_theta - 1 in the cos(theta) direction.
struct SphereRule {
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
};
SphereRule sphere_product_rule(int n_theta, int n_phi);

/// Tensor Gauss-Legendre quadrature over the box [lo, hi].
double box_quadrature_weighted(const std::array<double, 3>& lo, const std::array<double, 3>& hi,
                               int n_per_axis,
                               const std::function<double(const std::array<double, 3>&)>& f);

}  // namespace mxc
