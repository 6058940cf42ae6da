#include "mxc/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <gsl/gsl_integration.h>

namespace mxc {

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1");
  gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(static_cast<size_t>(n));
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double xi, wi;
    gsl_integration_glfixed_point(a, b, static_cast<size_t>(i), &xi, &wi, t);
    rule.nodes[static_cast<std::size_t>(i)] = xi;
    rule.weights[static_cast<std::size_t>(i)] = wi;
  }
  gsl_integration_glfixed_table_free(t);
  return rule;
}

QuadratureRule gauss_laguerre(int n, double b) {
  if (n < 1) throw std::invalid_argument("gauss_laguerre: need n >= 1");
  if (!(b > 0)) throw std::invalid_argument("gauss_laguerre: need decay rate b > 0");
  gsl_integration_fixed_workspace* w = gsl_integration_fixed_alloc(
      gsl_integration_fixed_laguerre, static_cast<size_t>(n), 0.0, b, 0.0, 0.0);
  if (!w) throw std::runtime_error("gauss_laguerre: workspace allocation failed");
  QuadratureRule rule;
  rule.nodes.assign(gsl_integration_fixed_nodes(w), gsl_integration_fixed_nodes(w) + n);
  rule.weights.assign(gsl_integration_fixed_weights(w), gsl_integration_fixed_weights(w) + n);
  gsl_integration_fixed_free(w);
  return rule;
}

SphereRule sphere_product_rule(int n_theta, int n_phi) {
  QuadratureRule ct = gauss_legendre(n_theta, -1.0, 1.0);  // cos(theta) nodes
  SphereRule rule;
  rule.points.reserve(static_cast<std::size_t>(n_theta * n_phi));
  rule.weights.reserve(static_cast<std::size_t>(n_theta * n_phi));
  const double dphi = 2.0 * std::numbers::pi / n_phi;
  for (int i = 0; i < n_theta; ++i) {
    double c = ct.nodes[static_cast<std::size_t>(i)];
    double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (int j = 0; j < n_phi; ++j) {
      double phi = dphi * j;
      rule.points.push_back({s * std::cos(phi), s * std::sin(phi), c});
      rule.weights.push_back(ct.weights[static_cast<std::size_t>(i)] * dphi);
    }
  }
  return rule;
}

double box_quadrature_weighted(const std::array<double, 3>& lo, const std::array<double, 3>& hi,
                               int n_per_axis,
                               const std::function<double(const std::array<double, 3>&)>& f) {
  std::array<QuadratureRule, 3> r;
  for (int d = 0; d < 3; ++d)
    r[static_cast<std::size_t>(d)] =
        gauss_legendre(n_per_axis, lo[static_cast<std::size_t>(d)], hi[static_cast<std::size_t>(d)]);
  double acc = 0.0;
  for (int i = 0; i < n_per_axis; ++i)
    for (int j = 0; j < n_per_axis; ++j)
      for (int k = 0; k < n_per_axis; ++k) {
        std::array<double, 3> x{r[0].nodes[static_cast<std::size_t>(i)],
                                r[1].nodes[static_cast<std::size_t>(j)],
                                r[2].nodes[static_cast<std::size_t>(k)]};
        acc += r[0].weights[static_cast<std::size_t>(i)] * r[1].weights[static_cast<std::size_t>(j)] *
               r[2].weights[static_cast<std::size_t>(k)] * f(x);
      }
  return acc;
}

}  // namespace mxc
