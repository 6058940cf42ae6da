#pragma once

#include <optional>
#include <vector>

#include "mxc/rational.hpp"

namespace mxc {

using GRVector = std::vector<GaussianRational>;
using GRMatrix = std::vector<GRVector>;
using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;

/// Solves A x = b exactly (A may be tall/overdetermined). Returns a solution
/// if the system is consistent, std::nullopt otherwise.
std::optional<GRVector> solve_exact(GRMatrix a, GRVector b);

/// Basis of the rational nullspace of A (rows = vectors).
QMatrix nullspace(QMatrix a);

}  // namespace mxc
