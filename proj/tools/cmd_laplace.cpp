#include <CLI11.hpp>
#include <json.hpp>

#include "common.hpp"
#include "mxc/homopoly.hpp"
#include "mxc/orthant_laplace.hpp"

namespace mxtool {

int cmd_laplace(int argc, char** argv) {
  CLI::App app{"positive-orthant transform of a divergence-free vector polynomial"};
  std::string poly_path, zeta_path, out_path;
  bool exact = false, numeric = false;
  double radius = 0.0, rel_tol = 1e-8;
  std::uint64_t seed = 1;
  app.add_option("--poly", poly_path, "vector polynomial text file")->required();
  app.add_flag("--exact", exact, "exact transform, divisibility verdict and quotient");
  app.add_flag("--numeric", numeric, "truncated-orthant quadrature at a given zeta");
  app.add_option("--zeta", zeta_path, "JSON with \"zeta\" (and optional \"e0\") as [re,im] triples");
  app.add_option("--radius", radius, "truncation radius R (default 40/|zeta|... scaled)");
  app.add_option("--rel-tol", rel_tol, "quadrature refinement tolerance");
  app.add_option("--seed", seed, "seed recorded in the report");
  app.add_option("--out", out_path, "write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitUsage : kExitOk;
  }
  if (!exact && !numeric) exact = true;

  mxc::VecHomoPoly p = mxc::vecpoly_from_text(read_file(poly_path));
  nlohmann::json data;
  CheckList checks;

  if (exact) {
    mxc::RhoPoly transform = mxc::laplace_poly(p);
    auto division = mxc::divides_sigma(transform);
    data["transform"] = mxc::to_text(transform);
    data["transform_degree"] = transform.is_zero() ? -1 : transform.degree();
    data["divisible"] = division.divisible;
    if (division.quotient) data["quotient"] = mxc::to_text(*division.quotient);
    bool pattern = false;
    bool pattern_valid = true;
    try {
      pattern = mxc::divisibility_by_pattern(p);
    } catch (const std::invalid_argument& e) {
      pattern_valid = false;
      data["pattern_note"] = e.what();
    }
    if (pattern_valid) {
      data["pattern"] = pattern;
      checks.add("laplace.pattern-equals-sigma-divisibility", pattern == division.divisible,
                 pattern == division.divisible ? 1.0 : 0.0, 1.0);
    }
    std::cout << "divisible by sigma: " << (division.divisible ? "yes" : "no") << "\n";
  }

  if (numeric) {
    if (zeta_path.empty()) {
      std::cerr << "laplace: --numeric needs --zeta\n";
      return kExitUsage;
    }
    nlohmann::json zj = nlohmann::json::parse(read_file(zeta_path));
    auto zeta = read_cvec3(zj.at("zeta"));
    double zmag = std::sqrt(std::norm(zeta[0]) + std::norm(zeta[1]) + std::norm(zeta[2]));
    std::array<std::complex<double>, 3> e0{zeta[0] / zmag, zeta[1] / zmag, zeta[2] / zmag};
    if (zj.contains("e0")) e0 = read_cvec3(zj.at("e0"));
    double r = radius > 0 ? radius : 60.0 / (0.2 * zmag);
    auto quad = mxc::laplace_numeric(p, e0, zeta, r, rel_tol);
    data["numeric_value"] = {quad.value.real(), quad.value.imag()};
    data["nodes_per_axis"] = quad.nodes_per_axis;
    data["truncated_mass"] = quad.truncated_mass;
    data["magnitude_scale"] = quad.magnitude_scale;
    try {
      auto exact_ref = mxc::laplace_exact_parallel(p, e0, zeta);
      data["exact_reference"] = {exact_ref.real(), exact_ref.imag()};
      double gap = std::abs(quad.value - exact_ref);
      double allow = rel_tol * std::max(std::abs(exact_ref), 1e-3 * quad.magnitude_scale) * 100.0 +
                     quad.truncated_mass;
      checks.add("laplace.quadrature-matches-exact", gap <= allow, gap, allow,
                 "tail allowance included");
    } catch (const std::invalid_argument&) {
      data["exact_reference_note"] = "E0 not parallel to zeta; no closed-form reference";
    }
  }

  nlohmann::json params;
  params["poly"] = poly_path;
  params["mode"] = numeric ? (exact ? "exact+numeric" : "numeric") : "exact";
  return finish_report("laplace", seed, std::move(params), std::move(data), checks, out_path);
}

}  // namespace mxtool
