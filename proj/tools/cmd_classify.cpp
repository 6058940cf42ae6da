#include <CLI11.hpp>
#include <json.hpp>

#include "common.hpp"
#include "mxc/admissibility.hpp"
#include "mxc/field_expansion.hpp"
#include "mxc/taylor_field.hpp"

namespace mxtool {

int cmd_classify(int argc, char** argv) {
  CLI::App app{"admissibility verdict for a field pair"};
  std::string input, out_path;
  bool expansion = false, taylor = false, single = false;
  double tol = 1e-10;
  std::uint64_t seed = 1;
  app.add_option("--input", input, "field JSON file")->required();
  app.add_flag("--expansion", expansion, "input holds wavefunction-ladder coefficients");
  app.add_flag("--taylor", taylor, "input holds Taylor coefficient fields");
  app.add_flag("--single", single, "classify a single field (pair it with itself)");
  app.add_option("--tol", tol, "relative zero threshold");
  app.add_option("--seed", seed, "seed recorded in the report");
  app.add_option("--out", out_path, "write the JSON verdict here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitUsage : kExitOk;
  }
  if (expansion == taylor) {
    std::cerr << "classify: pass exactly one of --expansion / --taylor\n";
    return kExitUsage;
  }
  if (tol <= 0) {
    std::cerr << "classify: --tol must be positive\n";
    return kExitUsage;
  }

  nlohmann::json in = nlohmann::json::parse(read_file(input));
  mxc::Verdict verdict;
  if (expansion) {
    mxc::FieldExpansion f = mxc::FieldExpansion::from_json(in.dump());
    verdict = mxc::classify_expansion(f, tol);
  } else if (single) {
    mxc::TaylorField v = mxc::TaylorField::from_json(in.contains("V") ? in["V"].dump() : in.dump());
    verdict = mxc::classify_single(v, tol);
  } else {
    mxc::TaylorField e = mxc::TaylorField::from_json(in.at("E").dump());
    mxc::TaylorField h = mxc::TaylorField::from_json(in.at("H").dump());
    verdict = mxc::classify_taylor(e, h, tol);
  }

  std::cout << "verdict: " << mxc::to_string(verdict.status) << "  N = " << verdict.N
            << "  attained = " << verdict.attained << "\n";
  if (!verdict.witness.empty()) std::cout << "witness: " << verdict.witness << "\n";

  nlohmann::json params;
  params["input"] = input;
  params["tol"] = tol;
  params["view"] = expansion ? "expansion" : "taylor";
  CheckList checks;  // classification is a result, not a gate
  return finish_report("classify", seed, std::move(params),
                       nlohmann::json::parse(verdict.to_json()), checks, out_path, false);
}

}  // namespace mxtool
