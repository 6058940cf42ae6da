#include <cstring>
#include <iostream>
#include <vector>

#include <json.hpp>

#include "common.hpp"

namespace {

void usage() {
  std::cout << "mxcorner - corner-scattering toolkit for the Maxwell system\n"
               "\n"
               "usage: mxcorner <command> [options]\n"
               "\n"
               "commands:\n"
               "  classify              admissibility verdict for a field pair\n"
               "  laplace               positive-orthant transform of a vector polynomial\n"
               "  cgo-verify            CGO solver sweep with residual and decay checks\n"
               "  ortho-check           orthogonality identity by quadrature\n"
               "  decay-sweep           corner-term homogeneity sweep\n"
               "  contradiction-report  I0..I3 dominance table over a zeta sweep\n"
               "  run                   dispatch a command from a JSON config file\n"
               "\n"
               "run 'mxcorner <command> --help' for the command options.\n";
}

int dispatch(const std::string& cmd, int argc, char** argv) {
  if (cmd == "classify") return mxtool::cmd_classify(argc, argv);
  if (cmd == "laplace") return mxtool::cmd_laplace(argc, argv);
  if (cmd == "cgo-verify") return mxtool::cmd_cgo_verify(argc, argv);
  if (cmd == "ortho-check") return mxtool::cmd_ortho_check(argc, argv);
  if (cmd == "decay-sweep") return mxtool::cmd_decay_sweep(argc, argv);
  if (cmd == "contradiction-report") return mxtool::cmd_contradiction_report(argc, argv);
  std::cerr << "unknown command '" << cmd << "'\n";
  usage();
  return mxtool::kExitUsage;
}

// `run --config file.json`: {"command": "...", "args": {"flag": value, ...}}
int run_from_config(int argc, char** argv) {
  std::string path;
  for (int i = 0; i < argc; ++i) {
    if (std::strcmp(argv[i], "--config") == 0 && i + 1 < argc) path = argv[i + 1];
  }
  if (path.empty()) {
    std::cerr << "run: missing --config <file.json>\n";
    return mxtool::kExitUsage;
  }
  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(mxtool::read_file(path));
  } catch (const std::exception& e) {
    std::cerr << "run: " << e.what() << "\n";
    return mxtool::kExitUsage;
  }
  if (!cfg.contains("command")) {
    std::cerr << "run: config needs a \"command\" entry\n";
    return mxtool::kExitUsage;
  }
  std::string cmd = cfg["command"].get<std::string>();
  std::vector<std::string> args{"mxcorner-" + cmd};
  if (cfg.contains("args"))
    for (const auto& [key, value] : cfg["args"].items()) {
      args.push_back("--" + key);
      if (value.is_boolean()) {
        if (!value.get<bool>()) args.pop_back();
        continue;
      }
      if (value.is_string())
        args.push_back(value.get<std::string>());
      else
        args.push_back(value.dump());
    }
  std::vector<char*> cargs;
  for (auto& s : args) cargs.push_back(s.data());
  return dispatch(cmd, static_cast<int>(cargs.size()), cargs.data());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    usage();
    return mxtool::kExitUsage;
  }
  std::string cmd = argv[1];
  if (cmd == "--help" || cmd == "-h" || cmd == "help") {
    usage();
    return mxtool::kExitOk;
  }
  try {
    if (cmd == "run") return run_from_config(argc - 1, argv + 1);
    return dispatch(cmd, argc - 1, argv + 1);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return mxtool::kExitUsage;
  }
}
