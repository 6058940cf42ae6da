#pragma once

#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace mxtool {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCheckFailed = 2;

struct CheckList {
  nlohmann::json checks = nlohmann::json::array();
  bool all_passed = true;

  void add(const std::string& id, bool passed, double value, double threshold,
           const std::string& note = "") {
    nlohmann::json c;
    c["id"] = id;
    c["passed"] = passed;
    c["value"] = value;
    c["threshold"] = threshold;
    if (!note.empty()) c["note"] = note;
    checks.push_back(std::move(c));
    all_passed = all_passed && passed;
    std::cout << (passed ? "[PASS] " : "[FAIL] ") << id << "  value " << value << "  threshold "
              << threshold << (note.empty() ? "" : "  (" + note + ")") << "\n";
  }
  void info(const std::string& id, double value, const std::string& note = "") {
    nlohmann::json c;
    c["id"] = id;
    c["value"] = value;
    if (!note.empty()) c["note"] = note;
    checks.push_back(std::move(c));
    std::cout << "[info] " << id << " = " << value << (note.empty() ? "" : "  (" + note + ")")
              << "\n";
  }
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

/// Assembles the standard report envelope and writes it when a path is set.
inline int finish_report(const std::string& command, std::uint64_t seed, nlohmann::json params,
                         nlohmann::json data, const CheckList& checks, const std::string& out_path,
                         bool checks_required = true) {
  nlohmann::json report;
  report["command"] = command;
  report["seed"] = seed;
  report["params"] = std::move(params);
  report["checks"] = checks.checks;
  report["data"] = std::move(data);
  report["passed"] = checks.all_passed;
  if (!out_path.empty()) write_file(out_path, report.dump(2) + "\n");
  if (out_path.empty()) std::cout << report["data"].dump(2) << "\n";
  if (checks_required && !checks.all_passed) return kExitCheckFailed;
  return kExitOk;
}

inline std::array<std::complex<double>, 3> read_cvec3(const nlohmann::json& j) {
  std::array<std::complex<double>, 3> v;
  for (int d = 0; d < 3; ++d)
    v[static_cast<std::size_t>(d)] = {j.at(static_cast<std::size_t>(d)).at(0).get<double>(),
                                      j.at(static_cast<std::size_t>(d)).at(1).get<double>()};
  return v;
}

int cmd_classify(int argc, char** argv);
int cmd_laplace(int argc, char** argv);
int cmd_cgo_verify(int argc, char** argv);
int cmd_ortho_check(int argc, char** argv);
int cmd_decay_sweep(int argc, char** argv);
int cmd_contradiction_report(int argc, char** argv);

}  // namespace mxtool
