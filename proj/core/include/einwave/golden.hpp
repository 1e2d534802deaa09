#pragma once

#include <cstddef>
#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

namespace einwave {

/// Reference quantities at epsilon = 0.1, alpha = 0.4, recomputed at tight
/// tolerances (ode_tol 1e-12, quad_tol 1e-12). Layout:
///   {"params": {...}, "tolerances": {...}, "values": {key: number, ...}}
nlohmann::json compute_golden();

/// dir / "reference.json".
std::filesystem::path golden_file(const std::filesystem::path& dir);

/// $EINWAVE_GOLDEN_DIR if set, otherwise `fallback`.
std::filesystem::path golden_dir(const std::filesystem::path& fallback);

struct GoldenComparison {
  std::string path;
  bool found = false;
  std::size_t compared = 0;
  std::size_t missing = 0;   // keys in one set but not the other
  double max_rel_drift = 0.0;
  std::string worst_key;
  bool pass = false;
};

/// Relative drift |a - b| / max(|a|, |b|) per key; pass iff no key is
/// missing and every drift is within rel_tol.
GoldenComparison compare_golden(const nlohmann::json& stored, const nlohmann::json& fresh,
                                double rel_tol = 1e-8);

nlohmann::json load_json(const std::filesystem::path& path);
void save_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace einwave
