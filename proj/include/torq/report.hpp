#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "torq/fields.hpp"
#include "torq/frenet.hpp"
#include "torq/residual.hpp"
#include "torq/slant.hpp"
#include "torq/torqued.hpp"

namespace torq {

using json = nlohmann::ordered_json;

/// JSON report with fixed top-level blocks. Everything except `metadata` is
/// a deterministic function of the inputs.
struct Report {
  json input = json::object();
  json frenet = nullptr;
  json field_classification = nullptr;
  json slant = nullptr;
  json torqued = nullptr;
  json classification_branch = nullptr;
  std::vector<Residual> residuals;
  std::vector<std::string> diagnostics;
  json metadata = json::object();

  void add(std::string name, double value, double tol, bool reduced = false);
  void add(const std::vector<Residual>& lines, const std::string& prefix = {});
  /// Every residual finite and below its tolerance.
  bool passed() const;

  json payload() const;
  json to_json() const;
};

json to_json(const Residual& r);
json frenet_json(const FrenetData& frenet);
json field_json(const TorseFormingReport& report);
json slant_json(const SlantReport& report);
json system_json(const SystemCheck& check);
json euclidean_json(const EuclideanSlantReport& report);
json torqued_json(const TorquedReport& report);

/// Tool name, version and UTC timestamp.
json default_metadata();

}  // namespace torq
