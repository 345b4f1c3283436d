#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "tvdist/distribution.hpp"
#include "tvdist/estimator.hpp"
#include "tvdist/oracle.hpp"

namespace tvdist {

// Instance document: {"p": [[...], ...], "q": [[...], ...]}.
struct InstanceFile {
  std::vector<std::vector<double>> p;
  std::vector<std::vector<double>> q;

  friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

// Throws parse_error on malformed text or a wrong document shape.
InstanceFile parse_instance(std::string_view text);
// Throws io_failure when the file cannot be read, parse_error otherwise.
InstanceFile read_instance_file(const std::filesystem::path& path);
std::string serialize_instance(const InstanceFile& instance);

// Validates both sides and checks they share a shape.
Instance to_instance(const InstanceFile& file);
InstanceFile to_instance_file(const Instance& instance);

// FNV-1a 64 of the compact serialization, as 16 hex digits.
std::string instance_hash(const InstanceFile& instance);

struct ConfigEcho {
  std::optional<double> epsilon;
  std::optional<double> delta;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::optional<std::uint64_t> max_states;

  friend bool operator==(const ConfigEcho&, const ConfigEcho&) = default;
};

struct ExactResult {
  double exact_tv = 0.0;
  std::uint64_t states = 0;

  friend bool operator==(const ExactResult&, const ExactResult&) = default;
};

struct InfoResult {
  std::vector<double> per_coordinate_tv;
  double pr_diff = 0.0;
  std::uint64_t samples_for_config = 0;
  bool identical = false;
  std::uint64_t states = 0;  // saturating
  std::string note;

  friend bool operator==(const InfoResult&, const InfoResult&) = default;
};

using ReportResult = std::variant<EstimateResult, ExactResult, InfoResult>;

struct RunReport {
  std::string command;
  std::string instance_path;
  std::string instance_hash;
  ConfigEcho config;
  ReportResult result;
  double wall_seconds = 0.0;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

nlohmann::json to_json(const RunReport& report);
// Throws parse_error on a document that does not match the report layout.
RunReport run_report_from_json(const nlohmann::json& doc);

}  // namespace tvdist
