#include "tvdist/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "tvdist/error.hpp"

namespace tvdist {

using nlohmann::json;

namespace {

std::vector<std::vector<double>> read_side(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) {
    throw Error(ErrorKind::parse_error, std::string("missing key \"") + key + "\"");
  }
  if (!it->is_array()) {
    throw Error(ErrorKind::parse_error, std::string("\"") + key + "\" must be an array");
  }
  std::vector<std::vector<double>> side;
  side.reserve(it->size());
  for (std::size_t i = 0; i < it->size(); ++i) {
    const json& row = (*it)[i];
    if (!row.is_array()) {
      throw Error(ErrorKind::parse_error,
                  std::string(key) + ", coordinate " + std::to_string(i + 1) +
                      ": expected an array of probabilities",
                  i);
    }
    std::vector<double> probs;
    probs.reserve(row.size());
    for (const json& x : row) {
      if (!x.is_number()) {
        throw Error(ErrorKind::parse_error,
                    std::string(key) + ", coordinate " + std::to_string(i + 1) +
                        ": probabilities must be numbers",
                    i);
      }
      probs.push_back(x.get<double>());
    }
    side.push_back(std::move(probs));
  }
  return side;
}

json instance_json(const InstanceFile& instance) {
  return json{{"p", instance.p}, {"q", instance.q}};
}

ProductDistribution validate_side(const std::vector<std::vector<double>>& raw,
                                  const char* name) {
  try {
    return validate(raw);
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(name) + ": " + e.what(), e.coordinate());
  }
}

}  // namespace

InstanceFile parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::parse_error, std::string("malformed instance: ") + e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorKind::parse_error, "instance must be an object with keys \"p\" and \"q\"");
  }
  return InstanceFile{read_side(doc, "p"), read_side(doc, "q")};
}

InstanceFile read_instance_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::io_failure, "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw Error(ErrorKind::io_failure, "failed reading " + path.string());
  }
  return parse_instance(buffer.str());
}

std::string serialize_instance(const InstanceFile& instance) {
  return instance_json(instance).dump() + "\n";
}

Instance to_instance(const InstanceFile& file) {
  Instance instance{validate_side(file.p, "p"), validate_side(file.q, "q")};
  check_same_shape(instance.p, instance.q);
  return instance;
}

InstanceFile to_instance_file(const Instance& instance) {
  return InstanceFile{instance.p.to_raw(), instance.q.to_raw()};
}

std::string instance_hash(const InstanceFile& instance) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : instance_json(instance).dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

namespace {

json estimate_json(const EstimateResult& r) {
  json j{{"type", "estimate"},
         {"method", std::string(to_string(r.method))},
         {"estimate", r.estimate},
         {"mean_f", r.mean_f},
         {"samples_used", r.samples_used},
         {"pr_diff", r.pr_diff},
         {"per_coordinate_tv", r.per_coordinate_tv},
         {"elapsed_seconds", r.elapsed_seconds}};
  if (r.diagnostics) {
    j["diagnostics"] = {{"steps", r.diagnostics->steps},
                        {"max_normalization_error",
                         r.diagnostics->max_normalization_error}};
  }
  return j;
}

EstimateResult estimate_from_json(const json& j) {
  EstimateResult r;
  const auto method = j.at("method").get<std::string>();
  if (method == "greedy_coupling") {
    r.method = EstimateMethod::greedy_coupling;
  } else if (method == "naive") {
    r.method = EstimateMethod::naive;
  } else {
    throw Error(ErrorKind::parse_error, "unknown estimate method " + method);
  }
  r.estimate = j.at("estimate").get<double>();
  r.mean_f = j.at("mean_f").get<double>();
  r.samples_used = j.at("samples_used").get<std::uint64_t>();
  r.pr_diff = j.at("pr_diff").get<double>();
  r.per_coordinate_tv = j.at("per_coordinate_tv").get<std::vector<double>>();
  r.elapsed_seconds = j.at("elapsed_seconds").get<double>();
  if (const auto d = j.find("diagnostics"); d != j.end()) {
    r.diagnostics = SamplerDiagnostics{
        d->at("steps").get<std::uint64_t>(),
        d->at("max_normalization_error").get<double>()};
  }
  return r;
}

json result_json(const ReportResult& result) {
  struct Visitor {
    json operator()(const EstimateResult& r) const { return estimate_json(r); }
    json operator()(const ExactResult& r) const {
      return {{"type", "exact"}, {"exact_tv", r.exact_tv}, {"states", r.states}};
    }
    json operator()(const InfoResult& r) const {
      return {{"type", "info"},
              {"per_coordinate_tv", r.per_coordinate_tv},
              {"pr_diff", r.pr_diff},
              {"samples_for_config", r.samples_for_config},
              {"identical", r.identical},
              {"states", r.states},
              {"note", r.note}};
    }
  };
  return std::visit(Visitor{}, result);
}

ReportResult result_from_json(const json& j) {
  const auto type = j.at("type").get<std::string>();
  if (type == "estimate") return estimate_from_json(j);
  if (type == "exact") {
    return ExactResult{j.at("exact_tv").get<double>(), j.at("states").get<std::uint64_t>()};
  }
  if (type == "info") {
    InfoResult r;
    r.per_coordinate_tv = j.at("per_coordinate_tv").get<std::vector<double>>();
    r.pr_diff = j.at("pr_diff").get<double>();
    r.samples_for_config = j.at("samples_for_config").get<std::uint64_t>();
    r.identical = j.at("identical").get<bool>();
    r.states = j.at("states").get<std::uint64_t>();
    r.note = j.at("note").get<std::string>();
    return r;
  }
  throw Error(ErrorKind::parse_error, "unknown result type " + type);
}

template <class T>
void put(json& j, const char* key, const std::optional<T>& value) {
  if (value) j[key] = *value;
}

template <class T>
std::optional<T> get_optional(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) return std::nullopt;
  return it->get<T>();
}

}  // namespace

json to_json(const RunReport& report) {
  json config = json::object();
  put(config, "epsilon", report.config.epsilon);
  put(config, "delta", report.config.delta);
  put(config, "samples", report.config.samples);
  put(config, "seed", report.config.seed);
  put(config, "workers", report.config.workers);
  put(config, "max_states", report.config.max_states);
  return {{"command", report.command},
          {"instance", {{"path", report.instance_path}, {"hash", report.instance_hash}}},
          {"config", config},
          {"result", result_json(report.result)},
          {"timing", {{"wall_seconds", report.wall_seconds}}}};
}

RunReport run_report_from_json(const json& doc) {
  try {
    RunReport report;
    report.command = doc.at("command").get<std::string>();
    report.instance_path = doc.at("instance").at("path").get<std::string>();
    report.instance_hash = doc.at("instance").at("hash").get<std::string>();
    const json& config = doc.at("config");
    report.config.epsilon = get_optional<double>(config, "epsilon");
    report.config.delta = get_optional<double>(config, "delta");
    report.config.samples = get_optional<std::uint64_t>(config, "samples");
    report.config.seed = get_optional<std::uint64_t>(config, "seed");
    report.config.workers = get_optional<unsigned>(config, "workers");
    report.config.max_states = get_optional<std::uint64_t>(config, "max_states");
    report.result = result_from_json(doc.at("result"));
    report.wall_seconds = doc.at("timing").at("wall_seconds").get<double>();
    return report;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse_error, std::string("malformed report: ") + e.what());
  }
}

}  // namespace tvdist
