#include "graphmem/cli.hpp"

namespace graphmem::cli {

nlohmann::json to_json(const ExperimentConfig& config) {
  return nlohmann::json{
      {"command", config.command},
      {"params", config.params},
      {"master_seed", config.master_seed},
      {"output_path", config.output_path},
      {"format", config.format == OutputFormat::csv ? "csv" : "json"},
      {"worker_count", config.worker_count},
      {"deterministic_order", config.deterministic_order},
  };
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  auto field = [&](const char* key) -> const nlohmann::json& {
    if (!j.contains(key)) throw ConfigError(key, "missing");
    return j.at(key);
  };
  try {
    c.command = field("command").get<std::string>();
    c.params = field("params");
    c.master_seed = field("master_seed").get<std::uint64_t>();
    c.output_path = field("output_path").get<std::string>();
    const auto fmt = field("format").get<std::string>();
    if (fmt != "csv" && fmt != "json") throw ConfigError("format", "expected csv or json");
    c.format = fmt == "csv" ? OutputFormat::csv : OutputFormat::json;
    c.worker_count = field("worker_count").get<unsigned>();
    c.deterministic_order = field("deterministic_order").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config", e.what());
  }
  if (!c.params.is_object()) throw ConfigError("params", "expected an object");
  return c;
}

}  // namespace graphmem::cli
