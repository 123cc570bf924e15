#include "infoflow/config.hpp"

#include <charconv>
#include <set>
#include <sstream>

#include "infoflow/io.hpp"

namespace infoflow {

std::string to_string(IngestMode mode) {
  return mode == IngestMode::kFinals ? "finals" : "increments";
}

KeyValues parse_key_values(std::string_view text) {
  KeyValues kv;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(std::string_view(t).substr(0, eq));
    std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    if (!kv.emplace(key, value).second) {
      throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
  }
  return kv;
}

KeyValues read_config_file(const std::filesystem::path& path) {
  try {
    return parse_key_values(read_file(path));
  } catch (const DataError& e) {
    throw ConfigError(e.what());
  }
}

namespace {

double as_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
    throw ConfigError("config key '" + key + "': '" + v + "' is not a number");
  }
  return out;
}

std::int64_t as_int(const std::string& key, const std::string& v) {
  std::int64_t out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
    throw ConfigError("config key '" + key + "': '" + v + "' is not an integer");
  }
  return out;
}

std::uint64_t as_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
    throw ConfigError("config key '" + key + "': '" + v + "' is not an unsigned integer");
  }
  return out;
}

std::size_t as_count(const std::string& key, const std::string& v) {
  return static_cast<std::size_t>(as_u64(key, v));
}

bool as_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config key '" + key + "': '" + v + "' is not a boolean");
}

template <class F>
auto wrap(const std::string& key, F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("config key '" + key + "': " + e.what());
  }
}

}  // namespace

RunConfig resolve_config(const KeyValues& values) {
  static const std::set<std::string> kKnown = {
      "p_l0", "p_d0", "p_r0", "p_s", "E0", "T_max", "phi.variant", "phi.c", "phi.a",
      "extended_reactions", "p_ref0", "seed", "replicates", "horizon", "max_agents", "metric",
      "flow", "method", "enum", "lifetime", "mode", "bin_width", "out", "input", "store", "pmf",
      "hist"};
  for (const auto& [key, _] : values) {
    if (!kKnown.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  auto get = [&values](const char* key) -> const std::string* {
    const auto it = values.find(key);
    return it == values.end() ? nullptr : &it->second;
  };

  RunConfig cfg;
  ModelParams& m = cfg.model;
  if (auto v = get("p_l0")) m.p_l0 = as_double("p_l0", *v);
  if (auto v = get("p_d0")) m.p_d0 = as_double("p_d0", *v);
  if (auto v = get("p_r0")) m.p_r0 = as_double("p_r0", *v);
  if (auto v = get("p_s")) m.p_s = as_double("p_s", *v);
  if (auto v = get("E0")) m.e0 = as_int("E0", *v);
  if (auto v = get("T_max")) m.t_max = as_int("T_max", *v);
  if (auto v = get("extended_reactions")) m.extended_reactions = as_bool("extended_reactions", *v);
  if (auto v = get("p_ref0")) m.p_ref0 = as_double("p_ref0", *v);

  const std::string variant = get("phi.variant") ? *get("phi.variant") : "saturating";
  const double c = get("phi.c") ? as_double("phi.c", *get("phi.c")) : static_cast<double>(m.e0);
  if (variant == "saturating") {
    m.phi = wrap("phi.c", [&] { return ResponseCurve::saturating(c); });
  } else if (variant == "linear-capped") {
    m.phi = wrap("phi.c", [&] { return ResponseCurve::linear_capped(c); });
  } else if (variant == "constant") {
    const double a = get("phi.a") ? as_double("phi.a", *get("phi.a")) : 1.0;
    m.phi = wrap("phi.a", [&] { return ResponseCurve::constant(a); });
  } else {
    throw ConfigError("config key 'phi.variant': unknown curve '" + variant +
                      "' (expected saturating, linear-capped or constant)");
  }
  try {
    m.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid model parameter: ") + e.what());
  }

  if (auto v = get("seed")) cfg.seed = as_u64("seed", *v);
  if (auto v = get("replicates")) cfg.replicates = as_count("replicates", *v);
  if (auto v = get("horizon")) cfg.horizon = as_int("horizon", *v);
  if (auto v = get("max_agents")) cfg.max_agents = as_count("max_agents", *v);
  if (auto v = get("metric")) cfg.metric = wrap("metric", [&] { return parse_metric(*v); });
  if (auto v = get("flow")) cfg.flow = as_bool("flow", *v);
  if (auto v = get("method")) cfg.method = wrap("method", [&] { return parse_fit_method(*v); });
  if (auto v = get("enum")) cfg.use_enum = as_bool("enum", *v);
  if (auto v = get("lifetime")) cfg.lifetime = as_bool("lifetime", *v);
  if (auto v = get("mode")) {
    if (*v == "increments") {
      cfg.mode = IngestMode::kIncrements;
    } else if (*v == "finals") {
      cfg.mode = IngestMode::kFinals;
    } else {
      throw ConfigError("config key 'mode': '" + *v + "' (expected increments or finals)");
    }
  }
  if (auto v = get("bin_width")) cfg.bin_width = as_double("bin_width", *v);
  if (auto v = get("out")) cfg.out = *v;
  if (auto v = get("input")) cfg.input = *v;
  if (auto v = get("store")) cfg.store = *v;
  if (auto v = get("pmf")) cfg.pmf = *v;
  if (auto v = get("hist")) cfg.hist = *v;

  if (cfg.replicates == 0) throw ConfigError("config key 'replicates': must be >= 1");
  if (cfg.horizon < 1) throw ConfigError("config key 'horizon': must be >= 1");
  if (cfg.max_agents == 0) throw ConfigError("config key 'max_agents': must be >= 1");
  if (!(cfg.bin_width > 0.0)) throw ConfigError("config key 'bin_width': must be > 0");
  return cfg;
}

std::string echo_config(const RunConfig& cfg) {
  const ModelParams& m = cfg.model;
  std::ostringstream os;
  os << "# resolved configuration\n";
  os << "p_l0 = " << format_number(m.p_l0) << "\n";
  os << "p_d0 = " << format_number(m.p_d0) << "\n";
  os << "p_r0 = " << format_number(m.p_r0) << "\n";
  os << "p_s = " << format_number(m.p_s) << "\n";
  os << "E0 = " << m.e0 << "\n";
  os << "T_max = " << m.t_max << "\n";
  os << "phi.variant = " << to_string(m.phi.kind()) << "\n";
  os << (m.phi.kind() == ResponseCurve::Kind::kConstant ? "phi.a = " : "phi.c = ")
     << format_number(m.phi.parameter()) << "\n";
  os << "extended_reactions = " << (m.extended_reactions ? "true" : "false") << "\n";
  if (m.p_ref0) os << "p_ref0 = " << format_number(*m.p_ref0) << "\n";
  os << "seed = " << cfg.seed << "\n";
  os << "replicates = " << cfg.replicates << "\n";
  os << "horizon = " << cfg.horizon << "\n";
  os << "max_agents = " << cfg.max_agents << "\n";
  os << "metric = " << to_string(cfg.metric) << "\n";
  os << "flow = " << (cfg.flow ? "true" : "false") << "\n";
  os << "method = " << to_string(cfg.method) << "\n";
  os << "enum = " << (cfg.use_enum ? "true" : "false") << "\n";
  os << "lifetime = " << (cfg.lifetime ? "true" : "false") << "\n";
  os << "mode = " << to_string(cfg.mode) << "\n";
  os << "bin_width = " << format_number(cfg.bin_width) << "\n";
  os << "out = " << cfg.out << "\n";
  if (!cfg.input.empty()) os << "input = " << cfg.input << "\n";
  if (!cfg.store.empty()) os << "store = " << cfg.store << "\n";
  if (!cfg.pmf.empty()) os << "pmf = " << cfg.pmf << "\n";
  if (!cfg.hist.empty()) os << "hist = " << cfg.hist << "\n";
  return os.str();
}

}  // namespace infoflow
