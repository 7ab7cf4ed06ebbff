#include "cli/config.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace flowlab {
namespace cli {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool parse_int(const std::string& v, long long& out) {
  if (v.empty()) return false;
  char* end = nullptr;
  out = std::strtoll(v.c_str(), &end, 10);
  return end == v.c_str() + v.size();
}

bool parse_real(const std::string& v, double& out) {
  if (v.empty()) return false;
  char* end = nullptr;
  out = std::strtod(v.c_str(), &end);
  return end == v.c_str() + v.size();
}

bool parse_bool(const std::string& v, bool& out) {
  if (v == "true" || v == "1" || v == "yes") return out = true, true;
  if (v == "false" || v == "0" || v == "no") return out = false, true;
  return false;
}

std::string real17s(Real v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

const KeySpec* Schema::find(const std::string& key) const {
  for (const auto& k : keys)
    if (k.key == key) return &k;
  return nullptr;
}

Config::Config(Schema schema) : schema_(std::move(schema)) {
  values_.reserve(schema_.keys.size());
  for (const auto& k : schema_.keys) values_.push_back(k.fallback);
}

void Config::set(const std::string& key, const std::string& value) {
  const KeySpec* spec = schema_.find(key);
  if (!spec)
    throw ConfigError("unknown config key `" + key + "` for scenario `" +
                      schema_.scenario + "`");
  std::string v = trim(value);
  switch (spec->type) {
    case ValueType::Int: {
      long long tmp;
      if (!parse_int(v, tmp))
        throw ConfigError("key `" + key + "` expects an integer, got `" + v + "`");
      break;
    }
    case ValueType::Real: {
      double tmp;
      if (!(spec->allow_auto && v == "auto") && !parse_real(v, tmp))
        throw ConfigError("key `" + key + "` expects a real number, got `" + v + "`");
      break;
    }
    case ValueType::Bool: {
      bool tmp;
      if (!parse_bool(v, tmp))
        throw ConfigError("key `" + key + "` expects true/false, got `" + v + "`");
      break;
    }
    case ValueType::String:
      break;
  }
  values_[spec - schema_.keys.data()] = v;
}

void Config::load_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file: " + path);
  std::string line;
  long lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected key=value, got `" + s + "`");
    set(trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
  }
}

const std::string& Config::raw(const std::string& key) const {
  const KeySpec* spec = schema_.find(key);
  if (!spec) throw ConfigError("internal: key `" + key + "` not in schema");
  return values_[spec - schema_.keys.data()];
}

long long Config::get_int(const std::string& key) const {
  long long out;
  parse_int(raw(key), out);
  return out;
}

Real Config::get_real(const std::string& key) const {
  const std::string& v = raw(key);
  if (v == "auto") return -1;
  double out;
  parse_real(v, out);
  return out;
}

bool Config::get_bool(const std::string& key) const {
  bool out;
  parse_bool(raw(key), out);
  return out;
}

const std::string& Config::get_str(const std::string& key) const {
  return raw(key);
}

unsigned long long Config::get_seed() const {
  return std::strtoull(raw("seed").c_str(), nullptr, 10);
}

std::vector<Real> Config::get_real_list(const std::string& key) const {
  std::vector<Real> out;
  std::stringstream ss(raw(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    double v;
    if (!parse_real(item, v))
      throw ConfigError("key `" + key + "`: `" + item + "` is not a real number");
    out.push_back(v);
  }
  return out;
}

std::vector<std::string> Config::resolved_lines() const {
  std::vector<std::string> out;
  out.reserve(schema_.keys.size() + 1);
  out.push_back("scenario=" + schema_.scenario);
  for (size_t i = 0; i < schema_.keys.size(); ++i)
    out.push_back(schema_.keys[i].key + "=" + values_[i]);
  return out;
}

nlohmann::ordered_json Config::resolved_json() const {
  nlohmann::ordered_json j;
  j["scenario"] = schema_.scenario;
  for (size_t i = 0; i < schema_.keys.size(); ++i)
    j[schema_.keys[i].key] = values_[i];
  return j;
}

namespace {

KeySpec ik(std::string k, std::string d, std::string doc) {
  return {std::move(k), ValueType::Int, std::move(d), false, std::move(doc)};
}
KeySpec rk(std::string k, std::string d, std::string doc, bool au = false) {
  return {std::move(k), ValueType::Real, std::move(d), au, std::move(doc)};
}
KeySpec bk(std::string k, std::string d, std::string doc) {
  return {std::move(k), ValueType::Bool, std::move(d), false, std::move(doc)};
}
KeySpec sk(std::string k, std::string d, std::string doc) {
  return {std::move(k), ValueType::String, std::move(d), false, std::move(doc)};
}

std::vector<KeySpec> common_tail(const std::string& emit) {
  return {
      ik("seed", "0", "rng seed for stochastic data"),
      sk("emit", emit, "comma-separated artifact list; `.csv` data, `.json` report"),
      sk("out_dir", ".", "directory receiving the artifacts"),
  };
}

Schema make_schema(const std::string& name) {
  Schema s;
  s.scenario = name;
  auto push = [&s](std::vector<KeySpec> keys) {
    for (auto& k : keys) s.keys.push_back(std::move(k));
  };
  if (name == "taylor-green") {
    push({ik("N", "64", "nodes per direction"),
          rk("T", "1.0", "final time"),
          rk("dt", "auto", "snapshot spacing; auto = T/128", true),
          rk("tol", "1e-10", "Picard stopping tolerance"),
          ik("max_iter", "50", "Picard iteration cap")});
    push(common_tail("traj.csv,report.json"));
  } else if (name == "mild-solve") {
    push({sk("datum", "taylor-green",
             "taylor-green | random-shell | square-wave"),
          ik("dim", "2", "spatial dimension, 2 or 3"),
          ik("N", "64", "nodes per direction"),
          rk("T", "1.0", "final time"),
          rk("dt", "auto", "snapshot spacing; auto = T/128", true),
          rk("tol", "1e-10", "Picard stopping tolerance"),
          ik("max_iter", "50", "Picard iteration cap"),
          rk("kmin", "2", "random-shell: inner wavenumber radius"),
          rk("kmax", "3", "random-shell: outer wavenumber radius")});
    push(common_tail("traj.csv,report.json"));
  } else if (name == "kernel-table") {
    push({sk("kind", "Kijk", "Gamma | GreenG | Phi | Kij | Kijk"),
          ik("n", "3", "ambient dimension, 2 or 3"),
          sk("scales", "1:100:20", "lo:hi:count log-spaced scale grid")});
    push(common_tail("kernel_table.csv,report.json"));
  } else if (name == "harnack-probe") {
    push({ik("dim", "1", "box dimension, 1 or 2"),
          rk("lo", "-1", "box lower corner (each direction)"),
          rk("hi", "1", "box upper corner (each direction)"),
          rk("T", "2.0", "final time"),
          ik("nx", "161", "nodes per direction"),
          rk("dt", "0.005", "time step"),
          sk("datum", "zero", "zero | bump | constant initial/boundary data"),
          rk("omega_lo", "-0.5", "interior observation box, lower corner"),
          rk("omega_hi", "0.5", "interior observation box, upper corner"),
          rk("tau", "1.0", "observation window starts here"),
          sk("K", "0", "probe points, `;`-separated, coords `,`-separated"),
          sk("deltas", "0.01,0.02,0.05,0.1,0.2", "peak-deficit thresholds"),
          sk("windows", "auto",
             "boundary switch-on windows: auto | none | comma list"),
          bk("include_own", "true", "include the problem's own data as a member")});
    push(common_tail("eps_table.csv,report.json"));
  } else if (name == "axisym-run") {
    push({ik("nr", "65", "radial nodes"),
          ik("nz", "65", "vertical nodes"),
          rk("r_max", "8.0", "outer radius"),
          rk("z_min", "-8.0", "lower wall"),
          rk("z_max", "8.0", "upper wall"),
          rk("dt", "0.005", "time step"),
          ik("steps", "200", "number of steps"),
          sk("datum", "swirl-bump", "swirl-bump | eta-bump | rigid-rotation"),
          rk("amplitude", "1.0", "datum amplitude"),
          rk("width", "2.0", "datum bump width")});
    push(common_tail("monitors.csv,report.json"));
  } else if (name == "blowup-analyze") {
    push({sk("traj", "", "trajectory csv to analyze (takes precedence)"),
          sk("trace", "", "plain t,h trace csv to analyze"),
          rk("T", "1.0", "candidate singular time"),
          ik("window", "16", "trailing fit window (snapshots)")});
    push(common_tail("class.json"));
  } else {
    throw ConfigError("unknown scenario `" + name + "`");
  }
  return s;
}

}  // namespace

Schema schema_for(const std::string& scenario) { return make_schema(scenario); }

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {
      "taylor-green", "mild-solve",  "harnack-probe",
      "axisym-run",   "blowup-analyze", "kernel-table"};
  return names;
}

std::vector<std::pair<std::string, std::string>> parse_kv_tokens(
    const std::vector<std::string>& tokens) {
  std::vector<std::pair<std::string, std::string>> out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    std::string t = tokens[i];
    bool dashed = t.rfind("--", 0) == 0;
    if (dashed) t = t.substr(2);
    auto eq = t.find('=');
    if (eq != std::string::npos) {
      out.emplace_back(t.substr(0, eq), t.substr(eq + 1));
      continue;
    }
    if (dashed && i + 1 < tokens.size() && tokens[i + 1].rfind("--", 0) != 0) {
      out.emplace_back(t, tokens[++i]);
      continue;
    }
    throw ConfigError("cannot parse parameter `" + tokens[i] +
                      "`; expected key=value or --key value");
  }
  return out;
}

namespace {

void dump17(const nlohmann::ordered_json& j, std::string& out, int indent,
            int depth) {
  const std::string pad(size_t(indent) * depth, ' ');
  const std::string pad1(size_t(indent) * (depth + 1), ' ');
  switch (j.type()) {
    case nlohmann::ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += pad1 + nlohmann::ordered_json(it.key()).dump() + ": ";
        dump17(it.value(), out, indent, depth + 1);
        out += (i + 1 < j.size()) ? ",\n" : "\n";
      }
      out += pad + "}";
      return;
    }
    case nlohmann::ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (size_t i = 0; i < j.size(); ++i) {
        out += pad1;
        dump17(j[i], out, indent, depth + 1);
        out += (i + 1 < j.size()) ? ",\n" : "\n";
      }
      out += pad + "]";
      return;
    }
    case nlohmann::ordered_json::value_t::number_float:
      out += real17s(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dump_json17(const nlohmann::ordered_json& j, int indent) {
  std::string out;
  dump17(j, out, indent, 0);
  out += "\n";
  return out;
}

}  // namespace cli
}  // namespace flowlab
