#include "slt/config.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "slt/diffeo.hpp"
#include "slt/errors.hpp"
#include "slt/functional.hpp"

namespace slt {

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::invalid_argument([&] {
        std::string msg = "invalid configuration:";
        for (const auto& v : violations) msg += "\n  - " + v;
        return msg;
      }()),
      violations_(std::move(violations)) {}

ExperimentError::ExperimentError(const std::string& cause, double epsilon, long path_index)
    : std::runtime_error([&] {
        std::ostringstream msg;
        msg << cause << " (epsilon=" << epsilon << ", path=" << path_index << ")";
        return msg.str();
      }()),
      epsilon_(epsilon),
      path_index_(path_index) {}

namespace {

const std::pair<Subcommand, const char*> kSubcommands[] = {
    {Subcommand::kConverge, "converge"},     {Subcommand::kHilbert, "hilbert"},
    {Subcommand::kBrickCheck, "brick-check"}, {Subcommand::kImageCheck, "image-check"},
    {Subcommand::kLemmaDelta, "lemma-delta"},
};

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.emplace_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

std::string to_string(Subcommand s) {
  for (const auto& [value, name] : kSubcommands) {
    if (value == s) return name;
  }
  return "?";
}

WeightSpec parse_weight_spec(std::string_view text) {
  const auto parts = split(text, ':');
  WeightSpec spec;
  auto fail = [&](const std::string& why) -> WeightSpec {
    throw ConfigError({"weight '" + std::string(text) + "': " + why});
  };
  const std::string& tag = parts[0];
  if (tag == "const") {
    spec.kind = WeightSpec::Kind::kConstant;
    if (parts.size() != 2 || !parse_number(parts[1], spec.constant)) return fail("expected const:<value>");
  } else if (tag == "jacobian") {
    spec.kind = WeightSpec::Kind::kJacobian;
    if (parts.size() != 2) return fail("expected jacobian:<map name>");
    spec.diffeo = parts[1];
  } else if (tag == "example31") {
    spec.kind = WeightSpec::Kind::kExample31;
    if (parts.size() < 2 || parts.size() > 4 || !parse_number(parts[1], spec.n)) {
      return fail("expected example31:<N>[:gs|:dyadic][:<coords>]");
    }
    if (parts.size() >= 3) spec.basis = parts[2];
    if (parts.size() == 4 && !parse_number(parts[3], spec.coords)) return fail("bad coordinate count");
  } else if (tag == "example32") {
    spec.kind = WeightSpec::Kind::kExample32;
    if (parts.size() > 2) return fail("expected example32[:<mc_samples>]");
    if (parts.size() == 2 && !parse_number(parts[1], spec.mc_samples)) return fail("bad sample count");
  } else {
    return fail("unknown weight kind '" + tag + "'");
  }
  return spec;
}

std::string format_weight_spec(const WeightSpec& spec) {
  std::ostringstream s;
  switch (spec.kind) {
    case WeightSpec::Kind::kConstant: {
      char buf[64];
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, spec.constant);
      s << "const:" << std::string_view(buf, ptr - buf);
      break;
    }
    case WeightSpec::Kind::kJacobian: s << "jacobian:" << spec.diffeo; break;
    case WeightSpec::Kind::kExample31: s << "example31:" << spec.n << ':' << spec.basis << ':' << spec.coords; break;
    case WeightSpec::Kind::kExample32: s << "example32:" << spec.mc_samples; break;
  }
  return s.str();
}

std::vector<std::string> validate(const ExperimentConfig& c) {
  std::vector<std::string> v;
  if (c.k < 1) v.push_back("k must be >= 1");
  const bool needs_eps = c.subcommand != Subcommand::kBrickCheck;
  if (needs_eps && c.eps_list.empty()) v.push_back("eps_list is empty");
  for (double e : c.eps_list) {
    if (!(e > 0.0)) {
      v.push_back("eps_list entries must be > 0");
      break;
    }
  }
  for (std::size_t i = 1; i < c.eps_list.size(); ++i) {
    if (!(c.eps_list[i] < c.eps_list[i - 1])) {
      v.push_back("eps_list not strictly decreasing");
      break;
    }
  }
  if (c.n_paths < 2) v.push_back("paths must be >= 2");
  if (c.n_steps < 1) v.push_back("steps must be >= 1");
  if (!(c.resolution_ratio > 0.0)) v.push_back("resolution_ratio must be > 0");
  if (c.output_path.empty()) v.push_back("out must not be empty");

  using Kind = WeightSpec::Kind;
  const WeightSpec& w = c.weight;
  if (w.kind == Kind::kJacobian) {
    const auto names = builtin_names();
    if (std::find(names.begin(), names.end(), w.diffeo) == names.end()) {
      v.push_back("unknown diffeomorphism '" + w.diffeo + "'");
    }
  }
  if (w.kind == Kind::kExample31) {
    if (w.n < 2) v.push_back("example31 N must be >= 2");
    if (w.basis != "gs" && w.basis != "dyadic") v.push_back("example31 basis must be gs or dyadic");
    if (w.coords < 0 || w.coords > w.n) v.push_back("example31 coords must be in [0, N]");
  }
  if (w.kind == Kind::kExample32) {
    if (w.mc_samples < 100) v.push_back("example32 mc_samples must be >= 100");
    for (Point2 p : w.grid) {
      if (p.x == 0.0 && p.y == 0.0) {
        v.push_back("example32 grid contains the origin");
        break;
      }
    }
  }

  switch (c.subcommand) {
    case Subcommand::kConverge:
      if (w.kind != Kind::kConstant && w.kind != Kind::kJacobian) {
        v.push_back("converge needs a scalar weight (const or jacobian)");
      }
      break;
    case Subcommand::kHilbert:
      if (w.kind != Kind::kConstant && w.kind != Kind::kExample31) {
        v.push_back("hilbert needs a const or example31 weight");
      }
      break;
    case Subcommand::kBrickCheck:
      if (w.kind != Kind::kExample31 && w.kind != Kind::kExample32) {
        v.push_back("brick-check needs an example31 or example32 weight");
      }
      break;
    case Subcommand::kImageCheck:
      if (w.kind != Kind::kJacobian) v.push_back("image-check needs a jacobian weight");
      break;
    case Subcommand::kLemmaDelta:
      if (w.kind != Kind::kJacobian) v.push_back("lemma-delta needs a jacobian weight");
      if (c.k != 2 && c.k != 3) v.push_back("lemma-delta needs k = 2 or 3");
      break;
  }
  return v;
}

std::vector<std::string> config_warnings(const ExperimentConfig& c) {
  std::vector<std::string> out;
  if (c.eps_list.empty()) return out;
  const double smallest = *std::min_element(c.eps_list.begin(), c.eps_list.end());
  if (smallest > 0.0 && c.n_steps >= 1) {
    if (auto w = resolution_warning(c.n_steps, smallest, c.resolution_ratio)) out.push_back(*w);
  }
  return out;
}

namespace {

const std::set<std::string> kKnownKeys = {"subcommand", "k",   "eps", "paths",           "steps",    "seed",
                                          "weight",     "out", "resolution_ratio", "wall_time"};

void read_weight(const nlohmann::json& node, WeightSpec& spec, std::vector<std::string>& v) {
  if (node.is_string()) {
    try {
      spec = parse_weight_spec(node.get<std::string>());
    } catch (const ConfigError& e) {
      v.insert(v.end(), e.violations().begin(), e.violations().end());
    }
    return;
  }
  if (!node.is_object() || !node.contains("spec") || !node["spec"].is_string()) {
    v.push_back("weight must be a string or an object with a 'spec' string");
    return;
  }
  try {
    spec = parse_weight_spec(node["spec"].get<std::string>());
  } catch (const ConfigError& e) {
    v.insert(v.end(), e.violations().begin(), e.violations().end());
    return;
  }
  if (node.contains("grid")) {
    const auto& grid = node["grid"];
    bool ok = grid.is_array();
    if (ok) {
      for (const auto& p : grid) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
          ok = false;
          break;
        }
        spec.grid.push_back({p[0].get<double>(), p[1].get<double>()});
      }
    }
    if (!ok) v.push_back("weight.grid must be a list of [x, y] pairs");
  }
}

}  // namespace

ExperimentConfig parse_config_json(const nlohmann::json& doc) {
  std::vector<std::string> v;
  ExperimentConfig c;
  if (!doc.is_object()) throw ConfigError({"configuration must be a JSON object"});

  for (const auto& [key, _] : doc.items()) {
    if (!kKnownKeys.count(key)) v.push_back("unknown key '" + key + "'");
  }

  if (!doc.contains("subcommand") || !doc["subcommand"].is_string()) {
    v.push_back("subcommand is required");
  } else {
    const std::string name = doc["subcommand"].get<std::string>();
    bool found = false;
    for (const auto& [value, label] : kSubcommands) {
      if (name == label) {
        c.subcommand = value;
        found = true;
      }
    }
    if (!found) v.push_back("unknown subcommand '" + name + "'");
  }

  auto read_int = [&](const char* key, auto& out) {
    if (!doc.contains(key)) return;
    if (!doc[key].is_number_integer()) {
      v.push_back(std::string(key) + " must be an integer");
      return;
    }
    out = doc[key].get<std::remove_reference_t<decltype(out)>>();
  };
  read_int("k", c.k);
  read_int("paths", c.n_paths);
  read_int("steps", c.n_steps);
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned() && !(doc["seed"].is_number_integer() && doc["seed"].get<long long>() >= 0)) {
      v.push_back("seed must be a non-negative integer");
    } else {
      c.seed = doc["seed"].get<std::uint64_t>();
    }
  }
  if (doc.contains("eps")) {
    const auto& eps = doc["eps"];
    if (!eps.is_array() || !std::all_of(eps.begin(), eps.end(), [](const auto& e) { return e.is_number(); })) {
      v.push_back("eps must be a list of numbers");
    } else {
      for (const auto& e : eps) c.eps_list.push_back(e.get<double>());
    }
  }
  if (doc.contains("weight")) read_weight(doc["weight"], c.weight, v);
  if (doc.contains("out")) {
    if (!doc["out"].is_string()) v.push_back("out must be a string");
    else c.output_path = doc["out"].get<std::string>();
  }
  if (doc.contains("resolution_ratio")) {
    if (!doc["resolution_ratio"].is_number()) v.push_back("resolution_ratio must be a number");
    else c.resolution_ratio = doc["resolution_ratio"].get<double>();
  }
  if (doc.contains("wall_time")) {
    if (!doc["wall_time"].is_boolean()) v.push_back("wall_time must be a boolean");
    else c.record_wall_time = doc["wall_time"].get<bool>();
  }

  const auto semantic = validate(c);
  v.insert(v.end(), semantic.begin(), semantic.end());
  if (!v.empty()) throw ConfigError(std::move(v));
  return c;
}

ExperimentConfig parse_config(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError({std::string("malformed JSON: ") + e.what()});
  }
  return parse_config_json(doc);
}

nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json doc;
  doc["subcommand"] = to_string(c.subcommand);
  doc["k"] = c.k;
  doc["eps"] = c.eps_list;
  doc["paths"] = c.n_paths;
  doc["steps"] = c.n_steps;
  doc["seed"] = c.seed;
  nlohmann::json weight;
  weight["spec"] = format_weight_spec(c.weight);
  if (!c.weight.grid.empty()) {
    weight["grid"] = nlohmann::json::array();
    for (Point2 p : c.weight.grid) weight["grid"].push_back({p.x, p.y});
  }
  doc["weight"] = weight;
  doc["out"] = c.output_path;
  doc["resolution_ratio"] = c.resolution_ratio;
  doc["wall_time"] = c.record_wall_time;
  return doc;
}

std::string emit_config(const ExperimentConfig& config) { return to_json(config).dump(2); }

}  // namespace slt
