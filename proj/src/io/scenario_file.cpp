#include "rcplan/io/scenario_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "rcplan/error.hpp"

namespace rcplan::io {

namespace {

using uncertainty::Distribution;

/// Walks the YAML tree and reports errors with line and field path.
class Reader {
 public:
  explicit Reader(std::string_view origin) : origin_(origin) {}

  [[noreturn]] void fail(const YAML::Node& at, const std::string& path, const std::string& msg) const {
    std::ostringstream os;
    os << origin_;
    if (at.IsDefined() && at.Mark().line >= 0) os << ":" << at.Mark().line + 1;
    os << ": " << path << ": " << msg;
    throw InputError(os.str());
  }

  YAML::Node require(const YAML::Node& parent, const std::string& key, const std::string& path) const {
    const YAML::Node n = parent[key];
    if (!n.IsDefined() || n.IsNull()) fail(parent, join(path, key), "missing required field");
    return n;
  }

  double number(const YAML::Node& n, const std::string& path) const {
    if (!n.IsScalar()) fail(n, path, "expected a number");
    try {
      return n.as<double>();
    } catch (const YAML::Exception&) {
      fail(n, path, "expected a number, got '" + n.Scalar() + "'");
    }
  }

  long integer(const YAML::Node& n, const std::string& path) const {
    if (!n.IsScalar()) fail(n, path, "expected an integer");
    try {
      return n.as<long>();
    } catch (const YAML::Exception&) {
      fail(n, path, "expected an integer, got '" + n.Scalar() + "'");
    }
  }

  std::string string(const YAML::Node& n, const std::string& path) const {
    if (!n.IsScalar()) fail(n, path, "expected a string");
    return n.Scalar();
  }

  std::vector<double> vector(const YAML::Node& n, const std::string& path) const {
    if (!n.IsSequence()) fail(n, path, "expected a list of numbers");
    std::vector<double> v;
    for (std::size_t i = 0; i < n.size(); ++i) v.push_back(number(n[i], index(path, i)));
    return v;
  }

  void only(const YAML::Node& map, const std::set<std::string>& allowed, const std::string& path) const {
    for (const auto& kv : map) {
      const auto key = kv.first.Scalar();
      if (!allowed.count(key)) fail(kv.first, join(path, key), "unknown field");
    }
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }
  static std::string index(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
  }

 private:
  std::string origin_;
};

Distribution parse_distribution(const Reader& rd, const YAML::Node& n, const std::string& path) {
  if (!n.IsMap()) rd.fail(n, path, "expected a mapping with a 'type'");
  const std::string type = rd.string(rd.require(n, "type", path), Reader::join(path, "type"));
  auto num = [&](const char* key) {
    return rd.number(rd.require(n, key, path), Reader::join(path, key));
  };
  // Parameter range errors from the factories get this node's location.
  auto checked = [&](auto&& make) -> Distribution {
    try {
      return make();
    } catch (const InputError& e) {
      rd.fail(n, path, e.what());
    }
  };
  if (type == "uniform") {
    rd.only(n, {"type", "lower", "upper"}, path);
    const double lo = num("lower"), hi = num("upper");
    return checked([&] { return Distribution::uniform(lo, hi); });
  }
  if (type == "normal") {
    rd.only(n, {"type", "mean", "variance"}, path);
    const double m = num("mean"), v = num("variance");
    return checked([&] { return Distribution::normal(m, v); });
  }
  if (type == "beta") {
    rd.only(n, {"type", "a", "b"}, path);
    const double a = num("a"), b = num("b");
    return checked([&] { return Distribution::beta(a, b); });
  }
  if (type == "moments") {
    rd.only(n, {"type", "moments"}, path);
    auto m = rd.vector(rd.require(n, "moments", path), Reader::join(path, "moments"));
    return checked([&] { return Distribution::moment_table(std::move(m)); });
  }
  rd.fail(n["type"], Reader::join(path, "type"),
          "unknown distribution '" + type + "' (uniform, normal, beta, moments)");
}

risk::ObstaclePtr parse_obstacle(const Reader& rd, const YAML::Node& n, const std::string& path,
                                 const std::vector<std::string>& state_vars) {
  if (!n.IsMap()) rd.fail(n, path, "expected a mapping");
  rd.only(n, {"name", "uncertain_vars", "terms", "description"}, path);
  const std::string name = rd.string(rd.require(n, "name", path), Reader::join(path, "name"));

  std::vector<poly::Variable> vars;
  for (const auto& s : state_vars) vars.push_back({s, poly::VarClass::State});
  uncertainty::OmegaModel omega;
  const std::string upath = Reader::join(path, "uncertain_vars");
  if (const YAML::Node u = n["uncertain_vars"]; u.IsDefined() && !u.IsNull()) {
    if (!u.IsMap()) rd.fail(u, upath, "expected a mapping from variable name to distribution");
    for (const auto& kv : u) {
      const std::string var = kv.first.Scalar();
      const std::string vpath = Reader::join(upath, var);
      if (var == "t") rd.fail(kv.first, vpath, "'t' is reserved for time");
      for (const auto& s : state_vars)
        if (s == var) rd.fail(kv.first, vpath, "name clashes with a state variable");
      vars.push_back({var, poly::VarClass::Uncertain});
      omega.emplace(var, parse_distribution(rd, kv.second, vpath));
    }
  }
  vars.push_back({"t", poly::VarClass::Time});
  const auto space = poly::VarSpace::make(std::move(vars));

  const std::string tpath = Reader::join(path, "terms");
  const YAML::Node terms = rd.require(n, "terms", path);
  if (!terms.IsSequence() || terms.size() == 0) rd.fail(terms, tpath, "expected a non-empty list");
  poly::MultiPoly p(space);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const YAML::Node term = terms[i];
    const std::string ipath = Reader::index(tpath, i);
    if (!term.IsMap()) rd.fail(term, ipath, "expected {coeff, powers}");
    rd.only(term, {"coeff", "powers"}, ipath);
    const double c = rd.number(rd.require(term, "coeff", ipath), Reader::join(ipath, "coeff"));
    poly::Exponent e(space->size(), 0);
    if (const YAML::Node pw = term["powers"]; pw.IsDefined() && !pw.IsNull()) {
      const std::string ppath = Reader::join(ipath, "powers");
      if (!pw.IsMap()) rd.fail(pw, ppath, "expected a mapping from variable name to exponent");
      for (const auto& kv : pw) {
        const std::string var = kv.first.Scalar();
        const std::string vpath = Reader::join(ppath, var);
        const auto idx = space->index_of(var);
        if (!idx) rd.fail(kv.first, vpath, "undeclared variable '" + var + "'");
        const long k = rd.integer(kv.second, vpath);
        if (k < 0 || k > poly::kMaxTotalDegree) rd.fail(kv.second, vpath, "exponent out of range");
        e[*idx] = static_cast<std::uint8_t>(e[*idx] + k);
      }
    }
    try {
      p.add_term(e, c);
    } catch (const StructuralError& err) {
      rd.fail(term, ipath, err.what());
    }
  }
  try {
    return std::make_shared<const risk::UncertainObstacle>(name, std::move(p), std::move(omega));
  } catch (const StructuralError& err) {
    rd.fail(n, path, err.what());
  }
}

}  // namespace

planner::Scenario parse_scenario(std::string_view text, std::string_view origin) {
  const Reader rd(origin);
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    std::ostringstream os;
    os << origin << ":" << e.mark.line + 1 << ": " << e.msg;
    throw InputError(os.str());
  }
  if (!root.IsMap()) rd.fail(root, "<root>", "expected a mapping");
  rd.only(root,
          {"format_version", "description", "state_vars", "workspace", "horizon", "delta", "start",
           "goal", "obstacles"},
          "");

  const long version = rd.integer(rd.require(root, "format_version", ""), "format_version");
  if (version != kScenarioFormatVersion)
    rd.fail(root["format_version"], "format_version", "unsupported version " + std::to_string(version));

  const YAML::Node sv = rd.require(root, "state_vars", "");
  if (!sv.IsSequence() || sv.size() == 0) rd.fail(sv, "state_vars", "expected a non-empty list");
  std::vector<std::string> state_vars;
  for (std::size_t i = 0; i < sv.size(); ++i) {
    const std::string path = Reader::index("state_vars", i);
    auto name = rd.string(sv[i], path);
    if (name == "t") rd.fail(sv[i], path, "'t' is reserved for time");
    for (const auto& s : state_vars)
      if (s == name) rd.fail(sv[i], path, "duplicate state variable '" + name + "'");
    state_vars.push_back(std::move(name));
  }

  const YAML::Node ws = rd.require(root, "workspace", "");
  if (!ws.IsMap()) rd.fail(ws, "workspace", "expected {min, max}");
  rd.only(ws, {"min", "max"}, "workspace");
  auto lo = rd.vector(rd.require(ws, "min", "workspace"), "workspace.min");
  auto hi = rd.vector(rd.require(ws, "max", "workspace"), "workspace.max");

  double t0 = 0.0, tf = 1.0;
  if (const YAML::Node h = root["horizon"]; h.IsDefined()) {
    const auto v = rd.vector(h, "horizon");
    if (v.size() != 2) rd.fail(h, "horizon", "expected [t0, tf]");
    if (!(v[0] < v[1])) rd.fail(h, "horizon", "needs t0 < tf");
    t0 = v[0];
    tf = v[1];
  }
  const double delta = rd.number(rd.require(root, "delta", ""), "delta");
  if (!(delta >= 0.0 && delta <= 1.0)) rd.fail(root["delta"], "delta", "must lie in [0, 1]");
  auto start = rd.vector(rd.require(root, "start", ""), "start");
  auto goal = rd.vector(rd.require(root, "goal", ""), "goal");

  std::vector<risk::ObstaclePtr> obstacles;
  if (const YAML::Node obs = root["obstacles"]; obs.IsDefined() && !obs.IsNull()) {
    if (!obs.IsSequence()) rd.fail(obs, "obstacles", "expected a list");
    std::set<std::string> names;
    for (std::size_t i = 0; i < obs.size(); ++i) {
      const std::string path = Reader::index("obstacles", i);
      auto o = parse_obstacle(rd, obs[i], path, state_vars);
      if (!names.insert(o->name()).second)
        rd.fail(obs[i], path + ".name", "duplicate obstacle name '" + o->name() + "'");
      obstacles.push_back(std::move(o));
    }
  }

  try {
    return planner::make_scenario(std::move(state_vars), std::move(lo), std::move(hi),
                                  std::move(obstacles), delta, std::move(start), std::move(goal),
                                  t0, tf);
  } catch (const InputError& e) {
    throw InputError(std::string(origin) + ": " + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

planner::Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_file(path), path.string());
}

}  // namespace rcplan::io
