#include "tcnav/config.hpp"

#include <cctype>
#include <cerrno>
#include <cstdint>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <variant>

namespace tcnav {
namespace {

// ---------------------------------------------------------------------------
// TOML-subset document model

using Scalar = std::variant<double, bool, std::string, std::vector<double>>;

struct Value {
  Scalar data;
  std::string raw;
  int line = 0;
};

struct Table {
  std::string name;
  bool array_element = false;
  int line = 0;
  std::map<std::string, Value> entries;
};

[[noreturn]] void fail(int line, const std::string& what) {
  throw NavError(ErrorKind::kConfig, "line " + std::to_string(line) + ": " + what);
}

[[noreturn]] void fail_field(const std::string& what) {
  throw NavError(ErrorKind::kConfig, what);
}

std::string_view trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::string_view strip_comment(std::string_view line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (c == '\\' && in_string) {
      ++i;
    } else if (c == '"') {
      in_string = !in_string;
    } else if (c == '#' && !in_string) {
      return line.substr(0, i);
    }
  }
  return line;
}

bool parse_number(std::string_view token, double& out) {
  const std::string s(token);
  if (s.empty()) return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && errno != ERANGE;
}

Scalar parse_value(std::string_view text, int line) {
  if (text.empty()) fail(line, "missing value");
  if (text.front() == '"') {
    if (text.size() < 2 || text.back() != '"') fail(line, "unterminated string");
    std::string out;
    for (std::size_t i = 1; i + 1 < text.size(); ++i) {
      char c = text[i];
      if (c == '\\') {
        if (i + 2 >= text.size()) fail(line, "dangling escape in string");
        const char next = text[++i];
        switch (next) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case '"': c = '"'; break;
          case '\\': c = '\\'; break;
          default: fail(line, std::string("unsupported escape \\") + next);
        }
      } else if (c == '"') {
        fail(line, "unexpected quote inside string");
      }
      out.push_back(c);
    }
    return out;
  }
  if (text == "true") return true;
  if (text == "false") return false;
  if (text.front() == '[') {
    if (text.back() != ']') fail(line, "unterminated array");
    std::vector<double> items;
    std::string_view body = trim(text.substr(1, text.size() - 2));
    while (!body.empty()) {
      const auto comma = body.find(',');
      const std::string_view item = trim(body.substr(0, comma));
      double v = 0.0;
      if (!parse_number(item, v)) fail(line, "array items must be numbers, got '" + std::string(item) + "'");
      items.push_back(v);
      if (comma == std::string_view::npos) break;
      body = trim(body.substr(comma + 1));
      if (body.empty()) break;  // trailing comma
    }
    return items;
  }
  double v = 0.0;
  if (!parse_number(text, v)) fail(line, "cannot parse value '" + std::string(text) + "'");
  return v;
}

bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  for (const char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
  }
  return true;
}

std::vector<Table> parse_document(std::string_view text) {
  std::vector<Table> tables;
  std::set<std::string> seen_sections;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const std::string_view line = trim(strip_comment(raw));
    if (line.empty()) continue;

    if (line.front() == '[') {
      const bool array = line.starts_with("[[");
      const std::size_t open = array ? 2 : 1;
      if (line.size() < 2 * open + 1 || line.substr(line.size() - open) != (array ? "]]" : "]")) {
        fail(line_no, "malformed section header");
      }
      const std::string name(trim(line.substr(open, line.size() - 2 * open)));
      if (!valid_identifier(name)) fail(line_no, "invalid section name '" + name + "'");
      if (!array && !seen_sections.insert(name).second) {
        fail(line_no, "duplicate section [" + name + "]");
      }
      tables.push_back(Table{name, array, line_no, {}});
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    if (!valid_identifier(key)) fail(line_no, "invalid key '" + key + "'");
    if (tables.empty()) fail(line_no, "key '" + key + "' appears before any section");
    const std::string_view value_text = trim(line.substr(eq + 1));
    Value value{parse_value(value_text, line_no), std::string(value_text), line_no};
    auto& entries = tables.back().entries;
    if (!entries.emplace(key, std::move(value)).second) {
      fail(line_no, "duplicate key '" + tables.back().name + "." + key + "'");
    }
  }
  return tables;
}

// ---------------------------------------------------------------------------
// Typed access with consumed-key tracking

class Section {
 public:
  Section(const Table* table, std::string path) : table_(table), path_(std::move(path)) {}

  bool present() const { return table_ != nullptr; }
  bool has(const std::string& key) const {
    return table_ != nullptr && table_->entries.count(key) != 0;
  }

  double number(const std::string& key) const {
    const Value& v = require(key);
    if (const auto* d = std::get_if<double>(&v.data)) return *d;
    fail(v.line, field(key) + " must be a number");
  }
  double number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  std::int64_t integer(const std::string& key) const {
    const Value& v = require(key);
    const auto* d = std::get_if<double>(&v.data);
    if (d == nullptr || std::floor(*d) != *d) fail(v.line, field(key) + " must be an integer");
    errno = 0;
    char* end = nullptr;
    const long long parsed = std::strtoll(v.raw.c_str(), &end, 10);
    if (end == v.raw.c_str() + v.raw.size() && errno == 0) return parsed;
    return static_cast<std::int64_t>(*d);
  }

  Vec2 vec2(const std::string& key) const {
    const Value& v = require(key);
    const auto* a = std::get_if<std::vector<double>>(&v.data);
    if (a == nullptr || a->size() != 2) fail(v.line, field(key) + " must be a 2-element array");
    return Vec2((*a)[0], (*a)[1]);
  }
  Vec2 vec2_or(const std::string& key, const Vec2& fallback) const {
    return has(key) ? vec2(key) : fallback;
  }

  std::vector<double> array(const std::string& key) const {
    const Value& v = require(key);
    const auto* a = std::get_if<std::vector<double>>(&v.data);
    if (a == nullptr) fail(v.line, field(key) + " must be an array");
    return *a;
  }

  std::string string(const std::string& key) const {
    const Value& v = require(key);
    if (const auto* s = std::get_if<std::string>(&v.data)) return *s;
    fail(v.line, field(key) + " must be a string");
  }
  std::string string_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? string(key) : fallback;
  }

  bool boolean_or(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const Value& v = require(key);
    if (const auto* b = std::get_if<bool>(&v.data)) return *b;
    fail(v.line, field(key) + " must be true or false");
  }

  int line_of(const std::string& key) const { return require(key).line; }
  std::string field(const std::string& key) const { return path_ + "." + key; }

  void reject_unknown() const {
    if (table_ == nullptr) return;
    for (const auto& [key, value] : table_->entries) {
      if (used_.count(key) == 0) fail(value.line, "unknown key '" + field(key) + "'");
    }
  }

 private:
  const Value& require(const std::string& key) const {
    if (table_ == nullptr) fail_field("missing required section [" + path_ + "]");
    const auto it = table_->entries.find(key);
    if (it == table_->entries.end()) {
      fail(table_->line, "missing required key '" + field(key) + "'");
    }
    used_.insert(key);
    return it->second;
  }

  const Table* table_;
  std::string path_;
  mutable std::set<std::string> used_;
};

const std::set<std::string> kKnownSections = {"world",      "obstacle", "planner",     "potential_field",
                                              "controller", "robot",    "disturbance", "sim"};

const Table* find_table(const std::vector<Table>& tables, const std::string& name) {
  for (const auto& t : tables) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

void check_sections(const std::vector<Table>& tables) {
  for (const auto& t : tables) {
    if (kKnownSections.count(t.name) == 0) fail(t.line, "unknown section [" + t.name + "]");
    const bool should_be_array = t.name == "obstacle";
    if (t.array_element != should_be_array) {
      fail(t.line, should_be_array ? "obstacles are declared as [[obstacle]]"
                                   : "section [" + t.name + "] must not be an array table");
    }
  }
}

World read_world(const std::vector<Table>& tables, const std::filesystem::path& base_dir);

World read_world_tables(const std::vector<Table>& tables) {
  Section s(find_table(tables, "world"), "world");
  World world;
  const std::string shape = s.string_or("shape", "rectangle");
  const Vec2 center = s.vec2_or("center", Vec2::Zero());
  if (shape == "rectangle") {
    world.workspace = Workspace::rectangle(center, s.vec2("half_extents"));
  } else if (shape == "disc") {
    world.workspace = Workspace::disc(center, s.number("radius"));
  } else {
    fail(s.line_of("shape"), "world.shape must be \"rectangle\" or \"disc\"");
  }
  world.robot_radius = s.number("robot_radius");
  world.clearance = s.number("clearance");
  world.margin = s.number("margin");
  world.influence = s.number("influence");
  s.reject_unknown();

  std::size_t index = 0;
  for (const auto& t : tables) {
    if (t.name != "obstacle") continue;
    ++index;
    Section o(&t, "obstacle[" + std::to_string(index) + "]");
    world.obstacles.push_back(Obstacle{o.vec2("center"), o.number("radius")});
    o.reject_unknown();
  }
  return world;
}

World read_world(const std::vector<Table>& tables, const std::filesystem::path& base_dir) {
  const Table* world_table = find_table(tables, "world");
  if (world_table == nullptr || world_table->entries.count("file") == 0) {
    return read_world_tables(tables);
  }
  Section s(world_table, "world");
  const std::string file = s.string("file");
  if (world_table->entries.size() != 1) {
    fail(world_table->line, "world.file excludes inline world keys");
  }
  if (find_table(tables, "obstacle") != nullptr) {
    fail(world_table->line, "world.file excludes inline [[obstacle]] entries");
  }
  const std::filesystem::path path = base_dir / file;
  std::ifstream in(path);
  if (!in) fail(s.line_of("file"), "cannot open world file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  std::vector<Table> world_tables;
  try {
    world_tables = parse_document(text);
  } catch (const NavError& e) {
    fail_field(path.string() + ": " + e.what());
  }
  std::vector<Table> relevant;
  for (auto& t : world_tables) {
    if (t.name == "world" || t.name == "obstacle") relevant.push_back(std::move(t));
  }
  try {
    check_sections(relevant);
    return read_world_tables(relevant);
  } catch (const NavError& e) {
    fail_field(path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Emission

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  // keep numbers recognisable as floats for human readers
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string vec(const Vec2& v) { return "[" + num(v.x()) + ", " + num(v.y()) + "]"; }

}  // namespace

ScenarioConfig parse_config_unchecked(std::string_view text, const std::filesystem::path& base_dir) {
  const std::vector<Table> tables = parse_document(text);
  check_sections(tables);

  ScenarioConfig cfg;
  Scenario& sc = cfg.scenario;
  sc.world = read_world(tables, base_dir);

  {
    Section s(find_table(tables, "planner"), "planner");
    sc.planner.alpha = s.number("alpha");
    sc.planner.beta = s.number("beta");
    sc.planner.goal = s.vec2("goal");
    sc.start = s.vec2("start");
    const std::string mode = s.string_or("mode", "continuous");
    if (mode == "continuous") {
      sc.planner.mode = FieldMode::kContinuous;
    } else if (mode == "discontinuous") {
      sc.planner.mode = FieldMode::kDiscontinuous;
    } else {
      fail(s.line_of("mode"), "planner.mode must be \"continuous\" or \"discontinuous\"");
    }
    s.reject_unknown();
  }

  {
    Section s(find_table(tables, "potential_field"), "potential_field");
    sc.pf = default_pf_params(sc.world);
    sc.pf.k_a = s.number_or("k_a", sc.pf.k_a);
    sc.pf.k_r = s.number_or("k_r", sc.pf.k_r);
    if (s.has("exponent")) sc.pf.exponent = static_cast<int>(s.integer("exponent"));
    sc.pf.semi_axes = s.vec2_or("semi_axes", sc.pf.semi_axes);
    sc.pf.center = s.vec2_or("center", sc.pf.center);
    s.reject_unknown();
  }

  {
    Section s(find_table(tables, "controller"), "controller");
    ControllerParams& c = sc.controller;
    c.tube_radius = s.number_or("tube_radius", c.tube_radius);
    c.gain = s.number_or("gain", c.gain);
    c.smoothing = s.number_or("smoothing", c.smoothing);
    c.adaptation_rate = s.number_or("adaptation_rate", c.adaptation_rate);
    c.leakage = s.number_or("leakage", c.leakage);
    c.bound = s.number_or("bound", c.bound);
    c.band = s.number_or("band", c.band);
    c.initial_estimate = s.number_or("initial_estimate", c.initial_estimate);
    s.reject_unknown();
  }

  {
    Section s(find_table(tables, "robot"), "robot");
    sc.robot.offset = s.number("offset");
    sc.robot.input_limit = s.number_or("input_limit", sc.robot.input_limit);
    sc.robot.body_radius = sc.world.robot_radius;
    if (s.has("initial_pose")) {
      const auto pose = s.array("initial_pose");
      if (pose.size() != 3) fail(s.line_of("initial_pose"), "robot.initial_pose must be [x, y, theta]");
      cfg.sim.initial_pose = Pose{pose[0], pose[1], pose[2]};
    }
    s.reject_unknown();
  }

  {
    Section s(find_table(tables, "disturbance"), "disturbance");
    const std::string kind = s.string_or("kind", "none");
    if (kind == "none") {
      sc.disturbance = DisturbanceModel::none();
    } else if (kind == "sinusoidal") {
      SinusoidalDisturbance d;
      d.scale = s.number_or("scale", d.scale);
      d.amplitude = s.vec2_or("amplitude", d.amplitude);
      d.frequency = s.vec2_or("frequency", d.frequency);
      d.phase = s.vec2_or("phase", d.phase);
      d.offset = s.vec2_or("offset", d.offset);
      sc.disturbance = DisturbanceModel::sinusoidal(d);
    } else {
      fail(s.line_of("kind"), "disturbance.kind must be \"none\" or \"sinusoidal\"");
    }
    s.reject_unknown();
  }

  {
    Section s(find_table(tables, "sim"), "sim");
    SimConfig& sim = cfg.sim;
    sim.dt = s.number_or("dt", sim.dt);
    sim.duration = s.number_or("duration", sim.duration);
    sim.goal_tol = s.number_or("goal_tol", sim.goal_tol);
    const std::string integrator = s.string_or("integrator", "rk4");
    if (integrator == "rk4") {
      sim.integrator = Integrator::kRk4;
    } else if (integrator == "euler") {
      sim.integrator = Integrator::kEuler;
    } else {
      fail(s.line_of("integrator"), "sim.integrator must be \"rk4\" or \"euler\"");
    }
    if (s.boolean_or("clamp_input", false)) sim.input_clamp = sc.robot.input_limit;
    if (s.has("seed")) {
      const std::int64_t seed = s.integer("seed");
      if (seed < 0) fail(s.line_of("seed"), "sim.seed must be >= 0");
      sim.seed = static_cast<std::uint64_t>(seed);
    }
    sim.project_to_margin = s.boolean_or("project_to_margin", false);
    if (s.has("sweep_count")) {
      const std::int64_t n = s.integer("sweep_count");
      if (n < 0) fail(s.line_of("sweep_count"), "sim.sweep_count must be >= 0");
      cfg.sweep_count = static_cast<std::size_t>(n);
    }
    cfg.sweep_clearance = s.number_or("sweep_clearance", cfg.sweep_clearance);
    cfg.output_dir = s.string_or("output_dir", "");
    s.reject_unknown();
  }
  return cfg;
}

std::vector<std::string> config_problems(const ScenarioConfig& cfg) {
  std::vector<std::string> problems;
  const Scenario& sc = cfg.scenario;
  for (const auto& v : validate_world(sc.world).violations) problems.push_back("world: " + v.message);

  auto collect = [&](auto&& check) {
    try {
      check();
    } catch (const NavError& e) {
      problems.emplace_back(e.what());
    }
  };
  collect([&] { check_planner_params(sc.planner, sc.world); });
  collect([&] { check_pf_params(sc.pf); });
  collect([&] { check_controller_params(sc.controller, sc.world.margin); });
  collect([&] { check_robot_params(sc.robot); });
  collect([&] { check_sim_config(cfg.sim); });
  if (!in_free_space(sc.world, sc.start, sc.world.margin)) {
    problems.emplace_back("planner.start must lie in the free space X_eps");
  }
  if (!(cfg.sweep_clearance >= 0.0)) problems.emplace_back("sim.sweep_clearance must be >= 0");
  return problems;
}

ScenarioConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  ScenarioConfig cfg = parse_config_unchecked(text, base_dir);
  const auto problems = config_problems(cfg);
  if (!problems.empty()) throw NavError(ErrorKind::kConfig, problems.front());
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NavError(ErrorKind::kConfig, "cannot open config file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_config(buffer.str(), path.parent_path());
  } catch (const NavError& e) {
    throw NavError(ErrorKind::kConfig, path.string() + ": " + e.what());
  }
}

std::string emit_config(const ScenarioConfig& cfg) {
  const Scenario& sc = cfg.scenario;
  std::ostringstream os;

  os << "[world]\n";
  if (const auto* rect = std::get_if<RectangleShape>(&sc.world.workspace.shape)) {
    os << "shape = \"rectangle\"\n"
       << "center = " << vec(rect->center) << "\n"
       << "half_extents = " << vec(rect->half_extents) << "\n";
  } else {
    const auto& disc = std::get<DiscShape>(sc.world.workspace.shape);
    os << "shape = \"disc\"\n"
       << "center = " << vec(disc.center) << "\n"
       << "radius = " << num(disc.radius) << "\n";
  }
  os << "robot_radius = " << num(sc.world.robot_radius) << "\n"
     << "clearance = " << num(sc.world.clearance) << "\n"
     << "margin = " << num(sc.world.margin) << "\n"
     << "influence = " << num(sc.world.influence) << "\n";

  for (const auto& o : sc.world.obstacles) {
    os << "\n[[obstacle]]\n"
       << "center = " << vec(o.center) << "\n"
       << "radius = " << num(o.radius) << "\n";
  }

  os << "\n[planner]\n"
     << "alpha = " << num(sc.planner.alpha) << "\n"
     << "beta = " << num(sc.planner.beta) << "\n"
     << "goal = " << vec(sc.planner.goal) << "\n"
     << "start = " << vec(sc.start) << "\n"
     << "mode = \""
     << (sc.planner.mode == FieldMode::kContinuous ? "continuous" : "discontinuous") << "\"\n";

  os << "\n[potential_field]\n"
     << "k_a = " << num(sc.pf.k_a) << "\n"
     << "k_r = " << num(sc.pf.k_r) << "\n"
     << "exponent = " << sc.pf.exponent << "\n"
     << "semi_axes = " << vec(sc.pf.semi_axes) << "\n"
     << "center = " << vec(sc.pf.center) << "\n";

  const ControllerParams& c = sc.controller;
  os << "\n[controller]\n"
     << "tube_radius = " << num(c.tube_radius) << "\n"
     << "gain = " << num(c.gain) << "\n"
     << "smoothing = " << num(c.smoothing) << "\n"
     << "adaptation_rate = " << num(c.adaptation_rate) << "\n"
     << "leakage = " << num(c.leakage) << "\n"
     << "bound = " << num(c.bound) << "\n"
     << "band = " << num(c.band) << "\n"
     << "initial_estimate = " << num(c.initial_estimate) << "\n";

  os << "\n[robot]\n"
     << "offset = " << num(sc.robot.offset) << "\n"
     << "input_limit = " << num(sc.robot.input_limit) << "\n";
  if (cfg.sim.initial_pose) {
    const Pose& p = *cfg.sim.initial_pose;
    os << "initial_pose = [" << num(p.x) << ", " << num(p.y) << ", " << num(p.theta) << "]\n";
  }

  os << "\n[disturbance]\n";
  switch (sc.disturbance.kind()) {
    case DisturbanceModel::Kind::kSinusoidal: {
      const auto& d = sc.disturbance.sinusoid();
      os << "kind = \"sinusoidal\"\n"
         << "scale = " << num(d.scale) << "\n"
         << "amplitude = " << vec(d.amplitude) << "\n"
         << "frequency = " << vec(d.frequency) << "\n"
         << "phase = " << vec(d.phase) << "\n"
         << "offset = " << vec(d.offset) << "\n";
      break;
    }
    case DisturbanceModel::Kind::kCustom:
      throw NavError(ErrorKind::kConfig, "custom disturbance signals cannot be serialized");
    case DisturbanceModel::Kind::kNone:
      os << "kind = \"none\"\n";
      break;
  }

  const SimConfig& sim = cfg.sim;
  os << "\n[sim]\n"
     << "dt = " << num(sim.dt) << "\n"
     << "duration = " << num(sim.duration) << "\n"
     << "goal_tol = " << num(sim.goal_tol) << "\n"
     << "integrator = \"" << (sim.integrator == Integrator::kRk4 ? "rk4" : "euler") << "\"\n"
     << "clamp_input = " << (sim.input_clamp ? "true" : "false") << "\n"
     << "seed = " << sim.seed << "\n"
     << "project_to_margin = " << (sim.project_to_margin ? "true" : "false") << "\n"
     << "sweep_count = " << cfg.sweep_count << "\n"
     << "sweep_clearance = " << num(cfg.sweep_clearance) << "\n";
  if (!cfg.output_dir.empty()) {
    std::string escaped;
    for (const char ch : cfg.output_dir) {
      if (ch == '"' || ch == '\\') escaped.push_back('\\');
      escaped.push_back(ch);
    }
    os << "output_dir = \"" << escaped << "\"\n";
  }
  return os.str();
}

}  // namespace tcnav
