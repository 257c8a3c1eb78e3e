#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "quenchbat/cli.hpp"
#include "quenchbat/csv.hpp"
#include "quenchbat/errors.hpp"

namespace quenchbat::cli {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& field, const std::string& text, bool allow_inf = false) {
  if (allow_inf) {
    if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
    if (text == "-inf") return -std::numeric_limits<double>::infinity();
  }
  double v{};
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || p != text.data() + text.size() || std::isnan(v)) {
    throw ConfigError(field, "expected a number, got '" + text + "'");
  }
  if (!allow_inf && !std::isfinite(v)) throw ConfigError(field, "must be finite");
  return v;
}

std::size_t parse_size(const std::string& field, const std::string& text) {
  unsigned long long v{};
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || p != text.data() + text.size()) {
    throw ConfigError(field, "expected a positive integer, got '" + text + "'");
  }
  if (v == 0) throw ConfigError(field, "must be >= 1");
  return static_cast<std::size_t>(v);
}

struct Section {
  std::string name;
  std::vector<std::pair<std::string, std::string>> entries;

  const std::string* get(const std::string& key) const {
    for (const auto& [k, v] : entries) {
      if (k == key) return &v;
    }
    return nullptr;
  }
};

struct ParsedFile {
  std::optional<std::string> command;
  std::vector<Section> sections;

  const Section* find(const std::string& name) const {
    for (const auto& s : sections) {
      if (s.name == name) return &s;
    }
    return nullptr;
  }
};

ParsedFile tokenize(const std::string& text) {
  ParsedFile file;
  Section* current = nullptr;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("config", "unterminated section header '" + line + "'");
      std::string name = trim(line.substr(1, line.size() - 2));
      if (name.empty()) throw ConfigError("config", "empty section name");
      if (file.find(name) != nullptr) throw ConfigError(name, "duplicate section");
      file.sections.push_back(Section{name, {}});
      current = &file.sections.back();
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(current ? current->name : std::string("config"),
                        "expected 'key = value', got '" + line + "'");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(current ? current->name : std::string("config"), "empty key");
    if (current == nullptr) {
      if (key != "command") throw ConfigError(key, "only 'command' is allowed outside a section");
      if (file.command) throw ConfigError("command", "duplicate key");
      file.command = value;
      continue;
    }
    if (current->get(key) != nullptr) throw ConfigError(current->name + "." + key, "duplicate key");
    current->entries.emplace_back(std::move(key), std::move(value));
  }
  return file;
}

void check_keys(const Section& s, std::initializer_list<const char*> known) {
  for (const auto& [k, v] : s.entries) {
    (void)v;
    if (std::find_if(known.begin(), known.end(), [&](const char* n) { return k == n; }) ==
        known.end()) {
      throw ConfigError(s.name + "." + k, "unknown key");
    }
  }
}

const char* command_name(Command c) {
  switch (c) {
    case Command::kCurve: return "curve";
    case Command::kSweep: return "sweep";
    case Command::kPower: return "power";
    case Command::kScaling: return "scaling";
    case Command::kKinks: return "kinks";
    case Command::kRecurrence: return "recurrence";
  }
  return "curve";
}

Command parse_command(const std::string& text) {
  if (text == "curve") return Command::kCurve;
  if (text == "sweep") return Command::kSweep;
  if (text == "power") return Command::kPower;
  if (text == "scaling") return Command::kScaling;
  if (text == "kinks") return Command::kKinks;
  if (text == "recurrence") return Command::kRecurrence;
  throw ConfigError("command",
                    "expected one of curve, sweep, power, scaling, kinks, recurrence; got '" +
                        text + "'");
}

const char* model_section_name(ModelKind m) {
  switch (m) {
    case ModelKind::kIsing: return "ising";
    case ModelKind::kXy: return "xy";
    case ModelKind::kCluster: return "cluster";
    case ModelKind::kSsh: return "ssh";
  }
  return "ising";
}

bool section_allowed(Command cmd, const std::string& name, const std::string& model_section) {
  if (name == model_section || name == "quench" || name == "thermal" || name == "output") {
    return true;
  }
  switch (cmd) {
    case Command::kCurve: return name == "grid" || name == "tau";
    case Command::kSweep: return name == "grid" || name == "tau" || name == "sweep";
    case Command::kKinks:
      return name == "grid" || name == "tau" || name == "sweep" || name == "kinks";
    case Command::kPower: return name == "grid";
    case Command::kScaling: return name == "scaling";
    case Command::kRecurrence: return name == "grid" || name == "recurrence";
  }
  return false;
}

void check_param_name(const std::string& field, const RunConfig& c, const std::string& name) {
  std::vector<const char*> allowed;
  switch (c.model) {
    case ModelKind::kIsing: allowed = {"h"}; break;
    case ModelKind::kXy: allowed = {"gamma", "h"}; break;
    case ModelKind::kCluster: allowed = {"lambda"}; break;
    case ModelKind::kSsh:
      if (c.ssh_protocol) {
        allowed = {"delta1"};
      } else {
        allowed = {"J1", "J1p", "J2", "J3", "J3p"};
      }
      break;
  }
  if (std::find_if(allowed.begin(), allowed.end(), [&](const char* n) { return name == n; }) ==
      allowed.end()) {
    std::string list;
    for (const char* n : allowed) {
      if (!list.empty()) list += ", ";
      list += n;
    }
    throw ConfigError(field, "unknown parameter '" + name + "' for model '" +
                                 model_section_name(c.model) + "' (one of: " + list + ")");
  }
}

void parse_model_section(const Section& s, RunConfig& c) {
  if (s.name == "ising") {
    check_keys(s, {"h"});
    c.model = ModelKind::kIsing;
    if (const auto* v = s.get("h")) c.ising.h = parse_double("ising.h", *v);
    return;
  }
  if (s.name == "xy") {
    check_keys(s, {"gamma", "h"});
    c.model = ModelKind::kXy;
    if (const auto* v = s.get("gamma")) c.xy.gamma = parse_double("xy.gamma", *v);
    if (const auto* v = s.get("h")) c.xy.h = parse_double("xy.h", *v);
    return;
  }
  if (s.name == "cluster") {
    check_keys(s, {"lambda"});
    c.model = ModelKind::kCluster;
    if (const auto* v = s.get("lambda")) c.cluster.lambda = parse_double("cluster.lambda", *v);
    return;
  }
  check_keys(s, {"J1", "J1p", "J2", "J3", "J3p", "delta1", "delta3", "alpha", "beta_c", "r", "m",
                 "q"});
  c.model = ModelKind::kSsh;
  bool raw = false;
  for (const char* k : {"J1", "J1p", "J2", "J3", "J3p"}) {
    if (s.get(k) != nullptr) raw = true;
  }
  bool proto = false;
  for (const char* k : {"delta1", "delta3", "alpha", "beta_c", "r", "m", "q"}) {
    if (s.get(k) != nullptr) proto = true;
  }
  if (raw && proto) {
    throw ConfigError("ssh",
                      "cannot mix raw hoppings (J1, J1p, J2, J3, J3p) with protocol parameters "
                      "(delta1, delta3, alpha, beta_c, r, m, q)");
  }
  if (proto) {
    c.ssh_protocol = true;
    const auto* d1 = s.get("delta1");
    if (d1 == nullptr) throw ConfigError("ssh.delta1", "the protocol form requires delta1");
    c.protocol_delta1 = parse_double("ssh.delta1", *d1);
    if (const auto* v = s.get("alpha")) c.protocol.alpha = parse_double("ssh.alpha", *v);
    if (const auto* v = s.get("beta_c")) c.protocol.beta_c = parse_double("ssh.beta_c", *v);
    if (const auto* v = s.get("r")) c.protocol.r = parse_double("ssh.r", *v);
    const auto* d3 = s.get("delta3");
    if (d3 != nullptr && (s.get("m") != nullptr || s.get("q") != nullptr)) {
      throw ConfigError("ssh.delta3", "give either delta3 or the line (m, q), not both");
    }
    if (d3 != nullptr) {
      c.protocol.m = 0.0;
      c.protocol.q = parse_double("ssh.delta3", *d3);
    } else {
      if (const auto* v = s.get("m")) c.protocol.m = parse_double("ssh.m", *v);
      if (const auto* v = s.get("q")) c.protocol.q = parse_double("ssh.q", *v);
    }
    return;
  }
  if (const auto* v = s.get("J1")) c.ssh.j1 = parse_double("ssh.J1", *v);
  if (const auto* v = s.get("J1p")) c.ssh.j1p = parse_double("ssh.J1p", *v);
  if (const auto* v = s.get("J2")) c.ssh.j2 = parse_double("ssh.J2", *v);
  if (const auto* v = s.get("J3")) c.ssh.j3 = parse_double("ssh.J3", *v);
  if (const auto* v = s.get("J3p")) c.ssh.j3p = parse_double("ssh.J3p", *v);
}

std::vector<std::size_t> parse_n_list(const std::string& field, const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    std::string item =
        trim(comma == std::string::npos ? text.substr(start) : text.substr(start, comma - start));
    if (item.empty()) throw ConfigError(field, "empty entry in list '" + text + "'");
    out.push_back(parse_size(field, item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.size() < 4) throw ConfigError(field, "need at least four chain sizes");
  return out;
}

std::vector<double> parse_double_list(const std::string& field, const std::string& text,
                                      bool allow_inf) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    std::string item =
        trim(comma == std::string::npos ? text.substr(start) : text.substr(start, comma - start));
    if (item.empty()) throw ConfigError(field, "empty entry in list '" + text + "'");
    out.push_back(parse_double(field, item, allow_inf));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  ParsedFile file = tokenize(text);
  RunConfig c;

  if (!file.command) throw ConfigError("command", "required");
  c.command = parse_command(trim(*file.command));

  static const char* kKnownSections[] = {"ising", "xy", "cluster", "ssh", "quench", "sweep",
                                         "grid", "thermal", "tau", "scaling", "kinks",
                                         "recurrence", "output"};
  for (const auto& s : file.sections) {
    if (std::find_if(std::begin(kKnownSections), std::end(kKnownSections),
                     [&](const char* n) { return s.name == n; }) == std::end(kKnownSections)) {
      throw ConfigError(s.name, "unknown section");
    }
  }

  const Section* model_section = nullptr;
  for (const auto& s : file.sections) {
    if (s.name == "ising" || s.name == "xy" || s.name == "cluster" || s.name == "ssh") {
      if (model_section != nullptr) {
        throw ConfigError("model",
                          "exactly one model section is required ([ising], [xy], [cluster] or "
                          "[ssh])");
      }
      model_section = &s;
    }
  }
  if (model_section == nullptr) {
    throw ConfigError("model",
                      "exactly one model section is required ([ising], [xy], [cluster] or [ssh])");
  }

  for (const auto& s : file.sections) {
    if (!section_allowed(c.command, s.name, model_section->name)) {
      throw ConfigError(s.name,
                        "section not used by command '" + std::string(command_name(c.command)) +
                            "'");
    }
  }

  parse_model_section(*model_section, c);

  if (const Section* s = file.find("quench")) {
    check_keys(*s, {"param", "amount"});
    const auto* param = s->get("param");
    if (param == nullptr) throw ConfigError("quench.param", "required");
    check_param_name("quench.param", c, *param);
    c.quench_param = *param;
    if (const auto* v = s->get("amount")) c.quench_amount = parse_double("quench.amount", *v);
  }

  if (const Section* s = file.find("sweep")) {
    check_keys(*s, {"param", "from", "to", "step", "target"});
    const auto* param = s->get("param");
    if (param == nullptr) throw ConfigError("sweep.param", "required");
    check_param_name("sweep.param", c, *param);
    c.sweep_param = *param;
    const auto* from = s->get("from");
    const auto* to = s->get("to");
    const auto* step = s->get("step");
    if (from == nullptr) throw ConfigError("sweep.from", "required");
    if (to == nullptr) throw ConfigError("sweep.to", "required");
    if (step == nullptr) throw ConfigError("sweep.step", "required");
    c.sweep_from = parse_double("sweep.from", *from);
    c.sweep_to = parse_double("sweep.to", *to);
    c.sweep_step = parse_double("sweep.step", *step);
    if (!(c.sweep_step > 0.0)) throw ConfigError("sweep.step", "must be > 0");
    if (c.sweep_to < c.sweep_from) throw ConfigError("sweep.to", "must be >= sweep.from");
    if (const auto* v = s->get("target")) {
      if (*v == "initial") {
        c.sweep_target = SweepTarget::kInitial;
      } else if (*v == "final") {
        c.sweep_target = SweepTarget::kFinal;
      } else if (*v == "both") {
        c.sweep_target = SweepTarget::kBoth;
      } else {
        throw ConfigError("sweep.target",
                          "expected 'initial', 'final' or 'both', got '" + *v + "'");
      }
    }
  } else if (c.command == Command::kSweep || c.command == Command::kKinks) {
    throw ConfigError("sweep", "required by command '" +
                                   std::string(command_name(c.command)) + "'");
  }

  if (const Section* s = file.find("grid")) {
    check_keys(*s, {"mode", "n", "offset", "rel_tol"});
    if (const auto* v = s->get("mode")) {
      if (*v == "finite") {
        c.finite_grid = true;
      } else if (*v == "thermodynamic") {
        c.finite_grid = false;
      } else {
        throw ConfigError("grid.mode", "expected 'finite' or 'thermodynamic', got '" + *v + "'");
      }
    }
    if (const auto* v = s->get("n")) {
      if (!c.finite_grid) throw ConfigError("grid.n", "only used with mode = finite");
      c.grid_modes = parse_size("grid.n", *v);
    }
    if (const auto* v = s->get("offset")) {
      if (!c.finite_grid) throw ConfigError("grid.offset", "only used with mode = finite");
      if (*v == "half_integer") {
        c.integer_offset = false;
      } else if (*v == "integer") {
        c.integer_offset = true;
      } else {
        throw ConfigError("grid.offset", "expected 'half_integer' or 'integer', got '" + *v + "'");
      }
    }
    if (const auto* v = s->get("rel_tol")) {
      if (c.finite_grid) throw ConfigError("grid.rel_tol", "only used with mode = thermodynamic");
      c.grid_rel_tol = parse_double("grid.rel_tol", *v);
      if (!(c.grid_rel_tol > 0.0)) throw ConfigError("grid.rel_tol", "must be > 0");
    }
  }
  if (c.command == Command::kRecurrence && !c.finite_grid) {
    throw ConfigError("grid.mode", "recurrence needs a finite grid");
  }
  if (c.command == Command::kRecurrence && c.integer_offset) {
    throw ConfigError("grid.offset", "recurrence uses the half-integer grid");
  }

  {
    const Section* s = file.find("thermal");
    const std::string* beta = s != nullptr ? s->get("beta") : nullptr;
    if (beta == nullptr) throw ConfigError("thermal.beta", "required");
    check_keys(*s, {"beta", "mu"});
    c.beta = parse_double("thermal.beta", *beta, /*allow_inf=*/true);
    if (!(c.beta > 0.0)) throw ConfigError("thermal.beta", "must be > 0");
    if (const auto* v = s->get("mu")) c.mu = parse_double("thermal.mu", *v);
  }

  if (const Section* s = file.find("tau")) {
    if (c.command == Command::kCurve) {
      check_keys(*s, {"from", "to", "count", "spacing", "values"});
      if (const auto* v = s->get("values")) {
        for (const char* k : {"from", "to", "count", "spacing"}) {
          if (s->get(k) != nullptr) {
            throw ConfigError("tau.values",
                              "give either a values list or a range (from, to, count, spacing)");
          }
        }
        c.tau_values = parse_double_list("tau.values", *v, /*allow_inf=*/true);
        for (std::size_t i = 0; i < c.tau_values.size(); ++i) {
          if (!(c.tau_values[i] >= 0.0)) throw ConfigError("tau.values", "must all be >= 0");
          if (i > 0 && !(c.tau_values[i] > c.tau_values[i - 1])) {
            throw ConfigError("tau.values", "must increase strictly");
          }
        }
      }
      if (const auto* v = s->get("from")) c.tau_range.from = parse_double("tau.from", *v);
      if (const auto* v = s->get("to")) c.tau_range.to = parse_double("tau.to", *v);
      if (const auto* v = s->get("count")) c.tau_range.count = parse_size("tau.count", *v);
      if (const auto* v = s->get("spacing")) {
        if (*v == "log") {
          c.tau_range.log_spacing = true;
        } else if (*v == "linear") {
          c.tau_range.log_spacing = false;
        } else {
          throw ConfigError("tau.spacing", "expected 'log' or 'linear', got '" + *v + "'");
        }
      }
      if (!(c.tau_range.from > 0.0)) throw ConfigError("tau.from", "must be > 0");
      if (!(c.tau_range.to > c.tau_range.from)) throw ConfigError("tau.to", "must be > tau.from");
      if (c.tau_range.count < 2) throw ConfigError("tau.count", "must be >= 2");
    } else {
      for (const char* k : {"from", "to", "count", "spacing", "values"}) {
        if (s->get(k) != nullptr) {
          throw ConfigError(std::string("tau.") + k, "only the curve command takes a tau grid");
        }
      }
      check_keys(*s, {"value"});
      if (const auto* v = s->get("value")) {
        c.tau_value = parse_double("tau.value", *v, /*allow_inf=*/true);
        if (!(c.tau_value >= 0.0)) throw ConfigError("tau.value", "must be >= 0");
      }
    }
  }

  if (const Section* s = file.find("scaling")) {
    check_keys(*s, {"n_list"});
    const auto* v = s->get("n_list");
    if (v == nullptr) throw ConfigError("scaling.n_list", "required");
    c.scaling_n_list = parse_n_list("scaling.n_list", *v);
  } else if (c.command == Command::kScaling) {
    throw ConfigError("scaling", "required by command 'scaling'");
  }

  if (const Section* s = file.find("kinks")) {
    check_keys(*s, {"threshold"});
    if (const auto* v = s->get("threshold")) {
      c.kink_threshold = parse_double("kinks.threshold", *v);
      if (!(c.kink_threshold > 0.0)) throw ConfigError("kinks.threshold", "must be > 0");
    }
  }

  // Without an explicit tau_max the horizon tracks the chain: revivals set
  // in on the scale of the system size.
  if (c.command == Command::kRecurrence) {
    c.recurrence_tau_max = 2.0 * static_cast<double>(c.grid_modes);
  }
  if (const Section* s = file.find("recurrence")) {
    check_keys(*s, {"tau_max", "dt", "window", "onset_factor"});
    if (const auto* v = s->get("tau_max")) {
      c.recurrence_tau_max = parse_double("recurrence.tau_max", *v);
      if (!(c.recurrence_tau_max > 0.0)) throw ConfigError("recurrence.tau_max", "must be > 0");
    }
    if (const auto* v = s->get("dt")) {
      c.recurrence_dt = parse_double("recurrence.dt", *v);
      if (!(c.recurrence_dt > 0.0)) throw ConfigError("recurrence.dt", "must be > 0");
    }
    if (const auto* v = s->get("window")) {
      c.recurrence_window = parse_size("recurrence.window", *v);
      if (c.recurrence_window < 2) throw ConfigError("recurrence.window", "must be >= 2");
    }
    if (const auto* v = s->get("onset_factor")) {
      c.recurrence_onset_factor = parse_double("recurrence.onset_factor", *v);
      if (!(c.recurrence_onset_factor > 1.0)) {
        throw ConfigError("recurrence.onset_factor", "must be > 1");
      }
    }
  }

  if (const Section* s = file.find("output")) {
    check_keys(*s, {"dir"});
    if (const auto* v = s->get("dir")) {
      if (v->empty()) throw ConfigError("output.dir", "must not be empty");
      c.output_dir = *v;
    }
  }

  bool needs_quench = c.command == Command::kCurve || c.command == Command::kPower ||
                      c.command == Command::kScaling || c.command == Command::kRecurrence ||
                      ((c.command == Command::kSweep || c.command == Command::kKinks) &&
                       c.sweep_target != SweepTarget::kFinal);
  if (needs_quench && c.quench_param.empty()) {
    throw ConfigError("quench.param", "required by command '" +
                                          std::string(command_name(c.command)) +
                                          "' (set [quench] param and amount)");
  }

  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("config", "cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

std::string canonical_ini(const RunConfig& c) {
  std::string out;
  auto line = [&out](const std::string& key, const std::string& value) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  };
  auto num = [&line](const std::string& key, double v) { line(key, csv::format_double(v)); };
  auto count = [&line](const std::string& key, std::size_t v) { line(key, std::to_string(v)); };
  auto section = [&out](const char* name) {
    out += '\n';
    out += '[';
    out += name;
    out += "]\n";
  };

  line("command", command_name(c.command));

  switch (c.model) {
    case ModelKind::kIsing:
      section("ising");
      num("h", c.ising.h);
      break;
    case ModelKind::kXy:
      section("xy");
      num("gamma", c.xy.gamma);
      num("h", c.xy.h);
      break;
    case ModelKind::kCluster:
      section("cluster");
      num("lambda", c.cluster.lambda);
      break;
    case ModelKind::kSsh:
      section("ssh");
      if (c.ssh_protocol) {
        num("delta1", c.protocol_delta1);
        num("alpha", c.protocol.alpha);
        num("beta_c", c.protocol.beta_c);
        num("r", c.protocol.r);
        num("m", c.protocol.m);
        num("q", c.protocol.q);
      } else {
        num("J1", c.ssh.j1);
        num("J1p", c.ssh.j1p);
        num("J2", c.ssh.j2);
        num("J3", c.ssh.j3);
        num("J3p", c.ssh.j3p);
      }
      break;
  }

  if (!c.quench_param.empty()) {
    section("quench");
    line("param", c.quench_param);
    num("amount", c.quench_amount);
  }

  if (c.command == Command::kSweep || c.command == Command::kKinks) {
    section("sweep");
    line("param", c.sweep_param);
    num("from", c.sweep_from);
    num("to", c.sweep_to);
    num("step", c.sweep_step);
    line("target", c.sweep_target == SweepTarget::kInitial
                       ? "initial"
                       : (c.sweep_target == SweepTarget::kFinal ? "final" : "both"));
  }
  if (c.command == Command::kKinks) {
    section("kinks");
    num("threshold", c.kink_threshold);
  }
  if (c.command == Command::kCurve) {
    section("tau");
    if (!c.tau_values.empty()) {
      std::string list;
      for (double t : c.tau_values) {
        if (!list.empty()) list += ",";
        list += csv::format_double(t);
      }
      line("values", list);
    } else {
      num("from", c.tau_range.from);
      num("to", c.tau_range.to);
      count("count", c.tau_range.count);
      line("spacing", c.tau_range.log_spacing ? "log" : "linear");
    }
  } else if (c.command == Command::kSweep || c.command == Command::kKinks) {
    section("tau");
    num("value", c.tau_value);
  }
  if (c.command == Command::kScaling) {
    section("scaling");
    std::string list;
    for (std::size_t n : c.scaling_n_list) {
      if (!list.empty()) list += ",";
      list += std::to_string(n);
    }
    line("n_list", list);
  }
  if (c.command == Command::kRecurrence) {
    section("recurrence");
    num("tau_max", c.recurrence_tau_max);
    num("dt", c.recurrence_dt);
    count("window", c.recurrence_window);
    num("onset_factor", c.recurrence_onset_factor);
  }

  if (c.command != Command::kScaling) {
    section("grid");
    if (c.finite_grid) {
      line("mode", "finite");
      count("n", c.grid_modes);
      line("offset", c.integer_offset ? "integer" : "half_integer");
    } else {
      line("mode", "thermodynamic");
      num("rel_tol", c.grid_rel_tol);
    }
  }

  section("thermal");
  num("beta", c.beta);
  num("mu", c.mu);

  section("output");
  line("dir", c.output_dir);

  return out;
}

}  // namespace quenchbat::cli
