#include "nncda/run_config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "nncda/csv.hpp"

namespace nncda {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string unquote(const std::string& s, int line_no) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    return s.substr(1, s.size() - 2);
  }
  throw config_error("config line " + std::to_string(line_no) +
                     ": expected a quoted string");
}

double parse_number(const std::string& s, int line_no) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    throw config_error("config line " + std::to_string(line_no) +
                       ": bad number '" + s + "'");
  }
  return v;
}

long parse_integer(const std::string& s, int line_no) {
  const double v = parse_number(s, line_no);
  const long l = std::lround(v);
  if (v != static_cast<double>(l)) {
    throw config_error("config line " + std::to_string(line_no) +
                       ": expected an integer, got '" + s + "'");
  }
  return l;
}

using Setter = std::function<void(RunConfig&, const std::string&, int)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> map = {
      {"grid.n",
       [](RunConfig& c, const std::string& v, int ln) {
         c.grid.n = static_cast<int>(parse_integer(v, ln));
       }},
      {"grid.L",
       [](RunConfig& c, const std::string& v, int ln) {
         c.grid.L = parse_number(v, ln);
       }},
      {"physics.nu",
       [](RunConfig& c, const std::string& v, int ln) {
         c.physics.nu = parse_number(v, ln);
       }},
      {"physics.target_G",
       [](RunConfig& c, const std::string& v, int ln) {
         c.physics.target_G = parse_number(v, ln);
       }},
      {"physics.forcing.seed",
       [](RunConfig& c, const std::string& v, int ln) {
         c.physics.forcing.seed =
             static_cast<std::uint64_t>(parse_integer(v, ln));
       }},
      {"physics.forcing.k_min",
       [](RunConfig& c, const std::string& v, int ln) {
         c.physics.forcing.k_min = static_cast<int>(parse_integer(v, ln));
       }},
      {"physics.forcing.k_max",
       [](RunConfig& c, const std::string& v, int ln) {
         c.physics.forcing.k_max = static_cast<int>(parse_integer(v, ln));
       }},
      {"da.mode",
       [](RunConfig& c, const std::string& v, int ln) {
         c.da.mode = unquote(v, ln);
       }},
      {"da.mu",
       [](RunConfig& c, const std::string& v, int ln) {
         c.da.mu = parse_number(v, ln);
       }},
      {"da.beta",
       [](RunConfig& c, const std::string& v, int ln) {
         c.da.beta = parse_number(v, ln);
       }},
      {"da.gamma",
       [](RunConfig& c, const std::string& v, int ln) {
         c.da.gamma = parse_number(v, ln);
       }},
      {"da.observe_every",
       [](RunConfig& c, const std::string& v, int ln) {
         c.da.observe_every = static_cast<int>(parse_integer(v, ln));
       }},
      {"da.interpolant.kind",
       [](RunConfig& c, const std::string& v, int ln) {
         c.da.interpolant.kind = unquote(v, ln);
       }},
      {"da.interpolant.m",
       [](RunConfig& c, const std::string& v, int ln) {
         c.da.interpolant.m = static_cast<int>(parse_integer(v, ln));
       }},
      {"da.interpolant.h",
       [](RunConfig& c, const std::string& v, int ln) {
         c.da.interpolant.h = parse_number(v, ln);
       }},
      {"time.dt",
       [](RunConfig& c, const std::string& v, int ln) {
         c.time.dt = parse_number(v, ln);
       }},
      {"time.t_spinup",
       [](RunConfig& c, const std::string& v, int ln) {
         c.time.t_spinup = parse_number(v, ln);
       }},
      {"time.t_end",
       [](RunConfig& c, const std::string& v, int ln) {
         c.time.t_end = parse_number(v, ln);
       }},
      {"time.sample_every",
       [](RunConfig& c, const std::string& v, int ln) {
         c.time.sample_every = static_cast<int>(parse_integer(v, ln));
       }},
      {"theory.c",
       [](RunConfig& c, const std::string& v, int ln) {
         c.theory.c = parse_number(v, ln);
       }},
      {"theory.eps",
       [](RunConfig& c, const std::string& v, int ln) {
         c.theory.eps = parse_number(v, ln);
       }},
      {"theory.T_window",
       [](RunConfig& c, const std::string& v, int ln) {
         c.theory.T_window = parse_number(v, ln);
       }},
      {"theory.c0",
       [](RunConfig& c, const std::string& v, int ln) {
         c.theory.c0 = parse_number(v, ln);
       }},
      {"io.output_dir",
       [](RunConfig& c, const std::string& v, int ln) {
         c.io.output_dir = unquote(v, ln);
       }},
      {"io.checkpoint_every",
       [](RunConfig& c, const std::string& v, int ln) {
         c.io.checkpoint_every = parse_integer(v, ln);
       }},
  };
  return map;
}

void assign(RunConfig& config, const std::string& path,
            const std::string& value, int line_no) {
  const auto it = setters().find(path);
  if (it == setters().end()) {
    throw config_error("config line " + std::to_string(line_no) +
                       ": unknown key '" + path + "'");
  }
  it->second(config, value, line_no);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig config;
  std::istringstream is(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw config_error("config line " + std::to_string(line_no) +
                           ": unterminated section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw config_error("config line " + std::to_string(line_no) +
                         ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string path = section.empty() ? key : section + "." + key;
    assign(config, path, value, line_no);
  }
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw config_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_config(buf.str());
}

std::string to_toml(const RunConfig& c) {
  std::ostringstream os;
  os << "[grid]\n";
  os << "n = " << c.grid.n << "\n";
  os << "L = " << csv_double(c.grid.L) << "\n\n";
  os << "[physics]\n";
  os << "nu = " << csv_double(c.physics.nu) << "\n";
  os << "target_G = " << csv_double(c.physics.target_G) << "\n\n";
  os << "[physics.forcing]\n";
  os << "seed = " << c.physics.forcing.seed << "\n";
  os << "k_min = " << c.physics.forcing.k_min << "\n";
  os << "k_max = " << c.physics.forcing.k_max << "\n\n";
  os << "[da]\n";
  os << "mode = \"" << c.da.mode << "\"\n";
  os << "mu = " << csv_double(c.da.mu) << "\n";
  os << "beta = " << csv_double(c.da.beta) << "\n";
  os << "gamma = " << csv_double(c.da.gamma) << "\n";
  os << "observe_every = " << c.da.observe_every << "\n\n";
  os << "[da.interpolant]\n";
  os << "kind = \"" << c.da.interpolant.kind << "\"\n";
  os << "m = " << c.da.interpolant.m << "\n";
  os << "h = " << csv_double(c.da.interpolant.h) << "\n\n";
  os << "[time]\n";
  os << "dt = " << csv_double(c.time.dt) << "\n";
  os << "t_spinup = " << csv_double(c.time.t_spinup) << "\n";
  os << "t_end = " << csv_double(c.time.t_end) << "\n";
  os << "sample_every = " << c.time.sample_every << "\n\n";
  os << "[theory]\n";
  os << "c = " << csv_double(c.theory.c) << "\n";
  os << "eps = " << csv_double(c.theory.eps) << "\n";
  os << "T_window = " << csv_double(c.theory.T_window) << "\n";
  os << "c0 = " << csv_double(c.theory.c0) << "\n\n";
  os << "[io]\n";
  os << "output_dir = \"" << c.io.output_dir << "\"\n";
  os << "checkpoint_every = " << c.io.checkpoint_every << "\n";
  return os.str();
}

void apply_override(RunConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw config_error("override must look like section.key=value, got '" +
                       assignment + "'");
  }
  std::string value = trim(assignment.substr(eq + 1));
  assign(config, trim(assignment.substr(0, eq)), value, 0);
}

void validate(const RunConfig& c) {
  if (c.grid.n < 8 || c.grid.n % 2 != 0) {
    throw config_error("grid.n must be even and >= 8");
  }
  if (!(c.grid.L > 0.0)) throw config_error("grid.L must be positive");
  if (!(c.physics.nu > 0.0)) throw config_error("physics.nu must be positive");
  if (!(c.physics.target_G >= 0.0)) {
    throw config_error("physics.target_G must be nonnegative");
  }
  const auto& fc = c.physics.forcing;
  if (!(fc.k_min > 0 && fc.k_min < fc.k_max && fc.k_max < c.grid.n / 3)) {
    throw config_error("forcing band must satisfy 0 < k_min < k_max < n/3");
  }
  if (c.da.mode != "linear" && c.da.mode != "nonlinear" &&
      c.da.mode != "capped") {
    throw config_error("da.mode must be linear, nonlinear, or capped");
  }
  if (!(c.da.gamma >= 0.0 && c.da.gamma < 1.0)) {
    throw config_error("da.gamma must be in [0, 1)");
  }
  if (c.da.mu < 0.0 || c.da.beta < 0.0) {
    throw config_error("da gains must be nonnegative");
  }
  if (c.da.observe_every < 1) {
    throw config_error("da.observe_every must be >= 1");
  }
  if (c.da.interpolant.kind == "fourier") {
    if (c.da.interpolant.m < 1) throw config_error("interpolant.m must be >= 1");
  } else if (c.da.interpolant.kind == "volume") {
    if (!(c.da.interpolant.h > 0.0)) {
      throw config_error("interpolant.h must be positive");
    }
  } else {
    throw config_error("interpolant.kind must be fourier or volume");
  }
  if (!(c.time.dt > 0.0)) throw config_error("time.dt must be positive");
  if (c.time.t_spinup < 0.0 || c.time.t_end < 0.0) {
    throw config_error("times must be nonnegative");
  }
  if (c.time.sample_every < 1) {
    throw config_error("time.sample_every must be >= 1");
  }
  if (!(c.theory.c > 0.0 && c.theory.eps > 0.0 && c.theory.T_window > 0.0)) {
    throw config_error("theory constants must be positive");
  }
  if (c.io.checkpoint_every < 0) {
    throw config_error("io.checkpoint_every must be >= 0");
  }
}

double cfl_estimate(const RunConfig& c) {
  const double L = c.grid.L;
  const double k0 = 2.0 * std::numbers::pi / L;
  const double lambda1 = k0 * k0;
  const double u_scale = std::sqrt(2.0) * c.physics.target_G * lambda1 *
                         c.physics.nu * c.physics.nu;
  return u_scale * c.time.dt / (L / c.grid.n);
}

GridPtr config_grid(const RunConfig& c) { return make_grid(c.grid.n, c.grid.L); }

PhysicalParams config_params(const RunConfig& c, const GridPtr& grid) {
  SpectralField f = make_forcing(grid, c.physics.forcing.seed,
                                 c.physics.forcing.k_min,
                                 c.physics.forcing.k_max, c.physics.target_G,
                                 c.physics.nu);
  return make_params(c.physics.nu, std::move(f));
}

NudgingConfig config_nudging(const RunConfig& c, const GridPtr& grid) {
  NudgingConfig cfg;
  if (c.da.mode == "linear") {
    cfg.mode = NudgeMode::linear;
  } else if (c.da.mode == "capped") {
    cfg.mode = NudgeMode::capped;
  } else {
    cfg.mode = NudgeMode::nonlinear;
  }
  cfg.mu = c.da.mu;
  cfg.beta = c.da.beta;
  cfg.gamma = c.da.gamma;
  cfg.observe_every = c.da.observe_every;
  if (c.da.interpolant.kind == "volume") {
    cfg.interpolant = volume_interpolant(c.da.interpolant.h);
  } else {
    cfg.interpolant = fourier_interpolant(c.da.interpolant.m);
  }
  if (c.theory.c0 > 0.0) cfg.interpolant.c0 = c.theory.c0;
  validate(cfg);
  (void)grid;
  return cfg;
}

theory::TheoryConstants config_theory(const RunConfig& c,
                                      const GridPtr& grid) {
  theory::TheoryConstants tc;
  tc.c = c.theory.c;
  tc.alpha = 1.0;
  tc.lambda1 = grid->lambda1();
  tc.nu = c.physics.nu;
  tc.G = c.physics.target_G;
  tc.gamma = c.da.gamma;
  tc.mu = c.da.mu;
  tc.beta = c.da.beta;
  tc.T = c.theory.T_window;
  tc.eps = c.theory.eps;
  tc.L = c.grid.L;
  const NudgingConfig cfg = config_nudging(c, grid);
  tc.c0 = cfg.interpolant.c0;
  return tc;
}

RunConfig desk_preset() {
  RunConfig c;  // the defaults are the desk preset
  c.io.output_dir = "out/desk";
  return c;
}

RunConfig paper_preset() {
  RunConfig c;
  c.grid.n = 1024;
  c.grid.L = 6.283185307179586;
  c.physics.nu = 0.008;
  c.physics.target_G = 250000.0;
  c.physics.forcing.seed = 0;
  c.physics.forcing.k_min = 16;
  c.physics.forcing.k_max = 64;
  c.da.mode = "nonlinear";
  c.da.mu = 2.0;
  c.da.beta = 2.0;
  c.da.gamma = 0.1;
  c.da.interpolant.kind = "fourier";
  c.da.interpolant.m = 32;
  c.time.dt = 3.1250e-4;
  c.time.t_spinup = 240.0;
  c.time.t_end = 5.0;
  c.time.sample_every = 16;
  c.theory.T_window = 150.0;
  c.io.output_dir = "out/paper";
  return c;
}

}  // namespace nncda
