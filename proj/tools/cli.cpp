#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "coulombium/coulombium.h"
#include "json.hpp"

namespace coulombium::cli {
namespace {

using json = nlohmann::ordered_json;

struct RunOptions {
  std::string command;
  double z = std::nan("");
  std::string background;
  double half_width = 30.0;
  std::size_t n_points = 6001;
  std::string method = "scf";
  double damping = 0.5;
  double tol_energy = 1e-10;
  double tol_residual = 1e-7;
  int max_iter = 5000;
  double gd_step = 1.0;
  std::uint64_t seed = 0;
  std::string preconditioner = "hamiltonian";
  std::string initial_guess = "gaussian";
  bool include_background_self = false;
  bool allow_subcritical = false;
  std::string out;
  std::string format;
  std::string z_text;
  std::vector<double> z_list;
  std::string suite;
  std::string suite_option;
};

struct BackgroundDeleter {
  void operator()(cb_background* bg) const { cb_background_free(bg); }
};
struct StateDeleter {
  void operator()(cb_ground_state* s) const { cb_ground_state_free(s); }
};
using BackgroundPtr = std::unique_ptr<cb_background, BackgroundDeleter>;
using StatePtr = std::unique_ptr<cb_ground_state, StateDeleter>;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

const char* status_name(cb_status s) {
  switch (s) {
    case CB_OK: return "ok";
    case CB_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case CB_ERR_NOT_NORMALIZED: return "not_normalized";
    case CB_ERR_NON_ZERO_MEAN: return "non_zero_mean";
    case CB_ERR_NEGATIVE_INPUT: return "negative_input";
    case CB_ERR_UNDER_RESOLVED: return "under_resolved";
    case CB_ERR_GRID_TOO_SMALL: return "grid_too_small";
    case CB_ERR_NO_CONVERGENCE: return "no_convergence";
    case CB_ERR_MAX_ITER_EXCEEDED: return "max_iter_exceeded";
    case CB_ERR_DIVERGING_ENERGY: return "diverging_energy";
    case CB_ERR_LINE_SEARCH_STALLED: return "line_search_stalled";
    case CB_ERR_IO: return "io_error";
    case CB_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

bool is_solver_failure(cb_status s) {
  return s == CB_ERR_NO_CONVERGENCE || s == CB_ERR_MAX_ITER_EXCEEDED ||
         s == CB_ERR_DIVERGING_ENERGY || s == CB_ERR_LINE_SEARCH_STALLED;
}

cb_solver_config solver_config(const RunOptions& o) {
  cb_solver_config c;
  cb_solver_config_init(&c);
  c.half_width = o.half_width;
  c.n_points = o.n_points;
  c.scf_damping = o.damping;
  c.tol_energy = o.tol_energy;
  c.tol_residual = o.tol_residual;
  c.max_iter = o.max_iter;
  c.gd_step = o.gd_step;
  c.seed = o.seed;
  c.preconditioner = o.preconditioner == "none" ? CB_PRECOND_NONE : CB_PRECOND_HAMILTONIAN;
  c.initial_guess = o.initial_guess == "random" ? CB_GUESS_RANDOM : CB_GUESS_GAUSSIAN;
  c.include_background_self = o.include_background_self ? 1 : 0;
  return c;
}

json resolved_config(const RunOptions& o) {
  json cfg;
  cfg["command"] = o.command;
  if (o.command != "verify") {
    json bg;
    if (!o.background.empty()) {
      bg["kind"] = "file";
      bg["path"] = o.background;
    } else if (o.command == "solve") {
      bg["kind"] = "point";
      bg["z"] = o.z;
    } else {
      bg["kind"] = "point";
    }
    cfg["background"] = bg;
    cfg["grid"] = {{"L", o.half_width}, {"N", o.n_points}};
    cfg["solver"] = {{"method", o.method},
                     {"damping", o.damping},
                     {"tol_energy", o.tol_energy},
                     {"tol_residual", o.tol_residual},
                     {"max_iter", o.max_iter},
                     {"gd_step", o.gd_step},
                     {"seed", o.seed},
                     {"preconditioner", o.preconditioner},
                     {"initial_guess", o.initial_guess},
                     {"include_background_self", o.include_background_self},
                     {"allow_subcritical", o.allow_subcritical}};
  }
  if (o.command == "scan") cfg["scan"] = {{"z_list", o.z_list}};
  if (o.command == "verify") {
    cfg["verify"] = {{"suite", o.suite}, {"seed", o.seed}, {"z", o.z}};
  }
  cfg["output"] = {{"format", o.format}, {"out", o.out.empty() ? "-" : o.out}};
  return cfg;
}

std::string schema_id(const RunOptions& o) {
  return "coulombium." + o.command + "/" + std::to_string(COULOMBIUM_SCHEMA_VERSION);
}

void write_csv_preamble(std::ostream& os, const RunOptions& o) {
  os << "# schema " << schema_id(o) << "\n";
  os << "# config " << resolved_config(o).dump() << "\n";
}

// Opens --out or falls back to the given stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("cannot open output file '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

BackgroundPtr make_background(const RunOptions& o, double z) {
  cb_background* raw = nullptr;
  cb_status s = o.background.empty()
                    ? cb_background_point(z, &raw)
                    : cb_background_from_file(o.background.c_str(), o.half_width, o.n_points, &raw);
  if (s != CB_OK) throw UsageError(std::string("background: ") + cb_last_error());
  return BackgroundPtr(raw);
}

struct MethodResult {
  std::string method;
  cb_status status = CB_OK;
  std::string message;
  StatePtr state;
  cb_summary summary{};
};

MethodResult run_method(const cb_background* bg, const cb_solver_config& cfg,
                        const std::string& method) {
  MethodResult r;
  r.method = method;
  cb_ground_state* raw = nullptr;
  r.status = cb_solve(bg, &cfg, method == "gd" ? CB_METHOD_GRADIENT : CB_METHOD_SCF, &raw);
  if (r.status != CB_OK) r.message = cb_last_error();
  r.state.reset(raw);
  if (r.state) cb_ground_state_summary(r.state.get(), &r.summary);
  return r;
}

json summary_json(const MethodResult& r) {
  json j;
  j["method"] = r.method;
  j["status"] = status_name(r.status);
  j["message"] = r.message;
  if (!r.state) return j;
  const cb_summary& s = r.summary;
  j["epsilon"] = s.epsilon;
  j["energy"] = {{"kinetic", s.kinetic},
                 {"coulomb", s.coulomb},
                 {"background_const", s.background_const},
                 {"total", s.total}};
  j["residual"] = s.residual;
  j["iterations"] = s.iterations;
  j["converged"] = s.converged != 0;
  j["moment1"] = s.moment1;
  j["tail_mass"] = s.tail_mass;
  j["boundary_flux"] = s.boundary_flux;
  json warnings = json::array();
  for (std::size_t i = 0; i < cb_ground_state_warning_count(r.state.get()); ++i) {
    warnings.push_back(cb_ground_state_warning(r.state.get(), i));
  }
  j["warnings"] = warnings;
  return j;
}

struct Table {
  std::vector<double> x, u, density, potential;
};

Table table_of(const MethodResult& r) {
  const std::size_t n = r.summary.n_points;
  Table t{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n),
          std::vector<double>(n)};
  cb_ground_state_table(r.state.get(), n, t.x.data(), t.u.data(), t.density.data(),
                        t.potential.data());
  return t;
}

std::pair<std::vector<double>, std::vector<double>> history_of(const MethodResult& r) {
  const std::size_t n = cb_ground_state_history_length(r.state.get());
  std::vector<double> e(n), res(n);
  cb_ground_state_history(r.state.get(), n, e.data(), res.data());
  return {e, res};
}

void check_subcritical(const RunOptions& o, double z) {
  if (z < 1.0 && !o.allow_subcritical) {
    std::ostringstream msg;
    msg << "charge ratio z = " << z
        << " < 1 is subcritical: the energy is unbounded below and no minimiser exists; "
           "pass --allow-subcritical to run anyway";
    throw UsageError(msg.str());
  }
}

int cmd_solve(const RunOptions& o, std::ostream& out, std::ostream& err) {
  const bool has_z = !std::isnan(o.z);
  if (has_z == !o.background.empty()) {
    throw UsageError("solve needs exactly one of --z or --background");
  }
  BackgroundPtr bg = make_background(o, o.z);
  double z = 0.0;
  cb_background_describe(bg.get(), &z, nullptr, nullptr);
  check_subcritical(o, z);

  const cb_solver_config cfg = solver_config(o);
  std::vector<MethodResult> results;
  if (o.method == "scf" || o.method == "both") results.push_back(run_method(bg.get(), cfg, "scf"));
  if (o.method == "gd" || o.method == "both") results.push_back(run_method(bg.get(), cfg, "gd"));

  int code = kOk;
  for (const auto& r : results) {
    if (r.status == CB_OK) continue;
    if (!is_solver_failure(r.status)) throw UsageError(r.method + ": " + r.message);
    err << r.message << "\n";
    if (r.status == CB_ERR_DIVERGING_ENERGY) {
      code = kSubcritical;
    } else if (code == kOk) {
      code = kNotConverged;
    }
  }
  for (const auto& r : results) {
    if (!r.state) continue;
    for (std::size_t i = 0; i < cb_ground_state_warning_count(r.state.get()); ++i) {
      err << r.method << ": warning: " << cb_ground_state_warning(r.state.get(), i) << "\n";
    }
  }

  Sink sink(o.out, out);
  std::ostream& os = sink.get();
  if (o.format == "json") {
    json doc;
    doc["schema"] = schema_id(o);
    doc["config"] = resolved_config(o);
    doc["charge_ratio"] = z;
    json list = json::array();
    for (const auto& r : results) {
      json j = summary_json(r);
      if (r.state) {
        const auto [energy, residual] = history_of(r);
        j["history"] = {{"energy", energy}, {"residual", residual}};
        const Table t = table_of(r);
        j["table"] = {{"x", t.x}, {"u", t.u}, {"density", t.density}, {"potential", t.potential}};
      }
      list.push_back(std::move(j));
    }
    doc["results"] = std::move(list);
    if (results.size() == 2 && results[0].state && results[1].state) {
      doc["energy_difference"] = std::fabs(results[0].summary.total - results[1].summary.total);
    }
    os << doc.dump(2) << "\n";
  } else {
    write_csv_preamble(os, o);
    for (const auto& r : results) os << "# result " << summary_json(r).dump() << "\n";
    os << "method,x,u,density,potential\n";
    for (const auto& r : results) {
      if (!r.state) continue;
      const Table t = table_of(r);
      for (std::size_t i = 0; i < t.x.size(); ++i) {
        os << r.method << ',' << num(t.x[i]) << ',' << num(t.u[i]) << ',' << num(t.density[i])
           << ',' << num(t.potential[i]) << "\n";
      }
    }
    if (!o.out.empty() && o.out != "-") {
      std::ofstream trace(o.out + ".trace.csv", std::ios::binary);
      if (!trace) throw UsageError("cannot open trace file '" + o.out + ".trace.csv'");
      write_csv_preamble(trace, o);
      trace << "method,iteration,energy,residual\n";
      for (const auto& r : results) {
        if (!r.state) continue;
        const auto [energy, residual] = history_of(r);
        for (std::size_t i = 0; i < energy.size(); ++i) {
          trace << r.method << ',' << i + 1 << ',' << num(energy[i]) << ',' << num(residual[i])
                << "\n";
        }
      }
    }
  }
  return code;
}

unsigned thread_budget(std::size_t tasks) {
  unsigned limit = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("COULOMBIUM_THREADS")) {
    const int requested = std::atoi(env);
    if (requested > 0) limit = static_cast<unsigned>(requested);
  }
  return static_cast<unsigned>(std::min<std::size_t>(limit, std::max<std::size_t>(tasks, 1)));
}

std::vector<double> parse_z_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto last = item.find_last_not_of(" \t");
    const std::string token = item.substr(first, last - first + 1);
    double v = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
      throw UsageError("bad charge ratio '" + token + "' in --z-list");
    }
    values.push_back(v);
  }
  return values;
}

int cmd_scan(RunOptions& o, std::ostream& out, std::ostream& err) {
  o.z_list = parse_z_list(o.z_text);
  if (o.z_list.empty()) throw UsageError("scan needs a nonempty --z-list");
  if (!o.background.empty()) throw UsageError("scan sweeps point charges; --background is not used");
  if (o.method == "both") throw UsageError("scan runs a single method: scf or gd");
  for (double z : o.z_list) check_subcritical(o, z);

  const cb_solver_config cfg = solver_config(o);
  std::vector<MethodResult> rows(o.z_list.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      cb_background* raw = nullptr;
      if (cb_background_point(o.z_list[i], &raw) != CB_OK) {
        rows[i].method = o.method;
        rows[i].status = CB_ERR_INVALID_ARGUMENT;
        rows[i].message = cb_last_error();
        continue;
      }
      BackgroundPtr bg(raw);
      rows[i] = run_method(bg.get(), cfg, o.method);
    }
  };
  std::vector<std::thread> pool;
  const unsigned threads = thread_budget(rows.size());
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int code = kOk;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].status != CB_OK) {
      code = kNotConverged;
      err << "z = " << num(o.z_list[i]) << ": " << rows[i].message << "\n";
    }
  }

  Sink sink(o.out, out);
  std::ostream& os = sink.get();
  if (o.format == "json") {
    json doc;
    doc["schema"] = schema_id(o);
    doc["config"] = resolved_config(o);
    json list = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      json j;
      j["z"] = o.z_list[i];
      if (r.state) {
        j["E"] = r.summary.total;
        j["epsilon"] = r.summary.epsilon;
        j["kinetic"] = r.summary.kinetic;
        j["coulomb"] = r.summary.coulomb;
        j["moment1"] = r.summary.moment1;
        j["iterations"] = r.summary.iterations;
      } else {
        for (const char* key : {"E", "epsilon", "kinetic", "coulomb", "moment1", "iterations"}) {
          j[key] = nullptr;
        }
      }
      j["status"] = status_name(r.status);
      list.push_back(std::move(j));
    }
    doc["rows"] = std::move(list);
    os << doc.dump(2) << "\n";
  } else {
    write_csv_preamble(os, o);
    os << "z,E,epsilon,kinetic,coulomb,moment1,iterations,status\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      os << num(o.z_list[i]) << ',';
      if (r.state) {
        const cb_summary& s = r.summary;
        os << num(s.total) << ',' << num(s.epsilon) << ',' << num(s.kinetic) << ','
           << num(s.coulomb) << ',' << num(s.moment1) << ',' << s.iterations << ',';
      } else {
        os << ",,,,,,";
      }
      os << status_name(r.status) << "\n";
    }
  }
  return code;
}

int cmd_verify(RunOptions& o, std::ostream& out) {
  if (o.suite.empty()) o.suite = o.suite_option;
  if (o.suite.empty()) throw UsageError("verify needs a suite name");
  if (std::isnan(o.z)) o.z = 0.5;
  int passed = 0;
  char* report = nullptr;
  const cb_status s = cb_verify(o.suite.c_str(), o.seed, o.z, &passed, &report);
  if (s != CB_OK) throw UsageError(cb_last_error());
  const json doc_report = json::parse(report);
  cb_string_free(report);

  Sink sink(o.out, out);
  std::ostream& os = sink.get();
  if (o.format == "json") {
    json doc;
    doc["schema"] = schema_id(o);
    doc["config"] = resolved_config(o);
    doc["report"] = doc_report;
    os << doc.dump(2) << "\n";
  } else {
    write_csv_preamble(os, o);
    os << "check,measured,threshold,passed,detail\n";
    for (const auto& c : doc_report["checks"]) {
      os << csv_field(c["name"].get<std::string>()) << ',' << num(c["measured"].get<double>())
         << ',' << num(c["threshold"].get<double>()) << ','
         << (c["passed"].get<bool>() ? "true" : "false") << ','
         << csv_field(c["detail"].get<std::string>()) << "\n";
    }
  }
  return passed ? kOk : kNotConverged;
}

void add_run_options(CLI::App* app, RunOptions& o) {
  app->add_option("--z", o.z, "charge ratio of a point background");
  app->add_option("--background", o.background, "two-column (x, rho) background file");
  app->add_option("--L,--half-width", o.half_width, "grid half-width")->capture_default_str();
  app->add_option("--N,--n-points", o.n_points, "odd number of grid nodes")->capture_default_str();
  app->add_option("--method", o.method, "scf, gd or both")
      ->check(CLI::IsMember({"scf", "gd", "both"}))
      ->capture_default_str();
  app->add_option("--damping", o.damping, "initial density-mixing weight")->capture_default_str();
  app->add_option("--tol-energy", o.tol_energy)->capture_default_str();
  app->add_option("--tol-residual", o.tol_residual)->capture_default_str();
  app->add_option("--max-iter", o.max_iter)->capture_default_str();
  app->add_option("--gd-step", o.gd_step, "initial gradient step")->capture_default_str();
  app->add_option("--seed", o.seed)->capture_default_str();
  app->add_option("--preconditioner", o.preconditioner)
      ->check(CLI::IsMember({"hamiltonian", "none"}))
      ->capture_default_str();
  app->add_option("--initial-guess", o.initial_guess)
      ->check(CLI::IsMember({"gaussian", "random"}))
      ->capture_default_str();
  app->add_flag("--include-background-self", o.include_background_self,
                "add the constant background self-energy");
  app->add_flag("--allow-subcritical", o.allow_subcritical, "run z < 1 anyway");
  app->add_option("--out", o.out, "output path ('-' for stdout)");
  app->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

// Config file entries become --key=value arguments placed ahead of the user's
// own, so explicit flags win (options keep their last value).
std::vector<std::string> config_arguments(const std::string& path, const CLI::App& command) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  static const std::vector<std::string> sections = {"",     "background", "grid", "solver",
                                                    "output", "scan",     "verify"};
  std::vector<std::string> args;
  for (const auto& item : CLI::ConfigINI().from_config(in)) {
    if (item.name == "++" || item.name == "--") continue;
    const std::string section = item.parents.empty() ? "" : item.parents.front();
    if (std::find(sections.begin(), sections.end(), section) == sections.end()) {
      throw UsageError("unknown config section [" + section + "]");
    }
    std::string key = item.name;
    std::replace(key.begin(), key.end(), '_', '-');
    if (key == "suite") key = "suite-name";
    std::string value;
    for (std::size_t i = 0; i < item.inputs.size(); ++i) {
      value += (i ? "," : "") + item.inputs[i];
    }
    if (command.get_option_no_throw("--" + key) == nullptr) {
      // keys for other subcommands are allowed; unknown keys are not
      static const std::vector<std::string> known = {"z-list", "suite-name"};
      if (std::find(known.begin(), known.end(), key) != known.end()) continue;
      throw UsageError("unknown config key '" + item.name + "'");
    }
    args.push_back("--" + key + "=" + value);
  }
  return args;
}

}  // namespace

int run_cli(const std::vector<std::string>& input, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  std::string config_path;
  for (std::size_t i = 0; i < input.size(); ++i) {
    if (input[i] == "--config" && i + 1 < input.size()) {
      config_path = input[++i];
    } else if (input[i].rfind("--config=", 0) == 0) {
      config_path = input[i].substr(9);
    } else {
      args.push_back(input[i]);
    }
  }

  RunOptions o;
  CLI::App app{"Ground states of the one-dimensional Coulomb energy"};
  app.name("coulombium");
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cb_version()));
  app.add_option("--config", config_path, "INI-style config file; flags override it");

  CLI::App* solve = app.add_subcommand("solve", "compute a ground state");
  add_run_options(solve, o);
  CLI::App* scan = app.add_subcommand("scan", "solve for a list of charge ratios");
  add_run_options(scan, o);
  scan->add_option("--z-list", o.z_text, "comma-separated charge ratios");
  CLI::App* verify = app.add_subcommand("verify", "run a property suite");
  verify->add_option("suite", o.suite, "forms, bnorm, rearrange, counterexample, delta or innerprod");
  verify->add_option("--suite-name", o.suite_option)->group("");
  verify->add_option("--seed", o.seed)->capture_default_str();
  verify->add_option("--z", o.z, "charge ratio for the counterexample suite (default 0.5)");
  verify->add_option("--out", o.out, "output path ('-' for stdout)");
  verify->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  try {
    if (!config_path.empty()) {
      auto sub = std::find_if(args.begin(), args.end(),
                              [](const std::string& a) { return !a.empty() && a[0] != '-'; });
      const CLI::App* command = nullptr;
      if (sub != args.end()) command = app.get_subcommand_no_throw(*sub);
      if (command != nullptr) {
        const auto extra = config_arguments(config_path, *command);
        args.insert(sub + 1, extra.begin(), extra.end());
      }
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << cb_version() << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (solve->parsed()) {
      o.command = "solve";
      if (o.format.empty()) o.format = "json";
      return cmd_solve(o, out, err);
    }
    if (scan->parsed()) {
      o.command = "scan";
      if (o.format.empty()) o.format = "csv";
      return cmd_scan(o, out, err);
    }
    o.command = "verify";
    if (o.format.empty()) o.format = "json";
    return cmd_verify(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace coulombium::cli
