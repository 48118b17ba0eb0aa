#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tra/tra.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitDomain = 2;
constexpr int kExitWarning = 3;
constexpr int kExitSupercritical = 4;

struct CliError {
  int code;
  std::string message;
};

int exit_code_for(tra_status s) {
  switch (s) {
    case TRA_OK: return kExitOk;
    case TRA_ERR_INVALID_ARGUMENT: return kExitConfig;
    case TRA_ERR_SUPERCRITICAL: return kExitSupercritical;
    default: return kExitDomain;
  }
}

void check(tra_status s) {
  if (s != TRA_OK) throw CliError{exit_code_for(s), tra_last_error()};
}

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
  throw CliError{kExitConfig, "field '" + field + "': " + why};
}

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// ---- option registry shared by flags and the config file ------------------

using Target = std::variant<double*, int*, std::string*, bool*>;

class Command {
 public:
  Command(CLI::App& parent, const std::string& name, const std::string& help)
      : app_(parent.add_subcommand(name, help)) {
    app_->add_option("--config", config_, "JSON file with option values; flags override it");
  }

  CLI::App* app() const { return app_; }

  template <class T>
  CLI::Option* field(const std::string& name, T& target, const std::string& help) {
    std::string flag = "--" + name;
    for (char& c : flag)
      if (c == '_') c = '-';
    CLI::Option* opt = nullptr;
    if constexpr (std::is_same_v<T, bool>) {
      opt = app_->add_flag(flag, target, help);
    } else {
      opt = app_->add_option(flag, target, help);
    }
    fields_.push_back({name, &target, opt});
    return opt;
  }

  // Values from the file fill only fields absent from the command line.
  void apply_config() const {
    if (config_.empty()) return;
    std::ifstream in(config_);
    if (!in) bad_field("config", "cannot open '" + config_ + "'");
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      bad_field("config", std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) bad_field("config", "top level must be an object");
    for (const auto& [key, value] : doc.items()) {
      const Entry* entry = nullptr;
      for (const auto& f : fields_)
        if (f.name == key) entry = &f;
      if (entry == nullptr) bad_field(key, "unknown field for '" + app_->get_name() + "'");
      if (entry->option->count() > 0) continue;
      std::visit(
          [&](auto* t) {
            using T = std::remove_pointer_t<decltype(t)>;
            if constexpr (std::is_same_v<T, bool>) {
              if (!value.is_boolean()) bad_field(key, "expected a boolean");
              *t = value.get<bool>();
            } else if constexpr (std::is_same_v<T, int>) {
              if (!value.is_number_integer()) bad_field(key, "expected an integer");
              *t = value.get<int>();
            } else if constexpr (std::is_same_v<T, double>) {
              if (!value.is_number()) bad_field(key, "expected a number");
              *t = value.get<double>();
            } else {
              if (!value.is_string()) bad_field(key, "expected a string");
              *t = value.get<std::string>();
            }
          },
          entry->target);
    }
  }

  bool given(const std::string& name) const {
    for (const auto& f : fields_)
      if (f.name == name) return f.option->count() > 0 || in_config(name);
    return false;
  }

 private:
  struct Entry {
    std::string name;
    Target target;
    CLI::Option* option;
  };

  bool in_config(const std::string& name) const {
    if (config_.empty()) return false;
    std::ifstream in(config_);
    const json doc = json::parse(in, nullptr, false);
    return doc.is_object() && doc.contains(name);
  }

  CLI::App* app_;
  std::string config_;
  std::vector<Entry> fields_;
};

// ---- output --------------------------------------------------------------

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError{kExitConfig, "field 'output': cannot write '" + path + "'"};
  out << text;
}

struct Grid {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
};

Grid parse_grid(const std::string& text, const std::string& field) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos || text.find(':', b + 1) != std::string::npos)
    bad_field(field, "expected start:stop:count, got '" + text + "'");
  Grid g;
  const auto parse_double = [&](std::string_view s, double& v) {
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
      bad_field(field, "'" + std::string(s) + "' is not a number");
  };
  const std::string_view sv(text);
  parse_double(sv.substr(0, a), g.start);
  parse_double(sv.substr(a + 1, b - a - 1), g.stop);
  const auto cs = sv.substr(b + 1);
  const auto res = std::from_chars(cs.data(), cs.data() + cs.size(), g.count);
  if (res.ec != std::errc() || res.ptr != cs.data() + cs.size())
    bad_field(field, "'" + std::string(cs) + "' is not an integer count");
  if (g.count < 2) bad_field(field, "count must be at least 2");
  if (!(g.start < g.stop)) bad_field(field, "start must be below stop");
  return g;
}

std::vector<double> make_grid(const Grid& g, bool log_spacing, const std::string& field) {
  std::vector<double> out(static_cast<std::size_t>(g.count));
  const tra_status s = log_spacing ? tra_log_grid(g.start, g.stop, g.count, out.data())
                                   : tra_linear_grid(g.start, g.stop, g.count, out.data());
  if (s != TRA_OK) bad_field(field, tra_last_error());
  return out;
}

int default_jobs() {
  const char* env = std::getenv("TRA_JOBS");
  if (env == nullptr || *env == '\0') return 1;
  int jobs = 0;
  const std::string_view sv(env);
  const auto res = std::from_chars(sv.data(), sv.data() + sv.size(), jobs);
  if (res.ec != std::errc() || res.ptr != sv.data() + sv.size() || jobs < 1)
    throw CliError{kExitConfig, "TRA_JOBS must be a positive integer"};
  return jobs;
}

// ---- solve -----------------------------------------------------------------

struct SolveArgs {
  std::string model = "kratzer";
  double xi = 0.0, lambda = 0.0, zeta = 0.0, nu = 0.0;
  double d = 0.0, q = 0.0, eta = 0.0;
  int m = 0, branch = 0;
  double energy = 0.0;
  std::string energies;
  std::string r = "0.05:10:400";
  bool log_grid = false;
  int n_max = 200;
  std::string format = "csv";
  std::string output;
  int jobs = 0;
};

struct ModelDeleter {
  void operator()(tra_model* m) const { tra_model_free(m); }
};
struct SolutionDeleter {
  void operator()(tra_solution* s) const { tra_solution_free(s); }
};
using ModelPtr = std::unique_ptr<tra_model, ModelDeleter>;
using SolutionPtr = std::unique_ptr<tra_solution, SolutionDeleter>;

ModelPtr build_model(const SolveArgs& a) {
  tra_model* raw = nullptr;
  tra_status s;
  if (a.model == "kratzer") {
    s = tra_model_kratzer(a.xi, a.lambda, &raw);
  } else if (a.model == "invcube") {
    s = tra_model_invcube(a.lambda, a.zeta, &raw);
  } else if (a.model == "invquartic") {
    s = tra_model_invquartic(a.lambda, a.zeta, a.nu, &raw);
  } else if (a.model == "dipquad") {
    s = tra_model_dipquad(a.d, a.q, a.eta, a.m, a.branch, &raw);
  } else {
    bad_field("model", "unknown model '" + a.model + "' (kratzer, invcube, invquartic, dipquad)");
  }
  if (s == TRA_ERR_INVALID_ARGUMENT) bad_field("model", tra_last_error());
  check(s);
  return ModelPtr(raw);
}

json model_parameters(const SolveArgs& a) {
  if (a.model == "kratzer") return {{"xi", a.xi}, {"lambda", a.lambda}};
  if (a.model == "invcube") return {{"lambda", a.lambda}, {"zeta", a.zeta}};
  if (a.model == "invquartic") {
    json p = {{"lambda", a.lambda}, {"zeta", a.zeta}};
    if (a.nu > 0.0) p["nu"] = a.nu;
    return p;
  }
  return {{"d", a.d}, {"q", a.q}, {"eta", a.eta}, {"m", a.m}, {"branch", a.branch}};
}

struct SolveOutcome {
  tra_status status = TRA_OK;
  std::string message;
  tra_solution_info info{};
  std::vector<double> r, psi, weights;
};

SolveOutcome solve_one(const tra_model* model, double E, const std::vector<double>& grid, int n_max) {
  SolveOutcome out;
  tra_solution* raw = nullptr;
  out.status = tra_solve(model, E, grid.data(), grid.size(), n_max, &raw);
  if (out.status != TRA_OK) {
    out.message = tra_last_error();
    return out;
  }
  SolutionPtr sol(raw);
  tra_solution_get_info(sol.get(), &out.info);
  const std::size_t n = tra_solution_sample_count(sol.get());
  out.r.resize(n);
  out.psi.resize(n);
  tra_solution_samples(sol.get(), out.r.data(), out.psi.data(), n);
  out.weights.resize(tra_solution_weight_count(sol.get()));
  tra_solution_weights(sol.get(), out.weights.data(), out.weights.size());
  return out;
}

json solution_json(const SolveArgs& a, const SolveOutcome& o) {
  const tra_solution_info& i = o.info;
  json j;
  j["model"] = a.model;
  j["parameters"] = model_parameters(a);
  j["E"] = i.E;
  j["k"] = i.k;
  j["nu"] = i.nu;
  j["z"] = i.z;
  j["delta"] = number(i.delta);
  j["C0"] = number(i.C0);
  j["S"] = number(i.S);
  j["C"] = number(i.C);
  j["C0_source"] = i.c0_from_gamma ? "coulomb_gamma" : "phase_sums";
  j["long_range"] = i.long_range != 0;
  j["N_used"] = i.n_used;
  j["tail_estimate"] = number(i.tail_estimate);
  j["growing"] = i.growing != 0;
  j["plateau"] = i.plateau != 0;
  j["plateau_index"] = i.plateau_index >= 0 ? json(i.plateau_index) : json(nullptr);
  j["truncation_warning"] = i.truncation_warning != 0;
  json w = json::array();
  for (double v : o.weights) w.push_back(number(v));
  j["weights"] = std::move(w);
  json r = json::array(), psi = json::array();
  for (std::size_t k = 0; k < o.r.size(); ++k) {
    r.push_back(o.r[k]);
    psi.push_back(number(o.psi[k]));
  }
  j["samples"] = {{"r", std::move(r)}, {"psi", std::move(psi)}};
  return j;
}

int cmd_solve(const Command& cmd, SolveArgs& a) {
  cmd.apply_config();
  if (a.format != "csv" && a.format != "json") bad_field("format", "expected csv or json");
  if (a.n_max < 1) bad_field("n_max", "must be positive");
  const bool single = cmd.given("energy");
  const bool sweep = cmd.given("energies");
  if (single == sweep) bad_field("energy", "give exactly one of energy or energies");
  if (!cmd.given("jobs")) a.jobs = default_jobs();
  if (a.jobs < 1) bad_field("jobs", "must be a positive integer");

  const auto grid = make_grid(parse_grid(a.r, "r"), a.log_grid, "r");
  std::vector<double> energies;
  if (single) {
    energies.push_back(a.energy);
  } else {
    const Grid eg = parse_grid(a.energies, "energies");
    energies = make_grid(eg, false, "energies");
  }
  const ModelPtr model = build_model(a);

  std::vector<SolveOutcome> results(energies.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < energies.size(); i = next++)
      results[i] = solve_one(model.get(), energies[i], grid, a.n_max);
  };
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(a.jobs), energies.size());
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].status != TRA_OK) {
      throw CliError{exit_code_for(results[i].status),
                     "E=" + fmt(energies[i]) + ": " + results[i].message};
    }
  }

  std::string text;
  if (a.format == "csv") {
    std::ostringstream os;
    os << (single ? "r,psi\n" : "E,r,psi\n");
    for (const auto& res : results) {
      for (std::size_t k = 0; k < res.r.size(); ++k) {
        if (!single) os << fmt(res.info.E) << ',';
        os << fmt(res.r[k]) << ',' << fmt(res.psi[k]) << '\n';
      }
    }
    text = os.str();
  } else if (single) {
    text = solution_json(a, results.front()).dump(2) + "\n";
  } else {
    json list = json::array();
    for (const auto& res : results) list.push_back(solution_json(a, res));
    text = json{{"solutions", std::move(list)}}.dump(2) + "\n";
  }
  emit(text, a.output);

  int code = kExitOk;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const tra_solution_info& info = results[i].info;
    if (info.plateau || info.truncation_warning) {
      std::cerr << "warning: E=" << fmt(energies[i]) << ": series truncated at N=" << info.n_used
                << (info.plateau ? " (smallest term)" : " (no convergence)")
                << ", tail estimate " << fmt(info.tail_estimate) << '\n';
      code = kExitWarning;
    }
  }
  return code;
}

// ---- validate --------------------------------------------------------------

struct ReportDeleter {
  void operator()(tra_report* r) const { tra_report_free(r); }
};

int cmd_validate(const Command& cmd, const std::string& suite, const std::string& output) {
  cmd.apply_config();
  tra_report* raw = nullptr;
  const tra_status s = tra_validate(suite.c_str(), &raw);
  if (s == TRA_ERR_INVALID_ARGUMENT)
    throw CliError{kExitConfig, "unknown suite '" + suite + "' (coulomb, ortho, lommel, recursion, ode)"};
  check(s);
  std::unique_ptr<tra_report, ReportDeleter> report(raw);
  std::ostringstream os;
  const std::size_t n = tra_report_count(report.get());
  std::size_t passed = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const char* name = nullptr;
    int pass = 0;
    double measured = 0.0, threshold = 0.0;
    check(tra_report_check(report.get(), i, &name, &pass, &measured, &threshold));
    passed += pass ? 1 : 0;
    os << (pass ? "PASS " : "FAIL ") << name << "  measured=" << fmt(measured)
       << " threshold=" << fmt(threshold) << '\n';
  }
  os << suite << ": " << passed << '/' << n << " checks passed\n";
  emit(os.str(), output);
  return tra_report_all_pass(report.get()) ? kExitOk : kExitWarning;
}

// ---- dipole ----------------------------------------------------------------

struct DipoleArgs {
  double d = 0.0;
  int m = 0;
  int size = 120;
  bool critical = false;
  double tol = 1e-10;
  std::string output;
};

struct DipoleDeleter {
  void operator()(tra_dipole* d) const { tra_dipole_free(d); }
};

int cmd_dipole(const Command& cmd, DipoleArgs& a) {
  cmd.apply_config();
  if (a.critical) {
    double d_max = 0.0;
    check(tra_critical_dipole(a.m, a.size, a.tol, &d_max));
    emit(json{{"m", a.m}, {"size", a.size}, {"d_max", d_max}}.dump(2) + "\n", a.output);
    return kExitOk;
  }
  tra_dipole* raw = nullptr;
  const tra_status s = tra_dipole_spectrum(a.d, a.m, a.size, &raw);
  if (s == TRA_ERR_INVALID_ARGUMENT) bad_field("size", tra_last_error());
  check(s);
  std::unique_ptr<tra_dipole, DipoleDeleter> holder(raw);
  const std::size_t n = tra_dipole_count(holder.get());
  std::vector<double> ev(n), chi(n);
  std::vector<int> super(n);
  check(tra_dipole_values(holder.get(), ev.data(), chi.data(), super.data(), n));
  json jev = json::array(), jchi = json::array();
  int n_super = 0;
  for (std::size_t i = 0; i < n; ++i) {
    jev.push_back(ev[i]);
    jchi.push_back(number(chi[i]));
    n_super += super[i];
  }
  emit(json{{"d", a.d}, {"m", a.m}, {"size", a.size}, {"eigenvalues", std::move(jev)},
            {"chi", std::move(jchi)}, {"supercritical_count", n_super}}
               .dump(2) + "\n",
       a.output);
  if (n_super > 0) {
    std::cerr << "supercritical: " << n_super << " eigenvalue(s) not positive for d=" << fmt(a.d)
              << ", m=" << a.m << "; increase |m|\n";
    return kExitSupercritical;
  }
  return kExitOk;
}

// ---- spectrum --------------------------------------------------------------

struct SpectrumArgs {
  double lambda = 1.0;
  double nu = 1.0;
  std::string parity = "even";
  int count = 3;
  std::string r;
  std::string output;
};

int cmd_spectrum(const Command& cmd, SpectrumArgs& a) {
  cmd.apply_config();
  if (a.parity != "even" && a.parity != "odd") bad_field("parity", "expected even or odd");
  if (a.count < 1) bad_field("count", "must be positive");
  const int parity = a.parity == "odd" ? 1 : 0;
  json energies = json::array();
  for (int n = 0; n < a.count; ++n) {
    double e = 0.0;
    check(tra_exponential_level(a.lambda, a.nu, parity, n, &e));
    energies.push_back(e);
  }
  json doc = {{"lambda", a.lambda}, {"nu", a.nu}, {"parity", a.parity}, {"energies", std::move(energies)}};
  if (!a.r.empty()) {
    const Grid g = parse_grid(a.r, "r");
    std::vector<double> grid(static_cast<std::size_t>(g.count));
    // Bound states live on the whole line; negative start is allowed.
    check(tra_linear_grid(g.start, g.stop, g.count, grid.data()));
    json states = json::array();
    for (int n = 0; n < a.count; ++n) {
      json psi = json::array();
      for (double r : grid) {
        double v = 0.0;
        check(tra_exponential_state(a.lambda, a.nu, parity, n, r, &v));
        psi.push_back(number(v));
      }
      states.push_back(std::move(psi));
    }
    doc["r"] = grid;
    doc["states"] = std::move(states);
  }
  emit(doc.dump(2) + "\n", a.output);
  return kExitOk;
}

// ---- ortho -----------------------------------------------------------------

struct OrthoArgs {
  std::string pair = "KK";
  double nu = 0.5;
  int n = 0, m = 0;
  int zeros = 1000;
  std::string output;
};

int cmd_ortho(const Command& cmd, OrthoArgs& a) {
  cmd.apply_config();
  tra_integral res{};
  if (a.pair == "lommel") {
    check(tra_lommel_check(a.nu, a.n, a.m, a.zeros, &res));
  } else {
    const char* names[] = {"KK", "JJ", "KJ", "KJ1"};
    int pair = -1;
    for (int i = 0; i < 4; ++i)
      if (a.pair == names[i]) pair = i;
    if (pair < 0) bad_field("pair", "expected KK, JJ, KJ, KJ1 or lommel");
    check(tra_ortho_check(pair, a.nu, a.n, a.m, &res));
  }
  const double threshold = std::max(1e-8, res.tail_bound);
  json doc = {{"pair", a.pair},
              {"nu", a.nu},
              {"n", a.n},
              {"m", a.m},
              {"numeric", res.numeric},
              {"closed_form", res.closed_form},
              {"abs_error", res.abs_error},
              {"tail_bound", number(res.tail_bound)},
              {"segments_used", res.segments_used},
              {"pass", res.abs_error <= threshold}};
  emit(doc.dump(2) + "\n", a.output);
  return kExitOk;
}

// ---- poly ------------------------------------------------------------------

struct PolyArgs {
  std::string family = "kratzer_q";
  double nu = 0.5, z = 1.0, lambda = 0.0, zeta_k2 = 0.0;
  double a = 0.0, b = 0.0, alpha = 0.0, beta = 0.0, x = 0.0;
  int n_max = 50;
  std::string format = "csv";
  std::string output;
};

struct SequenceDeleter {
  void operator()(tra_sequence* s) const { tra_sequence_free(s); }
};

int cmd_poly(const Command& cmd, PolyArgs& a) {
  cmd.apply_config();
  if (a.format != "csv" && a.format != "json") bad_field("format", "expected csv or json");
  tra_family_params p{};
  if (tra_family_from_name(a.family.c_str(), &p.tag) != TRA_OK) bad_field("family", tra_last_error());
  p.nu = a.nu;
  p.z = a.z;
  p.lambda = a.lambda;
  p.zeta_k2 = a.zeta_k2;
  p.a = a.a;
  p.b = a.b;
  p.alpha = a.alpha;
  p.beta = a.beta;
  p.x = a.x;
  tra_sequence* raw = nullptr;
  const tra_status s = tra_sequence_solve(&p, a.n_max, &raw);
  if (s == TRA_ERR_INVALID_ARGUMENT) bad_field("family", tra_last_error());
  check(s);
  std::unique_ptr<tra_sequence, SequenceDeleter> seq(raw);
  const std::size_t n = tra_sequence_size(seq.get());
  std::vector<double> mant(n);
  std::vector<int> expo(n);
  check(tra_sequence_values(seq.get(), mant.data(), expo.data(), n));
  int growth = -1;
  check(tra_sequence_first_growth(seq.get(), &growth));

  std::string text;
  if (a.format == "csv") {
    std::ostringstream os;
    os << "n,mantissa,exponent,value\n";
    for (std::size_t i = 0; i < n; ++i)
      os << i << ',' << fmt(mant[i]) << ',' << expo[i] << ',' << fmt(std::ldexp(mant[i], expo[i])) << '\n';
    text = os.str();
  } else {
    json jm = json::array(), je = json::array(), jv = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      jm.push_back(mant[i]);
      je.push_back(expo[i]);
      jv.push_back(number(std::ldexp(mant[i], expo[i])));
    }
    json doc = {{"family", a.family},
                {"nu", a.nu},
                {"z", a.z},
                {"first_growth_index", growth >= 0 ? json(growth) : json(nullptr)},
                {"mantissa", std::move(jm)},
                {"exponent", std::move(je)},
                {"value", std::move(jv)}};
    text = doc.dump(2) + "\n";
  }
  emit(text, a.output);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scattering solutions in discrete Bessel bases"};
  app.require_subcommand(1);

  SolveArgs solve;
  Command solve_cmd(app, "solve", "Solve a scattering problem and emit psi on a grid");
  solve_cmd.field("model", solve.model, "kratzer, invcube, invquartic or dipquad");
  solve_cmd.field("xi", solve.xi, "Coulomb strength (kratzer)");
  solve_cmd.field("lambda", solve.lambda, "inverse-square strength");
  solve_cmd.field("zeta", solve.zeta, "inverse-cube or inverse-quartic strength");
  solve_cmd.field("nu", solve.nu, "basis order override (invquartic)");
  solve_cmd.field("d", solve.d, "dipole moment (dipquad)");
  solve_cmd.field("q", solve.q, "quadrupole moment (dipquad)");
  solve_cmd.field("eta", solve.eta, "quadrupole mixing in [-1/2, 1] (dipquad)");
  solve_cmd.field("m", solve.m, "azimuthal quantum number (dipquad)");
  solve_cmd.field("branch", solve.branch, "angular eigenbranch (dipquad)");
  solve_cmd.field("energy", solve.energy, "single energy E > 0");
  solve_cmd.field("energies", solve.energies, "energy sweep start:stop:count");
  solve_cmd.field("r", solve.r, "radial grid start:stop:count");
  solve_cmd.field("log_grid", solve.log_grid, "logarithmic radial spacing");
  solve_cmd.field("n_max", solve.n_max, "largest series index");
  solve_cmd.field("format", solve.format, "csv or json");
  solve_cmd.field("output", solve.output, "output path (stdout if empty)");
  solve_cmd.field("jobs", solve.jobs, "worker threads for energy sweeps (default TRA_JOBS or 1)");

  std::string suite, validate_output;
  Command validate_cmd(app, "validate", "Run a named validation suite");
  validate_cmd.app()->add_option("suite", suite, "coulomb, ortho, lommel, recursion or ode")->required();
  validate_cmd.field("output", validate_output, "output path (stdout if empty)");

  DipoleArgs dipole;
  Command dipole_cmd(app, "dipole", "Angular eigenvalues and chi for a point dipole");
  dipole_cmd.field("d", dipole.d, "dipole moment");
  dipole_cmd.field("m", dipole.m, "azimuthal quantum number");
  dipole_cmd.field("size", dipole.size, "matrix size");
  dipole_cmd.field("critical", dipole.critical, "report the critical dipole moment for m instead");
  dipole_cmd.field("tol", dipole.tol, "tolerance for the critical dipole moment");
  dipole_cmd.field("output", dipole.output, "output path (stdout if empty)");

  SpectrumArgs spectrum;
  Command spectrum_cmd(app, "spectrum", "Bound-state energies of the one-dimensional exponential well");
  spectrum_cmd.field("lambda", spectrum.lambda, "range parameter");
  spectrum_cmd.field("nu", spectrum.nu, "basis order");
  spectrum_cmd.field("parity", spectrum.parity, "even or odd");
  spectrum_cmd.field("count", spectrum.count, "number of levels");
  spectrum_cmd.field("r", spectrum.r, "optional grid start:stop:count for the states");
  spectrum_cmd.field("output", spectrum.output, "output path (stdout if empty)");

  OrthoArgs ortho;
  Command ortho_cmd(app, "ortho", "Check one Bessel orthogonality integral or Lommel sum");
  ortho_cmd.field("pair", ortho.pair, "KK, JJ, KJ, KJ1 or lommel");
  ortho_cmd.field("nu", ortho.nu, "basis order");
  ortho_cmd.field("n", ortho.n, "first index");
  ortho_cmd.field("m", ortho.m, "second index");
  ortho_cmd.field("zeros", ortho.zeros, "number of Bessel zeros (lommel)");
  ortho_cmd.field("output", ortho.output, "output path (stdout if empty)");

  PolyArgs poly;
  Command poly_cmd(app, "poly", "Dump a coefficient sequence");
  poly_cmd.field("family", poly.family,
                 "kratzer_q, kratzer_v, invcube_q, invcube_w, dipquad_q, invquartic_q, general_b1, monic_b2");
  poly_cmd.field("nu", poly.nu, "basis order");
  poly_cmd.field("z", poly.z, "spectral variable");
  poly_cmd.field("lambda", poly.lambda, "inverse-square strength (invquartic_q)");
  poly_cmd.field("zeta_k2", poly.zeta_k2, "zeta k^2 (invquartic_q)");
  poly_cmd.field("a", poly.a, "parameter a (general_b1, monic_b2)");
  poly_cmd.field("b", poly.b, "parameter b (general_b1, monic_b2)");
  poly_cmd.field("alpha", poly.alpha, "parameter alpha (general_b1, monic_b2)");
  poly_cmd.field("beta", poly.beta, "parameter beta (general_b1, monic_b2)");
  poly_cmd.field("x", poly.x, "argument (general_b1, monic_b2)");
  poly_cmd.field("n_max", poly.n_max, "largest index");
  poly_cmd.field("format", poly.format, "csv or json");
  poly_cmd.field("output", poly.output, "output path (stdout if empty)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*solve_cmd.app()) return cmd_solve(solve_cmd, solve);
    if (*validate_cmd.app()) return cmd_validate(validate_cmd, suite, validate_output);
    if (*dipole_cmd.app()) return cmd_dipole(dipole_cmd, dipole);
    if (*spectrum_cmd.app()) return cmd_spectrum(spectrum_cmd, spectrum);
    if (*ortho_cmd.app()) return cmd_ortho(ortho_cmd, ortho);
    if (*poly_cmd.app()) return cmd_poly(poly_cmd, poly);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.code;
  }
  return kExitConfig;
}
