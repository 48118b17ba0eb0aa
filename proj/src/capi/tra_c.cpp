#include "tra/tra.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <new>
#include <string>

#include "tra/dipole.hpp"
#include "tra/error.hpp"
#include "tra/recursion.hpp"
#include "tra/scattering.hpp"
#include "tra/suites.hpp"
#include "tra/validation.hpp"

struct tra_model {
  tra::PotentialModel model;
};

struct tra_solution {
  tra::SolveResult result;
};

struct tra_sequence {
  tra::CoefficientSequence seq;
};

struct tra_dipole {
  tra::DipoleSpectrum spectrum;
};

struct tra_report {
  tra::SuiteReport report;
};

namespace {

thread_local std::string g_last_error;

tra_status status_of(tra::ErrorCode code) {
  switch (code) {
    case tra::ErrorCode::InvalidArgument: return TRA_ERR_INVALID_ARGUMENT;
    case tra::ErrorCode::Domain: return TRA_ERR_DOMAIN;
    case tra::ErrorCode::Accuracy: return TRA_ERR_ACCURACY;
    case tra::ErrorCode::Degenerate: return TRA_ERR_DEGENERATE;
    case tra::ErrorCode::Supercritical: return TRA_ERR_SUPERCRITICAL;
    case tra::ErrorCode::NotFound: return TRA_ERR_NOT_FOUND;
    case tra::ErrorCode::UndefinedPhase: return TRA_ERR_UNDEFINED_PHASE;
    case tra::ErrorCode::Resolution: return TRA_ERR_RESOLUTION;
    case tra::ErrorCode::NoRegularSolution: return TRA_ERR_NO_REGULAR_SOLUTION;
  }
  return TRA_ERR_INTERNAL;
}

template <class F>
tra_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return TRA_OK;
  } catch (const tra::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return TRA_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TRA_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return TRA_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) tra::fail(tra::ErrorCode::InvalidArgument, std::string(what) + " is NULL");
}

void need_capacity(std::size_t capacity, std::size_t count) {
  if (capacity < count)
    tra::fail(tra::ErrorCode::InvalidArgument, "output capacity " + std::to_string(capacity) +
                                                   " is smaller than " + std::to_string(count));
}

tra_status make_model(tra::PotentialModel m, tra_model** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    *out = new tra_model{tra::resolve(m)};
  });
}

tra::Parity parity_of(int parity) {
  if (parity != 0 && parity != 1) tra::fail(tra::ErrorCode::InvalidArgument, "parity must be 0 or 1");
  return parity == 1 ? tra::Parity::Odd : tra::Parity::Even;
}

void fill(const tra::IntegralResult& r, tra_integral* out) {
  out->numeric = r.numeric;
  out->closed_form = r.closed_form;
  out->abs_error = r.abs_error;
  out->tail_bound = r.tail_bound;
  out->segments_used = r.segments_used;
}

}  // namespace

extern "C" {

const char* tra_last_error(void) { return g_last_error.c_str(); }

const char* tra_status_string(tra_status status) {
  switch (status) {
    case TRA_OK: return "ok";
    case TRA_ERR_INVALID_ARGUMENT: return "invalid argument";
    case TRA_ERR_DOMAIN: return "domain error";
    case TRA_ERR_ACCURACY: return "accuracy error";
    case TRA_ERR_DEGENERATE: return "degenerate input";
    case TRA_ERR_SUPERCRITICAL: return "supercritical";
    case TRA_ERR_NOT_FOUND: return "not found";
    case TRA_ERR_UNDEFINED_PHASE: return "undefined phase";
    case TRA_ERR_RESOLUTION: return "resolution error";
    case TRA_ERR_NO_REGULAR_SOLUTION: return "no regular solution";
    case TRA_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

tra_status tra_bessel_j(double nu, double x, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = tra::bessel_j(nu, x);
  });
}

tra_status tra_coulomb_exact(double Z, int ell, double E, double r, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = tra::coulomb_exact(Z, ell, E, r);
  });
}

tra_status tra_linear_grid(double start, double stop, int count, double* out) {
  return guarded([&] {
    need(out, "out");
    const auto g = tra::linear_grid(start, stop, count);
    std::copy(g.begin(), g.end(), out);
  });
}

tra_status tra_log_grid(double start, double stop, int count, double* out) {
  return guarded([&] {
    need(out, "out");
    const auto g = tra::log_grid(start, stop, count);
    std::copy(g.begin(), g.end(), out);
  });
}

tra_status tra_model_kratzer(double xi, double Lambda, tra_model** out) {
  return make_model(tra::Kratzer{xi, Lambda}, out);
}

tra_status tra_model_invcube(double Lambda, double zeta, tra_model** out) {
  return make_model(tra::InverseCube{Lambda, zeta}, out);
}

tra_status tra_model_invquartic(double Lambda, double zeta, double nu, tra_model** out) {
  tra::InverseQuartic m{Lambda, zeta, std::nullopt};
  if (nu > 0.0) m.nu = nu;
  return make_model(m, out);
}

tra_status tra_model_dipquad(double d, double q, double eta, int m, int branch, tra_model** out) {
  tra::DipoleQuadrupole dq;
  dq.d = d;
  dq.q = q;
  dq.eta = eta;
  dq.m = m;
  dq.branch = branch;
  return make_model(dq, out);
}

void tra_model_free(tra_model* model) { delete model; }

tra_status tra_model_potential(const tra_model* model, double r, double* out) {
  return guarded([&] {
    need(model, "model");
    need(out, "out");
    *out = tra::effective_potential(model->model, r);
  });
}

tra_status tra_model_spectral_map(const tra_model* model, double E, double* k, double* nu, double* z) {
  return guarded([&] {
    need(model, "model");
    const tra::SpectralMap map = tra::spectral_map(model->model, E);
    if (k) *k = map.k;
    if (nu) *nu = map.nu;
    if (z) *z = map.z;
  });
}

tra_status tra_solve(const tra_model* model, double E, const double* r, size_t count, int n_max,
                     tra_solution** out) {
  return guarded([&] {
    need(model, "model");
    need(r, "r");
    need(out, "out");
    *out = nullptr;
    std::vector<double> grid(r, r + count);
    *out = new tra_solution{tra::solve(model->model, E, grid, n_max)};
  });
}

void tra_solution_free(tra_solution* solution) { delete solution; }

tra_status tra_solution_get_info(const tra_solution* solution, tra_solution_info* out) {
  return guarded([&] {
    need(solution, "solution");
    need(out, "out");
    const tra::ScatteringSolution& s = solution->result.solution;
    out->E = s.E;
    out->k = s.map.k;
    out->nu = s.map.nu;
    out->z = s.map.z;
    out->delta = s.delta;
    out->C0 = s.C0;
    out->S = s.S;
    out->C = s.C;
    out->tail_estimate = s.tail_estimate;
    out->n_used = s.n_used;
    out->plateau = s.plateau ? 1 : 0;
    out->plateau_index = s.plateau_index ? *s.plateau_index : -1;
    out->truncation_warning = s.truncation_warning ? 1 : 0;
    out->long_range = s.long_range ? 1 : 0;
    out->c0_from_gamma = s.c0_source == tra::C0Source::CoulombGamma ? 1 : 0;
    out->growing = s.growing ? 1 : 0;
  });
}

size_t tra_solution_sample_count(const tra_solution* solution) {
  return solution ? solution->result.samples.r.size() : 0;
}

tra_status tra_solution_samples(const tra_solution* solution, double* r, double* psi, size_t capacity) {
  return guarded([&] {
    need(solution, "solution");
    const auto& s = solution->result.samples;
    need_capacity(capacity, s.r.size());
    for (std::size_t i = 0; i < s.r.size(); ++i) {
      if (r) r[i] = s.r[i];
      if (psi) psi[i] = s.psi[i];
    }
  });
}

size_t tra_solution_weight_count(const tra_solution* solution) {
  return solution ? solution->result.solution.weights.size() : 0;
}

tra_status tra_solution_weights(const tra_solution* solution, double* out, size_t capacity) {
  return guarded([&] {
    need(solution, "solution");
    need(out, "out");
    const auto& w = solution->result.solution.weights;
    need_capacity(capacity, w.size());
    std::copy(w.begin(), w.end(), out);
  });
}

tra_status tra_ode_oracle(const tra_model* model, double E, const double* r, size_t count, double* psi) {
  return guarded([&] {
    need(model, "model");
    need(r, "r");
    need(psi, "psi");
    const auto samples = tra::ode_oracle(model->model, E, std::vector<double>(r, r + count));
    std::copy(samples.psi.begin(), samples.psi.end(), psi);
  });
}

tra_status tra_family_from_name(const char* name, int* tag) {
  return guarded([&] {
    need(name, "name");
    need(tag, "tag");
    const auto t = tra::family_from_string(name);
    if (!t) tra::fail(tra::ErrorCode::InvalidArgument, std::string("unknown family '") + name + "'");
    *tag = static_cast<int>(*t);
  });
}

const char* tra_family_name(int tag) {
  if (tag < 0 || tag > static_cast<int>(tra::FamilyTag::MonicB2)) return "unknown";
  return tra::to_string(static_cast<tra::FamilyTag>(tag));
}

tra_status tra_sequence_solve(const tra_family_params* p, int n_max, tra_sequence** out) {
  return guarded([&] {
    need(p, "params");
    need(out, "out");
    *out = nullptr;
    if (p->tag < 0 || p->tag > static_cast<int>(tra::FamilyTag::MonicB2))
      tra::fail(tra::ErrorCode::InvalidArgument, "unknown family tag");
    tra::RecursionFamily f;
    f.tag = static_cast<tra::FamilyTag>(p->tag);
    f.nu = p->nu;
    f.z = p->z;
    f.lambda = p->lambda;
    f.zeta_k2 = p->zeta_k2;
    f.a = p->a;
    f.b = p->b;
    f.alpha = p->alpha;
    f.beta = p->beta;
    f.x = p->x;
    *out = new tra_sequence{tra::forward_solve(f, n_max)};
  });
}

void tra_sequence_free(tra_sequence* seq) { delete seq; }

size_t tra_sequence_size(const tra_sequence* seq) { return seq ? seq->seq.size() : 0; }

tra_status tra_sequence_values(const tra_sequence* seq, double* mantissa, int* exponent, size_t capacity) {
  return guarded([&] {
    need(seq, "sequence");
    need_capacity(capacity, seq->seq.size());
    for (std::size_t i = 0; i < seq->seq.size(); ++i) {
      if (mantissa) mantissa[i] = seq->seq.mantissa[i];
      if (exponent) exponent[i] = seq->seq.exponent[i];
    }
  });
}

tra_status tra_sequence_first_growth(const tra_sequence* seq, int* index) {
  return guarded([&] {
    need(seq, "sequence");
    need(index, "index");
    *index = seq->seq.first_growth_index ? *seq->seq.first_growth_index : -1;
  });
}

tra_status tra_dipole_spectrum(double d, int m, int size, tra_dipole** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    *out = new tra_dipole{tra::chi_values(d, m, size)};
  });
}

void tra_dipole_free(tra_dipole* spectrum) { delete spectrum; }

size_t tra_dipole_count(const tra_dipole* spectrum) {
  return spectrum ? spectrum->spectrum.eigenvalues.size() : 0;
}

tra_status tra_dipole_values(const tra_dipole* spectrum, double* eigenvalues, double* chi,
                             int* supercritical, size_t capacity) {
  return guarded([&] {
    need(spectrum, "spectrum");
    const auto& s = spectrum->spectrum;
    need_capacity(capacity, s.eigenvalues.size());
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
      if (eigenvalues) eigenvalues[i] = s.eigenvalues[i];
      if (chi) chi[i] = s.chi[i];
      if (supercritical) supercritical[i] = s.supercritical[i] ? 1 : 0;
    }
  });
}

tra_status tra_critical_dipole(int m, int size, double tol, double* d_max) {
  return guarded([&] {
    need(d_max, "d_max");
    *d_max = tra::critical_dipole(m, size, tol).d_max;
  });
}

tra_status tra_exponential_level(double lambda, double nu, int parity, int n, double* energy) {
  return guarded([&] {
    need(energy, "energy");
    *energy = tra::exponential_spectrum(lambda, nu, parity_of(parity), n).energy;
  });
}

tra_status tra_exponential_state(double lambda, double nu, int parity, int n, double r, double* psi) {
  return guarded([&] {
    need(psi, "psi");
    *psi = tra::exponential_spectrum(lambda, nu, parity_of(parity), n)(r);
  });
}

tra_status tra_ortho_check(int pair, double nu, int n, int m, tra_integral* out) {
  return guarded([&] {
    need(out, "out");
    if (pair < 0 || pair > 3) tra::fail(tra::ErrorCode::InvalidArgument, "pair must be 0..3");
    fill(tra::ortho_check(static_cast<tra::ParityPair>(pair), nu, n, m), out);
  });
}

tra_status tra_lommel_check(double nu, int n, int m, int K, tra_integral* out) {
  return guarded([&] {
    need(out, "out");
    fill(tra::lommel_ortho_check(nu, n, m, K), out);
  });
}

tra_status tra_validate(const char* suite, tra_report** out) {
  return guarded([&] {
    need(suite, "suite");
    need(out, "out");
    *out = nullptr;
    *out = new tra_report{tra::run_suite(suite)};
  });
}

void tra_report_free(tra_report* report) { delete report; }

size_t tra_report_count(const tra_report* report) { return report ? report->report.checks.size() : 0; }

tra_status tra_report_check(const tra_report* report, size_t index, const char** name, int* pass,
                            double* measured, double* threshold) {
  return guarded([&] {
    need(report, "report");
    if (index >= report->report.checks.size())
      tra::fail(tra::ErrorCode::InvalidArgument, "check index out of range");
    const auto& c = report->report.checks[index];
    if (name) *name = c.name.c_str();
    if (pass) *pass = c.pass ? 1 : 0;
    if (measured) *measured = c.measured;
    if (threshold) *threshold = c.threshold;
  });
}

int tra_report_all_pass(const tra_report* report) {
  return report && report->report.all_pass() ? 1 : 0;
}

}  // extern "C"
