#include "botoc.h"

#include <cstring>
#include <new>
#include <string>

#include "core/channels.hpp"
#include "core/dense.hpp"
#include "core/estimates.hpp"
#include "core/matrix_io.hpp"
#include "core/models.hpp"
#include "core/montecarlo.hpp"
#include "core/otoc.hpp"
#include "core/rng.hpp"
#include "core/types.hpp"

struct botoc_matrix {
  botoc::Matrix m;
};

struct botoc_spectral {
  botoc::SpectralData s;
};

struct botoc_channel {
  botoc::ChannelRep ch;
};

namespace {

thread_local std::string t_last_error;

botoc_status map_code(botoc::ErrorCode code) {
  switch (code) {
    case botoc::ErrorCode::InvalidArgument:
      return BOTOC_ERR_INVALID_ARGUMENT;
    case botoc::ErrorCode::DimensionMismatch:
      return BOTOC_ERR_DIMENSION_MISMATCH;
    case botoc::ErrorCode::NotUnitary:
      return BOTOC_ERR_NOT_UNITARY;
    case botoc::ErrorCode::NotHermitian:
      return BOTOC_ERR_NOT_HERMITIAN;
    case botoc::ErrorCode::Io:
      return BOTOC_ERR_IO;
    case botoc::ErrorCode::Parse:
      return BOTOC_ERR_PARSE;
    case botoc::ErrorCode::Numerical:
      return BOTOC_ERR_NUMERICAL;
    case botoc::ErrorCode::Resource:
      return BOTOC_ERR_RESOURCE;
    case botoc::ErrorCode::Unsupported:
      return BOTOC_ERR_UNSUPPORTED;
    case botoc::ErrorCode::Internal:
      return BOTOC_ERR_INTERNAL;
  }
  return BOTOC_ERR_INTERNAL;
}

template <typename F>
botoc_status guarded(F&& f) {
  try {
    f();
    t_last_error.clear();
    return BOTOC_OK;
  } catch (const botoc::Error& e) {
    t_last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    t_last_error = "out of memory";
    return BOTOC_ERR_RESOURCE;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return BOTOC_ERR_INTERNAL;
  }
}

botoc_status fail_null(const char* what) {
  t_last_error = std::string(what) + " must not be null";
  return BOTOC_ERR_INVALID_ARGUMENT;
}

botoc::BipartiteDims make_dims(int d_a, int d_b) {
  botoc::BipartiteDims dims{d_a, d_b};
  dims.validate();
  return dims;
}

botoc::Factor make_factor(int keep) {
  if (keep != BOTOC_FACTOR_A && keep != BOTOC_FACTOR_B) {
    throw botoc::Error(botoc::ErrorCode::InvalidArgument,
                       "keep must name one of the two factors");
  }
  return keep == BOTOC_FACTOR_A ? botoc::Factor::A : botoc::Factor::B;
}

botoc_matrix* wrap(botoc::Matrix m) {
  auto* out = new botoc_matrix;
  out->m = std::move(m);
  return out;
}

void fill_hist(const botoc::SampleStats& st, uint64_t* hist_counts) {
  if (hist_counts == nullptr) return;
  for (size_t k = 0; k < st.deviations.counts.size(); ++k) {
    hist_counts[k] = st.deviations.counts[k];
  }
}

void fill_stats(const botoc::SampleStats& st, botoc_sample_stats* out) {
  out->n_samples = st.n_samples;
  out->mean = st.mean;
  out->variance = st.variance;
  out->reference = st.reference;
}

}  // namespace

extern "C" {

const char* botoc_version(void) { return "1.0.0"; }

const char* botoc_last_error(void) { return t_last_error.c_str(); }

botoc_status botoc_matrix_create(int rows, int cols, const double* data,
                                 botoc_matrix** out) {
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    if (rows < 1 || cols < 1) {
      throw botoc::Error(botoc::ErrorCode::InvalidArgument,
                         "matrix dimensions must be positive");
    }
    botoc::Matrix m = botoc::Matrix::Zero(rows, cols);
    if (data != nullptr) {
      for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
          const size_t at = 2 * (static_cast<size_t>(i) * cols + j);
          m(i, j) = botoc::Complex(data[at], data[at + 1]);
        }
      }
    }
    *out = wrap(std::move(m));
  });
}

botoc_status botoc_matrix_identity(int n, botoc_matrix** out) {
  if (out == nullptr) return fail_null("out");
  return guarded([&] { *out = wrap(botoc::identity(n)); });
}

botoc_status botoc_matrix_clone(const botoc_matrix* m, botoc_matrix** out) {
  if (m == nullptr) return fail_null("matrix");
  if (out == nullptr) return fail_null("out");
  return guarded([&] { *out = wrap(m->m); });
}

void botoc_matrix_free(botoc_matrix* m) { delete m; }

int botoc_matrix_rows(const botoc_matrix* m) {
  return m == nullptr ? 0 : static_cast<int>(m->m.rows());
}

int botoc_matrix_cols(const botoc_matrix* m) {
  return m == nullptr ? 0 : static_cast<int>(m->m.cols());
}

botoc_status botoc_matrix_copy_out(const botoc_matrix* m, double* data) {
  if (m == nullptr) return fail_null("matrix");
  if (data == nullptr) return fail_null("data");
  return guarded([&] {
    const auto rows = m->m.rows();
    const auto cols = m->m.cols();
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) {
        const size_t at = 2 * (static_cast<size_t>(i) * cols + j);
        data[at] = m->m(i, j).real();
        data[at + 1] = m->m(i, j).imag();
      }
    }
  });
}

botoc_status botoc_matrix_load(const char* path, botoc_matrix** out) {
  if (path == nullptr) return fail_null("path");
  if (out == nullptr) return fail_null("out");
  return guarded([&] { *out = wrap(botoc::load_matrix(path)); });
}

botoc_status botoc_matrix_save(const botoc_matrix* m, const char* path) {
  if (m == nullptr) return fail_null("matrix");
  if (path == nullptr) return fail_null("path");
  return guarded([&] { botoc::save_matrix(path, m->m); });
}

botoc_status botoc_matrix_multiply(const botoc_matrix* x,
                                   const botoc_matrix* y, botoc_matrix** out) {
  if (x == nullptr || y == nullptr) return fail_null("matrix");
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    if (x->m.cols() != y->m.rows()) {
      throw botoc::Error(botoc::ErrorCode::DimensionMismatch,
                         "inner dimensions do not match");
    }
    *out = wrap(botoc::Matrix(x->m * y->m));
  });
}

botoc_status botoc_matrix_kron(const botoc_matrix* x, const botoc_matrix* y,
                               botoc_matrix** out) {
  if (x == nullptr || y == nullptr) return fail_null("matrix");
  if (out == nullptr) return fail_null("out");
  return guarded([&] { *out = wrap(botoc::kron(x->m, y->m)); });
}

botoc_status botoc_matrix_adjoint(const botoc_matrix* m, botoc_matrix** out) {
  if (m == nullptr) return fail_null("matrix");
  if (out == nullptr) return fail_null("out");
  return guarded([&] { *out = wrap(botoc::Matrix(m->m.adjoint())); });
}

botoc_status botoc_matrix_pauli(int which, botoc_matrix** out) {
  if (out == nullptr) return fail_null("out");
  return guarded([&] { *out = wrap(botoc::pauli(which)); });
}

botoc_status botoc_matrix_swap_replica(int d, botoc_matrix** out) {
  if (out == nullptr) return fail_null("out");
  return guarded([&] { *out = wrap(botoc::swap_replica(d)); });
}

botoc_status botoc_matrix_haar_unitary(int n, uint64_t seed, uint64_t stream,
                                       botoc_matrix** out) {
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    botoc::RngStream rng(seed, stream);
    *out = wrap(botoc::haar_unitary(n, rng));
  });
}

int botoc_matrix_is_unitary(const botoc_matrix* m, double tol) {
  if (m == nullptr) return 0;
  try {
    return botoc::is_unitary(m->m, tol) ? 1 : 0;
  } catch (...) {
    return 0;
  }
}

botoc_status botoc_hamiltonian(const char* kind, int n_sites,
                               const char* const* param_names,
                               const double* param_values, int n_params,
                               botoc_matrix** out) {
  if (kind == nullptr) return fail_null("kind");
  if (out == nullptr) return fail_null("out");
  if (n_params > 0 && (param_names == nullptr || param_values == nullptr)) {
    return fail_null("params");
  }
  return guarded([&] {
    botoc::HamiltonianSpec spec;
    const std::string k = kind;
    if (k == "tfim") {
      spec.kind = botoc::ModelKind::TFIM;
    } else if (k == "xxz") {
      spec.kind = botoc::ModelKind::XXZ;
    } else {
      throw botoc::Error(botoc::ErrorCode::InvalidArgument,
                         "unknown model kind: " + k);
    }
    spec.n_sites = n_sites;
    for (int i = 0; i < n_params; ++i) {
      if (param_names[i] == nullptr) {
        throw botoc::Error(botoc::ErrorCode::InvalidArgument,
                           "parameter name must not be null");
      }
      spec.params[param_names[i]] = param_values[i];
    }
    *out = wrap(botoc::build_hamiltonian(spec));
  });
}

botoc_status botoc_spectral_create(const botoc_matrix* hamiltonian,
                                   double tol_level, double tol_gap,
                                   botoc_spectral** out) {
  if (hamiltonian == nullptr) return fail_null("hamiltonian");
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    const double tl = tol_level > 0.0 ? tol_level : 1e-9;
    const double tg = tol_gap > 0.0 ? tol_gap : 1e-9;
    auto* s = new botoc_spectral;
    try {
      s->s = botoc::eigendecompose(hamiltonian->m, tl, tg);
    } catch (...) {
      delete s;
      throw;
    }
    *out = s;
  });
}

void botoc_spectral_free(botoc_spectral* s) { delete s; }

int botoc_spectral_dim(const botoc_spectral* s) {
  return s == nullptr ? 0 : s->s.d();
}

botoc_status botoc_spectral_eigenvalues(const botoc_spectral* s, double* out) {
  if (s == nullptr) return fail_null("spectral data");
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    for (int k = 0; k < s->s.d(); ++k) out[k] = s->s.eigenvalues(k);
  });
}

botoc_status botoc_spectral_evolution(const botoc_spectral* s, double t,
                                      botoc_matrix** out) {
  if (s == nullptr) return fail_null("spectral data");
  if (out == nullptr) return fail_null("out");
  return guarded([&] { *out = wrap(botoc::evolution(s->s, t)); });
}

botoc_status botoc_spectral_nrc_flags(const botoc_spectral* s, int* nrc,
                                      int* nrc_plus, int* n_level_classes,
                                      int* n_gap_classes) {
  if (s == nullptr) return fail_null("spectral data");
  return guarded([&] {
    const botoc::NrcReport rep = botoc::nrc_report(s->s);
    if (nrc != nullptr) *nrc = rep.nrc ? 1 : 0;
    if (nrc_plus != nullptr) *nrc_plus = rep.nrc_plus ? 1 : 0;
    if (n_level_classes != nullptr) *n_level_classes = rep.n_level_classes;
    if (n_gap_classes != nullptr) *n_gap_classes = rep.n_gap_classes;
  });
}

botoc_status botoc_g_exact(const botoc_matrix* u, int d_a, int d_b, int side,
                           double* out) {
  if (u == nullptr) return fail_null("unitary");
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    botoc::ReplicaSide rs = botoc::ReplicaSide::Auto;
    if (side == BOTOC_SIDE_AA) {
      rs = botoc::ReplicaSide::AA;
    } else if (side == BOTOC_SIDE_BB) {
      rs = botoc::ReplicaSide::BB;
    } else if (side != BOTOC_SIDE_AUTO) {
      throw botoc::Error(botoc::ErrorCode::InvalidArgument,
                         "side must be auto, AA, or BB");
    }
    botoc::OtocRequest req{u->m, make_dims(d_a, d_b), 0.0, std::nullopt};
    *out = botoc::g_exact(req, rs);
  });
}

botoc_status botoc_g_reduced(const botoc_matrix* u, int d_a, int d_b,
                             double* out) {
  if (u == nullptr) return fail_null("unitary");
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    botoc::OtocRequest req{u->m, make_dims(d_a, d_b), 0.0, std::nullopt};
    *out = botoc::g_reduced(req);
  });
}

botoc_status botoc_g_thermal(const botoc_matrix* u, int d_a, int d_b,
                             double beta, const botoc_matrix* hamiltonian,
                             double* out) {
  if (u == nullptr) return fail_null("unitary");
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    botoc::OtocRequest req{u->m, make_dims(d_a, d_b), beta, std::nullopt};
    if (hamiltonian != nullptr) req.hamiltonian = hamiltonian->m;
    *out = botoc::g_thermal(req);
  });
}

botoc_status botoc_commutator_otoc(const botoc_matrix* u,
                                   const botoc_matrix* v_a,
                                   const botoc_matrix* w_b, int d_a, int d_b,
                                   double* out) {
  if (u == nullptr || v_a == nullptr || w_b == nullptr) {
    return fail_null("operator");
  }
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    *out = botoc::commutator_otoc(u->m, v_a->m, w_b->m, make_dims(d_a, d_b));
  });
}

botoc_status botoc_operator_entanglement(const botoc_matrix* u, int d_a,
                                         int d_b, double* out) {
  if (u == nullptr) return fail_null("unitary");
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    *out = botoc::operator_entanglement(u->m, make_dims(d_a, d_b));
  });
}

botoc_status botoc_entangling_power(const botoc_matrix* u, int d_a, int d_b,
                                    double* out) {
  if (u == nullptr) return fail_null("unitary");
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    *out = botoc::entangling_power(u->m, make_dims(d_a, d_b));
  });
}

botoc_status botoc_haar_estimate(int d_a, int d_b, double* out) {
  if (out == nullptr) return fail_null("out");
  return guarded([&] { *out = botoc::haar_estimate(make_dims(d_a, d_b)); });
}

botoc_status botoc_haar_estimate_asymptote(int d_a, double* out) {
  if (out == nullptr) return fail_null("out");
  return guarded([&] { *out = botoc::haar_estimate_asymptote(d_a); });
}

botoc_status botoc_nrc_estimate(const botoc_spectral* s, int d_a, int d_b,
                                double* out) {
  if (s == nullptr) return fail_null("spectral data");
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    *out = botoc::nrc_estimate(s->s, make_dims(d_a, d_b));
  });
}

botoc_status botoc_nrc_plus_estimate(const botoc_spectral* s, int d_a,
                                     int d_b, double* out) {
  if (s == nullptr) return fail_null("spectral data");
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    *out = botoc::nrc_plus_estimate(s->s, make_dims(d_a, d_b));
  });
}

botoc_status botoc_exact_time_average(const botoc_spectral* s, int d_a,
                                      int d_b, double* out) {
  if (s == nullptr) return fail_null("spectral data");
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    *out = botoc::exact_time_average(s->s, make_dims(d_a, d_b));
  });
}

botoc_status botoc_hierarchy(const botoc_spectral* s, int d_a, int d_b,
                             double values[4], int* hierarchy_ok) {
  if (s == nullptr) return fail_null("spectral data");
  return guarded([&] {
    const botoc::EstimateReport rep =
        botoc::hierarchy_report(s->s, make_dims(d_a, d_b));
    if (values != nullptr) {
      values[0] = rep.haar;
      values[1] = rep.nrc;
      values[2] = rep.nrc_plus;
      values[3] = rep.exact;
    }
    if (hierarchy_ok != nullptr) *hierarchy_ok = rep.hierarchy_ok ? 1 : 0;
  });
}

botoc_status botoc_entanglement_profile(const botoc_spectral* s, int d_a,
                                        int d_b, double* out) {
  if (s == nullptr) return fail_null("spectral data");
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    const botoc::RealVector prof =
        botoc::eigenstate_entanglement_profile(s->s, make_dims(d_a, d_b));
    for (Eigen::Index k = 0; k < prof.size(); ++k) out[k] = prof(k);
  });
}

botoc_status botoc_profile_bound(const double* profile, int len, int d_a,
                                 int d_b, double epsilon, const double* nrc,
                                 double* alpha, double* j_term, double* k_term,
                                 double* bound, double* deviation) {
  if (profile == nullptr) return fail_null("profile");
  return guarded([&] {
    if (len < 1) {
      throw botoc::Error(botoc::ErrorCode::InvalidArgument,
                         "profile must not be empty");
    }
    botoc::RealVector p(len);
    for (int k = 0; k < len; ++k) p(k) = profile[k];
    std::optional<double> nrc_value;
    if (nrc != nullptr) nrc_value = *nrc;
    const botoc::ProfileBound b =
        botoc::profile_bound(p, make_dims(d_a, d_b), epsilon, nrc_value);
    if (alpha != nullptr) *alpha = b.alpha;
    if (j_term != nullptr) *j_term = b.j_term;
    if (k_term != nullptr) *k_term = b.k_term;
    if (bound != nullptr) *bound = b.bound;
    if (deviation != nullptr && b.nrc_deviation) {
      *deviation = *b.nrc_deviation;
    }
  });
}

botoc_status botoc_channel_create(const botoc_matrix* u, int d_a, int d_b,
                                  int keep, botoc_channel** out) {
  if (u == nullptr) return fail_null("unitary");
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    auto* ch = new botoc_channel;
    try {
      ch->ch = botoc::reduced_channel(u->m, make_dims(d_a, d_b),
                                      make_factor(keep));
    } catch (...) {
      delete ch;
      throw;
    }
    *out = ch;
  });
}

void botoc_channel_free(botoc_channel* ch) { delete ch; }

int botoc_channel_dim(const botoc_channel* ch) {
  return ch == nullptr ? 0 : ch->ch.dim;
}

botoc_status botoc_channel_apply(const botoc_channel* ch,
                                 const botoc_matrix* rho, botoc_matrix** out) {
  if (ch == nullptr) return fail_null("channel");
  if (rho == nullptr) return fail_null("input state");
  if (out == nullptr) return fail_null("out");
  return guarded([&] { *out = wrap(botoc::apply_channel(ch->ch, rho->m)); });
}

botoc_status botoc_channel_choi(const botoc_channel* ch, botoc_matrix** out) {
  if (ch == nullptr) return fail_null("channel");
  if (out == nullptr) return fail_null("out");
  return guarded([&] { *out = wrap(botoc::choi_state(ch->ch)); });
}

botoc_status botoc_channel_certify(const botoc_channel* ch, double tol) {
  if (ch == nullptr) return fail_null("channel");
  return guarded([&] {
    botoc::certify_channel(ch->ch, tol > 0.0 ? tol : 1e-10);
  });
}

botoc_status botoc_choi_distance_check(const botoc_matrix* u, int d_a,
                                       int d_b, int keep, double* g,
                                       double* g_max, double* distance_sq) {
  if (u == nullptr) return fail_null("unitary");
  return guarded([&] {
    const botoc::ChoiCheck chk = botoc::choi_distance_check(
        u->m, make_dims(d_a, d_b), make_factor(keep));
    if (g != nullptr) *g = chk.g;
    if (g_max != nullptr) *g_max = chk.g_max;
    if (distance_sq != nullptr) *distance_sq = chk.distance_sq;
  });
}

botoc_status botoc_diamond_bounds(const botoc_matrix* u, int d_a, int d_b,
                                  int keep, double* lower, double* upper) {
  if (u == nullptr) return fail_null("unitary");
  return guarded([&] {
    const botoc::DiamondBounds b = botoc::diamond_bounds(
        u->m, make_dims(d_a, d_b), make_factor(keep));
    if (lower != nullptr) *lower = b.lower;
    if (upper != nullptr) *upper = b.upper;
  });
}

botoc_status botoc_markov_fraction_bound(double haar_avg, double exact_avg,
                                         int d_a, int d_b, int keep,
                                         double epsilon, double* out) {
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    *out = botoc::markov_fraction_bound(haar_avg, exact_avg,
                                        make_dims(d_a, d_b),
                                        make_factor(keep), epsilon);
  });
}

botoc_status botoc_sample_otoc(const botoc_matrix* u, int ensemble, int d_a,
                               int d_b, int n_sites_a, int n_sites_b,
                               uint64_t n_samples, uint64_t seed,
                               uint64_t stream, int n_threads,
                               botoc_sample_stats* out,
                               uint64_t* hist_counts) {
  if (u == nullptr) return fail_null("unitary");
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    botoc::EnsembleSpec ens;
    switch (ensemble) {
      case BOTOC_ENSEMBLE_HAAR_LOCAL:
        ens.kind = botoc::EnsembleKind::HaarLocal;
        break;
      case BOTOC_ENSEMBLE_PAULI_FACTORIZED:
        ens.kind = botoc::EnsembleKind::PauliFactorized;
        break;
      case BOTOC_ENSEMBLE_HAAR_GLOBAL:
        ens.kind = botoc::EnsembleKind::HaarGlobal;
        break;
      default:
        throw botoc::Error(botoc::ErrorCode::InvalidArgument,
                           "unknown ensemble");
    }
    ens.dims = make_dims(d_a, d_b);
    ens.n_sites_a = n_sites_a;
    ens.n_sites_b = n_sites_b;
    const botoc::RngStream rng(seed, stream);
    const botoc::SampleStats st =
        botoc::sample_otoc(u->m, ens, n_samples, rng, n_threads);
    fill_stats(st, out);
    fill_hist(st, hist_counts);
  });
}

botoc_status botoc_pauli_exhaustive_average(const botoc_matrix* u,
                                            int n_sites_a, int n_sites_b,
                                            double* out) {
  if (u == nullptr) return fail_null("unitary");
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    if (n_sites_a < 0 || n_sites_b < 0 || n_sites_a > 30 || n_sites_b > 30) {
      throw botoc::Error(botoc::ErrorCode::InvalidArgument,
                         "site counts out of range");
    }
    botoc::EnsembleSpec ens;
    ens.kind = botoc::EnsembleKind::PauliFactorized;
    ens.dims = make_dims(1 << n_sites_a, 1 << n_sites_b);
    ens.n_sites_a = n_sites_a;
    ens.n_sites_b = n_sites_b;
    *out = botoc::pauli_exhaustive_average(u->m, ens);
  });
}

botoc_status botoc_entropy_production(const botoc_matrix* u, int d_a, int d_b,
                                      int keep, uint64_t n_samples,
                                      uint64_t seed, uint64_t stream,
                                      int n_threads, botoc_sample_stats* out,
                                      uint64_t* hist_counts) {
  if (u == nullptr) return fail_null("unitary");
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    const botoc::RngStream rng(seed, stream);
    const botoc::SampleStats st = botoc::entropy_production_estimate(
        u->m, make_dims(d_a, d_b), make_factor(keep), n_samples, rng,
        n_threads);
    fill_stats(st, out);
    fill_hist(st, hist_counts);
  });
}

botoc_status botoc_swap_protocol(const botoc_matrix* u, int d_a, int d_b,
                                 int keep, const double* psi, double* out) {
  if (u == nullptr) return fail_null("unitary");
  if (psi == nullptr) return fail_null("psi");
  if (out == nullptr) return fail_null("out");
  return guarded([&] {
    const botoc::BipartiteDims dims = make_dims(d_a, d_b);
    const botoc::Factor f = make_factor(keep);
    const int dchi = dims.dim(f);
    botoc::Vector state(dchi);
    for (int k = 0; k < dchi; ++k) {
      state(k) = botoc::Complex(psi[2 * k], psi[2 * k + 1]);
    }
    *out = botoc::swap_protocol_sim(u->m, dims, f, state);
  });
}

botoc_status botoc_concentration(const botoc_matrix* u, int variant, int d_a,
                                 int d_b, uint64_t n_samples,
                                 const double* eps, int n_eps, uint64_t seed,
                                 uint64_t stream, int n_threads,
                                 double* empirical, double* bounds) {
  if (u == nullptr) return fail_null("unitary");
  if (eps == nullptr) return fail_null("eps");
  return guarded([&] {
    if (n_eps < 1) {
      throw botoc::Error(botoc::ErrorCode::InvalidArgument,
                         "need at least one epsilon");
    }
    botoc::ConcentrationVariant v;
    if (variant == BOTOC_CONCENTRATION_OTOC) {
      v = botoc::ConcentrationVariant::Otoc;
    } else if (variant == BOTOC_CONCENTRATION_STATE) {
      v = botoc::ConcentrationVariant::State;
    } else {
      throw botoc::Error(botoc::ErrorCode::InvalidArgument,
                         "unknown concentration variant");
    }
    botoc::EnsembleSpec ens;
    ens.kind = botoc::EnsembleKind::HaarLocal;
    ens.dims = make_dims(d_a, d_b);
    const std::vector<double> grid(eps, eps + n_eps);
    const botoc::RngStream rng(seed, stream);
    const std::vector<botoc::ConcentrationRow> rows =
        botoc::concentration_experiment(u->m, ens, n_samples, grid, rng, v,
                                        n_threads);
    for (int k = 0; k < n_eps; ++k) {
      if (empirical != nullptr) empirical[k] = rows[static_cast<size_t>(k)].empirical_p;
      if (bounds != nullptr) bounds[k] = rows[static_cast<size_t>(k)].bound;
    }
  });
}

} /* extern "C" */
