// Copyright 2026 The cohmem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cohmem/cohmem.h"

#include <cmath>
#include <cstring>
#include <new>
#include <string>

#include "cohmem/certify.hpp"
#include "cohmem/channels.hpp"
#include "cohmem/error.hpp"
#include "cohmem/highdim.hpp"
#include "cohmem/io.hpp"
#include "cohmem/measures.hpp"
#include "cohmem/random.hpp"
#include "cohmem/sinkhorn.hpp"

struct cohmem_channel {
  cohmem::io::ChannelData data;
};

struct cohmem_dataset {
  cohmem::CoherenceDataset data;
};

struct cohmem_unitary {
  cohmem::GeneralBasis data;
};

namespace {

thread_local std::string g_last_error;

cohmem_status fail(cohmem_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

cohmem_status from_kind(cohmem::ErrorKind k) {
  switch (k) {
    case cohmem::ErrorKind::Parse: return COHMEM_ERR_PARSE;
    case cohmem::ErrorKind::Validation: return COHMEM_ERR_VALIDATION;
    case cohmem::ErrorKind::Numeric: return COHMEM_ERR_NUMERIC;
    case cohmem::ErrorKind::Unsupported: return COHMEM_ERR_UNSUPPORTED;
    case cohmem::ErrorKind::Infeasible: return COHMEM_ERR_INFEASIBLE;
    case cohmem::ErrorKind::Io: return COHMEM_ERR_IO;
  }
  return COHMEM_ERR_INTERNAL;
}

template <class F>
cohmem_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const cohmem::Error& e) {
    return fail(from_kind(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(COHMEM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(COHMEM_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

cohmem::OptimizerOptions measure_options(const cohmem_quality_options& o) {
  cohmem::OptimizerOptions m;
  m.n_starts = o.n_starts;
  m.refine_candidates = o.refine_candidates;
  m.local_tol = o.local_tol;
  return m;
}

cohmem::CertifyOptions certify_options(const cohmem_certify_options* o) {
  cohmem_certify_options d;
  cohmem_certify_options_default(&d);
  if (o == nullptr) o = &d;
  cohmem::CertifyOptions c;
  c.starts = o->starts;
  c.seed = o->seed;
  c.threads = o->threads;
  c.feasibility_tol = o->feasibility_tol;
  return c;
}

void put_mat3(const cohmem::Mat3& m, double out[9]) {
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out[3 * r + c] = m(r, c);
}

cohmem::GeneralBasis unitary_from_spec(const std::string& spec, uint64_t seed) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  int dim = 2;
  if (colon != std::string::npos) {
    const std::string arg = spec.substr(colon + 1);
    std::size_t used = 0;
    try {
      dim = std::stoi(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != arg.size()) throw cohmem::ParseError("bad dimension in unitary spec '" + spec + "'");
  }
  if (dim < 2 || dim > 4) throw cohmem::ValidationError("unitary dimension must be 2, 3 or 4");
  if (name == "identity") return cohmem::GeneralBasis::identity(dim);
  if (name == "hadamard") {
    if (colon != std::string::npos && dim != 2) throw cohmem::ValidationError("hadamard is 2x2");
    cohmem::CMatrix h(2, 2);
    h << 1, 1, 1, -1;
    return cohmem::GeneralBasis(h / std::sqrt(2.0));
  }
  if (name == "fourier") {
    cohmem::CMatrix f(dim, dim);
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) f(j, k) = std::polar(1.0 / std::sqrt(dim), 2.0 * M_PI * j * k / dim);
    return cohmem::GeneralBasis(f);
  }
  if (name == "random") {
    cohmem::Rng rng(seed);
    return cohmem::GeneralBasis(cohmem::random_unitary(dim, rng));
  }
  throw cohmem::ParseError("unknown unitary '" + name + "' (expected identity, hadamard, fourier or random)");
}

}  // namespace

extern "C" {

const char* cohmem_last_error(void) { return g_last_error.c_str(); }

const char* cohmem_status_name(cohmem_status s) {
  switch (s) {
    case COHMEM_OK: return "ok";
    case COHMEM_ERR_PARSE: return "parse error";
    case COHMEM_ERR_VALIDATION: return "validation error";
    case COHMEM_ERR_NUMERIC: return "numeric error";
    case COHMEM_ERR_UNSUPPORTED: return "unsupported";
    case COHMEM_ERR_INFEASIBLE: return "infeasible";
    case COHMEM_ERR_IO: return "i/o error";
    case COHMEM_ERR_ARGUMENT: return "invalid argument";
    case COHMEM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* cohmem_version(void) { return "0.1.0"; }

void cohmem_string_free(char* s) { delete[] s; }

cohmem_status cohmem_channel_from_builtin(const char* spec, cohmem_channel** out) {
  if (spec == nullptr || out == nullptr) return fail(COHMEM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new cohmem_channel{cohmem::channels::builtin(spec)};
    return COHMEM_OK;
  });
}

cohmem_status cohmem_channel_from_json(const char* text, cohmem_channel** out) {
  if (text == nullptr || out == nullptr) return fail(COHMEM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new cohmem_channel{cohmem::io::parse_channel(text)};
    return COHMEM_OK;
  });
}

cohmem_status cohmem_channel_from_file(const char* path, cohmem_channel** out) {
  if (path == nullptr || out == nullptr) return fail(COHMEM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new cohmem_channel{cohmem::io::load_channel(path)};
    return COHMEM_OK;
  });
}

cohmem_status cohmem_channel_from_affine(const double lambda[9], const double kappa[3], cohmem_channel** out) {
  if (lambda == nullptr || kappa == nullptr || out == nullptr) return fail(COHMEM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    cohmem::AffineChannel a;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) a.lambda(r, c) = lambda[3 * r + c];
      a.kappa(r) = kappa[r];
    }
    if (!a.lambda.allFinite() || !a.kappa.allFinite())
      return fail(COHMEM_ERR_VALIDATION, "channel has non-finite entries");
    *out = new cohmem_channel{a};
    return COHMEM_OK;
  });
}

void cohmem_channel_free(cohmem_channel* ch) { delete ch; }

cohmem_status cohmem_channel_dim(const cohmem_channel* ch, int* dim) {
  if (ch == nullptr || dim == nullptr) return fail(COHMEM_ERR_ARGUMENT, "null argument");
  if (std::holds_alternative<cohmem::AffineChannel>(ch->data))
    *dim = 2;
  else
    *dim = std::get<cohmem::ChoiMatrix>(ch->data).dim();
  return COHMEM_OK;
}

cohmem_status cohmem_channel_affine(const cohmem_channel* ch, double lambda[9], double kappa[3]) {
  if (ch == nullptr || lambda == nullptr || kappa == nullptr) return fail(COHMEM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const auto a = cohmem::io::as_affine(ch->data);
    put_mat3(a.lambda, lambda);
    for (int i = 0; i < 3; ++i) kappa[i] = a.kappa(i);
    return COHMEM_OK;
  });
}

cohmem_status cohmem_channel_choi_min_eigenvalue(const cohmem_channel* ch, double* out) {
  if (ch == nullptr || out == nullptr) return fail(COHMEM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = cohmem::min_eigenvalue(cohmem::io::as_choi(ch->data).matrix());
    return COHMEM_OK;
  });
}

cohmem_status cohmem_channel_to_json(const cohmem_channel* ch, char** json) {
  if (ch == nullptr || json == nullptr) return fail(COHMEM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    std::visit([&](const auto& v) { *json = dup_string(cohmem::io::channel_to_json(v)); }, ch->data);
    return COHMEM_OK;
  });
}

void cohmem_quality_options_default(cohmem_quality_options* opts) {
  if (opts == nullptr) return;
  const cohmem::OptimizerOptions d;
  opts->n_starts = d.n_starts;
  opts->refine_candidates = d.refine_candidates;
  opts->local_tol = d.local_tol;
  opts->margin = 1e-4;
  opts->assume_unital = 0;
}

cohmem_status cohmem_quality(const cohmem_channel* ch, const cohmem_quality_options* opts,
                             cohmem_quality_report* out) {
  if (ch == nullptr || out == nullptr) return fail(COHMEM_ERR_ARGUMENT, "null argument");
  cohmem_quality_options o;
  cohmem_quality_options_default(&o);
  if (opts != nullptr) o = *opts;
  if (!(o.margin >= 0.0)) return fail(COHMEM_ERR_ARGUMENT, "margin must be non-negative");
  return guarded([&] {
    int dim = 2;
    cohmem_channel_dim(ch, &dim);
    if (dim != 2) {
      return fail(COHMEM_ERR_UNSUPPORTED,
                  "exact measures need a qubit channel; use the high-dimensional bound for D = " +
                      std::to_string(dim));
    }
    const auto a = cohmem::io::as_affine(ch->data);
    const auto mo = measure_options(o);
    const auto minus = cohmem::q_minus(a, mo);
    const auto zero = cohmem::q_zero(a, mo);
    const auto plus = cohmem::q_plus(a, mo);
    const auto cc = cohmem::canonicalize(a);
    const auto up = cohmem::upper_bounds_lemma(cc);
    const auto lo = cohmem::lower_bounds_lemma(cc);
    const auto verdict = cohmem::mp_verdict(minus, zero, plus, o.assume_unital != 0, o.margin);

    *out = cohmem_quality_report{};
    out->q_minus = minus.value;
    out->q_zero = zero.value;
    out->q_plus = plus.value;
    out->upper_minus = up.minus;
    out->upper_plus = up.plus;
    out->lower_minus = lo.minus;
    out->lower_plus = lo.plus;
    for (int i = 0; i < 3; ++i) out->singular_values[i] = cc.sv(i);
    out->completely_positive = 1;
    out->measure_and_prepare = cohmem::is_measure_and_prepare(a, 1e-9) ? 1 : 0;
    out->unital = cohmem::is_unital(a) ? 1 : 0;
    out->certified_non_mp = verdict.verdict == cohmem::Verdict::CertifiedNonMP ? 1 : 0;
    std::string reasons;
    for (const auto& r : verdict.reasons) reasons += (reasons.empty() ? "" : "; ") + r;
    std::strncpy(out->reasons, reasons.c_str(), sizeof out->reasons - 1);
    return COHMEM_OK;
  });
}

cohmem_status cohmem_dataset_uniform(double c, cohmem_dataset** out) {
  if (out == nullptr) return fail(COHMEM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new cohmem_dataset{cohmem::CoherenceDataset::uniform(c)};
    return COHMEM_OK;
  });
}

cohmem_status cohmem_dataset_from_json(const char* text, cohmem_dataset** out) {
  if (text == nullptr || out == nullptr) return fail(COHMEM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new cohmem_dataset{cohmem::io::parse_dataset(text)};
    return COHMEM_OK;
  });
}

cohmem_status cohmem_dataset_from_file(const char* path, cohmem_dataset** out) {
  if (path == nullptr || out == nullptr) return fail(COHMEM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new cohmem_dataset{cohmem::io::load_dataset(path)};
    return COHMEM_OK;
  });
}

void cohmem_dataset_free(cohmem_dataset* d) { delete d; }

void cohmem_certify_options_default(cohmem_certify_options* opts) {
  if (opts == nullptr) return;
  const cohmem::CertifyOptions d;
  opts->starts = d.starts;
  opts->seed = d.seed;
  opts->threads = d.threads;
  opts->feasibility_tol = d.feasibility_tol;
}

cohmem_status cohmem_certify(const cohmem_dataset* d, const cohmem_certify_options* opts,
                             cohmem_certify_report* out) {
  if (d == nullptr || out == nullptr) return fail(COHMEM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const auto r = cohmem::certify_qminus(d->data, certify_options(opts));
    if (!r.feasible) return fail(COHMEM_ERR_INFEASIBLE, "no completely positive channel is compatible with the data");
    *out = cohmem_certify_report{};
    out->lower_bound = r.lower_bound;
    out->converged = r.converged ? 1 : 0;
    out->feasible_starts = r.feasible_starts;
    out->certified_non_mp = r.lower_bound > cohmem::mp_threshold::kMinus ? 1 : 0;
    put_mat3(r.certificate.lambda, out->lambda);
    for (int i = 0; i < 3; ++i) {
      out->kappa[i] = r.certificate.kappa(i);
      for (int k = 0; k < 3; ++k) {
        out->inputs[3 * i + k] = r.inputs[i](k);
        out->outputs[3 * i + k] = r.outputs[i](k);
      }
    }
    return COHMEM_OK;
  });
}

cohmem_status cohmem_sweep_csv(double a, double b, int n, const cohmem_certify_options* opts, char** csv) {
  if (csv == nullptr) return fail(COHMEM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const auto curve = cohmem::sweep_certify(cohmem::linear_grid(a, b, n), certify_options(opts));
    *csv = dup_string(cohmem::curve_csv(curve));
    return COHMEM_OK;
  });
}

cohmem_status cohmem_unitary_from_spec(const char* spec, uint64_t seed, cohmem_unitary** out) {
  if (spec == nullptr || out == nullptr) return fail(COHMEM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new cohmem_unitary{unitary_from_spec(spec, seed)};
    return COHMEM_OK;
  });
}

cohmem_status cohmem_unitary_from_json(const char* text, cohmem_unitary** out) {
  if (text == nullptr || out == nullptr) return fail(COHMEM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new cohmem_unitary{cohmem::io::parse_unitary(text)};
    return COHMEM_OK;
  });
}

cohmem_status cohmem_unitary_from_file(const char* path, cohmem_unitary** out) {
  if (path == nullptr || out == nullptr) return fail(COHMEM_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new cohmem_unitary{cohmem::io::load_unitary(path)};
    return COHMEM_OK;
  });
}

void cohmem_unitary_free(cohmem_unitary* u) { delete u; }

cohmem_status cohmem_unitary_dim(const cohmem_unitary* u, int* dim) {
  if (u == nullptr || dim == nullptr) return fail(COHMEM_ERR_ARGUMENT, "null argument");
  *dim = u->data.dim();
  return COHMEM_OK;
}

cohmem_status cohmem_sinkhorn(const cohmem_unitary* u, double tol, cohmem_sinkhorn_report* out) {
  if (u == nullptr || out == nullptr) return fail(COHMEM_ERR_ARGUMENT, "null argument");
  if (!(tol > 0.0)) return fail(COHMEM_ERR_ARGUMENT, "tolerance must be positive");
  return guarded([&] {
    const int dim = u->data.dim();
    if (dim > 4) return fail(COHMEM_ERR_UNSUPPORTED, "Sinkhorn form is supported up to D = 4");
    cohmem::SinkhornOptions so;
    so.tol = tol;
    const auto dec = cohmem::sinkhorn_decompose(u->data, so);
    const auto cm = cohmem::common_max_coherent(u->data, so);
    *out = cohmem_sinkhorn_report{};
    out->dim = dim;
    for (int i = 0; i < dim; ++i) {
      out->z1_re[i] = dec.z1(i, i).real();
      out->z1_im[i] = dec.z1(i, i).imag();
      out->z2_re[i] = dec.z2(i, i).real();
      out->z2_im[i] = dec.z2(i, i).imag();
      out->alpha[i] = cm.alpha.alpha()[i];
      out->beta[i] = cm.beta.alpha()[i];
      for (int j = 0; j < dim; ++j) {
        out->x_re[dim * i + j] = dec.x(i, j).real();
        out->x_im[dim * i + j] = dec.x(i, j).imag();
      }
    }
    out->residual = dec.residual;
    out->witness_residual = cm.residual;
    const cohmem::CMatrix psi = u->data.unitary() * cohmem::max_coherent_state(
                                    cohmem::GeneralBasis::identity(dim), cm.alpha).matrix() *
                                u->data.unitary().adjoint();
    out->witness_coherence =
        cohmem::robustness_general(cohmem::DensityMatrix(psi, 1e-8), cohmem::GeneralBasis::identity(dim));
    return COHMEM_OK;
  });
}

void cohmem_seesaw_options_default(cohmem_seesaw_options* opts) {
  if (opts == nullptr) return;
  const cohmem::SeesawOptions d;
  opts->starts = d.starts;
  opts->tol = d.tol;
  opts->seed = d.seed;
}

cohmem_status cohmem_bound_highdim(const cohmem_channel* ch, cohmem_guess guess, const cohmem_unitary* v,
                                   const cohmem_seesaw_options* opts, cohmem_highdim_report* out) {
  if (ch == nullptr || out == nullptr) return fail(COHMEM_ERR_ARGUMENT, "null argument");
  if (guess == COHMEM_GUESS_GIVEN && v == nullptr) return fail(COHMEM_ERR_ARGUMENT, "no unitary guess supplied");
  return guarded([&] {
    const auto choi = cohmem::io::as_choi(ch->data);
    cohmem::SeesawOptions so;
    if (opts != nullptr) {
      so.starts = opts->starts;
      so.tol = opts->tol;
      so.seed = opts->seed;
    }
    const cohmem::GeneralBasis vb = guess == COHMEM_GUESS_GIVEN      ? v->data
                                    : guess == COHMEM_GUESS_BEST_FIT ? cohmem::best_unitary_fit(choi)
                                                                     : cohmem::GeneralBasis::identity(choi.dim());
    const auto est = cohmem::qzero_lowerbound_highdim(choi, vb, so);
    *out = cohmem_highdim_report{};
    out->lambda = est.lambda;
    out->q_zero_lb = est.q_zero_lb;
    out->heuristic = est.heuristic ? 1 : 0;
    out->runs = static_cast<int>(est.runs.size());
    for (const auto& r : est.runs) out->converged_runs += r.converged ? 1 : 0;
    return COHMEM_OK;
  });
}

}  // extern "C"
