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

// Command-line front end over the C API.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cohmem/cohmem.h"

namespace {

enum Exit {
  kOk = 0,
  kInternal = 1,
  kParse = 2,
  kValidation = 3,
  kNumeric = 4,
  kUnsupported = 5,
  kInfeasible = 6,
  kIo = 7,
  kUsage = 64,
};

int exit_code(cohmem_status s) {
  switch (s) {
    case COHMEM_OK: return kOk;
    case COHMEM_ERR_PARSE: return kParse;
    case COHMEM_ERR_VALIDATION: return kValidation;
    case COHMEM_ERR_NUMERIC: return kNumeric;
    case COHMEM_ERR_UNSUPPORTED: return kUnsupported;
    case COHMEM_ERR_INFEASIBLE: return kInfeasible;
    case COHMEM_ERR_IO: return kIo;
    case COHMEM_ERR_ARGUMENT: return kUsage;
    case COHMEM_ERR_INTERNAL: return kInternal;
  }
  return kInternal;
}

int report_failure(cohmem_status s) {
  std::cerr << "error: " << cohmem_status_name(s) << ": " << cohmem_last_error() << "\n";
  return exit_code(s);
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string vec(const double* v, int n) {
  std::string out = "[";
  for (int i = 0; i < n; ++i) out += (i ? "," : "") + num(v[i]);
  return out + "]";
}

void kv(const std::string& key, const std::string& value) { std::cout << key << "=" << value << "\n"; }
void kv(const std::string& key, double value) { kv(key, num(value)); }

struct ChannelArgs {
  std::string builtin;
  std::string file;
};

cohmem_status load_channel(const ChannelArgs& a, cohmem_channel** ch) {
  if (!a.builtin.empty()) return cohmem_channel_from_builtin(a.builtin.c_str(), ch);
  return cohmem_channel_from_file(a.file.c_str(), ch);
}

void add_channel_options(CLI::App* cmd, ChannelArgs& a) {
  auto* b = cmd->add_option("--channel", a.builtin, "builtin channel, e.g. depolarizing:0.5");
  auto* f = cmd->add_option("--file", a.file, "channel JSON file");
  b->excludes(f);
  f->excludes(b);
  cmd->callback([cmd, b, f] {
    if (b->count() + f->count() == 0) throw CLI::RequiredError(cmd->get_name() + ": --channel or --file");
  });
}

int run_quality(const ChannelArgs& ca, bool unital, double tol) {
  cohmem_channel* ch = nullptr;
  if (auto s = load_channel(ca, &ch); s != COHMEM_OK) return report_failure(s);
  cohmem_quality_options o;
  cohmem_quality_options_default(&o);
  o.assume_unital = unital ? 1 : 0;
  if (tol >= 0.0) o.margin = tol;
  cohmem_quality_report r;
  const cohmem_status s = cohmem_quality(ch, &o, &r);
  if (s == COHMEM_ERR_UNSUPPORTED) {
    cohmem_channel_free(ch);
    std::cerr << "hint: run `cohmem-cli bound-highdim` for channels with D > 2\n";
    return report_failure(s);
  }
  cohmem_channel_free(ch);
  if (s != COHMEM_OK) return report_failure(s);
  kv("q_minus", r.q_minus);
  kv("q_zero", r.q_zero);
  kv("q_plus", r.q_plus);
  kv("singular_values", vec(r.singular_values, 3));
  kv("lower_bound_minus", r.lower_minus);
  kv("lower_bound_plus", r.lower_plus);
  kv("upper_bound_minus", r.upper_minus);
  kv("upper_bound_plus", r.upper_plus);
  kv("unital", r.unital ? "true" : "false");
  kv("assume_unital", unital ? "true" : "false");
  kv("measure_and_prepare", r.measure_and_prepare ? "true" : "false");
  kv("thresholds", unital ? "Q- 1/3, Q0 1/2, Q+ 1/2 (unital); Q- 1/sqrt(5), Q0 Q+ 1/sqrt(2)"
                          : "Q- 1/sqrt(5), Q0 Q+ 1/sqrt(2)");
  if (r.certified_non_mp) kv("reasons", r.reasons);
  kv("verdict", r.certified_non_mp ? "certified-non-mp" : "inconclusive");
  return kOk;
}

int run_certify(const std::string& dataset, double c, const cohmem_certify_options& o) {
  cohmem_dataset* d = nullptr;
  cohmem_status s = dataset.empty() ? cohmem_dataset_uniform(c, &d) : cohmem_dataset_from_file(dataset.c_str(), &d);
  if (s != COHMEM_OK) return report_failure(s);
  cohmem_certify_report r;
  s = cohmem_certify(d, &o, &r);
  cohmem_dataset_free(d);
  if (s != COHMEM_OK) return report_failure(s);
  kv("lower_bound", r.lower_bound);
  kv("converged", r.converged ? "true" : "false");
  kv("feasible_starts", std::to_string(r.feasible_starts));
  kv("certificate_lambda", vec(r.lambda, 9));
  kv("certificate_kappa", vec(r.kappa, 3));
  kv("certificate_inputs", vec(r.inputs, 9));
  kv("certificate_outputs", vec(r.outputs, 9));
  kv("threshold", "1/sqrt(5)");
  kv("verdict", r.certified_non_mp ? "certified-non-mp" : "inconclusive");
  return kOk;
}

int run_sweep(const std::string& grid, const std::string& out, const cohmem_certify_options& o) {
  double a = 0.0, b = 0.0;
  int n = 0;
  char tail = 0;
  if (std::sscanf(grid.c_str(), "%lf:%lf:%d%c", &a, &b, &n, &tail) != 3) {
    std::cerr << "error: --grid expects a:b:n\n";
    return kParse;
  }
  char* csv = nullptr;
  const cohmem_status s = cohmem_sweep_csv(a, b, n, &o, &csv);
  if (s != COHMEM_OK) return report_failure(s);
  const std::string text = csv;
  cohmem_string_free(csv);
  if (out.empty()) {
    std::cout << text;
    return kOk;
  }
  std::ofstream f(out, std::ios::binary);
  if (!(f << text)) {
    std::cerr << "error: cannot write '" << out << "'\n";
    return kIo;
  }
  kv("rows", std::to_string(n));
  kv("out", out);
  return kOk;
}

int run_sinkhorn(const std::string& spec, const std::string& file, std::uint64_t seed, double tol) {
  cohmem_unitary* u = nullptr;
  cohmem_status s = file.empty() ? cohmem_unitary_from_spec(spec.c_str(), seed, &u)
                                 : cohmem_unitary_from_file(file.c_str(), &u);
  if (s != COHMEM_OK) return report_failure(s);
  cohmem_sinkhorn_report r;
  s = cohmem_sinkhorn(u, tol, &r);
  cohmem_unitary_free(u);
  if (s != COHMEM_OK) return report_failure(s);
  const int d = r.dim;
  auto diag = [&](const double* re, const double* im) {
    std::string out = "[";
    for (int i = 0; i < d; ++i) out += (i ? "," : "") + num(re[i]) + (im[i] < 0 ? "" : "+") + num(im[i]) + "i";
    return out + "]";
  };
  std::string x = "[";
  for (int i = 0; i < d; ++i) {
    x += i ? ",[" : "[";
    for (int j = 0; j < d; ++j) {
      const double re = r.x_re[d * i + j], im = r.x_im[d * i + j];
      x += (j ? "," : "") + num(re) + (im < 0 ? "" : "+") + num(im) + "i";
    }
    x += "]";
  }
  x += "]";
  kv("dim", std::to_string(d));
  kv("z1", diag(r.z1_re, r.z1_im));
  kv("x", x);
  kv("z2", diag(r.z2_re, r.z2_im));
  kv("residual", r.residual);
  kv("alpha", vec(r.alpha, d));
  kv("beta", vec(r.beta, d));
  kv("witness_residual", r.witness_residual);
  kv("witness_coherence", r.witness_coherence);
  kv("verdict", r.residual <= tol ? "converged" : "not-converged");
  return kOk;
}

int run_highdim(const ChannelArgs& ca, const std::string& guess, const std::string& unitary_file,
                const cohmem_seesaw_options& o) {
  cohmem_channel* ch = nullptr;
  if (auto s = load_channel(ca, &ch); s != COHMEM_OK) return report_failure(s);
  cohmem_unitary* v = nullptr;
  cohmem_guess g = guess == "best-fit" ? COHMEM_GUESS_BEST_FIT : COHMEM_GUESS_IDENTITY;
  if (!unitary_file.empty()) {
    if (auto s = cohmem_unitary_from_file(unitary_file.c_str(), &v); s != COHMEM_OK) {
      cohmem_channel_free(ch);
      return report_failure(s);
    }
    g = COHMEM_GUESS_GIVEN;
  }
  cohmem_highdim_report r;
  const cohmem_status s = cohmem_bound_highdim(ch, g, v, &o, &r);
  cohmem_channel_free(ch);
  cohmem_unitary_free(v);
  if (s != COHMEM_OK) return report_failure(s);
  kv("guess", g == COHMEM_GUESS_GIVEN ? "given" : guess);
  kv("lambda", r.lambda);
  kv("q_zero_lower_bound", r.q_zero_lb);
  kv("runs", std::to_string(r.runs));
  kv("converged_runs", std::to_string(r.converged_runs));
  kv("verdict", r.heuristic ? "heuristic" : "stable");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherence-based quality measures for quantum memories"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cohmem_version());

  ChannelArgs quality_ch;
  bool unital = false;
  double quality_tol = -1.0;
  auto* quality = app.add_subcommand("quality", "Q-, Q0, Q+ of a qubit channel and the M&P verdict");
  add_channel_options(quality, quality_ch);
  quality->add_flag("--unital", unital, "the channel is known to be unital");
  quality->add_option("--tol", quality_tol, "margin by which a threshold must be exceeded (default 1e-4)");

  cohmem_certify_options copts;
  cohmem_certify_options_default(&copts);
  std::string dataset;
  double c_value = -1.0;
  auto* certify = app.add_subcommand("certify", "lower bound on Q- from coherence data");
  auto* ds = certify->add_option("--dataset", dataset, "dataset JSON file");
  auto* cv = certify->add_option("--c", c_value, "equal bound for all six coherences");
  ds->excludes(cv);
  cv->excludes(ds);
  certify->callback([&] {
    if (ds->count() + cv->count() == 0) throw CLI::RequiredError("certify: --dataset or --c");
  });

  std::string grid, out;
  auto* sweep = app.add_subcommand("sweep", "certified bound as a function of c, as CSV");
  sweep->add_option("--grid", grid, "a:b:n")->required();
  sweep->add_option("--out", out, "CSV path (default stdout)");

  for (auto* cmd : {certify, sweep}) {
    cmd->add_option("--seed", copts.seed, "random seed");
    cmd->add_option("--starts", copts.starts, "optimizer starts per point");
    cmd->add_option("--threads", copts.threads, "worker threads (0: all cores)");
    cmd->add_option("--tol", copts.feasibility_tol, "feasibility tolerance");
  }

  std::string unitary_spec = "identity:2", unitary_file;
  std::uint64_t sinkhorn_seed = 1;
  double sinkhorn_tol = 1e-12;
  auto* sinkhorn = app.add_subcommand("sinkhorn", "Sinkhorn form and common maximally coherent state");
  auto* us = sinkhorn->add_option("--unitary", unitary_spec, "identity:D, hadamard, fourier:D or random:D");
  auto* uf = sinkhorn->add_option("--file", unitary_file, "unitary JSON file");
  us->excludes(uf);
  uf->excludes(us);
  sinkhorn->add_option("--seed", sinkhorn_seed, "seed for random:D");
  sinkhorn->add_option("--tol", sinkhorn_tol, "row and column sum tolerance");

  ChannelArgs hd_ch;
  std::string guess = "identity", guess_file;
  cohmem_seesaw_options sopts;
  cohmem_seesaw_options_default(&sopts);
  auto* highdim = app.add_subcommand("bound-highdim", "see-saw lower bound on Q0 for any dimension");
  add_channel_options(highdim, hd_ch);
  highdim->add_option("--guess", guess, "unitary guess: identity or best-fit")
      ->check(CLI::IsMember({"identity", "best-fit"}));
  highdim->add_option("--unitary", guess_file, "unitary guess as a JSON file");
  highdim->add_option("--seed", sopts.seed, "random seed");
  highdim->add_option("--starts", sopts.starts, "see-saw restarts");
  highdim->add_option("--tol", sopts.tol, "see-saw stopping tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (*quality) return run_quality(quality_ch, unital, quality_tol);
  if (*certify) return run_certify(dataset, c_value, copts);
  if (*sweep) return run_sweep(grid, out, copts);
  if (*sinkhorn) return run_sinkhorn(unitary_spec, unitary_file, sinkhorn_seed, sinkhorn_tol);
  if (*highdim) return run_highdim(hd_ch, guess, guess_file, sopts);
  return kUsage;
}
