// Copyright 2026 The qrd Authors
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

#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "qrd/qrd.hpp"

namespace qrd::cli {
namespace {

using io::format_double;
using io::Json;

// Thrown for command-line values that parse but make no sense together.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

unsigned thread_count(unsigned flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("QRD_THREADS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("QRD_THREADS must be a positive integer, got '") + env + "'");
  }
  return 0;
}

struct Manifest {
  std::string subcommand;
  std::vector<std::string> args;
  std::vector<std::string> inputs, outputs;
  std::optional<std::uint64_t> seed;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  std::string path_for(const std::string& artifact) const { return artifact + ".manifest.json"; }

  // Written next to each artifact file.
  void write_for(const std::string& artifact) const {
    Json j;
    j["subcommand"] = subcommand;
    j["args"] = args;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["seed"] = seed ? Json(*seed) : Json(nullptr);
    j["version"] = kVersion;
    j["wall_clock_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    io::save_json(path_for(artifact), j);
  }
};

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw io::FileError(path, "<file>", "cannot write");
  return f;
}

std::string basename(const std::string& p) {
  auto k = p.find_last_of('/');
  return k == std::string::npos ? p : p.substr(k + 1);
}

// ---------------------------------------------------------------- entropy

struct EntropyArgs {
  std::string op, rho, sigma;
  double eps = 0.0;
  std::vector<std::string> cond, a;
};

Json entropy_json(const std::string& op, const EntropyResult& r) {
  Json j;
  j["op"] = op;
  j["value_bits"] = io::number(r.value);
  j["lo_bits"] = io::number(r.lo());
  j["hi_bits"] = io::number(r.hi());
  j["certainty"] = to_string(r.certainty);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

EntropyResult exact(double v) {
  EntropyResult r;
  r.value = v;
  return r;
}

int cmd_entropy(const EntropyArgs& a, std::ostream& out) {
  DensityOperator rho = io::load_density(a.rho);
  auto sigma = [&]() {
    if (a.sigma.empty()) throw UsageError("--op " + a.op + " needs --sigma");
    return io::load_density(a.sigma);
  };
  auto first_label = [&]() { return std::vector<std::string>{rho.dims().labels().front()}; };
  EntropyResult r;
  if (a.op == "vn") {
    r = exact(von_neumann(rho));
  } else if (a.op == "relative_entropy") {
    r = exact(relative_entropy(rho, sigma()));
  } else if (a.op == "dmax") {
    r = exact(d_max(rho, sigma()));
  } else if (a.op == "smooth_dmax") {
    r = smooth_d_max(rho, sigma(), a.eps);
  } else if (a.op == "dh") {
    r = exact(d_h(rho, sigma(), a.eps));
  } else if (a.op == "beta") {
    r = exact(beta_epsilon(rho, sigma(), a.eps));
  } else if (a.op == "hmin") {
    r = a.eps > 0 ? h_min_smooth(rho, a.cond, a.eps) : h_min(rho, a.cond);
  } else if (a.op == "h0") {
    r = h0_smooth(rho, a.eps);
  } else if (a.op == "mi") {
    r = exact(a.a.empty() ? mutual_information(rho) : mutual_information(rho, a.a, rho.dims().complement(a.a)));
  } else if (a.op == "imax") {
    auto labels = a.a.empty() ? first_label() : a.a;
    r = a.eps > 0 ? i_max_smooth(rho, labels, a.eps) : i_max(rho, labels);
  } else if (a.op == "imax_fixed") {
    r = i_max_smooth_fixed_marginal(rho, a.a.empty() ? first_label() : a.a, a.eps);
  } else {
    throw UsageError("unknown --op '" + a.op + "'");
  }
  out << io::dump(entropy_json(a.op, r)) << "\n";
  return kOk;
}

// ----------------------------------------------------------------- bounds

struct BoundsArgs {
  std::string bound, rho, delta, channel, sigma, variant = "printed", format = "csv", dist;
  std::vector<std::string> family;
  std::vector<double> px, q;
  double d = 0.0, eps = 0.01, eps_prime = 0.05, delta_param = 1e-6, dim_b = 2;
  std::size_t n = 1;
};

struct Instance {
  PureState phi;
  DistortionObservable delta;
  QuantumChannel channel;
  std::string source;
};

Instance load_instance(const BoundsArgs& a) {
  DensityOperator rho = a.rho.empty() ? DensityOperator::maximally_mixed(SystemDims::single("A", 2))
                                      : io::load_density(a.rho);
  if (rho.dims().size() != 1) throw UsageError("--rho must describe a single source system");
  std::string src = rho.dims().labels().front();
  PureState phi = purify(rho, "R");
  DistortionObservable delta =
      a.delta.empty() ? entanglement_fidelity_observable(phi, src, "B") : io::load_observable(a.delta);
  QuantumChannel ch = a.channel.empty() ? QuantumChannel::identity_channel(rho.dims().total(), src, "B")
                                        : io::load_channel(a.channel);
  return {phi, delta, ch, src};
}

const std::vector<std::string> kBoundColumns{
    "provenance", "direction", "validity", "D", "eps", "eps_prime", "n", "value_qubits", "lo_qubits", "hi_qubits",
    "note"};

std::vector<std::string> bound_row(const BoundResult& b, const BoundsArgs& a) {
  auto param_or = [&](const char* key, double fallback) {
    double v = b.param(key);
    return format_double(std::isnan(v) ? fallback : v);
  };
  return {b.provenance,
          to_string(b.direction),
          to_string(b.validity),
          param_or("D", a.d),
          param_or("eps", a.eps),
          param_or("eps_prime", a.eps_prime),
          std::to_string(a.n),
          format_double(b.value),
          format_double(b.lo),
          format_double(b.hi),
          b.note};
}

Json bound_json(const BoundResult& b) {
  Json j;
  j["provenance"] = b.provenance;
  j["direction"] = to_string(b.direction);
  j["validity"] = to_string(b.validity);
  j["value_qubits"] = io::number(b.value);
  j["lo_qubits"] = io::number(b.lo);
  j["hi_qubits"] = io::number(b.hi);
  Json p = Json::object();
  for (const auto& [k, v] : b.params) p[k] = io::number(v);
  j["params"] = p;
  if (!b.note.empty()) j["note"] = b.note;
  return j;
}

BoundResult scalar_bound(const std::string& name, double v, const BoundsArgs& a) {
  BoundResult b;
  b.provenance = name;
  b.value = b.lo = b.hi = v;
  b.params = {{"D", a.d}, {"eps", a.eps}, {"eps_prime", a.eps_prime}};
  return b;
}

CorrectionVariant parse_variant(const std::string& v) {
  if (v == "printed") return CorrectionVariant::printed;
  if (v == "conservative") return CorrectionVariant::conservative;
  throw UsageError("--variant must be printed or conservative");
}

int cmd_bounds(const BoundsArgs& a, std::ostream& out) {
  std::vector<BoundResult> results;
  const std::string& k = a.bound;
  if (k == "chi1") {
    results.push_back(scalar_bound("chi1 additive term", chi1(a.eps, a.dim_b), a));
  } else if (k == "chi2") {
    results.push_back(scalar_bound("chi2 additive term", chi2(a.eps, a.eps_prime), a));
  } else if (k == "f") {
    double f = f_correction(a.eps, a.eps_prime, a.n, a.dim_b, parse_variant(a.variant));
    results.push_back(scalar_bound("i.i.d. converse correction", f, a));
  } else if (k == "kv") {
    if (a.px.empty()) throw UsageError("--bound kv needs --px");
    std::vector<double> q = a.q.empty() ? a.px : a.q;
    RealMatrix d;
    if (a.dist.empty()) {
      auto s = static_cast<Eigen::Index>(a.px.size());
      d = RealMatrix::Ones(s, s) - RealMatrix::Identity(s, s);
    } else {
      Json j = io::read_json(a.dist);
      d = io::detail::real_rows(io::detail::need(j, "d", a.dist), a.dist, "d");
    }
    results.push_back(classical_kv_converse(a.px, d, a.d, a.eps, q));
  } else {
    Instance inst = load_instance(a);
    if (k == "converse_alt") {
      DensityOperator sigma = a.sigma.empty() ? inst.phi.density() : io::load_density(a.sigma);
      results.push_back(converse_alt(inst.phi, inst.delta, a.d, a.eps, sigma));
    } else if (k == "converse_simple") {
      results.push_back(converse_simple_inner(inst.phi, inst.delta, a.d, a.eps, a.eps_prime, inst.channel));
    } else if (k == "embezzling") {
      results.push_back(achievability_embezzling(inst.phi, inst.delta, a.d, inst.channel, a.eps));
    } else if (k == "mes") {
      results.push_back(achievability_mes(inst.phi, inst.delta, a.d, inst.channel, a.delta_param));
    } else if (k == "sandwich") {
      std::vector<QuantumChannel> family;
      for (const auto& f : a.family) family.push_back(io::load_channel(f));
      if (family.empty()) family.push_back(inst.channel);
      Sandwich s = theorem10_sandwich(inst.phi, inst.delta, a.d, a.eps, a.eps_prime, family);
      results.push_back(s.upper);
      results.push_back(s.lower);
    } else if (k == "rate") {
      RateDistortionPoint p = ea_qrd_function(inst.phi, inst.delta, a.d);
      BoundResult b = scalar_bound("entanglement-assisted rate-distortion function", p.rate, a);
      b.lo = p.lower;
      b.hi = p.upper;
      b.note = std::string("qubits per symbol; status ") + to_string(p.status);
      results.push_back(b);
    } else if (k == "iid_converse") {
      results.push_back(iid_converse_rate(inst.phi, inst.delta, a.n, a.d, a.eps, a.eps_prime, parse_variant(a.variant)));
    } else {
      throw UsageError("unknown --bound '" + k + "'");
    }
  }
  if (a.format == "json") {
    Json arr = Json::array();
    for (const auto& b : results) arr.push_back(bound_json(b));
    out << io::dump(arr) << "\n";
  } else {
    io::CsvWriter csv(out);
    csv.header(kBoundColumns);
    for (const auto& b : results) csv.row(bound_row(b, a));
  }
  return kOk;
}

// -------------------------------------------------------------- isotropic

struct IsotropicArgs {
  std::vector<std::size_t> n;
  std::vector<double> d{0.25}, eps{0.01};
  std::string out;
};

void write_isotropic(const IsotropicArgs& a, std::ostream& os) {
  io::CsvWriter csv(os);
  csv.header({"provenance", "n", "D", "eps", "converse_qubits_per_symbol", "achievability_qubits_per_symbol",
              "achievability_classical_bits_per_symbol", "approx_qubits_per_symbol", "log2_S_bits",
              "log2_S_estimate_bits"});
  for (std::size_t n : a.n)
    for (double d : a.d)
      for (double e : a.eps) {
        isotropic::CurvePoint p = isotropic::curve_point(n, d, e);
        csv.row({"isotropic finite blocklength", std::to_string(n), format_double(d), format_double(e),
                 format_double(p.converse), format_double(p.achievability_quantum),
                 format_double(p.achievability_classical), format_double(p.approx), format_double(p.log_s_exact),
                 format_double(p.log_s_estimate)});
      }
}

int cmd_isotropic(const IsotropicArgs& a, const Manifest& m, std::ostream& out) {
  if (a.out.empty()) {
    write_isotropic(a, out);
    return kOk;
  }
  std::ofstream f = open_out(a.out);
  f << "# qrd " << kVersion << " manifest=" << basename(m.path_for(a.out)) << "\n";
  write_isotropic(a, f);
  m.write_for(a.out);
  out << a.out << "\n";
  return kOk;
}

// --------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string config, out, csv, histogram;
  std::size_t n = 8, trials = 10000;
  std::uint64_t m = 1000, seed = 1;
  double d = 0.25;
  std::string codebook = "fresh_per_trial";
};

CodebookMode parse_codebook(const std::string& s) {
  if (s == "fresh_per_trial") return CodebookMode::fresh_per_trial;
  if (s == "fixed") return CodebookMode::fixed;
  throw UsageError("codebook must be fresh_per_trial or fixed");
}

// Config file values first; flags given on the command line win.
SimulationConfig simulation_config(const SimulateArgs& a, const CLI::App& sub) {
  SimulationConfig c;
  c.n = a.n;
  c.m = a.m;
  c.d = a.d;
  c.trials = a.trials;
  c.seed = a.seed;
  c.codebook_mode = parse_codebook(a.codebook);
  if (a.config.empty()) return c;
  Json j = io::read_json(a.config);
  auto take = [&](const char* key, const char* flag, auto& field) {
    if (!j.contains(key) || sub.count(flag) > 0) return;
    try {
      field = j.at(key).get<std::decay_t<decltype(field)>>();
    } catch (const Json::exception& e) {
      throw io::FileError(a.config, key, e.what());
    }
  };
  take("n", "--n", c.n);
  take("M", "--M", c.m);
  take("D", "--D", c.d);
  take("trials", "--trials", c.trials);
  take("seed", "--seed", c.seed);
  if (j.contains("threads")) c.threads = j.at("threads").get<unsigned>();
  if (j.contains("codebook") && sub.count("--codebook") == 0) {
    try {
      c.codebook_mode = parse_codebook(j.at("codebook").get<std::string>());
    } catch (const UsageError& e) {
      throw io::FileError(a.config, "codebook", e.what());
    }
  }
  return c;
}

Json report_json(const SimulationReport& r) {
  Json j;
  j["n"] = r.config.n;
  j["M"] = r.config.m;
  j["D"] = r.config.d;
  j["trials"] = r.config.trials;
  j["seed"] = r.config.seed;
  j["codebook"] = to_string(r.config.codebook_mode);
  j["excess_count"] = r.excess_count;
  j["empirical_excess"] = r.empirical_excess;
  j["ci_low"] = r.ci_low;
  j["ci_high"] = r.ci_high;
  j["confidence"] = 0.99;
  j["target"] = r.target;
  j["mean_distortion_hat"] = r.mean_distortion_hat;
  j["threshold_index"] = r.threshold_index;
  return j;
}

int cmd_simulate(const SimulateArgs& a, const CLI::App& sub, unsigned threads, Manifest& m, std::ostream& out) {
  SimulationConfig c = simulation_config(a, sub);
  if (threads) c.threads = threads;
  m.seed = c.seed;
  if (!a.config.empty()) m.inputs.push_back(a.config);
  SimulationReport r = simulate_teleportation_rd(c);
  Json j = report_json(r);
  out << io::dump(j) << "\n";
  if (!a.out.empty()) {
    io::save_json(a.out, j);
    m.write_for(a.out);
  }
  if (!a.csv.empty()) {
    std::ofstream f = open_out(a.csv);
    f << "# qrd " << kVersion << " manifest=" << basename(m.path_for(a.csv)) << "\n";
    io::CsvWriter w(f);
    w.header({"provenance", "n", "M", "D", "trials", "seed", "codebook", "empirical_excess_probability",
              "ci_low_probability", "ci_high_probability", "target_probability", "mean_distortion"});
    w.row({"teleportation random coding", std::to_string(c.n), std::to_string(c.m), format_double(c.d),
           std::to_string(c.trials), std::to_string(c.seed), to_string(c.codebook_mode),
           format_double(r.empirical_excess), format_double(r.ci_low), format_double(r.ci_high),
           format_double(r.target), format_double(r.mean_distortion_hat)});
    m.write_for(a.csv);
  }
  if (!a.histogram.empty()) {
    std::ofstream f = open_out(a.histogram);
    f << "# qrd " << kVersion << " manifest=" << basename(m.path_for(a.histogram)) << "\n";
    io::CsvWriter w(f);
    w.header({"provenance", "hamming_distance", "distortion", "trials"});
    for (std::size_t k = 0; k < r.histogram.size(); ++k)
      w.row({"teleportation random coding", std::to_string(k), format_double(double(k) / double(c.n)),
             std::to_string(r.histogram[k])});
    m.write_for(a.histogram);
  }
  return kOk;
}

// --------------------------------------------------------------- validate

int cmd_validate(const std::string& suite, std::uint64_t seed, std::ostream& out) {
  bool any = false, failed = false;
  for (const auto& s : validation::all_suites()) {
    if (suite != "all" && suite != s.name && !(suite == "properties" && s.name != "lemma1" && s.name != "beta_oracle" &&
                                                s.name != "lemma7" && s.name != "step5"))
      continue;
    any = true;
    validation::SuiteResult r = s.run(seed);
    out << r.name << " " << r.passed << "/" << r.total << " " << (r.ok() ? "pass" : "FAIL")
        << " worst_slack=" << format_double(r.worst_slack) << "\n";
    for (const auto& f : r.failures) out << "  " << f << "\n";
    failed = failed || !r.ok();
  }
  if (!any) throw UsageError("unknown --suite '" + suite + "'");
  return failed ? kValidationFailed : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement-assisted quantum rate-distortion toolkit", "qrd"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  unsigned threads_flag = 0;
  app.add_option("--threads", threads_flag, "Worker thread cap (env QRD_THREADS)");

  EntropyArgs ea;
  CLI::App* entropy = app.add_subcommand("entropy", "Entropic quantities of states in JSON files");
  entropy
      ->add_option("--op", ea.op,
                   "vn, relative_entropy, dmax, smooth_dmax, dh, beta, hmin, h0, mi, imax, imax_fixed")
      ->required();
  entropy->add_option("--rho", ea.rho, "State file")->required();
  entropy->add_option("--sigma", ea.sigma, "Second operand file");
  entropy->add_option("--eps", ea.eps, "Smoothing radius or type-I error");
  entropy->add_option("--cond", ea.cond, "Conditioning labels for hmin");
  entropy->add_option("--a", ea.a, "Labels of the fixed-marginal system for imax / mi");

  BoundsArgs ba;
  CLI::App* bounds = app.add_subcommand("bounds", "Evaluate a converse or achievability bound");
  bounds
      ->add_option("--bound", ba.bound,
                   "converse_alt, converse_simple, kv, embezzling, mes, sandwich, rate, iid_converse, chi1, chi2, f")
      ->required();
  bounds->add_option("--D", ba.d, "Distortion level");
  bounds->add_option("--eps", ba.eps, "Excess-distortion probability");
  bounds->add_option("--eps-prime", ba.eps_prime, "Auxiliary error parameter");
  bounds->add_option("--n", ba.n, "Blocklength");
  bounds->add_option("--rho", ba.rho, "Source state file (default: maximally mixed qubit)");
  bounds->add_option("--delta", ba.delta, "Distortion observable file (default: entanglement fidelity)");
  bounds->add_option("--channel", ba.channel, "Channel file (default: identity)");
  bounds->add_option("--family", ba.family, "Channel files for the sandwich minimization");
  bounds->add_option("--sigma", ba.sigma, "State on reference and source for converse_alt");
  bounds->add_option("--delta-param", ba.delta_param, "Smoothing parameter of the maximally-entangled bound");
  bounds->add_option("--variant", ba.variant, "printed or conservative correction");
  bounds->add_option("--dim", ba.dim_b, "Output dimension for chi1, reference dimension for f");
  bounds->add_option("--px", ba.px, "Classical source distribution");
  bounds->add_option("--q", ba.q, "Classical auxiliary distribution (default px)");
  bounds->add_option("--dist", ba.dist, "JSON file with a distortion matrix under \"d\" (default Hamming)");
  bounds->add_option("--format", ba.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  IsotropicArgs ia;
  CLI::App* iso = app.add_subcommand("isotropic", "Finite-blocklength curves of the isotropic qubit source");
  iso->add_option("--n", ia.n, "Blocklengths")->required();
  iso->add_option("--D", ia.d, "Distortion levels");
  iso->add_option("--eps", ia.eps, "Excess-distortion probabilities");
  iso->add_option("--out", ia.out, "CSV output file (default stdout)");

  SimulateArgs sa;
  CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo run of the teleportation random-coding protocol");
  sim->add_option("--config", sa.config, "JSON file with n, M, D, trials, seed, codebook");
  sim->add_option("--n", sa.n, "Blocklength");
  sim->add_option("--M", sa.m, "Codebook size");
  sim->add_option("--D", sa.d, "Distortion level");
  sim->add_option("--trials", sa.trials, "Number of trials");
  sim->add_option("--seed", sa.seed, "Seed");
  sim->add_option("--codebook", sa.codebook, "fresh_per_trial or fixed");
  sim->add_option("--out", sa.out, "JSON report file");
  sim->add_option("--csv", sa.csv, "CSV report file");
  sim->add_option("--histogram", sa.histogram, "CSV of trials by Hamming distance");

  std::string suite = "all";
  std::uint64_t vseed = 7;
  CLI::App* val = app.add_subcommand("validate", "Run the invariant suites");
  val->add_option("--suite", suite, "Suite name, 'properties' or 'all'");
  val->add_option("--seed", vseed, "Seed");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? kOk : kUsage;
  }

  Manifest manifest;
  manifest.args = args;
  try {
    unsigned threads = thread_count(threads_flag);
    if (entropy->parsed()) {
      manifest.subcommand = "entropy";
      return cmd_entropy(ea, out);
    }
    if (bounds->parsed()) {
      manifest.subcommand = "bounds";
      return cmd_bounds(ba, out);
    }
    if (iso->parsed()) {
      manifest.subcommand = "isotropic";
      if (!ia.out.empty()) manifest.outputs.push_back(ia.out);
      return cmd_isotropic(ia, manifest, out);
    }
    if (sim->parsed()) {
      manifest.subcommand = "simulate";
      for (const auto* p : {&sa.out, &sa.csv, &sa.histogram})
        if (!p->empty()) manifest.outputs.push_back(*p);
      return cmd_simulate(sa, *sim, threads, manifest, out);
    }
    manifest.subcommand = "validate";
    return cmd_validate(suite, vseed, out);
  } catch (const io::FileError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "invalid parameters: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumeric;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kNumeric;
  }
}

}  // namespace qrd::cli
