// Copyright 2026 The totalcoh developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: state-file analysis, convertibility checks with
// channel synthesis, rate sweeps to CSV, the coherence-to-correlation
// protocol, and seeded invariant fuzz suites.
//
// Exit codes: 0 success / positive verdict, 1 negative verdict (not
// convertible, bound not saturated, fuzz failures), 2 usage or I/O errors,
// 3 state-invariant violations.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "totalcoh/totalcoh.hpp"

namespace {

using namespace totalcoh;

constexpr std::uint64_t kDefaultSeed = 424242;

int run_analyze(const std::string& path) {
  LoadedState loaded = load_state_file(path);
  const DensityMatrix& rho = loaded.state;
  Spectrum spec = eigen_spectrum(rho);
  double entropy = von_neumann_entropy(spec);
  std::cout << "dim: " << rho.dim() << "\n";
  if (loaded.dims) {
    std::cout << "dims:";
    for (int d : *loaded.dims) std::cout << ' ' << d;
    std::cout << "\n";
  }
  std::cout << "spectrum:";
  for (double p : spec.probs()) std::cout << ' ' << format_double(p);
  std::cout << "\n";
  std::cout << "entropy_bits: " << format_double(entropy) << "\n";
  std::cout << "total_coherence_bits: "
            << format_double(std::log2(static_cast<double>(rho.dim())) - entropy) << "\n";
  std::cout << "incoherent: " << (is_incoherent_state(rho, 1e-9) ? "true" : "false") << "\n";
  return 0;
}

int run_convert_check(const std::string& rho_path, const std::string& sigma_path,
                      const std::string& synth_out) {
  LoadedState lr = load_state_file(rho_path);
  LoadedState ls = load_state_file(sigma_path);
  if (lr.state.dim() != ls.state.dim()) {
    std::cerr << "error: states have different dimensions (" << lr.state.dim() << " vs "
              << ls.state.dim() << ")\n";
    return 2;
  }
  bool ok = can_convert(lr.state, ls.state);
  std::cout << (ok ? "CONVERTIBLE" : "NOT CONVERTIBLE") << "\n";
  std::cout << "C_R(rho): " << format_double(total_coherence(lr.state)) << "\n";
  std::cout << "C_R(sigma): " << format_double(total_coherence(ls.state)) << "\n";
  if (ok && !synth_out.empty()) {
    MixedUnitaryChannel ch = synthesize_channel(lr.state, ls.state);
    save_channel_file(synth_out, ch);
    double err = trace_norm_distance(apply_channel(ch, lr.state), ls.state);
    std::cout << "channel_terms: " << ch.terms().size() << "\n";
    std::cout << "reconstruction_error: " << format_double(err) << "\n";
    std::cout << "channel_file: " << synth_out << "\n";
  }
  return ok ? 0 : 1;
}

int run_rate(std::vector<double> spectrum, const std::string& mode_name, double eps,
             std::vector<long> n_list, long n_max, const std::string& out_path) {
  std::sort(spectrum.begin(), spectrum.end(), std::greater<>());
  Spectrum base(spectrum);
  RateMode mode = mode_name == "distill" ? RateMode::distill : RateMode::cost;
  if (n_list.empty()) {
    for (long n = 1; n <= n_max; ++n) n_list.push_back(n);
  }
  if (n_list.empty()) {
    std::cerr << "error: provide --n-list or --n-max\n";
    return 2;
  }
  RateTable table = rate_sweep(base, eps, n_list, mode);
  write_file_atomic(out_path, rate_csv(table));
  std::cout << "target_C_R_bits: "
            << format_double(std::log2(static_cast<double>(base.size())) -
                             von_neumann_entropy(base))
            << "\n";
  std::cout << "rows: " << table.rows().size() << "\n";
  std::cout << "csv: " << out_path << "\n";
  return 0;
}

int run_correlate(const std::string& path, int ancilla) {
  LoadedState loaded = load_state_file(path);
  const DensityMatrix& rho = loaded.state;
  int m = ancilla > 0 ? ancilla : rho.dim();
  ConversionReport rep = coherence_to_correlation(rho, m);
  std::cout << "input_coherence_bits: " << format_double(rep.input_coherence) << "\n";
  std::cout << "mutual_information_bits: " << format_double(rep.output_mutual_information)
            << "\n";
  std::cout << "equality_slack_bits: " << format_double(rep.equality_slack) << "\n";
  std::cout << "reduced_S_distance: "
            << format_double(trace_norm_distance(rep.reduced_s,
                                                 DensityMatrix::maximally_mixed(rho.dim())))
            << "\n";
  std::cout << "reduced_A_distance: "
            << format_double(
                   trace_norm_distance(rep.reduced_a, DensityMatrix::maximally_mixed(m)))
            << "\n";
  std::cout << "saturation_expected: " << (rep.saturation_expected ? "true" : "false")
            << "\n";
  return rep.equality_slack <= 1e-9 ? 0 : 1;
}

int run_fuzz(const std::string& suite, long trials, std::optional<std::uint64_t> seed_opt) {
  std::uint64_t seed = kDefaultSeed;
  if (seed_opt) {
    seed = *seed_opt;
  } else if (const char* env = std::getenv("COH_SEED")) {
    errno = 0;
    char* end = nullptr;
    unsigned long long parsed = std::strtoull(env, &end, 10);
    if (errno != 0 || end == env || *end != '\0') {
      std::cerr << "error: COH_SEED is not an unsigned integer\n";
      return 2;
    }
    seed = static_cast<std::uint64_t>(parsed);
  }
  FuzzReport report = run_fuzz_suite(suite, trials, seed);
  nlohmann::json j;
  j["suite"] = report.suite;
  j["trials"] = report.trials;
  j["seed"] = report.seed;
  j["worst_slack"] = report.worst_slack;
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : report.failures) {
    nlohmann::json jf;
    jf["seed"] = f.seed;
    jf["digest"] = f.digest;
    jf["slack"] = f.slack;
    failures.push_back(std::move(jf));
  }
  j["failures"] = std::move(failures);
  std::cout << j.dump(2) << "\n";
  return report.failures.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"total (basis-free) quantum coherence toolkit"};
  app.require_subcommand(1);

  std::string analyze_path;
  CLI::App* analyze = app.add_subcommand("analyze", "spectrum, entropy and coherence of a state file");
  analyze->add_option("path", analyze_path, "state JSON file")->required();

  std::string cc_rho;
  std::string cc_sigma;
  std::string cc_synth;
  CLI::App* convert = app.add_subcommand(
      "convert-check", "decide single-copy convertibility, optionally synthesize the channel");
  convert->add_option("rho", cc_rho, "source state JSON file")->required();
  convert->add_option("sigma", cc_sigma, "target state JSON file")->required();
  convert->add_option("--synthesize", cc_synth, "write the realizing channel to this file");

  std::vector<double> rate_spectrum;
  std::string rate_mode;
  double rate_eps = 0.01;
  std::vector<long> rate_n_list;
  long rate_n_max = 0;
  std::string rate_out;
  CLI::App* rate = app.add_subcommand("rate", "finite-copy distill/cost rate sweep to CSV");
  rate->add_option("--spectrum", rate_spectrum, "state spectrum, comma separated")
      ->required()
      ->delimiter(',');
  rate->add_option("--mode", rate_mode, "distill or cost")
      ->required()
      ->check(CLI::IsMember({"distill", "cost"}));
  rate->add_option("--eps", rate_eps, "one-shot accuracy budget (default 0.01)");
  rate->add_option("--n-list", rate_n_list, "copy counts, comma separated")->delimiter(',');
  rate->add_option("--n-max", rate_n_max, "sweep n = 1..n_max instead of --n-list");
  rate->add_option("--out", rate_out, "output CSV path")->required();

  std::string corr_path;
  int corr_ancilla = 0;
  CLI::App* correlate =
      app.add_subcommand("correlate", "run the coherence-to-correlation protocol");
  correlate->add_option("path", corr_path, "state JSON file")->required();
  correlate->add_option("--ancilla-dim", corr_ancilla,
                        "ancilla dimension m (default: state dimension)");

  std::string fuzz_suite;
  long fuzz_trials = 1000;
  std::optional<std::uint64_t> fuzz_seed;
  CLI::App* fuzz = app.add_subcommand("fuzz", "run a seeded invariant suite, report JSON");
  fuzz->add_option("--suite", fuzz_suite,
                   "one of monotone, dpi, bound11, ssa, identity14, eof16")
      ->required();
  fuzz->add_option("--trials", fuzz_trials, "number of trials (default 1000)");
  fuzz->add_option("--seed", fuzz_seed, "fuzz seed (fallback: COH_SEED env, then 424242)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*analyze) return run_analyze(analyze_path);
    if (*convert) return run_convert_check(cc_rho, cc_sigma, cc_synth);
    if (*rate) return run_rate(rate_spectrum, rate_mode, rate_eps, rate_n_list, rate_n_max, rate_out);
    if (*correlate) return run_correlate(corr_path, corr_ancilla);
    if (*fuzz) return run_fuzz(fuzz_suite, fuzz_trials, fuzz_seed);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    // for rate and fuzz these are usage errors (bad spectrum, unknown suite);
    // elsewhere they are state-invariant violations
    if (*rate || *fuzz) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
