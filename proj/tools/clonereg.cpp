// Copyright 2026 The clonereg Authors
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


#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using clonereg::cli::kUsage;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Achievable regions of universal asymmetric 1 -> 2 quantum cloners"};
  app.require_subcommand(1);
  int code = 0;

  clonereg::cli::RegionOptions region;
  auto* region_cmd = app.add_subcommand("region", "Boundary curves and an analytic membership scan");
  region_cmd->add_option("--d", region.d, "Input dimension")->capture_default_str();
  region_cmd->add_option("--mode", region.mode, "restricted or general")->capture_default_str();
  region_cmd->add_option("--lambdas", region.lambdas, "Count n (lambda_k = d k / n) or comma-separated list")
      ->capture_default_str();
  region_cmd->add_option("--resolution", region.resolution, "Points per boundary curve")->capture_default_str();
  region_cmd->add_option("--grid", region.grid, "Cells per side of the membership scan")->capture_default_str();
  region_cmd->add_option("--format", region.format, "csv, json or svg")->capture_default_str();
  region_cmd->add_option("--out", region.out, "Output path, - for stdout")->capture_default_str();
  region_cmd->add_option("--scan-out", region.scan_out, "Membership scan CSV path (csv format only)");
  region_cmd->callback([&] { code = clonereg::cli::run_region(region, std::cout, std::cerr); });

  clonereg::cli::CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "Membership verdict and margins for a target pair");
  check_cmd->add_option("--d", check.d, "Input dimension")->capture_default_str();
  check_cmd->add_option("--p1", check.p1, "Singlet fraction of copy 1");
  check_cmd->add_option("--p2", check.p2, "Singlet fraction of copy 2");
  check_cmd->add_option("--f1", check.f1, "Fidelity of copy 1");
  check_cmd->add_option("--f2", check.f2, "Fidelity of copy 2");
  check_cmd->add_option("--mode", check.mode, "restricted or general")->capture_default_str();
  check_cmd->callback([&] { code = clonereg::cli::run_check(check, std::cout, std::cerr); });

  clonereg::cli::SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Choi matrix of a cloner reaching a target pair");
  synth_cmd->add_option("--d", synth.d, "Input dimension")->capture_default_str();
  synth_cmd->add_option("--p1", synth.p1, "Singlet fraction of copy 1")->required();
  synth_cmd->add_option("--p2", synth.p2, "Singlet fraction of copy 2")->required();
  synth_cmd->add_option("--lambda", synth.lambda, "Use the ellipse of this lambda");
  synth_cmd->add_option("--snap", synth.snap, "Largest distance a target may be moved onto the region")
      ->capture_default_str();
  synth_cmd->add_option("--out", synth.out, "Output path, - for stdout")->capture_default_str();
  synth_cmd->callback([&] { code = clonereg::cli::run_synth(synth, std::cout, std::cerr); });

  clonereg::cli::VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Validity and marginal diagnostics of a Choi file");
  verify_cmd->add_option("--in", verify.in, "Choi JSON file")->required();
  verify_cmd->add_option("--tol", verify.tol, "Validity tolerance")->capture_default_str();
  verify_cmd->callback([&] { code = clonereg::cli::run_verify(verify, std::cout, std::cerr); });

  clonereg::cli::SpectraOptions spectra;
  auto* spectra_cmd = app.add_subcommand("spectra", "Spectra of the partially transposed permutation sums");
  spectra_cmd->add_option("--d", spectra.d, "Input dimension")->capture_default_str();
  spectra_cmd->callback([&] { code = clonereg::cli::run_spectra(spectra, std::cout, std::cerr); });

  clonereg::cli::TwirlOptions twirl;
  auto* twirl_cmd = app.add_subcommand("twirl", "Symmetrize a 1 -> 2 channel over U x conj(U) x conj(U)");
  twirl_cmd->add_option("--in", twirl.in, "Choi JSON file")->required();
  twirl_cmd->add_option("--samples", twirl.samples, "Monte-Carlo samples; 0 for the exact projection")
      ->capture_default_str();
  twirl_cmd->add_option("--seed", twirl.seed, "Monte-Carlo seed")->capture_default_str();
  twirl_cmd->add_option("--out", twirl.out, "Output path, - for stdout")->capture_default_str();
  twirl_cmd->callback([&] { code = clonereg::cli::run_twirl(twirl, std::cout, std::cerr); });

  clonereg::cli::RandomOptions random;
  auto* random_cmd = app.add_subcommand("random", "Random valid 1 -> 2 Choi matrix");
  random_cmd->add_option("--d", random.d, "Input dimension")->capture_default_str();
  random_cmd->add_option("--seed", random.seed, "Seed")->capture_default_str();
  random_cmd->add_option("--out", random.out, "Output path, - for stdout")->capture_default_str();
  random_cmd->callback([&] { code = clonereg::cli::run_random(random, std::cout, std::cerr); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return code;
}
