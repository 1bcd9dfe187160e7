// Copyright 2026 The Authors.
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

// Command-line front end: run, verify, check-submodular, demo, gen.
//
// Exit codes: 0 all properties pass, 1 some property fails, 2 bad input,
// 3 internal or size error.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "clinch/errors.hpp"
#include "clinch/instance.hpp"

namespace {

using clinch::CommandResult;
using clinch::Json;

int emit(const CommandResult& result, const std::string& format) {
  if (format == "text") {
    std::cout << clinch::render_text(result.report);
  } else {
    std::cout << result.report.dump(2) << "\n";
  }
  return result.exit_code;
}

void write_json(const std::string& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) {
    throw clinch::ParseError(clinch::ParseErrorCode::kInvalidValue, "output",
                             "cannot write " + path);
  }
  out << doc.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clinching auctions over polymatroids, with exact verification"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "text"}));

  std::string input;
  std::string trace_out;
  auto* run = app.add_subcommand("run", "Run the auction on an instance");
  run->add_option("-i,--input", input, "Instance file")->required();
  run->add_option("--trace", trace_out, "Write the step trace to this file");

  auto* verify = app.add_subcommand("verify", "Run with monitors and check the outcome");
  verify->add_option("-i,--input", input, "Instance file")->required();

  auto* check = app.add_subcommand("check-submodular", "Exhaustive submodularity check");
  check->add_option("-i,--input", input, "Instance file")->required();

  std::string demo_name;
  auto* demo = app.add_subcommand("demo", "Counterexample demos");
  demo->add_option("name", demo_name, "appendix-d or impossibility")
      ->required()
      ->check(CLI::IsMember({"appendix-d", "impossibility"}));

  std::string kind;
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a seeded random instance");
  gen->add_option("--kind", kind, "Environment kind")->required();
  gen->add_option("--n", n, "Number of bidders")->required();
  gen->add_option("--m", m, "Keywords / vertices / nodes (kind dependent)");
  gen->add_option("--seed", seed, "Random seed")->required();
  gen->add_option("-o,--output", gen_out, "Output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return clinch::kExitInput;
  }

  try {
    if (*run) {
      clinch::InstanceFile inst = clinch::read_instance(input);
      if (!trace_out.empty()) inst.config.trace = true;
      CommandResult result = clinch::command_run(inst);
      if (!trace_out.empty()) {
        write_json(trace_out, result.report["trace"]);
        result.report.erase("trace");
      }
      return emit(result, format);
    }
    if (*verify) return emit(clinch::command_verify(clinch::read_instance(input)), format);
    if (*check) {
      return emit(clinch::command_check_submodular(clinch::read_instance(input)), format);
    }
    if (*demo) return emit(clinch::command_demo(demo_name), format);
    if (*gen) {
      write_json(gen_out, clinch::serialize_instance(
                              clinch::generate_instance(kind, n, m, seed)));
      return clinch::kExitPass;
    }
  } catch (const clinch::ParseError& e) {
    std::cerr << "input error [" << clinch::to_string(e.code()) << "] " << e.what()
              << "\n";
    return clinch::kExitInput;
  } catch (const clinch::SizeError& e) {
    std::cerr << "size error: " << e.what() << "\n";
    return clinch::kExitInternal;
  } catch (const clinch::DomainError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return clinch::kExitInput;
  } catch (const clinch::PreconditionError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return clinch::kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return clinch::kExitInternal;
  }
  return clinch::kExitInternal;
}
