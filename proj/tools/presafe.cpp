// presafe: preemption-safety checker and synchronization synthesizer for W programs
#include "presafe/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  presafe::cli::RunConfig cfg;
  CLI::App app{"Check and repair preemption-safety of W programs"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("input", cfg.input, "W source file")->required();
    sub->add_option("--k-start", cfg.k_start, "initial closure bound")->capture_default_str();
    sub->add_option("--k-max", cfg.k_max, "largest closure bound")->capture_default_str();
    sub->add_option("--budget-tuples", cfg.budget_tuples, "antichain tuples explored per check")->capture_default_str();
    sub->add_option("--timeout-s", cfg.timeout_s, "wall-clock limit per check, 0 = none")->capture_default_str();
    sub->add_option("--unroll", cfg.unroll, "loop iterations per loop, 0 = unbounded")->capture_default_str();
    sub->add_option("--domain", cfg.domain, "havoc and input values, e.g. 0..1 or 0,2,5")->capture_default_str();
    sub->add_option("--iterations", cfg.iterations, "synthesis iteration cap")->capture_default_str();
    sub->add_option("--emit-automata", cfg.emit_automata, "write automata dumps to this file");
    sub->add_option("--report", cfg.report, "write the JSON report here instead of stdout");
    sub->add_option("--out", cfg.out, "output file for the program or listing");
    sub->final_callback([&cfg, sub] { cfg.command = sub->get_name(); });
  };
  common(app.add_subcommand("verify", "check preemption-safety"));
  common(app.add_subcommand("synthesize", "insert synchronization until preemption-safe"));
  auto* en = app.add_subcommand("enumerate", "list observation sequences");
  common(en);
  en->add_option("--mode", cfg.mode, "np or p")->capture_default_str();
  en->add_option("--level", cfg.level, "abstract or concrete")->capture_default_str();
  en->add_option("--max-steps", cfg.max_steps, "steps per execution")->capture_default_str();
  en->add_option("--max-states", cfg.max_states, "explored states")->capture_default_str();
  common(app.add_subcommand("dump-automata", "print the NP and P automata"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : presafe::cli::kInputError;
  }
  return presafe::cli::run(cfg, std::cout, std::cerr);
}
