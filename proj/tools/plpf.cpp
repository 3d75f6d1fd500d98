// Experiment runner: CSV tables for the model's figures and the validation suite.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "plpf/experiments.hpp"

namespace {

struct Flags {
  std::optional<std::string> d, alpha, delta, big_delta, m, s, eps, n, k, x;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<std::string> out, config;
  bool toy = false;
};

void add_flags(CLI::App& sub, Flags& f) {
  sub.add_option("--d", f.d, "Spatial dimension");
  sub.add_option("--alpha", f.alpha, "Path loss exponent");
  sub.add_option("--delta", f.delta, "d/alpha (instead of --alpha)");
  sub.add_option("--Delta", f.big_delta, "(d+1)/alpha");
  sub.add_option("--m", f.m, "Nakagami m; inf or none for no fading");
  sub.add_option("--s", f.s, "Threshold s (or s~ for reach-probability)");
  sub.add_option("--eps", f.eps, "Outage tolerance epsilon");
  sub.add_option("--n", f.n, "Transmissions, or node count in toy mode");
  sub.add_option("--k", f.k, "Received packet count");
  sub.add_option("--x", f.x, "Path loss grid");
  sub.add_option("--trials", f.trials, "Monte Carlo trials per estimate (>= 100)");
  sub.add_option("--seed", f.seed, "Base seed (unsigned 64-bit integer)");
  sub.add_option("--threads", f.threads, "Worker threads for Monte Carlo");
  sub.add_option("--out", f.out, "Output file (default: standard output)");
  sub.add_option("--config", f.config, "key=value file; flags override its values")
      ->check(CLI::ExistingFile);
  sub.add_flag("--toy", f.toy, "sample: uniform toy placement on [0, 5]");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Path loss process with fading: experiments and validation"};
  app.require_subcommand(1);
  Flags flags;
  for (const auto& name : plpf::experiments::experiment_names()) {
    add_flags(*app.add_subcommand(name, "Run the " + name + " experiment"), flags);
  }
  std::string op;
  std::vector<std::string> params;
  std::optional<std::string> eval_out;
  bool list_ops = false;
  auto* eval = app.add_subcommand("eval", "Evaluate an analytic operation: eval <op> key=value ...");
  eval->add_option("operation", op, "Operation name");
  eval->add_option("params", params, "key=value; values accept grids like 1,2,5 or 0:1:0.1");
  eval->add_option("--out", eval_out, "Output file (default: standard output)");
  eval->add_flag("--list", list_ops, "List operation names");
  CLI11_PARSE(app, argc, argv);

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "eval") {
      if (list_ops || op.empty()) {
        for (const auto& n : plpf::experiments::operation_names()) std::cout << n << "\n";
        return op.empty() && !list_ops ? 2 : 0;
      }
      plpf::experiments::Settings p;
      for (const auto& kv : params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) {
          throw std::runtime_error("expected key=value, got '" + kv + "'");
        }
        p[kv.substr(0, eq)] = kv.substr(eq + 1);
      }
      if (eval_out && *eval_out != "-") {
        std::ofstream file(*eval_out);
        if (!file) throw std::runtime_error("cannot open '" + *eval_out + "' for writing");
        plpf::experiments::evaluate_operation(op, p, file);
      } else {
        plpf::experiments::evaluate_operation(op, p, std::cout);
      }
      return 0;
    }
    plpf::experiments::Settings settings;
    if (flags.config) settings = plpf::experiments::load_config(*flags.config);
    const auto set = [&](const char* key, const std::optional<std::string>& v) {
      if (v) settings[key] = *v;
    };
    set("d", flags.d);
    set("alpha", flags.alpha);
    set("delta", flags.delta);
    set("Delta", flags.big_delta);
    set("m", flags.m);
    set("s", flags.s);
    set("eps", flags.eps);
    set("n", flags.n);
    set("k", flags.k);
    set("x", flags.x);
    set("out", flags.out);
    if (flags.trials) settings["trials"] = std::to_string(*flags.trials);
    if (flags.seed) settings["seed"] = std::to_string(*flags.seed);
    if (flags.threads) settings["threads"] = std::to_string(*flags.threads);
    if (flags.toy) settings["toy"] = "true";
    const auto spec = plpf::experiments::make_spec(name, settings);
    return plpf::experiments::run(spec) ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
