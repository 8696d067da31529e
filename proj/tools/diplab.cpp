#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "diplab/adversary.hpp"
#include "diplab/errors.hpp"
#include "diplab/graph_io.hpp"
#include "diplab/oracles.hpp"
#include "diplab/parallel.hpp"
#include "diplab/report.hpp"
#include "diplab/sweep.hpp"

namespace {

using namespace diplab;

constexpr int kAccept = 0;
constexpr int kReject = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;

std::string classify(const Graph& g) {
  if (!is_connected(g)) return "disconnected";
  if (is_cograph_oracle(g)) return "cograph+dh";
  return is_dh_oracle(g) ? "dh-only" : "neither";
}

PrimeMode parse_prime(const std::string& s) {
  if (s == "fixed") return PrimeMode::fixed;
  if (s == "paper") return PrimeMode::paper;
  throw InvalidArgument("--prime must be fixed or paper");
}

std::vector<std::size_t> parse_n_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw InvalidArgument("bad entry '" + item + "' in --n-list");
    out.push_back(v);
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace

int main(int argc, char** argv) {
  configure_threads_from_env();
  CLI::App app{"Distributed interactive proof laboratory"};
  app.require_subcommand(1);

  std::string cls, out_path, graph_path, protocol = "cograph", prover = "honest", prime = "fixed";
  std::string n_list;
  std::size_t n = 0, trials = 1, flips = 1, instances = 1;
  std::uint64_t seed = 0;
  std::optional<std::size_t> cap_bits;

  auto* gen = app.add_subcommand("gen", "generate a graph file");
  gen->add_option("--class", cls, "cograph|dh|non-cograph|non-dh|gadget|fooling")->required();
  gen->add_option("--n", n, "node count")->required();
  gen->add_option("--seed", seed);
  gen->add_option("--out", out_path, "output file (stdout when omitted)");

  auto* run = app.add_subcommand("run", "run one protocol execution");
  run->add_option("--protocol", protocol, "cograph|dh|permutation");
  run->add_option("--graph", graph_path)->required();
  run->add_option("--prover", prover, "honest|wrong-graph|bit-flip|cert-swap|order-forge");
  run->add_option("--flips", flips, "bits flipped by bit-flip");
  run->add_option("--seed", seed);
  run->add_option("--prime", prime, "fixed|paper");
  run->add_option("--cap-bits", cap_bits, "per-certificate bandwidth cap");
  run->add_option("--out", out_path, "report file (stdout when omitted)");

  auto* sweep = app.add_subcommand("sweep", "acceptance and bandwidth over sizes");
  sweep->add_option("--protocol", protocol);
  sweep->add_option("--class", cls)->required();
  sweep->add_option("--n-list", n_list, "comma separated sizes")->required();
  sweep->add_option("--trials", trials);
  sweep->add_option("--instances", instances, "instances per size");
  sweep->add_option("--seed", seed);
  sweep->add_option("--prover", prover);
  sweep->add_option("--flips", flips);
  sweep->add_option("--prime", prime);
  sweep->add_option("--out", out_path);

  auto* oracle = app.add_subcommand("oracle", "classify a graph file");
  oracle->add_option("--graph,graph", graph_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*gen) {
      const auto cfg = generate_instance(parse_instance_class(cls), n, seed);
      write_text(out_path, to_graph_json(cfg));
      std::clog << "nodes=" << cfg.size() << " oracle=" << classify(cfg.graph()) << '\n';
      return kAccept;
    }
    if (*run) {
      const auto cfg = read_graph_file(graph_path).to_network();
      const auto proto = make_protocol(protocol);
      const auto strategy = make_adversary(prover, AdversaryParams{flips});
      RunOptions opts;
      opts.prime = parse_prime(prime);
      opts.cap_bits = cap_bits;
      const auto result = run_protocol(cfg, *proto, *strategy, seed, opts);
      write_text(out_path, run_report(cfg, result).dump(2) + "\n");
      return result.accepted ? kAccept : kReject;
    }
    if (*sweep) {
      SweepConfig sc;
      sc.protocol = protocol;
      sc.instances_of = parse_instance_class(cls);
      sc.ns = parse_n_list(n_list);
      sc.instances = instances;
      sc.trials = trials;
      sc.seed = seed;
      sc.prover = parse_adversary(prover);
      sc.params.flips = flips;
      sc.prime = parse_prime(prime);
      sc.policy = ExecPolicy::parallel;
      write_text(out_path, sweep_csv(run_sweep(sc)));
      return kAccept;
    }
    if (*oracle) {
      std::cout << classify(read_graph_file(graph_path).graph) << '\n';
      return kAccept;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  }
  return kUsage;
}
