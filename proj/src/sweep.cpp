#include "diplab/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>

#include "diplab/cograph_protocol.hpp"
#include "diplab/dh_protocol.hpp"
#include "diplab/errors.hpp"
#include "diplab/generators.hpp"
#include "diplab/permutation.hpp"
#include "diplab/random.hpp"

namespace diplab {

namespace {

constexpr std::pair<InstanceClass, std::string_view> kClassNames[] = {
    {InstanceClass::cograph, "cograph"},         {InstanceClass::dh, "dh"},
    {InstanceClass::non_cograph, "non-cograph"}, {InstanceClass::non_dh, "non-dh"},
    {InstanceClass::gadget, "gadget"},           {InstanceClass::fooling, "fooling"},
};

}  // namespace

std::string_view to_string(InstanceClass cls) {
  for (auto [c, name] : kClassNames) {
    if (c == cls) return name;
  }
  return "?";
}

InstanceClass parse_instance_class(std::string_view name) {
  for (auto [c, n] : kClassNames) {
    if (n == name) return c;
  }
  throw InvalidArgument("unknown graph class '" + std::string(name) + "'");
}

NetworkConfig generate_instance(InstanceClass cls, std::size_t n, std::uint64_t seed) {
  switch (cls) {
    case InstanceClass::cograph: return gen_random_cograph(n, seed);
    case InstanceClass::dh: return gen_random_dh(n, seed).config;
    case InstanceClass::non_cograph: return gen_nonmember(GraphClass::cograph, n, seed);
    case InstanceClass::non_dh: return gen_nonmember(GraphClass::distance_hereditary, n, seed);
    case InstanceClass::gadget:
      if (n < 5) throw InvalidArgument("gadget instances need n >= 5");
      return gen_yes_gadget(gen_random_cograph(n - 4, seed).graph());
    case InstanceClass::fooling: {
      if (n < 10) throw InvalidArgument("fooling instances need n >= 10");
      const std::size_t k = n - 8;
      return gen_fooling_instance(gen_random_cograph((k + 1) / 2, derive_seed(seed, 1)).graph(),
                                  gen_random_cograph(k / 2, derive_seed(seed, 2)).graph());
    }
  }
  throw InvalidArgument("unknown graph class");
}

std::unique_ptr<Protocol> make_protocol(std::string_view name) {
  if (name == "cograph") return std::make_unique<CographProtocol>();
  if (name == "dh") return std::make_unique<DhProtocol>();
  if (name == "permutation") return std::make_unique<PermutationProtocol>();
  throw InvalidArgument("unknown protocol '" + std::string(name) + "'");
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  if (cfg.trials == 0) throw InvalidArgument("sweep: trials must be >= 1");
  const auto protocol = make_protocol(cfg.protocol);
  const auto prover = make_adversary(cfg.prover, cfg.params);

  std::vector<std::uint64_t> seeds;
  std::vector<std::size_t> sizes;
  std::vector<NetworkConfig> graphs;
  for (std::size_t n : cfg.ns) {
    for (std::size_t i = 0; i < cfg.instances; ++i) {
      seeds.push_back(derive_seed(cfg.seed, n, i));
      sizes.push_back(n);
      graphs.push_back(generate_instance(cfg.instances_of, n, seeds.back()));
    }
  }

  struct Outcome {
    bool accepted = false;
    std::size_t cert = 0, broadcast = 0, cert_nf = 0, broadcast_nf = 0, element = 0;
  };
  RunOptions opts;
  opts.prime = cfg.prime;
  const std::size_t jobs = graphs.size() * cfg.trials;
  std::vector<Outcome> outcomes(jobs);
  std::exception_ptr failure;
  const auto count = static_cast<std::int64_t>(jobs);
#pragma omp parallel for schedule(dynamic) if (cfg.policy == ExecPolicy::parallel)
  for (std::int64_t job = 0; job < count; ++job) {
    const std::size_t i = static_cast<std::size_t>(job) / cfg.trials;
    const std::size_t k = static_cast<std::size_t>(job) % cfg.trials;
    try {
      const auto run = run_protocol(graphs[i], *protocol, *prover, trial_seed(seeds[i], i, k), opts);
      Outcome& o = outcomes[job];
      o.accepted = run.accepted;
      for (auto b : run.bandwidth.max_cert_bits) o.cert = std::max(o.cert, b);
      for (auto b : run.bandwidth.max_cert_nonfield_bits) o.cert_nf = std::max(o.cert_nf, b);
      o.broadcast = run.bandwidth.max_broadcast_bits;
      o.broadcast_nf = run.bandwidth.max_broadcast_nonfield_bits;
      o.element = run.field.element_bits();
    } catch (...) {
#pragma omp critical(diplab_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    SweepRow row;
    row.n = sizes[i];
    row.instance_seed = seeds[i];
    row.prover = std::string(to_string(cfg.prover));
    std::size_t hits = 0;
    for (std::size_t k = 0; k < cfg.trials; ++k) {
      const Outcome& o = outcomes[i * cfg.trials + k];
      hits += o.accepted ? 1 : 0;
      row.max_cert_bits = std::max(row.max_cert_bits, o.cert);
      row.max_broadcast_bits = std::max(row.max_broadcast_bits, o.broadcast);
      row.max_cert_nonfield_bits = std::max(row.max_cert_nonfield_bits, o.cert_nf);
      row.max_broadcast_nonfield_bits = std::max(row.max_broadcast_nonfield_bits, o.broadcast_nf);
      row.element_bits = o.element;
    }
    row.acceptance_frequency = static_cast<double>(hits) / static_cast<double>(cfg.trials);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "n,instance_seed,prover,acceptance_frequency,max_cert_bits,max_broadcast_bits\n";
  for (const auto& r : rows) {
    char freq[32];
    std::snprintf(freq, sizeof freq, "%.6f", r.acceptance_frequency);
    out << r.n << ',' << r.instance_seed << ',' << r.prover << ',' << freq << ','
        << r.max_cert_bits << ',' << r.max_broadcast_bits << '\n';
  }
  return out.str();
}

AffineFit fit_affine(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw InvalidArgument("fit_affine needs >= 2 points");
  const double m = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = m * sxx - sx * sx;
  if (denom == 0) throw InvalidArgument("fit_affine needs two distinct x values");
  AffineFit fit;
  fit.slope = (m * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / m;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    fit.max_residual = std::max(fit.max_residual, std::abs(ys[i] - (fit.slope * xs[i] + fit.intercept)));
  }
  return fit;
}

}  // namespace diplab
