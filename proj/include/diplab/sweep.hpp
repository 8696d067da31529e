#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "diplab/adversary.hpp"
#include "diplab/engine.hpp"

namespace diplab {

enum class InstanceClass { cograph, dh, non_cograph, non_dh, gadget, fooling };

std::string_view to_string(InstanceClass cls);
InstanceClass parse_instance_class(std::string_view name);  // InvalidArgument

// gadget: n >= 5 (random cograph on n - 4 nodes); fooling: n >= 10.
NetworkConfig generate_instance(InstanceClass cls, std::size_t n, std::uint64_t seed);

// "cograph", "dh" or "permutation".
std::unique_ptr<Protocol> make_protocol(std::string_view name);

struct SweepConfig {
  std::string protocol = "cograph";
  InstanceClass instances_of = InstanceClass::cograph;
  std::vector<std::size_t> ns;
  std::size_t instances = 1;  // per n
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  AdversaryKind prover = AdversaryKind::honest;
  AdversaryParams params;
  PrimeMode prime = PrimeMode::fixed;
  ExecPolicy policy = ExecPolicy::serial;
};

struct SweepRow {
  std::size_t n = 0;
  std::uint64_t instance_seed = 0;
  std::string prover;
  double acceptance_frequency = 0;
  std::size_t max_cert_bits = 0;  // over rounds and trials
  std::size_t max_broadcast_bits = 0;
  std::size_t max_cert_nonfield_bits = 0;
  std::size_t max_broadcast_nonfield_bits = 0;
  std::size_t element_bits = 0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

// Rows ordered by (n, instance). Serial and parallel policies agree exactly.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

// Header plus one line per row:
// n,instance_seed,prover,acceptance_frequency,max_cert_bits,max_broadcast_bits
std::string sweep_csv(const std::vector<SweepRow>& rows);

struct AffineFit {
  double slope = 0;
  double intercept = 0;
  double max_residual = 0;
};

// Least squares y ~ slope * x + intercept; needs two distinct x values.
AffineFit fit_affine(std::span<const double> xs, std::span<const double> ys);

}  // namespace diplab
