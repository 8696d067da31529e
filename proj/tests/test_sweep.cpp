#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"

#include "diplab/cograph_protocol.hpp"
#include "diplab/errors.hpp"
#include "diplab/generators.hpp"
#include "diplab/oracles.hpp"
#include "diplab/report.hpp"
#include "diplab/sweep.hpp"

using namespace diplab;

TEST_SUITE("sweep") {
  TEST_CASE("empty size list gives a header-only table") {
    SweepConfig cfg;
    CHECK(run_sweep(cfg).empty());
    CHECK(sweep_csv({}) == "n,instance_seed,prover,acceptance_frequency,max_cert_bits,max_broadcast_bits\n");
  }

  TEST_CASE("honest cograph sweep") {
    SweepConfig cfg;
    cfg.ns = {8, 16, 32, 64};
    cfg.trials = 3;
    cfg.seed = 5;
    const auto rows = run_sweep(cfg);
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(rows[i].n == cfg.ns[i]);
      CHECK(rows[i].prover == "honest");
      CHECK(rows[i].acceptance_frequency == 1.0);
      CHECK(rows[i].element_bits == 61);
      CHECK(rows[i].max_cert_bits > rows[i].max_cert_nonfield_bits);
    }
    CHECK(rows[3].max_cert_bits > rows[0].max_cert_bits);
    cfg.policy = ExecPolicy::parallel;
    CHECK(run_sweep(cfg) == rows);
    const std::string csv = sweep_csv(rows);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
    CHECK(csv.find("\n8,") != std::string::npos);
    CHECK(csv.find(",honest,1.000000,") != std::string::npos);
  }

  TEST_CASE("adversarial sweep on non-members") {
    SweepConfig cfg;
    cfg.protocol = "dh";
    cfg.instances_of = InstanceClass::non_dh;
    cfg.ns = {10, 20};
    cfg.instances = 2;
    cfg.trials = 10;
    cfg.prover = AdversaryKind::order_forge;
    const auto rows = run_sweep(cfg);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].instance_seed != rows[1].instance_seed);
    for (const auto& r : rows) CHECK(r.acceptance_frequency == 0.0);
  }

  TEST_CASE("instance classes") {
    CHECK(is_cograph_oracle(generate_instance(InstanceClass::cograph, 16, 7).graph()));
    CHECK(is_dh_oracle(generate_instance(InstanceClass::dh, 16, 7).graph()));
    CHECK(generate_instance(InstanceClass::dh, 1, 0).size() == 1);
    CHECK_FALSE(is_cograph_oracle(generate_instance(InstanceClass::non_cograph, 12, 2).graph()));
    CHECK_FALSE(is_dh_oracle(generate_instance(InstanceClass::non_dh, 12, 2).graph()));
    CHECK(is_cograph_oracle(generate_instance(InstanceClass::gadget, 9, 3).graph()));
    const Graph fooling = generate_instance(InstanceClass::fooling, 10, 1).graph();
    CHECK_FALSE(is_cograph_oracle(fooling));
    CHECK_FALSE(is_dh_oracle(fooling));
    CHECK_THROWS_AS(generate_instance(InstanceClass::fooling, 9, 1), InvalidArgument);
    for (auto c : {InstanceClass::cograph, InstanceClass::dh, InstanceClass::non_cograph,
                   InstanceClass::non_dh, InstanceClass::gadget, InstanceClass::fooling}) {
      CHECK(parse_instance_class(to_string(c)) == c);
    }
    CHECK_THROWS_AS(parse_instance_class("tree"), InvalidArgument);
    CHECK(make_protocol("permutation")->name() == "permutation");
    CHECK(make_protocol("dh")->merlin_rounds() == 2);
    CHECK_THROWS_AS(make_protocol("dm"), InvalidArgument);
  }

  TEST_CASE("affine fit") {
    const std::vector<double> xs{3, 4, 5, 6}, ys{10, 13, 16, 19};
    const auto fit = fit_affine(xs, ys);
    CHECK(fit.slope == doctest::Approx(3.0));
    CHECK(fit.intercept == doctest::Approx(1.0));
    CHECK(fit.max_residual == doctest::Approx(0.0));
    const std::vector<double> bent{10, 14, 16, 19};
    CHECK(fit_affine(xs, bent).max_residual > 0.5);
    const std::vector<double> same{2, 2};
    CHECK_THROWS_AS(fit_affine(same, same), InvalidArgument);
    CHECK_THROWS_AS(fit_affine(std::vector<double>{1}, std::vector<double>{1}), InvalidArgument);
  }
}

TEST_SUITE("report") {
  TEST_CASE("cograph run report") {
    const NetworkConfig cfg(graphs::complete(3), {5, 9, 2});
    const auto run = run_protocol(cfg, CographProtocol(), HonestProver(), 11);
    const auto j = run_report(cfg, run);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    const std::vector<std::string> expected{"protocol",      "seed",          "p",
                                            "t",             "accepted",      "rejecting_nodes",
                                            "max_cert_bits", "max_broadcast_bits",
                                            "cap_violated",  "failure_tags",  "referee_log"};
    CHECK(keys == expected);
    CHECK(j["p"] == "2305843009213693951");
    CHECK(j["t"].is_string());
    CHECK(j["accepted"] == true);
    CHECK(j["referee_log"].size() == 2);
    CHECK(j["failure_tags"].empty());
  }

  TEST_CASE("rejections are listed by id") {
    const NetworkConfig cfg(graphs::path(4), {40, 30, 20, 10});
    const auto run = run_protocol(cfg, CographProtocol(), HonestProver(), 2);
    const auto j = run_report(cfg, run);
    CHECK(j["accepted"] == false);
    REQUIRE_FALSE(j["rejecting_nodes"].empty());
    CHECK(j["failure_tags"].size() == j["rejecting_nodes"].size());
    const auto ids = j["rejecting_nodes"].get<std::vector<NodeId>>();
    CHECK(std::is_sorted(ids.begin(), ids.end()));
    CHECK(j["referee_log"].empty());
  }

  TEST_CASE("dh reports carry no referee log") {
    const auto inst = gen_random_dh(8, 1);
    const auto j = run_report(inst.config, run_protocol(inst.config, *make_protocol("dh"), HonestProver(), 0));
    CHECK_FALSE(j.contains("referee_log"));
    CHECK(j["max_cert_bits"].size() == 2);
  }
}
