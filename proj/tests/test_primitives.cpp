// Copyright 2026 The dqmasim developers
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

#include "helpers.hpp"

#include "dqma/primitives.hpp"

using namespace dqma;

namespace {

const std::vector<std::string> kR1{"r1"};
const std::vector<std::string> kR2{"r2"};

/// Dense SWAP operator exchanging two n-qubit halves; test oracle.
Mat swap_operator(int qubits_per_side) {
  const Eigen::Index side = Eigen::Index{1} << qubits_per_side;
  Mat s = Mat::Zero(side * side, side * side);
  for (Eigen::Index a = 0; a < side; ++a)
    for (Eigen::Index b = 0; b < side; ++b) s(b * side + a, a * side + b) = 1.0;
  return s;
}

QuantumState pair_state(int qubits_per_side, const Vec& amps) {
  RegisterLayout layout({{"r1", qubits_per_side, -1},
                         {"r2", qubits_per_side, -1}});
  return QuantumState::pure_state(layout, amps);
}

}  // namespace

TEST_CASE("swap test acceptance on product inputs", "[primitives]") {
  SECTION("identical pure inputs accept with certainty") {
    auto s = tensor(QuantumState::zero_state(test::qubits("r1", 1)),
                    QuantumState::zero_state(test::qubits("r2", 1)));
    REQUIRE(swap_test_accept_prob(s, kR1, kR2) == Approx(1.0));
  }
  SECTION("orthogonal pure inputs accept with probability 1/2") {
    auto s = tensor(QuantumState::zero_state(test::qubits("r1", 1)),
                    QuantumState::basis_state(test::qubits("r2", 1), 1));
    REQUIRE(swap_test_accept_prob(s, kR1, kR2) == Approx(0.5));
  }
  SECTION("two maximally mixed qubits accept with probability 3/4") {
    Mat half = Mat::Identity(2, 2) / 2.0;
    auto s = tensor(QuantumState::mixed_state(test::qubits("r1", 1), half),
                    QuantumState::mixed_state(test::qubits("r2", 1), half));
    REQUIRE(swap_test_accept_prob(s, kR1, kR2) == Approx(0.75));
  }
  SECTION("register size mismatch rejected") {
    RegisterLayout layout({{"r1", 1, -1}, {"r2", 2, -1}});
    auto s = QuantumState::zero_state(layout);
    REQUIRE_THROWS_AS(swap_test_accept_prob(s, kR1, kR2), ArgumentError);
  }
}

TEST_CASE("swap test matches 1/2 + tr(s1 s2)/2 and the explicit operator",
          "[primitives][property]") {
  auto r = test::rng(31);
  for (int it = 0; it < 1000; ++it) {
    const int n = 1 + (it % 2);
    auto s1 = test::random_state(test::qubits("r1", n), r);
    auto s2 = test::random_state(test::qubits("r2", n), r);
    auto joint = tensor(s1, s2);
    const double p = swap_test_accept_prob(joint, kR1, kR2);

    const double product_formula =
        0.5 + 0.5 * (s1.density_matrix() * s2.density_matrix())
                        .trace()
                        .real();
    REQUIRE(p == Approx(product_formula).margin(1e-10));

    const Mat s = swap_operator(n);
    const double operator_route =
        0.5 + 0.5 * (s * joint.density_matrix()).trace().real();
    REQUIRE(p == Approx(operator_route).margin(1e-10));
  }
}

TEST_CASE("swap test execution", "[primitives]") {
  auto r = test::rng(37);

  SECTION("identical pure inputs leave the state unchanged") {
    const Vec psi = haar_random_vector(2, r);
    auto s = tensor(QuantumState::pure_state(test::qubits("r1", 1), psi),
                    QuantumState::pure_state(test::qubits("r2", 1), psi));
    auto branches = swap_test_branches(s, kR1, kR2);
    REQUIRE(branches[0].probability == Approx(1.0));
    REQUIRE((branches[0].post->amplitudes() - s.amplitudes()).norm() <= 1e-10);
  }

  SECTION("accepted branch state is symmetric") {
    for (int it = 0; it < 30; ++it) {
      RegisterLayout layout({{"r1", 1, -1}, {"r2", 1, -1}});
      auto s = haar_random_pure(layout, r);
      auto branches = swap_test_branches(s, kR1, kR2);
      if (!branches[0].post) continue;
      REQUIRE(swap_test_accept_prob(*branches[0].post, kR1, kR2) ==
              Approx(1.0).margin(1e-10));
    }
  }

  SECTION("sampled outcomes follow the exact acceptance probability") {
    RegisterLayout layout({{"r1", 1, -1}, {"r2", 1, -1}});
    auto s = haar_random_pure(layout, r);
    const double exact = swap_test_accept_prob(s, kR1, kR2);
    int accepts = 0;
    const int trials = 5000;
    for (int t = 0; t < trials; ++t)
      if (swap_test_execute(s, kR1, kR2, r).first) ++accepts;
    REQUIRE(std::abs(accepts / double(trials) - exact) < 0.05);
  }
}

TEST_CASE("swap test closeness bound on entangled inputs",
          "[primitives][property]") {
  auto r = test::rng(41);
  int exact_equal_cases = 0;
  for (int it = 0; it < 500; ++it) {
    RegisterLayout layout({{"r1", 2, -1}, {"r2", 2, -1}});
    auto s = (it % 3 == 0) ? haar_random_mixed(layout, 2, r)
                           : haar_random_pure(layout, r);
    const double p = swap_test_accept_prob(s, kR1, kR2);
    const double d = trace_distance(partial_trace(s, kR1),
                                    partial_trace(s, kR2).with_layout(
                                        test::qubits("r1", 2)));
    if (1.0 - p <= 1e-12) {
      // Certain acceptance forces equal reduced states.
      REQUIRE(d <= 1e-6);
      ++exact_equal_cases;
      continue;
    }
    const double z = 1.0 / (1.0 - p);
    REQUIRE(z >= 1.0);
    REQUIRE(d <= 2.0 / std::sqrt(z) + 1.0 / z);
  }
  // Haar-random inputs should essentially never accept with certainty.
  REQUIRE(exact_equal_cases < 5);
}

TEST_CASE("teleportation through an EPR pair is the identity channel",
          "[primitives][property]") {
  auto r = test::rng(43);

  SECTION("|+> payload, every Bell branch") {
    auto joint = tensor(
        QuantumState::pure_state(test::qubits("src", 1), gates::ket_plus()),
        QuantumState::pure_state(
            RegisterLayout({{"pair_s", 1, -1}, {"pair_r", 1, -1}}),
            gates::phi_plus()));
    auto branches = teleport_branches(joint, "src", "pair_s", "pair_r");
    double total = 0.0;
    for (const auto& br : branches) {
      REQUIRE(br.probability == Approx(0.25).margin(1e-10));
      auto expected = QuantumState::pure_state(test::qubits("pair_r", 1),
                                               gates::ket_plus());
      REQUIRE(fidelity(*br.post, expected) == Approx(1.0).margin(1e-10));
      total += br.probability;
    }
    REQUIRE(total == Approx(1.0).margin(1e-10));
  }

  SECTION("Haar-random payloads, including entangled spectators") {
    for (int it = 0; it < 50; ++it) {
      // Payload qubit entangled with a spectator register.
      RegisterLayout payload({{"spec", 1, -1}, {"src", 1, -1}});
      auto joint = tensor(haar_random_pure(payload, r),
                          QuantumState::pure_state(
                              RegisterLayout({{"pair_s", 1, -1},
                                              {"pair_r", 1, -1}}),
                              gates::phi_plus()));
      const auto reference = joint;
      auto branches = teleport_branches(joint, "src", "pair_s", "pair_r");
      for (const auto& br : branches) {
        REQUIRE(br.post.has_value());
        // Compare against the original payload+spectator state with the
        // receiver qubit standing in for the source.
        auto expected = partial_trace(
            reference, std::vector<std::string>{"spec", "src"});
        auto got = partial_trace(*br.post,
                                 std::vector<std::string>{"spec", "pair_r"});
        REQUIRE((got.density() - expected.density()).cwiseAbs().maxCoeff() <=
                1e-10);
      }
    }
  }

  SECTION("entanglement is swapped intact") {
    // Teleport one half of an EPR pair; the receiver ends up maximally
    // entangled with the kept half.
    auto joint = tensor(QuantumState::pure_state(
                            RegisterLayout({{"keep", 1, -1}, {"src", 1, -1}}),
                            gates::phi_plus()),
                        QuantumState::pure_state(
                            RegisterLayout({{"pair_s", 1, -1},
                                            {"pair_r", 1, -1}}),
                            gates::phi_plus()));
    auto branches = teleport_branches(joint, "src", "pair_s", "pair_r");
    for (const auto& br : branches) {
      auto expected = QuantumState::pure_state(
          RegisterLayout({{"keep", 1, -1}, {"pair_r", 1, -1}}),
          gates::phi_plus());
      REQUIRE(fidelity(*br.post, expected) == Approx(1.0).margin(1e-10));
    }
  }
}

TEST_CASE("teleportation through |00> enumerated over Bell branches",
          "[primitives]") {
  // Broken resource: only the Z-outcome branches survive for a |0> payload,
  // and a |+> payload decoheres to squared overlap 1/2.
  auto zeros = QuantumState::zero_state(
      RegisterLayout({{"pair_s", 1, -1}, {"pair_r", 1, -1}}));

  SECTION("|0> payload is preserved") {
    auto joint = tensor(QuantumState::zero_state(test::qubits("src", 1)),
                        zeros);
    auto branches = teleport_branches(joint, "src", "pair_s", "pair_r");
    double live = 0.0, avg_sq_overlap = 0.0;
    for (const auto& br : branches) {
      if (!br.post) continue;
      live += br.probability;
      const double f =
          fidelity(*br.post, QuantumState::zero_state(test::qubits("pair_r", 1)));
      avg_sq_overlap += br.probability * f * f;
    }
    REQUIRE(live == Approx(1.0).margin(1e-10));
    REQUIRE(avg_sq_overlap == Approx(1.0).margin(1e-10));
  }

  SECTION("|+> payload decoheres") {
    auto joint = tensor(
        QuantumState::pure_state(test::qubits("src", 1), gates::ket_plus()),
        zeros);
    auto branches = teleport_branches(joint, "src", "pair_s", "pair_r");
    double avg_sq_overlap = 0.0;
    for (const auto& br : branches) {
      REQUIRE(br.probability == Approx(0.25).margin(1e-10));
      auto plus = QuantumState::pure_state(test::qubits("pair_r", 1),
                                           gates::ket_plus());
      const double f = fidelity(*br.post, plus);
      avg_sq_overlap += br.probability * f * f;
    }
    REQUIRE(avg_sq_overlap == Approx(0.5).margin(1e-10));
  }
}

TEST_CASE("EPR-pair test POVMs", "[primitives]") {
  const auto effects = epr_effects();
  const Vec phi = gates::phi_plus();

  SECTION("mixture equals (2/3)|Phi+><Phi+| + (1/3) I") {
    const Mat omega = epr_omega();
    const Mat expected =
        (2.0 / 3.0) * (phi * phi.adjoint()) +
        (1.0 / 3.0) * Mat::Identity(4, 4);
    REQUIRE((omega - expected).cwiseAbs().maxCoeff() <= 1e-12);
  }

  SECTION("|Phi+> passes every test with certainty") {
    for (const Mat& e : effects)
      REQUIRE((phi.adjoint() * e * phi)(0).real() == Approx(1.0).margin(1e-12));
  }

  SECTION("spot values on |00>") {
    const Vec zz = gates::ket(0, 2);
    REQUIRE((zz.adjoint() * effects[0] * zz)(0).real() == Approx(1.0));
    REQUIRE((zz.adjoint() * effects[1] * zz)(0).real() == Approx(0.5));
    REQUIRE((zz.adjoint() * effects[2] * zz)(0).real() == Approx(0.5));
  }

  SECTION("each binary POVM is valid and measurable") {
    auto povms = epr_test_povms("q1", "q2");
    RegisterLayout layout({{"q1", 1, -1}, {"q2", 1, -1}});
    auto phi_state = QuantumState::pure_state(layout, phi);
    for (auto& povm : povms) {
      auto branches = measure_branches(phi_state, povm);
      REQUIRE(branches[0].probability == Approx(1.0).margin(1e-12));
    }
  }
}

TEST_CASE("block permutation", "[primitives]") {
  RegisterLayout layout(
      {{"b0", 2, -1}, {"b1", 2, -1}, {"b2", 2, -1}});
  const std::vector<std::vector<std::string>> blocks{{"b0"}, {"b1"}, {"b2"}};
  // Distinct basis contents 1, 2, 3.
  auto s = QuantumState::basis_state(layout, (1 << 4) | (2 << 2) | 3);

  SECTION("identity permutation") {
    auto t = permute_blocks(s, blocks, std::vector<int>{0, 1, 2});
    REQUIRE((t.amplitudes() - s.amplitudes()).norm() <= 1e-12);
  }

  SECTION("permutation then inverse") {
    auto t = permute_blocks(s, blocks, std::vector<int>{2, 0, 1});
    auto back = permute_blocks(t, blocks, std::vector<int>{1, 2, 0});
    REQUIRE((back.amplitudes() - s.amplitudes()).norm() <= 1e-12);
  }

  SECTION("basis bookkeeping") {
    // New block i carries what block perm[i] held.
    auto t = permute_blocks(s, blocks, std::vector<int>{2, 0, 1});
    const std::uint64_t expected = (3ULL << 4) | (1ULL << 2) | 2ULL;
    REQUIRE(std::abs(t.amplitudes()(static_cast<Eigen::Index>(expected))) ==
            Approx(1.0));
  }

  SECTION("unequal block sizes rejected") {
    RegisterLayout uneven({{"b0", 2, -1}, {"b1", 1, -1}});
    auto u = QuantumState::zero_state(uneven);
    REQUIRE_THROWS_AS(
        permute_blocks(u, {{"b0"}, {"b1"}}, std::vector<int>{1, 0}),
        ArgumentError);
  }

  SECTION("random states: permuting and un-permuting round-trips") {
    auto r = test::rng(53);
    auto s2 = haar_random_pure(layout, r);
    std::vector<int> perm{1, 2, 0}, inv{2, 0, 1};
    auto round = permute_blocks(permute_blocks(s2, blocks, perm), blocks, inv);
    REQUIRE((round.amplitudes() - s2.amplitudes()).norm() <= 1e-12);
  }
}
