#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "qnlp/ansatz.hpp"
#include "qnlp/simulator.hpp"
#include "support/contraction_oracle.hpp"
#include "support/generators.hpp"

using namespace qnlp;
using qnlp::testing::random_angle;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Statevector random_state(std::mt19937_64& rng, int n) {
    Statevector sv = Statevector::zero(n);
    for (Eigen::Index i = 0; i < sv.amps.size(); ++i) {
        sv.amps[i] = std::complex<double>(qnlp::testing::uniform01(rng) - 0.5,
                                          qnlp::testing::uniform01(rng) - 0.5);
    }
    sv.amps.normalize();
    return sv;
}

}  // namespace

TEST_CASE("hadamard on |0>") {
    Statevector sv = apply_gate(Statevector::zero(1), {GateKind::H, {0}, std::nullopt});
    CHECK(std::abs(sv.amps[0] - kInvSqrt2) < 1e-15);
    CHECK(std::abs(sv.amps[1] - kInvSqrt2) < 1e-15);
}

TEST_CASE("diagonal rotations leave basis-state magnitudes alone") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        Statevector sv = Statevector::zero(1);
        sv = apply_gate(std::move(sv), {GateKind::RZ, {0}, std::nullopt}, random_angle(rng));
        sv = apply_gate(std::move(sv), {GateKind::RX, {0}, std::nullopt}, 0.0);
        sv = apply_gate(std::move(sv), {GateKind::RZ, {0}, std::nullopt}, random_angle(rng));
        CHECK(std::abs(std::abs(sv.amps[0]) - 1.0) < 1e-12);
        CHECK(std::abs(sv.amps[1]) < 1e-12);
    }
}

TEST_CASE("CRz phases |11> by e^{i theta/2}") {
    Statevector sv = Statevector::zero(2);
    sv.amps[0] = 0;
    sv.amps[3] = 1;  // |11>
    sv = apply_gate(std::move(sv), {GateKind::CRZ, {0, 1}, std::nullopt}, M_PI);
    const std::complex<double> expected(0, 1);
    CHECK(std::abs(sv.amps[3] - expected) < 1e-15);
}

TEST_CASE("qubit 0 is the most significant bit") {
    // Rx(pi) = -iX flips the target qubit.
    for (int n = 1; n <= 4; ++n) {
        Statevector sv = apply_gate(Statevector::zero(n), {GateKind::RX, {0}, std::nullopt}, M_PI);
        const int64_t hit = int64_t{1} << (n - 1);
        CHECK(std::abs(std::abs(sv.amps[hit]) - 1.0) < 1e-12);
        for (Eigen::Index i = 0; i < sv.amps.size(); ++i) {
            if (i != hit) {
                CHECK(std::abs(sv.amps[i]) < 1e-12);
            }
        }
    }
}

TEST_CASE("gate matrices are unitary") {
    std::mt19937_64 rng(9);
    auto check_unitary = [](const Eigen::MatrixXcd& u) {
        const Eigen::MatrixXcd delta =
            u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
        CHECK(delta.cwiseAbs().maxCoeff() <= 1e-12);
    };
    check_unitary(gate_matrix_1q(GateKind::H));
    check_unitary(gate_matrix_2q(GateKind::CNOT));
    for (int i = 0; i < 25; ++i) {
        const double t = random_angle(rng);
        check_unitary(gate_matrix_1q(GateKind::RZ, t));
        check_unitary(gate_matrix_1q(GateKind::RX, t));
        check_unitary(gate_matrix_2q(GateKind::CRZ, t));
    }
}

TEST_CASE("gate argument validation") {
    Statevector sv = Statevector::zero(2);
    CHECK_THROWS_AS(apply_gate(sv, {GateKind::H, {2}, std::nullopt}), std::out_of_range);
    CHECK_THROWS_AS(apply_gate(sv, {GateKind::RZ, {0}, std::nullopt}), std::invalid_argument);
    CHECK_THROWS_AS(apply_gate(sv, {GateKind::H, {0}, std::nullopt}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(apply_gate(sv, {GateKind::CNOT, {0, 0}, std::nullopt}),
                    std::invalid_argument);
    CHECK_THROWS_AS(apply_gate(sv, {GateKind::CNOT, {0}, std::nullopt}), std::invalid_argument);
}

TEST_CASE("postselection projects and drops the qubit") {
    Statevector plus = Statevector::zero(2);
    plus.amps[0] = kInvSqrt2;  // |00>
    plus.amps[2] = kInvSqrt2;  // |10>
    const Statevector kept = postselect(plus, 0, 0);
    REQUIRE(kept.n == 1);
    CHECK(std::abs(kept.amps[0] - kInvSqrt2) < 1e-15);
    CHECK(std::abs(kept.amps[1]) < 1e-15);

    Statevector one = Statevector::zero(1);
    one.amps[0] = 0;
    one.amps[1] = 1;
    const Statevector none = postselect(one, 0, 0);
    CHECK(none.n == 0);
    CHECK(none.squared_norm() < 1e-15);

    CHECK_THROWS_AS(postselect(plus, 5, 0), std::out_of_range);
}

TEST_CASE("postselection never grows the norm") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + qnlp::testing::pick(rng, 5);
        const Statevector sv = random_state(rng, n);
        const int q = qnlp::testing::pick(rng, n);
        const Statevector after = postselect(sv, q, qnlp::testing::pick(rng, 2));
        CHECK(after.squared_norm() <= sv.squared_norm() + 1e-12);
    }
}

TEST_CASE("postselection-free circuits preserve the norm") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        ParameterTable table;
        const int width = 1 + qnlp::testing::pick(rng, 8);
        const CircuitIR c = qnlp::testing::random_circuit(
            rng, width, 5 + qnlp::testing::pick(rng, 20), table, "t" + std::to_string(trial));
        const Statevector sv = run_gates(c, table);
        CHECK(std::abs(sv.squared_norm() - 1.0) < 1e-10);
        const OutcomeDistribution dist = run(c, table);
        CHECK(std::abs(dist.success_weight - 1.0) < 1e-10);
        double total = 0;
        for (const auto& [bits, prob] : dist.probabilities) {
            total += prob;
        }
        CHECK(std::abs(total - 1.0) < 1e-12);
    }
}

TEST_CASE("bell effect on |00> leaves amplitude 1/sqrt2") {
    CircuitIR c;
    c.width = 2;
    c.gates = {{GateKind::CNOT, {0, 1}, std::nullopt}, {GateKind::H, {0}, std::nullopt}};
    c.postselect = {0, 1};
    ParameterTable table;
    const OutcomeDistribution dist = run(c, table);
    REQUIRE(dist.raw_amplitudes.size() == 1);
    CHECK(std::abs(dist.raw_amplitudes.at("") - kInvSqrt2) < 1e-12);
    CHECK(std::abs(dist.success_weight - 0.5) < 1e-12);
}

TEST_CASE("ghz(2) measures half-half") {
    CircuitIR c;
    c.width = 2;
    c.gates = ghz_circuit(2);
    c.measured = {0, 1};
    ParameterTable table;
    const OutcomeDistribution dist = run(c, table);
    CHECK(dist.probabilities.at("00") == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(dist.probabilities.at("11") == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(dist.probabilities.at("01") == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(dist.probabilities.at("10") == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("zero success weight is flagged, not fatal") {
    // Rx(pi) sends |0> to (numerically) |1>; postselecting 0 leaves at
    // most a ~1e-17 residue, well under the degeneracy threshold.
    CircuitIR c;
    c.width = 1;
    c.gates = {{GateKind::RX, {0}, "flip__0"}};
    c.postselect = {0};
    ParameterTable table;
    table.ensure("flip__0", M_PI);
    const OutcomeDistribution dist = run(c, table);
    CHECK(dist.success_weight < 1e-12);

    // An exactly-zero projection keeps all-zero probabilities.
    Statevector one = Statevector::zero(1);
    one.amps[0] = 0;
    one.amps[1] = 1;
    const Statevector none = postselect(one, 0, 0);
    CHECK(none.squared_norm() == 0.0);
}

TEST_CASE("width guard and qubit partition are enforced") {
    CircuitIR wide;
    wide.width = kMaxSimQubits + 1;
    ParameterTable table;
    CHECK_THROWS(run_gates(wide, table));

    CircuitIR overlap;
    overlap.width = 1;
    overlap.postselect = {0};
    overlap.measured = {0};
    CHECK_THROWS_AS(run(overlap, table), ConfigError);
}

TEST_CASE("run matches the contraction oracle on both example sentences") {
    const Lexicon lex = seed_lexicon();
    const AnsatzConfig cfg;
    std::mt19937_64 rng(19);
    for (const auto& tokens : {std::vector<std::string>{"Main", "School", "jaata", "hu"},
                               std::vector<std::string>{"Mukesh", "ne", "khaana", "khaya"}}) {
        const Diagram d = parse_sentence(tokens, lex);
        for (int trial = 0; trial < 25; ++trial) {
            CompiledCircuit cc = compile(d, cfg);
            for (const auto& name : cc.params.names()) {
                cc.params.set(name, random_angle(rng));
            }
            const OutcomeDistribution sim = run(cc.circuit, cc.params);
            const OutcomeDistribution oracle =
                qnlp::testing::contract_diagram_oracle(d, cc.params, cfg);
            for (const auto& [bits, amp] : oracle.raw_amplitudes) {
                CHECK(std::abs(sim.raw_amplitudes.at(bits) - amp) < 1e-10);
            }
            CHECK(std::abs(sim.success_weight - oracle.success_weight) < 1e-10);
        }
    }
}

TEST_CASE("oracle handles the trivial one-word diagram") {
    const Lexicon tiny = make_lexicon({"s"}, {{"yes", {"s"}}});
    const Diagram d = parse_sentence({"yes"}, tiny);
    CompiledCircuit cc = compile(d, AnsatzConfig{});
    std::mt19937_64 rng(29);
    for (const auto& name : cc.params.names()) {
        cc.params.set(name, random_angle(rng));
    }
    const OutcomeDistribution sim = run(cc.circuit, cc.params);
    const OutcomeDistribution oracle =
        qnlp::testing::contract_diagram_oracle(d, cc.params, AnsatzConfig{});
    for (const auto& [bits, amp] : oracle.raw_amplitudes) {
        CHECK(std::abs(sim.raw_amplitudes.at(bits) - amp) < 1e-12);
    }
}

TEST_CASE("oracle agreement with wider wires") {
    const Lexicon lex = make_lexicon({"n", "s"}, {
                                                     {"noun", {"n"}},
                                                     {"verb", {"n.r", "s"}},
                                                 });
    AnsatzConfig cfg;
    cfg.qubits_per_type = {{"n", 2}, {"s", 1}};
    const Diagram d = parse_sentence({"noun", "verb"}, lex);
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 25; ++trial) {
        CompiledCircuit cc = compile(d, cfg);
        for (const auto& name : cc.params.names()) {
            cc.params.set(name, random_angle(rng));
        }
        const OutcomeDistribution sim = run(cc.circuit, cc.params);
        const OutcomeDistribution oracle = qnlp::testing::contract_diagram_oracle(d, cc.params, cfg);
        for (const auto& [bits, amp] : oracle.raw_amplitudes) {
            CHECK(std::abs(sim.raw_amplitudes.at(bits) - amp) < 1e-10);
        }
    }
}
