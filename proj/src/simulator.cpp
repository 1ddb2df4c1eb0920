#include "qnlp/simulator.hpp"

#include <stdexcept>

namespace qnlp {

using complexd = std::complex<double>;

Statevector Statevector::zero(int n) {
    if (n < 0 || n > kMaxSimQubits) {
        throw std::runtime_error("statevector width out of range: " + std::to_string(n));
    }
    Statevector sv;
    sv.n = n;
    sv.amps = Eigen::VectorXcd::Zero(int64_t{1} << n);
    sv.amps[0] = 1.0;
    return sv;
}

Eigen::Matrix2cd gate_matrix_1q(GateKind k, double theta) {
    Eigen::Matrix2cd m;
    const complexd i(0.0, 1.0);
    switch (k) {
        case GateKind::H:
            m << 1, 1, 1, -1;
            return m / std::sqrt(2.0);
        case GateKind::RZ:
            m << std::exp(-i * theta / 2.0), 0, 0, std::exp(i * theta / 2.0);
            return m;
        case GateKind::RX:
            m << std::cos(theta / 2), -i * std::sin(theta / 2),
                 -i * std::sin(theta / 2), std::cos(theta / 2);
            return m;
        default:
            throw std::invalid_argument("not a one-qubit gate: " + gate_name(k));
    }
}

Eigen::Matrix4cd gate_matrix_2q(GateKind k, double theta) {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
    const complexd i(0.0, 1.0);
    switch (k) {
        case GateKind::CNOT:
            m(2, 2) = m(3, 3) = 0;
            m(2, 3) = m(3, 2) = 1;
            return m;
        case GateKind::CRZ:
            m(2, 2) = std::exp(-i * theta / 2.0);
            m(3, 3) = std::exp(i * theta / 2.0);
            return m;
        default:
            throw std::invalid_argument("not a two-qubit gate: " + gate_name(k));
    }
}

namespace {

void check_gate(const Statevector& sv, const Gate& g, const std::optional<double>& theta) {
    if (static_cast<int>(g.qubits.size()) != arity(g.kind)) {
        throw std::invalid_argument("gate " + gate_name(g.kind) + " expects " +
                                    std::to_string(arity(g.kind)) + " qubits");
    }
    for (int q : g.qubits) {
        if (q < 0 || q >= sv.n) {
            throw std::out_of_range("qubit index " + std::to_string(q) + " out of range");
        }
    }
    if (g.qubits.size() == 2 && g.qubits[0] == g.qubits[1]) {
        throw std::invalid_argument("two-qubit gate needs distinct qubits");
    }
    if (is_parameterized(g.kind) != theta.has_value()) {
        throw std::invalid_argument(theta ? "gate " + gate_name(g.kind) + " takes no angle"
                                          : "gate " + gate_name(g.kind) + " needs an angle");
    }
}

}  // namespace

Statevector apply_gate(Statevector sv, const Gate& g, std::optional<double> theta) {
    check_gate(sv, g, theta);
    const double t = theta.value_or(0.0);
    if (arity(g.kind) == 1) {
        const Eigen::Matrix2cd u = gate_matrix_1q(g.kind, t);
        const int64_t mask = int64_t{1} << (sv.n - 1 - g.qubits[0]);
        for (int64_t idx = 0; idx < sv.amps.size(); ++idx) {
            if (idx & mask) {
                continue;
            }
            const complexd a0 = sv.amps[idx];
            const complexd a1 = sv.amps[idx | mask];
            sv.amps[idx] = u(0, 0) * a0 + u(0, 1) * a1;
            sv.amps[idx | mask] = u(1, 0) * a0 + u(1, 1) * a1;
        }
        return sv;
    }
    const Eigen::Matrix4cd u = gate_matrix_2q(g.kind, t);
    const int64_t cmask = int64_t{1} << (sv.n - 1 - g.qubits[0]);
    const int64_t tmask = int64_t{1} << (sv.n - 1 - g.qubits[1]);
    for (int64_t idx = 0; idx < sv.amps.size(); ++idx) {
        if ((idx & cmask) || (idx & tmask)) {
            continue;  // visit each 4-block once, from its 00 corner
        }
        const int64_t i00 = idx, i01 = idx | tmask, i10 = idx | cmask, i11 = idx | cmask | tmask;
        const Eigen::Vector4cd block(sv.amps[i00], sv.amps[i01], sv.amps[i10], sv.amps[i11]);
        const Eigen::Vector4cd next = u * block;
        sv.amps[i00] = next[0];
        sv.amps[i01] = next[1];
        sv.amps[i10] = next[2];
        sv.amps[i11] = next[3];
    }
    return sv;
}

Statevector postselect(Statevector sv, int qubit, int outcome) {
    if (qubit < 0 || qubit >= sv.n) {
        throw std::out_of_range("qubit index " + std::to_string(qubit) + " out of range");
    }
    if (outcome != 0 && outcome != 1) {
        throw std::invalid_argument("postselection outcome must be 0 or 1");
    }
    const int bit = sv.n - 1 - qubit;
    Statevector out;
    out.n = sv.n - 1;
    out.amps = Eigen::VectorXcd::Zero(int64_t{1} << out.n);
    const int64_t low_mask = (int64_t{1} << bit) - 1;
    for (int64_t idx = 0; idx < out.amps.size(); ++idx) {
        const int64_t src = ((idx & ~low_mask) << 1) | (int64_t{outcome} << bit) | (idx & low_mask);
        out.amps[idx] = sv.amps[src];
    }
    return out;
}

Statevector run_gates(const CircuitIR& c, const ParameterTable& p) {
    if (c.width > kMaxSimQubits) {
        throw std::runtime_error("circuit width " + std::to_string(c.width) + " exceeds the " +
                                 std::to_string(kMaxSimQubits) + "-qubit simulator guard");
    }
    Statevector sv = Statevector::zero(c.width);
    for (const auto& g : c.gates) {
        std::optional<double> theta;
        if (g.param) {
            theta = p.value(*g.param);
        } else if (is_parameterized(g.kind)) {
            throw ConfigError("parameterized gate without a parameter reference");
        }
        sv = apply_gate(std::move(sv), g, theta);
    }
    return sv;
}

OutcomeDistribution run(const CircuitIR& c, const ParameterTable& p) {
    std::vector<int> owner(c.width, 0);
    for (int q : c.postselect) {
        ++owner.at(q);
    }
    for (int q : c.measured) {
        ++owner.at(q);
    }
    for (int q = 0; q < c.width; ++q) {
        if (owner[q] != 1) {
            throw ConfigError("postselected and measured qubits must partition the circuit");
        }
    }
    const Statevector sv = run_gates(c, p);

    OutcomeDistribution dist;
    const int m = static_cast<int>(c.measured.size());
    for (int64_t key = 0; key < (int64_t{1} << m); ++key) {
        std::string bits(m, '0');
        for (int i = 0; i < m; ++i) {
            if (key & (int64_t{1} << (m - 1 - i))) {
                bits[i] = '1';
            }
        }
        dist.raw_amplitudes[bits] = 0.0;
    }
    for (int64_t idx = 0; idx < sv.amps.size(); ++idx) {
        bool keep = true;
        for (int q : c.postselect) {
            if (idx & (int64_t{1} << (sv.n - 1 - q))) {
                keep = false;
                break;
            }
        }
        if (!keep) {
            continue;
        }
        std::string bits(m, '0');
        for (int i = 0; i < m; ++i) {
            if (idx & (int64_t{1} << (sv.n - 1 - c.measured[i]))) {
                bits[i] = '1';
            }
        }
        dist.raw_amplitudes[bits] += sv.amps[idx];
    }
    for (const auto& [bits, amp] : dist.raw_amplitudes) {
        dist.success_weight += std::norm(amp);
    }
    for (const auto& [bits, amp] : dist.raw_amplitudes) {
        dist.probabilities[bits] =
            dist.success_weight > 0 ? std::norm(amp) / dist.success_weight : 0.0;
    }
    return dist;
}

}  // namespace qnlp
