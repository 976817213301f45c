// Copyright 2025 The wignerlab Authors.
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

#include "wignerlab/pbr.hpp"

#include <cmath>
#include <numbers>

namespace wignerlab::pbr {

namespace {
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
constexpr double kDegenerateTol = 1e-12;
}  // namespace

ChoiceAmplitudes::ChoiceAmplitudes(Complex alpha, Complex beta) {
    const double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
    if (norm < 1e-150) {
        throw ZeroNorm("choice amplitudes have zero norm");
    }
    alpha /= norm;
    beta /= norm;
    // Fix the global phase: alpha real >= 0 (beta carries the relative
    // phase); if alpha vanishes, make beta real >= 0 instead.
    const Complex anchor = std::abs(alpha) > kDegenerateTol ? alpha : beta;
    const Complex phase = std::conj(anchor) / std::abs(anchor);
    alpha_ = alpha * phase;
    beta_ = beta * phase;
    alpha_ = Complex(std::abs(alpha_) > kDegenerateTol ? alpha_.real() : 0.0, 0.0);
}

bool ChoiceAmplitudes::degenerate() const {
    return std::norm(alpha_) < kDegenerateTol || std::norm(beta_) < kDegenerateTol;
}

ChoiceAmplitudes ChoiceAmplitudes::balanced() {
    return ChoiceAmplitudes(kInvSqrt2, kInvSqrt2);
}

ProjectiveMeasurement xi_basis(const std::string& left, const std::string& right) {
    using Amp = qsim::AmpVector;
    const std::vector<std::string> labels{left, right};

    // Basis order |00>,|01>,|10>,|11> over (left, right).
    Amp xi1(4), xi2(4), xi3(4), xi4(4);
    xi1 << 0.0, kInvSqrt2, kInvSqrt2, 0.0;             // (|01> + |10>)/sqrt2
    xi2 << 0.5, -0.5, 0.5, 0.5;                        // (|0-> + |1+>)/sqrt2
    xi3 << 0.5, 0.5, -0.5, 0.5;                        // (|+1> + |-0>)/sqrt2
    xi4 << kInvSqrt2, 0.0, 0.0, -kInvSqrt2;            // (|+-> + |-+>)/sqrt2

    return ProjectiveMeasurement({{"xi1", StateVector(labels, xi1)},
                                  {"xi2", StateVector(labels, xi2)},
                                  {"xi3", StateVector(labels, xi3)},
                                  {"xi4", StateVector(labels, xi4)}});
}

StateVector preparation(const ChoiceAmplitudes& choice, const std::string& token_label,
                        const std::string& lab_label) {
    qsim::AmpVector amps(4);
    amps << choice.alpha(), 0.0, 0.0, choice.beta();
    return StateVector({token_label, lab_label}, amps);
}

ProjectiveMeasurement gamma_basis(const ChoiceAmplitudes& choice,
                                  const std::string& subsystem) {
    if (choice.degenerate()) {
        throw DegenerateChoice("no decoding basis for a deterministic choice");
    }
    // Gamma = N (1/alpha*)|0> + N (1/beta*)|1> with N = |alpha||beta| real,
    // so gamma*alpha = delta*beta = N and post-selection collapses the lab
    // qubit onto (|0> + |1>)/sqrt2 exactly.
    const Complex gamma_raw = 1.0 / std::conj(choice.alpha());
    const Complex delta_raw = 1.0 / std::conj(choice.beta());
    const double norm = std::sqrt(std::norm(gamma_raw) + std::norm(delta_raw));
    const Complex gamma = gamma_raw / norm;
    const Complex delta = delta_raw / norm;

    qsim::AmpVector state(2), orth(2);
    state << gamma, delta;
    orth << std::conj(delta), -std::conj(gamma);
    return ProjectiveMeasurement({{"Gamma", StateVector({subsystem}, state)},
                                  {"notGamma", StateVector({subsystem}, orth)}});
}

OutcomeDistribution pbr_zero_table(const StateVector& prep_left,
                                   const StateVector& prep_right) {
    if (prep_left.num_qubits() != 1 || prep_right.num_qubits() != 1) {
        throw DimensionMismatch("preparations must be single-qubit states");
    }
    const StateVector product =
        qsim::tensor(prep_left.relabeled({"q0"}), prep_right.relabeled({"q1"}));
    return qsim::joint_distribution(product, {xi_basis("q0", "q1")});
}

}  // namespace wignerlab::pbr
