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

/**
 * PBR-style measurement construction: the entangled four-outcome basis that
 * antidistinguishes the product preparations {|0>,|+>}^2, the entangled
 * choice-record preparations, and the decoding basis whose post-selection
 * collapses a record qubit onto |+> for arbitrary choice amplitudes.
 */

#pragma once

#include <string>

#include "wignerlab/qsim.hpp"

namespace wignerlab::pbr {

using qsim::Complex;
using qsim::OutcomeDistribution;
using qsim::ProjectiveMeasurement;
using qsim::StateVector;

/// Amplitudes (alpha, beta) of a binary choice. Normalized, with the global
/// phase fixed so that alpha is real and >= 0.
class ChoiceAmplitudes {
  public:
    ChoiceAmplitudes(Complex alpha, Complex beta);

    Complex alpha() const { return alpha_; }
    Complex beta() const { return beta_; }

    /// True iff the choice is effectively deterministic (|alpha| in {0,1}),
    /// in which case no decoding basis exists.
    bool degenerate() const;

    /// Balanced choice, amplitudes 1/sqrt(2) each.
    static ChoiceAmplitudes balanced();

  private:
    Complex alpha_;
    Complex beta_;
};

/// Four-outcome entangled measurement {xi1..xi4} on two qubits; each element
/// is orthogonal to exactly one of |00>, |0+>, |+0>, |++> (in that order).
ProjectiveMeasurement xi_basis(const std::string& left, const std::string& right);

/// Entangled record of a choice: alpha|00> + beta|11> on (token, lab).
StateVector preparation(const ChoiceAmplitudes& choice, const std::string& token_label,
                        const std::string& lab_label);

/// Two-outcome decoding basis {Gamma, notGamma} on one token qubit with
/// Gamma proportional to (1/alpha*)|0> + (1/beta*)|1>, so that post-selecting
/// Gamma on preparation(choice) leaves the lab qubit exactly in |+>. The
/// construction keeps gamma*alpha == delta*beta (both equal to |alpha||beta|).
/// Throws DegenerateChoice when |alpha| is 0 or 1.
ProjectiveMeasurement gamma_basis(const ChoiceAmplitudes& choice,
                                  const std::string& subsystem);

/// Distribution of the xi measurement on a product of two single-qubit
/// preparations. Outcome tuples have arity 1 with labels "xi1".."xi4".
OutcomeDistribution pbr_zero_table(const StateVector& prep_left,
                                   const StateVector& prep_right);

}  // namespace wignerlab::pbr
