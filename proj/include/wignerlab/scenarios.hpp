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
 * Measurement scenarios for the entanglement-swapping choice protocol: the
 * main three-party protocol (token decoders Charlie/Debbie plus the
 * superobserver Wigner), the two-party minimal variant, exact table
 * generation, conditional distributions and finite-sample tomography of
 * choice amplitudes.
 */

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wignerlab/empirical.hpp"
#include "wignerlab/pbr.hpp"
#include "wignerlab/qsim.hpp"

namespace wignerlab::scenarios {

using empirical::Context;
using empirical::EmpiricalModel;
using empirical::Signature;
using pbr::ChoiceAmplitudes;
using qsim::Complex;
using qsim::OutcomeDistribution;
using qsim::ProjectiveMeasurement;
using qsim::StateVector;
using qsim::Tuple;

/// One agent with named measurement settings, all acting on the same
/// subsystem set.
class Party {
  public:
    Party(std::string name,
          std::vector<std::pair<std::string, ProjectiveMeasurement>> settings);

    const std::string& name() const { return name_; }
    const std::vector<std::pair<std::string, ProjectiveMeasurement>>& settings() const {
        return settings_;
    }
    const ProjectiveMeasurement& setting(const std::string& label) const;

  private:
    std::string name_;
    std::vector<std::pair<std::string, ProjectiveMeasurement>> settings_;
};

/// Shared state plus parties measuring pairwise disjoint subsystems.
class Scenario {
  public:
    Scenario(StateVector state, std::vector<Party> parties);

    const StateVector& state() const { return state_; }
    const std::vector<Party>& parties() const { return parties_; }
    Signature signature() const;

  private:
    StateVector state_;
    std::vector<Party> parties_;
};

/// Computational product basis on two lab qubits with the paired outcome
/// labels "(00)", "(01)", "(10)", "(11)".
ProjectiveMeasurement reveal_basis(const std::string& lab_left,
                                   const std::string& lab_right);

/// The main protocol, flattened to commuting spacelike measurements:
///  - state: preparation(choice_A) on (T_A, L_A) x preparation(choice_B) on
///    (T_B, L_B);
///  - Charlie: x=0 decodes T_A in the Z basis, x=1 measures the decoding
///    basis of choice_A (the X basis, labeled "+"/"-", when the choice is
///    balanced);
///  - Debbie: the same on T_B with choice_B;
///  - Wigner: z=0 reveals both labs in the paired computational basis, z=1
///    performs the entangled four-outcome measurement on L_A x L_B.
Scenario main_scenario(const ChoiceAmplitudes& choice_a, const ChoiceAmplitudes& choice_b);

/// Two-party Hardy-type variant: state (|00> + |01> + |11>)/sqrt3 on (A, S),
/// Wigner choosing Z/X on A and Bob choosing Z/X on S.
Scenario minimal_scenario();

/// Exact Born-rule table for every context of the scenario. Contexts are
/// computed independently and may run in parallel (capped by the
/// WIGNERLAB_THREADS environment variable).
EmpiricalModel generate_table(const Scenario& scenario);

/// Renormalized distribution over the unconditioned parties' outcomes, given
/// fixed outcomes for a subset of parties in one context.
OutcomeDistribution conditional(const EmpiricalModel& model, const Context& context,
                                const std::map<std::string, std::string>& condition);

/// Finite-sample estimate of choice amplitudes.
struct TomographyEstimate {
    Complex alpha_hat;
    Complex beta_hat;
    std::int64_t n_samples = 0;
    double stderr_est = 0.0;
};

/// Estimates (alpha, beta) from seeded measurements on copies of
/// preparation(choice): ZZ counts fix the moduli, XX and XY correlators fix
/// the relative phase. Draws `n` samples per measurement setting. The output
/// is normalized with alpha_hat real and >= 0.
TomographyEstimate tomography(const ChoiceAmplitudes& choice, std::int64_t n,
                              std::uint64_t seed);

/// Parallelism cap honored by generate_table: value of WIGNERLAB_THREADS if
/// set (minimum 1), else the hardware concurrency.
int thread_cap();

}  // namespace wignerlab::scenarios
