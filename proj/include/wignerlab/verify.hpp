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
 * Built-in verification checklist: recomputes every headline prediction of
 * the choice protocol (antidistinguishing zeros, conditional protocol zeros,
 * the contextuality witness, global-distribution infeasibility, the minimal
 * Hardy-type variant, the generalized decoding construction, tomography
 * accuracy and the structural model properties) and reports one pass/fail
 * claim each, with runtime budgets.
 */

#pragma once

#include <string>
#include <vector>

#include "wignerlab/empirical.hpp"
#include "wignerlab/qsim.hpp"

namespace wignerlab::verify {

struct ClaimResult {
    std::string name;
    bool pass = false;
    double runtime_ms = 0.0;
    std::string detail;
};

/// Four paired zeros of the antidistinguishing measurement plus the exact
/// (0, 1/4, 1/4, 1/2) distribution on the doubly-zero preparation.
/// Budget 1 ms.
ClaimResult check_antidistinguishing_zeros();
ClaimResult check_antidistinguishing_zeros(const qsim::ProjectiveMeasurement& basis);

/// The four conditional zeros of the balanced protocol table and the 1/16
/// positivity that contradicts them classically. Budget 10 ms.
ClaimResult check_protocol_zeros();
ClaimResult check_protocol_zeros(const empirical::EmpiricalModel& table);

/// Possibilistic analysis of the balanced table returns logically-contextual
/// with the exact witness (x=1, y=1, z=0), (+, +, (00)). Budget 1 s.
ClaimResult check_contextuality_witness();
ClaimResult check_contextuality_witness(const empirical::EmpiricalModel& table);

/// LHV linear program on the balanced table is infeasible with a re-verified
/// certificate margin > 1e-6; the single-context control stays feasible.
/// Budget 5 s.
ClaimResult check_global_infeasibility();
ClaimResult check_global_infeasibility(const empirical::EmpiricalModel& table);

/// Hardy-type zeros, the 1/12 flash probability, CHSH = 7/3 and LHV
/// infeasibility of the minimal two-party scenario. Budget 1 s.
ClaimResult check_minimal_scenario();

/// For 100 seeded random choice amplitudes: decoding post-selection leaves
/// the lab exactly in |+> (fidelity within 1e-10) and the generalized table
/// keeps all four conditional zeros within 1e-12.
ClaimResult check_generalized_choices();

/// Tomography at n = 10^6 recovers |alpha|^2 within 5e-3 for
/// |alpha|^2 in {0.5, 1/3, 0.81}, across 10 seeds each. Budget 30 s.
ClaimResult check_tomography();

/// Structural properties: no-signalling of every generated table at 1e-9,
/// normalization, basis orthonormality and completeness, support
/// monotonicity, JSON round-trip identity.
ClaimResult check_model_properties();

/// Runs the full checklist in order.
std::vector<ClaimResult> run_verification();

}  // namespace wignerlab::verify
