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

#include "wignerlab/verify.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "wignerlab/analysis.hpp"
#include "wignerlab/pbr.hpp"
#include "wignerlab/scenarios.hpp"

namespace wignerlab::verify {

namespace {

using empirical::Context;
using empirical::EmpiricalModel;
using pbr::ChoiceAmplitudes;
using qsim::Tuple;

constexpr double kZeroTol = 1e-12;

template <typename Body>
ClaimResult timed_claim(std::string name, double budget_ms, Body&& body) {
    ClaimResult result;
    result.name = std::move(name);
    std::ostringstream detail;
    const auto start = std::chrono::steady_clock::now();
    bool pass = false;
    try {
        pass = body(detail);
    } catch (const std::exception& err) {
        detail << "exception: " << err.what();
    }
    const auto stop = std::chrono::steady_clock::now();
    result.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    if (pass && budget_ms > 0.0 && result.runtime_ms >= budget_ms) {
        pass = false;
        detail << "; exceeded " << budget_ms << " ms budget";
    }
    result.pass = pass;
    result.detail = detail.str();
    return result;
}

EmpiricalModel balanced_table() {
    return scenarios::generate_table(scenarios::main_scenario(ChoiceAmplitudes::balanced(),
                                                              ChoiceAmplitudes::balanced()));
}

// Uniform double in [0, 1) from raw 64-bit draws, platform-independent.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

ChoiceAmplitudes random_choice(std::mt19937_64& rng) {
    const double weight = 0.05 + 0.9 * uniform01(rng);
    const double phase = 2.0 * std::numbers::pi * uniform01(rng);
    return ChoiceAmplitudes(std::sqrt(weight),
                            std::sqrt(1.0 - weight) *
                                qsim::Complex(std::cos(phase), std::sin(phase)));
}

// The four conditional zeros of a protocol table, using the actual outcome
// labels of the decoding settings ("+" for balanced choices, "Gamma"
// otherwise). Returns the largest of the four conditional probabilities.
double max_conditional_zero(const EmpiricalModel& table) {
    const auto& signature = table.signature();
    const std::string decode_a = signature[0].settings[1].outcomes[0];
    const std::string decode_b = signature[1].settings[1].outcomes[0];

    double worst = table.table({"0", "0", "1"}).prob(Tuple{"0", "0", "xi1"});
    worst = std::max(worst, scenarios::conditional(table, {"0", "1", "1"},
                                                   {{"Charlie", "0"}, {"Debbie", decode_b}})
                                .prob("xi2"));
    worst = std::max(worst, scenarios::conditional(table, {"1", "0", "1"},
                                                   {{"Charlie", decode_a}, {"Debbie", "0"}})
                                .prob("xi3"));
    worst = std::max(worst,
                     scenarios::conditional(table, {"1", "1", "1"},
                                            {{"Charlie", decode_a}, {"Debbie", decode_b}})
                         .prob("xi4"));
    return worst;
}

}  // namespace

ClaimResult check_antidistinguishing_zeros() {
    return check_antidistinguishing_zeros(pbr::xi_basis("q0", "q1"));
}

ClaimResult check_antidistinguishing_zeros(const qsim::ProjectiveMeasurement& basis) {
    return timed_claim("pbr-antidistinguishing-zeros", 1.0, [&](std::ostringstream& detail) {
        const auto& subsystems = basis.subsystems();
        if (subsystems.size() != 2) {
            detail << "basis must act on two qubits";
            return false;
        }
        const std::array<qsim::StateVector, 2> preps_left = {
            qsim::basis_state(subsystems[0], 0), qsim::plus_state(subsystems[0])};
        const std::array<qsim::StateVector, 2> preps_right = {
            qsim::basis_state(subsystems[1], 0), qsim::plus_state(subsystems[1])};
        const char* paired[2][2] = {{"xi1", "xi2"}, {"xi3", "xi4"}};

        double worst = 0.0;
        for (int s = 0; s < 2; ++s) {
            for (int t = 0; t < 2; ++t) {
                const auto dist = qsim::joint_distribution(
                    qsim::tensor(preps_left[s], preps_right[t]), {basis});
                worst = std::max(worst, dist.prob(paired[s][t]));
            }
        }
        const auto zero_zero =
            qsim::joint_distribution(qsim::tensor(preps_left[0], preps_right[0]), {basis});
        const double table_error = std::max(
            {std::abs(zero_zero.prob("xi1") - 0.0), std::abs(zero_zero.prob("xi2") - 0.25),
             std::abs(zero_zero.prob("xi3") - 0.25), std::abs(zero_zero.prob("xi4") - 0.5)});

        detail << "max paired probability " << worst << " (expected 0), |00> table error "
               << table_error;
        return worst <= kZeroTol && table_error <= kZeroTol;
    });
}

ClaimResult check_protocol_zeros() { return check_protocol_zeros(balanced_table()); }

ClaimResult check_protocol_zeros(const EmpiricalModel& table) {
    return timed_claim("protocol-conditional-zeros", 10.0, [&](std::ostringstream& detail) {
        const double worst = max_conditional_zero(table);
        const double flash = table.table({"1", "1", "0"}).prob(Tuple{"+", "+", "(00)"});
        detail << "max conditional zero " << worst << ", P(+,+,(00)|1,1,0) = " << flash
               << " (expected 0.0625)";
        return worst <= kZeroTol && std::abs(flash - 0.0625) <= kZeroTol;
    });
}

ClaimResult check_contextuality_witness() {
    return check_contextuality_witness(balanced_table());
}

ClaimResult check_contextuality_witness(const EmpiricalModel& table) {
    return timed_claim("logical-contextuality-witness", 1000.0,
                       [&](std::ostringstream& detail) {
                           const auto report = analysis::logical_contextuality(
                               empirical::support(table, empirical::kDefaultSupportEpsilon));
                           const bool verdict_ok =
                               report.verdict == analysis::Verdict::kLogicallyContextual;
                           const bool witness_ok =
                               report.witness &&
                               report.witness->context == Context{"1", "1", "0"} &&
                               report.witness->outcome == Tuple{"+", "+", "(00)"};
                           detail << "verdict " << analysis::verdict_name(report.verdict);
                           if (report.witness) {
                               detail << ", witness ("
                                      << empirical::context_key(report.witness->context)
                                      << "), ("
                                      << empirical::tuple_key(report.witness->outcome)
                                      << ")";
                           }
                           detail << " (expected (1|1|0), (+,+,(00)))";
                           return verdict_ok && witness_ok;
                       });
}

ClaimResult check_global_infeasibility() {
    return check_global_infeasibility(balanced_table());
}

ClaimResult check_global_infeasibility(const EmpiricalModel& table) {
    return timed_claim(
        "global-distribution-infeasibility", 5000.0, [&](std::ostringstream& detail) {
            const auto report = analysis::lhv_feasibility(table, analysis::kDefaultLpTol);
            if (report.verdict != analysis::Verdict::kLhvInfeasible || !report.certificate) {
                detail << "verdict " << analysis::verdict_name(report.verdict)
                       << " (expected lhv-infeasible)";
                return false;
            }
            const double margin = report.certificate->margin;

            // Control: any single context admits a global distribution.
            empirical::Signature control_signature;
            for (const auto& party : table.signature()) {
                control_signature.push_back({party.name, {party.settings.front()}});
            }
            Context control_context;
            for (const auto& party : control_signature) {
                control_context.push_back(party.settings.front().label);
            }
            const EmpiricalModel control(
                control_signature, {{control_context, table.table(control_context)}});
            const auto control_report =
                analysis::lhv_feasibility(control, analysis::kDefaultLpTol);
            const bool control_ok =
                control_report.verdict == analysis::Verdict::kLocal &&
                !control_report.weights.empty();

            detail << "certificate margin " << margin << " (required > 1e-6), control "
                   << analysis::verdict_name(control_report.verdict);
            return margin > 1e-6 && control_ok;
        });
}

ClaimResult check_minimal_scenario() {
    return timed_claim("minimal-scenario-hardy-chain", 1000.0, [&](std::ostringstream&
                                                                       detail) {
        const auto table = scenarios::generate_table(scenarios::minimal_scenario());
        const double z1 = table.table({"0", "0"}).prob(Tuple{"1", "0"});
        const double z2 = table.table({"0", "1"}).prob(Tuple{"0", "-"});
        const double z3 = table.table({"1", "0"}).prob(Tuple{"-", "1"});
        const double flash = table.table({"1", "1"}).prob(Tuple{"-", "-"});
        const double chsh_value = analysis::chsh(
            table, "Wigner", "Bob", {{"0", 1}, {"1", -1}, {"+", 1}, {"-", -1}});
        const auto report = analysis::lhv_feasibility(table, analysis::kDefaultLpTol);

        const double max_zero = std::max({z1, z2, z3});
        detail << "max Hardy zero " << max_zero << ", P(-,-|1,1) = " << flash
               << " (expected 1/12), CHSH = " << chsh_value << " (expected 7/3), verdict "
               << analysis::verdict_name(report.verdict);
        return max_zero <= kZeroTol && std::abs(flash - 1.0 / 12.0) <= kZeroTol &&
               std::abs(chsh_value - 7.0 / 3.0) <= kZeroTol &&
               report.verdict == analysis::Verdict::kLhvInfeasible;
    });
}

ClaimResult check_generalized_choices() {
    return timed_claim("generalized-choice-decoding", 0.0, [&](std::ostringstream& detail) {
        std::mt19937_64 rng(20250810);
        double worst_fidelity_gap = 0.0;
        double worst_zero = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const ChoiceAmplitudes choice_a = random_choice(rng);
            const ChoiceAmplitudes choice_b = random_choice(rng);

            const auto prep = pbr::preparation(choice_a, "T", "L");
            const auto [lab_state, probability] =
                qsim::post_select(prep, pbr::gamma_basis(choice_a, "T"), "Gamma");
            const double fidelity =
                std::norm(qsim::inner(qsim::plus_state("L"), lab_state));
            worst_fidelity_gap = std::max(worst_fidelity_gap, std::abs(fidelity - 1.0));

            const auto table = scenarios::generate_table(
                scenarios::main_scenario(choice_a, choice_b));
            worst_zero = std::max(worst_zero, max_conditional_zero(table));
        }
        detail << "worst |fidelity - 1| = " << worst_fidelity_gap
               << " (allowed 1e-10), worst conditional zero = " << worst_zero
               << " (allowed 1e-12), 100 random amplitude pairs";
        return worst_fidelity_gap <= 1e-10 && worst_zero <= kZeroTol;
    });
}

ClaimResult check_tomography() {
    return timed_claim("tomography-accuracy", 30000.0, [&](std::ostringstream& detail) {
        const double targets[] = {0.5, 1.0 / 3.0, 0.81};
        double worst = 0.0;
        for (const double target : targets) {
            const ChoiceAmplitudes choice(std::sqrt(target), std::sqrt(1.0 - target));
            for (std::uint64_t seed = 1; seed <= 10; ++seed) {
                const auto estimate = scenarios::tomography(choice, 1'000'000, seed);
                worst = std::max(worst,
                                 std::abs(std::norm(estimate.alpha_hat) - target));
            }
        }
        detail << "max | |alpha_hat|^2 - |alpha|^2 | = " << worst
               << " (allowed 5e-3) over 3 amplitudes x 10 seeds at n = 10^6";
        return worst < 5e-3;
    });
}

ClaimResult check_model_properties() {
    return timed_claim("model-properties", 0.0, [&](std::ostringstream& detail) {
        const auto symmetric = balanced_table();
        const auto minimal = scenarios::generate_table(scenarios::minimal_scenario());
        const auto skewed = scenarios::generate_table(scenarios::main_scenario(
            ChoiceAmplitudes(1.0 / std::numbers::sqrt3, std::sqrt(2.0 / 3.0)),
            ChoiceAmplitudes::balanced()));

        double max_signalling = 0.0;
        double max_norm_gap = 0.0;
        for (const auto* model : {&symmetric, &minimal, &skewed}) {
            max_signalling = std::max(
                max_signalling, empirical::no_signalling_report(*model, 1e-9).max_discrepancy);
            for (const auto& [context, table] : model->tables()) {
                double sum = 0.0;
                for (const auto& [outcome, p] : table.entries()) sum += p;
                max_norm_gap = std::max(max_norm_gap, std::abs(sum - 1.0));
            }
        }

        // Orthonormality and completeness of the entangled basis.
        const auto xi = pbr::xi_basis("q0", "q1");
        Eigen::MatrixXcd gram(4, 4), resolution = Eigen::MatrixXcd::Zero(4, 4);
        for (int i = 0; i < 4; ++i) {
            const auto& left = xi.outcomes()[i].projector.amplitudes();
            resolution += left * left.adjoint();
            for (int j = 0; j < 4; ++j) {
                gram(i, j) = left.dot(xi.outcomes()[j].projector.amplitudes());
            }
        }
        const double basis_error = std::max(
            (gram - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff(),
            (resolution - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff());

        // Support monotonicity on the balanced table.
        const auto loose = empirical::support(symmetric, 1e-12);
        const auto tight = empirical::support(symmetric, 1e-3);
        bool monotone = true;
        for (const auto& [context, tuples] : tight.possible()) {
            for (const auto& outcome : tuples) {
                monotone = monotone && loose.possible_at(context).count(outcome) > 0;
            }
        }

        const bool round_trip = empirical::from_json(empirical::to_json(symmetric)) ==
                                symmetric;

        detail << "max signalling " << max_signalling << ", max normalization gap "
               << max_norm_gap << ", basis error " << basis_error << ", support monotone "
               << (monotone ? "yes" : "no") << ", JSON round-trip "
               << (round_trip ? "exact" : "BROKEN");
        return max_signalling <= 1e-9 && max_norm_gap <= 1e-12 && basis_error <= 1e-12 &&
               monotone && round_trip;
    });
}

std::vector<ClaimResult> run_verification() {
    std::vector<ClaimResult> results;
    results.push_back(check_antidistinguishing_zeros());
    results.push_back(check_protocol_zeros());
    results.push_back(check_contextuality_witness());
    results.push_back(check_global_infeasibility());
    results.push_back(check_minimal_scenario());
    results.push_back(check_generalized_choices());
    results.push_back(check_tomography());
    results.push_back(check_model_properties());
    return results;
}

}  // namespace wignerlab::verify
