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

#include "wignerlab/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <random>
#include <set>
#include <thread>

namespace wignerlab::scenarios {

Party::Party(std::string name,
             std::vector<std::pair<std::string, ProjectiveMeasurement>> settings)
    : name_(std::move(name)), settings_(std::move(settings)) {
    if (name_.empty()) throw Error("party name must be nonempty");
    if (settings_.empty()) throw Error("party '" + name_ + "' needs settings");
    std::set<std::string> labels;
    const auto& subsystems = settings_.front().second.subsystems();
    for (const auto& [label, measurement] : settings_) {
        if (!labels.insert(label).second) {
            throw LabelCollision("duplicate setting label '" + label + "'");
        }
        if (measurement.subsystems() != subsystems) {
            throw LabelMismatch("settings of party '" + name_ +
                                "' act on different subsystems");
        }
    }
}

const ProjectiveMeasurement& Party::setting(const std::string& label) const {
    for (const auto& [setting_label, measurement] : settings_) {
        if (setting_label == label) return measurement;
    }
    throw Error("party '" + name_ + "' has no setting '" + label + "'");
}

Scenario::Scenario(StateVector state, std::vector<Party> parties)
    : state_(std::move(state)), parties_(std::move(parties)) {
    if (parties_.empty()) throw Error("scenario needs at least one party");
    std::set<std::string> taken;
    for (const auto& party : parties_) {
        for (const auto& subsystem : party.settings().front().second.subsystems()) {
            if (!state_.has_label(subsystem)) {
                throw LabelMismatch("party '" + party.name() + "' measures subsystem '" +
                                    subsystem + "' absent from the state");
            }
            if (!taken.insert(subsystem).second) {
                throw OverlappingSubsystems("subsystem '" + subsystem +
                                            "' measured by two parties");
            }
        }
        for (const auto& [label, measurement] : party.settings()) {
            if (!measurement.complete()) {
                throw IncompleteMeasurement("setting '" + label + "' of party '" +
                                            party.name() + "' is incomplete");
            }
        }
    }
}

Signature Scenario::signature() const {
    Signature signature;
    for (const auto& party : parties_) {
        empirical::PartySignature entry;
        entry.name = party.name();
        for (const auto& [label, measurement] : party.settings()) {
            entry.settings.push_back({label, measurement.outcome_labels()});
        }
        signature.push_back(std::move(entry));
    }
    return signature;
}

ProjectiveMeasurement reveal_basis(const std::string& lab_left,
                                   const std::string& lab_right) {
    // Outcome "(ij)" pairs i on lab_left with j on lab_right regardless of
    // the canonical subsystem order.
    const bool swapped = lab_right < lab_left;
    std::vector<std::string> labels(4);
    for (int i = 0; i < 4; ++i) {
        const int high = (i >> 1) & 1;
        const int low = i & 1;
        const int left_bit = swapped ? low : high;
        const int right_bit = swapped ? high : low;
        labels[i] = "(" + std::to_string(left_bit) + std::to_string(right_bit) + ")";
    }
    return qsim::computational_basis({lab_left, lab_right}, labels);
}

namespace {

// Decoding measurement for one token. Uses the generalized decoding basis
// uniformly; when it coincides with the X basis (balanced choice) the
// outcomes keep their conventional "+"/"-" names.
ProjectiveMeasurement decode_basis(const ChoiceAmplitudes& choice,
                                   const std::string& token) {
    ProjectiveMeasurement basis = pbr::gamma_basis(choice, token);
    const StateVector& gamma = basis.outcomes().front().projector;
    const qsim::Complex overlap = qsim::inner(qsim::plus_state(token), gamma);
    if (std::abs(overlap - 1.0) <= qsim::kTol) {
        return ProjectiveMeasurement({{"+", basis.outcomes()[0].projector},
                                      {"-", basis.outcomes()[1].projector}});
    }
    return basis;
}

}  // namespace

Scenario main_scenario(const ChoiceAmplitudes& choice_a, const ChoiceAmplitudes& choice_b) {
    const StateVector state = qsim::tensor(pbr::preparation(choice_a, "T_A", "L_A"),
                                           pbr::preparation(choice_b, "T_B", "L_B"));

    Party charlie("Charlie", {{"0", qsim::pauli_z_basis("T_A")},
                              {"1", decode_basis(choice_a, "T_A")}});
    Party debbie("Debbie", {{"0", qsim::pauli_z_basis("T_B")},
                            {"1", decode_basis(choice_b, "T_B")}});
    Party wigner("Wigner", {{"0", reveal_basis("L_A", "L_B")},
                            {"1", pbr::xi_basis("L_A", "L_B")}});
    return Scenario(state, {charlie, debbie, wigner});
}

Scenario minimal_scenario() {
    qsim::AmpVector amps(4);
    amps << 1.0, 1.0, 0.0, 1.0;  // (|00> + |01> + |11>)/sqrt3 on (A, S)
    const StateVector state({"A", "S"}, amps);

    Party wigner("Wigner",
                 {{"0", qsim::pauli_z_basis("A")}, {"1", qsim::pauli_x_basis("A")}});
    Party bob("Bob", {{"0", qsim::pauli_z_basis("S")}, {"1", qsim::pauli_x_basis("S")}});
    return Scenario(state, {wigner, bob});
}

int thread_cap() {
    const int hardware = std::max(1u, std::thread::hardware_concurrency());
    if (const char* raw = std::getenv("WIGNERLAB_THREADS")) {
        char* end = nullptr;
        const long parsed = std::strtol(raw, &end, 10);
        if (end != raw && *end == '\0' && parsed >= 1) {
            return static_cast<int>(std::min<long>(parsed, 256));
        }
    }
    return hardware;
}

EmpiricalModel generate_table(const Scenario& scenario) {
    const Signature signature = scenario.signature();
    const auto contexts = empirical::all_contexts(signature);

    std::vector<OutcomeDistribution> results(contexts.size());
    auto compute = [&](size_t index) {
        std::vector<ProjectiveMeasurement> measurements;
        measurements.reserve(scenario.parties().size());
        for (size_t p = 0; p < scenario.parties().size(); ++p) {
            measurements.push_back(scenario.parties()[p].setting(contexts[index][p]));
        }
        results[index] = qsim::joint_distribution(scenario.state(), measurements);
    };

    const size_t workers =
        std::min<size_t>(static_cast<size_t>(thread_cap()), contexts.size());
    if (workers <= 1) {
        for (size_t i = 0; i < contexts.size(); ++i) compute(i);
    } else {
        std::exception_ptr first_error;
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        for (size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (size_t i = w; i < contexts.size(); i += workers) {
                    try {
                        compute(i);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(error_mutex);
                        if (!first_error) first_error = std::current_exception();
                    }
                }
            });
        }
        for (auto& thread : pool) thread.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    std::map<Context, OutcomeDistribution> tables;
    for (size_t i = 0; i < contexts.size(); ++i) {
        tables.emplace(contexts[i], std::move(results[i]));
    }
    return EmpiricalModel(signature, std::move(tables));
}

OutcomeDistribution conditional(const EmpiricalModel& model, const Context& context,
                                const std::map<std::string, std::string>& condition) {
    const auto& signature = model.signature();
    const auto& table = model.table(context);

    std::vector<int> fixed(signature.size(), -1);  // outcome index per conditioned party
    std::vector<std::string> fixed_label(signature.size());
    for (const auto& [name, outcome] : condition) {
        const size_t p = empirical::party_index(signature, name);
        const auto& setting = empirical::context_setting(signature, context, p);
        if (std::find(setting.outcomes.begin(), setting.outcomes.end(), outcome) ==
            setting.outcomes.end()) {
            throw Error("outcome '" + outcome + "' not in the alphabet of party '" + name +
                        "' under this context");
        }
        fixed[p] = 1;
        fixed_label[p] = outcome;
    }
    std::vector<size_t> free_parties;
    for (size_t p = 0; p < signature.size(); ++p) {
        if (fixed[p] < 0) free_parties.push_back(p);
    }
    if (free_parties.empty()) {
        throw Error("conditioning on every party leaves no distribution");
    }

    double event_probability = 0.0;
    std::map<Tuple, double> entries;
    for (const auto& [outcome, p] : table.entries()) {
        bool matches = true;
        for (size_t q = 0; q < signature.size(); ++q) {
            if (fixed[q] >= 0 && outcome[q] != fixed_label[q]) {
                matches = false;
                break;
            }
        }
        if (!matches) continue;
        event_probability += p;
        Tuple projected;
        projected.reserve(free_parties.size());
        for (size_t q : free_parties) projected.push_back(outcome[q]);
        entries[std::move(projected)] += p;
    }
    if (event_probability <= 1e-12) {
        throw ZeroConditioningEvent("conditioning event has probability <= 1e-12");
    }
    for (auto& [outcome, p] : entries) p /= event_probability;
    return OutcomeDistribution(std::move(entries));
}

TomographyEstimate tomography(const ChoiceAmplitudes& choice, std::int64_t n,
                              std::uint64_t seed) {
    if (n < 1000) throw Error("tomography needs at least 1000 samples per setting");

    const StateVector prep = pbr::preparation(choice, "T", "L");
    std::mt19937_64 master(seed);
    const std::uint64_t seed_zz = master();
    const std::uint64_t seed_xx = master();
    const std::uint64_t seed_xy = master();

    const auto zz = qsim::sample(
        prep, {qsim::pauli_z_basis("T"), qsim::pauli_z_basis("L")}, n, seed_zz);
    const double f00 = static_cast<double>(zz.at({"0", "0"})) / static_cast<double>(n);
    const double f11 = static_cast<double>(zz.at({"1", "1"})) / static_cast<double>(n);

    auto correlator = [n](const std::map<Tuple, std::int64_t>& counts) {
        double sum = 0.0;
        for (const auto& [outcome, count] : counts) {
            const double sign_left = outcome[0].front() == '+' ? 1.0 : -1.0;
            const double sign_right = outcome[1].front() == '+' ? 1.0 : -1.0;
            sum += sign_left * sign_right * static_cast<double>(count);
        }
        return sum / static_cast<double>(n);
    };
    const double xx = correlator(qsim::sample(
        prep, {qsim::pauli_x_basis("T"), qsim::pauli_x_basis("L")}, n, seed_xx));
    const double xy = correlator(qsim::sample(
        prep, {qsim::pauli_x_basis("T"), qsim::pauli_y_basis("L")}, n, seed_xy));

    // <XX> = 2 Re(conj(alpha) beta), <XY> = 2 Im(conj(alpha) beta); with
    // alpha real >= 0 the correlators fix beta's phase.
    TomographyEstimate estimate;
    estimate.n_samples = n;
    estimate.stderr_est = 1.0 / std::sqrt(static_cast<double>(n));

    double alpha_hat = std::sqrt(f00);
    Complex beta_hat = 0.0;
    if (f11 > 0.0) {
        const Complex phase_vector(xx, xy);
        const double magnitude = std::abs(phase_vector);
        beta_hat = magnitude > 0.0 ? std::sqrt(f11) * phase_vector / magnitude
                                   : Complex(std::sqrt(f11), 0.0);
    }
    const double norm = std::sqrt(alpha_hat * alpha_hat + std::norm(beta_hat));
    estimate.alpha_hat = alpha_hat / norm;
    estimate.beta_hat = beta_hat / norm;
    return estimate;
}

}  // namespace wignerlab::scenarios
