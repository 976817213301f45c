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

#include "wignerlab/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace wignerlab::qsim {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::ostringstream out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out << sep;
        out << parts[i];
    }
    return out.str();
}

// Bit of `index` belonging to position `pos` out of `n`, big-endian.
inline int bit_at(Eigen::Index index, int pos, int n) {
    return static_cast<int>((index >> (n - 1 - pos)) & 1);
}

// Positions (in the state's canonical label order) of the given canonical
// subsystem labels; throws if any label is missing from the state.
std::vector<int> positions_of(const std::vector<std::string>& state_labels,
                              const std::vector<std::string>& subsystems) {
    std::vector<int> positions;
    positions.reserve(subsystems.size());
    for (const auto& label : subsystems) {
        auto it = std::find(state_labels.begin(), state_labels.end(), label);
        if (it == state_labels.end()) {
            throw LabelMismatch("subsystem '" + label + "' not present in state [" +
                                join(state_labels, ",") + "]");
        }
        positions.push_back(static_cast<int>(it - state_labels.begin()));
    }
    return positions;
}

// Extracts the sub-index formed by the bits of `index` at `positions`,
// big-endian in position order.
inline Eigen::Index sub_index(Eigen::Index index, const std::vector<int>& positions, int n) {
    Eigen::Index sub = 0;
    for (int pos : positions) sub = (sub << 1) | bit_at(index, pos, n);
    return sub;
}

}  // namespace

StateVector::StateVector(std::vector<std::string> labels, AmpVector amplitudes) {
    const int n = static_cast<int>(labels.size());
    {
        std::set<std::string> unique(labels.begin(), labels.end());
        if (unique.size() != labels.size()) {
            throw LabelCollision("duplicate subsystem label in [" + join(labels, ",") + "]");
        }
    }
    const Eigen::Index dim = Eigen::Index{1} << n;
    if (amplitudes.size() != dim) {
        throw DimensionMismatch("expected " + std::to_string(dim) + " amplitudes for " +
                                std::to_string(n) + " qubits, got " +
                                std::to_string(amplitudes.size()));
    }
    const double norm = amplitudes.norm();
    if (norm < 1e-150) {
        throw ZeroNorm("state amplitudes have zero norm");
    }

    // Canonicalize: sort labels, permute amplitude indices to match.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return labels[a] < labels[b]; });

    labels_.resize(n);
    for (int k = 0; k < n; ++k) labels_[k] = labels[order[k]];

    amps_.resize(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        Eigen::Index src = 0;
        for (int k = 0; k < n; ++k) {
            src |= static_cast<Eigen::Index>(bit_at(i, k, n)) << (n - 1 - order[k]);
        }
        amps_[i] = amplitudes[src];
    }
    amps_ /= norm;
}

bool StateVector::has_label(const std::string& label) const {
    return std::binary_search(labels_.begin(), labels_.end(), label);
}

StateVector StateVector::relabeled(std::vector<std::string> new_labels) const {
    if (new_labels.size() != labels_.size()) {
        throw DimensionMismatch("relabel expects " + std::to_string(labels_.size()) +
                                " labels, got " + std::to_string(new_labels.size()));
    }
    return StateVector(std::move(new_labels), amps_);
}

StateVector basis_state(const std::string& label, int bit) {
    AmpVector amps(2);
    amps << (bit == 0 ? 1.0 : 0.0), (bit == 0 ? 0.0 : 1.0);
    return StateVector({label}, amps);
}

StateVector plus_state(const std::string& label) {
    AmpVector amps(2);
    amps << kInvSqrt2, kInvSqrt2;
    return StateVector({label}, amps);
}

StateVector minus_state(const std::string& label) {
    AmpVector amps(2);
    amps << kInvSqrt2, -kInvSqrt2;
    return StateVector({label}, amps);
}

ProjectiveMeasurement::ProjectiveMeasurement(std::vector<Outcome> outcomes)
    : outcomes_(std::move(outcomes)) {
    if (outcomes_.empty()) {
        throw Error("measurement needs at least one outcome");
    }
    subsystems_ = outcomes_.front().projector.labels();
    std::set<std::string> seen;
    for (const auto& outcome : outcomes_) {
        if (outcome.projector.labels() != subsystems_) {
            throw LabelMismatch("projector states act on different subsystem sets");
        }
        if (!seen.insert(outcome.label).second) {
            throw LabelCollision("duplicate outcome label '" + outcome.label + "'");
        }
    }
    for (size_t i = 0; i < outcomes_.size(); ++i) {
        for (size_t j = i + 1; j < outcomes_.size(); ++j) {
            const Complex overlap =
                outcomes_[i].projector.amplitudes().dot(outcomes_[j].projector.amplitudes());
            if (std::abs(overlap) > kTol) {
                throw Error("projector states '" + outcomes_[i].label + "' and '" +
                            outcomes_[j].label + "' are not orthogonal");
            }
        }
    }
    // Orthonormal set resolves the identity iff it spans the full space.
    complete_ = static_cast<Eigen::Index>(outcomes_.size()) ==
                outcomes_.front().projector.dim();
}

const ProjectiveMeasurement::Outcome& ProjectiveMeasurement::outcome(
    const std::string& label) const {
    for (const auto& outcome : outcomes_) {
        if (outcome.label == label) return outcome;
    }
    throw Error("unknown outcome label '" + label + "'");
}

std::vector<std::string> ProjectiveMeasurement::outcome_labels() const {
    std::vector<std::string> labels;
    labels.reserve(outcomes_.size());
    for (const auto& outcome : outcomes_) labels.push_back(outcome.label);
    return labels;
}

ProjectiveMeasurement pauli_z_basis(const std::string& subsystem) {
    return ProjectiveMeasurement(
        {{"0", basis_state(subsystem, 0)}, {"1", basis_state(subsystem, 1)}});
}

ProjectiveMeasurement pauli_x_basis(const std::string& subsystem) {
    return ProjectiveMeasurement({{"+", plus_state(subsystem)}, {"-", minus_state(subsystem)}});
}

ProjectiveMeasurement pauli_y_basis(const std::string& subsystem) {
    AmpVector up(2), down(2);
    up << kInvSqrt2, Complex(0.0, kInvSqrt2);
    down << kInvSqrt2, Complex(0.0, -kInvSqrt2);
    return ProjectiveMeasurement(
        {{"+i", StateVector({subsystem}, up)}, {"-i", StateVector({subsystem}, down)}});
}

ProjectiveMeasurement computational_basis(std::vector<std::string> subsystems,
                                          std::vector<std::string> outcome_labels) {
    std::sort(subsystems.begin(), subsystems.end());
    const int n = static_cast<int>(subsystems.size());
    const Eigen::Index dim = Eigen::Index{1} << n;
    if (!outcome_labels.empty() && static_cast<Eigen::Index>(outcome_labels.size()) != dim) {
        throw DimensionMismatch("expected " + std::to_string(dim) + " outcome labels");
    }
    std::vector<ProjectiveMeasurement::Outcome> outcomes;
    outcomes.reserve(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        AmpVector amps = AmpVector::Zero(dim);
        amps[i] = 1.0;
        std::string label;
        if (outcome_labels.empty()) {
            for (int k = 0; k < n; ++k) label += static_cast<char>('0' + bit_at(i, k, n));
        } else {
            label = outcome_labels[i];
        }
        outcomes.push_back({label, StateVector(subsystems, amps)});
    }
    return ProjectiveMeasurement(std::move(outcomes));
}

OutcomeDistribution::OutcomeDistribution(std::map<Tuple, double> entries)
    : entries_(std::move(entries)) {
    double sum = 0.0;
    for (auto& [outcome, p] : entries_) {
        if (p < -kProbClamp) {
            throw Error("probability " + std::to_string(p) + " below clamping range");
        }
        if (p <= 0.0) p = 0.0;  // also normalizes -0.0
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw Error("probabilities sum to " + std::to_string(sum) + ", expected 1");
    }
}

double OutcomeDistribution::prob(const Tuple& outcome) const {
    auto it = entries_.find(outcome);
    return it == entries_.end() ? 0.0 : it->second;
}

double OutcomeDistribution::prob(const std::string& single_outcome) const {
    return prob(Tuple{single_outcome});
}

StateVector tensor(const StateVector& left, const StateVector& right) {
    for (const auto& label : right.labels()) {
        if (left.has_label(label)) {
            throw LabelCollision("subsystem '" + label + "' present in both factors");
        }
    }
    std::vector<std::string> labels = left.labels();
    labels.insert(labels.end(), right.labels().begin(), right.labels().end());

    const Eigen::Index right_dim = right.dim();
    AmpVector amps(left.dim() * right_dim);
    for (Eigen::Index i = 0; i < left.dim(); ++i) {
        for (Eigen::Index j = 0; j < right_dim; ++j) {
            amps[i * right_dim + j] = left.amplitudes()[i] * right.amplitudes()[j];
        }
    }
    return StateVector(std::move(labels), std::move(amps));
}

Complex inner(const StateVector& left, const StateVector& right) {
    if (left.labels() != right.labels()) {
        throw LabelMismatch("inner product requires identical subsystem sets, got [" +
                            join(left.labels(), ",") + "] vs [" + join(right.labels(), ",") +
                            "]");
    }
    return left.amplitudes().dot(right.amplitudes());
}

namespace {

// Shared projection machinery: amplitude vector of the unmeasured register
// after projecting each measured block onto one chosen outcome.
struct ProjectionPlan {
    std::vector<std::vector<int>> measured_positions;  // per measurement
    std::vector<int> rest_positions;
    Eigen::Index rest_dim = 1;
    int n = 0;

    ProjectionPlan(const StateVector& state,
                   const std::vector<ProjectiveMeasurement>& measurements) {
        n = state.num_qubits();
        std::set<int> taken;
        for (const auto& measurement : measurements) {
            auto positions = positions_of(state.labels(), measurement.subsystems());
            for (int pos : positions) {
                if (!taken.insert(pos).second) {
                    throw OverlappingSubsystems("subsystem '" + state.labels()[pos] +
                                                "' measured twice");
                }
            }
            measured_positions.push_back(std::move(positions));
        }
        for (int pos = 0; pos < n; ++pos) {
            if (!taken.count(pos)) rest_positions.push_back(pos);
        }
        rest_dim = Eigen::Index{1} << rest_positions.size();
    }

    // Residual (unnormalized) amplitudes over the unmeasured register for the
    // outcome choice `chosen[j]` of measurement j.
    AmpVector residual(const StateVector& state,
                       const std::vector<ProjectiveMeasurement>& measurements,
                       const std::vector<size_t>& chosen) const {
        AmpVector rest = AmpVector::Zero(rest_dim);
        const auto& amps = state.amplitudes();
        for (Eigen::Index i = 0; i < amps.size(); ++i) {
            Complex coeff = amps[i];
            for (size_t j = 0; j < measurements.size(); ++j) {
                const auto& projector =
                    measurements[j].outcomes()[chosen[j]].projector.amplitudes();
                coeff *= std::conj(projector[sub_index(i, measured_positions[j], n)]);
            }
            rest[sub_index(i, rest_positions, n)] += coeff;
        }
        return rest;
    }
};

}  // namespace

OutcomeDistribution joint_distribution(const StateVector& state,
                                       const std::vector<ProjectiveMeasurement>& measurements) {
    for (const auto& measurement : measurements) {
        if (!measurement.complete()) {
            throw IncompleteMeasurement("joint distribution requires complete measurements");
        }
    }
    const ProjectionPlan plan(state, measurements);

    std::map<Tuple, double> entries;
    std::vector<size_t> chosen(measurements.size(), 0);
    while (true) {
        Tuple outcome;
        outcome.reserve(measurements.size());
        for (size_t j = 0; j < measurements.size(); ++j) {
            outcome.push_back(measurements[j].outcomes()[chosen[j]].label);
        }
        entries[std::move(outcome)] =
            plan.residual(state, measurements, chosen).squaredNorm();

        // Odometer over outcome indices.
        size_t j = 0;
        for (; j < chosen.size(); ++j) {
            if (++chosen[j] < measurements[j].outcomes().size()) break;
            chosen[j] = 0;
        }
        if (j == chosen.size()) break;
    }
    return OutcomeDistribution(std::move(entries));
}

std::pair<StateVector, double> post_select(const StateVector& state,
                                           const ProjectiveMeasurement& measurement,
                                           const std::string& outcome_label) {
    const ProjectionPlan plan(state, {measurement});
    size_t index = 0;
    for (; index < measurement.outcomes().size(); ++index) {
        if (measurement.outcomes()[index].label == outcome_label) break;
    }
    if (index == measurement.outcomes().size()) {
        throw Error("unknown outcome label '" + outcome_label + "'");
    }

    AmpVector rest = plan.residual(state, {measurement}, {index});
    const double probability = rest.squaredNorm();
    if (probability <= kTol) {
        throw ZeroProbabilityOutcome("outcome '" + outcome_label +
                                     "' has probability <= 1e-12");
    }
    std::vector<std::string> rest_labels;
    rest_labels.reserve(plan.rest_positions.size());
    for (int pos : plan.rest_positions) rest_labels.push_back(state.labels()[pos]);
    return {StateVector(std::move(rest_labels), std::move(rest)), probability};
}

std::map<Tuple, std::int64_t> sample(const StateVector& state,
                                     const std::vector<ProjectiveMeasurement>& measurements,
                                     std::int64_t n, std::uint64_t seed) {
    if (n < 1) {
        throw Error("sample count must be >= 1");
    }
    const OutcomeDistribution dist = joint_distribution(state, measurements);

    std::vector<const Tuple*> outcomes;
    std::vector<double> cumulative;
    double acc = 0.0;
    for (const auto& [outcome, p] : dist.entries()) {
        acc += p;
        outcomes.push_back(&outcome);
        cumulative.push_back(acc);
    }
    cumulative.back() = 1.0;

    std::map<Tuple, std::int64_t> counts;
    for (const auto& [outcome, p] : dist.entries()) counts[outcome] = 0;

    std::mt19937_64 rng(seed);
    for (std::int64_t draw = 0; draw < n; ++draw) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        const size_t k = std::min<size_t>(it - cumulative.begin(), outcomes.size() - 1);
        ++counts[*outcomes[k]];
    }
    return counts;
}

std::map<Tuple, std::int64_t> sample(const StateVector& state,
                                     const ProjectiveMeasurement& measurement, std::int64_t n,
                                     std::uint64_t seed) {
    return sample(state, std::vector<ProjectiveMeasurement>{measurement}, n, seed);
}

}  // namespace wignerlab::qsim
