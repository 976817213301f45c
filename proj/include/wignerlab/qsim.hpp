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
 * Exact dense state-vector engine for small registers of labeled qubits:
 * projective measurements, joint outcome distributions, post-selection and
 * seeded sampling. All types are immutable after construction and all
 * operations are pure functions.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wignerlab/errors.hpp"

namespace wignerlab::qsim {

using Complex = std::complex<double>;
using AmpVector = Eigen::VectorXcd;
using Tuple = std::vector<std::string>;

/// Equality tolerance for amplitudes, norms and probabilities.
inline constexpr double kTol = 1e-12;

/// Probabilities in [-kProbClamp, 0) are clamped to 0; anything more negative
/// is treated as an internal error.
inline constexpr double kProbClamp = 1e-15;

/// Normalized pure state over a set of uniquely named qubit subsystems.
///
/// Subsystem labels are canonicalized to alphabetical order on construction;
/// amplitudes are stored big-endian over the canonical order (the first
/// canonical label is the most significant bit of the basis index).
class StateVector {
  public:
    /// Builds a normalized state from amplitudes given big-endian over
    /// `labels` as ordered by the caller.
    StateVector(std::vector<std::string> labels, AmpVector amplitudes);

    const std::vector<std::string>& labels() const { return labels_; }
    const AmpVector& amplitudes() const { return amps_; }
    int num_qubits() const { return static_cast<int>(labels_.size()); }
    Eigen::Index dim() const { return amps_.size(); }

    bool has_label(const std::string& label) const;

    /// Same amplitudes on a renamed register. `new_labels` follow the
    /// current canonical order positionally.
    StateVector relabeled(std::vector<std::string> new_labels) const;

  private:
    std::vector<std::string> labels_;  // canonical (sorted)
    AmpVector amps_;
};

/// Single-qubit |0> or |1>.
StateVector basis_state(const std::string& label, int bit);
/// Single-qubit |+> or |->.
StateVector plus_state(const std::string& label);
StateVector minus_state(const std::string& label);

/// Complete (or explicitly incomplete) set of labeled, pairwise-orthonormal
/// projector states on a fixed subsystem set.
class ProjectiveMeasurement {
  public:
    struct Outcome {
        std::string label;
        StateVector projector;
    };

    /// Validates that all projector states live on the same subsystems, are
    /// normalized and pairwise orthogonal, and that outcome labels are unique.
    explicit ProjectiveMeasurement(std::vector<Outcome> outcomes);

    const std::vector<std::string>& subsystems() const { return subsystems_; }
    const std::vector<Outcome>& outcomes() const { return outcomes_; }

    /// True iff the projectors resolve the identity (orthonormal basis of the
    /// full subsystem space). Incomplete measurements are representable but
    /// rejected by table generation.
    bool complete() const { return complete_; }

    const Outcome& outcome(const std::string& label) const;
    std::vector<std::string> outcome_labels() const;

  private:
    std::vector<std::string> subsystems_;  // canonical (sorted)
    std::vector<Outcome> outcomes_;
    bool complete_ = false;
};

/// Z (computational) basis on one qubit, outcomes "0", "1".
ProjectiveMeasurement pauli_z_basis(const std::string& subsystem);
/// X basis on one qubit, outcomes "+", "-".
ProjectiveMeasurement pauli_x_basis(const std::string& subsystem);
/// Y basis on one qubit, outcomes "+i", "-i".
ProjectiveMeasurement pauli_y_basis(const std::string& subsystem);

/// Computational product basis on several qubits. Outcomes are labeled by
/// `outcome_labels` if given (one per basis vector, big-endian over the
/// canonical subsystem order), else by the bitstrings "00", "01", ...
ProjectiveMeasurement computational_basis(std::vector<std::string> subsystems,
                                          std::vector<std::string> outcome_labels = {});

/// Probability table over tuples of outcome labels.
class OutcomeDistribution {
  public:
    OutcomeDistribution() = default;

    /// Clamps values in [-kProbClamp, 0) to zero; anything more negative
    /// throws. The entries must sum to 1 within 1e-9.
    explicit OutcomeDistribution(std::map<Tuple, double> entries);

    const std::map<Tuple, double>& entries() const { return entries_; }

    /// Probability of a tuple; 0 for tuples not present.
    double prob(const Tuple& outcome) const;
    double prob(const std::string& single_outcome) const;

  private:
    std::map<Tuple, double> entries_;
};

/// Tensor product of states on disjoint registers.
StateVector tensor(const StateVector& left, const StateVector& right);

/// Hermitian inner product <left|right>. Both states must live on the same
/// subsystem set.
Complex inner(const StateVector& left, const StateVector& right);

/// Born-rule joint distribution of commuting measurements on pairwise
/// disjoint subsystem sets. Subsystems not measured are traced out. Outcome
/// tuples follow the order of `measurements`.
OutcomeDistribution joint_distribution(const StateVector& state,
                                       const std::vector<ProjectiveMeasurement>& measurements);

/// Conditions the state on one measurement outcome: returns the renormalized
/// state of the remaining subsystems together with the outcome probability.
std::pair<StateVector, double> post_select(const StateVector& state,
                                           const ProjectiveMeasurement& measurement,
                                           const std::string& outcome_label);

/// Name of the pseudo-random generator used by `sample`, recorded in run
/// metadata so results are reproducible per binary.
inline constexpr const char* kRngName = "mt19937_64";

/// Draws `n` i.i.d. outcome tuples from the joint distribution of the given
/// measurements; deterministic for a fixed seed.
std::map<Tuple, std::int64_t> sample(const StateVector& state,
                                     const std::vector<ProjectiveMeasurement>& measurements,
                                     std::int64_t n, std::uint64_t seed);

std::map<Tuple, std::int64_t> sample(const StateVector& state,
                                     const ProjectiveMeasurement& measurement, std::int64_t n,
                                     std::uint64_t seed);

}  // namespace wignerlab::qsim
