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
 * Phase-1 simplex for the standard-form linear feasibility problem
 * { x >= 0 : A x = b }, with a Farkas certificate on infeasibility.
 */

#pragma once

#include <Eigen/Dense>

namespace wignerlab::simplex {

struct FeasibilityResult {
    bool feasible = false;

    /// When feasible: x >= 0 with ||A x - b||_inf within tolerance.
    Eigen::VectorXd solution;

    /// When infeasible: y with yᵀA <= 0 (componentwise, within tolerance)
    /// and yᵀb > 0.
    Eigen::VectorXd farkas;

    /// Final phase-1 objective (total artificial mass; ~0 iff feasible).
    double objective = 0.0;
};

/// Solves the feasibility problem with Bland's anti-cycling pivot rule.
FeasibilityResult phase_one(const Eigen::MatrixXd& constraints, const Eigen::VectorXd& rhs,
                            double tol);

}  // namespace wignerlab::simplex
