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

#include "wignerlab/simplex.hpp"

#include <cmath>
#include <vector>

#include "wignerlab/errors.hpp"

namespace wignerlab::simplex {

FeasibilityResult phase_one(const Eigen::MatrixXd& constraints, const Eigen::VectorXd& rhs,
                            double tol) {
    const Eigen::Index m = constraints.rows();
    const Eigen::Index n = constraints.cols();
    if (rhs.size() != m) throw Error("rhs size does not match constraint rows");

    // Flip rows to make the right-hand side nonnegative.
    Eigen::VectorXd row_sign = Eigen::VectorXd::Ones(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        if (rhs[i] < 0.0) row_sign[i] = -1.0;
    }

    // Tableau: [A | I | b] plus the phase-1 reduced-cost row. The objective
    // minimizes the total artificial mass, so the initial reduced costs are
    // the negated column sums and the objective cell is -sum(b).
    const Eigen::Index cols = n + m + 1;
    Eigen::MatrixXd tableau = Eigen::MatrixXd::Zero(m + 1, cols);
    tableau.block(0, 0, m, n) = row_sign.asDiagonal() * constraints;
    tableau.block(0, n, m, m) = Eigen::MatrixXd::Identity(m, m);
    tableau.col(n + m).head(m) = row_sign.cwiseProduct(rhs);
    tableau.row(m).head(n) = -tableau.block(0, 0, m, n).colwise().sum();
    tableau(m, n + m) = -tableau.col(n + m).head(m).sum();

    std::vector<Eigen::Index> basis(m);
    for (Eigen::Index i = 0; i < m; ++i) basis[i] = n + i;

    const double pivot_eps = 1e-11;
    const long max_iterations = 2000 + 40L * static_cast<long>(n + m) * (n + m);

    for (long iteration = 0; iteration < max_iterations; ++iteration) {
        // Bland's rule: lowest-index column with a negative reduced cost.
        Eigen::Index entering = -1;
        for (Eigen::Index j = 0; j < n + m; ++j) {
            if (tableau(m, j) < -tol) {
                entering = j;
                break;
            }
        }
        if (entering < 0) break;

        Eigen::Index leaving = -1;
        double best_ratio = 0.0;
        for (Eigen::Index i = 0; i < m; ++i) {
            const double coeff = tableau(i, entering);
            if (coeff <= pivot_eps) continue;
            const double ratio = tableau(i, n + m) / coeff;
            if (leaving < 0 || ratio < best_ratio - pivot_eps ||
                (std::abs(ratio - best_ratio) <= pivot_eps &&
                 basis[i] < basis[leaving])) {
                leaving = i;
                best_ratio = ratio;
            }
        }
        if (leaving < 0) {
            throw Error("phase-1 simplex became unbounded");
        }

        tableau.row(leaving) /= tableau(leaving, entering);
        for (Eigen::Index i = 0; i <= m; ++i) {
            if (i == leaving) continue;
            const double factor = tableau(i, entering);
            if (factor != 0.0) tableau.row(i) -= factor * tableau.row(leaving);
        }
        basis[leaving] = entering;
    }

    FeasibilityResult result;
    result.objective = -tableau(m, n + m);
    result.feasible = result.objective <= tol;

    if (result.feasible) {
        result.solution = Eigen::VectorXd::Zero(n);
        for (Eigen::Index i = 0; i < m; ++i) {
            if (basis[i] < n) {
                result.solution[basis[i]] = std::max(0.0, tableau(i, n + m));
            }
        }
    } else {
        // Dual multipliers from the artificial reduced costs: y_i = 1 - r_i.
        // By optimality yᵀA <= 0 componentwise while yᵀb equals the positive
        // leftover artificial mass.
        result.farkas = Eigen::VectorXd(m);
        for (Eigen::Index i = 0; i < m; ++i) {
            result.farkas[i] = row_sign[i] * (1.0 - tableau(m, n + i));
        }
    }
    return result;
}

}  // namespace wignerlab::simplex
