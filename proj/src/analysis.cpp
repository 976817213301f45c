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

#include "wignerlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

#include "wignerlab/simplex.hpp"

namespace wignerlab::analysis {

namespace {
constexpr std::uint64_t kAssignmentLimit = 10'000'000;
}

AssignmentSpace::AssignmentSpace(const Signature& signature) : signature_(signature) {
    party_slots_.resize(signature.size());
    for (std::size_t p = 0; p < signature.size(); ++p) {
        for (const auto& setting : signature[p].settings) {
            party_slots_[p].push_back(slots_.size());
            slots_.push_back({signature[p].name, setting.label, setting.outcomes});
            const std::uint64_t size = setting.outcomes.size();
            if (count_ > kAssignmentLimit / size + 1) {
                count_ = kAssignmentLimit + 1;
            } else {
                count_ *= size;
            }
        }
    }
}

std::size_t AssignmentSpace::slot_index(std::size_t party, const std::string& setting) const {
    for (std::size_t index : party_slots_.at(party)) {
        if (slots_[index].setting == setting) return index;
    }
    throw Error("party has no setting '" + setting + "'");
}

Tuple restrict_assignment(const AssignmentSpace& space, const Signature& signature,
                          const GlobalAssignment& assignment, const Context& context) {
    Tuple outcome;
    outcome.reserve(signature.size());
    for (std::size_t p = 0; p < signature.size(); ++p) {
        const std::size_t slot = space.slot_index(p, context[p]);
        outcome.push_back(space.slots()[slot].outcomes[assignment.choices[slot]]);
    }
    return outcome;
}

void for_each_assignment(const Signature& signature,
                         const std::function<void(const GlobalAssignment&)>& visit) {
    const AssignmentSpace space(signature);
    if (space.count() > kAssignmentLimit) {
        throw SizeLimit("assignment space exceeds 10^7 elements");
    }
    GlobalAssignment assignment;
    assignment.choices.assign(space.slots().size(), 0);
    while (true) {
        visit(assignment);
        // Lexicographic odometer, last slot fastest.
        std::size_t s = space.slots().size();
        while (s > 0) {
            --s;
            if (++assignment.choices[s] <
                static_cast<int>(space.slots()[s].outcomes.size())) {
                break;
            }
            assignment.choices[s] = 0;
            if (s == 0) return;
        }
    }
}

std::vector<GlobalAssignment> enumerate_assignments(const Signature& signature) {
    std::vector<GlobalAssignment> assignments;
    for_each_assignment(signature,
                        [&](const GlobalAssignment& a) { assignments.push_back(a); });
    return assignments;
}

std::string verdict_name(Verdict verdict) {
    switch (verdict) {
        case Verdict::kLocal: return "local";
        case Verdict::kLogicallyContextual: return "logically-contextual";
        case Verdict::kStronglyContextual: return "strongly-contextual";
        case Verdict::kLhvInfeasible: return "lhv-infeasible";
    }
    throw Error("unknown verdict");
}

FeasibilityReport logical_contextuality(const SupportModel& support) {
    const Signature& signature = support.signature();
    const AssignmentSpace space(signature);

    std::vector<Context> contexts = empirical::all_contexts(signature);
    std::sort(contexts.begin(), contexts.end());

    // Restrictions of globally compatible assignments, per context.
    std::map<Context, std::set<Tuple>> extendable;
    std::uint64_t compatible = 0;
    for_each_assignment(signature, [&](const GlobalAssignment& assignment) {
        std::vector<Tuple> restrictions;
        restrictions.reserve(contexts.size());
        for (const auto& context : contexts) {
            Tuple outcome = restrict_assignment(space, signature, assignment, context);
            if (!support.possible_at(context).count(outcome)) return;
            restrictions.push_back(std::move(outcome));
        }
        ++compatible;
        for (std::size_t c = 0; c < contexts.size(); ++c) {
            extendable[contexts[c]].insert(std::move(restrictions[c]));
        }
    });

    FeasibilityReport report;
    for (const auto& context : contexts) {
        const auto& possible = support.possible_at(context);
        const auto& reached = extendable[context];
        for (const auto& outcome : empirical::all_tuples(signature, context)) {
            if (possible.count(outcome) && !reached.count(outcome)) {
                report.witness = Witness{context, outcome};
                report.verdict = compatible == 0 ? Verdict::kStronglyContextual
                                                 : Verdict::kLogicallyContextual;
                return report;
            }
        }
    }
    report.verdict = Verdict::kLocal;
    return report;
}

FeasibilityReport lhv_feasibility(const EmpiricalModel& model, double tol) {
    const auto no_signalling = empirical::no_signalling_report(model, tol);
    if (!no_signalling.pass) {
        throw Error("model is signalling (max marginal discrepancy " +
                    std::to_string(no_signalling.max_discrepancy) + ")");
    }

    const Signature& signature = model.signature();
    const AssignmentSpace space(signature);
    const auto assignments = enumerate_assignments(signature);
    const auto contexts = empirical::all_contexts(signature);

    // One equality row per (context, outcome tuple).
    std::vector<std::pair<Context, Tuple>> rows;
    std::map<Context, std::map<Tuple, Eigen::Index>> row_of;
    for (const auto& context : contexts) {
        for (const auto& outcome : empirical::all_tuples(signature, context)) {
            row_of[context][outcome] = static_cast<Eigen::Index>(rows.size());
            rows.emplace_back(context, outcome);
        }
    }

    Eigen::MatrixXd constraints =
        Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()),
                              static_cast<Eigen::Index>(assignments.size()));
    for (std::size_t g = 0; g < assignments.size(); ++g) {
        for (const auto& context : contexts) {
            const Tuple outcome =
                restrict_assignment(space, signature, assignments[g], context);
            constraints(row_of[context][outcome], static_cast<Eigen::Index>(g)) = 1.0;
        }
    }
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        rhs[static_cast<Eigen::Index>(r)] = model.table(rows[r].first).prob(rows[r].second);
    }

    const auto lp = simplex::phase_one(constraints, rhs, tol);

    FeasibilityReport report;
    if (lp.feasible) {
        const double residual = (constraints * lp.solution - rhs).cwiseAbs().maxCoeff();
        if (residual > 10.0 * tol) {
            throw Error("feasible weights failed re-synthesis check, residual " +
                        std::to_string(residual));
        }
        report.verdict = Verdict::kLocal;
        for (std::size_t g = 0; g < assignments.size(); ++g) {
            const double weight = lp.solution[static_cast<Eigen::Index>(g)];
            if (weight > 1e-12) report.weights.push_back({assignments[g], weight});
        }
        return report;
    }

    // Infeasible: normalize the Farkas vector into a separating functional
    // and re-verify it against the full enumeration, independently of the
    // simplex numerics.
    Eigen::VectorXd functional = lp.farkas;
    const double scale = functional.cwiseAbs().maxCoeff();
    if (scale <= 0.0) throw Error("degenerate infeasibility certificate");
    functional /= scale;

    Certificate certificate;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        certificate.coefficients[rows[r].first][rows[r].second] =
            functional[static_cast<Eigen::Index>(r)];
    }
    double classical_bound = -std::numeric_limits<double>::infinity();
    for (const auto& assignment : assignments) {
        double score = 0.0;
        for (const auto& context : contexts) {
            const Tuple outcome = restrict_assignment(space, signature, assignment, context);
            score += functional[row_of[context][outcome]];
        }
        classical_bound = std::max(classical_bound, score);
    }
    certificate.classical_bound = classical_bound;
    certificate.model_value = functional.dot(rhs);
    certificate.margin = certificate.model_value - certificate.classical_bound;
    if (certificate.margin <= 0.0) {
        throw Error("infeasibility certificate failed re-verification");
    }
    report.verdict = Verdict::kLhvInfeasible;
    report.certificate = std::move(certificate);
    return report;
}

double chsh(const EmpiricalModel& model, const std::string& party1,
            const std::string& party2, const std::map<std::string, int>& outcome_sign) {
    const Signature& signature = model.signature();
    const std::size_t p1 = empirical::party_index(signature, party1);
    const std::size_t p2 = empirical::party_index(signature, party2);
    if (p1 == p2) throw Error("chsh needs two distinct parties");

    for (std::size_t p : {p1, p2}) {
        if (signature[p].settings.size() != 2) {
            throw Error("party '" + signature[p].name + "' must have exactly 2 settings");
        }
        for (const auto& setting : signature[p].settings) {
            if (setting.outcomes.size() != 2) {
                throw NonBinaryOutcomes("party '" + signature[p].name + "' setting '" +
                                        setting.label + "' is not binary");
            }
            for (const auto& outcome : setting.outcomes) {
                auto it = outcome_sign.find(outcome);
                if (it == outcome_sign.end() || (it->second != 1 && it->second != -1)) {
                    throw Error("outcome '" + outcome + "' needs a +/-1 sign");
                }
            }
        }
    }

    double correlators[2][2];
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            Context context;
            for (std::size_t p = 0; p < signature.size(); ++p) {
                int setting = 0;
                if (p == p1) setting = i;
                if (p == p2) setting = j;
                context.push_back(signature[p].settings[setting].label);
            }
            const auto marginal = empirical::marginalize(model, context, {party1, party2});
            double expectation = 0.0;
            for (const auto& [outcome, p] : marginal.entries()) {
                expectation += outcome_sign.at(outcome[0]) * outcome_sign.at(outcome[1]) * p;
            }
            correlators[i][j] = expectation;
        }
    }

    double best = 0.0;
    for (int minus = 0; minus < 4; ++minus) {
        double value = 0.0;
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                const double sign = (i * 2 + j == minus) ? -1.0 : 1.0;
                value += sign * correlators[i][j];
            }
        }
        best = std::max(best, std::abs(value));
    }
    return best;
}

namespace {

std::string escape_json(const std::string& raw) {
    std::string out = "\"";
    for (char c : raw) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
    return out;
}

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

}  // namespace

std::string report_to_json(const FeasibilityReport& report, const Signature& signature) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"version\": 1,\n";
    out << "  \"verdict\": " << escape_json(verdict_name(report.verdict));

    if (report.witness) {
        out << ",\n  \"witness\": { \"context\": "
            << escape_json(empirical::context_key(report.witness->context))
            << ", \"outcome\": " << escape_json(empirical::tuple_key(report.witness->outcome))
            << " }";
    }

    if (report.certificate) {
        const auto& certificate = *report.certificate;
        out << ",\n  \"certificate\": {\n";
        out << "    \"classical_bound\": " << format_double(certificate.classical_bound)
            << ",\n";
        out << "    \"model_value\": " << format_double(certificate.model_value) << ",\n";
        out << "    \"margin\": " << format_double(certificate.margin) << ",\n";
        out << "    \"coefficients\": {\n";
        std::size_t c = 0;
        for (const auto& [context, row] : certificate.coefficients) {
            out << "      " << escape_json(empirical::context_key(context)) << ": {";
            std::size_t t = 0;
            for (const auto& [outcome, coefficient] : row) {
                out << (t++ ? ", " : " ") << escape_json(empirical::tuple_key(outcome))
                    << ": " << format_double(coefficient);
            }
            out << " }" << (++c < certificate.coefficients.size() ? "," : "") << "\n";
        }
        out << "    }\n  }";
    }

    if (!report.weights.empty()) {
        const AssignmentSpace space(signature);
        out << ",\n  \"slots\": [";
        for (std::size_t s = 0; s < space.slots().size(); ++s) {
            out << (s ? ", " : "")
                << escape_json(space.slots()[s].party + ":" + space.slots()[s].setting);
        }
        out << "],\n  \"weights\": {\n";
        for (std::size_t w = 0; w < report.weights.size(); ++w) {
            const auto& entry = report.weights[w];
            Tuple labels;
            labels.reserve(space.slots().size());
            for (std::size_t s = 0; s < space.slots().size(); ++s) {
                labels.push_back(space.slots()[s].outcomes[entry.assignment.choices[s]]);
            }
            out << "    " << escape_json(empirical::tuple_key(labels)) << ": "
                << format_double(entry.weight)
                << (w + 1 < report.weights.size() ? "," : "") << "\n";
        }
        out << "  }";
    }

    out << "\n}\n";
    return out.str();
}

}  // namespace wignerlab::analysis
