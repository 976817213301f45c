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
 * Empirical-model data layer: per-context probability tables over a
 * multi-party measurement signature, marginals, possibilistic supports,
 * no-signalling verification and a versioned JSON interchange format.
 */

#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wignerlab/qsim.hpp"

namespace wignerlab::empirical {

using qsim::OutcomeDistribution;
using qsim::Tuple;

/// One choice of measurement setting per party, in signature party order.
using Context = std::vector<std::string>;

struct SettingSignature {
    std::string label;
    std::vector<std::string> outcomes;

    bool operator==(const SettingSignature&) const = default;
};

struct PartySignature {
    std::string name;
    std::vector<SettingSignature> settings;

    bool operator==(const PartySignature&) const = default;
};

/// Per-party setting and outcome alphabets, in declared order.
using Signature = std::vector<PartySignature>;

/// All contexts of a signature, in product order of the declared settings.
std::vector<Context> all_contexts(const Signature& signature);

/// All outcome tuples of one context, in product order of the declared
/// outcome alphabets.
std::vector<Tuple> all_tuples(const Signature& signature, const Context& context);

/// Index of a named party; throws UnknownParty.
std::size_t party_index(const Signature& signature, const std::string& name);

/// Setting alphabet of `party` under `context`.
const SettingSignature& context_setting(const Signature& signature, const Context& context,
                                        std::size_t party);

/// Context key used in JSON tables: setting labels joined with "|".
std::string context_key(const Context& context);
/// Outcome-tuple key used in JSON tables: labels joined with ",".
std::string tuple_key(const Tuple& outcome);

/// Complete probability tables over every context of a signature.
class EmpiricalModel {
  public:
    EmpiricalModel(Signature signature, std::map<Context, OutcomeDistribution> tables,
                   std::map<std::string, std::string> metadata = {});

    const Signature& signature() const { return signature_; }
    const std::map<Context, OutcomeDistribution>& tables() const { return tables_; }
    const std::map<std::string, std::string>& metadata() const { return metadata_; }

    const OutcomeDistribution& table(const Context& context) const;

    /// Copy of the model with replaced metadata (tables are immutable).
    EmpiricalModel with_metadata(std::map<std::string, std::string> metadata) const;

    bool operator==(const EmpiricalModel& other) const = default;

  private:
    Signature signature_;
    std::map<Context, OutcomeDistribution> tables_;
    std::map<std::string, std::string> metadata_;
};

/// Possibilistic shadow of a model: the outcome tuples of nonnegligible
/// probability per context.
class SupportModel {
  public:
    SupportModel(Signature signature, std::map<Context, std::set<Tuple>> possible);

    const Signature& signature() const { return signature_; }
    const std::map<Context, std::set<Tuple>>& possible() const { return possible_; }
    const std::set<Tuple>& possible_at(const Context& context) const;

  private:
    Signature signature_;
    std::map<Context, std::set<Tuple>> possible_;
};

/// Sums a context table down to a subset of parties; the output tuple order
/// follows `parties`.
OutcomeDistribution marginalize(const EmpiricalModel& model, const Context& context,
                                const std::vector<std::string>& parties);

/// Support at threshold epsilon. Requires 0 <= epsilon strictly below the
/// smallest nonzero table entry; throws EpsilonTooLarge otherwise.
SupportModel support(const EmpiricalModel& model, double epsilon);

/// Default support threshold: far above float noise, far below the smallest
/// genuine probability of the scenarios built here.
inline constexpr double kDefaultSupportEpsilon = 1e-9;

struct NoSignallingReport {
    struct Entry {
        std::vector<std::string> parties;
        double discrepancy;  // max L-inf distance between marginals
    };

    std::vector<Entry> entries;  // one per proper nonempty party subset
    double max_discrepancy = 0.0;
    double tol = 0.0;
    bool pass = true;
};

/// Checks that every party subset's marginal is independent of the other
/// parties' settings, up to `tol` in L-infinity distance.
NoSignallingReport no_signalling_report(const EmpiricalModel& model, double tol);

/// Serializes to the versioned JSON interchange format. Probabilities are
/// written with 17 significant digits so parsing reproduces them exactly.
std::string to_json(const EmpiricalModel& model);

/// Parses and validates the JSON interchange format; throws SchemaViolation
/// with the JSON-pointer path of the offending node.
EmpiricalModel from_json(std::string_view text);

}  // namespace wignerlab::empirical
