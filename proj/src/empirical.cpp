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

#include "wignerlab/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace wignerlab::empirical {

namespace {

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out += sep;
        out += parts[i];
    }
    return out;
}

void validate_signature(const Signature& signature) {
    if (signature.empty()) throw Error("signature has no parties");
    std::set<std::string> names;
    for (const auto& party : signature) {
        if (party.name.empty()) throw Error("empty party name");
        if (!names.insert(party.name).second) {
            throw Error("duplicate party name '" + party.name + "'");
        }
        if (party.settings.empty()) {
            throw Error("party '" + party.name + "' has no settings");
        }
        std::set<std::string> labels;
        for (const auto& setting : party.settings) {
            if (setting.label.empty() || setting.label.find('|') != std::string::npos) {
                throw Error("invalid setting label '" + setting.label + "'");
            }
            if (!labels.insert(setting.label).second) {
                throw Error("duplicate setting label '" + setting.label + "'");
            }
            if (setting.outcomes.empty()) {
                throw Error("setting '" + setting.label + "' has no outcomes");
            }
            std::set<std::string> outcomes;
            for (const auto& outcome : setting.outcomes) {
                if (outcome.empty() || outcome.find(',') != std::string::npos) {
                    throw Error("invalid outcome label '" + outcome + "'");
                }
                if (!outcomes.insert(outcome).second) {
                    throw Error("duplicate outcome label '" + outcome + "'");
                }
            }
        }
    }
}

}  // namespace

std::vector<Context> all_contexts(const Signature& signature) {
    std::vector<Context> contexts;
    Context current(signature.size());
    std::vector<size_t> chosen(signature.size(), 0);
    while (true) {
        for (size_t p = 0; p < signature.size(); ++p) {
            current[p] = signature[p].settings[chosen[p]].label;
        }
        contexts.push_back(current);
        // Odometer, last party fastest.
        size_t p = signature.size();
        while (p > 0) {
            --p;
            if (++chosen[p] < signature[p].settings.size()) break;
            chosen[p] = 0;
            if (p == 0) return contexts;
        }
    }
}

std::vector<Tuple> all_tuples(const Signature& signature, const Context& context) {
    std::vector<const SettingSignature*> settings;
    settings.reserve(signature.size());
    for (size_t p = 0; p < signature.size(); ++p) {
        settings.push_back(&context_setting(signature, context, p));
    }
    std::vector<Tuple> tuples;
    Tuple current(signature.size());
    std::vector<size_t> chosen(signature.size(), 0);
    while (true) {
        for (size_t p = 0; p < signature.size(); ++p) {
            current[p] = settings[p]->outcomes[chosen[p]];
        }
        tuples.push_back(current);
        size_t p = signature.size();
        while (p > 0) {
            --p;
            if (++chosen[p] < settings[p]->outcomes.size()) break;
            chosen[p] = 0;
            if (p == 0) return tuples;
        }
    }
}

std::size_t party_index(const Signature& signature, const std::string& name) {
    for (size_t p = 0; p < signature.size(); ++p) {
        if (signature[p].name == name) return p;
    }
    throw UnknownParty("no party named '" + name + "'");
}

const SettingSignature& context_setting(const Signature& signature, const Context& context,
                                        std::size_t party) {
    if (party >= signature.size() || context.size() != signature.size()) {
        throw Error("context does not match signature");
    }
    for (const auto& setting : signature[party].settings) {
        if (setting.label == context[party]) return setting;
    }
    throw Error("party '" + signature[party].name + "' has no setting '" + context[party] +
                "'");
}

std::string context_key(const Context& context) { return join(context, '|'); }

std::string tuple_key(const Tuple& outcome) { return join(outcome, ','); }

EmpiricalModel::EmpiricalModel(Signature signature,
                               std::map<Context, OutcomeDistribution> tables,
                               std::map<std::string, std::string> metadata)
    : signature_(std::move(signature)),
      tables_(std::move(tables)),
      metadata_(std::move(metadata)) {
    validate_signature(signature_);
    const auto contexts = all_contexts(signature_);
    if (tables_.size() != contexts.size()) {
        throw Error("expected " + std::to_string(contexts.size()) + " contexts, got " +
                    std::to_string(tables_.size()));
    }
    for (const auto& context : contexts) {
        auto it = tables_.find(context);
        if (it == tables_.end()) {
            throw Error("missing context '" + context_key(context) + "'");
        }
        const auto tuples = all_tuples(signature_, context);
        if (it->second.entries().size() != tuples.size()) {
            throw Error("context '" + context_key(context) + "' has wrong outcome count");
        }
        for (const auto& outcome : tuples) {
            if (!it->second.entries().count(outcome)) {
                throw Error("context '" + context_key(context) + "' misses outcome '" +
                            tuple_key(outcome) + "'");
            }
        }
    }
}

const OutcomeDistribution& EmpiricalModel::table(const Context& context) const {
    auto it = tables_.find(context);
    if (it == tables_.end()) {
        throw Error("no table for context '" + context_key(context) + "'");
    }
    return it->second;
}

EmpiricalModel EmpiricalModel::with_metadata(
    std::map<std::string, std::string> metadata) const {
    EmpiricalModel copy = *this;
    copy.metadata_ = std::move(metadata);
    return copy;
}

SupportModel::SupportModel(Signature signature, std::map<Context, std::set<Tuple>> possible)
    : signature_(std::move(signature)), possible_(std::move(possible)) {
    validate_signature(signature_);
    const auto contexts = all_contexts(signature_);
    if (possible_.size() != contexts.size()) {
        throw Error("support does not cover every context");
    }
    for (const auto& context : contexts) {
        auto it = possible_.find(context);
        if (it == possible_.end()) {
            throw Error("support misses context '" + context_key(context) + "'");
        }
        if (it->second.empty()) {
            throw Error("empty possible-set in context '" + context_key(context) + "'");
        }
    }
}

const std::set<Tuple>& SupportModel::possible_at(const Context& context) const {
    auto it = possible_.find(context);
    if (it == possible_.end()) {
        throw Error("no support for context '" + context_key(context) + "'");
    }
    return it->second;
}

OutcomeDistribution marginalize(const EmpiricalModel& model, const Context& context,
                                const std::vector<std::string>& parties) {
    if (parties.empty()) throw Error("marginal needs a nonempty party subset");
    std::vector<size_t> indices;
    indices.reserve(parties.size());
    for (const auto& name : parties) {
        indices.push_back(party_index(model.signature(), name));
    }
    std::map<Tuple, double> entries;
    for (const auto& [outcome, p] : model.table(context).entries()) {
        Tuple projected;
        projected.reserve(indices.size());
        for (size_t index : indices) projected.push_back(outcome[index]);
        entries[std::move(projected)] += p;
    }
    return OutcomeDistribution(std::move(entries));
}

SupportModel support(const EmpiricalModel& model, double epsilon) {
    if (epsilon < 0.0) throw Error("support threshold must be >= 0");
    double min_nonzero = std::numeric_limits<double>::infinity();
    for (const auto& [context, table] : model.tables()) {
        for (const auto& [outcome, p] : table.entries()) {
            if (p > 0.0) min_nonzero = std::min(min_nonzero, p);
        }
    }
    if (epsilon >= min_nonzero) {
        throw EpsilonTooLarge("threshold " + std::to_string(epsilon) +
                              " not below smallest nonzero probability " +
                              std::to_string(min_nonzero));
    }
    std::map<Context, std::set<Tuple>> possible;
    for (const auto& [context, table] : model.tables()) {
        auto& set = possible[context];
        for (const auto& [outcome, p] : table.entries()) {
            if (p > epsilon) set.insert(outcome);
        }
    }
    return SupportModel(model.signature(), std::move(possible));
}

NoSignallingReport no_signalling_report(const EmpiricalModel& model, double tol) {
    NoSignallingReport report;
    report.tol = tol;

    const auto& signature = model.signature();
    const size_t n_parties = signature.size();
    const auto contexts = all_contexts(signature);

    for (std::uint32_t mask = 1; mask + 1 < (1u << n_parties); ++mask) {
        std::vector<std::string> subset;
        for (size_t p = 0; p < n_parties; ++p) {
            if (mask & (1u << p)) subset.push_back(signature[p].name);
        }
        // Group contexts by the subset's settings; marginals within one
        // group must coincide.
        std::map<Context, std::vector<OutcomeDistribution>> groups;
        for (const auto& context : contexts) {
            Context sub_context;
            for (size_t p = 0; p < n_parties; ++p) {
                if (mask & (1u << p)) sub_context.push_back(context[p]);
            }
            groups[sub_context].push_back(marginalize(model, context, subset));
        }
        double discrepancy = 0.0;
        for (const auto& [sub_context, marginals] : groups) {
            for (size_t a = 0; a < marginals.size(); ++a) {
                for (size_t b = a + 1; b < marginals.size(); ++b) {
                    for (const auto& [outcome, p] : marginals[a].entries()) {
                        discrepancy = std::max(
                            discrepancy, std::abs(p - marginals[b].prob(outcome)));
                    }
                }
            }
        }
        report.entries.push_back({std::move(subset), discrepancy});
        report.max_discrepancy = std::max(report.max_discrepancy, discrepancy);
    }
    report.pass = report.max_discrepancy <= tol;
    return report;
}

namespace {

std::string escape_json(const std::string& raw) {
    std::string out = "\"";
    for (char c : raw) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
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

std::string pointer_token(const std::string& raw) {
    std::string out;
    for (char c : raw) {
        if (c == '~') {
            out += "~0";
        } else if (c == '/') {
            out += "~1";
        } else {
            out += c;
        }
    }
    return out;
}

const nlohmann::json& require_member(const nlohmann::json& node, const std::string& pointer,
                                     const char* key) {
    auto it = node.find(key);
    if (it == node.end()) {
        throw SchemaViolation(pointer, std::string("missing key '") + key + "'");
    }
    return *it;
}

std::string require_string(const nlohmann::json& node, const std::string& pointer) {
    if (!node.is_string()) throw SchemaViolation(pointer, "expected string");
    return node.get<std::string>();
}

}  // namespace

std::string to_json(const EmpiricalModel& model) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"version\": 1,\n";

    out << "  \"signature\": [\n";
    const auto& signature = model.signature();
    for (size_t p = 0; p < signature.size(); ++p) {
        out << "    {\n";
        out << "      \"name\": " << escape_json(signature[p].name) << ",\n";
        out << "      \"settings\": [\n";
        for (size_t s = 0; s < signature[p].settings.size(); ++s) {
            const auto& setting = signature[p].settings[s];
            out << "        { \"label\": " << escape_json(setting.label)
                << ", \"outcomes\": [";
            for (size_t o = 0; o < setting.outcomes.size(); ++o) {
                if (o > 0) out << ", ";
                out << escape_json(setting.outcomes[o]);
            }
            out << "] }" << (s + 1 < signature[p].settings.size() ? "," : "") << "\n";
        }
        out << "      ]\n";
        out << "    }" << (p + 1 < signature.size() ? "," : "") << "\n";
    }
    out << "  ],\n";

    out << "  \"tables\": {\n";
    const auto contexts = all_contexts(signature);
    for (size_t c = 0; c < contexts.size(); ++c) {
        const auto& table = model.table(contexts[c]);
        out << "    " << escape_json(context_key(contexts[c])) << ": {\n";
        const auto tuples = all_tuples(signature, contexts[c]);
        for (size_t t = 0; t < tuples.size(); ++t) {
            out << "      " << escape_json(tuple_key(tuples[t])) << ": "
                << format_double(table.prob(tuples[t]))
                << (t + 1 < tuples.size() ? "," : "") << "\n";
        }
        out << "    }" << (c + 1 < contexts.size() ? "," : "") << "\n";
    }
    out << "  },\n";

    out << "  \"metadata\": {";
    const auto& metadata = model.metadata();
    size_t written = 0;
    for (const auto& [key, value] : metadata) {
        out << (written++ ? "," : "") << "\n    " << escape_json(key) << ": "
            << escape_json(value);
    }
    out << (metadata.empty() ? "}\n" : "\n  }\n");
    out << "}\n";
    return out.str();
}

EmpiricalModel from_json(std::string_view text) {
    nlohmann::json document;
    try {
        document = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw SchemaViolation("", std::string("invalid JSON: ") + err.what());
    }
    if (!document.is_object()) throw SchemaViolation("", "expected top-level object");

    const auto& version = require_member(document, "", "version");
    if (!version.is_number_integer() || version.get<int>() != 1) {
        throw SchemaViolation("/version", "unsupported version, expected 1");
    }

    const auto& signature_node = require_member(document, "", "signature");
    if (!signature_node.is_array() || signature_node.empty()) {
        throw SchemaViolation("/signature", "expected nonempty array");
    }
    Signature signature;
    for (size_t p = 0; p < signature_node.size(); ++p) {
        const std::string base = "/signature/" + std::to_string(p);
        const auto& party_node = signature_node[p];
        if (!party_node.is_object()) throw SchemaViolation(base, "expected object");
        PartySignature party;
        party.name = require_string(require_member(party_node, base, "name"), base + "/name");
        const auto& settings_node = require_member(party_node, base, "settings");
        if (!settings_node.is_array() || settings_node.empty()) {
            throw SchemaViolation(base + "/settings", "expected nonempty array");
        }
        for (size_t s = 0; s < settings_node.size(); ++s) {
            const std::string setting_base = base + "/settings/" + std::to_string(s);
            const auto& setting_node = settings_node[s];
            if (!setting_node.is_object()) {
                throw SchemaViolation(setting_base, "expected object");
            }
            SettingSignature setting;
            setting.label = require_string(require_member(setting_node, setting_base, "label"),
                                           setting_base + "/label");
            const auto& outcomes_node = require_member(setting_node, setting_base, "outcomes");
            if (!outcomes_node.is_array() || outcomes_node.empty()) {
                throw SchemaViolation(setting_base + "/outcomes", "expected nonempty array");
            }
            for (size_t o = 0; o < outcomes_node.size(); ++o) {
                setting.outcomes.push_back(require_string(
                    outcomes_node[o], setting_base + "/outcomes/" + std::to_string(o)));
            }
            party.settings.push_back(std::move(setting));
        }
        signature.push_back(std::move(party));
    }
    try {
        validate_signature(signature);
    } catch (const Error& err) {
        throw SchemaViolation("/signature", err.what());
    }

    const auto& tables_node = require_member(document, "", "tables");
    if (!tables_node.is_object()) throw SchemaViolation("/tables", "expected object");

    std::set<std::string> expected_contexts;
    std::map<Context, OutcomeDistribution> tables;
    for (const auto& context : all_contexts(signature)) {
        const std::string key = context_key(context);
        expected_contexts.insert(key);
        auto it = tables_node.find(key);
        if (it == tables_node.end()) {
            throw SchemaViolation("/tables", "missing context '" + key + "'");
        }
        const std::string table_pointer = "/tables/" + pointer_token(key);
        if (!it->is_object()) throw SchemaViolation(table_pointer, "expected object");

        std::map<Tuple, double> entries;
        double sum = 0.0;
        std::set<std::string> expected_tuples;
        for (const auto& outcome : all_tuples(signature, context)) {
            const std::string outcome_key = tuple_key(outcome);
            expected_tuples.insert(outcome_key);
            auto value_it = it->find(outcome_key);
            if (value_it == it->end()) {
                throw SchemaViolation(table_pointer, "missing outcome '" + outcome_key + "'");
            }
            const std::string value_pointer = table_pointer + "/" + pointer_token(outcome_key);
            if (!value_it->is_number()) {
                throw SchemaViolation(value_pointer, "expected number");
            }
            const double p = value_it->get<double>();
            if (!std::isfinite(p) || p < -qsim::kProbClamp || p > 1.0 + 1e-9) {
                throw SchemaViolation(value_pointer, "probability out of range");
            }
            sum += std::max(p, 0.0);
            entries[outcome] = p;
        }
        for (const auto& [key_str, ignored] : it->items()) {
            if (!expected_tuples.count(key_str)) {
                throw SchemaViolation(table_pointer + "/" + pointer_token(key_str),
                                      "unknown outcome tuple");
            }
        }
        if (std::abs(sum - 1.0) > 1e-9) {
            throw SchemaViolation(table_pointer, "probabilities sum to " +
                                                     std::to_string(sum) + ", expected 1");
        }
        tables.emplace(context, OutcomeDistribution(std::move(entries)));
    }
    for (const auto& [key_str, ignored] : tables_node.items()) {
        if (!expected_contexts.count(key_str)) {
            throw SchemaViolation("/tables/" + pointer_token(key_str), "unknown context");
        }
    }

    std::map<std::string, std::string> metadata;
    if (auto it = document.find("metadata"); it != document.end()) {
        if (!it->is_object()) throw SchemaViolation("/metadata", "expected object");
        for (const auto& [key, value] : it->items()) {
            metadata[key] =
                require_string(value, "/metadata/" + pointer_token(key));
        }
    }
    return EmpiricalModel(std::move(signature), std::move(tables), std::move(metadata));
}

}  // namespace wignerlab::empirical
