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

#pragma once

#include <stdexcept>
#include <string>

namespace wignerlab {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroNorm : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct LabelCollision : Error {
    using Error::Error;
};

struct LabelMismatch : Error {
    using Error::Error;
};

struct OverlappingSubsystems : Error {
    using Error::Error;
};

struct IncompleteMeasurement : Error {
    using Error::Error;
};

struct ZeroProbabilityOutcome : Error {
    using Error::Error;
};

struct DegenerateChoice : Error {
    using Error::Error;
};

struct UnknownParty : Error {
    using Error::Error;
};

struct EpsilonTooLarge : Error {
    using Error::Error;
};

struct ZeroConditioningEvent : Error {
    using Error::Error;
};

struct NonBinaryOutcomes : Error {
    using Error::Error;
};

struct SizeLimit : Error {
    using Error::Error;
};

/// Schema validation failure; carries the JSON-pointer path of the offending node.
struct SchemaViolation : Error {
    SchemaViolation(std::string json_pointer, const std::string& what)
        : Error(json_pointer + ": " + what), pointer(std::move(json_pointer)) {}

    std::string pointer;
};

}  // namespace wignerlab
