/*
 * Copyright 2026 The cloudsearch Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace cloudsearch {

/// Malformed input text (CSV rows, key=value files). Messages carry a line
/// number when one is known.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Structurally well-formed input that violates a domain invariant
/// (duplicate names, empty catalogs, non-increasing size axes, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A key that should resolve does not (configuration absent from a trace,
/// workload missing from the PI-fraction table).
class LookupError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The requested observation mode has no data for the configuration.
class ModeUnavailableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Linear-algebra failure that the jitter ladder could not repair.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A search finished without observing a single feasible configuration.
/// Carries the money already spent so callers can account for it.
class NoSolutionError : public std::runtime_error {
public:
    NoSolutionError(const std::string& msg, double accumulated_charge_usd)
        : std::runtime_error(msg), accumulated_charge_usd(accumulated_charge_usd) {}

    double accumulated_charge_usd;
};

/// The acquisition step was asked to pick a candidate when none remain.
class ExhaustedSpaceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace cloudsearch
