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

#include "cloudsearch/catalog.hpp"
#include "cloudsearch/rng.hpp"
#include "cloudsearch/surrogate.hpp"

#include <set>
#include <string_view>
#include <vector>

namespace cloudsearch {

enum class AcquisitionKind { expected_improvement, probability_of_improvement, lower_confidence_bound };

std::string_view to_string(AcquisitionKind kind);
AcquisitionKind acquisition_kind_from_string(std::string_view text);

struct AcquisitionSpec {
    AcquisitionKind kind = AcquisitionKind::expected_improvement;
    double xi = 0.0;    // improvement margin for EI/MPI
    double kappa = 2.0; // LCB confidence weight
};

double standard_normal_pdf(double z);
double standard_normal_cdf(double z);

/// Everything below uses the minimization convention: `best` is the lowest
/// log-cost observed so far and improvement means going lower.

/// (best - mean - xi) Phi(z) + stddev phi(z) with z = (best - mean - xi)/stddev;
/// at stddev = 0 degenerates to max(best - mean - xi, 0).
double expected_improvement(const Posterior& post, double best, double xi);

/// Phi((best - mean - xi)/stddev); at stddev = 0 the 0/1 indicator of
/// mean + xi < best.
double probability_of_improvement(const Posterior& post, double best, double xi);

/// mean - kappa * stddev; lower is more promising.
double lower_confidence_bound(const Posterior& post, double kappa);

/// Higher-is-better score under `spec` (LCB is negated).
double acquisition_score(const AcquisitionSpec& spec, const Posterior& post, double best);

/// Index of the maximal score; exact ties are resolved uniformly at random.
std::size_t select_from_scores(const std::vector<double>& scores, Rng& rng);

/// Scores every unobserved, not-known-infeasible grid point and returns the
/// winner. Throws ExhaustedSpaceError when no candidate remains.
CloudConfiguration select_next(const Surrogate& surrogate, const ConfigurationSpace& space,
                               const AcquisitionSpec& spec, const std::set<std::size_t>& observed,
                               const std::set<std::size_t>& infeasible, double best_log_cost,
                               Rng& rng);

} // namespace cloudsearch
