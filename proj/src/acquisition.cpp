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

#include "cloudsearch/acquisition.hpp"

#include "cloudsearch/errors.hpp"

#include <cmath>
#include <limits>

namespace cloudsearch {

std::string_view to_string(AcquisitionKind kind) {
    switch (kind) {
    case AcquisitionKind::expected_improvement:
        return "ei";
    case AcquisitionKind::probability_of_improvement:
        return "mpi";
    case AcquisitionKind::lower_confidence_bound:
        return "lcb";
    }
    return "ei";
}

AcquisitionKind acquisition_kind_from_string(std::string_view text) {
    if (text == "ei") {
        return AcquisitionKind::expected_improvement;
    }
    if (text == "mpi") {
        return AcquisitionKind::probability_of_improvement;
    }
    if (text == "lcb") {
        return AcquisitionKind::lower_confidence_bound;
    }
    throw ValidationError("unknown acquisition: " + std::string(text));
}

double standard_normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
}

double standard_normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

double expected_improvement(const Posterior& post, double best, double xi) {
    const double gap = best - post.mean - xi;
    if (post.stddev <= 0.0) {
        return std::max(gap, 0.0);
    }
    const double z = gap / post.stddev;
    return gap * standard_normal_cdf(z) + post.stddev * standard_normal_pdf(z);
}

double probability_of_improvement(const Posterior& post, double best, double xi) {
    const double gap = best - post.mean - xi;
    if (post.stddev <= 0.0) {
        return gap > 0.0 ? 1.0 : 0.0;
    }
    return standard_normal_cdf(gap / post.stddev);
}

double lower_confidence_bound(const Posterior& post, double kappa) {
    return post.mean - kappa * post.stddev;
}

double acquisition_score(const AcquisitionSpec& spec, const Posterior& post, double best) {
    switch (spec.kind) {
    case AcquisitionKind::expected_improvement:
        return expected_improvement(post, best, spec.xi);
    case AcquisitionKind::probability_of_improvement:
        return probability_of_improvement(post, best, spec.xi);
    case AcquisitionKind::lower_confidence_bound:
        return -lower_confidence_bound(post, spec.kappa);
    }
    throw ValidationError("unknown acquisition kind");
}

std::size_t select_from_scores(const std::vector<double>& scores, Rng& rng) {
    if (scores.empty()) {
        throw ExhaustedSpaceError("no candidates to select from");
    }
    double best = -std::numeric_limits<double>::infinity();
    for (double s : scores) {
        if (!std::isfinite(s)) {
            throw NumericError("non-finite acquisition score");
        }
        best = std::max(best, s);
    }
    std::vector<std::size_t> ties;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (scores[i] == best) {
            ties.push_back(i);
        }
    }
    if (ties.size() == 1) {
        return ties.front();
    }
    return ties[rng.uniform_index(ties.size())];
}

CloudConfiguration select_next(const Surrogate& surrogate, const ConfigurationSpace& space,
                               const AcquisitionSpec& spec, const std::set<std::size_t>& observed,
                               const std::set<std::size_t>& infeasible, double best_log_cost,
                               Rng& rng) {
    std::vector<std::size_t> candidates;
    std::vector<double> scores;
    candidates.reserve(space.size());
    scores.reserve(space.size());
    for (std::size_t index = 0; index < space.size(); ++index) {
        if (observed.contains(index) || infeasible.contains(index)) {
            continue;
        }
        const CloudConfiguration config = space.at(index);
        const Posterior post = surrogate.predict(normalize_coordinates(space, config));
        candidates.push_back(index);
        scores.push_back(acquisition_score(spec, post, best_log_cost));
    }
    if (candidates.empty()) {
        throw ExhaustedSpaceError("every configuration is observed or known infeasible");
    }
    return space.at(candidates[select_from_scores(scores, rng)]);
}

} // namespace cloudsearch
