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

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace cloudsearch {

/// Surrogate prediction at one point: mean and standard deviation of the
/// latent log-cost.
struct Posterior {
    double mean = 0.0;
    double stddev = 0.0;
};

/// Probabilistic regressor over the normalized 2-D grid. Fitted models are
/// immutable and safe for concurrent prediction.
class Surrogate {
public:
    virtual ~Surrogate() = default;
    virtual Posterior predict(const std::array<double, 2>& point) const = 0;
};

struct GpHyperparameters {
    double lengthscale_vm = 0.5;
    double lengthscale_size = 0.5;
    double signal_variance = 1.0;
    double noise_variance = 1e-2;
};

struct GpFitOptions {
    int restarts = 8;
    int max_iterations = 60;
    double lengthscale_min = 0.01;
    double lengthscale_max = 2.0;
    double signal_variance_min = 1e-4;
    double signal_variance_max = 100.0;
    double noise_variance_min = 1e-6;
    double noise_variance_max = 1.0;
    // Start points are drawn from this fixed seed, independent of any run
    // seed, so a fit is a deterministic function of its training data.
    std::uint64_t start_seed = 0x5eed5eedULL;
};

/// Exact zero-mean GP on mean-centered targets with a Matern-5/2 kernel and
/// per-dimension lengthscales. The Gram factorization is cached; a jitter
/// ladder 1e-8..1e-4 repairs failed factorizations.
class GpModel final : public Surrogate {
public:
    GpModel(std::vector<std::array<double, 2>> points, std::vector<double> targets,
            GpHyperparameters hyperparameters);

    Posterior predict(const std::array<double, 2>& point) const override;

    double log_marginal_likelihood() const { return log_marginal_likelihood_; }

    /// d LML / d (lengthscale_vm, lengthscale_size, signal_variance,
    /// noise_variance), at the model's hyperparameters.
    std::array<double, 4> log_marginal_likelihood_gradient() const;

    const GpHyperparameters& hyperparameters() const { return hyperparameters_; }
    int training_size() const { return static_cast<int>(targets_.size()); }

    std::string dump_hyperparameters() const;

private:
    std::vector<std::array<double, 2>> points_;
    Eigen::VectorXd targets_; // centered
    double target_mean_ = 0.0;
    GpHyperparameters hyperparameters_;
    Eigen::MatrixXd chol_lower_;
    Eigen::VectorXd alpha_;
    double log_marginal_likelihood_ = 0.0;
};

/// Multi-start gradient ascent on the log marginal likelihood; the best
/// start wins. Throws ValidationError on empty/non-finite data.
GpModel gp_fit(const std::vector<std::array<double, 2>>& points,
               const std::vector<double>& targets, const GpFitOptions& options = {});

struct RfFitOptions {
    int tree_count = 100;
    int min_leaf = 1;
};

/// Bagged regression trees; predictive uncertainty is the spread of the
/// per-tree predictions. Training order is canonicalized before
/// bootstrapping, so fits are invariant to input permutation.
class RfModel final : public Surrogate {
public:
    struct Node {
        int feature = -1; // -1 marks a leaf
        double threshold = 0.0;
        double value = 0.0;
        int left = -1;
        int right = -1;
    };
    struct Tree {
        std::vector<Node> nodes;
        double predict(const std::array<double, 2>& point) const;
    };

    Posterior predict(const std::array<double, 2>& point) const override;

    std::vector<double> tree_predictions(const std::array<double, 2>& point) const;
    int tree_count() const;

    std::string dump_parameters() const;

private:
    friend RfModel rf_fit(const std::vector<std::array<double, 2>>&, const std::vector<double>&,
                          std::uint64_t, const RfFitOptions&);

    std::vector<Tree> trees_;
};

/// Per-tree bootstrap streams are derived from (seed, tree index).
RfModel rf_fit(const std::vector<std::array<double, 2>>& points, const std::vector<double>& targets,
               std::uint64_t seed, const RfFitOptions& options = {});

} // namespace cloudsearch
