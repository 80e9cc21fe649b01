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

#include "cloudsearch/surrogate.hpp"

#include "cloudsearch/errors.hpp"
#include "cloudsearch/rng.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace cloudsearch {

namespace {

constexpr double kSqrt5 = 2.2360679774997896;

double matern52(double r, double signal_variance) {
    const double a = kSqrt5 * r;
    return signal_variance * (1.0 + a + 5.0 / 3.0 * r * r) * std::exp(-a);
}

/// Scaled squared distances per dimension and the Gram matrix pieces shared
/// by every likelihood evaluation of one dataset.
struct GpWorkspace {
    // d2[dim](i,j) = (x_i[dim] - x_j[dim])^2, unscaled.
    std::array<Eigen::MatrixXd, 2> d2;
    Eigen::VectorXd y; // centered targets
    int n = 0;

    GpWorkspace(const std::vector<std::array<double, 2>>& points, const Eigen::VectorXd& centered) {
        n = static_cast<int>(points.size());
        y = centered;
        for (int dim = 0; dim < 2; ++dim) {
            d2[dim].resize(n, n);
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    const double d = points[i][dim] - points[j][dim];
                    d2[dim](i, j) = d * d;
                }
            }
        }
    }

    Eigen::MatrixXd gram(const GpHyperparameters& hp) const {
        const double inv_l0 = 1.0 / (hp.lengthscale_vm * hp.lengthscale_vm);
        const double inv_l1 = 1.0 / (hp.lengthscale_size * hp.lengthscale_size);
        Eigen::MatrixXd K(n, n);
        for (int i = 0; i < n; ++i) {
            K(i, i) = hp.signal_variance;
            for (int j = 0; j < i; ++j) {
                const double r = std::sqrt(d2[0](i, j) * inv_l0 + d2[1](i, j) * inv_l1);
                const double k = matern52(r, hp.signal_variance);
                K(i, j) = k;
                K(j, i) = k;
            }
        }
        return K;
    }
};

struct GpFactorization {
    Eigen::MatrixXd chol_lower;
    Eigen::VectorXd alpha;
    double log_marginal = 0.0;
    bool ok = false;
};

/// Cholesky of K + noise*I, climbing the jitter ladder when the
/// factorization fails. Also evaluates the log marginal likelihood.
GpFactorization factorize(const Eigen::MatrixXd& gram, const GpHyperparameters& hp,
                          const Eigen::VectorXd& y) {
    const int n = static_cast<int>(gram.rows());
    GpFactorization result;
    constexpr std::array<double, 6> kJitterLadder = {0.0, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4};
    for (double jitter : kJitterLadder) {
        Eigen::MatrixXd K = gram;
        K.diagonal().array() += hp.noise_variance + jitter;
        const Eigen::LLT<Eigen::MatrixXd> llt(K);
        if (llt.info() != Eigen::Success) {
            continue;
        }
        result.chol_lower = llt.matrixL();
        result.alpha = llt.solve(y);
        double log_det = 0.0;
        for (int i = 0; i < n; ++i) {
            log_det += std::log(result.chol_lower(i, i));
        }
        result.log_marginal = -0.5 * y.dot(result.alpha) - log_det -
                              0.5 * static_cast<double>(n) * std::log(2.0 * M_PI);
        result.ok = std::isfinite(result.log_marginal);
        if (result.ok) {
            return result;
        }
    }
    result.ok = false;
    return result;
}

std::array<double, 4> lml_gradient(const GpWorkspace& ws, const GpHyperparameters& hp,
                                   const GpFactorization& fact) {
    const int n = ws.n;
    const double inv_l0 = 1.0 / (hp.lengthscale_vm * hp.lengthscale_vm);
    const double inv_l1 = 1.0 / (hp.lengthscale_size * hp.lengthscale_size);

    // W = alpha alpha^T - K^{-1}; grad_theta = 0.5 tr(W dK/dtheta).
    Eigen::MatrixXd kinv = Eigen::MatrixXd::Identity(n, n);
    fact.chol_lower.triangularView<Eigen::Lower>().solveInPlace(kinv);
    fact.chol_lower.transpose().triangularView<Eigen::Upper>().solveInPlace(kinv);
    const Eigen::MatrixXd w = fact.alpha * fact.alpha.transpose() - kinv;

    // dK/dl_d = sv * 5/3 * (1 + sqrt5 r) exp(-sqrt5 r) * d_d^2 / l_d^3,
    // dK/dsv = K/sv, dK/dnoise = I.
    const double inv_l0_cubed = inv_l0 / hp.lengthscale_vm;
    const double inv_l1_cubed = inv_l1 / hp.lengthscale_size;
    double grad_l0 = 0.0;
    double grad_l1 = 0.0;
    double grad_sv = 0.0;
    for (int i = 0; i < n; ++i) {
        grad_sv += 0.5 * w(i, i); // diagonal: k = sv, dk/dsv = 1
        for (int j = 0; j < i; ++j) {
            const double r = std::sqrt(ws.d2[0](i, j) * inv_l0 + ws.d2[1](i, j) * inv_l1);
            const double a = kSqrt5 * r;
            const double expa = std::exp(-a);
            const double common = hp.signal_variance * (5.0 / 3.0) * (1.0 + a) * expa;
            grad_l0 += w(i, j) * common * ws.d2[0](i, j) * inv_l0_cubed;
            grad_l1 += w(i, j) * common * ws.d2[1](i, j) * inv_l1_cubed;
            grad_sv += w(i, j) * (1.0 + a + 5.0 / 3.0 * r * r) * expa;
        }
    }
    const double grad_noise = 0.5 * w.trace();
    return {grad_l0, grad_l1, grad_sv, grad_noise};
}

void validate_training_data(const std::vector<std::array<double, 2>>& points,
                            const std::vector<double>& targets) {
    if (points.empty()) {
        throw ValidationError("GP needs at least one training point");
    }
    if (points.size() != targets.size()) {
        throw ValidationError("points and targets differ in length");
    }
    for (const auto& p : points) {
        if (!std::isfinite(p[0]) || !std::isfinite(p[1])) {
            throw ValidationError("non-finite training point");
        }
    }
    for (double t : targets) {
        if (!std::isfinite(t)) {
            throw ValidationError("non-finite training target");
        }
    }
}

Eigen::VectorXd center_targets(const std::vector<double>& targets, double& mean_out) {
    Eigen::VectorXd y(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i) {
        y[static_cast<int>(i)] = targets[i];
    }
    mean_out = y.mean();
    y.array() -= mean_out;
    return y;
}

} // namespace

GpModel::GpModel(std::vector<std::array<double, 2>> points, std::vector<double> targets,
                 GpHyperparameters hyperparameters)
    : points_(std::move(points)), hyperparameters_(hyperparameters) {
    validate_training_data(points_, targets);
    targets_ = center_targets(targets, target_mean_);

    const GpWorkspace ws(points_, targets_);
    const GpFactorization fact = factorize(ws.gram(hyperparameters_), hyperparameters_, targets_);
    if (!fact.ok) {
        throw NumericError("Gram matrix not positive definite even with maximum jitter");
    }
    chol_lower_ = fact.chol_lower;
    alpha_ = fact.alpha;
    log_marginal_likelihood_ = fact.log_marginal;
}

Posterior GpModel::predict(const std::array<double, 2>& point) const {
    const int n = static_cast<int>(points_.size());
    const double inv_l0 = 1.0 / (hyperparameters_.lengthscale_vm * hyperparameters_.lengthscale_vm);
    const double inv_l1 =
        1.0 / (hyperparameters_.lengthscale_size * hyperparameters_.lengthscale_size);

    Eigen::VectorXd k_star(n);
    for (int i = 0; i < n; ++i) {
        const double d0 = points_[static_cast<std::size_t>(i)][0] - point[0];
        const double d1 = points_[static_cast<std::size_t>(i)][1] - point[1];
        const double r = std::sqrt(d0 * d0 * inv_l0 + d1 * d1 * inv_l1);
        k_star[i] = matern52(r, hyperparameters_.signal_variance);
    }

    Posterior post;
    post.mean = target_mean_ + k_star.dot(alpha_);

    const Eigen::VectorXd v = chol_lower_.triangularView<Eigen::Lower>().solve(k_star);
    const double variance = hyperparameters_.signal_variance - v.squaredNorm();
    post.stddev = std::sqrt(std::max(variance, 0.0));
    return post;
}

std::array<double, 4> GpModel::log_marginal_likelihood_gradient() const {
    const GpWorkspace ws(points_, targets_);
    GpFactorization fact;
    fact.chol_lower = chol_lower_;
    fact.alpha = alpha_;
    return lml_gradient(ws, hyperparameters_, fact);
}

std::string GpModel::dump_hyperparameters() const {
    std::ostringstream out;
    out << "kind=gp\n";
    out << "lengthscale_vm=" << hyperparameters_.lengthscale_vm << "\n";
    out << "lengthscale_size=" << hyperparameters_.lengthscale_size << "\n";
    out << "signal_variance=" << hyperparameters_.signal_variance << "\n";
    out << "noise_variance=" << hyperparameters_.noise_variance << "\n";
    out << "log_marginal_likelihood=" << log_marginal_likelihood_ << "\n";
    return out.str();
}

GpModel gp_fit(const std::vector<std::array<double, 2>>& points,
               const std::vector<double>& targets, const GpFitOptions& options) {
    validate_training_data(points, targets);

    double target_mean = 0.0;
    const Eigen::VectorXd y = center_targets(targets, target_mean);
    const GpWorkspace ws(points, y);

    const std::array<double, 4> lo = {std::log(options.lengthscale_min),
                                      std::log(options.lengthscale_min),
                                      std::log(options.signal_variance_min),
                                      std::log(options.noise_variance_min)};
    const std::array<double, 4> hi = {std::log(options.lengthscale_max),
                                      std::log(options.lengthscale_max),
                                      std::log(options.signal_variance_max),
                                      std::log(options.noise_variance_max)};

    const auto clip = [&](std::array<double, 4>& log_theta) {
        for (int k = 0; k < 4; ++k) {
            log_theta[k] = std::min(hi[k], std::max(lo[k], log_theta[k]));
        }
    };
    const auto to_hp = [](const std::array<double, 4>& log_theta) {
        return GpHyperparameters{std::exp(log_theta[0]), std::exp(log_theta[1]),
                                 std::exp(log_theta[2]), std::exp(log_theta[3])};
    };
    const auto evaluate = [&](const std::array<double, 4>& log_theta) -> GpFactorization {
        return factorize(ws.gram(to_hp(log_theta)), to_hp(log_theta), y);
    };

    Rng start_rng(options.start_seed);
    std::array<double, 4> best_theta{};
    double best_lml = -std::numeric_limits<double>::infinity();
    bool any_ok = false;

    for (int restart = 0; restart < options.restarts; ++restart) {
        std::array<double, 4> theta;
        for (int k = 0; k < 4; ++k) {
            theta[k] = lo[k] + (hi[k] - lo[k]) * start_rng.uniform01();
        }

        GpFactorization fact = evaluate(theta);
        if (!fact.ok) {
            continue;
        }
        double lml = fact.log_marginal;

        // Projected gradient ascent in log-parameter space with an adaptive
        // step; candidates that fail to factorize are rejected like any
        // non-improving step.
        double step = 0.25;
        for (int iter = 0; iter < options.max_iterations && step > 1e-4; ++iter) {
            const std::array<double, 4> grad = lml_gradient(ws, to_hp(theta), fact);
            // Chain rule to log space: d/d log(theta) = theta * d/d theta.
            std::array<double, 4> log_grad;
            double norm = 0.0;
            for (int k = 0; k < 4; ++k) {
                log_grad[k] = std::exp(theta[k]) * grad[k];
                norm += log_grad[k] * log_grad[k];
            }
            norm = std::sqrt(norm);
            if (norm < 1e-7) {
                break;
            }

            std::array<double, 4> candidate;
            for (int k = 0; k < 4; ++k) {
                candidate[k] = theta[k] + step * log_grad[k] / norm;
            }
            clip(candidate);
            const GpFactorization cand_fact = evaluate(candidate);
            if (cand_fact.ok && cand_fact.log_marginal > lml) {
                theta = candidate;
                fact = cand_fact;
                lml = cand_fact.log_marginal;
                step = std::min(step * 1.3, 1.0);
            } else {
                step *= 0.5;
            }
        }

        if (lml > best_lml) {
            best_lml = lml;
            best_theta = theta;
            any_ok = true;
        }
    }

    if (!any_ok) {
        throw NumericError("GP fit failed: no restart produced a usable factorization");
    }

    std::vector<double> raw_targets(targets.begin(), targets.end());
    return GpModel(points, std::move(raw_targets), to_hp(best_theta));
}

} // namespace cloudsearch
