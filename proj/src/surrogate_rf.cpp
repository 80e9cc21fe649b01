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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace cloudsearch {

namespace {

struct Sample {
    std::array<double, 2> x;
    double y;
};

struct SplitCandidate {
    bool found = false;
    int feature = 0;
    double threshold = 0.0;
    double score = 0.0; // SSE reduction; larger is better
};

double sum_of(const std::vector<Sample>& data, const std::vector<int>& idx) {
    double s = 0.0;
    for (int i : idx) {
        s += data[static_cast<std::size_t>(i)].y;
    }
    return s;
}

/// Best variance-reducing axis-aligned split. Ties resolve to the lowest
/// feature, then the lowest threshold, so tree growth is deterministic.
SplitCandidate best_split(const std::vector<Sample>& data, std::vector<int>& idx) {
    SplitCandidate best;
    const double total_sum = sum_of(data, idx);
    const double count = static_cast<double>(idx.size());

    for (int feature = 0; feature < 2; ++feature) {
        std::sort(idx.begin(), idx.end(), [&](int a, int b) {
            const auto& sa = data[static_cast<std::size_t>(a)];
            const auto& sb = data[static_cast<std::size_t>(b)];
            if (sa.x[static_cast<std::size_t>(feature)] != sb.x[static_cast<std::size_t>(feature)]) {
                return sa.x[static_cast<std::size_t>(feature)] <
                       sb.x[static_cast<std::size_t>(feature)];
            }
            return a < b;
        });

        double left_sum = 0.0;
        for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
            left_sum += data[static_cast<std::size_t>(idx[k])].y;
            const double xk = data[static_cast<std::size_t>(idx[k])].x[static_cast<std::size_t>(feature)];
            const double xnext =
                data[static_cast<std::size_t>(idx[k + 1])].x[static_cast<std::size_t>(feature)];
            if (xk == xnext) {
                continue;
            }
            const double left_count = static_cast<double>(k + 1);
            const double right_count = count - left_count;
            const double right_sum = total_sum - left_sum;
            // SSE reduction up to constants: sum_l^2/n_l + sum_r^2/n_r.
            const double score =
                left_sum * left_sum / left_count + right_sum * right_sum / right_count;
            // Features and thresholds are scanned in ascending order, so a
            // strict comparison keeps the first (lowest) of tied splits.
            if (!best.found || score > best.score) {
                best.found = true;
                best.feature = feature;
                best.threshold = 0.5 * (xk + xnext);
                best.score = score;
            }
        }
    }
    return best;
}

int build_node(std::vector<RfModel::Node>& nodes, const std::vector<Sample>& data,
               std::vector<int> idx, int min_leaf);

int make_leaf(std::vector<RfModel::Node>& nodes, const std::vector<Sample>& data,
              const std::vector<int>& idx) {
    RfModel::Node node;
    node.value = sum_of(data, idx) / static_cast<double>(idx.size());
    nodes.push_back(node);
    return static_cast<int>(nodes.size()) - 1;
}

int build_node(std::vector<RfModel::Node>& nodes, const std::vector<Sample>& data,
               std::vector<int> idx, int min_leaf) {
    if (static_cast<int>(idx.size()) <= min_leaf) {
        return make_leaf(nodes, data, idx);
    }
    const double first = data[static_cast<std::size_t>(idx.front())].y;
    const bool constant = std::all_of(idx.begin(), idx.end(), [&](int i) {
        return data[static_cast<std::size_t>(i)].y == first;
    });
    if (constant) {
        return make_leaf(nodes, data, idx);
    }

    const SplitCandidate split = best_split(data, idx);
    if (!split.found) {
        return make_leaf(nodes, data, idx); // all coordinates identical
    }

    std::vector<int> left_idx;
    std::vector<int> right_idx;
    for (int i : idx) {
        const double x = data[static_cast<std::size_t>(i)].x[static_cast<std::size_t>(split.feature)];
        (x <= split.threshold ? left_idx : right_idx).push_back(i);
    }

    const int self = static_cast<int>(nodes.size());
    nodes.emplace_back();
    nodes[static_cast<std::size_t>(self)].feature = split.feature;
    nodes[static_cast<std::size_t>(self)].threshold = split.threshold;
    const int left = build_node(nodes, data, std::move(left_idx), min_leaf);
    const int right = build_node(nodes, data, std::move(right_idx), min_leaf);
    nodes[static_cast<std::size_t>(self)].left = left;
    nodes[static_cast<std::size_t>(self)].right = right;
    return self;
}

} // namespace

double RfModel::Tree::predict(const std::array<double, 2>& point) const {
    int at = 0;
    while (nodes[static_cast<std::size_t>(at)].feature >= 0) {
        const Node& node = nodes[static_cast<std::size_t>(at)];
        at = point[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left
                                                                             : node.right;
    }
    return nodes[static_cast<std::size_t>(at)].value;
}

RfModel rf_fit(const std::vector<std::array<double, 2>>& points, const std::vector<double>& targets,
               std::uint64_t seed, const RfFitOptions& options) {
    if (points.empty()) {
        throw ValidationError("random forest needs at least one training point");
    }
    if (points.size() != targets.size()) {
        throw ValidationError("points and targets differ in length");
    }
    if (options.tree_count < 2) {
        throw ValidationError("tree_count must be >= 2 for a spread estimate");
    }

    // Canonical training order: fits depend on the set of samples, not on
    // the order callers happened to supply them in.
    std::vector<Sample> data(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        data[i] = Sample{points[i], targets[i]};
    }
    std::sort(data.begin(), data.end(), [](const Sample& a, const Sample& b) {
        if (a.x[0] != b.x[0]) {
            return a.x[0] < b.x[0];
        }
        if (a.x[1] != b.x[1]) {
            return a.x[1] < b.x[1];
        }
        return a.y < b.y;
    });

    RfModel model;
    model.trees_.resize(static_cast<std::size_t>(options.tree_count));
    const std::size_t n = data.size();
    for (int t = 0; t < options.tree_count; ++t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        std::vector<int> bootstrap(n);
        for (std::size_t i = 0; i < n; ++i) {
            bootstrap[i] = static_cast<int>(rng.uniform_index(n));
        }
        auto& tree = model.trees_[static_cast<std::size_t>(t)];
        build_node(tree.nodes, data, std::move(bootstrap), options.min_leaf);
    }
    return model;
}

std::vector<double> RfModel::tree_predictions(const std::array<double, 2>& point) const {
    std::vector<double> predictions;
    predictions.reserve(trees_.size());
    for (const Tree& tree : trees_) {
        predictions.push_back(tree.predict(point));
    }
    return predictions;
}

int RfModel::tree_count() const {
    return static_cast<int>(trees_.size());
}

Posterior RfModel::predict(const std::array<double, 2>& point) const {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const Tree& tree : trees_) {
        const double p = tree.predict(point);
        sum += p;
        sum_sq += p * p;
    }
    const double count = static_cast<double>(trees_.size());
    Posterior post;
    post.mean = sum / count;
    post.stddev = std::sqrt(std::max(sum_sq / count - post.mean * post.mean, 0.0));
    return post;
}

std::string RfModel::dump_parameters() const {
    std::ostringstream out;
    out << "kind=rf\n";
    out << "tree_count=" << trees_.size() << "\n";
    return out.str();
}

} // namespace cloudsearch
