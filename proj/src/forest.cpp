#include "cstrength/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cstrength/rng.hpp"

namespace cstrength {

Dataset bootstrap_sample(const Dataset& data, std::uint64_t seed) {
    if (data.samples.empty()) throw NumericError("bootstrap_sample: empty dataset");
    Rng rng(seed);
    Dataset out;
    out.source_id = data.source_id + "#bootstrap";
    const std::size_t n = data.size();
    out.samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.samples.push_back(data.samples[rng.below(n)]);
    return out;
}

namespace {

struct Builder {
    const std::vector<std::array<double, kNumFeatures>>& xs;
    const std::vector<double>& ys;
    const ForestConfig& cfg;
    std::vector<TreeNode> nodes;

    // indices in [begin, end) of `idx` form the node's resident set
    int build(std::vector<int>& idx, int begin, int end) {
        const int n = end - begin;
        double sum = 0, sum2 = 0;
        for (int i = begin; i < end; ++i) {
            const double y = ys[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
            sum += y;
            sum2 += y * y;
        }
        const double mean = sum / n;
        const double node_sse = sum2 - sum * sum / n;

        const bool pure = node_sse <= 0.0;
        if (pure || n < cfg.min_samples_split) return make_leaf(mean);

        int best_feature = -1;
        double best_threshold = 0, best_reduction = -1;
        std::vector<int> sorted(idx.begin() + begin, idx.begin() + end);
        for (int f = 0; f < kNumFeatures; ++f) {
            std::sort(sorted.begin(), sorted.end(), [&](int a, int b) {
                const double xa = xs[static_cast<std::size_t>(a)][static_cast<std::size_t>(f)];
                const double xb = xs[static_cast<std::size_t>(b)][static_cast<std::size_t>(f)];
                return xa != xb ? xa < xb : a < b;
            });
            double lsum = 0, lsum2 = 0;
            for (int i = 0; i + 1 < n; ++i) {
                const double y = ys[static_cast<std::size_t>(sorted[static_cast<std::size_t>(i)])];
                lsum += y;
                lsum2 += y * y;
                const double xv = xs[static_cast<std::size_t>(sorted[static_cast<std::size_t>(i)])][static_cast<std::size_t>(f)];
                const double xnext = xs[static_cast<std::size_t>(sorted[static_cast<std::size_t>(i + 1)])][static_cast<std::size_t>(f)];
                if (xv == xnext) continue;  // split only between distinct values
                const int nl = i + 1, nr = n - nl;
                if (nl < cfg.min_samples_leaf || nr < cfg.min_samples_leaf) continue;
                const double rsum = sum - lsum, rsum2 = sum2 - lsum2;
                const double sse_l = lsum2 - lsum * lsum / nl;
                const double sse_r = rsum2 - rsum * rsum / nr;
                const double reduction = node_sse - sse_l - sse_r;
                if (reduction > best_reduction) {
                    best_reduction = reduction;
                    best_feature = f;
                    best_threshold = 0.5 * (xv + xnext);
                }
            }
        }
        if (best_feature < 0) return make_leaf(mean);  // all features constant on this node

        const auto mid = static_cast<int>(std::partition(idx.begin() + begin, idx.begin() + end,
                                                         [&](int a) {
                                                             return xs[static_cast<std::size_t>(a)][static_cast<std::size_t>(best_feature)] <=
                                                                    best_threshold;
                                                         }) -
                                          idx.begin());
        const auto self = static_cast<int>(nodes.size());
        nodes.emplace_back();
        nodes[static_cast<std::size_t>(self)].feature = best_feature;
        nodes[static_cast<std::size_t>(self)].threshold = best_threshold;
        const int left = build(idx, begin, mid);
        const int right = build(idx, mid, end);
        nodes[static_cast<std::size_t>(self)].left = left;
        nodes[static_cast<std::size_t>(self)].right = right;
        return self;
    }

    int make_leaf(double mean) {
        const auto self = static_cast<int>(nodes.size());
        nodes.emplace_back();
        nodes[static_cast<std::size_t>(self)].value = mean;
        return self;
    }
};

}  // namespace

Tree fit_tree(const Dataset& data, const ForestConfig& cfg) {
    if (data.samples.empty()) throw NumericError("fit_tree: empty dataset");
    const std::size_t n = data.size();
    std::vector<std::array<double, kNumFeatures>> xs(n);
    std::vector<double> ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = data.samples[i].mixture.features();
        ys[i] = data.samples[i].fc;
    }
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    Builder b{xs, ys, cfg, {}};
    b.nodes.reserve(2 * n);
    b.build(idx, 0, static_cast<int>(n));
    return Tree{std::move(b.nodes)};
}

namespace {

Forest train_impl(const Dataset& train, const ForestConfig& cfg, bool parallel) {
    if (train.samples.empty()) throw NumericError("forest_train: empty training set");
    if (cfg.n_trees < 1) throw NumericError("forest_train: n_trees must be >= 1");
    Forest f;
    f.trees.resize(static_cast<std::size_t>(cfg.n_trees));
    f.tree_seeds.resize(static_cast<std::size_t>(cfg.n_trees));
    for (int b = 0; b < cfg.n_trees; ++b)
        f.tree_seeds[static_cast<std::size_t>(b)] = derive_seed(cfg.seed, static_cast<std::uint64_t>(b));

#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int b = 0; b < cfg.n_trees; ++b) {
        const Dataset boot = bootstrap_sample(train, f.tree_seeds[static_cast<std::size_t>(b)]);
        f.trees[static_cast<std::size_t>(b)] = fit_tree(boot, cfg);
    }
    return f;
}

}  // namespace

Forest forest_train(const Dataset& train, const ForestConfig& cfg) { return train_impl(train, cfg, true); }

Forest forest_train_serial(const Dataset& train, const ForestConfig& cfg) {
    return train_impl(train, cfg, false);
}

double forest_predict(const Forest& f, const Mixture& x) {
    if (f.trees.empty()) throw NumericError("forest_predict: empty forest");
    const auto feat = x.features();
    double sum = 0;
    for (const Tree& t : f.trees) sum += t.predict(feat);
    return sum / static_cast<double>(f.trees.size());
}

}  // namespace cstrength
