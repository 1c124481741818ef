#pragma once

#include <cstdint>
#include <vector>

#include "cstrength/dataset.hpp"

namespace cstrength {

// Flat node storage; node 0 is the root. Leaves have feature == -1 and carry
// the mean of the training targets routed to them.
struct TreeNode {
    int feature = -1;
    double threshold = 0;
    int left = -1, right = -1;
    double value = 0;

    bool is_leaf() const { return feature < 0; }
};

struct Tree {
    std::vector<TreeNode> nodes;

    double predict(const std::array<double, kNumFeatures>& x) const {
        int i = 0;
        while (!nodes[static_cast<std::size_t>(i)].is_leaf()) {
            const TreeNode& n = nodes[static_cast<std::size_t>(i)];
            i = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
        }
        return nodes[static_cast<std::size_t>(i)].value;
    }
};

struct ForestConfig {
    int n_trees = 100;
    int min_samples_split = 2;
    int min_samples_leaf = 1;
    std::uint64_t seed = 0;
};

struct Forest {
    std::vector<Tree> trees;
    std::vector<std::uint64_t> tree_seeds;
};

// Same cardinality as the input, drawn with replacement, deterministic per seed.
Dataset bootstrap_sample(const Dataset& data, std::uint64_t seed);

// CART regression tree: each internal split maximizes weighted variance
// reduction over midpoints of consecutive distinct sorted feature values,
// ties broken toward lower feature index then lower threshold. Growth stops
// on pure nodes, nodes below min_samples_split, splits violating
// min_samples_leaf, or when no candidate threshold exists.
Tree fit_tree(const Dataset& data, const ForestConfig& cfg);

// Tree b is fit on bootstrap_sample(train, derive_seed(cfg.seed, b)); the
// result is independent of construction order, so the parallel and serial
// paths are bit-identical.
Forest forest_train(const Dataset& train, const ForestConfig& cfg);          // OpenMP over trees
Forest forest_train_serial(const Dataset& train, const ForestConfig& cfg);   // reference

double forest_predict(const Forest& f, const Mixture& x);

}  // namespace cstrength
