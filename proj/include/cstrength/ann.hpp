#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cstrength/dataset.hpp"

namespace cstrength {

struct AnnArchitecture {
    std::vector<int> layer_widths;  // input, hidden..., output

    // 8 -> 64 -> 64 -> 32 -> 16 -> 16 -> 1, ReLU on hidden layers, linear output.
    static AnnArchitecture standard() { return {{8, 64, 64, 32, 16, 16, 1}}; }
};

// weights[l] has shape (layer_widths[l+1] x layer_widths[l]), row-major.
struct AnnParameters {
    std::vector<int> layer_widths;
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;

    std::size_t num_layers() const { return weights.size(); }
};

struct TrainConfig {
    int epochs = 1000;
    double learning_rate = 1e-4;
    int batch_size = 16;
    double l2_coefficient = 1e-4;
    std::uint64_t seed = 0;
};

// Per-epoch training MSE (mean of the per-batch MSE terms, L2 excluded).
using LossHistory = std::vector<double>;

using AnnBatch = std::vector<std::pair<std::vector<double>, double>>;

// Biases zero; weights uniform with variance 2/fan_in. Deterministic per seed.
AnnParameters ann_init(const AnnArchitecture& arch, std::uint64_t seed);

double ann_forward(const AnnParameters& p, const std::vector<double>& x);

// Mean squared residual over the batch plus gamma * sum of squared weights
// (biases excluded).
double ann_loss(const AnnParameters& p, const AnnBatch& batch, double gamma);

// Gradient of ann_loss wrt every parameter, same shapes as AnnParameters.
// Exposed so tests can check it against finite differences.
struct AnnGradients {
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;
};
AnnGradients ann_backward(const AnnParameters& p, const AnnBatch& batch, double gamma);

std::pair<AnnParameters, LossHistory> ann_train(const Dataset& train, const Scaler& scaler,
                                                const TrainConfig& cfg);

}  // namespace cstrength
