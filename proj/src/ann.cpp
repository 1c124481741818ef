#include "cstrength/ann.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cstrength/rng.hpp"

namespace cstrength {

namespace {

// Activations per layer for one input, plus pre-activations for backprop.
struct Workspace {
    std::vector<std::vector<double>> act;  // act[0] = input, act[L] = output
    std::vector<std::vector<double>> pre;  // pre[l] = W*act[l] + b, l = 0..L-1
    std::vector<std::vector<double>> delta;

    explicit Workspace(const std::vector<int>& widths) {
        act.resize(widths.size());
        for (std::size_t l = 0; l < widths.size(); ++l) act[l].resize(static_cast<std::size_t>(widths[l]));
        pre.resize(widths.size() - 1);
        delta.resize(widths.size() - 1);
        for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
            pre[l].resize(static_cast<std::size_t>(widths[l + 1]));
            delta[l].resize(static_cast<std::size_t>(widths[l + 1]));
        }
    }
};

double forward_ws(const AnnParameters& p, const std::vector<double>& x, Workspace& ws) {
    const std::size_t layers = p.num_layers();
    std::copy(x.begin(), x.end(), ws.act[0].begin());
    for (std::size_t l = 0; l < layers; ++l) {
        const auto& w = p.weights[l];
        const auto& b = p.biases[l];
        const auto& in = ws.act[l];
        const std::size_t n_in = in.size();
        const std::size_t n_out = b.size();
        const bool last = (l + 1 == layers);
        for (std::size_t k = 0; k < n_out; ++k) {
            double v = b[k];
            const double* row = &w[k * n_in];
            for (std::size_t i = 0; i < n_in; ++i) v += row[i] * in[i];
            ws.pre[l][k] = v;
            ws.act[l + 1][k] = last ? v : (v > 0.0 ? v : 0.0);  // ReLU on hidden layers
        }
    }
    return ws.act[layers][0];
}

// Accumulates d(residual^2 part)/dparams for one sample into grads (already
// scaled by 2*residual/batch_size via `coef`).
void backward_ws(const AnnParameters& p, Workspace& ws, double coef, AnnGradients& g) {
    const std::size_t layers = p.num_layers();
    ws.delta[layers - 1][0] = coef;
    for (std::size_t l = layers - 1; l-- > 0;) {
        const auto& w_up = p.weights[l + 1];
        const std::size_t n_out_up = ws.delta[l + 1].size();
        const std::size_t n_here = ws.delta[l].size();
        for (std::size_t k = 0; k < n_here; ++k) {
            if (ws.pre[l][k] <= 0.0) {  // ReLU gate
                ws.delta[l][k] = 0.0;
                continue;
            }
            double v = 0;
            for (std::size_t j = 0; j < n_out_up; ++j) v += w_up[j * n_here + k] * ws.delta[l + 1][j];
            ws.delta[l][k] = v;
        }
    }
    for (std::size_t l = 0; l < layers; ++l) {
        const auto& in = ws.act[l];
        const std::size_t n_in = in.size();
        const std::size_t n_out = ws.delta[l].size();
        for (std::size_t k = 0; k < n_out; ++k) {
            const double d = ws.delta[l][k];
            if (d == 0.0) continue;
            double* grow = &g.weights[l][k * n_in];
            for (std::size_t i = 0; i < n_in; ++i) grow[i] += d * in[i];
            g.biases[l][k] += d;
        }
    }
}

AnnGradients zero_gradients(const AnnParameters& p) {
    AnnGradients g;
    g.weights.resize(p.weights.size());
    g.biases.resize(p.biases.size());
    for (std::size_t l = 0; l < p.weights.size(); ++l) {
        g.weights[l].assign(p.weights[l].size(), 0.0);
        g.biases[l].assign(p.biases[l].size(), 0.0);
    }
    return g;
}

}  // namespace

AnnParameters ann_init(const AnnArchitecture& arch, std::uint64_t seed) {
    const auto& w = arch.layer_widths;
    if (w.size() < 2) throw NumericError("ANN architecture needs at least input and output layers");
    AnnParameters p;
    p.layer_widths = w;
    Rng rng(derive_seed(seed, 17));
    for (std::size_t l = 0; l + 1 < w.size(); ++l) {
        const auto n_in = static_cast<std::size_t>(w[l]);
        const auto n_out = static_cast<std::size_t>(w[l + 1]);
        // U(-limit, limit) with limit = sqrt(6/fan_in) has variance 2/fan_in
        const double limit = std::sqrt(6.0 / static_cast<double>(n_in));
        std::vector<double> wm(n_out * n_in);
        for (double& v : wm) v = rng.uniform(-limit, limit);
        p.weights.push_back(std::move(wm));
        p.biases.emplace_back(n_out, 0.0);
    }
    return p;
}

double ann_forward(const AnnParameters& p, const std::vector<double>& x) {
    if (x.size() != static_cast<std::size_t>(p.layer_widths.front()))
        throw NumericError("ann_forward: input width mismatch");
    for (double v : x)
        if (!std::isfinite(v)) throw NumericError("ann_forward: non-finite input");
    Workspace ws(p.layer_widths);
    return forward_ws(p, x, ws);
}

double ann_loss(const AnnParameters& p, const AnnBatch& batch, double gamma) {
    if (batch.empty()) throw NumericError("ann_loss: empty batch");
    Workspace ws(p.layer_widths);
    double sse = 0;
    for (const auto& [x, y] : batch) {
        const double r = forward_ws(p, x, ws) - y;
        sse += r * r;
    }
    double w2 = 0;
    for (const auto& wm : p.weights)
        for (double v : wm) w2 += v * v;
    return sse / static_cast<double>(batch.size()) + gamma * w2;
}

AnnGradients ann_backward(const AnnParameters& p, const AnnBatch& batch, double gamma) {
    if (batch.empty()) throw NumericError("ann_backward: empty batch");
    AnnGradients g = zero_gradients(p);
    Workspace ws(p.layer_widths);
    const double inv_n = 1.0 / static_cast<double>(batch.size());
    for (const auto& [x, y] : batch) {
        const double r = forward_ws(p, x, ws) - y;
        backward_ws(p, ws, 2.0 * r * inv_n, g);
    }
    for (std::size_t l = 0; l < p.weights.size(); ++l)
        for (std::size_t i = 0; i < p.weights[l].size(); ++i)
            g.weights[l][i] += 2.0 * gamma * p.weights[l][i];
    return g;
}

std::pair<AnnParameters, LossHistory> ann_train(const Dataset& train, const Scaler& scaler,
                                                const TrainConfig& cfg) {
    if (train.samples.empty()) throw NumericError("ann_train: empty training set");

    const std::size_t n = train.size();
    std::vector<std::vector<double>> xs(n);
    std::vector<double> ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto z = scaler.apply(train.samples[i].mixture);
        xs[i].assign(z.begin(), z.end());
        ys[i] = train.samples[i].fc;
    }

    AnnParameters p = ann_init(AnnArchitecture::standard(), derive_seed(cfg.seed, 1));
    AnnGradients g = zero_gradients(p);
    Workspace ws(p.layer_widths);
    LossHistory history;
    history.reserve(static_cast<std::size_t>(cfg.epochs));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    const auto bs = static_cast<std::size_t>(cfg.batch_size);

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        Rng shuffle_rng(derive_seed(cfg.seed, 1000 + static_cast<std::uint64_t>(epoch)));
        for (std::size_t i = n; i-- > 1;) {
            const std::size_t j = shuffle_rng.below(i + 1);
            std::swap(order[i], order[j]);
        }

        double epoch_sse = 0;
        for (std::size_t start = 0; start < n; start += bs) {
            const std::size_t end = std::min(start + bs, n);  // last incomplete batch kept
            const double inv_b = 1.0 / static_cast<double>(end - start);

            for (auto& gw : g.weights) std::fill(gw.begin(), gw.end(), 0.0);
            for (auto& gb : g.biases) std::fill(gb.begin(), gb.end(), 0.0);

            for (std::size_t i = start; i < end; ++i) {
                const std::size_t s = order[i];
                const double r = forward_ws(p, xs[s], ws) - ys[s];
                epoch_sse += r * r;
                backward_ws(p, ws, 2.0 * r * inv_b, g);
            }
            const double lr = cfg.learning_rate;
            const double decay = 2.0 * cfg.l2_coefficient;
            for (std::size_t l = 0; l < p.weights.size(); ++l) {
                auto& wm = p.weights[l];
                const auto& gw = g.weights[l];
                for (std::size_t i = 0; i < wm.size(); ++i) wm[i] -= lr * (gw[i] + decay * wm[i]);
                auto& bm = p.biases[l];
                const auto& gb = g.biases[l];
                for (std::size_t i = 0; i < bm.size(); ++i) bm[i] -= lr * gb[i];
            }
        }
        const double epoch_mse = epoch_sse / static_cast<double>(n);
        if (!std::isfinite(epoch_mse))
            throw NumericError("ann_train: training diverged (non-finite loss) at epoch " +
                               std::to_string(epoch));
        history.push_back(epoch_mse);
    }
    return {std::move(p), std::move(history)};
}

}  // namespace cstrength
