#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "curiosity/error.hpp"
#include "curiosity/rng.hpp"

namespace curiosity {

enum class Activation { ReLU, Identity };

struct Layer {
    std::size_t in = 0;
    std::size_t out = 0;
    // Stored input-major: w[j * out + i] is the weight from input j to output
    // i. One-hot and ReLU-sparse inputs then touch whole contiguous rows.
    std::vector<double> w;
    std::vector<double> b;  // [out]
    Activation act = Activation::Identity;

    double& at(std::size_t i, std::size_t j) { return w[j * out + i]; }
    double at(std::size_t i, std::size_t j) const { return w[j * out + i]; }
};

// Minimal fully-connected net. Double precision throughout so gradient and
// identity checks can be held to tight tolerances.
struct DenseNet {
    std::vector<Layer> layers;

    std::size_t input_size() const { return layers.front().in; }
    std::size_t output_size() const { return layers.back().out; }

    std::size_t param_count() const {
        std::size_t n = 0;
        for (const auto& l : layers) n += l.w.size() + l.b.size();
        return n;
    }
};

// Glorot-uniform weights, zero biases. Deterministic given the rng.
inline DenseNet net_new(const std::vector<std::size_t>& sizes,
                        const std::vector<Activation>& acts, Rng& rng) {
    if (sizes.size() < 2) throw ConfigError("net_new: need at least one layer");
    if (acts.size() != sizes.size() - 1)
        throw ConfigError("net_new: one activation per layer required");
    for (std::size_t s : sizes)
        if (s == 0) throw ConfigError("net_new: layer sizes must be positive");

    DenseNet net;
    net.layers.resize(sizes.size() - 1);
    for (std::size_t k = 0; k < net.layers.size(); ++k) {
        Layer& l = net.layers[k];
        l.in = sizes[k];
        l.out = sizes[k + 1];
        l.act = acts[k];
        l.w.resize(l.out * l.in);
        l.b.assign(l.out, 0.0);
        const double lim = std::sqrt(6.0 / static_cast<double>(l.in + l.out));
        for (double& w : l.w) w = rng.uniform(-lim, lim);
    }
    return net;
}

namespace detail {

inline void affine_forward(const Layer& l, std::span<const double> x, std::vector<double>& out) {
    out.assign(l.b.begin(), l.b.end());
    double* o = out.data();
    for (std::size_t j = 0; j < l.in; ++j) {
        const double xj = x[j];
        if (xj == 0.0) continue;
        const double* row = l.w.data() + j * l.out;
        for (std::size_t i = 0; i < l.out; ++i) o[i] += row[i] * xj;
    }
    if (l.act == Activation::ReLU)
        for (double& v : out)
            if (v < 0.0) v = 0.0;
}

}  // namespace detail

inline std::vector<double> net_forward(const DenseNet& net, std::span<const double> input) {
    if (input.size() != net.input_size()) throw ShapeError("net_forward: input size mismatch");
    std::vector<double> a(input.begin(), input.end());
    std::vector<double> next;
    for (const Layer& l : net.layers) {
        detail::affine_forward(l, a, next);
        a.swap(next);
    }
    return a;
}

// MSE averaged over output dimensions; the shared training loss for every net
// in the project. Distinct from the L2 error metric used for rewards.
inline double mse_loss(std::span<const double> output, std::span<const double> target) {
    if (output.size() != target.size()) throw ShapeError("mse_loss: size mismatch");
    double s = 0.0;
    const std::size_t n = output.size();
#pragma omp simd reduction(+ : s)
    for (std::size_t i = 0; i < n; ++i) {
        const double r = output[i] - target[i];
        s += r * r;
    }
    return s / static_cast<double>(n);
}

// Euclidean distance; the error metric e() for rewards and evaluation.
inline double l2_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw ShapeError("l2_distance: size mismatch");
    double s = 0.0;
    const std::size_t n = a.size();
#pragma omp simd reduction(+ : s)
    for (std::size_t i = 0; i < n; ++i) {
        const double r = a[i] - b[i];
        s += r * r;
    }
    return std::sqrt(s);
}

struct AdamState {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    std::int64_t step_count = 0;

    // Moments mirror the owning net's parameter shapes; v_* stay >= 0.
    std::vector<std::vector<double>> m_w, v_w, m_b, v_b;

    // Reused work buffers; contents carry no state across steps. The g_w
    // blocks keep an all-zero invariant between steps: only rows of inputs
    // that were live get written, and they are re-zeroed after the update.
    struct Scratch {
        std::vector<std::vector<double>> g_w, g_b;
        std::vector<std::vector<double>> act;    // post-activations, act[0] = input
        std::vector<std::vector<double>> delta;  // backprop residuals per layer
        std::vector<std::vector<std::size_t>> live;  // live input dims per layer
    } scratch;
};

inline AdamState adam_new(const DenseNet& net, double lr = 1e-3) {
    AdamState s;
    s.lr = lr;
    const std::size_t n = net.layers.size();
    s.m_w.resize(n);
    s.v_w.resize(n);
    s.m_b.resize(n);
    s.v_b.resize(n);
    s.scratch.g_w.resize(n);
    s.scratch.g_b.resize(n);
    s.scratch.act.resize(n + 1);
    s.scratch.delta.resize(n);
    s.scratch.live.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Layer& l = net.layers[k];
        s.m_w[k].assign(l.w.size(), 0.0);
        s.v_w[k].assign(l.w.size(), 0.0);
        s.m_b[k].assign(l.out, 0.0);
        s.v_b[k].assign(l.out, 0.0);
        s.scratch.g_w[k].assign(l.w.size(), 0.0);
        s.scratch.g_b[k].assign(l.out, 0.0);
        s.scratch.delta[k].assign(l.out, 0.0);
        s.scratch.live[k].reserve(l.in);
    }
    return s;
}

namespace detail {

inline void adam_update_span(std::span<double> p, std::span<const double> g,
                             std::span<double> m, std::span<double> v, double lr, double beta1,
                             double beta2, double eps, double bc1, double bc2) {
    const std::size_t n = p.size();
    double* pp = p.data();
    const double* gp = g.data();
    double* mp = m.data();
    double* vp = v.data();
#pragma omp simd
    for (std::size_t i = 0; i < n; ++i) {
        const double gi = gp[i];
        const double mi = beta1 * mp[i] + (1.0 - beta1) * gi;
        const double vi = beta2 * vp[i] + (1.0 - beta2) * gi * gi;
        mp[i] = mi;
        vp[i] = vi;
        pp[i] -= lr * (mi * bc1) / (std::sqrt(vi * bc2) + eps);
    }
}

}  // namespace detail

// One MSE gradient step with bias-corrected Adam, applied in place.
// Returns the pre-update loss; if output_before is given it receives the
// pre-update forward output (same values a net_forward call would produce).
inline double net_train_step(DenseNet& net, AdamState& adam, std::span<const double> input,
                             std::span<const double> target,
                             std::vector<double>* output_before = nullptr) {
    const std::size_t nl = net.layers.size();
    if (adam.m_w.size() != nl) throw ShapeError("net_train_step: adam/net layer mismatch");
    if (input.size() != net.input_size()) throw ShapeError("net_train_step: input size mismatch");
    if (target.size() != net.output_size())
        throw ShapeError("net_train_step: target size mismatch");

    auto& ws = adam.scratch;
    ws.act[0].assign(input.begin(), input.end());
    for (std::size_t k = 0; k < nl; ++k)
        detail::affine_forward(net.layers[k], ws.act[k], ws.act[k + 1]);

    const std::vector<double>& out = ws.act[nl];
    const double loss = mse_loss(out, target);
    if (!std::isfinite(loss)) throw NumericalError("net_train_step: non-finite loss");
    if (output_before) *output_before = out;

    // Output residual: d(MSE)/d(out) through the last activation.
    {
        std::vector<double>& d = ws.delta[nl - 1];
        const double scale = 2.0 / static_cast<double>(out.size());
        for (std::size_t i = 0; i < out.size(); ++i) d[i] = scale * (out[i] - target[i]);
        if (net.layers[nl - 1].act == Activation::ReLU)
            for (std::size_t i = 0; i < out.size(); ++i)
                if (out[i] <= 0.0) d[i] = 0.0;
    }

    for (std::size_t k = nl; k-- > 0;) {
        const Layer& l = net.layers[k];
        const std::vector<double>& d = ws.delta[k];
        const std::vector<double>& a_prev = ws.act[k];

        ws.g_b[k] = d;
        // Weight gradient rows exist only for live (nonzero) inputs.
        std::vector<double>& gw = ws.g_w[k];
        auto& live = ws.live[k];
        live.clear();
        const double* dp_ = d.data();
        for (std::size_t j = 0; j < l.in; ++j) {
            const double aj = a_prev[j];
            if (aj == 0.0) continue;
            live.push_back(j);
            double* row = gw.data() + j * l.out;
            for (std::size_t i = 0; i < l.out; ++i) row[i] = dp_[i] * aj;
        }
        if (k > 0) {
            // delta_prev[j] = w_row_j . d, masked by the previous activation.
            std::vector<double>& dprev = ws.delta[k - 1];
            const bool relu_prev = net.layers[k - 1].act == Activation::ReLU;
            for (std::size_t j = 0; j < l.in; ++j) {
                if (relu_prev && a_prev[j] <= 0.0) {
                    dprev[j] = 0.0;
                    continue;
                }
                const double* row = l.w.data() + j * l.out;
                double acc = 0.0;
#pragma omp simd reduction(+ : acc)
                for (std::size_t i = 0; i < l.out; ++i) acc += row[i] * dp_[i];
                dprev[j] = acc;
            }
        }
    }

    adam.step_count += 1;
    const double bc1 = 1.0 / (1.0 - std::pow(adam.beta1, static_cast<double>(adam.step_count)));
    const double bc2 = 1.0 / (1.0 - std::pow(adam.beta2, static_cast<double>(adam.step_count)));
    for (std::size_t k = 0; k < nl; ++k) {
        Layer& l = net.layers[k];
        detail::adam_update_span(l.w, ws.g_w[k], adam.m_w[k], adam.v_w[k], adam.lr, adam.beta1,
                                 adam.beta2, adam.eps, bc1, bc2);
        detail::adam_update_span(l.b, ws.g_b[k], adam.m_b[k], adam.v_b[k], adam.lr, adam.beta1,
                                 adam.beta2, adam.eps, bc1, bc2);
    }

    // Restore the zero invariant on the sparse gradient blocks.
    for (std::size_t k = 0; k < nl; ++k) {
        std::vector<double>& gw = ws.g_w[k];
        const std::size_t out_k = net.layers[k].out;
        for (std::size_t j : ws.live[k]) {
            double* row = gw.data() + j * out_k;
            for (std::size_t i = 0; i < out_k; ++i) row[i] = 0.0;
        }
    }
    return loss;
}

// Central-difference gradients of the MSE loss; the test oracle for backprop.
struct GradSet {
    std::vector<std::vector<double>> w, b;
};

inline GradSet finite_diff_grads(const DenseNet& net, std::span<const double> input,
                                 std::span<const double> target, double h) {
    if (!(h > 0.0)) throw ContractError("finite_diff_grads: h must be positive");
    DenseNet probe = net;
    auto loss_at = [&] { return mse_loss(net_forward(probe, input), target); };

    GradSet g;
    g.w.resize(net.layers.size());
    g.b.resize(net.layers.size());
    for (std::size_t k = 0; k < net.layers.size(); ++k) {
        g.w[k].resize(net.layers[k].w.size());
        g.b[k].resize(net.layers[k].b.size());
        for (std::size_t i = 0; i < g.w[k].size(); ++i) {
            double& p = probe.layers[k].w[i];
            const double saved = p;
            p = saved + h;
            const double lp = loss_at();
            p = saved - h;
            const double lm = loss_at();
            p = saved;
            g.w[k][i] = (lp - lm) / (2.0 * h);
        }
        for (std::size_t i = 0; i < g.b[k].size(); ++i) {
            double& p = probe.layers[k].b[i];
            const double saved = p;
            p = saved + h;
            const double lp = loss_at();
            p = saved - h;
            const double lm = loss_at();
            p = saved;
            g.b[k][i] = (lp - lm) / (2.0 * h);
        }
    }
    return g;
}

// Analytic gradients via one backward pass, without touching the parameters.
// Shares the backprop code path with net_train_step through a scratch state.
inline GradSet analytic_grads(const DenseNet& net, std::span<const double> input,
                              std::span<const double> target) {
    DenseNet copy = net;
    AdamState adam = adam_new(copy, 0.0);  // lr 0: backward pass only, no movement
    net_train_step(copy, adam, input, target);
    GradSet g;
    g.w = adam.scratch.g_w;
    g.b = adam.scratch.g_b;
    // Live gradient rows were re-zeroed after the update; rebuild them.
    for (std::size_t k = 0; k < net.layers.size(); ++k) {
        const Layer& l = net.layers[k];
        const auto& d = adam.scratch.delta[k];
        const auto& a_prev = adam.scratch.act[k];
        for (std::size_t j = 0; j < l.in; ++j) {
            const double aj = a_prev[j];
            if (aj == 0.0) continue;
            for (std::size_t i = 0; i < l.out; ++i) g.w[k][j * l.out + i] = d[i] * aj;
        }
    }
    return g;
}

}  // namespace curiosity
