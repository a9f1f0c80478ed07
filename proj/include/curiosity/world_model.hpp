#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "curiosity/env.hpp"
#include "curiosity/nn.hpp"

namespace curiosity {

inline constexpr std::size_t kWmHidden = 1024;

// The predictive model theta: maps a cell's factored one-hot encoding to that
// cell's 200-dim observation. Trains online with MSE; reports errors as
// unsquared L2 norms (the reward/evaluation metric, distinct from the loss).
class WorldModel {
public:
    explicit WorldModel(Rng& init_rng)
        : net_(net_new({kStateDim, kWmHidden, kObsDim},
                       {Activation::ReLU, Activation::Identity}, init_rng)),
          adam_(adam_new(net_, 1e-3)) {}

    std::vector<double> predict(Cell c) const { return net_forward(net_, encode_state(c)); }

    double error(Cell c, const Observation& obs) const {
        return l2_distance(net_forward(net_, encode_state(c)), obs);
    }

    // One gradient step toward obs. Returns (error before, error after); the
    // "before" value matches what error() would have returned just prior.
    std::pair<double, double> update(Cell c, const Observation& obs) {
        const auto x = encode_state(c);
        std::vector<double> out_before;
        net_train_step(net_, adam_, x, obs, &out_before);
        const double e_before = l2_distance(out_before, obs);
        const double e_after = l2_distance(net_forward(net_, x), obs);
        if (!std::isfinite(e_after)) throw NumericalError("world model error diverged");
        return {e_before, e_after};
    }

    // Mean L2 error against ground-truth patterns over all 450 deterministic
    // cells. Pure: never touches the environment's noise stream.
    double eval_deterministic(const NoisyTvEnv& env) const {
        double sum = 0.0;
        for (int r = 0; r < kGridSize; ++r)
            for (int c = 0; c < kDetCols; ++c)
                sum += error({r, c}, env.deterministic_pattern({r, c}));
        return sum / static_cast<double>(kDetCellCount);
    }

    DenseNet& net() { return net_; }
    const DenseNet& net() const { return net_; }
    AdamState& adam() { return adam_; }

private:
    DenseNet net_;
    AdamState adam_;
};

}  // namespace curiosity
