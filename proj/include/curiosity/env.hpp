#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "curiosity/error.hpp"
#include "curiosity/rng.hpp"

namespace curiosity {

inline constexpr int kGridSize = 30;
inline constexpr int kObsDim = 200;
inline constexpr int kDetCols = 15;  // columns [0, kDetCols) are deterministic
inline constexpr int kStateDim = 2 * kGridSize;
inline constexpr int kDetCellCount = kGridSize * kDetCols;

// Expected L2 error of the conditional-mean prediction (0.5 per dimension)
// against any binary observation: sqrt(200 * 0.25).
inline const double kNoiseFloor = std::sqrt(static_cast<double>(kObsDim) * 0.25);

struct Cell {
    int row = 0;
    int col = 0;

    bool operator==(const Cell&) const = default;
    int index() const { return row * kGridSize + col; }
    bool in_bounds() const {
        return row >= 0 && row < kGridSize && col >= 0 && col < kGridSize;
    }
};

enum class Action { Up, Down, Left, Right };

inline constexpr std::array<Action, 4> kAllActions{Action::Up, Action::Down, Action::Left,
                                                   Action::Right};

// Binary observation stored as {0.0, 1.0} doubles, ready to use as a target.
using Observation = std::vector<double>;

struct ActionList {
    std::array<Action, 4> items{};
    int count = 0;

    void push(Action a) { items[static_cast<std::size_t>(count++)] = a; }
    bool contains(Action a) const {
        for (int i = 0; i < count; ++i)
            if (items[static_cast<std::size_t>(i)] == a) return true;
        return false;
    }
    const Action* begin() const { return items.data(); }
    const Action* end() const { return items.data() + count; }
};

// Factored encoding: one-hot(row) concatenated with one-hot(col).
inline std::vector<double> encode_state(Cell c) {
    if (!c.in_bounds()) throw ContractError("encode_state: cell out of bounds");
    std::vector<double> x(kStateDim, 0.0);
    x[static_cast<std::size_t>(c.row)] = 1.0;
    x[static_cast<std::size_t>(kGridSize + c.col)] = 1.0;
    return x;
}

// 30x30 grid world: the left half emits fixed binary patterns (cyclic shifts
// of a shared random base vector), the right half re-samples i.i.d.
// Bernoulli(0.5) noise on every visit. Transitions are deterministic.
//
// Conventions: row 0 at the top; Up = row-1, Down = row+1, Left = col-1,
// Right = col+1. Observation noise uses its own RNG stream so that network
// init and policy draws never perturb what the environment emits.
class NoisyTvEnv {
public:
    NoisyTvEnv(std::uint64_t pattern_seed, std::uint64_t noise_seed,
               bool stochastic_only = false)
        : noise_(noise_seed), stochastic_only_(stochastic_only) {
        Rng pattern_rng(pattern_seed);
        base_.resize(kObsDim);
        for (double& bit : base_) bit = pattern_rng.bit();
        det_.resize(kDetCellCount);
        for (int r = 0; r < kGridSize; ++r) {
            for (int c = 0; c < kDetCols; ++c) {
                Observation& pat = det_[static_cast<std::size_t>(r * kDetCols + c)];
                pat.resize(kObsDim);
                const int shift = (kDetCols * r + c) % kObsDim;
                for (int i = 0; i < kObsDim; ++i)
                    pat[static_cast<std::size_t>(i)] =
                        base_[static_cast<std::size_t>((i + shift) % kObsDim)];
            }
        }
    }

    static bool is_stochastic(Cell c) {
        if (!c.in_bounds()) throw ContractError("is_stochastic: cell out of bounds");
        return c.col >= kDetCols;
    }

    // Deterministic cells return their fixed pattern; stochastic cells draw a
    // fresh Bernoulli(0.5) vector, advancing the noise stream.
    Observation observe(Cell c) {
        if (is_stochastic(c)) {
            Observation obs(kObsDim);
            for (double& bit : obs) bit = noise_.bit();
            return obs;
        }
        return deterministic_pattern(c);
    }

    // Evaluation ground truth; never advances the noise stream.
    const Observation& deterministic_pattern(Cell c) const {
        if (is_stochastic(c))
            throw ContractError("deterministic_pattern: stochastic cell");
        return det_[static_cast<std::size_t>(c.row * kDetCols + c.col)];
    }

    ActionList valid_actions(Cell c) const {
        if (!c.in_bounds()) throw ContractError("valid_actions: cell out of bounds");
        const int min_col = stochastic_only_ ? kDetCols : 0;
        ActionList list;
        if (c.row > 0) list.push(Action::Up);
        if (c.row < kGridSize - 1) list.push(Action::Down);
        if (c.col > min_col) list.push(Action::Left);
        if (c.col < kGridSize - 1) list.push(Action::Right);
        return list;
    }

    Cell step(Cell c, Action a) const {
        if (!valid_actions(c).contains(a)) throw ContractError("step: invalid action");
        switch (a) {
            case Action::Up: return {c.row - 1, c.col};
            case Action::Down: return {c.row + 1, c.col};
            case Action::Left: return {c.row, c.col - 1};
            case Action::Right: return {c.row, c.col + 1};
        }
        throw ContractError("step: unreachable");
    }

    const Observation& base_pattern() const { return base_; }
    bool stochastic_only() const { return stochastic_only_; }

private:
    Observation base_;
    std::vector<Observation> det_;  // [row * kDetCols + col]
    Rng noise_;
    bool stochastic_only_;
};

inline NoisyTvEnv env_new(std::uint64_t seed, bool stochastic_only = false) {
    return NoisyTvEnv(stream_seed(seed, Stream::EnvPatterns), stream_seed(seed, Stream::EnvNoise),
                      stochastic_only);
}

}  // namespace curiosity
