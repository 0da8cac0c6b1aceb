#include "nichol/neural.hpp"

#include <cmath>
#include <random>
#include <string>

#include "nichol/errors.hpp"
#include "nichol/kernels.hpp"

namespace nichol {

namespace {

// u = L^T x over the stored pattern
std::vector<double> transpose_apply(const LowerFactor& l, std::span<const double> x) {
    std::vector<double> u(x.size(), 0.0);
    for (index_t i = 0; i < l.n(); ++i) {
        const double xi = x[static_cast<size_t>(i)];
        for (index_t k = l.pattern.row_ptr[i]; k < l.pattern.row_ptr[i + 1]; ++k)
            u[static_cast<size_t>(l.pattern.col_idx[static_cast<size_t>(k)])] +=
                l.values[static_cast<size_t>(k)] * xi;
    }
    return u;
}

// z = L u over the stored pattern
std::vector<double> apply(const LowerFactor& l, std::span<const double> u) {
    std::vector<double> z(u.size(), 0.0);
    for (index_t i = 0; i < l.n(); ++i) {
        double s = 0.0;
        for (index_t k = l.pattern.row_ptr[i]; k < l.pattern.row_ptr[i + 1]; ++k)
            s += l.values[static_cast<size_t>(k)] *
                 u[static_cast<size_t>(l.pattern.col_idx[static_cast<size_t>(k)])];
        z[static_cast<size_t>(i)] = s;
    }
    return z;
}

void check_lengths(const LowerFactor& l, std::span<const double> x, const char* where) {
    if (static_cast<index_t>(x.size()) != l.n())
        throw DimensionError(std::string(where) + ": vector length does not match factor");
}

struct StepEval {
    double sample_loss;
    std::vector<double> grad;
};

// One backpropagation pass; shares the residual between loss and gradient.
StepEval evaluate(const LowerFactor& l, std::span<const double> x, std::span<const double> y) {
    const index_t n = l.n();
    std::vector<double> u = transpose_apply(l, x);
    std::vector<double> r = apply(l, u);
    for (size_t i = 0; i < r.size(); ++i) r[i] -= y[i];

    double sq = 0.0;
    for (double ri : r) sq += ri * ri;

    std::vector<double> w = transpose_apply(l, r);
    std::vector<double> g(l.values.size());
    const double scale = 2.0 / static_cast<double>(n);
    for (index_t i = 0; i < n; ++i) {
        for (index_t k = l.pattern.row_ptr[i]; k < l.pattern.row_ptr[i + 1]; ++k) {
            const index_t j = l.pattern.col_idx[static_cast<size_t>(k)];
            g[static_cast<size_t>(k)] =
                scale * (r[static_cast<size_t>(i)] * u[static_cast<size_t>(j)] +
                         x[static_cast<size_t>(i)] * w[static_cast<size_t>(j)]);
        }
    }
    return {sq / static_cast<double>(n), std::move(g)};
}

index_t ceil_sqrt(index_t n) {
    auto r = static_cast<index_t>(std::sqrt(static_cast<double>(n)));
    while (r * r < n) ++r;
    while (r > 1 && (r - 1) * (r - 1) >= n) --r;
    return r;
}

}  // namespace

SampleSet generate_samples(const CsrMatrix& a, index_t count, bool normalize,
                           std::uint64_t seed) {
    SampleSet s;
    s.normalized = normalize;
    s.seed = seed;
    s.x_vectors.reserve(static_cast<size_t>(count));
    s.y_vectors.reserve(static_cast<size_t>(count));

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    for (index_t c = 0; c < count; ++c) {
        std::vector<double> x(static_cast<size_t>(a.n));
        for (double& xi : x) xi = dist(rng);
        if (normalize) {
            double norm = 0.0;
            for (double xi : x) norm += xi * xi;
            norm = std::sqrt(norm);
            if (norm > 0.0)
                for (double& xi : x) xi /= norm;
        }
        s.y_vectors.push_back(spmv(a, x));
        s.x_vectors.push_back(std::move(x));
    }
    return s;
}

std::vector<double> forward(const LowerFactor& l, std::span<const double> x) {
    check_lengths(l, x, "forward");
    return apply(l, transpose_apply(l, x));
}

double loss(const LowerFactor& l, std::span<const double> x, std::span<const double> y) {
    check_lengths(l, x, "loss");
    check_lengths(l, y, "loss");
    std::vector<double> z = forward(l, x);
    double sq = 0.0;
    for (size_t i = 0; i < z.size(); ++i) {
        const double d = z[i] - y[i];
        sq += d * d;
    }
    return sq / static_cast<double>(l.n());
}

std::vector<double> gradient(const LowerFactor& l, std::span<const double> x,
                             std::span<const double> y) {
    check_lengths(l, x, "gradient");
    check_lengths(l, y, "gradient");
    return evaluate(l, x, y).grad;
}

void adagrad_step(TrainState& state, std::span<const double> grad, double alpha,
                  double epsilon) {
    if (grad.size() != state.factor.values.size() || grad.size() != state.grad_accum.size())
        throw DimensionError("adagrad_step: gradient not aligned with state");
    for (size_t k = 0; k < grad.size(); ++k) {
        const double g = grad[k];
        if (!std::isfinite(g))
            throw TrainError("non-finite gradient at nonzero " + std::to_string(k));
        state.grad_accum[k] += g * g;
        state.factor.values[k] -= alpha * g / (std::sqrt(state.grad_accum[k]) + epsilon);
    }
}

void sgd_step(TrainState& state, std::span<const double> grad, double alpha) {
    if (grad.size() != state.factor.values.size())
        throw DimensionError("sgd_step: gradient not aligned with state");
    for (size_t k = 0; k < grad.size(); ++k) {
        const double g = grad[k];
        if (!std::isfinite(g))
            throw TrainError("non-finite gradient at nonzero " + std::to_string(k));
        state.factor.values[k] -= alpha * g;
    }
}

double default_alpha(index_t n, bool normalized) {
    return normalized ? std::pow(static_cast<double>(n), 1.5) / 20000.0 : 0.1;
}

LowerFactor initial_factor(const CsrMatrix& a) {
    LowerFactor l;
    l.pattern = extract_lower_pattern(a);
    l.values.reserve(l.pattern.col_idx.size());

    std::vector<double> sqrt_diag(static_cast<size_t>(a.n));
    for (index_t i = 0; i < a.n; ++i) {
        const double d = a.at(i, i);
        if (!(d > 0.0) || !std::isfinite(d)) throw NotPositiveDiagonalError(i, d);
        sqrt_diag[static_cast<size_t>(i)] = std::sqrt(d);
    }
    for (index_t i = 0; i < a.n; ++i) {
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1] && a.col_idx[k] <= i; ++k) {
            const index_t j = a.col_idx[k];
            l.values.push_back(i == j ? sqrt_diag[static_cast<size_t>(i)]
                                      : a.values[k] / sqrt_diag[static_cast<size_t>(j)]);
        }
    }
    return l;
}

TrainState train(const CsrMatrix& a, const TrainConfig& cfg) {
    if (cfg.epochs < 1) throw ConfigError("train: epochs must be >= 1");
    if (!(cfg.epsilon > 0.0)) throw ConfigError("train: epsilon must be > 0");
    if (cfg.alpha && !(*cfg.alpha > 0.0)) throw ConfigError("train: alpha must be > 0");
    if (cfg.sample_count < 0) throw ConfigError("train: sample count must be >= 0");

    const index_t count = cfg.sample_count > 0 ? cfg.sample_count : ceil_sqrt(a.n);
    const double alpha = cfg.alpha.value_or(default_alpha(a.n, cfg.normalize_samples));

    TrainState state;
    state.factor = initial_factor(a);
    state.grad_accum.assign(state.factor.values.size(), 0.0);
    state.loss_history.reserve(static_cast<size_t>(cfg.epochs * count));

    const SampleSet samples = generate_samples(a, count, cfg.normalize_samples, cfg.seed);
    for (index_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        for (index_t s = 0; s < samples.count(); ++s) {
            StepEval eval = evaluate(state.factor, samples.x_vectors[static_cast<size_t>(s)],
                                     samples.y_vectors[static_cast<size_t>(s)]);
            state.loss_history.push_back(eval.sample_loss);
            if (cfg.optimizer == Optimizer::adagrad)
                adagrad_step(state, eval.grad, alpha, cfg.epsilon);
            else
                sgd_step(state, eval.grad, alpha);
        }
    }
    return state;
}

}  // namespace nichol
