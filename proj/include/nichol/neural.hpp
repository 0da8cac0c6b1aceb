#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nichol/csr.hpp"
#include "nichol/lower_factor.hpp"

namespace nichol {

/// Training pairs (X, Y) with y = A x for each stored x.
struct SampleSet {
    std::vector<std::vector<double>> x_vectors;
    std::vector<std::vector<double>> y_vectors;
    bool normalized = false;
    std::uint64_t seed = 0;

    index_t count() const { return static_cast<index_t>(x_vectors.size()); }
};

enum class Optimizer { adagrad, sgd };

/// Hyperparameters for training the fixed-pattern factor.
///
/// When `alpha` is unset the default depends on normalization:
/// N^{3/2}/20000 for normalized samples, 0.1 otherwise. `sample_count` of 0
/// means the default ceil(sqrt(N)) vectors.
struct TrainConfig {
    std::optional<double> alpha;
    double epsilon = 1e-8;
    index_t epochs = 1;
    Optimizer optimizer = Optimizer::adagrad;
    bool normalize_samples = false;
    std::uint64_t seed = 0;
    index_t sample_count = 0;
};

/// Optimizer state carried across steps. grad_accum aligns index-for-index
/// with factor.values and is non-decreasing; loss_history holds the
/// per-iteration sample loss evaluated before each update.
struct TrainState {
    LowerFactor factor;
    std::vector<double> grad_accum;
    std::vector<double> loss_history;
};

/// Draws `count` i.i.d. standard-normal vectors from a seeded generator; if
/// `normalize`, each x is scaled to unit 2-norm before y = A x is computed.
SampleSet generate_samples(const CsrMatrix& a, index_t count, bool normalize,
                           std::uint64_t seed);

/// The two-layer forward pass: hidden layer u = L^T x, output L u. Both
/// layers are sparse products over the fixed pattern with linear activations.
std::vector<double> forward(const LowerFactor& l, std::span<const double> x);

/// Mean square error (1/n) ||L L^T x - y||^2.
double loss(const LowerFactor& l, std::span<const double> x, std::span<const double> y);

/// Gradient of the loss w.r.t. the stored entries of L, aligned with
/// l.values. With u = L^T x and r = L u - y,
///
///   d loss / d l_ij = (2/n) (r_i u_j + x_i (L^T r)_j)
///
/// which is backpropagation through the two linear layers in closed form.
std::vector<double> gradient(const LowerFactor& l, std::span<const double> x,
                             std::span<const double> y);

/// AdaGrad update restricted to the stored pattern:
///   accum_k += g_k^2;  value_k -= alpha * g_k / (sqrt(accum_k) + epsilon).
/// Throws TrainError on non-finite gradient entries.
void adagrad_step(TrainState& state, std::span<const double> grad, double alpha,
                  double epsilon);

/// Plain SGD update: value_k -= alpha * g_k. Accumulators are untouched.
void sgd_step(TrainState& state, std::span<const double> grad, double alpha);

/// Default learning rate: n^{3/2}/20000 when normalized, 0.1 otherwise.
double default_alpha(index_t n, bool normalized);

/// Initial factor: l_ii = sqrt(a_ii), l_ij = a_ij / sqrt(a_jj) for stored
/// off-diagonals (the first-column step of exact Cholesky).
LowerFactor initial_factor(const CsrMatrix& a);

/// Trains the fixed-pattern factor by minimizing the sample MSE with batch
/// size 1: generates the samples, then for each epoch walks them in order
/// applying gradient + optimizer step. Never breaks down; non-finite training
/// failures propagate as TrainError.
TrainState train(const CsrMatrix& a, const TrainConfig& cfg);

}  // namespace nichol
