#ifndef GSP_GNN_HPP
#define GSP_GNN_HPP

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gsp/common.hpp"
#include "gsp/filter.hpp"
#include "gsp/graph.hpp"
#include "gsp/graphon.hpp"
#include "gsp/rng.hpp"
#include "gsp/sampling.hpp"
#include "gsp/signal.hpp"
#include "gsp/spectral.hpp"

namespace gsp {

enum class Nonlinearity { Relu, Abs, Tanh };

inline const char* to_string(Nonlinearity s) {
    switch (s) {
        case Nonlinearity::Relu: return "relu";
        case Nonlinearity::Abs: return "abs";
        case Nonlinearity::Tanh: return "tanh";
    }
    return "?";
}

/// All three activations are normalized Lipschitz (constant 1) and fix 0,
/// which is what the stability bounds assume.
inline double activate(Nonlinearity s, double z) {
    switch (s) {
        case Nonlinearity::Relu: return z > 0.0 ? z : 0.0;
        case Nonlinearity::Abs: return std::abs(z);
        case Nonlinearity::Tanh: return std::tanh(z);
    }
    throw std::logic_error("unreachable nonlinearity");
}

/// Subgradient used in training; the kink at 0 takes the value 0.
inline double activate_prime(Nonlinearity s, double z) {
    switch (s) {
        case Nonlinearity::Relu: return z > 0.0 ? 1.0 : 0.0;
        case Nonlinearity::Abs: return z > 0.0 ? 1.0 : (z < 0.0 ? -1.0 : 0.0);
        case Nonlinearity::Tanh: {
            const double t = std::tanh(z);
            return 1.0 - t * t;
        }
    }
    throw std::logic_error("unreachable nonlinearity");
}

/// Layered filter-bank network.  banks[l] maps the F_l input features of
/// layer l to its F_{l+1} outputs: banks[l][f][g] filters input feature g
/// into output feature f, outputs are summed over g and passed through
/// the pointwise nonlinearity.  The same structure runs on a graph
/// (shift S/m) or, via regular sampling, on a graphon.
struct GnnParams {
    std::vector<std::vector<std::vector<FilterSpec>>> banks;
    Nonlinearity sigma = Nonlinearity::Relu;

    int layers() const { return static_cast<int>(banks.size()); }

    /// Feature widths F_0..F_L implied by the bank shapes; validates that
    /// consecutive layers agree.
    std::vector<int> widths() const {
        if (banks.empty()) throw std::invalid_argument("network needs at least one layer");
        std::vector<int> w;
        for (std::size_t l = 0; l < banks.size(); ++l) {
            const auto& layer = banks[l];
            if (layer.empty()) throw std::invalid_argument("empty filter bank layer");
            const auto fan_in = layer.front().size();
            if (fan_in == 0) throw std::invalid_argument("filter bank row without inputs");
            for (const auto& row : layer)
                if (row.size() != fan_in)
                    throw std::invalid_argument("ragged filter bank at layer " + std::to_string(l));
            if (l == 0)
                w.push_back(static_cast<int>(fan_in));
            else if (static_cast<int>(fan_in) != w.back())
                throw std::invalid_argument("layer " + std::to_string(l) +
                                            " fan-in does not match previous width");
            w.push_back(static_cast<int>(layer.size()));
        }
        return w;
    }

    bool has_band_filters() const {
        for (const auto& layer : banks)
            for (const auto& row : layer)
                for (const auto& f : row)
                    if (std::holds_alternative<BandFilter>(f)) return true;
        return false;
    }

    /// Largest sup-response over all filters (the F of the bound
    /// amplification factor L * F^{L-1}).
    double max_sup_response(int probes = 4096) const {
        double sup = 0.0;
        for (const auto& layer : banks)
            for (const auto& row : layer)
                for (const auto& f : row)
                    sup = std::max(sup, filter_regularity(f, probes).sup_response);
        return sup;
    }

    /// Largest filter Lipschitz constant (the A2 of the bounds).
    double max_lipschitz(int probes = 4096) const {
        double lip = 0.0;
        for (const auto& layer : banks)
            for (const auto& row : layer)
                for (const auto& f : row)
                    lip = std::max(lip, filter_regularity(f, probes).lipschitz);
        return lip;
    }
};

/// Multi-feature forward pass.  Polynomial filters run through adjacency
/// shifts with S/m; band filters need a graphon-scale eigendecomposition
/// of S, which is computed once here unless a precomputed `spec` for the
/// same graph is supplied.  Band filters additionally require m == n so
/// the shift scale and the spectral scale agree.
inline std::vector<Eigen::VectorXd> gnn_forward_features(const GnnParams& params, const Graph& g,
                                                         double m,
                                                         const std::vector<Eigen::VectorXd>& x0,
                                                         const SignedSpectrum* spec = nullptr) {
    const std::vector<int> widths = params.widths();
    if (static_cast<int>(x0.size()) != widths.front())
        throw std::invalid_argument("input feature count does not match first bank fan-in");
    for (const auto& x : x0)
        if (x.size() != g.size()) throw std::invalid_argument("signal length must match graph size");

    SignedSpectrum local;
    if (params.has_band_filters()) {
        if (m != static_cast<double>(g.size()))
            throw std::invalid_argument("band filters need shift normalization m == n");
        if (spec == nullptr) {
            local = decompose(g, SpectrumScale::Graphon, true);
            spec = &local;
        } else if (spec->dim() != g.size() || spec->scale() != SpectrumScale::Graphon ||
                   !spec->has_vectors()) {
            throw std::invalid_argument("supplied spectrum does not fit the graph");
        }
    }

    std::vector<Eigen::VectorXd> x = x0;
    for (const auto& layer : params.banks) {
        std::vector<Eigen::VectorXd> next;
        next.reserve(layer.size());
        for (const auto& row : layer) {
            Eigen::VectorXd z = Eigen::VectorXd::Zero(g.size());
            for (std::size_t gi = 0; gi < row.size(); ++gi) {
                if (const auto* poly = std::get_if<PolyFilter>(&row[gi]))
                    z += apply_filter(*poly, g, m, x[gi]);
                else
                    z += apply_filter_spectral(row[gi], *spec, x[gi]);
            }
            next.push_back(z.unaryExpr(
                [s = params.sigma](double v) { return activate(s, v); }));
        }
        x = std::move(next);
    }
    return x;
}

/// Single-input single-output convenience wrapper.
inline Eigen::VectorXd gnn_forward(const GnnParams& params, const Graph& g, double m,
                                   const Eigen::VectorXd& x, const SignedSpectrum* spec = nullptr) {
    const std::vector<int> widths = params.widths();
    if (widths.front() != 1 || widths.back() != 1)
        throw std::invalid_argument("gnn_forward expects a 1-in/1-out network");
    return gnn_forward_features(params, g, m, {x}, spec).front();
}

/// Graphon-side forward pass: sample the input signal on the regular
/// n-grid, run the network on the regular weighted sample of W with
/// m = n, and induce the output back to a step signal.  By construction
/// this is bitwise identical to gnn_forward on deterministic_graph(W,n).
inline GraphonSignal wnn_forward(const GnnParams& params, const Graphon& w, int n,
                                 const GraphonSignal& x, const SignedSpectrum* spec = nullptr) {
    const Graph g = deterministic_graph(w, n);
    const Eigen::VectorXd y =
        gnn_forward(params, g, static_cast<double>(n), sample_signal(x, n), spec);
    return induce_signal(y);
}

/// Mean-squared training loss (1/(S*n)) * sum_s ||y_s - t_s||^2.
inline double mse_loss(const GnnParams& params, const Graph& g, double m,
                       const std::vector<Eigen::VectorXd>& inputs,
                       const std::vector<Eigen::VectorXd>& targets,
                       const SignedSpectrum* spec = nullptr) {
    if (inputs.size() != targets.size() || inputs.empty())
        throw std::invalid_argument("training needs equally many inputs and targets");
    double acc = 0.0;
    for (std::size_t s = 0; s < inputs.size(); ++s) {
        const Eigen::VectorXd y = gnn_forward(params, g, m, inputs[s], spec);
        if (y.size() != targets[s].size())
            throw std::invalid_argument("target length must match graph size");
        acc += (y - targets[s]).squaredNorm();
    }
    return acc / (static_cast<double>(inputs.size()) * g.size());
}

namespace detail {

/// Power stack x, (S/m)x, (S/m)^2 x, ... up to the given order.
inline std::vector<Eigen::VectorXd> shift_stack(const Eigen::MatrixXd& s, double m,
                                                const Eigen::VectorXd& x, int max_order) {
    std::vector<Eigen::VectorXd> out;
    out.reserve(static_cast<std::size_t>(max_order) + 1);
    out.push_back(x);
    for (int k = 1; k <= max_order; ++k) out.push_back((s * out.back()) / m);
    return out;
}

}  // namespace detail

struct TrainResult {
    /// Loss before training, then after each step: steps+1 entries.
    std::vector<double> loss_trace;
};

/// Full-batch gradient descent on the mean-squared loss, polynomial
/// filters only (band filters have no trainable shift representation
/// here).  Gradients are exact backpropagation through the shift stacks;
/// updates are plain  h <- h - lr * grad.  Throws numeric_error the
/// moment the loss stops being finite.
inline TrainResult train_mse(GnnParams& params, const Graph& g, double m,
                             const std::vector<Eigen::VectorXd>& inputs,
                             const std::vector<Eigen::VectorXd>& targets, double learning_rate,
                             int steps) {
    if (params.has_band_filters())
        throw std::invalid_argument("training supports polynomial filter banks only");
    if (!(learning_rate > 0.0)) throw std::invalid_argument("learning rate must be positive");
    if (steps < 0) throw std::invalid_argument("steps must be >= 0");
    if (inputs.size() != targets.size() || inputs.empty())
        throw std::invalid_argument("training needs equally many inputs and targets");
    const std::vector<int> widths = params.widths();
    if (widths.front() != 1 || widths.back() != 1)
        throw std::invalid_argument("training expects a 1-in/1-out network");
    for (const auto& x : inputs)
        if (x.size() != g.size()) throw std::invalid_argument("signal length must match graph size");
    for (const auto& t : targets)
        if (t.size() != g.size()) throw std::invalid_argument("target length must match graph size");

    const Eigen::MatrixXd& s = g.adjacency();
    const int L = params.layers();
    const auto n_samples = static_cast<double>(inputs.size());
    const double norm = n_samples * static_cast<double>(g.size());

    // Highest polynomial order feeding on feature g at layer l.
    std::vector<std::vector<int>> max_order(static_cast<std::size_t>(L));
    for (int l = 0; l < L; ++l) {
        max_order[l].assign(params.banks[l].front().size(), 0);
        for (const auto& row : params.banks[l])
            for (std::size_t gi = 0; gi < row.size(); ++gi)
                max_order[l][gi] =
                    std::max(max_order[l][gi], std::get<PolyFilter>(row[gi]).order());
    }

    TrainResult result;
    result.loss_trace.reserve(static_cast<std::size_t>(steps) + 1);
    result.loss_trace.push_back(mse_loss(params, g, m, inputs, targets));

    for (int step = 0; step < steps; ++step) {
        // grads[l][f][g][k]
        std::vector<std::vector<std::vector<std::vector<double>>>> grads(
            static_cast<std::size_t>(L));
        for (int l = 0; l < L; ++l) {
            grads[l].resize(params.banks[l].size());
            for (std::size_t f = 0; f < params.banks[l].size(); ++f) {
                grads[l][f].resize(params.banks[l][f].size());
                for (std::size_t gi = 0; gi < params.banks[l][f].size(); ++gi)
                    grads[l][f][gi].assign(
                        std::get<PolyFilter>(params.banks[l][f][gi]).coefficients().size(), 0.0);
            }
        }

        double loss = 0.0;
        for (std::size_t sample = 0; sample < inputs.size(); ++sample) {
            // Forward, keeping the shift stacks and pre-activations.
            std::vector<std::vector<std::vector<Eigen::VectorXd>>> stacks(
                static_cast<std::size_t>(L));
            std::vector<std::vector<Eigen::VectorXd>> pre(static_cast<std::size_t>(L));
            std::vector<Eigen::VectorXd> x = {inputs[sample]};
            for (int l = 0; l < L; ++l) {
                stacks[l].resize(x.size());
                for (std::size_t gi = 0; gi < x.size(); ++gi)
                    stacks[l][gi] = detail::shift_stack(s, m, x[gi], max_order[l][gi]);
                std::vector<Eigen::VectorXd> next;
                for (const auto& row : params.banks[l]) {
                    Eigen::VectorXd z = Eigen::VectorXd::Zero(g.size());
                    for (std::size_t gi = 0; gi < row.size(); ++gi) {
                        const auto& h = std::get<PolyFilter>(row[gi]).coefficients();
                        for (std::size_t k = 0; k < h.size(); ++k) z += h[k] * stacks[l][gi][k];
                    }
                    pre[l].push_back(z);
                    next.push_back(z.unaryExpr(
                        [sg = params.sigma](double v) { return activate(sg, v); }));
                }
                x = std::move(next);
            }
            loss += (x[0] - targets[sample]).squaredNorm();

            // Backward.
            std::vector<Eigen::VectorXd> gx(1);
            gx[0] = 2.0 / norm * (x[0] - targets[sample]);
            for (int l = L - 1; l >= 0; --l) {
                std::vector<Eigen::VectorXd> gprev(
                    stacks[l].size(), Eigen::VectorXd::Zero(g.size()));
                for (std::size_t f = 0; f < params.banks[l].size(); ++f) {
                    const Eigen::VectorXd gz = gx[f].cwiseProduct(pre[l][f].unaryExpr(
                        [sg = params.sigma](double v) { return activate_prime(sg, v); }));
                    for (std::size_t gi = 0; gi < params.banks[l][f].size(); ++gi) {
                        const auto& h = std::get<PolyFilter>(params.banks[l][f][gi]).coefficients();
                        // d z / d h_k = (S/m)^k x_g; the shift is symmetric, so the
                        // adjoint reuses the same stack on gz.
                        for (std::size_t k = 0; k < h.size(); ++k)
                            grads[l][f][gi][k] += stacks[l][gi][k].dot(gz);
                        Eigen::VectorXd back = h[0] * gz;
                        Eigen::VectorXd zk = gz;
                        for (std::size_t k = 1; k < h.size(); ++k) {
                            zk = (s * zk) / m;
                            back += h[k] * zk;
                        }
                        gprev[gi] += back;
                    }
                }
                gx = std::move(gprev);
            }
        }

        for (int l = 0; l < L; ++l)
            for (std::size_t f = 0; f < params.banks[l].size(); ++f)
                for (std::size_t gi = 0; gi < params.banks[l][f].size(); ++gi) {
                    std::vector<double> h =
                        std::get<PolyFilter>(params.banks[l][f][gi]).coefficients();
                    for (std::size_t k = 0; k < h.size(); ++k)
                        h[k] -= learning_rate * grads[l][f][gi][k];
                    params.banks[l][f][gi] = PolyFilter(std::move(h));
                }

        const double current = loss / norm;
        if (!std::isfinite(current))
            throw numeric_error("training diverged at step " + std::to_string(step + 1));
        result.loss_trace.push_back(mse_loss(params, g, m, inputs, targets));
        if (!std::isfinite(result.loss_trace.back()))
            throw numeric_error("training diverged at step " + std::to_string(step + 1));
    }
    return result;
}

/// Random polynomial network: coefficients uniform in [-1/2,1/2] scaled
/// by 1/(order+1), then rescaled to keep the sup response below 1.  Draw
/// order is layer-major, then output feature, input feature, coefficient.
inline GnnParams random_poly_gnn(const std::vector<int>& widths, int order, Nonlinearity sigma,
                                 Rng& rng, double margin = 1e-3) {
    if (widths.size() < 2) throw std::invalid_argument("network needs at least one layer");
    if (order < 0) throw std::invalid_argument("polynomial order must be >= 0");
    GnnParams params;
    params.sigma = sigma;
    for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
        std::vector<std::vector<FilterSpec>> layer;
        for (int f = 0; f < widths[l + 1]; ++f) {
            std::vector<FilterSpec> row;
            for (int g = 0; g < widths[l]; ++g) {
                std::vector<double> h(static_cast<std::size_t>(order) + 1);
                for (double& c : h) c = rng.uniform(-0.5, 0.5) / (order + 1);
                row.emplace_back(project_regular(PolyFilter(std::move(h)), margin));
            }
            layer.push_back(std::move(row));
        }
        params.banks.push_back(std::move(layer));
    }
    return params;
}

/// Random flat-band network at a fixed band threshold: g0 and gain
/// uniform in [-0.45, 0.45], so |g0| + |gain| < 1 always holds.
inline GnnParams random_band_gnn(const std::vector<int>& widths, double c, Nonlinearity sigma,
                                 Rng& rng) {
    if (widths.size() < 2) throw std::invalid_argument("network needs at least one layer");
    GnnParams params;
    params.sigma = sigma;
    for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
        std::vector<std::vector<FilterSpec>> layer;
        for (int f = 0; f < widths[l + 1]; ++f) {
            std::vector<FilterSpec> row;
            for (int g = 0; g < widths[l]; ++g) {
                const double g0 = rng.uniform(-0.45, 0.45);
                const double gain = rng.uniform(-0.45, 0.45);
                row.emplace_back(BandFilter(g0, gain, c));
            }
            layer.push_back(std::move(row));
        }
        params.banks.push_back(std::move(layer));
    }
    return params;
}

}  // namespace gsp

#endif  // GSP_GNN_HPP
