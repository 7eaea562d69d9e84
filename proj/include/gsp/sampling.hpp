#ifndef GSP_SAMPLING_HPP
#define GSP_SAMPLING_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>

#include "gsp/graph.hpp"
#include "gsp/graphon.hpp"
#include "gsp/rng.hpp"

namespace gsp {

/// How graphs are drawn from a graphon: regular weighted samples or
/// Bernoulli (0/1) samples at the same grid points.
enum class SampleMode { Deterministic, Stochastic };

inline const char* to_string(SampleMode m) {
    return m == SampleMode::Deterministic ? "deterministic" : "stochastic";
}

/// Regular weighted sample of a graphon: S_ij = W(u_i, u_j) at the grid
/// points u_i = (i-1)/n, diagonal included by default.  Passing
/// self_loops = false zeroes the diagonal instead.
inline Graph deterministic_graph(const Graphon& w, int n, bool self_loops = true) {
    if (n < 1) throw std::invalid_argument("deterministic_graph needs n >= 1");
    Eigen::MatrixXd adj(n, n);
    for (int i = 0; i < n; ++i) {
        const double u = static_cast<double>(i) / n;
        for (int j = 0; j <= i; ++j) {
            const double v = static_cast<double>(j) / n;
            adj(i, j) = adj(j, i) = w(u, v);
        }
    }
    if (!self_loops) adj.diagonal().setZero();
    return Graph(std::move(adj));
}

/// Bernoulli sample of a graphon at the same grid points: each edge
/// (i,j) with i <= j, diagonal included by default, is kept with
/// probability W(u_i, u_j) and mirrored.  Draw order is row-major over
/// the upper triangle, so a fixed seed pins the graph exactly.  With
/// self_loops = false the diagonal draws are skipped entirely (not
/// consumed), so the two settings produce unrelated off-diagonal draws.
inline Graph stochastic_graph(const Graphon& w, int n, Rng& rng, bool self_loops = true) {
    if (n < 1) throw std::invalid_argument("stochastic_graph needs n >= 1");
    Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const double u = static_cast<double>(i) / n;
        for (int j = self_loops ? i : i + 1; j < n; ++j) {
            const double p = w(u, static_cast<double>(j) / n);
            const double e = rng.bernoulli(p) ? 1.0 : 0.0;
            adj(i, j) = adj(j, i) = e;
        }
    }
    return Graph(std::move(adj));
}

inline Graph stochastic_graph(const Graphon& w, int n, std::uint64_t seed,
                              bool self_loops = true) {
    Rng rng(seed);
    return stochastic_graph(w, n, rng, self_loops);
}

}  // namespace gsp

#endif  // GSP_SAMPLING_HPP
