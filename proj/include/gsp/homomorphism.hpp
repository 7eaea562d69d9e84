#ifndef GSP_HOMOMORPHISM_HPP
#define GSP_HOMOMORPHISM_HPP

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsp/graph.hpp"
#include "gsp/graphon.hpp"
#include "gsp/rng.hpp"
#include "gsp/sampling.hpp"

namespace gsp {

/// The four motifs tracked by the density pipeline: an edge, the 3-vertex
/// path, the triangle and the 4-cycle.
enum class Motif { Edge, Path3, Triangle, Cycle4 };

inline const char* to_string(Motif m) {
    switch (m) {
        case Motif::Edge: return "edge";
        case Motif::Path3: return "path3";
        case Motif::Triangle: return "triangle";
        case Motif::Cycle4: return "cycle4";
    }
    return "?";
}

inline Motif motif_from_string(const std::string& s) {
    if (s == "edge") return Motif::Edge;
    if (s == "path3") return Motif::Path3;
    if (s == "triangle") return Motif::Triangle;
    if (s == "cycle4") return Motif::Cycle4;
    throw std::invalid_argument("unknown motif '" + s + "'");
}

/// Homomorphism density of a motif in a weighted graph,
/// t(F, G) = hom(F, G) / n^{|V(F)|}, evaluated through closed matrix
/// forms: 1'S1/n^2, 1'S^2 1/n^3, tr(S^3)/n^3 and tr(S^4)/n^4.  The trace
/// powers go through the (adjacency) eigenvalues rather than explicit
/// matrix products.
inline double homomorphism_density(const Graph& g, Motif motif) {
    const Eigen::MatrixXd& s = g.adjacency();
    const double n = static_cast<double>(g.size());
    switch (motif) {
        case Motif::Edge: return s.sum() / (n * n);
        case Motif::Path3: {
            const Eigen::VectorXd degrees = s * Eigen::VectorXd::Ones(g.size());
            return degrees.squaredNorm() / (n * n * n);
        }
        case Motif::Triangle:
        case Motif::Cycle4: {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s, Eigen::EigenvaluesOnly);
            if (solver.info() != Eigen::Success)
                throw numeric_error("eigendecomposition failed to converge");
            const int p = motif == Motif::Triangle ? 3 : 4;
            double acc = 0.0;
            for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k)
                acc += std::pow(solver.eigenvalues()(k), p);
            return acc / std::pow(n, p);
        }
    }
    throw std::logic_error("unreachable motif");
}

/// Graphon-side density t(F, W) = int prod W(x_i, x_j) dx, evaluated on
/// the regular `resolution`-sample; exact for piecewise-constant kernels
/// aligned with that partition, a Riemann approximation otherwise.
inline double homomorphism_density(const Graphon& w, Motif motif, int resolution = 1024) {
    return homomorphism_density(deterministic_graph(w, resolution), motif);
}

struct HomDensityRow {
    Motif motif = Motif::Edge;
    int n = 0;
    SampleMode mode = SampleMode::Deterministic;
    /// 0 for deterministic rows; otherwise the number of Bernoulli draws
    /// whose densities were averaged.
    int seed_count = 0;
    double density_graph = 0.0;
    double density_graphon = 0.0;
    double gap = 0.0;
};

/// Convergence table |t(F, G_n) - t(F, W)| over motifs and sizes.
/// Deterministic rows evaluate the regular sample once; stochastic rows
/// average `seed_count` Bernoulli samples (one graph per trial, shared by
/// all motifs, seeded from the master seed, n and the trial index).
inline std::vector<HomDensityRow> convergence_table(const Graphon& w,
                                                    const std::vector<Motif>& motifs,
                                                    const std::vector<int>& sizes,
                                                    SampleMode mode, int seed_count,
                                                    std::uint64_t master_seed,
                                                    int resolution = 1024) {
    if (motifs.empty()) throw std::invalid_argument("convergence_table needs >= 1 motif");
    if (sizes.empty()) throw std::invalid_argument("convergence_table needs >= 1 size");
    for (std::size_t i = 1; i < sizes.size(); ++i)
        if (sizes[i] <= sizes[i - 1])
            throw std::invalid_argument("convergence_table sizes must be ascending");
    if (mode == SampleMode::Stochastic && seed_count < 1)
        throw std::invalid_argument("stochastic convergence_table needs seed_count >= 1");

    std::vector<double> reference;
    reference.reserve(motifs.size());
    for (Motif m : motifs) reference.push_back(homomorphism_density(w, m, resolution));

    std::vector<HomDensityRow> rows;
    for (int n : sizes) {
        std::vector<double> acc(motifs.size(), 0.0);
        int used = 0;
        if (mode == SampleMode::Deterministic) {
            const Graph g = deterministic_graph(w, n);
            for (std::size_t m = 0; m < motifs.size(); ++m)
                acc[m] = homomorphism_density(g, motifs[m]);
        } else {
            for (int trial = 0; trial < seed_count; ++trial) {
                const Graph g =
                    stochastic_graph(w, n, derive_seed(master_seed, static_cast<std::uint64_t>(n),
                                                       static_cast<std::uint64_t>(trial), 1));
                for (std::size_t m = 0; m < motifs.size(); ++m)
                    acc[m] += homomorphism_density(g, motifs[m]);
            }
            for (double& v : acc) v /= seed_count;
            used = seed_count;
        }
        for (std::size_t m = 0; m < motifs.size(); ++m) {
            HomDensityRow row;
            row.motif = motifs[m];
            row.n = n;
            row.mode = mode;
            row.seed_count = used;
            row.density_graph = acc[m];
            row.density_graphon = reference[m];
            row.gap = std::abs(acc[m] - reference[m]);
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace gsp

#endif  // GSP_HOMOMORPHISM_HPP
