#ifndef GSP_SPECTRAL_HPP
#define GSP_SPECTRAL_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gsp/common.hpp"
#include "gsp/graph.hpp"
#include "gsp/graphon.hpp"
#include "gsp/sampling.hpp"

namespace gsp {

/// Whether eigenvalues refer to the adjacency matrix S itself or to the
/// induced graphon operator S/n (whose spectrum lies in [-1,1]).
enum class SpectrumScale { Graph, Graphon };

/// Eigenvalues under the signed indexing
///   1 >= lambda_1 >= lambda_2 >= ... >= 0 >= ... >= lambda_{-2} >= lambda_{-1} >= -1:
/// positive eigenvalues descend from index 1, negative eigenvalues ascend
/// from index -1 (so lambda_{-1} is the most negative), zeros sit at the
/// trailing positive indices, and indices beyond the stored spectrum read
/// as 0.  This makes eigenvalue(i) total over all nonzero signed i, which
/// is what the perturbation distances below rely on.
class SignedSpectrum {
  public:
    static SignedSpectrum from_values(const std::vector<double>& values, SpectrumScale scale) {
        SignedSpectrum s;
        s.scale_ = scale;
        s.dim_ = static_cast<int>(values.size());
        std::vector<double> pos, zero, neg;
        for (double v : values) {
            if (v > 0.0)
                pos.push_back(v);
            else if (v < 0.0)
                neg.push_back(v);
            else
                zero.push_back(v);
        }
        std::sort(pos.begin(), pos.end(), std::greater<double>());
        std::sort(neg.begin(), neg.end());
        s.pos_ = std::move(pos);
        s.pos_.insert(s.pos_.end(), zero.begin(), zero.end());
        s.neg_ = std::move(neg);
        return s;
    }

    SpectrumScale scale() const { return scale_; }
    int dim() const { return dim_; }
    bool has_vectors() const { return vec_pos_.cols() + vec_neg_.cols() > 0; }
    int positive_count() const { return static_cast<int>(pos_.size()); }
    int negative_count() const { return static_cast<int>(neg_.size()); }

    /// Eigenvalue at a signed index; 0 beyond the stored spectrum.
    double eigenvalue(int signed_index) const {
        if (signed_index > 0) {
            const auto i = static_cast<std::size_t>(signed_index - 1);
            return i < pos_.size() ? pos_[i] : 0.0;
        }
        if (signed_index < 0) {
            const auto i = static_cast<std::size_t>(-signed_index - 1);
            return i < neg_.size() ? neg_[i] : 0.0;
        }
        throw std::domain_error("signed index 0 is not defined");
    }

    Eigen::VectorXd eigenvector(int signed_index) const {
        if (!has_vectors()) throw std::logic_error("spectrum was computed without eigenvectors");
        if (signed_index > 0 && signed_index <= positive_count())
            return vec_pos_.col(signed_index - 1);
        if (signed_index < 0 && -signed_index <= negative_count())
            return vec_neg_.col(-signed_index - 1);
        throw std::out_of_range("no stored eigenvector at signed index " +
                                std::to_string(signed_index));
    }

    /// (signed index, eigenvalue) pairs in export order: +1..+P, then
    /// -1..-N.
    std::vector<std::pair<int, double>> export_order() const {
        std::vector<std::pair<int, double>> out;
        out.reserve(pos_.size() + neg_.size());
        for (std::size_t i = 0; i < pos_.size(); ++i)
            out.emplace_back(static_cast<int>(i) + 1, pos_[i]);
        for (std::size_t i = 0; i < neg_.size(); ++i)
            out.emplace_back(-(static_cast<int>(i) + 1), neg_[i]);
        return out;
    }

  private:
    friend SignedSpectrum decompose(const Graph&, SpectrumScale, bool);

    SpectrumScale scale_ = SpectrumScale::Graph;
    int dim_ = 0;
    std::vector<double> pos_;  // descending, stored zeros trailing
    std::vector<double> neg_;  // ascending, most negative first
    Eigen::MatrixXd vec_pos_;  // columns aligned with pos_ (when computed)
    Eigen::MatrixXd vec_neg_;
};

/// Full eigendecomposition of the adjacency matrix, reordered into the
/// signed indexing.  Graphon scale divides eigenvalues by n.
inline SignedSpectrum decompose(const Graph& g, SpectrumScale scale,
                                bool with_vectors = true) {
    const Eigen::MatrixXd& s = g.adjacency();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        s, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw numeric_error("eigendecomposition failed to converge");
    const int n = g.size();
    const double denom = scale == SpectrumScale::Graphon ? static_cast<double>(n) : 1.0;

    SignedSpectrum out;
    out.scale_ = scale;
    out.dim_ = n;
    // Eigen returns ascending order: negatives first (already most negative
    // first), then zeros, then positives (reverse for descending).
    std::vector<int> pos_cols, zero_cols, neg_cols;
    for (int k = 0; k < n; ++k) {
        const double v = solver.eigenvalues()(k) / denom;
        if (v > 0.0)
            pos_cols.push_back(k);
        else if (v < 0.0)
            neg_cols.push_back(k);
        else
            zero_cols.push_back(k);
    }
    std::reverse(pos_cols.begin(), pos_cols.end());
    pos_cols.insert(pos_cols.end(), zero_cols.begin(), zero_cols.end());

    out.pos_.reserve(pos_cols.size());
    out.neg_.reserve(neg_cols.size());
    for (int k : pos_cols) out.pos_.push_back(solver.eigenvalues()(k) / denom);
    for (int k : neg_cols) out.neg_.push_back(solver.eigenvalues()(k) / denom);
    if (with_vectors) {
        out.vec_pos_.resize(n, static_cast<Eigen::Index>(pos_cols.size()));
        out.vec_neg_.resize(n, static_cast<Eigen::Index>(neg_cols.size()));
        for (std::size_t i = 0; i < pos_cols.size(); ++i)
            out.vec_pos_.col(static_cast<Eigen::Index>(i)) = solver.eigenvectors().col(pos_cols[i]);
        for (std::size_t i = 0; i < neg_cols.size(); ++i)
            out.vec_neg_.col(static_cast<Eigen::Index>(i)) = solver.eigenvectors().col(neg_cols[i]);
    }
    return out;
}

inline void check_band_threshold(double c) {
    if (!(c > 0.0 && c <= 1.0))
        throw std::domain_error("band threshold c must lie in (0,1], got " + std::to_string(c));
}

/// Number of eigenvalues with |lambda| >= c (counted over the signed
/// indices, so both tails contribute).
inline int band_count(const SignedSpectrum& s, double c) {
    check_band_threshold(c);
    int count = 0;
    for (int i = 1; i <= s.positive_count() && s.eigenvalue(i) >= c; ++i) ++count;
    for (int i = 1; i <= s.negative_count() && -s.eigenvalue(-i) >= c; ++i) ++count;
    return count;
}

/// Minimal distance between the c-band of `q` and the adjacent part of
/// `p`'s spectrum (and vice versa): for every signed index i with
/// |lambda_i(q)| >= c the candidates are
///   |lambda_i(p) - lambda_{i+sgn(i)}(q)|   and   |lambda_i(q) - lambda_{i+sgn(i)}(p)|,
/// plus the cross-sign pair |lambda_1 - lambda_{-1}| taken both ways.
/// Indices past either stored spectrum read as 0 per the signed
/// convention.  Throws std::domain_error when the band of `q` is empty.
inline double min_band_gap(const SignedSpectrum& p, const SignedSpectrum& q, double c) {
    check_band_threshold(c);
    if (p.scale() != q.scale())
        throw std::invalid_argument("min_band_gap needs spectra on the same scale");
    std::vector<int> band;
    for (int i = 1; i <= q.positive_count() && q.eigenvalue(i) >= c; ++i) band.push_back(i);
    for (int i = 1; i <= q.negative_count() && -q.eigenvalue(-i) >= c; ++i) band.push_back(-i);
    if (band.empty())
        throw std::domain_error("band of the reference spectrum is empty at threshold " +
                                std::to_string(c));
    double best = std::numeric_limits<double>::infinity();
    for (int i : band) {
        const int next = i > 0 ? i + 1 : i - 1;
        best = std::min(best, std::abs(p.eigenvalue(i) - q.eigenvalue(next)));
        best = std::min(best, std::abs(q.eigenvalue(i) - p.eigenvalue(next)));
    }
    best = std::min(best, std::abs(p.eigenvalue(1) - q.eigenvalue(-1)));
    best = std::min(best, std::abs(q.eigenvalue(1) - p.eigenvalue(-1)));
    return best;
}

struct EigenvalueDriftCheck {
    bool pass = false;
    /// max_i |lambda_i - lambda_i'| - dist; negative values are margin.
    double max_excess = 0.0;
};

/// Check that matched signed eigenvalues move by at most `dist` (the
/// operator distance of the underlying kernels), up to `tol`.
inline EigenvalueDriftCheck eigenvalue_drift_check(const SignedSpectrum& a,
                                                   const SignedSpectrum& b, double dist,
                                                   double tol = 1e-9) {
    if (a.scale() != b.scale())
        throw std::invalid_argument("eigenvalue_drift_check needs spectra on the same scale");
    double worst = -std::numeric_limits<double>::infinity();
    const int pos = std::max(a.positive_count(), b.positive_count());
    const int neg = std::max(a.negative_count(), b.negative_count());
    for (int i = 1; i <= pos; ++i)
        worst = std::max(worst, std::abs(a.eigenvalue(i) - b.eigenvalue(i)) - dist);
    for (int i = 1; i <= neg; ++i)
        worst = std::max(worst, std::abs(a.eigenvalue(-i) - b.eigenvalue(-i)) - dist);
    return {worst <= tol, worst};
}

/// Spectral norm (largest |eigenvalue|) of a symmetric matrix.
inline double operator_norm_sym(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("operator_norm_sym needs a square matrix");
    if (m.rows() == 0) return 0.0;
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-9)
        throw std::invalid_argument("operator_norm_sym needs a symmetric matrix");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw numeric_error("eigendecomposition failed to converge");
    return std::max(std::abs(solver.eigenvalues()(0)),
                    std::abs(solver.eigenvalues()(m.rows() - 1)));
}

/// Operator norm of the integral operator with kernel W, approximated by
/// the induced operator of the regular N-sample: sigma_max(S)/N.  Exact
/// for piecewise-constant kernels aligned with the N-partition.
inline double operator_norm(const Graphon& w, int resolution = 1024) {
    const Graph g = deterministic_graph(w, resolution);
    return operator_norm_sym(g.adjacency()) / static_cast<double>(resolution);
}

/// Same for a difference kernel (the perturbation size epsilon).
inline double operator_norm(const Kernel& k, int resolution = 1024) {
    if (resolution < 1) throw std::invalid_argument("operator_norm needs resolution >= 1");
    Eigen::MatrixXd delta(resolution, resolution);
    for (int i = 0; i < resolution; ++i) {
        const double u = static_cast<double>(i) / resolution;
        for (int j = 0; j <= i; ++j) {
            delta(i, j) = delta(j, i) = k(u, static_cast<double>(j) / resolution);
        }
    }
    return operator_norm_sym(delta) / static_cast<double>(resolution);
}

struct ProjectorDriftCheck {
    bool pass = false;
    /// The separation precondition between the selected eigenvalues of M
    /// and the rest of M''s spectrum held.
    bool precondition_ok = false;
    double projector_distance = 0.0;
    double bound = 0.0;
};

/// Check the projector perturbation bound
///   ||E_gamma(M) - E_omega(M')|| <= (pi/2) * ||M - M'|| / d
/// for symmetric matrices.  `gamma` and `omega` are 0-based positions in
/// descending eigenvalue order; the precondition is that eigenvalues of
/// M' outside omega stay at distance >= d from the gamma-eigenvalues of M.
inline ProjectorDriftCheck projector_drift_check(const Eigen::MatrixXd& m,
                                                 const Eigen::MatrixXd& mp,
                                                 const std::vector<int>& gamma,
                                                 const std::vector<int>& omega, double d,
                                                 double tol = 1e-9) {
    if (!(d > 0.0)) throw std::domain_error("projector_drift_check needs separation d > 0");
    if (m.rows() != m.cols() || mp.rows() != mp.cols() || m.rows() != mp.rows())
        throw std::invalid_argument("projector_drift_check needs square matrices of equal size");
    const auto n = m.rows();
    for (int r : gamma)
        if (r < 0 || r >= n) throw std::out_of_range("gamma rank out of range");
    for (int r : omega)
        if (r < 0 || r >= n) throw std::out_of_range("omega rank out of range");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sm(m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> smp(mp);
    if (sm.info() != Eigen::Success || smp.info() != Eigen::Success)
        throw numeric_error("eigendecomposition failed to converge");

    // Positions are in descending order; Eigen sorts ascending.
    const auto col_of = [n](int rank) { return n - 1 - rank; };
    ProjectorDriftCheck out;
    out.precondition_ok = true;
    std::vector<char> in_omega(static_cast<std::size_t>(n), 0);
    for (int r : omega) in_omega[static_cast<std::size_t>(r)] = 1;
    for (int r : gamma) {
        const double lam = sm.eigenvalues()(col_of(r));
        for (int rp = 0; rp < n; ++rp) {
            if (in_omega[static_cast<std::size_t>(rp)]) continue;
            if (std::abs(lam - smp.eigenvalues()(col_of(rp))) < d) out.precondition_ok = false;
        }
    }

    Eigen::MatrixXd diff = Eigen::MatrixXd::Zero(n, n);
    for (int r : gamma) {
        const Eigen::VectorXd v = sm.eigenvectors().col(col_of(r));
        diff += v * v.transpose();
    }
    for (int r : omega) {
        const Eigen::VectorXd v = smp.eigenvectors().col(col_of(r));
        diff -= v * v.transpose();
    }
    out.projector_distance = operator_norm_sym(diff);
    out.bound = std::numbers::pi / 2.0 * operator_norm_sym(m - mp) / d;
    out.pass = out.precondition_ok && out.projector_distance <= out.bound + tol;
    return out;
}

/// Concentration radius 2*sqrt(n*log(2n/xi)): with probability at least
/// 1-xi a Bernoulli sample stays within this adjacency-norm distance of
/// its expectation, provided the expected degrees are large enough.
inline double concentration_threshold(int n, double xi) {
    if (n < 1) throw std::invalid_argument("concentration_threshold needs n >= 1");
    if (!(xi > 0.0 && xi < 1.0))
        throw std::domain_error("confidence parameter xi must lie in (0,1)");
    return 2.0 * std::sqrt(n * std::log(2.0 * n / xi));
}

struct DegreeCheck {
    bool pass = false;
    double degree = 0.0;
    double required = 0.0;
};

/// Validity condition for the concentration radius: the maximum expected
/// degree of the sample must exceed (4/9)*log(2n/xi).
inline DegreeCheck degree_concentration_check(const Graph& expected, double xi) {
    const int n = expected.size();
    if (!(xi > 0.0 && xi < 1.0))
        throw std::domain_error("confidence parameter xi must lie in (0,1)");
    DegreeCheck out;
    out.degree = expected.max_degree();
    out.required = 4.0 * std::log(2.0 * n / xi) / 9.0;
    out.pass = out.degree > out.required;
    return out;
}

struct AssumptionCheck {
    bool pass = false;
    double lhs = 0.0;
    double rhs = 0.0;
};

/// Degree assumption for the stochastic bounds:
///   n - log(2n/xi)/d_W  >  2*L_W/d_W,
/// where d_W is the graphon's maximum degree and L_W its Lipschitz
/// constant (for the perturbed graphon, pass the summed constant).
inline AssumptionCheck degree_assumption_check(int n, double xi, double d_w, double lipschitz) {
    if (n < 1) throw std::invalid_argument("degree_assumption_check needs n >= 1");
    if (!(xi > 0.0 && xi < 1.0))
        throw std::domain_error("confidence parameter xi must lie in (0,1)");
    if (!(d_w > 0.0)) throw std::domain_error("degree assumption needs max degree d_W > 0");
    AssumptionCheck out;
    out.lhs = n - std::log(2.0 * n / xi) / d_w;
    out.rhs = 2.0 * lipschitz / d_w;
    out.pass = out.lhs > out.rhs;
    return out;
}

}  // namespace gsp

#endif  // GSP_SPECTRAL_HPP
