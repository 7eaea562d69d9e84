#ifndef GSP_FILTER_HPP
#define GSP_FILTER_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <variant>
#include <vector>

#include "gsp/common.hpp"
#include "gsp/graph.hpp"
#include "gsp/spectral.hpp"

namespace gsp {

/// Polynomial spectral filter h(lambda) = sum_k h_k lambda^k, applied to
/// a graph signal through repeated shifts with the normalized adjacency
/// S/m.
class PolyFilter {
  public:
    explicit PolyFilter(std::vector<double> coefficients) : coeffs_(std::move(coefficients)) {
        if (coeffs_.empty()) throw std::invalid_argument("polynomial filter needs >= 1 coefficient");
        for (double c : coeffs_)
            if (!std::isfinite(c))
                throw std::invalid_argument("polynomial filter coefficients must be finite");
    }

    const std::vector<double>& coefficients() const { return coeffs_; }
    int order() const { return static_cast<int>(coeffs_.size()) - 1; }

    double response(double lambda) const {
        double acc = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * lambda + *it;
        return acc;
    }

  private:
    std::vector<double> coeffs_;
};

/// Flat-band spectral filter
///   h(lambda) = g0 + gain * clamp((|lambda| - c) / (1 - c), 0, 1):
/// exactly g0 inside the band |lambda| < c, ramping linearly to g0 + gain
/// at |lambda| = 1.  Lipschitz constant gain/(1-c); the construction
/// requires |g0| + |gain| < 1 so the response magnitude stays below 1.
class BandFilter {
  public:
    BandFilter(double g0, double gain, double c) : g0_(g0), gain_(gain), c_(c) {
        if (!(c > 0.0 && c < 1.0))
            throw std::invalid_argument("band threshold c must lie in (0,1)");
        if (!(std::abs(g0) + std::abs(gain) < 1.0))
            throw std::invalid_argument("band filter needs |g0| + |gain| < 1");
    }

    double g0() const { return g0_; }
    double gain() const { return gain_; }
    double band_threshold() const { return c_; }

    double response(double lambda) const {
        const double t = (std::abs(lambda) - c_) / (1.0 - c_);
        return g0_ + gain_ * std::clamp(t, 0.0, 1.0);
    }

    double lipschitz() const { return std::abs(gain_) / (1.0 - c_); }

  private:
    double g0_, gain_, c_;
};

using FilterSpec = std::variant<PolyFilter, BandFilter>;

inline double filter_response(const FilterSpec& f, double lambda) {
    return std::visit([lambda](const auto& g) { return g.response(lambda); }, f);
}

/// Apply a polynomial filter via K-1 sparse-free matrix-vector shifts
/// with S/m; no eigendecomposition involved.
inline Eigen::VectorXd apply_filter(const PolyFilter& f, const Graph& g, double m,
                                    const Eigen::VectorXd& x) {
    if (x.size() != g.size()) throw std::invalid_argument("signal length must match graph size");
    if (!(m > 0.0)) throw std::invalid_argument("shift normalization m must be positive");
    const Eigen::MatrixXd& s = g.adjacency();
    const auto& h = f.coefficients();
    Eigen::VectorXd y = h[0] * x;
    Eigen::VectorXd z = x;
    for (std::size_t k = 1; k < h.size(); ++k) {
        z = (s * z) / m;
        y += h[k] * z;
    }
    return y;
}

/// Apply any filter through an explicit eigendecomposition:
/// y = V h(Lambda) V^T x.  The spectrum must carry eigenvectors and be on
/// the graphon scale (eigenvalues in [-1,1]) so band thresholds line up.
inline Eigen::VectorXd apply_filter_spectral(const FilterSpec& f, const SignedSpectrum& spec,
                                             const Eigen::VectorXd& x) {
    if (!spec.has_vectors())
        throw std::invalid_argument("spectral application needs a spectrum with eigenvectors");
    if (spec.scale() != SpectrumScale::Graphon)
        throw std::invalid_argument("spectral application expects graphon-scale eigenvalues");
    if (x.size() != spec.dim()) throw std::invalid_argument("signal length must match spectrum dim");
    Eigen::VectorXd y = Eigen::VectorXd::Zero(x.size());
    for (int i = 1; i <= spec.positive_count(); ++i) {
        const Eigen::VectorXd v = spec.eigenvector(i);
        y += filter_response(f, spec.eigenvalue(i)) * v.dot(x) * v;
    }
    for (int i = 1; i <= spec.negative_count(); ++i) {
        const Eigen::VectorXd v = spec.eigenvector(-i);
        y += filter_response(f, spec.eigenvalue(-i)) * v.dot(x) * v;
    }
    return y;
}

struct FilterRegularity {
    double lipschitz = 0.0;
    double sup_response = 0.0;
    /// sup |h| < 1 held (Lipschitz continuity is by construction).
    bool pass = false;
};

/// Estimate the Lipschitz constant and sup-norm of the spectral response
/// over [-1,1].  Band filters are answered in closed form; polynomials
/// are scanned over `probes` evenly spaced points including both
/// endpoints.
inline FilterRegularity filter_regularity(const FilterSpec& f, int probes = 4096) {
    FilterRegularity out;
    if (const auto* band = std::get_if<BandFilter>(&f)) {
        out.lipschitz = band->lipschitz();
        out.sup_response = std::max(std::abs(band->g0()), std::abs(band->g0() + band->gain()));
        out.pass = out.sup_response < 1.0;
        return out;
    }
    if (probes < 2) throw std::invalid_argument("filter_regularity needs probes >= 2");
    const auto& poly = std::get<PolyFilter>(f);
    const double h = 2.0 / (probes - 1);
    double prev = poly.response(-1.0);
    out.sup_response = std::abs(prev);
    for (int i = 1; i < probes; ++i) {
        const double cur = poly.response(-1.0 + i * h);
        out.lipschitz = std::max(out.lipschitz, std::abs(cur - prev) / h);
        out.sup_response = std::max(out.sup_response, std::abs(cur));
        prev = cur;
    }
    out.pass = out.sup_response < 1.0;
    return out;
}

/// Rescale a polynomial filter so its sup response stays below 1 by
/// `margin`; filters already inside the margin are returned unchanged.
inline PolyFilter project_regular(const PolyFilter& f, double margin = 1e-3, int probes = 4096) {
    if (!(margin > 0.0 && margin < 1.0))
        throw std::invalid_argument("projection margin must lie in (0,1)");
    const double sup = filter_regularity(FilterSpec(f), probes).sup_response;
    if (sup < 1.0 - margin || sup == 0.0) return f;
    const double scale = (1.0 - margin) / sup;
    std::vector<double> h = f.coefficients();
    for (double& c : h) c *= scale;
    return PolyFilter(std::move(h));
}

/// How far a filter strays from flatness inside the band |lambda| < c:
/// max |h(lambda) - h(0)|.  Zero for band filters by construction;
/// reported for polynomial filters so bound consumers can see the
/// flat-band premise is only approximate.
inline double band_deviation(const FilterSpec& f, double c, int probes = 4096) {
    check_band_threshold(c);
    if (std::holds_alternative<BandFilter>(f)) return 0.0;
    if (probes < 2) throw std::invalid_argument("band_deviation needs probes >= 2");
    const auto& poly = std::get<PolyFilter>(f);
    const double h0 = poly.response(0.0);
    double dev = 0.0;
    for (int i = 0; i < probes; ++i) {
        const double lam = -c + 2.0 * c * i / (probes - 1);
        dev = std::max(dev, std::abs(poly.response(lam) - h0));
    }
    return dev;
}

}  // namespace gsp

#endif  // GSP_FILTER_HPP
