#ifndef GSP_GRAPHON_HPP
#define GSP_GRAPHON_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gsp/common.hpp"
#include "gsp/graph.hpp"

namespace gsp {

enum class GraphonKind { Constant, Sbm, SmoothExp, Grid };

/// What to do when a construction or perturbation pushes kernel values
/// outside [0,1]: refuse up front, or clamp at evaluation time.
enum class RangePolicy { Reject, Clip };

inline const char* to_string(GraphonKind k) {
    switch (k) {
        case GraphonKind::Constant: return "constant";
        case GraphonKind::Sbm: return "sbm";
        case GraphonKind::SmoothExp: return "smooth-exp";
        case GraphonKind::Grid: return "grid";
    }
    return "?";
}

/// Bounded symmetric kernel W : [0,1]^2 -> [0,1].  Four families are
/// supported: constant, stochastic block model (piecewise constant on a
/// block partition), the smooth exponential kernel exp(-beta*|u-v|), and
/// an arbitrary piecewise-constant grid.  An affine modifier
/// (scale*base + offset) composed with an optional clamp is tracked on
/// top of the base family; perturbations below are expressed through it
/// so that their difference kernels stay exact.
class Graphon {
  public:
    static Graphon constant(double p, RangePolicy policy = RangePolicy::Reject) {
        if (!std::isfinite(p)) throw std::invalid_argument("constant graphon value must be finite");
        Graphon w;
        w.kind_ = GraphonKind::Constant;
        w.p_ = p;
        w.policy_ = policy;
        w.finish_construction();
        return w;
    }

    /// Block model on the partition induced by strictly increasing interior
    /// boundaries in (0,1); `block_probs` is the symmetric B-by-B matrix of
    /// block-pair densities.  Blocks are left-closed, and u = 1 belongs to
    /// the last block.
    static Graphon sbm(std::vector<double> boundaries, Eigen::MatrixXd block_probs,
                       RangePolicy policy = RangePolicy::Reject) {
        const auto blocks = static_cast<Eigen::Index>(boundaries.size()) + 1;
        if (block_probs.rows() != blocks || block_probs.cols() != blocks)
            throw std::invalid_argument("block probability matrix must be (B x B) for B-1 interior boundaries");
        for (std::size_t i = 0; i < boundaries.size(); ++i) {
            if (!(boundaries[i] > 0.0 && boundaries[i] < 1.0))
                throw std::invalid_argument("block boundaries must lie strictly inside (0,1)");
            if (i > 0 && !(boundaries[i] > boundaries[i - 1]))
                throw std::invalid_argument("block boundaries must be strictly increasing");
        }
        const double asym = (block_probs - block_probs.transpose()).cwiseAbs().maxCoeff();
        if (asym > kRangeTolerance)
            throw std::invalid_argument("block probability matrix must be symmetric");
        Graphon w;
        w.kind_ = GraphonKind::Sbm;
        w.boundaries_ = std::move(boundaries);
        w.cells_ = ((block_probs + block_probs.transpose()) / 2.0).eval();
        w.policy_ = policy;
        w.finish_construction();
        return w;
    }

    /// W(u,v) = exp(-beta * |u - v|), beta >= 0 (beta = 0 gives the
    /// all-ones kernel).
    static Graphon smooth_exp(double beta, RangePolicy policy = RangePolicy::Reject) {
        if (!(beta >= 0.0)) throw std::invalid_argument("smooth-exp graphon needs beta >= 0");
        Graphon w;
        w.kind_ = GraphonKind::SmoothExp;
        w.beta_ = beta;
        w.policy_ = policy;
        w.finish_construction();
        return w;
    }

    /// Piecewise-constant kernel on the uniform N-partition: values(i,j) on
    /// cell I_i x I_j with I_i = [(i)/N, (i+1)/N) (last cell closed).
    static Graphon grid(Eigen::MatrixXd values, RangePolicy policy = RangePolicy::Reject) {
        if (values.rows() != values.cols() || values.rows() == 0)
            throw std::invalid_argument("grid graphon needs a non-empty square value matrix");
        const double asym = (values - values.transpose()).cwiseAbs().maxCoeff();
        if (asym > kRangeTolerance)
            throw std::invalid_argument("grid graphon values must be symmetric");
        Graphon w;
        w.kind_ = GraphonKind::Grid;
        w.cells_ = ((values + values.transpose()) / 2.0).eval();
        w.policy_ = policy;
        w.finish_construction();
        return w;
    }

    /// Kernel value at (u,v), after the affine modifier and clamp.  Both
    /// coordinates must lie in [0,1].
    double operator()(double u, double v) const {
        check_unit_coordinate(u, "u");
        check_unit_coordinate(v, "v");
        return clamp01(scale_ * base_value(u, v) + offset_);
    }

    GraphonKind kind() const { return kind_; }
    RangePolicy policy() const { return policy_; }
    double affine_scale() const { return scale_; }
    double affine_offset() const { return offset_; }

    double constant_value() const {
        require_kind(GraphonKind::Constant, "constant_value");
        return p_;
    }
    const std::vector<double>& boundaries() const {
        require_kind(GraphonKind::Sbm, "boundaries");
        return boundaries_;
    }
    const Eigen::MatrixXd& block_probs() const {
        require_kind(GraphonKind::Sbm, "block_probs");
        return cells_;
    }
    double beta() const {
        require_kind(GraphonKind::SmoothExp, "beta");
        return beta_;
    }
    const Eigen::MatrixXd& grid_values() const {
        require_kind(GraphonKind::Grid, "grid_values");
        return cells_;
    }

    /// Range of the kernel after the affine modifier and clamp.
    std::pair<double, double> value_range() const {
        auto [lo, hi] = raw_range();
        return {clamp01(lo), clamp01(hi)};
    }

    /// True when the clamp actually changes values, i.e. the un-clamped
    /// affine range sticks out of [0,1].  Exact affine composition is only
    /// available while this is false.
    bool clip_active() const {
        auto [lo, hi] = raw_range();
        return lo < -kRangeTolerance || hi > 1.0 + kRangeTolerance;
    }

    /// New graphon scale*W + offset with the same base family.  If clamping
    /// is already active the current values are first materialized on an
    /// `resolution` grid so the composition stays well defined.
    Graphon affine(double scale, double offset, int resolution = 1024) const {
        if (scale < 0.0) throw std::invalid_argument("affine scale must be non-negative");
        Graphon w = clip_active() ? discretize(resolution) : *this;
        w.scale_ *= scale;
        w.offset_ = scale * w.offset_ + offset;
        w.finish_construction();
        return w;
    }

    /// Piecewise-constant snapshot on the uniform N-partition, sampling the
    /// kernel at the left cell corners ((i)/N, (j)/N).  This matches the
    /// grid produced by regular-sample graphs, so the snapshot of a
    /// piecewise-constant kernel on an aligned partition is exact.
    Graphon discretize(int resolution) const {
        if (resolution < 1) throw std::invalid_argument("discretize needs resolution >= 1");
        Eigen::MatrixXd vals(resolution, resolution);
        for (int i = 0; i < resolution; ++i) {
            const double u = static_cast<double>(i) / resolution;
            for (int j = 0; j <= i; ++j) {
                const double v = static_cast<double>(j) / resolution;
                vals(i, j) = vals(j, i) = (*this)(u, v);
            }
        }
        return grid(std::move(vals), policy_);
    }

    /// Maximum degree d_W = max_u \int_0^1 W(u,v) dv.  Exact for the
    /// piecewise-constant families; midpoint quadrature (default 2048
    /// points) for the smooth family.
    double max_degree(int quadrature = 2048) const {
        if (quadrature < 1) throw std::invalid_argument("max_degree needs quadrature >= 1");
        switch (kind_) {
            case GraphonKind::Constant: return clamp01(scale_ * p_ + offset_);
            case GraphonKind::Sbm: {
                const Eigen::MatrixXd eff = effective_cells();
                const std::vector<double> widths = block_widths();
                double best = 0.0;
                for (Eigen::Index b = 0; b < eff.rows(); ++b) {
                    double deg = 0.0;
                    for (Eigen::Index k = 0; k < eff.cols(); ++k)
                        deg += widths[static_cast<std::size_t>(k)] * eff(b, k);
                    best = std::max(best, deg);
                }
                return best;
            }
            case GraphonKind::Grid: {
                const Eigen::MatrixXd eff = effective_cells();
                return eff.rowwise().mean().maxCoeff();
            }
            case GraphonKind::SmoothExp: {
                double best = 0.0;
                for (int i = 0; i < quadrature; ++i) {
                    const double u = (i + 0.5) / quadrature;
                    double deg = 0.0;
                    for (int j = 0; j < quadrature; ++j) deg += (*this)(u, (j + 0.5) / quadrature);
                    best = std::max(best, deg / quadrature);
                }
                return best;
            }
        }
        throw std::logic_error("unreachable graphon kind");
    }

    /// Effective cell values (affine + clamp applied) for the two
    /// piecewise-constant matrix-backed families.
    Eigen::MatrixXd effective_cells() const {
        if (kind_ != GraphonKind::Sbm && kind_ != GraphonKind::Grid)
            throw std::logic_error("effective_cells: not a matrix-backed graphon");
        return cells_.unaryExpr([this](double v) { return clamp01(scale_ * v + offset_); });
    }

    std::vector<double> block_widths() const {
        require_kind(GraphonKind::Sbm, "block_widths");
        std::vector<double> w;
        double prev = 0.0;
        for (double b : boundaries_) {
            w.push_back(b - prev);
            prev = b;
        }
        w.push_back(1.0 - prev);
        return w;
    }

  private:
    Graphon() = default;

    void require_kind(GraphonKind k, const char* op) const {
        if (kind_ != k)
            throw std::logic_error(std::string(op) + " is only defined for " + to_string(k) +
                                   " graphons");
    }

    double base_value(double u, double v) const {
        switch (kind_) {
            case GraphonKind::Constant: return p_;
            case GraphonKind::Sbm: return cells_(block_index(u), block_index(v));
            case GraphonKind::SmoothExp: return std::exp(-beta_ * std::abs(u - v));
            case GraphonKind::Grid: {
                const auto n = cells_.rows();
                return cells_(cell_index(u, n), cell_index(v, n));
            }
        }
        throw std::logic_error("unreachable graphon kind");
    }

    Eigen::Index block_index(double u) const {
        for (std::size_t k = 0; k < boundaries_.size(); ++k)
            if (u < boundaries_[k]) return static_cast<Eigen::Index>(k);
        return static_cast<Eigen::Index>(boundaries_.size());
    }

    static Eigen::Index cell_index(double u, Eigen::Index n) {
        const auto idx = static_cast<Eigen::Index>(u * static_cast<double>(n));
        return std::min(idx, n - 1);  // u = 1 falls in the last (closed) cell
    }

    std::pair<double, double> raw_range() const {
        double lo = 0.0, hi = 0.0;
        switch (kind_) {
            case GraphonKind::Constant: lo = hi = p_; break;
            case GraphonKind::Sbm:
            case GraphonKind::Grid:
                lo = cells_.minCoeff();
                hi = cells_.maxCoeff();
                break;
            case GraphonKind::SmoothExp:
                lo = std::exp(-beta_);
                hi = 1.0;
                break;
        }
        return {scale_ * lo + offset_, scale_ * hi + offset_};
    }

    void finish_construction() {
        if (policy_ == RangePolicy::Clip) return;
        auto [lo, hi] = raw_range();
        if (lo < -kRangeTolerance || hi > 1.0 + kRangeTolerance)
            throw std::invalid_argument("graphon values fall outside [0,1] (range [" +
                                        std::to_string(lo) + ", " + std::to_string(hi) +
                                        "]); use the clip policy to clamp instead");
    }

    GraphonKind kind_ = GraphonKind::Constant;
    RangePolicy policy_ = RangePolicy::Reject;
    double p_ = 0.0;
    double beta_ = 0.0;
    std::vector<double> boundaries_;
    Eigen::MatrixXd cells_;
    double scale_ = 1.0;
    double offset_ = 0.0;
};

/// Difference kernel A = W' - W of a perturbation pair.  Evaluates the
/// two graphons and subtracts, so it inherits whatever exactness the pair
/// has.  `exact_lipschitz` is populated when the construction knows a
/// valid Lipschitz constant in closed form (e.g. 0 for an additive
/// constant shift).
struct Kernel {
    Graphon original;
    Graphon perturbed;
    std::optional<double> exact_lipschitz;

    double operator()(double u, double v) const { return perturbed(u, v) - original(u, v); }
};

struct Perturbation {
    Graphon perturbed;
    Kernel kernel;
};

/// W' = W + a.
inline Perturbation perturb_additive(const Graphon& w, double a, int resolution = 1024) {
    Graphon wp = w.affine(1.0, a, resolution);
    return {wp, Kernel{w, wp, 0.0}};
}

/// W' = alpha * W, alpha >= 0.  The difference kernel is (alpha-1)*W, so
/// when W's own Lipschitz constant is known in closed form the kernel's
/// is |alpha-1| times it.
inline Perturbation perturb_scale(const Graphon& w, double alpha, int resolution = 1024) {
    Graphon wp = w.affine(alpha, 0.0, resolution);
    std::optional<double> lip;
    if (!w.clip_active()) {
        if (w.kind() == GraphonKind::Constant) lip = 0.0;
        if (w.kind() == GraphonKind::SmoothExp)
            lip = std::abs(alpha - 1.0) * w.affine_scale() * w.beta();
    }
    return {wp, Kernel{w, wp, lip}};
}

/// Nonlinear dampening W' = W + (1 - exp(1/W)) / 10.  The shift is
/// negative and blows up as W -> 0, so the kernel must stay above
/// `min_value` everywhere; below roughly 0.52 the perturbed values drop
/// under 0 and the range policy of W decides between rejection and
/// clamping.  Piecewise-constant families transform exactly cell by cell;
/// the smooth family is first materialized on a `resolution` grid.
inline Perturbation perturb_inv_exp(const Graphon& w, double min_value = 0.05,
                                    int resolution = 1024) {
    if (!(min_value > 0.0)) throw std::invalid_argument("inv-exp perturbation needs min_value > 0");
    const double lo = w.value_range().first;
    if (lo < min_value)
        throw std::domain_error("inv-exp perturbation needs the kernel to stay above " +
                                std::to_string(min_value) + " (min value " + std::to_string(lo) +
                                ")");
    const auto shift = [](double v) { return v + (1.0 - std::exp(1.0 / v)) / 10.0; };
    const Graphon base =
        (w.kind() == GraphonKind::SmoothExp || w.clip_active()) ? w.discretize(resolution) : w;
    Graphon wp = base;
    switch (base.kind()) {
        case GraphonKind::Constant:
            wp = Graphon::constant(shift(base.value_range().first), base.policy());
            break;
        case GraphonKind::Sbm:
            wp = Graphon::sbm(base.boundaries(), base.effective_cells().unaryExpr(shift),
                              base.policy());
            break;
        case GraphonKind::Grid:
            wp = Graphon::grid(base.effective_cells().unaryExpr(shift), base.policy());
            break;
        case GraphonKind::SmoothExp: throw std::logic_error("smooth kernel not materialized");
    }
    return {wp, Kernel{base, wp, std::nullopt}};
}

/// W' = W + D for a user-supplied symmetric difference grid D (values may
/// be negative).  W is materialized on D's partition unless it is already
/// a grid of the same resolution, so the sum is exact cell arithmetic.
inline Perturbation perturb_grid(const Graphon& w, const Eigen::MatrixXd& delta) {
    if (delta.rows() != delta.cols() || delta.rows() == 0)
        throw std::invalid_argument("perturbation grid must be square and non-empty");
    if ((delta - delta.transpose()).cwiseAbs().maxCoeff() > kRangeTolerance)
        throw std::invalid_argument("perturbation grid must be symmetric");
    const auto n = static_cast<int>(delta.rows());
    const bool aligned =
        w.kind() == GraphonKind::Grid && w.grid_values().rows() == delta.rows() && !w.clip_active();
    const Graphon base = aligned ? w : w.discretize(n);
    Graphon wp = Graphon::grid(base.effective_cells() + delta, base.policy());
    return {wp, Kernel{base, wp, std::nullopt}};
}

struct LipschitzEstimate {
    double value = 0.0;
    /// Closed form (constant or smooth family) rather than a finite
    /// difference scan.
    bool exact = false;
    /// Set for the step families, whose true Lipschitz constant is
    /// unbounded; the returned value is only the steepest scanned slope.
    bool step_kernel_warning = false;
};

namespace detail {

template <typename F>
double max_slope(const F& f, int probes) {
    // Max absolute slope between horizontally adjacent probe points; the
    // symmetric direction gives the same value for symmetric kernels.
    const double h = 1.0 / (probes - 1);
    double best = 0.0;
    for (int j = 0; j < probes; ++j) {
        const double v = j * h;
        double prev = f(0.0, v);
        for (int i = 1; i < probes; ++i) {
            const double cur = f(i * h, v);
            best = std::max(best, std::abs(cur - prev));
            prev = cur;
        }
    }
    return best / h;
}

}  // namespace detail

/// Lipschitz constant of W under the taxicab metric |u-u'| + |v-v'|.
/// Constant and smooth-exp families are exact; matrix-backed families get
/// a finite-difference scan over a `probes` x `probes` grid together with
/// a warning that step kernels are not Lipschitz at all.
inline LipschitzEstimate estimate_lipschitz(const Graphon& w, int probes = 2048) {
    if (probes < 2) throw std::invalid_argument("estimate_lipschitz needs probes >= 2");
    if (!w.clip_active()) {
        if (w.kind() == GraphonKind::Constant) return {0.0, true, false};
        if (w.kind() == GraphonKind::SmoothExp)
            return {w.affine_scale() * w.beta(), true, false};
    }
    const bool step = w.kind() == GraphonKind::Sbm || w.kind() == GraphonKind::Grid;
    const double est =
        detail::max_slope([&w](double u, double v) { return w(u, v); }, probes);
    return {est, false, step};
}

/// Same scan for a difference kernel; closed-form constants attached at
/// construction win over the scan.
inline LipschitzEstimate estimate_lipschitz(const Kernel& k, int probes = 2048) {
    if (k.exact_lipschitz) return {*k.exact_lipschitz, true, false};
    if (probes < 2) throw std::invalid_argument("estimate_lipschitz needs probes >= 2");
    const bool step = k.original.kind() == GraphonKind::Sbm ||
                      k.original.kind() == GraphonKind::Grid ||
                      k.perturbed.kind() == GraphonKind::Sbm ||
                      k.perturbed.kind() == GraphonKind::Grid;
    const double est = detail::max_slope([&k](double u, double v) { return k(u, v); }, probes);
    return {est, false, step};
}

/// Graphon induced by a weighted graph: piecewise constant on the uniform
/// n-partition with cell values A_ij.
inline Graphon induced_graphon(const Graph& g) { return Graphon::grid(g.adjacency()); }

}  // namespace gsp

#endif  // GSP_GRAPHON_HPP
