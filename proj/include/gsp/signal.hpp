#ifndef GSP_SIGNAL_HPP
#define GSP_SIGNAL_HPP

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gsp/common.hpp"

namespace gsp {

enum class SignalKind { Constant, Linear, Cosine, Step };

/// Square-integrable signal X : [0,1] -> R.  Step signals are piecewise
/// constant on the uniform partition (left-closed cells, u = 1 in the
/// last cell), mirroring the grid graphon convention.
class GraphonSignal {
  public:
    static GraphonSignal constant(double c) {
        GraphonSignal x;
        x.kind_ = SignalKind::Constant;
        x.a_ = c;
        return x;
    }

    /// X(u) = a + b*u.
    static GraphonSignal linear(double a, double b) {
        GraphonSignal x;
        x.kind_ = SignalKind::Linear;
        x.a_ = a;
        x.b_ = b;
        return x;
    }

    /// X(u) = amp * cos(pi * k * u).
    static GraphonSignal cosine(double amp, double k) {
        GraphonSignal x;
        x.kind_ = SignalKind::Cosine;
        x.a_ = amp;
        x.b_ = k;
        return x;
    }

    static GraphonSignal step(Eigen::VectorXd values) {
        if (values.size() == 0) throw std::invalid_argument("step signal needs at least one cell");
        GraphonSignal x;
        x.kind_ = SignalKind::Step;
        x.values_ = std::move(values);
        return x;
    }

    double operator()(double u) const {
        check_unit_coordinate(u, "u");
        switch (kind_) {
            case SignalKind::Constant: return a_;
            case SignalKind::Linear: return a_ + b_ * u;
            case SignalKind::Cosine: return a_ * std::cos(std::numbers::pi * b_ * u);
            case SignalKind::Step: {
                const auto n = values_.size();
                const auto i = static_cast<Eigen::Index>(u * static_cast<double>(n));
                return values_(std::min(i, n - 1));
            }
        }
        throw std::logic_error("unreachable signal kind");
    }

    SignalKind kind() const { return kind_; }
    const Eigen::VectorXd& step_values() const {
        if (kind_ != SignalKind::Step) throw std::logic_error("not a step signal");
        return values_;
    }

    /// Family parameters: (c, -) constant, (a, b) linear, (amp, k)
    /// cosine.
    double param_a() const { return a_; }
    double param_b() const { return b_; }

    /// L2([0,1]) norm.  Exact for constant and step signals; midpoint
    /// quadrature for the analytic families.
    double l2_norm(int quadrature = 4096) const {
        switch (kind_) {
            case SignalKind::Constant: return std::abs(a_);
            case SignalKind::Step: return values_.norm() / std::sqrt(static_cast<double>(values_.size()));
            default: {
                if (quadrature < 1) throw std::invalid_argument("l2_norm needs quadrature >= 1");
                double acc = 0.0;
                for (int i = 0; i < quadrature; ++i) {
                    const double v = (*this)((i + 0.5) / quadrature);
                    acc += v * v;
                }
                return std::sqrt(acc / quadrature);
            }
        }
    }

  private:
    GraphonSignal() = default;

    SignalKind kind_ = SignalKind::Constant;
    double a_ = 0.0;
    double b_ = 0.0;
    Eigen::VectorXd values_;
};

/// Node signal sampled at the regular grid points u_i = (i-1)/n.
inline Eigen::VectorXd sample_signal(const GraphonSignal& x, int n) {
    if (n < 1) throw std::invalid_argument("sample_signal needs n >= 1");
    Eigen::VectorXd out(n);
    for (int i = 0; i < n; ++i) out(i) = x(static_cast<double>(i) / n);
    return out;
}

/// Step signal induced by a node signal on the uniform n-partition.
/// Its L2 norm is exactly ||x||_2 / sqrt(n).
inline GraphonSignal induce_signal(const Eigen::VectorXd& x) { return GraphonSignal::step(x); }

}  // namespace gsp

#endif  // GSP_SIGNAL_HPP
