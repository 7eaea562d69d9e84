#ifndef GSP_GRAPH_HPP
#define GSP_GRAPH_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

#include "gsp/common.hpp"

namespace gsp {

/// Weighted graph on n nodes, stored as a dense symmetric adjacency
/// matrix with entries in [0,1].  Self-loops are permitted (the sampling
/// routines keep the diagonal), so the matrix is a full n-by-n symmetric
/// block rather than a hollow one.
class Graph {
  public:
    Graph() = default;

    explicit Graph(Eigen::MatrixXd adjacency) : adj_(std::move(adjacency)) {
        if (adj_.rows() != adj_.cols())
            throw std::invalid_argument("adjacency matrix must be square");
        if (adj_.rows() == 0) throw std::invalid_argument("adjacency matrix must be non-empty");
        const double asym = (adj_ - adj_.transpose()).cwiseAbs().maxCoeff();
        if (asym > kRangeTolerance)
            throw std::invalid_argument("adjacency matrix must be symmetric (max asymmetry " +
                                        std::to_string(asym) + ")");
        // Symmetrize exactly so downstream solvers see a bitwise-symmetric matrix.
        adj_ = ((adj_ + adj_.transpose()) / 2.0).eval();
        if (adj_.minCoeff() < -kRangeTolerance || adj_.maxCoeff() > 1.0 + kRangeTolerance)
            throw std::invalid_argument("adjacency entries must lie in [0,1]");
    }

    int size() const { return static_cast<int>(adj_.rows()); }

    const Eigen::MatrixXd& adjacency() const { return adj_; }

    /// Maximum weighted degree: max_i sum_j A_ij.
    double max_degree() const { return adj_.rowwise().sum().maxCoeff(); }

  private:
    Eigen::MatrixXd adj_;
};

}  // namespace gsp

#endif  // GSP_GRAPH_HPP
