#pragma once

#include <Eigen/Dense>

namespace colacare::nn {

/// Row-major dense matrix of doubles; rows are batch entries.
using Tensor2 = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace colacare::nn
