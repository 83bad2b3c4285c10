#ifndef SQPKIT_TYPES_HPP
#define SQPKIT_TYPES_HPP

#include <Eigen/Dense>
#include <limits>

namespace sqpkit {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace sqpkit

#endif
