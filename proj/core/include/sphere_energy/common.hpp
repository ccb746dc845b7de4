#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace sphere_energy {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Thrown when inputs violate a documented precondition (bad arity, dimension
// mismatch, out-of-range parameter).  Numerical degeneracies use
// std::domain_error instead.
class invalid_input : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw invalid_input(msg);
}

}  // namespace sphere_energy
