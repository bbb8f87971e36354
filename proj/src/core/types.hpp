#pragma once

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace botoc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

enum class ErrorCode {
  InvalidArgument = 1,
  DimensionMismatch = 2,
  NotUnitary = 3,
  NotHermitian = 4,
  Io = 5,
  Parse = 6,
  Numerical = 7,
  Resource = 8,
  Unsupported = 9,
  Internal = 10,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

enum class Factor { A, B };

inline Factor other_factor(Factor f) {
  return f == Factor::A ? Factor::B : Factor::A;
}

// Dimensions of a bipartite space H = H_A (x) H_B.  Basis index convention
// throughout: the joint index is i = a * d_b + b (factor A is the slow index).
struct BipartiteDims {
  int d_a = 1;
  int d_b = 1;

  BipartiteDims() = default;
  BipartiteDims(int a, int b) : d_a(a), d_b(b) { validate(); }

  int d() const { return d_a * d_b; }
  int dim(Factor f) const { return f == Factor::A ? d_a : d_b; }
  int d_min() const { return std::min(d_a, d_b); }
  int d_max() const { return std::max(d_a, d_b); }
  double aspect() const { return double(d_max()) / double(d_min()); }
  Factor smaller() const { return d_a <= d_b ? Factor::A : Factor::B; }

  void validate() const {
    if (d_a < 1 || d_b < 1)
      throw Error(ErrorCode::InvalidArgument,
                  "bipartite dimensions must be positive");
  }
};

}  // namespace botoc
