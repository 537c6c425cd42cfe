#pragma once

#include <string>

#include <Eigen/Dense>

namespace hermitesof {

/// Plant triple (A, B, C) for dx/dt = Ax + Bu, y = Cx.
struct SystemInstance {
  enum class Source { kEmbedded, kFile };

  std::string name;
  Eigen::MatrixXd A;  // n x n
  Eigen::MatrixXd B;  // n x m
  Eigen::MatrixXd C;  // p x n
  Source source = Source::kEmbedded;

  int order() const { return static_cast<int>(A.rows()); }
  int inputs() const { return static_cast<int>(B.cols()); }
  int outputs() const { return static_cast<int>(C.rows()); }
  int num_gains() const { return inputs() * outputs(); }

  /// Throws InputError unless A is n x n, B is n x m, C is p x n with n, m, p >= 1.
  void validate() const;
};

}  // namespace hermitesof
