#pragma once

#include "qsca/circuit.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace qsca {

using Complex = std::complex<double>;

/// Dense row-major square complex matrix.
class Matrix {
public:
  Matrix() = default;
  explicit Matrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  static Matrix identity(std::size_t dim);
  static Matrix from_rows(const std::vector<std::vector<Complex>>& rows);

  [[nodiscard]] std::size_t dim() const { return dim_; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * dim_ + c];
  }

  [[nodiscard]] Matrix adjoint() const;
  friend Matrix operator*(const Matrix& a, const Matrix& b);

  /// max |a_ij - b_ij|
  [[nodiscard]] double max_abs_diff(const Matrix& other) const;

private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

/// 2x2 matrix of a single-qubit basis gate (I, X, SX, RZ(angle)).
Matrix single_qubit_matrix(Gate gate, double angle = 0.0);

/// Circuit unitary with qubit 0 as the least significant index bit (the
/// 'leftmost qubit most significant' convention). Barrier and measure are
/// ignored. Throws Error(Size) when num_qubits exceeds max_qubits.
Matrix unitary_of(const Circuit& circuit, int max_qubits = 10);

/// ||U U^dagger - I||_inf (max entry norm).
double unitarity_error(const Matrix& u);

/// True iff a = e^{i gamma} b; the phase is fixed from a's largest entry.
bool equal_up_to_phase(const Matrix& a, const Matrix& b, double tol = 1e-8);

} // namespace qsca
