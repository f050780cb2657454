#include "qsca/unitary.hpp"

#include "qsca/error.hpp"

#include <algorithm>
#include <cmath>

namespace qsca {

Matrix Matrix::identity(std::size_t dim) {
  Matrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    m(i, i) = 1.0;
  }
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Complex>>& rows) {
  Matrix m(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.size()) {
      throw Error(ErrorKind::Size, "matrix rows must form a square");
    }
    for (std::size_t c = 0; c < rows.size(); ++c) {
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      out(c, r) = std::conj((*this)(r, c));
    }
  }
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::Size, "matrix dimensions differ");
  }
  const std::size_t n = a.dim();
  Matrix out(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex ark = a(r, k);
      if (ark == Complex{}) {
        continue;
      }
      for (std::size_t c = 0; c < n; ++c) {
        out(r, c) += ark * b(k, c);
      }
    }
  }
  return out;
}

double Matrix::max_abs_diff(const Matrix& other) const {
  if (dim_ != other.dim_) {
    throw Error(ErrorKind::Size, "matrix dimensions differ");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
  }
  return worst;
}

Matrix single_qubit_matrix(Gate gate, double angle) {
  using namespace std::complex_literals;
  switch (gate) {
  case Gate::I:
    return Matrix::identity(2);
  case Gate::X:
    return Matrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
  case Gate::SX:
    return Matrix::from_rows({{0.5 * (1.0 + 1i), 0.5 * (1.0 - 1i)},
                              {0.5 * (1.0 - 1i), 0.5 * (1.0 + 1i)}});
  case Gate::RZ:
    return Matrix::from_rows(
        {{std::exp(-0.5i * angle), 0.0}, {0.0, std::exp(0.5i * angle)}});
  default:
    throw Error(ErrorKind::UnsupportedGate,
                std::string("no single-qubit matrix for ") + to_string(gate));
  }
}

namespace {

// Left-multiplies u by the gate acting on qubit q (bit q of the row index).
void apply_1q(Matrix& u, const Matrix& g, int q) {
  const std::size_t dim = u.dim();
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t r0 = 0; r0 < dim; ++r0) {
    if (r0 & bit) {
      continue;
    }
    const std::size_t r1 = r0 | bit;
    for (std::size_t c = 0; c < dim; ++c) {
      const Complex a = u(r0, c);
      const Complex b = u(r1, c);
      u(r0, c) = g(0, 0) * a + g(0, 1) * b;
      u(r1, c) = g(1, 0) * a + g(1, 1) * b;
    }
  }
}

void apply_cx(Matrix& u, int control, int target) {
  const std::size_t dim = u.dim();
  const std::size_t cb = std::size_t{1} << control;
  const std::size_t tb = std::size_t{1} << target;
  for (std::size_t r = 0; r < dim; ++r) {
    if ((r & cb) && !(r & tb)) {
      for (std::size_t c = 0; c < dim; ++c) {
        std::swap(u(r, c), u(r | tb, c));
      }
    }
  }
}

} // namespace

Matrix unitary_of(const Circuit& circuit, int max_qubits) {
  if (circuit.num_qubits > max_qubits) {
    throw Error(ErrorKind::Size, "unitary of " + std::to_string(circuit.num_qubits) +
                                     " qubits exceeds the cap of " +
                                     std::to_string(max_qubits));
  }
  circuit.validate();
  Matrix u = Matrix::identity(std::size_t{1} << circuit.num_qubits);
  for (const auto& op : circuit.ops) {
    switch (op.gate) {
    case Gate::Barrier:
    case Gate::Measure:
    case Gate::I:
      break;
    case Gate::CX:
      apply_cx(u, op.qubits[0], op.qubits[1]);
      break;
    default:
      apply_1q(u, single_qubit_matrix(op.gate, op.angle), op.qubits[0]);
      break;
    }
  }
  return u;
}

double unitarity_error(const Matrix& u) {
  return (u * u.adjoint()).max_abs_diff(Matrix::identity(u.dim()));
}

bool equal_up_to_phase(const Matrix& a, const Matrix& b, double tol) {
  if (a.dim() != b.dim()) {
    return false;
  }
  const std::size_t n = a.dim();
  std::size_t br = 0;
  std::size_t bc = 0;
  double best = -1.0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (const double m = std::abs(a(r, c)); m > best) {
        best = m;
        br = r;
        bc = c;
      }
    }
  }
  if (best <= 0.0) {
    return b.max_abs_diff(a) <= tol;
  }
  const Complex ref = b(br, bc);
  if (std::abs(ref) <= tol) {
    return false;
  }
  // Rotate b so its entry at a's peak has a's phase.
  const Complex rot = (a(br, bc) / std::abs(a(br, bc))) / (ref / std::abs(ref));
  double worst = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      worst = std::max(worst, std::abs(a(r, c) - rot * b(r, c)));
    }
  }
  return worst <= tol;
}

} // namespace qsca
