#ifndef TORWAV_LATTICE_HPP
#define TORWAV_LATTICE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "torwav/rational.hpp"

namespace torwav {

/// Square integer matrix, row-major. Desk-scale sizes; all arithmetic in
/// int64 (entries and intermediate minors stay tiny for the matrices the
/// library is pointed at).
struct IntMat {
  int n = 0;
  std::vector<std::int64_t> a;

  IntMat() = default;
  IntMat(int dim, std::int64_t fill = 0) : n(dim), a(static_cast<std::size_t>(dim) * dim, fill) {}

  std::int64_t& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  std::int64_t at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

  static IntMat identity(int dim);
  IntMat transposed() const;
  IntMat operator*(const IntMat& o) const;
  std::vector<std::int64_t> operator*(std::span<const std::int64_t> v) const;
  bool operator==(const IntMat& o) const { return n == o.n && a == o.a; }
};

/// Exact determinant (fraction-free Bareiss elimination).
std::int64_t int_det(const IntMat& m);

/// Exact adjugate: adj(m) * m = det(m) * I.
IntMat int_adjugate(const IntMat& m);

/// M = U * D * V with U, V unimodular and D diagonal, d_i | d_{i+1}, d_i >= 0.
struct SmithNormalForm {
  IntMat U, D, V;
};

SmithNormalForm smith_normal_form(const IntMat& m);

/// Validated integer dilation matrix: nonzero determinant and every
/// eigenvalue modulus > 1 + eps_eig.
class DilationMatrix {
 public:
  static constexpr double kDefaultEigEps = 1e-9;

  /// Throws Singular / NotExpanding.
  static DilationMatrix validate(const IntMat& m, double eps_eig = kDefaultEigEps);

  int dim() const { return entries_.n; }
  int q() const { return q_; }
  std::int64_t det() const { return det_; }
  const IntMat& entries() const { return entries_; }
  const IntMat& transpose() const { return transpose_; }     // B = A^T
  const IntMat& adjugate() const { return adjugate_; }       // adj(A)
  const IntMat& adjugate_t() const { return adjugate_t_; }   // adj(B)

  /// Exact membership k in A Z^n.
  bool in_sublattice(std::span<const std::int64_t> k) const;

 private:
  IntMat entries_, transpose_, adjugate_, adjugate_t_;
  std::int64_t det_ = 0;
  int q_ = 0;
};

/// q coset representatives of Z^n / A Z^n, zero vector first, remaining
/// reps reduced into the fundamental parallelepiped A[0,1)^n and sorted
/// lexicographically.
struct CosetReps {
  std::vector<std::vector<std::int64_t>> reps;
  std::size_t size() const { return reps.size(); }
};

CosetReps coset_representatives(const DilationMatrix& A);

/// The q points w of [0,1)^n with A^T w integral, stored exactly; these are
/// the characters of Z^n trivial on A Z^n. Identity first, then lexicographic.
struct DualGroupF {
  std::vector<RationalVec> elements;
  std::size_t size() const { return elements.size(); }

  /// Index of (elements[i] + elements[j]) mod 1.
  std::size_t sum_index(std::size_t i, std::size_t j) const;
  /// Index of -elements[i] mod 1.
  std::size_t neg_index(std::size_t i) const;
  std::size_t index_of(const RationalVec& w) const;  // throws if absent
};

DualGroupF dual_group(const DilationMatrix& A);

}  // namespace torwav

#endif  // TORWAV_LATTICE_HPP
