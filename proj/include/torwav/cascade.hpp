#ifndef TORWAV_CASCADE_HPP
#define TORWAV_CASCADE_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "torwav/torusfn.hpp"

namespace torwav {

/// Truncated infinite product for the Fourier transform of the scaling
/// function: Phi_N(x) = prod_{k=1..N} q^{-1} m0(B^{-k} x), B = A^T. The
/// backward iterates B^{-k} x are computed by one exact adjugate product and
/// one division per step.
class ScalingTransform {
 public:
  ScalingTransform(TorusFunction m0, DilationMatrix A, int depth);

  const DilationMatrix& dilation() const { return A_; }
  int depth() const { return depth_; }

  cd evaluate(std::span<const double> x) const;

 private:
  TorusFunction m0_;
  DilationMatrix A_;
  int depth_;
};

cd scaling_fourier(const TorusFunction& m0, const DilationMatrix& A, std::span<const double> x,
                   int depth);

/// psi_i(x)^ = q^{-1} m_i(B^{-1} x) Phi(B^{-1} x).
cd wavelet_fourier(const TorusFunction& m_i, const ScalingTransform& scaling,
                   std::span<const double> x);

/// Axis-aligned sample box in R^n; zero-width axes collapse to one sample.
struct SampleBox {
  std::vector<double> lo, hi;
  std::vector<int> res;  // samples per axis (>= 1), endpoints included
};

/// CSV rows "x1,...,xn,re,im" in lexicographic grid order.
void sample_export(const ScalingTransform& transform, const SampleBox& box, std::ostream& out);

/// Same grid with extra column pairs for each wavelet transform.
void sample_export_with_wavelets(const ScalingTransform& transform,
                                 const std::vector<TorusFunction>& wavelets, const SampleBox& box,
                                 std::ostream& out);

/// |Phi_N - Phi_2N| sup over `points`, one row per doubling step; the
/// convergence table the CLI prints alongside exports.
std::vector<double> convergence_report(const TorusFunction& m0, const DilationMatrix& A,
                                       const std::vector<std::vector<double>>& points, int depth,
                                       int doublings);

}  // namespace torwav

#endif  // TORWAV_CASCADE_HPP
