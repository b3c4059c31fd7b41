#include "torwav/cascade.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

#include "torwav/errors.hpp"

namespace torwav {

ScalingTransform::ScalingTransform(TorusFunction m0, DilationMatrix A, int depth)
    : m0_(std::move(m0)), A_(std::move(A)), depth_(depth) {
  if (depth_ < 1) fail(Errc::BadDepth, "truncation depth must be >= 1");
  if (!m0_.has_coeffs())
    fail(Errc::NoCoefficientForm, "cascade evaluation needs a coefficient form");
  if (m0_.dim() != A_.dim()) fail(Errc::MismatchedDilation, "filter/dilation rank mismatch");
}

namespace {

// y = B^{-1} x = adj(B) x / det(B); det(B) = det(A).
void backward_step(const DilationMatrix& A, std::vector<double>& x) {
  const IntMat& adj = A.adjugate_t();
  const double det = static_cast<double>(A.det());
  const int n = A.dim();
  std::vector<double> y(x.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += static_cast<double>(adj.at(i, j)) * x[j];
    y[i] = acc / det;
  }
  x = std::move(y);
}

}  // namespace

cd ScalingTransform::evaluate(std::span<const double> x) const {
  return scaling_fourier(m0_, A_, x, depth_);
}

cd scaling_fourier(const TorusFunction& m0, const DilationMatrix& A, std::span<const double> x,
                   int depth) {
  if (depth < 1) fail(Errc::BadDepth, "truncation depth must be >= 1");
  if (!m0.has_coeffs()) fail(Errc::NoCoefficientForm, "cascade evaluation needs coefficients");
  const double qinv = 1.0 / static_cast<double>(A.q());
  std::vector<double> y(x.begin(), x.end());
  cd prod{1.0, 0.0};
  for (int k = 0; k < depth; ++k) {
    backward_step(A, y);
    prod *= qinv * m0.evaluate(y);
  }
  return prod;
}

cd wavelet_fourier(const TorusFunction& m_i, const ScalingTransform& scaling,
                   std::span<const double> x) {
  if (m_i.dim() != scaling.dilation().dim())
    fail(Errc::MismatchedDilation, "wavelet filter rank differs from scaling transform");
  if (!m_i.has_coeffs()) fail(Errc::NoCoefficientForm, "wavelet filter needs coefficients");
  std::vector<double> y(x.begin(), x.end());
  backward_step(scaling.dilation(), y);
  const double qinv = 1.0 / static_cast<double>(scaling.dilation().q());
  return qinv * m_i.evaluate(y) * scaling.evaluate(y);
}

namespace {

struct BoxIter {
  const SampleBox& box;
  std::vector<int> idx;
  bool done = false;

  explicit BoxIter(const SampleBox& b) : box(b), idx(b.lo.size(), 0) {}

  std::vector<double> point() const {
    std::vector<double> x(idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a) {
      const int r = box.res[a];
      x[a] = (r <= 1 || box.hi[a] == box.lo[a])
                 ? box.lo[a]
                 : box.lo[a] + (box.hi[a] - box.lo[a]) * idx[a] / static_cast<double>(r - 1);
    }
    return x;
  }

  void advance() {
    int a = static_cast<int>(idx.size()) - 1;
    for (; a >= 0; --a) {
      const int r = (box.res[a] <= 1 || box.hi[a] == box.lo[a]) ? 1 : box.res[a];
      if (++idx[a] < r) break;
      idx[a] = 0;
    }
    if (a < 0) done = true;
  }
};

void check_box(const SampleBox& box, int dim) {
  if (static_cast<int>(box.lo.size()) != dim || box.hi.size() != box.lo.size() ||
      box.res.size() != box.lo.size())
    fail(Errc::ParseError, "box rank mismatch");
  for (std::size_t a = 0; a < box.res.size(); ++a)
    if (box.res[a] < 1) fail(Errc::ParseError, "resolution must be >= 1");
}

void write_point(std::ostream& out, std::span<const double> x) {
  out << std::setprecision(17);
  for (double v : x) out << v << ',';
}

}  // namespace

void sample_export(const ScalingTransform& transform, const SampleBox& box, std::ostream& out) {
  check_box(box, transform.dilation().dim());
  const int n = transform.dilation().dim();
  for (int a = 0; a < n; ++a) out << 'x' << (a + 1) << ',';
  out << "re,im\n";
  for (BoxIter it(box); !it.done; it.advance()) {
    const auto x = it.point();
    const cd v = transform.evaluate(x);
    write_point(out, x);
    out << std::setprecision(17) << v.real() << ',' << v.imag() << '\n';
  }
  if (!out) fail(Errc::IoFailure, "sample export stream failed");
}

void sample_export_with_wavelets(const ScalingTransform& transform,
                                 const std::vector<TorusFunction>& wavelets, const SampleBox& box,
                                 std::ostream& out) {
  check_box(box, transform.dilation().dim());
  const int n = transform.dilation().dim();
  for (int a = 0; a < n; ++a) out << 'x' << (a + 1) << ',';
  out << "re,im";
  for (std::size_t i = 0; i < wavelets.size(); ++i)
    out << ",psi" << (i + 1) << "_re,psi" << (i + 1) << "_im";
  out << '\n';
  for (BoxIter it(box); !it.done; it.advance()) {
    const auto x = it.point();
    const cd v = transform.evaluate(x);
    write_point(out, x);
    out << std::setprecision(17) << v.real() << ',' << v.imag();
    for (const auto& w : wavelets) {
      const cd p = wavelet_fourier(w, transform, x);
      out << ',' << p.real() << ',' << p.imag();
    }
    out << '\n';
  }
  if (!out) fail(Errc::IoFailure, "sample export stream failed");
}

std::vector<double> convergence_report(const TorusFunction& m0, const DilationMatrix& A,
                                       const std::vector<std::vector<double>>& points, int depth,
                                       int doublings) {
  std::vector<double> sup;
  int N = depth;
  for (int s = 0; s < doublings; ++s) {
    double worst = 0.0;
    for (const auto& x : points)
      worst = std::max(worst, std::abs(scaling_fourier(m0, A, x, N) -
                                       scaling_fourier(m0, A, x, 2 * N)));
    sup.push_back(worst);
    N *= 2;
  }
  return sup;
}

}  // namespace torwav
