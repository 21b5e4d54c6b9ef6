#include "entanglib/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace entanglib {

const char* structure_name(Structure s) {
  switch (s) {
    case Structure::general: return "general";
    case Structure::bisymmetric: return "bisymmetric";
    case Structure::biskew: return "biskew";
    case Structure::realsymmetric: return "realsymmetric";
  }
  return "general";
}

SpectralDecomposition jacobi_hermitian(const Mat& m) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("jacobi_hermitian: not square");
  Mat a = (m + m.adjoint()) / 2.0;
  Mat v = Mat::Identity(n, n);
  const double scale = a.norm();
  const double thresh = 1e-13 * (scale > 0 ? scale : 1.0);

  auto off = [&]() {
    double s = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) s += 2.0 * std::norm(a(p, q));
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 60 && off() > thresh; ++sweep) {
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const cplx g = a(p, q);
        const double absg = std::abs(g);
        if (absg <= 1e-300) continue;
        const double alpha = a(p, p).real();
        const double beta = a(q, q).real();
        const double tau = (beta - alpha) / (2.0 * absg);
        double t;
        if (tau >= 0)
          t = -1.0 / (tau + std::sqrt(1.0 + tau * tau));
        else
          t = 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx phase = g / absg;
        const cplx w = s * std::conj(phase);

        // A <- U^H A U, U acting on the (p,q) plane
        for (Eigen::Index k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp + w * akq;
          a(k, q) = -std::conj(w) * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk + std::conj(w) * aqk;
          a(q, k) = -w * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = cplx(a(p, p).real(), 0.0);
        a(q, q) = cplx(a(q, q).real(), 0.0);
        for (Eigen::Index k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp + w * vkq;
          v(k, q) = -std::conj(w) * vkp + c * vkq;
        }
      }
  }

  SpectralDecomposition out;
  out.eigenvalues = RVec(n);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return a(i, i).real() > a(j, j).real();
  });
  out.eigenvectors = Mat(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[static_cast<std::size_t>(k)],
                           order[static_cast<std::size_t>(k)]).real();
    out.eigenvectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

namespace {

// Swap positions u and w of the index tuple of a cubical order-2d layout.
bool invariant_under_transposition(const Mat& m, const Shape& shape, int u, int w,
                                   int sign, double tol) {
  const int d = shape.order();
  const std::int64_t nsz = shape.size();
  for (std::int64_t r = 0; r < nsz; ++r) {
    auto ri = shape.unflat(r);
    for (std::int64_t c = 0; c < nsz; ++c) {
      auto ci = shape.unflat(c);
      std::vector<std::int64_t> full(ri);
      full.insert(full.end(), ci.begin(), ci.end());
      std::swap(full[static_cast<std::size_t>(u)], full[static_cast<std::size_t>(w)]);
      std::vector<std::int64_t> ri2(full.begin(), full.begin() + d);
      std::vector<std::int64_t> ci2(full.begin() + d, full.end());
      const cplx lhs = m(shape.flat(ri2), shape.flat(ci2));
      const cplx rhs = static_cast<double>(sign) * m(r, c);
      if (std::abs(lhs - rhs) > tol) return false;
    }
  }
  return true;
}

bool check_ket_permutation(const Mat& m, const Shape& shape, int sign, double tol) {
  const int d = shape.order();
  if (!shape.cubical()) return false;
  for (int u = 0; u + 1 < d; ++u)
    if (!invariant_under_transposition(m, shape, u, u + 1, sign, tol)) return false;
  return true;
}

bool check_full_2d_symmetry(const Mat& m, const Shape& shape, double tol) {
  const int d = shape.order();
  if (!shape.cubical()) return false;
  for (int u = 0; u + 1 < 2 * d; ++u)
    if (!invariant_under_transposition(m, shape, u, u + 1, 1, tol)) return false;
  return true;
}

}  // namespace

HermitianTensor::HermitianTensor(Shape shape, Mat matrix, Structure structure)
    : shape_(std::move(shape)), matrix_(std::move(matrix)), structure_(structure) {
  if (matrix_.rows() != shape_.size() || matrix_.cols() != shape_.size())
    throw std::invalid_argument("HermitianTensor: matrix size != N(shape)^2");
  const double scale = matrix_.norm();
  if ((matrix_ - matrix_.adjoint()).norm() > 1e-12 * (scale > 0 ? scale : 1.0))
    throw std::invalid_argument("HermitianTensor: matrix is not self-adjoint");
  const double tol = 1e-10 * (scale > 0 ? scale : 1.0);
  switch (structure_) {
    case Structure::general:
      break;
    case Structure::bisymmetric:
      if (!check_ket_permutation(matrix_, shape_, 1, tol))
        throw std::invalid_argument("HermitianTensor: bisymmetric tag fails t_{w(i),j}=t_{i,j}");
      break;
    case Structure::biskew:
      if (!check_ket_permutation(matrix_, shape_, -1, tol))
        throw std::invalid_argument("HermitianTensor: biskew tag fails t_{w(i),j}=sign(w)t_{i,j}");
      break;
    case Structure::realsymmetric:
      for (Eigen::Index r = 0; r < matrix_.rows(); ++r)
        for (Eigen::Index c = 0; c < matrix_.cols(); ++c)
          if (std::abs(matrix_(r, c).imag()) > tol)
            throw std::invalid_argument("HermitianTensor: realsymmetric tag with complex entries");
      if (!check_full_2d_symmetry(matrix_, shape_, tol))
        throw std::invalid_argument("HermitianTensor: realsymmetric tag fails 2d-symmetry");
      break;
  }
}

const SpectralDecomposition& HermitianTensor::spectral_decomposition() const {
  std::call_once(decomp_->once,
                 [&] { decomp_->value = jacobi_hermitian(matrix_); });
  return *decomp_->value;
}

double trace(const HermitianTensor& b) { return b.matrix().trace().real(); }

HermitianTensor partial_trace(const HermitianTensor& b, int mode) {
  const int d = b.order();
  if (mode < 0 || mode >= d) throw std::invalid_argument("partial_trace: bad mode");
  std::vector<std::int64_t> dims;
  for (int k = 0; k < d; ++k)
    if (k != mode) dims.push_back(b.shape().dim(k));
  if (dims.empty()) throw std::invalid_argument("partial_trace: single mode tensor");
  Shape out_shape(dims);
  Mat out = Mat::Zero(out_shape.size(), out_shape.size());
  const std::int64_t nsz = b.shape().size();
  for (std::int64_t r = 0; r < nsz; ++r) {
    auto ri = b.shape().unflat(r);
    for (std::int64_t c = 0; c < nsz; ++c) {
      auto ci = b.shape().unflat(c);
      if (ri[static_cast<std::size_t>(mode)] != ci[static_cast<std::size_t>(mode)])
        continue;
      std::vector<std::int64_t> ro, co;
      for (int k = 0; k < d; ++k)
        if (k != mode) {
          ro.push_back(ri[static_cast<std::size_t>(k)]);
          co.push_back(ci[static_cast<std::size_t>(k)]);
        }
      out(out_shape.flat(ro), out_shape.flat(co)) += b.matrix()(r, c);
    }
  }
  return HermitianTensor(out_shape, std::move(out));
}

HermitianTensor partial_transpose(const HermitianTensor& b, int mode) {
  const int d = b.order();
  if (mode < 0 || mode >= d) throw std::invalid_argument("partial_transpose: bad mode");
  const std::int64_t nsz = b.shape().size();
  Mat out(nsz, nsz);
  for (std::int64_t r = 0; r < nsz; ++r) {
    auto ri = b.shape().unflat(r);
    for (std::int64_t c = 0; c < nsz; ++c) {
      auto ci = b.shape().unflat(c);
      auto ri2 = ri;
      auto ci2 = ci;
      std::swap(ri2[static_cast<std::size_t>(mode)], ci2[static_cast<std::size_t>(mode)]);
      out(b.shape().flat(ri2), b.shape().flat(ci2)) = b.matrix()(r, c);
    }
  }
  return HermitianTensor(b.shape(), std::move(out));
}

bool is_psd(const HermitianTensor& b, double tol) {
  const auto& dec = b.spectral_decomposition();
  return dec.eigenvalues[dec.eigenvalues.size() - 1] >= -tol;
}

DensityTensor::DensityTensor(HermitianTensor base) : base_(std::move(base)) {}

DensityTensor make_density(const HermitianTensor& b) {
  const auto& dec = b.spectral_decomposition();
  const double lmin = dec.eigenvalues[dec.eigenvalues.size() - 1];
  if (lmin < -1e-10) {
    std::ostringstream msg;
    msg << "make_density: not PSD, lambda_min = " << lmin;
    throw std::invalid_argument(msg.str());
  }
  const double tr = trace(b);
  if (std::abs(tr - 1.0) > 1e-10) {
    std::ostringstream msg;
    msg << "make_density: trace = " << tr << " != 1";
    throw std::invalid_argument(msg.str());
  }
  return DensityTensor(b);
}

DensityTensor pure_density(const DenseTensor& x) {
  if (std::abs(x.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("pure_density: state is not normalized");
  Mat m = x.entries() * x.entries().adjoint();
  HermitianTensor h(x.shape(), m);
  Structure s = classify_structure(h);
  return DensityTensor(HermitianTensor(x.shape(), std::move(m), s));
}

HermitianTensor identity_on_sym(int n, int d) {
  std::vector<std::int64_t> dims(static_cast<std::size_t>(d),
                                 static_cast<std::int64_t>(n));
  Shape shape(dims);
  const std::int64_t nsz = shape.size();
  Mat out = Mat::Zero(nsz, nsz);
  auto exponent = [&](const std::vector<std::int64_t>& idx) {
    MonomialIndex j(static_cast<std::size_t>(n), 0);
    for (auto i : idx) j[static_cast<std::size_t>(i)]++;
    return j;
  };
  for (std::int64_t r = 0; r < nsz; ++r) {
    auto jr = exponent(shape.unflat(r));
    for (std::int64_t c = 0; c < nsz; ++c) {
      if (exponent(shape.unflat(c)) == jr)
        out(r, c) = 1.0 / static_cast<double>(multinomial(jr));
    }
  }
  return HermitianTensor(shape, std::move(out), Structure::bisymmetric);
}

Structure classify_structure(const HermitianTensor& b, double tol) {
  const double scale = std::max(1.0, b.matrix().norm());
  const double t = tol * scale;
  if (!b.shape().cubical()) return Structure::general;
  bool real_entries = true;
  for (Eigen::Index r = 0; r < b.matrix().rows() && real_entries; ++r)
    for (Eigen::Index c = 0; c < b.matrix().cols(); ++c)
      if (std::abs(b.matrix()(r, c).imag()) > t) {
        real_entries = false;
        break;
      }
  if (real_entries && check_full_2d_symmetry(b.matrix(), b.shape(), t))
    return Structure::realsymmetric;
  if (check_ket_permutation(b.matrix(), b.shape(), 1, t)) return Structure::bisymmetric;
  if (b.order() >= 2 && check_ket_permutation(b.matrix(), b.shape(), -1, t))
    return Structure::biskew;
  return Structure::general;
}

cplx apply_form(const HermitianTensor& b, const DenseTensor& x) {
  if (x.shape() != b.shape()) throw std::invalid_argument("apply_form: shape mismatch");
  return x.entries().dot(b.matrix() * x.entries());
}

namespace {

std::vector<std::int64_t> representative_index(const MonomialIndex& j) {
  std::vector<std::int64_t> idx;
  for (std::size_t v = 0; v < j.size(); ++v)
    for (int t = 0; t < j[v]; ++t) idx.push_back(static_cast<std::int64_t>(v));
  return idx;
}

}  // namespace

BiSymTensor bisym_coefficients(const HermitianTensor& b) {
  if (b.structure() != Structure::bisymmetric &&
      b.structure() != Structure::realsymmetric)
    throw std::invalid_argument("bisym_coefficients: tensor is not bi-symmetric");
  const int d = b.order();
  const int n = static_cast<int>(b.shape().dim(0));
  auto J = enumerate_J(d, n);
  const auto sz = static_cast<Eigen::Index>(J.size());
  Mat f(sz, sz);
  for (Eigen::Index a = 0; a < sz; ++a) {
    auto ra = b.shape().flat(representative_index(J[static_cast<std::size_t>(a)]));
    for (Eigen::Index c = 0; c < sz; ++c) {
      auto rc = b.shape().flat(representative_index(J[static_cast<std::size_t>(c)]));
      f(a, c) = b.matrix()(ra, rc);
    }
  }
  return BiSymTensor(n, d, std::move(f), true);
}

HermitianTensor bisym_from_coefficients(const BiSymTensor& c) {
  if (!c.hermitian_flag())
    throw std::invalid_argument("bisym_from_coefficients: hermitian_flag required");
  const int n = c.n(), d = c.d();
  std::vector<std::int64_t> dims(static_cast<std::size_t>(d),
                                 static_cast<std::int64_t>(n));
  Shape shape(dims);
  const std::int64_t nsz = shape.size();
  auto exponent = [&](const std::vector<std::int64_t>& idx) {
    MonomialIndex j(static_cast<std::size_t>(n), 0);
    for (auto i : idx) j[static_cast<std::size_t>(i)]++;
    return j;
  };
  SymTensor ranker(n, d);  // reuse its J ordering
  Mat m(nsz, nsz);
  for (std::int64_t r = 0; r < nsz; ++r) {
    int jr = ranker.index_of(exponent(shape.unflat(r)));
    for (std::int64_t cc = 0; cc < nsz; ++cc) {
      int jc = ranker.index_of(exponent(shape.unflat(cc)));
      m(r, cc) = c.coeffs()(jr, jc);
    }
  }
  return HermitianTensor(shape, std::move(m), Structure::bisymmetric);
}

}  // namespace entanglib
