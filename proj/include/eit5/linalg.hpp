#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace eit5 {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

// Small dense complex matrix, row-major.  The systems in this library are
// 2x2 .. 25x25, so a direct solver with partial pivoting is both exact enough
// and faster than any iterative machinery.
class CMat {
  public:
    CMat() = default;
    explicit CMat(std::size_t n) : n_(n), a_(n * n, cplx(0.0, 0.0)) {}

    static CMat identity(std::size_t n) {
        CMat m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t size() const { return n_; }
    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  private:
    std::size_t n_ = 0;
    std::vector<cplx> a_;
};

inline CMat operator*(const CMat& x, const CMat& y) {
    const std::size_t n = x.size();
    if (y.size() != n) throw std::invalid_argument("CMat multiply: size mismatch");
    CMat out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const cplx xik = x(i, k);
            if (xik == cplx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += xik * y(k, j);
        }
    }
    return out;
}

inline cvec operator*(const CMat& m, const cvec& v) {
    const std::size_t n = m.size();
    if (v.size() != n) throw std::invalid_argument("CMat apply: size mismatch");
    cvec out(n, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        cplx s(0.0, 0.0);
        for (std::size_t j = 0; j < n; ++j) s += m(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

inline CMat operator+(const CMat& x, const CMat& y) {
    const std::size_t n = x.size();
    CMat out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = x(i, j) + y(i, j);
    return out;
}

inline CMat operator*(cplx s, const CMat& x) {
    const std::size_t n = x.size();
    CMat out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = s * x(i, j);
    return out;
}

inline double max_abs(const cvec& v) {
    double m = 0.0;
    for (const cplx& z : v) m = std::max(m, std::abs(z));
    return m;
}

inline double max_abs(const CMat& m) {
    double out = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) out = std::max(out, std::abs(m(i, j)));
    return out;
}

// Solves A x = b by Gaussian elimination with partial pivoting.  Destroys
// local copies only.  Throws when the pivot underflows: the caller decides
// whether that means a degenerate lossless configuration or a bug.
inline cvec solve_linear(CMat a, cvec b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw std::invalid_argument("solve_linear: size mismatch");

    // scale reference for the singularity test
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
    if (scale == 0.0) throw std::runtime_error("Matrix is singular to working precision");

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::abs(a(r, col));
            if (v > best) { best = v; piv = r; }
        }
        if (best <= 1e-14 * scale) {
            throw std::runtime_error("Matrix is singular to working precision");
        }
        if (piv != col) {
            for (std::size_t j = col; j < n; ++j) std::swap(a(col, j), a(piv, j));
            std::swap(b[col], b[piv]);
        }
        const cplx inv_pivot = 1.0 / a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const cplx f = a(r, col) * inv_pivot;
            if (f == cplx(0.0, 0.0)) continue;
            a(r, col) = 0.0;
            for (std::size_t j = col + 1; j < n; ++j) a(r, j) -= f * a(col, j);
            b[r] -= f * b[col];
        }
    }
    cvec x(n);
    for (std::size_t i = n; i-- > 0;) {
        cplx s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return x;
}

}  // namespace eit5
