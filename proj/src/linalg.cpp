#include "cstrength/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cstrength {

bool cholesky_solve(const Mat& s, const std::vector<double>& b, std::vector<double>& x,
                    std::size_t* bad_col) {
    const std::size_t n = s.rows;
    Mat l(n, n);
    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, std::fabs(s(i, i)));
    const double tol = 1e-13 * (max_diag > 0 ? max_diag : 1.0);

    for (std::size_t j = 0; j < n; ++j) {
        double d = s(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (!(d > tol)) {
            if (bad_col) *bad_col = j;
            return false;
        }
        l(j, j) = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double v = s(i, j);
            for (std::size_t k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
            l(i, j) = v / l(j, j);
        }
    }

    // forward then backward substitution
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = b[i];
        for (std::size_t k = 0; k < i; ++k) v -= l(i, k) * y[k];
        y[i] = v / l(i, i);
    }
    x.assign(n, 0.0);
    for (std::size_t ii = n; ii-- > 0;) {
        double v = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k) v -= l(k, ii) * x[k];
        x[ii] = v / l(ii, ii);
    }
    return true;
}

bool lu_solve(const Mat& a, const std::vector<double>& b, std::vector<double>& x) {
    const std::size_t n = a.rows;
    Mat m = a;
    std::vector<double> rhs = b;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(m(r, col)) > std::fabs(m(piv, col))) piv = r;
        if (std::fabs(m(piv, col)) < 1e-300) return false;
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m(piv, c), m(col, c));
            std::swap(rhs[piv], rhs[col]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = m(r, col) / m(col, col);
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) m(r, c) -= f * m(col, c);
            rhs[r] -= f * rhs[col];
        }
    }
    x.assign(n, 0.0);
    for (std::size_t ii = n; ii-- > 0;) {
        double v = rhs[ii];
        for (std::size_t c = ii + 1; c < n; ++c) v -= m(ii, c) * x[c];
        x[ii] = v / m(ii, ii);
    }
    return true;
}

std::vector<double> sym_eigenvalues(const Mat& s) {
    const std::size_t n = s.rows;
    Mat m = s;
    // cyclic Jacobi sweeps; matrices here are at most ~25x25
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += m(p, q) * m(p, q);
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::fabs(m(p, q)) < 1e-300) continue;
                const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = c * mkp - sn * mkq;
                    m(k, q) = sn * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = c * mpk - sn * mqk;
                    m(q, k) = sn * mpk + c * mqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = m(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

double sym_cond(const Mat& s) {
    const std::vector<double> ev = sym_eigenvalues(s);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double v : ev) {
        lo = std::min(lo, std::fabs(v));
        hi = std::max(hi, std::fabs(v));
    }
    if (lo == 0.0) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

}  // namespace cstrength
