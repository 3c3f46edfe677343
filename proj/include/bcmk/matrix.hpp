#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "bcmk/bicomplex.hpp"

namespace bcmk {

// Dense complex matrix over either complex backend.
template <class C>
struct CMat {
    int rows = 0;
    int cols = 0;
    std::vector<C> a;

    CMat() = default;
    CMat(int r, int c) : rows(r), cols(c), a(size_t(r) * size_t(c)) {}

    C& at(int i, int j) { return a[size_t(i) * cols + j]; }
    const C& at(int i, int j) const { return a[size_t(i) * cols + j]; }

    static CMat identity(int n) {
        CMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = C(1);
        return m;
    }

    friend CMat operator*(const CMat& x, const CMat& y) {
        CMat r(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int k = 0; k < x.cols; ++k) {
                C v = x.at(i, k);
                for (int j = 0; j < y.cols; ++j) r.at(i, j) += v * y.at(k, j);
            }
        return r;
    }
    friend CMat operator+(const CMat& x, const CMat& y) {
        CMat r = x;
        for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
        return r;
    }
    friend bool operator==(const CMat& x, const CMat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

using CMatD = CMat<std::complex<double>>;
using CMatQ = CMat<CxQ>;

inline double pivot_weight(const std::complex<double>& z) { return std::abs(z); }
inline double pivot_weight(const CxQ& z) {
    return (z.re.is_zero() && z.im.is_zero()) ? 0.0 : 1.0;
}

// Gaussian elimination determinant; exact over CxQ, partial pivot over doubles.
template <class C>
C cmat_det(CMat<C> m) {
    if (m.rows != m.cols) throw std::invalid_argument("determinant of non-square matrix");
    int n = m.rows;
    C det(1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        double best = 0.0;
        for (int r = col; r < n; ++r) {
            double w = pivot_weight(m.at(r, col));
            if (w > best) {
                best = w;
                piv = r;
            }
        }
        if (piv < 0) return C(0);
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
            det = -det;
        }
        C p = m.at(col, col);
        det *= p;
        for (int r = col + 1; r < n; ++r) {
            C f = m.at(r, col) / p;
            for (int j = col; j < n; ++j) m.at(r, j) -= f * m.at(col, j);
        }
    }
    return det;
}

// Row-echelon rank. Exact for CxQ; for doubles prefer cmat_rank_fp.
template <class C>
int cmat_rank_elim(CMat<C> m) {
    int rank = 0;
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int piv = -1;
        double best = 0.0;
        for (int r = rank; r < m.rows; ++r) {
            double w = pivot_weight(m.at(r, col));
            if (w > best) {
                best = w;
                piv = r;
            }
        }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(rank, j));
        C p = m.at(rank, col);
        for (int r = rank + 1; r < m.rows; ++r) {
            C f = m.at(r, col) / p;
            for (int j = col; j < m.cols; ++j) m.at(r, j) -= f * m.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

// Gauss-Jordan inverse; empty when a pivot vanishes outright. Callers that
// need a tolerance decide invertibility via singular values first.
template <class C>
std::optional<CMat<C>> cmat_inverse(CMat<C> m) {
    if (m.rows != m.cols) throw std::invalid_argument("inverse of non-square matrix");
    int n = m.rows;
    CMat<C> inv = CMat<C>::identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        double best = 0.0;
        for (int r = col; r < n; ++r) {
            double w = pivot_weight(m.at(r, col));
            if (w > best) {
                best = w;
                piv = r;
            }
        }
        if (piv < 0) return std::nullopt;
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(m.at(piv, j), m.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        C p = m.at(col, col);
        for (int j = 0; j < n; ++j) {
            m.at(col, j) = m.at(col, j) / p;
            inv.at(col, j) = inv.at(col, j) / p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            C f = m.at(r, col);
            if (pivot_weight(f) == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                m.at(r, j) -= f * m.at(col, j);
                inv.at(r, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

inline CMatD cmat_adjoint(const CMatD& m) {
    CMatD r(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r.at(j, i) = std::conj(m.at(i, j));
    return r;
}

// Singular values via one-sided Jacobi (column orthogonalization), which
// keeps full relative accuracy for the small blocks handled here.
// Descending order.
inline std::vector<double> singular_values(const CMatD& m_in) {
    const CMatD& src = m_in;
    CMatD m = src.rows >= src.cols ? src : cmat_adjoint(src);
    int n = m.cols, rows = m.rows;
    if (n == 0) return {};
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool changed = false;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0;
                std::complex<double> apq{};
                for (int r = 0; r < rows; ++r) {
                    app += std::norm(m.at(r, p));
                    aqq += std::norm(m.at(r, q));
                    apq += std::conj(m.at(r, p)) * m.at(r, q);
                }
                double mag = std::abs(apq);
                if (mag <= 1e-15 * std::sqrt(app * aqq) || mag == 0.0) continue;
                changed = true;
                // phase-align column q, then the real 2x2 Jacobi rotation
                std::complex<double> u = apq / mag;
                double tau = (aqq - app) / (2.0 * mag);
                double t = (tau >= 0 ? 1.0 : -1.0) /
                           (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                for (int r = 0; r < rows; ++r) {
                    std::complex<double> cp = m.at(r, p);
                    std::complex<double> cq = m.at(r, q) * std::conj(u);
                    m.at(r, p) = c * cp - s * cq;
                    m.at(r, q) = s * cp + c * cq;
                }
            }
        if (!changed) break;
    }
    std::vector<double> sv(n);
    for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int r = 0; r < rows; ++r) acc += std::norm(m.at(r, j));
        sv[j] = std::sqrt(acc);
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

inline int cmat_rank_fp(const CMatD& m, double tol) {
    auto sv = singular_values(m);
    if (sv.empty() || sv[0] == 0.0) return 0;
    int r = 0;
    for (double s : sv)
        if (s > tol * sv[0]) ++r;
    return r;
}

// Dense real matrix (used for raw real Jacobians).
struct RMat {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    RMat() = default;
    RMat(int r, int c) : rows(r), cols(c), a(size_t(r) * size_t(c), 0.0) {}
    double& at(int i, int j) { return a[size_t(i) * cols + j]; }
    double at(int i, int j) const { return a[size_t(i) * cols + j]; }
};

inline CMatD to_complex(const RMat& m) {
    CMatD r(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r.at(i, j) = m.at(i, j);
    return r;
}

inline std::vector<double> singular_values(const RMat& m) {
    return singular_values(to_complex(m));
}

struct RankPair {
    int r1 = 0;
    int r2 = 0;
    friend bool operator==(const RankPair&, const RankPair&) = default;
};

// Bicomplex m x n matrix with the idempotent split A = A1 e + A2 edag.
template <class S>
struct BCMatrix {
    using C = Cplx<S>;

    int rows = 0;
    int cols = 0;
    std::vector<Bicomplex<S>> a;

    BCMatrix() = default;
    BCMatrix(int r, int c) : rows(r), cols(c), a(size_t(r) * size_t(c)) {}

    Bicomplex<S>& at(int i, int j) { return a[size_t(i) * cols + j]; }
    const Bicomplex<S>& at(int i, int j) const { return a[size_t(i) * cols + j]; }

    static BCMatrix identity(int n) {
        BCMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = Bicomplex<S>::one();
        return m;
    }

    friend BCMatrix operator*(const BCMatrix& x, const BCMatrix& y) {
        BCMatrix r(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int k = 0; k < x.cols; ++k) {
                const Bicomplex<S>& v = x.at(i, k);
                for (int j = 0; j < y.cols; ++j) r.at(i, j) += v * y.at(k, j);
            }
        return r;
    }
    friend BCMatrix operator+(const BCMatrix& x, const BCMatrix& y) {
        BCMatrix r = x;
        for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
        return r;
    }
    friend bool operator==(const BCMatrix& x, const BCMatrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

using BCMatrixD = BCMatrix<double>;
using BCMatrixQ = BCMatrix<Rational>;

template <class S>
std::pair<CMat<Cplx<S>>, CMat<Cplx<S>>> split(const BCMatrix<S>& m) {
    CMat<Cplx<S>> a1(m.rows, m.cols), a2(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) {
            auto p = to_idempotent(m.at(i, j));
            a1.at(i, j) = p.z1;
            a2.at(i, j) = p.z2;
        }
    return {a1, a2};
}

template <class S>
BCMatrix<S> combine(const CMat<Cplx<S>>& a1, const CMat<Cplx<S>>& a2) {
    BCMatrix<S> m(a1.rows, a1.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            m.at(i, j) = from_idempotent<S>(a1.at(i, j), a2.at(i, j));
    return m;
}

// Block-diagonal complex embedding diag(A1, A2); an algebra homomorphism.
template <class S>
CMat<Cplx<S>> embed(const BCMatrix<S>& m) {
    auto [a1, a2] = split(m);
    CMat<Cplx<S>> r(2 * m.rows, 2 * m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) {
            r.at(i, j) = a1.at(i, j);
            r.at(m.rows + i, m.cols + j) = a2.at(i, j);
        }
    return r;
}

// det(A) = det(A1) e + det(A2) edag
template <class S>
Bicomplex<S> det(const BCMatrix<S>& m) {
    auto [a1, a2] = split(m);
    return from_idempotent<S>(cmat_det(a1), cmat_det(a2));
}

inline RankPair rank_pair(const BCMatrixQ& m, double /*tol*/ = 0.0) {
    auto [a1, a2] = split(m);
    return {cmat_rank_elim(a1), cmat_rank_elim(a2)};
}

// Floating rank through per-block singular values, threshold tol*sigma_max.
inline RankPair rank_pair(const BCMatrixD& m, double tol = 1e-8) {
    auto [a1, a2] = split(m);
    return {cmat_rank_fp(a1, tol), cmat_rank_fp(a2, tol)};
}

// Blockwise inverse; fails exactly when det(A) is a zero divisor or zero,
// i.e. when either complex block is singular.
template <class S>
std::optional<BCMatrix<S>> try_invert(const BCMatrix<S>& m, double tol = 1e-8) {
    if (m.rows != m.cols) throw std::invalid_argument("inverse of non-square matrix");
    RankPair rk = rank_pair(m, tol);
    if (rk.r1 != m.rows || rk.r2 != m.rows) return std::nullopt;
    auto [a1, a2] = split(m);
    auto i1 = cmat_inverse(a1);
    auto i2 = cmat_inverse(a2);
    if (!i1 || !i2) return std::nullopt;
    return combine<S>(*i1, *i2);
}

}  // namespace bcmk
