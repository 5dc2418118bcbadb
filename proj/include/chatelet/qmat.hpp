// Small dense rational matrices: just enough linear algebra for field
// element inversion, characteristic polynomials and basis changes.
#ifndef CHATELET_QMAT_HPP
#define CHATELET_QMAT_HPP

#include <optional>
#include <vector>

#include "chatelet/exact.hpp"

namespace chatelet {

struct QMat {
    int rows = 0, cols = 0;
    std::vector<BigRat> a;

    QMat() = default;
    QMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}
    static QMat identity(int n) {
        QMat m(n, n);
        for (int i = 0; i < n; i++) m.at(i, i) = 1;
        return m;
    }
    BigRat& at(int i, int j) { return a[size_t(i) * cols + j]; }
    const BigRat& at(int i, int j) const { return a[size_t(i) * cols + j]; }

    QMat operator*(const QMat& o) const {
        QMat r(rows, o.cols);
        for (int i = 0; i < rows; i++)
            for (int k = 0; k < cols; k++) {
                if (sgn(at(i, k)) == 0) continue;
                for (int j = 0; j < o.cols; j++) r.at(i, j) += at(i, k) * o.at(k, j);
            }
        return r;
    }
    std::vector<BigRat> apply(const std::vector<BigRat>& v) const {
        std::vector<BigRat> r(rows);
        for (int i = 0; i < rows; i++)
            for (int j = 0; j < cols; j++)
                if (sgn(at(i, j)) != 0) r[i] += at(i, j) * v[j];
        return r;
    }

    // reduced row echelon in place, returns pivot columns
    std::vector<int> rref() {
        std::vector<int> pivots;
        int r = 0;
        for (int c = 0; c < cols && r < rows; c++) {
            int piv = -1;
            for (int i = r; i < rows; i++)
                if (sgn(at(i, c)) != 0) { piv = i; break; }
            if (piv < 0) continue;
            for (int j = 0; j < cols; j++) std::swap(at(r, j), at(piv, j));
            BigRat inv = BigRat(1) / at(r, c);
            for (int j = 0; j < cols; j++) at(r, j) *= inv;
            for (int i = 0; i < rows; i++) {
                if (i == r || sgn(at(i, c)) == 0) continue;
                BigRat f = at(i, c);
                for (int j = 0; j < cols; j++) at(i, j) -= f * at(r, j);
            }
            pivots.push_back(c);
            r++;
        }
        return pivots;
    }
};

// solve M x = b over Q (M square, invertible); nullopt when singular
inline std::optional<std::vector<BigRat>> qmat_solve(const QMat& M, const std::vector<BigRat>& b) {
    if (M.rows != M.cols || int(b.size()) != M.rows) throw std::invalid_argument("qmat_solve shape");
    QMat W(M.rows, M.cols + 1);
    for (int i = 0; i < M.rows; i++) {
        for (int j = 0; j < M.cols; j++) W.at(i, j) = M.at(i, j);
        W.at(i, M.cols) = b[i];
    }
    auto piv = W.rref();
    if (int(piv.size()) != M.cols || (!piv.empty() && piv.back() == M.cols)) return std::nullopt;
    std::vector<BigRat> x(M.cols);
    for (int i = 0; i < M.cols; i++) x[i] = W.at(i, M.cols);
    return x;
}

inline std::optional<QMat> qmat_inverse(const QMat& M) {
    if (M.rows != M.cols) throw std::invalid_argument("qmat_inverse shape");
    int n = M.rows;
    QMat W(n, 2 * n);
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < n; j++) W.at(i, j) = M.at(i, j);
        W.at(i, n + i) = 1;
    }
    auto piv = W.rref();
    if (int(piv.size()) != n || piv.back() >= n) return std::nullopt;
    QMat R(n, n);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) R.at(i, j) = W.at(i, n + j);
    return R;
}

// characteristic polynomial of a square rational matrix (Faddeev-LeVerrier)
inline Poly<BigRat> qmat_charpoly(const QMat& M) {
    int n = M.rows;
    std::vector<BigRat> coeffs(n + 1);
    coeffs[n] = 1;
    QMat A = M;
    BigRat c(1);
    for (int k = 1; k <= n; k++) {
        BigRat tr(0);
        for (int i = 0; i < n; i++) tr += A.at(i, i);
        c = -tr / BigRat(k);
        coeffs[n - k] = c;
        if (k == n) break;
        for (int i = 0; i < n; i++) A.at(i, i) += c;
        A = M * A;
    }
    return Poly<BigRat>(coeffs);
}

}  // namespace chatelet

#endif
