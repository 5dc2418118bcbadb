#include "chatelet/exact.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace chatelet {

BigInt fdiv(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

BigInt rdiv(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (sgn(r) != 0) {
        BigInt two_r = r * 2;
        if (mpz_cmpabs(two_r.get_mpz_t(), b.get_mpz_t()) > 0) q += (sgn(r) == sgn(b)) ? 1 : -1;
    }
    return q;
}

bool is_square(const BigInt& n) {
    if (sgn(n) < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

bool is_square(const BigRat& q) {
    return is_square(q.get_num()) && is_square(q.get_den());
}

bool same_square_class(const BigRat& x, const BigRat& y) {
    if (sgn(x) == 0 || sgn(y) == 0) throw std::domain_error("square class of zero");
    return is_square(BigRat(x / y));
}

BigInt squarefree_part(const BigRat& q) {
    if (sgn(q) == 0) throw std::domain_error("squarefree part of zero");
    BigInt n = q.get_num() * q.get_den();
    BigInt out = sgn(n) < 0 ? BigInt(-1) : BigInt(1);
    n = abs(n);
    for (auto& [p, e] : factor_integer(n))
        if (e % 2) out *= p;
    return out;
}

BigInt pow_mod(const BigInt& base, const BigInt& exp, const BigInt& mod) {
    BigInt r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

BigInt invert_mod(const BigInt& a, const BigInt& mod) {
    BigInt r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t()))
        throw std::domain_error("not invertible mod " + mod.get_str());
    return r;
}

std::vector<std::pair<BigInt, int>> factor_integer(BigInt n) {
    std::vector<std::pair<BigInt, int>> out;
    if (sgn(n) < 0) n = -n;
    if (n <= 1) return out;
    for (BigInt p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; e++; }
            out.push_back({p, e});
        }
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

bool is_prime(const BigInt& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

namespace exact {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; i++) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rr) {
    IntMatrix m(int(rr.size()), rr.empty() ? 0 : int(rr[0].size()));
    for (int i = 0; i < m.rows; i++) {
        if (int(rr[i].size()) != m.cols) throw std::invalid_argument("ragged rows");
        for (int j = 0; j < m.cols; j++) m.at(i, j) = rr[i][j];
    }
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols != o.rows) throw std::invalid_argument("matrix shape mismatch");
    IntMatrix r(rows, o.cols);
    for (int i = 0; i < rows; i++)
        for (int k = 0; k < cols; k++) {
            const BigInt& x = at(i, k);
            if (sgn(x) == 0) continue;
            for (int j = 0; j < o.cols; j++) r.at(i, j) += x * o.at(k, j);
        }
    return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    if (rows != o.rows || cols != o.cols) throw std::invalid_argument("matrix shape mismatch");
    IntMatrix r = *this;
    for (size_t i = 0; i < a.size(); i++) r.a[i] += o.a[i];
    return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
    if (rows != o.rows || cols != o.cols) throw std::invalid_argument("matrix shape mismatch");
    IntMatrix r = *this;
    for (size_t i = 0; i < a.size(); i++) r.a[i] -= o.a[i];
    return r;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix r(cols, rows);
    for (int i = 0; i < rows; i++)
        for (int j = 0; j < cols; j++) r.at(j, i) = at(i, j);
    return r;
}

bool IntMatrix::is_zero() const {
    for (auto& x : a)
        if (sgn(x) != 0) return false;
    return true;
}

std::vector<BigInt> IntMatrix::apply(const std::vector<BigInt>& v) const {
    if (int(v.size()) != cols) throw std::invalid_argument("vector size mismatch");
    std::vector<BigInt> r(rows);
    for (int i = 0; i < rows; i++)
        for (int j = 0; j < cols; j++)
            if (sgn(at(i, j)) != 0) r[i] += at(i, j) * v[j];
    return r;
}

IntMatrix IntMatrix::col(int j) const {
    IntMatrix r(rows, 1);
    for (int i = 0; i < rows; i++) r.at(i, 0) = at(i, j);
    return r;
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows; i++) {
        os << (i ? "\n[" : "[");
        for (int j = 0; j < cols; j++) os << (j ? " " : "") << at(i, j).get_str();
        os << "]";
    }
    return os.str();
}

IntMatrix hstack(const IntMatrix& A, const IntMatrix& B) {
    if (A.rows != B.rows) throw std::invalid_argument("hstack row mismatch");
    IntMatrix r(A.rows, A.cols + B.cols);
    for (int i = 0; i < A.rows; i++) {
        for (int j = 0; j < A.cols; j++) r.at(i, j) = A.at(i, j);
        for (int j = 0; j < B.cols; j++) r.at(i, A.cols + j) = B.at(i, j);
    }
    return r;
}

IntMatrix vstack(const IntMatrix& A, const IntMatrix& B) {
    if (A.cols != B.cols) throw std::invalid_argument("vstack col mismatch");
    IntMatrix r(A.rows + B.rows, A.cols);
    for (int i = 0; i < A.rows; i++)
        for (int j = 0; j < A.cols; j++) r.at(i, j) = A.at(i, j);
    for (int i = 0; i < B.rows; i++)
        for (int j = 0; j < B.cols; j++) r.at(A.rows + i, j) = B.at(i, j);
    return r;
}

IntMatrix mat_pow(const IntMatrix& M, long e) {
    IntMatrix r = IntMatrix::identity(M.rows), b = M;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

BigInt det(const IntMatrix& M) {
    if (M.rows != M.cols) throw std::invalid_argument("det of non-square");
    int n = M.rows;
    if (n == 0) return 1;
    IntMatrix W = M;
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; k++) {
        if (sgn(W.at(k, k)) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; i++)
                if (sgn(W.at(i, k)) != 0) { piv = i; break; }
            if (piv < 0) return 0;
            for (int j = 0; j < n; j++) std::swap(W.at(k, j), W.at(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; i++)
            for (int j = k + 1; j < n; j++) {
                W.at(i, j) = W.at(k, k) * W.at(i, j) - W.at(i, k) * W.at(k, j);
                W.at(i, j) /= prev;  // exact by Bareiss
            }
        prev = W.at(k, k);
    }
    return sign > 0 ? W.at(n - 1, n - 1) : -W.at(n - 1, n - 1);
}

bool is_unimodular(const IntMatrix& M) {
    if (M.rows != M.cols) return false;
    BigInt d = det(M);
    return d == 1 || d == -1;
}

namespace {

// Shared Smith elimination. Row operations optionally tracked on U (and its
// inverse applied to an augmented block); column operations tracked on V.
struct SnfWork {
    IntMatrix W;
    IntMatrix *U = nullptr, *V = nullptr, *Aug = nullptr;

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < W.cols; c++) std::swap(W.at(i, c), W.at(j, c));
        if (U) for (int c = 0; c < U->cols; c++) std::swap(U->at(i, c), U->at(j, c));
        if (Aug) for (int c = 0; c < Aug->cols; c++) std::swap(Aug->at(i, c), Aug->at(j, c));
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < W.rows; r++) std::swap(W.at(r, i), W.at(r, j));
        if (V) for (int r = 0; r < V->rows; r++) std::swap(V->at(r, i), V->at(r, j));
    }
    void addmul_row(int dst, int src, const BigInt& q) {  // row dst -= q*row src
        if (sgn(q) == 0) return;
        for (int c = 0; c < W.cols; c++) W.at(dst, c) -= q * W.at(src, c);
        if (U) for (int c = 0; c < U->cols; c++) U->at(dst, c) -= q * U->at(src, c);
        if (Aug) for (int c = 0; c < Aug->cols; c++) Aug->at(dst, c) -= q * Aug->at(src, c);
    }
    void addmul_col(int dst, int src, const BigInt& q) {  // col dst -= q*col src
        if (sgn(q) == 0) return;
        for (int r = 0; r < W.rows; r++) W.at(r, dst) -= q * W.at(r, src);
        if (V) for (int r = 0; r < V->rows; r++) V->at(r, dst) -= q * V->at(r, src);
    }
    void negate_row(int i) {
        for (int c = 0; c < W.cols; c++) W.at(i, c) = -W.at(i, c);
        if (U) for (int c = 0; c < U->cols; c++) U->at(i, c) = -U->at(i, c);
        if (Aug) for (int c = 0; c < Aug->cols; c++) Aug->at(i, c) = -Aug->at(i, c);
    }

    int run() {  // returns rank; diagonalizes W with divisibility chain
        int m = W.rows, n = W.cols;
        int t = 0;
        while (t < m && t < n) {
            // minimal-absolute-value pivot in the remaining block
            int pi = -1, pj = -1;
            for (int i = t; i < m; i++)
                for (int j = t; j < n; j++) {
                    if (sgn(W.at(i, j)) == 0) continue;
                    if (pi < 0 || mpz_cmpabs(W.at(i, j).get_mpz_t(), W.at(pi, pj).get_mpz_t()) < 0) { pi = i; pj = j; }
                }
            if (pi < 0) break;
            swap_rows(t, pi);
            swap_cols(t, pj);
            for (;;) {
                bool clean = true;
                for (int i = t + 1; i < m; i++) {
                    if (sgn(W.at(i, t)) == 0) continue;
                    BigInt q = rdiv(W.at(i, t), W.at(t, t));
                    addmul_row(i, t, q);
                    if (sgn(W.at(i, t)) != 0) {  // remainder smaller than pivot
                        swap_rows(t, i);
                        clean = false;
                    }
                }
                for (int j = t + 1; j < n; j++) {
                    if (sgn(W.at(t, j)) == 0) continue;
                    BigInt q = rdiv(W.at(t, j), W.at(t, t));
                    addmul_col(j, t, q);
                    if (sgn(W.at(t, j)) != 0) {
                        swap_cols(t, j);
                        clean = false;
                    }
                }
                if (!clean) continue;
                // pivot must divide every remaining entry
                bool fixed = false;
                for (int i = t + 1; i < m && !fixed; i++)
                    for (int j = t + 1; j < n && !fixed; j++)
                        if (sgn(W.at(i, j) % W.at(t, t)) != 0) {
                            addmul_row(t, i, BigInt(-1));  // row t += row i
                            fixed = true;
                        }
                if (!fixed) break;
            }
            if (sgn(W.at(t, t)) < 0) negate_row(t);
            t++;
        }
        return t;
    }
};

}  // namespace

SnfResult smith_normal_form(const IntMatrix& M) {
    SnfResult res;
    res.U = IntMatrix::identity(M.rows);
    res.V = IntMatrix::identity(M.cols);
    SnfWork w;
    w.W = M;
    w.U = &res.U;
    w.V = &res.V;
    w.run();
    res.S = w.W;
    return res;
}

SnfVResult snf_with_v(const IntMatrix& M, const IntMatrix* aug) {
    SnfVResult res;
    res.V = IntMatrix::identity(M.cols);
    SnfWork w;
    w.W = M;
    w.V = &res.V;
    IntMatrix augcopy;
    if (aug) {
        augcopy = *aug;
        w.Aug = &augcopy;
    }
    res.rank = w.run();
    for (int t = 0; t < res.rank; t++) res.diag.push_back(w.W.at(t, t));
    res.Uaug = augcopy;
    return res;
}

std::optional<std::vector<std::vector<BigInt>>> solve_columns_over_Z(const IntMatrix& A, const IntMatrix& B) {
    if (B.rows != A.rows) throw std::invalid_argument("solve: rhs dimension mismatch");
    SnfVResult s = snf_with_v(A, &B);
    // now S y = (U B) col-wise, x = V y
    std::vector<std::vector<BigInt>> out;
    for (int c = 0; c < B.cols; c++) {
        std::vector<BigInt> y(A.cols);
        for (int i = 0; i < A.rows; i++) {
            const BigInt& rhs = s.Uaug.at(i, c);
            if (i < s.rank) {
                if (sgn(rhs % s.diag[i]) != 0) return std::nullopt;
                y[i] = rhs / s.diag[i];
            } else if (sgn(rhs) != 0) {
                return std::nullopt;
            }
        }
        out.push_back(s.V.apply(y));
    }
    return out;
}

std::optional<LinearSolution> solve_linear_over_Z(const IntMatrix& A, const std::vector<BigInt>& b) {
    if (int(b.size()) != A.rows) throw std::invalid_argument("solve: rhs dimension mismatch");
    IntMatrix B(A.rows, 1);
    for (int i = 0; i < A.rows; i++) B.at(i, 0) = b[i];
    SnfVResult s = snf_with_v(A, &B);
    LinearSolution sol;
    std::vector<BigInt> y(A.cols);
    for (int i = 0; i < A.rows; i++) {
        const BigInt& rhs = s.Uaug.at(i, 0);
        if (i < s.rank) {
            if (sgn(rhs % s.diag[i]) != 0) return std::nullopt;
            y[i] = rhs / s.diag[i];
        } else if (sgn(rhs) != 0) {
            return std::nullopt;
        }
    }
    sol.x = s.V.apply(y);
    for (int j = s.rank; j < A.cols; j++) {
        std::vector<BigInt> k(A.cols);
        for (int i = 0; i < A.cols; i++) k[i] = s.V.at(i, j);
        sol.kernel.push_back(std::move(k));
    }
    return sol;
}

std::vector<std::vector<BigInt>> kernel_basis(const IntMatrix& A) {
    SnfVResult s = snf_with_v(A);
    std::vector<std::vector<BigInt>> out;
    for (int j = s.rank; j < A.cols; j++) {
        std::vector<BigInt> k(A.cols);
        for (int i = 0; i < A.cols; i++) k[i] = s.V.at(i, j);
        out.push_back(std::move(k));
    }
    return out;
}

bool in_column_span(const IntMatrix& A, const std::vector<BigInt>& v) {
    return solve_linear_over_Z(A, v).has_value();
}

int rank_mod_p(const IntMatrix& A, uint64_t p) {
    int m = A.rows, n = A.cols;
    std::vector<std::vector<uint64_t>> rowsp;
    rowsp.reserve(m);
    BigInt bp = BigInt(static_cast<unsigned long>(p));
    for (int i = 0; i < m; i++) {
        std::vector<uint64_t> r(n);
        for (int j = 0; j < n; j++) {
            BigInt v = A.at(i, j) % bp;
            if (sgn(v) < 0) v += bp;
            r[j] = v.get_ui();
        }
        rowsp.push_back(std::move(r));
    }
    int rank = 0;
    for (int col = 0; col < n && rank < m; col++) {
        int piv = -1;
        for (int i = rank; i < m; i++)
            if (rowsp[i][col]) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(rowsp[rank], rowsp[piv]);
        uint64_t inv = invert_mod(BigInt(static_cast<unsigned long>(rowsp[rank][col])), bp).get_ui();
        for (int i = 0; i < m; i++) {
            if (i == rank || !rowsp[i][col]) continue;
            uint64_t f = (__uint128_t(rowsp[i][col]) * inv) % p;
            for (int j = col; j < n; j++) {
                __uint128_t sub = __uint128_t(f) * rowsp[rank][j] % p;
                rowsp[i][j] = (rowsp[i][j] + p - uint64_t(sub)) % p;
            }
        }
        rank++;
    }
    return rank;
}

}  // namespace exact

// ---------------------------------------------------------------------------
// polynomial parsing / printing / Sturm
// ---------------------------------------------------------------------------

QPoly parse_poly(const std::string& s) {
    std::map<int, BigInt> terms;
    size_t i = 0;
    auto skip = [&] { while (i < s.size() && isspace((unsigned char)s[i])) i++; };
    skip();
    bool first = true;
    while (i < s.size()) {
        int sign = 1;
        skip();
        if (s[i] == '+' || s[i] == '-') {
            if (s[i] == '-') sign = -1;
            i++;
        } else if (!first) {
            throw std::invalid_argument("bad polynomial: missing +/- near '" + s.substr(i) + "'");
        }
        first = false;
        skip();
        std::string digits;
        while (i < s.size() && isdigit((unsigned char)s[i])) digits += s[i++];
        BigInt coef = digits.empty() ? BigInt(1) : BigInt(digits);
        skip();
        if (i < s.size() && s[i] == '*') { i++; skip(); }
        int expo = 0;
        if (i < s.size() && (s[i] == 't' || s[i] == 'x')) {
            i++;
            expo = 1;
            skip();
            if (i < s.size() && s[i] == '^') {
                i++;
                skip();
                std::string e;
                while (i < s.size() && isdigit((unsigned char)s[i])) e += s[i++];
                if (e.empty()) throw std::invalid_argument("bad exponent");
                expo = std::stoi(e);
            }
        } else if (digits.empty()) {
            throw std::invalid_argument("bad polynomial term near '" + s.substr(i) + "'");
        }
        terms[expo] += sign * coef;
        skip();
    }
    if (terms.empty()) return QPoly();
    std::vector<BigRat> c(terms.rbegin()->first + 1, BigRat(0));
    for (auto& [e, v] : terms) c[e] = BigRat(v);
    return QPoly(std::move(c));
}

std::string poly_to_string(const QPoly& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = p.degree(); i >= 0; i--) {
        BigRat c = p.coeff(i);
        if (sgn(c) == 0) continue;
        if (!first) os << (sgn(c) > 0 ? "+" : "-");
        else if (sgn(c) < 0) os << "-";
        first = false;
        BigRat ac = abs(c);
        if (ac != 1 || i == 0) os << ac.get_str();
        if (i > 0) {
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

namespace {
int sign_changes_at_inf(const std::vector<QPoly>& seq, int dir) {
    int changes = 0, last = 0;
    for (auto& f : seq) {
        if (f.is_zero()) continue;
        int s = sgn(f.lead());
        if (dir < 0 && f.degree() % 2 == 1) s = -s;
        if (last != 0 && s != last) changes++;
        last = s;
    }
    return changes;
}
}  // namespace

int count_real_roots(const QPoly& f0) {
    if (f0.degree() <= 0) return 0;
    QPoly f = f0 / poly_gcd(f0, f0.derivative());  // squarefree part
    std::vector<QPoly> seq{f, f.derivative()};
    while (!seq.back().is_zero()) {
        QPoly r = seq[seq.size() - 2] % seq.back();
        seq.push_back(-r);
    }
    seq.pop_back();
    return sign_changes_at_inf(seq, -1) - sign_changes_at_inf(seq, +1);
}

}  // namespace chatelet
