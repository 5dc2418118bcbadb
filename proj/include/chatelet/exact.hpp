// Exact arithmetic substrate: arbitrary-precision integers and rationals,
// dense integer matrices with Smith normal form, Diophantine linear solving,
// and dense univariate polynomials over a coefficient field.
#ifndef CHATELET_EXACT_HPP
#define CHATELET_EXACT_HPP

#include <gmpxx.h>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chatelet {

using BigInt = mpz_class;
using BigRat = mpq_class;

inline BigInt to_bigint(long v) { return BigInt(static_cast<long>(v)); }

// floor(a/b) for b != 0
BigInt fdiv(const BigInt& a, const BigInt& b);
// nearest-integer quotient, used to keep elimination entries small
BigInt rdiv(const BigInt& a, const BigInt& b);

bool is_square(const BigInt& n);
bool is_square(const BigRat& q);
// true when x/y is a square of a rational (x, y nonzero)
bool same_square_class(const BigRat& x, const BigRat& y);
// squarefree part of a nonzero rational, as an integer
BigInt squarefree_part(const BigRat& q);

BigInt pow_mod(const BigInt& base, const BigInt& exp, const BigInt& mod);
BigInt invert_mod(const BigInt& a, const BigInt& mod);

// trial-division factorization, adequate for the small inputs in scope
std::vector<std::pair<BigInt, int>> factor_integer(BigInt n);
bool is_prime(const BigInt& n);

namespace exact {

struct IntMatrix {
    int rows = 0, cols = 0;
    std::vector<BigInt> a;  // row-major

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}
    static IntMatrix identity(int n);
    static IntMatrix zero(int r, int c) { return IntMatrix(r, c); }
    static IntMatrix from_rows(const std::vector<std::vector<long>>& rr);

    BigInt& at(int i, int j) { return a[size_t(i) * cols + j]; }
    const BigInt& at(int i, int j) const { return a[size_t(i) * cols + j]; }

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix transpose() const;
    bool operator==(const IntMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
    bool is_zero() const;
    std::vector<BigInt> apply(const std::vector<BigInt>& v) const;  // M*v
    IntMatrix col(int j) const;
    std::string str() const;
};

IntMatrix hstack(const IntMatrix& A, const IntMatrix& B);
IntMatrix vstack(const IntMatrix& A, const IntMatrix& B);
IntMatrix mat_pow(const IntMatrix& M, long e);

// fraction-free determinant (Bareiss)
BigInt det(const IntMatrix& M);
bool is_unimodular(const IntMatrix& M);

struct SnfResult {
    IntMatrix S, U, V;  // U*M*V = S, U and V unimodular, S diagonal d1 | d2 | ...
};
SnfResult smith_normal_form(const IntMatrix& M);

// Cheaper variant tracking only V (column ops) and the row-transformed
// image U*aug of an optional augmented block.
struct SnfVResult {
    std::vector<BigInt> diag;  // nonzero invariant factors d1 | d2 | ... (positive)
    int rank = 0;
    IntMatrix V;        // cols x cols
    IntMatrix Uaug;     // row-transformed augmented block (rows x augcols)
    std::vector<int> diag_row;  // identity rows... row index of pivot t is t after permutation
};
SnfVResult snf_with_v(const IntMatrix& M, const IntMatrix* aug = nullptr);

struct LinearSolution {
    std::vector<BigInt> x;
    std::vector<std::vector<BigInt>> kernel;  // basis of ker(A)
};
// solve A x = b over Z; nullopt when unsolvable
std::optional<LinearSolution> solve_linear_over_Z(const IntMatrix& A, const std::vector<BigInt>& b);
// simultaneous version: solves A X = B column-by-column (all-or-nothing per column)
std::optional<std::vector<std::vector<BigInt>>> solve_columns_over_Z(const IntMatrix& A, const IntMatrix& B);

std::vector<std::vector<BigInt>> kernel_basis(const IntMatrix& A);
// true when v is in the column span of A over Z
bool in_column_span(const IntMatrix& A, const std::vector<BigInt>& v);

int rank_mod_p(const IntMatrix& A, uint64_t p);

}  // namespace exact

// ---------------------------------------------------------------------------
// Dense polynomials, lowest degree first. Coefficients form a field
// (BigRat or a number-field element type with the same interface).
// ---------------------------------------------------------------------------

template <class T>
struct ring_traits {
    static T zero(const T&) { return T(0); }
    static T one(const T&) { return T(1); }
    static bool is_zero(const T& x) { return x == 0; }
};

template <class T>
class Poly {
public:
    std::vector<T> c;  // c[i] is the coefficient of t^i; no trailing zeros

    Poly() = default;
    explicit Poly(std::vector<T> cc) : c(std::move(cc)) { trim(); }
    static Poly zero() { return Poly(); }
    static Poly constant(const T& v) {
        Poly p;
        if (!ring_traits<T>::is_zero(v)) p.c.push_back(v);
        return p;
    }

    void trim() {
        while (!c.empty() && ring_traits<T>::is_zero(c.back())) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return int(c.size()) - 1; }  // -1 for zero
    const T& lead() const { return c.back(); }
    T coeff(int i) const {
        if (i < 0 || i >= int(c.size())) return ring_traits<T>::zero(witness());
        return c[i];
    }
    T witness() const { return c.empty() ? T{} : c[0]; }

    bool operator==(const Poly& o) const { return c == o.c; }

    Poly operator+(const Poly& o) const {
        std::vector<T> r(std::max(c.size(), o.c.size()), ring_traits<T>::zero(wit2(o)));
        for (size_t i = 0; i < c.size(); i++) r[i] = r[i] + c[i];
        for (size_t i = 0; i < o.c.size(); i++) r[i] = r[i] + o.c[i];
        return Poly(std::move(r));
    }
    Poly operator-() const {
        Poly r = *this;
        for (auto& x : r.c) x = ring_traits<T>::zero(witness()) - x;
        return r;
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }
    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly();
        std::vector<T> r(c.size() + o.c.size() - 1, ring_traits<T>::zero(c[0]));
        for (size_t i = 0; i < c.size(); i++)
            for (size_t j = 0; j < o.c.size(); j++) r[i + j] = r[i + j] + c[i] * o.c[j];
        return Poly(std::move(r));
    }
    Poly scaled(const T& s) const {
        Poly r = *this;
        for (auto& x : r.c) x = x * s;
        r.trim();
        return r;
    }

    // f = q*g + r with deg r < deg g; requires invertible lead(g)
    static void divrem(const Poly& f, const Poly& g, Poly& q, Poly& r) {
        if (g.is_zero()) throw std::domain_error("poly division by zero");
        q = Poly();
        r = f;
        T linv = ring_traits<T>::one(g.lead()) / g.lead();
        while (!r.is_zero() && r.degree() >= g.degree()) {
            int d = r.degree() - g.degree();
            T coef = r.lead() * linv;
            std::vector<T> qc(size_t(d) + 1, ring_traits<T>::zero(coef));
            qc[d] = coef;
            Poly term{std::move(qc)};
            q = q + term;
            r = r - term * g;
        }
    }
    Poly operator/(const Poly& g) const {
        Poly q, r;
        divrem(*this, g, q, r);
        return q;
    }
    Poly operator%(const Poly& g) const {
        Poly q, r;
        divrem(*this, g, q, r);
        return r;
    }

    T eval(const T& x) const {
        T acc = ring_traits<T>::zero(x);
        for (int i = degree(); i >= 0; i--) acc = acc * x + c[i];
        return acc;
    }

    Poly derivative() const {
        if (degree() <= 0) return Poly();
        std::vector<T> r(c.size() - 1, ring_traits<T>::zero(c[0]));
        for (size_t i = 1; i < c.size(); i++) r[i - 1] = c[i] * T(long(i));
        return Poly(std::move(r));
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return scaled(ring_traits<T>::one(lead()) / lead());
    }

private:
    T wit2(const Poly& o) const { return c.empty() ? (o.c.empty() ? T{} : o.c[0]) : c[0]; }
};

template <class T>
Poly<T> poly_gcd(Poly<T> f, Poly<T> g) {
    while (!g.is_zero()) {
        Poly<T> r = f % g;
        f = g;
        g = r;
    }
    return f.monic();
}

// resultant via the Euclidean remainder sequence over a field
template <class T>
T poly_resultant(Poly<T> f, Poly<T> g) {
    if (f.is_zero() || g.is_zero()) return T(0);
    T one = ring_traits<T>::one(f.lead());
    T res = one;
    while (g.degree() > 0) {
        Poly<T> r = f % g;
        int df = f.degree(), dg = g.degree(), dr = r.degree();
        T lg = g.lead();
        // res(f,g) = (-1)^(df*dg) lc(g)^(df-dr) res(g,r)
        T sign = ((long(df) * dg) % 2 == 0) ? one : (ring_traits<T>::zero(one) - one);
        T pw = one;
        for (int i = 0; i < df - std::max(dr, 0); i++) pw = pw * lg;
        res = res * sign * pw;
        if (r.is_zero()) return dg == 0 ? res : ring_traits<T>::zero(one);
        f = g;
        g = r;
    }
    // g constant
    T lg = g.lead();
    T pw = one;
    for (int i = 0; i < f.degree(); i++) pw = pw * lg;
    return res * pw;
}

template <class T>
T poly_discriminant(const Poly<T>& f) {
    T r = poly_resultant(f, f.derivative());
    T lc = f.lead();
    T d = r / lc;
    int n = f.degree();
    long s = (long(n) * (n - 1) / 2) % 2;
    return s ? ring_traits<T>::zero(d) - d : d;
}

using QPoly = Poly<BigRat>;

// parse integer-coefficient expressions in t with ^ exponents, e.g. "t^4-22"
QPoly parse_poly(const std::string& s);
std::string poly_to_string(const QPoly& p, const std::string& var = "t");

// number of real roots via Sturm sequences
int count_real_roots(const QPoly& f);

// deterministic RNG used across the project
struct Rng {
    uint64_t s;
    explicit Rng(uint64_t seed) : s(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
    uint64_t next() {
        // splitmix64
        uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    long uniform(long lo, long hi) {  // inclusive
        return lo + long(next() % uint64_t(hi - lo + 1));
    }
};

}  // namespace chatelet

#endif
