#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chatelet/exact.hpp"

using namespace chatelet;
using namespace chatelet::exact;

namespace {

IntMatrix random_matrix(Rng& rng, int r, int c, long lo, long hi) {
    IntMatrix m(r, c);
    for (int i = 0; i < r; i++)
        for (int j = 0; j < c; j++) m.at(i, j) = rng.uniform(lo, hi);
    return m;
}

IntMatrix random_unimodular(Rng& rng, int n, int shears) {
    IntMatrix m = IntMatrix::identity(n);
    for (int k = 0; k < shears; k++) {
        int i = int(rng.uniform(0, n - 1)), j = int(rng.uniform(0, n - 1));
        if (i == j) continue;
        long q = rng.uniform(-3, 3);
        for (int c = 0; c < n; c++) m.at(i, c) += q * m.at(j, c);
    }
    return m;
}

void check_snf(const IntMatrix& M) {
    SnfResult s = smith_normal_form(M);
    CHECK(s.U * M * s.V == s.S);
    CHECK(is_unimodular(s.U));
    CHECK(is_unimodular(s.V));
    for (int i = 0; i < std::min(s.S.rows, s.S.cols); i++)
        for (int j = 0; j < std::min(s.S.rows, s.S.cols); j++)
            if (i != j) CHECK(s.S.at(i, j) == 0);
    BigInt prev = 0;
    for (int i = 0; i < std::min(s.S.rows, s.S.cols); i++) {
        const BigInt& d = s.S.at(i, i);
        CHECK(sgn(d) >= 0);
        if (sgn(prev) != 0) CHECK((sgn(d) == 0 || d % prev == 0));
        if (sgn(d) == 0) CHECK(sgn(prev) >= 0);
        prev = d;
    }
}

std::vector<BigInt> bvec(std::vector<long> v) {
    std::vector<BigInt> r;
    for (long x : v) r.push_back(BigInt(x));
    return r;
}

}  // namespace

TEST_CASE("snf identity and zero") {
    IntMatrix I3 = IntMatrix::identity(3);
    SnfResult s = smith_normal_form(I3);
    CHECK(s.S == I3);
    CHECK(s.U * I3 * s.V == s.S);

    IntMatrix Z(2, 3);
    SnfResult z = smith_normal_form(Z);
    CHECK(z.S.is_zero());
    CHECK(is_unimodular(z.U));
    CHECK(is_unimodular(z.V));
}

TEST_CASE("snf [[2,4],[6,8]] has diagonal (2,4)") {
    // hand oracle: gcd of entries = 2, |det| = 16-24 = -8, so d1=2, d1*d2=8
    IntMatrix M = IntMatrix::from_rows({{2, 4}, {6, 8}});
    SnfResult s = smith_normal_form(M);
    CHECK(s.S.at(0, 0) == 2);
    CHECK(s.S.at(1, 1) == 4);
    check_snf(M);
}

TEST_CASE("snf random matrices: UMV=S, divisibility, unimodular transforms") {
    Rng rng(12345);
    for (int iter = 0; iter < 30; iter++) {
        int r = int(rng.uniform(1, 6)), c = int(rng.uniform(1, 6));
        check_snf(random_matrix(rng, r, c, -9, 9));
    }
}

TEST_CASE("snf invariant under unimodular pre/post multiplication") {
    Rng rng(777);
    for (int iter = 0; iter < 10; iter++) {
        IntMatrix M = random_matrix(rng, 4, 5, -7, 7);
        IntMatrix P = random_unimodular(rng, 4, 12), Q = random_unimodular(rng, 5, 12);
        SnfResult s1 = smith_normal_form(M);
        SnfResult s2 = smith_normal_form(P * M * Q);
        CHECK(s1.S == s2.S);
    }
}

TEST_CASE("solve identity") {
    IntMatrix I2 = IntMatrix::identity(2);
    auto sol = solve_linear_over_Z(I2, bvec({5, -3}));
    REQUIRE(sol.has_value());
    CHECK(sol->x == bvec({5, -3}));
    CHECK(sol->kernel.empty());
}

TEST_CASE("solve parity obstruction") {
    IntMatrix A = IntMatrix::from_rows({{2}});
    CHECK(!solve_linear_over_Z(A, bvec({1})).has_value());
}

TEST_CASE("solve with kernel") {
    // brute-force oracle over |x_i| <= 2 confirms (2,0) is a solution and the
    // kernel is generated by (1,-1)
    IntMatrix A = IntMatrix::from_rows({{1, 1}, {1, 1}});
    auto sol = solve_linear_over_Z(A, bvec({2, 2}));
    REQUIRE(sol.has_value());
    CHECK(A.apply(sol->x) == bvec({2, 2}));
    REQUIRE(sol->kernel.size() == 1);
    auto& k = sol->kernel[0];
    CHECK(((k == bvec({1, -1})) || (k == bvec({-1, 1}))));
}

TEST_CASE("solve random consistency") {
    Rng rng(99);
    for (int iter = 0; iter < 25; iter++) {
        int r = int(rng.uniform(1, 5)), c = int(rng.uniform(1, 5));
        IntMatrix A = random_matrix(rng, r, c, -5, 5);
        std::vector<BigInt> x0;
        for (int j = 0; j < c; j++) x0.push_back(BigInt(rng.uniform(-4, 4)));
        auto b = A.apply(x0);
        auto sol = solve_linear_over_Z(A, b);
        REQUIRE(sol.has_value());
        CHECK(A.apply(sol->x) == b);
        for (auto& k : sol->kernel) {
            auto z = A.apply(k);
            for (auto& v : z) CHECK(v == 0);
        }
    }
}

TEST_CASE("kernel basis spans the kernel") {
    IntMatrix A = IntMatrix::from_rows({{1, 2, 3}});
    auto ker = kernel_basis(A);
    CHECK(ker.size() == 2);
    for (auto& k : ker) CHECK(A.apply(k)[0] == 0);
}

TEST_CASE("rank_mod_p agrees with exact rank on random matrices") {
    Rng rng(4242);
    for (int iter = 0; iter < 15; iter++) {
        IntMatrix A = random_matrix(rng, 4, 6, -6, 6);
        SnfVResult s = snf_with_v(A);
        CHECK(rank_mod_p(A, 2147483647ULL) == s.rank);
    }
}

TEST_CASE("poly basics") {
    QPoly f = parse_poly("t^2-1"), g = parse_poly("t-1");
    CHECK(poly_gcd(f, g) == g);
    CHECK(parse_poly("t^4-22").eval(BigRat(0)) == BigRat(-22));
    CHECK(poly_to_string(parse_poly("t^4+t^3+t^2+t+1")) == "t^4+t^3+t^2+t+1");
}

TEST_CASE("poly divrem reconstructs") {
    Rng rng(31337);
    for (int iter = 0; iter < 20; iter++) {
        std::vector<BigRat> fc, gc;
        int df = int(rng.uniform(0, 6)), dg = int(rng.uniform(0, 4));
        for (int i = 0; i <= df; i++) fc.push_back(BigRat(rng.uniform(-5, 5)));
        for (int i = 0; i <= dg; i++) gc.push_back(BigRat(rng.uniform(-5, 5)));
        QPoly f(fc), g(gc);
        if (g.is_zero()) continue;
        QPoly q, r;
        QPoly::divrem(f, g, q, r);
        CHECK(q * g + r == f);
        CHECK(r.degree() < g.degree());
    }
}

TEST_CASE("resultant of t^2-2 and t^2-3 is 1") {
    // oracle: product of root differences (sqrt2-sqrt3)(sqrt2+sqrt3)(-sqrt2-sqrt3)(-sqrt2+sqrt3)
    // = (2-3)^2 = 1
    CHECK(poly_resultant(parse_poly("t^2-2"), parse_poly("t^2-3")) == BigRat(1));
}

TEST_CASE("discriminant examples") {
    CHECK(poly_discriminant(parse_poly("t^4-t-1")) == BigRat(-283));
    CHECK(same_square_class(poly_discriminant(parse_poly("t^4-22")), BigRat(-22)));
}

TEST_CASE("sturm real root counts") {
    CHECK(count_real_roots(parse_poly("t^2-2")) == 2);
    CHECK(count_real_roots(parse_poly("t^2+1")) == 0);
    CHECK(count_real_roots(parse_poly("t^4+88")) == 0);
    CHECK(count_real_roots(parse_poly("t^3-t")) == 3);
}

TEST_CASE("square classes and factoring") {
    CHECK(is_square(BigInt(49)));
    CHECK(!is_square(BigInt(-4)));
    CHECK(same_square_class(BigRat(8), BigRat(2)));
    CHECK(!same_square_class(BigRat(-1), BigRat(22)));
    CHECK(squarefree_part(BigRat(-88)) == BigInt(-22));
    auto f = factor_integer(BigInt(720));
    BigInt prod = 1;
    for (auto& [p, e] : f)
        for (int i = 0; i < e; i++) prod *= p;
    CHECK(prod == 720);
}
