#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "chatelet/numfield.hpp"

using namespace chatelet;
using namespace chatelet::nf;

static SurfaceSpec xm_spec(long m) {
    return SurfaceSpec{BigRat(-1), BigRat(-1), parse_poly("t^4-" + std::to_string(m))};
}

TEST_CASE("X22 splitting field: degree 8, D4, faithful permutation action") {
    SplittingData sd = build_splitting_field(xm_spec(22));
    CHECK(sd.fam == Family::XM);
    REQUIRE(sd.K);
    CHECK(sd.K->degree() == 8);
    CHECK(sd.group_order() == 8);
    // all roots are roots of P, sqrt_a^2 = a
    for (auto& r : sd.roots) CHECK(eval_poly(parse_poly("t^4-22"), r).is_zero());
    CHECK(sd.sqrt_a * sd.sqrt_a == sd.K->from_rat(BigRat(-1)));
    // e1 is fixed by h (the automorphism flipping sqrt a)
    CHECK(sd.flips_sqrt_a[sd.elem_h]);
    CHECK(sd.root_perm[sd.elem_h][0] == 0);
    // the permutation representation is faithful
    std::set<std::pair<std::vector<int>, bool>> seen;
    for (int e = 0; e < 8; e++) seen.insert({sd.root_perm[e], sd.flips_sqrt_a[e]});
    CHECK(seen.size() == 8);
    // presentation relations on the field side: g^4 = h^2 = (gh)^4... = 1, hgh = g^-1
    auto& g = sd.auts[sd.elem_g];
    auto& h = sd.auts[sd.elem_h];
    auto g2 = g.compose(g);
    CHECK(g2.compose(g2).is_identity());
    CHECK(h.compose(h).is_identity());
    auto ghgh = g.compose(h).compose(g).compose(h);
    CHECK(ghgh.is_identity());
}

TEST_CASE("biquadratic V4 field t^2-2 with a=-1") {
    SurfaceSpec spec{BigRat(-1), BigRat(1), parse_poly("t^2-2")};
    SplittingData sd = build_splitting_field(spec);
    CHECK(sd.fam == Family::QuadraticP);
    CHECK(sd.K->degree() == 4);
    CHECK(sd.group_order() == 4);
    for (auto& r : sd.roots) CHECK(eval_poly(spec.P, r).is_zero());
    std::set<std::vector<BigRat>> distinct;
    for (auto& a : sd.auts) distinct.insert(a.mat.a);
    CHECK(distinct.size() == 4);
}

TEST_CASE("cyclotomic quartic: K = Q(zeta5), sqrt5 inside") {
    SurfaceSpec spec{BigRat(5), BigRat(1), parse_poly("t^4+t^3+t^2+t+1")};
    SplittingData sd = build_splitting_field(spec);
    CHECK(sd.fam == Family::CyclicQuartic);
    CHECK(sd.K->degree() == 4);
    CHECK(sd.cyclic);
    // (2 zeta + 2 zeta^4 + 1)^2 = 5
    NFElem z = sd.K->gen_x();
    NFElem w = z * BigRat(2) + z.pow(4) * BigRat(2) + sd.K->one();
    CHECK(w * w == sd.K->from_rat(BigRat(5)));
    CHECK(sd.sqrt_a * sd.sqrt_a == sd.K->from_rat(BigRat(5)));
}

TEST_CASE("relative norms") {
    SplittingData sd = build_splitting_field(xm_spec(22));
    NFElem beta = sd.K->gen_x(), iota = sd.K->gen_y();
    // over the trivial subgroup
    CHECK(relative_norm({sd.auts[0]}, beta) == beta);
    // N over <h> of i is i*(-i) = 1
    std::vector<FieldAut> H{sd.auts[0], sd.auts[sd.elem_h]};
    CHECK(relative_norm(H, iota) == sd.K->one());
    // N over <g> of the fourth root of 22 is -22
    std::vector<FieldAut> G4{sd.auts[0], sd.auts[1], sd.auts[2], sd.auts[3]};
    CHECK(relative_norm(G4, beta) == sd.K->from_rat(BigRat(-22)));
    // norms are invariant under the subgroup
    NFElem n = relative_norm(G4, beta + iota);
    for (auto& s : G4) CHECK(s.apply(n) == n);
}

TEST_CASE("dihedral t^n - m families") {
    SurfaceSpec s3{BigRat(-3), BigRat(1), parse_poly("t^3-2")};
    SplittingData d3 = build_splitting_field(s3);
    CHECK(d3.fam == Family::DihedralTnM);
    CHECK(d3.K->degree() == 6);
    for (auto& r : d3.roots) CHECK(eval_poly(s3.P, r).is_zero());

    SurfaceSpec s6{BigRat(-3), BigRat(1), parse_poly("t^6-2")};
    SplittingData d6 = build_splitting_field(s6);
    CHECK(d6.fam == Family::DihedralTnM);
    CHECK(d6.K->degree() == 12);

    SurfaceSpec s5{BigRat(5), BigRat(1), parse_poly("t^5-7")};
    SplittingData d5 = build_splitting_field(s5);
    CHECK(d5.fam == Family::DihedralSymbolic);
    CHECK(d5.group_order() == 10);
    // h fixes root 0 and reverses the rest; g is the n-cycle
    CHECK(d5.root_perm[d5.elem_h][0] == 0);
    CHECK(d5.root_perm[d5.elem_g][0] == 1);
}

TEST_CASE("unsupported families are rejected with a clear error") {
    SurfaceSpec bad{BigRat(7), BigRat(1), parse_poly("t^4-t-1")};
    CHECK_THROWS_WITH_AS(build_splitting_field(bad),
                         doctest::Contains("not implemented for this Galois type"),
                         std::runtime_error);
}

TEST_CASE("quartic Galois classification fixtures") {
    auto run = [](const char* P, long a) {
        return quartic_galois_case(parse_poly(P), BigRat(a)).label;
    };
    CHECK(run("t^4-22", -1) == QuarticCase::D4_Z4quot);
    CHECK(run("t^4-10t^2+1", 2) == QuarticCase::V4);
    CHECK(run("t^4-t-1", -283) == QuarticCase::S4);
    CHECK(run("t^4-2", 2) == QuarticCase::D4_L_in_kt);
    CHECK(run("t^4-2", -2) == QuarticCase::D4_L_notin_kt_V4quot);
    CHECK(run("t^4+t^3+t^2+t+1", 5) == QuarticCase::Z4);
    CHECK(run("t^4+8t+12", 5) == QuarticCase::A4);
    CHECK(run("t^4-22", 7) == QuarticCase::L_not_in_K);
    CHECK(run("t^4-t-1", 5) == QuarticCase::L_not_in_K);
    CHECK_THROWS_AS(run("t^4-1", 5), std::invalid_argument);   // reducible
    CHECK_THROWS_AS(run("t^4-22", 4), std::invalid_argument);  // square a
}

TEST_CASE("classification agrees with the mod-p factorization oracle") {
    struct Fixture {
        const char* P;
        long a;
        std::set<std::vector<int>> allowed;
    };
    std::vector<int> t1111{1, 1, 1, 1}, t112{1, 1, 2}, t13{1, 3}, t22{2, 2}, t4{4};
    std::vector<Fixture> fx{
        {"t^4-22", -1, {t1111, t22, t4, t112}},              // D4
        {"t^4-10t^2+1", 2, {t1111, t22}},                    // V4
        {"t^4-t-1", -283, {t1111, t112, t13, t22, t4}},      // S4
        {"t^4+t^3+t^2+t+1", 5, {t1111, t22, t4}},            // Z4
        {"t^4+8t+12", 5, {t1111, t22, t13}},                 // A4
    };
    std::vector<long> primes;
    for (long p = 5; primes.size() < 30; p += 2)
        if (is_prime(BigInt(p))) primes.push_back(p);
    for (auto& f : fx) {
        QPoly P = parse_poly(f.P);
        std::set<std::vector<int>> seen;
        for (long p : primes)
            if (auto pat = quartic_mod_p_pattern(P, p)) {
                CHECK(f.allowed.count(*pat));
                seen.insert(*pat);
            }
        // Chebotarev makes every class overwhelmingly likely over 30 primes;
        // require at least the distinguishing ones
        if (f.allowed.count(t112)) CHECK(seen.count(t112));
        if (std::string(f.P) == std::string("t^4+t^3+t^2+t+1")) CHECK(seen.count(t4));
    }
}

TEST_CASE("field arithmetic sanity") {
    auto K = NumberField::create(parse_poly("t^4-22"), parse_poly("t^2+1"), "b", "i");
    NFElem b = K->gen_x(), i = K->gen_y();
    CHECK(b.pow(4) == K->from_rat(BigRat(22)));
    CHECK(i * i == K->from_rat(BigRat(-1)));
    NFElem x = (b + i) * (b - i);
    CHECK(x == b * b + K->one());
    NFElem y = b + i * BigRat(3) + K->from_rat(BigRat(7, 2));
    CHECK(y * y.inverse() == K->one());
    CHECK(y.char_poly().degree() == 8);
    // norm multiplicativity
    CHECK(x.norm_to_Q() * y.norm_to_Q() == (x * y).norm_to_Q());
    // Poly over number-field coefficients: ring ops and division
    Poly<NFElem> f(std::vector<NFElem>{b, i, K->one()});
    Poly<NFElem> g(std::vector<NFElem>{-i, K->one()});
    Poly<NFElem> q, r;
    Poly<NFElem>::divrem(f, g, q, r);
    CHECK(q * g + r == f);
    CHECK(r.degree() < g.degree());
}
