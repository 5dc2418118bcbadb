// Finite-group cohomology over finitely generated integer modules:
// the standard (bar) resolution as a brute-force oracle, the small
// free resolution for dihedral groups, comparison chain maps between
// the two, and connecting homomorphisms.
#ifndef CHATELET_GCOH_HPP
#define CHATELET_GCOH_HPP

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chatelet/exact.hpp"

namespace chatelet::gcoh {

using exact::IntMatrix;

struct GroupPresentation {
    int n = 0;  // order
    std::vector<std::string> names;
    std::vector<std::vector<int>> mult;  // mult[i][j] = index of elem_i * elem_j
    std::vector<int> inv;
    int id = 0;
    bool is_dihedral = false;
    int dih_n = 0;        // g has order dih_n
    int gen_g = -1, gen_h = -1;

    int mul(int a, int b) const { return mult[a][b]; }
    int power(int a, long e) const;
    // index of g^i h^j for dihedral presentations
    int dih_elem(int i, int j) const;
    // (i, j) with elem = g^i h^j
    std::pair<int, int> dih_coords(int e) const;
    void check() const;  // associativity, identity, inverses

    static GroupPresentation dihedral(int n);  // order 2n, includes n = 2 (V4)
    static GroupPresentation cyclic(int n);
    // build from an explicit multiplication table
    static GroupPresentation from_table(std::vector<std::vector<int>> table,
                                        std::vector<std::string> names);
};

// free abelian group with a group action by integer matrices
struct GIntModule {
    const GroupPresentation* G = nullptr;
    int rank = 0;
    std::vector<IntMatrix> action;  // one matrix per group element, column convention

    const IntMatrix& act(int e) const { return action[e]; }
    void check() const;  // unimodularity + the multiplication table is respected
    static GIntModule trivial(const GroupPresentation& G, int rank = 1);
};

// group-ring element, coefficient per group element
struct ZG {
    std::vector<BigInt> c;
    ZG() = default;
    explicit ZG(int n) : c(n) {}
    static ZG basis(int n, int e) {
        ZG z(n);
        z.c[e] = 1;
        return z;
    }
    bool is_zero() const;
};
ZG zg_add(const ZG& a, const ZG& b);
ZG zg_sub(const ZG& a, const ZG& b);
ZG zg_mul(const GroupPresentation& G, const ZG& a, const ZG& b);
ZG zg_norm(const GroupPresentation& G, int e);   // 1 + e + e^2 + ... (full order)
ZG zg_delta(const GroupPresentation& G, int e);  // 1 - e
// matrix of the module action of a group-ring element (sum over elements)
IntMatrix zg_act(const GIntModule& M, const ZG& z);
// matrix of right multiplication x -> x*z on Z[G] coordinates
IntMatrix zg_rmul_matrix(const GroupPresentation& G, const ZG& z);

// the efficient dihedral complex: d1, d2, d3 as matrices over Z[G]
struct EffDifferentials {
    std::vector<std::vector<ZG>> d1, d2, d3;  // [row][col]
};
EffDifferentials eff_differentials(const GroupPresentation& G);

// cochain differential matrices Hom(ZG^k, M): M^k tuples
IntMatrix eff_cochain_d(const GroupPresentation& G, const GIntModule& M, int deg);  // deg in {1,2,3}
IntMatrix std_cochain_d(const GroupPresentation& G, const GIntModule& M, int deg);  // C^(deg-1) -> C^deg

// ---------------------------------------------------------------------------
// cohomology of a pair of consecutive cochain maps
// ---------------------------------------------------------------------------

struct Cohomology {
    std::vector<BigInt> invariant_factors;      // the d_i > 1, divisibility-ordered
    std::vector<std::vector<BigInt>> generators; // cocycles, one per invariant factor
    int free_rank = 0;                           // certified; 0 for group cohomology
};

// H = ker(A)/im(B); B: C^(i-1) -> C^i, A: C^i -> C^(i+1) with A*B = 0.
Cohomology cohomology_pair(const IntMatrix& B, const IntMatrix& A);

Cohomology cohomology_eff(const GroupPresentation& G, const GIntModule& M, int deg);  // deg in {1,2}
Cohomology cohomology_std(const GroupPresentation& G, const GIntModule& M, int deg);  // deg in {1,2,3}

// coordinates of the class of z in terms of the returned generators:
// z - sum(c_i gen_i) is a coboundary of B. nullopt when z is not in their span.
std::optional<std::vector<BigInt>> class_coordinates(const IntMatrix& B,
                                                     const std::vector<std::vector<BigInt>>& gens,
                                                     const std::vector<BigInt>& z);
bool is_coboundary(const IntMatrix& B, const std::vector<BigInt>& z);
// do z1 and z2 generate the same class up to a unit multiple mod order d
bool same_class_up_to_unit(const IntMatrix& B, const std::vector<BigInt>& z1,
                           const std::vector<BigInt>& z2, const BigInt& order);

// ---------------------------------------------------------------------------
// comparison maps between the standard and efficient resolutions
// ---------------------------------------------------------------------------

// sigma_1(1, g^i h^j) as a pair of group-ring elements
std::pair<ZG, ZG> sigma1(const GroupPresentation& G, int elem);
// derived sigma_2(1, x, x*y), solved from the chain-map equations; cached
const std::vector<std::vector<std::array<ZG, 3>>>& sigma2(const GroupPresentation& G);

// pullbacks along sigma: values in any multiplicative G-module.
// Mult provides: V one(), V mul(V,V), V inv(V), V act(int elem, V).
template <class Mult>
std::vector<typename Mult::V> eff_to_std_deg1(const GroupPresentation& G, const Mult& m,
                                              const typename Mult::V& v, const typename Mult::V& vp) {
    std::vector<typename Mult::V> table;
    for (int e = 0; e < G.n; e++) {
        auto [a1, a2] = sigma1(G, e);
        table.push_back(m.mul(m.zg_apply(a1, v), m.zg_apply(a2, vp)));
    }
    return table;
}

template <class Mult>
std::vector<std::vector<typename Mult::V>> eff_to_std_deg2(const GroupPresentation& G, const Mult& m,
                                                           const typename Mult::V& r,
                                                           const typename Mult::V& s,
                                                           const typename Mult::V& t) {
    auto& s2 = sigma2(G);
    std::vector<std::vector<typename Mult::V>> table(G.n);
    for (int x = 0; x < G.n; x++)
        for (int y = 0; y < G.n; y++) {
            const auto& zg3 = s2[x][G.mul(x, y)];
            table[x].push_back(m.mul(m.mul(m.zg_apply(zg3[0], r), m.zg_apply(zg3[1], s)),
                                     m.zg_apply(zg3[2], t)));
        }
    return table;
}

// additive module adaptor (vectors over Z)
struct AddModule {
    using V = std::vector<BigInt>;
    const GIntModule* M;
    V one() const { return V(M->rank); }
    V mul(const V& a, const V& b) const {
        V r = a;
        for (size_t i = 0; i < r.size(); i++) r[i] += b[i];
        return r;
    }
    V inv(const V& a) const {
        V r = a;
        for (auto& x : r) x = -x;
        return r;
    }
    V act(int e, const V& a) const { return M->act(e).apply(a); }
    V zg_apply(const ZG& z, const V& a) const {
        V r(M->rank);
        for (int e = 0; e < int(z.c.size()); e++) {
            if (sgn(z.c[e]) == 0) continue;
            V t = act(e, a);
            for (int i = 0; i < M->rank; i++) r[i] += z.c[e] * t[i];
        }
        return r;
    }
};

// std -> eff in degree 1 via the chain map tau_1 (E1 -> -(1,g), E2 -> -(1,h));
// the round trip eff -> std -> eff is the identity on the nose.
template <class Mult>
std::pair<typename Mult::V, typename Mult::V> std_to_eff_deg1(const GroupPresentation& G, const Mult& m,
                                                              const std::vector<typename Mult::V>& table) {
    return {m.inv(table[G.gen_g]), m.inv(table[G.gen_h])};
}

// multiplicative std 2-cocycle identity: f(x,y) f(xy,z) = x.f(y,z) f(x,yz)
template <class Mult>
bool std2_cocycle_identity_holds(const GroupPresentation& G, const Mult& m,
                                 const std::vector<std::vector<typename Mult::V>>& f,
                                 const std::function<bool(const typename Mult::V&, const typename Mult::V&)>& eq) {
    for (int x = 0; x < G.n; x++)
        for (int y = 0; y < G.n; y++)
            for (int z = 0; z < G.n; z++) {
                auto lhs = m.mul(f[x][y], f[G.mul(x, y)][z]);
                auto rhs = m.mul(m.act(x, f[y][z]), f[x][G.mul(y, z)]);
                if (!eq(lhs, rhs)) return false;
            }
    return true;
}

// coboundary of a 1-cochain: (df)(x,y) = x.f(y) * f(xy)^-1 * f(x)
template <class Mult>
std::vector<std::vector<typename Mult::V>> std_coboundary_deg1(const GroupPresentation& G, const Mult& m,
                                                               const std::vector<typename Mult::V>& f) {
    std::vector<std::vector<typename Mult::V>> out(G.n);
    for (int x = 0; x < G.n; x++)
        for (int y = 0; y < G.n; y++)
            out[x].push_back(m.mul(m.mul(m.act(x, f[y]), m.inv(f[G.mul(x, y)])), f[x]));
    return out;
}

// 1-cochain with coboundary equal to the eff triple's std pullback:
// f'(g^i h^j) = prod_{e<i} g^e(rp)^-1 * (g^i(sp))^-j
template <class Mult>
std::vector<typename Mult::V> coboundary_witness_deg1(const GroupPresentation& G, const Mult& m,
                                                      const typename Mult::V& rp,
                                                      const typename Mult::V& sp) {
    return eff_to_std_deg1(G, m, rp, sp);
}

// connecting map in degree 1 -> 2 for 0 -> R -> Div -> Pic -> 0:
// a lifted pair (D, D') maps to (N_g D, N_h D', N_gh (D - D'))
std::array<std::vector<BigInt>, 3> connecting_deg1_to_deg2(const GroupPresentation& G,
                                                           const GIntModule& Div,
                                                           const std::vector<BigInt>& D,
                                                           const std::vector<BigInt>& Dp);

}  // namespace chatelet::gcoh

#endif
