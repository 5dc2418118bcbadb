#include "chatelet/gcoh.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

namespace chatelet::gcoh {

using exact::snf_with_v;
using exact::SnfVResult;

// ---------------------------------------------------------------------------
// groups
// ---------------------------------------------------------------------------

int GroupPresentation::power(int a, long e) const {
    long ord = 1;
    int x = a;
    while (x != id) { x = mul(x, a); ord++; }
    long m = e % ord;
    if (m < 0) m += ord;
    int r = id;
    for (long k = 0; k < m; k++) r = mul(r, a);
    return r;
}

int GroupPresentation::dih_elem(int i, int j) const {
    if (!is_dihedral) throw std::logic_error("not a dihedral presentation");
    i %= dih_n;
    if (i < 0) i += dih_n;
    j &= 1;
    return i + dih_n * j;
}

std::pair<int, int> GroupPresentation::dih_coords(int e) const {
    if (!is_dihedral) throw std::logic_error("not a dihedral presentation");
    return {e % dih_n, e / dih_n};
}

void GroupPresentation::check() const {
    if (int(mult.size()) != n) throw std::logic_error("bad table size");
    for (int x = 0; x < n; x++)
        if (mul(id, x) != x || mul(x, id) != x) throw std::logic_error("bad identity");
    for (int x = 0; x < n; x++) {
        if (mul(x, inv[x]) != id || mul(inv[x], x) != id) throw std::logic_error("bad inverse");
        for (int y = 0; y < n; y++)
            for (int z = 0; z < n; z++)
                if (mul(mul(x, y), z) != mul(x, mul(y, z))) throw std::logic_error("not associative");
    }
}

GroupPresentation GroupPresentation::dihedral(int nrot) {
    if (nrot < 2) throw std::invalid_argument("dihedral needs n >= 2");
    GroupPresentation G;
    G.n = 2 * nrot;
    G.is_dihedral = true;
    G.dih_n = nrot;
    G.id = 0;
    G.gen_g = 1;
    G.gen_h = nrot;
    G.mult.assign(G.n, std::vector<int>(G.n));
    for (int j = 0; j < 2; j++)
        for (int i = 0; i < nrot; i++) {
            std::ostringstream nm;
            if (i == 0 && j == 0) nm << "1";
            if (i) nm << "g" << (i > 1 ? std::to_string(i) : "");
            if (j) nm << "h";
            G.names.push_back(nm.str());
        }
    auto idx = [nrot](int i, int j) { return ((i % nrot) + nrot) % nrot + nrot * (j & 1); };
    for (int j = 0; j < 2; j++)
        for (int i = 0; i < nrot; i++)
            for (int j2 = 0; j2 < 2; j2++)
                for (int i2 = 0; i2 < nrot; i2++)
                    G.mult[idx(i, j)][idx(i2, j2)] = idx(i + (j ? -i2 : i2), j + j2);
    G.inv.resize(G.n);
    for (int x = 0; x < G.n; x++)
        for (int y = 0; y < G.n; y++)
            if (G.mult[x][y] == 0) G.inv[x] = y;
    return G;
}

GroupPresentation GroupPresentation::cyclic(int n) {
    GroupPresentation G;
    G.n = n;
    G.id = 0;
    G.gen_g = n > 1 ? 1 : 0;
    G.mult.assign(n, std::vector<int>(n));
    for (int i = 0; i < n; i++) {
        G.names.push_back(i == 0 ? "1" : "g" + (i > 1 ? std::to_string(i) : ""));
        for (int j = 0; j < n; j++) G.mult[i][j] = (i + j) % n;
    }
    G.inv.resize(n);
    for (int i = 0; i < n; i++) G.inv[i] = (n - i) % n;
    return G;
}

GroupPresentation GroupPresentation::from_table(std::vector<std::vector<int>> table,
                                                std::vector<std::string> names) {
    GroupPresentation G;
    G.n = int(table.size());
    G.mult = std::move(table);
    G.names = std::move(names);
    G.id = -1;
    for (int e = 0; e < G.n; e++) {
        bool ok = true;
        for (int x = 0; x < G.n; x++) ok = ok && G.mult[e][x] == x && G.mult[x][e] == x;
        if (ok) { G.id = e; break; }
    }
    if (G.id < 0) throw std::invalid_argument("no identity in table");
    G.inv.assign(G.n, -1);
    for (int x = 0; x < G.n; x++)
        for (int y = 0; y < G.n; y++)
            if (G.mult[x][y] == G.id) G.inv[x] = y;
    G.check();
    return G;
}

// ---------------------------------------------------------------------------
// modules and the group ring
// ---------------------------------------------------------------------------

void GIntModule::check() const {
    if (int(action.size()) != G->n) throw std::logic_error("module: one matrix per element required");
    for (auto& m : action)
        if (!exact::is_unimodular(m)) throw std::logic_error("module action is not unimodular");
    for (int x = 0; x < G->n; x++)
        for (int y = 0; y < G->n; y++)
            if (!(action[x] * action[y] == action[G->mul(x, y)]))
                throw std::logic_error("module action does not respect the group table");
}

GIntModule GIntModule::trivial(const GroupPresentation& G, int rank) {
    GIntModule M;
    M.G = &G;
    M.rank = rank;
    M.action.assign(G.n, IntMatrix::identity(rank));
    return M;
}

bool ZG::is_zero() const {
    for (auto& x : c)
        if (sgn(x) != 0) return false;
    return true;
}

ZG zg_add(const ZG& a, const ZG& b) {
    ZG r = a;
    for (size_t i = 0; i < r.c.size(); i++) r.c[i] += b.c[i];
    return r;
}
ZG zg_sub(const ZG& a, const ZG& b) {
    ZG r = a;
    for (size_t i = 0; i < r.c.size(); i++) r.c[i] -= b.c[i];
    return r;
}
ZG zg_mul(const GroupPresentation& G, const ZG& a, const ZG& b) {
    ZG r(G.n);
    for (int x = 0; x < G.n; x++) {
        if (sgn(a.c[x]) == 0) continue;
        for (int y = 0; y < G.n; y++) {
            if (sgn(b.c[y]) == 0) continue;
            r.c[G.mul(x, y)] += a.c[x] * b.c[y];
        }
    }
    return r;
}

ZG zg_norm(const GroupPresentation& G, int e) {
    ZG r(G.n);
    int x = G.id;
    do {
        r.c[x] += 1;
        x = G.mul(x, e);
    } while (x != G.id);
    return r;
}

ZG zg_delta(const GroupPresentation& G, int e) {
    ZG r(G.n);
    r.c[G.id] += 1;
    r.c[e] -= 1;
    return r;
}

IntMatrix zg_act(const GIntModule& M, const ZG& z) {
    IntMatrix r(M.rank, M.rank);
    for (int e = 0; e < M.G->n; e++) {
        if (sgn(z.c[e]) == 0) continue;
        for (int i = 0; i < M.rank; i++)
            for (int j = 0; j < M.rank; j++) r.at(i, j) += z.c[e] * M.act(e).at(i, j);
    }
    return r;
}

IntMatrix zg_rmul_matrix(const GroupPresentation& G, const ZG& z) {
    IntMatrix R(G.n, G.n);
    for (int rho = 0; rho < G.n; rho++)
        for (int sig = 0; sig < G.n; sig++) R.at(rho, sig) = z.c[G.mul(G.inv[sig], rho)];
    return R;
}

// ---------------------------------------------------------------------------
// the efficient dihedral complex
// ---------------------------------------------------------------------------

EffDifferentials eff_differentials(const GroupPresentation& G) {
    if (!G.is_dihedral || G.dih_n < 2) throw std::invalid_argument("eff_differentials: dihedral, n >= 2");
    int g = G.gen_g, h = G.gen_h, gh = G.mul(g, h);
    ZG Ng = zg_norm(G, g), Nh = zg_norm(G, h), Ngh = zg_norm(G, gh);
    ZG Dg = zg_delta(G, g), Dh = zg_delta(G, h), Dgh = zg_delta(G, gh);
    ZG zero(G.n);
    ZG mNg(G.n), mNgh(G.n);
    mNg = zg_sub(zero, Ng);
    mNgh = zg_sub(zero, Ngh);
    EffDifferentials E;
    E.d1 = {{Dg, Dh}};
    E.d2 = {{Ng, zero, Ngh}, {zero, Nh, mNgh}};
    E.d3 = {{Dg, zero, zero, Nh}, {zero, Dh, zero, mNg}, {zero, zero, Dgh, mNg}};
    return E;
}

IntMatrix eff_cochain_d(const GroupPresentation& G, const GIntModule& M, int deg) {
    EffDifferentials E = eff_differentials(G);
    const std::vector<std::vector<ZG>>* D;
    if (deg == 1)
        D = &E.d1;
    else if (deg == 2)
        D = &E.d2;
    else if (deg == 3)
        D = &E.d3;
    else
        throw std::invalid_argument("eff_cochain_d: deg in {1,2,3}");
    // the cochain map sends a row (v_1..v_rows) to (sum_i v_i . D[i][j])_j
    int nrows = int(D->size()), ncols = int((*D)[0].size());
    IntMatrix out(ncols * M.rank, nrows * M.rank);
    for (int i = 0; i < nrows; i++)
        for (int j = 0; j < ncols; j++) {
            IntMatrix blk = zg_act(M, (*D)[i][j]);
            for (int r = 0; r < M.rank; r++)
                for (int cc = 0; cc < M.rank; cc++) out.at(j * M.rank + r, i * M.rank + cc) += blk.at(r, cc);
        }
    return out;
}

// ---------------------------------------------------------------------------
// the standard (bar) resolution
// ---------------------------------------------------------------------------

namespace {
inline long tuple_index(const std::vector<int>& t, int n) {
    long idx = 0;
    for (size_t k = t.size(); k-- > 0;) idx = idx * n + t[k];
    return idx;
}
}  // namespace

IntMatrix std_cochain_d(const GroupPresentation& G, const GIntModule& M, int deg) {
    if (deg < 1) throw std::invalid_argument("std_cochain_d: deg >= 1");
    long incount = 1, outcount = 1;
    for (int k = 0; k < deg - 1; k++) incount *= G.n;
    outcount = incount * G.n;
    IntMatrix out(int(outcount) * M.rank, int(incount) * M.rank);
    std::vector<int> T(deg);
    for (long o = 0; o < outcount; o++) {
        long tmp = o;
        for (int k = 0; k < deg; k++) {
            T[k] = int(tmp % G.n);
            tmp /= G.n;
        }
        long orow = o * M.rank;
        // + g1 . phi(g2..gd)
        {
            std::vector<int> tail(T.begin() + 1, T.end());
            long cidx = tuple_index(tail, G.n) * M.rank;
            const IntMatrix& act = M.act(T[0]);
            for (int r = 0; r < M.rank; r++)
                for (int cc = 0; cc < M.rank; cc++) out.at(int(orow) + r, int(cidx) + cc) += act.at(r, cc);
        }
        // alternating merged terms
        int sign = -1;
        for (int i = 0; i + 1 < deg; i++) {
            std::vector<int> merged;
            for (int k = 0; k < deg; k++) {
                if (k == i) {
                    merged.push_back(G.mul(T[k], T[k + 1]));
                    k++;
                } else {
                    merged.push_back(T[k]);
                }
            }
            long cidx = tuple_index(merged, G.n) * M.rank;
            for (int r = 0; r < M.rank; r++) out.at(int(orow) + r, int(cidx) + r) += sign;
            sign = -sign;
        }
        // (-1)^deg phi(g1..g_{d-1})
        {
            std::vector<int> head(T.begin(), T.end() - 1);
            long cidx = tuple_index(head, G.n) * M.rank;
            int s = (deg % 2 == 0) ? 1 : -1;
            for (int r = 0; r < M.rank; r++) out.at(int(orow) + r, int(cidx) + r) += s;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// cohomology of a pair
// ---------------------------------------------------------------------------

namespace {

// torsion part + generators from the SNF of the coboundary map
Cohomology torsion_from_B(const IntMatrix& B, SnfVResult& s) {
    Cohomology H;
    for (int i = 0; i < s.rank; i++) {
        if (s.diag[i] == 1) continue;
        // y_i = B * (V e_i) / d_i is a kernel element generating Z/d_i
        std::vector<BigInt> v(B.cols);
        for (int r = 0; r < B.cols; r++) v[r] = s.V.at(r, i);
        auto y = B.apply(v);
        for (auto& x : y) {
            if (sgn(x % s.diag[i]) != 0) throw std::logic_error("snf generator not divisible");
            x /= s.diag[i];
        }
        H.invariant_factors.push_back(s.diag[i]);
        H.generators.push_back(std::move(y));
    }
    return H;
}

const uint64_t kPrimes[] = {2147483647ULL, 2147483629ULL, 2147483587ULL};

}  // namespace

Cohomology cohomology_pair(const IntMatrix& B, const IntMatrix& A) {
    if (!(A * B).is_zero()) throw std::logic_error("cohomology_pair: A*B != 0");
    SnfVResult s = snf_with_v(B);
    Cohomology H = torsion_from_B(B, s);
    for (auto& y : H.generators) {
        auto Ay = A.apply(y);
        for (auto& x : Ay)
            if (sgn(x) != 0) throw std::logic_error("generator is not a cocycle");
    }
    // free rank = nullity(A) - rank(B); certify nullity mod p, exact fallback
    int free_rank = -1;
    for (uint64_t p : kPrimes) {
        int nul = A.cols - exact::rank_mod_p(A, p);
        if (nul == s.rank) { free_rank = 0; break; }
    }
    if (free_rank < 0) {
        SnfVResult sa = snf_with_v(A);
        free_rank = (A.cols - sa.rank) - s.rank;
    }
    H.free_rank = free_rank;
    return H;
}

Cohomology cohomology_eff(const GroupPresentation& G, const GIntModule& M, int deg) {
    if (!G.is_dihedral)
        throw std::invalid_argument("cohomology_eff: dihedral groups only; use cohomology_std");
    if (deg == 1) return cohomology_pair(eff_cochain_d(G, M, 1), eff_cochain_d(G, M, 2));
    if (deg == 2) return cohomology_pair(eff_cochain_d(G, M, 2), eff_cochain_d(G, M, 3));
    throw std::invalid_argument("cohomology_eff: deg in {1,2}");
}

namespace {

// incremental kernel dimension mod p of the sparse standard differential,
// with early exit at the lower bound rank(B)
int std_nullity_mod_p(const GroupPresentation& G, const GIntModule& M, int deg, uint64_t p,
                      int lower_bound) {
    long incount = 1;
    for (int k = 0; k < deg - 1; k++) incount *= G.n;
    long outcount = incount * G.n;
    int ncols = int(incount) * M.rank;
    // columns of the evolving kernel basis
    std::vector<std::vector<uint64_t>> V(ncols, std::vector<uint64_t>(ncols, 0));
    for (int i = 0; i < ncols; i++) V[i][i] = 1;
    std::vector<int> alive(ncols);
    for (int i = 0; i < ncols; i++) alive[i] = i;

    std::vector<int> T(deg);
    std::vector<std::pair<int, long>> row;
    std::vector<uint64_t> actmod(size_t(G.n) * M.rank * M.rank);
    for (int e = 0; e < G.n; e++)
        for (int r = 0; r < M.rank; r++)
            for (int cc = 0; cc < M.rank; cc++) {
                BigInt v = M.act(e).at(r, cc) % BigInt((unsigned long)p);
                if (sgn(v) < 0) v += BigInt((unsigned long)p);
                actmod[(size_t(e) * M.rank + r) * M.rank + cc] = v.get_ui();
            }

    for (long o = 0; o < outcount && int(alive.size()) > lower_bound; o++) {
        long tmp = o;
        for (int k = 0; k < deg; k++) {
            T[k] = int(tmp % G.n);
            tmp /= G.n;
        }
        std::vector<int> tail(T.begin() + 1, T.end());
        long c_act = tuple_index(tail, G.n) * M.rank;
        std::vector<long> merged_idx;
        for (int i = 0; i + 1 < deg; i++) {
            std::vector<int> merged;
            for (int k = 0; k < deg; k++) {
                if (k == i) {
                    merged.push_back(G.mul(T[k], T[k + 1]));
                    k++;
                } else {
                    merged.push_back(T[k]);
                }
            }
            merged_idx.push_back(tuple_index(merged, G.n) * M.rank);
        }
        std::vector<int> head(T.begin(), T.end() - 1);
        long c_last = tuple_index(head, G.n) * M.rank;
        for (int r = 0; r < M.rank && int(alive.size()) > lower_bound; r++) {
            row.clear();
            for (int cc = 0; cc < M.rank; cc++) {
                uint64_t v = actmod[(size_t(T[0]) * M.rank + r) * M.rank + cc];
                if (v) row.push_back({int(c_act) + cc, long(v)});
            }
            long sign = -1;
            for (auto mi : merged_idx) {
                row.push_back({int(mi) + r, (sign + long(p)) % long(p)});
                sign = -sign;
            }
            row.push_back({int(c_last) + r, deg % 2 == 0 ? 1 : long(p) - 1});
            // w = row . V over the alive columns
            std::vector<uint64_t> w(alive.size(), 0);
            for (size_t j = 0; j < alive.size(); j++) {
                __uint128_t acc = 0;
                auto& col = V[alive[j]];
                for (auto& [ci, cv] : row) acc += (__uint128_t)col[ci] * uint64_t(cv);
                w[j] = uint64_t(acc % p);
            }
            int piv = -1;
            for (size_t j = 0; j < w.size(); j++)
                if (w[j]) { piv = int(j); break; }
            if (piv < 0) continue;
            uint64_t pinv = invert_mod(BigInt((unsigned long)w[piv]), BigInt((unsigned long)p)).get_ui();
            auto& pc = V[alive[piv]];
            for (size_t j = 0; j < w.size(); j++) {
                if (int(j) == piv || !w[j]) continue;
                uint64_t f = uint64_t((__uint128_t)w[j] * pinv % p);
                auto& cj = V[alive[j]];
                for (int t2 = 0; t2 < ncols; t2++)
                    cj[t2] = uint64_t((cj[t2] + (__uint128_t)(p - f) * pc[t2]) % p);
            }
            alive.erase(alive.begin() + piv);
        }
    }
    return int(alive.size());
}

// exact sparse application of the standard differential to one cochain
std::vector<BigInt> std_apply_sparse(const GroupPresentation& G, const GIntModule& M, int deg,
                                     const std::vector<BigInt>& x) {
    long incount = 1;
    for (int k = 0; k < deg - 1; k++) incount *= G.n;
    long outcount = incount * G.n;
    std::vector<BigInt> out(size_t(outcount) * M.rank);
    std::vector<int> T(deg);
    for (long o = 0; o < outcount; o++) {
        long tmp = o;
        for (int k = 0; k < deg; k++) {
            T[k] = int(tmp % G.n);
            tmp /= G.n;
        }
        std::vector<int> tail(T.begin() + 1, T.end());
        long c_act = tuple_index(tail, G.n) * M.rank;
        const IntMatrix& act = M.act(T[0]);
        for (int r = 0; r < M.rank; r++)
            for (int cc = 0; cc < M.rank; cc++)
                if (sgn(act.at(r, cc)) != 0) out[o * M.rank + r] += act.at(r, cc) * x[c_act + cc];
        int sign = -1;
        for (int i = 0; i + 1 < deg; i++) {
            std::vector<int> merged;
            for (int k = 0; k < deg; k++) {
                if (k == i) {
                    merged.push_back(G.mul(T[k], T[k + 1]));
                    k++;
                } else {
                    merged.push_back(T[k]);
                }
            }
            long cidx = tuple_index(merged, G.n) * M.rank;
            for (int r = 0; r < M.rank; r++) out[o * M.rank + r] += sign * x[cidx + r];
            sign = -sign;
        }
        std::vector<int> head(T.begin(), T.end() - 1);
        long c_last = tuple_index(head, G.n) * M.rank;
        int s = (deg % 2 == 0) ? 1 : -1;
        for (int r = 0; r < M.rank; r++) out[o * M.rank + r] += s * x[c_last + r];
    }
    return out;
}

}  // namespace

Cohomology cohomology_std(const GroupPresentation& G, const GIntModule& M, int deg) {
    if (deg < 1 || deg > 3) throw std::invalid_argument("cohomology_std: deg in {1,2,3}");
    double unknowns = std::pow(double(G.n), deg) * M.rank;
    if (unknowns > 1e5) throw std::invalid_argument("cohomology_std: size guard exceeded");
    // torsion and generators come from the SNF of the (smaller) coboundary map;
    // the big differential above is only touched sparsely, for the per-generator
    // cocycle checks and for the mod-p free-rank certification
    IntMatrix B = std_cochain_d(G, M, deg);
    SnfVResult s = snf_with_v(B);
    Cohomology H = torsion_from_B(B, s);
    for (auto& y : H.generators) {
        auto Ay = std_apply_sparse(G, M, deg + 1, y);
        for (auto& v : Ay)
            if (sgn(v) != 0) throw std::logic_error("generator is not a cocycle");
    }
    H.free_rank = -1;
    for (uint64_t p : kPrimes) {
        int nul = std_nullity_mod_p(G, M, deg + 1, p, s.rank);
        if (nul == s.rank) { H.free_rank = 0; break; }
    }
    if (H.free_rank != 0)
        throw std::logic_error("cohomology_std: could not certify the free rank; enlarge the guard");
    return H;
}

// ---------------------------------------------------------------------------
// class membership helpers
// ---------------------------------------------------------------------------

std::optional<std::vector<BigInt>> class_coordinates(const IntMatrix& B,
                                                     const std::vector<std::vector<BigInt>>& gens,
                                                     const std::vector<BigInt>& z) {
    IntMatrix Aug(B.rows, B.cols + int(gens.size()));
    for (int i = 0; i < B.rows; i++)
        for (int j = 0; j < B.cols; j++) Aug.at(i, j) = B.at(i, j);
    for (size_t g = 0; g < gens.size(); g++)
        for (int i = 0; i < B.rows; i++) Aug.at(i, B.cols + int(g)) = gens[g][i];
    auto sol = exact::solve_linear_over_Z(Aug, z);
    if (!sol) return std::nullopt;
    std::vector<BigInt> coords(gens.size());
    for (size_t g = 0; g < gens.size(); g++) coords[g] = sol->x[B.cols + g];
    return coords;
}

bool is_coboundary(const IntMatrix& B, const std::vector<BigInt>& z) {
    return exact::in_column_span(B, z);
}

bool same_class_up_to_unit(const IntMatrix& B, const std::vector<BigInt>& z1,
                           const std::vector<BigInt>& z2, const BigInt& order) {
    for (BigInt u = 1; u < order; u += 1) {
        if (gcd(u, order) != 1) continue;
        std::vector<BigInt> d(z1.size());
        for (size_t i = 0; i < d.size(); i++) d[i] = u * z1[i] - z2[i];
        if (is_coboundary(B, d)) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// comparison chain maps
// ---------------------------------------------------------------------------

std::pair<ZG, ZG> sigma1(const GroupPresentation& G, int elem) {
    auto [i, j] = G.dih_coords(elem);
    ZG a(G.n), b(G.n);
    int x = G.id;
    for (int e = 0; e < i; e++) {
        a.c[x] -= 1;  // -(1 + g + ... + g^(i-1))
        x = G.mul(x, G.gen_g);
    }
    if (j) b.c[x] -= 1;  // -g^i when j = 1
    return {a, b};
}

const std::vector<std::vector<std::array<ZG, 3>>>& sigma2(const GroupPresentation& G) {
    static std::map<int, std::vector<std::vector<std::array<ZG, 3>>>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(G.dih_n);
    if (it != cache.end()) return it->second;

    int n = G.n;
    ZG Ng = zg_norm(G, G.gen_g), Nh = zg_norm(G, G.gen_h), Ngh = zg_norm(G, G.mul(G.gen_g, G.gen_h));
    // right-multiplication blocks of the constraint (x1 Ng + x3 Ngh, x2 Nh - x3 Ngh)
    IntMatrix Rg = zg_rmul_matrix(G, Ng), Rh = zg_rmul_matrix(G, Nh), Rgh = zg_rmul_matrix(G, Ngh);
    IntMatrix Msys(2 * n, 3 * n);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
            Msys.at(i, j) = Rg.at(i, j);
            Msys.at(i, 2 * n + j) = Rgh.at(i, j);
            Msys.at(n + i, n + j) = Rh.at(i, j);
            Msys.at(n + i, 2 * n + j) = -Rgh.at(i, j);
        }
    // right-hand sides: x sigma1(1, x^-1 z) - sigma1(1, z) + sigma1(1, x)
    IntMatrix Rhs(2 * n, n * n);
    auto lmul = [&](int e, const ZG& z) {
        ZG r(n);
        for (int t = 0; t < n; t++)
            if (sgn(z.c[t]) != 0) r.c[G.mul(e, t)] += z.c[t];
        return r;
    };
    for (int x = 0; x < n; x++)
        for (int z = 0; z < n; z++) {
            auto [sx1, sx2] = sigma1(G, x);
            auto [sz1, sz2] = sigma1(G, z);
            auto [sy1, sy2] = sigma1(G, G.mul(G.inv[x], z));
            ZG r1 = zg_add(zg_sub(lmul(x, sy1), sz1), sx1);
            ZG r2 = zg_add(zg_sub(lmul(x, sy2), sz2), sx2);
            for (int t = 0; t < n; t++) {
                Rhs.at(t, x * n + z) = r1.c[t];
                Rhs.at(n + t, x * n + z) = r2.c[t];
            }
        }
    auto sols = exact::solve_columns_over_Z(Msys, Rhs);
    if (!sols) throw std::logic_error("sigma2 chain-map equations unsolvable");
    std::vector<std::vector<std::array<ZG, 3>>> table(n, std::vector<std::array<ZG, 3>>(n));
    for (int x = 0; x < n; x++)
        for (int z = 0; z < n; z++) {
            const auto& xi = (*sols)[x * n + z];
            std::array<ZG, 3> arr{ZG(n), ZG(n), ZG(n)};
            for (int t = 0; t < n; t++) {
                arr[0].c[t] = xi[t];
                arr[1].c[t] = xi[n + t];
                arr[2].c[t] = xi[2 * n + t];
            }
            table[x][z] = arr;
        }
    auto [pos, ok] = cache.emplace(G.dih_n, std::move(table));
    return pos->second;
}

std::array<std::vector<BigInt>, 3> connecting_deg1_to_deg2(const GroupPresentation& G,
                                                           const GIntModule& Div,
                                                           const std::vector<BigInt>& D,
                                                           const std::vector<BigInt>& Dp) {
    AddModule m{&Div};
    ZG Ng = zg_norm(G, G.gen_g), Nh = zg_norm(G, G.gen_h), Ngh = zg_norm(G, G.mul(G.gen_g, G.gen_h));
    std::vector<BigInt> diff(D.size());
    for (size_t i = 0; i < D.size(); i++) diff[i] = D[i] - Dp[i];
    return {m.zg_apply(Ng, D), m.zg_apply(Nh, Dp), m.zg_apply(Ngh, diff)};
}

}  // namespace chatelet::gcoh
