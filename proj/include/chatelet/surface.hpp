// Surface-level assembly: the Galois modules attached to an affine
// Chatelet surface, the Brauer group modulo constants, explicit unit-valued
// 2-cocycle generators, and the global sanity checks.
#ifndef CHATELET_SURFACE_HPP
#define CHATELET_SURFACE_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "chatelet/gcoh.hpp"
#include "chatelet/numfield.hpp"

namespace chatelet::surf {

using nf::SurfaceSpec;

struct SurfaceModules {
    SurfaceSpec spec;
    nf::SplittingData sd;
    gcoh::GroupPresentation G;
    gcoh::GIntModule Div;      // rank 2n, basis D_{1,0}..D_{1,n-1}, D_{2,0}..D_{2,n-1}
    gcoh::GIntModule Pic;      // rank n-1, basis the classes of D_{1,0}..D_{1,n-2}
    gcoh::GIntModule R;        // rank n+1, basis div(t-e_0)..div(t-e_{n-1}), div(u1)
    exact::IntMatrix proj;     // (n-1) x 2n, Div -> Pic
    exact::IntMatrix Rbasis;   // 2n x (n+1), R -> Div
};

SurfaceModules build_modules(const SurfaceSpec& spec);

// ---------------------------------------------------------------------------
// units of the coordinate ring of U, in the canonical form
//   cst * u1^alpha * prod_j (t - e_j)^beta_j
// with u2 eliminated through u1 u2 = c P(t).
// ---------------------------------------------------------------------------

struct UnitExpr {
    BigRat cst_rat{1};
    nf::NFElem cst_nf;   // used when the splitting field is explicit
    bool has_field = false;
    long alpha = 0;
    std::vector<long> beta;

    bool operator==(const UnitExpr& o) const;
    bool is_constant() const;
};

UnitExpr ue_one(const SurfaceModules& S);
UnitExpr ue_const(const SurfaceModules& S, const BigRat& c);
UnitExpr ue_const(const SurfaceModules& S, const nf::NFElem& c);
UnitExpr ue_u1(const SurfaceModules& S);
UnitExpr ue_u2(const SurfaceModules& S);
UnitExpr ue_t_minus_e(const SurfaceModules& S, int j);
UnitExpr ue_mul(const SurfaceModules& S, const UnitExpr& a, const UnitExpr& b);
UnitExpr ue_inv(const SurfaceModules& S, const UnitExpr& a);
UnitExpr ue_pow(const SurfaceModules& S, const UnitExpr& a, long e);
UnitExpr ue_aut(const SurfaceModules& S, int elem, const UnitExpr& a);
UnitExpr ue_norm(const SurfaceModules& S, const std::vector<int>& subgroup, const UnitExpr& a);
std::vector<BigInt> ue_div(const SurfaceModules& S, const UnitExpr& a);  // in Div coordinates
std::string ue_str(const SurfaceModules& S, const UnitExpr& a);

// multiplicative G-module adaptor over UnitExprs
struct UnitMult {
    using V = UnitExpr;
    const SurfaceModules* S;
    V one() const { return ue_one(*S); }
    V mul(const V& a, const V& b) const { return ue_mul(*S, a, b); }
    V inv(const V& a) const { return ue_inv(*S, a); }
    V act(int e, const V& v) const { return ue_aut(*S, e, v); }
    V zg_apply(const gcoh::ZG& z, const V& v) const {
        V r = one();
        for (int e = 0; e < int(z.c.size()); e++) {
            if (sgn(z.c[e]) == 0) continue;
            r = mul(r, ue_pow(*S, act(e, v), z.c[e].get_si()));
        }
        return r;
    }
};

// ---------------------------------------------------------------------------
// Brauer group computations
// ---------------------------------------------------------------------------

struct BrauerQuotient {
    long order = 1;           // |Br X / Br0 X| when determined; 1 means trivial
    std::string type;         // "0", "Z/2", "Z/4", "Z/n"
    std::string note;         // provenance / unverified flags
    bool computed = false;    // true when obtained from H^1(G, Pic)
    std::optional<nf::QuarticCase> quartic_label;
    std::vector<std::vector<BigInt>> pic_generators;  // eff 1-cocycles over Pic
};

BrauerQuotient brauer_quotient(const SurfaceSpec& spec);

struct BrauerClass {
    std::vector<BigInt> pic_cocycle;  // eff pair (v, v') over Pic, concatenated
    UnitExpr r, s, t;
    long order_in_quotient = 1;
    std::string provenance;
};

// catalogued explicit generator with full verification; throws when the
// family has no catalogued representative
BrauerClass explicit_generator(const SurfaceModules& S);

// search for a unit triple whose divisors match a degree-2 cocycle over R
// (components in R coordinates)
std::optional<std::array<UnitExpr, 3>> divisor_matching_search(const SurfaceModules& S,
                                                               const std::array<std::vector<BigInt>, 3>& target_R);

struct PowerReduction {
    long power = 0;
    bool divisor_obstructed = false;   // no unit divisors can match: certified nontrivial
    bool witness_found = false;        // exact coboundary witness: certified trivial
    UnitExpr wr, ws;                   // the witness when found
    std::vector<std::string> leftover_constants;  // constants (1,1,c) blocking the witness
};

struct ClassOrderReport {
    long cocycle_order = 0;  // smallest power with an exact witness (0 if none found <= 16)
    std::vector<PowerReduction> powers;
    bool splitting_certified = false;
    std::string note;
};

ClassOrderReport verify_class_order(const SurfaceModules& S, const BrauerClass& cls);

struct SplittingCertificate {
    bool totally_imaginary = false;
    std::string two_adic;  // "eisenstein", "inert-quadratic-subfield", or empty
    QPoly fixed_field_minpoly;
    bool certified() const { return totally_imaginary && !two_adic.empty(); }
};
std::optional<SplittingCertificate> check_splitting(const SurfaceModules& S);

// Cor. 3.13 sufficient check: the completion of K at (the place above) p
// has full local degree [K:Q]
bool h3_trivial_at(const SurfaceSpec& spec, const BigInt& p);

// local degree bookkeeping for unramified odd p (Frobenius order)
int frobenius_order_at(const SurfaceSpec& spec, const BigInt& p);

}  // namespace chatelet::surf

#endif
