// Global number-field arithmetic for the explicitly supported families.
// A field is a tensor of at most two univariate quotient rings
// Q[x]/(f) (x) Q[y]/(g); linear disjointness is certified per family.
#ifndef CHATELET_NUMFIELD_HPP
#define CHATELET_NUMFIELD_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chatelet/exact.hpp"
#include "chatelet/qmat.hpp"

namespace chatelet::nf {

struct NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

class NFElem {
public:
    FieldPtr F;  // null for the uninitialized element
    std::vector<BigRat> c;  // dx*dy coefficients, index i + dx*j  <->  x^i y^j

    NFElem() = default;
    NFElem(FieldPtr f, std::vector<BigRat> cc) : F(std::move(f)), c(std::move(cc)) {}

    bool is_zero() const;
    bool is_rational() const;
    BigRat rational_part() const;  // valid when is_rational()

    NFElem operator+(const NFElem& o) const;
    NFElem operator-(const NFElem& o) const;
    NFElem operator-() const;
    NFElem operator*(const NFElem& o) const;
    NFElem operator*(const BigRat& s) const;
    NFElem inverse() const;
    NFElem operator/(const NFElem& o) const { return *this * o.inverse(); }
    NFElem pow(long e) const;
    bool operator==(const NFElem& o) const;
    bool operator!=(const NFElem& o) const { return !(*this == o); }

    QMat mult_matrix() const;        // matrix of multiplication by *this
    QPoly char_poly() const;         // degree = field degree
    BigRat norm_to_Q() const;
    std::string str() const;
};

struct NumberField : std::enable_shared_from_this<NumberField> {
    QPoly f;  // minimal polynomial of x over Q
    QPoly g;  // minimal polynomial of y over Q(x)-free part; dy == 1 means no y
    int dx = 1, dy = 1;
    std::string xlabel = "x", ylabel = "y";
    std::vector<std::vector<BigRat>> xred;  // x^(dx+k) mod f, k = 0..dx-2
    std::vector<std::vector<BigRat>> yred;

    int degree() const { return dx * dy; }
    static FieldPtr create(const QPoly& f, const std::string& xlabel);
    static FieldPtr create(const QPoly& f, const QPoly& g, const std::string& xlabel,
                           const std::string& ylabel);

    NFElem zero() const;
    NFElem one() const;
    NFElem from_rat(const BigRat& r) const;
    NFElem gen_x() const;
    NFElem gen_y() const;
    NFElem monomial(int i, int j) const;
};

// evaluate a rational polynomial at a field element
NFElem eval_poly(const QPoly& p, const NFElem& x);

struct FieldAut {
    FieldPtr F;
    NFElem img_x, img_y;
    QMat mat;  // action on the power basis, precomputed
    std::string name;

    static FieldAut make(const FieldPtr& F, const NFElem& ix, const NFElem& iy,
                         const std::string& name = "");
    NFElem apply(const NFElem& e) const;
    FieldAut compose(const FieldAut& inner) const;  // this after inner
    bool operator==(const FieldAut& o) const { return mat.a == o.mat.a; }
    bool is_identity() const;
};

NFElem relative_norm(const std::vector<FieldAut>& subgroup, const NFElem& x);

}  // namespace chatelet::nf

namespace chatelet {
template <>
struct ring_traits<nf::NFElem> {
    static nf::NFElem zero(const nf::NFElem& w) { return w.F ? w.F->zero() : nf::NFElem(); }
    static nf::NFElem one(const nf::NFElem& w) {
        if (!w.F) throw std::domain_error("one() of an uninitialized element");
        return w.F->one();
    }
    static bool is_zero(const nf::NFElem& x) { return x.is_zero(); }
};
}  // namespace chatelet

namespace chatelet::nf {

// ---------------------------------------------------------------------------
// surface input and splitting-field families
// ---------------------------------------------------------------------------

struct SurfaceSpec {
    BigRat a, c;
    QPoly P;

    int n() const { return P.degree(); }
    void validate() const;  // a nonzero nonsquare, c nonzero, P separable
    std::string str() const;
};

enum class Family {
    XM,              // P = t^4 - m, a = -1: K = Q(4th-root m, i), D4
    DihedralTnM,     // P = t^n - m with the catalogued a: explicit for n in {3,4,6}
    DihedralSymbolic,// t^n - m dihedral module structure, no field arithmetic
    Biquadratic,     // V4 quartics t^4+pt^2+q, q a square, explicit
    QuadraticP,      // deg P = 2, K = Q(sqrt(disc P), sqrt a), V4
    CyclicQuartic,   // Z/4 quartic with power-expressible roots (e.g. cyclotomic)
    Unsupported,
};

struct SplittingData {
    Family fam = Family::Unsupported;
    int n = 0;           // deg P
    int dihedral_n = 0;  // order of the rotation generator g in the presentation
    bool cyclic = false; // CyclicQuartic: G = Z/4 generated by g
    FieldPtr K;          // null for DihedralSymbolic
    std::vector<NFElem> roots;  // e_1..e_n when explicit
    NFElem sqrt_a;
    std::vector<FieldAut> auts;          // indexed like the presentation elements
    std::vector<std::vector<int>> root_perm;  // root_perm[elem][j]
    std::vector<bool> flips_sqrt_a;
    std::vector<std::string> elem_names;
    int elem_g = -1, elem_h = -1;  // generator indices into auts/root_perm

    int group_order() const { return int(root_perm.size()); }
};

// Throws std::runtime_error with a "not implemented for this Galois type"
// message for unsupported inputs.
SplittingData build_splitting_field(const SurfaceSpec& spec);

// A primitive element of K whose characteristic polynomial is Eisenstein
// at p. Success certifies that K has a single, totally ramified place
// above p of full local degree [K:Q].
struct EisensteinData {
    NFElem pi;
    QPoly E;
};
std::optional<EisensteinData> eisenstein_uniformizer(const SplittingData& sd, const BigInt& p);
bool is_eisenstein_at(const QPoly& f, const BigInt& p);

// ---------------------------------------------------------------------------
// quartic Galois classification (no splitting-field construction)
// ---------------------------------------------------------------------------

enum class QuarticCase {
    Z4,
    V4,
    D4_L_in_kt,
    D4_L_notin_kt_V4quot,
    D4_Z4quot,
    S4,
    A4,
    L_not_in_K,
};
std::string quartic_case_name(QuarticCase c);

struct QuarticClassification {
    QuarticCase label;
    QuarticCase galois_type;   // underlying group, ignoring the position of L
    BigInt disc_class;         // squarefree part of disc P
    std::optional<BigInt> kt_quad_class;  // squarefree class of the quadratic subfield of k_t
};
QuarticClassification quartic_galois_case(const QPoly& P, const BigRat& a);

// factorization degree pattern of a monic integer quartic mod p, sorted,
// e.g. {1,1,2}; nullopt for bad primes (divides lc or disc)
std::optional<std::vector<int>> quartic_mod_p_pattern(const QPoly& P, long p);

bool is_irreducible_quartic(const QPoly& P);
std::vector<BigRat> rational_roots(const QPoly& p);

}  // namespace chatelet::nf

#endif
