#include "chatelet/numfield.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace chatelet::nf {

// ---------------------------------------------------------------------------
// NumberField / NFElem
// ---------------------------------------------------------------------------

namespace {
std::vector<std::vector<BigRat>> reduction_table(const QPoly& f) {
    // rows: x^(d+k) mod f for k = 0..d-2, f monic of degree d
    int d = f.degree();
    std::vector<std::vector<BigRat>> rows;
    if (d <= 1) return rows;
    std::vector<BigRat> cur(d);  // x^d mod f
    for (int i = 0; i < d; i++) cur[i] = -f.coeff(i);
    rows.push_back(cur);
    for (int k = 1; k <= d - 2; k++) {
        std::vector<BigRat> nxt(d);
        BigRat top = cur[d - 1];
        for (int i = d - 1; i >= 1; i--) nxt[i] = cur[i - 1];
        nxt[0] = 0;
        if (sgn(top) != 0)
            for (int i = 0; i < d; i++) nxt[i] += top * -f.coeff(i);
        rows.push_back(nxt);
        cur = nxt;
    }
    return rows;
}
}  // namespace

FieldPtr NumberField::create(const QPoly& f, const std::string& xlabel) {
    return create(f, QPoly(), xlabel, "");
}

FieldPtr NumberField::create(const QPoly& fin, const QPoly& gin, const std::string& xlabel,
                             const std::string& ylabel) {
    auto F = std::make_shared<NumberField>();
    F->f = fin.monic();
    F->dx = F->f.degree();
    F->xlabel = xlabel;
    if (!gin.is_zero() && gin.degree() >= 2) {
        F->g = gin.monic();
        F->dy = F->g.degree();
        F->ylabel = ylabel;
        F->yred = reduction_table(F->g);
    } else {
        F->dy = 1;
    }
    if (F->dx < 1) throw std::invalid_argument("defining polynomial must be nonconstant");
    F->xred = reduction_table(F->f);
    return F;
}

NFElem NumberField::zero() const {
    return NFElem(shared_from_this(), std::vector<BigRat>(size_t(dx) * dy));
}
NFElem NumberField::one() const { return from_rat(BigRat(1)); }
NFElem NumberField::from_rat(const BigRat& r) const {
    auto e = zero();
    e.c[0] = r;
    return e;
}
NFElem NumberField::gen_x() const { return monomial(1, 0); }
NFElem NumberField::gen_y() const { return monomial(0, 1); }
NFElem NumberField::monomial(int i, int j) const {
    if (i >= dx || j >= dy) throw std::invalid_argument("monomial out of range");
    auto e = zero();
    e.c[size_t(i) + size_t(dx) * j] = 1;
    return e;
}

bool NFElem::is_zero() const {
    for (auto& v : c)
        if (sgn(v) != 0) return false;
    return true;
}

bool NFElem::is_rational() const {
    for (size_t i = 1; i < c.size(); i++)
        if (sgn(c[i]) != 0) return false;
    return true;
}

BigRat NFElem::rational_part() const {
    if (!is_rational()) throw std::domain_error("element is not rational");
    return c.empty() ? BigRat(0) : c[0];
}

NFElem NFElem::operator+(const NFElem& o) const {
    NFElem r = *this;
    for (size_t i = 0; i < c.size(); i++) r.c[i] += o.c[i];
    return r;
}
NFElem NFElem::operator-(const NFElem& o) const {
    NFElem r = *this;
    for (size_t i = 0; i < c.size(); i++) r.c[i] -= o.c[i];
    return r;
}
NFElem NFElem::operator-() const {
    NFElem r = *this;
    for (auto& v : r.c) v = -v;
    return r;
}
NFElem NFElem::operator*(const BigRat& s) const {
    NFElem r = *this;
    for (auto& v : r.c) v *= s;
    return r;
}

NFElem NFElem::operator*(const NFElem& o) const {
    const auto& F_ = *F;
    int dx = F_.dx, dy = F_.dy;
    int px = 2 * dx - 1, py = 2 * dy - 1;
    std::vector<BigRat> prod(size_t(px) * py);
    for (int i = 0; i < dx; i++)
        for (int j = 0; j < dy; j++) {
            const BigRat& u = c[size_t(i) + size_t(dx) * j];
            if (sgn(u) == 0) continue;
            for (int i2 = 0; i2 < dx; i2++)
                for (int j2 = 0; j2 < dy; j2++) {
                    const BigRat& v = o.c[size_t(i2) + size_t(dx) * j2];
                    if (sgn(v) == 0) continue;
                    prod[size_t(i + i2) + size_t(px) * (j + j2)] += u * v;
                }
        }
    for (int i = px - 1; i >= dx; i--)
        for (int j = 0; j < py; j++) {
            BigRat coef = prod[size_t(i) + size_t(px) * j];
            if (sgn(coef) == 0) continue;
            prod[size_t(i) + size_t(px) * j] = 0;
            for (int u = 0; u < dx; u++) prod[size_t(u) + size_t(px) * j] += coef * F_.xred[i - dx][u];
        }
    for (int j = py - 1; j >= dy; j--)
        for (int i = 0; i < dx; i++) {
            BigRat coef = prod[size_t(i) + size_t(px) * j];
            if (sgn(coef) == 0) continue;
            prod[size_t(i) + size_t(px) * j] = 0;
            for (int v = 0; v < dy; v++) prod[size_t(i) + size_t(px) * v] += coef * F_.yred[j - dy][v];
        }
    NFElem r(F, std::vector<BigRat>(size_t(dx) * dy));
    for (int i = 0; i < dx; i++)
        for (int j = 0; j < dy; j++) r.c[size_t(i) + size_t(dx) * j] = prod[size_t(i) + size_t(px) * j];
    return r;
}

bool NFElem::operator==(const NFElem& o) const { return c == o.c; }

QMat NFElem::mult_matrix() const {
    int n = F->degree();
    QMat M(n, n);
    for (int j = 0; j < n; j++) {
        NFElem b(F, std::vector<BigRat>(n));
        b.c[j] = 1;
        NFElem col = *this * b;
        for (int i = 0; i < n; i++) M.at(i, j) = col.c[i];
    }
    return M;
}

NFElem NFElem::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    int n = F->degree();
    std::vector<BigRat> e0(n);
    e0[0] = 1;
    auto sol = qmat_solve(mult_matrix(), e0);
    if (!sol) throw std::domain_error("element is a zero divisor");
    return NFElem(F, *sol);
}

NFElem NFElem::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    NFElem r = F->one(), b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

QPoly NFElem::char_poly() const { return qmat_charpoly(mult_matrix()); }

BigRat NFElem::norm_to_Q() const {
    QPoly cp = char_poly();
    BigRat n0 = cp.coeff(0);
    return (F->degree() % 2 == 0) ? n0 : -n0;
}

std::string NFElem::str() const {
    std::ostringstream os;
    bool first = true;
    for (int j = 0; j < F->dy; j++)
        for (int i = 0; i < F->dx; i++) {
            const BigRat& v = c[size_t(i) + size_t(F->dx) * j];
            if (sgn(v) == 0) continue;
            if (!first) os << " + ";
            first = false;
            os << v.get_str();
            if (i) os << "*" << F->xlabel << (i > 1 ? "^" + std::to_string(i) : "");
            if (j) os << "*" << F->ylabel << (j > 1 ? "^" + std::to_string(j) : "");
        }
    return first ? "0" : os.str();
}

NFElem eval_poly(const QPoly& p, const NFElem& x) {
    NFElem acc = x.F->zero();
    for (int i = p.degree(); i >= 0; i--) acc = acc * x + x.F->from_rat(p.coeff(i));
    return acc;
}

FieldAut FieldAut::make(const FieldPtr& F, const NFElem& ix, const NFElem& iy,
                        const std::string& name) {
    FieldAut a;
    a.F = F;
    a.img_x = ix;
    a.img_y = iy;
    a.name = name;
    int n = F->degree();
    a.mat = QMat(n, n);
    std::vector<NFElem> xpow{F->one()}, ypow{F->one()};
    for (int i = 1; i < F->dx; i++) xpow.push_back(xpow.back() * ix);
    for (int j = 1; j < F->dy; j++) ypow.push_back(ypow.back() * iy);
    for (int j = 0; j < F->dy; j++)
        for (int i = 0; i < F->dx; i++) {
            NFElem img = xpow[i] * (F->dy > 1 ? ypow[j] : F->one());
            int col = i + F->dx * j;
            for (int r = 0; r < n; r++) a.mat.at(r, col) = img.c[r];
        }
    return a;
}

NFElem FieldAut::apply(const NFElem& e) const { return NFElem(F, mat.apply(e.c)); }

FieldAut FieldAut::compose(const FieldAut& inner) const {
    FieldAut r;
    r.F = F;
    r.img_x = apply(inner.img_x);
    if (F->dy > 1) r.img_y = apply(inner.img_y);
    r.mat = mat * inner.mat;
    r.name = name + inner.name;
    return r;
}

bool FieldAut::is_identity() const {
    for (int i = 0; i < mat.rows; i++)
        for (int j = 0; j < mat.cols; j++)
            if (mat.at(i, j) != BigRat(i == j ? 1 : 0)) return false;
    return true;
}

NFElem relative_norm(const std::vector<FieldAut>& subgroup, const NFElem& x) {
    NFElem r = x.F->one();
    for (auto& s : subgroup) r = r * s.apply(x);
    return r;
}

// ---------------------------------------------------------------------------
// SurfaceSpec
// ---------------------------------------------------------------------------

void SurfaceSpec::validate() const {
    if (sgn(a) == 0 || sgn(c) == 0) throw std::invalid_argument("a and c must be nonzero");
    if (is_square(a)) throw std::invalid_argument("a must not be a rational square");
    if (P.degree() < 2) throw std::invalid_argument("deg P must be at least 2");
    QPoly g = poly_gcd(P, P.derivative());
    if (g.degree() > 0) throw std::invalid_argument("P must be separable");
}

std::string SurfaceSpec::str() const {
    std::ostringstream os;
    os << "x^2 - (" << a.get_str() << ")y^2 = (" << c.get_str() << ")(" << poly_to_string(P) << ")";
    return os.str();
}

// ---------------------------------------------------------------------------
// quartic classification
// ---------------------------------------------------------------------------

std::vector<BigRat> rational_roots(const QPoly& p0) {
    std::vector<BigRat> out;
    if (p0.degree() < 1) return out;
    QPoly p = p0;
    BigInt den = 1;
    for (auto& co : p.c) den = lcm(den, co.get_den());
    std::vector<BigInt> ic;
    for (auto& co : p.c) ic.push_back(BigInt(co * BigRat(den)));
    size_t low = 0;
    while (low < ic.size() && sgn(ic[low]) == 0) low++;
    bool zero_root = low > 0;
    std::vector<BigInt> cc(ic.begin() + low, ic.end());
    if (zero_root) out.push_back(BigRat(0));
    if (cc.size() <= 1) return out;
    auto divisors = [](const BigInt& n) {
        std::vector<BigInt> ds{1};
        for (auto& [p2, e] : factor_integer(n)) {
            size_t m = ds.size();
            BigInt pe = 1;
            for (int k = 1; k <= e; k++) {
                pe *= p2;
                for (size_t i = 0; i < m; i++) ds.push_back(ds[i] * pe);
            }
        }
        return ds;
    };
    for (auto& num : divisors(cc.front()))
        for (auto& dd : divisors(cc.back()))
            for (int s : {1, -1}) {
                BigRat cand(s * num, dd);
                cand.canonicalize();
                if (sgn(p0.eval(cand)) == 0 &&
                    std::find(out.begin(), out.end(), cand) == out.end())
                    out.push_back(cand);
            }
    return out;
}

namespace {

QPoly shift_poly(const QPoly& p, const BigRat& s) {  // p(t + s)
    QPoly acc;
    QPoly lin(std::vector<BigRat>{s, BigRat(1)});
    for (int i = p.degree(); i >= 0; i--) acc = acc * lin + QPoly::constant(p.coeff(i));
    return acc;
}

struct Depressed {
    BigRat p, q, r;
};
Depressed depress_quartic(const QPoly& P0) {
    QPoly P = P0.monic();
    QPoly D = shift_poly(P, -P.coeff(3) / 4);
    return Depressed{D.coeff(2), D.coeff(1), D.coeff(0)};
}

// z^3 + 2p z^2 + (p^2 - 4r) z - q^2; the roots are the squares of the
// pair sums x_i + x_j of the roots of the depressed quartic
QPoly pairing_cubic(const Depressed& d) {
    return QPoly(std::vector<BigRat>{-d.q * d.q, d.p * d.p - 4 * d.r, 2 * d.p, BigRat(1)});
}

}  // namespace

bool is_irreducible_quartic(const QPoly& P) {
    if (P.degree() != 4) return false;
    if (!rational_roots(P).empty()) return false;
    Depressed d = depress_quartic(P);
    for (auto& z : rational_roots(pairing_cubic(d))) {
        if (sgn(z) == 0) {
            if (is_square(BigRat(d.p * d.p - 4 * d.r))) return false;
        } else if (is_square(z)) {
            return false;
        }
    }
    return true;
}

std::string quartic_case_name(QuarticCase c) {
    switch (c) {
        case QuarticCase::Z4: return "Z4";
        case QuarticCase::V4: return "V4";
        case QuarticCase::D4_L_in_kt: return "D4_L_in_kt";
        case QuarticCase::D4_L_notin_kt_V4quot: return "D4_L_notin_kt_V4quot";
        case QuarticCase::D4_Z4quot: return "D4_Z4quot";
        case QuarticCase::S4: return "S4";
        case QuarticCase::A4: return "A4";
        case QuarticCase::L_not_in_K: return "L_not_in_K";
    }
    return "?";
}

QuarticClassification quartic_galois_case(const QPoly& P, const BigRat& a) {
    if (P.degree() != 4) throw std::invalid_argument("quartic_galois_case: deg P != 4");
    if (sgn(a) == 0 || is_square(a)) throw std::invalid_argument("a must be a nonsquare");
    if (!is_irreducible_quartic(P)) throw std::invalid_argument("P must be irreducible over Q");

    Depressed d = depress_quartic(P);
    BigRat disc = poly_discriminant(P);
    auto croots = rational_roots(pairing_cubic(d));

    QuarticClassification out;
    out.disc_class = squarefree_part(disc);
    auto cls = [&](const BigRat& x) { return squarefree_part(x); };
    BigInt acl = cls(a);

    if (is_square(disc)) {
        if (croots.empty()) {
            out.galois_type = QuarticCase::A4;
            out.label = QuarticCase::A4;
            return out;
        }
        if (croots.size() != 3) throw std::logic_error("square disc with partial resolvent split");
        out.galois_type = QuarticCase::V4;
        bool in = false;
        for (auto& z : croots) {
            BigRat rep = sgn(z) == 0 ? BigRat(d.p * d.p - 4 * d.r) : z;
            if (cls(rep) == acl) in = true;
        }
        out.label = in ? QuarticCase::V4 : QuarticCase::L_not_in_K;
        return out;
    }

    if (croots.empty()) {
        out.galois_type = QuarticCase::S4;
        out.label = (acl == out.disc_class) ? QuarticCase::S4 : QuarticCase::L_not_in_K;
        return out;
    }
    if (croots.size() != 1) throw std::logic_error("nonsquare disc with several resolvent roots");

    BigRat z0 = croots[0];
    BigRat ds = sgn(z0) == 0 ? BigRat(d.p * d.p - 4 * d.r) : z0;
    out.kt_quad_class = cls(ds);
    if (cls(ds) == out.disc_class) {
        out.galois_type = QuarticCase::Z4;
        out.label = (acl == out.disc_class) ? QuarticCase::Z4 : QuarticCase::L_not_in_K;
        return out;
    }
    out.galois_type = QuarticCase::D4_Z4quot;  // some D4 type; label refines it
    if (acl == cls(ds))
        out.label = QuarticCase::D4_L_in_kt;
    else if (acl == out.disc_class)
        out.label = QuarticCase::D4_L_notin_kt_V4quot;
    else if (acl == cls(ds * disc))
        out.label = QuarticCase::D4_Z4quot;
    else
        out.label = QuarticCase::L_not_in_K;
    return out;
}

// ---------------------------------------------------------------------------
// quartic factorization pattern mod p (probabilistic cross-check oracle)
// ---------------------------------------------------------------------------

namespace {
using ModPoly = std::vector<long>;  // coefficients mod p, lowest first

ModPoly mp_trim(ModPoly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}
ModPoly mp_mul(const ModPoly& a, const ModPoly& b, long p) {
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); i++)
        for (size_t j = 0; j < b.size(); j++) r[i + j] = long((r[i + j] + (__int128)a[i] * b[j]) % p);
    return mp_trim(r);
}
ModPoly mp_mod(ModPoly a, const ModPoly& m, long p) {
    a = mp_trim(a);
    long linv = invert_mod(BigInt(m.back()), BigInt(p)).get_si();
    while (a.size() >= m.size()) {
        long f = long((__int128)a.back() * linv % p);
        size_t off = a.size() - m.size();
        for (size_t i = 0; i < m.size(); i++)
            a[off + i] = long((((a[off + i] - (__int128)f * m[i]) % p) + p) % p);
        a = mp_trim(a);
    }
    return a;
}
ModPoly mp_powmod_x(BigInt e, const ModPoly& m, long p) {  // x^e mod (m, p)
    ModPoly r{1}, b{0, 1};
    b = mp_mod(b, m, p);
    while (sgn(e) > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = mp_mod(mp_mul(r, b, p), m, p);
        b = mp_mod(mp_mul(b, b, p), m, p);
        e >>= 1;
    }
    return r;
}
}  // namespace

std::optional<std::vector<int>> quartic_mod_p_pattern(const QPoly& P0, long p) {
    QPoly P = P0;
    BigInt den = 1;
    for (auto& co : P.c) den = lcm(den, co.get_den());
    std::vector<BigInt> ic;
    for (auto& co : P.c) ic.push_back(BigInt(co * BigRat(den)));
    if (sgn(ic.back() % p) == 0) return std::nullopt;
    BigRat disc = poly_discriminant(P);
    if (sgn(disc.get_num() % p) == 0 || sgn(disc.get_den() % p) == 0) return std::nullopt;

    ModPoly f;
    for (auto& v : ic) {
        BigInt w = v % p;
        if (sgn(w) < 0) w += p;
        f.push_back(w.get_si());
    }
    f = mp_trim(f);
    std::vector<int> pattern;
    for (long x = 0; x < p && f.size() > 1;) {
        __int128 acc = 0;
        for (size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % p;
        if (acc == 0) {
            pattern.push_back(1);
            ModPoly q(f.size() - 1);
            long carry = f.back();
            for (size_t i = f.size() - 1; i-- > 0;) {
                q[i] = carry;
                carry = long((((f[i] + (__int128)carry * x) % p) + p) % p);
            }
            f = mp_trim(q);
            continue;  // repeated roots excluded by the disc check
        }
        x++;
    }
    int deg = int(f.size()) - 1;
    if (deg == 2) {
        pattern.push_back(2);
    } else if (deg == 3) {
        pattern.push_back(3);
    } else if (deg == 4) {
        ModPoly xq = mp_powmod_x(BigInt(p) * BigInt(p), f, p);
        bool splits_quadratic = (xq.size() == 2 && xq[1] == 1 && xq[0] == 0);
        if (splits_quadratic) {
            pattern.push_back(2);
            pattern.push_back(2);
        } else {
            pattern.push_back(4);
        }
    }
    std::sort(pattern.begin(), pattern.end());
    return pattern;
}

// ---------------------------------------------------------------------------
// splitting fields per family
// ---------------------------------------------------------------------------

namespace {

BigRat rat_sqrt(const BigRat& q) {  // assumes q is a square
    BigInt n, d;
    mpz_sqrt(n.get_mpz_t(), q.get_num().get_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q.get_den().get_mpz_t());
    return BigRat(n, d);
}

struct TnM {
    long n;
    BigInt m;
};
std::optional<TnM> match_tn_minus_m(const QPoly& P) {
    int n = P.degree();
    if (P.coeff(n) != 1) return std::nullopt;
    for (int i = 1; i < n; i++)
        if (sgn(P.coeff(i)) != 0) return std::nullopt;
    BigRat m = -P.coeff(0);
    if (m.get_den() != 1 || sgn(m) <= 0) return std::nullopt;
    return TnM{long(n), m.get_num()};
}

void finish_dihedral(SplittingData& sd, const FieldAut& ga, const FieldAut& ha, int ndih) {
    // elements g^i h^j, index i + ndih*j
    const auto& F = sd.K;
    FieldAut idaut = FieldAut::make(F, F->gen_x(), F->dy > 1 ? F->gen_y() : F->one(), "");
    std::vector<FieldAut> gp{idaut};
    for (int i = 1; i < ndih; i++) gp.push_back(ga.compose(gp.back()));
    if (!ga.compose(gp.back()).is_identity()) throw std::logic_error("g does not have order n");
    if (!ha.compose(ha).is_identity()) throw std::logic_error("h does not have order 2");
    FieldAut gh = ga.compose(ha);
    if (!gh.compose(gh).is_identity()) throw std::logic_error("(gh)^2 != 1");
    for (int j = 0; j < 2; j++)
        for (int i = 0; i < ndih; i++) {
            FieldAut e = j ? gp[i].compose(ha) : gp[i];
            std::ostringstream nm;
            if (i == 0 && j == 0) nm << "1";
            if (i) nm << "g" << (i > 1 ? std::to_string(i) : "");
            if (j) nm << "h";
            e.name = nm.str();
            sd.auts.push_back(e);
            sd.elem_names.push_back(e.name);
        }
    sd.dihedral_n = ndih;
    sd.elem_g = 1;
    sd.elem_h = ndih;
    for (auto& s : sd.auts) {
        std::vector<int> perm(sd.roots.size(), -1);
        for (size_t j = 0; j < sd.roots.size(); j++) {
            NFElem img = s.apply(sd.roots[j]);
            for (size_t k = 0; k < sd.roots.size(); k++)
                if (img == sd.roots[k]) { perm[j] = int(k); break; }
            if (perm[j] < 0) throw std::logic_error("automorphism does not permute the roots");
        }
        sd.root_perm.push_back(perm);
        NFElem si = s.apply(sd.sqrt_a);
        if (si == sd.sqrt_a)
            sd.flips_sqrt_a.push_back(false);
        else if (si == -sd.sqrt_a)
            sd.flips_sqrt_a.push_back(true);
        else
            throw std::logic_error("automorphism does not map sqrt(a) to +-sqrt(a)");
    }
}

}  // namespace

SplittingData build_splitting_field(const SurfaceSpec& spec) {
    spec.validate();
    SplittingData sd;
    sd.n = spec.n();
    BigInt acl = squarefree_part(spec.a);

    if (auto tn = match_tn_minus_m(spec.P)) {
        long n = tn->n;
        const BigInt& m = tn->m;
        if (n == 4 && acl == -1 && !is_square(m)) {
            // K = Q(beta, i), beta^4 = m, D4; the root order below is the one
            // the printed Pic matrices in the m-family use
            sd.fam = Family::XM;
            sd.K = NumberField::create(spec.P, parse_poly("t^2+1"), "b", "i");
            NFElem beta = sd.K->gen_x(), iota = sd.K->gen_y();
            sd.roots = {beta, -beta, iota * beta, -(iota * beta)};
            sd.sqrt_a = iota * rat_sqrt(-spec.a);
            FieldAut g = FieldAut::make(sd.K, iota * beta, iota, "g");
            FieldAut h = FieldAut::make(sd.K, beta, -iota, "h");
            finish_dihedral(sd, g, h, 4);
            return sd;
        }
        if ((n == 3 || n == 6) && acl == -3) {
            bool ok = true;
            BigInt mm = m, cr;
            if (n % 3 == 0) ok = ok && (mpz_root(cr.get_mpz_t(), mm.get_mpz_t(), 3) == 0);
            if (n % 2 == 0) ok = ok && !is_square(mm) && !is_square(BigRat(-3) * BigRat(mm));
            if (ok) {
                sd.fam = Family::DihedralTnM;
                sd.K = NumberField::create(spec.P, parse_poly("t^2+3"), "b", "w");
                NFElem beta = sd.K->gen_x(), w = sd.K->gen_y();
                NFElem zeta = (n == 3) ? (w - sd.K->one()) * BigRat(1, 2)
                                       : (w + sd.K->one()) * BigRat(1, 2);
                NFElem zp = sd.K->one();
                for (long j = 0; j < n; j++) {
                    sd.roots.push_back(zp * beta);
                    zp = zp * zeta;
                }
                sd.sqrt_a = w * rat_sqrt(spec.a / BigRat(-3));
                FieldAut g = FieldAut::make(sd.K, zeta * beta, w, "g");
                FieldAut h = FieldAut::make(sd.K, beta, -w, "h");
                finish_dihedral(sd, g, h, int(n));
                return sd;
            }
        }
        if (n >= 3) {
            // module-level dihedral family: permutation data only
            sd.fam = Family::DihedralSymbolic;
            sd.dihedral_n = int(n);
            sd.elem_g = 1;
            sd.elem_h = int(n);
            for (int j = 0; j < 2; j++)
                for (int i = 0; i < n; i++) {
                    std::vector<int> perm(n);
                    for (int r = 0; r < n; r++) {
                        int t = j ? int((n - r) % n) : r;  // h: r -> -r, fixing e_1
                        perm[r] = int((t + i) % n);        // then g^i shifts
                    }
                    sd.root_perm.push_back(perm);
                    sd.flips_sqrt_a.push_back(j == 1);
                    std::ostringstream nm;
                    if (i == 0 && j == 0) nm << "1";
                    if (i) nm << "g" << (i > 1 ? std::to_string(i) : "");
                    if (j) nm << "h";
                    sd.elem_names.push_back(nm.str());
                }
            return sd;
        }
    }

    if (sd.n == 2) {
        BigRat disc = poly_discriminant(spec.P);
        BigInt dcl = squarefree_part(disc);
        if (dcl == acl)
            throw std::runtime_error("not implemented for this Galois type: K = L quadratic");
        sd.fam = Family::QuadraticP;
        QPoly fx(std::vector<BigRat>{BigRat(-dcl), BigRat(0), BigRat(1)});
        QPoly fy(std::vector<BigRat>{BigRat(-acl), BigRat(0), BigRat(1)});
        sd.K = NumberField::create(fx, fy, "r", "s");
        NFElem x = sd.K->gen_x(), y = sd.K->gen_y();
        BigRat c2 = spec.P.coeff(2), c1 = spec.P.coeff(1);
        BigRat scale = rat_sqrt(disc / BigRat(dcl));
        NFElem e1 = (x * scale - sd.K->from_rat(c1)) * (BigRat(1) / (2 * c2));
        NFElem e2 = (-(x * scale) - sd.K->from_rat(c1)) * (BigRat(1) / (2 * c2));
        sd.roots = {e1, e2};
        sd.sqrt_a = y * rat_sqrt(spec.a / BigRat(acl));
        FieldAut g = FieldAut::make(sd.K, -x, y, "g");
        FieldAut h = FieldAut::make(sd.K, x, -y, "h");
        finish_dihedral(sd, g, h, 2);
        return sd;
    }

    if (sd.n == 4 && is_irreducible_quartic(spec.P)) {
        auto cl = quartic_galois_case(spec.P, spec.a);
        if (cl.galois_type == QuarticCase::V4 && cl.label == QuarticCase::V4 &&
            spec.P.coeff(4) == 1 && sgn(spec.P.coeff(3)) == 0 && sgn(spec.P.coeff(1)) == 0 &&
            is_square(spec.P.coeff(0))) {
            BigRat p = spec.P.coeff(2), s = rat_sqrt(spec.P.coeff(0));
            sd.fam = Family::Biquadratic;
            sd.K = NumberField::create(spec.P, "al");
            NFElem al = sd.K->gen_x();
            NFElem sa = al.inverse() * s;
            sd.roots = {al, -al, sa, -sa};
            NFElem sq;
            FieldAut g, h;
            if (same_square_class(spec.a, -p - 2 * s)) {
                sq = (al - sa) * rat_sqrt(spec.a / (-p - 2 * s));
                g = FieldAut::make(sd.K, -sa, sd.K->one(), "g");
                h = FieldAut::make(sd.K, sa, sd.K->one(), "h");
            } else if (same_square_class(spec.a, -p + 2 * s)) {
                sq = (al + sa) * rat_sqrt(spec.a / (-p + 2 * s));
                g = FieldAut::make(sd.K, sa, sd.K->one(), "g");
                h = FieldAut::make(sd.K, -al, sd.K->one(), "h");
            } else {
                BigRat rep = p * p - 4 * spec.P.coeff(0);
                if (!same_square_class(spec.a, rep))
                    throw std::logic_error("V4 label without a matching subfield class");
                sq = (al * al * BigRat(2) + sd.K->from_rat(p)) * rat_sqrt(spec.a / rep);
                g = FieldAut::make(sd.K, -al, sd.K->one(), "g");
                h = FieldAut::make(sd.K, sa, sd.K->one(), "h");
            }
            sd.sqrt_a = sq;
            if (!(sq * sq == sd.K->from_rat(spec.a)))
                throw std::logic_error("sqrt(a) expression is wrong");
            finish_dihedral(sd, g, h, 2);
            return sd;
        }
        if (cl.galois_type == QuarticCase::Z4 && cl.label == QuarticCase::Z4) {
            // roots must be power-expressible (cyclotomic-style quartics)
            auto K = NumberField::create(spec.P.monic(), "z");
            NFElem al = K->gen_x();
            for (long k = 2; k <= 16; k++) {
                NFElem cand = al.pow(k);
                if (!eval_poly(spec.P.monic(), cand).is_zero()) continue;
                FieldAut s = FieldAut::make(K, cand, K->one(), "g");
                FieldAut s2 = s.compose(s);
                if (s2.is_identity() || !s2.compose(s2).is_identity()) continue;
                sd.fam = Family::CyclicQuartic;
                sd.cyclic = true;
                sd.K = K;
                sd.dihedral_n = 4;
                sd.roots = {al, s.apply(al), s2.apply(al), s.compose(s2).apply(al)};
                NFElem delta = K->one();
                for (int i = 0; i < 4; i++)
                    for (int j = i + 1; j < 4; j++) delta = delta * (sd.roots[i] - sd.roots[j]);
                BigRat disc = poly_discriminant(spec.P.monic());
                sd.sqrt_a = delta * rat_sqrt(spec.a / disc);
                if (!(sd.sqrt_a * sd.sqrt_a == K->from_rat(spec.a)))
                    throw std::logic_error("sqrt(a) via the root Vandermonde failed");
                FieldAut cur = FieldAut::make(K, al, K->one(), "1");
                for (int i = 0; i < 4; i++) {
                    cur.name = i == 0 ? "1" : (i == 1 ? "g" : "g" + std::to_string(i));
                    sd.auts.push_back(cur);
                    sd.elem_names.push_back(cur.name);
                    cur = s.compose(cur);
                }
                sd.elem_g = 1;
                sd.elem_h = -1;
                for (auto& au : sd.auts) {
                    std::vector<int> perm(4, -1);
                    for (int j = 0; j < 4; j++) {
                        NFElem img = au.apply(sd.roots[j]);
                        for (int t = 0; t < 4; t++)
                            if (img == sd.roots[t]) perm[j] = t;
                        if (perm[j] < 0) throw std::logic_error("roots not permuted");
                    }
                    sd.root_perm.push_back(perm);
                    NFElem si = au.apply(sd.sqrt_a);
                    sd.flips_sqrt_a.push_back(si == -sd.sqrt_a);
                }
                return sd;
            }
        }
    }

    throw std::runtime_error("not implemented for this Galois type: " + spec.str());
}

// ---------------------------------------------------------------------------
// Eisenstein uniformizer search
// ---------------------------------------------------------------------------

bool is_eisenstein_at(const QPoly& f, const BigInt& p) {
    int d = f.degree();
    if (d < 1 || f.coeff(d) != 1) return false;
    for (int i = 0; i < d; i++) {
        const BigRat& ci = f.coeff(i);
        if (ci.get_den() != 1) return false;
        if (sgn(ci.get_num() % p) != 0) return false;
    }
    BigInt c0 = f.coeff(0).get_num();
    return sgn((c0 / p) % p) != 0;
}

namespace {
// p-valuation of a rational, +huge for 0
long val_p(const BigRat& x, const BigInt& p) {
    if (sgn(x) == 0) return 1 << 20;
    long v = 0;
    BigInt n = x.get_num();
    while (sgn(n % p) == 0) { n /= p; v++; }
    BigInt d = x.get_den();
    while (sgn(d % p) == 0) { d /= p; v--; }
    return v;
}
}  // namespace

std::optional<EisensteinData> eisenstein_uniformizer(const SplittingData& sd, const BigInt& p) {
    if (!sd.K) return std::nullopt;
    const auto& K = sd.K;
    int deg = K->degree();
    // direct candidates: 0/1 combinations of the basis monomials, also halved
    std::vector<NFElem> bases;
    for (int mask = 1; mask < (1 << deg); mask++) {
        NFElem x = K->zero();
        for (int b = 0; b < deg; b++)
            if (mask & (1 << b)) x = x + NFElem(K, [&] {
                                      std::vector<BigRat> cc(deg);
                                      cc[b] = 1;
                                      return cc;
                                  }());
        bases.push_back(x);
        if (p == 2) bases.push_back(x * BigRat(1, 2));
    }
    // pass 1: a candidate that is Eisenstein outright
    for (auto& x : bases) {
        QPoly cp = x.char_poly();
        if (is_eisenstein_at(cp, p)) return EisensteinData{x, cp};
    }
    // pass 2 (m-family at p = 2): an odd-valuation candidate, adjusted to
    // valuation 1/deg by monomials in beta, 1+i and p, then re-tested
    if (sd.fam == Family::XM && deg == 8) {
        NFElem beta = K->gen_x();
        NFElem onepi = K->one() + K->gen_y();
        for (auto& x : bases) {
            QPoly cp = x.char_poly();
            BigRat n0 = cp.coeff(0);
            if (sgn(n0) == 0) continue;
            long v = val_p(n0, p);  // = deg * v(x) at a unique place above p
            if (v % 2 == 0) continue;
            for (long aexp : {1L, 3L})
                for (long c1 = -4; c1 <= 4; c1++)
                    for (long c2 = -2; c2 <= 2; c2++) {
                        long rem = 1 - aexp * v - 2 * c1 - 4 * c2;
                        if (rem % 8 != 0) continue;
                        long c3 = rem / 8;
                        if (c3 < -8 || c3 > 8) continue;
                        NFElem cand = x.pow(aexp) * beta.pow(c1) * onepi.pow(c2);
                        BigRat pw(1);
                        for (long k = 0; k < std::abs(c3); k++) pw *= BigRat(p);
                        cand = cand * (c3 >= 0 ? pw : BigRat(1) / pw);
                        QPoly cp2 = cand.char_poly();
                        if (is_eisenstein_at(cp2, p)) return EisensteinData{cand, cp2};
                    }
        }
    }
    return std::nullopt;
}

}  // namespace chatelet::nf
