#include "wpc/morphism.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include "json.hpp"

namespace wpc {

long WeightedHomogeneousPoly::weighted_degree(const WeightVector& src) const {
    if (monomials.empty()) throw std::invalid_argument("zero polynomial has no degree");
    long deg = -1;
    for (auto& m : monomials) {
        if (m.exps.size() != src.w.size())
            throw std::invalid_argument("monomial arity mismatch");
        long d = 0;
        for (size_t i = 0; i < m.exps.size(); ++i) {
            if (m.exps[i] < 0) throw std::invalid_argument("negative exponent");
            d += m.exps[i] * src.w[i];
        }
        if (deg < 0) deg = d;
        else if (deg != d) throw std::invalid_argument("polynomial is not weighted homogeneous");
    }
    return deg;
}

FieldElement WeightedHomogeneousPoly::evaluate(const BaseField& F,
                                               const std::vector<FieldElement>& xs) const {
    FieldElement acc(Rat(0));
    for (auto& m : monomials) {
        FieldElement term = m.coeff;
        for (size_t i = 0; i < m.exps.size(); ++i)
            if (m.exps[i]) term = fe_mul(F, term, fe_pow(F, xs[i], m.exps[i]));
        acc = fe_add(acc, term);
    }
    return acc;
}

WeightedMorphism identity_morphism(const WeightVector& w) {
    WeightedMorphism f;
    f.src = f.dst = w;
    f.e_f = 1;
    f.degree = 1;
    f.name = "id" + w.str();
    for (size_t i = 0; i < w.w.size(); ++i) {
        std::vector<long> e(w.w.size(), 0);
        e[i] = 1;
        f.polys.push_back({{Monomial{e, FieldElement(Rat(1))}}});
    }
    return f;
}

bool WeightedMorphism::is_identity() const {
    if (!(src == dst) || e_f != 1 || polys.size() != src.w.size()) return false;
    for (size_t i = 0; i < polys.size(); ++i) {
        if (polys[i].monomials.size() != 1) return false;
        auto& m = polys[i].monomials[0];
        if (!(m.coeff == FieldElement(Rat(1)))) return false;
        for (size_t j = 0; j < m.exps.size(); ++j)
            if (m.exps[j] != (j == i ? 1 : 0)) return false;
    }
    return true;
}

namespace {

// univariate polynomial as coefficient vector, constant term first
using Poly1 = std::vector<FieldElement>;

void trim(const BaseField&, Poly1& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

// dehomogenize: substitute (fixed coordinate = 1), collect powers of the other
Poly1 dehomogenize(const BaseField& F, const WeightedHomogeneousPoly& f, int var) {
    Poly1 p;
    for (auto& m : f.monomials) {
        size_t k = (size_t)m.exps[var];
        if (p.size() <= k) p.resize(k + 1, FieldElement(Rat(0)));
        p[k] = fe_add(p[k], m.coeff);
    }
    trim(F, p);
    return p;
}

FieldElement det(const BaseField& F, std::vector<std::vector<FieldElement>> M) {
    size_t n = M.size();
    FieldElement d(Rat(1));
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && M[piv][c].is_zero()) ++piv;
        if (piv == n) return FieldElement(Rat(0));
        if (piv != c) {
            std::swap(M[piv], M[c]);
            d = fe_neg(d);
        }
        d = fe_mul(F, d, M[c][c]);
        for (size_t r = c + 1; r < n; ++r) {
            if (M[r][c].is_zero()) continue;
            FieldElement q = fe_div(F, M[r][c], M[c][c]);
            for (size_t k = c; k < n; ++k)
                M[r][k] = fe_sub(M[r][k], fe_mul(F, q, M[c][k]));
        }
    }
    return d;
}

FieldElement resultant1(const BaseField& F, const Poly1& p, const Poly1& q) {
    if (p.empty() || q.empty()) return FieldElement(Rat(0));
    long m = (long)p.size() - 1, n = (long)q.size() - 1;
    if (m == 0 && n == 0) return FieldElement(Rat(1));
    if (m == 0) return fe_pow(F, p[0], n);
    if (n == 0) return fe_pow(F, q[0], m);
    std::vector<std::vector<FieldElement>> S(m + n,
                                             std::vector<FieldElement>(m + n, FieldElement(Rat(0))));
    for (long r = 0; r < n; ++r)
        for (long k = 0; k <= m; ++k) S[r][r + m - k] = p[k];
    for (long r = 0; r < m; ++r)
        for (long k = 0; k <= n; ++k) S[n + r][r + n - k] = q[k];
    return det(F, S);
}

}  // namespace

std::vector<FieldElement> coordinate_candidates(const BaseField& F, int wi, double B) {
    std::vector<FieldElement> out;
    const auto& inv = field_invariants(F);
    double njmax = 1;
    for (auto& c : inv.class_reps) njmax = std::max(njmax, ideal_norm(F, c).get_d());
    if (F.is_rational()) {
        long M = (long)std::floor(std::pow(B, wi) + 1e-9);
        for (long v = -M; v <= M; ++v) out.emplace_back(Rat(v));
        return out;
    }
    if (F.D() < 0) {
        // N(a + b*omega) = (a + tb/2)^2 + |disc| b^2 / 4 <= (B * njmax)^{w_i}
        double Nb = std::pow(B * njmax, wi) * (1 + 1e-9);
        double t = F.is_rational() ? 0 : (double)F.omega_trace();
        long bmax = (long)std::floor(std::sqrt(4 * Nb / std::abs(F.discriminant().get_d()))) + 1;
        for (long b = -bmax; b <= bmax; ++b) {
            double c = -0.5 * t * b, r = std::sqrt(std::max(0.0, Nb));
            for (long a = (long)std::floor(c - r) - 1; a <= (long)std::ceil(c + r) + 1; ++a) {
                FieldElement x{Rat(a), Rat(b)};
                if (fe_norm(F, x).get_d() <= Nb) out.push_back(x);
            }
        }
        return out;
    }
    // real quadratic: |s1(x_i)| <= (B*njmax*eps^2)^{w_i/2... } use the cell bounds with margin
    double R = field_invariants(F).regulator;
    double M1 = std::pow(B * njmax, wi / 1.0);  // generous: m1 m2 <= B*NJ, m1 < m2 eps^2
    double eps = std::exp(R);
    double b1 = std::pow(std::sqrt(B * njmax) * eps, wi) * (1 + 1e-9);
    double b2 = std::pow(std::sqrt(B * njmax), wi) * (1 + 1e-9);
    (void)M1;
    double sD = std::sqrt((double)F.D());
    double half = F.omega_is_half() ? 0.5 : 0.0;
    // a + b*omega with |s1| <= b1, |s2| <= b2
    double bmaxd = (b1 + b2) / (2 * sD * (half ? 0.5 : 1.0));
    long bmax = (long)std::ceil(bmaxd) + 1;
    for (long b = -bmax; b <= bmax; ++b) {
        double wb1 = half ? b * (1 + sD) / 2 : b * sD;
        double wb2 = half ? b * (1 - sD) / 2 : -b * sD;
        double lo = std::max(-b1 - wb1, -b2 - wb2), hi = std::min(b1 - wb1, b2 - wb2);
        for (long a = (long)std::floor(lo) - 1; a <= (long)std::ceil(hi) + 1; ++a)
            out.emplace_back(Rat(a), Rat(b));
    }
    return out;
}

// all canonical orbit representatives of height <= B (small bounds only)
std::vector<NormalizedRep> small_height_points(const BaseField& F, const WeightVector& w,
                                               const Rat& B) {
    double Bd = B.get_d();
    std::vector<std::vector<FieldElement>> cand;
    for (int wi : w.w) cand.push_back(coordinate_candidates(F, wi, Bd));
    std::vector<NormalizedRep> pts;
    std::set<std::string> seen;
    std::vector<size_t> idx(w.w.size(), 0);
    while (true) {
        std::vector<FieldElement> xs;
        xs.reserve(idx.size());
        bool zero = true;
        for (size_t i = 0; i < idx.size(); ++i) {
            xs.push_back(cand[i][idx[i]]);
            zero = zero && xs.back().is_zero();
        }
        if (!zero) {
            WeightedPoint x(F, w, xs);
            if (height(x).leq(B)) {
                NormalizedRep r = normalize(x);
                if (seen.insert(r.key()).second) pts.push_back(std::move(r));
            }
        }
        size_t i = 0;
        for (; i < idx.size(); ++i) {
            if (++idx[i] < cand[i].size()) break;
            idx[i] = 0;
        }
        if (i == idx.size()) break;
    }
    return pts;
}

void validate_morphism(const BaseField& F, const WeightedMorphism& f) {
    if (f.src.w.size() != f.dst.w.size())
        throw std::invalid_argument("source/target dimension mismatch");
    if (f.polys.size() != f.dst.w.size())
        throw std::invalid_argument("wrong number of component polynomials");
    if (f.e_f < 1) throw std::invalid_argument("e(f) must be positive");
    for (size_t i = 0; i < f.polys.size(); ++i) {
        if (f.polys[i].is_zero())
            throw std::invalid_argument("zero component polynomial");
        if (f.polys[i].weighted_degree(f.src) != f.e_f * f.dst.w[i])
            throw std::invalid_argument("component degree is not e(f) * w_i");
        for (auto& m : f.polys[i].monomials)
            if (!fe_is_integral(F, m.coeff))
                throw std::invalid_argument("non-integral coefficient");
    }
    // only common zero is the origin
    if (f.src.w.size() == 2) {
        if (morphism_resultant(F, f).is_zero())
            throw std::invalid_argument("components share a nontrivial common zero");
        return;
    }
    if (!F.is_rational())
        throw std::invalid_argument("common-zero validation implemented for n=1 over this field");
    // probabilistic: no nonzero common root over F_p for several primes
    if (f.src.w.size() > 3) throw std::invalid_argument("common-zero validation limited to n<=2");
    auto vanish_all = [&](long p, const std::vector<long>& xs) {
        for (auto& poly : f.polys) {
            Int v = 0;
            for (auto& m : poly.monomials) {
                Int t = m.coeff.a.get_num() % p;
                for (size_t i = 0; i < xs.size(); ++i)
                    for (long k = 0; k < m.exps[i]; ++k) t = (t * xs[i]) % p;
                v = (v + t) % p;
            }
            if (v % p != 0) return false;
        }
        return true;
    };
    for (long p : {1009L, 1013L, 1019L, 1021L, 1031L}) {
        // projective representatives: first nonzero coordinate normalized to 1
        for (long y = 0; y < p; ++y)
            for (long z = 0; z < p; ++z)
                if (vanish_all(p, {1, y, z}))
                    throw std::invalid_argument("components share a nontrivial common zero mod p");
        for (long z = 0; z < p; ++z)
            if (vanish_all(p, {0, 1, z}))
                throw std::invalid_argument("components share a nontrivial common zero mod p");
        if (vanish_all(p, {0, 0, 1}))
            throw std::invalid_argument("components share a nontrivial common zero mod p");
    }
}

WeightedPoint evaluate(const BaseField& F, const WeightedMorphism& f, const WeightedPoint& x) {
    if (!(x.weights == f.src)) throw std::invalid_argument("point not in the source space");
    std::vector<FieldElement> ys;
    ys.reserve(f.polys.size());
    for (auto& p : f.polys) ys.push_back(p.evaluate(F, x.coords));
    WeightedPoint y(F, f.dst, std::move(ys));
    if (y.is_zero()) throw std::domain_error("morphism undefined at point");
    return y;
}

bool is_representable(const WeightedMorphism& f) {
    for (int wi : f.src.w)
        if (std::gcd((long)wi, f.e_f) != 1) return false;
    return true;
}

bool weight_compatibility_check(const WeightedMorphism& f) {
    std::vector<int> a = f.src.w, b = f.dst.w;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > f.e_f * b[i]) return false;
    return true;
}

HeightValue height_through(const BaseField& F, const WeightedMorphism& f, const WeightedPoint& x) {
    return height(evaluate(F, f, x));
}

HeightValue twisted_height(const BaseField& F, const WeightedMorphism& f, const WeightedPoint& x,
                           const FieldElement& d, int tau) {
    return height(twist(evaluate(F, f, x), d, tau));
}

IntegralIdeal defect(const BaseField& F, const WeightedMorphism& f, const WeightedPoint& x) {
    NormalizedRep r = normalize(x);
    WeightedPoint a(F, f.src, r.coords);
    WeightedPoint y = evaluate(F, f, a);
    IntegralIdeal Jy = scaling_ideal_of_rep(F, f.dst, y.coords);
    IntegralIdeal Je = ideal_pow(F, r.scaling, (unsigned long)f.e_f);
    return ideal_div(F, Jy, Je);
}

FieldElement morphism_resultant(const BaseField& F, const WeightedMorphism& f) {
    if (f.src.w.size() != 2) throw std::invalid_argument("resultant needs n = 1");
    FieldElement r0 = resultant1(F, dehomogenize(F, f.polys[0], 0), dehomogenize(F, f.polys[1], 0));
    FieldElement r1 = resultant1(F, dehomogenize(F, f.polys[0], 1), dehomogenize(F, f.polys[1], 1));
    return fe_mul(F, r0, r1);
}

std::vector<PrimeIdeal> defect_candidate_primes(const BaseField& F, const WeightedMorphism& f) {
    std::vector<PrimeIdeal> out;
    if (f.is_identity()) return out;
    FieldElement r = morphism_resultant(F, f);
    if (r.is_zero()) throw std::invalid_argument("degenerate morphism");
    for (auto& [P, e] : factor_ideal(F, ideal_principal(F, r))) out.push_back(P);
    return out;
}

DefectSet defect_set(const BaseField& F, const WeightedMorphism& f, const Rat& height_bound,
                     const std::vector<PrimeIdeal>&) {
    DefectSet out;
    auto collect = [&](const Rat& B) {
        std::set<IntegralIdeal> ds;
        for (auto& r : small_height_points(F, f.src, B))
            ds.insert(defect(F, f, WeightedPoint(F, f.src, r.coords)));
        return ds;
    };
    std::set<IntegralIdeal> s1 = collect(height_bound);
    std::set<IntegralIdeal> s2 = collect(height_bound * 2);
    out.defects = s2;
    out.stabilized = (s1 == s2);
    return out;
}

std::vector<WeightedMorphism> load_morphism_catalog(const BaseField& F, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open morphism catalog: " + path);
    nlohmann::json doc = nlohmann::json::parse(in);
    std::vector<WeightedMorphism> out;
    for (auto& e : doc) {
        WeightedMorphism f;
        f.name = e.at("name").get<std::string>();
        f.src = WeightVector(e.at("src").get<std::vector<int>>());
        f.dst = WeightVector(e.at("dst").get<std::vector<int>>());
        f.e_f = e.at("e").get<long>();
        f.degree = e.at("degree").get<long>();
        for (auto& pj : e.at("polys")) {
            WeightedHomogeneousPoly poly;
            for (auto& mj : pj)
                poly.monomials.push_back(
                    {mj.at("exps").get<std::vector<long>>(), fe_parse(mj.at("coeff").get<std::string>())});
            f.polys.push_back(std::move(poly));
        }
        validate_morphism(F, f);
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace wpc
