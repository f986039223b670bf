#include "wpc/wproj.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace wpc {

void WeightVector::validate() const {
    if (w.empty()) throw std::invalid_argument("empty weight vector");
    for (int wi : w)
        if (wi < 1) throw std::invalid_argument("weights must be positive");
}

long WeightVector::total() const {
    long s = 0;
    for (int wi : w) s += wi;
    return s;
}

int WeightVector::wmin() const {
    int m = w[0];
    for (int wi : w) m = std::min(m, wi);
    return m;
}

long WeightVector::lcm() const {
    long l = 1;
    for (int wi : w) l = std::lcm(l, (long)wi);
    return l;
}

int WeightVector::gcd_all() const {
    int g = 0;
    for (int wi : w) g = std::gcd(g, wi);
    return g;
}

std::string WeightVector::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
    os << ")";
    return os.str();
}

bool WeightedPoint::is_zero() const {
    for (auto& c : coords)
        if (!c.is_zero()) return false;
    return true;
}

bool fe_less(const FieldElement& x, const FieldElement& y) {
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
}

std::string NormalizedRep::key() const {
    std::ostringstream os;
    for (auto& c : coords) os << fe_str(c) << ";";
    os << scaling.str();
    return os.str();
}

namespace {

// scale coordinates by lambda: x_i -> lambda^{w_i} x_i
void scale_coords(const BaseField& F, const WeightVector& w, std::vector<FieldElement>& xs,
                  const FieldElement& lambda) {
    for (size_t i = 0; i < xs.size(); ++i)
        xs[i] = fe_mul(F, fe_pow(F, lambda, w.w[i]), xs[i]);
}

// both real embeddings of an element (real quadratic fields)
std::pair<QuadExact, QuadExact> embed2(const BaseField& F, const FieldElement& x) {
    return {fe_embed(F, x), fe_embed(F, fe_conj(F, x))};
}

// per-place max_i |x_i|_v^{lcm/w_i}, exact
QuadExact place_max(const BaseField& F, const WeightVector& w,
                    const std::vector<FieldElement>& xs, long L, bool second_embedding) {
    bool have = false;
    QuadExact best{Rat(0)};
    for (size_t i = 0; i < xs.size(); ++i) {
        if (xs[i].is_zero()) continue;
        QuadExact term{Rat(0)};
        if (F.is_rational()) {
            Rat a = xs[i].a < 0 ? Rat(-xs[i].a) : xs[i].a;
            term = QuadExact(rat_pow(a, L / w.w[i]));
        } else if (F.r2() == 1) {
            Rat n = fe_norm(F, xs[i]);  // modulus squared
            term = QuadExact(rat_pow(n, L / w.w[i]));
        } else {
            QuadExact e = second_embedding ? fe_embed(F, fe_conj(F, xs[i])) : fe_embed(F, xs[i]);
            term = e.abs().pow(L / w.w[i]);
        }
        if (!have || best < term) { best = term; have = true; }
    }
    return best;
}

}  // namespace

IntegralIdeal scaling_ideal_of_rep(const BaseField& F, const WeightVector& w,
                                   const std::vector<FieldElement>& coords) {
    // assumes integral coordinates: every contributing prime divides the coordinate gcd
    IntegralIdeal G;
    bool have = false;
    for (auto& c : coords) {
        if (c.is_zero()) continue;
        if (!fe_is_integral(F, c)) throw std::invalid_argument("scaling_ideal_of_rep: non-integral");
        IntegralIdeal I = ideal_principal(F, c);
        G = have ? ideal_add(F, G, I) : I;
        have = true;
    }
    if (!have) throw std::invalid_argument("not a projective point");
    IntegralIdeal J = ideal_one(F);
    if (G.is_unit_ideal()) return J;
    for (auto& [P, e] : factor_ideal(F, G)) {
        long m = -1;
        for (size_t i = 0; i < coords.size(); ++i) {
            if (coords[i].is_zero()) continue;
            long v = element_valuation(F, coords[i], P) / w.w[i];  // floor: valuations >= 0
            if (m < 0 || v < m) m = v;
            if (m == 0) break;
        }
        if (m > 0) J = ideal_mul(F, J, ideal_pow(F, P.ideal, m));
    }
    return J;
}

NormalizedRep normalize(const WeightedPoint& x) {
    const BaseField& F = x.field;
    const WeightVector& w = x.weights;
    if (x.is_zero()) throw std::invalid_argument("not a projective point");
    if (x.coords.size() != w.w.size()) throw std::invalid_argument("coordinate/weight mismatch");

    std::vector<FieldElement> xs = x.coords;

    // clear denominators
    Int den = 1;
    for (auto& c : xs) {
        den = lcm(den, c.a.get_den());
        den = lcm(den, c.b.get_den());
    }
    if (den != 1) scale_coords(F, w, xs, FieldElement(Rat(den)));

    // move the scaling ideal into the class-representative set
    IntegralIdeal J = scaling_ideal_of_rep(F, w, xs);
    long cls = ideal_class_index(F, J);
    const IntegralIdeal& rep = field_invariants(F).class_reps[cls];
    if (J != rep) {
        FieldElement lambda;
        if (F.is_rational()) {
            lambda = FieldElement(Rat(1, J.a));
        } else {
            // (lambda) = rep / J = rep * conj(J) / N(J)
            auto g = principal_generator(F, ideal_mul(F, rep, ideal_conj(F, J)));
            if (!g) throw std::logic_error("class representative mismatch");
            lambda = fe_div(F, *g, FieldElement(Rat(ideal_norm(F, J))));
        }
        scale_coords(F, w, xs, lambda);
        J = rep;
    }

    // real quadratic: reduce into the unit cell m2^L <= m1^L < m2^L * eps^{2L}
    if (!F.is_rational() && F.D() > 0) {
        long L = w.lcm();
        FieldElement u = fundamental_unit(F);
        FieldElement uinv = fe_inv(F, u);
        QuadExact epsL = fe_embed(F, u).abs().pow(L);
        QuadExact eps2L = epsL * epsL;
        QuadExact m1 = place_max(F, w, xs, L, false);
        QuadExact m2 = place_max(F, w, xs, L, true);
        // jump close with logarithms, then correct exactly
        double R = fe_embed(F, u).abs().log_approx();
        double t = (m2.log_approx() - m1.log_approx()) / (2.0 * L * R);
        long k = std::isfinite(t) ? (long)std::floor(std::clamp(t, -1e15, 1e15) + 0.5) : 0;
        if (k != 0) {
            scale_coords(F, w, xs, k > 0 ? fe_pow(F, u, k) : fe_pow(F, uinv, -k));
            m1 = place_max(F, w, xs, L, false);
            m2 = place_max(F, w, xs, L, true);
        }
        while (m1 < m2) {
            scale_coords(F, w, xs, u);
            m1 = m1 * epsL;
            m2 = place_max(F, w, xs, L, true);
        }
        while (!(m1 < m2 * eps2L)) {
            scale_coords(F, w, xs, uinv);
            m1 = place_max(F, w, xs, L, false);
            m2 = place_max(F, w, xs, L, true);
        }
    }

    // canonical torsion-unit orbit representative: lexicographically largest tuple
    std::vector<FieldElement> best = xs;
    for (auto& t : torsion_units(F)) {
        std::vector<FieldElement> cand = xs;
        scale_coords(F, w, cand, t);
        for (size_t i = 0; i < cand.size(); ++i) {
            if (cand[i] == best[i]) continue;
            if (fe_less(best[i], cand[i])) best = cand;
            break;
        }
    }

    NormalizedRep out;
    out.coords = std::move(best);
    out.scaling = J;
    out.class_index = cls;
    return out;
}

std::pair<IntegralIdeal, long> scaling_ideal(const WeightedPoint& x) {
    NormalizedRep r = normalize(x);
    return {r.scaling, r.class_index};
}

HeightValue height_of_rep(const BaseField& F, const WeightVector& w,
                          const std::vector<FieldElement>& coords, const IntegralIdeal& J) {
    long L = w.lcm();
    long d = F.degree();
    Rat nJ(ideal_norm(F, J));
    HeightValue h;
    h.exponent = L * d;
    if (F.is_rational()) {
        h.pow = place_max(F, w, coords, L, false) * QuadExact(1 / rat_pow(nJ, L));
    } else if (F.r2() == 1) {
        QuadExact htL = place_max(F, w, coords, L, false) * QuadExact(1 / rat_pow(nJ, L));
        h.pow = htL * htL;
    } else {
        QuadExact htL = place_max(F, w, coords, L, false) * place_max(F, w, coords, L, true) *
                        QuadExact(1 / rat_pow(nJ, L));
        h.pow = htL * htL;
    }
    return h;
}

HeightValue height(const WeightedPoint& x) {
    NormalizedRep r = normalize(x);
    return height_of_rep(x.field, x.weights, r.coords, r.scaling);
}

double HeightValue::approx() const { return std::exp(pow.log_approx() / (double)exponent); }

bool HeightValue::leq(const Rat& bound) const {
    if (bound <= 0) return false;
    return pow <= QuadExact(rat_pow(bound, exponent));
}

bool HeightValue::operator==(const HeightValue& o) const {
    if (exponent == o.exponent) return pow == o.pow;
    long l = std::lcm(exponent, o.exponent);
    return pow.pow(l / exponent) == o.pow.pow(l / o.exponent);
}

WeightedPoint twist(const WeightedPoint& x, const FieldElement& d, int tau) {
    if (tau < 1 || x.weights.gcd_all() % tau != 0)
        throw std::invalid_argument("invalid twist exponent");
    if (d.is_zero()) throw std::invalid_argument("twist by zero");
    std::vector<FieldElement> ys(x.coords.size());
    for (size_t i = 0; i < ys.size(); ++i)
        ys[i] = fe_mul(x.field, fe_pow(x.field, d, x.weights.w[i] / tau), x.coords[i]);
    return WeightedPoint(x.field, x.weights, std::move(ys));
}

bool point_equal(const WeightedPoint& x, const WeightedPoint& y) {
    if (!(x.field == y.field) || !(x.weights == y.weights))
        throw std::invalid_argument("point_equal: mismatched spaces");
    return normalize(x).key() == normalize(y).key();
}

std::string point_to_json(const WeightedPoint& x) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto& c : x.coords) arr.push_back(fe_str(c));
    return arr.dump();
}

WeightedPoint point_from_json(const BaseField& F, const WeightVector& w, const std::string& js) {
    auto arr = nlohmann::json::parse(js);
    std::vector<FieldElement> xs;
    for (auto& s : arr) xs.push_back(fe_parse(s.get<std::string>()));
    return WeightedPoint(F, w, std::move(xs));
}

}  // namespace wpc
