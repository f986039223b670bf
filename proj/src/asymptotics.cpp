#include "wpc/asymptotics.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <functional>
#include <mutex>
#include <sstream>

#include "json.hpp"
#include "wpc/morphism.hpp"

namespace wpc {

namespace {

constexpr double kPi = 3.14159265358979323846;

double rat_to_double(const Rat& r) { return r.get_d(); }

// ---- p-adic digit refinement over Q ---------------------------------------
//
// All local densities below are conditional densities on the w_src-primitive
// pairs (u0, u1) in Z_p^2 (not both u_i divisible by p^{w_i}). A class of
// pairs mod p^k is decided by evaluating the map at an integer representative:
// a valuation read off the value is trusted only below k, since congruent
// inputs move the value by multiples of p^k. Undecided classes split into
// their p^2 children one digit deeper. The conditions we test are invariant
// under the weighted p-power scaling that maps the primitive pairs onto each
// deeper layer, so the conditional density equals the unconditional one.

struct ZPoly {
    std::vector<std::pair<std::array<long, 2>, Int>> mono;
};

ZPoly zpoly_of(const WeightedHomogeneousPoly& f) {
    ZPoly out;
    for (auto& m : f.monomials) {
        if (m.exps.size() != 2) throw std::invalid_argument("local densities need 2 variables");
        if (m.coeff.b != 0 || m.coeff.a.get_den() != 1)
            throw std::invalid_argument("local densities need integer coefficients");
        out.mono.push_back({{m.exps[0], m.exps[1]}, m.coeff.a.get_num()});
    }
    return out;
}

Int zpoly_eval(const ZPoly& f, const Int& u0, const Int& u1) {
    Int s = 0;
    for (auto& [e, c] : f.mono) s += c * int_pow(u0, e[0]) * int_pow(u1, e[1]);
    return s;
}

int int_valuation(Int n, const Int& p) {
    int v = 0;
    n = abs(n);
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

// v[i]: exact valuation of f_i at the class representative, or -1 for ">= k".
// Returns a label >= 0 when the class is decided, -1 to split one digit deeper.
using Labeler = std::function<int(const std::vector<int>& v, int k)>;

std::map<int, Rat> refine_labels(const Int& p, const std::vector<ZPoly>& fs,
                                 const std::vector<int>& wsrc, const Labeler& label) {
    long pl = p.get_si();
    struct Cls {
        Int u0, u1;
        int k;
    };
    std::vector<Cls> frontier;
    for (long a = 0; a < pl; ++a)
        for (long b = 0; b < pl; ++b) frontier.push_back({Int(a), Int(b), 1});
    std::map<int, Rat> measure;
    int kmax = 50;
    while (!frontier.empty()) {
        if (frontier.size() > 500000) throw std::runtime_error("local density refinement blew up");
        Cls c = frontier.back();
        frontier.pop_back();
        if (c.k > kmax) throw std::runtime_error("local density did not stabilize");
        // primitivity: not every coordinate may vanish to its weight's depth
        bool prim = false, prim_deep = true;
        for (int i = 0; i < 2; ++i) {
            const Int& u = i == 0 ? c.u0 : c.u1;
            int seen = std::min(c.k, wsrc[i]);
            if (!(u % int_pow(p, seen) == 0))
                prim = true;  // a digit below w_i is set
            else if (c.k < wsrc[i])
                prim_deep = false;  // not deep enough to rule it primitive out
        }
        int d;
        if (!prim && prim_deep) {
            continue;  // decidedly non-primitive
        } else if (!prim) {
            d = -1;  // too shallow to tell
        } else {
            std::vector<int> v;
            for (auto& f : fs) {
                Int val = zpoly_eval(f, c.u0, c.u1);
                int vi = val == 0 ? c.k : int_valuation(val, p);
                v.push_back(vi >= c.k ? -1 : vi);
            }
            d = label(v, c.k);
        }
        if (d >= 0) {
            measure[d] += make_rat(1, int_pow(p, 2 * c.k));
        } else {
            Int pk = int_pow(p, c.k);
            for (long d0 = 0; d0 < pl; ++d0)
                for (long d1 = 0; d1 < pl; ++d1)
                    frontier.push_back({c.u0 + d0 * pk, c.u1 + d1 * pk, c.k + 1});
        }
    }
    Rat prim = 1 - make_rat(1, int_pow(p, wsrc[0] + wsrc[1]));
    for (auto& [l, m] : measure) m /= prim;
    return measure;
}

std::string density_key(const WeightedMorphism& f, const Int& p, const std::string& kind) {
    std::ostringstream os;
    os << kind << "|" << p << "|" << f.src.str() << "|" << f.dst.str();
    for (auto& poly : f.polys)
        for (auto& m : poly.monomials) os << "|" << m.exps[0] << "," << m.exps[1] << ":" << m.coeff.a;
    return os.str();
}

std::vector<int> src_weights2(const WeightedMorphism& f) {
    if (f.src.w.size() != 2 || f.dst.w.size() != 2)
        throw std::invalid_argument("local densities need a two-variable map");
    return {f.src.w[0], f.src.w[1]};
}

void require_rational_prime(const BaseField& F, const PrimeIdeal& P) {
    if (!F.is_rational())
        throw std::runtime_error("local densities of a nontrivial map are only computed over Q");
    (void)P;
}

double ideal_norm_d(const BaseField& F, const IntegralIdeal& I) {
    return ideal_norm(F, I).get_d();
}

}  // namespace

std::string Prediction::to_json() const {
    nlohmann::json j;
    j["exponent"] = exponent.get_str();
    j["exponent_value"] = rat_to_double(exponent);
    j["log_power"] = log_power;
    j["constant"] = constant;
    j["partial"] = partial;
    if (has_error_term) {
        j["error_exponent"] = error_exponent.get_str();
        j["error_exponent_value"] = rat_to_double(error_exponent);
    }
    j["factors"] = factors;
    if (!partial_sums.empty()) {
        auto& a = j["partial_sums"] = nlohmann::json::array();
        for (auto& [c, s] : partial_sums) a.push_back({c, s});
    }
    return j.dump();
}

double volume_F1(const BaseField& F, const WeightVector& w) {
    const FieldInvariants& inv = field_invariants(F);
    int r12 = F.r1() + F.r2();
    double place = std::pow(2.0, r12) * std::pow(kPi, F.r2());
    return std::pow(place, (double)w.w.size()) * inv.regulator *
           std::pow((double)w.total(), r12 - 1);
}

double morphism_cell_volume(const BaseField& F, const WeightedMorphism& f, long grid) {
    if (!F.is_rational()) throw std::invalid_argument("cell volume is numeric over Q only");
    if (f.src.w.size() != 2) throw std::invalid_argument("cell volume needs 2 variables");
    std::vector<std::vector<std::tuple<long, long, double>>> fs;
    for (auto& poly : f.polys) {
        std::vector<std::tuple<long, long, double>> mono;
        for (auto& m : poly.monomials)
            mono.push_back({m.exps[0], m.exps[1], m.coeff.a.get_d()});
        fs.push_back(std::move(mono));
    }
    auto eval = [&](size_t i, double x, double y) {
        double s = 0;
        for (auto& [e0, e1, c] : fs[i]) s += c * std::pow(x, (double)e0) * std::pow(y, (double)e1);
        return s;
    };
    // bounding box from the minimum of max_i |f_i|^(1/(e w_i)) on the unit
    // weighted box boundary; the region scales into the box {|x_i| <= (1/m)^w'_i}
    double m = 1e300;
    long samples = 20000;
    for (long s = 0; s <= samples; ++s) {
        double t = -1.0 + 2.0 * s / samples;
        std::pair<double, double> edges[4] = {{1.0, t}, {-1.0, t}, {t, 1.0}, {t, -1.0}};
        for (auto [x, y] : edges) {
            double mx = 0;
            for (size_t i = 0; i < fs.size(); ++i)
                mx = std::max(mx, std::pow(std::fabs(eval(i, x, y)),
                                           1.0 / (f.e_f * f.dst.w[i])));
            m = std::min(m, mx);
        }
    }
    if (!(m > 0)) throw std::runtime_error("cell volume: unbounded region");
    double r = 1.0 / (0.95 * m);
    double R0 = std::pow(r, (double)f.src.w[0]), R1 = std::pow(r, (double)f.src.w[1]);
    double hx = 2 * R0 / grid, hy = 2 * R1 / grid;
    double area = 0;
    #pragma omp parallel for reduction(+ : area) schedule(static)
    for (long i = 0; i < grid; ++i) {
        double x = -R0 + (i + 0.5) * hx;
        double row = 0;
        for (long j = 0; j < grid; ++j) {
            double y = -R1 + (j + 0.5) * hy;
            bool in = true;
            for (size_t q = 0; q < fs.size() && in; ++q)
                if (std::fabs(eval(q, x, y)) > 1) in = false;
            if (in) row += 1;
        }
        area += row;
    }
    return area * hx * hy;
}

Int max_defect_gain(const BaseField& F, const WeightedMorphism& f) {
    Int g = 1;
    for (auto& P : defect_candidate_primes(F, f)) {
        int top = 0;
        for (auto& [label, dens] : defect_density_spectrum(F, f, P))
            if (dens > 0) top = std::max(top, label);
        g *= int_pow(P.norm(), top);
    }
    return g;
}

double contraction_lower_bound(const BaseField& F, const WeightedMorphism& f, long samples) {
    if (!F.is_rational()) throw std::invalid_argument("contraction bound is numeric over Q only");
    if (f.src.w.size() != 2) throw std::invalid_argument("contraction bound needs 2 variables");
    // restrict each f_i to the four edges of [-1,1]^2; each restriction is a
    // univariate polynomial evaluated by Horner, with its own derivative bound
    struct EdgePoly {
        std::vector<double> c;  // coefficients, low degree first
        double lip = 0;
    };
    std::vector<std::vector<EdgePoly>> edges(4);  // (x=1,t) (x=-1,t) (t,y=1) (t,y=-1)
    for (auto& poly : f.polys) {
        for (int e = 0; e < 4; ++e) {
            int fixed = e < 2 ? 0 : 1;
            double sgn = (e % 2 == 0) ? 1.0 : -1.0;
            EdgePoly ep;
            for (auto& m : poly.monomials) {
                long ef = m.exps[fixed], ev = m.exps[1 - fixed];
                double c = m.coeff.a.get_d() * ((ef % 2 && sgn < 0) ? -1.0 : 1.0);
                if ((size_t)ev >= ep.c.size()) ep.c.resize(ev + 1, 0.0);
                ep.c[ev] += c;
            }
            for (size_t k = 1; k < ep.c.size(); ++k) ep.lip += std::fabs(ep.c[k]) * k;
            edges[e].push_back(std::move(ep));
        }
    }
    auto horner = [](const std::vector<double>& c, double t) {
        double s = 0;
        for (size_t k = c.size(); k-- > 0;) s = s * t + c[k];
        return s;
    };
    for (long n = samples;; n *= 8) {
        double h = 1.0 / n;  // nearest-sample distance along an edge
        double m = 1e300;
        for (auto& edge : edges) {
            for (long s = 0; s <= n; ++s) {
                double t = -1.0 + 2.0 * s / n;
                double mx = 0;
                for (size_t i = 0; i < edge.size(); ++i) {
                    double lo = std::fabs(horner(edge[i].c, t)) - edge[i].lip * h;
                    if (lo > 0) mx = std::max(mx, std::pow(lo, 1.0 / (f.e_f * f.dst.w[i])));
                }
                m = std::min(m, mx);
            }
        }
        if (m > 0) return m;
        if (n >= samples * 100000)
            throw std::runtime_error("contraction bound: grid too coarse to separate from zero");
    }
}

Prediction predict_identity_constant(const BaseField& F, const WeightVector& w) {
    const FieldInvariants& inv = field_invariants(F);
    Prediction out;
    out.exponent = Rat(w.total());
    out.has_error_term = true;
    out.error_exponent = Rat(w.total()) - make_rat(w.wmin(), F.degree());
    double vol = volume_F1(F, w);
    long vw = varpi_weighted(F, w.w);
    double disc = std::pow(std::fabs(F.discriminant().get_d()), w.w.size() / 2.0);
    double zeta = dedekind_zeta(F, (int)w.total());
    out.constant = inv.h.get_d() * vol / (vw * disc * zeta);
    out.factors["class_number"] = inv.h.get_d();
    out.factors["volume"] = vol;
    out.factors["varpi_w"] = (double)vw;
    out.factors["disc_power"] = disc;
    out.factors["zeta"] = zeta;
    return out;
}

Prediction assemble_identity_constant(const BaseField& F, const WeightVector& w) {
    const FieldInvariants& inv = field_invariants(F);
    WeightedMorphism id = identity_morphism(w);
    // defect support is empty for the identity, so the Mobius alternation and
    // the bad Euler factors are trivial; what remains exercises the class-rep
    // sum of translate counts against lattice indices.
    double sum = 0;
    for (auto& c : inv.class_reps) {
        auto [V, index] = defect_translate_count(F, id, c, ideal_one(F));
        double nc = ideal_norm_d(F, c);
        sum += rat_to_double(V) / rat_to_double(index) * std::pow(nc, (double)w.total());
    }
    Prediction out = predict_identity_constant(F, w);
    double vol = volume_F1(F, w);
    long vw = varpi_weighted(F, w.w);
    double disc = std::pow(std::fabs(F.discriminant().get_d()), w.w.size() / 2.0);
    double zeta = dedekind_zeta(F, (int)w.total());
    out.constant = vol / (vw * disc) / zeta * sum;
    out.factors["class_sum"] = sum;
    return out;
}

Prediction predict_morphism_constant(const BaseField& F, const WeightedMorphism& f) {
    if (f.is_identity()) return predict_identity_constant(F, f.src);
    Prediction out;
    long totw = f.src.total();
    out.exponent = make_rat(totw, f.e_f);
    out.has_error_term = true;
    out.error_exponent = make_rat(Int(F.degree()) * totw - f.src.wmin(), Int(F.degree()) * f.e_f);
    if (!F.is_rational()) {
        out.partial = true;
        return out;
    }
    const FieldInvariants& inv = field_invariants(F);
    double vol = morphism_cell_volume(F, f);
    long vw = varpi_weighted(F, f.src.w);
    double zeta = dedekind_zeta(F, (int)totw);
    double local = 1.0;
    for (auto& P : defect_candidate_primes(F, f)) {
        double sp = 0;
        for (auto& [t, rho] : defect_density_spectrum(F, f, P))
            sp += rat_to_double(rho) * std::pow(P.norm().get_d(), t * (double)totw / f.e_f);
        local *= sp;
        out.factors["defect_sum_" + P.ideal.str()] = sp;
    }
    out.constant = vol * inv.h.get_d() * local / (f.degree * vw * zeta);
    out.partial = true;  // numeric volume
    out.factors["volume"] = vol;
    out.factors["class_number"] = inv.h.get_d();
    out.factors["defect_sum"] = local;
    out.factors["degree"] = (double)f.degree;
    out.factors["varpi_w"] = (double)vw;
    out.factors["zeta"] = zeta;
    return out;
}

Prediction predict_level_structure(const BaseField& F, const LevelStructure& level) {
    Prediction out;
    out.exponent = level.naive_exponent();
    out.has_error_term = true;
    out.error_exponent = make_rat(Int(F.degree()) * (level.w0 + level.w1) - std::min(level.w0, level.w1),
                                  Int(12) * level.e * F.degree());
    if (!level.has_morphism()) {
        out.partial = true;
        return out;
    }
    Prediction m = predict_morphism_constant(F, *level.morphism);
    out.constant = m.constant;  // invariant under the height rescaling
    out.partial = m.partial;
    out.factors = m.factors;
    return out;
}

Prediction predict_twisted(const BaseField& F, const LevelStructure& level, long cap) {
    if (level.kind != LevelStructure::Kind::twist_family)
        throw std::invalid_argument("predict_twisted needs a twist family");
    Prediction out;
    out.exponent = Rat(1, 6);
    out.log_power = level.e == 1 ? 1 : 0;
    out.partial = true;
    if (!level.has_morphism() || !F.is_rational()) return out;
    const WeightedMorphism& f = *level.morphism;
    Prediction base = predict_morphism_constant(F, f);
    const FieldInvariants& inv = field_invariants(F);
    int r12 = F.r1() + F.r2();
    double zeta2 = dedekind_zeta(F, 2);
    long vw2 = varpi_weighted(F, {2, 2});
    double kap = base.constant * inv.h.get_d() * std::pow(2.0, 2 * r12 - 1) *
                 std::pow(kPi, F.r2()) * inv.regulator /
                 (vw2 * inv.varpi * std::sqrt(std::fabs(F.discriminant().get_d())) * zeta2);
    // conductor sum: every prime outside the defect candidates of the base map
    // contributes the exact factor 1 (window 0 has full density there), so the
    // sum over squarefree conductors is the finite product below
    std::vector<std::pair<double, double>> lam;  // (lambda_p(1) oriented term, norm)
    double full = 1.0;
    std::vector<double> l0s, l1s, norms;
    for (auto& P : defect_candidate_primes(F, f)) {
        double l0 = rat_to_double(twist_window_density(F, f, P, 0, 2));
        double l1 = rat_to_double(twist_window_density(F, f, P, 1, 2));
        double np = P.norm().get_d();
        l0s.push_back(l0);
        l1s.push_back(l1);
        norms.push_back(np);
        full *= l0 + l1 * (1 + np);
        out.factors["window0_" + P.ideal.str()] = l0;
        out.factors["window1_" + P.ideal.str()] = l1;
    }
    auto truncated = [&](double C) {
        double s = 0;
        size_t n = norms.size();
        for (size_t mask = 0; mask < (size_t(1) << n); ++mask) {
            double nb = 1, term = 1;
            for (size_t i = 0; i < n; ++i) {
                if (mask >> i & 1) {
                    nb *= norms[i];
                    term *= l1s[i] * (1 + norms[i]);
                } else {
                    term *= l0s[i];
                }
            }
            if (nb <= C) s += term;
        }
        return s;
    };
    for (double c : {100.0, 1000.0, (double)cap})
        out.partial_sums.push_back({c, truncated(c)});
    double sum = truncated(1e300);
    double e = (double)level.e;
    out.constant = level.e == 1 ? 2.0 * kap * sum / 12.0 : kap * sum / (e - 1.0);
    out.factors["base_constant"] = base.constant;
    out.factors["kappa"] = kap;
    out.factors["conductor_sum"] = sum;
    out.factors["zeta2"] = zeta2;
    return out;
}

namespace {

const std::map<int, Rat>& refined_cached(const BaseField& F, const WeightedMorphism& f,
                                         const PrimeIdeal& P, const std::string& kind,
                                         const Labeler& label) {
    require_rational_prime(F, P);
    static std::map<std::string, std::map<int, Rat>> cache;
    static std::mutex mu;
    std::string key = density_key(f, P.p, kind);
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    std::vector<ZPoly> fs;
    for (auto& poly : f.polys) fs.push_back(zpoly_of(poly));
    std::map<int, Rat> m = refine_labels(P.p, fs, src_weights2(f), label);
    std::lock_guard<std::mutex> lk(mu);
    return cache.emplace(key, std::move(m)).first->second;
}

const std::map<int, Rat>& defect_spectrum_map(const BaseField& F, const WeightedMorphism& f,
                                              const PrimeIdeal& P) {
    std::vector<int> wdst = {f.dst.w[0], f.dst.w[1]};
    Labeler label = [wdst](const std::vector<int>& v, int k) {
        int mexact = INT_MAX, lbund = INT_MAX;
        for (size_t i = 0; i < v.size(); ++i) {
            if (v[i] >= 0)
                mexact = std::min(mexact, v[i] / wdst[i]);
            else
                lbund = std::min(lbund, k / wdst[i]);
        }
        if (mexact <= lbund) return mexact;  // the undecided coordinates cannot lower the min
        return -1;
    };
    return refined_cached(F, f, P, "defect", label);
}

Rat map_total(const std::map<int, Rat>& m) {
    Rat t = 0;
    for (auto& [l, r] : m) t += r;
    return t;
}

}  // namespace

Rat defect_local_density(const BaseField& F, const WeightedMorphism& f,
                         const PrimeIdeal& P, int t) {
    if (f.is_identity()) return t == 0 ? Rat(1) : Rat(0);
    auto& m = defect_spectrum_map(F, f, P);
    auto it = m.find(t);
    return it == m.end() ? Rat(0) : it->second;
}

std::vector<std::pair<int, Rat>> defect_density_spectrum(const BaseField& F,
                                                         const WeightedMorphism& f,
                                                         const PrimeIdeal& P) {
    if (f.is_identity()) return {{0, Rat(1)}};
    auto& m = defect_spectrum_map(F, f, P);
    if (map_total(m) != 1) throw std::runtime_error("defect spectrum did not exhaust the density");
    return {m.begin(), m.end()};
}

Rat twist_window_density(const BaseField& F, const WeightedMorphism& f,
                         const PrimeIdeal& P, int b, int tau) {
    if (tau < 2 || b < 0 || b >= tau) throw std::invalid_argument("bad window");
    std::vector<int> wdst = {f.dst.w[0], f.dst.w[1]};
    Labeler label = [wdst, tau](const std::vector<int>& v, int k) {
        // twisting exponent from the minimizing ratio v_s / w_s; an undecided
        // coordinate has ratio >= k/w and may only matter below the exact min
        long bn = -1, bd = 1;
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i] >= 0 && (bn < 0 || (long)v[i] * bd < bn * wdst[i])) {
                bn = v[i];
                bd = wdst[i];
            }
        if (bn < 0) return -1;
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i] < 0 && (long)k * bd < bn * wdst[i]) return -1;
        long r = bn % bd;        // fractional part of the min ratio is r / w_s;
        long q = tau * r / bd;   // ties share it, so the window is unambiguous
        return q == 0 ? 0 : (int)(tau - q);
    };
    auto& m = refined_cached(F, f, P, "window" + std::to_string(tau), label);
    auto it = m.find(b);
    return it == m.end() ? Rat(0) : it->second;
}

std::pair<Rat, Rat> defect_translate_count(const BaseField& F, const WeightedMorphism& f,
                                           const IntegralIdeal& a, const IntegralIdeal& d) {
    long totsrc = f.src.total(), totdst = f.dst.total();
    Int na = ideal_norm(F, a);
    Rat index = Rat(int_pow(na, totsrc));
    Rat dens = make_rat(1, int_pow(na, totsrc));
    IntegralIdeal drem = d;
    if (!f.is_identity()) {
        for (auto& P : defect_candidate_primes(F, f)) {
            auto spec = defect_density_spectrum(F, f, P);
            int q = spec.back().first;  // deepest defect at P
            if (q == 0 && spec.size() == 1) continue;
            int va = ideal_valuation(F, a, P);
            int vd = ideal_valuation(F, d, P);
            for (int s = 0; s < vd; ++s) drem = ideal_div(F, drem, P.ideal);
            long shift = ((long)q + f.e_f * va) * totdst - (long)va * totsrc;
            index *= Rat(int_pow(P.norm(), shift));
            Rat rho = 0;
            for (auto& [t, r] : spec)
                if (t == vd) rho = r;
            dens *= rho;
        }
    }
    if (!(drem == ideal_one(F))) dens = 0;  // defect ideal outside the support
    return {dens * index, index};
}

FitResult fit_exponent(const std::vector<std::pair<double, double>>& points,
                       bool log_correction) {
    if (points.size() < 3) throw std::invalid_argument("fit needs at least 3 points");
    std::vector<double> xs, ys;
    for (auto& [B, c] : points) {
        if (B <= (log_correction ? std::exp(1.0) : 0.0) || c <= 0)
            throw std::invalid_argument("fit needs B > 1 (B > e with the log) and positive counts");
        xs.push_back(std::log(B));
        ys.push_back(std::log(c) - (log_correction ? std::log(std::log(B)) : 0.0));
    }
    double n = (double)xs.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double det = n * sxx - sx * sx;
    if (std::fabs(det) < 1e-12) throw std::invalid_argument("fit points are degenerate");
    FitResult out;
    out.alpha = (n * sxy - sx * sy) / det;
    double b = (sy * sxx - sx * sxy) / det;
    out.kappa = std::exp(b);
    for (size_t i = 0; i < xs.size(); ++i) {
        double r = ys[i] - (out.alpha * xs[i] + b);
        out.residuals.push_back(r);
        out.max_residual = std::max(out.max_residual, std::fabs(r));
    }
    return out;
}

}  // namespace wpc
