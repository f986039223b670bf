#include "wpc/sieve.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "wpc/number_field.hpp"

namespace wpc {

namespace {

constexpr long kBitmapLimit = 1L << 24;

long transversal_size(const BaseField& F, const IntegralIdeal& I) {
    Int n = ideal_norm(F, I);
    if (!n.fits_slong_p()) throw std::invalid_argument("residue space too large");
    return n.get_si();
}

// R^nvars with overflow guard, or -1 if it exceeds limit
long tuple_space(long R, int nvars, long limit) {
    long total = 1;
    for (int k = 0; k < nvars; ++k) {
        if (total > limit / R) return -1;
        total *= R;
    }
    return total;
}

void decode_tuple(long t, long R, const std::vector<FieldElement>& trans,
                  std::vector<FieldElement>& xs) {
    for (auto& x : xs) {
        x = trans[t % R];
        t /= R;
    }
}

}  // namespace

LocalCondition make_condition(const BaseField& F, const PrimeIdeal& P, int m, int nvars,
                              std::function<bool(const std::vector<FieldElement>&)> pred) {
    if (m < 1) throw std::invalid_argument("modulus exponent must be >= 1");
    if (nvars < 1) throw std::invalid_argument("need at least one variable");
    LocalCondition c;
    c.prime = P;
    c.m = m;
    c.nvars = nvars;
    c.modulus = ideal_pow(F, P.ideal, (unsigned long)m);
    c.pred = std::move(pred);
    long R = transversal_size(F, c.modulus);
    long total = tuple_space(R, nvars, kBitmapLimit);
    if (total > 0) {
        auto trans = residue_transversal(F, c.modulus);
        c.allowed.assign(total, false);
        std::vector<FieldElement> xs(nvars);
        for (long t = 0; t < total; ++t) {
            decode_tuple(t, R, trans, xs);
            c.allowed[t] = c.pred(xs);
        }
    }
    return c;
}

LocalCondition avoid_subscheme_condition(const BaseField& F, const PrimeIdeal& P,
                                         const SubschemeAvoidance& avoid) {
    if (avoid.polys.empty()) throw std::invalid_argument("empty subscheme");
    int nvars = (int)avoid.weights.w.size();
    IntegralIdeal Pi = P.ideal;
    auto polys = avoid.polys;
    return make_condition(F, P, 1, nvars, [F, Pi, polys](const std::vector<FieldElement>& xs) {
        for (const auto& p : polys)
            if (!ideal_reduce(F, Pi, p.evaluate(F, xs)).is_zero()) return true;
        return false;
    });
}

Rat local_density(const BaseField& F, const LocalCondition& c) {
    long R = transversal_size(F, c.modulus);
    long total = tuple_space(R, c.nvars, std::numeric_limits<long>::max() / 2);
    if (total < 0) throw std::invalid_argument("residue space too large");
    long cnt = 0;
    if (c.use_bitmap()) {
        for (long t = 0; t < total; ++t) cnt += c.allowed[t];
    } else {
        auto trans = residue_transversal(F, c.modulus);
#pragma omp parallel
        {
            std::vector<FieldElement> xs(c.nvars);
            long local = 0;
#pragma omp for nowait
            for (long t = 0; t < total; ++t) {
                decode_tuple(t, R, trans, xs);
                local += c.pred(xs);
            }
#pragma omp atomic
            cnt += local;
        }
    }
    return make_rat(Int(cnt), Int(total));
}

bool satisfies(const BaseField& F, const std::vector<FieldElement>& x,
               const std::vector<LocalCondition>& conds) {
    for (const auto& c : conds) {
        if ((int)x.size() != c.nvars) throw std::invalid_argument("tuple arity mismatch");
        if (c.use_bitmap()) {
            long R = transversal_size(F, c.modulus);
            long idx = 0, mul = 1;
            for (const auto& xi : x) {
                idx += residue_index(F, c.modulus, xi) * mul;
                mul *= R;
            }
            if (!c.allowed[idx]) return false;
        } else {
            std::vector<FieldElement> r;
            r.reserve(x.size());
            for (const auto& xi : x) r.push_back(ideal_reduce(F, c.modulus, xi));
            if (!c.pred(r)) return false;
        }
    }
    return true;
}

int mobius(const BaseField& F, const IntegralIdeal& n) { return mobius_ideal(F, n); }

namespace {

// does some w0-free representative of the class of t satisfy t' = a mod n?
// representatives are u^{w0} t over units u = torsion * eps^Z
bool class_meets_congruence(const BaseField& F, const FieldElement& t, const FieldElement& a,
                            const IntegralIdeal& n, int w0) {
    if (n.is_unit_ideal()) return true;
    FieldElement ar = ideal_reduce(F, n, a);
    std::vector<FieldElement> tors;
    for (const auto& u : torsion_units(F)) tors.push_back(fe_pow(F, u, w0));
    FieldElement epsw{Rat(1)};
    bool real_quad = !F.is_rational() && F.D() > 0;
    if (real_quad) epsw = fe_pow(F, fundamental_unit(F), w0);
    FieldElement mult{Rat(1)};
    while (true) {
        FieldElement base = fe_mul(F, mult, t);
        for (const auto& u : tors)
            if (ideal_reduce(F, n, fe_mul(F, u, base)) == ar) return true;
        if (!real_quad) return false;
        mult = ideal_reduce(F, n, fe_mul(F, mult, epsw));
        if (ideal_reduce(F, n, mult) == ideal_reduce(F, n, FieldElement{Rat(1)})) return false;
    }
}

}  // namespace

KFreeResult count_kfree(const BaseField& F, int w0, const FieldElement& a,
                        const IntegralIdeal& n, const Rat& B) {
    if (w0 < 2) throw std::invalid_argument("w0 >= 2 required");
    const auto& inv = field_invariants(F);
    if (inv.h != 1) throw std::invalid_argument("class number > 1 not supported");
    KFreeResult res;

    // leading constant: congruence factor times the unconditioned constant
    double factor = 1.0;
    if (!n.is_unit_ideal()) {
        IntegralIdeal g = a.is_zero() ? n : ideal_add(F, ideal_principal(F, a), n);
        for (auto& [P, s] : factor_ideal(F, n)) {
            double Np = P.norm().get_d();
            if (ideal_valuation(F, g, P) >= 1)
                factor *= std::pow(Np, -double(s));
            else
                factor *= std::pow(Np, double(w0 - s)) / (std::pow(Np, double(w0)) - 1.0);
        }
    }
    int r1 = F.r1(), r2 = F.r2();
    double main = inv.h.get_d() * std::pow(2.0, r1 + r2) * std::pow(M_PI, r2) * inv.regulator *
                  std::pow(double(w0), r1 + r2 - 1) /
                  (double(varpi_weighted(F, {w0})) * std::sqrt(std::abs(F.discriminant().get_d())) *
                   dedekind_zeta(F, w0));
    res.constant = factor * main;
    res.predicted = res.constant * std::pow(B.get_d(), w0);

    if (F.is_rational()) {
        // |t| <= B^{w0}
        Rat Bp = 1;
        for (int k = 0; k < w0; ++k) Bp *= B;
        Int Nfloor = Bp.get_num() / Bp.get_den();
        if (Nfloor < 1) return res;
        if (!Nfloor.fits_slong_p()) throw std::invalid_argument("bound too large");
        long N = Nfloor.get_si();
        std::vector<char> kfree(N + 1, 1);
        for (long d = 2;; ++d) {
            long dk = 1;
            bool over = false;
            for (int k = 0; k < w0; ++k) {
                if (dk > N / d) { over = true; break; }
                dk *= d;
            }
            if (over) break;
            for (long t = dk; t <= N; t += dk) kfree[t] = 0;
        }
        if (a.a.get_den() != 1) throw std::invalid_argument("congruence class must be integral");
        Int nn = n.a;
        Int amod = a.a.get_num() % nn;
        if (amod < 0) amod += nn;
        long cnt = 0;
        for (long t = 1; t <= N; ++t) {
            if (!kfree[t]) continue;
            bool plus = (Int(t) % nn) == amod;
            bool minus = (((Int(-t) % nn) + nn) % nn) == amod;
            if (w0 % 2 == 0)
                cnt += (plus ? 1 : 0) + (minus ? 1 : 0);
            else
                cnt += (plus || minus) ? 1 : 0;
        }
        res.count = cnt;
        return res;
    }

    // quadratic field, h = 1: canonical class representatives are w0-free
    long cnt = 0;
    for (const auto& r : small_height_points(F, WeightVector{std::vector<int>{w0}}, B))
        if (class_meets_congruence(F, r.coords[0], a, n, w0)) ++cnt;
    res.count = cnt;
    return res;
}

long tail_excess_estimate(const BaseField& F, const SubschemeAvoidance& avoid, const Rat& B,
                          long M, long Mmax) {
    if (avoid.polys.empty()) return 0;
    if (avoid.codim < 2) throw std::invalid_argument("codimension >= 2 required");
    if (Mmax <= M) throw std::invalid_argument("Mmax must exceed M");
    bool range_nonempty = false;
    for (const auto& P : primes_of_norm_up_to(F, Mmax))
        if (P.norm() > M) { range_nonempty = true; break; }
    double Bd = B.get_d();
    std::vector<std::vector<FieldElement>> cand;
    for (int wi : avoid.weights.w) cand.push_back(coordinate_candidates(F, wi, Bd));
    long count = 0;
    std::vector<size_t> idx(cand.size(), 0);
    std::vector<FieldElement> xs(cand.size()), vals;
    while (true) {
        bool zero = true;
        for (size_t i = 0; i < idx.size(); ++i) {
            xs[i] = cand[i][idx[i]];
            zero = zero && xs[i].is_zero();
        }
        if (!zero) {
            vals.clear();
            for (const auto& p : avoid.polys) {
                FieldElement v = p.evaluate(F, xs);
                if (!v.is_zero()) vals.push_back(v);
            }
            if (vals.empty()) {
                count += range_nonempty;  // on the subscheme over K itself
            } else {
                IntegralIdeal g = ideal_from_gens(F, vals);
                if (!g.is_unit_ideal())
                    for (auto& [P, e] : factor_ideal(F, g))
                        if (P.norm() > M && P.norm() <= Mmax) { ++count; break; }
            }
        }
        size_t i = 0;
        for (; i < idx.size(); ++i) {
            if (++idx[i] < cand[i].size()) break;
            idx[i] = 0;
        }
        if (i == idx.size()) break;
    }
    return count;
}

}  // namespace wpc
