#include "wpc/number_field.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <numeric>
#include <algorithm>

namespace wpc {

namespace {

// reduced positive definite forms (a,b,c) of discriminant disc < 0
std::vector<std::array<Int, 3>> reduced_forms_negative(const Int& disc) {
    std::vector<std::array<Int, 3>> forms;
    Int blim = sqrt(abs(disc) / 3) + 1;
    for (Int b = (disc % 2 == 0) ? 0 : 1; b <= blim; b += 2) {
        Int m = (b * b - disc) / 4;  // = a*c
        for (Int a = std::max(b, Int(1)); a * a <= m; ++a) {
            if (m % a != 0) continue;
            Int c = m / a;
            if (a < b) continue;
            // reduced: |b| <= a <= c with b >= 0 when |b| = a or a = c
            forms.push_back({a, b, c});
            if (b != 0 && a != b && a != c) forms.push_back({a, -b, c});
        }
    }
    return forms;
}

// one reduced indefinite form per cycle for disc > 0; returns cycle count and
// a representative form per cycle
std::vector<std::array<Int, 3>> reduced_cycle_reps_positive(const Int& disc) {
    Int sq = sqrt(disc);
    auto is_reduced = [&](const Int& a, const Int& b, const Int&) {
        if (b <= 0 || b >= sq + 1) return false;
        Int ta = 2 * abs(a);
        // sqrt(disc) - b < 2|a| < sqrt(disc) + b, decided exactly on squares
        Int lhs = sq * sq;  // not exact sqrt; compare via squares
        // (sqrt(D) - b)^2 < (2a)^2 when sqrt(D) > b requires care; use integer tests:
        // 2|a| > sqrt(D) - b  <=>  2|a| + b > sqrt(D)  <=> (2|a|+b)^2 > D
        // 2|a| < sqrt(D) + b  <=> (2|a|-b)^2 < D or 2|a| < b
        if ((ta + b) * (ta + b) <= disc) return false;
        if (ta >= b && (ta - b) * (ta - b) >= disc) return false;
        return true;
    };
    std::vector<std::array<Int, 3>> all;
    for (Int b = 1; b * b <= disc; ++b) {
        if ((disc - b * b) % 4 != 0) continue;
        Int m = (disc - b * b) / 4;  // = -a*c = |a||c| for reduced (a,c opposite signs)
        for (Int aa = 1; aa * aa <= m; ++aa) {
            if (m % aa != 0) continue;
            Int cc = m / aa;
            for (auto& [a, c] : {std::pair<Int, Int>{aa, -cc}, {-aa, cc}, {cc, -aa}, {-cc, aa}}) {
                if (is_reduced(a, b, c)) all.push_back({a, b, c});
            }
        }
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    // rho step
    auto rho = [&](std::array<Int, 3> f) {
        auto [a, b, c] = f;
        // b' = -b + 2c*t with sqrt(D)-2|c| < b' <= sqrt(D)
        Int tc = 2 * c;
        Int bp;
        // choose b' congruent to -b mod 2|c| in the window (sq-2|c|, sq]
        Int low = sq - 2 * abs(c) + 1;
        Int k = (low + b);  // want b' = -b + m*2c... solve by rounding
        Int m2 = 2 * abs(c);
        Int target = ((-b - low) % m2 + m2) % m2;
        bp = low + target;
        Int cp = (bp * bp - disc) / (4 * c);
        return std::array<Int, 3>{c, bp, cp};
    };
    std::vector<std::array<Int, 3>> reps;
    std::set<std::array<Int, 3>> seen;
    for (auto& f : all) {
        if (seen.count(f)) continue;
        reps.push_back(f);
        auto g = f;
        do {
            seen.insert(g);
            g = rho(g);
        } while (!(g == f) && !seen.count(g));
    }
    return reps;
}

FieldElement form_to_ideal_gen2(const BaseField& F, const Int& b) {
    // (-b + sqrt(disc))/2 expressed in the 1, omega basis
    if (F.omega_is_half()) return FieldElement(Rat((-b - 1)) / 2, Rat(1));  // b odd here
    return FieldElement(Rat(-b) / 2, Rat(1));  // b even here
}

FieldElement unit_inverse_like(const BaseField& F, const FieldElement& u) {
    // for a unit, inverse = +-conjugate
    FieldElement c = fe_conj(F, u);
    return fe_norm(F, u) == 1 ? c : fe_neg(c);
}

}  // namespace

FieldElement fundamental_unit(const BaseField& F) {
    if (F.is_rational() || F.D() < 0)
        throw std::domain_error("no fundamental unit in rank-0 unit group");
    long D = F.D();
    const long vcap = 50000000;
    if (F.omega_is_half()) {
        for (long v = 1; v < vcap; ++v) {
            Int dv = Int(D) * v * v;
            Int u;
            for (int s : {-4, 4}) {
                if (is_perfect_square(dv + s, &u)) {
                    // (u + v sqrt(D))/2 = (u-v)/2 + v*omega
                    return FieldElement(Rat(u - v) / 2, Rat(v));
                }
            }
        }
    } else {
        for (long v = 1; v < vcap; ++v) {
            Int dv = Int(D) * v * v;
            Int u;
            for (int s : {-1, 1}) {
                if (is_perfect_square(dv + s, &u)) return FieldElement(Rat(u), Rat(v));
            }
        }
    }
    throw std::runtime_error("fundamental unit search exceeded cap");
}

std::vector<FieldElement> torsion_units(const BaseField& F) {
    std::vector<FieldElement> out{FieldElement(Rat(1)), FieldElement(Rat(-1))};
    if (!F.is_rational() && F.D() == -1) {
        out.push_back(FieldElement(Rat(0), Rat(1)));    // i
        out.push_back(FieldElement(Rat(0), Rat(-1)));
    } else if (!F.is_rational() && F.D() == -3) {
        // omega = (1+sqrt(-3))/2 is a primitive 6th root of unity
        FieldElement z = FieldElement::omega();
        FieldElement u = z;
        for (int k = 1; k < 6; ++k) {
            if (!(u == out[0]) && !(u == out[1])) out.push_back(u);
            u = fe_mul(F, u, z);
        }
    }
    return out;
}

std::optional<FieldElement> principal_generator(const BaseField& F, const IntegralIdeal& I) {
    if (F.is_rational()) return FieldElement(Rat(I.a));
    Int N = ideal_norm(F, I);
    if (N == 1) return FieldElement(Rat(1));
    long D = F.D();
    if (D < 0) {
        // N(u + v*omega) = u^2 + t u v + n v^2 = N; solve the quadratic in u
        Int t = F.omega_trace(), n = F.omega_norm();
        Int disc = t * t - 4 * n;  // field discriminant, negative
        long vmax = (long)std::floor(std::sqrt(4.0 * N.get_d() / std::abs(disc.get_d()))) + 1;
        for (long v = 0; v <= vmax; ++v) {
            for (int sv : {1, -1}) {
                if (v == 0 && sv < 0) continue;
                Int vv = Int(v) * sv;
                Int s2 = vv * vv * disc + 4 * N;
                if (s2 < 0) continue;
                Int s;
                if (!is_perfect_square(s2, &s)) continue;
                for (int ss : {1, -1}) {
                    Int num = -vv * t + ss * s;
                    if (num % 2 != 0) continue;
                    FieldElement x(Rat(num / 2), Rat(vv));
                    if (x.is_zero()) continue;
                    if (fe_norm(F, x) == Rat(N) && ideal_contains(F, I, x)) return x;
                }
            }
        }
        return std::nullopt;
    }
    // real quadratic: search the lattice of I for x with |N(x)| = N and
    // embeddings within sqrt(N)*eps (a balanced generator always fits)
    FieldElement u = fundamental_unit(F);
    double eps = std::abs(fe_embed(F, u).approx());
    if (eps < 1) eps = 1 / eps;
    double M = std::sqrt(N.get_d()) * eps * 1.0001 + 1;
    FieldElement g2(Rat(I.b), Rat(I.c));
    double s1g2 = fe_embed(F, g2).approx();
    double s2g2 = fe_embed(F, fe_conj(F, g2)).approx();
    double ad = I.a.get_d();
    double tspan = 2 * M / std::abs(s1g2 - s2g2);
    long tmax = (long)std::ceil(tspan) + 1;
    for (long t = -tmax; t <= tmax; ++t) {
        double lo1 = (-M - t * s1g2) / ad, hi1 = (M - t * s1g2) / ad;
        double lo2 = (-M - t * s2g2) / ad, hi2 = (M - t * s2g2) / ad;
        long slo = (long)std::floor(std::max(lo1, lo2)) - 1;
        long shi = (long)std::ceil(std::min(hi1, hi2)) + 1;
        for (long s = slo; s <= shi; ++s) {
            FieldElement x(Rat(s) * Rat(I.a) + Rat(t) * Rat(I.b), Rat(t) * Rat(I.c));
            if (x.is_zero()) continue;
            Rat nx = fe_norm(F, x);
            if (nx == Rat(N) || nx == -Rat(N)) return x;  // x in I by construction
        }
    }
    return std::nullopt;
}

bool ideal_is_principal(const BaseField& F, const IntegralIdeal& I) {
    return principal_generator(F, I).has_value();
}

bool ideal_class_equal(const BaseField& F, const IntegralIdeal& I, const IntegralIdeal& J) {
    // [I] = [J]  <=>  I * conj(J) principal (since J*conj(J) = (N(J)))
    return ideal_is_principal(F, ideal_mul(F, I, ideal_conj(F, J)));
}

namespace {

FieldInvariants compute_invariants(const BaseField& F) {
    FieldInvariants inv;
    inv.class_reps.push_back(ideal_one(F));
    if (F.is_rational()) return inv;
    long D = F.D();
    if (D == -1) inv.varpi = 4;
    else if (D == -3) inv.varpi = 6;

    Int h;
    if (D < 0) {
        auto forms = reduced_forms_negative(F.discriminant());
        h = (long)forms.size();
    } else {
        auto reps = reduced_cycle_reps_positive(F.discriminant());
        Int hplus = (long)reps.size();
        FieldElement u = fundamental_unit(F);
        inv.fundamental_unit = u;
        QuadExact e1 = fe_embed(F, u).abs();
        double ev = e1.approx();
        inv.regulator = std::log(ev > 1 ? ev : 1 / ev);
        h = (fe_norm(F, u) == -1) ? hplus : hplus / 2;
    }
    inv.h = h;
    // collect pairwise-inequivalent prime ideals as class representatives
    long bound = 2;
    while ((long)inv.class_reps.size() < h) {
        bound *= 2;
        for (auto& P : primes_of_norm_up_to(F, bound)) {
            if ((long)inv.class_reps.size() >= h) break;
            bool fresh = true;
            for (auto& R : inv.class_reps)
                if (ideal_class_equal(F, P.ideal, R)) { fresh = false; break; }
            if (fresh) inv.class_reps.push_back(P.ideal);
        }
        if (bound > 100000) throw std::runtime_error("class representative search exceeded bound");
    }
    return inv;
}

}  // namespace

const FieldInvariants& field_invariants(const BaseField& F) {
    static std::map<std::pair<int, long>, FieldInvariants> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(int(F.kind()), F.D());
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, compute_invariants(F)).first;
    return it->second;
}

int ideal_class_index(const BaseField& F, const IntegralIdeal& I) {
    const auto& inv = field_invariants(F);
    for (size_t i = 0; i < inv.class_reps.size(); ++i)
        if (ideal_class_equal(F, I, inv.class_reps[i])) return int(i);
    throw std::logic_error("ideal class not matched by any representative");
}

long varpi_weighted(const BaseField& F, const std::vector<int>& weights) {
    long g = field_invariants(F).varpi;
    for (int w : weights) g = std::gcd(g, (long)w);
    return field_invariants(F).varpi / g;
}

namespace {

double hurwitz_zeta_em(int s, double x) {
    // Euler-Maclaurin, enough terms for ~1e-13 at N = 50
    const int N = 50;
    double sum = 0;
    for (int k = 0; k < N; ++k) sum += std::pow(k + x, -s);
    double nx = N + x;
    sum += std::pow(nx, 1 - s) / (s - 1);
    sum += 0.5 * std::pow(nx, -s);
    sum += s / 12.0 * std::pow(nx, -s - 1);
    sum -= (double)s * (s + 1) * (s + 2) / 720.0 * std::pow(nx, -s - 3);
    sum += (double)s * (s + 1) * (s + 2) * (s + 3) * (s + 4) / 30240.0 * std::pow(nx, -s - 5);
    return sum;
}

double riemann_zeta_em(int s) { return hurwitz_zeta_em(s, 1.0); }

double dirichlet_l_em(const Int& disc, int s) {
    long q = std::labs(disc.get_si());
    double sum = 0;
    for (long a = 1; a <= q; ++a) {
        int chi = kronecker(disc, Int(a));
        if (chi) sum += chi * hurwitz_zeta_em(s, double(a) / q);
    }
    return sum * std::pow((double)q, -s);
}

}  // namespace

std::pair<double, double> dedekind_zeta_euler(const BaseField& F, int s, long cutoff) {
    if (s <= 1) throw std::domain_error("divergent");
    double prod = 1.0;
    if (F.is_rational()) {
        for (long p : primes_up_to(cutoff)) {
            if (p > cutoff) break;
            prod /= 1.0 - std::pow((double)p, -s);
        }
    } else {
        for (auto& P : primes_of_norm_up_to(F, cutoff))
            prod /= 1.0 - std::pow(P.norm().get_d(), -s);
    }
    // comparison with d copies of the rational tail: sum_{n>P} n^-s <= P^{1-s}/(s-1)
    double tail = F.degree() * (std::pow((double)cutoff, 1 - s) / (s - 1) + std::pow((double)cutoff, -s));
    return {prod, prod * (std::exp(tail) - 1.0)};
}

double dedekind_zeta(const BaseField& F, int s, double tol) {
    if (s <= 1) throw std::domain_error("divergent");
    if (tol <= 0) throw std::domain_error("tol must be positive");
    // Euler product when its proven tail bound reaches tol at a sane cutoff;
    // otherwise the L-series factorization with Euler-Maclaurin sums.
    for (long cutoff : {1000L, 30000L, 1000000L}) {
        double tail = F.degree() * std::pow((double)cutoff, 1 - s) / (s - 1);
        if (tail < tol / 4) {
            auto [v, bound] = dedekind_zeta_euler(F, s, cutoff);
            if (bound < tol) return v;
        }
    }
    if (F.is_rational()) return riemann_zeta_em(s);
    return riemann_zeta_em(s) * dirichlet_l_em(F.discriminant(), s);
}

}  // namespace wpc
