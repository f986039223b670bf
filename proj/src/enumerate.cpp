#include "wpc/enumerate.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include "json.hpp"
#include "wpc/number_field.hpp"

namespace wpc {

namespace {

Rat rat_pow(const Rat& b, long e) {
    Rat r(1);
    for (long i = 0; i < e; ++i) r *= b;
    return r;
}

Int rat_floor(const Rat& q) {
    Int f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return f;
}

Int rat_ceil(const Rat& q) { return -rat_floor(-q); }

void validate_query(const CountQuery& q) {
    if (q.bound <= 0) throw std::invalid_argument("bound must be positive");
    if (!q.morphism.is_identity()) validate_morphism(q.field, q.morphism);
    if (q.exclude_discriminant_zero && !(q.morphism.dst == WeightVector{4, 6}))
        throw std::invalid_argument("discriminant filter needs target P(4,6)");
    if (q.source_bound_hint < 0) throw std::invalid_argument("source bound hint must be >= 0");
    if (q.image_gain_hint < 1) throw std::invalid_argument("image gain hint must be >= 1");
}

void validate_twisted(const CountQuery& q) {
    if (q.tau < 2) throw std::invalid_argument("tau must be at least 2");
    for (int wi : q.morphism.dst.w)
        if (wi % q.tau != 0) throw std::invalid_argument("tau must divide the target weights");
    if (q.radical_gain_cap < 1) throw std::invalid_argument("radical gain cap must be positive");
}

bool discriminant_zero(const BaseField& F, const std::vector<FieldElement>& ab) {
    FieldElement a3 = fe_mul(F, ab[0], fe_mul(F, ab[0], ab[0]));
    FieldElement b2 = fe_mul(F, ab[1], ab[1]);
    return fe_add(fe_mul(F, FieldElement(Rat(4)), a3), fe_mul(F, FieldElement(Rat(27)), b2))
        .is_zero();
}

// per-source bookkeeping for the accepted canonical representatives
struct Entry {
    long cls = 0;
    std::string defect_key;
    std::string image_key;
    std::vector<FieldElement> image_coords;
    long image_cls = 0;
};

// acceptance test on one canonical source representative; imgBound is exact
bool evaluate_entry(const CountQuery& q, const NormalizedRep& rep, const Rat& imgBound,
                    Entry& e) {
    const BaseField& F = q.field;
    const WeightedMorphism& f = q.morphism;
    if (q.class_filter && *q.class_filter != rep.class_index) return false;
    if (!q.conditions.empty() && !satisfies(F, rep.coords, q.conditions)) return false;
    e.cls = rep.class_index;
    WeightedPoint R(F, f.src, rep.coords);
    bool want_defect = q.breakdown_by_defect || q.defect_filter.has_value();
    if (f.is_identity()) {
        if (!height_of_rep(F, f.src, rep.coords, rep.scaling).leq(imgBound)) return false;
        if (q.exclude_discriminant_zero && discriminant_zero(F, rep.coords)) return false;
        if (q.defect_filter && !q.defect_filter->is_unit_ideal()) return false;
        if (want_defect) e.defect_key = ideal_one(F).str();
        e.image_key = rep.key();
        e.image_coords = rep.coords;
        e.image_cls = rep.class_index;
        return true;
    }
    WeightedPoint img = evaluate(F, f, R);
    if (!height(img).leq(imgBound)) return false;
    if (q.exclude_discriminant_zero && discriminant_zero(F, img.coords)) return false;
    if (want_defect) {
        IntegralIdeal d = defect(F, f, R);
        if (q.defect_filter && !(d == *q.defect_filter)) return false;
        e.defect_key = d.str();
    }
    NormalizedRep irep = normalize(img);
    e.image_key = irep.key();
    e.image_coords = std::move(irep.coords);
    e.image_cls = irep.class_index;
    return true;
}

// candidates for one coordinate of a source box of height srcB; exact over Q
std::vector<FieldElement> source_candidates(const BaseField& F, int wi, const Rat& srcB) {
    if (F.is_rational()) {
        std::vector<FieldElement> out;
        Int M = rat_floor(rat_pow(srcB, wi));
        if (M < 0) return out;
        if (!M.fits_slong_p()) throw BudgetError(std::numeric_limits<long>::max());
        for (long v = -M.get_si(); v <= M.get_si(); ++v) out.emplace_back(Rat(v));
        return out;
    }
    return coordinate_candidates(F, wi, srcB.get_d());
}

long box_size(const std::vector<std::vector<FieldElement>>& cand, long budget) {
    long total = 1;
    for (const auto& c : cand) {
        if (c.empty()) return 0;
        if (total > budget / (long)c.size() + 1) throw BudgetError(budget + 1);
        total *= (long)c.size();
    }
    if (total > budget) throw BudgetError(total);
    return total;
}

// enumerate canonical source representatives in the srcB box, keep those accepted
// against imgBound; outer coordinate range partitioned across workers
std::map<std::string, Entry> survey(const CountQuery& q, const Rat& srcB, const Rat& imgBound,
                                    long& tuples) {
    const BaseField& F = q.field;
    std::vector<std::vector<FieldElement>> cand;
    for (int wi : q.morphism.src.w) cand.push_back(source_candidates(F, wi, srcB));
    tuples = box_size(cand, q.budget);
    std::map<std::string, Entry> merged;
    if (tuples == 0) return merged;
    // |N(y_i)| <= (B * gain)^(d w'_i) for any accepted image, and the norms only
    // grow along the scaling orbit, so raw tuples violating this cannot matter:
    // the reduced representative of anything accepted passes on its own
    bool prune = !q.morphism.is_identity() && q.image_gain_hint > 1;
    std::vector<Rat> rawcap;
    if (prune) {
        Rat hb = imgBound * Rat(q.image_gain_hint);
        for (int wi : q.morphism.dst.w) rawcap.push_back(rat_pow(hb, F.degree() * wi));
    }
    int nth = q.workers > 0 ? q.workers : omp_get_max_threads();
    std::vector<std::map<std::string, Entry>> locals(nth);
#pragma omp parallel num_threads(nth)
    {
        auto& local = locals[omp_get_thread_num()];
        std::vector<FieldElement> xs(cand.size());
#pragma omp for schedule(dynamic)
        for (long i0 = 0; i0 < (long)cand[0].size(); ++i0) {
            std::vector<size_t> idx(cand.size(), 0);
            while (true) {
                xs[0] = cand[0][i0];
                bool zero = xs[0].is_zero();
                for (size_t i = 1; i < idx.size(); ++i) {
                    xs[i] = cand[i][idx[i]];
                    zero = zero && xs[i].is_zero();
                }
                if (!zero && prune) {
                    for (size_t i = 0; i < q.morphism.polys.size(); ++i) {
                        Rat nm = fe_norm(F, q.morphism.polys[i].evaluate(F, xs));
                        if (abs(nm) > rawcap[i]) {
                            zero = true;  // discard without normalizing
                            break;
                        }
                    }
                }
                if (!zero) {
                    NormalizedRep rep = normalize(WeightedPoint(F, q.morphism.src, xs));
                    if (!local.count(rep.key())) {
                        Entry e;
                        if (evaluate_entry(q, rep, imgBound, e))
                            local.emplace(rep.key(), std::move(e));
                    }
                }
                size_t i = 1;
                for (; i < idx.size(); ++i) {
                    if (++idx[i] < cand[i].size()) break;
                    idx[i] = 0;
                }
                if (i == idx.size()) break;
            }
        }
    }
    for (auto& local : locals)
        for (auto& kv : local) merged.insert(std::move(kv));
    return merged;
}

// non-identity morphisms can map high sources to low images (defect and archimedean
// contraction), so the source box is grown until the accepted set stabilizes
std::map<std::string, Entry> stable_survey(const CountQuery& q, const Rat& imgBound,
                                           long& tuples) {
    if (q.morphism.is_identity()) return survey(q, imgBound, imgBound, tuples);
    // a caller-certified source bound avoids the growth rounds entirely
    if (q.source_bound_hint > 0) return survey(q, q.source_bound_hint, imgBound, tuples);
    double b0 = std::pow(imgBound.get_d(), 1.0 / (double)q.morphism.e_f);
    Rat srcB(rat_ceil(Rat(b0 * 2 + 1)));
    auto acc = survey(q, srcB, imgBound, tuples);
    for (int it = 0; it < 4; ++it) {
        long t2 = 0;
        srcB *= 2;
        auto acc2 = survey(q, srcB, imgBound, t2);
        tuples = t2;
        bool same = acc2.size() == acc.size();
        acc = std::move(acc2);
        if (same) return acc;
    }
    throw std::runtime_error("source box did not stabilize");
}

// fast path: Q, identity morphism, plain integer arithmetic
CountReport fast_source_rational(const CountQuery& q) {
    const WeightVector& w = q.morphism.src;
    size_t n = w.w.size();
    std::vector<long> M(n);
    long total_box = 1;
    for (size_t i = 0; i < n; ++i) {
        Int m = rat_floor(rat_pow(q.bound, w.w[i]));
        if (m < 0) m = -1;
        if (!m.fits_slong_p()) throw BudgetError(std::numeric_limits<long>::max());
        M[i] = m.get_si();
        long span = 2 * M[i] + 1;
        if (span <= 0) span = 0;
        if (span == 0 || total_box > q.budget / std::max(span, 1L)) {
            if (span == 0) { total_box = 0; break; }
            throw BudgetError(q.budget + 1);
        }
        total_box *= span;
    }
    bool any_odd = false;
    for (int wi : w.w) any_odd = any_odd || (wi % 2 != 0);
    const BaseField F = BaseField::rationals();
    long count = 0;
    if (total_box > 0 && !(q.class_filter && *q.class_filter != 0)) {
        int nth = q.workers > 0 ? q.workers : omp_get_max_threads();
#pragma omp parallel num_threads(nth) reduction(+ : count)
        {
            std::vector<long> v(n, 0);
            std::vector<FieldElement> xs(n);
#pragma omp for schedule(dynamic)
            for (long v0 = -M[0]; v0 <= M[0]; ++v0) {
                std::vector<long> idx(n, 0);
                for (size_t i = 1; i < n; ++i) idx[i] = -M[i];
                while (true) {
                    v[0] = v0;
                    for (size_t i = 1; i < n; ++i) v[i] = idx[i];
                    bool zero = true;
                    for (long vi : v) zero = zero && vi == 0;
                    if (!zero) {
                        // minimal: no prime p with p^{w_i} | v_i for all i
                        long g = 0;
                        for (long vi : v) g = std::gcd(g, std::abs(vi));
                        bool minimal = true;
                        long gg = g;
                        for (long p = 2; p * p <= gg && minimal; ++p) {
                            if (gg % p != 0) continue;
                            while (gg % p == 0) gg /= p;
                            bool all = true;
                            for (size_t i = 0; i < n && all; ++i) {
                                if (v[i] == 0) continue;
                                long pw = 1;
                                bool over = false;
                                for (int k = 0; k < w.w[i]; ++k) {
                                    if (pw > std::abs(v[i]) / p) { over = true; break; }
                                    pw *= p;
                                }
                                all = !over && v[i] % pw == 0;
                            }
                            minimal = !all;
                        }
                        if (minimal && gg > 1) {
                            long p = gg;
                            bool all = true;
                            for (size_t i = 0; i < n && all; ++i) {
                                if (v[i] == 0) continue;
                                long pw = 1;
                                bool over = false;
                                for (int k = 0; k < w.w[i]; ++k) {
                                    if (pw > std::abs(v[i]) / p) { over = true; break; }
                                    pw *= p;
                                }
                                all = !over && v[i] % pw == 0;
                            }
                            minimal = !all;
                        }
                        bool ok = minimal;
                        if (ok && any_odd) {
                            // canonical under negation: lexicographically not below its twin
                            for (size_t i = 0; i < n; ++i) {
                                long s = (w.w[i] % 2 != 0) ? -v[i] : v[i];
                                if (v[i] == s) continue;
                                ok = v[i] > s;
                                break;
                            }
                        }
                        if (ok && q.exclude_discriminant_zero) {
                            // target (4,6): 4A^3 + 27B^2 = 0
                            Int A(v[0]), Bc(v[1]);
                            ok = !(4 * A * A * A + 27 * Bc * Bc == 0);
                        }
                        if (ok && !q.conditions.empty()) {
                            for (size_t i = 0; i < n; ++i) xs[i] = FieldElement(Rat(v[i]));
                            ok = satisfies(F, xs, q.conditions);
                        }
                        if (ok) ++count;
                    }
                    size_t i = 1;
                    for (; i < n; ++i) {
                        if (++idx[i] <= M[i]) break;
                        idx[i] = -M[i];
                    }
                    if (i == n) break;
                }
            }
        }
    }
    CountReport r;
    r.mode_str = "source_points";
    r.bound_str = q.bound.get_str();
    r.total = count;
    r.box_tuples = total_box;
    if (q.breakdown_by_class) r.by_class[0] = count;
    if (q.breakdown_by_defect) r.by_defect[ideal_one(F).str()] = count;
    return r;
}

// b_x: per-prime twist levels of an integral representative (valuations reduced mod w_s)
IntegralIdeal bx_ideal(const BaseField& F, const WeightVector& w,
                       const std::vector<FieldElement>& coords, int tau) {
    std::vector<FieldElement> nz;
    for (const auto& c : coords)
        if (!c.is_zero()) nz.push_back(c);
    IntegralIdeal G = ideal_principal(F, nz[0]);
    for (size_t i = 1; i < nz.size(); ++i) G = ideal_add(F, G, ideal_principal(F, nz[i]));
    IntegralIdeal out = ideal_one(F);
    for (auto& [P, e] : factor_ideal(F, G)) {
        Rat m(-1);
        for (size_t i = 0; i < coords.size(); ++i) {
            if (coords[i].is_zero()) continue;
            Rat mi = make_rat(Int(element_valuation(F, coords[i], P)), Int(w.w[i]));
            if (m < 0 || mi < m) m = mi;
        }
        m -= rat_floor(m);  // reduce the minimizing valuation mod its weight
        if (m >= make_rat(Int(1), Int(tau))) {
            Int b = rat_ceil(Rat(tau) * (1 - m));
            out = ideal_mul(F, out, ideal_pow(F, P.ideal, b.get_ui()));
        }
    }
    return out;
}

Int radical_norm(const BaseField& F, const IntegralIdeal& I) {
    Int g = 1;
    for (auto& [P, e] : factor_ideal(F, I)) g *= P.norm();
    return g;
}

CountReport finalize(CountReport r, std::chrono::steady_clock::time_point t0) {
    r.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace

CountReport count_source_points(const CountQuery& q) {
    auto t0 = std::chrono::steady_clock::now();
    validate_query(q);
    if (q.field.is_rational() && q.morphism.is_identity() && !q.defect_filter)
        return finalize(fast_source_rational(q), t0);
    long tuples = 0;
    auto acc = stable_survey(q, q.bound, tuples);
    CountReport r;
    r.mode_str = "source_points";
    r.bound_str = q.bound.get_str();
    r.total = (long)acc.size();
    r.box_tuples = tuples;
    for (auto& [k, e] : acc) {
        if (q.breakdown_by_class) ++r.by_class[e.cls];
        if (q.breakdown_by_defect) ++r.by_defect[e.defect_key];
    }
    return finalize(std::move(r), t0);
}

CountReport count_image_points(const CountQuery& q) {
    auto t0 = std::chrono::steady_clock::now();
    validate_query(q);
    if (q.morphism.is_identity()) {
        CountReport r = count_source_points(q);
        r.mode_str = "image_points";
        r.source_total = r.total;
        r.source_image_ratio = 1.0;
        return finalize(std::move(r), t0);
    }
    long tuples = 0;
    auto acc = stable_survey(q, q.bound, tuples);
    CountReport r;
    r.mode_str = "image_points";
    r.bound_str = q.bound.get_str();
    r.box_tuples = tuples;
    r.source_total = (long)acc.size();
    std::map<std::string, const Entry*> images;
    for (auto& [k, e] : acc)
        images.emplace(e.image_key, &e);  // first source key is the lex-min preimage
    r.total = (long)images.size();
    for (auto& [k, e] : images) {
        if (q.breakdown_by_class) ++r.by_class[e->image_cls];
        if (q.breakdown_by_defect) ++r.by_defect[e->defect_key];
    }
    r.source_image_ratio = r.total ? (double)r.source_total / (double)r.total : 0.0;
    return finalize(std::move(r), t0);
}

CountReport count_twisted_pairs(const CountQuery& q) {
    auto t0 = std::chrono::steady_clock::now();
    validate_query(q);
    validate_twisted(q);
    const BaseField& F = q.field;
    const WeightVector& w = q.morphism.dst;
    Rat imgBound = q.bound * Rat(q.radical_gain_cap);
    long tuples = 0;
    auto acc = stable_survey(q, imgBound, tuples);
    std::map<std::string, const Entry*> images;
    for (auto& [k, e] : acc) images.emplace(e.image_key, &e);
    CountReport r;
    r.mode_str = "twisted_pairs";
    r.bound_str = q.bound.get_str();
    r.box_tuples = tuples;
    r.source_total = (long)images.size();
    for (auto& [k, eptr] : images) {
        const auto& x = eptr->image_coords;
        IntegralIdeal bx = bx_ideal(F, w, x, q.tau);
        Int gain = radical_norm(F, bx);
        if (gain >= q.radical_gain_cap) r.twist_truncated = true;
        if (gain > q.radical_gain_cap) gain = q.radical_gain_cap;
        WeightedPoint X(F, w, x);
        long pairs = 0;
        if (q.trivial_twist_only) {
            if (height(X).leq(q.bound)) pairs = 1;
        } else {
            double hx = height(X).approx();
            double dbound = q.bound.get_d() * gain.get_d() / hx;
            Rat dB(rat_ceil(Rat(dbound * 1.05)) + 1);
            for (const auto& drep :
                 small_height_points(F, WeightVector{std::vector<int>{q.tau}}, dB)) {
                WeightedPoint Xd = twist(X, drep.coords[0], q.tau);
                if (height(Xd).leq(q.bound)) ++pairs;
            }
        }
        if (pairs) {
            r.total += pairs;
            r.by_bx[bx.str()] += pairs;
            if (q.breakdown_by_class) r.by_class[eptr->image_cls] += pairs;
        }
    }
    return finalize(std::move(r), t0);
}

CountReport count_reference(const CountQuery& q) {
    auto t0 = std::chrono::steady_clock::now();
    validate_query(q);
    if (q.mode == CountMode::twisted_pairs) validate_twisted(q);
    Rat imgBound = q.mode == CountMode::twisted_pairs ? q.bound * Rat(q.radical_gain_cap)
                                                      : q.bound;
    const BaseField& F = q.field;
    // plain serial scan, growing the box until the accepted set stabilizes
    std::map<std::string, Entry> acc;
    bool single = q.morphism.is_identity() || q.source_bound_hint > 0;
    Rat srcB = q.morphism.is_identity() ? imgBound
               : q.source_bound_hint > 0
                   ? q.source_bound_hint
                   : Rat(rat_ceil(Rat(
                         std::pow(imgBound.get_d(), 1.0 / (double)q.morphism.e_f) * 2 + 1)));
    int rounds = single ? 1 : 5;
    long tuples = 0;
    for (int round = 0; round < rounds; ++round) {
        if (round) srcB *= 2;
        std::map<std::string, Entry> cur;
        std::vector<std::vector<FieldElement>> cand;
        for (int wi : q.morphism.src.w) cand.push_back(source_candidates(F, wi, srcB));
        tuples = box_size(cand, q.budget);
        std::vector<size_t> idx(cand.size(), 0);
        std::vector<FieldElement> xs(cand.size());
        if (tuples)
            while (true) {
                bool zero = true;
                for (size_t i = 0; i < idx.size(); ++i) {
                    xs[i] = cand[i][idx[i]];
                    zero = zero && xs[i].is_zero();
                }
                if (!zero) {
                    NormalizedRep rep = normalize(WeightedPoint(F, q.morphism.src, xs));
                    if (!cur.count(rep.key())) {
                        Entry e;
                        if (evaluate_entry(q, rep, imgBound, e)) cur.emplace(rep.key(), e);
                    }
                }
                size_t i = 0;
                for (; i < idx.size(); ++i) {
                    if (++idx[i] < cand[i].size()) break;
                    idx[i] = 0;
                }
                if (i == idx.size()) break;
            }
        bool same = round > 0 && cur.size() == acc.size();
        acc = std::move(cur);
        if (single || same) break;
        if (round == rounds - 1) throw std::runtime_error("source box did not stabilize");
    }
    CountReport r;
    r.bound_str = q.bound.get_str();
    r.box_tuples = tuples;
    if (q.mode == CountMode::source_points) {
        r.mode_str = "source_points";
        r.total = (long)acc.size();
        for (auto& [k, e] : acc) {
            if (q.breakdown_by_class) ++r.by_class[e.cls];
            if (q.breakdown_by_defect) ++r.by_defect[e.defect_key];
        }
        return finalize(std::move(r), t0);
    }
    std::map<std::string, const Entry*> images;
    for (auto& [k, e] : acc) images.emplace(e.image_key, &e);
    if (q.mode == CountMode::image_points) {
        r.mode_str = "image_points";
        r.source_total = (long)acc.size();
        r.total = (long)images.size();
        for (auto& [k, e] : images) {
            if (q.breakdown_by_class) ++r.by_class[e->image_cls];
            if (q.breakdown_by_defect) ++r.by_defect[e->defect_key];
        }
        r.source_image_ratio = r.total ? (double)r.source_total / (double)r.total : 0.0;
        return finalize(std::move(r), t0);
    }
    r.mode_str = "twisted_pairs";
    r.source_total = (long)images.size();
    for (auto& [k, eptr] : images) {
        const auto& x = eptr->image_coords;
        IntegralIdeal bx = bx_ideal(F, q.morphism.dst, x, q.tau);
        Int gain = radical_norm(F, bx);
        if (gain >= q.radical_gain_cap) r.twist_truncated = true;
        if (gain > q.radical_gain_cap) gain = q.radical_gain_cap;
        WeightedPoint X(F, q.morphism.dst, x);
        long pairs = 0;
        if (q.trivial_twist_only) {
            if (height(X).leq(q.bound)) pairs = 1;
        } else {
            double dbound = q.bound.get_d() * gain.get_d() / height(X).approx();
            Rat dB(rat_ceil(Rat(dbound * 1.05)) + 1);
            for (const auto& drep :
                 small_height_points(F, WeightVector{std::vector<int>{q.tau}}, dB))
                if (height(twist(X, drep.coords[0], q.tau)).leq(q.bound)) ++pairs;
        }
        if (pairs) {
            r.total += pairs;
            r.by_bx[bx.str()] += pairs;
            if (q.breakdown_by_class) r.by_class[eptr->image_cls] += pairs;
        }
    }
    return finalize(std::move(r), t0);
}

void enumerate_box(const BaseField& F, const std::vector<Rat>& bounds,
                   const std::function<void(const std::vector<FieldElement>&)>& emit) {
    std::vector<std::vector<FieldElement>> cand;
    for (const Rat& b : bounds) {
        std::vector<FieldElement> c;
        if (b >= 0) {
            if (F.is_rational()) {
                Int M = rat_floor(b);
                for (Int v = -M; v <= M; ++v) c.emplace_back(Rat(v));
            } else if (F.D() < 0) {
                double Nb = b.get_d();
                long bmax =
                    (long)std::floor(std::sqrt(4 * Nb / std::abs(F.discriminant().get_d()))) + 1;
                double t = (double)F.omega_trace();
                for (long bb = -bmax; bb <= bmax; ++bb) {
                    double ctr = -0.5 * t * bb, rad = std::sqrt(std::max(0.0, Nb)) + 1;
                    for (long aa = (long)std::floor(ctr - rad); aa <= (long)std::ceil(ctr + rad);
                         ++aa) {
                        FieldElement x{Rat(aa), Rat(bb)};
                        if (fe_norm(F, x) <= b) c.push_back(x);
                    }
                }
            } else {
                double bd = b.get_d();
                double sD = std::sqrt((double)F.D());
                double spread = F.omega_is_half() ? sD : 2 * sD;
                long bmax = (long)std::ceil(2 * bd / spread) + 1;
                QuadExact qb(b, Rat(0), F.D());
                for (long bb = -bmax; bb <= bmax; ++bb) {
                    double w1 = F.omega_is_half() ? bb * (1 + sD) / 2 : bb * sD;
                    double w2 = F.omega_is_half() ? bb * (1 - sD) / 2 : -bb * sD;
                    double lo = std::max(-bd - w1, -bd - w2), hi = std::min(bd - w1, bd - w2);
                    for (long aa = (long)std::floor(lo) - 1; aa <= (long)std::ceil(hi) + 1; ++aa) {
                        FieldElement x{Rat(aa), Rat(bb)};
                        if (fe_embed(F, x).abs() <= qb &&
                            fe_embed(F, fe_conj(F, x)).abs() <= qb)
                            c.push_back(x);
                    }
                }
            }
        }
        if (c.empty()) return;  // empty box, empty stream
        cand.push_back(std::move(c));
    }
    if (cand.empty()) return;
    std::vector<size_t> idx(cand.size(), 0);
    std::vector<FieldElement> xs(cand.size());
    while (true) {
        for (size_t i = 0; i < idx.size(); ++i) xs[i] = cand[i][idx[i]];
        emit(xs);
        size_t i = 0;
        for (; i < idx.size(); ++i) {
            if (++idx[i] < cand[i].size()) break;
            idx[i] = 0;
        }
        if (i == idx.size()) break;
    }
}

std::string CountReport::to_json() const {
    nlohmann::json j;
    j["mode"] = mode_str;
    j["bound"] = bound_str;
    j["total"] = total;
    if (source_total) {
        j["source_total"] = source_total;
        j["source_image_ratio"] = source_image_ratio;
    }
    for (auto& [k, v] : by_class) j["by_class"][std::to_string(k)] = v;
    for (auto& [k, v] : by_defect) j["by_defect"][k] = v;
    for (auto& [k, v] : by_bx) j["by_bx"][k] = v;
    j["box_tuples"] = box_tuples;
    if (twist_truncated) j["twist_truncated"] = true;
    j["seconds"] = seconds;
    return j.dump();
}

std::string CountReport::to_csv_row() const {
    std::ostringstream os;
    os << bound_str << ',' << total << ',';
    bool first = true;
    for (auto& [k, v] : by_class) {
        if (!first) os << ';';
        os << k << ':' << v;
        first = false;
    }
    os << ',' << seconds;
    return os.str();
}

}  // namespace wpc
