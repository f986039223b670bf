#include "wpc/field.hpp"

#include <sstream>

namespace wpc {

BaseField BaseField::quadratic(long D) {
    if (D == 0 || D == 1) throw std::domain_error("quadratic field needs D != 0,1");
    if (!is_squarefree_int(Int(D))) throw std::domain_error("D must be squarefree");
    BaseField F;
    F.kind_ = Kind::quadratic;
    F.D_ = D;
    long m = ((D % 4) + 4) % 4;
    F.omega_half_ = (m == 1);
    F.disc_ = F.omega_half_ ? Int(D) : Int(4) * D;
    F.degree_ = 2;
    if (D > 0) { F.r1_ = 2; F.r2_ = 0; }
    else { F.r1_ = 0; F.r2_ = 1; }
    return F;
}

std::string BaseField::str() const {
    if (is_rational()) return "Q";
    return "Q(sqrt " + std::to_string(D_) + ")";
}

FieldElement fe_add(const FieldElement& x, const FieldElement& y) { return {x.a + y.a, x.b + y.b}; }
FieldElement fe_sub(const FieldElement& x, const FieldElement& y) { return {x.a - y.a, x.b - y.b}; }
FieldElement fe_neg(const FieldElement& x) { return {-x.a, -x.b}; }

FieldElement fe_mul(const BaseField& F, const FieldElement& x, const FieldElement& y) {
    if (F.is_rational()) return {x.a * y.a, Rat(0)};
    Rat t(F.omega_trace()), n(F.omega_norm());
    // omega^2 = t*omega - n
    return {x.a * y.a - x.b * y.b * n, x.a * y.b + x.b * y.a + x.b * y.b * t};
}

FieldElement fe_conj(const BaseField& F, const FieldElement& x) {
    if (F.is_rational()) return x;
    return {x.a + x.b * Rat(F.omega_trace()), -x.b};
}

Rat fe_norm(const BaseField& F, const FieldElement& x) {
    if (F.is_rational()) return x.a;
    return x.a * x.a + x.a * x.b * Rat(F.omega_trace()) + x.b * x.b * Rat(F.omega_norm());
}

Rat fe_trace(const BaseField& F, const FieldElement& x) {
    if (F.is_rational()) return x.a;
    return 2 * x.a + x.b * Rat(F.omega_trace());
}

FieldElement fe_inv(const BaseField& F, const FieldElement& x) {
    if (x.is_zero()) throw std::domain_error("division by zero");
    if (F.is_rational()) return {1 / x.a, Rat(0)};
    Rat n = fe_norm(F, x);
    FieldElement c = fe_conj(F, x);
    return {c.a / n, c.b / n};
}

FieldElement fe_div(const BaseField& F, const FieldElement& x, const FieldElement& y) {
    return fe_mul(F, x, fe_inv(F, y));
}

FieldElement fe_pow(const BaseField& F, const FieldElement& x, long e) {
    FieldElement r{Rat(1)}, base = x;
    unsigned long k = e < 0 ? -(unsigned long)e : (unsigned long)e;
    while (k) {
        if (k & 1) r = fe_mul(F, r, base);
        base = fe_mul(F, base, base);
        k >>= 1;
    }
    return e < 0 ? fe_inv(F, r) : r;
}

bool fe_is_integral(const BaseField& F, const FieldElement& x) {
    return x.a.get_den() == 1 && x.b.get_den() == 1;
}

QuadExact fe_embed(const BaseField& F, const FieldElement& x) {
    if (F.is_rational()) return QuadExact(x.a);
    if (F.D() < 0) throw std::domain_error("no real embedding for imaginary quadratic field");
    if (F.omega_is_half()) return QuadExact(x.a + x.b / 2, x.b / 2, F.D());
    return QuadExact(x.a, x.b, F.D());
}

std::vector<ArchAbs> archimedean_abs(const BaseField& F, const FieldElement& x) {
    std::vector<ArchAbs> out;
    if (F.is_rational()) {
        Rat v = x.a < 0 ? -x.a : x.a;
        out.push_back({false, QuadExact(v)});
    } else if (F.D() < 0) {
        Rat n = fe_norm(F, x);  // = |x|^2, the normalized value at the complex place
        out.push_back({true, QuadExact(n)});
    } else {
        QuadExact e1 = fe_embed(F, x);
        QuadExact e2 = fe_embed(F, fe_conj(F, x));
        out.push_back({false, e1.abs()});
        out.push_back({false, e2.abs()});
    }
    return out;
}

std::string fe_str(const FieldElement& x) {
    if (x.b == 0) return x.a.get_str();
    std::ostringstream os;
    Rat babs = x.b < 0 ? Rat(-x.b) : x.b;
    os << x.a.get_str() << (x.b < 0 ? "-" : "+") << babs.get_str() << "*w";
    return os.str();
}

namespace {
Rat rat_parse(const std::string& s) {
    Rat r(s);
    r.canonicalize();
    return r;
}
}  // namespace

FieldElement fe_parse(const std::string& s) {
    // "a/b" or "a/b+c/e*w" (also with '-')
    auto star = s.find("*w");
    if (star == std::string::npos) return FieldElement(rat_parse(s));
    // split off the trailing rational coefficient of w
    size_t split = std::string::npos;
    for (size_t i = star; i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != '/' && s[i - 1] != '+' && s[i - 1] != '-') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) {  // pure "c*w" or "-c*w"
        return FieldElement(Rat(0), rat_parse(s.substr(0, star)));
    }
    Rat a = rat_parse(s.substr(0, split));
    std::string bs = s.substr(split, star - split);
    if (bs == "+") bs = "1";
    else if (bs == "-") bs = "-1";
    return FieldElement(a, rat_parse(bs));
}

}  // namespace wpc
