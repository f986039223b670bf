#pragma once

#include <string>

#include "wpc/intutil.hpp"
#include "wpc/quadexact.hpp"

namespace wpc {

// K = Q or Q(sqrt(D)), D squarefree. Elements are written a + b*omega where
// omega = (1+sqrt(D))/2 when D = 1 (mod 4) and omega = sqrt(D) otherwise.
class BaseField {
public:
    enum class Kind { rational, quadratic };

    static BaseField rationals() { return BaseField(); }
    static BaseField quadratic(long D);

    Kind kind() const { return kind_; }
    bool is_rational() const { return kind_ == Kind::rational; }
    long D() const { return D_; }
    const Int& discriminant() const { return disc_; }
    int r1() const { return r1_; }
    int r2() const { return r2_; }
    int degree() const { return degree_; }
    bool omega_is_half() const { return omega_half_; }

    // trace and norm of omega: omega^2 = trace*omega - norm
    long omega_trace() const { return omega_half_ ? 1 : 0; }
    Int omega_norm() const { return omega_half_ ? Int((1 - D_) / 4) : Int(-D_); }

    bool operator==(const BaseField& o) const { return kind_ == o.kind_ && D_ == o.D_; }
    std::string str() const;

private:
    BaseField() = default;
    Kind kind_ = Kind::rational;
    long D_ = 0;
    Int disc_ = 1;
    int r1_ = 1, r2_ = 0, degree_ = 1;
    bool omega_half_ = false;
};

struct FieldElement {
    Rat a, b;  // a + b*omega

    FieldElement() : a(0), b(0) {}
    FieldElement(Rat a_) : a(std::move(a_)), b(0) {}
    FieldElement(Rat a_, Rat b_) : a(std::move(a_)), b(std::move(b_)) {}
    static FieldElement omega() { return FieldElement(Rat(0), Rat(1)); }

    bool is_zero() const { return a == 0 && b == 0; }
    bool operator==(const FieldElement& o) const { return a == o.a && b == o.b; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
};

FieldElement fe_add(const FieldElement& x, const FieldElement& y);
FieldElement fe_sub(const FieldElement& x, const FieldElement& y);
FieldElement fe_neg(const FieldElement& x);
FieldElement fe_mul(const BaseField& F, const FieldElement& x, const FieldElement& y);
FieldElement fe_conj(const BaseField& F, const FieldElement& x);
Rat fe_norm(const BaseField& F, const FieldElement& x);
Rat fe_trace(const BaseField& F, const FieldElement& x);
FieldElement fe_inv(const BaseField& F, const FieldElement& x);
FieldElement fe_div(const BaseField& F, const FieldElement& x, const FieldElement& y);
FieldElement fe_pow(const BaseField& F, const FieldElement& x, long e);
bool fe_is_integral(const BaseField& F, const FieldElement& x);

// first real embedding as an exact surd (rational for K = Q); for imaginary
// quadratic fields this is meaningless and throws.
QuadExact fe_embed(const BaseField& F, const FieldElement& x);

// normalized absolute values: one per archimedean place, complex places
// squared so that their product is |N(x)|.
struct ArchAbs {
    bool complex_place;
    QuadExact value;  // exact when real (or modulus^2, which is rational)
};
std::vector<ArchAbs> archimedean_abs(const BaseField& F, const FieldElement& x);

std::string fe_str(const FieldElement& x);
FieldElement fe_parse(const std::string& s);

}  // namespace wpc
