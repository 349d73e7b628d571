#include "frids/fuzzy.hpp"

#include "frids/errors.hpp"

#include <algorithm>
#include <cmath>

namespace frids {

FuzzySetDescriptor make_triangular(std::string name, double a, double b, double c) {
    FuzzySetDescriptor set;
    set.name = std::move(name);
    set.shape = FuzzyShape::triangular;
    set.a = a;
    set.b = b;
    set.c = c;
    validate_set(set);
    return set;
}

FuzzySetDescriptor make_trapezoidal(std::string name, double a, double b, double c, double d) {
    FuzzySetDescriptor set;
    set.name = std::move(name);
    set.shape = FuzzyShape::trapezoidal;
    set.a = a;
    set.b = b;
    set.c = c;
    set.d = d;
    validate_set(set);
    return set;
}

FuzzySetDescriptor make_crisp(std::string name, std::size_t category) {
    FuzzySetDescriptor set;
    set.name = std::move(name);
    set.shape = FuzzyShape::crisp_equality;
    set.category = category;
    return set;
}

void validate_set(const FuzzySetDescriptor& set) {
    if (set.shape == FuzzyShape::crisp_equality)
        return;
    const bool trapezoid = set.shape == FuzzyShape::trapezoidal;
    const double last = trapezoid ? set.d : set.c;
    if (!std::isfinite(set.a) || !std::isfinite(set.b) || !std::isfinite(set.c) ||
        (trapezoid && !std::isfinite(set.d)))
        throw InvariantError("fuzzy set '" + set.name + "': non-finite breakpoint");
    if (set.a > set.b || set.b > set.c || (trapezoid && set.c > set.d))
        throw InvariantError("fuzzy set '" + set.name + "': breakpoints must be non-decreasing");
    (void)last;
}

namespace {

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

double triangular_at(const FuzzySetDescriptor& s, double x) {
    if (x < s.a || x > s.c)
        return 0.0;
    if (x == s.b)
        return 1.0;
    // Degenerate feet (a == b or b == c) fall into the branches above.
    if (x < s.b)
        return (x - s.a) / (s.b - s.a);
    return (s.c - x) / (s.c - s.b);
}

double trapezoidal_at(const FuzzySetDescriptor& s, double x) {
    if (x < s.a || x > s.d)
        return 0.0;
    if (x >= s.b && x <= s.c)
        return 1.0;
    if (x < s.b)
        return (x - s.a) / (s.b - s.a);
    return (s.d - x) / (s.d - s.c);
}

} // namespace

ExtendedFuzzyValue membership_at(const FuzzySetDescriptor& set, double x) {
    if (set.shape == FuzzyShape::crisp_equality) {
        const bool match = std::llround(x) == static_cast<long long>(set.category);
        return {match ? 1.0 : 0.0, 0.0};
    }
    const double xc = clamp_unit(x);
    const double mu = set.shape == FuzzyShape::triangular ? triangular_at(set, xc)
                                                          : trapezoidal_at(set, xc);
    return {clamp_unit(mu), 0.0};
}

ExtendedFuzzyValue complement(const ExtendedFuzzyValue& v) {
    return {1.0, v.mu1 - v.mu2};
}

ExtendedFuzzyValue conjunction(std::span<const ExtendedFuzzyValue> values) {
    if (values.empty())
        throw InvariantError("conjunction over empty value list");
    const ExtendedFuzzyValue* best = &values[0];
    for (const auto& v : values.subspan(1))
        if (v.effective() < best->effective())
            best = &v;
    return *best;
}

ExtendedFuzzyValue disjunction(std::span<const ExtendedFuzzyValue> values) {
    if (values.empty())
        throw InvariantError("disjunction over empty value list");
    const ExtendedFuzzyValue* best = &values[0];
    for (const auto& v : values.subspan(1))
        if (v.effective() > best->effective())
            best = &v;
    return *best;
}

} // namespace frids
