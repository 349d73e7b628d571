#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace frids {

// Extended fuzzy value: a membership function value mu1 paired with a
// reference function value mu2, 0 <= mu2 <= mu1 <= 1. The operational
// membership degree is mu1 - mu2; keeping the pair (instead of collapsing
// to the difference) is what lets the complement count from the surface
// rather than from zero.
struct ExtendedFuzzyValue {
    double mu1 = 0.0;
    double mu2 = 0.0;

    double effective() const { return mu1 - mu2; }

    bool operator==(const ExtendedFuzzyValue&) const = default;
};

enum class FuzzyShape { triangular, trapezoidal, crisp_equality };

// A linguistic set over the normalized [0,1] feature axis, or a crisp
// category matcher for symbolic features.
struct FuzzySetDescriptor {
    std::string name;
    FuzzyShape shape = FuzzyShape::triangular;
    // triangular: a <= b <= c.  trapezoidal: a <= b <= c <= d.
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
    std::size_t category = 0; // crisp_equality only

    bool operator==(const FuzzySetDescriptor&) const = default;
};

FuzzySetDescriptor make_triangular(std::string name, double a, double b, double c);
FuzzySetDescriptor make_trapezoidal(std::string name, double a, double b, double c, double d);
FuzzySetDescriptor make_crisp(std::string name, std::size_t category);

// Throws InvariantError if breakpoints are non-finite or decreasing.
void validate_set(const FuzzySetDescriptor& set);

// Degree of x in the set, as a plain extended value (reference function 0).
// x is clamped into [0,1] for the piecewise-linear shapes; for crisp sets x
// is a category index and matching is exact.
ExtendedFuzzyValue membership_at(const FuzzySetDescriptor& set, double x);

// Baruah complement: membership function 1 everywhere, reference function
// equal to the input's effective value.
ExtendedFuzzyValue complement(const ExtendedFuzzyValue& v);

// Min t-norm / max s-norm over effective values; returns the extremal
// element itself (first one on ties). Empty input is an error.
ExtendedFuzzyValue conjunction(std::span<const ExtendedFuzzyValue> values);
ExtendedFuzzyValue disjunction(std::span<const ExtendedFuzzyValue> values);

} // namespace frids
