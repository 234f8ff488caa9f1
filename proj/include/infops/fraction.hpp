#pragma once

#include <cstdint>
#include <string>

namespace infops {

// Exact non-negative ratio kept as the raw integer pair it was counted from.
// Not reduced: 2/4 and 1/2 compare equal but print differently, so a
// conditional probability still carries its support count.
struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    friend bool operator==(const Fraction& a, const Fraction& b) {
        return a.num * b.den == b.num * a.den;
    }
    friend bool operator<(const Fraction& a, const Fraction& b) {
        return a.num * b.den < b.num * a.den;
    }

    double to_double() const { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }
    bool identical(const Fraction& o) const { return num == o.num && den == o.den; }
};

// num/den * 10^scale_pow10 rendered with `places` decimals, round-half-even,
// using integer arithmetic only.
std::string format_decimal(const Fraction& f, int places, int scale_pow10 = 0);

inline std::string format_percent(const Fraction& f, int places = 1) {
    return format_decimal(f, places, 2);
}

}  // namespace infops
