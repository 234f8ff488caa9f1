#include "infops/fraction.hpp"

#include <string>

namespace infops {

std::string format_decimal(const Fraction& f, int places, int scale_pow10) {
    if (f.den == 0) return "nan";
    __extension__ typedef __int128 wide;
    wide num = f.num;
    wide den = f.den;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const bool negative = num < 0;
    if (negative) num = -num;

    for (int i = 0; i < places + scale_pow10; ++i) num *= 10;
    for (int i = 0; i > places + scale_pow10; --i) den *= 10;

    wide q = num / den;
    const wide r = num % den;
    // round half to even
    if (2 * r > den || (2 * r == den && (q % 2) != 0)) ++q;

    std::string digits;
    if (q == 0) digits = "0";
    while (q > 0) {
        digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(q % 10)));
        q /= 10;
    }
    if (places > 0) {
        if (digits.size() <= static_cast<std::size_t>(places))
            digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
        digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
    }
    if (negative && digits.find_first_not_of("0.") != std::string::npos) digits.insert(0, "-");
    return digits;
}

}  // namespace infops
