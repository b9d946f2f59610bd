#include "fanokit/arith.hpp"

namespace fanokit {

std::string to_decimal(const Int& v) { return v.str(); }

std::string to_fraction_string(const Rat& v) {
    Int num = boost::multiprecision::numerator(v);
    Int den = boost::multiprecision::denominator(v);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Int binom(const Int& a, const Int& b) {
    if (b < 0) throw std::invalid_argument("binom: bottom argument must be nonnegative");
    if (a < 0 || a < b) return 0;
    Int k = b;
    if (a - b < k) k = a - b;  // binom(a,b) = binom(a,a-b); keep the loop short
    Int r = 1;
    for (Int i = 1; i <= k; ++i) {
        r *= a - k + i;
        r /= i;  // exact: r is binom(a-k+i, i) at this point
    }
    return r;
}

Int binom(long long a, long long b) { return binom(Int(a), Int(b)); }

bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

PrimeField::Elem PrimeField::inv(Elem a) const {
    if (a == 0) throw std::domain_error("division by zero in F_p");
    // extended euclid on (a, p)
    std::int64_t t = 0, newt = 1;
    std::int64_t r = p, newr = a;
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::int64_t tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (t < 0) t += p;
    return static_cast<Elem>(t);
}

}  // namespace fanokit
