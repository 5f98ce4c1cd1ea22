#pragma once

// Exact elementary number theory used throughout: factorization, Euler phi,
// CRT, multiplicative orders, pi-parts.  Everything fits in 64-bit signed
// integers at the scales this library supports (formulas up to n ~ 10^4,
// group construction up to n = 120).

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

namespace bipmap {

using i64 = std::int64_t;

struct ContractError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ScaleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One prime-power divisor p^e.
struct PrimePower {
    i64 p = 0;
    int e = 0;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Factorization is kept sorted by descending prime; deterministic iteration
// order downstream depends on this.
using Factorization = std::vector<PrimePower>;

inline i64 ipow(i64 base, i64 exp) {
    i64 r = 1;
    for (i64 i = 0; i < exp; ++i) r *= base;
    return r;
}

inline i64 mod_norm(i64 v, i64 m) {
    v %= m;
    return v < 0 ? v + m : v;
}

inline i64 mul_mod(i64 a, i64 b, i64 m) {
    return static_cast<i64>(static_cast<__int128>(a) * b % m);
}

inline i64 pow_mod(i64 a, i64 e, i64 m) {
    if (m == 1) return 0;
    i64 r = 1;
    a = mod_norm(a, m);
    for (; e > 0; e >>= 1) {
        if (e & 1) r = mul_mod(r, a, m);
        a = mul_mod(a, a, m);
    }
    return r;
}

// Canonical residue: value in [0, modulus).
struct Residue {
    i64 value = 0;
    i64 modulus = 1;

    Residue() = default;
    Residue(i64 v, i64 m) : modulus(m) {
        if (m < 1) throw ContractError("Residue: modulus must be positive");
        value = mod_norm(v, m);
    }
    friend bool operator==(const Residue&, const Residue&) = default;
};

inline Factorization factorize(i64 n) {
    if (n < 1) throw ContractError("factorize: n must be >= 1");
    Factorization out;
    for (i64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) { n /= d; ++e; }
            out.push_back({d, e});
        }
    }
    if (n > 1) out.push_back({n, 1});
    std::sort(out.begin(), out.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.p > b.p; });
    return out;
}

inline bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline i64 euler_phi(i64 n) {
    if (n < 1) throw ContractError("euler_phi: n must be >= 1");
    i64 r = n;
    for (const auto& [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

// Bezout: returns g = gcd(a,b) and x,y with a*x + b*y = g.
inline i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
    if (b == 0) { x = 1; y = 0; return a; }
    i64 x1, y1;
    i64 g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

inline i64 inverse_mod(i64 a, i64 m) {
    if (m == 1) return 0;
    i64 x, y;
    i64 g = ext_gcd(mod_norm(a, m), m, x, y);
    if (g != 1) throw ContractError("inverse_mod: argument is not a unit");
    return mod_norm(x, m);
}

// Unique residue mod the product of the (pairwise coprime) moduli.
inline Residue crt_combine(const std::vector<Residue>& congruences) {
    if (congruences.empty()) return Residue(0, 1);
    Residue acc = congruences.front();
    for (std::size_t i = 1; i < congruences.size(); ++i) {
        const Residue& c = congruences[i];
        if (std::gcd(acc.modulus, c.modulus) != 1)
            throw ContractError("crt_combine: moduli are not pairwise coprime");
        const i64 m = acc.modulus * c.modulus;
        // acc.value + acc.modulus * k == c.value (mod c.modulus)
        const i64 k = mul_mod(mod_norm(c.value - acc.value, c.modulus),
                              inverse_mod(acc.modulus, c.modulus), c.modulus);
        acc = Residue(acc.value + acc.modulus * k, m);
    }
    return acc;
}

// Least k >= 1 with a^k = 1; requires a to be a unit.
inline i64 multiplicative_order(const Residue& a) {
    if (std::gcd(a.value, a.modulus) != 1)
        throw ContractError("multiplicative_order: not a unit");
    if (a.modulus == 1) return 1;
    i64 acc = a.value;
    i64 k = 1;
    while (acc != 1) {
        acc = mul_mod(acc, a.value, a.modulus);
        ++k;
    }
    return k;
}

// Largest divisor of n supported on the prime set pi.
inline i64 pi_part(i64 n, const std::set<i64>& pi) {
    if (n < 1) throw ContractError("pi_part: n must be >= 1");
    i64 r = 1;
    for (const auto& [p, e] : factorize(n))
        if (pi.count(p)) r *= ipow(p, e);
    return r;
}

// v with q^v exactly dividing m.
inline int valuation(i64 m, i64 q) {
    int v = 0;
    while (m % q == 0) { m /= q; ++v; }
    return v;
}

}  // namespace bipmap
