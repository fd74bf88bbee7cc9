#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "mrlab/rng.hpp"

namespace mrlab {

// 2^61 - 1, a Mersenne prime. Large enough that randomized rank tests have
// negligible failure probability, small enough that products fit in 128 bits.
inline constexpr std::uint64_t kGenericPrime = (1ull << 61) - 1;

namespace detail {

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    const std::uint64_t s = a + b;  // p < 2^62, no overflow
    return s >= p ? s - p : s;
}

inline std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + p - b;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    if (p == kGenericPrime) {
        __uint128_t t = static_cast<__uint128_t>(a) * b;
        std::uint64_t lo = static_cast<std::uint64_t>(t) & kGenericPrime;
        std::uint64_t hi = static_cast<std::uint64_t>(t >> 61);
        std::uint64_t s = lo + hi;
        s = (s & kGenericPrime) + (s >> 61);
        return s >= kGenericPrime ? s - kGenericPrime : s;
    }
    return static_cast<std::uint64_t>(static_cast<__uint128_t>(a) * b % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

}  // namespace detail

// Deterministic Miller-Rabin, exact for all 64-bit inputs with this base set.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = detail::powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = detail::mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// Euler criterion; p an odd prime, c != 0 mod p.
inline bool is_quadratic_residue(std::uint64_t c, std::uint64_t p) {
    return detail::powmod(c % p, (p - 1) / 2, p) == 1;
}

// Element of F_p or F_p[X]/(f), stored as reduced residues a0 + a1*X.
// a1 is always zero in the prime-field case.
struct FieldElement {
    std::uint64_t a0 = 0;
    std::uint64_t a1 = 0;
    friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

// F_p or a quadratic extension F_p[X]/(X^2 + lin*X + cst) with the modulus
// monic irreducible over F_p. Immutable value; cheap to copy.
class FieldSpec {
  public:
    static FieldSpec prime(std::uint64_t p) {
        check_prime(p);
        return FieldSpec(p, false, 0, 0);
    }

    // F_{p^2} presented as F_p[X]/(X^2 - c); requires c a non-residue.
    static FieldSpec quadratic(std::uint64_t p, std::uint64_t c) {
        check_prime(p);
        if (p == 2) throw std::invalid_argument("quadratic extension requires an odd prime");
        c %= p;
        if (c == 0 || is_quadratic_residue(c, p))
            throw std::invalid_argument("X^2 - " + std::to_string(c) + " is reducible over F_" + std::to_string(p) +
                                        " (c is a square)");
        return FieldSpec(p, true, p - c, 0);
    }

    // General monic degree-2 modulus X^2 + lin*X + cst.
    static FieldSpec quadratic_general(std::uint64_t p, std::uint64_t cst, std::uint64_t lin) {
        check_prime(p);
        cst %= p;
        lin %= p;
        if (!irreducible(p, cst, lin))
            throw std::invalid_argument("modulus polynomial has a root over F_" + std::to_string(p));
        return FieldSpec(p, true, cst, lin);
    }

    std::uint64_t p() const { return p_; }
    bool has_extension() const { return ext_; }
    std::uint64_t modulus_const() const { return cst_; }
    std::uint64_t modulus_lin() const { return lin_; }

    // field size; extension fields here are small enough that p^2 fits
    std::uint64_t order() const {
        if (!ext_) return p_;
        if (p_ > (1ull << 31)) throw std::overflow_error("extension field order exceeds 64 bits");
        return p_ * p_;
    }

    FieldElement zero() const { return {0, 0}; }
    FieldElement one() const { return {1 % p_, 0}; }
    FieldElement from(std::uint64_t v) const { return {v % p_, 0}; }
    FieldElement from_signed(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        if (r < 0) r += static_cast<std::int64_t>(p_);
        return {static_cast<std::uint64_t>(r), 0};
    }
    FieldElement make(std::uint64_t a0, std::uint64_t a1) const {
        if (a1 % p_ != 0 && !ext_) throw std::invalid_argument("nonzero X coefficient in a prime field");
        return {a0 % p_, a1 % p_};
    }
    // X itself (extension fields only)
    FieldElement gen() const {
        if (!ext_) throw std::logic_error("no extension generator in a prime field");
        return {0, 1};
    }

    bool is_zero(const FieldElement& x) const { return x.a0 == 0 && x.a1 == 0; }

    FieldElement add(const FieldElement& x, const FieldElement& y) const {
        return {detail::addmod(x.a0, y.a0, p_), detail::addmod(x.a1, y.a1, p_)};
    }
    FieldElement sub(const FieldElement& x, const FieldElement& y) const {
        return {detail::submod(x.a0, y.a0, p_), detail::submod(x.a1, y.a1, p_)};
    }
    FieldElement neg(const FieldElement& x) const {
        return {x.a0 ? p_ - x.a0 : 0, x.a1 ? p_ - x.a1 : 0};
    }

    // (a0 + a1 X)(b0 + b1 X) with X^2 = -(lin X + cst)
    FieldElement mul(const FieldElement& x, const FieldElement& y) const {
        using detail::addmod;
        using detail::mulmod;
        using detail::submod;
        if (x.a1 == 0 && y.a1 == 0) return {mulmod(x.a0, y.a0, p_), 0};
        const std::uint64_t t = mulmod(x.a1, y.a1, p_);
        const std::uint64_t c0 = submod(mulmod(x.a0, y.a0, p_), mulmod(cst_, t, p_), p_);
        std::uint64_t c1 = addmod(mulmod(x.a0, y.a1, p_), mulmod(x.a1, y.a0, p_), p_);
        c1 = submod(c1, mulmod(lin_, t, p_), p_);
        return {c0, c1};
    }

    FieldElement inv(const FieldElement& x) const {
        if (is_zero(x)) throw std::domain_error("inversion of zero");
        if (x.a1 == 0) return {detail::powmod(x.a0, p_ - 2, p_), 0};
        // conjugate w.r.t. the modulus: xbar = (a0 - a1*lin) - a1*X,
        // norm x*xbar = a0^2 - a0*a1*lin + a1^2*cst lies in F_p*.
        using detail::mulmod;
        using detail::submod;
        const std::uint64_t b0 = submod(x.a0, mulmod(x.a1, lin_, p_), p_);
        const std::uint64_t b1 = x.a1 ? p_ - x.a1 : 0;
        std::uint64_t n = submod(mulmod(x.a0, x.a0, p_), mulmod(mulmod(x.a0, x.a1, p_), lin_, p_), p_);
        n = detail::addmod(n, mulmod(mulmod(x.a1, x.a1, p_), cst_, p_), p_);
        const std::uint64_t ninv = detail::powmod(n, p_ - 2, p_);
        return {mulmod(b0, ninv, p_), mulmod(b1, ninv, p_)};
    }

    FieldElement div(const FieldElement& x, const FieldElement& y) const { return mul(x, inv(y)); }

    FieldElement pow(FieldElement x, std::uint64_t e) const {
        FieldElement r = one();
        while (e) {
            if (e & 1) r = mul(r, x);
            x = mul(x, x);
            e >>= 1;
        }
        return r;
    }

    FieldElement sample(Rng& rng) const {
        return {rng.below(p_), ext_ ? rng.below(p_) : 0};
    }

    friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
        return a.p_ == b.p_ && a.ext_ == b.ext_ && a.cst_ == b.cst_ && a.lin_ == b.lin_;
    }

  private:
    FieldSpec(std::uint64_t p, bool ext, std::uint64_t cst, std::uint64_t lin)
        : p_(p), ext_(ext), cst_(cst), lin_(lin) {}

    static void check_prime(std::uint64_t p) {
        if (p < 2 || p > kGenericPrime || !is_prime_u64(p))
            throw std::invalid_argument(std::to_string(p) + " is not a prime in the supported range");
    }

    // no root in F_p. Exhaustive for small p, discriminant otherwise.
    static bool irreducible(std::uint64_t p, std::uint64_t cst, std::uint64_t lin) {
        if (p <= 1000000) {
            for (std::uint64_t x = 0; x < p; ++x) {
                if (detail::addmod(detail::addmod(detail::mulmod(x, x, p), detail::mulmod(lin, x, p), p), cst, p) == 0)
                    return false;
            }
            return true;
        }
        // p odd here; reducible iff lin^2 - 4*cst is a square (or zero)
        const std::uint64_t disc =
            detail::submod(detail::mulmod(lin, lin, p), detail::mulmod(4 % p, cst, p), p);
        if (disc == 0) return false;
        return !is_quadratic_residue(disc, p);
    }

    std::uint64_t p_;
    bool ext_;
    std::uint64_t cst_;
    std::uint64_t lin_;
};

inline FieldSpec make_prime_field(std::uint64_t p) { return FieldSpec::prime(p); }

inline FieldSpec make_quadratic_extension(std::uint64_t p, std::uint64_t c) {
    return FieldSpec::quadratic(p, c);
}

// Smallest zeta > 1 in F_p with zeta^3 = 1. Requires p = 1 mod 3.
inline FieldElement find_cube_root_of_unity(const FieldSpec& field) {
    const std::uint64_t p = field.p();
    if (p % 3 != 1) throw std::invalid_argument("p = " + std::to_string(p) + " is not 1 mod 3");
    const std::uint64_t e = (p - 1) / 3;
    for (std::uint64_t x = 2; x < p; ++x) {
        const std::uint64_t z = detail::powmod(x, e, p);
        if (z != 1) {
            const std::uint64_t z2 = detail::mulmod(z, z, p);
            return field.from(z < z2 ? z : z2);
        }
    }
    throw std::logic_error("unreachable: F_p* is cyclic");
}

// ---- literal syntax -------------------------------------------------------
// field:   "p=13"            prime field
//          "p=7;x2=3"        F_7[X]/(X^2-3)
// element: "a0" or "a0+a1x"  e.g. "5", "3+2x"

inline std::string field_literal(const FieldSpec& f) {
    if (!f.has_extension()) return "p=" + std::to_string(f.p());
    if (f.modulus_lin() != 0)
        throw std::invalid_argument("no literal syntax for a modulus with a linear term");
    return "p=" + std::to_string(f.p()) + ";x2=" + std::to_string((f.p() - f.modulus_const()) % f.p());
}

inline FieldSpec parse_field_literal(const std::string& s) {
    const auto bad = [&]() { return std::invalid_argument("bad field literal: '" + s + "'"); };
    if (s.rfind("p=", 0) != 0) throw bad();
    const auto semi = s.find(';');
    const std::string pt = s.substr(2, semi == std::string::npos ? std::string::npos : semi - 2);
    if (pt.empty() || pt.find_first_not_of("0123456789") != std::string::npos) throw bad();
    const std::uint64_t p = std::stoull(pt);
    if (semi == std::string::npos) return FieldSpec::prime(p);
    const std::string rest = s.substr(semi + 1);
    if (rest.rfind("x2=", 0) != 0) throw bad();
    const std::string ct = rest.substr(3);
    if (ct.empty() || ct.find_first_not_of("0123456789") != std::string::npos) throw bad();
    return FieldSpec::quadratic(p, std::stoull(ct));
}

inline std::string element_literal(const FieldElement& x) {
    if (x.a1 == 0) return std::to_string(x.a0);
    return std::to_string(x.a0) + "+" + std::to_string(x.a1) + "x";
}

inline FieldElement parse_element(const FieldSpec& f, const std::string& s) {
    const auto bad = [&]() { return std::invalid_argument("bad element literal: '" + s + "'"); };
    const auto plus = s.find('+');
    if (plus == std::string::npos) {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) throw bad();
        return f.from(std::stoull(s));
    }
    const std::string a = s.substr(0, plus);
    std::string b = s.substr(plus + 1);
    if (b.empty() || b.back() != 'x') throw bad();
    b.pop_back();
    if (a.empty() || b.empty() || a.find_first_not_of("0123456789") != std::string::npos ||
        b.find_first_not_of("0123456789") != std::string::npos)
        throw bad();
    return f.make(std::stoull(a), std::stoull(b));
}

}  // namespace mrlab
