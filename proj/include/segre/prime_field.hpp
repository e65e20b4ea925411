#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "segre/common.hpp"

namespace segre {

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs with this base set.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

inline std::uint64_t inv_mod_prime(std::uint64_t a, std::uint64_t p) {
    if (a == 0) fail(ErrorKind::DivisionByZero, "inverse of zero in F_p");
    return powmod_u64(a, p - 2, p);
}

}  // namespace detail

// Reduced residue carrying its modulus; primality of p is checked once by the
// field handle, not per element.
struct FpElem {
    std::uint64_t v = 0;
    std::uint64_t p = 0;

    bool is_zero() const { return v == 0; }

    friend FpElem operator+(const FpElem& a, const FpElem& b) {
        check(a, b);
        std::uint64_t s = a.v + b.v;
        if (s >= a.p) s -= a.p;
        return {s, a.p};
    }
    friend FpElem operator-(const FpElem& a, const FpElem& b) {
        check(a, b);
        return {a.v >= b.v ? a.v - b.v : a.v + a.p - b.v, a.p};
    }
    friend FpElem operator*(const FpElem& a, const FpElem& b) {
        check(a, b);
        return {detail::mulmod_u64(a.v, b.v, a.p), a.p};
    }
    friend FpElem operator/(const FpElem& a, const FpElem& b) {
        check(a, b);
        return {detail::mulmod_u64(a.v, detail::inv_mod_prime(b.v, a.p), a.p), a.p};
    }
    FpElem operator-() const { return {v == 0 ? 0 : p - v, p}; }
    FpElem inv() const { return {detail::inv_mod_prime(v, p), p}; }
    friend bool operator==(const FpElem& a, const FpElem& b) { return a.p == b.p && a.v == b.v; }
    friend bool operator!=(const FpElem& a, const FpElem& b) { return !(a == b); }
    friend bool operator<(const FpElem& a, const FpElem& b) { return a.v < b.v; }

  private:
    static void check(const FpElem& a, const FpElem& b) {
        if (a.p != b.p) fail(ErrorKind::MixedFields, "F_p elements from different fields");
    }
};

class PrimeField {
  public:
    using Elem = FpElem;

    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (!detail::is_prime_u64(p)) fail(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
    }

    std::uint64_t p() const { return p_; }

    Elem zero() const { return {0, p_}; }
    Elem one() const { return {1 % p_, p_}; }
    Elem from_int(long long v) const {
        long long m = v % static_cast<long long>(p_);
        if (m < 0) m += static_cast<long long>(p_);
        return {static_cast<std::uint64_t>(m), p_};
    }

    Elem sample(Rng& rng) const { return {rng.bounded(p_), p_}; }
    Elem frobenius(const Elem& e) const { return e; }

    static constexpr bool is_finite = true;
    std::uint64_t characteristic() const { return p_; }
    std::uint64_t extension_degree() const { return 1; }
    std::uint64_t order() const { return p_; }

    std::vector<Elem> enumerate(std::uint64_t guard = 1000000) const {
        if (p_ > guard) fail(ErrorKind::EnumerationTooLarge, "field order exceeds guard");
        std::vector<Elem> out;
        out.reserve(p_);
        for (std::uint64_t i = 0; i < p_; ++i) out.push_back({i, p_});
        return out;
    }

    std::string name() const { return "Fp:" + std::to_string(p_); }
    std::string elem_str(const Elem& e) const { return std::to_string(e.v); }

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

  private:
    std::uint64_t p_;
};

}  // namespace segre
