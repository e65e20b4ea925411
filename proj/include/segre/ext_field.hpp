#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "segre/common.hpp"
#include "segre/prime_field.hpp"

namespace segre {

namespace detail {

// Dense univariate polynomials over F_p, coefficient of t^i at index i,
// no trailing zeros.  Only what the extension-field kernel needs.
using FpPoly = std::vector<std::uint64_t>;

inline void fp_trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    FpPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            unsigned __int128 acc = c[i + j];
            acc += static_cast<unsigned __int128>(a[i]) * b[j];
            c[i + j] = static_cast<std::uint64_t>(acc % p);
        }
    }
    fp_trim(c);
    return c;
}

inline FpPoly fp_mod(FpPoly a, const FpPoly& m, std::uint64_t p) {
    fp_trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint64_t lead_inv = inv_mod_prime(m.back(), p);
    while (a.size() > dm) {
        const std::uint64_t q = mulmod_u64(a.back(), lead_inv, p);
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i) {
            std::uint64_t sub = mulmod_u64(q, m[i], p);
            std::uint64_t& c = a[shift + i];
            c = c >= sub ? c - sub : c + p - sub;
        }
        fp_trim(a);
        if (a.empty()) break;
    }
    return a;
}

inline FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, std::uint64_t p) {
    return fp_mod(fp_mul(a, b, p), m, p);
}

inline FpPoly fp_powmod(FpPoly base, std::uint64_t e, const FpPoly& m, std::uint64_t p) {
    FpPoly r{1 % p};
    base = fp_mod(std::move(base), m, p);
    while (e) {
        if (e & 1) r = fp_mulmod(r, base, m, p);
        base = fp_mulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

inline FpPoly fp_sub(FpPoly a, const FpPoly& b, std::uint64_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] = a[i] >= b[i] ? a[i] - b[i] : a[i] + p - b[i];
    fp_trim(a);
    return a;
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint64_t p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        FpPoly r = fp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        const std::uint64_t li = inv_mod_prime(a.back(), p);
        for (auto& c : a) c = mulmod_u64(c, li, p);
    }
    return a;
}

// t^(p^d) mod m by iterated Frobenius powering.
inline FpPoly fp_t_pow_pd(std::uint64_t d, const FpPoly& m, std::uint64_t p) {
    FpPoly x{0, 1};  // t
    x = fp_mod(std::move(x), m, p);
    for (std::uint64_t i = 0; i < d; ++i) x = fp_powmod(x, p, m, p);
    return x;
}

// Rabin: monic m of degree k is irreducible over F_p iff t^(p^k) == t mod m
// and gcd(t^(p^(k/q)) - t, m) = 1 for every prime q | k.
inline bool fp_irreducible(const FpPoly& m, std::uint64_t p) {
    const std::size_t k = m.size() - 1;
    if (k == 0) return false;
    if (k == 1) return true;
    std::vector<std::uint64_t> prime_divs;
    std::uint64_t kk = k;
    for (std::uint64_t q = 2; q * q <= kk; ++q) {
        if (kk % q == 0) {
            prime_divs.push_back(q);
            while (kk % q == 0) kk /= q;
        }
    }
    if (kk > 1) prime_divs.push_back(kk);
    const FpPoly t{0, 1};
    for (std::uint64_t q : prime_divs) {
        FpPoly g = fp_gcd(fp_sub(fp_t_pow_pd(k / q, m, p), t, p), m, p);
        if (g.size() != 1) return false;
    }
    FpPoly top = fp_t_pow_pd(k, m, p);
    return fp_sub(top, t, p).empty();
}

struct FqCtx {
    std::uint64_t p;
    std::uint32_t k;
    FpPoly modulus;  // monic, degree k
};

inline bool same_ctx(const std::shared_ptr<const FqCtx>& a, const std::shared_ptr<const FqCtx>& b) {
    if (a == b) return true;
    return a->p == b->p && a->k == b->k && a->modulus == b->modulus;
}

}  // namespace detail

// Element of F_(p^k) = F_p[t]/(m(t)); coeffs has length exactly k.
struct FqElem {
    std::vector<std::uint64_t> c;
    std::shared_ptr<const detail::FqCtx> ctx;

    bool is_zero() const {
        for (auto x : c)
            if (x) return false;
        return true;
    }

    friend FqElem operator+(const FqElem& a, const FqElem& b) {
        check(a, b);
        FqElem r = a;
        const std::uint64_t p = a.ctx->p;
        for (std::size_t i = 0; i < r.c.size(); ++i) {
            r.c[i] += b.c[i];
            if (r.c[i] >= p) r.c[i] -= p;
        }
        return r;
    }
    friend FqElem operator-(const FqElem& a, const FqElem& b) {
        check(a, b);
        FqElem r = a;
        const std::uint64_t p = a.ctx->p;
        for (std::size_t i = 0; i < r.c.size(); ++i)
            r.c[i] = r.c[i] >= b.c[i] ? r.c[i] - b.c[i] : r.c[i] + p - b.c[i];
        return r;
    }
    friend FqElem operator*(const FqElem& a, const FqElem& b) {
        check(a, b);
        detail::FpPoly pa(a.c.begin(), a.c.end());
        detail::FpPoly pb(b.c.begin(), b.c.end());
        detail::FpPoly pr = detail::fp_mulmod(pa, pb, a.ctx->modulus, a.ctx->p);
        FqElem r;
        r.ctx = a.ctx;
        r.c.assign(a.c.size(), 0);
        for (std::size_t i = 0; i < pr.size(); ++i) r.c[i] = pr[i];
        return r;
    }
    friend FqElem operator/(const FqElem& a, const FqElem& b) { return a * b.inv(); }
    FqElem operator-() const {
        FqElem r = *this;
        const std::uint64_t p = ctx->p;
        for (auto& x : r.c) x = x == 0 ? 0 : p - x;
        return r;
    }
    friend bool operator==(const FqElem& a, const FqElem& b) {
        return detail::same_ctx(a.ctx, b.ctx) && a.c == b.c;
    }
    friend bool operator!=(const FqElem& a, const FqElem& b) { return !(a == b); }
    friend bool operator<(const FqElem& a, const FqElem& b) { return a.c < b.c; }

    // Extended Euclid in F_p[t].
    FqElem inv() const {
        if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero in F_q");
        const std::uint64_t p = ctx->p;
        detail::FpPoly r0 = ctx->modulus;
        detail::FpPoly r1(c.begin(), c.end());
        detail::fp_trim(r1);
        detail::FpPoly s0{}, s1{1 % p};
        while (!r1.empty()) {
            // r0 = q*r1 + r2
            detail::FpPoly q;
            detail::FpPoly rem = r0;
            const std::size_t d1 = r1.size() - 1;
            const std::uint64_t li = detail::inv_mod_prime(r1.back(), p);
            while (rem.size() >= r1.size() && !rem.empty()) {
                const std::size_t shift = rem.size() - 1 - d1;
                const std::uint64_t qc = detail::mulmod_u64(rem.back(), li, p);
                if (q.size() < shift + 1) q.resize(shift + 1, 0);
                q[shift] = qc;
                for (std::size_t i = 0; i <= d1; ++i) {
                    std::uint64_t sub = detail::mulmod_u64(qc, r1[i], p);
                    std::uint64_t& cc = rem[shift + i];
                    cc = cc >= sub ? cc - sub : cc + p - sub;
                }
                detail::fp_trim(rem);
            }
            detail::FpPoly s2 = detail::fp_sub(s0, detail::fp_mul(q, s1, p), p);
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        // r0 = gcd (nonzero constant since modulus is irreducible)
        const std::uint64_t gi = detail::inv_mod_prime(r0[0], p);
        FqElem out;
        out.ctx = ctx;
        out.c.assign(c.size(), 0);
        for (std::size_t i = 0; i < s0.size(); ++i)
            out.c[i] = detail::mulmod_u64(s0[i], gi, p);
        return out;
    }

  private:
    static void check(const FqElem& a, const FqElem& b) {
        if (!detail::same_ctx(a.ctx, b.ctx))
            fail(ErrorKind::MixedFields, "F_q elements from different fields");
    }
};

class ExtField {
  public:
    using Elem = FqElem;

    // Builds F_p[t]/(m) with the given monic modulus; irreducibility is
    // verified here, never assumed.
    ExtField(std::uint64_t p, std::vector<std::uint64_t> modulus) {
        if (!detail::is_prime_u64(p)) fail(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
        detail::FpPoly m(modulus.begin(), modulus.end());
        detail::fp_trim(m);
        if (m.size() < 2) fail(ErrorKind::ConfigError, "modulus must have degree >= 1");
        for (auto& c : m) c %= p;
        if (m.back() != 1) fail(ErrorKind::ConfigError, "modulus must be monic");
        if (!detail::fp_irreducible(m, p))
            fail(ErrorKind::ConfigError, "modulus is reducible over F_p");
        auto ctx = std::make_shared<detail::FqCtx>();
        ctx->p = p;
        ctx->k = static_cast<std::uint32_t>(m.size() - 1);
        ctx->modulus = std::move(m);
        ctx_ = std::move(ctx);
    }

    std::uint64_t p() const { return ctx_->p; }
    std::uint32_t k() const { return ctx_->k; }
    const std::vector<std::uint64_t>& modulus() const { return ctx_->modulus; }

    Elem zero() const { return make({}); }
    Elem one() const { return make({1 % ctx_->p}); }
    Elem gen() const {
        if (ctx_->k == 1) {
            // t == -m0 in a degree-1 quotient
            std::uint64_t m0 = ctx_->modulus[0];
            return make({m0 == 0 ? 0 : ctx_->p - m0});
        }
        return make({0, 1});
    }
    Elem from_int(long long v) const {
        long long m = v % static_cast<long long>(ctx_->p);
        if (m < 0) m += static_cast<long long>(ctx_->p);
        return make({static_cast<std::uint64_t>(m)});
    }
    Elem from_coeffs(const std::vector<std::uint64_t>& c) const {
        if (c.size() > ctx_->k) fail(ErrorKind::DimensionMismatch, "coefficient vector too long");
        std::vector<std::uint64_t> cc(c);
        for (auto& x : cc) x %= ctx_->p;
        return make(cc);
    }

    Elem sample(Rng& rng) const {
        std::vector<std::uint64_t> c(ctx_->k);
        for (auto& x : c) x = rng.bounded(ctx_->p);
        Elem e;
        e.ctx = ctx_;
        e.c = std::move(c);
        return e;
    }

    // x -> x^p by square-and-multiply.
    Elem frobenius(const Elem& e) const {
        detail::FpPoly pe(e.c.begin(), e.c.end());
        detail::FpPoly r = detail::fp_powmod(std::move(pe), ctx_->p, ctx_->modulus, ctx_->p);
        Elem out;
        out.ctx = ctx_;
        out.c.assign(ctx_->k, 0);
        for (std::size_t i = 0; i < r.size(); ++i) out.c[i] = r[i];
        return out;
    }

    static constexpr bool is_finite = true;
    std::uint64_t characteristic() const { return ctx_->p; }
    std::uint64_t extension_degree() const { return ctx_->k; }
    std::uint64_t order() const {
        std::uint64_t o = 1;
        for (std::uint32_t i = 0; i < ctx_->k; ++i) {
            if (o > UINT64_MAX / ctx_->p) fail(ErrorKind::EnumerationTooLarge, "field order overflow");
            o *= ctx_->p;
        }
        return o;
    }

    // Elements in base-p digit order: element i has coeffs = digits of i.
    std::vector<Elem> enumerate(std::uint64_t guard = 1000000) const {
        const std::uint64_t q = order();
        if (q > guard) fail(ErrorKind::EnumerationTooLarge, "field order exceeds guard");
        std::vector<Elem> out;
        out.reserve(q);
        for (std::uint64_t i = 0; i < q; ++i) {
            std::vector<std::uint64_t> c(ctx_->k);
            std::uint64_t v = i;
            for (std::uint32_t j = 0; j < ctx_->k; ++j) {
                c[j] = v % ctx_->p;
                v /= ctx_->p;
            }
            Elem e;
            e.ctx = ctx_;
            e.c = std::move(c);
            out.push_back(std::move(e));
        }
        return out;
    }

    std::string name() const {
        return "Fq:" + std::to_string(ctx_->p) + ":" + std::to_string(ctx_->k);
    }
    std::string elem_str(const Elem& e) const {
        std::string s;
        bool any = false;
        for (std::size_t i = 0; i < e.c.size(); ++i) {
            if (e.c[i] == 0) continue;
            if (any) s += "+";
            if (i == 0) {
                s += std::to_string(e.c[i]);
            } else {
                if (e.c[i] != 1) s += std::to_string(e.c[i]) + "*";
                s += i == 1 ? "t" : "t^" + std::to_string(i);
            }
            any = true;
        }
        return any ? s : "0";
    }

    friend bool operator==(const ExtField& a, const ExtField& b) {
        return detail::same_ctx(a.ctx_, b.ctx_);
    }

  private:
    Elem make(std::vector<std::uint64_t> low) const {
        Elem e;
        e.ctx = ctx_;
        e.c.assign(ctx_->k, 0);
        for (std::size_t i = 0; i < low.size(); ++i) e.c[i] = low[i];
        return e;
    }

    std::shared_ptr<const detail::FqCtx> ctx_;
};

// Deterministic seeded search for a monic irreducible modulus of degree k.
// The chosen modulus is part of the field's identity and is echoed in reports.
inline ExtField make_extension_field(std::uint64_t p, std::uint32_t k, std::uint64_t seed) {
    if (!detail::is_prime_u64(p)) fail(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
    if (k == 0) fail(ErrorKind::ConfigError, "extension degree must be >= 1");
    Rng rng = Rng::stream(seed, 0x6d6f64756c7573ull);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        std::vector<std::uint64_t> m(k + 1);
        for (std::uint32_t i = 0; i < k; ++i) m[i] = rng.bounded(p);
        m[k] = 1;
        detail::FpPoly mm(m.begin(), m.end());
        if (detail::fp_irreducible(mm, p)) return ExtField(p, m);
    }
    fail(ErrorKind::ConfigError, "no irreducible modulus found (search budget exhausted)");
}

}  // namespace segre
