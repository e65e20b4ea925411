#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "segre/linalg.hpp"

namespace segre {

// Dense univariate polynomials as coefficient vectors, constant term first.
// Everything here is exact; callers pass the field explicitly.

template <class F>
std::vector<typename F::Elem> p1_trim(const F&, std::vector<typename F::Elem> v) {
    while (!v.empty() && v.back().is_zero()) v.pop_back();
    return v;
}

template <class E>
long long p1_deg(const std::vector<E>& v) {
    return static_cast<long long>(v.size()) - 1;  // -1 for the zero polynomial
}

template <class F>
std::vector<typename F::Elem> p1_derivative(const F& f, const std::vector<typename F::Elem>& v) {
    std::vector<typename F::Elem> out;
    for (std::size_t i = 1; i < v.size(); ++i) out.push_back(f.from_int(static_cast<long long>(i)) * v[i]);
    return p1_trim(f, std::move(out));
}

template <class F>
std::vector<typename F::Elem> p1_monic(const F& f, std::vector<typename F::Elem> v) {
    v = p1_trim(f, std::move(v));
    if (v.empty()) return v;
    const auto inv = v.back().inv();
    for (auto& c : v) c = c * inv;
    return v;
}

template <class F>
std::pair<std::vector<typename F::Elem>, std::vector<typename F::Elem>> p1_divmod(
    const F& f, std::vector<typename F::Elem> a, const std::vector<typename F::Elem>& b0) {
    const auto b = p1_trim(f, b0);
    if (b.empty()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
    a = p1_trim(f, std::move(a));
    std::vector<typename F::Elem> q(a.size() > b.size() ? a.size() - b.size() + 1 : 1, f.zero());
    const auto lead_inv = b.back().inv();
    while (a.size() >= b.size() && !a.empty()) {
        const std::size_t shift = a.size() - b.size();
        const auto c = a.back() * lead_inv;
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] = a[shift + i] - c * b[i];
        a = p1_trim(f, std::move(a));
    }
    return {p1_trim(f, std::move(q)), std::move(a)};
}

template <class F>
std::vector<typename F::Elem> p1_gcd(const F& f, std::vector<typename F::Elem> a,
                                     std::vector<typename F::Elem> b) {
    a = p1_trim(f, std::move(a));
    b = p1_trim(f, std::move(b));
    while (!b.empty()) {
        auto r = p1_divmod(f, std::move(a), b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return p1_monic(f, std::move(a));
}

template <class F>
typename F::Elem p1_eval(const F& f, const std::vector<typename F::Elem>& v,
                         const typename F::Elem& x) {
    auto acc = f.zero();
    for (std::size_t i = v.size(); i-- > 0;) acc = acc * x + v[i];
    return acc;
}

// Number of roots in the algebraic closure counted with multiplicity.  Each
// pass strips one copy of every distinct root (deg of the squarefree part)
// and recurses into gcd(h, h'); a vanishing derivative in characteristic p
// means h = g(x^p), handled by taking p-th roots of the coefficients.
template <class F>
std::uint64_t p1_closure_root_count(const F& f, std::vector<typename F::Elem> h) {
    h = p1_trim(f, std::move(h));
    std::uint64_t total = 0;
    std::uint64_t mult = 1;
    while (p1_deg(h) >= 1) {
        auto dh = p1_derivative(f, h);
        if (dh.empty()) {
            if constexpr (F::is_finite) {
                const auto p = f.characteristic();
                const auto k = static_cast<std::uint32_t>(f.extension_degree());
                std::vector<typename F::Elem> g;
                for (std::size_t i = 0; i < h.size(); i += static_cast<std::size_t>(p)) {
                    auto c = h[i];
                    for (std::uint32_t j = 0; j + 1 < k; ++j) c = f.frobenius(c);
                    g.push_back(c);
                }
                h = p1_trim(f, std::move(g));
                mult *= p;
                continue;
            } else {
                fail(ErrorKind::DivisionByZero, "vanishing derivative in characteristic zero");
            }
        }
        auto g1 = p1_gcd(f, h, dh);
        auto sf = p1_divmod(f, h, g1).first;
        total += mult * static_cast<std::uint64_t>(p1_deg(sf));
        h = std::move(g1);
    }
    return total;
}

// Closure roots of a nonzero binary form of degree d, given as coefficients
// coef[j] of s^{d-j} t^j: the dehomogenization in t plus the root at [0:1].
template <class F>
std::uint64_t binary_form_root_count(const F& f, const std::vector<typename F::Elem>& coef) {
    auto g = p1_trim(f, coef);
    if (g.empty()) fail(ErrorKind::ZeroVector, "root count of the zero form");
    const std::uint64_t at_infinity = coef.size() - g.size();
    return at_infinity + p1_closure_root_count(f, std::move(g));
}

}  // namespace segre
