#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "segre/ext_field.hpp"
#include "segre/linalg.hpp"
#include "segre/prime_field.hpp"
#include "segre/projective.hpp"
#include "segre/rational.hpp"

namespace segre {

using Mono = std::vector<std::uint32_t>;

// Term order: graded lexicographic within each block, blocks compared in
// factor order.  begin() of a term map is the leading term; "first nonzero
// coefficient" in normalization statements refers to this order.
struct MonoCmp {
    std::vector<std::uint32_t> bounds;  // cumulative block ends

    bool operator()(const Mono& a, const Mono& b) const {
        std::size_t start = 0;
        for (std::uint32_t end : bounds) {
            std::uint32_t da = 0, db = 0;
            for (std::size_t i = start; i < end; ++i) {
                da += a[i];
                db += b[i];
            }
            if (da != db) return da > db;
            for (std::size_t i = start; i < end; ++i)
                if (a[i] != b[i]) return a[i] > b[i];
            start = end;
        }
        return false;
    }
};

inline std::vector<std::uint32_t> block_bounds(const std::vector<std::uint32_t>& blocks) {
    std::vector<std::uint32_t> bounds;
    std::uint32_t acc = 0;
    for (auto b : blocks) {
        acc += b;
        bounds.push_back(acc);
    }
    return bounds;
}

// Sparse multihomogeneous-friendly polynomial with one variable block per
// factor.  Terms never hold zero coefficients.
template <class F>
class Polynomial {
  public:
    using E = typename F::Elem;
    using TermMap = std::map<Mono, E, MonoCmp>;

    Polynomial(const F& f, std::vector<std::uint32_t> blocks)
        : field_(f),
          blocks_(std::move(blocks)),
          terms_(MonoCmp{block_bounds(blocks_)}) {}

    static Polynomial constant(const F& f, std::vector<std::uint32_t> blocks, const E& c) {
        Polynomial p(f, std::move(blocks));
        p.add_term(Mono(p.total_vars(), 0), c);
        return p;
    }

    static Polynomial variable(const F& f, std::vector<std::uint32_t> blocks, std::size_t var) {
        Polynomial p(f, std::move(blocks));
        if (var >= p.total_vars()) fail(ErrorKind::IndexOutOfRange, "variable index");
        Mono m(p.total_vars(), 0);
        m[var] = 1;
        p.add_term(std::move(m), f.one());
        return p;
    }

    // Linear form on one block: sum coeffs[j] * (block var j).
    static Polynomial linear_form(const F& f, const std::vector<std::uint32_t>& blocks,
                                  std::size_t block, const std::vector<E>& coeffs) {
        Polynomial p(f, blocks);
        std::uint32_t offset = 0;
        for (std::size_t b = 0; b < block; ++b) offset += blocks[b];
        if (coeffs.size() != blocks[block])
            fail(ErrorKind::DimensionMismatch, "linear form coefficient count");
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            if (coeffs[j].is_zero()) continue;
            Mono m(p.total_vars(), 0);
            m[offset + j] = 1;
            p.add_term(std::move(m), coeffs[j]);
        }
        return p;
    }

    const F& field() const { return field_; }
    const std::vector<std::uint32_t>& blocks() const { return blocks_; }
    const TermMap& terms() const { return terms_; }
    std::size_t total_vars() const {
        std::size_t n = 0;
        for (auto b : blocks_) n += b;
        return n;
    }
    bool is_zero() const { return terms_.empty(); }

    void add_term(Mono m, const E& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(std::move(m), c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        a.check_compatible(b);
        Polynomial r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        a.check_compatible(b);
        Polynomial r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_compatible(b);
        Polynomial r(a.field_, a.blocks_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Mono m = ma;
                for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
                r.add_term(std::move(m), ca * cb);
            }
        return r;
    }
    Polynomial scale(const E& c) const {
        Polynomial r(field_, blocks_);
        if (c.is_zero()) return r;
        for (const auto& [m, t] : terms_) r.add_term(m, t * c);
        return r;
    }
    Polynomial pow(std::uint32_t e) const {
        Polynomial r = constant(field_, blocks_, field_.one());
        for (std::uint32_t i = 0; i < e; ++i) r = r * (*this);
        return r;
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.blocks_ == b.blocks_ && a.terms_.size() == b.terms_.size() &&
               std::equal(a.terms_.begin(), a.terms_.end(), b.terms_.begin(),
                          [](const auto& x, const auto& y) {
                              return x.first == y.first && x.second == y.second;
                          });
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    E evaluate(const std::vector<E>& point) const {
        if (point.size() != total_vars())
            fail(ErrorKind::DimensionMismatch, "evaluation point arity");
        E acc = field_.zero();
        for (const auto& [m, c] : terms_) {
            E t = c;
            for (std::size_t i = 0; i < m.size(); ++i)
                for (std::uint32_t e = 0; e < m[i]; ++e) t = t * point[i];
            acc = acc + t;
        }
        return acc;
    }

    // Per-block degree vector if every term agrees; the verdict for a
    // non-homogeneous polynomial is nullopt, not an exception.
    std::optional<std::vector<std::uint32_t>> multidegree() const {
        if (terms_.empty()) return std::nullopt;
        std::optional<std::vector<std::uint32_t>> deg;
        for (const auto& [m, c] : terms_) {
            std::vector<std::uint32_t> d(blocks_.size(), 0);
            std::size_t v = 0;
            for (std::size_t b = 0; b < blocks_.size(); ++b)
                for (std::uint32_t j = 0; j < blocks_[b]; ++j) d[b] += m[v++];
            if (!deg) {
                deg = d;
            } else if (*deg != d) {
                return std::nullopt;
            }
        }
        return deg;
    }

    // Substitutes the block's variables by M * vars (M invertible).
    Polynomial compose_linear(const Matrix<F>& M, std::size_t block) const {
        if (block >= blocks_.size()) fail(ErrorKind::IndexOutOfRange, "block index");
        const std::uint32_t n = blocks_[block];
        if (M.rows() != n || M.cols() != n)
            fail(ErrorKind::DimensionMismatch, "substitution matrix shape");
        if (M.rank() != n) fail(ErrorKind::SingularMatrix, "substitution matrix is singular");
        std::uint32_t offset = 0;
        for (std::size_t b = 0; b < block; ++b) offset += blocks_[b];

        std::vector<Polynomial> lin;
        for (std::uint32_t j = 0; j < n; ++j)
            lin.push_back(linear_form(field_, blocks_, block, M.row(j)));

        Polynomial out(field_, blocks_);
        for (const auto& [m, c] : terms_) {
            Mono rest = m;
            for (std::uint32_t j = 0; j < n; ++j) rest[offset + j] = 0;
            Polynomial t(field_, blocks_);
            t.add_term(rest, c);
            for (std::uint32_t j = 0; j < n; ++j)
                for (std::uint32_t e = 0; e < m[offset + j]; ++e) t = t * lin[j];
            out = out + t;
        }
        return out;
    }

    // Substitutes variable i by g[i].  Nonzero components must share one
    // multidegree so multihomogeneity survives substitution.
    Polynomial compose_polytuple(const std::vector<Polynomial>& g) const {
        if (g.size() != total_vars())
            fail(ErrorKind::DimensionMismatch, "substitution tuple arity");
        std::optional<std::vector<std::uint32_t>> common;
        for (const auto& gi : g) {
            if (gi.is_zero()) continue;
            auto d = gi.multidegree();
            if (!d) fail(ErrorKind::HeterogeneousTuple, "non-homogeneous component");
            if (!common)
                common = d;
            else if (*common != *d)
                fail(ErrorKind::HeterogeneousTuple, "components of unequal multidegree");
        }
        const auto& gb = g.empty() ? blocks_ : g[0].blocks();
        Polynomial out(g.empty() ? field_ : g[0].field(), gb);
        for (const auto& [m, c] : terms_) {
            Polynomial t = constant(out.field_, gb, c);
            for (std::size_t i = 0; i < m.size(); ++i)
                for (std::uint32_t e = 0; e < m[i]; ++e) t = t * g[i];
            out = out + t;
        }
        return out;
    }

  private:
    void check_compatible(const Polynomial& o) const {
        if (blocks_ != o.blocks_) fail(ErrorKind::DimensionMismatch, "block structures differ");
    }

    F field_;
    std::vector<std::uint32_t> blocks_;
    TermMap terms_;
};

// Tuple of polynomials with one common multidegree: a rational map's
// component list.  At least one component must be nonzero.
template <class F>
struct RationalMap {
    std::vector<Polynomial<F>> components;

    static RationalMap make(std::vector<Polynomial<F>> comps) {
        if (comps.empty()) fail(ErrorKind::EmptyInput, "map with no components");
        std::optional<std::vector<std::uint32_t>> common;
        bool any_nonzero = false;
        for (const auto& c : comps) {
            if (c.is_zero()) continue;
            any_nonzero = true;
            auto d = c.multidegree();
            if (!d) fail(ErrorKind::NotHomogeneous, "map component not multihomogeneous");
            if (!common)
                common = d;
            else if (*common != *d)
                fail(ErrorKind::HeterogeneousTuple, "map components of unequal multidegree");
        }
        if (!any_nonzero) fail(ErrorKind::ZeroVector, "all map components are zero");
        return RationalMap{std::move(comps)};
    }

    std::vector<typename F::Elem> evaluate(const std::vector<typename F::Elem>& point) const {
        std::vector<typename F::Elem> out;
        out.reserve(components.size());
        for (const auto& c : components) out.push_back(c.evaluate(point));
        return out;
    }
};

// All exponent vectors of total degree d in v variables, in descending
// graded-lex order (the canonical term order for a single block).
inline std::vector<Mono> monomials_of_degree(std::size_t v, std::uint32_t d) {
    std::vector<Mono> out;
    Mono cur(v, 0);
    auto rec = [&](auto&& self, std::size_t pos, std::uint32_t rem) -> void {
        if (pos + 1 == v) {
            cur[pos] = rem;
            out.push_back(cur);
            return;
        }
        for (std::uint32_t e = rem + 1; e-- > 0;) {
            cur[pos] = e;
            self(self, pos + 1, rem - e);
        }
        cur[pos] = 0;
    };
    if (v == 0) return out;
    rec(rec, 0, d);
    return out;
}

template <class F>
struct InterpolationResult {
    std::optional<Polynomial<F>> equation;
    std::size_t nullity = 0;
};

// Unique (nullity-1) degree-d hypersurface through the sample points, with
// leading coefficient normalized to 1.
template <class F>
InterpolationResult<F> interpolate_hypersurface(const F& f,
                                                const std::vector<ProjPoint<F>>& points,
                                                std::uint32_t d) {
    if (points.empty()) fail(ErrorKind::EmptyInput, "interpolation with no points");
    const std::size_t v = points[0].ambient();
    for (const auto& p : points)
        if (p.ambient() != v) fail(ErrorKind::AmbientMismatch, "interpolation point ambient");
    const auto monos = monomials_of_degree(v, d);
    Matrix<F> A(f, points.size(), monos.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = 0; j < monos.size(); ++j) {
            auto t = f.one();
            for (std::size_t k = 0; k < v; ++k)
                for (std::uint32_t e = 0; e < monos[j][k]; ++e) t = t * points[i].coords[k];
            A.at(i, j) = t;
        }
    Matrix<F> K = A.kernel();
    InterpolationResult<F> res;
    res.nullity = K.rows();
    if (K.rows() == 1) {
        Polynomial<F> eq(f, {static_cast<std::uint32_t>(v)});
        for (std::size_t j = 0; j < monos.size(); ++j) eq.add_term(monos[j], K.at(0, j));
        // normalize: leading coefficient (first in term order) = 1
        const auto lead = eq.terms().begin()->second;
        res.equation = eq.scale(lead.inv());
    }
    return res;
}

// ---- textual format: coeff*x0^2*y1, '+'/'-'-separated terms ----

namespace detail {

inline const char* kBlockPrefixes = "xyzwuvabcdefgh";

inline long long parse_ll(const std::string& s, std::size_t& i) {
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
        neg = s[i] == '-';
        ++i;
    }
    if (i >= s.size() || s[i] < '0' || s[i] > '9')
        fail(ErrorKind::ConfigError, "expected number in polynomial text");
    long long v = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') v = v * 10 + (s[i++] - '0');
    return neg ? -v : v;
}

inline Rat parse_elem_text(const RationalField&, const std::string& s) {
    std::size_t i = 0;
    long long num = parse_ll(s, i);
    long long den = 1;
    if (i < s.size() && s[i] == '/') {
        ++i;
        den = parse_ll(s, i);
    }
    if (i != s.size()) fail(ErrorKind::ConfigError, "trailing characters in rational: " + s);
    return Rat(BigInt(num), BigInt(den));
}

inline FpElem parse_elem_text(const PrimeField& f, const std::string& s) {
    std::size_t i = 0;
    long long v = parse_ll(s, i);
    if (i != s.size()) fail(ErrorKind::ConfigError, "trailing characters in residue: " + s);
    return f.from_int(v);
}

// "c0", "(c0+c1*t+c2*t^2)", coefficients integers
inline FqElem parse_elem_text(const ExtField& f, const std::string& raw) {
    std::string s = raw;
    if (!s.empty() && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    FqElem acc = f.zero();
    std::size_t i = 0;
    while (i < s.size()) {
        long long sign = 1;
        if (s[i] == '+') ++i;
        else if (s[i] == '-') {
            sign = -1;
            ++i;
        }
        long long coef = 1;
        if (i < s.size() && s[i] >= '0' && s[i] <= '9') coef = parse_ll(s, i);
        if (i < s.size() && s[i] == '*') ++i;
        std::uint32_t e = 0;
        if (i < s.size() && s[i] == 't') {
            ++i;
            e = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                e = static_cast<std::uint32_t>(parse_ll(s, i));
            }
        }
        auto term = f.from_int(sign * coef);
        auto t = f.gen();
        for (std::uint32_t j = 0; j < e; ++j) term = term * t;
        acc = acc + term;
    }
    return acc;
}

template <class F>
std::string elem_text(const F& f, const typename F::Elem& e) {
    std::string s = f.elem_str(e);
    if (s.find('+') != std::string::npos || s.find('*') != std::string::npos ||
        s.find('t') != std::string::npos)
        s = "(" + s + ")";
    return s;
}

}  // namespace detail

template <class F>
std::string polynomial_to_string(const Polynomial<F>& p,
                                 const std::vector<std::string>& prefixes = {}) {
    if (p.is_zero()) return "0";
    std::vector<std::string> pref = prefixes;
    if (pref.empty())
        for (std::size_t b = 0; b < p.blocks().size(); ++b)
            pref.push_back(std::string(1, detail::kBlockPrefixes[b]));
    std::string out;
    for (const auto& [m, c] : p.terms()) {
        if (!out.empty()) out += " + ";
        std::string vars;
        std::size_t v = 0;
        for (std::size_t b = 0; b < p.blocks().size(); ++b)
            for (std::uint32_t j = 0; j < p.blocks()[b]; ++j, ++v) {
                if (m[v] == 0) continue;
                if (!vars.empty()) vars += "*";
                vars += pref[b] + std::to_string(j);
                if (m[v] > 1) vars += "^" + std::to_string(m[v]);
            }
        std::string cs = detail::elem_text(p.field(), c);
        if (vars.empty())
            out += cs;
        else if (c == p.field().one())
            out += vars;
        else
            out += cs + "*" + vars;
    }
    return out;
}

template <class F>
Polynomial<F> parse_polynomial(const F& f, const std::vector<std::uint32_t>& blocks,
                               const std::string& text,
                               const std::vector<std::string>& prefixes = {}) {
    std::vector<std::string> pref = prefixes;
    if (pref.empty())
        for (std::size_t b = 0; b < blocks.size(); ++b)
            pref.push_back(std::string(1, detail::kBlockPrefixes[b]));
    std::vector<std::uint32_t> offsets(blocks.size(), 0);
    for (std::size_t b = 1; b < blocks.size(); ++b) offsets[b] = offsets[b - 1] + blocks[b - 1];

    std::string s;
    for (char c : text)
        if (c != ' ' && c != '\t') s += c;

    Polynomial<F> out(f, blocks);
    std::size_t i = 0;
    bool first = true;
    while (i < s.size()) {
        bool neg = false;
        if (s[i] == '+') ++i;
        else if (s[i] == '-') {
            neg = true;
            ++i;
        } else if (!first) {
            fail(ErrorKind::ConfigError, "expected +/- between terms");
        }
        first = false;

        Polynomial<F> term = Polynomial<F>::constant(f, blocks, f.one());
        bool expect_factor = true;
        while (expect_factor) {
            if (i >= s.size()) fail(ErrorKind::ConfigError, "dangling term in polynomial text");
            if (s[i] == '(') {
                std::size_t close = s.find(')', i);
                if (close == std::string::npos) fail(ErrorKind::ConfigError, "unbalanced paren");
                term = term.scale(detail::parse_elem_text(f, s.substr(i, close - i + 1)));
                i = close + 1;
            } else if ((s[i] >= '0' && s[i] <= '9') || s[i] == '-') {
                std::size_t start = i;
                if (s[i] == '-') ++i;
                while (i < s.size() && ((s[i] >= '0' && s[i] <= '9') || s[i] == '/')) ++i;
                term = term.scale(detail::parse_elem_text(f, s.substr(start, i - start)));
            } else {
                std::size_t b = 0;
                while (b < pref.size() && s.compare(i, pref[b].size(), pref[b]) != 0) ++b;
                if (b == pref.size())
                    fail(ErrorKind::ConfigError, std::string("unknown variable prefix at: ") + s[i]);
                i += pref[b].size();
                std::size_t j = static_cast<std::size_t>(detail::parse_ll(s, i));
                if (j >= blocks[b]) fail(ErrorKind::IndexOutOfRange, "variable index in block");
                std::uint32_t e = 1;
                if (i < s.size() && s[i] == '^') {
                    ++i;
                    e = static_cast<std::uint32_t>(detail::parse_ll(s, i));
                }
                term = term * Polynomial<F>::variable(f, blocks, offsets[b] + j).pow(e);
            }
            if (i < s.size() && s[i] == '*') {
                ++i;
                expect_factor = true;
            } else {
                expect_factor = false;
            }
        }
        out = out + (neg ? -term : term);
    }
    return out;
}

}  // namespace segre
