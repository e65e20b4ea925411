#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "segre/parallel.hpp"
#include "segre/polynomial.hpp"
#include "segre/prime_field.hpp"
#include "segre/projective.hpp"

namespace segre {

// Dimension vector (a_1, ..., a_n) of a product of projective spaces.
struct ProductDims {
    std::vector<std::uint32_t> a;

    static ProductDims of(std::vector<std::uint32_t> dims) {
        if (dims.empty()) fail(ErrorKind::EmptyInput, "product with no factors");
        for (auto d : dims)
            if (d == 0) fail(ErrorKind::ConfigError, "factor must have projective dimension >= 1");
        return ProductDims{std::move(dims)};
    }

    std::size_t n_factors() const { return a.size(); }
    std::uint32_t sum() const {
        std::uint32_t s = 0;
        for (auto d : a) s += d;
        return s;
    }
    // Number of Segre coordinates, prod (a_i + 1).
    std::size_t N() const {
        std::size_t n = 1;
        for (auto d : a) {
            const std::size_t f = static_cast<std::size_t>(d) + 1;
            if (n > SIZE_MAX / f) fail(ErrorKind::EnumerationTooLarge, "ambient size overflow");
            n *= f;
        }
        return n;
    }
    std::vector<std::uint32_t> block_sizes() const {
        std::vector<std::uint32_t> b;
        b.reserve(a.size());
        for (auto d : a) b.push_back(d + 1);
        return b;
    }
    // Row-major flattening: the last factor's index varies fastest.
    std::vector<std::size_t> strides() const {
        std::vector<std::size_t> s(a.size());
        std::size_t acc = 1;
        for (std::size_t i = a.size(); i-- > 0;) {
            s[i] = acc;
            acc *= static_cast<std::size_t>(a[i]) + 1;
        }
        return s;
    }
    friend bool operator==(const ProductDims& x, const ProductDims& y) { return x.a == y.a; }
};

inline std::size_t flatten(const ProductDims& d, const std::vector<std::uint32_t>& J) {
    if (J.size() != d.n_factors()) fail(ErrorKind::DimensionMismatch, "multi-index arity");
    const auto s = d.strides();
    std::size_t idx = 0;
    for (std::size_t i = 0; i < J.size(); ++i) {
        if (J[i] > d.a[i]) fail(ErrorKind::IndexOutOfRange, "multi-index entry");
        idx += J[i] * s[i];
    }
    return idx;
}

inline std::vector<std::uint32_t> unflatten(const ProductDims& d, std::size_t idx) {
    if (idx >= d.N()) fail(ErrorKind::IndexOutOfRange, "flat index");
    const auto s = d.strides();
    std::vector<std::uint32_t> J(d.n_factors());
    for (std::size_t i = 0; i < J.size(); ++i) {
        J[i] = static_cast<std::uint32_t>(idx / s[i]);
        idx %= s[i];
    }
    return J;
}

inline std::uint32_t index_weight(const std::vector<std::uint32_t>& J) {
    std::uint32_t w = 0;
    for (auto j : J)
        if (j != 0) ++w;
    return w;
}

// Point of a product of projective spaces, one normalized point per factor.
template <class F>
struct MultiPoint {
    std::vector<ProjPoint<F>> factors;

    friend bool operator==(const MultiPoint& x, const MultiPoint& y) {
        return x.factors == y.factors;
    }
    friend bool operator!=(const MultiPoint& x, const MultiPoint& y) { return !(x == y); }
    friend bool operator<(const MultiPoint& x, const MultiPoint& y) {
        return x.factors < y.factors;
    }
};

template <class F>
MultiPoint<F> make_multipoint(const F& f, const ProductDims& d,
                              const std::vector<std::vector<typename F::Elem>>& coords) {
    if (coords.size() != d.n_factors())
        fail(ErrorKind::DimensionMismatch, "factor count");
    MultiPoint<F> m;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i].size() != d.a[i] + 1)
            fail(ErrorKind::DimensionMismatch, "factor coordinate arity");
        m.factors.push_back(ProjPoint<F>::make(f, coords[i]));
    }
    return m;
}

// z_J = prod_i x_{i, J_i}, built by folding coordinate tensor products left.
template <class F>
ProjPoint<F> segre_embed(const F& f, const ProductDims& d, const MultiPoint<F>& x) {
    if (x.factors.size() != d.n_factors())
        fail(ErrorKind::DimensionMismatch, "factor count");
    std::vector<typename F::Elem> z{f.one()};
    for (std::size_t i = 0; i < x.factors.size(); ++i) {
        if (x.factors[i].ambient() != d.a[i] + 1)
            fail(ErrorKind::DimensionMismatch, "factor coordinate arity");
        std::vector<typename F::Elem> nxt;
        nxt.reserve(z.size() * x.factors[i].ambient());
        for (const auto& zi : z)
            for (const auto& c : x.factors[i].coords) nxt.push_back(zi * c);
        z = std::move(nxt);
    }
    return ProjPoint<F>::make(f, std::move(z));
}

// The embedding as a monomial map: component at flat index J is prod x_{i,J_i}.
template <class F>
RationalMap<F> segre_map(const F& f, const ProductDims& d) {
    const auto blocks = d.block_sizes();
    std::vector<std::uint32_t> offsets(blocks.size(), 0);
    for (std::size_t b = 1; b < blocks.size(); ++b) offsets[b] = offsets[b - 1] + blocks[b - 1];
    std::vector<Polynomial<F>> comps;
    const std::size_t N = d.N();
    for (std::size_t idx = 0; idx < N; ++idx) {
        const auto J = unflatten(d, idx);
        Polynomial<F> c(f, blocks);
        Mono m(offsets.back() + blocks.back(), 0);
        for (std::size_t i = 0; i < J.size(); ++i) m[offsets[i] + J[i]] = 1;
        c.add_term(std::move(m), f.one());
        comps.push_back(std::move(c));
    }
    return RationalMap<F>::make(std::move(comps));
}

// Random point of the product; with forms given, each factor avoids its
// hyperplane.
template <class F>
MultiPoint<F> random_multipoint(const F& f, const ProductDims& d, Rng& rng,
                                const std::vector<std::vector<typename F::Elem>>* avoid = nullptr) {
    MultiPoint<F> m;
    for (std::size_t i = 0; i < d.n_factors(); ++i) {
        bool found = false;
        for (int att = 0; att < 1000 && !found; ++att) {
            auto p = random_point(f, d.a[i] + 1, rng);
            if (avoid && dot(f, (*avoid)[i], p.coords).is_zero()) continue;
            m.factors.push_back(std::move(p));
            found = true;
        }
        if (!found) fail(ErrorKind::FieldTooSmall, "no factor point off the hyperplane found");
    }
    return m;
}

// Projection center attached to a choice of one hyperplane per factor.
//
// M_i puts the hyperplane functional first and completes it with standard
// basis rows away from its pivot, so in adapted factor coordinates
// y_i = M_i x_i the hyperplane reads {y_{i,0} = 0}.  The center is spanned,
// in Segre coordinates, by the preimages of the weight >= 2 basis vectors.
template <class F>
struct CenterData {
    ProductDims dims;
    std::vector<std::vector<typename F::Elem>> forms;
    std::vector<Matrix<F>> M;
    std::vector<Matrix<F>> M_inv;
    Subspace<F> L;
    std::vector<std::size_t> low;  // flat indices of weight <= 1, ascending
};

template <class F>
CenterData<F> center_L(const F& f, const ProductDims& d,
                       std::vector<std::vector<typename F::Elem>> forms) {
    if (forms.size() != d.n_factors()) fail(ErrorKind::DimensionMismatch, "one form per factor");
    std::vector<Matrix<F>> M, Minv;
    for (std::size_t i = 0; i < forms.size(); ++i) {
        const auto& h = forms[i];
        const std::size_t m = static_cast<std::size_t>(d.a[i]) + 1;
        if (h.size() != m) fail(ErrorKind::DimensionMismatch, "hyperplane coefficient arity");
        std::size_t pivot = 0;
        while (pivot < m && h[pivot].is_zero()) ++pivot;
        if (pivot == m) fail(ErrorKind::ZeroHyperplane, "zero hyperplane form");
        Matrix<F> mi(f, m, m);
        for (std::size_t j = 0; j < m; ++j) mi.at(0, j) = h[j];
        std::size_t r = 1;
        for (std::size_t j = 0; j < m; ++j) {
            if (j == pivot) continue;
            mi.at(r++, j) = f.one();
        }
        Minv.push_back(mi.inverse());
        M.push_back(std::move(mi));
    }
    Matrix<F> Tinv = Minv[0];
    for (std::size_t i = 1; i < Minv.size(); ++i) Tinv = Tinv.kron(Minv[i]);

    const std::size_t N = d.N();
    std::vector<std::size_t> low;
    std::vector<std::vector<typename F::Elem>> gens;
    for (std::size_t idx = 0; idx < N; ++idx) {
        if (index_weight(unflatten(d, idx)) <= 1)
            low.push_back(idx);
        else
            gens.push_back(Tinv.col(idx));
    }
    Subspace<F> L = gens.empty() ? Subspace<F>(f, N)
                                 : Subspace<F>::from_generators(f, N, gens);
    if (L.cone_dim() + low.size() != N)
        fail(ErrorKind::DimensionMismatch, "center dimension law violated");
    return CenterData<F>{d, std::move(forms), std::move(M), std::move(Minv), std::move(L),
                         std::move(low)};
}

template <class F>
CenterData<F> random_center(const F& f, const ProductDims& d, Rng& rng) {
    std::vector<std::vector<typename F::Elem>> forms;
    for (std::size_t i = 0; i < d.n_factors(); ++i)
        forms.push_back(random_form(f, d.a[i] + 1, rng));
    return center_L(f, d, std::move(forms));
}

// Projection away from the center: component r is the adapted Segre
// coordinate at the r-th weight <= 1 index, a product of one linear form per
// factor.  Target coordinates are ordered by ascending flat index.
template <class F>
RationalMap<F> pi_L_map(const F& f, const CenterData<F>& cd) {
    const auto blocks = cd.dims.block_sizes();
    std::vector<Polynomial<F>> comps;
    for (std::size_t idx : cd.low) {
        const auto J = unflatten(cd.dims, idx);
        auto c = Polynomial<F>::constant(f, blocks, f.one());
        for (std::size_t i = 0; i < J.size(); ++i)
            c = c * Polynomial<F>::linear_form(f, blocks, i, cd.M[i].row(J[i]));
        comps.push_back(std::move(c));
    }
    return RationalMap<F>::make(std::move(comps));
}

// Matrix of the projection in ambient Segre coordinates: the rows of
// M_1 x ... x M_n at the weight <= 1 indices.  Its kernel is the center's
// cone.
template <class F>
Matrix<F> pi_matrix(const F& f, const CenterData<F>& cd) {
    Matrix<F> T = cd.M[0];
    for (std::size_t i = 1; i < cd.M.size(); ++i) T = T.kron(cd.M[i]);
    Matrix<F> P(f, cd.low.size(), cd.dims.N());
    for (std::size_t r = 0; r < cd.low.size(); ++r)
        for (std::size_t c = 0; c < cd.dims.N(); ++c) P.at(r, c) = T.at(cd.low[r], c);
    return P;
}

// Same map evaluated directly: y_i = M_i x_i per factor, then the weight <= 1
// products.  Returns raw (unnormalized) target coordinates.
template <class F>
std::vector<typename F::Elem> pi_L_eval(const F& f, const CenterData<F>& cd,
                                        const MultiPoint<F>& x) {
    if (x.factors.size() != cd.dims.n_factors())
        fail(ErrorKind::DimensionMismatch, "factor count");
    std::vector<std::vector<typename F::Elem>> y;
    for (std::size_t i = 0; i < x.factors.size(); ++i)
        y.push_back(cd.M[i].apply(x.factors[i].coords));
    std::vector<typename F::Elem> w;
    w.reserve(cd.low.size());
    for (std::size_t idx : cd.low) {
        const auto J = unflatten(cd.dims, idx);
        auto t = f.one();
        for (std::size_t i = 0; i < J.size(); ++i) t = t * y[i][J[i]];
        w.push_back(std::move(t));
    }
    return w;
}

// Position, among the target coordinates, of the weight-1 index with J_i = j.
template <class F>
std::size_t target_position(const CenterData<F>& cd, std::size_t factor, std::uint32_t j) {
    std::vector<std::uint32_t> J(cd.dims.n_factors(), 0);
    J[factor] = j;
    const std::size_t flat = flatten(cd.dims, J);
    const auto it = std::lower_bound(cd.low.begin(), cd.low.end(), flat);
    return static_cast<std::size_t>(it - cd.low.begin());
}

// Per-factor matrices of the inverse map: x_i = S_i w with
// S_i = M_i^{-1} (w_0, w at factor i's weight-1 positions).
template <class F>
std::vector<Matrix<F>> sigma_matrices(const F& f, const CenterData<F>& cd) {
    const std::size_t t1 = cd.low.size();
    std::vector<Matrix<F>> out;
    for (std::size_t i = 0; i < cd.dims.n_factors(); ++i) {
        const std::size_t m = static_cast<std::size_t>(cd.dims.a[i]) + 1;
        Matrix<F> sel(f, m, t1);
        sel.at(0, 0) = f.one();
        for (std::uint32_t j = 1; j < m; ++j)
            sel.at(j, target_position(cd, i, j)) = f.one();
        out.push_back(cd.M_inv[i].mul(sel));
    }
    return out;
}

template <class F>
MultiPoint<F> sigma_eval(const F& f, const CenterData<F>& cd,
                         const std::vector<typename F::Elem>& w) {
    if (w.size() != cd.low.size()) fail(ErrorKind::DimensionMismatch, "target coordinate arity");
    MultiPoint<F> x;
    for (std::size_t i = 0; i < cd.dims.n_factors(); ++i) {
        const std::size_t m = static_cast<std::size_t>(cd.dims.a[i]) + 1;
        std::vector<typename F::Elem> y;
        y.reserve(m);
        y.push_back(w[0]);
        for (std::uint32_t j = 1; j < m; ++j) y.push_back(w[target_position(cd, i, j)]);
        x.factors.push_back(ProjPoint<F>::make(f, cd.M_inv[i].apply(y)));
    }
    return x;
}

// The forward/backward sample spaces both have q^(sum a_i) usable points
// over F_q; refuse trial counts that cannot even be met by distinct samples.
template <class F>
void check_sample_space(const F& f, const ProductDims& d, std::size_t trials) {
    if constexpr (F::is_finite) {
        std::uint64_t q = 0;
        try {
            q = f.order();
        } catch (const Error&) {
            return;  // order overflows uint64, certainly large enough
        }
        std::uint64_t usable = 1;
        for (std::uint32_t k = 0; k < d.sum(); ++k) {
            if (usable >= trials) return;
            if (usable > UINT64_MAX / q) return;
            usable *= q;
        }
        if (usable < trials)
            fail(ErrorKind::FieldTooSmall, "sample space smaller than requested trial count");
    }
}

struct BirationalityReport {
    std::vector<std::uint32_t> dims;
    std::string field;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::size_t ok_forward = 0;
    std::size_t ok_backward = 0;
    std::vector<std::size_t> failed_forward;
    std::vector<std::size_t> failed_backward;
    bool passed = false;

    friend bool operator==(const BirationalityReport& a, const BirationalityReport& b) {
        return a.dims == b.dims && a.field == b.field && a.seed == b.seed &&
               a.trials == b.trials && a.ok_forward == b.ok_forward &&
               a.ok_backward == b.ok_backward && a.failed_forward == b.failed_forward &&
               a.failed_backward == b.failed_backward && a.passed == b.passed;
    }
};

// Round-trip evidence for birationality.  Forward: random product point off
// the hyperplanes, check sigma(pi(x)) == x.  Backward: random target point
// with w_0 != 0, check pi(sigma(w)) == w.  Trial i draws from its own RNG
// streams, so the outcome is independent of the worker count.
template <class F>
BirationalityReport verify_birational(const F& f, const CenterData<F>& cd, std::size_t trials,
                                      std::uint64_t seed, unsigned workers = 1) {
    check_sample_space(f, cd.dims, trials);
    std::vector<std::uint8_t> okf(trials, 0), okb(trials, 0);
    parallel_for(trials, workers, [&](std::size_t i) {
        {
            Rng rng = Rng::stream(seed, 2 * i);
            const auto x = random_multipoint(f, cd.dims, rng, &cd.forms);
            const auto w = pi_L_eval(f, cd, x);
            okf[i] = sigma_eval(f, cd, w) == x ? 1 : 0;
        }
        {
            Rng rng = Rng::stream(seed, 2 * i + 1);
            std::vector<typename F::Elem> w;
            w.reserve(cd.low.size());
            for (std::size_t j = 0; j < cd.low.size(); ++j) w.push_back(f.sample(rng));
            for (int att = 0; w[0].is_zero(); ++att) {
                if (att >= 1000) fail(ErrorKind::FieldTooSmall, "no unit for target sampling");
                w[0] = f.sample(rng);
            }
            const auto wp = ProjPoint<F>::make(f, w);
            const auto x = sigma_eval(f, cd, wp.coords);
            const auto w2 = ProjPoint<F>::make(f, pi_L_eval(f, cd, x));
            okb[i] = w2 == wp ? 1 : 0;
        }
    });
    BirationalityReport rep;
    rep.dims = cd.dims.a;
    rep.field = f.name();
    rep.seed = seed;
    rep.trials = trials;
    for (std::size_t i = 0; i < trials; ++i) {
        if (okf[i]) ++rep.ok_forward;
        else rep.failed_forward.push_back(i);
        if (okb[i]) ++rep.ok_backward;
        else rep.failed_backward.push_back(i);
    }
    rep.passed = rep.ok_forward == trials && rep.ok_backward == trials;
    return rep;
}

// ---- fiber structure over (P^1)^n by exhaustive enumeration ----

// Linear form on P^1 vanishing exactly at [c0:c1].
inline std::vector<FpElem> point_form(const PrimeField& f, const ProjPoint<PrimeField>& c) {
    return {c.coords[1], -c.coords[0]};
}

struct FiberReport {
    std::size_t n = 0;
    std::uint64_t p = 0;
    std::uint64_t seed = 0;
    std::vector<std::vector<std::uint64_t>> base_point;   // p, normalized coords
    std::vector<std::vector<std::uint64_t>> apex_point;   // q, normalized coords
    std::size_t enumerated = 0;
    std::size_t intersection_size = 0;
    std::size_t expected_size = 0;       // counted during enumeration
    std::size_t expected_size_formula = 0;
    std::size_t span_cone_dim = 0;
    bool forms_vanish_on_span = false;
    bool forms_vanish_at_apex = false;
    bool matched = false;
    bool passed = false;
};

// Checks that the n product hyperplanes built from a generic pair (p, q) cut
// the Segre image of (P^1)^n exactly in {q} union {x : x agrees with p in at
// least two slots}.
inline FiberReport fiber_bruteforce(const PrimeField& f, std::size_t n,
                                    const MultiPoint<PrimeField>& base,
                                    const MultiPoint<PrimeField>& apex) {
    if (n == 0) fail(ErrorKind::EmptyInput, "product with no factors");
    if (base.factors.size() != n || apex.factors.size() != n)
        fail(ErrorKind::DimensionMismatch, "factor count");
    const ProductDims d = ProductDims::of(std::vector<std::uint32_t>(n, 1));
    for (std::size_t i = 0; i < n; ++i) {
        if (base.factors[i].ambient() != 2 || apex.factors[i].ambient() != 2)
            fail(ErrorKind::DimensionMismatch, "factors must lie in P^1");
        if (base.factors[i] == apex.factors[i])
            fail(ErrorKind::GenericityViolation, "pair agrees in a slot");
    }
    const std::uint64_t p = f.characteristic();
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (total > 10000000 / (p + 1))
            fail(ErrorKind::EnumerationTooLarge, "fiber enumeration exceeds guard");
        total *= p + 1;
    }

    // the p + 1 points of P^1
    std::vector<ProjPoint<PrimeField>> line;
    for (std::uint64_t t = 0; t < p; ++t)
        line.push_back(ProjPoint<PrimeField>::make(f, {f.one(), f.from_int(static_cast<long long>(t))}));
    line.push_back(ProjPoint<PrimeField>::make(f, {f.zero(), f.one()}));

    // hyperplane i: apex form in slot i, base forms elsewhere, tensored
    std::vector<std::vector<FpElem>> forms;
    for (std::size_t i = 0; i < n; ++i) {
        Matrix<PrimeField> acc(f, 1, 1);
        acc.at(0, 0) = f.one();
        for (std::size_t j = 0; j < n; ++j) {
            Matrix<PrimeField> fac(f, 1, 2);
            const auto fc = point_form(f, j == i ? apex.factors[j] : base.factors[j]);
            fac.at(0, 0) = fc[0];
            fac.at(0, 1) = fc[1];
            acc = acc.kron(fac);
        }
        forms.push_back(acc.row(0));
    }

    FiberReport rep;
    rep.n = n;
    rep.p = p;
    for (std::size_t i = 0; i < n; ++i) {
        rep.base_point.push_back({base.factors[i].coords[0].v, base.factors[i].coords[1].v});
        rep.apex_point.push_back({apex.factors[i].coords[0].v, apex.factors[i].coords[1].v});
    }
    rep.enumerated = total;

    std::vector<std::vector<FpElem>> span_gens;
    bool mismatch = false;
    std::vector<std::size_t> odo(n, 0);
    for (std::size_t step = 0; step < total; ++step) {
        MultiPoint<PrimeField> x;
        for (std::size_t i = 0; i < n; ++i) x.factors.push_back(line[odo[i]]);
        const auto z = segre_embed(f, d, x);
        std::size_t agree = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (x.factors[i] == base.factors[i]) ++agree;
        const bool expected = agree >= 2 || x == apex;
        bool vanishes = true;
        for (const auto& fm : forms)
            if (!dot(f, fm, z.coords).is_zero()) {
                vanishes = false;
                break;
            }
        if (agree >= 2) span_gens.push_back(z.coords);
        if (expected) ++rep.expected_size;
        if (vanishes) ++rep.intersection_size;
        if (expected != vanishes) mismatch = true;
        for (std::size_t i = n; i-- > 0;) {
            if (++odo[i] <= p) break;
            odo[i] = 0;
        }
    }
    rep.matched = !mismatch;

    // independent size oracle: 1 + sum_{k>=2} C(n,k) p^(n-k)
    {
        std::size_t sum = 1;
        std::vector<std::size_t> binom(n + 1, 0);
        binom[0] = 1;
        for (std::size_t r = 1; r <= n; ++r)
            for (std::size_t c = r; c-- > 0;) binom[c + 1] += binom[c];
        for (std::size_t k = 2; k <= n; ++k) {
            std::size_t pw = 1;
            for (std::size_t e = 0; e < n - k; ++e) pw *= p;
            sum += binom[k] * pw;
        }
        rep.expected_size_formula = sum;
    }

    const auto zq = segre_embed(f, d, apex);
    rep.forms_vanish_at_apex = true;
    for (const auto& fm : forms)
        if (!dot(f, fm, zq.coords).is_zero()) rep.forms_vanish_at_apex = false;

    rep.forms_vanish_on_span = true;
    if (!span_gens.empty()) {
        const auto span = Subspace<PrimeField>::from_generators(f, d.N(), span_gens);
        rep.span_cone_dim = span.cone_dim();
        for (std::size_t r = 0; r < span.basis().rows(); ++r)
            for (const auto& fm : forms)
                if (!dot(f, fm, span.basis().row(r)).is_zero()) rep.forms_vanish_on_span = false;
    }

    rep.passed = rep.matched && rep.forms_vanish_on_span && rep.forms_vanish_at_apex &&
                 rep.expected_size == rep.expected_size_formula &&
                 rep.intersection_size == rep.expected_size;
    return rep;
}

// Seeded generic pair: slots of q are drawn to differ from those of p.
inline std::pair<MultiPoint<PrimeField>, MultiPoint<PrimeField>> random_generic_pair(
    const PrimeField& f, std::size_t n, Rng& rng) {
    MultiPoint<PrimeField> base, apex;
    for (std::size_t i = 0; i < n; ++i) {
        base.factors.push_back(random_point(f, 2, rng));
        for (int att = 0;; ++att) {
            if (att >= 1000) fail(ErrorKind::FieldTooSmall, "no distinct slot point found");
            auto q = random_point(f, 2, rng);
            if (q != base.factors[i]) {
                apex.factors.push_back(std::move(q));
                break;
            }
        }
    }
    return {std::move(base), std::move(apex)};
}

inline FiberReport fiber_bruteforce_seeded(const PrimeField& f, std::size_t n,
                                           std::uint64_t seed) {
    Rng rng = Rng::stream(seed, 0x666962657275ull);
    auto [base, apex] = random_generic_pair(f, n, rng);
    auto rep = fiber_bruteforce(f, n, base, apex);
    rep.seed = seed;
    return rep;
}

}  // namespace segre
