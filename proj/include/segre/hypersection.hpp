#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "segre/parallel.hpp"
#include "segre/segre.hpp"
#include "segre/univariate.hpp"

namespace segre {

// Matrix of the linear projection away from L: reduce modulo the row space,
// keep the coordinates at non-pivot columns.  Applying it to a vector agrees
// with project_from_center up to the nonzero check.
template <class F>
Matrix<F> projection_matrix(const Subspace<F>& L) {
    const F& f = L.field();
    const std::size_t N = L.ambient();
    std::vector<bool> is_pivot(N, false);
    for (auto p : L.pivots()) is_pivot[p] = true;
    Matrix<F> V(f, N - L.cone_dim(), N);
    for (std::size_t i = 0; i < N; ++i) {
        std::vector<typename F::Elem> e(N, f.zero());
        e[i] = f.one();
        const auto r = L.reduce(e);
        std::size_t row = 0;
        for (std::size_t j = 0; j < N; ++j)
            if (!is_pivot[j]) V.at(row++, i) = r[j];
    }
    return V;
}

// Two-factor Segre hyperplane section: W = {H = 0} on the image of
// P^a x P^b, projected away from L_H = L cap {H = 0}.  The image of the
// hyperplane {H = 0} is the hyperplane {alpha = 0} downstairs; points of
// Q_H get coordinates in P^{a+b} by dropping alpha's pivot coordinate.
template <class F>
struct SectionSetup {
    ProductDims dims;
    CenterData<F> center;
    std::vector<typename F::Elem> H;
    Subspace<F> LH;
    bool non_generic = false;  // dim L_H = dim L, i.e. H contains L
    Matrix<F> V;
    std::vector<typename F::Elem> alpha;
    std::size_t alpha_pivot = 0;
};

template <class F>
SectionSetup<F> make_section_setup(const F& f, std::uint32_t a, std::uint32_t b,
                                   std::vector<std::vector<typename F::Elem>> center_forms,
                                   std::vector<typename F::Elem> H) {
    auto dims = ProductDims::of({a, b});
    auto cd = center_L(f, dims, std::move(center_forms));
    if (H.size() != dims.N()) fail(ErrorKind::DimensionMismatch, "hyperplane length");
    if (is_zero_vector<F>(H)) fail(ErrorKind::ZeroHyperplane, "section hyperplane is zero");

    Matrix<F> hrow(f, 1, dims.N());
    for (std::size_t j = 0; j < dims.N(); ++j) hrow.at(0, j) = H[j];
    auto LH = intersect(cd.L, Subspace<F>::from_matrix_rows(hrow.kernel()));
    const long long dl = cd.L.dim();
    const long long dlh = LH.dim();
    if (dlh != dl - 1 && dlh != dl)
        fail(ErrorKind::DegenerateSection, "center section of unexpected dimension");

    auto V = projection_matrix(LH);
    auto alpha_opt = V.transpose().solve(H);
    if (!alpha_opt) fail(ErrorKind::SingularMatrix, "hyperplane does not descend");
    auto alpha = std::move(*alpha_opt);
    std::size_t piv = alpha.size();
    for (std::size_t j = 0; j < alpha.size(); ++j)
        if (!alpha[j].is_zero()) {
            piv = j;
            break;
        }
    if (piv == alpha.size()) fail(ErrorKind::ZeroHyperplane, "descended hyperplane is zero");
    return SectionSetup<F>{std::move(dims), std::move(cd),    std::move(H), std::move(LH),
                           dlh == dl,       std::move(V),     std::move(alpha), piv};
}

template <class F>
struct ImageModel {
    std::size_t ambient = 0;  // coordinate count of Q_H's projective space
    std::vector<ProjPoint<F>> samples;
    std::optional<Polynomial<F>> equation;
    long long degree = -1;
    std::vector<std::size_t> nullities;  // interpolation nullity at degree d = index + 1
};

namespace detail {

// One sampling attempt: random first factor, second factor solved against the
// last coordinate with a nonzero induced coefficient so that H vanishes on
// the embedded point.  Returns the Q_H image point, or nothing on degeneracy.
template <class F>
std::optional<ProjPoint<F>> sample_section_point(const F& f, const SectionSetup<F>& s, Rng& rng,
                                                 bool* hyperplane_degenerate) {
    const std::uint32_t a = s.dims.a[0];
    const std::uint32_t b = s.dims.a[1];
    const auto x0 = random_point(f, a + 1, rng);
    std::vector<typename F::Elem> ell(b + 1, f.zero());
    for (std::uint32_t r = 0; r <= b; ++r)
        for (std::uint32_t j = 0; j <= a; ++j)
            ell[r] = ell[r] + s.H[flatten(s.dims, {j, r})] * x0.coords[j];
    std::size_t solve_at = ell.size();
    for (std::size_t r = ell.size(); r-- > 0;)
        if (!ell[r].is_zero()) {
            solve_at = r;
            break;
        }
    if (solve_at == ell.size()) {
        *hyperplane_degenerate = true;  // H vanishes on {x0} x P^b
        return std::nullopt;
    }
    std::vector<typename F::Elem> y(b + 1, f.zero());
    auto acc = f.zero();
    for (std::size_t r = 0; r <= b; ++r) {
        if (r == solve_at) continue;
        y[r] = f.sample(rng);
        acc = acc + ell[r] * y[r];
    }
    y[solve_at] = -(acc * ell[solve_at].inv());
    if (is_zero_vector<F>(y)) return std::nullopt;

    MultiPoint<F> x = make_multipoint(f, s.dims, {x0.coords, y});
    const auto z = segre_embed(f, s.dims, x);
    auto w = s.V.apply(z.coords);
    if (is_zero_vector<F>(w)) return std::nullopt;  // embedded point on L_H
    std::vector<typename F::Elem> u;
    u.reserve(w.size() - 1);
    for (std::size_t j = 0; j < w.size(); ++j)
        if (j != s.alpha_pivot) u.push_back(w[j]);
    return ProjPoint<F>::make(f, std::move(u));
}

}  // namespace detail

// n_samples distinct Q_H points, deterministic for a given seed no matter the
// worker count: attempts are indexed globally and merged in index order.
template <class F>
std::vector<ProjPoint<F>> sample_section(const F& f, const SectionSetup<F>& s,
                                         std::size_t n_samples, std::uint64_t seed,
                                         unsigned workers = 1) {
    check_sample_space(f, s.dims, n_samples);
    std::set<ProjPoint<F>> seen;
    std::vector<ProjPoint<F>> out;
    const std::size_t batch = std::max<std::size_t>(2 * n_samples, 64);
    bool any_valid = false;
    for (std::size_t round = 0; round < 64 && out.size() < n_samples; ++round) {
        std::vector<std::optional<ProjPoint<F>>> got(batch);
        std::vector<std::uint8_t> degen(batch, 0);
        parallel_for(batch, workers, [&](std::size_t i) {
            Rng rng = Rng::stream(seed, 0x77300000ull + round * batch + i);
            bool hd = false;
            got[i] = detail::sample_section_point(f, s, rng, &hd);
            degen[i] = hd ? 1 : 0;
        });
        for (std::size_t i = 0; i < batch && out.size() < n_samples; ++i) {
            if (!got[i]) continue;
            any_valid = true;
            if (seen.insert(*got[i]).second) out.push_back(std::move(*got[i]));
        }
        if (!any_valid && round >= 3) {
            bool all_degen = true;
            for (auto d : degen)
                if (!d) all_degen = false;
            if (all_degen)
                fail(ErrorKind::DegenerateSection, "hyperplane vanishes on every sampled slice");
        }
    }
    if (out.size() < n_samples)
        fail(ErrorKind::FieldTooSmall, "could not collect enough distinct section samples");
    return out;
}

// Degree scan: the first degree whose interpolation space is exactly one
// dimensional wins.  All lower degrees must have empty null space.
template <class F>
ImageModel<F> interpolate_QH(const F& f, const std::vector<ProjPoint<F>>& samples,
                             std::uint32_t max_degree) {
    if (samples.empty()) fail(ErrorKind::EmptyInput, "no section samples");
    ImageModel<F> m;
    m.ambient = samples[0].ambient();
    m.samples = samples;
    const std::size_t need = 2 * monomials_of_degree(m.ambient, max_degree).size();
    if (samples.size() < need)
        fail(ErrorKind::InsufficientSamples,
             "need at least " + std::to_string(need) + " samples for degree " +
                 std::to_string(max_degree) + ", got " + std::to_string(samples.size()));
    for (std::uint32_t d = 1; d <= max_degree; ++d) {
        auto res = interpolate_hypersurface(f, samples, d);
        m.nullities.push_back(res.nullity);
        if (res.equation) {
            m.equation = std::move(res.equation);
            m.degree = d;
            return m;
        }
    }
    std::string dims;
    for (auto n : m.nullities) dims += (dims.empty() ? "" : ",") + std::to_string(n);
    fail(ErrorKind::NoEquationFound,
         "no unique equation up to degree " + std::to_string(max_degree) +
             " (null space dims " + dims + ")");
}

// Independent degree check: restrict the equation to a random line and count
// the roots of the resulting binary form over the algebraic closure, with
// multiplicity.  Every root lives in an extension of degree at most deg(eq).
template <class F>
std::uint64_t line_intersection_degree(const F& f, const Polynomial<F>& eq, std::uint64_t seed) {
    const auto md = eq.multidegree();
    if (!md || md->size() != 1) fail(ErrorKind::NotHomogeneous, "degree oracle needs a form");
    const std::uint32_t d = (*md)[0];
    const std::size_t t1 = eq.total_vars();
    Rng rng = Rng::stream(seed, 0x6c696e65ull);
    for (int att = 0; att < 200; ++att) {
        const auto P = random_point(f, t1, rng);
        const auto Q = random_point(f, t1, rng);
        std::vector<Polynomial<F>> sub;
        sub.reserve(t1);
        for (std::size_t r = 0; r < t1; ++r)
            sub.push_back(Polynomial<F>::linear_form(f, {2}, 0, {P.coords[r], Q.coords[r]}));
        const auto B = eq.compose_polytuple(sub);
        std::vector<typename F::Elem> coef(d + 1, f.zero());
        bool nonzero = false;
        for (const auto& [mono, c] : B.terms()) {
            coef[mono[1]] = c;
            nonzero = true;
        }
        if (!nonzero) continue;  // the line lies inside the hypersurface
        return binary_form_root_count(f, coef);
    }
    fail(ErrorKind::CoverageFailure, "every sampled line lay inside the hypersurface");
}

template <class F>
Polynomial<F> partial_derivative(const F& f, const Polynomial<F>& p, std::size_t var) {
    if (var >= p.total_vars()) fail(ErrorKind::IndexOutOfRange, "derivative variable");
    Polynomial<F> out(f, p.blocks());
    for (const auto& [m, c] : p.terms()) {
        if (m[var] == 0) continue;
        Mono m2 = m;
        m2[var] -= 1;
        out.add_term(std::move(m2), c * f.from_int(static_cast<long long>(m[var])));
    }
    return out;
}

namespace detail {

// gcd degree of a family of binary forms given on a shared 2-variable block,
// counting the common projective root multiplicity over the closure: the gcd
// of the dehomogenizations plus the common power of the first variable.
template <class F>
std::uint64_t binary_family_gcd_degree(const F& f, const std::vector<Polynomial<F>>& forms) {
    std::vector<typename F::Elem> acc;
    std::uint64_t inf = UINT64_MAX;
    bool any = false;
    for (const auto& c : forms) {
        if (c.is_zero()) continue;
        const auto md = c.multidegree();
        const std::uint32_t j = (*md)[0];
        std::vector<typename F::Elem> g(j + 1, f.zero());
        for (const auto& [m, coeff] : c.terms()) g[m[1]] = coeff;
        g = p1_trim(f, std::move(g));
        inf = std::min<std::uint64_t>(inf, j + 1 - g.size());
        acc = any ? p1_gcd(f, std::move(acc), g) : p1_monic(f, std::move(g));
        any = true;
    }
    if (!any) return UINT64_MAX;  // every form vanishes identically
    return inf + static_cast<std::uint64_t>(p1_deg(acc));
}

}  // namespace detail

// Evidence that a line on the hypersurface passes through y0.  The candidate
// directions live in the tangent hyperplane modulo y0; a direction spans a
// contained line exactly when every coefficient form c_j vanishes on it.
// With a pencil of directions the c_j restrict to binary forms and a common
// root over the closure (an extension of degree <= d) is a gcd of positive
// degree.  In bigger direction spaces, rational directions are enumerated
// when the field is small, then random pencils are tried.
struct LineSearchOutcome {
    bool smooth = false;
    bool line_found = false;
};

template <class F>
LineSearchOutcome line_through_point(const F& f, const Polynomial<F>& eq,
                                     const std::vector<Polynomial<F>>& grad,
                                     const ProjPoint<F>& y0, std::uint64_t seed,
                                     std::uint64_t enum_guard = 20000) {
    LineSearchOutcome out;
    const std::size_t t1 = eq.total_vars();
    const std::uint32_t d = (*eq.multidegree())[0];

    std::vector<typename F::Elem> gv;
    gv.reserve(t1);
    for (const auto& g : grad) gv.push_back(g.evaluate(y0.coords));
    if (is_zero_vector<F>(gv)) return out;  // singular point: no verdict
    out.smooth = true;

    Matrix<F> grow(f, 1, t1);
    for (std::size_t j = 0; j < t1; ++j) grow.at(0, j) = gv[j];
    const auto K = grow.kernel();
    std::vector<std::vector<typename F::Elem>> span{y0.coords};
    std::vector<std::vector<typename F::Elem>> dirs;
    for (std::size_t r = 0; r < K.rows() && dirs.size() + 1 < K.rows(); ++r) {
        span.push_back(K.row(r));
        if (Matrix<F>::from_rows(f, span).rank() == span.size()) dirs.push_back(K.row(r));
        else span.pop_back();
    }
    const std::size_t m = dirs.size();  // t1 - 2 tangent directions modulo y0
    if (m == 0) return out;

    std::vector<Polynomial<F>> sub;
    sub.reserve(t1);
    for (std::size_t r = 0; r < t1; ++r) {
        std::vector<typename F::Elem> coeffs{y0.coords[r]};
        for (std::size_t i = 0; i < m; ++i) coeffs.push_back(dirs[i][r]);
        sub.push_back(Polynomial<F>::linear_form(f, {static_cast<std::uint32_t>(1 + m)}, 0, coeffs));
    }
    const auto G = eq.compose_polytuple(sub);
    std::vector<Polynomial<F>> c(d + 1, Polynomial<F>(f, {static_cast<std::uint32_t>(m)}));
    for (const auto& [mono, coeff] : G.terms()) {
        const std::uint32_t j = d - mono[0];
        Mono tail(mono.begin() + 1, mono.end());
        c[j].add_term(std::move(tail), coeff);
    }

    std::vector<Polynomial<F>> conds(c.begin() + 2, c.end());
    bool all_zero = true;
    for (const auto& cj : conds)
        if (!cj.is_zero()) all_zero = false;
    if (all_zero) {
        out.line_found = true;  // the whole tangent pencil is contained
        return out;
    }
    if (m == 1) return out;  // single candidate line, not contained
    if (m == 2) {
        out.line_found = detail::binary_family_gcd_degree(f, conds) >= 1;
        return out;
    }

    if constexpr (F::is_finite) {
        bool small = false;
        try {
            const std::uint64_t q = f.order();
            unsigned __int128 count = 0, pw = 1;
            for (std::size_t i = 0; i < m && count <= enum_guard; ++i) {
                count += pw;
                pw *= q;
            }
            small = count <= enum_guard;
        } catch (const Error&) {
            small = false;  // field order overflows: certainly not small
        }
        if (small) {
            for (const auto& v : enumerate_projective(f, m, enum_guard)) {
                bool zero = true;
                for (const auto& cj : conds)
                    if (!cj.evaluate(v.coords).is_zero()) {
                        zero = false;
                        break;
                    }
                if (zero) {
                    out.line_found = true;
                    return out;
                }
            }
        }
    }

    Rng rng = Rng::stream(seed, 0x70656e63ull);
    for (int att = 0; att < 3 && !out.line_found; ++att) {
        const auto w1 = random_point(f, m, rng);
        const auto w2 = random_point(f, m, rng);
        std::vector<Polynomial<F>> pencil;
        pencil.reserve(m);
        for (std::size_t i = 0; i < m; ++i)
            pencil.push_back(
                Polynomial<F>::linear_form(f, {2}, 0, {w1.coords[i], w2.coords[i]}));
        std::vector<Polynomial<F>> restricted;
        for (const auto& cj : conds) restricted.push_back(cj.compose_polytuple(pencil));
        const auto g = detail::binary_family_gcd_degree(f, restricted);
        if (g == UINT64_MAX || g >= 1) out.line_found = true;
    }
    return out;
}

enum class SectionClass { Quadric, ScrollEvidence };

inline std::string section_class_name(SectionClass c) {
    return c == SectionClass::Quadric ? "quadric" : "scroll-evidence";
}

struct Classification {
    SectionClass kind = SectionClass::ScrollEvidence;
    std::size_t points_checked = 0;
    std::size_t lines_found = 0;
    double lines_found_fraction = 0.0;
};

// Degree 2 is a quadric by decision rule; anything else gets the
// line-through-point evidence fraction over up to max_points smooth samples.
template <class F>
Classification classify_QH(const F& f, const ImageModel<F>& model, std::uint64_t seed,
                           unsigned workers = 1, std::size_t max_points = 20) {
    if (!model.equation) fail(ErrorKind::NoEquationFound, "classification needs an equation");
    Classification cls;
    if (model.degree == 2) {
        cls.kind = SectionClass::Quadric;
        return cls;
    }
    cls.kind = SectionClass::ScrollEvidence;
    const auto& eq = *model.equation;
    std::vector<Polynomial<F>> grad;
    for (std::size_t v = 0; v < eq.total_vars(); ++v)
        grad.push_back(partial_derivative(f, eq, v));

    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < model.samples.size() && chosen.size() < max_points; ++i) {
        std::vector<typename F::Elem> gv;
        for (const auto& g : grad) gv.push_back(g.evaluate(model.samples[i].coords));
        if (!is_zero_vector<F>(gv)) chosen.push_back(i);
    }
    std::vector<std::uint8_t> found(chosen.size(), 0);
    parallel_for(chosen.size(), workers, [&](std::size_t t) {
        const auto r =
            line_through_point(f, eq, grad, model.samples[chosen[t]], seed * 0x9e37ull + t);
        found[t] = r.line_found ? 1 : 0;
    });
    cls.points_checked = chosen.size();
    for (auto b : found) cls.lines_found += b;
    cls.lines_found_fraction =
        chosen.empty() ? 0.0 : static_cast<double>(cls.lines_found) / chosen.size();
    return cls;
}

template <class F>
struct SectionRun {
    SectionSetup<F> setup;
    ImageModel<F> model;
    std::uint64_t degree_oracle = 0;
    bool oracles_agree = false;
    Classification cls;
    bool below_range = false;  // a + b < 3: under the interesting range
};

template <class F>
SectionRun<F> run_section(const F& f, std::uint32_t a, std::uint32_t b,
                          std::vector<std::vector<typename F::Elem>> center_forms,
                          std::vector<typename F::Elem> H, std::size_t n_samples,
                          std::uint32_t max_degree, std::uint64_t seed, unsigned workers = 1) {
    auto setup = make_section_setup(f, a, b, std::move(center_forms), std::move(H));
    auto samples = sample_section(f, setup, n_samples, seed, workers);
    auto model = interpolate_QH(f, samples, max_degree);
    const auto oracle = line_intersection_degree(f, *model.equation, seed);
    auto cls = classify_QH(f, model, seed, workers);
    SectionRun<F> run{std::move(setup), std::move(model), oracle, false, cls, a + b < 3};
    run.oracles_agree = static_cast<long long>(oracle) == run.model.degree;
    return run;
}

}  // namespace segre
