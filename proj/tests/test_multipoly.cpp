#include <catch2/catch_amalgamated.hpp>

#include "segre/fields.hpp"
#include "segre/polynomial.hpp"
#include "test_support.hpp"

using namespace segre;

namespace {

template <class F>
Polynomial<F> random_poly(const F& f, const std::vector<std::uint32_t>& blocks,
                          std::uint32_t max_deg, std::size_t nterms, Rng& rng) {
    Polynomial<F> p(f, blocks);
    const std::size_t v = [&] {
        std::size_t n = 0;
        for (auto b : blocks) n += b;
        return n;
    }();
    for (std::size_t t = 0; t < nterms; ++t) {
        Mono m(v, 0);
        for (auto& e : m) e = static_cast<std::uint32_t>(rng.bounded(max_deg + 1));
        p.add_term(std::move(m), f.sample(rng));
    }
    return p;
}

template <class F>
std::vector<typename F::Elem> random_tuple(const F& f, std::size_t n, Rng& rng) {
    std::vector<typename F::Elem> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(f.sample(rng));
    return v;
}

}  // namespace

TEST_CASE("bilinear evaluation on a two-factor product") {
    RationalField Q;
    // f = x0*y1 + 2*x1*y0 at ([1:3],[2:5]) gives 1*5 + 2*3*2 = 17
    auto f = parse_polynomial(Q, {2, 2}, "x0*y1 + 2*x1*y0");
    auto val = f.evaluate({Q.from_int(1), Q.from_int(3), Q.from_int(2), Q.from_int(5)});
    REQUIRE(val == Q.from_int(17));
    REQUIRE(f.multidegree().has_value());
    REQUIRE(*f.multidegree() == std::vector<std::uint32_t>{1, 1});
}

TEST_CASE("linear substitution swaps a factor's coordinates") {
    RationalField Q;
    auto f = parse_polynomial(Q, {2, 2}, "x0*y0");
    Matrix<RationalField> M(Q, 2, 2);
    M.at(0, 1) = Q.one();
    M.at(1, 0) = Q.one();
    auto g = f.compose_linear(M, 1);
    REQUIRE(g == parse_polynomial(Q, {2, 2}, "x0*y1"));

    auto swap_back = g.compose_linear(M, 1);
    REQUIRE(swap_back == f);

    Matrix<RationalField> S(Q, 2, 2);
    S.at(0, 0) = Q.one();
    S.at(1, 0) = Q.one();
    REQUIRE_THROWS_MATCHES(f.compose_linear(S, 0), Error, ErrorKindIs(ErrorKind::SingularMatrix));
}

TEST_CASE("composition with a linear map commutes with evaluation") {
    PrimeField F101(101);
    Rng rng(2026'08'01);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::uint32_t> blocks{2, 3};
        auto f = random_poly(F101, blocks, 2, 5, rng);
        std::size_t block = rng.bounded(2);
        std::uint32_t n = blocks[block];
        Matrix<PrimeField> M(F101, n, n);
        do {
            for (std::uint32_t i = 0; i < n; ++i)
                for (std::uint32_t j = 0; j < n; ++j) M.at(i, j) = F101.sample(rng);
        } while (M.rank() != n);
        auto g = f.compose_linear(M, block);

        auto x = random_tuple(F101, 5, rng);
        // substitute on the chosen block, then evaluate f
        std::size_t offset = block == 0 ? 0 : 2;
        auto xs = x;
        std::vector<FpElem> sub(n, F101.zero());
        for (std::uint32_t i = 0; i < n; ++i) {
            sub[i] = F101.zero();
            for (std::uint32_t j = 0; j < n; ++j)
                sub[i] = sub[i] + M.at(i, j) * x[offset + j];
        }
        for (std::uint32_t i = 0; i < n; ++i) xs[offset + i] = sub[i];
        REQUIRE(g.evaluate(x) == f.evaluate(xs));

        // degree profile is preserved by invertible substitution
        REQUIRE((f.multidegree().has_value()) == (g.multidegree().has_value()));
    }
}

TEST_CASE("polynomial tuple substitution commutes with evaluation") {
    PrimeField F65537(65537);
    Rng rng(77);
    std::vector<std::uint32_t> outer{3};
    std::vector<std::uint32_t> inner{2, 2};
    for (int trial = 0; trial < 200; ++trial) {
        auto f = random_poly(F65537, outer, 2, 4, rng);
        // three bihomogeneous (1,1) components
        std::vector<Polynomial<PrimeField>> g;
        for (int i = 0; i < 3; ++i) {
            Polynomial<PrimeField> gi(F65537, inner);
            for (std::uint32_t a = 0; a < 2; ++a)
                for (std::uint32_t b = 0; b < 2; ++b) {
                    Mono m{0, 0, 0, 0};
                    m[a] = 1;
                    m[2 + b] = 1;
                    gi.add_term(std::move(m), F65537.sample(rng));
                }
            g.push_back(gi);
        }
        auto h = f.compose_polytuple(g);
        auto x = random_tuple(F65537, 4, rng);
        std::vector<FpElem> gx;
        for (const auto& gi : g) gx.push_back(gi.evaluate(x));
        REQUIRE(h.evaluate(x) == f.evaluate(gx));
    }
}

TEST_CASE("tuple substitution rejects mismatched multidegrees") {
    RationalField Q;
    auto f = parse_polynomial(Q, {2}, "x0 + x1");
    std::vector<Polynomial<RationalField>> bad{parse_polynomial(Q, {2}, "x0"),
                                     parse_polynomial(Q, {2}, "x0*x1")};
    REQUIRE_THROWS_MATCHES(f.compose_polytuple(bad), Error,
                           ErrorKindIs(ErrorKind::HeterogeneousTuple));

    // a zero component is compatible with any degree
    std::vector<Polynomial<RationalField>> ok{parse_polynomial(Q, {2}, "x0"), Polynomial<RationalField>(Q, {2})};
    REQUIRE_NOTHROW(f.compose_polytuple(ok));

    auto mixed = parse_polynomial(Q, {2}, "x0 + x0*x1");
    std::vector<Polynomial<RationalField>> het{mixed, mixed};
    REQUIRE_THROWS_MATCHES(f.compose_polytuple(het), Error,
                           ErrorKindIs(ErrorKind::HeterogeneousTuple));
}

TEST_CASE("multidegree verdicts") {
    RationalField Q;
    REQUIRE(!Polynomial<RationalField>(Q, {2, 2}).multidegree().has_value());
    auto f = parse_polynomial(Q, {2, 2}, "x0*y0 + x1*y1");
    REQUIRE(*f.multidegree() == std::vector<std::uint32_t>{1, 1});
    auto g = parse_polynomial(Q, {2, 2}, "x0*y0 + x0*x1");
    REQUIRE(!g.multidegree().has_value());
    auto h = parse_polynomial(Q, {2, 2}, "x0^2*y0*y1 + x0*x1*y1^2");
    REQUIRE(*h.multidegree() == std::vector<std::uint32_t>{2, 2});
}

TEST_CASE("interpolation recovers the rank-one quadric") {
    PrimeField F101(101);
    Rng rng(5150);
    // points (s*u, s*v, t*u, t*v) sweep the image of the two-factor product map
    std::vector<ProjPoint<PrimeField>> pts;
    while (pts.size() < 20) {
        auto s = F101.sample(rng), t = F101.sample(rng);
        auto u = F101.sample(rng), v = F101.sample(rng);
        std::vector<FpElem> z{s * u, s * v, t * u, t * v};
        if (is_zero_vector<PrimeField>(z)) continue;
        pts.push_back(ProjPoint<PrimeField>::make(F101, z));
    }
    auto res = interpolate_hypersurface(F101, pts, 2);
    REQUIRE(res.nullity == 1);
    REQUIRE(res.equation.has_value());
    // normalized equation is exactly z0*z3 - z1*z2
    auto expect = parse_polynomial(F101, {4}, "x0*x3 - x1*x2");
    REQUIRE(*res.equation == expect);
}

TEST_CASE("interpolation reports non-unique solutions by nullity") {
    PrimeField F101(101);
    Rng rng(99);
    // three generic points in the plane already pin down no line twice over:
    // a 3x3 Vandermonde-like system of full rank has nullity 0
    std::vector<ProjPoint<PrimeField>> pts;
    pts.push_back(ProjPoint<PrimeField>::make(F101, {F101.from_int(1), F101.from_int(2), F101.from_int(5)}));
    pts.push_back(ProjPoint<PrimeField>::make(F101, {F101.from_int(1), F101.from_int(3), F101.from_int(11)}));
    pts.push_back(ProjPoint<PrimeField>::make(F101, {F101.from_int(2), F101.from_int(7), F101.from_int(1)}));
    auto none = interpolate_hypersurface(F101, pts, 1);
    REQUIRE(none.nullity == 0);
    REQUIRE(!none.equation.has_value());

    // one point leaves a 2-parameter family of lines
    std::vector<ProjPoint<PrimeField>> single{pts[0]};
    auto many = interpolate_hypersurface(F101, single, 1);
    REQUIRE(many.nullity == 2);
    REQUIRE(!many.equation.has_value());
}

TEST_CASE("interpolation recovers seeded hypersurfaces over a large prime field") {
    PrimeField F(1009);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Rng rng = Rng::stream(424242, seed);
        const int kind = static_cast<int>(seed % 3);
        std::vector<ProjPoint<PrimeField>> pts;
        Polynomial<PrimeField> expect(F, {4});
        std::uint32_t deg = 0;
        if (kind == 0) {
            expect = parse_polynomial(F, {4}, "x0*x3 - x1*x2");
            deg = 2;
            while (pts.size() < 40) {
                auto s = F.sample(rng), t = F.sample(rng), u = F.sample(rng), v = F.sample(rng);
                std::vector<FpElem> z{s * u, s * v, t * u, t * v};
                if (is_zero_vector<PrimeField>(z)) continue;
                pts.push_back(ProjPoint<PrimeField>::make(F, z));
            }
        } else if (kind == 1) {
            // image of ([s:t],[u:v]) -> [s*u : s*v : t*u^2/.. ] normalized
            // cubic: x1^2*x2 - x0^2*x3 vanishes on [s*u : s*v : t*u^2 : t*v^2]
            expect = parse_polynomial(F, {4}, "x0^2*x3 - x1^2*x2");
            deg = 3;
            while (pts.size() < 60) {
                auto s = F.sample(rng), t = F.sample(rng), u = F.sample(rng), v = F.sample(rng);
                std::vector<FpElem> z{s * u, s * v, t * u * u, t * v * v};
                if (is_zero_vector<PrimeField>(z)) continue;
                pts.push_back(ProjPoint<PrimeField>::make(F, z));
            }
        } else {
            expect = parse_polynomial(F, {4}, "x0 + 2*x1 + 3*x2 - x3");
            deg = 1;
            while (pts.size() < 12) {
                auto a = F.sample(rng), b = F.sample(rng), c = F.sample(rng);
                std::vector<FpElem> z{a, b, c,
                                      a + F.from_int(2) * b + F.from_int(3) * c};
                if (is_zero_vector<PrimeField>(z)) continue;
                pts.push_back(ProjPoint<PrimeField>::make(F, z));
            }
        }
        auto res = interpolate_hypersurface(F, pts, deg);
        INFO("seed " << seed << " kind " << kind << " nullity " << res.nullity);
        REQUIRE(res.nullity == 1);
        // compare after normalizing the reference the same way
        auto lead = expect.terms().begin()->second;
        REQUIRE(*res.equation == expect.scale(lead.inv()));
        for (const auto& p : pts) REQUIRE(res.equation->evaluate(p.coords).is_zero());
    }
}

TEST_CASE("textual round trip across fields") {
    Rng rng(31337);

    RationalField Q;
    for (int t = 0; t < 50; ++t) {
        auto p = random_poly(Q, {2, 3}, 3, 6, rng);
        auto s = polynomial_to_string(p);
        CAPTURE(s);
        REQUIRE(parse_polynomial(Q, {2, 3}, s) == p);
    }

    PrimeField F7(7);
    for (int t = 0; t < 50; ++t) {
        auto p = random_poly(F7, {4}, 4, 5, rng);
        auto s = polynomial_to_string(p);
        CAPTURE(s);
        REQUIRE(parse_polynomial(F7, {4}, s) == p);
    }

    ExtField F9b(3, {1, 0, 1});
    for (int t = 0; t < 50; ++t) {
        auto p = random_poly(F9b, {2, 2}, 2, 4, rng);
        auto s = polynomial_to_string(p);
        CAPTURE(s);
        REQUIRE(parse_polynomial(F9b, {2, 2}, s) == p);
    }

    // explicit fixtures
    auto f = parse_polynomial(Q, {2, 2}, "3/4*x0^2*y1 - x1^2*y0 + 2");
    REQUIRE(polynomial_to_string(f) == "3/4*x0^2*y1 + -1*x1^2*y0 + 2");
    REQUIRE(parse_polynomial(Q, {2, 2}, polynomial_to_string(f)) == f);
    REQUIRE(polynomial_to_string(Polynomial<RationalField>(Q, {2})) == "0");
    // custom prefixes for ambient coordinates
    auto g = parse_polynomial(F7, {4}, "z0*z3 - z1*z2", {"z"});
    REQUIRE(polynomial_to_string(g, {"z"}) == "z0*z3 + 6*z1*z2");
}

TEST_CASE("term order puts the highest block-degree term first") {
    RationalField Q;
    auto f = parse_polynomial(Q, {2, 2}, "x1*y1 + x0^2*y0 + x0*y0");
    // leading term: highest x-degree first, then lex with x0 > x1
    REQUIRE(f.terms().begin()->first == Mono{2, 0, 1, 0});
    auto g = parse_polynomial(Q, {4}, "x3^2 + x1*x2 + x0*x3");
    REQUIRE(g.terms().begin()->first == Mono{1, 0, 0, 1});
}
