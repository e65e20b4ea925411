#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "segre/hypersection.hpp"
#include "test_support.hpp"

using namespace segre;

namespace {

std::vector<std::vector<FpElem>> coordinate_forms(const PrimeField& f,
                                                  const std::vector<std::uint32_t>& dims) {
    std::vector<std::vector<FpElem>> forms;
    for (auto a : dims) {
        std::vector<FpElem> h(a + 1, f.zero());
        h[0] = f.one();
        forms.push_back(std::move(h));
    }
    return forms;
}

// z_{(0,0)} - z_{(1,1)} on the (a, b) Segre ambient
std::vector<FpElem> corner_difference(const PrimeField& f, std::uint32_t a, std::uint32_t b) {
    auto d = ProductDims::of({a, b});
    std::vector<FpElem> H(d.N(), f.zero());
    H[flatten(d, {0, 0})] = f.one();
    H[flatten(d, {1, 1})] = -f.one();
    return H;
}

std::uint64_t pw_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

// distinct points satisfying a coordinate-solvable equation, via a callback
// that completes a random draw to a point on the locus (or rejects it)
template <class Gen>
std::vector<ProjPoint<PrimeField>> sample_distinct(const PrimeField& f, std::size_t want,
                                                   std::uint64_t seed, Gen&& gen) {
    Rng rng(seed);
    std::set<ProjPoint<PrimeField>> seen;
    std::vector<ProjPoint<PrimeField>> out;
    for (int att = 0; att < 100000 && out.size() < want; ++att) {
        auto p = gen(rng);
        if (!p) continue;
        if (seen.insert(*p).second) out.push_back(*p);
    }
    REQUIRE(out.size() == want);
    return out;
}

}  // namespace

TEST_CASE("projection matrix reproduces pointwise projection") {
    PrimeField f(101);
    Rng rng(11);
    auto L = Subspace<PrimeField>::from_generators(
        f, 6, {random_point(f, 6, rng).coords, random_point(f, 6, rng).coords});
    auto V = projection_matrix(L);
    REQUIRE(V.rows() == 4);
    for (int i = 0; i < 25; ++i) {
        auto x = random_point(f, 6, rng);
        if (L.contains(x.coords)) continue;
        auto direct = project_from_center(L, x);
        REQUIRE(normalize_coords(f, V.apply(x.coords)) == direct.coords);
    }
}

TEST_CASE("section setup dimensions and genericity flag") {
    PrimeField f(101);
    auto H = corner_difference(f, 1, 2);
    auto s = make_section_setup(f, 1, 2, coordinate_forms(f, {1, 2}), H);
    REQUIRE(s.center.L.dim() == 1);
    REQUIRE(s.LH.dim() == 0);
    REQUIRE_FALSE(s.non_generic);
    REQUIRE(s.V.rows() == 5);  // P^5 away from a point: P^4
    // alpha really is the image of H: alpha(V z) = H z on a spot check
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        auto z = random_point(f, 6, rng);
        auto w = s.V.apply(z.coords);
        auto lhs = dot(f, s.alpha, w);
        auto rhs = dot(f, s.H, z.coords);
        REQUIRE(lhs == rhs);
    }

    // a hyperplane containing L is flagged, not rejected
    std::vector<FpElem> H0(6, f.zero());
    H0[flatten(s.dims, {0, 0})] = f.one();
    auto s0 = make_section_setup(f, 1, 2, coordinate_forms(f, {1, 2}), H0);
    REQUIRE(s0.non_generic);
    REQUIRE(s0.LH.dim() == s0.center.L.dim());

    REQUIRE_THROWS_MATCHES(
        make_section_setup(f, 1, 2, coordinate_forms(f, {1, 2}), std::vector<FpElem>(6, f.zero())),
        Error, ErrorKindIs(ErrorKind::ZeroHyperplane));
}

TEST_CASE("fifty random hyperplanes cut the center properly") {
    PrimeField f(101);
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        Rng rng = Rng::stream(seed, 7);
        auto H = random_form(f, 6, rng);
        auto s = make_section_setup(f, 1, 2, coordinate_forms(f, {1, 2}), H);
        if (!s.non_generic) REQUIRE(s.LH.dim() == s.center.L.dim() - 1);
        else REQUIRE(s.LH.dim() == s.center.L.dim());
    }
}

TEST_CASE("section sampling is distinct, on the hyperplane, and deterministic") {
    PrimeField f(101);
    auto s = make_section_setup(f, 1, 2, coordinate_forms(f, {1, 2}), corner_difference(f, 1, 2));
    auto pts = sample_section(f, s, 50, 9);
    REQUIRE(pts.size() == 50);
    std::set<ProjPoint<PrimeField>> uniq(pts.begin(), pts.end());
    REQUIRE(uniq.size() == 50);
    // image points satisfy alpha = 0 by construction of the induced chart;
    // reconstruct the dropped coordinate and check
    for (const auto& p : pts) REQUIRE(p.ambient() == 4);

    auto pts4 = sample_section(f, s, 50, 9, 4);
    REQUIRE(pts4 == pts);
}

TEST_CASE("corner section of the P1 x P2 threefold is a quadric") {
    PrimeField f(101);
    auto run = run_section(f, 1, 2, coordinate_forms(f, {1, 2}), corner_difference(f, 1, 2), 60,
                           3, 2024);
    REQUIRE(run.model.degree == 2);
    REQUIRE(run.model.nullities[0] == 0);  // not contained in any hyperplane
    REQUIRE(run.degree_oracle == 2);
    REQUIRE(run.oracles_agree);
    REQUIRE(run.cls.kind == SectionClass::Quadric);
    REQUIRE_FALSE(run.below_range);
    for (const auto& p : run.model.samples)
        REQUIRE(run.model.equation->evaluate(p.coords).is_zero());
}

TEST_CASE("random sections of P2 x P2 have matching degree oracles") {
    PrimeField f(101);
    for (std::uint64_t seed : {1, 2, 3}) {
        Rng hr = Rng::stream(seed, 0x48);
        auto H = random_form(f, 9, hr);
        auto run = run_section(f, 2, 2, coordinate_forms(f, {2, 2}), H, 160, 4, seed);
        REQUIRE(run.model.equation.has_value());
        REQUIRE(run.oracles_agree);
        REQUIRE(static_cast<long long>(run.degree_oracle) == run.model.degree);
        for (const auto& p : run.model.samples)
            REQUIRE(run.model.equation->evaluate(p.coords).is_zero());
    }
}

TEST_CASE("square section below the interesting range is flagged") {
    PrimeField f(101);
    Rng hr = Rng::stream(77, 0x48);
    auto H = random_form(f, 4, hr);
    auto run = run_section(f, 1, 1, coordinate_forms(f, {1, 1}), H, 25, 2, 77);
    REQUIRE(run.below_range);
    REQUIRE(run.model.degree == 2);
    REQUIRE(run.cls.kind == SectionClass::Quadric);
}

TEST_CASE("interpolation scan finds planes at degree one") {
    PrimeField f(101);
    // z3 = z0 + 2 z1 + 3 z2
    auto pts = sample_distinct(f, 30, 3, [&](Rng& rng) -> std::optional<ProjPoint<PrimeField>> {
        auto z0 = f.sample(rng), z1 = f.sample(rng), z2 = f.sample(rng);
        auto z3 = z0 + f.from_int(2) * z1 + f.from_int(3) * z2;
        std::vector<FpElem> v{z0, z1, z2, z3};
        if (is_zero_vector<PrimeField>(v)) return std::nullopt;
        return ProjPoint<PrimeField>::make(f, std::move(v));
    });
    auto m = interpolate_QH(f, pts, 2);
    REQUIRE(m.degree == 1);
    REQUIRE(m.nullities == std::vector<std::size_t>{1});
}

TEST_CASE("insufficient samples and missing equations are reported") {
    PrimeField f(101);
    std::vector<ProjPoint<PrimeField>> few;
    Rng rng(4);
    for (int i = 0; i < 5; ++i) few.push_back(random_point(f, 4, rng));
    REQUIRE_THROWS_MATCHES(interpolate_QH(f, few, 2), Error,
                           ErrorKindIs(ErrorKind::InsufficientSamples));

    // generic points lie on no low-degree hypersurface at all
    std::vector<ProjPoint<PrimeField>> generic;
    for (int i = 0; i < 80; ++i) generic.push_back(random_point(f, 4, rng));
    REQUIRE_THROWS_MATCHES(interpolate_QH(f, generic, 2), Error,
                           ErrorKindIs(ErrorKind::NoEquationFound));
}

TEST_CASE("closure root counts carry multiplicity") {
    PrimeField f101(101);
    // (x - 3)^2 (x - 5): coefficients of -45 + 69 x - 11 x^2 + x^3
    std::vector<FpElem> g{f101.from_int(-45), f101.from_int(69), f101.from_int(-11), f101.one()};
    REQUIRE(p1_closure_root_count(f101, g) == 3);

    PrimeField f7(7);
    // x^2 + 1 is irreducible over F_7; both roots live in F_49
    REQUIRE(p1_closure_root_count(f7, {f7.one(), f7.zero(), f7.one()}) == 2);
    // x^7 - 1 = (x - 1)^7: derivative vanishes, handled by decimation
    std::vector<FpElem> frob(8, f7.zero());
    frob[0] = -f7.one();
    frob[7] = f7.one();
    REQUIRE(p1_closure_root_count(f7, frob) == 7);

    RationalField q;
    // (x^2 - 2)(x - 1)^2 = x^4 - 2x^3 - x^2 + 4x - 2
    std::vector<Rat> r{q.from_int(-2), q.from_int(4), q.from_int(-1), q.from_int(-2), q.one()};
    REQUIRE(p1_closure_root_count(q, r) == 4);

    // s t as a degree-2 binary form: one root at [1:0], one at [0:1]
    REQUIRE(binary_form_root_count(f101, {f101.zero(), f101.one(), f101.zero()}) == 2);
}

TEST_CASE("line intersection degree matches known hypersurfaces") {
    PrimeField f(101);
    auto parse = [&](std::uint32_t vars, const std::string& text) {
        return parse_polynomial(f, {vars}, text, {"z"});
    };
    REQUIRE(line_intersection_degree(f, parse(4, "z0*z3 + -1*z1*z2"), 1) == 2);
    REQUIRE(line_intersection_degree(f, parse(4, "z0 + 2*z1 + 3*z2 + -1*z3"), 1) == 1);
    REQUIRE(line_intersection_degree(f, parse(4, "z1^2*z2 + -1*z0^2*z3"), 1) == 3);
    RationalField q;
    auto cubic = parse_polynomial(q, {4}, "z1^2*z2 + -1*z0^2*z3", {"z"});
    REQUIRE(line_intersection_degree(q, cubic, 1) == 3);
}

TEST_CASE("line evidence controls: ruled cubic, cone, smooth cubic") {
    PrimeField f(101);

    // ruled cubic surface z1^2 z2 = z0^2 z3: a line through every point
    auto ruled = sample_distinct(f, 60, 21, [&](Rng& rng) -> std::optional<ProjPoint<PrimeField>> {
        auto z0 = f.sample(rng), z1 = f.sample(rng), z2 = f.sample(rng);
        if (z0.is_zero()) return std::nullopt;
        auto z3 = z1 * z1 * z2 * (z0 * z0).inv();
        return ProjPoint<PrimeField>::make(f, {z0, z1, z2, z3});
    });
    auto mr = interpolate_QH(f, ruled, 3);
    REQUIRE(mr.degree == 3);
    auto cr = classify_QH(f, mr, 5);
    REQUIRE(cr.kind == SectionClass::ScrollEvidence);
    REQUIRE(cr.points_checked == 20);
    REQUIRE(cr.lines_found_fraction == 1.0);

    // cone in P^4 over a cubic surface: every point sees the vertex line
    auto cone = sample_distinct(f, 160, 22, [&](Rng& rng) -> std::optional<ProjPoint<PrimeField>> {
        auto z1 = f.sample(rng), z2 = f.sample(rng), z3 = f.sample(rng), z4 = f.sample(rng);
        if (z1.is_zero() || z2.is_zero()) return std::nullopt;
        auto z0 = (z1 * z1 * z1 - z2 * z2 * z2) * (z1 * z2).inv() + z3;
        return ProjPoint<PrimeField>::make(f, {z0, z1, z2, z3, z4});
    });
    auto mc = interpolate_QH(f, cone, 3);
    REQUIRE(mc.degree == 3);
    auto cc = classify_QH(f, mc, 5);
    REQUIRE(cc.kind == SectionClass::ScrollEvidence);
    REQUIRE(cc.lines_found_fraction == 1.0);

    // smooth cubic surface: a generic point lies on no line
    const std::uint64_t inv3 = 67;  // 3 * 67 = 201 = 1 mod 100
    auto fermat = sample_distinct(f, 60, 23, [&](Rng& rng) -> std::optional<ProjPoint<PrimeField>> {
        auto z0 = f.sample(rng), z1 = f.sample(rng), z2 = f.sample(rng);
        auto c = -(z0 * z0 * z0 + z1 * z1 * z1 + z2 * z2 * z2);
        auto z3 = f.from_int(static_cast<long long>(pw_mod(c.v, inv3, 101)));
        std::vector<FpElem> v{z0, z1, z2, z3};
        if (is_zero_vector<PrimeField>(v)) return std::nullopt;
        return ProjPoint<PrimeField>::make(f, std::move(v));
    });
    auto mf = interpolate_QH(f, fermat, 3);
    REQUIRE(mf.degree == 3);
    auto cf = classify_QH(f, mf, 5);
    REQUIRE(cf.kind == SectionClass::ScrollEvidence);
    REQUIRE(cf.lines_found_fraction <= 0.2);

    // classification is deterministic across worker counts
    auto cc8 = classify_QH(f, mc, 5, 8);
    REQUIRE(cc8.lines_found == cc.lines_found);
    REQUIRE(cc8.points_checked == cc.points_checked);
}
