#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "segre/fields.hpp"
#include "segre/report.hpp"

using namespace segre;

namespace {

// Exit contract: 0 = ran and every check passed, 1 = a mathematical check
// failed, 2 = the request itself was unusable.
int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::ConfigError:
        case ErrorKind::NotPrime:
        case ErrorKind::EmptyInput:
        case ErrorKind::DimensionMismatch:
        case ErrorKind::IndexOutOfRange:
        case ErrorKind::ZeroHyperplane:
        case ErrorKind::PermDimMismatch:
        case ErrorKind::CocycleViolation:
        case ErrorKind::FieldTooSmall:
        case ErrorKind::InsufficientSamples:
        case ErrorKind::EnumerationTooLarge:
        case ErrorKind::HeightExceeded:
        case ErrorKind::DegenerateSection:
            return 2;
        default:
            return 1;
    }
}

std::vector<std::uint32_t> parse_dims(const std::string& s) {
    std::vector<std::uint32_t> out;
    for (const auto& part : detail::split(s, ','))
        out.push_back(static_cast<std::uint32_t>(detail::parse_u64(part, "dimension")));
    return out;
}

std::vector<std::size_t> parse_sigma(const std::string& s) {
    std::vector<std::size_t> out;
    for (const auto& part : detail::split(s, ','))
        out.push_back(detail::parse_u64(part, "slot index"));
    return out;
}

// Center spec: "coordinate" | "random" | explicit rows "c,c,...;c,c,..."
// with one semicolon-separated row per factor.
template <class F>
std::vector<std::vector<typename F::Elem>> build_center_forms(
    const F& f, const std::vector<std::uint32_t>& dims, const std::string& spec,
    std::uint64_t seed) {
    std::vector<std::vector<typename F::Elem>> forms;
    if (spec == "coordinate") {
        for (auto a : dims) {
            std::vector<typename F::Elem> h(a + 1, f.zero());
            h[0] = f.one();
            forms.push_back(std::move(h));
        }
        return forms;
    }
    if (spec == "random") {
        Rng rng = Rng::stream(seed, 0x68797073ull);
        for (auto a : dims) {
            for (;;) {
                std::vector<typename F::Elem> h;
                for (std::uint32_t j = 0; j <= a; ++j) h.push_back(f.sample(rng));
                if (!is_zero_vector<F>(h)) {
                    forms.push_back(std::move(h));
                    break;
                }
            }
        }
        return forms;
    }
    for (const auto& row : detail::split(spec, ';')) {
        std::vector<typename F::Elem> h;
        for (const auto& tok : detail::split(row, ',')) h.push_back(detail::parse_elem_text(f, tok));
        forms.push_back(std::move(h));
    }
    if (forms.size() != dims.size())
        fail(ErrorKind::ConfigError, "need one hyperplane row per factor");
    return forms;
}

// Section hyperplane spec: "random" | explicit "c,c,...,c" of length N.
template <class F>
std::vector<typename F::Elem> build_section_hyperplane(const F& f, std::size_t N,
                                                       const std::string& spec,
                                                       std::uint64_t seed) {
    if (spec == "random") {
        Rng rng = Rng::stream(seed, 0x48);
        for (;;) {
            std::vector<typename F::Elem> H;
            for (std::size_t i = 0; i < N; ++i) H.push_back(f.sample(rng));
            if (!is_zero_vector<F>(H)) return H;
        }
    }
    std::vector<typename F::Elem> H;
    for (const auto& tok : detail::split(spec, ',')) H.push_back(detail::parse_elem_text(f, tok));
    return H;
}

void emit(const nlohmann::ordered_json& j, const std::string& out_path) {
    std::cout << j.dump(2) << "\n";
    if (!out_path.empty()) append_report(out_path, j);
}

struct CommonOpts {
    std::string field = "Fp:101";
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::string out;
};

int run_project(const CommonOpts& c, const std::string& dims_str, std::size_t trials,
                const std::string& hyperplanes) {
    const auto dims_v = parse_dims(dims_str);
    return std::visit(
        [&](const auto& f) {
            auto dims = ProductDims::of(dims_v);
            auto cd = center_L(f, dims, build_center_forms(f, dims_v, hyperplanes, c.seed));
            auto rep = verify_birational(f, cd, trials, c.seed, c.workers);
            emit(project_report_json(f, cd, rep), c.out);
            return rep.passed ? 0 : 1;
        },
        parse_field(c.field, c.seed));
}

int run_fiber(const CommonOpts& c, std::size_t n) {
    return std::visit(
        [&](const auto& f) -> int {
            using Fld = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<Fld, PrimeField>) {
                auto rep = fiber_bruteforce_seeded(f, n, c.seed);
                emit(fiber_report_json(rep), c.out);
                return rep.passed ? 0 : 1;
            } else {
                fail(ErrorKind::ConfigError, "fiber-bruteforce runs over prime fields only");
            }
        },
        parse_field(c.field, c.seed));
}

int run_descend(const CommonOpts& c, const std::string& dims_str, const std::string& twist,
                const std::string& sigma_str) {
    const auto dims_v = parse_dims(dims_str);
    return std::visit(
        [&](const auto& f) -> int {
            using Fld = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<Fld, RationalField>) {
                fail(ErrorKind::ConfigError, "descend needs a finite field to act by Frobenius");
            } else {
                auto dims = ProductDims::of(dims_v);
                Twist<Fld> tw = [&] {
                    if (twist == "identity") return identity_twist(f, dims);
                    if (twist == "swap") {
                        std::vector<Matrix<Fld>> A;
                        for (auto a : dims_v) A.push_back(Matrix<Fld>::identity(f, a + 1));
                        return make_twist(f, dims, {1, 0}, std::move(A));
                    }
                    if (twist == "random") {
                        std::vector<std::size_t> sigma = sigma_str.empty()
                                                             ? std::vector<std::size_t>{}
                                                             : parse_sigma(sigma_str);
                        if (sigma.empty())
                            for (std::size_t i = 0; i < dims_v.size(); ++i) sigma.push_back(i);
                        return coboundary_twist(f, dims, std::move(sigma), c.seed);
                    }
                    fail(ErrorKind::ConfigError, "twist must be identity, swap, or random");
                }();
                DescentOptions opt;
                opt.workers = c.workers;
                auto rep = verify_descent(f, tw, c.seed, opt);
                emit(descent_report_json(rep), c.out);
                return rep.passed ? 0 : 1;
            }
        },
        parse_field(c.field, c.seed));
}

int run_section(const CommonOpts& c, std::uint32_t a, std::uint32_t b,
                const std::string& hyperplanes, const std::string& hyperplane,
                std::size_t samples, std::uint32_t max_degree) {
    return std::visit(
        [&](const auto& f) {
            const std::vector<std::uint32_t> dims_v{a, b};
            auto dims = ProductDims::of(dims_v);
            auto forms = build_center_forms(f, dims_v, hyperplanes, c.seed);
            auto H = build_section_hyperplane(f, dims.N(), hyperplane, c.seed);
            std::size_t n = samples;
            if (n == 0)
                n = 2 * monomials_of_degree(static_cast<std::size_t>(a) + b + 1, max_degree)
                        .size();
            auto run = segre::run_section(f, a, b, std::move(forms), std::move(H), n, max_degree,
                                          c.seed, c.workers);
            emit(section_report_json(f, run, c.seed), c.out);
            return run.oracles_agree && run.model.equation ? 0 : 1;
        },
        parse_field(c.field, c.seed));
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* env = std::getenv("SEGRE_MAX_BITS")) {
        try {
            config::set_max_rational_bits(detail::parse_u64(env, "SEGRE_MAX_BITS"));
        } catch (const Error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }

    CLI::App app{"Exact birational projections of products of projective spaces"};
    app.require_subcommand(1);

    CommonOpts c;
    std::string dims_str = "1,1";
    std::size_t trials = 100;
    std::string hyperplanes = "coordinate";
    std::size_t fiber_n = 2;
    std::string twist = "identity";
    std::string sigma_str;
    std::uint32_t sec_a = 1, sec_b = 2;
    std::string hyperplane = "random";
    std::size_t samples = 0;
    std::uint32_t max_degree = 4;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--field", c.field, "Field: Q | Fp:<p> | Fq:<p>:<k>");
        sub->add_option("--seed", c.seed, "RNG seed; fixes the whole run");
        sub->add_option("--workers", c.workers, "Worker threads (never changes results)");
        sub->add_option("--out", c.out, "Append the report to this JSON-lines file");
    };

    auto* proj = app.add_subcommand("project", "Round-trip the projection from the center");
    proj->add_option("--dims", dims_str, "Factor dimensions, e.g. 2,3");
    proj->add_option("--trials", trials, "Random round trips per direction");
    proj->add_option("--hyperplanes", hyperplanes,
                     "coordinate | random | rows 'c,..;c,..' (one per factor)");
    add_common(proj);

    auto* fib = app.add_subcommand("fiber-bruteforce",
                                   "Enumerate a product-hyperplane section of (P^1)^n");
    fib->add_option("--n", fiber_n, "Number of P^1 factors");
    add_common(fib);

    auto* des = app.add_subcommand("descend", "Verify Galois descent for a twisted form");
    des->add_option("--dims", dims_str, "Factor dimensions, e.g. 1,1");
    des->add_option("--twist", twist, "identity | swap | random");
    des->add_option("--sigma", sigma_str, "Slot permutation for --twist random, e.g. 1,0");
    add_common(des);

    auto* sec = app.add_subcommand("section", "Project a hyperplane section of a two-factor product");
    sec->add_option("--a", sec_a, "First factor dimension");
    sec->add_option("--b", sec_b, "Second factor dimension");
    sec->add_option("--hyperplanes", hyperplanes,
                    "Center spec: coordinate | random | explicit rows");
    sec->add_option("--hyperplane", hyperplane, "Section hyperplane: random | c,c,...,c");
    sec->add_option("--samples", samples, "Sample count; 0 picks enough for --max-degree");
    sec->add_option("--max-degree", max_degree, "Largest degree the interpolation scans");
    add_common(sec);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (proj->parsed()) return run_project(c, dims_str, trials, hyperplanes);
        if (fib->parsed()) return run_fiber(c, fiber_n);
        if (des->parsed()) return run_descend(c, dims_str, twist, sigma_str);
        return run_section(c, sec_a, sec_b, hyperplanes, hyperplane, samples, max_degree);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
