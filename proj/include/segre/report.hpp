#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "segre/common.hpp"
#include "segre/descent.hpp"
#include "segre/hypersection.hpp"
#include "segre/polynomial.hpp"
#include "segre/segre.hpp"

// JSON assemblers shared by the CLI and the acceptance harness.  Reports are
// fully determined by config + seed: no timestamps, no worker counts, and
// ordered_json keeps key order stable, so equal runs dump byte-identically.

namespace segre {

inline constexpr int kSchemaVersion = 1;

template <class F>
nlohmann::ordered_json element_row_json(const F& f, const std::vector<typename F::Elem>& row) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& e : row) arr.push_back(detail::elem_text(f, e));
    return arr;
}

template <class F>
nlohmann::ordered_json element_rows_json(const F& f,
                                         const std::vector<std::vector<typename F::Elem>>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) arr.push_back(element_row_json(f, row));
    return arr;
}

template <class F>
nlohmann::ordered_json project_report_json(const F& f, const CenterData<F>& cd,
                                           const BirationalityReport& rep) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["subcommand"] = "project";
    j["dims"] = rep.dims;
    j["field"] = rep.field;
    j["seed"] = rep.seed;
    j["hyperplanes"] = element_rows_json(f, cd.forms);
    j["center_dim"] = cd.L.dim();
    j["trials"] = rep.trials;
    j["ok_forward"] = rep.ok_forward;
    j["ok_backward"] = rep.ok_backward;
    j["failed_forward"] = rep.failed_forward;
    j["failed_backward"] = rep.failed_backward;
    j["passed"] = rep.passed;
    return j;
}

inline nlohmann::ordered_json fiber_report_json(const FiberReport& rep) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["subcommand"] = "fiber-bruteforce";
    j["n"] = rep.n;
    j["field"] = "Fp:" + std::to_string(rep.p);
    j["seed"] = rep.seed;
    j["base_point"] = rep.base_point;
    j["apex_point"] = rep.apex_point;
    j["enumerated"] = rep.enumerated;
    j["intersection_size"] = rep.intersection_size;
    j["expected_size"] = rep.expected_size;
    j["expected_size_formula"] = rep.expected_size_formula;
    j["span_cone_dim"] = rep.span_cone_dim;
    j["forms_vanish_on_span"] = rep.forms_vanish_on_span;
    j["forms_vanish_at_apex"] = rep.forms_vanish_at_apex;
    j["matched"] = rep.matched;
    j["passed"] = rep.passed;
    return j;
}

inline nlohmann::ordered_json descent_report_json(const DescentReport& rep) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["subcommand"] = "descend";
    j["dims"] = rep.dims;
    j["field"] = rep.field;
    j["p"] = rep.p;
    j["k"] = rep.k;
    j["sigma"] = rep.sigma;
    j["seed"] = rep.seed;
    j["fixed_point_count"] = rep.fixed_point_count;
    j["fixed_point_formula"] = rep.fixed_point_formula;
    j["enumeration_skipped"] = rep.enumeration_skipped;
    j["counts_match"] = rep.counts_match;
    j["center_forms"] = rep.center_forms;
    j["center_dim"] = rep.center_dim;
    j["center_stable"] = rep.center_stable;
    j["family_invariant"] = rep.family_invariant;
    j["equivariance_trials"] = rep.equivariance_trials;
    j["equivariance_ok"] = rep.equivariance_ok;
    j["target_word_is_identity"] = rep.target_word_is_identity;
    j["lang_status"] = rep.lang_status;
    j["center_descends"] = rep.center_descends;
    j["round_trips"] = rep.round_trips;
    j["round_trips_ok"] = rep.round_trips_ok;
    j["passed"] = rep.passed;
    return j;
}

template <class F>
nlohmann::ordered_json section_report_json(const F& f, const SectionRun<F>& run,
                                           std::uint64_t seed) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["subcommand"] = "section";
    j["a"] = run.setup.dims.a[0];
    j["b"] = run.setup.dims.a[1];
    j["field"] = f.name();
    j["seed"] = seed;
    j["hyperplane"] = element_row_json(f, run.setup.H);
    j["dim_L"] = run.setup.center.L.dim();
    j["dim_LH"] = run.setup.LH.dim();
    j["non_generic"] = run.setup.non_generic;
    j["below_range"] = run.below_range;
    j["n_samples"] = run.model.samples.size();
    j["degree_candidate"] = run.model.degree;
    j["interpolation_nullities"] = run.model.nullities;
    j["equation"] =
        run.model.equation ? polynomial_to_string(*run.model.equation, {"y"}) : std::string();
    j["degree_oracle"] = run.degree_oracle;
    j["oracles_agree"] = run.oracles_agree;
    j["classification"] = section_class_name(run.cls.kind);
    j["points_checked"] = run.cls.points_checked;
    j["lines_found"] = run.cls.lines_found;
    j["lines_found_fraction"] = run.cls.lines_found_fraction;
    return j;
}

// Reports accumulate as JSON lines; a rerun appends rather than rewrites.
inline void append_report(const std::string& path, const nlohmann::ordered_json& j) {
    std::ofstream out(path, std::ios::app);
    if (!out) fail(ErrorKind::ConfigError, "cannot open report file: " + path);
    out << j.dump() << "\n";
}

}  // namespace segre
