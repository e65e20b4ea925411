#pragma once

#include <cstddef>
#include <vector>

#include "segre/linalg.hpp"

namespace segre {

// Normalizes homogeneous coordinates so the first nonzero entry is 1.
template <class F>
std::vector<typename F::Elem> normalize_coords(const F& f, std::vector<typename F::Elem> v) {
    std::size_t i = 0;
    while (i < v.size() && v[i].is_zero()) ++i;
    if (i == v.size()) fail(ErrorKind::ZeroVector, "projective point from zero vector");
    const auto inv = v[i].inv();
    for (auto& x : v) x = x * inv;
    return v;
}

// Point of P^(n-1) in canonical normalized coordinates.
template <class F>
struct ProjPoint {
    std::vector<typename F::Elem> coords;

    static ProjPoint make(const F& f, std::vector<typename F::Elem> v) {
        return ProjPoint{normalize_coords(f, std::move(v))};
    }

    std::size_t ambient() const { return coords.size(); }
    friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.coords == b.coords; }
    friend bool operator!=(const ProjPoint& a, const ProjPoint& b) { return !(a == b); }
    friend bool operator<(const ProjPoint& a, const ProjPoint& b) {
        // shortlex on normalized coordinates, for set storage
        if (a.coords.size() != b.coords.size()) return a.coords.size() < b.coords.size();
        return a.coords < b.coords;
    }
};

// Linear subspace of P^(ambient-1) held as the unique reduced row echelon
// basis of its cone.  Zero rows never appear; the empty subspace has 0 rows.
template <class F>
class Subspace {
  public:
    Subspace(const F& f, std::size_t ambient)
        : field_(f), ambient_(ambient), basis_(f, 0, ambient) {}

    static Subspace from_generators(const F& f, std::size_t ambient,
                                    const std::vector<std::vector<typename F::Elem>>& gens) {
        if (gens.empty()) fail(ErrorKind::EmptyInput, "span of empty generator list");
        for (const auto& g : gens)
            if (g.size() != ambient) fail(ErrorKind::AmbientMismatch, "generator ambient mismatch");
        Matrix<F> m = Matrix<F>::from_rows(f, gens);
        return from_matrix_rows(std::move(m));
    }

    static Subspace from_matrix_rows(Matrix<F> m) {
        auto pivots = m.rref();
        Subspace s(m.field(), m.cols());
        Matrix<F> b(m.field(), pivots.size(), m.cols());
        for (std::size_t i = 0; i < pivots.size(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) b.at(i, j) = m.at(i, j);
        s.basis_ = std::move(b);
        s.pivots_ = std::move(pivots);
        return s;
    }

    const F& field() const { return field_; }
    std::size_t ambient() const { return ambient_; }
    const Matrix<F>& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    std::size_t cone_dim() const { return basis_.rows(); }
    // Projective dimension; -1 encodes the empty subspace.
    long long dim() const { return static_cast<long long>(basis_.rows()) - 1; }
    bool empty() const { return basis_.rows() == 0; }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

    bool contains(const std::vector<typename F::Elem>& v) const {
        if (v.size() != ambient_) fail(ErrorKind::AmbientMismatch, "containment ambient mismatch");
        auto r = reduce(v);
        return is_zero_vector<F>(r);
    }
    bool contains(const ProjPoint<F>& p) const { return contains(p.coords); }

    // v minus its projection onto the row space; zeroed at all pivot columns.
    std::vector<typename F::Elem> reduce(std::vector<typename F::Elem> v) const {
        for (std::size_t r = 0; r < basis_.rows(); ++r) {
            const auto c = v[pivots_[r]];
            if (c.is_zero()) continue;
            for (std::size_t j = 0; j < ambient_; ++j) v[j] = v[j] - c * basis_.at(r, j);
        }
        return v;
    }

  private:
    F field_;
    std::size_t ambient_;
    Matrix<F> basis_;
    std::vector<std::size_t> pivots_;
};

template <class F>
Subspace<F> span_points(const F& f, const std::vector<ProjPoint<F>>& pts) {
    if (pts.empty()) fail(ErrorKind::EmptyInput, "span of empty point list");
    std::vector<std::vector<typename F::Elem>> rows;
    rows.reserve(pts.size());
    for (const auto& p : pts) rows.push_back(p.coords);
    return Subspace<F>::from_generators(f, rows[0].size(), rows);
}

// Row spaces intersect as the annihilator of the sum of their annihilators.
template <class F>
Subspace<F> intersect(const Subspace<F>& u, const Subspace<F>& v) {
    if (u.ambient() != v.ambient()) fail(ErrorKind::AmbientMismatch, "intersect ambient mismatch");
    const F& f = u.field();
    Matrix<F> ku = u.basis().kernel();
    Matrix<F> kv = v.basis().kernel();
    Matrix<F> stacked(f, ku.rows() + kv.rows(), u.ambient());
    for (std::size_t i = 0; i < ku.rows(); ++i)
        for (std::size_t j = 0; j < u.ambient(); ++j) stacked.at(i, j) = ku.at(i, j);
    for (std::size_t i = 0; i < kv.rows(); ++i)
        for (std::size_t j = 0; j < u.ambient(); ++j) stacked.at(ku.rows() + i, j) = kv.at(i, j);
    return Subspace<F>::from_matrix_rows(stacked.kernel());
}

// Projection away from L: reduce modulo L's row space, then keep the
// coordinates at L's non-pivot columns (the canonical complement).
template <class F>
ProjPoint<F> project_from_center(const Subspace<F>& L, const std::vector<typename F::Elem>& x) {
    if (x.size() != L.ambient()) fail(ErrorKind::AmbientMismatch, "projection ambient mismatch");
    auto r = L.reduce(x);
    std::vector<bool> is_pivot(L.ambient(), false);
    for (auto p : L.pivots()) is_pivot[p] = true;
    std::vector<typename F::Elem> out;
    out.reserve(L.ambient() - L.cone_dim());
    for (std::size_t j = 0; j < L.ambient(); ++j)
        if (!is_pivot[j]) out.push_back(r[j]);
    if (is_zero_vector<F>(out))
        fail(ErrorKind::CenterContainsPoint, "projection of a point on the center");
    return ProjPoint<F>::make(L.field(), std::move(out));
}

template <class F>
ProjPoint<F> project_from_center(const Subspace<F>& L, const ProjPoint<F>& x) {
    return project_from_center(L, x.coords);
}

// Uniform nonzero vector, normalized.
template <class F>
ProjPoint<F> random_point(const F& f, std::size_t ambient, Rng& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<typename F::Elem> v;
        v.reserve(ambient);
        for (std::size_t i = 0; i < ambient; ++i) v.push_back(f.sample(rng));
        if (!is_zero_vector<F>(v)) return ProjPoint<F>::make(f, std::move(v));
    }
    fail(ErrorKind::FieldTooSmall, "no nonzero random vector found");
}

// Nonzero linear form (hyperplane coefficients).
template <class F>
std::vector<typename F::Elem> random_form(const F& f, std::size_t ambient, Rng& rng) {
    return random_point(f, ambient, rng).coords;
}

// Points of P^{dim_plus1 - 1}(F_q) in a deterministic order: leading
// coordinate 1 at each pivot position, free coordinates in field order.
template <class F>
std::vector<ProjPoint<F>> enumerate_projective(const F& f, std::size_t dim_plus1,
                                               std::uint64_t guard = 1000000) {
    const auto elems = f.enumerate(guard);
    std::vector<ProjPoint<F>> out;
    for (std::size_t lead = 0; lead < dim_plus1; ++lead) {
        const std::size_t free = dim_plus1 - lead - 1;
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < free; ++i) {
            if (total > guard / elems.size())
                fail(ErrorKind::EnumerationTooLarge, "projective enumeration guard");
            total *= elems.size();
        }
        for (std::uint64_t it = 0; it < total; ++it) {
            std::vector<typename F::Elem> v(dim_plus1, f.zero());
            v[lead] = f.one();
            std::uint64_t rem = it;
            for (std::size_t i = lead + 1; i < dim_plus1; ++i) {
                v[i] = elems[rem % elems.size()];
                rem /= elems.size();
            }
            out.push_back(ProjPoint<F>::make(f, std::move(v)));
            if (out.size() > guard) fail(ErrorKind::EnumerationTooLarge, "projective enumeration guard");
        }
    }
    return out;
}

}  // namespace segre
