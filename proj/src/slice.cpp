#include "moq/slice.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>

#include "moq/parallel.hpp"

namespace moq {

SliceData build_slice(const Pyramid& py, Residue p) {
    SliceData s;
    s.pyramid = py;
    s.p = p;
    const std::size_t n = py.size();
    s.e = nilpotent_from_pyramid(py, p);
    s.chi = kappa(s.e);
    s.weights = dynkin_weights(py);
    s.degrees = dynkin_degrees(s.weights);
    s.ad_e = ad_image(s.e);
    for (std::size_t k = 0; k < n * n; ++k)
        if (s.e.coords()[k] != 0) detail::ensure(s.degrees[k] == 2, "e is not in Dynkin degree 2");

    std::vector<std::size_t> natural(n * n);
    std::iota(natural.begin(), natural.end(), 0);
    std::set<int> degs(s.degrees.begin(), s.degrees.end());
    FpMatrix v_gens(0, n * n, p);
    for (int d : degs) {
        std::vector<std::size_t> coords;
        for (std::size_t k = 0; k < n * n; ++k)
            if (s.degrees[k] == d) coords.push_back(k);
        Subspace piece = Subspace::coordinate(n * n, p, coords);
        // [g, e] is graded: its degree-d part is [g(d-2), e].
        FpMatrix img(0, n * n, p);
        for (std::size_t k = 0; k < n * n; ++k)
            if (s.degrees[k] == d - 2) {
                auto b = bracket(GlElement::unit(n, k / n, k % n, p), s.e);
                img.append_row(b.coords());
            }
        Subspace sub = Subspace::span(img.rows() ? img : FpMatrix(0, n * n, p));
        Subspace comp = graded_complement(sub, piece, natural);
        for (std::size_t r = 0; r < comp.dim(); ++r) {
            v_gens.append_row(comp.basis().row(r));
            s.v_basis.push_back(GlElement::from_coords(n, p, comp.basis().row(r)));
            s.v_degrees.push_back(d);
            s.kazhdan_weights.push_back(d - 2);
        }
    }
    s.v = Subspace::span(v_gens);
    s.kappa_v = kappa_image(s.v, n);
    detail::ensure(s.v.dim() == centraliser(s.e).dim(), "dim v differs from dim g^e");
    detail::ensure(s.v.sum(s.ad_e).dim() == n * n && s.v.intersection(s.ad_e).dim() == 0, "v is not a complement to [g,e]");
    for (std::size_t k = 0; k < s.v_basis.size(); ++k) {
        detail::ensure(s.v_degrees[k] <= 0, "v is not in non-positive Dynkin degrees");
        detail::ensure(kazhdan_weight(s, kappa(s.v_basis[k])) < 0, "slice direction with non-negative Kazhdan weight");
    }
    if (!s.e.is_zero()) detail::ensure(kazhdan_weight(s, s.chi) == 0, "chi is not fixed by the Kazhdan action");
    return s;
}

int kazhdan_weight(const SliceData& slice, const LinearFunctional& direction) {
    const auto c = direction.preimage.coords();
    detail::require_same(c.size() == slice.degrees.size(), "functional has the wrong size");
    std::optional<int> deg;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0) continue;
        if (deg && *deg != slice.degrees[k]) throw InvalidArgument("kazhdan_weight: direction is not Dynkin-homogeneous");
        deg = slice.degrees[k];
    }
    detail::require(deg.has_value(), "kazhdan_weight: zero direction has no weight");
    return *deg - 2;
}

SlicePoint slice_point(const SliceData& slice, std::vector<Residue> coeffs) {
    detail::require_same(coeffs.size() == slice.v_basis.size(), "slice point needs one coefficient per v-basis vector");
    SlicePoint pt;
    pt.x = slice.e;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        if (coeffs[k] % slice.p) pt.x = pt.x + slice.v_basis[k].scaled(coeffs[k]);
    pt.coeffs = std::move(coeffs);
    pt.eta = kappa(pt.x);
    pt.orbit_dim = orbit_dim(pt.x);
    pt.invariants = conjugacy_invariants(pt.x);
    return pt;
}

std::vector<SlicePoint> enumerate_slice(const SliceData& slice, std::uint64_t max_points) {
    const std::size_t dim = slice.v_basis.size();
    std::uint64_t total = 1;
    for (std::size_t k = 0; k < dim; ++k) {
        total *= slice.p;
        if (total > max_points)
            throw BudgetExceeded("slice has p^" + std::to_string(dim) + " points, above max_slice_points " +
                                 std::to_string(max_points));
    }
    std::vector<SlicePoint> out(total);
    parallel_for(total, [&](std::size_t idx) {
        std::vector<Residue> c(dim);
        std::size_t rest = idx;
        for (std::size_t k = dim; k-- > 0;) {
            c[k] = static_cast<Residue>(rest % slice.p);
            rest /= slice.p;
        }
        out[idx] = slice_point(slice, std::move(c));
    });
    return out;
}

SlicePoint kazhdan_rescale(const SliceData& slice, const SlicePoint& pt, Residue t) {
    const Residue p = slice.p;
    detail::require(t % p != 0, "Kazhdan rescaling needs t in F_p^x");
    std::vector<Residue> c(pt.coeffs.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
        // t^w for negative w is the |w|-th power of t^{-1}.
        const int w = slice.kazhdan_weights[k];
        Residue base = w < 0 ? mod_inv(t % p, p) : t % p;
        c[k] = mod_mul(pt.coeffs[k], mod_pow(base, static_cast<std::uint64_t>(std::abs(w)), p), p);
    }
    return slice_point(slice, std::move(c));
}

bool katsylo_member(const SliceData& slice, const SlicePoint& pt) { return pt.orbit_dim == orbit_dim(slice.e); }

bool verify_transversality(const SliceData& slice, const SlicePoint& pt) {
    const std::size_t n = slice.pyramid.size();
    return kappa_image(ad_image(pt.x), n).sum(slice.kappa_v).dim() == n * n;
}

Subspace assoc_graded_subspace(const Subspace& sub, const std::vector<int>& degrees) {
    const std::size_t n = sub.ambient_dim();
    detail::require_same(degrees.size() == n, "one degree per coordinate is required");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return degrees[a] > degrees[b]; });
    FpMatrix m(sub.dim(), n, sub.modulus());
    for (std::size_t r = 0; r < sub.dim(); ++r)
        for (std::size_t t = 0; t < n; ++t) m.at(r, t) = sub.basis()(r, order[t]);
    auto piv = reduce_rows_in_place(m);
    // Each echelon row starts in its top degree; keep only that degree.
    FpMatrix lead(0, n, sub.modulus());
    std::vector<Residue> v(n);
    for (std::size_t r = 0; r < piv.size(); ++r) {
        const int top = degrees[order[piv[r]]];
        std::fill(v.begin(), v.end(), 0);
        for (std::size_t t = 0; t < n; ++t)
            if (degrees[order[t]] == top) v[order[t]] = m(r, t);
        lead.append_row(v);
    }
    Subspace gr = Subspace::span(lead);
    detail::ensure(gr.dim() == sub.dim(), "associated graded lost dimension");
    return gr;
}

KatsyloReport verify_katsylo(const SliceData& slice, const std::vector<SlicePoint>& points) {
    KatsyloReport rep;
    rep.slice_points = points.size();
    const std::size_t d_chi = orbit_dim(slice.e);
    std::map<std::vector<std::vector<Residue>>, std::vector<std::size_t>> classes;
    std::set<std::vector<Residue>> all;
    for (const auto& pt : points) all.insert(pt.coeffs);

    std::vector<char> transversal(points.size());
    parallel_for(points.size(), [&](std::size_t i) { transversal[i] = verify_transversality(slice, points[i]); });

    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& pt = points[i];
        if (!transversal[i]) {
            rep.transversal = false;
            rep.failures.push_back("transversality fails at a slice point");
        }
        if (pt.orbit_dim < d_chi) {
            rep.semicontinuous = false;
            rep.failures.push_back("orbit dimension drops below dim O_chi on the slice");
        }
        if (katsylo_member(slice, pt)) {
            ++rep.section_points;
            std::vector<std::vector<Residue>> key;
            for (const auto& f : pt.invariants.factors) key.push_back(f.coeffs());
            classes[key].push_back(i);
        }
        bool fixed = true;
        for (Residue t = 1; t < slice.p; ++t) {
            auto img = kazhdan_rescale(slice, pt, t);
            if (!all.count(img.coeffs)) rep.rescaling_stable = false;
            if (img.coeffs != pt.coeffs) fixed = false;
        }
        bool predicted = true;
        for (std::size_t k = 0; k < pt.coeffs.size(); ++k)
            if (pt.coeffs[k] != 0 && slice.kazhdan_weights[k] % static_cast<int>(slice.p - 1) != 0) predicted = false;
        if (fixed) ++rep.fixed_points;
        if (fixed != predicted) rep.fixed_points_match = false;
    }
    if (!rep.rescaling_stable) rep.failures.push_back("Kazhdan rescaling leaves the slice");
    if (!rep.fixed_points_match) rep.failures.push_back("Kazhdan fixed points differ from the weight prediction");
    rep.classes = classes.size();
    for (const auto& [key, members] : classes) {
        if (members.size() != 1) {
            rep.singletons = false;
            rep.failures.push_back("an orbit of maximal dimension meets the slice in " + std::to_string(members.size()) +
                                   " points");
        }
        rep.representatives.push_back(points[members.front()].coeffs);
    }
    return rep;
}

KatsyloReport verify_katsylo(const Pyramid& py, Residue p, std::uint64_t max_points) {
    auto slice = build_slice(py, p);
    return verify_katsylo(slice, enumerate_slice(slice, max_points));
}

DegenerationReport verify_centraliser_degeneration(const SliceData& slice, const std::vector<SlicePoint>& points) {
    DegenerationReport rep;
    const std::size_t dim_ge = centraliser(slice.e).dim();
    std::vector<char> dims(points.size(), 1), graded(points.size(), 1), member(points.size(), 0);
    parallel_for(points.size(), [&](std::size_t i) {
        const auto& pt = points[i];
        if (!katsylo_member(slice, pt)) return;
        member[i] = 1;
        dims[i] = centraliser(pt.x).dim() == dim_ge;
        graded[i] = assoc_graded_subspace(ad_image(pt.x), slice.degrees) == slice.ad_e;
    });
    for (std::size_t i = 0; i < points.size(); ++i) {
        rep.section_points += member[i];
        if (!dims[i]) {
            rep.dims_match = false;
            rep.failures.push_back("dim g^x differs from dim g^e at a section point");
        }
        if (!graded[i]) {
            rep.graded_match = false;
            rep.failures.push_back("gr [g, x] differs from [g, e] at a section point");
        }
    }
    return rep;
}

DegenerationReport verify_centraliser_degeneration(const Pyramid& py, Residue p, std::uint64_t max_points) {
    auto slice = build_slice(py, p);
    return verify_centraliser_degeneration(slice, enumerate_slice(slice, max_points));
}

}  // namespace moq
