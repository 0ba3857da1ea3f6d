#pragma once

// Good transverse slices chi + kappa(v), the Kazhdan action, and exhaustive
// checks over the F_p-points of the slice.

#include <map>
#include <vector>

#include "moq/pyramid.hpp"

namespace moq {

struct SliceData {
    Pyramid pyramid;
    Residue p = 2;
    GlElement e;
    LinearFunctional chi;
    std::vector<int> weights;             // Dynkin weight per box
    std::vector<int> degrees;             // Dynkin degree per coordinate of g
    Subspace ad_e;                        // [g, e]
    Subspace v;                           // graded complement to [g, e]
    std::vector<GlElement> v_basis;       // homogeneous basis of v
    std::vector<int> v_degrees;           // Dynkin degree of each basis vector
    Subspace kappa_v;                     // kappa(v) in dual coordinates
    std::vector<int> kazhdan_weights;     // weight of kappa of each basis vector
};

SliceData build_slice(const Pyramid& py, Residue p);

/// Weight i - 2 of kappa(y) for y in the Dynkin-homogeneous piece g(i).
int kazhdan_weight(const SliceData& slice, const LinearFunctional& direction);

struct SlicePoint {
    std::vector<Residue> coeffs;  // coordinates in v_basis
    GlElement x;                  // kappa preimage of eta, e + u
    LinearFunctional eta;
    std::size_t orbit_dim = 0;
    ConjugacyInvariants invariants;
};

SlicePoint slice_point(const SliceData& slice, std::vector<Residue> coeffs);

/// All p^{dim v} points of the slice, coefficient vectors in lexicographic order.
std::vector<SlicePoint> enumerate_slice(const SliceData& slice, std::uint64_t max_points = 1000000);

/// gamma_e(t) applied to a slice point: each homogeneous u_i is scaled by t^{i-2}.
SlicePoint kazhdan_rescale(const SliceData& slice, const SlicePoint& pt, Residue t);

bool katsylo_member(const SliceData& slice, const SlicePoint& pt);

/// kappa[g, x] + kappa(v) = g*.
bool verify_transversality(const SliceData& slice, const SlicePoint& pt);

/// Leading-term span of sub for the ascending filtration by the given coordinate degrees.
Subspace assoc_graded_subspace(const Subspace& sub, const std::vector<int>& degrees);

struct KatsyloReport {
    std::size_t slice_points = 0;
    std::size_t section_points = 0;
    std::size_t classes = 0;
    bool singletons = true;          // each maximal class meets the slice once
    bool transversal = true;         // at every slice point
    bool semicontinuous = true;      // orbit_dim(eta) >= orbit_dim(chi) everywhere
    bool rescaling_stable = true;    // gamma_e(t) preserves the slice point set
    bool fixed_points_match = true;  // fixed points are those with every weight divisible by p - 1
    std::size_t fixed_points = 0;
    std::vector<std::vector<Residue>> representatives;
    std::vector<std::string> failures;

    bool pass() const { return singletons && transversal && semicontinuous && rescaling_stable && fixed_points_match; }
};

KatsyloReport verify_katsylo(const SliceData& slice, const std::vector<SlicePoint>& points);
KatsyloReport verify_katsylo(const Pyramid& py, Residue p, std::uint64_t max_points = 1000000);

struct DegenerationReport {
    std::size_t section_points = 0;
    bool dims_match = true;
    bool graded_match = true;
    std::vector<std::string> failures;

    bool pass() const { return dims_match && graded_match; }
};

DegenerationReport verify_centraliser_degeneration(const SliceData& slice, const std::vector<SlicePoint>& points);
DegenerationReport verify_centraliser_degeneration(const Pyramid& py, Residue p, std::uint64_t max_points = 1000000);

}  // namespace moq
