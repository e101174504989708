#pragma once

#include <complex>
#include <vector>

namespace dw {

using Cx = std::complex<double>;

struct SemigroupModel;

// w -> (a w + b) / (c w + d), with a d - b c != 0.
struct MoebiusMap {
  Cx a, b, c, d;
};

MoebiusMap make_moebius(Cx a, Cx b, Cx c, Cx d);
Cx mobius_apply(const MoebiusMap& m, Cx z);
MoebiusMap compose(const MoebiusMap& outer, const MoebiusMap& inner);

MoebiusMap cayley();                   // (1+z)/(1-z), disk onto right half-plane
MoebiusMap cayley_inverse();           // (w-1)/(w+1)
MoebiusMap disk_automorphism(Cx tau);  // (tau-z)/(1-conj(tau) z), an involution

bool finite(Cx z);

// Density 1/(1-|z|^2) throughout, so the right half-plane carries 1/(2 Re w).
double hyp_dist_disk(Cx z1, Cx z2);
double hyp_dist_right_halfplane(Cx w1, Cx w2);

// Distances in the Koenigs domain of a catalog semigroup, via its inverse chain.
double hyp_dist_domain(const SemigroupModel& s, Cx w1, Cx w2);

struct DistanceBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// Two-sided quasi-hyperbolic bounds along the segment [w1, w2].
DistanceBounds distance_lemma_bounds(const SemigroupModel& s, Cx w1, Cx w2);
// Same along a polyline; the lower bound uses the endpoints.
DistanceBounds distance_lemma_bounds(const SemigroupModel& s, const std::vector<Cx>& path);

double delta_boundary(const SemigroupModel& s, Cx w);

}  // namespace dw
