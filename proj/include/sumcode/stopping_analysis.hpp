#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace sumcode {

// Point at which the Lagrangian dual of
//   minimize E N - (1/epsilon) H(N)   subject to the stopping-mass caps
// is evaluated. delta carries bits-per-nat times 1/epsilon so the
// exponentials below stay in natural base while entropies are in bits.
struct DualParams {
  int k = 0;
  int alphabet_size = 2;
  double epsilon = 0.1;  // target bound on H(N)/E N
  double delta = 0.0;    // log2(e) / epsilon
  // Growth rate of the binding range of the mass caps: (3/8)^k |Z|^(2n) < 1
  // exactly for n < c*k with c = log_{|Z|}(8/3) / 2, so multipliers are
  // attached to the first floor(c*k) constraints.
  double c = 0.0;
  double lambda = 0.0;  // dual variable for the pmf normalization, default c*k/2

  static DualParams make(int k, int alphabet_size, double epsilon);
  static DualParams make_with_lambda(int k, int alphabet_size, double epsilon,
                                     double lambda);
};

// (3/8)^k |Z|^(2n), clamped to [0,1]: any zero-error stopping time satisfies
// Pr(N = n) <= this for every n.
double stopping_mass_bound(std::int64_t n, int k, int alphabet_size);

// (3/8)^k * sum_{i=1}^{floor(ck)} (floor(ck) - i) |Z|^(2i); stays below
// |Z|^2/(|Z|^2-1)^2 for every k because |Z|^(2 floor(ck)) <= (8/3)^k.
double dual_penalty_partial_sum(int k, int alphabet_size);

// Evaluates the closed-form lower bound on the dual function at params.
// A positive value certifies E N >= H(N)/epsilon — i.e. H(N)/E N <= epsilon —
// for every stopping time obeying stopping_mass_bound.
double dual_lower_bound(const DualParams& params);

struct ThresholdSearch {
  int k0 = 0;          // smallest k with a positive certificate on [k0, 4*k0]
  int checked_to = 0;  // == 4*k0
  std::vector<std::pair<int, double>> trace;  // (k, bound) for every k scanned
};

// Linear scan with lambda = c*k/2 up to k_cap; throws ResourceError if no
// threshold is found (which would indicate a bug in the bound).
ThresholdSearch hn_en_threshold(int alphabet_size, double epsilon,
                                int k_cap = 1000000);

}
