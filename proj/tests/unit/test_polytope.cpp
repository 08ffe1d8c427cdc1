#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "sumcode/converse_toolkit.hpp"
#include "sumcode/errors.hpp"
#include "sumcode/polytope.hpp"
#include "sumcode/rng.hpp"

using namespace sumcode;

namespace {

// Exact convex combination of sampled family members with integer weights.
std::vector<Rational> random_hull_point(int x, int y, DetRng& rng, int max_members = 8) {
  const int members = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_members)));
  std::vector<std::vector<Rational>> masses;
  std::vector<long long> weights;
  long long total = 0;
  for (int i = 0; i < members; ++i) {
    masses.push_back(sample_family_member(x, y, rng.next()).masses);
    weights.push_back(1 + static_cast<long long>(rng.below(100)));
    total += weights.back();
  }
  std::vector<Rational> p(masses[0].size(), Rational(0));
  for (int i = 0; i < members; ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      p[j] += Rational(weights[static_cast<std::size_t>(i)], total) *
              masses[static_cast<std::size_t>(i)][j];
  return p;
}

void check_decomposition(const std::vector<Rational>& p, int x, int y) {
  const Decomposition dec = decompose_into_permuted_clumpy(p, x, y);
  const ClumpyDistribution star = clumpy_distribution(x, y);
  const std::size_t L = star.masses.size();

  CHECK(dec.iterations <= static_cast<int>(L));
  CHECK(dec.residual <= 1e-10);

  double weight_sum = 0.0;
  std::vector<double> rebuilt(L, 0.0);
  for (const DecompositionAtom& atom : dec.atoms) {
    CHECK(atom.weight >= 0.0);
    CHECK(atom.weight <= 1.0);
    weight_sum += atom.weight;
    // Each atom is a genuine permutation of the clumpy vector.
    std::vector<std::uint32_t> sorted = atom.permutation;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < L; ++i) REQUIRE(sorted[i] == i);
    for (std::size_t pos = 0; pos < L; ++pos)
      rebuilt[pos] += atom.weight * to_double(star.masses[atom.permutation[pos]]);
  }
  CHECK(std::fabs(weight_sum - 1.0) <= 1e-12);
  for (std::size_t pos = 0; pos < L; ++pos)
    CHECK(std::fabs(rebuilt[pos] - to_double(p[pos])) <= 1e-10);
}

}  // namespace

TEST_CASE("family sampling basics") {
  CHECK(sample_family_member(0, 0, 5).masses == std::vector<Rational>{Rational(1)});

  // (1,0): e1 is forced to (1,1); e2 lands on either label.
  std::set<std::vector<Rational>> seen;
  for (std::uint64_t seed = 0; seed < 32; ++seed)
    seen.insert(sample_family_member(1, 0, seed).masses);
  const std::set<std::vector<Rational>> expected{
      {Rational(2, 3), Rational(1, 3)}, {Rational(1, 3), Rational(2, 3)}};
  CHECK(seen == expected);

  // Masses times M are integers in [0, L]; witnesses carry the profile counts.
  const LabelFamilyVector member = sample_family_member(2, 1, 99);
  const SumClassConstants c = sum_class_constants(2, 1);
  Rational total(0);
  for (const Rational& m : member.masses) {
    const Rational scaled = m * c.M;
    CHECK(scaled.denominator() == 1);
    CHECK(scaled.numerator() >= 0);
    CHECK(scaled.numerator() <= c.L);
    total += m;
  }
  CHECK(total == Rational(1));
  const PartitionProfile profile = partition_profile(2, 1);
  REQUIRE(member.witnesses.size() == profile.sizes.size());
  for (std::size_t i = 0; i < member.witnesses.size(); ++i) {
    std::int64_t ones = 0;
    for (Bit b : member.witnesses[i]) ones += b;
    CHECK(ones == profile.sizes[i]);
  }

  CHECK(sample_family_member(2, 2, 7).masses == sample_family_member(2, 2, 7).masses);
}

TEST_CASE("family enumeration for small classes") {
  CHECK(enumerate_family(0, 0) ==
        std::vector<std::vector<Rational>>{{Rational(1)}});

  const auto pair = enumerate_family(1, 0);
  CHECK(pair.size() == 2);
  CHECK(std::count(pair.begin(), pair.end(),
                   std::vector<Rational>{Rational(2, 3), Rational(1, 3)}) == 1);
  CHECK(std::count(pair.begin(), pair.end(),
                   std::vector<Rational>{Rational(1, 3), Rational(2, 3)}) == 1);

  const auto members = enumerate_family(1, 1);
  const ClumpyDistribution star = clumpy_distribution(1, 1);
  double min_entropy = 1e9;
  std::vector<Rational> argmin;
  for (const auto& masses : members) {
    CHECK(*std::max_element(masses.begin(), masses.end()) >= Rational(2, 9));
    const double h = entropy_bits(masses);
    if (h < min_entropy) {
      min_entropy = h;
      argmin = masses;
    }
  }
  std::sort(argmin.rbegin(), argmin.rend());
  CHECK(argmin == star.masses);

  // Only the class size matters, not the split between 1s and 2s.
  CHECK(enumerate_family(2, 0) == members);
  CHECK(enumerate_family(0, 2) == members);

  CHECK_THROWS_AS(enumerate_family(2, 1), ResourceError);
}

TEST_CASE("minimum-entropy oracle equals the clumpy entropy") {
  for (const auto& [x, y] : std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {0, 1}, {1, 1}}) {
    const MinEntropyResult result = min_entropy_oracle(x, y, ExhaustiveOracle{});
    CHECK(std::fabs(result.min_entropy - clumpy_entropy(x, y)) < 1e-10);
    std::vector<Rational> sorted = result.argmin;
    std::sort(sorted.rbegin(), sorted.rend());
    CHECK(sorted == clumpy_distribution(x, y).masses);
  }
  CHECK(std::fabs(min_entropy_oracle(1, 0, ExhaustiveOracle{}).min_entropy -
                  0.918295834054490) < 1e-9);
  CHECK(std::fabs(min_entropy_oracle(1, 1, ExhaustiveOracle{}).min_entropy -
                  1.752715278979705) < 1e-9);
}

TEST_CASE("sampled oracle is one-sided") {
  const MinEntropyResult result = min_entropy_oracle(2, 1, SampledOracle{10000, 17});
  CHECK(result.min_entropy >= clumpy_entropy(2, 1) - 1e-10);
  CHECK(result.candidates == 10000);
  for (const auto& [x, y] : std::vector<std::pair<int, int>>{{4, 0}, {2, 3}, {3, 3}})
    CHECK(min_entropy_oracle(x, y, SampledOracle{5000, 23}).min_entropy >=
          clumpy_entropy(x, y) - 1e-10);
}

TEST_CASE("prefix dominance") {
  LabelFamilyVector star;
  star.x = 1;
  star.y = 1;
  star.masses = clumpy_distribution(1, 1).masses;
  CHECK(prefix_dominance_check(star));

  LabelFamilyVector swapped;
  swapped.x = 1;
  swapped.y = 0;
  swapped.masses = {Rational(1, 3), Rational(2, 3)};
  // prefix sums of (2/3,1/3)-(1/3,2/3): 1/3 then 0
  CHECK(prefix_dominance_check(swapped));

  for (std::uint64_t seed = 0; seed < 2000; ++seed)
    CHECK(prefix_dominance_check(sample_family_member(2, 2, seed)));

  LabelFamilyVector hostile;
  hostile.x = 1;
  hostile.y = 0;
  // First prefix 3/4 exceeds the clumpy 2/3, so dominance must fail.
  hostile.masses = {Rational(3, 4), Rational(1, 4)};
  CHECK_FALSE(prefix_dominance_check(hostile));
}

TEST_CASE("first and last differing components straddle the clumpy vector") {
  const ClumpyDistribution star = clumpy_distribution(2, 1);
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const LabelFamilyVector member = sample_family_member(2, 1, seed);
    if (member.masses == star.masses) continue;
    std::size_t first = star.masses.size(), last = 0;
    for (std::size_t i = 0; i < star.masses.size(); ++i)
      if (member.masses[i] != star.masses[i]) {
        first = std::min(first, i);
        last = std::max(last, i);
      }
    REQUIRE(first < star.masses.size());
    CHECK(star.masses[first] > member.masses[first]);
    CHECK(star.masses[last] < member.masses[last]);
  }
}

TEST_CASE("no midpoint of distinct members reproduces the clumpy vector") {
  for (const auto& [x, y] : std::vector<std::pair<int, int>>{{1, 0}, {1, 1}, {2, 0}, {0, 2}}) {
    const auto members = enumerate_family(x, y);
    const std::vector<Rational> star = clumpy_distribution(x, y).masses;
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        std::vector<Rational> mid(star.size());
        for (std::size_t i = 0; i < star.size(); ++i)
          mid[i] = (members[a][i] + members[b][i]) / 2;
        CHECK(mid != star);
      }
  }
}

TEST_CASE("decomposition hand traces") {
  // p = (1/2, 1/2) at (1,0): one swap with lambda = 1/2.
  const Decomposition dec =
      decompose_into_permuted_clumpy({Rational(1, 2), Rational(1, 2)}, 1, 0);
  REQUIRE(dec.atoms.size() == 2);
  CHECK(dec.iterations == 1);
  CHECK(dec.atoms[0].weight == 0.5);
  CHECK(dec.atoms[1].weight == 0.5);
  const std::set<std::vector<std::uint32_t>> perms{dec.atoms[0].permutation,
                                                   dec.atoms[1].permutation};
  CHECK(perms == std::set<std::vector<std::uint32_t>>{{0, 1}, {1, 0}});

  // p equal to the clumpy vector: identity atom, no iterations.
  const Decomposition id = decompose_into_permuted_clumpy(
      clumpy_distribution(1, 1).masses, 1, 1);
  CHECK(id.iterations == 0);
  REQUIRE(id.atoms.size() == 1);
  CHECK(id.atoms[0].weight == 1.0);
  CHECK(id.atoms[0].permutation == std::vector<std::uint32_t>{0, 1, 2, 3});
}

TEST_CASE("decomposition of an average of ten sampled members") {
  DetRng rng(2024);
  std::vector<Rational> p(4, Rational(0));
  for (int i = 0; i < 10; ++i) {
    const auto member = sample_family_member(1, 1, rng.next());
    for (std::size_t j = 0; j < 4; ++j) p[j] += member.masses[j] / 10;
  }
  const Decomposition dec = decompose_into_permuted_clumpy(p, 1, 1);
  CHECK(dec.iterations <= 4);
  check_decomposition(p, 1, 1);
}

TEST_CASE("decomposition over random hull points") {
  DetRng rng(31337);
  for (const auto& [x, y] :
       std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}}) {
    for (int rep = 0; rep < 50; ++rep) {
      const std::vector<Rational> p = random_hull_point(x, y, rng);
      check_decomposition(p, x, y);
    }
  }
}

TEST_CASE("decomposition rejects bad inputs") {
  CHECK_THROWS_AS(decompose_into_permuted_clumpy({Rational(1, 2)}, 1, 0), DomainError);
  CHECK_THROWS_AS(
      decompose_into_permuted_clumpy({Rational(1, 2), Rational(1, 4)}, 1, 0),
      DomainError);
  CHECK_THROWS_AS(
      decompose_into_permuted_clumpy({Rational(3, 2), Rational(-1, 2)}, 1, 0),
      DomainError);
  // A valid pmf outside the family hull: first component below 1/3.
  CHECK_THROWS_AS(
      decompose_into_permuted_clumpy({Rational(1, 4), Rational(3, 4)}, 1, 0),
      DiagnosticFailure);
}

TEST_CASE("floor-constrained minimum entropy") {
  const FloorResult two = min_entropy_floor(0.3, 2);
  CHECK(two.pmf.masses == std::vector<double>{0.7, 0.3});
  CHECK(std::fabs(two.entropy - 0.881290899230693) < 1e-12);

  for (int u : {2, 4, 8})
    CHECK(std::fabs(min_entropy_floor(1.0 / u, u).entropy - std::log2(u)) < 1e-9);

  // Growing the support can only raise the floor-constrained minimum.
  const double three = min_entropy_floor(0.3, 3).entropy;
  CHECK(std::fabs(three - 1.570950594454669) < 1e-12);
  CHECK(two.entropy <= three);
  for (double c : {0.05, 0.1, 0.2}) {
    double last = 0.0;
    for (int u = 1; u <= static_cast<int>(1.0 / c); ++u) {
      const double h = min_entropy_floor(c, u).entropy;
      CHECK(h >= last - 1e-12);
      last = h;
    }
  }

  CHECK_THROWS_AS(min_entropy_floor(0.3, 4), DomainError);
  CHECK_THROWS_AS(min_entropy_floor(0.0, 2), DomainError);
  CHECK_THROWS_AS(min_entropy_floor(0.5, 0), DomainError);
}

TEST_CASE("floor extremal form verified by grid search") {
  for (double c : {0.1, 0.2}) {
    const double best2 = min_entropy_floor(c, 2).entropy;
    for (double q = c; q <= 1.0 - c + 1e-12; q += 0.01) {
      const double h = entropy_bits(std::vector<double>{q, 1.0 - q});
      CHECK(h >= best2 - 1e-12);
    }
    const double best3 = min_entropy_floor(c, 3).entropy;
    for (double q1 = c; q1 <= 1.0 - 2 * c + 1e-12; q1 += 0.01)
      for (double q2 = c; q1 + q2 <= 1.0 - c + 1e-12; q2 += 0.01) {
        const double h = entropy_bits(std::vector<double>{q1, q2, 1.0 - q1 - q2});
        CHECK(h >= best3 - 1e-12);
      }
  }
}
