#include "sumcode/polytope.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "sumcode/converse_toolkit.hpp"
#include "sumcode/errors.hpp"
#include "sumcode/rng.hpp"

namespace sumcode {

namespace {

constexpr int kWitnessCap = 12;  // store e_i rows only while L^2 stays small

}  // namespace

LabelFamilyVector sample_family_member(int x, int y, std::uint64_t seed) {
  if (x < 0 || y < 0) throw DomainError("class counts must be nonnegative");
  const int w = x + y;
  if (w > 20) throw DomainError("sample_family_member limited to x + y <= 20");
  const SumClassConstants consts = sum_class_constants(x, y);
  const std::size_t L = static_cast<std::size_t>(consts.L);
  const PartitionProfile profile = partition_profile(x, y);

  LabelFamilyVector member;
  member.x = x;
  member.y = y;
  const bool keep_witnesses = w <= kWitnessCap;

  DetRng rng(seed);
  std::vector<std::int64_t> counts(L, 0);
  std::vector<std::uint32_t> idx(L);
  std::iota(idx.begin(), idx.end(), 0u);
  std::vector<std::pair<std::size_t, std::size_t>> swaps;

  for (std::int64_t ni : profile.sizes) {
    // Uniform n_i-subset of the labels: partial Fisher-Yates, undone after use
    // so the scratch array is reusable.
    swaps.clear();
    const std::size_t take = static_cast<std::size_t>(ni);
    for (std::size_t t = 0; t < take; ++t) {
      const std::size_t r = t + static_cast<std::size_t>(rng.below(L - t));
      std::swap(idx[t], idx[r]);
      swaps.emplace_back(t, r);
    }
    if (keep_witnesses) {
      std::vector<Bit> row(L, 0);
      for (std::size_t t = 0; t < take; ++t) row[idx[t]] = 1;
      member.witnesses.push_back(std::move(row));
    }
    for (std::size_t t = 0; t < take; ++t) ++counts[idx[t]];
    for (auto it = swaps.rbegin(); it != swaps.rend(); ++it)
      std::swap(idx[it->first], idx[it->second]);
  }

  member.masses.reserve(L);
  for (std::int64_t c : counts) member.masses.emplace_back(c, consts.M);
  return member;
}

std::vector<std::vector<Rational>> enumerate_family(int x, int y) {
  if (x < 0 || y < 0) throw DomainError("class counts must be nonnegative");
  const int w = x + y;
  if (w > 2)
    throw ResourceError(
        "enumerate_family is exhaustive only for x + y <= 2; use sample_family_member");
  const SumClassConstants consts = sum_class_constants(x, y);
  const int L = static_cast<int>(consts.L);
  const PartitionProfile profile = partition_profile(x, y);

  // All bitmasks with the required popcount, per partition.
  std::vector<std::vector<std::uint32_t>> choices;
  for (std::int64_t ni : profile.sizes) {
    std::vector<std::uint32_t> masks;
    for (std::uint32_t m = 0; m < (std::uint32_t{1} << L); ++m)
      if (std::popcount(m) == ni) masks.push_back(m);
    choices.push_back(std::move(masks));
  }

  std::set<std::vector<std::int64_t>> distinct;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(L), 0);
  std::vector<std::size_t> pick(choices.size(), 0);
  while (true) {
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < choices.size(); ++i) {
      const std::uint32_t mask = choices[i][pick[i]];
      for (int j = 0; j < L; ++j)
        counts[static_cast<std::size_t>(j)] += (mask >> j) & 1u;
    }
    distinct.insert(counts);
    std::size_t pos = 0;
    while (pos < pick.size() && ++pick[pos] == choices[pos].size()) pick[pos++] = 0;
    if (pos == pick.size()) break;
  }

  std::vector<std::vector<Rational>> members;
  members.reserve(distinct.size());
  for (const auto& counts_vec : distinct) {
    std::vector<Rational> masses;
    masses.reserve(counts_vec.size());
    for (std::int64_t c : counts_vec) masses.emplace_back(c, consts.M);
    members.push_back(std::move(masses));
  }
  return members;
}

MinEntropyResult min_entropy_oracle(int x, int y, const OracleMode& mode) {
  MinEntropyResult result;
  if (std::holds_alternative<ExhaustiveOracle>(mode)) {
    const auto members = enumerate_family(x, y);
    result.candidates = members.size();
    bool first = true;
    for (const auto& masses : members) {
      const double h = entropy_bits(masses);
      if (first || h < result.min_entropy) {
        result.min_entropy = h;
        result.argmin = masses;
        first = false;
      }
    }
  } else {
    const auto& sampled = std::get<SampledOracle>(mode);
    if (sampled.trials == 0) throw DomainError("sampled oracle needs at least one trial");
    result.candidates = sampled.trials;
    bool first = true;
    for (std::uint64_t t = 0; t < sampled.trials; ++t) {
      const LabelFamilyVector member =
          sample_family_member(x, y, derive_stream_seed(sampled.seed, t));
      const double h = entropy_bits(member.masses);
      if (first || h < result.min_entropy) {
        result.min_entropy = h;
        result.argmin = member.masses;
        first = false;
      }
    }
  }
  return result;
}

bool prefix_dominance_check(const LabelFamilyVector& p) {
  const ClumpyDistribution star = clumpy_distribution(p.x, p.y);
  if (star.masses.size() != p.masses.size())
    throw DimensionError("family vector length does not match its class");
  Rational prefix(0);
  for (std::size_t i = 0; i < p.masses.size(); ++i) {
    prefix += star.masses[i] - p.masses[i];
    if (prefix < Rational(0)) return false;
  }
  return true;
}

Decomposition decompose_into_permuted_clumpy(const std::vector<Rational>& p, int x,
                                             int y) {
  const SumClassConstants consts = sum_class_constants(x, y);
  const std::size_t L = static_cast<std::size_t>(consts.L);
  if (p.size() != L) throw DomainError("input length does not match 2^(x+y)");
  Rational total(0);
  for (const Rational& v : p) {
    if (v < Rational(0)) throw DomainError("input has a negative mass");
    total += v;
  }
  if (total != Rational(1)) throw DomainError("input masses do not sum to 1");

  const ClumpyDistribution star = clumpy_distribution(x, y);

  // Work on the nonincreasing rearrangement; the sort permutation is folded
  // back into the atoms at the end.
  std::vector<std::uint32_t> order(L);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return p[a] > p[b]; });
  std::vector<Rational> target(L);
  std::vector<std::uint32_t> rank_of(L);
  for (std::size_t r = 0; r < L; ++r) {
    target[r] = p[order[r]];
    rank_of[order[r]] = static_cast<std::uint32_t>(r);
  }

  std::vector<Rational> current = star.masses;  // already nonincreasing

  // Atoms whose permuted vectors are equal stay equal under every later swap
  // (swaps act on positions), so they are merged under one representative
  // permutation. The merge key is the per-position value class of the clumpy
  // vector, which has few distinct masses.
  std::vector<std::uint8_t> value_class(L, 0);
  for (std::size_t t = 1; t < L; ++t)
    value_class[t] =
        static_cast<std::uint8_t>(value_class[t - 1] + (star.masses[t] != star.masses[t - 1]));

  struct AtomState {
    std::vector<std::uint32_t> perm;
    double weight = 0.0;
  };
  using AtomMap = std::map<std::vector<std::uint8_t>, AtomState>;
  auto key_of = [&](const std::vector<std::uint32_t>& perm) {
    std::vector<std::uint8_t> key(L);
    for (std::size_t pos = 0; pos < L; ++pos) key[pos] = value_class[perm[pos]];
    return key;
  };
  auto merge_into = [](AtomMap& map, std::vector<std::uint8_t> key,
                       const std::vector<std::uint32_t>& perm, double weight) {
    auto [it, inserted] = map.try_emplace(std::move(key), AtomState{perm, weight});
    if (!inserted) {
      it->second.weight += weight;
      if (perm < it->second.perm) it->second.perm = perm;  // canonical representative
    }
  };

  AtomMap atoms;
  {
    std::vector<std::uint32_t> identity(L);
    std::iota(identity.begin(), identity.end(), 0u);
    std::vector<std::uint8_t> identity_key = key_of(identity);
    atoms.emplace(std::move(identity_key), AtomState{std::move(identity), 1.0});
  }

  int iterations = 0;
  while (true) {
    std::size_t i = L, j = L;
    for (std::size_t t = 0; t < L; ++t) {
      if (i == L && current[t] > target[t]) i = t;
      if (j == L && current[t] < target[t]) j = t;
      if (i < L && j < L) break;
    }
    if (i == L && j == L) break;  // current == target
    if (i == L || j == L)
      throw DiagnosticFailure("excess without deficit: input is not a pmf over the hull");
    if (++iterations > static_cast<int>(L))
      throw DiagnosticFailure("swap chain exceeded " + std::to_string(L) +
                              " iterations: input outside the family hull");

    const Rational excess = current[i] - target[i];
    const Rational deficit = target[j] - current[j];
    const Rational moved = std::min(excess, deficit);
    const Rational gap = current[i] - current[j];
    if (gap <= Rational(0))
      throw DiagnosticFailure("swap pair not strictly ordered: input outside the family hull");
    const Rational lambda = moved / gap;
    if (lambda < Rational(0) || lambda > Rational(1))
      throw DiagnosticFailure("mixing weight outside [0,1]: input outside the family hull");
    const double lam = to_double(lambda);

    AtomMap next;
    for (const auto& [key, atom] : atoms) {
      if (atom.weight * (1.0 - lam) != 0.0)
        merge_into(next, key, atom.perm, atom.weight * (1.0 - lam));
      if (atom.weight * lam != 0.0) {
        std::vector<std::uint32_t> swapped_perm = atom.perm;
        std::swap(swapped_perm[i], swapped_perm[j]);
        std::vector<std::uint8_t> swapped_key = key;
        std::swap(swapped_key[i], swapped_key[j]);
        merge_into(next, std::move(swapped_key), swapped_perm, atom.weight * lam);
      }
    }
    atoms = std::move(next);

    current[i] -= moved;
    current[j] += moved;
  }

  Decomposition result;
  result.iterations = iterations;
  double weight_sum = 0.0;
  std::vector<double> reconstruction(L, 0.0);
  for (const auto& [key, state] : atoms) {
    DecompositionAtom atom;
    atom.weight = state.weight;
    atom.permutation.resize(L);
    for (std::size_t pos = 0; pos < L; ++pos)
      atom.permutation[pos] = state.perm[rank_of[pos]];
    weight_sum += state.weight;
    for (std::size_t pos = 0; pos < L; ++pos)
      reconstruction[pos] += state.weight * to_double(star.masses[atom.permutation[pos]]);
    result.atoms.push_back(std::move(atom));
  }
  double residual = std::fabs(weight_sum - 1.0);
  for (std::size_t pos = 0; pos < L; ++pos)
    residual = std::max(residual, std::fabs(reconstruction[pos] - to_double(p[pos])));
  result.residual = residual;
  if (residual > 1e-8)
    throw DiagnosticFailure("reconstruction residual " + std::to_string(residual) +
                            ": input outside the family hull");
  std::sort(result.atoms.begin(), result.atoms.end(),
            [](const DecompositionAtom& a, const DecompositionAtom& b) {
              if (a.weight != b.weight) return a.weight > b.weight;
              return a.permutation < b.permutation;
            });
  return result;
}

FloorResult min_entropy_floor(double c, int u) {
  if (!(c > 0.0)) throw DomainError("floor value must be positive");
  if (u < 1) throw DomainError("support size must be >= 1");
  if (u * c > 1.0 + 1e-12) throw DomainError("infeasible: u * c exceeds 1");
  FloorResult result;
  result.pmf.floor_value = c;
  result.pmf.support = u;
  result.pmf.masses.assign(static_cast<std::size_t>(u), c);
  result.pmf.masses[0] = 1.0 - (u - 1) * c;
  result.entropy = entropy_bits(result.pmf.masses);
  return result;
}

}
