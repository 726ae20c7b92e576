#include "gcx/synthetic.hpp"

#include <ostream>

#include "rng.hpp"

namespace gcx {

namespace {

void check_parameters(int users, int items, double density) {
  if (users < 1 || items < 1) throw ConfigError("synthetic matrix needs users >= 1, items >= 1");
  if (!(density > 0.0) || density > 1.0) throw ConfigError("density must lie in (0, 1]");
  if (density * static_cast<double>(users) * static_cast<double>(items) <
      static_cast<double>(users)) {
    throw ConfigError("expected ratings per user below 1; raise density or items");
  }
}

template <typename Emit>
void sample_matrix(int users, int items, double density, std::uint64_t seed, Emit emit) {
  detail::SplitMix64 rng(seed);
  for (int u = 1; u <= users; ++u) {
    for (int i = 1; i <= items; ++i) {
      const bool rated = density >= 1.0 || rng.next_unit() < density;
      if (!rated) continue;
      const double rating = static_cast<double>(rng.next_below(10) + 1) / 10.0;
      emit(u, i, rating);
    }
  }
}

}  // namespace

RatingsDataset generate_synthetic(int users, int items, double density, std::uint64_t seed) {
  check_parameters(users, items, density);
  DatasetBuilder builder;
  sample_matrix(users, items, density, seed,
                [&](int u, int i, double r) { builder.add(u, i, r); });
  return builder.build();
}

void write_synthetic(std::ostream& out, int users, int items, double density,
                     std::uint64_t seed) {
  check_parameters(users, items, density);
  sample_matrix(users, items, density, seed, [&](int u, int i, double r) {
    out << u << "::" << i << "::" << r << "::0\n";
  });
}

}  // namespace gcx
