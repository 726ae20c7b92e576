#pragma once

#include <cstdint>
#include <iosfwd>

#include "gcx/dataset.hpp"

namespace gcx {

/// Random rating matrix for desk-scale experiments: each (user, item)
/// pair is rated independently with probability `density`, ratings drawn
/// uniformly from {0.1, 0.2, ..., 1.0}. Users are 1..users, items are
/// 1..items. Byte-identical output for a fixed seed on every platform.
/// Requires density * users * items >= users.
RatingsDataset generate_synthetic(int users, int items, double density, std::uint64_t seed);

/// Same matrix written as `user::item::rating::0` lines (ratings already
/// normalized, so load with a rating scale of 1.0).
void write_synthetic(std::ostream& out, int users, int items, double density,
                     std::uint64_t seed);

}  // namespace gcx
