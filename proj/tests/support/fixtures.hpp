#pragma once

// Shared hand-built datasets. The four-user matrix below is the anchor for
// the metric and recommender tests; its values were chosen so that the
// recognition and rating quotients come out as short decimals.

#include <vector>

#include <gcx/dataset.hpp>
#include <gcx/recommender.hpp>

namespace fixtures {

// Users 1..4 over items 10..120. Users 1 and 2 form the default group;
// items 110 and 120 are rated only outside it.
//
//        10   20   30   40   50   60   70   80   90  100  110  120
//  u1   1.0  0.5  0.8  0.6  1.0  0.4  0.7  0.9    -    -    -    -
//  u2   0.8  1.0  0.4    -  0.5  0.8    -    -  1.0  0.6    -    -
//  u3   1.0    -  0.9    -  0.8    -  0.4    -  0.7    -  0.8  0.4
//  u4     -  0.6    -  1.0    -  0.7    -  0.5    -  0.9  0.9  1.0
inline gcx::RatingsDataset four_user_matrix() {
  gcx::DatasetBuilder b;
  b.add(1, 10, 1.0);
  b.add(1, 20, 0.5);
  b.add(1, 30, 0.8);
  b.add(1, 40, 0.6);
  b.add(1, 50, 1.0);
  b.add(1, 60, 0.4);
  b.add(1, 70, 0.7);
  b.add(1, 80, 0.9);
  b.add(2, 10, 0.8);
  b.add(2, 20, 1.0);
  b.add(2, 30, 0.4);
  b.add(2, 50, 0.5);
  b.add(2, 60, 0.8);
  b.add(2, 90, 1.0);
  b.add(2, 100, 0.6);
  b.add(3, 10, 1.0);
  b.add(3, 30, 0.9);
  b.add(3, 50, 0.8);
  b.add(3, 70, 0.4);
  b.add(3, 90, 0.7);
  b.add(3, 110, 0.8);
  b.add(3, 120, 0.4);
  b.add(4, 20, 0.6);
  b.add(4, 40, 1.0);
  b.add(4, 60, 0.7);
  b.add(4, 80, 0.5);
  b.add(4, 100, 0.9);
  b.add(4, 110, 0.9);
  b.add(4, 120, 1.0);
  return b.build();
}

inline gcx::Group group12(const gcx::RatingsDataset& ds) {
  return gcx::Group::make(ds, {1, 2});
}

// Three members (1-3) whose only paths to the helpers (4, 5) that rated
// item 9 run through items 2, 5 and 8 respectively. Removing {2, 5, 8}
// therefore evicts item 9 from the group list, and no smaller set does:
// exactly one of the three links survives any smaller removal.
inline gcx::RatingsDataset fig_shape() {
  gcx::DatasetBuilder b;
  b.add(1, 1, 0.8);
  b.add(1, 2, 1.0);
  b.add(1, 3, 0.6);
  b.add(2, 4, 0.9);
  b.add(2, 5, 1.0);
  b.add(2, 6, 0.5);
  b.add(3, 7, 0.7);
  b.add(3, 8, 1.0);
  b.add(3, 3, 0.4);
  b.add(4, 2, 1.0);
  b.add(4, 5, 1.0);
  b.add(4, 8, 1.0);
  b.add(4, 9, 1.0);
  b.add(5, 2, 0.9);
  b.add(5, 5, 0.8);
  b.add(5, 8, 1.0);
  b.add(5, 9, 0.9);
  return b.build();
}

}  // namespace fixtures
