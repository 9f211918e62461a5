#pragma once

#include <cstddef>

#include "nodal/numerology.hpp"

namespace nodal::golden {

// Published leftover table for the degree-induction bound, one column per
// (d, n) pair, in the order the columns appear in the source table.
struct DeltaColumn {
  long d;
  long n;
  long l_minus_h;
  long h;
  long delta;
};

inline constexpr DeltaColumn kDeltaTable[] = {
    {4, 6, 9, 15, 6},
    {4, 5, 7, 9, 5},
    {4, 4, 5, 7, 3},
    {4, 3, 4, 3, 1},
    {5, 4, 12, 9, 1},
    {5, 3, 7, 4, 3},
    {6, 3, 11, 7, 5},
    {7, 3, 18, 9, 3},
};

inline constexpr std::size_t kDeltaTableSize =
    sizeof(kDeltaTable) / sizeof(kDeltaTable[0]);

// The four nodal systems whose dimension exceeds the naive count.
struct DefectiveSystem {
  long d;
  long n;
  long l;
  long actual_dim;
};

inline constexpr DefectiveSystem kDefectiveSystems[] = {
    {3, 4, 7, 0},
    {4, 2, 5, 0},
    {4, 3, 9, 0},
    {4, 4, 14, 0},
};

inline constexpr std::size_t kDefectiveSystemsSize =
    sizeof(kDefectiveSystems) / sizeof(kDefectiveSystems[0]);

// Spot verdicts for canonical-form uniqueness at low n.  s is the summand
// count when the verdict is "unique", otherwise 0.
struct UniquenessSpot {
  long d;
  long n;
  UniqTag tag;
  long s;
};

inline constexpr UniquenessSpot kUniquenessSpots[] = {
    {3, 1, UniqTag::unique, 2},
    {5, 1, UniqTag::unique, 3},
    {7, 1, UniqTag::unique, 4},
    {9, 1, UniqTag::unique, 5},
    {4, 1, UniqTag::no_canonical_form, 0},
    {6, 1, UniqTag::no_canonical_form, 0},
    {3, 2, UniqTag::no_canonical_form, 0},
    {4, 2, UniqTag::not_unique, 0},
    {5, 2, UniqTag::unique, 7},
    {6, 2, UniqTag::no_canonical_form, 0},
    {7, 2, UniqTag::not_unique, 0},
    {3, 3, UniqTag::unique, 5},
    {4, 3, UniqTag::no_canonical_form, 0},
    {5, 3, UniqTag::not_unique, 0},
    {6, 3, UniqTag::not_unique, 0},
    {7, 3, UniqTag::not_unique, 0},
};

inline constexpr std::size_t kUniquenessSpotsSize =
    sizeof(kUniquenessSpots) / sizeof(kUniquenessSpots[0]);

}  // namespace nodal::golden
