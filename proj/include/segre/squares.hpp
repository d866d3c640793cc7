#pragma once

// Simple squares
//
//     a  b
//     c  d
//
// a, c share a sheet of one foliation and b, d the same foliation; a, b share
// a sheet of the other foliation and c, d likewise. In the generic case the
// total a+b+c+d is simple; when c = λa or b = μa the square instead has the
// forms (a, b; λa, λb), (a, μa; c, μc) or (a, μa; λa, λμa).

#include "segre/foliation.hpp"
#include "segre/ratlin.hpp"
#include "segre/tensor_space.hpp"

namespace segre {

struct Square {
  Vector a, b, c, d;
};

enum class SquareCase {
  kGeneric,
  kScaledRow,     // c = λa, d = λb
  kScaledColumn,  // b = μa, d = μc
  kScaledBoth,    // b = μa, c = λa, d = λμa
};

const char* to_string(SquareCase kind);

struct SquareCompletion {
  Vector d;
  /// d = t * u with u the canonical generator of the ray of d.
  Scalar t;
  SquareCase kind = SquareCase::kGeneric;
};

bool is_square(const TensorSpaceInstance& inst, const Square& sq);

/// The unique d completing (a, b; c, d). The ray of d is the second simple
/// ray of T_b ∩ T_c (the first is the ray of a) and its scale is the single
/// t solving Q_k(a+b+c) + 2 t B_k(a+b+c, u) = 0 for every quadric.
/// Throws PreconditionViolated, Inconsistent or Degenerate.
SquareCompletion complete_square(const TensorSpaceInstance& inst, const Vector& a, const Vector& b, const Vector& c,
                                 TangentCache* cache = nullptr);

}  // namespace segre
