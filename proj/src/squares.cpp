#include "segre/squares.hpp"

#include <optional>
#include <string>

#include "segre/error.hpp"

namespace segre {

const char* to_string(SquareCase kind) {
  switch (kind) {
    case SquareCase::kGeneric: return "generic";
    case SquareCase::kScaledRow: return "scaled-row";
    case SquareCase::kScaledColumn: return "scaled-column";
    case SquareCase::kScaledBoth: return "scaled-both";
  }
  return "unknown";
}

namespace {

void require_simple(const TensorSpaceInstance& inst, const Vector& v, const char* name) {
  if (v.size() != inst.dim()) throw DimensionMismatch(std::string("square: length mismatch for ") + name);
  if (!inst.is_simple(v)) throw PreconditionViolated(std::string("square: ") + name + " is not simple");
}

SquareCompletion scaled(const Vector& d, SquareCase kind) {
  SquareCompletion out;
  out.d = d;
  out.kind = kind;
  if (d.is_zero()) {
    out.t = 0;
  } else {
    Vector u = d.normalized();
    out.t = d[u.leading_index()];
  }
  return out;
}

}  // namespace

bool is_square(const TensorSpaceInstance& inst, const Square& sq) {
  for (const Vector* v : {&sq.a, &sq.b, &sq.c, &sq.d})
    if (v->size() != inst.dim()) throw DimensionMismatch("is_square: length mismatch");
  if (sq.a.is_zero()) return false;
  for (const Vector* v : {&sq.a, &sq.b, &sq.c, &sq.d})
    if (!inst.is_simple(*v)) return false;

  auto lambda = proportionality(sq.a, sq.c);
  auto mu = proportionality(sq.a, sq.b);
  if (lambda && mu) return sq.d == (*lambda * *mu) * sq.a;
  if (lambda) return sq.d == *lambda * sq.b;
  if (mu) return sq.d == *mu * sq.c;

  if (sq.d.is_zero()) return false;
  return same_sheet(inst, sq.a, sq.c) && same_sheet(inst, sq.b, sq.d) && same_sheet(inst, sq.a, sq.b) &&
         same_sheet(inst, sq.c, sq.d) && !same_sheet(inst, sq.b, sq.c) &&
         inst.is_simple(sq.a + sq.b + sq.c + sq.d);
}

SquareCompletion complete_square(const TensorSpaceInstance& inst, const Vector& a, const Vector& b, const Vector& c,
                                 TangentCache* cache) {
  require_simple(inst, a, "a");
  require_simple(inst, b, "b");
  require_simple(inst, c, "c");
  if (a.is_zero()) throw PreconditionViolated("complete_square: a must be nonzero");
  if (!same_sheet(inst, a, b) || !same_sheet(inst, a, c))
    throw PreconditionViolated("complete_square: a must share a sheet with b and with c");

  auto lambda = proportionality(a, c);
  auto mu = proportionality(a, b);
  if (lambda && mu) return scaled((*lambda * *mu) * a, SquareCase::kScaledBoth);
  if (lambda) return scaled(*lambda * b, SquareCase::kScaledRow);
  if (mu) return scaled(*mu * c, SquareCase::kScaledColumn);
  if (same_sheet(inst, b, c)) throw PreconditionViolated("complete_square: b and c share a sheet");

  auto [r1, r2] = cross_rays(inst, b, c, cache);
  const Ray a_ray(a);
  const Vector* u = nullptr;
  if (r1 == a_ray) u = &r2.generator();
  else if (r2 == a_ray) u = &r1.generator();
  if (u == nullptr) throw Degenerate("complete_square: ray of a is not a cross ray of b and c");

  // Q(s + t u) = Q(s) + 2 t B(s, u) since Q(u) = 0.
  IntegerImage s = IntegerImage::of(a + b + c);
  IntegerImage w = IntegerImage::of(*u);
  std::optional<Scalar> t;
  bool any_coefficient = false;
  for (const auto& q : inst.quadrics()) {
    Integer constant = q.quadratic(s.z) * w.scale;
    Integer coefficient = 2 * q.bilinear(s.z, w.z) * s.scale;
    if (sgn(coefficient) == 0) {
      if (sgn(constant) != 0) throw Inconsistent("complete_square: no scale makes the total simple");
      continue;
    }
    any_coefficient = true;
    Scalar candidate(-constant, coefficient);
    candidate.canonicalize();
    if (t && *t != candidate) throw Inconsistent("complete_square: quadrics disagree on the scale");
    t = candidate;
  }
  if (!any_coefficient) throw Degenerate("complete_square: scale is undetermined");

  SquareCompletion out;
  out.t = *t;
  out.d = *t * *u;
  out.kind = SquareCase::kGeneric;
  return out;
}

}  // namespace segre
