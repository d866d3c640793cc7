#pragma once

// Sheets (maximal linear subspaces of S) and the two foliations they form.
// Everything here consults the instance only through its quadrics, its
// membership oracle and its sampler.

#include <cstddef>
#include <map>
#include <utility>

#include "segre/random.hpp"
#include "segre/ratlin.hpp"
#include "segre/tensor_space.hpp"

namespace segre {

class Ray {
 public:
  /// The ray spanned by a nonzero vector.
  explicit Ray(const Vector& v);

  /// Canonical generator: the first nonzero coordinate is 1.
  const Vector& generator() const { return generator_; }
  Subspace subspace() const { return Subspace::span(generator_.size(), {generator_}); }
  bool contains(const Vector& v) const;

  friend bool operator==(const Ray& a, const Ray& b) { return a.generator_ == b.generator_; }
  friend bool operator<(const Ray& a, const Ray& b) { return a.generator_ < b.generator_; }

 private:
  Vector generator_;
};

struct Sheet {
  Subspace subspace;
  bool certified = false;

  std::size_t dim() const { return subspace.dim(); }
  bool contains(const Vector& v) const { return subspace.contains(v); }
  friend bool operator==(const Sheet& a, const Sheet& b) { return a.subspace == b.subspace; }
};

/// Runs subspace_in_S and marks the result; throws NotSimple if U leaves S.
Sheet certify_sheet(const TensorSpaceInstance& inst, Subspace u);

struct SheetPair {
  Sheet first;
  Sheet second;
  Vector through;
  std::size_t samples_used = 0;
  std::size_t restarts = 0;
};

/// Memo of tangent-space annihilators keyed by ray. One cache serves one
/// instance and one thread.
class TangentCache {
 public:
  explicit TangentCache(const TensorSpaceInstance& inst) : inst_(&inst) {}
  const TensorSpaceInstance& instance() const { return *inst_; }
  /// Row space of the linear forms w -> B_k(v, w); its kernel is T_v.
  const Subspace& annihilator(const Vector& v);

 private:
  const TensorSpaceInstance* inst_;
  std::map<Vector, Subspace> memo_;
};

/// True iff every quadric vanishes identically on U, i.e. Q_k(b_i) = 0 and
/// B_k(b_i, b_j) = 0 for all basis vectors.
bool subspace_in_S(const TensorSpaceInstance& inst, const Subspace& u);

/// Kernel of w -> (B_k(v, w))_k at a nonzero simple v; dimension m + n - 1.
Subspace tangent_space(const TensorSpaceInstance& inst, const Vector& v);

/// The two rays of simple vectors in T_v ∩ T_s, in lexicographic order of
/// their canonical generators. Throws Degenerate when the intersection is not
/// a plane or its simple vectors are not exactly two distinct rational rays.
std::pair<Ray, Ray> cross_rays(const TensorSpaceInstance& inst, const Vector& v, const Vector& s,
                               TangentCache* cache = nullptr);

/// is_simple(x + y). Generically this means x and y share a sheet.
bool same_sheet(const TensorSpaceInstance& inst, const Vector& x, const Vector& y);

/// Discovers the two sheets through v by sampling. Ordered by dimension
/// (descending), then lexicographically by canonical basis.
/// max_samples == 0 selects the default budget 64 * (m + n).
SheetPair sheets_through(const TensorSpaceInstance& inst, const Vector& v, Rng& rng, std::size_t max_samples = 0);

/// Distinct sheets of one foliation are disjoint; sheets of different
/// foliations meet in a ray. Throws Malformed on a larger intersection.
bool same_foliation(const Sheet& m, const Sheet& n);

/// The linear map M -> M' carrying each ray M ∩ N to M' ∩ N, normalized by
/// v0 -> v0p, evaluated at v ∈ M.
Vector transport(const TensorSpaceInstance& inst, const Sheet& m, const Sheet& mp, const Vector& v0,
                 const Vector& v0p, const Vector& v, TangentCache* cache = nullptr);

}  // namespace segre
