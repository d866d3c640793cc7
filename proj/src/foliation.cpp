#include "segre/foliation.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <vector>

#include "segre/error.hpp"
#include "segre/squares.hpp"

namespace segre {

Ray::Ray(const Vector& v) : generator_(v.normalized()) {
  if (v.is_zero()) throw ZeroVector("ray: zero vector spans no ray");
}

bool Ray::contains(const Vector& v) const {
  return v.size() == generator_.size() && (v.is_zero() || v.normalized() == generator_);
}

Sheet certify_sheet(const TensorSpaceInstance& inst, Subspace u) {
  if (!subspace_in_S(inst, u)) throw NotSimple("subspace is not contained in S");
  return Sheet{std::move(u), true};
}

namespace {

Vector to_vector(const std::vector<Integer>& z) {
  Vector v(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) v[i] = z[i];
  return v;
}

Integer int_dot(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  return s;
}

void require_simple_nonzero(const TensorSpaceInstance& inst, const Vector& v, const char* what) {
  if (v.size() != inst.dim()) throw DimensionMismatch(std::string(what) + ": length mismatch");
  if (v.is_zero()) throw ZeroVector(std::string(what) + ": vector is zero");
  if (!inst.is_simple(v)) throw NotSimple(std::string(what) + ": vector is not simple");
}

Subspace compute_annihilator(const TensorSpaceInstance& inst, const Vector& v) {
  inst.note_linearization();
  IntegerImage img = IntegerImage::of(v);
  Matrix rows(inst.quadrics().size(), inst.dim());
  for (std::size_t k = 0; k < inst.quadrics().size(); ++k) {
    auto d = inst.quadrics()[k].polar_direction(img);
    for (std::size_t j = 0; j < d.size(); ++j)
      if (sgn(d[j]) != 0) rows(k, j) = d[j];
  }
  return Subspace::row_space(rows);
}

}  // namespace

const Subspace& TangentCache::annihilator(const Vector& v) {
  Vector key = v.normalized();
  auto it = memo_.find(key);
  if (it == memo_.end()) it = memo_.emplace(key, compute_annihilator(*inst_, v)).first;
  return it->second;
}

bool subspace_in_S(const TensorSpaceInstance& inst, const Subspace& u) {
  if (u.ambient_dim() != inst.dim()) throw DimensionMismatch("subspace_in_S: ambient mismatch");
  inst.note_linearization();
  std::vector<IntegerImage> basis;
  for (const auto& b : u.basis_vectors()) basis.push_back(IntegerImage::of(b));
  for (const auto& q : inst.quadrics()) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      auto pd = q.polar_direction(basis[i]);
      for (std::size_t j = i; j < basis.size(); ++j)
        if (sgn(int_dot(pd, basis[j].z)) != 0) return false;
    }
  }
  return true;
}

Subspace tangent_space(const TensorSpaceInstance& inst, const Vector& v) {
  require_simple_nonzero(inst, v, "tangent_space");
  return kernel(compute_annihilator(inst, v).basis());
}

std::pair<Ray, Ray> cross_rays(const TensorSpaceInstance& inst, const Vector& v, const Vector& s,
                               TangentCache* cache) {
  require_simple_nonzero(inst, v, "cross_rays");
  require_simple_nonzero(inst, s, "cross_rays");
  std::optional<TangentCache> local;
  if (cache == nullptr) cache = &local.emplace(inst);

  const Subspace& ann_v = cache->annihilator(v);
  const Subspace& ann_s = cache->annihilator(s);
  Subspace plane = kernel(vstack(ann_v.basis(), ann_s.basis()));
  if (plane.dim() != 2) throw Degenerate("cross_rays: tangent spaces do not meet in a plane");

  IntegerImage z1 = IntegerImage::of(plane.basis().row(0));
  IntegerImage z2 = IntegerImage::of(plane.basis().row(1));

  // Restrict each quadric to the plane: A x^2 + 2 B x y + C y^2 in the basis
  // (z1, z2). The common zero locus is two rays exactly when all nonzero
  // restrictions share a quadratic factor, i.e. are pairwise proportional.
  std::optional<std::array<Integer, 3>> form;
  for (const auto& q : inst.quadrics()) {
    std::array<Integer, 3> f{q.quadratic(z1.z), q.bilinear(z1.z, z2.z), q.quadratic(z2.z)};
    if (sgn(f[0]) == 0 && sgn(f[1]) == 0 && sgn(f[2]) == 0) continue;
    if (!form) {
      form = f;
      continue;
    }
    const auto& g = *form;
    if (g[0] * f[1] != g[1] * f[0] || g[0] * f[2] != g[2] * f[0] || g[1] * f[2] != g[2] * f[1])
      throw Degenerate("cross_rays: restricted quadrics have no common quadratic factor");
  }
  if (!form) throw Degenerate("cross_rays: every quadric vanishes on the plane");

  const auto& [a, b, c] = *form;
  std::array<std::pair<Integer, Integer>, 2> roots;
  if (sgn(a) == 0) {
    // y (2 b x + c y)
    if (sgn(b) == 0) throw Degenerate("cross_rays: repeated root");
    roots = {std::make_pair(Integer(1), Integer(0)), std::make_pair(Integer(-c), Integer(2 * b))};
  } else {
    Integer disc = b * b - a * c;
    if (sgn(disc) <= 0) throw Degenerate("cross_rays: no two distinct real roots");
    auto r = integer_sqrt_exact(disc);
    if (!r) throw Degenerate("cross_rays: roots are irrational");
    roots = {std::make_pair(Integer(-b + *r), a), std::make_pair(Integer(-b - *r), a)};
  }

  Vector g1 = to_vector(z1.z), g2 = to_vector(z2.z);
  auto ray_at = [&](const std::pair<Integer, Integer>& xy) { return Ray(Scalar(xy.first) * g1 + Scalar(xy.second) * g2); };
  Ray r1 = ray_at(roots[0]), r2 = ray_at(roots[1]);
  if (r2 < r1) std::swap(r1, r2);
  return {r1, r2};
}

bool same_sheet(const TensorSpaceInstance& inst, const Vector& x, const Vector& y) { return inst.is_simple(x + y); }

SheetPair sheets_through(const TensorSpaceInstance& inst, const Vector& v, Rng& rng, std::size_t max_samples) {
  require_simple_nonzero(inst, v, "sheets_through");
  if (inst.quadrics().empty()) throw TrivialShape("sheets_through: S is all of V, so there is no foliation");

  const std::size_t ambient = inst.dim();
  TangentCache cache(inst);
  const std::size_t dim_sum = ambient - cache.annihilator(v).dim() + 1;  // m + n
  const std::size_t budget = max_samples ? max_samples : 64 * dim_sum;

  SheetPair out;
  out.through = v;
  std::optional<Subspace> bucket[2];
  Vector anchor[2];

  auto absorb = [&](int which, const Ray& r) {
    if (!bucket[which]->contains(r.generator())) bucket[which] = sum(*bucket[which], r.subspace());
  };

  while (out.samples_used < budget) {
    Vector s = inst.sample_simple(rng);
    ++out.samples_used;
    std::optional<std::pair<Ray, Ray>> rays;
    try {
      rays = cross_rays(inst, v, s, &cache);
    } catch (const Degenerate&) {
      continue;
    }
    const Ray& r1 = rays->first;
    const Ray& r2 = rays->second;

    if (!bucket[0]) {
      bucket[0] = Subspace::span(ambient, {v, r1.generator()});
      bucket[1] = Subspace::span(ambient, {v, r2.generator()});
      anchor[0] = r1.generator();
      anchor[1] = r2.generator();
    } else {
      bool r1_in[2] = {same_sheet(inst, r1.generator(), anchor[0]), same_sheet(inst, r1.generator(), anchor[1])};
      bool r2_in[2] = {same_sheet(inst, r2.generator(), anchor[0]), same_sheet(inst, r2.generator(), anchor[1])};
      if (r1_in[0] && !r1_in[1] && r2_in[1] && !r2_in[0]) {
        absorb(0, r1);
        absorb(1, r2);
      } else if (r1_in[1] && !r1_in[0] && r2_in[0] && !r2_in[1]) {
        absorb(0, r2);
        absorb(1, r1);
      } else {
        continue;  // accidental proportionality; classification ambiguous
      }
    }

    const std::size_t d0 = bucket[0]->dim(), d1 = bucket[1]->dim();
    if (d0 + d1 > dim_sum || d0 * d1 > ambient) {
      bucket[0].reset();
      bucket[1].reset();
      ++out.restarts;
      continue;
    }
    if (d0 * d1 != ambient || d0 + d1 != dim_sum) continue;

    bool certified = subspace_in_S(inst, *bucket[0]) && subspace_in_S(inst, *bucket[1]) &&
                     intersect(*bucket[0], *bucket[1]) == Subspace::span(ambient, {v});
    if (!certified) {
      bucket[0].reset();
      bucket[1].reset();
      ++out.restarts;
      continue;
    }
    Sheet s0{std::move(*bucket[0]), true}, s1{std::move(*bucket[1]), true};
    bool keep = s0.dim() != s1.dim() ? s0.dim() > s1.dim() : !(s1.subspace < s0.subspace);
    out.first = keep ? std::move(s0) : std::move(s1);
    out.second = keep ? std::move(s1) : std::move(s0);
    return out;
  }
  throw RetryExhausted("sheets_through: sample budget exhausted");
}

bool same_foliation(const Sheet& m, const Sheet& n) {
  if (!m.certified || !n.certified) throw PreconditionViolated("same_foliation: sheets must be certified");
  if (m == n) return true;
  std::size_t d = intersect(m.subspace, n.subspace).dim();
  if (d >= 2) throw Malformed("same_foliation: sheets meet in more than a ray");
  return d == 0;
}

Vector transport(const TensorSpaceInstance& inst, const Sheet& m, const Sheet& mp, const Vector& v0,
                 const Vector& v0p, const Vector& v, TangentCache* cache) {
  if (v0.is_zero() || v0p.is_zero()) throw PreconditionViolated("transport: reference vectors must be nonzero");
  if (!m.contains(v0) || !m.contains(v)) throw PreconditionViolated("transport: v0 and v must lie in M");
  if (!mp.contains(v0p)) throw PreconditionViolated("transport: v0p must lie in M'");
  if (!same_foliation(m, mp)) throw PreconditionViolated("transport: M and M' lie in different foliations");
  if (!same_sheet(inst, v0, v0p)) throw PreconditionViolated("transport: v0p is not in the cross sheet through v0");
  if (v.is_zero()) return Vector(inst.dim());
  Vector image = complete_square(inst, v0, v0p, v, cache).d;
  if (!mp.contains(image)) throw Degenerate("transport: completed vector left M'");
  return image;
}

}  // namespace segre
