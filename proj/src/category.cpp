#include "segre/category.hpp"

#include "segre/error.hpp"

namespace segre {

namespace {

Vector quadric_coordinates(const Matrix& gram) {
  const std::size_t n = gram.rows();
  Vector out(n * (n + 1) / 2);
  std::size_t p = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) out[p++] = gram(i, j);
  return out;
}

/// vec(X) -> vec(X^T) for X of shape rows x cols.
Matrix transpose_permutation(std::size_t rows, std::size_t cols) {
  Matrix p(rows * cols, rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) p(j * rows + i, i * cols + j) = 1;
  return p;
}

Matrix coordinates_in(const std::vector<Vector>& basis, const std::vector<Vector>& vectors, std::size_t ambient) {
  Matrix b = Matrix::from_columns(basis, ambient);
  std::vector<Vector> columns;
  for (const auto& v : vectors) {
    auto x = solve_linear(b, v);
    if (!x) throw SheetNotPreserved("vector leaves the target sheet");
    columns.push_back(std::move(*x));
  }
  return Matrix::from_columns(columns, basis.size());
}

std::vector<Vector> apply_all(const Matrix& map, const std::vector<Vector>& vs) {
  std::vector<Vector> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(map * v);
  return out;
}

bool columns_in(const Matrix& cols, const Sheet& sheet) {
  for (std::size_t j = 0; j < cols.cols(); ++j)
    if (!sheet.contains(cols.col(j))) return false;
  return true;
}

}  // namespace

TvecMorphism tensor_on_morphisms(const TensorSpaceInstance& a, const TensorSpaceInstance& b,
                                 const VecPairMorphism& pm) {
  const FactorShape& shape = a.shape();
  if (!(b.shape() == shape)) throw DimensionMismatch("tensor_on_morphisms: instances have different shapes");
  if (pm.g.rows() != shape.m || pm.g.cols() != shape.m || pm.h.rows() != shape.n || pm.h.cols() != shape.n)
    throw DimensionMismatch("tensor_on_morphisms: (g, h) does not match the shape");
  if (rank(pm.g) != shape.m || rank(pm.h) != shape.n)
    throw PreconditionViolated("tensor_on_morphisms: g and h must be invertible");
  TvecMorphism f{&a, &b, b.hidden().scramble * kron(pm.g, pm.h) * a.hidden().scramble_inverse};
  f.certified = is_tvec_morphism(f);
  return f;
}

bool is_tvec_morphism(const TvecMorphism& f) {
  const std::size_t n = f.source->dim();
  if (f.target->dim() != n || f.map.rows() != n || f.map.cols() != n) return false;
  if (rank(f.map) != n) return false;

  const std::size_t width = n * (n + 1) / 2;
  Matrix source(f.source->quadrics().size(), width), pulled(f.target->quadrics().size(), width);
  for (std::size_t k = 0; k < f.source->quadrics().size(); ++k) {
    Vector q = quadric_coordinates(f.source->quadrics()[k].gram());
    for (std::size_t j = 0; j < width; ++j) source(k, j) = q[j];
  }
  const Matrix map_t = f.map.transpose();
  for (std::size_t k = 0; k < f.target->quadrics().size(); ++k) {
    Vector q = quadric_coordinates(map_t * f.target->quadrics()[k].gram() * f.map);
    for (std::size_t j = 0; j < width; ++j) pulled(k, j) = q[j];
  }
  return Subspace::row_space(source) == Subspace::row_space(pulled);
}

TvecMorphism compose(const TvecMorphism& second, const TvecMorphism& first) {
  if (first.target->dim() != second.source->dim()) throw DimensionMismatch("compose: morphisms do not chain");
  return TvecMorphism{first.source, second.target, second.map * first.map, first.certified && second.certified};
}

VecPairMorphism compose(const VecPairMorphism& second, const VecPairMorphism& first) {
  return VecPairMorphism{second.g * first.g, second.h * first.h};
}

TvecMorphism swap_morphism(const TensorSpaceInstance& a, const TensorSpaceInstance& b) {
  const FactorShape& shape = a.shape();
  if (shape.m != shape.n || !(b.shape() == shape)) throw DimensionMismatch("swap_morphism: needs equal square shapes");
  TvecMorphism f{&a, &b,
                 b.hidden().scramble * transpose_permutation(shape.m, shape.n) * a.hidden().scramble_inverse};
  f.certified = is_tvec_morphism(f);
  return f;
}

PointedSheets D_on_objects(const Reconstruction& recon) { return PointedSheets{recon.W1, recon.W2, recon.w0}; }

SheetMorphism D_on_morphism(const TvecMorphism& f, const Reconstruction& source, const Reconstruction& target,
                            bool require_pointed) {
  const std::size_t n = source.instance.dim();
  if (f.map.cols() != n || f.map.rows() != target.instance.dim())
    throw DimensionMismatch("D_on_morphism: map does not fit the reconstructions");
  if (require_pointed && f.map * source.w0 != target.w0)
    throw PreconditionViolated("D_on_morphism: F does not carry base point to base point");

  std::vector<Vector> image_e = apply_all(f.map, source.basis_e);
  std::vector<Vector> image_f = apply_all(f.map, source.basis_f);
  Subspace span_e = Subspace::span(n, image_e), span_f = Subspace::span(n, image_f);

  SheetMorphism out;
  if (span_e == target.W1.subspace && span_f == target.W2.subspace) {
    out.crossed = false;
  } else if (span_e == target.W2.subspace && span_f == target.W1.subspace) {
    out.crossed = true;
  } else {
    throw SheetNotPreserved("D_on_morphism: image of a sheet is not a target sheet");
  }
  out.f1 = coordinates_in(out.crossed ? target.basis_f : target.basis_e, image_e, n);
  out.f2 = coordinates_in(out.crossed ? target.basis_e : target.basis_f, image_f, n);
  return out;
}

SheetMorphism compose(const SheetMorphism& second, const SheetMorphism& first) {
  SheetMorphism out;
  out.crossed = first.crossed != second.crossed;
  out.f1 = (first.crossed ? second.f2 : second.f1) * first.f1;
  out.f2 = (first.crossed ? second.f1 : second.f2) * first.f2;
  return out;
}

TensorSpaceInstance pointed_target(const TensorSpaceInstance& b, const Vector& alpha0, const Vector& beta0) {
  return b.with_base_point(embed_simple(b, alpha0, beta0));
}

PsiLegs build_psi(const TensorSpaceInstance& inst, const Vector& alpha0, const Vector& beta0) {
  const std::size_t m = inst.shape().m, n = inst.shape().n;
  std::vector<Vector> leg1, leg2;
  for (std::size_t i = 0; i < m; ++i) leg1.push_back(embed_simple(inst, Vector::unit(m, i), beta0));
  for (std::size_t k = 0; k < n; ++k) leg2.push_back(embed_simple(inst, alpha0, Vector::unit(n, k)));
  return PsiLegs{Matrix::from_columns(leg1, inst.dim()), Matrix::from_columns(leg2, inst.dim())};
}

bool psi_commutes(const PsiLegs& source_psi, const PsiLegs& target_psi, const VecPairMorphism& pm,
                  const SheetMorphism& d, const Reconstruction& source, const Reconstruction& target) {
  const std::size_t n = source.instance.dim();
  auto leg_commutes = [&](const Matrix& leg_s, const Matrix& leg_t, const Matrix& factor_map) {
    int sheet_s;
    if (columns_in(leg_s, source.W1)) sheet_s = 0;
    else if (columns_in(leg_s, source.W2)) sheet_s = 1;
    else return false;
    const bool target_first = (sheet_s == 0) != d.crossed;
    const Sheet& sheet_t = target_first ? target.W1 : target.W2;
    if (!columns_in(leg_t, sheet_t)) return false;

    const Matrix& restricted = sheet_s == 0 ? d.f1 : d.f2;
    Matrix in_source = coordinates_in(sheet_s == 0 ? source.basis_e : source.basis_f, leg_s.transpose().row_vectors(), n);
    Matrix in_target = coordinates_in(target_first ? target.basis_e : target.basis_f, leg_t.transpose().row_vectors(), n);
    return restricted * in_source == in_target * factor_map;
  };
  return leg_commutes(source_psi.leg1, target_psi.leg1, pm.g) && leg_commutes(source_psi.leg2, target_psi.leg2, pm.h);
}

bool check_psi_naturality(const TensorSpaceInstance& a, const TensorSpaceInstance& b, const VecPairMorphism& pm,
                          std::uint64_t seed) {
  if (!a.base_point()) throw PreconditionViolated("check_psi_naturality: source must be pointed");
  auto factors = a.hidden().factor(*a.base_point());
  const Vector& alpha0 = factors->first;
  const Vector& beta0 = factors->second;
  TensorSpaceInstance b_pointed = pointed_target(b, pm.g * alpha0, pm.h * beta0);

  TvecMorphism f = tensor_on_morphisms(a, b_pointed, pm);
  if (!f.certified) return false;
  Rng rng(seed);
  Reconstruction source = recover_factors(a, rng);
  Reconstruction target = recover_factors(b_pointed, rng);
  SheetMorphism d;
  try {
    d = D_on_morphism(f, source, target);
  } catch (const SheetNotPreserved&) {
    return false;
  }
  return psi_commutes(build_psi(a, alpha0, beta0), build_psi(b_pointed, pm.g * alpha0, pm.h * beta0), pm, d, source,
                      target);
}

PhiNaturality check_phi_naturality(const TvecMorphism& f, const Reconstruction& source, const Reconstruction& target,
                                   bool pointed) {
  SheetMorphism d = D_on_morphism(f, source, target, pointed);
  Matrix lifted = kron(d.f1, d.f2);
  if (d.crossed) lifted = transpose_permutation(d.f1.rows(), d.f2.rows()) * lifted;
  Matrix lhs = f.map * source.phi;
  Matrix rhs = target.phi * lifted;

  PhiNaturality out;
  out.crossed = d.crossed;
  out.kappa = proportionality(rhs.flatten(), lhs.flatten());
  out.holds = out.kappa && sgn(*out.kappa) != 0 && (!pointed || *out.kappa == 1);
  return out;
}

bool gl1_demo(const TensorSpaceInstance& a, const TensorSpaceInstance& b, const VecPairMorphism& pm,
              const Scalar& lambda) {
  if (sgn(lambda) == 0) throw PreconditionViolated("gl1_demo: lambda must be nonzero");
  VecPairMorphism rescaled{lambda * pm.g, (Scalar(1) / lambda) * pm.h};
  bool same_image = tensor_on_morphisms(a, b, pm).map == tensor_on_morphisms(a, b, rescaled).map;
  bool distinct_pairs = rescaled.g != pm.g || rescaled.h != pm.h;
  return same_image && (lambda == 1 || distinct_pairs);
}

}  // namespace segre
