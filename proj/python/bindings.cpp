#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "segre/error.hpp"
#include "segre/foliation.hpp"
#include "segre/io.hpp"
#include "segre/props.hpp"
#include "segre/reconstruct.hpp"
#include "segre/squares.hpp"

namespace py = pybind11;
using namespace segre;

namespace {

// Scalars cross the boundary as fractions.Fraction; ints and "p/q" strings
// are accepted on input.
Scalar to_scalar(const py::handle& h) { return parse_scalar(std::string(py::str(h))); }

py::object from_scalar(const Scalar& s) {
  return py::module_::import("fractions").attr("Fraction")(to_string(s));
}

Vector to_vector(const py::sequence& seq) {
  Vector v(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) v[i] = to_scalar(seq[i]);
  return v;
}

py::list from_vector(const Vector& v) {
  py::list out;
  for (const auto& x : v) out.append(from_scalar(x));
  return out;
}

py::list from_matrix(const Matrix& m) {
  py::list out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.append(from_vector(m.row(i)));
  return out;
}

py::object from_json(const io::Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

}  // namespace

PYBIND11_MODULE(_segre, m) {
  m.doc() = "Recover tensor-product factors from the cone of simple vectors";

  py::register_exception<Error>(m, "Error");

  py::class_<TensorSpaceInstance>(m, "Instance")
      .def_static("generate", [](std::size_t mm, std::size_t n, std::uint64_t seed,
                                 bool pointed) { return TensorSpaceInstance::generate({mm, n}, seed, pointed); },
                  py::arg("m"), py::arg("n"), py::arg("seed") = 1, py::arg("pointed") = false)
      .def_static("from_json", [](const std::string& text) {
        io::Json j;
        try {
          j = io::Json::parse(text);
        } catch (const nlohmann::json::exception& e) {
          throw ParseError(e.what());
        }
        return io::instance_from_json(j);
      })
      .def("to_json", [](const TensorSpaceInstance& inst) { return io::dump(io::instance_to_json(inst)); })
      .def_property_readonly("shape", [](const TensorSpaceInstance& inst) {
        return py::make_tuple(inst.shape().m, inst.shape().n);
      })
      .def_property_readonly("dim", &TensorSpaceInstance::dim)
      .def_property_readonly("quadric_count", [](const TensorSpaceInstance& inst) { return inst.quadrics().size(); })
      .def_property_readonly("base_point", [](const TensorSpaceInstance& inst) -> py::object {
        if (!inst.base_point()) return py::none();
        return from_vector(*inst.base_point());
      })
      .def("is_simple", [](const TensorSpaceInstance& inst, const py::sequence& v) { return inst.is_simple(to_vector(v)); })
      .def("sample_simple", [](const TensorSpaceInstance& inst, std::uint64_t seed) {
        Rng rng(seed);
        return from_vector(inst.sample_simple(rng));
      }, py::arg("seed"))
      .def("embed", [](const TensorSpaceInstance& inst, const py::sequence& a, const py::sequence& b) {
        return from_vector(embed_simple(inst, to_vector(a), to_vector(b)));
      }, "Test-oracle embedding alpha ⊗ beta through the concealed factorization.")
      .def("tangent_dim", [](const TensorSpaceInstance& inst, const py::sequence& v) {
        return tangent_space(inst, to_vector(v)).dim();
      });

  py::class_<Reconstruction>(m, "Reconstruction")
      .def_property_readonly("w0", [](const Reconstruction& r) { return from_vector(r.w0); })
      .def_property_readonly("sheet_dims", [](const Reconstruction& r) { return py::make_tuple(r.W1.dim(), r.W2.dim()); })
      .def_property_readonly("trivial", [](const Reconstruction& r) { return r.trivial; })
      .def_property_readonly("basis_e", [](const Reconstruction& r) {
        py::list out;
        for (const auto& v : r.basis_e) out.append(from_vector(v));
        return out;
      })
      .def_property_readonly("basis_f", [](const Reconstruction& r) {
        py::list out;
        for (const auto& v : r.basis_f) out.append(from_vector(v));
        return out;
      })
      .def_property_readonly("phi", [](const Reconstruction& r) { return from_matrix(r.phi); })
      .def("bar_tensor", [](const Reconstruction& r, const py::sequence& w1, const py::sequence& w2) {
        return from_vector(bar_tensor(r, to_vector(w1), to_vector(w2)));
      })
      .def("factorize", [](const Reconstruction& r, const py::sequence& v) {
        auto [w1, w2] = factorize_simple(r, to_vector(v));
        return py::make_tuple(from_vector(w1), from_vector(w2));
      })
      .def("tensor_rank", [](const Reconstruction& r, const py::sequence& v) { return tensor_rank(r, to_vector(v)); })
      .def("verify", [](const Reconstruction& r) { return from_json(io::report_to_json(verify_round_trip(r.instance, r))); });

  m.def("recover_factors", [](const TensorSpaceInstance& inst, std::uint64_t seed, std::optional<py::sequence> w0) {
    Rng rng(seed);
    std::optional<Vector> base;
    if (w0) base = to_vector(*w0);
    return recover_factors(inst, rng, base);
  }, py::arg("instance"), py::arg("seed") = 1, py::arg("w0") = py::none());

  m.def("complete_square", [](const TensorSpaceInstance& inst, const py::sequence& a, const py::sequence& b,
                              const py::sequence& c) {
    SquareCompletion done = complete_square(inst, to_vector(a), to_vector(b), to_vector(c));
    return py::make_tuple(from_vector(done.d), from_scalar(done.t), to_string(done.kind));
  });

  m.def("run_props", [](const std::string& suite, std::size_t trials, std::uint64_t seed) {
    SuiteOptions options;
    options.trials = trials;
    options.seed = seed;
    std::vector<PropertyResult> results;
    {
      py::gil_scoped_release release;
      results = run_suite(suite, options);
    }
    return from_json(results_to_json(results));
  }, py::arg("suite") = "all", py::arg("trials") = 10, py::arg("seed") = 1);
}
