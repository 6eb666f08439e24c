#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <gpd/json_io.hpp>
#include <gpd/version.hpp>

namespace py = pybind11;
using namespace gpd;

namespace {

struct PyAlgebra {
    std::shared_ptr<const Algebra> a;
};

struct PyModule {
    Rep rep;
};

struct PyComplex {
    Complex c;
};

struct PyBimodule {
    Bimodule b;
};

std::string gp_status_str(GPVerdict::Status s) {
    switch (s) {
        case GPVerdict::Status::Yes: return "yes";
        case GPVerdict::Status::No: return "no";
        default: return "unknown";
    }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact homological workbench for bound quiver algebras";
    m.attr("__version__") = kToolVersion;

    py::register_exception<AlgebraError>(m, "AlgebraError");
    py::register_exception<RepError>(m, "RepError");
    py::register_exception<ComplexError>(m, "ComplexError");
    py::register_exception<DeformError>(m, "DeformError");
    py::register_exception<MoritaError>(m, "MoritaError");
    py::register_exception<IoError>(m, "IoError");

    py::class_<PyAlgebra>(m, "Algebra")
        .def_static("nakayama",
                    [](std::uint32_t p, int n, std::vector<int> c) {
                        return PyAlgebra{Algebra::nakayama(Field(p), n, c)};
                    },
                    py::arg("characteristic"), py::arg("n"), py::arg("c"))
        .def_static("from_json",
                    [](const std::string& text) {
                        return PyAlgebra{algebra_from_json(json::parse(text))};
                    })
        .def_property_readonly("dim", [](const PyAlgebra& a) { return a.a->dim(); })
        .def_property_readonly("vertices", [](const PyAlgebra& a) { return a.a->vertices(); })
        .def_property_readonly("loewy_bound", [](const PyAlgebra& a) { return a.a->loewy_bound(); })
        .def("check", [](const PyAlgebra& a) { a.a->check(); })
        .def("opposite", [](const PyAlgebra& a) { return PyAlgebra{a.a->opposite()}; })
        .def_static("enveloping",
                    [](const PyAlgebra& a, const PyAlgebra& b) {
                        return PyAlgebra{Algebra::enveloping(a.a, b.a)};
                    })
        .def("to_json", [](const PyAlgebra& a) { return algebra_to_json(*a.a).dump(); });

    py::class_<PyModule>(m, "Module")
        .def_static("from_json",
                    [](const PyAlgebra& a, const std::string& text) {
                        return PyModule{module_from_json(json::parse(text), a.a)};
                    })
        .def_static("string",
                    [](const PyAlgebra& a, std::vector<std::string> word, int at) {
                        return PyModule{string_module(a.a, word, at)};
                    },
                    py::arg("algebra"), py::arg("word"), py::arg("at") = -1)
        .def_static("simple",
                    [](const PyAlgebra& a, int v) { return PyModule{simple_rep(a.a, v)}; })
        .def_static("projective",
                    [](const PyAlgebra& a, int v) {
                        return PyModule{indecomposable_projective(a.a, v)};
                    })
        .def_static("direct_sum",
                    [](const PyModule& x, const PyModule& y) {
                        return PyModule{direct_sum({x.rep, y.rep}).sum};
                    })
        .def_property_readonly("dims", [](const PyModule& v) { return v.rep.dims; })
        .def_property_readonly("total_dim", [](const PyModule& v) { return v.rep.total_dim(); })
        .def("to_json", [](const PyModule& v) { return module_to_json(v.rep).dump(); })
        .def("syzygy", [](const PyModule& v) { return PyModule{syzygy(v.rep)}; });

    m.def("hom_dim",
          [](const PyModule& a, const PyModule& b) { return hom_basis(a.rep, b.rep).dim(); });
    m.def("ext_dim",
          [](const PyModule& a, const PyModule& b, int i) { return ext_dim(a.rep, b.rep, i); });
    m.def("stable_end_dim", [](const PyModule& a) { return stable_hom(a.rep, a.rep).dim; });
    m.def("tangent_dim", [](const PyModule& a) { return tangent_dim(a.rep); });
    m.def("is_isomorphic", [](const PyModule& a, const PyModule& b) {
        return iso_verdict(a.rep, b.rep, nullptr) == IsoVerdict::Iso;
    });
    m.def("is_projective_module", [](const PyModule& a) { return is_projective(a.rep); });
    m.def(
        "gorenstein_projective",
        [](const PyModule& a, int cutoff) {
            if (cutoff <= 0) cutoff = 2 * a.rep.alg->dim();
            GPVerdict v = is_gorenstein_projective(a.rep, cutoff);
            py::dict d;
            d["status"] = gp_status_str(v.status);
            d["reason"] = v.reason;
            d["period_start"] = v.period_start;
            d["period_len"] = v.period_len;
            return d;
        },
        py::arg("module"), py::arg("cutoff") = -1);
    m.def("decompose", [](const PyModule& a) {
        std::vector<std::pair<PyModule, int>> out;
        for (auto& [r, mult] : decompose(a.rep)) out.emplace_back(PyModule{r}, mult);
        return out;
    });
    m.def(
        "versal",
        [](const PyModule& a, int order) {
            VersalPresentation v = versal_presentation(a.rep, order);
            return versal_to_json(v).dump();
        },
        py::arg("module"), py::arg("order") = 4);
    m.def(
        "enumerate_deformation_classes",
        [](const PyModule& a, const std::string& ring_json) {
            ArtinAlgebra R = ring_from_json(json::parse(ring_json), a.rep.field());
            return enumerate_deformations(a.rep, R).size();
        },
        py::arg("module"), py::arg("ring_json"));

    py::class_<PyComplex>(m, "Complex")
        .def_static("stalk",
                    [](const PyModule& v, int degree) {
                        return PyComplex{stalk_complex(v.rep, degree)};
                    },
                    py::arg("module"), py::arg("degree") = 0)
        .def("shift", [](const PyComplex& c, int i) { return PyComplex{shift(c.c, i)}; })
        .def("cohomology_dims", [](const PyComplex& c) { return cohomology_dims(c.c); })
        .def("to_json", [](const PyComplex& c) { return complex_to_json(c.c).dump(); });

    m.def(
        "hom_derived_dim",
        [](const PyComplex& x, const PyComplex& y, int i) { return hom_derived_dim(x.c, y.c, i); },
        py::arg("x"), py::arg("y"), py::arg("i"));
    m.def(
        "hom_singularity_dim",
        [](const PyComplex& x, const PyComplex& y, int cutoff) {
            if (cutoff <= 0) cutoff = 2 * x.c.alg->dim();
            return hom_singularity_dim(x.c, y.c, cutoff);
        },
        py::arg("x"), py::arg("y"), py::arg("cutoff") = -1);
    m.def(
        "is_perfect",
        [](const PyComplex& x, int cutoff) {
            if (cutoff <= 0) cutoff = 2 * x.c.alg->dim();
            PerfectVerdict v = is_perfect(x.c, cutoff);
            return v.status == PerfectVerdict::Status::Yes
                       ? "yes"
                       : (v.status == PerfectVerdict::Status::No ? "no" : "unknown");
        },
        py::arg("x"), py::arg("cutoff") = -1);

    py::class_<PyBimodule>(m, "Bimodule")
        .def_static("identity", [](const PyAlgebra& a) { return PyBimodule{identity_bimodule(a.a)}; })
        .def_static("tensor_square",
                    [](const PyAlgebra& a) { return PyBimodule{tensor_square_bimodule(a.a)}; })
        .def_static("twisted_identity",
                    [](const PyAlgebra& a, std::vector<int> vperm, std::vector<int> aperm) {
                        return PyBimodule{twisted_identity_bimodule(a.a, vperm, aperm)};
                    })
        .def_static("direct_sum",
                    [](const PyBimodule& x, const PyBimodule& y) {
                        return PyBimodule{bimodule_direct_sum(x.b, y.b)};
                    })
        .def_property_readonly("total_dim", [](const PyBimodule& x) { return x.b.rep.total_dim(); })
        .def("tensor", [](const PyBimodule& x, const PyBimodule& y) {
            return PyBimodule{bimodule_tensor(x.b, y.b)};
        });

    m.def("transport", [](const PyBimodule& x, const PyModule& v) {
        return PyModule{transport_module(x.b, v.rep)};
    });
    m.def(
        "check_singular_equivalence",
        [](const PyBimodule& x, const PyBimodule& y, int cutoff) {
            if (cutoff <= 0) cutoff = 2 * x.b.left->dim();
            SingEquivReport r = check_singular_equivalence(x.b, y.b, cutoff);
            py::dict d;
            d["certified"] = r.certified();
            return d;
        },
        py::arg("x"), py::arg("y"), py::arg("cutoff") = -1);
    m.def(
        "verify_transport_invariance",
        [](const PyBimodule& x, const PyModule& v, int order) {
            return verify_transport_invariance(x.b, v.rep, order);
        },
        py::arg("x"), py::arg("v"), py::arg("order") = 4);
}
