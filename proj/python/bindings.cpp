// crownlab._core: matrices cross as complex128 numpy arrays.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "crownlab/checks.hpp"
#include "crownlab/errors.hpp"
#include "crownlab/growth.hpp"
#include "crownlab/iwasawa.hpp"
#include "crownlab/prinseries.hpp"
#include "crownlab/weights.hpp"

namespace py = pybind11;
using namespace crownlab;

namespace {

using CArray = py::array_t<cdouble, py::array::c_style | py::array::forcecast>;

ComplexMatrix to_matrix(const CArray& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw StructuralError("expected a square matrix");
  const auto n = static_cast<std::size_t>(a.shape(0));
  return ComplexMatrix(n, std::vector<cdouble>(a.data(), a.data() + n * n));
}

py::array_t<cdouble> to_array(const ComplexMatrix& m) {
  const auto n = static_cast<py::ssize_t>(m.dim());
  py::array_t<cdouble> out({n, n});
  std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
  return out;
}

PElement to_p(const CArray& x) { return PElement(to_matrix(x)); }

py::dict factors_dict(const IwasawaFactors& f) {
  py::dict d;
  d["kappa"] = to_array(f.kappa);
  d["H"] = f.H.entries;
  d["alpha"] = to_array(f.alpha());
  d["eta"] = to_array(f.eta);
  d["t"] = f.t;
  d["steps_used"] = f.steps_used;
  d["min_minor_magnitude"] = f.min_minor_magnitude;
  return d;
}

IwasawaFactors factors_from(const py::dict& d) {
  IwasawaFactors f;
  f.kappa = to_matrix(d["kappa"].cast<CArray>());
  f.H.entries = d["H"].cast<std::vector<cdouble>>();
  f.eta = to_matrix(d["eta"].cast<CArray>());
  return f;
}

ModeVector to_modes(const std::map<int, cdouble>& m) { return ModeVector(m); }

py::dict fit_dict(const BlowupFit& f) {
  py::dict d;
  d["N_hat"] = f.N_hat;
  d["logC_hat"] = f.logC_hat;
  d["r_squared"] = f.r_squared;
  d["t_window"] = f.t_window;
  d["points"] = f.points;
  return d;
}

py::dict cert_dict(const ScaleCertificate& c) {
  py::dict d;
  d["relation"] = c.relation;
  d["certified"] = c.certified;
  d["M"] = c.M;
  d["N"] = c.N;
  d["logC"] = c.logC;
  d["max_violation"] = c.max_violation;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Iwasawa decompositions on crown paths of SL(n)";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<StructuralError>(m, "StructuralError", base.ptr());
  auto domain = py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<NearSingularMinor>(m, "NearSingularMinor", domain.ptr());
  py::register_exception<DomainExit>(m, "DomainExit", domain.ptr());
  py::register_exception<BranchAmbiguity>(m, "BranchAmbiguity", domain.ptr());
  py::register_exception<FitError>(m, "FitError", domain.ptr());
  py::register_exception<OrderUndetermined>(m, "OrderUndetermined", domain.ptr());

  // numkernel
  m.def("principal_minors", [](const CArray& s) { return principal_minors(to_matrix(s)); });
  m.def("sym_ldl", [](const CArray& s) {
    const auto f = sym_ldl(to_matrix(s));
    return py::make_tuple(to_array(f.upper), f.d.entries);
  }, "S = N^T diag(D) N; returns (N, D)");
  m.def("sym_eig", [](const CArray& x) { return sym_eig(to_matrix(x)); });
  m.def("group_exp", [](const CArray& x, cdouble z) { return to_array(group_exp(to_matrix(x), z)); });
  m.def("singular_values", [](const CArray& g) { return singular_values(to_matrix(g)); });

  // liegroup
  m.def("rho", [](const CArray& x) { return rho(to_p(x)); });
  m.def("crown_contains", [](const CArray& x, double margin) { return crown_contains(to_p(x), margin); },
        py::arg("x"), py::arg("margin") = 0.0);
  m.def("boundary_direction", [](const CArray& x) { return to_array(boundary_direction(to_p(x)).matrix()); });
  m.def("random_boundary_direction", [](int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return to_array(random_boundary_direction(n, rng).matrix());
  }, py::arg("n"), py::arg("seed"));
  m.def("haar_so", [](int n, std::uint64_t seed) { return to_array(haar_so(n, seed)); }, py::arg("n"),
        py::arg("seed"));
  m.def("s_max", [](const CArray& g) { return s_max(to_matrix(g)); });

  // iwasawa
  m.def("decompose_real", [](const CArray& g) { return factors_dict(decompose_real(to_matrix(g))); });
  m.def("decompose_pointwise", [](const CArray& g) { return factors_dict(decompose_pointwise(to_matrix(g))); });
  m.def("domain_test", [](const CArray& g) {
    const auto r = domain_test(to_matrix(g));
    return py::make_tuple(r.inside, r.min_minor_magnitude);
  });
  m.def("decompose_path", [](const CArray& x, const CArray& k, double t) {
    return factors_dict(decompose_path(to_p(x), to_matrix(k), t));
  }, py::arg("x"), py::arg("k"), py::arg("t"), "Factors of exp(-i t x) k continued from t = 0");
  m.def("check_H_range", [](const py::dict& f, const CArray& x, double t) {
    const auto r = check_H_range(factors_from(f), to_p(x), t);
    return py::make_tuple(r.contained, r.violation);
  }, py::arg("factors"), py::arg("x"), py::arg("t"));

  // weights
  m.def("profile_norms", [](const CArray& k, int r) { return fundamental_profile(to_matrix(k), r).norms_sq; },
        "Squared coefficients of the rotated highest-weight vector of Lambda^r");
  m.def("alpha_pow", [](const CArray& k, int r, const std::vector<double>& h, cdouble z) {
    return alpha_pow(fundamental_profile(to_matrix(k), r), h, z);
  });
  m.def("cos_formula", [](const CArray& k, int r, const std::vector<double>& h, double t) {
    return cos_formula(fundamental_profile(to_matrix(k), r), h, t);
  });
  m.def("taylor_coeffs", [](const CArray& k, int r, const std::vector<double>& h, int order) {
    return taylor_coeffs(fundamental_profile(to_matrix(k), r), h, order);
  });
  m.def("leading_vanishing_order", [](const CArray& k, int r, const std::vector<double>& h, double tol) {
    return leading_vanishing_order(fundamental_profile(to_matrix(k), r), h, tol);
  });

  // growth
  m.def("dyadic_t_grid", &dyadic_t_grid, py::arg("j_lo") = 1, py::arg("j_hi") = 12);
  m.def("sweep", [](const CArray& x, const std::vector<double>& t_grid, int n_haar, std::uint64_t seed,
                    bool pattern_search, int threads) {
    SweepConfig cfg;
    const PElement p = to_p(x);
    cfg.n_haar = n_haar > 0 ? n_haar : default_haar_count(static_cast<int>(p.dim()));
    cfg.seed = seed;
    cfg.pattern_search = pattern_search;
    cfg.threads = threads;
    std::vector<GrowthSample> rows;
    {
      py::gil_scoped_release release;
      rows = sweep_components(p, t_grid, cfg);
    }
    py::list out;
    for (const auto& r : rows) {
      py::dict d;
      d["t"] = r.t;
      d["sup_kappa"] = r.sup_kappa;
      d["sup_alpha"] = r.sup_alpha;
      d["sup_eta"] = r.sup_eta;
      d["samples_used"] = r.samples_used;
      d["exits"] = r.exits;
      out.append(d);
    }
    return out;
  }, py::arg("x"), py::arg("t_grid"), py::arg("n_haar") = 0, py::arg("seed") = 0,
     py::arg("pattern_search") = true, py::arg("threads") = 1);
  m.def("fit_power_law", [](const std::vector<double>& t, const std::vector<double>& y,
                            std::pair<double, double> window) { return fit_dict(fit_power_law(t, y, window)); },
        py::arg("t"), py::arg("y"), py::arg("window") = std::pair<double, double>{0.0, 1.0});
  m.def("scale_relation_check", [](const std::vector<CArray>& corpus) {
    std::vector<ComplexMatrix> c;
    for (const auto& a : corpus) c.push_back(to_matrix(a));
    const auto r = scale_relation_check(c);
    py::dict d;
    d["eta"] = cert_dict(r.eta);
    d["kappa"] = cert_dict(r.kappa);
    d["coreta"] = cert_dict(r.coreta);
    return d;
  });
  m.def("crown_corpus", [](int n, std::size_t count, std::uint64_t seed) {
    py::list out;
    for (const auto& g : crown_corpus(n, count, seed)) out.append(to_array(g));
    return out;
  }, py::arg("n"), py::arg("count"), py::arg("seed"));

  // prinseries
  m.def("sl2_iwasawa_closed", [](double xs, double theta, cdouble z) {
    const auto c = sl2_iwasawa_closed_z(xs, theta, z);
    py::dict d;
    d["alpha1"] = c.alpha1;
    d["zeta"] = c.zeta;
    d["nu"] = c.nu;
    d["q"] = c.q;
    return d;
  }, py::arg("x_scale"), py::arg("theta"), py::arg("z"), "Iwasawa data of exp(-z x) k_theta, x = diag(xs/2, -xs/2)");
  m.def("extended_norm_sq", [](const std::map<int, cdouble>& v, cdouble s, bool rho_shift, double xs, double t,
                               int quad) { return extended_norm_sq(to_modes(v), {s, rho_shift}, xs, t, quad); },
        py::arg("modes"), py::arg("s"), py::arg("rho_shift") = false, py::arg("x_scale") = 1.5707963267948966,
        py::arg("t") = 0.0, py::arg("quad_points") = 64);
  m.def("growth_exponent", [](const std::map<int, cdouble>& v, cdouble s, bool rho_shift,
                              const std::vector<double>& t_grid, int quad) {
    return fit_dict(growth_exponent(to_modes(v), {s, rho_shift}, t_grid, quad));
  }, py::arg("modes"), py::arg("s"), py::arg("rho_shift") = false, py::arg("t_grid"), py::arg("quad_points") = 64);
  m.def("boundary_pairing", [](const std::map<int, cdouble>& v, const std::map<int, cdouble>& w, cdouble s,
                               bool rho_shift, const std::vector<double>& t_grid, int quad) {
    const auto r = boundary_pairing(to_modes(v), to_modes(w), {s, rho_shift}, t_grid, quad);
    py::dict d;
    d["t"] = r.t;
    d["pairings"] = r.pairings;
    d["differences"] = r.differences;
    d["decreasing"] = r.decreasing;
    d["final_difference"] = r.final_difference;
    d["cauchy"] = r.cauchy;
    return d;
  }, py::arg("v"), py::arg("w"), py::arg("s"), py::arg("rho_shift") = false, py::arg("t_grid"),
     py::arg("quad_points") = 64);
  m.def("smooth_test_vector", [](int max_mode, double decay) { return smooth_test_vector(max_mode, decay).modes(); },
        py::arg("max_mode") = 40, py::arg("decay") = 8.0);

  // checks
  m.def("suite_names", &checks::suite_names);
  m.def("run_suite", [](const std::string& name, std::uint64_t seed) {
    checks::SuiteOptions opt;
    opt.seed = seed;
    checks::SuiteReport rep;
    {
      py::gil_scoped_release release;
      rep = checks::run_suite(name, opt);
    }
    py::list out;
    for (const auto& c : rep.checks) {
      py::dict d;
      d["name"] = c.name;
      d["passed"] = c.passed;
      d["measured"] = c.measured;
      d["threshold"] = c.threshold;
      d["samples"] = c.samples;
      d["diagnostic"] = c.diagnostic;
      d["detail"] = c.detail;
      out.append(d);
    }
    return py::make_tuple(rep.ok(), out);
  }, py::arg("name"), py::arg("seed") = 20240611);
}
