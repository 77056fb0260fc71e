#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "shankslab/analytic.hpp"
#include "shankslab/arithmetic.hpp"
#include "shankslab/errors.hpp"
#include "shankslab/moments.hpp"
#include "shankslab/zeros.hpp"

namespace py = pybind11;
using namespace shankslab;

namespace {

ZeroTable table_from(const std::vector<double>& gammas, double t_max) {
  ZeroTable table;
  table.entries.reserve(gammas.size());
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    Zero z;
    z.index = i + 1;
    z.gamma = gammas[i];
    z.source = ZeroSource::imported;
    table.entries.push_back(z);
  }
  table.t_max = t_max;
  return table;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Zeta zeros, derivatives at the zeros and their discrete moments";

  // Exceptions; the Python base classes follow the usual conventions.
  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PoleError>(m, "PoleError", PyExc_ValueError);
  py::register_exception<AccuracyError>(m, "AccuracyError", error.ptr());
  py::register_exception<ConsistencyError>(m, "ConsistencyError", error.ptr());
  py::register_exception<RangeError>(m, "RangeError", PyExc_ValueError);
  py::register_exception<SieveLimitError>(m, "SieveLimitError", PyExc_ValueError);
  py::register_exception<InsufficientDataError>(m, "InsufficientDataError", error.ptr());
  py::register_exception<MissedZeroError>(m, "MissedZeroError", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<EvalParams>(m, "EvalParams")
      .def(py::init<>())
      .def(py::init([](double cutoff, int order, double target) {
             EvalParams p{cutoff, order, target};
             p.validate();
             return p;
           }),
           py::arg("em_cutoff_factor") = 2.0, py::arg("bernoulli_order") = 28,
           py::arg("target_abs_error") = 1e-10)
      .def_readwrite("em_cutoff_factor", &EvalParams::em_cutoff_factor)
      .def_readwrite("bernoulli_order", &EvalParams::bernoulli_order)
      .def_readwrite("target_abs_error", &EvalParams::target_abs_error);

  m.def("theta", &theta, py::arg("t"));
  m.def("hardy_z", &hardy_z, py::arg("t"), py::arg("params") = EvalParams{});
  m.def("zeta", &zeta_deriv_em, py::arg("s"), py::arg("n") = 0, py::arg("params") = EvalParams{},
        "n-th derivative of zeta at s by Euler-Maclaurin summation.");
  m.def("zeta_cauchy", &zeta_deriv_cauchy, py::arg("s"), py::arg("n"), py::arg("radius") = 0.45,
        py::arg("points") = 128, py::arg("params") = EvalParams{});

  py::class_<ZeroTable>(m, "ZeroTable")
      .def(py::init(&table_from), py::arg("gammas"), py::arg("t_max"))
      .def_property_readonly("gammas", &ZeroTable::gammas)
      .def_readonly("t_max", &ZeroTable::t_max)
      .def("count_upto", &ZeroTable::count_upto, py::arg("T"))
      .def("__len__", &ZeroTable::size)
      .def("__repr__", [](const ZeroTable& t) {
        return "<ZeroTable " + std::to_string(t.size()) + " zeros, t_max=" + std::to_string(t.t_max) + ">";
      });

  py::class_<VerificationReport>(m, "VerificationReport")
      .def_readonly("passed", &VerificationReport::passed)
      .def_readonly("failure_kind", &VerificationReport::failure_kind)
      .def_readonly("failure_index", &VerificationReport::failure_index)
      .def_readonly("message", &VerificationReport::message)
      .def_readonly("checkpoints_checked", &VerificationReport::checkpoints_checked)
      .def_readonly("checkpoints_skipped", &VerificationReport::checkpoints_skipped);

  m.def(
      "find_zeros",
      [](std::size_t count, const EvalParams& params, unsigned threads) {
        FindOptions options;
        options.threads = threads;
        py::gil_scoped_release release;
        return find_zeros(count, params, options);
      },
      py::arg("count"), py::arg("params") = EvalParams{}, py::arg("threads") = 0);
  m.def(
      "verify_table",
      [](const ZeroTable& table, const EvalParams& params, unsigned threads) {
        VerifyOptions options;
        options.threads = threads;
        py::gil_scoped_release release;
        return verify_table(table, params, options);
      },
      py::arg("table"), py::arg("params") = EvalParams{}, py::arg("threads") = 0);
  m.def(
      "import_zeros",
      [](const std::filesystem::path& path, const std::string& format) {
        return import_zeros(path, parse_zero_format(format));
      },
      py::arg("path"), py::arg("format") = "binary");
  m.def(
      "export_zeros",
      [](const ZeroTable& table, const std::filesystem::path& path, const std::string& format) {
        export_zeros(table, path, parse_zero_format(format));
      },
      py::arg("table"), py::arg("path"), py::arg("format") = "binary");

  py::class_<SieveTable>(m, "SieveTable")
      .def(py::init<std::uint64_t>(), py::arg("limit") = kDefaultSieveLimit)
      .def_property_readonly("limit", &SieveTable::limit)
      .def("von_mangoldt", &SieveTable::von_mangoldt, py::arg("m"));
  m.def("von_mangoldt", py::overload_cast<std::uint64_t>(&von_mangoldt), py::arg("m"));
  m.def("chebyshev_C", &chebyshev_C, py::arg("sieve"), py::arg("x"));
  m.def("weighted_sum", &weighted_sum, py::arg("sieve"), py::arg("n"), py::arg("T"));
  m.def("unweighted_sum", &unweighted_sum, py::arg("sieve"), py::arg("n"), py::arg("T"));
  m.def("true_value_D", &true_value_D, py::arg("sieve"), py::arg("n"), py::arg("X"));
  m.def("laurent_constants", [] {
    const StieltjesConstants c = laurent_constants();
    return py::make_tuple(c.c0, c.c1);
  });

  m.def(
      "discrete_sum",
      [](int n, const ZeroTable& table, double T, const EvalParams& params, unsigned threads) {
        py::gil_scoped_release release;
        return discrete_sum(n, table, T, params, threads);
      },
      py::arg("n"), py::arg("table"), py::arg("T"), py::arg("params") = EvalParams{},
      py::arg("threads") = 0);
  m.def("leading_term", &leading_term, py::arg("n"), py::arg("T"));
  m.def(
      "fujii_prediction", [](double T) { return fujii_prediction(T, laurent_constants()); },
      py::arg("T"));
  m.def("error_bound_diag", &error_bound_diag, py::arg("n"), py::arg("T"));

  py::class_<LGReport>(m, "LGReport")
      .def_readonly("m", &LGReport::m)
      .def_readonly("T", &LGReport::T)
      .def_readonly("empirical", &LGReport::empirical)
      .def_readonly("predicted", &LGReport::predicted)
      .def_readonly("bound", &LGReport::bound)
      .def_readonly("ratio", &LGReport::ratio);
  m.def("landau_gonek", &landau_gonek, py::arg("m"), py::arg("table"), py::arg("T"),
        py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());

  py::class_<ShanksVerdict>(m, "ShanksVerdict")
      .def_readonly("n", &ShanksVerdict::n)
      .def_readonly("count", &ShanksVerdict::count)
      .def_readonly("mean", &ShanksVerdict::mean)
      .def_readonly("sign_ok", &ShanksVerdict::sign_ok)
      .def_readonly("im_ratio", &ShanksVerdict::im_ratio);
  m.def(
      "shanks_verdict",
      [](int n, const ZeroTable& table, double T, const EvalParams& params, unsigned threads) {
        py::gil_scoped_release release;
        return shanks_verdict(n, table, T, params, threads);
      },
      py::arg("n"), py::arg("table"), py::arg("T"), py::arg("params") = EvalParams{},
      py::arg("threads") = 0);

  py::class_<ChainReport>(m, "ChainReport")
      .def_readonly("n", &ChainReport::n)
      .def_readonly("T", &ChainReport::T)
      .def_readonly("stage_A", &ChainReport::stage_A)
      .def_readonly("stage_B", &ChainReport::stage_B)
      .def_readonly("stage_C", &ChainReport::stage_C)
      .def_readonly("S_n", &ChainReport::S_n)
      .def_readonly("tail_budget", &ChainReport::tail_budget)
      .def_readonly("rel_dev_A_B", &ChainReport::rel_dev_A_B)
      .def_readonly("dev_A_S", &ChainReport::dev_A_S)
      .def_readonly("dev_C_S", &ChainReport::dev_C_S);
  m.def(
      "heuristic_chain",
      [](int n, const ZeroTable& table, double T, const SieveTable& sieve, unsigned threads,
         bool allow_expensive) {
        ChainOptions options;
        options.threads = threads;
        options.allow_expensive = allow_expensive;
        py::gil_scoped_release release;
        return heuristic_chain(n, table, T, sieve, {}, options);
      },
      py::arg("n"), py::arg("table"), py::arg("T"), py::arg("sieve"), py::arg("threads") = 0,
      py::arg("allow_expensive") = false);

  py::class_<MomentCheckpoint>(m, "MomentCheckpoint")
      .def_readonly("T", &MomentCheckpoint::T)
      .def_readonly("zero_count", &MomentCheckpoint::zero_count)
      .def_readonly("empirical", &MomentCheckpoint::empirical)
      .def_readonly("leading", &MomentCheckpoint::leading)
      .def_readonly("fujii", &MomentCheckpoint::fujii)
      .def_readonly("true_value", &MomentCheckpoint::true_value)
      .def_readonly("residual_leading", &MomentCheckpoint::residual_leading)
      .def_readonly("residual_true", &MomentCheckpoint::residual_true);
  m.def(
      "moment_series",
      [](int n, const ZeroTable& table, std::vector<double> checkpoints, const SieveTable& sieve,
         unsigned threads) {
        if (checkpoints.empty()) checkpoints = auto_checkpoints(table);
        const MomentContext context{sieve, laurent_constants(), threads};
        py::gil_scoped_release release;
        return moment_series(n, table, checkpoints, {}, context).checkpoints;
      },
      py::arg("n"), py::arg("table"), py::arg("checkpoints") = std::vector<double>{},
      py::arg("sieve") = SieveTable{}, py::arg("threads") = 0,
      "Checkpoints of S_n; an empty list selects the automatic ladder.");
  m.def("auto_checkpoints", &auto_checkpoints, py::arg("table"));
  m.def("scatter_export", &scatter_export, py::arg("n"), py::arg("table"), py::arg("path"),
        py::arg("params") = EvalParams{}, py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>());
}
