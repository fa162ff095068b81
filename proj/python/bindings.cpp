#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hammaps/cli.hpp"
#include "hammaps/errors.hpp"

namespace py = pybind11;
using namespace hammaps;

namespace {

ReportConfig make_config(std::optional<std::uint64_t> group_cap, std::size_t arc_cap,
                         bool slow, unsigned workers) {
  ReportConfig c = config_from_env();
  if (group_cap) c.group_cap = *group_cap;
  c.arc_cap = arc_cap;
  c.slow = slow;
  c.workers = workers;
  return c;
}

}  // namespace

PYBIND11_MODULE(_hammaps, m) {
  m.doc() = "Orientably regular embeddings of Hamming graphs (JSON-returning core)";

  static py::exception<CapExceeded> cap_exc(m, "CapExceeded", PyExc_RuntimeError);
  static py::exception<ConsistencyError> consistency_exc(m, "ConsistencyError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InvalidInput& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const CapExceeded& e) {
      PyErr_SetString(cap_exc.ptr(), e.what());
    } catch (const ConsistencyError& e) {
      PyErr_SetString(consistency_exc.ptr(), e.what());
    }
  });

  m.attr("DEFAULT_GROUP_CAP") = kDefaultGroupCap;
  m.attr("DEFAULT_ARC_CAP") = kDefaultArcCap;
  m.attr("SLOW_GROUP_CAP") = kSlowGroupCap;

  m.def(
      "construct",
      [](std::uint32_t d, std::uint32_t q, std::optional<std::string> omega, std::size_t arc_cap) {
        std::optional<OrientedMap> map;
        nlohmann::json j = construct_json(d, q, omega, make_config({}, arc_cap, false, 1), &map);
        j["map"] = map_to_string(*map);
        return j.dump();
      },
      py::arg("d"), py::arg("q"), py::arg("omega") = py::none(),
      py::arg("arc_cap") = kDefaultArcCap, py::call_guard<py::gil_scoped_release>());

  m.def(
      "enumerate",
      [](std::uint32_t d, std::uint32_t q, std::optional<std::vector<std::uint32_t>> merged,
         bool slow, unsigned workers, std::optional<std::uint64_t> group_cap,
         std::size_t arc_cap) {
        return enumerate_json(d, q, merged, make_config(group_cap, arc_cap, slow, workers)).dump();
      },
      py::arg("d"), py::arg("q"), py::arg("merged") = py::none(), py::arg("slow") = false,
      py::arg("workers") = 1, py::arg("group_cap") = py::none(),
      py::arg("arc_cap") = kDefaultArcCap, py::call_guard<py::gil_scoped_release>());

  m.def(
      "report",
      [](std::uint32_t d, std::uint32_t q, const std::string& format, std::size_t arc_cap) {
        return render_report(report_json(d, q, make_config({}, arc_cap, false, 1)),
                             parse_format(format));
      },
      py::arg("d"), py::arg("q"), py::arg("format") = "json",
      py::arg("arc_cap") = kDefaultArcCap, py::call_guard<py::gil_scoped_release>());

  m.def(
      "galois",
      [](std::uint32_t q, std::uint32_t d) { return galois_json(galois_structure(q, d)).dump(); },
      py::arg("q"), py::arg("d") = 1, py::call_guard<py::gil_scoped_release>());

  m.def(
      "iso",
      [](const std::string& a, const std::string& b) {
        return iso_json(map_from_string(a), map_from_string(b)).dump();
      },
      py::arg("a"), py::arg("b"), py::call_guard<py::gil_scoped_release>());

  m.def(
      "mirror", [](const std::string& map) { return map_to_string(mirror(map_from_string(map))); },
      py::arg("map"), py::call_guard<py::gil_scoped_release>());

  m.def(
      "wilson",
      [](const std::string& map, std::int64_t j) {
        return map_to_string(wilson(map_from_string(map), j));
      },
      py::arg("map"), py::arg("j"), py::call_guard<py::gil_scoped_release>());

  m.def(
      "invariants",
      [](const std::string& map) {
        const OrientedMap om = map_from_string(map);
        nlohmann::json j = invariants_json(invariants(om));
        j["type_string"] = type_of(om).to_string();
        return j.dump();
      },
      py::arg("map"), py::call_guard<py::gil_scoped_release>());

  m.def(
      "canonical_code",
      [](const std::string& map) { return canonical_code(map_from_string(map)); },
      py::arg("map"), py::call_guard<py::gil_scoped_release>());
}
