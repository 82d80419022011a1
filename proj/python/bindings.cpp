#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "abelsplit/error.hpp"
#include "abelsplit/group.hpp"
#include "abelsplit/json_io.hpp"
#include "abelsplit/oracle.hpp"
#include "abelsplit/splitting.hpp"

namespace py = pybind11;
using namespace abelsplit;

namespace {

using BlockList = std::vector<std::pair<int, int>>;

PGroupSpec to_spec(Int p, const BlockList& blocks) {
  std::vector<Block> bs;
  bs.reserve(blocks.size());
  for (auto [n, r] : blocks) bs.push_back(Block{n, r});
  return validate_spec(p, std::move(bs));
}

// JSON crosses the boundary as text; the package decodes it.
std::string dumped(const Json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  static py::handle error_type = [&] {
    py::object t = py::reinterpret_steal<py::object>(
        PyErr_NewException("abelsplit._core.AbelsplitError", PyExc_ValueError, nullptr));
    m.attr("AbelsplitError") = t;
    return t.release();
  }();
  // Raised with the stable error code attached as .code.
  py::register_exception_translator([](std::exception_ptr ep) {
    try {
      if (ep) std::rethrow_exception(ep);
    } catch (const Error& e) {
      py::object inst = py::reinterpret_borrow<py::object>(error_type)(std::string(e.what()));
      inst.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error_type.ptr(), inst.ptr());
    }
  });

  m.def("rank_bound", &rank_bound, py::arg("p"));
  m.def("teichmuller", &teichmuller, py::arg("p"), py::arg("n"), py::arg("a"));
  m.def("classify_block",
        [](Int p, int n, int r) { return to_string(classify_block(p, n, r)); },
        py::arg("p"), py::arg("n"), py::arg("r"));
  m.def("classify_json",
        [](Int p, const BlockList& blocks) { return dumped(verdict_to_json(classify(to_spec(p, blocks)))); },
        py::arg("p"), py::arg("blocks"));
  m.def("group_order", [](Int p, const BlockList& b) { return group_order(to_spec(p, b)); });
  m.def("quotient_order", [](Int p, const BlockList& b) { return quotient_order(to_spec(p, b)); });
  m.def("delta_order", [](Int p, const BlockList& b) { return delta_order(to_spec(p, b)); });
  m.def("aut_order", [](Int p, const BlockList& b) { return aut_order(to_spec(p, b)); });
  m.def("aut_order_factorization", [](Int p, const BlockList& b) {
    return aut_order_factorization(to_spec(p, b));
  });
  m.def(
      "brute_force_aut_count",
      [](Int p, const BlockList& b, std::uint64_t budget) {
        Budgets budgets;
        budgets.endomorphisms = budget;
        return brute_force_aut_count(to_spec(p, b), budgets);
      },
      py::arg("p"), py::arg("blocks"), py::arg("budget") = Budgets{}.endomorphisms);
  m.def(
      "section_json",
      [](Int p, const BlockList& b, std::uint64_t seed) {
        SearchOptions o;
        o.seed = seed;
        const SectionCertificate c = [&] {
          py::gil_scoped_release release;
          return build_section(to_spec(p, b), o);
        }();
        return dumped(certificate_to_json(c));
      },
      py::arg("p"), py::arg("blocks"), py::arg("seed") = SearchOptions{}.seed);
  m.def(
      "search_json",
      [](Int p, const BlockList& b, std::uint64_t seed, unsigned workers) {
        const PGroupSpec spec = to_spec(p, b);
        SearchOptions o;
        o.seed = seed;
        o.workers = workers;
        const SearchResult r = [&] {
          py::gil_scoped_release release;
          return complement_lift_search(spec, o);
        }();
        return dumped(search_result_to_json(spec, r));
      },
      py::arg("p"), py::arg("blocks"), py::arg("seed") = SearchOptions{}.seed, py::arg("workers") = 1);
}
