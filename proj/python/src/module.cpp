#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pkh/complex.hpp"
#include "pkh/corpus.hpp"
#include "pkh/diagram.hpp"
#include "pkh/homology.hpp"
#include "pkh/invariants.hpp"
#include "pkh/reidemeister.hpp"

namespace py = pybind11;

namespace {

pkh::MoveRequest make_request(const std::string& move, int at_edge, int with_edge, int side, bool under,
                              const std::vector<int>& triangle, const pkh::LinkDiagram& d) {
  pkh::MoveRequest r;
  r.kind = pkh::move_kind_from_string(move);
  r.edge = at_edge;
  if (r.kind != pkh::MoveKind::R3 && r.edge == 0 && d.num_edges() > 0) r.edge = d.edge_labels().front();
  r.edge2 = with_edge;
  r.side = side;
  r.first_over = !under;
  r.triangle = triangle;
  return r;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Parametrized Khovanov homology over Z[s,t]; results are returned as JSON text";

  py::register_exception<pkh::Error>(m, "Error", PyExc_ValueError);

  m.def(
      "normalize_pd", [](const std::string& pd) { return pkh::render_pd(pkh::parse_pd(pd)); }, py::arg("pd"),
      "Parse a PD code and render it back in canonical text form.");
  m.def(
      "writhe", [](const std::string& pd) { return pkh::parse_pd(pd).writhe(); }, py::arg("pd"));
  m.def(
      "homology",
      [](const std::string& pd, long s, long t, const std::string& scheme) {
        const auto d = pkh::parse_pd(pd);
        const auto sch = scheme == "bracket" ? pkh::GradingScheme::Bracket : pkh::GradingScheme::Jones;
        return pkh::homology_json(pkh::homology_at(pkh::build_complex(d, sch), pkh::Integer(s), pkh::Integer(t)));
      },
      py::arg("pd"), py::arg("s") = 0, py::arg("t") = 0, py::arg("scheme") = "jones");
  m.def(
      "invariants", [](const std::string& pd) { return pkh::invariant_report_json(pkh::invariant_report(pkh::parse_pd(pd))); },
      py::arg("pd"), "Jones polynomial and Kauffman bracket by every route.");
  m.def(
      "check_d2",
      [](const std::string& pd) { return pkh::check_d2(pkh::build_complex(pkh::parse_pd(pd), pkh::GradingScheme::Jones)).ok; },
      py::arg("pd"));
  m.def(
      "verify_move",
      [](const std::string& pd, const std::string& move, int at_edge, int with_edge, int side, bool under,
         const std::vector<int>& triangle) {
        const auto d = pkh::parse_pd(pd);
        py::gil_scoped_release release;
        return pkh::move_report_json(pkh::verify_move(d, make_request(move, at_edge, with_edge, side, under, triangle, d)));
      },
      py::arg("pd"), py::arg("move"), py::arg("at_edge") = 0, py::arg("with_edge") = 0, py::arg("side") = 0,
      py::arg("under") = false, py::arg("triangle") = std::vector<int>{});
  m.def(
      "run_corpus",
      [](const std::string& dir, bool moves, int max_crossings) {
        pkh::CorpusOptions opt;
        opt.run_moves = moves;
        opt.max_crossings = max_crossings;
        const auto files = pkh::corpus_files(dir);
        py::gil_scoped_release release;
        return pkh::corpus_json(pkh::run_corpus(files, opt));
      },
      py::arg("dir"), py::arg("moves") = true, py::arg("max_crossings") = 14);
}
