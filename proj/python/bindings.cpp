#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "credit_engine/credit.hpp"
#include "credit_engine/ingest.hpp"
#include "credit_engine/normalize.hpp"
#include "credit_engine/report.hpp"
#include "credit_engine/simulate.hpp"

namespace py = pybind11;
using namespace credit_engine;
namespace sim = credit_engine::sim;
namespace norm = credit_engine::norm;
namespace ingest_ns = credit_engine::ingest;
namespace report_ns = credit_engine::report;

PYBIND11_MODULE(_credit_engine, m) {
  m.doc() = "Expected value and author credits of n-author publications";

  // --- credit core -----------------------------------------------------
  py::enum_<CountingMethod>(m, "CountingMethod")
      .value("paper_equal", CountingMethod::paper_equal)
      .value("paper_ordered", CountingMethod::paper_ordered)
      .value("full", CountingMethod::full)
      .value("fractional", CountingMethod::fractional)
      .value("arithmetic", CountingMethod::arithmetic)
      .value("geometric", CountingMethod::geometric)
      .value("harmonic", CountingMethod::harmonic);

  py::class_<ValuationModel>(m, "ValuationModel")
      .def(py::init<double>(), py::arg("base_value") = 1.0)
      .def_readwrite("base_value", &ValuationModel::base_value)
      .def("__repr__", [](const ValuationModel& v) {
        return "ValuationModel(base_value=" + std::to_string(v.base_value) + ")";
      });

  py::class_<CreditVector>(m, "CreditVector")
      .def_readonly("method", &CreditVector::method)
      .def_readonly("n", &CreditVector::n)
      .def_readonly("credits", &CreditVector::credits)
      .def_readonly("total", &CreditVector::total);

  py::class_<BoundsCheck>(m, "BoundsCheck")
      .def_readonly("ok", &BoundsCheck::ok)
      .def_readonly("first_violation", &BoundsCheck::first_violation);

  m.def("parse_counting_method", &parse_counting_method, py::arg("name"));
  m.def("expected_value", &expected_value, py::arg("n"), py::arg("model") = ValuationModel{},
        "Expected value 2n/(n+1) * base_value of an n-author publication.");
  m.def("equal_credits", &equal_credits, py::arg("n"), py::arg("model") = ValuationModel{},
        "Per-author credits when all authors are equally important.");
  m.def("recursion_step", &recursion_step, py::arg("v_prev"), py::arg("n"));
  m.def("ordered_credits", &ordered_credits, py::arg("n"), py::arg("model") = ValuationModel{});
  m.def("baseline_credits", &baseline_credits, py::arg("method"), py::arg("n"));
  m.def("credit_vector", &credit_vector, py::arg("method"), py::arg("n"),
        py::arg("model") = ValuationModel{});
  m.def("scale_to", &scale_to, py::arg("credit_vector"), py::arg("model"));
  m.def("check_bounds", &check_bounds, py::arg("values"));
  m.def("hsu_citation_model", &hsu_citation_model, py::arg("n"));

  // --- effort simulation -------------------------------------------------
  py::enum_<sim::Sampler>(m, "Sampler")
      .value("rejection", sim::Sampler::rejection)
      .value("simplex_complement", sim::Sampler::simplex_complement);

  py::enum_<sim::ChainMode>(m, "ChainMode")
      .value("verify_each_step", sim::ChainMode::verify_each_step)
      .value("full_chain", sim::ChainMode::full_chain);

  py::class_<sim::EffortProfile>(m, "EffortProfile")
      .def_readonly("n", &sim::EffortProfile::n)
      .def_readonly("efforts", &sim::EffortProfile::efforts)
      .def_readonly("upper_bound", &sim::EffortProfile::upper_bound)
      .def_readonly("threshold", &sim::EffortProfile::threshold)
      .def_readonly("feasible", &sim::EffortProfile::feasible);

  py::class_<sim::SimulationResult>(m, "SimulationResult")
      .def_readonly("n", &sim::SimulationResult::n)
      .def_readonly("samples_accepted", &sim::SimulationResult::samples_accepted)
      .def_readonly("samples_drawn", &sim::SimulationResult::samples_drawn)
      .def_readonly("estimate", &sim::SimulationResult::estimate)
      .def_readonly("standard_error", &sim::SimulationResult::standard_error)
      .def_readonly("acceptance_rate", &sim::SimulationResult::acceptance_rate)
      .def_readonly("seed", &sim::SimulationResult::seed)
      .def_readonly("sampler", &sim::SimulationResult::sampler)
      .def("__repr__", [](const sim::SimulationResult& r) {
        return "SimulationResult(n=" + std::to_string(r.n) +
               ", estimate=" + std::to_string(r.estimate) +
               ", standard_error=" + std::to_string(r.standard_error) + ")";
      });

  m.def("parse_sampler", &sim::parse_sampler, py::arg("name"));
  m.def(
      "sample_feasible_profile",
      [](int n, double v_prev, std::uint64_t seed, sim::Sampler sampler) {
        sim::RngStream rng(seed);
        return sim::sample_feasible_profile(n, v_prev, rng, sampler);
      },
      py::arg("n"), py::arg("v_prev"), py::arg("seed"),
      py::arg("sampler") = sim::Sampler::simplex_complement,
      "One effort profile uniform on the feasible region.");
  m.def("acceptance_probability", &sim::acceptance_probability, py::arg("n"));
  m.def("count_feasible", &sim::count_feasible, py::arg("n"), py::arg("v_prev"),
        py::arg("draws"), py::arg("seed"), py::call_guard<py::gil_scoped_release>());
  m.def("estimate_vn", &sim::estimate_vn, py::arg("n"), py::arg("v_prev"), py::arg("samples"),
        py::arg("seed"), py::arg("sampler") = sim::Sampler::simplex_complement,
        py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>(),
        "Monte Carlo estimate of the n-author value given v_{n-1}.");
  m.def("chain_estimate", &sim::chain_estimate, py::arg("n_max"), py::arg("samples_per_step"),
        py::arg("seed"), py::arg("sampler") = sim::Sampler::simplex_complement,
        py::arg("mode") = sim::ChainMode::verify_each_step, py::arg("v1") = 1.0,
        py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());

  // --- normalization -----------------------------------------------------
  py::register_exception<norm::UndefinedIndicatorError>(m, "UndefinedIndicatorError",
                                                        PyExc_ValueError);

  py::class_<norm::ReferenceSetStats>(m, "ReferenceSetStats")
      .def_readonly("field", &norm::ReferenceSetStats::field)
      .def_readonly("year", &norm::ReferenceSetStats::year)
      .def_readonly("paper_count", &norm::ReferenceSetStats::paper_count)
      .def_readonly("mean_citations", &norm::ReferenceSetStats::mean_citations)
      .def_readonly("sorted_citations", &norm::ReferenceSetStats::sorted_citations);

  py::class_<norm::IndicatorValue>(m, "IndicatorValue")
      .def_readonly("record_id", &norm::IndicatorValue::record_id)
      .def_readonly("ncs", &norm::IndicatorValue::ncs)
      .def_readonly("percentile", &norm::IndicatorValue::percentile);

  m.def("make_reference_set", &norm::make_reference_set, py::arg("field"), py::arg("year"),
        py::arg("citations"));
  m.def("ncs", &norm::ncs, py::arg("citations"), py::arg("ref"));
  m.def("hazen_percentiles", &norm::hazen_percentiles, py::arg("ref"));
  m.def("percentile_for_citations", &norm::percentile_for_citations, py::arg("ref"),
        py::arg("citations"));
  m.def("aggregate_ncs", &norm::aggregate_ncs, py::arg("values"));
  m.def("aggregate_percentiles", &norm::aggregate_percentiles, py::arg("values"));

  // --- ingestion and stats -------------------------------------------------
  py::enum_<ingest_ns::InputFormat>(m, "InputFormat")
      .value("csv", ingest_ns::InputFormat::csv)
      .value("jsonl", ingest_ns::InputFormat::jsonl);

  py::class_<ingest_ns::PublicationRecord>(m, "PublicationRecord")
      .def(py::init<std::string, int, std::string, int, std::int64_t, std::string>(),
           py::arg("id"), py::arg("year"), py::arg("field"), py::arg("author_count"),
           py::arg("citations"), py::arg("doc_type") = "article")
      .def_readwrite("id", &ingest_ns::PublicationRecord::id)
      .def_readwrite("year", &ingest_ns::PublicationRecord::year)
      .def_readwrite("field", &ingest_ns::PublicationRecord::field)
      .def_readwrite("author_count", &ingest_ns::PublicationRecord::author_count)
      .def_readwrite("citations", &ingest_ns::PublicationRecord::citations)
      .def_readwrite("doc_type", &ingest_ns::PublicationRecord::doc_type);

  py::class_<ingest_ns::Rejection>(m, "Rejection")
      .def_readonly("line", &ingest_ns::Rejection::line)
      .def_readonly("reason", &ingest_ns::Rejection::reason);

  py::class_<ingest_ns::IngestResult>(m, "IngestResult")
      .def_readonly("records", &ingest_ns::IngestResult::records)
      .def_readonly("rejected", &ingest_ns::IngestResult::rejected);

  py::class_<ingest_ns::FilterOptions>(m, "FilterOptions")
      .def(py::init<int, int, std::string>(), py::arg("year_min") = 2000,
           py::arg("year_max") = 2014, py::arg("doc_type") = "article")
      .def_readwrite("year_min", &ingest_ns::FilterOptions::year_min)
      .def_readwrite("year_max", &ingest_ns::FilterOptions::year_max)
      .def_readwrite("doc_type", &ingest_ns::FilterOptions::doc_type);

  py::class_<ingest_ns::AuthorCountBin>(m, "AuthorCountBin")
      .def_readonly("n", &ingest_ns::AuthorCountBin::n)
      .def_readonly("open_ended", &ingest_ns::AuthorCountBin::open_ended)
      .def_readonly("record_ids", &ingest_ns::AuthorCountBin::record_ids)
      .def_readonly("paper_count", &ingest_ns::AuthorCountBin::paper_count)
      .def_readonly("ncs_mean", &ingest_ns::AuthorCountBin::ncs_mean)
      .def_readonly("percentile_median", &ingest_ns::AuthorCountBin::percentile_median);

  py::class_<ingest_ns::StoredRefSet>(m, "StoredRefSet")
      .def(py::init<std::string, int, std::int64_t, double>(), py::arg("field"),
           py::arg("year"), py::arg("paper_count"), py::arg("mean_citations"))
      .def_readwrite("field", &ingest_ns::StoredRefSet::field)
      .def_readwrite("year", &ingest_ns::StoredRefSet::year)
      .def_readwrite("paper_count", &ingest_ns::StoredRefSet::paper_count)
      .def_readwrite("mean_citations", &ingest_ns::StoredRefSet::mean_citations);

  py::class_<ingest_ns::StoredBin>(m, "StoredBin")
      .def(py::init<int, bool, std::int64_t, std::optional<double>, std::optional<double>>(),
           py::arg("n"), py::arg("open_ended"), py::arg("paper_count"), py::arg("ncs_mean"),
           py::arg("percentile_median"))
      .def_readwrite("n", &ingest_ns::StoredBin::n)
      .def_readwrite("open_ended", &ingest_ns::StoredBin::open_ended)
      .def_readwrite("paper_count", &ingest_ns::StoredBin::paper_count)
      .def_readwrite("ncs_mean", &ingest_ns::StoredBin::ncs_mean)
      .def_readwrite("percentile_median", &ingest_ns::StoredBin::percentile_median);

  py::class_<ingest_ns::StatsFile>(m, "StatsFile")
      .def(py::init<>())
      .def_readwrite("refsets", &ingest_ns::StatsFile::refsets)
      .def_readwrite("bins", &ingest_ns::StatsFile::bins);

  m.def("parse_format", &ingest_ns::parse_format, py::arg("name"));
  m.def("ingest", &ingest_ns::ingest, py::arg("path"), py::arg("format"));
  m.def("filter_corpus", &ingest_ns::filter_corpus, py::arg("records"),
        py::arg("options") = ingest_ns::FilterOptions{});
  m.def("build_reference_sets", &ingest_ns::build_reference_sets, py::arg("records"));
  m.def("compute_indicators", &ingest_ns::compute_indicators, py::arg("records"),
        py::arg("refsets"));
  m.def("group_by_author_count", &ingest_ns::group_by_author_count, py::arg("records"),
        py::arg("indicators"), py::arg("n_max_bin"));
  m.def("make_stats", &ingest_ns::make_stats, py::arg("bins"), py::arg("refsets"));
  m.def("persist_stats", &ingest_ns::persist_stats, py::arg("stats"), py::arg("path"));
  m.def("load_stats", &ingest_ns::load_stats, py::arg("path"));

  // --- reporting -----------------------------------------------------------
  py::enum_<report_ns::Indicator>(m, "Indicator")
      .value("ncs", report_ns::Indicator::ncs)
      .value("percentile", report_ns::Indicator::percentile);

  py::class_<report_ns::ComparisonRow>(m, "ComparisonRow")
      .def_readonly("n", &report_ns::ComparisonRow::n)
      .def_readonly("theoretical", &report_ns::ComparisonRow::theoretical)
      .def_readonly("ncs_relative", &report_ns::ComparisonRow::ncs_relative)
      .def_readonly("percentile_relative", &report_ns::ComparisonRow::percentile_relative)
      .def_readonly("paper_count", &report_ns::ComparisonRow::paper_count)
      .def_readonly("hsu_model", &report_ns::ComparisonRow::hsu_model);

  m.def("relative_empirical", &report_ns::relative_empirical, py::arg("bins"),
        py::arg("indicator"), py::arg("v1") = 1.0);
  m.def("build_comparison", &report_ns::build_comparison, py::arg("stats"), py::arg("n_max"));
  m.def("write_comparison", &report_ns::write_comparison, py::arg("rows"), py::arg("path"));
  m.def("compare", &report_ns::compare, py::arg("stats_path"), py::arg("n_max"),
        py::arg("out_path"));

#ifdef CREDIT_ENGINE_VERSION
  m.attr("__version__") = CREDIT_ENGINE_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
