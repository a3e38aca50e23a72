#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "credit_engine/credit.hpp"
#include "credit_engine/ingest.hpp"
#include "credit_engine/report.hpp"
#include "credit_engine/simulate.hpp"

namespace credit_engine::report {

namespace {

// Six significant digits with trailing zeros kept, e.g. 1.60000.
std::string fmt6(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%#.6g", value);
  return buffer;
}

void print_simulation_table(const std::vector<sim::SimulationResult>& results,
                            std::ostream& out) {
  out << "n\testimate\tse\tacceptance\taccepted\tdrawn\n";
  for (const auto& r : results) {
    out << r.n << '\t' << fmt6(r.estimate) << '\t' << fmt6(r.standard_error) << '\t'
        << fmt6(r.acceptance_rate) << '\t' << r.samples_accepted << '\t' << r.samples_drawn
        << '\n';
  }
}

void print_comparison_table(const std::vector<ComparisonRow>& rows, std::ostream& out) {
  out << "n\ttheoretical\tncs_rel\tpct_rel\tpapers\thsu\n";
  for (const auto& row : rows) {
    out << row.n << '\t' << fmt6(row.theoretical) << '\t'
        << (row.ncs_relative ? fmt6(*row.ncs_relative) : std::string("-")) << '\t'
        << (row.percentile_relative ? fmt6(*row.percentile_relative) : std::string("-"))
        << '\t' << row.paper_count << '\t' << fmt6(row.hsu_model) << '\n';
  }
}

}  // namespace

int run(int argc, char** argv) {
  try {
    CLI::App app{"Expected values and author credits of n-author publications"};
    app.require_subcommand(1);

    const auto max_n = static_cast<std::int64_t>(kMaxAuthorCount);

    // expected-value
    int ev_n = 1;
    double ev_v1 = 1.0;
    auto* ev = app.add_subcommand("expected-value", "Expected value of an n-author publication");
    ev->add_option("--n", ev_n, "author count")->required()->check(CLI::Range(std::int64_t{1}, max_n));
    ev->add_option("--v1", ev_v1, "value of a single-author publication")
        ->check(CLI::PositiveNumber);
    ev->callback([&] { std::cout << fmt6(expected_value(ev_n, {ev_v1})) << '\n'; });

    // credits
    int cr_n = 1;
    double cr_v1 = 1.0;
    std::string cr_method;
    bool cr_scale = false;
    auto* cr = app.add_subcommand("credits", "Per-author credits under a counting method");
    cr->add_option("--n", cr_n, "author count")->required()->check(CLI::Range(std::int64_t{1}, max_n));
    cr->add_option("--method", cr_method, "counting method")
        ->required()
        ->check(CLI::IsMember({"paper_equal", "paper_ordered", "full", "fractional",
                               "arithmetic", "geometric", "harmonic"}));
    cr->add_flag("--scale-to-vn", cr_scale, "rescale so the total equals the expected value");
    cr->add_option("--v1", cr_v1, "value of a single-author publication")
        ->check(CLI::PositiveNumber);
    cr->callback([&] {
      auto cv = credit_vector(parse_counting_method(cr_method), cr_n, {cr_v1});
      if (cr_scale) cv = scale_to(cv, {cr_v1});
      std::string line;
      for (const auto credit : cv.credits) {
        if (!line.empty()) line += ", ";
        line += fmt6(credit);
      }
      std::cout << line << '\n';
    });

    // simulate
    int sm_n = 2;
    std::int64_t sm_samples = 1'000'000;
    std::uint64_t sm_seed = 0;
    std::string sm_sampler = "simplex";
    std::string sm_chain_mode = "verify";
    bool sm_chain = false;
    int sm_threads = 0;
    double sm_v1 = 1.0;
    auto* sm = app.add_subcommand("simulate", "Monte Carlo estimate of the publication value");
    sm->add_option("--n", sm_n, "author count (chain upper bound with --chain)")
        ->required()
        ->check(CLI::Range(std::int64_t{2}, max_n));
    sm->add_option("--samples", sm_samples, "feasible samples per estimate")
        ->check(CLI::Range(sim::kMinSamples, std::int64_t{1} << 40));
    sm->add_option("--seed", sm_seed, "random seed");
    sm->add_option("--sampler", sm_sampler, "sampling strategy")
        ->check(CLI::IsMember({"rejection", "simplex"}));
    sm->add_flag("--chain", sm_chain, "estimate every n from 2 up to --n");
    sm->add_option("--chain-mode", sm_chain_mode,
                   "chain input: closed-form previous value or previous estimate")
        ->check(CLI::IsMember({"verify", "full"}));
    sm->add_option("--threads", sm_threads, "worker threads (0 = hardware)")
        ->check(CLI::Range(0, 4096));
    sm->add_option("--v1", sm_v1, "value of a single-author publication")
        ->check(CLI::PositiveNumber);
    sm->callback([&] {
      const auto sampler = sim::parse_sampler(sm_sampler);
      std::vector<sim::SimulationResult> results;
      if (sm_chain) {
        const auto mode = sm_chain_mode == "full" ? sim::ChainMode::full_chain
                                                  : sim::ChainMode::verify_each_step;
        results = sim::chain_estimate(sm_n, sm_samples, sm_seed, sampler, mode, sm_v1,
                                      sm_threads);
      } else {
        const double v_prev = expected_value(sm_n - 1, {sm_v1});
        results.push_back(
            sim::estimate_vn(sm_n, v_prev, sm_samples, sm_seed, sampler, sm_threads));
      }
      print_simulation_table(results, std::cout);
    });

    // ingest
    std::string in_input;
    std::string in_format = "csv";
    std::string in_out;
    int in_year_min = 2000;
    int in_year_max = 2014;
    std::string in_doc_type = "article";
    int in_top_bin = 30;
    auto* ing = app.add_subcommand("ingest", "Build normalization stats from a record file");
    ing->add_option("--input", in_input, "record file")->required();
    ing->add_option("--format", in_format, "input format")
        ->required()
        ->check(CLI::IsMember({"csv", "jsonl"}));
    ing->add_option("--out", in_out, "stats file to write")->required();
    ing->add_option("--year-min", in_year_min, "first publication year kept");
    ing->add_option("--year-max", in_year_max, "last publication year kept");
    ing->add_option("--doc-type", in_doc_type, "document type kept (case-insensitive)");
    ing->add_option("--top-bin", in_top_bin, "open-ended author-count bin threshold")
        ->check(CLI::Range(2, 100000));
    ing->callback([&] {
      const auto parsed = ingest::ingest(in_input, ingest::parse_format(in_format));
      for (const auto& rejection : parsed.rejected) {
        std::cerr << in_input << ":" << rejection.line << ": rejected: " << rejection.reason
                  << '\n';
      }
      const auto filtered = ingest::filter_corpus(
          parsed.records, {in_year_min, in_year_max, in_doc_type});
      const auto refsets = ingest::build_reference_sets(filtered);
      const auto indicators = ingest::compute_indicators(filtered, refsets);
      const auto bins = ingest::group_by_author_count(filtered, indicators, in_top_bin);
      ingest::persist_stats(ingest::make_stats(bins, refsets), in_out);
      std::cout << "records\t" << parsed.records.size() << '\n'
                << "rejected\t" << parsed.rejected.size() << '\n'
                << "filtered\t" << filtered.size() << '\n'
                << "refsets\t" << refsets.size() << '\n'
                << "bins\t" << bins.size() << '\n'
                << "stats\t" << in_out << '\n';
    });

    // compare
    std::string cp_stats;
    int cp_n_max = 30;
    std::string cp_out;
    auto* cp = app.add_subcommand("compare", "Theoretical vs empirical comparison table");
    cp->add_option("--stats", cp_stats, "stats file from ingest")->required();
    cp->add_option("--n-max", cp_n_max, "largest author count in the table")
        ->required()
        ->check(CLI::Range(std::int64_t{1}, max_n));
    cp->add_option("--out", cp_out, "comparison TSV to write")->required();
    cp->callback([&] {
      const auto rows = compare(cp_stats, cp_n_max, cp_out);
      print_comparison_table(rows, std::cout);
    });

    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      app.exit(e);
      return 1;
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace credit_engine::report
