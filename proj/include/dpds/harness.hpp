#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dpds/dataset.hpp"
#include "dpds/engine.hpp"
#include "dpds/entropy.hpp"

namespace dpds {

enum class Algorithm { Naive, Probe, ProbeNaive, ProbeEnt };

Algorithm algorithm_from_name(const std::string& name);
std::string algorithm_name(Algorithm a);

struct RunConfig {
    Algorithm algorithm = Algorithm::Probe;
    double beta = 0.05;
    double alpha = 0.1;
    double epsilon_max = 5.0;
    double u_fraction = 0.12;   // naive only
    double phase_split = 0.5;
    int m = 4;
    int m_f = 3;
    int trials = 100;
    std::uint64_t seed = 0;
    std::optional<double> zscore;  // when set, thresholds come from the data (non-private setup)
    std::string query_path;
    std::string data_path;
    std::string out_path;
};

struct TrialMetrics {
    int trial = 0;
    double epsilon = 0.0;
    double fnr = 0.0;
    double fpr = 0.0;
    bool denied = false;
    double min_entropy = 0.0;
};

struct ExperimentSummary {
    int trials = 0;
    int denied = 0;
    double mean_epsilon = 0.0;      // over answered trials
    double mean_fnr = 0.0;          // over answered trials
    double mean_fpr = 0.0;
    double mean_min_entropy = 0.0;
    double mean_fnr_incl_denied = 0.0;  // denied trials count as all-missed
    double mean_fpr_incl_denied = 0.0;
    double denial_rate = 0.0;
    std::vector<TrialMetrics> per_trial;
};

std::pair<double, double> measure_rates(const IndexSet& reported, const IndexSet& truth,
                                        std::size_t domain_size);

// Scalar threshold mean + z * population stddev, broadcast to all predicates.
double threshold_zscore(const GroupAggregates& aggregates, double z);

// --- query configuration -------------------------------------------------

// Parsed query config: atomic declarations, the boolean expression over them,
// and the predicate-domain source.
struct QuerySpec {
    std::vector<AtomicQuery> atomics;
    std::string expression;
    std::vector<std::string> predicate_columns;
    // empty means derive the domain from data (flagged non-private)
    std::vector<std::vector<Value>> explicit_domain;
    bool domain_from_data() const { return explicit_domain.empty(); }
};

QuerySpec load_query_spec(const std::string& path);
QuerySpec parse_query_spec(const std::string& json_text);

// Everything needed to run mechanisms on one dataset/query pair.
struct BoundQuery {
    CompiledQuery compiled;
    PredicateDomain domain;
    std::vector<BoundAtomic> bound;   // aligned with compiled.atomic_ids
    IndexSet truth;
    bool nonprivate_domain = false;
    bool nonprivate_thresholds = false;
};

BoundQuery bind_query(const QuerySpec& spec, const Dataset& dataset,
                      std::optional<double> zscore, bool minimize = true);

// For the flat multi-step variant: gap operators of a single-operator comb
// tree (errors out on mixed/nested shapes).
std::vector<GapOp> flatten_for_ent(const CompiledQuery& compiled);

ExperimentSummary run_trials(const BoundQuery& bq, const RunConfig& config);
ExperimentSummary run_experiment(const RunConfig& config);  // load, run, write CSV

std::string metrics_csv(const ExperimentSummary& summary, const RunConfig& config,
                        const BoundQuery& bq);

// --- synthetic data -------------------------------------------------------

// Deterministic fixture generator: a grid of group cells, one row-count band
// per cell shared across filter segments, jittered within the band spread.
struct SynthBand {
    double fraction = 0.0;            // share of cells in this band
    std::vector<double> levels;       // per-segment mean row count
    double spread = 0.0;
};

struct SynthSpec {
    std::vector<std::pair<std::string, int>> group_columns;  // (name, cardinality)
    std::string segment_column = "segment";
    std::vector<std::string> segments;
    std::vector<SynthBand> bands;
    std::string value_column = "amount";
    double value_mean = 50.0;
    double value_spread = 10.0;
};

Dataset synth_dataset(const SynthSpec& spec, std::uint64_t seed);

} // namespace dpds
