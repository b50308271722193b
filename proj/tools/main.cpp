// Command-line front end: build a clustering from a population file,
// replay an event trace against it, answer a single cloaked query, or run
// the benchmark grid.
//
// Exit codes are a stable contract:
//   0 success, 2 input error, 3 anonymity unsatisfiable, 4 no result.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "clustercloak/anonymizer.hpp"
#include "clustercloak/dynamics.hpp"
#include "clustercloak/engine.hpp"
#include "clustercloak/errors.hpp"
#include "clustercloak/io.hpp"
#include "clustercloak/metrics.hpp"
#include "clustercloak/verify.hpp"
#include "clustercloak/workload.hpp"

namespace cc = clustercloak;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitNoResult = 4;

struct CliConfig {
    cc::EngineConfig engine;
    double lbs_slack = 0.0;
    fs::path out = "out";
};

struct Flags {
    std::string config_path;
    std::string seeding;
    std::optional<std::uint64_t> seed;
    std::optional<double> tolerance;
    std::optional<int> max_iter;
    std::optional<double> lbs_slack;
    std::string out;
};

void add_common_flags(CLI::App* cmd, Flags& flags) {
    cmd->add_option("--config", flags.config_path,
                    "key=value config file ('#' comments)");
    cmd->add_option("--seeding", flags.seeding,
                    "initial-center method: mn|nr|rp|rs");
    cmd->add_option("--seed", flags.seed, "random seed (64-bit)");
    cmd->add_option("--tolerance", flags.tolerance,
                    "bisection center-movement tolerance");
    cmd->add_option("--max-iter", flags.max_iter, "bisection iteration cap");
    cmd->add_option("--lbs-slack", flags.lbs_slack,
                    "initial slack of the provider range query");
    cmd->add_option("--out", flags.out, "output directory");
}

double parse_config_double(const std::string& key, const std::string& value) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || p != value.data() + value.size())
        throw cc::ConfigError("config key '" + key + "': bad number '" + value + "'");
    return v;
}

/// File values first, then flags on top.
CliConfig resolve_config(const Flags& flags) {
    CliConfig cfg;
    if (!flags.config_path.empty()) {
        for (const auto& [key, value] : cc::load_key_values(flags.config_path)) {
            if (key == "seeding") {
                const auto m = cc::parse_seeding(value);
                if (!m) throw cc::ConfigError("config key 'seeding': unknown method '" + value + "'");
                cfg.engine.seeding = *m;
            } else if (key == "seed") {
                std::uint64_t s = 0;
                const auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), s);
                if (ec != std::errc{} || p != value.data() + value.size())
                    throw cc::ConfigError("config key 'seed': bad value '" + value + "'");
                cfg.engine.rng_seed = s;
            } else if (key == "tolerance") {
                cfg.engine.center_tolerance = parse_config_double(key, value);
            } else if (key == "max_iter") {
                cfg.engine.max_bisection_iterations =
                    static_cast<int>(parse_config_double(key, value));
            } else if (key == "lbs_slack") {
                cfg.lbs_slack = parse_config_double(key, value);
            } else if (key == "out") {
                cfg.out = value;
            } else {
                throw cc::ConfigError("unknown config key '" + key + "'");
            }
        }
    }
    if (!flags.seeding.empty()) {
        const auto m = cc::parse_seeding(flags.seeding);
        if (!m) throw cc::ConfigError("--seeding: unknown method '" + flags.seeding + "'");
        cfg.engine.seeding = *m;
    }
    if (flags.seed) cfg.engine.rng_seed = *flags.seed;
    if (flags.tolerance) cfg.engine.center_tolerance = *flags.tolerance;
    if (flags.max_iter) cfg.engine.max_bisection_iterations = *flags.max_iter;
    if (flags.lbs_slack) cfg.lbs_slack = *flags.lbs_slack;
    if (!flags.out.empty()) cfg.out = flags.out;
    if (cfg.engine.center_tolerance <= 0.0)
        throw cc::ConfigError("tolerance must be > 0");
    if (cfg.engine.max_bisection_iterations < 1)
        throw cc::ConfigError("max_iter must be >= 1");
    if (cfg.lbs_slack < 0.0) throw cc::ConfigError("lbs_slack must be >= 0");
    return cfg;
}

int cmd_build(const std::string& users_path, const Flags& flags) {
    const CliConfig cfg = resolve_config(flags);
    const auto users = cc::load_users_csv(users_path);
    if (users.empty())
        throw cc::CsvError(users_path, 1, "no users in file");
    cc::ClusterSet set = cc::build_clusters(users, cfg.engine);
    cc::require_safe(set);

    fs::create_directories(cfg.out);
    cc::write_clusters_csv(cfg.out / "clusters.csv", set);
    cc::write_metrics_csv(cfg.out / "metrics.csv", cc::snapshot(set));
    std::cout << "clusters=" << set.cluster_count() << " users=" << set.user_count()
              << " out=" << cfg.out.string() << '\n';
    return kExitOk;
}

int cmd_replay(const std::string& users_path, const std::string& events_path,
               bool verify, const Flags& flags) {
    const CliConfig cfg = resolve_config(flags);
    const auto users = cc::load_users_csv(users_path);
    if (users.empty())
        throw cc::CsvError(users_path, 1, "no users in file");
    const auto trace = cc::load_events_csv(events_path);

    cc::Rng rng(cfg.engine.rng_seed);
    cc::ClusterSet set = cc::build_clusters(users, cfg.engine, rng);
    const auto outcomes =
        cc::replay_trace(set, trace, cfg.engine, rng, {.verify = verify});

    fs::create_directories(cfg.out);
    std::ofstream out(cfg.out / "replay_report.csv");
    if (!out) throw cc::Error("cannot write replay_report.csv");
    out << "seq,kind,user_id,clusters_created,clusters_deleted,clusters_rebuilt,"
           "cluster_count,elapsed_us\n";
    for (const auto& o : outcomes)
        out << o.seq << ',' << cc::to_string(o.kind) << ',' << o.user_id << ','
            << o.report.clusters_created << ',' << o.report.clusters_deleted << ','
            << o.report.clusters_rebuilt << ',' << o.cluster_count_after << ','
            << cc::format_value(o.report.elapsed_us) << '\n';
    std::cout << "events=" << outcomes.size() << " clusters=" << set.cluster_count()
              << " out=" << cfg.out.string() << '\n';
    return kExitOk;
}

int cmd_query(const std::string& users_path, const std::string& pois_path,
              std::uint64_t user_id, const std::string& category,
              const Flags& flags) {
    const CliConfig cfg = resolve_config(flags);
    const auto users = cc::load_users_csv(users_path);
    if (users.empty())
        throw cc::CsvError(users_path, 1, "no users in file");
    const cc::PoiStore store = cc::load_pois_csv(pois_path);

    cc::ClusterSet set = cc::build_clusters(users, cfg.engine);
    const cc::UserProfile& profile = set.profile(user_id);
    const cc::SourceMessage msg{user_id, 1, profile.position, profile.k, category};
    const cc::QueryResult r =
        cc::answer_query(set, store, msg, category, cfg.lbs_slack);
    std::cout << "poi_id,candidate_count,cloak_area\n"
              << r.poi.id << ',' << r.candidate_count << ','
              << cc::format_value(r.cloak_area) << '\n';
    return kExitOk;
}

void print_csv_file(const fs::path& path) {
    std::ifstream in(path);
    std::cout << "--- " << path.filename().string() << " ---\n";
    std::cout << in.rdbuf();
}

int cmd_bench(bool quick, const Flags& flags) {
    if (!flags.seed)
        throw cc::ConfigError("bench requires an explicit --seed");
    const CliConfig cfg = resolve_config(flags);
    const cc::ExperimentGrid grid = quick ? cc::ExperimentGrid::quick(*flags.seed)
                                          : cc::ExperimentGrid::full(*flags.seed);
    cc::run_experiment(grid, cfg.engine, cfg.out);
    print_csv_file(cfg.out / "summary.csv");
    print_csv_file(cfg.out / "summary_timing.csv");
    std::cout << "results in " << cfg.out.string() << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spatial k-anonymity cloaking engine"};
    app.require_subcommand(1);

    Flags flags;
    std::string users_path;
    std::string events_path;
    std::string pois_path;
    std::uint64_t query_user = 0;
    std::string query_category;
    bool verify = false;
    bool quick = false;

    CLI::App* build = app.add_subcommand("build", "cluster a population CSV");
    build->add_option("users", users_path, "users CSV (user_id,x,y,k)")->required();
    add_common_flags(build, flags);

    CLI::App* replay = app.add_subcommand("replay", "apply an event trace");
    replay->add_option("users", users_path, "users CSV")->required();
    replay->add_option("events", events_path,
                       "events CSV (seq,kind,user_id,x,y,k,category)")->required();
    replay->add_flag("--verify", verify, "run the safety scan after every event");
    add_common_flags(replay, flags);

    CLI::App* query = app.add_subcommand("query", "answer one cloaked query");
    query->add_option("users", users_path, "users CSV")->required();
    query->add_option("pois", pois_path, "points of interest CSV")->required();
    query->add_option("--user", query_user, "querying user id")->required();
    query->add_option("--category", query_category, "poi category")->required();
    add_common_flags(query, flags);

    CLI::App* bench = app.add_subcommand("bench", "run the experiment grid");
    bench->add_flag("--quick", quick, "small populations, two replications");
    add_common_flags(bench, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (build->parsed()) return cmd_build(users_path, flags);
        if (replay->parsed()) return cmd_replay(users_path, events_path, verify, flags);
        if (query->parsed())
            return cmd_query(users_path, pois_path, query_user, query_category, flags);
        if (bench->parsed()) return cmd_bench(quick, flags);
    } catch (const cc::AnonymityUnsatisfiableError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const cc::NoResultError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNoResult;
    } catch (const cc::CsvError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const cc::TraceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const cc::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const cc::UnknownUserError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const cc::DuplicateUserError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitOk;
}
