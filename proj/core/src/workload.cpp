#include "clustercloak/workload.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <tuple>
#include <unordered_map>

#include "clustercloak/errors.hpp"
#include "clustercloak/io.hpp"
#include "clustercloak/metrics.hpp"
#include "clustercloak/verify.hpp"

namespace clustercloak {

namespace {

const std::vector<std::string>& poi_categories() {
    static const std::vector<std::string> cats{"restaurant", "cafe", "fuel",
                                               "hotel", "pharmacy"};
    return cats;
}

std::size_t churn_count(double pct, std::size_t n) {
    if (pct <= 0.0) return 0;
    return static_cast<std::size_t>(std::ceil(pct / 100.0 * static_cast<double>(n)));
}

int draw_k(const KMode& mode, Rng& rng) {
    return mode.random ? rng.int_range(2, 5) : mode.k;
}

}  // namespace

GeneratedMap generate_map(const WorkloadSpec& spec) {
    if (spec.user_count <= 0)
        throw ContractViolation("user_count must be positive");
    if (!spec.k_mode.random && spec.k_mode.k < 2)
        throw ContractViolation("fixed k must be >= 2");

    Rng rng(spec.seed);
    GeneratedMap map;
    map.users.reserve(static_cast<std::size_t>(spec.user_count));
    for (int i = 0; i < spec.user_count; ++i) {
        UserProfile u;
        u.id = static_cast<UserId>(i + 1);
        u.position.x = rng.range(spec.world.x_min, spec.world.x_max);
        u.position.y = rng.range(spec.world.y_min, spec.world.y_max);
        u.k = draw_k(spec.k_mode, rng);
        map.users.push_back(u);
    }

    std::vector<Poi> pois;
    pois.reserve(static_cast<std::size_t>(std::max(spec.poi_count, 0)));
    const auto& cats = poi_categories();
    for (int i = 0; i < spec.poi_count; ++i) {
        Poi p;
        p.id = static_cast<PoiId>(i + 1);
        p.position.x = rng.range(spec.world.x_min, spec.world.x_max);
        p.position.y = rng.range(spec.world.y_min, spec.world.y_max);
        p.category = cats[rng.below(cats.size())];
        pois.push_back(std::move(p));
    }
    map.pois = PoiStore(std::move(pois));
    return map;
}

EventTrace generate_churn_trace(const std::vector<UserProfile>& users,
                                const WorkloadSpec& spec) {
    if (users.empty()) throw ContractViolation("churn trace needs a population");
    Rng rng(mix_seed(spec.seed, 0x7261ce));  // own stream, separate from the map

    const std::size_t joins = churn_count(spec.churn.join_pct, users.size());
    const std::size_t leaves = churn_count(spec.churn.leave_pct, users.size());
    const std::size_t moves = churn_count(spec.churn.move_pct, users.size());

    std::vector<EventKind> kinds;
    kinds.reserve(joins + leaves + moves);
    kinds.insert(kinds.end(), joins, EventKind::Join);
    kinds.insert(kinds.end(), leaves, EventKind::Leave);
    kinds.insert(kinds.end(), moves, EventKind::Move);
    for (std::size_t i = kinds.size(); i > 1; --i)
        std::swap(kinds[i - 1], kinds[rng.below(i)]);

    std::vector<UserId> alive;
    alive.reserve(users.size() + joins);
    std::unordered_map<UserId, Point> positions;
    UserId next_id = 0;
    for (const UserProfile& u : users) {
        alive.push_back(u.id);
        positions[u.id] = u.position;
        next_id = std::max(next_id, u.id);
    }
    ++next_id;

    EventTrace trace;
    trace.reserve(kinds.size());
    std::uint64_t seq = 0;
    for (EventKind kind : kinds) {
        Event e;
        e.kind = kind;
        switch (kind) {
            case EventKind::Join: {
                e.user_id = next_id++;
                const Point pos{rng.range(spec.world.x_min, spec.world.x_max),
                                rng.range(spec.world.y_min, spec.world.y_max)};
                e.position = pos;
                e.k = draw_k(spec.k_mode, rng);
                alive.push_back(e.user_id);
                positions[e.user_id] = pos;
                break;
            }
            case EventKind::Leave: {
                if (alive.empty()) continue;
                const std::size_t idx = rng.below(alive.size());
                e.user_id = alive[idx];
                alive[idx] = alive.back();
                alive.pop_back();
                positions.erase(e.user_id);
                break;
            }
            case EventKind::Move: {
                if (alive.empty()) continue;
                const std::size_t idx = rng.below(alive.size());
                e.user_id = alive[idx];
                const Point target{rng.range(spec.world.x_min, spec.world.x_max),
                                   rng.range(spec.world.y_min, spec.world.y_max)};
                Point& pos = positions[e.user_id];
                pos.x += spec.churn.move_step_fraction * (target.x - pos.x);
                pos.y += spec.churn.move_step_fraction * (target.y - pos.y);
                e.position = pos;
                break;
            }
            default:
                continue;
        }
        e.seq = ++seq;
        trace.push_back(std::move(e));
    }
    return trace;
}

EventTrace load_events_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    const std::string file = path.string();
    if (!in) throw CsvError(file, 0, "cannot open file");
    std::string line;
    if (!std::getline(in, line)) throw CsvError(file, 1, "empty file");
    {
        const auto f = split_csv(line);
        const std::vector<std::string> want{"seq", "kind",    "user_id", "x",
                                            "y",   "k", "category"};
        if (std::vector<std::string>(f.begin(), f.end()) != want)
            throw CsvError(file, 1, "expected header 'seq,kind,user_id,x,y,k,category'");
    }

    EventTrace trace;
    std::size_t lineno = 1;
    std::uint64_t last_seq = 0;
    while (std::getline(in, line)) {
        ++lineno;
        bool blank = true;
        for (char ch : line)
            if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
        if (blank) continue;
        auto f = split_csv(line);
        if (f.size() != 7) throw CsvError(file, lineno, "expected 7 fields");

        Event e;
        {
            std::uint64_t seq = 0;
            const auto [p, ec] = std::from_chars(f[0].data(), f[0].data() + f[0].size(), seq);
            if (ec != std::errc{} || p != f[0].data() + f[0].size())
                throw CsvError(file, lineno, "bad seq '" + f[0] + "'");
            e.seq = seq;
        }
        if (e.seq <= last_seq)
            throw CsvError(file, lineno, "sequence numbers must increase");
        last_seq = e.seq;

        if (f[1] == "join") e.kind = EventKind::Join;
        else if (f[1] == "leave") e.kind = EventKind::Leave;
        else if (f[1] == "move") e.kind = EventKind::Move;
        else if (f[1] == "query") e.kind = EventKind::Query;
        else throw CsvError(file, lineno, "unknown event kind '" + f[1] + "'");

        {
            const auto [p, ec] =
                std::from_chars(f[2].data(), f[2].data() + f[2].size(), e.user_id);
            if (ec != std::errc{} || p != f[2].data() + f[2].size())
                throw CsvError(file, lineno, "bad user_id '" + f[2] + "'");
        }

        auto parse_pos = [&](const char* what) {
            double v = 0.0;
            const std::string& s = (*what == 'x') ? f[3] : f[4];
            const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc{} || p != s.data() + s.size())
                throw CsvError(file, lineno, std::string("bad ") + what + " '" + s + "'");
            return v;
        };

        const bool needs_position =
            e.kind == EventKind::Join || e.kind == EventKind::Move;
        if (needs_position) {
            if (f[3].empty() || f[4].empty())
                throw CsvError(file, lineno, "this event kind needs x and y");
            e.position = Point{parse_pos("x"), parse_pos("y")};
            if (!is_finite(*e.position))
                throw CsvError(file, lineno, "coordinates must be finite");
        } else if (!f[3].empty() || !f[4].empty()) {
            throw CsvError(file, lineno, "this event kind takes no coordinates");
        }

        if (e.kind == EventKind::Join) {
            if (f[5].empty()) throw CsvError(file, lineno, "join needs k");
            int k = 0;
            const auto [p, ec] = std::from_chars(f[5].data(), f[5].data() + f[5].size(), k);
            if (ec != std::errc{} || p != f[5].data() + f[5].size() || k < 2)
                throw CsvError(file, lineno, "bad k '" + f[5] + "'");
            e.k = k;
        } else if (!f[5].empty()) {
            throw CsvError(file, lineno, "only join events take k");
        }

        if (e.kind == EventKind::Query) {
            if (f[6].empty()) throw CsvError(file, lineno, "query needs a category");
            e.category = f[6];
        } else if (!f[6].empty()) {
            throw CsvError(file, lineno, "only query events take a category");
        }
        trace.push_back(std::move(e));
    }
    return trace;
}

void write_events_csv(const std::filesystem::path& path, const EventTrace& trace) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file " + path.string());
    out << "seq,kind,user_id,x,y,k,category\n";
    for (const Event& e : trace) {
        out << e.seq << ',' << to_string(e.kind) << ',' << e.user_id << ',';
        if (e.position) out << format_coord(e.position->x) << ',' << format_coord(e.position->y);
        else out << ',';
        out << ',';
        if (e.k) out << *e.k;
        out << ',' << e.category << '\n';
    }
}

std::vector<EventOutcome> replay_trace(ClusterSet& set, const EventTrace& trace,
                                       const EngineConfig& config, Rng& rng,
                                       const ReplayOptions& options) {
    std::vector<EventOutcome> outcomes;
    outcomes.reserve(trace.size());
    for (const Event& e : trace) {
        EventOutcome outcome;
        outcome.seq = e.seq;
        outcome.kind = e.kind;
        outcome.user_id = e.user_id;
        switch (e.kind) {
            case EventKind::Join: {
                if (!e.position || !e.k)
                    throw TraceError(e.seq, "join event lacks position or k");
                if (set.has_user(e.user_id))
                    throw TraceError(e.seq, "join of already-registered user " +
                                                std::to_string(e.user_id));
                outcome.report =
                    insert_user(set, {e.user_id, *e.position, *e.k}, config, rng);
                break;
            }
            case EventKind::Leave: {
                if (!set.has_user(e.user_id))
                    throw TraceError(e.seq, "leave of unknown user " +
                                                std::to_string(e.user_id));
                outcome.report = remove_user(set, e.user_id, config, rng);
                break;
            }
            case EventKind::Move: {
                if (!e.position) throw TraceError(e.seq, "move event lacks position");
                if (!set.has_user(e.user_id))
                    throw TraceError(e.seq, "move of unknown user " +
                                                std::to_string(e.user_id));
                outcome.report = move_user(set, e.user_id, *e.position, config, rng);
                break;
            }
            case EventKind::Query: {
                if (!set.has_user(e.user_id))
                    throw TraceError(e.seq, "query from unknown user " +
                                                std::to_string(e.user_id));
                ReportBuilder rb(EventKind::Query);
                const UserProfile& profile = set.profile(e.user_id);
                const SourceMessage msg{e.user_id, e.seq, profile.position,
                                        profile.k, e.category};
                (void)cloak(set, msg);
                outcome.report = rb.finish();
                break;
            }
            default:
                throw TraceError(e.seq, "unsupported event kind in a trace");
        }
        outcome.cluster_count_after = set.cluster_count();
        if (options.verify) require_safe(set);
        outcomes.push_back(std::move(outcome));
    }
    return outcomes;
}

ExperimentGrid ExperimentGrid::full(std::uint64_t seed) {
    ExperimentGrid g;
    g.k_modes = {{false, 2}, {false, 3}, {false, 4}, {false, 5}, {true, 0}};
    g.replications = 10;
    g.seed = seed;
    return g;
}

ExperimentGrid ExperimentGrid::quick(std::uint64_t seed) {
    ExperimentGrid g = full(seed);
    g.user_counts = {100, 200};
    g.replications = 2;
    return g;
}

namespace {

struct Cell {
    int user_count = 0;
    KMode k_mode;
    int replication = 0;
    std::uint64_t seed = 0;
};

std::uint64_t cell_seed(const ExperimentGrid& grid, const Cell& c) {
    std::uint64_t s = mix_seed(grid.seed, static_cast<std::uint64_t>(c.user_count));
    s = mix_seed(s, c.k_mode.random ? 0xffff : static_cast<std::uint64_t>(c.k_mode.k));
    return mix_seed(s, static_cast<std::uint64_t>(c.replication));
}

std::string pct_label(double pct) {
    return format_value(pct);
}

double mean_event_us(const std::vector<EventOutcome>& outcomes) {
    if (outcomes.empty()) return 0.0;
    double total = 0.0;
    for (const auto& o : outcomes) total += o.report.elapsed_us;
    return total / static_cast<double>(outcomes.size());
}

int total_adjusted(const std::vector<EventOutcome>& outcomes) {
    int total = 0;
    for (const auto& o : outcomes) total += o.report.clusters_adjusted();
    return total;
}

void write_repro_bundle(const std::filesystem::path& out_dir, const Cell& cell,
                        SeedingMethod method, const GeneratedMap& map,
                        const EventTrace& trace, const std::string& what) {
    if (out_dir.empty()) return;
    const std::string tag = "repro_n" + std::to_string(cell.user_count) + "_k" +
                            cell.k_mode.label() + "_r" +
                            std::to_string(cell.replication) + "_" +
                            to_string(method);
    const auto dir = out_dir / tag;
    std::filesystem::create_directories(dir);
    write_users_csv(dir / "users.csv", map.users);
    write_events_csv(dir / "events.csv", trace);
    std::ofstream info(dir / "info.txt");
    info << "user_count=" << cell.user_count << "\nk_mode=" << cell.k_mode.label()
         << "\nreplication=" << cell.replication << "\nseed=" << cell.seed
         << "\nseeding=" << to_string(method) << "\nfailure=" << what << '\n';
}

using SummaryKey = std::tuple<std::string, std::string, double>;  // family, seeding, x

void write_metric_rows(const std::filesystem::path& path,
                       const std::vector<MetricRow>& rows) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file " + path.string());
    out << "seeding,user_count,k_mode,replication,metric,value\n";
    for (const MetricRow& r : rows)
        out << r.seeding << ',' << r.user_count << ',' << r.k_mode << ','
            << r.replication << ',' << r.metric << ',' << format_value(r.value)
            << '\n';
}

void write_summary(const std::filesystem::path& path,
                   const std::map<SummaryKey, std::pair<double, int>>& acc) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file " + path.string());
    out << "family,seeding,x,value\n";
    for (const auto& [key, sum_count] : acc)
        out << std::get<0>(key) << ',' << std::get<1>(key) << ','
            << format_value(std::get<2>(key)) << ','
            << format_value(sum_count.first / sum_count.second) << '\n';
}

}  // namespace

ExperimentResult run_experiment(const ExperimentGrid& grid, const EngineConfig& base,
                                const std::filesystem::path& out_dir) {
    if (!out_dir.empty()) std::filesystem::create_directories(out_dir);

    ExperimentResult result;
    std::vector<Cell> cells;
    for (int n : grid.user_counts)
        for (const KMode& km : grid.k_modes)
            for (int rep = 0; rep < grid.replications; ++rep) {
                Cell c{n, km, rep, 0};
                c.seed = cell_seed(grid, c);
                cells.push_back(c);
                result.datasets.push_back({n, km.label(), rep, c.seed});
            }

    std::map<SummaryKey, std::pair<double, int>> summary;
    std::map<SummaryKey, std::pair<double, int>> summary_timing;
    auto add_summary = [](auto& acc, const std::string& family,
                          const std::string& seeding, double x, double v) {
        auto& slot = acc[{family, seeding, x}];
        slot.first += v;
        slot.second += 1;
    };

    for (const Cell& cell : cells) {
        WorkloadSpec wspec;
        wspec.user_count = cell.user_count;
        wspec.k_mode = cell.k_mode;
        wspec.world = grid.world;
        wspec.seed = cell.seed;
        wspec.poi_count = grid.poi_count;
        const GeneratedMap map = generate_map(wspec);

        int dataset_k_max = 0;
        for (const UserProfile& u : map.users)
            dataset_k_max = std::max(dataset_k_max, u.k);

        for (std::size_t mi = 0; mi < grid.seedings.size(); ++mi) {
            const SeedingMethod method = grid.seedings[mi];
            EngineConfig cfg = base;
            cfg.seeding = method;
            cfg.rng_seed = mix_seed(cell.seed, 0x5eed0 + mi);
            const std::string method_name = to_string(method);

            auto emit = [&](const std::string& metric, double value) {
                result.results.push_back({method_name, cell.user_count,
                                          cell.k_mode.label(), cell.replication,
                                          metric, value});
            };
            auto emit_timing = [&](const std::string& metric, double value) {
                result.timings.push_back({method_name, cell.user_count,
                                          cell.k_mode.label(), cell.replication,
                                          metric, value});
            };

            Rng build_rng(cfg.rng_seed);
            const auto t0 = std::chrono::steady_clock::now();
            ClusterSet built = build_clusters(map.users, cfg, build_rng);
            const auto t1 = std::chrono::steady_clock::now();
            const double build_us =
                std::chrono::duration<double, std::micro>(t1 - t0).count();

            try {
                require_safe(built);
            } catch (const SafetyViolationError& e) {
                write_repro_bundle(out_dir, cell, method, map, {}, e.what());
                throw;
            }

            const SnapshotMetrics snap = snapshot(built);
            emit("cluster_count", static_cast<double>(snap.cluster_count));
            emit("mean_cluster_size", snap.mean_cluster_size);
            emit("max_cluster_size", snap.max_cluster_size);
            emit("k_max", static_cast<double>(dataset_k_max));
            emit("mean_rk", snap.mean_rk);
            emit("min_rk", snap.min_rk);
            emit("strict_rk_fraction", snap.strict_rk_fraction);
            emit("mean_entropy", snap.mean_entropy);
            emit("mean_rs", snap.mean_rs);
            emit("mean_rs_literal", snap.mean_rs_literal);

            // slack of the entropy bound: min over clusters of (size - own k_max)
            int min_slack = std::numeric_limits<int>::max();
            for (const auto& [cid, c] : built.clusters()) {
                int ck = 0;
                for (UserId uid : c.members) ck = std::max(ck, built.profile(uid).k);
                min_slack = std::min(min_slack, static_cast<int>(c.size()) - ck);
            }
            emit("min_size_minus_kmax", static_cast<double>(min_slack));
            emit_timing("build_us", build_us);

            add_summary(summary, "rk_vs_n", method_name, cell.user_count, snap.mean_rk);
            add_summary(summary, "entropy_vs_n", method_name, cell.user_count,
                        snap.mean_entropy);
            add_summary(summary, "cluster_size_vs_n", method_name, cell.user_count,
                        snap.mean_cluster_size);
            add_summary(summary, "cluster_count_vs_n", method_name, cell.user_count,
                        static_cast<double>(snap.cluster_count));
            add_summary(summary, "rs_vs_n", method_name, cell.user_count, snap.mean_rs);
            add_summary(summary_timing, "build_time_vs_n", method_name,
                        cell.user_count, build_us);

            for (double pct : grid.churn_levels) {
                for (const bool is_leave : {false, true}) {
                    WorkloadSpec tspec = wspec;
                    tspec.churn = {};
                    if (is_leave) tspec.churn.leave_pct = pct;
                    else tspec.churn.join_pct = pct;
                    tspec.seed = mix_seed(
                        cell.seed, 0xc400 + static_cast<std::uint64_t>(pct) * 2 +
                                       (is_leave ? 1 : 0));
                    const EventTrace trace = generate_churn_trace(map.users, tspec);

                    ClusterSet sim = built;
                    Rng rng(mix_seed(cfg.rng_seed, 0x11a7 + (is_leave ? 1 : 0) +
                                                       static_cast<std::uint64_t>(pct)));
                    std::vector<EventOutcome> outcomes;
                    try {
                        outcomes = replay_trace(sim, trace, cfg, rng, {.verify = true});
                    } catch (const SafetyViolationError& e) {
                        write_repro_bundle(out_dir, cell, method, map, trace, e.what());
                        throw;
                    }

                    const std::string stem = is_leave ? "leave" : "join";
                    const std::string suffix = "_p" + pct_label(pct);
                    emit(stem + "_events" + suffix,
                         static_cast<double>(outcomes.size()));
                    emit(stem + "_adjusted" + suffix,
                         static_cast<double>(total_adjusted(outcomes)));
                    emit_timing(stem + "_event_mean_us" + suffix,
                                mean_event_us(outcomes));

                    if (is_leave)
                        add_summary(summary, "adjusted_vs_leave_pct", method_name, pct,
                                    total_adjusted(outcomes));
                    add_summary(summary_timing,
                                is_leave ? "leave_time_vs_pct" : "join_time_vs_pct",
                                method_name, pct, mean_event_us(outcomes));
                }
            }
        }
    }

    if (!out_dir.empty()) {
        {
            std::ofstream out(out_dir / "datasets.csv");
            if (!out) throw Error("cannot write datasets.csv");
            out << "user_count,k_mode,replication,seed\n";
            for (const DatasetRow& d : result.datasets)
                out << d.user_count << ',' << d.k_mode << ',' << d.replication << ','
                    << d.seed << '\n';
        }
        write_metric_rows(out_dir / "results.csv", result.results);
        write_metric_rows(out_dir / "timings.csv", result.timings);
        write_summary(out_dir / "summary.csv", summary);
        write_summary(out_dir / "summary_timing.csv", summary_timing);
    }
    return result;
}

}  // namespace clustercloak
