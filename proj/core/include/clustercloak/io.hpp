#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "clustercloak/anonymizer.hpp"
#include "clustercloak/metrics.hpp"
#include "clustercloak/types.hpp"

namespace clustercloak {

/// CSV and config-file plumbing. All readers throw CsvError with the
/// 1-based line number on malformed input; all number formatting is
/// locale-independent.

/// Splits one CSV line on commas and trims surrounding whitespace.
/// Fields here never contain commas or quotes, so no quoting is handled.
std::vector<std::string> split_csv(const std::string& line);

/// Doubles formatted to round-trip exactly (%.17g); used wherever the
/// output may be read back (positions, seeds, repro bundles).
std::string format_coord(double v);

/// Doubles formatted for reports (%.12g).
std::string format_value(double v);

// users CSV: header "user_id,x,y,k"
std::vector<UserProfile> load_users_csv(const std::filesystem::path& path);
void write_users_csv(const std::filesystem::path& path,
                     std::span<const UserProfile> users);

// pois CSV: header "poi_id,x,y,category"
PoiStore load_pois_csv(const std::filesystem::path& path);
void write_pois_csv(const std::filesystem::path& path, const PoiStore& store);

// cluster assignment CSV: header "user_id,cluster_id", user-id order
void write_clusters_csv(const std::filesystem::path& path, const ClusterSet& set);

/// Snapshot metrics as one CSV: a row per user, a row per cluster and one
/// aggregate row, discriminated by the first column.
void write_metrics_csv(const std::filesystem::path& path, const SnapshotMetrics& m);

/// Plain `key=value` file; '#' starts a comment, blank lines are ignored.
/// Duplicate keys keep the last value.
std::map<std::string, std::string> load_key_values(const std::filesystem::path& path);

}  // namespace clustercloak
