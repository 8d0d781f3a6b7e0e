#pragma once

#include <json.hpp>
#include <map>
#include <string>

#include "imgrowth/catalog.hpp"

namespace img {

// Where a map comes from: a catalog entry, files, or a catalog entry with
// some components replaced by files.
struct MapSource {
    std::string catalog;
    std::string presentation_file;
    std::string rule_file;
    std::string portrait_file;
    std::string edge_file;
    std::string obstruction_file;
};

std::string read_file(const std::string& path);
CatalogEntry load_map(const MapSource& src);

// Operation arguments as string key/value pairs, e.g. "level" -> "3".
class Params {
public:
    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const { return values_.count(key) > 0; }
    std::string str(const std::string& key, const std::string& fallback = "") const;
    unsigned uint(const std::string& key, unsigned fallback) const;
    Limits limits() const;

private:
    std::map<std::string, std::string> values_;
};

enum class Status { Ok = 0, Fails = 1, Inconclusive = 2 };

struct Report {
    Status status = Status::Ok;
    nlohmann::ordered_json json;
    std::string dot;  // empty unless the operation has a graph export
};

// "key: value" lines; nested keys are joined with dots.
std::string report_text(const nlohmann::ordered_json& j);

Report op_act(const CatalogEntry& m, const Params& a);
Report op_mul(const CatalogEntry& m, const Params& a);
Report op_section(const CatalogEntry& m, const Params& a);
Report op_trivial(const CatalogEntry& m, const Params& a);
Report op_equal(const CatalogEntry& m, const Params& a);
Report op_order(const CatalogEntry& m, const Params& a);
Report op_inf_order(const CatalogEntry& m, const Params& a);
Report op_schreier(const CatalogEntry& m, const Params& a);
Report op_census(const CatalogEntry& m, const Params& a);
Report op_free_semigroup(const CatalogEntry& m, const Params& a);
Report op_verify_identities(const CatalogEntry& m, const Params& a);
Report op_recurrence(const CatalogEntry& m, const Params& a);
Report op_subdivide(const CatalogEntry& m, const Params& a);
Report op_flowers(const CatalogEntry& m, const Params& a);
Report op_edge_report(const CatalogEntry& m, const Params& a);
Report op_tile_action(const CatalogEntry& m, const Params& a);
Report op_intertwine(const CatalogEntry& m, const Params& a);
Report op_alpha(const CatalogEntry& m, const Params& a);
Report op_orbifold(const CatalogEntry& m, const Params& a);
Report op_check_criterion(const CatalogEntry& m, const Params& a);
Report op_obstruction(const CatalogEntry& m, const Params& a);
Report op_catalog_list(const Params& a);
Report op_catalog_show(const std::string& name, const Params& a);

}  // namespace img
