#include "imgrowth/imgrowth.h"

#include <new>

#include "imgrowth/errors.hpp"
#include "imgrowth/reports.hpp"

struct img_map {
    img::CatalogEntry entry;
};

struct img_params {
    img::Params params;
};

struct img_report {
    img::Status status;
    std::string json, text, dot;
};

namespace {

thread_local std::string last_error;

template <class F>
img_status guarded(F&& f) {
    try {
        last_error.clear();
        return f();
    } catch (const img::ParseError& e) {
        last_error = e.what();
        return IMG_DATA;
    } catch (const img::ValidationError& e) {
        last_error = e.what();
        return IMG_DATA;
    } catch (const img::OutOfRange& e) {
        last_error = e.what();
        return IMG_USAGE;
    } catch (const img::BudgetExceeded& e) {
        last_error = e.what();
        return IMG_INCONCLUSIVE;
    } catch (const img::FileError& e) {
        last_error = e.what();
        return e.missing() ? IMG_NOINPUT : IMG_IO;
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return IMG_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return IMG_INTERNAL;
    }
}

img_status deliver(img::Report&& r, img_report** out) {
    auto* rep = new img_report;
    rep->status = r.status;
    rep->json = r.json.dump();
    rep->text = img::report_text(r.json);
    rep->dot = std::move(r.dot);
    *out = rep;
    return static_cast<img_status>(r.status);
}

const img::Params& params_of(const img_params* p) {
    static const img::Params empty;
    return p ? p->params : empty;
}

using Op = img::Report (*)(const img::CatalogEntry&, const img::Params&);

img_status run(Op op, const img_map* map, const img_params* params, img_report** out) {
    if (!out) {
        last_error = "null output pointer";
        return IMG_USAGE;
    }
    *out = nullptr;
    if (!map) {
        last_error = "null map";
        return IMG_USAGE;
    }
    return guarded([&] { return deliver(op(map->entry, params_of(params)), out); });
}

std::string opt(const char* s) { return s ? s : ""; }

}  // namespace

extern "C" {

const char* img_version(void) { return "1.0.0"; }

const char* img_last_error(void) { return last_error.c_str(); }

img_status img_map_load(const char* catalog_name, const char* presentation_file, const char* rule_file,
                        const char* portrait_file, const char* edge_file, const char* obstruction_file,
                        img_map** out) {
    if (!out) {
        last_error = "null output pointer";
        return IMG_USAGE;
    }
    *out = nullptr;
    return guarded([&] {
        img::MapSource src{opt(catalog_name), opt(presentation_file), opt(rule_file),
                           opt(portrait_file), opt(edge_file),        opt(obstruction_file)};
        *out = new img_map{img::load_map(src)};
        return IMG_OK;
    });
}

img_status img_map_from_catalog(const char* name, img_map** out) {
    if (!name) {
        last_error = "null catalog name";
        return IMG_USAGE;
    }
    return img_map_load(name, nullptr, nullptr, nullptr, nullptr, nullptr, out);
}

void img_map_free(img_map* map) { delete map; }

const char* img_map_name(const img_map* map) { return map ? map->entry.name.c_str() : ""; }

img_params* img_params_new(void) { return new (std::nothrow) img_params; }

img_status img_params_set(img_params* params, const char* key, const char* value) {
    if (!params || !key || !value) {
        last_error = "null argument";
        return IMG_USAGE;
    }
    return guarded([&] {
        params->params.set(key, value);
        return IMG_OK;
    });
}

void img_params_free(img_params* params) { delete params; }

#define IMG_OPERATION(fn, op) \
    img_status fn(const img_map* map, const img_params* params, img_report** out) { return run(op, map, params, out); }

IMG_OPERATION(img_act, img::op_act)
IMG_OPERATION(img_mul, img::op_mul)
IMG_OPERATION(img_section, img::op_section)
IMG_OPERATION(img_trivial, img::op_trivial)
IMG_OPERATION(img_equal, img::op_equal)
IMG_OPERATION(img_order, img::op_order)
IMG_OPERATION(img_inf_order, img::op_inf_order)
IMG_OPERATION(img_schreier, img::op_schreier)
IMG_OPERATION(img_census, img::op_census)
IMG_OPERATION(img_free_semigroup, img::op_free_semigroup)
IMG_OPERATION(img_verify_identities, img::op_verify_identities)
IMG_OPERATION(img_recurrence, img::op_recurrence)
IMG_OPERATION(img_subdivide, img::op_subdivide)
IMG_OPERATION(img_flowers, img::op_flowers)
IMG_OPERATION(img_edge_report, img::op_edge_report)
IMG_OPERATION(img_tile_action, img::op_tile_action)
IMG_OPERATION(img_intertwine, img::op_intertwine)
IMG_OPERATION(img_alpha, img::op_alpha)
IMG_OPERATION(img_orbifold, img::op_orbifold)
IMG_OPERATION(img_check_criterion, img::op_check_criterion)
IMG_OPERATION(img_obstruction, img::op_obstruction)

#undef IMG_OPERATION

img_status img_catalog_list(const img_params* params, img_report** out) {
    if (!out) {
        last_error = "null output pointer";
        return IMG_USAGE;
    }
    *out = nullptr;
    return guarded([&] { return deliver(img::op_catalog_list(params_of(params)), out); });
}

img_status img_catalog_show(const char* name, const img_params* params, img_report** out) {
    if (!out || !name) {
        last_error = "null argument";
        return IMG_USAGE;
    }
    *out = nullptr;
    return guarded([&] { return deliver(img::op_catalog_show(name, params_of(params)), out); });
}

img_status img_report_status(const img_report* report) {
    return report ? static_cast<img_status>(report->status) : IMG_USAGE;
}

const char* img_report_json(const img_report* report) { return report ? report->json.c_str() : nullptr; }

const char* img_report_text(const img_report* report) { return report ? report->text.c_str() : nullptr; }

const char* img_report_dot(const img_report* report) {
    return report && !report->dot.empty() ? report->dot.c_str() : nullptr;
}

void img_report_free(img_report* report) { delete report; }

}  // extern "C"
