#ifndef IMGROWTH_H
#define IMGROWTH_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(IMG_BUILDING_LIBRARY)
#define IMG_API __attribute__((visibility("default")))
#else
#define IMG_API
#endif

/* Results 0..2 describe the computed property; 64 and above are errors. */
typedef enum img_status {
    IMG_OK = 0,
    IMG_FAILS = 1,
    IMG_INCONCLUSIVE = 2,
    IMG_USAGE = 64,
    IMG_DATA = 65,
    IMG_NOINPUT = 66,
    IMG_INTERNAL = 70,
    IMG_IO = 74
} img_status;

typedef struct img_map img_map;
typedef struct img_params img_params;
typedef struct img_report img_report;

IMG_API const char* img_version(void);
/* Message of the last error on the calling thread, "" if none. */
IMG_API const char* img_last_error(void);

/* Any argument may be NULL. File components replace those of the catalog entry. */
IMG_API img_status img_map_load(const char* catalog_name, const char* presentation_file, const char* rule_file,
                                const char* portrait_file, const char* edge_file, const char* obstruction_file,
                                img_map** out);
IMG_API img_status img_map_from_catalog(const char* name, img_map** out);
IMG_API void img_map_free(img_map* map);
IMG_API const char* img_map_name(const img_map* map);

/* String options such as "level", "element", "gens", "word", "budget-states". */
IMG_API img_params* img_params_new(void);
IMG_API img_status img_params_set(img_params* params, const char* key, const char* value);
IMG_API void img_params_free(img_params* params);

/* Each operation stores a report in *out and returns its status (0..2), or
   an error code with *out set to NULL. params may be NULL. */
IMG_API img_status img_act(const img_map* map, const img_params* params, img_report** out);
IMG_API img_status img_mul(const img_map* map, const img_params* params, img_report** out);
IMG_API img_status img_section(const img_map* map, const img_params* params, img_report** out);
IMG_API img_status img_trivial(const img_map* map, const img_params* params, img_report** out);
IMG_API img_status img_equal(const img_map* map, const img_params* params, img_report** out);
IMG_API img_status img_order(const img_map* map, const img_params* params, img_report** out);
IMG_API img_status img_inf_order(const img_map* map, const img_params* params, img_report** out);
IMG_API img_status img_schreier(const img_map* map, const img_params* params, img_report** out);
IMG_API img_status img_census(const img_map* map, const img_params* params, img_report** out);
IMG_API img_status img_free_semigroup(const img_map* map, const img_params* params, img_report** out);
IMG_API img_status img_verify_identities(const img_map* map, const img_params* params, img_report** out);
IMG_API img_status img_recurrence(const img_map* map, const img_params* params, img_report** out);
IMG_API img_status img_subdivide(const img_map* map, const img_params* params, img_report** out);
IMG_API img_status img_flowers(const img_map* map, const img_params* params, img_report** out);
IMG_API img_status img_edge_report(const img_map* map, const img_params* params, img_report** out);
IMG_API img_status img_tile_action(const img_map* map, const img_params* params, img_report** out);
IMG_API img_status img_intertwine(const img_map* map, const img_params* params, img_report** out);
IMG_API img_status img_alpha(const img_map* map, const img_params* params, img_report** out);
IMG_API img_status img_orbifold(const img_map* map, const img_params* params, img_report** out);
IMG_API img_status img_check_criterion(const img_map* map, const img_params* params, img_report** out);
IMG_API img_status img_obstruction(const img_map* map, const img_params* params, img_report** out);
IMG_API img_status img_catalog_list(const img_params* params, img_report** out);
IMG_API img_status img_catalog_show(const char* name, const img_params* params, img_report** out);

IMG_API img_status img_report_status(const img_report* report);
/* Strings stay valid until the report is freed. img_report_dot returns NULL
   when the operation has no graph export. */
IMG_API const char* img_report_json(const img_report* report);
IMG_API const char* img_report_text(const img_report* report);
IMG_API const char* img_report_dot(const img_report* report);
IMG_API void img_report_free(img_report* report);

#ifdef __cplusplus
}
#endif

#endif
