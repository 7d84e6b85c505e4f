/* Copyright (c) 2026 The mrlpos developers
 * Distributed under the MIT software license, see the accompanying
 * file COPYING or http://www.opensource.org/licenses/mit-license.php.
 */

#ifndef MRLPOS_H
#define MRLPOS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MRLPOS_BUILDING)
#    define MRLPOS_API __declspec(dllexport)
#  else
#    define MRLPOS_API __declspec(dllimport)
#  endif
#else
#  define MRLPOS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mrlpos_status {
    MRLPOS_OK = 0,
    MRLPOS_ERR_INVALID_ARGUMENT = 1,
    MRLPOS_ERR_PARSE = 2,
    MRLPOS_ERR_RANGE = 3,
    MRLPOS_ERR_UNKNOWN_KEY = 4,
    MRLPOS_ERR_IO = 5,
    MRLPOS_ERR_CONTRACT = 6,
    MRLPOS_ERR_EMPTY = 7,
    MRLPOS_ERR_INTERNAL = 99
} mrlpos_status;

typedef enum mrlpos_elector {
    MRLPOS_ELECTOR_MRLPOS = 0,
    MRLPOS_ELECTOR_POS = 1,
    MRLPOS_ELECTOR_DPOS = 2
} mrlpos_elector;

typedef struct mrlpos_scenario mrlpos_scenario;
typedef struct mrlpos_result mrlpos_result;
typedef struct mrlpos_manifest mrlpos_manifest;

/* Library version, e.g. "0.1.0". */
MRLPOS_API const char* mrlpos_version(void);

/* Message of the last failed call on this thread; "" when none. Valid until the next call. */
MRLPOS_API const char* mrlpos_last_error(void);

/* (1 - alpha) * q + alpha * (r + gamma * max_next). */
MRLPOS_API mrlpos_status mrlpos_q_update(double q, double alpha, double r, double gamma, double max_next,
                                         double* out);

/* Scenarios. Loaders validate fully; free with mrlpos_scenario_free. */
MRLPOS_API mrlpos_status mrlpos_scenario_load(const char* path, mrlpos_scenario** out);
MRLPOS_API mrlpos_status mrlpos_scenario_parse(const char* yaml_text, mrlpos_scenario** out);
MRLPOS_API void mrlpos_scenario_set_seed(mrlpos_scenario* s, uint64_t seed);
MRLPOS_API mrlpos_status mrlpos_scenario_set_elector(mrlpos_scenario* s, mrlpos_elector elector);
MRLPOS_API uint64_t mrlpos_scenario_seed(const mrlpos_scenario* s);
MRLPOS_API uint32_t mrlpos_scenario_rounds(const mrlpos_scenario* s);
MRLPOS_API uint32_t mrlpos_scenario_node_count(const mrlpos_scenario* s);
MRLPOS_API void mrlpos_scenario_free(mrlpos_scenario* s);

/* Simulation. */
MRLPOS_API mrlpos_status mrlpos_run(const mrlpos_scenario* s, mrlpos_result** out);
MRLPOS_API uint32_t mrlpos_result_rounds_run(const mrlpos_result* r);
MRLPOS_API int mrlpos_result_halted_early(const mrlpos_result* r);
/* -1 when some malicious node was still active at the end. */
MRLPOS_API int64_t mrlpos_result_rounds_to_elimination(const mrlpos_result* r);
MRLPOS_API uint32_t mrlpos_result_final_active_malicious(const mrlpos_result* r);
MRLPOS_API uint32_t mrlpos_result_final_active_honest(const mrlpos_result* r);
/* Elected node of a round, or -1 for a skipped round or an index past the end. */
MRLPOS_API int64_t mrlpos_result_elected(const mrlpos_result* r, uint32_t round_index);
MRLPOS_API void mrlpos_result_free(mrlpos_result* r);

/* File-producing commands. seed may be NULL to keep the scenario's own seed. */
MRLPOS_API mrlpos_status mrlpos_cmd_run(const char* scenario_path, const uint64_t* seed, const char* out_dir,
                                        mrlpos_manifest** out);
MRLPOS_API mrlpos_status mrlpos_cmd_compare(const char* scenario_path, const uint64_t* seed, const char* out_dir,
                                            mrlpos_manifest** out);
MRLPOS_API mrlpos_status mrlpos_cmd_trace(const char* script_path, const char* out_dir, mrlpos_manifest** out);

MRLPOS_API size_t mrlpos_manifest_file_count(const mrlpos_manifest* m);
MRLPOS_API const char* mrlpos_manifest_file_name(const mrlpos_manifest* m, size_t i);
MRLPOS_API const char* mrlpos_manifest_file_sha256(const mrlpos_manifest* m, size_t i);
MRLPOS_API void mrlpos_manifest_free(mrlpos_manifest* m);

#ifdef __cplusplus
}
#endif

#endif /* MRLPOS_H */
