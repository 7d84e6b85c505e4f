// Copyright (c) 2026 The mrlpos developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "mrlpos/mrlpos.h"

#include "mrlpos/output.hpp"
#include "mrlpos/scenario.hpp"

#include <exception>
#include <new>
#include <string>

struct mrlpos_scenario {
    mrlpos::Scenario value;
};

struct mrlpos_result {
    mrlpos::SimulationResult value;
};

struct mrlpos_manifest {
    mrlpos::RunManifest value;
};

namespace {

thread_local std::string g_last_error;

mrlpos_status status_of(mrlpos::ErrorCode code)
{
    using mrlpos::ErrorCode;
    switch (code) {
    case ErrorCode::InvalidArgument: return MRLPOS_ERR_INVALID_ARGUMENT;
    case ErrorCode::Parse: return MRLPOS_ERR_PARSE;
    case ErrorCode::Range: return MRLPOS_ERR_RANGE;
    case ErrorCode::UnknownKey: return MRLPOS_ERR_UNKNOWN_KEY;
    case ErrorCode::Io: return MRLPOS_ERR_IO;
    case ErrorCode::ContractViolation: return MRLPOS_ERR_CONTRACT;
    case ErrorCode::EmptyCandidates: return MRLPOS_ERR_EMPTY;
    }
    return MRLPOS_ERR_INTERNAL;
}

template <typename F>
mrlpos_status guarded(F&& body)
{
    g_last_error.clear();
    try {
        body();
        return MRLPOS_OK;
    } catch (const mrlpos::Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
    } catch (const std::exception& e) {
        g_last_error = e.what();
    } catch (...) {
        g_last_error = "unknown error";
    }
    return MRLPOS_ERR_INTERNAL;
}

mrlpos_status null_arg(const char* name)
{
    g_last_error = std::string(name) + " must not be NULL";
    return MRLPOS_ERR_INVALID_ARGUMENT;
}

std::optional<std::uint64_t> seed_of(const uint64_t* seed)
{
    return seed ? std::optional<std::uint64_t>(*seed) : std::nullopt;
}

} // namespace

extern "C" {

const char* mrlpos_version(void) { return "0.1.0"; }

const char* mrlpos_last_error(void) { return g_last_error.c_str(); }

mrlpos_status mrlpos_q_update(double q, double alpha, double r, double gamma, double max_next, double* out)
{
    if (!out) return null_arg("out");
    return guarded([&] { *out = mrlpos::q_update(q, alpha, r, gamma, max_next); });
}

mrlpos_status mrlpos_scenario_load(const char* path, mrlpos_scenario** out)
{
    if (!path) return null_arg("path");
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] { *out = new mrlpos_scenario{mrlpos::load_scenario(path)}; });
}

mrlpos_status mrlpos_scenario_parse(const char* yaml_text, mrlpos_scenario** out)
{
    if (!yaml_text) return null_arg("yaml_text");
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] { *out = new mrlpos_scenario{mrlpos::parse_scenario(yaml_text)}; });
}

void mrlpos_scenario_set_seed(mrlpos_scenario* s, uint64_t seed)
{
    if (s) s->value.seed = seed;
}

mrlpos_status mrlpos_scenario_set_elector(mrlpos_scenario* s, mrlpos_elector elector)
{
    if (!s) return null_arg("scenario");
    switch (elector) {
    case MRLPOS_ELECTOR_MRLPOS: s->value.elector = mrlpos::Elector::MrlPos; return MRLPOS_OK;
    case MRLPOS_ELECTOR_POS: s->value.elector = mrlpos::Elector::PoS; return MRLPOS_OK;
    case MRLPOS_ELECTOR_DPOS: s->value.elector = mrlpos::Elector::DPoS; return MRLPOS_OK;
    }
    g_last_error = "unknown elector";
    return MRLPOS_ERR_INVALID_ARGUMENT;
}

uint64_t mrlpos_scenario_seed(const mrlpos_scenario* s) { return s ? s->value.seed : 0; }
uint32_t mrlpos_scenario_rounds(const mrlpos_scenario* s) { return s ? s->value.rounds : 0; }
uint32_t mrlpos_scenario_node_count(const mrlpos_scenario* s) { return s ? s->value.node_count() : 0; }
void mrlpos_scenario_free(mrlpos_scenario* s) { delete s; }

mrlpos_status mrlpos_run(const mrlpos_scenario* s, mrlpos_result** out)
{
    if (!s) return null_arg("scenario");
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] { *out = new mrlpos_result{mrlpos::run_simulation(s->value)}; });
}

uint32_t mrlpos_result_rounds_run(const mrlpos_result* r) { return r ? r->value.summary.rounds_run : 0; }
int mrlpos_result_halted_early(const mrlpos_result* r) { return r && r->value.summary.halted_early ? 1 : 0; }

int64_t mrlpos_result_rounds_to_elimination(const mrlpos_result* r)
{
    if (!r || !r->value.summary.rounds_to_elimination) return -1;
    return *r->value.summary.rounds_to_elimination;
}

uint32_t mrlpos_result_final_active_malicious(const mrlpos_result* r)
{
    return r ? r->value.summary.final_active_malicious : 0;
}

uint32_t mrlpos_result_final_active_honest(const mrlpos_result* r)
{
    return r ? r->value.summary.final_active_honest : 0;
}

int64_t mrlpos_result_elected(const mrlpos_result* r, uint32_t round_index)
{
    if (!r || round_index >= r->value.records.size()) return -1;
    const auto& elected = r->value.records[round_index].elected;
    return elected ? static_cast<int64_t>(elected->value) : -1;
}

void mrlpos_result_free(mrlpos_result* r) { delete r; }

mrlpos_status mrlpos_cmd_run(const char* scenario_path, const uint64_t* seed, const char* out_dir,
                             mrlpos_manifest** out)
{
    if (!scenario_path) return null_arg("scenario_path");
    if (!out_dir) return null_arg("out_dir");
    if (out) *out = nullptr;
    return guarded([&] {
        auto m = mrlpos::cmd_run(scenario_path, seed_of(seed), out_dir);
        if (out) *out = new mrlpos_manifest{std::move(m)};
    });
}

mrlpos_status mrlpos_cmd_compare(const char* scenario_path, const uint64_t* seed, const char* out_dir,
                                 mrlpos_manifest** out)
{
    if (!scenario_path) return null_arg("scenario_path");
    if (!out_dir) return null_arg("out_dir");
    if (out) *out = nullptr;
    return guarded([&] {
        auto m = mrlpos::cmd_compare(scenario_path, seed_of(seed), out_dir);
        if (out) *out = new mrlpos_manifest{std::move(m)};
    });
}

mrlpos_status mrlpos_cmd_trace(const char* script_path, const char* out_dir, mrlpos_manifest** out)
{
    if (!script_path) return null_arg("script_path");
    if (!out_dir) return null_arg("out_dir");
    if (out) *out = nullptr;
    return guarded([&] {
        auto m = mrlpos::cmd_trace(script_path, out_dir);
        if (out) *out = new mrlpos_manifest{std::move(m)};
    });
}

size_t mrlpos_manifest_file_count(const mrlpos_manifest* m) { return m ? m->value.files.size() : 0; }

const char* mrlpos_manifest_file_name(const mrlpos_manifest* m, size_t i)
{
    return m && i < m->value.files.size() ? m->value.files[i].name.c_str() : nullptr;
}

const char* mrlpos_manifest_file_sha256(const mrlpos_manifest* m, size_t i)
{
    return m && i < m->value.files.size() ? m->value.files[i].sha256.c_str() : nullptr;
}

void mrlpos_manifest_free(mrlpos_manifest* m) { delete m; }

} // extern "C"
