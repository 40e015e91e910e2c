#include "tamer/tamer.h"

#include <memory>
#include <new>

#include "commands.hpp"
#include "tamer/error.hpp"
#include "tamer/json_io.hpp"

struct tamer_context {
    tamer::detail::Settings settings;
    std::string result;
    std::string error;
    std::string budget;
};

struct tamer_model {
    tamer::RootStackModel model;
    std::string json;
};

namespace {

tamer_status fail(tamer_context* ctx, tamer_status s, const std::string& msg, const std::string& budget = "") {
    if (ctx) {
        ctx->error = msg;
        ctx->budget = budget;
        ctx->result.clear();
    }
    return s;
}

template <class F>
tamer_status guarded(tamer_context* ctx, F&& f) {
    if (!ctx) return TAMER_INPUT_ERROR;
    ctx->error.clear();
    ctx->budget.clear();
    try {
        f();
        return TAMER_OK;
    } catch (const tamer::BudgetExceeded& e) {
        return fail(ctx, TAMER_BUDGET_EXCEEDED, e.what(), e.budget());
    } catch (const tamer::InputError& e) {
        return fail(ctx, TAMER_INPUT_ERROR, e.what());
    } catch (const tamer::AssertionFailure& e) {
        return fail(ctx, TAMER_VERIFICATION_FAILED, e.what());
    } catch (const std::exception& e) {
        return fail(ctx, TAMER_INTERNAL_ERROR, e.what());
    }
}

}  // namespace

extern "C" {

const char* tamer_version(void) { return TAMER_VERSION; }

tamer_context* tamer_context_new(void) { return new (std::nothrow) tamer_context(); }

void tamer_context_free(tamer_context* ctx) { delete ctx; }

tamer_status tamer_set_budget(tamer_context* ctx, uint64_t torsion, uint64_t dim) {
    if (!ctx) return TAMER_INPUT_ERROR;
    if (torsion) ctx->settings.budget_torsion = torsion;
    if (dim) ctx->settings.budget_dim = dim > tamer::kMaxChainDim ? tamer::kMaxChainDim : static_cast<std::size_t>(dim);
    return TAMER_OK;
}

tamer_status tamer_set_threads(tamer_context* ctx, unsigned threads) {
    if (!ctx) return TAMER_INPUT_ERROR;
    ctx->settings.threads = threads;
    return TAMER_OK;
}

const char* tamer_command_name(size_t index) {
    const auto& names = tamer::detail::command_names();
    return index < names.size() ? names[index].c_str() : nullptr;
}

tamer_status tamer_run(tamer_context* ctx, const char* command, const char* request_json) {
    if (!ctx) return TAMER_INPUT_ERROR;
    if (!command) return fail(ctx, TAMER_INPUT_ERROR, "missing subcommand");
    try {
        auto out = tamer::detail::run_command(command, request_json ? request_json : "", ctx->settings);
        ctx->result = std::move(out.output);
        ctx->error = std::move(out.error);
        ctx->budget = std::move(out.budget);
        return static_cast<tamer_status>(out.status);
    } catch (const std::exception& e) {
        return fail(ctx, TAMER_INTERNAL_ERROR, e.what());
    }
}

const char* tamer_result(const tamer_context* ctx) { return ctx ? ctx->result.c_str() : ""; }
const char* tamer_last_error(const tamer_context* ctx) { return ctx ? ctx->error.c_str() : ""; }
const char* tamer_last_budget(const tamer_context* ctx) { return ctx ? ctx->budget.c_str() : ""; }

tamer_status tamer_model_parse(tamer_context* ctx, const char* model_json, tamer_model** out) {
    if (!out) return fail(ctx, TAMER_INPUT_ERROR, "null output handle");
    *out = nullptr;
    return guarded(ctx, [&] {
        if (!model_json) throw tamer::InputError("null model text");
        auto m = std::make_unique<tamer_model>();
        m->model = tamer::model_from_json(model_json);
        m->json = tamer::model_to_json(m->model);
        *out = m.release();
    });
}

void tamer_model_free(tamer_model* model) { delete model; }

const char* tamer_model_json(const tamer_model* model) { return model ? model->json.c_str() : ""; }

tamer_status tamer_model_decide(tamer_context* ctx, const tamer_model* model, int* exists) {
    return guarded(ctx, [&] {
        if (!model || !exists) throw tamer::InputError("null argument");
        *exists = tamer::weights_side(model->model, ctx->settings.budget_torsion).exists ? 1 : 0;
    });
}

tamer_status tamer_model_torsion_order(tamer_context* ctx, const tamer_model* model, uint64_t* order) {
    return guarded(ctx, [&] {
        if (!model || !order) throw tamer::InputError("null argument");
        tamer::PicRootStack pic(model->model);
        if (pic.torsion_order() > ctx->settings.budget_torsion)
            throw tamer::BudgetExceeded("torsion", "torsion subgroup exceeds the budget");
        *order = pic.torsion_order();
    });
}

}  // extern "C"
