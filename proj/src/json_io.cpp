#include "exmat/json_io.hpp"

#include "exmat/errors.hpp"

namespace exmat {

namespace {

json cplx_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw InvalidInput("complex number must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

double require_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw InvalidInput(std::string("missing or non-numeric field \"") + key + "\"");
    return j[key].get<double>();
}

}  // namespace

json matrix_to_json(const ComplexMatrix& E) {
    json entries = json::array();
    for (std::size_t i = 0; i < E.rows(); ++i)
        for (std::size_t j = 0; j < E.cols(); ++j) entries.push_back(cplx_to_json(E(i, j)));
    return json{{"rows", E.rows()}, {"cols", E.cols()}, {"entries", entries}};
}

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw InvalidInput("matrix JSON must have rows, cols, entries");
    if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned())
        throw InvalidInput("matrix rows/cols must be positive integers");
    const auto rows = j["rows"].get<std::size_t>();
    const auto cols = j["cols"].get<std::size_t>();
    if (rows == 0 || cols == 0) throw InvalidInput("matrix rows/cols must be positive");
    if (!j["entries"].is_array() || j["entries"].size() != rows * cols)
        throw InvalidInput("matrix entries must be a row-major array of length rows*cols");
    std::vector<cplx> entries;
    entries.reserve(rows * cols);
    for (const auto& e : j["entries"]) entries.push_back(cplx_from_json(e));
    ComplexMatrix E(rows, cols, std::move(entries));
    E.require_finite("matrix JSON");
    return E;
}

json blaschke_to_json(const BlaschkeProduct& b) {
    json zeros = json::array();
    for (const cplx& w : b.zeros) zeros.push_back(cplx_to_json(w));
    return json{{"phase", b.phase}, {"zeros", zeros}};
}

BlaschkeProduct blaschke_from_json(const json& j, const Tolerances& tol) {
    if (!j.is_object()) throw InvalidInput("Blaschke JSON must be an object");
    const double phase = require_number(j, "phase");
    std::vector<cplx> zeros;
    if (j.contains("zeros")) {
        if (!j["zeros"].is_array()) throw InvalidInput("Blaschke zeros must be an array");
        for (const auto& z : j["zeros"]) zeros.push_back(cplx_from_json(z));
    }
    return make_blaschke(phase, std::move(zeros), tol);
}

json gt_to_json(const GtFunction& g) {
    return json{{"t", g.t}, {"inner", blaschke_to_json(g.inner)}};
}

GtFunction gt_from_json(const json& j, const Tolerances& tol) {
    if (!j.is_object() || !j.contains("inner")) throw InvalidInput("g_t JSON must have t and inner");
    return make_gt(require_number(j, "t"), blaschke_from_json(j["inner"], tol));
}

json block_spec_to_json(const BlockSpec& s) {
    return json{{"a", s.a},
                {"A", matrix_to_json(s.A)},
                {"variant", s.variant == BlockVariant::strict ? "strict" : "lastColZero"}};
}

BlockSpec block_spec_from_json(const json& j) {
    if (!j.is_object() || !j.contains("A")) throw InvalidInput("block spec JSON must have a, A, variant");
    BlockSpec s;
    s.a = require_number(j, "a");
    s.A = matrix_from_json(j["A"]);
    const std::string variant = j.value("variant", "strict");
    if (variant == "strict") {
        s.variant = BlockVariant::strict;
    } else if (variant == "lastColZero") {
        s.variant = BlockVariant::lastColZero;
    } else {
        throw InvalidInput("block spec variant must be \"strict\" or \"lastColZero\"");
    }
    return s;
}

json budget_to_json(const SearchBudget& b) {
    return json{{"gridResolution", b.gridResolution}, {"multistarts", b.multistarts},
                {"localIters", b.localIters},         {"degreeMin", b.degreeMin},
                {"degreeMax", b.degreeMax},           {"seed", b.seed}};
}

SearchBudget budget_from_json(const json& j, SearchBudget base) {
    if (!j.is_object()) throw InvalidInput("budget JSON must be an object");
    base.gridResolution = j.value("gridResolution", base.gridResolution);
    base.multistarts = j.value("multistarts", base.multistarts);
    base.localIters = j.value("localIters", base.localIters);
    base.degreeMin = j.value("degreeMin", base.degreeMin);
    base.degreeMax = j.value("degreeMax", base.degreeMax);
    base.seed = j.value("seed", base.seed);
    return base;
}

json tolerances_to_json(const Tolerances& t) {
    return json{{"normTol", t.normTol},
                {"eigTol", t.eigTol},
                {"decompTol", t.decompTol},
                {"clusterTol", t.clusterTol},
                {"boundaryMargin", t.boundaryMargin},
                {"specMargin", t.specMargin},
                {"traceTol", t.traceTol},
                {"certMargin", t.certMargin},
                {"canonTolRel", t.canonTolRel},
                {"orthTol", t.orthTol},
                {"posTol", t.posTol},
                {"orthFilterTol", t.orthFilterTol},
                {"mapNormTol", t.mapNormTol}};
}

void apply_tolerance_override(Tolerances& t, const std::string& key, double value) {
    if (key == "normTol") t.normTol = value;
    else if (key == "eigTol") t.eigTol = value;
    else if (key == "decompTol") t.decompTol = value;
    else if (key == "clusterTol") t.clusterTol = value;
    else if (key == "boundaryMargin") t.boundaryMargin = value;
    else if (key == "specMargin") t.specMargin = value;
    else if (key == "traceTol") t.traceTol = value;
    else if (key == "certMargin") t.certMargin = value;
    else if (key == "canonTolRel") t.canonTolRel = value;
    else if (key == "orthTol") t.orthTol = value;
    else if (key == "posTol") t.posTol = value;
    else if (key == "orthFilterTol") t.orthFilterTol = value;
    else if (key == "mapNormTol") t.mapNormTol = value;
    else throw InvalidInput("unknown tolerance key \"" + key + "\"");
}

Tolerances tolerances_from_json(const json& j, Tolerances base) {
    if (!j.is_object()) throw InvalidInput("tolerances JSON must be an object");
    for (const auto& [key, value] : j.items()) {
        if (!value.is_number()) throw InvalidInput("tolerance \"" + key + "\" must be numeric");
        apply_tolerance_override(base, key, value.get<double>());
    }
    return base;
}

json extremal_result_to_json(const ExtremalResult& r) {
    json perDegree = json::object();
    for (const auto& [d, db] : r.perDegree) {
        perDegree[std::to_string(d)] =
            json{{"best", blaschke_to_json(db.product)}, {"norm", db.norm}};
    }
    return json{{"bestNorm", r.bestNorm},
                {"best", blaschke_to_json(r.best)},
                {"perDegree", perDegree},
                {"evaluations", r.evaluations},
                {"budgetExhausted", r.budgetExhausted}};
}

std::string verdict_status_name(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::exceptionalUpToBudget: return "exceptionalUpToBudget";
        case VerdictStatus::certifiedNotExceptional: return "certifiedNotExceptional";
        case VerdictStatus::notApplicable: return "notApplicable";
    }
    return "unknown";
}

std::string verdict_reason_name(VerdictReason r) {
    switch (r) {
        case VerdictReason::spectrumNotInDisk: return "spectrumNotInDisk";
        case VerdictReason::normAtMostOne: return "normAtMostOne";
        case VerdictReason::traceZeroExact2x2: return "traceZeroExact2x2";
        case VerdictReason::blaschkeWitness: return "blaschkeWitness";
        case VerdictReason::searchExhausted: return "searchExhausted";
    }
    return "unknown";
}

json verdict_to_json(const ExceptionalityVerdict& v) {
    json margins{{"spectralRadius", v.margins.spectralRadius},
                 {"operatorNorm", v.margins.operatorNorm},
                 {"bestSearchNorm",
                  v.margins.bestSearchNorm ? json(*v.margins.bestSearchNorm) : json(nullptr)}};
    json j{{"status", verdict_status_name(v.status)},
           {"reason", verdict_reason_name(v.reason)},
           {"witness", v.witness ? blaschke_to_json(*v.witness) : json(nullptr)},
           {"witnessNorm", v.witnessNorm ? json(*v.witnessNorm) : json(nullptr)},
           {"margins", margins}};
    if (v.inconsistent) j["inconsistent"] = true;
    return j;
}

json canonical_form_to_json(const CanonicalForm& cf) {
    return json{{"U", matrix_to_json(cf.U)},
                {"B", matrix_to_json(cf.B)},
                {"a", cf.a},
                {"Ablock", matrix_to_json(cf.Ablock)},
                {"residual", cf.residual}};
}

}  // namespace exmat
