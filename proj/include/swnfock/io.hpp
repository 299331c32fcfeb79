#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "swnfock/expvec.hpp"
#include "swnfock/report.hpp"
#include "swnfock/swnalg.hpp"
#include "swnfock/testfn.hpp"

namespace swnfock {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace io {

using nlohmann::json;

/// 17 significant digits: enough to round-trip any double.
inline std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string fmt(const rational& x) {
    return "\"" + x.str() + "\"";
}

template <class S>
std::string fmt_cplx(const cplx<S>& z) {
    return "{\"re\": " + fmt(z.re) + ", \"im\": " + fmt(z.im) + "}";
}

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

template <class S>
StepFunction<S> parse_step(const json& j) {
    if (!j.contains("cells")) throw ParseError("StepFunction: missing field 'cells'");
    StepFunction<S> f;
    f.dim = j.value("dim", 1);
    for (const auto& c : j.at("cells")) {
        Box<S> box;
        for (const auto& field : {"lo", "hi"}) {
            if (!c.contains(field)) throw ParseError(std::string("cell: missing field '") + field + "'");
        }
        for (double v : c.at("lo")) box.lo.push_back(scalar_from_double<S>(v));
        for (double v : c.at("hi")) box.hi.push_back(scalar_from_double<S>(v));
        if (box.dim() != f.dim || !box.valid())
            throw ParseError("cell: box invalid or wrong dimension");
        cplx<S> val{scalar_from_double<S>(c.value("re", 0.0)),
                    scalar_from_double<S>(c.value("im", 0.0))};
        f.cells.push_back({std::move(box), std::move(val)});
    }
    f.normalize();
    return f;
}

inline SampledFunction parse_sampled(const json& j) {
    for (const auto& field : {"lo", "hi", "n", "values"})
        if (!j.contains(field)) throw ParseError(std::string("SampledFunction: missing field '") + field + "'");
    SampledFunction f;
    f.dim = j.value("dim", 1);
    f.lo = j.at("lo").get<double>();
    f.hi = j.at("hi").get<double>();
    f.n = j.at("n").get<int>();
    for (const auto& v : j.at("values")) {
        if (!v.is_array() || v.size() != 2) throw ParseError("SampledFunction: value entries must be [re, im]");
        f.values.emplace_back(v[0].get<double>(), v[1].get<double>());
    }
    if (j.contains("supnorm_hint")) f.supnorm_hint = j.at("supnorm_hint").get<double>();
    if (!f.valid()) throw ParseError("SampledFunction: inconsistent fields (n, values, domain)");
    return f;
}

inline bool looks_like_step(const json& j) { return j.contains("cells"); }

/// Word JSON: [{"op": "B*"|"B"|"N", "f": <StepFunction>}, ...], left to
/// right as operator composition applied to Phi from the right.
template <class S>
std::vector<Generator<S>> parse_word(const json& j) {
    if (!j.is_array()) throw ParseError("word: expected a JSON array");
    std::vector<Generator<S>> word;
    for (const auto& e : j) {
        if (!e.contains("op") || !e.contains("f")) throw ParseError("word entry: missing field 'op' or 'f'");
        std::string op = e.at("op").get<std::string>();
        GenKind kind;
        if (op == "B*") kind = GenKind::Creator;
        else if (op == "B") kind = GenKind::Annihilator;
        else if (op == "N") kind = GenKind::Number;
        else throw ParseError("word entry: unknown op '" + op + "'");
        word.push_back({kind, parse_step<S>(e.at("f"))});
    }
    return word;
}

template <class S>
std::string emit_step(const StepFunction<S>& f) {
    std::ostringstream os;
    os << "{\"dim\": " << f.dim << ", \"cells\": [";
    bool first = true;
    for (const auto& [box, v] : f.cells) {
        if (!first) os << ", ";
        first = false;
        os << "{\"lo\": [";
        for (size_t i = 0; i < box.lo.size(); ++i)
            os << (i ? ", " : "") << fmt(to_double(box.lo[i]));
        os << "], \"hi\": [";
        for (size_t i = 0; i < box.hi.size(); ++i)
            os << (i ? ", " : "") << fmt(to_double(box.hi[i]));
        os << "], \"re\": " << fmt(to_double(v.re)) << ", \"im\": " << fmt(to_double(v.im)) << "}";
    }
    os << "]}";
    return os.str();
}

inline std::string emit_kernel_value(const KernelValue& k) {
    std::ostringstream os;
    os << "{\"value\": {\"re\": " << fmt(k.value.real()) << ", \"im\": " << fmt(k.value.imag())
       << "}, \"abs_log_bound\": " << fmt(k.abs_log_bound)
       << ", \"error_estimate\": " << fmt(k.error_estimate) << "}";
    return os.str();
}

template <class S>
std::string emit_series_diagnostics(const SeriesDiagnostics<S>& d) {
    std::ostringstream os;
    os << "{\"verdict\": \"" << to_string(d.verdict) << "\", \"partial_sums\": [";
    for (size_t i = 0; i < d.partial_sums.size(); ++i) {
        if (i) os << ", ";
        if constexpr (std::is_same_v<S, rational>) {
            os << "{\"re\": " << fmt(d.partial_sums[i].re)
               << ", \"im\": " << fmt(d.partial_sums[i].im) << "}";
        } else {
            os << fmt_cplx(d.partial_sums[i]);
        }
    }
    os << "], \"residuals\": [";
    for (size_t i = 0; i < d.residuals.size(); ++i) os << (i ? ", " : "") << fmt(d.residuals[i]);
    os << "]";
    if (d.closed_form) os << ", \"closed_form\": " << emit_kernel_value(*d.closed_form);
    os << "}";
    return os.str();
}

inline std::string emit_report_json(const VerificationReport& rep) {
    std::ostringstream os;
    os << "{\"title\": \"" << rep.title << "\", \"columns\": [";
    for (size_t i = 0; i < rep.columns.size(); ++i)
        os << (i ? ", " : "") << "\"" << rep.columns[i] << "\"";
    os << "], \"rows\": [";
    for (size_t i = 0; i < rep.rows.size(); ++i) {
        if (i) os << ", ";
        os << "[";
        for (size_t j = 0; j < rep.rows[i].size(); ++j)
            os << (j ? ", " : "") << fmt(rep.rows[i][j]);
        os << "]";
    }
    os << "], \"scalars\": {";
    for (size_t i = 0; i < rep.scalars.size(); ++i)
        os << (i ? ", " : "") << "\"" << rep.scalars[i].first << "\": " << fmt(rep.scalars[i].second);
    os << "}, \"checks\": {";
    for (size_t i = 0; i < rep.checks.size(); ++i)
        os << (i ? ", " : "") << "\"" << rep.checks[i].first << "\": "
           << (rep.checks[i].second ? "true" : "false");
    os << "}, \"pass\": " << (rep.pass() ? "true" : "false") << "}";
    return os.str();
}

inline std::string emit_report_csv(const VerificationReport& rep) {
    std::ostringstream os;
    for (size_t i = 0; i < rep.columns.size(); ++i) os << (i ? "," : "") << rep.columns[i];
    os << "\n";
    for (const auto& row : rep.rows) {
        for (size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << fmt(row[j]);
        os << "\n";
    }
    for (const auto& [name, v] : rep.scalars) os << name << "," << fmt(v) << "\n";
    for (const auto& [name, ok] : rep.checks) os << name << "," << (ok ? "pass" : "fail") << "\n";
    return os.str();
}

inline std::string emit_gram(const GramReport& g) {
    std::ostringstream os;
    os << "{\"verdict\": \"" << to_string(g.verdict) << "\", \"psd_shift\": " << fmt(g.psd_shift)
       << ", \"matrix\": [";
    for (size_t i = 0; i < g.matrix.size(); ++i) {
        if (i) os << ", ";
        os << "[";
        for (size_t j = 0; j < g.matrix[i].size(); ++j) {
            if (j) os << ", ";
            os << "{\"re\": " << fmt(g.matrix[i][j].real())
               << ", \"im\": " << fmt(g.matrix[i][j].imag()) << "}";
        }
        os << "]";
    }
    os << "]}";
    return os.str();
}

}  // namespace io
}  // namespace swnfock
