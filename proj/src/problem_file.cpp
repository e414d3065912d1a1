#include "proxima/problem_file.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "proxima/error.hpp"

namespace proxima {

std::string Diagnostic::to_string() const {
    return line > 0 ? "line " + std::to_string(line) + ": " + message : message;
}

namespace {

int line_of(const YAML::Node& n) {
    const auto mark = n.Mark();
    return mark.is_null() ? 0 : mark.line + 1;
}

// Collects diagnostics while walking the document; each reader returns
// nullopt after recording what went wrong.
class Reader {
public:
    std::vector<Diagnostic> diagnostics;

    void fail(const YAML::Node& at, std::string message) { diagnostics.push_back({line_of(at), std::move(message)}); }
    void fail(int line, std::string message) { diagnostics.push_back({line, std::move(message)}); }

    void allow_keys(const YAML::Node& map, const std::set<std::string>& keys, const std::string& where) {
        for (const auto& kv : map) {
            const auto key = kv.first.as<std::string>();
            if (!keys.count(key)) fail(kv.first, "unknown key '" + key + "' in " + where);
        }
    }

    bool expect_map(const YAML::Node& n, const std::string& what) {
        if (n.IsMap()) return true;
        fail(n, what + " must be a mapping");
        return false;
    }

    std::optional<double> real(const YAML::Node& n, const std::string& what) {
        if (!n.IsScalar()) {
            fail(n, what + " must be a decimal number");
            return std::nullopt;
        }
        const std::string& text = n.Scalar();
        double v = 0.0;
        const char* first = text.data();
        const char* last = text.data() + text.size();
        if (first != last && *first == '+') ++first;
        const auto [ptr, ec] = std::from_chars(first, last, v, std::chars_format::general);
        if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
            fail(n, what + " '" + text + "' is not a finite decimal number");
            return std::nullopt;
        }
        return v;
    }

    std::optional<long long> integer(const YAML::Node& n, const std::string& what) {
        if (!n.IsScalar()) {
            fail(n, what + " must be an integer");
            return std::nullopt;
        }
        const std::string& text = n.Scalar();
        long long v = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            fail(n, what + " '" + text + "' is not an integer");
            return std::nullopt;
        }
        return v;
    }

    std::optional<bool> boolean(const YAML::Node& n, const std::string& what) {
        if (n.IsScalar()) {
            if (n.Scalar() == "true") return true;
            if (n.Scalar() == "false") return false;
        }
        fail(n, what + " must be true or false");
        return std::nullopt;
    }

    std::optional<Point> point(const YAML::Node& n, std::size_t dim, const std::string& what) {
        if (!n.IsSequence()) {
            fail(n, what + " must be a list of coordinates");
            return std::nullopt;
        }
        if (n.size() != dim) {
            fail(n, what + " has " + std::to_string(n.size()) + " coordinate(s), dimension is " +
                        std::to_string(dim));
            return std::nullopt;
        }
        std::vector<double> c;
        for (std::size_t i = 0; i < n.size(); ++i) {
            auto v = real(n[i], what + " coordinate " + std::to_string(i + 1));
            if (!v) return std::nullopt;
            c.push_back(*v);
        }
        return Point(std::move(c));
    }

    std::optional<expr::Expression> expression(const YAML::Node& n, std::span<const std::string> names,
                                               const std::string& what) {
        if (!n.IsScalar()) {
            fail(n, what + " must be an expression string");
            return std::nullopt;
        }
        try {
            auto e = expr::Expression::parse(n.Scalar());
            expr::BoundExpression check(e, names);
            return e;
        } catch (const ParseError& err) {
            fail(n, what + ": " + err.what());
        } catch (const BindError& err) {
            fail(n, what + ": " + err.what());
        }
        return std::nullopt;
    }

    std::optional<PointSet> point_set(const YAML::Node& n, const std::string& label, std::size_t dim) {
        const std::string what = "set '" + label + "'";
        if (!expect_map(n, what)) return std::nullopt;
        allow_keys(n, {"points", "segment"}, what);
        const bool has_points = static_cast<bool>(n["points"]);
        const bool has_segment = static_cast<bool>(n["segment"]);
        if (has_points == has_segment) {
            fail(n, what + " needs exactly one of 'points' or 'segment'");
            return std::nullopt;
        }
        try {
            if (has_points) {
                const auto list = n["points"];
                if (!list.IsSequence()) {
                    fail(list, what + " points must be a list");
                    return std::nullopt;
                }
                if (list.size() == 0) {
                    fail(list, what + " must be non-empty");
                    return std::nullopt;
                }
                std::vector<Point> pts;
                for (std::size_t i = 0; i < list.size(); ++i) {
                    auto p = point(list[i], dim, what + " point " + std::to_string(i + 1));
                    if (!p) return std::nullopt;
                    pts.push_back(std::move(*p));
                }
                return PointSet::from_points(label, std::move(pts));
            }
            const auto seg = n["segment"];
            if (!expect_map(seg, what + " segment")) return std::nullopt;
            allow_keys(seg, {"from", "to", "samples"}, what + " segment");
            for (const char* key : {"from", "to", "samples"})
                if (!seg[key]) {
                    fail(seg, what + " segment is missing '" + key + "'");
                    return std::nullopt;
                }
            auto from = point(seg["from"], dim, what + " segment 'from'");
            auto to = point(seg["to"], dim, what + " segment 'to'");
            auto samples = integer(seg["samples"], what + " segment 'samples'");
            if (!from || !to || !samples) return std::nullopt;
            if (*samples < 1) {
                fail(seg["samples"], what + " must be non-empty (samples >= 1)");
                return std::nullopt;
            }
            return PointSet::segment(label, std::move(*from), std::move(*to), static_cast<std::size_t>(*samples));
        } catch (const InstanceError& err) {
            fail(n, what + ": " + err.what());
        }
        return std::nullopt;
    }

    std::optional<Mapping> mapping(const YAML::Node& n, std::size_t dim) {
        if (!n.IsSequence() || n.size() == 0) {
            fail(n, "mapping must be a non-empty list of branches");
            return std::nullopt;
        }
        const auto names = first_argument_names(dim);
        std::vector<MappingBranch> branches;
        bool ok = true;
        for (std::size_t b = 0; b < n.size(); ++b) {
            const auto node = n[b];
            const std::string what = "mapping branch " + std::to_string(b + 1);
            if (!expect_map(node, what)) {
                ok = false;
                continue;
            }
            allow_keys(node, {"when", "value"}, what);
            MappingBranch branch;
            if (node["when"]) {
                auto g = expression(node["when"], names, what + " 'when'");
                if (!g) ok = false;
                branch.guard = std::move(g);
            }
            const auto value = node["value"];
            if (!value) {
                fail(node, what + " is missing 'value'");
                ok = false;
                continue;
            }
            if (!value.IsSequence() || value.size() != dim) {
                fail(value, what + " 'value' must list " + std::to_string(dim) + " expression(s)");
                ok = false;
                continue;
            }
            for (std::size_t i = 0; i < dim; ++i) {
                auto v = expression(value[i], names, what + " component " + std::to_string(i + 1));
                if (!v) {
                    ok = false;
                    continue;
                }
                branch.values.push_back(std::move(*v));
            }
            branches.push_back(std::move(branch));
        }
        if (!ok) return std::nullopt;
        return Mapping(std::move(branches), dim);
    }

    std::optional<ProblemInstance> document(const YAML::Node& root) {
        if (!root.IsMap()) {
            fail(root, "problem file must be a mapping at top level");
            return std::nullopt;
        }
        allow_keys(root, {"schema_version", "name", "dimension", "sets", "phi", "mapping", "tolerances", "assumptions"},
                   "problem file");
        for (const char* key : {"schema_version", "name", "dimension", "sets", "phi"})
            if (!root[key]) fail(root, std::string("missing required key '") + key + "'");
        if (!diagnostics.empty()) return std::nullopt;

        if (auto v = integer(root["schema_version"], "schema_version"); v && *v != kProblemSchemaVersion)
            fail(root["schema_version"], "unsupported schema_version " + std::to_string(*v) + " (expected " +
                                             std::to_string(kProblemSchemaVersion) + ")");
        std::string name;
        if (root["name"].IsScalar())
            name = root["name"].Scalar();
        else
            fail(root["name"], "name must be a string");

        const auto dim_value = integer(root["dimension"], "dimension");
        if (!dim_value) return std::nullopt;
        if (*dim_value < 1) {
            fail(root["dimension"], "dimension must be at least 1");
            return std::nullopt;
        }
        const auto dim = static_cast<std::size_t>(*dim_value);

        std::optional<PointSet> re, omega;
        const auto sets = root["sets"];
        if (expect_map(sets, "sets")) {
            allow_keys(sets, {"re", "omega"}, "sets");
            if (!sets["re"]) fail(sets, "sets is missing 're'");
            if (!sets["omega"]) fail(sets, "sets is missing 'omega'");
            if (sets["re"]) re = point_set(sets["re"], "Re", dim);
            if (sets["omega"]) omega = point_set(sets["omega"], "Omega", dim);
        }

        const auto pair_names = pair_argument_names(dim);
        auto phi = expression(root["phi"], pair_names, "phi");

        std::optional<Mapping> F;
        if (root["mapping"]) F = mapping(root["mapping"], dim);

        double eps_eq = kDefaultEqualityTolerance;
        std::optional<double> eps_range;
        if (const auto tol = root["tolerances"]) {
            if (expect_map(tol, "tolerances")) {
                allow_keys(tol, {"eps_eq", "eps_range"}, "tolerances");
                for (const char* key : {"eps_eq", "eps_range"}) {
                    if (!tol[key]) continue;
                    auto v = real(tol[key], key);
                    if (v && !(*v > 0.0)) {
                        fail(tol[key], std::string(key) + " must be positive");
                        v.reset();
                    }
                    if (v && std::string(key) == "eps_eq") eps_eq = *v;
                    if (v && std::string(key) == "eps_range") eps_range = *v;
                }
            }
        }

        Assumptions assumptions;
        if (const auto a = root["assumptions"]) {
            if (expect_map(a, "assumptions")) {
                allow_keys(a, {"phi_complete", "approx_phi_compact"}, "assumptions");
                if (a["phi_complete"])
                    if (auto v = boolean(a["phi_complete"], "phi_complete")) assumptions.phi_complete = *v;
                if (a["approx_phi_compact"])
                    if (auto v = boolean(a["approx_phi_compact"], "approx_phi_compact"))
                        assumptions.approx_phi_compact = *v;
            }
        }

        if (!diagnostics.empty() || !re || !omega || !phi || (root["mapping"] && !F)) return std::nullopt;
        try {
            return make_instance(std::move(name), std::move(*re), std::move(*omega),
                                 ProximityFunction(std::move(*phi), dim), std::move(F), eps_eq, eps_range,
                                 assumptions);
        } catch (const Error& err) {
            fail(root, err.what());
        }
        return std::nullopt;
    }
};

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ProblemInstance unwrap(ValidationResult r) {
    if (!r.ok()) {
        const auto& d = r.diagnostics.front();
        throw SchemaError(d.message, d.line);
    }
    return std::move(*r.instance);
}

void emit_real(YAML::Emitter& out, double v) { out << expr::format_real(v); }

void emit_point(YAML::Emitter& out, const Point& p) {
    out << YAML::Flow << YAML::BeginSeq;
    for (double c : p.coords()) emit_real(out, c);
    out << YAML::EndSeq;
}

void emit_set(YAML::Emitter& out, const PointSet& set) {
    out << YAML::BeginMap;
    if (const auto* seg = std::get_if<SegmentSource>(&set.source())) {
        out << YAML::Key << "segment" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "from" << YAML::Value;
        emit_point(out, seg->from);
        out << YAML::Key << "to" << YAML::Value;
        emit_point(out, seg->to);
        out << YAML::Key << "samples" << YAML::Value << seg->samples;
        out << YAML::EndMap;
    } else {
        out << YAML::Key << "points" << YAML::Value << YAML::BeginSeq;
        for (const auto& p : set) emit_point(out, p);
        out << YAML::EndSeq;
    }
    out << YAML::EndMap;
}

void emit_expression(YAML::Emitter& out, const expr::Expression& e) { out << YAML::DoubleQuoted << e.source(); }

}  // namespace

ValidationResult validate_text(std::string_view text) {
    ValidationResult result;
    Reader reader;
    try {
        const YAML::Node root = YAML::Load(std::string(text));
        result.instance = reader.document(root);
    } catch (const YAML::Exception& err) {
        reader.fail(err.mark.is_null() ? 0 : err.mark.line + 1, "YAML syntax error: " + err.msg);
    }
    result.diagnostics = std::move(reader.diagnostics);
    if (!result.diagnostics.empty()) result.instance.reset();
    return result;
}

ValidationResult validate_file(const std::filesystem::path& path) { return validate_text(read_file(path)); }

ProblemInstance load_problem_file(const std::filesystem::path& path) { return unwrap(validate_file(path)); }

ProblemInstance load_problem_text(std::string_view text) { return unwrap(validate_text(text)); }

std::string export_problem(const ProblemInstance& inst) {
    YAML::Emitter out;
    out << YAML::BeginMap;
    out << YAML::Key << "schema_version" << YAML::Value << kProblemSchemaVersion;
    out << YAML::Key << "name" << YAML::Value << YAML::DoubleQuoted << inst.name;
    out << YAML::Key << "dimension" << YAML::Value << inst.dimension();
    out << YAML::Key << "sets" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "re" << YAML::Value;
    emit_set(out, inst.re);
    out << YAML::Key << "omega" << YAML::Value;
    emit_set(out, inst.omega);
    out << YAML::EndMap;
    out << YAML::Key << "phi" << YAML::Value;
    emit_expression(out, inst.phi.expression());
    if (inst.mapping) {
        out << YAML::Key << "mapping" << YAML::Value << YAML::BeginSeq;
        for (const auto& b : inst.mapping->branches()) {
            out << YAML::BeginMap;
            if (b.guard) {
                out << YAML::Key << "when" << YAML::Value;
                emit_expression(out, *b.guard);
            }
            out << YAML::Key << "value" << YAML::Value << YAML::Flow << YAML::BeginSeq;
            for (const auto& v : b.values) emit_expression(out, v);
            out << YAML::EndSeq << YAML::EndMap;
        }
        out << YAML::EndSeq;
    }
    out << YAML::Key << "tolerances" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "eps_eq" << YAML::Value;
    emit_real(out, inst.eps_eq);
    if (inst.eps_range) {
        out << YAML::Key << "eps_range" << YAML::Value;
        emit_real(out, *inst.eps_range);
    }
    out << YAML::EndMap;
    out << YAML::Key << "assumptions" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "phi_complete" << YAML::Value << (inst.assumptions.phi_complete ? "true" : "false");
    out << YAML::Key << "approx_phi_compact" << YAML::Value
        << (inst.assumptions.approx_phi_compact ? "true" : "false");
    out << YAML::EndMap;
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

}  // namespace proxima
