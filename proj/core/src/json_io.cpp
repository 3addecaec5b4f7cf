#include "latspec/json_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "json.hpp"

namespace latspec {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw SpecError(msg); }

const json& field(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(where + " is missing the key \"" + key + "\"");
    return *it;
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* k : allowed) known = known || item.key() == k;
        if (!known) fail("unknown key \"" + item.key() + "\" in " + where);
    }
}

double number_at(const json& j, const std::string& where) {
    if (!j.is_number()) fail(where + " must be a number");
    return j.get<double>();
}

long integer_at(const json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where + " must be an integer");
    return j.get<long>();
}

std::string string_at(const json& j, const std::string& where) {
    if (!j.is_string()) fail(where + " must be a string");
    return j.get<std::string>();
}

Complex complex_at(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(where + " must be a complex number encoded as [re, im]");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

std::vector<Complex> complex_list_at(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where + " must be a list of [re, im] pairs");
    std::vector<Complex> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(complex_at(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json complex_list_json(const std::vector<Complex>& vs) {
    json out = json::array();
    for (Complex z : vs) out.push_back(complex_json(z));
    return out;
}

AnalysisConfig parse_config(const json& j) {
    AnalysisConfig cfg;
    if (j.is_null()) return cfg;
    if (!j.is_object()) fail("\"config\" must be an object");
    check_keys(j,
               {"tol_exact", "tol_sampled", "tol", "horizon", "cluster_window_fraction",
                "cluster_checkpoints", "spectrum_truncation", "max_cloud_points",
                "fredholm_points"},
               "\"config\"");
    if (j.contains("tol_exact")) cfg.tol_exact = number_at(j["tol_exact"], "config.tol_exact");
    if (j.contains("tol_sampled"))
        cfg.tol_sampled = number_at(j["tol_sampled"], "config.tol_sampled");
    if (j.contains("tol")) cfg.tol_override = number_at(j["tol"], "config.tol");
    if (j.contains("horizon")) cfg.horizon = integer_at(j["horizon"], "config.horizon");
    if (j.contains("cluster_window_fraction"))
        cfg.cluster_window_fraction =
            number_at(j["cluster_window_fraction"], "config.cluster_window_fraction");
    if (j.contains("cluster_checkpoints"))
        cfg.cluster_checkpoints =
            static_cast<int>(integer_at(j["cluster_checkpoints"], "config.cluster_checkpoints"));
    if (j.contains("spectrum_truncation"))
        cfg.spectrum_truncation =
            static_cast<int>(integer_at(j["spectrum_truncation"], "config.spectrum_truncation"));
    if (j.contains("max_cloud_points"))
        cfg.max_cloud_points =
            static_cast<int>(integer_at(j["max_cloud_points"], "config.max_cloud_points"));
    if (j.contains("fredholm_points"))
        cfg.fredholm_points = complex_list_at(j["fredholm_points"], "config.fredholm_points");
    try {
        cfg.validate();
    } catch (const ValidationError& e) {
        fail(std::string("config: ") + e.what());
    }
    return cfg;
}

json config_json(const AnalysisConfig& cfg) {
    json out = json::object();
    out["tol_exact"] = cfg.tol_exact;
    out["tol_sampled"] = cfg.tol_sampled;
    if (cfg.tol_override) out["tol"] = *cfg.tol_override;
    out["horizon"] = cfg.horizon;
    out["cluster_window_fraction"] = cfg.cluster_window_fraction;
    out["cluster_checkpoints"] = cfg.cluster_checkpoints;
    out["spectrum_truncation"] = cfg.spectrum_truncation;
    out["max_cloud_points"] = cfg.max_cloud_points;
    out["fredholm_points"] = complex_list_json(cfg.fredholm_points);
    return out;
}

AtomicSymbol parse_atomic(const json& j, const AnalysisConfig& cfg) {
    if (!j.is_object()) fail("\"atomic\" must be an object");
    const std::string kind = string_at(field(j, "kind", "\"atomic\""), "atomic.kind");
    try {
        if (kind == "finite") {
            check_keys(j, {"kind", "values"}, "the finite symbol");
            return AtomicSymbol::finite(
                complex_list_at(field(j, "values", "the finite symbol"), "atomic.values"));
        }
        if (kind == "eventually_zero") {
            check_keys(j, {"kind", "prefix"}, "the eventually_zero symbol");
            return AtomicSymbol::eventually_zero(complex_list_at(
                field(j, "prefix", "the eventually_zero symbol"), "atomic.prefix"));
        }
        if (kind == "convergent") {
            check_keys(j, {"kind", "prefix", "limit"}, "the convergent symbol");
            std::vector<Complex> prefix;
            if (j.contains("prefix")) prefix = complex_list_at(j["prefix"], "atomic.prefix");
            return AtomicSymbol::convergent_tail(
                std::move(prefix),
                complex_at(field(j, "limit", "the convergent symbol"), "atomic.limit"));
        }
        if (kind == "eventually_periodic") {
            check_keys(j, {"kind", "prefix", "period"}, "the eventually_periodic symbol");
            std::vector<Complex> prefix;
            if (j.contains("prefix")) prefix = complex_list_at(j["prefix"], "atomic.prefix");
            return AtomicSymbol::eventually_periodic(
                std::move(prefix),
                complex_list_at(field(j, "period", "the eventually_periodic symbol"),
                                "atomic.period"));
        }
        if (kind == "generator") {
            check_keys(j, {"kind", "expr", "horizon"}, "the generator symbol");
            const std::string text =
                string_at(field(j, "expr", "the generator symbol"), "atomic.expr");
            const long horizon =
                j.contains("horizon") ? integer_at(j["horizon"], "atomic.horizon") : cfg.horizon;
            expr::Expr formula;
            try {
                formula = expr::Expr::parse(text, "n");
            } catch (const expr::SyntaxError& e) {
                fail(std::string("atomic.expr: ") + e.what());
            } catch (const expr::UnknownIdentifier& e) {
                fail(std::string("atomic.expr: ") + e.what());
            }
            return AtomicSymbol::generator(std::move(formula), horizon);
        }
    } catch (const ValidationError& e) {
        fail(std::string("atomic: ") + e.what());
    }
    fail("atomic.kind must be one of finite, eventually_zero, convergent, "
         "eventually_periodic, generator");
}

json atomic_json(const AtomicSymbol& sym) {
    json out = json::object();
    const auto& v = sym.variant();
    if (const auto* f = std::get_if<AtomicSymbol::Finite>(&v)) {
        out["kind"] = "finite";
        out["values"] = complex_list_json(f->values);
    } else if (const auto* z = std::get_if<AtomicSymbol::EventuallyZero>(&v)) {
        out["kind"] = "eventually_zero";
        out["prefix"] = complex_list_json(z->prefix);
    } else if (const auto* c = std::get_if<AtomicSymbol::ConvergentTail>(&v)) {
        out["kind"] = "convergent";
        out["prefix"] = complex_list_json(c->prefix);
        out["limit"] = complex_json(c->limit);
    } else if (const auto* p = std::get_if<AtomicSymbol::EventuallyPeriodic>(&v)) {
        out["kind"] = "eventually_periodic";
        out["prefix"] = complex_list_json(p->prefix);
        out["period"] = complex_list_json(p->period);
    } else {
        const auto& g = std::get<AtomicSymbol::Generator>(v);
        out["kind"] = "generator";
        out["expr"] = g.formula.to_string();
        out["horizon"] = g.horizon;
    }
    return out;
}

Primitive parse_primitive(const json& j, const std::string& where) {
    if (!j.is_object()) fail(where + " must be an object");
    const std::string type = string_at(field(j, "type", where), where + ".type");
    try {
        if (type == "point") {
            check_keys(j, {"type", "z"}, where);
            return Point{complex_at(field(j, "z", where), where + ".z")};
        }
        if (type == "segment") {
            check_keys(j, {"type", "a", "b"}, where);
            return Segment{complex_at(field(j, "a", where), where + ".a"),
                           complex_at(field(j, "b", where), where + ".b")};
        }
        if (type == "disc") {
            check_keys(j, {"type", "center", "radius"}, where);
            return ClosedDisc{complex_at(field(j, "center", where), where + ".center"),
                              number_at(field(j, "radius", where), where + ".radius")};
        }
        if (type == "cloud") {
            check_keys(j, {"type", "points", "resolution"}, where);
            return SampleCloud{complex_list_at(field(j, "points", where), where + ".points"),
                               number_at(field(j, "resolution", where), where + ".resolution")};
        }
    } catch (const ValidationError& e) {
        fail(where + ": " + e.what());
    }
    fail(where + ".type must be one of point, segment, disc, cloud");
}

json primitive_json(const Primitive& p) {
    json out = json::object();
    if (const auto* pt = std::get_if<Point>(&p)) {
        out["type"] = "point";
        out["z"] = complex_json(pt->z);
    } else if (const auto* seg = std::get_if<Segment>(&p)) {
        out["type"] = "segment";
        out["a"] = complex_json(seg->a);
        out["b"] = complex_json(seg->b);
    } else if (const auto* d = std::get_if<ClosedDisc>(&p)) {
        out["type"] = "disc";
        out["center"] = complex_json(d->center);
        out["radius"] = d->radius;
    } else {
        const auto& c = std::get<SampleCloud>(p);
        out["type"] = "cloud";
        out["points"] = complex_list_json(c.points);
        out["resolution"] = c.resolution;
    }
    return out;
}

SpectralSet parse_set(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where + " must be a list of primitives");
    SpectralSet set;
    for (std::size_t i = 0; i < j.size(); ++i) {
        try {
            set.add(parse_primitive(j[i], where + "[" + std::to_string(i) + "]"));
        } catch (const ValidationError& e) {
            fail(where + "[" + std::to_string(i) + "]: " + e.what());
        }
    }
    return set;
}

json set_json(const SpectralSet& set) {
    json out = json::array();
    for (const Primitive& p : set.primitives()) out.push_back(primitive_json(p));
    return out;
}

json parse_document(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw SpecError(e.what(), e.byte);
    }
}

std::string fmt_real(double x) { return format_complex(Complex(x, 0.0)); }

std::string describe_set(const SpectralSet& set, int max_points) {
    if (set.empty()) return "(empty)";
    std::ostringstream out;
    bool first = true;
    auto sep = [&]() {
        if (!first) out << ", ";
        first = false;
    };
    int listed = 0;
    int suppressed = 0;
    for (const Primitive& p : set.primitives()) {
        if (const auto* pt = std::get_if<Point>(&p)) {
            if (listed < max_points) {
                sep();
                out << format_complex(pt->z);
                ++listed;
            } else {
                ++suppressed;
            }
        } else if (const auto* seg = std::get_if<Segment>(&p)) {
            sep();
            out << "segment from " << format_complex(seg->a) << " to " << format_complex(seg->b);
        } else if (const auto* d = std::get_if<ClosedDisc>(&p)) {
            sep();
            out << "disc centered at " << format_complex(d->center) << " with radius "
                << fmt_real(d->radius);
        } else {
            const auto& c = std::get<SampleCloud>(p);
            sep();
            out << "cloud of " << c.points.size() << " points (resolution "
                << fmt_real(c.resolution) << ")";
        }
    }
    if (suppressed > 0) out << ", ... (" << suppressed << " more points)";
    return out.str();
}

}  // namespace

SpecFile parse_spec_file(const std::string& json_text) {
    const json doc = parse_document(json_text);
    if (!doc.is_object()) fail("operator spec must be a JSON object");
    check_keys(doc, {"label", "atomic", "nonatomic", "config"}, "the operator spec");

    SpecFile out;
    if (doc.contains("config")) out.config = parse_config(doc["config"]);
    if (doc.contains("label")) out.op.label = string_at(doc["label"], "\"label\"");
    if (doc.contains("atomic") && !doc["atomic"].is_null())
        out.op.atomic = parse_atomic(doc["atomic"], out.config);
    if (doc.contains("nonatomic") && !doc["nonatomic"].is_null()) {
        SpectralSet set = parse_set(doc["nonatomic"], "\"nonatomic\"");
        if (set.empty()) fail("\"nonatomic\" must be non-empty; omit it or use null");
        out.op.nonatomic = std::move(set);
    }
    try {
        out.op.validate();
    } catch (const ValidationError& e) {
        fail(e.what());
    }
    return out;
}

SpecFile load_spec_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecError("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec_file(buf.str());
}

std::string spec_file_to_json(const SpecFile& spec) {
    json out = json::object();
    out["label"] = spec.op.label;
    out["atomic"] = spec.op.atomic ? atomic_json(*spec.op.atomic) : json();
    out["nonatomic"] = spec.op.nonatomic ? set_json(*spec.op.nonatomic) : json();
    out["config"] = config_json(spec.config);
    return out.dump(2) + "\n";
}

std::string report_to_json(const SpectralReport& report) {
    json out = json::object();
    out["label"] = report.label;
    out["estimated"] = report.estimated;
    out["tolerance"] = report.tolerance;
    out["norm"] = report.norm;
    out["essential_norm"] = report.essential_norm;
    out["essential_spectral_radius"] = report.essential_spectral_radius;
    out["spectrum"] = set_json(report.spectrum);
    out["essential_spectrum"] = set_json(report.essential_spectrum);
    if (report.atomic_clusters) {
        json clusters = json::object();
        clusters["method"] = report.atomic_clusters->method == ClusterEstimate::Method::Exact
                                 ? "exact"
                                 : "sampled";
        clusters["tolerance"] = report.atomic_clusters->tolerance;
        clusters["points"] = complex_list_json(report.atomic_clusters->points);
        out["atomic_clusters"] = std::move(clusters);
    } else {
        out["atomic_clusters"] = json();
    }
    out["compact"] = report.compact;
    out["essentially_quasinilpotent"] = report.essentially_quasinilpotent;
    out["invertible"] = report.invertible;
    json fred = json::array();
    for (const FredholmQuery& q : report.fredholm) {
        json item = json::object();
        item["mu"] = complex_json(q.mu);
        item["fredholm"] = q.fredholm;
        fred.push_back(std::move(item));
    }
    out["fredholm"] = std::move(fred);
    return out.dump(2) + "\n";
}

SpectralReport report_from_json(const std::string& json_text) {
    const json doc = parse_document(json_text);
    if (!doc.is_object()) fail("report must be a JSON object");
    check_keys(doc,
               {"label", "estimated", "tolerance", "norm", "essential_norm",
                "essential_spectral_radius", "spectrum", "essential_spectrum", "atomic_clusters",
                "compact", "essentially_quasinilpotent", "invertible", "fredholm"},
               "the report");
    auto boolean = [](const json& j, const std::string& where) {
        if (!j.is_boolean()) fail(where + " must be a boolean");
        return j.get<bool>();
    };
    SpectralReport rep;
    rep.label = string_at(field(doc, "label", "the report"), "report.label");
    rep.estimated = boolean(field(doc, "estimated", "the report"), "report.estimated");
    rep.tolerance = number_at(field(doc, "tolerance", "the report"), "report.tolerance");
    rep.norm = number_at(field(doc, "norm", "the report"), "report.norm");
    rep.essential_norm =
        number_at(field(doc, "essential_norm", "the report"), "report.essential_norm");
    rep.essential_spectral_radius = number_at(
        field(doc, "essential_spectral_radius", "the report"), "report.essential_spectral_radius");
    rep.spectrum = parse_set(field(doc, "spectrum", "the report"), "report.spectrum");
    rep.essential_spectrum =
        parse_set(field(doc, "essential_spectrum", "the report"), "report.essential_spectrum");
    const json& clusters = field(doc, "atomic_clusters", "the report");
    if (!clusters.is_null()) {
        if (!clusters.is_object()) fail("report.atomic_clusters must be an object or null");
        check_keys(clusters, {"method", "tolerance", "points"}, "report.atomic_clusters");
        ClusterEstimate est;
        const std::string method =
            string_at(field(clusters, "method", "report.atomic_clusters"), "clusters.method");
        if (method == "exact")
            est.method = ClusterEstimate::Method::Exact;
        else if (method == "sampled")
            est.method = ClusterEstimate::Method::Sampled;
        else
            fail("report.atomic_clusters.method must be \"exact\" or \"sampled\"");
        est.tolerance = number_at(field(clusters, "tolerance", "report.atomic_clusters"),
                                  "clusters.tolerance");
        est.points = complex_list_at(field(clusters, "points", "report.atomic_clusters"),
                                     "clusters.points");
        rep.atomic_clusters = std::move(est);
    }
    rep.compact = boolean(field(doc, "compact", "the report"), "report.compact");
    rep.essentially_quasinilpotent =
        boolean(field(doc, "essentially_quasinilpotent", "the report"),
                "report.essentially_quasinilpotent");
    rep.invertible = boolean(field(doc, "invertible", "the report"), "report.invertible");
    const json& fred = field(doc, "fredholm", "the report");
    if (!fred.is_array()) fail("report.fredholm must be a list");
    for (std::size_t i = 0; i < fred.size(); ++i) {
        const std::string where = "report.fredholm[" + std::to_string(i) + "]";
        if (!fred[i].is_object()) fail(where + " must be an object");
        check_keys(fred[i], {"mu", "fredholm"}, where);
        FredholmQuery q;
        q.mu = complex_at(field(fred[i], "mu", where), where + ".mu");
        q.fredholm = boolean(field(fred[i], "fredholm", where), where + ".fredholm");
        rep.fredholm.push_back(q);
    }
    return rep;
}

std::string format_report_text(const SpectralReport& report, int max_points) {
    std::ostringstream out;
    out << "operator: " << (report.label.empty() ? "(unlabeled)" : report.label) << "\n";
    out << "estimated: " << (report.estimated ? "yes" : "no")
        << "   (tolerance " << fmt_real(report.tolerance) << ")\n";
    out << "norm:                      " << fmt_real(report.norm) << "\n";
    out << "essential norm:            " << fmt_real(report.essential_norm) << "\n";
    out << "essential spectral radius: " << fmt_real(report.essential_spectral_radius) << "\n";
    out << "spectrum: " << describe_set(report.spectrum, max_points) << "\n";
    out << "essential spectrum: " << describe_set(report.essential_spectrum, max_points) << "\n";
    if (report.atomic_clusters) {
        const auto& est = *report.atomic_clusters;
        out << "atomic cluster points ("
            << (est.method == ClusterEstimate::Method::Exact ? "exact" : "sampled") << "): ";
        if (est.points.empty()) {
            out << "(none)";
        } else {
            int listed = 0;
            for (Complex z : est.points) {
                if (listed == max_points) {
                    out << ", ... (" << (est.points.size() - static_cast<std::size_t>(listed))
                        << " more)";
                    break;
                }
                if (listed > 0) out << ", ";
                out << format_complex(z);
                ++listed;
            }
        }
        out << "\n";
    }
    out << "compact: " << (report.compact ? "yes" : "no") << "\n";
    out << "essentially quasinilpotent: "
        << (report.essentially_quasinilpotent ? "yes" : "no") << "\n";
    out << "invertible: " << (report.invertible ? "yes" : "no") << "\n";
    for (const FredholmQuery& q : report.fredholm) {
        out << "T - mu I fredholm at mu = " << format_complex(q.mu) << ": "
            << (q.fredholm ? "yes" : "no") << "\n";
    }
    return out.str();
}

}  // namespace latspec
