/*
 * Command-line front end.
 *
 * A job is described by an input document (JSON or flat key-value text)
 * carrying the ring, the field, and the four coordinate polynomials, plus
 * optional argument defaults. The command comes from the command line and
 * wins over anything in the document, as do all flags.
 *
 * Output: one JSON document on standard output with the fields
 *   {command, input_echo, nu0, results[], warnings[], timing_ms}
 * and a short human-readable summary on standard error. All numbers are
 * exact; anything that could be a fraction is rendered as a string.
 *
 * Exit codes: 0 success (including negative answers like "off surface"),
 * 2 parse or usage errors, 3 validation failure, 4 mathematical errors.
 */

#include "fibratrix/fiber.hpp"
#include "fibratrix/fitting.hpp"
#include "fibratrix/parse.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

using json = nlohmann::ordered_json;
using namespace fibratrix;

namespace {

// Thrown when structural checks fail and --force was not given; carries the
// check list so the error document can show what went wrong.
struct GateFailure {
    std::vector<CheckResult> checks;
};

struct Job {
    RingSpec ring{RingKind::Triangular};
    Field field = field_q();
    std::array<std::string, 4> poly_text;
    std::string command;  // document-level default

    std::optional<std::string> point;
    std::vector<std::string> points;
    std::optional<long> nu, nu1, nu2;
    std::optional<long> fitting_index;
    std::optional<long> limit;
    std::optional<std::uint64_t> seed;
    std::optional<long> sample;
    long max_minor_size = 6;
};

// Append the fields of src, preserving their order.
void merge_into(json& dst, const json& src) {
    for (auto it = src.begin(); it != src.end(); ++it) dst[it.key()] = it.value();
}

RingSpec ring_from(const std::string& s) {
    if (s == "triangular") return RingSpec{RingKind::Triangular};
    if (s == "tensor") return RingSpec{RingKind::Tensor};
    throw ParseError(0, "unknown ring '" + s + "' (expected triangular or tensor)");
}

Field field_from(const std::string& s) {
    if (s == "q" || s == "Q") return field_q();
    if (s.rfind("fp:", 0) == 0) {
        std::uint64_t p = 0;
        try {
            p = std::stoull(s.substr(3));
        } catch (const std::exception&) {
            throw ParseError(0, "bad field spec '" + s + "'");
        }
        return field_fp(p);  // rejects non-primes itself
    }
    throw ParseError(0, "unknown field '" + s + "' (expected q or fp:P)");
}

std::string field_str(const Field& f) {
    return f.p == 0 ? "q" : "fp:" + std::to_string(f.p);
}

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open input '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

long to_long(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        long n = std::stol(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return n;
    } catch (const std::exception&) {
        throw ParseError(0, "value of '" + key + "' is not an integer: '" + v + "'");
    }
}

// key = value lines; '#' starts a comment; polynomials under f0..f3;
// point lists under points, separated by '|'.
Job parse_flat(const std::string& text) {
    Job job;
    std::array<bool, 4> have{false, false, false, false};
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(0, "expected 'key = value', got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key == "ring") job.ring = ring_from(val);
        else if (key == "field") job.field = field_from(val);
        else if (key.size() == 2 && key[0] == 'f' && key[1] >= '0' && key[1] <= '3') {
            job.poly_text[key[1] - '0'] = val;
            have[key[1] - '0'] = true;
        } else if (key == "command") job.command = val;
        else if (key == "point") job.point = val;
        else if (key == "points") {
            std::size_t start = 0;
            while (start <= val.size()) {
                auto bar = val.find('|', start);
                std::string item = trim(bar == std::string::npos ? val.substr(start)
                                                                 : val.substr(start, bar - start));
                if (!item.empty()) job.points.push_back(item);
                if (bar == std::string::npos) break;
                start = bar + 1;
            }
        } else if (key == "nu") job.nu = to_long(val, key);
        else if (key == "nu1") job.nu1 = to_long(val, key);
        else if (key == "nu2") job.nu2 = to_long(val, key);
        else if (key == "fitting_index") job.fitting_index = to_long(val, key);
        else if (key == "limit") job.limit = to_long(val, key);
        else if (key == "seed") job.seed = static_cast<std::uint64_t>(to_long(val, key));
        else if (key == "sample") job.sample = to_long(val, key);
        else throw ParseError(0, "unknown key '" + key + "'");
    }
    if (!(have[0] && have[1] && have[2] && have[3]))
        throw ParseError(0, "the document must define all of f0, f1, f2, f3");
    return job;
}

Job parse_json_doc(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(0, std::string("bad JSON input: ") + e.what());
    }
    try {
        Job job;
        job.ring = ring_from(doc.at("ring").get<std::string>());
        if (doc.contains("field")) job.field = field_from(doc.at("field").get<std::string>());
        const auto& polys = doc.at("polynomials");
        if (!polys.is_array() || polys.size() != 4)
            throw ParseError(0, "'polynomials' must be an array of exactly four strings");
        for (int j = 0; j < 4; ++j) job.poly_text[j] = polys.at(j).get<std::string>();
        if (doc.contains("command")) job.command = doc.at("command").get<std::string>();
        if (doc.contains("args")) {
            const auto& a = doc.at("args");
            if (a.contains("point")) job.point = a.at("point").get<std::string>();
            if (a.contains("points"))
                for (const auto& p : a.at("points")) job.points.push_back(p.get<std::string>());
            if (a.contains("nu")) job.nu = a.at("nu").get<long>();
            if (a.contains("nu1")) job.nu1 = a.at("nu1").get<long>();
            if (a.contains("nu2")) job.nu2 = a.at("nu2").get<long>();
            if (a.contains("fitting_index")) job.fitting_index = a.at("fitting_index").get<long>();
            if (a.contains("limit")) job.limit = a.at("limit").get<long>();
            if (a.contains("seed")) job.seed = a.at("seed").get<std::uint64_t>();
            if (a.contains("sample")) job.sample = a.at("sample").get<long>();
        }
        return job;
    } catch (const json::exception& e) {
        throw ParseError(0, std::string("bad JSON input: ") + e.what());
    }
}

Job parse_document(const std::string& text) {
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') continue;
        return c == '{' ? parse_json_doc(text) : parse_flat(text);
    }
    throw ParseError(0, "empty input document");
}

json coranks_json(const FiberReport& r) {
    json out = json::array();
    for (const auto& [deg, rk] : r.coranks) out.push_back({{"index", deg.str()}, {"corank", rk}});
    return out;
}

json report_json(const FiberReport& r, bool tensor) {
    json o;
    o["kind"] = std::string(fiber_kind_str(r.kind));
    o["coranks"] = coranks_json(r);
    if (r.kind == FiberKind::Finite) o["degree"] = r.degree;
    if (r.kind == FiberKind::Curve) {
        o["curve_degree"] = r.curve_degree;
        if (tensor) o["curve_degree2"] = r.curve_degree2;
        o["hilbert_constant"] = r.hilbert_constant;
        o["residual_finite_degree"] = r.residual_finite_degree;
        if (r.curve_equation) o["curve_equation"] = r.curve_equation->str();
    }
    if (r.below_threshold) o["below_threshold"] = true;
    return o;
}

json minors_json(const FittingGens& g) {
    json o;
    o["unit_ideal"] = g.unit_ideal;
    if (g.unit_ideal) return o;
    o["minor_size"] = g.minor_size;
    o["candidate_count"] = g.candidate_count;
    o["truncated"] = g.truncated;
    o["zero_pruned"] = g.zero_pruned;
    json list = json::array();
    for (const auto& m : g.minors)
        list.push_back({{"rows", m.row_set}, {"cols", m.col_set}, {"value", m.value.str()}});
    o["minors"] = std::move(list);
    return o;
}

// The resolved state a command runs against.
struct Session {
    Surface surf;
    bool tensor;
    json* warnings;
    explicit Session(Parameterization phi, json* w)
        : surf(std::move(phi)), tensor(surf.phi().ring.kind == RingKind::Tensor), warnings(w) {}

    void warn(const std::string& msg) { warnings->push_back(msg); }
};

ProjPoint need_point(const Session& s, const std::optional<std::string>& text) {
    if (!text) throw std::invalid_argument("this command needs --point");
    return parse_point(s.surf.phi().field, *text);
}

Deg resolve_index(Session& s, const Job& job) {
    if (s.tensor) {
        if (job.nu) throw std::invalid_argument("tensor input takes --nu1/--nu2, not --nu");
        if (job.nu1.has_value() != job.nu2.has_value())
            throw std::invalid_argument("--nu1 and --nu2 must be given together");
        if (job.nu1) {
            Deg deg = Deg::of(*job.nu1, *job.nu2);
            if (!region_admissible(s.surf.phi().d(), deg))
                s.warn("index " + deg.str() + " lies in the excluded region; " +
                       "the corank contract does not apply there");
            return deg;
        }
        return s.surf.default_index();
    }
    if (job.nu1 || job.nu2)
        throw std::invalid_argument("triangular input takes --nu, not --nu1/--nu2");
    if (job.nu) {
        if (*job.nu < 0) throw std::invalid_argument("--nu must be nonnegative");
        return Deg::single(*job.nu);
    }
    return s.surf.default_index();
}

MinorRequest minor_request(const Job& job) {
    MinorRequest req;
    req.fitting_index = job.fitting_index.value_or(0);
    // uncapped minor enumeration wants an explicit 0
    long limit = job.limit.value_or(1000);
    if (limit < 0) throw std::invalid_argument("--limit must be nonnegative");
    req.limit = static_cast<std::size_t>(limit);
    req.seed = job.seed.value_or(kDefaultSeed);
    if (job.max_minor_size < 1) throw std::invalid_argument("--max-minor-size must be positive");
    req.max_minor_size = static_cast<std::size_t>(job.max_minor_size);
    return req;
}

json run_validate(Session& s, const Job& job) {
    ValidationReport rep = validate(s.surf, job.seed.value_or(kDefaultSeed));
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    json r;
    r["checks"] = std::move(checks);
    r["structural_ok"] = rep.structural_ok;
    r["birational_probable"] = rep.birational_probable;
    if (!rep.structural_ok) throw GateFailure{rep.checks};
    if (!rep.birational_probable)
        s.warn("birationality probe failed; the map may not be generically one-to-one");
    return r;
}

json run_matrix(Session& s, const Job& job) {
    const Deg deg = resolve_index(s, job);
    const MatrixRep& m = s.surf.rep(deg);
    json r;
    r["index"] = deg.str();
    r["rows"] = m.rows();
    r["cols"] = m.cols();
    json basis = json::array();
    for (const auto& mono : m.row_basis) basis.push_back(mono.str(m.ring));
    r["row_basis"] = std::move(basis);
    const char* names[4] = {"X0", "X1", "X2", "X3"};
    json mats;
    for (int j = 0; j < 4; ++j) {
        json rows = json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            json row = json::array();
            for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.coeff[j].at(i, c).str());
            rows.push_back(std::move(row));
        }
        mats[names[j]] = std::move(rows);
    }
    r["coefficient_matrices"] = std::move(mats);
    json forms = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.entry_form(i, c).str());
        forms.push_back(std::move(row));
    }
    r["entries"] = std::move(forms);
    return r;
}

json sat_json(const SatInfo& info, const Deg& default_index) {
    json r;
    r["indeg_sat"] = info.indeg_sat;
    r["nu0"] = info.nu0;
    r["base_locus_degree"] = info.base_locus_degree;
    r["empty_base_locus"] = info.empty_base_locus;
    r["default_index"] = default_index.str();
    return r;
}

json run_membership(Session& s, const Job& job) {
    ProjPoint P = need_point(s, job.point);
    const Deg deg = resolve_index(s, job);
    const long corank = corank_at(s.surf, deg, P);
    json r;
    r["point"] = P.str();
    r["index"] = deg.str();
    r["corank"] = corank;
    r["member"] = corank > 0;
    return r;
}

json run_fiber(Session& s, const Job& job) {
    ProjPoint P = need_point(s, job.point);
    std::optional<long> nu_over;
    if (s.tensor) {
        if (job.nu || job.nu1 || job.nu2)
            throw std::invalid_argument("bigraded classification has fixed corner indices");
    } else if (job.nu) {
        nu_over = *job.nu;
    }
    FiberReport rep = classify_point(s.surf, P, nu_over);
    for (const auto& w : rep.warnings) s.warn(w);
    json r;
    r["point"] = P.str();
    merge_into(r, report_json(rep, s.tensor));
    return r;
}

json run_preimage(Session& s, const Job& job) {
    ProjPoint P = need_point(s, job.point);
    ProjPoint pre = unique_preimage(s.surf, P);
    json r;
    r["point"] = P.str();
    r["preimage"] = pre.str();
    return r;
}

json run_fiber_curve(Session& s, const Job& job) {
    ProjPoint P = need_point(s, job.point);
    MultiPoly h = fiber_curve(s.surf, P);
    json r;
    r["point"] = P.str();
    r["curve_equation"] = h.str();
    r["degree"] = h.total_degree();
    return r;
}

json run_sat_elements(Session& s) {
    LowDegreePieces low = low_degree_sat_elements(s.surf);
    json r;
    r["curves_excluded"] = low.curves_excluded;
    json pieces = json::array();
    for (const auto& [mu, forms] : low.pieces) {
        json list = json::array();
        for (const auto& g : forms) list.push_back(g.to_multi().str());
        pieces.push_back({{"degree", mu}, {"forms", std::move(list)}});
    }
    r["pieces"] = std::move(pieces);
    return r;
}

std::vector<json> run_stratify(Session& s, const Job& job) {
    std::vector<ProjPoint> pts;
    for (const auto& text : job.points) pts.push_back(parse_point(s.surf.phi().field, text));
    if (job.sample) {
        if (*job.sample < 0) throw std::invalid_argument("--sample must be nonnegative");
        std::mt19937_64 rng(job.seed.value_or(kDefaultSeed));
        for (long i = 0; i < *job.sample; ++i)
            pts.push_back(detail::random_source_point(s.surf.phi(), rng));
    }
    if (pts.empty())
        throw std::invalid_argument("stratify needs a points list in the document or --sample");

    s.surf.sat();  // fail fast and once, not per worker
    std::vector<std::future<json>> work;
    work.reserve(pts.size());
    for (const ProjPoint& p : pts)
        work.push_back(std::async(std::launch::async, [&s, &p]() -> json {
            json e;
            e["parameter_point"] = p.str();
            try {
                PullbackResult res = pullback_classify(s.surf, p);
                e["image"] = res.image.str();
                merge_into(e, report_json(res.report, s.tensor));
                if (!res.report.warnings.empty()) e["warnings"] = res.report.warnings;
            } catch (const MathError& err) {
                e["error"] = err.what();
            }
            return e;
        }));
    std::vector<json> results;
    results.reserve(work.size());
    for (auto& f : work) results.push_back(f.get());
    return results;
}

json run_minors(Session& s, const Job& job, bool pullback) {
    const Deg deg = resolve_index(s, job);
    const MatrixRep& rep = s.surf.rep(deg);
    MinorRequest req = minor_request(job);
    FittingGens g =
        pullback ? pullback_fitting(s.surf.phi(), rep, req) : fitting_generators(rep, req);
    json r;
    r["index"] = deg.str();
    r["fitting_index"] = req.fitting_index;
    merge_into(r, minors_json(g));
    return r;
}

std::string summarize(const std::string& cmd, const json& results) {
    if (results.empty()) return cmd + ": no results";
    const json& r = results.front();
    std::ostringstream out;
    out << cmd << ": ";
    if (cmd == "validate") {
        out << (r["structural_ok"].get<bool>() ? "structure ok" : "structural checks FAILED")
            << ", birational probe "
            << (r["birational_probable"].get<bool>() ? "passed" : "failed");
    } else if (cmd == "matrix") {
        out << r["rows"] << " x " << r["cols"] << " at index " << r["index"].get<std::string>();
    } else if (cmd == "nu0") {
        out << "indeg_sat=" << r["indeg_sat"] << " nu0=" << r["nu0"]
            << " base_locus_degree=" << r["base_locus_degree"];
    } else if (cmd == "membership") {
        out << r["point"].get<std::string>()
            << (r["member"].get<bool>() ? " lies on the surface" : " is off the surface")
            << " (corank " << r["corank"] << ")";
    } else if (cmd == "fiber") {
        out << r["point"].get<std::string>() << " -> " << r["kind"].get<std::string>();
        if (r.contains("degree")) out << ", degree " << r["degree"];
        if (r.contains("curve_degree")) out << ", curve degree " << r["curve_degree"];
        if (r.contains("curve_equation")) out << ", h = " << r["curve_equation"].get<std::string>();
    } else if (cmd == "preimage") {
        out << r["point"].get<std::string>() << " <- " << r["preimage"].get<std::string>();
    } else if (cmd == "fiber-curve") {
        out << "h = " << r["curve_equation"].get<std::string>();
    } else if (cmd == "sat-elements") {
        if (r["curves_excluded"].get<bool>()) out << "empty base locus; no curve fibers";
        else out << r["pieces"].size() << " low-degree piece(s)";
    } else if (cmd == "stratify") {
        std::size_t finite = 0, curves = 0, errors = 0;
        for (const auto& e : results) {
            if (e.contains("error")) ++errors;
            else if (e["kind"] == "curve") ++curves;
            else ++finite;
        }
        out << results.size() << " point(s): " << finite << " finite, " << curves << " curve, "
            << errors << " error";
    } else if (cmd == "minors" || cmd == "pullback-minors") {
        if (r["unit_ideal"].get<bool>()) out << "unit ideal";
        else
            out << r["minors"].size() << " minor(s) of size " << r["minor_size"] << " from "
                << r["candidate_count"] << " candidate(s)";
    }
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"syzygy matrix representations of rational surface parameterizations"};
    app.require_subcommand(0, 1);

    std::string input_path = "-";
    std::optional<std::string> field_override, point_flag;
    std::optional<long> nu_flag, nu1_flag, nu2_flag, fi_flag, limit_flag, sample_flag;
    std::optional<std::uint64_t> seed_flag;
    long max_minor_size = 6;
    bool force = false, no_timing = false;

    app.add_option("--input,-i", input_path, "input document (file path, or - for stdin)");
    app.add_option("--field", field_override, "override the document field: q or fp:P");
    app.add_option("--point,-p", point_flag, "target point a:b:c:d, or source point (a:b:c / a:b;c:d)");
    app.add_option("--nu", nu_flag, "representation index (triangular)");
    app.add_option("--nu1", nu1_flag, "first representation index (tensor)");
    app.add_option("--nu2", nu2_flag, "second representation index (tensor)");
    app.add_option("--fitting-index", fi_flag, "which Fitting ideal: minors of size rows-i");
    app.add_option("--limit", limit_flag, "cap on emitted minors, 0 for no cap (default 1000)");
    app.add_option("--seed", seed_flag, "seed for sampled minors, probes and stratify samples");
    app.add_option("--sample", sample_flag, "stratify: classify this many seeded random parameter points");
    app.add_option("--max-minor-size", max_minor_size, "largest symbolic minor to expand");
    app.add_flag("--force", force, "keep going when structural checks fail");
    app.add_flag("--no-timing", no_timing, "omit timing_ms from the output (for diffable runs)");

    static const std::vector<std::pair<std::string, std::string>> kCommands = {
        {"validate", "structural checks plus a seeded birationality probe"},
        {"matrix", "print the matrix representation at an index"},
        {"nu0", "saturation indeg, threshold index and base locus degree"},
        {"membership", "does a target point lie on the surface"},
        {"fiber", "classify the fiber over a target point"},
        {"preimage", "invert a degree-1 fiber"},
        {"fiber-curve", "equation of the 1-dimensional fiber part"},
        {"sat-elements", "low-degree saturated forms (curve-fiber divisors)"},
        {"stratify", "batch-classify parameter points by their image fiber"},
        {"minors", "generators of a Fitting ideal of the matrix"},
        {"pullback-minors", "the same minors pulled back to the source ring"},
    };
    for (const auto& [name, desc] : kCommands) app.add_subcommand(name, desc)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const auto started = std::chrono::steady_clock::now();
    json out;
    out["command"] = "";
    int exit_code = 0;

    try {
        Job job = parse_document(slurp(input_path));
        if (field_override) job.field = field_from(*field_override);
        if (point_flag) job.point = *point_flag;
        if (nu_flag) job.nu = *nu_flag;
        if (nu1_flag) job.nu1 = *nu1_flag;
        if (nu2_flag) job.nu2 = *nu2_flag;
        if (fi_flag) job.fitting_index = *fi_flag;
        if (limit_flag) job.limit = *limit_flag;
        if (seed_flag) job.seed = *seed_flag;
        if (sample_flag) job.sample = *sample_flag;
        job.max_minor_size = max_minor_size;

        std::string cmd = job.command;
        auto subs = app.get_subcommands();
        if (!subs.empty()) cmd = subs.front()->get_name();
        if (cmd.empty())
            throw std::invalid_argument("no command given (argument or 'command' in the document)");
        bool known = false;
        for (const auto& [name, desc] : kCommands) known = known || name == cmd;
        if (!known) throw std::invalid_argument("unknown command '" + cmd + "'");
        out["command"] = cmd;

        Parameterization phi = parse_parameterization(job.ring, job.field, job.poly_text);
        json echo;
        echo["ring"] = phi.ring.str();
        echo["field"] = field_str(phi.field);
        json ptexts = json::array();
        for (const auto& f : phi.f) ptexts.push_back(f.str());
        echo["polynomials"] = std::move(ptexts);
        out["input_echo"] = std::move(echo);
        out["nu0"] = nullptr;
        out["results"] = json::array();
        out["warnings"] = json::array();
        Session s(std::move(phi), &out["warnings"]);

        // every command but validate runs behind the structural gate
        if (cmd != "validate") {
            auto checks = structural_checks(s.surf.phi());
            if (!checks_passed(checks)) {
                if (!force) throw GateFailure{checks};
                for (const auto& c : checks)
                    if (!c.passed)
                        s.warn("structural check '" + c.name + "' failed (" + c.detail +
                               "); continuing under --force");
            }
        }
        if (!s.tensor) {
            try {
                out["nu0"] = sat_json(s.surf.sat(), s.surf.default_index());
            } catch (const MathError& e) {
                if (cmd == "nu0") throw;
                s.warn(std::string("threshold unavailable: ") + e.what());
            }
        }

        json& results = out["results"];
        if (cmd == "validate") results.push_back(run_validate(s, job));
        else if (cmd == "matrix") results.push_back(run_matrix(s, job));
        else if (cmd == "nu0") {
            if (s.tensor)
                throw std::invalid_argument("the saturation threshold is defined for triangular input");
            results.push_back(out["nu0"]);
        }
        else if (cmd == "membership") results.push_back(run_membership(s, job));
        else if (cmd == "fiber") results.push_back(run_fiber(s, job));
        else if (cmd == "preimage") results.push_back(run_preimage(s, job));
        else if (cmd == "fiber-curve") results.push_back(run_fiber_curve(s, job));
        else if (cmd == "sat-elements") results.push_back(run_sat_elements(s));
        else if (cmd == "stratify")
            for (auto& e : run_stratify(s, job)) results.push_back(std::move(e));
        else if (cmd == "minors") results.push_back(run_minors(s, job, false));
        else if (cmd == "pullback-minors") results.push_back(run_minors(s, job, true));

        std::cerr << summarize(cmd, results) << "\n";
    } catch (const GateFailure& gate) {
        json failed = json::array();
        for (const auto& c : gate.checks)
            failed.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        out["error"] = {{"type", "validation"},
                        {"message", "structural checks failed"},
                        {"checks", std::move(failed)}};
        std::cerr << "error (validation): structural checks failed\n";
        exit_code = 3;
    } catch (const ParseError& e) {
        out["error"] = {{"type", "parse"}, {"message", e.what()}};
        std::cerr << "error (parse): " << e.what() << "\n";
        exit_code = 2;
    } catch (const std::invalid_argument& e) {
        out["error"] = {{"type", "usage"}, {"message", e.what()}};
        std::cerr << "error (usage): " << e.what() << "\n";
        exit_code = 2;
    } catch (const MathError& e) {
        out["error"] = {{"type", "math"}, {"message", e.what()}};
        std::cerr << "error (math): " << e.what() << "\n";
        exit_code = 4;
    } catch (const std::exception& e) {
        out["error"] = {{"type", "internal"}, {"message", e.what()}};
        std::cerr << "error (internal): " << e.what() << "\n";
        exit_code = 4;
    }

    if (!no_timing) {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - started);
        out["timing_ms"] = ms.count();
    }
    std::cout << out.dump(2) << "\n";
    return exit_code;
}
